//! Rational functions `num / den` over the rationals.
//!
//! Values are kept reduced (coprime numerator and denominator, denominator
//! integral primitive with positive leading coefficient) to bound expression
//! growth. Equality is still decided by cross-multiplication, so nothing
//! downstream relies on the reduced form being canonical.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::gcd::gcd;
use super::poly::{Poly, Vars};
use super::rat::{int_lcm, Rat};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// `num / den`, reduced. Fails for a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if !num.vars().same(den.vars()) {
            return Err(Error::VariableMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    /// Builds from parts the caller knows to be coprime (skips the GCD).
    fn from_coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFn::zero(num.vars());
        }
        let (c, pden) = den.primitive();
        let num = if c.is_one() { num } else { num.scale(&c.inv().unwrap()) };
        RatFn { num, den: pden }
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFn::zero(num.vars());
        }
        if let Some(c) = den.constant_value() {
            let vars = num.vars().clone();
            return RatFn { num: num.scale(&c.inv().unwrap()), den: Poly::one(&vars) };
        }
        let g = gcd(&num, &den);
        if g.is_constant() {
            return Self::from_coprime(num, den);
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Self::from_coprime(n, d)
    }

    pub fn from_poly(p: Poly) -> Self {
        let vars = p.vars().clone();
        RatFn { num: p, den: Poly::one(&vars) }
    }

    pub fn zero(vars: &Vars) -> Self {
        RatFn { num: Poly::zero(vars), den: Poly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        RatFn { num: Poly::one(vars), den: Poly::one(vars) }
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        RatFn::from_poly(Poly::constant(vars, c))
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(&n / &d)
    }

    /// The polynomial this function equals, if its reduced denominator is a
    /// constant.
    pub fn as_poly(&self) -> Option<Poly> {
        let d = self.den.constant_value()?;
        Some(self.num.scale(&d.inv().unwrap()))
    }

    pub fn to_poly(&self) -> Result<Poly> {
        self.as_poly().ok_or_else(|| Error::NotPolynomial(alloc::format!("{self}")))
    }

    /// Cross-multiplication equality `a·d − b·c = 0`.
    pub fn equals(&self, other: &RatFn) -> bool {
        if !self.vars().same(other.vars()) {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn checked_equals(&self, other: &RatFn) -> Result<bool> {
        if !self.vars().same(other.vars()) {
            return Err(Error::VariableMismatch);
        }
        Ok(self.equals(other))
    }

    /// Weighted degree `deg num − deg den` when both parts are homogeneous.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<i64> {
        let n = self.num.homogeneous_degree(weights)? as i64;
        let d = self.den.homogeneous_degree(weights)? as i64;
        Some(n - d)
    }

    /// True when zero or homogeneous of weighted degree `d`.
    pub fn is_homogeneous_of(&self, weights: &[u32], d: i64) -> bool {
        self.is_zero() || self.homogeneous_degree(weights) == Some(d)
    }

    pub fn add_ref(&self, o: &RatFn) -> RatFn {
        assert!(self.vars().same(o.vars()), "rational function variable lists differ");
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFn::from_poly(&self.num + &o.num);
            }
            return Self::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return Self::from_coprime(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        if o.den.is_one() {
            return Self::from_coprime(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_constant() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            return Self::from_coprime(num, &self.den * &o.den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let t = &(&self.num * &d1) + &(&o.num * &b1);
        if t.is_zero() {
            return RatFn::zero(self.vars());
        }
        let h = gcd(&t, &g);
        if h.is_constant() {
            return Self::from_coprime(t, &(&b1 * &d1) * &g);
        }
        let t = t.div_exact(&h).unwrap();
        let g1 = g.div_exact(&h).unwrap();
        Self::from_coprime(t, &(&b1 * &d1) * &g1)
    }

    pub fn mul_ref(&self, o: &RatFn) -> RatFn {
        assert!(self.vars().same(o.vars()), "rational function variable lists differ");
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(self.vars());
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn::from_poly(&self.num * &o.num);
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let a = if g1.is_constant() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d = if g1.is_constant() { o.den.clone() } else { o.den.div_exact(&g1).unwrap() };
        let c = if g2.is_constant() { o.num.clone() } else { o.num.div_exact(&g2).unwrap() };
        let b = if g2.is_constant() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        Self::from_coprime(&a * &c, &b * &d)
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        self.mul_ref(&RatFn::from_poly(p.clone()))
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.vars());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> RatFn {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let e = e.unsigned_abs();
        RatFn { num: base.num.pow(e), den: base.den.pow(e) }.renormalized()
    }

    fn renormalized(self) -> RatFn {
        Self::from_coprime(self.num, self.den)
    }

    /// Quotient rule, reduced.
    pub fn derivative(&self, var: usize) -> RatFn {
        let dn = self.num.derivative(var);
        if self.den.is_constant() {
            return RatFn { num: dn, den: self.den.clone() };
        }
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        // (n' d − n d') / d²; any common factor of the numerator with d² lies in d.
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        if top.is_zero() {
            return RatFn::zero(self.vars());
        }
        let g = gcd(&top, &self.den);
        if g.is_constant() {
            return Self::from_coprime(top, self.den.pow(2));
        }
        let top = top.div_exact(&g).unwrap();
        let d1 = self.den.div_exact(&g).unwrap();
        Self::reduce(top, &d1 * &self.den)
    }

    /// Substitutes polynomials for the variables of both parts.
    pub fn substitute(&self, images: &[Poly]) -> Result<RatFn> {
        RatFn::new(self.num.substitute(images), self.den.substitute(images))
    }

    pub fn with_vars(&self, vars: &Vars) -> RatFn {
        RatFn { num: self.num.with_vars(vars), den: self.den.with_vars(vars) }
    }

    /// Numerator and denominator scaled to integer coefficients for display.
    pub fn integral_parts(&self) -> (Poly, Poly) {
        let mut l = BigInt::one();
        for (_, c) in self.num.terms() {
            l = int_lcm(&l, c.denom());
        }
        let s = Rat::from_bigint(l);
        (self.num.scale(&s), self.den.scale(&s))
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &'a RatFn) -> RatFn {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &'a RatFn) -> RatFn {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &'a RatFn) -> RatFn {
        self.mul_ref(rhs)
    }
}

impl<'a> Div<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    /// Panics on division by zero; see [`RatFn::checked_div`].
    fn div(self, rhs: &'a RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

fn needs_parens_num(p: &Poly) -> bool {
    p.num_terms() > 1
}

fn needs_parens_den(p: &Poly) -> bool {
    if p.num_terms() != 1 {
        return true;
    }
    let (m, c) = &p.terms()[0];
    let vars_used = (0..p.nvars()).filter(|&i| m.exp(i) > 0).count();
    !(c.is_one() && vars_used <= 1)
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let (n, d) = self.integral_parts();
        if needs_parens_num(&n) {
            write!(f, "({n})")?;
        } else {
            write!(f, "{n}")?;
        }
        if needs_parens_den(&d) {
            write!(f, "/({d})")
        } else {
            write!(f, "/{d}")
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn ring() -> Vars {
        Vars::indexed("u", 2).unwrap()
    }

    fn u(i: usize) -> Poly {
        Poly::var(&ring(), i)
    }

    fn rf(n: Poly, d: Poly) -> RatFn {
        RatFn::new(n, d).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        let a = rf(&u(0).pow(2) - &u(1).pow(2), &u(0) - &u(1));
        assert!(a.equals(&RatFn::from_poly(&u(0) + &u(1))));
        assert!(a.denom().is_one());
    }

    #[test]
    fn distinct_reciprocals() {
        let one = Poly::one(&ring());
        assert!(!rf(one.clone(), u(0)).equals(&rf(one, u(1))));
    }

    #[test]
    fn common_denominator_by_hand() {
        let three = Rat::from_int(3);
        let d = &u(0).pow(3) - &u(1).pow(3);
        let lhs = &rf(u(0).pow(2).scale(&three), d.clone()) + &rf(Poly::constant(&ring(), three.clone()), u(0));
        let num = &u(0).pow(3).scale(&Rat::from_int(6)) - &u(1).pow(3).scale(&three);
        let den = &u(0).pow(4) - &(&u(0) * &u(1).pow(3));
        assert!(lhs.equals(&rf(num, den)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFn::new(u(0), Poly::zero(&ring())).err(), Some(Error::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        let five_over = rf(Poly::from_int(&ring(), 5), u(0));
        assert_eq!(format!("{five_over}"), "5/u1");
        let s = rf(Poly::from_int(&ring(), 3), u(0).scale(&Rat::from_int(2)));
        assert_eq!(format!("{s}"), "3/(2*u1)");
    }

    #[test]
    fn quotient_rule() {
        // d/du1 (1/u1) = -1/u1^2
        let f = rf(Poly::one(&ring()), u(0));
        let df = f.derivative(0);
        assert!(df.equals(&rf(Poly::from_int(&ring(), -1), u(0).pow(2))));
    }
}
