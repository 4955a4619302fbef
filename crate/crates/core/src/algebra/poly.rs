//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are stored as a vector sorted ascending in graded-lexicographic
//! order (first declared variable largest), so the leading term is the last
//! entry. No zero coefficient is ever stored.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rat::{int_gcd, int_lcm, Rat};
use crate::error::{Error, Result};

/// Maximum number of variables in one polynomial ring.
pub const MAX_VARS: usize = 10;

/// An ordered list of variable names shared by every polynomial of a ring.
#[derive(Clone)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        Ok(Vars(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    /// `prefix1, …, prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| alloc::format!("{prefix}{i}")).collect();
        Vars::new(&names)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn same(&self, other: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn total_degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        weights.iter().enumerate().map(|(i, w)| w * self.exps[i] as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(o.exps[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(o.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub(crate) fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = e as u16;
        m
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// A polynomial with exact rational coefficients.
#[derive(Clone)]
pub struct Poly {
    vars: Vars,
    terms: Vec<(Monomial, Rat)>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Poly::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Poly::constant(vars, Rat::from_int(c))
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        Poly { vars: vars.clone(), terms: vec![(Monomial::var(i), Rat::one())] }
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(vars, i))
    }

    pub fn monomial(vars: &Vars, exps: &[u32], c: Rat) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        Poly::from_terms(vars, vec![(Monomial::from_exponents(exps), c)])
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(vars: &Vars, mut terms: Vec<(Monomial, Rat)>) -> Self {
        terms.sort_by_key(|a| a.0);
        Poly { vars: vars.clone(), terms: merge_sorted(terms) }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rat)> {
        self.terms.last()
    }

    pub fn leading_coefficient(&self) -> Rat {
        self.terms.last().map(|t| t.1.clone()).unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0.total_degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.0.exp(var) > 0)
    }

    /// Weighted degree when homogeneous; `None` for the zero polynomial or a
    /// non-homogeneous one.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.iter().map(|t| t.0.weighted_degree(weights));
        let first = it.next()?;
        if it.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// True if zero or homogeneous of weighted degree `d`.
    pub fn is_homogeneous_of(&self, weights: &[u32], d: i64) -> bool {
        self.terms.iter().all(|t| t.0.weighted_degree(weights) as i64 == d)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.vars.same(&other.vars) {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_impl(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { vars: self.vars.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.vars);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        prods.sort_unstable_by_key(|a| a.0);
        Poly { vars: self.vars.clone(), terms: merge_sorted(prods) }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the variable at `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        assert!(var < self.nvars(), "variable index out of range");
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                terms.push((m.with_exp(var, e - 1), c * &Rat::from_int(e as i64)));
            }
        }
        // Lowering one exponent keeps the relative order of surviving terms.
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn derivative_by_name(&self, name: &str) -> Result<Poly> {
        let i = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Multivariate division by a single divisor in graded-lex order: if the
    /// leading monomial of the running remainder is not divisible by the
    /// divisor's, no exact quotient exists.
    pub fn exact_div(&self, d: &Poly) -> Result<Option<Poly>> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Poly::zero(&self.vars)));
        }
        let (lm, lc) = d.terms.last().cloned().unwrap();
        if d.terms.len() == 1 {
            let inv = lc.inv().unwrap();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return Ok(None);
                }
                terms.push((lm.quotient_of(m), c * &inv));
            }
            return Ok(Some(Poly { vars: self.vars.clone(), terms }));
        }
        if d.total_degree() > self.total_degree() {
            return Ok(None);
        }
        let inv = lc.inv().unwrap();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rat)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.last().cloned() {
            if !lm.divides(&rm) {
                return Ok(None);
            }
            let qm = lm.quotient_of(&rm);
            let qc = &rc * &inv;
            rem = rem.add_impl(&d.mul_term(&qm, &qc), true);
            quot.push((qm, qc));
        }
        quot.reverse();
        Ok(Some(Poly { vars: self.vars.clone(), terms: quot }))
    }

    /// Division that must be exact; reports `NotDivisible` otherwise.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        self.exact_div(d)?.ok_or(Error::NotDivisible)
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// one target ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images.first().map(|p| p.vars.clone()).unwrap_or_else(|| self.vars.clone());
        for im in images {
            assert!(im.vars.same(&target), "substitution images must share a ring");
        }
        let n = self.nvars();
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(&target)]; n];
        let mut acc = Poly::zero(&target);
        // Group by monomial; powers are cached lazily.
        let mut chunk: Vec<(Monomial, Rat)> = Vec::new();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    term = &term * &pw[e];
                }
            }
            chunk.extend(term.terms);
            if chunk.len() > 4096 {
                acc = &acc + &Poly::from_terms(&target, core::mem::take(&mut chunk));
            }
        }
        &acc + &Poly::from_terms(&target, chunk)
    }

    /// Reinterprets the polynomial in a ring with the same number of variables.
    pub fn with_vars(&self, vars: &Vars) -> Poly {
        assert_eq!(vars.len(), self.nvars());
        Poly { vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Coefficients with respect to `var`: `self = Σ_k coeffs[k] * var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rat)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            buckets[e].push((m.with_exp(var, 0), c.clone()));
        }
        buckets.into_iter().map(|b| Poly::from_terms(&self.vars, b)).collect()
    }

    pub fn from_coefficients_in(vars: &Vars, var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, cc) in &c.terms {
                terms.push((m.with_exp(var, m.exp(var) + k as u32), cc.clone()));
            }
        }
        Poly::from_terms(vars, terms)
    }

    /// Leading coefficient with respect to `var` (a polynomial free of `var`).
    pub fn lead_in(&self, var: usize) -> Poly {
        let d = self.degree_in(var);
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0.exp(var) == d)
            .map(|(m, c)| (m.with_exp(var, 0), c.clone()))
            .collect();
        Poly::from_terms(&self.vars, terms)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else { return Monomial::ONE };
        it.fold(first.0, |acc, t| acc.gcd(&t.0))
    }

    /// Writes `self = c * p` with `p` integral, primitive, and with a positive
    /// leading coefficient. Zero maps to `(0, 0)`.
    pub fn primitive(&self) -> (Rat, Poly) {
        if self.is_zero() {
            return (Rat::zero(), self.clone());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = int_lcm(&den, c.denom());
            num = int_gcd(&num, c.numer());
        }
        let mut content = Rat::from_big(num, den);
        if self.leading_coefficient().is_negative() {
            content = -content;
        }
        if content.is_one() {
            return (content, self.clone());
        }
        let inv = content.inv().unwrap();
        (content, self.scale(&inv))
    }

    /// Monic normalization: leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.last() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }
}

fn merge_sorted(sorted: Vec<(Monomial, Rat)>) -> Vec<(Monomial, Rat)> {
    let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(sorted.len());
    for (m, c) in sorted {
        match out.last_mut() {
            Some(last) if last.0 == m => {
                last.1 += &c;
            }
            _ => {
                if let Some(last) = out.last() {
                    if last.1.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some(last) = out.last() {
        if last.1.is_zero() {
            out.pop();
        }
    }
    out
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.vars.same(&other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl core::hash::Hash for Poly {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            /// Panics when the operands live in different rings; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &'a Poly) -> Poly {
                assert!(self.vars.same(&rhs.vars), "polynomial variable lists differ");
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a: &Poly, b: &Poly| a.add_impl(b, false));
poly_binop!(Sub, sub, |a: &Poly, b: &Poly| a.add_impl(b, true));
poly_binop!(Mul, mul, |a: &Poly, b: &Poly| a.mul_impl(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Canonical printing: terms in descending graded-lex order, coefficients
    /// as `a` or `a/b`, unit coefficients and unit exponents elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() || m.is_one() {
                write!(f, "{a}")?;
                first = false;
            }
            for i in 0..self.nvars() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.vars.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
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

    #[test]
    fn difference_of_squares() {
        let p = &(&u(0) + &u(1)) * &(&u(0) - &u(1));
        assert_eq!(format!("{p}"), "u1^2 - u2^2");
    }

    #[test]
    fn additive_identity() {
        let p = &u(0).pow(3) + &u(1);
        assert_eq!(&p + &Poly::zero(&ring()), p);
    }

    #[test]
    fn sixth_powers() {
        let a = &u(0).pow(3) - &u(1).pow(3);
        let b = &u(0).pow(3) + &u(1).pow(3);
        assert_eq!(&a * &b, &u(0).pow(6) - &u(1).pow(6));
    }

    #[test]
    fn mismatched_rings() {
        let other = Vars::indexed("x", 2).unwrap();
        let p = Poly::var(&other, 0);
        assert_eq!(u(0).checked_add(&p), Err(Error::VariableMismatch));
    }

    #[test]
    fn derivatives() {
        assert_eq!(u(0).pow(5).derivative(0), u(0).pow(4).scale(&Rat::from_int(5)));
        assert!(u(0).pow(3).derivative(1).is_zero());
        let p = &u(0).pow(3) * &u(1).pow(3);
        assert_eq!(p.derivative(0), (&u(0).pow(2) * &u(1).pow(3)).scale(&Rat::from_int(3)));
        assert!(matches!(p.derivative_by_name("u3"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn exact_division() {
        let num = &u(0).pow(2) - &u(1).pow(2);
        let den = &u(0) - &u(1);
        assert_eq!(num.exact_div(&den).unwrap(), Some(&u(0) + &u(1)));
        assert_eq!(u(0).exact_div(&u(1)).unwrap(), None);
        let num = &u(0).pow(6) - &u(1).pow(6);
        let den = &u(0).pow(3) - &u(1).pow(3);
        assert_eq!(num.exact_div(&den).unwrap(), Some(&u(0).pow(3) + &u(1).pow(3)));
        assert_eq!(num.exact_div(&Poly::zero(&ring())), Err(Error::DivisionByZero));
    }

    #[test]
    fn printing() {
        let p = &u(0).pow(2).scale(&Rat::new(1, 2)) - &u(1);
        assert_eq!(format!("{p}"), "1/2*u1^2 - u2");
        let q = &(-&u(0)) + &Poly::from_int(&ring(), -3);
        assert_eq!(format!("{q}"), "-u1 - 3");
    }

    #[test]
    fn substitution() {
        // p(u1, u2) = u1*u2 with u1 -> u1 + u2, u2 -> u1 - u2
        let p = &u(0) * &u(1);
        let r = p.substitute(&[&u(0) + &u(1), &u(0) - &u(1)]);
        assert_eq!(r, &u(0).pow(2) - &u(1).pow(2));
    }

    #[test]
    fn primitive_part() {
        let p = (&u(0).scale(&Rat::new(-2, 3))) + &Poly::constant(&ring(), Rat::new(4, 9));
        let (c, pp) = p.primitive();
        assert_eq!(c, Rat::new(-2, 9));
        assert_eq!(format!("{pp}"), "3*u1 - 2");
    }
}
