//! Multivariate polynomial GCD over the rationals.
//!
//! Recursive: strip monomial and variable contents, then run the
//! subresultant pseudo-remainder sequence in a main variable whose
//! coefficients are polynomials in the remaining ones. A heuristic
//! evaluation/interpolation GCD is tried first. Results are normalized to
//! integral primitive polynomials with positive leading coefficient.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly};
use super::rat::Rat;

/// Normalized greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert!(a.vars().same(b.vars()), "polynomial variable lists differ");
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.vars());
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a1 = strip(a, &ma);
    let b1 = strip(b, &mb);
    let g = gcd_inner(a1.primitive().1, b1.primitive().1);
    if m.is_one() {
        g
    } else {
        g.mul_term(&m, &Rat::one())
    }
}

/// Normalized least common multiple.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.vars());
    }
    let g = gcd(a, b);
    let q = a.div_exact(&g).expect("gcd divides its argument");
    (&q * b).primitive().1
}

fn strip(p: &Poly, m: &Monomial) -> Poly {
    if m.is_one() {
        return p.clone();
    }
    let mono = Poly::from_terms(p.vars(), alloc::vec![(*m, Rat::one())]);
    p.div_exact(&mono).expect("monomial content divides")
}

/// Content of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &Poly, var: usize) -> Poly {
    let mut g = Poly::zero(p.vars());
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one(p.vars());
        }
    }
    g
}

fn gcd_inner(a: Poly, b: Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.vars());
    }
    if a == b {
        return a;
    }
    // Cheap divisibility probes catch the common "one divides the other" case.
    let (small, large) = if a.num_terms() <= b.num_terms() { (&a, &b) } else { (&b, &a) };
    if small.total_degree() <= large.total_degree() {
        if let Ok(Some(_)) = large.exact_div(small) {
            return small.primitive().1;
        }
    }
    let n = a.nvars();
    for v in 0..n {
        let (ia, ib) = (a.involves(v), b.involves(v));
        if ia && !ib {
            return gcd(&content_in(&a, v), &b);
        }
        if ib && !ia {
            return gcd(&a, &content_in(&b, v));
        }
    }
    let x = (0..n)
        .filter(|&v| a.involves(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomial involves a variable");
    let ca = content_in(&a, x);
    let cb = content_in(&b, x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    if let Some(g) = heuristic_gcd(&pa, &pb, HEURISTIC_BITS) {
        return (&c * &g).primitive().1;
    }
    let g = subresultant_gcd(pa, pb, x);
    let g = if g.is_constant() {
        g
    } else {
        let cg = content_in(&g, x);
        g.div_exact(&cg).expect("content divides")
    };
    (&c * &g).primitive().1
}

/// Pseudo-remainder of `a` by `b` in the variable `x`.
pub fn prem(a: &Poly, b: &Poly, x: usize) -> Poly {
    let db = b.degree_in(x);
    let lb = b.lead_in(x);
    let mut r = a.clone();
    let da = a.degree_in(x);
    if da < db {
        return r;
    }
    let mut e = da - db + 1;
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.lead_in(x);
        let mut shift = alloc::vec![0u32; a.nvars()];
        shift[x] = dr - db;
        let t = lr.mul_term(&Monomial::from_exponents(&shift), &Rat::one());
        r = &(&lb * &r) - &(&t * b);
        e -= 1;
    }
    if e > 0 {
        r = &r * &lb.pow(e);
    }
    r
}

const HEURISTIC_BITS: u64 = 400_000;

/// Integer polynomial with terms sorted ascending, as in [`Poly`].
#[derive(Clone, PartialEq)]
struct IntPoly(Vec<(Monomial, BigInt)>);

impl IntPoly {
    fn from_poly(p: &Poly) -> Option<Self> {
        let mut out = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return None;
            }
            out.push((*m, c.numer().clone()));
        }
        Some(IntPoly(out))
    }

    fn to_poly(&self, vars: &super::poly::Vars) -> Poly {
        Poly::from_terms(vars, self.0.iter().map(|(m, c)| (*m, Rat::from_bigint(c.clone()))).collect())
    }

    fn normalized(mut terms: Vec<(Monomial, BigInt)>) -> Self {
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|t| t.1.is_zero()) {
                out.pop();
            }
        }
        IntPoly(out)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.0.iter().all(|(m, _)| m.is_one())
    }

    fn involves(&self, v: usize) -> bool {
        self.0.iter().any(|(m, _)| m.exp(v) > 0)
    }

    fn degree_in(&self, v: usize) -> u32 {
        self.0.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_int(&self, d: &BigInt) -> Self {
        if d.is_one() {
            return self.clone();
        }
        IntPoly(self.0.iter().map(|(m, c)| (*m, c / d)).collect())
    }

    fn scale(&self, c: &BigInt) -> Self {
        IntPoly(self.0.iter().map(|(m, x)| (*m, x * c)).collect())
    }

    fn norm(&self) -> BigInt {
        self.0.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    fn eval_at(&self, x: usize, xi: &BigInt) -> Self {
        let mut pows: Vec<BigInt> = alloc::vec![BigInt::one()];
        let terms = self
            .0
            .iter()
            .map(|(m, c)| {
                let e = m.exp(x) as usize;
                while pows.len() <= e {
                    let next = pows.last().unwrap() * xi;
                    pows.push(next);
                }
                (m.with_exp(x, 0), c * &pows[e])
            })
            .collect();
        IntPoly::normalized(terms)
    }

    /// `self − c·m·b` for sorted operands.
    fn sub_scaled(&self, b: &IntPoly, m: &Monomial, c: &BigInt) -> Self {
        let shifted = b.0.iter().map(|(bm, bc)| (bm.mul(m), bc * c));
        let mut out = Vec::with_capacity(self.0.len() + b.0.len());
        let mut it_a = self.0.iter().cloned().peekable();
        let mut it_b = shifted.peekable();
        loop {
            match (it_a.peek(), it_b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    core::cmp::Ordering::Less => out.push(it_a.next().unwrap()),
                    core::cmp::Ordering::Greater => {
                        let (m, c) = it_b.next().unwrap();
                        out.push((m, -c));
                    }
                    core::cmp::Ordering::Equal => {
                        let (m, c1) = it_a.next().unwrap();
                        let (_, c2) = it_b.next().unwrap();
                        let d = c1 - c2;
                        if !d.is_zero() {
                            out.push((m, d));
                        }
                    }
                },
                (Some(_), None) => out.push(it_a.next().unwrap()),
                (None, Some(_)) => {
                    let (m, c) = it_b.next().unwrap();
                    out.push((m, -c));
                }
                (None, None) => break,
            }
        }
        IntPoly(out)
    }

    /// Whether `d` divides `self` over the integers.
    fn divisible_by(&self, d: &IntPoly) -> bool {
        let Some((lm, lc)) = d.0.last() else { return false };
        let mut r = self.clone();
        while let Some((rm, rc)) = r.0.last() {
            if !lm.divides(rm) {
                return false;
            }
            let (q, rem) = rc.div_rem(lc);
            if !rem.is_zero() {
                return false;
            }
            let qm = lm.quotient_of(rm);
            r = r.sub_scaled(d, &qm, &q);
        }
        true
    }
}

fn symmetric_mod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

/// Rebuilds a polynomial in `x` from its image at `x = xi` via the
/// symmetric `xi`-adic expansion of the coefficients.
fn reconstruct(g: &IntPoly, x: usize, xi: &BigInt) -> IntPoly {
    let mut rest: Vec<(Monomial, BigInt)> = g.0.clone();
    let mut terms = Vec::new();
    let mut k = 0u32;
    while !rest.is_empty() {
        let mut next = Vec::with_capacity(rest.len());
        for (m, c) in rest {
            let digit = symmetric_mod(&c, xi);
            let q = (c - &digit) / xi;
            if !digit.is_zero() {
                terms.push((m.with_exp(x, k), digit));
            }
            if !q.is_zero() {
                next.push((m, q));
            }
        }
        rest = next;
        k += 1;
    }
    IntPoly::normalized(terms)
}

/// Char–Geddes–Gonnet heuristic GCD of integer polynomials, including the
/// integer content. `None` means the heuristic gave up.
fn heuristic_int(a: &IntPoly, b: &IntPoly, nvars: usize, budget: u64) -> Option<IntPoly> {
    let (ca, cb) = (a.content(), b.content());
    let c = ca.gcd(&cb);
    if a.is_constant() || b.is_constant() {
        return Some(IntPoly(alloc::vec![(Monomial::from_exponents(&[]), c)]));
    }
    let ap = a.div_int(&ca);
    let bp = b.div_int(&cb);
    let x = (0..nvars).find(|&v| ap.involves(v) || bp.involves(v))?;
    let deg = u64::from(ap.degree_in(x).max(bp.degree_in(x)));
    let mut xi: BigInt = ap.norm().min(bp.norm()) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * deg > budget {
            return None;
        }
        let ea = ap.eval_at(x, &xi);
        let eb = bp.eval_at(x, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            let h = heuristic_int(&ea, &eb, nvars, budget)?;
            let g = reconstruct(&h, x, &xi);
            if !g.is_zero() {
                let g = g.div_int(&g.content());
                if ap.divisible_by(&g) && bp.divisible_by(&g) {
                    return Some(g.scale(&c));
                }
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
    }
    None
}

fn heuristic_gcd(a: &Poly, b: &Poly, budget: u64) -> Option<Poly> {
    let ia = IntPoly::from_poly(&a.primitive().1)?;
    let ib = IntPoly::from_poly(&b.primitive().1)?;
    heuristic_int(&ia, &ib, a.nvars(), budget).map(|g| g.to_poly(a.vars()))
}

fn subresultant_gcd(a: Poly, b: Poly, x: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(x) >= b.degree_in(x) { (a, b) } else { (b, a) };
    let vars = a.vars().clone();
    let mut g = Poly::one(&vars);
    let mut h = Poly::one(&vars);
    loop {
        let delta = a.degree_in(x) - b.degree_in(x);
        let r = prem(&a, &b, x);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(x) == 0 {
            return Poly::one(&vars);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.lead_in(x);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact"),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Vars;
    use alloc::format;

    fn r3() -> Vars {
        Vars::indexed("u", 3).unwrap()
    }

    fn u(i: usize) -> Poly {
        Poly::var(&r3(), i)
    }

    #[test]
    fn common_factor_is_recovered() {
        let f = &(&u(0) - &u(1)) * &(&u(1) + &u(2).scale(&Rat::from_int(2)));
        let a = &f * &(&u(0).pow(2) + &u(2));
        let b = &f * &(&(&u(1).pow(3) - &u(0)) + &Poly::from_int(&r3(), 1));
        assert_eq!(gcd(&a, &b), f.primitive().1);
    }

    #[test]
    fn coprime_inputs() {
        let a = &u(0).pow(2) + &u(1).pow(2);
        let b = &u(0) - &u(2);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_part() {
        let a = &u(0).pow(3) * &u(1);
        let b = &(&u(0).pow(2) * &u(2)) + &u(0).pow(4);
        assert_eq!(format!("{}", gcd(&a, &b)), "u1^2");
    }

    #[test]
    fn rational_scalars_are_ignored() {
        let a = (&u(0) + &u(1)).scale(&Rat::new(3, 7));
        let b = (&u(0) + &u(1)).scale(&Rat::new(-5, 2));
        assert_eq!(gcd(&a, &b), &u(0) + &u(1));
    }

    #[test]
    fn heuristic_agrees_with_subresultant() {
        let f = &(&u(0) - &u(1).scale(&Rat::from_int(3))) * &(&u(1) + &u(2));
        let a = &f * &(&u(0).pow(3) + &u(2).pow(2));
        let b = &f * &(&u(0) - &u(2).pow(2));
        let x = 0;
        let pa = a.div_exact(&content_in(&a, x)).unwrap();
        let pb = b.div_exact(&content_in(&b, x)).unwrap();
        let g = subresultant_gcd(pa, pb, x);
        let g = g.div_exact(&content_in(&g, x)).unwrap();
        let g = (&gcd(&content_in(&a, x), &content_in(&b, x)) * &g).primitive().1;
        let h = heuristic_gcd(&a, &b, HEURISTIC_BITS).unwrap().primitive().1;
        assert_eq!(g, h);
        assert_eq!(h, f.primitive().1);
    }

    #[test]
    fn lcm_of_linear_factors() {
        let a = &(&u(0) - &u(1)) * &u(2);
        let b = &(&u(0) - &u(1)) * &u(0);
        let l = lcm(&a, &b);
        assert_eq!(l, (&(&u(0) - &u(1)) * &(&u(0) * &u(2))).primitive().1);
    }
}
