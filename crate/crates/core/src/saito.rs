//! Saito and almost Saito structures in the `u`-frame.
//!
//! A multiplication is a list of matrices `M_i` with `(M_i)[k][j] = M^k_{ij}`,
//! so `∂_i ∘ ∂_j = Σ_k M^k_{ij} ∂_k`. Connections follow the convention of
//! [`crate::geometry`]. Axioms are checked by evaluating their defining
//! expressions on the coordinate basis with generic vector-field calculus.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Rat, RatFn, RatMatrix, Vars};
use crate::error::{Error, Result};
use crate::geometry::{self, EFieldData, HessianMetric};
use crate::group::GroupSpec;

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(id: &str, passed: bool, detail: String) -> Self {
        Check { id: id.into(), passed, detail }
    }

    pub fn from_witness<W: core::fmt::Debug>(id: &str, witness: Option<W>) -> Self {
        match witness {
            None => Check::new(id, true, String::new()),
            Some(w) => Check::new(id, false, format!("first failure at {w:?}")),
        }
    }
}

pub type Vector = Vec<RatFn>;

pub fn basis(vars: &Vars, n: usize, i: usize) -> Vector {
    (0..n).map(|k| if k == i { RatFn::one(vars) } else { RatFn::zero(vars) }).collect()
}

fn vzero(vars: &Vars, n: usize) -> Vector {
    alloc::vec![RatFn::zero(vars); n]
}

fn vadd(a: &[RatFn], b: &[RatFn]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsub(a: &[RatFn], b: &[RatFn]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vscale(a: &[RatFn], c: &RatFn) -> Vector {
    a.iter().map(|x| x * c).collect()
}

fn first_nonzero(v: &[RatFn]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

/// `X(f) = Σ_i X^i ∂_i f`.
pub fn apply_field(x: &[RatFn], f: &RatFn) -> RatFn {
    let mut acc = RatFn::zero(f.vars());
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            acc = &acc + &(xi * &f.derivative(i));
        }
    }
    acc
}

/// `[X, Y]^k = X(Y^k) − Y(X^k)`.
pub fn bracket(x: &[RatFn], y: &[RatFn]) -> Vector {
    (0..x.len()).map(|k| &apply_field(x, &y[k]) - &apply_field(y, &x[k])).collect()
}

/// `X ∘ Y` for a multiplication `mult`.
pub fn product(mult: &[RatMatrix], x: &[RatFn], y: &[RatFn]) -> Vector {
    let n = x.len();
    let vars = mult[0].vars();
    let mut acc = vzero(vars, n);
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let c = &x[i] * &y[j];
            for (k, a) in acc.iter_mut().enumerate() {
                let m = &mult[i][(k, j)];
                if !m.is_zero() {
                    *a = &*a + &(m * &c);
                }
            }
        }
    }
    acc
}

/// `∇_X Y = Σ_i X^i (∂_i Y + Γ_i Y)`.
pub fn covariant(conn: &[RatMatrix], x: &[RatFn], y: &[RatFn]) -> Vector {
    let n = x.len();
    let vars = conn[0].vars();
    let mut acc = vzero(vars, n);
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        let gy = conn[i].apply(y);
        let col: Vector = (0..n).map(|k| &y[k].derivative(i) + &gy[k]).collect();
        acc = vadd(&acc, &vscale(&col, &x[i]));
    }
    acc
}

/// Matrix of `Z ↦ ∇_Z v`: column `l` is `∇_{∂_l} v`.
pub fn nabla_matrix(conn: &[RatMatrix], v: &[RatFn]) -> RatMatrix {
    let n = v.len();
    let vars = conn[0].vars();
    let mut m = RatMatrix::zeros(vars, n, n);
    for l in 0..n {
        let col = covariant(conn, &basis(vars, n, l), v);
        for (k, c) in col.into_iter().enumerate() {
            m[(k, l)] = c;
        }
    }
    m
}

/// Matrix of `Z ↦ v ∘ Z`.
pub fn mult_matrix(mult: &[RatMatrix], v: &[RatFn]) -> RatMatrix {
    let n = v.len();
    let vars = mult[0].vars();
    let mut acc = RatMatrix::zeros(vars, n, n);
    for (k, vk) in v.iter().enumerate() {
        if !vk.is_zero() {
            acc = acc.add(&mult[k].scale_by(vk));
        }
    }
    acc
}

pub fn zero_connection(vars: &Vars, n: usize) -> Vec<RatMatrix> {
    (0..n).map(|_| RatMatrix::zeros(vars, n, n)).collect()
}

/// `(∇, ⋆, e)` with unit `E` of `⋆` and parameter `r`.
#[derive(Debug, Clone)]
pub struct AlmostSaito {
    pub conn: Vec<RatMatrix>,
    pub mult: Vec<RatMatrix>,
    pub unit: Vector,
    pub e: Vector,
    pub r: Rat,
}

/// `(∇, ∗, E)` with unit `e` of `∗`.
#[derive(Debug, Clone)]
pub struct Saito {
    pub conn: Vec<RatMatrix>,
    pub mult: Vec<RatMatrix>,
    pub unit: Vector,
    pub euler: Vector,
}

/// The multiplication determined by the ASS4 identity for `(conn, e)`:
/// `M_i = −R⁻¹(∂_i R + Γ_i R − R Γ_i)` with `R` the matrix of `Z ↦ ∇_Z e`.
pub fn ass4_multiplication(conn: &[RatMatrix], e: &[RatFn]) -> Result<Vec<RatMatrix>> {
    let r = nabla_matrix(conn, e);
    let rinv = r.inverse().map_err(|err| match err {
        Error::Singular => Error::Precondition("the map X -> nabla_X e is singular".into()),
        other => other,
    })?;
    Ok((0..e.len())
        .map(|i| rinv.mul(&r.derivative(i).add(&conn[i].commutator(&r))).neg())
        .collect())
}

/// `B̃_i = −Q⁻¹ ∂_i Q`, checked against `∂_i Q + Q B̃_i = 0`.
pub fn natural_multiplication(ef: &EFieldData) -> Result<Vec<RatMatrix>> {
    let qinv = ef.q.inverse()?;
    let b: Vec<RatMatrix> = (0..ef.e.len()).map(|i| qinv.mul(&ef.q.derivative(i)).neg()).collect();
    for (i, bi) in b.iter().enumerate() {
        if !ef.q.derivative(i).add(&ef.q.mul(bi)).is_zero() {
            return Err(Error::Consistency(format!("natural structure constants fail at i = {}", i + 1)));
        }
    }
    Ok(b)
}

/// `⋄` from the Levi-Civita connection of `h`.
pub fn cs_multiplication(hm: &HessianMetric, ef: &EFieldData) -> Result<Vec<RatMatrix>> {
    ass4_multiplication(&hm.s, &ef.e)
}

/// The natural ASS `(∇^V, ⋆, e)` of parameter `1/d_1`.
pub fn natural_ass(g: &GroupSpec, ef: &EFieldData) -> Result<AlmostSaito> {
    Ok(AlmostSaito {
        conn: zero_connection(&g.vars, g.rank()),
        mult: natural_multiplication(ef)?,
        unit: geometry::euler_field(g).e,
        e: ef.e.clone(),
        r: Rat::new(1, g.d1() as i64),
    })
}

/// The ASS `(∇^cs, ⋄, e)` of parameter `d_n/(2 d_1)`.
pub fn cs_ass(g: &GroupSpec, hm: &HessianMetric, ef: &EFieldData) -> Result<AlmostSaito> {
    Ok(AlmostSaito {
        conn: hm.s.clone(),
        mult: cs_multiplication(hm, ef)?,
        unit: geometry::euler_field(g).e,
        e: ef.e.clone(),
        r: Rat::new(g.dn() as i64, 2 * g.d1() as i64),
    })
}

/// `e ⋆ (X ∗ Y) = X ⋆ Y` and `∇_X Y = ∇^A_X Y − ∇^A_{X∗Y} e`.
pub fn dualize_ass_to_ss(a: &AlmostSaito) -> Result<Saito> {
    let p = mult_matrix(&a.mult, &a.e);
    let pinv = p.inverse().map_err(|_| Error::Precondition("e* is singular".into()))?;
    let mult: Vec<RatMatrix> = a.mult.iter().map(|b| pinv.mul(b)).collect();
    let ra = nabla_matrix(&a.conn, &a.e);
    let conn = a.conn.iter().zip(&mult).map(|(g, c)| g.sub(&ra.mul(c))).collect();
    Ok(Saito { conn, mult, unit: a.e.clone(), euler: a.unit.clone() })
}

/// `E ∗ (X ⋆ Y) = X ∗ Y` and `∇^A_X Y = ∇_X Y + r X⋆Y − ∇_{X⋆Y} E`.
pub fn dualize_ss_to_ass(s: &Saito, r: &Rat) -> Result<AlmostSaito> {
    let ue = mult_matrix(&s.mult, &s.euler);
    let ueinv = ue.inverse().map_err(|_| Error::Precondition("E* is singular".into()))?;
    let mult: Vec<RatMatrix> = s.mult.iter().map(|c| ueinv.mul(c)).collect();
    let re = nabla_matrix(&s.conn, &s.euler);
    let conn = s
        .conn
        .iter()
        .zip(&mult)
        .map(|(g, b)| g.add(&b.scale(r)).sub(&re.mul(b)))
        .collect();
    Ok(AlmostSaito { conn, mult, unit: s.euler.clone(), e: s.unit.clone(), r: r.clone() })
}

fn each_pair(n: usize, mut f: impl FnMut(usize, usize) -> Option<usize>) -> Option<(usize, usize, usize)> {
    for i in 0..n {
        for j in 0..n {
            if let Some(k) = f(i, j) {
                return Some((i + 1, j + 1, k + 1));
            }
        }
    }
    None
}

fn each_triple(n: usize, mut f: impl FnMut(usize, usize, usize) -> Option<usize>) -> Option<(usize, usize, usize, usize)> {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let Some(l) = f(i, j, k) {
                    return Some((i + 1, j + 1, k + 1, l + 1));
                }
            }
        }
    }
    None
}

pub fn check_commutative(mult: &[RatMatrix]) -> Option<(usize, usize, usize)> {
    let n = mult.len();
    each_pair(n, |i, j| (0..n).find(|&k| mult[i][(k, j)] != mult[j][(k, i)]))
}

pub fn check_associative(mult: &[RatMatrix]) -> Option<(usize, usize, usize, usize)> {
    let n = mult.len();
    let vars = mult[0].vars().clone();
    let b = |i| basis(&vars, n, i);
    each_triple(n, |i, j, k| {
        let lhs = product(mult, &product(mult, &b(i), &b(j)), &b(k));
        let rhs = product(mult, &b(i), &product(mult, &b(j), &b(k)));
        first_nonzero(&vsub(&lhs, &rhs))
    })
}

pub fn check_unit(mult: &[RatMatrix], unit: &[RatFn]) -> Option<(usize, usize)> {
    let n = mult.len();
    let vars = mult[0].vars().clone();
    for j in 0..n {
        let d = vsub(&product(mult, unit, &basis(&vars, n, j)), &basis(&vars, n, j));
        if let Some(k) = first_nonzero(&d) {
            return Some((j + 1, k + 1));
        }
    }
    None
}

/// `∇_X(Y∘Z) − Y∘∇_X Z − ∇_Y(X∘Z) + X∘∇_Y Z − [X,Y]∘Z`.
pub fn check_potentiality(conn: &[RatMatrix], mult: &[RatMatrix]) -> Option<(usize, usize, usize, usize)> {
    let n = mult.len();
    let vars = mult[0].vars().clone();
    let b = |i| basis(&vars, n, i);
    each_triple(n, |i, j, k| {
        if i >= j {
            return None;
        }
        let (x, y, z) = (b(i), b(j), b(k));
        let mut t = covariant(conn, &x, &product(mult, &y, &z));
        t = vsub(&t, &product(mult, &y, &covariant(conn, &x, &z)));
        t = vsub(&t, &covariant(conn, &y, &product(mult, &x, &z)));
        t = vadd(&t, &product(mult, &x, &covariant(conn, &y, &z)));
        t = vsub(&t, &product(mult, &bracket(&x, &y), &z));
        first_nonzero(&t)
    })
}

/// SS2 with `sign = -1` (`… = X∗Y`) and ASS2 with `sign = +1`, where the
/// extra term is `v ∘ X ∘ Y`, `v = e` for ASS and omitted for SS.
fn check_homogeneity(mult: &[RatMatrix], field: &[RatFn], ass: bool) -> Option<(usize, usize, usize)> {
    let n = mult.len();
    let vars = mult[0].vars().clone();
    let b = |i| basis(&vars, n, i);
    each_pair(n, |i, j| {
        let (x, y) = (b(i), b(j));
        let xy = product(mult, &x, &y);
        let mut t = bracket(field, &xy);
        t = vsub(&t, &product(mult, &bracket(field, &x), &y));
        t = vsub(&t, &product(mult, &x, &bracket(field, &y)));
        t = if ass { vadd(&t, &product(mult, field, &xy)) } else { vsub(&t, &xy) };
        first_nonzero(&t)
    })
}

/// `∇_X ∇_Y v − ∇_{∇_X Y} v (+ ∇_{X∘Y} v)`.
fn check_second_derivative(conn: &[RatMatrix], mult: Option<&[RatMatrix]>, v: &[RatFn]) -> Option<(usize, usize, usize)> {
    let n = v.len();
    let vars = conn[0].vars().clone();
    let b = |i| basis(&vars, n, i);
    each_pair(n, |i, j| {
        let (x, y) = (b(i), b(j));
        let mut t = covariant(conn, &x, &covariant(conn, &y, v));
        t = vsub(&t, &covariant(conn, &covariant(conn, &x, &y), v));
        if let Some(m) = mult {
            t = vadd(&t, &covariant(conn, &product(m, &x, &y), v));
        }
        first_nonzero(&t)
    })
}

fn check_parallel(conn: &[RatMatrix], v: &[RatFn]) -> Option<(usize, usize)> {
    let n = v.len();
    let vars = conn[0].vars().clone();
    for i in 0..n {
        if let Some(k) = first_nonzero(&covariant(conn, &basis(&vars, n, i), v)) {
            return Some((i + 1, k + 1));
        }
    }
    None
}

fn check_ass3(conn: &[RatMatrix], euler: &[RatFn], r: &Rat) -> Option<(usize, usize)> {
    let n = euler.len();
    let vars = conn[0].vars().clone();
    for i in 0..n {
        let x = basis(&vars, n, i);
        let d = vsub(&covariant(conn, &x, euler), &vscale(&x, &RatFn::constant(&vars, r.clone())));
        if let Some(k) = first_nonzero(&d) {
            return Some((i + 1, k + 1));
        }
    }
    None
}

fn common_checks(conn: &[RatMatrix], mult: &[RatMatrix], unit: &[RatFn]) -> Vec<Check> {
    alloc::vec![
        Check::from_witness("torsion-free", geometry::torsion_check(conn)),
        Check::from_witness("flat", geometry::flatness_check(conn)),
        Check::from_witness("commutative", check_commutative(mult)),
        Check::from_witness("associative", check_associative(mult)),
        Check::from_witness("unit", check_unit(mult, unit)),
    ]
}

pub fn verify_ss(s: &Saito) -> Vec<Check> {
    let mut out = common_checks(&s.conn, &s.mult, &s.unit);
    out.push(Check::from_witness("ss1", check_potentiality(&s.conn, &s.mult)));
    out.push(Check::from_witness("ss2", check_homogeneity(&s.mult, &s.euler, false)));
    out.push(Check::from_witness("ss3", check_parallel(&s.conn, &s.unit)));
    out.push(Check::from_witness("ss4", check_second_derivative(&s.conn, None, &s.euler)));
    out
}

pub fn verify_ass(a: &AlmostSaito) -> Vec<Check> {
    let mut out = common_checks(&a.conn, &a.mult, &a.unit);
    out.push(Check::from_witness("ass1", check_potentiality(&a.conn, &a.mult)));
    out.push(Check::from_witness("ass2", check_homogeneity(&a.mult, &a.e, true)));
    out.push(Check::from_witness("ass3", check_ass3(&a.conn, &a.unit, &a.r)));
    out.push(Check::from_witness("ass4", check_second_derivative(&a.conn, Some(&a.mult), &a.e)));
    out
}

fn pairing(g: &RatMatrix, x: &[RatFn], y: &[RatFn]) -> RatFn {
    let gy = g.apply(y);
    let mut acc = RatFn::zero(g.vars());
    for (a, b) in x.iter().zip(&gy) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

fn check_metric_compatible(conn: &[RatMatrix], g: &RatMatrix) -> Option<(usize, usize, usize)> {
    let n = g.rows();
    let vars = g.vars().clone();
    let b = |i| basis(&vars, n, i);
    each_pair(n, |i, j| {
        (0..n).find(|&k| {
            let (x, y, z) = (b(i), b(j), b(k));
            let lhs = apply_field(&x, &pairing(g, &y, &z));
            let rhs = &pairing(g, &covariant(conn, &x, &y), &z) + &pairing(g, &y, &covariant(conn, &x, &z));
            lhs != rhs
        })
    })
}

fn check_invariant_pairing(mult: &[RatMatrix], g: &RatMatrix) -> Option<(usize, usize, usize)> {
    let n = g.rows();
    let vars = g.vars().clone();
    let b = |i| basis(&vars, n, i);
    each_pair(n, |i, j| {
        (0..n).find(|&k| {
            let (x, y, z) = (b(i), b(j), b(k));
            pairing(g, &product(mult, &x, &y), &z) != pairing(g, &x, &product(mult, &y, &z))
        })
    })
}

/// `v g(X,Y) − g([v,X],Y) − g(X,[v,Y]) − c g(X,Y)` plus `g(v∘X, Y)` when `mult` is given.
fn check_metric_homogeneity(g: &RatMatrix, v: &[RatFn], c: &Rat, mult: Option<&[RatMatrix]>) -> Option<(usize, usize)> {
    let n = g.rows();
    let vars = g.vars().clone();
    let b = |i| basis(&vars, n, i);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (b(i), b(j));
            let mut t = apply_field(v, &pairing(g, &x, &y));
            t = &t - &pairing(g, &bracket(v, &x), &y);
            t = &t - &pairing(g, &x, &bracket(v, &y));
            t = &t - &pairing(g, &x, &y).scale(c);
            if let Some(m) = mult {
                t = &t + &pairing(g, &product(m, v, &x), &y);
            }
            if !t.is_zero() {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// f1–f3 for `(η, ∗, E)` with charge `d`.
pub fn verify_frobenius(s: &Saito, eta: &RatMatrix, d: &Rat) -> Vec<Check> {
    let two_minus = &Rat::from_int(2) - d;
    alloc::vec![
        Check::from_witness("f1", check_metric_compatible(&s.conn, eta)),
        Check::from_witness("f2", check_invariant_pairing(&s.mult, eta)),
        Check::from_witness("f3", check_metric_homogeneity(eta, &s.euler, &two_minus, None)),
    ]
}

/// af1–af3 for `(g, ⋆, e)`.
pub fn verify_almost_frobenius(a: &AlmostSaito, g: &RatMatrix) -> Vec<Check> {
    alloc::vec![
        Check::from_witness("af1", check_metric_compatible(&a.conn, g)),
        Check::from_witness("af2", check_invariant_pairing(&a.mult, g)),
        Check::from_witness("af3", check_metric_homogeneity(g, &a.e, &Rat::zero(), Some(&a.mult))),
    ]
}

/// `η = H̃ · (E∗)`, the metric dual to `h`.
pub fn dual_metric(h: &RatMatrix, s: &Saito) -> RatMatrix {
    h.mul(&mult_matrix(&s.mult, &s.euler))
}

/// First `(i, j, k)` where two multiplications differ.
pub fn compare_multiplications(a: &[RatMatrix], b: &[RatMatrix]) -> Option<(usize, usize, usize)> {
    let n = a.len();
    each_pair(n, |i, j| (0..n).find(|&k| a[i][(k, j)] != b[i][(k, j)]))
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub multiplications_equal: bool,
    pub multiplication_witness: Option<(usize, usize, usize)>,
    pub connections_equal: bool,
    pub witness: Option<(usize, usize, usize)>,
    pub factor: Rat,
}

/// `⋆` against `⋄`, and `S̃^k_{ij}` against `((d_n−2)/(2d_1)) B̃^k_{ij}`.
pub fn compare_structures(g: &GroupSpec, natural: &[RatMatrix], cs: &[RatMatrix], s: &[RatMatrix]) -> Comparison {
    let factor = Rat::new(g.dn() as i64 - 2, 2 * g.d1() as i64);
    let mw = compare_multiplications(natural, cs);
    let scaled: Vec<RatMatrix> = natural.iter().map(|b| b.scale(&factor)).collect();
    let cw = compare_multiplications(s, &scaled);
    Comparison {
        multiplications_equal: mw.is_none(),
        multiplication_witness: mw,
        connections_equal: cw.is_none(),
        witness: cw,
        factor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::geometry::{e_field, jacobian};
    use crate::group::{make_group, Family};

    #[test]
    fn cyclic_natural_constant() {
        let g = make_group(Family::Zm, Some(5), None).unwrap();
        let jd = jacobian(&g).unwrap();
        let ef = e_field(&g, &jd).unwrap();
        let b = natural_multiplication(&ef).unwrap();
        let expect = RatFn::new(Poly::from_int(&g.vars, 5), Poly::var(&g.vars, 0)).unwrap();
        assert_eq!(b[0][(0, 0)], expect);
    }

    #[test]
    fn bracket_of_coordinate_fields_vanishes() {
        let v = Vars::indexed("u", 2).unwrap();
        assert!(bracket(&basis(&v, 2, 0), &basis(&v, 2, 1)).iter().all(RatFn::is_zero));
        let x: Vector = alloc::vec![RatFn::from_poly(Poly::var(&v, 1)), RatFn::zero(&v)];
        let y = basis(&v, 2, 1);
        // [u2 ∂1, ∂2] = −∂1
        let br = bracket(&x, &y);
        assert_eq!(br[0], RatFn::from_poly(Poly::from_int(&v, -1)));
    }
}
