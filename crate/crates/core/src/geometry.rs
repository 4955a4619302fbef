//! Orbit-space geometry in the `u`-coordinates: Jacobian, the unit field
//! `e = ∂/∂x^1`, the Euler field, the Hessian metric of `x^n` and its
//! Levi-Civita connection.
//!
//! A connection is a list of matrices `Γ_i` with `(Γ_i)[k][j] = Γ^k_{ij}`,
//! that is `∇_{∂_i} ∂_j = Σ_k Γ^k_{ij} ∂_k`.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{Poly, PolyMatrix, Rat, RatFn, RatMatrix};
use crate::error::{Error, Result};
use crate::group::GroupSpec;

#[derive(Debug, Clone)]
pub struct JacobianData {
    pub j: PolyMatrix,
    pub jinv: RatMatrix,
    pub det_j: Poly,
}

#[derive(Debug, Clone)]
pub struct EFieldData {
    pub e: Vec<RatFn>,
    pub q: RatMatrix,
    pub det_q: RatFn,
}

#[derive(Debug, Clone)]
pub struct EulerField {
    /// Components of `E = E_deg / d_1`.
    pub e: Vec<RatFn>,
    pub d1: u32,
}

#[derive(Debug, Clone)]
pub struct HessianMetric {
    pub h: PolyMatrix,
    pub hinv: RatMatrix,
    /// `S̃_i` with `(S̃_i)[k][j] = S̃^k_{ij}`.
    pub s: Vec<RatMatrix>,
}

pub fn jacobian(g: &GroupSpec) -> Result<JacobianData> {
    let j = g.jacobian_matrix();
    let n = g.rank();
    let ones = alloc::vec![1u32; n];
    for a in 0..n {
        for i in 0..n {
            if !j[(a, i)].is_homogeneous_of(&ones, g.degrees[a] as i64 - 1) {
                return Err(Error::NotHomogeneous(format!("J[{}][{}]", a + 1, i + 1)));
            }
        }
    }
    let det_j = j.det()?;
    if det_j.is_zero() {
        return Err(Error::Singular);
    }
    let jinv = j.to_ratfn().inverse()?;
    Ok(JacobianData { j, jinv, det_j })
}

/// `e^k = ∂u^k/∂x^1` and `Q^k_j = ∂e^k/∂u^j`.
pub fn e_field(g: &GroupSpec, jd: &JacobianData) -> Result<EFieldData> {
    if g.rank() > 1 && g.degrees[0] == g.degrees[1] {
        return Err(Error::Precondition(format!("e = d/dx1 needs d1 > d2, degrees are {:?}", g.degrees)));
    }
    let n = g.rank();
    let e = jd.jinv.column(0);
    let q = RatMatrix::from_fn(&g.vars, n, n, |k, j| e[k].derivative(j));
    let det_q = q.det()?;
    if det_q.is_zero() {
        return Err(Error::Precondition("det Q vanishes identically".into()));
    }
    Ok(EFieldData { e, q, det_q })
}

pub fn euler_field(g: &GroupSpec) -> EulerField {
    let d1 = Rat::from_int(g.d1() as i64);
    let e = (0..g.rank())
        .map(|i| RatFn::from_poly(Poly::var(&g.vars, i).scale(&d1.inv().unwrap())))
        .collect();
    EulerField { e, d1: g.d1() }
}

/// `E_deg(x^α) = d_α x^α` for every invariant.
pub fn euler_degree_check(g: &GroupSpec) -> bool {
    g.invariants.iter().zip(&g.degrees).all(|(x, d)| {
        let mut acc = Poly::zero(&g.vars);
        for i in 0..g.rank() {
            acc = &acc + &(&Poly::var(&g.vars, i) * &x.derivative(i));
        }
        acc == x.scale(&Rat::from_int(*d as i64))
    })
}

pub fn hessian_metric(g: &GroupSpec) -> Result<HessianMetric> {
    let n = g.rank();
    let xn = &g.invariants[n - 1];
    let h = PolyMatrix::from_fn(&g.vars, n, n, |i, j| xn.derivative(i).derivative(j));
    if h.det()?.is_zero() {
        return Err(Error::Precondition("the Hessian of x^n is degenerate".into()));
    }
    let hinv = h.to_ratfn().inverse()?;
    let half = Rat::new(1, 2);
    let s = (0..n)
        .map(|i| {
            // (S̃_i)[k][j] = ½ Σ_l H̃^{kl} ∂_i ∂_j ∂_l x^n
            let third = RatMatrix::from_fn(&g.vars, n, n, |l, j| RatFn::from_poly(h[(i, j)].derivative(l)));
            hinv.mul(&third).scale(&half)
        })
        .collect();
    Ok(HessianMetric { h, hinv, s })
}

/// Curvature `R_{ij} = ∂_iΓ_j − ∂_jΓ_i + [Γ_i, Γ_j]`; returns the first
/// nonzero entry `(i, j, k, l)` (1-based, `i < j`) or `None` when flat.
pub fn flatness_check(gammas: &[RatMatrix]) -> Option<(usize, usize, usize, usize)> {
    let n = gammas.len();
    for i in 0..n {
        for j in i + 1..n {
            let r = gammas[j]
                .derivative(i)
                .sub(&gammas[i].derivative(j))
                .add(&gammas[i].commutator(&gammas[j]));
            for k in 0..n {
                for l in 0..n {
                    if !r[(k, l)].is_zero() {
                        return Some((i + 1, j + 1, k + 1, l + 1));
                    }
                }
            }
        }
    }
    None
}

/// First `(i, j, k)` with `Γ^k_{ij} ≠ Γ^k_{ji}`.
pub fn torsion_check(gammas: &[RatMatrix]) -> Option<(usize, usize, usize)> {
    let n = gammas.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if gammas[i][(k, j)] != gammas[j][(k, i)] {
                    return Some((i + 1, j + 1, k + 1));
                }
            }
        }
    }
    None
}

/// `∇_{∂_i} E = r ∂_i` for all `i`; returns the first failing `(i, k)`.
pub fn ass3_check(gammas: &[RatMatrix], euler: &[RatFn], r: &Rat) -> Option<(usize, usize)> {
    let n = euler.len();
    for (i, gi) in gammas.iter().enumerate().take(n) {
        let ge = gi.apply(euler);
        for k in 0..n {
            let lhs = &euler[k].derivative(i) + &ge[k];
            let rhs = if i == k { RatFn::constant(euler[0].vars(), r.clone()) } else { RatFn::zero(euler[0].vars()) };
            if lhs != rhs {
                return Some((i + 1, k + 1));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, Family};

    #[test]
    fn cyclic_jacobian() {
        let g = make_group(Family::Zm, Some(5), None).unwrap();
        let jd = jacobian(&g).unwrap();
        assert_eq!(alloc::format!("{}", jd.j[(0, 0)]), "5*u1^4");
        assert_eq!(alloc::format!("{}", jd.jinv[(0, 0)]), "1/(5*u1^4)");
    }

    #[test]
    fn artificial_curvature() {
        let g = make_group(Family::B, None, Some(2)).unwrap();
        let v = &g.vars;
        let mut g1 = RatMatrix::zeros(v, 2, 2);
        g1[(0, 0)] = RatFn::from_poly(Poly::var(v, 1));
        let g2 = RatMatrix::zeros(v, 2, 2);
        assert_eq!(flatness_check(&[g1, g2.clone()]), Some((1, 2, 1, 1)));
        assert_eq!(flatness_check(&[g2.clone(), g2]), None);
    }
}
