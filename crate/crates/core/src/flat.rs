//! Flat coordinates of the natural Saito structure and the matrix calculus
//! in them.
//!
//! The pipeline is: push the natural Saito structure from the `u`-frame to
//! the `x`-frame, solve the triangular gauge equation `∂_α X + Γ_α X = 0` for
//! flat coordinates `t`, build `C_α, U, B_α, H, A, S_α, Υ_α` in the
//! `t`-frame, then repeat the gauge construction with `Υ` to obtain the
//! coordinates `s`. Every intermediate claim is verified and reported as a
//! [`Check`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{euler_integrate, linear, Monomial, Poly, PolyMatrix, Rat, RatFn, RatMatrix, Vars};
use crate::error::{Error, Result};
use crate::geometry::JacobianData;
use crate::group::GroupSpec;
use crate::saito::{covariant, Check, Saito};

/// Exponent vectors `a` with `Σ a_α w_α = degree`.
pub fn weighted_monomials(weights: &[u32], degree: u32) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[cur.len()];
        for k in 0..=left / w {
            cur.push(k);
            go(weights, left - k * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, degree, &mut Vec::new(), &mut out);
    out
}

/// Writes a `G`-invariant polynomial in `u` as a polynomial in the basic
/// invariants, over the ring `xvars`.
pub fn express_in_invariants(p: &Poly, g: &GroupSpec, xvars: &Vars) -> Result<Poly> {
    if p.is_zero() {
        return Ok(Poly::zero(xvars));
    }
    let ones = alloc::vec![1u32; g.rank()];
    let deg = p
        .homogeneous_degree(&ones)
        .ok_or_else(|| Error::NotHomogeneous(format!("{p}")))?;
    let exps = weighted_monomials(&g.degrees, deg);
    let images: Vec<Poly> = exps
        .iter()
        .map(|a| {
            a.iter()
                .enumerate()
                .fold(Poly::one(&g.vars), |acc, (i, &k)| if k == 0 { acc } else { &acc * &g.invariants[i].pow(k) })
        })
        .collect();
    let mut rows: Vec<Monomial> = p.terms().iter().map(|t| t.0).collect();
    for im in &images {
        rows.extend(im.terms().iter().map(|t| t.0));
    }
    rows.sort();
    rows.dedup();
    let a: Vec<Vec<Rat>> = rows.iter().map(|m| images.iter().map(|im| im.coefficient(m)).collect()).collect();
    let b: Vec<Rat> = rows.iter().map(|m| p.coefficient(m)).collect();
    let sol = linear::solve(&a, &b).ok_or_else(|| Error::Precondition(format!("{p} is not a polynomial in the invariants")))?;
    let terms = exps
        .iter()
        .zip(sol)
        .filter(|(_, c)| !c.is_zero())
        .map(|(a, c)| (Monomial::from_exponents(a), c))
        .collect();
    Ok(Poly::from_terms(xvars, terms))
}

/// The natural Saito structure in the `x`-frame with polynomial entries.
#[derive(Debug, Clone)]
pub struct XFrame {
    pub vars: Vars,
    /// `(Γ_α)[γ][β] = dx^γ(∇_{∂/∂x^α} ∂/∂x^β)`.
    pub gamma: Vec<PolyMatrix>,
    /// `(C_α)[γ][β]` for `∂/∂x^α ∗ ∂/∂x^β`.
    pub mult: Vec<PolyMatrix>,
}

fn push_to_poly(m: &RatMatrix, g: &GroupSpec, xvars: &Vars, what: &str, alpha: usize) -> Result<PolyMatrix> {
    let n = m.rows();
    let mut out = PolyMatrix::zeros(xvars, n, m.cols());
    for r in 0..n {
        for c in 0..m.cols() {
            let p = m[(r, c)].as_poly().ok_or_else(|| {
                Error::NotPolynomial(format!("{what}_{}[{}][{}] = {}", alpha + 1, r + 1, c + 1, m[(r, c)]))
            })?;
            out[(r, c)] = express_in_invariants(&p, g, xvars)?;
        }
    }
    Ok(out)
}

pub fn x_frame(g: &GroupSpec, jd: &JacobianData, ss: &Saito) -> Result<XFrame> {
    let n = g.rank();
    let xvars = Vars::indexed("x", n)?;
    let j = jd.j.to_ratfn();
    let f = &jd.jinv;
    let df: Vec<RatMatrix> = (0..n).map(|i| f.derivative(i)).collect();
    let mut gamma = Vec::with_capacity(n);
    let mut mult = Vec::with_capacity(n);
    for a in 0..n {
        let mut acc_g = RatMatrix::zeros(&g.vars, n, n);
        let mut acc_c = RatMatrix::zeros(&g.vars, n, n);
        for i in 0..n {
            let w = &f[(i, a)];
            if w.is_zero() {
                continue;
            }
            acc_g = acc_g.add(&df[i].add(&ss.conn[i].mul(f)).scale_by(w));
            acc_c = acc_c.add(&ss.mult[i].scale_by(w));
        }
        gamma.push(push_to_poly(&j.mul(&acc_g), g, &xvars, "Gamma", a)?);
        mult.push(push_to_poly(&j.mul(&acc_c).mul(f), g, &xvars, "C", a)?);
    }
    Ok(XFrame { vars: xvars, gamma, mult })
}

fn strictly_upper(m: &PolyMatrix) -> bool {
    (0..m.rows()).all(|r| (0..=r).all(|c| m[(r, c)].is_zero()))
}

/// Unique upper unitriangular homogeneous `X` with `∂_α X + Γ_α X = 0`,
/// where `deg X^γ_β = w_γ − w_β`.
pub fn gauge_solve(conn: &[PolyMatrix], weights: &[u32]) -> Result<PolyMatrix> {
    let n = conn.len();
    let vars = conn[0].vars().clone();
    for (a, g) in conn.iter().enumerate() {
        if !strictly_upper(g) {
            return Err(Error::Precondition(format!("connection matrix {} is not strictly upper triangular", a + 1)));
        }
    }
    let mut x = PolyMatrix::identity(&vars, n);
    for b in 0..n {
        for c in (0..b).rev() {
            let comps: Vec<Poly> = (0..n)
                .map(|a| {
                    let mut s = Poly::zero(&vars);
                    for d in c + 1..=b {
                        if !conn[a][(c, d)].is_zero() && !x[(d, b)].is_zero() {
                            s = &s - &(&conn[a][(c, d)] * &x[(d, b)]);
                        }
                    }
                    s
                })
                .collect();
            x[(c, b)] = euler_integrate(&comps, weights, weights[c] as i64 - weights[b] as i64)
                .map_err(|e| Error::Incompatible(format!("gauge entry ({}, {}): {e}", c + 1, b + 1)))?;
        }
    }
    for (a, g) in conn.iter().enumerate() {
        if !x.derivative(a).add(&g.mul(&x)).is_zero() {
            return Err(Error::Consistency(format!("gauge equation fails for alpha = {}", a + 1)));
        }
    }
    Ok(x)
}

/// Inverse of an upper unitriangular polynomial matrix.
pub fn unitriangular_inverse(x: &PolyMatrix) -> PolyMatrix {
    let n = x.rows();
    let vars = x.vars().clone();
    let mut y = PolyMatrix::identity(&vars, n);
    for b in 0..n {
        for c in (0..b).rev() {
            let mut s = Poly::zero(&vars);
            for d in c + 1..=b {
                if !x[(c, d)].is_zero() && !y[(d, b)].is_zero() {
                    s = &s - &(&x[(c, d)] * &y[(d, b)]);
                }
            }
            y[(c, b)] = s;
        }
    }
    y
}

/// Potentials of the rows of `y`: `dz^α = Σ_β y[α][β] dy^β`.
pub fn integrate_rows(y: &PolyMatrix, weights: &[u32]) -> Result<Vec<Poly>> {
    (0..y.rows())
        .map(|a| {
            euler_integrate(y.row(a), weights, weights[a] as i64)
                .map_err(|e| Error::Incompatible(format!("coordinate {}: {e}", a + 1)))
        })
        .collect()
}

/// Inverts a triangular change `z^α = y^α + F_α(y^{α+1}, …, y^n)`, giving
/// `y` as polynomials over `zvars`.
pub fn invert_triangular_change(coords: &[Poly], zvars: &Vars) -> Result<Vec<Poly>> {
    let n = coords.len();
    let yvars = coords[0].vars().clone();
    let mut y: Vec<Poly> = alloc::vec![Poly::zero(zvars); n];
    for a in (0..n).rev() {
        let f = &coords[a] - &Poly::var(&yvars, a);
        if (0..=a).any(|v| f.involves(v)) {
            return Err(Error::Precondition(format!("coordinate {} is not triangular", a + 1)));
        }
        y[a] = &Poly::var(zvars, a) - &f.substitute(&y);
    }
    let back: Vec<Poly> = coords.iter().map(|c| c.substitute(&y)).collect();
    if back.iter().enumerate().any(|(a, p)| p != &Poly::var(zvars, a)) {
        return Err(Error::Consistency("triangular change does not invert".into()));
    }
    Ok(y)
}

/// `∂/∂t^β = Σ_γ X^γ_β ∂_γ`: `C_t,α = X⁻¹ (Σ_γ X^γ_α C_γ) X`.
fn change_frame(c: &[PolyMatrix], x: &PolyMatrix, y: &PolyMatrix) -> Vec<PolyMatrix> {
    let n = c.len();
    let vars = x.vars().clone();
    (0..n)
        .map(|a| {
            let mut acc = PolyMatrix::zeros(&vars, n, n);
            for (g, cg) in c.iter().enumerate() {
                if !x[(g, a)].is_zero() {
                    acc = acc.add(&cg.scale_by(&x[(g, a)]));
                }
            }
            y.mul(&acc).mul(x)
        })
        .collect()
}

fn substitute_poly_matrix(m: &PolyMatrix, vars: &Vars, images: &[Poly]) -> PolyMatrix {
    m.map(vars, |p| p.substitute(images))
}

/// `∇`-flat coordinates `t` of the natural Saito structure and its
/// structure constants in the `t`-frame.
#[derive(Debug, Clone)]
pub struct FlatFrame {
    pub degrees: Vec<u32>,
    pub xframe: XFrame,
    pub tvars: Vars,
    /// Unitriangular `X` over `x` with `∂/∂t^β = Σ_γ X^γ_β ∂/∂x^γ`.
    pub gauge: PolyMatrix,
    /// `t^α` as polynomials in `x`.
    pub t_coords: Vec<Poly>,
    /// `x^α` as polynomials in `t`.
    pub inverse_change: Vec<Poly>,
    /// `t^α` as polynomials in `u`.
    pub t_in_u: Vec<Poly>,
    /// Columns `∂/∂t^β` in the `u`-frame.
    pub frame_u: RatMatrix,
    pub c: Vec<PolyMatrix>,
    pub u: PolyMatrix,
    pub w: Vec<Rat>,
}

fn require_strict(g: &GroupSpec) -> Result<()> {
    if g.degrees.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Precondition(format!(
            "triangular integration needs strictly descending degrees, got {:?}",
            g.degrees
        )));
    }
    Ok(())
}

pub fn find_flat_coordinates(g: &GroupSpec, jd: &JacobianData, ss: &Saito) -> Result<FlatFrame> {
    require_strict(g)?;
    let n = g.rank();
    let xf = x_frame(g, jd, ss)?;
    let x = gauge_solve(&xf.gamma, &g.degrees)?;
    let y = unitriangular_inverse(&x);
    let t_coords = integrate_rows(&y, &g.degrees)?;
    let tvars = Vars::indexed("t", n)?;
    let inverse_change = invert_triangular_change(&t_coords, &tvars)?;
    let c = change_frame(&xf.mult, &x, &y)
        .iter()
        .map(|m| substitute_poly_matrix(m, &tvars, &inverse_change))
        .collect::<Vec<_>>();
    let t_in_u: Vec<Poly> = t_coords.iter().map(|t| t.substitute(&g.invariants)).collect();
    let x_u = substitute_poly_matrix(&x, &g.vars, &g.invariants).to_ratfn();
    let frame_u = jd.jinv.mul(&x_u);
    let d1 = g.d1() as i64;
    let w: Vec<Rat> = g.degrees.iter().map(|&d| Rat::new(d as i64, d1)).collect();
    let mut u = PolyMatrix::zeros(&tvars, n, n);
    for (a, ca) in c.iter().enumerate() {
        let coef = Poly::var(&tvars, a).scale(&w[a]);
        u = u.add(&ca.scale_by(&coef));
    }
    Ok(FlatFrame { degrees: g.degrees.clone(), xframe: xf, tvars, gauge: x, t_coords, inverse_change, t_in_u, frame_u, c, u, w })
}

fn diag(vars: &Vars, w: &[Rat]) -> PolyMatrix {
    let n = w.len();
    PolyMatrix::from_fn(vars, n, n, |i, j| if i == j { Poly::constant(vars, w[i].clone()) } else { Poly::zero(vars) })
}

fn free_of_first(p: &Poly) -> bool {
    !p.involves(0)
}

fn first_entry<T>(m: &crate::algebra::Matrix<T>, mut bad: impl FnMut(usize, usize, &T) -> bool) -> Option<(usize, usize)>
where
    T: crate::algebra::Entry,
{
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if bad(r, c, &m[(r, c)]) {
                return Some((r + 1, c + 1));
            }
        }
    }
    None
}

fn indexed<W: core::fmt::Debug>(id: &str, w: Option<(usize, W)>) -> Check {
    match w {
        None => Check::new(id, true, String::new()),
        Some((a, w)) => Check::new(id, false, format!("alpha = {}, entry {w:?}", a + 1)),
    }
}

fn each<W>(n: usize, mut f: impl FnMut(usize) -> Option<W>) -> Option<(usize, W)> {
    (0..n).find_map(|a| f(a).map(|w| (a, w)))
}

/// Jacobian-pullback `(ᵗF · Hess_u(p) · F)` where `F` is the frame in `u`.
fn pulled_hessian(p: &Poly, frame: &RatMatrix) -> RatMatrix {
    let n = frame.rows();
    let h = RatMatrix::from_fn(p.vars(), n, n, |i, j| RatFn::from_poly(p.derivative(i).derivative(j)));
    frame.transpose().mul(&h).mul(frame)
}

pub fn flat_frame_checks(g: &GroupSpec, ss: &Saito, ff: &FlatFrame) -> Vec<Check> {
    let n = g.rank();
    let t = &ff.tvars;
    let xf = &ff.xframe;
    let x = &ff.gauge;
    let y = unitriangular_inverse(x);
    let mut out = Vec::new();

    let gamma_t = each(n, |a| {
        let mut acc = PolyMatrix::zeros(&xf.vars, n, n);
        for gi in 0..n {
            if !x[(gi, a)].is_zero() {
                acc = acc.add(&x.derivative(gi).add(&xf.gamma[gi].mul(x)).scale_by(&x[(gi, a)]));
            }
        }
        first_entry(&y.mul(&acc), |_, _, p| !p.is_zero())
    });
    out.push(indexed("flat-t", gamma_t));

    let cols: Vec<Vec<RatFn>> = (0..n).map(|b| ff.frame_u.column(b)).collect();
    let flat_u = (0..n).find_map(|a| {
        (0..n).find_map(|b| {
            covariant(&ss.conn, &cols[a], &cols[b]).iter().position(|c| !c.is_zero()).map(|k| (a + 1, b + 1, k + 1))
        })
    });
    out.push(Check::from_witness("flat-u", flat_u));

    let normal = (0..n).find(|&a| {
        let f = &ff.t_coords[a] - &Poly::var(&xf.vars, a);
        (0..=a).any(|v| f.involves(v))
    });
    out.push(Check::from_witness("normalization", normal.map(|a| a + 1)));

    let id = PolyMatrix::identity(t, n);
    let c1 = ff.c[0].first_difference(&id).map(|w| (1, w.0, w.1)).or_else(|| {
        each(n, |a| first_entry(&ff.c[a], |k, b, p| p != &ff.c[b][(k, a)])).map(|(a, w)| (a + 1, w.0, w.1))
    });
    out.push(Check::from_witness("c1", c1));
    out.push(indexed(
        "commute",
        each(n, |a| (0..n).find_map(|b| first_entry(&ff.c[a].commutator(&ff.c[b]), |_, _, p| !p.is_zero()).map(|w| (b + 1, w)))),
    ));
    out.push(indexed("uc", each(n, |a| first_entry(&ff.u.commutator(&ff.c[a]), |_, _, p| !p.is_zero()))));
    let wm = diag(t, &ff.w);
    let du = each(n, |a| {
        let rhs = wm.mul(&ff.c[a]).sub(&ff.c[a].mul(&wm)).add(&ff.c[a]);
        ff.u.derivative(a).first_difference(&rhs).or_else(|| {
            (0..n).find_map(|b| ff.c[b].derivative(a).first_difference(&ff.c[a].derivative(b)))
        })
    });
    out.push(indexed("dU", du));
    let indep = each(n, |a| first_entry(&ff.c[a], |_, _, p| !free_of_first(p)))
        .or_else(|| first_entry(&ff.u.sub(&PolyMatrix::identity(t, n).scale_by(&Poly::var(t, 0))), |_, _, p| !free_of_first(p)).map(|w| (n, w)));
    out.push(indexed("indep-t1", indep));
    let d = &ff.degrees;
    let degc = each(n, |a| {
        first_entry(&ff.c[a], |gm, b, p| {
            let want = d[0] as i64 + d[gm] as i64 - d[a] as i64 - d[b] as i64;
            !p.is_homogeneous_of(d, want)
        })
    });
    out.push(indexed("degree-C", degc));
    let detu = ff.u.det();
    let monic = match &detu {
        Ok(p) => p.degree_in(0) == n as u32 && p.lead_in(0).is_one(),
        Err(_) => false,
    };
    out.push(Check::new(
        "det-U",
        monic,
        match detu {
            Ok(p) if !monic => format!("det U = {p}"),
            Err(e) => format!("{e}"),
            _ => String::new(),
        },
    ));
    out
}

/// The matrices of the Coxeter–Shephard structure in the `t`-frame.
#[derive(Debug, Clone)]
pub struct CsFrameData {
    pub uinv: RatMatrix,
    pub b: Vec<RatMatrix>,
    pub h: RatMatrix,
    pub a: PolyMatrix,
    pub ainv: PolyMatrix,
    /// `S_α` from the closed formula in `A`, `W` and `B_α`.
    pub s: Vec<RatMatrix>,
    pub upsilon: Vec<PolyMatrix>,
    /// Unitriangular `X` over `t` with `∂/∂s^β = Σ_γ X^γ_β ∂/∂t^γ`.
    pub gauge: PolyMatrix,
    pub svars: Vars,
    /// `s^α` as polynomials in `t`.
    pub s_coords: Vec<Poly>,
    /// `t^α` as polynomials in `s`.
    pub s_inverse: Vec<Poly>,
    /// Structure constants of `∗` in the `s`-frame, over `s`.
    pub c_hat: Vec<PolyMatrix>,
}

pub fn frame_matrices(g: &GroupSpec, ff: &FlatFrame) -> Result<CsFrameData> {
    require_strict(g)?;
    let n = g.rank();
    let t = &ff.tvars;
    let u = ff.u.to_ratfn();
    let uinv = u.inverse()?;
    let b: Vec<RatMatrix> = ff.c.iter().map(|c| uinv.mul(&c.to_ratfn())).collect();
    let kappa = Rat::new(g.dn() as i64 - 1, g.d1() as i64);
    let h = RatMatrix::from_fn(t, n, n, |a, c| b[a][(n - 1, c)].scale(&kappa));
    let a = PolyMatrix::from_fn(t, n, n, |r, c| ff.c[r][(n - 1, c)].scale(&kappa));
    let (det, adj) = a.scaled_inverse()?;
    let dc = det
        .constant_value()
        .ok_or_else(|| Error::Precondition(format!("det A = {det} is not a nonzero constant")))?;
    let ainv = adj.scale(&dc.inv().ok_or(Error::Singular)?);
    let ar = a.to_ratfn();
    let air = ainv.to_ratfn();
    let wm = diag(t, &ff.w).to_ratfn();
    let id = RatMatrix::identity(t, n);
    let k = id.neg().sub(&wm).add(&air.mul(&wm).mul(&ar));
    let half = Rat::new(1, 2);
    let s: Vec<RatMatrix> = (0..n).map(|al| air.mul(&ar.derivative(al)).add(&k.mul(&b[al])).scale(&half)).collect();
    let upsilon: Vec<PolyMatrix> = (0..n)
        .map(|al| ainv.mul(&a.derivative(al)).scale(&half))
        .collect();
    let x = gauge_solve(&upsilon, &g.degrees)?;
    let y = unitriangular_inverse(&x);
    let s_coords = integrate_rows(&y, &g.degrees)?;
    let svars = Vars::indexed("s", n)?;
    let s_inverse = invert_triangular_change(&s_coords, &svars)?;
    let c_hat = change_frame(&ff.c, &x, &y)
        .iter()
        .map(|m| substitute_poly_matrix(m, &svars, &s_inverse))
        .collect();
    Ok(CsFrameData { uinv, b, h, a, ainv, s, upsilon, gauge: x, svars, s_coords, s_inverse, c_hat })
}

/// `S^γ_{αβ} = ½ Σ_δ H^{γδ}(∂_α H_{δβ} + ∂_β H_{δα} − ∂_δ H_{αβ})` with
/// `H⁻¹ = U A⁻¹`.
pub fn levi_civita_flat_frame(ff: &FlatFrame, cfd: &CsFrameData) -> Vec<RatMatrix> {
    let n = ff.c.len();
    let t = &ff.tvars;
    let hinv = ff.u.to_ratfn().mul(&cfd.ainv.to_ratfn());
    let dh: Vec<RatMatrix> = (0..n).map(|a| cfd.h.derivative(a)).collect();
    let half = Rat::new(1, 2);
    (0..n)
        .map(|a| {
            let m = RatMatrix::from_fn(t, n, n, |d, b| &(&dh[a][(d, b)] + &dh[b][(d, a)]) - &dh[d][(a, b)]);
            hinv.mul(&m).scale(&half)
        })
        .collect()
}

/// `B^cs_α = −S_1⁻¹ ∂_1 S_α`.
pub fn bcs(cfd: &CsFrameData) -> Result<Vec<RatMatrix>> {
    let s1inv = cfd.s[0].inverse()?;
    Ok(cfd.s.iter().map(|s| s1inv.mul(&s.derivative(0)).neg()).collect())
}

fn substitute_ratmatrix(m: &RatMatrix, vars: &Vars, images: &[Poly]) -> Result<RatMatrix> {
    m.substitute(vars, images)
}

pub struct CsContext<'a> {
    pub g: &'a GroupSpec,
    /// `⋄` in the `u`-frame.
    pub diamond: &'a [RatMatrix],
    /// The Saito structure dual to `(∇^cs, ⋄, e)`.
    pub cs_ss: &'a Saito,
}

pub fn cs_frame_checks(ctx: &CsContext<'_>, ff: &FlatFrame, cfd: &CsFrameData) -> Vec<Check> {
    let g = ctx.g;
    let n = g.rank();
    let t = &ff.tvars;
    let d = &ff.degrees;
    let mut out = Vec::new();
    let uvars = &g.vars;
    let pull = |m: &RatMatrix| substitute_ratmatrix(m, uvars, &ff.t_in_u);
    let fail = |id: &str, e: Error| Check::new(id, false, format!("{e}"));

    // H from B against h(∂_α, ∂_β) computed in u.
    let h_direct = pulled_hessian(&g.invariants[n - 1], &ff.frame_u);
    out.push(match pull(&cfd.h) {
        Ok(hu) => Check::from_witness("H-B", hu.first_difference(&h_direct)),
        Err(e) => fail("H-B", e),
    });
    let omega = (0..n).find_map(|gm| {
        let direct = pulled_hessian(&ff.t_in_u[gm], &ff.frame_u).neg();
        let coef = Rat::new(1 - d[gm] as i64, d[0] as i64);
        let formula = RatMatrix::from_fn(t, n, n, |a, b| cfd.b[a][(gm, b)].scale(&coef));
        match pull(&formula) {
            Ok(fu) => fu.first_difference(&direct).map(|w| (gm + 1, w.0, w.1)),
            Err(_) => Some((gm + 1, 0, 0)),
        }
    });
    out.push(Check::from_witness("omega", omega));

    let hu = cfd.h.mul(&ff.u.to_ratfn());
    out.push(Check::from_witness("A=HU", hu.first_difference(&cfd.a.to_ratfn())));

    let shape = first_entry(&cfd.a, |r, c, p| {
        let s = r + c + 2;
        if s < n + 1 {
            !p.is_zero()
        } else if s == n + 1 {
            p.constant_value().is_none_or(|v| v.is_zero())
        } else {
            !free_of_first(p)
        }
    })
    .or_else(|| first_entry(&cfd.a, |r, c, p| !p.is_homogeneous_of(d, d[0] as i64 + d[n - 1] as i64 - d[r] as i64 - d[c] as i64)));
    out.push(Check::from_witness("A-shape", shape));
    out.push(Check::from_witness("A-inverse-shape", first_entry(&cfd.ainv, |_, _, p| !free_of_first(p))));
    let wm = diag(t, &ff.w);
    let awa = cfd.ainv.mul(&wm).mul(&cfd.a);
    let tri = first_entry(&awa, |r, c, p| {
        if r > c {
            !p.is_zero()
        } else if r == c {
            p.constant_value() != Some(Rat::new(d[n - 1 - r] as i64, d[0] as i64))
        } else {
            !free_of_first(p)
        }
    });
    out.push(Check::from_witness("AWA", tri));
    let dada = each(n, |a| first_entry(&cfd.ainv.mul(&cfd.a.derivative(a)), |r, c, p| if r >= c { !p.is_zero() } else { !free_of_first(p) }));
    out.push(indexed("AdA", dada));

    let at = cfd.a.transpose();
    let mut sym = cfd.a.first_difference(&at).map(|w| (0, w));
    if sym.is_none() {
        sym = each(n, |a| cfd.a.mul(&ff.c[a]).first_difference(&ff.c[a].transpose().mul(&cfd.a))).map(|(a, w)| (a + 1, w));
    }
    let ar = cfd.a.to_ratfn();
    if sym.is_none() {
        sym = each(n, |a| ar.mul(&cfd.b[a]).first_difference(&cfd.b[a].transpose().mul(&ar))).map(|(a, w)| (n + a + 1, w));
    }
    if sym.is_none() {
        sym = cfd.a.mul(&ff.u).first_difference(&ff.u.transpose().mul(&cfd.a)).map(|w| (2 * n + 1, w));
    }
    out.push(Check::from_witness("A-symmetry", sym));

    let cr: Vec<RatMatrix> = ff.c.iter().map(PolyMatrix::to_ratfn).collect();
    let ur = ff.u.to_ratfn();
    let idb = each(n, |a| {
        (0..n).find_map(|b| {
            first_entry(&cfd.b[a].commutator(&cr[b]), |_, _, p| !p.is_zero())
                .or_else(|| first_entry(&cfd.b[a].commutator(&cfd.b[b]), |_, _, p| !p.is_zero()))
                .or_else(|| (0..n).find(|&k| cfd.b[a][(k, b)] != cfd.b[b][(k, a)]).map(|k| (k + 1, b + 1)))
        })
        .or_else(|| first_entry(&cfd.b[a].commutator(&ur), |_, _, p| !p.is_zero()))
    });
    out.push(indexed("id-B", idb));
    let db2 = each(n, |b| cfd.b[b].derivative(0).first_difference(&cfd.b[b].mul(&cfd.uinv).neg()));
    out.push(indexed("dB2", db2));

    let direct = levi_civita_flat_frame(ff, cfd);
    out.push(indexed("S-formula", each(n, |a| cfd.s[a].first_difference(&direct[a]))));
    let wr = diag(t, &ff.w).to_ratfn();
    let air = cfd.ainv.to_ratfn();
    let k = RatMatrix::identity(t, n).neg().sub(&wr).add(&air.mul(&wr).mul(&ar));
    let s1 = k.mul(&cfd.uinv).scale(&Rat::new(1, 2));
    out.push(Check::from_witness("S1", cfd.s[0].first_difference(&s1)));
    let kdiag = (0..n).find(|&m| k[(m, m)].constant_value() != Some(Rat::new(d[n - 1] as i64 - 2 * d[m] as i64, d[0] as i64)));
    out.push(Check::from_witness("S1-diagonal", kdiag.map(|m| m + 1)));

    out.push(match bcs(cfd) {
        Ok(bc) => indexed("Bcs", each(n, |a| bc[a].first_difference(&cfd.b[a]))),
        Err(e) => fail("Bcs", e),
    });
    // ⋄ from the u-frame, moved to the t-frame: F⁻¹ (Σ_i F^i_α ⋄_i) F.
    let fu = &ff.frame_u;
    let pushed = fu.inverse().map(|finv| {
        each(n, |a| {
            let mut acc = RatMatrix::zeros(uvars, n, n);
            for i in 0..n {
                if !fu[(i, a)].is_zero() {
                    acc = acc.add(&ctx.diamond[i].scale_by(&fu[(i, a)]));
                }
            }
            let bt = finv.mul(&acc).mul(fu);
            match pull(&cfd.b[a]) {
                Ok(ba) => bt.first_difference(&ba),
                Err(_) => Some((0, 0)),
            }
        })
    });
    out.push(match pushed {
        Ok(w) => indexed("diamond-u-to-t", w),
        Err(e) => fail("diamond-u-to-t", e),
    });

    let ups = each(n, |a| {
        let lhs = cfd.s[a].sub(&cfd.s[0].mul(&cr[a]));
        lhs.first_difference(&cfd.upsilon[a].to_ratfn()).or_else(|| {
            first_entry(&cfd.upsilon[a], |gm, b, p| {
                if gm >= b {
                    !p.is_zero()
                } else {
                    !p.is_homogeneous_of(d, d[gm] as i64 - d[a] as i64 - d[b] as i64)
                }
            })
        })
    });
    out.push(indexed("upsilon", ups));
    let upf = each(n, |a| {
        (0..n).find_map(|b| {
            let r = cfd.upsilon[b]
                .derivative(a)
                .sub(&cfd.upsilon[a].derivative(b))
                .add(&cfd.upsilon[a].commutator(&cfd.upsilon[b]));
            first_entry(&r, |_, _, p| !p.is_zero()).map(|w| (b + 1, w))
        })
    });
    out.push(indexed("upsilon-flat", upf));

    let x = &cfd.gauge;
    let xdeg = first_entry(x, |gm, b, p| {
        if gm > b {
            !p.is_zero()
        } else if gm == b {
            !p.is_one()
        } else {
            !p.is_homogeneous_of(d, d[gm] as i64 - d[b] as i64)
        }
    });
    out.push(Check::from_witness("X-unitriangular", xdeg));
    let snorm = (0..n).find(|&a| {
        let f = &cfd.s_coords[a] - &Poly::var(t, a);
        (0..=a).any(|v| f.involves(v))
    });
    out.push(Check::from_witness("s-normalization", snorm.map(|a| a + 1)));
    out.push(indexed("c-hat", each(n, |a| first_entry(&cfd.c_hat[a], |_, _, p| !free_of_first(p)))));

    // ∂/∂s^β in the u-frame must be parallel for the dual CS connection.
    let xu: Vec<Poly> = ff.t_in_u.clone();
    let xs = substitute_poly_matrix(x, uvars, &xu).to_ratfn();
    let fs = fu.mul(&xs);
    let cols: Vec<Vec<RatFn>> = (0..n).map(|b| fs.column(b)).collect();
    let sflat = (0..n).find_map(|a| {
        (0..n).find_map(|b| {
            covariant(&ctx.cs_ss.conn, &cols[a], &cols[b])
                .iter()
                .position(|c| !c.is_zero())
                .map(|k| (a + 1, b + 1, k + 1))
        })
    });
    out.push(Check::from_witness("cs-flat-s", sflat));
    out
}

/// Verdict on compatible flat metrics for the natural Saito structure.
#[derive(Debug, Clone)]
pub struct MetricVerdict {
    pub admits_compatible_metric: bool,
    /// `D = 1 − d_n/d_1`.
    pub charge: Rat,
    /// The metric `A` (any nonzero constant multiple is also compatible).
    pub metric: Option<PolyMatrix>,
    /// First entry of `A` breaking the anti-diagonal constant shape.
    pub witness: Option<(usize, usize)>,
}

pub fn classify_metric(g: &GroupSpec, cfd: &CsFrameData) -> MetricVerdict {
    let n = cfd.a.rows();
    let witness = first_entry(&cfd.a, |r, c, p| if r + c + 1 == n { !p.is_constant() } else { !p.is_zero() });
    let charge = &Rat::one() - &Rat::new(g.dn() as i64, g.d1() as i64);
    MetricVerdict {
        admits_compatible_metric: witness.is_none(),
        charge,
        metric: if witness.is_none() { Some(cfd.a.clone()) } else { None },
        witness,
    }
}
