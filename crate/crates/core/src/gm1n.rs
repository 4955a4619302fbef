//! Closed forms for `G(m,1,n)`: the matrix `𝔼(v)` of elementary symmetric
//! polynomials with its determinant, minors and inverse, and the entries of
//! `∂u/∂x` including the unit field `e`. Each closed form has a brute-force
//! oracle next to it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Poly, PolyMatrix, Rat, RatFn, Vars};
use crate::error::{Error, Result};
use crate::geometry;
use crate::group::{elementary_symmetric, make_group, Family};

/// `𝔼(v)` with `𝔼[α][j] = e_{α−1}(v without v^j)`.
#[derive(Debug, Clone)]
pub struct ElemSymMatrix {
    pub n: usize,
    pub entries: PolyMatrix,
}

fn v_vars(n: usize) -> Result<Vars> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    Vars::indexed("v", n)
}

fn check_index(what: &str, k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!("{what} = {k} outside 1..={n}")));
    }
    Ok(())
}

fn check_gm1n(m: u32, n: usize) -> Result<()> {
    if m < 3 || n < 2 {
        return Err(Error::OutOfRange(format!("closed forms for G(m,1,n) need m >= 3 and n >= 2, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// Elementary symmetric polynomials of the variables with the given
/// (0-based) indices removed.
fn elementary_without(vars: &Vars, xs: &[Poly], removed: &[usize]) -> Vec<Poly> {
    let kept: Vec<Poly> = xs.iter().enumerate().filter(|(i, _)| !removed.contains(i)).map(|(_, x)| x.clone()).collect();
    elementary_symmetric(&kept, vars)
}

pub fn elem_sym_matrix(n: usize) -> Result<ElemSymMatrix> {
    let vars = v_vars(n)?;
    let xs: Vec<Poly> = (0..n).map(|i| Poly::var(&vars, i)).collect();
    let cols: Vec<Vec<Poly>> = (0..n).map(|j| elementary_without(&vars, &xs, &[j])).collect();
    let entries = PolyMatrix::from_fn(&vars, n, n, |a, j| cols[j][a].clone());
    Ok(ElemSymMatrix { n, entries })
}

/// Vandermonde-type product `∏_{k<l} (x_k − x_l)` over the indices not in `skip`.
fn difference_product(vars: &Vars, xs: &[Poly], skip: Option<usize>) -> Poly {
    let mut acc = Poly::one(vars);
    for k in 0..xs.len() {
        for l in k + 1..xs.len() {
            if skip == Some(k) || skip == Some(l) {
                continue;
            }
            acc = &acc * &(&xs[k] - &xs[l]);
        }
    }
    acc
}

/// `∏_{l≠i} (x_i − x_l)`.
fn row_product(vars: &Vars, xs: &[Poly], i: usize) -> Poly {
    let mut acc = Poly::one(vars);
    for (l, x) in xs.iter().enumerate() {
        if l != i {
            acc = &acc * &(&xs[i] - x);
        }
    }
    acc
}

pub fn closed_det(n: usize) -> Result<Poly> {
    let vars = v_vars(n)?;
    let xs: Vec<Poly> = (0..n).map(|i| Poly::var(&vars, i)).collect();
    Ok(difference_product(&vars, &xs, None))
}

/// Determinant of `𝔼(v)` with row `alpha` and column `j` deleted (1-based).
pub fn closed_minor(n: usize, alpha: usize, j: usize) -> Result<Poly> {
    let vars = v_vars(n)?;
    check_index("alpha", alpha, n)?;
    check_index("j", j, n)?;
    let xs: Vec<Poly> = (0..n).map(|i| Poly::var(&vars, i)).collect();
    let power = xs[j - 1].pow((n - alpha) as u32);
    Ok(&power * &difference_product(&vars, &xs, Some(j - 1)))
}

/// Entry `(i, alpha)` of `𝔼(v)^{-1}` (1-based).
pub fn closed_inverse_entry(n: usize, i: usize, alpha: usize) -> Result<RatFn> {
    let vars = v_vars(n)?;
    check_index("i", i, n)?;
    check_index("alpha", alpha, n)?;
    let xs: Vec<Poly> = (0..n).map(|k| Poly::var(&vars, k)).collect();
    let sign = if alpha % 2 == 1 { 1 } else { -1 };
    let num = xs[i - 1].pow((n - alpha) as u32).scale(&Rat::from_int(sign));
    RatFn::new(num, row_product(&vars, &xs, i - 1))
}

fn u_setup(m: u32, n: usize) -> Result<(Vars, Vec<Poly>, Vec<Poly>)> {
    let vars = Vars::indexed("u", n)?;
    let us: Vec<Poly> = (0..n).map(|i| Poly::var(&vars, i)).collect();
    let vs: Vec<Poly> = us.iter().map(|u| u.pow(m)).collect();
    Ok((vars, us, vs))
}

/// `∂u^i/∂x^α` for `G(m,1,n)` with `x^α = e_{n+1−α}(u^m)` (1-based).
pub fn closed_du_dx(m: u32, n: usize, i: usize, alpha: usize) -> Result<RatFn> {
    check_gm1n(m, n)?;
    check_index("i", i, n)?;
    check_index("alpha", alpha, n)?;
    let (vars, us, vs) = u_setup(m, n)?;
    let sign = if (n + alpha).is_multiple_of(2) { 1 } else { -1 };
    let exponent = m as i64 * (alpha as i64 - 2) + 1;
    let coeff = Rat::new(sign, m as i64);
    let base = RatFn::from_poly(us[i - 1].clone()).pow(exponent as i32).scale(&coeff);
    let denom = RatFn::new(Poly::one(&vars), row_product(&vars, &vs, i - 1))?;
    Ok(&base * &denom)
}

/// Components of `e = ∂/∂x^1` for `G(m,1,n)`.
pub fn closed_e_field(m: u32, n: usize) -> Result<Vec<RatFn>> {
    check_gm1n(m, n)?;
    let (vars, us, vs) = u_setup(m, n)?;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    (0..n)
        .map(|k| {
            let den = &us[k].pow(m - 1).scale(&Rat::from_int(m as i64)) * &row_product(&vars, &vs, k);
            RatFn::new(Poly::from_int(&vars, sign), den)
        })
        .collect()
}

/// Laplace expansion along the first row; the empty matrix has determinant 1.
pub fn cofactor_det(a: &PolyMatrix) -> Result<Poly> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("determinant of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(laplace(a, &rows, &cols))
}

fn laplace(a: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Poly {
    let Some((&r, rest)) = rows.split_first() else {
        return Poly::one(a.vars());
    };
    let mut acc = Poly::zero(a.vars());
    for (k, &c) in cols.iter().enumerate() {
        let entry = &a[(r, c)];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let t = entry * &laplace(a, rest, &sub_cols);
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Determinant of `a` with row `r` and column `c` deleted (0-based), by cofactors.
pub fn cofactor_minor(a: &PolyMatrix, r: usize, c: usize) -> Poly {
    let rows: Vec<usize> = (0..a.rows()).filter(|&x| x != r).collect();
    let cols: Vec<usize> = (0..a.cols()).filter(|&x| x != c).collect();
    laplace(a, &rows, &cols)
}

/// Inverse as adjugate over the cofactor determinant.
pub fn adjugate_inverse(a: &PolyMatrix) -> Result<Vec<Vec<RatFn>>> {
    let det = cofactor_det(a)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let n = a.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|al| {
                    let minor = cofactor_minor(a, al, i);
                    let signed = if (i + al) % 2 == 0 { minor } else { -minor };
                    RatFn::new(signed, det.clone())
                })
                .collect()
        })
        .collect()
}

/// One closed form against its oracle.
#[derive(Debug, Clone)]
pub struct EntryComparison {
    pub label: String,
    pub closed: RatFn,
    pub oracle: RatFn,
    pub matches: bool,
}

impl EntryComparison {
    fn new(label: String, closed: RatFn, oracle: RatFn) -> Self {
        let matches = closed.equals(&oracle);
        EntryComparison { label, closed, oracle, matches }
    }
}

/// Determinant, every minor and the full inverse of `𝔼(v)` against the
/// cofactor and adjugate oracles.
pub fn elem_sym_suite(n: usize) -> Result<Vec<EntryComparison>> {
    let e = elem_sym_matrix(n)?;
    let a = &e.entries;
    let mut out = Vec::new();
    out.push(EntryComparison::new(
        format!("det E({n})"),
        RatFn::from_poly(closed_det(n)?),
        RatFn::from_poly(cofactor_det(a)?),
    ));
    for al in 1..=n {
        for j in 1..=n {
            out.push(EntryComparison::new(
                format!("minor E({n})[{al},{j}]"),
                RatFn::from_poly(closed_minor(n, al, j)?),
                RatFn::from_poly(cofactor_minor(a, al - 1, j - 1)),
            ));
        }
    }
    let inv = adjugate_inverse(a)?;
    for i in 1..=n {
        for al in 1..=n {
            out.push(EntryComparison::new(
                format!("inverse E({n})[{i},{al}]"),
                closed_inverse_entry(n, i, al)?,
                inv[i - 1][al - 1].clone(),
            ));
        }
    }
    Ok(out)
}

/// `𝔼(v) · (closed inverse) = I`; returns the first failing `(row, col)`.
pub fn closed_inverse_product_check(n: usize) -> Result<Option<(usize, usize)>> {
    let e = elem_sym_matrix(n)?;
    let vars = e.entries.vars().clone();
    for r in 0..n {
        for c in 0..n {
            let mut acc = RatFn::zero(&vars);
            for k in 0..n {
                let entry = RatFn::from_poly(e.entries[(r, k)].clone());
                acc = &acc + &(&entry * &closed_inverse_entry(n, k + 1, c + 1)?);
            }
            let want = if r == c { RatFn::one(&vars) } else { RatFn::zero(&vars) };
            if !acc.equals(&want) {
                return Ok(Some((r + 1, c + 1)));
            }
        }
    }
    Ok(None)
}

/// Checks `e_α(v_S) = v^l e_{α−1}(v_{S∪l}) + e_α(v_{S∪l})` for every
/// removed set `S` of size at most two and every `l ∉ S`. Returns the first
/// failing `(S, l, α)` with 1-based indices.
pub fn elementary_recursion_check(n: usize) -> Result<Option<(Vec<usize>, usize, usize)>> {
    let vars = v_vars(n)?;
    let xs: Vec<Poly> = (0..n).map(|i| Poly::var(&vars, i)).collect();
    let mut sets: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    sets.extend((0..n).map(|i| alloc::vec![i]));
    for i in 0..n {
        for j in i + 1..n {
            sets.push(alloc::vec![i, j]);
        }
    }
    for s in sets {
        let es = elementary_without(&vars, &xs, &s);
        for l in (0..n).filter(|l| !s.contains(l)) {
            let mut sl = s.clone();
            sl.push(l);
            let esl = elementary_without(&vars, &xs, &sl);
            for al in 1..es.len() {
                let rhs = &(&xs[l] * &esl[al - 1]) + esl.get(al).unwrap_or(&Poly::zero(&vars));
                if es[al] != rhs {
                    return Ok(Some((s.iter().map(|x| x + 1).collect(), l + 1, al)));
                }
            }
        }
    }
    Ok(None)
}

/// `𝔼[α][j]` does not involve `v^j`; returns the first offending `(α, j)`.
pub fn column_independence_check(e: &ElemSymMatrix) -> Option<(usize, usize)> {
    for al in 0..e.n {
        for j in 0..e.n {
            if e.entries[(al, j)].involves(j) {
                return Some((al + 1, j + 1));
            }
        }
    }
    None
}

/// The `∂u/∂x` closed form and `e` against the generic `J^{-1}` route for
/// `G(m,1,n)`, plus the identity `Σ_i ∂x^β/∂u^i · ∂u^i/∂x^α = δ^β_α`.
pub fn gm1n_suite(m: u32, n: usize) -> Result<Vec<EntryComparison>> {
    check_gm1n(m, n)?;
    let g = make_group(Family::Gm1n, Some(m), Some(n as u32))?;
    let jd = geometry::jacobian(&g)?;
    let ef = geometry::e_field(&g, &jd)?;
    let vars = g.vars.clone();
    let mut out = Vec::new();
    let mut closed = Vec::with_capacity(n);
    for i in 1..=n {
        let row: Vec<RatFn> = (1..=n).map(|al| closed_du_dx(m, n, i, al)).collect::<Result<_>>()?;
        for (al, entry) in row.iter().enumerate() {
            out.push(EntryComparison::new(
                format!("du{i}/dx{}", al + 1),
                entry.clone(),
                jd.jinv[(i - 1, al)].clone(),
            ));
        }
        closed.push(row);
    }
    for (k, (c, o)) in closed_e_field(m, n)?.into_iter().zip(ef.e).enumerate() {
        out.push(EntryComparison::new(format!("e{}", k + 1), c, o));
    }
    for b in 0..n {
        for al in 0..n {
            let mut acc = RatFn::zero(&vars);
            for (i, row) in closed.iter().enumerate() {
                acc = &acc + &row[al].mul_poly(&jd.j[(b, i)]);
            }
            let want = if b == al { RatFn::one(&vars) } else { RatFn::zero(&vars) };
            out.push(EntryComparison::new(format!("sum_i dx{}/du_i du_i/dx{}", b + 1, al + 1), acc, want));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn small_closed_forms() {
        assert_eq!(closed_det(2).unwrap().to_string(), "v1 - v2");
        assert_eq!(closed_minor(2, 1, 1).unwrap().to_string(), "v1");
        assert_eq!(closed_inverse_entry(1, 1, 1).unwrap().to_string(), "1");
        let vars = Vars::indexed("v", 2).unwrap();
        let v1 = Poly::var(&vars, 0);
        let d = &v1 - &Poly::var(&vars, 1);
        assert!(closed_inverse_entry(2, 1, 1).unwrap().equals(&RatFn::new(v1, d.clone()).unwrap()));
        assert!(closed_inverse_entry(2, 1, 2).unwrap().equals(&RatFn::new(Poly::from_int(&vars, -1), d).unwrap()));
    }

    #[test]
    fn cofactor_of_empty_matrix_is_one() {
        let vars = Vars::indexed("v", 1).unwrap();
        assert!(cofactor_det(&PolyMatrix::zeros(&vars, 0, 0)).unwrap().is_one());
    }

    #[test]
    fn out_of_range_indices() {
        assert!(closed_minor(3, 0, 1).is_err());
        assert!(closed_inverse_entry(3, 1, 4).is_err());
        assert!(closed_e_field(2, 2).is_err());
    }
}
