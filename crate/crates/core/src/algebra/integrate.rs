//! Potentials of weighted-homogeneous gradient fields.

use alloc::format;
use alloc::vec::Vec;

use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Finds `F` with `∂F/∂y^a = comps[a]` for all `a`, where every component is
/// weighted homogeneous and `F` has weighted degree `degree`.
///
/// The components must satisfy the cross-derivative conditions; the result is
/// recovered through the Euler relation and then checked against every
/// component. A zero `degree` forces a zero gradient and returns `F = 0`.
pub fn euler_integrate(comps: &[Poly], weights: &[u32], degree: i64) -> Result<Poly> {
    let Some(first) = comps.first() else {
        return Err(Error::Dimension("empty gradient".into()));
    };
    let vars = first.vars().clone();
    let n = vars.len();
    if comps.len() != n || weights.len() != n {
        return Err(Error::Dimension(format!("{} components for {} variables", comps.len(), n)));
    }
    for (a, c) in comps.iter().enumerate() {
        if !c.is_homogeneous_of(weights, degree - weights[a] as i64) {
            return Err(Error::NotHomogeneous(format!("gradient component {} = {}", a + 1, c)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if comps[a].derivative(b) != comps[b].derivative(a) {
                return Err(Error::Incompatible(format!("components {} and {}", a + 1, b + 1)));
            }
        }
    }
    if degree <= 0 {
        if comps.iter().all(Poly::is_zero) {
            return Ok(Poly::zero(&vars));
        }
        return Err(Error::Incompatible(format!("nonzero gradient of a degree {degree} potential")));
    }
    let mut f = Poly::zero(&vars);
    for (a, c) in comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let y = Poly::var(&vars, a).scale(&Rat::from_int(weights[a] as i64));
        f = &f + &(&y * c);
    }
    let f = f.scale(&Rat::new(1, degree));
    let ok = comps.iter().enumerate().all(|(a, c)| &f.derivative(a) == c);
    if !ok {
        return Err(Error::Consistency("potential does not reproduce its gradient".into()));
    }
    Ok(f)
}

/// Gradient of `f`.
pub fn gradient(f: &Poly) -> Vec<Poly> {
    (0..f.nvars()).map(|a| f.derivative(a)).collect()
}
