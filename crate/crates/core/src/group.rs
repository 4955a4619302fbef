//! Reflection groups presented by basic invariants, the built-in catalog,
//! and degree-based classification.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::algebra::{Poly, PolyMatrix, Rat, Vars};
use crate::error::{Error, Result};

/// Catalog family of a [`GroupSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Cyclic group `Z_m` acting on the line.
    Zm,
    /// `G(m,1,n)`.
    Gm1n,
    /// `G(m,m,n)`.
    Gmmn,
    /// `A_k` on its reduced rank-`k` reflection representation.
    A,
    /// `B_n = G(2,1,n)`.
    B,
    /// `D_n = G(2,2,n)`.
    D,
    /// Dihedral `I_2(m) = G(m,m,2)`.
    I2,
    Custom,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Zm => "Zm",
            Family::Gm1n => "Gm1n",
            Family::Gmmn => "Gmmn",
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I2 => "I2",
            Family::Custom => "custom",
        }
    }
}

/// Diagonal action `u^i ↦ ζ^{c_i} u^i` by a primitive `m`-th root of unity: a
/// monomial is fixed iff `Σ c_i a_i ≡ 0 (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnity {
    pub modulus: u32,
    pub weights: Vec<i64>,
}

/// One generator of the group action, in a form that can be tested exactly.
#[derive(Debug, Clone)]
pub enum Generator {
    /// Linear substitution `u^i ↦ images[i]`.
    Substitution { label: String, images: Vec<Poly> },
    RootOfUnity { label: String, action: RootOfUnity },
}

impl Generator {
    pub fn label(&self) -> &str {
        match self {
            Generator::Substitution { label, .. } | Generator::RootOfUnity { label, .. } => label,
        }
    }

    pub fn fixes(&self, p: &Poly) -> bool {
        match self {
            Generator::Substitution { images, .. } => &p.substitute(images) == p,
            Generator::RootOfUnity { action, .. } => p.terms().iter().all(|(mono, _)| {
                let s: i64 = action.weights.iter().enumerate().map(|(i, c)| c * mono.exp(i) as i64).sum();
                s.rem_euclid(action.modulus as i64) == 0
            }),
        }
    }
}

/// A reflection group given by a set of basic invariants `x^1, …, x^n` in `u`.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub family: Family,
    pub m: Option<u32>,
    pub vars: Vars,
    pub invariants: Vec<Poly>,
    pub degrees: Vec<u32>,
    pub codegrees: Option<Vec<u32>>,
    /// Non-fatal findings from validation (for example tied degrees).
    pub warnings: Vec<String>,
}

impl GroupSpec {
    /// Validates and wraps a user-supplied invariant list.
    ///
    /// Every invariant must be homogeneous of positive degree, the degrees must
    /// be non-increasing, `declared` (if given) must match them, and the
    /// Jacobian determinant must be nonzero.
    pub fn custom(name: &str, vars: Vars, invariants: Vec<Poly>, declared: Option<Vec<u32>>) -> Result<Self> {
        let n = vars.len();
        if n == 0 {
            return Err(Error::InvalidGroup("rank must be positive".into()));
        }
        if invariants.len() != n {
            return Err(Error::InvalidGroup(format!("{} invariants for rank {}", invariants.len(), n)));
        }
        let ones = alloc::vec![1u32; n];
        let mut degrees = Vec::with_capacity(n);
        for (a, x) in invariants.iter().enumerate() {
            if !x.vars().same(&vars) {
                return Err(Error::VariableMismatch);
            }
            match x.homogeneous_degree(&ones) {
                Some(d) if d > 0 => degrees.push(d),
                Some(_) => return Err(Error::InvalidGroup(format!("invariant x{} is constant", a + 1))),
                None => return Err(Error::NotHomogeneous(format!("invariant x{} = {}", a + 1, x))),
            }
        }
        if let Some(d) = &declared {
            if d != &degrees {
                return Err(Error::InvalidGroup(format!("declared degrees {d:?} but invariants have degrees {degrees:?}")));
            }
        }
        if degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidGroup(format!("degrees {degrees:?} are not in descending order")));
        }
        let mut warnings = Vec::new();
        if degrees.windows(2).any(|w| w[0] == w[1]) {
            warnings.push(format!("degrees {degrees:?} are not strictly descending"));
        }
        let g = GroupSpec {
            name: name.to_string(),
            family: Family::Custom,
            m: None,
            vars,
            invariants,
            degrees,
            codegrees: None,
            warnings,
        };
        if g.jacobian_matrix().det()?.is_zero() {
            return Err(Error::InvalidGroup("invariants are algebraically dependent (Jacobian determinant is zero)".into()));
        }
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    pub fn d1(&self) -> u32 {
        self.degrees[0]
    }

    pub fn dn(&self) -> u32 {
        *self.degrees.last().unwrap()
    }

    pub fn degree_weights(&self) -> Vec<u32> {
        self.degrees.clone()
    }

    /// `J[α][i] = ∂x^α/∂u^i`.
    pub fn jacobian_matrix(&self) -> PolyMatrix {
        let n = self.rank();
        PolyMatrix::from_fn(&self.vars, n, n, |a, i| self.invariants[a].derivative(i))
    }

    /// Generators of the group action, when known.
    pub fn generators(&self) -> Vec<Generator> {
        let n = self.rank();
        let v = &self.vars;
        let var = |i: usize| Poly::var(v, i);
        let swap = |a: usize, b: usize| {
            let images = (0..n).map(|i| if i == a { var(b) } else if i == b { var(a) } else { var(i) }).collect();
            Generator::Substitution { label: format!("swap u{} u{}", a + 1, b + 1), images }
        };
        let mut gens = Vec::new();
        match self.family {
            Family::Zm => {
                gens.push(Generator::RootOfUnity {
                    label: "scale u1".into(),
                    action: RootOfUnity { modulus: self.m.unwrap(), weights: alloc::vec![1] },
                });
            }
            Family::Gm1n | Family::B => {
                for i in 0..n - 1 {
                    gens.push(swap(i, i + 1));
                }
                let mut w = alloc::vec![0i64; n];
                w[0] = 1;
                gens.push(Generator::RootOfUnity {
                    label: "scale u1".into(),
                    action: RootOfUnity { modulus: self.m.unwrap(), weights: w },
                });
            }
            Family::Gmmn | Family::D | Family::I2 => {
                for i in 0..n - 1 {
                    gens.push(swap(i, i + 1));
                }
                let mut w = alloc::vec![0i64; n];
                w[0] = 1;
                w[1] = -1;
                gens.push(Generator::RootOfUnity {
                    label: "scale u1, inverse scale u2".into(),
                    action: RootOfUnity { modulus: self.m.unwrap(), weights: w },
                });
            }
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    gens.push(swap(i, i + 1));
                }
                // Transposition of u_n with the eliminated coordinate -(u1 + ... + un).
                let mut images: Vec<Poly> = (0..n).map(var).collect();
                let mut s = Poly::zero(v);
                for i in 0..n {
                    s = &s + &var(i);
                }
                images[n - 1] = -s;
                gens.push(Generator::Substitution { label: format!("swap u{n} with -(u1+...+u{n})"), images });
            }
            Family::Custom => {}
        }
        gens
    }

    /// Per generator and invariant, whether the invariant is fixed.
    pub fn invariance_report(&self) -> Vec<(String, usize, bool)> {
        let mut out = Vec::new();
        for g in self.generators() {
            for (a, x) in self.invariants.iter().enumerate() {
                out.push((g.label().to_string(), a, g.fixes(x)));
            }
        }
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Elementary symmetric polynomials `e_0, …, e_k` of `xs`.
pub fn elementary_symmetric(xs: &[Poly], vars: &Vars) -> Vec<Poly> {
    let mut e = alloc::vec![Poly::zero(vars); xs.len() + 1];
    e[0] = Poly::one(vars);
    for (done, x) in xs.iter().enumerate() {
        for k in (1..=done + 1).rev() {
            let t = x * &e[k - 1];
            e[k] = &e[k] + &t;
        }
    }
    e
}

fn out_of_range(msg: String) -> Error {
    Error::OutOfRange(msg)
}

/// Builds a catalog group. `m` and `n` are used as the family requires;
/// for [`Family::A`] the parameter `n` is the rank.
pub fn make_group(family: Family, m: Option<u32>, n: Option<u32>) -> Result<GroupSpec> {
    let need = |x: Option<u32>, what: &str| x.ok_or_else(|| out_of_range(format!("{} requires {what}", family.tag())));
    match family {
        Family::Zm => {
            let m = need(m, "m")?;
            if m < 2 {
                return Err(out_of_range(format!("Z_m needs m >= 2, got {m}")));
            }
            let vars = Vars::indexed("u", 1)?;
            let x = Poly::var(&vars, 0).pow(m);
            Ok(catalog(format!("Z{m}"), family, Some(m), vars, alloc::vec![x], alloc::vec![0]))
        }
        Family::Gm1n | Family::B => {
            let (m, n) = if family == Family::B { (2, need(n, "n")?) } else { (need(m, "m")?, need(n, "n")?) };
            if family == Family::Gm1n && m < 3 {
                return Err(out_of_range(format!("G(m,1,n) needs m >= 3, got {m}")));
            }
            if n < 2 {
                return Err(out_of_range(format!("rank must be at least 2, got {n}")));
            }
            let vars = Vars::indexed("u", n as usize)?;
            let pw: Vec<Poly> = (0..n as usize).map(|i| Poly::var(&vars, i).pow(m)).collect();
            let e = elementary_symmetric(&pw, &vars);
            let inv = (1..=n as usize).map(|a| e[n as usize + 1 - a].clone()).collect();
            let co = (0..n).map(|a| a * m).collect();
            let name = if family == Family::B { format!("B{n}") } else { format!("G{m}_1_{n}") };
            Ok(catalog(name, family, Some(m), vars, inv, co))
        }
        Family::Gmmn | Family::D | Family::I2 => {
            let (m, n) = match family {
                Family::D => (2, need(n, "n")?),
                Family::I2 => (need(m, "m")?, 2),
                _ => (need(m, "m")?, need(n, "n")?),
            };
            match family {
                Family::D if n < 4 => return Err(out_of_range(format!("D_n needs n >= 4, got {n}"))),
                Family::I2 if m < 5 => return Err(out_of_range(format!("I_2(m) needs m >= 5, got {m}"))),
                Family::Gmmn if m < 3 || n < 3 => {
                    return Err(out_of_range(format!("G(m,m,n) needs m, n >= 3, got m = {m}, n = {n}")))
                }
                _ => {}
            }
            let nn = n as usize;
            let vars = Vars::indexed("u", nn)?;
            let pw: Vec<Poly> = (0..nn).map(|i| Poly::var(&vars, i).pow(m)).collect();
            let e = elementary_symmetric(&pw, &vars);
            let mut prod = Poly::one(&vars);
            for i in 0..nn {
                prod = &prod * &Poly::var(&vars, i);
            }
            // u1...un takes the place of e_n(u^m); the stable sort keeps it ahead of tied e_k.
            let mut inv: Vec<Poly> = core::iter::once(prod).chain((1..nn).rev().map(|k| e[k].clone())).collect();
            let ones = alloc::vec![1u32; nn];
            inv.sort_by_key(|p| core::cmp::Reverse(p.homogeneous_degree(&ones).unwrap()));
            let mut co: Vec<u32> = (0..n - 1).map(|a| a * m).collect();
            co.push((n - 1) * m - n);
            co.sort_unstable();
            let name = match family {
                Family::D => format!("D{n}"),
                Family::I2 => format!("I2:{m}"),
                _ => format!("G{m}_{m}_{n}"),
            };
            Ok(catalog(name, family, Some(m), vars, inv, co))
        }
        Family::A => {
            let k = need(n, "n")? as usize;
            if k < 1 {
                return Err(out_of_range("A_k needs k >= 1".into()));
            }
            let vars = Vars::indexed("u", k)?;
            let mut xs: Vec<Poly> = (0..k).map(|i| Poly::var(&vars, i)).collect();
            let mut s = Poly::zero(&vars);
            for x in &xs {
                s = &s + x;
            }
            xs.push(-s);
            let e = elementary_symmetric(&xs, &vars);
            let inv = (2..=k + 1).rev().map(|j| e[j].clone()).collect();
            let co = (0..k as u32).collect();
            let mut g = catalog(format!("A{k}"), family, None, vars, inv, co);
            g.m = Some(2);
            Ok(g)
        }
        Family::Custom => Err(Error::InvalidGroup("custom groups are built with GroupSpec::custom".into())),
    }
}

fn catalog(name: String, family: Family, m: Option<u32>, vars: Vars, invariants: Vec<Poly>, co: Vec<u32>) -> GroupSpec {
    let ones = alloc::vec![1u32; vars.len()];
    let degrees: Vec<u32> = invariants.iter().map(|x| x.homogeneous_degree(&ones).unwrap()).collect();
    let mut warnings = Vec::new();
    if degrees.windows(2).any(|w| w[0] == w[1]) {
        warnings.push(format!("degrees {degrees:?} are not strictly descending"));
    }
    GroupSpec { name, family, m, vars, invariants, degrees, codegrees: Some(co), warnings }
}

/// Parses a catalog name: `Zm:<m>`, `G<m>_1_<n>`, `G<m>_<m>_<n>`, `A<n>`,
/// `B<n>`, `D<n>`, `I2:<m>`. `Z<m>` is accepted as a shorthand for `Zm:<m>`.
pub fn parse_group_name(name: &str) -> Result<GroupSpec> {
    let bad = || Error::InvalidGroup(format!("unknown group name `{name}`"));
    let num = |s: &str| s.parse::<u32>().map_err(|_| bad());
    if let Some(rest) = name.strip_prefix("Zm:") {
        return make_group(Family::Zm, Some(num(rest)?), None);
    }
    if let Some(rest) = name.strip_prefix("I2:") {
        return make_group(Family::I2, Some(num(rest)?), None);
    }
    if let Some(rest) = name.strip_prefix('G') {
        let parts: Vec<&str> = rest.split('_').collect();
        if let [k] = parts[..] {
            if matches!(k.parse::<u32>(), Ok(4..=32)) {
                return Err(Error::InvalidGroup(format!(
                    "exceptional group `{name}` is not supported: its basic invariants need algebraic-number coefficients"
                )));
            }
        }
        if parts.len() != 3 {
            return Err(bad());
        }
        let (m, p, n) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        return if p == 1 {
            make_group(Family::Gm1n, Some(m), Some(n))
        } else if p == m {
            make_group(Family::Gmmn, Some(m), Some(n))
        } else {
            Err(Error::InvalidGroup(format!("G({m},{p},{n}) is not in the catalog")))
        };
    }
    let (fam, rest) = match name.chars().next() {
        Some('Z') => (Family::Zm, &name[1..]),
        Some('A') => (Family::A, &name[1..]),
        Some('B') => (Family::B, &name[1..]),
        Some('D') => (Family::D, &name[1..]),
        _ => return Err(bad()),
    };
    let k = num(rest)?;
    if fam == Family::Zm {
        make_group(fam, Some(k), None)
    } else {
        make_group(fam, None, Some(k))
    }
}

/// Degree-based classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// `d_α + d*_α = d_1` for descending degrees against ascending codegrees;
    /// `None` without codegrees.
    pub is_duality: Option<bool>,
    /// `d_α + d_{n+1-α} = d_1 + d_n` for all `α`.
    pub is_cs: bool,
    /// `is_cs` and `d_n = 2`.
    pub is_coxeter: bool,
    pub degrees_strict: bool,
}

pub fn classify(g: &GroupSpec) -> Classification {
    classify_degrees(&g.degrees, g.codegrees.as_deref())
}

pub fn classify_degrees(d: &[u32], codegrees: Option<&[u32]>) -> Classification {
    let n = d.len();
    let is_cs = n > 0 && (0..n).all(|a| d[a] + d[n - 1 - a] == d[0] + d[n - 1]);
    let is_duality = codegrees.map(|c| {
        let mut c = c.to_vec();
        c.sort_unstable();
        c.len() == n && (0..n).all(|a| d[a] + c[a] == d[0])
    });
    Classification {
        is_duality,
        is_cs,
        is_coxeter: is_cs && d.last() == Some(&2),
        degrees_strict: d.windows(2).all(|w| w[0] > w[1]),
    }
}

/// `cmp(d_α + d_β, d_1 + d_n)` for all pairs, row `α`, column `β`.
pub fn degree_inequality_table(d: &[u32]) -> Vec<Vec<Ordering>> {
    let n = d.len();
    let s = d[0] + d[n - 1];
    (0..n).map(|a| (0..n).map(|b| (d[a] + d[b]).cmp(&s)).collect()).collect()
}

/// Charge `1 − d_n/d_1` of the Frobenius structures.
pub fn charge(g: &GroupSpec) -> Rat {
    &Rat::one() - &Rat::new(g.dn() as i64, g.d1() as i64)
}
