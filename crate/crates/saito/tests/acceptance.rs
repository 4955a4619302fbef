//! Acceptance suite: one line per criterion, `PASS` or `FAIL`.
//!
//! Every expected value is rebuilt here from closed forms or from
//! elementary recomputation, never read back from the engine.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use saito::cli;
use saito::commands::CATALOG;
use saito::core::algebra::{Monomial, Poly, PolyMatrix, Rat, RatFn};
use saito::core::flat::{self, CsContext, CsFrameData, FlatFrame};
use saito::core::geometry::{self, EFieldData, HessianMetric, JacobianData};
use saito::core::gm1n;
use saito::core::group::{classify, parse_group_name, GroupSpec};
use saito::core::saito::{self as ss, AlmostSaito, Check, Saito};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn all_pass(label: &str, checks: &[Check]) -> Result<(), String> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(format!("{label}: {} failed {}", c.id, c.detail)),
        None => Ok(()),
    }
}

fn pass_ids(label: &str, checks: &[Check], ids: &[&str]) -> Result<(), String> {
    for id in ids {
        match checks.iter().find(|c| c.id == *id) {
            Some(c) if c.passed => {}
            Some(c) => return Err(format!("{label}: {id} failed {}", c.detail)),
            None => return Err(format!("{label}: no check {id}")),
        }
    }
    Ok(())
}

fn e<T>(r: saito::core::Result<T>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn ratio(num: Poly, den: Poly) -> RatFn {
    RatFn::new(num, den).unwrap()
}

/// Degrees read straight off the invariants.
fn degrees_of(g: &GroupSpec) -> Vec<i64> {
    g.invariants.iter().map(|p| p.total_degree().unwrap() as i64).collect()
}

struct Stages {
    g: GroupSpec,
    jd: JacobianData,
    ef: EFieldData,
    natural: AlmostSaito,
    natural_ss: Saito,
}

impl Stages {
    fn new(name: &str) -> Result<Self, String> {
        let g = e(parse_group_name(name))?;
        let jd = e(geometry::jacobian(&g))?;
        let ef = e(geometry::e_field(&g, &jd))?;
        let natural = e(ss::natural_ass(&g, &ef))?;
        let natural_ss = e(ss::dualize_ass_to_ss(&natural))?;
        Ok(Stages { g, jd, ef, natural, natural_ss })
    }

    fn cs(&self) -> Result<(HessianMetric, AlmostSaito, Saito), String> {
        let hm = e(geometry::hessian_metric(&self.g))?;
        let cs = e(ss::cs_ass(&self.g, &hm, &self.ef))?;
        let cs_ss = e(ss::dualize_ass_to_ss(&cs))?;
        Ok((hm, cs, cs_ss))
    }

    fn frames(&self) -> Result<(FlatFrame, CsFrameData), String> {
        let ff = e(flat::find_flat_coordinates(&self.g, &self.jd, &self.natural_ss))?;
        let cfd = e(flat::frame_matrices(&self.g, &ff))?;
        Ok((ff, cfd))
    }
}

fn c1() -> Outcome {
    for m in [2u32, 3, 5] {
        let st = Stages::new(&format!("Z{m}"))?;
        let v = &st.g.vars;
        let u = Poly::var(v, 0);
        let mi = m as i64;
        let (hm, _, _) = st.cs()?;
        let e1 = ratio(Poly::one(v), u.pow(m - 1).scale(&Rat::from_int(mi)));
        ensure!(st.ef.e[0] == e1, "Z{m}: e^1 = {}", st.ef.e[0]);
        let b = ratio(Poly::from_int(v, mi), u.clone());
        ensure!(st.natural.mult[0][(0, 0)] == b, "Z{m}: B = {}", st.natural.mult[0][(0, 0)]);
        let h = u.pow(m - 2).scale(&Rat::from_int(mi * (mi - 1)));
        ensure!(hm.h[(0, 0)] == h, "Z{m}: H = {}", hm.h[(0, 0)]);
        let s = ratio(Poly::from_int(v, mi - 2), u.scale(&Rat::from_int(2)));
        ensure!(hm.s[0][(0, 0)] == s, "Z{m}: S = {}", hm.s[0][(0, 0)]);
    }
    Ok("e, B, H, S match for m = 2, 3, 5".into())
}

/// Four-case closed form of `B̃^k_ij` with `v_i = u_i^m`.
fn b_closed(g: &GroupSpec, m: u32, i: usize, j: usize, k: usize) -> RatFn {
    let vars = &g.vars;
    let n = vars.len();
    let u = |a: usize| Poly::var(vars, a);
    let vdiff = |a: usize, b: usize| &u(a).pow(m) - &u(b).pow(m);
    let mr = Rat::from_int(m as i64);
    if i == j && k == i {
        let mut acc = ratio(Poly::from_int(vars, m as i64), u(i));
        for l in (0..n).filter(|&l| l != i) {
            acc = &acc + &ratio(u(i).pow(m - 1).scale(&mr), vdiff(i, l));
        }
        acc
    } else if i == j {
        ratio((&u(i).pow(m - 2) * &u(k)).scale(&-mr.clone()), vdiff(i, k))
    } else if k == i {
        ratio(u(j).pow(m - 1).scale(&-mr.clone()), vdiff(i, j))
    } else if k == j {
        ratio(u(i).pow(m - 1).scale(&-mr.clone()), vdiff(j, i))
    } else {
        RatFn::zero(vars)
    }
}

fn c2() -> Outcome {
    let mut times = Vec::new();
    for (m, n) in [(3u32, 2usize), (3, 3), (4, 2)] {
        let t0 = Instant::now();
        let st = Stages::new(&format!("G{m}_1_{n}"))?;
        let (hm, _, _) = st.cs()?;
        let vars = &st.g.vars;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let want = b_closed(&st.g, m, i, j, k);
                    let got = &st.natural.mult[i][(k, j)];
                    ensure!(*got == want, "G({m},1,{n}) B^{}_{}{} = {got}, closed form {want}", k + 1, i + 1, j + 1);
                    let s_want = if i == j && j == k {
                        ratio(Poly::from_int(vars, m as i64 - 2), Poly::var(vars, i).scale(&Rat::from_int(2)))
                    } else {
                        RatFn::zero(vars)
                    };
                    let s_got = &hm.s[i][(k, j)];
                    ensure!(*s_got == s_want, "G({m},1,{n}) S^{}_{}{} = {s_got}", k + 1, i + 1, j + 1);
                }
            }
        }
        let dt = t0.elapsed();
        ensure!(dt < Duration::from_secs(30), "G({m},1,{n}) took {dt:?}");
        times.push(format!("({m},{n}) {:.2}s", dt.as_secs_f64()));
    }
    Ok(format!("all entries match; {}", times.join(", ")))
}

const RANK_LE_3: &[&str] = &["A2", "A3", "B2", "B3", "I2:5", "Z5", "G3_1_2", "G3_1_3", "G3_3_3"];

fn c3() -> Outcome {
    let t0 = Instant::now();
    for name in RANK_LE_3 {
        let st = Stages::new(name)?;
        let d = degrees_of(&st.g);
        ensure!(st.natural.r == Rat::new(1, d[0]), "{name}: r = {}", st.natural.r);
        all_pass(name, &ss::verify_ass(&st.natural))?;
    }
    let dt = t0.elapsed();
    ensure!(dt < Duration::from_secs(120), "took {dt:?}");
    Ok(format!("{} groups, {:.2}s", RANK_LE_3.len(), dt.as_secs_f64()))
}

fn c4() -> Outcome {
    let mut notes = Vec::new();
    for name in RANK_LE_3 {
        let st = Stages::new(name)?;
        let d = degrees_of(&st.g);
        let n = d.len();
        if !classify(&st.g).is_cs {
            notes.push(format!("{name} is outside the CS class by degrees {d:?}; built directly"));
        }
        let (hm, cs, cs_ss) = st.cs()?;
        let r = Rat::new(d[n - 1], 2 * d[0]);
        let charge = &Rat::one() - &Rat::new(d[n - 1], d[0]);
        ensure!(r == (&Rat::one() - &charge) * Rat::new(1, 2), "{name}: r and D disagree");
        ensure!(cs.r == r, "{name}: r = {}", cs.r);
        if let Some(w) = geometry::flatness_check(&hm.s) {
            return Err(format!("{name}: curvature {w:?}"));
        }
        if let Some(w) = geometry::ass3_check(&hm.s, &geometry::euler_field(&st.g).e, &r) {
            return Err(format!("{name}: ass3 {w:?}"));
        }
        all_pass(name, &ss::verify_ass(&cs))?;
        all_pass(name, &ss::verify_almost_frobenius(&cs, &hm.h.to_ratfn()))?;
        let eta = ss::dual_metric(&hm.h.to_ratfn(), &cs_ss);
        all_pass(name, &ss::verify_frobenius(&cs_ss, &eta, &charge))?;
        let wrong = &charge + &Rat::new(1, 2);
        let f3 = ss::verify_frobenius(&cs_ss, &eta, &wrong);
        ensure!(f3.iter().any(|c| c.id == "f3" && !c.passed), "{name}: f3 also passes with D = {wrong}");
    }
    notes.insert(0, format!("{} groups", RANK_LE_3.len()));
    Ok(notes.join("; "))
}

fn c5() -> Outcome {
    let mut count = 0;
    let mut u_only = Vec::new();
    let mut slowest = ("", Duration::ZERO);
    for name in CATALOG {
        let t0 = Instant::now();
        let st = Stages::new(name)?;
        let class = classify(&st.g);
        if !class.is_cs {
            continue;
        }
        let (_, cs, cs_ss) = st.cs()?;
        if let Some(w) = ss::compare_multiplications(&st.natural.mult, &cs.mult) {
            return Err(format!("{name}: u-frame multiplications differ at {w:?}"));
        }
        if class.degrees_strict {
            let (ff, cfd) = st.frames()?;
            let ctx = CsContext { g: &st.g, diamond: &cs.mult, cs_ss: &cs_ss };
            pass_ids(name, &flat::cs_frame_checks(&ctx, &ff, &cfd), &["Bcs", "diamond-u-to-t"])?;
        } else {
            u_only.push(*name);
        }
        count += 1;
        if t0.elapsed() > slowest.1 {
            slowest = (name, t0.elapsed());
        }
    }
    let mut s = format!("{count} CS groups agree, slowest {} {:.2}s", slowest.0, slowest.1.as_secs_f64());
    if !u_only.is_empty() {
        s.push_str(&format!("; t-frame route skipped for tied degrees: {}", u_only.join(", ")));
    }
    Ok(s)
}

fn cli_compare(group: &str, expect: &str) -> (i32, Value) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["saito", "compare", "--group", group, "--expect", expect], &mut out, &mut err);
    let v = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, v)
}

fn c6() -> Outcome {
    for g in ["A2", "A3", "B2", "B3", "D4", "I2:5", "Z5"] {
        let (code, v) = cli_compare(g, "same");
        ensure!(code == 0, "{g}: exit {code}");
        ensure!(v["data"]["connections_equal"] == true, "{g}: connections differ");
        let (code, _) = cli_compare(g, "differ");
        ensure!(code == 1, "{g} --expect differ: exit {code}");
    }
    let mut witnesses = Vec::new();
    for g in ["G3_1_2", "G3_1_3"] {
        let (code, v) = cli_compare(g, "same");
        ensure!(code == 1, "{g}: exit {code}");
        let w = &v["data"]["witness"];
        ensure!(w.is_string(), "{g}: no witness");
        witnesses.push(format!("{g} at {}", w.as_str().unwrap()));
        let (code, _) = cli_compare(g, "differ");
        ensure!(code == 0, "{g} --expect differ: exit {code}");
    }
    Ok(format!("holds for 7 Coxeter/Z groups; fails for {}", witnesses.join(", ")))
}

/// Nonzero terms of `p` all have weighted degree `want`.
fn terms_of_degree(p: &Poly, w: &[u32], want: i64) -> bool {
    p.terms().iter().all(|(m, _)| m.weighted_degree(w) as i64 == want)
}

fn commutator_free(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    a.mul(b) == b.mul(a)
}

fn c7() -> Outcome {
    for name in ["B2", "G3_1_2"] {
        let st = Stages::new(name)?;
        let (_, cs, cs_ss) = st.cs()?;
        let (ff, cfd) = st.frames()?;
        all_pass(name, &flat::flat_frame_checks(&st.g, &st.natural_ss, &ff))?;
        let ctx = CsContext { g: &st.g, diamond: &cs.mult, cs_ss: &cs_ss };
        all_pass(name, &flat::cs_frame_checks(&ctx, &ff, &cfd))?;

        let d = degrees_of(&st.g);
        let w: Vec<u32> = d.iter().map(|&x| x as u32).collect();
        let n = d.len();
        let t = &ff.tvars;
        ensure!(ff.c[0] == PolyMatrix::identity(t, n), "{name}: C_1 is not the identity");
        for a in 0..n {
            for b in 0..n {
                ensure!(commutator_free(&ff.c[a], &ff.c[b]), "{name}: [C_{}, C_{}] != 0", a + 1, b + 1);
                for gm in 0..n {
                    let want = d[0] + d[gm] - d[a] - d[b];
                    let p = &ff.c[a][(gm, b)];
                    ensure!(terms_of_degree(p, &w, want), "{name}: C^{}_{}{} = {p} not of degree {want}", gm + 1, a + 1, b + 1);
                }
            }
        }
        let mut u = PolyMatrix::from_fn(t, n, n, |_, _| Poly::zero(t));
        for a in 0..n {
            let wa = Rat::new(d[a], d[0]);
            ensure!(ff.w[a] == wa, "{name}: w_{} = {}", a + 1, ff.w[a]);
            let ta = Poly::var(t, a).scale(&wa);
            u = u.add(&PolyMatrix::from_fn(t, n, n, |i, j| &ta * &ff.c[a][(i, j)]));
        }
        ensure!(u == ff.u, "{name}: U differs from the sum of w t C");
        let det = e(gm1n::cofactor_det(&ff.u))?;
        let mut top = vec![0u32; n];
        top[0] = n as u32;
        let lead = det.coefficient(&Monomial::from_exponents(&top));
        ensure!(det.degree_in(0) == n as u32 && lead == Rat::one(), "{name}: det U = {det}");
        let hu = cfd.h.mul(&ff.u.to_ratfn());
        ensure!(hu.first_difference(&cfd.a.to_ratfn()).is_none(), "{name}: A != H U");
        let k = Rat::new(d[n - 1] - 1, d[0]);
        let cn = PolyMatrix::from_fn(t, n, n, |a, b| ff.c[a][(n - 1, b)].scale(&k));
        ensure!(cfd.a == cn, "{name}: A != ((d_n - 1)/d_1) C^n");
    }
    Ok("B2 and G3_1_2: all frame checks and oracles agree".into())
}

fn is_unitriangular_graded(x: &PolyMatrix, w: &[u32]) -> Option<(usize, usize)> {
    let n = x.rows();
    for g in 0..n {
        for b in 0..n {
            let p = &x[(g, b)];
            let ok = if g == b {
                p.is_one()
            } else {
                let want = w[g] as i64 - w[b] as i64;
                (want > 0 || p.is_zero()) && terms_of_degree(p, w, want)
            };
            if !ok {
                return Some((g + 1, b + 1));
            }
        }
    }
    None
}

fn c8() -> Outcome {
    let mut out = Vec::new();
    for (name, trivial) in [("B2", true), ("G3_1_2", false)] {
        let st = Stages::new(name)?;
        let (_, cs, cs_ss) = st.cs()?;
        let (ff, cfd) = st.frames()?;
        let ctx = CsContext { g: &st.g, diamond: &cs.mult, cs_ss: &cs_ss };
        let checks = flat::cs_frame_checks(&ctx, &ff, &cfd);
        pass_ids(name, &checks, &["X-unitriangular", "s-normalization", "c-hat", "cs-flat-s"])?;
        let w: Vec<u32> = degrees_of(&st.g).iter().map(|&x| x as u32).collect();
        ensure!(w.windows(2).all(|p| p[0] > p[1]), "{name}: degrees not strictly descending");
        let x = &cfd.gauge;
        if let Some(at) = is_unitriangular_graded(x, &w) {
            return Err(format!("{name}: X entry {at:?} breaks the graded unitriangular shape"));
        }
        let id = PolyMatrix::identity(x.vars(), x.rows());
        ensure!((*x == id) == trivial, "{name}: X = I is {}", *x == id);
        for (a, m) in cfd.c_hat.iter().enumerate() {
            if let Some(p) = m.entries().iter().find(|p| p.involves(0)) {
                return Err(format!("{name}: c_hat_{} has {p} depending on s1", a + 1));
            }
        }
        out.push(format!("{name} X {}", if trivial { "= I" } else { "!= I" }));
    }
    Ok(format!("{}; off-diagonal degrees positive, so no constant freedom", out.join(", ")))
}

fn t_frame_saito(ff: &FlatFrame) -> Saito {
    let n = ff.c.len();
    let t = &ff.tvars;
    Saito {
        conn: ss::zero_connection(t, n),
        mult: ff.c.iter().map(|m| m.to_ratfn()).collect(),
        unit: ss::basis(t, n, 0),
        euler: (0..n).map(|a| RatFn::from_poly(Poly::var(t, a).scale(&ff.w[a]))).collect(),
    }
}

fn c9() -> Outcome {
    for name in ["B2", "A2", "Z5"] {
        let st = Stages::new(name)?;
        let (ff, cfd) = st.frames()?;
        let d = degrees_of(&st.g);
        let n = d.len();
        let v = flat::classify_metric(&st.g, &cfd);
        let charge = &Rat::one() - &Rat::new(d[n - 1], d[0]);
        ensure!(v.admits_compatible_metric, "{name}: no metric, witness {:?}", v.witness);
        ensure!(v.charge == charge, "{name}: D = {}", v.charge);
        let a = v.metric.ok_or(format!("{name}: metric missing"))?;
        for i in 0..n {
            for j in 0..n {
                let p = &a[(i, j)];
                let ok = if i + j + 1 == n { p.is_constant() && !p.is_zero() } else { p.is_zero() };
                ensure!(ok, "{name}: metric entry ({}, {}) = {p}", i + 1, j + 1);
            }
        }
        all_pass(name, &ss::verify_frobenius(&t_frame_saito(&ff), &a.to_ratfn(), &charge))?;
    }
    let st = Stages::new("G3_1_2")?;
    let (_, cfd) = st.frames()?;
    let v = flat::classify_metric(&st.g, &cfd);
    ensure!(!v.admits_compatible_metric, "G3_1_2 admits a metric");
    let (i, j) = v.witness.ok_or("G3_1_2: no witness")?;
    let p = &cfd.a[(i - 1, j - 1)];
    ensure!(!p.is_constant(), "G3_1_2: witness entry {p} is constant");
    Ok(format!("B2, A2, Z5 admit anti-diagonal metrics; G3_1_2 fails at A({i},{j}) = {p}"))
}

fn c10() -> Outcome {
    let t0 = Instant::now();
    let mut count = 0;
    for n in 1..=5 {
        for c in e(gm1n::elem_sym_suite(n))? {
            ensure!(c.matches, "n = {n}: {} closed {} oracle {}", c.label, c.closed, c.oracle);
            count += 1;
        }
        ensure!(e(gm1n::closed_inverse_product_check(n))?.is_none(), "n = {n}: closed inverse is not an inverse");
        ensure!(e(gm1n::elementary_recursion_check(n))?.is_none(), "n = {n}: recursion fails");
    }
    for (m, n) in [(3u32, 2usize), (3, 3), (4, 2), (4, 3)] {
        for c in e(gm1n::gm1n_suite(m, n))? {
            ensure!(c.matches, "({m},{n}): {} closed {} oracle {}", c.label, c.closed, c.oracle);
            count += 1;
        }
    }
    let dt = t0.elapsed();
    ensure!(dt < Duration::from_secs(60), "took {dt:?}");
    Ok(format!("{count} entries, {:.2}s", dt.as_secs_f64()))
}

fn c11() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md");
    let readme = std::fs::read_to_string(path).map_err(|x| format!("{path}: {x}"))?;
    ensure!(readme.contains("G4") && readme.contains("G32"), "README does not name G4-G32");
    ensure!(readme.to_lowercase().contains("out of scope"), "README has no out-of-scope note");
    for k in 4..=32 {
        let name = format!("G{k}");
        ensure!(!CATALOG.contains(&name.as_str()), "{name} is in the catalog");
        match parse_group_name(&name) {
            Err(x) if x.to_string().contains("exceptional") => {}
            Err(x) => return Err(format!("{name}: unexpected error {x}")),
            Ok(_) => return Err(format!("{name} was accepted")),
        }
    }
    Ok("G4-G32 documented as out of scope and rejected by name".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("C1", "Z_m example values", c1),
        ("C2", "G(m,1,n) closed forms", c2),
        ("C3", "natural almost-Saito structures", c3),
        ("C4", "Hessian connection and almost-Frobenius checks", c4),
        ("C5", "natural and CS multiplications agree", c5),
        ("C6", "connection difference decision", c6),
        ("C7", "flat-frame matrix identities", c7),
        ("C8", "unitriangular gauge and s-frame", c8),
        ("C9", "compatible metric classifier", c9),
        ("C10", "elementary-symmetric closed forms", c10),
        ("C11", "exceptional groups excluded", c11),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {title}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
