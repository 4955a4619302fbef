//! The pipeline behind each command, producing a [`Report`].

use std::path::PathBuf;

use saito_core::algebra::{Poly, RatFn, RatMatrix};
use saito_core::flat::{
    classify_metric, cs_frame_checks, find_flat_coordinates, flat_frame_checks, frame_matrices, CsContext, CsFrameData,
    FlatFrame,
};
use saito_core::geometry::{self, EFieldData, HessianMetric, JacobianData};
use saito_core::gm1n;
use saito_core::group::{self, classify, degree_inequality_table, parse_group_name, GroupSpec};
use saito_core::saito::{self as ss, AlmostSaito, Check, Saito};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::report::{self, Report};
use crate::specfile::load_group_spec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Catalog,
    Geometry,
    Natural,
    Cs,
    Compare,
    Flat,
    Classify,
    Verify,
    Appendix,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Catalog => "catalog",
            Command::Geometry => "geometry",
            Command::Natural => "natural",
            Command::Cs => "cs",
            Command::Compare => "compare",
            Command::Flat => "flat",
            Command::Classify => "classify",
            Command::Verify => "verify",
            Command::Appendix => "appendix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Catalog(String),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Expect {
    #[default]
    Same,
    Differ,
}

/// Axiom suites accepted by `verify --axioms`.
pub const AXIOM_SETS: &[&str] = &["ass-natural", "ss-natural", "ass-cs", "ss-cs", "af-cs", "frobenius"];

/// Groups listed by `catalog` without `--group`.
pub const CATALOG: &[&str] =
    &["Z2", "Z3", "Z5", "A2", "A3", "B2", "B3", "D4", "I2:5", "G3_1_2", "G3_1_3", "G3_3_3", "G4_1_2", "G4_1_3"];

pub const DEFAULT_MAX_DEGREE: u32 = 200;

#[derive(Debug, Clone)]
pub struct CommandConfig {
    pub command: Command,
    pub group: Option<GroupSource>,
    pub axioms: Option<Vec<String>>,
    pub expect: Expect,
    pub max_degree: u32,
    pub m: Option<u32>,
    pub n: Option<u32>,
}

impl CommandConfig {
    pub fn new(command: Command) -> Self {
        CommandConfig { command, group: None, axioms: None, expect: Expect::Same, max_degree: DEFAULT_MAX_DEGREE, m: None, n: None }
    }

    pub fn with_group(mut self, name: &str) -> Self {
        self.group = Some(GroupSource::Catalog(name.into()));
        self
    }
}

/// Total-degree limit applied to every intermediate result at stage boundaries.
#[derive(Debug, Clone, Copy)]
pub struct Guard {
    pub limit: u32,
}

fn poly_degree(p: &Poly) -> u32 {
    p.total_degree().unwrap_or(0)
}

fn ratfn_degree(r: &RatFn) -> u32 {
    poly_degree(r.numer()).max(poly_degree(r.denom()))
}

impl Guard {
    fn check(&self, stage: &str, degree: u32) -> Result<()> {
        if degree > self.limit {
            return Err(Error::Guard { stage: stage.into(), degree, limit: self.limit });
        }
        Ok(())
    }

    fn polys<'a>(&self, stage: &str, ps: impl IntoIterator<Item = &'a Poly>) -> Result<()> {
        self.check(stage, ps.into_iter().map(poly_degree).max().unwrap_or(0))
    }

    fn ratfns<'a>(&self, stage: &str, rs: impl IntoIterator<Item = &'a RatFn>) -> Result<()> {
        self.check(stage, rs.into_iter().map(ratfn_degree).max().unwrap_or(0))
    }

    fn tensor(&self, stage: &str, ms: &[RatMatrix]) -> Result<()> {
        self.ratfns(stage, ms.iter().flat_map(|m| m.entries()))
    }
}

pub fn load_group(src: &GroupSource) -> Result<GroupSpec> {
    match src {
        GroupSource::Catalog(name) => Ok(parse_group_name(name)?),
        GroupSource::File(path) => load_group_spec(path),
    }
}

fn require_group(cfg: &CommandConfig) -> Result<GroupSpec> {
    match &cfg.group {
        Some(src) => load_group(src),
        None => Err(Error::Usage(format!("`{}` needs --group or --spec", cfg.command.name()))),
    }
}

fn require_cs(g: &GroupSpec) -> Result<()> {
    if !classify(g).is_cs {
        return Err(saito_core::Error::Precondition(format!(
            "{} is not a Coxeter or Shephard group: degrees {:?} violate d_a + d_(n+1-a) = d_1 + d_n",
            g.name, g.degrees
        ))
        .into());
    }
    Ok(())
}

/// Lazily computed stages of the pipeline for one group.
struct Pipeline<'a> {
    g: &'a GroupSpec,
    guard: Guard,
    jd: Option<JacobianData>,
    ef: Option<EFieldData>,
    natural: Option<AlmostSaito>,
    natural_ss: Option<Saito>,
    hm: Option<HessianMetric>,
    cs: Option<AlmostSaito>,
    cs_ss: Option<Saito>,
    ff: Option<FlatFrame>,
    cfd: Option<CsFrameData>,
}

impl<'a> Pipeline<'a> {
    fn new(g: &'a GroupSpec, guard: Guard) -> Result<Self> {
        guard.polys("input", &g.invariants)?;
        Ok(Pipeline { g, guard, jd: None, ef: None, natural: None, natural_ss: None, hm: None, cs: None, cs_ss: None, ff: None, cfd: None })
    }

    fn jd(&mut self) -> Result<&JacobianData> {
        if self.jd.is_none() {
            let jd = geometry::jacobian(self.g)?;
            self.guard.ratfns("jacobian", jd.jinv.entries())?;
            self.jd = Some(jd);
        }
        Ok(self.jd.as_ref().unwrap())
    }

    fn ef(&mut self) -> Result<&EFieldData> {
        if self.ef.is_none() {
            self.jd()?;
            let ef = geometry::e_field(self.g, self.jd.as_ref().unwrap())?;
            self.guard.ratfns("e-field", ef.q.entries())?;
            self.ef = Some(ef);
        }
        Ok(self.ef.as_ref().unwrap())
    }

    fn natural(&mut self) -> Result<&AlmostSaito> {
        if self.natural.is_none() {
            self.ef()?;
            let a = ss::natural_ass(self.g, self.ef.as_ref().unwrap())?;
            self.guard.tensor("natural", &a.mult)?;
            self.natural = Some(a);
        }
        Ok(self.natural.as_ref().unwrap())
    }

    fn natural_ss(&mut self) -> Result<&Saito> {
        if self.natural_ss.is_none() {
            self.natural()?;
            let s = ss::dualize_ass_to_ss(self.natural.as_ref().unwrap())?;
            self.guard.tensor("natural-dual", &s.conn)?;
            self.natural_ss = Some(s);
        }
        Ok(self.natural_ss.as_ref().unwrap())
    }

    fn hm(&mut self) -> Result<&HessianMetric> {
        if self.hm.is_none() {
            require_cs(self.g)?;
            let hm = geometry::hessian_metric(self.g)?;
            self.guard.tensor("hessian", &hm.s)?;
            self.hm = Some(hm);
        }
        Ok(self.hm.as_ref().unwrap())
    }

    fn cs(&mut self) -> Result<&AlmostSaito> {
        if self.cs.is_none() {
            self.hm()?;
            self.ef()?;
            let a = ss::cs_ass(self.g, self.hm.as_ref().unwrap(), self.ef.as_ref().unwrap())?;
            self.guard.tensor("cs", &a.mult)?;
            self.cs = Some(a);
        }
        Ok(self.cs.as_ref().unwrap())
    }

    fn cs_ss(&mut self) -> Result<&Saito> {
        if self.cs_ss.is_none() {
            self.cs()?;
            let s = ss::dualize_ass_to_ss(self.cs.as_ref().unwrap())?;
            self.guard.tensor("cs-dual", &s.conn)?;
            self.cs_ss = Some(s);
        }
        Ok(self.cs_ss.as_ref().unwrap())
    }

    fn ff(&mut self) -> Result<&FlatFrame> {
        if self.ff.is_none() {
            self.natural_ss()?;
            let ff = find_flat_coordinates(self.g, self.jd.as_ref().unwrap(), self.natural_ss.as_ref().unwrap())?;
            self.guard.polys("flat", ff.c.iter().flat_map(|m| m.entries()).chain(&ff.t_in_u))?;
            self.ff = Some(ff);
        }
        Ok(self.ff.as_ref().unwrap())
    }

    fn cfd(&mut self) -> Result<&CsFrameData> {
        if self.cfd.is_none() {
            require_cs(self.g)?;
            self.ff()?;
            let cfd = frame_matrices(self.g, self.ff.as_ref().unwrap())?;
            self.guard.polys("frame", cfd.a.entries().iter().chain(cfd.c_hat.iter().flat_map(|m| m.entries())))?;
            self.cfd = Some(cfd);
        }
        Ok(self.cfd.as_ref().unwrap())
    }

    fn cs_frame_checks(&mut self) -> Result<Vec<Check>> {
        self.cs_ss()?;
        self.cfd()?;
        let ctx = CsContext {
            g: self.g,
            diamond: &self.cs.as_ref().unwrap().mult,
            cs_ss: self.cs_ss.as_ref().unwrap(),
        };
        Ok(cs_frame_checks(&ctx, self.ff.as_ref().unwrap(), self.cfd.as_ref().unwrap()))
    }

    /// The natural Saito structure in its flat frame `t`.
    fn t_frame_saito(&mut self) -> Result<Saito> {
        let ff = self.ff()?;
        let n = ff.c.len();
        let t = &ff.tvars;
        let euler = (0..n).map(|a| RatFn::from_poly(Poly::var(t, a).scale(&ff.w[a]))).collect();
        Ok(Saito {
            conn: ss::zero_connection(t, n),
            mult: ff.c.iter().map(|m| m.to_ratfn()).collect(),
            unit: ss::basis(t, n, 0),
            euler,
        })
    }
}

fn classification_json(g: &GroupSpec) -> Value {
    let c = classify(g);
    json!({
        "degrees": g.degrees,
        "codegrees": g.codegrees,
        "family": g.family.tag(),
        "is_cs": c.is_cs,
        "is_coxeter": c.is_coxeter,
        "is_duality": c.is_duality,
        "degrees_strict": c.degrees_strict,
        "charge": group::charge(g).to_string(),
    })
}

fn degree_table_json(g: &GroupSpec) -> Value {
    let rows: Vec<Value> = degree_inequality_table(&g.degrees)
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|o| {
                        Value::String(
                            match o {
                                std::cmp::Ordering::Less => "<",
                                std::cmp::Ordering::Equal => "=",
                                std::cmp::Ordering::Greater => ">",
                            }
                            .into(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn invariance_checks(g: &GroupSpec) -> Vec<Check> {
    let mut out: Vec<Check> = g
        .invariance_report()
        .into_iter()
        .map(|(label, a, ok)| {
            let detail = if ok { String::new() } else { format!("x{} is not fixed by {label}", a + 1) };
            Check::new(&format!("invariant x{} under {label}", a + 1), ok, detail)
        })
        .collect();
    out.push(Check::new("euler-degree", geometry::euler_degree_check(g), String::new()));
    out
}

fn group_entry(g: &GroupSpec) -> Value {
    let mut v = classification_json(g);
    v["invariants"] = report::strings(&g.invariants);
    v["warnings"] = json!(g.warnings);
    v
}

fn run_catalog(cfg: &CommandConfig) -> Result<Report> {
    if let Some(src) = &cfg.group {
        let g = load_group(src)?;
        let mut r = Report::new(&g.name, "catalog");
        r.checks(&invariance_checks(&g));
        r.insert("group", group_entry(&g));
        r.insert("degree_table", degree_table_json(&g));
        r.insert("generators", Value::Array(g.generators().iter().map(|x| Value::String(x.label().into())).collect()));
        return Ok(r);
    }
    let mut r = Report::new("catalog", "catalog");
    let mut groups = Map::new();
    for name in CATALOG {
        let g = parse_group_name(name)?;
        r.checks_prefixed(name, &invariance_checks(&g));
        groups.insert(name.to_string(), group_entry(&g));
    }
    r.insert("groups", Value::Object(groups));
    Ok(r)
}

fn run_geometry(g: &GroupSpec, p: &mut Pipeline<'_>) -> Result<Report> {
    let mut r = Report::new(&g.name, "geometry");
    r.check(&Check::new("euler-degree", geometry::euler_degree_check(g), String::new()));
    let jd = p.jd()?.clone();
    let n = g.rank();
    let prod = jd.j.to_ratfn().mul(&jd.jinv);
    let id = RatMatrix::identity(&g.vars, n);
    r.check(&Check::from_witness("jacobian-inverse", prod.first_difference(&id)));
    r.insert("detJ", jd.det_j.to_string());
    r.insert("J", report::matrix(&jd.j));
    let ef = p.ef()?.clone();
    r.insert("e", report::vector(&ef.e));
    r.insert("Q", report::matrix(&ef.q));
    r.insert("detQ", ef.det_q.to_string());
    r.insert("E", report::vector(&geometry::euler_field(g).e));
    match geometry::hessian_metric(g) {
        Ok(hm) => {
            r.check(&Check::from_witness("hessian-torsion-free", geometry::torsion_check(&hm.s)));
            r.insert("Htilde", report::matrix(&hm.h));
            r.insert("Stilde", report::tensor(&hm.s));
        }
        Err(saito_core::Error::Precondition(msg)) => r.insert("hessian", msg),
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn ass_data(r: &mut Report, prefix: &str, a: &AlmostSaito) {
    r.insert(&format!("{prefix}multiplication"), report::tensor(&a.mult));
    r.insert(&format!("{prefix}connection"), report::tensor(&a.conn));
    r.insert(&format!("{prefix}unit"), report::vector(&a.unit));
    r.insert(&format!("{prefix}e"), report::vector(&a.e));
    r.insert(&format!("{prefix}r"), a.r.to_string());
}

fn run_natural(g: &GroupSpec, p: &mut Pipeline<'_>) -> Result<Report> {
    let mut r = Report::new(&g.name, "natural");
    let a = p.natural()?.clone();
    r.checks(&ss::verify_ass(&a));
    let s = p.natural_ss()?.clone();
    r.checks_prefixed("ss", &ss::verify_ss(&s));
    r.insert("Btilde", report::tensor(&a.mult));
    r.insert("e", report::vector(&a.e));
    r.insert("unit", report::vector(&a.unit));
    r.insert("r", a.r.to_string());
    r.insert("C", report::tensor(&s.mult));
    r.insert("Gamma", report::tensor(&s.conn));
    Ok(r)
}

fn run_cs(g: &GroupSpec, p: &mut Pipeline<'_>) -> Result<Report> {
    let mut r = Report::new(&g.name, "cs");
    let hm = p.hm()?.clone();
    let a = p.cs()?.clone();
    r.checks(&ss::verify_ass(&a));
    r.checks(&ss::verify_almost_frobenius(&a, &hm.h.to_ratfn()));
    let s = p.cs_ss()?.clone();
    r.checks_prefixed("ss", &ss::verify_ss(&s));
    r.insert("Htilde", report::matrix(&hm.h));
    r.insert("Stilde", report::tensor(&hm.s));
    ass_data(&mut r, "", &a);
    r.insert("charge", group::charge(g).to_string());
    Ok(r)
}

fn run_compare(g: &GroupSpec, p: &mut Pipeline<'_>, expect: Expect) -> Result<Report> {
    let mut r = Report::new(&g.name, "compare");
    let natural = p.natural()?.mult.clone();
    let cs = p.cs()?.mult.clone();
    let s = p.hm()?.s.clone();
    let c = ss::compare_structures(g, &natural, &cs, &s);
    r.check(&Check::from_witness("multiplications-equal", c.multiplication_witness));
    let difference = match expect {
        Expect::Same => Check::from_witness("difference", c.witness),
        Expect::Differ => Check::new(
            "difference-fails",
            !c.connections_equal,
            if c.connections_equal { "the connections satisfy the difference relation".into() } else { String::new() },
        ),
    };
    r.check(&difference);
    r.insert("multiplications_equal", c.multiplications_equal);
    r.insert("connections_equal", c.connections_equal);
    r.insert("witness", report::witness(&c.witness));
    r.insert("multiplication_witness", report::witness(&c.multiplication_witness));
    r.insert("factor", c.factor.to_string());
    r.insert("expect", if expect == Expect::Same { "same" } else { "differ" });
    Ok(r)
}

fn flat_data(r: &mut Report, ff: &FlatFrame) {
    r.insert("t", report::strings(&ff.t_coords));
    r.insert("x_in_t", report::strings(&ff.inverse_change));
    r.insert("t_in_u", report::strings(&ff.t_in_u));
    r.insert("X", report::matrix(&ff.gauge));
    r.insert("C", report::tensor(&ff.c));
    r.insert("U", report::matrix(&ff.u));
}

fn run_flat(g: &GroupSpec, p: &mut Pipeline<'_>) -> Result<Report> {
    let mut r = Report::new(&g.name, "flat");
    let s = p.natural_ss()?.clone();
    let ff = p.ff()?.clone();
    r.checks(&flat_frame_checks(g, &s, &ff));
    flat_data(&mut r, &ff);
    if classify(g).is_cs {
        let checks = p.cs_frame_checks()?;
        r.checks(&checks);
        let cfd = p.cfd()?;
        r.insert("A", report::matrix(&cfd.a));
        r.insert("S", report::tensor(&cfd.s));
        r.insert("Xcs", report::matrix(&cfd.gauge));
        r.insert("s", report::strings(&cfd.s_coords));
        r.insert("c_hat", report::tensor(&cfd.c_hat));
    }
    Ok(r)
}

fn frobenius_checks(p: &mut Pipeline<'_>) -> Result<(Vec<Check>, Value)> {
    let g = p.g;
    let verdict = classify_metric(g, p.cfd()?);
    let mut checks = Vec::new();
    if let Some(eta) = &verdict.metric {
        let t = p.t_frame_saito()?;
        checks = ss::verify_frobenius(&t, &eta.to_ratfn(), &verdict.charge);
    }
    let data = json!({
        "admits_compatible_metric": verdict.admits_compatible_metric,
        "charge": verdict.charge.to_string(),
        "metric": verdict.metric.as_ref().map(report::matrix),
        "witness": report::witness(&verdict.witness),
        "A": report::matrix(&p.cfd()?.a),
    });
    Ok((checks, data))
}

fn run_classify(g: &GroupSpec, p: &mut Pipeline<'_>) -> Result<Report> {
    let mut r = Report::new(&g.name, "classify");
    r.insert("classification", classification_json(g));
    r.insert("degree_table", degree_table_json(g));
    if classify(g).is_cs {
        let (checks, data) = frobenius_checks(p)?;
        r.checks_prefixed("frobenius", &checks);
        r.insert("metric", data);
    } else {
        r.insert("metric", "not applicable: the degrees do not satisfy the Coxeter-Shephard condition");
    }
    Ok(r)
}

fn run_verify(g: &GroupSpec, p: &mut Pipeline<'_>, axioms: &Option<Vec<String>>) -> Result<Report> {
    let is_cs = classify(g).is_cs;
    let sets: Vec<String> = match axioms {
        Some(list) => {
            for a in list {
                if !AXIOM_SETS.contains(&a.as_str()) {
                    return Err(Error::Usage(format!("unknown axiom set `{a}`; expected one of {}", AXIOM_SETS.join(", "))));
                }
            }
            list.clone()
        }
        None => {
            let mut v = vec!["ass-natural".to_string(), "ss-natural".to_string()];
            if is_cs {
                v.extend(["ass-cs", "ss-cs", "af-cs"].map(String::from));
            }
            v
        }
    };
    let mut r = Report::new(&g.name, "verify");
    for set in &sets {
        let checks = match set.as_str() {
            "ass-natural" => ss::verify_ass(p.natural()?),
            "ss-natural" => ss::verify_ss(p.natural_ss()?),
            "ass-cs" => ss::verify_ass(p.cs()?),
            "ss-cs" => ss::verify_ss(p.cs_ss()?),
            "af-cs" => {
                let h = p.hm()?.h.to_ratfn();
                ss::verify_almost_frobenius(p.cs()?, &h)
            }
            "frobenius" => {
                require_cs(g)?;
                let (checks, data) = frobenius_checks(p)?;
                if checks.is_empty() {
                    let w = data["witness"].as_str().unwrap_or_default().to_string();
                    vec![Check::new("compatible-metric", false, format!("A is not anti-diagonal constant at {w}"))]
                } else {
                    checks
                }
            }
            _ => unreachable!("validated above"),
        };
        r.checks_prefixed(set, &checks);
    }
    r.insert("axioms", json!(sets));
    Ok(r)
}

fn run_appendix(cfg: &CommandConfig) -> Result<Report> {
    let (Some(m), Some(n)) = (cfg.m, cfg.n) else {
        return Err(Error::Usage("`appendix` needs --m and --n".into()));
    };
    let n = n as usize;
    let mut r = Report::new(&format!("G{m}_1_{n}"), "appendix");
    let mut entries = Map::new();
    let mut rows = gm1n::elem_sym_suite(n)?;
    rows.extend(gm1n::gm1n_suite(m, n)?);
    for row in &rows {
        r.check(&Check::new(&row.label, row.matches, if row.matches { String::new() } else { "closed form differs from oracle".into() }));
        entries.insert(
            row.label.clone(),
            json!({"closed": row.closed.to_string(), "oracle": row.oracle.to_string(), "match": row.matches}),
        );
    }
    r.check(&Check::from_witness("inverse-product", gm1n::closed_inverse_product_check(n)?));
    r.check(&Check::from_witness("elementary-recursion", gm1n::elementary_recursion_check(n)?));
    let e = gm1n::elem_sym_matrix(n)?;
    r.check(&Check::from_witness("column-independence", gm1n::column_independence_check(&e)));
    r.insert("entries", Value::Object(entries));
    r.insert("E", report::matrix(&e.entries));
    Ok(r)
}

pub fn run(cfg: &CommandConfig) -> Result<Report> {
    match cfg.command {
        Command::Catalog => return run_catalog(cfg),
        Command::Appendix => return run_appendix(cfg),
        _ => {}
    }
    let g = require_group(cfg)?;
    let mut p = Pipeline::new(&g, Guard { limit: cfg.max_degree })?;
    let mut r = match cfg.command {
        Command::Geometry => run_geometry(&g, &mut p)?,
        Command::Natural => run_natural(&g, &mut p)?,
        Command::Cs => run_cs(&g, &mut p)?,
        Command::Compare => run_compare(&g, &mut p, cfg.expect)?,
        Command::Flat => run_flat(&g, &mut p)?,
        Command::Classify => run_classify(&g, &mut p)?,
        Command::Verify => run_verify(&g, &mut p, &cfg.axioms)?,
        Command::Catalog | Command::Appendix => unreachable!(),
    };
    if !g.warnings.is_empty() {
        r.insert("warnings", json!(g.warnings));
    }
    Ok(r)
}

/// Exit status for a finished report: 0 when every check passed, 1 otherwise.
pub fn exit_code(r: &Report) -> i32 {
    if r.passed() {
        0
    } else {
        1
    }
}
