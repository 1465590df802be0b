//! Verification reports: every identity a construction claims is checked
//! by exact recomputation and recorded with both compared values. Reports
//! double as certificates; a stored report is re-derived from its
//! parameters and diffed field by field, so any tampering with an expected
//! multiplicity or a character value surfaces as an exact mismatch.

use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classfn::{
    conjugacy_classes_with_members, decompose_against, inner_product, inner_product_classwise,
    irr_small_pgroup, norm, ClassFunction,
};
use crate::constructions::{
    example1, example1_lambda_stabilizer_is_base, lambda_stabilizer,
    product_as_diagonal_restriction, theorem_a, Example1Output, TheoremBOutput,
};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};
use crate::subgroup::{subgroup_generated, ConjClass, GroupRef};
use crate::EngineConfig;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u64,
    pub r: u32,
    pub t: u32,
    pub n: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub construction: String,
    pub params: Params,
    pub tier: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Structural,
    Full,
    Auto,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Mode, String> {
        match s {
            "structural" => Ok(Mode::Structural),
            "full" => Ok(Mode::Full),
            "auto" => Ok(Mode::Auto),
            other => Err(format!("unknown mode '{}' (expected structural|full|auto)", other)),
        }
    }
}

fn ck(name: String, anchor: &str, lhs: String, rhs: String, pass: bool) -> Check {
    Check { name, anchor: anchor.to_string(), lhs, rhs, pass }
}

fn ck_eq<T: PartialEq + Display>(name: &str, anchor: &str, lhs: T, rhs: T) -> Check {
    let pass = lhs == rhs;
    ck(name.to_string(), anchor, lhs.to_string(), rhs.to_string(), pass)
}

fn ck_cyc(name: String, anchor: &str, lhs: &CycNumber, rhs: &CycNumber) -> Check {
    let pass = lhs == rhs;
    ck(name, anchor, lhs.to_string(), rhs.to_string(), pass)
}

fn finish(
    construction: &str,
    params: Params,
    tier: &str,
    checks: Vec<Check>,
    start: Instant,
) -> VerificationReport {
    let pass = checks.iter().all(|c| c.pass);
    VerificationReport {
        version: REPORT_VERSION,
        construction: construction.to_string(),
        params,
        tier: tier.to_string(),
        checks,
        pass,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn example1_params(out: &Example1Output) -> Params {
    Params { p: out.p, r: out.r, t: out.t, n: out.n_full[..out.k - 1].to_vec() }
}

/// Check the restriction decomposition of the wreath-product example:
/// degrees, irreducibility, each multiplicity, zero residual, the norm
/// identity, the stabilizer of the coordinate character, the base
/// restriction as a sum of coordinate characters, and every value of the
/// restricted character.
pub fn verify_restriction(out: &Example1Output, cfg: &EngineConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let b = cfg.max_enum;
    let mut checks = Vec::new();
    let pr = out.p.pow(out.r);

    checks.push(ck_eq("psi_degree", "psi(1) = p^r", out.psi.degree_int()?, pr as i64));
    let q_expected: u128 = if out.k >= 2 { out.p.pow(out.t) as u128 } else { 1 };
    checks.push(ck_eq("q_order", "|Q| = p^t", out.q_sub.order(), q_expected));
    let nm = norm(&out.psi, b)?;
    checks.push(ck_cyc("psi_irreducible".into(), "<psi, psi> = 1", &nm, &CycNumber::one()));

    let psi_q = out.psi.restrict(&out.q_sub);
    for (i, (chi, m)) in out.grouped.iter().enumerate() {
        let ip = inner_product(&psi_q, chi, b)?;
        checks.push(ck_cyc(
            format!("multiplicity[{}]", i),
            "n_i = <psi_Q, constituent_i>",
            &ip,
            &CycNumber::from_integer(*m as i64),
        ));
    }

    let mut terms = vec![(psi_q.clone(), 1i64)];
    for (chi, m) in &out.grouped {
        terms.push((chi.clone(), -(*m as i64)));
    }
    let residual = ClassFunction::linear_combination(terms)?;
    let q_elems = out.q_sub.elements(b)?;
    let rz = residual.is_zero_on(&q_elems);
    checks.push(ck(
        "residual".into(),
        "psi_Q - sum_i n_i delta^i - n_k 1_Q = 0",
        if rz { "zero" } else { "nonzero" }.into(),
        "zero".into(),
        rz,
    ));

    let lhs_norm = inner_product(&psi_q, &psi_q, b)?;
    let rhs_norm: i64 = out.grouped.iter().map(|(_, m)| (*m as i64) * (*m as i64)).sum();
    checks.push(ck_cyc(
        "norm_identity".into(),
        "<psi_Q, psi_Q> = sum_i n_i^2",
        &lhs_norm,
        &CycNumber::from_integer(rhs_norm),
    ));

    let stab_ok = example1_lambda_stabilizer_is_base(out)?;
    checks.push(ck(
        "lambda_stabilizer".into(),
        "stabilizer of lambda in P equals the base N",
        stab_ok.to_string(),
        "true".into(),
        stab_ok,
    ));

    let n_elems = out.n_sub.elements(b)?;
    let psi_n = out.psi.restrict(&out.n_sub);
    let lam_sum = ClassFunction::linear_combination(
        (0..pr as usize).map(|i| (out.lambda_at(i), 1i64)).collect(),
    )?;
    let base_ok = psi_n.eq_on(&lam_sum, &n_elems);
    checks.push(ck(
        "base_restriction_sum".into(),
        "psi_N = sum_i lambda_i",
        if base_ok { "equal" } else { "unequal" }.into(),
        "equal".into(),
        base_ok,
    ));

    let claimed = ClassFunction::linear_combination(
        out.grouped.iter().map(|(c, m)| (c.clone(), *m as i64)).collect(),
    )?;
    for (i, x) in q_elems.iter().enumerate() {
        checks.push(ck_cyc(
            format!("psi_Q_value[{}]", i),
            "psi_Q pointwise equals the claimed decomposition",
            &psi_q.eval(x),
            &claimed.eval(x),
        ));
    }

    Ok(finish("example1", example1_params(out), "full", checks, start))
}

/// Check the semidirect-product construction. Structural tier: degree
/// bookkeeping, the stabilizer of lambda, and the upstream restriction
/// decomposition over Q. Full tier (only when G is enumerable) adds the
/// pointwise product identity on every conjugacy class of G, norms and
/// pairwise orthogonality of the induced constituents, and the
/// constituent count.
pub fn verify_product(
    out: &TheoremBOutput,
    construction: &str,
    params: Params,
    mode: Mode,
    cfg: &EngineConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let b = cfg.max_enum;
    let full = match mode {
        Mode::Full => {
            if out.g.order() > b {
                return Err(Error::EnumerationBoundExceeded { needed: out.g.order(), bound: b });
            }
            true
        }
        Mode::Structural => false,
        Mode::Auto => out.g.order() <= b,
    };
    let mut checks = Vec::new();

    let index = (out.p_group.order() / out.q_sub.order()) as i64;
    checks.push(ck_eq(
        "big_psi_degree",
        "Psi(1) = psi(1)",
        out.big_psi.degree_int()?,
        out.psi.degree_int()?,
    ));
    checks.push(ck_eq("theta_degree", "Theta(1) = [P:Q]", out.theta.degree_int()?, index));
    for (i, ((phi_g, _), (phi_q, _))) in out.big_phis.iter().zip(&out.small_phis).enumerate() {
        checks.push(ck_eq(
            &format!("phi_degree[{}]", i),
            "Phi_i(1) = [P:Q] phi_i(1)",
            phi_g.degree_int()?,
            index * phi_q.degree_int()?,
        ));
    }
    let lhs_deg: i64 = out
        .big_phis
        .iter()
        .map(|(phi, m)| Ok(*m as i64 * phi.degree_int()?))
        .sum::<Result<i64>>()?;
    checks.push(ck_eq(
        "degree_bookkeeping",
        "Psi(1) Theta(1) = sum_i n_i Phi_i(1)",
        out.big_psi.degree_int()? * out.theta.degree_int()?,
        lhs_deg,
    ));

    if out.p_group.order() <= b {
        let stab = lambda_stabilizer(&out.lemma, b)?;
        let q_elems = out.q_sub.elements(b)?;
        let ok = stab == q_elems;
        checks.push(ck(
            "lambda_stabilizer".into(),
            "stabilizer of lambda in P equals Q element-for-element",
            format!("{} elements", stab.len()),
            format!("{} elements", q_elems.len()),
            ok,
        ));
    }

    let psi_q = out.psi.restrict(&out.q_sub);
    for (i, (phi, m)) in out.small_phis.iter().enumerate() {
        let ip = inner_product(&psi_q, phi, b)?;
        checks.push(ck_cyc(
            format!("restriction_multiplicity[{}]", i),
            "n_i = <psi_Q, phi_i>",
            &ip,
            &CycNumber::from_integer(*m as i64),
        ));
    }
    let claimed = ClassFunction::linear_combination(
        out.small_phis.iter().map(|(c, m)| (c.clone(), *m as i64)).collect(),
    )?;
    let q_elems = out.q_sub.elements(b)?;
    for (i, x) in q_elems.iter().enumerate() {
        checks.push(ck_cyc(
            format!("psi_Q_value[{}]", i),
            "psi_Q pointwise equals the claimed decomposition",
            &psi_q.eval(x),
            &claimed.eval(x),
        ));
    }

    if full {
        let whole = GroupRef::Whole(out.g.clone());
        let class_members = conjugacy_classes_with_members(&whole, b)?;
        let classes: Vec<ConjClass> = class_members
            .iter()
            .map(|(rep, members)| ConjClass { representative: rep.clone(), size: members.len() })
            .collect();

        let product = out.big_psi.product(&out.theta)?;
        let combo = ClassFunction::linear_combination(
            out.big_phis.iter().map(|(c, m)| (c.clone(), *m as i64)).collect(),
        )?;
        for (i, c) in classes.iter().enumerate() {
            checks.push(ck_cyc(
                format!("product_value[{}]", i),
                "Psi Theta = sum_i n_i Phi_i on every class",
                &product.eval(&c.representative),
                &combo.eval(&c.representative),
            ));
        }

        let phis: Vec<ClassFunction> = out
            .big_phis
            .iter()
            .map(|(c, _)| c.materialize_by_classes(&class_members))
            .collect();
        for (i, phi) in phis.iter().enumerate() {
            let nm = inner_product_classwise(phi, phi, &classes)?;
            checks.push(ck_cyc(
                format!("phi_norm[{}]", i),
                "<Phi_i, Phi_i> = 1",
                &nm,
                &CycNumber::one(),
            ));
        }
        for i in 0..phis.len() {
            for j in i + 1..phis.len() {
                let ip = inner_product_classwise(&phis[i], &phis[j], &classes)?;
                checks.push(ck_cyc(
                    format!("phi_orthogonal[{}][{}]", i, j),
                    "<Phi_i, Phi_j> = 0 for i != j",
                    &ip,
                    &CycNumber::zero(),
                ));
            }
        }
        let eta = out.big_phis.iter().filter(|(_, m)| *m > 0).count();
        checks.push(ck_eq(
            "eta",
            "number of distinct irreducible constituents of Psi Theta",
            eta,
            out.big_phis.len(),
        ));
    }

    let tier = if full { "full" } else { "structural" };
    Ok(finish(construction, params, tier, checks, start))
}

/// Run the full chain for the given parameters and verify the product.
pub fn verify_theorem_a(
    p: u64,
    r: u32,
    t: u32,
    n: &[u64],
    mode: Mode,
    cfg: &EngineConfig,
) -> Result<VerificationReport> {
    let (ex, tb) = theorem_a(p, r, t, n, cfg)?;
    verify_product(&tb, "theorem-a", example1_params(&ex), mode, cfg)
}

/// Same pipeline, reported under the reusable half of the chain.
pub fn verify_theorem_b(
    p: u64,
    r: u32,
    t: u32,
    n: &[u64],
    mode: Mode,
    cfg: &EngineConfig,
) -> Result<VerificationReport> {
    let (ex, tb) = theorem_a(p, r, t, n, cfg)?;
    verify_product(&tb, "theorem-b", example1_params(&ex), mode, cfg)
}

fn verify_diag(
    construction: &str,
    params: Params,
    group: FiniteGroup,
    cfg: &EngineConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let irrs = irr_small_pgroup(&GroupRef::Whole(group.clone()), 512)?;
    let mut checks = Vec::new();
    for i in 0..irrs.len() {
        for j in i..irrs.len() {
            let ok = product_as_diagonal_restriction(&group, &irrs[i], &irrs[j], cfg.max_enum)?;
            checks.push(ck(
                format!("diag_pair[{}][{}]", i, j),
                "(psi x theta) restricted to the diagonal equals psi theta",
                ok.to_string(),
                "true".into(),
                ok,
            ));
        }
    }
    Ok(finish(construction, params, "full", checks, start))
}

/// Diagonal-restriction identity over all irreducible pairs of the
/// nonabelian group of order 8 built as a wreath product.
pub fn verify_diag_wreath(cfg: &EngineConfig) -> Result<VerificationReport> {
    let g = FiniteGroup::wreath_cyclic(2, 1, 1)?;
    verify_diag("diag-wreath", Params { p: 2, r: 1, t: 1, n: vec![] }, g, cfg)
}

/// Diagonal-restriction identity over all irreducible pairs of the
/// cyclic group of order 9.
pub fn verify_diag_cyclic(cfg: &EngineConfig) -> Result<VerificationReport> {
    let g = FiniteGroup::cyclic(9);
    verify_diag("diag-cyclic", Params { p: 3, r: 1, t: 2, n: vec![] }, g, cfg)
}

/// Experimental probe, deliberately fenced off from the main claims: on
/// the extraspecial group of order 27 every product of two faithful
/// irreducibles decomposes with either a single constituent or at least
/// two of them.
pub fn spotcheck_extraspecial(cfg: &EngineConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let b = cfg.max_enum;
    let w = FiniteGroup::wreath_cyclic(3, 1, 1)?;
    let gens = [Element(vec![1, 0, 0, 0]), Element(vec![0, 0, 1, 2])];
    let h = subgroup_generated(&w, &gens, b)?;
    let dom = GroupRef::Sub(h.clone());
    let mut checks = Vec::new();
    checks.push(ck_eq("group_order", "|H| = 27", h.order(), 27u128));

    let irrs = irr_small_pgroup(&dom, 512)?;
    let elems = h.elements(b)?;
    let faithful: Vec<&ClassFunction> = irrs
        .iter()
        .filter(|chi| {
            let deg = chi.degree();
            elems.iter().filter(|g| chi.eval(g) == deg).count() == 1
        })
        .collect();
    checks.push(ck_eq("faithful_count", "two faithful irreducibles of degree 3", faithful.len(), 2));

    for (i, a) in faithful.iter().enumerate() {
        for (j, bchi) in faithful.iter().enumerate().skip(i) {
            let prod = a.product(bchi)?;
            let d = decompose_against(&prod, &irrs, b)?;
            let eta = d.eta();
            let complete = d.residual_is_zero(b)?;
            checks.push(ck(
                format!("eta[{}][{}]", i, j),
                "eta of a product of faithful irreducibles is 1 or at least 2 (experimental)",
                eta.to_string(),
                ">= 1".into(),
                complete && eta >= 1,
            ));
        }
    }
    Ok(finish("spotcheck-extraspecial", Params { p: 3, r: 1, t: 1, n: vec![] }, "full", checks, start))
}

/// The parameter matrix of restriction cases covered by the suite.
pub const RESTRICTION_CASES: &[(u64, u32, u32, &[u64])] = &[
    (2, 1, 1, &[1]),
    (2, 2, 1, &[1, 1, 1]),
    (2, 2, 1, &[3]),
    (3, 1, 1, &[1, 1]),
    (3, 1, 1, &[2]),
    (5, 1, 1, &[1, 2]),
    (2, 1, 2, &[1]),
];

/// The full regression corpus: the restriction matrix, the product
/// construction at enumerable and at structural-only scale, and both
/// diagonal checks; optionally the experimental order-27 probe.
pub fn suite_reports(cfg: &EngineConfig, spotcheck: bool) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for &(p, r, t, n) in RESTRICTION_CASES {
        reports.push(verify_restriction(&example1(p, r, t, n, cfg)?, cfg)?);
    }
    reports.push(verify_theorem_a(2, 1, 1, &[1], Mode::Full, cfg)?);
    reports.push(verify_theorem_a(3, 1, 1, &[1, 1], Mode::Structural, cfg)?);
    reports.push(verify_diag_wreath(cfg)?);
    reports.push(verify_diag_cyclic(cfg)?);
    if spotcheck {
        reports.push(spotcheck_extraspecial(cfg)?);
    }
    Ok(reports)
}

/// Re-derive a report from its identifying fields.
pub fn recompute(
    construction: &str,
    params: &Params,
    tier: &str,
    cfg: &EngineConfig,
) -> Result<VerificationReport> {
    let mode = if tier == "full" { Mode::Full } else { Mode::Structural };
    match construction {
        "example1" => verify_restriction(&example1(params.p, params.r, params.t, &params.n, cfg)?, cfg),
        "theorem-a" => verify_theorem_a(params.p, params.r, params.t, &params.n, mode, cfg),
        "theorem-b" => verify_theorem_b(params.p, params.r, params.t, &params.n, mode, cfg),
        "diag-wreath" => verify_diag_wreath(cfg),
        "diag-cyclic" => verify_diag_cyclic(cfg),
        "spotcheck-extraspecial" => spotcheck_extraspecial(cfg),
        other => Err(Error::ConstraintViolation(format!("unknown construction '{}'", other))),
    }
}

/// Recompute a stored certificate and diff it field by field, ignoring
/// the timing. Returns the exact mismatches; empty means the certificate
/// is valid.
pub fn verify_certificate(stored: &VerificationReport, cfg: &EngineConfig) -> Result<Vec<String>> {
    let fresh = recompute(&stored.construction, &stored.params, &stored.tier, cfg)?;
    let mut mismatches = Vec::new();
    let ctx = format!("{} {:?}", stored.construction, stored.params.n);
    if stored.version != fresh.version {
        mismatches.push(format!("{}: version {} != {}", ctx, stored.version, fresh.version));
    }
    if stored.tier != fresh.tier {
        mismatches.push(format!("{}: tier {} != {}", ctx, stored.tier, fresh.tier));
    }
    if stored.checks.len() != fresh.checks.len() {
        mismatches.push(format!(
            "{}: {} stored checks, {} recomputed",
            ctx,
            stored.checks.len(),
            fresh.checks.len()
        ));
    }
    for (s, f) in stored.checks.iter().zip(&fresh.checks) {
        if s != f {
            mismatches.push(format!(
                "{}: check '{}' stored (lhs {}, rhs {}, pass {}) vs recomputed (lhs {}, rhs {}, pass {})",
                ctx, s.name, s.lhs, s.rhs, s.pass, f.lhs, f.rhs, f.pass
            ));
        }
    }
    if stored.pass != fresh.pass {
        mismatches.push(format!("{}: pass {} != {}", ctx, stored.pass, fresh.pass));
    }
    Ok(mismatches)
}

pub fn golden_name(r: &VerificationReport) -> String {
    let n = if r.params.n.is_empty() {
        "none".to_string()
    } else {
        r.params.n.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
    };
    format!("{}-p{}-r{}-t{}-n{}.json", r.construction, r.params.p, r.params.r, r.params.t, n)
}

pub fn write_goldens(dir: &Path, reports: &[VerificationReport]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for r in reports {
        let mut text = serde_json::to_string_pretty(r).expect("report serializes");
        text.push('\n');
        fs::write(dir.join(golden_name(r)), text)?;
    }
    Ok(())
}

/// Recompute every stored certificate in the directory and collect the
/// exact mismatches. Unreadable files are reported as mismatches too.
pub fn check_golden_dir(dir: &Path, cfg: &EngineConfig) -> Result<Vec<String>> {
    let mut mismatches = Vec::new();
    let mut entries: Vec<_> = fs::read_dir(dir)
        .map_err(|e| Error::ConstraintViolation(format!("cannot read golden dir {}: {}", dir.display(), e)))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|x| x == "json").unwrap_or(false))
        .collect();
    entries.sort();
    for path in entries {
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                mismatches.push(format!("{}: unreadable ({})", path.display(), e));
                continue;
            }
        };
        let stored: VerificationReport = match serde_json::from_str(&text) {
            Ok(r) => r,
            Err(e) => {
                mismatches.push(format!("{}: invalid JSON ({})", path.display(), e));
                continue;
            }
        };
        mismatches.extend(verify_certificate(&stored, cfg)?);
    }
    Ok(mismatches)
}

/// Lossy tab-separated view of a report.
pub fn to_tsv(r: &VerificationReport) -> String {
    let mut out = String::from("name\tanchor\tlhs\trhs\tpass\n");
    for c in &r.checks {
        out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", c.name, c.anchor, c.lhs, c.rhs, c.pass));
    }
    out.push_str(&format!(
        "# {} {:?} tier={} pass={}\n",
        r.construction, r.params.n, r.tier, r.pass
    ));
    out
}
