//! Acceptance gate: one test per acceptance criterion, each printing a
//! single pass/fail line. All comparisons are exact; there is no
//! tolerance anywhere.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use charprod::classfn::{
    induce, inner_product, irr_small_pgroup, linear_characters, ClassFunction,
};
use charprod::constructions::{
    example1, lambda_stabilizer, lemma1, product_as_diagonal_restriction, theorem_a,
};
use charprod::cyclotomic::CycNumber;
use charprod::group::{Element, FiniteGroup};
use charprod::subgroup::{subgroup_generated, GroupRef, Subgroup};
use charprod::verify::{verify_restriction, VerificationReport, RESTRICTION_CASES};
use charprod::EngineConfig;

const B: u128 = 1 << 21;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_charprod"))
}

fn parse_report(stdout: &[u8]) -> VerificationReport {
    serde_json::from_slice(stdout).expect("report JSON parses")
}

fn report_check<'a>(r: &'a VerificationReport, name: &str) -> &'a charprod::verify::Check {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("check '{}' missing", name))
}

fn pass_line(n: u32, what: &str) {
    println!("[acceptance] criterion {}: PASS — {}", n, what);
}

#[test]
fn criterion_1_theorem_a_end_to_end_full() {
    let start = Instant::now();
    let out = bin()
        .args(["theorem-a", "--p", "2", "--r", "1", "--t", "1", "--n", "1", "--mode", "full"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(out.status.success(), "exit: {:?}\n{}", out.status, String::from_utf8_lossy(&out.stderr));
    assert!(elapsed.as_secs_f64() < 5.0, "took {:?}", elapsed);
    let r = parse_report(&out.stdout);
    assert!(r.pass);
    assert_eq!(r.tier, "full");
    assert_eq!(report_check(&r, "eta").lhs, "2");
    assert_eq!(report_check(&r, "phi_norm[0]").lhs, "1");
    assert_eq!(report_check(&r, "phi_norm[1]").lhs, "1");
    assert_eq!(report_check(&r, "phi_orthogonal[0][1]").lhs, "0");
    assert!(r.checks.iter().filter(|c| c.name.starts_with("product_value")).count() >= 2);
    assert!(r.checks.iter().all(|c| c.pass));

    // group sizes from the library side
    let cfg = EngineConfig::default();
    let (ex, tb) = theorem_a(2, 1, 1, &[1], &cfg).unwrap();
    assert_eq!(ex.p_group.order(), 8);
    assert_eq!(ex.q_sub.order(), 2);
    assert_eq!(tb.g.order(), 128);
    pass_line(1, "|P|=8, |Q|=2, |G|=128, pointwise product identity, norms, orthogonality, eta=2");
}

#[test]
fn criterion_2_restriction_matrix() {
    let start = Instant::now();
    let cfg = EngineConfig::default();
    for &(p, r, t, n) in RESTRICTION_CASES {
        let out = example1(p, r, t, n, &cfg).unwrap();
        assert!(out.p_group.order() <= 200_000);
        let report = verify_restriction(&out, &cfg).unwrap();
        assert!(
            report.pass,
            "case ({}, {}, {}, {:?}) failed: {:?}",
            p,
            r,
            t,
            n,
            report.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>()
        );
        // the prescribed multiplicities, with the final one completing to p^r,
        // reproduce the restriction exactly: zero residual with exactly the
        // prescribed coefficients on the prescribed constituents
        let mut expect = n.to_vec();
        expect.push(p.pow(r) - n.iter().sum::<u64>());
        assert_eq!(out.n_full, expect);
        let psi_q = out.psi.restrict(&out.q_sub);
        let mut terms = vec![(psi_q, 1i64)];
        for (chi, m) in &out.expected {
            terms.push((chi.clone(), -(*m as i64)));
        }
        let residual = ClassFunction::linear_combination(terms).unwrap();
        let q_elems = out.q_sub.elements(B).unwrap();
        assert!(residual.is_zero_on(&q_elems), "nonzero residual for ({}, {}, {}, {:?})", p, r, t, n);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {:?}", elapsed);
    pass_line(2, "all seven restriction cases decompose with the prescribed multiplicities");
}

#[test]
fn criterion_3_structural_tier_at_scale() {
    let out = bin()
        .args(["theorem-a", "--p", "3", "--r", "1", "--t", "1", "--n", "1,1", "--mode", "structural"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let r = parse_report(&out.stdout);
    assert!(r.pass);
    assert_eq!(r.tier, "structural");
    let dbk = report_check(&r, "degree_bookkeeping");
    assert_eq!(dbk.lhs, "81");
    assert_eq!(dbk.rhs, "81");
    assert_eq!(report_check(&r, "theta_degree").lhs, "27");
    // structural tier must not attempt enumeration of the huge module
    assert!(r.checks.iter().all(|c| !c.name.starts_with("product_value")));
    pass_line(3, "degree bookkeeping 3*27 = 27+27+27 at [P:Q]=27 without enumerating the module");
}

fn random_element(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Element {
    Element(g.radices().iter().map(|&r| rng.gen_range(0..r)).collect())
}

#[test]
fn criterion_4_reciprocity_degrees_orthogonality() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let pool: Vec<FiniteGroup> = vec![
        FiniteGroup::cyclic(16),
        FiniteGroup::cyclic(27),
        FiniteGroup::cyclic(243),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(8)),
        FiniteGroup::wreath_cyclic(2, 1, 1).unwrap(),
        FiniteGroup::wreath_cyclic(2, 2, 1).unwrap(),
        FiniteGroup::wreath_cyclic(2, 1, 2).unwrap(),
        FiniteGroup::wreath_cyclic(3, 1, 1).unwrap(),
        FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2),
            &FiniteGroup::wreath_cyclic(2, 2, 1).unwrap(),
        ),
    ];
    assert!(pool.iter().all(|g| g.order() <= 256));

    let mut instances = 0;
    while instances < 50 {
        let g = &pool[rng.gen_range(0..pool.len())];
        // chi: a character of G induced from a linear character of a
        // random cyclic subgroup
        let a = subgroup_generated(g, &[random_element(g, &mut rng)], B).unwrap();
        let a_chars = linear_characters(&GroupRef::Sub(a.clone()), B).unwrap();
        let chi = induce(
            &a_chars[rng.gen_range(0..a_chars.len())],
            &GroupRef::Whole(g.clone()),
            B,
        )
        .unwrap();
        // mu: a linear character of another random cyclic subgroup H
        let h = subgroup_generated(g, &[random_element(g, &mut rng)], B).unwrap();
        let h_chars = linear_characters(&GroupRef::Sub(h.clone()), B).unwrap();
        let mu = h_chars[rng.gen_range(0..h_chars.len())].clone();
        let mu_g = induce(&mu, &GroupRef::Whole(g.clone()), B).unwrap();

        // induced degree
        assert_eq!(
            mu_g.degree_int().unwrap(),
            h.index() as i64 * mu.degree_int().unwrap()
        );
        // reciprocity, exactly
        let lhs = inner_product(&chi.restrict(&h), &mu, B).unwrap();
        let rhs = inner_product(&chi, &mu_g, B).unwrap();
        assert_eq!(lhs, rhs, "reciprocity failed on |G|={} |H|={}", g.order(), h.order());
        instances += 1;
    }

    // first orthogonality for every complete irreducible set produced
    for g in [
        FiniteGroup::cyclic(8),
        FiniteGroup::cyclic(9),
        FiniteGroup::elementary_abelian(2, 2),
        FiniteGroup::cyclic(27),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(8), &FiniteGroup::cyclic(8)),
        FiniteGroup::wreath_cyclic(2, 1, 1).unwrap(),
        FiniteGroup::wreath_cyclic(2, 2, 1).unwrap(),
    ] {
        assert!(g.order() <= 128);
        let irrs = irr_small_pgroup(&GroupRef::Whole(g.clone()), 512).unwrap();
        for (i, a) in irrs.iter().enumerate() {
            for (j, b) in irrs.iter().enumerate() {
                let expect = if i == j { CycNumber::one() } else { CycNumber::zero() };
                assert_eq!(inner_product(a, b, B).unwrap(), expect);
            }
        }
    }
    pass_line(4, "50 exact reciprocity instances, induced degrees, orthogonality of all irreducible sets");
}

#[test]
fn criterion_5_diagonal_restriction() {
    for g in [FiniteGroup::wreath_cyclic(2, 1, 1).unwrap(), FiniteGroup::cyclic(9)] {
        let irrs = irr_small_pgroup(&GroupRef::Whole(g.clone()), 512).unwrap();
        for a in &irrs {
            for b in &irrs {
                assert!(product_as_diagonal_restriction(&g, a, b, B).unwrap());
            }
        }
    }
    pass_line(5, "diagonal-restriction identity for all irreducible pairs of both groups");
}

fn golden_source() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

fn copy_goldens(dst: &Path) {
    std::fs::create_dir_all(dst).unwrap();
    for entry in std::fs::read_dir(golden_source()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dst.join(p.file_name().unwrap())).unwrap();
    }
}

fn run_suite(golden: &Path) -> (bool, String) {
    let out = bin()
        .args(["suite", "--golden"])
        .arg(golden)
        .output()
        .expect("binary runs");
    (out.status.code() == Some(0), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn criterion_6_negative_controls() {
    let base = std::env::temp_dir().join(format!("charprod-neg-{}", std::process::id()));

    // untampered corpus verifies
    let clean = base.join("clean");
    copy_goldens(&clean);
    let (ok, _) = run_suite(&clean);
    assert!(ok, "clean golden corpus must verify");

    let tamper = |dir: &Path, file: &str, check: &str, field: &str, value: &str| {
        copy_goldens(dir);
        let path = dir.join(file);
        let mut r: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let checks = r["checks"].as_array_mut().unwrap();
        let c = checks
            .iter_mut()
            .find(|c| c["name"] == check)
            .unwrap_or_else(|| panic!("{} missing in {}", check, file));
        c[field] = serde_json::Value::String(value.into());
        std::fs::write(&path, serde_json::to_string_pretty(&r).unwrap()).unwrap();
    };

    // perturbed expected multiplicity
    let m = base.join("multiplicity");
    tamper(&m, "example1-p3-r1-t1-n1_1.json", "multiplicity[1]", "rhs", "5");
    let (ok, stdout) = run_suite(&m);
    assert!(!ok, "tampered multiplicity must fail");
    assert!(stdout.contains("multiplicity[1]") && stdout.contains("rhs 5") && stdout.contains("rhs 1"),
        "mismatch must show both exact values:\n{}", stdout);

    // perturbed single character value
    let v = base.join("value");
    tamper(&v, "theorem-a-p2-r1-t1-n1.json", "product_value[0]", "lhs", "9");
    let (ok, stdout) = run_suite(&v);
    assert!(!ok, "tampered character value must fail");
    assert!(stdout.contains("product_value[0]") && stdout.contains("lhs 9") && stdout.contains("lhs 8"),
        "mismatch must show both exact values:\n{}", stdout);

    std::fs::remove_dir_all(&base).ok();
    pass_line(6, "tampered multiplicity and tampered character value both fail with exact values, suite exit 1");
}

#[test]
fn criterion_7_stabilizer_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cfg = EngineConfig::default();
    let pool: Vec<FiniteGroup> = vec![
        FiniteGroup::wreath_cyclic(2, 1, 1).unwrap(),
        FiniteGroup::wreath_cyclic(2, 2, 1).unwrap(),
        FiniteGroup::wreath_cyclic(3, 1, 1).unwrap(),
        FiniteGroup::cyclic(16),
        FiniteGroup::cyclic(81),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(4)),
        FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2),
            &FiniteGroup::wreath_cyclic(2, 1, 1).unwrap(),
        ),
    ];
    let mut done = 0;
    let mut whole_seen = false;
    while done < 20 {
        let p = &pool[rng.gen_range(0..pool.len())];
        let mut gens = vec![random_element(p, &mut rng)];
        if rng.gen_bool(0.5) {
            gens.push(random_element(p, &mut rng));
        }
        let q = subgroup_generated(p, &gens, B).unwrap();
        if q.index() > 16 {
            continue;
        }
        whole_seen |= q.index() == 1;
        let out = lemma1(p, &q, &cfg).unwrap();
        assert_eq!(out.rank as u128, q.index());
        let stab = lambda_stabilizer(&out, B).unwrap();
        assert_eq!(stab, q.elements(B).unwrap(), "stabilizer mismatch on |P|={}", p.order());
        done += 1;
    }
    // make sure the degenerate whole-group case is represented too
    if !whole_seen {
        let p = &pool[0];
        let q = Subgroup::whole(p, B).unwrap();
        let out = lemma1(p, &q, &cfg).unwrap();
        assert_eq!(lambda_stabilizer(&out, B).unwrap(), q.elements(B).unwrap());
    }
    pass_line(7, "20 randomized (P, Q) pairs: the computed stabilizer equals Q element-for-element");
}
