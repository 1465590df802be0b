//! The constructive pipelines: a permutation module realizing a subgroup
//! as a character stabilizer, the wreath-product restriction example, the
//! semidirect-product character construction built on top of both, and the
//! diagonal-restriction cross-check.

use std::sync::Arc;

use crate::classfn::{
    decompose_against, dual_basis_character, extend_over_stabilizer, induce, inflate,
    irr_small_pgroup, linear_characters, norm, ClassFunction,
};
use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::{Action, Element, FiniteGroup};
use crate::subgroup::{subgroup_generated, CosetTable, GroupRef, Subgroup};
use crate::EngineConfig;

/// An elementary abelian module E for P with a linear character whose
/// stabilizer in P is exactly Q: E is the F_p-permutation module on the
/// right cosets of Q, and lambda is the dual-basis character at the coset
/// of Q itself.
pub struct Lemma1Output {
    pub p_group: FiniteGroup,
    pub q_sub: Subgroup,
    pub prime: u64,
    /// Elementary abelian group of rank [P:Q].
    pub module: FiniteGroup,
    /// Linear character of the module with stabilizer Q.
    pub lambda: ClassFunction,
    /// Coset table carrying the permutation action of P on the basis.
    pub table: Arc<CosetTable>,
    pub rank: usize,
}

pub fn lemma1(p_group: &FiniteGroup, q_sub: &Subgroup, cfg: &EngineConfig) -> Result<Lemma1Output> {
    let (prime, _) = p_group
        .prime_power()
        .ok_or_else(|| Error::ConstraintViolation("acting group must be a p-group".into()))?;
    let table = Arc::new(CosetTable::build(p_group, q_sub, cfg.rank_bound)?);
    let rank = table.points().len();
    let module = FiniteGroup::elementary_abelian(prime, rank);
    let lambda = dual_basis_character(&module, 0, prime);
    Ok(Lemma1Output {
        p_group: p_group.clone(),
        q_sub: q_sub.clone(),
        prime,
        module,
        lambda,
        table,
        rank,
    })
}

/// All elements of P fixing lambda under the coset-permutation action.
/// Fixing lambda is fixing the base point, so this is the base-point
/// stabilizer, which must come back equal to Q element-for-element.
pub fn lambda_stabilizer(out: &Lemma1Output, bound: u128) -> Result<Vec<Element>> {
    out.table.base_stabilizer(bound)
}

/// The wreath-product restriction construction: P the wreath product of
/// Z_{p^t} by Z_{p^r}, psi induced from a coordinate character of the
/// base N, Q the cyclic subgroup generated by the block element q, and
/// the prescribed decomposition of the restriction of psi to Q into
/// powers of delta.
pub struct Example1Output {
    pub p: u64,
    pub r: u32,
    pub t: u32,
    /// Number of prescribed multiplicities, including the final one.
    pub k: usize,
    /// n_1..n_k with n_k = p^r - (n_1 + ... + n_{k-1}).
    pub n_full: Vec<u64>,
    pub p_group: FiniteGroup,
    /// The base N, the bottom factor of the wreath product.
    pub n_sub: Subgroup,
    /// Linear character of N: a primitive p^t-th root on the first
    /// coordinate, 1 elsewhere.
    pub lambda: ClassFunction,
    /// psi = lambda induced to P; irreducible of degree p^r.
    pub psi: ClassFunction,
    /// The block element q of N.
    pub q_elem: Element,
    /// Q = <q>, cyclic of order p^t (trivial when k = 1).
    pub q_sub: Subgroup,
    /// Linear character of Q with delta(q) a primitive p^t-th root.
    pub delta: ClassFunction,
    /// Prescribed constituents in order: (delta^j, n_j) for j < k, then
    /// (1_Q, n_k). Powers of delta may coincide when p^t < k.
    pub expected: Vec<(ClassFunction, u64)>,
    /// The prescribed list with equal constituents merged (multiplicities
    /// added), in first-occurrence order. Equals `expected` when the
    /// powers of delta and 1_Q are pairwise distinct.
    pub grouped: Vec<(ClassFunction, u64)>,
    pub warnings: Vec<String>,
}

impl Example1Output {
    /// The coordinate character with the primitive root at position i.
    pub fn lambda_at(&self, i: usize) -> ClassFunction {
        let pt = self.p.pow(self.t);
        ClassFunction::from_fn(GroupRef::Sub(self.n_sub.clone()), pt, move |g| {
            CycNumber::root_of_unity(pt, g.0[1 + i] as i64)
        })
    }

    /// delta^j as an explicit rule on Q.
    pub fn delta_power(&self, j: u64) -> ClassFunction {
        let pt = self.p.pow(self.t);
        ClassFunction::from_fn(GroupRef::Sub(self.q_sub.clone()), pt, move |g| {
            CycNumber::root_of_unity(pt, (j * g.0[1]) as i64)
        })
    }
}

pub fn example1(p: u64, r: u32, t: u32, n: &[u64], cfg: &EngineConfig) -> Result<Example1Output> {
    if !crate::group::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.iter().any(|&ni| ni == 0) {
        return Err(Error::ConstraintViolation(
            "every multiplicity n_i must be a positive integer".into(),
        ));
    }
    let k = n.len() + 1;
    let pr = p.pow(r);
    let pt = p.pow(t);
    let sum: u64 = n.iter().sum();
    if pr <= sum {
        return Err(Error::ConstraintViolation(format!(
            "p^r > sum(n_i) requires {} > {}",
            pr, sum
        )));
    }
    let mut warnings = Vec::new();
    if (pt as usize) < k {
        warnings.push(format!(
            "p^t >= k fails ({} < {}): powers of delta coincide and equal constituents are merged",
            pt, k
        ));
    }

    let p_group = FiniteGroup::wreath_cyclic(p, t, r)?;
    let n_sub = Subgroup::bottom(&p_group)?;

    let lambda = {
        ClassFunction::from_fn(GroupRef::Sub(n_sub.clone()), pt, move |g| {
            CycNumber::root_of_unity(pt, g.0[1] as i64)
        })
    };
    let psi = induce(&lambda, &GroupRef::Whole(p_group.clone()), cfg.max_enum)?;

    // q: block j of n_j coordinates holds c^j (c = 1 in Z_{p^t}); the
    // remaining p^r - sum coordinates hold the identity.
    let mut code = vec![0u64; p_group.slot_count()];
    let mut pos = 1;
    for (j, &nj) in n.iter().enumerate() {
        for _ in 0..nj {
            code[pos] = (j as u64 + 1) % pt;
            pos += 1;
        }
    }
    let q_elem = Element(code);
    let q_sub = subgroup_generated(&p_group, std::slice::from_ref(&q_elem), cfg.max_enum)?;

    // delta(q^j) tracks the first coordinate of q^j, which is j mod p^t.
    let delta = ClassFunction::from_fn(GroupRef::Sub(q_sub.clone()), pt, move |g| {
        CycNumber::root_of_unity(pt, g.0[1] as i64)
    });

    let n_k = pr - sum;
    let mut n_full = n.to_vec();
    n_full.push(n_k);

    let out = Example1Output {
        p,
        r,
        t,
        k,
        n_full,
        p_group,
        n_sub,
        lambda,
        psi,
        q_elem,
        q_sub,
        delta,
        expected: Vec::new(),
        grouped: Vec::new(),
        warnings,
    };

    let mut expected: Vec<(ClassFunction, u64)> = Vec::new();
    for (j, &nj) in n.iter().enumerate() {
        expected.push((out.delta_power(j as u64 + 1), nj));
    }
    expected.push((ClassFunction::trivial(GroupRef::Sub(out.q_sub.clone())), n_k));

    let q_elements = out.q_sub.elements(cfg.max_enum)?;
    let mut grouped: Vec<(ClassFunction, u64)> = Vec::new();
    let mut keys: Vec<Vec<CycNumber>> = Vec::new();
    for (chi, m) in &expected {
        let vals = chi.values_on(&q_elements);
        if let Some(i) = keys.iter().position(|v| *v == vals) {
            grouped[i].1 += m;
        } else {
            keys.push(vals);
            grouped.push((chi.clone(), *m));
        }
    }

    Ok(Example1Output { expected, grouped, ..out })
}

/// Whether the stabilizer of the Example 1 coordinate character in P is
/// exactly the base N. Conjugation by (s, u) moves a base element h to
/// the coordinate shift of h by s, so it is enough to find the top
/// elements fixing lambda.
pub fn example1_lambda_stabilizer_is_base(out: &Example1Output) -> Result<bool> {
    let p_group = &out.p_group;
    let top = p_group.top_group()?;
    let bottom = p_group.bottom_group()?;
    let action = p_group.action()?;
    let mut fixing = 0u64;
    for s in top.elements(out.p.pow(out.r) as u128)? {
        let s_inv = top.inverse(&s);
        let fixes = bottom.generators().iter().all(|h| {
            let moved = Element(action.apply(p_group, &s_inv.0, &h.0));
            out.lambda.eval(&p_group.embed_bottom(&moved))
                == out.lambda.eval(&p_group.embed_bottom(h))
        });
        if fixes {
            fixing += 1;
        }
    }
    Ok(fixing == 1)
}

/// The semidirect-product construction: G = P acting on the permutation
/// module E, with Psi the inflation of psi, Theta induced from the
/// extension of 1_Q by lambda, and one induced character Phi_i per
/// constituent of the restriction of psi to Q, carrying the same
/// multiplicities.
pub struct TheoremBOutput {
    pub p_group: FiniteGroup,
    pub q_sub: Subgroup,
    pub psi: ClassFunction,
    /// Constituents (phi_i, n_i) of the restriction of psi to Q; every
    /// n_i > 0 and the residual is zero.
    pub small_phis: Vec<(ClassFunction, u64)>,
    pub lemma: Lemma1Output,
    pub g: FiniteGroup,
    /// The stabilizer subgroup QE of lambda in G.
    pub qe: Subgroup,
    /// Inflation of psi to G.
    pub big_psi: ClassFunction,
    /// (1_Q lambda) induced to G.
    pub theta: ClassFunction,
    /// (phi_i lambda) induced to G, paired with the carried multiplicity.
    pub big_phis: Vec<(ClassFunction, u64)>,
}

pub fn theorem_b(
    p_group: &FiniteGroup,
    q_sub: &Subgroup,
    psi: &ClassFunction,
    phi_list: Option<&[ClassFunction]>,
    cfg: &EngineConfig,
) -> Result<TheoremBOutput> {
    match psi.domain() {
        GroupRef::Whole(g) if g == p_group => {}
        _ => return Err(Error::GroupMismatch),
    }
    if q_sub.order() >= p_group.order() {
        return Err(Error::ConstraintViolation("Q must be a proper subgroup".into()));
    }
    if p_group.order() <= cfg.max_enum {
        let nm = norm(psi, cfg.max_enum)?;
        if nm != CycNumber::one() {
            return Err(Error::NotIrreducible(nm.to_string()));
        }
    }

    let owned_phis: Vec<ClassFunction>;
    let phis: &[ClassFunction] = match phi_list {
        Some(list) => list,
        None => {
            let dom = GroupRef::Sub(q_sub.clone());
            owned_phis = if dom.is_abelian(cfg.max_enum)? {
                linear_characters(&dom, cfg.max_enum)?
            } else {
                irr_small_pgroup(&dom, 512)?
            };
            &owned_phis
        }
    };

    let psi_q = psi.restrict(q_sub);
    let decomp = decompose_against(&psi_q, phis, cfg.max_enum)?;
    if !decomp.residual_is_zero(cfg.max_enum)? {
        return Err(Error::ConstraintViolation(
            "restriction of psi to Q does not decompose over the supplied characters".into(),
        ));
    }
    let small_phis = decomp.constituents;

    let lemma = lemma1(p_group, q_sub, cfg)?;
    let g = FiniteGroup::semidirect(p_group, &lemma.module, Action::CosetPerm(lemma.table.clone()))?;
    let qe = Subgroup::top_times_bottom(&g, q_sub.elements(cfg.max_enum)?)?;

    let big_psi = inflate(psi, &g)?;
    let one_q = ClassFunction::trivial(GroupRef::Sub(q_sub.clone()));
    let target = GroupRef::Whole(g.clone());
    let theta = induce(&extend_over_stabilizer(&one_q, &lemma.lambda, &qe)?, &target, cfg.max_enum)?;
    let mut big_phis = Vec::with_capacity(small_phis.len());
    for (phi, m) in &small_phis {
        let ext = extend_over_stabilizer(phi, &lemma.lambda, &qe)?;
        big_phis.push((induce(&ext, &target, cfg.max_enum)?, *m));
    }

    Ok(TheoremBOutput {
        p_group: p_group.clone(),
        q_sub: q_sub.clone(),
        psi: psi.clone(),
        small_phis,
        lemma,
        g,
        qe,
        big_psi,
        theta,
        big_phis,
    })
}

/// The full chain: the wreath-product example feeding the semidirect
/// construction, with the prescribed constituents carried through.
pub fn theorem_a(
    p: u64,
    r: u32,
    t: u32,
    n: &[u64],
    cfg: &EngineConfig,
) -> Result<(Example1Output, TheoremBOutput)> {
    let ex = example1(p, r, t, n, cfg)?;
    let candidates: Vec<ClassFunction> = ex.grouped.iter().map(|(c, _)| c.clone()).collect();
    let tb = theorem_b(&ex.p_group, &ex.q_sub, &ex.psi, Some(&candidates), cfg)?;
    Ok((ex, tb))
}

/// Whether the pointwise product of two class functions on G equals the
/// restriction of their outer product on G x G to the diagonal subgroup,
/// transported along the isomorphism g -> (g, g).
pub fn product_as_diagonal_restriction(
    g: &FiniteGroup,
    psi: &ClassFunction,
    theta: &ClassFunction,
    bound: u128,
) -> Result<bool> {
    let whole = GroupRef::Whole(g.clone());
    if *psi.domain() != whole || *theta.domain() != whole {
        return Err(Error::GroupMismatch);
    }
    let (gg, diag) = crate::subgroup::diagonal_subgroup(g, bound)?;
    let half = g.slot_count();
    let (psi2, theta2) = (psi.clone(), theta.clone());
    let outer = ClassFunction::from_fn(
        GroupRef::Whole(gg.clone()),
        num::integer::lcm(psi.conductor(), theta.conductor()),
        move |x| {
            let (a, b) = x.0.split_at(half);
            psi2.eval(&Element(a.to_vec())).mul(&theta2.eval(&Element(b.to_vec())))
        },
    );
    let restricted = outer.restrict(&diag);
    let pointwise = psi.product(theta)?;
    for x in g.elements(bound)? {
        let mut code = x.0.clone();
        code.extend_from_slice(&x.0);
        if restricted.eval(&Element(code)) != pointwise.eval(&x) {
            return Ok(false);
        }
    }
    Ok(true)
}
