//! Class functions with exact cyclotomic values and the character calculus:
//! linear characters, induction, restriction, inflation, pointwise products,
//! inner products, irreducibility, and decomposition.
//!
//! A class function either carries an explicit value table over an
//! enumerated domain or a pure evaluation rule, so characters of groups
//! too large to enumerate (the semidirect products with high-rank
//! elementary abelian bottom) still evaluate pointwise in time
//! proportional to the transversal length.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::{BigInt, One};

use crate::cyclotomic::{CycNumber, Rat};
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};
use crate::subgroup::{conjugacy_classes, ConjClass, GroupRef, Subgroup, SubgroupKind};

#[derive(Clone)]
enum CfValues {
    Table(Arc<BTreeMap<Element, CycNumber>>),
    Rule(Arc<dyn Fn(&Element) -> CycNumber + Send + Sync>),
}

/// A class function on a group or subgroup, with exact cyclotomic values.
#[derive(Clone)]
pub struct ClassFunction {
    domain: GroupRef,
    conductor: u64,
    values: CfValues,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mode = match self.values {
            CfValues::Table(_) => "table",
            CfValues::Rule(_) => "rule",
        };
        write!(f, "ClassFunction({} mode, conductor {})", mode, self.conductor)
    }
}

impl ClassFunction {
    pub fn from_fn<F>(domain: GroupRef, conductor: u64, f: F) -> ClassFunction
    where
        F: Fn(&Element) -> CycNumber + Send + Sync + 'static,
    {
        ClassFunction { domain, conductor, values: CfValues::Rule(Arc::new(f)) }
    }

    pub fn from_table(
        domain: GroupRef,
        conductor: u64,
        table: BTreeMap<Element, CycNumber>,
    ) -> ClassFunction {
        ClassFunction { domain, conductor, values: CfValues::Table(Arc::new(table)) }
    }

    pub fn trivial(domain: GroupRef) -> ClassFunction {
        ClassFunction::from_fn(domain, 1, |_| CycNumber::one())
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn eval(&self, g: &Element) -> CycNumber {
        match &self.values {
            CfValues::Table(t) => t
                .get(g)
                .unwrap_or_else(|| panic!("element {:?} outside tabulated domain", g))
                .clone(),
            CfValues::Rule(f) => f(g),
        }
    }

    pub fn degree(&self) -> CycNumber {
        self.eval(&self.domain.identity())
    }

    pub fn degree_int(&self) -> Result<i64> {
        self.degree().as_rational_integer()
    }

    pub fn values_on(&self, elems: &[Element]) -> Vec<CycNumber> {
        elems.iter().map(|g| self.eval(g)).collect()
    }

    /// Tabulate over the whole (enumerable) domain.
    pub fn materialize(&self, bound: u128) -> Result<ClassFunction> {
        if matches!(self.values, CfValues::Table(_)) {
            return Ok(self.clone());
        }
        let mut table = BTreeMap::new();
        for g in self.domain.elements(bound)? {
            let v = self.eval(&g);
            table.insert(g, v);
        }
        Ok(ClassFunction::from_table(self.domain.clone(), self.conductor, table))
    }

    /// Tabulate over the whole domain, evaluating once per conjugacy class.
    pub fn materialize_by_classes(
        &self,
        classes: &[(Element, Vec<Element>)],
    ) -> ClassFunction {
        let mut table = BTreeMap::new();
        for (rep, members) in classes {
            let v = self.eval(rep);
            for m in members {
                table.insert(m.clone(), v.clone());
            }
        }
        ClassFunction::from_table(self.domain.clone(), self.conductor, table)
    }

    pub fn eq_on(&self, other: &ClassFunction, elems: &[Element]) -> bool {
        elems.iter().all(|g| self.eval(g) == other.eval(g))
    }

    pub fn is_zero_on(&self, elems: &[Element]) -> bool {
        elems.iter().all(|g| self.eval(g).is_zero())
    }

    /// Pointwise product of class functions on the same domain.
    pub fn product(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.domain != other.domain {
            return Err(Error::GroupMismatch);
        }
        let a = self.clone();
        let b = other.clone();
        Ok(ClassFunction::from_fn(
            self.domain.clone(),
            num::integer::lcm(self.conductor, other.conductor),
            move |g| a.eval(g).mul(&b.eval(g)),
        ))
    }

    /// Integer linear combination `sum c_i chi_i` on a shared domain.
    pub fn linear_combination(terms: Vec<(ClassFunction, i64)>) -> Result<ClassFunction> {
        let domain = terms.first().ok_or(Error::GroupMismatch)?.0.domain.clone();
        let mut conductor = 1;
        for (t, _) in &terms {
            if t.domain != domain {
                return Err(Error::GroupMismatch);
            }
            conductor = num::integer::lcm(conductor, t.conductor);
        }
        Ok(ClassFunction::from_fn(domain, conductor, move |g| {
            let mut acc = CycNumber::zero();
            for (t, c) in &terms {
                let v = t.eval(g).scale(&Rat::from_integer(BigInt::from(*c)));
                acc = acc.add(&v);
            }
            acc
        }))
    }

    /// Value-wise restriction to a subgroup of the ambient group.
    pub fn restrict(&self, sub: &Subgroup) -> ClassFunction {
        let chi = self.clone();
        ClassFunction::from_fn(GroupRef::Sub(sub.clone()), self.conductor, move |g| chi.eval(g))
    }

    /// Spot-check constancy on conjugacy classes by conjugating sample
    /// elements with the given conjugators.
    pub fn spot_check_class_constant(&self, samples: &[Element], conjugators: &[Element]) -> bool {
        let g = self.domain.ambient();
        samples.iter().all(|x| {
            let v = self.eval(x);
            conjugators.iter().all(|h| self.eval(&g.conjugate(x, h)) == v)
        })
    }
}

/// The linear character of an elementary abelian group sending the given
/// basis point to a primitive p-th root of unity and every other basis
/// point to 1.
pub fn dual_basis_character(e: &FiniteGroup, basis_index: usize, p: u64) -> ClassFunction {
    ClassFunction::from_fn(GroupRef::Whole(e.clone()), p, move |g| {
        CycNumber::root_of_unity(p, g.0[basis_index] as i64)
    })
}

/// Inflation of a character of the top factor of `G = P x| E` to G:
/// the value at `s t` is the value of the input at `s`.
pub fn inflate(psi: &ClassFunction, g: &FiniteGroup) -> Result<ClassFunction> {
    let top = g.top_group()?.clone();
    match psi.domain() {
        GroupRef::Whole(p) if *p == top => {}
        _ => return Err(Error::NormalFormUnavailable),
    }
    let psi = psi.clone();
    let gg = g.clone();
    Ok(ClassFunction::from_fn(
        GroupRef::Whole(g.clone()),
        psi.conductor,
        move |x| psi.eval(&gg.top_part(x)),
    ))
}

/// The character of `QE` with value `phi(s) lambda(t)` at `s t`, defined
/// when every element of Q fixes lambda under the action of the ambient
/// semidirect product.
pub fn extend_over_stabilizer(
    phi: &ClassFunction,
    lambda: &ClassFunction,
    qe: &Subgroup,
) -> Result<ClassFunction> {
    let g = qe.parent().clone();
    let bottom = g.bottom_group()?.clone();
    let action = g.action()?.clone();
    let tops: Arc<Vec<Element>> = match qe.kind() {
        SubgroupKind::TopTimesBottom(tops) => tops.clone(),
        _ => return Err(Error::NormalFormUnavailable),
    };
    match lambda.domain() {
        GroupRef::Whole(e) if *e == bottom => {}
        _ => return Err(Error::GroupMismatch),
    }
    // Q must fix lambda: lambda is linear on the (abelian) bottom, so it
    // is enough to compare values on the bottom's generators.
    let top = g.top_group()?;
    for q in tops.iter() {
        let q_inv = top.inverse(q);
        for e in bottom.generators() {
            let moved = Element(action.apply(&g, &q_inv.0, &e.0));
            if lambda.eval(&moved) != lambda.eval(&e) {
                return Err(Error::StabilizerViolation(format!(
                    "top element {:?} moves the linear character",
                    q
                )));
            }
        }
    }
    let phi = phi.clone();
    let lambda = lambda.clone();
    let gg = g.clone();
    Ok(ClassFunction::from_fn(
        GroupRef::Sub(qe.clone()),
        num::integer::lcm(phi.conductor, lambda.conductor),
        move |x| {
            let s = gg.top_part(x);
            let t = gg.bottom_part(x);
            phi.eval(&s).mul(&lambda.eval(&t))
        },
    ))
}

/// Frobenius induction of a class function on a subgroup up to a target
/// domain in the same ambient group.
///
/// Uses a transversal sum when one is available (the value at `g` is the
/// sum of `mu(t^{-1} g t)` over transversal elements with the conjugate
/// inside the subgroup); falls back to averaging over the whole target
/// when that is enumerable.
pub fn induce(mu: &ClassFunction, target: &GroupRef, bound: u128) -> Result<ClassFunction> {
    let sub = match mu.domain() {
        GroupRef::Sub(s) => s.clone(),
        GroupRef::Whole(_) => return Err(Error::GroupMismatch),
    };
    if sub.parent() != target.ambient() {
        return Err(Error::GroupMismatch);
    }
    let ambient = target.ambient().clone();
    let conductor = mu.conductor;
    if let GroupRef::Whole(_) = target {
        if let Ok(transversal) = sub.left_transversal(bound) {
            let mu = mu.clone();
            return Ok(ClassFunction::from_fn(target.clone(), conductor, move |g| {
                let mut acc = CycNumber::zero();
                for t in &transversal {
                    let conj = ambient.conjugate(g, t);
                    if sub.contains(&conj) {
                        acc = acc.add(&mu.eval(&conj));
                    }
                }
                acc
            }));
        }
    }
    // Averaging form over an enumerable target.
    let elems = Arc::new(target.elements(bound)?);
    let mu = mu.clone();
    let h_order = Rat::new(BigInt::one(), BigInt::from(sub.order() as i64));
    Ok(ClassFunction::from_fn(target.clone(), conductor, move |g| {
        let mut acc = CycNumber::zero();
        for x in elems.iter() {
            let conj = ambient.conjugate(g, x);
            if sub.contains(&conj) {
                acc = acc.add(&mu.eval(&conj));
            }
        }
        acc.scale(&h_order)
    }))
}

/// Exact inner product `(1/|D|) sum_g a(g) conj(b(g))` over an enumerable
/// domain.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction, bound: u128) -> Result<CycNumber> {
    if a.domain() != b.domain() {
        return Err(Error::GroupMismatch);
    }
    let mut acc = CycNumber::zero();
    let elems = a.domain().elements(bound)?;
    for g in &elems {
        acc = acc.add(&a.eval(g).mul(&b.eval(g).conjugate()));
    }
    Ok(acc.scale(&Rat::new(BigInt::one(), BigInt::from(elems.len() as i64))))
}

/// Inner product computed class-wise from a precomputed class list.
pub fn inner_product_classwise(
    a: &ClassFunction,
    b: &ClassFunction,
    classes: &[ConjClass],
) -> Result<CycNumber> {
    if a.domain() != b.domain() {
        return Err(Error::GroupMismatch);
    }
    let mut acc = CycNumber::zero();
    let mut total = 0usize;
    for c in classes {
        let term = a.eval(&c.representative).mul(&b.eval(&c.representative).conjugate());
        acc = acc.add(&term.scale(&Rat::from_integer(BigInt::from(c.size as i64))));
        total += c.size;
    }
    Ok(acc.scale(&Rat::new(BigInt::one(), BigInt::from(total as i64))))
}

/// Inner product asserted to be a non-negative rational integer.
pub fn multiplicity(a: &ClassFunction, b: &ClassFunction, bound: u128) -> Result<u64> {
    let v = inner_product(a, b, bound)?;
    let n = v
        .as_rational_integer()
        .map_err(|_| Error::IntegralityViolation(v.to_string()))?;
    u64::try_from(n).map_err(|_| Error::IntegralityViolation(v.to_string()))
}

pub fn norm(chi: &ClassFunction, bound: u128) -> Result<CycNumber> {
    inner_product(chi, chi, bound)
}

/// Norm-1 criterion for irreducibility of characters.
pub fn is_irreducible(chi: &ClassFunction, bound: u128) -> Result<bool> {
    Ok(norm(chi, bound)? == CycNumber::one())
}

/// The decomposition of a character against a list of pairwise distinct
/// irreducibles: multiplicities plus the residual class function.
#[derive(Clone)]
pub struct Decomposition {
    pub constituents: Vec<(ClassFunction, u64)>,
    pub residual: ClassFunction,
}

impl Decomposition {
    /// Number of distinct irreducible constituents appearing.
    pub fn eta(&self) -> usize {
        self.constituents.len()
    }

    pub fn residual_is_zero(&self, bound: u128) -> Result<bool> {
        let elems = self.residual.domain().elements(bound)?;
        Ok(self.residual.is_zero_on(&elems))
    }
}

pub fn decompose_against(
    chi: &ClassFunction,
    candidates: &[ClassFunction],
    bound: u128,
) -> Result<Decomposition> {
    let mut constituents = Vec::new();
    let mut terms = vec![(chi.clone(), 1i64)];
    for phi in candidates {
        let n = multiplicity(chi, phi, bound)?;
        if n > 0 {
            constituents.push((phi.clone(), n));
            terms.push((phi.clone(), -(n as i64)));
        }
    }
    let residual = ClassFunction::linear_combination(terms)?;
    Ok(Decomposition { constituents, residual })
}

fn dual_of_enumerated_abelian(
    elements: &[Element],
    mul: &dyn Fn(&Element, &Element) -> Element,
    identity: &Element,
    exponent: u64,
) -> Vec<HashMap<Element, u64>> {
    // Extend characters one generator at a time: each character of the
    // current subgroup S extends in exactly d ways across <S, g> where d
    // is the relative order of g over S.
    let mut sub: BTreeMap<Element, ()> = BTreeMap::new();
    sub.insert(identity.clone(), ());
    let mut chars: Vec<HashMap<Element, u64>> = vec![HashMap::from([(identity.clone(), 0)])];
    for g in elements {
        if sub.contains_key(g) {
            continue;
        }
        let mut d = 1u64;
        let mut power = g.clone();
        while !sub.contains_key(&power) {
            power = mul(&power, g);
            d += 1;
        }
        // power = g^d lies in S
        let mut next_chars = Vec::with_capacity(chars.len() * d as usize);
        for chi in &chars {
            let a = chi[&power];
            for x in 0..exponent {
                if (d * x) % exponent != a {
                    continue;
                }
                let mut ext: HashMap<Element, u64> = HashMap::new();
                let mut g_pow = identity.clone();
                for i in 0..d {
                    for (s, &e) in chi.iter() {
                        ext.insert(mul(&g_pow, s), (x * i + e) % exponent);
                    }
                    g_pow = mul(&g_pow, g);
                }
                next_chars.push(ext);
            }
        }
        chars = next_chars;
        let mut next_sub = BTreeMap::new();
        let mut g_pow = identity.clone();
        for _ in 0..d {
            for s in sub.keys() {
                next_sub.insert(mul(&g_pow, s), ());
            }
            g_pow = mul(&g_pow, g);
        }
        sub = next_sub;
    }
    debug_assert_eq!(chars.len(), elements.len());
    chars
}

/// All linear characters of an abelian domain, trivial character first,
/// in a deterministic order.
pub fn linear_characters(domain: &GroupRef, bound: u128) -> Result<Vec<ClassFunction>> {
    if !domain.is_abelian(bound)? {
        return Err(Error::NotAbelian);
    }
    let elems = domain.elements(bound)?;
    let exponent = domain.exponent(bound)?;
    let g = domain.ambient().clone();
    let mul = move |a: &Element, b: &Element| g.mul(a, b);
    let mut duals =
        dual_of_enumerated_abelian(&elems, &mul, &domain.identity(), exponent);
    duals.sort_by_key(|chi| elems.iter().map(|e| chi[e]).collect::<Vec<u64>>());
    Ok(duals
        .into_iter()
        .map(|chi| {
            let table: BTreeMap<Element, CycNumber> = chi
                .into_iter()
                .map(|(e, exp)| (e, CycNumber::root_of_unity(exponent, exp as i64)))
                .collect();
            ClassFunction::from_table(domain.clone(), exponent, table)
        })
        .collect())
}

/// Linear characters of a possibly nonabelian enumerable domain, via the
/// quotient by the derived subgroup.
pub fn linear_characters_via_derived(domain: &GroupRef, bound: u128) -> Result<Vec<ClassFunction>> {
    let elems = domain.elements(bound)?;
    let g = domain.ambient().clone();
    // Derived subgroup: closure of all commutators.
    let mut comms: BTreeMap<Element, ()> = BTreeMap::new();
    for a in &elems {
        for b in &elems {
            comms.insert(g.commutator(a, b), ());
        }
    }
    let derived: Vec<Element> = {
        let gens: Vec<Element> = comms.into_keys().collect();
        crate::subgroup::subgroup_generated(&g, &gens, bound)?.elements(bound)?
    };
    let canon = {
        let g = g.clone();
        let derived = derived.clone();
        move |x: &Element| -> Element { derived.iter().map(|d| g.mul(x, d)).min().unwrap() }
    };
    let mut reps: BTreeMap<Element, ()> = BTreeMap::new();
    for e in &elems {
        reps.insert(canon(e), ());
    }
    let reps: Vec<Element> = reps.into_keys().collect();
    let gq = g.clone();
    let canon2 = canon.clone();
    let mul_q = move |a: &Element, b: &Element| canon2(&gq.mul(a, b));
    let id_q = canon(&domain.identity());
    // Quotient exponent: lcm of element orders under quotient multiplication.
    let mut exponent = 1u64;
    for r in &reps {
        let mut acc = r.clone();
        let mut k = 1u64;
        while acc != id_q {
            acc = mul_q(&acc, r);
            k += 1;
        }
        exponent = num::integer::lcm(exponent, k);
    }
    let mut duals = dual_of_enumerated_abelian(&reps, &mul_q, &id_q, exponent);
    duals.sort_by_key(|chi| reps.iter().map(|e| chi[e]).collect::<Vec<u64>>());
    Ok(duals
        .into_iter()
        .map(|chi| {
            let table: BTreeMap<Element, CycNumber> = elems
                .iter()
                .map(|e| {
                    (e.clone(), CycNumber::root_of_unity(exponent, chi[&canon(e)] as i64))
                })
                .collect();
            ClassFunction::from_table(domain.clone(), exponent, table)
        })
        .collect())
}

/// All irreducible characters of a small p-group, by inducing linear
/// characters from abelian subgroups generated by at most two elements.
/// Succeeds only when the collected set is certified complete (count
/// equals the class number and the degree squares sum to the order).
pub fn irr_small_pgroup(domain: &GroupRef, order_bound: u128) -> Result<Vec<ClassFunction>> {
    let n = domain.order();
    if n > order_bound {
        return Err(Error::EnumerationBoundExceeded { needed: n, bound: order_bound });
    }
    let bound = order_bound;
    let classes = conjugacy_classes(domain, bound)?;
    let class_members = conjugacy_classes_with_members(domain, bound)?;
    let reps: Vec<Element> = classes.iter().map(|c| c.representative.clone()).collect();
    let target_count = classes.len();

    let mut irrs: Vec<ClassFunction> = Vec::new();
    let mut rep_values: Vec<Vec<CycNumber>> = Vec::new();
    let push_unique = |cf: ClassFunction,
                           irrs: &mut Vec<ClassFunction>,
                           rep_values: &mut Vec<Vec<CycNumber>>| {
        let vals = cf.values_on(&reps);
        if !rep_values.iter().any(|v| *v == vals) {
            rep_values.push(vals);
            irrs.push(cf);
        }
    };

    let lin = if domain.is_abelian(bound)? {
        linear_characters(domain, bound)?
    } else {
        linear_characters_via_derived(domain, bound)?
    };
    for chi in lin {
        push_unique(chi.materialize_by_classes(&class_members), &mut irrs, &mut rep_values);
    }

    let complete = |irrs: &[ClassFunction]| -> Result<bool> {
        if irrs.len() != target_count {
            return Ok(false);
        }
        let mut sum = 0u128;
        for chi in irrs {
            let d = chi.degree_int()? as u128;
            sum += d * d;
        }
        Ok(sum == n)
    };
    if complete(&irrs)? {
        return Ok(sort_characters(irrs, &reps));
    }

    // Candidate abelian subgroups from one or two commuting generators,
    // larger subgroups first so low-degree induced characters come early.
    let elems = domain.elements(bound)?;
    let g = domain.ambient().clone();
    let mut seen_subgroups: BTreeMap<Vec<Element>, ()> = BTreeMap::new();
    let mut candidates: Vec<Vec<Element>> = Vec::new();
    let consider = |gens: Vec<Element>,
                        seen: &mut BTreeMap<Vec<Element>, ()>,
                        out: &mut Vec<Vec<Element>>| {
        if let Ok(sub) = crate::subgroup::subgroup_generated(&g, &gens, bound) {
            if sub.order() < n {
                if let Ok(list) = sub.elements(bound) {
                    if list.iter().all(|e| domain.contains(e)) && !seen.contains_key(&list) {
                        seen.insert(list.clone(), ());
                        out.push(list);
                    }
                }
            }
        }
    };
    for a in &elems {
        consider(vec![a.clone()], &mut seen_subgroups, &mut candidates);
    }
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if g.mul(a, b) == g.mul(b, a) {
                consider(vec![a.clone(), b.clone()], &mut seen_subgroups, &mut candidates);
            }
        }
    }
    candidates.sort_by_key(|list| std::cmp::Reverse(list.len()));

    for list in candidates {
        let sub = Subgroup::from_sorted_elements(&g, list);
        let sub_ref = GroupRef::Sub(sub);
        for mu in linear_characters(&sub_ref, bound)? {
            let ind = induce(&mu, domain, bound)?;
            let ind = ind.materialize_by_classes(&class_members);
            if inner_product_classwise(&ind, &ind, &classes)? == CycNumber::one() {
                push_unique(ind, &mut irrs, &mut rep_values);
            }
        }
        if complete(&irrs)? {
            return Ok(sort_characters(irrs, &reps));
        }
    }
    Err(Error::IncompleteIrrSet { found: irrs.len(), expected: target_count })
}

fn sort_characters(mut irrs: Vec<ClassFunction>, reps: &[Element]) -> Vec<ClassFunction> {
    irrs.sort_by_key(|chi| {
        let vals: Vec<String> = chi.values_on(reps).iter().map(|v| v.to_string()).collect();
        (chi.degree_int().unwrap_or(i64::MAX), vals)
    });
    irrs
}

/// Class partition including full member lists.
pub fn conjugacy_classes_with_members(
    domain: &GroupRef,
    bound: u128,
) -> Result<Vec<(Element, Vec<Element>)>> {
    let elems = domain.elements(bound)?;
    let g = domain.ambient();
    let mut assigned: std::collections::HashSet<Element> = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in &elems {
        if assigned.contains(x) {
            continue;
        }
        let mut orbit: std::collections::BTreeSet<Element> = std::collections::BTreeSet::new();
        for h in &elems {
            orbit.insert(g.conjugate(x, h));
        }
        for y in &orbit {
            assigned.insert(y.clone());
        }
        let members: Vec<Element> = orbit.into_iter().collect();
        out.push((members[0].clone(), members));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::subgroup_generated;

    const B: u128 = 1 << 20;

    #[test]
    fn linear_characters_cyclic_3() {
        let c3 = GroupRef::Whole(FiniteGroup::cyclic(3));
        let chars = linear_characters(&c3, B).unwrap();
        assert_eq!(chars.len(), 3);
        let gen = Element(vec![1]);
        let mut at_gen: Vec<CycNumber> = chars.iter().map(|c| c.eval(&gen)).collect();
        // trivial first, then zeta_3 and zeta_3^2 in some order
        assert_eq!(at_gen.remove(0), CycNumber::one());
        assert!(at_gen.contains(&CycNumber::root_of_unity(3, 1)));
        assert!(at_gen.contains(&CycNumber::root_of_unity(3, 2)));
    }

    #[test]
    fn linear_characters_trivial_and_klein() {
        let t = GroupRef::Whole(FiniteGroup::cyclic(1));
        assert_eq!(linear_characters(&t, B).unwrap().len(), 1);
        let klein = GroupRef::Whole(FiniteGroup::direct_power(&FiniteGroup::cyclic(2), 2));
        let chars = linear_characters(&klein, B).unwrap();
        assert_eq!(chars.len(), 4);
        for chi in &chars {
            for g in klein.elements(B).unwrap() {
                let v = chi.eval(&g);
                assert!(v == CycNumber::one() || v == CycNumber::from_integer(-1));
            }
        }
    }

    #[test]
    fn linear_characters_not_abelian() {
        let p = GroupRef::Whole(FiniteGroup::wreath_cyclic(2, 1, 1).unwrap());
        assert!(matches!(linear_characters(&p, B), Err(Error::NotAbelian)));
    }

    #[test]
    fn character_orthogonality_cyclic() {
        let c3 = GroupRef::Whole(FiniteGroup::cyclic(3));
        let chars = linear_characters(&c3, B).unwrap();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip = inner_product(a, b, B).unwrap();
                let expect = if i == j { CycNumber::one() } else { CycNumber::zero() };
                assert_eq!(ip, expect);
            }
        }
    }

    #[test]
    fn dual_basis_character_values() {
        let e = FiniteGroup::elementary_abelian(3, 2);
        let lam = dual_basis_character(&e, 0, 3);
        assert_eq!(lam.eval(&Element(vec![1, 0])), CycNumber::root_of_unity(3, 1));
        assert_eq!(lam.eval(&Element(vec![0, 1])), CycNumber::one());
        assert_eq!(lam.eval(&Element(vec![0, 0])), CycNumber::one());
        // homomorphism on a product of distinct basis points
        assert_eq!(lam.eval(&Element(vec![1, 1])), CycNumber::root_of_unity(3, 1));
    }

    #[test]
    fn induce_from_whole_is_identity() {
        let g = FiniteGroup::cyclic(4);
        let whole = Subgroup::whole(&g, B).unwrap();
        let chars = linear_characters(&GroupRef::Whole(g.clone()), B).unwrap();
        let chi = chars[1].restrict(&whole);
        let ind = induce(&chi, &GroupRef::Whole(g.clone()), B).unwrap();
        let elems = g.elements(B).unwrap();
        assert!(ind.eq_on(&chars[1], &elems));
    }

    #[test]
    fn induce_regular_character() {
        let g = FiniteGroup::cyclic(2);
        let triv = Subgroup::trivial(&g);
        let one = ClassFunction::trivial(GroupRef::Sub(triv));
        let reg = induce(&one, &GroupRef::Whole(g.clone()), B).unwrap();
        assert_eq!(reg.eval(&Element(vec![0])), CycNumber::from_integer(2));
        assert_eq!(reg.eval(&Element(vec![1])), CycNumber::zero());
    }

    #[test]
    fn restrict_trivial_is_trivial() {
        let g = FiniteGroup::cyclic(9);
        let h = subgroup_generated(&g, &[Element(vec![3])], B).unwrap();
        let one = ClassFunction::trivial(GroupRef::Whole(g.clone()));
        let r = one.restrict(&h);
        for e in h.elements(B).unwrap() {
            assert_eq!(r.eval(&e), CycNumber::one());
        }
    }

    #[test]
    fn product_with_trivial_is_identity() {
        let gr = GroupRef::Whole(FiniteGroup::cyclic(5));
        let chars = linear_characters(&gr, B).unwrap();
        let one = ClassFunction::trivial(gr.clone());
        let p = chars[2].product(&one).unwrap();
        assert!(p.eq_on(&chars[2], &gr.elements(B).unwrap()));
        // two degree-1 characters multiply to a degree-1 character
        let q = chars[1].product(&chars[2]).unwrap();
        assert_eq!(q.degree_int().unwrap(), 1);
    }

    #[test]
    fn irr_wreath_2_1_1() {
        let p = GroupRef::Whole(FiniteGroup::wreath_cyclic(2, 1, 1).unwrap());
        let irrs = irr_small_pgroup(&p, 512).unwrap();
        let mut degrees: Vec<i64> =
            irrs.iter().map(|c| c.degree_int().unwrap()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
        // first orthogonality
        for (i, a) in irrs.iter().enumerate() {
            for (j, b) in irrs.iter().enumerate() {
                let ip = inner_product(a, b, B).unwrap();
                let expect = if i == j { CycNumber::one() } else { CycNumber::zero() };
                assert_eq!(ip, expect, "orthogonality failed at ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn irr_guard_large_group() {
        let p = GroupRef::Whole(FiniteGroup::cyclic(1024));
        assert!(matches!(
            irr_small_pgroup(&p, 512),
            Err(Error::EnumerationBoundExceeded { .. })
        ));
    }

    #[test]
    fn irr_abelian_is_linear() {
        let a = GroupRef::Whole(FiniteGroup::cyclic(8));
        let irrs = irr_small_pgroup(&a, 512).unwrap();
        assert_eq!(irrs.len(), 8);
        assert!(irrs.iter().all(|c| c.degree_int().unwrap() == 1));
    }

    #[test]
    fn decompose_recovers_candidate() {
        let gr = GroupRef::Whole(FiniteGroup::cyclic(4));
        let chars = linear_characters(&gr, B).unwrap();
        let d = decompose_against(&chars[1], &chars, B).unwrap();
        assert_eq!(d.eta(), 1);
        assert_eq!(d.constituents[0].1, 1);
        assert!(d.residual_is_zero(B).unwrap());
        // orthogonal input: all multiplicities zero, residual = input
        let d = decompose_against(&chars[2], &[chars[1].clone()], B).unwrap();
        assert_eq!(d.eta(), 0);
        assert!(!d.residual_is_zero(B).unwrap());
    }

    #[test]
    fn inflate_constant_on_cosets() {
        let p = FiniteGroup::wreath_cyclic(2, 1, 1).unwrap();
        let one = ClassFunction::trivial(GroupRef::Whole(p.top_group().unwrap().clone()));
        let inf = inflate(&one, &p).unwrap();
        for g in p.elements(B).unwrap() {
            assert_eq!(inf.eval(&g), CycNumber::one());
        }
    }
}
