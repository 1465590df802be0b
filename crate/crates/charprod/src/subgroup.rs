//! Subgroups, coset actions, conjugacy classes, and the shared
//! group-or-subgroup evaluation domain used by the character engine.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};

/// A subgroup of a concrete group. Element codes are always codes of the
/// parent, so the parent's multiplication rule applies unchanged.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FiniteGroup,
    kind: SubgroupKind,
    order: u128,
}

#[derive(Clone, Debug)]
pub enum SubgroupKind {
    /// Explicit sorted element list.
    Listed(Arc<Vec<Element>>),
    /// The embedded bottom factor of a semidirect-product parent.
    Bottom,
    /// `{ s t : s in the listed top subset, t in the bottom }` inside a
    /// semidirect-product parent; the listed elements are top-group codes.
    /// This is the stabilizer subgroup QE used by the induced characters.
    TopTimesBottom(Arc<Vec<Element>>),
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Subgroup) -> bool {
        if self.parent != other.parent || self.order != other.order {
            return false;
        }
        match (&self.kind, &other.kind) {
            (SubgroupKind::Listed(a), SubgroupKind::Listed(b)) => a == b,
            (SubgroupKind::Bottom, SubgroupKind::Bottom) => true,
            (SubgroupKind::TopTimesBottom(a), SubgroupKind::TopTimesBottom(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn from_sorted_elements(parent: &FiniteGroup, mut elements: Vec<Element>) -> Subgroup {
        elements.sort();
        elements.dedup();
        let order = elements.len() as u128;
        Subgroup { parent: parent.clone(), kind: SubgroupKind::Listed(Arc::new(elements)), order }
    }

    pub fn whole(parent: &FiniteGroup, bound: u128) -> Result<Subgroup> {
        Ok(Subgroup::from_sorted_elements(parent, parent.elements(bound)?))
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        Subgroup::from_sorted_elements(parent, vec![parent.identity()])
    }

    /// The embedded bottom (normal) factor of a semidirect parent.
    pub fn bottom(parent: &FiniteGroup) -> Result<Subgroup> {
        let order = parent.bottom_group()?.order();
        Ok(Subgroup { parent: parent.clone(), kind: SubgroupKind::Bottom, order })
    }

    /// The subgroup `Q . E` of a semidirect parent `P x| E`, given the
    /// elements of `Q` as top-group codes.
    pub fn top_times_bottom(parent: &FiniteGroup, top_elements: Vec<Element>) -> Result<Subgroup> {
        let bottom = parent.bottom_group()?.order();
        let mut tops = top_elements;
        tops.sort();
        tops.dedup();
        let order = tops.len() as u128 * bottom;
        Ok(Subgroup {
            parent: parent.clone(),
            kind: SubgroupKind::TopTimesBottom(Arc::new(tops)),
            order,
        })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn kind(&self) -> &SubgroupKind {
        &self.kind
    }

    pub fn index(&self) -> u128 {
        self.parent.order() / self.order
    }

    pub fn contains(&self, g: &Element) -> bool {
        match &self.kind {
            SubgroupKind::Listed(elems) => elems.binary_search(g).is_ok(),
            SubgroupKind::Bottom => {
                let k = self.parent.top_group().unwrap().slot_count();
                g.0[..k].iter().all(|&v| v == 0)
            }
            SubgroupKind::TopTimesBottom(tops) => {
                let k = self.parent.top_group().unwrap().slot_count();
                tops.binary_search(&Element(g.0[..k].to_vec())).is_ok()
            }
        }
    }

    /// Sorted element list (parent codes). Errors when the subgroup is too
    /// large to enumerate.
    pub fn elements(&self, bound: u128) -> Result<Vec<Element>> {
        if self.order > bound {
            return Err(Error::EnumerationBoundExceeded { needed: self.order, bound });
        }
        match &self.kind {
            SubgroupKind::Listed(elems) => Ok(elems.as_ref().clone()),
            SubgroupKind::Bottom => {
                let bottom = self.parent.bottom_group()?;
                let mut out: Vec<Element> = bottom
                    .elements(bound)?
                    .iter()
                    .map(|t| self.parent.embed_bottom(t))
                    .collect();
                out.sort();
                Ok(out)
            }
            SubgroupKind::TopTimesBottom(tops) => {
                let bottom = self.parent.bottom_group()?;
                let mut out = Vec::new();
                for s in tops.iter() {
                    for t in bottom.elements(bound)? {
                        let mut code = s.0.clone();
                        code.extend_from_slice(&t.0);
                        out.push(Element(code));
                    }
                }
                out.sort();
                Ok(out)
            }
        }
    }

    /// A left transversal: elements `t` with the parent equal to the
    /// disjoint union of the cosets `t H`.
    pub fn left_transversal(&self, index_bound: u128) -> Result<Vec<Element>> {
        if self.index() > index_bound {
            return Err(Error::EnumerationBoundExceeded { needed: self.index(), bound: index_bound });
        }
        match &self.kind {
            SubgroupKind::Bottom => {
                // P x| E = disjoint union of (s, 0) E over top elements s.
                let top = self.parent.top_group()?;
                Ok(top
                    .elements(index_bound)?
                    .iter()
                    .map(|s| self.parent.embed_top(s))
                    .collect())
            }
            SubgroupKind::TopTimesBottom(tops) => {
                // G = P E and QE contains E, so G/QE is carried by P/Q.
                let top = self.parent.top_group()?;
                let q = Subgroup::from_sorted_elements(top, tops.as_ref().clone());
                let table = CosetTable::build(top, &q, index_bound as usize)?;
                Ok(table
                    .points()
                    .iter()
                    .map(|r| self.parent.embed_top(&top.inverse(r)))
                    .collect())
            }
            SubgroupKind::Listed(_) => {
                let table = CosetTable::build(&self.parent, self, index_bound as usize)?;
                Ok(table.points().iter().map(|r| self.parent.inverse(r)).collect())
            }
        }
    }
}

/// Closure of a generating set under multiplication.
pub fn subgroup_generated(
    parent: &FiniteGroup,
    gens: &[Element],
    bound: u128,
) -> Result<Subgroup> {
    assert!(!gens.is_empty(), "generator list must be nonempty");
    let mut seen: BTreeSet<Element> = BTreeSet::new();
    seen.insert(parent.identity());
    let mut queue: VecDeque<Element> = VecDeque::new();
    queue.push_back(parent.identity());
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = parent.mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() as u128 > bound {
                    return Err(Error::EnumerationBoundExceeded {
                        needed: seen.len() as u128,
                        bound,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(Subgroup::from_sorted_elements(parent, seen.into_iter().collect()))
}

/// The diagonal subgroup D(G) = { (g, g) } of G x G, with the copy of G
/// it is isomorphic to.
pub fn diagonal_subgroup(g: &FiniteGroup, bound: u128) -> Result<(FiniteGroup, Subgroup)> {
    let gg = FiniteGroup::direct_product(g, g);
    let elems: Vec<Element> = g
        .elements(bound)?
        .into_iter()
        .map(|x| {
            let mut code = x.0.clone();
            code.extend_from_slice(&x.0);
            Element(code)
        })
        .collect();
    Ok((gg.clone(), Subgroup::from_sorted_elements(&gg, elems)))
}

/// Transitive right-coset action of a group on the cosets of a listed
/// subgroup. Point 0 is the coset of the subgroup itself; the canonical
/// label of a coset is its minimal element code.
#[derive(Debug)]
pub struct CosetTable {
    group: FiniteGroup,
    subgroup_elements: Vec<Element>,
    points: Vec<Element>,
    index: HashMap<Element, usize>,
    // point permutations per acting element; the hot path of the
    // semidirect action evaluates the same few conjugators repeatedly
    perms: std::sync::Mutex<HashMap<Element, Arc<Vec<usize>>>>,
}

impl CosetTable {
    pub fn build(group: &FiniteGroup, subgroup: &Subgroup, rank_bound: usize) -> Result<CosetTable> {
        let sub_elems = subgroup.elements(1 << 21)?;
        Self::build_from_elements(group, sub_elems, rank_bound)
    }

    pub fn build_from_elements(
        group: &FiniteGroup,
        subgroup_elements: Vec<Element>,
        rank_bound: usize,
    ) -> Result<CosetTable> {
        let mut sub = subgroup_elements;
        sub.sort();
        sub.dedup();
        let canon = |g: &Element| -> Element {
            sub.iter().map(|h| group.mul(h, g)).min().unwrap()
        };
        let mut gens = group.generators();
        let invs: Vec<Element> = gens.iter().map(|g| group.inverse(g)).collect();
        gens.extend(invs);
        let base = canon(&group.identity());
        let mut points = vec![base.clone()];
        let mut index = HashMap::new();
        index.insert(base, 0usize);
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let rep = canon(&group.mul(&points[i], g));
                if !index.contains_key(&rep) {
                    if points.len() >= rank_bound {
                        return Err(Error::EnumerationBoundExceeded {
                            needed: points.len() as u128 + 1,
                            bound: rank_bound as u128,
                        });
                    }
                    index.insert(rep.clone(), points.len());
                    queue.push_back(points.len());
                    points.push(rep);
                }
            }
        }
        Ok(CosetTable {
            group: group.clone(),
            subgroup_elements: sub,
            points,
            index,
            perms: std::sync::Mutex::new(HashMap::new()),
        })
    }

    pub fn points(&self) -> &[Element] {
        &self.points
    }

    pub fn subgroup_elements(&self) -> &[Element] {
        &self.subgroup_elements
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Image of point `i` under the left action `sigma . (Hg) = H g sigma^{-1}`.
    pub fn point_image(&self, sigma: &Element, i: usize) -> usize {
        self.permutation(sigma)[i]
    }

    /// The full point permutation of one acting element, cached.
    pub fn permutation(&self, sigma: &Element) -> Arc<Vec<usize>> {
        if let Some(p) = self.perms.lock().unwrap().get(sigma) {
            return p.clone();
        }
        let sigma_inv = self.group.inverse(sigma);
        let images: Vec<usize> = self
            .points
            .iter()
            .map(|pt| {
                let moved = self.group.mul(pt, &sigma_inv);
                let rep = self
                    .subgroup_elements
                    .iter()
                    .map(|h| self.group.mul(h, &moved))
                    .min()
                    .unwrap();
                self.index[&rep]
            })
            .collect();
        let images = Arc::new(images);
        self.perms.lock().unwrap().insert(sigma.clone(), images.clone());
        images
    }

    /// Elements of the whole group fixing the base point; this is exactly
    /// the subgroup when the table is consistent.
    pub fn base_stabilizer(&self, bound: u128) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        for g in self.group.elements(bound)? {
            if self.point_image(&g, 0) == 0 {
                out.push(g);
            }
        }
        Ok(out)
    }
}

/// An evaluation domain for class functions: either a whole group or a
/// subgroup of one. Element codes always belong to the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupRef {
    Whole(FiniteGroup),
    Sub(Subgroup),
}

impl GroupRef {
    pub fn ambient(&self) -> &FiniteGroup {
        match self {
            GroupRef::Whole(g) => g,
            GroupRef::Sub(s) => s.parent(),
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            GroupRef::Whole(g) => g.order(),
            GroupRef::Sub(s) => s.order(),
        }
    }

    pub fn identity(&self) -> Element {
        self.ambient().identity()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.ambient().mul(a, b)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        self.ambient().inverse(a)
    }

    pub fn contains(&self, g: &Element) -> bool {
        match self {
            GroupRef::Whole(grp) => g.0.iter().zip(grp.radices()).all(|(v, r)| v < r),
            GroupRef::Sub(s) => s.contains(g),
        }
    }

    pub fn elements(&self, bound: u128) -> Result<Vec<Element>> {
        match self {
            GroupRef::Whole(g) => g.elements(bound),
            GroupRef::Sub(s) => s.elements(bound),
        }
    }

    pub fn is_abelian(&self, bound: u128) -> Result<bool> {
        match self {
            GroupRef::Whole(g) => Ok(g.is_abelian()),
            GroupRef::Sub(s) => {
                let elems = s.elements(bound)?;
                let g = s.parent();
                for (i, a) in elems.iter().enumerate() {
                    for b in &elems[i + 1..] {
                        if g.mul(a, b) != g.mul(b, a) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn exponent(&self, bound: u128) -> Result<u64> {
        match self {
            GroupRef::Whole(g) => g.exponent(bound),
            GroupRef::Sub(s) => {
                let mut e = 1u64;
                for g in s.elements(bound)? {
                    e = num::integer::lcm(e, s.parent().order_of(&g));
                }
                Ok(e)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Element,
    pub size: usize,
}

/// Brute-force conjugation-orbit partition. Representatives are the
/// minimal codes in each class; classes come out sorted by representative.
pub fn conjugacy_classes(domain: &GroupRef, bound: u128) -> Result<Vec<ConjClass>> {
    let elems = domain.elements(bound)?;
    let g = domain.ambient();
    let mut assigned: HashSet<Element> = HashSet::with_capacity(elems.len());
    let mut classes = Vec::new();
    for x in &elems {
        if assigned.contains(x) {
            continue;
        }
        let mut orbit: BTreeSet<Element> = BTreeSet::new();
        for h in &elems {
            orbit.insert(g.conjugate(x, h));
        }
        for y in &orbit {
            assigned.insert(y.clone());
        }
        classes.push(ConjClass { representative: orbit.iter().next().unwrap().clone(), size: orbit.len() });
    }
    debug_assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), elems.len());
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_subgroup_orders() {
        let c9 = FiniteGroup::cyclic(9);
        let s = subgroup_generated(&c9, &[Element(vec![3])], 1 << 10).unwrap();
        assert_eq!(s.order(), 3);
        let s = subgroup_generated(&c9, &[c9.identity()], 1 << 10).unwrap();
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn q_in_wreath_2_1_1() {
        // q = (c, 1) embedded in P = Z2 wr Z2: code (0 | 1, 0).
        let p = FiniteGroup::wreath_cyclic(2, 1, 1).unwrap();
        let q = Element(vec![0, 1, 0]);
        let sub = subgroup_generated(&p, &[q], 1 << 10).unwrap();
        assert_eq!(sub.order(), 2);
    }

    #[test]
    fn abelian_singleton_classes() {
        let g = GroupRef::Whole(FiniteGroup::cyclic(12));
        let classes = conjugacy_classes(&g, 1 << 10).unwrap();
        assert_eq!(classes.len(), 12);
        assert!(classes.iter().all(|c| c.size == 1));
    }

    #[test]
    fn wreath_2_1_1_classes() {
        let p = FiniteGroup::wreath_cyclic(2, 1, 1).unwrap();
        let classes = conjugacy_classes(&GroupRef::Whole(p.clone()), 1 << 10).unwrap();
        assert_eq!(classes.len(), 5);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        for c in &classes {
            assert_eq!(p.order() as usize % c.size, 0);
        }
    }

    #[test]
    fn coset_table_wreath() {
        let p = FiniteGroup::wreath_cyclic(2, 1, 1).unwrap();
        let q = subgroup_generated(&p, &[Element(vec![0, 1, 0])], 1 << 10).unwrap();
        let table = CosetTable::build(&p, &q, 64).unwrap();
        assert_eq!(table.points().len(), 4);
        let stab = table.base_stabilizer(1 << 10).unwrap();
        assert_eq!(stab, q.elements(1 << 10).unwrap());
    }

    #[test]
    fn coset_table_degenerate() {
        let p = FiniteGroup::wreath_cyclic(2, 1, 1).unwrap();
        // Q = P: a single point.
        let whole = Subgroup::whole(&p, 1 << 10).unwrap();
        let table = CosetTable::build(&p, &whole, 64).unwrap();
        assert_eq!(table.points().len(), 1);
        // Q trivial: regular action.
        let table = CosetTable::build(&p, &Subgroup::trivial(&p), 64).unwrap();
        assert_eq!(table.points().len(), 8);
    }

    #[test]
    fn diagonal_subgroup_matches_group() {
        let g = FiniteGroup::cyclic(5);
        let (gg, d) = diagonal_subgroup(&g, 1 << 10).unwrap();
        assert_eq!(d.order(), 5);
        let a = Element(vec![2, 2]);
        let b = Element(vec![4, 4]);
        assert_eq!(gg.mul(&a, &b), Element(vec![1, 1]));
        assert!(d.contains(&a));
        assert!(!d.contains(&Element(vec![1, 2])));
    }

    #[test]
    fn transversal_covers_group() {
        let p = FiniteGroup::wreath_cyclic(2, 1, 1).unwrap();
        let n = Subgroup::bottom(&p).unwrap();
        let t = n.left_transversal(64).unwrap();
        assert_eq!(t.len(), 2);
        let mut all: BTreeSet<Element> = BTreeSet::new();
        for t in &t {
            for h in n.elements(1 << 10).unwrap() {
                all.insert(p.mul(t, &h));
            }
        }
        assert_eq!(all.len(), 8);
    }
}
