//! Concrete finite groups with canonical mixed-radix element encodings.
//!
//! Elements are fixed-length integer tuples; multiplication is a rule
//! determined by the group's shape, never a stored table, so groups whose
//! order does not fit in memory (the semidirect products built from
//! high-rank elementary abelian modules) still have O(1) arithmetic per
//! element.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::subgroup::CosetTable;

/// Canonical element encoding: one integer per slot, each strictly below
/// the radix the owning group assigns to that slot. Equal group elements
/// have identical codes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(pub Vec<u64>);

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// How the top factor of a semidirect product acts on the bottom factor,
/// as a left action by automorphisms: `apply(s, t) = s t s^{-1}`.
#[derive(Clone)]
pub enum Action {
    /// Direct product.
    Trivial,
    /// Cyclic top of order n permuting the n identical blocks of the
    /// bottom: `(a^k . h)_i = h_{(i+k) mod n}`.
    CycleCoords,
    /// Top permuting the coordinates of an elementary abelian bottom
    /// through its action on the right cosets of a subgroup.
    CosetPerm(Arc<CosetTable>),
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Trivial => write!(f, "Trivial"),
            Action::CycleCoords => write!(f, "CycleCoords"),
            Action::CosetPerm(t) => write!(f, "CosetPerm({} points)", t.points().len()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Shape {
    Cyclic(u64),
    Product(Vec<FiniteGroup>),
    Semidirect {
        top: FiniteGroup,
        bottom: FiniteGroup,
        action: Action,
    },
}

#[derive(Debug)]
struct GroupData {
    shape: Shape,
    radices: Vec<u64>,
    order: u128,
}

/// A concrete finite group. Cheap to clone; all state is immutable.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || shapes_eq(self.shape(), other.shape())
    }
}
impl Eq for FiniteGroup {}

fn shapes_eq(a: &Shape, b: &Shape) -> bool {
    match (a, b) {
        (Shape::Cyclic(n), Shape::Cyclic(m)) => n == m,
        (Shape::Product(xs), Shape::Product(ys)) => {
            xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x == y)
        }
        (
            Shape::Semidirect { top: t1, bottom: b1, action: a1 },
            Shape::Semidirect { top: t2, bottom: b2, action: a2 },
        ) => t1 == t2 && b1 == b2 && actions_eq(a1, a2),
        _ => false,
    }
}

fn actions_eq(a: &Action, b: &Action) -> bool {
    match (a, b) {
        (Action::Trivial, Action::Trivial) => true,
        (Action::CycleCoords, Action::CycleCoords) => true,
        (Action::CosetPerm(x), Action::CosetPerm(y)) => {
            Arc::ptr_eq(x, y) || (x.points() == y.points() && x.subgroup_elements() == y.subgroup_elements())
        }
        _ => false,
    }
}

fn small_primes_factor(mut n: u128) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u128;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            return if n == 1 { Some((p as u64, k)) } else { None };
        }
        p += 1;
    }
    Some((n as u64, 1))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteGroup {
    fn from_shape(shape: Shape) -> FiniteGroup {
        let radices = match &shape {
            Shape::Cyclic(n) => vec![*n],
            Shape::Product(parts) => {
                parts.iter().flat_map(|g| g.radices().iter().copied()).collect()
            }
            Shape::Semidirect { top, bottom, .. } => {
                let mut r = top.radices().to_vec();
                r.extend_from_slice(bottom.radices());
                r
            }
        };
        let order = radices.iter().fold(1u128, |acc, &r| {
            acc.checked_mul(r as u128).expect("group order overflows u128")
        });
        FiniteGroup { data: Arc::new(GroupData { shape, radices, order }) }
    }

    pub fn cyclic(n: u64) -> FiniteGroup {
        assert!(n >= 1);
        FiniteGroup::from_shape(Shape::Cyclic(n))
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        FiniteGroup::from_shape(Shape::Product(vec![g.clone(), h.clone()]))
    }

    pub fn direct_power(h: &FiniteGroup, m: usize) -> FiniteGroup {
        assert!(m >= 1);
        FiniteGroup::from_shape(Shape::Product(vec![h.clone(); m]))
    }

    /// Elementary abelian p-group of the given rank.
    pub fn elementary_abelian(p: u64, rank: usize) -> FiniteGroup {
        FiniteGroup::direct_power(&FiniteGroup::cyclic(p), rank)
    }

    /// The wreath product Z_{p^t} wr Z_{p^r}: the cyclic top of order p^r
    /// cyclically permutes the p^r coordinates of the base N = (Z_{p^t})^{p^r}.
    pub fn wreath_cyclic(p: u64, t: u32, r: u32) -> Result<FiniteGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        assert!(t >= 1 && r >= 1);
        let top = FiniteGroup::cyclic(p.pow(r));
        let copies = p.pow(r) as usize;
        let bottom = FiniteGroup::direct_power(&FiniteGroup::cyclic(p.pow(t)), copies);
        Ok(FiniteGroup::from_shape(Shape::Semidirect {
            top,
            bottom,
            action: Action::CycleCoords,
        }))
    }

    /// Semidirect product with a validated action. The multiplication
    /// convention, fixed once: writing elements in the normal form
    /// `(s, t)` with `s` in the top and `t` in the bottom,
    /// `(s1,t1)(s2,t2) = (s1 s2, (s2^{-1} . t1) t2)`, so that the code of
    /// `(s, t)` is exactly `embed(s) * embed(t)`.
    pub fn semidirect(top: &FiniteGroup, bottom: &FiniteGroup, action: Action) -> Result<FiniteGroup> {
        let g = FiniteGroup::from_shape(Shape::Semidirect {
            top: top.clone(),
            bottom: bottom.clone(),
            action,
        });
        g.validate_action()?;
        Ok(g)
    }

    fn validate_action(&self) -> Result<()> {
        let (top, bottom, action) = match self.shape() {
            Shape::Semidirect { top, bottom, action } => (top, bottom, action),
            _ => unreachable!(),
        };
        let tg = top.generators();
        let bg = bottom.generators();
        let mut tops: Vec<Element> = vec![top.identity()];
        tops.extend(tg.iter().cloned());
        for a in &tg {
            for b in &tg {
                tops.push(top.mul(a, b));
            }
        }
        let check = |t: &Element| -> Result<()> {
            for tau in &bg {
                let img = action.apply(self, &t.0, &tau.0);
                if img.len() != bottom.slot_count()
                    || img.iter().zip(bottom.radices()).any(|(v, r)| v >= r)
                {
                    return Err(Error::InvalidAction("image outside the module".into()));
                }
            }
            Ok(())
        };
        for t in &tops {
            check(t)?;
        }
        // identity acts trivially
        for tau in &bg {
            if action.apply(self, &top.identity().0, &tau.0) != tau.0 {
                return Err(Error::InvalidAction("identity does not act trivially".into()));
            }
        }
        // (ab).x = a.(b.x) and a.(xy) = (a.x)(a.y)
        for a in &tops {
            for b in &tops {
                let ab = top.mul(a, b);
                for tau in &bg {
                    let lhs = action.apply(self, &ab.0, &tau.0);
                    let rhs = action.apply(self, &a.0, &action.apply(self, &b.0, &tau.0));
                    if lhs != rhs {
                        return Err(Error::InvalidAction("not compatible with top multiplication".into()));
                    }
                }
            }
            for x in &bg {
                for y in &bg {
                    let xy = bottom.mul(x, y);
                    let lhs = action.apply(self, &a.0, &xy.0);
                    let ax = action.apply(self, &a.0, &x.0);
                    let ay = action.apply(self, &a.0, &y.0);
                    let rhs = bottom.mul(&Element(ax), &Element(ay)).0;
                    if lhs != rhs {
                        return Err(Error::InvalidAction("not an automorphism".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &Shape {
        &self.data.shape
    }

    pub fn radices(&self) -> &[u64] {
        &self.data.radices
    }

    pub fn slot_count(&self) -> usize {
        self.data.radices.len()
    }

    pub fn order(&self) -> u128 {
        self.data.order
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.slot_count()])
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        g.0.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        Element(self.mul_slice(&a.0, &b.0))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        Element(self.inv_slice(&a.0))
    }

    pub fn conjugate(&self, g: &Element, by: &Element) -> Element {
        // by^{-1} g by
        let inv = self.inverse(by);
        self.mul(&self.mul(&inv, g), by)
    }

    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        let ia = self.inverse(a);
        let ib = self.inverse(b);
        self.mul(&self.mul(&ia, &ib), &self.mul(a, b))
    }

    fn mul_slice(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        match self.shape() {
            Shape::Cyclic(n) => vec![(a[0] + b[0]) % n],
            Shape::Product(parts) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for part in parts {
                    let w = part.slot_count();
                    out.extend(part.mul_slice(&a[off..off + w], &b[off..off + w]));
                    off += w;
                }
                out
            }
            Shape::Semidirect { top, bottom, action } => {
                let k = top.slot_count();
                let (s1, t1) = a.split_at(k);
                let (s2, t2) = b.split_at(k);
                let mut out = top.mul_slice(s1, s2);
                let s2_inv = top.inv_slice(s2);
                let moved = action.apply(self, &s2_inv, t1);
                out.extend(bottom.mul_slice(&moved, t2));
                out
            }
        }
    }

    fn inv_slice(&self, a: &[u64]) -> Vec<u64> {
        match self.shape() {
            Shape::Cyclic(n) => vec![if a[0] == 0 { 0 } else { n - a[0] }],
            Shape::Product(parts) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for part in parts {
                    let w = part.slot_count();
                    out.extend(part.inv_slice(&a[off..off + w]));
                    off += w;
                }
                out
            }
            Shape::Semidirect { top, bottom, action } => {
                let k = top.slot_count();
                let (s, t) = a.split_at(k);
                let s_inv = top.inv_slice(s);
                let t_inv = bottom.inv_slice(t);
                let mut out = s_inv.clone();
                out.extend(action.apply(self, s, &t_inv));
                out
            }
        }
    }

    /// A small generating set derived from the shape.
    pub fn generators(&self) -> Vec<Element> {
        match self.shape() {
            Shape::Cyclic(n) => {
                if *n == 1 {
                    vec![]
                } else {
                    vec![Element(vec![1])]
                }
            }
            Shape::Product(parts) => {
                let mut gens = Vec::new();
                let mut off = 0;
                for part in parts {
                    let w = part.slot_count();
                    for g in part.generators() {
                        let mut code = vec![0; self.slot_count()];
                        code[off..off + w].copy_from_slice(&g.0);
                        gens.push(Element(code));
                    }
                    off += w;
                }
                gens
            }
            Shape::Semidirect { top, bottom, .. } => {
                let mut gens = Vec::new();
                for g in top.generators() {
                    gens.push(self.embed_top(&g));
                }
                for g in bottom.generators() {
                    gens.push(self.embed_bottom(&g));
                }
                gens
            }
        }
    }

    pub fn top_group(&self) -> Result<&FiniteGroup> {
        match self.shape() {
            Shape::Semidirect { top, .. } => Ok(top),
            _ => Err(Error::NormalFormUnavailable),
        }
    }

    pub fn bottom_group(&self) -> Result<&FiniteGroup> {
        match self.shape() {
            Shape::Semidirect { bottom, .. } => Ok(bottom),
            _ => Err(Error::NormalFormUnavailable),
        }
    }

    pub fn action(&self) -> Result<&Action> {
        match self.shape() {
            Shape::Semidirect { action, .. } => Ok(action),
            _ => Err(Error::NormalFormUnavailable),
        }
    }

    pub fn embed_top(&self, s: &Element) -> Element {
        let top = self.top_group().expect("embed_top on non-semidirect group");
        debug_assert_eq!(s.0.len(), top.slot_count());
        let mut code = s.0.clone();
        code.resize(self.slot_count(), 0);
        Element(code)
    }

    pub fn embed_bottom(&self, t: &Element) -> Element {
        let top = self.top_group().expect("embed_bottom on non-semidirect group");
        let mut code = vec![0; top.slot_count()];
        code.extend_from_slice(&t.0);
        Element(code)
    }

    /// The top-component of `g = s t` in normal form.
    pub fn top_part(&self, g: &Element) -> Element {
        let k = self.top_group().expect("top_part on non-semidirect group").slot_count();
        Element(g.0[..k].to_vec())
    }

    /// The bottom-component of `g = s t` in normal form.
    pub fn bottom_part(&self, g: &Element) -> Element {
        let k = self.top_group().expect("bottom_part on non-semidirect group").slot_count();
        Element(g.0[k..].to_vec())
    }

    pub fn is_abelian(&self) -> bool {
        match self.shape() {
            Shape::Cyclic(_) => true,
            Shape::Product(parts) => parts.iter().all(|p| p.is_abelian()),
            Shape::Semidirect { top, bottom, action } => {
                matches!(action, Action::Trivial) && top.is_abelian() && bottom.is_abelian()
            }
        }
    }

    /// (p, k) with |G| = p^k, when the order is a prime power > 1.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        small_primes_factor(self.order())
    }

    /// All elements in increasing code order. Fails loudly past the bound.
    pub fn elements(&self, bound: u128) -> Result<Vec<Element>> {
        if self.order() > bound {
            return Err(Error::EnumerationBoundExceeded { needed: self.order(), bound });
        }
        let radices = self.radices();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut code = vec![0u64; radices.len()];
        loop {
            out.push(Element(code.clone()));
            // increment, last slot fastest
            let mut i = radices.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                code[i] += 1;
                if code[i] < radices[i] {
                    break;
                }
                code[i] = 0;
            }
        }
    }

    /// Multiplicative order of an element.
    pub fn order_of(&self, g: &Element) -> u64 {
        let mut acc = g.clone();
        let mut k = 1u64;
        while !self.is_identity(&acc) {
            acc = self.mul(&acc, g);
            k += 1;
        }
        k
    }

    /// Group exponent; requires enumeration for semidirect shapes.
    pub fn exponent(&self, bound: u128) -> Result<u64> {
        match self.shape() {
            Shape::Cyclic(n) => Ok(*n),
            Shape::Product(parts) => {
                let mut e = 1u64;
                for p in parts {
                    e = num::integer::lcm(e, p.exponent(bound)?);
                }
                Ok(e)
            }
            Shape::Semidirect { .. } => {
                let mut e = 1u64;
                for g in self.elements(bound)? {
                    e = num::integer::lcm(e, self.order_of(&g));
                }
                Ok(e)
            }
        }
    }

    /// Small JSON tree describing the group's shape, for reports.
    pub fn descriptor(&self) -> serde_json::Value {
        match self.shape() {
            Shape::Cyclic(n) => json!({"cyclic": n}),
            Shape::Product(parts) => {
                json!({"product": parts.iter().map(|p| p.descriptor()).collect::<Vec<_>>()})
            }
            Shape::Semidirect { top, bottom, action } => json!({
                "semidirect": {
                    "top": top.descriptor(),
                    "bottom": bottom.descriptor(),
                    "action": match action {
                        Action::Trivial => json!("trivial"),
                        Action::CycleCoords => json!("cycle_coords"),
                        Action::CosetPerm(t) => json!({"coset_perm_points": t.points().len()}),
                    },
                    "order": self.order().to_string(),
                }
            }),
        }
    }
}

impl Action {
    /// Left action of a top element on a bottom element: `s . t = s t s^{-1}`.
    pub fn apply(&self, group: &FiniteGroup, s: &[u64], t: &[u64]) -> Vec<u64> {
        match self {
            Action::Trivial => t.to_vec(),
            Action::CycleCoords => {
                let (top, bottom) = match group.shape() {
                    Shape::Semidirect { top, bottom, .. } => (top, bottom),
                    _ => panic!("CycleCoords outside semidirect shape"),
                };
                let n = top.order() as usize;
                let block = bottom.slot_count() / n;
                let k = s[0] as usize;
                let mut out = vec![0u64; t.len()];
                for i in 0..n {
                    let dst = (i + k) % n;
                    out[dst * block..(dst + 1) * block]
                        .copy_from_slice(&t[i * block..(i + 1) * block]);
                }
                out
            }
            Action::CosetPerm(table) => {
                let perm = table.permutation(&Element(s.to_vec()));
                let mut out = vec![0u64; t.len()];
                for (i, &v) in t.iter().enumerate() {
                    out[perm[i]] = v;
                }
                out
            }
        }
    }
}
