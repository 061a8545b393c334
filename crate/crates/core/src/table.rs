//! Finite inverse semigroups given by Cayley tables.
//!
//! Elements are dense ids `0..n`. Products are read left to right, so for
//! partial maps `a(st) = (as)t`.

use std::collections::{HashMap, HashSet};

use crate::element_set::ElementSet;
use crate::error::AlgebraError;

pub type Element = usize;

/// A validated finite inverse semigroup.
///
/// Immutable after construction. Besides the table it caches inverses,
/// idempotents, the optional zero and identity, and the up-sets of the
/// natural order.
#[derive(Clone, Debug)]
pub struct SemigroupTable {
    n: usize,
    table: Vec<Element>,
    inv: Vec<Element>,
    idempotents: ElementSet,
    zero: Option<Element>,
    identity: Option<Element>,
    up: Vec<ElementSet>,
    name: Option<String>,
}

impl PartialEq for SemigroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for SemigroupTable {}

/// Checks the inverse semigroup axioms on a raw table and builds the
/// derived data. Every failure names a witness.
pub fn validate_inverse_semigroup(raw: &[Vec<Element>]) -> Result<SemigroupTable, AlgebraError> {
    let n = raw.len();
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    let mut table = Vec::with_capacity(n * n);
    for (row, entries) in raw.iter().enumerate() {
        if entries.len() != n {
            return Err(AlgebraError::NotSquare { row, len: entries.len(), n });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(AlgebraError::OutOfRange { row, col, value, n });
            }
            table.push(value);
        }
    }
    let mul = |s: Element, t: Element| table[s * n + t];

    for s in 0..n {
        for t in 0..n {
            let st = mul(s, t);
            for u in 0..n {
                if mul(st, u) != mul(s, mul(t, u)) {
                    return Err(AlgebraError::NotAssociative(s, t, u));
                }
            }
        }
    }

    let mut inv = Vec::with_capacity(n);
    for s in 0..n {
        let mut found = None;
        for t in 0..n {
            if mul(mul(s, t), s) == s && mul(mul(t, s), t) == t {
                if let Some(first) = found {
                    return Err(AlgebraError::InverseNotUnique(s, first, t));
                }
                found = Some(t);
            }
        }
        inv.push(found.ok_or(AlgebraError::NotRegular(s))?);
    }

    let idempotents = ElementSet::from_elements(n, (0..n).filter(|&e| mul(e, e) == e));
    for e in idempotents.iter() {
        for f in idempotents.iter().filter(|&f| f > e) {
            if mul(e, f) != mul(f, e) {
                return Err(AlgebraError::IdempotentsDontCommute(e, f));
            }
        }
    }

    let zero = (0..n).find(|&z| (0..n).all(|s| mul(z, s) == z && mul(s, z) == z));
    let identity = (0..n).find(|&i| (0..n).all(|s| mul(i, s) == s && mul(s, i) == s));

    let mut semigroup = SemigroupTable { n, table, inv, idempotents, zero, identity, up: Vec::new(), name: None };
    semigroup.up =
        (0..n).map(|s| ElementSet::from_elements(n, (0..n).filter(|&t| semigroup.leq_by_definition(s, t)))).collect();

    if cfg!(debug_assertions) && n <= 64 {
        for s in 0..n {
            for t in 0..n {
                semigroup.natural_leq_checked(s, t)?;
            }
        }
    }
    Ok(semigroup)
}

impl SemigroupTable {
    /// Builds and validates a table from a product function.
    pub fn from_fn<F: Fn(Element, Element) -> Element>(n: usize, mul: F) -> Result<Self, AlgebraError> {
        let raw: Vec<Vec<Element>> = (0..n).map(|s| (0..n).map(|t| mul(s, t)).collect()).collect();
        validate_inverse_semigroup(&raw)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.n
    }

    #[inline]
    pub fn product(&self, s: Element, t: Element) -> Element {
        self.table[s * self.n + t]
    }

    #[inline]
    pub fn inverse(&self, s: Element) -> Element {
        self.inv[s]
    }

    /// `[s t u] = s t⁻¹ u`.
    #[inline]
    pub fn triple_product(&self, s: Element, t: Element, u: Element) -> Element {
        self.product(self.product(s, self.inv[t]), u)
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn idempotents(&self) -> &ElementSet {
        &self.idempotents
    }

    #[inline]
    pub fn is_idempotent(&self, s: Element) -> bool {
        self.idempotents.contains(s)
    }

    pub fn zero(&self) -> Option<Element> {
        self.zero
    }

    pub fn identity(&self) -> Option<Element> {
        self.identity
    }

    pub fn is_group(&self) -> bool {
        self.idempotents.len() == 1
    }

    pub fn is_semilattice(&self) -> bool {
        self.idempotents.is_full()
    }

    /// `s s⁻¹`, the idempotent fixing the "domain" of `s`.
    #[inline]
    pub fn domain_idempotent(&self, s: Element) -> Element {
        self.product(s, self.inv[s])
    }

    /// `s⁻¹ s`, the idempotent fixing the "range" of `s`.
    #[inline]
    pub fn range_idempotent(&self, s: Element) -> Element {
        self.product(self.inv[s], s)
    }

    fn leq_by_definition(&self, s: Element, t: Element) -> bool {
        s == self.product(self.domain_idempotent(s), t)
    }

    /// Natural order: `s ≤ t` iff `s = s s⁻¹ t`.
    #[inline]
    pub fn natural_leq(&self, s: Element, t: Element) -> bool {
        self.up[s].contains(t)
    }

    /// Evaluates every equivalent form of the natural order and fails if
    /// they disagree, which only happens on a corrupted table.
    pub fn natural_leq_checked(&self, s: Element, t: Element) -> Result<bool, AlgebraError> {
        let m = |a, b| self.product(a, b);
        let si = self.inv[s];
        let ti = self.inv[t];
        let ss = m(s, si);
        let forms = [
            s == m(ss, t),
            s == m(m(s, ti), s),
            s == m(m(t, si), s),
            ss == m(s, ti),
            ss == m(t, si),
            m(si, s) == m(si, t),
            m(si, s) == m(ti, s),
            s == self.triple_product(s, s, t),
            s == self.triple_product(s, t, s),
            s == self.triple_product(t, s, s),
        ];
        if forms.iter().any(|&f| f != forms[0]) {
            return Err(AlgebraError::EquivalentFormsDisagree(s, t));
        }
        Ok(forms[0])
    }

    /// `{t : s ≤ t}`.
    pub fn up_set(&self, s: Element) -> &ElementSet {
        &self.up[s]
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.n)
    }

    /// Covering pairs `(s, t)` of the natural order, `s < t` with nothing between.
    pub fn hasse_edges(&self) -> Vec<(Element, Element)> {
        let mut edges = Vec::new();
        for s in self.elements() {
            for t in self.up[s].iter().filter(|&t| t != s) {
                let between = self.up[s].iter().any(|u| u != s && u != t && self.up[u].contains(t));
                if !between {
                    edges.push((s, t));
                }
            }
        }
        edges
    }

    /// Length of the longest chain strictly below `s`.
    pub fn heights(&self) -> Vec<usize> {
        let mut below: Vec<Vec<Element>> = vec![Vec::new(); self.n];
        for s in self.elements() {
            for t in self.up[s].iter().filter(|&t| t != s) {
                below[t].push(s);
            }
        }
        let mut order: Vec<Element> = self.elements().collect();
        order.sort_by_key(|&s| below[s].len());
        let mut height = vec![0usize; self.n];
        // a strictly smaller element has strictly fewer elements below it
        for &s in &order {
            height[s] = below[s].iter().map(|&b| height[b] + 1).max().unwrap_or(0);
        }
        height
    }

    /// Cyclic structure of `s`: the index and period of its powers.
    pub fn index_and_period(&self, s: Element) -> (usize, usize) {
        let mut seen = HashMap::new();
        let mut power = s;
        let mut k = 1;
        loop {
            if let Some(&first) = seen.get(&power) {
                return (first, k - first);
            }
            seen.insert(power, k);
            power = self.product(power, s);
            k += 1;
        }
    }

    /// `S¹`-style extension: a fresh identity element with id `n`.
    pub fn adjoin_identity(&self) -> SemigroupTable {
        let n = self.n;
        let one = n;
        let mul = |s: Element, t: Element| match (s == one, t == one) {
            (true, _) => t,
            (_, true) => s,
            _ => self.product(s, t),
        };
        Self::from_fn(n + 1, mul).expect("adjoining an identity preserves the axioms")
    }

    /// `S⁰`-style extension: a fresh zero element with id `n`.
    pub fn adjoin_zero(&self) -> SemigroupTable {
        let n = self.n;
        let zero = n;
        let mul = |s: Element, t: Element| {
            if s == zero || t == zero {
                zero
            } else {
                self.product(s, t)
            }
        };
        Self::from_fn(n + 1, mul).expect("adjoining a zero preserves the axioms")
    }

    /// Green's relations of the semigroup.
    pub fn green_relations(&self) -> GreenData {
        // s | t on the left iff t ∈ sS¹; its symmetric part relates
        // elements with the same s s⁻¹, i.e. partial maps with equal domains.
        let l = Partition::from_key(self.n, |s| self.domain_idempotent(s));
        let r = Partition::from_key(self.n, |s| self.range_idempotent(s));

        let linked: HashSet<(Element, Element)> =
            self.elements().map(|u| (self.domain_idempotent(u), self.range_idempotent(u))).collect();
        let d_related =
            |s: Element, t: Element| linked.contains(&(self.domain_idempotent(s), self.range_idempotent(t)));
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for s in self.elements() {
            if class_of[s] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<Element> = self.elements().filter(|&t| d_related(s, t)).collect();
            for &t in &members {
                class_of[t] = id;
            }
            classes.push(members);
        }
        let d = Partition { class_of, classes };

        let green = GreenData { l, r, d };
        if cfg!(debug_assertions) && self.n <= 64 {
            let (l_div, r_div) = self.green_by_divisibility();
            debug_assert_eq!(green.l, l_div, "L disagrees with left divisibility");
            debug_assert_eq!(green.r, r_div, "R disagrees with right divisibility");
            debug_assert!(green.d.is_join_of(&green.l, &green.r), "D is not L ∘ R");
        }
        green
    }

    /// L and R straight from the divisibility quasi-orders: `s |_l t` iff
    /// `s = t` or `t = s r`, and dually.
    pub fn green_by_divisibility(&self) -> (Partition, Partition) {
        let n = self.n;
        let mut left = vec![self.empty_set(); n];
        let mut right = vec![self.empty_set(); n];
        for s in 0..n {
            left[s].insert(s);
            right[s].insert(s);
            for r in 0..n {
                left[s].insert(self.product(s, r));
                right[s].insert(self.product(r, s));
            }
        }
        let l = Partition::from_key(n, |s| left[s].clone());
        let r = Partition::from_key(n, |s| right[s].clone());
        (l, r)
    }
}

/// A partition of the element ids. Classes are ordered by their smallest
/// member and each class lists its members ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<Element>>,
}

impl Partition {
    pub fn from_key<K: std::hash::Hash + Eq, F: Fn(Element) -> K>(n: usize, key: F) -> Partition {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(n);
        let mut classes: Vec<Vec<Element>> = Vec::new();
        for s in 0..n {
            let next = classes.len();
            let id = *ids.entry(key(s)).or_insert(next);
            if id == next {
                classes.push(Vec::new());
            }
            classes[id].push(s);
            class_of.push(id);
        }
        Partition { class_of, classes }
    }

    pub fn same_class(&self, s: Element, t: Element) -> bool {
        self.class_of[s] == self.class_of[t]
    }

    pub fn class(&self, s: Element) -> &[Element] {
        &self.classes[self.class_of[s]]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether `self` is the composite relation `a ∘ b`.
    pub fn is_join_of(&self, a: &Partition, b: &Partition) -> bool {
        let n = self.class_of.len();
        (0..n).all(|s| {
            (0..n).all(|t| {
                let composed = (0..n).any(|u| a.same_class(s, u) && b.same_class(u, t));
                composed == self.same_class(s, t)
            })
        })
    }

    /// Whether every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&s| coarser.same_class(c[0], s)))
    }
}

/// Green's L, R and D relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenData {
    pub l: Partition,
    pub r: Partition,
    pub d: Partition,
}
