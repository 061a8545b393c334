//! Closed sets, filters, magnitude and conjugacy.
//!
//! A filter is a nonempty proper subset that is closed upward in the
//! natural order and closed under the triple product `[stu] = s t⁻¹ u`.
//! Filters that contain an idempotent are exactly the closed inverse
//! subsemigroups.
//!
//! The one-element semigroup has no nonempty proper subset at all. It is
//! treated as its own (degenerate) filter so that it is handled like every
//! other semigroup downstream.

use std::collections::HashSet;
use std::fmt;

use crate::element_set::ElementSet;
use crate::error::FilterError;
use crate::table::{Element, SemigroupTable};

/// Default size limit for [`enumerate_filters`].
pub const FILTER_ENUMERATION_CAP: usize = 24;
/// Size limit for anything that stores single-word filters.
pub const PIPELINE_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Filter {
    carrier: ElementSet,
    principal_of: Option<Element>,
}

impl Filter {
    /// Wraps a carrier already known to be a filter.
    pub(crate) fn from_carrier(s: &SemigroupTable, carrier: ElementSet) -> Filter {
        debug_assert!(is_filter(s, &carrier), "{carrier:?} is not a filter");
        let principal_of = carrier.iter().find(|&x| s.up_set(x) == &carrier);
        Filter { carrier, principal_of }
    }

    /// Validates a subset as a filter.
    pub fn new(s: &SemigroupTable, carrier: ElementSet) -> Option<Filter> {
        is_filter(s, &carrier).then(|| Self::from_carrier(s, carrier))
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(s: &SemigroupTable, elements: I) -> Option<Filter> {
        let carrier = ElementSet::from_elements(s.order(), elements.into_iter().filter(|&e| e < s.order()));
        Self::new(s, carrier)
    }

    pub fn carrier(&self) -> &ElementSet {
        &self.carrier
    }

    pub fn principal_of(&self) -> Option<Element> {
        self.principal_of
    }

    pub fn contains(&self, s: Element) -> bool {
        self.carrier.contains(s)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.carrier.to_vec()
    }
}

impl Ord for Filter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.carrier.cmp(&other.carrier)
    }
}

impl PartialOrd for Filter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Filter{:?}", self.carrier)
    }
}

/// `{t : ∃ s ∈ T, s ≤ t}`.
pub fn up_closure(s: &SemigroupTable, set: &ElementSet) -> ElementSet {
    let mut out = s.empty_set();
    for x in set {
        out.union_with(s.up_set(x));
    }
    out
}

/// `↑x`. Fails on the zero, whose up-set is all of `S`.
pub fn principal_filter(s: &SemigroupTable, x: Element) -> Result<Filter, FilterError> {
    if s.zero() == Some(x) && s.order() > 1 {
        return Err(FilterError::ZeroHasNoPrincipalFilter(x));
    }
    Ok(Filter { carrier: s.up_set(x).clone(), principal_of: Some(x) })
}

fn is_proper(s: &SemigroupTable, set: &ElementSet) -> bool {
    !set.is_full() || s.order() == 1
}

pub fn is_up_closed(s: &SemigroupTable, set: &ElementSet) -> bool {
    set.iter().all(|x| s.up_set(x).is_subset(set))
}

pub fn is_triple_closed(s: &SemigroupTable, set: &ElementSet) -> bool {
    let members = set.to_vec();
    members.iter().all(|&a| {
        members.iter().all(|&b| {
            let ab = s.product(a, s.inverse(b));
            members.iter().all(|&c| set.contains(s.product(ab, c)))
        })
    })
}

pub fn is_filter(s: &SemigroupTable, set: &ElementSet) -> bool {
    !set.is_empty() && is_proper(s, set) && is_up_closed(s, set) && is_triple_closed(s, set)
}

/// Smallest up-closed, triple-closed superset of `seed`. May be all of `S`.
pub fn filter_closure(s: &SemigroupTable, seed: &ElementSet) -> ElementSet {
    extend_closed(s, &s.empty_set(), seed.iter())
}

/// Closure of `base ∪ extra` where `base` is already up- and triple-closed.
///
/// Each new element is combined once with every member present when it
/// is dequeued; a triple is therefore covered when its last member is
/// processed.
fn extend_closed(s: &SemigroupTable, base: &ElementSet, extra: impl Iterator<Item = Element>) -> ElementSet {
    let mut set = base.clone();
    let mut members = base.to_vec();
    let mut queue: Vec<Element> = Vec::new();
    let add = |x: Element, set: &mut ElementSet, members: &mut Vec<Element>, queue: &mut Vec<Element>| {
        if set.contains(x) {
            return;
        }
        for y in s.up_set(x) {
            if set.insert(y) {
                members.push(y);
                queue.push(y);
            }
        }
    };
    for x in extra {
        add(x, &mut set, &mut members, &mut queue);
    }
    let full = s.order() > 1;
    while let Some(x) = queue.pop() {
        if full && set.is_full() {
            break;
        }
        let x_inv = s.inverse(x);
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            let a_inv = s.inverse(a);
            let mut j = 0;
            while j < members.len() {
                let b = members[j];
                let candidates = [
                    s.product(s.product(x, a_inv), b),
                    s.product(s.product(a, x_inv), b),
                    s.product(s.product(a, s.inverse(b)), x),
                ];
                for c in candidates {
                    add(c, &mut set, &mut members, &mut queue);
                }
                j += 1;
            }
            i += 1;
        }
    }
    set
}

fn check_cap(s: &SemigroupTable, what: &'static str, limit: usize) -> Result<(), FilterError> {
    if s.order() > limit {
        return Err(FilterError::SizeCapExceeded { what, n: s.order(), limit });
    }
    Ok(())
}

/// Every filter of `S`, sorted by carrier.
pub fn enumerate_filters(s: &SemigroupTable) -> Result<Vec<Filter>, FilterError> {
    enumerate_filters_capped(s, FILTER_ENUMERATION_CAP)
}

pub fn enumerate_filters_capped(s: &SemigroupTable, limit: usize) -> Result<Vec<Filter>, FilterError> {
    check_cap(s, "filter enumeration", limit.min(PIPELINE_CAP))?;
    Ok(grow_filters(s, s.elements()))
}

/// Every closed inverse subsemigroup (filter containing an idempotent),
/// sorted by carrier.
pub fn closed_inverse_subsemigroups(s: &SemigroupTable) -> Result<Vec<Filter>, FilterError> {
    check_cap(s, "closed inverse subsemigroup enumeration", PIPELINE_CAP)?;
    Ok(grow_filters(s, s.idempotents().iter()))
}

/// All filters containing one of `seeds`: start from the principal filters
/// and repeatedly close `F ∪ {x}`. Any filter is reached by adding its
/// members one at a time to the principal filter of one of them.
fn grow_filters(s: &SemigroupTable, seeds: impl Iterator<Item = Element>) -> Vec<Filter> {
    let mut found: HashSet<ElementSet> = HashSet::new();
    let mut queue: Vec<ElementSet> = Vec::new();
    for x in seeds {
        let up = s.up_set(x).clone();
        if is_proper(s, &up) && found.insert(up.clone()) {
            queue.push(up);
        }
    }
    while let Some(current) = queue.pop() {
        for x in current.complement().iter() {
            let grown = extend_closed(s, &current, std::iter::once(x));
            if is_proper(s, &grown) && !found.contains(&grown) {
                found.insert(grown.clone());
                queue.push(grown);
            }
        }
    }
    let mut filters: Vec<Filter> = found.into_iter().map(|c| Filter::from_carrier(s, c)).collect();
    filters.sort();
    filters
}

/// A factor in a magnitude witness: an element of `S` or the identity
/// adjoined in `S¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplier {
    Element(Element),
    AdjoinedIdentity,
}

impl Multiplier {
    fn inverse(self, s: &SemigroupTable) -> Multiplier {
        match self {
            Multiplier::Element(u) => Multiplier::Element(s.inverse(u)),
            Multiplier::AdjoinedIdentity => Multiplier::AdjoinedIdentity,
        }
    }

    fn left(self, s: &SemigroupTable, x: Element) -> Element {
        match self {
            Multiplier::Element(u) => s.product(u, x),
            Multiplier::AdjoinedIdentity => x,
        }
    }

    fn right(self, s: &SemigroupTable, x: Element) -> Element {
        match self {
            Multiplier::Element(u) => s.product(x, u),
            Multiplier::AdjoinedIdentity => x,
        }
    }
}

/// Where the multipliers `u, v` of a magnitude witness may range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MagnitudeMode {
    /// `u, v ∈ S`.
    #[default]
    Semigroup,
    /// `u, v ∈ S¹`.
    WithIdentity,
}

/// `(u, v)` with `u F₁ v⁻¹ ⊆ F₂` and `u⁻¹ F₂ v ⊆ F₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MagnitudeWitness {
    pub u: Multiplier,
    pub v: Multiplier,
}

/// `u T v` as a set.
pub fn sandwich(s: &SemigroupTable, u: Multiplier, set: &ElementSet, v: Multiplier) -> ElementSet {
    ElementSet::from_elements(s.order(), set.iter().map(|x| v.right(s, u.left(s, x))))
}

/// `A · B`.
pub fn set_product(s: &SemigroupTable, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut out = s.empty_set();
    for x in a {
        for y in b {
            out.insert(s.product(x, y));
        }
    }
    out
}

pub fn same_magnitude(s: &SemigroupTable, f1: &Filter, f2: &Filter) -> Option<MagnitudeWitness> {
    same_magnitude_in(s, f1, f2, MagnitudeMode::Semigroup)
}

/// Lexicographically least witness, the adjoined identity ordered last.
pub fn same_magnitude_in(
    s: &SemigroupTable,
    f1: &Filter,
    f2: &Filter,
    mode: MagnitudeMode,
) -> Option<MagnitudeWitness> {
    let mut multipliers: Vec<Multiplier> = s.elements().map(Multiplier::Element).collect();
    if mode == MagnitudeMode::WithIdentity {
        multipliers.push(Multiplier::AdjoinedIdentity);
    }
    let a = f1.carrier.to_vec();
    let b = f2.carrier.to_vec();
    for &u in &multipliers {
        let u_inv = u.inverse(s);
        let ua: Vec<Element> = a.iter().map(|&x| u.left(s, x)).collect();
        let ub: Vec<Element> = b.iter().map(|&x| u_inv.left(s, x)).collect();
        for &v in &multipliers {
            let v_inv = v.inverse(s);
            let forward = ua.iter().all(|&x| f2.contains(v_inv.right(s, x)));
            if forward && ub.iter().all(|&x| f1.contains(v.right(s, x))) {
                let witness = MagnitudeWitness { u, v };
                debug_assert!(
                    up_closure(s, &sandwich(s, u, &f1.carrier, v_inv)) == f2.carrier
                        && up_closure(s, &sandwich(s, u_inv, &f2.carrier, v)) == f1.carrier,
                    "witness {witness:?} does not normalize"
                );
                return Some(witness);
            }
        }
    }
    None
}

/// Groups `filters` into magnitude classes, listing indices. Classes are
/// ordered by their first member.
pub fn magnitude_classes(s: &SemigroupTable, filters: &[Filter], mode: MagnitudeMode) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, f) in filters.iter().enumerate() {
        match classes.iter_mut().find(|class| same_magnitude_in(s, &filters[class[0]], f, mode).is_some()) {
            Some(class) => class.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// Pairs `(i, j)` whose magnitude relation differs between `u, v ∈ S`
/// and `u, v ∈ S¹`.
pub fn magnitude_mode_discrepancies(s: &SemigroupTable, filters: &[Filter]) -> Vec<(usize, usize)> {
    let class_index = |classes: &[Vec<usize>]| {
        let mut of = vec![0; filters.len()];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                of[i] = c;
            }
        }
        of
    };
    let plain = class_index(&magnitude_classes(s, filters, MagnitudeMode::Semigroup));
    let with_one = class_index(&magnitude_classes(s, filters, MagnitudeMode::WithIdentity));
    let mut out = Vec::new();
    for i in 0..filters.len() {
        for j in i + 1..filters.len() {
            if (plain[i] == plain[j]) != (with_one[i] == with_one[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// A filter is a closed inverse subsemigroup iff it holds an idempotent.
pub fn is_closed_inverse_subsemigroup(s: &SemigroupTable, f: &Filter) -> bool {
    let answer = !f.carrier.is_disjoint(s.idempotents());
    debug_assert_eq!(
        answer,
        f.carrier.iter().all(|x| { f.contains(s.inverse(x)) && f.carrier.iter().all(|y| f.contains(s.product(x, y))) }),
        "idempotent test disagrees with closure under product and inversion"
    );
    answer
}

/// `{↑(u H u⁻¹) : u⁻¹u ∈ H}`, sorted by carrier.
pub fn conjugates(s: &SemigroupTable, h: &Filter) -> Result<Vec<Filter>, FilterError> {
    if !is_closed_inverse_subsemigroup(s, h) {
        return Err(FilterError::NotClosedInverseSubsemigroup(h.to_vec()));
    }
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    for u in s.elements().filter(|&u| h.contains(s.range_idempotent(u))) {
        let mu = Multiplier::Element(u);
        let mu_inv = Multiplier::Element(s.inverse(u));
        let k = up_closure(s, &sandwich(s, mu, &h.carrier, mu_inv));
        if seen.insert(k.clone()) {
            assert_eq!(up_closure(s, &sandwich(s, mu_inv, &k, mu)), h.carrier, "conjugation by {u} is not reversible");
            out.push(Filter::from_carrier(s, k));
        }
    }
    out.sort();
    Ok(out)
}

/// Least upper bound in the natural order. The empty set's bound is the
/// zero, when there is one.
pub fn lub(s: &SemigroupTable, set: &ElementSet) -> Option<Element> {
    if set.is_empty() {
        return s.zero();
    }
    let mut upper = s.full_set();
    for x in set {
        upper.intersect_with(s.up_set(x));
    }
    upper.iter().find(|&m| upper.is_subset(s.up_set(m)))
}
