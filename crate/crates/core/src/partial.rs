//! One-to-one partial transformations of a finite point set.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use smallvec::SmallVec;

use crate::error::PartialMapError;
use crate::table::{validate_inverse_semigroup, Element, SemigroupTable};

const UNDEFINED: u16 = u16::MAX;

/// Largest point set for which the whole of `I_A` is enumerated.
pub const FULL_ENUMERATION_POINT_CAP: usize = 5;
/// Largest point set accepted by [`ConcreteFamily::generate`].
pub const CLOSURE_POINT_CAP: usize = 8;
/// Default bound on the size of a generated family.
pub const CLOSURE_ELEMENT_CAP: usize = 100_000;

/// A one-to-one partial map of `{0, .., m-1}`, stored as its image array
/// with a sentinel for undefined points. Two maps are equal exactly when
/// their arrays are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    map: SmallVec<[u16; 8]>,
}

impl PartialBijection {
    pub fn new(entries: Vec<Option<usize>>) -> Result<Self, PartialMapError> {
        let m = entries.len();
        if m >= UNDEFINED as usize {
            return Err(PartialMapError::SizeCapExceeded {
                what: "point set",
                requested: m,
                limit: UNDEFINED as usize - 1,
            });
        }
        let mut preimage: Vec<Option<usize>> = vec![None; m];
        let mut map = SmallVec::with_capacity(m);
        for (a, entry) in entries.into_iter().enumerate() {
            match entry {
                None => map.push(UNDEFINED),
                Some(b) if b >= m => return Err(PartialMapError::PointOutOfRange { point: b, m }),
                Some(b) => {
                    if let Some(first) = preimage[b] {
                        return Err(PartialMapError::NotInjective { first, second: a, image: b });
                    }
                    preimage[b] = Some(a);
                    map.push(b as u16);
                }
            }
        }
        Ok(PartialBijection { map })
    }

    /// A map defined everywhere, e.g. a permutation.
    pub fn total(images: &[usize]) -> Result<Self, PartialMapError> {
        Self::new(images.iter().map(|&b| Some(b)).collect())
    }

    pub fn empty(m: usize) -> Self {
        PartialBijection { map: SmallVec::from_elem(UNDEFINED, m) }
    }

    /// `Δ_B`, the identity on the given points.
    pub fn partial_identity<I: IntoIterator<Item = usize>>(m: usize, points: I) -> Self {
        let mut out = Self::empty(m);
        for p in points {
            out.map[p] = p as u16;
        }
        out
    }

    pub fn identity(m: usize) -> Self {
        Self::partial_identity(m, 0..m)
    }

    /// The point-set size.
    pub fn degree(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, a: usize) -> Option<usize> {
        match self.map.get(a) {
            Some(&b) if b != UNDEFINED => Some(b as usize),
            _ => None,
        }
    }

    pub fn entries(&self) -> Vec<Option<usize>> {
        (0..self.degree()).map(|a| self.apply(a)).collect()
    }

    /// Graph as `(a, a·φ)` pairs in ascending `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().enumerate().filter(|(_, &b)| b != UNDEFINED).map(|(a, &b)| (a, b as usize))
    }

    /// First projection.
    pub fn domain(&self) -> Vec<usize> {
        self.pairs().map(|(a, _)| a).collect()
    }

    /// Second projection, ascending.
    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.pairs().map(|(_, b)| b).collect();
        r.sort_unstable();
        r
    }

    pub fn rank(&self) -> usize {
        self.map.iter().filter(|&&b| b != UNDEFINED).count()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_idempotent(&self) -> bool {
        self.pairs().all(|(a, b)| a == b)
    }

    pub fn is_total(&self) -> bool {
        self.rank() == self.degree()
    }

    /// Left-to-right composite: `a(φψ) = (aφ)ψ`.
    pub fn compose(&self, other: &PartialBijection) -> Result<PartialBijection, PartialMapError> {
        if self.degree() != other.degree() {
            return Err(PartialMapError::MismatchedPointSets { left: self.degree(), right: other.degree() });
        }
        Ok(self.then(other))
    }

    /// [`compose`](Self::compose) for maps known to share a point set.
    #[inline]
    pub fn then(&self, other: &PartialBijection) -> PartialBijection {
        debug_assert_eq!(self.degree(), other.degree());
        let map = self.map.iter().map(|&b| if b == UNDEFINED { UNDEFINED } else { other.map[b as usize] }).collect();
        PartialBijection { map }
    }

    pub fn invert(&self) -> PartialBijection {
        let mut map = SmallVec::from_elem(UNDEFINED, self.degree());
        for (a, b) in self.pairs() {
            map[b] = a as u16;
        }
        PartialBijection { map }
    }

    /// Graph inclusion, i.e. `self` is a restriction of `other`.
    pub fn is_restriction_of(&self, other: &PartialBijection) -> bool {
        self.degree() == other.degree() && self.pairs().all(|(a, b)| other.apply(a) == Some(b))
    }

    /// `σ⁻¹ φ σ` for a permutation `σ` given as an image array.
    pub fn conjugate_by(&self, sigma: &[usize]) -> PartialBijection {
        let mut map = SmallVec::from_elem(UNDEFINED, self.degree());
        for (a, b) in self.pairs() {
            map[sigma[a]] = sigma[b] as u16;
        }
        PartialBijection { map }
    }
}

impl Ord for PartialBijection {
    /// Point-set size, then rank, then idempotents first, then graph.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.rank().cmp(&other.rank()))
            .then(other.is_idempotent().cmp(&self.is_idempotent()))
            .then_with(|| self.pairs().cmp(other.pairs()))
    }
}

impl PartialOrd for PartialBijection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}→{b}")?;
        }
        write!(f, "]/{}", self.degree())
    }
}

/// A set of partial bijections of one point set, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteFamily {
    m: usize,
    elems: Vec<PartialBijection>,
    closed: bool,
}

impl ConcreteFamily {
    /// Sorts and deduplicates the maps and records whether they form an
    /// inverse subsemigroup of `I_A`.
    pub fn from_elements(m: usize, mut elems: Vec<PartialBijection>) -> Result<Self, PartialMapError> {
        if let Some(bad) = elems.iter().find(|e| e.degree() != m) {
            return Err(PartialMapError::MismatchedPointSets { left: m, right: bad.degree() });
        }
        elems.sort();
        elems.dedup();
        let present: HashSet<&PartialBijection> = elems.iter().collect();
        let closed = !elems.is_empty()
            && elems
                .iter()
                .all(|x| present.contains(&x.invert()) && elems.iter().all(|y| present.contains(&x.then(y))));
        Ok(ConcreteFamily { m, elems, closed })
    }

    /// Least family containing `generators` that is closed under
    /// composition and inversion.
    pub fn generate(generators: &[PartialBijection]) -> Result<Self, PartialMapError> {
        generate_closure(generators, CLOSURE_POINT_CAP, CLOSURE_ELEMENT_CAP)
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> &[PartialBijection] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Every ordered pair of points is joined by some member.
    pub fn is_transitive(&self) -> bool {
        let mut covered = vec![false; self.m * self.m];
        for e in &self.elems {
            for (a, b) in e.pairs() {
                covered[a * self.m + b] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Cayley table of the family over its sorted element order.
    pub fn abstract_table(&self) -> Result<AbstractedFamily, PartialMapError> {
        if !self.closed {
            return Err(PartialMapError::NotClosed);
        }
        let index: HashMap<PartialBijection, Element> =
            self.elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let raw: Vec<Vec<Element>> =
            self.elems.iter().map(|x| self.elems.iter().map(|y| index[&x.then(y)]).collect()).collect();
        let table =
            validate_inverse_semigroup(&raw).expect("closed families of partial bijections are inverse semigroups");
        Ok(AbstractedFamily { table, elements: self.elems.clone(), index })
    }
}

/// A closed family together with its abstract table and the dictionary
/// between element ids and maps.
#[derive(Clone, Debug)]
pub struct AbstractedFamily {
    pub table: SemigroupTable,
    pub elements: Vec<PartialBijection>,
    pub index: HashMap<PartialBijection, Element>,
}

impl AbstractedFamily {
    pub fn map_of(&self, s: Element) -> &PartialBijection {
        &self.elements[s]
    }

    pub fn element_of(&self, map: &PartialBijection) -> Option<Element> {
        self.index.get(map).copied()
    }
}

/// All of `I_A` for `|A| = m`.
pub fn symmetric_inverse_semigroup(m: usize) -> Result<ConcreteFamily, PartialMapError> {
    if m > FULL_ENUMERATION_POINT_CAP {
        return Err(PartialMapError::SizeCapExceeded {
            what: "symmetric inverse semigroup",
            requested: m,
            limit: FULL_ENUMERATION_POINT_CAP,
        });
    }
    let mut out = Vec::new();
    let mut current = vec![None; m];
    let mut used = vec![false; m];
    enumerate_injections(0, &mut current, &mut used, &mut |entries| {
        out.push(PartialBijection::new(entries.to_vec()).expect("injective by construction"));
    });
    ConcreteFamily::from_elements(m, out)
}

fn enumerate_injections(
    point: usize,
    current: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[Option<usize>]),
) {
    if point == current.len() {
        emit(current);
        return;
    }
    current[point] = None;
    enumerate_injections(point + 1, current, used, emit);
    for b in 0..current.len() {
        if !used[b] {
            used[b] = true;
            current[point] = Some(b);
            enumerate_injections(point + 1, current, used, emit);
            used[b] = false;
        }
    }
    current[point] = None;
}

/// Worklist closure under composition and inversion, with explicit caps.
pub fn generate_closure(
    generators: &[PartialBijection],
    max_points: usize,
    max_elements: usize,
) -> Result<ConcreteFamily, PartialMapError> {
    let first = generators.first().ok_or(PartialMapError::EmptyGenerators)?;
    let m = first.degree();
    if m > max_points {
        return Err(PartialMapError::SizeCapExceeded { what: "closure point set", requested: m, limit: max_points });
    }
    if let Some(bad) = generators.iter().find(|g| g.degree() != m) {
        return Err(PartialMapError::MismatchedPointSets { left: m, right: bad.degree() });
    }

    let mut seen: HashSet<PartialBijection> = HashSet::new();
    let mut elems: Vec<PartialBijection> = Vec::new();
    let mut cursor = 0;
    let push = |x: PartialBijection, seen: &mut HashSet<_>, elems: &mut Vec<_>| -> Result<(), PartialMapError> {
        if seen.insert(x.clone()) {
            elems.push(x);
            if elems.len() > max_elements {
                return Err(PartialMapError::ExplosionCap(max_elements));
            }
        }
        Ok(())
    };
    for g in generators {
        push(g.clone(), &mut seen, &mut elems)?;
        push(g.invert(), &mut seen, &mut elems)?;
    }
    while cursor < elems.len() {
        let x = elems[cursor].clone();
        cursor += 1;
        push(x.invert(), &mut seen, &mut elems)?;
        let mut i = 0;
        while i < elems.len() {
            let y = elems[i].clone();
            push(x.then(&y), &mut seen, &mut elems)?;
            push(y.then(&x), &mut seen, &mut elems)?;
            i += 1;
        }
    }
    ConcreteFamily::from_elements(m, elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::SemigroupTable;

    fn pb(entries: &[Option<usize>]) -> PartialBijection {
        PartialBijection::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn composition_examples() {
        let one_two = pb(&[Some(1), None]);
        let two_one = pb(&[None, Some(0)]);
        assert_eq!(one_two.compose(&two_one).unwrap(), PartialBijection::partial_identity(2, [0]));
        assert!(one_two.compose(&PartialBijection::empty(2)).unwrap().is_empty());
        assert_eq!(PartialBijection::identity(2).compose(&one_two).unwrap(), one_two);
        assert_eq!(
            one_two.compose(&PartialBijection::empty(3)).unwrap_err(),
            PartialMapError::MismatchedPointSets { left: 2, right: 3 }
        );
    }

    #[test]
    fn inversion_examples() {
        let one_two = pb(&[Some(1), None]);
        assert_eq!(one_two.invert(), pb(&[None, Some(0)]));
        assert_eq!(PartialBijection::empty(2).invert(), PartialBijection::empty(2));
        let delta = PartialBijection::partial_identity(3, [0, 2]);
        assert_eq!(delta.invert(), delta);
    }

    #[test]
    fn rejects_non_injective_entries() {
        assert_eq!(
            PartialBijection::new(vec![Some(0), Some(0)]).unwrap_err(),
            PartialMapError::NotInjective { first: 0, second: 1, image: 0 }
        );
    }

    #[test]
    fn symmetric_inverse_semigroup_sizes() {
        // Σ_k C(m,k)² k!
        let expected = [1, 2, 7, 34, 209, 1546];
        for (m, &count) in expected.iter().enumerate() {
            assert_eq!(symmetric_inverse_semigroup(m).unwrap().len(), count);
        }
        assert!(matches!(symmetric_inverse_semigroup(6), Err(PartialMapError::SizeCapExceeded { .. })));
    }

    #[test]
    fn closure_examples() {
        let swap = PartialBijection::total(&[1, 0]).unwrap();
        let fam = ConcreteFamily::generate(std::slice::from_ref(&swap)).unwrap();
        assert_eq!(fam.elements(), &[PartialBijection::identity(2), swap]);

        let fam = ConcreteFamily::generate(&[pb(&[Some(1), None])]).unwrap();
        assert_eq!(fam.len(), 5);
        assert!(fam.elements().iter().any(|e| e.is_empty()));

        assert_eq!(ConcreteFamily::generate(&[]).unwrap_err(), PartialMapError::EmptyGenerators);
        let big = PartialBijection::identity(9);
        assert!(matches!(ConcreteFamily::generate(&[big]), Err(PartialMapError::SizeCapExceeded { .. })));
        let perm = PartialBijection::total(&[1, 2, 3, 0]).unwrap();
        assert_eq!(generate_closure(&[perm], 8, 2).unwrap_err(), PartialMapError::ExplosionCap(2));
    }

    #[test]
    fn transitivity_examples() {
        assert!(symmetric_inverse_semigroup(2).unwrap().is_transitive());
        let fam = ConcreteFamily::from_elements(
            2,
            vec![PartialBijection::empty(2), PartialBijection::partial_identity(2, [0])],
        )
        .unwrap();
        assert!(fam.is_closed());
        assert!(!fam.is_transitive());
        let b2 = ConcreteFamily::generate(&[pb(&[Some(1), None])]).unwrap();
        assert!(b2.is_transitive());
    }

    #[test]
    fn abstract_tables() {
        let i2 = symmetric_inverse_semigroup(2).unwrap().abstract_table().unwrap();
        assert_eq!(i2.table.order(), 7);
        let trivial = ConcreteFamily::from_elements(1, vec![PartialBijection::identity(1)]).unwrap();
        let t = trivial.abstract_table().unwrap().table;
        assert_eq!(t.order(), 1);
        assert!(t.is_group());
        let b2 = ConcreteFamily::generate(&[pb(&[Some(1), None])]).unwrap().abstract_table().unwrap();
        assert_eq!(b2.table.order(), 5);
        assert_eq!(b2.table.zero(), Some(0));
        assert!(b2.map_of(0).is_empty());
    }

    #[test]
    fn order_and_green_match_graphs_in_i3() {
        let fam = symmetric_inverse_semigroup(3).unwrap().abstract_table().unwrap();
        let s: &SemigroupTable = &fam.table;
        let green = s.green_relations();
        for x in s.elements() {
            let fx = fam.map_of(x);
            assert!(s.is_idempotent(x) == fx.is_idempotent());
            for y in s.elements() {
                let fy = fam.map_of(y);
                assert_eq!(s.natural_leq(x, y), fx.is_restriction_of(fy));
                assert_eq!(green.l.same_class(x, y), fx.domain() == fy.domain());
                assert_eq!(green.r.same_class(x, y), fx.range() == fy.range());
            }
        }
    }
}
