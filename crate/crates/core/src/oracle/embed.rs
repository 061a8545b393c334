//! Exhaustive search for transitive faithful representations.
//!
//! Each degree `d` is searched separately. Two images are forced for any
//! transitive representation: the identity acts as `Δ_A` because every
//! point lies in some domain, and for `d ≥ 2` the zero acts as `∅` because
//! a nonempty partial identity fixed under every `f(s)` would block points
//! outside it. Both are invariant under relabelling the points, so the
//! first free generator may be taken in a canonical form.

use itertools::Itertools;

use super::{greedy_generators, Assignment, Target};
use crate::error::OracleError;
use crate::partial::{ConcreteFamily, PartialBijection};
use crate::table::{Element, SemigroupTable};

/// Largest semigroup accepted by [`brute_force_noble`].
pub const ORACLE_ORDER_CAP: usize = 10;
/// Largest point set searched by [`brute_force_noble`].
pub const ORACLE_DEGREE_CAP: usize = 8;

/// An injective homomorphism into `I_A` with transitive image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub degree: usize,
    /// Image of each element, indexed by element id.
    pub assignment: Vec<PartialBijection>,
    pub transitive: bool,
}

impl EmbeddingWitness {
    pub fn family(&self) -> ConcreteFamily {
        ConcreteFamily::from_elements(self.degree, self.assignment.clone()).expect("images share one point set")
    }

    /// Rechecks homomorphism, injectivity and transitivity from scratch.
    pub fn verify(&self, s: &SemigroupTable) -> bool {
        let a = &self.assignment;
        a.len() == s.order()
            && a.iter().all(|p| p.degree() == self.degree)
            && a.iter().all_unique()
            && s.elements().all(|x| s.elements().all(|y| a[s.product(x, y)] == a[x].then(&a[y])))
            && self.family().is_transitive() == self.transitive
    }
}

struct PartialMaps<'a> {
    s: &'a SemigroupTable,
    heights: Vec<usize>,
}

impl Target for PartialMaps<'_> {
    type Image = PartialBijection;

    fn product(&self, a: &PartialBijection, b: &PartialBijection) -> PartialBijection {
        a.then(b)
    }

    fn inverse(&self, a: &PartialBijection) -> PartialBijection {
        a.invert()
    }

    fn admits(&self, x: Element, image: &PartialBijection) -> bool {
        // a chain of length h below x maps to strictly growing graphs
        image.is_idempotent() == self.s.is_idempotent(x) && image.rank() >= self.heights[x]
    }
}

/// Searches degrees `1..=max_degree` for a transitive faithful
/// representation. `None` means there is none up to that degree.
pub fn brute_force_noble(s: &SemigroupTable, max_degree: usize) -> Result<Option<EmbeddingWitness>, OracleError> {
    if s.order() > ORACLE_ORDER_CAP {
        return Err(OracleError::SizeCapExceeded {
            what: "oracle semigroup order",
            requested: s.order(),
            limit: ORACLE_ORDER_CAP,
        });
    }
    if max_degree > ORACLE_DEGREE_CAP {
        return Err(OracleError::SizeCapExceeded {
            what: "oracle degree",
            requested: max_degree,
            limit: ORACLE_DEGREE_CAP,
        });
    }
    // the zero is left free at degree 1, so it stays on the generator list
    let pins: Vec<Element> = s.identity().into_iter().collect();
    let heights = s.heights();
    let mut idempotents: Vec<Element> = s.idempotents().iter().collect();
    idempotents.sort_by_key(|&e| std::cmp::Reverse(heights[e]));
    let mut generators = greedy_generators(s, &pins, &idempotents);
    let others: Vec<Element> = s.elements().filter(|&x| !s.is_idempotent(x)).collect();
    let preset: Vec<Element> = pins.iter().chain(&generators).copied().collect();
    generators.extend(greedy_generators(s, &preset, &others));

    for degree in 1..=max_degree {
        let mut search = Search {
            generators: &generators,
            degree,
            state: Assignment::new(s, PartialMaps { s, heights: heights.clone() }),
        };
        if let Some(assignment) = search.run(s) {
            let witness = EmbeddingWitness { degree, assignment, transitive: true };
            debug_assert!(witness.verify(s));
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

struct Search<'a, 'b> {
    generators: &'b [Element],
    degree: usize,
    state: Assignment<'a, PartialMaps<'a>>,
}

impl Search<'_, '_> {
    fn run(&mut self, s: &SemigroupTable) -> Option<Vec<PartialBijection>> {
        let d = self.degree;
        if let Some(one) = s.identity() {
            if !self.state.assign(one, PartialBijection::identity(d)) {
                return None;
            }
        }
        if let Some(zero) = s.zero().filter(|_| d >= 2) {
            if !self.state.assign(zero, PartialBijection::empty(d)) {
                return None;
            }
        }
        self.descend(0, true).then(|| self.state.images())
    }

    /// `fresh` while only relabelling-invariant images are placed.
    fn descend(&mut self, k: usize, fresh: bool) -> bool {
        if k == self.generators.len() {
            debug_assert!(self.state.is_complete(), "generators do not generate");
            return self.is_transitive();
        }
        let g = self.generators[k];
        if self.state.image(g).is_some() {
            return self.descend(k + 1, fresh);
        }
        for candidate in self.candidates(g, fresh) {
            let mark = self.state.mark();
            if self.state.assign(g, candidate) && self.descend(k + 1, false) {
                return true;
            }
            self.state.undo(mark);
        }
        false
    }

    fn candidates(&self, g: Element, canonical: bool) -> Vec<PartialBijection> {
        let d = self.degree;
        let s = self.state.target().s;
        if s.is_idempotent(g) {
            if canonical {
                return (0..=d).map(|r| PartialBijection::partial_identity(d, 0..r)).collect();
            }
            return (0u32..1 << d)
                .map(|mask| PartialBijection::partial_identity(d, (0..d).filter(|&a| mask >> a & 1 == 1)))
                .collect();
        }
        // idempotent generators come first, so both projections are placed
        let image_of = |e: Element| self.state.image(e).expect("idempotents are assigned").domain();
        let domain = image_of(s.domain_idempotent(g));
        let range = image_of(s.range_idempotent(g));
        if domain.len() != range.len() {
            return Vec::new();
        }
        if canonical && domain.len() == d {
            return cycle_type_representatives(d);
        }
        range
            .iter()
            .copied()
            .permutations(range.len())
            .map(|images| {
                let mut entries = vec![None; d];
                for (&a, b) in domain.iter().zip(images) {
                    entries[a] = Some(b);
                }
                PartialBijection::new(entries).expect("a bijection between subsets")
            })
            .collect()
    }

    fn is_transitive(&self) -> bool {
        let d = self.degree;
        let mut reach = vec![false; d * d];
        for x in self.state.target().s.elements() {
            for (a, b) in self.state.image(x).expect("complete").pairs() {
                reach[a * d + b] = true;
            }
        }
        reach.into_iter().all(|r| r)
    }
}

/// One permutation of each cycle type on `d` points.
fn cycle_type_representatives(d: usize) -> Vec<PartialBijection> {
    fn partitions(rest: usize, largest: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=largest.min(rest)).rev() {
            current.push(part);
            partitions(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut shapes = Vec::new();
    partitions(d, d, &mut Vec::new(), &mut shapes);
    shapes
        .into_iter()
        .map(|shape| {
            let mut images = Vec::with_capacity(d);
            let mut start = 0;
            for len in shape {
                images.extend((1..=len).map(|i| start + i % len));
                start += len;
            }
            PartialBijection::total(&images).expect("a permutation")
        })
        .collect()
}
