//! Isomorphism testing by backtracking over generator images.

use super::{greedy_generators, Assignment, Target};
use crate::table::{Element, SemigroupTable};

/// Isomorphism-invariant data of one element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    idempotent: bool,
    zero: bool,
    identity: bool,
    height: usize,
    above: usize,
    below: usize,
    d_class: usize,
    l_class: usize,
    r_class: usize,
    index: usize,
    period: usize,
    centralizer: usize,
}

/// Per-element signatures, indexed by element id.
pub fn invariant_signature(s: &SemigroupTable) -> Vec<Signature> {
    let heights = s.heights();
    let green = s.green_relations();
    s.elements()
        .map(|x| {
            let (index, period) = s.index_and_period(x);
            Signature {
                idempotent: s.is_idempotent(x),
                zero: s.zero() == Some(x),
                identity: s.identity() == Some(x),
                height: heights[x],
                above: s.up_set(x).len(),
                below: s.elements().filter(|&y| s.natural_leq(y, x)).count(),
                d_class: green.d.class(x).len(),
                l_class: green.l.class(x).len(),
                r_class: green.r.class(x).len(),
                index,
                period,
                centralizer: s.elements().filter(|&y| s.product(x, y) == s.product(y, x)).count(),
            }
        })
        .collect()
}

struct Table<'a> {
    t: &'a SemigroupTable,
    source: Vec<Signature>,
    target: Vec<Signature>,
}

impl Target for Table<'_> {
    type Image = Element;

    fn product(&self, a: &Element, b: &Element) -> Element {
        self.t.product(*a, *b)
    }

    fn inverse(&self, a: &Element) -> Element {
        self.t.inverse(*a)
    }

    fn admits(&self, x: Element, image: &Element) -> bool {
        self.source[x] == self.target[*image]
    }
}

/// An isomorphism `φ` with `φ[x]` the image of `x`, or `None`.
pub fn are_isomorphic(s: &SemigroupTable, t: &SemigroupTable) -> Option<Vec<Element>> {
    if s.order() != t.order() || s.idempotents().len() != t.idempotents().len() {
        return None;
    }
    let source = invariant_signature(s);
    let target = invariant_signature(t);
    let mut a = source.clone();
    let mut b = target.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let all: Vec<Element> = s.elements().collect();
    let generators = greedy_generators(s, &[], &all);
    let candidates: Vec<Vec<Element>> =
        generators.iter().map(|&g| t.elements().filter(|&y| target[y] == source[g]).collect()).collect();
    let mut state = Assignment::new(s, Table { t, source, target });
    if descend(&mut state, &generators, &candidates, 0) {
        let phi = state.images();
        debug_assert!(s.elements().all(|x| s.elements().all(|y| phi[s.product(x, y)] == t.product(phi[x], phi[y]))));
        Some(phi)
    } else {
        None
    }
}

fn descend(
    state: &mut Assignment<'_, Table<'_>>,
    generators: &[Element],
    candidates: &[Vec<Element>],
    k: usize,
) -> bool {
    if k == generators.len() {
        return state.is_complete();
    }
    let g = generators[k];
    if state.image(g).is_some() {
        return descend(state, generators, candidates, k + 1);
    }
    for &y in &candidates[k] {
        let mark = state.mark();
        if state.assign(g, y) && descend(state, generators, candidates, k + 1) {
            return true;
        }
        state.undo(mark);
    }
    false
}
