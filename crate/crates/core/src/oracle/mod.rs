//! Brute-force ground truth, independent of the filter machinery.

mod corpus;
mod embed;
mod groups;
mod iso;

pub use corpus::{generate_corpus, inverse_subsemigroups, restrict, semilattices, CORPUS_ORDER_CAP};
pub use embed::{brute_force_noble, EmbeddingWitness, ORACLE_DEGREE_CAP, ORACLE_ORDER_CAP};
pub use groups::{group_core, small_groups, subgroups};
pub use iso::{are_isomorphic, invariant_signature, Signature};

use std::collections::HashMap;
use std::hash::Hash;

use crate::element_set::ElementSet;
use crate::table::{Element, SemigroupTable};

/// Inverse subsemigroup generated by `gens`.
pub(crate) fn generated(s: &SemigroupTable, gens: impl IntoIterator<Item = Element>) -> ElementSet {
    let mut set = s.empty_set();
    let mut members: Vec<Element> = Vec::new();
    let mut cursor = 0;
    let push = |x: Element, set: &mut ElementSet, members: &mut Vec<Element>| {
        if set.insert(x) {
            members.push(x);
        }
    };
    for g in gens {
        push(g, &mut set, &mut members);
        push(s.inverse(g), &mut set, &mut members);
    }
    while cursor < members.len() {
        let x = members[cursor];
        cursor += 1;
        push(s.inverse(x), &mut set, &mut members);
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            push(s.product(x, y), &mut set, &mut members);
            push(s.product(y, x), &mut set, &mut members);
            i += 1;
        }
    }
    set
}

/// Greedy generating set: from `preset` (taken as already generated),
/// repeatedly add the candidate that enlarges the generated set the most,
/// scanning `candidates` in order and keeping the first on ties.
pub(crate) fn greedy_generators(s: &SemigroupTable, preset: &[Element], candidates: &[Element]) -> Vec<Element> {
    let mut chosen: Vec<Element> = Vec::new();
    let mut current = generated(s, preset.iter().copied());
    loop {
        let mut best: Option<(usize, Element, ElementSet)> = None;
        for &c in candidates.iter().filter(|&&c| !current.contains(c)) {
            let grown = generated(s, preset.iter().chain(&chosen).copied().chain([c]));
            let size = grown.len();
            if best.as_ref().is_none_or(|(b, _, _)| size > *b) {
                best = Some((size, c, grown));
            }
        }
        match best {
            Some((_, c, grown)) => {
                chosen.push(c);
                current = grown;
            }
            None => return chosen,
        }
    }
}

/// Codomain of a homomorphism search.
pub(crate) trait Target {
    type Image: Clone + Eq + Hash;
    fn product(&self, a: &Self::Image, b: &Self::Image) -> Self::Image;
    fn inverse(&self, a: &Self::Image) -> Self::Image;
    /// Local test on a single assignment `x ↦ image`.
    fn admits(&self, x: Element, image: &Self::Image) -> bool;
}

/// A partial injective assignment `S → T` kept closed under products and
/// inverses of assigned elements, with an undo trail.
pub(crate) struct Assignment<'a, T: Target> {
    s: &'a SemigroupTable,
    target: T,
    images: Vec<Option<T::Image>>,
    owner: HashMap<T::Image, Element>,
    /// Assigned elements in assignment order; doubles as the undo trail.
    assigned: Vec<Element>,
}

impl<'a, T: Target> Assignment<'a, T> {
    pub(crate) fn new(s: &'a SemigroupTable, target: T) -> Self {
        Assignment { s, target, images: vec![None; s.order()], owner: HashMap::new(), assigned: Vec::new() }
    }

    pub(crate) fn target(&self) -> &T {
        &self.target
    }

    pub(crate) fn image(&self, x: Element) -> Option<&T::Image> {
        self.images[x].as_ref()
    }

    pub(crate) fn mark(&self) -> usize {
        self.assigned.len()
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.assigned.len() == self.s.order()
    }

    pub(crate) fn images(&self) -> Vec<T::Image> {
        self.images.iter().map(|i| i.clone().expect("complete assignment")).collect()
    }

    /// Sets `x ↦ image` and everything it forces. On `false` the state is
    /// partially updated; roll back with [`undo`](Self::undo).
    pub(crate) fn assign(&mut self, x: Element, image: T::Image) -> bool {
        let mut queue = vec![(x, image)];
        while let Some((x, image)) = queue.pop() {
            if let Some(existing) = &self.images[x] {
                if *existing != image {
                    return false;
                }
                continue;
            }
            if self.owner.contains_key(&image) || !self.target.admits(x, &image) {
                return false;
            }
            self.owner.insert(image.clone(), x);
            self.images[x] = Some(image.clone());
            self.assigned.push(x);
            queue.push((self.s.inverse(x), self.target.inverse(&image)));
            for &y in &self.assigned {
                let other = self.images[y].as_ref().expect("assigned");
                queue.push((self.s.product(x, y), self.target.product(&image, other)));
                queue.push((self.s.product(y, x), self.target.product(other, &image)));
            }
        }
        true
    }

    pub(crate) fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().expect("nonempty trail");
            let image = self.images[x].take().expect("trail entries are assigned");
            self.owner.remove(&image);
        }
    }
}
