//! The test corpus of small inverse semigroups.

use std::collections::{BTreeMap, HashSet};

use super::{are_isomorphic, generated, invariant_signature, small_groups, Signature};
use crate::catalog;
use crate::element_set::ElementSet;
use crate::error::OracleError;
use crate::table::{Element, SemigroupTable};

/// Largest `max_order` accepted by [`generate_corpus`].
pub const CORPUS_ORDER_CAP: usize = 64;

/// Deterministic corpus of pairwise non-isomorphic inverse semigroups of
/// order at most `max_order`: every inverse subsemigroup of `I₂` and `I₃`,
/// the groups of order at most 12, the semilattices of order at most 5,
/// `B₂`, and each of the smaller ones with a zero or an identity adjoined.
/// Sorted by order; the first construction of each class names it.
pub fn generate_corpus(max_order: usize) -> Result<Vec<SemigroupTable>, OracleError> {
    if max_order > CORPUS_ORDER_CAP {
        return Err(OracleError::SizeCapExceeded {
            what: "corpus order",
            requested: max_order,
            limit: CORPUS_ORDER_CAP,
        });
    }
    let mut base: Vec<SemigroupTable> = Vec::new();
    for k in 1..=5 {
        base.extend(semilattices(k));
    }
    base.extend(small_groups(12));
    base.push(catalog::brandt_b2());
    base.extend(subsemigroup_tables(&catalog::symmetric_inverse(2), "I2"));
    base.retain(|s| s.order() <= max_order);

    let mut candidates = base.clone();
    for s in base.iter().filter(|s| s.order() < 7) {
        let name = s.name().unwrap_or("?");
        candidates.push(s.adjoin_zero().with_name(format!("{name}+0")));
        candidates.push(s.adjoin_identity().with_name(format!("{name}+1")));
    }
    candidates.extend(
        subsemigroup_tables(&catalog::symmetric_inverse(3), "I3").into_iter().filter(|s| s.order() <= max_order),
    );
    candidates.retain(|s| s.order() <= max_order);

    let mut classes: BTreeMap<(usize, Vec<Signature>), Vec<SemigroupTable>> = BTreeMap::new();
    let mut corpus: Vec<SemigroupTable> = Vec::new();
    for s in candidates {
        let mut key = invariant_signature(&s);
        key.sort();
        let bucket = classes.entry((s.order(), key)).or_default();
        if bucket.iter().all(|t| are_isomorphic(t, &s).is_none()) {
            bucket.push(s.clone());
            corpus.push(s);
        }
    }
    corpus.sort_by_key(|s| s.order());
    Ok(corpus)
}

/// The semilattices of order `k` up to isomorphism, as meet tables of
/// partial orders on `0..k` that refine the usual order.
pub fn semilattices(k: usize) -> Vec<SemigroupTable> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut found: Vec<SemigroupTable> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            leq[i][j] = mask >> bit & 1 == 1;
        }
        let transitive = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c])));
        if !transitive {
            continue;
        }
        let meet = |a: usize, b: usize| -> Option<usize> {
            let lower: Vec<usize> = (0..k).filter(|&c| leq[c][a] && leq[c][b]).collect();
            lower.iter().copied().find(|&m| lower.iter().all(|&c| leq[c][m]))
        };
        let mut table = vec![vec![0; k]; k];
        let mut complete = true;
        'rows: for (a, row) in table.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                match meet(a, b) {
                    Some(m) => *entry = m,
                    None => {
                        complete = false;
                        break 'rows;
                    }
                }
            }
        }
        if !complete {
            continue;
        }
        let s = SemigroupTable::from_fn(k, |a, b| table[a][b]).expect("meet semilattice");
        if found.iter().all(|t| are_isomorphic(t, &s).is_none()) {
            let name = if (0..k).all(|a| (0..k).all(|b| leq[a][b] || leq[b][a])) {
                format!("E{k}")
            } else {
                format!("SL{k}.{}", found.len())
            };
            found.push(s.with_name(name));
        }
    }
    found
}

/// Every inverse subsemigroup of `s`, by size and then carrier.
pub fn inverse_subsemigroups(s: &SemigroupTable) -> Vec<ElementSet> {
    let mut found: HashSet<ElementSet> = HashSet::new();
    let mut queue: Vec<ElementSet> = Vec::new();
    for x in s.elements() {
        let t = generated(s, [x]);
        if found.insert(t.clone()) {
            queue.push(t);
        }
    }
    while let Some(t) = queue.pop() {
        for x in t.complement().iter() {
            let bigger = generated(s, t.iter().chain([x]));
            if found.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let mut subs: Vec<ElementSet> = found.into_iter().collect();
    subs.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    subs
}

/// The inverse subsemigroup `members` as a table, numbered in ascending
/// order of the ids in `s`.
pub fn restrict(s: &SemigroupTable, members: &ElementSet) -> SemigroupTable {
    let ids: Vec<Element> = members.to_vec();
    let position = |x: Element| ids.binary_search(&x).expect("closed under products");
    SemigroupTable::from_fn(ids.len(), |a, b| position(s.product(ids[a], ids[b]))).expect("inverse subsemigroup")
}

fn subsemigroup_tables(s: &SemigroupTable, prefix: &str) -> Vec<SemigroupTable> {
    inverse_subsemigroups(s)
        .iter()
        .map(|members| restrict(s, members).with_name(format!("{prefix}{:?}", members.to_vec())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semilattice_counts() {
        let counts: Vec<usize> = (1..=5).map(|k| semilattices(k).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15]);
    }

    #[test]
    fn subsemigroups_of_i2() {
        let subs = inverse_subsemigroups(&catalog::i2());
        assert_eq!(subs.last().map(ElementSet::len), Some(7));
        assert!(subs.iter().any(|t| t.to_vec() == [0, 1, 2, 3, 4]));
        assert!(subs.iter().all(|t| restrict(&catalog::i2(), t).order() == t.len()));
    }

    #[test]
    fn corpus_contents() {
        let corpus = generate_corpus(7).unwrap();
        let has = |t: &SemigroupTable| corpus.iter().any(|s| s.order() == t.order() && are_isomorphic(s, t).is_some());
        assert!(has(&catalog::chain(3)));
        assert!(has(&catalog::brandt_b2()));
        assert!(has(&catalog::i2()));
        assert!(corpus.windows(2).all(|w| w[0].order() <= w[1].order()));
        assert!(matches!(generate_corpus(65), Err(OracleError::SizeCapExceeded { .. })));
    }
}
