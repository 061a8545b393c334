//! Small named semigroups used throughout the tests and the corpus.

use crate::partial::{symmetric_inverse_semigroup, ConcreteFamily, PartialBijection};
use crate::table::SemigroupTable;

/// The chain semilattice `0 < 1 < .. < k-1` under `min`.
pub fn chain(k: usize) -> SemigroupTable {
    SemigroupTable::from_fn(k, |s, t| s.min(t)).expect("a chain is a semilattice").with_name(format!("E{k}"))
}

/// Cyclic group of order `k` under addition mod `k`.
pub fn cyclic_group(k: usize) -> SemigroupTable {
    SemigroupTable::from_fn(k, |s, t| (s + t) % k).expect("cyclic groups are groups").with_name(format!("C{k}"))
}

/// `S₃` as the permutations of three points, elements ordered as the
/// abstract table of their closure.
pub fn symmetric_group_3() -> SemigroupTable {
    let gens = [PartialBijection::total(&[1, 0, 2]).unwrap(), PartialBijection::total(&[1, 2, 0]).unwrap()];
    let family = ConcreteFamily::generate(&gens).expect("S3 closure");
    family.abstract_table().expect("closed").table.with_name("S3")
}

/// The symmetric inverse semigroup on `m` points as an abstract table.
pub fn symmetric_inverse(m: usize) -> SemigroupTable {
    symmetric_inverse_semigroup(m)
        .expect("within the enumeration cap")
        .abstract_table()
        .expect("closed")
        .table
        .with_name(format!("I{m}"))
}

/// `I₂` with ids 0=∅, 1=δ₁, 2=δ₂, 3=[1→2], 4=[2→1], 5=id, 6=swap.
pub fn i2() -> SemigroupTable {
    symmetric_inverse(2)
}

/// The five-element Brandt semigroup: closure of `[1→2]` on two points.
pub fn brandt_b2() -> SemigroupTable {
    let gen = PartialBijection::new(vec![Some(1), None]).unwrap();
    ConcreteFamily::generate(&[gen]).expect("B2 closure").abstract_table().expect("closed").table.with_name("B2")
}
