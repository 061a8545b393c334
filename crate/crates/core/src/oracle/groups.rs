//! Groups: cores of subgroups, subgroup lattices, and every group of order
//! at most 24 as a Cayley table.

use std::collections::HashSet;

use super::generated;
use crate::catalog::cyclic_group;
use crate::element_set::ElementSet;
use crate::error::OracleError;
use crate::partial::{ConcreteFamily, PartialBijection};
use crate::table::{Element, SemigroupTable};

/// Intersection of the conjugates `u H u⁻¹`.
pub fn group_core(g: &SemigroupTable, h: &ElementSet) -> Result<ElementSet, OracleError> {
    if !g.is_group() {
        return Err(OracleError::NotAGroup(g.idempotents().len()));
    }
    let is_subgroup =
        !h.is_empty() && h.iter().all(|x| h.contains(g.inverse(x)) && h.iter().all(|y| h.contains(g.product(x, y))));
    if !is_subgroup {
        return Err(OracleError::NotASubgroup(h.to_vec()));
    }
    let mut core = h.clone();
    for u in g.elements() {
        let conjugate =
            ElementSet::from_elements(g.order(), h.iter().map(|x| g.product(g.product(u, x), g.inverse(u))));
        core.intersect_with(&conjugate);
    }
    Ok(core)
}

/// Every subgroup of a group, sorted by carrier.
pub fn subgroups(g: &SemigroupTable) -> Result<Vec<ElementSet>, OracleError> {
    if !g.is_group() {
        return Err(OracleError::NotAGroup(g.idempotents().len()));
    }
    let trivial = generated(g, g.identity());
    let mut found: HashSet<ElementSet> = HashSet::from([trivial.clone()]);
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in h.complement().iter() {
            let bigger = generated(g, h.iter().chain([x]));
            if found.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let mut out: Vec<ElementSet> = found.into_iter().collect();
    out.sort();
    Ok(out)
}

/// One representative of every isomorphism class of groups of order at
/// most `max_order` (capped at 24), by order.
pub fn small_groups(max_order: usize) -> Vec<SemigroupTable> {
    let c = cyclic_group;
    let x = direct_product;
    let sd = semidirect_cyclic;
    let mut out: Vec<SemigroupTable> = Vec::new();
    for n in 1..=max_order.min(24) {
        let groups: Vec<SemigroupTable> = match n {
            4 => vec![c(4), x(&c(2), &c(2))],
            6 => vec![c(6), sd(3, 2, 2).with_name("S3")],
            8 => vec![c(8), x(&c(4), &c(2)), x(&x(&c(2), &c(2)), &c(2)), dihedral(4), dicyclic(2)],
            9 => vec![c(9), x(&c(3), &c(3))],
            10 => vec![c(10), dihedral(5)],
            12 => vec![c(12), x(&c(6), &c(2)), dihedral(6), alternating_4(), dicyclic(3)],
            14 => vec![c(14), dihedral(7)],
            16 => {
                let klein = x(&c(2), &c(2));
                let c4c2 = x(&c(4), &c(2));
                vec![
                    c(16),
                    x(&c(4), &c(4)),
                    // C2² ⋊ C4, the generator swapping the two factors
                    semidirect(&klein, |v| (v % 2) * 2 + v / 2, 4).with_name("C2^2:C4"),
                    sd(4, 4, 3).with_name("C4:C4"),
                    x(&c(8), &c(2)),
                    sd(8, 2, 5).with_name("M16"),
                    dihedral(8),
                    sd(8, 2, 3).with_name("SD16"),
                    dicyclic(4),
                    x(&c4c2, &c(2)),
                    x(&dihedral(4), &c(2)),
                    x(&dicyclic(2), &c(2)),
                    // Pauli group: X commutes with i, Z X Z⁻¹ = i² X
                    semidirect(&c4c2, |v| ((v / 2 + 2 * (v % 2)) % 4) * 2 + v % 2, 2).with_name("Pauli"),
                    x(&x(&klein, &c(2)), &c(2)),
                ]
            }
            18 => vec![
                c(18),
                x(&c(6), &c(3)),
                dihedral(9),
                x(&sd(3, 2, 2).with_name("S3"), &c(3)),
                semidirect(&x(&c(3), &c(3)), |v| ((3 - v / 3) % 3) * 3 + (3 - v % 3) % 3, 2).with_name("C3^2:C2"),
            ],
            20 => vec![c(20), x(&c(10), &c(2)), dihedral(10), dicyclic(5), sd(5, 4, 2).with_name("F20")],
            21 => vec![c(21), sd(7, 3, 2).with_name("C7:C3")],
            22 => vec![c(22), dihedral(11)],
            24 => {
                let s3 = sd(3, 2, 2).with_name("S3");
                let klein = x(&c(2), &c(2));
                vec![
                    c(24),
                    x(&c(12), &c(2)),
                    x(&x(&c(6), &c(2)), &c(2)),
                    symmetric_4(),
                    special_linear_2_3(),
                    x(&alternating_4(), &c(2)),
                    dihedral(12),
                    dicyclic(6),
                    sd(3, 8, 2).with_name("C3:C8"),
                    x(&c(3), &dihedral(4)),
                    x(&c(3), &dicyclic(2)),
                    x(&s3, &c(4)),
                    x(&x(&s3, &c(2)), &c(2)),
                    x(&dicyclic(3), &c(2)),
                    // inverts C3 and swaps the two involutions
                    semidirect(&x(&c(3), &klein), |v| ((3 - v / 4) % 3) * 4 + (v % 2) * 2 + (v % 4) / 2, 2)
                        .with_name("C3:D4"),
                ]
            }
            _ => vec![c(n)],
        };
        out.extend(groups);
    }
    out
}

fn group(n: usize, mul: impl Fn(Element, Element) -> Element, name: String) -> SemigroupTable {
    SemigroupTable::from_fn(n, mul).expect("group law").with_name(name)
}

fn label(s: &SemigroupTable) -> String {
    s.name().unwrap_or("?").to_string()
}

/// `G × H` with `(g, h)` numbered `g·|H| + h`.
pub(crate) fn direct_product(g: &SemigroupTable, h: &SemigroupTable) -> SemigroupTable {
    let m = h.order();
    group(
        g.order() * m,
        |a, b| g.product(a / m, b / m) * m + h.product(a % m, b % m),
        format!("{}x{}", label(g), label(h)),
    )
}

/// `N ⋊ C_k` where the generator of `C_k` acts on `N` by the automorphism
/// `alpha`. The element `(x, i)` is numbered `i·|N| + x`.
fn semidirect(n: &SemigroupTable, alpha: impl Fn(Element) -> Element, k: usize) -> SemigroupTable {
    let size = n.order();
    let mut powers: Vec<Vec<Element>> = vec![(0..size).collect()];
    for i in 1..k {
        powers.push(powers[i - 1].iter().map(|&v| alpha(v)).collect());
    }
    debug_assert!(powers[k - 1].iter().map(|&v| alpha(v)).eq(0..size), "alpha^k ≠ 1");
    group(
        size * k,
        |a, b| {
            let (x1, i1) = (a % size, a / size);
            let (x2, i2) = (b % size, b / size);
            ((i1 + i2) % k) * size + n.product(x1, powers[i1][x2])
        },
        String::new(),
    )
}

/// `C_m ⋊ C_k` with the generator acting as multiplication by `r`.
fn semidirect_cyclic(m: usize, k: usize, r: usize) -> SemigroupTable {
    semidirect(&cyclic_group(m), |v| v * r % m, k)
}

fn dihedral(m: usize) -> SemigroupTable {
    semidirect_cyclic(m, 2, m - 1).with_name(format!("D{m}"))
}

/// The dicyclic group of order `4k`: `a^{2k} = 1`, `x² = a^k`,
/// `x a x⁻¹ = a⁻¹`, with `a^i x^e` numbered `2i + e`.
fn dicyclic(k: usize) -> SemigroupTable {
    let m = 2 * k;
    let name = if k == 2 { "Q8".to_string() } else { format!("Dic{k}") };
    group(
        4 * k,
        |a, b| {
            let (i1, e1) = (a / 2, a % 2);
            let (i2, e2) = (b / 2, b % 2);
            let (i, e) = match (e1, e2) {
                (0, _) => (i1 + i2, e2),
                (_, 0) => (i1 + m - i2, 1),
                _ => (i1 + m - i2 + k, 0),
            };
            (i % m) * 2 + e
        },
        name,
    )
}

fn permutation_group(gens: &[&[usize]], name: &str) -> SemigroupTable {
    let gens: Vec<PartialBijection> = gens.iter().map(|g| PartialBijection::total(g).expect("permutation")).collect();
    ConcreteFamily::generate(&gens)
        .expect("small permutation group")
        .abstract_table()
        .expect("closed")
        .table
        .with_name(name)
}

fn symmetric_4() -> SemigroupTable {
    permutation_group(&[&[1, 0, 2, 3], &[1, 2, 3, 0]], "S4")
}

fn alternating_4() -> SemigroupTable {
    permutation_group(&[&[1, 2, 0, 3], &[0, 2, 3, 1]], "A4")
}

/// 2×2 matrices over F₃ of determinant 1.
fn special_linear_2_3() -> SemigroupTable {
    let mut matrices: Vec<[usize; 4]> = Vec::new();
    for code in 0..81 {
        let m = [code % 3, code / 3 % 3, code / 9 % 3, code / 27];
        if (m[0] * m[3] + 2 * m[1] * m[2]) % 3 == 1 {
            matrices.push(m);
        }
    }
    let index = |m: [usize; 4]| matrices.iter().position(|&x| x == m).expect("closed under products");
    let mul = |a: [usize; 4], b: [usize; 4]| {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    group(matrices.len(), |a, b| index(mul(matrices[a], matrices[b])), "SL(2,3)".to_string())
}
