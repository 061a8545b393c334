//! Deciding nobility: infinitesimal closed inverse subsemigroups, the
//! action of `S` on a family of filters, and certificates.
//!
//! `s` acts on a family `{F_i}` by `i f(s) = j` exactly when
//! `F_i s ⊆ F_j` and `F_j s⁻¹ ⊆ F_i`. Two families are built from a closed
//! inverse subsemigroup `H`: the orbit family of cosets `↑(Hu)` with
//! `uu⁻¹ ∈ H`, and the magnitude family of all `↑(uHv⁻¹)` with
//! `u⁻¹u, v⁻¹v ∈ H`. Both are always measured.

use std::collections::HashSet;

use crate::element_set::ElementSet;
use crate::error::{EngineError, FilterError};
use crate::filters::{
    closed_inverse_subsemigroups, conjugates, is_closed_inverse_subsemigroup, lub, same_magnitude_in, set_product,
    up_closure, Filter, MagnitudeMode,
};
use crate::oracle::{brute_force_noble, EmbeddingWitness, ORACLE_DEGREE_CAP, ORACLE_ORDER_CAP};
use crate::partial::{AbstractedFamily, ConcreteFamily, PartialBijection};
use crate::table::{Element, SemigroupTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    Orbit,
    Magnitude,
    Custom,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Orbit => "orbit",
            FamilyKind::Magnitude => "magnitude",
            FamilyKind::Custom => "custom",
        }
    }
}

/// Pairwise same-magnitude filters without repeats, sorted by carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterFamily {
    filters: Vec<Filter>,
    kind: FamilyKind,
    anchor: Option<Filter>,
}

impl FilterFamily {
    pub fn new(
        s: &SemigroupTable,
        filters: Vec<Filter>,
        kind: FamilyKind,
        anchor: Option<Filter>,
    ) -> Result<Self, EngineError> {
        Self::new_in(s, filters, kind, anchor, MagnitudeMode::Semigroup)
    }

    pub fn new_in(
        s: &SemigroupTable,
        mut filters: Vec<Filter>,
        kind: FamilyKind,
        anchor: Option<Filter>,
        mode: MagnitudeMode,
    ) -> Result<Self, EngineError> {
        filters.sort();
        if let Some(pair) = filters.windows(2).find(|w| w[0] == w[1]) {
            return Err(EngineError::DuplicateFilter(pair[0].to_vec()));
        }
        for i in 0..filters.len() {
            for j in i + 1..filters.len() {
                if same_magnitude_in(s, &filters[i], &filters[j], mode).is_none() {
                    return Err(EngineError::NotSameMagnitude(i, j));
                }
            }
        }
        Ok(FilterFamily { filters, kind, anchor })
    }

    /// Validates raw carriers as filters first.
    pub fn from_sets(s: &SemigroupTable, sets: &[Vec<Element>], kind: FamilyKind) -> Result<Self, EngineError> {
        let filters = sets
            .iter()
            .map(|set| {
                Filter::from_elements(s, set.iter().copied()).ok_or_else(|| EngineError::NotAFilter(set.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(s, filters, kind, None)
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn anchor(&self) -> Option<&Filter> {
        self.anchor.as_ref()
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn index_of(&self, f: &Filter) -> Option<usize> {
        self.filters.binary_search(f).ok()
    }
}

/// Outcome of a check that may not have been run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Check {
    #[default]
    Unchecked,
    VerifiedTrue,
    VerifiedFalse,
}

impl Check {
    fn from_bool(b: bool) -> Check {
        if b {
            Check::VerifiedTrue
        } else {
            Check::VerifiedFalse
        }
    }

    pub fn is_true(self) -> bool {
        self == Check::VerifiedTrue
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Unchecked => "unchecked",
            Check::VerifiedTrue => "verified-true",
            Check::VerifiedFalse => "verified-false",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Flags {
    pub is_homomorphism: Check,
    pub is_faithful: Check,
    pub is_transitive: Check,
}

impl Flags {
    pub fn all_true(&self) -> bool {
        self.is_homomorphism.is_true() && self.is_faithful.is_true() && self.is_transitive.is_true()
    }

    /// Names of the flags verified false.
    pub fn failed(&self) -> Vec<&'static str> {
        [
            ("is_homomorphism", self.is_homomorphism),
            ("is_faithful", self.is_faithful),
            ("is_transitive", self.is_transitive),
        ]
        .into_iter()
        .filter(|(_, c)| *c == Check::VerifiedFalse)
        .map(|(name, _)| name)
        .collect()
    }
}

/// `s ↦ f(s)`, a partial bijection of the family's indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    family: FilterFamily,
    action: Vec<PartialBijection>,
    flags: Flags,
}

impl Representation {
    /// An unverified representation from stored parts.
    pub fn from_parts(
        s: &SemigroupTable,
        family: FilterFamily,
        action: Vec<PartialBijection>,
    ) -> Result<Self, EngineError> {
        if action.len() != s.order() {
            return Err(EngineError::ActionSizeMismatch { expected: s.order(), got: action.len() });
        }
        if let Some(x) = action.iter().position(|p| p.degree() != family.len()) {
            return Err(EngineError::ActionNotFunctional(x));
        }
        Ok(Representation { family, action, flags: Flags::default() })
    }

    pub fn family(&self) -> &FilterFamily {
        &self.family
    }

    pub fn action(&self) -> &[PartialBijection] {
        &self.action
    }

    pub fn image(&self, x: Element) -> &PartialBijection {
        &self.action[x]
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn degree(&self) -> usize {
        self.family.len()
    }

    /// Connected components of the union of the graphs of `f(s)`.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut parent: Vec<usize> = (0..k).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for p in &self.action {
            for (a, b) in p.pairs() {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; k];
        for i in 0..k {
            let r = root(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[slot[r]].push(i);
        }
        orbits
    }

    /// The image as a concrete family of partial bijections.
    pub fn image_family(&self) -> ConcreteFamily {
        ConcreteFamily::from_elements(self.degree(), self.action.clone()).expect("one point set")
    }
}

/// `f(s)` for every `s`, rejecting relations that are not one-to-one.
pub fn build_representation(s: &SemigroupTable, family: FilterFamily) -> Result<Representation, EngineError> {
    let k = family.len();
    let filters = family.filters();
    // translates[x][i] = F_i · x
    let translates: Vec<Vec<ElementSet>> = s
        .elements()
        .map(|x| {
            let single = ElementSet::singleton(s.order(), x);
            filters.iter().map(|f| set_product(s, f.carrier(), &single)).collect()
        })
        .collect();
    let mut action = Vec::with_capacity(s.order());
    for x in s.elements() {
        let x_inv = s.inverse(x);
        let mut entries: Vec<Option<usize>> = vec![None; k];
        let mut hit = vec![false; k];
        for i in 0..k {
            for j in 0..k {
                if translates[x][i].is_subset(filters[j].carrier())
                    && translates[x_inv][j].is_subset(filters[i].carrier())
                {
                    if entries[i].is_some() || hit[j] {
                        return Err(EngineError::ActionNotFunctional(x));
                    }
                    entries[i] = Some(j);
                    hit[j] = true;
                }
            }
        }
        action.push(PartialBijection::new(entries).expect("checked one-to-one"));
    }
    Ok(Representation { family, action, flags: Flags::default() })
}

/// Sets all three flags by exhaustive checks.
pub fn verify_representation(s: &SemigroupTable, mut rep: Representation) -> Representation {
    let f = &rep.action;
    let homomorphism = s.elements().all(|x| s.elements().all(|y| f[s.product(x, y)] == f[x].then(&f[y])));
    let faithful = f.iter().collect::<HashSet<_>>().len() == f.len();
    let k = rep.degree();
    let mut reach = vec![false; k * k];
    for p in f {
        for (a, b) in p.pairs() {
            reach[a * k + b] = true;
        }
    }
    let transitive = reach.into_iter().all(|r| r);
    rep.flags = Flags {
        is_homomorphism: Check::from_bool(homomorphism),
        is_faithful: Check::from_bool(faithful),
        is_transitive: Check::from_bool(transitive),
    };
    rep
}

/// Every `↑s` is the intersection of the members containing `s`, and only
/// the zero lies in no member.
pub fn is_infinitesimal_basis(s: &SemigroupTable, family: &FilterFamily) -> bool {
    s.elements().all(|x| {
        let mut meet: Option<ElementSet> = None;
        for f in family.filters().iter().filter(|f| f.contains(x)) {
            match &mut meet {
                Some(m) => m.intersect_with(f.carrier()),
                None => meet = Some(f.carrier().clone()),
            }
        }
        match meet {
            Some(m) => &m == s.up_set(x),
            None => s.zero() == Some(x),
        }
    })
}

/// The first nonzero idempotent `e` with `↑e ≠ ⋂{K conjugate to H : e ∈ K}`.
pub fn infinitesimal_failure(s: &SemigroupTable, h: &Filter) -> Result<Option<Element>, FilterError> {
    let conj = conjugates(s, h)?;
    for e in s.idempotents().iter().filter(|&e| s.zero() != Some(e)) {
        let mut meet: Option<ElementSet> = None;
        for k in conj.iter().filter(|k| k.contains(e)) {
            match &mut meet {
                Some(m) => m.intersect_with(k.carrier()),
                None => meet = Some(k.carrier().clone()),
            }
        }
        if meet.as_ref() != Some(s.up_set(e)) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

pub fn is_infinitesimal_subsemigroup(s: &SemigroupTable, h: &Filter) -> Result<bool, FilterError> {
    Ok(infinitesimal_failure(s, h)?.is_none())
}

/// A tested candidate and, if it failed, the first idempotent it misses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateOutcome {
    pub h: Filter,
    pub failing_idempotent: Option<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitesimalSearch {
    pub found: Option<Filter>,
    /// Every candidate tested, in order; the last one is `found` if any.
    pub tested: Vec<CandidateOutcome>,
}

/// Scans the closed inverse subsemigroups in ascending carrier order.
pub fn find_infinitesimal(s: &SemigroupTable) -> Result<InfinitesimalSearch, FilterError> {
    let mut tested = Vec::new();
    for h in closed_inverse_subsemigroups(s)? {
        let failing_idempotent = infinitesimal_failure(s, &h)?;
        tested.push(CandidateOutcome { h: h.clone(), failing_idempotent });
        if failing_idempotent.is_none() {
            return Ok(InfinitesimalSearch { found: Some(h), tested });
        }
    }
    Ok(InfinitesimalSearch { found: None, tested })
}

fn require_closed(s: &SemigroupTable, h: &Filter) -> Result<(), EngineError> {
    if is_closed_inverse_subsemigroup(s, h) {
        Ok(())
    } else {
        Err(FilterError::NotClosedInverseSubsemigroup(h.to_vec()).into())
    }
}

fn collect_family(
    s: &SemigroupTable,
    sets: impl Iterator<Item = ElementSet>,
    kind: FamilyKind,
    h: &Filter,
    mode: MagnitudeMode,
) -> Result<FilterFamily, EngineError> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut filters = Vec::new();
    for set in sets {
        let up = up_closure(s, &set);
        if seen.insert(up.clone()) {
            let f = Filter::new(s, up.clone()).ok_or_else(|| EngineError::NotAFilter(up.to_vec()))?;
            filters.push(f);
        }
    }
    FilterFamily::new_in(s, filters, kind, Some(h.clone()), mode)
}

/// `{↑(Hu) : uu⁻¹ ∈ H}`.
pub fn coset_family(s: &SemigroupTable, h: &Filter) -> Result<FilterFamily, EngineError> {
    coset_family_in(s, h, MagnitudeMode::Semigroup)
}

pub fn coset_family_in(s: &SemigroupTable, h: &Filter, mode: MagnitudeMode) -> Result<FilterFamily, EngineError> {
    require_closed(s, h)?;
    let sets = s
        .elements()
        .filter(|&u| h.contains(s.domain_idempotent(u)))
        .map(|u| set_product(s, h.carrier(), &ElementSet::singleton(s.order(), u)));
    collect_family(s, sets, FamilyKind::Orbit, h, mode)
}

/// `{↑(uHv⁻¹) : u⁻¹u, v⁻¹v ∈ H}`.
pub fn magnitude_family(s: &SemigroupTable, h: &Filter) -> Result<FilterFamily, EngineError> {
    magnitude_family_in(s, h, MagnitudeMode::Semigroup)
}

pub fn magnitude_family_in(s: &SemigroupTable, h: &Filter, mode: MagnitudeMode) -> Result<FilterFamily, EngineError> {
    require_closed(s, h)?;
    let admissible: Vec<Element> = s.elements().filter(|&u| h.contains(s.range_idempotent(u))).collect();
    let sets = admissible.iter().flat_map(|&u| {
        admissible.iter().map(move |&v| {
            let v_inv = s.inverse(v);
            ElementSet::from_elements(s.order(), h.carrier().iter().map(|x| s.product(s.product(u, x), v_inv)))
        })
    });
    collect_family(s, sets, FamilyKind::Magnitude, h, mode)
}

/// `H_a^b = {s : a f(s) = b}` for a concrete transitive closed family,
/// as filters of its abstract table.
pub fn basis_from_representation(f: &ConcreteFamily) -> Result<(AbstractedFamily, FilterFamily), EngineError> {
    let abstracted = f.abstract_table()?;
    let images: Vec<PartialBijection> = abstracted.table.elements().map(|x| abstracted.map_of(x).clone()).collect();
    let family = stabilizer_cosets(&abstracted.table, &images, f.degree())?;
    Ok((abstracted, family))
}

/// `H_a^b` computed in `S` from an embedding found by the oracle.
pub fn basis_from_embedding(s: &SemigroupTable, witness: &EmbeddingWitness) -> Result<FilterFamily, EngineError> {
    stabilizer_cosets(s, &witness.assignment, witness.degree)
}

fn stabilizer_cosets(s: &SemigroupTable, images: &[PartialBijection], m: usize) -> Result<FilterFamily, EngineError> {
    let mut filters: Vec<Filter> = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let set = ElementSet::from_elements(s.order(), s.elements().filter(|&x| images[x].apply(a) == Some(b)));
            if set.is_empty() {
                return Err(EngineError::NotTransitive { from: a, to: b });
            }
            let f = Filter::new(s, set.clone()).ok_or_else(|| EngineError::NotAFilter(set.to_vec()))?;
            if !filters.contains(&f) {
                filters.push(f);
            }
        }
    }
    FilterFamily::new(s, filters, FamilyKind::Custom, None)
}

/// The right regular embedding: `x f(s) = xs` on `{x : x ss⁻¹ = x}`.
pub fn wagner_preston(s: &SemigroupTable) -> (ConcreteFamily, Vec<PartialBijection>) {
    let n = s.order();
    let embedding: Vec<PartialBijection> = s
        .elements()
        .map(|t| {
            let e = s.domain_idempotent(t);
            let entries = s.elements().map(|x| (s.product(x, e) == x).then(|| s.product(x, t))).collect();
            PartialBijection::new(entries).expect("right translation is one-to-one on its domain")
        })
        .collect();
    assert!(
        s.elements().all(|x| s.elements().all(|y| embedding[s.product(x, y)] == embedding[x].then(&embedding[y]))),
        "right translations do not compose"
    );
    let family = ConcreteFamily::from_elements(n, embedding.clone()).expect("one point set");
    assert_eq!(family.len(), n, "right translations are not faithful");
    (family, embedding)
}

/// `B` consists of pairwise `D`-related nonzero elements and every element
/// is the least upper bound of the members of `B` below it.
pub fn uniform_basis_check(s: &SemigroupTable, b: &ElementSet) -> bool {
    if b.iter().any(|x| s.zero() == Some(x)) {
        return false;
    }
    let d = s.green_relations().d;
    let same_magnitude = match b.first() {
        Some(first) => b.iter().all(|x| d.same_class(first, x)),
        None => true,
    };
    same_magnitude
        && s.elements().all(|x| {
            let below = ElementSet::from_elements(s.order(), b.iter().filter(|&y| s.natural_leq(y, x)));
            lub(s, &below) == Some(x)
        })
}

/// Knobs of [`decide_nobility`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Degree searched by the oracle when no infinitesimal `H` exists.
    pub oracle_bound: usize,
    /// Largest order on which the oracle is consulted.
    pub oracle_order_cap: usize,
    pub magnitude_mode: MagnitudeMode,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { oracle_bound: 4, oracle_order_cap: ORACLE_ORDER_CAP, magnitude_mode: MagnitudeMode::Semigroup }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Noble,
    NotNoble,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Noble => "noble",
            Verdict::NotNoble => "not_noble",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub h: Filter,
    /// Verified, with all three flags true.
    pub representation: Representation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    /// Every closed inverse subsemigroup with its failing idempotent.
    pub candidates: Vec<CandidateOutcome>,
    /// Degree up to which the oracle found no transitive embedding.
    pub oracle_bound: Option<usize>,
}

/// How a family built from the infinitesimal `H` fared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub kind: FamilyKind,
    pub filters: usize,
    pub orbits: usize,
    pub flags: Flags,
}

/// Departures from the expected construction, reported rather than hidden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    /// A family built from the infinitesimal `H` failed a flag.
    FamilyCheckFailed { kind: FamilyKind, filters: usize, orbits: usize, failed: Vec<&'static str> },
    /// Neither family worked; the witness comes from an oracle embedding.
    OracleEscalation { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NobilityCertificate {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub refutation: Option<Refutation>,
    pub measurements: Vec<Measurement>,
    pub findings: Vec<Finding>,
}

fn measure(
    s: &SemigroupTable,
    family: Result<FilterFamily, EngineError>,
) -> Result<(Representation, Measurement), EngineError> {
    let family = family?;
    let kind = family.kind();
    let rep = verify_representation(s, build_representation(s, family)?);
    let measurement = Measurement { kind, filters: rep.degree(), orbits: rep.orbits().len(), flags: rep.flags() };
    Ok((rep, measurement))
}

/// Decides nobility, with a verified representation or an exhaustive
/// refutation.
pub fn decide_nobility(s: &SemigroupTable, config: &EngineConfig) -> Result<NobilityCertificate, EngineError> {
    let search = find_infinitesimal(s)?;
    let Some(h) = search.found else {
        let mut oracle_bound = None;
        if s.order() <= config.oracle_order_cap.min(ORACLE_ORDER_CAP) {
            let bound = config.oracle_bound.min(ORACLE_DEGREE_CAP);
            if let Some(w) = brute_force_noble(s, bound)? {
                return Err(EngineError::Inconclusive(format!(
                    "no infinitesimal closed inverse subsemigroup, yet a transitive embedding of degree {} exists",
                    w.degree
                )));
            }
            oracle_bound = Some(bound);
        }
        return Ok(NobilityCertificate {
            verdict: Verdict::NotNoble,
            witness: None,
            refutation: Some(Refutation { candidates: search.tested, oracle_bound }),
            measurements: Vec::new(),
            findings: Vec::new(),
        });
    };

    let mode = config.magnitude_mode;
    let (orbit_rep, orbit) = measure(s, coset_family_in(s, &h, mode))?;
    let (magnitude_rep, magnitude) = measure(s, magnitude_family_in(s, &h, mode))?;
    let measurements = vec![orbit, magnitude];
    let mut findings: Vec<Finding> = measurements
        .iter()
        .filter(|m| !m.flags.all_true())
        .map(|m| Finding::FamilyCheckFailed {
            kind: m.kind,
            filters: m.filters,
            orbits: m.orbits,
            failed: m.flags.failed(),
        })
        .collect();

    let chosen = [orbit_rep, magnitude_rep].into_iter().find(|rep| rep.flags().all_true());
    let witness = match chosen {
        Some(representation) => Witness { h, representation },
        None => {
            let (witness, degree) = escalate(s, config, &h)?;
            findings.push(Finding::OracleEscalation { degree });
            witness
        }
    };
    Ok(NobilityCertificate {
        verdict: Verdict::Noble,
        witness: Some(witness),
        refutation: None,
        measurements,
        findings,
    })
}

/// Falls back on a brute-force embedding and rebuilds a verified coset
/// representation from its point stabilizer.
fn escalate(s: &SemigroupTable, config: &EngineConfig, h: &Filter) -> Result<(Witness, usize), EngineError> {
    let inconclusive = |why: String| EngineError::Inconclusive(format!("{h:?} is infinitesimal but {why}"));
    if s.order() > config.oracle_order_cap.min(ORACLE_ORDER_CAP) {
        return Err(inconclusive("neither family represents S and the oracle is out of range".into()));
    }
    let embedding = brute_force_noble(s, ORACLE_DEGREE_CAP)?
        .ok_or_else(|| inconclusive(format!("no transitive embedding up to degree {ORACLE_DEGREE_CAP}")))?;
    let basis = basis_from_embedding(s, &embedding)?;
    for stabilizer in basis.filters().iter().filter(|f| is_closed_inverse_subsemigroup(s, f)) {
        let (rep, _) = measure(s, coset_family_in(s, stabilizer, config.magnitude_mode))?;
        if rep.flags().all_true() {
            return Ok((Witness { h: stabilizer.clone(), representation: rep }, embedding.degree));
        }
    }
    Err(inconclusive("no stabilizer of an oracle embedding yields a verified representation".into()))
}
