//! Acceptance suite: eight criteria, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use noble_core::element_set::ElementSet;
use noble_core::engine::basis_from_representation;
use noble_core::engine::{
    build_representation, coset_family, decide_nobility, find_infinitesimal, is_infinitesimal_basis,
    is_infinitesimal_subsemigroup, verify_representation, wagner_preston, Check, EngineConfig, FamilyKind,
    FilterFamily, Finding, Verdict,
};
use noble_core::filters::{
    conjugates, enumerate_filters, is_closed_inverse_subsemigroup, magnitude_classes, principal_filter, same_magnitude,
    set_product, up_closure, Filter, MagnitudeMode,
};
use noble_core::oracle::{
    are_isomorphic, brute_force_noble, generate_corpus, group_core, inverse_subsemigroups, small_groups, subgroups,
    CORPUS_ORDER_CAP,
};
use noble_core::partial::{symmetric_inverse_semigroup, ConcreteFamily, PartialBijection};
use noble_core::{catalog, SemigroupTable};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn name(s: &SemigroupTable) -> &str {
    s.name().unwrap_or("?")
}

fn verdict(s: &SemigroupTable) -> Result<Verdict, String> {
    let cert = decide_nobility(s, &EngineConfig::default()).map_err(|e| format!("{}: {e}", name(s)))?;
    if cert.verdict == Verdict::Noble {
        let w = cert.witness.as_ref().ok_or("noble without witness")?;
        ensure!(w.representation.flags().all_true(), "{}: unverified witness", name(s));
    }
    Ok(cert.verdict)
}

fn semilattice_claim(corpus: &[SemigroupTable]) -> Outcome {
    let mut checked = 0;
    for s in corpus.iter().filter(|s| s.is_semilattice() && s.order() <= 5) {
        let expected = if s.order() <= 2 { Verdict::Noble } else { Verdict::NotNoble };
        let got = verdict(s)?;
        ensure!(got == expected, "{} of order {}: {got:?}", name(s), s.order());
        checked += 1;
    }
    ensure!(checked == 1 + 1 + 2 + 5 + 15, "only {checked} semilattices of order at most 5 in the corpus");
    Ok(format!("{checked} semilattices, orders 1-2 noble, 3-5 not"))
}

fn group_claim(corpus: &[SemigroupTable]) -> Outcome {
    let mut groups = 0;
    for g in corpus.iter().filter(|s| s.is_group() && s.order() <= 12) {
        ensure!(verdict(g)? == Verdict::Noble, "{} is not noble", name(g));
        groups += 1;
    }
    ensure!(groups == 24, "{groups} groups of order at most 12 in the corpus");

    let s3 = catalog::symmetric_group_3();
    let one = s3.identity().unwrap();
    let transposition = s3.elements().find(|&x| x != one && s3.product(x, x) == one).unwrap();
    let h = Filter::from_elements(&s3, [one, transposition]).unwrap();
    let rep = verify_representation(
        &s3,
        build_representation(&s3, coset_family(&s3, &h).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?,
    );
    ensure!(
        rep.degree() == 3 && rep.flags().all_true(),
        "S3 coset representation: degree {} {:?}",
        rep.degree(),
        rep.flags()
    );

    let mut pairs = 0;
    for g in small_groups(24) {
        let trivial = ElementSet::singleton(g.order(), g.identity().unwrap());
        for h in subgroups(&g).map_err(|e| e.to_string())? {
            let Some(filter) = Filter::new(&g, h.clone()) else {
                ensure!(h.is_full() && g.order() > 1, "{}: subgroup {h:?} is not a filter", name(&g));
                continue;
            };
            let core_trivial = group_core(&g, &h).map_err(|e| e.to_string())? == trivial;
            let infinitesimal = is_infinitesimal_subsemigroup(&g, &filter).map_err(|e| e.to_string())?;
            let family = coset_family(&g, &filter).map_err(|e| e.to_string())?;
            ensure!(family.len() * h.len() == g.order(), "{}: wrong coset count for {h:?}", name(&g));
            let rep = verify_representation(&g, build_representation(&g, family).map_err(|e| e.to_string())?);
            let flags = rep.flags();
            ensure!(
                flags.is_homomorphism.is_true() && flags.is_transitive.is_true(),
                "{}: coset action of {h:?} {flags:?}",
                name(&g)
            );
            let faithful = flags.is_faithful.is_true();
            ensure!(
                faithful == core_trivial && core_trivial == infinitesimal,
                "{}: H = {h:?} faithful {faithful}, trivial core {core_trivial}, infinitesimal {infinitesimal}",
                name(&g)
            );
            pairs += 1;
        }
    }
    Ok(format!("{groups} groups noble; S3 on 3 cosets; {pairs} subgroups up to order 24 agree"))
}

fn symmetric_inverse_claim(_: &[SemigroupTable]) -> Outcome {
    for m in [2, 3] {
        let concrete = symmetric_inverse_semigroup(m).map_err(|e| e.to_string())?;
        let abstracted = concrete.abstract_table().map_err(|e| e.to_string())?;
        let s = &abstracted.table;
        let cert = decide_nobility(s, &EngineConfig::default()).map_err(|e| e.to_string())?;
        ensure!(cert.verdict == Verdict::Noble, "I{m} not noble");
        let w = cert.witness.unwrap();
        let stabilizers: Vec<Vec<usize>> =
            (0..m).map(|a| s.elements().filter(|&x| abstracted.map_of(x).apply(a) == Some(a)).collect()).collect();
        ensure!(stabilizers.contains(&w.h.to_vec()), "I{m}: witness H = {:?} is no point stabilizer", w.h);
        let rep = &w.representation;
        ensure!(rep.degree() == m && rep.flags().all_true(), "I{m}: degree {} {:?}", rep.degree(), rep.flags());
        let image = rep.image_family().abstract_table().map_err(|e| e.to_string())?.table;
        ensure!(are_isomorphic(&image, s).is_some(), "I{m}: image not isomorphic to I{m}");
    }
    Ok("I2 and I3 noble on their points, images isomorphic".into())
}

fn engine_oracle_agreement(corpus: &[SemigroupTable]) -> Outcome {
    let config = EngineConfig::default();
    let mut violations: Vec<String> = Vec::new();
    let mut members = 0;
    let mut noble = 0;
    for s in corpus.iter().filter(|s| s.order() <= 8) {
        members += 1;
        let cert = decide_nobility(s, &config).map_err(|e| format!("Inconclusive: {}: {e}", name(s)))?;
        let infinitesimal = find_infinitesimal(s).map_err(|e| e.to_string())?.found.is_some();
        let bound = match &cert.witness {
            Some(w) => w.representation.degree(),
            None => config.oracle_bound,
        };
        let embedding = brute_force_noble(s, bound).map_err(|e| e.to_string())?;
        if let Some(e) = &embedding {
            ensure!(e.verify(s), "{}: oracle witness fails its own check", name(s));
        }
        let filters = enumerate_filters(s).map_err(|e| e.to_string())?;
        let basis = magnitude_classes(s, &filters, MagnitudeMode::Semigroup).into_iter().any(|class| {
            let members: Vec<Filter> = class.iter().map(|&i| filters[i].clone()).collect();
            FilterFamily::new(s, members, FamilyKind::Custom, None).is_ok_and(|f| is_infinitesimal_basis(s, &f))
        });
        let escalated = cert.findings.iter().any(|f| matches!(f, Finding::OracleEscalation { .. }));
        if embedding.is_some() != infinitesimal || infinitesimal != basis || escalated {
            violations.push(format!(
                "Inconclusive: {}: embedding {} infinitesimal {infinitesimal} basis {basis} escalated {escalated}",
                name(s),
                embedding.is_some()
            ));
        }
        noble += usize::from(infinitesimal);
    }
    for v in &violations {
        println!("    {v}");
    }
    ensure!(violations.is_empty(), "{} violations", violations.len());
    Ok(format!("{members} members of order at most 8 ({noble} noble), 0 violations"))
}

fn filter_identities(corpus: &[SemigroupTable]) -> Outcome {
    let mut members = 0;
    for s in corpus.iter().filter(|s| s.order() <= 12) {
        members += 1;
        let n = s.order();
        let up = |set: &ElementSet| up_closure(s, set);
        // Both sides distribute over unions in H and in K, so singletons
        // settle the identity for all subsets; pairs are checked directly too.
        let small: Vec<ElementSet> = s
            .elements()
            .flat_map(|a| s.elements().filter(move |&b| b >= a).map(move |b| ElementSet::from_elements(n, [a, b])))
            .collect();
        for h in &small {
            for k in &small {
                let hk = up(&set_product(s, h, k));
                ensure!(hk == up(&set_product(s, &up(h), k)), "{}: ↑(HK) ≠ ↑(↑H K) at {h:?} {k:?}", name(s));
                ensure!(hk == up(&set_product(s, h, &up(k))), "{}: ↑(HK) ≠ ↑(H ↑K) at {h:?} {k:?}", name(s));
            }
        }
        for x in s.elements() {
            for y in s.elements() {
                ensure!(
                    s.natural_leq(x, y) == s.up_set(y).is_subset(s.up_set(x)),
                    "{}: order and up-sets disagree at {x} {y}",
                    name(s)
                );
            }
        }
        let filters = enumerate_filters(s).map_err(|e| e.to_string())?;
        let k = filters.len();
        let related: Vec<Vec<bool>> =
            filters.iter().map(|f| filters.iter().map(|g| same_magnitude(s, f, g).is_some()).collect()).collect();
        for i in 0..k {
            ensure!(related[i][i], "{}: magnitude not reflexive", name(s));
            for j in 0..k {
                ensure!(related[i][j] == related[j][i], "{}: magnitude not symmetric", name(s));
                if related[i][j] {
                    let through_j = related[j].iter().zip(&related[i]).all(|(&jl, &il)| !jl || il);
                    ensure!(through_j, "{}: magnitude not transitive", name(s));
                }
            }
        }
        let d = s.green_relations().d;
        let nonzero: Vec<usize> = s.elements().filter(|&x| s.zero() != Some(x)).collect();
        for &x in &nonzero {
            for &y in &nonzero {
                let fx = principal_filter(s, x).map_err(|e| e.to_string())?;
                let fy = principal_filter(s, y).map_err(|e| e.to_string())?;
                ensure!(
                    same_magnitude(s, &fx, &fy).is_some() == d.same_class(x, y),
                    "{}: ↑{x} ~ ↑{y} disagrees with D",
                    name(s)
                );
            }
        }
        for f in &filters {
            let closed = f
                .carrier()
                .iter()
                .all(|x| f.contains(s.inverse(x)) && f.carrier().iter().all(|y| f.contains(s.product(x, y))));
            ensure!(is_closed_inverse_subsemigroup(s, f) == closed, "{}: {f:?} closure test disagrees", name(s));
            if closed {
                let conj = conjugates(s, f).map_err(|e| e.to_string())?;
                let expected: Vec<Filter> = filters
                    .iter()
                    .filter(|g| is_closed_inverse_subsemigroup(s, g) && same_magnitude(s, f, g).is_some())
                    .cloned()
                    .collect();
                ensure!(conj == expected, "{}: conjugates of {f:?} disagree with magnitude", name(s));
            }
        }
    }
    Ok(format!("{members} members of order at most 12"))
}

fn round_trip(_: &[SemigroupTable]) -> Outcome {
    let mut families = 0;
    for m in 1..=3 {
        let im = symmetric_inverse_semigroup(m).map_err(|e| e.to_string())?;
        let abstracted = im.abstract_table().map_err(|e| e.to_string())?;
        for members in inverse_subsemigroups(&abstracted.table) {
            let maps: Vec<PartialBijection> = members.iter().map(|x| abstracted.map_of(x).clone()).collect();
            let family = ConcreteFamily::from_elements(m, maps).map_err(|e| e.to_string())?;
            if !family.is_transitive() {
                continue;
            }
            families += 1;
            let (table, basis) = basis_from_representation(&family).map_err(|e| format!("{family:?}: {e}"))?;
            let s = &table.table;
            ensure!(is_infinitesimal_basis(s, &basis), "{family:?}: stabilizer basis is not infinitesimal");
            let mut rebuilt = 0;
            for h in basis.filters().iter().filter(|h| is_closed_inverse_subsemigroup(s, h)) {
                let rep = verify_representation(
                    s,
                    build_representation(s, coset_family(s, h).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?,
                );
                ensure!(rep.flags().all_true(), "{family:?}: coset action of {h:?} {:?}", rep.flags());
                rebuilt += 1;
            }
            ensure!(rebuilt > 0, "{family:?}: no member holds an idempotent");
            ensure!(verdict(s)? == Verdict::Noble, "{family:?}: engine disagrees");
        }
    }
    Ok(format!("{families} transitive families on at most 3 points"))
}

fn wagner_preston_claim(corpus: &[SemigroupTable]) -> Outcome {
    for s in corpus {
        let (family, f) = wagner_preston(s);
        ensure!(family.degree() == s.order() && family.len() == s.order(), "{}: not faithful of degree n", name(s));
        let green = s.green_relations();
        for x in s.elements() {
            for y in s.elements() {
                ensure!(f[s.product(x, y)] == f[x].then(&f[y]), "{}: not a homomorphism", name(s));
                ensure!(s.natural_leq(x, y) == f[x].is_restriction_of(&f[y]), "{}: order is not inclusion", name(s));
                ensure!(green.l.same_class(x, y) == (f[x].domain() == f[y].domain()), "{}: L", name(s));
                ensure!(green.r.same_class(x, y) == (f[x].range() == f[y].range()), "{}: R", name(s));
                let joined = s.elements().any(|u| f[u].domain() == f[x].domain() && f[u].range() == f[y].range());
                ensure!(green.d.same_class(x, y) == joined, "{}: D", name(s));
            }
        }
    }
    Ok(format!("{} corpus members", corpus.len()))
}

fn documented_finding(_: &[SemigroupTable]) -> Outcome {
    let i2 = catalog::i2();
    let cert = decide_nobility(&i2, &EngineConfig::default()).map_err(|e| e.to_string())?;
    let w = cert.witness.as_ref().ok_or("I2 not noble")?;
    ensure!(w.h.to_vec() == [1, 5], "witness H = {:?}", w.h);
    let orbit = cert.measurements.iter().find(|m| m.kind == FamilyKind::Orbit).ok_or("no orbit measurement")?;
    let magnitude =
        cert.measurements.iter().find(|m| m.kind == FamilyKind::Magnitude).ok_or("no magnitude measurement")?;
    ensure!(orbit.filters == 2 && orbit.flags.all_true(), "orbit family {orbit:?}");
    ensure!(
        magnitude.filters == 4 && magnitude.orbits == 2 && magnitude.flags.is_transitive == Check::VerifiedFalse,
        "magnitude family {magnitude:?}"
    );
    let expected = Finding::FamilyCheckFailed {
        kind: FamilyKind::Magnitude,
        filters: 4,
        orbits: 2,
        failed: vec!["is_transitive"],
    };
    ensure!(cert.findings == [expected], "findings {:?}", cert.findings);
    ensure!(w.representation.family().kind() == FamilyKind::Orbit, "witness not from the orbit family");
    Ok("magnitude family: 4 filters in 2 orbits, not transitive; orbit family: 2 filters, verified".into())
}

type Criterion = (&'static str, Duration, fn(&[SemigroupTable]) -> Outcome);

fn main() -> ExitCode {
    let corpus = generate_corpus(CORPUS_ORDER_CAP).expect("corpus");
    let criteria: [Criterion; 8] = [
        ("semilattices", Duration::from_secs(5), semilattice_claim),
        ("groups", Duration::from_secs(60), group_claim),
        ("symmetric inverse semigroups", Duration::from_secs(30), symmetric_inverse_claim),
        ("engine and oracle agreement", Duration::from_secs(600), engine_oracle_agreement),
        ("filter identities", Duration::from_secs(120), filter_identities),
        ("round trip", Duration::from_secs(120), round_trip),
        ("Wagner-Preston", Duration::from_secs(60), wagner_preston_claim),
        ("documented finding", Duration::from_secs(1), documented_finding),
    ];
    let mut failed = 0;
    for (i, (title, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&corpus);
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over the time limit")),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {} [{title}]: {status} ({elapsed:.2?} of {limit:?}) {detail}", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
