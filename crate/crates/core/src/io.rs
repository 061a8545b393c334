//! Text formats for tables and generators, and the JSON documents written
//! by the command line tool.
//!
//! ```text
//! # name: C2
//! cayley 2
//! 0 1
//! 1 0
//! ```
//!
//! ```text
//! points 2
//! 1 -
//! ```

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::{
    CandidateOutcome, FamilyKind, FilterFamily, Finding, Flags, Measurement, NobilityCertificate, Representation,
};
use crate::error::{Error, ParseError};
use crate::filters::Filter;
use crate::oracle::EmbeddingWitness;
use crate::partial::{generate_closure, ConcreteFamily, PartialBijection, CLOSURE_ELEMENT_CAP, CLOSURE_POINT_CAP};
use crate::table::{validate_inverse_semigroup, SemigroupTable};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Meaningful lines as `(1-based line number, content)`, plus the label
/// from a `# name:` comment.
fn lines(text: &str) -> (Vec<(usize, &str)>, Option<String>) {
    let mut name = None;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(label) = comment.trim().strip_prefix("name:") {
                name = Some(label.trim().to_string());
            }
        } else if !line.is_empty() {
            out.push((i + 1, line));
        }
    }
    (out, name)
}

fn header(lines: &[(usize, &str)], keyword: &str) -> Result<(usize, usize), ParseError> {
    let &(line, text) = lines.first().ok_or_else(|| ParseError::new(1, format!("missing \"{keyword} <n>\" header")))?;
    let mut words = text.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(ParseError::new(line, format!("expected \"{keyword} <n>\"")));
    }
    let size = words
        .next()
        .and_then(|w| w.parse::<usize>().ok())
        .ok_or_else(|| ParseError::new(line, format!("expected \"{keyword} <n>\"")))?;
    if words.next().is_some() {
        return Err(ParseError::new(line, "trailing text after header"));
    }
    Ok((line, size))
}

pub fn parse_cayley(text: &str) -> Result<SemigroupTable, Error> {
    let (lines, name) = lines(text);
    let (header_line, n) = header(&lines, "cayley")?;
    if n == 0 {
        return Err(ParseError::new(header_line, "order must be positive").into());
    }
    let rows = &lines[1..];
    if rows.len() != n {
        let line = rows.get(n).map_or(header_line.max(rows.last().map_or(0, |r| r.0)), |r| r.0);
        return Err(ParseError::new(line, format!("expected {n} rows, found {}", rows.len())).into());
    }
    let mut raw = Vec::with_capacity(n);
    for &(line, text) in rows {
        let row = text
            .split_whitespace()
            .map(|w| w.parse::<usize>().map_err(|_| ParseError::new(line, format!("\"{w}\" is not an element id"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(ParseError::new(line, format!("expected {n} entries, found {}", row.len())).into());
        }
        raw.push(row);
    }
    let table = validate_inverse_semigroup(&raw)?;
    Ok(match name {
        Some(label) => table.with_name(label),
        None => table,
    })
}

pub fn emit_cayley(s: &SemigroupTable) -> String {
    let mut out = String::new();
    if let Some(name) = s.name() {
        out.push_str(&format!("# name: {name}\n"));
    }
    out.push_str(&format!("cayley {}\n", s.order()));
    for row in s.rows() {
        let words: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

/// The generators as written, without closing them.
pub fn parse_generator_list(text: &str) -> Result<(usize, Vec<PartialBijection>), Error> {
    let (lines, _) = lines(text);
    let (_, m) = header(&lines, "points")?;
    let mut gens = Vec::new();
    for &(line, text) in &lines[1..] {
        let entries = text
            .split_whitespace()
            .map(|w| match w {
                "-" => Ok(None),
                _ => w
                    .parse::<usize>()
                    .map(Some)
                    .map_err(|_| ParseError::new(line, format!("\"{w}\" is neither a point nor \"-\""))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != m {
            return Err(ParseError::new(line, format!("expected {m} entries, found {}", entries.len())).into());
        }
        let map = PartialBijection::new(entries).map_err(|e| ParseError::new(line, e.to_string()))?;
        gens.push(map);
    }
    Ok((m, gens))
}

/// The inverse semigroup generated by the listed maps.
pub fn parse_generators(text: &str) -> Result<ConcreteFamily, Error> {
    let (_, gens) = parse_generator_list(text)?;
    Ok(generate_closure(&gens, CLOSURE_POINT_CAP, CLOSURE_ELEMENT_CAP)?)
}

pub fn emit_generators(m: usize, gens: &[PartialBijection]) -> String {
    let mut out = format!("points {m}\n");
    for g in gens {
        let words: Vec<String> =
            g.entries().into_iter().map(|e| e.map_or_else(|| "-".to_string(), |b| b.to_string())).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

/// Hex SHA-256 of the input file.
pub fn input_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// JSON with sorted keys, pretty printed, newline terminated.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    let tree = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&tree)? + "\n")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsDocument {
    pub is_homomorphism: String,
    pub is_faithful: String,
    pub is_transitive: String,
}

impl From<Flags> for FlagsDocument {
    fn from(f: Flags) -> Self {
        FlagsDocument {
            is_homomorphism: f.is_homomorphism.as_str().into(),
            is_faithful: f.is_faithful.as_str().into(),
            is_transitive: f.is_transitive.as_str().into(),
        }
    }
}

fn action_table(maps: &[PartialBijection]) -> Vec<Vec<Option<usize>>> {
    maps.iter().map(PartialBijection::entries).collect()
}

/// A representation on a filter family. `action[s][i]` is the index of
/// `F_i f(s)`, or null.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationDocument {
    pub anchor: Option<Vec<usize>>,
    pub family: Vec<Vec<usize>>,
    pub family_kind: String,
    pub action: Vec<Vec<Option<usize>>>,
    pub flags: FlagsDocument,
}

impl RepresentationDocument {
    pub fn from_representation(rep: &Representation) -> Self {
        let family = rep.family();
        RepresentationDocument {
            anchor: family.anchor().map(Filter::to_vec),
            family: family.filters().iter().map(Filter::to_vec).collect(),
            family_kind: family.kind().as_str().into(),
            action: action_table(rep.action()),
            flags: rep.flags().into(),
        }
    }

    /// Rebuilds an unverified representation over `s`.
    pub fn to_representation(&self, s: &SemigroupTable) -> Result<Representation, Error> {
        let kind = match self.family_kind.as_str() {
            "orbit" => FamilyKind::Orbit,
            "magnitude" => FamilyKind::Magnitude,
            "custom" => FamilyKind::Custom,
            other => return Err(ParseError::new(0, format!("unknown family kind \"{other}\"")).into()),
        };
        let family = FilterFamily::from_sets(s, &self.family, kind)?;
        if !family.filters().iter().map(Filter::to_vec).eq(self.family.iter().cloned()) {
            return Err(ParseError::new(0, "family must be listed in ascending carrier order").into());
        }
        let action = self.action.iter().map(|row| PartialBijection::new(row.clone())).collect::<Result<Vec<_>, _>>()?;
        Ok(Representation::from_parts(s, family, action)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub degree: usize,
    pub family: Vec<Vec<usize>>,
    pub family_kind: String,
    pub action: Vec<Vec<Option<usize>>>,
    pub flags: FlagsDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDocument {
    #[serde(rename = "H")]
    pub h: Vec<usize>,
    pub failing_idempotent: Option<usize>,
}

impl From<&CandidateOutcome> for CandidateDocument {
    fn from(c: &CandidateOutcome) -> Self {
        CandidateDocument { h: c.h.to_vec(), failing_idempotent: c.failing_idempotent }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationDocument {
    pub candidates: Vec<CandidateDocument>,
    pub oracle_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementDocument {
    pub family_kind: String,
    pub filters: usize,
    pub orbits: usize,
    pub flags: FlagsDocument,
}

impl From<&Measurement> for MeasurementDocument {
    fn from(m: &Measurement) -> Self {
        MeasurementDocument {
            family_kind: m.kind.as_str().into(),
            filters: m.filters,
            orbits: m.orbits,
            flags: m.flags.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FindingDocument {
    FamilyCheckFailed { family_kind: String, filters: usize, orbits: usize, failed: Vec<String> },
    OracleEscalation { degree: usize },
}

impl From<&Finding> for FindingDocument {
    fn from(f: &Finding) -> Self {
        match f {
            Finding::FamilyCheckFailed { kind, filters, orbits, failed } => FindingDocument::FamilyCheckFailed {
                family_kind: kind.as_str().into(),
                filters: *filters,
                orbits: *orbits,
                failed: failed.iter().map(|s| s.to_string()).collect(),
            },
            Finding::OracleEscalation { degree } => FindingDocument::OracleEscalation { degree: *degree },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub verdict: String,
    pub witness: Option<WitnessDocument>,
    pub refutation: Option<RefutationDocument>,
    pub measurements: Vec<MeasurementDocument>,
    pub findings: Vec<FindingDocument>,
    pub tool_version: String,
    pub input_digest: String,
}

impl CertificateDocument {
    pub fn new(cert: &NobilityCertificate, input_digest: String) -> Self {
        let witness = cert.witness.as_ref().map(|w| {
            let rep = &w.representation;
            WitnessDocument {
                h: w.h.to_vec(),
                degree: rep.degree(),
                family: rep.family().filters().iter().map(Filter::to_vec).collect(),
                family_kind: rep.family().kind().as_str().into(),
                action: action_table(rep.action()),
                flags: rep.flags().into(),
            }
        });
        let refutation = cert.refutation.as_ref().map(|r| RefutationDocument {
            candidates: r.candidates.iter().map(Into::into).collect(),
            oracle_bound: r.oracle_bound,
        });
        CertificateDocument {
            verdict: cert.verdict.as_str().into(),
            witness,
            refutation,
            measurements: cert.measurements.iter().map(Into::into).collect(),
            findings: cert.findings.iter().map(Into::into).collect(),
            tool_version: TOOL_VERSION.into(),
            input_digest,
        }
    }
}

/// Result of a bounded oracle search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDocument {
    pub found: bool,
    pub max_degree: usize,
    pub degree: Option<usize>,
    pub assignment: Option<Vec<Vec<Option<usize>>>>,
    pub transitive: Option<bool>,
}

impl OracleDocument {
    pub fn new(max_degree: usize, witness: Option<&EmbeddingWitness>) -> Self {
        OracleDocument {
            found: witness.is_some(),
            max_degree,
            degree: witness.map(|w| w.degree),
            assignment: witness.map(|w| action_table(&w.assignment)),
            transitive: witness.map(|w| w.transitive),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::engine::{decide_nobility, EngineConfig};

    #[test]
    fn cayley_examples() {
        let c2 = parse_cayley("cayley 2\n0 1\n1 0").unwrap();
        assert_eq!(c2, catalog::cyclic_group(2));
        let e3 = parse_cayley("cayley 3\n0 0 0\n0 1 1\n0 1 2").unwrap();
        assert_eq!(e3, catalog::chain(3));
        let err = parse_cayley("cayley 2\n0 0\n1 1").unwrap_err();
        assert!(matches!(err, Error::Algebra(crate::error::AlgebraError::InverseNotUnique(..))));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn cayley_parse_errors() {
        for (text, line) in [
            ("", 1),
            ("cayle 2\n0 1\n1 0", 1),
            ("cayley 2\n0 1\n1", 3),
            ("cayley 2\n0 x\n1 0", 2),
            ("cayley 2\n0 1", 2),
        ] {
            match parse_cayley(text) {
                Err(Error::Parse(e)) => assert_eq!(e.line, line, "{text:?}: {e}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn cayley_round_trip() {
        let s = catalog::i2().with_name("I2");
        let back = parse_cayley(&emit_cayley(&s)).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.name(), Some("I2"));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(parse_generators("points 2\n1 0").unwrap().len(), 2);
        assert_eq!(parse_generators("points 2\n1 -").unwrap().len(), 5);
        let err = parse_generators("points 2\n0 0").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("both map to"));
    }

    #[test]
    fn generator_round_trip() {
        let gens = vec![PartialBijection::new(vec![Some(1), None, Some(0)]).unwrap(), PartialBijection::identity(3)];
        let (m, back) = parse_generator_list(&emit_generators(3, &gens)).unwrap();
        assert_eq!((m, back), (3, gens));
    }

    #[test]
    fn certificate_round_trip_and_sorted_keys() {
        let cert = decide_nobility(&catalog::i2(), &EngineConfig::default()).unwrap();
        let doc = CertificateDocument::new(&cert, input_digest(b"x"));
        let json = to_json(&doc).unwrap();
        let back: CertificateDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        let top: Vec<&str> = json.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim()).collect();
        let mut sorted = top.clone();
        sorted.sort();
        assert_eq!(top, sorted);
        assert_eq!(json, to_json(&CertificateDocument::new(&cert, input_digest(b"x"))).unwrap());
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(input_digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
