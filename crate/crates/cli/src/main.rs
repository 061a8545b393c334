use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use noble_core::engine::{
    build_representation, coset_family_in, magnitude_family_in, verify_representation, wagner_preston,
};
use noble_core::error::ParseError;
use noble_core::filters::{enumerate_filters, magnitude_classes, MagnitudeMode};
use noble_core::io::{
    emit_generators, input_digest, parse_cayley, parse_generators, to_json, CertificateDocument, FlagsDocument,
    OracleDocument, RepresentationDocument,
};
use noble_core::oracle::brute_force_noble;
use noble_core::{decide_nobility, EngineConfig, Error, Filter, SemigroupTable};
use serde_json::json;

#[derive(Parser)]
#[command(name = "noble", version, about = "Nobility of finite inverse semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Let magnitude multipliers range over S with an identity adjoined.
    #[arg(long, global = true)]
    s1: bool,
    /// Candidate order for searches; only the fixed order exists.
    #[arg(long, global = true, value_enum, default_value_t = SeedOrder::Fixed)]
    seed_order: SeedOrder,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeedOrder {
    Fixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyChoice {
    Orbit,
    Magnitude,
}

#[derive(Subcommand)]
enum Command {
    /// Check the inverse semigroup axioms.
    Validate { input: PathBuf },
    /// Idempotents, zero, identity, natural order and Green's relations.
    Analyze { input: PathBuf },
    /// All proper filters and their magnitude classes.
    Filters { input: PathBuf },
    /// Decide nobility and print a certificate.
    Nobility { input: PathBuf },
    /// Build and verify the representation on a family anchored at H.
    Represent {
        input: PathBuf,
        /// Comma separated element ids of a filter.
        #[arg(long = "H", value_delimiter = ',', required = true)]
        h: Vec<usize>,
        #[arg(long, value_enum, default_value_t = FamilyChoice::Orbit)]
        family: FamilyChoice,
    },
    /// Recheck the flags of a representation document.
    Verify {
        input: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// The Wagner-Preston embedding as a generator file.
    EmbedWp { input: PathBuf },
    /// Exhaustive search for a transitive faithful representation.
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

struct Loaded {
    table: SemigroupTable,
    digest: String,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| ParseError::new(0, format!("cannot read {}: {e}", path.display())).into())
}

/// A Cayley file, or a generator file whose closure is numbered in sorted order.
fn load(path: &Path) -> Result<Loaded, Error> {
    let text = read(path)?;
    let digest = input_digest(text.as_bytes());
    let is_generators = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("points"));
    let table = if is_generators { parse_generators(&text)?.abstract_table()?.table } else { parse_cayley(&text)? };
    Ok(Loaded { table, digest })
}

fn mode(cli: &Cli) -> MagnitudeMode {
    if cli.s1 {
        MagnitudeMode::WithIdentity
    } else {
        MagnitudeMode::Semigroup
    }
}

fn ids(v: &[usize]) -> String {
    let words: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", words.join(", "))
}

fn flags_text(f: &FlagsDocument) -> String {
    format!("is_homomorphism {}, is_faithful {}, is_transitive {}", f.is_homomorphism, f.is_faithful, f.is_transitive)
}

/// Renders the output of one command.
fn run(cli: &Cli) -> Result<String, Error> {
    let json = matches!(cli.format, Format::Json);
    let mut out = String::new();
    match &cli.command {
        Command::Validate { input } => {
            let s = load(input)?.table;
            let report = json!({
                "valid": true,
                "order": s.order(),
                "name": s.name(),
                "idempotents": s.idempotents().len(),
                "zero": s.zero(),
                "identity": s.identity(),
            });
            if json {
                out = to_json(&report)?;
            } else {
                writeln!(out, "valid inverse semigroup of order {}", s.order()).unwrap();
            }
        }
        Command::Analyze { input } => {
            let s = load(input)?.table;
            let green = s.green_relations();
            let inverses: Vec<usize> = s.elements().map(|x| s.inverse(x)).collect();
            let hasse = s.hasse_edges();
            if json {
                out = to_json(&json!({
                    "order": s.order(),
                    "idempotents": s.idempotents().to_vec(),
                    "zero": s.zero(),
                    "identity": s.identity(),
                    "inverses": inverses,
                    "hasse_edges": hasse,
                    "green": {"L": green.l.classes, "R": green.r.classes, "D": green.d.classes},
                }))?;
            } else {
                writeln!(out, "order {}", s.order()).unwrap();
                writeln!(out, "idempotents {}", ids(&s.idempotents().to_vec())).unwrap();
                let show = |x: Option<usize>| x.map_or("none".to_string(), |x| x.to_string());
                writeln!(out, "zero {}, identity {}", show(s.zero()), show(s.identity())).unwrap();
                let edges: Vec<String> = hasse.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                writeln!(out, "covers {}", edges.join(" ")).unwrap();
                for (label, p) in [("L", &green.l), ("R", &green.r), ("D", &green.d)] {
                    let classes: Vec<String> = p.classes.iter().map(|c| ids(c)).collect();
                    writeln!(out, "{label} {}", classes.join(" ")).unwrap();
                }
            }
        }
        Command::Filters { input } => {
            let s = load(input)?.table;
            let filters = enumerate_filters(&s)?;
            let classes = magnitude_classes(&s, &filters, mode(cli));
            let sets: Vec<Vec<usize>> = filters.iter().map(Filter::to_vec).collect();
            if json {
                out = to_json(&json!({"filters": sets, "magnitude_classes": classes}))?;
            } else {
                for (i, f) in sets.iter().enumerate() {
                    writeln!(out, "F{i} {}", ids(f)).unwrap();
                }
                for class in &classes {
                    let names: Vec<String> = class.iter().map(|i| format!("F{i}")).collect();
                    writeln!(out, "magnitude class {}", names.join(" ")).unwrap();
                }
            }
        }
        Command::Nobility { input } => {
            let loaded = load(input)?;
            let config = EngineConfig { magnitude_mode: mode(cli), ..EngineConfig::default() };
            let cert = decide_nobility(&loaded.table, &config)?;
            let doc = CertificateDocument::new(&cert, loaded.digest);
            if json {
                out = to_json(&doc)?;
            } else {
                writeln!(out, "verdict {}", doc.verdict).unwrap();
                if let Some(w) = &doc.witness {
                    writeln!(out, "H {} degree {} family {}", ids(&w.h), w.degree, w.family_kind).unwrap();
                    writeln!(out, "{}", flags_text(&w.flags)).unwrap();
                }
                if let Some(r) = &doc.refutation {
                    writeln!(out, "{} candidates fail", r.candidates.len()).unwrap();
                    if let Some(bound) = r.oracle_bound {
                        writeln!(out, "no transitive embedding up to degree {bound}").unwrap();
                    }
                }
                for f in &doc.findings {
                    writeln!(out, "finding {}", serde_json::to_string(f)?).unwrap();
                }
            }
        }
        Command::Represent { input, h, family } => {
            let s = load(input)?.table;
            if let Some(&bad) = h.iter().find(|&&x| x >= s.order()) {
                return Err(ParseError::new(0, format!("--H lists {bad}, not an element id")).into());
            }
            let filter = Filter::from_elements(&s, h.iter().copied())
                .ok_or_else(|| noble_core::error::EngineError::NotAFilter(h.clone()))?;
            let fam = match family {
                FamilyChoice::Orbit => coset_family_in(&s, &filter, mode(cli))?,
                FamilyChoice::Magnitude => magnitude_family_in(&s, &filter, mode(cli))?,
            };
            let rep = verify_representation(&s, build_representation(&s, fam)?);
            let doc = RepresentationDocument::from_representation(&rep);
            if json {
                out = to_json(&doc)?;
            } else {
                writeln!(out, "{} family of {} filters", doc.family_kind, doc.family.len()).unwrap();
                writeln!(out, "{}", flags_text(&doc.flags)).unwrap();
            }
        }
        Command::Verify { input, rep } => {
            let s = load(input)?.table;
            let doc: RepresentationDocument = serde_json::from_str(&read(rep)?)?;
            let checked = verify_representation(&s, doc.to_representation(&s)?);
            let flags = FlagsDocument::from(checked.flags());
            if json {
                out = to_json(&flags)?;
            } else {
                writeln!(out, "{}", flags_text(&flags)).unwrap();
            }
        }
        Command::EmbedWp { input } => {
            let s = load(input)?.table;
            let (family, maps) = wagner_preston(&s);
            out = emit_generators(family.degree(), &maps);
        }
        Command::Oracle { input, max_degree } => {
            let s = load(input)?.table;
            let witness = brute_force_noble(&s, *max_degree)?;
            let doc = OracleDocument::new(*max_degree, witness.as_ref());
            if json {
                out = to_json(&doc)?;
            } else if let Some(d) = doc.degree {
                writeln!(out, "transitive faithful representation of degree {d}").unwrap();
            } else {
                writeln!(out, "none up to degree {max_degree}").unwrap();
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("noble: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
