//! `uum` — mine formal contexts for the seeds of unknown unknowns.
//!
//! One verb per construct: `negate` builds the outbox, `anticoncepts` and
//! `candidates` explore it, `reveal`/`seeds` work on a context pair, and
//! `verify` machine-checks the governing propositions. `gen`, `extend`, and
//! `eval` support experiments on random contexts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uum_cli::formats::{self, Format, FormatError};
use uum_cli::report::{
    attribute_names, object_names, propositions_json, CandidateReportJson, ConceptJson,
    ContextJson, SeedReportJson,
};
use uum_core::{
    candidate_outbox, gen_random_context, gen_random_extension, seed_recall, seed_report,
    verify_propositions, Concept, ConceptLattice, ContextExtension, Error as CoreError,
    FormalContext, GenSpec, LabelStyle, VerificationReport, DEFAULT_CAP,
};

const DEFAULT_BUDGET: u64 = 4096;

#[derive(Parser)]
#[command(
    name = "uum",
    version,
    about = "Mine formal contexts for unknown-unknown seed candidates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Cxt,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelsArg {
    Full,
    Reduced,
}

impl From<LabelsArg> for LabelStyle {
    fn from(l: LabelsArg) -> LabelStyle {
        match l {
            LabelsArg::Full => LabelStyle::Full,
            LabelsArg::Reduced => LabelStyle::Reduced,
        }
    }
}

#[derive(Args)]
struct InputOpt {
    /// Input format; detected from the file extension when omitted
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct OutOpt {
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CapOpt {
    /// Enumeration ceiling; defaults to UUM_CAP or 1000000
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct DotOpt {
    /// Also write the lattice as a DOT Hasse diagram to this file
    #[arg(long)]
    dot: Option<PathBuf>,

    /// Node labelling for DOT output
    #[arg(long, value_enum, default_value = "full")]
    labels: LabelsArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the concepts of a context in lectic order
    Concepts {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Emit the lattice as JSON
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cap: CapOpt,
        #[command(flatten)]
        out: OutOpt,
        #[command(flatten)]
        dot: DotOpt,
    },
    /// Emit the negative context (complemented relation) as cxt
    Negate {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Emit the context as JSON instead of cxt
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: OutOpt,
    },
    /// List the concepts of the negative context (anti-concepts)
    Anticoncepts {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Emit the lattice as JSON
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cap: CapOpt,
        #[command(flatten)]
        out: OutOpt,
        #[command(flatten)]
        dot: DotOpt,
    },
    /// Rank anti-concepts as places to look for unknown unknowns
    Candidates {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Emit the candidate report as JSON
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cap: CapOpt,
        #[command(flatten)]
        out: OutOpt,
        #[command(flatten)]
        dot: DotOpt,
    },
    /// Show Φ/Ψ tables and the discovery context of an extension
    Reveal {
        /// The existing context
        base: PathBuf,
        /// The extended context embedding it
        extended: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Accept pairs of the base relation missing from the extension
        #[arg(long)]
        allow_removals: bool,
        /// Emit the tables and the discovery context as JSON
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Mine seeds, cross-reference them, and machine-check the propositions
    Seeds {
        /// The existing context
        base: PathBuf,
        /// The extended context embedding it
        extended: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Accept pairs of the base relation missing from the extension
        #[arg(long)]
        allow_removals: bool,
        /// Emit the seed report as JSON
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cap: CapOpt,
        /// RNG seed for proposition sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per law when exhaustive checking is infeasible
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutOpt,
        #[command(flatten)]
        dot: DotOpt,
    },
    /// Machine-check the propositions on an extension
    Verify {
        /// The existing context
        base: PathBuf,
        /// The extended context embedding it
        extended: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Accept pairs of the base relation missing from the extension
        #[arg(long)]
        allow_removals: bool,
        /// Emit the verification report as JSON
        #[arg(long)]
        json: bool,
        /// RNG seed for proposition sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per law when exhaustive checking is infeasible
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Generate a random context as cxt
    Gen {
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        attributes: usize,
        /// Probability of each cross
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Extend a context with random new objects, attributes, and crosses
    Extend {
        base: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        #[arg(long, default_value_t = 0)]
        new_objects: usize,
        #[arg(long, default_value_t = 0)]
        new_attributes: usize,
        /// Probability of each cross outside the base relation
        #[arg(long)]
        new_density: f64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Sweep random extensions and report seed recall as CSV
    Eval {
        #[arg(long, default_value_t = 6)]
        objects: usize,
        #[arg(long, default_value_t = 6)]
        attributes: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long, default_value_t = 2)]
        new_objects: usize,
        #[arg(long, default_value_t = 2)]
        new_attributes: usize,
        #[arg(long, default_value_t = 0.3)]
        new_density: f64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        cap: CapOpt,
        #[command(flatten)]
        out: OutOpt,
    },
    /// Export the concept lattice as a DOT Hasse diagram
    Dot {
        path: PathBuf,
        #[command(flatten)]
        input: InputOpt,
        /// Node labelling
        #[arg(long, value_enum, default_value = "full")]
        labels: LabelsArg,
        #[command(flatten)]
        cap: CapOpt,
        #[command(flatten)]
        out: OutOpt,
    },
}

enum AppError {
    /// Parse, IO, or usage problem — exit 2.
    Data(String),
    /// Verification failure or cap exceeded — exit 1.
    Failure(String),
}

impl AppError {
    fn code(&self) -> ExitCode {
        match self {
            AppError::Data(_) => ExitCode::from(2),
            AppError::Failure(_) => ExitCode::from(1),
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Data(m) | AppError::Failure(m) => m,
        }
    }
}

impl From<FormatError> for AppError {
    fn from(e: FormatError) -> Self {
        AppError::Data(e.to_string())
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::CapExceeded { .. } => AppError::Failure(e.to_string()),
            _ => AppError::Data(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn run(cmd: Cmd) -> Result<(), AppError> {
    match cmd {
        Cmd::Concepts {
            path,
            input,
            json,
            cap,
            out,
            dot,
        } => {
            let k = load_context(&path, &input)?;
            let lattice = k.lattice(Some(effective_cap(&cap)?))?;
            write_dot(&dot, &lattice, &k)?;
            emit(&out, &render_lattice(&k, &lattice, json)?)
        }
        Cmd::Negate {
            path,
            input,
            json,
            out,
        } => {
            let negated = load_context(&path, &input)?.negate();
            let text = if json {
                to_json(&ContextJson::from(&negated))?
            } else {
                formats::serialize_cxt(&negated)
            };
            emit(&out, &text)
        }
        Cmd::Anticoncepts {
            path,
            input,
            json,
            cap,
            out,
            dot,
        } => {
            let negated = load_context(&path, &input)?.negate();
            let lattice = negated.lattice(Some(effective_cap(&cap)?))?;
            write_dot(&dot, &lattice, &negated)?;
            emit(&out, &render_lattice(&negated, &lattice, json)?)
        }
        Cmd::Candidates {
            path,
            input,
            json,
            cap,
            out,
            dot,
        } => {
            let k = load_context(&path, &input)?;
            let report = candidate_outbox(&k, Some(effective_cap(&cap)?))?;
            write_dot(&dot, &report.lattice, &k.negate())?;
            let text = if json {
                to_json(&CandidateReportJson::build(&report, &k))?
            } else {
                let mut text = String::new();
                for (rank, c) in report.candidates.iter().enumerate() {
                    let concept = &report.lattice.concepts()[c.concept];
                    let _ = writeln!(
                        text,
                        "{}. {}  score={}  preconcepts={}",
                        rank + 1,
                        concept_line(&k, concept),
                        c.score,
                        c.preconcept_count
                    );
                }
                let _ = writeln!(text, "provenance: {}", report.provenance);
                text
            };
            emit(&out, &text)
        }
        Cmd::Reveal {
            base,
            extended,
            input,
            allow_removals,
            json,
            out,
        } => {
            let ext = load_extension(&base, &extended, &input, allow_removals)?;
            let star = ext.discovery_context();
            let kp = ext.extended();
            let text = if json {
                let phi: indexmap::IndexMap<String, Vec<String>> = (0..kp.object_count())
                    .map(|g| {
                        let s = kp.object_set([g]).expect("in range");
                        (
                            kp.object_name(g).to_string(),
                            attribute_names(kp, &ext.phi(&s).expect("valid")),
                        )
                    })
                    .collect();
                let psi: indexmap::IndexMap<String, Vec<String>> = (0..kp.attribute_count())
                    .map(|m| {
                        let t = kp.attribute_set([m]).expect("in range");
                        (
                            kp.attribute_name(m).to_string(),
                            object_names(kp, &ext.psi(&t).expect("valid")),
                        )
                    })
                    .collect();
                to_json(&serde_json::json!({
                    "discovery_context": ContextJson::from(&star),
                    "phi": phi,
                    "psi": psi,
                }))?
            } else {
                let mut text = String::from("discovery context (K*):\n");
                text.push_str(&formats::serialize_cxt(&star));
                text.push_str("phi (newly shared attributes per object):\n");
                for g in 0..kp.object_count() {
                    let s = kp.object_set([g]).expect("in range");
                    let _ = writeln!(
                        text,
                        "  {} = {}",
                        kp.object_name(g),
                        kp.format_attributes(&ext.phi(&s).expect("valid"))
                    );
                }
                text.push_str("psi (newly acquiring objects per attribute):\n");
                for m in 0..kp.attribute_count() {
                    let t = kp.attribute_set([m]).expect("in range");
                    let _ = writeln!(
                        text,
                        "  {} = {}",
                        kp.attribute_name(m),
                        kp.format_objects(&ext.psi(&t).expect("valid"))
                    );
                }
                text
            };
            emit(&out, &text)
        }
        Cmd::Seeds {
            base,
            extended,
            input,
            allow_removals,
            json,
            cap,
            seed,
            budget,
            out,
            dot,
        } => {
            let ext = load_extension(&base, &extended, &input, allow_removals)?;
            let report = seed_report(&ext, Some(effective_cap(&cap)?), budget, seed)?;
            write_dot(&dot, &report.k_star_lattice, &report.discovery_context)?;
            let text = if json {
                to_json(&SeedReportJson::build(&report, &ext))?
            } else {
                let mut text = String::new();
                let star = &report.discovery_context;
                let _ = writeln!(
                    text,
                    "discovery context (K*): {} objects, {} attributes, {} new pairs",
                    star.object_count(),
                    star.attribute_count(),
                    star.relation_size()
                );
                let _ = writeln!(text, "seeds ({}):", report.seeds.len());
                for entry in &report.seeds {
                    let _ = writeln!(
                        text,
                        "  {} ; {}",
                        ext.base().format_objects(entry.seed.objects()),
                        ext.base().format_attributes(entry.seed.attributes())
                    );
                    let anticipated: Vec<String> = entry
                        .anticipated
                        .iter()
                        .map(|&i| concept_line(star, &report.k_star_lattice.concepts()[i]))
                        .collect();
                    let _ = writeln!(text, "    anticipates: {}", anticipated.join(" | "));
                    let containing: Vec<String> = entry
                        .containing
                        .iter()
                        .map(|&i| concept_line(ext.base(), &report.anti_lattice.concepts()[i]))
                        .collect();
                    let _ = writeln!(text, "    anti-concepts: {}", containing.join(" | "));
                }
                text.push_str(&verification_summary(&report.verification));
                text
            };
            emit(&out, &text)?;
            if report.verification.all_pass() {
                Ok(())
            } else {
                Err(AppError::Failure("proposition check failed".into()))
            }
        }
        Cmd::Verify {
            base,
            extended,
            input,
            allow_removals,
            json,
            seed,
            budget,
            out,
        } => {
            let ext = load_extension(&base, &extended, &input, allow_removals)?;
            let report = verify_propositions(&ext, budget, seed);
            let text = if json {
                to_json(&serde_json::json!({
                    "rng_seed": report.rng_seed,
                    "sample_budget": report.sample_budget,
                    "exhaustive": report.exhaustive,
                    "propositions": propositions_json(&report),
                }))?
            } else {
                render_verification(&report)
            };
            emit(&out, &text)?;
            if report.all_pass() {
                Ok(())
            } else {
                Err(AppError::Failure("proposition check failed".into()))
            }
        }
        Cmd::Gen {
            objects,
            attributes,
            density,
            seed,
            out,
        } => {
            let spec = GenSpec::new(objects, attributes, density, seed)?;
            emit(&out, &formats::serialize_cxt(&gen_random_context(&spec)))
        }
        Cmd::Extend {
            base,
            input,
            new_objects,
            new_attributes,
            new_density,
            seed,
            out,
        } => {
            let k = load_context(&base, &input)?;
            let ext = gen_random_extension(&k, new_objects, new_attributes, new_density, seed)?;
            emit(&out, &formats::serialize_cxt(ext.extended()))
        }
        Cmd::Eval {
            objects,
            attributes,
            density,
            new_objects,
            new_attributes,
            new_density,
            trials,
            seed,
            cap,
            out,
        } => {
            let cap = Some(effective_cap(&cap)?);
            let mut master = ChaCha8Rng::seed_from_u64(seed);
            let mut text = String::from(
                "trial,objects,attributes,density,new_objects,new_attributes,new_density,seed_count,discovery_concepts,anticipated,recall\n",
            );
            for trial in 0..trials {
                let ctx_seed = master.next_u64();
                let ext_seed = master.next_u64();
                let base =
                    gen_random_context(&GenSpec::new(objects, attributes, density, ctx_seed)?);
                let ext =
                    gen_random_extension(&base, new_objects, new_attributes, new_density, ext_seed)?;
                let metrics = seed_recall(&ext, cap)?;
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    trial,
                    objects,
                    attributes,
                    density,
                    new_objects,
                    new_attributes,
                    new_density,
                    metrics.seed_count,
                    metrics.discovery_concept_count,
                    metrics.anticipated_count,
                    metrics.recall
                );
            }
            emit(&out, &text)
        }
        Cmd::Dot {
            path,
            input,
            labels,
            cap,
            out,
        } => {
            let k = load_context(&path, &input)?;
            let lattice = k.lattice(Some(effective_cap(&cap)?))?;
            emit(&out, &lattice.to_dot(&k, labels.into()))
        }
    }
}

fn effective_cap(cap: &CapOpt) -> Result<usize, AppError> {
    if let Some(c) = cap.cap {
        return Ok(c);
    }
    match std::env::var("UUM_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| AppError::Data(format!("invalid UUM_CAP value `{}`", v))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn load_context(path: &Path, input: &InputOpt) -> Result<FormalContext, AppError> {
    let format = match input.format {
        Some(FormatArg::Cxt) => Format::Cxt,
        Some(FormatArg::Csv) => Format::Csv,
        None => Format::from_extension(path).ok_or_else(|| {
            AppError::Data(format!(
                "{}: cannot detect the format from the extension; pass --format",
                path.display()
            ))
        })?,
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Data(format!("{}: {}", path.display(), e)))?;
    format
        .parse(&text)
        .map_err(|e| AppError::Data(format!("{}: {}", path.display(), e)))
}

fn load_extension(
    base: &Path,
    extended: &Path,
    input: &InputOpt,
    allow_removals: bool,
) -> Result<ContextExtension, AppError> {
    let k = load_context(base, input)?;
    let kp = load_context(extended, input)?;
    Ok(ContextExtension::new(k, kp, allow_removals)?)
}

fn emit(out: &OutOpt, text: &str) -> Result<(), AppError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| AppError::Data(format!("{}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn write_dot(dot: &DotOpt, lattice: &ConceptLattice, k: &FormalContext) -> Result<(), AppError> {
    if let Some(path) = &dot.dot {
        std::fs::write(path, lattice.to_dot(k, dot.labels.into()))
            .map_err(|e| AppError::Data(format!("{}: {}", path.display(), e)))?;
    }
    Ok(())
}

fn concept_line(k: &FormalContext, c: &Concept) -> String {
    format!(
        "{} ; {}",
        k.format_objects(c.extent()),
        k.format_attributes(c.intent())
    )
}

fn render_lattice(
    k: &FormalContext,
    lattice: &ConceptLattice,
    json: bool,
) -> Result<String, AppError> {
    if json {
        to_json(&serde_json::json!({
            "count": lattice.len(),
            "concepts": lattice
                .concepts()
                .iter()
                .map(|c| ConceptJson::new(k, c))
                .collect::<Vec<_>>(),
            "covers": lattice.covers(),
        }))
    } else {
        let mut text = String::new();
        for c in lattice.concepts() {
            let _ = writeln!(text, "{}", concept_line(k, c));
        }
        Ok(text)
    }
}

fn verification_summary(v: &VerificationReport) -> String {
    let failed = v.checks.iter().filter(|c| !c.pass).count();
    if failed == 0 {
        format!(
            "propositions: all {} checks passed (seed={}, budget={}, exhaustive={})\n",
            v.checks.len(),
            v.rng_seed,
            v.sample_budget,
            v.exhaustive
        )
    } else {
        format!(
            "propositions: {} of {} checks FAILED (seed={}, budget={}, exhaustive={})\n",
            failed,
            v.checks.len(),
            v.rng_seed,
            v.sample_budget,
            v.exhaustive
        )
    }
}

fn render_verification(v: &VerificationReport) -> String {
    let mut text = String::new();
    for check in &v.checks {
        let _ = writeln!(
            text,
            "{}: {} (cases={})",
            check.name,
            if check.pass { "pass" } else { "FAIL" },
            check.cases
        );
        if let Some(witness) = &check.witness {
            let _ = writeln!(text, "  witness: {}", witness);
        }
    }
    let _ = writeln!(
        text,
        "Props 1-6: {}",
        if v.numbered_props_pass() { "pass" } else { "FAIL" }
    );
    text.push_str(&verification_summary(v));
    text
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, AppError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| AppError::Data(format!("serialization failed: {}", e)))
}
