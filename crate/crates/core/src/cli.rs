//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success; for `embed`, no inf-embedding |
//! | 10   | `embed` found an inf-embedding |
//! | 2    | unparsable arguments, trees or descriptors |
//! | 3    | a capacity limit was hit |
//! | 4    | internal inconsistency or output failure |

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::construction::{
    bound_derivation, build_full_sequence, l_formula, restart_audit, simulate_leg_elimination,
    LegSimState, SequenceRecord, DEFAULT_EXPORT_CAP,
};
use crate::count::{decimal, ExtendedCount};
use crate::dot::to_dot;
use crate::embedding::inf_embeds_witness;
use crate::error::Error;
use crate::families::{expand, family_embeds, TreeDescriptor, DEFAULT_EXPANSION_LIMIT};
use crate::search::{default_caps, longest_bad_sequence};
use crate::tree::RootedTree;
use crate::verifier::{cross_validate, verify_phases, verify_prefix, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EMBEDS: i32 = 10;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Longest prefix `verify --prefix` will materialize; pairs grow quadratically.
pub const MAX_VERIFY_PREFIX: u64 = 20_000;

const GEN_CHUNK: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "weak-tree",
    version,
    about = "Inf-embeddings of rooted trees and the tree(3) lower-bound sequence"
)]
pub struct CliConfig {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for pairwise verification; defaults to all cores there
    /// and to one thread elsewhere.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the first tree inf-embeds into the second.
    Embed {
        /// Parenthesis code or descriptor (chain:N, twoleg:S:L:R, explicit:CODE).
        tree1: String,
        tree2: String,
        /// Print the vertex mapping when one exists.
        #[arg(long)]
        witness: bool,
    },
    /// Stream records of the lower-bound sequence.
    Gen {
        #[arg(long)]
        from: ExtendedCount,
        #[arg(long)]
        to: ExtendedCount,
        /// Allow more than the default record cap.
        #[arg(long)]
        force: bool,
    },
    /// Audit the lower-bound sequence.
    Verify(VerifyArgs),
    /// Longest bad sequence for a small slack.
    Search {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        step_cap: Option<u64>,
        #[arg(long)]
        size_cap: Option<u64>,
    },
    /// Evaluate the leg-elimination step count, or show the full bound.
    Bound {
        #[arg(long)]
        x: Option<ExtendedCount>,
        /// Also simulate the restart sweep for both leg readings.
        #[arg(long, conflicts_with = "x")]
        restart_audit: bool,
    },
    /// Run the leg-elimination process from a symmetric two-leg state.
    Simulate {
        #[arg(long)]
        stem: ExtendedCount,
        #[arg(long)]
        depth: ExtendedCount,
        #[arg(long)]
        label: ExtendedCount,
    },
    /// Render a tree as Graphviz DOT.
    ExportDot { tree: String },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifyArgs {
    /// Explicitly check positions 1..=COUNT.
    #[arg(long, value_name = "COUNT")]
    prefix: Option<u64>,
    /// Symbolic check of the whole sequence.
    #[arg(long)]
    symbolic: bool,
    /// Compare explicit and symbolic checks on trees up to this size.
    #[arg(long, value_name = "SIZE_LIMIT")]
    cross: Option<usize>,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let threads = config.threads.unwrap_or(match config.command {
        Command::Verify(_) => 0,
        _ => 1,
    });
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: thread pool: {e}");
            return EXIT_INTERNAL;
        }
    };
    match dispatch(&config, &pool, out) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } | Error::EmptyTree | Error::Input(_) => EXIT_PARSE,
                Error::Capacity(_) => EXIT_CAPACITY,
                Error::Construction(_) => EXIT_INTERNAL,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: output: {e}");
            EXIT_INTERNAL
        }
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Output of `embed --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct EmbedReport {
    pub tree1: TreeDescriptor,
    pub tree2: TreeDescriptor,
    pub embeds: bool,
    pub witness: Option<crate::embedding::EmbeddingWitness>,
}

/// Output of `bound --x <x> --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct StepCount {
    #[serde(with = "decimal")]
    pub x: ExtendedCount,
    #[serde(with = "decimal")]
    pub steps: ExtendedCount,
}

/// Tree argument: a bare parenthesis code or a descriptor.
pub fn parse_tree_arg(text: &str) -> Result<TreeDescriptor, Error> {
    let text = text.trim();
    if text.starts_with('(') {
        Ok(TreeDescriptor::Explicit(RootedTree::parse(text)?))
    } else {
        text.parse()
    }
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn dispatch(
    config: &CliConfig,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let json = config.format == Format::Json;
    match &config.command {
        Command::Embed {
            tree1,
            tree2,
            witness,
        } => {
            let (d1, d2) = (parse_tree_arg(tree1)?, parse_tree_arg(tree2)?);
            let embeds = family_embeds(&d1, &d2)?;
            let witness = if *witness && embeds {
                let (t1, t2) = (
                    expand(&d1, DEFAULT_EXPANSION_LIMIT)?,
                    expand(&d2, DEFAULT_EXPANSION_LIMIT)?,
                );
                let w = inf_embeds_witness(&t1, &t2).ok_or_else(|| {
                    Error::Construction("closed form and explicit check disagree".into())
                })?;
                Some(w)
            } else {
                None
            };
            if json {
                json_line(
                    out,
                    &EmbedReport {
                        tree1: d1,
                        tree2: d2,
                        embeds,
                        witness,
                    },
                )?;
            } else {
                writeln!(
                    out,
                    "{}",
                    if embeds {
                        "inf-embedding found"
                    } else {
                        "no inf-embedding"
                    }
                )?;
                for (u, v) in witness.iter().flat_map(|w| &w.mapping) {
                    writeln!(out, "{u} -> {v}")?;
                }
            }
            Ok(if embeds { EXIT_EMBEDS } else { EXIT_OK })
        }
        Command::Gen { from, to, force } => {
            let seq = build_full_sequence()?;
            // Range and cap errors surface before anything is written.
            let cap = (!force).then_some(DEFAULT_EXPORT_CAP);
            let out_of_range = from.is_zero() || from > to || to > seq.total_length();
            if out_of_range || cap.is_some_and(|c| to - from + 1u32 > BigUint::from(c)) {
                seq.records(from, to, cap)?;
            }
            let mut start = from.clone();
            while &start <= to {
                let end = (&start + GEN_CHUNK - 1u32).min(to.clone());
                for r in seq.records(&start, &end, None)? {
                    write_record(out, &r, json)?;
                }
                start = end + 1u32;
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let seq = build_full_sequence()?;
            let report = pool.install(|| -> Result<VerificationReport, Error> {
                if let Some(n) = args.prefix {
                    if n == 0 || n > MAX_VERIFY_PREFIX {
                        return Err(Error::Capacity(format!(
                            "prefix length must be in 1..={MAX_VERIFY_PREFIX}, got {n}"
                        )));
                    }
                    verify_prefix(&seq, n)
                } else if args.symbolic {
                    Ok(verify_phases(&seq))
                } else {
                    Ok(cross_validate(
                        &seq,
                        args.cross.expect("clap group requires one mode"),
                    ))
                }
            })?;
            if json {
                json_line(out, &report)?;
            } else {
                write_report(out, &report)?;
            }
            Ok(EXIT_OK)
        }
        Command::Search {
            n,
            step_cap,
            size_cap,
        } => {
            let (default_step, default_size) = default_caps(*n);
            let result = longest_bad_sequence(
                *n,
                step_cap.unwrap_or(default_step),
                size_cap.unwrap_or(default_size),
            )?;
            if json {
                json_line(out, &result)?;
            } else {
                writeln!(out, "n: {}", result.n)?;
                writeln!(out, "length: {}", result.length)?;
                writeln!(out, "exhausted: {}", result.exhausted)?;
                writeln!(out, "step cap: {}", result.step_cap)?;
                writeln!(out, "size cap: {}", result.size_cap)?;
                writeln!(out, "nodes: {}", result.nodes)?;
                for r in result.witness_records()? {
                    writeln!(out, "{r}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Bound { x: Some(x), .. } => {
            let steps = l_formula(x)?;
            if json {
                json_line(
                    out,
                    &StepCount {
                        x: x.clone(),
                        steps,
                    },
                )?;
            } else {
                writeln!(out, "{steps}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Bound {
            x: None,
            restart_audit: audit,
        } => {
            let d = bound_derivation();
            let audits = if *audit { Some(restart_audit()?) } else { None };
            if json {
                match audits {
                    Some(a) => json_line(out, &a)?,
                    None => json_line(out, &d)?,
                }
                return Ok(EXIT_OK);
            }
            if let Some(audits) = audits {
                writeln!(
                    out,
                    "leg\tsize\tsimulated\tformula\tend label\timplied bound"
                )?;
                for a in audits {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        a.leg,
                        a.size,
                        a.simulated_steps,
                        a.formula_steps,
                        a.end_label,
                        a.implied_bound
                    )?;
                }
                return Ok(EXIT_OK);
            }
            writeln!(out, "first sweep starts at label {}", d.first_sweep_label)?;
            writeln!(out, "L(4) = {}", d.first_sweep_steps)?;
            writeln!(out, "first sweep ends at label {}", d.first_sweep_end)?;
            writeln!(out, "restart at label {}", d.restart_label)?;
            writeln!(out, "L(46) = {}", d.second_sweep_steps)?;
            writeln!(out, "second sweep ends at label {}", d.second_sweep_end)?;
            writeln!(
                out,
                "chain countdown from {} vertices at label {}",
                d.chain_start, d.chain_start
            )?;
            writeln!(out, "last label {}", d.last_label)?;
            writeln!(out, "{}", d.bound)?;
            Ok(EXIT_OK)
        }
        Command::Simulate { stem, depth, label } => {
            let state =
                LegSimState::new(label.clone(), stem.clone(), depth.clone(), depth.clone())?;
            let sim = simulate_leg_elimination(&state)?;
            if json {
                json_line(out, &sim)?;
                return Ok(EXIT_OK);
            }
            writeln!(
                out,
                "start ({depth}, {depth}) stem {stem} at label {label}: {} steps to label {}",
                sim.step_count, sim.final_state.label
            )?;
            writeln!(out, "depth\tfrom\textended\textra\tsteps\tto")?;
            for s in &sim.sweeps {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    s.from_depth, s.from_label, s.extended_left, s.extra, s.steps, s.to_label
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::ExportDot { tree } => {
            let t = expand(&parse_tree_arg(tree)?, DEFAULT_EXPANSION_LIMIT)?;
            write!(out, "{}", to_dot(&t))?;
            Ok(EXIT_OK)
        }
    }
}

fn write_record(out: &mut dyn Write, r: &SequenceRecord, json: bool) -> Result<(), Failure> {
    if json {
        json_line(out, r)
    } else {
        writeln!(out, "{r}")?;
        Ok(())
    }
}

fn write_report(out: &mut dyn Write, r: &VerificationReport) -> Result<(), Failure> {
    writeln!(
        out,
        "mode: {}",
        serde_json::to_value(r.mode)?.as_str().unwrap_or_default()
    )?;
    writeln!(out, "checked pairs: {}", r.checked_pairs)?;
    for c in &r.pair_classes {
        writeln!(
            out,
            "class {}: {} segment pairs, {} position pairs, {} violating",
            c.class, c.segment_pairs, c.position_pairs, c.violating_segment_pairs
        )?;
    }
    for b in &r.budget_violations {
        writeln!(
            out,
            "budget violation at {}: {} vertices, budget {}",
            b.position, b.size, b.budget
        )?;
    }
    for v in &r.embedding_violations {
        let how = match &v.evidence {
            crate::verifier::Evidence::Witness(_) => "witness".to_owned(),
            crate::verifier::Evidence::Class(c) => c.clone(),
        };
        writeln!(
            out,
            "embedding violation {} -> {}: {how}",
            v.earlier, v.later
        )?;
    }
    for c in &r.inconclusive_classes {
        writeln!(
            out,
            "inconclusive {} at {} -> {}: {}",
            c.class, c.earlier_start, c.later_start, c.reason
        )?;
    }
    for d in &r.disagreements {
        writeln!(
            out,
            "disagreement {} -> {}: explicit {}, symbolic {}",
            d.earlier, d.later, d.explicit, d.symbolic
        )?;
    }
    writeln!(out, "verdict: {}", r.verdict)?;
    Ok(())
}
