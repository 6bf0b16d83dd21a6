//! `artin`: character tables, rational Artin decompositions and
//! Galois-orbit certificates from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 order or lattice bound exceeded.

mod pretty;
mod select;

use std::process::ExitCode;
use std::sync::Arc;

use artin_core::artin::{decompose_rational_with, verify_decomposition, DecompositionJson, SubgroupFamily};
use artin_core::certify::{certify_with_table, check_certificate, kernel_conclusion, CertificateJson, KernelReport};
use artin_core::corpus::{default_corpus, run_corpus, CorpusManifest, RunOptions};
use artin_core::permgroup::{DEFAULT_LATTICE_BOUND, DEFAULT_MAX_ORDER};
use artin_core::{CharacterTable, Error, GroupSpec, TheoremCertificate};
use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "artin", version, about = "Exact character tables and Artin induction certificates")]
struct Cli {
    /// Largest group order to enumerate.
    #[arg(long, global = true, env = "ARTIN_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of a group: a name (S4, D5, C2xC4, Q8), cycle
    /// notation "(0 1),(0 1 2)", or a JSON GroupSpec.
    Table { spec: String },
    /// Writes a rational virtual character as a rational combination of
    /// permutation characters Ind_H^G 1.
    Decompose {
        spec: String,
        /// Irreducible index, galois-average:i, galois-sum:i, or a value vector in class order.
        #[arg(long = "char")]
        character: String,
        /// Use every subgroup up to conjugacy instead of the cyclic ones.
        #[arg(long)]
        all_subgroups: bool,
    },
    /// Certifies that the Galois-orbit sum of a character lies in the span
    /// of the permutation characters.
    Certify {
        spec: String,
        #[arg(long = "char")]
        character: String,
    },
    /// Re-verifies a certificate file written by `certify`.
    Check { file: String },
    /// Runs every property suite over a manifest (the built-in corpus by default).
    Corpus {
        #[arg(long)]
        manifest: Option<String>,
        /// Worker threads; 0 picks the number of cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrderBound { .. } => 3,
            Error::Defect(_) => 1,
            _ => 2,
        };
        let message = match &e {
            Error::NotRational(_) => format!("{e}; a Galois average such as galois-average:<i> is rational"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure { code: 1, message: format!("serialising output: {e}") })?;
    println!("{text}");
    Ok(())
}

fn load_table(spec: &str, max_order: usize) -> Result<Arc<CharacterTable>, Failure> {
    let g = Arc::new(GroupSpec::parse(spec)?.build(max_order)?);
    Ok(Arc::new(CharacterTable::compute(&g)?))
}

#[derive(Serialize)]
struct DecomposeOutput {
    #[serde(flatten)]
    decomposition: DecompositionJson,
    verified: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CertifyOutput {
    certificate: CertificateJson,
    checked: bool,
    kernel_conclusion: Option<KernelReport>,
}

#[derive(Serialize)]
struct CheckOutput {
    valid: bool,
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let max_order = cli.max_order;
    match cli.command {
        Command::Table { spec } => {
            let t = load_table(&spec, max_order)?;
            if cli.pretty {
                print!("{}", pretty::table(&t));
            } else {
                emit(&t.to_json())?;
            }
            Ok(0)
        }
        Command::Decompose { spec, character, all_subgroups } => {
            let t = load_table(&spec, max_order)?;
            let chi = select::select(&t, &character)?;
            let family = if all_subgroups {
                SubgroupFamily::All { bound: DEFAULT_LATTICE_BOUND }
            } else {
                SubgroupFamily::Cyclic
            };
            let d = decompose_rational_with(&chi, family)?;
            let verified = verify_decomposition(&d);
            if cli.pretty {
                print!("{}", pretty::decomposition(&d, verified));
            } else {
                emit(&DecomposeOutput { decomposition: d.to_json(), verified })?;
            }
            Ok(if verified { 0 } else { 1 })
        }
        Command::Certify { spec, character } => {
            let t = load_table(&spec, max_order)?;
            let chi = select::select(&t, &character)?;
            let c = certify_with_table(&t, &chi)?;
            let checked = check_certificate(&c);
            let report = kernel_conclusion(&c).ok();
            if cli.pretty {
                print!("{}", pretty::certificate(&c, checked, report.as_ref()));
            } else {
                emit(&CertifyOutput { certificate: c.to_json(), checked, kernel_conclusion: report })?;
            }
            Ok(if checked { 0 } else { 1 })
        }
        Command::Check { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| input(format!("{file}: {e}")))?;
            let mut value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| input(format!("{file}: {e}")))?;
            // accept both a bare certificate and the output of `certify`
            if let Some(inner) = value.get_mut("certificate") {
                value = inner.take();
            }
            let json: CertificateJson =
                serde_json::from_value(value).map_err(|e| input(format!("{file}: not a certificate: {e}")))?;
            let c = TheoremCertificate::from_json(&json, max_order)?;
            let valid = check_certificate(&c);
            if cli.pretty {
                println!("{}", if valid { "certificate checks" } else { "certificate does NOT check" });
            } else {
                emit(&CheckOutput { valid })?;
            }
            Ok(if valid { 0 } else { 1 })
        }
        Command::Corpus { manifest, jobs } => {
            let m = match manifest {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| input(format!("{path}: {e}")))?;
                    CorpusManifest::parse(&text)?
                }
                None => default_corpus(),
            };
            let report = run_corpus(&m, RunOptions { max_order, jobs })?;
            if cli.pretty {
                print!("{}", pretty::corpus(&report));
            } else {
                emit(&report)?;
            }
            Ok(if report.failed > 0 {
                1
            } else if report.input_errors > 0 {
                2
            } else if report.resource_errors > 0 {
                3
            } else {
                0
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
