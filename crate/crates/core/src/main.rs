use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use semibound::arithmetic::{adapt_idempotent_basis, integralize, minkowski_check};
use semibound::exact_linalg::ZMatrix;
use semibound::invariant::{is_irreducible, IrreducibilityVerdict, IrreducibleWitness};
use semibound::pipeline::{
    parse_input, run_corpus, verify_bound, PipelineError, PipelineOptions,
};
use semibound::semigroup::{
    closure, green_relations, maximal_subgroup_at, SemigroupError, SemigroupTable, DEFAULT_CAP,
};

#[derive(Parser)]
#[command(
    name = "semibound",
    version,
    about = "Exact verification that a finite irreducible rational matrix semigroup satisfies |S| <= p^(n^2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct CommonArgs {
    /// Input file: {"dimension": n, "generators": [[["a/b", ...], ...], ...]}
    input: PathBuf,
    /// Closure cap; enumeration past this many elements is an error
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct PrimeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Override the prescribed prime (2 or 3); the report flags the deviation
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the multiplicative closure and its product table
    Closure(CommonArgs),
    /// Compute Green's R/L/J/H classes and the J-order
    Green(CommonArgs),
    /// Decide irreducibility with a verifiable certificate
    Irreducible(CommonArgs),
    /// Conjugate the semigroup into integer matrices
    Integralize(CommonArgs),
    /// Run the full verification chain and emit a bound report
    VerifyBound(PrimeArgs),
    /// Check Minkowski torsion conditions for every maximal subgroup
    MinkowskiCheck(PrimeArgs),
    /// Built-in example semigroups
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Verify every corpus entry and compare against expectations
    Run {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List corpus entries
    List,
}

fn emit(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let mut f = fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            f.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                f.write_all(b"\n")?;
            }
        }
        None => {
            if content.ends_with('\n') {
                print!("{content}");
            } else {
                println!("{content}");
            }
        }
    }
    Ok(())
}

fn load_closure(args: &CommonArgs) -> Result<SemigroupTable, PipelineError> {
    let json = fs::read_to_string(&args.input)
        .map_err(|e| PipelineError::InvalidInput(format!("{}: {e}", args.input.display())))?;
    let (_, generators) = parse_input(&json)?;
    closure(&generators, args.cap).map_err(|e| match e {
        SemigroupError::CapExceeded { cap } => PipelineError::CapExceeded { cap },
        other => PipelineError::InvalidInput(other.to_string()),
    })
}

fn fail(args_out: &Option<PathBuf>, format: Format, err: &PipelineError) -> anyhow::Result<u8> {
    let content = match format {
        Format::Json => serde_json::to_string_pretty(&err.to_json())?,
        Format::Text => format!("error: {err}"),
    };
    emit(args_out, &content)?;
    Ok(err.exit_code() as u8)
}

fn cmd_closure(args: &CommonArgs) -> anyhow::Result<u8> {
    let table = match load_closure(args) {
        Ok(t) => t,
        Err(e) => return fail(&args.out, args.format, &e),
    };
    let content = match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "n": table.n(),
                "size": table.size(),
                "zero_index": table.zero_index(),
                "generator_indices": table.generator_indices(),
                "elements": table.elements().iter().map(|m| m.rows_as_strings()).collect::<Vec<_>>(),
                "product_table": (0..table.size())
                    .map(|i| (0..table.size()).map(|j| table.product(i, j)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&value)?
        }
        Format::Text => {
            let mut s = format!(
                "closure: {} elements of dimension {}\n",
                table.size(),
                table.n()
            );
            if let Some(z) = table.zero_index() {
                s.push_str(&format!("zero element at index {z}\n"));
            }
            for (i, m) in table.elements().iter().enumerate() {
                s.push_str(&format!("[{i}]\n{m}"));
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(0)
}

fn cmd_green(args: &CommonArgs) -> anyhow::Result<u8> {
    let table = match load_closure(args) {
        Ok(t) => t,
        Err(e) => return fail(&args.out, args.format, &e),
    };
    let green = green_relations(&table);
    let jc = green.j_class_count();
    let j_order: Vec<Vec<usize>> = (0..jc)
        .map(|a| (0..jc).filter(|&b| a != b && green.j_leq(a, b)).collect())
        .collect();
    let content = match args.format {
        Format::Json => {
            let value = serde_json::json!({
                "size": table.size(),
                "r_classes": green.r_classes(),
                "l_classes": green.l_classes(),
                "j_classes": green.j_classes(),
                "h_classes": green.h_classes(),
                "j_order_strictly_below": j_order,
            });
            serde_json::to_string_pretty(&value)?
        }
        Format::Text => {
            let mut s = format!(
                "{} elements: {} R-classes, {} L-classes, {} J-classes, {} H-classes\n",
                table.size(),
                green.r_classes().len(),
                green.l_classes().len(),
                green.j_classes().len(),
                green.h_classes().len()
            );
            for (k, c) in green.j_classes().iter().enumerate() {
                s.push_str(&format!("J[{k}] = {c:?}, below: {:?}\n", j_order[k]));
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(0)
}

fn cmd_irreducible(args: &CommonArgs) -> anyhow::Result<u8> {
    let table = match load_closure(args) {
        Ok(t) => t,
        Err(e) => return fail(&args.out, args.format, &e),
    };
    let verdict = is_irreducible(&table);
    let (label, kind, subspace, code) = match &verdict {
        IrreducibilityVerdict::Irreducible(w) => (
            "irreducible",
            Some(match w {
                IrreducibleWitness::FullSpan => "full-span",
                IrreducibleWitness::Norton => "norton",
            }),
            None,
            0u8,
        ),
        IrreducibilityVerdict::Reducible(w) => (
            "reducible",
            None,
            Some(
                w.iter()
                    .map(|v| {
                        v.iter()
                            .map(semibound::exact_linalg::format_rational)
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>(),
            ),
            2,
        ),
        IrreducibilityVerdict::Inconclusive => ("inconclusive", None, None, 3),
    };
    let content = match args.format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "verdict": label,
            "certificate_kind": kind,
            "invariant_subspace": subspace,
        }))?,
        Format::Text => match (&kind, &subspace) {
            (Some(k), _) => format!("{label} ({k})"),
            (_, Some(w)) => format!("{label}; invariant subspace basis {w:?}"),
            _ => label.to_string(),
        },
    };
    emit(&args.out, &content)?;
    Ok(code)
}

fn cmd_integralize(args: &CommonArgs) -> anyhow::Result<u8> {
    let table = match load_closure(args) {
        Ok(t) => t,
        Err(e) => return fail(&args.out, args.format, &e),
    };
    let cert = match integralize(&table) {
        Ok(c) => c,
        Err(e) => {
            return fail(
                &args.out,
                args.format,
                &PipelineError::InternalContradiction(e.to_string()),
            )
        }
    };
    let content = match args.format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "lattice_basis": cert.basis_matrix.rows_as_strings(),
            "inverse": cert.inverse.rows_as_strings(),
            "conjugated_elements": cert.conjugated.iter().map(|m| m.rows_as_strings()).collect::<Vec<_>>(),
        }))?,
        Format::Text => {
            let mut s = format!("lattice basis B =\n{}", cert.basis_matrix);
            s.push_str("conjugated elements B^-1 * s * B:\n");
            for (i, m) in cert.conjugated.iter().enumerate() {
                s.push_str(&format!("[{i}]\n{m}"));
            }
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(0)
}

fn cmd_verify_bound(args: &PrimeArgs) -> anyhow::Result<u8> {
    let json = match fs::read_to_string(&args.common.input) {
        Ok(j) => j,
        Err(e) => {
            let err = PipelineError::InvalidInput(format!("{}: {e}", args.common.input.display()));
            return fail(&args.common.out, args.common.format, &err);
        }
    };
    let generators = match parse_input(&json) {
        Ok((_, g)) => g,
        Err(e) => return fail(&args.common.out, args.common.format, &e),
    };
    let options = PipelineOptions {
        cap: args.common.cap,
        prime_override: args.prime,
    };
    match verify_bound(&generators, &options) {
        Ok(report) => {
            let content = match args.common.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            emit(&args.common.out, &content)?;
            Ok(0)
        }
        Err(e) => fail(&args.common.out, args.common.format, &e),
    }
}

fn cmd_minkowski(args: &PrimeArgs) -> anyhow::Result<u8> {
    let table = match load_closure(&args.common) {
        Ok(t) => t,
        Err(e) => return fail(&args.common.out, args.common.format, &e),
    };
    let cert = match integralize(&table) {
        Ok(c) => c,
        Err(e) => {
            return fail(
                &args.common.out,
                args.common.format,
                &PipelineError::InternalContradiction(e.to_string()),
            )
        }
    };
    let green = green_relations(&table);
    let primes: Vec<u64> = match args.prime {
        Some(p) => vec![p],
        None => vec![2, 3],
    };
    let mut checks = Vec::new();
    let mut any_violation = false;
    for e in table.idempotents() {
        if table.element(e).is_zero() {
            continue;
        }
        let group = match maximal_subgroup_at(&table, &green, e) {
            Ok(g) => g,
            Err(err) => {
                return fail(
                    &args.common.out,
                    args.common.format,
                    &PipelineError::InternalContradiction(err.to_string()),
                )
            }
        };
        let adapted = match adapt_idempotent_basis(&cert.conjugated[e]) {
            Ok(a) => a,
            Err(err) => {
                return fail(
                    &args.common.out,
                    args.common.format,
                    &PipelineError::InternalContradiction(err.to_string()),
                )
            }
        };
        let blocks: Vec<ZMatrix> = group
            .element_indices
            .iter()
            .map(|&g| adapted.conjugate(&cert.conjugated[g]).principal_block(adapted.r))
            .collect();
        for &p in &primes {
            let report = match minkowski_check(&blocks, p) {
                Ok(r) => r,
                Err(err) => {
                    return fail(
                        &args.common.out,
                        args.common.format,
                        &PipelineError::InvalidInput(err.to_string()),
                    )
                }
            };
            any_violation |= !report.violations.is_empty();
            checks.push(serde_json::json!({
                "idempotent": e,
                "group_order": group.order,
                "block_rank": adapted.r,
                "p": p,
                "violations": report.violations,
            }));
        }
    }
    let content = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "checks": checks,
            "violation_free": !any_violation,
        }))?,
        Format::Text => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!(
                    "idempotent {} (|G| = {}, rank {}), p = {}: {}\n",
                    c["idempotent"],
                    c["group_order"],
                    c["block_rank"],
                    c["p"],
                    if c["violations"].as_array().unwrap().is_empty() {
                        "ok".to_string()
                    } else {
                        format!("VIOLATIONS {:?}", c["violations"])
                    }
                ));
            }
            s
        }
    };
    emit(&args.common.out, &content)?;
    // a violation would contradict Minkowski's theorem on a verified group
    Ok(if any_violation { 5 } else { 0 })
}

fn cmd_corpus(action: &CorpusAction) -> anyhow::Result<u8> {
    match action {
        CorpusAction::List => {
            for entry in semibound::corpus::corpus() {
                println!(
                    "{:<16} n={} irreducible={} size={} — {}",
                    entry.name,
                    entry.dimension,
                    entry.expected_irreducible,
                    entry
                        .expected_size
                        .map_or("-".to_string(), |s| s.to_string()),
                    entry.notes
                );
            }
            Ok(0)
        }
        CorpusAction::Run { out, format } => {
            let run = run_corpus();
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&run)?,
                Format::Text => {
                    let mut s = String::new();
                    for e in &run.entries {
                        s.push_str(&format!(
                            "{:<16} {:<14} {}\n",
                            e.name,
                            e.outcome,
                            if e.as_expected { "as expected" } else { "UNEXPECTED" }
                        ));
                    }
                    s.push_str(&format!(
                        "overall: {}\n",
                        if run.all_as_expected { "ok" } else { "FAILED" }
                    ));
                    s
                }
            };
            emit(out, &content)?;
            Ok(if run.all_as_expected { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Closure(args) => cmd_closure(args),
        Command::Green(args) => cmd_green(args),
        Command::Irreducible(args) => cmd_irreducible(args),
        Command::Integralize(args) => cmd_integralize(args),
        Command::VerifyBound(args) => cmd_verify_bound(args),
        Command::MinkowskiCheck(args) => cmd_minkowski(args),
        Command::Corpus { action } => cmd_corpus(action),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
