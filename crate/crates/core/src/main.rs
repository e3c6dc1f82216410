//! Command-line surface for constructing, verifying, enumerating and
//! counting necklaces with completely unclustered Burrows-Wheeler transforms.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::json;

use unclustered::error::Error;
use unclustered::extend::construct_unclustered;
use unclustered::graph::GdbGraph;
use unclustered::numth;
use unclustered::oracle;
use unclustered::untie;
use unclustered::word::{inverse_bwt_word, Word};

const SCHEMA_VERSION: u32 = 1;
const EXPORT_EDGE_GUARD: usize = 10_000;

#[derive(Parser)]
#[command(name = "unclustered", version, about = "Necklaces whose BWT is completely unclustered", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a necklace of the given length whose BWT has one run per position.
    Construct {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
        /// Require every letter of the alphabet to occur (needs length >= alphabet).
        #[arg(long)]
        all_letters: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also print the reconstruction-order rotation of the BWT preimage.
        #[arg(long)]
        raw: bool,
    },
    /// Inspect a word: BWT-image status, run count, ties, de Bruijn status.
    Verify {
        word: String,
        /// Alphabet size; defaults to (largest letter + 1).
        #[arg(long)]
        alphabet: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustively enumerate necklaces of a given length and alphabet.
    Enumerate {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        alphabet: usize,
        /// List only necklaces whose BWT has one run per position.
        #[arg(long)]
        unclustered_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact counts: Phi_3(n), ternary de Bruijn words of length 3n, lower bound.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Per-n table relating primitive roots mod kn+1 to the BWT of (k-1)...10 repeated n times.
    Artin {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the generalized de Bruijn graph DB(k,n) in DOT format.
    ExportGraph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Label each edge with its vertex number in the line graph DB(k,kn).
        #[arg(long)]
        with_line_labels: bool,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run the tie-removal engine on a de Bruijn BWT image and emit the step trace.
    UntieTrace { word: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Internal(_) | Error::Reroute(_) => 3,
        _ => 2,
    }
}

fn envelope(command: &str, parameters: serde_json::Value, result: serde_json::Value) -> String {
    serde_json::to_string_pretty(&json!({
        "command": command,
        "parameters": parameters,
        "result": result,
        "schema_version": SCHEMA_VERSION,
    }))
    .expect("serializable")
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Construct {
            length,
            alphabet,
            all_letters,
            format,
            raw,
        } => cmd_construct(length, alphabet, all_letters, format, raw),
        Command::Verify {
            word,
            alphabet,
            format,
        } => cmd_verify(&word, alphabet, format),
        Command::Enumerate {
            length,
            alphabet,
            unclustered_only,
            format,
        } => cmd_enumerate(length, alphabet, unclustered_only, format),
        Command::Count { n, format } => cmd_count(n, format),
        Command::Artin { k, max_n, format } => cmd_artin(k, max_n, format),
        Command::ExportGraph {
            k,
            n,
            format: GraphFormat::Dot,
            with_line_labels,
            out,
        } => cmd_export_graph(k, n, with_line_labels, out),
        Command::UntieTrace { word } => cmd_untie_trace(&word),
    }
}

fn cmd_construct(
    length: usize,
    alphabet: usize,
    all_letters: bool,
    format: Format,
    raw: bool,
) -> Result<ExitCode, Error> {
    let u = construct_unclustered(length, alphabet, all_letters)?;
    let bwt = u.bwt();
    let runs = bwt.run_count();
    if runs != length {
        return Err(Error::Internal(format!(
            "constructed word has {runs} runs, expected {length}"
        )));
    }
    let raw_rotation = if raw {
        Some(inverse_bwt_word(&bwt)?.to_string())
    } else {
        None
    };
    match format {
        Format::Text => {
            println!("necklace: {u}");
            println!("bwt:      {bwt}");
            println!("runs:     {runs}");
            if let Some(r) = raw_rotation {
                println!("raw:      {r}");
            }
        }
        Format::Json => {
            let mut result = json!({
                "necklace": u.to_string(),
                "bwt": bwt.to_string(),
                "runs": runs,
            });
            if let Some(r) = raw_rotation {
                result["raw"] = json!(r);
            }
            println!(
                "{}",
                envelope(
                    "construct",
                    json!({
                        "length": length,
                        "alphabet": alphabet,
                        "all_letters": all_letters,
                    }),
                    result,
                )
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(text: &str, alphabet: Option<usize>, format: Format) -> Result<ExitCode, Error> {
    let w = match alphabet {
        Some(k) => Word::parse(text, k)?,
        None => Word::parse_infer(text)?,
    };
    let k = w.alphabet_size();
    let len = w.len();
    let image = w.is_bwt_image_aperiodic();
    let runs = w.run_count();
    let unclustered = image && runs == len;
    let permutation_power = w.is_alphabet_permutation_power();
    let gdbw_image = image && permutation_power;
    let ties: Option<Vec<usize>> = if gdbw_image {
        let n = len / k;
        Some(
            untie::find_ties(&w, k, n)?
                .iter()
                .map(|t| t.block)
                .collect(),
        )
    } else {
        None
    };
    match format {
        Format::Text => {
            println!("word:              {w}");
            println!("alphabet:          {k}");
            println!("bwt image:         {image}");
            println!("runs:              {runs}/{len}");
            println!("unclustered:       {unclustered}");
            println!("permutation power: {permutation_power}");
            if let Some(t) = &ties {
                println!("ties:              {t:?}");
            }
            println!("de Bruijn image:   {gdbw_image}");
        }
        Format::Json => {
            println!(
                "{}",
                envelope(
                    "verify",
                    json!({ "word": text, "alphabet": k }),
                    json!({
                        "bwt_image": image,
                        "runs": runs,
                        "length": len,
                        "unclustered": unclustered,
                        "permutation_power": permutation_power,
                        "ties": ties,
                        "gdbw_image": gdbw_image,
                    }),
                )
            );
        }
    }
    Ok(if unclustered {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_enumerate(
    length: usize,
    alphabet: usize,
    unclustered_only: bool,
    format: Format,
) -> Result<ExitCode, Error> {
    let report = oracle::count_unclustered(alphabet, length)?;
    let listing: Vec<String> = if unclustered_only {
        report.witnesses.iter().map(|u| u.to_string()).collect()
    } else {
        oracle::enumerate_necklaces(alphabet, length)?
            .iter()
            .map(|u| u.to_string())
            .collect()
    };
    match format {
        Format::Text => {
            println!(
                "necklaces: {}  unclustered: {}",
                report.total_necklaces, report.unclustered_count
            );
            for u in &listing {
                println!("{u}");
            }
        }
        Format::Json => {
            println!(
                "{}",
                envelope(
                    "enumerate",
                    json!({
                        "length": length,
                        "alphabet": alphabet,
                        "unclustered_only": unclustered_only,
                    }),
                    json!({
                        "total_necklaces": report.total_necklaces,
                        "unclustered_count": report.unclustered_count,
                        "listing": listing,
                    }),
                )
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(n: u64, format: Format) -> Result<ExitCode, Error> {
    let phi = numth::phi_generalized(3, n)?;
    let gdbw = numth::count_gdbw_ternary(n)?;
    let bound = numth::lower_bound_unclustered(n)?;
    let bound_text = if bound.denom().is_one() {
        bound.numer().to_string()
    } else {
        format!("{}/{}", bound.numer(), bound.denom())
    };
    match format {
        Format::Text => {
            println!("phi_3({n})            = {phi}");
            println!("gdbw count (len {})  = {gdbw}", 3 * n);
            println!("unclustered lower bound = {bound_text}");
        }
        Format::Json => {
            println!(
                "{}",
                envelope(
                    "count",
                    json!({ "n": n }),
                    json!({
                        "phi": phi.to_string(),
                        "gdbw_count": gdbw.to_string(),
                        "lower_bound": bound_text,
                    }),
                )
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_artin(k: u64, max_n: u64, format: Format) -> Result<ExitCode, Error> {
    if k < 2 {
        return Err(Error::Precondition("k must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let m = k
            .checked_mul(n)
            .and_then(|kn| kn.checked_add(1))
            .ok_or_else(|| Error::Arithmetic("kn + 1 overflows".into()))?;
        let prime = numth::is_prime(m);
        let primitive_root = prime && numth::is_primitive_root(k, m);
        let lhs = numth::artin_lhs(k, n)?;
        let rhs = prime && primitive_root;
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "primitive-root test and BWT-image test disagree at k={k}, n={n}"
            )));
        }
        rows.push((n, m, prime, primitive_root, lhs));
    }
    match format {
        Format::Text => {
            println!(
                "{:>6} {:>10} {:>6} {:>10} {:>6}",
                "n", "kn+1", "prime", "prim.root", "holds"
            );
            for &(n, m, prime, pr, holds) in &rows {
                let pr_text = if prime {
                    if pr {
                        "yes"
                    } else {
                        "no"
                    }
                } else {
                    "-"
                };
                println!(
                    "{n:>6} {m:>10} {:>6} {pr_text:>10} {:>6}",
                    if prime { "yes" } else { "no" },
                    if holds { "yes" } else { "no" },
                );
            }
        }
        Format::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|&(n, m, prime, pr, holds)| {
                    json!({
                        "n": n,
                        "modulus": m,
                        "prime": prime,
                        "primitive_root": if prime { json!(pr) } else { json!(null) },
                        "holds": holds,
                    })
                })
                .collect();
            println!(
                "{}",
                envelope(
                    "artin",
                    json!({ "k": k, "max_n": max_n }),
                    json!({ "rows": rows_json }),
                )
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export_graph(
    k: usize,
    n: usize,
    with_line_labels: bool,
    out: Option<std::path::PathBuf>,
) -> Result<ExitCode, Error> {
    let g = GdbGraph::new(k, n)?;
    if g.edge_count() > EXPORT_EDGE_GUARD {
        return Err(Error::GuardExceeded(format!(
            "{} edges exceed rendering limit {EXPORT_EDGE_GUARD}",
            g.edge_count()
        )));
    }
    let dot = g.export_dot(with_line_labels);
    match out {
        Some(path) => std::fs::write(&path, dot)
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{dot}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_untie_trace(text: &str) -> Result<ExitCode, Error> {
    let w = Word::parse_infer(text)?;
    let k = w.alphabet_size();
    if w.len() % k != 0 {
        return Err(Error::Precondition(format!(
            "length {} is not a multiple of the alphabet size {k}",
            w.len()
        )));
    }
    let n = w.len() / k;
    let (final_word, steps) = untie::untie_all(&w, k, n)?;
    println!(
        "{}",
        envelope(
            "untie-trace",
            json!({ "word": text, "alphabet": k }),
            json!({
                "steps": steps,
                "step_count": steps.len(),
                "final_word": final_word.to_string(),
                "final_runs": final_word.run_count(),
            }),
        )
    );
    Ok(ExitCode::SUCCESS)
}
