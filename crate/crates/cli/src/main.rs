use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyzeta::bases::write_atomic;
use polyzeta::numerics::{eval_numeric, finite_part_estimate, mzv, verify_relation, BigReal, EvalContext};
use polyzeta::regularize::{regularize_word, Regularization};
use polyzeta::relations::{build_table, derive_all, Families, RelationTable};
use polyzeta::words::lyndon_generate;
use polyzeta::{Alphabet, Composition, NCPoly, Product, Rational, Word};
use serde_json::json;

const MAX_WEIGHT_GUARD: usize = 12;
const MIN_PRECISION: u32 = 20;

#[derive(Parser)]
#[command(name = "polyzeta", version, about = "Shuffle/stuffle algebra and relations among multiple zeta values")]
struct Cli {
    /// Directory for cached relation tables.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List Lyndon words up to a weight.
    Lyndon {
        #[arg(long, default_value = "X")]
        alphabet: Alphabet,
        #[arg(long, default_value_t = 8)]
        max_weight: usize,
    },
    /// Shuffle or stuffle product of two words.
    Product {
        #[arg(long)]
        kind: Product,
        u: Word,
        v: Word,
    },
    /// Regularized value of a word.
    Reg {
        #[arg(long)]
        kind: Regularization,
        word: Word,
    },
    /// Derive and echelonize relations; print rewrites and irreducibles.
    Relations {
        #[arg(long, default_value_t = 8)]
        max_weight: usize,
        #[arg(long)]
        duality: bool,
        #[arg(long)]
        hexagon: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Numerical value of a convergent multiple zeta value.
    Zeta {
        composition: Composition,
        #[arg(long, default_value_t = 40)]
        prec: u32,
    },
    /// Generalized Euler constant of a Y-word, symbolic and numeric.
    GammaConst {
        word: Word,
        #[arg(long, default_value_t = 40)]
        prec: u32,
        /// Compare with the finite part of the harmonic sum at this N.
        #[arg(long)]
        check: Option<u64>,
    },
    /// Certify every derived relation numerically.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_weight: usize,
        #[arg(long, default_value_t = 40)]
        prec: u32,
        #[arg(long)]
        duality: bool,
        #[arg(long)]
        hexagon: bool,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<polyzeta::Error> for Failure {
    fn from(e: polyzeta::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn guard_weight(w: usize) -> Result<(), Failure> {
    if w > MAX_WEIGHT_GUARD {
        return Err(Failure::Usage(format!("--max-weight {w} exceeds the limit {MAX_WEIGHT_GUARD}")));
    }
    Ok(())
}

fn guard_precision(p: u32) -> Result<(), Failure> {
    if p < MIN_PRECISION {
        return Err(Failure::Usage(format!("--prec {p} is below the minimum {MIN_PRECISION}")));
    }
    Ok(())
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn table_cached(cache: Option<&Path>, max_weight: usize, families: Families) -> Result<RelationTable, Failure> {
    let Some(dir) = cache else {
        return Ok(build_table(max_weight, families)?);
    };
    let name = format!(
        "relations-w{max_weight}{}{}.json",
        if families.duality { "-duality" } else { "" },
        if families.hexagon { "-hexagon" } else { "" }
    );
    let path = dir.join(name);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
            if let Ok(table) = RelationTable::from_json(&value) {
                return Ok(table);
            }
        }
    }
    let table = build_table(max_weight, families)?;
    let text = serde_json::to_string_pretty(&table.to_json()).expect("serializable");
    write_atomic(&path, text.as_bytes())?;
    Ok(table)
}

fn print_table(table: &RelationTable) {
    for level in &table.levels {
        for (head, rhs) in &level.rewrites {
            println!("{head} -> {rhs}");
        }
    }
    for level in &table.levels {
        let irr: Vec<String> = level.irreducibles.iter().map(|s| s.to_string()).collect();
        println!("weight {}: irreducibles [{}]", level.weight, irr.join(", "));
    }
}

fn real_json(x: &BigReal, digits: usize) -> serde_json::Value {
    json!({ "value": x.to_decimal(digits), "bound": format!("{:.3e}", x.error_bound()) })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cache = cli.cache_dir.as_deref();
    match cli.command {
        Command::Lyndon { alphabet, max_weight } => {
            guard_weight(max_weight)?;
            let mut words = lyndon_generate(alphabet, max_weight);
            words.sort_by(|a, b| a.weight().cmp(&b.weight()).then(a.cmp(b)));
            let text: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            println!("{}", text.join(", "));
        }
        Command::Product { kind, u, v } => {
            let p = NCPoly::<Rational>::from_word(u).product(&NCPoly::from_word(v), kind)?;
            println!("{p}");
        }
        Command::Reg { kind, word } => {
            let word = match (kind.alphabet(), word.alphabet()) {
                (Alphabet::Y, Alphabet::X) if word.is_empty() => Word::empty(Alphabet::Y),
                _ => word,
            };
            println!("{}", regularize_word(kind, &word)?);
        }
        Command::Relations { max_weight, duality, hexagon, out, format } => {
            guard_weight(max_weight)?;
            let table = table_cached(cache, max_weight, Families { duality, hexagon })?;
            print_table(&table);
            if let Some(path) = out {
                let text = match format {
                    Format::Json => serde_json::to_string_pretty(&table.to_json()).expect("serializable") + "\n",
                    Format::Markdown => table.to_markdown(),
                    Format::Csv => table.to_csv(),
                };
                write_atomic(&path, text.as_bytes()).map_err(|e| io_error(&path, e))?;
            }
        }
        Command::Zeta { composition, prec } => {
            guard_precision(prec)?;
            let ctx = EvalContext::new(prec);
            let v = mzv(&composition, &ctx)?;
            println!("{v:.prec$}", prec = prec as usize);
        }
        Command::GammaConst { word, prec, check } => {
            guard_precision(prec)?;
            let ctx = EvalContext::new(prec);
            let symbolic = regularize_word(Regularization::Gamma, &word)?;
            let (value, _) = eval_numeric(&symbolic, &ctx)?;
            println!("{symbolic}");
            let weight = symbolic.weight();
            if (2..=MAX_WEIGHT_GUARD).contains(&weight) {
                let reduced = table_cached(cache, weight, Families::default())?.normalize(&symbolic)?;
                if reduced != symbolic {
                    println!("= {reduced}");
                }
            }
            println!("{value:.prec$}", prec = prec as usize);
            if let Some(n) = check {
                let estimate = finite_part_estimate(&word, n, &ctx)?;
                let diff = (estimate.to_f64() - value.to_f64()).abs();
                let divergent = word.letters().take_while(|l| l.index() == 1).count() as i32;
                let allowed = 10.0 * (1.0 + (n as f64).ln()).powi(divergent) / n as f64;
                println!("finite part at N={n}: {:.12} (difference {diff:.3e}, allowed {allowed:.3e})", estimate.to_f64());
                if diff > allowed {
                    return Err(Failure::Verification(format!("finite part differs by {diff:.3e}")));
                }
            }
        }
        Command::Verify { max_weight, prec, duality, hexagon, out } => {
            guard_weight(max_weight)?;
            guard_precision(prec)?;
            let ctx = EvalContext::new(prec);
            let families = Families { duality, hexagon };
            let mut relations = derive_all(max_weight, families)?;
            relations.extend(table_cached(cache, max_weight, families)?.relations());
            let mut failures = 0;
            let mut rows = Vec::new();
            for r in &relations {
                let (ok, residual) = verify_relation(r, &ctx)?;
                if !ok {
                    failures += 1;
                }
                println!("{} {:<32} residual {:.1e}", if ok { "ok  " } else { "FAIL" }, r.provenance, residual.magnitude_bound());
                rows.push(json!({
                    "provenance": r.provenance.to_string(),
                    "poly": r.poly.to_string(),
                    "verified": ok,
                    "residual": real_json(&residual, prec as usize),
                }));
            }
            println!("{} relations, {failures} failures", relations.len());
            if let Some(path) = out {
                let report = json!({ "max_weight": max_weight, "precision": prec, "failures": failures, "relations": rows });
                let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
                write_atomic(&path, text.as_bytes()).map_err(|e| io_error(&path, e))?;
            }
            if failures > 0 {
                return Err(Failure::Verification(format!("{failures} relations failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
