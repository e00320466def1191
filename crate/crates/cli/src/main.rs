use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsplit::arith::is_fundamental_discriminant;
use qsplit::checks::{all_passed, claims_suite, cocycle_suite, crep_suite, CheckLine, CREP_INSTANCES};
use qsplit::forms::{class_group, discriminants_with_class_group, is_exceptional, GroupStructure};
use qsplit::nakamura::{compute_all, GrossClassResult};
use qsplit::report::{classify_with, compute_records, diff_row, GrossRecord, ResultCache, TABLE1};

const EXIT_USAGE: u8 = 2;
const EXIT_SCOPE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "qsplit", version, about = "Endomorphism algebras of Gross Q-curves over C2 x C2 fields")]
struct Cli {
    /// Skip the on-disk result cache (directory from QSPLIT_CACHE_DIR).
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassGroupArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "2x2")]
    Klein,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Cocycles,
    Crep,
    Claims,
}

#[derive(Subcommand)]
enum Cmd {
    /// Imaginary quadratic discriminants with a given class group.
    ListFields {
        #[arg(long, value_enum)]
        class_group: ClassGroupArg,
        /// Largest |D| searched; at least 1500 for 2x2.
        #[arg(long, default_value_t = 5000)]
        bound: u64,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        /// Drop exceptional discriminants.
        #[arg(long)]
        non_exceptional: bool,
    },
    /// Algebras of the restriction of scalars for one discriminant.
    Nakamura {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include the characters, n-values and t-values behind each quaternion algebra.
        #[arg(long)]
        emit_witness: bool,
    },
    /// All 23 rows; with --diff, compare against the embedded table.
    Table1 {
        #[arg(long)]
        diff: bool,
    },
    /// The 92 endomorphism algebras.
    Classify {
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Run a verification suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = (!cli.no_cache).then(ResultCache::from_env);
    let code = match cli.cmd {
        Cmd::ListFields { class_group, bound, format, non_exceptional } => list_fields(class_group, bound, format, non_exceptional),
        Cmd::Nakamura { disc, format, emit_witness } => nakamura(disc, format, emit_witness, cache.as_ref()),
        Cmd::Table1 { diff } => table1(diff, cache.as_ref()),
        Cmd::Classify { format } => classify(format, cache.as_ref()),
        Cmd::Check { suite, format } => check(suite, format),
    };
    ExitCode::from(code)
}

fn list_fields(cg: ClassGroupArg, bound: u64, format: Format, non_exceptional: bool) -> u8 {
    let target = match cg {
        ClassGroupArg::One => GroupStructure::trivial(),
        ClassGroupArg::Two => GroupStructure::cyclic(2),
        ClassGroupArg::Klein => GroupStructure::klein(),
    };
    if matches!(cg, ClassGroupArg::Klein) && bound < 1500 {
        eprintln!("error: --bound must be at least 1500 for 2x2");
        return EXIT_USAGE;
    }
    let discs: Vec<i64> =
        discriminants_with_class_group(&target, bound).into_iter().filter(|&d| !(non_exceptional && is_exceptional(d))).collect();
    match format {
        Format::Json => {
            let rows: Vec<Value> = discs
                .iter()
                .map(|&d| json!({"disc": d, "class_group": target.to_string(), "exceptional": is_exceptional(d)}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
        }
        Format::Csv => {
            println!("disc,class_group,exceptional");
            for d in discs {
                println!("{d},{target},{}", is_exceptional(d));
            }
        }
        Format::Md => {
            println!("| disc | class group | exceptional |");
            println!("|---|---|---|");
            for d in discs {
                println!("| {d} | {target} | {} |", if is_exceptional(d) { "yes" } else { "no" });
            }
        }
    }
    0
}

/// `Some(message)` when `d` is outside the scope of the computation.
fn scope_error(d: i64) -> Option<String> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Some(format!("{d} is not a negative fundamental discriminant"));
    }
    match class_group(d) {
        Err(e) => Some(e.to_string()),
        Ok(cg) if !cg.structure.is_klein() => Some(format!("class group {} out of scope", cg.structure)),
        Ok(_) if is_exceptional(d) => Some("exceptional discriminant".to_string()),
        Ok(_) => None,
    }
}

fn witness_json(r: &GrossClassResult) -> Value {
    let quats: Vec<Value> = r
        .quaternion_data
        .iter()
        .map(|q| {
            json!({
                "character": q.spec.label(),
                "n": q.n,
                "structure": q.structure.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>(),
                "abelian_over_f": q.abelian_over_f,
                "t": q.t,
                "ramified": q.algebra,
            })
        })
        .collect();
    json!({ "quaternions": quats })
}

fn nakamura(d: i64, format: Format, emit_witness: bool, cache: Option<&ResultCache>) -> u8 {
    if let Some(msg) = scope_error(d) {
        eprintln!("error: {d}: {msg}");
        return EXIT_SCOPE;
    }
    let (rec, witness) = if emit_witness {
        match compute_all(d) {
            Ok(r) => (GrossRecord::from(&r), Some(witness_json(&r))),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_VERIFY;
            }
        }
    } else {
        let got = match cache {
            Some(c) => c.get_or_compute(d),
            None => compute_all(d).map(|r| GrossRecord::from(&r)),
        };
        match got {
            Ok(rec) => (rec, None),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_VERIFY;
            }
        }
    };
    match format {
        Format::Json => match witness {
            None => println!("{}", rec.to_json()),
            Some(w) => {
                let mut v = serde_json::to_value(&rec).expect("json");
                v["witness"] = w;
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            }
        },
        Format::Csv => {
            println!("disc,biquadratics,quaternions,primes");
            println!("{},{},{},{}", rec.disc, biquads(&rec.biquadratics, " "), join(&rec.quaternions, " "), join(&rec.primes, " "));
        }
        Format::Md => {
            println!("| disc | biquadratic fields | quaternion discriminants | primes |");
            println!("|---|---|---|---|");
            println!("| {} | {} | {} | {} |", rec.disc, biquads(&rec.biquadratics, ", "), join(&rec.quaternions, ", "), join(&rec.primes, ", "));
        }
    }
    0
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn biquads(ts: &[[i64; 3]], sep: &str) -> String {
    ts.iter().map(|t| format!("({},{})", t[0], t[1])).collect::<Vec<_>>().join(sep)
}

fn table1(diff: bool, cache: Option<&ResultCache>) -> u8 {
    let mut bad = Vec::new();
    println!("| disc | biquadratic fields | quaternion discriminants |");
    println!("|---|---|---|");
    for row in &TABLE1 {
        let d = row.disc;
        let res = compute_all(d);
        let rec = match (&res, cache) {
            (Ok(r), Some(c)) => {
                let rec = GrossRecord::from(r);
                // a failed store only costs a recomputation next time
                let _ = c.store(&rec);
                rec
            }
            (Ok(r), None) => GrossRecord::from(r),
            (Err(e), _) => {
                eprintln!("error: {d}: {e}");
                bad.push(format!("{d}: {e}"));
                continue;
            }
        };
        println!("| {d} | {} | {} |", biquads(&rec.biquadratics, ", "), join(&rec.quaternions, ", "));
        if diff {
            if let Ok(r) = &res {
                match diff_row(r) {
                    Ok(rd) if rd.is_clean() => {}
                    Ok(rd) => bad.push(rd.to_string()),
                    Err(e) => bad.push(format!("{d}: {e}")),
                }
            }
        }
    }
    if bad.is_empty() {
        if diff {
            println!("diff: {} rows match", TABLE1.len());
        }
        0
    } else {
        for b in &bad {
            println!("mismatch: {b}");
        }
        EXIT_VERIFY
    }
}

fn classify(format: Format, cache: Option<&ResultCache>) -> u8 {
    let report = match compute_records(cache).and_then(|recs| classify_with(&recs)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_VERIFY;
        }
    };
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("json");
            v["total"] = json!(report.total());
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Csv => {
            println!("kind,algebra");
            for a in &report.product_algebras {
                println!("product,{a}");
            }
            for a in &report.matrix_algebras {
                println!("matrix,{a}");
            }
        }
        Format::Md => {
            println!("product algebras: {}", report.product_algebras.len());
            println!("matrix algebras: {}", report.matrix_algebras.len());
            println!("total: {}", report.total());
            println!("C2 x C2 admissible: {}", join(&report.klein_admissible, " "));
            println!("C2 x C2 excluded: {}", join(&report.klein_excluded, " "));
            for a in report.product_algebras.iter().chain(&report.matrix_algebras) {
                println!("- {a}");
            }
        }
    }
    0
}

fn check(suite: Suite, format: Format) -> u8 {
    let lines: Vec<CheckLine> = match suite {
        Suite::Cocycles => cocycle_suite(),
        Suite::Crep => crep_suite(CREP_INSTANCES),
        Suite::Claims => claims_suite(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&lines).expect("json")),
        Format::Csv => {
            println!("name,passed,detail");
            for l in &lines {
                println!("{},{},\"{}\"", l.name, l.passed, l.detail);
            }
        }
        Format::Md => {
            for l in &lines {
                let tag = if l.passed { "PASS" } else { "FAIL" };
                if l.detail.is_empty() {
                    println!("{tag} {}", l.name);
                } else {
                    println!("{tag} {}: {}", l.name, l.detail);
                }
            }
        }
    }
    if all_passed(&lines) { 0 } else { EXIT_VERIFY }
}
