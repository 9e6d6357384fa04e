//! Command-line surface for the loop engine.
//!
//! Exit codes: 0 = success / positive answer, 1 = negative answer
//! (not isomorphic, witness does not exist, nothing found), 2 = error.

use clap::{Args, Parser, Subcommand};
use loopsmith::gf::{self, Mat2, PlaneType};
use loopsmith::iso::{are_isomorphic, classify_qa_with_ceiling, Confidence, DEFAULT_CLASSIFY_CEILING};
use loopsmith::loops::FiniteLoop;
use loopsmith::qa::QaParams;
use loopsmith::report::structure_report;
use loopsmith::search::{find_loops, SearchConstraints};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "loopsmith", version, about = "Finite loop construction, analysis, and search")]
struct Cli {
    /// Worker threads for parallelizable scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonFlag {
    /// Emit JSON instead of human-readable text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build the order-p^3 loop of an anisotropic 2x2 matrix and print its
    /// canonical table.
    Qa {
        #[arg(long)]
        p: u32,
        /// Matrix entries a11,a12,a21,a22.
        #[arg(long)]
        matrix: String,
        /// Write the table to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Read a canonical table file and report the loop's structure.
    Analyze {
        path: PathBuf,
        /// Also compute the multiplication group order.
        #[arg(long)]
        mlt: bool,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Test two table files for isomorphism (exit 0 with a witness, 1 if
    /// not isomorphic).
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Classify all plane loops at a prime up to isomorphism.
    ClassifyQa {
        #[arg(long)]
        p: u32,
        /// Raise the classification ceiling (default 5).
        #[arg(long)]
        ceiling: Option<u32>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Search for loops satisfying the given constraints.
    Search {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        commutative: bool,
        #[arg(long)]
        automorphic: bool,
        #[arg(long)]
        nonassociative: bool,
        #[arg(long)]
        power_associative: bool,
        #[arg(long)]
        exponent: Option<usize>,
        #[arg(long)]
        trivial_center: bool,
        #[arg(long)]
        nontrivial_center: bool,
        /// Stop after this many pairwise non-isomorphic loops (0 = no limit).
        #[arg(long, default_value_t = 1)]
        limit: usize,
        /// Time budget in seconds (LOOPSMITH_BUDGET_SECONDS overrides the
        /// default when this flag is absent).
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory to write found tables into as canonical .tbl files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Produce an anisotropic matrix of the requested type, if one exists.
    Witness {
        #[arg(long)]
        p: u32,
        #[arg(long = "type")]
        plane_type: u8,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Shifted-residue intersection counts for every nonzero shift.
    Perron {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        json: JsonFlag,
    },
}

fn parse_matrix(text: &str, p: u32) -> Result<Mat2, String> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("matrix entries must be integers: {e}"))?;
    let entries: [i64; 4] = parts
        .try_into()
        .map_err(|v: Vec<i64>| format!("expected 4 matrix entries, got {}", v.len()))?;
    Mat2::new(entries, p).map_err(|e| e.to_string())
}

fn load_table(path: &PathBuf) -> Result<FiniteLoop, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    FiniteLoop::parse_table(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<T: serde::Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<u8, String> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| format!("cannot configure {jobs} worker threads: {e}"))?;
    }
    match cli.command {
        Command::Qa { p, matrix, out, json } => {
            let m = parse_matrix(&matrix, p)?;
            let params = QaParams::new(m).map_err(|e| e.to_string())?;
            let q = params.build_loop().map_err(|e| e.to_string())?;
            let table = q.to_table_string();
            if let Some(path) = &out {
                std::fs::write(path, &table)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            if json.json {
                emit(&json!({
                    "matrix": params.matrix().values(),
                    "order": q.order(),
                    "p": p,
                    "plane_type": params.plane_type().map_err(|e| e.to_string())?.as_u8(),
                    "table": q.rows(),
                }))?;
            } else if out.is_none() {
                print!("{table}");
            } else {
                println!(
                    "wrote order-{} loop (plane type {}) to {}",
                    q.order(),
                    params.plane_type().map_err(|e| e.to_string())?,
                    out.as_ref().unwrap().display()
                );
            }
            Ok(0)
        }
        Command::Analyze { path, mlt, json } => {
            let q = load_table(&path)?;
            let report = structure_report(&q, mlt).map_err(|e| e.to_string())?;
            if json.json {
                emit(&report)?;
            } else {
                println!("order            : {}", report.order);
                println!("commutative      : {}", report.commutative);
                println!("power associative: {}", report.power_associative);
                println!("automorphic      : {}", report.automorphic);
                match report.exponent {
                    Some(e) => println!("exponent         : {e}"),
                    None => println!("exponent         : undefined"),
                }
                println!("left nucleus     : {:?}", report.nuclei.left);
                println!("middle nucleus   : {:?}", report.nuclei.middle);
                println!("right nucleus    : {:?}", report.nuclei.right);
                println!("nucleus          : {:?}", report.nuclei.full);
                println!("commutant        : {:?}", report.commutant);
                println!("center           : {:?}", report.center);
                println!("central series   : sizes {:?}", report.upper_central_series.sizes);
                match &report.nilpotency_class {
                    loopsmith::report::ClassField::Class(k) => println!("nilpotency class : {k}"),
                    loopsmith::report::ClassField::NotNilpotent => {
                        println!("nilpotency class : not nilpotent")
                    }
                }
                if let Some(m) = &report.mlt_order {
                    println!("mlt order        : {m}");
                }
                if let Some(b) = &report.bruck {
                    println!(
                        "bruck associate  : bol {} aip {} powers {} centers {} suite {}",
                        b.bol_ok, b.aip_ok, b.powers_match, b.centers_theorem_ok, b.center_suite_ok
                    );
                }
            }
            Ok(0)
        }
        Command::Iso { a, b, json } => {
            let qa = load_table(&a)?;
            let qb = load_table(&b)?;
            match are_isomorphic(&qa, &qb) {
                Some(w) => {
                    if json.json {
                        emit(&json!({
                            "isomorphic": true,
                            "witness": (0..w.degree()).map(|i| w.apply(i)).collect::<Vec<_>>(),
                        }))?;
                    } else {
                        println!(
                            "isomorphic; witness {:?}",
                            (0..w.degree()).map(|i| w.apply(i)).collect::<Vec<_>>()
                        );
                    }
                    Ok(0)
                }
                None => {
                    if json.json {
                        emit(&json!({ "isomorphic": false }))?;
                    } else {
                        println!("not-isomorphic");
                    }
                    Ok(1)
                }
            }
        }
        Command::ClassifyQa { p, ceiling, json } => {
            let classification =
                classify_qa_with_ceiling(p, ceiling.unwrap_or(DEFAULT_CLASSIFY_CEILING))
                    .map_err(|e| e.to_string())?;
            if json.json {
                let classes: Vec<_> = classification
                    .classes
                    .iter()
                    .map(|c| {
                        json!({
                            "char_poly_orbit": c.char_poly_orbit,
                            "member_count": c.member_count,
                            "plane_type": c.plane_type.as_u8(),
                            "representative_matrix": c.representative.values(),
                            "table": c.table.rows(),
                        })
                    })
                    .collect();
                emit(&json!({
                    "anisotropic_matrix_count": classification.anisotropic_matrix_count,
                    "class_count": classification.classes.len(),
                    "classes": classes,
                    "confidence": match classification.confidence {
                        Confidence::Verified => "verified",
                        Confidence::Evidence => "evidence",
                    },
                    "p": classification.p,
                }))?;
            } else {
                println!(
                    "p = {}: {} classes over {} anisotropic matrices ({})",
                    classification.p,
                    classification.classes.len(),
                    classification.anisotropic_matrix_count,
                    match classification.confidence {
                        Confidence::Verified => "verified",
                        Confidence::Evidence => "evidence",
                    }
                );
                for (i, c) in classification.classes.iter().enumerate() {
                    println!(
                        "class {}: type {}, {} matrices, representative {:?}, char polys {:?}",
                        i,
                        c.plane_type,
                        c.member_count,
                        c.representative.values(),
                        c.char_poly_orbit
                    );
                }
            }
            Ok(0)
        }
        Command::Search {
            order,
            commutative,
            automorphic,
            nonassociative,
            power_associative,
            exponent,
            trivial_center,
            nontrivial_center,
            limit,
            budget,
            seed,
            out,
            json,
        } => {
            let mut c = SearchConstraints::for_order(order);
            c.commutative = commutative;
            c.automorphic = automorphic;
            c.nonassociative = nonassociative;
            c.power_associative = power_associative;
            c.exponent = exponent;
            c.trivial_center = trivial_center;
            c.nontrivial_center = nontrivial_center;
            c.seed = seed;
            let default_budget = std::env::var("LOOPSMITH_BUDGET_SECONDS")
                .ok()
                .and_then(|s| s.parse::<u64>().ok())
                .unwrap_or(60);
            c.budget = Duration::from_secs(budget.unwrap_or(default_budget));
            let outcome = find_loops(&c, limit).map_err(|e| e.to_string())?;
            let mut files = Vec::new();
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir)
                    .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
                for (i, q) in outcome.loops.iter().enumerate() {
                    let path = dir.join(format!("loop_{order}_{i}.tbl"));
                    std::fs::write(&path, q.to_table_string())
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    files.push(path.display().to_string());
                }
            }
            if json.json {
                emit(&json!({
                    "exhausted": outcome.exhausted,
                    "files": files,
                    "found": outcome.loops.len(),
                    "nodes": outcome.nodes,
                    "tables": outcome.loops.iter().map(|q| q.rows()).collect::<Vec<_>>(),
                }))?;
            } else {
                println!(
                    "found {} loop(s); search {}",
                    outcome.loops.len(),
                    if outcome.exhausted { "exhausted the space" } else { "stopped early" }
                );
                for f in &files {
                    println!("wrote {f}");
                }
                if out.is_none() {
                    for q in &outcome.loops {
                        print!("{}", q.to_table_string());
                    }
                }
            }
            Ok(if outcome.loops.is_empty() { 1 } else { 0 })
        }
        Command::Witness { p, plane_type, json } => {
            let t = PlaneType::from_u8(plane_type)
                .ok_or_else(|| format!("type must be 1, 2, or 3, got {plane_type}"))?;
            match gf::type_witness(p, t).map_err(|e| e.to_string())? {
                Some(m) => {
                    if json.json {
                        emit(&json!({
                            "exists": true,
                            "matrix": m.values(),
                            "p": p,
                            "plane_type": plane_type,
                        }))?;
                    } else {
                        println!("{:?}", m.values());
                    }
                    Ok(0)
                }
                None => {
                    if json.json {
                        emit(&json!({ "exists": false, "p": p, "plane_type": plane_type }))?;
                    } else {
                        println!("not exists");
                    }
                    Ok(1)
                }
            }
        }
        Command::Perron { p, json } => {
            let rows: Result<Vec<(u32, usize, usize)>, String> = (1..p)
                .map(|a| {
                    let (r, n) = gf::perron_counts(p, a).map_err(|e| e.to_string())?;
                    Ok((a, r, n))
                })
                .collect();
            let rows = rows?;
            if json.json {
                let entries: Vec<_> = rows
                    .iter()
                    .map(|(a, r, n)| json!({ "nonresidues": n, "residues": r, "shift": a }))
                    .collect();
                emit(&json!({ "counts": entries, "p": p }))?;
            } else {
                println!("shift residues nonresidues");
                for (a, r, n) in rows {
                    println!("{a:>5} {r:>8} {n:>11}");
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
