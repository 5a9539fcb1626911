//! `circulant`: command-line front end for the circulant graph toolkit.
//!
//! Every subcommand prints structured results as JSON lines on stdout
//! (`--format tsv` flattens them to tab-separated fields) and diagnostics
//! on stderr. Exit codes: 0 success, 1 verification failure, 2 bad input.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use circulant::builders::{family_instantiate, find_family, FAMILIES};
use circulant::bounds::{bounds_table, direct_product_ceiling, r_max};
use circulant::cyclic::normalize;
use circulant::jsonl;
use circulant::metrics::{bfs_profile_capped, work_cap_from_env};
use circulant::records::{load_records, verify_record_capped};
use circulant::search::{find_max_order, SearchMode, SearchSpec};
use circulant::stitching::{stitch_with, StitchOptions};
use circulant::sumsets::sumset_power;
use circulant::torus::{decompose_pair, validate_torus, TorusParams};
use circulant::{CirculantGraph, Error};

#[derive(Parser)]
#[command(name = "circulant", version, about = "Circulant graph construction, verification and search")]
struct Cli {
    /// Edge-traversal budget for BFS verification (also env CIRCULANT_WORK_CAP).
    #[arg(long, global = true)]
    work_cap: Option<u64>,
    /// Number of worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Heuristic,
}

#[derive(Subcommand)]
enum Command {
    /// BFS the graph from vertex 0 and report its exact diameter.
    Diameter {
        #[arg(long)]
        n: u128,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u128>,
        #[arg(long)]
        directed: bool,
    },
    /// Decompose a torus point (x, y) into h(1,1) + l(u, u+d).
    Decompose {
        #[arg(long)]
        u: u128,
        #[arg(long)]
        d: u128,
        #[arg(long)]
        s: u128,
        #[arg(long)]
        m: u128,
        #[arg(long)]
        x: u128,
        #[arg(long)]
        y: u128,
    },
    /// Instantiate a parameter family at a prime power q and certify it.
    Construct {
        #[arg(long, conflicts_with = "list_families")]
        family: Option<String>,
        #[arg(long, conflicts_with = "list_families")]
        q: Option<u64>,
        /// Also print the constructed graph as a JSON line.
        #[arg(long)]
        emit_graph: bool,
        #[arg(long)]
        list_families: bool,
    },
    /// Stitch two verified graphs into a direct product.
    Stitch {
        /// First graph as a JSON line {"n":..,"directed":..,"generators":[..]}.
        #[arg(long)]
        a: String,
        /// Second graph as a JSON line.
        #[arg(long)]
        b: String,
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
    },
    /// Print bound-algebra values: the comparison table, R_max, or the
    /// direct-product ceiling.
    Bounds {
        #[arg(long)]
        table: bool,
        #[arg(long)]
        ceiling: Option<u32>,
        #[arg(long)]
        rmax: Option<u32>,
    },
    /// Compute the k-fold sumset kA in Z_n and whether it covers.
    Sumset {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u64>,
        #[arg(long)]
        k: u64,
    },
    /// Re-verify every row of the record table by BFS.
    VerifyRecords {
        /// Only check records with order at most this bound.
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Search for the largest order reachable at a given degree and diameter.
    Search {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        directed: bool,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Orders to scan, inclusive, as A:B.
        #[arg(long)]
        range: String,
        /// Candidate-set budget across the whole scan.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        // Exit 1 means "the object exists but fails verification" (or the
        // verifier ran out of budget); everything else is bad input.
        let code = match e {
            Error::Disconnected { .. }
            | Error::DiameterClaim { .. }
            | Error::CoverFailure { .. }
            | Error::RecordChecksum
            | Error::WorkCap { .. }
            | Error::TooLarge(_)
            | Error::DistanceOverflow(_)
            | Error::NoDecomposition { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

/// Print a result line, exiting quietly if the consumer closed the pipe.
fn out_line(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{s}").is_err() {
        std::process::exit(0);
    }
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => a
            .iter()
            .map(tsv_cell)
            .collect::<Vec<_>>()
            .join(","),
        other => other.to_string(),
    }
}

fn emit(fmt: Format, v: &Value) {
    match fmt {
        Format::Json => out_line(&v.to_string()),
        Format::Tsv => {
            let line = match v {
                Value::Object(m) => m.values().map(tsv_cell).collect::<Vec<_>>().join("\t"),
                Value::Array(a) => a.iter().map(tsv_cell).collect::<Vec<_>>().join("\t"),
                other => tsv_cell(other),
            };
            out_line(&line);
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| usage(format!("range must be A:B, got {s:?}")))?;
    let lo: u64 = a.trim().parse().map_err(|_| usage(format!("bad range start {a:?}")))?;
    let hi: u64 = b.trim().parse().map_err(|_| usage(format!("bad range end {b:?}")))?;
    if lo == 0 || lo > hi {
        return Err(usage(format!("range must satisfy 1 <= A <= B, got {lo}:{hi}")));
    }
    Ok((lo, hi))
}

fn graph_from_arg(which: &str, line: &str) -> Result<CirculantGraph, Failure> {
    jsonl::from_line(line).map_err(|e| usage(format!("--{which}: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cap = cli.work_cap.unwrap_or_else(work_cap_from_env);
    // Library internals read the env when no explicit cap is threaded through.
    std::env::set_var("CIRCULANT_WORK_CAP", cap.to_string());
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let fmt = cli.format;

    match cli.command {
        Command::Diameter { n, gens, directed } => {
            let set = normalize(n, &gens, directed)?;
            let g = CirculantGraph::new(set);
            let p = bfs_profile_capped(&g, cap)?;
            emit(fmt, &json!({ "diameter": p.diameter(), "order": g.n() }));
            Ok(())
        }
        Command::Decompose { u, d, s, m, x, y } => {
            let p = TorusParams::new(u, d, s, m);
            let v = validate_torus(&p);
            if !v.ok() {
                return Err(usage(v.0.join("; ")));
            }
            let w = decompose_pair(&p, x, y)?;
            emit(fmt, &json!({ "h": w.h, "ell": w.ell }));
            Ok(())
        }
        Command::Construct {
            family,
            q,
            emit_graph,
            list_families,
        } => {
            if list_families {
                for f in FAMILIES {
                    let congruences: Vec<String> =
                        f.congruences.iter().map(|c| c.to_string()).collect();
                    emit(
                        fmt,
                        &json!({
                            "name": f.name,
                            "directed": f.directed,
                            "k": f.k,
                            "w": f.w,
                            "base": f.b,
                            "delta": f.delta,
                            "q_min": f.q_min,
                            "congruences": congruences,
                            "degree": format!("{}q-{}", f.degree_mul, f.degree_sub),
                        }),
                    );
                }
                return Ok(());
            }
            let name = family.ok_or_else(|| usage("--family NAME required (or --list-families)"))?;
            let q = q.ok_or_else(|| usage("--q Q required"))?;
            let f = find_family(&name)?;
            let (g, cert) = family_instantiate(f, q)?;
            let mut line = serde_json::to_value(&cert).map_err(Error::from)?;
            line["family"] = json!(f.name);
            line["q"] = json!(q);
            emit(fmt, &line);
            if emit_graph {
                out_line(&jsonl::to_line(&g)?);
            }
            Ok(())
        }
        Command::Stitch { a, b, k1, k2 } => {
            let g1 = graph_from_arg("a", &a)?;
            let g2 = graph_from_arg("b", &b)?;
            let st = stitch_with(
                &g1,
                k1,
                &g2,
                k2,
                StitchOptions {
                    auto_swap: true,
                    work_cap: cap,
                },
            )?;
            emit(
                fmt,
                &json!({
                    "n": st.graph.n(),
                    "degree": st.graph.degree(),
                    "delta": st.delta,
                    "swapped": st.swapped,
                    "degree_bound": st.degree_bound,
                    "diameter_bound": st.diameter_bound,
                }),
            );
            out_line(&jsonl::to_line(&st.graph)?);
            Ok(())
        }
        Command::Bounds { table, ceiling, rmax } => {
            if table {
                let t = bounds_table();
                for (label, cells) in t.rows() {
                    emit(
                        fmt,
                        &json!({
                            "row": label,
                            "cells": serde_json::to_value(cells).map_err(Error::from)?,
                        }),
                    );
                }
                for m in t.mismatches() {
                    eprintln!("mismatch: {m}");
                }
                return Ok(());
            }
            if let Some(k) = rmax {
                if k == 0 {
                    return Err(usage("--rmax needs k >= 1"));
                }
                emit(fmt, &json!({ "rmax": r_max(k) }));
                return Ok(());
            }
            if let Some(k) = ceiling {
                if k == 0 {
                    return Err(usage("--ceiling needs k >= 1"));
                }
                let (l, r) = direct_product_ceiling(k);
                emit(fmt, &json!({ "k": k, "l": l.to_string(), "r": r }));
                return Ok(());
            }
            Err(usage("choose one of --table, --ceiling K, --rmax K"))
        }
        Command::Sumset { n, set, k } => {
            let elems = sumset_power(n, &set, k)?;
            emit(
                fmt,
                &json!({ "covers": elems.len() as u64 == n, "size": elems.len() }),
            );
            Ok(())
        }
        Command::VerifyRecords { max_n } => {
            let records = load_records()?;
            let selected: Vec<_> = records
                .iter()
                .filter(|e| max_n.is_none_or(|m| e.n <= m))
                .collect();
            let reports: Vec<_> = selected
                .par_iter()
                .map(|e| verify_record_capped(e, cap))
                .collect();
            let mut failed = 0usize;
            for (e, r) in selected.iter().zip(&reports) {
                if !r.ok() {
                    failed += 1;
                }
                emit(
                    fmt,
                    &json!({
                        "d": r.d,
                        "k": r.k,
                        "n": e.n,
                        "ok": r.ok(),
                        "failures": r.failures,
                    }),
                );
            }
            emit(
                fmt,
                &json!({
                    "total": selected.len(),
                    "passed": selected.len() - failed,
                    "failed": failed,
                }),
            );
            if failed > 0 {
                return Err(Failure {
                    code: 1,
                    msg: format!("{failed} record rows failed verification"),
                });
            }
            Ok(())
        }
        Command::Search {
            d,
            k,
            directed,
            mode,
            range,
            budget,
            seed,
        } => {
            let (lo, hi) = parse_range(&range)?;
            let mode = match mode {
                Mode::Exhaustive => SearchMode::Exhaustive,
                Mode::Heuristic => SearchMode::Heuristic,
            };
            // Scan downward in shards so progress is visible and a hit near
            // the top returns without touching the rest of the range.
            const SHARD: u64 = 256;
            let mut definitive = true;
            let mut remaining = budget;
            let mut top = hi;
            loop {
                let bottom = top.saturating_sub(SHARD - 1).max(lo);
                let spec = SearchSpec {
                    d,
                    k,
                    directed,
                    mode,
                    n_range: (bottom, top),
                    budget: remaining,
                    seed,
                };
                let out = find_max_order(&spec)?;
                definitive &= out.definitive;
                remaining = remaining.saturating_sub(out.examined);
                emit(
                    fmt,
                    &json!({
                        "event": "progress",
                        "from": bottom,
                        "to": top,
                        "examined": out.examined,
                    }),
                );
                if let Some((n, set)) = out.best {
                    emit(
                        fmt,
                        &json!({
                            "event": "result",
                            "found": true,
                            "n": n,
                            "generators": set.elems(),
                            "definitive": definitive,
                        }),
                    );
                    return Ok(());
                }
                if bottom == lo || remaining == 0 {
                    if bottom != lo {
                        definitive = false;
                    }
                    break;
                }
                top = bottom - 1;
            }
            emit(
                fmt,
                &json!({ "event": "result", "found": false, "definitive": definitive }),
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
