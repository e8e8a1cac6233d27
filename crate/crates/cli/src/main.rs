//! `mlent` — generate named multipartite states, extract Schmidt structure,
//! decide decomposability, build and evaluate witnesses, run the seesaw
//! optimizer, and reproduce the reference analyses end to end.
//!
//! Exit codes: 0 on success, 2 when a check ran fine but the verdict is
//! negative (not decomposable, witness not violated, reproduction mismatch),
//! 1 on errors.

mod manifest;
mod output;
mod recipes;

use clap::{Parser, Subcommand};
use serde_json::json;

use mlent::constructors;
use mlent::decompose::{self, DetSign};
use mlent::schmidt;
use mlent::seesaw::{self, SeesawConfig, SeesawProblem};
use mlent::statevec::{Bipartition, FactorizationSpec, PureState};
use mlent::tableaux;

use manifest::RunManifest;
use output::{emit, Format};

#[derive(Parser)]
#[command(name = "mlent", version, about = "Multilevel entanglement analysis")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json")]
    format: Format,

    /// Seesaw parallelism (number of worker threads; 0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// RNG seed; falls back to the MLENT_SEED environment variable, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named state as a JSON state file.
    Gen {
        /// bell | maxent | ghz | graph | example3 | xi1 | xi2 | ame6 |
        /// chain4x4 | star
        name: String,
        /// Number of parties (ghz, star).
        #[arg(long)]
        n: Option<usize>,
        /// Local dimension (maxent, ghz, star).
        #[arg(long)]
        d: Option<usize>,
        /// Graph JSON file (for `gen graph`).
        #[arg(long)]
        graph: Option<std::path::PathBuf>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Schmidt coefficients of a state across a bipartition.
    Schmidt {
        #[arg(long)]
        state: std::path::PathBuf,
        /// Bipartition such as "0|1,2" (right side optional).
        #[arg(long)]
        cut: String,
        /// Renormalize the state on load.
        #[arg(long)]
        renormalize: bool,
    },
    /// Exact decomposability of a state across a cut at a given shape.
    Check {
        #[arg(long)]
        state: std::path::PathBuf,
        #[arg(long)]
        cut: String,
        /// Arrangement shape "d1xd2".
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        renormalize: bool,
    },
    /// Maximal overlap with the d1xd2-decomposable states.
    MaxOverlap {
        #[arg(long)]
        state: std::path::PathBuf,
        #[arg(long)]
        cut: String,
        #[arg(long)]
        shape: String,
        /// Hash-deduplicate arrangements with tied coefficients before the
        /// singular value computation.
        #[arg(long)]
        dedupe: bool,
        #[arg(long)]
        renormalize: bool,
    },
    /// Build a projector witness from a state and evaluate it on another.
    Witness {
        /// xi1 | xi2 | path to a bipartite state file.
        #[arg(long)]
        xi: String,
        /// State file (projector) or mixture file to evaluate on.
        #[arg(long)]
        rho: std::path::PathBuf,
        /// Decomposable-set shape, default "2x2".
        #[arg(long, default_value = "2x2")]
        shape: String,
    },
    /// Overlaps of rank-limited maximally entangled states with the
    /// decomposable set.
    Table1 {
        /// Source shape "d1xd2"; all known rows when omitted.
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Standard Young tableaux of a rectangular shape.
    Tableaux {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Alternating optimization toward a decomposable ansatz.
    Seesaw {
        #[arg(long)]
        state: std::path::PathBuf,
        /// Per-party factor dims, e.g. "2x2,2x2,2x2,2x2" (per merged group
        /// when --merge is given).
        #[arg(long)]
        factorization: String,
        /// Party groups with joint unitaries, e.g. "0,3|1,2".
        #[arg(long)]
        merge: Option<String>,
        /// Fixed reference state: optimize local-unitary overlap only.
        #[arg(long)]
        reference: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long, default_value_t = 1.0 - 1e-6)]
        threshold: f64,
        #[arg(long)]
        renormalize: bool,
    },
    /// Full classification: fully decomposable / MME / GMME.
    Classify {
        #[arg(long)]
        state: std::path::PathBuf,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long)]
        renormalize: bool,
    },
    /// Re-run a named reference analysis and compare against its expected
    /// values.
    Reproduce {
        /// obs1 | obs2 | table1 | eq8 | ghz6 | chain | example3 | ame6 |
        /// star-ghz
        id: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| std::env::var("MLENT_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0);
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .ok();
    }
    match run(cli, seed) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn parse_shape(text: &str) -> Result<(usize, usize), mlent::Error> {
    let mut it = text.split('x');
    let bad = || mlent::Error::InvalidSpec(format!("bad shape {text:?}, expected d1xd2"));
    let d1 = it.next().and_then(|t| t.trim().parse().ok()).ok_or_else(bad)?;
    let d2 = it.next().and_then(|t| t.trim().parse().ok()).ok_or_else(bad)?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((d1, d2))
}

fn load_state(
    path: &std::path::Path,
    renormalize: bool,
    manifest: &mut RunManifest,
) -> Result<PureState, mlent::Error> {
    manifest.digest_input(path)?;
    PureState::load(path, renormalize)
}

fn run(cli: Cli, seed: u64) -> Result<i32, mlent::Error> {
    let format = cli.format;
    match cli.command {
        Command::Gen { name, n, d, graph, out } => {
            let mut manifest = RunManifest::new("gen", seed);
            manifest.params(json!({"name": name, "n": n, "d": d}));
            let state = match name.as_str() {
                "bell" => constructors::maximally_entangled(2)?,
                "maxent" => constructors::maximally_entangled(d.unwrap_or(4))?,
                "ghz" => constructors::ghz(n.unwrap_or(3), d.unwrap_or(2))?,
                "graph" => {
                    let path = graph.ok_or_else(|| {
                        mlent::Error::InvalidSpec("gen graph needs --graph file.json".into())
                    })?;
                    manifest.digest_input(&path)?;
                    let spec = constructors::GraphSpec::from_json(&std::fs::read_to_string(
                        &path,
                    )?)?;
                    constructors::weighted_graph_state(&spec)?
                }
                "example3" => constructors::example3_state(),
                "xi1" => constructors::xi_states().0,
                "xi2" => constructors::xi_states().1,
                "ame6" => constructors::six_qubit_ame(),
                "chain4x4" => constructors::ququart_chain(),
                "star" => constructors::star_graph_state(n.unwrap_or(3), d.unwrap_or(2))?,
                other => {
                    return Err(mlent::Error::InvalidSpec(format!(
                        "unknown generator {other:?}"
                    )))
                }
            };
            match out {
                Some(path) => {
                    state.save(&path)?;
                    emit(
                        format,
                        &json!({"written": path, "dims": state.dims(), "manifest": manifest.finish()}),
                        |o| format!("wrote dims {:?} to {}", o["dims"], o["written"]),
                    );
                }
                None => println!("{}", state.to_json()),
            }
            Ok(0)
        }

        Command::Schmidt { state, cut, renormalize } => {
            let mut manifest = RunManifest::new("schmidt", seed);
            manifest.params(json!({"cut": cut}));
            let s = load_state(&state, renormalize, &mut manifest)?;
            let cut = Bipartition::parse(&cut, s.num_parties())?;
            let spec = schmidt::schmidt_spectrum(&s, &cut)?;
            emit(
                format,
                &json!({"cut": cut.to_string(), "coeffs": spec.coeffs(), "manifest": manifest.finish()}),
                |o| format!("coeffs {}", o["coeffs"]),
            );
            Ok(0)
        }

        Command::Check { state, cut, shape, tol, renormalize } => {
            let mut manifest = RunManifest::new("check", seed);
            manifest.params(json!({"cut": cut, "shape": shape, "tol": tol}));
            let s = load_state(&state, renormalize, &mut manifest)?;
            let cut = Bipartition::parse(&cut, s.num_parties())?;
            let (d1, d2) = parse_shape(&shape)?;
            let spec = schmidt::schmidt_spectrum(&s, &cut)?;
            let verdict = decompose::is_decomposable(&spec, d1, d2, tol)?;
            let certificate = verdict.certificate.as_ref().map(|c| {
                json!({
                    "arrangement": c.arrangement.entries(),
                    "left_marginal": c.left_marginal,
                    "right_marginal": c.right_marginal,
                    "branches": c.branches,
                })
            });
            emit(
                format,
                &json!({
                    "decomposable": verdict.decomposable,
                    "spectrum": spec.coeffs(),
                    "certificate": certificate,
                    "cross_check_overlap": verdict.cross_check_overlap,
                    "manifest": manifest.finish(),
                }),
                |o| format!("decomposable: {}", o["decomposable"]),
            );
            Ok(if verdict.decomposable { 0 } else { 2 })
        }

        Command::MaxOverlap { state, cut, shape, dedupe, renormalize } => {
            let mut manifest = RunManifest::new("max-overlap", seed);
            manifest.params(json!({"cut": cut, "shape": shape, "dedupe": dedupe}));
            let s = load_state(&state, renormalize, &mut manifest)?;
            let cut = Bipartition::parse(&cut, s.num_parties())?;
            let (d1, d2) = parse_shape(&shape)?;
            let spec = schmidt::schmidt_spectrum(&s, &cut)?;
            let (value, arrangement, ansatz, path) = if dedupe {
                let (v, a, ans, n) = deduped_max_overlap(&spec, d1, d2)?;
                (v, a, ans, json!({"deduped_arrangements": n}))
            } else {
                let mo = decompose::bipartite_max_overlap(&spec, d1, d2)?;
                (
                    mo.value,
                    mo.arrangement,
                    mo.ansatz,
                    serde_json::to_value(mo.path)?,
                )
            };
            emit(
                format,
                &json!({
                    "value": value,
                    "arrangement": arrangement.entries(),
                    "alpha": ansatz.alpha,
                    "beta": ansatz.beta,
                    "path": path,
                    "manifest": manifest.finish(),
                }),
                |o| format!("max overlap {}", o["value"]),
            );
            Ok(0)
        }

        Command::Witness { xi, rho, shape } => {
            let mut manifest = RunManifest::new("witness", seed);
            manifest.params(json!({"xi": xi, "shape": shape}));
            let xi_state = match xi.as_str() {
                "xi1" => constructors::xi_states().0,
                "xi2" => constructors::xi_states().1,
                path => {
                    let p = std::path::Path::new(path);
                    manifest.digest_input(p)?;
                    PureState::load(p, false)?
                }
            };
            let (d1, d2) = parse_shape(&shape)?;
            let w = decompose::make_witness(&xi_state, d1, d2)?;
            manifest.digest_input(&rho)?;
            let density = load_density(&rho)?;
            let value = decompose::evaluate_witness(&density, &w)?;
            let violated = value < 0.0;
            emit(
                format,
                &json!({
                    "alpha_sq": w.alpha_sq,
                    "trivial": w.is_trivial(),
                    "value": value,
                    "violated": violated,
                    "manifest": manifest.finish(),
                }),
                |o| format!("witness value {} (violated: {})", o["value"], o["violated"]),
            );
            Ok(if violated { 0 } else { 2 })
        }

        Command::Table1 { source, rank } => {
            let manifest = RunManifest::new("table1", seed);
            let reference = decompose::table1_reference();
            let rows: Vec<(usize, usize, usize)> = match (source, rank) {
                (Some(src), Some(r)) => {
                    let (d1, d2) = parse_shape(&src)?;
                    vec![(d1, d2, r)]
                }
                (None, None) => reference.iter().map(|&(key, _)| key).collect(),
                _ => {
                    return Err(mlent::Error::InvalidSpec(
                        "--source and --rank go together".into(),
                    ))
                }
            };
            let mut out = Vec::new();
            for (d1, d2, r) in rows {
                let row = decompose::table1_overlap(d1, d2, r)?;
                let closed = reference
                    .iter()
                    .find(|&&(key, _)| key == (d1, d2, r))
                    .map(|&(_, v)| v);
                out.push(json!({
                    "source": format!("{d1}x{d2}"),
                    "rank": r,
                    "value": row.value,
                    "closed_form": closed,
                    "delta": closed.map(|c| (row.value - c).abs()),
                    "path": serde_json::to_value(row.path)?,
                }));
            }
            emit(
                format,
                &json!({"rows": out, "manifest": manifest.finish()}),
                |o| {
                    o["rows"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|r| format!("{} rank {}: {}", r["source"], r["rank"], r["value"]))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            Ok(0)
        }

        Command::Tableaux { shape, count_only } => {
            let manifest = RunManifest::new("tableaux", seed);
            let (d1, d2) = parse_shape(&shape)?;
            if count_only {
                emit(
                    format,
                    &json!({
                        "count": tableaux::hook_count(d1, d2).to_string(),
                        "boundary_count": tableaux::boundary_count(d1, d2).to_string(),
                        "manifest": manifest.finish(),
                    }),
                    |o| format!("{} tableaux", o["count"]),
                );
            } else {
                let all: Vec<Vec<u32>> = tableaux::enumerate_syt(d1, d2)?
                    .map(|t| t.filling().to_vec())
                    .collect();
                emit(
                    format,
                    &json!({"count": all.len(), "tableaux": all, "manifest": manifest.finish()}),
                    |o| format!("{} tableaux", o["count"]),
                );
            }
            Ok(0)
        }

        Command::Seesaw {
            state,
            factorization,
            merge,
            reference,
            restarts,
            iters,
            threshold,
            renormalize,
        } => {
            let mut manifest = RunManifest::new("seesaw", seed);
            manifest.params(json!({
                "factorization": factorization,
                "merge": merge,
                "restarts": restarts,
                "iters": iters,
                "threshold": threshold,
            }));
            let s = load_state(&state, renormalize, &mut manifest)?;
            let spec = FactorizationSpec::parse(&factorization)?;
            let mut problem = match reference {
                Some(path) => {
                    manifest.digest_input(&path)?;
                    SeesawProblem::lu_overlap(s, PureState::load(&path, renormalize)?)?
                }
                None => SeesawProblem::factorize(s, spec)?,
            };
            if let Some(merge_text) = merge {
                let n = problem.target.num_parties();
                let groups: Vec<Vec<usize>> = merge_text
                    .split('|')
                    .map(|g| {
                        g.split(',')
                            .map(|t| {
                                t.trim().parse::<usize>().map_err(|_| {
                                    mlent::Error::InvalidSpec(format!("bad merge group {g:?}"))
                                })
                            })
                            .collect::<Result<_, _>>()
                    })
                    .collect::<Result<_, _>>()?;
                let _ = n;
                problem = problem.with_merge_groups(groups)?;
            }
            let mut cfg = SeesawConfig::default()
                .with_restarts(restarts)
                .with_max_iters(iters)
                .with_seed(seed);
            cfg.success_threshold = threshold;
            let result = seesaw::seesaw(&problem, &cfg)?;
            let succeeded = result.succeeded(threshold);
            emit(
                format,
                &json!({
                    "best_overlap": result.best_overlap,
                    "best_fidelity": result.best_fidelity,
                    "succeeded": succeeded,
                    "best_restart": result.best_restart,
                    "restarts": result.restarts,
                    "certificate": succeeded.then(|| certificate_json(&result)),
                    "manifest": manifest.finish(),
                }),
                |o| {
                    format!(
                        "best overlap {} (fidelity {}), succeeded: {}",
                        o["best_overlap"], o["best_fidelity"], o["succeeded"]
                    )
                },
            );
            Ok(if succeeded { 0 } else { 2 })
        }

        Command::Classify { state, restarts, iters, renormalize } => {
            let mut manifest = RunManifest::new("classify", seed);
            manifest.params(json!({"restarts": restarts, "iters": iters}));
            let s = load_state(&state, renormalize, &mut manifest)?;
            let cfg = SeesawConfig::default()
                .with_restarts(restarts)
                .with_max_iters(iters)
                .with_seed(seed);
            let report = seesaw::classify(&s, &cfg)?;
            let cuts: Vec<_> = report
                .cuts
                .iter()
                .map(|c| {
                    json!({
                        "cut": c.cut.to_string(),
                        "decomposable": c.decomposable,
                        "certified_by": c.certified_by,
                        "exact_shape": c.exact.shape,
                        "spectrum": c.exact.spectrum.coeffs(),
                        "variational": c.variational,
                    })
                })
                .collect();
            emit(
                format,
                &json!({
                    "verdict": report.verdict.to_string(),
                    "warnings": report.warnings,
                    "full_decomposability": report.full_decomposability,
                    "certificate": report.certificate.as_ref().map(certificate_json),
                    "cuts": cuts,
                    "manifest": manifest.finish(),
                }),
                |o| format!("verdict {}", o["verdict"]),
            );
            Ok(0)
        }

        Command::Reproduce { id } => recipes::reproduce(&id, seed, format),
    }
}

fn certificate_json(result: &mlent::seesaw::SeesawResult) -> serde_json::Value {
    let factors: Vec<_> = result
        .factors
        .iter()
        .map(|f| serde_json::from_str::<serde_json::Value>(&f.to_json()).unwrap())
        .collect();
    let unitaries: Vec<_> = result
        .unitaries
        .iter()
        .map(|u| {
            let rows: Vec<Vec<[f64; 2]>> = (0..u.nrows())
                .map(|i| (0..u.ncols()).map(|j| [u[(i, j)].re, u[(i, j)].im]).collect())
                .collect();
            json!(rows)
        })
        .collect();
    json!({
        "effective_dims": result.effective_dims,
        "factors": factors,
        "unitaries": unitaries,
    })
}

/// A density matrix from a pure-state file, or from a mixture file
/// `{"dims":[...],"mixture":[{"weight":w,"amps":[[re,im],...]},...]}`.
fn load_density(path: &std::path::Path) -> Result<mlent::DensityMatrix, mlent::Error> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("mixture").is_some() {
        let dims: Vec<usize> = serde_json::from_value(value["dims"].clone())?;
        let parts: Vec<(f64, PureState)> = value["mixture"]
            .as_array()
            .ok_or_else(|| mlent::Error::InvalidSpec("mixture must be an array".into()))?
            .iter()
            .map(|part| {
                let weight = part["weight"].as_f64().ok_or_else(|| {
                    mlent::Error::InvalidSpec("mixture part needs a weight".into())
                })?;
                let amps: Vec<[f64; 2]> = serde_json::from_value(part["amps"].clone())?;
                let amps = amps
                    .iter()
                    .map(|&[re, im]| num_complex::Complex64::new(re, im))
                    .collect();
                Ok((weight, PureState::new(dims.clone(), amps, true)?))
            })
            .collect::<Result<_, mlent::Error>>()?;
        return mlent::DensityMatrix::mixture(&parts);
    }
    Ok(PureState::from_json(&text, false)?.density())
}

/// Max overlap with arrangement-matrix deduplication (useful when many
/// coefficients coincide).
fn deduped_max_overlap(
    spec: &mlent::SchmidtSpectrum,
    d1: usize,
    d2: usize,
) -> Result<(f64, mlent::ArrangementMatrix, mlent::decompose::ProductAnsatz, u64), mlent::Error> {
    use std::collections::HashSet;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut best: Option<(f64, mlent::ArrangementMatrix)> = None;
    for t in tableaux::enumerate_syt(d1, d2)? {
        let a = tableaux::arrangement_from_tableau(spec, &t)?;
        let key: Vec<u64> = a
            .entries()
            .iter()
            .map(|&x| (x / 1e-12).round() as u64)
            .collect();
        if !seen.insert(key) {
            continue;
        }
        let (v, _) = decompose::max_singular_value(&a);
        if best.as_ref().map(|(bv, _)| v > *bv).unwrap_or(true) {
            best = Some((v, a));
        }
    }
    let (_, arrangement) =
        best.ok_or_else(|| mlent::Error::InvalidSpec("no arrangements".into()))?;
    let (value, ansatz) = decompose::max_singular_value(&arrangement);
    Ok((value, arrangement, ansatz, seen.len() as u64))
}
