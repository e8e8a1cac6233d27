//! Interactive browser demo over the core library. Three operations are
//! exposed, all returning JSON strings the page renders onto canvases:
//! a 2×2 spectrum explorer, the overlap table for rank-limited maximally
//! entangled spectra, and small in-browser seesaw runs with their overlap
//! traces.
//!
//! Build with `wasm-pack build crates/wasm --target web` (see the README);
//! the exported functions also compile natively so the JSON layer is
//! testable with plain `cargo test`.

use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

use mlent::constructors;
use mlent::decompose;
use mlent::schmidt::SchmidtSpectrum;
use mlent::seesaw::{seesaw, SeesawConfig, SeesawProblem};
use mlent::statevec::FactorizationSpec;
use mlent::tableaux;

#[wasm_bindgen]
pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Normalizes four slider values into an ordered spectrum and reports its
/// 2×2 decomposability data.
#[wasm_bindgen]
pub fn spectrum_report(s0: f64, s1: f64, s2: f64, s3: f64) -> String {
    spectrum_report_impl(s0, s1, s2, s3).unwrap_or_else(error_json)
}

fn spectrum_report_impl(s0: f64, s1: f64, s2: f64, s3: f64) -> Result<String, mlent::Error> {
    let spec = SchmidtSpectrum::from_unsorted(vec![s0.abs(), s1.abs(), s2.abs(), s3.abs()])?;
    let c = spec.coeffs();
    let det = c[0] * c[3] - c[1] * c[2];
    let alpha = decompose::alpha_from_det(det)?;
    let mo = decompose::bipartite_max_overlap(&spec, 2, 2)?;
    let verdict = decompose::is_decomposable(&spec, 2, 2, 1e-9)?;
    Ok(json!({
        "spectrum": c,
        "det": det,
        "alpha": alpha,
        "max_overlap": mo.value,
        "alpha_sq": mo.value * mo.value,
        "decomposable": verdict.decomposable,
        "arrangement": mo.arrangement.entries(),
        "ansatz": {"alpha": mo.ansatz.alpha, "beta": mo.ansatz.beta},
    })
    .to_string())
}

/// The overlap-vs-determinant boundary curve α(det), sampled for plotting.
#[wasm_bindgen]
pub fn alpha_curve(samples: usize) -> String {
    let n = samples.clamp(2, 4096);
    let pts: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let det = -0.5 + i as f64 / (n - 1) as f64;
            [det, decompose::alpha_from_det(det).unwrap_or(f64::NAN)]
        })
        .collect();
    json!({ "points": pts }).to_string()
}

/// All distinct arrangements of the rank-r maximally entangled spectrum in
/// a d₁×d₂ box, with their top singular values.
#[wasm_bindgen]
pub fn table_report(d1: usize, d2: usize, rank: usize) -> String {
    table_report_impl(d1, d2, rank).unwrap_or_else(error_json)
}

fn table_report_impl(d1: usize, d2: usize, rank: usize) -> Result<String, mlent::Error> {
    if rank == 0 || rank > d1 * d2 || d1 * d2 > 64 {
        return Err(mlent::Error::InvalidRank { rank, d1, d2 });
    }
    let a = 1.0 / (rank as f64).sqrt();
    let mut shapes = Vec::new();
    let mut best = -1.0f64;
    for parts in tableaux::partitions_in_box(rank, d1, d2) {
        let mut entries = vec![0.0; d1 * d2];
        for (i, &len) in parts.iter().enumerate() {
            for j in 0..len {
                entries[i * d2 + j] = a;
            }
        }
        let arrangement = tableaux::ArrangementMatrix::new(d1, d2, entries.clone())?;
        let (value, _) = decompose::max_singular_value(&arrangement);
        best = best.max(value);
        shapes.push(json!({"partition": parts, "value": value, "entries": entries}));
    }
    shapes.sort_by(|x, y| {
        y["value"]
            .as_f64()
            .unwrap()
            .partial_cmp(&x["value"].as_f64().unwrap())
            .unwrap()
    });
    let tableau_count = tableaux::hook_count(d1, d2).to_string();
    Ok(json!({
        "d1": d1, "d2": d2, "rank": rank,
        "coefficient": a,
        "max_overlap": best,
        "decomposable": best >= 1.0 - 1e-9,
        "arrangements": shapes,
        "tableau_count": tableau_count,
    })
    .to_string())
}

/// A small seesaw run on a named target; returns the per-sweep overlap
/// trace of the best restart for plotting.
#[wasm_bindgen]
pub fn seesaw_demo(name: &str, restarts: usize, max_iters: usize, seed: u64) -> String {
    seesaw_demo_impl(name, restarts, max_iters, seed).unwrap_or_else(error_json)
}

fn seesaw_demo_impl(
    name: &str,
    restarts: usize,
    max_iters: usize,
    seed: u64,
) -> Result<String, mlent::Error> {
    let (target, factors, description) = match name {
        "psi4" => (
            constructors::maximally_entangled(4)?,
            FactorizationSpec::uniform(2, &[2, 2])?,
            "maximally entangled ququart pair as two qubit pairs",
        ),
        "ghz6" => (
            constructors::ghz(3, 6)?,
            FactorizationSpec::uniform(3, &[2, 3])?,
            "three-party six-level GHZ as qubit x qutrit GHZ factors",
        ),
        "chain" => (
            constructors::ququart_chain(),
            FactorizationSpec::uniform(4, &[2, 2])?,
            "four-ququart chain graph state as two qubit layers",
        ),
        "example3" => (
            constructors::example3_state(),
            FactorizationSpec::uniform(3, &[2, 2])?,
            "three-ququart hypergraph state as two qubit layers",
        ),
        "xi1" => (
            constructors::xi_states().0,
            FactorizationSpec::uniform(2, &[2, 2])?,
            "rank-three witness extremizer as two qubit pairs",
        ),
        other => {
            return Err(mlent::Error::InvalidSpec(format!(
                "unknown demo target {other:?}"
            )))
        }
    };
    let problem = SeesawProblem::factorize(target, factors)?;
    let cfg = SeesawConfig {
        restarts: restarts.clamp(1, 64),
        max_iters: max_iters.clamp(10, 2000),
        rng_seed: seed,
        ..SeesawConfig::default()
    };
    let result = seesaw(&problem, &cfg)?;
    let per_restart: Vec<_> = result
        .restarts
        .iter()
        .map(|r| json!({"overlap": r.overlap, "iterations": r.iterations, "converged": r.converged}))
        .collect();
    Ok(json!({
        "target": name,
        "description": description,
        "best_overlap": result.best_overlap,
        "best_fidelity": result.best_fidelity,
        "succeeded": result.succeeded(1.0 - 1e-6),
        "history": result.history,
        "restarts": per_restart,
    })
    .to_string())
}

fn error_json(e: mlent::Error) -> String {
    json!({ "error": e.to_string() }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_report_flat_is_decomposable() {
        let out: serde_json::Value =
            serde_json::from_str(&spectrum_report(0.5, 0.5, 0.5, 0.5)).unwrap();
        assert_eq!(out["decomposable"], true);
        assert!((out["max_overlap"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn spectrum_report_rank3_alpha() {
        let out: serde_json::Value =
            serde_json::from_str(&spectrum_report(1.0, 1.0, 1.0, 0.0)).unwrap();
        assert_eq!(out["decomposable"], false);
        let want = ((3.0 + 5f64.sqrt()) / 6.0).sqrt();
        assert!((out["max_overlap"].as_f64().unwrap() - want).abs() < 1e-9);
        assert!((out["det"].as_f64().unwrap() + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn table_report_matches_reference_rows() {
        for ((d1, d2, rank), closed) in mlent::decompose::table1_reference() {
            let out: serde_json::Value =
                serde_json::from_str(&table_report(d1, d2, rank)).unwrap();
            let got = out["max_overlap"].as_f64().unwrap();
            assert!((got - closed).abs() < 1e-9, "{d1}x{d2} r{rank}");
        }
    }

    #[test]
    fn alpha_curve_endpoints() {
        let out: serde_json::Value = serde_json::from_str(&alpha_curve(11)).unwrap();
        let pts = out["points"].as_array().unwrap();
        assert_eq!(pts.len(), 11);
        let mid = &pts[5];
        assert!((mid[1].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seesaw_demo_psi4_succeeds() {
        let out: serde_json::Value =
            serde_json::from_str(&seesaw_demo("psi4", 4, 200, 7)).unwrap();
        assert_eq!(out["succeeded"], true);
        assert!(!out["history"].as_array().unwrap().is_empty());
    }

    #[test]
    fn unknown_target_reports_error() {
        let out: serde_json::Value = serde_json::from_str(&seesaw_demo("nope", 1, 10, 0)).unwrap();
        assert!(out["error"].is_string());
    }
}
