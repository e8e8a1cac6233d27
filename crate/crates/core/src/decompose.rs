//! Exact bipartite decomposability: maximal overlaps with the decomposable
//! set, the rank-one criterion, extremal witness states, and witness
//! evaluation on density matrices.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schmidt::{schmidt_spectrum, SchmidtSpectrum};
use crate::statevec::{Bipartition, DensityMatrix, PureState};
use crate::tableaux::{
    arrangement_from_tableau, enumerate_syt_capped, partitions_in_box, rank_one_search,
    ArrangementMatrix, RankOneCertificate, DEFAULT_CELL_CAP,
};

/// Nonnegative unit vectors (α, β) achieving `⟨β|S|α⟩ = max singval(S)`;
/// the Schmidt spectra of the two factors of the closest decomposable state.
#[derive(Debug, Clone, Serialize)]
pub struct ProductAnsatz {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// Top singular value of an arrangement with its achieving sign-fixed
/// singular-vector pair.
pub fn max_singular_value(s: &ArrangementMatrix) -> (f64, ProductAnsatz) {
    let m = s.to_matrix();
    let svd = m.clone().svd(true, true);
    let value = svd.singular_values[0];
    let u = svd.u.as_ref().expect("computed");
    let vt = svd.v_t.as_ref().expect("computed");
    let fix = |v: Vec<f64>| -> Vec<f64> {
        // top singular vectors of a nonnegative matrix can be chosen
        // entrywise nonnegative; flip the global sign and clamp roundoff
        let sum: f64 = v.iter().sum();
        let sign = if sum < 0.0 { -1.0 } else { 1.0 };
        v.into_iter().map(|x| (x * sign).max(0.0)).collect()
    };
    let alpha = fix((0..m.nrows()).map(|i| u[(i, 0)]).collect());
    let beta = fix((0..m.ncols()).map(|j| vt[(0, j)]).collect());
    (value, ProductAnsatz { alpha, beta })
}

/// Top singular value of a unit-Frobenius 2×2 matrix from its determinant:
/// `√((1 + √(1 − 4 det²))/2)`.
pub fn alpha_from_det(det: f64) -> Result<f64> {
    if det.abs() > 0.5 + 1e-12 {
        return Err(Error::DetOutOfRange(det));
    }
    let disc = (1.0 - 4.0 * det * det).max(0.0);
    Ok(((1.0 + disc.sqrt()) / 2.0).sqrt())
}

/// How a maximal-overlap scan covered the arrangement space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlapPath {
    /// Every standard tableau of the shape was enumerated.
    FullEnumeration { tableaux: u64 },
    /// The spectrum takes at most two distinct values, so distinct
    /// arrangements are Young diagrams in the box; exact at any size.
    DegenerateDedupe { matrices: u64 },
}

#[derive(Debug, Clone)]
pub struct MaxOverlap {
    pub value: f64,
    pub arrangement: ArrangementMatrix,
    pub ansatz: ProductAnsatz,
    pub path: OverlapPath,
}

/// Exact maximal overlap between a state with this spectrum and the set of
/// d₁×d₂-decomposable pure states: the largest top singular value over all
/// admissible arrangements.
///
/// Shapes beyond the enumeration cap are only handled when the padded
/// spectrum takes at most two distinct values (then deduplicated
/// enumeration over box partitions is exact); otherwise the variational
/// engine must be used instead.
pub fn bipartite_max_overlap(spec: &SchmidtSpectrum, d1: usize, d2: usize) -> Result<MaxOverlap> {
    bipartite_max_overlap_capped(spec, d1, d2, DEFAULT_CELL_CAP)
}

pub fn bipartite_max_overlap_capped(
    spec: &SchmidtSpectrum,
    d1: usize,
    d2: usize,
    cap: usize,
) -> Result<MaxOverlap> {
    let cells = d1 * d2;
    let padded = spec.padded(cells, crate::RANK_ONE_TOL)?;
    if cells <= cap {
        let mut best: Option<(f64, ArrangementMatrix)> = None;
        let mut count = 0u64;
        for t in enumerate_syt_capped(d1, d2, cap)? {
            let a = arrangement_from_tableau(spec, &t)?;
            let (v, _) = max_singular_value(&a);
            count += 1;
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, a));
            }
        }
        let (_, arrangement) = best.expect("at least one tableau");
        let (value, ansatz) = max_singular_value(&arrangement);
        return Ok(MaxOverlap {
            value,
            arrangement,
            ansatz,
            path: OverlapPath::FullEnumeration { tableaux: count },
        });
    }
    if let Some((hi, lo, r)) = two_valued(&padded) {
        let mut best: Option<(f64, ArrangementMatrix)> = None;
        let mut count = 0u64;
        for parts in partitions_in_box(r, d1, d2) {
            let mut entries = vec![lo; cells];
            for (i, &len) in parts.iter().enumerate() {
                for j in 0..len {
                    entries[i * d2 + j] = hi;
                }
            }
            let a = ArrangementMatrix::new(d1, d2, entries)?;
            let (v, _) = max_singular_value(&a);
            count += 1;
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, a));
            }
        }
        let (_, arrangement) = best.ok_or(Error::InvalidRank { rank: r, d1, d2 })?;
        let (value, ansatz) = max_singular_value(&arrangement);
        return Ok(MaxOverlap {
            value,
            arrangement,
            ansatz,
            path: OverlapPath::DegenerateDedupe { matrices: count },
        });
    }
    Err(Error::CapExceeded { d1, d2, cells, cap })
}

/// Splits a padded spectrum into (high, low, count_high) when it takes at
/// most two distinct values within 1e-12.
fn two_valued(padded: &[f64]) -> Option<(f64, f64, usize)> {
    const EPS: f64 = 1e-12;
    let hi = padded[0];
    let lo = *padded.last().expect("nonempty");
    if (hi - lo).abs() <= EPS {
        return Some((hi, lo, padded.len()));
    }
    let mut count_hi = 0usize;
    for &v in padded {
        if (v - hi).abs() <= EPS {
            count_hi += 1;
        } else if (v - lo).abs() > EPS {
            return None;
        }
    }
    Some((hi, lo, count_hi))
}

/// Verdict of the exact decomposability test at one shape.
#[derive(Debug, Clone)]
pub struct DecompVerdict {
    pub decomposable: bool,
    pub certificate: Option<RankOneCertificate>,
    /// Exact maximal overlap, recomputed as a cross-check when a rank-one
    /// arrangement was found (must be ≥ 1 − tol) and the shape allows it.
    pub cross_check_overlap: Option<f64>,
}

/// A state with this spectrum is d₁×d₂-decomposable iff some admissible
/// arrangement has rank one.
pub fn is_decomposable(
    spec: &SchmidtSpectrum,
    d1: usize,
    d2: usize,
    tol: f64,
) -> Result<DecompVerdict> {
    let certificate = rank_one_search(spec, d1, d2, tol)?;
    let decomposable = certificate.is_some();
    let mut cross_check_overlap = None;
    if decomposable {
        if let Ok(mo) = bipartite_max_overlap(spec, d1, d2) {
            if mo.value < 1.0 - tol {
                return Err(Error::InvalidSpec(format!(
                    "rank-one arrangement found but max overlap is {}; tolerance inconsistency",
                    mo.value
                )));
            }
            cross_check_overlap = Some(mo.value);
        }
    }
    Ok(DecompVerdict {
        decomposable,
        certificate,
        cross_check_overlap,
    })
}

/// One row of the maximally-entangled overlap table.
#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub d1: usize,
    pub d2: usize,
    pub rank: usize,
    pub value: f64,
    pub path: OverlapPath,
}

/// Maximal overlap of the rank-r maximally entangled spectrum (r entries
/// 1/√r) with the d₁×d₂-decomposable states.
pub fn table1_overlap(d1: usize, d2: usize, rank: usize) -> Result<Table1Row> {
    if rank == 0 || rank > d1 * d2 {
        return Err(Error::InvalidRank { rank, d1, d2 });
    }
    let mut coeffs = vec![1.0 / (rank as f64).sqrt(); rank];
    coeffs.resize(d1 * d2, 0.0);
    let spec = SchmidtSpectrum::new(coeffs)?;
    let mo = bipartite_max_overlap(&spec, d1, d2)?;
    Ok(Table1Row {
        d1,
        d2,
        rank,
        value: mo.value,
        path: mo.path,
    })
}

/// The analytically known overlaps for low-rank maximally entangled states;
/// `((d1, d2, rank), overlap)` with the overlap in closed form.
pub fn table1_reference() -> Vec<((usize, usize, usize), f64)> {
    let v = |r: f64, s: f64| ((r + s.sqrt()) / (2.0 * r)).sqrt();
    vec![
        ((2, 2, 3), v(3.0, 5.0)),
        ((2, 3, 5), v(5.0, 17.0)),
        ((2, 4, 5), v(5.0, 17.0)),
        ((2, 4, 7), v(7.0, 37.0)),
        ((3, 3, 5), v(5.0, 17.0)),
        ((3, 3, 7), v(7.0, 33.0)),
        ((3, 3, 8), v(8.0, 48.0)),
        ((2, 5, 7), v(7.0, 37.0)),
        ((2, 5, 9), v(9.0, 65.0)),
        ((2, 6, 7), v(7.0, 37.0)),
        ((2, 6, 9), v(9.0, 65.0)),
        ((7, 7, 11), v(11.0, 101.0)),
    ]
}

/// Sign constraint for the extremal witness search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DetSign {
    Negative,
    Positive,
}

#[derive(Debug, Clone)]
pub struct ExtremalWitness {
    pub spectrum: SchmidtSpectrum,
    /// Minimal maximal overlap with the decomposable set over the ordered
    /// unit spectra with the requested determinant sign.
    pub value: f64,
}

/// Minimizes `max singval(S)` over ordered unit 2×2 spectra with the given
/// determinant sign: 200 random starts with pairwise-rotation coordinate
/// descent, converging when the value improves by less than 1e-10.
pub fn extremal_witness_search(
    d1: usize,
    d2: usize,
    sign: DetSign,
    seed: u64,
) -> Result<ExtremalWitness> {
    if (d1, d2) != (2, 2) {
        return Err(Error::Unsupported("2x2 arrangements"));
    }
    let objective = |s: &[f64; 4]| -> Option<f64> {
        let det = s[0] * s[3] - s[1] * s[2];
        let ok = match sign {
            DetSign::Negative => det < 0.0,
            DetSign::Positive => det > 0.0,
        };
        if !ok {
            return None;
        }
        Some(alpha_from_det(det).expect("unit spectrum"))
    };
    let canon = |mut s: [f64; 4]| -> [f64; 4] {
        for v in &mut s {
            *v = v.abs();
        }
        s.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        let norm = s.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut s {
            *v /= norm;
        }
        s
    };
    let mut best: Option<([f64; 4], f64)> = None;
    for start in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (start.wrapping_mul(0x9e3779b97f4a7c15)));
        let mut s = canon([rng.gen(), rng.gen(), rng.gen(), rng.gen()]);
        let mut cur = objective(&s);
        let mut step = 0.4f64;
        while step > 1e-9 {
            let mut improved = false;
            for i in 0..4 {
                for j in 0..4 {
                    if i == j {
                        continue;
                    }
                    for dir in [1.0, -1.0] {
                        let theta = dir * step;
                        let mut t = s;
                        let (ci, sj) = (theta.cos(), theta.sin());
                        t[i] = s[i] * ci - s[j] * sj;
                        t[j] = s[i] * sj + s[j] * ci;
                        let t = canon(t);
                        let val = objective(&t);
                        let better = match (cur, val) {
                            (None, Some(_)) => true,
                            (Some(c), Some(v)) => v < c - 1e-10,
                            _ => false,
                        };
                        if better {
                            s = t;
                            cur = val;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        // the rotations stall once improvements drop below the threshold;
        // polish along the projected determinant gradient, the coordinated
        // direction the pairwise moves cannot take
        if cur.is_some() {
            let want = match sign {
                DetSign::Negative => -1.0,
                DetSign::Positive => 1.0,
            };
            let mut step = 1e-2;
            while step > 1e-13 {
                let det = s[0] * s[3] - s[1] * s[2];
                let mut g = [want * s[3], -want * s[2], -want * s[1], want * s[0]];
                let radial: f64 = g.iter().zip(&s).map(|(gi, si)| gi * si).sum();
                for (gi, si) in g.iter_mut().zip(&s) {
                    *gi -= radial * si;
                }
                let mut t = s;
                for (ti, gi) in t.iter_mut().zip(&g) {
                    *ti += step * gi;
                }
                let t = canon(t);
                let new_det = t[0] * t[3] - t[1] * t[2];
                if new_det * want > det * want && new_det * want > 0.0 {
                    s = t;
                } else {
                    step *= 0.5;
                }
            }
            cur = objective(&s);
        }
        if let Some(v) = cur {
            if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
                best = Some((s, v));
            }
        }
    }
    let (s, value) = best.ok_or_else(|| {
        Error::InvalidSpec("no feasible spectrum found for the requested sign".into())
    })?;
    Ok(ExtremalWitness {
        spectrum: SchmidtSpectrum::new(s.to_vec())?,
        value,
    })
}

/// Projector witness `α²·1 − |ξ⟩⟨ξ|`: nonnegative on every
/// d₁×d₂-decomposable state, negative expectation certifies entanglement
/// beyond that set.
#[derive(Debug, Clone)]
pub struct WitnessSpec {
    pub xi: PureState,
    /// Maximal squared overlap of `xi` with the decomposable set.
    pub alpha_sq: f64,
    pub shape: (usize, usize),
}

impl WitnessSpec {
    /// A witness whose constant reaches 1 detects nothing.
    pub fn is_trivial(&self) -> bool {
        self.alpha_sq >= 1.0 - 1e-9
    }
}

/// Builds the projector witness for a bipartite `xi`.
pub fn make_witness(xi: &PureState, d1: usize, d2: usize) -> Result<WitnessSpec> {
    if xi.num_parties() != 2 {
        return Err(Error::InvalidSpec("witness state must be bipartite".into()));
    }
    let cut = Bipartition::new(&[0], 2)?;
    let spec = schmidt_spectrum(xi, &cut)?;
    let mo = bipartite_max_overlap(&spec, d1, d2)?;
    Ok(WitnessSpec {
        xi: xi.clone(),
        alpha_sq: mo.value * mo.value,
        shape: (d1, d2),
    })
}

/// `α²·tr(ρ) − ⟨ξ|ρ|ξ⟩`; negative values certify entanglement outside the
/// d₁×d₂-decomposable set.
pub fn evaluate_witness(rho: &DensityMatrix, w: &WitnessSpec) -> Result<f64> {
    Ok(w.alpha_sq * rho.trace() - rho.expectation(&w.xi)?)
}

/// Divisor splits (a, b) of n with 2 ≤ a ≤ b and a·b = n.
pub fn divisor_splits(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut a = 2;
    while a * a <= n {
        if n % a == 0 {
            out.push((a, n / a));
        }
        a += 1;
    }
    out
}

/// Arrangement shapes to test for a cut with side dimensions (dl, dr): for
/// every pair of divisor splits dl = a·a′, dr = b·b′ the factors have
/// Schmidt ranks at most (min(a,b), min(a′,b′)); both pairings are tried
/// and shapes are canonicalized with d₁ ≤ d₂.
pub fn cut_shape_candidates(dl: usize, dr: usize) -> Vec<(usize, usize)> {
    let mut shapes = Vec::new();
    for &(a, ap) in &divisor_splits(dl) {
        for &(b, bp) in &divisor_splits(dr) {
            for (x, y) in [
                (a.min(b), ap.min(bp)),
                (a.min(bp), ap.min(b)),
                (ap.min(b), a.min(bp)),
                (ap.min(bp), a.min(b)),
            ] {
                shapes.push((x.min(y), x.max(y)));
            }
        }
    }
    shapes.sort_unstable();
    shapes.dedup();
    shapes
}

/// Exact decomposability of `state` across `cut`: the Schmidt spectrum must
/// admit a rank-one arrangement at one of the candidate shapes.
#[derive(Debug, Clone)]
pub struct CutCheck {
    pub cut: Bipartition,
    pub spectrum: SchmidtSpectrum,
    pub shapes_tried: Vec<(usize, usize)>,
    pub decomposable: bool,
    pub shape: Option<(usize, usize)>,
    pub certificate: Option<RankOneCertificate>,
}

pub fn decomposable_across_cut(
    state: &PureState,
    cut: &Bipartition,
    tol: f64,
) -> Result<CutCheck> {
    let spectrum = schmidt_spectrum(state, cut)?;
    let (dl, dr) = cut.side_dims(state.dims());
    let shapes = cut_shape_candidates(dl, dr);
    for &(d1, d2) in &shapes {
        if let Some(cert) = rank_one_search(&spectrum, d1, d2, tol)? {
            return Ok(CutCheck {
                cut: cut.clone(),
                spectrum,
                shapes_tried: shapes,
                decomposable: true,
                shape: Some((d1, d2)),
                certificate: Some(cert),
            });
        }
    }
    Ok(CutCheck {
        cut: cut.clone(),
        spectrum,
        shapes_tried: shapes,
        decomposable: false,
        shape: None,
        certificate: None,
    })
}

/// Identity/16 on two ququarts, handy as an obviously decomposable mixed
/// state in tests and the demo.
pub fn maximally_mixed(dims: &[usize]) -> Result<DensityMatrix> {
    let d: usize = dims.iter().product();
    let mat = DMatrix::from_fn(d, d, |i, j| {
        if i == j {
            num_complex::Complex64::new(1.0 / d as f64, 0.0)
        } else {
            num_complex::Complex64::new(0.0, 0.0)
        }
    });
    DensityMatrix::new(crate::statevec::Operator::new(dims.to_vec(), mat)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;
    use approx::assert_relative_eq;

    fn spec(v: &[f64]) -> SchmidtSpectrum {
        SchmidtSpectrum::from_unsorted(v.to_vec()).unwrap()
    }

    const ALPHA_NEG: f64 = 0.934_172_358_962_715_8; // sqrt((3+sqrt5)/6)
    const ALPHA_POS: f64 = 0.985_598_559_653_488_7; // sqrt((3+2 sqrt2)/6)

    #[test]
    fn max_singular_value_flat_and_xi() {
        let flat = ArrangementMatrix::new(2, 2, vec![0.5; 4]).unwrap();
        let (v, ansatz) = max_singular_value(&flat);
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
        let w = std::f64::consts::FRAC_1_SQRT_2;
        for x in ansatz.alpha.iter().chain(&ansatz.beta) {
            assert_relative_eq!(*x, w, epsilon = 1e-10);
        }

        let a = 1.0 / 3f64.sqrt();
        let xi1 = ArrangementMatrix::new(2, 2, vec![a, a, a, 0.0]).unwrap();
        assert_relative_eq!(max_singular_value(&xi1).0, ALPHA_NEG, epsilon = 1e-12);

        let b = 0.75f64.sqrt();
        let c = 1.0 / (2.0 * 3f64.sqrt());
        let xi2 = ArrangementMatrix::new(2, 2, vec![b, c, c, c]).unwrap();
        assert_relative_eq!(max_singular_value(&xi2).0, ALPHA_POS, epsilon = 1e-12);
    }

    #[test]
    fn alpha_from_det_reference_points() {
        assert_relative_eq!(alpha_from_det(0.0).unwrap(), 1.0);
        assert_relative_eq!(
            alpha_from_det(0.5).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            alpha_from_det(-0.5).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            alpha_from_det(-1.0 / 3.0).unwrap(),
            ALPHA_NEG,
            epsilon = 1e-12
        );
        assert!(alpha_from_det(0.51).is_err());
    }

    #[test]
    fn alpha_from_det_matches_svd_on_random_arrangements() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let s = spec(&[rng.gen(), rng.gen(), rng.gen(), rng.gen()]);
            let t = crate::tableaux::YoungTableau::new(2, 2, vec![1, 2, 3, 4]).unwrap();
            let a = arrangement_from_tableau(&s, &t).unwrap();
            let (v, _) = max_singular_value(&a);
            let want = alpha_from_det(a.det2().unwrap()).unwrap();
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn row_and_column_swaps_preserve_singular_values() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let v: Vec<f64> = (0..4).map(|_| rng.gen()).collect();
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let e: Vec<f64> = v.iter().map(|x| x / norm).collect();
            let m = DMatrix::from_row_slice(2, 2, &e);
            let swapped_rows = DMatrix::from_row_slice(2, 2, &[e[2], e[3], e[0], e[1]]);
            let swapped_cols = DMatrix::from_row_slice(2, 2, &[e[1], e[0], e[3], e[2]]);
            let top = |m: DMatrix<f64>| m.svd(false, false).singular_values[0];
            let t = top(m);
            assert!((top(swapped_rows) - t).abs() < 1e-12);
            assert!((top(swapped_cols) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn max_overlap_examples() {
        let flat = spec(&[0.5, 0.5, 0.5, 0.5]);
        let mo = bipartite_max_overlap(&flat, 2, 2).unwrap();
        assert_relative_eq!(mo.value, 1.0, epsilon = 1e-12);
        assert!(matches!(
            mo.path,
            OverlapPath::FullEnumeration { tableaux: 2 }
        ));

        let r5 = table1_overlap(2, 3, 5).unwrap();
        assert_relative_eq!(
            r5.value,
            ((5.0 + 17f64.sqrt()) / 10.0).sqrt(),
            epsilon = 1e-12
        );

        let a = 1.0 / 3f64.sqrt();
        let xi1 = spec(&[a, a, a, 0.0]);
        let mo = bipartite_max_overlap(&xi1, 2, 2).unwrap();
        assert_relative_eq!(mo.value, ALPHA_NEG, epsilon = 1e-12);
    }

    #[test]
    fn max_overlap_never_below_largest_coefficient() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let s = spec(&(0..6).map(|_| rng.gen::<f64>()).collect::<Vec<_>>());
            let mo = bipartite_max_overlap(&s, 2, 3).unwrap();
            assert!(mo.value >= s.coeffs()[0] - 1e-12);
        }
    }

    #[test]
    fn degenerate_path_matches_enumeration() {
        for (d1, d2, r) in [(2usize, 3usize, 5usize), (3, 3, 7), (2, 4, 5)] {
            let mut coeffs = vec![1.0 / (r as f64).sqrt(); r];
            coeffs.resize(d1 * d2, 0.0);
            let s = SchmidtSpectrum::new(coeffs).unwrap();
            let full = bipartite_max_overlap_capped(&s, d1, d2, 16).unwrap();
            let dedup = bipartite_max_overlap_capped(&s, d1, d2, 1).unwrap();
            assert!(matches!(dedup.path, OverlapPath::DegenerateDedupe { .. }));
            assert!((full.value - dedup.value).abs() < 1e-12);
        }
    }

    #[test]
    fn seven_by_seven_row_is_exact_via_dedupe() {
        let row = table1_overlap(7, 7, 11).unwrap();
        assert!(matches!(row.path, OverlapPath::DegenerateDedupe { .. }));
        assert_relative_eq!(
            row.value,
            ((11.0 + 101f64.sqrt()) / 22.0).sqrt(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn decomposability_verdicts() {
        let flat = spec(&[0.5, 0.5, 0.5, 0.5]);
        assert!(is_decomposable(&flat, 2, 2, 1e-9).unwrap().decomposable);

        let a = 1.0 / 3f64.sqrt();
        assert!(!is_decomposable(&spec(&[a, a, a, 0.0]), 2, 2, 1e-9)
            .unwrap()
            .decomposable);

        let skew = spec(&[0.9f64.sqrt(), 0.1f64.sqrt(), 0.0, 0.0]);
        let v = is_decomposable(&skew, 2, 2, 1e-9).unwrap();
        assert!(v.decomposable);
        assert!(v.cross_check_overlap.unwrap() >= 1.0 - 1e-9);
    }

    #[test]
    fn cap_exceeded_without_degeneracy() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let s = spec(&(0..20).map(|_| rng.gen::<f64>()).collect::<Vec<_>>());
        assert!(matches!(
            bipartite_max_overlap(&s, 4, 5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn extremal_search_quick() {
        // few starts; full 200-start runs live in the acceptance suite
        let neg = extremal_witness_search(2, 2, DetSign::Negative, 7).unwrap();
        assert!((neg.value - ALPHA_NEG).abs() < 1e-6, "got {}", neg.value);
        let pos = extremal_witness_search(2, 2, DetSign::Positive, 7).unwrap();
        assert!((pos.value - ALPHA_POS).abs() < 1e-6, "got {}", pos.value);
        assert!(extremal_witness_search(2, 3, DetSign::Negative, 7).is_err());
    }

    #[test]
    fn witness_constants_and_evaluation() {
        let (xi1, xi2) = constructors::xi_states();
        let w1 = make_witness(&xi1, 2, 2).unwrap();
        assert_relative_eq!(w1.alpha_sq, (3.0 + 5f64.sqrt()) / 6.0, epsilon = 1e-12);
        assert!(!w1.is_trivial());
        let w2 = make_witness(&xi2, 2, 2).unwrap();
        assert_relative_eq!(
            w2.alpha_sq,
            (3.0 + 2.0 * 2f64.sqrt()) / 6.0,
            epsilon = 1e-12
        );

        let psi4 = constructors::maximally_entangled(4).unwrap();
        let w4 = make_witness(&psi4, 2, 2).unwrap();
        assert!(w4.is_trivial());

        // on xi1 itself: alpha^2 - 1
        let val = evaluate_witness(&xi1.density(), &w1).unwrap();
        assert_relative_eq!(val, (3.0 + 5f64.sqrt()) / 6.0 - 1.0, epsilon = 1e-12);
        // on psi4: alpha^2 - 3/4
        let val = evaluate_witness(&psi4.density(), &w1).unwrap();
        assert_relative_eq!(val, (3.0 + 5f64.sqrt()) / 6.0 - 0.75, epsilon = 1e-12);
        // on the maximally mixed state: positive
        let mixed = maximally_mixed(&[4, 4]).unwrap();
        let val = evaluate_witness(&mixed, &w1).unwrap();
        assert!(val > 0.0);
        assert_relative_eq!(
            val,
            (3.0 + 5f64.sqrt()) / 6.0 - 1.0 / 16.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn witness_positive_on_sampled_decomposable_states() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let (xi1, _) = constructors::xi_states();
        let w = make_witness(&xi1, 2, 2).unwrap();
        for _ in 0..200 {
            let pair = |rng: &mut rand_chacha::ChaCha8Rng| {
                let u = crate::seesaw::haar_random_unitary(4, rng);
                let col: Vec<_> = (0..4).map(|i| u[(i, 0)]).collect();
                PureState::new(vec![2, 2], col, true).unwrap()
            };
            // random product of two two-qubit states, regrouped to ququarts
            let p = pair(&mut rng).tensor(&pair(&mut rng));
            let q = p.permute_parties(&[0, 2, 1, 3]).unwrap();
            let m = q
                .merge(&crate::statevec::FactorizationSpec::uniform(2, &[2, 2]).unwrap())
                .unwrap();
            let val = evaluate_witness(&m.density(), &w).unwrap();
            assert!(val >= -1e-10, "witness negative on decomposable state: {val}");
        }
    }

    #[test]
    fn shape_candidates_for_cuts() {
        // 4 = 2*2 on one side, 64 on the other
        let shapes = cut_shape_candidates(4, 64);
        assert!(shapes.contains(&(2, 2)));
        // prime side has no candidates
        assert!(cut_shape_candidates(3, 64).is_empty());
    }
}
