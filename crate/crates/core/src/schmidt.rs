//! Bipartite structure: coefficient matrices, Schmidt spectra, and the exact
//! local-unitary overlap bound.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevec::{Bipartition, PureState};

/// Amplitudes of a state reshaped across a bipartition: rows are indexed by
/// the left side (ascending party order), columns by the right side.
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    pub matrix: DMatrix<Complex64>,
    pub cut: Bipartition,
}

/// Reshapes the amplitude vector into the coefficient matrix of `cut`.
pub fn coefficient_matrix(state: &PureState, cut: &Bipartition) -> Result<CoefficientMatrix> {
    if cut.num_parties() != state.num_parties() {
        return Err(Error::InvalidCut(format!(
            "cut covers {} parties, state has {}",
            cut.num_parties(),
            state.num_parties()
        )));
    }
    let dims = state.dims();
    let (dl, dr) = cut.side_dims(dims);
    let order: Vec<usize> = cut.left().iter().chain(cut.right()).copied().collect();
    let reordered = state.permute_parties(&order)?;
    let mut matrix = DMatrix::from_element(dl, dr, Complex64::new(0.0, 0.0));
    for (idx, &a) in reordered.amps().iter().enumerate() {
        matrix[(idx / dr, idx % dr)] = a;
    }
    Ok(CoefficientMatrix {
        matrix,
        cut: cut.clone(),
    })
}

/// Ordered nonnegative Schmidt coefficients, zero-padded to the smaller side
/// dimension; squares sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    coeffs: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Validates ordering, nonnegativity, and unit square sum (1e-10).
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|&c| c < 0.0 || !c.is_finite()) {
            return Err(Error::InvalidSpec(
                "coefficients must be nonnegative and finite".into(),
            ));
        }
        if coeffs.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec("coefficients must be nonincreasing".into()));
        }
        let sq: f64 = coeffs.iter().map(|c| c * c).sum();
        if (sq - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidSpec(format!(
                "squared coefficients sum to {sq}, expected 1"
            )));
        }
        Ok(Self { coeffs })
    }

    /// Sorts and renormalizes arbitrary nonnegative values.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidSpec("negative coefficient".into()));
        }
        let norm: f64 = values.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 0.0 {
            return Err(Error::ZeroVector);
        }
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        for v in &mut values {
            *v /= norm;
        }
        Ok(Self { coeffs: values })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of coefficients above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.coeffs.iter().filter(|&&c| c > tol).count()
    }

    /// Zero-pads (or zero-truncates) to exactly `cells` entries. Fails if a
    /// coefficient above `tol` would be dropped.
    pub fn padded(&self, cells: usize, tol: f64) -> Result<Vec<f64>> {
        let mut out = self.coeffs.clone();
        if out.len() > cells {
            if let Some(&big) = out[cells..].iter().find(|&&c| c > tol) {
                return Err(Error::PadTruncation {
                    len: out.len(),
                    cells,
                    coeff: big,
                });
            }
            out.truncate(cells);
        } else {
            out.resize(cells, 0.0);
        }
        Ok(out)
    }
}

/// Schmidt coefficients of `state` across `cut`: singular values of the
/// coefficient matrix, sorted descending, zero-padded to min(D_left, D_right).
pub fn schmidt_spectrum(state: &PureState, cut: &Bipartition) -> Result<SchmidtSpectrum> {
    let cm = coefficient_matrix(state, cut)?;
    let min_side = cm.matrix.nrows().min(cm.matrix.ncols());
    let svd = cm.matrix.svd(false, false);
    let mut coeffs: Vec<f64> = svd.singular_values.iter().cloned().collect();
    coeffs.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    coeffs.resize(min_side, 0.0);
    // unit Frobenius norm of the coefficient matrix makes these valid already;
    // renormalize to absorb SVD roundoff
    SchmidtSpectrum::from_unsorted(coeffs)
}

/// Exact maximal overlap `max_{U_A,U_B} |⟨ψ|U_A⊗U_B|φ⟩| = Σ ηᵢσᵢ` between
/// bipartite states with spectra `a` and `b`; the shorter spectrum is
/// zero-padded.
pub fn lu_overlap_bound(a: &SchmidtSpectrum, b: &SchmidtSpectrum) -> f64 {
    a.coeffs
        .iter()
        .zip(b.coeffs.iter())
        .map(|(x, y)| x * y)
        .sum()
}
