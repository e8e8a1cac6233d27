//! Dense multipartite pure states and operators.
//!
//! Amplitudes are indexed mixed-radix with party 0 most significant: for
//! dims `[d0, d1, ...]` the basis label `|g0 g1 ...⟩` sits at flat index
//! `g0·d1·d2·… + g1·d2·… + …`. Regrouping a party into factor parties of
//! dims `(a, b)` splits its digit as `g = b·g_hi + g_lo` with the high
//! factor first, so regroup/merge are pure reinterpretations of the same
//! amplitude vector.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{HERMITIAN_TOL, NORM_TOL, PSD_TOL, UNITARY_TOL};

/// A normalized pure state on a mixed-radix multiparty Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from amplitudes, optionally normalizing.
    ///
    /// Without `normalize` the vector must already be unit within
    /// [`NORM_TOL`](crate::NORM_TOL).
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>, normalize: bool) -> Result<Self> {
        let want: usize = dims.iter().product();
        if dims.is_empty() || dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidSpec("party dimensions must be >= 1".into()));
        }
        if amps.len() != want {
            return Err(Error::LengthMismatch {
                want,
                got: amps.len(),
            });
        }
        let norm = l2_norm(&amps);
        if norm <= 0.0 {
            return Err(Error::ZeroVector);
        }
        let amps = if normalize {
            amps.iter().map(|a| a / norm).collect()
        } else {
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::InvalidSpec(format!(
                    "state norm {norm} deviates from 1 beyond {NORM_TOL}"
                )));
            }
            amps
        };
        Ok(Self { dims, amps })
    }

    /// Computational basis state `|digits⟩`.
    pub fn basis(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.len() || digits.iter().zip(&dims).any(|(&g, &d)| g >= d) {
            return Err(Error::InvalidSpec("basis digits out of range".into()));
        }
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        let idx = flat_index(&dims, digits);
        amps[idx] = Complex64::new(1.0, 0.0);
        Self::new(dims, amps, false)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn num_parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    fn stride(&self, party: usize) -> usize {
        self.dims[party + 1..].iter().product()
    }

    /// Kronecker product; `other`'s parties are appended after `self`'s.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        PureState { dims, amps }
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &PureState) -> Result<Complex64> {
        if self.total_dim() != other.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "total dims {} vs {}",
                self.total_dim(),
                other.total_dim()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a unitary to one party, checking unitarity within
    /// [`UNITARY_TOL`](crate::UNITARY_TOL).
    pub fn apply_local_unitary(&self, party: usize, u: &DMatrix<Complex64>) -> Result<PureState> {
        self.apply_unitary_on(&[party], u)
    }

    /// Applies a joint unitary to an ordered list of parties (first listed
    /// party is the most significant index of `u`).
    pub fn apply_unitary_on(&self, parties: &[usize], u: &DMatrix<Complex64>) -> Result<PureState> {
        check_unitary(u)?;
        self.apply_on_unchecked(parties, u)
    }

    /// Same as [`apply_unitary_on`](Self::apply_unitary_on) but skips the
    /// unitarity check; for matrices unitary by construction.
    pub(crate) fn apply_on_unchecked(
        &self,
        parties: &[usize],
        u: &DMatrix<Complex64>,
    ) -> Result<PureState> {
        if parties.is_empty() {
            return Err(Error::InvalidSpec("no target parties".into()));
        }
        let mut seen = vec![false; self.dims.len()];
        for &p in parties {
            if p >= self.dims.len() || seen[p] {
                return Err(Error::InvalidSpec(format!("bad target party {p}")));
            }
            seen[p] = true;
        }
        let sub_dims: Vec<usize> = parties.iter().map(|&p| self.dims[p]).collect();
        let d: usize = sub_dims.iter().product();
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, parties give {}",
                u.nrows(),
                u.ncols(),
                d
            )));
        }
        let strides: Vec<usize> = parties.iter().map(|&p| self.stride(p)).collect();
        let mut offsets = vec![0usize; d];
        for (s, off) in offsets.iter_mut().enumerate() {
            let mut rem = s;
            for k in (0..sub_dims.len()).rev() {
                *off += (rem % sub_dims[k]) * strides[k];
                rem /= sub_dims[k];
            }
        }
        let mut out = self.amps.clone();
        let mut block = vec![Complex64::new(0.0, 0.0); d];
        for base in RestBases::new(&self.dims, parties) {
            for (s, b) in block.iter_mut().enumerate() {
                *b = self.amps[base + offsets[s]];
            }
            for (s, &off) in offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (t, &bt) in block.iter().enumerate() {
                    acc += u[(s, t)] * bt;
                }
                out[base + off] = acc;
            }
        }
        Ok(PureState {
            dims: self.dims.clone(),
            amps: out,
        })
    }

    /// Reorders parties: party `k` of the result is party `perm[k]` of `self`.
    pub fn permute_parties(&self, perm: &[usize]) -> Result<PureState> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidPermutation(n));
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let old_strides: Vec<usize> = (0..n).map(|p| self.stride(p)).collect();
        let mut new_strides = vec![0usize; n];
        let mut acc = 1usize;
        for k in (0..n).rev() {
            new_strides[k] = acc;
            acc *= new_dims[k];
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        let mut digits = vec![0usize; n];
        for (idx, &a) in self.amps.iter().enumerate() {
            digits_of(&self.dims, idx, &mut digits);
            let mut j = 0usize;
            for k in 0..n {
                j += digits[perm[k]] * new_strides[k];
            }
            amps[j] = a;
        }
        let _ = old_strides;
        Ok(PureState {
            dims: new_dims,
            amps,
        })
    }

    /// Splits each party into its factor parties (most significant factor
    /// first). Pure reinterpretation: the amplitude vector is unchanged.
    pub fn regroup(&self, spec: &FactorizationSpec) -> Result<PureState> {
        spec.validate_against(&self.dims)?;
        let dims = spec.per_party.iter().flatten().copied().collect();
        Ok(PureState {
            dims,
            amps: self.amps.clone(),
        })
    }

    /// Inverse of [`regroup`](Self::regroup): consecutive factor parties are
    /// merged back into single parties.
    pub fn merge(&self, spec: &FactorizationSpec) -> Result<PureState> {
        let flat: Vec<usize> = spec.per_party.iter().flatten().copied().collect();
        if flat != self.dims {
            return Err(Error::DimensionMismatch(format!(
                "factorization flattens to {:?}, state dims are {:?}",
                flat, self.dims
            )));
        }
        let dims = spec
            .per_party
            .iter()
            .map(|fs| fs.iter().product())
            .collect();
        Ok(PureState {
            dims,
            amps: self.amps.clone(),
        })
    }

    /// `|self⟩⟨self|` as a validated density matrix.
    pub fn density(&self) -> DensityMatrix {
        let op = Operator::outer(self, self);
        DensityMatrix { op }
    }

    /// Reduced density matrix on `keep` (ascending party order).
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let (keep_offsets, rest_offsets, dk) = trace_offsets(&self.dims, keep)?;
        let mut mat = DMatrix::from_element(dk, dk, Complex64::new(0.0, 0.0));
        for &e in &rest_offsets {
            for (a, &oa) in keep_offsets.iter().enumerate() {
                let va = self.amps[oa + e];
                if va == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (b, &ob) in keep_offsets.iter().enumerate() {
                    mat[(a, b)] += va * self.amps[ob + e].conj();
                }
            }
        }
        let keep_sorted = sorted_unique(keep);
        let dims = keep_sorted.iter().map(|&p| self.dims[p]).collect();
        Ok(DensityMatrix {
            op: Operator { dims, mat },
        })
    }
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn flat_index(dims: &[usize], digits: &[usize]) -> usize {
    let mut idx = 0;
    for (k, &g) in digits.iter().enumerate() {
        idx = idx * dims[k] + g;
    }
    idx
}

pub(crate) fn digits_of(dims: &[usize], mut idx: usize, out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

fn sorted_unique(parties: &[usize]) -> Vec<usize> {
    let mut v = parties.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Iterator over flat indices whose digits vanish on a set of parties.
struct RestBases {
    rest_parties: Vec<usize>,
    rest_dims: Vec<usize>,
    rest_strides: Vec<usize>,
    counter: Vec<usize>,
    done: bool,
    current: usize,
}

impl RestBases {
    fn new(dims: &[usize], excluded: &[usize]) -> Self {
        let rest_parties: Vec<usize> =
            (0..dims.len()).filter(|p| !excluded.contains(p)).collect();
        let rest_dims: Vec<usize> = rest_parties.iter().map(|&p| dims[p]).collect();
        let rest_strides: Vec<usize> = rest_parties
            .iter()
            .map(|&p| dims[p + 1..].iter().product())
            .collect();
        let counter = vec![0usize; rest_parties.len()];
        Self {
            rest_parties,
            rest_dims,
            rest_strides,
            counter,
            done: false,
            current: 0,
        }
    }
}

impl Iterator for RestBases {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        let out = self.current;
        let mut k = self.rest_parties.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.counter[k] += 1;
            self.current += self.rest_strides[k];
            if self.counter[k] < self.rest_dims[k] {
                break;
            }
            self.current -= self.counter[k] * self.rest_strides[k];
            self.counter[k] = 0;
        }
        Some(out)
    }
}

fn check_unitary(u: &DMatrix<Complex64>) -> Result<()> {
    if u.nrows() != u.ncols() {
        return Err(Error::DimensionMismatch("unitary must be square".into()));
    }
    let d = u.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += u[(k, i)].conj() * u[(k, j)];
            }
            let want = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((acc - Complex64::new(want, 0.0)).norm());
        }
    }
    if dev > UNITARY_TOL {
        return Err(Error::NonUnitary {
            dev,
            tol: UNITARY_TOL,
        });
    }
    Ok(())
}

/// Offset tables for tracing out the complement of `keep`.
fn trace_offsets(dims: &[usize], keep: &[usize]) -> Result<(Vec<usize>, Vec<usize>, usize)> {
    if keep.is_empty() {
        return Err(Error::InvalidCut("keep set is empty".into()));
    }
    let keep = sorted_unique(keep);
    if keep.iter().any(|&p| p >= dims.len()) {
        return Err(Error::InvalidCut("keep party out of range".into()));
    }
    let strides: Vec<usize> = (0..dims.len())
        .map(|p| dims[p + 1..].iter().product())
        .collect();
    let offsets_for = |parties: &[usize]| -> Vec<usize> {
        let pdims: Vec<usize> = parties.iter().map(|&p| dims[p]).collect();
        let total: usize = pdims.iter().product();
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; parties.len()];
        for idx in 0..total {
            digits_of(&pdims, idx, &mut digits);
            out.push(
                digits
                    .iter()
                    .zip(parties)
                    .map(|(&g, &p)| g * strides[p])
                    .sum(),
            );
        }
        out
    };
    let rest: Vec<usize> = (0..dims.len()).filter(|p| !keep.contains(p)).collect();
    let keep_offsets = offsets_for(&keep);
    let rest_offsets = offsets_for(&rest);
    let dk = keep_offsets.len();
    Ok((keep_offsets, rest_offsets, dk))
}

/// A complex square matrix tagged with its party dimensions. Not required to
/// be Hermitian; the seesaw traces outer products of two different vectors.
#[derive(Debug, Clone)]
pub struct Operator {
    pub dims: Vec<usize>,
    pub mat: DMatrix<Complex64>,
}

impl Operator {
    pub fn new(dims: Vec<usize>, mat: DMatrix<Complex64>) -> Result<Self> {
        let d: usize = dims.iter().product();
        if mat.nrows() != d || mat.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, dims give {}",
                mat.nrows(),
                mat.ncols(),
                d
            )));
        }
        Ok(Self { dims, mat })
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &PureState, b: &PureState) -> Operator {
        let n = a.total_dim();
        let mut mat = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for i in 0..n {
            for j in 0..n {
                mat[(i, j)] = a.amps[i] * b.amps[j].conj();
            }
        }
        Operator {
            dims: a.dims.clone(),
            mat,
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.mat.nrows()).map(|i| self.mat[(i, i)]).sum()
    }

    /// Partial trace keeping `keep` (ascending). Linear; preserves the trace.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Operator> {
        let (keep_offsets, rest_offsets, dk) = trace_offsets(&self.dims, keep)?;
        let mut mat = DMatrix::from_element(dk, dk, Complex64::new(0.0, 0.0));
        for (a, &oa) in keep_offsets.iter().enumerate() {
            for (b, &ob) in keep_offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &e in &rest_offsets {
                    acc += self.mat[(oa + e, ob + e)];
                }
                mat[(a, b)] = acc;
            }
        }
        let keep_sorted = sorted_unique(keep);
        let dims = keep_sorted.iter().map(|&p| self.dims[p]).collect();
        Ok(Operator { dims, mat })
    }
}

/// A Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness.
    pub fn new(op: Operator) -> Result<Self> {
        let m = &op.mat;
        let mut herm_dev: f64 = 0.0;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                herm_dev = herm_dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if herm_dev > HERMITIAN_TOL {
            return Err(Error::NotADensityMatrix {
                what: "hermiticity",
                dev: herm_dev,
            });
        }
        let tr = op.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > HERMITIAN_TOL {
            return Err(Error::NotADensityMatrix {
                what: "unit trace",
                dev: (tr - Complex64::new(1.0, 0.0)).norm(),
            });
        }
        let eig = m.clone().symmetric_eigen();
        let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOL {
            return Err(Error::NotADensityMatrix {
                what: "positivity",
                dev: -min_eig,
            });
        }
        Ok(Self { op })
    }

    /// Convex mixture Σ pᵢ |ψᵢ⟩⟨ψᵢ|; weights are normalized to sum 1.
    pub fn mixture(parts: &[(f64, PureState)]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSpec("empty mixture".into()));
        }
        let total_w: f64 = parts.iter().map(|(w, _)| w).sum();
        if total_w <= 0.0 || parts.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::InvalidSpec("mixture weights must be >= 0".into()));
        }
        let dims = parts[0].1.dims.clone();
        let n = parts[0].1.total_dim();
        let mut mat = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for (w, psi) in parts {
            if psi.dims != dims {
                return Err(Error::DimensionMismatch("mixture dims differ".into()));
            }
            let p = w / total_w;
            for i in 0..n {
                for j in 0..n {
                    mat[(i, j)] += p * psi.amps[i] * psi.amps[j].conj();
                }
            }
        }
        Self::new(Operator { dims, mat })
    }

    pub fn dims(&self) -> &[usize] {
        &self.op.dims
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.op.mat
    }

    pub fn as_operator(&self) -> &Operator {
        &self.op
    }

    pub fn trace(&self) -> f64 {
        self.op.trace().re
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        // partial trace preserves all three invariants
        Ok(DensityMatrix {
            op: self.op.partial_trace(keep)?,
        })
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        if psi.total_dim() != self.op.mat.nrows() {
            return Err(Error::DimensionMismatch(
                "state and operator dims differ".into(),
            ));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..psi.amps.len() {
            for j in 0..psi.amps.len() {
                acc += psi.amps[i].conj() * self.op.mat[(i, j)] * psi.amps[j];
            }
        }
        Ok(acc.re)
    }
}

/// A bipartition M | M' of the parties, both sides nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left: &[usize], num_parties: usize) -> Result<Self> {
        let left = sorted_unique(left);
        if left.is_empty() || left.len() == num_parties {
            return Err(Error::InvalidCut("both sides must be nonempty".into()));
        }
        if left.iter().any(|&p| p >= num_parties) {
            return Err(Error::InvalidCut("party index out of range".into()));
        }
        let right = (0..num_parties).filter(|p| !left.contains(p)).collect();
        Ok(Self { left, right })
    }

    /// Parses `"0|1,2"` (the right side may be omitted: `"0"`).
    pub fn parse(text: &str, num_parties: usize) -> Result<Self> {
        let left_text = text.split('|').next().unwrap_or("");
        let left: Vec<usize> = left_text
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidCut(format!("bad party index {t:?}")))
            })
            .collect::<Result<_>>()?;
        let cut = Self::new(&left, num_parties)?;
        if let Some(rhs) = text.split('|').nth(1) {
            let right: Vec<usize> = rhs
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidCut(format!("bad party index {t:?}")))
                })
                .collect::<Result<_>>()?;
            if sorted_unique(&right) != cut.right {
                return Err(Error::InvalidCut(format!(
                    "right side {:?} is not the complement of {:?}",
                    right, cut.left
                )));
            }
        }
        Ok(cut)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn num_parties(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn side_dims(&self, dims: &[usize]) -> (usize, usize) {
        (
            self.left.iter().map(|&p| dims[p]).product(),
            self.right.iter().map(|&p| dims[p]).product(),
        )
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fmt_side = |side: &[usize]| {
            side.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}", fmt_side(&self.left), fmt_side(&self.right))
    }
}

/// Per-party factor dimensions; factor j of every party belongs to factor
/// state j. Dimensions of 1 are allowed as trivial slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSpec {
    pub per_party: Vec<Vec<usize>>,
}

impl FactorizationSpec {
    pub fn new(per_party: Vec<Vec<usize>>) -> Result<Self> {
        if per_party.is_empty()
            || per_party
                .iter()
                .any(|fs| fs.is_empty() || fs.iter().any(|&d| d == 0))
        {
            return Err(Error::InvalidSpec(
                "every party needs at least one factor of dim >= 1".into(),
            ));
        }
        Ok(Self { per_party })
    }

    /// Every party gets the same factor list.
    pub fn uniform(num_parties: usize, factors: &[usize]) -> Result<Self> {
        Self::new(vec![factors.to_vec(); num_parties])
    }

    /// Parses `"2x3,2x3,4"` (one `x`-separated list per party).
    pub fn parse(text: &str) -> Result<Self> {
        let per_party: Vec<Vec<usize>> = text
            .split(',')
            .map(|party| {
                party
                    .trim()
                    .split('x')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::InvalidSpec(format!("bad factor {t:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Self::new(per_party)
    }

    pub fn validate_against(&self, dims: &[usize]) -> Result<()> {
        if self.per_party.len() != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} parties in spec, state has {}",
                self.per_party.len(),
                dims.len()
            )));
        }
        for (fs, &d) in self.per_party.iter().zip(dims) {
            let prod: usize = fs.iter().product();
            if prod != d {
                return Err(Error::DimensionMismatch(format!(
                    "factors {:?} multiply to {}, party dim is {}",
                    fs, prod, d
                )));
            }
        }
        Ok(())
    }

    /// Factor count, required uniform across parties.
    pub fn factor_count(&self) -> Result<usize> {
        let k = self.per_party[0].len();
        if self.per_party.iter().any(|fs| fs.len() != k) {
            return Err(Error::InvalidSpec(
                "factor count differs across parties".into(),
            ));
        }
        Ok(k)
    }

    /// Dims of factor state `j` across the parties.
    pub fn factor_dims(&self, j: usize) -> Vec<usize> {
        self.per_party.iter().map(|fs| fs[j]).collect()
    }
}

/// On-disk state representation: `{"dims":[...],"amps":[[re,im],...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amps: Vec<[f64; 2]>,
}

impl PureState {
    pub fn to_state_file(&self) -> StateFile {
        StateFile {
            dims: self.dims.clone(),
            amps: self.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn from_state_file(file: &StateFile, renormalize: bool) -> Result<Self> {
        let amps = file
            .amps
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Self::new(file.dims.clone(), amps, renormalize)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_state_file()).expect("state serializes")
    }

    pub fn from_json(text: &str, renormalize: bool) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        Self::from_state_file(&file, renormalize)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path, renormalize: bool) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, renormalize)
    }
}
