//! Admissible arrangements of Schmidt coefficients.
//!
//! Filling a d₁×d₂ grid with ordered coefficients such that rows and columns
//! are nonincreasing is equivalent to choosing a standard Young tableau of
//! that rectangular shape: the cell holding tableau number k receives the
//! k-th largest coefficient. This module enumerates the tableaux, counts
//! them by the hook-length formula, and runs the backtracking search for an
//! arrangement of rank one.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::schmidt::SchmidtSpectrum;

/// Default cap on d₁·d₂ for exhaustive tableau enumeration.
pub const DEFAULT_CELL_CAP: usize = 16;

/// A standard filling of a d₁×d₂ grid: 1..d₁d₂ each once, strictly
/// increasing along rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungTableau {
    d1: usize,
    d2: usize,
    filling: Vec<u32>,
}

impl YoungTableau {
    pub fn new(d1: usize, d2: usize, filling: Vec<u32>) -> Result<Self> {
        let n = d1 * d2;
        if filling.len() != n {
            return Err(Error::LengthMismatch {
                want: n,
                got: filling.len(),
            });
        }
        let mut seen = vec![false; n + 1];
        for &v in &filling {
            if v == 0 || v as usize > n || std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::InvalidSpec("filling must use 1..n once each".into()));
            }
        }
        let t = Self { d1, d2, filling };
        for i in 0..d1 {
            for j in 0..d2 {
                if j + 1 < d2 && t.get(i, j) >= t.get(i, j + 1) {
                    return Err(Error::InvalidSpec("row not increasing".into()));
                }
                if i + 1 < d1 && t.get(i, j) >= t.get(i + 1, j) {
                    return Err(Error::InvalidSpec("column not increasing".into()));
                }
            }
        }
        Ok(t)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.filling[row * self.d2 + col]
    }

    pub fn filling(&self) -> &[u32] {
        &self.filling
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Number of standard Young tableaux of the d₁×d₂ rectangle:
/// `(d₁d₂)! / ∏ᵢ∏ⱼ (i+j−1)` (hook lengths of the rectangle).
pub fn hook_count(d1: usize, d2: usize) -> BigUint {
    let mut den = BigUint::one();
    for i in 1..=d1 {
        for j in 1..=d2 {
            den *= BigUint::from((i + j - 1) as u64);
        }
    }
    factorial(d1 * d2) / den
}

/// Number of first-row/first-column interleavings explored by the rank-one
/// search: `(d₁+d₂−2)! / ((d₁−1)!(d₂−1)!)`.
pub fn boundary_count(d1: usize, d2: usize) -> BigUint {
    factorial(d1 + d2 - 2) / (factorial(d1 - 1) * factorial(d2 - 1))
}

/// Lexicographic stream (row-major filling order) of all standard Young
/// tableaux of a rectangle.
pub struct SytIter {
    d1: usize,
    d2: usize,
    n: usize,
    grid: Vec<u32>,
    used: Vec<bool>,
    pos: usize,
    done: bool,
}

impl SytIter {
    fn fits(&self, pos: usize, v: u32) -> bool {
        let (i, j) = (pos / self.d2, pos % self.d2);
        if j > 0 && self.grid[pos - 1] >= v {
            return false;
        }
        if i > 0 && self.grid[pos - self.d2] >= v {
            return false;
        }
        true
    }

    fn current(&self) -> YoungTableau {
        YoungTableau {
            d1: self.d1,
            d2: self.d2,
            filling: self.grid.clone(),
        }
    }
}

impl Iterator for SytIter {
    type Item = YoungTableau;

    fn next(&mut self) -> Option<YoungTableau> {
        if self.done {
            return None;
        }
        let n = self.n;
        let mut pos = self.pos;
        if pos == n {
            // resume after a yield
            pos -= 1;
            self.used[self.grid[pos] as usize] = false;
        }
        loop {
            let start = self.grid[pos] as usize + 1;
            self.grid[pos] = 0;
            let mut placed = false;
            for v in start..=n {
                if self.used[v] || !self.fits(pos, v as u32) {
                    continue;
                }
                self.grid[pos] = v as u32;
                self.used[v] = true;
                placed = true;
                break;
            }
            if placed {
                pos += 1;
                if pos == n {
                    self.pos = pos;
                    return Some(self.current());
                }
            } else {
                if pos == 0 {
                    self.done = true;
                    return None;
                }
                pos -= 1;
                self.used[self.grid[pos] as usize] = false;
            }
        }
    }
}

/// Streams the tableaux of a d₁×d₂ rectangle under [`DEFAULT_CELL_CAP`].
pub fn enumerate_syt(d1: usize, d2: usize) -> Result<SytIter> {
    enumerate_syt_capped(d1, d2, DEFAULT_CELL_CAP)
}

pub fn enumerate_syt_capped(d1: usize, d2: usize, cap: usize) -> Result<SytIter> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidSpec("shape must be positive".into()));
    }
    let cells = d1 * d2;
    if cells > cap {
        return Err(Error::CapExceeded {
            d1,
            d2,
            cells,
            cap,
        });
    }
    Ok(SytIter {
        d1,
        d2,
        n: cells,
        grid: vec![0; cells],
        used: vec![false; cells + 1],
        pos: 0,
        done: false,
    })
}

/// Schmidt coefficients placed in a d₁×d₂ grid with nonincreasing rows and
/// columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrangementMatrix {
    d1: usize,
    d2: usize,
    entries: Vec<f64>,
}

impl ArrangementMatrix {
    pub fn new(d1: usize, d2: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != d1 * d2 {
            return Err(Error::LengthMismatch {
                want: d1 * d2,
                got: entries.len(),
            });
        }
        let a = Self { d1, d2, entries };
        // ties from a numerical spectrum carry ~1e-16 jitter; allow that
        // much while keeping genuine order violations fatal
        const MONO_SLACK: f64 = 1e-12;
        for i in 0..d1 {
            for j in 0..d2 {
                if j + 1 < d2 && a.get(i, j) < a.get(i, j + 1) - MONO_SLACK {
                    return Err(Error::InvalidSpec("row increases left to right".into()));
                }
                if i + 1 < d1 && a.get(i, j) < a.get(i + 1, j) - MONO_SLACK {
                    return Err(Error::InvalidSpec("column increases top to bottom".into()));
                }
            }
        }
        Ok(a)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.d2 + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn to_matrix(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.d1, self.d2, &self.entries)
    }

    /// Determinant, defined for 2×2 arrangements only.
    pub fn det2(&self) -> Result<f64> {
        if (self.d1, self.d2) != (2, 2) {
            return Err(Error::Unsupported("2x2 arrangements"));
        }
        Ok(self.entries[0] * self.entries[3] - self.entries[1] * self.entries[2])
    }
}

/// Places coefficient s_{k−1} into the cell holding tableau number k.
pub fn arrangement_from_tableau(
    spec: &SchmidtSpectrum,
    tableau: &YoungTableau,
) -> Result<ArrangementMatrix> {
    let (d1, d2) = tableau.shape();
    let padded = spec.padded(d1 * d2, crate::RANK_ONE_TOL)?;
    let entries = tableau
        .filling()
        .iter()
        .map(|&k| padded[(k - 1) as usize])
        .collect();
    ArrangementMatrix::new(d1, d2, entries)
}

/// Outcome of a successful rank-one search: the arrangement and the factor
/// spectra recovered from its first column and row.
#[derive(Debug, Clone)]
pub struct RankOneCertificate {
    pub arrangement: ArrangementMatrix,
    /// Unit-normalized column marginal (length d₁): the left factor spectrum.
    pub left_marginal: Vec<f64>,
    /// Unit-normalized row marginal (length d₂): the right factor spectrum.
    pub right_marginal: Vec<f64>,
    /// Search-tree nodes explored before success or exhaustion.
    pub branches: u64,
}

/// Searches for an arrangement of the padded spectrum whose rows are all
/// proportional (rank one).
///
/// The first cell takes the largest coefficient. The remaining first-row and
/// first-column cells are filled in nonincreasing order, branching over the
/// interleaving; each extension forces the interior products
/// `S[i][j] = S[i][0]·S[0][j]/S[0][0]`, which are matched against the unused
/// coefficients within `tol`. At most [`boundary_count`] interleavings exist.
///
/// Returns `Ok(None)` when no rank-one arrangement exists, including when
/// the spectrum has more than d₁·d₂ coefficients above `tol`.
pub fn rank_one_search(
    spec: &SchmidtSpectrum,
    d1: usize,
    d2: usize,
    tol: f64,
) -> Result<Option<RankOneCertificate>> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidSpec("shape must be positive".into()));
    }
    let padded = match spec.padded(d1 * d2, tol) {
        Ok(p) => p,
        Err(Error::PadTruncation { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut search = RankOneSearch {
        d1,
        d2,
        tol,
        pool: padded.iter().map(|&v| (v, false)).collect(),
        row: Vec::with_capacity(d2),
        col: Vec::with_capacity(d1),
        cells: vec![0.0; d1 * d2],
        branches: 0,
    };
    let s0 = padded[0];
    if s0 <= tol {
        return Ok(None); // zero spectrum cannot occur for valid input
    }
    search.pool[0].1 = true;
    search.row.push(s0);
    search.col.push(s0);
    search.cells[0] = s0;
    if search.rec() {
        let norm = |v: &[f64]| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter().map(|x| x / n).collect::<Vec<f64>>()
        };
        let left = norm(&search.col);
        let right = norm(&search.row);
        let arrangement = ArrangementMatrix::new(d1, d2, search.cells)?;
        return Ok(Some(RankOneCertificate {
            arrangement,
            left_marginal: left,
            right_marginal: right,
            branches: search.branches,
        }));
    }
    Ok(None)
}

struct RankOneSearch {
    d1: usize,
    d2: usize,
    tol: f64,
    pool: Vec<(f64, bool)>,
    row: Vec<f64>,
    col: Vec<f64>,
    cells: Vec<f64>,
    branches: u64,
}

impl RankOneSearch {
    /// Consumes the unused pool entry closest to `val` within `tol`.
    fn take(&mut self, val: f64) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, &(v, used)) in self.pool.iter().enumerate() {
            if used || (v - val).abs() > self.tol {
                continue;
            }
            if best.is_none_or(|b| (v - val).abs() < (self.pool[b].0 - val).abs()) {
                best = Some(i);
            }
        }
        if let Some(i) = best {
            self.pool[i].1 = true;
        }
        best
    }

    fn largest_remaining(&self) -> Option<f64> {
        self.pool.iter().find(|&&(_, used)| !used).map(|&(v, _)| v)
    }

    fn rec(&mut self) -> bool {
        self.branches += 1;
        if self.row.len() == self.d2 && self.col.len() == self.d1 {
            return self.pool.iter().all(|&(_, used)| used);
        }
        let Some(top) = self.largest_remaining() else {
            return false;
        };
        let s0 = self.cells[0];
        for extend_row in [true, false] {
            if extend_row && self.row.len() == self.d2 {
                continue;
            }
            if !extend_row && self.col.len() == self.d1 {
                continue;
            }
            let Some(head_idx) = self.take(top) else {
                continue;
            };
            let mut taken = vec![head_idx];
            let mut ok = true;
            if extend_row {
                let c = self.row.len();
                self.cells[c] = top;
                for i in 1..self.col.len() {
                    let want = self.col[i] * top / s0;
                    match self.take(want) {
                        Some(idx) => {
                            self.cells[i * self.d2 + c] = self.pool[idx].0;
                            taken.push(idx);
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    self.row.push(top);
                    if self.rec() {
                        return true;
                    }
                    self.row.pop();
                }
            } else {
                let r = self.col.len();
                self.cells[r * self.d2] = top;
                for j in 1..self.row.len() {
                    let want = self.row[j] * top / s0;
                    match self.take(want) {
                        Some(idx) => {
                            self.cells[r * self.d2 + j] = self.pool[idx].0;
                            taken.push(idx);
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    self.col.push(top);
                    if self.rec() {
                        return true;
                    }
                    self.col.pop();
                }
            }
            for idx in taken {
                self.pool[idx].1 = false;
            }
        }
        false
    }
}

/// Young diagrams with `cells` boxes fitting a d₁×d₂ box, as nonincreasing
/// row lengths. These index the distinct arrangements of a two-valued
/// spectrum.
pub fn partitions_in_box(cells: usize, d1: usize, d2: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(
        remaining: usize,
        max_part: usize,
        rows_left: usize,
        parts: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(parts.clone());
            return;
        }
        if rows_left == 0 {
            return;
        }
        let hi = max_part.min(remaining);
        for p in (1..=hi).rev() {
            // all later rows are at most p; prune if they cannot cover the rest
            if p * (rows_left - 1) < remaining - p {
                continue;
            }
            parts.push(p);
            rec(remaining - p, p, rows_left - 1, parts, out);
            parts.pop();
        }
    }
    rec(cells, d2, d1, &mut parts, &mut out);
    out
}
