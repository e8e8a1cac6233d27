//! Alternating optimization of `max |⟨ψ| U₁⊗…⊗U_N (|φ⟩⊗|φ′⟩⊗…) |`
//! over local unitaries and factor states.
//!
//! Every coordinate step is closed-form: a factor state is optimally the
//! normalized partial inner product of the rotated target with the other
//! factors, and a local unitary is optimally the polar factor of the
//! partially traced outer product, achieving the nuclear norm. The overlap
//! therefore never decreases within a restart; restarts differ only in
//! their random initialization.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::decompose::{decomposable_across_cut, divisor_splits, CutCheck};
use crate::error::{Error, Result};
use crate::statevec::{Bipartition, FactorizationSpec, PureState};

/// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
/// R diagonal phases absorbed.
pub fn haar_random_unitary(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    use rand_distr::StandardNormal;
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / 2f64.sqrt()
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = q;
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// Unitary maximizing `|tr(U†ρ)|` for an arbitrary complex square `ρ`,
/// together with the achieved value Σᵢ σᵢ(ρ) (the nuclear norm). Computed
/// from the SVD `ρ = WΣV†` as `U = WV†`; rank deficiency is harmless since
/// the SVD already completes the unitary on the null space.
pub fn polar_unitary(rho: &DMatrix<Complex64>) -> (DMatrix<Complex64>, f64) {
    let svd = rho.clone().svd(true, true);
    let nuclear: f64 = svd.singular_values.iter().sum();
    let u = svd.u.expect("computed") * svd.v_t.expect("computed");
    (u, nuclear)
}

/// What the engine optimizes against.
#[derive(Debug, Clone)]
pub struct SeesawProblem {
    pub target: PureState,
    /// Factor dimensions per effective party (after merging).
    pub factorization: FactorizationSpec,
    /// Parties whose unitaries act jointly; defaults to singletons.
    pub merge_groups: Option<Vec<Vec<usize>>>,
    /// Fixed second state: single-factor mode maximizing the local-unitary
    /// overlap with `target` instead of optimizing factor states.
    pub lu_reference: Option<PureState>,
}

impl SeesawProblem {
    /// Full-decomposability mode: optimize all factor states and unitaries.
    pub fn factorize(target: PureState, factorization: FactorizationSpec) -> Result<Self> {
        factorization.validate_against(target.dims())?;
        factorization.factor_count()?;
        Ok(Self {
            target,
            factorization,
            merge_groups: None,
            lu_reference: None,
        })
    }

    /// Local-unitary overlap mode against a fixed reference state.
    pub fn lu_overlap(target: PureState, reference: PureState) -> Result<Self> {
        if target.dims() != reference.dims() {
            return Err(Error::DimensionMismatch(
                "target and reference dims differ".into(),
            ));
        }
        let factorization =
            FactorizationSpec::new(target.dims().iter().map(|&d| vec![d]).collect())?;
        Ok(Self {
            target,
            factorization,
            merge_groups: None,
            lu_reference: Some(reference),
        })
    }

    /// Treats each listed group of parties as one merged party with a joint
    /// unitary. `factorization` must then describe the merged parties in
    /// group order.
    pub fn with_merge_groups(mut self, groups: Vec<Vec<usize>>) -> Result<Self> {
        let n = self.target.num_parties();
        let mut seen = vec![false; n];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::InvalidSpec("empty merge group".into()));
            }
            for &p in g {
                if p >= n || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidSpec(format!("bad merge group party {p}")));
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidSpec("merge groups must cover all parties".into()));
        }
        self.merge_groups = Some(groups);
        Ok(self)
    }
}

#[derive(Debug, Clone)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub convergence_tol: f64,
    pub rng_seed: u64,
    pub success_threshold: f64,
    /// Record the overlap after every coordinate step (not just per sweep)
    /// in the best restart's history.
    pub record_steps: bool,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 2000,
            convergence_tol: 1e-12,
            rng_seed: 0,
            success_threshold: 1.0 - 1e-6,
            record_steps: false,
        }
    }
}

impl SeesawConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_max_iters(mut self, iters: usize) -> Self {
        self.max_iters = iters;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RestartSummary {
    pub restart: usize,
    pub overlap: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct SeesawResult {
    /// Best achieved `|⟨ψ|⊗U|φ…⟩|` over all restarts.
    pub best_overlap: f64,
    /// Square of the best overlap.
    pub best_fidelity: f64,
    pub best_restart: usize,
    /// Factor states of the best restart, one per factor slot.
    pub factors: Vec<PureState>,
    /// Local unitaries of the best restart, one per effective party.
    pub unitaries: Vec<DMatrix<Complex64>>,
    /// Dims of the effective (merged) parties the unitaries act on.
    pub effective_dims: Vec<usize>,
    pub restarts: Vec<RestartSummary>,
    /// Overlap trace of the best restart (per sweep, or per coordinate step
    /// with `record_steps`).
    pub history: Vec<f64>,
}

impl SeesawResult {
    pub fn succeeded(&self, threshold: f64) -> bool {
        self.best_overlap >= threshold
    }
}

/// Runs the alternating optimization. Deterministic for a fixed
/// `(problem, cfg.rng_seed)`: restart r draws from an independent
/// substream, so results do not depend on scheduling.
pub fn seesaw(problem: &SeesawProblem, cfg: &SeesawConfig) -> Result<SeesawResult> {
    let engine = Engine::prepare(problem)?;
    let runs: Vec<RestartOutcome> = {
        #[cfg(feature = "parallel")]
        {
            (0..cfg.restarts)
                .into_par_iter()
                .map(|r| engine.run_restart(r, cfg))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..cfg.restarts).map(|r| engine.run_restart(r, cfg)).collect()
        }
    };
    let mut best_idx = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.overlap > runs[best_idx].overlap {
            best_idx = i;
        }
    }
    let summaries = runs
        .iter()
        .map(|r| RestartSummary {
            restart: r.restart,
            overlap: r.overlap,
            iterations: r.iterations,
            converged: r.converged,
        })
        .collect();
    let best = &runs[best_idx];
    let factors = best
        .factors
        .iter()
        .enumerate()
        .map(|(j, amps)| PureState::new(engine.factor_dims[j].clone(), amps.clone(), true))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeesawResult {
        best_overlap: best.overlap,
        best_fidelity: best.overlap * best.overlap,
        best_restart: best.restart,
        factors,
        unitaries: best.unitaries.clone(),
        effective_dims: engine.dims.clone(),
        restarts: summaries,
        history: best.history.clone(),
    })
}

struct RestartOutcome {
    restart: usize,
    overlap: f64,
    iterations: usize,
    converged: bool,
    factors: Vec<Vec<Complex64>>,
    unitaries: Vec<DMatrix<Complex64>>,
    history: Vec<f64>,
}

/// Precomputed geometry of one seesaw problem.
struct Engine {
    dims: Vec<usize>,
    total: usize,
    target: Vec<Complex64>,
    factor_dims: Vec<Vec<usize>>,
    /// offsets[i][g][j]: contribution of party-i digit g to factor j's flat
    /// index.
    offsets: Vec<Vec<Vec<usize>>>,
    strides: Vec<usize>,
    k: usize,
    n: usize,
    lu_reference: Option<Vec<Complex64>>,
}

impl Engine {
    fn prepare(problem: &SeesawProblem) -> Result<Self> {
        // merge grouped parties into single effective parties
        let (target, reference) = match &problem.merge_groups {
            None => (problem.target.clone(), problem.lu_reference.clone()),
            Some(groups) => {
                let perm: Vec<usize> = groups.iter().flatten().copied().collect();
                let group_dims: Vec<Vec<usize>> = groups
                    .iter()
                    .map(|g| g.iter().map(|&p| problem.target.dims()[p]).collect())
                    .collect();
                let spec = FactorizationSpec::new(group_dims)?;
                let merge = |s: &PureState| -> Result<PureState> {
                    s.permute_parties(&perm)?.merge(&spec)
                };
                (
                    merge(&problem.target)?,
                    problem
                        .lu_reference
                        .as_ref()
                        .map(|r| merge(r))
                        .transpose()?,
                )
            }
        };
        problem.factorization.validate_against(target.dims())?;
        let k = problem.factorization.factor_count()?;
        let n = target.num_parties();
        let dims = target.dims().to_vec();
        let factor_dims: Vec<Vec<usize>> =
            (0..k).map(|j| problem.factorization.factor_dims(j)).collect();
        if let Some(r) = &reference {
            let expect: usize = factor_dims[0].iter().product();
            if k != 1 || r.total_dim() != expect {
                return Err(Error::InvalidSpec(
                    "reference mode needs a single factor of full dimension".into(),
                ));
            }
        }
        // factor strides: factor j is indexed by its own parties, party 0
        // most significant
        let factor_strides: Vec<Vec<usize>> = (0..k)
            .map(|j| {
                (0..n)
                    .map(|i| factor_dims[j][i + 1..].iter().product())
                    .collect()
            })
            .collect();
        let mut offsets = Vec::with_capacity(n);
        for i in 0..n {
            let mut per_digit = Vec::with_capacity(dims[i]);
            for g in 0..dims[i] {
                // split digit g into factor digits, factor 0 most significant
                let mut rem = g;
                let mut fd = vec![0usize; k];
                for j in (0..k).rev() {
                    fd[j] = rem % factor_dims[j][i];
                    rem /= factor_dims[j][i];
                }
                per_digit.push((0..k).map(|j| fd[j] * factor_strides[j][i]).collect());
            }
            offsets.push(per_digit);
        }
        let strides: Vec<usize> = (0..n).map(|i| dims[i + 1..].iter().product()).collect();
        Ok(Self {
            dims,
            total: target.total_dim(),
            target: target.amps().to_vec(),
            factor_dims,
            offsets,
            strides,
            k,
            n,
            lu_reference: reference.map(|r| r.amps().to_vec()),
        })
    }

    /// Flat factor indices (one per factor) for a flat target index.
    #[inline]
    fn factor_offsets(&self, idx: usize, out: &mut [usize]) {
        out.fill(0);
        let mut rem = idx;
        for i in (0..self.n).rev() {
            let g = rem % self.dims[i];
            rem /= self.dims[i];
            for (j, o) in self.offsets[i][g].iter().enumerate() {
                out[j] += o;
            }
        }
    }

    fn product_state(&self, factors: &[Vec<Complex64>]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.total];
        let mut offs = vec![0usize; self.k];
        for (idx, o) in out.iter_mut().enumerate() {
            self.factor_offsets(idx, &mut offs);
            let mut acc = Complex64::new(1.0, 0.0);
            for (j, f) in factors.iter().enumerate() {
                acc *= f[offs[j]];
            }
            *o = acc;
        }
        out
    }

    /// Partial inner product of ψ̃ with all factors except `skip`:
    /// the unnormalized optimizer of that factor.
    fn factor_environment(
        &self,
        psi_tilde: &[Complex64],
        factors: &[Vec<Complex64>],
        skip: usize,
    ) -> Vec<Complex64> {
        let len: usize = self.factor_dims[skip].iter().product();
        let mut w = vec![Complex64::new(0.0, 0.0); len];
        let mut offs = vec![0usize; self.k];
        for idx in 0..self.total {
            self.factor_offsets(idx, &mut offs);
            let mut c = Complex64::new(1.0, 0.0);
            for (j, f) in factors.iter().enumerate() {
                if j != skip {
                    c *= f[offs[j]].conj();
                }
            }
            w[offs[skip]] += c * psi_tilde[idx];
        }
        w
    }

    /// ρ[a][b] = Σ_rest ψ[(a,rest)]·conj(φ[(b,rest)]) on party `i`.
    fn partial_outer(
        &self,
        psi: &[Complex64],
        prod: &[Complex64],
        party: usize,
    ) -> DMatrix<Complex64> {
        let d = self.dims[party];
        let stride = self.strides[party];
        let mut rho = DMatrix::from_element(d, d, Complex64::new(0.0, 0.0));
        let block = stride * d;
        let mut base = 0usize;
        while base < self.total {
            for inner in 0..stride {
                let at = base + inner;
                for a in 0..d {
                    let va = psi[at + a * stride];
                    if va == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for b in 0..d {
                        rho[(a, b)] += va * prod[at + b * stride].conj();
                    }
                }
            }
            base += block;
        }
        rho
    }

    /// Applies `u` (or its adjoint) to `party` in place.
    fn apply_party(&self, vec: &mut [Complex64], party: usize, u: &DMatrix<Complex64>, dag: bool) {
        let d = self.dims[party];
        let stride = self.strides[party];
        let block = stride * d;
        let mut buf = vec![Complex64::new(0.0, 0.0); d];
        let mut base = 0usize;
        while base < self.total {
            for inner in 0..stride {
                let at = base + inner;
                for (a, b) in buf.iter_mut().enumerate() {
                    *b = vec[at + a * stride];
                }
                for a in 0..d {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (b, &vb) in buf.iter().enumerate() {
                        let m = if dag {
                            u[(b, a)].conj()
                        } else {
                            u[(a, b)]
                        };
                        acc += m * vb;
                    }
                    vec[at + a * stride] = acc;
                }
            }
            base += block;
        }
    }

    fn overlap(&self, product: &[Complex64], psi_tilde: &[Complex64]) -> f64 {
        product
            .iter()
            .zip(psi_tilde)
            .map(|(p, t)| p.conj() * t)
            .sum::<Complex64>()
            .norm()
    }

    fn run_restart(&self, restart: usize, cfg: &SeesawConfig) -> RestartOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        rng.set_stream(restart as u64 + 1);
        let mut unitaries: Vec<DMatrix<Complex64>> = self
            .dims
            .iter()
            .map(|&d| haar_random_unitary(d, &mut rng))
            .collect();
        let mut factors: Vec<Vec<Complex64>> = match &self.lu_reference {
            Some(r) => vec![r.clone()],
            None => (0..self.k)
                .map(|j| random_unit(self.factor_dims[j].iter().product(), &mut rng))
                .collect(),
        };
        let mut psi_tilde = self.target.clone();
        for (i, u) in unitaries.iter().enumerate() {
            self.apply_party(&mut psi_tilde, i, u, true);
        }
        let mut product = self.product_state(&factors);
        let mut history = Vec::new();
        let mut overlap = self.overlap(&product, &psi_tilde);
        let mut converged = false;
        let mut iterations = 0;
        for it in 0..cfg.max_iters {
            iterations = it + 1;
            let prev = overlap;
            if self.lu_reference.is_none() {
                for j in 0..self.k {
                    let w = self.factor_environment(&psi_tilde, &factors, j);
                    let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                    if norm < 1e-14 {
                        // degenerate residual: re-randomize this factor only
                        factors[j] = random_unit(factors[j].len(), &mut rng);
                    } else {
                        factors[j] = w.iter().map(|c| c / norm).collect();
                        overlap = norm;
                    }
                    product = self.product_state(&factors);
                    if cfg.record_steps {
                        history.push(self.overlap(&product, &psi_tilde));
                    }
                }
            }
            for i in 0..self.n {
                // psi with every unitary except i applied
                self.apply_party(&mut psi_tilde, i, &unitaries[i], false);
                let rho = self.partial_outer(&psi_tilde, &product, i);
                let (u, nuclear) = polar_unitary(&rho);
                unitaries[i] = u;
                self.apply_party(&mut psi_tilde, i, &unitaries[i], true);
                overlap = nuclear;
                if cfg.record_steps {
                    history.push(self.overlap(&product, &psi_tilde));
                }
            }
            if !cfg.record_steps {
                history.push(overlap);
            }
            if (overlap - prev).abs() < cfg.convergence_tol {
                converged = true;
                break;
            }
        }
        overlap = self.overlap(&product, &psi_tilde);
        RestartOutcome {
            restart,
            overlap,
            iterations,
            converged,
            factors,
            unitaries,
            history,
        }
    }
}

fn random_unit(len: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    use rand_distr::StandardNormal;
    let mut v: Vec<Complex64> = (0..len)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

/// All 2^{N−1} − 1 unordered nontrivial bipartitions of N parties.
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if n < 2 {
        return Err(Error::InvalidSpec("need at least two parties".into()));
    }
    let mut out = Vec::with_capacity((1usize << (n - 1)) - 1);
    for mask in 0..(1u64 << (n - 1)) {
        let mut left = vec![0usize];
        for p in 1..n {
            if mask >> (p - 1) & 1 == 1 {
                left.push(p);
            }
        }
        if left.len() == n {
            continue;
        }
        out.push(Bipartition::new(&left, n)?);
    }
    Ok(out)
}

/// Which route certified a bipartition verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    Exact,
    Variational,
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct VariationalEvidence {
    pub best_overlap: f64,
    pub best_fidelity: f64,
    /// Factor dims used on the two merged sides, `[left, right]`.
    pub split: [Vec<usize>; 2],
}

#[derive(Debug, Clone)]
pub struct BidecompReport {
    pub cut: Bipartition,
    pub exact: CutCheck,
    pub variational: Option<VariationalEvidence>,
    pub decomposable: bool,
    pub certified_by: Route,
}

/// Decomposability of `state` across one bipartition, by two routes: the
/// exact rank-one criterion on the cut spectrum (conclusive both ways), and
/// the variational seesaw with both sides merged (lower bound).
pub fn bidecomposable_check(
    state: &PureState,
    cut: &Bipartition,
    cfg: &SeesawConfig,
) -> Result<BidecompReport> {
    let exact = decomposable_across_cut(state, cut, crate::RANK_ONE_TOL)?;
    let (dl, dr) = cut.side_dims(state.dims());
    let mut variational: Option<VariationalEvidence> = None;
    let groups = vec![cut.left().to_vec(), cut.right().to_vec()];
    'outer: for &(a, ap) in &divisor_splits(dl) {
        for &(b, bp) in &divisor_splits(dr) {
            for right in [[b, bp], [bp, b]] {
                let spec = FactorizationSpec::new(vec![vec![a, ap], right.to_vec()])?;
                let problem = SeesawProblem {
                    target: state.clone(),
                    factorization: spec,
                    merge_groups: None,
                    lu_reference: None,
                };
                let problem = problem.with_merge_groups(groups.clone())?;
                let result = seesaw(&problem, cfg)?;
                let better = variational
                    .as_ref()
                    .is_none_or(|v| result.best_overlap > v.best_overlap);
                if better {
                    variational = Some(VariationalEvidence {
                        best_overlap: result.best_overlap,
                        best_fidelity: result.best_fidelity,
                        split: [vec![a, ap], right.to_vec()],
                    });
                }
                if result.best_overlap >= cfg.success_threshold {
                    break 'outer;
                }
            }
        }
    }
    let var_ok = variational
        .as_ref()
        .is_some_and(|v| v.best_overlap >= cfg.success_threshold);
    let decomposable = exact.decomposable || var_ok;
    let certified_by = if exact.decomposable {
        Route::Exact
    } else if var_ok {
        Route::Variational
    } else {
        Route::None
    };
    Ok(BidecompReport {
        cut: cut.clone(),
        exact,
        variational,
        decomposable,
        certified_by,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    FullyDecomposable,
    MmeBidecomposable,
    /// Not decomposable across any bipartition, every cut refuted exactly.
    Gmme,
    /// Same verdict but at least one cut only has variational evidence.
    GmmeCandidate,
    /// Some party has prime dimension; the question does not arise.
    Vacuous,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::FullyDecomposable => "FULLY_DECOMPOSABLE",
            Classification::MmeBidecomposable => "MME_BIDECOMPOSABLE",
            Classification::Gmme => "GMME",
            Classification::GmmeCandidate => "GMME_CANDIDATE",
            Classification::Vacuous => "VACUOUS",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FullDecompAttempt {
    pub factorization: FactorizationSpec,
    pub best_overlap: f64,
    pub best_fidelity: f64,
    pub succeeded: bool,
}

#[derive(Debug)]
pub struct ClassifyReport {
    pub verdict: Classification,
    pub warnings: Vec<String>,
    pub full_decomposability: Vec<FullDecompAttempt>,
    pub certificate: Option<SeesawResult>,
    pub cuts: Vec<BidecompReport>,
}

/// Ordered two-factor splits per party, combined across parties, with the
/// global factor swap deduplicated.
pub fn factorization_candidates(dims: &[usize]) -> Vec<FactorizationSpec> {
    let per_party: Vec<Vec<(usize, usize)>> = dims
        .iter()
        .map(|&d| {
            let mut v = Vec::new();
            for (a, b) in divisor_splits(d) {
                v.push((a, b));
                if a != b {
                    v.push((b, a));
                }
            }
            v
        })
        .collect();
    if per_party.iter().any(|v| v.is_empty()) {
        return vec![];
    }
    let mut combos: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for options in &per_party {
        let mut next = Vec::new();
        for combo in &combos {
            for &opt in options {
                let mut c = combo.clone();
                c.push(opt);
                next.push(c);
            }
        }
        combos = next;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for combo in combos {
        let fwd: Vec<Vec<usize>> = combo.iter().map(|&(a, b)| vec![a, b]).collect();
        let rev: Vec<Vec<usize>> = combo.iter().map(|&(a, b)| vec![b, a]).collect();
        let key = fwd.clone().min(rev);
        if seen.insert(key) {
            out.push(FactorizationSpec { per_party: fwd });
        }
    }
    out
}

/// Full classification: fully decomposable / MME but bidecomposable / GMME.
///
/// Full decomposability is certified variationally (overlap above the
/// success threshold for some two-factor split); its refutation stays
/// variational. Per-cut decomposability is decided exactly by the rank-one
/// route, so a GMME verdict here is exact.
pub fn classify(state: &PureState, cfg: &SeesawConfig) -> Result<ClassifyReport> {
    let mut warnings = Vec::new();
    let candidates = factorization_candidates(state.dims());
    if candidates.is_empty() {
        warnings.push(format!(
            "party dimensions {:?} admit no two-factor splits; classification is vacuous",
            state.dims()
        ));
        return Ok(ClassifyReport {
            verdict: Classification::Vacuous,
            warnings,
            full_decomposability: vec![],
            certificate: None,
            cuts: vec![],
        });
    }
    if state.dims().iter().any(|&d| divisor_splits(d).is_empty()) {
        warnings.push("some party dimension is prime".into());
    }
    let mut attempts = Vec::new();
    let mut certificate = None;
    for spec in candidates {
        let problem = SeesawProblem::factorize(state.clone(), spec.clone())?;
        let result = seesaw(&problem, cfg)?;
        let succeeded = result.succeeded(cfg.success_threshold);
        attempts.push(FullDecompAttempt {
            factorization: spec,
            best_overlap: result.best_overlap,
            best_fidelity: result.best_fidelity,
            succeeded,
        });
        if succeeded {
            certificate = Some(result);
            break;
        }
    }
    if certificate.is_some() {
        return Ok(ClassifyReport {
            verdict: Classification::FullyDecomposable,
            warnings,
            full_decomposability: attempts,
            certificate,
            cuts: vec![],
        });
    }
    let mut cuts = Vec::new();
    let mut any_cut = false;
    let mut all_exact = true;
    for cut in enumerate_bipartitions(state.num_parties())? {
        let report = bidecomposable_check(state, &cut, cfg)?;
        any_cut |= report.decomposable;
        if !report.decomposable {
            // the rank-one refutation covered every candidate shape
            all_exact &= true;
        }
        cuts.push(report);
    }
    let verdict = if any_cut {
        Classification::MmeBidecomposable
    } else if all_exact {
        Classification::Gmme
    } else {
        Classification::GmmeCandidate
    };
    Ok(ClassifyReport {
        verdict,
        warnings,
        full_decomposability: attempts,
        certificate: None,
        cuts,
    })
}
