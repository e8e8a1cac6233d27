//! Named states and gates: maximally entangled pairs, GHZ states, weighted
//! graph and hypergraph states, witness extremizers, and the graph
//! transformations used to relate them.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::PureState;

/// A weighted graph with optional hyperedges on `n` vertices of local
/// dimension `dim`. Edge weights are exact rationals; a weight `w` on edge
/// `{i,j}` applies the phase `ω^{w·gᵢ·gⱼ}` with `ω = e^{2πi/dim}`, and a
/// hyperedge applies `ω^{w·∏ g}` over its vertex digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub n: usize,
    pub dim: usize,
    pub edges: Vec<(usize, usize, Rational64)>,
    pub hyperedges: Vec<(Vec<usize>, Rational64)>,
}

impl GraphSpec {
    pub fn new(
        n: usize,
        dim: usize,
        edges: Vec<(usize, usize, Rational64)>,
        hyperedges: Vec<(Vec<usize>, Rational64)>,
    ) -> Result<Self> {
        if n == 0 || dim < 2 {
            return Err(Error::InvalidSpec("need n >= 1 vertices and dim >= 2".into()));
        }
        for &(i, j, w) in &edges {
            if i == j {
                return Err(Error::InvalidSpec(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidSpec(format!("edge ({i},{j}) out of range")));
            }
            check_weight(w, dim)?;
        }
        for (vs, w) in &hyperedges {
            if vs.len() < 2 {
                return Err(Error::InvalidSpec("hyperedge needs >= 2 vertices".into()));
            }
            let mut sorted = vs.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != vs.len() || vs.iter().any(|&v| v >= n) {
                return Err(Error::InvalidSpec("bad hyperedge vertex set".into()));
            }
            check_weight(*w, dim)?;
        }
        Ok(Self {
            n,
            dim,
            edges,
            hyperedges,
        })
    }

    /// Plain graph from unit-weight edges.
    pub fn unweighted(n: usize, dim: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            dim,
            edges
                .iter()
                .map(|&(i, j)| (i, j, Rational64::one()))
                .collect(),
            vec![],
        )
    }

    /// Edge set as canonical (min,max) pairs, unit-weight edges only.
    pub fn edge_set(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(i, j, _)| (i.min(j), i.max(j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<GraphSpec> {
        if perm.len() != self.n {
            return Err(Error::InvalidPermutation(self.n));
        }
        GraphSpec::new(
            self.n,
            self.dim,
            self.edges
                .iter()
                .map(|&(i, j, w)| (perm[i], perm[j], w))
                .collect(),
            self.hyperedges
                .iter()
                .map(|(vs, w)| (vs.iter().map(|&v| perm[v]).collect(), *w))
                .collect(),
        )
    }
}

fn check_weight(w: Rational64, dim: usize) -> Result<()> {
    let den = *w.denom();
    if den <= 0 || (2 * dim as i64) % den != 0 {
        return Err(Error::InvalidSpec(format!(
            "weight {w} has denominator not dividing 2*dim = {}",
            2 * dim
        )));
    }
    Ok(())
}

/// A diagonal phase gate on a set of target parties: the joint basis state
/// with digits `g` picks up `ω^{weight·∏ g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSpec {
    pub targets: Vec<usize>,
    pub weight: Rational64,
}

impl GateSpec {
    /// The gate as a dense diagonal matrix on `dim^targets.len()` levels.
    pub fn matrix(&self, dim: usize) -> DMatrix<Complex64> {
        let k = self.targets.len();
        let total = dim.pow(k as u32);
        let mut m = DMatrix::from_element(total, total, Complex64::new(0.0, 0.0));
        for idx in 0..total {
            let mut rem = idx;
            let mut prod = 1i64;
            for _ in 0..k {
                prod *= (rem % dim) as i64;
                rem /= dim;
            }
            m[(idx, idx)] = phase(self.weight * Rational64::from_integer(prod), dim);
        }
        m
    }
}

fn phase(expo: Rational64, dim: usize) -> Complex64 {
    let theta =
        2.0 * std::f64::consts::PI * (*expo.numer() as f64) / (*expo.denom() as f64 * dim as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// Single-qudit `Z^p = diag(ω^{q·p})`.
pub fn z_power(dim: usize, p: Rational64) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            phase(p * Rational64::from_integer(i as i64), dim)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Controlled gate in the |±⟩ basis of a qubit control:
/// `|+⟩⟨+| ⊗ 1 + |−⟩⟨−| ⊗ inner`.
pub fn plus_controlled(inner: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let d = inner.nrows();
    let mut out = DMatrix::from_element(2 * d, 2 * d, Complex64::new(0.0, 0.0));
    let half = Complex64::new(0.5, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            // <a|+><+|b> = 1/2, <a|-><-|b> = ±1/2
            let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..d {
                for j in 0..d {
                    let id = if i == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    out[(a * d + i, b * d + j)] = half * (id + sign * inner[(i, j)]);
                }
            }
        }
    }
    out
}

/// `(1/√D) Σ |ii⟩` on dims `[D, D]`.
pub fn maximally_entangled(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(Error::InvalidSpec("need local dimension >= 2".into()));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        amps[i * d + i] = Complex64::new(1.0, 0.0);
    }
    PureState::new(vec![d, d], amps, true)
}

/// Rank-`rank` maximally entangled state of two `d`-level systems:
/// `(1/√rank) Σ_{i<rank} |ii⟩`.
pub fn maximally_entangled_rank(d: usize, rank: usize) -> Result<PureState> {
    if d < 2 || rank == 0 || rank > d {
        return Err(Error::InvalidSpec(format!(
            "rank {rank} invalid for local dimension {d}"
        )));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..rank {
        amps[i * d + i] = Complex64::new(1.0, 0.0);
    }
    PureState::new(vec![d, d], amps, true)
}

/// N-party GHZ state in local dimension D.
pub fn ghz(n: usize, d: usize) -> Result<PureState> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidSpec("need n >= 2 parties, dim >= 2".into()));
    }
    let total = d.checked_pow(n as u32).ok_or_else(|| {
        Error::InvalidSpec(format!("{d}^{n} overflows"))
    })?;
    let mut amps = vec![Complex64::new(0.0, 0.0); total];
    let stride = (total - 1) / (d - 1); // 1 + d + d^2 + ... gives |ll...l>
    for l in 0..d {
        amps[l * stride] = Complex64::new(1.0, 0.0);
    }
    PureState::new(vec![d; n], amps, true)
}

/// Applies every edge and hyperedge phase of `g` to `|+⟩^{⊗n}`.
///
/// Phase exponents are accumulated as exact rationals per basis state and
/// exponentiated once, so repeated fractional weights do not drift.
pub fn weighted_graph_state(g: &GraphSpec) -> Result<PureState> {
    let total = g
        .dim
        .checked_pow(g.n as u32)
        .ok_or_else(|| Error::InvalidSpec("graph state too large".into()))?;
    let mut digits = vec![0usize; g.n];
    let mut amps = Vec::with_capacity(total);
    for idx in 0..total {
        crate::statevec::digits_of(&vec![g.dim; g.n], idx, &mut digits);
        let mut expo = Rational64::zero();
        for &(i, j, w) in &g.edges {
            expo += w * Rational64::from_integer((digits[i] * digits[j]) as i64);
        }
        for (vs, w) in &g.hyperedges {
            let mut prod = 1i64;
            for &v in vs {
                prod *= digits[v] as i64;
                if prod == 0 {
                    break;
                }
            }
            expo += *w * Rational64::from_integer(prod);
        }
        amps.push(phase(expo, g.dim));
    }
    PureState::new(vec![g.dim; g.n], amps, true)
}

/// Star graph: vertex 0 joined to every other vertex with weight 1.
pub fn star_graph(n: usize, dim: usize) -> Result<GraphSpec> {
    if n < 2 {
        return Err(Error::InvalidSpec("star needs >= 2 vertices".into()));
    }
    GraphSpec::unweighted(n, dim, &(1..n).map(|q| (0, q)).collect::<Vec<_>>())
}

pub fn star_graph_state(n: usize, dim: usize) -> Result<PureState> {
    weighted_graph_state(&star_graph(n, dim)?)
}

/// The four-ququart chain graph state (vertices A-B-C-D, weight-1 edges).
pub fn ququart_chain() -> PureState {
    let g = GraphSpec::unweighted(4, 4, &[(0, 1), (1, 2), (2, 3)]).expect("static spec");
    weighted_graph_state(&g).expect("static spec")
}

/// The eight-qubit weighted-graph encoding of [`ququart_chain`], on qubits
/// (A1,A2,B1,B2,C1,C2,D1,D2): six unit edges and three half-weight edges.
pub fn ququart_chain_encoded() -> GraphSpec {
    let h = Rational64::new(1, 2);
    let one = Rational64::one();
    GraphSpec::new(
        8,
        2,
        vec![
            (0, 2, one),
            (1, 3, one),
            (3, 5, one),
            (2, 4, one),
            (4, 6, one),
            (5, 7, one),
            (1, 2, h),
            (2, 5, h),
            (5, 6, h),
        ],
        vec![],
    )
    .expect("static spec")
}

/// Three-ququart state built from the four sign patterns
/// `u_j ∈ {±1}^4` as `Σ_j |u_j⟩|j⟩|u_j⟩ − 2|333⟩`, normalized.
pub fn example3_state() -> PureState {
    const U: [[f64; 4]; 4] = [
        [1.0, 1.0, 1.0, 1.0],
        [1.0, -1.0, 1.0, -1.0],
        [1.0, 1.0, -1.0, -1.0],
        [1.0, -1.0, -1.0, 1.0],
    ];
    let mut amps = vec![Complex64::new(0.0, 0.0); 64];
    for j in 0..4 {
        for a in 0..4 {
            for c in 0..4 {
                amps[a * 16 + j * 4 + c] += Complex64::new(U[j][a] * U[j][c], 0.0);
            }
        }
    }
    amps[63] -= Complex64::new(2.0, 0.0);
    PureState::new(vec![4, 4, 4], amps, true).expect("static state")
}

/// Six-qubit hypergraph form of [`example3_state`]: CZ edges
/// {1,3},{3,5},{2,4},{4,6} plus one hyperedge over all six vertices
/// (1-based labels). Pairing qubits (1,2),(3,4),(5,6) into ququarts gives a
/// state locally unitarily equivalent to [`example3_state`].
pub fn example3_hypergraph() -> GraphSpec {
    let one = Rational64::one();
    GraphSpec::new(
        6,
        2,
        vec![(0, 2, one), (2, 4, one), (1, 3, one), (3, 5, one)],
        vec![(vec![0, 1, 2, 3, 4, 5], one)],
    )
    .expect("static spec")
}

/// The two-ququart witness extremizers: the rank-3 state
/// `(|00⟩+|11⟩+|22⟩)/√3` and the rank-4 state
/// `√(3/4)|00⟩ + (1/(2√3))(|11⟩+|22⟩+|33⟩)`.
pub fn xi_states() -> (PureState, PureState) {
    let mut a1 = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..3 {
        a1[i * 4 + i] = Complex64::new(1.0, 0.0);
    }
    let xi1 = PureState::new(vec![4, 4], a1, true).expect("static state");

    let mut a2 = vec![Complex64::new(0.0, 0.0); 16];
    a2[0] = Complex64::new((3.0f64 / 4.0).sqrt(), 0.0);
    let small = 1.0 / (2.0 * 3.0f64.sqrt());
    for i in 1..4 {
        a2[i * 4 + i] = Complex64::new(small, 0.0);
    }
    let xi2 = PureState::new(vec![4, 4], a2, true).expect("static state");
    (xi1, xi2)
}

/// The six-qubit absolutely maximally entangled graph state: every reduction
/// to one, two, or three qubits is maximally mixed.
pub fn six_qubit_ame_graph() -> GraphSpec {
    GraphSpec::unweighted(
        6,
        2,
        &[
            (0, 1),
            (2, 3),
            (4, 5),
            (1, 2),
            (2, 5),
            (3, 4),
            (1, 3),
            (2, 4),
            (0, 5),
            (0, 2),
        ],
    )
    .expect("static spec")
}

pub fn six_qubit_ame() -> PureState {
    weighted_graph_state(&six_qubit_ame_graph()).expect("static spec")
}

/// Local-complementation image of [`six_qubit_ame_graph`] under
/// [`AME6_LC_SEQUENCE`]. After deleting its within-ququart edges
/// {0,1},{2,3},{4,5} (local unitaries on the ququarts (0,1)(2,3)(4,5)), the
/// remaining edges split into two vertex-disjoint triangles, exhibiting the
/// decomposition into two three-qubit factors.
pub fn six_qubit_ame_lc_image() -> GraphSpec {
    GraphSpec::unweighted(
        6,
        2,
        &[
            (0, 1),
            (4, 5),
            (0, 3),
            (1, 2),
            (2, 5),
            (3, 4),
            (0, 4),
            (1, 5),
            (2, 3),
        ],
    )
    .expect("static spec")
}

/// Vertices (0-based) whose successive local complementation maps
/// [`six_qubit_ame_graph`] onto [`six_qubit_ame_lc_image`].
pub const AME6_LC_SEQUENCE: [usize; 4] = [4, 3, 1, 0];

/// Complements the neighborhood of `v`: every pair of neighbors of `v`
/// toggles its edge. Only defined for unweighted qubit graphs.
pub fn local_complement(g: &GraphSpec, v: usize) -> Result<GraphSpec> {
    if g.dim != 2 {
        return Err(Error::Unsupported("qubit graphs (dim 2)"));
    }
    if !g.hyperedges.is_empty() || g.edges.iter().any(|&(_, _, w)| !w.is_one()) {
        return Err(Error::Unsupported("unit-weight edges without hyperedges"));
    }
    if v >= g.n {
        return Err(Error::InvalidSpec(format!("vertex {v} out of range")));
    }
    let mut edges: std::collections::BTreeSet<(usize, usize)> =
        g.edge_set().into_iter().collect();
    let nbrs: Vec<usize> = (0..g.n)
        .filter(|&u| u != v && edges.contains(&(u.min(v), u.max(v))))
        .collect();
    for (a, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[a + 1..] {
            let e = (x.min(y), x.max(y));
            if !edges.remove(&e) {
                edges.insert(e);
            }
        }
    }
    GraphSpec::unweighted(g.n, 2, &edges.into_iter().collect::<Vec<_>>())
}

/// Weight string for graph JSON: `"1"`, `"1/2"`, `"-3/2"`, ...
fn ratio_to_string(r: Rational64) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_from_string(s: &str) -> Result<Rational64> {
    let parse_i = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::InvalidSpec(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (parse_i(p)?, parse_i(q)?);
            if q == 0 {
                return Err(Error::InvalidSpec("zero denominator".into()));
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(parse_i(s)?)),
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    dim: usize,
    edges: Vec<(usize, usize, String)>,
    #[serde(default)]
    hyperedges: Vec<(Vec<usize>, String)>,
}

impl GraphSpec {
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            dim: self.dim,
            edges: self
                .edges
                .iter()
                .map(|&(i, j, w)| (i, j, ratio_to_string(w)))
                .collect(),
            hyperedges: self
                .hyperedges
                .iter()
                .map(|(vs, w)| (vs.clone(), ratio_to_string(*w)))
                .collect(),
        };
        serde_json::to_string(&file).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        GraphSpec::new(
            file.n,
            file.dim,
            file.edges
                .iter()
                .map(|(i, j, w)| Ok((*i, *j, ratio_from_string(w)?)))
                .collect::<Result<_>>()?,
            file.hyperedges
                .iter()
                .map(|(vs, w)| Ok((vs.clone(), ratio_from_string(w)?)))
                .collect::<Result<_>>()?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::FactorizationSpec;
    use approx::assert_relative_eq;

    #[test]
    fn maxent_amplitudes() {
        for d in [2usize, 3, 4] {
            let s = maximally_entangled(d).unwrap();
            let want = 1.0 / (d as f64).sqrt();
            for i in 0..d {
                assert_relative_eq!(s.amps()[i * d + i].re, want, epsilon = 1e-15);
            }
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
        assert!(maximally_entangled(1).is_err());
    }

    #[test]
    fn ghz_places_diagonal_amplitudes() {
        let g = ghz(2, 2).unwrap();
        assert_eq!(g, maximally_entangled(2).unwrap());

        let g = ghz(4, 2).unwrap();
        let w = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(g.amps()[0].re, w, epsilon = 1e-15);
        assert_relative_eq!(g.amps()[15].re, w, epsilon = 1e-15);

        let g = ghz(3, 6).unwrap();
        for l in 0..6 {
            let idx = l * 36 + l * 6 + l;
            assert_relative_eq!(g.amps()[idx].re, 1.0 / 6f64.sqrt(), epsilon = 1e-15);
        }
        assert!(ghz(1, 2).is_err());
    }

    #[test]
    fn ghz6_resorts_into_ghz2_times_ghz3() {
        let g6 = ghz(3, 6).unwrap();
        let reg = g6
            .regroup(&FactorizationSpec::uniform(3, &[2, 3]).unwrap())
            .unwrap();
        let resorted = reg.permute_parties(&[0, 2, 4, 1, 3, 5]).unwrap();
        let reference = ghz(3, 2).unwrap().tensor(&ghz(3, 3).unwrap());
        let ov = resorted.overlap(&reference).unwrap();
        assert_relative_eq!(ov.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn single_cz_edge_on_two_qubits() {
        let g = GraphSpec::unweighted(2, 2, &[(0, 1)]).unwrap();
        let s = weighted_graph_state(&g).unwrap();
        let amps = s.amps();
        for (idx, want) in [(0, 0.5), (1, 0.5), (2, 0.5), (3, -0.5)] {
            assert_relative_eq!(amps[idx].re, want, epsilon = 1e-15);
            assert_relative_eq!(amps[idx].im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn zero_weight_graph_is_plus_product() {
        let g = GraphSpec::new(
            3,
            3,
            vec![(0, 1, Rational64::zero()), (1, 2, Rational64::zero())],
            vec![],
        )
        .unwrap();
        let s = weighted_graph_state(&g).unwrap();
        for a in s.amps() {
            assert_relative_eq!(a.re, 1.0 / 27f64.sqrt(), epsilon = 1e-15);
            assert_relative_eq!(a.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn chain_amplitudes_follow_edge_phases() {
        let s = ququart_chain();
        let i = Complex64::new(0.0, 1.0);
        for idx in 0..256 {
            let (a, b, c, d) = (idx / 64, (idx / 16) % 4, (idx / 4) % 4, idx % 4);
            let want = i.powu((a * b + b * c + c * d) as u32) / Complex64::new(16.0, 0.0);
            assert!((s.amps()[idx] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn chain_encoding_matches_regrouped_chain() {
        // digit assignment: A -> 2A1+A2, B -> 2B2+B1, C -> 2C1+C2, D -> 2D2+D1
        let encoded = weighted_graph_state(&ququart_chain_encoded()).unwrap();
        let reg = ququart_chain()
            .regroup(&FactorizationSpec::uniform(4, &[2, 2]).unwrap())
            .unwrap();
        let matched = reg.permute_parties(&[0, 1, 3, 2, 4, 5, 7, 6]).unwrap();
        let ov = encoded.overlap(&matched).unwrap();
        assert_relative_eq!(ov.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn vertical_unitaries_remove_the_outer_half_edges() {
        // applying the |±⟩-controlled Z^{3/2} on (A1,A2) and (D2,D1) leaves
        // the decomposable six-edge graph with a single central half edge
        let u = plus_controlled(&z_power(2, Rational64::new(3, 2)));
        let g2 = weighted_graph_state(&ququart_chain_encoded()).unwrap();
        let stepped = g2
            .apply_unitary_on(&[0, 1], &u)
            .unwrap()
            .apply_unitary_on(&[7, 6], &u)
            .unwrap();
        let mut target = ququart_chain_encoded();
        target.edges.retain(|&(_, _, w)| w.is_one());
        target.edges.push((2, 5, Rational64::new(1, 2)));
        let want = weighted_graph_state(&target).unwrap();
        assert_relative_eq!(
            stepped.overlap(&want).unwrap().norm(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn example3_unnormalized_pattern() {
        let s = example3_state();
        // norm of the raw pattern is 8, so |000⟩ carries 1/8
        assert_relative_eq!(s.amps()[0].re, 0.125, epsilon = 1e-15);
        assert_relative_eq!(s.amps()[63].re, -0.125, epsilon = 1e-15);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn xi_state_amplitudes() {
        let (xi1, xi2) = xi_states();
        assert_relative_eq!(xi1.amps()[0].re, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(xi1.amps()[15].re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(xi2.amps()[0].re, 0.75f64.sqrt(), epsilon = 1e-15);
        // <xi1|xi2> = sqrt(3/4)/sqrt3 + 2/(2 sqrt3 sqrt3) = 5/6
        let ov = xi1.overlap(&xi2).unwrap();
        assert_relative_eq!(ov.re, 5.0 / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn ame_reductions_are_maximally_mixed() {
        let s = six_qubit_ame();
        for k in 1..=3usize {
            let mut keeps: Vec<Vec<usize>> = vec![];
            for a in 0..6 {
                for b in a + 1..6 {
                    for c in b + 1..6 {
                        match k {
                            1 => keeps.push(vec![a]),
                            2 => keeps.push(vec![a, b]),
                            _ => keeps.push(vec![a, b, c]),
                        }
                    }
                }
            }
            keeps.sort();
            keeps.dedup();
            for keep in keeps {
                let rho = s.reduced(&keep).unwrap();
                let d = 1 << keep.len();
                let mut dev: f64 = 0.0;
                for i in 0..d {
                    for j in 0..d {
                        let want = if i == j { 1.0 / d as f64 } else { 0.0 };
                        dev =
                            dev.max((rho.matrix()[(i, j)] - Complex64::new(want, 0.0)).norm());
                    }
                }
                assert!(dev < 1e-10, "keep {keep:?} deviates {dev}");
            }
        }
    }

    #[test]
    fn local_complement_small_graphs() {
        // triangle: LC at vertex 0 removes the opposite edge
        let tri = GraphSpec::unweighted(3, 2, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let lc = local_complement(&tri, 0).unwrap();
        assert_eq!(lc.edge_set(), vec![(0, 1), (0, 2)]);

        // path 0-1-2: LC at the middle adds the closing edge
        let path = GraphSpec::unweighted(3, 2, &[(0, 1), (1, 2)]).unwrap();
        let lc = local_complement(&path, 1).unwrap();
        assert_eq!(lc.edge_set(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn local_complement_is_involution() {
        let g = six_qubit_ame_graph();
        for v in 0..6 {
            let twice = local_complement(&local_complement(&g, v).unwrap(), v).unwrap();
            assert_eq!(twice.edge_set(), g.edge_set());
        }
    }

    #[test]
    fn local_complement_rejects_weighted_input() {
        let g = ququart_chain_encoded();
        assert!(local_complement(&g, 0).is_err());
        let h = example3_hypergraph();
        assert!(local_complement(&h, 0).is_err());
    }

    #[test]
    fn ame_lc_sequence_reaches_the_split_form() {
        let mut g = six_qubit_ame_graph();
        for v in AME6_LC_SEQUENCE {
            g = local_complement(&g, v).unwrap();
        }
        assert_eq!(g.edge_set(), six_qubit_ame_lc_image().edge_set());
    }

    #[test]
    fn lc_image_splits_into_triangles_after_vertical_edges() {
        let mut edges = six_qubit_ame_lc_image().edge_set();
        edges.retain(|&e| ![(0, 1), (2, 3), (4, 5)].contains(&e));
        let (left, right): (Vec<_>, Vec<_>) = edges
            .iter()
            .partition(|&&(a, b)| [0, 3, 4].contains(&a) && [0, 3, 4].contains(&b));
        assert_eq!(left.len(), 3);
        assert_eq!(right.len(), 3);
        assert!(right
            .iter()
            .all(|&&(a, b)| [1, 2, 5].contains(&a) && [1, 2, 5].contains(&b)));
    }

    #[test]
    fn star_equals_ghz_up_to_local_rotation_of_leaves() {
        // |G_star> = sum_p |p> |+_p>^{n-1}; rotating each leaf by the Fourier
        // matrix sends |+_p> to |p>
        let n = 3;
        let d = 3;
        let star = star_graph_state(n, d).unwrap();
        let omega = 2.0 * std::f64::consts::PI / d as f64;
        let fourier_dag = DMatrix::from_fn(d, d, |i, j| {
            let th = -omega * (i * j) as f64;
            Complex64::new(th.cos(), th.sin()) / Complex64::new((d as f64).sqrt(), 0.0)
        });
        let mut rotated = star;
        for leaf in 1..n {
            rotated = rotated.apply_local_unitary(leaf, &fourier_dag).unwrap();
        }
        let ov = rotated.overlap(&ghz(n, d).unwrap()).unwrap();
        assert_relative_eq!(ov.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn graph_construction_commutes_with_relabeling() {
        let g = six_qubit_ame_graph();
        let perm = [3usize, 0, 4, 1, 5, 2];
        // party k of the permuted state is party perm[k] of the original;
        // relabel sends vertex v to position inv[v]
        let mut inv = [0usize; 6];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let a = weighted_graph_state(&g.relabel(&inv).unwrap()).unwrap();
        let b = weighted_graph_state(&g)
            .unwrap()
            .permute_parties(&perm)
            .unwrap();
        assert_relative_eq!(a.overlap(&b).unwrap().norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn graph_json_round_trip() {
        let g = ququart_chain_encoded();
        let text = g.to_json();
        assert!(text.contains("\"1/2\""));
        let back = GraphSpec::from_json(&text).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn graph_spec_rejects_bad_weights_and_loops() {
        assert!(GraphSpec::new(2, 2, vec![(0, 0, Rational64::one())], vec![]).is_err());
        assert!(GraphSpec::new(2, 2, vec![(0, 1, Rational64::new(1, 3))], vec![]).is_err());
        assert!(GraphSpec::new(3, 2, vec![], vec![(vec![0], Rational64::one())]).is_err());
    }
}
