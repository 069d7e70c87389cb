//! The playable pipelines: the entangled protocol with a disentangling
//! gate, the shared-state protocol without one, and the mixed identity/flip
//! strategy R, together with the reduction of any finite-strategy protocol
//! to a classical bimatrix game.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::game::{validate_distribution, BimatrixGame, PayoffPair, PayoffWeights};
use crate::quantum::{disentangler, tensor, JointUnitary, LocalUnitary, TwoQubitState};

/// Default edge count for parameter sweeps: 101 points per axis, step 0.01.
pub const DEFAULT_SWEEP_GRID: usize = 101;

/// A probability mixture over named local unitaries. Pure strategies are
/// singletons with probability 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedLocalStrategy {
    name: String,
    components: Vec<(LocalUnitary, f64)>,
}

impl MixedLocalStrategy {
    pub fn pure(name: impl Into<String>, unitary: LocalUnitary) -> Self {
        Self {
            name: name.into(),
            components: vec![(unitary, 1.0)],
        }
    }

    pub fn mixed(name: impl Into<String>, components: Vec<(LocalUnitary, f64)>) -> Result<Self> {
        let probs: Vec<f64> = components.iter().map(|(_, p)| *p).collect();
        if probs.is_empty() {
            return Err(Error::NotADistribution { sum: 0.0 });
        }
        validate_distribution(&probs)?;
        Ok(Self {
            name: name.into(),
            components,
        })
    }

    /// The cooperate move: the identity.
    pub fn cooperate() -> Self {
        Self::pure("C", LocalUnitary::identity())
    }

    /// The defect move: iY.
    pub fn defect() -> Self {
        Self::pure("D", LocalUnitary::i_pauli_y())
    }

    /// The extra quantum move: iZ.
    pub fn quantum() -> Self {
        Self::pure("Q", LocalUnitary::i_pauli_z())
    }

    /// The mixed strategy R: identity with probability `p`, bit flip X
    /// otherwise.
    pub fn random_flip(p: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability { value: p });
        }
        Self::mixed(
            "R",
            vec![
                (LocalUnitary::identity(), p),
                (LocalUnitary::pauli_x(), 1.0 - p),
            ],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[(LocalUnitary, f64)] {
        &self.components
    }
}

/// An ordered set of strategies both players may choose from.
#[derive(Debug, Clone)]
pub struct StrategyCatalog {
    entries: Vec<MixedLocalStrategy>,
}

impl StrategyCatalog {
    pub fn new(entries: Vec<MixedLocalStrategy>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidConfig("strategy catalog is empty".into()));
        }
        for (i, a) in entries.iter().enumerate() {
            for b in entries.iter().skip(i + 1) {
                if a.name() == b.name() {
                    return Err(Error::InvalidConfig(format!(
                        "duplicate strategy label: {}",
                        a.name()
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    /// The three-move set {C, D, Q}.
    pub fn cdq() -> Self {
        Self {
            entries: vec![
                MixedLocalStrategy::cooperate(),
                MixedLocalStrategy::defect(),
                MixedLocalStrategy::quantum(),
            ],
        }
    }

    pub fn entries(&self) -> &[MixedLocalStrategy] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&MixedLocalStrategy> {
        self.entries.iter().find(|s| s.name() == label)
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|s| s.name().to_string()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Everything the arbitrator fixes before play: the initial two-qubit
/// state, an optional joint unitary applied before measurement, and the
/// per-outcome payoff weights.
#[derive(Debug, Clone)]
pub struct ProtocolSpec {
    initial_state: TwoQubitState,
    pre_measurement: Option<JointUnitary>,
    weights: PayoffWeights,
}

/// (|00> - i|11>) / sqrt(2), the entangled state used with the disentangler.
pub fn ewl_initial_state() -> TwoQubitState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    TwoQubitState::new([
        Complex64::new(r, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, -r),
    ])
    .expect("entangled initial state is normalized")
}

/// (|00> + |11>) / sqrt(2), the shared state used without a disentangler.
pub fn shared_initial_state() -> TwoQubitState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    TwoQubitState::new([
        Complex64::new(r, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(r, 0.0),
    ])
    .expect("shared initial state is normalized")
}

impl ProtocolSpec {
    pub fn new(
        initial_state: TwoQubitState,
        pre_measurement: Option<JointUnitary>,
        weights: PayoffWeights,
    ) -> Self {
        Self {
            initial_state,
            pre_measurement,
            weights,
        }
    }

    /// The full quantized-dilemma pipeline: entangled state, local moves,
    /// disentangler, measurement.
    pub fn ewl(weights: PayoffWeights) -> Self {
        Self::new(ewl_initial_state(), Some(disentangler()), weights)
    }

    /// The shared-state pipeline: |00>+|11> with no gate before measurement.
    pub fn shared_state(weights: PayoffWeights) -> Self {
        Self::new(shared_initial_state(), None, weights)
    }

    pub fn initial_state(&self) -> &TwoQubitState {
        &self.initial_state
    }

    pub fn pre_measurement(&self) -> Option<&JointUnitary> {
        self.pre_measurement.as_ref()
    }

    pub fn weights(&self) -> &PayoffWeights {
        &self.weights
    }
}

fn pure_play(spec: &ProtocolSpec, alice: &LocalUnitary, bob: &LocalUnitary) -> PayoffPair {
    let mut state = tensor(alice, bob).apply(spec.initial_state());
    if let Some(gate) = spec.pre_measurement() {
        state = gate.apply(&state);
    }
    let dist = state.outcome_distribution();
    let p = dist.probabilities();
    let mut a = 0.0;
    let mut b = 0.0;
    for k in 0..4 {
        a += p[k] * spec.weights().alice()[k];
        b += p[k] * spec.weights().bob()[k];
    }
    PayoffPair::new(a, b)
}

/// Exact expected payoffs for one strategy pair, by enumeration over the
/// mixture supports. No sampling is involved.
pub fn play(
    spec: &ProtocolSpec,
    alice: &MixedLocalStrategy,
    bob: &MixedLocalStrategy,
) -> PayoffPair {
    let mut total = PayoffPair::new(0.0, 0.0);
    for (ua, pa) in alice.components() {
        for (ub, pb) in bob.components() {
            let joint_prob = pa * pb;
            if joint_prob == 0.0 {
                continue;
            }
            let pair = pure_play(spec, ua, ub);
            total.alice += joint_prob * pair.alice;
            total.bob += joint_prob * pair.bob;
        }
    }
    total
}

/// Monte Carlo estimate of [`play`], for demonstration output only. Draws
/// both the mixture components and the measurement outcomes from a seeded
/// generator, so a fixed seed reproduces the estimate exactly.
pub fn play_sampled(
    spec: &ProtocolSpec,
    alice: &MixedLocalStrategy,
    bob: &MixedLocalStrategy,
    samples: u64,
    seed: u64,
) -> PayoffPair {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut total_a = 0.0;
    let mut total_b = 0.0;
    for _ in 0..samples {
        let ua = sample_component(alice, &mut rng);
        let ub = sample_component(bob, &mut rng);
        let mut state = tensor(ua, ub).apply(spec.initial_state());
        if let Some(gate) = spec.pre_measurement() {
            state = gate.apply(&state);
        }
        let k = sample_outcome(state.outcome_distribution().probabilities(), &mut rng);
        total_a += spec.weights().alice()[k];
        total_b += spec.weights().bob()[k];
    }
    PayoffPair::new(total_a / samples as f64, total_b / samples as f64)
}

fn sample_component<'a>(strategy: &'a MixedLocalStrategy, rng: &mut StdRng) -> &'a LocalUnitary {
    let draw: f64 = rng.gen();
    let mut acc = 0.0;
    for (u, p) in strategy.components() {
        acc += p;
        if draw < acc {
            return u;
        }
    }
    &strategy
        .components()
        .last()
        .expect("mixture is non-empty")
        .0
}

fn sample_outcome(probs: &[f64; 4], rng: &mut StdRng) -> usize {
    let draw: f64 = rng.gen();
    let mut acc = 0.0;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if draw < acc {
            return k;
        }
    }
    3
}

/// Closed-form expected payoff of R(p) against R(q) on the shared state:
/// both players earn (4 - 2pq + p + q) / 2.
pub fn vb_payoff_closed_form(p: f64, q: f64) -> Result<PayoffPair> {
    for v in [p, q] {
        if !v.is_finite() || !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidProbability { value: v });
        }
    }
    let value = (4.0 - 2.0 * p * q + p + q) / 2.0;
    Ok(PayoffPair::new(value, value))
}

/// Where the closed-form payoff attains its maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct VbMaximum {
    /// The maximal value over the unit square.
    pub value: f64,
    /// Corner maximizers; the payoff is bilinear in (p, q), so the maximum
    /// over the square is attained at a vertex.
    pub maximizers: Vec<(f64, f64)>,
    /// Maximum observed on the sweep grid (equals `value`; the vertices are
    /// grid points).
    pub grid_value: f64,
    /// All grid points within 1e-9 of the maximum.
    pub grid_maximizers: Vec<(f64, f64)>,
    /// Points per axis of the sweep grid.
    pub grid_points: usize,
}

/// Maximizes the closed-form payoff over [0,1]^2 with the default grid.
pub fn vb_maximize() -> VbMaximum {
    vb_maximize_on_grid(DEFAULT_SWEEP_GRID).expect("default grid is valid")
}

/// Maximizes the closed-form payoff, cross-checking the vertex maximum with
/// an n-by-n grid sweep.
pub fn vb_maximize_on_grid(n: usize) -> Result<VbMaximum> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "sweep grid needs at least 2 points per axis, got {n}"
        )));
    }
    let vertices = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)];
    let mut value = f64::NEG_INFINITY;
    for &(p, q) in &vertices {
        value = value.max(vb_payoff_closed_form(p, q)?.alice);
    }
    let maximizers: Vec<(f64, f64)> = vertices
        .iter()
        .copied()
        .filter(|&(p, q)| {
            (vb_payoff_closed_form(p, q).expect("vertex in range").alice - value).abs() <= 1e-12
        })
        .collect();

    let mut grid_value = f64::NEG_INFINITY;
    let step = 1.0 / (n - 1) as f64;
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (i as f64 * step, j as f64 * step);
            grid_value = grid_value.max(vb_payoff_closed_form(p, q)?.alice);
        }
    }
    let mut grid_maximizers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (i as f64 * step, j as f64 * step);
            if (vb_payoff_closed_form(p, q)?.alice - grid_value).abs() <= 1e-9 {
                grid_maximizers.push((p, q));
            }
        }
    }
    Ok(VbMaximum {
        value,
        maximizers,
        grid_value,
        grid_maximizers,
        grid_points: n,
    })
}

/// The classical game induced by a protocol and a strategy catalog: cell
/// (i, j) holds the exact expected payoffs of catalog[i] versus catalog[j].
pub fn induced_matrix(spec: &ProtocolSpec, catalog: &StrategyCatalog) -> BimatrixGame {
    induced_matrix_asym(spec, catalog, catalog)
}

/// Variant with distinct row and column strategy sets (used when the two
/// players commit to different mixing parameters).
pub fn induced_matrix_asym(
    spec: &ProtocolSpec,
    rows: &StrategyCatalog,
    cols: &StrategyCatalog,
) -> BimatrixGame {
    let cells = rows
        .entries()
        .iter()
        .map(|a| cols.entries().iter().map(|b| play(spec, a, b)).collect())
        .collect();
    BimatrixGame::new(rows.labels(), cols.labels(), cells)
        .expect("induced grid is rectangular and finite")
}

/// How the four-strategy table bordering {C, D, Q} with R is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    /// Reproduce the published table verbatim: the entangled-protocol 3x3
    /// block for (a,b,c) = (3,5,1), bordered by an R row and column whose
    /// entries are all (2.5, 2.5).
    AsPublished,
    /// Build a self-consistent game instead: all four strategies played on
    /// the shared state with no disentangler, R fixed to the committed
    /// mixing parameters (p for the row player, q for the column player).
    Committed,
}

/// The combined 4x4 table for the (3,5,1) dilemma. `Committed` mode
/// requires the mixing parameters `(p, q)`.
pub fn combined_table(mode: TableMode, r_params: Option<(f64, f64)>) -> Result<BimatrixGame> {
    let params = crate::game::PayoffParams::new(3.0, 5.0, 1.0).expect("worked instance is valid");
    let weights = PayoffWeights::prisoners_dilemma(&params);
    match mode {
        TableMode::AsPublished => {
            let block = induced_matrix(&ProtocolSpec::ewl(weights), &StrategyCatalog::cdq());
            let labels: Vec<String> = ["C", "D", "Q", "R"].iter().map(|s| s.to_string()).collect();
            let border = PayoffPair::new(2.5, 2.5);
            let mut cells: Vec<Vec<PayoffPair>> = Vec::with_capacity(4);
            for i in 0..3 {
                let mut row: Vec<PayoffPair> = (0..3).map(|j| block.cell(i, j)).collect();
                row.push(border);
                cells.push(row);
            }
            cells.push(vec![border; 4]);
            BimatrixGame::new(labels.clone(), labels, cells)
        }
        TableMode::Committed => {
            let (p, q) = r_params.ok_or(Error::MissingRandomParams)?;
            let spec = ProtocolSpec::shared_state(weights);
            let mut row_entries = StrategyCatalog::cdq().entries().to_vec();
            row_entries.push(MixedLocalStrategy::random_flip(p)?);
            let mut col_entries = StrategyCatalog::cdq().entries().to_vec();
            col_entries.push(MixedLocalStrategy::random_flip(q)?);
            let rows = StrategyCatalog::new(row_entries)?;
            let cols = StrategyCatalog::new(col_entries)?;
            Ok(induced_matrix_asym(&spec, &rows, &cols))
        }
    }
}

/// Outcome of checking a game against the protocol it was induced from.
#[derive(Debug, Clone)]
pub struct ReplicationReport {
    /// Per-cell absolute deviation between the game's payoffs and the
    /// recomputed quantum expectations.
    pub cell_deviations: Vec<Vec<f64>>,
    pub max_deviation: f64,
}

impl ReplicationReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_deviation < tolerance
    }
}

/// Confirms that treating `game` as an ordinary classical bimatrix game
/// reproduces every expected payoff of the protocol: each cell is compared
/// against a fresh evaluation of [`play`]. A deviation is a report outcome,
/// not an error, so corrupted tables are diagnosed rather than rejected.
pub fn classical_replication_check(
    game: &BimatrixGame,
    spec: &ProtocolSpec,
    catalog: &StrategyCatalog,
) -> ReplicationReport {
    classical_replication_check_asym(game, spec, catalog, catalog)
}

/// Variant matching [`induced_matrix_asym`].
pub fn classical_replication_check_asym(
    game: &BimatrixGame,
    spec: &ProtocolSpec,
    rows: &StrategyCatalog,
    cols: &StrategyCatalog,
) -> ReplicationReport {
    let mut cell_deviations = Vec::with_capacity(rows.len());
    let mut max_deviation = 0.0f64;
    for (i, a) in rows.entries().iter().enumerate() {
        let mut row = Vec::with_capacity(cols.len());
        for (j, b) in cols.entries().iter().enumerate() {
            let expected = play(spec, a, b);
            let dev = game.cell(i, j).max_abs_diff(&expected);
            max_deviation = max_deviation.max(dev);
            row.push(dev);
        }
        cell_deviations.push(row);
    }
    ReplicationReport {
        cell_deviations,
        max_deviation,
    }
}
