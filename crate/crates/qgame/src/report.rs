//! Reproduction harness and machine-readable reports: the claim audit
//! suite, the JSON game schema, table rendering, and the typed command
//! surface the CLI binary dispatches to.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::equilibrium::{
    dominance, mixed_2x2, pure_nash, support_enumeration, DominanceKind, EquilibriumKind,
    MixedEquilibrium, PureEquilibrium,
};
use crate::error::{Error, Result};
use crate::game::{BimatrixGame, PayoffPair, PayoffParams, PayoffWeights, TOL_PAYOFF};
use crate::protocol::{
    classical_replication_check, classical_replication_check_asym, combined_table, induced_matrix,
    play, play_sampled, vb_maximize_on_grid, vb_payoff_closed_form, MixedLocalStrategy,
    ProtocolSpec, StrategyCatalog, TableMode,
};
use crate::quantum::{disentangler, TwoQubitState};

/// Environment variable overriding the default report tolerance.
pub const TOLERANCE_ENV_VAR: &str = "QGAME_TOLERANCE";

/// The report tolerance: 1e-9 unless `QGAME_TOLERANCE` says otherwise.
pub fn report_tolerance() -> Result<f64> {
    match std::env::var(TOLERANCE_ENV_VAR) {
        Ok(raw) => parse_tolerance(&raw),
        Err(_) => Ok(TOL_PAYOFF),
    }
}

pub fn parse_tolerance(raw: &str) -> Result<f64> {
    let value: f64 = raw.trim().parse().map_err(|_| {
        Error::InvalidConfig(format!(
            "{TOLERANCE_ENV_VAR} must be a positive number, got {raw:?}"
        ))
    })?;
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "{TOLERANCE_ENV_VAR} must be positive and finite, got {raw:?}"
        )));
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// game JSON schema

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameLabels {
    pub row: Vec<String>,
    pub col: Vec<String>,
}

/// Wire format for bimatrix games: row-major cells of [row payoff,
/// column payoff]. Floats round-trip exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameJson {
    pub labels: GameLabels,
    pub cells: Vec<Vec<[f64; 2]>>,
}

impl GameJson {
    pub fn from_game(game: &BimatrixGame) -> Self {
        Self {
            labels: GameLabels {
                row: game.row_labels().to_vec(),
                col: game.col_labels().to_vec(),
            },
            cells: game
                .cells()
                .iter()
                .map(|row| row.iter().map(|p| [p.alice, p.bob]).collect())
                .collect(),
        }
    }

    pub fn into_game(self) -> Result<BimatrixGame> {
        BimatrixGame::new(
            self.labels.row,
            self.labels.col,
            self.cells
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|[a, b]| PayoffPair::new(a, b))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidConfig(format!("malformed game JSON: {e}")))
    }
}

// ---------------------------------------------------------------------------
// claim audit

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    FlaggedDiscrepancy,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "MISMATCH",
            Verdict::FlaggedDiscrepancy => "flagged",
        }
    }
}

/// One audited value: what the source prints, what the engine computes,
/// and how far apart they are.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub provenance: String,
    pub expected: Value,
    pub computed: Value,
    pub deviation: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimReport {
    fn checked(
        id: &str,
        provenance: &str,
        expected: Value,
        computed: Value,
        deviation: f64,
        tolerance: f64,
    ) -> Self {
        let verdict = if deviation < tolerance {
            Verdict::Match
        } else {
            Verdict::Mismatch
        };
        Self {
            id: id.into(),
            provenance: provenance.into(),
            expected,
            computed,
            deviation,
            verdict,
            note: None,
        }
    }

    fn flagged(
        id: &str,
        provenance: &str,
        expected: Value,
        computed: Value,
        deviation: f64,
        note: &str,
    ) -> Self {
        Self {
            id: id.into(),
            provenance: provenance.into(),
            expected,
            computed,
            deviation,
            verdict: Verdict::FlaggedDiscrepancy,
            note: Some(note.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportSummary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
    pub flagged: usize,
}

/// The full audit: every claim plus the computed tables they refer to.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub tolerance: f64,
    pub grid_points: usize,
    pub summary: ReportSummary,
    pub claims: Vec<ClaimReport>,
    pub tables: BTreeMap<String, GameJson>,
}

impl ReportBundle {
    pub fn all_non_flagged_match(&self) -> bool {
        self.claims.iter().all(|c| c.verdict != Verdict::Mismatch)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_non_flagged_match() {
            0
        } else {
            1
        }
    }
}

fn pair_value(p: PayoffPair) -> Value {
    json!([p.alice, p.bob])
}

fn grid_value(cells: &[Vec<(f64, f64)>]) -> Value {
    json!(cells
        .iter()
        .map(|row| row.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn game_value(game: &BimatrixGame) -> Value {
    serde_json::to_value(GameJson::from_game(game)).expect("game serializes")
}

/// Largest cellwise distance between a game and a reference grid.
fn max_grid_deviation(game: &BimatrixGame, reference: &[Vec<(f64, f64)>]) -> f64 {
    let mut max = 0.0f64;
    for (i, row) in reference.iter().enumerate() {
        for (j, &(a, b)) in row.iter().enumerate() {
            max = max.max(game.cell(i, j).max_abs_diff(&PayoffPair::new(a, b)));
        }
    }
    max
}

fn equilibrium_value(eqs: &[PureEquilibrium], game: &BimatrixGame) -> Value {
    json!(eqs
        .iter()
        .map(|e| {
            json!({
                "cell": [game.row_labels()[e.row].clone(), game.col_labels()[e.col].clone()],
                "kind": match e.kind { EquilibriumKind::Strict => "strict", EquilibriumKind::Weak => "weak" },
                "payoffs": [e.payoffs.alice, e.payoffs.bob],
            })
        })
        .collect::<Vec<_>>())
}

/// Structural comparison of pure equilibria: 0 when cells and kinds agree
/// (payoff distance otherwise bounded by it), 1 on a structural mismatch.
fn equilibrium_deviation(
    expected: &[(&str, &str, EquilibriumKind, (f64, f64))],
    found: &[PureEquilibrium],
    game: &BimatrixGame,
) -> f64 {
    if expected.len() != found.len() {
        return 1.0;
    }
    let mut dev = 0.0f64;
    for (exp, eq) in expected.iter().zip(found) {
        let labels_match = game.row_labels()[eq.row] == exp.0 && game.col_labels()[eq.col] == exp.1;
        if !labels_match || eq.kind != exp.2 {
            return 1.0;
        }
        dev = dev.max(
            eq.payoffs
                .max_abs_diff(&PayoffPair::new(exp.3 .0, exp.3 .1)),
        );
    }
    dev
}

fn printed_extended_matrix(a: f64, b: f64, c: f64) -> Vec<Vec<(f64, f64)>> {
    vec![
        vec![(a, a), (0.0, b), (c, c)],
        vec![(b, 0.0), (c, c), (0.0, b)],
        vec![(c, c), (b, 0.0), (a, a)],
    ]
}

fn printed_combined_table() -> Vec<Vec<(f64, f64)>> {
    let r = (2.5, 2.5);
    vec![
        vec![(3.0, 3.0), (0.0, 5.0), (1.0, 1.0), r],
        vec![(5.0, 0.0), (1.0, 1.0), (0.0, 5.0), r],
        vec![(1.0, 1.0), (5.0, 0.0), (3.0, 3.0), r],
        vec![r, r, r, r],
    ]
}

/// The shared-state submatrix as printed, including the two cells the
/// engine disputes.
fn printed_shared_submatrix() -> Vec<Vec<(f64, f64)>> {
    vec![
        vec![(2.0, 2.0), (2.5, 2.5), (2.5, 2.5)],
        vec![(2.5, 2.5), (2.0, 2.0), (2.5, 2.5)],
        vec![(2.5, 2.5), (2.5, 2.5), (2.0, 2.0)],
    ]
}

/// Runs every audited claim at the given tolerance, sweeping parameter
/// grids with `grid` points per axis.
pub fn run_claim_suite(tolerance: f64, grid: usize) -> Result<ReportBundle> {
    if grid < 2 {
        return Err(Error::InvalidConfig(format!(
            "sweep grid needs at least 2 points per axis, got {grid}"
        )));
    }
    let params = PayoffParams::new(3.0, 5.0, 1.0).expect("default instance is valid");
    let weights = PayoffWeights::prisoners_dilemma(&params);
    let catalog = StrategyCatalog::cdq();
    let ewl_spec = ProtocolSpec::ewl(weights.clone());
    let shared_spec = ProtocolSpec::shared_state(weights.clone());

    let mut claims = Vec::new();
    let mut tables = BTreeMap::new();

    // 1. extended matrix over {C, D, Q}
    let ewl_game = induced_matrix(&ewl_spec, &catalog);
    let printed = printed_extended_matrix(3.0, 5.0, 1.0);
    claims.push(ClaimReport::checked(
        "ewl-matrix",
        "printed extended payoff matrix over {C,D,Q} with (a,b,c)=(3,5,1)",
        grid_value(&printed),
        game_value(&ewl_game),
        max_grid_deviation(&ewl_game, &printed),
        tolerance,
    ));
    tables.insert("ewl-matrix".to_string(), GameJson::from_game(&ewl_game));

    // 2. simulated R(p) vs R(q) equals the closed form on the whole grid
    let step = 1.0 / (grid - 1) as f64;
    let mut eq4_dev = 0.0f64;
    for i in 0..grid {
        for j in 0..grid {
            let (p, q) = (i as f64 * step, j as f64 * step);
            let simulated = play(
                &shared_spec,
                &MixedLocalStrategy::random_flip(p)?,
                &MixedLocalStrategy::random_flip(q)?,
            );
            let formula = vb_payoff_closed_form(p, q)?;
            eq4_dev = eq4_dev
                .max(simulated.max_abs_diff(&formula))
                .max((simulated.alice - simulated.bob).abs());
        }
    }
    claims.push(ClaimReport::checked(
        "eq4-grid",
        "closed-form payoff (4 - 2pq + p + q)/2 for R(p) vs R(q) on the shared state",
        json!(0.0),
        json!(eq4_dev),
        eq4_dev,
        tolerance,
    ));

    // 3. the closed form peaks at 2.5, only at (1,0) and (0,1)
    let maximum = vb_maximize_on_grid(grid)?;
    let corners_ok = maximum.maximizers == vec![(0.0, 1.0), (1.0, 0.0)]
        && maximum.grid_maximizers == vec![(0.0, 1.0), (1.0, 0.0)];
    let max_dev = if corners_ok {
        (maximum.value - 2.5)
            .abs()
            .max((maximum.grid_value - 2.5).abs())
    } else {
        1.0
    };
    claims.push(ClaimReport::checked(
        "maxEq4",
        "printed maximum 2.5 of the closed-form payoff, attained at (1,0) and (0,1)",
        json!({"value": 2.5, "maximizers": [[0.0, 1.0], [1.0, 0.0]]}),
        json!({
            "value": maximum.value,
            "maximizers": maximum.maximizers,
            "grid_maximizers": maximum.grid_maximizers,
        }),
        max_dev,
        tolerance,
    ));

    // 4. both players committing to the identity earn 2 each
    let at_ones = vb_payoff_closed_form(1.0, 1.0)?;
    claims.push(ClaimReport::checked(
        "eq4-at-(1,1)",
        "printed payoff (2,2) when both players keep the identity",
        pair_value(PayoffPair::new(2.0, 2.0)),
        pair_value(at_ones),
        at_ones.max_abs_diff(&PayoffPair::new(2.0, 2.0)),
        tolerance,
    ));

    // 5. the combined 4x4 table, reproduced verbatim
    let table1 = combined_table(TableMode::AsPublished, None)?;
    let printed_t1 = printed_combined_table();
    claims.push(ClaimReport::checked(
        "table1",
        "printed combined 4x4 payoff table over {C,D,Q,R}",
        grid_value(&printed_t1),
        game_value(&table1),
        max_grid_deviation(&table1, &printed_t1),
        tolerance,
    ));
    tables.insert(
        "table1-as-published".to_string(),
        GameJson::from_game(&table1),
    );

    // 6. the shared-state submatrix, cell by cell; C\Q and Q\C are disputed
    let shared_game = induced_matrix(&shared_spec, &catalog);
    let printed_sub = printed_shared_submatrix();
    let labels = ["C", "D", "Q"];
    for i in 0..3 {
        for j in 0..3 {
            let id = format!("submatrix-{}{}", labels[i], labels[j]);
            let provenance = format!(
                "printed shared-state submatrix, cell {}\\{}",
                labels[i], labels[j]
            );
            let expected = PayoffPair::new(printed_sub[i][j].0, printed_sub[i][j].1);
            let computed = shared_game.cell(i, j);
            let deviation = computed.max_abs_diff(&expected);
            let disputed = (i, j) == (0, 2) || (i, j) == (2, 0);
            if disputed {
                claims.push(ClaimReport::flagged(
                    &id,
                    &provenance,
                    pair_value(expected),
                    pair_value(computed),
                    deviation,
                    "printed value (2.5,2.5) disagrees with the simulated value: both \
                     chosen operators are diagonal, so no amplitude leaves {00,11} and \
                     the payoff stays (2,2)",
                ));
            } else {
                claims.push(ClaimReport::checked(
                    &id,
                    &provenance,
                    pair_value(expected),
                    pair_value(computed),
                    deviation,
                    tolerance,
                ));
            }
        }
    }
    tables.insert(
        "shared-submatrix".to_string(),
        GameJson::from_game(&shared_game),
    );

    // 7. the commitment argument with (p,q) = (0,1)
    let committed = combined_table(TableMode::Committed, Some((0.0, 1.0)))?;
    claims.push(ClaimReport::checked(
        "commitment-C-vs-R",
        "printed claim that with committed (p,q)=(0,1) the cell C\\R becomes (2,2)",
        pair_value(PayoffPair::new(2.0, 2.0)),
        pair_value(committed.cell(0, 3)),
        committed
            .cell(0, 3)
            .max_abs_diff(&PayoffPair::new(2.0, 2.0)),
        tolerance,
    ));
    claims.push(ClaimReport::checked(
        "commitment-R-vs-R",
        "cell R\\R of the committed table with (p,q)=(0,1): one flip, outcomes 01/10",
        pair_value(PayoffPair::new(2.5, 2.5)),
        pair_value(committed.cell(3, 3)),
        committed
            .cell(3, 3)
            .max_abs_diff(&PayoffPair::new(2.5, 2.5)),
        tolerance,
    ));
    tables.insert(
        "committed-table-p0-q1".to_string(),
        GameJson::from_game(&committed),
    );

    // 8. equilibrium structure of the three games
    let classical = BimatrixGame::classical_2x2(&weights);
    let classical_eqs = pure_nash(&classical);
    claims.push(ClaimReport::checked(
        "nash-classical-pd",
        "mutual defection is the unique (strict) equilibrium of the classical dilemma",
        json!([{"cell": ["1", "1"], "kind": "strict", "payoffs": [1.0, 1.0]}]),
        equilibrium_value(&classical_eqs, &classical),
        equilibrium_deviation(
            &[("1", "1", EquilibriumKind::Strict, (1.0, 1.0))],
            &classical_eqs,
            &classical,
        ),
        tolerance,
    ));

    let ewl_eqs = pure_nash(&ewl_game);
    claims.push(ClaimReport::checked(
        "nash-ewl-matrix",
        "the extended matrix has the unique strict equilibrium (Q,Q) with payoff (3,3)",
        json!([{"cell": ["Q", "Q"], "kind": "strict", "payoffs": [3.0, 3.0]}]),
        equilibrium_value(&ewl_eqs, &ewl_game),
        equilibrium_deviation(
            &[("Q", "Q", EquilibriumKind::Strict, (3.0, 3.0))],
            &ewl_eqs,
            &ewl_game,
        ),
        tolerance,
    ));

    let table1_eqs = pure_nash(&table1);
    claims.push(ClaimReport::checked(
        "nash-table1",
        "the combined table keeps (Q,Q) strict and adds the weak equilibrium (R,R)",
        json!([
            {"cell": ["Q", "Q"], "kind": "strict", "payoffs": [3.0, 3.0]},
            {"cell": ["R", "R"], "kind": "weak", "payoffs": [2.5, 2.5]},
        ]),
        equilibrium_value(&table1_eqs, &table1),
        equilibrium_deviation(
            &[
                ("Q", "Q", EquilibriumKind::Strict, (3.0, 3.0)),
                ("R", "R", EquilibriumKind::Weak, (2.5, 2.5)),
            ],
            &table1_eqs,
            &table1,
        ),
        tolerance,
    ));

    // 9. every induced matrix is exhausted by its classical reading
    let rep_ewl = classical_replication_check(&ewl_game, &ewl_spec, &catalog);
    claims.push(ClaimReport::checked(
        "replication-ewl",
        "the extended matrix replicates the protocol's expected payoffs cell by cell",
        json!(0.0),
        json!(rep_ewl.max_deviation),
        rep_ewl.max_deviation,
        tolerance,
    ));
    let rep_shared = classical_replication_check(&shared_game, &shared_spec, &catalog);
    claims.push(ClaimReport::checked(
        "replication-shared",
        "the shared-state submatrix replicates its protocol cell by cell",
        json!(0.0),
        json!(rep_shared.max_deviation),
        rep_shared.max_deviation,
        tolerance,
    ));
    let mut row_entries = catalog.entries().to_vec();
    row_entries.push(MixedLocalStrategy::random_flip(0.0)?);
    let mut col_entries = catalog.entries().to_vec();
    col_entries.push(MixedLocalStrategy::random_flip(1.0)?);
    let rows = StrategyCatalog::new(row_entries)?;
    let cols = StrategyCatalog::new(col_entries)?;
    let rep_committed = classical_replication_check_asym(&committed, &shared_spec, &rows, &cols);
    claims.push(ClaimReport::checked(
        "replication-committed",
        "the committed 4x4 table replicates its protocol cell by cell",
        json!(0.0),
        json!(rep_committed.max_deviation),
        rep_committed.max_deviation,
        tolerance,
    ));

    let summary = ReportSummary {
        total: claims.len(),
        matched: claims
            .iter()
            .filter(|c| c.verdict == Verdict::Match)
            .count(),
        mismatched: claims
            .iter()
            .filter(|c| c.verdict == Verdict::Mismatch)
            .count(),
        flagged: claims
            .iter()
            .filter(|c| c.verdict == Verdict::FlaggedDiscrepancy)
            .count(),
    };
    Ok(ReportBundle {
        tolerance,
        grid_points: grid,
        summary,
        claims,
        tables,
    })
}

// ---------------------------------------------------------------------------
// equilibrium analysis report

#[derive(Debug, Clone, Serialize)]
pub struct PureEqJson {
    pub row: usize,
    pub col: usize,
    pub row_label: String,
    pub col_label: String,
    pub payoffs: [f64; 2],
    pub kind: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MixedEqJson {
    pub row_probs: Vec<f64>,
    pub col_probs: Vec<f64>,
    pub payoffs: [f64; 2],
    pub row_support: Vec<usize>,
    pub col_support: Vec<usize>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominanceEntryJson {
    pub dominated: String,
    pub by: String,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominanceJson {
    pub row: Vec<DominanceEntryJson>,
    pub col: Vec<DominanceEntryJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquilibriaReport {
    pub pure: Vec<PureEqJson>,
    pub mixed: Vec<MixedEqJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixed_note: Option<String>,
    pub dominance: DominanceJson,
}

fn mixed_eq_json(eq: &MixedEquilibrium) -> MixedEqJson {
    MixedEqJson {
        row_probs: eq.profile.row_probs().to_vec(),
        col_probs: eq.profile.col_probs().to_vec(),
        payoffs: [eq.payoffs.alice, eq.payoffs.bob],
        row_support: eq.row_support.clone(),
        col_support: eq.col_support.clone(),
        degenerate: eq.degenerate,
    }
}

/// Full equilibrium and dominance analysis of one game. The mixed section
/// lists equilibria with non-singleton supports (or flagged degenerate
/// families); games beyond the 6x6 desk scale skip it with a note.
pub fn analyze_game(game: &BimatrixGame, max_support: Option<usize>) -> Result<EquilibriaReport> {
    let pure: Vec<PureEqJson> = pure_nash(game)
        .iter()
        .map(|e| PureEqJson {
            row: e.row,
            col: e.col,
            row_label: game.row_labels()[e.row].clone(),
            col_label: game.col_labels()[e.col].clone(),
            payoffs: [e.payoffs.alice, e.payoffs.bob],
            kind: match e.kind {
                EquilibriumKind::Strict => "strict".into(),
                EquilibriumKind::Weak => "weak".into(),
            },
        })
        .collect();

    let small = game.n_rows() <= 6 && game.n_cols() <= 6;
    let (mixed, mut mixed_note) = if small {
        let cap = max_support.unwrap_or_else(|| game.n_rows().min(game.n_cols()));
        let all = support_enumeration(game, cap)?;
        let interesting: Vec<MixedEqJson> = all
            .iter()
            .filter(|eq| eq.row_support.len() > 1 || eq.col_support.len() > 1 || eq.degenerate)
            .map(mixed_eq_json)
            .collect();
        (interesting, None)
    } else {
        (
            Vec::new(),
            Some("game exceeds the 6x6 desk scale; mixed enumeration skipped".to_string()),
        )
    };
    if mixed.is_empty() && mixed_note.is_none() && game.n_rows() == 2 && game.n_cols() == 2 {
        mixed_note = mixed_2x2(game)?.note;
    }

    let dom = dominance(game);
    let entry = |e: &crate::equilibrium::DominanceEntry, labels: &[String]| DominanceEntryJson {
        dominated: labels[e.dominated].clone(),
        by: labels[e.by].clone(),
        kind: match e.kind {
            DominanceKind::Strict => "strict".into(),
            DominanceKind::Weak => "weak".into(),
        },
    };
    Ok(EquilibriaReport {
        pure,
        mixed,
        mixed_note,
        dominance: DominanceJson {
            row: dom
                .row
                .iter()
                .map(|e| entry(e, game.row_labels()))
                .collect(),
            col: dom
                .col
                .iter()
                .map(|e| entry(e, game.col_labels()))
                .collect(),
        },
    })
}

// ---------------------------------------------------------------------------
// rendering

/// Renders a bimatrix game as an aligned text table of "(x,y)" cells.
pub fn render_game_table(game: &BimatrixGame) -> String {
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(game.n_rows() + 1);
    let mut header = vec!["A\\B".to_string()];
    header.extend(game.col_labels().iter().cloned());
    grid.push(header);
    for i in 0..game.n_rows() {
        let mut row = vec![game.row_labels()[i].clone()];
        for j in 0..game.n_cols() {
            row.push(game.cell(i, j).to_string());
        }
        grid.push(row);
    }
    let widths: Vec<usize> = (0..=game.n_cols())
        .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &grid {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{:<width$}", cell, width = widths[c]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn short(value: &Value) -> Option<String> {
    let text = value.to_string();
    (text.len() <= 48).then_some(text)
}

/// Human-readable audit: the computed tables followed by one line per claim.
pub fn render_bundle_table(bundle: &ReportBundle) -> String {
    let mut out = String::new();
    let sections = [
        (
            "ewl-matrix",
            "extended matrix over {C,D,Q}, (a,b,c)=(3,5,1)",
        ),
        ("table1-as-published", "combined 4x4 table, as published"),
        ("shared-submatrix", "shared-state submatrix, simulated"),
        ("committed-table-p0-q1", "committed 4x4 table, (p,q)=(0,1)"),
    ];
    for (key, title) in sections {
        if let Some(game_json) = bundle.tables.get(key) {
            out.push_str(&format!("# {title}\n"));
            if let Ok(game) = game_json.clone().into_game() {
                out.push_str(&render_game_table(&game));
            }
            out.push('\n');
        }
    }
    out.push_str("# claim audit\n");
    for claim in &bundle.claims {
        let mut line = format!(
            "[{:<9}] {:<20} deviation {:.3e}",
            claim.verdict.label(),
            claim.id,
            claim.deviation
        );
        if let (Some(e), Some(c)) = (short(&claim.expected), short(&claim.computed)) {
            line.push_str(&format!("  expected {e} computed {c}"));
        }
        out.push_str(&line);
        out.push('\n');
        if let Some(note) = &claim.note {
            out.push_str(&format!("            note: {note}\n"));
        }
    }
    out.push_str(&format!(
        "\n{} claims: {} match, {} mismatch, {} flagged (tolerance {:e})\n",
        bundle.summary.total,
        bundle.summary.matched,
        bundle.summary.mismatched,
        bundle.summary.flagged,
        bundle.tolerance,
    ));
    out
}

pub fn render_equilibria_table(game: &BimatrixGame, report: &EquilibriaReport) -> String {
    let probs = |v: &[f64]| {
        let inner = v
            .iter()
            .map(|&p| crate::game::display_value(p))
            .collect::<Vec<_>>()
            .join(", ");
        format!("[{inner}]")
    };
    let mut out = String::new();
    out.push_str(&render_game_table(game));
    out.push('\n');
    if report.pure.is_empty() {
        out.push_str("pure equilibria: none\n");
    } else {
        out.push_str("pure equilibria:\n");
        for eq in &report.pure {
            out.push_str(&format!(
                "  ({},{})  payoffs {}  {}\n",
                eq.row_label,
                eq.col_label,
                PayoffPair::new(eq.payoffs[0], eq.payoffs[1]),
                eq.kind
            ));
        }
    }
    if let Some(note) = &report.mixed_note {
        out.push_str(&format!("mixed equilibria: none ({note})\n"));
    } else if report.mixed.is_empty() {
        out.push_str("mixed equilibria: none beyond the pure cells\n");
    } else {
        out.push_str("mixed equilibria:\n");
        for eq in &report.mixed {
            out.push_str(&format!(
                "  row {} col {}  payoffs {}{}\n",
                probs(&eq.row_probs),
                probs(&eq.col_probs),
                PayoffPair::new(eq.payoffs[0], eq.payoffs[1]),
                if eq.degenerate {
                    "  [degenerate family]"
                } else {
                    ""
                }
            ));
        }
    }
    let dom_line = |entries: &[DominanceEntryJson]| {
        entries
            .iter()
            .map(|e| format!("{} {}ly dominated by {}", e.dominated, e.kind, e.by))
            .collect::<Vec<_>>()
            .join("; ")
    };
    if report.dominance.row.is_empty() && report.dominance.col.is_empty() {
        out.push_str("dominance: no dominated strategies\n");
    } else {
        if !report.dominance.row.is_empty() {
            out.push_str(&format!(
                "dominance (row): {}\n",
                dom_line(&report.dominance.row)
            ));
        }
        if !report.dominance.col.is_empty() {
            out.push_str(&format!(
                "dominance (col): {}\n",
                dom_line(&report.dominance.col)
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// command surface

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

/// Which protocol the CLI plays on.
#[derive(Debug, Clone)]
pub enum SpecChoice {
    Ewl,
    Shared,
    Custom {
        state: TwoQubitState,
        disentangle: bool,
    },
}

#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    pub spec: SpecChoice,
    pub weights: PayoffWeights,
}

impl ProtocolConfig {
    pub fn build(&self) -> ProtocolSpec {
        match &self.spec {
            SpecChoice::Ewl => ProtocolSpec::ewl(self.weights.clone()),
            SpecChoice::Shared => ProtocolSpec::shared_state(self.weights.clone()),
            SpecChoice::Custom { state, disentangle } => ProtocolSpec::new(
                state.clone(),
                disentangle.then(disentangler),
                self.weights.clone(),
            ),
        }
    }
}

/// Resolves payoff weights from either an explicit 8-value list
/// (wA00..wA11, wB00..wB11) or the (a, b, c) parameters.
pub fn resolve_weights(a: f64, b: f64, c: f64, explicit: Option<&[f64]>) -> Result<PayoffWeights> {
    match explicit {
        Some(values) => {
            if values.len() != 8 {
                return Err(Error::InvalidConfig(format!(
                    "--weights needs 8 comma-separated values, got {}",
                    values.len()
                )));
            }
            let alice = [values[0], values[1], values[2], values[3]];
            let bob = [values[4], values[5], values[6], values[7]];
            PayoffWeights::new(alice, bob)
        }
        None => {
            let params = PayoffParams::new(a, b, c)?;
            Ok(PayoffWeights::prisoners_dilemma(&params))
        }
    }
}

/// Parses a strategy label: C, D, Q, or "R:p" with an explicit mixing
/// probability.
pub fn parse_strategy(label: &str) -> Result<MixedLocalStrategy> {
    match label {
        "C" => Ok(MixedLocalStrategy::cooperate()),
        "D" => Ok(MixedLocalStrategy::defect()),
        "Q" => Ok(MixedLocalStrategy::quantum()),
        "R" => Err(Error::InvalidConfig(
            "strategy R needs a mixing probability, e.g. R:0.5".into(),
        )),
        other => match other.strip_prefix("R:") {
            Some(p) => {
                let p: f64 = p.parse().map_err(|_| {
                    Error::InvalidConfig(format!("cannot parse mixing probability in {other:?}"))
                })?;
                MixedLocalStrategy::random_flip(p)
            }
            None => Err(Error::UnknownStrategy(other.to_string())),
        },
    }
}

/// Parses a custom initial state from 8 interleaved reals
/// (re00, im00, ..., re11, im11).
pub fn parse_state(values: &[f64]) -> Result<TwoQubitState> {
    if values.len() != 8 {
        return Err(Error::InvalidConfig(format!(
            "--state needs 8 comma-separated values (re,im per amplitude), got {}",
            values.len()
        )));
    }
    let amps = [
        num_complex::Complex64::new(values[0], values[1]),
        num_complex::Complex64::new(values[2], values[3]),
        num_complex::Complex64::new(values[4], values[5]),
        num_complex::Complex64::new(values[6], values[7]),
    ];
    TwoQubitState::new(amps)
}

#[derive(Debug, Clone, Copy)]
pub struct SampledConfig {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub enum MatrixSource {
    Induced(ProtocolConfig),
    Combined {
        mode: TableMode,
        r_params: Option<(f64, f64)>,
    },
}

impl MatrixSource {
    pub fn build(&self) -> Result<BimatrixGame> {
        match self {
            MatrixSource::Induced(config) => {
                Ok(induced_matrix(&config.build(), &StrategyCatalog::cdq()))
            }
            MatrixSource::Combined { mode, r_params } => combined_table(*mode, *r_params),
        }
    }
}

#[derive(Debug, Clone)]
pub enum GameSource {
    Matrix(MatrixSource),
    Json(GameJson),
}

#[derive(Debug, Clone)]
pub enum RunConfig {
    Play {
        protocol: ProtocolConfig,
        alice: MixedLocalStrategy,
        bob: MixedLocalStrategy,
        sampled: Option<SampledConfig>,
        format: OutputFormat,
    },
    Matrix {
        source: MatrixSource,
        format: OutputFormat,
    },
    Equilibria {
        source: GameSource,
        max_support: Option<usize>,
        format: OutputFormat,
    },
    VbSweep {
        grid: usize,
        format: OutputFormat,
    },
    Reproduce {
        grid: usize,
        tolerance: f64,
        format: OutputFormat,
    },
}

/// Rendered output plus the process exit code it should carry. When
/// `file_output` is set, `--out` writes that instead of the stdout bytes
/// (the claim audit always persists its JSON report).
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub output: String,
    pub exit_code: i32,
    pub file_output: Option<String>,
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct PlayJson {
    alice_strategy: String,
    bob_strategy: String,
    payoff: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    sampled: Option<SampledJson>,
}

#[derive(Serialize)]
struct SampledJson {
    samples: u64,
    seed: u64,
    estimate: [f64; 2],
}

/// Executes one parsed command. IO stays with the caller: the result is a
/// deterministic string (identical configs yield identical bytes) plus the
/// exit code.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    match config {
        RunConfig::Play {
            protocol,
            alice,
            bob,
            sampled,
            format,
        } => {
            let spec = protocol.build();
            let exact = play(&spec, alice, bob);
            let estimate = sampled.map(|s| play_sampled(&spec, alice, bob, s.samples, s.seed));
            let output = match format {
                OutputFormat::Json => json_string(&PlayJson {
                    alice_strategy: alice.name().to_string(),
                    bob_strategy: bob.name().to_string(),
                    payoff: [exact.alice, exact.bob],
                    sampled: sampled.map(|s| SampledJson {
                        samples: s.samples,
                        seed: s.seed,
                        estimate: {
                            let e = estimate.expect("estimate computed with config");
                            [e.alice, e.bob]
                        },
                    }),
                }),
                OutputFormat::Csv => {
                    let mut text = String::from("alice,bob\n");
                    text.push_str(&format!("{},{}\n", exact.alice, exact.bob));
                    text
                }
                OutputFormat::Table => {
                    let mut text = format!(
                        "alice: {}\nbob: {}\npayoff: {}\n",
                        alice.name(),
                        bob.name(),
                        exact
                    );
                    if let (Some(s), Some(e)) = (sampled, estimate) {
                        text.push_str(&format!(
                            "sampled estimate ({} samples, seed {}): {}\n",
                            s.samples, s.seed, e
                        ));
                    }
                    text
                }
            };
            Ok(RunOutput {
                output,
                exit_code: 0,
                file_output: None,
            })
        }
        RunConfig::Matrix { source, format } => {
            let game = source.build()?;
            let output = match format {
                OutputFormat::Json => json_string(&GameJson::from_game(&game)),
                OutputFormat::Csv => {
                    let mut text = String::from("row,col,alice,bob\n");
                    for i in 0..game.n_rows() {
                        for j in 0..game.n_cols() {
                            let cell = game.cell(i, j);
                            text.push_str(&format!(
                                "{},{},{},{}\n",
                                game.row_labels()[i],
                                game.col_labels()[j],
                                cell.alice,
                                cell.bob
                            ));
                        }
                    }
                    text
                }
                OutputFormat::Table => render_game_table(&game),
            };
            Ok(RunOutput {
                output,
                exit_code: 0,
                file_output: None,
            })
        }
        RunConfig::Equilibria {
            source,
            max_support,
            format,
        } => {
            let game = match source {
                GameSource::Matrix(m) => m.build()?,
                GameSource::Json(j) => j.clone().into_game()?,
            };
            let report = analyze_game(&game, *max_support)?;
            let output = match format {
                OutputFormat::Json => json_string(&report),
                OutputFormat::Csv => {
                    let mut text = String::from("row,col,kind,alice,bob\n");
                    for eq in &report.pure {
                        text.push_str(&format!(
                            "{},{},{},{},{}\n",
                            eq.row_label, eq.col_label, eq.kind, eq.payoffs[0], eq.payoffs[1]
                        ));
                    }
                    text
                }
                OutputFormat::Table => render_equilibria_table(&game, &report),
            };
            Ok(RunOutput {
                output,
                exit_code: 0,
                file_output: None,
            })
        }
        RunConfig::VbSweep { grid, format } => {
            if *grid < 2 {
                return Err(Error::InvalidConfig(format!(
                    "sweep grid needs at least 2 points per axis, got {grid}"
                )));
            }
            let step = 1.0 / (grid - 1) as f64;
            let output = match format {
                OutputFormat::Csv => {
                    let mut text = String::from("p,q,payoff\n");
                    for i in 0..*grid {
                        for j in 0..*grid {
                            let (p, q) = (i as f64 * step, j as f64 * step);
                            let v = vb_payoff_closed_form(p, q)?.alice;
                            text.push_str(&format!("{p},{q},{v}\n"));
                        }
                    }
                    text
                }
                OutputFormat::Json => {
                    #[derive(Serialize)]
                    struct Point {
                        p: f64,
                        q: f64,
                        payoff: f64,
                    }
                    let mut points = Vec::with_capacity(grid * grid);
                    for i in 0..*grid {
                        for j in 0..*grid {
                            let (p, q) = (i as f64 * step, j as f64 * step);
                            points.push(Point {
                                p,
                                q,
                                payoff: vb_payoff_closed_form(p, q)?.alice,
                            });
                        }
                    }
                    json_string(&points)
                }
                OutputFormat::Table => {
                    let mut text = String::from("payoff of R(p) vs R(q); rows p, columns q\n");
                    for i in 0..*grid {
                        let mut line = String::new();
                        for j in 0..*grid {
                            let (p, q) = (i as f64 * step, j as f64 * step);
                            if j > 0 {
                                line.push(' ');
                            }
                            line.push_str(&format!("{:.4}", vb_payoff_closed_form(p, q)?.alice));
                        }
                        text.push_str(&line);
                        text.push('\n');
                    }
                    text
                }
            };
            Ok(RunOutput {
                output,
                exit_code: 0,
                file_output: None,
            })
        }
        RunConfig::Reproduce {
            grid,
            tolerance,
            format,
        } => {
            let bundle = run_claim_suite(*tolerance, *grid)?;
            let report_json = json_string(&bundle);
            let output = match format {
                OutputFormat::Json => report_json.clone(),
                OutputFormat::Csv => {
                    let mut text = String::from("id,verdict,deviation\n");
                    for claim in &bundle.claims {
                        text.push_str(&format!(
                            "{},{},{}\n",
                            claim.id,
                            match claim.verdict {
                                Verdict::Match => "match",
                                Verdict::Mismatch => "mismatch",
                                Verdict::FlaggedDiscrepancy => "flagged-discrepancy",
                            },
                            claim.deviation
                        ));
                    }
                    text
                }
                OutputFormat::Table => render_bundle_table(&bundle),
            };
            Ok(RunOutput {
                output,
                exit_code: bundle.exit_code(),
                file_output: Some(report_json),
            })
        }
    }
}
