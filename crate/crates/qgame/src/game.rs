//! Classical game objects: payoff parameters and per-outcome weights,
//! finite bimatrix games, and mixed strategy profiles.

use std::fmt;

use crate::error::{Error, Result};
use crate::quantum::TOL_ALGEBRAIC;

/// Tolerance for end-to-end payoff comparisons and best-response ties.
pub const TOL_PAYOFF: f64 = 1e-9;

/// Dilemma payoff parameters, constrained to b > a > c > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffParams {
    a: f64,
    b: f64,
    c: f64,
}

impl PayoffParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let ok = a.is_finite() && b.is_finite() && c.is_finite() && b > a && a > c && c > 0.0;
        if !ok {
            return Err(Error::InvalidPayoffParams { a, b, c });
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// Per-player payoff assigned to each of the four measurement outcomes
/// (basis order 00, 01, 10, 11). This is the diagonal of each player's
/// payoff observable, so expectations reduce to weighted Born probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffWeights {
    alice: [f64; 4],
    bob: [f64; 4],
}

impl PayoffWeights {
    pub fn new(alice: [f64; 4], bob: [f64; 4]) -> Result<Self> {
        if alice.iter().chain(bob.iter()).any(|w| !w.is_finite()) {
            return Err(Error::NonFinite("payoff weight"));
        }
        Ok(Self { alice, bob })
    }

    /// The dilemma assignment: Alice earns (a, 0, b, c) and Bob (a, b, 0, c)
    /// over outcomes (00, 01, 10, 11).
    pub fn prisoners_dilemma(params: &PayoffParams) -> Self {
        let (a, b, c) = (params.a(), params.b(), params.c());
        Self {
            alice: [a, 0.0, b, c],
            bob: [a, b, 0.0, c],
        }
    }

    pub fn alice(&self) -> &[f64; 4] {
        &self.alice
    }

    pub fn bob(&self) -> &[f64; 4] {
        &self.bob
    }
}

/// Expected payoffs of the two players for one strategy profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffPair {
    pub fn new(alice: f64, bob: f64) -> Self {
        Self { alice, bob }
    }

    pub fn max_abs_diff(&self, other: &PayoffPair) -> f64 {
        (self.alice - other.alice)
            .abs()
            .max((self.bob - other.bob).abs())
    }
}

/// Rounds away float noise for display: 12 decimals, trailing zeros trimmed.
pub(crate) fn display_value(x: f64) -> String {
    let text = format!("{x:.12}");
    let trimmed = text.trim_end_matches('0').trim_end_matches('.');
    if trimmed == "-0" {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

impl fmt::Display for PayoffPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            display_value(self.alice),
            display_value(self.bob)
        )
    }
}

/// A finite two-player game: labeled strategies and a grid of payoff pairs,
/// row player first.
#[derive(Debug, Clone, PartialEq)]
pub struct BimatrixGame {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    cells: Vec<Vec<PayoffPair>>,
}

impl BimatrixGame {
    /// Builds a game from labels and a rectangular grid of payoff pairs.
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        cells: Vec<Vec<PayoffPair>>,
    ) -> Result<Self> {
        if row_labels.is_empty() || col_labels.is_empty() {
            return Err(Error::DimensionMismatch("game must be at least 1x1".into()));
        }
        if cells.len() != row_labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows of cells for {} row labels",
                cells.len(),
                row_labels.len()
            )));
        }
        for (i, row) in cells.iter().enumerate() {
            if row.len() != col_labels.len() {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} cells, expected {}",
                    i,
                    row.len(),
                    col_labels.len()
                )));
            }
            for cell in row {
                if !cell.alice.is_finite() || !cell.bob.is_finite() {
                    return Err(Error::NonFinite("payoff cell"));
                }
            }
        }
        Ok(Self {
            row_labels,
            col_labels,
            cells,
        })
    }

    /// The ordinary 2x2 game induced by payoff weights on the outcome of a
    /// classical coin pair: strategies are labeled "0" and "1" and cell
    /// (i, j) reads the weights of outcome ij.
    pub fn classical_2x2(weights: &PayoffWeights) -> Self {
        let labels = vec!["0".to_string(), "1".to_string()];
        let cells = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| PayoffPair::new(weights.alice()[2 * i + j], weights.bob()[2 * i + j]))
                    .collect()
            })
            .collect();
        Self {
            row_labels: labels.clone(),
            col_labels: labels,
            cells,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> PayoffPair {
        self.cells[row][col]
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn cells(&self) -> &[Vec<PayoffPair>] {
        &self.cells
    }
}

pub(crate) fn validate_distribution(probs: &[f64]) -> Result<()> {
    for &p in probs {
        if !p.is_finite() || !(-TOL_ALGEBRAIC..=1.0 + TOL_ALGEBRAIC).contains(&p) {
            return Err(Error::InvalidProbability { value: p });
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > TOL_ALGEBRAIC {
        return Err(Error::NotADistribution { sum });
    }
    Ok(())
}

/// A mixed strategy pair over a bimatrix game's rows and columns.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile {
    row: Vec<f64>,
    col: Vec<f64>,
}

impl MixedProfile {
    pub fn new(row: Vec<f64>, col: Vec<f64>) -> Result<Self> {
        validate_distribution(&row)?;
        validate_distribution(&col)?;
        Ok(Self { row, col })
    }

    pub fn row_probs(&self) -> &[f64] {
        &self.row
    }

    pub fn col_probs(&self) -> &[f64] {
        &self.col
    }

    /// Expected payoffs of the profile in the given game.
    pub fn expected_payoffs(&self, game: &BimatrixGame) -> PayoffPair {
        let mut alice = 0.0;
        let mut bob = 0.0;
        for (i, &xi) in self.row.iter().enumerate() {
            for (j, &yj) in self.col.iter().enumerate() {
                let cell = game.cell(i, j);
                alice += xi * yj * cell.alice;
                bob += xi * yj * cell.bob;
            }
        }
        PayoffPair::new(alice, bob)
    }
}
