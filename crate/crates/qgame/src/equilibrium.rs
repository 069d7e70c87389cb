//! Equilibrium and dominance analysis of finite bimatrix games: pure Nash
//! enumeration with strict/weak classification, best responses, pure
//! dominance, indifference-based mixed equilibria for 2x2 games, and
//! support enumeration for desk-scale games.

use crate::error::{Error, Result};
use crate::game::{validate_distribution, BimatrixGame, MixedProfile, PayoffPair, TOL_PAYOFF};

/// Which side of the bimatrix a player controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    Row,
    Col,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    /// Every unilateral deviation strictly lowers the deviator's payoff.
    Strict,
    /// Some deviation is payoff-equal (or no deviation exists at all).
    Weak,
}

/// A pure strategy cell from which no player can unilaterally improve.
#[derive(Debug, Clone, PartialEq)]
pub struct PureEquilibrium {
    pub row: usize,
    pub col: usize,
    pub payoffs: PayoffPair,
    pub kind: EquilibriumKind,
}

/// A mixed strategy profile in which every support strategy is a best
/// response to the opponent's mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedEquilibrium {
    pub profile: MixedProfile,
    pub payoffs: PayoffPair,
    pub row_support: Vec<usize>,
    pub col_support: Vec<usize>,
    /// Set when some witnessing indifference system was rank-deficient:
    /// the profile then sits inside a continuum of equilibria rather than
    /// being isolated.
    pub degenerate: bool,
}

/// Expected payoff of one pure strategy against an opponent mixture.
fn pure_vs_mix(game: &BimatrixGame, player: Player, index: usize, mix: &[f64]) -> f64 {
    match player {
        Player::Row => (0..game.n_cols())
            .map(|j| mix[j] * game.cell(index, j).alice)
            .sum(),
        Player::Col => (0..game.n_rows())
            .map(|i| mix[i] * game.cell(i, index).bob)
            .sum(),
    }
}

/// Indices of the player's strategies that maximize expected payoff against
/// the opponent's mixture. Ties within the payoff tolerance are included.
pub fn best_responses(
    game: &BimatrixGame,
    player: Player,
    opponent_mix: &[f64],
) -> Result<Vec<usize>> {
    let (own, other) = match player {
        Player::Row => (game.n_rows(), game.n_cols()),
        Player::Col => (game.n_cols(), game.n_rows()),
    };
    if opponent_mix.len() != other {
        return Err(Error::DimensionMismatch(format!(
            "opponent mixture has {} entries for {} strategies",
            opponent_mix.len(),
            other
        )));
    }
    validate_distribution(opponent_mix)?;
    let payoffs: Vec<f64> = (0..own)
        .map(|k| pure_vs_mix(game, player, k, opponent_mix))
        .collect();
    let best = payoffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok((0..own)
        .filter(|&k| payoffs[k] >= best - TOL_PAYOFF)
        .collect())
}

/// All cells that are mutual best responses, classified as strict or weak.
pub fn pure_nash(game: &BimatrixGame) -> Vec<PureEquilibrium> {
    let mut found = Vec::new();
    for i in 0..game.n_rows() {
        for j in 0..game.n_cols() {
            let cell = game.cell(i, j);
            let mut is_equilibrium = true;
            let mut strict = true;
            let mut has_deviation = false;
            for i2 in 0..game.n_rows() {
                if i2 == i {
                    continue;
                }
                has_deviation = true;
                let dev = game.cell(i2, j).alice;
                if dev > cell.alice + TOL_PAYOFF {
                    is_equilibrium = false;
                }
                if dev >= cell.alice - TOL_PAYOFF {
                    strict = false;
                }
            }
            for j2 in 0..game.n_cols() {
                if j2 == j {
                    continue;
                }
                has_deviation = true;
                let dev = game.cell(i, j2).bob;
                if dev > cell.bob + TOL_PAYOFF {
                    is_equilibrium = false;
                }
                if dev >= cell.bob - TOL_PAYOFF {
                    strict = false;
                }
            }
            if is_equilibrium {
                let kind = if strict && has_deviation {
                    EquilibriumKind::Strict
                } else {
                    EquilibriumKind::Weak
                };
                found.push(PureEquilibrium {
                    row: i,
                    col: j,
                    payoffs: cell,
                    kind,
                });
            }
        }
    }
    found
}

/// Result of the 2x2 indifference analysis. When no interior equilibrium
/// exists the list is empty and the note explains why.
#[derive(Debug, Clone)]
pub struct Mixed2x2Report {
    pub equilibria: Vec<MixedEquilibrium>,
    pub note: Option<String>,
}

/// Interior mixed equilibria of a 2x2 game via the indifference equations.
pub fn mixed_2x2(game: &BimatrixGame) -> Result<Mixed2x2Report> {
    if game.n_rows() != 2 || game.n_cols() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "mixed_2x2 needs a 2x2 game, got {}x{}",
            game.n_rows(),
            game.n_cols()
        )));
    }
    let a = |i: usize, j: usize| game.cell(i, j).alice;
    let b = |i: usize, j: usize| game.cell(i, j).bob;

    // Row mixture x makes the column player indifferent, and vice versa.
    let x_den = b(0, 0) - b(0, 1) - b(1, 0) + b(1, 1);
    let y_den = a(0, 0) - a(0, 1) - a(1, 0) + a(1, 1);
    let x_num = b(1, 1) - b(1, 0);
    let y_num = a(1, 1) - a(0, 1);

    if x_den.abs() <= TOL_PAYOFF || y_den.abs() <= TOL_PAYOFF {
        return Ok(Mixed2x2Report {
            equilibria: Vec::new(),
            note: Some(
                "degenerate indifference system: some player's payoff gap is constant \
                 across the opponent's strategies"
                    .into(),
            ),
        });
    }
    let x = x_num / x_den;
    let y = y_num / y_den;
    if !(TOL_PAYOFF..=1.0 - TOL_PAYOFF).contains(&x)
        || !(TOL_PAYOFF..=1.0 - TOL_PAYOFF).contains(&y)
    {
        let note = dominance_note(game)
            .unwrap_or_else(|| "indifference equations have no solution in (0,1)".into());
        return Ok(Mixed2x2Report {
            equilibria: Vec::new(),
            note: Some(note),
        });
    }
    let profile = MixedProfile::new(vec![x, 1.0 - x], vec![y, 1.0 - y])?;
    let payoffs = profile.expected_payoffs(game);
    Ok(Mixed2x2Report {
        equilibria: vec![MixedEquilibrium {
            profile,
            payoffs,
            row_support: vec![0, 1],
            col_support: vec![0, 1],
            degenerate: false,
        }],
        note: None,
    })
}

fn dominance_note(game: &BimatrixGame) -> Option<String> {
    let report = dominance(game);
    let entry = report.row.first().or(report.col.first())?;
    let (who, labels) = if !report.row.is_empty() {
        ("row", game.row_labels())
    } else {
        ("column", game.col_labels())
    };
    Some(format!(
        "no interior mixed equilibrium: {} strategy {} is {} dominated by {}",
        who,
        labels[entry.dominated],
        match entry.kind {
            DominanceKind::Strict => "strictly",
            DominanceKind::Weak => "weakly",
        },
        labels[entry.by],
    ))
}

const MAX_ENUMERATION_SIZE: usize = 6;

/// All mixed equilibria with supports up to `max_support`, found by
/// enumerating support pairs and solving the indifference and feasibility
/// systems. Profiles that coincide within the payoff tolerance are merged;
/// rank-deficient systems mark their solutions as degenerate families.
pub fn support_enumeration(
    game: &BimatrixGame,
    max_support: usize,
) -> Result<Vec<MixedEquilibrium>> {
    let (n, m) = (game.n_rows(), game.n_cols());
    if n > MAX_ENUMERATION_SIZE || m > MAX_ENUMERATION_SIZE {
        return Err(Error::GameTooLarge { rows: n, cols: m });
    }
    if max_support == 0 {
        return Err(Error::InvalidConfig(
            "max_support must be at least 1".into(),
        ));
    }
    let max_support = max_support.min(n).min(m);

    let mut found: Vec<MixedEquilibrium> = Vec::new();
    for row_support in supports_up_to(n, max_support) {
        for col_support in supports_up_to(m, max_support) {
            for candidate in candidates_for(game, &row_support, &col_support) {
                merge_candidate(&mut found, candidate);
            }
        }
    }
    Ok(found)
}

/// All non-empty strategy subsets of {0..n} with at most `max` elements, in
/// order of size then lexicographic position.
fn supports_up_to(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= max {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out.sort_by_key(|s: &Vec<usize>| s.len());
    out
}

struct SupportSolution {
    weights: Vec<f64>,
    value: f64,
    rank_deficient: bool,
}

/// Solves for a mixture over `mix_support` that makes every strategy in
/// `indifferent_support` of the other player earn the same value. Free
/// variables of rank-deficient systems are resolved per `prefer_late`.
fn solve_indifference(
    game: &BimatrixGame,
    owner: Player,
    mix_support: &[usize],
    indifferent_support: &[usize],
    prefer_late: bool,
) -> Option<SupportSolution> {
    let k = mix_support.len();
    // unknowns: k mixture weights then the common value v
    let mut rows = Vec::with_capacity(indifferent_support.len() + 1);
    for &s in indifferent_support {
        let mut row = vec![0.0; k + 2];
        for (col, &t) in mix_support.iter().enumerate() {
            row[col] = match owner {
                // owner Col: mixture over columns making rows indifferent
                Player::Col => game.cell(s, t).alice,
                Player::Row => game.cell(t, s).bob,
            };
        }
        row[k] = -1.0;
        rows.push(row);
    }
    let mut norm = vec![1.0; k];
    norm.push(0.0);
    norm.push(1.0);
    rows.push(norm);

    let (solution, rank_deficient) = solve_linear(rows, k + 1, prefer_late)?;
    let weights = solution[..k].to_vec();
    if weights.iter().any(|&w| w < -TOL_PAYOFF) {
        return None;
    }
    Some(SupportSolution {
        weights,
        value: solution[k],
        rank_deficient,
    })
}

/// Gauss-Jordan elimination with partial pivoting on an augmented system.
/// Inconsistent systems yield `None`; under-determined ones set their free
/// variables to zero and report rank deficiency. `prefer_late` reverses the
/// column elimination order, which lands on a different member of the
/// solution family.
fn solve_linear(
    mut m: Vec<Vec<f64>>,
    unknowns: usize,
    prefer_late: bool,
) -> Option<(Vec<f64>, bool)> {
    let rows = m.len();
    let scale = m.iter().flatten().fold(1.0f64, |acc, &v| acc.max(v.abs()));
    let eps = 1e-9 * scale;

    let order: Vec<usize> = if prefer_late {
        (0..unknowns).rev().collect()
    } else {
        (0..unknowns).collect()
    };
    let mut pivot_row_of: Vec<Option<usize>> = vec![None; unknowns];
    let mut next_row = 0;
    for &col in &order {
        if next_row == rows {
            break;
        }
        let (best_row, best_val) = (next_row..rows)
            .map(|r| (r, m[r][col].abs()))
            .fold((next_row, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_val <= eps {
            continue; // free column
        }
        m.swap(next_row, best_row);
        let pivot = m[next_row][col];
        for entry in &mut m[next_row] {
            *entry /= pivot;
        }
        for r in 0..rows {
            if r != next_row {
                let factor = m[r][col];
                if factor != 0.0 {
                    for c in 0..=unknowns {
                        let delta = factor * m[next_row][c];
                        m[r][c] -= delta;
                    }
                }
            }
        }
        pivot_row_of[col] = Some(next_row);
        next_row += 1;
    }
    // zero rows must have zero right-hand side
    for r in next_row..rows {
        if m[r][unknowns].abs() > eps {
            return None;
        }
    }
    let rank_deficient = pivot_row_of.iter().any(|p| p.is_none());
    let mut x = vec![0.0; unknowns];
    for col in 0..unknowns {
        if let Some(r) = pivot_row_of[col] {
            x[col] = m[r][unknowns];
        }
    }
    Some((x, rank_deficient))
}

fn candidates_for(
    game: &BimatrixGame,
    row_support: &[usize],
    col_support: &[usize],
) -> Vec<MixedEquilibrium> {
    let mut out = Vec::new();
    for prefer_late in [false, true] {
        let Some(col_mix) =
            solve_indifference(game, Player::Col, col_support, row_support, prefer_late)
        else {
            continue;
        };
        let Some(row_mix) =
            solve_indifference(game, Player::Row, row_support, col_support, prefer_late)
        else {
            continue;
        };

        let mut x = vec![0.0; game.n_rows()];
        for (w, &i) in row_mix.weights.iter().zip(row_support) {
            x[i] = w.max(0.0);
        }
        let mut y = vec![0.0; game.n_cols()];
        for (w, &j) in col_mix.weights.iter().zip(col_support) {
            y[j] = w.max(0.0);
        }
        // weights below the tie tolerance are solver noise, not support
        for v in x.iter_mut().chain(y.iter_mut()) {
            if *v < TOL_PAYOFF {
                *v = 0.0;
            }
        }
        renormalize(&mut x);
        renormalize(&mut y);

        // off-support strategies must not beat the support value
        let row_ok = (0..game.n_rows())
            .all(|i| pure_vs_mix(game, Player::Row, i, &y) <= col_mix.value + TOL_PAYOFF);
        let col_ok = (0..game.n_cols())
            .all(|j| pure_vs_mix(game, Player::Col, j, &x) <= row_mix.value + TOL_PAYOFF);
        if !row_ok || !col_ok {
            continue;
        }
        let Ok(profile) = MixedProfile::new(x, y) else {
            continue;
        };
        let payoffs = profile.expected_payoffs(game);
        let row_support_actual = support_of(profile.row_probs());
        let col_support_actual = support_of(profile.col_probs());
        out.push(MixedEquilibrium {
            profile,
            payoffs,
            row_support: row_support_actual,
            col_support: col_support_actual,
            degenerate: col_mix.rank_deficient || row_mix.rank_deficient,
        });
    }
    out
}

fn renormalize(v: &mut [f64]) {
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        for entry in v.iter_mut() {
            *entry /= sum;
        }
    }
}

fn support_of(probs: &[f64]) -> Vec<usize> {
    probs
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > TOL_PAYOFF)
        .map(|(i, _)| i)
        .collect()
}

fn merge_candidate(found: &mut Vec<MixedEquilibrium>, candidate: MixedEquilibrium) {
    for existing in found.iter_mut() {
        let same = existing
            .profile
            .row_probs()
            .iter()
            .zip(candidate.profile.row_probs())
            .all(|(a, b)| (a - b).abs() <= TOL_PAYOFF)
            && existing
                .profile
                .col_probs()
                .iter()
                .zip(candidate.profile.col_probs())
                .all(|(a, b)| (a - b).abs() <= TOL_PAYOFF);
        if same {
            existing.degenerate |= candidate.degenerate;
            return;
        }
    }
    found.push(candidate);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceKind {
    Strict,
    Weak,
}

/// One dominated strategy together with a witnessing dominator.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceEntry {
    pub dominated: usize,
    pub by: usize,
    pub kind: DominanceKind,
}

/// Pure-strategy domination per player. A strategy is weakly dominated when
/// another is at least as good against every opponent strategy, and
/// strictly dominated when strictly better against all of them.
#[derive(Debug, Clone, Default)]
pub struct DominanceReport {
    pub row: Vec<DominanceEntry>,
    pub col: Vec<DominanceEntry>,
}

pub fn dominance(game: &BimatrixGame) -> DominanceReport {
    let row = dominated_for(game, Player::Row);
    let col = dominated_for(game, Player::Col);
    DominanceReport { row, col }
}

fn dominated_for(game: &BimatrixGame, player: Player) -> Vec<DominanceEntry> {
    let (own, other) = match player {
        Player::Row => (game.n_rows(), game.n_cols()),
        Player::Col => (game.n_cols(), game.n_rows()),
    };
    let payoff = |k: usize, opp: usize| match player {
        Player::Row => game.cell(k, opp).alice,
        Player::Col => game.cell(opp, k).bob,
    };
    let mut entries = Vec::new();
    for s in 0..own {
        let mut strict_witness = None;
        let mut weak_witness = None;
        for w in 0..own {
            if w == s {
                continue;
            }
            let strict = (0..other).all(|opp| payoff(w, opp) > payoff(s, opp) + TOL_PAYOFF);
            let weak = (0..other).all(|opp| payoff(w, opp) >= payoff(s, opp) - TOL_PAYOFF);
            if strict && strict_witness.is_none() {
                strict_witness = Some(w);
            }
            if weak && weak_witness.is_none() {
                weak_witness = Some(w);
            }
        }
        if let Some(by) = strict_witness {
            entries.push(DominanceEntry {
                dominated: s,
                by,
                kind: DominanceKind::Strict,
            });
        } else if let Some(by) = weak_witness {
            entries.push(DominanceEntry {
                dominated: s,
                by,
                kind: DominanceKind::Weak,
            });
        }
    }
    entries
}
