//! Equilibrium and dominance analysis across the games the engine builds,
//! plus two classical benchmarks fed in as raw grids.

use qgame::report::{analyze_game, render_equilibria_table};
use qgame::{
    combined_table, induced_matrix, BimatrixGame, PayoffPair, PayoffParams, PayoffWeights,
    ProtocolSpec, StrategyCatalog, TableMode,
};

fn grid(labels: &[&str], cells: Vec<Vec<(f64, f64)>>) -> qgame::Result<BimatrixGame> {
    BimatrixGame::new(
        labels.iter().map(|s| s.to_string()).collect(),
        labels.iter().map(|s| s.to_string()).collect(),
        cells
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(a, b)| PayoffPair::new(a, b))
                    .collect()
            })
            .collect(),
    )
}

fn analyze(title: &str, game: &BimatrixGame) -> qgame::Result<()> {
    println!("== {title} ==");
    let report = analyze_game(game, None)?;
    print!("{}", render_equilibria_table(game, &report));
    println!();
    Ok(())
}

fn main() -> qgame::Result<()> {
    let params = PayoffParams::new(3.0, 5.0, 1.0)?;
    let weights = PayoffWeights::prisoners_dilemma(&params);

    analyze("classical dilemma", &BimatrixGame::classical_2x2(&weights))?;
    analyze(
        "extended matrix over {C, D, Q}",
        &induced_matrix(&ProtocolSpec::ewl(weights), &StrategyCatalog::cdq()),
    )?;
    analyze(
        "combined 4x4 table (as published)",
        &combined_table(TableMode::AsPublished, None)?,
    )?;
    analyze(
        "matching pennies",
        &grid(
            &["H", "T"],
            vec![
                vec![(1.0, -1.0), (-1.0, 1.0)],
                vec![(-1.0, 1.0), (1.0, -1.0)],
            ],
        )?,
    )?;
    // a hawk-dove instance; the engine takes any grid, none is built in
    analyze(
        "hawk-dove",
        &grid(
            &["H", "D"],
            vec![vec![(0.0, 0.0), (3.0, 1.0)], vec![(1.0, 3.0), (2.0, 2.0)]],
        )?,
    )?;
    Ok(())
}
