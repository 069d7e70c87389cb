//! The matrix defines the game: treating an induced table as an ordinary
//! classical game reproduces every quantum expectation exactly. A corrupted
//! cell shows up as a reported deviation, not an error.

use qgame::{
    classical_replication_check, induced_matrix, BimatrixGame, PayoffPair, PayoffParams,
    PayoffWeights, ProtocolSpec, StrategyCatalog,
};

fn main() -> qgame::Result<()> {
    let params = PayoffParams::new(3.0, 5.0, 1.0)?;
    let catalog = StrategyCatalog::cdq();

    for (title, spec) in [
        (
            "entangled protocol",
            ProtocolSpec::ewl(PayoffWeights::prisoners_dilemma(&params)),
        ),
        (
            "shared-state protocol",
            ProtocolSpec::shared_state(PayoffWeights::prisoners_dilemma(&params)),
        ),
    ] {
        let game = induced_matrix(&spec, &catalog);
        let report = classical_replication_check(&game, &spec, &catalog);
        println!(
            "{title}: max deviation {:.2e} -> replicated {}",
            report.max_deviation,
            report.passes(1e-9)
        );
    }

    // inject a fault and watch the check localize it
    let spec = ProtocolSpec::ewl(PayoffWeights::prisoners_dilemma(&params));
    let game = induced_matrix(&spec, &catalog);
    let mut cells: Vec<Vec<PayoffPair>> = game.cells().to_vec();
    cells[1][2].alice += 0.1;
    let corrupted = BimatrixGame::new(
        game.row_labels().to_vec(),
        game.col_labels().to_vec(),
        cells,
    )?;
    let report = classical_replication_check(&corrupted, &spec, &catalog);
    println!("\nafter corrupting cell D\\Q by +0.1:");
    println!("  max deviation {:.3}", report.max_deviation);
    for (i, row) in report.cell_deviations.iter().enumerate() {
        for (j, dev) in row.iter().enumerate() {
            if *dev > 1e-9 {
                println!(
                    "  deviating cell: {}\\{} off by {dev:.3}",
                    game.row_labels()[i],
                    game.col_labels()[j]
                );
            }
        }
    }
    Ok(())
}
