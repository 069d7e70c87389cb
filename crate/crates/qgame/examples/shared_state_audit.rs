//! Recomputes the shared-state submatrix from first principles and points
//! at the two cells where the published table cannot be reproduced.

use qgame::report::render_game_table;
use qgame::{induced_matrix, PayoffParams, PayoffWeights, ProtocolSpec, StrategyCatalog};

fn main() -> qgame::Result<()> {
    let params = PayoffParams::new(3.0, 5.0, 1.0)?;
    let spec = ProtocolSpec::shared_state(PayoffWeights::prisoners_dilemma(&params));
    let game = induced_matrix(&spec, &StrategyCatalog::cdq());

    println!("{{C, D, Q}} on (|00>+|11>)/sqrt(2), no gate before measurement:\n");
    print!("{}", render_game_table(&game));

    println!("\npublished version of the same submatrix:\n");
    println!("A\\B  C          D          Q");
    println!("C    (2,2)      (2.5,2.5)  (2.5,2.5)");
    println!("D    (2.5,2.5)  (2,2)      (2.5,2.5)");
    println!("Q    (2.5,2.5)  (2.5,2.5)  (2,2)");

    println!(
        "\nThe cells C\\Q and Q\\C disagree: both I and iZ are diagonal, so their \
         \ncombination never flips a bit. The outcome stays on {{00, 11}} and pays \
         \n(3+1)/2 = 2 per player, not 2.5. The claim audit reports exactly these two \
         \ncells as flagged discrepancies (see the claim_audit example)."
    );
    Ok(())
}
