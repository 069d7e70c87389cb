//! Plays the entangled protocol for every pure strategy pair and prints
//! the induced 3x3 payoff matrix: the extended classical game hiding
//! behind the quantum pipeline.

use qgame::report::render_game_table;
use qgame::{
    induced_matrix, play, MixedLocalStrategy, PayoffParams, PayoffWeights, ProtocolSpec,
    StrategyCatalog,
};

fn main() -> qgame::Result<()> {
    let params = PayoffParams::new(3.0, 5.0, 1.0)?;
    let spec = ProtocolSpec::ewl(PayoffWeights::prisoners_dilemma(&params));

    println!("single plays on the entangled state (with disentangler):");
    let c = MixedLocalStrategy::cooperate();
    let d = MixedLocalStrategy::defect();
    let q = MixedLocalStrategy::quantum();
    for (alice, bob) in [(&c, &c), (&c, &d), (&d, &c), (&d, &q), (&q, &q)] {
        println!(
            "  {} vs {} -> {}",
            alice.name(),
            bob.name(),
            play(&spec, alice, bob)
        );
    }

    let game = induced_matrix(&spec, &StrategyCatalog::cdq());
    println!("\ninduced matrix over {{C, D, Q}} with (a,b,c) = (3,5,1):\n");
    print!("{}", render_game_table(&game));
    println!("\nEvery cell is an exact expectation; no sampling is involved.");
    Ok(())
}
