//! Expected payoffs are computed exactly by enumeration; the Monte Carlo
//! mode exists only to demonstrate what a finite run of the protocol would
//! look like. A fixed seed reproduces the estimate bit for bit.

use qgame::{play, play_sampled, MixedLocalStrategy, PayoffParams, PayoffWeights, ProtocolSpec};

fn main() -> qgame::Result<()> {
    let params = PayoffParams::new(3.0, 5.0, 1.0)?;
    let spec = ProtocolSpec::shared_state(PayoffWeights::prisoners_dilemma(&params));
    let alice = MixedLocalStrategy::random_flip(0.3)?;
    let bob = MixedLocalStrategy::random_flip(0.8)?;

    let exact = play(&spec, &alice, &bob);
    println!("exact expectation: {exact}");

    for samples in [100u64, 10_000, 1_000_000] {
        let estimate = play_sampled(&spec, &alice, &bob, samples, 12345);
        println!(
            "{samples:>9} samples (seed 12345): {estimate}  |error| {:.2e}",
            estimate.max_abs_diff(&exact)
        );
    }

    let again = play_sampled(&spec, &alice, &bob, 10_000, 12345);
    println!(
        "\nsame seed, same estimate: {}",
        again == play_sampled(&spec, &alice, &bob, 10_000, 12345)
    );
    Ok(())
}
