//! The mixed identity/flip strategy R: exact simulation against the
//! closed-form payoff (4 - 2pq + p + q)/2 and its maximization.

use qgame::{
    play, vb_maximize, vb_payoff_closed_form, MixedLocalStrategy, PayoffParams, PayoffWeights,
    ProtocolSpec,
};

fn main() -> qgame::Result<()> {
    let params = PayoffParams::new(3.0, 5.0, 1.0)?;
    let spec = ProtocolSpec::shared_state(PayoffWeights::prisoners_dilemma(&params));

    println!("R(p) vs R(q) on the shared state, simulation vs closed form:");
    for (p, q) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.5, 0.5), (0.3, 0.8)] {
        let simulated = play(
            &spec,
            &MixedLocalStrategy::random_flip(p)?,
            &MixedLocalStrategy::random_flip(q)?,
        );
        let formula = vb_payoff_closed_form(p, q)?;
        println!(
            "  p={p:<4} q={q:<4} simulated {simulated}  closed form {formula}  |diff| {:.1e}",
            simulated.max_abs_diff(&formula)
        );
    }

    let maximum = vb_maximize();
    println!("\nmaximum over the unit square: {}", maximum.value);
    println!("vertex maximizers: {:?}", maximum.maximizers);
    println!(
        "grid sweep ({} points per axis) agrees: max {} at {:?}",
        maximum.grid_points, maximum.grid_value, maximum.grid_maximizers
    );
    println!(
        "\nThe payoff is bilinear in (p, q), so the square's maximum sits on a vertex; \
         \nthe sweep is a cross-check, not the source of truth."
    );

    // restricting both players to the same p caps the payoff at 2.25
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let v = vb_payoff_closed_form(p, p)?.alice;
        if v > best.0 {
            best = (v, p);
        }
    }
    println!(
        "\nsymmetric play only: maximum {} at p = q = {}",
        best.0, best.1
    );
    Ok(())
}
