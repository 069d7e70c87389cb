//! Two-qubit quantum game engine and equilibrium analyzer.
//!
//! The crate simulates the quantized Prisoners' Dilemma exactly: an
//! entangled two-qubit state, independent local moves, an optional
//! disentangling gate, and computational-basis measurement whose outcome
//! statistics are turned into expected payoffs. Any finite strategy set
//! reduces to an ordinary classical bimatrix game, which the equilibrium
//! module then analyzes. A claim audit compares every computed table and
//! value against the published ones and flags the cells that disagree.
//!
//! Modules:
//! - [`quantum`] - states, local/joint unitaries, Born-rule statistics
//! - [`game`] - payoff weights, bimatrix games, mixed profiles
//! - [`protocol`] - the playable pipelines and the matrix reduction
//! - [`equilibrium`] - best responses, pure/mixed Nash, dominance
//! - [`report`] - the claim audit, JSON schemas, and the CLI surface
//!
//! Each capability has a runnable example:
//!
//! ```bash
//! cargo run -p qgame --example ewl_extended_matrix
//! cargo run -p qgame --example shared_state_audit
//! cargo run -p qgame --example random_flip_strategy
//! cargo run -p qgame --example combined_tables
//! cargo run -p qgame --example equilibrium_analysis
//! cargo run -p qgame --example replication_check
//! cargo run -p qgame --example sampled_play
//! cargo run -p qgame --example claim_audit
//! ```

pub mod equilibrium;
pub mod error;
pub mod game;
pub mod protocol;
pub mod quantum;
pub mod report;

pub use error::{Error, Result};
pub use game::{BimatrixGame, MixedProfile, PayoffPair, PayoffParams, PayoffWeights, TOL_PAYOFF};
pub use protocol::{
    classical_replication_check, combined_table, induced_matrix, play, play_sampled, vb_maximize,
    vb_payoff_closed_form, MixedLocalStrategy, ProtocolSpec, StrategyCatalog, TableMode,
};
pub use quantum::{
    disentangler, tensor, Amplitude, JointUnitary, LocalUnitary, OutcomeDistribution,
    TwoQubitState, TOL_ALGEBRAIC,
};
