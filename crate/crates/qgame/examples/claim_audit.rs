//! Runs the full claim audit at the default tolerance and prints the
//! human-readable report: every computed table, one verdict line per
//! claim, and the two flagged discrepancies.

use qgame::report::{render_bundle_table, run_claim_suite};

fn main() -> qgame::Result<()> {
    let bundle = run_claim_suite(1e-9, 101)?;
    print!("{}", render_bundle_table(&bundle));
    std::process::exit(bundle.exit_code());
}
