//! The 4x4 table that borders {C, D, Q} with the mixed strategy R, built
//! two ways: verbatim as published, and self-consistently with committed
//! mixing parameters. The committed build shows why the published border
//! is not a single game.

use qgame::report::render_game_table;
use qgame::{combined_table, TableMode};

fn main() -> qgame::Result<()> {
    let published = combined_table(TableMode::AsPublished, None)?;
    println!("as published (R bordered with constant 2.5 entries):\n");
    print!("{}", render_game_table(&published));

    for (p, q) in [(0.0, 1.0), (1.0, 0.0), (0.5, 0.5)] {
        let committed = combined_table(TableMode::Committed, Some((p, q)))?;
        println!("\ncommitted (p,q) = ({p},{q}): every strategy played on the shared state:\n");
        print!("{}", render_game_table(&committed));
    }

    println!(
        "\nWith committed parameters the R row and column move with (p,q): the cell \
         \nC\\R equals (2,2) at (p,q)=(0,1) because Bob's R is then just the identity. \
         \nA border of constant 2.5 entries requires re-optimizing (p,q) against each \
         \nopponent, which is a different game per column."
    );
    Ok(())
}
