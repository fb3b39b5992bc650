//! Graphs of affine maps in several bases, and the midpoint test that
//! recognizes them.

use regular_reals::analysis;
use regular_reals::real::{affine_graph_automaton, eval_function, rational};

fn main() -> regular_reals::Result<()> {
    let maps = [(rational(1, 2), rational(1, 4)), (rational(-2, 3), rational(5, 6)), (rational(0, 1), rational(1, 3))];
    for r in [2, 3, 5] {
        for (alpha, beta) in &maps {
            let g = affine_graph_automaton(alpha, beta, r)?;
            let d = analysis::is_differentiable(&g)?;
            let x = rational(3, 7);
            println!(
                "r={r} f(x) = {alpha}x + {beta}: {} states, differentiable {}, f(3/7) = {}",
                g.num_states(),
                d.is_differentiable(),
                eval_function(&g, &x)?
            );
        }
    }
    match affine_graph_automaton(&rational(2, 1), &rational(0, 1), 2) {
        Err(e) => println!("2x leaves the unit square: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
