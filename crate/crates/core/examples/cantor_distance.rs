//! The distance to the Cantor set, given as a two-tape ternary automaton:
//! check that it is a continuous function, evaluate it, find its slopes and
//! a point where it fails to be affine.

use regular_reals::analysis::{self, Differentiability};
use regular_reals::corpus;
use regular_reals::real::{eval_function, rational};

fn main() -> regular_reals::Result<()> {
    let f = corpus::fig3();
    println!("{} states, {} transitions", f.num_states(), f.num_transitions());

    let report = analysis::is_function(&f)?;
    println!("function: {}", report.is_function());
    println!("continuity: {:?}", analysis::is_continuous(&f)?);

    for (p, q) in [(0, 1), (1, 4), (1, 3), (4, 9), (1, 2), (7, 10), (1, 1)] {
        let x = rational(p, q);
        println!("  d({x}) = {}", eval_function(&f, &x)?);
    }

    let slopes = analysis::slope_set(&f, 4)?;
    let shown: Vec<String> = slopes.slopes.iter().map(|s| s.to_string()).collect();
    println!("slopes {{{}}}, {} witness intervals, covered {}", shown.join(", "), slopes.witnesses.len(), slopes.covered);

    match analysis::is_differentiable(&f)? {
        Differentiability::Affine { alpha, beta } => println!("affine: {alpha} x + {beta}"),
        Differentiability::NotDifferentiable { x, y, f_mid, f_x, f_y } => {
            println!("midpoint identity fails at x = {x}, y = {y}: f(mid) = {f_mid}, (f(x) + f(y))/2 = {}", (f_x + f_y) / rational(2, 1));
        }
    }
    Ok(())
}
