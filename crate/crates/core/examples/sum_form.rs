//! Rebuilding the distance function from its slopes and the measure of the
//! intervals where each slope is certified.

use regular_reals::analysis::{self, to_f64};
use regular_reals::corpus;
use regular_reals::real::rational;

fn main() -> regular_reals::Result<()> {
    let f = corpus::fig3();
    for k in [2, 4, 6, 8] {
        let covered = analysis::slope_set(&f, k)?.covered;
        println!("depth {k}: covered {covered} ({:.4})", to_f64(&covered));
    }
    for t in [rational(1, 4), rational(1, 2), rational(3, 4), rational(1, 1)] {
        let s = analysis::sum_form_check(&f, &t, 8)?;
        println!("f({}) = {}, rebuilt {}, residual {}", s.t, s.value, s.reconstruction, s.residual);
    }
    Ok(())
}
