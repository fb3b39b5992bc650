//! Measure upper bounds, porosity and residual classes for the Cantor set.

use regular_reals::automaton::trim;
use regular_reals::omega::determinize_partial;
use regular_reals::{corpus, geometry};

fn main() -> regular_reals::Result<()> {
    let c = corpus::cantor();
    for k in 0..=6 {
        println!("depth {k}: box measure {}", geometry::box_measure_estimate(&c, k)?);
    }
    let w = geometry::porosity_witness(&c)?;
    println!("every interval misses a proportional gap; witness [{}, {}] with constant {}", w.left, w.right, w.constant);

    for (name, a) in [("cantor", c), ("distance graph", corpus::fig3())] {
        let d = if a.is_deterministic() { trim(&a)? } else { determinize_partial(&a)? };
        let classes = geometry::kernel_residuals(&d)?;
        println!("{name}: {} residual classes", classes.len());
        for r in classes {
            println!("  {} <- {:?}", r.representative, r.members);
        }
    }
    Ok(())
}
