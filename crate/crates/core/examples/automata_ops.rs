//! Parsing, boolean operations and decision procedures on a small automaton.

use regular_reals::omega::{complement_det, determinize_closed, is_empty, language_equal, product_intersect, universality_closed};
use regular_reals::real::{saturate, value_universality};
use regular_reals::{accepts, format, Lasso};

const NO_DOUBLE_ONES: &str = "\
# binary words with no two consecutive 1s
radix 2
states a b
initial a
accepting a b
trans a (0) a
trans a (1) b
trans b (0) a
";

fn main() -> regular_reals::Result<()> {
    let a = format::parse(NO_DOUBLE_ONES)?;
    let w = Lasso::new(vec![1], vec![0, 1]);
    println!("{} accepted: {}", w.display(a.radix()), accepts(&a, &w));

    let det = determinize_closed(&a)?;
    let comp = complement_det(&det)?;
    println!("determinized: {} states; complement witness {:?}", det.num_states(), is_empty(&comp).witness().map(|w| w.display(a.radix())));
    println!("intersection with complement empty: {}", is_empty(&product_intersect(&det, &comp)?).is_empty());

    let missing = universality_closed(&a)?;
    println!("word missing from the language: {:?}", missing.counterexample().map(|w| w.display(a.radix())));
    // numbers like 3/4 need two consecutive 1s in every encoding
    println!("value set is all of [0,1]: {}", value_universality(&a)?.is_universal());

    let s = saturate(&a)?;
    println!("saturated: {} states, equal to input: {}", s.num_states(), language_equal(&s, &a)?);
    print!("{}", format::serialize(&s));
    Ok(())
}
