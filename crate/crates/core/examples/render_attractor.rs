//! Box cover of an automaton's value set as a character grid.
//!
//!     cargo run --example render_attractor -- [file.regba] [depth] [out.csv]

use regular_reals::{corpus, format, geometry};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a = match args.first() {
        Some(path) => format::parse(&std::fs::read_to_string(path)?)?,
        None => corpus::fig3(),
    };
    let depth: usize = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let cover = geometry::attractor_boxes(&a, depth)?;
    println!("{} boxes at depth {depth}", cover.len());

    let side = |c: usize| (cover.radix[c] as u64).pow(depth as u32);
    match a.arity() {
        1 => {
            let line: String = (0..side(0)).map(|m| if cover.boxes.contains(&vec![m]) { '#' } else { '.' }).collect();
            println!("{line}");
        }
        _ => {
            // first two tapes, y upwards, empty rows above the set dropped
            let plane = cover.project(&[0, 1]);
            let top = plane.boxes.iter().map(|b| b[1]).max().unwrap_or(0);
            for y in (0..=top.min(side(1) - 1)).rev() {
                let row: String = (0..side(0)).map(|x| if plane.boxes.contains(&vec![x, y]) { '#' } else { '.' }).collect();
                println!("{row}");
            }
        }
    }
    if let Some(out) = args.get(2) {
        std::fs::write(out, cover.to_csv())?;
        println!("wrote {out}");
    }
    Ok(())
}
