//! The Hilbert curve as a relation between a base-4 parameter and a point of
//! the binary square: the image of each parameter cell, and the check that
//! the depth-4 cover fills every cell of the square.

use std::collections::BTreeMap;

use regular_reals::{corpus, geometry};

fn main() -> regular_reals::Result<()> {
    let h = corpus::hilbert();
    let depth = 2;
    let cover = geometry::attractor_boxes(&h, depth)?;
    let mut order: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for b in &cover.boxes {
        order.entry(b[0]).or_default().push((b[1], b[2]));
    }
    // label each square cell with the first parameter cell reaching it
    let side = 1u64 << depth;
    let mut grid = vec![vec![None; side as usize]; side as usize];
    for (t, cells) in &order {
        for &(x, y) in cells {
            let slot = &mut grid[y as usize][x as usize];
            if slot.is_none() {
                *slot = Some(*t);
            }
        }
    }
    for row in grid.iter().rev() {
        let line: Vec<String> = row.iter().map(|c| c.map_or(" .".into(), |t| format!("{t:2}"))).collect();
        println!("{}", line.join(" "));
    }
    let plane = geometry::attractor_boxes(&h, 4)?.project(&[1, 2]);
    println!("depth 4: {} of 256 cells of the square covered", plane.len());
    Ok(())
}
