//! Generating categories and counting members by shape.

use std::time::Instant;

use spqg::{generate_closure, named, Bounds};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (label, gens) in [("no generators", vec![]), ("the crossing", vec![named::cross()])] {
        let t = Instant::now();
        let cs = generate_closure(&gens, 1, Bounds::with_max_cols(8))?.require_saturated()?;
        let counts: Vec<usize> = (1..=4).map(|c| cs.count(0, 2 * c)).collect();
        println!(
            "generated by {label}: {} members up to 8 columns, (0,2c) counts {counts:?}, {:.1?}",
            cs.len(),
            t.elapsed()
        );
    }
    let cs = generate_closure(&[named::level_pair()], 2, Bounds::with_max_cols(4))?;
    println!("level pair on two levels, up to 4 columns:");
    for cols in 0..=4 {
        let row: Vec<usize> = (0..=cols).map(|k| cs.count(k, cols - k)).collect();
        println!("  {cols} columns, k = 0..{cols}: {row:?}");
    }
    Ok(())
}
