//! Dimensions of the spans of S_p over a category's members of one shape.

use spqg::tensor_maps::{hom_dim, Dims, SizeCap};
use spqg::{generate_closure, named, Bounds};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cap = SizeCap::from_env();
    let nc = generate_closure(&[], 1, Bounds::with_max_cols(6))?;
    let all = generate_closure(&[named::cross()], 1, Bounds::with_max_cols(6))?;
    println!("shape (0,2c): members and dimension at n = 1, 2, 3");
    for c in 1..=3 {
        for (label, cs) in [("noncrossing", &nc), ("all pairs", &all)] {
            let parts: Vec<_> = cs.members_of_shape(0, 2 * c).cloned().collect();
            let dims: Vec<usize> = (1..=3)
                .map(|n| hom_dim(&parts, &Dims::uniform(n, 1), cap))
                .collect::<Result<_, _>>()?;
            println!("  c = {c}, {label:<11}: {:>3} members, dims {dims:?}", parts.len());
        }
    }
    Ok(())
}
