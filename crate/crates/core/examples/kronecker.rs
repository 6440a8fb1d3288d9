//! Products of one-level categories placed on separate levels.

use spqg::grading::{class_membership, SeparatingClass};
use spqg::{amalgamated_closure, generate_closure, kronecker_product, named, Bounds};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = Bounds::with_max_cols(4);
    let nc = generate_closure(&[], 1, b)?;
    let all = generate_closure(&[named::cross()], 1, b)?;
    let prod = kronecker_product(&nc, &all);
    let symmetric = prod
        .members()
        .iter()
        .filter(|p| class_membership(p, &SeparatingClass::Symm) == Ok(true))
        .count();
    println!(
        "noncrossing pairs x all pairs: {} members up to 4 columns, {symmetric} level-symmetric",
        prod.len()
    );
    println!("  shape (2,2): {} members", prod.count(2, 2));

    let glued = amalgamated_closure(&nc, &nc, &[named::level_pair()], b)?;
    println!(
        "noncrossing x noncrossing with the level pair: {} members, shape (2,2) has {}",
        glued.len(),
        glued.count(2, 2)
    );
    Ok(())
}
