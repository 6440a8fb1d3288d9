//! Writing out R(p) for a few two-level partitions.

use spqg::named;
use spqg::relations::emit_relations;
use spqg::tensor_maps::{Dims, SizeCap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = Dims::uniform(2, 2);
    for p in [named::level_pair(), named::level_cross(), named::singletons_on_level(1)] {
        let rel = emit_relations(&p, &d, SizeCap::from_env())?;
        println!(
            "{} equations, {} nontrivial",
            rel.equations.len(),
            rel.nontrivial().count()
        );
        println!("{rel}");
    }
    Ok(())
}
