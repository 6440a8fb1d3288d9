//! The linear maps S_p and how they follow tensor, involution and composition.

use spqg::named;
use spqg::tensor_maps::{s_map, verify_functoriality, Dims, SizeCap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cap = SizeCap::from_env();
    let d = Dims::uniform(2, 2);
    let sp = s_map(&named::pair(2), &d, cap)?;
    let ones: Vec<usize> = sp.iter().map(|(r, _, _)| r).collect();
    println!("S of the two-level pair at dims {d}: rows {ones:?} of {}", sp.rows());

    let cases = [
        (
            "cup after pair, one level",
            named::cup(1),
            named::pair(1),
            Dims::uniform(3, 1),
        ),
        ("crossing twice", named::cross(), named::cross(), Dims::uniform(3, 1)),
        (
            "level pair closed by its adjoint",
            named::level_pair().involution(),
            named::level_pair(),
            d.clone(),
        ),
        (
            "two-level cup after pair",
            named::cup(2),
            named::pair(2),
            Dims::new(vec![2, 3])?,
        ),
    ];
    for (label, p, q, dims) in cases {
        let r = verify_functoriality(&p, &q, &dims, cap)?;
        println!(
            "{label} at {dims}: tensor {}, involution {}, loops {:?}, N^loops {:?}, per-level factor {:?}",
            r.tensor, r.involution, r.loops, r.composition, r.per_level_composition
        );
    }
    Ok(())
}
