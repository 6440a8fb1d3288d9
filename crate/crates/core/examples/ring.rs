//! The ring matrix with entries the sums over the second level.

use spqg::io::show_rational;
use spqg::linalg::rat;
use spqg::relations::{ring_matrix, MatrixModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = [2, 0, 1];
    for (label, model) in [
        ("permutation model", MatrixModel::permutation_square(&sigma)),
        ("scaled by 2", MatrixModel::permutation_square(&sigma).scaled(&rat(2))),
    ] {
        let rep = ring_matrix(&model)?;
        println!(
            "{label}: independence {}, orthogonal {}, magic {:?}",
            rep.independence, rep.orthogonal, rep.magic
        );
        for i in 0..rep.n {
            let row: Vec<String> = (0..rep.n)
                .map(|j| show_rational(rep.ring[i * rep.n + j].get(0, 0)))
                .collect();
            println!("  [{}]", row.join(" "));
        }
    }
    Ok(())
}
