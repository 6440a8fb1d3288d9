//! Checking relations in the model u_{(i1,i2)(j1,j2)} = [σ(j1)=i1][σ(j2)=i2].

use spqg::conformance::{permutations, seven_generators};
use spqg::linalg::rat;
use spqg::named;
use spqg::relations::{check_relation, MatrixModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gens = seven_generators();
    for sigma in permutations(3) {
        let model = MatrixModel::permutation_square(&sigma);
        let all = gens
            .iter()
            .map(|g| check_relation(g, &model).map(|c| c.holds))
            .collect::<Result<Vec<_>, _>>()?;
        println!(
            "sigma {sigma:?}: orthogonal {}, generators hold {all:?}",
            model.is_orthogonal()
        );
    }
    let scaled = MatrixModel::permutation_square(&[1, 0]).scaled(&rat(2));
    let c = check_relation(&named::pair(2), &scaled)?;
    println!(
        "scaled model: orthogonal {}, pair relation fails in {} of {} equations",
        scaled.is_orthogonal(),
        c.failures,
        c.equations
    );
    Ok(())
}
