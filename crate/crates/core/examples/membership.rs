//! Deciding membership: a construction trace when found, a separating class
//! when one applies.

use spqg::grading::SeparatingClass;
use spqg::{named, search, Bounds, MembershipAnswer};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gens = named::all_partitions_generators();
    let target = named::level_four();
    match search(&gens, 2, &target, Bounds::with_max_cols(8), &[])? {
        MembershipAnswer::Member(trace) => {
            println!("{target} is generated:\n{trace}");
            assert_eq!(trace.replay(&gens, 2).as_ref(), Some(&target));
        }
        other => println!("{other}"),
    }

    let pairs = named::pair_partitions_generators();
    let answer = search(
        &pairs,
        2,
        &named::level_four(),
        Bounds::with_max_cols(6),
        &SeparatingClass::all_plain(),
    )?;
    println!("level four-block among the pair generators: {answer}");

    let answer = search(
        &[named::level_pair()],
        2,
        &named::level_cross(),
        Bounds::with_max_cols(6),
        &SeparatingClass::all_plain(),
    )?;
    println!("level crossing from the level pair alone: {answer}");
    Ok(())
}
