//! Building spatial partitions and applying the category operations.

use spqg::{named, Corner, SpatialPartition};

fn show(label: &str, p: &SpatialPartition) {
    println!("{label}: {p}\n{}", p.ascii());
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pair = named::pair(1);
    let cup = named::cup(1);
    let r = pair.compose(&cup)?;
    println!("pair on top of cup: {} with {} loop(s)\n", r.partition, r.loops);

    let lc = named::level_cross();
    show("level crossing", &lc);
    show("tensored with the level pair", &lc.tensor(&named::level_pair())?);
    show("rotated left-upper-down", &lc.rotate(Corner::LeftUpperDown)?);
    show("involution of the half three-block", &named::half_three().involution());

    let amp = named::cross().amplify(3)?;
    show("crossing on three levels", &amp);
    show("flattened", &amp.flatten());
    assert_eq!(SpatialPartition::unflatten(&amp.flatten(), 3)?, amp);

    let parsed: SpatialPartition = "P(1,1;2){u1.1,l1.2|u1.2,l1.1}".parse()?;
    assert_eq!(parsed, lc);
    println!("parsed the compact form back: {}", parsed == lc);
    Ok(())
}
