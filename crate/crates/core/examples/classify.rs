//! Which separating classes contain the named two-level partitions.

use spqg::grading::{class_membership, SeparatingClass};
use spqg::named;

fn main() {
    let classes = SeparatingClass::all_plain();
    print!("{:<22}", "");
    for c in &classes {
        print!("{:>18}", c.to_string());
    }
    println!();
    for name in named::NAMES {
        let p = named::lookup(&format!("{name}^2"))
            .or_else(|| named::lookup(name))
            .unwrap();
        if p.levels() != 2 {
            continue;
        }
        print!("{name:<22}");
        for c in &classes {
            let cell = match class_membership(&p, c) {
                Ok(true) => "yes",
                Ok(false) => "no",
                Err(_) => "-",
            };
            print!("{cell:>18}");
        }
        println!();
    }
}
