//! Runs the nine acceptance checks and prints their reports.

use spqg::conformance::{run_all, Options};

fn main() {
    for r in run_all(&Options::default()) {
        println!("{r}  [{:.2?}]", r.elapsed);
        for d in &r.details {
            println!("    {d}");
        }
    }
}
