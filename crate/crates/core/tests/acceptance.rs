//! Prints one PASS/FAIL line per criterion.
//!
//! Two criteria are known to fail against the statements they check; the test
//! asserts those failures have exactly the expected shape and that every
//! other criterion passes.

use spqg::conformance::{run_all, CriterionReport, Options};

fn print(r: &CriterionReport) {
    println!("{r}  [{:.2?}]", r.elapsed);
    for d in &r.details {
        println!("    {d}");
    }
}

fn main() {
    let reports = run_all(&Options::default());
    for r in &reports {
        print(r);
    }
    for r in &reports {
        match r.id {
            // the identity S_p S_q = N^loops S_c breaks once an erased
            // component misses a level; the per-level factor holds throughout
            1 => {
                assert!(!r.passed);
                let failing: Vec<&String> = r.details.iter().filter(|d| d.starts_with("FAIL")).collect();
                assert_eq!(failing.len(), 1, "{failing:?}");
                assert!(failing[0].contains("factor N^loops"));
                assert!(r
                    .details
                    .iter()
                    .any(|d| d.contains("per erased component") && d.ends_with(": 0 failures")));
            }
            // the displayed relations of the level four-block are those of the level pairs
            6 => {
                assert!(!r.passed);
                let failing: Vec<&String> = r.details.iter().filter(|d| d.starts_with("FAIL")).collect();
                assert_eq!(failing.len(), 1, "{failing:?}");
                assert!(failing[0].contains("level four-block"));
                assert!(failing[0].contains("coincides with the relations of the level pairs"));
                assert!(r.details.iter().any(|d| d.contains("14 of 15")));
            }
            _ => assert!(r.passed, "criterion {} failed: {:#?}", r.id, r.details),
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    println!(
        "{passed} of {} criteria pass; criteria 1 and 6 fail in the expected way",
        reports.len()
    );
}
