//! Closures and suite reports do not depend on the size of the thread pool.

use spqg::conformance::{run, Options};
use spqg::{generate_closure, named, Bounds};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn closure_order_is_thread_independent() {
    let gens = named::pair_partitions_generators();
    let run_with = |t| {
        pool(t).install(|| {
            let cs = generate_closure(&gens, 2, Bounds::with_max_cols(4)).unwrap();
            (
                cs.members().to_vec(),
                (0..cs.len()).map(|i| cs.step(i)).collect::<Vec<_>>(),
            )
        })
    };
    let one = run_with(1);
    assert_eq!(one, run_with(3));
    assert_eq!(one, run_with(8));
}

#[test]
fn reports_are_thread_independent() {
    let opts = Options::default();
    for id in [2, 3, 4, 6] {
        let a = pool(1).install(|| run(id, &opts));
        let b = pool(4).install(|| run(id, &opts));
        assert_eq!((a.passed, &a.details), (b.passed, &b.details), "criterion {id}");
    }
}
