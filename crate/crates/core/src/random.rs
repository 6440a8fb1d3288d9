//! Random partitions for property checks and the randomized conformance suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::partition::SpatialPartition;

/// A random set partition of the `(k+l)·m` points. Each point joins one of the
/// blocks seen so far or opens a new one with equal odds.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, k: usize, l: usize, m: usize) -> SpatialPartition {
    let n = (k + l) * m;
    let mut labels = Vec::with_capacity(n);
    let mut next = 0usize;
    for _ in 0..n {
        let b = rng.gen_range(0..=next);
        if b == next {
            next += 1;
        }
        labels.push(b);
    }
    SpatialPartition::from_labels(k, l, m, labels).expect("label count matches shape")
}

/// A uniformly random pair partition, or `None` when the point count is odd.
pub fn random_pair_partition<R: Rng + ?Sized>(rng: &mut R, k: usize, l: usize, m: usize) -> Option<SpatialPartition> {
    let n = (k + l) * m;
    if n % 2 == 1 {
        return None;
    }
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let mut labels = vec![0; n];
    for (b, chunk) in points.chunks(2).enumerate() {
        labels[chunk[0]] = b;
        labels[chunk[1]] = b;
    }
    Some(SpatialPartition::from_labels(k, l, m, labels).expect("label count matches shape"))
}

/// A random partition with `k + l <= max_cols`, shape chosen uniformly.
pub fn random_shape<R: Rng + ?Sized>(rng: &mut R, max_cols: usize) -> (usize, usize) {
    let cols = rng.gen_range(0..=max_cols);
    let k = rng.gen_range(0..=cols);
    (k, cols - k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_partitions_are_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = random_pair_partition(&mut rng, 3, 1, 2).unwrap();
            assert!(p.is_pair_partition());
        }
        assert!(random_pair_partition(&mut rng, 2, 1, 1).is_none());
    }

    #[test]
    fn shapes_respect_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (k, l) = random_shape(&mut rng, 4);
            assert!(k + l <= 4);
            let p = random_partition(&mut rng, k, l, 2);
            assert_eq!(p.num_points(), (k + l) * 2);
        }
    }
}
