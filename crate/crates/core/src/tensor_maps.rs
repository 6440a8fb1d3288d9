//! The linear maps `S_p` and what can be computed from them.
//!
//! Indices are 0-based here: a level tuple is `(i_1..i_m)` with
//! `0 <= i_y < n_y`. Basis vectors of `C^N`, `N = n_1⋯n_m`, are ordered
//! lexicographically with level 1 most significant, and tensor powers are
//! ordered with the leftmost factor most significant. With that order the
//! flattened partition acting on `C^{n_1}⊗…⊗C^{n_m}` gives literally the
//! same matrix as the spatial one.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::grading::{is_pi_graded, ker_partition};
use crate::linalg::{rat, sparse_rank, SpMatrix, SparseRow};
use crate::partition::{Side, SpatialPartition};

pub const DEFAULT_MAX_CELLS: u128 = 10_000_000;
pub const MAX_CELLS_ENV: &str = "SPQG_MAX_CELLS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorMapError {
    #[error("dimension list must be nonempty with every entry >= 1")]
    BadDims,
    #[error("partition has {0} levels but {1} dimensions were given")]
    LevelMismatch(usize, usize),
    #[error("partition {0} is not graded by the kernel of the dimensions")]
    Grading(String),
    #[error("index out of range: {0}")]
    Range(String),
    #[error("map would span {cells} cells, above the cap of {cap}")]
    Size { cells: u128, cap: u128 },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Level dimensions `n_1..n_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    dims: Vec<usize>,
}

impl Dims {
    pub fn new(dims: Vec<usize>) -> Result<Self, TensorMapError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(TensorMapError::BadDims);
        }
        Ok(Dims { dims })
    }

    /// `m` levels of dimension `n`.
    pub fn uniform(n: usize, m: usize) -> Self {
        Dims::new(vec![n; m]).expect("n, m >= 1")
    }

    pub fn levels(&self) -> usize {
        self.dims.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    /// `n` of a 1-based level.
    pub fn n(&self, level: usize) -> usize {
        self.dims[level - 1]
    }

    /// `N = n_1⋯n_m`.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// The basis index of a level tuple.
    pub fn tuple_index(&self, t: &[usize]) -> usize {
        t.iter().zip(&self.dims).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn tuple_at(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.dims.len()];
        for (slot, &n) in t.iter_mut().zip(&self.dims).rev() {
            *slot = idx % n;
            idx /= n;
        }
        t
    }

    /// Basis index of a multi index in the `len`-fold tensor power.
    pub fn multi_index(&self, tuples: &[Vec<usize>]) -> usize {
        let n = self.total();
        tuples.iter().fold(0, |acc, t| acc * n + self.tuple_index(t))
    }

    pub fn multi_at(&self, mut idx: usize, len: usize) -> Vec<Vec<usize>> {
        let n = self.total();
        let mut out = vec![Vec::new(); len];
        for slot in out.iter_mut().rev() {
            *slot = self.tuple_at(idx % n);
            idx /= n;
        }
        out
    }

    /// `N^power` as a wide integer, for size checks.
    pub fn total_pow(&self, power: usize) -> u128 {
        (self.total() as u128).saturating_pow(power as u32)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Dims {
    type Err = TensorMapError;

    /// Comma separated, e.g. `2,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let dims = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| TensorMapError::BadDims))
            .collect::<Result<Vec<_>, _>>()?;
        Dims::new(dims)
    }
}

/// Upper limit on `N^(k+l)` for any map that gets built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCap(pub u128);

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(DEFAULT_MAX_CELLS)
    }
}

impl SizeCap {
    /// The default, unless `SPQG_MAX_CELLS` holds a number.
    pub fn from_env() -> Self {
        std::env::var(MAX_CELLS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(SizeCap)
            .unwrap_or_default()
    }

    pub fn check(&self, d: &Dims, cols: usize) -> Result<(), TensorMapError> {
        let cells = d.total_pow(cols);
        if cells > self.0 {
            return Err(TensorMapError::Size { cells, cap: self.0 });
        }
        Ok(())
    }
}

fn check_graded(p: &SpatialPartition, d: &Dims) -> Result<(), TensorMapError> {
    if p.levels() != d.levels() {
        return Err(TensorMapError::LevelMismatch(p.levels(), d.levels()));
    }
    let pi = ker_partition(d.as_slice());
    if !is_pi_graded(p, &pi).expect("levels checked") {
        return Err(TensorMapError::Grading(p.to_string()));
    }
    Ok(())
}

fn check_tuples(tuples: &[Vec<usize>], count: usize, d: &Dims, what: &str) -> Result<(), TensorMapError> {
    if tuples.len() != count {
        return Err(TensorMapError::Range(format!(
            "{what} has {} tuples, expected {count}",
            tuples.len()
        )));
    }
    for t in tuples {
        if t.len() != d.levels() || t.iter().zip(d.as_slice()).any(|(&i, &n)| i >= n) {
            return Err(TensorMapError::Range(format!("{what} tuple {t:?} outside dims {d}")));
        }
    }
    Ok(())
}

/// 1 iff every block of `p` sees a single value when the upper points carry
/// `upper` and the lower points carry `lower`.
pub fn delta(
    p: &SpatialPartition,
    upper: &[Vec<usize>],
    lower: &[Vec<usize>],
    d: &Dims,
) -> Result<bool, TensorMapError> {
    check_graded(p, d)?;
    check_tuples(upper, p.upper(), d, "upper index")?;
    check_tuples(lower, p.lower(), d, "lower index")?;
    Ok(delta_unchecked(p, upper, lower))
}

pub(crate) fn delta_unchecked(p: &SpatialPartition, upper: &[Vec<usize>], lower: &[Vec<usize>]) -> bool {
    let m = p.levels();
    let mut value = vec![usize::MAX; p.num_blocks()];
    for (idx, &b) in p.labels().iter().enumerate() {
        let pt = p.point_at(idx);
        let v = match pt.side {
            Side::Upper => upper[pt.col - 1][pt.level - 1],
            Side::Lower => lower[pt.col - 1][pt.level - 1],
        };
        debug_assert_eq!(idx % m, pt.level - 1);
        let slot = &mut value[b as usize];
        if *slot == usize::MAX {
            *slot = v;
        } else if *slot != v {
            return false;
        }
    }
    true
}

/// For each block: its range and its contribution to the row and column index
/// per unit of value.
fn block_weights(p: &SpatialPartition, d: &Dims) -> Vec<(usize, usize, usize)> {
    let n = d.total();
    let m = d.levels();
    let mut stride = vec![1usize; m];
    for y in (0..m.saturating_sub(1)).rev() {
        stride[y] = stride[y + 1] * d.as_slice()[y + 1];
    }
    let mut out = vec![(0usize, 0usize, 0usize); p.num_blocks()];
    for (idx, &b) in p.labels().iter().enumerate() {
        let pt = p.point_at(idx);
        let y = pt.level - 1;
        let entry = &mut out[b as usize];
        entry.0 = d.as_slice()[y];
        match pt.side {
            Side::Upper => entry.2 += n.pow((p.upper() - pt.col) as u32) * stride[y],
            Side::Lower => entry.1 += n.pow((p.lower() - pt.col) as u32) * stride[y],
        }
    }
    out
}

/// Calls `f(row, col)` for every nonzero entry of `S_p`.
fn for_each_entry(p: &SpatialPartition, d: &Dims, mut f: impl FnMut(usize, usize)) {
    let weights = block_weights(p, d);
    let mut digits = vec![0usize; weights.len()];
    loop {
        let (mut row, mut col) = (0, 0);
        for (v, &(_, wr, wc)) in digits.iter().zip(&weights) {
            row += v * wr;
            col += v * wc;
        }
        f(row, col);
        // odometer over block values
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < weights[i].0 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// `S_p` as an `N^l × N^k` matrix of zeros and ones.
pub fn s_map(p: &SpatialPartition, d: &Dims, cap: SizeCap) -> Result<SpMatrix, TensorMapError> {
    check_graded(p, d)?;
    cap.check(d, p.cols())?;
    let n = d.total();
    let mut m = SpMatrix::zeros(n.pow(p.lower() as u32), n.pow(p.upper() as u32));
    for_each_entry(p, d, |r, c| m.set(r, c, rat(1)));
    Ok(m)
}

/// Outcome of checking the three compatibility laws for one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityReport {
    /// `S_{p⊗q} = S_p ⊗ S_q`.
    pub tensor: bool,
    /// `S_{p*} = S_p^T` (checked for `p`).
    pub involution: bool,
    /// `S_p S_q = N^loops S_{compose(q,p)}`, when `q` can sit on top of `p`.
    pub composition: Option<bool>,
    /// The same product against `∏ n_y` over the erased components, `y` a
    /// level each one touches. Differs from `N^loops` once a component misses
    /// a level.
    pub per_level_composition: Option<bool>,
    pub loops: Option<usize>,
}

impl FunctorialityReport {
    pub fn all_hold(&self) -> bool {
        self.tensor && self.involution && self.composition.unwrap_or(true)
    }
}

pub fn verify_functoriality(
    p: &SpatialPartition,
    q: &SpatialPartition,
    d: &Dims,
    cap: SizeCap,
) -> Result<FunctorialityReport, TensorMapError> {
    let sp = s_map(p, d, cap)?;
    let sq = s_map(q, d, cap)?;
    let pq = p.tensor(q).map_err(|e| TensorMapError::Shape(e.to_string()))?;
    let tensor = s_map(&pq, d, cap)? == sp.kron(&sq);
    let involution = s_map(&p.involution(), d, cap)? == sp.transpose();
    let (composition, per_level_composition, loops) = if q.lower() == p.upper() {
        let r = q.compose(p).map_err(|e| TensorMapError::Shape(e.to_string()))?;
        let lhs = sp.mul(&sq);
        let sc = s_map(&r.partition, d, cap)?;
        let factor = rat(d.total() as i64).pow(r.loops as i32);
        let per_level = r
            .loop_levels
            .iter()
            .fold(rat(1), |acc, levels| acc * rat(d.n(levels[0]) as i64));
        (
            Some(lhs == sc.scale(&factor)),
            Some(lhs == sc.scale(&per_level)),
            Some(r.loops),
        )
    } else {
        (None, None, None)
    };
    Ok(FunctorialityReport {
        tensor,
        involution,
        composition,
        per_level_composition,
        loops,
    })
}

/// Exact rank of `{S_p}` viewed as vectors of length `N^(k+l)`.
pub fn hom_dim(parts: &[SpatialPartition], d: &Dims, cap: SizeCap) -> Result<usize, TensorMapError> {
    let Some(first) = parts.first() else {
        return Ok(0);
    };
    let (k, l) = (first.upper(), first.lower());
    for p in parts {
        if (p.upper(), p.lower()) != (k, l) {
            return Err(TensorMapError::Shape(format!(
                "expected shape ({k},{l}), got ({},{})",
                p.upper(),
                p.lower()
            )));
        }
        check_graded(p, d)?;
    }
    cap.check(d, k + l)?;
    let width = d.total().pow(k as u32);
    let rows = parts.iter().map(|p| {
        let mut row = SparseRow::new();
        for_each_entry(p, d, |r, c| {
            row.insert(r * width + c, BigInt::one());
        });
        row
    });
    Ok(sparse_rank(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn d(v: &[usize]) -> Dims {
        Dims::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dims_basics() {
        let dd = d(&[2, 3]);
        assert_eq!(dd.total(), 6);
        assert_eq!(dd.tuple_index(&[1, 2]), 5);
        assert_eq!(dd.tuple_at(4), vec![1, 1]);
        assert_eq!(
            dd.multi_at(dd.multi_index(&[vec![1, 0], vec![0, 2]]), 2),
            vec![vec![1, 0], vec![0, 2]]
        );
        assert_eq!("2, 2".parse::<Dims>().unwrap(), d(&[2, 2]));
        assert!(Dims::new(vec![]).is_err());
        assert!("2,0".parse::<Dims>().is_err());
    }

    #[test]
    fn delta_examples() {
        let one = d(&[2]);
        let id = named::identity(1);
        assert!(delta(&id, &[vec![1]], &[vec![1]], &one).unwrap());
        assert!(!delta(&id, &[vec![0]], &[vec![1]], &one).unwrap());
        let two = d(&[2, 2]);
        let pair = named::pair(2);
        assert!(delta(&pair, &[], &[vec![0, 1], vec![0, 1]], &two).unwrap());
        assert!(!delta(&pair, &[], &[vec![0, 1], vec![1, 1]], &two).unwrap());
        assert!(delta(&named::cross(), &[vec![0], vec![1]], &[vec![1], vec![0]], &one).unwrap());
        assert!(matches!(
            delta(&id, &[vec![2]], &[vec![0]], &one),
            Err(TensorMapError::Range(_))
        ));
        assert!(matches!(
            delta(&named::level_pair(), &[], &[vec![0, 0]], &d(&[2, 3])),
            Err(TensorMapError::Grading(_))
        ));
    }

    #[test]
    fn s_map_examples() {
        let cap = SizeCap::default();
        for dims in [vec![2], vec![3], vec![2, 2], vec![2, 3]] {
            let dd = d(&dims);
            let m = dims.len();
            assert_eq!(
                s_map(&named::identity(m), &dd, cap).unwrap(),
                SpMatrix::identity(dd.total())
            );
        }
        let pair = s_map(&named::pair(1), &d(&[2]), cap).unwrap();
        assert_eq!((pair.rows(), pair.cols()), (4, 1));
        let ones: Vec<usize> = pair.iter().map(|(r, _, _)| r).collect();
        assert_eq!(ones, vec![0, 3]);

        let pair2 = s_map(&named::pair(2), &d(&[2, 2]), cap).unwrap();
        let ones: Vec<usize> = pair2.iter().map(|(r, _, _)| r).collect();
        assert_eq!(ones, vec![0, 5, 10, 15]);
        assert!(matches!(
            s_map(&named::pair(1), &d(&[10]), SizeCap(99)),
            Err(TensorMapError::Size { cells: 100, cap: 99 })
        ));
    }

    #[test]
    fn functoriality_examples() {
        let cap = SizeCap::default();
        let r = verify_functoriality(&named::cup(1), &named::pair(1), &d(&[2]), cap).unwrap();
        assert_eq!(r.loops, Some(1));
        assert!(r.all_hold());
        let sq = s_map(&named::pair(1), &d(&[2]), cap).unwrap();
        let sp = s_map(&named::cup(1), &d(&[2]), cap).unwrap();
        assert_eq!(sp.mul(&sq).get(0, 0), rat(2));

        let r = verify_functoriality(&named::identity(1), &named::identity(1), &d(&[3]), cap).unwrap();
        assert!(r.all_hold());
        let r = verify_functoriality(&named::cross(), &named::cross(), &d(&[3]), cap).unwrap();
        assert_eq!(r.loops, Some(0));
        assert!(r.all_hold());
        let sc = s_map(&named::cross(), &d(&[3]), cap).unwrap();
        assert_eq!(sc.mul(&sc), SpMatrix::identity(9));
    }

    #[test]
    fn loops_missing_a_level_scale_by_that_level() {
        let cap = SizeCap::default();
        // the level pair closed by its adjoint: one component, both levels
        let lp = named::level_pair();
        let r = verify_functoriality(&lp.involution(), &lp, &d(&[2, 2]), cap).unwrap();
        assert_eq!(r.loops, Some(1));
        assert_eq!(r.composition, Some(false));
        assert_eq!(r.per_level_composition, Some(true));
        // two singletons per level: two components, one level each
        let s = named::singleton(2);
        let r = verify_functoriality(&s.involution(), &s, &d(&[2, 3]), cap).unwrap();
        assert_eq!(r.loops, Some(2));
        assert_eq!(r.per_level_composition, Some(true));
        let prod = s_map(&s.involution(), &d(&[2, 3]), cap)
            .unwrap()
            .mul(&s_map(&s, &d(&[2, 3]), cap).unwrap());
        assert_eq!(prod.get(0, 0), rat(6));
        // amplified partitions lose one component per level, matching N per original loop
        let r = verify_functoriality(&named::cup(2), &named::pair(2), &d(&[2, 3]), cap).unwrap();
        assert_eq!(r.loops, Some(2));
        assert_eq!(r.per_level_composition, Some(true));
    }

    #[test]
    fn snake_identity_numerically() {
        let cap = SizeCap::default();
        let id = named::identity(1);
        let top = named::pair(1).tensor(&id).unwrap();
        let bottom = id.tensor(&named::cup(1)).unwrap();
        let dd = d(&[2]);
        let prod = s_map(&bottom, &dd, cap).unwrap().mul(&s_map(&top, &dd, cap).unwrap());
        assert_eq!(prod, SpMatrix::identity(2));
    }

    #[test]
    fn hom_dim_examples() {
        let cap = SizeCap::default();
        assert_eq!(hom_dim(&[named::pair(1)], &d(&[2]), cap).unwrap(), 1);
        let nc4 = [
            named::pair(1).tensor(&named::pair(1)).unwrap(),
            named::pair(1)
                .rotate(crate::Corner::LeftLowerUp)
                .unwrap()
                .tensor(&named::identity(1))
                .unwrap()
                .rotate(crate::Corner::LeftUpperDown)
                .unwrap()
                .rotate(crate::Corner::LeftUpperDown)
                .unwrap(),
        ];
        assert_eq!(nc4[1].shape(), (0, 4, 1));
        assert_ne!(nc4[0], nc4[1]);
        assert_eq!(hom_dim(&nc4, &d(&[2]), cap).unwrap(), 2);
        assert_eq!(hom_dim(&nc4, &d(&[1]), cap).unwrap(), 1);
        assert_eq!(hom_dim(&[], &d(&[2]), cap).unwrap(), 0);
        assert!(matches!(
            hom_dim(&[named::pair(1), named::identity(1)], &d(&[2]), cap),
            Err(TensorMapError::Shape(_))
        ));
    }
}
