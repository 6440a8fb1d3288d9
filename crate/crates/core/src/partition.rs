//! Spatial partitions and their structural operations.
//!
//! A spatial partition in `P^(m)(k,l)` is a set partition of the points
//! `(side, col, level)` with `k` upper columns, `l` lower columns and `m`
//! levels. Columns are numbered left to right on *both* rows and levels are
//! numbered from 1, so `u3.2` is the upper point in the third column on the
//! second level.
//!
//! Points are stored in flattening order: upper points row-major by
//! `(col, level)`, then lower points row-major by `(col, level)`. Every value
//! is kept as a restricted-growth string (block labels assigned by first
//! occurrence) over that order, so derived equality and hashing coincide with
//! equality of partitions, and flattening is a pure reinterpretation of the
//! shape.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dsu::DisjointSets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

/// A point of a spatial partition. `col` and `level` are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointRef {
    pub side: Side,
    pub col: usize,
    pub level: usize,
}

impl PointRef {
    pub fn upper(col: usize, level: usize) -> Self {
        PointRef {
            side: Side::Upper,
            col,
            level,
        }
    }

    pub fn lower(col: usize, level: usize) -> Self {
        PointRef {
            side: Side::Lower,
            col,
            level,
        }
    }
}

impl fmt::Display for PointRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Upper => 'u',
            Side::Lower => 'l',
        };
        write!(f, "{}{}.{}", s, self.col, self.level)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("point {0} appears in more than one block")]
    Overlap(PointRef),
    #[error("point {0} is not covered by any block")]
    Coverage(PointRef),
    #[error("point {point} is out of range for shape ({k},{l};{m})")]
    Range {
        point: PointRef,
        k: usize,
        l: usize,
        m: usize,
    },
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("a spatial partition needs at least one level")]
    ZeroLevels,
    #[error("expected {expected} point labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("point counts ({upper},{lower}) are not divisible by m={m}")]
    Divisibility { upper: usize, lower: usize, m: usize },
    #[error("level counts differ: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("cannot compose: upper partition has {0} lower columns but lower partition has {1} upper columns")]
    InterfaceMismatch(usize, usize),
    #[error("no {0} column to rotate")]
    EmptyRow(&'static str),
    #[error("shape mismatch: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("amplification expects a one-level partition, got m={0}")]
    NotOneLevel(usize),
    #[error("nothing to stack")]
    EmptyStack,
    #[error("cannot parse partition: {0}")]
    Parse(String),
}

/// The four m-rotations: which column moves, and in which direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    /// Leftmost upper column becomes the leftmost lower column.
    LeftUpperDown,
    /// Leftmost lower column becomes the leftmost upper column.
    LeftLowerUp,
    /// Rightmost upper column becomes the rightmost lower column.
    RightUpperDown,
    /// Rightmost lower column becomes the rightmost upper column.
    RightLowerUp,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::LeftUpperDown,
        Corner::LeftLowerUp,
        Corner::RightUpperDown,
        Corner::RightLowerUp,
    ];

    pub fn inverse(self) -> Corner {
        match self {
            Corner::LeftUpperDown => Corner::LeftLowerUp,
            Corner::LeftLowerUp => Corner::LeftUpperDown,
            Corner::RightUpperDown => Corner::RightLowerUp,
            Corner::RightLowerUp => Corner::RightUpperDown,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Corner::LeftUpperDown => "left-upper-down",
            Corner::LeftLowerUp => "left-lower-up",
            Corner::RightUpperDown => "right-upper-down",
            Corner::RightLowerUp => "right-lower-up",
        }
    }
}

impl FromStr for Corner {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Corner::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| PartitionError::Parse(format!("unknown corner `{s}`")))
    }
}

/// Shape plus restricted-growth string; identical forms mean equal partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub shape: (usize, usize, usize),
    pub rgs: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpatialPartition {
    k: usize,
    l: usize,
    m: usize,
    labels: Vec<u32>,
}

/// Result of gluing two partitions along their common plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionResult {
    pub partition: SpatialPartition,
    /// Components that lived entirely in the middle plane and were erased.
    pub loops: usize,
    /// For each erased component, the levels it touches (1-based, ascending).
    pub loop_levels: Vec<Vec<usize>>,
}

fn canonical_labels<I: IntoIterator<Item = usize>>(raw: I) -> Vec<u32> {
    let mut map: Vec<u32> = Vec::new();
    let mut out = Vec::new();
    let mut next = 0u32;
    for r in raw {
        if r >= map.len() {
            map.resize(r + 1, u32::MAX);
        }
        if map[r] == u32::MAX {
            map[r] = next;
            next += 1;
        }
        out.push(map[r]);
    }
    out
}

impl SpatialPartition {
    /// Builds a partition from explicit blocks, validating disjointness,
    /// coverage and ranges.
    pub fn new<B, P>(k: usize, l: usize, m: usize, blocks: B) -> Result<Self, PartitionError>
    where
        B: IntoIterator<Item = P>,
        P: IntoIterator<Item = PointRef>,
    {
        if m == 0 {
            return Err(PartitionError::ZeroLevels);
        }
        let n = (k + l) * m;
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.into_iter().enumerate() {
            let mut empty = true;
            for pt in block {
                empty = false;
                let limit = match pt.side {
                    Side::Upper => k,
                    Side::Lower => l,
                };
                if pt.col == 0 || pt.col > limit || pt.level == 0 || pt.level > m {
                    return Err(PartitionError::Range { point: pt, k, l, m });
                }
                let idx = Self::index_in(k, m, pt);
                if raw[idx] != usize::MAX {
                    return Err(PartitionError::Overlap(pt));
                }
                raw[idx] = b;
            }
            if empty {
                return Err(PartitionError::EmptyBlock);
            }
        }
        if let Some(idx) = raw.iter().position(|&r| r == usize::MAX) {
            return Err(PartitionError::Coverage(Self::point_in(k, m, idx)));
        }
        Ok(SpatialPartition {
            k,
            l,
            m,
            labels: canonical_labels(raw),
        })
    }

    /// Builds a partition from one block label per point, in flattening order.
    /// Labels are arbitrary integers; they are canonicalized.
    pub fn from_labels<I>(k: usize, l: usize, m: usize, labels: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = usize>,
    {
        if m == 0 {
            return Err(PartitionError::ZeroLevels);
        }
        let labels = canonical_labels(labels);
        let expected = (k + l) * m;
        if labels.len() != expected {
            return Err(PartitionError::LabelCount {
                expected,
                got: labels.len(),
            });
        }
        Ok(SpatialPartition { k, l, m, labels })
    }

    fn from_raw(k: usize, l: usize, m: usize, raw: Vec<usize>) -> Self {
        debug_assert_eq!(raw.len(), (k + l) * m);
        SpatialPartition {
            k,
            l,
            m,
            labels: canonical_labels(raw),
        }
    }

    /// The empty partition in `P^(m)(0,0)`, unit for the tensor product.
    pub fn empty(m: usize) -> Self {
        assert!(m >= 1);
        SpatialPartition {
            k: 0,
            l: 0,
            m,
            labels: Vec::new(),
        }
    }

    /// `|^(m)`: each upper point joined to the lower point on the same level.
    pub fn identity(m: usize) -> Self {
        assert!(m >= 1);
        Self::from_raw(1, 1, m, (0..m).chain(0..m).collect())
    }

    /// The amplified pair partition in `P^(m)(0,2)`.
    pub fn pair(m: usize) -> Self {
        assert!(m >= 1);
        Self::from_raw(0, 2, m, (0..m).chain(0..m).collect())
    }

    /// The amplified pair partition in `P^(m)(2,0)`.
    pub fn cup(m: usize) -> Self {
        assert!(m >= 1);
        Self::from_raw(2, 0, m, (0..m).chain(0..m).collect())
    }

    /// `↑^(m)` in `P^(m)(0,1)`: singletons on every level.
    pub fn singleton(m: usize) -> Self {
        assert!(m >= 1);
        Self::from_raw(0, 1, m, (0..m).collect())
    }

    pub fn upper(&self) -> usize {
        self.k
    }

    pub fn lower(&self) -> usize {
        self.l
    }

    pub fn levels(&self) -> usize {
        self.m
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.k, self.l, self.m)
    }

    pub fn cols(&self) -> usize {
        self.k + self.l
    }

    pub fn num_points(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&x| x as usize + 1)
    }

    /// Block labels in flattening order (a restricted-growth string).
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        CanonicalForm {
            shape: self.shape(),
            rgs: self.labels.clone(),
        }
    }

    fn index_in(k: usize, m: usize, pt: PointRef) -> usize {
        match pt.side {
            Side::Upper => (pt.col - 1) * m + (pt.level - 1),
            Side::Lower => k * m + (pt.col - 1) * m + (pt.level - 1),
        }
    }

    fn point_in(k: usize, m: usize, idx: usize) -> PointRef {
        if idx < k * m {
            PointRef::upper(idx / m + 1, idx % m + 1)
        } else {
            let j = idx - k * m;
            PointRef::lower(j / m + 1, j % m + 1)
        }
    }

    /// Position of a point in flattening order. Panics when out of range.
    pub fn index_of(&self, pt: PointRef) -> usize {
        let limit = match pt.side {
            Side::Upper => self.k,
            Side::Lower => self.l,
        };
        assert!(
            pt.col >= 1 && pt.col <= limit && pt.level >= 1 && pt.level <= self.m,
            "point {pt} out of range"
        );
        Self::index_in(self.k, self.m, pt)
    }

    pub fn point_at(&self, idx: usize) -> PointRef {
        assert!(idx < self.labels.len());
        Self::point_in(self.k, self.m, idx)
    }

    pub fn label(&self, pt: PointRef) -> u32 {
        self.labels[self.index_of(pt)]
    }

    pub fn same_block(&self, a: PointRef, b: PointRef) -> bool {
        self.label(a) == self.label(b)
    }

    /// Blocks ordered by first occurrence; points inside a block in flattening order.
    pub fn blocks(&self) -> Vec<Vec<PointRef>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (idx, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(self.point_at(idx));
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &b in &self.labels {
            sizes[b as usize] += 1;
        }
        sizes
    }

    pub fn is_pair_partition(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    /// True when no block contains points on two different levels.
    pub fn respects_levels(&self) -> bool {
        let mut level_of = vec![usize::MAX; self.num_blocks()];
        for (idx, &b) in self.labels.iter().enumerate() {
            let level = idx % self.m;
            let slot = &mut level_of[b as usize];
            if *slot == usize::MAX {
                *slot = level;
            } else if *slot != level {
                return false;
            }
        }
        true
    }

    /// The plain partition in `P(km, lm)` under the column-interleaving bijection.
    pub fn flatten(&self) -> SpatialPartition {
        SpatialPartition {
            k: self.k * self.m,
            l: self.l * self.m,
            m: 1,
            labels: self.labels.clone(),
        }
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn unflatten(flat: &SpatialPartition, m: usize) -> Result<SpatialPartition, PartitionError> {
        if flat.m != 1 {
            return Err(PartitionError::LevelMismatch(flat.m, 1));
        }
        if m == 0 {
            return Err(PartitionError::ZeroLevels);
        }
        if !flat.k.is_multiple_of(m) || !flat.l.is_multiple_of(m) {
            return Err(PartitionError::Divisibility {
                upper: flat.k,
                lower: flat.l,
                m,
            });
        }
        Ok(SpatialPartition {
            k: flat.k / m,
            l: flat.l / m,
            m,
            labels: flat.labels.clone(),
        })
    }

    fn upper_labels(&self) -> &[u32] {
        &self.labels[..self.k * self.m]
    }

    fn lower_labels(&self) -> &[u32] {
        &self.labels[self.k * self.m..]
    }

    /// Side-by-side juxtaposition: `self` on the left.
    pub fn tensor(&self, other: &SpatialPartition) -> Result<SpatialPartition, PartitionError> {
        if self.m != other.m {
            return Err(PartitionError::LevelMismatch(self.m, other.m));
        }
        let off = self.num_blocks();
        let shift = |x: &u32| *x as usize + off;
        let raw: Vec<usize> = self
            .upper_labels()
            .iter()
            .map(|&x| x as usize)
            .chain(other.upper_labels().iter().map(shift))
            .chain(self.lower_labels().iter().map(|&x| x as usize))
            .chain(other.lower_labels().iter().map(shift))
            .collect();
        Ok(Self::from_raw(self.k + other.k, self.l + other.l, self.m, raw))
    }

    /// Glues `self` (in `P(k,r)`) on top of `lower` (in `P(r,l)`), erasing the
    /// components that do not reach the outer planes.
    pub fn compose(&self, lower: &SpatialPartition) -> Result<CompositionResult, PartitionError> {
        if self.m != lower.m {
            return Err(PartitionError::LevelMismatch(self.m, lower.m));
        }
        if self.l != lower.k {
            return Err(PartitionError::InterfaceMismatch(self.l, lower.k));
        }
        let m = self.m;
        let top = self.k * m;
        let mid = self.l * m;
        let bottom = lower.l * m;
        let total = top + mid + bottom;
        let mut ds = DisjointSets::new(total);

        // upper partition occupies nodes [0, top + mid)
        let mut first = vec![usize::MAX; self.num_blocks()];
        for (node, &b) in self.labels.iter().enumerate() {
            let f = &mut first[b as usize];
            if *f == usize::MAX {
                *f = node;
            } else {
                ds.union(*f, node);
            }
        }
        // lower partition occupies nodes [top, total)
        let mut first = vec![usize::MAX; lower.num_blocks()];
        for (i, &b) in lower.labels.iter().enumerate() {
            let node = top + i;
            let f = &mut first[b as usize];
            if *f == usize::MAX {
                *f = node;
            } else {
                ds.union(*f, node);
            }
        }

        let mut outer = vec![false; total];
        let mut raw = Vec::with_capacity(top + bottom);
        for node in (0..top).chain(top + mid..total) {
            let r = ds.find(node);
            outer[r] = true;
            raw.push(r);
        }
        let mut slot = vec![usize::MAX; total];
        let mut loop_levels: Vec<Vec<usize>> = Vec::new();
        for node in top..top + mid {
            let r = ds.find(node);
            if outer[r] {
                continue;
            }
            if slot[r] == usize::MAX {
                slot[r] = loop_levels.len();
                loop_levels.push(Vec::new());
            }
            let level = (node - top) % m + 1;
            let levels = &mut loop_levels[slot[r]];
            if !levels.contains(&level) {
                levels.push(level);
            }
        }
        for levels in &mut loop_levels {
            levels.sort_unstable();
        }
        Ok(CompositionResult {
            partition: Self::from_raw(self.k, lower.l, m, raw),
            loops: loop_levels.len(),
            loop_levels,
        })
    }

    /// Swaps the upper and lower planes.
    pub fn involution(&self) -> SpatialPartition {
        let raw: Vec<usize> = self
            .lower_labels()
            .iter()
            .chain(self.upper_labels())
            .map(|&x| x as usize)
            .collect();
        Self::from_raw(self.l, self.k, self.m, raw)
    }

    /// Moves a boundary column between the planes, keeping every point on its level.
    pub fn rotate(&self, corner: Corner) -> Result<SpatialPartition, PartitionError> {
        let (k, l, m) = (self.k, self.l, self.m);
        // column sequences (side, col) of the result, each mapped to an old column
        let col = |side: Side, c: usize| (side, c);
        type Cols = Vec<(Side, usize)>;
        let (nk, nl, upper_src, lower_src): (usize, usize, Cols, Cols) = match corner {
            Corner::LeftUpperDown => {
                if k == 0 {
                    return Err(PartitionError::EmptyRow("upper"));
                }
                (
                    k - 1,
                    l + 1,
                    (2..=k).map(|c| col(Side::Upper, c)).collect(),
                    std::iter::once(col(Side::Upper, 1))
                        .chain((1..=l).map(|c| col(Side::Lower, c)))
                        .collect(),
                )
            }
            Corner::LeftLowerUp => {
                if l == 0 {
                    return Err(PartitionError::EmptyRow("lower"));
                }
                (
                    k + 1,
                    l - 1,
                    std::iter::once(col(Side::Lower, 1))
                        .chain((1..=k).map(|c| col(Side::Upper, c)))
                        .collect(),
                    (2..=l).map(|c| col(Side::Lower, c)).collect(),
                )
            }
            Corner::RightUpperDown => {
                if k == 0 {
                    return Err(PartitionError::EmptyRow("upper"));
                }
                (
                    k - 1,
                    l + 1,
                    (1..k).map(|c| col(Side::Upper, c)).collect(),
                    (1..=l)
                        .map(|c| col(Side::Lower, c))
                        .chain(std::iter::once(col(Side::Upper, k)))
                        .collect(),
                )
            }
            Corner::RightLowerUp => {
                if l == 0 {
                    return Err(PartitionError::EmptyRow("lower"));
                }
                (
                    k + 1,
                    l - 1,
                    (1..=k)
                        .map(|c| col(Side::Upper, c))
                        .chain(std::iter::once(col(Side::Lower, l)))
                        .collect(),
                    (1..l).map(|c| col(Side::Lower, c)).collect(),
                )
            }
        };
        let mut raw = Vec::with_capacity(self.labels.len());
        for (side, c) in upper_src.into_iter().chain(lower_src) {
            for level in 1..=m {
                raw.push(self.label(PointRef { side, col: c, level }) as usize);
            }
        }
        Ok(Self::from_raw(nk, nl, m, raw))
    }

    /// Repeats a one-level partition independently on each of `m` levels.
    pub fn amplify(&self, m: usize) -> Result<SpatialPartition, PartitionError> {
        if self.m != 1 {
            return Err(PartitionError::NotOneLevel(self.m));
        }
        if m == 0 {
            return Err(PartitionError::ZeroLevels);
        }
        let raw = self
            .labels
            .iter()
            .flat_map(|&b| (0..m).map(move |y| b as usize * m + y))
            .collect();
        Ok(Self::from_raw(self.k, self.l, m, raw))
    }

    /// Places the inputs on consecutive level ranges, first input lowest.
    pub fn stack(parts: &[SpatialPartition]) -> Result<SpatialPartition, PartitionError> {
        let first = parts.first().ok_or(PartitionError::EmptyStack)?;
        let (k, l) = (first.k, first.l);
        for p in parts {
            if (p.k, p.l) != (k, l) {
                return Err(PartitionError::ShapeMismatch(k, l, p.k, p.l));
            }
        }
        let total_m: usize = parts.iter().map(|p| p.m).sum();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in parts {
            offsets.push(acc);
            acc += p.num_blocks();
        }
        let mut raw = Vec::with_capacity((k + l) * total_m);
        for (side, count) in [(Side::Upper, k), (Side::Lower, l)] {
            for c in 1..=count {
                for (p, off) in parts.iter().zip(&offsets) {
                    for y in 1..=p.m {
                        raw.push(p.label(PointRef { side, col: c, level: y }) as usize + off);
                    }
                }
            }
        }
        Ok(Self::from_raw(k, l, total_m, raw))
    }

    /// Restriction to the levels `from..=to` (1-based), as a partition on
    /// `to - from + 1` levels. Blocks are cut, not merged.
    pub fn restrict_levels(&self, from: usize, to: usize) -> SpatialPartition {
        assert!(from >= 1 && from <= to && to <= self.m);
        let mut raw = Vec::new();
        for (side, count) in [(Side::Upper, self.k), (Side::Lower, self.l)] {
            for c in 1..=count {
                for y in from..=to {
                    raw.push(self.label(PointRef { side, col: c, level: y }) as usize);
                }
            }
        }
        Self::from_raw(self.k, self.l, to - from + 1, raw)
    }

    /// Relabels levels: the point on level `y` moves to level `perm[y-1]`.
    pub fn permute_levels(&self, perm: &[usize]) -> SpatialPartition {
        assert_eq!(perm.len(), self.m);
        let mut raw = vec![0usize; self.labels.len()];
        for (idx, &b) in self.labels.iter().enumerate() {
            let pt = self.point_at(idx);
            let moved = PointRef {
                level: perm[pt.level - 1],
                ..pt
            };
            raw[self.index_of(moved)] = b as usize;
        }
        Self::from_raw(self.k, self.l, self.m, raw)
    }

    /// Whether the flattened partition can be drawn without crossings.
    ///
    /// Points are laid out on a circle (upper left to right, then lower right
    /// to left); the partition is noncrossing iff for every block and every
    /// gap between cyclically consecutive points of that block, all points in
    /// the gap belong to blocks lying entirely inside the gap.
    pub fn is_noncrossing(&self) -> bool {
        let upper = self.k * self.m;
        let lower = self.l * self.m;
        let n = upper + lower;
        // position on the circle -> label
        let mut circle = Vec::with_capacity(n);
        circle.extend_from_slice(&self.labels[..upper]);
        circle.extend(self.labels[upper..].iter().rev());
        let blocks = self.num_blocks();
        let mut first = vec![usize::MAX; blocks];
        let mut last = vec![0usize; blocks];
        for (pos, &b) in circle.iter().enumerate() {
            let b = b as usize;
            if first[b] == usize::MAX {
                first[b] = pos;
            }
            last[b] = pos;
        }
        let mut prev = vec![usize::MAX; blocks];
        for (pos, &b) in circle.iter().enumerate() {
            let b = b as usize;
            if prev[b] != usize::MAX {
                let (a, z) = (prev[b], pos);
                for &inner in &circle[a + 1..z] {
                    let i = inner as usize;
                    if first[i] < a || last[i] > z {
                        return false;
                    }
                }
            }
            prev[b] = pos;
        }
        true
    }

    /// ASCII picture of the flattened partition: one letter per block,
    /// original columns separated by bars.
    pub fn ascii(&self) -> String {
        fn tag(b: u32) -> String {
            let alphabet = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
            let b = b as usize;
            if b < alphabet.len() {
                (alphabet[b] as char).to_string()
            } else {
                format!("#{b}")
            }
        }
        let row = |labels: &[u32]| -> String {
            let mut s = String::from("|");
            for chunk in labels.chunks(self.m) {
                for b in chunk {
                    s.push(' ');
                    s.push_str(&tag(*b));
                }
                s.push_str(" |");
            }
            s
        };
        format!(
            "P({},{};{})\nupper {}\nlower {}\n",
            self.k,
            self.l,
            self.m,
            row(self.upper_labels()),
            row(self.lower_labels())
        )
    }
}

impl fmt::Display for SpatialPartition {
    /// Compact text form, e.g. `P(1,1;2){u1.1,l1.1|u1.2,l1.2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{};{}){{", self.k, self.l, self.m)?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, pt) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{pt}")?;
            }
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SpatialPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_point(s: &str) -> Result<PointRef, PartitionError> {
    let err = || PartitionError::Parse(format!("bad point `{s}`"));
    let s = s.trim();
    let side = match s.chars().next() {
        Some('u') | Some('U') => Side::Upper,
        Some('l') | Some('L') => Side::Lower,
        _ => return Err(err()),
    };
    let (c, y) = s[1..].split_once('.').ok_or_else(err)?;
    Ok(PointRef {
        side,
        col: c.trim().parse().map_err(|_| err())?,
        level: y.trim().parse().map_err(|_| err())?,
    })
}

impl FromStr for SpatialPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = |msg: &str| PartitionError::Parse(format!("{msg} in `{s}`"));
        let rest = s.strip_prefix("P(").ok_or_else(|| err("missing `P(`"))?;
        let (head, body) = rest.split_once(')').ok_or_else(|| err("missing `)`"))?;
        let (kl, m) = head.split_once(';').ok_or_else(|| err("missing `;`"))?;
        let (k, l) = kl.split_once(',').ok_or_else(|| err("missing `,`"))?;
        let parse_n = |t: &str| t.trim().parse::<usize>().map_err(|_| err("bad number"));
        let (k, l, m) = (parse_n(k)?, parse_n(l)?, parse_n(m)?);
        let body = body
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| err("missing braces"))?;
        let mut blocks = Vec::new();
        if !body.trim().is_empty() {
            for block in body.split('|') {
                let pts = block.split(',').map(parse_point).collect::<Result<Vec<_>, _>>()?;
                blocks.push(pts);
            }
        }
        SpatialPartition::new(k, l, m, blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: usize) -> PointRef {
        PointRef::upper(c, 1)
    }
    fn lo(c: usize) -> PointRef {
        PointRef::lower(c, 1)
    }

    fn example_p() -> SpatialPartition {
        SpatialPartition::new(
            4,
            3,
            1,
            vec![vec![u(1), u(2)], vec![u(3), u(4), lo(3)], vec![lo(1), lo(2)]],
        )
        .unwrap()
    }

    fn example_q() -> SpatialPartition {
        SpatialPartition::new(
            4,
            3,
            1,
            vec![vec![u(1), lo(2)], vec![u(2), lo(1)], vec![u(3), u(4)], vec![lo(3)]],
        )
        .unwrap()
    }

    fn cross() -> SpatialPartition {
        SpatialPartition::new(2, 2, 1, vec![vec![u(1), lo(2)], vec![u(2), lo(1)]]).unwrap()
    }

    #[test]
    fn construction_errors() {
        let e = SpatialPartition::new(0, 2, 1, vec![vec![lo(1)], vec![lo(1)]]).unwrap_err();
        assert_eq!(e, PartitionError::Overlap(lo(1)));
        let e = SpatialPartition::new(0, 2, 1, vec![vec![lo(1)]]).unwrap_err();
        assert_eq!(e, PartitionError::Coverage(lo(2)));
        let e = SpatialPartition::new(1, 1, 1, vec![vec![u(1), lo(2)]]).unwrap_err();
        assert!(matches!(e, PartitionError::Range { .. }));
        let e = SpatialPartition::new(1, 1, 2, vec![vec![u(1), PointRef::lower(1, 3)]]).unwrap_err();
        assert!(matches!(e, PartitionError::Range { .. }));
        assert_eq!(
            SpatialPartition::new(0, 0, 0, Vec::<Vec<PointRef>>::new()).unwrap_err(),
            PartitionError::ZeroLevels
        );
    }

    #[test]
    fn identity_and_example() {
        let id = SpatialPartition::new(1, 1, 1, vec![vec![u(1), lo(1)]]).unwrap();
        assert_eq!(id, SpatialPartition::identity(1));
        let p = example_p();
        assert_eq!(p.shape(), (4, 3, 1));
        assert_eq!(p.num_blocks(), 3);
        assert_eq!(p.labels(), &[0, 0, 1, 1, 2, 2, 1]);
    }

    #[test]
    fn canonical_form_is_stable_under_block_order() {
        let a = SpatialPartition::new(2, 2, 1, vec![vec![u(1), lo(2)], vec![u(2), lo(1)]]).unwrap();
        let b = SpatialPartition::new(2, 2, 1, vec![vec![lo(1), u(2)], vec![lo(2), u(1)]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_form(), b.canonical_form());
        let again = SpatialPartition::from_labels(2, 2, 1, a.labels().iter().map(|&x| x as usize)).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn flatten_examples() {
        let id2 = SpatialPartition::identity(2);
        let flat = id2.flatten();
        let expected = SpatialPartition::new(2, 2, 1, vec![vec![u(1), lo(1)], vec![u(2), lo(2)]]).unwrap();
        assert_eq!(flat, expected);
        assert_eq!(
            flat,
            SpatialPartition::identity(1)
                .tensor(&SpatialPartition::identity(1))
                .unwrap()
        );
        assert_eq!(SpatialPartition::unflatten(&flat, 2).unwrap(), id2);

        let pair2 = SpatialPartition::pair(2).flatten();
        let expected = SpatialPartition::new(0, 4, 1, vec![vec![lo(1), lo(3)], vec![lo(2), lo(4)]]).unwrap();
        assert_eq!(pair2, expected);

        assert_eq!(SpatialPartition::identity(1).flatten(), SpatialPartition::identity(1));
        assert!(matches!(
            SpatialPartition::unflatten(&SpatialPartition::identity(1), 2),
            Err(PartitionError::Divisibility { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        let id = SpatialPartition::identity(1);
        let t = id.tensor(&id).unwrap();
        assert_eq!(
            t,
            SpatialPartition::new(2, 2, 1, vec![vec![u(1), lo(1)], vec![u(2), lo(2)]]).unwrap()
        );
        let t = SpatialPartition::pair(1).tensor(&SpatialPartition::cup(1)).unwrap();
        assert_eq!(
            t,
            SpatialPartition::new(2, 2, 1, vec![vec![lo(1), lo(2)], vec![u(1), u(2)]]).unwrap()
        );
        let t = example_p().tensor(&example_q()).unwrap();
        assert_eq!((t.upper(), t.lower()), (8, 6));
        assert_eq!(t.num_blocks(), 7);
        assert_eq!(
            SpatialPartition::identity(2).tensor(&SpatialPartition::identity(1)),
            Err(PartitionError::LevelMismatch(2, 1))
        );
    }

    #[test]
    fn compose_examples() {
        let r = SpatialPartition::pair(1).compose(&SpatialPartition::cup(1)).unwrap();
        assert_eq!(r.partition, SpatialPartition::empty(1));
        assert_eq!(r.loops, 1);

        let id = SpatialPartition::identity(1);
        let r = id.compose(&id).unwrap();
        assert_eq!(r.partition, id);
        assert_eq!(r.loops, 0);

        // snake identity
        let upper = SpatialPartition::pair(1).tensor(&id).unwrap();
        let lower = id.tensor(&SpatialPartition::cup(1)).unwrap();
        let r = upper.compose(&lower).unwrap();
        assert_eq!(r.partition, id);
        assert_eq!(r.loops, 0);

        assert_eq!(
            id.compose(&SpatialPartition::cup(1)),
            Err(PartitionError::InterfaceMismatch(1, 2))
        );
        assert_eq!(
            id.compose(&SpatialPartition::identity(2)),
            Err(PartitionError::LevelMismatch(1, 2))
        );
    }

    #[test]
    fn involution_examples() {
        assert_eq!(SpatialPartition::pair(1).involution(), SpatialPartition::cup(1));
        assert_eq!(
            SpatialPartition::identity(3).involution(),
            SpatialPartition::identity(3)
        );
        let star = example_p().involution();
        let expected = SpatialPartition::new(
            3,
            4,
            1,
            vec![vec![lo(1), lo(2)], vec![lo(3), lo(4), u(3)], vec![u(1), u(2)]],
        )
        .unwrap();
        assert_eq!(star, expected);
    }

    #[test]
    fn rotation_examples() {
        for m in 1..=4 {
            assert_eq!(
                SpatialPartition::identity(m).rotate(Corner::LeftUpperDown).unwrap(),
                SpatialPartition::pair(m)
            );
        }
        assert_eq!(
            SpatialPartition::pair(1).rotate(Corner::LeftLowerUp).unwrap(),
            SpatialPartition::identity(1)
        );
        let r = cross().rotate(Corner::LeftUpperDown).unwrap();
        let expected = SpatialPartition::new(1, 3, 1, vec![vec![u(1), lo(2)], vec![lo(1), lo(3)]]).unwrap();
        assert_eq!(r, expected);
        assert_eq!(
            SpatialPartition::pair(1).rotate(Corner::RightUpperDown),
            Err(PartitionError::EmptyRow("upper"))
        );
        assert_eq!(
            SpatialPartition::cup(2).rotate(Corner::LeftLowerUp),
            Err(PartitionError::EmptyRow("lower"))
        );
    }

    #[test]
    fn amplify_and_stack() {
        let id4 = SpatialPartition::identity(1).amplify(4).unwrap();
        assert_eq!(id4, SpatialPartition::identity(4));
        assert_eq!(SpatialPartition::pair(1).amplify(4).unwrap(), SpatialPartition::pair(4));
        assert_eq!(example_p().amplify(1).unwrap(), example_p());
        assert!(example_p().amplify(3).unwrap().respects_levels());
        assert_eq!(
            SpatialPartition::identity(2).amplify(2),
            Err(PartitionError::NotOneLevel(2))
        );

        let pair = SpatialPartition::pair(1);
        assert_eq!(
            SpatialPartition::stack(&[pair.clone(), pair.clone()]).unwrap(),
            SpatialPartition::pair(2)
        );
        assert_eq!(SpatialPartition::stack(&[example_p()]).unwrap(), example_p());

        let id_cross = SpatialPartition::stack(&[
            SpatialPartition::identity(1)
                .tensor(&SpatialPartition::identity(1))
                .unwrap(),
            cross(),
        ])
        .unwrap();
        let expected = SpatialPartition::new(
            2,
            2,
            2,
            vec![
                vec![PointRef::upper(1, 1), PointRef::lower(1, 1)],
                vec![PointRef::upper(2, 1), PointRef::lower(2, 1)],
                vec![PointRef::upper(1, 2), PointRef::lower(2, 2)],
                vec![PointRef::upper(2, 2), PointRef::lower(1, 2)],
            ],
        )
        .unwrap();
        assert_eq!(id_cross, expected);
        assert!(matches!(
            SpatialPartition::stack(&[SpatialPartition::identity(1), pair]),
            Err(PartitionError::ShapeMismatch(..))
        ));
        assert_eq!(SpatialPartition::stack(&[]), Err(PartitionError::EmptyStack));
    }

    #[test]
    fn noncrossing_examples() {
        assert!(example_p().is_noncrossing());
        assert!(!example_q().is_noncrossing());
        assert!(!SpatialPartition::pair(2).is_noncrossing());
        assert!(!cross().is_noncrossing());
        assert!(SpatialPartition::identity(1)
            .tensor(&SpatialPartition::identity(1))
            .unwrap()
            .is_noncrossing());
        assert!(SpatialPartition::empty(1).is_noncrossing());
    }

    #[test]
    fn text_form_round_trip() {
        let p = SpatialPartition::stack(&[example_p(), example_q()]).unwrap();
        let s = p.to_string();
        assert_eq!(s.parse::<SpatialPartition>().unwrap(), p);
        assert_eq!(
            SpatialPartition::identity(2).to_string(),
            "P(1,1;2){u1.1,l1.1|u1.2,l1.2}"
        );
        assert_eq!(
            "P(0,0;1){}".parse::<SpatialPartition>().unwrap(),
            SpatialPartition::empty(1)
        );
        assert!("P(1,1;1){u1.1,x1.1}".parse::<SpatialPartition>().is_err());
        assert!("Q(1,1;1){}".parse::<SpatialPartition>().is_err());
    }

    #[test]
    fn ascii_shows_columns() {
        let art = SpatialPartition::identity(2).ascii();
        assert!(art.contains("upper | a b |"));
        assert!(art.contains("lower | a b |"));
    }

    #[test]
    fn level_helpers() {
        let id_cross = SpatialPartition::stack(&[
            SpatialPartition::identity(1)
                .tensor(&SpatialPartition::identity(1))
                .unwrap(),
            cross(),
        ])
        .unwrap();
        let swapped = id_cross.permute_levels(&[2, 1]);
        let cross_id = SpatialPartition::stack(&[
            cross(),
            SpatialPartition::identity(1)
                .tensor(&SpatialPartition::identity(1))
                .unwrap(),
        ])
        .unwrap();
        assert_eq!(swapped, cross_id);
        assert_eq!(id_cross.restrict_levels(2, 2), cross());
    }
}
