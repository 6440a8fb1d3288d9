//! Grading partitions and the predicate-defined classes used to tell
//! categories apart.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partition::{Side, SpatialPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("level counts differ: partition has {0}, grading has {1}")]
    LevelMismatch(usize, usize),
    #[error("class {class} does not apply: {reason}")]
    NotApplicable { class: String, reason: &'static str },
    #[error("invalid grading partition: {0}")]
    Invalid(String),
}

/// A set partition of the levels `{1..m}`, stored as a restricted-growth string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingPartition {
    labels: Vec<u32>,
}

impl GradingPartition {
    /// From explicit 1-based blocks.
    pub fn new(m: usize, blocks: &[Vec<usize>]) -> Result<Self, GradingError> {
        let mut raw = vec![usize::MAX; m];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(GradingError::Invalid("empty block".into()));
            }
            for &y in block {
                if y == 0 || y > m {
                    return Err(GradingError::Invalid(format!("level {y} out of 1..={m}")));
                }
                if raw[y - 1] != usize::MAX {
                    return Err(GradingError::Invalid(format!("level {y} listed twice")));
                }
                raw[y - 1] = b;
            }
        }
        if let Some(y) = raw.iter().position(|&r| r == usize::MAX) {
            return Err(GradingError::Invalid(format!("level {} not covered", y + 1)));
        }
        Ok(Self::from_raw(&raw))
    }

    fn from_raw(raw: &[usize]) -> Self {
        let mut seen: Vec<usize> = Vec::new();
        let labels = raw
            .iter()
            .map(|r| match seen.iter().position(|s| s == r) {
                Some(i) => i as u32,
                None => {
                    seen.push(*r);
                    (seen.len() - 1) as u32
                }
            })
            .collect();
        GradingPartition { labels }
    }

    pub fn one_block(m: usize) -> Self {
        GradingPartition { labels: vec![0; m] }
    }

    pub fn singletons(m: usize) -> Self {
        GradingPartition {
            labels: (0..m as u32).collect(),
        }
    }

    pub fn levels(&self) -> usize {
        self.labels.len()
    }

    /// Block label of a 1-based level.
    pub fn block_of(&self, level: usize) -> u32 {
        self.labels[level - 1]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.labels.iter().max().map_or(0, |&x| x as usize + 1);
        let mut out = vec![Vec::new(); n];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(i + 1);
        }
        out
    }
}

impl fmt::Display for GradingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", blocks.join("|"))
    }
}

/// `s` and `t` share a block iff `dims[s] == dims[t]`.
pub fn ker_partition(dims: &[usize]) -> GradingPartition {
    GradingPartition::from_raw(dims)
}

pub fn is_pi_graded(p: &SpatialPartition, pi: &GradingPartition) -> Result<bool, GradingError> {
    if p.levels() != pi.levels() {
        return Err(GradingError::LevelMismatch(p.levels(), pi.levels()));
    }
    let m = p.levels();
    let mut grade = vec![u32::MAX; p.num_blocks()];
    for (idx, &b) in p.labels().iter().enumerate() {
        let g = pi.labels[idx % m];
        let slot = &mut grade[b as usize];
        if *slot == u32::MAX {
            *slot = g;
        } else if *slot != g {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeparatingClass {
    RespLevels,
    Symm,
    NoDiagonal,
    NoGeodesic,
    NoDiagonalSymm,
    NoGeodesicSymm,
    EvenCols,
    NonCrossing,
    PiGraded(GradingPartition),
}

impl SeparatingClass {
    /// The five columns of the two-level containment table.
    pub const TABLE: [SeparatingClass; 5] = [
        SeparatingClass::RespLevels,
        SeparatingClass::Symm,
        SeparatingClass::NoDiagonalSymm,
        SeparatingClass::NoGeodesicSymm,
        SeparatingClass::EvenCols,
    ];

    /// Every tag without a parameter.
    pub fn all_plain() -> Vec<SeparatingClass> {
        vec![
            SeparatingClass::RespLevels,
            SeparatingClass::Symm,
            SeparatingClass::NoDiagonal,
            SeparatingClass::NoGeodesic,
            SeparatingClass::NoDiagonalSymm,
            SeparatingClass::NoGeodesicSymm,
            SeparatingClass::EvenCols,
            SeparatingClass::NonCrossing,
        ]
    }

    /// Whether the predicate is defined for `p` at all.
    pub fn applies_to(&self, p: &SpatialPartition) -> bool {
        match self {
            SeparatingClass::Symm
            | SeparatingClass::NoDiagonal
            | SeparatingClass::NoGeodesic
            | SeparatingClass::NoDiagonalSymm
            | SeparatingClass::NoGeodesicSymm => p.levels() == 2,
            SeparatingClass::EvenCols => p.is_pair_partition(),
            SeparatingClass::PiGraded(pi) => pi.levels() == p.levels(),
            SeparatingClass::RespLevels | SeparatingClass::NonCrossing => true,
        }
    }
}

impl fmt::Display for SeparatingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparatingClass::RespLevels => f.write_str("resp-levels"),
            SeparatingClass::Symm => f.write_str("symm"),
            SeparatingClass::NoDiagonal => f.write_str("no-diagonal"),
            SeparatingClass::NoGeodesic => f.write_str("no-geodesic"),
            SeparatingClass::NoDiagonalSymm => f.write_str("no-diagonal-symm"),
            SeparatingClass::NoGeodesicSymm => f.write_str("no-geodesic-symm"),
            SeparatingClass::EvenCols => f.write_str("even-cols"),
            SeparatingClass::NonCrossing => f.write_str("noncrossing"),
            SeparatingClass::PiGraded(pi) => write!(f, "pi-graded:{pi}"),
        }
    }
}

impl FromStr for SeparatingClass {
    type Err = GradingError;

    /// Accepts the display names; `pi-graded:1,3|2` takes blocks of levels.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("pi-graded:") {
            let rest = rest.trim_start_matches('{').trim_end_matches('}');
            let blocks = rest
                .split('|')
                .map(|b| {
                    b.split(',')
                        .map(|y| y.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GradingError::Invalid(e.to_string()))?;
            let m = blocks.iter().map(Vec::len).sum();
            return GradingPartition::new(m, &blocks).map(SeparatingClass::PiGraded);
        }
        SeparatingClass::all_plain()
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| GradingError::Invalid(format!("unknown class `{s}`")))
    }
}

/// Position on the side-extended axis: upper columns `1..k`, then lower `k+1..k+l`.
fn extended_col(p: &SpatialPartition, side: Side, col: usize) -> usize {
    match side {
        Side::Upper => col,
        Side::Lower => p.upper() + col,
    }
}

/// Scans every block for a pair of points on levels 1 and 2 satisfying `bad`.
fn has_level_string(p: &SpatialPartition, bad: impl Fn(usize, usize) -> bool) -> bool {
    p.blocks().iter().any(|block| {
        block.iter().filter(|a| a.level == 1).any(|a| {
            block
                .iter()
                .filter(|b| b.level == 2)
                .any(|b| bad(extended_col(p, a.side, a.col), extended_col(p, b.side, b.col)))
        })
    })
}

fn no_diagonal(p: &SpatialPartition) -> bool {
    !has_level_string(p, |x, y| x != y)
}

fn no_geodesic(p: &SpatialPartition) -> bool {
    !has_level_string(p, |x, y| x == y)
}

fn symmetric(p: &SpatialPartition) -> bool {
    p.permute_levels(&[2, 1]) == *p
}

pub fn class_membership(p: &SpatialPartition, c: &SeparatingClass) -> Result<bool, GradingError> {
    if let SeparatingClass::PiGraded(pi) = c {
        return is_pi_graded(p, pi);
    }
    if !c.applies_to(p) {
        let reason = match c {
            SeparatingClass::EvenCols => "requires a pair partition",
            _ => "requires two levels",
        };
        return Err(GradingError::NotApplicable {
            class: c.to_string(),
            reason,
        });
    }
    Ok(match c {
        SeparatingClass::RespLevels => p.respects_levels(),
        SeparatingClass::Symm => symmetric(p),
        SeparatingClass::NoDiagonal => no_diagonal(p),
        SeparatingClass::NoGeodesic => no_geodesic(p),
        SeparatingClass::NoDiagonalSymm => no_diagonal(p) && symmetric(p),
        SeparatingClass::NoGeodesicSymm => no_geodesic(p) && symmetric(p),
        SeparatingClass::EvenCols => p.cols().is_multiple_of(2),
        SeparatingClass::NonCrossing => p.is_noncrossing(),
        SeparatingClass::PiGraded(_) => unreachable!("handled above"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::partition::PointRef;

    #[test]
    fn ker_examples() {
        let k = ker_partition(&[2, 3, 2]);
        assert_eq!(k, GradingPartition::new(3, &[vec![1, 3], vec![2]]).unwrap());
        assert_eq!(ker_partition(&[4, 4, 4]), GradingPartition::one_block(3));
        assert_eq!(ker_partition(&[1, 2, 3]), GradingPartition::singletons(3));
    }

    #[test]
    fn grading_examples() {
        let one = GradingPartition::one_block(2);
        assert!(is_pi_graded(&named::level_four(), &one).unwrap());
        let single = GradingPartition::singletons(2);
        assert!(is_pi_graded(&named::cross_on_level(1), &single).unwrap());
        assert!(!is_pi_graded(&named::level_pair(), &single).unwrap());

        let pi = GradingPartition::new(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        let mixed = SpatialPartition::new(
            0,
            1,
            4,
            vec![
                vec![PointRef::lower(1, 1), PointRef::lower(1, 2)],
                vec![PointRef::lower(1, 3)],
                vec![PointRef::lower(1, 4)],
            ],
        )
        .unwrap();
        assert!(!is_pi_graded(&mixed, &pi).unwrap());
        let odd = SpatialPartition::new(
            0,
            1,
            4,
            vec![
                vec![PointRef::lower(1, 1), PointRef::lower(1, 3)],
                vec![PointRef::lower(1, 2), PointRef::lower(1, 4)],
            ],
        )
        .unwrap();
        assert!(is_pi_graded(&odd, &pi).unwrap());
        assert_eq!(is_pi_graded(&odd, &one), Err(GradingError::LevelMismatch(4, 2)));
    }

    fn row(p: &SpatialPartition) -> Vec<bool> {
        SeparatingClass::TABLE
            .iter()
            .map(|c| class_membership(p, c).unwrap())
            .collect()
    }

    #[test]
    fn table_rows_for_level_generators() {
        assert_eq!(row(&named::level_pair()), vec![false, true, true, false, false]);
        assert_eq!(row(&named::level_cross()), vec![false, true, false, true, true]);
        assert_eq!(row(&named::identity(2)), vec![true, true, true, true, true]);
        let id = named::identity(2);
        assert!(class_membership(&id, &SeparatingClass::NoDiagonal).unwrap());
        assert!(class_membership(&id, &SeparatingClass::NoGeodesic).unwrap());
    }

    #[test]
    fn applicability() {
        let cross = named::cross();
        assert!(matches!(
            class_membership(&cross, &SeparatingClass::Symm),
            Err(GradingError::NotApplicable { .. })
        ));
        assert!(matches!(
            class_membership(&named::singleton(2), &SeparatingClass::EvenCols),
            Err(GradingError::NotApplicable { .. })
        ));
        assert!(!class_membership(&cross, &SeparatingClass::NonCrossing).unwrap());
    }

    #[test]
    fn class_names_round_trip() {
        for c in SeparatingClass::all_plain() {
            assert_eq!(c.to_string().parse::<SeparatingClass>().unwrap(), c);
        }
        let c: SeparatingClass = "pi-graded:1,3|2".parse().unwrap();
        assert_eq!(c, SeparatingClass::PiGraded(ker_partition(&[2, 3, 2])));
        assert_eq!(c.to_string(), "pi-graded:{1,3|2}");
        assert_eq!(c.to_string().parse::<SeparatingClass>().unwrap(), c);
    }

    #[test]
    fn diagonal_and_geodesic_classes_are_not_closed() {
        let geo = SeparatingClass::NoGeodesic;
        let q: SpatialPartition = "P(2,1;2){u1.1,u2.1|u1.2,l1.2|u2.2,l1.1}".parse().unwrap();
        assert_eq!(class_membership(&named::pair(2), &geo), Ok(true));
        assert_eq!(class_membership(&q, &geo), Ok(true));
        let r = named::pair(2).compose(&q).unwrap().partition;
        assert_eq!(r, named::level_pair());
        assert_eq!(class_membership(&r, &geo), Ok(false));

        let diag = SeparatingClass::NoDiagonal;
        let p: SpatialPartition = "P(3,1;2){u1.1,l1.1|u2.2,l1.2|u1.2,u3.2|u2.1,u3.1}".parse().unwrap();
        let cap = named::level_pair().involution();
        assert!(p.is_pair_partition());
        assert_eq!(class_membership(&p, &diag), Ok(true));
        assert_eq!(class_membership(&cap, &diag), Ok(true));
        let r = p.compose(&cap).unwrap().partition;
        assert_eq!(class_membership(&r, &diag), Ok(false));
    }
}
