//! A catalogue of the partitions that keep coming up.
//!
//! Two-level pictures are described level by level; `(u1,2)` is the upper
//! point of column 1 on level 2. Names accepted by [`lookup`] are listed in
//! [`NAMES`].

use crate::partition::{PointRef, SpatialPartition};

fn u(c: usize, y: usize) -> PointRef {
    PointRef::upper(c, y)
}

fn l(c: usize, y: usize) -> PointRef {
    PointRef::lower(c, y)
}

fn build(k: usize, lo: usize, m: usize, blocks: Vec<Vec<PointRef>>) -> SpatialPartition {
    SpatialPartition::new(k, lo, m, blocks).expect("catalogue partitions are well formed")
}

/// `|^(m)`.
pub fn identity(m: usize) -> SpatialPartition {
    SpatialPartition::identity(m)
}

/// `⊓^(m)` in `P(0,2)`.
pub fn pair(m: usize) -> SpatialPartition {
    SpatialPartition::pair(m)
}

/// `⊔^(m)` in `P(2,0)`.
pub fn cup(m: usize) -> SpatialPartition {
    SpatialPartition::cup(m)
}

/// `↑^(m)` in `P(0,1)`.
pub fn singleton(m: usize) -> SpatialPartition {
    SpatialPartition::singleton(m)
}

/// The one-level crossing in `P(2,2)`.
pub fn cross() -> SpatialPartition {
    build(2, 2, 1, vec![vec![u(1, 1), l(2, 1)], vec![u(2, 1), l(1, 1)]])
}

/// The half-liberating partition in `P(3,3)`: outer strings cross, middle straight.
pub fn halflib() -> SpatialPartition {
    build(
        3,
        3,
        1,
        vec![vec![u(1, 1), l(3, 1)], vec![u(2, 1), l(2, 1)], vec![u(3, 1), l(1, 1)]],
    )
}

/// The one-level four-block in `P(2,2)`.
pub fn four() -> SpatialPartition {
    build(2, 2, 1, vec![vec![u(1, 1), u(2, 1), l(1, 1), l(2, 1)]])
}

/// `⊔ ⊗ ⊓` in `P(2,2)`: upper pair, lower pair.
pub fn pairs() -> SpatialPartition {
    build(2, 2, 1, vec![vec![u(1, 1), u(2, 1)], vec![l(1, 1), l(2, 1)]])
}

/// Two identity strings `|⊗|` on one level.
pub fn id_id() -> SpatialPartition {
    build(2, 2, 1, vec![vec![u(1, 1), l(1, 1)], vec![u(2, 1), l(2, 1)]])
}

/// A single lower column pairing its two levels, in `P^(2)(0,1)`.
pub fn level_pair() -> SpatialPartition {
    build(0, 1, 2, vec![vec![l(1, 1), l(1, 2)]])
}

/// One column whose strings swap levels, in `P^(2)(1,1)`.
pub fn level_cross() -> SpatialPartition {
    build(1, 1, 2, vec![vec![u(1, 1), l(1, 2)], vec![u(1, 2), l(1, 1)]])
}

/// Upper column paired across levels, lower column paired across levels.
pub fn level_pairs() -> SpatialPartition {
    build(1, 1, 2, vec![vec![u(1, 1), u(1, 2)], vec![l(1, 1), l(1, 2)]])
}

/// All four points of one column in a single block, in `P^(2)(1,1)`.
pub fn level_four() -> SpatialPartition {
    build(1, 1, 2, vec![vec![u(1, 1), u(1, 2), l(1, 1), l(1, 2)]])
}

fn on_level(pattern: SpatialPartition, level: usize) -> SpatialPartition {
    assert!(level == 1 || level == 2, "level must be 1 or 2");
    let rest = id_id();
    if level == 1 {
        SpatialPartition::stack(&[pattern, rest]).expect("same shape")
    } else {
        SpatialPartition::stack(&[rest, pattern]).expect("same shape")
    }
}

/// The crossing on `level` and `|⊗|` on the other level, in `P^(2)(2,2)`.
pub fn cross_on_level(level: usize) -> SpatialPartition {
    on_level(cross(), level)
}

/// The four-block on `level` and `|⊗|` on the other level.
pub fn four_on_level(level: usize) -> SpatialPartition {
    on_level(four(), level)
}

/// Upper and lower pairs on `level` and `|⊗|` on the other level.
pub fn pairs_on_level(level: usize) -> SpatialPartition {
    on_level(pairs(), level)
}

/// Two singletons on `level` and a straight string on the other, in `P^(2)(1,1)`.
pub fn singletons_on_level(level: usize) -> SpatialPartition {
    assert!(level == 1 || level == 2, "level must be 1 or 2");
    let other = 3 - level;
    build(
        1,
        1,
        2,
        vec![vec![u(1, level)], vec![l(1, level)], vec![u(1, other), l(1, other)]],
    )
}

/// The three-block partition in `P^(2)(2,1)`: on level 1 both upper points
/// meet the lower one; on level 2 the left string goes straight down and the
/// right upper point is a singleton.
pub fn half_three() -> SpatialPartition {
    build(
        2,
        1,
        2,
        vec![vec![u(1, 1), u(2, 1), l(1, 1)], vec![u(1, 2), l(1, 2)], vec![u(2, 2)]],
    )
}

/// The crossing amplified to two levels.
pub fn cross_cross() -> SpatialPartition {
    cross().amplify(2).expect("one-level input")
}

/// The twisted generator in `P^(2)(2,2)`: an upper pair on level 1, a lower
/// pair on level 2, and two diagonal strings from level 2 up to level 1.
pub fn twisted_pairs() -> SpatialPartition {
    build(
        2,
        2,
        2,
        vec![
            vec![u(1, 1), u(2, 1)],
            vec![l(1, 2), l(2, 2)],
            vec![l(1, 1), u(1, 2)],
            vec![l(2, 1), u(2, 2)],
        ],
    )
}

/// The generators of all of `P^(2)` besides the base partitions, using the
/// level pair in place of the level four-block.
pub fn all_partitions_generators() -> Vec<SpatialPartition> {
    vec![
        singleton(2),
        four_on_level(1),
        four_on_level(2),
        cross_on_level(1),
        cross_on_level(2),
        level_pair(),
    ]
}

/// The same list with the level four-block instead of the level pair.
pub fn all_partitions_generators_with_four() -> Vec<SpatialPartition> {
    let mut g = all_partitions_generators();
    g.pop();
    g.push(level_four());
    g
}

/// Generators of the two-level pair partitions besides the base partitions.
pub fn pair_partitions_generators() -> Vec<SpatialPartition> {
    vec![
        pairs_on_level(1),
        pairs_on_level(2),
        cross_on_level(1),
        cross_on_level(2),
        level_pair(),
    ]
}

/// Names understood by [`lookup`]. Base names accept a `^m` suffix.
pub const NAMES: &[&str] = &[
    "id",
    "pair",
    "cup",
    "singleton",
    "cross",
    "halflib",
    "four",
    "pairs",
    "level-pair",
    "level-cross",
    "level-pairs",
    "level-four",
    "cross-on-level-1",
    "cross-on-level-2",
    "four-on-level-1",
    "four-on-level-2",
    "pairs-on-level-1",
    "pairs-on-level-2",
    "singletons-on-level-1",
    "singletons-on-level-2",
    "half-three",
    "cross-cross",
    "twisted-pairs",
];

/// Resolves a catalogue name such as `pair^2`, `cross` or `level-cross`.
pub fn lookup(name: &str) -> Option<SpatialPartition> {
    let (base, m) = match name.split_once('^') {
        Some((b, m)) => (b, m.parse::<usize>().ok().filter(|&m| m >= 1)?),
        None => (name, 1),
    };
    let one_level = |p: SpatialPartition| p.amplify(m).ok();
    match base {
        "id" => Some(identity(m)),
        "pair" => Some(pair(m)),
        "cup" => Some(cup(m)),
        "singleton" => Some(singleton(m)),
        "cross" => one_level(cross()),
        "halflib" => one_level(halflib()),
        "four" => one_level(four()),
        "pairs" => one_level(pairs()),
        _ if m != 1 => None,
        "level-pair" => Some(level_pair()),
        "level-cross" => Some(level_cross()),
        "level-pairs" => Some(level_pairs()),
        "level-four" => Some(level_four()),
        "cross-on-level-1" => Some(cross_on_level(1)),
        "cross-on-level-2" => Some(cross_on_level(2)),
        "four-on-level-1" => Some(four_on_level(1)),
        "four-on-level-2" => Some(four_on_level(2)),
        "pairs-on-level-1" => Some(pairs_on_level(1)),
        "pairs-on-level-2" => Some(pairs_on_level(2)),
        "singletons-on-level-1" => Some(singletons_on_level(1)),
        "singletons-on-level-2" => Some(singletons_on_level(2)),
        "half-three" => Some(half_three()),
        "cross-cross" => Some(cross_cross()),
        "twisted-pairs" => Some(twisted_pairs()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            assert!(lookup(name).is_some(), "{name}");
        }
        assert_eq!(lookup("pair^3"), Some(pair(3)));
        assert_eq!(lookup("cross^2"), Some(cross_cross()));
        assert_eq!(lookup("level-pair^2"), None);
        assert_eq!(lookup("nope"), None);
        assert_eq!(lookup("id^0"), None);
    }

    #[test]
    fn shapes() {
        assert_eq!(level_pair().shape(), (0, 1, 2));
        assert_eq!(level_four().shape(), (1, 1, 2));
        assert_eq!(half_three().shape(), (2, 1, 2));
        assert_eq!(twisted_pairs().shape(), (2, 2, 2));
        assert_eq!(halflib().shape(), (3, 3, 1));
        assert_eq!(all_partitions_generators().len(), 6);
        assert!(pair_partitions_generators().iter().all(|p| p.is_pair_partition()));
    }

    #[test]
    fn level_swaps_relate_variants() {
        assert_eq!(cross_on_level(1).permute_levels(&[2, 1]), cross_on_level(2));
        assert_eq!(singletons_on_level(1).permute_levels(&[2, 1]), singletons_on_level(2));
        assert_eq!(level_cross().permute_levels(&[2, 1]), level_cross());
    }
}
