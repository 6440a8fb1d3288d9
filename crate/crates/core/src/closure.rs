//! Bounded generation of categories of spatial partitions.
//!
//! A category is infinite, so everything here works inside [`Bounds`]: only
//! partitions with at most `max_cols` columns are kept. Saturation runs in
//! semi-naive rounds. Each round combines the partitions found in the previous
//! round with everything known so far; candidate generation runs in parallel
//! against a frozen index and the merge is sequential in a fixed order, so the
//! member list (including member ids) is the same for every thread count.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::grading::{class_membership, SeparatingClass};
use crate::partition::{Corner, PartitionError, SpatialPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_cols: usize,
    pub max_set: usize,
    pub max_rounds: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_cols: 8,
            max_set: 1_000_000,
            max_rounds: 64,
        }
    }
}

impl Bounds {
    pub fn with_max_cols(max_cols: usize) -> Self {
        Bounds {
            max_cols,
            ..Bounds::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundHit {
    MaxSet,
    MaxRounds,
}

#[derive(Debug, Error)]
pub enum ClosureError {
    #[error("generator {index} has {got} levels, expected {expected}")]
    GeneratorLevels { index: usize, got: usize, expected: usize },
    #[error("generator {index} has {cols} columns, more than max_cols={max_cols}")]
    GeneratorTooLarge { index: usize, cols: usize, max_cols: usize },
    #[error("bounds must be positive")]
    BadBounds,
    #[error("target has {0} levels but the closure has {1}")]
    LevelMismatch(usize, usize),
    #[error("closure stopped early ({0:?}) after {1} members")]
    BoundExceeded(BoundHit, usize),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// How a member was first obtained. Indices refer to earlier members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Generator,
    Base,
    Involution(u32),
    Rotation(u32, Corner),
    Tensor(u32, u32),
    /// `members[upper]` glued on top of `members[lower]`.
    Compose {
        upper: u32,
        lower: u32,
    },
}

#[derive(Clone, Debug)]
pub struct ClosureSet {
    m: usize,
    bounds: Bounds,
    generators: Vec<SpatialPartition>,
    members: Vec<SpatialPartition>,
    steps: Vec<Step>,
    index: HashMap<SpatialPartition, u32>,
    by_upper: Vec<Vec<u32>>,
    by_lower: Vec<Vec<u32>>,
    rounds: usize,
    bound_hit: Option<BoundHit>,
}

impl ClosureSet {
    fn empty(m: usize, bounds: Bounds, generators: Vec<SpatialPartition>) -> Self {
        ClosureSet {
            m,
            bounds,
            generators,
            members: Vec::new(),
            steps: Vec::new(),
            index: HashMap::new(),
            by_upper: vec![Vec::new(); bounds.max_cols + 1],
            by_lower: vec![Vec::new(); bounds.max_cols + 1],
            rounds: 0,
            bound_hit: None,
        }
    }

    /// Returns false (and records the hit) once `max_set` is reached.
    fn insert(&mut self, p: SpatialPartition, step: Step) -> bool {
        if self.index.contains_key(&p) {
            return true;
        }
        if self.members.len() >= self.bounds.max_set {
            self.bound_hit = Some(BoundHit::MaxSet);
            return false;
        }
        let id = self.members.len() as u32;
        self.by_upper[p.upper()].push(id);
        self.by_lower[p.lower()].push(id);
        self.index.insert(p.clone(), id);
        self.members.push(p);
        self.steps.push(step);
        true
    }

    pub fn levels(&self) -> usize {
        self.m
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn generators(&self) -> &[SpatialPartition] {
        &self.generators
    }

    /// Members in discovery order.
    pub fn members(&self) -> &[SpatialPartition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn saturated_within_bounds(&self) -> bool {
        self.bound_hit.is_none()
    }

    pub fn bound_hit(&self) -> Option<BoundHit> {
        self.bound_hit
    }

    /// Turns an early stop into [`ClosureError::BoundExceeded`].
    pub fn require_saturated(self) -> Result<Self, ClosureError> {
        match self.bound_hit {
            None => Ok(self),
            Some(hit) => Err(ClosureError::BoundExceeded(hit, self.members.len())),
        }
    }

    pub fn contains_partition(&self, p: &SpatialPartition) -> bool {
        self.index.contains_key(p)
    }

    pub fn id_of(&self, p: &SpatialPartition) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn step(&self, id: usize) -> Step {
        self.steps[id]
    }

    pub fn members_of_shape(&self, k: usize, l: usize) -> impl Iterator<Item = &SpatialPartition> {
        self.by_upper
            .get(k)
            .into_iter()
            .flatten()
            .map(|&i| &self.members[i as usize])
            .filter(move |p| p.lower() == l)
    }

    pub fn count(&self, k: usize, l: usize) -> usize {
        self.members_of_shape(k, l).count()
    }

    /// Members sorted by shape and canonical labels; independent of discovery order.
    pub fn sorted_members(&self) -> Vec<SpatialPartition> {
        let mut v = self.members.clone();
        v.sort_by(|a, b| (a.cols(), a.upper(), a.labels()).cmp(&(b.cols(), b.upper(), b.labels())));
        v
    }

    /// The construction of a member as a list of steps, parents first.
    pub fn trace(&self, p: &SpatialPartition) -> Option<Trace> {
        let target = self.id_of(p)?;
        let mut needed = vec![false; target + 1];
        needed[target] = true;
        for id in (0..=target).rev() {
            if !needed[id] {
                continue;
            }
            for parent in parents(self.steps[id]) {
                needed[parent as usize] = true;
            }
        }
        let ids: Vec<usize> = (0..=target).filter(|&i| needed[i]).collect();
        let position: HashMap<usize, usize> = ids.iter().enumerate().map(|(pos, &id)| (id, pos)).collect();
        let remap = |i: u32| position[&(i as usize)] as u32;
        let nodes = ids
            .iter()
            .map(|&id| TraceNode {
                partition: self.members[id].clone(),
                step: match self.steps[id] {
                    Step::Involution(a) => Step::Involution(remap(a)),
                    Step::Rotation(a, c) => Step::Rotation(remap(a), c),
                    Step::Tensor(a, b) => Step::Tensor(remap(a), remap(b)),
                    Step::Compose { upper, lower } => Step::Compose {
                        upper: remap(upper),
                        lower: remap(lower),
                    },
                    s => s,
                },
            })
            .collect();
        Some(Trace { nodes })
    }

    /// Brute-force check that no single operation on two members escapes the
    /// set within bounds. Quadratic; meant for tests.
    pub fn is_closed_within_bounds(&self) -> bool {
        let max = self.bounds.max_cols;
        let ms = &self.members;
        ms.par_iter().all(|p| {
            if !self.contains_partition(&p.involution()) {
                return false;
            }
            for c in Corner::ALL {
                if let Ok(r) = p.rotate(c) {
                    if !self.contains_partition(&r) {
                        return false;
                    }
                }
            }
            for q in ms {
                if p.cols() + q.cols() <= max && !self.contains_partition(&p.tensor(q).unwrap()) {
                    return false;
                }
                if p.lower() == q.upper() && p.upper() + q.lower() <= max {
                    let c = p.compose(q).unwrap().partition;
                    if !self.contains_partition(&c) {
                        return false;
                    }
                }
            }
            true
        })
    }
}

fn parents(step: Step) -> Vec<u32> {
    match step {
        Step::Generator | Step::Base => vec![],
        Step::Involution(a) | Step::Rotation(a, _) => vec![a],
        Step::Tensor(a, b) => vec![a, b],
        Step::Compose { upper, lower } => vec![upper, lower],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNode {
    pub partition: SpatialPartition,
    /// Parent indices point into the trace itself.
    pub step: Step,
}

/// A replayable construction; the last node is the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub nodes: Vec<TraceNode>,
}

impl Trace {
    pub fn target(&self) -> &SpatialPartition {
        &self.nodes.last().expect("traces are nonempty").partition
    }

    /// Recomputes every node from its parents. Leaves must be one of the
    /// `generators` or a base partition on `m` levels. Returns the rebuilt
    /// target, or `None` when any node fails to reproduce.
    pub fn replay(&self, generators: &[SpatialPartition], m: usize) -> Option<SpatialPartition> {
        let base = [
            SpatialPartition::identity(m),
            SpatialPartition::pair(m),
            SpatialPartition::cup(m),
        ];
        let mut built: Vec<SpatialPartition> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let get = |i: u32| built.get(i as usize).cloned();
            let p = match node.step {
                Step::Generator => generators.iter().find(|g| **g == node.partition).cloned()?,
                Step::Base => base.iter().find(|g| **g == node.partition).cloned()?,
                Step::Involution(a) => get(a)?.involution(),
                Step::Rotation(a, c) => get(a)?.rotate(c).ok()?,
                Step::Tensor(a, b) => get(a)?.tensor(&get(b)?).ok()?,
                Step::Compose { upper, lower } => get(upper)?.compose(&get(lower)?).ok()?.partition,
            };
            if p != node.partition {
                return None;
            }
            built.push(p);
        }
        built.pop()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, node) in self.nodes.iter().enumerate() {
            let how = match node.step {
                Step::Generator => "generator".to_string(),
                Step::Base => "base".to_string(),
                Step::Involution(a) => format!("involution of #{a}"),
                Step::Rotation(a, c) => format!("rotation {} of #{a}", c.name()),
                Step::Tensor(a, b) => format!("#{a} tensor #{b}"),
                Step::Compose { upper, lower } => format!("#{upper} on top of #{lower}"),
            };
            writeln!(f, "#{i} {} = {how}", node.partition)?;
        }
        Ok(())
    }
}

fn check_inputs(generators: &[SpatialPartition], m: usize, bounds: Bounds) -> Result<(), ClosureError> {
    if m == 0 {
        return Err(PartitionError::ZeroLevels.into());
    }
    if bounds.max_cols == 0 || bounds.max_set == 0 || bounds.max_rounds == 0 {
        return Err(ClosureError::BadBounds);
    }
    for (index, g) in generators.iter().enumerate() {
        if g.levels() != m {
            return Err(ClosureError::GeneratorLevels {
                index,
                got: g.levels(),
                expected: m,
            });
        }
        if g.cols() > bounds.max_cols {
            return Err(ClosureError::GeneratorTooLarge {
                index,
                cols: g.cols(),
                max_cols: bounds.max_cols,
            });
        }
    }
    Ok(())
}

/// Everything reachable from one frontier member, restricted to unseen partitions.
fn expand(cs: &ClosureSet, f: u32, known: usize) -> Vec<(SpatialPartition, Step)> {
    let max = cs.bounds.max_cols;
    let p = &cs.members[f as usize];
    let mut out = Vec::new();
    let push = |q: SpatialPartition, step: Step, out: &mut Vec<(SpatialPartition, Step)>| {
        if !cs.index.contains_key(&q) {
            out.push((q, step));
        }
    };
    push(p.involution(), Step::Involution(f), &mut out);
    for c in Corner::ALL {
        if let Ok(r) = p.rotate(c) {
            push(r, Step::Rotation(f, c), &mut out);
        }
    }
    let room = max - p.cols();
    for g in 0..known as u32 {
        let q = &cs.members[g as usize];
        if q.cols() <= room {
            push(p.tensor(q).expect("same levels"), Step::Tensor(f, g), &mut out);
            if g != f {
                push(q.tensor(p).expect("same levels"), Step::Tensor(g, f), &mut out);
            }
        }
    }
    // p on top of q: q must have p.lower() upper columns
    for &g in cs.by_upper.get(p.lower()).into_iter().flatten() {
        if g as usize >= known {
            continue;
        }
        let q = &cs.members[g as usize];
        if p.upper() + q.lower() <= max {
            let r = p.compose(q).expect("interface checked").partition;
            push(r, Step::Compose { upper: f, lower: g }, &mut out);
        }
    }
    // q on top of p
    for &g in cs.by_lower.get(p.upper()).into_iter().flatten() {
        if g as usize >= known {
            continue;
        }
        let q = &cs.members[g as usize];
        if q.upper() + p.lower() <= max {
            let r = q.compose(p).expect("interface checked").partition;
            push(r, Step::Compose { upper: g, lower: f }, &mut out);
        }
    }
    out
}

fn saturate(
    mut cs: ClosureSet,
    seeds: Vec<(SpatialPartition, Step)>,
    stop_at: Option<&SpatialPartition>,
) -> ClosureSet {
    for (p, step) in seeds {
        if !cs.insert(p, step) {
            return cs;
        }
    }
    let mut frontier_start = 0usize;
    loop {
        if stop_at.is_some_and(|t| cs.contains_partition(t)) {
            return cs;
        }
        let known = cs.members.len();
        if frontier_start == known {
            return cs;
        }
        if cs.rounds >= cs.bounds.max_rounds {
            cs.bound_hit = Some(BoundHit::MaxRounds);
            return cs;
        }
        cs.rounds += 1;
        let found: Vec<Vec<(SpatialPartition, Step)>> = (frontier_start as u32..known as u32)
            .into_par_iter()
            .map(|f| expand(&cs, f, known))
            .collect();
        for (p, step) in found.into_iter().flatten() {
            if !cs.insert(p, step) {
                return cs;
            }
        }
        frontier_start = known;
    }
}

fn seeds(generators: &[SpatialPartition], m: usize, max_cols: usize) -> Vec<(SpatialPartition, Step)> {
    let mut s: Vec<(SpatialPartition, Step)> = generators.iter().cloned().map(|g| (g, Step::Generator)).collect();
    for b in [
        SpatialPartition::identity(m),
        SpatialPartition::pair(m),
        SpatialPartition::cup(m),
    ] {
        if b.cols() <= max_cols {
            s.push((b, Step::Base));
        }
    }
    s
}

/// The category generated by `generators` on `m` levels, truncated to `bounds`.
pub fn generate_closure(generators: &[SpatialPartition], m: usize, bounds: Bounds) -> Result<ClosureSet, ClosureError> {
    check_inputs(generators, m, bounds)?;
    let cs = ClosureSet::empty(m, bounds, generators.to_vec());
    Ok(saturate(cs, seeds(generators, m, bounds.max_cols), None))
}

/// Like [`generate_closure`], but stops after the first round in which
/// `target` shows up. The result is then generally not saturated.
pub fn generate_until(
    generators: &[SpatialPartition],
    m: usize,
    bounds: Bounds,
    target: &SpatialPartition,
) -> Result<ClosureSet, ClosureError> {
    check_inputs(generators, m, bounds)?;
    let cs = ClosureSet::empty(m, bounds, generators.to_vec());
    Ok(saturate(cs, seeds(generators, m, bounds.max_cols), Some(target)))
}

#[derive(Clone, Debug)]
pub enum MembershipAnswer {
    Member(Trace),
    NotFoundWithinBounds,
    SeparatedBy(SeparatingClass),
}

impl MembershipAnswer {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipAnswer::Member(_))
    }
}

impl fmt::Display for MembershipAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipAnswer::Member(t) => write!(f, "member ({} steps)", t.nodes.len()),
            MembershipAnswer::NotFoundWithinBounds => f.write_str("not found within bounds"),
            MembershipAnswer::SeparatedBy(c) => write!(f, "separated by {c}"),
        }
    }
}

/// True when `c` is known to be a category on everything in `parts`, so that
/// it can certify non-membership.
pub fn certifies(c: &SeparatingClass, parts: &[&SpatialPartition]) -> bool {
    let pairs = parts.iter().all(|p| p.is_pair_partition());
    match c {
        SeparatingClass::NoDiagonal | SeparatingClass::NoGeodesic => false,
        SeparatingClass::NoDiagonalSymm | SeparatingClass::NoGeodesicSymm => pairs,
        SeparatingClass::EvenCols => pairs,
        _ => parts.iter().all(|p| c.applies_to(p)),
    }
}

/// A class containing the generators and base partitions but not `target`.
pub fn separate(
    generators: &[SpatialPartition],
    m: usize,
    target: &SpatialPartition,
    classes: &[SeparatingClass],
) -> Option<SeparatingClass> {
    let base = [SpatialPartition::identity(m), SpatialPartition::pair(m)];
    let everything: Vec<&SpatialPartition> = generators.iter().chain(base.iter()).chain([target]).collect();
    classes.iter().find_map(|c| {
        if !certifies(c, &everything) {
            return None;
        }
        let inside = generators
            .iter()
            .chain(base.iter())
            .all(|g| class_membership(g, c) == Ok(true));
        (inside && class_membership(target, c) == Ok(false)).then(|| c.clone())
    })
}

pub fn contains(
    cs: &ClosureSet,
    target: &SpatialPartition,
    classes: &[SeparatingClass],
) -> Result<MembershipAnswer, ClosureError> {
    if target.levels() != cs.m {
        return Err(ClosureError::LevelMismatch(target.levels(), cs.m));
    }
    if let Some(trace) = cs.trace(target) {
        return Ok(MembershipAnswer::Member(trace));
    }
    Ok(match separate(&cs.generators, cs.m, target, classes) {
        Some(c) => MembershipAnswer::SeparatedBy(c),
        None => MembershipAnswer::NotFoundWithinBounds,
    })
}

/// Membership search with iterative deepening on `max_cols`, from the
/// smallest width that fits the inputs up to `bounds.max_cols`. Separation is
/// tried first since it is cheap and conclusive.
pub fn search(
    generators: &[SpatialPartition],
    m: usize,
    target: &SpatialPartition,
    bounds: Bounds,
    classes: &[SeparatingClass],
) -> Result<MembershipAnswer, ClosureError> {
    if target.levels() != m {
        return Err(ClosureError::LevelMismatch(target.levels(), m));
    }
    check_inputs(generators, m, bounds)?;
    if let Some(c) = separate(generators, m, target, classes) {
        return Ok(MembershipAnswer::SeparatedBy(c));
    }
    let start = generators
        .iter()
        .map(SpatialPartition::cols)
        .chain([target.cols(), 2])
        .max()
        .unwrap_or(2);
    for max_cols in start..=bounds.max_cols {
        let b = Bounds { max_cols, ..bounds };
        let cs = generate_until(generators, m, b, target)?;
        if let Some(trace) = cs.trace(target) {
            return Ok(MembershipAnswer::Member(trace));
        }
    }
    Ok(MembershipAnswer::NotFoundWithinBounds)
}

/// Shape-wise stacking: `stack(p, q)` for `p` in `a` and `q` in `b` of equal shape.
pub fn kronecker_product(a: &ClosureSet, b: &ClosureSet) -> ClosureSet {
    let bounds = Bounds {
        max_cols: a.bounds.max_cols.min(b.bounds.max_cols),
        max_set: a.bounds.max_set.max(b.bounds.max_set),
        max_rounds: a.bounds.max_rounds.max(b.bounds.max_rounds),
    };
    let mut stacked = Vec::new();
    for cols in 0..=bounds.max_cols {
        for k in 0..=cols {
            let l = cols - k;
            for p in a.members_of_shape(k, l) {
                for q in b.members_of_shape(k, l) {
                    stacked.push(SpatialPartition::stack(&[p.clone(), q.clone()]).expect("equal shapes"));
                }
            }
        }
    }
    let mut cs = ClosureSet::empty(a.m + b.m, bounds, stacked.clone());
    for p in stacked {
        if !cs.insert(p, Step::Generator) {
            break;
        }
    }
    if cs.bound_hit.is_none() {
        cs.bound_hit = a.bound_hit.or(b.bound_hit);
    }
    cs
}

/// The category generated by the Kronecker product of `a` and `b` together with `extra`.
pub fn amalgamated_closure(
    a: &ClosureSet,
    b: &ClosureSet,
    extra: &[SpatialPartition],
    bounds: Bounds,
) -> Result<ClosureSet, ClosureError> {
    let product = kronecker_product(a, b);
    let mut gens: Vec<SpatialPartition> = product
        .members
        .iter()
        .filter(|p| p.cols() <= bounds.max_cols)
        .cloned()
        .collect();
    gens.extend(extra.iter().cloned());
    generate_closure(&gens, a.m + b.m, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn noncrossing_pairs_small() {
        let cs = generate_closure(&[], 1, Bounds::with_max_cols(6)).unwrap();
        assert!(cs.saturated_within_bounds());
        assert_eq!(cs.count(0, 2), 1);
        assert_eq!(cs.count(0, 4), 2);
        assert_eq!(cs.count(0, 6), 5);
        assert_eq!(cs.count(3, 3), 5);
        assert_eq!(cs.count(1, 2), 0);
        assert!(cs.members().iter().all(|p| p.is_noncrossing() && p.is_pair_partition()));
        assert!(cs.is_closed_within_bounds());
    }

    #[test]
    fn crossing_gives_all_pairs() {
        let cs = generate_closure(&[named::cross()], 1, Bounds::with_max_cols(6)).unwrap();
        assert_eq!(cs.count(0, 4), 3);
        assert_eq!(cs.count(0, 6), 15);
        assert_eq!(cs.count(2, 4), 15);
    }

    #[test]
    fn traces_replay() {
        let gens = [named::cross()];
        let cs = generate_closure(&gens, 1, Bounds::with_max_cols(6)).unwrap();
        for p in cs.members() {
            let t = cs.trace(p).unwrap();
            assert_eq!(t.replay(&gens, 1).as_ref(), Some(p));
        }
    }

    #[test]
    fn bounds_are_reported() {
        let cs = generate_closure(
            &[named::cross()],
            1,
            Bounds {
                max_cols: 6,
                max_set: 10,
                max_rounds: 64,
            },
        )
        .unwrap();
        assert_eq!(cs.len(), 10);
        assert_eq!(cs.bound_hit(), Some(BoundHit::MaxSet));
        assert!(matches!(
            cs.require_saturated(),
            Err(ClosureError::BoundExceeded(BoundHit::MaxSet, 10))
        ));

        let cs = generate_closure(
            &[named::cross()],
            1,
            Bounds {
                max_cols: 6,
                max_set: 1000,
                max_rounds: 1,
            },
        )
        .unwrap();
        assert_eq!(cs.bound_hit(), Some(BoundHit::MaxRounds));
    }

    #[test]
    fn input_errors() {
        assert!(matches!(
            generate_closure(&[named::cross()], 2, Bounds::default()),
            Err(ClosureError::GeneratorLevels { .. })
        ));
        assert!(matches!(
            generate_closure(&[named::halflib()], 1, Bounds::with_max_cols(4)),
            Err(ClosureError::GeneratorTooLarge { .. })
        ));
        let cs = generate_closure(&[], 1, Bounds::with_max_cols(2)).unwrap();
        assert!(matches!(
            contains(&cs, &named::identity(2), &[]),
            Err(ClosureError::LevelMismatch(2, 1))
        ));
    }

    #[test]
    fn separation_certificates() {
        let cs = generate_closure(&[], 1, Bounds::with_max_cols(8)).unwrap();
        let ans = contains(&cs, &named::cross(), &SeparatingClass::all_plain()).unwrap();
        assert!(matches!(
            ans,
            MembershipAnswer::SeparatedBy(SeparatingClass::NonCrossing)
        ));

        let ans = search(
            &[named::level_cross()],
            2,
            &named::level_pairs(),
            Bounds::with_max_cols(4),
            &SeparatingClass::TABLE,
        )
        .unwrap();
        assert!(matches!(
            ans,
            MembershipAnswer::SeparatedBy(SeparatingClass::NoGeodesicSymm)
        ));
    }

    #[test]
    fn kronecker_small() {
        let nc = generate_closure(&[], 1, Bounds::with_max_cols(4)).unwrap();
        let prod = kronecker_product(&nc, &nc);
        assert_eq!(prod.levels(), 2);
        assert_eq!(prod.count(0, 2), 1);
        assert!(prod.contains_partition(&named::pair(2)));
        assert_eq!(prod.count(0, 4), 4);
        assert_eq!(prod.count(1, 2), 0);
        assert!(prod.is_closed_within_bounds());

        let amal = amalgamated_closure(&nc, &nc, &[], Bounds::with_max_cols(4)).unwrap();
        assert_eq!(amal.sorted_members(), prod.sorted_members());
    }
}
