//! The relations `R(p)` on the generators `u_{IJ}`, written out symbolically
//! and tested against concrete matrix models.
//!
//! Basis indices are the flattened level tuples of [`Dims`]; a word is a
//! product `u_{A_1 I_1} ⋯ u_{A_k I_k}` stored as its list of `(row, col)`
//! factors, and the empty word stands for the unit.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{rat, RatMatrix, Rational, SpMatrix};
use crate::named;
use crate::partition::SpatialPartition;
use crate::tensor_maps::{delta_unchecked, s_map, Dims, SizeCap, TensorMapError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error(transparent)]
    TensorMap(#[from] TensorMapError),
    #[error("incomplete model: {0}")]
    IncompleteModel(String),
    #[error("the two evaluation methods disagree for {partition} at I={upper:?}, J={lower:?}")]
    OracleMismatch {
        partition: String,
        upper: Vec<usize>,
        lower: Vec<usize>,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A product of generators, `(row, col)` per factor.
pub type Word = Vec<(usize, usize)>;

/// Integer combination of words.
pub type Poly = BTreeMap<Word, BigInt>;

fn add_term(poly: &mut Poly, w: Word, c: BigInt) {
    let e = poly.entry(w.clone()).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        poly.remove(&w);
    }
}

/// `lhs - rhs`, scaled so the coefficient of the first word is positive.
/// Two equations describe the same constraint exactly when these agree.
pub fn normalized_difference(lhs: &Poly, rhs: &Poly) -> Poly {
    let mut diff = lhs.clone();
    for (w, c) in rhs {
        add_term(&mut diff, w.clone(), -c.clone());
    }
    if diff.values().next().is_some_and(|c| c.is_negative()) {
        for c in diff.values_mut() {
            *c = -c.clone();
        }
    }
    diff
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    /// Basis indices of `I_1..I_k`.
    pub upper: Vec<usize>,
    /// Basis indices of `J_1..J_l`.
    pub lower: Vec<usize>,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl Equation {
    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn difference(&self) -> Poly {
        normalized_difference(&self.lhs, &self.rhs)
    }
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub partition: SpatialPartition,
    pub dims: Dims,
    /// One equation per `(I, J)`, `I` varying slowest.
    pub equations: Vec<Equation>,
}

/// All `(row, col)` pairs of `[N]^l × [N]^k` with `δ_p = 1`, by direct
/// evaluation of the definition.
fn delta_support(p: &SpatialPartition, d: &Dims) -> Vec<(usize, usize)> {
    let n = d.total();
    let rows = n.pow(p.lower() as u32);
    let cols = n.pow(p.upper() as u32);
    let mut out = Vec::new();
    for c in 0..cols {
        let upper = d.multi_at(c, p.upper());
        for r in 0..rows {
            let lower = d.multi_at(r, p.lower());
            if delta_unchecked(p, &upper, &lower) {
                out.push((r, c));
            }
        }
    }
    out
}

fn digits(idx: usize, len: usize, n: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    let mut idx = idx;
    for slot in v.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    v
}

/// Writes out `R(p)` for every choice of outer indices.
pub fn emit_relations(p: &SpatialPartition, d: &Dims, cap: SizeCap) -> Result<RelationSet, RelationError> {
    // s_map validates grading and size; its entries are not used here
    s_map(p, d, cap)?;
    let n = d.total();
    let (k, l) = (p.upper(), p.lower());
    let support = delta_support(p, d);
    let mut cols_of_row: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut rows_of_col: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(r, c) in &support {
        cols_of_row.entry(r).or_default().push(c);
        rows_of_col.entry(c).or_default().push(r);
    }
    let mut equations = Vec::new();
    for i in 0..n.pow(k as u32) {
        let upper = digits(i, k, n);
        for j in 0..n.pow(l as u32) {
            let lower = digits(j, l, n);
            let mut lhs = Poly::new();
            for &a in cols_of_row.get(&j).into_iter().flatten() {
                let word = digits(a, k, n).into_iter().zip(upper.iter().copied()).collect();
                add_term(&mut lhs, word, BigInt::one());
            }
            let mut rhs = Poly::new();
            for &b in rows_of_col.get(&i).into_iter().flatten() {
                let word = lower.iter().copied().zip(digits(b, l, n)).collect();
                add_term(&mut rhs, word, BigInt::one());
            }
            equations.push(Equation {
                upper: upper.clone(),
                lower: lower.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(RelationSet {
        partition: p.clone(),
        dims: d.clone(),
        equations,
    })
}

/// `u_{(1,2)(2,1)}`-style rendering with 1-based tuple entries.
pub fn render_word(w: &Word, d: &Dims) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let tuple = |i: usize| {
        let t: Vec<String> = d.tuple_at(i).iter().map(|x| (x + 1).to_string()).collect();
        format!("({})", t.join(","))
    };
    w.iter()
        .map(|&(r, c)| format!("u{}{}", tuple(r), tuple(c)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_poly(p: &Poly, d: &Dims) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}·"));
        }
        out.push_str(&render_word(w, d));
    }
    out
}

impl RelationSet {
    /// Equations that are not identities.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Equation> {
        self.equations.iter().filter(|e| !e.is_trivial())
    }

    /// One line per nontrivial equation.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for e in self.nontrivial() {
            s.push_str(&render_poly(&e.lhs, &self.dims));
            s.push_str(" = ");
            s.push_str(&render_poly(&e.rhs, &self.dims));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({}) over dims {}:\n{}", self.partition, self.dims, self.render())
    }
}

/// A concrete choice of the `u_{IJ}` as exact square matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModel {
    dims: Dims,
    rep_dim: usize,
    /// `u_{IJ}` at position `I * N + J`.
    entries: Vec<RatMatrix>,
    orthogonal: bool,
}

impl MatrixModel {
    pub fn new(dims: Dims, rep_dim: usize, entries: Vec<RatMatrix>) -> Result<Self, RelationError> {
        let n = dims.total();
        if rep_dim == 0 {
            return Err(RelationError::IncompleteModel("rep_dim must be positive".into()));
        }
        if entries.len() != n * n {
            return Err(RelationError::IncompleteModel(format!(
                "{} entries given, {} needed",
                entries.len(),
                n * n
            )));
        }
        if let Some(pos) = entries.iter().position(|e| e.rows() != rep_dim || e.cols() != rep_dim) {
            return Err(RelationError::IncompleteModel(format!(
                "entry {} is not {rep_dim}x{rep_dim}",
                pos
            )));
        }
        let mut model = MatrixModel {
            dims,
            rep_dim,
            entries,
            orthogonal: false,
        };
        model.orthogonal = model.compute_orthogonal();
        Ok(model)
    }

    /// Scalar model from a function of the two basis indices.
    pub fn from_fn(dims: Dims, f: impl Fn(usize, usize) -> Rational) -> Self {
        let n = dims.total();
        let entries = (0..n * n).map(|x| RatMatrix::scalar(f(x / n, x % n))).collect();
        MatrixModel::new(dims, 1, entries).expect("complete by construction")
    }

    /// `u_{IJ} = δ_{IJ}`.
    pub fn identity(dims: Dims) -> Self {
        MatrixModel::from_fn(dims, |i, j| rat((i == j) as i64))
    }

    /// The two-level model `u_{(i1,i2)(j1,j2)} = [σ(j1)=i1][σ(j2)=i2]` of a
    /// permutation `σ` of `0..n`.
    pub fn permutation_square(sigma: &[usize]) -> Self {
        let n = sigma.len();
        let dims = Dims::uniform(n, 2);
        let d = dims.clone();
        MatrixModel::from_fn(dims, move |i, j| {
            let (a, b) = (d.tuple_at(i), d.tuple_at(j));
            rat((sigma[b[0]] == a[0] && sigma[b[1]] == a[1]) as i64)
        })
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Self {
        let entries = self.entries.iter().map(|e| e.scale(factor)).collect();
        MatrixModel::new(self.dims.clone(), self.rep_dim, entries).expect("same layout")
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatMatrix {
        &self.entries[i * self.dims.total() + j]
    }

    /// Whether `u uᵀ = uᵀ u = 1` blockwise.
    pub fn is_orthogonal(&self) -> bool {
        self.orthogonal
    }

    fn compute_orthogonal(&self) -> bool {
        let n = self.dims.total();
        let one = RatMatrix::identity(self.rep_dim);
        let zero = RatMatrix::zeros(self.rep_dim, self.rep_dim);
        for i in 0..n {
            for j in 0..n {
                let mut rows = zero.clone();
                let mut cols = zero.clone();
                for k in 0..n {
                    rows = rows.add(&self.entry(i, k).mul(self.entry(j, k)));
                    cols = cols.add(&self.entry(k, i).mul(self.entry(k, j)));
                }
                let want = if i == j { &one } else { &zero };
                if rows != *want || cols != *want {
                    return false;
                }
            }
        }
        true
    }

    fn word_value(&self, w: &Word) -> RatMatrix {
        w.iter().fold(RatMatrix::identity(self.rep_dim), |acc, &(r, c)| {
            acc.mul(self.entry(r, c))
        })
    }

    /// Value of a polynomial in this model.
    pub fn evaluate(&self, p: &Poly) -> RatMatrix {
        let mut acc = RatMatrix::zeros(self.rep_dim, self.rep_dim);
        for (w, c) in p {
            let v = self.word_value(w).scale(&Rational::from_integer(c.clone()));
            acc = acc.add(&v);
        }
        acc
    }

    /// `(u^{⊗k})_{A,I} = u_{A_1 I_1} ⋯ u_{A_k I_k}` for all `A`, `I`, row-major.
    fn tensor_power(&self, k: usize) -> Vec<RatMatrix> {
        let n = self.dims.total();
        let size = n.pow(k as u32);
        let mut out = Vec::with_capacity(size * size);
        for a in 0..size {
            let ad = digits(a, k, n);
            for i in 0..size {
                let id = digits(i, k, n);
                let word: Word = ad.iter().copied().zip(id.iter().copied()).collect();
                out.push(self.word_value(&word));
            }
        }
        out
    }
}

/// Result of testing `R(p)` in a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    pub equations: usize,
    pub failures: usize,
}

fn check_levels(p: &SpatialPartition, model: &MatrixModel) -> Result<(), RelationError> {
    if p.levels() != model.dims.levels() {
        return Err(TensorMapError::LevelMismatch(p.levels(), model.dims.levels()).into());
    }
    Ok(())
}

/// Tests `R(p)` equation by equation and, independently, as the matrix
/// identity `S_p u^{⊗k} = u^{⊗l} S_p`. The two must agree on every `(I, J)`.
pub fn check_relation(p: &SpatialPartition, model: &MatrixModel) -> Result<RelationCheck, RelationError> {
    check_relation_with_cap(p, model, SizeCap::default())
}

pub fn check_relation_with_cap(
    p: &SpatialPartition,
    model: &MatrixModel,
    cap: SizeCap,
) -> Result<RelationCheck, RelationError> {
    check_levels(p, model)?;
    let d = &model.dims;
    let rel = emit_relations(p, d, cap)?;
    let sp = s_map(p, d, cap)?;
    let matrix_side = intertwiner_sides(&sp, model, p.upper(), p.lower());
    let n = d.total();
    let mut failures = 0;
    for eq in &rel.equations {
        let by_equation = model.evaluate(&eq.lhs) == model.evaluate(&eq.rhs);
        let i = eq.upper.iter().fold(0, |acc, &x| acc * n + x);
        let j = eq.lower.iter().fold(0, |acc, &x| acc * n + x);
        let (left, right) = &matrix_side[j * n.pow(p.upper() as u32) + i];
        let by_matrix = left == right;
        if by_equation != by_matrix {
            return Err(RelationError::OracleMismatch {
                partition: p.to_string(),
                upper: eq.upper.clone(),
                lower: eq.lower.clone(),
            });
        }
        if !by_equation {
            failures += 1;
        }
    }
    Ok(RelationCheck {
        holds: failures == 0,
        equations: rel.equations.len(),
        failures,
    })
}

/// Entries `(J, I)` of `S_p u^{⊗k}` and `u^{⊗l} S_p`, row-major.
fn intertwiner_sides(sp: &SpMatrix, model: &MatrixModel, k: usize, l: usize) -> Vec<(RatMatrix, RatMatrix)> {
    let n = model.dims.total();
    let (rows, cols) = (n.pow(l as u32), n.pow(k as u32));
    let uk = model.tensor_power(k);
    let ul = model.tensor_power(l);
    let zero = RatMatrix::zeros(model.rep_dim, model.rep_dim);
    let mut left = vec![zero.clone(); rows * cols];
    let mut right = vec![zero; rows * cols];
    for (j, a, v) in sp.iter() {
        // (S_p u^k)_{J,I} += S[J,A] u^k[A,I]
        for i in 0..cols {
            let idx = j * cols + i;
            left[idx] = left[idx].add(&uk[a * cols + i].scale(v));
        }
    }
    for (b, i, v) in sp.iter() {
        // (u^l S_p)_{J,I} += u^l[J,B] S[B,I]
        for j in 0..rows {
            let idx = j * cols + i;
            right[idx] = right[idx].add(&ul[j * rows + b].scale(v));
        }
    }
    left.into_iter().zip(right).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCheck {
    pub tensor: bool,
    /// `p` on top of `q`, when the shapes allow it.
    pub compose_pq: Option<bool>,
    /// `q` on top of `p`, when the shapes allow it.
    pub compose_qp: Option<bool>,
    pub involution: bool,
}

impl ClosureCheck {
    pub fn all_hold(&self) -> bool {
        self.tensor && self.involution && self.compose_pq.unwrap_or(true) && self.compose_qp.unwrap_or(true)
    }
}

/// Given `R(p)` and `R(q)` in `model`, tests `R` of their tensor product,
/// compositions and the involution of `p`.
pub fn check_relation_closure(
    p: &SpatialPartition,
    q: &SpatialPartition,
    model: &MatrixModel,
) -> Result<ClosureCheck, RelationError> {
    for (name, x) in [("p", p), ("q", q)] {
        if !check_relation(x, model)?.holds {
            return Err(RelationError::Precondition(format!("R({name}) fails for {x}")));
        }
    }
    let holds = |x: &SpatialPartition| check_relation(x, model).map(|c| c.holds);
    let tensor = holds(&p.tensor(q).map_err(|e| RelationError::Precondition(e.to_string()))?)?;
    let compose_pq = match p.compose(q) {
        Ok(r) => Some(holds(&r.partition)?),
        Err(_) => None,
    };
    let compose_qp = match q.compose(p) {
        Ok(r) => Some(holds(&r.partition)?),
        Err(_) => None,
    };
    let involution = holds(&p.involution())?;
    Ok(ClosureCheck {
        tensor,
        compose_pq,
        compose_qp,
        involution,
    })
}

/// The matrix `ů` with `ů_{ij} = Σ_k u_{(i,k)(j,1)}` and the checks on it.
#[derive(Clone, Debug)]
pub struct RingReport {
    pub n: usize,
    /// `ů_{ij}` at `i * n + j`.
    pub ring: Vec<RatMatrix>,
    /// The sums do not depend on which level-2 index is fixed.
    pub independence: bool,
    pub orthogonal: bool,
    /// Idempotent entries with unit row and column sums; only evaluated when
    /// the extra relations hold.
    pub magic: Option<bool>,
}

pub fn ring_matrix(model: &MatrixModel) -> Result<RingReport, RelationError> {
    let dims = model.dims.as_slice();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(RelationError::Precondition(format!(
            "needs two levels of equal dimension, got {}",
            model.dims
        )));
    }
    let n = dims[0];
    if !check_relation(&named::singletons_on_level(2), model)?.holds {
        return Err(RelationError::Precondition(
            "the relations of the level-2 singleton pair fail".into(),
        ));
    }
    let d = &model.dims;
    let r = model.rep_dim;
    let zero = RatMatrix::zeros(r, r);
    let one = RatMatrix::identity(r);
    let sum = |f: &dyn Fn(usize) -> RatMatrix| (0..n).fold(zero.clone(), |acc, k| acc.add(&f(k)));
    let at =
        |i: usize, k: usize, j: usize, x: usize| model.entry(d.tuple_index(&[i, k]), d.tuple_index(&[j, x])).clone();

    let ring: Vec<RatMatrix> = (0..n * n).map(|ij| sum(&|k| at(ij / n, k, ij % n, 0))).collect();
    let ring_at = |i: usize, j: usize| &ring[i * n + j];

    let mut independence = true;
    for i in 0..n {
        for j in 0..n {
            for x in 0..n {
                independence &= sum(&|k| at(i, k, j, x)) == *ring_at(i, j);
                independence &= sum(&|k| at(i, x, j, k)) == *ring_at(i, j);
            }
        }
    }

    let mut orthogonal = true;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { &one } else { &zero };
            orthogonal &= sum(&|k| ring_at(i, k).mul(ring_at(j, k))) == *want;
            orthogonal &= sum(&|k| ring_at(k, i).mul(ring_at(k, j))) == *want;
        }
    }

    let extra =
        check_relation(&named::singleton(2), model)?.holds && check_relation(&named::half_three(), model)?.holds;
    let magic = extra.then(|| {
        let idempotent = ring.iter().all(|e| e.mul(e) == *e);
        let sums = (0..n).all(|i| sum(&|k| ring_at(i, k).clone()) == one && sum(&|k| ring_at(k, i).clone()) == one);
        idempotent && sums
    });

    Ok(RingReport {
        n,
        ring,
        independence,
        orthogonal,
        magic,
    })
}
