//! Exact rational matrices: a sparse type for the `S_p` maps and a small dense
//! type for model entries.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse matrix over exact rationals; zeros are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SpMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SpMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `v` to entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: Rational) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) outside {}x{}",
            self.rows,
            self.cols
        );
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((r, c)).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> SpMatrix {
        SpMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> SpMatrix {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SpMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, v * s)).collect(),
        }
    }

    /// `self * other`. Panics on a dimension mismatch.
    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut other_rows: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
        for (&(r, c), v) in &other.entries {
            other_rows.entry(r).or_default().push((c, v));
        }
        let mut out = SpMatrix::zeros(self.rows, other.cols);
        for (&(r, mid), a) in &self.entries {
            if let Some(row) = other_rows.get(&mid) {
                for &(c, b) in row {
                    out.add_to(r, c, a * b);
                }
            }
        }
        out
    }

    /// Kronecker product with `self` as the outer (slow) factor.
    pub fn kron(&self, other: &SpMatrix) -> SpMatrix {
        let mut out = SpMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (&(r1, c1), a) in &self.entries {
            for (&(r2, c2), b) in &other.entries {
                out.entries.insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        out
    }

    pub fn to_dense(&self) -> RatMatrix {
        let mut d = RatMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            d.set(r, c, v.clone());
        }
        d
    }

    /// True when every stored entry is exactly 1.
    pub fn is_zero_one(&self) -> bool {
        self.entries.values().all(|v| v.is_one())
    }
}

impl fmt::Debug for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpMatrix({}x{}, {{", self.rows, self.cols)?;
        for (i, (&(r, c), v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({r},{c}): {v}")?;
        }
        f.write_str("})")
    }
}

/// Dense matrix over exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn scalar(v: Rational) -> Self {
        RatMatrix {
            rows: 1,
            cols: 1,
            data: vec![v],
        }
    }

    /// From row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

/// A sparse integer row vector: `(column, value)` pairs with nonzero values.
pub type SparseRow = BTreeMap<usize, BigInt>;

fn reduce_content(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    let lead_negative = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    if lead_negative {
        g = -g;
    }
    for v in row.values_mut() {
        *v = &*v / &g;
    }
}

/// Exact rank of integer row vectors by fraction-free elimination. Each new
/// row is reduced against stored pivots keyed by their leading column, and
/// every intermediate row is divided by the gcd of its entries.
pub fn sparse_rank<I>(rows: I) -> usize
where
    I: IntoIterator<Item = SparseRow>,
{
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        while let Some((&lead, lead_val)) = row.iter().next() {
            let Some(piv) = pivots.get(&lead) else {
                reduce_content(&mut row);
                pivots.insert(lead, row);
                break;
            };
            // row <- piv_lead * row - lead_val * piv, which clears `lead`
            let a = piv[&lead].clone();
            let b = lead_val.clone();
            let mut next = SparseRow::new();
            for (&c, v) in &row {
                next.insert(c, v * &a);
            }
            for (&c, v) in piv {
                let e = next.entry(c).or_insert_with(BigInt::zero);
                *e -= v * &b;
            }
            next.retain(|_, v| !v.is_zero());
            reduce_content(&mut next);
            row = next;
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> SpMatrix {
        let mut m = SpMatrix::zeros(rows, cols);
        for &(r, c, v) in entries {
            m.set(r, c, rat(v));
        }
        m
    }

    #[test]
    fn sparse_products() {
        let a = sp(2, 3, &[(0, 0, 1), (0, 2, 2), (1, 1, 3)]);
        let b = sp(3, 1, &[(0, 0, 1), (1, 0, 1), (2, 0, 1)]);
        let c = a.mul(&b);
        assert_eq!(c, sp(2, 1, &[(0, 0, 3), (1, 0, 3)]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(SpMatrix::identity(3).mul(&b), b);
        assert_eq!(a.scale(&rat(0)).nnz(), 0);
        assert_eq!(a.to_dense().mul(&b.to_dense()), c.to_dense());
    }

    #[test]
    fn kron_layout() {
        let a = sp(2, 2, &[(0, 1, 1), (1, 0, 1)]);
        let b = sp(2, 1, &[(0, 0, 2), (1, 0, 3)]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 2));
        assert_eq!(k.get(0, 1), rat(2));
        assert_eq!(k.get(1, 1), rat(3));
        assert_eq!(k.get(2, 0), rat(2));
        assert_eq!(k.get(3, 0), rat(3));
        assert_eq!(k.nnz(), 4);
    }

    #[test]
    fn add_to_cancels() {
        let mut m = SpMatrix::zeros(1, 1);
        m.add_to(0, 0, rat(2));
        m.add_to(0, 0, rat(-2));
        assert_eq!(m.nnz(), 0);
    }

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(sparse_rank(vec![]), 0);
        assert_eq!(sparse_rank(vec![row(&[])]), 0);
        assert_eq!(sparse_rank(vec![row(&[(0, 1), (3, 1)]), row(&[(0, 2), (3, 2)])]), 1);
        assert_eq!(
            sparse_rank(vec![
                row(&[(0, 1), (1, 1)]),
                row(&[(1, 1), (2, 1)]),
                row(&[(0, 1), (2, -1)]),
            ]),
            2
        );
        assert_eq!(
            sparse_rank(vec![row(&[(0, 2), (1, 4)]), row(&[(0, 3), (1, 5)]), row(&[(2, 7)])]),
            3
        );
    }

    #[test]
    fn dense_ops() {
        let a = RatMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]]).unwrap();
        let i = RatMatrix::identity(2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(a.sub(&a), RatMatrix::zeros(2, 2));
        assert_eq!(a.transpose().get(0, 1), &rat(3));
        assert!(RatMatrix::from_rows(vec![vec![rat(1)], vec![]]).is_none());
        assert_eq!(a.add(&a), a.scale(&rat(2)));
    }
}
