//! Exact rational matrices and fraction-free elimination.
//!
//! Every dimension reported by this crate comes out of [`rank`] or
//! [`kernel_basis`]. Rows are cleared of denominators and reduced with a
//! fraction-free (Bareiss style) Gauss-Jordan sweep, so all intermediate
//! values are integers and every division is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Matrices with fewer columns than this are eliminated with dense rows.
const DENSE_COLUMN_LIMIT: usize = 64;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse row-major matrix over the rationals. Stored entries are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, Rational>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from dense rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {r}");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[BTreeMap<usize, Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        if v.is_zero() {
            self.entries[r].remove(&c);
        } else {
            self.entries[r].insert(c, v);
        }
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries[r].iter().map(|(&c, v)| (c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.entries.iter().enumerate() {
            for (&c, v) in row {
                t.entries[c].insert(r, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.entries
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (&c, a)| acc + a * &v[c]))
            .collect()
    }

    /// Appends a column, returning its index.
    pub fn push_column(&mut self, column: &BTreeMap<usize, Rational>) -> usize {
        let c = self.cols;
        self.cols += 1;
        for (&r, v) in column {
            self.set(r, c, v.clone());
        }
        c
    }

    /// Rows scaled to primitive integer vectors.
    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.entries
            .iter()
            .map(|row| {
                let lcm = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|(&c, v)| (c, v.numer() * (&lcm / v.denom())))
                    .collect()
            })
            .collect()
    }
}

trait IntRow: Clone {
    fn from_sparse(cols: usize, entries: Vec<(usize, BigInt)>) -> Self;
    fn first_nonzero(&self) -> Option<usize>;
    fn entry(&self, col: usize) -> BigInt;
    fn is_zero(&self) -> bool;
    /// `self <- (pivot * self - factor * other) / prev`, exactly.
    fn eliminate(&mut self, pivot: &BigInt, factor: &BigInt, other: &Self, prev: &BigInt);
    fn into_sparse(self) -> Vec<(usize, BigInt)>;
}

fn exact_div(n: BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        return n;
    }
    let (q, r) = n.div_rem(d);
    debug_assert!(r.is_zero(), "inexact division in fraction-free elimination");
    q
}

#[derive(Clone)]
struct DenseRow(Vec<BigInt>);

impl IntRow for DenseRow {
    fn from_sparse(cols: usize, entries: Vec<(usize, BigInt)>) -> Self {
        let mut v = vec![BigInt::zero(); cols];
        for (c, x) in entries {
            v[c] = x;
        }
        DenseRow(v)
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    fn entry(&self, col: usize) -> BigInt {
        self.0[col].clone()
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn eliminate(&mut self, pivot: &BigInt, factor: &BigInt, other: &Self, prev: &BigInt) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if a.is_zero() && (factor.is_zero() || b.is_zero()) {
                continue;
            }
            let mut v = &*a * pivot;
            if !factor.is_zero() && !b.is_zero() {
                v -= factor * b;
            }
            *a = exact_div(v, prev);
        }
    }

    fn into_sparse(self) -> Vec<(usize, BigInt)> {
        self.0.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    }
}

#[derive(Clone)]
struct SparseRow(Vec<(usize, BigInt)>);

impl IntRow for SparseRow {
    fn from_sparse(_cols: usize, entries: Vec<(usize, BigInt)>) -> Self {
        SparseRow(entries)
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    fn entry(&self, col: usize) -> BigInt {
        match self.0.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.0[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn eliminate(&mut self, pivot: &BigInt, factor: &BigInt, other: &Self, prev: &BigInt) {
        if factor.is_zero() {
            for (_, a) in self.0.iter_mut() {
                *a = exact_div(&*a * pivot, prev);
            }
            return;
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut lhs = std::mem::take(&mut self.0).into_iter().peekable();
        let mut rhs = other.0.iter().peekable();
        loop {
            let next = match (lhs.peek(), rhs.peek()) {
                (None, None) => break,
                (Some(_), None) => {
                    let (c, a) = lhs.next().unwrap();
                    (c, a * pivot)
                }
                (None, Some(_)) => {
                    let (c, b) = rhs.next().unwrap();
                    (*c, -(factor * b))
                }
                (Some((ca, _)), Some((cb, _))) => {
                    if ca < cb {
                        let (c, a) = lhs.next().unwrap();
                        (c, a * pivot)
                    } else if cb < ca {
                        let (c, b) = rhs.next().unwrap();
                        (*c, -(factor * b))
                    } else {
                        let (c, a) = lhs.next().unwrap();
                        let (_, b) = rhs.next().unwrap();
                        (c, a * pivot - factor * b)
                    }
                }
            };
            if !next.1.is_zero() {
                out.push((next.0, exact_div(next.1, prev)));
            }
        }
        self.0 = out;
    }

    fn into_sparse(self) -> Vec<(usize, BigInt)> {
        self.0
    }
}

/// A pivot found during elimination: its column and the final pivot row.
struct Pivot {
    col: usize,
    row: Vec<(usize, BigInt)>,
}

impl Pivot {
    fn value(&self) -> BigInt {
        SparseRow(self.row.clone()).entry(self.col)
    }

    fn entry(&self, col: usize) -> BigInt {
        match self.row.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.row[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }
}

/// Fraction-free elimination. Pivots are chosen as the first nonzero entry in
/// row-major order among rows that have not yet been used as pivots. With
/// `reduce_above` the sweep is Gauss-Jordan: every pivot column ends up with a
/// single nonzero entry.
fn eliminate_rows<R: IntRow>(cols: usize, rows: Vec<Vec<(usize, BigInt)>>, reduce_above: bool) -> Vec<Pivot> {
    let mut rows: Vec<R> = rows.into_iter().map(|r| R::from_sparse(cols, r)).collect();
    let n = rows.len();
    let mut used = vec![false; n];
    let mut prev = BigInt::one();
    let mut order = Vec::new();
    loop {
        let found = (0..n)
            .filter(|&r| !used[r])
            .find_map(|r| rows[r].first_nonzero().map(|c| (r, c)));
        let Some((pr, pc)) = found else { break };
        let pivot_row = rows[pr].clone();
        let p = pivot_row.entry(pc);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pr || (used[r] && !reduce_above) || row.is_zero() {
                continue;
            }
            let f = row.entry(pc);
            row.eliminate(&p, &f, &pivot_row, &prev);
        }
        used[pr] = true;
        order.push((pr, pc));
        prev = p;
    }
    order
        .into_iter()
        .map(|(r, c)| Pivot { col: c, row: std::mem::replace(&mut rows[r], R::from_sparse(0, Vec::new())).into_sparse() })
        .collect()
}

fn eliminate(m: &RatMatrix, reduce_above: bool) -> Vec<Pivot> {
    let rows = m.integer_rows();
    if m.cols < DENSE_COLUMN_LIMIT {
        eliminate_rows::<DenseRow>(m.cols, rows, reduce_above)
    } else {
        eliminate_rows::<SparseRow>(m.cols, rows, reduce_above)
    }
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    eliminate(m, false).len()
}

/// Indices of a maximal linearly independent set of columns, ascending.
pub fn pivot_columns(m: &RatMatrix) -> Vec<usize> {
    let mut cols: Vec<usize> = eliminate(m, false).into_iter().map(|p| p.col).collect();
    cols.sort_unstable();
    cols
}

/// A basis of the right kernel `{v : M v = 0}`.
///
/// One vector per free column, in ascending column order; the vector for free
/// column `f` has a 1 in position `f` and zeros in every other free position.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let pivots = eliminate(m, true);
    let mut is_pivot_col = vec![false; m.cols];
    for p in &pivots {
        is_pivot_col[p.col] = true;
    }
    let values: Vec<BigInt> = pivots.iter().map(Pivot::value).collect();
    (0..m.cols)
        .filter(|&f| !is_pivot_col[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (p, d) in pivots.iter().zip(&values) {
                let e = p.entry(f);
                if !e.is_zero() {
                    v[p.col] = -Rational::new(e, d.clone());
                }
            }
            v
        })
        .collect()
}

/// Some solution of `M x = b`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows);
    let mut aug = m.clone();
    let rhs: BTreeMap<usize, Rational> =
        b.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(r, v)| (r, v.clone())).collect();
    let last = aug.push_column(&rhs);
    let pivots = eliminate(&aug, true);
    if pivots.iter().any(|p| p.col == last) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols];
    for p in &pivots {
        x[p.col] = Rational::new(p.entry(last), p.value());
    }
    Some(x)
}

/// Scales a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. The zero vector is returned unchanged.
pub fn primitive_integer_scaling(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_zero_vec(v: &[Rational]) -> bool {
        v.iter().all(Zero::is_zero)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(rank(&RatMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RatMatrix::identity(5)), 5);
    }

    #[test]
    fn kernel_examples() {
        let m = RatMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(kernel_basis(&RatMatrix::identity(4)).is_empty());

        let m = RatMatrix::from_int_rows(&[vec![1, 2, 3]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
        let stacked = RatMatrix::from_rows(&k);
        assert_eq!(rank(&stacked), 2);
    }

    #[test]
    fn zero_dimensional_shapes() {
        assert_eq!(rank(&RatMatrix::zeros(0, 3)), 0);
        assert_eq!(kernel_basis(&RatMatrix::zeros(0, 3)).len(), 3);
        assert!(kernel_basis(&RatMatrix::zeros(2, 0)).is_empty());
    }

    #[test]
    fn rational_entries() {
        let m = RatMatrix::from_rows(&[vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![rat(-2, 3), int(1)]]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMatrix::from_int_rows(&[vec![1, 1], vec![1, -1]]);
        let x = solve(&m, &[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let m = RatMatrix::from_int_rows(&[vec![1, 1], vec![2, 2]]);
        assert!(solve(&m, &[int(1), int(3)]).is_none());
        let x = solve(&m, &[int(1), int(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![int(1), int(2)]);
    }

    #[test]
    fn sparse_path_matches_dense_path() {
        // 70 columns forces sparse rows.
        let mut m = RatMatrix::zeros(3, 70);
        m.set(0, 5, int(2));
        m.set(0, 69, int(-4));
        m.set(1, 5, int(1));
        m.set(1, 10, int(7));
        m.set(2, 10, int(14));
        m.set(2, 69, int(4));
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 68);
        for v in &k {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat(-1, 2), rat(3, 4), int(0)];
        assert_eq!(primitive_integer_scaling(&v), vec![int(2), int(-3), int(0)]);
    }

    fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec((-3i64..=3, 1i64..=3), c),
                r,
            )
            .prop_map(|rows| {
                let rows: Vec<Vec<Rational>> = rows
                    .into_iter()
                    .map(|row| {
                        row.into_iter()
                            .map(|(n, d)| if n.abs() == 3 { int(0) } else { rat(n, d) })
                            .collect()
                    })
                    .collect();
                RatMatrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(m in small_matrix(6, 8)) {
            let k = kernel_basis(&m);
            for v in &k {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
            prop_assert_eq!(rank(&m) + k.len(), m.ncols());
            if !k.is_empty() {
                prop_assert_eq!(rank(&RatMatrix::from_rows(&k)), k.len());
            }
        }

        #[test]
        fn rank_of_transpose(m in small_matrix(7, 7)) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn wide_matrices_use_sparse_rows(m in small_matrix(4, 4), shift in 60usize..70) {
            // Embed a small matrix into a wide one.
            let mut wide = RatMatrix::zeros(m.nrows(), shift + m.ncols());
            for r in 0..m.nrows() {
                for (c, v) in m.row(r) {
                    wide.set(r, shift + c, v.clone());
                }
            }
            prop_assert_eq!(rank(&wide), rank(&m));
            for v in kernel_basis(&wide) {
                prop_assert!(is_zero_vec(&wide.mul_vec(&v)));
            }
        }

        #[test]
        fn pivot_columns_are_independent(m in small_matrix(6, 8)) {
            let cols = pivot_columns(&m);
            prop_assert_eq!(cols.len(), rank(&m));
            let sub: Vec<Vec<Rational>> = (0..m.nrows())
                .map(|r| cols.iter().map(|&c| m.get(r, c)).collect())
                .collect();
            prop_assert_eq!(rank(&RatMatrix::from_rows(&sub)), cols.len());
        }

        #[test]
        fn solve_recovers_image(m in small_matrix(5, 5), x in proptest::collection::vec(-4i64..4, 5)) {
            let x: Vec<Rational> = x.into_iter().take(m.ncols()).map(int).collect();
            let b = m.mul_vec(&x);
            let y = solve(&m, &b).expect("b is in the image");
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
