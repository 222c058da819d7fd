//! Exact dense linear algebra over the integers and the rationals.
//!
//! Everything here is arbitrary precision. The Smith normal form is the
//! workhorse: kernels and cokernels of integer matrices are read off the
//! invariant factors and the right transform.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Int = BigInt;
pub type Rational = BigRational;

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
}

impl Ring {
    pub fn symbol(self) -> &'static str {
        match self {
            Ring::Integers => "Z",
            Ring::Rationals => "Q",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: alloc::vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. A 0-row input yields a `0 x 0` matrix;
    /// use [`Matrix::zeros`] for `0 x n` shapes.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(alloc::format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Places `blocks[r][c]` into a block matrix. Block row heights and block
    /// column widths are taken from the given sizes, so empty blocks are fine.
    pub fn from_blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[&[&Matrix<T>]]) -> Self {
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for (br, &h) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bc, &w) in col_sizes.iter().enumerate() {
                let b = blocks[br][bc];
                assert!(b.rows == h && b.cols == w, "block ({br},{bc}) has the wrong shape");
                for i in 0..h {
                    for j in 0..w {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += w;
            }
            r0 += h;
        }
        out
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + for<'a> core::ops::Mul<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(alloc::format!(
                "cannot add {}x{} and {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| Rational::from_integer(x.clone()))
    }
}

impl RatMatrix {
    /// Integer copy of the matrix, or `None` if some entry has a denominator.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(Rational::is_integer) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

/// Invariant-factor normal form `left * M * right = diag(d_1, .., d_r, 0, ..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// `min(rows, cols)` diagonal entries; the first `rank` are positive and
    /// form a divisibility chain, the rest are zero.
    pub diagonal: Vec<Int>,
    pub rank: usize,
    pub left_transform: Option<IntMatrix>,
    pub right_transform: Option<IntMatrix>,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> &[Int] {
        &self.diagonal[..self.rank]
    }

    /// The diagonal form as a matrix of the original shape.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (k, v) in self.diagonal.iter().enumerate() {
            d.set(k, k, v.clone());
        }
        d
    }
}

struct Reducer {
    a: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_rows(&mut self.a, i, j);
        if let Some(u) = self.left.as_mut() {
            swap_rows(u, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = self.right.as_mut() {
            swap_cols(v, i, j);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &Int) {
        sub_row(&mut self.a, dst, src, q);
        if let Some(u) = self.left.as_mut() {
            sub_row(u, dst, src, q);
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &Int) {
        sub_col(&mut self.a, dst, src, q);
        if let Some(v) = self.right.as_mut() {
            sub_col(v, dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        negate_row(&mut self.a, i);
        if let Some(u) = self.left.as_mut() {
            negate_row(u, i);
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), &Int)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(_, b)| x.abs() < b.abs()) {
                    best = Some(((i, j), x));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Clears row and column `t` outside the pivot. Returns once the pivot
    /// divides every entry of the trailing block.
    fn settle_pivot(&mut self, t: usize) {
        let (rows, cols) = (self.a.rows, self.a.cols);
        loop {
            let pivot = self.a.get(t, t).clone();
            let mut leftover: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t).div_floor(&pivot);
                self.sub_row(i, t, &q);
                if !self.a.get(i, t).is_zero() {
                    leftover = pick_smaller(&self.a, leftover, (i, t));
                }
            }
            for j in t + 1..cols {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j).div_floor(&pivot);
                self.sub_col(j, t, &q);
                if !self.a.get(t, j).is_zero() {
                    leftover = pick_smaller(&self.a, leftover, (t, j));
                }
            }
            if let Some((i, j)) = leftover {
                // remainders are strictly smaller than the pivot
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => {
                    // row t += row i; the next sweep leaves a smaller remainder
                    self.sub_row(t, i, &(-Int::one()));
                }
                None => return,
            }
        }
    }
}

fn pick_smaller(a: &IntMatrix, cur: Option<(usize, usize)>, cand: (usize, usize)) -> Option<(usize, usize)> {
    match cur {
        Some(c) if a.get(c.0, c.1).abs() <= a.get(cand.0, cand.1).abs() => Some(c),
        _ => Some(cand),
    }
}

fn swap_rows<T>(m: &mut Matrix<T>, i: usize, j: usize) {
    for k in 0..m.cols {
        m.data.swap(i * m.cols + k, j * m.cols + k);
    }
}

fn swap_cols<T>(m: &mut Matrix<T>, i: usize, j: usize) {
    for k in 0..m.rows {
        m.data.swap(k * m.cols + i, k * m.cols + j);
    }
}

fn sub_row(m: &mut IntMatrix, dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for k in 0..m.cols {
        let s = &m.data[src * m.cols + k];
        if s.is_zero() {
            continue;
        }
        let v = s * q;
        m.data[dst * m.cols + k] -= v;
    }
}

fn sub_col(m: &mut IntMatrix, dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for k in 0..m.rows {
        let s = &m.data[k * m.cols + src];
        if s.is_zero() {
            continue;
        }
        let v = s * q;
        m.data[k * m.cols + dst] -= v;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for k in 0..m.cols {
        let idx = i * m.cols + k;
        m.data[idx] = -core::mem::take(&mut m.data[idx]);
    }
}

/// Smith normal form by smallest-entry pivoting with gcd row/column sweeps.
///
/// With `want_transforms` the unimodular `left` and `right` satisfy
/// `left * m * right == diagonal_matrix`.
pub fn smith_normal_form(m: &IntMatrix, want_transforms: bool) -> SmithDecomposition {
    let mut r = Reducer {
        a: m.clone(),
        left: want_transforms.then(|| IntMatrix::identity(m.rows)),
        right: want_transforms.then(|| IntMatrix::identity(m.cols)),
    };
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = r.smallest_nonzero(t) else {
            break;
        };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        r.settle_pivot(t);
        if r.a.get(t, t).is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..n).map(|k| r.a.get(k, k).clone()).collect();
    SmithDecomposition {
        diagonal,
        rank: t,
        left_transform: r.left,
        right_transform: r.right,
    }
}

/// Finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`, with
/// `t_1 | t_2 | ... | t_k` and every `t_i >= 2`. Over Q only the rank is used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the group from arbitrary cyclic orders, normalising them into
    /// invariant factors. Orders 0 contribute free rank, orders 1 vanish.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[Int]) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        let diag = IntMatrix::from_fn(finite.len(), finite.len(), |i, j| {
            if i == j {
                finite[i].clone()
            } else {
                Int::zero()
            }
        });
        let snf = smith_normal_form(&diag, false);
        AbelianGroup {
            free_rank: free,
            torsion: snf
                .invariant_factors()
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        if self.torsion.is_empty() || other.torsion.is_empty() {
            let mut torsion = self.torsion.clone();
            torsion.extend(other.torsion.iter().cloned());
            return AbelianGroup {
                free_rank: self.free_rank + other.free_rank,
                torsion,
            };
        }
        let orders: Vec<Int> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        AbelianGroup::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// The same group after tensoring with Q.
    pub fn rationalized(&self) -> AbelianGroup {
        AbelianGroup::free(self.free_rank)
    }

    /// Renders as e.g. `Z^2⊕Z_2⊕Z_4`, `Q`, or `0`.
    pub fn display_over(&self, ring: Ring) -> GroupDisplay<'_> {
        GroupDisplay { group: self, ring }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_over(Ring::Integers).fmt(f)
    }
}

pub struct GroupDisplay<'a> {
    group: &'a AbelianGroup,
    ring: Ring,
}

impl fmt::Display for GroupDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !core::mem::replace(&mut first, false) {
                f.write_str("⊕")?;
            }
            Ok(())
        };
        match self.group.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str(self.ring.symbol())?;
            }
            r => {
                sep(f)?;
                write!(f, "{}^{r}", self.ring.symbol())?;
            }
        }
        for t in &self.group.torsion {
            sep(f)?;
            write!(f, "Z_{t}")?;
        }
        Ok(())
    }
}

/// Quotient of `Z^rows` by the column span of `m`.
pub fn cokernel_description(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m, false);
    AbelianGroup {
        free_rank: m.rows - snf.rank,
        torsion: snf
            .invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect(),
    }
}

/// Quotient of `Q^rows` by the column span of `m`.
pub fn cokernel_description_rational(m: &RatMatrix) -> AbelianGroup {
    AbelianGroup::free(m.rows - rational_rank(m))
}

pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols - smith_normal_form(m, false).rank
}

pub fn kernel_rank_rational(m: &RatMatrix) -> usize {
    m.cols - rational_rank(m)
}

/// Columns form a basis of the kernel lattice `{x in Z^cols : m x = 0}`.
/// Each column is primitive, being a column of a unimodular matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m, true);
    let v = snf.right_transform.expect("requested transforms");
    let k = m.cols - snf.rank;
    IntMatrix::from_fn(m.cols, k, |i, j| v.get(i, snf.rank + j).clone())
}

/// Rank over Q by fraction-exact Gaussian elimination.
pub fn rational_rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        swap_rows(&mut a, rank, p);
        let pivot = a.get(rank, c).clone();
        for i in rank + 1..rows {
            if a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone() / &pivot;
            for k in c..cols {
                let v = a.get(rank, k).clone() * &f;
                let idx = i * cols + k;
                a.data[idx] -= v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m, false).rank
}

/// Square with unit invariant factors, i.e. invertible over Z.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let snf = smith_normal_form(m, false);
    snf.rank == m.rows && snf.invariant_factors().iter().all(One::is_one)
}

pub fn is_invertible_rational(m: &RatMatrix) -> bool {
    m.is_square() && rational_rank(m) == m.rows
}
