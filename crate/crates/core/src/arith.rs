//! Exact integer and rational arithmetic shared by every other module.
//!
//! Nothing here uses floating point. Integer matrices are eliminated
//! fraction-free; rational matrices are cleared of denominators row by row
//! before elimination. Pivots are always the first nonzero entry in column
//! order.

use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// Parse `"p"`, `"-p"` or `"p/q"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest double, for drawing only.
pub fn approximate(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A vector of the integer lattice `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<BigInt>);

impl LatticeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        LatticeVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        LatticeVector(entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|v| -v).collect())
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_point(&self, p: &RationalPoint) -> Rational {
        self.0
            .iter()
            .zip(&p.0)
            .fold(Rational::zero(), |acc, (a, x)| acc + rat_int(a) * x)
    }

    /// First nonzero entry is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_positive())
    }

    /// `self` or `-self`, whichever is lexicographically positive.
    pub fn sign_normalized(&self) -> Self {
        if self.is_lex_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Entry gcd, zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
    }
}

impl Deref for LatticeVector {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A point of `Q^n`. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&v| rat(v, 1)).collect())
    }

    pub fn origin(n: usize) -> Self {
        RationalPoint(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &RationalPoint) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// The lattice direction of a nonzero rational vector: denominators are
    /// cleared and the result made primitive.
    pub fn lattice_direction(&self) -> Result<LatticeVector> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let scaled = self
            .0
            .iter()
            .map(|v| (v * rat_int(&lcm)).to_integer())
            .collect();
        primitive(&LatticeVector(scaled))
    }
}

impl Index<usize> for RationalPoint {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, ")")
    }
}

/// Divide a nonzero lattice vector by the gcd of its entries.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::DegenerateInput(
            "primitive vector of the zero vector".into(),
        ));
    }
    Ok(LatticeVector(v.0.iter().map(|x| x / &g).collect()))
}

/// Exact determinant of the square matrix whose rows are `rows`, by Bareiss
/// fraction-free elimination.
pub fn lattice_determinant(rows: &[LatticeVector]) -> Result<BigInt> {
    let n = rows.len();
    for r in rows {
        if r.dim() != n {
            return Err(Error::DimensionError {
                expected: n,
                got: r.dim(),
            });
        }
    }
    let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
    Ok(bareiss_determinant(m))
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A dense rational matrix with an explicit column count. A matrix with no
/// rows still has a width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn new(cols: usize) -> Self {
        Matrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionError {
                expected: cols,
                got: r.len(),
            });
        }
        Ok(Matrix { cols, rows })
    }

    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols, "row width");
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix {
            cols: self.rows.len(),
            rows,
        }
    }

    /// Exact rank. Each row is scaled to a primitive integer row and the
    /// elimination keeps rows primitive after every update.
    pub fn rank(&self) -> usize {
        let rows = self.rows.iter().map(|r| integer_row(r)).collect();
        integer_rank(rows, self.cols)
    }

    /// Basis of the right kernel `{x : Mx = 0}` read off the reduced row
    /// echelon form. One vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        for free in (0..self.cols).filter(|&c| pivot_of_col[c].is_none()) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -rref[r][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == m.len() {
                break;
            }
            let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for v in m[row].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = m[row].clone();
            for (i, r) in m.iter_mut().enumerate() {
                if i == row || r[col].is_zero() {
                    continue;
                }
                let f = r[col].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.truncate(row);
        (m, pivots)
    }
}

/// Exact nullity of a rational matrix: columns minus rank.
pub fn kernel_dimension(m: &Matrix) -> usize {
    m.num_cols() - m.rank()
}

/// Clear denominators and divide by the content.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|v| (v * rat_int(&lcm)).to_integer())
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    rows.retain(|r| r.iter().any(|v| !v.is_zero()));
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pv = &pivot_row[col];
        for r in tail.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let g = pv.gcd(&r[col]);
            let a = pv / &g;
            let b = &r[col] / &g;
            for j in col..cols {
                if pivot_row[j].is_zero() {
                    if !r[j].is_zero() {
                        r[j] *= &a;
                    }
                } else {
                    r[j] = &r[j] * &a - &b * &pivot_row[j];
                }
            }
            make_primitive(r);
        }
        rank += 1;
    }
    rank
}

/// Solve the square system `A x = b` exactly; `None` when `A` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[col].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == col || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Row-style Hermite normal form of an integer matrix of full row rank:
/// pivots positive, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // Euclid on column c among rows r.. until a single nonzero remains.
        loop {
            let nonzero: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&i) = nonzero.first() {
                    rows.swap(r, i);
                }
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&i, &&j| rows[i][c].abs().cmp(&rows[j][c].abs()).then(i.cmp(&j)))
                .unwrap();
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[p][c]);
                for j in 0..cols {
                    let d = &q * &rows[p][j];
                    rows[i][j] -= d;
                }
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for v in rows[r].iter_mut() {
                *v = -&*v;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let d = &q * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    rows
}

/// For a primitive normal `a`, returns `(w, basis)` where `<a, w> = 1` and
/// `basis` (in Hermite normal form) spans the lattice `{z : <a, z> = 0}`.
/// Together they form a basis of `Z^n`.
pub fn hyperplane_lattice(a: &LatticeVector) -> Result<(LatticeVector, Vec<LatticeVector>)> {
    let n = a.dim();
    if !a.content().is_one() {
        return Err(Error::DegenerateInput(format!("{a} is not primitive")));
    }
    // Column operations on the row vector `a`, mirrored on `cols`.
    let mut a: Vec<BigInt> = a.0.clone();
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| BigInt::from((i == j) as i64)).collect())
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&j| !a[j].is_zero()).collect();
        let p = *nonzero
            .iter()
            .min_by(|&&i, &&j| a[i].abs().cmp(&a[j].abs()).then(i.cmp(&j)))
            .expect("nonzero normal");
        if nonzero.len() == 1 {
            if a[p].is_negative() {
                a[p] = -&a[p];
                for v in cols[p].iter_mut() {
                    *v = -&*v;
                }
            }
            let w = LatticeVector(cols[p].clone());
            let rest: Vec<Vec<BigInt>> = (0..n).filter(|&j| j != p).map(|j| cols[j].clone()).collect();
            let basis = hermite_normal_form(rest).into_iter().map(LatticeVector).collect();
            return Ok((w, basis));
        }
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let q = a[j].div_floor(&a[p]);
            let d = &q * &a[p];
            a[j] -= d;
            for i in 0..n {
                let d = &q * &cols[p][i];
                cols[j][i] -= d;
            }
        }
    }
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(m: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = m.len();
    let rows: Vec<LatticeVector> = m.iter().map(|r| LatticeVector(r.clone())).collect();
    let det = lattice_determinant(&rows)?;
    if det.abs() != BigInt::one() {
        return Err(Error::DegenerateInput(format!(
            "matrix has determinant {det}, not ±1"
        )));
    }
    let mut inv = vec![vec![BigInt::zero(); n]; n];
    let a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(rat_int).collect()).collect();
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| if i == j { Rational::one() } else { Rational::zero() })
            .collect();
        let x = solve(&a, &e).expect("unimodular matrix is invertible");
        for i in 0..n {
            inv[i][j] = x[i].to_integer();
        }
    }
    Ok(inv)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(v)
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&lv(&[2, 4])).unwrap(), lv(&[1, 2]));
        assert_eq!(primitive(&lv(&[-3, 0, 0])).unwrap(), lv(&[-1, 0, 0]));
        assert_eq!(primitive(&lv(&[1, 1])).unwrap(), lv(&[1, 1]));
        assert!(matches!(
            primitive(&lv(&[0, 0])),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(lattice_determinant(&[lv(&[1, 0]), lv(&[0, 1])]).unwrap(), int(1));
        assert_eq!(lattice_determinant(&[lv(&[-1, 0]), lv(&[-1, 2])]).unwrap(), int(-2));
        assert_eq!(lattice_determinant(&[lv(&[1, 0]), lv(&[-1, -1])]).unwrap(), int(-1));
        assert_eq!(lattice_determinant(&[]).unwrap(), int(1));
        assert!(matches!(
            lattice_determinant(&[lv(&[1, 0, 0]), lv(&[0, 1])]),
            Err(Error::DimensionError { .. })
        ));
    }

    #[test]
    fn determinant_needs_row_swap() {
        let rows = [lv(&[0, 1, 2]), lv(&[1, 0, 3]), lv(&[4, -3, 8])];
        // 0*(0*8-3*-3) - 1*(1*8-3*4) + 2*(1*-3-0*4) = 0 + 4 - 6
        assert_eq!(lattice_determinant(&rows).unwrap(), int(-2));
    }

    #[test]
    fn kernel_dimension_examples() {
        let id = Matrix::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(kernel_dimension(&id), 0);
        let zero = Matrix::from_i64(3, &[&[0, 0, 0]]).unwrap();
        assert_eq!(kernel_dimension(&zero), 3);
        let m = Matrix::from_i64(3, &[&[1, 1, 0], &[0, 1, 1]]).unwrap();
        assert_eq!(kernel_dimension(&m), 1);
        assert_eq!(kernel_dimension(&Matrix::new(4)), 4);
    }

    #[test]
    fn kernel_basis_is_annihilated() {
        let m = Matrix::from_rows(
            4,
            vec![
                vec![rat(1, 2), rat(1, 1), rat(0, 1), rat(-3, 1)],
                vec![rat(1, 1), rat(2, 1), rat(1, 3), rat(0, 1)],
            ],
        )
        .unwrap();
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), kernel_dimension(&m));
        for v in &basis {
            for row in m.rows() {
                let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn rationals_parse_and_format() {
        assert_eq!(parse_rational("1/3"), Some(rat(1, 3)));
        assert_eq!(parse_rational("-4/6"), Some(rat(-2, 3)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
        assert_eq!(format_rational(&rat(6, 3)), "2");
    }

    #[test]
    fn hyperplane_lattice_completes_a_basis() {
        for a in [vec![1, 1], vec![3, -5, 7], vec![0, 0, -1], vec![2, 3]] {
            let a = lv(&a);
            let (w, basis) = hyperplane_lattice(&a).unwrap();
            assert_eq!(a.dot(&w), int(1));
            for b in &basis {
                assert!(a.dot(b).is_zero());
            }
            let mut rows = basis.clone();
            rows.push(w);
            assert_eq!(lattice_determinant(&rows).unwrap().abs(), int(1));
        }
    }

    #[test]
    fn hnf_is_deterministic_and_reduced() {
        let h = hermite_normal_form(vec![
            vec![int(2), int(4), int(4)],
            vec![int(-6), int(6), int(12)],
            vec![int(10), int(4), int(16)],
        ]);
        assert_eq!(h[0][0], int(2));
        assert!(h[1][0].is_zero() && h[2][0].is_zero() && h[2][1].is_zero());
        assert!(h[1][1].is_positive() && h[0][1] < h[1][1]);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(unimodular_inverse(&[vec![int(2), int(0)], vec![int(0), int(1)]]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
