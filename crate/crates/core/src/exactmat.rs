//! Exact integer matrices: determinant, nullity, signature and congruence.
//!
//! All arithmetic is arbitrary precision. Signatures are computed by
//! congruence diagonalization over the rationals, with an independent
//! principal-minor chain implementation kept alongside it.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("change of basis is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error("no admissible principal minor chain found")]
    NoMinorChain,
}

/// A square integer matrix, not necessarily symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn determinant(&self) -> BigInt {
        bareiss(self.n, self.data.clone()).0
    }

    pub fn rank(&self) -> usize {
        bareiss(self.n, self.data.clone()).1
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }
}

/// Fraction-free Gaussian elimination. Returns (determinant, rank).
fn bareiss(n: usize, mut a: Vec<BigInt>) -> (BigInt, usize) {
    if n == 0 {
        return (BigInt::one(), 0);
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r * n + col].is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..n {
                a.swap(p * n + c, row * n + c);
            }
            sign = -sign;
        }
        let pivot = a[row * n + col].clone();
        for r in (row + 1)..n {
            for c in (col + 1)..n {
                let v = (&pivot * &a[r * n + c] - &a[r * n + col] * &a[row * n + c]) / &prev;
                a[r * n + c] = v;
            }
            a[r * n + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    if rank < n {
        (BigInt::zero(), rank)
    } else {
        (sign * prev, rank)
    }
}

/// A symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix(IntMatrix);

impl SymMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, MatrixError> {
        match m.first_asymmetry() {
            Some((i, j)) => Err(MatrixError::NotSymmetric(i, j)),
            None => Ok(SymMatrix(m)),
        }
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix(IntMatrix::zeros(n))
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.0.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.0.get(i, j)
    }

    /// Sets entries (i, j) and (j, i).
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.0.set(j, i, v.clone());
        self.0.set(i, j, v);
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn determinant(&self) -> BigInt {
        self.0.determinant()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn nullity(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn signature(&self) -> i64 {
        signature(self)
    }

    pub fn signature_minor_chain(&self) -> Result<i64, MatrixError> {
        signature_minor_chain(self)
    }

    pub fn congruent(&self, p: &IntMatrix) -> Result<SymMatrix, MatrixError> {
        congruent(self, p)
    }

    /// The principal submatrix on the given indices, in the given order.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        let k = idx.len();
        let mut m = IntMatrix::zeros(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        SymMatrix(m)
    }

    /// Deletes row and column `k`.
    pub fn delete(&self, k: usize) -> Result<SymMatrix, MatrixError> {
        if k >= self.dim() {
            return Err(MatrixError::IndexOutOfRange(k, self.dim()));
        }
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| i != k).collect();
        Ok(self.principal(&idx))
    }

    /// Adds `sign` times row/column `j` to row/column `i`.
    pub fn slide(&self, i: usize, j: usize, sign: i64) -> Result<SymMatrix, MatrixError> {
        let n = self.dim();
        for &x in &[i, j] {
            if x >= n {
                return Err(MatrixError::IndexOutOfRange(x, n));
            }
        }
        let mut p = IntMatrix::identity(n);
        p.set(j, i, BigInt::from(sign));
        self.congruent(&p)
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }
}

/// Computes Pᵀ M P, rejecting P with |det P| != 1.
pub fn congruent(m: &SymMatrix, p: &IntMatrix) -> Result<SymMatrix, MatrixError> {
    if p.dim() != m.dim() {
        return Err(MatrixError::DimensionMismatch { expected: m.dim(), found: p.dim() });
    }
    let d = p.determinant();
    if d.abs() != BigInt::one() {
        return Err(MatrixError::NotUnimodular(d));
    }
    let out = p.transpose().mul(m.as_matrix())?.mul(p)?;
    Ok(SymMatrix(out))
}

/// Signature by symmetric Gaussian elimination over Q.
pub fn signature(m: &SymMatrix) -> i64 {
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                // zero diagonal: fold a nonzero off-diagonal entry onto the diagonal
                let mut pair = None;
                'outer: for (x, &i) in active.iter().enumerate() {
                    for &j in active.iter().skip(x + 1) {
                        if !a[i][j].is_zero() {
                            pair = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                let Some((i, j)) = pair else { break };
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                active.iter().position(|&x| x == i).unwrap()
            }
        };
        let p = active.remove(pivot);
        let d = a[p][p].clone();
        if d.is_positive() {
            sig += 1;
        } else {
            sig -= 1;
        }
        for &r in &active {
            if a[r][p].is_zero() {
                continue;
            }
            let f = &a[r][p] / &d;
            for &c in &active {
                let v = &f * &a[p][c];
                a[r][c] -= v;
            }
        }
        for &r in &active {
            a[r][p] = BigRational::zero();
            a[p][r] = BigRational::zero();
        }
    }
    sig
}

/// Signature from a nested chain of principal minors `1 = M0, M1, .., Mr`
/// with `r` the rank, `Mr != 0` and no two consecutive zero minors:
/// `sig = sum sign(M(i) * M(i+1))`.
pub fn signature_minor_chain(m: &SymMatrix) -> Result<i64, MatrixError> {
    let r = m.rank();
    let mut chain = Vec::new();
    let mut dead = HashSet::new();
    if !chain_search(m, r, &mut chain, 0u64, &BigInt::one(), &mut dead) {
        return Err(MatrixError::NoMinorChain);
    }
    let mut minors = vec![BigInt::one()];
    for k in 1..=chain.len() {
        minors.push(m.principal(&chain[..k]).determinant());
    }
    Ok(minors
        .windows(2)
        .map(|w| sign_of(&w[0]) * sign_of(&w[1]))
        .sum())
}

fn sign_of(x: &BigInt) -> i64 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn chain_search(
    m: &SymMatrix,
    r: usize,
    chain: &mut Vec<usize>,
    mask: u64,
    last: &BigInt,
    dead: &mut HashSet<(u64, bool)>,
) -> bool {
    if chain.len() == r {
        return !last.is_zero();
    }
    if dead.contains(&(mask, last.is_zero())) {
        return false;
    }
    // try extensions with nonzero minors first
    let mut candidates: Vec<(usize, BigInt)> = (0..m.dim())
        .filter(|&j| mask & (1 << j) == 0)
        .map(|j| {
            chain.push(j);
            let d = m.principal(chain).determinant();
            chain.pop();
            (j, d)
        })
        .collect();
    candidates.sort_by_key(|(_, d)| d.is_zero());
    for (j, d) in candidates {
        if last.is_zero() && d.is_zero() {
            continue;
        }
        chain.push(j);
        if chain_search(m, r, chain, mask | (1 << j), &d, dead) {
            return true;
        }
        chain.pop();
    }
    dead.insert((mask, last.is_zero()));
    false
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for IntMatrix {
    type Err = MatrixError;

    /// Rows of comma-separated integers, rows separated by `;`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IntMatrix::zeros(0));
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<BigInt>()
                            .map_err(|_| MatrixError::Parse(format!("bad entry {:?}", x.trim())))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(&rows)
    }
}

impl FromStr for SymMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SymMatrix::new(s.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[Vec<i64>]) -> SymMatrix {
        SymMatrix::from_i64_rows(rows).unwrap()
    }

    fn cofactor_det(m: &IntMatrix) -> BigInt {
        let n = m.dim();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let mut minor = IntMatrix::zeros(n - 1);
            for r in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    minor.set(r - 1, cc, m.get(r, c).clone());
                    cc += 1;
                }
            }
            let term = m.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn empty_matrix_conventions() {
        let e = SymMatrix::zeros(0);
        assert_eq!(e.determinant(), BigInt::one());
        assert_eq!(e.signature(), 0);
        assert_eq!(e.nullity(), 0);
        assert_eq!(e.signature_minor_chain().unwrap(), 0);
    }

    #[test]
    fn small_fixtures() {
        let m = sym(&[vec![-1, 1], vec![1, -3]]);
        assert_eq!(m.determinant(), BigInt::from(2));
        assert_eq!(m.signature(), -2);
        let z = sym(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(z.signature(), 0);
        assert_eq!(z.signature_minor_chain().unwrap(), 0);
        assert_eq!(sym(&[vec![0]]).nullity(), 1);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = IntMatrix::from_rows(&[
            vec![2i64, -1, 0, 3],
            vec![4, 0, 7, -2],
            vec![1, 1, 1, 1],
            vec![0, 5, -3, 2],
        ])
        .unwrap();
        assert_eq!(m.determinant(), cofactor_det(&m));
    }

    #[test]
    fn congruence_rejects_non_unimodular() {
        let m = sym(&[vec![1, 0], vec![0, 1]]);
        let p = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 1]]).unwrap();
        assert!(matches!(m.congruent(&p), Err(MatrixError::NotUnimodular(_))));
    }

    #[test]
    fn slide_on_two_by_two() {
        let m = sym(&[vec![-1, 1], vec![1, -3]]);
        let s = m.slide(0, 1, 1).unwrap();
        assert_eq!(s, sym(&[vec![-2, -2], vec![-2, -3]]));
    }

    #[test]
    fn text_round_trip() {
        let m: SymMatrix = "0,1,0;1,2,-3;0,-3,5".parse().unwrap();
        assert_eq!(m.to_string(), "0,1,0;1,2,-3;0,-3,5");
        assert!(matches!("1,2;3,4".parse::<SymMatrix>(), Err(MatrixError::NotSymmetric(0, 1))));
        assert!("1,2;3".parse::<IntMatrix>().is_err());
    }
}
