//! Dense exact rational matrices.
//!
//! Row reduction runs fraction-free (Bareiss) on integer-cleared rows, with a
//! final rational back-substitution to reduced echelon form; this bounds
//! intermediate entry growth on the midsize systems produced elsewhere in the
//! crate (6×10 interpolation, 55×20 expansion, the descent systems).

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use super::rational::Rational;

/// A dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        QMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        QMatrix::new(
            rows,
            cols,
            entries
                .iter()
                .map(|&e| Rational::from_integer(BigInt::from(e)))
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        // integer-clear each row, then fraction-free forward elimination
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| clear_row(self.row(r)))
            .collect();
        let rows = self.rows;
        let cols = self.cols;
        let mut piv_cols = Vec::new();
        let mut prev = BigInt::one();
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let num = &m[r][c] * &m[rank][col] - &m[r][col] * &m[rank][c];
                    m[r][c] = &num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            piv_cols.push(col);
            rank += 1;
        }
        // rational back-substitution to RREF
        let mut q: Vec<Vec<Rational>> = m
            .into_iter()
            .take(rank)
            .map(|row| row.into_iter().map(Rational::from_integer).collect())
            .collect();
        for r in (0..rank).rev() {
            let pc = piv_cols[r];
            let inv = Rational::one() / q[r][pc].clone();
            for c in pc..cols {
                let v = std::mem::replace(&mut q[r][c], Rational::zero());
                q[r][c] = v * &inv;
            }
            for rr in 0..r {
                let f = q[rr][pc].clone();
                if f.is_zero() {
                    continue;
                }
                for c in pc..cols {
                    let t = &f * &q[r][c];
                    q[rr][c] -= t;
                }
            }
        }
        (QMatrix::from_rows_padded(q, rank, cols), piv_cols)
    }

    fn from_rows_padded(rows: Vec<Vec<Rational>>, r: usize, c: usize) -> QMatrix {
        debug_assert_eq!(rows.len(), r);
        QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel; empty when the kernel is trivial.
    ///
    /// Each basis vector carries a `1` in one non-pivot column and zeros in
    /// the other non-pivot columns, which makes the basis canonical for a
    /// fixed input.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, piv) = self.rref();
        let mut out = Vec::new();
        let piv_set: std::collections::HashSet<usize> = piv.iter().copied().collect();
        for free in 0..self.cols {
            if piv_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -rref.at(r, free);
            }
            out.push(v);
        }
        out
    }

    /// Solves `self * x = rhs`; `None` when inconsistent. Free variables are
    /// set to zero.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug_rows: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let aug = QMatrix::from_rows(std::mem::take(&mut aug_rows));
        let (rref, piv) = aug.rref();
        if piv.contains(&self.cols) {
            return None; // pivot in the rhs column
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &pc) in piv.iter().enumerate() {
            x[pc] = rref.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant of a square matrix (Bareiss).
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut scale = Rational::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let (int_row, row_scale) = clear_row_tracked(self.row(r));
            scale *= row_scale;
            m.push(int_row);
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Rational::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Rational::from_integer(m[n - 1][n - 1].clone()) * Rational::from_integer(sign.into())
            / scale
    }
}

/// Clears a rational row to integers (multiplies by the lcm of denominators).
fn clear_row(row: &[Rational]) -> Vec<BigInt> {
    clear_row_tracked(row).0
}

fn clear_row_tracked(row: &[Rational]) -> (Vec<BigInt>, Rational) {
    let mut lcm = BigInt::one();
    for e in row {
        if !e.is_zero() {
            lcm = num::integer::lcm(lcm, e.denom().clone());
        }
    }
    let ints = row
        .iter()
        .map(|e| e.numer() * (&lcm / e.denom()))
        .collect();
    (ints, Rational::from_integer(lcm))
}

/// Scales a rational vector to coprime integers with the first nonzero entry
/// positive; returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let (ints, _) = clear_row_tracked(v);
    let mut content = BigInt::zero();
    for e in &ints {
        content = num::integer::gcd(content, e.clone());
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|e| e / &content).collect();
    if out.iter().find(|e| !e.is_zero()).is_some_and(Signed::is_negative) {
        for e in &mut out {
            *e = -std::mem::take(e);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat_frac, rat_i64};
    use super::*;

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = QMatrix::from_i64(1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![rat_i64(-1), rat_i64(1)]);
    }

    #[test]
    fn kernel_of_trace_row() {
        // trace row of T^5 - 1: (5, 0, 0, 0, 0) -> 4-dim kernel on coords 1..4
        let m = QMatrix::from_i64(1, 5, &[5, 0, 0, 0, 0]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            let mut expect = vec![rat_i64(0); 5];
            expect[i + 1] = rat_i64(1);
            assert_eq!(v, &expect);
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = QMatrix::from_i64(3, 5, &[1, 2, 3, 4, 5, 2, 4, 6, 8, 10, 1, 1, 1, 1, 1]);
        assert_eq!(m.rank(), 2);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn solve_and_det() {
        let m = QMatrix::from_i64(3, 3, &[2, 1, 1, 1, 3, 2, 1, 0, 0]);
        assert_eq!(m.det(), rat_i64(-1));
        let x = m.solve(&[rat_i64(4), rat_i64(5), rat_i64(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat_i64(4), rat_i64(5), rat_i64(6)]);
        let inconsistent = QMatrix::from_i64(2, 1, &[1, 1]);
        assert!(inconsistent.solve(&[rat_i64(1), rat_i64(2)]).is_none());
    }

    #[test]
    fn det_with_rational_entries() {
        let m = QMatrix::new(
            2,
            2,
            vec![rat_frac(1, 2), rat_frac(1, 3), rat_frac(1, 4), rat_frac(1, 5)],
        );
        assert_eq!(m.det(), rat_frac(1, 60));
    }

    #[test]
    fn primitive_vector_normalization() {
        let v = vec![rat_frac(-2, 3), rat_i64(0), rat_frac(4, 9)];
        let p = primitive_integer_vector(&v).unwrap();
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(0), BigInt::from(-2)]);
        assert!(primitive_integer_vector(&[rat_i64(0)]).is_none());
    }
}
