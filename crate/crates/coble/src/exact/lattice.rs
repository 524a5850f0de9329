//! Integer lattices and exact LLL reduction.
//!
//! The inner product is either the standard dot product or a caller-supplied
//! symmetric Gram matrix. A Gram matrix arising from a Minkowski embedding is
//! typically a fixed-precision rational approximation of the real form; that
//! approximation only steers which reduced basis is preferred — the output is
//! always an exact unimodular transformation of the input basis.

use num::bigint::BigInt;
use num::{One, Zero};

use super::matrix::QMatrix;
use super::rational::Rational;
use super::ExactError;

/// A full-rank list of independent integer vectors with an optional quadratic
/// form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    basis: Vec<Vec<BigInt>>,
    gram: Option<QMatrix>,
}

impl IntLattice {
    pub fn new(basis: Vec<Vec<BigInt>>, gram: Option<QMatrix>) -> Self {
        assert!(!basis.is_empty(), "empty lattice basis");
        let dim = basis[0].len();
        assert!(basis.iter().all(|v| v.len() == dim), "ragged basis");
        if let Some(g) = &gram {
            assert_eq!(g.rows(), dim);
            assert_eq!(g.cols(), dim);
        }
        IntLattice { basis, gram }
    }

    pub fn from_i64(basis: &[&[i64]]) -> Self {
        IntLattice::new(
            basis
                .iter()
                .map(|v| v.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
            None,
        )
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn gram(&self) -> Option<&QMatrix> {
        self.gram.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.basis[0].len()
    }

    /// Inner product of two integer vectors under the lattice's form.
    pub fn inner(&self, u: &[BigInt], v: &[BigInt]) -> Rational {
        self.inner_q(&int_to_q(u), &int_to_q(v))
    }

    pub fn norm(&self, u: &[BigInt]) -> Rational {
        self.inner(u, u)
    }

    fn inner_q(&self, u: &[Rational], v: &[Rational]) -> Rational {
        match &self.gram {
            None => {
                let mut acc = Rational::zero();
                for (a, b) in u.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            }
            Some(g) => {
                let mut acc = Rational::zero();
                for (i, a) in u.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            acc += a * g.at(i, j) * c;
                        }
                    }
                }
                acc
            }
        }
    }
}

struct Gso {
    /// `mu[i][j]` for `j < i`.
    mu: Vec<Vec<Rational>>,
    /// Squared norms of the orthogonalized vectors.
    star_norm: Vec<Rational>,
}

fn gso(lat: &IntLattice, b: &[Vec<BigInt>]) -> Gso {
    let n = b.len();
    let dim = b[0].len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut star_norm = vec![Rational::zero(); n];
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..n {
        let bi = int_to_q(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            let m = lat.inner_q(&bi, &star[j]) / &star_norm[j];
            for k in 0..dim {
                let t = &m * &star[j][k];
                v[k] -= t;
            }
            mu[i][j] = m;
        }
        star_norm[i] = lat.inner_q(&v, &v);
        star.push(v);
    }
    Gso { mu, star_norm }
}

/// LLL reduction with Lovász parameter `delta` (requires `1/4 < delta < 1`).
///
/// Deterministic for a fixed input. Every step is a size reduction or a
/// neighbour swap, so the output basis spans exactly the input lattice.
pub fn lll_reduce(lattice: &IntLattice, delta: &Rational) -> Result<IntLattice, ExactError> {
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    assert!(
        delta > &quarter && delta < &Rational::one(),
        "delta must lie in (1/4, 1)"
    );
    let n = lattice.rank();
    if QMatrix::from_rows(lattice.basis.iter().map(|v| int_to_q(v)).collect()).rank() != n {
        return Err(ExactError::NotABasis);
    }
    let mut b = lattice.basis.clone();
    if n == 1 {
        return Ok(IntLattice::new(b, lattice.gram.clone()));
    }

    let mut g = gso(lattice, &b);
    let mut k = 1usize;
    loop {
        // size-reduce b_k; this leaves the orthogonalized vectors untouched,
        // so only row k of mu needs updating
        for j in (0..k).rev() {
            let r = round_to_int(&g.mu[k][j]);
            if r.is_zero() {
                continue;
            }
            let (head, tail) = b.split_at_mut(k);
            for (e, f) in tail[0].iter_mut().zip(&head[j]) {
                *e -= &r * f;
            }
            let rq = Rational::from_integer(r);
            for jj in 0..j {
                let t = &rq * &g.mu[j][jj];
                g.mu[k][jj] -= t;
            }
            g.mu[k][j] -= rq;
        }
        let lovasz =
            (delta - &g.mu[k][k - 1] * &g.mu[k][k - 1]) * &g.star_norm[k - 1];
        if g.star_norm[k] >= lovasz {
            k += 1;
            if k == n {
                return Ok(IntLattice::new(b, lattice.gram.clone()));
            }
        } else {
            b.swap(k, k - 1);
            g = gso(lattice, &b);
            k = k.max(2) - 1;
        }
    }
}

fn int_to_q(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|e| Rational::from_integer(e.clone())).collect()
}

/// Nearest integer, half-up.
fn round_to_int(x: &Rational) -> BigInt {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}
