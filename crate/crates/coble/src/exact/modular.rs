//! Modular acceleration for large exact kernels.
//!
//! The sampled relation matrices later in the crate have a couple hundred
//! columns; running Bareiss on them directly produces determinant-sized
//! intermediate entries. Instead the kernel is computed modulo word-sized
//! primes, lifted by CRT, recovered by rational reconstruction and then
//! *verified exactly* against every input row. Ranks are certified the same
//! way: `rank mod p` bounds the rational rank from below, the verified
//! kernel bounds it from above, and the routine only returns when the two
//! meet.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use super::rational::Rational;

/// Deterministic list of 31-bit primes, largest first.
pub fn primes_31bit(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n: u64 = (1 << 31) - 1;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for n < 3.2e18
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Reduces a rational modulo `p`; `None` when the denominator vanishes mod p.
pub fn rational_mod_p(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor(&pb);
    let den = r.denom().mod_floor(&pb);
    let num: u64 = num.try_into().ok()?;
    let den: u64 = den.try_into().ok()?;
    Some(mul_mod(num, inv_mod(den, p)?, p))
}

/// In-place reduced row echelon form mod `p`; returns pivot columns.
pub fn rref_mod_p(rows: &mut Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<usize> {
    let mut piv = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = inv_mod(rows[rank][col], p).unwrap();
        for e in rows[rank].iter_mut() {
            *e = mul_mod(*e, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (e, pe) in row.iter_mut().zip(&pivot_row) {
                    *e = (*e + p - mul_mod(f, *pe, p)) % p;
                }
            }
        }
        piv.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    piv
}

/// Balanced rational reconstruction of `a mod m` with `|num|, den <= sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = a.mod_floor(m);
    let mut s0 = BigInt::zero();
    let mut s1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1.is_zero() {
        return None;
    }
    let (mut num, mut den) = (r1, s1);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    if den > bound || num.gcd(&den) != BigInt::one() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Exact rank, pivot columns and right-kernel basis of a dense rational
/// matrix, certified.
///
/// Returns `(pivot_columns, kernel)` where the kernel vectors have been
/// verified to annihilate every row exactly; the rank is the pivot count and
/// the pivot columns form the lexicographically first maximal independent
/// column set. `None` when the prime budget is exhausted without
/// certification (practically unreachable for matrices whose kernel has
/// moderate-height entries).
pub fn certified_rank_kernel(
    rows: &[Vec<Rational>],
    cols: usize,
) -> Option<(Vec<usize>, Vec<Vec<Rational>>)> {
    const MAX_PRIMES: usize = 24;
    let primes = primes_31bit(MAX_PRIMES);
    let mut best: Option<State> = None;

    for &p in &primes {
        let Some(mut mod_rows) = reduce_rows(rows, cols, p) else {
            continue;
        };
        let piv = rref_mod_p(&mut mod_rows, cols, p);
        match &mut best {
            Some(state) if piv.len() < state.pivots.len() => continue, // unlucky prime
            Some(state) if piv.len() > state.pivots.len() || piv != state.pivots => {
                *state = State::fresh(piv, &mod_rows, p, cols);
            }
            Some(state) => state.absorb(&mod_rows, p),
            None => best = Some(State::fresh(piv, &mod_rows, p, cols)),
        }
        let state = best.as_ref().unwrap();
        if let Some(kernel) = state.try_reconstruct(cols) {
            if kernel
                .iter()
                .all(|v| rows.iter().all(|row| dot_is_zero(row, v)))
                && state.pivots.len() + kernel.len() == cols
            {
                return Some((state.pivots.clone(), kernel));
            }
        }
    }
    None
}

struct State {
    pivots: Vec<usize>,
    /// CRT residues of the echelon rows restricted to free columns.
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
    free: Vec<usize>,
}

impl State {
    fn fresh(pivots: Vec<usize>, mod_rows: &[Vec<u64>], p: u64, cols: usize) -> State {
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let residues = mod_rows
            .iter()
            .map(|row| free.iter().map(|&c| BigInt::from(row[c])).collect())
            .collect();
        State {
            pivots,
            residues,
            modulus: BigInt::from(p),
            free,
        }
    }

    fn absorb(&mut self, mod_rows: &[Vec<u64>], p: u64) {
        let pb = BigInt::from(p);
        let new_modulus = &self.modulus * &pb;
        // CRT: x = a (mod m), x = b (mod p)
        let m_inv_p = {
            let m_mod_p: u64 = self.modulus.mod_floor(&pb).try_into().unwrap();
            inv_mod(m_mod_p, p).expect("moduli are distinct primes")
        };
        for (row, mrow) in self.residues.iter_mut().zip(mod_rows) {
            for (res, &c) in row.iter_mut().zip(&self.free) {
                let a = res.mod_floor(&self.modulus);
                let a_mod_p: u64 = a.mod_floor(&pb).try_into().unwrap();
                let diff = (mrow[c] + p - a_mod_p) % p;
                let t = mul_mod(diff, m_inv_p, p);
                *res = &a + &self.modulus * BigInt::from(t);
            }
        }
        self.modulus = new_modulus;
    }

    fn try_reconstruct(&self, cols: usize) -> Option<Vec<Vec<Rational>>> {
        let mut kernel = Vec::with_capacity(self.free.len());
        for (fi, &fc) in self.free.iter().enumerate() {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::one();
            for (r, &pc) in self.pivots.iter().enumerate() {
                let entry = rational_reconstruct(&self.residues[r][fi], &self.modulus)?;
                v[pc] = -entry;
            }
            kernel.push(v);
        }
        Some(kernel)
    }
}

fn reduce_rows(rows: &[Vec<Rational>], cols: usize, p: u64) -> Option<Vec<Vec<u64>>> {
    rows.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), cols);
            row.iter().map(|e| rational_mod_p(e, p)).collect()
        })
        .collect()
}

fn dot_is_zero(a: &[Rational], b: &[Rational]) -> bool {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc.is_zero()
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat_frac, rat_i64};
    use super::*;

    #[test]
    fn prime_list_is_prime_and_descending() {
        let ps = primes_31bit(6);
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime_u64(p)));
    }

    #[test]
    fn reconstruction_round_trip() {
        let p = BigInt::from(2147483647u64);
        let m = &p * &p;
        for (n, d) in [(22, 7), (-355, 113), (0, 1), (41, 16)] {
            let r = rat_frac(n, d);
            let residue = (r.numer() * super::mod_inverse_bigint(r.denom(), &m)).mod_floor(&m);
            assert_eq!(rational_reconstruct(&residue, &m).unwrap(), r);
        }
    }

    #[test]
    fn certified_kernel_matches_exact() {
        let rows = vec![
            vec![rat_i64(1), rat_i64(2), rat_i64(3), rat_i64(4)],
            vec![rat_i64(2), rat_i64(4), rat_i64(6), rat_i64(8)],
            vec![rat_frac(1, 2), rat_i64(0), rat_i64(1), rat_i64(0)],
        ];
        let (pivots, kernel) = certified_rank_kernel(&rows, 4).unwrap();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(kernel.len(), 2);
        let exact = super::super::QMatrix::from_rows(rows).kernel_basis();
        assert_eq!(kernel, exact);
    }
}

#[cfg(test)]
fn mod_inverse_bigint(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}
