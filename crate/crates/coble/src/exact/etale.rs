//! Quotient-ring arithmetic: the étale algebra `Q[T]/(g)` for a monic
//! squarefree modulus `g`, with traces computed from multiplication matrices
//! in the power basis.

use num::{One, Zero};

use super::poly::{poly_gcd, UniPoly};
use super::rational::Rational;
use super::ExactError;

/// An element of `Q[T]/(g)`: the residue is reduced modulo the modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleElement {
    modulus: UniPoly,
    residue: UniPoly,
}

impl EtaleElement {
    pub fn new(modulus: UniPoly, residue: UniPoly) -> Self {
        assert!(modulus.is_monic(), "étale modulus must be monic");
        let residue = residue.rem(&modulus);
        EtaleElement { modulus, residue }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn residue(&self) -> &UniPoly {
        &self.residue
    }
}

/// The algebra `A = Q[T]/(g)` itself; operations act on reduced residues.
///
/// Elements handled through the algebra are bare [`UniPoly`] residues; this
/// keeps the inner loops of the descent machinery free of repeated modulus
/// clones. [`EtaleElement`] packages (modulus, residue) for the public
/// surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleAlgebra {
    modulus: UniPoly,
}

impl EtaleAlgebra {
    pub fn new(modulus: UniPoly) -> Self {
        assert!(modulus.is_monic(), "étale modulus must be monic");
        assert!(modulus.degree().unwrap_or(0) >= 1, "modulus must have degree >= 1");
        EtaleAlgebra { modulus }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    /// Dimension of the algebra over the rationals.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn reduce(&self, p: &UniPoly) -> UniPoly {
        p.rem(&self.modulus)
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.mul(b).rem(&self.modulus)
    }

    /// Multiplicative inverse, when the residue is a unit.
    pub fn inv(&self, a: &UniPoly) -> Result<UniPoly, ExactError> {
        // extended Euclid on (modulus, a)
        let (mut r0, mut r1) = (self.modulus.clone(), self.reduce(a));
        let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return Err(ExactError::Incompatible(format!(
                "residue {a} is not a unit modulo {}",
                self.modulus
            )));
        }
        let lead = r0.coeff(0);
        Ok(self.reduce(&s0.scale(&(Rational::one() / lead))))
    }

    /// Applies the algebra endomorphism `T -> image` to a residue.
    pub fn apply_map(&self, image: &UniPoly, a: &UniPoly) -> UniPoly {
        a.compose_mod(image, &self.modulus)
    }

    /// Trace of the multiplication-by-`a` endomorphism in the power basis.
    pub fn trace(&self, a: &UniPoly) -> Rational {
        let d = self.degree();
        let a = self.reduce(a);
        let mut tr = Rational::zero();
        let mut col = UniPoly::one();
        for i in 0..d {
            let image = self.mul(&a, &col);
            tr += image.coeff(i);
            col = self.mul(&col, &UniPoly::var());
        }
        tr
    }

    /// The traces of `1, T, T^2, ..., T^(d-1)`.
    pub fn power_traces(&self) -> Vec<Rational> {
        let d = self.degree();
        let mut out = Vec::with_capacity(d);
        let mut pw = UniPoly::one();
        for _ in 0..d {
            out.push(self.trace(&pw));
            pw = self.mul(&pw, &UniPoly::var());
        }
        out
    }
}

/// Trace of an étale element over the rationals.
///
/// Fails with [`ExactError::DegenerateAlgebra`] when the modulus has a
/// repeated factor (the quotient is then not étale and the trace form is
/// degenerate).
pub fn etale_trace(x: &EtaleElement) -> Result<Rational, ExactError> {
    let g = x.modulus();
    if poly_gcd(g, &g.derivative()).degree() != Some(0) {
        return Err(ExactError::DegenerateAlgebra(g.to_string()));
    }
    Ok(EtaleAlgebra::new(g.clone()).trace(x.residue()))
}

#[cfg(test)]
mod tests {
    use super::super::rational::rat_i64;
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64(coeffs)
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        let x = EtaleElement::new(p(&[-2, 0, 0, 0, 0, 1]), UniPoly::one());
        assert_eq!(etale_trace(&x).unwrap(), rat_i64(5));
    }

    #[test]
    fn trace_of_generator_mod_quadratic() {
        // multiplication by T on Q[T]/(T^2 - 3) has matrix [[0,3],[1,0]]
        let x = EtaleElement::new(p(&[-3, 0, 1]), UniPoly::var());
        assert_eq!(etale_trace(&x).unwrap(), rat_i64(0));
    }

    #[test]
    fn trace_of_generator_is_first_power_sum() {
        // companion matrix of T^5 - s1 T^4 + ... has trace s1
        let g = p(&[-120, 274, -225, 85, -15, 1]); // (T-1)...(T-5)
        let x = EtaleElement::new(g, UniPoly::var());
        assert_eq!(etale_trace(&x).unwrap(), rat_i64(15));
    }

    #[test]
    fn degenerate_modulus_rejected() {
        let x = EtaleElement::new(p(&[0, 0, 0, 1, -2, 1]), UniPoly::var());
        assert!(matches!(etale_trace(&x), Err(ExactError::DegenerateAlgebra(_))));
    }

    #[test]
    fn trace_is_power_sum_for_split_modulus() {
        // roots 1..5: trace(T^k) = 1^k + ... + 5^k
        let alg = EtaleAlgebra::new(p(&[-120, 274, -225, 85, -15, 1]));
        let traces = alg.power_traces();
        let sums: Vec<i64> = (0..5)
            .map(|k| (1..=5i64).map(|a| a.pow(k as u32)).sum())
            .collect();
        for (t, s) in traces.iter().zip(&sums) {
            assert_eq!(t, &rat_i64(*s));
        }
    }

    #[test]
    fn trace_is_linear() {
        let g = p(&[-2, 0, 0, 0, 0, 1]);
        let alg = EtaleAlgebra::new(g);
        let a = p(&[1, 2, 0, 4]);
        let b = p(&[0, -3, 1]);
        let lhs = alg.trace(&a.scale(&rat_i64(7)).add(&b.scale(&rat_i64(-2))));
        let rhs = rat_i64(7) * alg.trace(&a) + rat_i64(-2) * alg.trace(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_round_trip() {
        let alg = EtaleAlgebra::new(p(&[-2, 0, 1]));
        let a = p(&[1, 1]); // 1 + sqrt2
        let inv = alg.inv(&a).unwrap();
        assert_eq!(alg.mul(&a, &inv), UniPoly::one());
        // T is a unit mod T^2 - 2, and zero is not
        assert!(alg.inv(&UniPoly::zero()).is_err());
    }

    #[test]
    fn automorphism_application() {
        // sigma: T -> -T on Q[T]/(T^2-2) fixes rationals, negates T
        let alg = EtaleAlgebra::new(p(&[-2, 0, 1]));
        let sigma = p(&[0, -1]);
        assert_eq!(alg.apply_map(&sigma, &p(&[3, 4])), p(&[3, -4]));
        let f = alg.modulus().clone();
        assert!(f.compose_mod(&sigma, &f).is_zero());
    }
}
