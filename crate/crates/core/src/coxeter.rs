//! Coxeter transformations, Coxeter polynomials and periodicity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::Result;
use crate::exactalg::{factor_cyclotomic, CyclotomicFactorization, IntMatrix, IntPolynomial};
use crate::ktheory::KLattice;

/// `Φ = -C⁻¹ Cᵗ`, checked to be integral.
pub fn coxeter_matrix(lattice: &KLattice) -> Result<IntMatrix> {
    let c = lattice.cartan();
    c.solve_integral(&c.transpose().neg())
}

/// Characteristic polynomial of the Coxeter transformation.
pub fn coxeter_polynomial(lattice: &KLattice) -> Result<IntPolynomial> {
    Ok(coxeter_matrix(lattice)?.charpoly())
}

/// Minimal `p` with `Φ^p = I`, or `None` if `Φ` has infinite order.
///
/// A non-cyclotomic characteristic polynomial rules periodicity out. Otherwise
/// `L = lcm` of the cyclotomic orders is the only candidate multiple: `Φ` is
/// periodic iff `Φ^L = I`, and the period is the least divisor of `L` that
/// already gives the identity.
pub fn periodicity(phi: &IntMatrix) -> Option<u64> {
    let factors = factor_cyclotomic(&phi.charpoly()).ok()?;
    periodicity_with(phi, &factors)
}

fn periodicity_with(phi: &IntMatrix, factors: &CyclotomicFactorization) -> Option<u64> {
    if !factors.is_cyclotomic() {
        return None;
    }
    let l = factors.order_lcm()?;
    if !phi.pow(l).is_identity() {
        return None;
    }
    divisors(l).into_iter().find(|&d| phi.pow(d).is_identity())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let upper: Vec<u64> = ds.iter().rev().map(|d| n / d).filter(|&q| q * q != n).collect();
    ds.extend(upper);
    ds
}

/// Everything known about the Coxeter transformation of a lattice.
#[derive(Debug, Clone)]
pub struct CoxeterReport {
    pub matrix: IntMatrix,
    pub polynomial: IntPolynomial,
    pub factorization: CyclotomicFactorization,
    pub period: Option<u64>,
    pub spectral_radius_estimate: Option<f64>,
}

impl CoxeterReport {
    pub fn new(lattice: &KLattice, with_spectral_radius: bool) -> Result<Self> {
        let matrix = coxeter_matrix(lattice)?;
        let polynomial = matrix.charpoly();
        let factorization = factor_cyclotomic(&polynomial)?;
        let period = periodicity_with(&matrix, &factorization);
        let spectral_radius_estimate = if with_spectral_radius {
            real_spectral_radius(&polynomial)
        } else {
            None
        };
        Ok(CoxeterReport { matrix, polynomial, factorization, period, spectral_radius_estimate })
    }

    pub fn cyclotomic_part(&self) -> &BTreeMap<u64, u32> {
        &self.factorization.factors
    }

    pub fn non_cyclotomic_part(&self) -> &IntPolynomial {
        &self.factorization.remainder
    }
}

impl Serialize for CoxeterReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[u64; 2]> = self
            .factorization
            .factors
            .iter()
            .map(|(&n, &m)| [n, u64::from(m)])
            .collect();
        let mut st = s.serialize_struct("CoxeterReport", 7)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.serialize_field("polynomial", &self.polynomial)?;
        st.serialize_field("polynomial_text", &self.polynomial.to_string())?;
        st.serialize_field("cyclotomic_factors", &pairs)?;
        st.serialize_field("non_cyclotomic_part", &self.factorization.remainder)?;
        st.serialize_field("period", &self.period)?;
        st.serialize_field("spectral_radius_estimate", &self.spectral_radius_estimate)?;
        st.end()
    }
}

type QPoly = Vec<BigRational>;

fn qpoly(p: &IntPolynomial) -> QPoly {
    p.coeffs().iter().cloned().map(BigRational::from).collect()
}

fn qtrim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn qrem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db && !r.is_empty() {
        let q = r.last().unwrap() / lead;
        let shift = r.len() - 1 - db;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &q * c;
        }
        r.pop();
        r = qtrim(r);
    }
    r
}

fn qeval(p: &QPoly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

struct Sturm(Vec<QPoly>);

impl Sturm {
    fn new(p: &IntPolynomial) -> Self {
        let p0 = qpoly(p);
        let p1 = qpoly(&p.derivative());
        let mut chain = vec![p0, p1];
        while !chain.last().unwrap().is_empty() {
            let n = chain.len();
            let r: QPoly = qrem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
            chain.push(r);
        }
        chain.pop();
        Sturm(chain)
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let signs: Vec<bool> = self
            .0
            .iter()
            .map(|p| qeval(p, x))
            .filter(|v| !v.is_zero())
            .map(|v| v.is_positive())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_changes(lo).saturating_sub(self.sign_changes(hi))
    }
}

/// Largest positive real root of `p`, isolated by Sturm sequences and
/// bisected with exact rational endpoints.
fn largest_positive_root(p: &IntPolynomial) -> Option<f64> {
    let lead = BigRational::from(p.leading()?.abs());
    let bound = p.coeffs().iter().fold(BigRational::zero(), |m, c| {
        let v = BigRational::from(c.abs()) / &lead;
        if v > m { v } else { m }
    }) + BigRational::from_integer(BigInt::from(1));
    let sturm = Sturm::new(p);
    let zero = BigRational::zero();
    if sturm.count(&zero, &bound) == 0 {
        return None;
    }
    let (mut lo, mut hi) = (zero, bound);
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..64 {
        let mid = (&lo + &hi) / &two;
        if sturm.count(&mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi.to_f64()
}

/// Largest modulus among the real roots of `p`, `None` when `p` has no
/// real root. Uses exact arithmetic only; the answer is converted to a
/// float at the very end.
pub fn real_spectral_radius(p: &IntPolynomial) -> Option<f64> {
    if p.degree()? == 0 {
        return None;
    }
    let mirrored = IntPolynomial::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
            .collect(),
    );
    let pos = largest_positive_root(p);
    let neg = largest_positive_root(&mirrored);
    let zero_root = p.coeff(0).is_zero().then_some(0.0);
    [pos, neg, zero_root].into_iter().flatten().reduce(f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktheory::{build_lattice, Signature};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn genus_matrices() {
        for g in 0..7i64 {
            let l = build_lattice(&Signature::unweighted(g as u32));
            assert_eq!(coxeter_matrix(&l).unwrap(), m(&[&[1, 0], &[2 * (g - 1), 1]]));
            assert_eq!(coxeter_polynomial(&l).unwrap(), IntPolynomial::from_i64s(&[1, -2, 1]));
        }
    }

    #[test]
    fn single_weight_two() {
        let l = build_lattice(&"0;2".parse().unwrap());
        assert_eq!(coxeter_matrix(&l).unwrap(), m(&[&[1, 0, 0], &[-1, 1, 1], &[-1, 0, -1]]));
    }

    #[test]
    fn periodicity_examples() {
        // Rotation of order 6 in the plane.
        let r = m(&[&[1, -1], &[1, 0]]);
        assert_eq!(periodicity(&r), Some(6));
        // Unipotent Jordan block: cyclotomic but of infinite order.
        assert_eq!(periodicity(&m(&[&[1, 1], &[0, 1]])), None);
        // -I has period 2.
        assert_eq!(periodicity(&m(&[&[-1, 0], &[0, -1]])), Some(2));
        // Non-cyclotomic.
        assert_eq!(periodicity(&m(&[&[2, 1], &[1, 1]])), None);
        assert_eq!(periodicity(&IntMatrix::identity(3)), Some(1));
    }

    #[test]
    fn spectral_radius_of_golden_polynomial() {
        // x^2 - 3x + 1 has roots (3 ± √5)/2.
        let p = IntPolynomial::from_i64s(&[1, -3, 1]);
        let r = real_spectral_radius(&p).unwrap();
        assert!((r - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        // (x+3)(x-1): radius 3 comes from the negative root.
        let q = IntPolynomial::from_i64s(&[-3, 2, 1]);
        assert!((real_spectral_radius(&q).unwrap() - 3.0).abs() < 1e-12);
        // x^2 + 1 has no real roots.
        assert_eq!(real_spectral_radius(&IntPolynomial::from_i64s(&[1, 0, 1])), None);
        // Repeated root at 1.
        let s = IntPolynomial::from_i64s(&[1, -2, 1]);
        assert!((real_spectral_radius(&s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_for_weighted_line() {
        let l = build_lattice(&"0;2,3,7".parse().unwrap());
        let rep = CoxeterReport::new(&l, true).unwrap();
        assert_eq!(rep.polynomial.degree(), Some(11));
        assert!(rep.factorization.is_cyclotomic());
        assert_eq!(rep.factorization.reassemble(), rep.polynomial);
        // Unipotent part on <a, s0> prevents periodicity.
        assert_eq!(rep.period, None);
        assert!((rep.spectral_radius_estimate.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert_eq!(divisors(42), vec![1, 2, 3, 6, 7, 14, 21, 42]);
    }
}
