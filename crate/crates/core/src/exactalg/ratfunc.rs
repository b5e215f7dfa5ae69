use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Quotient of two integer polynomials, always held in canonical form.
///
/// Canonical means: the polynomial gcd of numerator and denominator is 1,
/// the joint integer content of both is 1, and the denominator has a
/// positive leading coefficient. Two rational functions are equal exactly
/// when their canonical forms agree coefficientwise, so `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(Self::canonicalize(num, den))
    }

    fn canonicalize(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: IntPolynomial::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.checked_div(&g).expect("gcd divides numerator"),
                den.checked_div(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RationalFunction { num, den }
    }

    pub fn from_polynomial(p: IntPolynomial) -> Self {
        Self::canonicalize(p, IntPolynomial::one())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying polynomial when the denominator is exactly 1.
    pub fn as_polynomial(&self) -> Option<&IntPolynomial> {
        (self.den == IntPolynomial::one()).then_some(&self.num)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        Ok(Self::canonicalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Power-series coefficients `0..=n` at the origin, as exact rationals.
    pub fn series(&self, n: usize) -> Result<Vec<BigRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let d0 = BigRational::from(d0);
        let den: Vec<BigRational> = self.den.coeffs().iter().cloned().map(BigRational::from).collect();
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from(self.num.coeff(k));
            for j in 1..den.len().min(k + 1) {
                acc -= &den[j] * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Power-series coefficients `0..=n`, failing if any is not an integer.
    pub fn integer_series(&self, n: usize) -> Result<Vec<BigInt>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        if d0.abs().is_one() {
            // Integral recursion, no rationals needed.
            let den = self.den.coeffs();
            let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut acc = self.num.coeff(k);
                for j in 1..den.len().min(k + 1) {
                    acc -= &den[j] * &out[k - j];
                }
                out.push(acc * &d0);
            }
            return Ok(out);
        }
        self.series(n)?
            .into_iter()
            .enumerate()
            .map(|(index, q)| {
                if q.is_integer() {
                    Ok(q.to_integer())
                } else {
                    Err(Error::NonIntegralSeries { index, value: q.to_string() })
                }
            })
            .collect()
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den == IntPolynomial::one() {
            return self.num.display_in(var);
        }
        format!("({})/({})", self.num.display_in(var), self.den.display_in(var))
    }
}

impl From<IntPolynomial> for RationalFunction {
    fn from(p: IntPolynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalFunction", 2)?;
        st.serialize_field("numerator", &self.num)?;
        st.serialize_field("denominator", &self.den)?;
        st.end()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonicalize(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonicalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonicalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        // (1 - x^2) / (1 - x) = 1 + x
        let f = rf(&[1, 0, -1], &[1, -1]);
        assert_eq!(f.as_polynomial(), Some(&p(&[1, 1])));
        // 2x / (4 - 4x) = x / (2 - 2x) -> denominator leading coefficient positive
        let g = rf(&[0, 2], &[4, -4]);
        assert_eq!(g.numerator(), &p(&[0, -1]));
        assert_eq!(g.denominator(), &p(&[-2, 2]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(p(&[1]), IntPolynomial::zero()).is_err());
    }

    #[test]
    fn zero_numerator_normalizes_denominator() {
        let z = rf(&[], &[3, 5, 7]);
        assert_eq!(z.denominator(), &IntPolynomial::one());
    }

    #[test]
    fn geometric_series() {
        assert_eq!(rf(&[1], &[1, -1]).integer_series(3).unwrap(), ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn series_of_genus_two_poincare() {
        // (1+x^3)/(1-x)^2
        let f = rf(&[1, 0, 0, 1], &[1, -2, 1]);
        assert_eq!(f.integer_series(6).unwrap(), ints(&[1, 2, 3, 5, 7, 9, 11]));
        // (1-t^6)/((1-t^3)(1-t)^2) is the same function
        let den = p(&[1, 0, 0, -1]) * p(&[1, -2, 1]);
        let h = RationalFunction::new(p(&[1, 0, 0, 0, 0, 0, -1]), den).unwrap();
        assert_eq!(h, f);
        assert_eq!(h.integer_series(6).unwrap(), ints(&[1, 2, 3, 5, 7, 9, 11]));
    }

    #[test]
    fn pole_at_origin() {
        assert_eq!(rf(&[1], &[0, 1]).series(3), Err(Error::PoleAtOrigin));
    }

    #[test]
    fn non_integral_series_reported() {
        let f = rf(&[1], &[2, -1]);
        let s = f.series(2).unwrap();
        assert_eq!(s[1], BigRational::new(1.into(), 4.into()));
        assert!(matches!(
            f.integer_series(2),
            Err(Error::NonIntegralSeries { index: 0, .. })
        ));
    }

    #[test]
    fn arithmetic() {
        let a = rf(&[1], &[1, -1]);
        let b = rf(&[1], &[1, 1]);
        // 1/(1-x) + 1/(1+x) = 2/(1-x^2)
        assert_eq!(&a + &b, rf(&[2], &[1, 0, -1]));
        assert_eq!(&a * &b, rf(&[1], &[1, 0, -1]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.checked_div(&b).unwrap(), rf(&[1, 1], &[1, -1]));
    }
}
