//! Numerical invariants of the fuchsian singularity attached to a signature.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::coxeter::{coxeter_matrix, periodicity};
use crate::error::{Error, Result};
use crate::exactalg::{v_poly, IntPolynomial, RationalFunction};
use crate::ktheory::{build_lattice, KLattice, Signature};

/// Graded complete intersection `k[x_1..x_n]/(f_1..f_r)` described by its
/// generator degrees `d_j` and relation degrees `h_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedCI {
    generator_degrees: Vec<u32>,
    relation_degrees: Vec<u32>,
}

impl GradedCI {
    pub fn new(generator_degrees: Vec<u32>, relation_degrees: Vec<u32>) -> Result<Self> {
        if generator_degrees.is_empty() {
            return Err(Error::Domain("a complete intersection needs at least one generator".into()));
        }
        if generator_degrees.iter().chain(&relation_degrees).any(|&d| d == 0) {
            return Err(Error::Domain("degrees must be positive".into()));
        }
        if relation_degrees.len() > generator_degrees.len() {
            return Err(Error::Domain(format!(
                "{} relations on {} generators",
                relation_degrees.len(),
                generator_degrees.len()
            )));
        }
        Ok(GradedCI { generator_degrees, relation_degrees })
    }

    /// Three generators and one relation of degree `d_1 + d_2 + d_3 + 1`,
    /// generators sorted ascending.
    pub fn hypersurface(mut degrees: [u32; 3]) -> Self {
        degrees.sort_unstable();
        let h = degrees.iter().sum::<u32>() + 1;
        GradedCI { generator_degrees: degrees.to_vec(), relation_degrees: vec![h] }
    }

    pub fn generator_degrees(&self) -> &[u32] {
        &self.generator_degrees
    }

    pub fn relation_degrees(&self) -> &[u32] {
        &self.relation_degrees
    }

    /// Krull dimension `#generators - #relations`.
    pub fn krull_dimension(&self) -> usize {
        self.generator_degrees.len() - self.relation_degrees.len()
    }
}

/// `d1,d2,...|h1,h2,...`; the relation part may be empty or absent.
impl FromStr for GradedCI {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (gens, rels) = s.split_once('|').unwrap_or((s, ""));
        let list = |part: &str| -> Result<Vec<u32>> {
            let part = part.trim();
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|d| {
                    d.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad degree {d:?} in {s:?}")))
                })
                .collect()
        };
        let (gens, rels) = (list(gens)?, list(rels)?);
        GradedCI::new(gens, rels).map_err(|e| match e {
            Error::Domain(m) => Error::Parse(format!("{m} in {s:?}")),
            other => other,
        })
    }
}

impl fmt::Display for GradedCI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.generator_degrees), join(&self.relation_degrees))
    }
}

/// `Σ d_j - Σ h_i`.
pub fn gorenstein_parameter(ci: &GradedCI) -> i64 {
    let sum = |v: &[u32]| v.iter().map(|&d| i64::from(d)).sum::<i64>();
    sum(&ci.generator_degrees) - sum(&ci.relation_degrees)
}

/// `∏ (1 - t^{h_i}) / ∏ (1 - t^{d_j})` in canonical form.
pub fn hilbert_series(ci: &GradedCI) -> RationalFunction {
    let prod = |v: &[u32]| -> IntPolynomial {
        v.iter().map(|&d| IntPolynomial::one_minus_power(d as usize)).product()
    };
    RationalFunction::new(prod(&ci.relation_degrees), prod(&ci.generator_degrees))
        .expect("product of 1 - t^d is nonzero")
}

/// `Σ_i v_{a_i - 1} / v_{a_i}`.
fn weight_correction(sig: &Signature) -> RationalFunction {
    sig.weights().iter().fold(RationalFunction::from_polynomial(IntPolynomial::zero()), |acc, &a| {
        let a = i64::from(a);
        let q = RationalFunction::new(v_poly(a - 1).unwrap(), v_poly(a).unwrap()).unwrap();
        acc + q
    })
}

fn one_minus_x_squared() -> IntPolynomial {
    IntPolynomial::from_i64s(&[1, -2, 1])
}

/// Poincaré series of the orbit algebra by the Wagreich formula
/// `[1+(g-2)x+(g-2)x²+x³]/(1-x)² + x²/(1-x)² Σ v_{a-1}/v_a`.
pub fn poincare_series(sig: &Signature) -> Result<RationalFunction> {
    sig.require_fuchsian()?;
    let g = i64::from(sig.genus());
    let head = RationalFunction::new(IntPolynomial::from_i64s(&[1, g - 2, g - 2, 1]), one_minus_x_squared())?;
    let tail = RationalFunction::new(IntPolynomial::monomial(BigInt::from(1), 2), one_minus_x_squared())?
        * weight_correction(sig);
    Ok(head + tail)
}

/// `⟨a, τ^i a⟩` for `i = 0..=n`, with `a` the class of the structure sheaf.
pub fn ktheoretic_poincare(sig: &Signature, n: usize) -> Vec<BigInt> {
    let lattice = build_lattice(sig);
    let tau = lattice.tau_matrix().expect("curve lattice");
    let cartan = lattice.cartan();
    let a = lattice.structure_sheaf().coords().to_vec();
    let mut v = a.clone();
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        out.push(cartan.bilinear(&a, &v));
        v = tau.mul_vec(&v);
    }
    out
}

/// Cartan matrix of the curve bordered by the exceptional class `e`.
pub fn extended_lattice(sig: &Signature) -> KLattice {
    build_lattice(sig).one_point_extension().expect("curve lattice extends")
}

/// Coxeter polynomial `(x-1)² ∏ v_{a_i}` of the curve.
pub fn curve_coxeter_polynomial(sig: &Signature) -> IntPolynomial {
    sig.weights()
        .iter()
        .fold(one_minus_x_squared(), |acc, &a| acc * v_poly(i64::from(a)).unwrap())
}

/// `p_R · φ_X` as a canonical rational function.
pub fn poincare_times_curve_polynomial(sig: &Signature) -> Result<RationalFunction> {
    Ok(poincare_series(sig)? * RationalFunction::from_polynomial(curve_coxeter_polynomial(sig)))
}

/// Coxeter polynomial of the singularity category: the characteristic
/// polynomial of the extended Coxeter matrix, checked against `p_R · φ_X`.
pub fn coxeter_polynomial_t(sig: &Signature) -> Result<IntPolynomial> {
    sig.require_fuchsian()?;
    let charpoly = coxeter_matrix(&extended_lattice(sig))?.charpoly();
    let product = poincare_times_curve_polynomial(sig)?;
    match product.as_polynomial() {
        Some(p) if *p == charpoly => Ok(charpoly),
        _ => Err(Error::Internal(format!(
            "charpoly {charpoly} differs from p_R*phi_X = {product} for {sig}"
        ))),
    }
}

/// The alternative bracketed expression
/// `∏ v_{a_i} [1+(g-2)x+(g-1)x²+x³ + Σ v_{a-1}/v_a]`.
pub fn bracket_form(sig: &Signature) -> RationalFunction {
    let g = i64::from(sig.genus());
    let v: IntPolynomial = sig.weights().iter().map(|&a| v_poly(i64::from(a)).unwrap()).product();
    let inner = RationalFunction::from_polynomial(IntPolynomial::from_i64s(&[1, g - 2, g - 1, 1]))
        + weight_correction(sig);
    RationalFunction::from_polynomial(v) * inner
}

/// Comparison of the three candidate expressions for `φ_T`.
#[derive(Debug, Clone, Serialize)]
pub struct PhiTConsistency {
    pub charpoly: IntPolynomial,
    pub product: RationalFunction,
    pub bracket: RationalFunction,
    pub product_agrees: bool,
    pub bracket_agrees: bool,
}

pub fn phi_t_consistency(sig: &Signature) -> Result<PhiTConsistency> {
    sig.require_fuchsian()?;
    let charpoly = coxeter_matrix(&extended_lattice(sig))?.charpoly();
    let product = poincare_times_curve_polynomial(sig)?;
    let bracket = bracket_form(sig);
    let as_rf = RationalFunction::from_polynomial(charpoly.clone());
    Ok(PhiTConsistency {
        product_agrees: product == as_rf,
        bracket_agrees: bracket == as_rf,
        charpoly,
        product,
        bracket,
    })
}

/// Hilbert series and Gorenstein parameter agree with those of the
/// fuchsian singularity of `sig`. This is a numerical test only; it does
/// not certify a ring isomorphism.
pub fn is_fuchsian_match(ci: &GradedCI, sig: &Signature) -> Result<bool> {
    let p = poincare_series(sig)?;
    Ok(gorenstein_parameter(ci) == -1 && hilbert_series(ci) == p)
}

/// Outcome of [`fractional_cy_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FractionalCy {
    pub holds: bool,
    pub period: Option<u64>,
}

/// Whether the extended Coxeter transformation satisfies `Φ_T^h = I`, i.e.
/// it is periodic with period dividing `h`. The exact period is reported
/// as well.
pub fn fractional_cy_check(sig: &Signature, h: u64) -> Result<FractionalCy> {
    sig.require_fuchsian()?;
    if h == 0 {
        return Err(Error::Domain("period bound must be positive".into()));
    }
    let period = periodicity(&coxeter_matrix(&extended_lattice(sig))?);
    Ok(FractionalCy { holds: period.is_some_and(|p| h.is_multiple_of(p)), period })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntMatrix;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn ci(s: &str) -> GradedCI {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ci_parsing() {
        let c = ci("21,14,6|42");
        assert_eq!(c.generator_degrees(), &[21, 14, 6]);
        assert_eq!(c.relation_degrees(), &[42]);
        assert_eq!(c.to_string(), "21,14,6|42");
        assert_eq!(ci("3").relation_degrees(), &[] as &[u32]);
        assert_eq!(ci("3|").krull_dimension(), 1);
        for bad in ["", "|4", "1,a|2", "0,1|2", "1|2,3", "1,2|0"] {
            assert!(bad.parse::<GradedCI>().unwrap_err().is_parse(), "{bad}");
        }
    }

    #[test]
    fn gorenstein_parameters() {
        assert_eq!(gorenstein_parameter(&ci("21,14,6|42")), -1);
        assert_eq!(gorenstein_parameter(&ci("15,10,4|30")), -1);
        assert_eq!(gorenstein_parameter(&ci("2,5,7|")), 14);
    }

    #[test]
    fn genus_two_poincare() {
        let p = poincare_series(&sig("2;")).unwrap();
        assert_eq!(p.numerator(), &IntPolynomial::from_i64s(&[1, 0, 0, 1]));
        assert_eq!(p.denominator(), &one_minus_x_squared());
        assert_eq!(p, hilbert_series(&ci("3,1,1|6")));
    }

    #[test]
    fn genus_three_poincare() {
        let p = poincare_series(&sig("3;")).unwrap();
        assert_eq!(p.numerator(), &IntPolynomial::from_i64s(&[1, 1, 1, 1]));
        assert_eq!(p, hilbert_series(&ci("1,1,1|4")));
    }

    #[test]
    fn triangle_poincare_prefix() {
        let p = poincare_series(&sig("0;2,3,7")).unwrap();
        // Generators of degrees 6, 14, 21: below 15 only 1, z, z², y survive.
        assert_eq!(p.integer_series(14).unwrap(), ints(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1]));
        assert_eq!(p.integer_series(60).unwrap(), hilbert_series(&ci("21,14,6|42")).integer_series(60).unwrap());
    }

    #[test]
    fn single_generator_hilbert() {
        let h = hilbert_series(&ci("5"));
        let want = RationalFunction::new(IntPolynomial::one(), IntPolynomial::one_minus_power(5)).unwrap();
        assert_eq!(h, want);
        assert_eq!(h.integer_series(10).unwrap(), ints(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn non_fuchsian_rejected() {
        for s in ["0;2,3,6", "1;", "0;2,2,2,2", "0;"] {
            assert!(matches!(poincare_series(&sig(s)), Err(Error::NonFuchsian { .. })), "{s}");
            assert!(coxeter_polynomial_t(&sig(s)).is_err());
        }
    }

    #[test]
    fn ktheoretic_poincare_genus_two() {
        let v = ktheoretic_poincare(&sig("2;"), 20);
        assert_eq!(v[0], BigInt::from(-1));
        assert_eq!(v[1], BigInt::from(1));
        let p = poincare_series(&sig("2;")).unwrap().integer_series(21).unwrap();
        let correction = ints(&[2, 1]);
        for i in 0..=20 {
            let c = correction.get(i).cloned().unwrap_or_default();
            assert_eq!(p[i], &c + &v[i], "i = {i}");
        }
    }

    #[test]
    fn extended_cartan_examples() {
        for g in 0..5i64 {
            let l = extended_lattice(&Signature::unweighted(g as u32));
            let want = IntMatrix::from_rows(&[vec![1 - g, 1, 1 - g], vec![-1, 0, -1], vec![0, 0, 1]]);
            assert_eq!(l.cartan(), &want);
        }
        let l = extended_lattice(&sig("0;2"));
        let c = l.cartan();
        let col: Vec<BigInt> = (0..4).map(|i| c[(i, 3)].clone()).collect();
        assert_eq!(col, ints(&[1, -1, 0, 1]));
        assert_eq!(c.row(3), &ints(&[0, 0, 0, 1])[..]);
    }

    #[test]
    fn phi_t_examples() {
        assert_eq!(coxeter_polynomial_t(&sig("2;")).unwrap().to_string(), "x^3+1");
        assert_eq!(coxeter_polynomial_t(&sig("5;")).unwrap(), IntPolynomial::from_i64s(&[1, 3, 3, 1]));
        let p = coxeter_polynomial_t(&sig("0;2,3,7")).unwrap();
        assert_eq!(p.degree(), Some(12));
        assert!(p.is_monic());
    }

    #[test]
    fn bracket_form_diverges_without_weights() {
        let r = phi_t_consistency(&sig("2;")).unwrap();
        assert!(r.product_agrees);
        assert!(!r.bracket_agrees);
    }

    #[test]
    fn matches() {
        assert!(is_fuchsian_match(&ci("21,14,6|42"), &sig("0;2,3,7")).unwrap());
        assert!(is_fuchsian_match(&ci("4,6,5|16"), &sig("0;2,5,6")).unwrap());
        assert!(!is_fuchsian_match(&ci("21,14,6|42"), &sig("0;2,3,8")).unwrap());
        // Same Hilbert series written with a redundant generator and relation.
        assert!(is_fuchsian_match(&ci("3,1,1,2|6,2"), &sig("2;")).unwrap());
    }

    #[test]
    fn fractional_cy_examples() {
        assert_eq!(fractional_cy_check(&sig("2;"), 6).unwrap(), FractionalCy { holds: true, period: Some(6) });
        assert_eq!(fractional_cy_check(&sig("3;"), 4).unwrap(), FractionalCy { holds: true, period: Some(4) });
        assert!(!fractional_cy_check(&sig("2;"), 4).unwrap().holds);
        assert_eq!(fractional_cy_check(&sig("5;"), 10).unwrap().period, None);
    }
}
