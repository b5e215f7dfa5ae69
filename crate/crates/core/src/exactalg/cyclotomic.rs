//! `v_a`, cyclotomic polynomials and cyclotomic factorization.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// `v_a = 1 + x + ... + x^(a-1) = (x^a - 1)/(x - 1)`.
pub fn v_poly(a: i64) -> Result<IntPolynomial> {
    if a <= 0 {
        return Err(Error::Domain(format!("v_a requires a >= 1, got {a}")));
    }
    Ok(IntPolynomial::new(vec![BigInt::one(); a as usize]))
}

pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

type Table = Mutex<HashMap<u64, Arc<IntPolynomial>>>;

// Memo shared by every caller; entries are immutable once inserted.
fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn cyclotomic_cached(n: u64) -> Arc<IntPolynomial> {
    if let Some(p) = table().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Phi_d
    let mut p = IntPolynomial::monomial(BigInt::one(), n as usize) - IntPolynomial::one();
    for d in divisors(n) {
        if d < n {
            p = p
                .checked_div(&cyclotomic_cached(d))
                .expect("Phi_d divides x^n - 1 for d | n");
        }
    }
    let p = Arc::new(p);
    table().lock().unwrap().insert(n, p.clone());
    p
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: i64) -> Result<IntPolynomial> {
    if n <= 0 {
        return Err(Error::Domain(format!("cyclotomic index must be >= 1, got {n}")));
    }
    Ok((*cyclotomic_cached(n as u64)).clone())
}

/// Orders `n` with `phi(n) <= deg`, ascending. Uses `phi(n) >= sqrt(n/2)`.
fn orders_up_to_degree(deg: usize) -> impl Iterator<Item = u64> {
    let deg = deg as u64;
    (1..=2 * deg * deg + 2).filter(move |&n| totient(n) <= deg)
}

/// `p = remainder * prod Phi_n^m(n)`, with `remainder` free of cyclotomic
/// factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub factors: BTreeMap<u64, u32>,
    pub remainder: IntPolynomial,
}

impl CyclotomicFactorization {
    /// True when the polynomial is a unit times a product of cyclotomics.
    pub fn is_cyclotomic(&self) -> bool {
        self.remainder.is_unit_constant()
    }

    /// Multiplies the factorization back out.
    pub fn reassemble(&self) -> IntPolynomial {
        self.factors.iter().fold(self.remainder.clone(), |acc, (&n, &m)| {
            acc * cyclotomic_cached(n).pow(m)
        })
    }

    /// Least common multiple of the cyclotomic orders, `None` on overflow.
    pub fn order_lcm(&self) -> Option<u64> {
        self.factors.keys().try_fold(1u64, |acc, &n| {
            let g = num_integer::gcd(acc, n);
            (acc / g).checked_mul(n)
        })
    }

    /// Renders the cyclotomic part as `[Φ2, Φ6]` or `[Φ2^3]`.
    pub fn factor_list(&self) -> String {
        let items: Vec<String> = self
            .factors
            .iter()
            .map(|(n, m)| if *m == 1 { format!("Φ{n}") } else { format!("Φ{n}^{m}") })
            .collect();
        format!("[{}]", items.join(", "))
    }
}

/// Strips every cyclotomic factor from `p` by trial division.
pub fn factor_cyclotomic(p: &IntPolynomial) -> Result<CyclotomicFactorization> {
    let Some(deg) = p.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut remainder = p.clone();
    let mut factors = BTreeMap::new();
    for n in orders_up_to_degree(deg) {
        let phi = cyclotomic_cached(n);
        if phi.degree() > remainder.degree() {
            continue;
        }
        let mut mult = 0;
        while let Some(q) = remainder.checked_div(&phi) {
            remainder = q;
            mult += 1;
        }
        if mult > 0 {
            factors.insert(n, mult);
        }
    }
    Ok(CyclotomicFactorization { factors, remainder })
}
