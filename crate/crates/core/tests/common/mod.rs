#![allow(dead_code)]

use fuchsian_core::exactalg::{IntMatrix, IntPolynomial};
use fuchsian_core::ktheory::{KClass, KLattice, Signature};
use num_bigint::BigInt;
use rand::Rng;

/// All signatures with genus <= max_g, at most max_t weights, each weight
/// in 2..=max_w. Written independently of the library enumerator.
pub fn grid(max_g: u32, max_t: usize, max_w: u32, fuchsian_only: bool) -> Vec<Signature> {
    fn rec(start: u32, max_w: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for w in start..=max_w {
            cur.push(w);
            rec(w, max_w, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut weight_lists = Vec::new();
    rec(2, max_w, max_t, &mut Vec::new(), &mut weight_lists);
    let mut out = Vec::new();
    for g in 0..=max_g {
        for ws in &weight_lists {
            // χ < 0  <=>  2 - 2g - Σ(1 - 1/a) < 0, tested in integers.
            let l: i64 = ws.iter().map(|&a| i64::from(a)).product();
            let sum: i64 = ws.iter().map(|&a| (i64::from(a) - 1) * (l / i64::from(a))).sum();
            let chi_times_l = (2 - 2 * i64::from(g)) * l - sum;
            if !fuchsian_only || chi_times_l < 0 {
                out.push(Signature::new(g, ws.clone()).unwrap());
            }
        }
    }
    out
}

pub fn random_coords(rank: usize, rng: &mut impl Rng) -> Vec<BigInt> {
    (0..rank).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect()
}

pub fn random_class<'a>(l: &'a KLattice, rng: &mut impl Rng) -> KClass<'a> {
    l.class(random_coords(l.rank(), rng)).unwrap()
}

pub fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

/// `1 + x + ... + x^{a-1}` from its coefficient list.
pub fn v(a: u32) -> IntPolynomial {
    poly(&vec![1; a as usize])
}

/// Determinant of a matrix of polynomials by cofactor expansion along the
/// first row.
pub fn poly_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = m.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut acc = IntPolynomial::zero();
    for j in 0..n {
        let minor: Vec<Vec<IntPolynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `det(xI - m)` by cofactor expansion; only sensible for small `m`.
pub fn cofactor_charpoly(m: &IntMatrix) -> IntPolynomial {
    let n = m.rows();
    let rows: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = IntPolynomial::constant(-m[(i, j)].clone());
                    if i == j { &c + &IntPolynomial::x() } else { c }
                })
                .collect()
        })
        .collect();
    poly_det(&rows)
}

/// Seven known fuchsian hypersurfaces: (f, degrees, signature, deg f).
pub const TABLE: [(&str, &str, &str, u64); 7] = [
    ("x^2+y^3+z^7", "21,14,6|42", "0;2,3,7", 42),
    ("x^2+y^3+yz^5", "15,10,4|30", "0;2,4,5", 30),
    ("x^2+zy^3+yz^4", "11,6,4|22", "0;2,4,6", 22),
    ("x^4+xy^2+yz^2", "4,6,5|16", "0;2,5,6", 16),
    ("x^2+y^6+z^6", "3,1,1|6", "2;", 6),
    ("x^4+y^4+z^4", "1,1,1|4", "3;", 4),
    ("xy^3+yz^3+zx^3", "1,1,1|4", "3;", 4),
];

/// Quasi-homogeneity check for the table entries: every monomial of `f`
/// has weighted degree `deg f` under the given generator degrees.
pub fn quasi_homogeneous(f: &str, degs: [u32; 3], h: u32) -> bool {
    f.split('+').all(|mono| {
        let mut total = 0;
        let chars: Vec<char> = mono.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let var = match chars[i] {
                'x' => 0,
                'y' => 1,
                'z' => 2,
                _ => return false,
            };
            i += 1;
            let mut exp = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                exp = chars[start..i].iter().collect::<String>().parse().unwrap();
            }
            total += degs[var] * exp;
        }
        total == h
    })
}
