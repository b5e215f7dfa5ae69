use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};

/// Genus of the underlying curve together with the multiset of weights.
///
/// Weights are kept sorted ascending; `(0;7,3,2)` and `(0;2,3,7)` are the
/// same signature. Weight-1 entries mark ordinary points and are dropped on
/// construction, with the number dropped recorded in `dropped_ordinary`.
#[derive(Debug, Clone, Serialize)]
pub struct Signature {
    genus: u32,
    weights: Vec<u32>,
    #[serde(skip_serializing_if = "is_zero_usize")]
    dropped_ordinary: usize,
}

fn is_zero_usize(n: &usize) -> bool {
    *n == 0
}

impl Signature {
    pub fn new(genus: u32, weights: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut kept = Vec::new();
        let mut dropped = 0;
        for w in weights {
            match w {
                0 => return Err(Error::Domain("weights must be positive".into())),
                1 => dropped += 1,
                _ => kept.push(w),
            }
        }
        kept.sort_unstable();
        Ok(Signature { genus, weights: kept, dropped_ordinary: dropped })
    }

    /// Signature without weights.
    pub fn unweighted(genus: u32) -> Self {
        Signature { genus, weights: Vec::new(), dropped_ordinary: 0 }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Number of weighted points `t`.
    pub fn weight_count(&self) -> usize {
        self.weights.len()
    }

    /// How many weight-1 entries were removed when this was built.
    pub fn dropped_ordinary(&self) -> usize {
        self.dropped_ordinary
    }

    /// `lcm(a_1, ..., a_t)`, 1 when there are no weights.
    pub fn weight_lcm(&self) -> u64 {
        self.weights
            .iter()
            .fold(1u64, |acc, &a| num_integer::lcm(acc, u64::from(a)))
    }

    /// Rank `2 + Σ(a_i - 1)` of the reduced Grothendieck group.
    pub fn rank(&self) -> usize {
        2 + self.weights.iter().map(|&a| a as usize - 1).sum::<usize>()
    }

    /// `χ = (2 - 2g) - Σ(1 - 1/a_i)`.
    pub fn orbifold_euler_char(&self) -> BigRational {
        let base = BigRational::from_integer(BigInt::from(2) - BigInt::from(2 * self.genus as u64));
        self.weights.iter().fold(base, |acc, &a| {
            acc - BigRational::new(BigInt::from(a - 1), BigInt::from(a))
        })
    }

    /// Negative orbifold Euler characteristic.
    pub fn is_fuchsian(&self) -> bool {
        self.orbifold_euler_char().is_negative()
    }

    pub fn require_fuchsian(&self) -> Result<()> {
        let chi = self.orbifold_euler_char();
        if chi.is_negative() {
            Ok(())
        } else {
            Err(Error::NonFuchsian { signature: self.to_string(), chi: chi.to_string() })
        }
    }
}

// Equality and order ignore the dropped-weight bookkeeping.
impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        (self.genus, &self.weights) == (other.genus, &other.weights)
    }
}

impl Eq for Signature {}

impl std::hash::Hash for Signature {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.genus, &self.weights).hash(state);
    }
}

/// Genus, then number of weights, then weights lexicographically.
impl Ord for Signature {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.genus, self.weights.len(), &self.weights).cmp(&(
            other.genus,
            other.weights.len(),
            &other.weights,
        ))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `g;a1,a2,...` as accepted on the command line. `2;`, `2` and `2;-`
/// all denote genus 2 without weights.
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
        let (g, ws) = s.split_once(';').unwrap_or((s, ""));
        let genus: u32 = g
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad genus {g:?} in signature {s:?}")))?;
        let ws = ws.trim();
        let weights = if ws.is_empty() || ws == "-" {
            Vec::new()
        } else {
            ws.split(',')
                .map(|w| {
                    w.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad weight {w:?} in signature {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if weights.contains(&0) {
            return Err(Error::Parse(format!("weight 0 in signature {s:?}")));
        }
        Signature::new(genus, weights)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        write!(f, "{};{}", self.genus, ws.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational;

    #[test]
    fn parse_variants() {
        let s: Signature = "0;2,3,7".parse().unwrap();
        assert_eq!(s.weights(), &[2, 3, 7]);
        assert_eq!("0; 7,3 ,2".parse::<Signature>().unwrap(), s);
        assert_eq!("(0;2,3,7)".parse::<Signature>().unwrap(), s);
        for t in ["2;", "2", "2;-", " 2 ; "] {
            assert_eq!(t.parse::<Signature>().unwrap(), Signature::unweighted(2), "{t}");
        }
        assert_eq!(s.to_string(), "0;2,3,7");
        assert_eq!(Signature::unweighted(2).to_string(), "2;");
    }

    #[test]
    fn parse_errors() {
        for t in ["", "x;2", "0;2,,3", "0;a", "-1;2", "0;0"] {
            assert!(t.parse::<Signature>().unwrap_err().is_parse(), "{t}");
        }
    }

    #[test]
    fn weight_one_dropped_and_reported() {
        let s: Signature = "0;1,2,1,3".parse().unwrap();
        assert_eq!(s.weights(), &[2, 3]);
        assert_eq!(s.dropped_ordinary(), 2);
        assert_eq!(s, "0;2,3".parse().unwrap());
    }

    #[test]
    fn euler_characteristics() {
        let chi = |t: &str| t.parse::<Signature>().unwrap().orbifold_euler_char();
        assert_eq!(chi("0;2,3,7"), rational(-1, 42));
        assert_eq!(chi("1;"), rational(0, 1));
        assert_eq!(chi("0;2,4,5"), rational(-1, 20));
        assert_eq!(chi("0;2,3,6"), rational(0, 1));
        assert_eq!(chi("0;2,2,2,3"), rational(-1, 6));
    }

    #[test]
    fn lcm_and_rank() {
        let s: Signature = "0;2,3,7".parse().unwrap();
        assert_eq!(s.weight_lcm(), 42);
        assert_eq!(s.rank(), 2 + 1 + 2 + 6);
        assert_eq!(Signature::unweighted(5).weight_lcm(), 1);
    }
}
