//! Enumeration of fuchsian signatures and search for graded complete
//! intersections with matching numerical data.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::format_rational;
use crate::ktheory::Signature;
use crate::singularity::{gorenstein_parameter, is_fuchsian_match, GradedCI};

/// Limits of an exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_genus: u32,
    pub max_weight_count: usize,
    pub max_weight: u32,
    pub max_generator_degree: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_genus: 3, max_weight_count: 6, max_weight: 12, max_generator_degree: 25 }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_generator_degree == 0 {
            return Err(Error::Domain("max generator degree must be positive".into()));
        }
        Ok(())
    }
}

/// Fuchsian signatures inside the bounds, ordered by genus, then number of
/// weights, then weights lexicographically.
pub fn enumerate_fuchsian_signatures(b: &SearchBounds) -> Vec<Signature> {
    let mut out = Vec::new();
    for g in 0..=b.max_genus {
        signatures_of_genus(g, b, &mut out);
    }
    out
}

fn signatures_of_genus(g: u32, b: &SearchBounds, out: &mut Vec<Signature>) {
    for t in 0..=b.max_weight_count {
        let mut ws = Vec::with_capacity(t);
        multisets(t, 2, b.max_weight, &mut ws, &mut |ws| {
            let sig = Signature::new(g, ws.iter().copied()).expect("weights >= 2");
            if sig.is_fuchsian() {
                out.push(sig);
            }
        });
    }
}

fn multisets(len: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for w in lo..=hi {
        cur.push(w);
        multisets(len, w, hi, cur, f);
        cur.pop();
    }
}

/// Power-series prefix of the Poincaré series, computed directly from the
/// expansions `v_{a-1}/v_a = (1 - x^{a-1}) Σ x^{ka}` and two partial sums
/// for `1/(1-x)²`.
pub fn poincare_prefix(sig: &Signature, len: usize) -> Vec<i64> {
    let g = i64::from(sig.genus());
    let mut s = vec![0i64; len];
    for (n, c) in [1, g - 2, g - 2, 1].into_iter().enumerate() {
        if n < len {
            s[n] += c;
        }
    }
    for &a in sig.weights() {
        let a = a as usize;
        let mut k = 0;
        while k + 2 < len {
            s[k + 2] += 1;
            if k + a + 1 < len {
                s[k + a + 1] -= 1;
            }
            k += a;
        }
    }
    for _ in 0..2 {
        for n in 1..len {
            s[n] += s[n - 1];
        }
    }
    s
}

fn divide_by_one_minus(s: &mut [i64], d: usize) {
    for n in d..s.len() {
        s[n] += s[n - d];
    }
}

fn multiply_by_one_minus(s: &mut [i64], h: usize) {
    for n in (h..s.len()).rev() {
        s[n] -= s[n - h];
    }
}

/// Power-series prefix of the Hilbert series of a complete intersection.
pub fn hilbert_prefix(ci: &GradedCI, len: usize) -> Vec<i64> {
    let mut s = vec![0i64; len];
    if len > 0 {
        s[0] = 1;
    }
    for &d in ci.generator_degrees() {
        divide_by_one_minus(&mut s, d as usize);
    }
    for &h in ci.relation_degrees() {
        multiply_by_one_minus(&mut s, h as usize);
    }
    s
}

/// Knobs used to cross-check the search against itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Reject partial degree sequences as soon as a settled coefficient
    /// disagrees with the target.
    pub prune: bool,
    /// Walk the degree ranges from the top down.
    pub reverse: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, reverse: false }
    }
}

/// Hypersurfaces `k[x,y,z]/(f)` with `deg f = d_1+d_2+d_3+1` and the
/// Hilbert series of the fuchsian singularity of `sig`, sorted.
pub fn find_hypersurfaces(sig: &Signature, b: &SearchBounds) -> Result<Vec<GradedCI>> {
    find_complete_intersections(sig, b, 1, SearchOptions::default())
}

/// Complete intersections with `relations + 2` generators of degree at
/// most `max_generator_degree`, Gorenstein parameter −1 and matching
/// Hilbert series. Relation degrees are at least twice the smallest
/// generator degree, as for a minimal presentation; for one relation this
/// is automatic.
pub fn find_complete_intersections(
    sig: &Signature,
    b: &SearchBounds,
    relations: usize,
    opts: SearchOptions,
) -> Result<Vec<GradedCI>> {
    sig.require_fuchsian()?;
    b.validate()?;
    if relations == 0 {
        return Err(Error::Domain("at least one relation is required".into()));
    }
    let gens = relations + 2;
    let len = gens * b.max_generator_degree as usize + 2;
    let target = poincare_prefix(sig, len);
    let mut st = Dfs {
        sig,
        target: &target,
        gens,
        relations,
        max: b.max_generator_degree,
        opts,
        degrees: Vec::with_capacity(gens),
        found: Vec::new(),
    };
    let mut series = vec![0i64; len];
    series[0] = 1;
    st.generators(series)?;
    let mut found = st.found;
    found.sort();
    found.dedup();
    for ci in &found {
        if gorenstein_parameter(ci) != -1 {
            return Err(Error::Internal(format!("candidate {ci} has parameter != -1")));
        }
    }
    Ok(found)
}

struct Dfs<'a> {
    sig: &'a Signature,
    target: &'a [i64],
    gens: usize,
    relations: usize,
    max: u32,
    opts: SearchOptions,
    degrees: Vec<u32>,
    found: Vec<GradedCI>,
}

impl Dfs<'_> {
    fn generators(&mut self, series: Vec<i64>) -> Result<()> {
        if self.degrees.len() == self.gens {
            return self.relation_degrees(&series);
        }
        let lo = self.degrees.last().copied().unwrap_or(1);
        let range: Vec<u32> = if self.opts.reverse {
            (lo..=self.max).rev().collect()
        } else {
            (lo..=self.max).collect()
        };
        for d in range {
            let mut next = series.clone();
            divide_by_one_minus(&mut next, d as usize);
            self.degrees.push(d);
            // Later generators have degree >= d and relations degree
            // >= 2 d_1, so coefficients below both are final.
            let settled = (d.min(2 * self.degrees[0])) as usize;
            if !self.opts.prune || next[..settled] == self.target[..settled] {
                self.generators(next)?;
            }
            self.degrees.pop();
        }
        Ok(())
    }

    fn relation_degrees(&mut self, series: &[i64]) -> Result<()> {
        let total = self.degrees.iter().sum::<u32>() + 1;
        let min_h = 2 * self.degrees[0];
        let mut hs = Vec::with_capacity(self.relations);
        let mut splits = Vec::new();
        partitions(total, self.relations, min_h, &mut hs, &mut splits);
        for hs in splits {
            let mut s = series.to_vec();
            for &h in &hs {
                multiply_by_one_minus(&mut s, h as usize);
            }
            let check = (total as usize + 1).min(s.len());
            if self.opts.prune && s[..check] != self.target[..check] {
                continue;
            }
            let ci = GradedCI::new(self.degrees.clone(), hs)?;
            if is_fuchsian_match(&ci, self.sig)? {
                self.found.push(ci);
            }
        }
        Ok(())
    }
}

/// Nondecreasing sequences of `parts` integers `>= lo` summing to `total`.
fn partitions(total: u32, parts: usize, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        if total >= lo {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    let mut h = lo;
    while h * parts as u32 <= total {
        cur.push(h);
        partitions(total - h, parts - 1, h, cur, out);
        cur.pop();
        h += 1;
    }
}

/// One genus-zero signature together with its hypersurface candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationEntry {
    pub signature: Signature,
    pub chi: String,
    pub candidates: Vec<GradedCI>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub bounds: SearchBounds,
    pub entries: Vec<ClassificationEntry>,
    pub total: usize,
    pub three_weight_count: usize,
}

impl ClassificationReport {
    /// Plain-text table with columns signature, degrees, h and χ.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<18} {:<12} {:>4} {:>8}", "signature", "degrees", "h", "chi");
        for e in &self.entries {
            for ci in &e.candidates {
                let degs: Vec<String> = ci.generator_degrees().iter().map(u32::to_string).collect();
                let hs: Vec<String> = ci.relation_degrees().iter().map(u32::to_string).collect();
                let _ = writeln!(
                    s,
                    "{:<18} {:<12} {:>4} {:>8}",
                    format!("({})", e.signature),
                    degs.join(","),
                    hs.join(","),
                    e.chi
                );
            }
        }
        let _ = writeln!(s, "total: {}", self.total);
        let _ = writeln!(s, "with three weights: {}", self.three_weight_count);
        s
    }
}

/// Every genus-zero fuchsian signature within the bounds that admits a
/// hypersurface candidate.
///
/// The Hilbert series of all degree triples are indexed by their power
/// series prefix once; each signature is then a hash lookup followed by an
/// exact comparison of rational functions.
pub fn classify_genus_zero(b: &SearchBounds) -> Result<ClassificationReport> {
    b.validate()?;
    let d = b.max_generator_degree;
    let len = 3 * d as usize + 2;
    let mut index: HashMap<Vec<i64>, Vec<GradedCI>> = HashMap::new();
    for d1 in 1..=d {
        for d2 in d1..=d {
            for d3 in d2..=d {
                let ci = GradedCI::hypersurface([d1, d2, d3]);
                index.entry(hilbert_prefix(&ci, len)).or_default().push(ci);
            }
        }
    }
    let mut sigs = Vec::new();
    signatures_of_genus(0, b, &mut sigs);
    let mut entries = Vec::new();
    for sig in sigs {
        let Some(cands) = index.get(&poincare_prefix(&sig, len)) else {
            continue;
        };
        let mut confirmed = Vec::new();
        for ci in cands {
            if is_fuchsian_match(ci, &sig)? {
                confirmed.push(ci.clone());
            }
        }
        if !confirmed.is_empty() {
            confirmed.sort();
            entries.push(ClassificationEntry {
                chi: format_rational(&sig.orbifold_euler_char()),
                signature: sig,
                candidates: confirmed,
            });
        }
    }
    let three_weight_count = entries.iter().filter(|e| e.signature.weight_count() == 3).count();
    Ok(ClassificationReport { bounds: *b, total: entries.len(), three_weight_count, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singularity::{hilbert_series, poincare_series};
    use num_bigint::BigInt;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn small(g: u32, t: usize, w: u32) -> SearchBounds {
        SearchBounds { max_genus: g, max_weight_count: t, max_weight: w, max_generator_degree: 25 }
    }

    fn to_big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn enumeration_examples() {
        let sigs = enumerate_fuchsian_signatures(&small(0, 3, 7));
        assert!(sigs.contains(&sig("0;2,3,7")));
        assert!(!sigs.contains(&sig("0;2,3,6")));
        assert_eq!(enumerate_fuchsian_signatures(&small(2, 0, 12)), vec![sig("2;")]);
        let four = enumerate_fuchsian_signatures(&small(0, 4, 3));
        assert!(!four.contains(&sig("0;2,2,2,2")));
        assert!(four.contains(&sig("0;2,2,2,3")));
        let mut sorted = four.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, four);
    }

    #[test]
    fn fast_prefixes_agree_with_rational_functions() {
        for s in ["0;2,3,7", "2;", "1;2,5", "0;2,2,2,3", "3;4,4"] {
            let s = sig(s);
            let want = poincare_series(&s).unwrap().integer_series(39).unwrap();
            assert_eq!(to_big(&poincare_prefix(&s, 40)), want, "{s}");
        }
        for c in ["21,14,6|42", "1,1,1|4", "2,3|", "4,5,6,7|10,12"] {
            let c: GradedCI = c.parse().unwrap();
            let want = hilbert_series(&c).integer_series(49).unwrap();
            assert_eq!(to_big(&hilbert_prefix(&c, 50)), want, "{c}");
        }
    }

    #[test]
    fn hypersurface_examples() {
        let b = SearchBounds::default();
        let hs = |s: &str| -> Vec<String> {
            find_hypersurfaces(&sig(s), &b).unwrap().iter().map(ToString::to_string).collect()
        };
        assert_eq!(hs("0;2,3,7"), ["6,14,21|42"]);
        assert_eq!(hs("0;2,4,6"), ["4,6,11|22"]);
        assert_eq!(hs("3;"), ["1,1,1|4"]);
        assert!(hs("0;2,3,11").is_empty());
    }

    #[test]
    fn pruning_and_order_do_not_change_results() {
        let b = SearchBounds { max_generator_degree: 12, ..SearchBounds::default() };
        for s in ["0;2,4,6", "2;", "0;2,2,2,3", "0;3,3,4", "1;2"] {
            let s = sig(s);
            let base = find_complete_intersections(&s, &b, 1, SearchOptions::default()).unwrap();
            for opts in [
                SearchOptions { prune: false, reverse: false },
                SearchOptions { prune: true, reverse: true },
                SearchOptions { prune: false, reverse: true },
            ] {
                assert_eq!(find_complete_intersections(&s, &b, 1, opts).unwrap(), base, "{s} {opts:?}");
            }
        }
    }

    #[test]
    fn non_fuchsian_search_rejected() {
        assert!(find_hypersurfaces(&sig("0;2,3,6"), &SearchBounds::default()).is_err());
    }

    #[test]
    fn codimension_two_search_runs() {
        let b = SearchBounds { max_generator_degree: 8, ..SearchBounds::default() };
        let found = find_complete_intersections(&sig("0;2,2,2,3"), &b, 2, SearchOptions::default()).unwrap();
        for ci in &found {
            assert_eq!(ci.relation_degrees().len(), 2);
            assert!(is_fuchsian_match(ci, &sig("0;2,2,2,3")).unwrap());
        }
    }

    #[test]
    fn partition_listing() {
        let mut out = Vec::new();
        partitions(7, 2, 2, &mut Vec::new(), &mut out);
        assert_eq!(out, vec![vec![2, 5], vec![3, 4]]);
    }
}
