//! Presentation of the orbifold fundamental group.

use std::fmt;

use serde::Serialize;

use super::signature::Signature;

/// Generator of the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Alpha(u32),
    Beta(u32),
    Sigma(u32),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Alpha(i) => write!(f, "alpha{i}"),
            Generator::Beta(i) => write!(f, "beta{i}"),
            Generator::Sigma(i) => write!(f, "sigma{i}"),
        }
    }
}

/// Relator, read as "equals 1".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relator {
    /// `sigma_i^a_i`.
    Power { generator: Generator, exponent: u32 },
    /// `sigma_1 ... sigma_t [alpha_1, beta_1] ... [alpha_g, beta_g]`.
    Surface { sigmas: u32, genus: u32 },
}

impl Relator {
    /// Expands into a free-group word of `(generator, ±1)` letters, with
    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn word(&self) -> Vec<(Generator, i32)> {
        match *self {
            Relator::Power { generator, exponent } => vec![(generator, 1); exponent as usize],
            Relator::Surface { sigmas, genus } => {
                let mut w: Vec<(Generator, i32)> = (1..=sigmas).map(|i| (Generator::Sigma(i), 1)).collect();
                for i in 1..=genus {
                    w.extend([
                        (Generator::Alpha(i), 1),
                        (Generator::Beta(i), 1),
                        (Generator::Alpha(i), -1),
                        (Generator::Beta(i), -1),
                    ]);
                }
                w
            }
        }
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Relator::Power { generator, exponent } => write!(f, "{generator}^{exponent}"),
            Relator::Surface { sigmas, genus } => {
                let mut parts: Vec<String> = (1..=sigmas).map(|i| Generator::Sigma(i).to_string()).collect();
                parts.extend((1..=genus).map(|i| format!("[alpha{i},beta{i}]")));
                f.write_str(&parts.join("*"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
}

impl Presentation {
    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators.iter().map(ToString::to_string).collect()
    }
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Presentation", 2)?;
        st.serialize_field("generators", &self.generator_names())?;
        st.serialize_field("relations", &self.relator_strings())?;
        st.end()
    }
}

/// Generators `α_1..α_g, β_1..β_g, σ_1..σ_t`; relators `σ_i^{a_i}` and the
/// surface relator. The surface relator is omitted when it is the empty
/// word (genus 0 without weights).
pub fn fundamental_group_presentation(sig: &Signature) -> Presentation {
    let g = sig.genus();
    let t = sig.weight_count() as u32;
    let mut generators: Vec<Generator> = (1..=g).map(Generator::Alpha).collect();
    generators.extend((1..=g).map(Generator::Beta));
    generators.extend((1..=t).map(Generator::Sigma));
    let mut relators: Vec<Relator> = sig
        .weights()
        .iter()
        .enumerate()
        .map(|(i, &a)| Relator::Power { generator: Generator::Sigma(i as u32 + 1), exponent: a })
        .collect();
    if g + t > 0 {
        relators.push(Relator::Surface { sigmas: t, genus: g });
    }
    Presentation { generators, relators }
}
