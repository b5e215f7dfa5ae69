use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::signature::Signature;
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

/// Which Grothendieck group a lattice models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    /// Reduced Grothendieck group of the weighted curve.
    Curve,
    /// Its one-point extension by the class of the structure sheaf.
    Extended,
}

/// Free abelian group with a labeled basis and an integer Euler form.
///
/// Basis order for a curve lattice: `a` (structure sheaf), `s0` (simple at
/// an ordinary point), then for each weight `a_i` in ascending order the
/// tube classes `τ^j s_i` for `j = 0..a_i-2`. An extended lattice appends
/// the exceptional class `e`.
///
/// `cartan[(i, j)]` is `<b_i, b_j>`, so the first argument indexes rows.
#[derive(Clone)]
pub struct KLattice {
    signature: Signature,
    kind: LatticeKind,
    labels: Vec<String>,
    cartan: IntMatrix,
    averaging: OnceLock<IntMatrix>,
}

impl KLattice {
    /// Builds the reduced Grothendieck group of a weighted curve.
    pub fn curve(sig: &Signature) -> Self {
        let n = sig.rank();
        let g = BigInt::from(sig.genus());
        let mut c = IntMatrix::zeros(n, n);
        let mut labels = vec!["a".to_string(), "s0".to_string()];
        c[(0, 0)] = BigInt::one() - g;
        c[(0, 1)] = BigInt::one();
        c[(1, 0)] = -BigInt::one();

        let mut offset = 2;
        for (i, &weight) in sig.weights().iter().enumerate() {
            let tube = weight as usize - 1;
            for j in 0..tube {
                labels.push(format!("s{}[{}]", i + 1, j));
                // Hom(O, τ^j S_i) = k exactly when j ≡ 0.
                if j == 0 {
                    c[(0, offset + j)] = BigInt::one();
                }
                // Ext^1(τ^j S_i, O) = D Hom(O, τ^{j+1} S_i) would need
                // j ≡ -1, which never occurs inside the basis range.
                for k in 0..tube {
                    // Hom(τ^j S, τ^k S) iff j ≡ k;
                    // Ext^1(τ^j S, τ^k S) = D Hom(τ^k S, τ^{j+1} S) iff k ≡ j + 1.
                    let hom = i64::from(j == k);
                    let ext = i64::from((j + 1) % weight as usize == k);
                    c[(offset + j, offset + k)] = BigInt::from(hom - ext);
                }
            }
            offset += tube;
        }
        KLattice {
            signature: sig.clone(),
            kind: LatticeKind::Curve,
            labels,
            cartan: c,
            averaging: OnceLock::new(),
        }
    }

    /// Borders the Cartan matrix by an exceptional class `e` with
    /// `<e,e> = 1`, `<e,x> = 0` and `<x,e> = <x,a>`.
    pub fn one_point_extension(&self) -> Result<Self> {
        if self.kind != LatticeKind::Curve {
            return Err(Error::ExtendedLatticeUnsupported);
        }
        let n = self.rank();
        let mut c = IntMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                c[(i, j)] = self.cartan[(i, j)].clone();
            }
            c[(i, n)] = self.cartan[(i, 0)].clone();
        }
        c[(n, n)] = BigInt::one();
        let mut labels = self.labels.clone();
        labels.push("e".to_string());
        Ok(KLattice {
            signature: self.signature.clone(),
            kind: LatticeKind::Extended,
            labels,
            cartan: c,
            averaging: OnceLock::new(),
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    fn same_as(&self, other: &KLattice) -> bool {
        std::ptr::eq(self, other) || (self.kind == other.kind && self.signature == other.signature)
    }

    fn require_curve(&self) -> Result<()> {
        match self.kind {
            LatticeKind::Curve => Ok(()),
            LatticeKind::Extended => Err(Error::ExtendedLatticeUnsupported),
        }
    }

    pub fn class(&self, coords: Vec<BigInt>) -> Result<KClass<'_>> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: coords.len() });
        }
        Ok(KClass { lattice: self, coords })
    }

    pub fn class_from_i64s(&self, coords: &[i64]) -> Result<KClass<'_>> {
        self.class(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn basis_class(&self, index: usize) -> KClass<'_> {
        let mut coords = vec![BigInt::zero(); self.rank()];
        coords[index] = BigInt::one();
        KClass { lattice: self, coords }
    }

    /// Class of the structure sheaf.
    pub fn structure_sheaf(&self) -> KClass<'_> {
        self.basis_class(0)
    }

    /// Class of a simple sheaf at an ordinary point.
    pub fn ordinary_simple(&self) -> KClass<'_> {
        self.basis_class(1)
    }

    /// Class of `e` in an extended lattice.
    pub fn exceptional(&self) -> Result<KClass<'_>> {
        match self.kind {
            LatticeKind::Extended => Ok(self.basis_class(self.rank() - 1)),
            LatticeKind::Curve => Err(Error::Domain("curve lattices have no class e".into())),
        }
    }

    fn tube_offset(&self, i: usize) -> usize {
        2 + self.signature.weights()[..i].iter().map(|&a| a as usize - 1).sum::<usize>()
    }

    /// Class of `τ^j s_i` for weight index `i` (zero-based) and any `j`,
    /// reduced mod `a_i`. The class `τ^(a_i-1) s_i` is expressed through the
    /// tube relation `Σ_j τ^j s_i = s0`.
    pub fn tube_class(&self, i: usize, j: i64) -> Result<KClass<'_>> {
        let weights = self.signature.weights();
        let Some(&a) = weights.get(i) else {
            return Err(Error::Domain(format!("no weight with index {i}")));
        };
        let a = a as i64;
        let j = j.rem_euclid(a) as usize;
        let offset = self.tube_offset(i);
        if j + 1 < a as usize {
            return Ok(self.basis_class(offset + j));
        }
        let mut coords = vec![BigInt::zero(); self.rank()];
        coords[1] = BigInt::one();
        for k in 0..a as usize - 1 {
            coords[offset + k] = -BigInt::one();
        }
        Ok(KClass { lattice: self, coords })
    }

    /// `<x, y> = xᵗ C y`.
    pub fn euler_form(&self, x: &KClass<'_>, y: &KClass<'_>) -> Result<BigInt> {
        if !self.same_as(x.lattice) || !self.same_as(y.lattice) {
            return Err(Error::LatticeMismatch);
        }
        Ok(self.cartan.bilinear(&x.coords, &y.coords))
    }

    /// `rk(x) = <x, s0>`.
    pub fn rank_of(&self, x: &KClass<'_>) -> Result<BigInt> {
        self.require_curve()?;
        self.euler_form(x, &self.ordinary_simple())
    }

    /// Degree normalized by `deg(a) = 0`, `deg(s0) = ā` and
    /// `deg(τ^j s_i) = ā / a_i`.
    pub fn degree_of(&self, x: &KClass<'_>) -> Result<BigInt> {
        self.require_curve()?;
        if !self.same_as(x.lattice) {
            return Err(Error::LatticeMismatch);
        }
        let abar = self.signature.weight_lcm();
        let mut deg = &x.coords[1] * BigInt::from(abar);
        let mut offset = 2;
        for &a in self.signature.weights() {
            let per = BigInt::from(abar / u64::from(a));
            for k in 0..a as usize - 1 {
                deg += &x.coords[offset + k] * &per;
            }
            offset += a as usize - 1;
        }
        Ok(deg)
    }

    pub fn slope_of(&self, x: &KClass<'_>) -> Result<Slope> {
        if x.is_zero() {
            return Err(Error::ZeroClass);
        }
        let r = self.rank_of(x)?;
        let d = self.degree_of(x)?;
        Ok(if r.is_zero() {
            Slope::Infinite
        } else {
            Slope::Finite(BigRational::new(d, r))
        })
    }

    /// Matrix of the Auslander–Reiten translation on a curve lattice;
    /// column `j` holds the coordinates of `τ b_j`.
    pub fn tau_matrix(&self) -> Result<IntMatrix> {
        self.require_curve()?;
        Ok(tau_matrix(&self.signature))
    }

    /// `Σ_{j<ā} (T^j)ᵗ C`; dividing its bilinear form by `ā` gives the
    /// averaged Euler form.
    fn averaging_matrix(&self) -> &IntMatrix {
        self.averaging.get_or_init(|| {
            let t = tau_matrix(&self.signature);
            let n = self.rank();
            let abar = self.signature.weight_lcm();
            // Binary doubling on (T^k, Σ_{j<k} T^j).
            let mut power = IntMatrix::identity(n);
            let mut sum = IntMatrix::zeros(n, n);
            for bit in (0..64 - abar.leading_zeros()).rev() {
                sum = sum.add(&power.mul(&sum));
                power = power.mul(&power);
                if (abar >> bit) & 1 == 1 {
                    sum = sum.add(&power);
                    power = power.mul(&t);
                }
            }
            sum.transpose().mul(&self.cartan)
        })
    }

    /// `⟪x, y⟫ = (1/ā) Σ_{j<ā} <τ^j x, y>`.
    pub fn averaged_euler_form(&self, x: &KClass<'_>, y: &KClass<'_>) -> Result<BigRational> {
        self.require_curve()?;
        if !self.same_as(x.lattice) || !self.same_as(y.lattice) {
            return Err(Error::LatticeMismatch);
        }
        let total = self.averaging_matrix().bilinear(&x.coords, &y.coords);
        Ok(BigRational::new(total, BigInt::from(self.signature.weight_lcm())))
    }

    /// Right-hand side of weighted Riemann–Roch:
    /// `⟪O,O⟫ rk x rk y + (1/ā) (rk x deg y - rk y deg x)`, where
    /// `⟪O,O⟫ = ā χ / 2` comes from the closed-form Euler characteristic.
    pub fn riemann_roch_rhs(&self, x: &KClass<'_>, y: &KClass<'_>) -> Result<BigRational> {
        self.require_curve()?;
        if !self.same_as(x.lattice) || !self.same_as(y.lattice) {
            return Err(Error::LatticeMismatch);
        }
        let abar = BigInt::from(self.signature.weight_lcm());
        let oo = self.signature.orbifold_euler_char() * BigRational::new(abar.clone(), BigInt::from(2));
        let (rx, ry) = (self.rank_of(x)?, self.rank_of(y)?);
        let (dx, dy) = (self.degree_of(x)?, self.degree_of(y)?);
        let det = &rx * &dy - &ry * &dx;
        Ok(oo * BigRational::from_integer(rx * ry) + BigRational::new(det, abar))
    }
}

/// Matrix of `τ` on the curve lattice of `sig`:
/// `τa = a - Σ_i s_i + (t - (2 - 2g)) s0`, `τ s0 = s0`,
/// `τ(τ^j s_i) = τ^(j+1) s_i` with the last tube class rewritten as
/// `s0 - Σ_{j<a_i-1} τ^j s_i`.
pub fn tau_matrix(sig: &Signature) -> IntMatrix {
    let n = sig.rank();
    let mut t = IntMatrix::zeros(n, n);
    let g = i64::from(sig.genus());
    let tcount = sig.weight_count() as i64;
    t[(0, 0)] = BigInt::one();
    t[(1, 0)] = BigInt::from(tcount - 2 + 2 * g);
    t[(1, 1)] = BigInt::one();
    let mut offset = 2;
    for &a in sig.weights() {
        let tube = a as usize - 1;
        t[(offset, 0)] = -BigInt::one();
        for j in 0..tube {
            let col = offset + j;
            if j + 1 < tube {
                t[(col + 1, col)] = BigInt::one();
            } else {
                t[(1, col)] = BigInt::one();
                for k in 0..tube {
                    t[(offset + k, col)] = -BigInt::one();
                }
            }
        }
        offset += tube;
    }
    t
}

impl PartialEq for KLattice {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.signature == other.signature && self.cartan == other.cartan
    }
}

impl Eq for KLattice {}

impl fmt::Debug for KLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KLattice")
            .field("signature", &self.signature.to_string())
            .field("kind", &self.kind)
            .field("labels", &self.labels)
            .field("cartan", &self.cartan)
            .finish()
    }
}

impl Serialize for KLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("KLattice", 4)?;
        st.serialize_field("signature", &self.signature.to_string())?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("basis", &self.labels)?;
        st.serialize_field("cartan", &self.cartan)?;
        st.end()
    }
}

/// Integer coordinate vector in the basis of a [`KLattice`].
#[derive(Clone, PartialEq, Eq)]
pub struct KClass<'a> {
    lattice: &'a KLattice,
    coords: Vec<BigInt>,
}

impl<'a> KClass<'a> {
    pub fn lattice(&self) -> &'a KLattice {
        self.lattice
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Applies an integer matrix (for example `τ`) to the coordinates.
    pub fn transform(&self, m: &IntMatrix) -> KClass<'a> {
        KClass { lattice: self.lattice, coords: m.mul_vec(&self.coords) }
    }

    pub fn add(&self, other: &KClass<'a>) -> Result<KClass<'a>> {
        if !self.lattice.same_as(other.lattice) {
            return Err(Error::LatticeMismatch);
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(KClass { lattice: self.lattice, coords })
    }

    pub fn scale(&self, k: &BigInt) -> KClass<'a> {
        KClass { lattice: self.lattice, coords: self.coords.iter().map(|c| c * k).collect() }
    }
}

impl fmt::Debug for KClass<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "KClass[{}]", terms.join(", "))
    }
}

/// Slope `deg / rk`, infinite on finite-length classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(BigRational),
    Infinite,
}

/// `Hom(A, B) ≠ 0` is guaranteed for nonzero vector bundles on an
/// unweighted curve of genus `g` once `μ(B) - μ(A) > g - 1`.
pub fn hom_existence(mu_a: &BigRational, mu_b: &BigRational, genus: u32) -> bool {
    mu_b - mu_a > BigRational::from_integer(BigInt::from(genus) - 1)
}
