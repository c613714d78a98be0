//! Periodicity data of even real Clifford algebras, spin weight sign classes
//! and the four weight-set shapes of a homogeneous Clifford structure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{GramMatrix, SignVector, Vector};
use crate::rootsys::RootSet;

/// Largest rank for which `n_r` fits the integer type used here.
pub const MAX_CLIFFORD_RANK: u32 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FieldKind {
    Real,
    Complex,
    Quaternion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordInfo {
    pub r: u32,
    pub field_kind: FieldKind,
    /// `Cl⁰_r ≅ M_{n_r}(K)` (or two copies of it when split).
    pub n_r: u128,
    pub split: bool,
}

pub fn clifford_info(r: u32) -> Result<CliffordInfo> {
    if !(2..=MAX_CLIFFORD_RANK).contains(&r) {
        return Err(Error::OutOfRange { what: "Clifford rank", value: r.into() });
    }
    let field_kind = match r % 8 {
        0 | 1 | 7 => FieldKind::Real,
        2 | 6 => FieldKind::Complex,
        _ => FieldKind::Quaternion,
    };
    let k = (r - 1) / 8;
    let rest = r - 8 * k;
    let exp = 4 * k
        + match rest {
            1..=4 => 0,
            5 => 1,
            6 => 2,
            _ => 3,
        };
    Ok(CliffordInfo { r, field_kind, n_r: 1u128 << exp, split: r % 4 == 0 })
}

/// Sign vectors of the spin weights `Σ ε_j e_j` for rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinWeightSigns {
    pub q: usize,
    /// All signs for odd `r`; the `∏ε = +1` class for even `r`.
    pub plus: Vec<SignVector>,
    /// The `∏ε = −1` class, present exactly when the module splits.
    pub minus: Option<Vec<SignVector>>,
}

pub fn spin_weight_signs(r: u32) -> Result<SpinWeightSigns> {
    if !(2..=40).contains(&r) {
        return Err(Error::OutOfRange { what: "spin weight rank", value: r.into() });
    }
    let q = (r / 2) as usize;
    if r % 2 == 1 {
        return Ok(SpinWeightSigns { q, plus: SignVector::all(q), minus: None });
    }
    let (plus, minus): (Vec<_>, Vec<_>) = SignVector::all(q).into_iter().partition(|e| e.product() == 1);
    Ok(SpinWeightSigns { q, plus, minus: (q % 2 == 0).then_some(minus) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    I,
    II,
    III,
    IV,
}

impl Shape {
    /// Shape forced by the Clifford rank.
    pub fn for_rank(r: u32) -> Option<(Shape, usize)> {
        if r < 2 {
            return None;
        }
        let q = (r / 2) as usize;
        Some(match (r % 2, q % 4) {
            (1, _) => (Shape::I, q),
            (_, 1 | 3) => (Shape::II, q),
            (_, 2) => (Shape::III, q),
            _ => (Shape::IV, q),
        })
    }

    pub fn rank_for(self, q: usize) -> u32 {
        match self {
            Shape::I => 2 * q as u32 + 1,
            _ => 2 * q as u32,
        }
    }

    pub fn admits_q(self, q: usize) -> bool {
        q >= 1
            && match self {
                Shape::I => true,
                Shape::II => q % 2 == 1,
                Shape::III => q % 4 == 2,
                Shape::IV => q % 4 == 0,
            }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Shape::I),
            "II" | "2" => Ok(Shape::II),
            "III" | "3" => Ok(Shape::III),
            "IV" | "4" => Ok(Shape::IV),
            _ => Err(Error::Parse(format!("unknown shape {s:?}"))),
        }
    }
}

/// Weight-set data: the vectors `α_i`, `γ_i` and `β_j` in the coordinates of
/// `basis_gram`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    pub shape: Shape,
    pub basis_gram: GramMatrix,
    #[serde(rename = "A")]
    pub a: Vec<Vector>,
    #[serde(rename = "Gamma", default)]
    pub gamma: Vec<Vector>,
    #[serde(rename = "B")]
    pub b: Vec<Vector>,
}

fn is_symmetric(set: &[Vector]) -> bool {
    set.iter().all(|v| set.contains(&-v))
}

impl WeightConfig {
    pub fn q(&self) -> usize {
        self.b.len()
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.q();
        let dim = self.basis_gram.dim();
        if !self.shape.admits_q(q) {
            return Err(Error::InvalidConfig(format!("shape {} does not occur with q = {q}", self.shape)));
        }
        for v in self.a.iter().chain(&self.gamma).chain(&self.b) {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
        }
        if self.a.is_empty() && self.gamma.is_empty() {
            return Err(Error::InvalidConfig("A and Gamma are both empty".into()));
        }
        if self.b.iter().any(Vector::is_zero) {
            return Err(Error::InvalidConfig("every β_j must be nonzero".into()));
        }
        match self.shape {
            Shape::I | Shape::II if !self.gamma.is_empty() => {
                return Err(Error::InvalidConfig(format!("shape {} takes no Gamma", self.shape)));
            }
            Shape::I | Shape::III | Shape::IV if !is_symmetric(&self.a) || !is_symmetric(&self.gamma) => {
                return Err(Error::InvalidConfig("A and Gamma must be symmetric under negation".into()));
            }
            _ => {}
        }
        let nonzero_forced = match self.shape {
            Shape::I => matches!(q % 4, 1 | 2),
            Shape::III => true,
            _ => false,
        };
        if nonzero_forced {
            if let Some(index) = self.a.iter().chain(&self.gamma).position(Vector::is_zero) {
                return Err(Error::ZeroVector { index });
            }
        }
        Ok(())
    }

    /// `p·2^q` for shapes I and II, `(p + p')·2^{q−1}` otherwise.
    pub fn expected_len(&self) -> usize {
        let q = self.q();
        match self.shape {
            Shape::I | Shape::II => self.a.len() << q,
            Shape::III | Shape::IV => (self.a.len() + self.gamma.len()) << (q - 1),
        }
    }
}

/// Assembles the weight set of the configuration. Weights must be simple:
/// any coincidence is reported as [`Error::DuplicateWeight`].
pub fn build_weights(cfg: &WeightConfig) -> Result<RootSet> {
    cfg.validate()?;
    let q = cfg.q();
    let mut weights = Vec::with_capacity(cfg.expected_len());
    for eps in SignVector::all(q) {
        let sum = eps.combine(&cfg.b);
        let shifts: &[Vector] = match cfg.shape {
            Shape::I | Shape::II => &cfg.a,
            Shape::III | Shape::IV if eps.product() == 1 => &cfg.a,
            Shape::III | Shape::IV => &cfg.gamma,
        };
        for alpha in shifts {
            let w = if cfg.shape == Shape::II && eps.product() < 0 { &sum - alpha } else { &sum + alpha };
            weights.push(w);
        }
    }
    match RootSet::from_distinct(cfg.basis_gram.clone(), weights) {
        Err(Error::DuplicateVector { vector }) => Err(Error::DuplicateWeight { weight: vector }),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn periodicity_examples() {
        let c = clifford_info(9).unwrap();
        assert_eq!((c.field_kind, c.n_r, c.split), (FieldKind::Real, 16, false));
        let c = clifford_info(10).unwrap();
        assert_eq!((c.field_kind, c.n_r, c.split), (FieldKind::Complex, 16, false));
        let c = clifford_info(16).unwrap();
        assert_eq!((c.field_kind, c.n_r, c.split), (FieldKind::Real, 128, true));
        assert!(clifford_info(1).is_err());
    }

    #[test]
    fn periodicity_rule() {
        for r in 2..=100 {
            let a = clifford_info(r).unwrap();
            let b = clifford_info(r + 8).unwrap();
            assert_eq!(a.field_kind, b.field_kind);
            assert_eq!(b.n_r, 16 * a.n_r);
        }
    }

    #[test]
    fn spin_sign_examples() {
        assert_eq!(spin_weight_signs(5).unwrap().plus.len(), 4);
        let s = spin_weight_signs(16).unwrap();
        assert_eq!(s.plus.len(), 128);
        assert_eq!(s.minus.as_ref().unwrap().len(), 128);
        let s = spin_weight_signs(6).unwrap();
        assert_eq!(s.plus.len(), 4);
        assert!(s.minus.is_none());
        assert!(s.plus.iter().all(|e| e.product() == 1));
    }

    #[test]
    fn shapes_for_ranks() {
        assert_eq!(Shape::for_rank(9), Some((Shape::I, 4)));
        assert_eq!(Shape::for_rank(10), Some((Shape::II, 5)));
        assert_eq!(Shape::for_rank(12), Some((Shape::III, 6)));
        assert_eq!(Shape::for_rank(16), Some((Shape::IV, 8)));
        assert_eq!(Shape::for_rank(14), Some((Shape::II, 7)));
    }

    fn identity_b(q: usize, dim: usize, offset: usize) -> Vec<Vector> {
        (0..q).map(|j| Vector::basis(dim, j + offset, Rational::one())).collect()
    }

    #[test]
    fn shape_one_with_zero_alpha() {
        let cfg = WeightConfig {
            shape: Shape::I,
            basis_gram: GramMatrix::scalar(4, Rational::frac(1, 4)),
            a: vec![Vector::zeros(4)],
            gamma: vec![],
            b: identity_b(4, 4, 0),
        };
        let w = build_weights(&cfg).unwrap();
        assert_eq!(w.len(), 16);
        assert!(w.vectors().iter().all(|v| w.contains(&-v)));
    }

    #[test]
    fn shape_two_single_alpha() {
        let mut diag = vec![Rational::frac(3, 4)];
        diag.extend(std::iter::repeat_n(Rational::frac(1, 4), 5));
        let cfg = WeightConfig {
            shape: Shape::II,
            basis_gram: GramMatrix::diagonal(diag),
            a: vec![Vector::basis(6, 0, Rational::one())],
            gamma: vec![],
            b: identity_b(5, 6, 1),
        };
        let w = build_weights(&cfg).unwrap();
        assert_eq!(w.len(), 32);
        assert!(w.vectors().iter().all(|v| w.contains(&-v)));
    }

    #[test]
    fn shape_four_half_signs() {
        let cfg = WeightConfig {
            shape: Shape::IV,
            basis_gram: GramMatrix::scalar(8, Rational::frac(1, 8)),
            a: vec![Vector::zeros(8)],
            gamma: vec![],
            b: identity_b(8, 8, 0),
        };
        assert_eq!(build_weights(&cfg).unwrap().len(), 128);
    }

    #[test]
    fn parity_forbids_zero_alpha() {
        let cfg = WeightConfig {
            shape: Shape::I,
            basis_gram: GramMatrix::scalar(1, Rational::one()),
            a: vec![Vector::zeros(1)],
            gamma: vec![],
            b: identity_b(1, 1, 0),
        };
        assert!(matches!(build_weights(&cfg), Err(Error::ZeroVector { .. })));
    }

    #[test]
    fn collisions_are_reported() {
        // β₁ = β₂ as vectors: +β₁−β₂ = −β₁+β₂ = 0 is zero, so use α to shift away from zero
        let g = GramMatrix::from_rows(vec![
            vec![Rational::one(), Rational::one(), Rational::zero()],
            vec![Rational::one(), Rational::one(), Rational::zero()],
            vec![Rational::zero(), Rational::zero(), Rational::one()],
        ])
        .unwrap();
        let e = |i| Vector::basis(3, i, Rational::one());
        let cfg = WeightConfig { shape: Shape::I, basis_gram: g, a: vec![e(2), -&e(2)], gamma: vec![], b: vec![e(0), e(1)] };
        assert!(matches!(build_weights(&cfg), Err(Error::DuplicateWeight { .. })));
    }

    #[test]
    fn shape_and_q_must_agree() {
        let cfg = WeightConfig {
            shape: Shape::II,
            basis_gram: GramMatrix::identity(2),
            a: vec![Vector::zeros(2)],
            gamma: vec![],
            b: identity_b(2, 2, 0),
        };
        assert!(matches!(build_weights(&cfg), Err(Error::InvalidConfig(_))));
    }
}
