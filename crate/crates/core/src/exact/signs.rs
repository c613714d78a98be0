use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{GramMatrix, Rational, Vector};
use crate::error::{Error, Result};

/// A tuple over {+1, -1}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidConfig("sign vector must be nonempty".into()));
        }
        if entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidConfig("sign vector entries must be ±1".into()));
        }
        Ok(SignVector(entries))
    }

    pub fn all_plus(q: usize) -> Self {
        SignVector(vec![1; q])
    }

    /// All `2^q` sign vectors, enumerated with bit `j` of the counter set
    /// meaning `ε_j = -1`.
    pub fn all(q: usize) -> Vec<SignVector> {
        (0..(1u64 << q))
            .map(|mask| SignVector((0..q).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect()))
            .collect()
    }

    /// One representative of every `{ε, -ε}` pair: those with `ε_1 = +1`.
    pub fn classes(q: usize) -> Vec<SignVector> {
        Self::all(q).into_iter().filter(|e| e.0[0] == 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn product(&self) -> i8 {
        self.0.iter().product()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn to_vector(&self) -> Vector {
        Vector::new(self.0.iter().map(|&e| Rational::from_integer(e.into())).collect())
    }

    /// `Σ ε_j b_j` over the given vectors.
    pub fn combine(&self, basis: &[Vector]) -> Vector {
        let dim = basis.first().map_or(0, Vector::dim);
        let mut acc = Vector::zeros(dim);
        for (e, b) in self.0.iter().zip(basis) {
            acc = if *e > 0 { &acc + b } else { &acc - b };
        }
        acc
    }

    /// `εᵀ g ε`
    pub fn quadratic(&self, g: &GramMatrix) -> Rational {
        let n = self.0.len();
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                let v = g.get(i, j);
                if self.0[i] * self.0[j] > 0 {
                    acc += v;
                } else {
                    acc -= v;
                }
            }
        }
        acc
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{}", if *e > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of polarization: the off-diagonal entries are determined, the
/// diagonal only through its trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedGram {
    pub q: usize,
    /// `offdiag[i][j]` for `i != j`; the diagonal slots hold `None`.
    pub offdiag: Vec<Vec<Option<Rational>>>,
    pub trace: Rational,
}

impl PolarizedGram {
    pub fn get(&self, i: usize, j: usize) -> Option<&Rational> {
        self.offdiag[i][j].as_ref()
    }
}

/// Recovers `g_ij = 2^{-q-1} Σ_ε ε_i ε_j N(ε)` for `i != j` and
/// `tr g = 2^{-q} Σ_ε N(ε)` from the norms of all sign combinations.
pub fn offdiag_from_norms(q: usize, norms: &BTreeMap<SignVector, Rational>) -> Result<PolarizedGram> {
    let all = SignVector::all(q);
    for e in &all {
        if !norms.contains_key(e) {
            return Err(Error::IncompleteAssignment { missing: e.to_string() });
        }
    }
    let scale = Rational::from_bigint(num_bigint::BigInt::from(1u8) << (q + 1)).recip()?;
    let mut offdiag = vec![vec![None; q]; q];
    for i in 0..q {
        for j in (i + 1)..q {
            let s: Rational = all
                .iter()
                .map(|e| {
                    let n = &norms[e];
                    if e.get(i) * e.get(j) > 0 {
                        n.clone()
                    } else {
                        -n
                    }
                })
                .sum();
            let g = s * &scale;
            offdiag[i][j] = Some(g.clone());
            offdiag[j][i] = Some(g);
        }
    }
    let total: Rational = all.iter().map(|e| &norms[e]).sum();
    let trace = total * scale * Rational::from_integer(2);
    Ok(PolarizedGram { q, offdiag, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norms_of(g: &GramMatrix) -> BTreeMap<SignVector, Rational> {
        SignVector::all(g.dim()).into_iter().map(|e| (e.clone(), e.quadratic(g))).collect()
    }

    #[test]
    fn counts() {
        assert_eq!(SignVector::all(4).len(), 16);
        assert_eq!(SignVector::classes(4).len(), 8);
        assert_eq!(SignVector::all_plus(3).product(), 1);
        assert!(SignVector::new(vec![]).is_err());
        assert!(SignVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn constant_norms_give_orthogonal_offdiag() {
        let norms: BTreeMap<_, _> = SignVector::all(2).into_iter().map(|e| (e, Rational::one())).collect();
        let p = offdiag_from_norms(2, &norms).unwrap();
        assert_eq!(p.get(0, 1), Some(&Rational::zero()));
        assert_eq!(p.trace, Rational::one());
    }

    #[test]
    fn diagonal_round_trip() {
        let g = GramMatrix::scalar(4, Rational::frac(1, 4));
        let p = offdiag_from_norms(4, &norms_of(&g)).unwrap();
        for i in 0..4 {
            assert!(p.get(i, i).is_none());
            for j in 0..4 {
                if i != j {
                    assert_eq!(p.get(i, j), Some(&Rational::zero()));
                }
            }
        }
        assert_eq!(p.trace, Rational::one());
    }

    #[test]
    fn incomplete_assignment() {
        let mut norms: BTreeMap<_, _> = SignVector::all(3).into_iter().map(|e| (e, Rational::one())).collect();
        norms.remove(&SignVector::all_plus(3));
        assert!(matches!(offdiag_from_norms(3, &norms), Err(Error::IncompleteAssignment { .. })));
    }
}
