use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Vector};
use crate::error::{Error, Result};

/// Above this dimension the principal-minor test (2^dim determinants) gives
/// way to a symmetric elimination with the same verdict.
const MINOR_TEST_MAX_DIM: usize = 12;

/// Symmetric rational matrix of basis scalar products.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GramMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl GramMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            entries.extend(row);
        }
        let g = GramMatrix { dim, entries };
        for i in 0..dim {
            for j in (i + 1)..dim {
                if g.get(i, j) != g.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(g)
    }

    pub fn diagonal(diag: Vec<Rational>) -> Self {
        let dim = diag.len();
        let mut entries = vec![Rational::zero(); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        GramMatrix { dim, entries }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        Self::diagonal(vec![c; dim])
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Rational::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim).map(<[Rational]>::to_vec).collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn scaled(&self, c: &Rational) -> GramMatrix {
        GramMatrix { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Simultaneous permutation and sign change: entry `(i, j)` of the result
    /// is `s_i s_j g[p_i][p_j]`.
    pub fn transformed(&self, perm: &[usize], signs: &[i8]) -> GramMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = self.get(perm[i], perm[j]);
                entries.push(if signs[i] * signs[j] < 0 { -v } else { v.clone() });
            }
        }
        GramMatrix { dim: n, entries }
    }

    /// Gram matrix `T G T^t` of the vectors whose coordinates are the rows of `t`.
    pub fn congruent(&self, t: &[Vector]) -> Result<GramMatrix> {
        let rows = t
            .iter()
            .map(|u| t.iter().map(|v| dot(u, v, self)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GramMatrix::from_rows(rows)
    }

    pub fn determinant(&self) -> Rational {
        determinant(self.rows())
    }

    pub fn rank(&self) -> usize {
        rank(self.rows())
    }

    pub fn principal_minor(&self, indices: &[usize]) -> Rational {
        let rows = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        determinant(rows)
    }

    /// Splits off the radical of a positive semidefinite form.
    ///
    /// Returns the pivot basis indices spanning the quotient, the image of
    /// every original basis vector in pivot coordinates and the (now
    /// nondegenerate) restricted form.
    pub fn radical_reduction(&self) -> Result<FormReduction> {
        let n = self.dim;
        let pivots = pivot_columns(self.rows());
        if pivots.len() == n {
            return Ok(FormReduction::identity(self.clone()));
        }
        let k = pivots.len();
        let restricted = GramMatrix::from_rows(
            pivots.iter().map(|&i| pivots.iter().map(|&j| self.get(i, j).clone()).collect()).collect(),
        )?;
        let mut images = Vec::with_capacity(n);
        for col in 0..n {
            let rhs: Vec<Rational> = pivots.iter().map(|&p| self.get(p, col).clone()).collect();
            let coeffs = solve(restricted.rows(), rhs).ok_or(Error::NotPositiveSemidefinite)?;
            debug_assert_eq!(coeffs.len(), k);
            images.push(Vector::new(coeffs));
        }
        Ok(FormReduction { source_dim: n, pivots, images, form: restricted })
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GramMatrix{:?}", self.rows())
    }
}

impl Serialize for GramMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GramMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        GramMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Coordinates modulo the radical of a semidefinite form.
#[derive(Clone, Debug)]
pub struct FormReduction {
    source_dim: usize,
    pub pivots: Vec<usize>,
    images: Vec<Vector>,
    pub form: GramMatrix,
}

impl FormReduction {
    fn identity(form: GramMatrix) -> Self {
        let n = form.dim();
        FormReduction {
            source_dim: n,
            pivots: (0..n).collect(),
            images: (0..n).map(|i| Vector::basis(n, i, Rational::one())).collect(),
            form,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.pivots.len() == self.source_dim
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.dim() != self.source_dim {
            return Err(Error::DimensionMismatch { expected: self.source_dim, found: v.dim() });
        }
        if self.is_identity() {
            return Ok(v.clone());
        }
        let mut out = vec![Rational::zero(); self.pivots.len()];
        for (x, image) in v.coords().iter().zip(&self.images) {
            if x.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(image.coords()) {
                *o += x * c;
            }
        }
        Ok(Vector::new(out))
    }
}

/// `u^t g v`, evaluated exactly.
pub fn dot(u: &Vector, v: &Vector, g: &GramMatrix) -> Result<Rational> {
    let n = g.dim();
    if u.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u.dim() });
    }
    if v.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
    }
    let mut acc = Rational::zero();
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        let mut row = Rational::zero();
        for j in 0..n {
            let gij = g.get(i, j);
            if !gij.is_zero() && !v[j].is_zero() {
                row += gij * &v[j];
            }
        }
        acc += &u[i] * row;
    }
    Ok(acc)
}

/// Exact positive-semidefiniteness: every principal minor is nonnegative.
pub fn is_psd(g: &GramMatrix) -> bool {
    if g.is_diagonal() {
        return (0..g.dim()).all(|i| !g.get(i, i).is_negative());
    }
    if g.dim() > MINOR_TEST_MAX_DIM {
        return is_psd_by_elimination(g);
    }
    let n = g.dim();
    (1u32..(1u32 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        !g.principal_minor(&idx).is_negative()
    })
}

/// Symmetric Gaussian elimination: a semidefinite form never produces a
/// negative pivot, and a zero pivot must come with a zero row.
pub(crate) fn is_psd_by_elimination(g: &GramMatrix) -> bool {
    let n = g.dim();
    let mut a = g.rows();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if a[k][(k + 1)..].iter().any(|x| !x.is_zero()) {
                return false;
            }
            continue;
        }
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].checked_div(&pivot).expect("nonzero pivot");
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    true
}

pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].checked_div(&pivot).expect("nonzero pivot");
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    det
}

/// Row-echelon reduction; returns the pivot column of each nonzero row.
fn echelon(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][c].clone();
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].checked_div(&pivot).expect("nonzero pivot");
            for j in c..cols {
                let delta = &f * &a[r][j];
                a[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    echelon(&mut rows).len()
}

pub(crate) fn pivot_columns(mut rows: Vec<Vec<Rational>>) -> Vec<usize> {
    echelon(&mut rows)
}

/// Solves the square nonsingular system `a x = b`; `None` if singular.
pub fn solve(a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, bi)| {
            row.push(bi);
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(p, k);
        let pivot = aug[k][k].clone();
        for j in k..=n {
            aug[k][j] = aug[k][j].checked_div(&pivot).ok()?;
        }
        for i in 0..n {
            if i == k || aug[i][k].is_zero() {
                continue;
            }
            let f = aug[i][k].clone();
            for j in k..=n {
                let delta = &f * &aug[k][j];
                aug[i][j] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().expect("augmented column")).collect())
}
