//! Root sets over an exact bilinear form: the axioms R1–R4, reflections,
//! minimal closure, irreducible components, per-component normalization and
//! the admissibility test.
//!
//! A [`RootSet`] always stores its vectors modulo the radical of its form, so
//! two coordinate tuples naming the same vector of the underlying Euclidean
//! space compare equal. The span of a set is taken to be its own span, never
//! the ambient dimension.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{dot, is_psd, rank, GramMatrix, Rational, Vector};

/// Size guard for [`closure`]; larger than the 240 roots of E8.
pub const DEFAULT_MAX_SIZE: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    R1,
    R2,
    R3,
    R4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A failed axiom together with the vectors that exhibit the failure.
///
/// For R2 the witness is `[u, v]` with `u = ratio · v`; for R3 it is
/// `[α, β]` with `ratio = 2⟨α,β⟩/⟨α,α⟩`; for R4 it is `[α, β, s_α(β)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<Vector>,
    pub ratio: Option<Rational>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = &self.witness;
        match self.axiom {
            Axiom::R1 => write!(f, "R1 violated by {}", w[0]),
            Axiom::R2 => write!(
                f,
                "R2 violated: {} = {} · {} (only ±α may be multiples of α)",
                w[0],
                self.ratio.as_ref().map(ToString::to_string).unwrap_or_default(),
                w[1]
            ),
            Axiom::R3 => write!(
                f,
                "R3 violated: 2⟨α,β⟩/⟨α,α⟩ = {} is not an integer for α = {}, β = {}",
                self.ratio.as_ref().map(ToString::to_string).unwrap_or_default(),
                w[0],
                w[1]
            ),
            Axiom::R4 => {
                write!(f, "R4 violated: reflection of {} in {} gives {}, not in the set", w[1], w[0], w[2])
            }
        }
    }
}

/// Finite set of distinct nonzero vectors sharing one positive semidefinite
/// form, with every pairwise scalar product cached.
#[derive(Clone, PartialEq, Eq)]
pub struct RootSet {
    form: GramMatrix,
    vectors: Vec<Vector>,
    products: Vec<Rational>,
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSet").field("form", &self.form).field("vectors", &self.vectors).finish()
    }
}

impl RootSet {
    /// Builds a root set, silently merging repeated vectors.
    pub fn new(form: GramMatrix, vectors: Vec<Vector>) -> Result<Self> {
        Self::build(form, vectors, false)
    }

    /// Like [`RootSet::new`] but repeated vectors are an error.
    pub fn from_distinct(form: GramMatrix, vectors: Vec<Vector>) -> Result<Self> {
        Self::build(form, vectors, true)
    }

    fn build(form: GramMatrix, vectors: Vec<Vector>, strict: bool) -> Result<Self> {
        if !is_psd(&form) {
            return Err(Error::NotPositiveSemidefinite);
        }
        let reduction = form.radical_reduction()?;
        let mut set = BTreeSet::new();
        for (index, v) in vectors.iter().enumerate() {
            let w = reduction.apply(v)?;
            if w.is_zero() {
                return Err(Error::ZeroVector { index });
            }
            if !set.insert(w) && strict {
                return Err(Error::DuplicateVector { vector: v.to_string() });
            }
        }
        Ok(Self::from_sorted(reduction.form, set.into_iter().collect()))
    }

    /// Assumes `vectors` sorted, distinct, nonzero and `form` nondegenerate.
    fn from_sorted(form: GramMatrix, vectors: Vec<Vector>) -> Self {
        let covectors: Vec<Vector> = vectors.iter().map(|v| covector(&form, v)).collect();
        let n = vectors.len();
        let mut products = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let p = pair(&vectors[i], &covectors[j]);
                products[j * n + i] = p.clone();
                products[i * n + j] = p;
            }
        }
        RootSet { form, vectors, products }
    }

    pub fn empty(form: GramMatrix) -> Result<Self> {
        Self::new(form, Vec::new())
    }

    pub fn form(&self) -> &GramMatrix {
        &self.form
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn product(&self, i: usize, j: usize) -> &Rational {
        &self.products[i * self.vectors.len() + j]
    }

    pub fn norm(&self, i: usize) -> &Rational {
        self.product(i, i)
    }

    pub fn index_of(&self, v: &Vector) -> Option<usize> {
        self.vectors.binary_search(v).ok()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.index_of(v).is_some()
    }

    /// Dimension of the span.
    pub fn rank(&self) -> usize {
        rank(self.vectors.iter().map(|v| v.coords().to_vec()).collect())
    }

    pub fn max_norm(&self) -> Option<&Rational> {
        (0..self.len()).map(|i| self.norm(i)).max()
    }

    pub fn norm_histogram(&self) -> BTreeMap<Rational, usize> {
        let mut h = BTreeMap::new();
        for i in 0..self.len() {
            *h.entry(self.norm(i).clone()).or_insert(0) += 1;
        }
        h
    }

    /// The same vectors measured by `c` times the form.
    pub fn rescaled(&self, c: &Rational) -> RootSet {
        RootSet {
            form: self.form.scaled(c),
            vectors: self.vectors.clone(),
            products: self.products.iter().map(|p| p * c).collect(),
        }
    }

    fn subset(&self, indices: &[usize]) -> RootSet {
        let n = self.len();
        let m = indices.len();
        let mut products = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                products.push(self.products[i * n + j].clone());
            }
        }
        RootSet { form: self.form.clone(), vectors: indices.iter().map(|&i| self.vectors[i].clone()).collect(), products }
    }

    /// Members of `self` that are not in `other` (both over the same form).
    pub fn difference(&self, other: &RootSet) -> Result<RootSet> {
        self.check_same_form(other)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !other.contains(&self.vectors[i])).collect();
        Ok(self.subset(&keep))
    }

    pub fn union(&self, other: &RootSet) -> Result<RootSet> {
        self.check_same_form(other)?;
        let set: BTreeSet<Vector> = self.vectors.iter().chain(other.vectors.iter()).cloned().collect();
        Ok(Self::from_sorted(self.form.clone(), set.into_iter().collect()))
    }

    pub fn is_subset_of(&self, other: &RootSet) -> bool {
        self.form == other.form && self.vectors.iter().all(|v| other.contains(v))
    }

    fn check_same_form(&self, other: &RootSet) -> Result<()> {
        if self.form != other.form {
            return Err(Error::InvalidConfig("root sets live over different forms".into()));
        }
        Ok(())
    }

    /// Scalar product of two vectors in stored coordinates.
    pub fn dot(&self, u: &Vector, v: &Vector) -> Result<Rational> {
        dot(u, v, &self.form)
    }
}

fn covector(g: &GramMatrix, v: &Vector) -> Vector {
    let n = g.dim();
    Vector::new(
        (0..n)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..n {
                    let gij = g.get(i, j);
                    if !gij.is_zero() && !v[j].is_zero() {
                        acc += gij * &v[j];
                    }
                }
                acc
            })
            .collect(),
    )
}

fn pair(u: &Vector, covector_v: &Vector) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in u.coords().iter().zip(covector_v.coords()) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

fn two() -> Rational {
    Rational::from_integer(2)
}

/// `2⟨α,β⟩/⟨α,α⟩`
fn cartan_ratio(alpha_beta: &Rational, alpha_norm: &Rational) -> Rational {
    (two() * alpha_beta).checked_div(alpha_norm).expect("nonzero vectors have positive norm")
}

/// `u = c·v` test for nonzero vectors of a nondegenerate form, via equality
/// in Cauchy–Schwarz. Returns `c` when parallel.
fn parallel_ratio(uv: &Rational, vv: &Rational, uu: &Rational) -> Option<Rational> {
    if uv * uv == uu * vv {
        Some(uv.checked_div(vv).expect("positive norm"))
    } else {
        None
    }
}

fn is_unit(c: &Rational) -> bool {
    c.abs() == Rational::one()
}

/// `s_α(v) = v − (2⟨α,v⟩/⟨α,α⟩) α`
pub fn reflect(alpha: &Vector, v: &Vector, g: &GramMatrix) -> Result<Vector> {
    let aa = dot(alpha, alpha, g)?;
    if aa.is_zero() {
        return Err(Error::ZeroVector { index: 0 });
    }
    let av = dot(alpha, v, g)?;
    Ok(v.sub_scaled(&cartan_ratio(&av, &aa), alpha))
}

/// Outcome of checking R1–R4.
#[derive(Clone, Debug)]
pub struct RootSystemCheck {
    pub violations: Vec<AxiomViolation>,
}

impl RootSystemCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks R1–R4 on `s` within its own span. Every violation found is reported.
pub fn is_root_system(s: &RootSet) -> RootSystemCheck {
    let n = s.len();
    let mut violations = Vec::new();
    // R1: finiteness is structural and zero vectors are rejected on construction.
    for i in 0..n {
        if s.norm(i).is_zero() {
            violations.push(AxiomViolation { axiom: Axiom::R1, witness: vec![s.vectors[i].clone()], ratio: None });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(c) = parallel_ratio(s.product(i, j), s.norm(j), s.norm(i)) {
                if !is_unit(&c) {
                    violations.push(AxiomViolation {
                        axiom: Axiom::R2,
                        witness: vec![s.vectors[i].clone(), s.vectors[j].clone()],
                        ratio: Some(c),
                    });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let c = cartan_ratio(s.product(i, j), s.norm(i));
            if !c.is_integer() {
                violations.push(AxiomViolation {
                    axiom: Axiom::R3,
                    witness: vec![s.vectors[i].clone(), s.vectors[j].clone()],
                    ratio: Some(c.clone()),
                });
            }
            let image = s.vectors[j].sub_scaled(&c, &s.vectors[i]);
            if !s.contains(&image) {
                violations.push(AxiomViolation {
                    axiom: Axiom::R4,
                    witness: vec![s.vectors[i].clone(), s.vectors[j].clone(), image],
                    ratio: None,
                });
            }
        }
    }
    RootSystemCheck { violations }
}

/// Growing set used by [`closure`]; keeps norms and scalar products of every
/// member so each reflection costs one lookup.
struct Worklist<'a> {
    form: &'a GramMatrix,
    members: Vec<Vector>,
    covectors: Vec<Vector>,
    index: HashMap<Vector, usize>,
    products: Vec<Vec<Rational>>,
    max_size: usize,
}

impl<'a> Worklist<'a> {
    fn new(form: &'a GramMatrix, max_size: usize) -> Self {
        Worklist { form, members: Vec::new(), covectors: Vec::new(), index: HashMap::new(), products: Vec::new(), max_size }
    }

    /// Inserts `w`, checking R2 and R3 against every existing member.
    fn insert(&mut self, w: Vector) -> Result<()> {
        if self.index.contains_key(&w) {
            return Ok(());
        }
        if self.members.len() >= self.max_size {
            return Err(Error::SizeExceeded { limit: self.max_size });
        }
        let cw = covector(self.form, &w);
        let ww = pair(&w, &cw);
        let mut row = Vec::with_capacity(self.members.len() + 1);
        for (k, u) in self.members.iter().enumerate() {
            let uw = pair(u, &cw);
            let uu = &self.products[k][k];
            if let Some(c) = parallel_ratio(&uw, uu, &ww) {
                if !is_unit(&c) {
                    return Err(Error::NotASubsystem(AxiomViolation {
                        axiom: Axiom::R2,
                        witness: vec![w.clone(), u.clone()],
                        ratio: Some(c),
                    }));
                }
            }
            for (a, a_norm, b) in [(u, uu, &w), (&w, &ww, u)] {
                let c = cartan_ratio(&uw, a_norm);
                if !c.is_integer() {
                    return Err(Error::NotASubsystem(AxiomViolation {
                        axiom: Axiom::R3,
                        witness: vec![a.clone(), b.clone()],
                        ratio: Some(c),
                    }));
                }
            }
            row.push(uw);
        }
        for (k, p) in row.iter().enumerate() {
            self.products[k].push(p.clone());
        }
        row.push(ww);
        self.products.push(row);
        self.index.insert(w.clone(), self.members.len());
        self.members.push(w);
        self.covectors.push(cw);
        Ok(())
    }

    /// `s_{m_a}(m_b)`; the coefficient is an integer because R3 was checked on insertion.
    fn reflection(&self, a: usize, b: usize) -> Vector {
        let c = cartan_ratio(&self.products[a][b], &self.products[a][a]);
        if c.is_zero() {
            return self.members[b].clone();
        }
        self.members[b].sub_scaled(&c, &self.members[a])
    }
}

/// Least superset of `p` closed under all of its own reflections.
///
/// Fails with [`Error::NotASubsystem`] as soon as any two generated vectors
/// violate R2 or R3 (then `p` lies in no root system), and with
/// [`Error::SizeExceeded`] beyond `max_size` vectors.
pub fn closure(p: &RootSet, max_size: usize) -> Result<RootSet> {
    let mut work = Worklist::new(&p.form, max_size);
    for v in &p.vectors {
        work.insert(v.clone())?;
    }
    let mut i = 0;
    while i < work.members.len() {
        for j in 0..=i {
            let a = work.reflection(i, j);
            work.insert(a)?;
            let b = work.reflection(j, i);
            work.insert(b)?;
        }
        i += 1;
    }
    let mut members = work.members;
    members.sort();
    Ok(RootSet::from_sorted(p.form.clone(), members))
}

/// Irreducible components: classes of the transitive closure of
/// non-orthogonality, ordered by their least member.
pub fn components(s: &RootSet) -> Vec<RootSet> {
    let n = s.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !s.product(i, j).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    classes.into_values().map(|idx| s.subset(&idx)).collect()
}

/// A component rescaled so that its longest vector has norm 1.
#[derive(Clone, Debug)]
pub struct NormalizedComponent {
    pub set: RootSet,
    /// The factor applied to the form.
    pub factor: Rational,
}

pub fn normalize(s: &RootSet) -> Vec<NormalizedComponent> {
    components(s)
        .into_iter()
        .map(|c| {
            let factor = c.max_norm().expect("components are nonempty").recip().expect("positive norm");
            NormalizedComponent { set: c.rescaled(&factor), factor }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Admissibility {
    pub admissible: bool,
    pub closure: RootSet,
    /// `closure \ P`
    pub complement: RootSet,
    /// Axiom failures of the complement; empty iff admissible.
    pub violations: Vec<AxiomViolation>,
}

/// `P` is admissible when `P̄ \ P` is itself a root system within its span.
pub fn is_admissible(p: &RootSet, max_size: usize) -> Result<Admissibility> {
    let closed = closure(p, max_size)?;
    let complement = closed.difference(p)?;
    let check = is_root_system(&complement);
    Ok(Admissibility { admissible: check.holds(), closure: closed, complement, violations: check.violations })
}

/// Integer helper for tests and catalog code.
pub(crate) fn int(n: i64) -> Rational {
    Rational::from_bigint(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, Family};
    use crate::exact::SignVector;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    /// `{±β1±β2±β3±β4}` over `(1/4)·Id₄`.
    fn w_case_one() -> RootSet {
        let vs = SignVector::all(4).iter().map(SignVector::to_vector).collect();
        RootSet::from_distinct(GramMatrix::scalar(4, r(1, 4)), vs).unwrap()
    }

    fn gram(rows: &[&[(i64, i64)]]) -> GramMatrix {
        GramMatrix::from_rows(rows.iter().map(|row| row.iter().map(|&(n, d)| r(n, d)).collect()).collect()).unwrap()
    }

    fn sign_set(g: GramMatrix) -> RootSet {
        let q = g.dim();
        RootSet::from_distinct(g, SignVector::all(q).iter().map(SignVector::to_vector).collect()).unwrap()
    }

    #[test]
    fn construction_rejects_zero_and_non_psd() {
        let g = GramMatrix::identity(2);
        assert!(matches!(RootSet::new(g.clone(), vec![Vector::from_ints(&[0, 0])]), Err(Error::ZeroVector { .. })));
        let v = Vector::from_ints(&[1, 0]);
        assert!(matches!(RootSet::from_distinct(g.clone(), vec![v.clone(), v.clone()]), Err(Error::DuplicateVector { .. })));
        assert_eq!(RootSet::new(g, vec![v.clone(), v]).unwrap().len(), 1);
        let bad = GramMatrix::diagonal(vec![r(1, 1), r(-1, 1)]);
        assert!(matches!(RootSet::new(bad, vec![]), Err(Error::NotPositiveSemidefinite)));
    }

    #[test]
    fn catalog_b4_is_root_system() {
        let b4 = build(Family::B, 4).unwrap();
        let check = is_root_system(&b4);
        assert!(check.holds(), "{:?}", check.violations);
    }

    #[test]
    fn multiples_violate_r2() {
        let g = GramMatrix::identity(1);
        let s = RootSet::new(g, [1, -1, 3, -3].iter().map(|&c| Vector::from_ints(&[c])).collect()).unwrap();
        let check = is_root_system(&s);
        assert!(!check.holds());
        assert!(check.violations.iter().any(|v| v.axiom == Axiom::R2 && v.ratio.as_ref().unwrap().abs() == r(3, 1)));
    }

    #[test]
    fn case_one_weights_violate_r4() {
        let w = w_case_one();
        let check = is_root_system(&w);
        assert!(!check.holds());
        // s_β(β − 2β₁) = −2β₁ with β the all-plus vector.
        let beta = Vector::from_ints(&[1, 1, 1, 1]);
        let v = Vector::from_ints(&[-1, 1, 1, 1]);
        let expected = Vector::from_ints(&[-2, 0, 0, 0]);
        assert!(check
            .violations
            .iter()
            .any(|x| x.axiom == Axiom::R4 && x.witness[0] == beta && x.witness[1] == v && x.witness[2] == expected));
        // every R4 image is ±2β_i
        for x in check.violations.iter().filter(|x| x.axiom == Axiom::R4) {
            let nonzero: Vec<_> = x.witness[2].coords().iter().filter(|c| !c.is_zero()).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(nonzero[0].abs(), r(2, 1));
        }
    }

    #[test]
    fn reflection_examples() {
        let g = GramMatrix::scalar(4, r(1, 4));
        let alpha = Vector::from_ints(&[1, 1, 1, 1]);
        assert_eq!(reflect(&alpha, &alpha, &g).unwrap(), -&alpha);
        let orth = Vector::from_ints(&[1, -1, 1, -1]);
        assert_eq!(reflect(&alpha, &orth, &g).unwrap(), orth);
        // s_β(β − 2β₂): ⟨β, β−2β₂⟩ = 1/2, ⟨β,β⟩ = 1, so the image is β − 2β₂ − β = −2β₂.
        let v = Vector::from_ints(&[1, -1, 1, 1]);
        assert_eq!(reflect(&alpha, &v, &g).unwrap(), Vector::from_ints(&[0, -2, 0, 0]));
        assert!(matches!(reflect(&Vector::zeros(4), &v, &g), Err(Error::ZeroVector { .. })));
    }

    #[test]
    fn closure_of_root_system_is_itself() {
        let d4 = build(Family::D, 4).unwrap();
        let c = closure(&d4, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(c, d4);
        assert_eq!(c.len(), 24);
    }

    #[test]
    fn closure_of_case_one_weights() {
        let w = w_case_one();
        let c = closure(&w, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(c.len(), 24);
        let new = c.difference(&w).unwrap();
        let mut expected = Vec::new();
        for i in 0..4 {
            for s in [2, -2] {
                expected.push(Vector::basis(4, i, int(s)));
            }
        }
        expected.sort();
        assert_eq!(new.vectors(), &expected[..]);
        assert!(is_root_system(&c).holds());
    }

    #[test]
    fn closure_reports_r2_and_r3() {
        let g = GramMatrix::identity(1);
        let s = RootSet::new(g, vec![Vector::from_ints(&[1]), Vector::from_ints(&[3])]).unwrap();
        match closure(&s, DEFAULT_MAX_SIZE) {
            Err(Error::NotASubsystem(v)) => assert_eq!(v.axiom, Axiom::R2),
            other => panic!("unexpected {other:?}"),
        }
        // B2 closes fine, (1,0) against (3,1) gives 2·3/1 = 6 but 2·3/10 = 3/5
        let s = RootSet::new(GramMatrix::identity(2), vec![Vector::from_ints(&[1, 0]), Vector::from_ints(&[1, 1])])
            .unwrap();
        assert!(closure(&s, DEFAULT_MAX_SIZE).is_ok());
        let s = RootSet::new(GramMatrix::identity(2), vec![Vector::from_ints(&[1, 0]), Vector::from_ints(&[3, 1])])
            .unwrap();
        match closure(&s, DEFAULT_MAX_SIZE) {
            Err(Error::NotASubsystem(v)) => assert_eq!(v.axiom, Axiom::R3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn size_guard() {
        let e8 = build(Family::E, 8).unwrap();
        assert!(matches!(closure(&e8, 100), Err(Error::SizeExceeded { limit: 100 })));
    }

    #[test]
    fn component_examples() {
        let d4 = build(Family::D, 4).unwrap();
        assert_eq!(components(&d4).len(), 1);
        // {±2β₂, ±2β₃} with β₂ ⊥ β₃
        let g = GramMatrix::scalar(3, r(1, 4));
        let vs = vec![
            Vector::from_ints(&[0, 2, 0]),
            Vector::from_ints(&[0, -2, 0]),
            Vector::from_ints(&[0, 0, 2]),
            Vector::from_ints(&[0, 0, -2]),
        ];
        let s = RootSet::new(g, vs).unwrap();
        let comps = components(&s);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn components_are_mutually_orthogonal() {
        let s = build(Family::D, 2).unwrap();
        let comps = components(&s);
        assert_eq!(comps.len(), 2);
        for u in comps[0].vectors() {
            for v in comps[1].vectors() {
                assert!(s.dot(u, v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let w = w_case_one();
        let n = normalize(&closure(&w, DEFAULT_MAX_SIZE).unwrap());
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].factor, Rational::one());
        let b4 = build(Family::B, 4).unwrap();
        let n = normalize(&b4);
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].factor, r(1, 2));
        assert_eq!(n[0].set.max_norm(), Some(&Rational::one()));
        assert_eq!(n[0].set.norm_histogram()[&r(1, 2)], 8);
    }

    #[test]
    fn admissibility_examples() {
        let m1 = gram(&[&[(1, 2), (0, 1), (0, 1)], &[(0, 1), (1, 4), (0, 1)], &[(0, 1), (0, 1), (1, 4)]]);
        let a = is_admissible(&sign_set(m1), DEFAULT_MAX_SIZE).unwrap();
        assert!(a.admissible);
        assert_eq!(a.closure.len(), 12);
        assert_eq!(a.complement.len(), 4);

        let m3 = gram(&[&[(3, 8), (1, 16), (1, 16)], &[(1, 16), (1, 8), (1, 16)], &[(1, 16), (1, 16), (1, 8)]]);
        assert!(!is_admissible(&sign_set(m3), DEFAULT_MAX_SIZE).unwrap().admissible);

        let m0 = gram(&[
            &[(1, 4), (0, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 8), (1, 16), (1, 16)],
            &[(0, 1), (1, 16), (1, 8), (1, 16)],
            &[(0, 1), (1, 16), (1, 16), (1, 8)],
        ]);
        assert!(!is_admissible(&sign_set(m0), DEFAULT_MAX_SIZE).unwrap().admissible);
    }

    #[test]
    fn degenerate_form_g2_case() {
        // β₁ = 2β₃ in this form; the eight sign vectors stay distinct.
        let m2 = gram(&[&[(1, 3), (0, 1), (1, 6)], &[(0, 1), (1, 4), (0, 1)], &[(1, 6), (0, 1), (1, 12)]]);
        let p = sign_set(m2);
        assert_eq!(p.len(), 8);
        assert_eq!(p.rank(), 2);
        let a = is_admissible(&p, DEFAULT_MAX_SIZE).unwrap();
        assert!(a.admissible);
        assert_eq!(a.closure.len(), 12);
        assert_eq!(components(&a.complement).len(), 2);
    }
}
