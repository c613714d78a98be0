//! Exhaustive search for the Gram matrices of sign-combination root sets,
//! the half-sign classification in eight variables and the bounds on `q`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{is_psd, offdiag_from_norms, rank, solve, GramMatrix, Rational, SignVector, Vector};
use crate::rootsys::{closure, is_admissible, RootSet, DEFAULT_MAX_SIZE};

/// Supported range of `enumerate_p1_grams`.
pub const MIN_Q: usize = 2;
pub const MAX_Q: usize = 5;

/// Allowed norms of sign combinations once the largest one is 1.
pub fn norm_values() -> [Rational; 3] {
    [Rational::one(), Rational::frac(1, 2), Rational::frac(1, 3)]
}

/// Same values scaled by 6.
const SCALED_NORMS: [i64; 3] = [6, 3, 2];

/// Calls `f` on every permutation of `0..n` in lexicographic order.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Entries over a common denominator; `None` if they do not fit.
fn scaled_entries(g: &GramMatrix) -> Option<Vec<i128>> {
    let n = g.dim();
    let mut l = num_bigint::BigInt::from(1);
    for i in 0..n {
        for j in 0..n {
            l = l.lcm(g.get(i, j).denom());
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = g.get(i, j);
            let v = x.numer() * (&l / x.denom());
            out.push(i128::try_from(v).ok()?);
        }
    }
    Some(out)
}

fn least_transform<T: Ord + Clone + std::ops::Neg<Output = T>>(n: usize, a: &[T]) -> (Vec<usize>, Vec<i8>) {
    let mut best: Option<Vec<T>> = None;
    let mut best_transform = ((0..n).collect::<Vec<_>>(), vec![1i8; n]);
    let mut cur: Vec<T> = Vec::with_capacity(n * n);
    for_each_permutation(n, |perm| {
        for mask in 0..(1u32 << n.saturating_sub(1)) {
            let signs: Vec<i8> = (0..n).map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect();
            cur.clear();
            let mut ordering = std::cmp::Ordering::Equal;
            'fill: for i in 0..n {
                for j in 0..n {
                    let v = a[perm[i] * n + perm[j]].clone();
                    let v = if signs[i] * signs[j] < 0 { -v } else { v };
                    if ordering == std::cmp::Ordering::Equal {
                        if let Some(b) = &best {
                            ordering = v.cmp(&b[i * n + j]);
                            if ordering == std::cmp::Ordering::Greater {
                                break 'fill;
                            }
                        } else {
                            ordering = std::cmp::Ordering::Less;
                        }
                    }
                    cur.push(v);
                }
            }
            if ordering == std::cmp::Ordering::Less {
                best = Some(cur.clone());
                best_transform = (perm.to_vec(), signs);
            }
        }
    });
    best_transform
}

/// Lexicographically least (row-major) matrix among all simultaneous
/// permutations and sign changes of `g`.
pub fn canonical_form(g: &GramMatrix) -> GramMatrix {
    let n = g.dim();
    if g.is_diagonal() {
        let mut d: Vec<Rational> = (0..n).map(|i| g.get(i, i).clone()).collect();
        d.sort();
        return GramMatrix::diagonal(d);
    }
    let (perm, signs) = match scaled_entries(g) {
        Some(a) => least_transform(n, &a),
        None => {
            let a: Vec<Rational> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| g.get(i, j).clone()).collect();
            least_transform(n, &a)
        }
    };
    g.transformed(&perm, &signs)
}

/// A Gram matrix together with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalGram {
    pub g: GramMatrix,
    pub canonical: GramMatrix,
}

impl CanonicalGram {
    pub fn new(g: GramMatrix) -> Self {
        let canonical = canonical_form(&g);
        CanonicalGram { g, canonical }
    }
}

/// The `2^q` vectors `Σ ε_j β_j` over the form `g`.
pub fn sign_root_set(g: &GramMatrix) -> Result<RootSet> {
    RootSet::from_distinct(g.clone(), SignVector::all(g.dim()).iter().map(SignVector::to_vector).collect())
}

/// The `2^{q-1}` vectors `Σ ε_j β_j` with `∏ ε_j = ±1`.
pub fn half_sign_root_set(g: &GramMatrix, even: bool) -> Result<RootSet> {
    let want = if even { 1 } else { -1 };
    RootSet::from_distinct(
        g.clone(),
        SignVector::all(g.dim()).iter().filter(|e| e.product() == want).map(SignVector::to_vector).collect(),
    )
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub q: usize,
    /// Norm assignments visited (the all-plus class is fixed to 1).
    pub assignments: u64,
    /// Assignments that are the norms of some quadratic form.
    pub quadratic: u64,
    /// Diagonal choices consistent with the trace.
    pub diagonals: u64,
    /// Diagonal choices passing every pair condition.
    pub pair_checked: u64,
    pub psd: u64,
    pub subsystems: u64,
    pub canonical_solutions: usize,
}

/// Sign-class data in the scaled integer model: norms and products are
/// multiplied by `6·2^q`, where every quantity of the search is integral.
struct Scaled {
    q: usize,
    classes: Vec<SignVector>,
    /// Even subsets of size at least 4, as bit masks.
    walsh: Vec<u32>,
}

fn character(e: &SignVector, mask: u32) -> i64 {
    (0..e.len()).filter(|&i| mask >> i & 1 == 1).map(|i| i64::from(e.get(i))).product()
}

impl Scaled {
    fn new(q: usize) -> Self {
        let classes = SignVector::classes(q);
        let walsh = (0u32..(1 << q)).filter(|m| m.count_ones() >= 4 && m.count_ones() % 2 == 0).collect();
        Scaled { q, classes, walsh }
    }

    fn k(&self) -> i64 {
        6 << self.q
    }
}

/// Quadratic-form value `εᵀ g ε` with `g` given row-major.
fn quad(g: &[i64], q: usize, e: &[i8], f: &[i8]) -> i64 {
    let mut acc = 0;
    for i in 0..q {
        for j in 0..q {
            acc += i64::from(e[i]) * i64::from(f[j]) * g[i * q + j];
        }
    }
    acc
}

/// Checks every pair condition for the sign vectors of `g` (scaled).
fn pairs_ok(g: &[i64], q: usize, vectors: &[SignVector]) -> bool {
    let norms: Vec<i64> = vectors.iter().map(|e| quad(g, q, e.entries(), e.entries())).collect();
    if norms.iter().any(|&n| n <= 0) {
        return false;
    }
    for a in 0..vectors.len() {
        for b in (a + 1)..vectors.len() {
            if vectors[b] == vectors[a].negated() {
                continue;
            }
            let (na, nb) = (norms[a], norms[b]);
            let p = quad(g, q, vectors[a].entries(), vectors[b].entries());
            // distinct and not opposite as vectors
            if na + nb - 2 * p == 0 || na + nb + 2 * p == 0 {
                return false;
            }
            let m = na.max(nb);
            if !(p == 0 || 2 * p == m || 2 * p == -m) {
                return false;
            }
        }
    }
    true
}

fn to_gram(g: &[i64], q: usize, k: i64) -> GramMatrix {
    GramMatrix::from_rows((0..q).map(|i| (0..q).map(|j| Rational::frac(g[i * q + j], k)).collect()).collect())
        .expect("symmetric by construction")
}

fn exact_norms(s: &Scaled, n: &[i64]) -> BTreeMap<SignVector, Rational> {
    let mut map = BTreeMap::new();
    for (e, &v) in s.classes.iter().zip(n) {
        let r = Rational::frac(v, 6);
        map.insert(e.negated(), r.clone());
        map.insert(e.clone(), r);
    }
    map
}

/// Resolves the diagonal for one quadratic norm assignment and collects
/// every realizable Gram matrix.
fn resolve(s: &Scaled, n: &[i64], vectors: &[SignVector], stats: &mut EnumerationStats, out: &mut BTreeSet<GramMatrix>) -> Result<()> {
    let q = s.q;
    let k = s.k();
    // Off-diagonal and trace through the exact polarization identities, then
    // back to the scaled model.
    let polar = offdiag_from_norms(q, &exact_norms(s, n))?;
    let kr = Rational::from_integer(k);
    let to_scaled = |x: &Rational| (x * &kr).to_i64().expect("integral in the scaled model");
    let mut off = vec![0i64; q * q];
    for i in 0..q {
        for j in 0..q {
            if i != j {
                off[i * q + j] = to_scaled(polar.get(i, j).expect("off-diagonal"));
            }
        }
    }
    let trace = to_scaled(&polar.trace);
    // ⟨β, β − 2β_i⟩ = c_i with c_i ∈ {0, ±1/2}: d_i = (1 − c_i)/2 − Σ_{j≠i} g_ij.
    let half_minus_c = [k / 2, k / 4, 3 * k / 4];
    let choices = 3usize.pow(q as u32);
    for code in 0..choices {
        let mut g = off.clone();
        let mut c = code;
        let mut tr = 0;
        for i in 0..q {
            let row: i64 = (0..q).filter(|&j| j != i).map(|j| off[i * q + j]).sum();
            g[i * q + i] = half_minus_c[c % 3] - row;
            tr += g[i * q + i];
            c /= 3;
        }
        if tr != trace {
            continue;
        }
        stats.diagonals += 1;
        if !s.classes.iter().zip(n).all(|(e, &v)| quad(&g, q, e.entries(), e.entries()) * 6 == v * k) {
            continue;
        }
        if !pairs_ok(&g, q, vectors) {
            continue;
        }
        stats.pair_checked += 1;
        let gram = to_gram(&g, q, k);
        if !is_psd(&gram) {
            continue;
        }
        stats.psd += 1;
        let p = sign_root_set(&gram)?;
        match closure(&p, DEFAULT_MAX_SIZE) {
            Ok(_) => {}
            Err(Error::NotASubsystem(_)) => continue,
            Err(e) => return Err(e),
        }
        stats.subsystems += 1;
        out.insert(canonical_form(&gram));
    }
    Ok(())
}

/// All canonical Gram matrices `(⟨β_i, β_j⟩)` for which the `2^q` sign
/// combinations form a subsystem of roots with largest norm 1.
pub fn enumerate_p1_grams(q: usize) -> Result<Vec<GramMatrix>> {
    enumerate_p1_grams_with_stats(q).map(|(v, _)| v)
}

pub fn enumerate_p1_grams_with_stats(q: usize) -> Result<(Vec<GramMatrix>, EnumerationStats)> {
    if !(MIN_Q..=MAX_Q).contains(&q) {
        return Err(Error::OutOfRange { what: "q", value: q as i64 });
    }
    let s = Scaled::new(q);
    let m = s.classes.len();
    let vectors = SignVector::all(q);
    let mut stats = EnumerationStats { q, ..Default::default() };
    let mut out = BTreeSet::new();

    // Depth-first over the class norms with running Walsh sums: the norms
    // come from a quadratic form iff every even character of degree ≥ 4
    // has zero coefficient.
    let chars: Vec<Vec<i64>> = s.classes.iter().map(|e| s.walsh.iter().map(|&w| character(e, w)).collect()).collect();
    let mut n = vec![0i64; m];
    n[0] = SCALED_NORMS[0];
    let mut sums: Vec<Vec<i64>> = vec![vec![0; s.walsh.len()]; m + 1];
    for (w, c) in chars[0].iter().enumerate() {
        sums[1][w] = c * n[0];
    }
    let mut digit = vec![0usize; m];
    let mut depth = 1;
    let mut error = None;
    // iterative DFS: digit[d] is the next value index to try at depth d
    loop {
        if depth == m {
            stats.assignments += 1;
            if sums[m].iter().all(|&x| x == 0) {
                stats.quadratic += 1;
                if let Err(e) = resolve(&s, &n, &vectors, &mut stats, &mut out) {
                    error = Some(e);
                    break;
                }
            }
            depth -= 1;
            continue;
        }
        if digit[depth] == SCALED_NORMS.len() {
            digit[depth] = 0;
            if depth == 1 {
                break;
            }
            depth -= 1;
            continue;
        }
        let v = SCALED_NORMS[digit[depth]];
        digit[depth] += 1;
        n[depth] = v;
        let (lo, hi) = sums.split_at_mut(depth + 1);
        for ((dst, src), c) in hi[0].iter_mut().zip(&lo[depth]).zip(&chars[depth]) {
            *dst = src + c * v;
        }
        depth += 1;
    }
    if let Some(e) = error {
        return Err(e);
    }
    stats.canonical_solutions = out.len();
    Ok((out.into_iter().collect(), stats))
}

/// Keeps the Gram matrices whose sign-combination set is admissible.
pub fn filter_admissible(solutions: &[GramMatrix], q: usize) -> Result<Vec<GramMatrix>> {
    let mut out = Vec::new();
    for g in solutions {
        if g.dim() != q {
            return Err(Error::DimensionMismatch { expected: q, found: g.dim() });
        }
        if is_admissible(&sign_root_set(g)?, DEFAULT_MAX_SIZE)?.admissible {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// `β_a + σ β_b` with `a < b`.
type PairKey = (usize, usize, i8);

fn fmt_pair(k: &PairKey) -> String {
    format!("b{}{}b{}", k.0 + 1, if k.2 > 0 { '+' } else { '-' }, k.1 + 1)
}

fn fmt_pairing(p: &[PairKey; 4]) -> String {
    p.iter().map(fmt_pair).collect::<Vec<_>>().join(", ")
}

fn partitions_into_pairs(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for i in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().copied().filter(|&x| x != items[i]).collect();
        for mut tail in partitions_into_pairs(&rest) {
            tail.insert(0, (first, items[i]));
            out.push(tail);
        }
    }
    out
}

/// The 105 partitions of eight indices into four pairs.
fn pairings8() -> Vec<[(usize, usize); 4]> {
    partitions_into_pairs(&(0..8).collect::<Vec<_>>())
        .into_iter()
        .map(|p| [p[0], p[1], p[2], p[3]])
        .collect()
}

/// Pairings with signs whose sign-combination set stays inside the even
/// half-sign set: an even number of differences.
fn signed_pairings8() -> Vec<[PairKey; 4]> {
    let mut out = Vec::new();
    for p in pairings8() {
        for mask in 0u32..16 {
            if mask.count_ones() % 2 == 1 {
                continue;
            }
            let s = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
            out.push([
                (p[0].0, p[0].1, s(0)),
                (p[1].0, p[1].1, s(1)),
                (p[2].0, p[2].1, s(2)),
                (p[3].0, p[3].1, s(3)),
            ]);
        }
    }
    out
}

fn distinct_placements(c: &GramMatrix) -> Vec<GramMatrix> {
    let n = c.dim();
    let mut set = BTreeSet::new();
    for_each_permutation(n, |perm| {
        for mask in 0..(1u32 << n) {
            let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            set.insert(c.transformed(perm, &signs));
        }
    });
    set.into_iter().collect()
}

fn distinct_arrangements(diag: &[Rational]) -> Vec<Vec<Rational>> {
    let mut set = BTreeSet::new();
    for_each_permutation(diag.len(), |perm| {
        set.insert(perm.iter().map(|&i| diag[i].clone()).collect::<Vec<_>>());
    });
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub pairing: String,
    pub placement: GramMatrix,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfSignClassification {
    pub gram: GramMatrix,
    pub canonical: GramMatrix,
    /// The four-variable candidates the pairings were matched against.
    pub candidates: Vec<GramMatrix>,
    pub pairings: usize,
    pub signed_pairings: usize,
    pub eliminated: Vec<Elimination>,
    /// Pairings that survived with a scalar-type placement.
    pub scalar_survivors: usize,
    /// Rank of the orthogonality system for the 28 off-diagonal entries.
    pub orthogonality_rank: usize,
    pub trace: Vec<String>,
}

struct Propagation<'a> {
    known: HashMap<PairKey, Rational>,
    arrangements: &'a [Vec<Rational>],
}

enum Outcome {
    Progress(bool),
    NoCandidate,
}

impl Propagation<'_> {
    /// Matches one signed pairing against every arrangement of candidate
    /// diagonals (each at its own positive scale) and fixes the pair norms
    /// on which all consistent options agree.
    fn step(&mut self, p: &[PairKey; 4]) -> Outcome {
        let known: Vec<Option<Rational>> = p.iter().map(|k| self.known.get(k).cloned()).collect();
        let Some(anchor) = known.iter().position(Option::is_some) else { return Outcome::Progress(false) };
        let mut implied: Option<Vec<Option<Rational>>> = None;
        let mut any = false;
        for d in self.arrangements {
            let scale = known[anchor].as_ref().expect("anchor").checked_div(&d[anchor]).expect("positive diagonal");
            if !scale.is_positive() {
                continue;
            }
            let values: Vec<Rational> = d.iter().map(|x| x * &scale).collect();
            if known.iter().zip(&values).any(|(k, v)| k.as_ref().is_some_and(|k| k != v)) {
                continue;
            }
            any = true;
            implied = Some(match implied {
                None => values.into_iter().map(Some).collect(),
                Some(prev) => prev
                    .into_iter()
                    .zip(values)
                    .map(|(a, b)| a.filter(|a| *a == b))
                    .collect(),
            });
        }
        if !any {
            return Outcome::NoCandidate;
        }
        let mut progress = false;
        for (k, v) in p.iter().zip(implied.expect("some option")) {
            if let Some(v) = v {
                if !self.known.contains_key(k) {
                    self.known.insert(*k, v);
                    progress = true;
                }
            }
        }
        Outcome::Progress(progress)
    }

    fn offdiag(&self, i: usize, j: usize) -> Option<Rational> {
        let (a, b) = (i.min(j), i.max(j));
        let plus = self.known.get(&(a, b, 1))?;
        let minus = self.known.get(&(a, b, -1))?;
        Some((plus - minus) * Rational::frac(1, 4))
    }

    /// `⟨β_a + σβ_b, β_c + τβ_d⟩` from deduced pair norms.
    fn cross(&self, x: &PairKey, y: &PairKey) -> Option<Rational> {
        let terms = [
            (x.0, y.0, 1i64),
            (x.0, y.1, i64::from(y.2)),
            (x.1, y.0, i64::from(x.2)),
            (x.1, y.1, i64::from(x.2 * y.2)),
        ];
        let mut acc = Rational::zero();
        for (i, j, s) in terms {
            acc += self.offdiag(i, j)? * Rational::from_integer(s);
        }
        Some(acc)
    }
}

/// Runs the propagation for one reference pairing carrying a placed
/// candidate. Returns the reason for elimination, if any.
fn eliminate(
    reference: &[PairKey; 4],
    placement: &GramMatrix,
    signed: &[[PairKey; 4]],
    arrangements: &[Vec<Rational>],
) -> Option<String> {
    let mut prop = Propagation { known: HashMap::new(), arrangements };
    for (i, k) in reference.iter().enumerate() {
        prop.known.insert(*k, placement.get(i, i).clone());
    }
    let clash = |prop: &Propagation| -> Option<String> {
        for x in 0..4 {
            for y in (x + 1)..4 {
                let placed = placement.get(x, y);
                if let Some(forced) = prop.cross(&reference[x], &reference[y]) {
                    if &forced != placed {
                        return Some(format!(
                            "<{}, {}> = {} in the placement but the deduced pair norms force {}",
                            fmt_pair(&reference[x]),
                            fmt_pair(&reference[y]),
                            placed,
                            forced
                        ));
                    }
                }
            }
        }
        None
    };
    // Stage one follows the longest reference pair through every pairing
    // that contains it; stage two uses every signed pairing.
    let longest = (0..4).max_by_key(|&i| placement.get(i, i).clone()).expect("four pairs");
    let unique_longest = (0..4).filter(|&i| placement.get(i, i) == placement.get(longest, longest)).count() == 1;
    let stages: Vec<Vec<&[PairKey; 4]>> = {
        let all: Vec<&[PairKey; 4]> = signed.iter().collect();
        if unique_longest {
            let key = reference[longest];
            vec![signed.iter().filter(|p| p.contains(&key)).collect(), all]
        } else {
            vec![all]
        }
    };
    for stage in stages {
        loop {
            let mut progress = false;
            for p in &stage {
                match prop.step(p) {
                    Outcome::NoCandidate => {
                        return Some(format!("pairing ({}) admits no candidate at any scale", fmt_pairing(p)));
                    }
                    Outcome::Progress(b) => progress |= b,
                }
            }
            if let Some(reason) = clash(&prop) {
                return Some(reason);
            }
            if !progress {
                break;
            }
        }
    }
    None
}

fn offdiag_index(i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    // position of (a, b) among pairs a < b of 0..8 in lexicographic order
    (0..a).map(|r| 7 - r).sum::<usize>() + (b - a - 1)
}

/// Replays the pairing argument for the even half-sign set in eight
/// variables and returns the forced Gram matrix.
pub fn classify_halfsign_q8() -> Result<HalfSignClassification> {
    let candidates = enumerate_p1_grams(4)?;
    let mut trace = vec![format!("four-variable candidates: {}", candidates.len())];
    let mut scalar_candidates = Vec::new();
    let mut arrangements = BTreeSet::new();
    for c in &candidates {
        let diag: Vec<Rational> = (0..4).map(|i| c.get(i, i).clone()).collect();
        arrangements.extend(distinct_arrangements(&diag));
        if c.is_diagonal() && diag.iter().all(|d| *d == diag[0]) {
            scalar_candidates.push(c.clone());
        }
    }
    let arrangements: Vec<Vec<Rational>> = arrangements.into_iter().collect();
    let signed = signed_pairings8();
    let plain = pairings8();
    trace.push(format!("partitions into pairs: {}, signed pairings inside the half-sign set: {}", plain.len(), signed.len()));

    let mut eliminated = Vec::new();
    let mut scalar_survivors = 0;
    for p in &plain {
        let reference: [PairKey; 4] = [(p[0].0, p[0].1, 1), (p[1].0, p[1].1, 1), (p[2].0, p[2].1, 1), (p[3].0, p[3].1, 1)];
        for c in &candidates {
            let scalar = scalar_candidates.contains(c);
            for placement in distinct_placements(c) {
                match eliminate(&reference, &placement, &signed, &arrangements) {
                    Some(reason) => {
                        if scalar {
                            return Err(Error::InvalidConfig(format!(
                                "scalar placement on ({}) eliminated: {reason}",
                                fmt_pairing(&reference)
                            )));
                        }
                        eliminated.push(Elimination { pairing: fmt_pairing(&reference), placement, reason });
                    }
                    None if scalar => scalar_survivors += 1,
                    None => {
                        trace.push(format!(
                            "non-scalar placement on ({}) not eliminated; classification incomplete",
                            fmt_pairing(&reference)
                        ));
                        return Err(Error::InvalidConfig("pairing propagation left a non-scalar branch".into()));
                    }
                }
            }
        }
    }
    trace.push(format!(
        "non-scalar branches eliminated: {}; scalar branches surviving: {}",
        eliminated.len(),
        scalar_survivors
    ));
    if let Some(e) = eliminated.first() {
        trace.push(format!("first elimination on ({}): {}", e.pairing, e.reason));
    }

    // Every pairing is scalar type: the paired sums are mutually orthogonal.
    let mut rows = Vec::new();
    let mut diag_rows = Vec::new();
    for p in &plain {
        for x in 0..4 {
            for y in (x + 1)..4 {
                let mut row = vec![Rational::zero(); 28];
                for i in [p[x].0, p[x].1] {
                    for j in [p[y].0, p[y].1] {
                        row[offdiag_index(i, j)] += Rational::one();
                    }
                }
                rows.push(row);
                let mut d = vec![Rational::zero(); 8];
                d[p[x].0] += Rational::one();
                d[p[x].1] += Rational::one();
                d[p[y].0] -= Rational::one();
                d[p[y].1] -= Rational::one();
                diag_rows.push(d);
            }
        }
    }
    let orthogonality_rank = rank(rows);
    trace.push(format!("orthogonality of paired sums: {orthogonality_rank} independent equations in 28 unknowns"));
    if orthogonality_rank != 28 {
        return Err(Error::InvalidConfig("paired-sum orthogonality does not force a diagonal Gram matrix".into()));
    }
    trace.push("all off-diagonal entries vanish".into());

    // Equal pair norms inside each pairing plus norm(Σβ_j) = 1.
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    for r in diag_rows {
        let mut trial = chosen.clone();
        trial.push(r);
        if rank(trial.clone()) > chosen.len() {
            chosen = trial;
        }
        if chosen.len() == 7 {
            break;
        }
    }
    chosen.push(vec![Rational::one(); 8]);
    let mut rhs = vec![Rational::zero(); 7];
    rhs.push(Rational::one());
    let d = solve(chosen, rhs).ok_or_else(|| Error::InvalidConfig("diagonal not determined".into()))?;
    trace.push(format!("diagonal forced to ({})", d.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")));
    let gram = GramMatrix::diagonal(d);
    let canonical = canonical_form(&gram);
    Ok(HalfSignClassification {
        gram,
        canonical,
        candidates,
        pairings: plain.len(),
        signed_pairings: signed.len(),
        eliminated,
        scalar_survivors,
        orthogonality_rank,
        trace,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseId {
    P1,
    P2,
    P3,
    P4,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::P1, CaseId::P2, CaseId::P3, CaseId::P4];
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P1" => Ok(CaseId::P1),
            "P2" => Ok(CaseId::P2),
            "P3" => Ok(CaseId::P3),
            "P4" => Ok(CaseId::P4),
            _ => Err(Error::Parse(format!("unknown case {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityReport {
    pub case_id: CaseId,
    /// Largest feasible `q`.
    pub q: usize,
    pub alpha_nonzero: bool,
    pub feasible: bool,
    /// Witness Gram matrices at the bound.
    pub solutions: Vec<CanonicalGram>,
    pub trace: Vec<String>,
}

/// Largest number `n` of vectors `β_0..β_{n-1}` for which
/// `Σ_j ⟨β, β − 2β_j⟩ = n − 2` can stay below `n/2`, each term being at most `1/2`.
fn sum_inequality_bound(trace: &mut Vec<String>) -> usize {
    let half = Rational::frac(1, 2);
    let mut best = 0;
    for n in 1..=16usize {
        let lhs = Rational::from_integer(n as i64 - 2);
        let rhs = &half * Rational::from_integer(n as i64);
        if lhs <= rhs {
            best = n;
        }
    }
    trace.push(format!("sum inequality n - 2 <= n/2 holds exactly for n <= {best}"));
    best
}

fn witness(trace: &mut Vec<String>, label: &str, p: &RootSet) -> Result<()> {
    let c = closure(p, DEFAULT_MAX_SIZE)?;
    trace.push(format!("witness {label}: {} vectors, closure has {} roots", p.len(), c.len()));
    Ok(())
}

/// Diagonal form with `α` as coordinate 0 when present.
fn shifted_sign_set(alpha_norm: Option<Rational>, beta: Vec<Rational>, parity: Option<bool>) -> Result<RootSet> {
    let q = beta.len();
    match alpha_norm {
        None => {
            let g = GramMatrix::diagonal(beta);
            match parity {
                None => sign_root_set(&g),
                Some(even) => half_sign_root_set(&g, even),
            }
        }
        Some(a) => {
            let mut diag = vec![a];
            diag.extend(beta);
            let g = GramMatrix::diagonal(diag);
            let mut vs = Vec::new();
            for e in SignVector::all(q) {
                if let Some(even) = parity {
                    if (e.product() == 1) != even {
                        continue;
                    }
                }
                for s in [1i64, -1] {
                    let mut c = vec![Rational::from_integer(s)];
                    c.extend(e.entries().iter().map(|&x| Rational::from_integer(x.into())));
                    vs.push(Vector::new(c));
                }
            }
            RootSet::from_distinct(g, vs)
        }
    }
}

fn quarter(n: usize) -> Vec<Rational> {
    vec![Rational::frac(1, 4); n]
}

fn eighth(n: usize) -> Vec<Rational> {
    vec![Rational::frac(1, 8); n]
}

/// Largest `q` for each family of weight sets, with the argument replayed.
pub fn prop34_bound(case_id: CaseId, alpha_nonzero: bool) -> Result<FeasibilityReport> {
    let mut trace = Vec::new();
    let mut solutions = Vec::new();
    let n_max = sum_inequality_bound(&mut trace);
    let p1_bound = |alpha: bool| if alpha { n_max - 1 } else { n_max };
    let q = match case_id {
        CaseId::P1 => {
            let q = p1_bound(alpha_nonzero);
            trace.push(if alpha_nonzero {
                format!("alpha != 0 joins beta_0 = alpha: n = q + 1 <= {n_max}, so q <= {q}")
            } else {
                format!("all alpha = 0: n = q <= {n_max}, so q <= {q}")
            });
            let first_excluded = n_max + 1;
            let (excluded, stats) = enumerate_p1_grams_with_stats(first_excluded)?;
            trace.push(format!(
                "enumeration at {first_excluded} variables: {} assignments, {} quadratic, {} solutions",
                stats.assignments,
                stats.quadratic,
                excluded.len()
            ));
            if !excluded.is_empty() {
                return Err(Error::InvalidConfig("enumeration contradicts the sum inequality".into()));
            }
            let attained = enumerate_p1_grams(n_max)?;
            trace.push(format!("enumeration at {n_max} variables: {} solutions", attained.len()));
            if attained.is_empty() {
                return Err(Error::InvalidConfig("bound not attained".into()));
            }
            if alpha_nonzero {
                witness(&mut trace, "alpha + sign set, q = 3", &shifted_sign_set(Some(Rational::frac(1, 4)), quarter(3), None)?)?;
            }
            solutions = attained.into_iter().map(CanonicalGram::new).collect();
            q
        }
        CaseId::P2 => {
            if alpha_nonzero {
                let half_bound = 2 * p1_bound(false);
                let q = half_bound - 1;
                trace.push(format!(
                    "beta_0 = alpha_1 embeds the set into the even half-sign set in q + 1 variables; q + 1 <= {half_bound}, so q <= {q}"
                ));
                let w = half_sign_root_set(&GramMatrix::scalar(q + 1, Rational::frac(1, 8)), true)?;
                witness(&mut trace, "half-sign set in 8 variables over (1/8)Id", &w)?;
                solutions.push(CanonicalGram::new(GramMatrix::scalar(q + 1, Rational::frac(1, 8))));
                q
            } else {
                let b = p1_bound(false);
                let q = if b % 2 == 1 { b } else { b - 1 };
                trace.push(format!("a zero alpha puts the full sign set inside P2: q <= {b}, q odd, so q <= {q}"));
                let sols = enumerate_p1_grams(q)?;
                trace.push(format!("enumeration at {q} variables: {} solutions", sols.len()));
                solutions = sols.into_iter().map(CanonicalGram::new).collect();
                q
            }
        }
        CaseId::P3 | CaseId::P4 => {
            let b = p1_bound(alpha_nonzero);
            let q = 2 * b;
            let first = if case_id == CaseId::P3 { "b1+b2" } else { "b1-b2" };
            trace.push(format!(
                "pairing {first}, b3+b4, ... gives a full sign set in q/2 variables: q/2 <= {b}, so q <= {q}"
            ));
            let even = case_id == CaseId::P3;
            let w = if alpha_nonzero {
                shifted_sign_set(Some(Rational::frac(1, 4)), eighth(q), Some(even))?
            } else {
                shifted_sign_set(None, eighth(q), Some(even))?
            };
            witness(&mut trace, &format!("half-sign set in {q} variables"), &w)?;
            solutions.push(CanonicalGram::new(w.form().clone()));
            q
        }
    };
    Ok(FeasibilityReport { case_id, q, alpha_nonzero, feasible: true, solutions, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn gram(rows: &[&[(i64, i64)]]) -> GramMatrix {
        GramMatrix::from_rows(rows.iter().map(|row| row.iter().map(|&(n, d)| r(n, d)).collect()).collect()).unwrap()
    }

    #[test]
    fn permutations_are_complete() {
        let mut n = 0;
        for_each_permutation(4, |_| n += 1);
        assert_eq!(n, 24);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let m3 = gram(&[&[(3, 8), (1, 16), (1, 16)], &[(1, 16), (1, 8), (1, 16)], &[(1, 16), (1, 16), (1, 8)]]);
        let c = canonical_form(&m3);
        assert_eq!(canonical_form(&c), c);
        let moved = m3.transformed(&[2, 0, 1], &[1, -1, 1]);
        assert_eq!(canonical_form(&moved), c);
        // M3 has two negative off-diagonal entries at best
        assert_eq!(c.get(0, 1), &r(-1, 16));
    }

    #[test]
    fn diagonal_canonical_form_sorts() {
        let g = GramMatrix::diagonal(vec![r(1, 2), r(1, 4), r(1, 4)]);
        assert_eq!(canonical_form(&g), GramMatrix::diagonal(vec![r(1, 4), r(1, 4), r(1, 2)]));
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_p1_grams(1).is_err());
        assert!(enumerate_p1_grams(6).is_err());
    }

    #[test]
    fn q4_solutions() {
        let sols = enumerate_p1_grams(4).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols.contains(&GramMatrix::scalar(4, r(1, 4))));
        let adm = filter_admissible(&sols, 4).unwrap();
        assert_eq!(adm, vec![GramMatrix::scalar(4, r(1, 4))]);
    }

    #[test]
    fn empty_filter() {
        assert!(filter_admissible(&[], 3).unwrap().is_empty());
    }

    #[test]
    fn signed_pairing_counts() {
        assert_eq!(pairings8().len(), 105);
        assert_eq!(signed_pairings8().len(), 840);
    }

    #[test]
    fn offdiag_indices() {
        let mut seen = BTreeSet::new();
        for i in 0..8 {
            for j in (i + 1)..8 {
                assert_eq!(offdiag_index(i, j), offdiag_index(j, i));
                seen.insert(offdiag_index(i, j));
            }
        }
        assert_eq!(seen, (0..28).collect());
    }
}
