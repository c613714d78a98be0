//! Standard models of the irreducible reduced root systems and identification
//! of arbitrary root sets by a scale-invariant fingerprint.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{GramMatrix, Rational, Vector};
use crate::rootsys::{components, int, RootSet};

/// Largest rank `build` accepts.
pub const MAX_RANK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::Parse(format!("unknown root system family {s:?}"))),
        }
    }
}

/// Whether `(family, rank)` names an irreducible system under its canonical
/// name. Low-rank coincidences are excluded: B₁ = C₁ = A₁, C₂ = B₂, D₃ = A₃,
/// and D₂ is reducible.
pub fn is_canonical(family: Family, rank: usize) -> bool {
    match family {
        Family::A => rank >= 1,
        Family::B => rank >= 2,
        Family::C => rank >= 3,
        Family::D => rank >= 4,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    }
}

/// Whether `build` can construct the model; aliases included.
pub fn is_buildable(family: Family, rank: usize) -> bool {
    if rank == 0 || rank > MAX_RANK {
        return false;
    }
    match family {
        Family::D => rank >= 2,
        Family::A | Family::B | Family::C => true,
        _ => is_canonical(family, rank),
    }
}

/// Every canonical `(family, rank)` with rank at most `max_rank`.
pub fn canonical_types(max_rank: usize) -> Vec<(Family, usize)> {
    Family::ALL
        .iter()
        .flat_map(|&f| (1..=max_rank).filter(move |&r| is_canonical(f, r)).map(move |r| (f, r)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SystemId {
    pub family: Family,
    pub rank: usize,
    /// Norm of a long root as presented.
    pub scale: Rational,
}

impl SystemId {
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parses names such as `D4`, `e8` or `A1`.
pub fn parse_type(s: &str) -> Result<(Family, usize)> {
    let s = s.trim();
    let mut chars = s.chars();
    let family: Family = chars.next().map(String::from).unwrap_or_default().parse()?;
    let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad root system name {s:?}")))?;
    Ok((family, rank))
}

fn half() -> Rational {
    Rational::frac(1, 2)
}

fn pm_pairs(n: usize, scale: i64) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = a * scale;
                v[j] = b * scale;
                out.push(Vector::from_ints(&v));
            }
        }
    }
    out
}

fn pm_singles(n: usize, c: i64) -> Vec<Vector> {
    (0..n).flat_map(|i| [Vector::basis(n, i, int(c)), Vector::basis(n, i, int(-c))]).collect()
}

/// All `(±1/2, …, ±1/2)` of length `n`; `even` keeps only those with an even
/// number of minus signs.
fn half_sign_vectors(n: usize, even: Option<bool>) -> Vec<Vector> {
    (0..(1u32 << n))
        .filter(|mask| even.is_none_or(|e| (mask.count_ones() % 2 == 0) == e))
        .map(|mask| Vector::new((0..n).map(|j| if mask >> j & 1 == 1 { -half() } else { half() }).collect()))
        .collect()
}

fn e8_vectors() -> Vec<Vector> {
    let mut v = pm_pairs(8, 1);
    v.extend(half_sign_vectors(8, Some(true)));
    v
}

fn coord_sum(v: &Vector, idx: impl Iterator<Item = usize>) -> Rational {
    idx.map(|i| v[i].clone()).sum()
}

/// Standard realization of the named system in integer or half-integer
/// coordinates with the Euclidean form.
pub fn build(family: Family, rank: usize) -> Result<RootSet> {
    if !is_buildable(family, rank) {
        return Err(Error::InvalidType { family: family.letter(), rank });
    }
    let n = rank;
    let (dim, vectors) = match family {
        Family::A => {
            let mut v = Vec::new();
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        let mut c = vec![0; n + 1];
                        c[i] = 1;
                        c[j] = -1;
                        v.push(Vector::from_ints(&c));
                    }
                }
            }
            (n + 1, v)
        }
        Family::B => {
            let mut v = pm_pairs(n, 1);
            v.extend(pm_singles(n, 1));
            (n, v)
        }
        Family::C => {
            let mut v = pm_pairs(n, 1);
            v.extend(pm_singles(n, 2));
            (n, v)
        }
        Family::D => (n, pm_pairs(n, 1)),
        Family::E => {
            let all = e8_vectors();
            let v = match n {
                8 => all,
                7 => all.into_iter().filter(|v| coord_sum(v, 0..8).is_zero()).collect(),
                _ => all
                    .into_iter()
                    .filter(|v| coord_sum(v, 0..8).is_zero() && coord_sum(v, 6..8).is_zero())
                    .collect(),
            };
            (8, v)
        }
        Family::F => {
            let mut v = pm_pairs(4, 1);
            v.extend(pm_singles(4, 1));
            v.extend(half_sign_vectors(4, None));
            (4, v)
        }
        Family::G => {
            let mut v = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut c = [0; 3];
                        c[i] = 1;
                        c[j] = -1;
                        v.push(Vector::from_ints(&c));
                    }
                }
                for s in [1, -1] {
                    let mut c = [-s; 3];
                    c[i] = 2 * s;
                    v.push(Vector::from_ints(&c));
                }
            }
            (3, v)
        }
    };
    RootSet::from_distinct(GramMatrix::identity(dim), vectors)
}

/// Fingerprint of one irreducible component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub rank: usize,
    pub roots: usize,
    /// Norm of the long roots divided by that of the short ones (1 if simply laced).
    pub ratio: Rational,
    pub long: usize,
    pub short: usize,
    pub scale: Rational,
}

pub fn fingerprint(component: &RootSet) -> Result<Fingerprint> {
    let hist = component.norm_histogram();
    let rank = component.rank();
    let roots = component.len();
    let unrecognized = Error::Unrecognized { rank, roots };
    let (scale, long) = match hist.iter().next_back() {
        Some((k, v)) => (k.clone(), *v),
        None => return Err(unrecognized),
    };
    let (ratio, short) = match hist.len() {
        1 => (Rational::one(), 0),
        2 => {
            let (s, c) = hist.iter().next().expect("two entries");
            (scale.checked_div(s)?, *c)
        }
        _ => return Err(unrecognized),
    };
    Ok(Fingerprint { rank, roots, ratio, long, short, scale })
}

fn match_fingerprint(fp: &Fingerprint) -> Option<(Family, usize)> {
    let n = fp.rank;
    let two = Rational::from_integer(2);
    let three = Rational::from_integer(3);
    if fp.ratio == Rational::one() {
        let candidates = [
            (Family::A, n * (n + 1)),
            (Family::D, 2 * n * n.saturating_sub(1)),
            (Family::E, match n {
                6 => 72,
                7 => 126,
                8 => 240,
                _ => 0,
            }),
        ];
        candidates.into_iter().find(|&(f, c)| c == fp.roots && is_canonical(f, n)).map(|(f, _)| (f, n))
    } else if fp.ratio == two {
        let pairs = 2 * n * n.saturating_sub(1);
        if n == 4 && fp.long == 24 && fp.short == 24 {
            Some((Family::F, 4))
        } else if n >= 2 && fp.long == pairs && fp.short == 2 * n {
            Some((Family::B, n))
        } else if n >= 3 && fp.long == 2 * n && fp.short == pairs {
            Some((Family::C, n))
        } else {
            None
        }
    } else if fp.ratio == three && n == 2 && fp.long == 6 && fp.short == 6 {
        Some((Family::G, 2))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentId {
    pub family: Family,
    pub rank: usize,
    pub scale: Rational,
    pub roots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub components: Vec<ComponentId>,
    pub total_roots: usize,
}

impl Identification {
    /// Component names sorted, e.g. `["A1", "D6"]`.
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.components.iter().map(|c| format!("{}{}", c.family, c.rank)).collect();
        v.sort();
        v
    }

    /// Sorted `(family, rank)` pairs, scale forgotten.
    pub fn types(&self) -> Vec<(Family, usize)> {
        let mut v: Vec<_> = self.components.iter().map(|c| (c.family, c.rank)).collect();
        v.sort();
        v
    }

    pub fn ids(&self) -> Vec<SystemId> {
        self.components.iter().map(|c| SystemId { family: c.family, rank: c.rank, scale: c.scale.clone() }).collect()
    }
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("(empty)");
        }
        f.write_str(&self.names().join(" + "))
    }
}

/// Names every irreducible component of a root system.
pub fn identify(s: &RootSet) -> Result<Identification> {
    let mut out = Vec::new();
    for c in components(s) {
        let fp = fingerprint(&c)?;
        let (family, rank) = match_fingerprint(&fp).ok_or(Error::Unrecognized { rank: fp.rank, roots: fp.roots })?;
        out.push(ComponentId { family, rank, scale: fp.scale, roots: fp.roots });
    }
    Ok(Identification { total_roots: s.len(), components: out })
}

/// Root counts by family, for display.
pub fn root_counts(max_rank: usize) -> BTreeMap<String, usize> {
    canonical_types(max_rank)
        .into_iter()
        .filter_map(|(f, r)| build(f, r).ok().map(|s| (format!("{f}{r}"), s.len())))
        .collect()
}
