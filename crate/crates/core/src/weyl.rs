//! Classical Weyl groups acting on parameter vectors.
//!
//! Orbits are identified with their lexicographically maximal element. For
//! the signed-permutation families this maximum is reached combinatorially:
//! normalize each coordinate's sign, sort descending, and for type D repair
//! the parity of sign changes by negating the last coordinate. The brute
//! force [`orbit_enumerate`] exists so that rule can be checked.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qarith::{GaussianRational, ParamVector};

/// Largest rank accepted by the brute-force orbit and group enumerators.
pub const ENUMERATION_RANK_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    BC,
}

impl Family {
    fn signed(self) -> bool {
        !matches!(self, Family::A)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRootSystem("rank must be at least 1".into()));
        }
        if family == Family::D && rank < 2 {
            return Err(Error::InvalidRootSystem(
                "type D needs rank at least 2".into(),
            ));
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of coordinates of a vector acted on by this type. Type `A_n`
    /// acts on `C^{n+1}` by permutations.
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Whether `-1` lies in the Weyl group.
    pub fn contains_minus_one(&self) -> bool {
        match self.family {
            Family::A => false,
            Family::B | Family::C | Family::BC => true,
            Family::D => self.rank.is_multiple_of(2),
        }
    }

    fn check(&self, v: &ParamVector) -> Result<()> {
        v.check_len(self.ambient_dim())
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::BC => "BC",
        };
        write!(f, "{fam}{}", self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::InvalidRootSystem(format!("`{s}` has no rank")))?;
        let (fam, rank) = s.split_at(split);
        let family = match fam {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "BC" => Family::BC,
            _ => return Err(Error::InvalidRootSystem(format!("unknown family in `{s}`"))),
        };
        let rank = rank
            .parse()
            .map_err(|_| Error::InvalidRootSystem(format!("bad rank in `{s}`")))?;
        Self::new(family, rank)
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `|W|` for the given type.
pub fn weyl_order(t: RootSystemType) -> BigUint {
    let n = t.rank;
    let fact = |k: usize| (1..=k).fold(BigUint::one(), |acc, j| acc * j);
    match t.family {
        Family::A => fact(n + 1),
        Family::B | Family::C | Family::BC => (BigUint::one() << n) * fact(n),
        Family::D => (BigUint::one() << (n - 1)) * fact(n),
    }
}

fn sort_descending(xs: &mut [GaussianRational]) {
    xs.sort_unstable_by(|a, b| b.cmp(a));
}

/// The lexicographically maximal element of the `W(t)`-orbit of `v`.
pub fn canonical_representative(v: &ParamVector, t: RootSystemType) -> Result<ParamVector> {
    t.check(v)?;
    let mut xs: Vec<GaussianRational> = v.entries().to_vec();
    if !t.family.signed() {
        sort_descending(&mut xs);
        return Ok(xs.into());
    }
    let mut flips = 0usize;
    let mut has_zero = false;
    for x in xs.iter_mut() {
        if x.is_zero() {
            has_zero = true;
            continue;
        }
        let normalized = x.sign_normalized();
        if normalized != *x {
            flips += 1;
            *x = normalized;
        }
    }
    sort_descending(&mut xs);
    if t.family == Family::D && flips % 2 == 1 && !has_zero {
        // the smallest entry is the cheapest one to give back its sign
        let last = xs.len() - 1;
        xs[last] = -&xs[last];
    }
    Ok(xs.into())
}

pub fn orbit_equal(u: &ParamVector, v: &ParamVector, t: RootSystemType) -> Result<bool> {
    Ok(canonical_representative(u, t)? == canonical_representative(v, t)?)
}

/// A point of `C^n / W(t)`, stored as its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitClass {
    root_type: RootSystemType,
    rep: ParamVector,
}

impl OrbitClass {
    pub fn new(v: &ParamVector, t: RootSystemType) -> Result<Self> {
        Ok(Self {
            root_type: t,
            rep: canonical_representative(v, t)?,
        })
    }

    pub fn root_type(&self) -> RootSystemType {
        self.root_type
    }

    pub fn rep(&self) -> &ParamVector {
        &self.rep
    }

    /// Whether `v` lies in this orbit.
    pub fn contains(&self, v: &ParamVector) -> Result<bool> {
        Ok(canonical_representative(v, self.root_type)? == self.rep)
    }
}

/// A Weyl group element of a classical type, written as a signed
/// permutation: `(w·v)_k = ±v_{perm[k]}`, negative where `flip[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    flip: Vec<bool>,
}

impl WeylElement {
    pub fn apply(&self, v: &ParamVector) -> Result<ParamVector> {
        v.check_len(self.perm.len())?;
        Ok(self
            .perm
            .iter()
            .zip(&self.flip)
            .map(|(&p, &f)| if f { -&v[p] } else { v[p].clone() })
            .collect())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Heap's algorithm
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Every element of `W(t)`, by brute force.
pub fn weyl_elements(t: RootSystemType) -> Result<Vec<WeylElement>> {
    if t.rank > ENUMERATION_RANK_LIMIT {
        return Err(Error::RankTooLarge {
            rank: t.rank,
            limit: ENUMERATION_RANK_LIMIT,
        });
    }
    let n = t.ambient_dim();
    let perms = permutations(n);
    if !t.family.signed() {
        return Ok(perms
            .into_iter()
            .map(|perm| WeylElement {
                perm,
                flip: vec![false; n],
            })
            .collect());
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if t.family == Family::D && mask.count_ones() % 2 == 1 {
            continue;
        }
        let flip: Vec<bool> = (0..n).map(|k| mask >> k & 1 == 1).collect();
        for perm in &perms {
            out.push(WeylElement {
                perm: perm.clone(),
                flip: flip.clone(),
            });
        }
    }
    Ok(out)
}

/// The full orbit `W(t)·v` as a set, by applying every group element.
pub fn orbit_enumerate(v: &ParamVector, t: RootSystemType) -> Result<BTreeSet<ParamVector>> {
    t.check(v)?;
    weyl_elements(t)?.iter().map(|w| w.apply(v)).collect()
}

/// A positive root in standard coordinates (indices are 0-based here and
/// 1-based in labels such as `e1-e2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    /// `e_i - e_j`, `i < j`
    Diff(usize, usize),
    /// `e_i + e_j`, `i < j`
    Sum(usize, usize),
    /// `e_i`
    Short(usize),
    /// `2 e_i`
    Long(usize),
}

impl Root {
    pub fn coordinates(&self, dim: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); dim];
        let one = BigRational::one();
        match *self {
            Root::Diff(i, j) => {
                v[i] = one.clone();
                v[j] = -one;
            }
            Root::Sum(i, j) => {
                v[i] = one.clone();
                v[j] = one;
            }
            Root::Short(i) => v[i] = one,
            Root::Long(i) => v[i] = BigRational::from_integer(2.into()),
        }
        v
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Root::Diff(i, j) => write!(f, "e{}-e{}", i + 1, j + 1),
            Root::Sum(i, j) => write!(f, "e{}+e{}", i + 1, j + 1),
            Root::Short(i) => write!(f, "e{}", i + 1),
            Root::Long(i) => write!(f, "2e{}", i + 1),
        }
    }
}

impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad root label `{s}`"));
        let idx = |x: &str| -> Result<usize> {
            let k: usize = x
                .strip_prefix('e')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            k.checked_sub(1).ok_or_else(bad)
        };
        if let Some(rest) = s.strip_prefix('2') {
            return Ok(Root::Long(idx(rest)?));
        }
        if let Some((a, b)) = s.split_once('-') {
            return Ok(Root::Diff(idx(a)?, idx(b)?));
        }
        if let Some((a, b)) = s.split_once('+') {
            return Ok(Root::Sum(idx(a)?, idx(b)?));
        }
        Ok(Root::Short(idx(s)?))
    }
}

/// Standard positive roots of a classical type.
pub fn positive_roots(t: RootSystemType) -> Vec<Root> {
    let n = t.ambient_dim();
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            roots.push(Root::Diff(i, j));
            if t.family.signed() {
                roots.push(Root::Sum(i, j));
            }
        }
    }
    for i in 0..n {
        match t.family {
            Family::B => roots.push(Root::Short(i)),
            Family::C => roots.push(Root::Long(i)),
            Family::BC => {
                roots.push(Root::Short(i));
                roots.push(Root::Long(i));
            }
            Family::A | Family::D => {}
        }
    }
    roots
}

/// Root multiplicities keyed by positive root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityTable(BTreeMap<Root, u32>);

impl MultiplicityTable {
    /// Every positive root of `t` with multiplicity `m`.
    pub fn uniform(t: RootSystemType, m: u32) -> Self {
        Self(positive_roots(t).into_iter().map(|r| (r, m)).collect())
    }

    /// Multiplicities assigned per root kind; used for restricted root
    /// systems where `e_i ± e_j`, `e_i` and `2e_i` carry different values.
    pub fn by_kind(t: RootSystemType, pair: u32, short: u32, long: u32) -> Self {
        Self(
            positive_roots(t)
                .into_iter()
                .map(|r| {
                    let m = match r {
                        Root::Diff(..) | Root::Sum(..) => pair,
                        Root::Short(_) => short,
                        Root::Long(_) => long,
                    };
                    (r, m)
                })
                .collect(),
        )
    }

    pub fn set(&mut self, root: Root, m: u32) {
        self.0.insert(root, m);
    }

    pub fn get(&self, root: &Root) -> Option<u32> {
        self.0.get(root).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Root, &u32)> {
        self.0.iter()
    }
}

impl FromIterator<(Root, u32)> for MultiplicityTable {
    fn from_iter<I: IntoIterator<Item = (Root, u32)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Serialize for MultiplicityTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let labelled: BTreeMap<String, u32> =
            self.0.iter().map(|(r, m)| (r.to_string(), *m)).collect();
        labelled.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiplicityTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labelled = BTreeMap::<String, u32>::deserialize(deserializer)?;
        labelled
            .into_iter()
            .map(|(k, m)| Ok((k.parse::<Root>().map_err(serde::de::Error::custom)?, m)))
            .collect()
    }
}

/// Half the sum of the positive roots of `t`, counted with multiplicity.
pub fn rho(t: RootSystemType, table: &MultiplicityTable) -> Result<ParamVector> {
    let roots: BTreeSet<Root> = positive_roots(t).into_iter().collect();
    let given: BTreeSet<Root> = table.0.keys().copied().collect();
    if roots != given {
        let missing: Vec<String> = roots.difference(&given).map(|r| r.to_string()).collect();
        let extra: Vec<String> = given.difference(&roots).map(|r| r.to_string()).collect();
        return Err(Error::MultiplicityTable {
            root_type: t.to_string(),
            detail: format!(
                "missing [{}], extraneous [{}]",
                missing.join(", "),
                extra.join(", ")
            ),
        });
    }
    let dim = t.ambient_dim();
    let mut sum = vec![BigRational::zero(); dim];
    for (root, &m) in &table.0 {
        let m = BigRational::from_integer(m.into());
        for (s, c) in sum.iter_mut().zip(root.coordinates(dim)) {
            *s += &m * c;
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    Ok(sum
        .into_iter()
        .map(|s| GaussianRational::real(s * &half))
        .collect())
}
