//! Exact arithmetic over the Gaussian rationals `Q(i)`.
//!
//! Every parameter handled by this crate (Harish-Chandra parameters,
//! infinitesimal characters, Laplacian eigenvalues) lives in `Q(i)` or in a
//! vector space over it. Nothing here rounds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Shorthand for building a rational from machine integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A complex number `a + b·i` with `a, b` exact rationals.
///
/// Both parts are kept in lowest terms with positive denominators, so the
/// derived structural equality is mathematical equality. The `Ord` impl is
/// the lexicographic order on `(re, im)`; it is a total order compatible
/// with addition, which is all the Weyl-orbit canonicalization needs.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(rat(num, den))
    }

    /// `re_num/re_den + (im_num/im_den)·i` from machine integers.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(rat(re_num, re_den), rat(im_num, im_den))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part if the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&BigRational> {
        self.is_real().then_some(&self.re)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    /// Whichever of `self`, `-self` is larger in the lexicographic order.
    pub fn sign_normalized(&self) -> Self {
        let neg = -self;
        if neg > *self {
            neg
        } else {
            self.clone()
        }
    }

    /// `(numerators, denominators)` as decimal strings, the wire format.
    pub fn to_strings(&self) -> [String; 4] {
        [
            self.re.numer().to_string(),
            self.re.denom().to_string(),
            self.im.numer().to_string(),
            self.im.denom().to_string(),
        ]
    }

    pub fn from_strings(parts: &[String]) -> Result<Self> {
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "a Gaussian rational needs 4 integer strings, got {}",
                parts.len()
            )));
        }
        let int = |s: &str| -> Result<BigInt> {
            s.parse()
                .map_err(|_| Error::Parse(format!("`{s}` is not a decimal integer")))
        };
        let (rn, rd, in_, id) = (
            int(&parts[0])?,
            int(&parts[1])?,
            int(&parts[2])?,
            int(&parts[3])?,
        );
        if rd.is_zero() || id.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Self::new(
            BigRational::new(rn, rd),
            BigRational::new(in_, id),
        ))
    }
}

/// Total order by real part, then imaginary part.
pub fn lex_compare(a: &GaussianRational, b: &GaussianRational) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(self, other)
    }
}

impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

pub fn gq_add(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    a + b
}

pub fn gq_mul(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    a * b
}

pub fn gq_neg(a: &GaussianRational) -> GaussianRational {
    -a
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::real(q)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Renders as `a`, `bi`, or `a+bi`; `b` may itself be a fraction, so
/// `1/2i` reads as `(1/2)·i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im = |q: &BigRational| -> String {
            if q.is_one() {
                "i".to_string()
            } else {
                format!("{}i", format_rational(q))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im(&-&self.im))
                } else {
                    write!(f, "{}", im(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}",
                    format_rational(&self.re),
                    sign,
                    im(&self.im.abs())
                )
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `a`, `a/b`, `bi`, `i`, `-i`, `a+bi`, `a-b/ci` (and `*i`).
impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&t)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last top-level sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        let re = if re_str.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_str)?
        };
        Ok(Self::new(re, im))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        Self::from_strings(&parts).map_err(D::Error::custom)
    }
}

/// A fixed-length vector of Gaussian rationals: coordinates of a parameter
/// in `j*_C` or `t*_C`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamVector(Vec<GaussianRational>);

impl ParamVector {
    pub fn new(entries: Vec<GaussianRational>) -> Self {
        Self(entries)
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self(xs.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    pub fn from_rationals(xs: &[BigRational]) -> Self {
        Self(xs.iter().cloned().map(GaussianRational::real).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![GaussianRational::zero(); len])
    }

    /// Comma-separated entries, each in `GaussianRational`'s text syntax.
    pub fn parse_list(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self::default());
        }
        s.split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<GaussianRational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GaussianRational> {
        self.0.iter()
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                got: self.len(),
            })
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self(self.0.iter().map(|x| x.scale(s)).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        other.check_len(self.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl Neg for &ParamVector {
    type Output = ParamVector;
    fn neg(self) -> ParamVector {
        ParamVector(self.0.iter().map(|x| -x).collect())
    }
}

impl Index<usize> for ParamVector {
    type Output = GaussianRational;
    fn index(&self, i: usize) -> &GaussianRational {
        &self.0[i]
    }
}

impl From<Vec<GaussianRational>> for ParamVector {
    fn from(v: Vec<GaussianRational>) -> Self {
        Self(v)
    }
}

impl FromIterator<GaussianRational> for ParamVector {
    fn from_iter<I: IntoIterator<Item = GaussianRational>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ParamVector {
    type Item = &'a GaussianRational;
    type IntoIter = std::slice::Iter<'a, GaussianRational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `scale · Σ u_i v_i`, complex-bilinear (no conjugation).
pub fn dot(u: &ParamVector, v: &ParamVector, scale: &BigRational) -> Result<GaussianRational> {
    v.check_len(u.len())?;
    let sum: GaussianRational = u.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    Ok(sum.scale(scale))
}
