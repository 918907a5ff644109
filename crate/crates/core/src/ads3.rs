//! `AdS³ = (SL(2,R) × SL(2,R))/Diag SL(2,R)`.
//!
//! Harish-Chandra parameters of the unitary dual of `SL(2,R)` are taken in
//! `C/(Z/2Z)` and returned sign-normalized. The Casimir acts by
//! `(λ² − 1)/4` in the normalization where the trivial representation has
//! parameter 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qarith::{rat, GaussianRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// An irreducible unitary representation of `SL(2,R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SL2Rep {
    Trivial,
    /// Unitary principal series `π_{iν,δ}`.
    Principal {
        nu: BigRational,
        delta: Sign,
    },
    /// Complementary series `π_λ`, `0 < λ < 1`.
    Complementary {
        lambda: BigRational,
    },
    /// Holomorphic / antiholomorphic discrete series `ϖ_n^±`, `n ≥ 1`.
    DiscreteSeries {
        n: u64,
        sign: Sign,
    },
    LimitDiscrete {
        sign: Sign,
    },
}

impl SL2Rep {
    pub fn principal(nu: BigRational, delta: Sign) -> Result<Self> {
        let ok = match delta {
            Sign::Plus => !nu.is_negative(),
            Sign::Minus => nu.is_positive(),
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "principal series needs ν ≥ 0 (δ = +) or ν > 0 (δ = −), got ν = {nu}, δ = {delta:?}"
            )));
        }
        Ok(SL2Rep::Principal { nu, delta })
    }

    pub fn complementary(lambda: BigRational) -> Result<Self> {
        if !(lambda.is_positive() && lambda < BigRational::one()) {
            return Err(Error::InvalidParameter(format!(
                "complementary series needs 0 < λ < 1, got {lambda}"
            )));
        }
        Ok(SL2Rep::Complementary { lambda })
    }

    pub fn discrete_series(n: u64, sign: Sign) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "discrete series needs n ≥ 1".into(),
            ));
        }
        Ok(SL2Rep::DiscreteSeries { n, sign })
    }
}

/// Harish-Chandra parameter in `C/(Z/2Z)`, sign-normalized.
pub fn inf_char(r: &SL2Rep) -> GaussianRational {
    let raw = match r {
        SL2Rep::Trivial => GaussianRational::one(),
        SL2Rep::Principal { nu, .. } => GaussianRational::new(BigRational::zero(), nu.clone()),
        SL2Rep::Complementary { lambda } => GaussianRational::real(lambda - BigRational::one()),
        SL2Rep::DiscreteSeries { n, .. } => GaussianRational::from_int(*n as i64),
        // realized in the principal series at s = 1, parameter s − 1 = 0
        SL2Rep::LimitDiscrete { .. } => GaussianRational::zero(),
    };
    raw.sign_normalized()
}

/// `χ_λ(C) = (λ² − 1)/4`.
pub fn casimir_value(hc: &GaussianRational) -> GaussianRational {
    (hc.square() - GaussianRational::one()).scale(&rat(1, 4))
}

/// `k(k+2)/4`.
pub fn lattice_value(k: u64) -> GaussianRational {
    let k = BigRational::from_integer(BigInt::from(k));
    GaussianRational::real(
        &k * (&k + BigRational::from_integer(2.into())) / BigRational::from_integer(4.into()),
    )
}

/// `{k(k+2)/4 : k0 ≤ k ≤ k_max}` over `k ∈ N`, or over `k ∈ 2N` when
/// `−1 ∈ Γ`, ascending. Empty when `k0 > k_max`.
pub fn type1_spectrum(k_max: u64, minus_one_in_gamma: bool, k0: u64) -> Vec<GaussianRational> {
    (k0..=k_max)
        .filter(|k| !minus_one_in_gamma || k % 2 == 0)
        .map(lattice_value)
        .collect()
}

/// A Maass eigenvalue `μ ≥ 0` of `'Γ\H²` pushed to the `AdS³` Laplacian: `−2μ`.
pub fn surface_to_ads3(mu: &BigRational) -> Result<GaussianRational> {
    if mu.is_negative() {
        return Err(Error::InvalidParameter(format!(
            "Maass eigenvalues are nonnegative, got {mu}"
        )));
    }
    Ok(GaussianRational::real(-mu * rat(2, 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ads3Classification {
    pub value: GaussianRational,
    /// `k` with `value = k(k+2)/4`, if any.
    pub type_one_witness: Option<u64>,
    pub type_two_candidate: bool,
    pub zero_special: bool,
}

impl Ads3Classification {
    pub fn type_one_candidate(&self) -> bool {
        self.type_one_witness.is_some()
    }
}

fn lattice_index(t: &BigRational) -> Option<u64> {
    // t = k(k+2)/4  ⇔  4t + 1 = (k+1)²
    let s = t * BigRational::from_integer(4.into()) + BigRational::one();
    if !s.is_integer() || s.is_negative() {
        return None;
    }
    let s = s.to_integer();
    let root = s.sqrt();
    if &root * &root != s || root.is_zero() {
        return None;
    }
    u64::try_from(root - BigInt::one()).ok()
}

/// Which part of `Spec_d(X_Γ)` the value `t` could belong to.
pub fn classify(t: &GaussianRational, finite_volume: bool) -> Ads3Classification {
    let zero_special = t.is_zero();
    let (witness, type_two) = match t.as_real() {
        Some(r) => {
            let type_two = r.is_negative() || (r.is_zero() && finite_volume);
            (lattice_index(r), type_two)
        }
        None => (None, false),
    };
    Ads3Classification {
        value: t.clone(),
        type_one_witness: witness,
        type_two_candidate: type_two,
        zero_special,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parameters() {
        assert_eq!(inf_char(&SL2Rep::Trivial), g("1"));
        assert_eq!(
            inf_char(&SL2Rep::discrete_series(3, Sign::Plus).unwrap()),
            g("3")
        );
        assert_eq!(
            inf_char(&SL2Rep::complementary(rat(1, 2)).unwrap()),
            g("1/2")
        );
        assert_eq!(
            inf_char(&SL2Rep::principal(rat(2, 3), Sign::Minus).unwrap()),
            g("2/3i")
        );
        assert_eq!(
            inf_char(&SL2Rep::LimitDiscrete { sign: Sign::Minus }),
            g("0")
        );
    }

    #[test]
    fn ranges() {
        assert!(SL2Rep::principal(rat(0, 1), Sign::Plus).is_ok());
        assert!(SL2Rep::principal(rat(0, 1), Sign::Minus).is_err());
        assert!(SL2Rep::principal(rat(-1, 2), Sign::Plus).is_err());
        assert!(SL2Rep::complementary(rat(1, 1)).is_err());
        assert!(SL2Rep::complementary(rat(0, 1)).is_err());
        assert!(SL2Rep::discrete_series(0, Sign::Plus).is_err());
    }

    #[test]
    fn casimir() {
        assert_eq!(casimir_value(&g("1")), g("0"));
        for k in 0..20 {
            assert_eq!(
                casimir_value(&GaussianRational::from_int(k as i64 + 1)),
                lattice_value(k)
            );
        }
        assert_eq!(casimir_value(&g("3i")), g("-5/2"));
        assert_eq!(casimir_value(&g("-3i")), casimir_value(&g("3i")));
    }

    #[test]
    fn type_one_lists() {
        let show = |v: Vec<GaussianRational>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(
            show(type1_spectrum(4, false, 0)),
            ["0", "3/4", "2", "15/4", "6"]
        );
        assert_eq!(show(type1_spectrum(6, true, 0)), ["0", "2", "6", "12"]);
        assert_eq!(show(type1_spectrum(2, false, 2)), ["2"]);
        assert!(type1_spectrum(2, false, 3).is_empty());
    }

    #[test]
    fn pushforward() {
        assert_eq!(surface_to_ads3(&rat(1, 4)).unwrap(), g("-1/2"));
        assert_eq!(surface_to_ads3(&rat(0, 1)).unwrap(), g("0"));
        assert_eq!(surface_to_ads3(&rat(10, 1)).unwrap(), g("-20"));
        assert!(surface_to_ads3(&rat(-1, 3)).is_err());
    }

    #[test]
    fn classification() {
        let c = classify(&g("2"), false);
        assert_eq!(c.type_one_witness, Some(2));
        assert!(!c.type_two_candidate);

        let c = classify(&g("-5"), true);
        assert!(!c.type_one_candidate() && c.type_two_candidate);

        let c = classify(&g("1"), true);
        assert!(!c.type_one_candidate() && !c.type_two_candidate && !c.zero_special);

        let c = classify(&g("0"), false);
        assert_eq!(c.type_one_witness, Some(0));
        assert!(!c.type_two_candidate && c.zero_special);
        assert!(classify(&g("0"), true).type_two_candidate);

        let c = classify(&g("-1+i"), true);
        assert!(!c.type_one_candidate() && !c.type_two_candidate);
        assert!(!classify(&g("3/5"), false).type_one_candidate());
    }
}
