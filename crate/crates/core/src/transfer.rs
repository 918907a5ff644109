//! Transfer maps between `D_G(X)`-eigenvalue parameters and
//! `Z(l_C)`-infinitesimal characters, one pair per fiber type `τ`.
//!
//! For `SO(4m,2)/U(2m,1)` the map `ν(·, τ)` interleaves the coordinates of
//! `λ/2` with the fixed slots `(2j_i + 4m − 4i + 1)/2` and reads the result
//! modulo `W(B_{2m})`. Its inverse `λ(·, τ)` removes those fixed slots from
//! the canonical representative of `ν` and doubles what remains. For the
//! group manifold `('G × 'G)/Diag 'G` the `'G` part passes through and the
//! circle character of `τ` is recorded in the fixed part.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::catalog::{fiber_shift, FiberRule, TauParam, TauPayload, TransferCase};
use crate::error::{Error, Result};
use crate::hcparam::{EigenvalueParam, InfinitesimalCharacter};
use crate::qarith::{rat, GaussianRational, ParamVector};

/// The `m` fixed slots `(2j_i + 4m − 4i + 1)/2`, `i = 1..m`.
pub fn fixed_slots(js: &[u64]) -> Vec<GaussianRational> {
    let m = js.len() as i64;
    js.iter()
        .enumerate()
        .map(|(k, &j)| {
            let i = k as i64 + 1;
            GaussianRational::from_ratio(2 * j as i64 + 4 * m - 4 * i + 1, 2)
        })
        .collect()
}

fn require_explicit(case: &TransferCase) -> Result<()> {
    if case.has_explicit_transfer() {
        Ok(())
    } else {
        Err(Error::ExternalCase {
            case: case.id.clone(),
            what: "transfer map",
        })
    }
}

/// `ν(λ, τ)`.
pub fn transfer_nu(
    lambda: &EigenvalueParam,
    tau: &TauParam,
    case: &TransferCase,
) -> Result<InfinitesimalCharacter> {
    require_explicit(case)?;
    case.check_owner(lambda.case_id())?;
    case.check_owner(tau.case_id())?;
    match (case.fiber_rule, tau.payload()) {
        (FiberRule::So4mU2m { m }, TauPayload::Partition(js)) => {
            lambda.rep().check_len(m)?;
            let half = rat(1, 2);
            let interleaved: ParamVector = lambda
                .rep()
                .iter()
                .zip(fixed_slots(js))
                .flat_map(|(x, slot)| [x.scale(&half), slot])
                .collect();
            InfinitesimalCharacter::from_coords(&interleaved, &ParamVector::default(), case)
        }
        (FiberRule::CircleCharacter, TauPayload::Circle(k)) => {
            InfinitesimalCharacter::from_coords(lambda.rep(), &ParamVector::from_ints(&[*k]), case)
        }
        _ => Err(Error::InvalidTau {
            case: case.id.clone(),
            detail: format!(
                "fiber type {tau} does not match rule {}",
                case.fiber_rule.name()
            ),
        }),
    }
}

/// `λ(ν, τ)`, the unique `λ` with `ν(λ, τ) = ν`.
///
/// Fails with [`Error::NotInImage`] when `ν` does not factor through
/// `Z(l_C)/Ker(dℓ^τ)`, i.e. when the fixed slots of `τ` are not all present
/// in `ν` (or, for the group manifold, the circle characters disagree).
/// Matching is by value, so the leftover multiset and hence `λ` are
/// determined uniquely even when a free coordinate coincides with a slot.
pub fn transfer_lambda(
    nu: &InfinitesimalCharacter,
    tau: &TauParam,
    case: &TransferCase,
) -> Result<EigenvalueParam> {
    require_explicit(case)?;
    case.check_owner(nu.case_id())?;
    case.check_owner(tau.case_id())?;
    let lambda = match (case.fiber_rule, tau.payload()) {
        (FiberRule::So4mU2m { m }, TauPayload::Partition(js)) => {
            nu.rep().check_len(2 * m)?;
            let mut unused: Vec<Option<&GaussianRational>> = nu.rep().iter().map(Some).collect();
            for slot in fixed_slots(js) {
                let hit = unused
                    .iter()
                    .position(|c| c.is_some_and(|c| *c == slot))
                    .ok_or_else(|| {
                        Error::NotInImage(format!(
                            "{} has no coordinate equal to ±{slot} required by τ = {tau}",
                            nu.rep()
                        ))
                    })?;
                unused[hit] = None;
            }
            let two = rat(2, 1);
            let leftover: ParamVector = unused
                .into_iter()
                .flatten()
                .map(|c| c.scale(&two))
                .collect();
            EigenvalueParam::from_coords(&leftover, case)?
        }
        (FiberRule::CircleCharacter, TauPayload::Circle(k)) => {
            if nu.fixed() != &ParamVector::from_ints(&[*k]) {
                return Err(Error::NotInImage(format!(
                    "circle character {} of ν differs from τ = {k}",
                    nu.fixed()
                )));
            }
            EigenvalueParam::from_coords(nu.rep(), case)?
        }
        _ => {
            return Err(Error::InvalidTau {
                case: case.id.clone(),
                detail: format!(
                    "fiber type {tau} does not match rule {}",
                    case.fiber_rule.name()
                ),
            })
        }
    };
    if transfer_nu(&lambda, tau, case)? != *nu {
        return Err(Error::NotInImage(format!(
            "round trip through λ = {} does not reproduce ν = {}",
            lambda.rep(),
            nu.rep()
        )));
    }
    Ok(lambda)
}

type FiberScalar = dyn Fn(&TauParam) -> Result<GaussianRational> + Send + Sync;

/// The affine eigenvalue relation `t = a·s + c(τ)` on the `i_τ`-image of an
/// `L`-Casimir eigenspace with eigenvalue `s`.
pub struct ScalarTransfer {
    a: BigRational,
    c_of_tau: Box<FiberScalar>,
}

impl ScalarTransfer {
    pub fn new(
        a: BigRational,
        c_of_tau: impl Fn(&TauParam) -> Result<GaussianRational> + Send + Sync + 'static,
    ) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidParameter(
                "Casimir constant a must be nonzero".into(),
            ));
        }
        Ok(Self {
            a,
            c_of_tau: Box::new(c_of_tau),
        })
    }

    /// `a` and `c(τ) = b·Cas_{L_K}(τ)` from the catalog.
    pub fn for_case(case: &TransferCase) -> Result<Self> {
        let a = case.casimir_a()?.clone();
        let case = case.clone();
        Self::new(a, move |tau| fiber_shift(tau, &case))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn c(&self, tau: &TauParam) -> Result<GaussianRational> {
        (self.c_of_tau)(tau)
    }
}

impl fmt::Debug for ScalarTransfer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarTransfer")
            .field("a", &self.a)
            .finish_non_exhaustive()
    }
}

/// `a·s_ν + c(τ)`.
pub fn scalar_transfer_eigenvalue(
    s_nu: &GaussianRational,
    tau: &TauParam,
    st: &ScalarTransfer,
) -> Result<GaussianRational> {
    Ok(s_nu.scale(&st.a) + st.c(tau)?)
}
