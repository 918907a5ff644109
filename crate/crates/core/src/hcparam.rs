//! Eigenvalue parameters `λ ∈ j*_C/W` and infinitesimal characters
//! `χ ∈ t*_C/W(l_C)`, both tied to the catalog case that gives them meaning.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::catalog::{FiberForm, TransferCase};
use crate::error::{Error, Result};
use crate::qarith::{dot, GaussianRational, ParamVector};
use crate::weyl::{OrbitClass, RootSystemType};

/// A character of `D_G(X)`, through the Harish-Chandra isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenvalueParam {
    orbit: OrbitClass,
    case_id: String,
}

impl EigenvalueParam {
    pub fn from_coords(coords: &ParamVector, case: &TransferCase) -> Result<Self> {
        let weyl = case.g_form()?.weyl;
        Ok(Self {
            orbit: OrbitClass::new(coords, weyl)?,
            case_id: case.id.clone(),
        })
    }

    pub fn orbit(&self) -> &OrbitClass {
        &self.orbit
    }

    pub fn rep(&self) -> &ParamVector {
        self.orbit.rep()
    }

    pub fn case_id(&self) -> &str {
        &self.case_id
    }

    /// `t_λ` under the case's `G`-side form.
    pub fn laplacian(&self, case: &TransferCase) -> Result<GaussianRational> {
        case.check_owner(&self.case_id)?;
        let form = case.g_form()?;
        laplacian_eigenvalue(self, &form.rho, &form.scale)
    }

    pub fn to_json(&self) -> ParamJson {
        ParamJson {
            coords: self.rep().clone(),
            root_type: self.orbit.root_type(),
            case: self.case_id.clone(),
            fixed: None,
        }
    }

    pub fn from_json(p: &ParamJson, case: &TransferCase) -> Result<Self> {
        p.check_against(case, case.g_weyl(), "G")?;
        Self::from_coords(&p.coords, case)
    }
}

/// The infinitesimal character of an `L`-representation. `fixed` holds the
/// coordinates of the compact abelian factor of `L` (empty unless the case
/// has one), on which `W(l_C)` acts trivially.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfinitesimalCharacter {
    orbit: OrbitClass,
    fixed: ParamVector,
    case_id: String,
}

impl InfinitesimalCharacter {
    pub fn from_coords(
        coords: &ParamVector,
        fixed: &ParamVector,
        case: &TransferCase,
    ) -> Result<Self> {
        let weyl = case.l_form()?.weyl;
        fixed.check_len(case.l_fixed_dim)?;
        Ok(Self {
            orbit: OrbitClass::new(coords, weyl)?,
            fixed: fixed.clone(),
            case_id: case.id.clone(),
        })
    }

    pub fn orbit(&self) -> &OrbitClass {
        &self.orbit
    }

    pub fn rep(&self) -> &ParamVector {
        self.orbit.rep()
    }

    pub fn fixed(&self) -> &ParamVector {
        &self.fixed
    }

    pub fn case_id(&self) -> &str {
        &self.case_id
    }

    /// `χ(C_L)`: the Harish-Chandra value on the Weyl-acted part plus the
    /// circle Casimir on the fixed part.
    pub fn casimir(&self, case: &TransferCase) -> Result<GaussianRational> {
        case.check_owner(&self.case_id)?;
        let form = case.l_form()?;
        let mut value = form.casimir(self.rep())?;
        if !self.fixed.is_empty() {
            let Some(FiberForm::Circle { scale }) = &case.fiber_form else {
                return Err(case_external(case));
            };
            value = value + dot(&self.fixed, &self.fixed, scale)?;
        }
        Ok(value)
    }

    pub fn to_json(&self) -> ParamJson {
        ParamJson {
            coords: self.rep().clone(),
            root_type: self.orbit.root_type(),
            case: self.case_id.clone(),
            fixed: (!self.fixed.is_empty()).then(|| self.fixed.clone()),
        }
    }

    pub fn from_json(p: &ParamJson, case: &TransferCase) -> Result<Self> {
        p.check_against(case, case.l_weyl(), "L")?;
        Self::from_coords(
            &p.coords,
            p.fixed.as_ref().unwrap_or(&ParamVector::default()),
            case,
        )
    }
}

fn case_external(case: &TransferCase) -> Error {
    Error::ExternalCase {
        case: case.id.clone(),
        what: "form on the compact factor of L",
    }
}

/// Wire form `{"coords": [...], "type": "BC1", "case": "...", "fixed": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamJson {
    pub coords: ParamVector,
    #[serde(rename = "type")]
    pub root_type: RootSystemType,
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed: Option<ParamVector>,
}

impl ParamJson {
    fn check_against(
        &self,
        case: &TransferCase,
        weyl: Option<RootSystemType>,
        side: &str,
    ) -> Result<()> {
        case.check_owner(&self.case)?;
        let weyl = weyl.ok_or_else(|| Error::ExternalCase {
            case: case.id.clone(),
            what: "Weyl group data",
        })?;
        if weyl != self.root_type {
            return Err(Error::schema(
                "type",
                format!(
                    "{side}-side type of `{}` is {weyl}, got {}",
                    case.id, self.root_type
                ),
            ));
        }
        Ok(())
    }
}

/// `t_λ = ⟨λ, λ⟩ − ⟨ρ, ρ⟩`, the scalar by which the Laplacian acts on the
/// joint eigenspace with parameter `λ`. Independent of the orbit
/// representative because the form is `W`-invariant.
pub fn laplacian_eigenvalue(
    lambda: &EigenvalueParam,
    rho: &ParamVector,
    scale: &BigRational,
) -> Result<GaussianRational> {
    rho.check_len(lambda.rep().len())?;
    Ok(dot(lambda.rep(), lambda.rep(), scale)? - dot(rho, rho, scale)?)
}

/// Infinitesimal character composed with the principal anti-automorphism
/// `η`: the class of `−χ`. The identity whenever `−1 ∈ W(l_C)` and there is
/// no fixed part.
pub fn eta_involution(chi: &InfinitesimalCharacter) -> Result<InfinitesimalCharacter> {
    Ok(InfinitesimalCharacter {
        orbit: OrbitClass::new(&-chi.rep(), chi.orbit.root_type())?,
        fixed: -&chi.fixed,
        case_id: chi.case_id.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    G,
    L,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    G(EigenvalueParam),
    L(InfinitesimalCharacter),
}

/// Canonicalized parameter bound to `case`. On the `L` side, coordinates
/// past the Weyl-acted block are the fixed part.
pub fn param_from_coords(coords: &ParamVector, case: &TransferCase, side: Side) -> Result<Param> {
    match side {
        Side::G => EigenvalueParam::from_coords(coords, case).map(Param::G),
        Side::L => {
            let dim = case.l_form()?.weyl.ambient_dim();
            coords.check_len(dim + case.l_fixed_dim)?;
            let (acted, fixed) = coords.entries().split_at(dim);
            InfinitesimalCharacter::from_coords(
                &acted.to_vec().into(),
                &fixed.to_vec().into(),
                case,
            )
            .map(Param::L)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{case_lookup, group_manifold_sl2r, so4m2_u2m1};
    use crate::qarith::rat;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn coords_are_canonicalized() {
        let gm = group_manifold_sl2r();
        let Param::G(p) = param_from_coords(&ParamVector::from_ints(&[-5]), &gm, Side::G).unwrap()
        else {
            panic!()
        };
        assert_eq!(p.rep(), &ParamVector::from_ints(&[5]));

        let c1 = so4m2_u2m1(1).unwrap();
        let coords = ParamVector::from_rationals(&[rat(1, 2), rat(-9, 2)]);
        let Param::L(chi) = param_from_coords(&coords, &c1, Side::L).unwrap() else {
            panic!()
        };
        assert_eq!(
            chi.rep(),
            &ParamVector::from_rationals(&[rat(9, 2), rat(1, 2)])
        );
        assert_eq!(chi.orbit().root_type().to_string(), "B2");

        let Param::G(p) = param_from_coords(&ParamVector::from_ints(&[7]), &c1, Side::G).unwrap()
        else {
            panic!()
        };
        assert_eq!(p.rep(), &ParamVector::from_ints(&[7]));
        assert_eq!(p.orbit().root_type().to_string(), "BC1");

        assert!(matches!(
            param_from_coords(&ParamVector::from_ints(&[1, 2]), &c1, Side::G),
            Err(Error::DimensionMismatch { .. })
        ));
        let ext = case_lookup("so88_so87").unwrap();
        assert!(matches!(
            param_from_coords(&ParamVector::from_ints(&[1]), &ext, Side::G),
            Err(Error::ExternalCase { .. })
        ));
    }

    #[test]
    fn sl2_laplacian() {
        let gm = group_manifold_sl2r();
        let form = gm.g_side.clone().unwrap();
        let lam = |x: GaussianRational| {
            EigenvalueParam::from_coords(&ParamVector::new(vec![x]), &gm).unwrap()
        };
        // λ = ρ gives 0
        assert_eq!(
            laplacian_eigenvalue(&lam(g("1")), &form.rho, &form.scale).unwrap(),
            g("0")
        );
        for n in 0..10 {
            assert_eq!(
                lam(GaussianRational::from_int(n)).laplacian(&gm).unwrap(),
                GaussianRational::from_ratio(n * n - 1, 4)
            );
        }
        // iν gives −(ν² + 1)/4
        assert_eq!(lam(g("2/3i")).laplacian(&gm).unwrap(), g("-13/36"));
        assert!(
            laplacian_eigenvalue(&lam(g("1")), &ParamVector::from_ints(&[1, 1]), &form.scale)
                .is_err()
        );
    }

    #[test]
    fn eta() {
        let c1 = so4m2_u2m1(1).unwrap();
        let chi = InfinitesimalCharacter::from_coords(
            &ParamVector::from_ints(&[3, -1]),
            &ParamVector::default(),
            &c1,
        )
        .unwrap();
        assert_eq!(eta_involution(&chi).unwrap(), chi);

        let gm = group_manifold_sl2r();
        let chi = InfinitesimalCharacter::from_coords(
            &ParamVector::from_ints(&[3]),
            &ParamVector::from_ints(&[2]),
            &gm,
        )
        .unwrap();
        let eta = eta_involution(&chi).unwrap();
        assert_eq!(eta.rep(), &ParamVector::from_ints(&[3]));
        assert_eq!(eta.fixed(), &ParamVector::from_ints(&[-2]));
        assert_eq!(eta_involution(&eta).unwrap(), chi);
    }

    #[test]
    fn json_shape() {
        let c1 = so4m2_u2m1(1).unwrap();
        let p = EigenvalueParam::from_coords(&ParamVector::from_ints(&[7]), &c1).unwrap();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"coords":[["7","1","0","1"]],"type":"BC1","case":"so4m2_u2m1:m=1"}"#
        );
        let back: ParamJson = serde_json::from_str(&text).unwrap();
        assert_eq!(EigenvalueParam::from_json(&back, &c1).unwrap(), p);
        let wrong: ParamJson = serde_json::from_str(
            r#"{"coords":[["7","1","0","1"]],"type":"B1","case":"so4m2_u2m1:m=1"}"#,
        )
        .unwrap();
        assert!(EigenvalueParam::from_json(&wrong, &c1)
            .unwrap_err()
            .is_schema());
    }
}
