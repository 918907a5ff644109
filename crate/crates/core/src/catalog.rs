//! The catalog of triples `(G, H, L)` with proper cocompact `L`-action on
//! `G/H`, plus the `SL(2,R)` group manifold.
//!
//! Each record carries what the rest of the crate needs to move parameters
//! between `G` and `L`: the Weyl types on both sides, the constant `a` in
//! `□_X ∈ a·dℓ(C_L) + dr(Z(l_C ∩ k_C))`, the fiber coefficient `b` in
//! `□_X ∘ i_τ = a·dℓ(C_L)^τ + b·Cas_{L_K}(τ)`, and the rule enumerating the
//! fiber types `Disc(L_K/L_H)`. Rows whose transfer data is not printed
//! explicitly are cataloged with `None`/[`FiberRule::External`] markers and
//! refuse spectral work that would need it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qarith::{dot, format_rational, rat, GaussianRational, ParamVector};
use crate::weyl::{rho, Family, MultiplicityTable, RootSystemType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableRow {
    I,
    IPrime,
    II,
    III,
    IV,
    V,
    VPrime,
    VI,
    VII,
    VIII,
    IX,
    GroupManifold,
}

impl TableRow {
    pub const TABLE: [TableRow; 11] = [
        TableRow::I,
        TableRow::IPrime,
        TableRow::II,
        TableRow::III,
        TableRow::IV,
        TableRow::V,
        TableRow::VPrime,
        TableRow::VI,
        TableRow::VII,
        TableRow::VIII,
        TableRow::IX,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TableRow::I => "(i)",
            TableRow::IPrime => "(i)'",
            TableRow::II => "(ii)",
            TableRow::III => "(iii)",
            TableRow::IV => "(iv)",
            TableRow::V => "(v)",
            TableRow::VPrime => "(v)'",
            TableRow::VI => "(vi)",
            TableRow::VII => "(vii)",
            TableRow::VIII => "(viii)",
            TableRow::IX => "(ix)",
            TableRow::GroupManifold => "group manifold",
        }
    }

    /// Id stem; parametrized rows append `:n=<n>`.
    pub fn stem(&self) -> &'static str {
        match self {
            TableRow::I => "so2n2_so2n1",
            TableRow::IPrime => "so2n2_so2n1_su",
            TableRow::II => "so2n2_un1",
            TableRow::III => "su2n2_u2n1",
            TableRow::IV => "su2n2_spn1",
            TableRow::V => "so4n4_so4n3",
            TableRow::VPrime => "so4n4_so4n3_u1",
            TableRow::VI => "so88_so87",
            TableRow::VII => "so8c_so7c",
            TableRow::VIII => "so44_spin43",
            TableRow::IX => "so43_g22",
            TableRow::GroupManifold => "group_manifold",
        }
    }

    /// Smallest admissible `n` for parametrized rows.
    pub fn min_n(&self) -> Option<u32> {
        match self {
            TableRow::IPrime => Some(2),
            TableRow::I
            | TableRow::II
            | TableRow::III
            | TableRow::IV
            | TableRow::V
            | TableRow::VPrime => Some(1),
            _ => None,
        }
    }

    /// The rank column of the table, verbatim.
    pub fn rank_column(&self) -> &'static str {
        match self {
            TableRow::II => "⌈n/2⌉",
            TableRow::IV => "n",
            TableRow::VII => "2",
            _ => "1",
        }
    }

    fn rank(&self, n: u32) -> u32 {
        match self {
            TableRow::II => n.div_ceil(2),
            TableRow::IV => n,
            TableRow::VII => 2,
            _ => 1,
        }
    }

    /// `(G, H, L)` with `n` substituted.
    pub fn groups(&self, n: u32) -> [String; 3] {
        let (g, h, l) = match self {
            TableRow::I => (
                format!("SO({},2)", 2 * n),
                format!("SO({},1)", 2 * n),
                format!("U({n},1)"),
            ),
            TableRow::IPrime => (
                format!("SO({},2)", 2 * n),
                format!("SO({},1)", 2 * n),
                format!("SU({n},1)"),
            ),
            TableRow::II => (
                format!("SO({},2)", 2 * n),
                format!("U({n},1)"),
                format!("SO({},1)", 2 * n),
            ),
            TableRow::III => (
                format!("SU({},2)", 2 * n),
                format!("U({},1)", 2 * n),
                format!("Sp({n},1)"),
            ),
            TableRow::IV => (
                format!("SU({},2)", 2 * n),
                format!("Sp({n},1)"),
                format!("U({},1)", 2 * n),
            ),
            TableRow::V => (
                format!("SO({},4)", 4 * n),
                format!("SO({},3)", 4 * n),
                format!("Sp(1)·Sp({n},1)"),
            ),
            TableRow::VPrime => (
                format!("SO({},4)", 4 * n),
                format!("SO({},3)", 4 * n),
                format!("U(1)·Sp({n},1)"),
            ),
            TableRow::VI => ("SO(8,8)".into(), "SO(8,7)".into(), "Spin(8,1)".into()),
            TableRow::VII => ("SO(8,C)".into(), "SO(7,C)".into(), "Spin(7,1)".into()),
            TableRow::VIII => ("SO(4,4)".into(), "Spin(4,3)".into(), "SO(4,1)×SO(3)".into()),
            TableRow::IX => ("SO(4,3)".into(), "G2(2)".into(), "SO(4,1)×SO(2)".into()),
            TableRow::GroupManifold => (
                "SL(2,R)×SL(2,R)".into(),
                "Diag(SL(2,R))".into(),
                "SL(2,R)×SO(2)".into(),
            ),
        };
        [g, h, l]
    }

    /// Templated `(G, H, L)` names as they appear in the table.
    pub fn group_templates(&self) -> [&'static str; 3] {
        match self {
            TableRow::I => ["SO(2n,2)", "SO(2n,1)", "U(n,1)"],
            TableRow::IPrime => ["SO(2n,2)", "SO(2n,1)", "SU(n,1)"],
            TableRow::II => ["SO(2n,2)", "U(n,1)", "SO(2n,1)"],
            TableRow::III => ["SU(2n,2)", "U(2n,1)", "Sp(n,1)"],
            TableRow::IV => ["SU(2n,2)", "Sp(n,1)", "U(2n,1)"],
            TableRow::V => ["SO(4n,4)", "SO(4n,3)", "Sp(1)·Sp(n,1)"],
            TableRow::VPrime => ["SO(4n,4)", "SO(4n,3)", "U(1)·Sp(n,1)"],
            TableRow::VI => ["SO(8,8)", "SO(8,7)", "Spin(8,1)"],
            TableRow::VII => ["SO(8,C)", "SO(7,C)", "Spin(7,1)"],
            TableRow::VIII => ["SO(4,4)", "Spin(4,3)", "SO(4,1)×SO(3)"],
            TableRow::IX => ["SO(4,3)", "G2(2)", "SO(4,1)×SO(2)"],
            TableRow::GroupManifold => ["'G×'G", "Diag('G)", "'G×'K"],
        }
    }

    /// `(a, b)` where `□_X = a·dℓ(C_L) + b·dr(C_{L_K})` holds as printed;
    /// `None` where the constants are not stated.
    fn casimir_constants(&self) -> Option<(BigRational, BigRational)> {
        match self {
            TableRow::I | TableRow::II => Some((rat(2, 1), rat(-1, 1))),
            TableRow::VII => Some((rat(6, 1), rat(-4, 1))),
            TableRow::GroupManifold => Some((rat(1, 1), rat(-1, 1))),
            _ => None,
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One row of the table as a family in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub row: TableRow,
    pub id_template: String,
    pub groups: [&'static str; 3],
    pub rank_column: &'static str,
    pub casimir_a: Option<BigRational>,
}

/// The eleven table rows, in table order.
pub fn case_list() -> Vec<CatalogRow> {
    TableRow::TABLE
        .iter()
        .map(|&row| CatalogRow {
            row,
            id_template: match row.min_n() {
                Some(_) => format!("{}:n=<n>", row.stem()),
                None => row.stem().to_string(),
            },
            groups: row.group_templates(),
            rank_column: row.rank_column(),
            casimir_a: row.casimir_constants().map(|(a, _)| a),
        })
        .collect()
}

/// Invariant form data on one side: the Weyl type, the scale of
/// `⟨·,·⟩` relative to the standard coordinates, and `ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideForm {
    pub weyl: RootSystemType,
    pub scale: BigRational,
    pub multiplicities: MultiplicityTable,
    pub rho: ParamVector,
}

impl SideForm {
    fn new(weyl: RootSystemType, scale: BigRational, multiplicities: MultiplicityTable) -> Self {
        let rho =
            rho(weyl, &multiplicities).expect("catalog multiplicities cover the positive roots");
        Self {
            weyl,
            scale,
            multiplicities,
            rho,
        }
    }

    /// `⟨v, v⟩ − ⟨ρ, ρ⟩` under this form.
    pub fn casimir(&self, v: &ParamVector) -> Result<GaussianRational> {
        Ok(dot(v, v, &self.scale)? - dot(&self.rho, &self.rho, &self.scale)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberRule {
    /// `SO(4m)/U(2m)`: highest weights `(j_1, j_1, …, j_m, j_m)`,
    /// `j_1 ≥ … ≥ j_m ≥ 0`.
    So4mU2m {
        m: usize,
    },
    /// Characters `k ∈ Z` of a circle.
    CircleCharacter,
    External,
}

impl FiberRule {
    pub fn name(&self) -> String {
        match self {
            FiberRule::So4mU2m { m } => format!("SO4m_U2m(m={m})"),
            FiberRule::CircleCharacter => "CircleCharacter".into(),
            FiberRule::External => "external".into(),
        }
    }
}

/// How the fiber Casimir `Cas_{L_K}` is evaluated on a fiber type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberForm {
    /// Highest-weight formula `scale · ⟨μ, μ + 2ρ_K⟩` for `L_K` of the given type.
    HighestWeight(SideForm),
    /// `scale · k²` on the character `k` of a circle.
    Circle { scale: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferCase {
    pub id: String,
    pub row: TableRow,
    pub n: Option<u32>,
    pub g: String,
    pub h: String,
    pub l: String,
    pub rank_x: u32,
    /// Form on `j*_C`; `None` when external.
    pub g_side: Option<SideForm>,
    /// Form on the Weyl-acted part of `t*_C`; `None` when external.
    pub l_side: Option<SideForm>,
    /// Extra `t*_C` coordinates on which `W(l_C)` acts trivially (the
    /// compact abelian factor of `L` in the group-manifold case).
    pub l_fixed_dim: usize,
    pub casimir_a: Option<BigRational>,
    pub fiber_coefficient: Option<BigRational>,
    pub fiber_rule: FiberRule,
    pub fiber_form: Option<FiberForm>,
    /// Conditions (Tf), (A), (B) are asserted for every cataloged case.
    pub conditions_asserted: bool,
    /// The type-I discrete spectrum is empty for every quotient.
    pub type_one_empty: bool,
}

impl TransferCase {
    pub fn g_weyl(&self) -> Option<RootSystemType> {
        self.g_side.as_ref().map(|f| f.weyl)
    }

    pub fn l_weyl(&self) -> Option<RootSystemType> {
        self.l_side.as_ref().map(|f| f.weyl)
    }

    pub fn has_explicit_transfer(&self) -> bool {
        !matches!(self.fiber_rule, FiberRule::External)
            && self.g_side.is_some()
            && self.l_side.is_some()
    }

    pub fn g_form(&self) -> Result<&SideForm> {
        self.g_side
            .as_ref()
            .ok_or_else(|| self.external("G-side form data"))
    }

    pub fn l_form(&self) -> Result<&SideForm> {
        self.l_side
            .as_ref()
            .ok_or_else(|| self.external("L-side form data"))
    }

    pub fn casimir_a(&self) -> Result<&BigRational> {
        self.casimir_a
            .as_ref()
            .ok_or_else(|| self.external("Casimir constant"))
    }

    pub(crate) fn external(&self, what: &'static str) -> Error {
        Error::ExternalCase {
            case: self.id.clone(),
            what,
        }
    }

    pub(crate) fn check_owner(&self, found: &str) -> Result<()> {
        if found == self.id {
            Ok(())
        } else {
            Err(Error::CaseMismatch {
                expected: self.id.clone(),
                found: found.to_string(),
            })
        }
    }

    pub fn to_json(&self) -> Value {
        let rat_opt = |q: &Option<BigRational>| match q {
            Some(q) => Value::String(format_rational(q)),
            None => Value::String("external".into()),
        };
        let side = |s: &Option<SideForm>| match s {
            Some(f) => json!({
                "type": f.weyl,
                "scale": format_rational(&f.scale),
                "rho": f.rho,
                "multiplicities": f.multiplicities,
            }),
            None => Value::String("external".into()),
        };
        let fiber_form = match &self.fiber_form {
            Some(FiberForm::HighestWeight(f)) => json!({
                "type": f.weyl,
                "scale": format_rational(&f.scale),
                "rho": f.rho,
            }),
            Some(FiberForm::Circle { scale }) => json!({
                "type": "circle",
                "scale": format_rational(scale),
            }),
            None => Value::String("external".into()),
        };
        json!({
            "id": self.id,
            "row": self.row.label(),
            "G": self.g,
            "H": self.h,
            "L": self.l,
            "rank_x": self.rank_x,
            "g_side": side(&self.g_side),
            "l_side": side(&self.l_side),
            "l_fixed_dim": self.l_fixed_dim,
            "casimir_a": rat_opt(&self.casimir_a),
            "fiber_coefficient": rat_opt(&self.fiber_coefficient),
            "fiber_rule": self.fiber_rule.name(),
            "fiber_form": fiber_form,
            "conditions_asserted": self.conditions_asserted,
            "type_one_empty": self.type_one_empty,
        })
    }
}

fn base_case(row: TableRow, n: Option<u32>, id: String) -> TransferCase {
    let [g, h, l] = row.groups(n.unwrap_or(0));
    let consts = row.casimir_constants();
    TransferCase {
        id,
        row,
        n,
        g,
        h,
        l,
        rank_x: row.rank(n.unwrap_or(0)),
        g_side: None,
        l_side: None,
        l_fixed_dim: 0,
        casimir_a: consts.as_ref().map(|c| c.0.clone()),
        fiber_coefficient: consts.map(|c| c.1),
        fiber_rule: FiberRule::External,
        fiber_form: None,
        conditions_asserted: true,
        type_one_empty: false,
    }
}

fn ty(family: Family, rank: usize) -> RootSystemType {
    RootSystemType::new(family, rank).expect("catalog root systems are valid")
}

/// `SO(4m,2)/U(2m,1)` with `L = SO(4m,1)`.
///
/// The `L`-side and fiber forms are the standard ones (all multiplicities 1,
/// scale 1). The `G`-side form is the restricted root system `BC_m` of the
/// compact dual `SO(4m+2)/U(2m+1)` (multiplicities 4, 4, 1) at scale 1/2:
/// with that choice `2·Cas_L(ν(λ,τ)) − Cas_{SO(4m)}(τ)` depends on `λ`
/// alone and equals `t_λ`, and `ν(ρ_G, trivial) = ρ_L`.
pub fn so4m2_u2m1(m: u32) -> Result<TransferCase> {
    if m == 0 {
        return Err(Error::UnknownCase("so4m2_u2m1:m=0 (need m ≥ 1)".into()));
    }
    let mut case = base_case(TableRow::II, Some(2 * m), format!("so4m2_u2m1:m={m}"));
    let m = m as usize;
    case.g_side = Some(SideForm::new(
        ty(Family::BC, m),
        rat(1, 2),
        MultiplicityTable::by_kind(ty(Family::BC, m), 4, 4, 1),
    ));
    case.l_side = Some(SideForm::new(
        ty(Family::B, 2 * m),
        rat(1, 1),
        MultiplicityTable::uniform(ty(Family::B, 2 * m), 1),
    ));
    case.fiber_rule = FiberRule::So4mU2m { m };
    case.fiber_form = Some(FiberForm::HighestWeight(SideForm::new(
        ty(Family::D, 2 * m),
        rat(1, 1),
        MultiplicityTable::uniform(ty(Family::D, 2 * m), 1),
    )));
    Ok(case)
}

/// `(SL(2,R) × SL(2,R))/Diag`, i.e. `AdS³`, with `L = SL(2,R) × SO(2)`.
///
/// The `SL(2,R)` parameter is taken modulo sign with the normalization in
/// which the single positive root is `2e_1` (so `ρ = 1`) and the form has
/// scale 1/4; then `t_λ = (λ² − 1)/4`.
pub fn group_manifold_sl2r() -> TransferCase {
    let mut case = base_case(TableRow::GroupManifold, None, "group_manifold:sl2r".into());
    let c1 = ty(Family::C, 1);
    let form = SideForm::new(c1, rat(1, 4), MultiplicityTable::uniform(c1, 1));
    case.rank_x = 1;
    case.g_side = Some(form.clone());
    case.l_side = Some(form);
    case.l_fixed_dim = 1;
    case.fiber_rule = FiberRule::CircleCharacter;
    case.fiber_form = Some(FiberForm::Circle { scale: rat(1, 4) });
    case
}

/// Constructor for the group-manifold family; only `'G = SL(2,R)` is
/// implemented.
pub fn group_manifold(name: &str) -> Result<TransferCase> {
    match name {
        "sl2r" => Ok(group_manifold_sl2r()),
        other => Err(Error::UnknownCase(format!("group_manifold:{other}"))),
    }
}

fn parse_n(id: &str, param: Option<&str>, key: &str, min: u32) -> Result<u32> {
    let unknown = || Error::UnknownCase(id.to_string());
    let value = param
        .and_then(|p| p.strip_prefix(key))
        .and_then(|p| p.strip_prefix('='))
        .ok_or_else(unknown)?;
    let n: u32 = value.parse().map_err(|_| unknown())?;
    if n < min {
        return Err(Error::UnknownCase(format!("{id} (need {key} ≥ {min})")));
    }
    Ok(n)
}

/// Look up a case by id. Row (ii) with even `n = 2m` resolves to the
/// explicit record `so4m2_u2m1:m=<m>`.
pub fn case_lookup(id: &str) -> Result<TransferCase> {
    let (stem, param) = match id.split_once(':') {
        Some((s, p)) => (s, Some(p)),
        None => (id, None),
    };
    if stem == "group_manifold" {
        return group_manifold(param.ok_or_else(|| Error::UnknownCase(id.into()))?);
    }
    if stem == "so4m2_u2m1" {
        return so4m2_u2m1(parse_n(id, param, "m", 1)?);
    }
    let row = TableRow::TABLE
        .into_iter()
        .find(|r| r.stem() == stem)
        .ok_or_else(|| Error::UnknownCase(id.into()))?;
    let n = match row.min_n() {
        Some(min) => Some(parse_n(id, param, "n", min)?),
        None if param.is_some() => return Err(Error::UnknownCase(id.into())),
        None => None,
    };
    if row == TableRow::II {
        let n = n.expect("row (ii) is parametrized");
        if n % 2 == 0 {
            return so4m2_u2m1(n / 2);
        }
    }
    let mut case = base_case(row, n, id.to_string());
    // row (ii) only reaches here with n odd
    case.type_one_empty = matches!(row, TableRow::II | TableRow::VII);
    Ok(case)
}

/// Payload of a fiber type `τ ∈ Disc(L_K/L_H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TauPayload {
    /// `(j_1, …, j_m)` standing for the highest weight `(j_1, j_1, …, j_m, j_m)`.
    Partition(Vec<u64>),
    /// A circle character.
    Circle(i64),
    /// The trivial fiber type, for cases whose fiber enumeration is external.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauParam {
    case_id: String,
    payload: TauPayload,
}

impl TauParam {
    pub fn new(case: &TransferCase, payload: TauPayload) -> Result<Self> {
        let invalid = |detail: String| Error::InvalidTau {
            case: case.id.clone(),
            detail,
        };
        match (&case.fiber_rule, &payload) {
            (FiberRule::So4mU2m { m }, TauPayload::Partition(js)) => {
                if js.len() != *m {
                    return Err(invalid(format!("expected {m} entries, got {}", js.len())));
                }
                if js.windows(2).any(|w| w[0] < w[1]) {
                    return Err(invalid(format!("{js:?} is not non-increasing")));
                }
            }
            (FiberRule::CircleCharacter, TauPayload::Circle(_)) => {}
            (FiberRule::External, TauPayload::Trivial) => {}
            (rule, p) => {
                return Err(invalid(format!("{p:?} does not fit rule {}", rule.name())));
            }
        }
        Ok(Self {
            case_id: case.id.clone(),
            payload,
        })
    }

    /// From the integer-list wire form: `m` entries for `SO4m_U2m`, one
    /// for circle characters, none for the trivial type of external rules.
    pub fn from_ints(case: &TransferCase, xs: &[i64]) -> Result<Self> {
        let payload = match case.fiber_rule {
            FiberRule::So4mU2m { .. } => TauPayload::Partition(
                xs.iter()
                    .map(|&x| {
                        u64::try_from(x).map_err(|_| Error::InvalidTau {
                            case: case.id.clone(),
                            detail: format!("negative entry {x}"),
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
            FiberRule::CircleCharacter => match xs {
                [k] => TauPayload::Circle(*k),
                _ => {
                    return Err(Error::InvalidTau {
                        case: case.id.clone(),
                        detail: format!("a circle character is one integer, got {}", xs.len()),
                    })
                }
            },
            FiberRule::External => {
                if !xs.is_empty() {
                    return Err(Error::InvalidTau {
                        case: case.id.clone(),
                        detail: "only the trivial fiber type `[]` is available".into(),
                    });
                }
                TauPayload::Trivial
            }
        };
        Self::new(case, payload)
    }

    /// The trivial fiber type of `case`.
    pub fn trivial(case: &TransferCase) -> Self {
        let payload = match case.fiber_rule {
            FiberRule::So4mU2m { m } => TauPayload::Partition(vec![0; m]),
            FiberRule::CircleCharacter => TauPayload::Circle(0),
            FiberRule::External => TauPayload::Trivial,
        };
        Self {
            case_id: case.id.clone(),
            payload,
        }
    }

    pub fn case_id(&self) -> &str {
        &self.case_id
    }

    pub fn payload(&self) -> &TauPayload {
        &self.payload
    }

    pub fn to_ints(&self) -> Vec<i64> {
        match &self.payload {
            TauPayload::Partition(js) => js.iter().map(|&j| j as i64).collect(),
            TauPayload::Circle(k) => vec![*k],
            TauPayload::Trivial => vec![],
        }
    }

    pub fn is_trivial(&self) -> bool {
        match &self.payload {
            TauPayload::Partition(js) => js.iter().all(|&j| j == 0),
            TauPayload::Circle(k) => *k == 0,
            TauPayload::Trivial => true,
        }
    }

    /// Highest weight of the `L_K`-representation in standard coordinates.
    pub fn highest_weight(&self) -> ParamVector {
        match &self.payload {
            TauPayload::Partition(js) => js
                .iter()
                .flat_map(|&j| {
                    let x = GaussianRational::real(BigRational::from_integer(BigInt::from(j)));
                    [x.clone(), x]
                })
                .collect(),
            TauPayload::Circle(k) => ParamVector::from_ints(&[*k]),
            TauPayload::Trivial => ParamVector::default(),
        }
    }
}

impl fmt::Display for TauParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_ints())
    }
}

fn partitions_in_box(m: usize, bound: u64) -> Vec<Vec<u64>> {
    fn rec(prefix: &mut Vec<u64>, m: usize, cap: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for j in 0..=cap {
            prefix.push(j);
            rec(prefix, m, j, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(m), m, bound, &mut out);
    out
}

/// All fiber types with largest entry (in absolute value) at most `bound`,
/// in increasing lexicographic order.
pub fn enumerate_fiber_types(case: &TransferCase, bound: u64) -> Result<Vec<TauParam>> {
    let wrap = |payload| TauParam {
        case_id: case.id.clone(),
        payload,
    };
    match case.fiber_rule {
        FiberRule::So4mU2m { m } => Ok(partitions_in_box(m, bound)
            .into_iter()
            .map(|js| wrap(TauPayload::Partition(js)))
            .collect()),
        FiberRule::CircleCharacter => {
            let b = i64::try_from(bound)
                .map_err(|_| Error::InvalidParameter("bound too large".into()))?;
            Ok((-b..=b).map(|k| wrap(TauPayload::Circle(k))).collect())
        }
        FiberRule::External => Err(case.external("fiber type enumeration")),
    }
}

/// The Casimir of `L_K` on the fiber type `τ`: `scale·⟨μ, μ + 2ρ_K⟩` for a
/// highest weight `μ`, `scale·k²` on a circle character. The trivial type
/// gives 0 under any form.
pub fn casimir_scalar_on_tau(tau: &TauParam, case: &TransferCase) -> Result<GaussianRational> {
    case.check_owner(tau.case_id())?;
    if tau.is_trivial() {
        return Ok(GaussianRational::zero());
    }
    match (&case.fiber_form, &tau.payload) {
        (Some(FiberForm::HighestWeight(form)), TauPayload::Partition(_)) => {
            let mu = tau.highest_weight();
            let shifted = mu.add(&form.rho.scale(&rat(2, 1)))?;
            dot(&mu, &shifted, &form.scale)
        }
        (Some(FiberForm::Circle { scale }), TauPayload::Circle(k)) => {
            let k = BigRational::from_integer(BigInt::from(*k));
            Ok(GaussianRational::real(&k * &k * scale))
        }
        (None, _) => Err(case.external("fiber Casimir form")),
        _ => Err(Error::InvalidTau {
            case: case.id.clone(),
            detail: "fiber type does not match the case's fiber form".into(),
        }),
    }
}

/// `c(τ) = b·Cas_{L_K}(τ)` with `b` the fiber coefficient of the case.
pub fn fiber_shift(tau: &TauParam, case: &TransferCase) -> Result<GaussianRational> {
    let b = case
        .fiber_coefficient
        .as_ref()
        .ok_or_else(|| case.external("fiber coefficient"))?;
    let cas = casimir_scalar_on_tau(tau, case)?;
    if cas.is_zero() {
        return Ok(cas);
    }
    Ok(cas.scale(b))
}
