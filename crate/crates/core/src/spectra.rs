//! Assembly of `Spec_d(X_Γ)` from Riemannian data on `Γ\L`.
//!
//! The caller supplies, for each `ϑ ∈ Disc(Γ\L)`, its infinitesimal
//! character, the fiber types `τ` with `ϑ ∈ L̂(τ)`, and whether `ϑ` is a
//! Harish-Chandra discrete series. Each pair `(ϑ, τ)` then contributes
//! `λ(χ_ϑ, τ)`, of type I when `ϑ ∈ Disc(L)` and of type II otherwise.
//!
//! A character may also be given only through its Casimir eigenvalue `s`;
//! the entry then carries `t = a·s + c(τ)` and no `λ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use crate::catalog::{case_lookup, TauParam, TransferCase};
use crate::error::{Error, Result};
use crate::hcparam::{EigenvalueParam, InfinitesimalCharacter, ParamJson};
use crate::qarith::GaussianRational;
use crate::transfer::{scalar_transfer_eigenvalue, transfer_lambda, transfer_nu, ScalarTransfer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiData {
    Param(InfinitesimalCharacter),
    /// Only the eigenvalue of the `L`-Casimir is known.
    Casimir(GaussianRational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscGammaLEntry {
    pub label: String,
    pub chi: ChiData,
    pub compatible_taus: Vec<TauParam>,
    pub is_hc_discrete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscDocument {
    pub case: TransferCase,
    pub entries: Vec<DiscGammaLEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpectrumType {
    I,
    II,
}

impl SpectrumType {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumType::I => "I",
            SpectrumType::II => "II",
        }
    }
}

impl fmt::Display for SpectrumType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Filter {
    #[default]
    All,
    I,
    II,
}

impl Filter {
    fn admits(&self, t: SpectrumType) -> bool {
        match self {
            Filter::All => true,
            Filter::I => t == SpectrumType::I,
            Filter::II => t == SpectrumType::II,
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Filter::All),
            "I" => Ok(Filter::I),
            "II" => Ok(Filter::II),
            _ => Err(Error::Parse(format!(
                "filter must be all, I or II, got `{s}`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    /// `None` when the source character was given by its Casimir value.
    pub lambda: Option<EigenvalueParam>,
    pub t_lambda: GaussianRational,
    pub type_tag: SpectrumType,
    pub source_label: String,
    pub tau: TauParam,
    /// Another entry of the other type carries the same eigenvalue.
    pub collision: bool,
}

fn with_label(label: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::Entry {
        label: label.to_string(),
        source: Box::new(e),
    }
}

/// One pair `(ϑ, τ)` turned into a spectrum entry.
fn assemble_one(
    entry: &DiscGammaLEntry,
    tau: &TauParam,
    case: &TransferCase,
    scalar: Option<&ScalarTransfer>,
) -> Result<SpectrumEntry> {
    case.check_owner(tau.case_id())?;
    let (lambda, t) = match &entry.chi {
        ChiData::Param(chi) => {
            let lambda = transfer_lambda(chi, tau, case)?;
            if transfer_nu(&lambda, tau, case)? != *chi {
                return Err(Error::NotInImage(format!(
                    "audit failed for λ = {}",
                    lambda.rep()
                )));
            }
            let t = lambda.laplacian(case)?;
            if let Some(st) = scalar {
                let via_l = scalar_transfer_eigenvalue(&chi.casimir(case)?, tau, st)?;
                if via_l != t {
                    return Err(Error::InvalidParameter(format!(
                        "form data of `{}` is inconsistent: t_λ = {t} but a·χ(C_L) + c(τ) = {via_l}",
                        case.id
                    )));
                }
            }
            (Some(lambda), t)
        }
        ChiData::Casimir(s) => {
            let st = scalar.ok_or_else(|| Error::ExternalCase {
                case: case.id.clone(),
                what: "Casimir constant",
            })?;
            (None, scalar_transfer_eigenvalue(s, tau, st)?)
        }
    };
    Ok(SpectrumEntry {
        lambda,
        t_lambda: t,
        type_tag: if entry.is_hc_discrete {
            SpectrumType::I
        } else {
            SpectrumType::II
        },
        source_label: entry.label.clone(),
        tau: tau.clone(),
        collision: false,
    })
}

fn same_eigenvalue(a: &SpectrumEntry, b: &SpectrumEntry, rank_one: bool) -> bool {
    match (&a.lambda, &b.lambda) {
        (Some(x), Some(y)) => x == y,
        // in rank one, t_λ determines λ modulo W
        _ => rank_one && a.t_lambda == b.t_lambda,
    }
}

/// The discrete spectrum contributed by `entries`, each `(ϑ, τ)` pair once,
/// sorted by `λ` (entries known only through `t` last, by `t`), then `τ`.
pub fn assemble_spectrum(
    entries: &[DiscGammaLEntry],
    case: &TransferCase,
    filter: Filter,
) -> Result<Vec<SpectrumEntry>> {
    let scalar = case
        .casimir_a
        .is_some()
        .then(|| ScalarTransfer::for_case(case))
        .transpose()?;
    if scalar.is_none() && !case.has_explicit_transfer() {
        return Err(Error::ExternalCase {
            case: case.id.clone(),
            what: "transfer data",
        });
    }
    let mut out = Vec::new();
    for entry in entries {
        if let ChiData::Param(chi) = &entry.chi {
            case.check_owner(chi.case_id())
                .map_err(with_label(&entry.label))?;
        }
        for tau in &entry.compatible_taus {
            out.push(
                assemble_one(entry, tau, case, scalar.as_ref())
                    .map_err(with_label(&entry.label))?,
            );
        }
    }
    let rank_one = case.rank_x == 1;
    let flags: Vec<bool> = out
        .iter()
        .map(|a| {
            out.iter()
                .any(|b| a.type_tag != b.type_tag && same_eigenvalue(a, b, rank_one))
        })
        .collect();
    for (e, flag) in out.iter_mut().zip(flags) {
        e.collision = flag;
    }
    out.retain(|e| filter.admits(e.type_tag));
    out.sort_by(|a, b| {
        (
            a.lambda.is_none(),
            &a.lambda,
            &a.t_lambda,
            &a.tau,
            &a.source_label,
        )
            .cmp(&(
                b.lambda.is_none(),
                &b.lambda,
                &b.t_lambda,
                &b.tau,
                &b.source_label,
            ))
    });
    Ok(out)
}

/// The fiber types `τ` with `ϑ ∈ L̂(τ)`, from a branching rule for
/// `L_K ⊂ L`. No case carries such a rule yet, so callers list the
/// compatible types themselves.
pub fn derive_compatible_taus(
    chi: &InfinitesimalCharacter,
    case: &TransferCase,
) -> Result<Vec<TauParam>> {
    case.check_owner(chi.case_id())?;
    Err(Error::ExternalCase {
        case: case.id.clone(),
        what: "branching rule for L_K ⊂ L",
    })
}

/// Group-manifold entries for Maass eigenvalues `μ` of `'Γ\H²`: spherical,
/// non-discrete-series, trivial fiber type, Casimir value `−2μ`.
pub fn surface_entries(case: &TransferCase, mus: &[BigRational]) -> Result<Vec<DiscGammaLEntry>> {
    mus.iter()
        .map(|mu| {
            Ok(DiscGammaLEntry {
                label: format!("maass mu={}", crate::qarith::format_rational(mu)),
                chi: ChiData::Casimir(crate::ads3::surface_to_ads3(mu)?),
                compatible_taus: vec![TauParam::trivial(case)],
                is_hc_discrete: false,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// JSON

fn parse_json(bytes: &[u8]) -> Result<Value> {
    serde_json::from_slice(bytes).map_err(|e| {
        Error::schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))?;
    if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::schema(format!("{path}.{k}"), "unknown field"));
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "missing field"))
}

fn typed<T: DeserializeOwned>(v: &Value, path: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::schema(path, e.to_string()))
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Schema { location, detail } => Error::schema(format!("{path}.{location}"), detail),
        other => Error::schema(path, other.to_string()),
    }
}

fn emit(value: Value) -> Vec<u8> {
    let mut text = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
    text.push('\n');
    text.into_bytes()
}

fn load_case(doc: &Map<String, Value>) -> Result<TransferCase> {
    let id: String = typed(field(doc, "$", "case")?, "$.case")?;
    case_lookup(&id).map_err(|e| Error::schema("$.case", e.to_string()))
}

fn load_tau(v: &Value, path: &str, case: &TransferCase) -> Result<TauParam> {
    let ints: Vec<i64> = typed(v, path)?;
    TauParam::from_ints(case, &ints).map_err(|e| Error::schema(path, e.to_string()))
}

fn load_chi(v: &Value, path: &str, case: &TransferCase) -> Result<ChiData> {
    let obj = object(v, path, &["coords", "type", "case", "fixed", "casimir"])?;
    if let Some(s) = obj.get("casimir") {
        object(v, path, &["casimir", "case"])?;
        let owner: String = typed(field(obj, path, "case")?, &format!("{path}.case"))?;
        case.check_owner(&owner).map_err(|e| at(path, e))?;
        return Ok(ChiData::Casimir(typed(s, &format!("{path}.casimir"))?));
    }
    let p: ParamJson = typed(v, path)?;
    InfinitesimalCharacter::from_json(&p, case)
        .map(ChiData::Param)
        .map_err(|e| at(path, e))
}

fn chi_json(chi: &ChiData, case: &TransferCase) -> Value {
    match chi {
        ChiData::Param(c) => json!(c.to_json()),
        ChiData::Casimir(s) => json!({ "casimir": s, "case": case.id }),
    }
}

/// Parse a `Disc(Γ\L)` document:
/// `{"case": id, "entries": [{"label", "chi", "taus", "hc_discrete"}]}`.
pub fn load_disc_data(bytes: &[u8]) -> Result<DiscDocument> {
    let root = parse_json(bytes)?;
    let doc = object(&root, "$", &["case", "entries"])?;
    let case = load_case(doc)?;
    let raw = field(doc, "$", "entries")?
        .as_array()
        .ok_or_else(|| Error::schema("$.entries", "expected an array"))?;
    let mut entries = Vec::with_capacity(raw.len());
    for (k, e) in raw.iter().enumerate() {
        let path = format!("$.entries[{k}]");
        let obj = object(e, &path, &["label", "chi", "taus", "hc_discrete"])?;
        let label: String = typed(field(obj, &path, "label")?, &format!("{path}.label"))?;
        let chi = load_chi(field(obj, &path, "chi")?, &format!("{path}.chi"), &case)?;
        let taus_raw = field(obj, &path, "taus")?
            .as_array()
            .ok_or_else(|| Error::schema(format!("{path}.taus"), "expected an array"))?;
        if taus_raw.is_empty() {
            return Err(Error::schema(
                format!("{path}.taus"),
                "must be nonempty: every entry needs at least one compatible fiber type",
            ));
        }
        let compatible_taus = taus_raw
            .iter()
            .enumerate()
            .map(|(j, t)| load_tau(t, &format!("{path}.taus[{j}]"), &case))
            .collect::<Result<_>>()?;
        let is_hc_discrete = typed(
            field(obj, &path, "hc_discrete")?,
            &format!("{path}.hc_discrete"),
        )?;
        entries.push(DiscGammaLEntry {
            label,
            chi,
            compatible_taus,
            is_hc_discrete,
        });
    }
    Ok(DiscDocument { case, entries })
}

/// Canonical serialization of a `Disc(Γ\L)` document (sorted keys).
pub fn emit_disc_data(doc: &DiscDocument) -> Vec<u8> {
    let entries: Vec<Value> = doc
        .entries
        .iter()
        .map(|e| {
            json!({
                "label": e.label,
                "chi": chi_json(&e.chi, &doc.case),
                "taus": e.compatible_taus.iter().map(TauParam::to_ints).collect::<Vec<_>>(),
                "hc_discrete": e.is_hc_discrete,
            })
        })
        .collect();
    emit(json!({ "case": doc.case.id, "entries": entries }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumDocument {
    pub case: TransferCase,
    pub spectrum: Vec<SpectrumEntry>,
}

/// Canonical serialization of an assembled spectrum.
pub fn emit_spectrum(doc: &SpectrumDocument) -> Vec<u8> {
    let spectrum: Vec<Value> = doc
        .spectrum
        .iter()
        .map(|e| {
            let mut m = BTreeMap::new();
            m.insert(
                "lambda",
                e.lambda
                    .as_ref()
                    .map_or(Value::Null, |l| json!(l.to_json())),
            );
            m.insert("t_lambda", json!(e.t_lambda));
            m.insert("type", json!(e.type_tag.as_str()));
            m.insert(
                "source",
                json!({ "label": e.source_label, "tau": e.tau.to_ints() }),
            );
            if e.collision {
                m.insert("collision", Value::Bool(true));
            }
            json!(m)
        })
        .collect();
    emit(json!({ "case": doc.case.id, "spectrum": spectrum }))
}

pub fn load_spectrum(bytes: &[u8]) -> Result<SpectrumDocument> {
    let root = parse_json(bytes)?;
    let doc = object(&root, "$", &["case", "spectrum"])?;
    let case = load_case(doc)?;
    let raw = field(doc, "$", "spectrum")?
        .as_array()
        .ok_or_else(|| Error::schema("$.spectrum", "expected an array"))?;
    let mut spectrum = Vec::with_capacity(raw.len());
    for (k, e) in raw.iter().enumerate() {
        let path = format!("$.spectrum[{k}]");
        let obj = object(
            e,
            &path,
            &["lambda", "t_lambda", "type", "source", "collision"],
        )?;
        let lambda = match field(obj, &path, "lambda")? {
            Value::Null => None,
            v => {
                let p: ParamJson = typed(v, &format!("{path}.lambda"))?;
                Some(
                    EigenvalueParam::from_json(&p, &case)
                        .map_err(|e| at(&format!("{path}.lambda"), e))?,
                )
            }
        };
        let t_lambda = typed(field(obj, &path, "t_lambda")?, &format!("{path}.t_lambda"))?;
        let type_tag =
            match typed::<String>(field(obj, &path, "type")?, &format!("{path}.type"))?.as_str() {
                "I" => SpectrumType::I,
                "II" => SpectrumType::II,
                other => {
                    return Err(Error::schema(
                        format!("{path}.type"),
                        format!("expected I or II, got `{other}`"),
                    ))
                }
            };
        let spath = format!("{path}.source");
        let source = object(field(obj, &path, "source")?, &spath, &["label", "tau"])?;
        let source_label = typed(field(source, &spath, "label")?, &format!("{spath}.label"))?;
        let tau = load_tau(
            field(source, &spath, "tau")?,
            &format!("{spath}.tau"),
            &case,
        )?;
        let collision = match obj.get("collision") {
            Some(v) => typed(v, &format!("{path}.collision"))?,
            None => false,
        };
        spectrum.push(SpectrumEntry {
            lambda,
            t_lambda,
            type_tag,
            source_label,
            tau,
            collision,
        });
    }
    Ok(SpectrumDocument { case, spectrum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{case_lookup, group_manifold_sl2r};
    use crate::qarith::{rat, ParamVector};

    fn gm_entry(label: &str, hc: i64, k: i64, discrete: bool) -> DiscGammaLEntry {
        let gm = group_manifold_sl2r();
        DiscGammaLEntry {
            label: label.into(),
            chi: ChiData::Param(
                InfinitesimalCharacter::from_coords(
                    &ParamVector::from_ints(&[hc]),
                    &ParamVector::from_ints(&[k]),
                    &gm,
                )
                .unwrap(),
            ),
            compatible_taus: vec![TauParam::from_ints(&gm, &[k]).unwrap()],
            is_hc_discrete: discrete,
        }
    }

    #[test]
    fn discrete_series_entry() {
        let gm = group_manifold_sl2r();
        let out = assemble_spectrum(&[gm_entry("ds2", 2, 2, true)], &gm, Filter::All).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].type_tag, SpectrumType::I);
        assert_eq!(out[0].t_lambda, GaussianRational::from_ratio(3, 4));
    }

    #[test]
    fn surface_entry() {
        let gm = group_manifold_sl2r();
        let entries = surface_entries(&gm, &[rat(1, 4)]).unwrap();
        let out = assemble_spectrum(&entries, &gm, Filter::All).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].type_tag, SpectrumType::II);
        assert_eq!(out[0].t_lambda, GaussianRational::from_ratio(-1, 2));
        assert!(out[0].lambda.is_none());
    }

    #[test]
    fn empty_and_external() {
        let gm = group_manifold_sl2r();
        assert!(assemble_spectrum(&[], &gm, Filter::All).unwrap().is_empty());
        let ext = case_lookup("so88_so87").unwrap();
        assert!(matches!(
            assemble_spectrum(&[], &ext, Filter::All),
            Err(Error::ExternalCase { .. })
        ));
    }

    #[test]
    fn collisions_are_flagged_not_merged() {
        let gm = group_manifold_sl2r();
        let entries = vec![
            gm_entry("a", 3, 1, true),
            gm_entry("b", 3, 1, false),
            gm_entry("c", 5, 0, true),
        ];
        let out = assemble_spectrum(&entries, &gm, Filter::All).unwrap();
        assert_eq!(out.len(), 3);
        let flagged: Vec<&str> = out
            .iter()
            .filter(|e| e.collision)
            .map(|e| e.source_label.as_str())
            .collect();
        assert_eq!(flagged, ["a", "b"]);
    }

    #[test]
    fn not_in_image_carries_label() {
        let gm = group_manifold_sl2r();
        let mut e = gm_entry("bad", 3, 1, true);
        e.compatible_taus = vec![TauParam::from_ints(&gm, &[2]).unwrap()];
        let err = assemble_spectrum(&[e], &gm, Filter::All).unwrap_err();
        match err {
            Error::Entry { label, source } => {
                assert_eq!(label, "bad");
                assert!(matches!(*source, Error::NotInImage(_)));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn load_rejects_bad_documents() {
        let ok = br#"{"case":"group_manifold:sl2r","entries":[{"label":"x","chi":{"coords":[["2","1","0","1"]],"type":"C1","case":"group_manifold:sl2r","fixed":[["0","1","0","1"]]},"taus":[[0]],"hc_discrete":true}]}"#;
        assert_eq!(load_disc_data(ok).unwrap().entries.len(), 1);

        let cases: [(&[u8], &str); 6] = [
            (br#"{"case":"group_manifold:sl2r","entries":[{"label":"x","chi":{"casimir":["0","1","0","1"],"case":"group_manifold:sl2r"},"taus":[],"hc_discrete":true}]}"#, "nonempty"),
            (br#"{"case":"nope","entries":[]}"#, "$.case"),
            (b"{\"case\": \n 3", "line 2"),
            (br#"{"case":"so4m2_u2m1:m=2","entries":[{"label":"x","chi":{"casimir":["0","1","0","1"],"case":"so4m2_u2m1:m=2"},"taus":[[0,1]],"hc_discrete":true}]}"#, "non-increasing"),
            (br#"{"case":"group_manifold:sl2r","entries":[],"extra":1}"#, "$.extra"),
            (br#"{"case":"group_manifold:sl2r","entries":[{"label":"x","chi":{"coords":[["2","1","0","1"]],"type":"B1","case":"group_manifold:sl2r"},"taus":[[0]],"hc_discrete":true}]}"#, "$.entries[0].chi"),
        ];
        for (doc, needle) in cases {
            let err = load_disc_data(doc).unwrap_err();
            assert!(err.is_schema(), "{err}");
            assert!(err.to_string().contains(needle), "{err} lacks {needle}");
        }
    }
}
