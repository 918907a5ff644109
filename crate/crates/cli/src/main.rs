use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use spectral_core::ads3::{classify, surface_to_ads3, type1_spectrum};
use spectral_core::catalog::{case_list, case_lookup, TauParam, TransferCase};
use spectral_core::hcparam::{param_from_coords, Param, Side};
use spectral_core::qarith::{format_rational, parse_rational};
use spectral_core::spectra::{
    assemble_spectrum, emit_disc_data, emit_spectrum, load_disc_data, load_spectrum,
    surface_entries, DiscDocument, Filter, SpectrumDocument,
};
use spectral_core::transfer::{transfer_lambda, transfer_nu};
use spectral_core::{Error, GaussianRational, ParamVector};

#[derive(Parser)]
#[command(
    name = "spectral-transfer",
    version,
    about = "Exact transfer of spectra for standard locally symmetric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the catalog of triples (G, H, L)
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Apply ν(·, τ) or λ(·, τ)
    Transfer(TransferArgs),
    /// The AdS³ = SL(2,R) group manifold
    Ads3 {
        #[command(subcommand)]
        command: Ads3Command,
    },
    /// Assemble the discrete spectrum from Disc(Γ\L) data
    Assemble(AssembleArgs),
    /// Re-emit a data or spectrum file in canonical form
    Normalize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List {
        #[arg(long)]
        json: bool,
    },
    Show {
        id: String,
    },
}

#[derive(Args)]
struct TransferArgs {
    #[arg(long)]
    case: String,
    /// Comma-separated integers; empty for the trivial type
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    tau: String,
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "nu",
        required_unless_present = "nu"
    )]
    lambda: Option<String>,
    /// Coordinates of ν, followed by the circle character where `L` has one
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
}

#[derive(Subcommand)]
enum Ads3Command {
    /// The values k(k+2)/4 for k0 ≤ k ≤ kmax
    Type1 {
        #[arg(long)]
        kmax: u64,
        #[arg(long)]
        k0: u64,
        #[arg(long)]
        minus_one: bool,
    },
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        finite_volume: bool,
    },
    /// Push Maass eigenvalues to AdS³ Laplacian eigenvalues
    PushSurface {
        #[arg(long)]
        input: PathBuf,
        /// Also write the corresponding Disc(Γ\L) document
        #[arg(long)]
        disc_output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AssembleArgs {
    #[arg(long)]
    case: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "all")]
    filter: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Failures with their exit status.
enum Failure {
    Schema(anyhow::Error),
    Transfer(anyhow::Error),
    Other(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Schema(_) => 2,
            Failure::Transfer(_) => 3,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Schema(e) | Failure::Transfer(e) | Failure::Other(e) => e,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let input_error =
            e.is_schema() || matches!(e, Error::UnknownCase(_) | Error::DimensionMismatch { .. });
        if input_error {
            Failure::Schema(e.into())
        } else {
            Failure::Transfer(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<Vec<u8>> {
    Ok(fs::read(path).with_context(|| format!("reading {}", path.display()))?)
}

fn write_out(output: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))?,
        None => to_stdout(bytes)?,
    }
    Ok(())
}

fn to_stdout(bytes: &[u8]) -> CliResult<()> {
    let mut out = io::stdout().lock();
    match out.write_all(bytes).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(anyhow::Error::from(e).context("writing stdout").into())
        }
        _ => Ok(()),
    }
}

fn print_json(v: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    text.push('\n');
    to_stdout(text.as_bytes())
}

fn parse_tau(case: &TransferCase, text: &str) -> CliResult<TauParam> {
    let ints = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|e| Error::Parse(format!("τ entry `{s}`: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TauParam::from_ints(case, &ints).map_err(|e| Error::schema("--tau", e.to_string()))?)
}

fn catalog(cmd: CatalogCommand) -> CliResult<()> {
    match cmd {
        CatalogCommand::List { json: true } => {
            let rows: Vec<Value> = case_list()
                .iter()
                .map(|r| {
                    json!({
                        "row": r.row.label(),
                        "id": r.id_template,
                        "G": r.groups[0],
                        "H": r.groups[1],
                        "L": r.groups[2],
                        "rank": r.rank_column,
                        "casimir_a": r.casimir_a.as_ref().map_or("external".to_string(), format_rational),
                    })
                })
                .collect();
            let extra = json!({ "id": "group_manifold:sl2r", "casimir_a": "1" });
            print_json(&json!({ "rows": rows, "group_manifolds": [extra] }))?;
        }
        CatalogCommand::List { json: false } => {
            for r in case_list() {
                let a = r
                    .casimir_a
                    .as_ref()
                    .map_or("external".to_string(), format_rational);
                println!(
                    "{:<6} {:<28} {} / {} ⊃ {}  rank {}  a = {}",
                    r.row.label(),
                    r.id_template,
                    r.groups[0],
                    r.groups[1],
                    r.groups[2],
                    r.rank_column,
                    a
                );
            }
            println!("{:<6} {:<28} a = 1", "", "group_manifold:sl2r");
        }
        CatalogCommand::Show { id } => print_json(&case_lookup(&id)?.to_json())?,
    }
    Ok(())
}

fn transfer(args: TransferArgs) -> CliResult<()> {
    let case = case_lookup(&args.case)?;
    let tau = parse_tau(&case, &args.tau)?;
    if let Some(text) = &args.lambda {
        let Param::G(lambda) = param_from_coords(&ParamVector::parse_list(text)?, &case, Side::G)?
        else {
            unreachable!("G side yields an eigenvalue parameter")
        };
        let nu = transfer_nu(&lambda, &tau, &case)?;
        print_json(&json!({ "nu": nu.to_json() }))?;
    } else if let Some(text) = &args.nu {
        let Param::L(nu) = param_from_coords(&ParamVector::parse_list(text)?, &case, Side::L)?
        else {
            unreachable!("L side yields an infinitesimal character")
        };
        let lambda = transfer_lambda(&nu, &tau, &case)?;
        let roundtrip_ok = transfer_nu(&lambda, &tau, &case)? == nu;
        print_json(&json!({ "lambda": lambda.to_json(), "roundtrip_ok": roundtrip_ok }))?;
    }
    Ok(())
}

fn classification_json(t: &GaussianRational, finite_volume: bool) -> Value {
    let c = classify(t, finite_volume);
    json!({
        "value": t.to_string(),
        "type_I_candidate": c.type_one_candidate(),
        "type_I_k": c.type_one_witness,
        "type_II_candidate": c.type_two_candidate,
        "zero_special": c.zero_special,
    })
}

fn push_surface(input: &Path, disc_output: Option<&Path>) -> CliResult<()> {
    let bytes = read(input)?;
    let doc: Value = serde_json::from_slice(&bytes).map_err(|e| {
        Error::schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::schema("$", "expected an object"))?;
    if let Some(k) = obj
        .keys()
        .find(|k| !["eigenvalues", "finite_volume"].contains(&k.as_str()))
    {
        return Err(Error::schema(format!("$.{k}"), "unknown field").into());
    }
    let finite_volume = match obj.get("finite_volume") {
        None => true,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(Error::schema("$.finite_volume", "expected a boolean").into()),
    };
    let raw = obj
        .get("eigenvalues")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::schema("$.eigenvalues", "expected an array of rational strings"))?;
    let mus = raw
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let path = format!("$.eigenvalues[{k}]");
            let s = v
                .as_str()
                .ok_or_else(|| Error::schema(&path, "expected a string"))?;
            parse_rational(s).map_err(|e| Error::schema(&path, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let case = case_lookup("group_manifold:sl2r")?;
    let entries = surface_entries(&case, &mus)?;
    let spectrum = assemble_spectrum(&entries, &case, Filter::All)?;
    let out: Vec<Value> = mus
        .iter()
        .map(|mu| {
            let t = surface_to_ads3(mu)?;
            let mut v = classification_json(&t, finite_volume);
            v["mu"] = json!(format_rational(mu));
            Ok(v)
        })
        .collect::<Result<_, Error>>()?;
    if let Some(p) = disc_output {
        write_out(
            Some(p),
            &emit_disc_data(&DiscDocument {
                case: case.clone(),
                entries,
            }),
        )?;
    }
    print_json(&json!({
        "case": case.id,
        "finite_volume": finite_volume,
        "entries": out,
        "type_II_count": spectrum.len(),
    }))?;
    Ok(())
}

fn ads3(cmd: Ads3Command) -> CliResult<()> {
    match cmd {
        Ads3Command::Type1 {
            kmax,
            k0,
            minus_one,
        } => {
            let values: Vec<String> = type1_spectrum(kmax, minus_one, k0)
                .iter()
                .map(|v| v.to_string())
                .collect();
            print_json(
                &json!({ "k0": k0, "kmax": kmax, "minus_one": minus_one, "values": values }),
            )?;
        }
        Ads3Command::Classify {
            value,
            finite_volume,
        } => {
            let t: GaussianRational = value.parse()?;
            print_json(&classification_json(&t, finite_volume))?;
        }
        Ads3Command::PushSurface { input, disc_output } => {
            push_surface(&input, disc_output.as_deref())?
        }
    }
    Ok(())
}

fn assemble(args: AssembleArgs) -> CliResult<()> {
    let filter: Filter = args.filter.parse()?;
    let case = case_lookup(&args.case)?;
    let doc = load_disc_data(&read(&args.input)?)?;
    if doc.case.id != case.id {
        return Err(Error::schema(
            "$.case",
            format!("file is for `{}`, --case is `{}`", doc.case.id, case.id),
        )
        .into());
    }
    let spectrum = assemble_spectrum(&doc.entries, &case, filter)?;
    write_out(
        args.output.as_deref(),
        &emit_spectrum(&SpectrumDocument { case, spectrum }),
    )
}

fn normalize(input: &Path, output: Option<&Path>) -> CliResult<()> {
    let bytes = read(input)?;
    let is_spectrum = serde_json::from_slice::<Value>(&bytes)
        .ok()
        .is_some_and(|v| v.get("spectrum").is_some());
    let canonical = if is_spectrum {
        emit_spectrum(&load_spectrum(&bytes)?)
    } else {
        emit_disc_data(&load_disc_data(&bytes)?)
    };
    write_out(output, &canonical)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Catalog { command } => catalog(command),
        Command::Transfer(args) => transfer(args),
        Command::Ads3 { command } => ads3(command),
        Command::Assemble(args) => assemble(args),
        Command::Normalize { input, output } => normalize(&input, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
