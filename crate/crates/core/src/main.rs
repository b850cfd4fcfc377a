use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nilpotent_dict::appendix::verify_appendix;
use nilpotent_dict::catalog::{self, CatalogEntry, RawCatalog};
use nilpotent_dict::cohomology::{q_action, verify_torsor_counts, QTarget};
use nilpotent_dict::cones::{self, OrbitLabel};
use nilpotent_dict::oracle::{self, GroupSide, OracleResult};
use nilpotent_dict::output::{parse_covector, ConeOutput, DictOutput, QactOutput};
use nilpotent_dict::{Dictionary, Error, HCParameter, Matrix, Q, Result};

#[derive(Parser)]
#[command(name = "nildict", version, about = "Nilpotent invariants of generic discrete series, computed exactly")]
struct Cli {
    /// Catalog file; the bundled catalog is used when absent.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct Param {
    /// sl2 parameter λ_{ik}.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "weight")]
    k: Option<i64>,
    /// Comma-separated weight coordinates, e.g. 3,-1.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Full dictionary record for one parameter.
    Dict {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        param: Param,
        /// Also confirm the wavefront representative with the conjugacy oracle.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Replays the worked example of the golden block.
    VerifyAppendix {
        #[arg(long, default_value = "sl2r")]
        group: String,
    },
    /// Checks |large chambers mod W_K| = #AV = #WF = #Wh = |Q|.
    Torsor {
        #[arg(long)]
        group: String,
    },
    /// Does the Kostant section through X meet the orbit of the parameter?
    Cone {
        #[arg(long)]
        group: String,
        #[arg(long = "X", allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        param: Param,
    },
    /// Action of a Q representative on an orbit label.
    Qact {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        /// Representative name; defaults to the first non-identity one.
        #[arg(long)]
        q: Option<String>,
    },
    /// Loads and validates every catalog entry.
    CatalogValidate,
}

fn load_entry(cli: &Cli, group: &str) -> Result<CatalogEntry<Q>> {
    match &cli.catalog {
        None => catalog::entry(group),
        Some(path) => catalog::load_catalog(path)?
            .into_iter()
            .find(|e| e.name == group)
            .ok_or_else(|| Error::UnknownEntry(group.to_string())),
    }
}

fn parameter(entry: &CatalogEntry<Q>, p: &Param) -> Result<HCParameter> {
    let lambda: Vec<i64> = match (&p.k, &p.weight) {
        (Some(k), _) => vec![*k],
        (None, Some(w)) => w
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("weight coordinate `{s}`"))))
            .collect::<Result<_>>()?,
        (None, None) => return Err(Error::Parse("give --k or --weight".into())),
    };
    if lambda.len() != entry.realization.rank() {
        return Err(Error::Dimension(format!("{} expects {} weight coordinates, got {}", entry.name, entry.realization.rank(), lambda.len())));
    }
    Ok(HCParameter::from_ints(&lambda))
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("output serializes"),
        Format::Text => text(),
    };
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), ToString::to_string)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Dict { group, param, seed, budget } => {
            let dict = Dictionary::new(load_entry(cli, group)?)?;
            let lambda = parameter(&dict.entry, param)?;
            let rec = dict.dict(&lambda)?;
            let routes = if rec.is_generic { Some(dict.wf_routes(&lambda)?) } else { None };
            let mut ok = true;
            let mut oracle_note = None;
            if let (Some(seed), Some(real), Some(wf)) = (seed, &rec.real_triple, &rec.wf) {
                let rz = dict.rz();
                let minus_f: Vec<_> = real.f.iter().map(|x| -x).collect();
                let reps = dict.real_label_representatives()?;
                let (_, rep) = reps.iter().find(|(l, _)| l == wf).ok_or_else(|| Error::Inconsistent("no representative for the wavefront label".into()))?;
                let found = oracle::conjugacy_oracle(rz, &rz.element(&minus_f), &rz.psi_inv(rep), GroupSide::RealGroup, *seed, *budget);
                oracle_note = Some(if found.is_conjugate() { "conjugate" } else { "not found (inconclusive)" });
                if let OracleResult::Conjugate(g) = found {
                    ok &= cones::real_orbit_label(&dict.entry, &rz.group_coadjoint(&g, &nilpotent_dict::linalg::inverse(&g)?, &rz.psi_coords(&minus_f))?)? == *wf;
                }
            }
            let out = DictOutput::new(&dict, &rec, routes);
            emit(cli.format, &out, || {
                let mut s = format!(
                    "group {}  parameter ({})\nchamber class {}  generic {}\nav {}\nwf {}\nwh {}",
                    out.group,
                    out.parameter.join(", "),
                    opt(&out.chamber_class),
                    out.is_generic,
                    opt(&out.av),
                    opt(&out.wf),
                    opt(&out.whittaker)
                );
                if let Some(f) = &rec.f_pi {
                    s += &format!("\nF_pi {}", dict.rz().element(f));
                }
                if let Some(t) = &rec.real_triple {
                    s += &format!("\nF_R {}", dict.rz().element(&t.f));
                }
                s += &format!("\nkostant witness {}", opt(&out.kostant_witness.as_ref().map(|w| format!("({})", w.join(", ")))));
                if let Some(n) = oracle_note {
                    s += &format!("\noracle {n}");
                }
                s
            });
            Ok(ok)
        }
        Command::VerifyAppendix { group } => {
            let report = verify_appendix(&load_entry(cli, group)?)?;
            emit(cli.format, &report, || {
                let mut s = String::new();
                for i in &report.identities {
                    if i.pass {
                        s += &format!("PASS  {}\n", i.id);
                    } else {
                        s += &format!("FAIL  {}\n      lhs = {}\n      rhs = {}\n", i.id, i.lhs, i.rhs);
                    }
                }
                let passed = report.identities.iter().filter(|i| i.pass).count();
                s + &format!("{passed}/{} identities pass", report.identities.len())
            });
            Ok(report.pass)
        }
        Command::Torsor { group } => {
            let dict = Dictionary::new(load_entry(cli, group)?)?;
            let report = verify_torsor_counts(&dict)?;
            emit(cli.format, &report, || {
                let c = &report.counts;
                format!(
                    "{}: chambers {} av {} wf {} wh {} |Q| {}  simply transitive {}  {}",
                    report.entry,
                    c.chambers,
                    c.av,
                    c.wf,
                    c.wh,
                    c.q,
                    report.simply_transitive,
                    if report.pass { "pass" } else { "FAIL" }
                )
            });
            Ok(report.pass)
        }
        Command::Cone { group, x, param } => {
            let dict = Dictionary::new(load_entry(cli, group)?)?;
            let lambda = parameter(&dict.entry, param)?;
            let xi = parse_covector(&dict.entry, x)?;
            let covector_label = cones::real_orbit_label(&dict.entry, &xi)?;
            let wf = dict.wf_of(&lambda)?;
            let section = cones::kostant_section(&dict.entry, &xi)?;
            let witness = cones::section_meets_orbit(&dict.entry, &section, &lambda)?;
            let out = ConeOutput {
                group: group.clone(),
                covector: x.clone(),
                covector_label,
                parameter: lambda.to_strings(),
                wf,
                meets: witness.is_some(),
                witness: witness.map(|w| w.coords.iter().map(ToString::to_string).collect()),
            };
            emit(cli.format, &out, || match &out.witness {
                Some(w) => format!("true  witness ({})", w.join(", ")),
                None => "false".into(),
            });
            Ok(out.meets == (covector_label == wf))
        }
        Command::Qact { group, label, q } => {
            let dict = Dictionary::new(load_entry(cli, group)?)?;
            let input: OrbitLabel = label.parse()?;
            let reps = &dict.entry.q_representatives;
            let (name, rep): &(String, Matrix) = match q {
                Some(n) => reps.iter().find(|(m, _)| m == n).ok_or_else(|| Error::Parse(format!("no Q representative `{n}`")))?,
                None => reps
                    .iter()
                    .find(|(_, m)| *m != Matrix::identity(m.rows()))
                    .or(reps.first())
                    .ok_or_else(|| Error::Unsupported(format!("{group} has no Q representatives")))?,
            };
            let QTarget::Label(output) = q_action(&dict, rep, &QTarget::Label(input))? else {
                return Err(Error::Inconsistent("label mapped to a chamber".into()));
            };
            let out = QactOutput { group: group.clone(), representative: name.clone(), input, output };
            emit(cli.format, &out, || output.short());
            Ok(true)
        }
        Command::CatalogValidate => validate_catalog(cli),
    }
}

#[derive(Serialize)]
struct Validation {
    entry: String,
    valid: bool,
    error: Option<String>,
}

fn validate_catalog(cli: &Cli) -> Result<bool> {
    let text = match &cli.catalog {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => catalog::BUNDLED.to_string(),
    };
    let raw: RawCatalog = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let results: Vec<Validation> = raw
        .entries
        .iter()
        .map(|r| match CatalogEntry::<Q>::from_raw(r).and_then(Dictionary::new) {
            Ok(_) => Validation { entry: r.name.clone(), valid: true, error: None },
            Err(e) => Validation { entry: r.name.clone(), valid: false, error: Some(e.to_string()) },
        })
        .collect();
    emit(cli.format, &results, || {
        results
            .iter()
            .map(|v| match &v.error {
                None => format!("{}: ok", v.entry),
                Some(e) => format!("{}: {e}", v.entry),
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(results.iter().all(|v| v.valid))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
