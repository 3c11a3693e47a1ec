use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use lefschetz::constructions::{
    build_conjugate_stack, build_twisted_z, build_z, build_z_prime, fixture, grow, load_seed,
    normalize_to_dual_prefix, RecipeConfig, TransportPolicy,
};
use lefschetz::factorization::Provenance;
use lefschetz::invariants::{
    euler_characteristic, irreducibility_provenance, perfect_morse_certificate, signature,
    simply_connected_certificate, spin_feasibility, InvariantReport, Outcome, ReportOptions,
};
use lefschetz::{Error, MappingClass, PositiveFactorization, Schedule};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{BuildStep, Command, Format, InputArgs, OutputArgs};

pub struct CliError {
    pub code: u8,
    pub message: String,
}

type CliResult<T> = std::result::Result<T, CliError>;

fn fail(code: u8, message: impl Into<String>) -> CliError {
    CliError {
        code,
        message: message.into(),
    }
}

/// Errors from the library: shape problems are schema errors, failed relation or spin
/// checks are validation failures, the rest are unmet preconditions.
fn lib_error(e: Error) -> CliError {
    let code = match e {
        Error::Schema { .. } | Error::Parse(_) => 3,
        Error::RelationCheckFailed(_) | Error::InvalidSpin(_) => 1,
        _ => 2,
    };
    fail(code, e.to_string())
}

fn argument_error(what: &str, e: Error) -> CliError {
    fail(2, format!("{what}: {e}"))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| fail(3, format!("cannot read {}: {e}", path.display())))
}

fn load_source(source: &str) -> CliResult<PositiveFactorization> {
    if let Some(name) = source.strip_prefix("fixture:") {
        return fixture(name).map_err(|e| argument_error("fixture", e));
    }
    PositiveFactorization::from_json(&read(Path::new(source))?).map_err(lib_error)
}

fn load(input: &InputArgs) -> CliResult<PositiveFactorization> {
    if let Some(source) = &input.input {
        return load_source(source);
    }
    if let Some(name) = &input.fixture {
        return fixture(name).map_err(|e| argument_error("fixture", e));
    }
    let path = input.seed_file.as_ref().expect("clap requires one input");
    load_seed(path).map_err(|e| match e {
        Error::Parse(m) => fail(3, m),
        other => lib_error(other),
    })
}

fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| fail(3, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn timestamp(reproducible: bool) -> Option<u64> {
    if reproducible {
        return None;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

/// The secondary document (build log, Hurwitz comparison) goes to `--log`, else next to
/// `--output`, else to stderr.
fn write_log(out: &OutputArgs, doc: &Value) -> CliResult<()> {
    let text = pretty(doc);
    let path: Option<PathBuf> = out.log.clone().or_else(|| {
        out.output.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".log.json");
            PathBuf::from(s)
        })
    });
    match path {
        Some(p) => fs::write(&p, text).map_err(|e| fail(3, format!("cannot write {}: {e}", p.display()))),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

pub fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Validate { input } => validate(&input),
        Command::Invariants {
            input,
            out,
            certify,
            format,
        } => invariants(&input, &out, certify, format),
        Command::Build { step } => build(step),
        Command::Hurwitz {
            input,
            out,
            schedule,
        } => hurwitz(&input, &out, &schedule),
    }
}

fn validate(input: &InputArgs) -> CliResult<u8> {
    let report = match (&input.input, &input.seed_file) {
        (Some(source), _) if !source.starts_with("fixture:") => {
            PositiveFactorization::validate_json(&read(Path::new(source))?).map_err(lib_error)?
        }
        (None, Some(path)) => PositiveFactorization::validate_json(&read(path)?).map_err(lib_error)?,
        _ => load(input)?.validate(),
    };
    print!("{}", pretty(&report));
    Ok(if report.valid { 0 } else { 1 })
}

#[derive(Serialize)]
struct Stamped<'a> {
    #[serde(flatten)]
    report: &'a InvariantReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<u64>,
}

fn invariants(input: &InputArgs, out: &OutputArgs, certify: bool, format: Format) -> CliResult<u8> {
    let f = load(input)?;
    let report = InvariantReport::compute(&f, ReportOptions { certify }).map_err(lib_error)?;
    let text = match format {
        Format::Json => pretty(&Stamped {
            report: &report,
            generated_at: timestamp(out.reproducible),
        }),
        Format::Text => report.to_text(),
    };
    write_text(out.output.as_deref(), &text)?;
    Ok(0)
}

fn certificate_summary(f: &PositiveFactorization) -> CliResult<Value> {
    let sc = simply_connected_certificate(f).map_err(lib_error)?;
    let mut outcomes = Vec::new();
    if sc.is_issued() {
        outcomes.push(sc);
        outcomes.push(perfect_morse_certificate(f).map_err(lib_error)?);
    } else {
        outcomes.push(sc);
    }
    outcomes.push(irreducibility_provenance(f).map_err(lib_error)?);
    let mut issued = Vec::new();
    let mut absent = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Issued(c) => issued.push(json!(format!("{:?}", c.kind))),
            Outcome::Absent { kind, reason } => absent.push(json!({"kind": format!("{kind:?}"), "reason": reason})),
        }
    }
    Ok(json!({"issued": issued, "absent": absent}))
}

fn normalize_schedules(history: &[Provenance], out: &mut Vec<Value>) {
    for p in history {
        match p {
            Provenance::Normalize { schedule, prefix_len } => {
                out.push(json!({"kind": "normalize", "prefix_len": prefix_len, "schedule": schedule}))
            }
            Provenance::Hurwitz { schedule } => out.push(json!({"kind": "hurwitz", "schedule": schedule})),
            Provenance::FiberSum { left, right, .. } | Provenance::TwistedFiberSum { left, right, .. } => {
                normalize_schedules(left, out);
                normalize_schedules(right, out);
            }
            Provenance::ConjugateStack { seed, .. } => normalize_schedules(seed, out),
            _ => {}
        }
    }
}

fn build(step: BuildStep) -> CliResult<u8> {
    let (name, result, out, certify) = match step {
        BuildStep::Stack {
            input,
            out,
            cycle,
            spin_preserving,
            copies,
            conjugators,
        } => {
            let seed = load(&input)?;
            if cycle == 0 || cycle > seed.len() {
                return Err(fail(
                    2,
                    format!("missing requirement: distinguished cycle {cycle} is not a twist of the {}-twist seed", seed.len()),
                ));
            }
            if seed.twists()[cycle - 1].is_separating() {
                return Err(fail(
                    2,
                    format!("missing requirement: distinguished cycle {cycle} must be non-separating"),
                ));
            }
            let mut config = RecipeConfig::new(seed.clone(), cycle - 1);
            if spin_preserving {
                config = config.policy(TransportPolicy::SpinPreserving);
            }
            if let Some(k) = copies {
                config = config.copies(k);
            }
            if !conjugators.is_empty() {
                let phis = conjugators
                    .iter()
                    .map(|w| MappingClass::parse(seed.surface(), w))
                    .collect::<lefschetz::Result<Vec<_>>>()
                    .map_err(|e| argument_error("conjugator", e))?;
                config = config.conjugators(phis);
            }
            ("stack", build_conjugate_stack(&config), out, false)
        }
        BuildStep::Normalize { input, out } => {
            let f = load(&input)?;
            ("normalize", normalize_to_dual_prefix(&f).map(|(n, _)| n), out, false)
        }
        BuildStep::Z { input, out } => ("z", build_z(&load(&input)?), out, true),
        BuildStep::Zprime {
            input,
            out,
            x_prime,
            require_spin,
        } => {
            let y = load(&input)?;
            let x = load_source(&x_prime)?;
            ("zprime", build_z_prime(&y, &x, require_spin), out, true)
        }
        BuildStep::Twisted { input, out, phi } => {
            let y = load(&input)?;
            let phi = MappingClass::parse(y.surface(), &phi).map_err(|e| argument_error("phi", e))?;
            ("twisted", build_twisted_z(&y, &phi), out, true)
        }
        BuildStep::Grow {
            input,
            out,
            summand,
            times,
        } => {
            let z = load(&input)?;
            let y = load_source(&summand)?;
            ("grow", grow(&z, &y, times), out, true)
        }
    };
    let f = result.map_err(|e| match e {
        Error::Precondition(m) => fail(2, format!("missing requirement: {m}")),
        other => lib_error(other),
    })?;
    write_text(out.output.as_deref(), &f.to_json())?;

    let mut schedules = Vec::new();
    normalize_schedules(f.provenance(), &mut schedules);
    let mut log = json!({
        "command": format!("build {name}"),
        "genus": f.genus(),
        "twist_count": f.len(),
        "spin_declared": f.spin().is_some(),
        "schedules": schedules,
        "provenance": f.provenance(),
    });
    if certify {
        log["certificates"] = certificate_summary(&f)?;
    }
    if let Some(t) = timestamp(out.reproducible) {
        log["generated_at"] = json!(t);
    }
    write_log(&out, &log)?;
    Ok(0)
}

#[derive(Serialize, PartialEq)]
struct Snapshot {
    twist_count: usize,
    product_matrix: Vec<Vec<String>>,
    e: Option<i64>,
    sigma: Option<i64>,
    spin_feasible: bool,
    spin_solution_dimension: Option<usize>,
}

fn snapshot(f: &PositiveFactorization) -> CliResult<Snapshot> {
    let closed = f.is_closed();
    let feas = spin_feasibility(f);
    Ok(Snapshot {
        twist_count: f.len(),
        product_matrix: f
            .product_matrix()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect(),
        e: if closed { Some(euler_characteristic(f).map_err(lib_error)?) } else { None },
        sigma: if closed { Some(signature(f).map_err(lib_error)?) } else { None },
        spin_feasible: feas.is_feasible(),
        spin_solution_dimension: feas.dimension(),
    })
}

fn hurwitz(input: &InputArgs, out: &OutputArgs, schedule: &str) -> CliResult<u8> {
    let f = load(input)?;
    let schedule = Schedule::parse(schedule).map_err(|e| argument_error("schedule", e))?;
    let g = f.apply_schedule(&schedule).map_err(|e| fail(2, e.to_string()))?;
    let (before, after) = (snapshot(&f)?, snapshot(&g)?);
    let equal = before == after;
    write_text(out.output.as_deref(), &g.to_json())?;
    let mut doc = json!({
        "schedule": schedule.to_string(),
        "before": before,
        "after": after,
        "invariants_equal": equal,
    });
    if let Some(t) = timestamp(out.reproducible) {
        doc["generated_at"] = json!(t);
    }
    if out.output.is_some() && out.log.is_none() {
        print!("{}", pretty(&doc));
    } else {
        write_log(out, &doc)?;
    }
    Ok(if equal { 0 } else { 1 })
}
