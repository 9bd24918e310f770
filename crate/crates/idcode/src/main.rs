//! Command-line front end: bounds, constructions, verification, sweeps, and
//! the self-test matrix.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use idcode::bounds::{self, BoundResult};
use idcode::construct::{self, CodeKind, Construction, Instance};
use idcode::oracle::{self, SearchBudget};
use idcode::report::{self, ReportRecord};
use idcode::selftest;
use idcode::topology::{Radius, Topology, TopologyKind, VertexSet};
use idcode::verify;
use idcode::Error;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_UNDEFINED: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "idcode",
    about = "Minimum identifying codes for paths and odd cycles, and minimum \
             2-locating-dominating sets for cycles",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Ic,
    Ld,
}

#[derive(Args)]
struct InstanceArgs {
    /// The instance is the cycle C_n
    #[arg(long, conflicts_with = "path")]
    cycle: bool,
    /// The instance is the path P_n
    #[arg(long)]
    path: bool,
    /// Number of vertices
    #[arg(short)]
    n: Option<usize>,
    /// Ball radius (defaults to 2 for --kind ld)
    #[arg(short)]
    r: Option<usize>,
    /// Code kind: identifying (ic) or locating-dominating (ld)
    #[arg(long, value_enum, default_value = "ic")]
    kind: KindArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the closed-form minimum cardinality and its theorem case
    Bound {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Emit the record as JSON
        #[arg(long)]
        json: bool,
    },
    /// Construct a verified optimal code
    Build {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Emit the record as JSON
        #[arg(long)]
        json: bool,
        /// Also run the exhaustive oracle and report its minimum
        #[arg(long)]
        oracle: bool,
        /// Append verifier-guarded-repair records to this NDJSON file
        #[arg(long)]
        deviations: Option<PathBuf>,
    },
    /// Check a candidate code definitionally and against the characterization
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Candidate code: comma-separated labels and a..b ranges
        #[arg(long)]
        code: Option<String>,
        /// Read a build --json record from stdin instead of flags
        #[arg(long = "json-in")]
        json_in: bool,
        /// Emit the verdicts as JSON
        #[arg(long)]
        json: bool,
    },
    /// Tabulate bounds, constructions, and oracle minima over (n, r) grids
    Sweep {
        /// Sweep cycles
        #[arg(long, conflicts_with = "path")]
        cycle: bool,
        /// Sweep paths
        #[arg(long)]
        path: bool,
        /// Code kind
        #[arg(long, value_enum, default_value = "ic")]
        kind: KindArg,
        /// Radius or radius range, e.g. 2 or 1..3 (defaults to 2 for ld)
        #[arg(short)]
        r: Option<String>,
        /// Vertex-count range, e.g. 5..18
        #[arg(short)]
        n: String,
        /// Cross-check against the exhaustive oracle where the budget allows
        #[arg(long)]
        oracle: bool,
        /// CSV output
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        /// JSON array output
        #[arg(long)]
        json: bool,
        /// Append verifier-guarded-repair records to this NDJSON file
        #[arg(long)]
        deviations: Option<PathBuf>,
    },
    /// Run the invariant suite and the sweep matrix
    Selftest {
        /// Reduced sample counts and grids
        #[arg(long)]
        quick: bool,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Undefined { .. }
        | Error::EvenCycle { .. }
        | Error::TooFewVertices { .. }
        | Error::NoCharacterization { .. } => EXIT_UNDEFINED,
        Error::ConstructionFailed { .. } | Error::NoRecipe => EXIT_CONSTRUCTION,
        Error::VertexOutOfRange { .. }
        | Error::InvalidInput { .. }
        | Error::ZeroRadius
        | Error::BudgetExceeded { .. }
        | Error::CandidateCapExceeded { .. } => EXIT_USAGE,
        Error::Internal { .. } => EXIT_FAIL,
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn fail_with(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(e))
}

fn oracle_budget() -> SearchBudget {
    let max_n = std::env::var("IDCODE_ORACLE_MAX_N")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(20);
    SearchBudget::with_max_n(max_n)
}

struct ResolvedInstance {
    inst: Instance,
}

fn resolve_instance(args: &InstanceArgs) -> Result<ResolvedInstance, String> {
    let kind = match args.kind {
        KindArg::Ic => CodeKind::Identifying,
        KindArg::Ld => CodeKind::LocatingDominating,
    };
    let topo_kind = match (args.cycle, args.path) {
        (true, false) => TopologyKind::Cycle,
        (false, true) => TopologyKind::Path,
        _ => return Err("exactly one of --cycle or --path is required".into()),
    };
    let n = args.n.ok_or("-n is required")?;
    let r = match (kind, args.r) {
        (CodeKind::LocatingDominating, None) => 2,
        (CodeKind::LocatingDominating, Some(r)) if r != 2 => {
            return Err("--kind ld closed forms are only available for r = 2".into());
        }
        (CodeKind::LocatingDominating, Some(r)) => r,
        (CodeKind::Identifying, Some(r)) => r,
        (CodeKind::Identifying, None) => return Err("-r is required for --kind ic".into()),
    };
    let topology = Topology::new(topo_kind, n).map_err(|e| e.to_string())?;
    let r = Radius::new(r).map_err(|e| e.to_string())?;
    Ok(ResolvedInstance {
        inst: Instance { topology, r, kind },
    })
}

fn bound_for(inst: &Instance) -> idcode::Result<BoundResult> {
    match (inst.kind, inst.topology.kind()) {
        (CodeKind::Identifying, TopologyKind::Cycle) => {
            bounds::min_ic_odd_cycle(inst.topology.n(), inst.r)
        }
        (CodeKind::Identifying, TopologyKind::Path) => {
            bounds::min_ic_path(inst.topology.n(), inst.r)
        }
        (CodeKind::LocatingDominating, TopologyKind::Cycle) => {
            bounds::min_ld2_cycle(inst.topology.n())
        }
        (CodeKind::LocatingDominating, TopologyKind::Path) => Err(Error::InvalidInput {
            reason: "no closed form for locating-dominating sets on paths".into(),
        }),
    }
}

fn oracle_min(inst: &Instance) -> idcode::Result<Option<usize>> {
    let res = match inst.kind {
        CodeKind::Identifying => oracle::min_ic(&inst.topology, inst.r, oracle_budget())?,
        CodeKind::LocatingDominating => oracle::min_ld(&inst.topology, inst.r, oracle_budget())?,
    };
    Ok(res.minimum)
}

fn append_deviations(
    path: &PathBuf,
    inst: &Instance,
    deviations: &[String],
) -> std::io::Result<()> {
    if deviations.is_empty() {
        return Ok(());
    }
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    for d in deviations {
        let line = json!({
            "topology": inst.topology.kind().as_str(),
            "n": inst.topology.n(),
            "r": inst.r.get(),
            "kind": inst.kind.as_str(),
            "deviation": d,
        });
        writeln!(f, "{line}")?;
    }
    Ok(())
}

fn cmd_bound(args: &InstanceArgs, json: bool) -> ExitCode {
    let resolved = match resolve_instance(args) {
        Ok(r) => r,
        Err(msg) => return usage_error(&msg),
    };
    let bound = match bound_for(&resolved.inst) {
        Ok(b) => b,
        Err(e) => return fail_with(&e),
    };
    if json {
        let rec = ReportRecord::new(&resolved.inst, &bound, None, None);
        println!("{}", serde_json::to_string(&rec).expect("serializable record"));
    } else {
        println!("value {}, case {}", bound.value, bound.case);
    }
    ExitCode::from(EXIT_OK)
}

fn cmd_build(
    args: &InstanceArgs,
    json: bool,
    with_oracle: bool,
    deviations_path: Option<&PathBuf>,
) -> ExitCode {
    let resolved = match resolve_instance(args) {
        Ok(r) => r,
        Err(msg) => return usage_error(&msg),
    };
    let inst = &resolved.inst;
    let bound = match bound_for(inst) {
        Ok(b) => b,
        Err(e) => return fail_with(&e),
    };
    let construction: Construction = match construct::build(inst) {
        Ok(c) => c,
        Err(e) => {
            if let (Some(path), Error::ConstructionFailed { reason }) = (deviations_path, &e) {
                let _ = append_deviations(path, inst, std::slice::from_ref(reason));
            }
            return fail_with(&e);
        }
    };
    if let Some(path) = deviations_path {
        if let Err(io) = append_deviations(path, inst, &construction.deviations) {
            eprintln!("error: cannot write deviations file: {io}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let oracle_value = if with_oracle {
        match oracle_min(inst) {
            Ok(m) => m,
            Err(e) => return fail_with(&e),
        }
    } else {
        None
    };
    let rec = ReportRecord::new(inst, &bound, Some(&construction), oracle_value);
    if json {
        println!("{}", serde_json::to_string(&rec).expect("serializable record"));
    } else {
        let labels = rec
            .code
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        println!("code: {labels}");
        let oracle_note = rec
            .oracle_min
            .map_or(String::new(), |m| format!(", oracle {m}"));
        println!(
            "size {}, bound {}, case {}{oracle_note}",
            rec.size, rec.bound, rec.case
        );
        for d in &rec.deviations {
            eprintln!("deviation: {d}");
        }
    }
    if rec.agrees {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

/// Parse "1,2,5..9,11" into labels.
fn parse_code_list(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((a, b)) = token.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| format!("bad range start in '{token}'"))?;
            let b: usize = b.trim().parse().map_err(|_| format!("bad range end in '{token}'"))?;
            if a > b {
                return Err(format!("empty range '{token}'"));
            }
            out.extend(a..=b);
        } else {
            out.push(token.parse().map_err(|_| format!("bad label '{token}'"))?);
        }
    }
    if out.is_empty() {
        return Err("empty code list".into());
    }
    Ok(out)
}

fn cmd_verify(args: &InstanceArgs, code: Option<&str>, json_in: bool, json: bool) -> ExitCode {
    let (inst, labels): (Instance, Vec<usize>) = if json_in {
        let mut buf = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
            return usage_error(&format!("cannot read stdin: {e}"));
        }
        let rec: ReportRecord = match serde_json::from_str(buf.trim()) {
            Ok(r) => r,
            Err(e) => return usage_error(&format!("bad JSON record on stdin: {e}")),
        };
        let Some(kind) = rec.code_kind() else {
            return usage_error(&format!("unknown kind '{}'", rec.kind));
        };
        let topo_kind = match rec.topology.as_str() {
            "cycle" => TopologyKind::Cycle,
            "path" => TopologyKind::Path,
            other => return usage_error(&format!("unknown topology '{other}'")),
        };
        let topology = match Topology::new(topo_kind, rec.n) {
            Ok(t) => t,
            Err(e) => return fail_with(&e),
        };
        let r = match Radius::new(rec.r) {
            Ok(r) => r,
            Err(e) => return fail_with(&e),
        };
        (Instance { topology, r, kind }, rec.code)
    } else {
        let resolved = match resolve_instance(args) {
            Ok(r) => r,
            Err(msg) => return usage_error(&msg),
        };
        let Some(code) = code else {
            return usage_error("--code is required unless --json-in is given");
        };
        let labels = match parse_code_list(code) {
            Ok(l) => l,
            Err(msg) => return usage_error(&msg),
        };
        (resolved.inst, labels)
    };

    let code_set = match VertexSet::from_labels(inst.topology.n(), labels.iter().copied()) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let definitional = match inst.kind {
        CodeKind::Identifying => verify::is_r_ic(&inst.topology, &code_set, inst.r),
        CodeKind::LocatingDominating => verify::is_r_ld(&inst.topology, &code_set, inst.r),
    };
    let characterization = if inst.kind == CodeKind::Identifying {
        match inst.topology.kind() {
            TopologyKind::Cycle => {
                verify::check_cycle_characterization(inst.topology.n(), inst.r, &code_set)
                    .ok()
                    .map(|(lemma, v)| (lemma.as_str().to_string(), v))
            }
            TopologyKind::Path => {
                verify::check_path_characterization(inst.topology.n(), inst.r, &code_set)
                    .ok()
                    .map(|v| ("Lemma10".to_string(), v))
            }
        }
    } else {
        None
    };
    let agrees = characterization
        .as_ref()
        .map_or(true, |(_, v)| v.ok == definitional.ok);

    if json {
        let out = json!({
            "definitional": definitional.ok,
            "witness": definitional.witness,
            "rule": definitional.rule,
            "characterization": characterization.as_ref().map(|(_, v)| v.ok),
            "lemma": characterization.as_ref().map(|(l, _)| l),
            "agrees": agrees,
        });
        println!("{out}");
    } else {
        match (&definitional.witness, &definitional.rule) {
            (Some(w), Some(rule)) => {
                println!("definitional: fail ({rule}, witness {:?})", w)
            }
            _ => println!("definitional: ok"),
        }
        match &characterization {
            Some((lemma, v)) if v.ok => println!("characterization ({lemma}): ok"),
            Some((lemma, v)) => println!(
                "characterization ({lemma}): fail ({}, witness {:?})",
                v.rule.as_deref().unwrap_or("?"),
                v.witness.unwrap_or((0, 0))
            ),
            None => println!("characterization: not available"),
        }
        println!("agreement: {agrees}");
    }
    if definitional.ok {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

/// Parse "5..18" or "7" into an inclusive range.
fn parse_range(s: &str) -> Result<(usize, usize), String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| format!("bad range start in '{s}'"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad range end in '{s}'"))?;
        if a > b {
            return Err(format!("empty range '{s}'"));
        }
        Ok((a, b))
    } else {
        let v: usize = s.trim().parse().map_err(|_| format!("bad value '{s}'"))?;
        Ok((v, v))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    cycle: bool,
    path: bool,
    kind: KindArg,
    r_spec: Option<&str>,
    n_spec: &str,
    with_oracle: bool,
    csv: bool,
    json: bool,
    deviations_path: Option<&PathBuf>,
) -> ExitCode {
    let topo_kind = match (cycle, path) {
        (true, false) => TopologyKind::Cycle,
        (false, true) => TopologyKind::Path,
        _ => return usage_error("exactly one of --cycle or --path is required"),
    };
    let code_kind = match kind {
        KindArg::Ic => CodeKind::Identifying,
        KindArg::Ld => CodeKind::LocatingDominating,
    };
    let (n_lo, n_hi) = match parse_range(n_spec) {
        Ok(r) => r,
        Err(msg) => return usage_error(&msg),
    };
    let (r_lo, r_hi) = match (code_kind, r_spec) {
        (CodeKind::LocatingDominating, None) => (2, 2),
        (CodeKind::Identifying, None) => return usage_error("-r is required for --kind ic"),
        (_, Some(spec)) => match parse_range(spec) {
            Ok(r) => r,
            Err(msg) => return usage_error(&msg),
        },
    };
    if code_kind == CodeKind::LocatingDominating && (r_lo, r_hi) != (2, 2) {
        return usage_error("--kind ld closed forms are only available for r = 2");
    }
    if r_lo == 0 {
        return usage_error("radius must be at least 1");
    }
    let budget = oracle_budget();

    let mut records: Vec<ReportRecord> = Vec::new();
    let mut any_failure = false;
    for r in r_lo..=r_hi {
        let r = Radius::new(r).expect("checked above");
        for n in n_lo..=n_hi {
            let Ok(topology) = Topology::new(topo_kind, n) else {
                continue;
            };
            let inst = Instance {
                topology,
                r,
                kind: code_kind,
            };
            // skip cells where the closed form is undefined (inadmissible n,
            // even cycles in IC mode)
            let bound = match bound_for(&inst) {
                Ok(b) => b,
                Err(Error::Undefined { .. })
                | Err(Error::EvenCycle { .. })
                | Err(Error::TooFewVertices { .. })
                | Err(Error::InvalidInput { .. }) => continue,
                Err(e) => return fail_with(&e),
            };
            let construction = match construct::build(&inst) {
                Ok(c) => Some(c),
                Err(e) => {
                    eprintln!("construction failed for n={n} r={}: {e}", r.get());
                    if let (Some(p), Error::ConstructionFailed { reason }) = (deviations_path, &e) {
                        let _ = append_deviations(p, &inst, std::slice::from_ref(reason));
                    }
                    any_failure = true;
                    None
                }
            };
            if let (Some(p), Some(c)) = (deviations_path, construction.as_ref()) {
                if let Err(io) = append_deviations(p, &inst, &c.deviations) {
                    eprintln!("error: cannot write deviations file: {io}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            let oracle_value = if with_oracle && n <= budget.max_n {
                match oracle_min(&inst) {
                    Ok(m) => m,
                    Err(e) => return fail_with(&e),
                }
            } else {
                None
            };
            let rec = ReportRecord::new(&inst, &bound, construction.as_ref(), oracle_value);
            if !rec.agrees || construction.is_none() {
                any_failure = true;
            }
            records.push(rec);
        }
    }

    if json {
        println!("{}", serde_json::to_string(&records).expect("serializable records"));
    } else if csv {
        println!("{}", report::csv_header());
        for rec in &records {
            println!("{}", report::csv_row(rec));
        }
    } else {
        println!("{}", report::render_table(&records));
    }
    if any_failure {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::from(EXIT_OK)
    }
}

fn cmd_selftest(quick: bool) -> ExitCode {
    let summary = selftest::run(quick);
    for c in &summary.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("{status} {} — {}", c.name, c.detail);
    }
    if summary.all_passed() {
        println!("selftest: all {} checks passed", summary.checks.len());
        ExitCode::from(EXIT_OK)
    } else {
        println!("selftest: FAILED");
        ExitCode::from(EXIT_FAIL)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match &cli.cmd {
        Cmd::Bound { inst, json } => cmd_bound(inst, *json),
        Cmd::Build {
            inst,
            json,
            oracle,
            deviations,
        } => cmd_build(inst, *json, *oracle, deviations.as_ref()),
        Cmd::Verify {
            inst,
            code,
            json_in,
            json,
        } => cmd_verify(inst, code.as_deref(), *json_in, *json),
        Cmd::Sweep {
            cycle,
            path,
            kind,
            r,
            n,
            oracle,
            csv,
            json,
            deviations,
        } => cmd_sweep(
            *cycle,
            *path,
            *kind,
            r.as_deref(),
            n,
            *oracle,
            *csv,
            *json,
            deviations.as_ref(),
        ),
        Cmd::Selftest { quick } => cmd_selftest(*quick),
    }
}
