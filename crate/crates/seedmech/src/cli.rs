//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 on success or PASS, 2 when an audit, check or
//! reproduction reports FAIL, 1 on usage and instance errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use seedmech_core::audit::{
    approximation_audit, extension_infeasibility, guaranteed_fraction, monotonicity_sweep, reproduce, DisjointAudit,
};
use seedmech_core::checks::{
    check_adverse_competition, check_agi, check_anonymity, check_mei, check_mei_agi_implies_anonymity,
    check_nondecreasing_submodular, CheckOptions,
};
use seedmech_core::fixtures::{load_fixture, FixtureParams, FIXTURE_NAMES};
use seedmech_core::greedy::{brute_force_opt, DEFAULT_OPT_LIMIT};
use seedmech_core::instance::Instance;
use seedmech_core::mechanisms::{Mechanism, MechanismConfig, MechanismId};
use seedmech_core::profile::{BidProfile, ProfileDomain};
use seedmech_core::rational::parse_rational;
use seedmech_core::{Error, Rational, WelfareModel};

use crate::error::{CliError, CliResult};
use crate::formats::{load_instance, parse_seed_credit, LoadedInstance};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "seedmech", version, about = "Strategyproof greedy seed allocation: run, audit and reproduce")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a mechanism once on a bid profile.
    Run {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_bids)]
        bids: BidProfile,
        #[arg(long, default_value = "two-player", value_parser = parse_mechanism)]
        mechanism: MechanismId,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the mechanism's probability table to this file.
        #[arg(long)]
        export_table: Option<PathBuf>,
        /// Use the disjointness-restricted greedy for table and fixed-order mechanisms.
        #[arg(long)]
        disjoint_greedy: bool,
    },
    /// Monotonicity sweep plus approximation check over all bids up to a cap.
    Audit {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "two-player", value_parser = parse_mechanism)]
        mechanism: MechanismId,
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_OPT_LIMIT)]
        opt_limit: u128,
    },
    /// Reproduce a named counterexample with exact values.
    Repro {
        #[arg(long)]
        case: String,
        #[arg(long, default_value = "1/100", value_parser = parse_q)]
        epsilon: Rational,
        #[arg(long = "N", default_value = "10", value_parser = parse_q)]
        n: Rational,
    },
    /// Exact optimum by enumeration.
    Opt {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_bids)]
        bids: BidProfile,
        #[arg(long)]
        disjoint: bool,
        #[arg(long, default_value_t = DEFAULT_OPT_LIMIT)]
        opt_limit: u128,
    },
    /// Run every structural checker on an instance.
    Check {
        #[command(flatten)]
        source: Source,
        /// Largest per-player set in the enumerated profiles.
        #[arg(long, default_value_t = 3)]
        max_set: usize,
        #[arg(long, default_value_t = 8)]
        max_ground: usize,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// Instance file (tabular, or_single_step or disk_coverage JSON).
    #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
    instance: Option<PathBuf>,
    /// Bundled fixture name.
    #[arg(long)]
    fixture: Option<String>,
    /// Fixture epsilon.
    #[arg(long, default_value = "1/100", value_parser = parse_q)]
    epsilon: Rational,
    /// Fixture large-value parameter.
    #[arg(long = "N", default_value = "10", value_parser = parse_q)]
    n: Rational,
    /// Fixture seed credit: owner or edges-only.
    #[arg(long, default_value = "edges-only")]
    seed_credit: String,
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_bids(s: &str) -> Result<BidProfile, String> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("invalid budget {x:?} in {s:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(BidProfile::new)
}

fn parse_mechanism(s: &str) -> Result<MechanismId, String> {
    s.parse::<MechanismId>().map_err(|e| e.to_string())
}

fn load(source: &Source) -> CliResult<LoadedInstance> {
    match (&source.instance, &source.fixture) {
        (Some(path), _) => load_instance(path),
        (None, Some(name)) => {
            let seed_credit = parse_seed_credit(&source.seed_credit)
                .ok_or_else(|| CliError::Usage(format!("unknown seed credit {:?}", source.seed_credit)))?;
            let params = FixtureParams { epsilon: source.epsilon.clone(), n: source.n.clone(), seed_credit };
            let f = load_fixture(name, &params).map_err(|e| match e {
                Error::UnknownName(_) => CliError::Usage(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", "))),
                other => other.into(),
            })?;
            Ok(LoadedInstance { instance: f.instance, domain: f.domain })
        }
        (None, None) => Err(CliError::Usage("one of --instance or --fixture is required".into())),
    }
}

fn check_bids(model: &Instance, bids: &BidProfile) -> CliResult<()> {
    if bids.players() != model.player_count() {
        return Err(CliError::Usage(format!(
            "--bids lists {} budgets but the instance has {} players",
            bids.players(),
            model.player_count()
        )));
    }
    Ok(())
}

fn cmd_run(
    source: &Source,
    bids: &BidProfile,
    id: MechanismId,
    seed: u64,
    export: Option<&PathBuf>,
    disjoint_greedy: bool,
) -> CliResult<(i32, Value)> {
    let loaded = load(source)?;
    let model = &loaded.instance;
    check_bids(model, bids)?;
    let config = MechanismConfig { disjoint_greedy, ..MechanismConfig::default() };
    let mech = Mechanism::prepare(model, id, bids.total(), config)?;
    let out = mech.run(bids, seed)?;
    if let Some(path) = export {
        let table = match (mech.table(), mech.scalar_table()) {
            (Some(t), _) => report::mechanism_table(t),
            (None, Some(t)) => report::scalar_table(model, t),
            _ => return Err(CliError::Usage(format!("mechanism {id} has no table to export"))),
        };
        let text = serde_json::to_string_pretty(&table).expect("serialisable");
        std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
    }
    Ok((EXIT_OK, report::run_outcome(model, &out, seed)))
}

/// `None` when the bound needs a property the model lacks.
fn approximation_precondition(model: &Instance, domain: ProfileDomain, id: MechanismId) -> CliResult<Option<String>> {
    let opts = CheckOptions { domain, ..CheckOptions::default() };
    let missing = match id {
        MechanismId::Uniform | MechanismId::Warmup => (!check_mei(model, &opts)?.passed()).then_some("mechanism indifference"),
        MechanismId::Disjoint => (!check_anonymity(model, &opts.disjoint())?.passed()).then_some("anonymity"),
        _ => None,
    };
    Ok(missing.map(String::from))
}

fn cmd_audit(source: &Source, id: MechanismId, cap: usize, opt_limit: u128) -> CliResult<(i32, Value)> {
    let loaded = load(source)?;
    let model = &loaded.instance;
    let t_max = cap.min(model.ground_size());
    let mech = Mechanism::prepare(model, id, t_max, MechanismConfig::default())?;
    let sweep = monotonicity_sweep(&mech, cap)?;
    let mut ok = sweep.passed();

    let disjoint_opt = matches!(id, MechanismId::Disjoint | MechanismId::Uniform | MechanismId::Warmup) || loaded.domain == ProfileDomain::Disjoint;
    let fraction = guaranteed_fraction(id, model.player_count());
    let approx = match approximation_precondition(model, loaded.domain, id) {
        Ok(Some(missing)) => json!({ "verdict": "SKIPPED", "reason": format!("model lacks {missing}") }),
        Ok(None) | Err(CliError::Core(Error::TooLarge { .. })) => {
            match approximation_audit(&mech, cap, disjoint_opt, fraction, opt_limit) {
                Ok(r) => {
                    ok &= r.passed();
                    report::approximation(&r)
                }
                Err(Error::TooLarge { what, count, limit }) => {
                    json!({ "verdict": "SKIPPED", "reason": format!("{what}: {count} cases exceeds limit {limit}") })
                }
                Err(e) => return Err(e.into()),
            }
        }
        Err(e) => return Err(e),
    };

    let mut out = json!({
        "command": "audit",
        "mechanism": id.name(),
        "warnings": mech.warnings(),
        "monotonicity": report::sweep(&sweep),
        "approximation": approx,
    });
    if id == MechanismId::Disjoint {
        let opts = CheckOptions::default().with_max_set(2);
        if let Ok(audit) = DisjointAudit::new(model, &opts) {
            let mut reports = Vec::new();
            for bids in seedmech_core::profile::bid_profiles_up_to(model.player_count(), t_max) {
                match audit.verify(&bids) {
                    Ok(r) => {
                        ok &= r.all_hold();
                        reports.push(report::disjoint_bound(model, &r));
                    }
                    Err(Error::TooLarge { .. }) => continue,
                    Err(e) => return Err(e.into()),
                }
            }
            out["disjoint_bound"] = Value::Array(reports);
        }
    }
    out["verdict"] = json!(report::pass_fail(ok));
    Ok((if ok { EXIT_OK } else { EXIT_FAIL }, out))
}

fn cmd_repro(case: &str, epsilon: &Rational, n: &Rational) -> CliResult<(i32, Value)> {
    let r = reproduce(case, epsilon, n)?;
    let mut out = report::repro(&r);
    if case == "extension-infeasibility" {
        let model = seedmech_core::fixtures::single_valuable_element()?;
        out["analysis"] = report::extension(&extension_infeasibility(&model)?);
    }
    Ok((if r.claim_holds { EXIT_OK } else { EXIT_FAIL }, out))
}

fn cmd_opt(source: &Source, bids: &BidProfile, disjoint: bool, limit: u128) -> CliResult<(i32, Value)> {
    let loaded = load(source)?;
    let model = &loaded.instance;
    check_bids(model, bids)?;
    let disjoint = disjoint || loaded.domain == ProfileDomain::Disjoint;
    let (p, w) = brute_force_opt(model, bids, disjoint, limit)?;
    let mut out = json!({ "command": "opt", "bids": report::bids(bids), "disjoint": disjoint });
    out["sets"] = report::sets(model, &p);
    out["welfare"] = report::q(&w);
    out["utilities"] = report::qs(&model.utilities(&p)?);
    Ok((EXIT_OK, out))
}

fn cmd_check(source: &Source, max_set: usize, max_ground: usize) -> CliResult<(i32, Value)> {
    let loaded = load(source)?;
    let model = &loaded.instance;
    let opts = CheckOptions { max_ground, max_set, domain: loaded.domain };
    let verdicts = [
        ("nondecreasing_submodular", check_nondecreasing_submodular(model, &opts)?),
        ("adverse_competition", check_adverse_competition(model, &opts)?),
        ("mei", check_mei(model, &opts)?),
        ("agi", check_agi(model, &opts)?),
        ("anonymity", check_anonymity(model, &opts)?),
    ];
    let ok = verdicts.iter().all(|(_, v)| v.passed());
    let mut checks = serde_json::Map::new();
    for (name, v) in &verdicts {
        checks.insert((*name).into(), report::verdict(model, v));
    }
    let mut out = json!({ "command": "check", "model": model.kind(), "domain": format!("{:?}", loaded.domain).to_lowercase() });
    if model.player_count() >= 3 {
        out["mei_agi_implies_anonymity"] = match check_mei_agi_implies_anonymity(model, &opts) {
            Ok(r) => report::indifference(model, &r),
            Err(Error::Precondition(msg)) => json!({ "verdict": "SKIPPED", "reason": msg }),
            Err(e) => return Err(e.into()),
        };
    }
    out["checks"] = Value::Object(checks);
    out["verdict"] = json!(report::pass_fail(ok));
    Ok((if ok { EXIT_OK } else { EXIT_FAIL }, out))
}

fn dispatch(cli: Cli) -> CliResult<(i32, Value)> {
    match cli.command {
        Command::Run { source, bids, mechanism, seed, export_table, disjoint_greedy } => {
            cmd_run(&source, &bids, mechanism, seed, export_table.as_ref(), disjoint_greedy)
        }
        Command::Audit { source, mechanism, cap, opt_limit } => cmd_audit(&source, mechanism, cap, opt_limit),
        Command::Repro { case, epsilon, n } => cmd_repro(&case, &epsilon, &n),
        Command::Opt { source, bids, disjoint, opt_limit } => cmd_opt(&source, &bids, disjoint, opt_limit),
        Command::Check { source, max_set, max_ground } => cmd_check(&source, max_set, max_ground),
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Invocation { code, stdout: text, stderr: String::new() }
            } else {
                Invocation { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli) {
        Ok((code, value)) => Invocation {
            code,
            stdout: serde_json::to_string_pretty(&value).expect("serialisable") + "\n",
            stderr: String::new(),
        },
        Err(e) => {
            let value = json!({ "error": e.to_string() });
            Invocation {
                code: EXIT_ERROR,
                stdout: serde_json::to_string_pretty(&value).expect("serialisable") + "\n",
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
