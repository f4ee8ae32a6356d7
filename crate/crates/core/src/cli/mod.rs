//! The `witten` command line: `dims`, `char`, `volumes`, `pairing`, `witten-volume` and
//! `verify`. Exit codes: 0 success, 1 input error or failed verification, 2 divergence.

pub mod output;
pub mod problem;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::engine::{sum_pairing, PairingResult, PairingSpec, SumOptions};
use crate::error::{Error, Result};
use crate::lie::weights::{dominant_integral, format_weight, to_q};
use crate::lie::{AlcovePoint, CartanType, RootSystem};
use crate::rational::{parse_rational, Q};
use crate::real::{Dd, C};
use crate::rep::{vol_g, vol_g_over_t, vol_t, weyl_dimension, ConjugacyClass};

use output::{num, pairing_json, pairing_table, table};
use problem::{build_group, parse_problem, weyl_budget, GroupSpec, Precision, Rational};

#[derive(Debug, Parser)]
#[command(name = "witten", version, about = "Intersection pairings on moduli spaces of flat bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON problem (pairing) or query (dims, char, volumes, witten-volume) file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the JSON result here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `double` or `double-double`; overrides the problem file.
    #[arg(long, global = true)]
    pub precision: Option<String>,
    #[arg(long, global = true, env = "WITTEN_THREADS")]
    pub threads: Option<usize>,
    /// Permit E8, whose Weyl group has 696729600 elements.
    #[arg(long, global = true)]
    pub allow_e8: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weyl dimensions of irreducible representations.
    Dims(GroupArgs),
    /// Character values on conjugacy classes exp(mu).
    Char(GroupArgs),
    /// Volumes of G, T, G/T and of conjugacy classes.
    Volumes(GroupArgs),
    /// Evaluate the pairing sum of a problem file.
    Pairing,
    /// Volume of the moduli space for the quadratic form and beta = 1, no markings.
    WittenVolume {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Run oracle suites: all, orthonormality, freudenthal, hessian-lemma, inversion,
    /// trivial-marking, zeta-volumes.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct GroupArgs {
    /// Cartan type such as A2 or G2.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub scale: Option<String>,
    /// Dynkin labels, comma separated; repeatable.
    #[arg(long = "weight", allow_hyphen_values = true)]
    pub weights: Vec<String>,
    /// Alcove point in fundamental-coweight coordinates, e.g. 1/3,1/3; repeatable.
    #[arg(long = "mu", allow_hyphen_values = true)]
    pub mu: Vec<String>,
}

/// Query file for the non-pairing commands.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QueryFile {
    group: GroupSpec,
    #[serde(default)]
    weights: Vec<Vec<i64>>,
    #[serde(default)]
    mu: Vec<Vec<Rational>>,
    genus: Option<usize>,
    radius: Option<f64>,
}

struct Query {
    rs: RootSystem,
    weights: Vec<Vec<i64>>,
    mu: Vec<Vec<Q>>,
    genus: Option<usize>,
    radius: Option<f64>,
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse_labels(s: &str) -> Result<Vec<i64>> {
    let mut pos = 0;
    let mut out = Vec::new();
    for part in s.split(',') {
        let t = part.trim();
        out.push(t.parse::<i64>().map_err(|_| Error::Parse {
            input: s.to_string(),
            position: pos,
            message: "expected an integer label".into(),
        })?);
        pos += part.len() + 1;
    }
    Ok(out)
}

fn parse_point(s: &str) -> Result<Vec<Q>> {
    let mut pos = 0;
    let mut out = Vec::new();
    for part in s.split(',') {
        out.push(parse_rational(part).map_err(|e| match e {
            Error::Parse { position, message, .. } => Error::Parse { input: s.to_string(), position: pos + position, message },
            e => e,
        })?);
        pos += part.len() + 1;
    }
    Ok(out)
}

fn query(cli: &Cli, args: &GroupArgs) -> Result<Query> {
    let mut q = match &cli.input {
        Some(path) => {
            let text = read(path)?;
            let de = &mut serde_json::Deserializer::from_str(&text);
            let f: QueryFile = serde_path_to_error::deserialize(de).map_err(|e| {
                let path = e.path().to_string();
                let inner = e.into_inner();
                Error::Input(format!("query file at {path} (line {}, column {}): {inner}", inner.line(), inner.column()))
            })?;
            let mu = f
                .mu
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    m.iter()
                        .enumerate()
                        .map(|(i, x)| match x {
                            Rational::Int(n) => Ok(Q::from_integer(*n)),
                            Rational::Text(s) => parse_rational(s).map_err(|e| Error::Input(format!("mu[{k}][{i}]: {e}"))),
                        })
                        .collect::<Result<Vec<Q>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Query { rs: build_group(&f.group, cli.allow_e8)?, weights: f.weights, mu, genus: f.genus, radius: f.radius }
        }
        None => {
            let name = args.group.as_deref().ok_or_else(|| Error::Input("--group or --input is required".into()))?;
            let t: CartanType = name.parse().map_err(|e| Error::Input(format!("--group: {e}")))?;
            let spec = GroupSpec {
                family: format!("{:?}", t.family),
                rank: t.rank,
                scale: args.scale.clone().map(Rational::Text),
            };
            Query { rs: build_group(&spec, cli.allow_e8)?, weights: vec![], mu: vec![], genus: None, radius: None }
        }
    };
    for w in &args.weights {
        q.weights.push(parse_labels(w).map_err(|e| Error::Input(format!("--weight: {e}")))?);
    }
    for m in &args.mu {
        q.mu.push(parse_point(m).map_err(|e| Error::Input(format!("--mu: {e}")))?);
    }
    for w in &q.weights {
        if w.len() != q.rs.rank {
            return Err(Error::Input(format!("weight {w:?} needs {} labels", q.rs.rank)));
        }
        dominant_integral(&to_q(w)).map_err(|e| Error::Input(e.to_string()))?;
    }
    Ok(q)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn emit(cli: &Cli, stdout: &mut dyn Write, text: &str, json: &str) -> Result<()> {
    stdout.write_all(text.as_bytes())?;
    if let Some(path) = &cli.out {
        std::fs::write(path, json).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_dims(cli: &Cli, args: &GroupArgs, stdout: &mut dyn Write) -> Result<()> {
    let q = query(cli, args)?;
    let weights = if q.weights.is_empty() { vec![vec![0; q.rs.rank]] } else { q.weights };
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for w in &weights {
        let d = weyl_dimension(&q.rs, w)?;
        rows.push(vec![format!("{w:?}"), d.to_string()]);
        items.push(format!("{{\"weight\": {w:?}, \"dim\": {}}}", json_str(&d.to_string())));
    }
    let json = format!("{{\"group\": {}, \"dims\": [{}]}}\n", json_str(&q.rs.cartan_type.to_string()), items.join(", "));
    emit(cli, stdout, &table(&["weight", "dim"], &rows), &json)
}

fn class(q: &Query, mu: &[Q], budget: u64) -> Result<ConjugacyClass> {
    let point = AlcovePoint::new(&q.rs, mu.to_vec()).map_err(|e| Error::Input(format!("--mu: {e}")))?;
    ConjugacyClass::new(&q.rs, point, budget)
}

fn cmd_char(cli: &Cli, args: &GroupArgs, stdout: &mut dyn Write) -> Result<()> {
    let q = query(cli, args)?;
    if q.weights.is_empty() || q.mu.is_empty() {
        return Err(Error::Input("char needs at least one --weight and one --mu".into()));
    }
    let budget = weyl_budget(cli.allow_e8);
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for mu in &q.mu {
        let c = class(&q, mu, budget)?;
        for w in &q.weights {
            let v: C<f64> = c.char_value(&q.rs, w)?;
            rows.push(vec![format!("{w:?}"), format_weight(mu), num(v.re), num(v.im)]);
            items.push(format!(
                "{{\"weight\": {w:?}, \"mu\": {}, \"value\": [{}, {}]}}",
                json_str(&format_weight(mu)),
                num(v.re),
                num(v.im)
            ));
        }
    }
    let json = format!("{{\"group\": {}, \"characters\": [{}]}}\n", json_str(&q.rs.cartan_type.to_string()), items.join(", "));
    emit(cli, stdout, &table(&["weight", "mu", "re", "im"], &rows), &json)
}

fn cmd_volumes(cli: &Cli, args: &GroupArgs, stdout: &mut dyn Write) -> Result<()> {
    let q = query(cli, args)?;
    let rs = &q.rs;
    let mut rows: Vec<Vec<String>> = vec![
        vec!["dim G".into(), rs.dim().to_string()],
        vec!["|W|".into(), rs.weyl_order().to_string()],
        vec!["#Z".into(), rs.center_order().to_string()],
        vec!["vol(G/T)".into(), num(vol_g_over_t::<f64>(rs))],
        vec!["vol(T)".into(), num(vol_t::<f64>(rs))],
        vec!["vol(G)".into(), num(vol_g::<f64>(rs))],
    ];
    let mut fields: Vec<String> = rows
        .iter()
        .map(|r| format!("{}: {}", json_str(&r[0]), r[1]))
        .collect();
    let budget = weyl_budget(cli.allow_e8);
    let mut classes = Vec::new();
    for mu in &q.mu {
        let c = class(&q, mu, budget)?;
        let v: f64 = c.volume(rs);
        rows.push(vec![format!("vol(C) at {}", format_weight(mu)), num(v)]);
        classes.push(format!("{{\"mu\": {}, \"dim\": {}, \"volume\": {}}}", json_str(&format_weight(mu)), c.dim(rs), num(v)));
    }
    fields.push(format!("\"classes\": [{}]", classes.join(", ")));
    let json = format!("{{\"group\": {}, {}}}\n", json_str(&rs.cartan_type.to_string()), fields.join(", "));
    emit(cli, stdout, &table(&["quantity", "value"], &rows), &json)
}

fn threads(cli: &Cli) -> usize {
    cli.threads.filter(|&t| t > 0).unwrap_or_else(|| SumOptions::default().threads)
}

fn run_pairing(cli: &Cli, spec: &PairingSpec, precision: Precision, stdout: &mut dyn Write) -> Result<()> {
    let opts = SumOptions { threads: threads(cli) };
    let result: PairingResult = match precision {
        Precision::Double => sum_pairing::<f64>(spec, &opts)?,
        Precision::DoubleDouble => sum_pairing::<Dd>(spec, &opts)?,
    };
    eprintln!("wallclock {:.3} s", result.wallclock.as_secs_f64());
    emit(cli, stdout, &pairing_table(&result), &pairing_json(&result))
}

fn cli_precision(cli: &Cli) -> Result<Option<Precision>> {
    cli.precision.as_deref().map(Precision::parse).transpose()
}

fn cmd_pairing(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let path = cli.input.as_ref().ok_or_else(|| Error::Input("pairing needs --input".into()))?;
    let problem = parse_problem(&read(path)?)?;
    let spec = problem.to_spec(cli.allow_e8)?;
    let precision = match cli_precision(cli)? {
        Some(p) => p,
        None => problem.precision()?,
    };
    run_pairing(cli, &spec, precision, stdout)
}

fn cmd_witten_volume(cli: &Cli, args: &GroupArgs, genus: Option<usize>, radius: Option<f64>, stdout: &mut dyn Write) -> Result<()> {
    let q = query(cli, args)?;
    let genus = genus.or(q.genus).ok_or_else(|| Error::Input("witten-volume needs --genus".into()))?;
    let mut spec = PairingSpec::volume(Arc::new(q.rs), genus);
    if let Some(r) = radius.or(q.radius) {
        spec.summation.radius = r;
    }
    run_pairing(cli, &spec, cli_precision(cli)?.unwrap_or(Precision::Double), stdout)
}

fn cmd_verify(cli: &Cli, suite: &str, stdout: &mut dyn Write) -> Result<bool> {
    let checks = verify::run(suite, threads(cli))?;
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.suite.to_string(),
                c.case.clone(),
                format!("{:.3e}", c.error),
                format!("{:.1e}", c.tolerance),
                if c.passed() { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let items: Vec<String> = checks
        .iter()
        .map(|c| {
            format!(
                "{{\"suite\": {}, \"case\": {}, \"error\": {}, \"tolerance\": {}, \"passed\": {}}}",
                json_str(c.suite),
                json_str(&c.case),
                num(c.error),
                num(c.tolerance),
                c.passed()
            )
        })
        .collect();
    let json = format!("{{\"checks\": [{}]}}\n", items.join(", "));
    emit(cli, stdout, &table(&["suite", "case", "error", "tolerance", "result"], &rows), &json)?;
    Ok(checks.iter().all(Check::passed))
}

use verify::Check;

/// Runs the command line on `args` (including the program name) and returns the exit code.
pub fn run<I, A>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Dims(a) => cmd_dims(&cli, a, stdout).map(|_| true),
        Command::Char(a) => cmd_char(&cli, a, stdout).map(|_| true),
        Command::Volumes(a) => cmd_volumes(&cli, a, stdout).map(|_| true),
        Command::Pairing => cmd_pairing(&cli, stdout).map(|_| true),
        Command::WittenVolume { group, genus, radius } => cmd_witten_volume(&cli, group, *genus, *radius, stdout).map(|_| true),
        Command::Verify { suite } => cmd_verify(&cli, suite, stdout),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e @ Error::Divergence(_)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
