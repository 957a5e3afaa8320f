use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropr::crystal::{self, CrystalElem};
use tropr::io::{matrix_from_json, pair_from_json, point_from_json, point_to_json, table_to_json, JsonScalar};
use tropr::matrix_real::{build_m, build_m_product, recover_components, Matrix};
use tropr::sample::Sampler;
use tropr::tropical_r::{tropical_r, vw_table};
use tropr::verify::{run_check, CheckConfig, SemifieldKind};
use tropr::{Error, GcPoint, GeomCrystal, MaxPlus, Rational};

/// Exact evaluation and verification of the tropical R for D_n^(1).
#[derive(Parser)]
#[command(name = "tropr", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Rank of the algebra (n >= 3).
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,

    #[arg(long, global = true, value_enum, default_value_t = Sf::Rational)]
    semifield: Sf,

    /// Random trials per check.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,

    #[arg(long, global = true, env = "TROPR_SEED", default_value_t = 0)]
    seed: u64,

    /// Sample values of the spectral parameter.
    #[arg(long = "z-samples", global = true, default_value_t = 5)]
    z_samples: usize,

    #[arg(long, global = true)]
    l1: Option<i64>,

    #[arg(long, global = true)]
    l2: Option<i64>,

    /// Read input from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sf {
    Rational,
    Tropical,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply R to a pair {"x": point, "y": point}.
    EvalR,
    /// Combinatorial R on {"x": elem, "y": elem}, or on all of B'_l1 (x) B'_l2 with --all.
    CombR {
        #[arg(long)]
        all: bool,
    },
    /// Energy of {"x": elem, "y": elem}, or of every pair with --all.
    Energy {
        #[arg(long)]
        all: bool,
    },
    /// List B'_l in lexicographic order followed by a count line.
    Enumerate {
        #[arg(long)]
        l: i64,
    },
    /// Run a named check.
    Verify { check: String },
    /// Recover the factors of a product from {"points": [...]} or
    /// {"levels": [...], "coefficients": [matrix, ...]} in powers of z.
    Recover,
}

enum Failure {
    Input(String),
    Violation(String),
    /// A complete report whose checks did not all pass.
    Failed(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroDenominator
            | Error::RankTooSmall(_)
            | Error::CoordinateCount { .. }
            | Error::NonPositive { .. }
            | Error::RankMismatch(..)
            | Error::BadIndex { .. }
            | Error::InvalidCrystalElem(_)
            | Error::UnknownCheck(_)
            | Error::Parse(_) => Failure::Input(e.to_string()),
            _ => Failure::Violation(e.to_string()),
        }
    }
}

type Run = Result<Vec<Value>, Failure>;

fn read_input(cli: &Cli) -> Result<Value, Failure> {
    let mut text = String::new();
    let res = match &cli.input {
        Some(p) => std::fs::read_to_string(p).map(|s| text = s),
        None => io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    res.map_err(|e| Failure::Input(format!("cannot read input: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))
}

fn levels(cli: &Cli) -> Result<(i64, i64), Failure> {
    match (cli.l1, cli.l2) {
        (Some(a), Some(b)) if a >= 0 && b >= 0 => Ok((a, b)),
        (Some(_), Some(_)) => Err(Failure::Input("levels must be nonnegative".into())),
        _ => Err(Failure::Input("--l1 and --l2 are required".into())),
    }
}

fn eval_r<S: JsonScalar>(input: &Value) -> Result<(GcPoint<S>, GcPoint<S>, GcPoint<S>, GcPoint<S>, Value), Failure> {
    let (x, y) = pair_from_json::<S>(input)?;
    let table = vw_table(&x, &y)?;
    let (xp, yp) = tropical_r(&x, &y)?;
    let mut out = json!({"xprime": point_to_json(&xp), "yprime": point_to_json(&yp)});
    if let (Value::Object(o), Value::Object(t)) = (&mut out, table_to_json(&table)) {
        o.extend(t);
    }
    Ok((x, y, xp, yp, out))
}

fn cmd_eval_r(cli: &Cli) -> Run {
    let input = read_input(cli)?;
    match cli.semifield {
        Sf::Rational => {
            if cli.z_samples < 5 {
                return Err(Failure::Input("--z-samples must be at least 5".into()));
            }
            let (x, y, xp, yp, out) = eval_r::<Rational>(&input)?;
            let mut s = Sampler::new(cli.seed);
            for _ in 0..cli.z_samples {
                let z = s.rational();
                if &*build_m(&x, &z) * &*build_m(&y, &z) != &*build_m(&xp, &z) * &*build_m(&yp, &z) {
                    return Err(Failure::Violation(format!("matrix equation fails at z = {z}")));
                }
            }
            Ok(vec![out])
        }
        Sf::Tropical => {
            let (x, y, xp, yp, out) = eval_r::<MaxPlus<i64>>(&input)?;
            if tropical_r(&xp, &yp)? != (x, y) {
                return Err(Failure::Violation("R applied twice is not the identity".into()));
            }
            Ok(vec![out])
        }
    }
}

fn crystal_pair(input: &Value) -> Result<(CrystalElem, CrystalElem), Failure> {
    let get = |k: &str| -> Result<CrystalElem, Failure> {
        let v = input.get(k).ok_or_else(|| Failure::Input(format!("missing field \"{k}\"")))?;
        serde_json::from_value(v.clone()).map_err(|e| Failure::Input(e.to_string()))
    };
    Ok((get("x")?, get("y")?))
}

fn all_pairs(cli: &Cli) -> Result<Vec<(CrystalElem, CrystalElem)>, Failure> {
    let (l1, l2) = levels(cli)?;
    if cli.n < 3 {
        return Err(Error::RankTooSmall(cli.n).into());
    }
    let b = crystal::enumerate(cli.n, l2);
    Ok(crystal::enumerate(cli.n, l1)
        .into_iter()
        .flat_map(|a| b.iter().map(move |y| (a.clone(), y.clone())))
        .collect())
}

fn cmd_comb_r(cli: &Cli, all: bool) -> Run {
    let pairs = if all { all_pairs(cli)? } else { vec![crystal_pair(&read_input(cli)?)?] };
    pairs
        .iter()
        .map(|(x, y)| {
            let (xp, yp) = crystal::comb_r(x, y)?;
            Ok(json!({"x": x, "y": y, "xprime": xp, "yprime": yp}))
        })
        .collect()
}

fn cmd_energy(cli: &Cli, all: bool) -> Run {
    let pairs = if all { all_pairs(cli)? } else { vec![crystal_pair(&read_input(cli)?)?] };
    Ok(pairs.iter().map(|(x, y)| json!({"x": x, "y": y, "energy": crystal::energy(x, y)})).collect())
}

fn cmd_enumerate(cli: &Cli, l: i64) -> Run {
    if cli.n < 3 {
        return Err(Error::RankTooSmall(cli.n).into());
    }
    if l < 0 {
        return Err(Failure::Input("l must be nonnegative".into()));
    }
    let elems = crystal::enumerate(cli.n, l);
    let count = elems.len();
    let mut out: Vec<Value> = elems.iter().map(|e| json!(e)).collect();
    out.push(json!({"count": count}));
    Ok(out)
}

fn cmd_verify(cli: &Cli, check: &str) -> Run {
    if cli.trials == 0 {
        return Err(Failure::Input("--trials must be at least 1".into()));
    }
    if cli.z_samples == 0 {
        return Err(Failure::Input("--z-samples must be at least 1".into()));
    }
    let cfg = CheckConfig {
        n: cli.n,
        semifield: match cli.semifield {
            Sf::Rational => SemifieldKind::Rational,
            Sf::Tropical => SemifieldKind::Tropical,
        },
        trials: cli.trials,
        seed: cli.seed,
        z_samples: cli.z_samples,
        l1: cli.l1.unwrap_or(2),
        l2: cli.l2.unwrap_or(1),
    };
    let report = run_check(check, &cfg)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    if report.ok() {
        Ok(vec![value])
    } else {
        Err(Failure::Failed(value))
    }
}

fn cmd_recover(cli: &Cli) -> Run {
    let input = read_input(cli)?;
    let n = cli.n;
    let found = if let Some(ps) = input.get("points") {
        let ps = ps.as_array().ok_or_else(|| Failure::Input("\"points\" must be an array".into()))?;
        let xs = ps.iter().map(point_from_json::<Rational>).collect::<Result<Vec<_>, _>>()?;
        if xs.iter().any(|p| p.n() != n) {
            return Err(Failure::Input(format!("points must have rank {n}")));
        }
        let levels: Vec<Rational> = xs.iter().map(|p| p.level()).collect();
        recover_components(n, &levels, |z| build_m_product(&xs, z))?
    } else {
        let levels = input
            .get("levels")
            .and_then(Value::as_array)
            .ok_or_else(|| Failure::Input("missing \"levels\" array".into()))?
            .iter()
            .map(Rational::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs = input
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| Failure::Input("missing \"coefficients\" array".into()))?
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() || coeffs.iter().any(|m| m.dim() != 2 * n) {
            return Err(Failure::Input(format!("coefficients must be {0}x{0} matrices", 2 * n)));
        }
        let eval = |z: &Rational| {
            let mut acc = Matrix::zeros(2 * n);
            for m in coeffs.iter().rev() {
                acc = &acc.scale(z) + m;
            }
            acc
        };
        recover_components(n, &levels, eval)?
    };
    Ok(vec![json!({"points": found.iter().map(point_to_json).collect::<Vec<_>>()})])
}

fn emit(cli: &Cli, values: &[Value]) {
    let mut w = BufWriter::new(io::stdout().lock());
    for v in values {
        let text = if cli.pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
        let _ = writeln!(w, "{}", text.expect("JSON values serialize"));
    }
    let _ = w.flush();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::EvalR => cmd_eval_r(&cli),
        Cmd::CombR { all } => cmd_comb_r(&cli, *all),
        Cmd::Energy { all } => cmd_energy(&cli, *all),
        Cmd::Enumerate { l } => cmd_enumerate(&cli, *l),
        Cmd::Verify { check } => cmd_verify(&cli, check),
        Cmd::Recover => cmd_recover(&cli),
    };
    match result {
        Ok(values) => {
            emit(&cli, &values);
            ExitCode::SUCCESS
        }
        Err(Failure::Failed(report)) => {
            emit(&cli, &[report]);
            ExitCode::from(3)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(3)
        }
    }
}
