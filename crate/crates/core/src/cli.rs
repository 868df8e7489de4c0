//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or consistency failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::characters::{symplectic_character, weyl_character_oracle, weyl_dimension, Partition, SpectralTriple};
use crate::cyclotomic::modulus_self_test;
use crate::ffcount::{parse_table5, read_cache, scan, table5, write_cache, Census, MotivicPolynomial};
use crate::strata::{
    builtin_strata, check_euler_sum, check_indexing, default_strata_text, parse_strata_file, parse_strata_records,
    StrataEvaluator, StratumRecord, STRATA_FILE_ENV,
};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

/// The Table-4 fixture, in the csv layout of `table --format csv`.
pub const TABLE4_CSV: &str = include_str!("../data/table4.csv");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "h3euler", version, about = "Euler characteristics of local systems on H_3")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    format: OutputFormat,
    /// Strata data file (overrides $H3EULER_STRATA_FILE).
    #[arg(long, global = true)]
    strata_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// e_c(H_3, V_lambda) for one partition.
    Euler {
        #[arg(long)]
        lambda: Partition,
    },
    /// e_c for every partition of even weight up to a bound.
    Table {
        #[arg(long)]
        max_weight: u32,
    },
    /// dim V_lambda^{G_i} for one stratum.
    Invariants {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=11))]
        stratum: u32,
        #[arg(long)]
        lambda: Partition,
    },
    /// Groupoid Frobenius-trace sums over F_q against the motivic table.
    Ffcheck {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=5))]
        q: u64,
        /// Repeatable; defaults to every row of the motivic table.
        #[arg(long)]
        lambda: Vec<Partition>,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Per-curve cache; read if present, written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Cross-checks data files, oracles and fixtures.
    Verify {
        /// Motivic table in "a,b,c: polynomial" lines.
        #[arg(long)]
        table5_file: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn data(message: impl Into<String>) -> Self {
        Self { code: EXIT_DATA, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let format = cli.format;
    let strata_path = cli.strata_file.or_else(|| std::env::var_os(STRATA_FILE_ENV).map(PathBuf::from));
    match cli.command {
        Command::Euler { lambda } => {
            let records = load_strata(strata_path.as_deref())?;
            let e = StrataEvaluator::new()
                .euler_characteristic_with(&records, &lambda)
                .map_err(|e| Failure::data(e.to_string()))?;
            emit_euler(out, format, &[(lambda, e)], false)?;
            Ok(EXIT_OK)
        }
        Command::Table { max_weight } => {
            let records = load_strata(strata_path.as_deref())?;
            let rows = euler_table(&records, max_weight).map_err(Failure::data)?;
            emit_euler(out, format, &rows, true)?;
            Ok(EXIT_OK)
        }
        Command::Invariants { stratum, lambda } => {
            let records = load_strata(strata_path.as_deref())?;
            let record = records
                .get(stratum as usize - 1)
                .ok_or_else(|| Failure::usage(format!("no stratum {stratum}")))?;
            let d = StrataEvaluator::new()
                .dim_invariants(record, &lambda)
                .map_err(|e| Failure::data(e.to_string()))?;
            emit_invariants(out, format, stratum, &lambda, d)?;
            Ok(EXIT_OK)
        }
        Command::Ffcheck { q, lambda, shards, cache } => ffcheck(out, err, format, q, lambda, shards.max(1), cache),
        Command::Verify { table5_file } => verify(out, format, strata_path.as_deref(), table5_file.as_deref()),
    }
}

fn io_fail(e: std::io::Error) -> Failure {
    Failure::data(format!("write failed: {e}"))
}

fn load_strata(path: Option<&Path>) -> Result<Vec<StratumRecord>, Failure> {
    match path {
        None => Ok(builtin_strata().to_vec()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::data(format!("{}: {e}", p.display())))?;
            parse_strata_file(&text).map_err(|e| Failure::data(format!("{}: {e}", p.display())))
        }
    }
}

fn euler_table(records: &[StratumRecord], max_weight: u32) -> Result<Vec<(Partition, i64)>, String> {
    let evaluator = StrataEvaluator::new();
    Partition::up_to_weight(max_weight)
        .into_iter()
        .filter(|l| l.weight() % 2 == 0)
        .map(|l| Ok((l, evaluator.euler_characteristic_with(records, &l).map_err(|e| e.to_string())?)))
        .collect()
}

#[derive(Serialize)]
struct EulerRow {
    lambda: Partition,
    e_c: i64,
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::data(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_fail)
}

fn emit_euler(out: &mut dyn Write, format: OutputFormat, rows: &[(Partition, i64)], table: bool) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain if table => {
            for (l, e) in rows {
                writeln!(out, "{:<12}{e:>6}", l.to_string()).map_err(io_fail)?;
            }
        }
        OutputFormat::Plain => {
            for (_, e) in rows {
                writeln!(out, "{e}").map_err(io_fail)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "l1,l2,l3,e_c").map_err(io_fail)?;
            for (l, e) in rows {
                let [a, b, c] = l.parts();
                writeln!(out, "{a},{b},{c},{e}").map_err(io_fail)?;
            }
        }
        OutputFormat::Json => {
            let v: Vec<EulerRow> = rows.iter().map(|&(lambda, e_c)| EulerRow { lambda, e_c }).collect();
            if table {
                json_line(out, &v)?;
            } else {
                json_line(out, &v[0])?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct InvariantsRow {
    stratum: u32,
    lambda: Partition,
    dim: u64,
}

fn emit_invariants(out: &mut dyn Write, format: OutputFormat, stratum: u32, lambda: &Partition, dim: u64) -> Result<(), Failure> {
    match format {
        OutputFormat::Plain => writeln!(out, "{dim}").map_err(io_fail),
        OutputFormat::Csv => {
            let [a, b, c] = lambda.parts();
            writeln!(out, "stratum,l1,l2,l3,dim\n{stratum},{a},{b},{c},{dim}").map_err(io_fail)
        }
        OutputFormat::Json => json_line(out, &InvariantsRow { stratum, lambda: *lambda, dim }),
    }
}

#[derive(Serialize)]
struct FfRow {
    q: u64,
    lambda: Partition,
    raw_sum: String,
    divisor: u64,
    trace_sum: String,
    expected: Option<String>,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

impl FfRow {
    fn status(&self) -> &'static str {
        match self.matches {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "n/a",
        }
    }
}

fn obtain_census(err: &mut dyn Write, q: u64, shards: usize, cache: Option<&Path>) -> Result<Census, Failure> {
    if let Some(path) = cache {
        if path.exists() {
            let file = std::fs::File::open(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
            let census = read_cache(std::io::BufReader::new(file), q)
                .map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
            let _ = writeln!(err, "read {} curves from {}", census.curve_count(), path.display());
            return Ok(census);
        }
    }
    let census = scan(q, shards, true).map_err(|e| Failure::data(e.to_string()))?;
    if let Some(path) = cache {
        let file = std::fs::File::create(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
        write_cache(&census, std::io::BufWriter::new(file)).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
        let _ = writeln!(err, "wrote {} curves to {}", census.curve_count(), path.display());
    }
    Ok(census)
}

fn ffcheck(
    out: &mut dyn Write,
    err: &mut dyn Write,
    format: OutputFormat,
    q: u64,
    lambdas: Vec<Partition>,
    shards: usize,
    cache: Option<PathBuf>,
) -> Outcome {
    if q == 4 {
        return Err(Failure::usage("q must be 3 or 5"));
    }
    let expected_table = table5();
    let lambdas = if lambdas.is_empty() {
        expected_table.keys().copied().collect()
    } else {
        lambdas
    };
    let census = obtain_census(err, q, shards, cache.as_deref())?;
    let mut rows = Vec::new();
    for lambda in lambdas {
        let t = census.trace_sum(&lambda).map_err(|e| Failure::data(e.to_string()))?;
        let expected = expected_table.get(&lambda).map(|p| p.eval(q as i64));
        rows.push(FfRow {
            q,
            lambda,
            raw_sum: t.raw_sum.to_string(),
            divisor: t.divisor,
            trace_sum: t.value.to_string(),
            matches: expected.as_ref().map(|e| Rational::from_integer(e.clone()) == t.value),
            expected: expected.map(|e| e.to_string()),
        });
    }
    match format {
        OutputFormat::Plain => {
            for r in &rows {
                let exp = r.expected.as_deref().unwrap_or("n/a");
                writeln!(out, "q={} {:<10} trace_sum={:<10} expected={:<10} {}", r.q, r.lambda.to_string(), r.trace_sum, exp, r.status())
                    .map_err(io_fail)?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "q,l1,l2,l3,raw_sum,divisor,trace_sum,expected,status").map_err(io_fail)?;
            for r in &rows {
                let [a, b, c] = r.lambda.parts();
                let exp = r.expected.as_deref().unwrap_or("n/a");
                writeln!(out, "{},{a},{b},{c},{},{},{},{exp},{}", r.q, r.raw_sum, r.divisor, r.trace_sum, r.status()).map_err(io_fail)?;
            }
        }
        OutputFormat::Json => json_line(out, &rows)?,
    }
    Ok(if rows.iter().any(|r| r.matches == Some(false)) { EXIT_DATA } else { EXIT_OK })
}

#[derive(Serialize)]
struct CheckRow {
    check: String,
    status: &'static str,
    detail: String,
}

/// Parses the Table-4 fixture into (λ, e_c) rows.
pub fn table4_fixture() -> Vec<(Partition, i64)> {
    TABLE4_CSV
        .lines()
        .skip(1)
        .map(|line| {
            let v: Vec<i64> = line.split(',').map(|x| x.parse().expect("fixture integer")).collect();
            (Partition::new(v[0] as u32, v[1] as u32, v[2] as u32).expect("fixture partition"), v[3])
        })
        .collect()
}

fn oracle_agreement() -> Result<(), String> {
    let points: [[(i64, i64); 3]; 3] = [[(2, 1), (3, 1), (5, 1)], [(1, 2), (-3, 1), (7, 4)], [(-2, 3), (5, 2), (-1, 3)]];
    for pt in points {
        let r = |(n, d): (i64, i64)| Rational::new(BigInt::from(n), BigInt::from(d));
        let values = pt.map(r);
        let inverses = pt.map(|(n, d)| r((d, n)));
        let t = SpectralTriple::new(values, inverses).map_err(|e| e.to_string())?;
        for lambda in Partition::up_to_weight(6) {
            let det = symplectic_character(&lambda, &t);
            let oracle = weyl_character_oracle(&lambda, &t).map_err(|e| e.to_string())?;
            if det != oracle {
                return Err(format!("λ = {lambda}: determinant {det} vs oracle {oracle}"));
            }
        }
    }
    let one = SpectralTriple::new([Rational::one(), Rational::one(), Rational::one()], [Rational::one(), Rational::one(), Rational::one()])
        .map_err(|e| e.to_string())?;
    for lambda in Partition::up_to_weight(10) {
        let chi = symplectic_character(&lambda, &one);
        if chi != Rational::from_integer(BigInt::from(weyl_dimension(&lambda))) {
            return Err(format!("λ = {lambda}: character at identity {chi} is not the Weyl dimension"));
        }
    }
    Ok(())
}

fn verify(out: &mut dyn Write, format: OutputFormat, strata_path: Option<&Path>, table5_path: Option<&Path>) -> Outcome {
    let mut checks: Vec<CheckRow> = Vec::new();
    let mut record = |name: &str, result: Result<(), String>| {
        let (status, detail) = match result {
            Ok(()) => ("PASS", String::new()),
            Err(d) => ("FAIL", d),
        };
        checks.push(CheckRow { check: name.to_string(), status, detail });
    };

    let (source, text) = match strata_path {
        None => ("bundled strata file".to_string(), Ok(default_strata_text().to_string())),
        Some(p) => (p.display().to_string(), std::fs::read_to_string(p).map_err(|e| e.to_string())),
    };
    let parsed = text.and_then(|t| parse_strata_records(&t).map_err(|e| e.to_string()));
    record("strata file parses", parsed.as_ref().map(|_| ()).map_err(|e| format!("{source}: {e}")));
    let records = parsed.unwrap_or_default();
    record(
        "strata file matches compiled table",
        if records == builtin_strata() { Ok(()) } else { Err(format!("{source} differs from the compiled strata")) },
    );
    record("strata indexing", check_indexing(&records).map_err(|e| e.to_string()));
    record("Table-2 sum", check_euler_sum(&records).map_err(|e| e.to_string()));
    record(
        "|Y_i| = #G_i/4",
        records.iter().try_for_each(|r| r.validate()).map_err(|e| e.to_string()),
    );
    record(
        "Phi_336 self-test",
        if modulus_self_test() { Ok(()) } else { Err("Phi_336 does not divide x^336 - 1 with the right degree".into()) },
    );
    record("determinant oracle", oracle_agreement());

    let table4 = table4_fixture();
    let computed = euler_table(&records, 10);
    record(
        "Table 4 golden",
        match &computed {
            Err(e) => Err(e.clone()),
            Ok(rows) if rows.len() != table4.len() => Err(format!("{} rows computed, fixture has {}", rows.len(), table4.len())),
            Ok(rows) => rows
                .iter()
                .zip(&table4)
                .find(|(a, b)| a != b)
                .map_or(Ok(()), |(a, b)| Err(format!("computed {} = {} but fixture has {} = {}", a.0, a.1, b.0, b.1))),
        },
    );

    let motivic: Result<BTreeMap<Partition, MotivicPolynomial>, String> = match table5_path {
        None => Ok(table5()),
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| format!("{}: {e}", p.display()))
            .and_then(|t| parse_table5(&t).map_err(|e| format!("{}: {e}", p.display()))),
    };
    let evaluator = StrataEvaluator::new();
    record(
        "L=1 consistency",
        motivic.and_then(|rows| {
            for (lambda, poly) in &rows {
                let e = evaluator.euler_characteristic_with(builtin_strata(), lambda).map_err(|e| e.to_string())?;
                if poly.eval(1) != BigInt::from(e) {
                    return Err(format!("{lambda}: {poly} at L=1 is {}, e_c is {e}", poly.eval(1)));
                }
            }
            Ok(())
        }),
    );

    match format {
        OutputFormat::Plain => {
            for c in &checks {
                if c.detail.is_empty() {
                    writeln!(out, "{}  {}", c.status, c.check).map_err(io_fail)?;
                } else {
                    writeln!(out, "{}  {}: {}", c.status, c.check, c.detail).map_err(io_fail)?;
                }
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "check,status,detail").map_err(io_fail)?;
            for c in &checks {
                writeln!(out, "\"{}\",{},\"{}\"", c.check, c.status, c.detail.replace('"', "\"\"")).map_err(io_fail)?;
            }
        }
        OutputFormat::Json => json_line(out, &checks)?,
    }
    Ok(if checks.iter().all(|c| c.status == "PASS") { EXIT_OK } else { EXIT_DATA })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("h3euler").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn fixture_has_every_even_partition_up_to_ten() {
        let fixture = table4_fixture();
        let expected: Vec<Partition> = Partition::up_to_weight(10).into_iter().filter(|l| l.weight() % 2 == 0).collect();
        assert_eq!(fixture.iter().map(|r| r.0).collect::<Vec<_>>(), expected);
        assert_eq!(fixture.len(), 38);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(run_args(&["euler", "--lambda", "0,0,0"]).1, "1\n");
        assert_eq!(run_args(&["euler", "--lambda", "9,1,0"]).1, "-22\n");
        assert_eq!(run_args(&["euler", "--lambda", "0,0,1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["euler"]).0, EXIT_USAGE);
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(run_args(&["invariants", "--stratum", "1", "--lambda", "2,0,0"]).1, "21\n");
        assert_eq!(run_args(&["invariants", "--stratum", "1", "--lambda", "3,0,0"]).1, "0\n");
        assert_eq!(run_args(&["invariants", "--stratum", "11", "--lambda", "0,0,0"]).1, "1\n");
        assert_eq!(run_args(&["invariants", "--stratum", "12", "--lambda", "0,0,0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["invariants", "--stratum", "0", "--lambda", "0,0,0"]).0, EXIT_USAGE);
    }

    #[test]
    fn unsupported_q_is_usage_error() {
        assert_eq!(run_args(&["ffcheck", "--q", "7"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["ffcheck", "--q", "4"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }
}
