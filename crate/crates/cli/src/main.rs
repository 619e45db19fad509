mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use circavoid::oracle::{self, DEFAULT_ORACLE_CAP};
use circavoid::perm::{circular_target, VincularPattern};
use circavoid::recurrence::{check_conjectures, Recurrences};
use circavoid::series::{
    a_series, a_vu_series, b11_series, b1u_series, c11_series, c1u_series, v0_series, v_series, Argument,
    TruncatedSeries,
};
use circavoid::verify::{self, Fault, FaultTable, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use table::{Format, Table};

/// Exact enumeration of circular permutations avoiding 23-4-1.
#[derive(Parser)]
#[command(name = "circavoid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count circular avoiders |A_n|, or |L_n| with --linear.
    Count(CountArgs),
    /// Emit a_1..a_N (or the b, c, v totals) from the recurrences.
    Table(TableArgs),
    /// Emit the coefficients of a generating function.
    Series(SeriesArgs),
    /// Run the cross-engine verification suite.
    Verify(VerifyArgs),
    /// Check a_n^(n+1) < a_(n+1)^n on the computed range.
    Conjectures(ConjectureArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Oracle,
    Dp,
    Gf,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sequence {
    A,
    B,
    C,
    V,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Gf {
    #[value(name = "A")]
    A,
    #[value(name = "B11")]
    B11,
    #[value(name = "C11")]
    C11,
    #[value(name = "V1")]
    V1,
    #[value(name = "V0")]
    V0,
    #[value(name = "B1u")]
    B1u,
    #[value(name = "C1u")]
    C1u,
}

#[derive(Args)]
struct OracleLimit {
    /// Largest n the brute-force oracle accepts.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Let the oracle run beyond --oracle-cap.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    /// Pattern text: blocks separated by '-' or spaces, letters inside a
    /// block adjacent. "23-4-1" is 2341 with 2 and 3 adjacent, the default.
    /// Use '_' between letters of a block when letters exceed 9.
    #[arg(long)]
    pattern: Option<String>,
    /// Count linear permutations: |L_n| (avoiding 12-3 and 4-1-23), or
    /// linear avoiders of --pattern.
    #[arg(long)]
    linear: bool,
    #[arg(long, value_enum, default_value_t = Engine::Dp)]
    engine: Engine,
    #[command(flatten)]
    limit: OracleLimit,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long = "N", default_value_t = 30)]
    big_n: usize,
    /// a, or the per-n totals of b, c or v.
    #[arg(long, value_enum, default_value_t = Sequence::A)]
    sequence: Sequence,
    /// Re-emit a previously emitted table instead of computing one.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum, default_value_t = Gf::A)]
    gf: Gf,
    #[arg(long, default_value_t = 32)]
    order: usize,
    /// Rational value of v for A(x,v,u), e.g. 2 or 1/2.
    #[arg(long)]
    v: Option<BigRational>,
    /// Rational value of u for A(x,v,u), B(x,1,u) or C(x,1,u).
    #[arg(long)]
    u: Option<BigRational>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Oracle comparisons run for 2 <= n <= this.
    #[arg(long, default_value_t = 9)]
    n: usize,
    /// Length of the recurrence table.
    #[arg(long = "N", default_value_t = 30)]
    big_n: usize,
    #[arg(long, default_value_t = 32)]
    order: usize,
    #[command(flatten)]
    limit: OracleLimit,
    /// Corrupt one recurrence cell first, as TABLE:n:i:j with TABLE b or c.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long = "N", default_value_t = 30)]
    big_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

enum Failure {
    /// A check ran and did not pass.
    Check,
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(a) => count(a),
        Command::Table(a) => table(a),
        Command::Series(a) => series(a),
        Command::Verify(a) => verify(a),
        Command::Conjectures(a) => conjectures(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn nat(c: &BigRational) -> Result<BigUint, Failure> {
    if c.is_integer() {
        if let Some(v) = c.to_integer().to_biguint() {
            return Ok(v);
        }
    }
    Err(Failure::Usage(format!("coefficient {c} is not a natural number")))
}

#[derive(Serialize)]
struct CountJson {
    n: usize,
    pattern: String,
    linear: bool,
    counts: Vec<EngineCount>,
    verdict: Option<&'static str>,
}

#[derive(Serialize)]
struct EngineCount {
    engine: &'static str,
    value: String,
}

fn count(a: CountArgs) -> Outcome {
    if a.n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let pattern = match &a.pattern {
        Some(text) => text.parse::<VincularPattern>()?,
        None => circular_target(),
    };
    // With --linear a given pattern replaces the pair defining L_n.
    let default = if a.linear {
        a.pattern.is_none()
    } else {
        pattern == circular_target()
    };
    let engines: &[Engine] = match a.engine {
        Engine::All => &[Engine::Oracle, Engine::Dp, Engine::Gf],
        Engine::Oracle => &[Engine::Oracle],
        Engine::Dp => &[Engine::Dp],
        Engine::Gf => &[Engine::Gf],
    };
    if !default && engines.iter().any(|&e| e != Engine::Oracle) {
        return Err(Failure::Usage(format!(
            "the dp and gf engines only count circular {} and L_n; use --engine oracle for {pattern}",
            circular_target()
        )));
    }
    let n = a.n;
    let mut counts = Vec::new();
    for &engine in engines {
        let (name, value) = match engine {
            Engine::Oracle => {
                oracle::ensure_within_cap(n, a.limit.oracle_cap, a.limit.allow_large)?;
                let v = match (a.linear, default) {
                    (true, true) => oracle::count_l(n),
                    (true, false) => oracle::count_linear_avoiders(n, std::slice::from_ref(&pattern)),
                    (false, _) => oracle::count_circular_avoiders(n, &pattern),
                };
                ("oracle", BigUint::from(v))
            }
            Engine::Dp => {
                let k = if a.linear { n } else { n - 1 };
                let v = if k == 0 {
                    BigUint::from(1u32)
                } else {
                    Recurrences::compute(k).a.get(k).clone()
                };
                ("dp", v)
            }
            Engine::Gf => {
                let e = if a.linear { n + 1 } else { n };
                ("gf", nat(a_series(e)?.coeff(e))?)
            }
            Engine::All => unreachable!("expanded above"),
        };
        counts.push(EngineCount {
            engine: name,
            value: value.to_string(),
        });
    }
    let agree = counts.windows(2).all(|w| w[0].value == w[1].value);
    let verdict = (counts.len() > 1).then_some(if agree { "MATCH" } else { "MISMATCH" });
    match a.format {
        Format::Json => {
            let out = CountJson {
                n,
                pattern: pattern.to_string(),
                linear: a.linear,
                counts,
                verdict,
            };
            println!("{}", serde_json::to_string(&out)?);
        }
        Format::Csv => {
            println!("engine,value");
            for c in &counts {
                println!("{},{}", c.engine, c.value);
            }
            if let Some(v) = verdict {
                println!("verdict,{v}");
            }
        }
        Format::Plain => {
            if counts.len() == 1 {
                println!("{}", counts[0].value);
            } else {
                for c in &counts {
                    println!("{:<6} {}", c.engine, c.value);
                }
                println!("{}", verdict.expect("several engines"));
            }
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn table(a: TableArgs) -> Outcome {
    let name = match a.sequence {
        Sequence::A => "a",
        Sequence::B => "b",
        Sequence::C => "c",
        Sequence::V => "v",
    };
    if let Some(path) = &a.input {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let (t, _) = Table::parse(&text, name)?;
        print!("{}", t.emit(a.format));
        return Ok(());
    }
    if a.big_n == 0 {
        return Err(Failure::Usage("N must be at least 1".into()));
    }
    let rec = Recurrences::compute(a.big_n);
    let value = |n: usize| -> String {
        match a.sequence {
            Sequence::A => rec.a.get(n).to_string(),
            Sequence::B => rec.b.total(n).to_string(),
            Sequence::C => rec.c.total(n).to_string(),
            Sequence::V => rec.v.total(n).to_string(),
        }
    };
    let t = Table::new(name, (1..=a.big_n).map(|n| (n, value(n))));
    print!("{}", t.emit(a.format));
    Ok(())
}

fn series(a: SeriesArgs) -> Outcome {
    let takes_u = matches!(a.gf, Gf::A | Gf::B1u | Gf::C1u);
    if a.u.is_some() && !takes_u {
        return Err(Failure::Usage("--u applies only to A, B1u and C1u".into()));
    }
    if a.v.is_some() && a.gf != Gf::A {
        return Err(Failure::Usage("--v applies only to A".into()));
    }
    let u_arg = || -> Result<Argument, Failure> {
        a.u.clone()
            .map(Argument::Scalar)
            .ok_or_else(|| Failure::Usage("--u is required for B1u and C1u".into()))
    };
    let order = a.order;
    let (name, s): (String, TruncatedSeries) = match a.gf {
        Gf::A if a.v.is_some() || a.u.is_some() => {
            let v = a.v.clone().unwrap_or_else(|| BigRational::from_integer(1.into()));
            let u = a.u.clone().unwrap_or_else(|| BigRational::from_integer(1.into()));
            let name = format!("A(x,{v},{u})");
            (name, a_vu_series(&Argument::Scalar(v), &Argument::Scalar(u), order)?)
        }
        Gf::A => ("A".into(), a_series(order)?),
        Gf::B11 => ("B11".into(), b11_series(order)?),
        Gf::C11 => ("C11".into(), c11_series(order)?),
        Gf::V1 => ("V1".into(), v_series(&Argument::one(), order)?),
        Gf::V0 => ("V0".into(), v0_series(order)?),
        Gf::B1u => {
            let u = u_arg()?;
            (format!("B(x,1,{})", a.u.as_ref().expect("checked")), b1u_series(&u, order)?)
        }
        Gf::C1u => {
            let u = u_arg()?;
            (format!("C(x,1,{})", a.u.as_ref().expect("checked")), c1u_series(&u, order)?)
        }
    };
    match a.format {
        Format::Plain => println!("{s}"),
        f => {
            let t = Table::new(&name, s.coeffs().iter().enumerate().map(|(k, c)| (k, c.to_string())));
            print!("{}", t.emit(f));
        }
    }
    Ok(())
}

fn parse_fault(text: &str) -> Result<Fault, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Failure::Usage(format!("fault {text:?} is not TABLE:n:i:j"));
    let [t, n, i, j] = parts.as_slice() else {
        return Err(bad());
    };
    let table = match *t {
        "b" => FaultTable::B,
        "c" => FaultTable::C,
        _ => return Err(bad()),
    };
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let (n, i, j) = (num(n)?, num(i)?, num(j)?);
    if i == 0 || j == 0 || i > n || j > n {
        return Err(bad());
    }
    Ok(Fault { table, n, i, j })
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

fn verify(a: VerifyArgs) -> Outcome {
    oracle::ensure_within_cap(a.n, a.limit.oracle_cap, a.limit.allow_large)?;
    let fault = a.inject_fault.as_deref().map(parse_fault).transpose()?;
    let defaults = VerifyConfig::default();
    if let Some(f) = fault {
        if f.n > a.big_n.max(a.n).max(defaults.weighted_max) {
            return Err(Failure::Usage(format!("fault row {} is outside the table", f.n)));
        }
    }
    let cfg = VerifyConfig {
        oracle_max: a.n,
        table_n: a.big_n,
        order: a.order,
        fault,
        ..defaults
    };
    let report = verify::run(&cfg);
    match a.format {
        Format::Json => {
            let rows: Vec<CheckJson> = report
                .outcomes
                .iter()
                .map(|o| CheckJson {
                    name: &o.name,
                    passed: o.passed,
                    detail: &o.detail,
                })
                .collect();
            println!("{}", serde_json::to_string(&rows)?);
        }
        Format::Csv => {
            println!("check,status,detail");
            for o in &report.outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                println!("{},{status},\"{}\"", o.name, o.detail.replace('"', "\"\""));
            }
        }
        Format::Plain => print!("{report}"),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[derive(Serialize)]
struct ConjectureJson {
    status: &'static str,
    inequality: Vec<InequalityRow>,
    holds_for_all: bool,
    ratios_strictly_increasing: bool,
}

#[derive(Serialize)]
struct InequalityRow {
    n: usize,
    holds: bool,
    ratio: String,
}

fn conjectures(a: ConjectureArgs) -> Outcome {
    if a.big_n < 2 {
        return Err(Failure::Usage("N must be at least 2".into()));
    }
    let rec = Recurrences::compute(a.big_n);
    let report = check_conjectures(&rec.a);
    let rows: Vec<InequalityRow> = report
        .inequality
        .iter()
        .zip(&report.ratios)
        .map(|(&(n, holds), r)| InequalityRow {
            n,
            holds,
            ratio: r.to_string(),
        })
        .collect();
    let all = report.inequality_holds();
    let increasing = report.ratios_increasing();
    match a.format {
        Format::Json => {
            let out = ConjectureJson {
                status: "checked, not proven",
                inequality: rows,
                holds_for_all: all,
                ratios_strictly_increasing: increasing,
            };
            println!("{}", serde_json::to_string(&out)?);
        }
        Format::Csv => {
            println!("n,holds,ratio");
            for r in &rows {
                println!("{},{},{}", r.n, r.holds, r.ratio);
            }
        }
        Format::Plain => {
            println!("a_n^(n+1) < a_(n+1)^n for n < {} (checked, not proven)", a.big_n);
            let wn = (a.big_n - 1).to_string().len().max(1);
            for r in &rows {
                println!("{:>wn$}  {:<5}  a_(n+1)/a_n = {}", r.n, r.holds, r.ratio);
            }
            match report.first_failure() {
                None => println!("inequality holds for all n < {}", a.big_n),
                Some(n) => println!("inequality fails at n = {n}"),
            }
            println!(
                "ratios a_(n+1)/a_n strictly increasing: {} (observation only)",
                if increasing { "yes" } else { "no" }
            );
        }
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
