//! Command-line front end: every command prints one JSON document to stdout.
//!
//! Exit status is 0 on success, 2 for malformed input (with the offending
//! position), 1 for any other failure, including a failed `check`.

use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nckernel::cumulants::{self, Brand, MomentSeq};
use nckernel::hopf::{self, Side};
use nckernel::incidence::{self, SemiMultFn};
use nckernel::nc::{self, Partition};
use nckernel::verify;
use nckernel::{Error, MPoly};

#[derive(Parser)]
#[command(name = "nckernel", version, about = "Exact computations on non-crossing partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Non-crossing partitions.
    #[command(subcommand)]
    Nc(NcCmd),
    /// Semi-multiplicative functions, read from and written as JSON.
    #[command(subcommand, name = "fn")]
    Func(FnCmd),
    /// Moment and cumulant sequences.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Monotone cumulant discrepancy of a free product at order K.
    Appendix {
        #[arg(long = "n")]
        n: usize,
    },
    /// The Hopf algebra on non-crossing partitions.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Runs a property suite.
    Check {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
        /// Truncation degree; defaults to 8 for numeric suites, 6 otherwise.
        #[arg(long)]
        nmax: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Leq,
    Ll,
    Sq,
}

#[derive(Subcommand)]
enum NcCmd {
    /// Lists NC(n), optionally with all strictly comparable pairs.
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum)]
        order: Option<Order>,
    },
    /// Kreweras complement, absolute or relative to `--within`.
    Kreweras {
        partition: String,
        #[arg(long)]
        within: Option<String>,
    },
}

#[derive(Subcommand)]
enum FnCmd {
    /// g1 ∗ g2.
    Convolve { a: String, b: String },
    /// Convolution inverse.
    Inverse { a: String },
    /// A named function: e, fc-m, bc-m, bc-m-t (param t), mc-m, u (param q).
    Named {
        name: String,
        /// `key=value`, value a polynomial such as `q` or `-1/2`.
        #[arg(long)]
        param: Vec<String>,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Action `m · g` of a function on a sequence.
    Act { m: String, f: String },
    /// Converts between moments and cumulant families.
    ///
    /// Families: moments, free, boolean, monotone, t-boolean:EXPR.
    Transform {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        m: String,
    },
    /// Free cumulants of a product of free elements from theirs.
    Freemul { x: String, y: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bogoliubov,
    Chains,
    Efficient,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum HopfCmd {
    /// Antipode of X_π.
    Antipode {
        partition: String,
        #[arg(long, value_enum, default_value = "efficient")]
        method: Method,
        /// Which Bogoliubov recursion to use.
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Numbers of efficient chains from 0_n to 1_n.
    Tn {
        #[arg(long)]
        limit: usize,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_cap().and_then(|_| run(cli.command)) {
        return match f {
            Failure::Lib(e @ Error::Parse { .. }) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
            Failure::Lib(e) => {
                eprintln!("{e}");
                ExitCode::from(1)
            }
            Failure::Io(msg) => {
                eprintln!("{msg}");
                ExitCode::from(1)
            }
            Failure::Check(msg) => {
                eprintln!("first failed property: {msg}");
                ExitCode::from(1)
            }
        };
    }
    ExitCode::SUCCESS
}

fn configure_cap() -> Res<()> {
    if let Ok(v) = std::env::var("NCKERNEL_NMAX") {
        let n: usize = v.trim().parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("NCKERNEL_NMAX must be an integer, got `{v}`"),
        })?;
        nc::set_cap(n)?;
    }
    Ok(())
}

fn emit(v: &Value) {
    print_line(&serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

/// Writes to stdout, ignoring a closed pipe.
fn print_line(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn parse_partition(text: &str) -> Res<Partition> {
    Ok(text.parse()?)
}

fn read_json(path: &str) -> Res<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| {
        let pos = text
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        Failure::Lib(Error::Parse {
            pos,
            msg: format!("{path}: invalid JSON: {e}"),
        })
    })
}

fn read_fn(path: &str) -> Res<SemiMultFn<MPoly>> {
    Ok(SemiMultFn::from_json(&read_json(path)?)?)
}

fn read_seq(path: &str) -> Res<MomentSeq<MPoly>> {
    Ok(MomentSeq::from_json(&read_json(path)?)?)
}

fn parse_brand(text: &str) -> Res<Brand<MPoly>> {
    let lower = text.to_ascii_lowercase();
    Ok(match lower.as_str() {
        "moments" => Brand::Moments,
        "free" => Brand::Free,
        "boolean" => Brand::Boolean,
        "monotone" => Brand::Monotone,
        _ => {
            let rest = ["t-boolean:", "tboolean:"]
                .iter()
                .find_map(|p| lower.strip_prefix(p).map(|r| (p.len(), r)));
            match rest {
                Some((offset, _)) => {
                    let expr = &text[offset..];
                    let t: MPoly = expr.parse().map_err(|e| shift(e, offset))?;
                    Brand::TBoolean(t)
                }
                None => {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!(
                            "unknown family `{text}`; expected moments, free, boolean, monotone or t-boolean:EXPR"
                        ),
                    }
                    .into())
                }
            }
        }
    })
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        other => other,
    }
}

fn parse_params(items: &[String]) -> Res<Vec<(String, MPoly)>> {
    items
        .iter()
        .map(|item| {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("parameter `{item}` must look like key=value"),
            })?;
            let value: MPoly = v.parse().map_err(|e| shift(e, k.len() + 1))?;
            Ok((k.trim().to_string(), value))
        })
        .collect()
}

fn param(params: &[(String, MPoly)], key: &str, name: &str) -> Res<MPoly> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::Domain(format!("`{name}` needs --param {key}=...")).into())
}

fn run(cmd: Command) -> Res<()> {
    match cmd {
        Command::Nc(c) => run_nc(c),
        Command::Func(c) => run_fn(c),
        Command::Seq(c) => run_seq(c),
        Command::Appendix { n } => {
            let d = cumulants::monotone_discrepancy(n)?;
            emit(&json!({ "n": n, "discrepancy": d.to_string() }));
            Ok(())
        }
        Command::Hopf(c) => run_hopf(c),
        Command::Check { suite, nmax } => run_check(&suite, nmax),
    }
}

fn run_nc(c: NcCmd) -> Res<()> {
    match c {
        NcCmd::Enumerate { n, order } => {
            let parts = nc::enumerate_nc(n)?;
            let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
            let mut out = json!({ "n": n, "count": parts.len(), "partitions": names });
            if let Some(order) = order {
                let mut pairs = Vec::new();
                for p in &parts {
                    for q in &parts {
                        let rel = match order {
                            Order::Leq => p.leq(q)?,
                            Order::Ll => p.ll(q)?,
                            Order::Sq => p.sqsubseteq(q)?,
                        };
                        if rel && p != q {
                            pairs.push(json!([p.to_string(), q.to_string()]));
                        }
                    }
                }
                let name = match order {
                    Order::Leq => "leq",
                    Order::Ll => "ll",
                    Order::Sq => "sq",
                };
                out["order"] = json!(name);
                out["pairs"] = Value::Array(pairs);
            }
            emit(&out);
        }
        NcCmd::Kreweras { partition, within } => {
            let p = parse_partition(&partition)?;
            nc::lattice(p.n())?;
            let mut out = json!({ "pi": p.to_string() });
            match within {
                Some(s) => {
                    let s = parse_partition(&s)?;
                    out["within"] = json!(s.to_string());
                    out["kreweras"] = json!(p.relative_kreweras(&s)?.to_string());
                }
                None => out["kreweras"] = json!(p.kreweras().to_string()),
            }
            emit(&out);
        }
    }
    Ok(())
}

fn run_fn(c: FnCmd) -> Res<()> {
    let g = match c {
        FnCmd::Convolve { a, b } => read_fn(&a)?.convolve(&read_fn(&b)?)?,
        FnCmd::Inverse { a } => read_fn(&a)?.inverse(),
        FnCmd::Named { name, param: raw, nmax } => {
            let params = parse_params(&raw)?;
            match name.as_str() {
                "e" => incidence::unit_e(nmax)?,
                "fc-m" => incidence::g_fc_m(nmax)?,
                "bc-m" => incidence::g_bc_m(nmax)?,
                "bc-m-t" => incidence::g_bc_m_t(nmax, param(&params, "t", &name)?)?,
                "mc-m" => incidence::g_mc_m(nmax)?,
                "u" => incidence::u(nmax, param(&params, "q", &name)?)?,
                other => {
                    return Err(Error::Domain(format!(
                        "unknown function `{other}`; expected e, fc-m, bc-m, bc-m-t, mc-m or u"
                    ))
                    .into())
                }
            }
        }
    };
    emit(&g.to_json());
    Ok(())
}

fn run_seq(c: SeqCmd) -> Res<()> {
    let out = match c {
        SeqCmd::Act { m, f } => cumulants::act(&read_seq(&m)?, &read_fn(&f)?)?,
        SeqCmd::Transform { from, to, m } => {
            let (from, to) = (parse_brand(&from)?, parse_brand(&to)?);
            cumulants::transition(&read_seq(&m)?, &from, &to)?
        }
        SeqCmd::Freemul { x, y } => cumulants::free_multiply(&read_seq(&x)?, &read_seq(&y)?)?,
    };
    emit(&out.to_json());
    Ok(())
}

fn run_hopf(c: HopfCmd) -> Res<()> {
    match c {
        HopfCmd::Antipode { partition, method, side } => {
            let p = parse_partition(&partition)?;
            let (s, label) = match method {
                Method::Bogoliubov => {
                    let side = match side {
                        SideArg::Left => Side::Left,
                        SideArg::Right => Side::Right,
                    };
                    (hopf::antipode_bogoliubov(&hopf::x(&p)?, side), "bogoliubov")
                }
                Method::Chains => (hopf::antipode_chains(&p, false)?, "chains"),
                Method::Efficient => (hopf::antipode_chains(&p, true)?, "efficient"),
            };
            emit(&hopf::antipode_json(&p, label, &s));
        }
        HopfCmd::Tn { limit } => {
            let t = hopf::count_efficient_chains_0n(limit)?;
            let body: Vec<String> = t.iter().map(|v| v.to_string()).collect();
            print_line(&format!("[{}]", body.join(",")));
        }
    }
    Ok(())
}

fn run_check(suite: &str, nmax: Option<usize>) -> Res<()> {
    let suites: Vec<&str> = if suite == "all" {
        verify::SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut reports = Vec::new();
    let mut first_failure = None;
    for s in suites {
        let k = nmax.unwrap_or_else(|| verify::default_nmax(s));
        let outcomes = verify::run_suite(s, k)?;
        let results: Vec<Value> = outcomes
            .iter()
            .map(|o| {
                if !o.passed && first_failure.is_none() {
                    first_failure = Some(format!("{s}/{}: {}", o.property, o.detail));
                }
                json!({ "property": o.property, "passed": o.passed, "detail": o.detail })
            })
            .collect();
        reports.push(json!({ "suite": s, "nmax": k, "results": results }));
    }
    emit(&Value::Array(reports));
    match first_failure {
        Some(msg) => Err(Failure::Check(msg)),
        None => Ok(()),
    }
}
