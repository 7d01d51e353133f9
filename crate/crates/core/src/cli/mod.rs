//! Command-line front end. Every subcommand prints one JSON document with
//! sorted keys and a `context` block identifying the inputs.

mod grammar;

pub use grammar::{parse_factor, parse_sum, parse_word, Factor};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bridgeland::{dh_multiply, e_generator, k_monomial, normalize_class, DhElement};
use crate::cyclic::{check_period, class_direct_sum, htw_multiply, ComplexClass};
use crate::error::{Error, Result};
use crate::exactnum::DEFAULT_BUDGET;
use crate::hallcore::{gamma_table, hall_numbers, hom_dim};
use crate::latticeheis::{verify_suite, LatticeElement, LatticeEngine, SuiteConfig};
use crate::quiverrep::{GClass, IsoClass, Quiver};
use crate::session::Session;

const GRAMMAR: &str = "\
Element syntax (module classes are referenced by their `enumerate` index):
  dh-mul   words of K([a,b,..],i) and e(M,i), also C(M,i) for [C_M[i]], joined by '*'
  lat-mul  words of K([a,b,..],i) and Z(M,i), joined by '*'
  htw-mul  direct sums of C(M,i) and K([a,b,..],i) (a projective class), joined by '+'
  '1' is the empty word and '0' the zero complex; on a one-vertex quiver K(a,i) may omit brackets.";

#[derive(Debug, Parser)]
#[command(name = "cyclic-hall", version, about = "Exact Hall algebras of quivers and of cyclic complexes", after_help = GRAMMAR)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Quiver file: {"vertices": [...], "arrows": [{"from": .., "to": ..}]}.
    #[arg(long, global = true, env = "CYCLIC_HALL_QUIVER")]
    quiver: Option<PathBuf>,
    /// Field size (a prime).
    #[arg(long, global = true, env = "CYCLIC_HALL_Q", default_value_t = 2)]
    q: u32,
    /// Period of the complexes: 0 or at least 3.
    #[arg(long, global = true, env = "CYCLIC_HALL_M", default_value_t = 3, allow_negative_numbers = true)]
    m: i64,
    /// Bound on the total dimension of modules and complex terms.
    #[arg(long, global = true, env = "CYCLIC_HALL_DIM", default_value_t = 2)]
    dim: usize,
    /// Cap on any single brute-force enumeration.
    #[arg(long, global = true, env = "CYCLIC_HALL_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true, env = "CYCLIC_HALL_OUT")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Isomorphism classes of representations up to the dimension bound.
    Enumerate,
    /// Euler and symmetric Euler forms, with Hom and Ext dimensions of class pairs.
    Euler,
    /// Hall numbers F^L_{MN} for dim M + dim N within the bound.
    Hall,
    /// The counts γ^{XY}_{MN} for M, N within the bound.
    Gamma,
    /// Product of two complex classes in the twisted Hall algebra.
    HtwMul { x: String, y: String },
    /// Product of two words in the localized Hall algebra.
    DhMul { x: String, y: String },
    /// Product of two words in the lattice algebra.
    LatMul { x: String, y: String },
    /// Runs a verification suite; exits with 1 if any instance fails.
    Verify {
        /// One of riedtmann, lemma2.1, lemma2.3, lemma2.5, prop2.7, eq3.6, eq3.7, thm3.2, cor3.3, x5.
        suite: String,
        /// Samples for randomized suites.
        #[arg(long, env = "CYCLIC_HALL_SAMPLES", default_value_t = 200)]
        samples: usize,
        /// Seed for randomized suites.
        #[arg(long, env = "CYCLIC_HALL_SEED", default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code for an error: 3 for budget exhaustion, 1 for internal
/// inconsistencies found while computing, 2 for everything the user supplied.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Bookkeeping(_) | Error::NonTermination(_) => 1,
        _ => 2,
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// writes the result; returns the process exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok((doc, code)) => {
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n";
            let written = match &cli.config.out {
                Some(path) => std::fs::write(path, text).map_err(Error::from),
                None => stdout.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn load_session(cfg: &ConfigArgs) -> Result<Session> {
    let path = cfg.quiver.as_ref().ok_or_else(|| Error::Config("--quiver is required".into()))?;
    let quiver = Quiver::from_json(&std::fs::read_to_string(path)?)?;
    Ok(Session::new(quiver, cfg.q)?.with_budget(cfg.budget))
}

fn context(s: &Session, cfg: &ConfigArgs, period: u32) -> Value {
    json!({
        "quiver_hash": s.quiver().content_hash(),
        "vertices": s.quiver().labels(),
        "q": s.q(),
        "m": period,
        "dim": cfg.dim,
        "budget": cfg.budget,
    })
}

fn execute(cli: &Cli) -> Result<(Value, i32)> {
    let cfg = &cli.config;
    let period = check_period(cfg.m)?;
    if cfg.dim == 0 {
        return Err(Error::Config("--dim must be positive".into()));
    }
    let s = load_session(cfg)?;
    let classes = s.classes_up_to(cfg.dim)?;
    let mut code = 0;
    let (name, result) = match &cli.command {
        Command::Enumerate => ("enumerate", enumerate(&s, &classes)?),
        Command::Euler => ("euler", euler(&s, &classes)?),
        Command::Hall => ("hall", hall(&s, &classes, cfg.dim)?),
        Command::Gamma => ("gamma", gamma(&s, &classes)?),
        Command::HtwMul { x, y } => {
            let (a, b) = (complex_of(&s, period, &classes, x)?, complex_of(&s, period, &classes, y)?);
            let prod: Vec<Value> = htw_multiply(&s, &a, &b)?
                .iter()
                .map(|(c, l)| json!({"coefficient": to_value(c), "class": l.to_string()}))
                .collect();
            ("htw-mul", json!({"x": a.to_string(), "y": b.to_string(), "product": prod}))
        }
        Command::DhMul { x, y } => {
            let (a, b) = (dh_word(&s, period, &classes, x)?, dh_word(&s, period, &classes, y)?);
            let p = dh_multiply(&s, &a, &b)?;
            ("dh-mul", json!({"x": to_value(&a), "y": to_value(&b), "product": to_value(&p), "display": p.to_string()}))
        }
        Command::LatMul { x, y } => {
            let engine = LatticeEngine::new(&s, period);
            let (a, b) = (lat_word(&engine, &classes, x)?, lat_word(&engine, &classes, y)?);
            let p = engine.multiply(&a, &b)?;
            ("lat-mul", json!({"x": to_value(&a), "y": to_value(&b), "product": to_value(&p), "display": p.to_string()}))
        }
        Command::Verify { suite, samples, seed } => {
            let sc = SuiteConfig { period, dim: cfg.dim, samples: *samples, seed: *seed };
            let report = verify_suite(suite, &s, &sc)?;
            if !report.passed() {
                code = 1;
            }
            ("verify", to_value(&report))
        }
    };
    Ok((json!({"command": name, "context": context(&s, cfg, period), "result": result}), code))
}

fn class_at<'a>(classes: &'a [IsoClass], i: usize) -> Result<&'a IsoClass> {
    classes.get(i).ok_or_else(|| {
        Error::Parse(format!("class index {i} is out of range (0..{}); raise --dim or see `enumerate`", classes.len()))
    })
}

fn enumerate(s: &Session, classes: &[IsoClass]) -> Result<Value> {
    let rows = classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(json!({
                "index": i,
                "class": c.to_string(),
                "dims": c.dims(),
                "aut_order": s.aut_order(c)?.to_string(),
                "projective": s.rep(c)?.is_projective(s.quiver(), s.q()),
                "omega": s.omega_class(c)?.0,
                "cover": s.cover_class(c)?.0,
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    Ok(Value::Array(rows))
}

fn euler(s: &Session, classes: &[IsoClass]) -> Result<Value> {
    let n = s.num_vertices();
    let units: Vec<GClass> = (0..n).map(|v| GClass::unit(n, v)).collect();
    let matrix = |f: &dyn Fn(&GClass, &GClass) -> i64| -> Vec<Vec<i64>> {
        units.iter().map(|a| units.iter().map(|b| f(a, b)).collect()).collect()
    };
    let mut pairs = Vec::new();
    for a in classes {
        for b in classes {
            let e = s.euler(&a.class(), &b.class());
            let hom = hom_dim(s, a, b)? as i64;
            pairs.push(json!({
                "m": a.to_string(),
                "n": b.to_string(),
                "euler": e,
                "symmetric": s.sym(&a.class(), &b.class()),
                "hom": hom,
                "ext": hom - e,
            }));
        }
    }
    Ok(json!({
        "euler": matrix(&|a, b| s.euler(a, b)),
        "symmetric": matrix(&|a, b| s.sym(a, b)),
        "pairs": pairs,
    }))
}

fn hall(s: &Session, classes: &[IsoClass], dim: usize) -> Result<Value> {
    let mut rows = Vec::new();
    for m in classes {
        for n in classes {
            if m.total_dim() + n.total_dim() > dim {
                continue;
            }
            for (l, f) in hall_numbers(s, m, n)?.iter() {
                rows.push(json!({"m": m.to_string(), "n": n.to_string(), "l": l.to_string(), "f": f.to_string()}));
            }
        }
    }
    Ok(Value::Array(rows))
}

fn gamma(s: &Session, classes: &[IsoClass]) -> Result<Value> {
    let mut rows = Vec::new();
    for m in classes {
        for n in classes {
            for ((x, y), g) in gamma_table(s, m, n)?.iter() {
                rows.push(json!({
                    "m": m.to_string(),
                    "n": n.to_string(),
                    "x": x.to_string(),
                    "y": y.to_string(),
                    "gamma": g.to_string(),
                }));
            }
        }
    }
    Ok(Value::Array(rows))
}

fn complex_of(s: &Session, period: u32, classes: &[IsoClass], text: &str) -> Result<ComplexClass> {
    let mut out = ComplexClass::zero(period);
    for f in parse_sum(text, s.num_vertices())? {
        let part = match f {
            Factor::C(i, r) => ComplexClass::stalk(period, class_at(classes, i)?.clone(), r),
            Factor::K(a, r) => {
                let p = s
                    .projective_of_class(&a)?
                    .ok_or_else(|| Error::Parse(format!("{a:?} is not the class of a projective")))?;
                ComplexClass::contractible(period, p, r)
            }
            other => return Err(Error::Parse(format!("{other:?} is not a complex summand"))),
        };
        out = class_direct_sum(s, &out, &part)?;
    }
    Ok(out)
}

fn dh_word(s: &Session, period: u32, classes: &[IsoClass], text: &str) -> Result<DhElement> {
    let mut acc = DhElement::one(s.q(), period);
    for f in parse_word(text, s.num_vertices())? {
        let x = match f {
            Factor::K(a, i) => k_monomial(s, period, &a, i),
            Factor::E(m, i) => e_generator(s, period, class_at(classes, m)?, i)?,
            Factor::C(m, i) => normalize_class(s, &ComplexClass::stalk(period, class_at(classes, m)?.clone(), i))?,
            Factor::Z(..) => return Err(Error::Parse("use e(M,i) for generators of the localized Hall algebra".into())),
        };
        acc = dh_multiply(s, &acc, &x)?;
    }
    Ok(acc)
}

fn lat_word(engine: &LatticeEngine, classes: &[IsoClass], text: &str) -> Result<LatticeElement> {
    let s = engine.session();
    let period = engine.period();
    let mut acc = LatticeElement::one(s.q(), period);
    for f in parse_word(text, s.num_vertices())? {
        let x = match f {
            Factor::K(a, i) => LatticeElement::k(s, period, &a, i),
            Factor::Z(m, i) => LatticeElement::z(s, period, class_at(classes, m)?, i),
            other => return Err(Error::Parse(format!("{other:?} is not a lattice generator; use K or Z"))),
        };
        acc = engine.multiply(&acc, &x)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1_file() -> tempfile::NamedTempFile {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), r#"{"vertices": ["1"], "arrows": []}"#).unwrap();
        f
    }

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_subcommand_is_invalid_input() {
        assert_eq!(run_capture(&["cyclic-hall", "frobnicate"]).0, 2);
    }

    #[test]
    fn missing_quiver_is_invalid_input() {
        let (code, _, err) = run_capture(&["cyclic-hall", "enumerate"]);
        assert_eq!(code, 2);
        assert!(err.contains("--quiver"));
    }

    #[test]
    fn bad_period_is_invalid_input() {
        let f = a1_file();
        let p = f.path().to_str().unwrap();
        assert_eq!(run_capture(&["cyclic-hall", "enumerate", "--quiver", p, "--m", "2"]).0, 2);
    }

    #[test]
    fn hall_table_has_lines_in_a_plane() {
        let f = a1_file();
        let p = f.path().to_str().unwrap();
        let (code, out, _) = run_capture(&["cyclic-hall", "hall", "--quiver", p, "--q", "2", "--dim", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let rows = v["result"].as_array().unwrap();
        assert!(rows.iter().any(|r| r["m"] == "(1)#0" && r["n"] == "(1)#0" && r["l"] == "(2)#0" && r["f"] == "3"));
    }

    #[test]
    fn lat_mul_smallest_exchange() {
        let f = a1_file();
        let p = f.path().to_str().unwrap();
        let (code, out, _) = run_capture(&["cyclic-hall", "lat-mul", "Z(1,1)", "Z(1,0)", "--quiver", p]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["product"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn budget_exhaustion_exit_code() {
        let f = a1_file();
        let p = f.path().to_str().unwrap();
        let (code, _, _) = run_capture(&["cyclic-hall", "verify", "lemma2.1", "--samples", "3", "--quiver", p, "--budget", "1"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn output_is_deterministic() {
        let f = a1_file();
        let p = f.path().to_str().unwrap();
        let args = ["cyclic-hall", "dh-mul", "e(1,1)", "e(1,0)", "--quiver", p];
        assert_eq!(run_capture(&args).1, run_capture(&args).1);
    }
}
