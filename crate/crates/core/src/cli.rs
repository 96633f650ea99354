//! Command-line front end. JSON is the canonical output; tables and CSV are
//! rendered from the same records, one row per record.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
//! 3 enumeration cap exceeded.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bruckbose::verify_bruckbose;
use crate::elation::{count_classes, equivalence_classes, verify_correspondence, DEFAULT_PGL_CAP};
use crate::error::Error;
use crate::gf::{divisors_u32, is_prime, make_field, prime_power, FieldTower};
use crate::pspace::{Subspace, DEFAULT_SUBSPACE_CAP};
use crate::selftest::{conjugacy_case, run_selftest};
use crate::singer::{
    orbit_census, predicted_free_orbit_count, predicted_orbit_count, DEFAULT_CENSUS_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "galela",
    version,
    about = "Elation groups, Singer orbits and subspace counts over finite fields"
)]
pub struct Cli {
    /// Enumeration cap (subspaces, census size, |PGL|); defaults depend on the command.
    #[arg(long, global = true, env = "GALELA_CAP_SUBSPACES")]
    pub cap: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summary of GF(p^h): modulus, primitive element, subfields.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        json: bool,
    },
    /// Singer orbits on (t−1)-subspaces of PG(s−1, q).
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        format: Format,
    },
    /// Closed-form number of classes of elation groups of order p^m.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        json: bool,
    },
    /// Equivalence classes of subgroups of order p^m of GF(p^h).
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        json: bool,
    },
    #[command(subcommand)]
    Verify(Verify),
    /// Orbits of elation groups in the field-reduction model (JSON report).
    Bruckbose(BruckBoseArgs),
    /// Runs the full verification matrix (JSON report).
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Classes of GF(p^n)-closed subgroups against Singer orbits in PG(h/n − 1, p^n).
    Correspondence {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Scalar equivalence against conjugacy in PGL(r, p^h), for all pairs of subgroups.
    Lemma1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        r: usize,
        /// Restrict to subgroups of order p^m.
        #[arg(long)]
        m: Option<u32>,
    },
    Bruckbose(BruckBoseArgs),
}

#[derive(Args, Debug)]
pub struct BruckBoseArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub h: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
pub struct Format {
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    pub csv: bool,
}

enum Output {
    Json(Value),
    Text(String),
}

enum Failure {
    Error(Error),
    /// A completed check that came out false, with its report.
    Report(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Verification(_)
        | Error::Inequivalent
        | Error::InexactDivision { .. }
        | Error::RankDeficient { .. } => EXIT_VERIFICATION,
        _ => EXIT_INVALID,
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Error(Error::InvalidParameter(msg.into()))
}

fn check_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Failure::Error(Error::NotPrime(p)))
    }
}

fn check_m(h: u32, m: u32) -> Result<(), Failure> {
    if m == 0 || m > h {
        return Err(invalid(format!("need 1 <= m <= h, got m = {m}, h = {h}")));
    }
    Ok(())
}

fn element_json(f: &FieldTower, e: crate::gf::Elem) -> Value {
    json!(f.coeffs(e))
}

fn subspace_json(f: &FieldTower, x: &Subspace) -> Value {
    Value::Array(
        x.basis()
            .iter()
            .map(|row| Value::Array(row.iter().map(|&e| element_json(f, e)).collect()))
            .collect(),
    )
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn field_cmd(p: u64, h: u32, json: bool) -> Result<Output, Failure> {
    let f = make_field(p, h)?;
    let subfields: Vec<Value> = divisors_u32(h)
        .into_iter()
        .map(|n| {
            let g = f.subfield_generator(n)?;
            Ok(json!({ "n": n, "order": p.pow(n), "generator": element_json(&f, g) }))
        })
        .collect::<Result<_, Error>>()?;
    let report = json!({
        "p": p, "h": h, "order": f.order(),
        "modulus": f.modulus(),
        "mu": element_json(&f, f.mu()),
        "subfields": subfields,
    });
    if json {
        return Ok(Output::Json(report));
    }
    let mut s = format!(
        "GF({p}^{h}), order {}\nmodulus (ascending) {:?}\nmu {}\n",
        f.order(),
        f.modulus(),
        compact(&report["mu"])
    );
    for sub in report["subfields"].as_array().expect("array") {
        s += &format!(
            "subfield GF({p}^{}) generator {}\n",
            sub["n"],
            compact(&sub["generator"])
        );
    }
    Ok(Output::Text(s))
}

fn census_cmd(q: u64, s: u32, t: u32, format: &Format, cap: u64) -> Result<Output, Failure> {
    prime_power(q)?;
    if t == 0 || t > s {
        return Err(invalid(format!("need 1 <= t <= s, got t = {t}, s = {s}")));
    }
    let census = orbit_census(s as usize, t as usize, q, cap)?;
    let f = census.group.reduction().small().clone();
    let orbits: Vec<Value> = census
        .records()
        .map(|r| {
            json!({
                "representative": subspace_json(&f, &r.representative),
                "size": r.size, "u": r.u, "is_spread": r.is_spread,
            })
        })
        .collect();
    let report = json!({
        "params": { "q": q, "s": s, "t": t },
        "orbits": orbits,
        "totals": { "orbits": census.orbits.len(), "free_orbits": census.free_orbits(), "subspaces": census.total() },
        "predicted": {
            "eq2": predicted_orbit_count(s, t, q)?.to_string(),
            "eq3": predicted_free_orbit_count(s, t, q)?.to_string(),
        },
    });
    if format.json {
        return Ok(Output::Json(report));
    }
    let rows = report["orbits"].as_array().expect("array");
    let mut out = String::new();
    if format.csv {
        out += "orbit,size,u,is_spread,representative\n";
        for (i, o) in rows.iter().enumerate() {
            out += &format!(
                "{i},{},{},{},\"{}\"\n",
                o["size"],
                o["u"],
                o["is_spread"],
                compact(&o["representative"])
            );
        }
    } else {
        out += &format!(
            "{:>5} {:>8} {:>3} {:>6}  representative\n",
            "orbit", "size", "u", "spread"
        );
        for (i, o) in rows.iter().enumerate() {
            let spread = if o["is_spread"] == Value::Bool(true) {
                "yes"
            } else {
                "no"
            };
            out += &format!(
                "{i:>5} {:>8} {:>3} {spread:>6}  {}\n",
                o["size"].to_string(),
                o["u"].to_string(),
                compact(&o["representative"])
            );
        }
    }
    Ok(Output::Text(out))
}

fn count_cmd(p: u64, h: u32, m: u32, n: u32, minimal: bool, json: bool) -> Result<Output, Failure> {
    check_prime(p)?;
    check_m(h, m)?;
    if n == 0 || !m.gcd(&h).is_multiple_of(n) {
        return Err(invalid(format!("n = {n} does not divide gcd({m}, {h})")));
    }
    let count = count_classes(p, h, m, n, minimal)?;
    if json {
        return Ok(Output::Json(
            json!({ "p": p, "h": h, "m": m, "n": n, "minimal": minimal, "count": count.to_string() }),
        ));
    }
    Ok(Output::Text(format!("{count}\n")))
}

fn classify_cmd(p: u64, h: u32, m: u32, json: bool, cap: u64) -> Result<Output, Failure> {
    check_prime(p)?;
    check_m(h, m)?;
    let classes = equivalence_classes(p, h, m, cap)?;
    let f = make_field(p, h)?;
    let records: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "representative": c.representative.basis_elements().iter().map(|&e| element_json(&f, e)).collect::<Vec<_>>(),
                "size": c.members.len(),
                "profile": c.profile,
            })
        })
        .collect();
    if json {
        return Ok(Output::Json(
            json!({ "p": p, "h": h, "m": m, "classes": records }),
        ));
    }
    let mut out = format!(
        "{:>5} {:>8} {:>9}  representative basis\n",
        "class", "size", "minimal"
    );
    for (i, c) in records.iter().enumerate() {
        let minimal = format!(
            "{}/{}",
            c["profile"]["minimal_d"], c["profile"]["minimal_n"]
        );
        out += &format!(
            "{i:>5} {:>8} {minimal:>9}  {}\n",
            c["size"].to_string(),
            compact(&c["representative"])
        );
    }
    Ok(Output::Text(out))
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn bruckbose_cmd(a: &BruckBoseArgs, cap: u64) -> Result<Output, Failure> {
    check_prime(a.p)?;
    if a.n == 0 || a.h == 0 || !a.h.is_multiple_of(a.n) {
        return Err(invalid(format!("n = {} does not divide h = {}", a.n, a.h)));
    }
    if a.r < 2 {
        return Err(invalid(format!("r must be at least 2, got {}", a.r)));
    }
    let report = verify_bruckbose(a.r, a.p, a.h, a.n, a.m, a.seed, a.exhaustive, cap)?;
    Ok(Output::Json(to_json(&report)))
}

fn verify_cmd(v: &Verify, cap: Option<u64>) -> Result<Output, Failure> {
    match v {
        Verify::Correspondence { p, h, m, n } => {
            check_prime(*p)?;
            check_m(*h, *m)?;
            let report =
                verify_correspondence(*p, *h, *m, *n, cap.unwrap_or(DEFAULT_SUBSPACE_CAP))?;
            Ok(Output::Json(to_json(&report)))
        }
        Verify::Lemma1 { p, h, r, m } => {
            check_prime(*p)?;
            if *r < 2 {
                return Err(invalid(format!("r must be at least 2, got {r}")));
            }
            let orders: Vec<u32> = match m {
                Some(m) => {
                    check_m(*h, *m)?;
                    vec![*m]
                }
                None => (1..=*h).collect(),
            };
            let report = conjugacy_case(*p, *h, &orders, *r, cap.unwrap_or(DEFAULT_PGL_CAP))?;
            if report["pass"] != Value::Bool(true) {
                return Err(Failure::Report(report));
            }
            Ok(Output::Json(report))
        }
        Verify::Bruckbose(a) => bruckbose_cmd(a, cap.unwrap_or(DEFAULT_SUBSPACE_CAP)),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    if cli.cap == Some(0) {
        return Err(invalid("cap must be positive"));
    }
    let cap = cli.cap;
    match &cli.command {
        Command::Field { p, h, json } => field_cmd(*p, *h, *json),
        Command::Census { q, s, t, format } => {
            census_cmd(*q, *s, *t, format, cap.unwrap_or(DEFAULT_CENSUS_CAP))
        }
        Command::Count {
            p,
            h,
            m,
            n,
            minimal,
            json,
        } => count_cmd(*p, *h, *m, *n, *minimal, *json),
        Command::Classify { p, h, m, json } => {
            classify_cmd(*p, *h, *m, *json, cap.unwrap_or(DEFAULT_SUBSPACE_CAP))
        }
        Command::Verify(v) => verify_cmd(v, cap),
        Command::Bruckbose(a) => bruckbose_cmd(a, cap.unwrap_or(DEFAULT_SUBSPACE_CAP)),
        Command::Selftest => {
            let report = run_selftest(cap.unwrap_or(DEFAULT_SUBSPACE_CAP));
            let value = to_json(&report);
            if report.pass {
                Ok(Output::Json(value))
            } else {
                Err(Failure::Report(value))
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => Err(invalid("threads must be positive")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(invalid(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(Output::Json(v)) => {
            let _ = out.write_all(pretty(&v).as_bytes());
            EXIT_OK
        }
        Ok(Output::Text(s)) => {
            let _ = out.write_all(s.as_bytes());
            EXIT_OK
        }
        Err(Failure::Report(v)) => {
            let _ = out.write_all(pretty(&v).as_bytes());
            EXIT_VERIFICATION
        }
        Err(Failure::Error(e)) => {
            let code = exit_code(&e);
            let body = json!({ "status": "error", "exit_code": code, "error": e.to_string() });
            let target: &mut dyn Write = if code == EXIT_VERIFICATION { out } else { err };
            let _ = target.write_all(pretty(&body).as_bytes());
            code
        }
    }
}
