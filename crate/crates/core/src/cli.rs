//! The `cmreg` command line.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::constructions::{verify_certificate, witness_min_reg, CertificateJson, SCHEMA};
use crate::error::{Error, Result};
use crate::hilbert_function::{f_bar, minimal_f, minimal_g, rho_bar, rho_min, scheme_hf_minimum, HilbertFunction};
use crate::hilbert_poly::{parse_polynomial, AdmissiblePolynomial};
use crate::regularity::{format_trace, min_reg, min_reg_for_hf, min_reg_for_rho, min_reg_in_ambient};

#[derive(Debug, Parser)]
#[command(name = "cmreg", version, about = "Minimal Castelnuovo-Mumford regularity of schemes with a given Hilbert polynomial")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PolyArg {
    /// Hilbert polynomial, e.g. "2z^3-6z^2+29z-20" or "1/3z^3+2z^2+14/3z-4".
    pub polynomial: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gotzmann number r of the polynomial.
    Gotzmann(PolyArg),
    /// Least regularity of a Hilbert function with this polynomial.
    Rho(PolyArg),
    /// Least regularity of a scheme Hilbert function with this polynomial.
    RhoBar(PolyArg),
    /// The minimal function f^rho (or g^rho with --g).
    Minfn {
        polynomial: String,
        #[arg(long)]
        rho: u64,
        #[arg(long)]
        g: bool,
    },
    /// Whether some scheme has this polynomial and Hilbert function regularity rho.
    Exists {
        polynomial: String,
        #[arg(long)]
        rho: u64,
    },
    /// Minimal Castelnuovo-Mumford regularity.
    Minreg {
        /// Optional when --hf is given.
        polynomial: Option<String>,
        #[arg(long, conflicts_with_all = ["hf", "ambient"])]
        rho: Option<u64>,
        /// Hilbert function "v0,...,v{s-1} ; poly".
        #[arg(long, conflicts_with = "ambient")]
        hf: Option<String>,
        /// Dimension n of the ambient projective space.
        #[arg(long)]
        ambient: Option<u64>,
        /// Also print the recursion trace.
        #[arg(long)]
        trace: bool,
    },
    /// Build a verified ideal realizing the minimal regularity.
    Witness {
        polynomial: Option<String>,
        #[arg(long, conflicts_with = "hf")]
        rho: Option<u64>,
        #[arg(long)]
        hf: Option<String>,
        /// Write the certificate here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate file.
    Verify { certificate: PathBuf },
    /// Recursion trace, one row per derivative.
    Table(PolyArg),
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Emitted {
    status: i32,
    text: String,
    json: Value,
}

impl Emitted {
    fn ok(text: String, json: Value) -> Self {
        Emitted { status: 0, text, json }
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn poly(text: &str) -> Result<AdmissiblePolynomial> {
    parse_polynomial(text)
}

fn hf_input(polynomial: Option<&str>, hf: &str) -> Result<HilbertFunction> {
    let u: HilbertFunction = hf.parse()?;
    if let Some(text) = polynomial {
        let p = poly(text)?;
        if p.poly() != u.tail() {
            return Err(Error::InvalidArgument(format!(
                "Hilbert function {u} does not have Hilbert polynomial {}",
                p.poly()
            )));
        }
    }
    Ok(u)
}

fn required(polynomial: Option<String>) -> Result<String> {
    polynomial.ok_or_else(|| Error::InvalidArgument("a polynomial or --hf is required".into()))
}

fn dispatch(command: Command) -> Result<Emitted> {
    match command {
        Command::Gotzmann(a) => {
            let p = poly(&a.polynomial)?;
            let r = p.gotzmann_number().to_string();
            Ok(Emitted::ok(
                r.clone(),
                json!({
                    "polynomial": p.poly().to_string(),
                    "gotzmann_number": r,
                    "gotzmann_form": p.gotzmann_form().to_string(),
                }),
            ))
        }
        Command::Rho(a) => {
            let p = poly(&a.polynomial)?;
            let v = rho_min(&p);
            Ok(Emitted::ok(v.to_string(), json!({"polynomial": p.poly().to_string(), "rho_min": v})))
        }
        Command::RhoBar(a) => {
            let p = poly(&a.polynomial)?;
            let v = rho_bar(&p);
            Ok(Emitted::ok(v.to_string(), json!({"polynomial": p.poly().to_string(), "rho_bar": v})))
        }
        Command::Minfn { polynomial, rho, g } => {
            let p = poly(&polynomial)?;
            let h = if g { minimal_g(&p, rho)? } else { minimal_f(&p, rho)? };
            let d = h.delta()?;
            let scheme = h.is_scheme_function();
            let mut text = format!("{h}\ndelta {d}");
            if !d.is_admissible() {
                text.push_str(" (not admissible)");
            }
            Ok(Emitted::ok(
                text,
                json!({
                    "polynomial": p.poly().to_string(),
                    "rho": rho,
                    "function": if g { "g" } else { "f" },
                    "hilbert_function": h.to_string(),
                    "regularity": h.regularity(),
                    "delta": d.to_string(),
                    "delta_admissible": d.is_admissible(),
                    "scheme_function": scheme,
                }),
            ))
        }
        Command::Exists { polynomial, rho } => {
            let p = poly(&polynomial)?;
            if p.is_linear_variety() {
                return Err(Error::LinearVariety);
            }
            match scheme_hf_minimum(&p, rho) {
                Some(u) => Ok(Emitted::ok(
                    format!("nonempty\nminimum {u}"),
                    json!({"polynomial": p.poly().to_string(), "rho": rho, "empty": false, "minimum": u.to_string()}),
                )),
                None => Ok(Emitted {
                    status: 1,
                    text: "empty".into(),
                    json: json!({
                        "polynomial": p.poly().to_string(),
                        "rho": rho,
                        "empty": true,
                        "code": Error::EmptyClass { rho }.code(),
                    }),
                }),
            }
        }
        Command::Minreg { polynomial, rho, hf, ambient, trace } => {
            let rep = match (hf, rho, ambient) {
                (Some(h), _, _) => min_reg_for_hf(&hf_input(polynomial.as_deref(), &h)?)?,
                (None, Some(r), _) => min_reg_for_rho(&poly(&required(polynomial)?)?, r)?,
                (None, None, Some(n)) => min_reg_in_ambient(&poly(&required(polynomial)?)?, n)?,
                (None, None, None) => min_reg(&poly(&required(polynomial)?)?)?,
            };
            let mut text = rep.answer.to_string();
            if trace {
                text.push('\n');
                text.push_str(format_trace(&rep.trace).trim_end());
            }
            Ok(Emitted::ok(text, serde_json::to_value(&rep).map_err(json_err)?))
        }
        Command::Witness { polynomial, rho, hf, output } => {
            let u = match (hf, rho) {
                (Some(h), _) => hf_input(polynomial.as_deref(), &h)?,
                (None, Some(r)) => {
                    let p = poly(&required(polynomial)?)?;
                    if p.is_linear_variety() {
                        return Err(Error::LinearVariety);
                    }
                    scheme_hf_minimum(&p, r).ok_or(Error::EmptyClass { rho: r })?
                }
                (None, None) => {
                    let p = poly(&required(polynomial)?)?;
                    if p.is_linear_variety() {
                        return Err(Error::LinearVariety);
                    }
                    f_bar(&p)
                }
            };
            let cert = witness_min_reg(&u)?.to_json();
            let doc = serde_json::to_value(&cert).map_err(json_err)?;
            let body = serde_json::to_string_pretty(&cert).map_err(json_err)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, body + "\n")
                        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    Ok(Emitted::ok(
                        format!("wrote {}: regularity {}", path.display(), cert.regularity),
                        json!({"path": path.display().to_string(), "regularity": cert.regularity}),
                    ))
                }
                None => Ok(Emitted::ok(body, doc)),
            }
        }
        Command::Verify { certificate } => {
            let body = std::fs::read_to_string(&certificate)
                .map_err(|e| Error::Io(format!("{}: {e}", certificate.display())))?;
            let cert: CertificateJson =
                serde_json::from_str(&body).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
            if cert.schema != SCHEMA {
                return Err(Error::Parse(format!("unsupported certificate schema {}", cert.schema)));
            }
            let report = verify_certificate(&cert);
            let mut text = String::new();
            for c in &report.checks {
                if c.passed {
                    text.push_str(&format!("ok   {}\n", c.name));
                } else {
                    text.push_str(&format!("FAIL {}: {}\n", c.name, c.detail));
                }
            }
            if report.passed {
                text.push_str(&format!("verified: regularity {}", cert.regularity));
            } else {
                text.push_str("verification failed");
            }
            Ok(Emitted {
                status: if report.passed { 0 } else { 1 },
                text,
                json: json!({
                    "passed": report.passed,
                    "regularity": cert.regularity,
                    "hilbert_function": cert.hilbert_function,
                    "checks": report.checks,
                }),
            })
        }
        Command::Table(a) => {
            let rep = min_reg(&poly(&a.polynomial)?)?;
            Ok(Emitted::ok(
                format_trace(&rep.trace).trim_end().to_string(),
                json!({"polynomial": rep.polynomial, "answer": rep.answer, "trace": rep.trace}),
            ))
        }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::InternalInconsistency(format!("serializing output: {e}"))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let as_json = cli.json;
    match dispatch(cli.command) {
        Ok(e) => {
            let stdout = if as_json {
                with_schema(e.json).to_string()
            } else {
                e.text
            };
            Outcome { status: e.status, stdout: stdout + "\n", stderr: String::new() }
        }
        Err(err) => {
            if as_json {
                let doc = json!({"schema": SCHEMA, "error": {"code": err.code(), "message": err.to_string()}});
                Outcome { status: err.exit_status(), stdout: doc.to_string() + "\n", stderr: String::new() }
            } else {
                Outcome {
                    status: err.exit_status(),
                    stdout: String::new(),
                    stderr: format!("error[{}]: {err}\n", err.code()),
                }
            }
        }
    }
}
