//! Command-line front end. Every subcommand is a thin wrapper around a
//! library call; [`run`] returns the exit code and the rendered output so
//! the binary and the tests share one code path.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::CoxeterReport;
use crate::error::{Error, Result};
use crate::exactalg::{format_rational, IntMatrix, JsonInt, RationalFunction};
use crate::ktheory::{build_lattice, fundamental_group_presentation, KLattice, Signature};
use crate::search::{classify_genus_zero, find_hypersurfaces, SearchBounds};
use crate::singularity::{
    extended_lattice, fractional_cy_check, gorenstein_parameter, hilbert_series, is_fuchsian_match,
    phi_t_consistency, poincare_series, GradedCI,
};

/// Version tag of the JSON documents.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "fuchsian", version, about = "Exact invariants of weighted projective curves and fuchsian singularities")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Orbifold Euler characteristic.
    Chi { signature: String },
    /// Cartan matrix of the Euler form.
    Cartan {
        signature: String,
        #[arg(long)]
        extended: bool,
    },
    /// Matrix of the Auslander-Reiten translation.
    Tau { signature: String },
    /// Coxeter matrix, polynomial, cyclotomic factors and period.
    Coxeter {
        signature: String,
        #[arg(long)]
        extended: bool,
        /// Also estimate the largest modulus of a real eigenvalue.
        #[arg(long)]
        spectral: bool,
    },
    /// Poincaré series of the fuchsian singularity.
    Poincare {
        signature: String,
        #[arg(long, default_value_t = 16)]
        series: usize,
    },
    /// Extended lattice: Cartan matrix, Coxeter matrix and polynomial.
    Extended {
        signature: String,
        /// Check that the Coxeter matrix has period dividing H.
        #[arg(long, value_name = "H")]
        cy: Option<u64>,
    },
    /// Gorenstein parameter of a complete intersection `d1,..|h1,..`.
    Gorenstein { ci: String },
    /// Hilbert series of a complete intersection.
    Hilbert {
        ci: String,
        #[arg(long, default_value_t = 16)]
        series: usize,
    },
    /// Whether a complete intersection has the numerical data of a signature.
    Match { ci: String, signature: String },
    /// Hypersurface candidates for one signature.
    Hypersurfaces {
        signature: String,
        #[arg(long, default_value_t = 25)]
        max_degree: u32,
    },
    /// Genus-zero signatures with a hypersurface candidate.
    #[command(name = "classify-genus0")]
    ClassifyGenus0 {
        #[arg(long, default_value_t = 25)]
        max_degree: u32,
        #[arg(long, default_value_t = 12)]
        max_weight: u32,
        #[arg(long, default_value_t = 6)]
        max_count: usize,
    },
    /// Presentation of the orbifold fundamental group.
    Pi1 { signature: String },
    /// Riemann-Roch on two coordinate vectors `c0,c1,...`.
    Rr {
        signature: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first). Exit codes: 0 on
/// success, 1 on a domain error, 2 on a parse error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let doc = json!({
                        "schema_version": SCHEMA_VERSION,
                        "command": out.command,
                        "input": out.input,
                        "result": out.result,
                    });
                    serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
                }
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: if e.is_parse() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

struct Output {
    command: &'static str,
    input: Value,
    result: Value,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn int_list(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|c| to_value(&JsonInt(c))).collect())
}

fn join_ints(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn series_value(f: &RationalFunction, var: &str, n: usize) -> Result<(Value, String)> {
    let coeffs = f.integer_series(n.saturating_sub(1))?;
    let coeffs = if n == 0 { Vec::new() } else { coeffs };
    let value = json!({
        "function": to_value(f),
        "text": f.display_in(var),
        "coefficients": int_list(&coeffs),
    });
    let text = format!("{}\ncoefficients: {}\n", f.display_in(var), join_ints(&coeffs));
    Ok((value, text))
}

fn matrix_block(title: &str, labels: &[String], m: &IntMatrix) -> String {
    format!("{title} (basis {}):\n{m}", labels.join(", "))
}

fn coxeter_text(rep: &CoxeterReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "coxeter matrix:\n{}", rep.matrix.to_string().trim_end());
    let _ = writeln!(s, "polynomial: {}", rep.polynomial);
    let _ = writeln!(s, "factors: {}", rep.factorization.factor_list());
    let _ = writeln!(s, "non-cyclotomic part: {}", rep.factorization.remainder);
    let _ = writeln!(s, "period: {}", rep.period.map_or("none".to_string(), |p| p.to_string()));
    s
}

fn parse_sig(s: &str) -> Result<Signature> {
    s.parse()
}

fn parse_ci(s: &str) -> Result<GradedCI> {
    s.parse()
}

fn parse_coords(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coordinate {c:?} in {s:?}"))))
        .collect()
}

fn lattice_for(sig: &Signature, extended: bool) -> KLattice {
    if extended {
        extended_lattice(sig)
    } else {
        build_lattice(sig)
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    Ok(match cmd {
        Command::Chi { signature } => {
            let sig = parse_sig(signature)?;
            let chi = format_rational(&sig.orbifold_euler_char());
            Output {
                command: "chi",
                input: json!({ "signature": sig.to_string() }),
                result: json!({ "chi": chi, "fuchsian": sig.is_fuchsian() }),
                text: format!("{chi}\n"),
            }
        }
        Command::Cartan { signature, extended } => {
            let sig = parse_sig(signature)?;
            let l = lattice_for(&sig, *extended);
            Output {
                command: "cartan",
                input: json!({ "signature": sig.to_string(), "extended": extended }),
                result: json!({ "labels": l.labels(), "matrix": to_value(l.cartan()) }),
                text: matrix_block("cartan matrix", l.labels(), l.cartan()),
            }
        }
        Command::Tau { signature } => {
            let sig = parse_sig(signature)?;
            let l = build_lattice(&sig);
            let t = l.tau_matrix()?;
            Output {
                command: "tau",
                input: json!({ "signature": sig.to_string() }),
                result: json!({ "labels": l.labels(), "matrix": to_value(&t) }),
                text: matrix_block("tau matrix", l.labels(), &t),
            }
        }
        Command::Coxeter { signature, extended, spectral } => {
            let sig = parse_sig(signature)?;
            let rep = CoxeterReport::new(&lattice_for(&sig, *extended), *spectral)?;
            let mut result = to_value(&rep);
            result["factors_text"] = json!(rep.factorization.factor_list());
            let radius = rep.spectral_radius_estimate.map(|r| format!("{r:.12}"));
            result["spectral_radius_estimate"] = json!(radius);
            let mut text = coxeter_text(&rep);
            if *spectral {
                let _ = writeln!(text, "real spectral radius: {}", radius.as_deref().unwrap_or("none"));
            }
            Output {
                command: "coxeter",
                input: json!({ "signature": sig.to_string(), "extended": extended, "spectral": spectral }),
                result,
                text,
            }
        }
        Command::Poincare { signature, series } => {
            let sig = parse_sig(signature)?;
            let p = poincare_series(&sig)?;
            let (result, text) = series_value(&p, "x", *series)?;
            Output {
                command: "poincare",
                input: json!({ "signature": sig.to_string(), "series": series }),
                result,
                text,
            }
        }
        Command::Extended { signature, cy } => {
            let sig = parse_sig(signature)?;
            let l = extended_lattice(&sig);
            let rep = CoxeterReport::new(&l, false)?;
            let mut text = matrix_block("extended cartan matrix", l.labels(), l.cartan());
            text += &coxeter_text(&rep);
            let mut result = json!({
                "labels": l.labels(),
                "cartan": to_value(l.cartan()),
                "coxeter": to_value(&rep),
            });
            if sig.is_fuchsian() {
                let c = phi_t_consistency(&sig)?;
                let yn = |b: bool| if b { "yes" } else { "no" };
                let _ = writeln!(text, "equals p_R*phi_X: {}", yn(c.product_agrees));
                let _ = writeln!(text, "equals bracket form: {}", yn(c.bracket_agrees));
                result["consistency"] = to_value(&c);
            }
            if let Some(h) = cy {
                let f = fractional_cy_check(&sig, *h)?;
                let _ = writeln!(
                    text,
                    "fractional CY with h = {h}: {}",
                    if f.holds { "holds" } else { "fails" }
                );
                result["fractional_cy"] = json!({ "h": h, "holds": f.holds, "period": f.period });
            }
            Output {
                command: "extended",
                input: json!({ "signature": sig.to_string(), "cy": cy }),
                result,
                text,
            }
        }
        Command::Gorenstein { ci } => {
            let ci = parse_ci(ci)?;
            let a = gorenstein_parameter(&ci);
            Output {
                command: "gorenstein",
                input: json!({ "ci": ci.to_string() }),
                result: json!({ "parameter": a }),
                text: format!("{a}\n"),
            }
        }
        Command::Hilbert { ci, series } => {
            let ci = parse_ci(ci)?;
            let (result, text) = series_value(&hilbert_series(&ci), "t", *series)?;
            Output {
                command: "hilbert",
                input: json!({ "ci": ci.to_string(), "series": series }),
                result,
                text,
            }
        }
        Command::Match { ci, signature } => {
            let ci = parse_ci(ci)?;
            let sig = parse_sig(signature)?;
            let m = is_fuchsian_match(&ci, &sig)?;
            Output {
                command: "match",
                input: json!({ "ci": ci.to_string(), "signature": sig.to_string() }),
                result: json!({ "match": m, "gorenstein_parameter": gorenstein_parameter(&ci) }),
                text: format!("{m}\n"),
            }
        }
        Command::Hypersurfaces { signature, max_degree } => {
            let sig = parse_sig(signature)?;
            let b = SearchBounds { max_generator_degree: *max_degree, ..SearchBounds::default() };
            let found = find_hypersurfaces(&sig, &b)?;
            let names: Vec<String> = found.iter().map(ToString::to_string).collect();
            let text = if names.is_empty() { "none\n".to_string() } else { names.join("\n") + "\n" };
            Output {
                command: "hypersurfaces",
                input: json!({ "signature": sig.to_string(), "max_degree": max_degree }),
                result: json!({ "candidates": to_value(&found) }),
                text,
            }
        }
        Command::ClassifyGenus0 { max_degree, max_weight, max_count } => {
            let b = SearchBounds {
                max_genus: 0,
                max_weight_count: *max_count,
                max_weight: *max_weight,
                max_generator_degree: *max_degree,
            };
            let r = classify_genus_zero(&b)?;
            Output {
                command: "classify-genus0",
                input: json!({ "max_degree": max_degree, "max_weight": max_weight, "max_count": max_count }),
                result: to_value(&r),
                text: r.to_table(),
            }
        }
        Command::Pi1 { signature } => {
            let sig = parse_sig(signature)?;
            let p = fundamental_group_presentation(&sig);
            let text = format!(
                "generators: {}\nrelations: {}\n",
                p.generator_names().join(", "),
                p.relator_strings().join(", ")
            );
            Output {
                command: "pi1",
                input: json!({ "signature": sig.to_string() }),
                result: to_value(&p),
                text,
            }
        }
        Command::Rr { signature, x, y } => {
            let sig = parse_sig(signature)?;
            let (xs, ys) = (parse_coords(x)?, parse_coords(y)?);
            let l = build_lattice(&sig);
            let (cx, cy) = (l.class(xs)?, l.class(ys)?);
            let euler = l.euler_form(&cx, &cy)?;
            let lhs = l.averaged_euler_form(&cx, &cy)?;
            let rhs = l.riemann_roch_rhs(&cx, &cy)?;
            let holds = lhs == rhs;
            let text = format!(
                "euler form: {euler}\naveraged form: {}\nriemann-roch value: {}\nagree: {holds}\n",
                format_rational(&lhs),
                format_rational(&rhs)
            );
            Output {
                command: "rr",
                input: json!({ "signature": sig.to_string(), "x": int_list(cx.coords()), "y": int_list(cy.coords()) }),
                result: json!({
                    "euler_form": to_value(&JsonInt(&euler)),
                    "averaged": format_rational(&lhs),
                    "riemann_roch": format_rational(&rhs),
                    "agree": holds,
                }),
                text,
            }
        }
    })
}
