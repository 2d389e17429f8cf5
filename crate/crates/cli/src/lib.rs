//! Command-line front end: every library operation behind one binary, with
//! deterministic JSON reports and reproducible seeds.
//!
//! All polynomials cross this boundary in the expression grammar (see the
//! parser module of the core crate); scalars are constant expressions in the
//! same grammar. Exit code 0 means the operation succeeded or the queried
//! property holds, 1 means the property definitively fails, 2 means the
//! input (or sampling) was unusable.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use linefol_core::arith::GaussianRational as Gq;
use linefol_core::eikonal::{
    build_solution, decompose_solution, eikonal_operator, flow_identity_check,
    is_eikonal_solution, riccati_family_solution, riccati_residual, sample_isotropic_frame,
    EikonalError, IsotropicFrame, LinearForm, RiccatiEquation, RiccatiFamily,
};
use linefol_core::field::PolyVectorField;
use linefol_core::foliation::{classify, FoliationError};
use linefol_core::parser::{format_expr, parse_expr};
use linefol_core::pde::{
    annihilator_check, burgers_residual, gauss_generic_rank, gordan_noether,
    hesse2d_linear_form, hesse2d_pencil, hesse3d_affine, hesse3d_ruled, hessian_det,
    monge_ampere_residual, PdeError,
};
use linefol_core::poly::{MultiPoly, RatFunc, UniRatFunc, VarSet};
use linefol_core::rng::DetRng;

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_OK: i32 = 0;
const EXIT_FAILS: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "linefol",
    version,
    about = "Exact toolkit for polynomial line foliations and rational eikonal solutions",
    disable_help_subcommand = true
)]
struct Cli {
    /// Comma-separated coordinate names (z1..zn plus optional t, s)
    #[arg(long, global = true, default_value = "z1,z2,z3")]
    vars: String,
    /// Seed for every randomized step; identical seeds give identical reports
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Height bound for sampled rational numbers
    #[arg(long, global = true, default_value_t = 100)]
    height: u64,
    /// Number of sampling trials for rank estimation
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,
    /// Emit the JSON report (default)
    #[arg(long, global = true)]
    json: bool,
    /// Emit a short human-readable summary instead of JSON
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an expression and print its canonical form
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide the line-foliation criterion for a polynomial vector field
    LineField {
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        components: Vec<String>,
    },
    /// Classify a 3-dimensional line foliation with exact certificates
    Classify {
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        components: Vec<String>,
    },
    /// Apply the eikonal operator E(f) = sum (df/dz_i)^2
    EikonalOp {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Test whether f solves E(f) = c^2 for a constant, and report c^2
    EikonalCheck {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Build the solution alpha.z + ell(beta.z) from a frame
    EikonalBuild {
        /// alpha coefficients, comma-separated scalars
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// beta coefficients, comma-separated scalars (all zero = degenerate)
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// the constant c (stored as c^2)
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// univariate profile in t
        #[arg(long, allow_hyphen_values = true)]
        ell: String,
    },
    /// Decompose a rational solution into (alpha, beta, ell)
    EikonalDecompose {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Check the flow identity f(z + t grad f) = f + csq t
    FlowCheck {
        #[arg(long, allow_hyphen_values = true)]
        csq: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Hessian determinant of f (exit 0 when it vanishes identically)
    Hessian {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Monge-Ampère residual f11 f22 - f12^2 - 1 in two variables
    MongeAmpere {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Generic rank of the Gauss map, by exact evaluation at sampled points
    GaussRank {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Does p annihilate the gradient: p(df/dz1, ..., df/dzn) = 0?
    Annihilator {
        /// polynomial in the gradient slots, written in the same variables
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Burgers residual da/dz1 + a da/dz2 in two variables
    Burgers {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// The degree-3 five-variable polynomial with vanishing Hessian determinant
    GordanNoether,
    /// Construct a Hessian-degenerate function from the explicit families
    HesseConstruct {
        /// ambient dimension: 2 or 3
        #[arg(long)]
        dim: u8,
        /// family index within the dimension: 1 or 2
        #[arg(long)]
        kind: u8,
        /// univariate profile in t (2d families)
        #[arg(long, allow_hyphen_values = true)]
        ell: Option<String>,
        /// direction or base point pair "a1,a2" (2d families)
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
        /// affine tail "c1,c2,c3" (2d families)
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,0")]
        consts: String,
        /// epsilon in {0,1} (3d kind 1)
        #[arg(long)]
        epsilon: Option<u8>,
        /// polynomial in z2, z3 (3d kind 1)
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// univariate coefficient polynomials in t (3d kind 2)
        #[arg(long, allow_hyphen_values = true)]
        a1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a3: Option<String>,
    },
    /// Is Y an infinitesimal symmetry of X? Six components: y1 y2 y3 x1 x2 x3
    Symmetry {
        #[arg(allow_hyphen_values = true, num_args = 1..)]
        components: Vec<String>,
    },
    /// Riccati equations: construct family solutions or evaluate a residual
    Riccati {
        /// normal form: irregular (t^2 y' + y), euler (t y' + lambda y),
        /// quadratic (t^2 y' - y^2)
        #[arg(long)]
        family: Option<String>,
        /// lambda (euler) or mu (quadratic)
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        /// coefficient a(t) of degree <= 2 (residual mode)
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        c0: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        c3: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        a3: String,
        /// candidate solution y(t) (residual mode)
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Sample a valid isotropic frame and verify its identities
    FrameSample,
}

/// Finished invocation: what to print and how to exit.
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Serialize)]
struct Report {
    version: &'static str,
    command: String,
    seed: u64,
    inputs: Map<String, Value>,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Value>,
}

struct Failure {
    message: String,
    code: i32,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { message: message.into(), code: EXIT_USAGE }
    }
}

impl From<PdeError> for Failure {
    fn from(e: PdeError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<EikonalError> for Failure {
    fn from(e: EikonalError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<FoliationError> for Failure {
    fn from(e: FoliationError) -> Self {
        Failure::usage(e.to_string())
    }
}

fn scalar_vars() -> VarSet {
    VarSet::new(Vec::<String>::new()).expect("empty variable set")
}

fn parse_scalar(text: &str) -> Result<Gq, Failure> {
    let f = parse_expr(text, &scalar_vars())
        .map_err(|e| Failure::usage(format!("scalar `{text}`: {e}")))?;
    f.as_constant()
        .ok_or_else(|| Failure::usage(format!("scalar `{text}` is not constant")))
}

fn parse_scalar_list(text: &str, want: usize) -> Result<Vec<Gq>, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != want {
        return Err(Failure::usage(format!(
            "expected {want} comma-separated scalars, found {}",
            parts.len()
        )));
    }
    parts.iter().map(|p| parse_scalar(p)).collect()
}

fn parse_in(text: &str, vars: &VarSet) -> Result<RatFunc, Failure> {
    parse_expr(text, vars).map_err(|e| Failure::usage(format!("`{text}`: {e}")))
}

fn parse_poly_in(text: &str, vars: &VarSet) -> Result<MultiPoly, Failure> {
    let f = parse_in(text, vars)?;
    if !f.is_polynomial() {
        return Err(Failure::usage(format!("`{text}` must be a polynomial")));
    }
    Ok(f.num().clone())
}

fn parse_uni(text: &str) -> Result<UniRatFunc, Failure> {
    parse_in(text, &VarSet::t())
}

fn parse_varset(spec: &str) -> Result<VarSet, Failure> {
    let names: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    VarSet::new(names).map_err(|e| Failure::usage(e.to_string()))
}

fn parse_field(components: &[String], vars: &VarSet) -> Result<PolyVectorField, Failure> {
    if components.len() != vars.arity() {
        return Err(Failure::usage(format!(
            "expected {} components for variables {:?}, found {}",
            vars.arity(),
            vars.names(),
            components.len()
        )));
    }
    let comps: Result<Vec<MultiPoly>, Failure> =
        components.iter().map(|c| parse_poly_in(c, vars)).collect();
    Ok(PolyVectorField::new(comps?))
}

fn form_strings(form: &LinearForm) -> Vec<String> {
    form.0.iter().map(|c| c.to_string()).collect()
}

fn inputs_of(pairs: &[(&str, String)]) -> Map<String, Value> {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert((*k).to_string(), Value::String(v.clone()));
    }
    m
}

/// Apply one parsed command. Returns the report pieces and the exit code.
fn execute(cli: &Cli) -> Result<(String, Map<String, Value>, Value, Option<Value>, i32), Failure> {
    let vars = parse_varset(&cli.vars)?;
    match &cli.command {
        Command::Parse { expr } => {
            let f = parse_in(expr, &vars)?;
            let result = json!({
                "canonical": format_expr(&f),
                "is_polynomial": f.is_polynomial(),
            });
            Ok(("parse".into(), inputs_of(&[("expr", expr.clone())]), result, None, EXIT_OK))
        }
        Command::LineField { components } => {
            let raw = parse_field(components, &vars)?;
            if raw.is_zero() {
                return Err(Failure::usage("the zero field defines no foliation"));
            }
            let (x, cofactor) = raw.primitive_reduce().map_err(|e| Failure::usage(e.to_string()))?;
            let cert = x
                .line_field_certificate()
                .map_err(|e| Failure::usage(e.to_string()))?;
            let inputs = inputs_of(&[("components", components.join(", "))]);
            let reduced: Vec<String> = x.components().iter().map(|c| c.to_string()).collect();
            if cert.holds {
                let mu = cert.mu.expect("holding certificate").to_string();
                let result = json!({
                    "holds": true,
                    "reduced_components": reduced,
                    "extracted_cofactor": cofactor.to_string(),
                });
                let certificate = json!({ "mu": mu });
                Ok(("line-field".into(), inputs, result, Some(certificate), EXIT_OK))
            } else {
                let (i, j, residual) = cert.failing_pair.expect("failing certificate");
                let result = json!({
                    "holds": false,
                    "reduced_components": reduced,
                    "extracted_cofactor": cofactor.to_string(),
                });
                let certificate = json!({
                    "failing_pair": [vars.name(i), vars.name(j)],
                    "residual": residual.to_string(),
                });
                Ok(("line-field".into(), inputs, result, Some(certificate), EXIT_FAILS))
            }
        }
        Command::Classify { components } => {
            let raw = parse_field(components, &vars)?;
            let inputs = inputs_of(&[("components", components.join(", "))]);
            match classify(&raw, cli.seed) {
                Ok(report) => {
                    let wire = report.to_wire();
                    let verified = report.verify(&raw);
                    let result = json!({
                        "class": wire.class,
                        "center": wire.center,
                        "axis": wire.axis,
                        "sample_lines": wire.sample_lines,
                        "certificate_reverifies": verified,
                    });
                    let certificate = serde_json::to_value(&wire.certificate).expect("serializable");
                    Ok(("classify".into(), inputs, result, Some(certificate), EXIT_OK))
                }
                Err(FoliationError::NotALineField) => {
                    let result = json!({ "class": null, "reason": "not a line foliation" });
                    Ok(("classify".into(), inputs, result, None, EXIT_FAILS))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::EikonalOp { f } => {
            let func = parse_in(f, &vars)?;
            let e = eikonal_operator(&func);
            let result = json!({
                "operator": format_expr(&e),
                "is_constant": e.is_constant(),
            });
            Ok(("eikonal-op".into(), inputs_of(&[("f", f.clone())]), result, None, EXIT_OK))
        }
        Command::EikonalCheck { f } => {
            let func = parse_in(f, &vars)?;
            let inputs = inputs_of(&[("f", f.clone())]);
            match is_eikonal_solution(&func) {
                Some(csq) => {
                    let result = json!({ "is_solution": true, "csq": csq.to_string() });
                    Ok(("eikonal-check".into(), inputs, result, None, EXIT_OK))
                }
                None => {
                    let result = json!({ "is_solution": false });
                    Ok(("eikonal-check".into(), inputs, result, None, EXIT_FAILS))
                }
            }
        }
        Command::EikonalBuild { alpha, beta, c, ell } => {
            let a = parse_scalar_list(alpha, 3)?;
            let b = parse_scalar_list(beta, 3)?;
            let c_val = parse_scalar(c)?;
            let profile = parse_uni(ell)?;
            let alpha_form = LinearForm([a[0].clone(), a[1].clone(), a[2].clone()]);
            let beta_form = LinearForm([b[0].clone(), b[1].clone(), b[2].clone()]);
            let frame = if beta_form.is_zero() {
                let fr = IsotropicFrame::affine_degenerate(alpha_form);
                if fr.csq() != &(&c_val * &c_val) {
                    return Err(Failure::usage("c^2 does not match <alpha|alpha>"));
                }
                fr
            } else {
                IsotropicFrame::new(alpha_form, beta_form, c_val)?
            };
            let f = build_solution(&frame, &profile)?;
            let csq = is_eikonal_solution(&f).expect("built solutions solve the equation");
            let result = json!({
                "function": format_expr(&f),
                "csq": csq.to_string(),
            });
            let inputs = inputs_of(&[
                ("alpha", alpha.clone()),
                ("beta", beta.clone()),
                ("c", c.clone()),
                ("ell", ell.clone()),
            ]);
            Ok(("eikonal-build".into(), inputs, result, None, EXIT_OK))
        }
        Command::EikonalDecompose { f } => {
            let func = parse_in(f, &vars)?;
            let inputs = inputs_of(&[("f", f.clone())]);
            match decompose_solution(&func) {
                Ok(sol) => {
                    let rebuilt = sol.function() == func;
                    let result = json!({
                        "alpha": form_strings(sol.frame.alpha()),
                        "beta": form_strings(sol.frame.beta()),
                        "csq": sol.frame.csq().to_string(),
                        "ell": format_expr(&sol.ell),
                        "degenerate": sol.frame.is_degenerate(),
                        "rebuilt_matches": rebuilt,
                    });
                    Ok(("eikonal-decompose".into(), inputs, result, None, EXIT_OK))
                }
                Err(EikonalError::NotASolution) => {
                    let result = json!({ "is_solution": false });
                    Ok(("eikonal-decompose".into(), inputs, result, None, EXIT_FAILS))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::FlowCheck { csq, f } => {
            let func = parse_in(f, &vars)?;
            let c = parse_scalar(csq)?;
            let holds = flow_identity_check(&func, &c);
            let result = json!({ "holds": holds });
            let inputs = inputs_of(&[("f", f.clone()), ("csq", csq.clone())]);
            let code = if holds { EXIT_OK } else { EXIT_FAILS };
            Ok(("flow-check".into(), inputs, result, None, code))
        }
        Command::Hessian { f } => {
            let func = parse_in(f, &vars)?;
            let det = hessian_det(&func);
            let vanishes = det.is_zero();
            let result = json!({
                "determinant": format_expr(&det),
                "vanishes": vanishes,
            });
            let code = if vanishes { EXIT_OK } else { EXIT_FAILS };
            Ok(("hessian".into(), inputs_of(&[("f", f.clone())]), result, None, code))
        }
        Command::MongeAmpere { f } => {
            let func = parse_in(f, &vars)?;
            let residual = monge_ampere_residual(&func)?;
            let vanishes = residual.is_zero();
            let result = json!({
                "residual": format_expr(&residual),
                "vanishes": vanishes,
            });
            let code = if vanishes { EXIT_OK } else { EXIT_FAILS };
            Ok(("monge-ampere".into(), inputs_of(&[("f", f.clone())]), result, None, code))
        }
        Command::GaussRank { f } => {
            let func = parse_in(f, &vars)?;
            let mut rng = DetRng::new(cli.seed).derive(0x6a55);
            let rank = gauss_generic_rank(&func, &mut rng, cli.trials.max(1), cli.height.max(1))?;
            let result = json!({
                "rank": rank,
                "trials": cli.trials.max(1),
                "height": cli.height.max(1),
            });
            Ok(("gauss-rank".into(), inputs_of(&[("f", f.clone())]), result, None, EXIT_OK))
        }
        Command::Annihilator { p, f } => {
            let func = parse_in(f, &vars)?;
            let poly = parse_poly_in(p, &vars)?;
            let holds = annihilator_check(&poly, &func)?;
            let result = json!({ "annihilates": holds });
            let inputs = inputs_of(&[("p", p.clone()), ("f", f.clone())]);
            let code = if holds { EXIT_OK } else { EXIT_FAILS };
            Ok(("annihilator".into(), inputs, result, None, code))
        }
        Command::Burgers { a } => {
            let func = parse_in(a, &vars)?;
            let residual = burgers_residual(&func)?;
            let vanishes = residual.is_zero();
            let result = json!({
                "residual": format_expr(&residual),
                "vanishes": vanishes,
            });
            let code = if vanishes { EXIT_OK } else { EXIT_FAILS };
            Ok(("burgers".into(), inputs_of(&[("a", a.clone())]), result, None, code))
        }
        Command::GordanNoether => {
            let phi = gordan_noether();
            let f = RatFunc::from_poly(phi.clone());
            let quadric = parse_poly_in("z3*z5 - z4^2", &VarSet::z(5))?;
            let result = json!({
                "polynomial": phi.to_string(),
                "hessian_det_vanishes": hessian_det(&f).is_zero(),
                "annihilator": "z3*z5 - z4^2",
                "annihilates": annihilator_check(&quadric, &f)?,
            });
            Ok(("gordan-noether".into(), Map::new(), result, None, EXIT_OK))
        }
        Command::HesseConstruct {
            dim,
            kind,
            ell,
            pair,
            consts,
            epsilon,
            phi,
            a1,
            a2,
            a3,
        } => {
            let need = |o: &Option<String>, what: &str| -> Result<String, Failure> {
                o.clone().ok_or_else(|| Failure::usage(format!("--{what} is required here")))
            };
            let f: RatFunc = match (dim, kind) {
                (2, k @ (1 | 2)) => {
                    let profile = parse_uni(&need(ell, "ell")?)?;
                    let pr = parse_scalar_list(&need(pair, "pair")?, 2)?;
                    let cs = parse_scalar_list(consts, 3)?;
                    let pair_t = (pr[0].clone(), pr[1].clone());
                    let consts_t = (cs[0].clone(), cs[1].clone(), cs[2].clone());
                    if *k == 1 {
                        hesse2d_linear_form(&profile, pair_t, consts_t)?
                    } else {
                        hesse2d_pencil(&profile, pair_t, consts_t)?
                    }
                }
                (3, 1) => {
                    let eps = epsilon.ok_or_else(|| Failure::usage("--epsilon is required here"))?;
                    if eps > 1 {
                        return Err(Failure::usage("--epsilon must be 0 or 1"));
                    }
                    let vphi = VarSet::new(vec!["z2", "z3"]).expect("valid names");
                    let body = parse_poly_in(&need(phi, "phi")?, &vphi)?;
                    RatFunc::from_poly(hesse3d_affine(eps == 1, &body))
                }
                (3, 2) => {
                    let vt = VarSet::t();
                    let p1 = parse_poly_in(&need(a1, "a1")?, &vt)?;
                    let p2 = parse_poly_in(&need(a2, "a2")?, &vt)?;
                    let p3 = parse_poly_in(&need(a3, "a3")?, &vt)?;
                    RatFunc::from_poly(hesse3d_ruled(&p1, &p2, &p3))
                }
                _ => return Err(Failure::usage("--dim must be 2 or 3 and --kind 1 or 2")),
            };
            let result = json!({
                "function": format_expr(&f),
                "hessian_det_vanishes": hessian_det(&f).is_zero(),
            });
            let inputs = inputs_of(&[("dim", dim.to_string()), ("kind", kind.to_string())]);
            Ok(("hesse-construct".into(), inputs, result, None, EXIT_OK))
        }
        Command::Symmetry { components } => {
            if components.len() != 6 {
                return Err(Failure::usage(
                    "symmetry expects six components: y1 y2 y3 x1 x2 x3",
                ));
            }
            let y = parse_field(&components[..3].to_vec(), &vars)?;
            let x = parse_field(&components[3..].to_vec(), &vars)?;
            let holds = y
                .is_infinitesimal_symmetry(&x)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let result = json!({ "is_symmetry": holds });
            let inputs = inputs_of(&[
                ("y", components[..3].join(", ")),
                ("x", components[3..].join(", ")),
            ]);
            let code = if holds { EXIT_OK } else { EXIT_FAILS };
            Ok(("symmetry".into(), inputs, result, None, code))
        }
        Command::Riccati { family, param, a, c0, c3, a3, y } => {
            if let Some(name) = family {
                let fam = match name.as_str() {
                    "irregular" => RiccatiFamily::Irregular,
                    "euler" => RiccatiFamily::Euler,
                    "quadratic" => RiccatiFamily::Quadratic,
                    other => {
                        return Err(Failure::usage(format!(
                            "unknown family `{other}` (irregular | euler | quadratic)"
                        )))
                    }
                };
                let param_val = match param {
                    Some(p) => Some(parse_scalar(p)?),
                    None => None,
                };
                if matches!(fam, RiccatiFamily::Euler | RiccatiFamily::Quadratic)
                    && param_val.is_none()
                {
                    return Err(Failure::usage("--param is required for this family"));
                }
                let eq = fam.equation(param_val.as_ref());
                let solution = riccati_family_solution(fam, param_val.as_ref());
                let residual_zero = solution
                    .as_ref()
                    .map(|s| riccati_residual(&eq, s).is_zero());
                let result = json!({
                    "family": name,
                    "coefficient": eq.coefficient().to_string(),
                    "solution": solution.as_ref().map(format_expr),
                    "residual_zero": residual_zero,
                });
                let inputs = inputs_of(&[
                    ("family", name.clone()),
                    ("param", param.clone().unwrap_or_default()),
                ]);
                let code = if solution.is_some() { EXIT_OK } else { EXIT_FAILS };
                Ok(("riccati".into(), inputs, result, None, code))
            } else {
                let a_text = a
                    .clone()
                    .ok_or_else(|| Failure::usage("--a or --family is required"))?;
                let y_text = y
                    .clone()
                    .ok_or_else(|| Failure::usage("--y is required in residual mode"))?;
                let coeff = parse_poly_in(&a_text, &VarSet::t())?;
                if coeff.total_degree() > 2 {
                    return Err(Failure::usage("--a must have degree at most 2"));
                }
                let eq = RiccatiEquation::new(
                    coeff,
                    parse_scalar(c0)?,
                    parse_scalar(c3)?,
                    parse_scalar(a3)?,
                );
                let cand = parse_uni(&y_text)?;
                let residual = riccati_residual(&eq, &cand);
                let vanishes = residual.is_zero();
                let result = json!({
                    "residual": format_expr(&residual),
                    "vanishes": vanishes,
                });
                let inputs = inputs_of(&[
                    ("a", a_text),
                    ("c0", c0.clone()),
                    ("c3", c3.clone()),
                    ("a3", a3.clone()),
                    ("y", y_text),
                ]);
                let code = if vanishes { EXIT_OK } else { EXIT_FAILS };
                Ok(("riccati".into(), inputs, result, None, code))
            }
        }
        Command::FrameSample => {
            let mut rng = DetRng::new(cli.seed).derive(0xF4A3);
            let frame = sample_isotropic_frame(&mut rng, cli.height.max(1));
            let result = json!({
                "alpha": form_strings(frame.alpha()),
                "beta": form_strings(frame.beta()),
                "csq": frame.csq().to_string(),
                "identities": {
                    "beta_isotropic": frame.beta().norm_sq().is_zero(),
                    "alpha_beta_orthogonal": frame.alpha().dot(frame.beta()).is_zero(),
                    "alpha_norm_is_csq": &frame.alpha().norm_sq() == frame.csq(),
                },
            });
            Ok(("frame-sample".into(), Map::new(), result, None, EXIT_OK))
        }
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", report.command));
    out.push_str(&format!("seed: {}\n", report.seed));
    fn flatten(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, vv) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    flatten(&p, vv, out);
                }
            }
            Value::Array(items) => {
                let rendered: Vec<String> = items
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                out.push_str(&format!("{prefix}: [{}]\n", rendered.join(", ")));
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    flatten("result", &report.result, &mut out);
    if let Some(cert) = &report.certificate {
        flatten("certificate", cert, &mut out);
    }
    out
}

/// Run one invocation. `argv` excludes the program name.
pub fn run(argv: &[String]) -> RunOutput {
    let mut full = vec!["linefol".to_string()];
    full.extend_from_slice(argv);
    let cli = match Cli::try_parse_from(&full) {
        Ok(c) => c,
        Err(e) => {
            // help/version requests print on stdout with success
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                return RunOutput { stdout: rendered, stderr: String::new(), code };
            }
            return RunOutput { stdout: String::new(), stderr: rendered, code };
        }
    };
    match execute(&cli) {
        Ok((command, inputs, result, certificate, code)) => {
            let report = Report {
                version: REPORT_VERSION,
                command,
                seed: cli.seed,
                inputs,
                result,
                certificate,
            };
            let stdout = if cli.text {
                render_text(&report)
            } else {
                let mut s = serde_json::to_string_pretty(&report).expect("serializable report");
                s.push('\n');
                s
            };
            RunOutput { stdout, stderr: String::new(), code }
        }
        Err(failure) => RunOutput {
            stdout: String::new(),
            stderr: format!("error: {}\n", failure.message),
            code: failure.code,
        },
    }
}
