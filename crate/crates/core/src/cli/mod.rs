//! Command runner behind the `abconn` binary.
//!
//! [`run`] turns a [`Command`] and a [`Workspace`] into a [`Report`]. Input
//! problems surface as [`CliError`] (exit status 2); failed checks make the
//! report's exit status 1.

pub mod document;
pub mod random;
pub mod report;
pub mod suites;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;
use thiserror::Error;

pub use document::{DocumentError, SuiteParams, Workspace};
pub use random::{random_bundle, random_bundle_of_type, GeneratorError};
pub use report::{format_complex, Format, Report};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteOutcome};

use crate::connections_ring::{function_ring_table, rho_projection};
use crate::ext_calculus::prop1_check;
use crate::line_bundles::{
    brute_force_fixed_count, partial_connection_obstruction, phi_agreement, radical, radicals_agree, real_radical,
    stabilizer, validate,
};
use crate::monodromy::{character_to_connection, forgetful, monodromy, psi_cover, DualTorusPoint, DEFAULT_TOLERANCE};
use crate::torus::{dual_basis, dual_lattice, PeriodLattice};

/// Environment variable overriding the tolerance of the monodromy suite.
pub const TOLERANCE_ENV: &str = "ABCONN_TOLERANCE";

/// Brute-force stabilizer counts are skipped above this many torsion points.
const STABILIZER_ENUMERATION_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Dual,
    Phi,
    Radical,
    Stabilizer,
    Ringdim { max_degree: usize },
    Prop1,
    Monodromy,
    RhInverse,
    Verify { suite: Suite, cases: Option<usize>, seed: Option<u64> },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Tolerance for the monodromy suite: [`TOLERANCE_ENV`] if set, otherwise
/// [`DEFAULT_TOLERANCE`].
pub fn suite_tolerance() -> Result<f64, CliError> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(CliError::Input(format!("{TOLERANCE_ENV} must be a positive number, got `{s}`"))),
        },
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

pub fn run(command: &Command, ws: &Workspace) -> Result<Report, CliError> {
    match command {
        Command::Validate => Ok(validate_report(ws)),
        Command::Dual => dual_report(ws),
        Command::Phi => phi_report(ws),
        Command::Radical => radical_report(ws),
        Command::Stabilizer => stabilizer_report(ws),
        Command::Ringdim { max_degree } => ringdim_report(ws, *max_degree),
        Command::Prop1 => prop1_report(ws),
        Command::Monodromy => monodromy_report(ws),
        Command::RhInverse => rh_inverse_report(ws),
        Command::Verify { suite, cases, seed } => {
            let config = SuiteConfig {
                cases: cases.unwrap_or(ws.suite.cases),
                seed: seed.unwrap_or(ws.suite.seed),
                max_degree: ws.suite.max_degree,
                tolerance: suite_tolerance()?,
            };
            Ok(verify_report(*suite, &config))
        }
    }
}

fn validate_report(ws: &Workspace) -> Report {
    let mut r = Report::new("validate");
    let lattice = match ws.lattice() {
        Ok(l) => l,
        Err(e) => {
            r.check("lattice", false, e.to_string());
            return r;
        }
    };
    r.check("lattice", true, format!("g = {}, rank {}", lattice.dim(), lattice.rank()));
    r.set("g", lattice.dim());
    if ws.h.is_some() || ws.chi.is_some() {
        match ws.bundle() {
            Ok(b) => {
                validate(b.lattice(), b.hermitian().matrix(), b.chi()).expect("constructed bundles validate");
                r.check("bundle", true, "H Hermitian, E integral on generators, χ of length 2g");
                r.set("bundle", &b);
            }
            Err(e) => r.check("bundle", false, e.to_string()),
        }
    }
    if let Some(c) = &ws.connection {
        let ok = c.dim() == lattice.dim();
        r.check("connection", ok, format!("x and ω have {} coefficients", c.dim()));
    }
    if ws.character.is_some() {
        match ws.character() {
            Ok(t) => r.check("character", t.values().len() == lattice.rank(), format!("{} values", t.values().len())),
            Err(e) => r.check("character", false, e.to_string()),
        }
    }
    r
}

fn dual_report(ws: &Workspace) -> Result<Report, CliError> {
    let lattice = ws.lattice()?;
    let basis = dual_basis(&lattice);
    let dual = dual_lattice(&lattice);
    let mut r = Report::new("dual");
    let delta = lattice
        .generators()
        .iter()
        .enumerate()
        .all(|(j, lambda)| basis.iter().enumerate().all(|(k, l)| l.pairing(lambda) == if j == k { BigRational::one() } else { BigRational::zero() }));
    r.check("pairing", delta, "Im ℓ_k(λ_j) = δ_kj");
    // the dual of the dual is −Λ, which is Λ as a set
    r.check("biduality", dual_lattice(&dual).same_lattice(&lattice), "dual of the dual lattice is Λ");
    r.line("dual lattice generators (antilinear coefficients):");
    for (k, l) in basis.iter().enumerate() {
        let entries: Vec<String> = l.coeffs.iter().map(ToString::to_string).collect();
        r.line(format!("  ℓ_{k} = [{}]", entries.join(", ")));
    }
    r.set("dual_lattice", dual.generators());
    Ok(r)
}

fn phi_report(ws: &Workspace) -> Result<Report, CliError> {
    let b = ws.bundle()?;
    let a = phi_agreement(&b, &suites::PHI_ORDERS).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("phi");
    r.check("agreement", a.agree, if a.agree { "agree" } else { "disagree" });
    r.matrix("hermitian", &a.hermitian);
    r.matrix("chern contraction", &a.chern);
    for (n, m) in &a.translations {
        r.matrix(&format!("translations, n = {n}"), m);
    }
    r.line(format!("verdict: {}", if a.agree { "agree" } else { "disagree" }));
    r.set("hermitian", &a.hermitian);
    r.set("chern", &a.chern);
    r.set("translations", a.translations.iter().map(|(n, m)| json!({"n": n, "matrix": m})).collect::<Vec<_>>());
    r.set("verdict", if a.agree { "agree" } else { "disagree" });
    Ok(r)
}

fn radical_report(ws: &Workspace) -> Result<Report, CliError> {
    let b = ws.bundle()?;
    let h = b.hermitian();
    let complex = radical(h);
    let real = real_radical(h);
    let mut r = Report::new("radical");
    r.check("radicals agree", radicals_agree(h), format!("dim_ℂ = {}, dim_ℝ = {}", complex.dim(), real.real_dim()));
    let obstruction = partial_connection_obstruction(&b);
    r.check("partial connection", obstruction.is_zero(), "φ restricted to the radical vanishes");
    r.line(format!("radical dimension: {}", complex.dim()));
    for v in complex.basis() {
        let entries: Vec<String> = v.iter().map(ToString::to_string).collect();
        r.line(format!("  [{}]", entries.join(", ")));
    }
    let rho = rho_projection(&b);
    r.matrix("projection onto radical coordinates", &rho.projector);
    r.set("radical", complex.basis());
    r.set("real_radical", real.basis());
    r.set("projector", &rho.projector);
    Ok(r)
}

fn stabilizer_report(ws: &Workspace) -> Result<Report, CliError> {
    let b = ws.bundle()?;
    let s = stabilizer(&b);
    let mut r = Report::new("stabilizer");
    r.check("identity component", s.direction.same_span(&radical(b.hermitian())), "Lie algebra equals the radical");
    let max = s.elementary_divisors.iter().max().cloned().unwrap_or_else(|| BigInt::from(1));
    let n = u32::try_from(&max * 2u32).ok();
    let points = n.and_then(|n| u64::from(n).checked_pow(b.lattice().rank() as u32));
    match (n, points) {
        (Some(n), Some(p)) if p <= STABILIZER_ENUMERATION_LIMIT => {
            let counted = BigInt::from(brute_force_fixed_count(&b, n));
            let predicted = s.predicted_fixed_count(n);
            r.check("torsion count", counted == predicted, format!("{counted} fixed points of order dividing {n}, predicted {predicted}"));
        }
        _ => r.line("torsion count skipped: enumeration too large"),
    }
    let divisors: Vec<String> = s.elementary_divisors.iter().map(ToString::to_string).collect();
    r.line(format!("elementary divisors: [{}]", divisors.join(", ")));
    r.line(format!("component group order: {}", s.component_order));
    r.line(format!("identity component: real dimension {}", s.identity_real_dim));
    r.set("stabilizer", &s);
    Ok(r)
}

fn ringdim_report(ws: &Workspace, max_degree: usize) -> Result<Report, CliError> {
    let b = ws.bundle()?;
    let mut r = Report::new("ringdim");
    match function_ring_table(&b, max_degree) {
        Ok(table) => {
            r.check("certificates", true, format!("degrees 0..={max_degree}"));
            r.line(format!("{:>6}  {:>16}  {:>5}  {:>5}", "degree", "dim ker β_d", "upper", "lower"));
            for c in &table {
                let kernel = c.kernel_dims.last().map_or_else(|| "-".to_string(), ToString::to_string);
                r.line(format!(
                    "{:>6}  {:>16}  {:>5}  {:>5}  d={}: {} (certified)",
                    c.degree, kernel, c.upper_bound, c.lower_bound, c.degree, c.dimension
                ));
            }
            r.set("table", &table);
        }
        Err(e) => r.check("certificates", false, e.to_string()),
    }
    Ok(r)
}

fn prop1_report(ws: &Workspace) -> Result<Report, CliError> {
    let b = ws.bundle()?;
    let p = prop1_check(&b).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("prop1");
    r.check("pushout", p.holds, "δ̃₀ = −c̃₀ = −c₁(L)");
    r.matrix("φ*_L", &p.phi_star);
    r.matrix("δ̃₀", &p.delta_tilde.matrix);
    r.matrix("c̃₀", &p.c_tilde.matrix);
    r.matrix("c₁(L)", &p.atiyah.matrix);
    r.set("report", &p);
    Ok(r)
}

fn monodromy_report(ws: &Workspace) -> Result<Report, CliError> {
    let lattice = ws.lattice()?;
    let a = ws.connection()?;
    let t = monodromy(&lattice, a, DEFAULT_TOLERANCE).map_err(|e| CliError::Input(e.to_string()))?;
    let back = character_to_connection(&lattice, &t).map_err(|e| CliError::Input(e.to_string()))?;
    let mut r = Report::new("monodromy");
    let omega_err = back.omega.iter().zip(&a.omega).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
    r.check("inverse", omega_err < DEFAULT_TOLERANCE, format!("ω recovered to {omega_err:.1e}"));
    let values = report::format_complex_vec(t.values());
    for (j, v) in values.iter().enumerate() {
        r.line(format!("t(λ_{j}) = {v}"));
    }
    r.line(format!("forgetful value: {}", format_complex(forgetful(a))));
    r.set("character", &values);
    Ok(r)
}

fn rh_inverse_report(ws: &Workspace) -> Result<Report, CliError> {
    let lattice: PeriodLattice = ws.lattice()?;
    let t = ws.character()?;
    if t.values().len() != lattice.rank() {
        return Err(CliError::Input(format!("character needs {} values, got {}", lattice.rank(), t.values().len())));
    }
    let a = character_to_connection(&lattice, &t).map_err(|e| CliError::Input(e.to_string()))?;
    let again = monodromy(&lattice, &a, DEFAULT_TOLERANCE).map_err(|e| CliError::Input(e.to_string()))?;
    let err = again.max_distance(&t);
    let mut r = Report::new("rh-inverse");
    r.check("round trip", err < DEFAULT_TOLERANCE, format!("max error {err:.1e}"));
    let x = report::format_complex_vec(&a.x);
    let omega = report::format_complex_vec(&a.omega);
    r.line(format!("x = [{}]", x.join(", ")));
    r.line(format!("omega = [{}]", omega.join(", ")));
    let unitary = DualTorusPoint::of_functional(&lattice, &a.x);
    let psi = psi_cover(&lattice, &a.omega).map_err(|e| CliError::Input(e.to_string()))?;
    r.line(format!("x pairings mod 1: {:?}", unitary.pairings));
    r.line(format!("ψ(ω) pairings mod 1: {:?}", psi.pairings));
    r.set("x", &x);
    r.set("omega", &omega);
    Ok(r)
}

fn verify_report(suite: Suite, config: &SuiteConfig) -> Report {
    let outcomes = run_suite(suite, config);
    let mut r = Report::new("verify");
    for o in &outcomes {
        r.check(&o.suite, o.all_pass(), format!("{}/{}", o.passed, o.cases));
        r.line(o.summary());
        for f in &o.failures {
            r.line(format!("  {f}"));
        }
    }
    r.set("seed", config.seed);
    r.set("suites", &outcomes);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(extra: &str) -> Workspace {
        Workspace::parse(&format!(r#"{{"version": 1, "lattice": [["1", "0"], ["0", "1"], ["i", "0"], ["0", "i"]]{extra}}}"#)).unwrap()
    }

    #[test]
    fn ringdim_table_ends_with_certified_degree() {
        let r = run(&Command::Ringdim { max_degree: 3 }, &doc(r#", "H": [["1", "0"], ["0", "0"]]"#)).unwrap();
        assert_eq!(r.exit_code(), 0);
        assert!(r.render(Format::Text).trim_end().ends_with("d=3: 4 (certified)"));
    }

    #[test]
    fn phi_on_zero_form_agrees() {
        let r = run(&Command::Phi, &doc("")).unwrap();
        assert!(r.passed());
        assert!(r.render(Format::Text).contains("verdict: agree"));
    }

    #[test]
    fn verify_default_workspace() {
        let r = run(&Command::Verify { suite: Suite::Lemma2, cases: Some(20), seed: Some(7) }, &Workspace::default_workspace()).unwrap();
        assert!(r.render(Format::Text).contains("lemma2: 20/20 pass"));
        assert_eq!(r.render(Format::Json), run(&Command::Verify { suite: Suite::Lemma2, cases: Some(20), seed: Some(7) }, &Workspace::default_workspace()).unwrap().render(Format::Json));
    }

    #[test]
    fn invalid_bundle_fails_validation_but_errors_elsewhere() {
        let ws = doc(r#", "H": [["1", "1/2*i"], ["-1/2*i", "0"]]"#);
        assert_eq!(run(&Command::Validate, &ws).unwrap().exit_code(), 1);
        assert_eq!(run(&Command::Phi, &ws).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn missing_connection_is_an_input_error() {
        assert!(matches!(run(&Command::Monodromy, &doc("")), Err(CliError::Document(DocumentError::Missing("connection")))));
    }
}
