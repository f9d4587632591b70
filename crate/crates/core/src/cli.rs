//! Command-line front end: `opframe <subcommand> --scenario FILE`.
//!
//! Every subcommand writes one report to stdout, as pretty JSON or as
//! `path,value` CSV rows. Reports are deterministic for a fixed scenario,
//! seed and flag set; wall-clock timings are only added with `--timings`.
//!
//! Exit codes: `0` success, `1` error, `2` negative verdict (not a frame,
//! inadmissible perturbation, failed verification), `64` usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::AlgebraElement;
use crate::duals::{self, DualPairReport};
use crate::error::Error;
use crate::frames::{BelowBoundedness, FrameBounds, FrameReport, Independence, OperatorFamily};
use crate::hilbert_module::ModuleVector;
use crate::perturbation::{self, AdditiveAssessment, AdditivePerturbation, Confinement, RelativePerturbation};
use crate::reconstruction::{self, Method, Relaxation, DEFAULT_MAX_ITERATIONS};
use crate::scenario::{ComplexPair, FamilySpec, Scenario, ScenarioError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Random vectors drawn for the sampled norm-bound estimate in `analyze`.
const NORM_ESTIMATE_SAMPLES: usize = 256;
const DEFAULT_VERIFY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "opframe", version, about = "Continuous operator frames on Hilbert C*-modules over matrix algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Tolerance for the subcommand's main test; defaults to the scenario's value.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Override the number of quadrature nodes.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Seed for sampled checks; defaults to the scenario's seed, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scenario file (JSON, schema version 1).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Neumann,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frame operator, optimal bounds and classification.
    Analyze,
    /// Recover the scenario signal from its frame data.
    Reconstruct {
        #[arg(long, value_enum, default_value_t = MethodArg::Neumann)]
        method: MethodArg,
        /// `inverse-upper` (1/B), `balanced` (2/(A+B)) or a number.
        #[arg(long, default_value = "inverse-upper", value_parser = parse_relaxation)]
        relaxation: Relaxation,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
        max_iter: usize,
    },
    /// Canonical dual family and its verification.
    Dual,
    /// Assess the scenario's additive and relative perturbations.
    Perturb,
    /// Below-boundedness and independence of the analysis operator.
    Independence,
    /// Recompute the built-in ramp examples and compare with closed forms.
    VerifyExamples,
}

fn parse_relaxation(s: &str) -> Result<Relaxation, String> {
    match s {
        "inverse-upper" => Ok(Relaxation::InverseUpper),
        "balanced" => Ok(Relaxation::Balanced),
        other => other
            .parse::<f64>()
            .map(Relaxation::Fixed)
            .map_err(|_| format!("expected `inverse-upper`, `balanced` or a number, got `{other}`")),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub nodes: usize,
    pub tolerance: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormEstimate {
    pub samples: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualSummary {
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `(1/B, 1/A)` from the primal bounds.
    pub expected_bounds: FrameBounds,
    pub verification: DualPairReport,
    pub family: FamilySpec,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionSummary {
    pub method: Method,
    pub iterations: usize,
    pub final_residual: f64,
    pub residual_history: Vec<f64>,
    /// `‖x̂ − x‖` against the scenario signal.
    pub signal_error: f64,
    /// `‖x̂ − x̂_direct‖`.
    pub direct_agreement: f64,
    pub tolerance: f64,
    pub x_hat: Vec<Vec<Vec<ComplexPair>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdditiveSummary {
    pub admissible: bool,
    pub strength: f64,
    pub profile_energy: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub norm_threshold_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope: Option<FrameBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbed_bounds: Option<FrameBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inside_envelope: Option<bool>,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelativeSummary {
    pub criterion_holds: bool,
    pub criterion_sampled: bool,
    pub criterion_samples: usize,
    pub criterion_operator: bool,
    pub confinement: Confinement,
    pub envelope: FrameBounds,
    pub perturbed_bounds: FrameBounds,
    pub inside_envelope: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PerturbationSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub additive: Option<AdditiveSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative: Option<RelativeSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndependenceSummary {
    #[serde(flatten)]
    pub independence: Independence,
    pub below_bounded: BelowBoundedness,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub error: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationSummary {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub checks: Vec<CheckOutcome>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub settings: Settings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<FrameReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub below_bounded: Option<BelowBoundedness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_estimate: Option<NormEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstruction: Option<ReconstructionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independence: Option<IndependenceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    fn new(command: &'static str, settings: Settings, scenario: Option<Scenario>) -> Self {
        Self {
            command,
            settings,
            scenario,
            frame: None,
            below_bounded: None,
            norm_estimate: None,
            dual: None,
            reconstruction: None,
            perturbation: None,
            independence: None,
            verification: None,
            timings: None,
        }
    }
}

enum Failure {
    Usage(String),
    Scenario(ScenarioError),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Numeric(e)
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        Self::Scenario(e)
    }
}

/// Parses `args` (including the program name), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let started = Instant::now();
    match execute(&cli, err) {
        Ok((mut report, code)) => {
            if cli.timings {
                report.timings = Some(Timings { elapsed_ms: started.elapsed().as_secs_f64() * 1e3 });
            }
            let rendered = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Format::Csv => to_csv(&serde_json::to_value(&report).expect("report serializes")),
            };
            if out.write_all(rendered.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Scenario(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(Report, i32), Failure> {
    if let Some(tol) = cli.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Failure::Usage(format!("--tol must be a non-negative number, got {tol}")));
        }
    }
    if cli.nodes == Some(0) {
        return Err(Failure::Usage("--nodes must be at least 1".into()));
    }
    if let Command::VerifyExamples = cli.command {
        return verify_examples(cli, err);
    }
    let Some(path) = &cli.scenario else {
        return Err(Failure::Usage("--scenario FILE is required for this subcommand".into()));
    };
    let scenario = Scenario::from_path(path)?;
    let built = scenario.build(cli.nodes)?;
    let family = &built.family;
    let seed = cli.seed.or(scenario.seed).unwrap_or(0);
    let t = scenario.tolerances;
    let settings = |tolerance| Settings { nodes: family.rule().len(), tolerance, seed };

    match &cli.command {
        Command::Analyze => {
            let tol = cli.tol.unwrap_or(t.classification);
            let data = family.frame_operator();
            let frame = data.classify(tol);
            let is_frame = frame.classification.is_frame();
            let mut report = Report::new("analyze", settings(tol), Some(scenario.clone()));
            report.below_bounded = Some(family.below_bounded_check(tol.sqrt()));
            let est = family.norm_bounds_estimate(NORM_ESTIMATE_SAMPLES, seed);
            report.norm_estimate =
                Some(NormEstimate { samples: NORM_ESTIMATE_SAMPLES, lower: est.lower, upper: est.upper });
            if is_frame {
                report.dual = Some(dual_summary(family, t.dual)?);
            }
            report.frame = Some(frame);
            Ok((report, if is_frame { EXIT_OK } else { EXIT_NEGATIVE }))
        }
        Command::Reconstruct { method, relaxation, max_iter } => {
            let tol = cli.tol.unwrap_or(t.reconstruction);
            let data = family.frame_operator();
            let x = &built.signal;
            let y = family.synthesis(&family.analysis(x)?)?;
            let direct = reconstruction::reconstruct_direct(&data, &y);
            let result = match method {
                MethodArg::Direct => direct.clone(),
                MethodArg::Neumann => reconstruction::reconstruct_neumann(&data, &y, *relaxation, tol, *max_iter),
            };
            let (direct, result) = match (direct, result) {
                (Ok(d), Ok(r)) => (d, r),
                (Err(e @ Error::SingularFrameOperator { .. }), _) | (_, Err(e @ Error::NotAFrame { .. })) => {
                    let _ = writeln!(err, "error: {e}");
                    let mut report = Report::new("reconstruct", settings(tol), Some(scenario.clone()));
                    report.frame = Some(data.classify(t.classification));
                    return Ok((report, EXIT_NEGATIVE));
                }
                (Err(e), _) | (_, Err(e)) => return Err(e.into()),
            };
            let mut report = Report::new("reconstruct", settings(tol), Some(scenario.clone()));
            report.reconstruction = Some(ReconstructionSummary {
                method: result.method,
                iterations: result.iterations,
                final_residual: result.final_residual(),
                signal_error: result.x_hat.sub(x)?.norm(),
                direct_agreement: result.x_hat.sub(&direct.x_hat)?.norm(),
                residual_history: result.residual_history,
                tolerance: tol,
                x_hat: result.x_hat.components().iter().map(element_table).collect(),
            });
            Ok((report, EXIT_OK))
        }
        Command::Dual => {
            let tol = cli.tol.unwrap_or(t.dual);
            let mut report = Report::new("dual", settings(tol), Some(scenario.clone()));
            match dual_summary(family, tol) {
                Ok(summary) => {
                    let ok = summary.verification.is_dual;
                    report.dual = Some(summary);
                    Ok((report, if ok { EXIT_OK } else { EXIT_NEGATIVE }))
                }
                Err(e @ Error::NotAFrame { .. }) => {
                    let _ = writeln!(err, "error: {e}");
                    report.frame = Some(family.frame_operator().classify(t.classification));
                    Ok((report, EXIT_NEGATIVE))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Perturb => {
            let tol = cli.tol.unwrap_or(t.positivity);
            if built.additive.is_none() && built.relative.is_none() {
                return Err(Failure::Scenario(ScenarioError::Invalid {
                    path: "perturbation".into(),
                    message: "the perturb subcommand needs an additive or relative perturbation".into(),
                }));
            }
            let mut summary = PerturbationSummary::default();
            let mut ok = true;
            if let Some(p) = &built.additive {
                let s = additive_summary(family, p, tol)?;
                ok &= s.admissible && s.inside_envelope == Some(true);
                summary.additive = Some(s);
            }
            if let Some((other, p, samples)) = &built.relative {
                let s = relative_summary(family, other, p, *samples, seed, tol)?;
                ok &= s.criterion_holds && s.inside_envelope;
                summary.relative = Some(s);
            }
            let mut report = Report::new("perturb", settings(tol), Some(scenario.clone()));
            report.perturbation = Some(summary);
            Ok((report, if ok { EXIT_OK } else { EXIT_NEGATIVE }))
        }
        Command::Independence => {
            let tol = cli.tol.unwrap_or(t.rank);
            let mut report = Report::new("independence", settings(tol), Some(scenario.clone()));
            report.independence = Some(IndependenceSummary {
                independence: family.independence_check(tol),
                below_bounded: family.below_bounded_check(tol),
            });
            Ok((report, EXIT_OK))
        }
        Command::VerifyExamples => unreachable!("handled above"),
    }
}

fn element_table(a: &AlgebraElement) -> Vec<Vec<ComplexPair>> {
    let m = a.matrix();
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect()
}

fn dual_summary(family: &OperatorFamily, tol: f64) -> crate::Result<DualSummary> {
    let primal = family.frame_operator().optimal_bounds();
    let dual = duals::canonical_dual(family)?;
    let verification = duals::is_dual_pair(family, &dual, tol)?;
    Ok(DualSummary {
        lower_bound: verification.dual_bounds.lower,
        upper_bound: verification.dual_bounds.upper,
        expected_bounds: FrameBounds { lower: 1.0 / primal.upper, upper: 1.0 / primal.lower },
        verification,
        family: FamilySpec::from_family(&dual),
    })
}

/// Decimal rendering with at most 12 significant digits, for verdict strings.
fn short(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let digits = (11 - x.abs().log10().floor() as i32).clamp(0, 17) as usize;
    let s = format!("{x:.digits$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn additive_summary(family: &OperatorFamily, p: &AdditivePerturbation, tol: f64) -> crate::Result<AdditiveSummary> {
    let rule = family.rule();
    let assessment = match perturbation::additive_admissible(family, p, tol) {
        Ok(a) => a,
        Err(Error::NotAFrame { lower_bound }) => {
            let bounds = family.frame_operator().optimal_bounds();
            AdditiveAssessment {
                admissible: false,
                strength: p.strength(rule)?,
                lower_bound,
                upper_bound: bounds.upper,
                profile_energy: p.profile_energy(rule)?,
                norm_threshold_met: false,
            }
        }
        Err(e) => return Err(e),
    };
    let AdditiveAssessment { admissible, strength, lower_bound, upper_bound, profile_energy, norm_threshold_met } =
        assessment;
    let mut summary = AdditiveSummary {
        admissible,
        strength,
        profile_energy,
        lower_bound,
        upper_bound,
        norm_threshold_met,
        envelope: None,
        perturbed_bounds: None,
        inside_envelope: None,
        verdict: String::new(),
    };
    if !admissible {
        summary.verdict = format!("not admissible, R = {} ≥ A = {}", short(strength), short(lower_bound));
        return Ok(summary);
    }
    let envelope = perturbation::additive_envelope(lower_bound, upper_bound, strength)?;
    let perturbed = perturbation::perturb_additive(family, p)?.frame_operator().optimal_bounds();
    let slack = 1e-9 * (1.0 + envelope.upper);
    let inside = perturbed.lower >= envelope.lower - slack && perturbed.upper <= envelope.upper + slack;
    summary.verdict = if inside {
        format!(
            "admissible, R = {} < A = {}; perturbed bounds lie inside the envelope",
            short(strength),
            short(lower_bound)
        )
    } else {
        format!(
            "admissible, R = {} < A = {}, but perturbed bounds leave the envelope",
            short(strength),
            short(lower_bound)
        )
    };
    summary.envelope = Some(envelope);
    summary.perturbed_bounds = Some(perturbed);
    summary.inside_envelope = Some(inside);
    Ok(summary)
}

fn relative_summary(
    family: &OperatorFamily,
    other: &OperatorFamily,
    p: &RelativePerturbation,
    samples: usize,
    seed: u64,
    tol: f64,
) -> crate::Result<RelativeSummary> {
    let xs = perturbation::criterion_samples(family, other, samples, seed);
    let sampled = perturbation::relative_criterion_check(family, other, p, &xs, tol)?;
    let operator = perturbation::relative_criterion_operator_check(family, other, p, tol)?;
    let confinement = p.confinement(family.rule())?;
    let envelope =
        perturbation::relative_envelope_from(family.frame_operator().optimal_bounds(), confinement, p.alpha, p.beta);
    let perturbed = other.frame_operator().optimal_bounds();
    let slack = 1e-9 * (1.0 + envelope.upper);
    let inside = perturbed.lower >= envelope.lower - slack && perturbed.upper <= envelope.upper + slack;
    let holds = sampled && operator;
    let verdict = match (holds, inside) {
        (true, true) => "hypothesis holds; perturbed bounds lie inside the envelope".to_string(),
        (true, false) => "hypothesis holds, but perturbed bounds leave the envelope".to_string(),
        (false, _) => "hypothesis fails; the envelope does not apply".to_string(),
    };
    Ok(RelativeSummary {
        criterion_holds: holds,
        criterion_sampled: sampled,
        criterion_samples: xs.len(),
        criterion_operator: operator,
        confinement,
        envelope,
        perturbed_bounds: perturbed,
        inside_envelope: inside,
        verdict,
    })
}

/// The ramp family `diag(ω, (√3/2)ω)` on `[0, 1]`.
pub const RAMP_SCENARIO: &str = r#"{
  "schema_version": 1,
  "name": "ramp",
  "algebra": { "kind": "diagonal", "dim": 2 },
  "module_rank": 1,
  "measure": { "kind": "lebesgue_interval", "interval": [0.0, 1.0], "rule": "gauss_legendre", "nodes": 32 },
  "family": {
    "form": "parametric",
    "blocks": [[
      [ [[[0.0, 0.0], [1.0, 0.0]], []],
        [[], [[0.0, 0.0], [0.8660254037844386, 0.0]]] ]
    ]]
  }
}"#;

/// The family `diag(3ω, 2√3ω)` paired with the ramp.
pub const RAMP_DUAL_SCENARIO: &str = r#"{
  "schema_version": 1,
  "name": "ramp-dual",
  "algebra": { "kind": "diagonal", "dim": 2 },
  "module_rank": 1,
  "measure": { "kind": "lebesgue_interval", "interval": [0.0, 1.0], "rule": "gauss_legendre", "nodes": 32 },
  "family": {
    "form": "parametric",
    "blocks": [[
      [ [[[0.0, 0.0], [3.0, 0.0]], []],
        [[], [[0.0, 0.0], [3.4641016151377544, 0.0]]] ]
    ]]
  }
}"#;

fn verify_examples(cli: &Cli, err: &mut dyn Write) -> Result<(Report, i32), Failure> {
    let tol = cli.tol.unwrap_or(DEFAULT_VERIFY_TOLERANCE);
    let primal_scenario = Scenario::from_json_str(RAMP_SCENARIO)?;
    let nodes = cli.nodes.unwrap_or(crate::quadrature::DEFAULT_NODES);
    let primal = primal_scenario.build(Some(nodes))?.family;
    let paired = Scenario::from_json_str(RAMP_DUAL_SCENARIO)?.build(Some(nodes))?.family;
    let third = 1.0 / 3.0;
    let root3 = 3f64.sqrt();

    let diagnose = |error: f64| -> String {
        if nodes < 2 {
            format!(
                "a {nodes}-node Gauss-Legendre rule is exact only up to degree {}, but the frame-operator integrand has degree 2",
                2 * nodes - 1
            )
        } else if tol < 64.0 * f64::EPSILON {
            format!("tolerance {tol:e} is below double-precision quadrature accuracy; observed error {error:e}")
        } else {
            format!("observed error {error:e} exceeds tolerance {tol:e}")
        }
    };
    let mut checks = Vec::new();
    let mut record = |name: &str, error: f64| {
        let passed = error <= tol;
        checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            error,
            tolerance: tol,
            diagnostic: (!passed).then(|| diagnose(error)),
        });
    };

    let data = primal.frame_operator();
    let s = data.s().block(0, 0).diagonal_entries();
    record(
        "ramp frame operator",
        (s[0].re - third).abs().max((s[1].re - 0.25).abs()).max(s[0].im.abs().max(s[1].im.abs())),
    );
    let bounds = data.optimal_bounds();
    record("ramp optimal bounds", (bounds.lower - 0.25).abs().max((bounds.upper - third).abs()));

    let dual = duals::canonical_dual(&primal)?;
    let slope = dual.coefficients().map(|c| c[1].block(0, 0).diagonal_entries());
    let coefficient_error = match slope {
        Some(d) => (d[0] - 3.0).norm().max((d[1] - 2.0 * root3).norm()),
        None => f64::INFINITY,
    };
    record("canonical dual coefficients", coefficient_error);
    let db = dual.frame_operator().optimal_bounds();
    record("canonical dual bounds", (db.lower - 3.0).abs().max((db.upper - 4.0).abs()));
    record("canonical dual resolution", duals::is_dual_pair(&primal, &dual, tol)?.resolution_residual);
    record("paired family resolution", duals::is_dual_pair(&primal, &paired, tol)?.resolution_residual);
    let lambda = Relaxation::InverseUpper.resolve(bounds);
    record("relaxation contraction factor", (reconstruction::contraction_factor(bounds, lambda) - 0.25).abs());
    let x = ModuleVector::ones(primal.descriptor(), 1);
    let y = primal.synthesis(&primal.analysis(&x)?)?;
    let direct = reconstruction::reconstruct_direct(&data, &y)?;
    record("direct reconstruction", direct.x_hat.sub(&x)?.norm());

    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
    if let Some(name) = &first_failure {
        let check = checks.iter().find(|c| &c.name == name).expect("present");
        let _ = writeln!(err, "verification failed: {name}: {}", check.diagnostic.as_deref().unwrap_or(""));
    }
    let passed = first_failure.is_none();
    let mut report =
        Report::new("verify-examples", Settings { nodes, tolerance: tol, seed: cli.seed.unwrap_or(0) }, None);
    report.verification = Some(VerificationSummary { passed, first_failure, checks });
    Ok((report, if passed { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&path, v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// `path,value` rows; arrays such as the spectrum give one row per entry.
fn to_csv(value: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", value, &mut rows);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["path", "value"]).expect("in-memory write");
    for (path, v) in rows {
        writer.write_record([path, v]).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
