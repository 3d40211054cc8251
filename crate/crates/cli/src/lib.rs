//! Requests, reports and rendering behind the `barychi` command.
//!
//! A [`Request`] is everything needed to reproduce a run. It is echoed at the
//! top of every JSON [`Report`], so feeding a report back through [`rerun`]
//! reproduces it byte for byte.

use std::fmt::Write as _;

use barychi_core::engine::topological_chi_applicable;
use barychi_core::homotopy::{chi_of_descriptor, maximal_pieces, Placement};
use barychi_core::series::{chen_lin_series, chi_c_from_series, SeriesSpec};
use barychi_core::{
    classify, compute, oracle_chi, ClassifyError, ComponentSpec, ExactRational,
    FiniteWeightedSpace, InstanceError, Method, OracleError, ParseRationalError, ProblemInstance,
    ValidatedInstance,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {source}")]
    Number {
        flag: String,
        source: ParseRationalError,
    },
    #[error("{flag}: {message}")]
    Flag { flag: String, message: String },
    #[error("{0}")]
    Instance(#[from] InstanceError),
    #[error("{0}")]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("{path}: {message}")]
    Document { path: String, message: String },
}

/// Comma-separated fractions; the empty string is the empty list.
pub fn parse_fraction_list(flag: &str, csv: &str) -> Result<Vec<ExactRational>, CliError> {
    if csv.trim().is_empty() {
        return Ok(Vec::new());
    }
    csv.split(',').map(|s| parse_fraction(flag, s)).collect()
}

pub fn parse_fraction(flag: &str, s: &str) -> Result<ExactRational, CliError> {
    s.parse().map_err(|source| CliError::Number {
        flag: flag.to_string(),
        source,
    })
}

/// `chi:compact|open[:i,j,...]` entries separated by `;`.
pub fn parse_components(spec: &str) -> Result<Vec<ComponentSpec>, CliError> {
    let bad = |message: String| CliError::Flag {
        flag: "--components".into(),
        message,
    };
    spec.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let mut fields = part.trim().splitn(3, ':');
            let chi = fields.next().unwrap_or_default().trim();
            let chi_c: i64 = chi
                .parse()
                .map_err(|_| bad(format!("`{chi}` is not an integer in `{part}`")))?;
            let is_compact = match fields.next().map(str::trim) {
                Some("compact") => true,
                Some("open") => false,
                other => {
                    return Err(bad(format!(
                        "expected `compact` or `open` after `{chi}:`, got `{}`",
                        other.unwrap_or_default()
                    )))
                }
            };
            let singular_indices = fields
                .next()
                .unwrap_or_default()
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| bad(format!("`{s}` is not a point index in `{part}`")))
                })
                .collect::<Result<_, _>>()?;
            Ok(ComponentSpec {
                chi_c,
                is_compact,
                singular_indices,
            })
        })
        .collect()
}

pub fn parse_instance_document(path: &str, text: &str) -> Result<ProblemInstance, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Document {
        path: path.to_string(),
        message: e.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    All,
    Direct,
    Strata,
    Series,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::All => Method::ALL.to_vec(),
            MethodChoice::Direct => vec![Method::Direct],
            MethodChoice::Strata => vec![Method::Strata],
            MethodChoice::Series => vec![Method::Series],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlacementChoice {
    OneEach,
    BothFirst,
}

impl From<PlacementChoice> for Placement {
    fn from(p: PlacementChoice) -> Placement {
        match p {
            PlacementChoice::OneEach => Placement::OneEach,
            PlacementChoice::BothFirst => Placement::BothInFirst,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoComponents {
    pub placement: PlacementChoice,
    pub chi_a: i64,
    pub chi_b: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Request {
    Compute {
        instance: ProblemInstance,
        method: MethodChoice,
        breakdown: bool,
    },
    Series {
        instance: ProblemInstance,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<ExactRational>,
    },
    Oracle {
        vertices: usize,
        weights: Vec<ExactRational>,
        rho: ExactRational,
    },
    Classify {
        instance: ProblemInstance,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        two_components: Option<TwoComponents>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Match,
    Mismatch,
}

/// Integers are emitted as decimal strings so no consumer rounds them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodValue {
    pub method: Method,
    pub chi_c: String,
    pub degree: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermLine {
    pub subset: Vec<usize>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakdown {
    pub method: Method,
    pub terms: Vec<TermLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesLine {
    pub exponent: ExactRational,
    pub coefficient: String,
    /// Sum of the coefficients at exponents in `(0, exponent]`.
    pub partial_sum: String,
    pub in_window: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDump {
    pub bound: ExactRational,
    pub terms: Vec<SeriesLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub descriptor: String,
    pub chi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximal_pieces: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub request: Request,
    pub results: Vec<MethodValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    /// The agreed χc; absent on mismatch.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    pub verdict: Verdict,
    pub topological_chi: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Vec<Breakdown>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesDump>,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        match self.verdict {
            Verdict::Match => EXIT_OK,
            Verdict::Mismatch => EXIT_MISMATCH,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Evaluation {
    results: Vec<MethodValue>,
    values: Vec<BigInt>,
    breakdown: Vec<Breakdown>,
}

fn evaluate(instance: &ValidatedInstance, methods: &[Method]) -> Evaluation {
    let mut eval = Evaluation {
        results: Vec::new(),
        values: Vec::new(),
        breakdown: Vec::new(),
    };
    for &method in methods {
        let res = compute(instance, method);
        eval.results.push(MethodValue {
            method,
            chi_c: res.chi_c.to_string(),
            degree: res.degree.to_string(),
        });
        if method != Method::Series {
            eval.breakdown.push(Breakdown {
                method,
                terms: res
                    .terms
                    .iter()
                    .map(|t| TermLine {
                        subset: t.labels.clone(),
                        value: t.value.to_string(),
                    })
                    .collect(),
            });
        }
        eval.values.push(res.chi_c);
    }
    eval
}

/// `Some(v)` when every value equals `v`.
fn agreed<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> Option<BigInt> {
    let mut it = values.into_iter();
    let first = it.next()?.clone();
    it.all(|v| *v == first).then_some(first)
}

fn finish(
    request: Request,
    eval: Evaluation,
    extra: Option<&BigInt>,
    topological_chi: bool,
) -> Report {
    let agreed = agreed(eval.values.iter().chain(extra));
    let verdict = if agreed.is_some() {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    Report {
        request,
        results: eval.results,
        oracle: None,
        classification: None,
        chi_c: agreed.as_ref().map(ToString::to_string),
        degree: agreed.map(|v| (BigInt::from(1) - v).to_string()),
        verdict,
        topological_chi,
        breakdown: None,
        series: None,
    }
}

pub fn run(request: &Request) -> Result<Report, CliError> {
    match request {
        Request::Compute {
            instance,
            method,
            breakdown,
        } => {
            let inst = instance.clone().validate()?;
            let mut eval = evaluate(&inst, &method.methods());
            let terms = std::mem::take(&mut eval.breakdown);
            let mut report = finish(
                request.clone(),
                eval,
                None,
                topological_chi_applicable(&inst),
            );
            if *breakdown {
                report.breakdown = Some(terms);
            }
            Ok(report)
        }
        Request::Series { instance, bound } => {
            let inst = instance.clone().validate()?;
            let rho = inst.rho().clone();
            let bound = bound.clone().unwrap_or_else(|| rho.clone());
            if !bound.is_positive() {
                return Err(CliError::Flag {
                    flag: "--bound".into(),
                    message: format!("{bound} is not strictly positive"),
                });
            }
            let g = chen_lin_series(&SeriesSpec::with_bound(&inst, bound.clone()));
            let from_dump = chi_c_from_series(&g, &rho);
            let mut eval = evaluate(&inst, &[Method::Series, Method::Direct]);
            eval.breakdown.clear();
            let mut report = finish(
                request.clone(),
                eval,
                Some(&from_dump.chi_c),
                topological_chi_applicable(&inst),
            );
            let mut partial = BigInt::from(0);
            let terms = g
                .iter()
                .map(|(e, c)| {
                    if !e.is_zero() {
                        partial += c;
                    }
                    SeriesLine {
                        exponent: e.clone(),
                        coefficient: c.to_string(),
                        partial_sum: partial.to_string(),
                        in_window: *e <= rho,
                    }
                })
                .collect();
            report.series = Some(SeriesDump { bound, terms });
            Ok(report)
        }
        Request::Oracle {
            vertices,
            weights,
            rho,
        } => {
            let space = FiniteWeightedSpace::new(*vertices, weights)?;
            let truth = oracle_chi(&space, rho);
            let inst = space.to_instance(rho.clone()).validate()?;
            let eval = evaluate(&inst, &Method::ALL);
            let mut report = finish(
                request.clone(),
                eval,
                Some(&truth),
                topological_chi_applicable(&inst),
            );
            report.oracle = Some(truth.to_string());
            Ok(report)
        }
        Request::Classify {
            instance,
            two_components,
        } => {
            let inst = instance.clone().validate()?;
            let layout = two_components.map(|t| (t.placement.into(), t.chi_a, t.chi_b));
            let descriptor = classify(&inst, layout)?;
            let chi = chi_of_descriptor(&descriptor);
            let pieces = maximal_pieces(&inst)
                .ok()
                .map(|ps| ps.iter().map(ToString::to_string).collect());
            let eval = evaluate(&inst, &Method::ALL);
            let mut report = finish(
                request.clone(),
                eval,
                Some(&chi),
                topological_chi_applicable(&inst),
            );
            report.classification = Some(Classification {
                descriptor: descriptor.to_string(),
                chi: chi.to_string(),
                maximal_pieces: pieces,
            });
            Ok(report)
        }
    }
}

/// Recomputes a report from the request it echoes.
pub fn rerun(report_json: &str) -> Result<Report, CliError> {
    #[derive(Deserialize)]
    struct Envelope {
        request: Request,
    }
    let envelope: Envelope = serde_json::from_str(report_json).map_err(|e| CliError::Document {
        path: "report".into(),
        message: e.to_string(),
    })?;
    run(&envelope.request)
}

fn fraction_list(items: &[ExactRational]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn describe_instance(out: &mut String, instance: &ProblemInstance) {
    let _ = writeln!(
        out,
        "instance: chi_c(X) = {}, weights = {}, rho = {}, space = {}",
        instance.chi_c,
        fraction_list(&instance.weights),
        instance.rho,
        instance.space.kind
    );
    for (i, c) in instance.space.components.iter().flatten().enumerate() {
        let _ = writeln!(
            out,
            "  component {}: chi_c = {}, {}, points {:?}",
            i + 1,
            c.chi_c,
            if c.is_compact { "compact" } else { "open" },
            c.singular_indices
        );
    }
}

/// Human-readable rendering.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    match &report.request {
        Request::Compute { instance, .. } | Request::Classify { instance, .. } => {
            describe_instance(&mut out, instance)
        }
        Request::Series { instance, .. } => describe_instance(&mut out, instance),
        Request::Oracle {
            vertices,
            weights,
            rho,
        } => {
            let _ = writeln!(
                out,
                "finite space: {vertices} vertices, listed weights {}, rho = {rho}",
                fraction_list(weights)
            );
        }
    }

    if let Some(series) = &report.series {
        let chi = report.chi_c.as_deref().unwrap_or("?");
        let degree = report.degree.as_deref().unwrap_or("?");
        let _ = writeln!(
            out,
            "degree = {degree}  chi_c = {chi}  bound = {}",
            series.bound
        );
        let mut marked = false;
        for line in &series.terms {
            if !line.in_window && !marked {
                out.push_str("-- rho --\n");
                marked = true;
            }
            let _ = writeln!(
                out,
                "{} {}  (partial {})",
                line.exponent, line.coefficient, line.partial_sum
            );
        }
        if !marked {
            out.push_str("-- rho --\n");
        }
    }

    if let Some(oracle) = &report.oracle {
        let _ = writeln!(out, "{:<8} chi = {oracle}", "oracle");
    }
    if let Some(c) = &report.classification {
        let _ = writeln!(out, "descriptor: {}", c.descriptor);
        let _ = writeln!(out, "descriptor chi = {}", c.chi);
        if let Some(pieces) = &c.maximal_pieces {
            let _ = writeln!(out, "maximal pieces: {}", pieces.join(", "));
        }
    }
    for r in &report.results {
        let _ = writeln!(
            out,
            "{:<8} chi_c = {}  degree = {}",
            r.method.name(),
            r.chi_c,
            r.degree
        );
    }
    for b in report.breakdown.iter().flatten() {
        let _ = writeln!(out, "{} terms:", b.method.name());
        for t in &b.terms {
            let labels: Vec<String> = t.subset.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  {{{}}} {}", labels.join(","), t.value);
        }
    }
    if let (Some(chi), Some(degree)) = (&report.chi_c, &report.degree) {
        let _ = writeln!(out, "chi_c = {chi}");
        let _ = writeln!(out, "degree = {degree}");
    }
    let _ = writeln!(
        out,
        "topological chi: {}",
        if report.topological_chi { "yes" } else { "no" }
    );
    let _ = writeln!(
        out,
        "verdict: {}",
        match report.verdict {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
        }
    );
    out
}

/// Outcome of the randomized cross-check corpora.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestSummary {
    pub seed: u64,
    pub engine_cases: usize,
    pub oracle_cases: usize,
    pub failures: Vec<String>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `cases` engine instances checked three ways and against both
/// normalizations, plus `cases / 2` finite spaces checked against the oracle.
pub fn selftest(cases: usize, seed: u64) -> SelftestSummary {
    use barychi_core::corpus::{EngineCorpus, OracleCorpus};
    use barychi_core::engine::{normalize_drop_heavy, normalize_drop_unit_weights};

    let mut failures = Vec::new();
    for raw in EngineCorpus::new(seed).take(cases) {
        let inst = match raw.clone().validate() {
            Ok(inst) => inst,
            Err(e) => {
                failures.push(format!("{raw:?}: {e}"));
                continue;
            }
        };
        let values: Vec<BigInt> = Method::ALL
            .iter()
            .map(|&m| compute(&inst, m).chi_c)
            .collect();
        let normalized = [
            normalize_drop_heavy(&inst),
            normalize_drop_unit_weights(&inst),
        ]
        .map(|n| compute(&n, Method::Direct).chi_c);
        if agreed(values.iter().chain(&normalized)).is_none() {
            failures.push(format!(
                "{raw:?}: direct/strata/series {values:?}, normalized {normalized:?}"
            ));
        }
    }
    let oracle_cases = cases / 2;
    for case in OracleCorpus::new(seed).take(oracle_cases) {
        let truth = oracle_chi(&case.space, &case.rho);
        let inst = case
            .space
            .to_instance(case.rho.clone())
            .validate()
            .expect("finite spaces give valid instances");
        let values: Vec<BigInt> = Method::ALL
            .iter()
            .map(|&m| compute(&inst, m).chi_c)
            .collect();
        if agreed(values.iter().chain([&truth])).is_none() {
            failures.push(format!(
                "finite space {:?} rho={}: oracle {truth}, engines {values:?}",
                case.space.vertex_weights(),
                case.rho
            ));
        }
    }
    SelftestSummary {
        seed,
        engine_cases: cases,
        oracle_cases,
        failures,
    }
}
