//! Per-graph bound reports and success tallies over graph families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::combinatorial::{clique_cover_number, fractional_clique_cover, independence_number};
use super::spectral::{
    bound_sdp_adjacency, hoffman_from_spectrum, nikiforov_from_spectrum, scaled_complement_from_spectrum,
    simple_from_spectrum,
};
use crate::eigen::{graph_spectrum, Spectrum};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdp::{positive_energy_problem, solve_sdp_with, theta_minus_problem, SdpProblem, SdpSettings};

/// Largest order for which reports run the positive-energy SDP.
pub const SDP_CROSS_CHECK_MAX_N: usize = 40;
/// Slack allowed when comparing a bound against half the energy.
pub const SOUNDNESS_TOL: f64 = 1e-5;
/// Slack used by the success convention and the conjecture verdict.
pub const SUCCESS_TOL: f64 = 1e-6;

/// Why a report field is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Absence {
    Edgeless,
    NotRegular,
    CompleteGraph,
    DegenerateSpectrum,
    BudgetExceeded,
    SolverFailed,
    TooLarge,
    AlphaUnknown,
    NonPositiveBound,
    Skipped,
}

impl Absence {
    pub fn as_str(self) -> &'static str {
        match self {
            Absence::Edgeless => "edgeless",
            Absence::NotRegular => "not_regular",
            Absence::CompleteGraph => "complete_graph",
            Absence::DegenerateSpectrum => "degenerate_spectrum",
            Absence::BudgetExceeded => "budget_exceeded",
            Absence::SolverFailed => "solver_failed",
            Absence::TooLarge => "too_large",
            Absence::AlphaUnknown => "alpha_unknown",
            Absence::NonPositiveBound => "non_positive_bound",
            Absence::Skipped => "skipped",
        }
    }
}

fn absence_of(e: &Error) -> Absence {
    match e {
        Error::BudgetExceeded(_) => Absence::BudgetExceeded,
        _ => Absence::SolverFailed,
    }
}

/// `(n - alpha)/bound` for the four table columns.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    pub simple: Option<f64>,
    pub chi_f: Option<f64>,
    pub sdp_adjacency: Option<f64>,
    pub half_energy: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// `n - alpha = 0`: only the edgeless graph.
    HoldsTrivially,
    Violated,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HoldsTrivially => "holds trivially (n-alpha = 0)",
            Verdict::Violated => "VIOLATED",
            Verdict::Unknown => "unknown (alpha not computed)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub alpha: Option<usize>,
    pub half_energy: f64,
    pub chi_bar: Option<usize>,
    pub chi_f_bar: Option<f64>,
    pub hoffman_ratio: Option<f64>,
    pub bound_simple: Option<f64>,
    /// `n - chi_f(complement)`.
    pub bound_chi_f: Option<f64>,
    pub bound_scaled_complement: Option<f64>,
    pub bound_sdp_adjacency: Option<f64>,
    pub bound_nikiforov: Option<f64>,
    pub theta_minus: Option<f64>,
    pub positive_energy_sdp: Option<f64>,
    pub ratios: Ratios,
    pub verdict: Verdict,
    /// Reason for every absent field, keyed by field name.
    pub missing: BTreeMap<String, Absence>,
}

/// Which of the costlier report fields to compute, and how.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub clique_cover: bool,
    pub theta_minus: bool,
    pub sdp_cross_check: bool,
    pub sdp: SdpSettings,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { clique_cover: true, theta_minus: true, sdp_cross_check: true, sdp: SdpSettings::default() }
    }
}

impl ReportOptions {
    /// Only what the success tallies need.
    pub fn minimal() -> Self {
        ReportOptions { clique_cover: false, theta_minus: false, sdp_cross_check: false, ..Default::default() }
    }
}

pub fn report(g: &Graph) -> Result<BoundReport> {
    report_with(g, &ReportOptions::default())
}

/// Fails only if the spectrum itself cannot be computed; every other
/// field is independently optional.
pub fn report_with(g: &Graph, opts: &ReportOptions) -> Result<BoundReport> {
    let spectrum = graph_spectrum(g)?;
    let n = g.n();
    let mut missing = BTreeMap::new();
    let mut record = |field: &str, why: Absence| {
        missing.insert(field.to_string(), why);
    };
    let mut keep = |field: &str, r: Result<f64>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            record(field, absence_of(&e));
            None
        }
    };

    let alpha = independence_number(g).ok();
    let chi_f_bar = keep("chi_f_bar", fractional_clique_cover(g).map(|(v, _)| v));
    let chi_bar = if opts.clique_cover { clique_cover_number(g).ok() } else { None };
    let solve = |p: SdpProblem| -> Result<f64> { Ok(solve_sdp_with(&p, &opts.sdp, None)?.converged()?.value) };
    let theta = if opts.theta_minus { keep("theta_minus", solve(theta_minus_problem(g))) } else { None };
    let pe_sdp = if opts.sdp_cross_check && n <= SDP_CROSS_CHECK_MAX_N {
        keep("positive_energy_sdp", solve(positive_energy_problem(g)))
    } else {
        None
    };
    let sdp4 = if g.is_edgeless() || g.is_complete() {
        None
    } else {
        keep("bound_sdp_adjacency", bound_sdp_adjacency(g).map(|s| s.objective))
    };

    let mut r = BoundReport {
        name: g.name().to_string(),
        n,
        m: g.m(),
        alpha,
        half_energy: spectrum.energy() / 2.0,
        chi_bar,
        chi_f_bar,
        hoffman_ratio: None,
        bound_simple: None,
        bound_chi_f: chi_f_bar.map(|c| n as f64 - c),
        bound_scaled_complement: None,
        bound_sdp_adjacency: sdp4,
        bound_nikiforov: None,
        theta_minus: theta,
        positive_energy_sdp: pe_sdp,
        ratios: Ratios::default(),
        verdict: Verdict::Unknown,
        missing: BTreeMap::new(),
    };
    fill_spectral(g, &spectrum, &mut r);

    if alpha.is_none() {
        missing.insert("alpha".into(), Absence::BudgetExceeded);
    }
    if opts.clique_cover && chi_bar.is_none() {
        missing.insert("chi_bar".into(), Absence::BudgetExceeded);
    }
    for (field, on) in [
        ("chi_bar", opts.clique_cover),
        ("theta_minus", opts.theta_minus),
        ("positive_energy_sdp", opts.sdp_cross_check),
    ] {
        if !on {
            missing.insert(field.into(), Absence::Skipped);
        }
    }
    if opts.sdp_cross_check && n > SDP_CROSS_CHECK_MAX_N {
        missing.insert("positive_energy_sdp".into(), Absence::TooLarge);
    }
    if g.is_edgeless() {
        missing.insert("bound_sdp_adjacency".into(), Absence::Edgeless);
    } else if g.is_complete() {
        missing.insert("bound_sdp_adjacency".into(), Absence::CompleteGraph);
    }
    r.missing.append(&mut missing);

    r.ratios = Ratios {
        simple: ratio(&mut r.missing, "ratio_simple", alpha, n, r.bound_simple, "bound_simple"),
        chi_f: ratio(&mut r.missing, "ratio_chi_f", alpha, n, r.bound_chi_f, "chi_f_bar"),
        sdp_adjacency: ratio(
            &mut r.missing,
            "ratio_sdp_adjacency",
            alpha,
            n,
            r.bound_sdp_adjacency,
            "bound_sdp_adjacency",
        ),
        half_energy: ratio(&mut r.missing, "ratio_half_energy", alpha, n, Some(r.half_energy), ""),
    };
    r.verdict = match alpha {
        None => Verdict::Unknown,
        Some(a) if a == n => Verdict::HoldsTrivially,
        Some(a) if r.half_energy >= (n - a) as f64 - SUCCESS_TOL => Verdict::Holds,
        Some(_) => Verdict::Violated,
    };
    Ok(r)
}

fn fill_spectral(g: &Graph, s: &Spectrum, r: &mut BoundReport) {
    if g.is_edgeless() {
        for field in ["hoffman_ratio", "bound_simple", "bound_scaled_complement", "bound_nikiforov"] {
            r.missing.insert(field.into(), Absence::Edgeless);
        }
        return;
    }
    r.bound_simple = Some(simple_from_spectrum(g.m(), s));
    r.bound_nikiforov = Some(nikiforov_from_spectrum(g.m(), s));
    if g.regular_degree().is_none() {
        r.missing.insert("hoffman_ratio".into(), Absence::NotRegular);
        r.missing.insert("bound_scaled_complement".into(), Absence::NotRegular);
        return;
    }
    r.hoffman_ratio = Some(hoffman_from_spectrum(g.n(), s));
    if g.is_complete() {
        r.missing.insert("bound_scaled_complement".into(), Absence::CompleteGraph);
        return;
    }
    match scaled_complement_from_spectrum(g, s) {
        Ok(sol) => r.bound_scaled_complement = Some(sol.objective),
        Err(_) => {
            r.missing.insert("bound_scaled_complement".into(), Absence::DegenerateSpectrum);
        }
    }
}

fn ratio(
    missing: &mut BTreeMap<String, Absence>,
    field: &str,
    alpha: Option<usize>,
    n: usize,
    bound: Option<f64>,
    source: &str,
) -> Option<f64> {
    let why = match (alpha, bound) {
        (None, _) => Absence::AlphaUnknown,
        (_, None) => missing.get(source).copied().unwrap_or(Absence::SolverFailed),
        (Some(_), Some(b)) if b <= SUCCESS_TOL => Absence::NonPositiveBound,
        (Some(a), Some(b)) => return Some((n - a) as f64 / b),
    };
    missing.insert(field.into(), why);
    None
}

impl BoundReport {
    /// Present bounds and their values, in table order.
    pub fn bounds(&self) -> Vec<(&'static str, f64)> {
        [
            ("bound_simple", self.bound_simple),
            ("bound_chi_f", self.bound_chi_f),
            ("bound_scaled_complement", self.bound_scaled_complement),
            ("bound_sdp_adjacency", self.bound_sdp_adjacency),
            ("bound_nikiforov", self.bound_nikiforov),
            ("bound_chi", self.chi_bar.map(|c| (self.n - c) as f64)),
            ("bound_hoffman", self.hoffman_ratio.map(|h| self.n as f64 - h)),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }

    /// Bounds exceeding half the energy, which would contradict the theorems.
    pub fn soundness_violations(&self) -> Vec<(&'static str, f64)> {
        let mut out: Vec<(&'static str, f64)> =
            self.bounds().into_iter().filter(|(_, v)| *v > self.half_energy + SOUNDNESS_TOL).collect();
        if let Some(p) = self.positive_energy_sdp {
            if (p - self.half_energy).abs() > SOUNDNESS_TOL {
                out.push(("positive_energy_sdp", p));
            }
        }
        out
    }

    pub fn n_minus_alpha(&self) -> Option<usize> {
        self.alpha.map(|a| self.n - a)
    }

    pub fn outcome(&self) -> Option<Outcome> {
        let target = self.n_minus_alpha()? as f64;
        let ok = |b: Option<f64>| matches!(b, Some(v) if v > SUCCESS_TOL && v >= target - SUCCESS_TOL);
        Some(Outcome {
            simple: ok(self.bound_simple),
            chi_f: ok(self.bound_chi_f),
            sdp_adjacency: ok(self.bound_sdp_adjacency),
            conjecture_holds: self.verdict != Verdict::Violated,
        })
    }
}

/// Which approaches certify the conjecture on one graph. A bound succeeds
/// when it is defined, positive and at least `n - alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub simple: bool,
    pub chi_f: bool,
    pub sdp_adjacency: bool,
    pub conjecture_holds: bool,
}

impl Outcome {
    pub fn any(&self) -> bool {
        self.simple || self.chi_f || self.sdp_adjacency
    }
}

/// Counts of successes over a family of graphs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub graphs: usize,
    pub simple: usize,
    pub chi_f: usize,
    pub sdp_adjacency: usize,
    pub total: usize,
    pub violations: usize,
}

impl Tally {
    pub fn add(&mut self, o: &Outcome) {
        self.graphs += 1;
        self.simple += o.simple as usize;
        self.chi_f += o.chi_f as usize;
        self.sdp_adjacency += o.sdp_adjacency as usize;
        self.total += o.any() as usize;
        self.violations += !o.conjecture_holds as usize;
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.graphs += other.graphs;
        self.simple += other.simple;
        self.chi_f += other.chi_f;
        self.sdp_adjacency += other.sdp_adjacency;
        self.total += other.total;
        self.violations += other.violations;
        self
    }

    /// Percentages `(simple, chi_f, sdp_adjacency, total)`.
    pub fn percentages(&self) -> [f64; 4] {
        let pct = |c: usize| if self.graphs == 0 { 0.0 } else { 100.0 * c as f64 / self.graphs as f64 };
        [pct(self.simple), pct(self.chi_f), pct(self.sdp_adjacency), pct(self.total)]
    }
}
