//! The classification report and its JSON form. Keys are stable and the output is a pure
//! function of the input and caps unless timings are requested.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::algebra::Field;
use crate::solver::{ClassificationReport, SolveOutcome, Verdict};

use super::format::format_ratfun;

#[derive(Clone, Debug, Serialize)]
pub struct CapsReport {
    pub max_den_deg: usize,
    /// `null` means equal to the denominator degree.
    pub extra_num_deg: Option<usize>,
    pub pole_mult_g2: u32,
    pub pole_mult_g3: u32,
    pub orbit_cap: usize,
    pub height_cap_bits: u64,
    pub n_range: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct G1Report {
    pub n: i32,
    pub eta: String,
    pub constant: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpaceReport {
    pub particular: Option<String>,
    pub kernel: Vec<String>,
    /// Why there is no solution, when there is none.
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orders {
    pub g1: Option<G1Report>,
    pub g2: SpaceReport,
    pub g3: SpaceReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvidenceReport {
    pub exceptional_set_size: usize,
    pub postcritical_support: Option<usize>,
    pub orbit_iterations: usize,
    pub overflow: Option<String>,
    pub candidate_support: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub input: String,
    pub map: String,
    pub degree: usize,
    pub field: String,
    pub caps: CapsReport,
    pub orders: Orders,
    pub verdict: String,
    pub minimal_order: Option<u8>,
    pub equation: Option<String>,
    pub family_guess: String,
    pub evidence: EvidenceReport,
    pub timings_ms: BTreeMap<String, u64>,
}

fn space_report(o: &SolveOutcome) -> SpaceReport {
    match o {
        SolveOutcome::Solved(s) => SpaceReport {
            particular: s.particular.as_ref().map(format_ratfun),
            kernel: s.kernel.iter().map(format_ratfun).collect(),
            reason: None,
        },
        SolveOutcome::NoSolution { reason } => SpaceReport { particular: None, kernel: Vec::new(), reason: Some(reason.clone()) },
    }
}

pub fn classification_report(input: &str, field: Field, c: &ClassificationReport) -> Report {
    let (minimal_order, equation) = match &c.verdict {
        Verdict::Nontrivial { order, equation } => (Some(*order), Some(equation.to_string())),
        Verdict::TrivialWithinCaps => (None, None),
    };
    Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input: input.to_string(),
        map: format_ratfun(&c.map),
        degree: c.degree,
        field: field.tag(),
        caps: CapsReport {
            max_den_deg: c.caps.max_den_degree,
            extra_num_deg: c.caps.extra_num_degree,
            pole_mult_g2: c.caps.pole_mult.unwrap_or(1),
            pole_mult_g3: c.caps.pole_mult.unwrap_or(2),
            orbit_cap: c.caps.orbit.max_support,
            height_cap_bits: c.caps.orbit.height_bits,
            n_range: c.caps.n_max,
        },
        orders: Orders {
            g1: c.g1.as_ref().map(|g| G1Report { n: g.n, eta: format_ratfun(&g.eta), constant: g.constant.to_string() }),
            g2: space_report(&c.g2),
            g3: space_report(&c.g3),
        },
        verdict: c.verdict.to_string(),
        minimal_order,
        equation,
        family_guess: c.family_guess.label().to_string(),
        evidence: EvidenceReport {
            exceptional_set_size: c.evidence.exceptional_set_size,
            postcritical_support: c.evidence.postcritical_support,
            orbit_iterations: c.evidence.orbit_iterations,
            overflow: c.evidence.overflow_reason.clone(),
            candidate_support: c.evidence.candidate_support,
        },
        timings_ms: BTreeMap::new(),
    }
}

fn space_line(name: &str, coeff: &str, s: &SpaceReport) -> String {
    match (&s.particular, &s.reason) {
        (Some(p), _) => format!("{name}: {coeff} = {p} (kernel dimension {})", s.kernel.len()),
        (None, Some(r)) => format!("{name}: none ({r})"),
        (None, None) => format!("{name}: none"),
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "map: {}", self.map);
        let _ = writeln!(s, "degree: {}", self.degree);
        let _ = writeln!(s, "field: {}", self.field);
        match &self.orders.g1 {
            Some(g) => {
                let _ = writeln!(s, "G1: n = {}, eta = {}", g.n, g.eta);
            }
            None => {
                let _ = writeln!(s, "G1: none");
            }
        }
        let _ = writeln!(s, "{}", space_line("G2", "mu", &self.orders.g2));
        let _ = writeln!(s, "{}", space_line("G3", "nu", &self.orders.g3));
        match (&self.minimal_order, &self.equation) {
            (Some(o), Some(e)) => {
                let _ = writeln!(s, "verdict: {}, order {o}, {e}", self.verdict);
            }
            _ => {
                let _ = writeln!(s, "verdict: {}", self.verdict);
            }
        }
        let _ = writeln!(s, "family guess: {}", self.family_guess);
        let ev = &self.evidence;
        if self.degree < 2 {
            let _ = writeln!(s, "evidence: degree one, candidate poles at fixed points and poles");
        } else {
            let pc = ev.postcritical_support.map_or("overflow".to_string(), |n| n.to_string());
            let _ = writeln!(
                s,
                "evidence: exceptional set {}, postcritical support {pc}, {} orbit iterations",
                ev.exceptional_set_size, ev.orbit_iterations
            );
        }
        if let Some(o) = &ev.overflow {
            let _ = writeln!(s, "overflow: {o}");
        }
        for (k, v) in &self.timings_ms {
            let _ = writeln!(s, "time {k}: {v} ms");
        }
        s
    }
}
