//! Output documents emitted by the command-line front end.
//!
//! Every document carries `format_version` and the command that produced it.
//! The JSON form deserializes back into the same value, and serializing that
//! value again yields identical bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::{DegreeSpectrum, ResidueClassTable};
use crate::geography::{CountReport, GeographyEntry};
use crate::isomorphism::{Decision, Distinguisher, IsomorphismReport, DecisionCase};
use crate::manifolds::{FiveManifoldContact, SymplecticFourManifoldDescriptor};
use crate::selftest::SuiteResult;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Document {
    Validate(ValidateOutput),
    Classify(ClassifyOutput),
    Spectrum(SpectrumOutput),
    Compare(ComparisonOutput),
    Counts(CountsOutput),
    Catalog(CatalogOutput),
    Selftest(SelftestOutput),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateOutput {
    pub format_version: u32,
    pub descriptor: SymplecticFourManifoldDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub format_version: u32,
    pub name: String,
    pub manifold: FiveManifoldContact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub format_version: u32,
    pub name: String,
    pub manifold: FiveManifoldContact,
    pub spectrum: DegreeSpectrum,
    pub residue_table: Option<ResidueClassTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedManifold {
    pub name: String,
    pub manifold: FiveManifoldContact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonOutput {
    pub format_version: u32,
    pub first: NamedManifold,
    pub second: NamedManifold,
    pub diffeomorphic: bool,
    pub almost_contact: bool,
    pub contact_homology: IsomorphismReport,
    pub verdict: String,
    pub narrative: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsOutput {
    pub format_version: u32,
    pub report: CountReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogOutput {
    pub format_version: u32,
    pub entries: Vec<GeographyEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestOutput {
    pub format_version: u32,
    pub suites: Vec<SuiteResult>,
}

impl SelftestOutput {
    pub fn failures(&self) -> usize {
        self.suites.iter().filter(|s| !s.passed).count()
    }
}

/// One-line verdict and longer explanation for a comparison.
pub fn comparison_verdict(
    diffeomorphic: bool,
    almost_contact: bool,
    report: &IsomorphismReport,
) -> (String, String) {
    if !diffeomorphic {
        return (
            "not diffeomorphic".to_string(),
            "the total spaces differ in b2 or in level parity, so the structures live on different manifolds"
                .to_string(),
        );
    }
    if !almost_contact {
        return (
            "different levels: trivially inequivalent as almost contact structures".to_string(),
            "almost contact structures on the same manifold are equivalent exactly when their levels agree"
                .to_string(),
        );
    }
    let d = report.level;
    let verdict = match (&report.decision, &report.distinguisher) {
        (Decision::Isomorphic, _) => {
            "equivalent as almost contact structures, isomorphic contact homology".to_string()
        }
        (Decision::NotIsomorphic, Some(Distinguisher::ResidueClass { b, .. })) => format!(
            "equivalent as almost contact structures, inequivalent contact homology, distinguisher b={b}"
        ),
        (Decision::NotIsomorphic, Some(Distinguisher::LowestDegrees { lowest, lowest_prime })) => format!(
            "equivalent as almost contact structures, inequivalent contact homology, lowest degrees {lowest} vs {lowest_prime}"
        ),
        (Decision::NotIsomorphic, None) => {
            "equivalent as almost contact structures, inequivalent contact homology".to_string()
        }
    };
    let narrative = match report.case {
        DecisionCase::SmallDivisibilities => format!(
            "same level d = {d}; both canonical divisibilities ({}, {}) are at most 3, so contact homology cannot tell the structures apart",
            report.dk, report.dk_prime
        ),
        DecisionCase::LevelZeroEqual => format!(
            "level 0 with equal canonical divisibility {}; the contact homology algebras agree degree by degree",
            report.dk
        ),
        DecisionCase::LargeEqual => format!(
            "same level d = {d} and equal canonical divisibility {} >= 4; the algebras are isomorphic",
            report.dk
        ),
        DecisionCase::LevelZeroDifferent => format!(
            "level 0 with canonical divisibilities {} and {}: the lowest generator degrees differ, so these are inequivalent contact structures in one almost contact class",
            report.dk, report.dk_prime
        ),
        DecisionCase::LargeDifferent => format!(
            "same level d = {d} but canonical divisibilities {} and {} with one >= 4: a residue class of generators is empty on one side and infinite on the other, so these are inequivalent contact structures in one almost contact class",
            report.dk, report.dk_prime
        ),
        DecisionCase::LevelsDiffer | DecisionCase::NotDiffeomorphic => String::new(),
    };
    (verdict, narrative)
}

fn manifold_lines(out: &mut String, m: &FiveManifoldContact) {
    let _ = writeln!(out, "  manifold:   {}", m.barden_name);
    let _ = writeln!(out, "  b2(X):      {}", m.b2_x);
    let _ = writeln!(out, "  spin:       {}", m.spin_x);
    let _ = writeln!(out, "  level d:    {}", m.level);
    let _ = writeln!(out, "  d(K):       {}", m.dk);
    let _ = writeln!(out, "  delta:      {}", m.delta);
}

/// Limit on witness triples printed in text mode; the JSON form lists all.
const TEXT_WITNESS_LINES: usize = 12;

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Document::Validate(v) => {
                let d = &v.descriptor;
                let _ = writeln!(out, "valid: {}", d.name);
                let _ = writeln!(out, "  b2 = {}, b2+ = {}, spin = {}", d.b2, d.b2_plus, d.spin);
            }
            Document::Classify(c) => {
                let _ = writeln!(out, "{}", c.name);
                manifold_lines(&mut out, &c.manifold);
                let _ = writeln!(out, "summary: {}, level {}", c.manifold.barden_name, c.manifold.level);
            }
            Document::Spectrum(s) => {
                let _ = writeln!(out, "{}", s.name);
                manifold_lines(&mut out, &s.manifold);
                let sp = &s.spectrum;
                let z: Vec<String> = sp.z_degrees.iter().map(|z| z.to_string()).collect();
                let _ = writeln!(out, "z degrees: [{}]", z.join(", "));
                let _ = writeln!(out, "q degrees (k <= {}, 0 <= i <= {}):", sp.k_max, sp.a);
                let _ = writeln!(out, "{:>6} {:>4} {:>8}", "k", "i", "degree");
                for g in &sp.q_degrees {
                    let _ = writeln!(out, "{:>6} {:>4} {:>8}", g.index.k, g.index.i, g.degree);
                }
                match &s.residue_table {
                    Some(t) => {
                        let _ = writeln!(out, "residue classes mod {} (d(K) = {}):", 2 * t.level, t.dk);
                        for (b, st) in t.status.iter().enumerate() {
                            let _ = writeln!(out, "  Q_{b}: {st}");
                        }
                    }
                    None => {
                        let _ = writeln!(out, "level 0: integer grading, no residue classes");
                    }
                }
            }
            Document::Compare(c) => {
                for (label, m) in [("first", &c.first), ("second", &c.second)] {
                    let _ = writeln!(out, "{label}: {}", m.name);
                    manifold_lines(&mut out, &m.manifold);
                }
                let _ = writeln!(out, "diffeomorphic: {}", c.diffeomorphic);
                let _ = writeln!(out, "almost contact equivalent: {}", c.almost_contact);
                let r = &c.contact_homology;
                let _ = writeln!(out, "contact homology: {:?} ({:?})", r.decision, r.case);
                if let Some(d) = &r.distinguisher {
                    match d {
                        Distinguisher::ResidueClass { b, status, status_prime } => {
                            let _ = writeln!(out, "  distinguisher: Q_{b} is {status} vs {status_prime}");
                        }
                        Distinguisher::LowestDegrees { lowest, lowest_prime } => {
                            let _ = writeln!(out, "  distinguisher: lowest degrees {lowest} vs {lowest_prime}");
                        }
                    }
                }
                if let Some(w) = &r.witness {
                    let _ = writeln!(
                        out,
                        "  witness: {} pairs, {} + {} deferred",
                        w.triples.len(),
                        w.deferred_source.len(),
                        w.deferred_target.len()
                    );
                    for t in w.triples.iter().take(TEXT_WITNESS_LINES) {
                        let _ = writeln!(out, "    {} -> z1^{} {}", t.source, t.alpha, t.target);
                    }
                    if w.triples.len() > TEXT_WITNESS_LINES {
                        let _ = writeln!(out, "    ...");
                    }
                }
                let _ = writeln!(out, "verdict: {}", c.verdict);
                if !c.narrative.is_empty() {
                    let _ = writeln!(out, "note: {}", c.narrative);
                }
            }
            Document::Counts(c) => {
                let r = &c.report;
                let _ = writeln!(out, "{} on level {}", r.manifold_name, r.level);
                let _ = writeln!(out, "  inequivalent contact structures: at least {}", r.lower_bound);
                let _ = writeln!(out, "  upper bound N(d): {}", r.upper_bound_n);
                if let Some(n) = r.upper_bound_refined {
                    let _ = writeln!(out, "  upper bound N'(d): {n}");
                }
                let _ = writeln!(out, "  exact: {}", r.exact);
                for real in &r.realizations {
                    let fams: Vec<String> = real
                        .entries
                        .iter()
                        .map(|e| match e.params.m {
                            Some(m) => format!("{}(m={m})", e.family),
                            None => e.family.to_string(),
                        })
                        .collect();
                    let _ = writeln!(out, "  d(K) = {}: {}", real.k, fams.join(", "));
                }
            }
            Document::Catalog(c) => {
                let _ = writeln!(out, "{:<18} {:>5} {:>5} {:>5} {:>6}", "family", "m", "b2", "b2+", "d(K)");
                for e in &c.entries {
                    let m = e.params.m.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
                    let k = match e.dk_constraint {
                        crate::geography::DivisibilityConstraint::Any => "any",
                        crate::geography::DivisibilityConstraint::Odd => "odd",
                    };
                    let _ = writeln!(out, "{:<18} {:>5} {:>5} {:>5} {:>6}", e.family.to_string(), m, e.b2, e.b2_plus, k);
                }
            }
            Document::Selftest(s) => {
                for suite in &s.suites {
                    let mark = if suite.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{mark} {} ({} cases) {}", suite.name, suite.cases, suite.detail);
                }
                let _ = writeln!(out, "{} of {} suites passed", s.suites.len() - s.failures(), s.suites.len());
            }
        }
        out
    }
}
