//! Per-group verification: build, classify, search, and hold the computed
//! ρ₀ against every applicable bound and against the declared table row.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use tpp_core::catalog::{build_entry, CatalogEntry, CatalogError};
use tpp_core::classify::{classify_group, predicted_bounds, GroupClassification};
use tpp_core::tpp::{search_beta0, SearchBudget, SearchOptions, TppReport};

use crate::{rational_text, Exit};

/// Orders above this only run under `--deep`.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Witness triples kept per group in a report.
pub const REPORTED_WITNESSES: usize = 4;

#[derive(Debug, Clone, Default)]
pub struct CampaignOptions {
    pub budget: SearchBudget,
    pub deep: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Inconclusive,
    /// Computed value differs from the declared table cell, or the group
    /// failed its fingerprint.
    Mismatch,
    /// A predicted bound does not hold.
    Violation,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Mismatch => "MISMATCH",
            Status::Violation => "VIOLATION",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppliedBound {
    pub theorem: &'static str,
    pub predicted: String,
    pub holds: bool,
    pub margin: String,
    pub attained: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundCheckResult {
    pub label: String,
    pub order: usize,
    pub status: Status,
    pub centre_order: Option<usize>,
    pub centre_index: Option<usize>,
    pub beta0: Option<u64>,
    /// Lower bound only when `budget_exhausted`.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub computed_rho0: Option<Ratio<u64>>,
    pub budget_exhausted: bool,
    pub applicable_bounds: Vec<AppliedBound>,
    pub witnesses: Vec<[Vec<usize>; 3]>,
    pub witness_count: u64,
    pub discrepancies: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub classification: Option<GroupClassification>,
}

fn ser_opt_ratio<S: serde::Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational_text(*r)),
        None => s.serialize_none(),
    }
}

impl BoundCheckResult {
    fn new(entry: &CatalogEntry) -> Self {
        BoundCheckResult {
            label: entry.label.clone(),
            order: entry.declared_order(),
            status: Status::Pass,
            centre_order: None,
            centre_index: None,
            beta0: None,
            computed_rho0: None,
            budget_exhausted: false,
            applicable_bounds: Vec::new(),
            witnesses: Vec::new(),
            witness_count: 0,
            discrepancies: Vec::new(),
            warnings: Vec::new(),
            classification: None,
        }
    }

    fn raise(&mut self, status: Status) {
        self.status = self.status.max(status);
    }

    /// One line for terminal output.
    pub fn summary_line(&self) -> String {
        let rho = match (self.computed_rho0, self.budget_exhausted) {
            (Some(r), false) => format!("rho0={}", rational_text(r)),
            (Some(r), true) => format!("rho0>={}", rational_text(r)),
            (None, _) => "rho0=?".to_string(),
        };
        let mut line = format!("{:<12} {:<13} {rho}", self.label, self.status.label());
        for b in &self.applicable_bounds {
            let verdict = if b.holds { "ok" } else { "FAILS" };
            let eq = if b.attained { ", attained" } else { "" };
            line.push_str(&format!("  {}: {} {verdict}{eq}", b.theorem, b.predicted));
        }
        for d in &self.discrepancies {
            line.push_str(&format!("\n    ! {d}"));
        }
        for w in &self.warnings {
            line.push_str(&format!("\n    warning: {w}"));
        }
        if matches!(self.status, Status::Mismatch | Status::Violation) {
            if let Some([s, t, u]) = self.witnesses.first() {
                line.push_str(&format!("\n    witness S={s:?} T={t:?} U={u:?}"));
            }
        }
        line
    }
}

/// Runs the search for one entry. Orders above [`DEFAULT_MAX_ORDER`] are
/// built and classified but only searched under `deep`.
pub fn verify_entry(entry: &CatalogEntry, opts: &CampaignOptions) -> BoundCheckResult {
    let mut out = BoundCheckResult::new(entry);
    let built = match build_entry(entry) {
        Ok(b) => b,
        Err(e @ CatalogError::FingerprintMismatch { .. }) => {
            out.discrepancies.push(e.to_string());
            out.raise(Status::Mismatch);
            return out;
        }
        Err(e) => {
            out.discrepancies.push(e.to_string());
            out.raise(Status::Error);
            return out;
        }
    };
    let g = &built.group;
    let mut class = classify_group(g, &built.structure);
    if let Some(d) = &entry.declared {
        class = class.with_declared_cd(d.cd.clone());
    }
    for flaw in class.inconsistencies() {
        out.discrepancies.push(format!("classification: {flaw}"));
        out.raise(Status::Error);
    }
    if let Some(w) = class.cd_discrepancy() {
        out.warnings.push(w);
    }
    out.centre_order = Some(class.centre_order);
    out.centre_index = Some(class.centre_index);
    if let Some(d) = &entry.declared {
        if d.centre_order != class.centre_order {
            out.discrepancies.push(format!(
                "|Z(G)| = {} but the table gives {}",
                class.centre_order, d.centre_order
            ));
            out.raise(Status::Mismatch);
        }
        if d.centre_index != class.centre_index {
            out.discrepancies.push(format!(
                "|G:Z(G)| = {} but the table's root {} squares to {}",
                class.centre_index, d.sqrt_text, d.centre_index
            ));
            out.raise(Status::Mismatch);
        }
    }
    let bounds = predicted_bounds(&class);
    out.classification = Some(class);

    if g.order() > DEFAULT_MAX_ORDER && !opts.deep {
        out.warnings
            .push(format!("order {} searched only under --deep", g.order()));
        out.raise(Status::Inconclusive);
        return out;
    }

    let search = SearchOptions {
        budget: opts.budget,
        ..SearchOptions::default()
    };
    let mut report = search_beta0(g, &built.structure.lattice, &search);
    report.group = entry.label.clone();
    record_search(&mut out, &report);

    for b in bounds {
        let check = b.check(report.rho0);
        // a lower bound can refute an upper bound but never confirm one
        if !check.holds {
            out.raise(Status::Violation);
        }
        out.applicable_bounds.push(AppliedBound {
            theorem: b.theorem.tag(),
            predicted: b.bound.to_string(),
            holds: check.holds,
            margin: check.margin,
            attained: check.attained,
        });
    }
    if let Some(d) = &entry.declared {
        if d.rho0 != report.rho0 && !(report.budget_exhausted && report.rho0 < d.rho0) {
            out.discrepancies.push(format!(
                "rho0 = {} but the table gives {}",
                rational_text(report.rho0),
                rational_text(d.rho0)
            ));
            out.raise(Status::Mismatch);
        }
    }
    if report.budget_exhausted {
        out.warnings
            .push("search budget exhausted; rho0 is a lower bound".to_string());
        out.raise(Status::Inconclusive);
    }
    out
}

fn record_search(out: &mut BoundCheckResult, report: &TppReport) {
    out.beta0 = Some(report.beta0);
    out.computed_rho0 = Some(report.rho0);
    out.budget_exhausted = report.budget_exhausted;
    out.witness_count = report.witness_count;
    out.witnesses = report
        .maximal_subgroup_triples
        .iter()
        .take(REPORTED_WITNESSES)
        .map(|t| t.to_indices())
        .collect();
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub groups: Vec<BoundCheckResult>,
    pub passed: usize,
    pub inconclusive: usize,
    pub failed: usize,
}

impl CampaignReport {
    pub fn exit(&self, allow_inconclusive: bool) -> Exit {
        let worst = self.groups.iter().map(|r| r.status).max();
        match worst {
            Some(Status::Violation | Status::Mismatch | Status::Error) => Exit::Violation,
            Some(Status::Inconclusive) if !allow_inconclusive => Exit::Inconclusive,
            _ => Exit::Success,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.groups {
            s.push_str(&r.summary_line());
            s.push('\n');
        }
        s.push_str(&format!(
            "{} passed, {} inconclusive, {} failed\n",
            self.passed, self.inconclusive, self.failed
        ));
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Verifies each entry; groups run in parallel, results keep input order.
pub fn run_campaign(entries: &[&CatalogEntry], opts: &CampaignOptions) -> CampaignReport {
    let groups: Vec<BoundCheckResult> = entries.par_iter().map(|e| verify_entry(e, opts)).collect();
    let count = |f: fn(Status) -> bool| groups.iter().filter(|r| f(r.status)).count();
    CampaignReport {
        passed: count(|s| s == Status::Pass),
        inconclusive: count(|s| s == Status::Inconclusive),
        failed: count(|s| s > Status::Inconclusive),
        groups,
    }
}
