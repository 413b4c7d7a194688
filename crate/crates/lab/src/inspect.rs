//! Single-group commands: structure dumps and raw searches.

use std::path::Path;

use serde_json::json;

use tpp_core::catalog::Catalog;
use tpp_core::classify::{classify_group, predicted_bounds};
use tpp_core::group::{parse_group, GroupTable};
use tpp_core::structure::StructureCache;
use tpp_core::tpp::{
    search_beta0, search_beta_subsets, SearchBudget, SearchOptions, SubsetSearchOptions, TppReport,
};

/// A group named on the command line.
pub struct Target {
    pub label: String,
    pub group: GroupTable,
    pub structure: StructureCache,
    pub declared_cd: Option<Vec<usize>>,
}

/// A catalog label such as `[32,49]`, or a path to a group file.
pub fn resolve_target(cat: &Catalog, spec: &str) -> Result<Target, String> {
    if let Some(entry) = cat.get(spec) {
        let built = cat.build(&entry.label).map_err(|e| e.to_string())?;
        return Ok(Target {
            label: entry.label.clone(),
            group: built.group,
            structure: built.structure,
            declared_cd: entry.declared.as_ref().map(|d| d.cd.clone()),
        });
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(format!(
            "`{spec}` is neither a catalog label nor a readable file"
        ));
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
    let group = parse_group(&text).map_err(|e| format!("{spec}: {e}"))?;
    let structure = StructureCache::compute(&group).map_err(|e| format!("{spec}: {e}"))?;
    Ok(Target {
        label: spec.to_string(),
        group,
        structure,
        declared_cd: None,
    })
}

/// Subgroup lattice as JSON lines `{"size":..,"members":[..]}`, followed by
/// the classification and predicted bounds.
pub fn show(t: &Target) -> String {
    let mut out = String::new();
    for h in t.structure.lattice.iter() {
        out.push_str(&json!({"size": h.len(), "members": h.to_vec()}).to_string());
        out.push('\n');
    }
    let mut class = classify_group(&t.group, &t.structure);
    if let Some(cd) = &t.declared_cd {
        class = class.with_declared_cd(cd.clone());
    }
    let bounds: Vec<_> = predicted_bounds(&class)
        .iter()
        .map(|b| json!({"theorem": b.theorem.tag(), "bound": b.bound.to_string()}))
        .collect();
    let summary = json!({
        "group": t.label,
        "classification": class,
        "centre": t.structure.center.to_vec(),
        "commutator_subgroup": t.structure.commutator_subgroup.to_vec(),
        "frattini": t.structure.frattini.to_vec(),
        "predicted_bounds": bounds,
        "cd_discrepancy": class.cd_discrepancy(),
    });
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}

/// Runs the subgroup search, and the subset search when the order allows.
pub fn search(t: &Target, budget: SearchBudget, subsets: bool) -> Result<TppReport, String> {
    let opts = SearchOptions {
        budget,
        ..SearchOptions::default()
    };
    let mut report = search_beta0(&t.group, &t.structure.lattice, &opts);
    report.group = t.label.clone();
    if subsets {
        let sub = search_beta_subsets(
            &t.group,
            &SubsetSearchOptions {
                budget,
                ..SubsetSearchOptions::default()
            },
        )
        .map_err(|e| e.to_string())?;
        report.budget_exhausted |= sub.budget_exhausted;
        report = report.with_subset_capacity(sub.beta);
    }
    Ok(report)
}

/// The search report with timing removed, so output is reproducible.
pub fn search_json(report: &TppReport) -> String {
    let mut v = report.to_json();
    if let Some(stats) = v.get_mut("stats") {
        stats
            .as_object_mut()
            .expect("stats is an object")
            .remove("wall_time_ms");
    }
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn show_lists_every_subgroup_then_a_summary() {
        let cat = Catalog::shipped().unwrap();
        let t = resolve_target(&cat, "[8,4]").unwrap();
        let text = show(&t);
        // Q8 has six subgroups
        assert_eq!(text.lines().count(), 7);
        let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        assert_eq!(last["classification"]["extraspecial"], true);
    }

    #[test]
    fn search_reports_subset_capacity() {
        let cat = Catalog::shipped().unwrap();
        let t = resolve_target(&cat, "[8, 3]").unwrap();
        let r = search(&t, SearchBudget::unlimited(), true).unwrap();
        assert_eq!(r.beta0, 8);
        assert_eq!(r.beta, Some(8));
        let v: serde_json::Value = serde_json::from_str(&search_json(&r)).unwrap();
        assert!(v["stats"].get("wall_time_ms").is_none());
        assert_eq!(v["rho0_num"], 1);
    }

    #[test]
    fn unknown_target_is_an_error() {
        let cat = Catalog::shipped().unwrap();
        assert!(resolve_target(&cat, "[7, 1]").is_err());
    }
}
