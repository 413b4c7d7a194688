//! Verification campaigns over the group catalog: table reproduction,
//! bound checks, property suites and single-group inspection.

pub mod campaign;
pub mod inspect;
pub mod props;
pub mod tables;

use std::path::Path;

use num_rational::Ratio;

use tpp_core::catalog::{Catalog, CatalogEntry, CatalogError, PaperTable};
use tpp_core::group::{validate_table, GroupTable};
use tpp_core::set::ElementSet;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Success = 0,
    Violation = 1,
    Inconclusive = 2,
    Usage = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// `a` for integers, `a/b` otherwise.
pub fn rational_text(r: Ratio<u64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn load_catalog(dir: Option<&Path>) -> Result<Catalog, CatalogError> {
    match dir {
        Some(d) => Catalog::from_dir(d),
        None => Catalog::shipped(),
    }
}

pub fn paper_table(n: u8) -> Option<PaperTable> {
    match n {
        1 => Some(PaperTable::One),
        2 => Some(PaperTable::Two),
        3 => Some(PaperTable::Three),
        _ => None,
    }
}

/// Which catalog entries a command applies to.
#[derive(Debug, Clone, Default)]
pub struct Selection {
    pub labels: Vec<String>,
    pub all: bool,
    pub table: Option<u8>,
    pub order: Option<usize>,
}

impl Selection {
    /// Entries in catalog order; unknown labels are an error.
    pub fn resolve<'a>(&self, cat: &'a Catalog) -> Result<Vec<&'a CatalogEntry>, String> {
        let mut out: Vec<&CatalogEntry> = Vec::new();
        for label in &self.labels {
            let e = cat
                .get(label)
                .ok_or_else(|| format!("unknown group label {label}"))?;
            out.push(e);
        }
        if let Some(n) = self.table {
            let t = paper_table(n).ok_or_else(|| format!("no table {n}; expected 1, 2 or 3"))?;
            out.extend(cat.table_rows(t));
        }
        if self.all {
            out.extend(cat.entries());
        }
        if self.labels.is_empty() && self.table.is_none() && !self.all {
            return Err("no groups selected; give labels, --table N or --all".into());
        }
        if let Some(order) = self.order {
            out.retain(|e| e.declared_order() == order);
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|e| seen.insert(e.label.clone()));
        Ok(out)
    }
}

/// The subgroup `h` as a group in its own right, elements renumbered in
/// increasing order of their index in `g`.
pub fn induced_group(g: &GroupTable, h: &ElementSet) -> GroupTable {
    let members = h.to_vec();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &m) in members.iter().enumerate() {
        pos[m] = i;
    }
    let rows: Vec<Vec<usize>> = members
        .iter()
        .map(|&a| members.iter().map(|&b| pos[g.mul(a, b)]).collect())
        .collect();
    validate_table(&rows).expect("a subgroup is a group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use tpp_core::group::{construct_named, GroupRecipe};
    use tpp_core::structure::generated_subgroup;

    #[test]
    fn rational_text_forms() {
        assert_eq!(rational_text(Ratio::new(4, 2)), "2");
        assert_eq!(rational_text(Ratio::new(3, 2)), "3/2");
    }

    #[test]
    fn induced_rotation_subgroup_is_cyclic() {
        let g = construct_named(&GroupRecipe::Dihedral(8)).unwrap();
        let r = generated_subgroup(&g, [1]);
        let h = induced_group(&g, &r);
        assert_eq!(h.order(), 4);
        assert!(h.is_abelian());
        assert_eq!(h.elements().map(|x| h.element_order(x)).max(), Some(4));
    }

    #[test]
    fn selection_filters_and_dedups() {
        let cat = Catalog::shipped().unwrap();
        let sel = Selection {
            labels: vec!["[8,3]".into()],
            table: Some(2),
            order: Some(8),
            ..Selection::default()
        };
        let labels: Vec<_> = sel
            .resolve(&cat)
            .unwrap()
            .iter()
            .map(|e| e.label.clone())
            .collect();
        assert_eq!(labels, ["[8, 3]", "[8, 4]"]);
        assert!(Selection::default().resolve(&cat).is_err());
        let bad = Selection {
            labels: vec!["[9, 9]".into()],
            ..Selection::default()
        };
        assert!(bad.resolve(&cat).is_err());
    }
}
