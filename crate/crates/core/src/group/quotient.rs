use super::{GroupError, GroupTable};
use crate::set::ElementSet;
use crate::structure::{is_closed, normality_witness};

/// A quotient `G/N` together with the canonical projection `G -> G/N`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: GroupTable,
    /// `projection[g]` is the index of the coset `gN`.
    pub projection: Vec<usize>,
    /// Smallest element of each coset.
    pub representatives: Vec<usize>,
}

impl Quotient {
    pub fn image(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.group.order(), set.iter().map(|g| self.projection[g]))
    }

    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.projection.len(),
            (0..self.projection.len()).filter(|&g| set.contains(self.projection[g])),
        )
    }
}

/// Builds `G/N`. Cosets are numbered by their smallest element, so the
/// coset `N` itself is index 0.
pub fn quotient_group(g: &GroupTable, n: &ElementSet) -> Result<Quotient, GroupError> {
    if !is_closed(g, n) {
        return Err(GroupError::NotSubgroup);
    }
    if let Some((conjugator, element)) = normality_witness(g, n) {
        return Err(GroupError::NotNormal {
            conjugator,
            element,
        });
    }
    let order = g.order();
    let mut projection = vec![usize::MAX; order];
    let mut representatives = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let coset = representatives.len();
        representatives.push(x);
        for m in n.iter() {
            projection[g.mul(x, m)] = coset;
        }
    }
    let q = representatives.len();
    let mut table = vec![0u32; q * q];
    for (a, &ra) in representatives.iter().enumerate() {
        for (b, &rb) in representatives.iter().enumerate() {
            table[a * q + b] = projection[g.mul(ra, rb)] as u32;
        }
    }
    let group = GroupTable::from_construction(q, table)?;
    // projection must be a homomorphism
    for x in g.elements() {
        for y in g.elements() {
            if projection[g.mul(x, y)] != group.mul(projection[x], projection[y]) {
                return Err(GroupError::NotNormal {
                    conjugator: x,
                    element: y,
                });
            }
        }
    }
    Ok(Quotient {
        group,
        projection,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_named, GroupRecipe};
    use crate::structure::center;

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let g = construct_named(&GroupRecipe::Dihedral(8)).unwrap();
        let q = quotient_group(&g, &ElementSet::whole(&g)).unwrap();
        assert_eq!(q.group.order(), 1);
    }

    #[test]
    fn quotient_by_trivial_is_same_table() {
        let g = construct_named(&GroupRecipe::Quaternion(8)).unwrap();
        let q = quotient_group(&g, &ElementSet::trivial(&g)).unwrap();
        assert_eq!(q.group.order(), 8);
        assert_eq!(q.projection, (0..8).collect::<Vec<_>>());
        assert_eq!(q.group.rows(), g.rows());
    }

    #[test]
    fn d8_mod_centre_is_klein_four() {
        let g = construct_named(&GroupRecipe::Dihedral(8)).unwrap();
        let z = center(&g);
        let q = quotient_group(&g, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert!(q.group.elements().all(|x| q.group.element_order(x) <= 2));
        // kernel is exactly Z
        let kernel: Vec<usize> = g.elements().filter(|&x| q.projection[x] == 0).collect();
        assert_eq!(kernel, z.to_vec());
    }

    #[test]
    fn rejects_non_normal_and_non_subgroup() {
        let g = construct_named(&GroupRecipe::Dihedral(8)).unwrap();
        // <s> = {1, s}, s = index 4
        let s = ElementSet::from_indices(8, [0, 4]);
        assert!(matches!(
            quotient_group(&g, &s),
            Err(GroupError::NotNormal { .. })
        ));
        let junk = ElementSet::from_indices(8, [0, 1]);
        assert_eq!(
            quotient_group(&g, &junk).unwrap_err(),
            GroupError::NotSubgroup
        );
    }
}
