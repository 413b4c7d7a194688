//! Full subgroup lattice by one-element extension.
//!
//! Starting from the cyclic subgroups, every known subgroup `H` is extended by
//! one representative of each right coset `Hx`, the result closed, and new
//! subgroups queued until no new subgroup appears. Every subgroup `K > H`
//! contains some `x` outside `H`, so walking up from `{1}` reaches all of them.

use std::collections::HashMap;

use super::StructureError;
use crate::bitset::BitSet;
use crate::group::GroupTable;
use crate::set::ElementSet;

/// Default largest order for which the lattice is enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 256;

/// All subgroups of a group, sorted by size then lexicographically by members.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<ElementSet>,
    index: HashMap<BitSet, usize>,
}

struct Node {
    bits: BitSet,
    members: Vec<usize>,
    gens: Vec<usize>,
}

fn extend(g: &GroupTable, base: &Node, x: usize) -> Node {
    let mut bits = base.bits.clone();
    let mut members = base.members.clone();
    let mut gens = base.gens.clone();
    gens.push(x);
    let mut head = 0;
    while head < members.len() {
        let m = members[head];
        for &s in &gens {
            let y = g.mul(m, s);
            if bits.insert(y) {
                members.push(y);
            }
        }
        head += 1;
    }
    Node {
        bits,
        members,
        gens,
    }
}

/// Enumerates every subgroup exactly once, in canonical order.
pub fn all_subgroups(g: &GroupTable, cap: usize) -> Result<Vec<ElementSet>, StructureError> {
    if g.order() > cap {
        return Err(StructureError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    let n = g.order();
    let trivial = Node {
        bits: BitSet::from_indices(n, [0]),
        members: vec![0],
        gens: Vec::new(),
    };
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    let mut queue: Vec<Node> = Vec::new();
    seen.insert(trivial.bits.clone(), ());
    for x in 1..n {
        let cyclic = extend(g, &trivial, x);
        if seen.insert(cyclic.bits.clone(), ()).is_none() {
            queue.push(cyclic);
        }
    }
    queue.push(trivial);
    let mut head = 0;
    while head < queue.len() {
        let mut covered = queue[head].bits.clone();
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            for &h in &queue[head].members {
                covered.insert(g.mul(h, x));
            }
            let next = extend(g, &queue[head], x);
            if seen.insert(next.bits.clone(), ()).is_none() {
                queue.push(next);
            }
        }
        head += 1;
    }
    let mut subgroups: Vec<BitSet> = queue.into_iter().map(|node| node.bits).collect();
    subgroups.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.lex_cmp(b)));
    Ok(subgroups
        .into_iter()
        .map(ElementSet::subgroup_from_bits_unchecked)
        .collect())
}

impl SubgroupLattice {
    pub fn new(g: &GroupTable, cap: usize) -> Result<Self, StructureError> {
        Ok(Self::from_sorted(all_subgroups(g, cap)?))
    }

    fn from_sorted(subgroups: Vec<ElementSet>) -> Self {
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits().clone(), i))
            .collect();
        SubgroupLattice { subgroups, index }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &ElementSet {
        &self.subgroups[i]
    }

    pub fn subgroups(&self) -> &[ElementSet] {
        &self.subgroups
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.subgroups.iter()
    }

    pub fn position(&self, set: &ElementSet) -> Option<usize> {
        self.index.get(set.bits()).copied()
    }

    pub fn position_bits(&self, bits: &BitSet) -> Option<usize> {
        self.index.get(bits).copied()
    }

    /// Indices of the maximal subgroups (proper, contained in no other proper subgroup).
    pub fn maximal_indices(&self) -> Vec<usize> {
        let Some(top) = self.subgroups.last() else {
            return Vec::new();
        };
        let n = top.len();
        let mut out = Vec::new();
        for (i, h) in self.subgroups.iter().enumerate() {
            let size = h.len();
            if size == n {
                continue;
            }
            let covered = self.subgroups[i + 1..].iter().any(|k| {
                let ks = k.len();
                ks > size && ks < n && ks % size == 0 && h.is_subset(k)
            });
            if !covered {
                out.push(i);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_named, GroupRecipe};
    use crate::structure::is_closed;

    /// Filters every subset containing the identity for closure.
    fn brute_force_subgroups(g: &GroupTable) -> Vec<BitSet> {
        let n = g.order();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 0u32..(1 << (n - 1)) {
            let members = std::iter::once(0).chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1));
            let set = ElementSet::from_indices(n, members);
            if n % set.len() == 0 && is_closed(g, &set) {
                out.push(set.bits().clone());
            }
        }
        out.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.lex_cmp(b)));
        out
    }

    fn bits(v: &[ElementSet]) -> Vec<BitSet> {
        v.iter().map(|s| s.bits().clone()).collect()
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        for p in [2, 3, 5, 7, 11] {
            let g = construct_named(&GroupRecipe::Cyclic(p)).unwrap();
            assert_eq!(all_subgroups(&g, DEFAULT_LATTICE_CAP).unwrap().len(), 2);
        }
    }

    #[test]
    fn q8_and_d8_counts_match_brute_force() {
        let q8 = construct_named(&GroupRecipe::Quaternion(8)).unwrap();
        let lat = all_subgroups(&q8, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(lat.len(), 6);
        assert_eq!(bits(&lat), brute_force_subgroups(&q8));
        let sizes: Vec<usize> = lat.iter().map(ElementSet::len).collect();
        assert_eq!(sizes, vec![1, 2, 4, 4, 4, 8]);

        let d8 = construct_named(&GroupRecipe::Dihedral(8)).unwrap();
        let lat = all_subgroups(&d8, DEFAULT_LATTICE_CAP).unwrap();
        assert_eq!(lat.len(), 10);
        assert_eq!(bits(&lat), brute_force_subgroups(&d8));
    }

    #[test]
    fn matches_brute_force_up_to_order_16() {
        let recipes = [
            GroupRecipe::Cyclic(1),
            GroupRecipe::Cyclic(12),
            GroupRecipe::Dihedral(12),
            GroupRecipe::Dihedral(16),
            GroupRecipe::Quaternion(12),
            GroupRecipe::Quaternion(16),
            GroupRecipe::ElementaryAbelian { p: 2, rank: 4 },
            GroupRecipe::DirectProduct(vec![GroupRecipe::Cyclic(2), GroupRecipe::Dihedral(8)]),
            GroupRecipe::DirectProduct(vec![GroupRecipe::Cyclic(4), GroupRecipe::Cyclic(4)]),
        ];
        for r in recipes {
            let g = construct_named(&r).unwrap();
            let lat = all_subgroups(&g, DEFAULT_LATTICE_CAP).unwrap();
            assert_eq!(bits(&lat), brute_force_subgroups(&g), "{r:?}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = construct_named(&GroupRecipe::Cyclic(20)).unwrap();
        assert!(matches!(
            all_subgroups(&g, 16),
            Err(StructureError::CapExceeded { order: 20, cap: 16 })
        ));
    }

    #[test]
    fn maximal_subgroups_of_q8() {
        let q8 = construct_named(&GroupRecipe::Quaternion(8)).unwrap();
        let lat = SubgroupLattice::new(&q8, DEFAULT_LATTICE_CAP).unwrap();
        let maximal = lat.maximal_indices();
        assert_eq!(maximal.len(), 3);
        assert!(maximal.iter().all(|&i| lat.get(i).len() == 4));
        assert_eq!(lat.position(lat.get(3)), Some(3));
    }
}
