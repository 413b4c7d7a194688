//! Structural landmarks of a finite group: centre, centralisers, normalisers,
//! commutator and Frattini subgroups, normal cores, the upper central series
//! and the subgroup lattice.

mod lattice;

pub use lattice::{all_subgroups, SubgroupLattice, DEFAULT_LATTICE_CAP};

use thiserror::Error;

use crate::bitset::BitSet;
use crate::group::{quotient_group, GroupError, GroupTable};
use crate::set::ElementSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("group of order {order} exceeds the lattice cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NilpotencyClass {
    Nilpotent(usize),
    NotNilpotent,
}

impl NilpotencyClass {
    pub fn class(self) -> Option<usize> {
        match self {
            NilpotencyClass::Nilpotent(c) => Some(c),
            NilpotencyClass::NotNilpotent => None,
        }
    }
}

impl std::fmt::Display for NilpotencyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NilpotencyClass::Nilpotent(c) => write!(f, "{c}"),
            NilpotencyClass::NotNilpotent => f.write_str("not nilpotent"),
        }
    }
}

/// Contains the identity and is closed under the product (hence a subgroup,
/// by finiteness).
pub fn is_closed(g: &GroupTable, x: &ElementSet) -> bool {
    if !x.contains(0) {
        return false;
    }
    let members = x.to_vec();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| x.contains(g.mul(a, b))))
}

/// First `(conjugator, element)` with `conjugator^-1 element conjugator` outside `h`.
pub fn normality_witness(g: &GroupTable, h: &ElementSet) -> Option<(usize, usize)> {
    for x in g.elements() {
        for m in h.iter() {
            if !h.contains(g.conj(m, x)) {
                return Some((x, m));
            }
        }
    }
    None
}

pub fn is_normal(g: &GroupTable, h: &ElementSet) -> bool {
    normality_witness(g, h).is_none()
}

fn close(g: &GroupTable, seed: impl IntoIterator<Item = usize>) -> BitSet {
    let gens: Vec<usize> = seed.into_iter().collect();
    let mut bits = BitSet::from_indices(g.order(), [0]);
    let mut members = vec![0];
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
    bits
}

/// Smallest subgroup containing `seed`.
pub fn generated_subgroup(g: &GroupTable, seed: impl IntoIterator<Item = usize>) -> ElementSet {
    ElementSet::subgroup_from_bits_unchecked(close(g, seed))
}

pub fn centralizer(g: &GroupTable, x: &ElementSet) -> ElementSet {
    let members = x.to_vec();
    ElementSet::from_indices_subgroup_unchecked(
        g.order(),
        g.elements()
            .filter(|&c| members.iter().all(|&m| g.mul(c, m) == g.mul(m, c))),
    )
}

pub fn center(g: &GroupTable) -> ElementSet {
    centralizer(g, &ElementSet::whole(g))
}

pub fn normalizer(g: &GroupTable, h: &ElementSet) -> Result<ElementSet, StructureError> {
    if !is_closed(g, h) {
        return Err(StructureError::NotSubgroup);
    }
    Ok(ElementSet::from_indices_subgroup_unchecked(
        g.order(),
        g.elements()
            .filter(|&c| h.iter().all(|m| h.contains(g.conj(m, c)))),
    ))
}

pub fn commutator_subgroup(g: &GroupTable) -> ElementSet {
    let mut commutators = BitSet::new(g.order());
    for x in g.elements() {
        for y in g.elements() {
            commutators.insert(g.commutator(x, y));
        }
    }
    generated_subgroup(g, commutators.iter())
}

/// `XY = {xy}`.
pub fn set_product(g: &GroupTable, x: &ElementSet, y: &ElementSet) -> ElementSet {
    let mut bits = BitSet::new(g.order());
    let ys = y.to_vec();
    for a in x.iter() {
        for &b in &ys {
            bits.insert(g.mul(a, b));
        }
    }
    ElementSet::from_bits(bits)
}

/// Largest normal subgroup inside `h`: the intersection of its conjugates.
pub fn normal_core(g: &GroupTable, h: &ElementSet) -> Result<ElementSet, StructureError> {
    if !is_closed(g, h) {
        return Err(StructureError::NotSubgroup);
    }
    let mut core = h.bits().clone();
    for x in g.elements() {
        core.intersect_with(h.conjugate(g, x).bits());
    }
    Ok(ElementSet::subgroup_from_bits_unchecked(core))
}

/// Intersection of the given maximal subgroups (`{1}` for the trivial group).
pub fn frattini(g: &GroupTable, lattice: &SubgroupLattice) -> ElementSet {
    let mut phi = BitSet::full(g.order());
    let maximal = lattice.maximal_indices();
    if maximal.is_empty() {
        return ElementSet::trivial(g);
    }
    for i in maximal {
        phi.intersect_with(lattice.get(i).bits());
    }
    ElementSet::subgroup_from_bits_unchecked(phi)
}

/// `Z_0 = {1} < Z_1 < ...`, each `Z_{i+1}/Z_i = Z(G/Z_i)`, up to the
/// first repeated term (which is not repeated in the output).
pub fn upper_central_series(g: &GroupTable) -> Vec<ElementSet> {
    let mut series = vec![ElementSet::trivial(g)];
    loop {
        let last = series.last().unwrap();
        if last.len() == g.order() {
            break;
        }
        let q = quotient_group(g, last).expect("upper central terms are normal");
        let zq = center(&q.group);
        let next = ElementSet::subgroup_from_bits_unchecked(q.preimage(&zq).bits().clone());
        if next.len() == last.len() {
            break;
        }
        series.push(next);
    }
    series
}

/// Class 0 for the trivial group, 1 for nontrivial abelian groups.
pub fn nilpotency_class(g: &GroupTable) -> NilpotencyClass {
    class_from_series(g, &upper_central_series(g))
}

fn class_from_series(g: &GroupTable, series: &[ElementSet]) -> NilpotencyClass {
    if series.last().is_some_and(|z| z.len() == g.order()) {
        NilpotencyClass::Nilpotent(series.len() - 1)
    } else {
        NilpotencyClass::NotNilpotent
    }
}

/// Computed landmarks of one group, write-once.
#[derive(Debug, Clone)]
pub struct StructureCache {
    pub center: ElementSet,
    pub commutator_subgroup: ElementSet,
    pub frattini: ElementSet,
    pub upper_central_series: Vec<ElementSet>,
    pub nilpotency_class: NilpotencyClass,
    pub lattice: SubgroupLattice,
    /// Indices into `lattice`.
    pub maximal_subgroups: Vec<usize>,
}

impl StructureCache {
    pub fn compute(g: &GroupTable) -> Result<Self, StructureError> {
        Self::compute_with_cap(g, DEFAULT_LATTICE_CAP)
    }

    pub fn compute_with_cap(g: &GroupTable, cap: usize) -> Result<Self, StructureError> {
        let lattice = SubgroupLattice::new(g, cap)?;
        let maximal_subgroups = lattice.maximal_indices();
        let frattini = frattini(g, &lattice);
        let upper_central_series = upper_central_series(g);
        let nilpotency_class = class_from_series(g, &upper_central_series);
        Ok(StructureCache {
            center: upper_central_series
                .get(1)
                .cloned()
                .unwrap_or_else(|| ElementSet::trivial(g)),
            commutator_subgroup: commutator_subgroup(g),
            frattini,
            upper_central_series,
            nilpotency_class,
            lattice,
            maximal_subgroups,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{construct_named, GroupRecipe, PermutationGroup, DEFAULT_CLOSURE_CAP};

    fn d8() -> GroupTable {
        construct_named(&GroupRecipe::Dihedral(8)).unwrap()
    }

    fn q8() -> GroupTable {
        construct_named(&GroupRecipe::Quaternion(8)).unwrap()
    }

    fn s3() -> GroupTable {
        PermutationGroup::new(3, vec![vec![1, 0, 2], vec![1, 2, 0]])
            .unwrap()
            .closure(DEFAULT_CLOSURE_CAP)
            .unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let c6 = construct_named(&GroupRecipe::Cyclic(6)).unwrap();
        assert!(generated_subgroup(&c6, []).is_trivial());
        assert!(generated_subgroup(&c6, [0]).is_trivial());
        assert_eq!(generated_subgroup(&c6, [2]).len(), 3);
        let g = d8();
        // r^2 = 2, s = 4
        let v = generated_subgroup(&g, [2, 4]);
        assert_eq!(v.to_vec(), vec![0, 2, 4, 6]);
        assert!(v.iter().all(|x| g.element_order(x) <= 2));
    }

    #[test]
    fn centres() {
        let c5 = construct_named(&GroupRecipe::Cyclic(5)).unwrap();
        assert_eq!(center(&c5).len(), 5);
        assert_eq!(center(&d8()).len(), 2);
        let c3q8 = construct_named(&GroupRecipe::DirectProduct(vec![
            GroupRecipe::Cyclic(3),
            GroupRecipe::Quaternion(8),
        ]))
        .unwrap();
        assert_eq!(center(&c3q8).len(), 6);
    }

    #[test]
    fn centralizer_inside_normalizer() {
        let g = d8();
        let lat = SubgroupLattice::new(&g, DEFAULT_LATTICE_CAP).unwrap();
        for h in lat.iter() {
            let c = centralizer(&g, h);
            let n = normalizer(&g, h).unwrap();
            assert!(c.is_subset(&n));
            assert_eq!(is_normal(&g, h), n.len() == g.order());
        }
        assert_eq!(
            normalizer(&g, &ElementSet::from_indices(8, [0, 1])),
            Err(StructureError::NotSubgroup)
        );
    }

    #[test]
    fn commutator_subgroups() {
        let c12 = construct_named(&GroupRecipe::Cyclic(12)).unwrap();
        assert!(commutator_subgroup(&c12).is_trivial());
        for g in [d8(), q8()] {
            let d = commutator_subgroup(&g);
            assert_eq!(d.len(), 2);
            let q = quotient_group(&g, &d).unwrap();
            assert!(q.group.is_abelian());
        }
    }

    #[test]
    fn frattini_and_core() {
        let g = q8();
        let lat = SubgroupLattice::new(&g, DEFAULT_LATTICE_CAP).unwrap();
        let phi = frattini(&g, &lat);
        assert_eq!(phi, center(&g));
        assert_eq!(phi.len(), 2);
        let z = center(&g);
        assert_eq!(normal_core(&g, &z).unwrap(), z);

        let d = d8();
        let s = generated_subgroup(&d, [4]);
        assert!(normal_core(&d, &s).unwrap().is_trivial());
        let trivial = construct_named(&GroupRecipe::Cyclic(1)).unwrap();
        let lat = SubgroupLattice::new(&trivial, DEFAULT_LATTICE_CAP).unwrap();
        assert!(frattini(&trivial, &lat).is_trivial());
    }

    #[test]
    fn nilpotency_classes() {
        let trivial = construct_named(&GroupRecipe::Cyclic(1)).unwrap();
        assert_eq!(nilpotency_class(&trivial), NilpotencyClass::Nilpotent(0));
        let c6 = construct_named(&GroupRecipe::Cyclic(6)).unwrap();
        assert_eq!(nilpotency_class(&c6), NilpotencyClass::Nilpotent(1));
        assert_eq!(nilpotency_class(&d8()), NilpotencyClass::Nilpotent(2));
        assert_eq!(nilpotency_class(&s3()), NilpotencyClass::NotNilpotent);
        assert_eq!(upper_central_series(&s3()).len(), 1);
        let d16 = construct_named(&GroupRecipe::Dihedral(16)).unwrap();
        assert_eq!(nilpotency_class(&d16), NilpotencyClass::Nilpotent(3));
    }

    #[test]
    fn set_products_and_normality() {
        let g = d8();
        let r = generated_subgroup(&g, [1]);
        let s = generated_subgroup(&g, [4]);
        assert_eq!(set_product(&g, &r, &s).len(), 8);
        assert_eq!(
            set_product(&g, &s, &ElementSet::trivial(&g)).to_vec(),
            s.to_vec()
        );
        assert!(is_normal(&g, &r));
        assert!(!is_normal(&g, &s));
        let (x, m) = normality_witness(&g, &s).unwrap();
        assert!(!s.contains(g.conj(m, x)));
    }

    #[test]
    fn extraspecial_landmarks_coincide() {
        let d8r = GroupRecipe::Dihedral(8);
        let g = construct_named(&GroupRecipe::CentralProduct {
            left: Box::new(d8r.clone()),
            left_central: 2,
            right: Box::new(d8r),
            right_central: 2,
        })
        .unwrap();
        let cache = StructureCache::compute(&g).unwrap();
        assert_eq!(cache.center, cache.commutator_subgroup);
        assert_eq!(cache.center, cache.frattini);
        assert_eq!(cache.center.len(), 2);
        assert_eq!(cache.nilpotency_class, NilpotencyClass::Nilpotent(2));
    }
}
