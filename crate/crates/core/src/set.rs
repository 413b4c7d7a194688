use std::fmt;

use crate::bitset::BitSet;
use crate::group::GroupTable;

/// A set of element indices of one parent group, tagged as a subgroup or
/// an arbitrary subset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: BitSet,
    is_subgroup: bool,
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.is_subgroup {
            "Subgroup"
        } else {
            "Subset"
        };
        write!(f, "{tag}{:?}", self.bits)
    }
}

impl ElementSet {
    /// Arbitrary subset of a group of the given order.
    ///
    /// Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(order: usize, members: I) -> Self {
        let mut bits = BitSet::new(order);
        for m in members {
            assert!(m < order, "element {m} outside group of order {order}");
            bits.insert(m);
        }
        ElementSet {
            bits,
            is_subgroup: false,
        }
    }

    pub fn from_bits(bits: BitSet) -> Self {
        ElementSet {
            bits,
            is_subgroup: false,
        }
    }

    pub(crate) fn from_indices_subgroup_unchecked<I: IntoIterator<Item = usize>>(
        order: usize,
        members: I,
    ) -> Self {
        ElementSet {
            is_subgroup: true,
            ..Self::from_indices(order, members)
        }
    }

    pub(crate) fn subgroup_from_bits_unchecked(bits: BitSet) -> Self {
        ElementSet {
            bits,
            is_subgroup: true,
        }
    }

    /// Tags the set as a subgroup if it is one.
    pub fn into_subgroup(self, g: &GroupTable) -> Option<Self> {
        crate::structure::is_closed(g, &self).then_some(ElementSet {
            is_subgroup: true,
            ..self
        })
    }

    pub fn trivial(g: &GroupTable) -> Self {
        Self::from_indices_subgroup_unchecked(g.order(), [0])
    }

    pub fn whole(g: &GroupTable) -> Self {
        ElementSet {
            bits: BitSet::full(g.order()),
            is_subgroup: true,
        }
    }

    #[inline]
    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    #[inline]
    pub fn is_subgroup(&self) -> bool {
        self.is_subgroup
    }

    pub fn parent_order(&self) -> usize {
        self.bits.capacity()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// True iff the set is exactly `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.bits.contains(0) && self.bits.count() == 1
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.bits.contains(g)
    }

    pub fn iter(&self) -> crate::bitset::Iter<'_> {
        self.bits.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.to_vec()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Intersection; two subgroups intersect in a subgroup.
    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            bits: self.bits.intersection(&other.bits),
            is_subgroup: self.is_subgroup && other.is_subgroup,
        }
    }

    /// Right translate `X g`.
    pub fn translate_right(&self, grp: &GroupTable, g: usize) -> ElementSet {
        ElementSet::from_indices(grp.order(), self.iter().map(|x| grp.mul(x, g)))
    }

    /// `g^-1 X g`.
    pub fn conjugate(&self, grp: &GroupTable, g: usize) -> ElementSet {
        ElementSet {
            is_subgroup: self.is_subgroup,
            ..ElementSet::from_indices(grp.order(), self.iter().map(|x| grp.conj(x, g)))
        }
    }
}
