//! The triple product property, decided three independent ways, and the
//! searches for maximal subgroup and subset triples.
//!
//! `(S, T, U)` has the TPP when `s' s^-1 t' t^-1 u' u^-1 = 1` forces
//! `s = s'`, `t = t'` and `u = u'`.
//! [`check_definition`] evaluates that literally, [`check_sets`] uses the
//! quotient-set form `Q(S) ∩ Q(T)Q(U) = Q(T) ∩ Q(U) = {1}` and
//! [`check_subgroups`] the subgroup form `S ∩ TU = T ∩ U = {1}`.

mod report;
mod search;
mod subsets;

pub use report::{SearchStats, TppReport};
pub use search::{search_beta0, SearchBudget, SearchOptions, DEFAULT_WITNESS_CAP};
pub use subsets::{search_beta_subsets, SubsetReport, SubsetSearchOptions, DEFAULT_SUBSET_CAP};

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::group::{quotient_group, GroupError, GroupTable};
use crate::set::ElementSet;
use crate::structure::{is_closed, set_product};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Member {
    S,
    T,
    U,
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Member::S => "S",
            Member::T => "T",
            Member::U => "U",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TppError {
    #[error("empty set")]
    EmptySet,
    #[error("member {0} is not a subgroup")]
    NotSubgroup(Member),
    #[error("normal subgroup is not contained in S")]
    NotContained,
    #[error("group of order {order} exceeds the subset-search cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `Q(X) = {x' x^-1 : x, x' in X}`.
pub fn quotient_set(g: &GroupTable, x: &ElementSet) -> Result<ElementSet, TppError> {
    if x.is_empty() {
        return Err(TppError::EmptySet);
    }
    let members = x.to_vec();
    let inverses: Vec<usize> = members.iter().map(|&m| g.inv(m)).collect();
    Ok(ElementSet::from_indices(
        g.order(),
        members
            .iter()
            .flat_map(|&a| inverses.iter().map(move |&b| g.mul(a, b))),
    ))
}

/// Three non-empty sets of one group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TppTriple {
    pub s: ElementSet,
    pub t: ElementSet,
    pub u: ElementSet,
}

impl TppTriple {
    pub fn new(s: ElementSet, t: ElementSet, u: ElementSet) -> Result<Self, TppError> {
        if s.is_empty() || t.is_empty() || u.is_empty() {
            return Err(TppError::EmptySet);
        }
        Ok(TppTriple { s, t, u })
    }

    /// `(|S|, |T|, |U|)`.
    pub fn parameters(&self) -> (usize, usize, usize) {
        (self.s.len(), self.t.len(), self.u.len())
    }

    pub fn size(&self) -> u64 {
        let (a, b, c) = self.parameters();
        (a * b * c) as u64
    }

    /// Every member contains the identity.
    pub fn is_basic(&self) -> bool {
        self.s.contains(0) && self.t.contains(0) && self.u.contains(0)
    }

    pub fn all_subgroups(&self) -> bool {
        self.s.is_subgroup() && self.t.is_subgroup() && self.u.is_subgroup()
    }

    pub fn members(&self) -> [&ElementSet; 3] {
        [&self.s, &self.t, &self.u]
    }

    /// The six orderings of the members.
    pub fn permutations(&self) -> [TppTriple; 6] {
        let (s, t, u) = (&self.s, &self.t, &self.u);
        let mk = |a: &ElementSet, b: &ElementSet, c: &ElementSet| TppTriple {
            s: a.clone(),
            t: b.clone(),
            u: c.clone(),
        };
        [
            mk(s, t, u),
            mk(s, u, t),
            mk(t, s, u),
            mk(t, u, s),
            mk(u, s, t),
            mk(u, t, s),
        ]
    }

    pub fn to_indices(&self) -> [Vec<usize>; 3] {
        [self.s.to_vec(), self.t.to_vec(), self.u.to_vec()]
    }
}

/// Literal evaluation over all `(s, s', t, t', u, u')`. The oracle.
pub fn check_definition(g: &GroupTable, t: &TppTriple) -> bool {
    let (ss, ts, us) = (t.s.to_vec(), t.t.to_vec(), t.u.to_vec());
    for &s in &ss {
        let s_inv = g.inv(s);
        for &s2 in &ss {
            let a = g.mul(s2, s_inv);
            for &t1 in &ts {
                let t_inv = g.inv(t1);
                for &t2 in &ts {
                    let b = g.mul(g.mul(a, t2), t_inv);
                    for &u1 in &us {
                        let u_inv = g.inv(u1);
                        for &u2 in &us {
                            if g.mul(g.mul(b, u2), u_inv) == 0 && !(s == s2 && t1 == t2 && u1 == u2)
                            {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// `Q(S) ∩ Q(T)Q(U) = {1}` and `Q(T) ∩ Q(U) = {1}`.
pub fn check_sets(g: &GroupTable, t: &TppTriple) -> bool {
    let q = |x: &ElementSet| quotient_set(g, x).expect("triple members are non-empty");
    let (qs, qt, qu) = (q(&t.s), q(&t.t), q(&t.u));
    if !qt.intersection(&qu).is_trivial() {
        return false;
    }
    qs.intersection(&set_product(g, &qt, &qu)).is_trivial()
}

/// `S ∩ TU = {1}` and `T ∩ U = {1}`; members must be subgroups.
pub fn check_subgroups(g: &GroupTable, t: &TppTriple) -> Result<bool, TppError> {
    for (m, x) in [(Member::S, &t.s), (Member::T, &t.t), (Member::U, &t.u)] {
        if !x.is_subgroup() && !is_closed(g, x) {
            return Err(TppError::NotSubgroup(m));
        }
    }
    if !t.t.intersection(&t.u).is_trivial() {
        return Ok(false);
    }
    Ok(t.s.intersection(&set_product(g, &t.t, &t.u)).is_trivial())
}

/// Image of a subgroup triple in `G/N` for normal `N ⊆ S`:
/// `(S/N, TN/N, UN/N)`, together with the quotient group.
pub fn quotient_triple(
    g: &GroupTable,
    t: &TppTriple,
    n: &ElementSet,
) -> Result<(GroupTable, TppTriple), TppError> {
    if !n.is_subset(&t.s) {
        return Err(TppError::NotContained);
    }
    let q = quotient_group(g, n)?;
    let image = |x: &ElementSet| {
        ElementSet::from_bits(q.image(x).bits().clone())
            .into_subgroup(&q.group)
            .expect("homomorphic image of a subgroup")
    };
    let triple = TppTriple {
        s: image(&t.s),
        t: image(&t.t),
        u: image(&t.u),
    };
    Ok((q.group, triple))
}

/// Definitional labels of a triple against known capacities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripleFlags {
    /// `min(|S|, |T|, |U|) > 1`.
    pub proper: bool,
    /// `|S||T||U| <= |G|`.
    pub trivial_size: bool,
    /// Judged against the capacity matching the triple's kind: β₀ for
    /// subgroup triples, β otherwise. `None` when that capacity is unknown.
    pub maximal: Option<bool>,
    /// Size equals β₀, when known and the triple consists of subgroups.
    pub maximal_beta0: Option<bool>,
    /// Size equals β, when known.
    pub maximal_beta: Option<bool>,
}

pub fn classify_triple(g: &GroupTable, t: &TppTriple, report: &TppReport) -> TripleFlags {
    let (a, b, c) = t.parameters();
    let size = t.size();
    let subgroup = t.all_subgroups();
    let exact_beta0 = !report.budget_exhausted;
    let maximal_beta0 = (subgroup && exact_beta0).then_some(size == report.beta0);
    let maximal_beta = report.beta.map(|beta| size == beta);
    TripleFlags {
        proper: a.min(b).min(c) > 1,
        trivial_size: size <= g.order() as u64,
        maximal: if subgroup {
            maximal_beta0
        } else {
            maximal_beta
        },
        maximal_beta0,
        maximal_beta,
    }
}

/// `beta / |G|` in lowest terms.
pub fn ratio(beta: u64, order: usize) -> Ratio<u64> {
    Ratio::new(beta, order as u64)
}
