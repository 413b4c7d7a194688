//! Which hypotheses of the ρ₀ bounds a group satisfies, and the bounds
//! they predict.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::group::GroupTable;
use crate::structure::StructureCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PGroup {
    pub p: usize,
    /// `|G| = p^n`.
    pub n: u32,
}

/// `Some` when `order = p^n` for a prime `p` and `n >= 1`.
pub fn prime_power(order: usize) -> Option<PGroup> {
    if order < 2 {
        return None;
    }
    let p = (2..=order).find(|d| order % d == 0)?;
    let mut m = order;
    let mut n = 0;
    while m % p == 0 {
        m /= p;
        n += 1;
    }
    (m == 1).then_some(PGroup { p, n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupClassification {
    pub order: usize,
    pub is_abelian: bool,
    pub p_group: Option<PGroup>,
    /// `None` when not nilpotent.
    pub nilpotency_class: Option<usize>,
    pub centre_order: usize,
    pub commutator_order: usize,
    pub frattini_order: usize,
    /// p-group whose commutator subgroup has order `p` (hence is cyclic).
    pub cyclic_commutator_of_order_p: bool,
    pub extraspecial: bool,
    pub centre_index: usize,
    /// Nonabelian p-group with `p^2 <= |G:Z(G)| <= p^3`.
    pub large_centre_band: bool,
    /// Nonabelian p-group with an abelian maximal subgroup (index `p`).
    pub has_abelian_index_p_subgroup: bool,
    /// Nonabelian p-group with an abelian subgroup of index `p` or a centre
    /// of index `p^3`; for such groups this is `cd(G) = {1, p}`.
    pub cd_one_p_criterion: bool,
    /// Catalog metadata only, never computed.
    pub declared_cd: Option<Vec<usize>>,
}

pub fn classify_group(g: &GroupTable, cache: &StructureCache) -> GroupClassification {
    let order = g.order();
    let is_abelian = g.is_abelian();
    let p_group = prime_power(order);
    let centre_order = cache.center.len();
    let commutator_order = cache.commutator_subgroup.len();
    let centre_index = order / centre_order;
    let nonabelian_p = p_group.filter(|_| !is_abelian);

    let cyclic_commutator_of_order_p = nonabelian_p.is_some_and(|pg| commutator_order == pg.p);
    let extraspecial = nonabelian_p.is_some_and(|pg| {
        centre_order == pg.p
            && cache.commutator_subgroup == cache.center
            && cache.frattini == cache.center
    });
    let large_centre_band =
        nonabelian_p.is_some_and(|pg| pg.p * pg.p <= centre_index && centre_index <= pg.p.pow(3));
    let has_abelian_index_p_subgroup = nonabelian_p.is_some_and(|pg| {
        cache.maximal_subgroups.iter().any(|&i| {
            let h = cache.lattice.get(i);
            h.len() * pg.p == order && {
                let m = h.to_vec();
                m.iter()
                    .all(|&a| m.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            }
        })
    });
    let cd_one_p_criterion =
        nonabelian_p.is_some_and(|pg| has_abelian_index_p_subgroup || centre_index == pg.p.pow(3));

    GroupClassification {
        order,
        is_abelian,
        p_group,
        nilpotency_class: cache.nilpotency_class.class(),
        centre_order,
        commutator_order,
        frattini_order: cache.frattini.len(),
        cyclic_commutator_of_order_p,
        extraspecial,
        centre_index,
        large_centre_band,
        has_abelian_index_p_subgroup,
        cd_one_p_criterion,
        declared_cd: None,
    }
}

impl GroupClassification {
    pub fn with_declared_cd(mut self, cd: Vec<usize>) -> Self {
        self.declared_cd = Some(cd);
        self
    }

    pub fn is_class_two(&self) -> bool {
        self.nilpotency_class == Some(2)
    }

    /// Implications that must hold between the flags; returns the violated ones.
    pub fn inconsistencies(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.extraspecial && !self.cyclic_commutator_of_order_p {
            out.push("extraspecial without commutator subgroup of order p");
        }
        if self.extraspecial
            && !(self.commutator_order == self.centre_order
                && self.frattini_order == self.centre_order)
        {
            out.push("extraspecial without G' = Z(G) = Phi(G)");
        }
        if self.cyclic_commutator_of_order_p && !self.is_class_two() {
            out.push("commutator subgroup of order p without class 2");
        }
        let p3 = self.p_group.map(|pg| pg.p.pow(3));
        if self.cd_one_p_criterion
            != (self.has_abelian_index_p_subgroup || Some(self.centre_index) == p3)
        {
            out.push("cd criterion disagrees with its definition");
        }
        if self.is_abelian && (self.large_centre_band || self.cd_one_p_criterion) {
            out.push("abelian group flagged by a nonabelian hypothesis");
        }
        out
    }

    /// Declared `cd(G) = {1, p}` for a p-group while the structural
    /// criterion says otherwise, or the reverse.
    pub fn cd_discrepancy(&self) -> Option<String> {
        let pg = self.p_group?;
        let declared = self.declared_cd.as_ref()?;
        let declared_one_p = declared.as_slice() == [1, pg.p];
        (declared_one_p != self.cd_one_p_criterion).then(|| {
            format!(
                "declared cd(G) = {{{}}} but the structural criterion gives {}",
                declared
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
                if self.cd_one_p_criterion {
                    format!("cd(G) = {{1, {}}}", pg.p)
                } else {
                    format!("cd(G) != {{1, {}}}", pg.p)
                }
            )
        })
    }
}

/// The result a bound is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// Abelian groups: `ρ₀ = 1`.
    Abelian,
    /// p-groups of order at most `p^4`: `ρ₀ = 1`.
    OrderAtMostP4,
    /// Class-2 p-groups with `p^2 <= |G:Z(G)| <= p^3`: `ρ₀ = 1`.
    LargeCentre,
    /// Class-2 p-groups with `cd(G) = {1, p}`: `ρ₀ = 1`.
    SmallCharacterDegrees,
    /// p-groups with commutator subgroup of order `p`: `ρ₀ <= p`.
    CyclicCommutator,
    /// Extraspecial groups: `ρ₀ <= p`.
    Extraspecial,
    /// Nilpotency class 2: `ρ₀ < sqrt|G:Z(G)|`.
    ClassTwo,
}

impl Theorem {
    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Abelian => "abelian",
            Theorem::OrderAtMostP4 => "order-at-most-p4",
            Theorem::LargeCentre => "large-centre",
            Theorem::SmallCharacterDegrees => "cd-one-p",
            Theorem::CyclicCommutator => "cyclic-commutator",
            Theorem::Extraspecial => "extraspecial",
            Theorem::ClassTwo => "class-two",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundKind {
    /// `ρ₀ < sqrt(centre_index)`.
    StrictSqrt {
        centre_index: usize,
    },
    AtMostP {
        p: usize,
    },
    ExactlyOne,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::StrictSqrt { centre_index } => {
                write!(f, "rho0 < {}", sqrt_display(*centre_index))
            }
            BoundKind::AtMostP { p } => write!(f, "rho0 <= {p}"),
            BoundKind::ExactlyOne => f.write_str("rho0 = 1"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedBound {
    pub theorem: Theorem,
    pub bound: BoundKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    /// Exact slack: `centre_index - ρ₀²`, `p - ρ₀` or `ρ₀ - 1`.
    pub margin: String,
    /// The bound is met with equality (`ρ₀ = p`).
    pub attained: bool,
}

impl PredictedBound {
    /// Exact comparison; the square-root bound compares `ρ₀²` with the index.
    pub fn check(&self, rho0: Ratio<u64>) -> BoundCheck {
        let (num, den) = (*rho0.numer() as u128, *rho0.denom() as u128);
        match self.bound {
            BoundKind::StrictSqrt { centre_index } => {
                let idx = centre_index as u128;
                BoundCheck {
                    holds: num * num < idx * den * den,
                    margin: signed_ratio(idx * den * den, num * num, den * den),
                    attained: false,
                }
            }
            BoundKind::AtMostP { p } => {
                let p = p as u128;
                BoundCheck {
                    holds: num <= p * den,
                    margin: signed_ratio(p * den, num, den),
                    attained: num == p * den,
                }
            }
            BoundKind::ExactlyOne => BoundCheck {
                holds: num == den,
                margin: signed_ratio(num, den, den),
                attained: num == den,
            },
        }
    }
}

/// `(a - b) / d` in lowest terms.
fn signed_ratio(a: u128, b: u128, d: u128) -> String {
    let (neg, diff) = if a >= b {
        (false, a - b)
    } else {
        (true, b - a)
    };
    let r = Ratio::new(diff, d);
    let body = if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    };
    if neg && diff != 0 {
        format!("-{body}")
    } else {
        body
    }
}

/// Every bound whose hypotheses hold, tightest first.
pub fn predicted_bounds(c: &GroupClassification) -> Vec<PredictedBound> {
    let mut out = Vec::new();
    let mut push = |theorem, bound| out.push(PredictedBound { theorem, bound });
    if c.is_abelian {
        push(Theorem::Abelian, BoundKind::ExactlyOne);
    }
    if let Some(pg) = c.p_group {
        if pg.n <= 4 {
            push(Theorem::OrderAtMostP4, BoundKind::ExactlyOne);
        }
        if c.is_class_two() && c.large_centre_band {
            push(Theorem::LargeCentre, BoundKind::ExactlyOne);
        }
        if c.is_class_two() && c.cd_one_p_criterion {
            push(Theorem::SmallCharacterDegrees, BoundKind::ExactlyOne);
        }
        if c.cyclic_commutator_of_order_p {
            push(Theorem::CyclicCommutator, BoundKind::AtMostP { p: pg.p });
        }
        if c.extraspecial {
            push(Theorem::Extraspecial, BoundKind::AtMostP { p: pg.p });
        }
    }
    if c.is_class_two() {
        push(
            Theorem::ClassTwo,
            BoundKind::StrictSqrt {
                centre_index: c.centre_index,
            },
        );
    }
    out
}

/// The first entry of [`predicted_bounds`], if any.
pub fn predicted_bound(c: &GroupClassification) -> Option<PredictedBound> {
    predicted_bounds(c).into_iter().next()
}

/// `sqrt(m)` as `k` or `k√r` with `r` square-free.
pub fn sqrt_display(m: usize) -> String {
    let mut k = 1;
    let mut r = m;
    let mut d = 2;
    while d * d <= r {
        while r % (d * d) == 0 {
            r /= d * d;
            k *= d;
        }
        d += 1;
    }
    match (k, r) {
        (k, 1) => k.to_string(),
        (1, r) => format!("√{r}"),
        (k, r) => format!("{k}√{r}"),
    }
}
