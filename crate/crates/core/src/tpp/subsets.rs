//! Exhaustive β search over basic subset triples.
//!
//! Right translation leaves `Q(X)` unchanged, so every TPP triple translates
//! to one whose members all contain the identity. Members are encoded as
//! 64-bit masks over the elements and triples are enumerated once per
//! unordered member set, using the set form of the property.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use super::{SearchBudget, SearchStats, TppError};
use crate::group::GroupTable;

/// Default largest order for the subset search.
pub const DEFAULT_SUBSET_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSearchOptions {
    pub budget: SearchBudget,
    /// Largest order searched; cannot exceed 64.
    pub cap: usize,
    pub witness_cap: usize,
}

impl Default for SubsetSearchOptions {
    fn default() -> Self {
        SubsetSearchOptions {
            budget: SearchBudget::unlimited(),
            cap: DEFAULT_SUBSET_CAP,
            witness_cap: super::DEFAULT_WITNESS_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetReport {
    pub order: usize,
    /// Exact unless `budget_exhausted`, in which case a lower bound.
    pub beta: u64,
    #[serde(skip)]
    pub rho: Ratio<u64>,
    /// Basic triples of size `beta` as member index lists, `|S| >= |T| >= |U|`.
    pub witnesses: Vec<[Vec<usize>; 3]>,
    pub witness_count: u64,
    pub stats: SearchStats,
    pub budget_exhausted: bool,
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn quotient_mask(g: &GroupTable, mask: u64) -> u64 {
    let mut q = 0;
    for a in members(mask) {
        for b in members(mask) {
            q |= 1 << g.mul(a, g.inv(b));
        }
    }
    q
}

fn product_mask(g: &GroupTable, x: u64, y: u64) -> u64 {
    let ys: Vec<usize> = members(y).collect();
    let mut p = 0;
    for a in members(x) {
        for &b in &ys {
            p |= 1 << g.mul(a, b);
        }
    }
    p
}

pub fn search_beta_subsets(
    g: &GroupTable,
    opts: &SubsetSearchOptions,
) -> Result<SubsetReport, TppError> {
    let n = g.order();
    if n > opts.cap.min(64) {
        return Err(TppError::CapExceeded {
            order: n,
            cap: opts.cap.min(64),
        });
    }
    let start = Instant::now();
    let over_budget = |examined: u64| {
        opts.budget.max_candidates.is_some_and(|c| examined > c)
            || opts
                .budget
                .max_seconds
                .is_some_and(|s| start.elapsed().as_secs_f64() > s)
    };

    // basic subsets: bit 0 always set
    let mut subsets: Vec<u64> = (0..1u64 << (n - 1)).map(|m| m << 1 | 1).collect();
    subsets.sort_by_key(|m| (m.count_ones(), *m));
    let size: Vec<u64> = subsets.iter().map(|m| m.count_ones() as u64).collect();
    let q: Vec<u64> = subsets.iter().map(|&m| quotient_mask(g, m)).collect();

    let nn = n as u64;
    let mut stats = SearchStats::default();
    let mut exhausted = false;

    // pass one finds beta; pass two lists the triples of that size
    let mut best = nn;
    let mut witnesses = Vec::new();
    let mut witness_count = 0u64;
    'passes: for pass in 0..2 {
        for j in (0..subsets.len()).rev() {
            let t = size[j];
            // |U| <= |T| <= |S| <= |G| / |T|
            let bound = (nn / t) * t * t;
            if bound < best || (pass == 0 && bound == best) {
                stats.pruned += 1;
                continue;
            }
            for k in 0..=j {
                let u = size[k];
                if t * u > nn || q[j] & q[k] != 1 {
                    stats.pruned += 1;
                    continue;
                }
                let s_max = nn / t;
                if s_max * t * u < best || (pass == 0 && s_max * t * u == best) {
                    continue;
                }
                let qtu = product_mask(g, q[j], q[k]);
                let lo = j;
                let hi = size.partition_point(|&s| s <= s_max);
                for i in (lo..hi).rev() {
                    let sz = size[i] * t * u;
                    if (pass == 0 && sz <= best) || (pass == 1 && sz < best) {
                        break;
                    }
                    if pass == 1 && sz != best {
                        continue;
                    }
                    stats.candidates_examined += 1;
                    if q[i] & qtu == 1 {
                        if pass == 0 {
                            best = sz;
                            break;
                        }
                        witness_count += 1;
                        if witnesses.len() < opts.witness_cap {
                            witnesses.push([subsets[i], subsets[j], subsets[k]]);
                        }
                    }
                }
                if over_budget(stats.candidates_examined) {
                    exhausted = true;
                    break 'passes;
                }
            }
        }
    }
    if exhausted && witnesses.is_empty() && best == nn {
        // the trivial triple (G, {1}, {1}) always qualifies
        witnesses.push([(1u128 << n).wrapping_sub(1) as u64, 1, 1]);
        witness_count = 1;
    }
    witnesses.sort_by_key(|w| std::cmp::Reverse(*w));
    stats.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(SubsetReport {
        order: n,
        beta: best,
        rho: Ratio::new(best, nn),
        witnesses: witnesses
            .into_iter()
            .map(|w| w.map(|m| members(m).collect()))
            .collect(),
        witness_count,
        stats,
        budget_exhausted: exhausted,
    })
}
