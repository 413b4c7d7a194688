//! Exhaustive search for β₀ over the subgroup lattice.
//!
//! A subgroup triple has the TPP iff `S ∩ T = {1}` and `U ∩ ST = {1}` (the
//! subgroup form applied to the reordering `(U, S, T)`; the property is
//! invariant under reordering). So each `(S, T)` pair costs one product set
//! and every `U` a single bitset intersection.
//!
//! The search runs in two passes. The first looks only for triples larger
//! than the current best, starting from the trivial `|G|`, with `S` running
//! over conjugacy-class representatives (conjugation preserves the TPP) and
//! `|S| >= |T| >= |U|`. The second lists every triple of the final size once,
//! in lattice-index order `i_S >= i_T >= i_U`.
//!
//! Pruning: `|S||T| <= |G|` for any TPP pair; sizes that cannot beat the
//! current best are skipped; `U` is only scanned once `S ∩ T = {1}` holds; and,
//! when only non-trivial triples are sought, normal subgroups are skipped,
//! since no member of a non-trivial triple is normal.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::{ratio, SearchStats, TppReport, TppTriple};
use crate::bitset::BitSet;
use crate::group::GroupTable;
use crate::structure::{is_normal, SubgroupLattice};

/// Default number of maximal triples stored per report.
pub const DEFAULT_WITNESS_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SearchBudget {
    pub max_candidates: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub budget: SearchBudget,
    /// Skip normal members when only non-trivial triples can improve on the
    /// best. Off only to cross-check the rule.
    pub prune_normal: bool,
    pub witness_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: SearchBudget::unlimited(),
            prune_normal: true,
            witness_cap: DEFAULT_WITNESS_CAP,
        }
    }
}

struct Meter {
    start: Instant,
    budget: SearchBudget,
    candidates: AtomicU64,
    pruned: AtomicU64,
    exhausted: AtomicBool,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Meter {
            start: Instant::now(),
            budget,
            candidates: AtomicU64::new(0),
            pruned: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    fn prune(&self, k: u64) {
        self.pruned.fetch_add(k, Ordering::Relaxed);
    }

    /// Records `k` examined candidates; false once the budget is spent.
    fn charge(&self, k: u64) -> bool {
        let total = self.candidates.fetch_add(k, Ordering::Relaxed) + k;
        if self.budget.max_candidates.is_some_and(|cap| total > cap)
            || self
                .budget
                .max_seconds
                .is_some_and(|s| self.start.elapsed().as_secs_f64() > s)
        {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.is_exhausted()
    }

    fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            candidates_examined: self.candidates.load(Ordering::Relaxed),
            pruned: self.pruned.load(Ordering::Relaxed),
            wall_time_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

struct Prepared<'a> {
    g: &'a GroupTable,
    bits: Vec<&'a BitSet>,
    members: Vec<Vec<usize>>,
    size: Vec<u64>,
    normal: Vec<bool>,
}

impl<'a> Prepared<'a> {
    fn new(g: &'a GroupTable, lattice: &'a SubgroupLattice) -> Self {
        Prepared {
            g,
            bits: lattice.iter().map(|h| h.bits()).collect(),
            members: lattice.iter().map(|h| h.to_vec()).collect(),
            size: lattice.iter().map(|h| h.len() as u64).collect(),
            normal: lattice.iter().map(|h| is_normal(g, h)).collect(),
        }
    }

    /// First index whose subgroup has at least `x` elements.
    fn first_at_least(&self, x: u64) -> usize {
        self.size.partition_point(|&s| s < x)
    }

    /// One past the last index whose subgroup has at most `x` elements.
    fn end_at_most(&self, x: u64) -> usize {
        self.size.partition_point(|&s| s <= x)
    }

    fn product(&self, i: usize, j: usize) -> BitSet {
        let mut st = BitSet::new(self.g.order());
        for &s in &self.members[i] {
            for &t in &self.members[j] {
                st.insert(self.g.mul(s, t));
            }
        }
        st
    }

    fn meets_trivially(&self, i: usize, j: usize) -> bool {
        self.bits[i].intersection_count(self.bits[j]) == 1
    }
}

/// Smallest lattice index in each conjugacy class.
fn class_representatives(g: &GroupTable, lattice: &SubgroupLattice) -> Vec<usize> {
    let mut seen = vec![false; lattice.len()];
    let mut reps = Vec::new();
    for i in 0..lattice.len() {
        if seen[i] {
            continue;
        }
        reps.push(i);
        let h = lattice.get(i);
        for x in g.elements() {
            let c = h.conjugate(g, x);
            if let Some(k) = lattice.position_bits(c.bits()) {
                seen[k] = true;
            }
        }
    }
    reps
}

/// Largest triple size above `|G|`, or `|G|`, with a witness of that size
/// when one above `|G|` was found.
fn improve(p: &Prepared, reps: &[usize], prune: bool, meter: &Meter) -> (u64, Option<[usize; 3]>) {
    let n = p.g.order() as u64;
    let best = AtomicU64::new(n);
    let witness: Mutex<Option<(u64, [usize; 3])>> = Mutex::new(None);
    let mut order: Vec<usize> = reps.to_vec();
    order.sort_by_key(|&i| std::cmp::Reverse((p.size[i], i)));

    order.par_iter().for_each(|&i| {
        if meter.is_exhausted() {
            return;
        }
        let s = p.size[i];
        if s * s * s <= best.load(Ordering::Relaxed) {
            meter.prune(1);
            return;
        }
        if prune && p.normal[i] {
            meter.prune(1);
            return;
        }
        let t_end = p.end_at_most(s.min(n / s));
        for j in (0..t_end).rev() {
            let t = p.size[j];
            if s * t * t <= best.load(Ordering::Relaxed) {
                break;
            }
            if (prune && p.normal[j]) || !p.meets_trivially(i, j) {
                meter.prune(1);
                continue;
            }
            let st = p.product(i, j);
            let u_max = t.min(n / s);
            let lo = p.first_at_least(best.load(Ordering::Relaxed) / (s * t) + 1);
            let hi = p.end_at_most(u_max);
            let mut examined = 0;
            for k in (lo..hi).rev() {
                let size = s * t * p.size[k];
                if size <= best.load(Ordering::Relaxed) {
                    break;
                }
                if prune && p.normal[k] {
                    meter.prune(1);
                    continue;
                }
                examined += 1;
                if st.intersection_count(p.bits[k]) == 1 {
                    best.fetch_max(size, Ordering::Relaxed);
                    let mut w = witness.lock().unwrap();
                    if w.is_none_or(|(b, _)| size > b) {
                        *w = Some((size, [i, j, k]));
                    }
                    break;
                }
            }
            if !meter.charge(examined) {
                return;
            }
        }
    });
    let w = witness.into_inner().unwrap();
    (best.into_inner(), w.map(|(_, t)| t))
}

/// Every triple of size exactly `target`, as `(i_S, i_T, i_U)` with
/// `i_S >= i_T >= i_U`, capped at `cap` stored; returns the list and the count.
fn enumerate(
    p: &Prepared,
    target: u64,
    prune: bool,
    cap: usize,
    meter: &Meter,
) -> (Vec<[usize; 3]>, u64) {
    let n = p.g.order() as u64;
    let per_s: Vec<(Vec<[usize; 3]>, u64)> = (0..p.size.len())
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            let mut count = 0u64;
            let s = p.size[i];
            if target % s != 0 || (prune && p.normal[i]) || meter.is_exhausted() {
                return (found, count);
            }
            for j in 0..=i {
                let t = p.size[j];
                if (target / s) % t != 0 || s * t > n {
                    continue;
                }
                let u = target / (s * t);
                if u > t {
                    continue;
                }
                if (prune && p.normal[j]) || !p.meets_trivially(i, j) {
                    meter.prune(1);
                    continue;
                }
                let st = p.product(i, j);
                let lo = p.first_at_least(u);
                let hi = p.end_at_most(u).min(j + 1);
                let mut examined = 0;
                for k in lo..hi {
                    if prune && p.normal[k] {
                        meter.prune(1);
                        continue;
                    }
                    examined += 1;
                    if st.intersection_count(p.bits[k]) == 1 {
                        count += 1;
                        if found.len() < cap {
                            found.push([i, j, k]);
                        }
                    }
                }
                if !meter.charge(examined) {
                    break;
                }
            }
            (found, count)
        })
        .collect();
    let total = per_s.iter().map(|(_, c)| c).sum();
    let mut all: Vec<[usize; 3]> = per_s.into_iter().flat_map(|(f, _)| f).collect();
    all.truncate(cap);
    (all, total)
}

/// β₀, ρ₀ and the maximal subgroup triples of `g`. `lattice` must be the
/// complete subgroup lattice of `g`.
pub fn search_beta0(g: &GroupTable, lattice: &SubgroupLattice, opts: &SearchOptions) -> TppReport {
    let meter = Meter::new(opts.budget);
    let p = Prepared::new(g, lattice);
    let n = g.order() as u64;
    let reps = class_representatives(g, lattice);

    let (beta0, best_witness) = improve(&p, &reps, opts.prune_normal, &meter);
    let budget_exhausted = meter.is_exhausted();

    let to_triple = |[i, j, k]: [usize; 3]| TppTriple {
        s: lattice.get(i).clone(),
        t: lattice.get(j).clone(),
        u: lattice.get(k).clone(),
    };

    let (witnesses, witness_count, complete) = if budget_exhausted {
        // best-so-far only; the trivial triple when nothing larger was seen
        let w = best_witness.unwrap_or([lattice.len() - 1, 0, 0]);
        (vec![w], 1, false)
    } else {
        let prune = opts.prune_normal && beta0 > n;
        let (w, count) = enumerate(&p, beta0, prune, opts.witness_cap, &meter);
        let complete = !meter.is_exhausted() && count as usize <= opts.witness_cap;
        (w, count, complete)
    };

    TppReport {
        group: String::new(),
        order: g.order(),
        beta0,
        rho0: ratio(beta0, g.order()),
        maximal_subgroup_triples: witnesses.into_iter().map(to_triple).collect(),
        witness_count,
        witnesses_complete: complete,
        beta: None,
        rho: None,
        stats: meter.stats(),
        budget_exhausted,
    }
}
