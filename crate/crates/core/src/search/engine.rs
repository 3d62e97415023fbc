//! Backtracking with forward checking over index tables of a finite ideal set.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use super::{DepthStats, RootTrial, SearchMode, SearchStats};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// The rule responsible for a forced assignment, a domain reduction or a
/// conflict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Cause {
    /// A branching decision.
    Branch,
    Extensive,
    Monotone,
    Idempotent,
    Product,
    Scaling,
    /// Principal ideals fixed before the search starts (prime mode).
    PrincipalSeed,
    /// No extension to the enlarged ideal set.
    Extension,
}

/// Precomputed relations among the ideals of a set, by index.
pub(crate) struct Tables {
    ideals: Vec<Ideal>,
    /// `up[v]`: indices `c` with `I_c ⊇ I_v`.
    up: Vec<FixedBitSet>,
    /// `down[v]`: indices `c` with `I_c ⊆ I_v`.
    down: Vec<FixedBitSet>,
    /// Index of `I_a I_b`, if it lies in the set.
    prod: Vec<Vec<Option<usize>>>,
    /// `cover[a][b]`: indices `c` with `I_c ⊇ I_a I_b`.
    cover: Vec<Vec<FixedBitSet>>,
    /// For each `k`, the unordered pairs `(a, b)` with `I_a I_b = I_k`.
    factors: Vec<Vec<(usize, usize)>>,
    /// Proper principal ideals.
    multipliers: Vec<usize>,
    principal: Vec<bool>,
    /// For each `k`, pairs `(b, a)` with `b` a multiplier and `I_b I_a = I_k`.
    scaled_from: Vec<Vec<(usize, usize)>>,
}

impl Tables {
    pub(crate) fn new(ideals: &[Ideal]) -> Self {
        let n = ideals.len();
        let index: HashMap<&Ideal, usize> =
            ideals.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let sup: Vec<Vec<bool>> = (0..n)
            .into_par_iter()
            .map(|c| {
                (0..n)
                    .map(|v| ideals[c].contains(&ideals[v]).expect("one ring"))
                    .collect()
            })
            .collect();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for c in 0..n {
            for v in 0..n {
                if sup[c][v] {
                    up[v].insert(c);
                    down[c].insert(v);
                }
            }
        }
        let rows: Vec<(Vec<Option<usize>>, Vec<FixedBitSet>)> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut prod = vec![None; n];
                let mut cover = vec![FixedBitSet::with_capacity(n); n];
                for b in 0..n {
                    let x = ideals[a].product(&ideals[b]).expect("one ring");
                    match index.get(&x) {
                        Some(&k) => {
                            prod[b] = Some(k);
                            cover[b] = up[k].clone();
                        }
                        None => {
                            for c in 0..n {
                                if ideals[c].contains(&x).expect("one ring") {
                                    cover[b].insert(c);
                                }
                            }
                        }
                    }
                }
                (prod, cover)
            })
            .collect();
        let (prod, cover): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let principal: Vec<bool> = ideals.iter().map(Ideal::is_principal).collect();
        let multipliers: Vec<usize> = (0..n)
            .filter(|&b| principal[b] && ideals[b].is_proper())
            .collect();
        let mut factors = vec![Vec::new(); n];
        let mut scaled_from = vec![Vec::new(); n];
        for a in 0..n {
            for b in a..n {
                if let Some(k) = prod[a][b] {
                    factors[k].push((a, b));
                }
            }
        }
        for &b in &multipliers {
            for a in 0..n {
                if let Some(k) = prod[b][a] {
                    scaled_from[k].push((b, a));
                }
            }
        }
        Self {
            ideals: ideals.to_vec(),
            up,
            down,
            prod,
            cover,
            factors,
            multipliers,
            principal,
            scaled_from,
        }
    }

    fn len(&self) -> usize {
        self.ideals.len()
    }

    pub(crate) fn skipped_products(&self) -> u64 {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.prod[a][b].is_none())
            .count() as u64
    }

    pub(crate) fn skipped_scalings(&self) -> u64 {
        self.multipliers
            .iter()
            .map(|&b| self.prod[b].iter().filter(|k| k.is_none()).count() as u64)
            .sum()
    }

    pub(crate) fn principal_count(&self) -> usize {
        self.principal.iter().filter(|&&p| p).count()
    }
}

/// Partial assignment with the remaining candidate values of each ideal.
#[derive(Clone)]
pub(crate) struct State {
    value: Vec<Option<usize>>,
    domain: Vec<FixedBitSet>,
}

impl State {
    pub(crate) fn assigned_count(&self) -> usize {
        self.value.iter().filter(|v| v.is_some()).count()
    }
}

type Queue = Vec<(usize, usize, Cause)>;

/// Propagation bookkeeping: removals by cause and the forced-assignment trail.
#[derive(Default)]
struct Log {
    removals: HashMap<Cause, u64>,
    trail: Vec<(usize, usize, Cause)>,
}

pub(crate) struct Engine<'a> {
    t: &'a Tables,
    mode: SearchMode,
    budget: u64,
    nodes: AtomicU64,
    root_removals: HashMap<Cause, u64>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(t: &'a Tables, mode: SearchMode, budget: u64) -> Self {
        Self {
            t,
            mode,
            budget,
            nodes: AtomicU64::new(0),
            root_removals: HashMap::new(),
        }
    }

    /// Extensive domains, the unit ideal and (prime mode) principal seeds,
    /// propagated. `Ok(Err(cause))` means the root is already inconsistent.
    pub(crate) fn root(&mut self) -> Result<std::result::Result<State, Cause>> {
        let n = self.t.len();
        let mut state = State {
            value: vec![None; n],
            domain: self.t.up.clone(),
        };
        let mut queue: Queue = Vec::new();
        for i in 0..n {
            if self.t.ideals[i].is_unit() {
                queue.push((i, i, Cause::Extensive));
            }
        }
        if self.mode == SearchMode::Prime {
            for i in 0..n {
                if self.t.principal[i] && self.t.ideals[i].is_proper() {
                    queue.push((i, i, Cause::PrincipalSeed));
                }
            }
        }
        for i in 0..n {
            if state.domain[i].count_ones(..) == 1 {
                let v = state.domain[i].ones().next().unwrap();
                queue.push((i, v, Cause::Extensive));
            }
        }
        queue.reverse();
        let mut log = Log::default();
        let out = self.propagate(&mut state, queue, &mut log);
        self.root_removals = log.removals;
        Ok(out.map(|_| state))
    }

    pub(crate) fn root_stats(&self) -> SearchStats {
        let mut s = SearchStats::default();
        for (c, k) in &self.root_removals {
            s.removals.insert(*c, *k);
        }
        s
    }

    fn restrict(
        &self,
        state: &mut State,
        k: usize,
        mask: &FixedBitSet,
        cause: Cause,
        queue: &mut Queue,
        log: &mut Log,
    ) -> std::result::Result<(), Cause> {
        if let Some(v) = state.value[k] {
            return if mask.contains(v) { Ok(()) } else { Err(cause) };
        }
        let before = state.domain[k].count_ones(..);
        state.domain[k].intersect_with(mask);
        let after = state.domain[k].count_ones(..);
        if after < before {
            *log.removals.entry(cause).or_default() += (before - after) as u64;
        }
        match after {
            0 => Err(cause),
            1 if after < before => {
                queue.push((k, state.domain[k].ones().next().unwrap(), cause));
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn propagate(
        &self,
        state: &mut State,
        mut queue: Queue,
        log: &mut Log,
    ) -> std::result::Result<(), Cause> {
        let t = self.t;
        let n = t.len();
        while let Some((i, v, cause)) = queue.pop() {
            match state.value[i] {
                Some(w) if w == v => continue,
                Some(_) => return Err(cause),
                None => {}
            }
            if !state.domain[i].contains(v) {
                return Err(cause);
            }
            state.value[i] = Some(v);
            state.domain[i].clear();
            state.domain[i].insert(v);
            log.trail.push((i, v, cause));

            if v != i {
                // I_i is not closed, so nothing may map to it, and I_v must be.
                let mut not_i = FixedBitSet::with_capacity(n);
                not_i.insert_range(..);
                not_i.set(i, false);
                for k in 0..n {
                    if k != i && state.domain[k].contains(i) {
                        self.restrict(state, k, &not_i, Cause::Idempotent, &mut queue, log)?;
                    }
                }
                queue.push((v, v, Cause::Idempotent));
            }

            for k in t.down[i].ones().filter(|&k| k != i) {
                self.restrict(state, k, &t.down[v], Cause::Monotone, &mut queue, log)?;
            }
            for k in t.up[i].ones().filter(|&k| k != i) {
                self.restrict(state, k, &t.up[v], Cause::Monotone, &mut queue, log)?;
            }

            for j in 0..n {
                let Some(vj) = state.value[j] else { continue };
                if let Some(k) = t.prod[i][j] {
                    self.restrict(state, k, &t.cover[v][vj], Cause::Product, &mut queue, log)?;
                }
            }
            for &(a, b) in &t.factors[i] {
                if let (Some(va), Some(vb)) = (state.value[a], state.value[b]) {
                    if !t.cover[va][vb].contains(v) {
                        return Err(Cause::Product);
                    }
                }
            }

            if self.mode == SearchMode::Prime {
                for &b in &t.multipliers {
                    if let Some(k) = t.prod[b][i] {
                        match t.prod[b][v] {
                            Some(target) => queue.push((k, target, Cause::Scaling)),
                            None => return Err(Cause::Scaling),
                        }
                    }
                }
                for &(b, a) in &t.scaled_from[i] {
                    if state.value[a].is_some() {
                        continue;
                    }
                    let mut mask = FixedBitSet::with_capacity(n);
                    for u in state.domain[a].ones() {
                        if t.prod[b][u] == Some(v) {
                            mask.insert(u);
                        }
                    }
                    self.restrict(state, a, &mask, Cause::Scaling, &mut queue, log)?;
                }
            }
        }
        Ok(())
    }

    /// Unassigned ideal with the fewest candidates; ties go to the later
    /// (deeper) index.
    fn choose(&self, state: &State) -> Option<usize> {
        (0..self.t.len())
            .filter(|&i| state.value[i].is_none())
            .min_by_key(|&i| (state.domain[i].count_ones(..), std::cmp::Reverse(i)))
    }

    /// Candidate values of `i`: the identity first, then ascending.
    fn candidates(state: &State, i: usize) -> Vec<usize> {
        let mut vals: Vec<usize> = state.domain[i].ones().collect();
        if let Some(p) = vals.iter().position(|&v| v == i) {
            vals.remove(p);
            vals.insert(0, i);
        }
        vals
    }

    fn tick(&self) -> Result<()> {
        let explored = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if explored > self.budget {
            Err(Error::BudgetExceeded {
                budget: self.budget,
                explored,
            })
        } else {
            Ok(())
        }
    }

    fn branch(&self, state: &State, i: usize, v: usize) -> std::result::Result<State, Cause> {
        let mut next = state.clone();
        let mut log = Log::default();
        self.propagate(&mut next, vec![(i, v, Cause::Branch)], &mut log)?;
        Ok(next)
    }

    /// All complete assignments below `state`, with statistics.
    pub(crate) fn solve_all(&self, state: &State) -> Result<(Vec<Vec<usize>>, SearchStats)> {
        let mut stats = SearchStats::default();
        let Some(i) = self.choose(state) else {
            return Ok((vec![complete(state)], stats));
        };
        // The first branching level runs in parallel; results merge in value order.
        let parts = Self::candidates(state, i)
            .into_par_iter()
            .map(|v| {
                let mut sols = Vec::new();
                let mut st = SearchStats::default();
                self.visit(state, i, v, 0, &mut sols, &mut st, false)?;
                Ok((sols, st))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sols = Vec::new();
        for (s, st) in parts {
            sols.extend(s);
            stats.merge(&st);
        }
        Ok((sols, stats))
    }

    #[allow(clippy::too_many_arguments)]
    fn visit(
        &self,
        state: &State,
        i: usize,
        v: usize,
        depth: usize,
        sols: &mut Vec<Vec<usize>>,
        stats: &mut SearchStats,
        first_only: bool,
    ) -> Result<()> {
        self.tick()?;
        stats.nodes += 1;
        if stats.per_depth.len() <= depth {
            stats.per_depth.resize(depth + 1, DepthStats::default());
        }
        stats.per_depth[depth].nodes += 1;
        let next = match self.branch(state, i, v) {
            Ok(s) => s,
            Err(cause) => {
                *stats.conflicts.entry(cause).or_default() += 1;
                stats.per_depth[depth].conflicts += 1;
                return Ok(());
            }
        };
        match self.choose(&next) {
            None => sols.push(complete(&next)),
            Some(k) => {
                for u in Self::candidates(&next, k) {
                    self.visit(&next, k, u, depth + 1, sols, stats, first_only)?;
                    if first_only && !sols.is_empty() {
                        break;
                    }
                }
            }
        }
        Ok(())
    }

    /// Does `state` with the fixed assignments extend to a complete one?
    /// Returns the answer and the number of branch nodes used.
    pub(crate) fn extends(&self, state: &State, fixed: &[(usize, usize)]) -> Result<(bool, u64)> {
        let mut next = state.clone();
        let queue: Queue = fixed
            .iter()
            .rev()
            .map(|&(i, v)| (i, v, Cause::Extension))
            .collect();
        if self
            .propagate(&mut next, queue, &mut Log::default())
            .is_err()
        {
            return Ok((false, 0));
        }
        let Some(i) = self.choose(&next) else {
            return Ok((true, 0));
        };
        let mut sols = Vec::new();
        let mut stats = SearchStats::default();
        for v in Self::candidates(&next, i) {
            self.visit(&next, i, v, 0, &mut sols, &mut stats, true)?;
            if !sols.is_empty() {
                break;
            }
        }
        Ok((!sols.is_empty(), stats.nodes))
    }

    /// Each alternative value of each undecided ideal at the root, propagated
    /// on its own.
    pub(crate) fn root_trials(&self, state: &State) -> Vec<RootTrial> {
        let t = self.t;
        let mut out = Vec::new();
        for i in 0..t.len() {
            if state.value[i].is_some() {
                continue;
            }
            for v in state.domain[i].ones().filter(|&v| v != i) {
                let mut next = state.clone();
                let mut log = Log::default();
                let res = self.propagate(&mut next, vec![(i, v, Cause::Branch)], &mut log);
                let chain = log
                    .trail
                    .iter()
                    .map(|&(a, b, c)| format!("f({}) = {} [{c:?}]", t.ideals[a], t.ideals[b]))
                    .collect();
                out.push(RootTrial {
                    ideal: t.ideals[i].to_string(),
                    value: t.ideals[v].to_string(),
                    eliminated_by: res.err(),
                    chain,
                });
            }
        }
        out
    }
}

fn complete(state: &State) -> Vec<usize> {
    state
        .value
        .iter()
        .map(|v| v.expect("complete assignment"))
        .collect()
}
