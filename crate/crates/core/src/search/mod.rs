//! Exhaustive search for prime and semiprime operations on finite ideal sets.
//!
//! The search assigns `f(I)` for every ideal of a finite set by backtracking
//! with forward checking. Candidate values are supersets of `I`; idempotence,
//! monotonicity, the product axiom and (in prime mode) principal scaling are
//! propagated after every assignment. Solutions that cannot be extended to
//! the set enlarged by the margin are discarded.

mod engine;
mod report;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

pub use engine::Cause;
pub use report::explain_pruning;

use crate::closure::{dvr_ideal_chain, ClosureOperation};
use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, Ideal};
use crate::ring::Ring;
use engine::{Engine, Tables};

/// Node budget used when neither the caller nor `SEMIPRIME_LAB_BUDGET` sets one.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// The node budget, overridable through the `SEMIPRIME_LAB_BUDGET`
/// environment variable.
pub fn default_budget() -> u64 {
    std::env::var("SEMIPRIME_LAB_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchMode {
    /// Axioms 1 to 5.
    Prime,
    /// Axioms 1 to 4.
    Semiprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Domain {
    /// All ideals of order at most `max_order`.
    Lattice { max_order: u32 },
    /// `P^0, ..., P^depth` (and `(0)`) in `K[[t]]`.
    DvrChain { depth: u32 },
}

/// A finite search instance.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub ring: Arc<Ring>,
    pub domain: Domain,
    pub mode: SearchMode,
    /// The extension set is the same domain with the bound raised by this much.
    pub margin: u32,
    pub budget: u64,
    pub include_zero: bool,
    /// Record root-level trials for [`explain_pruning`].
    pub explain: bool,
}

impl SearchProblem {
    pub fn lattice(ring: &Arc<Ring>, max_order: u32, mode: SearchMode, margin: u32) -> Self {
        Self {
            ring: ring.clone(),
            domain: Domain::Lattice { max_order },
            mode,
            margin,
            budget: default_budget(),
            include_zero: true,
            explain: false,
        }
    }

    pub fn dvr_chain(ring: &Arc<Ring>, depth: u32, mode: SearchMode, margin: u32) -> Result<Self> {
        if !ring.is_dvr() {
            return Err(Error::WrongRing {
                op: "DVR chain search".into(),
                required: "K[[t]]".into(),
            });
        }
        Ok(Self {
            ring: ring.clone(),
            domain: Domain::DvrChain { depth },
            mode,
            margin,
            budget: default_budget(),
            include_zero: true,
            explain: false,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_zero(mut self, include_zero: bool) -> Self {
        self.include_zero = include_zero;
        self
    }

    pub fn with_explain(mut self, explain: bool) -> Self {
        self.explain = explain;
        self
    }

    fn ideal_set(&self, extra: u32) -> Result<Vec<Ideal>> {
        let mut set = match self.domain {
            Domain::Lattice { max_order } => enumerate_ideals(&self.ring, max_order + extra)?,
            Domain::DvrChain { depth } => dvr_ideal_chain(&self.ring, depth + extra, false)?,
        };
        if self.include_zero {
            set.push(Ideal::zero(&self.ring));
        }
        set.sort();
        Ok(set)
    }

    /// The ideal set searched over.
    pub fn ideals(&self) -> Result<Vec<Ideal>> {
        self.ideal_set(0)
    }
}

/// Per-depth node and conflict counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DepthStats {
    pub nodes: u64,
    pub conflicts: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Branch assignments tried on the base set.
    pub nodes: u64,
    /// Branch assignments tried while checking extensions.
    pub extension_nodes: u64,
    /// Failed branches by the constraint that detected the conflict.
    pub conflicts: BTreeMap<Cause, u64>,
    /// Candidate values removed from domains, by cause.
    pub removals: BTreeMap<Cause, u64>,
    /// Complete assignments on the base set before the extension check.
    pub raw_solutions: u64,
    /// Base solutions with no extension to the enlarged set.
    pub discarded_by_extension: u64,
    /// Product instances `(I, J)` with `IJ` outside the set (not checked).
    pub skipped_product_instances: u64,
    /// Scaling instances `(b, I)` with `bI` outside the set (not checked).
    pub skipped_scaling_instances: u64,
    /// Ideals whose value was fixed by root propagation alone.
    pub root_fixed: u64,
    pub per_depth: Vec<DepthStats>,
}

impl SearchStats {
    fn merge(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.extension_nodes += other.extension_nodes;
        for (k, v) in &other.conflicts {
            *self.conflicts.entry(*k).or_default() += v;
        }
        for (k, v) in &other.removals {
            *self.removals.entry(*k).or_default() += v;
        }
        self.raw_solutions += other.raw_solutions;
        self.discarded_by_extension += other.discarded_by_extension;
        if self.per_depth.len() < other.per_depth.len() {
            self.per_depth
                .resize(other.per_depth.len(), DepthStats::default());
        }
        for (d, s) in other.per_depth.iter().enumerate() {
            self.per_depth[d].nodes += s.nodes;
            self.per_depth[d].conflicts += s.conflicts;
        }
    }
}

/// What happened to one root-level trial assignment `f(I) = J`.
#[derive(Debug, Clone, Serialize)]
pub struct RootTrial {
    pub ideal: String,
    pub value: String,
    /// `None` if propagation alone does not refute the assignment.
    pub eliminated_by: Option<Cause>,
    /// Forced assignments leading to the conflict, as `f(A) = B [cause]`.
    pub chain: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub mode: SearchMode,
    pub ideals: Vec<Ideal>,
    /// Accepted operations as value indices into `ideals`, sorted.
    pub tables: Vec<Vec<usize>>,
    pub stats: SearchStats,
    pub root_trials: Vec<RootTrial>,
    /// Ring description and set size, for reports.
    pub label: String,
    /// Ideals fixed by the principal seeding rule (prime mode).
    pub seeded: usize,
}

impl SearchResult {
    /// Accepted operations as table closure operations.
    pub fn operations(&self) -> Vec<ClosureOperation> {
        let ring = self.ideals[0].ring();
        let include_zero = self.ideals.iter().any(Ideal::is_zero);
        self.tables
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let map: BTreeMap<Ideal, Ideal> = t
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (self.ideals[i].clone(), self.ideals[v].clone()))
                    .collect();
                let name = if self.is_identity(t) {
                    "identity".to_string()
                } else {
                    format!("table_{k}")
                };
                ClosureOperation::table(name, ring, include_zero, map)
                    .expect("search tables are closed")
            })
            .collect()
    }

    fn is_identity(&self, t: &[usize]) -> bool {
        t.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_identity_only(&self) -> bool {
        self.tables.len() == 1 && self.is_identity(&self.tables[0])
    }

    /// Index of an accepted table equal to `op` on the whole set.
    pub fn position_of(&self, op: &ClosureOperation) -> Option<usize> {
        self.tables.iter().position(|t| {
            t.iter()
                .enumerate()
                .all(|(i, &v)| op.try_apply(&self.ideals[i]).as_ref() == Some(&self.ideals[v]))
        })
    }

    pub fn summary(&self) -> SearchSummary {
        SearchSummary {
            mode: self.mode,
            label: self.label.clone(),
            ideals: self.ideals.len(),
            operations: self
                .tables
                .iter()
                .map(|t| {
                    t.iter()
                        .enumerate()
                        .filter(|(i, v)| i != *v)
                        .map(|(i, &v)| (self.ideals[i].to_string(), self.ideals[v].to_string()))
                        .collect()
                })
                .collect(),
            identity_only: self.is_identity_only(),
            stats: self.stats.clone(),
        }
    }
}

/// JSON form of a result: each operation is listed by the ideals it moves.
#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub mode: SearchMode,
    pub label: String,
    pub ideals: usize,
    pub operations: Vec<Vec<(String, String)>>,
    pub identity_only: bool,
    pub stats: SearchStats,
}

/// Runs the search described by `problem`.
pub fn search(problem: &SearchProblem) -> Result<SearchResult> {
    let ideals = problem.ideals()?;
    let tables = Tables::new(&ideals);
    let mut engine = Engine::new(&tables, problem.mode, problem.budget);
    let root = engine.root()?;
    let mut stats = SearchStats {
        skipped_product_instances: tables.skipped_products(),
        skipped_scaling_instances: if problem.mode == SearchMode::Prime {
            tables.skipped_scalings()
        } else {
            0
        },
        ..SearchStats::default()
    };
    let seeded = if problem.mode == SearchMode::Prime {
        tables.principal_count()
    } else {
        0
    };
    let mut root_trials = Vec::new();
    let solutions = match &root {
        Ok(state) => {
            stats.root_fixed = state.assigned_count() as u64;
            stats.merge(&engine.root_stats());
            if problem.explain {
                root_trials = engine.root_trials(state);
            }
            let (sols, s) = engine.solve_all(state)?;
            stats.merge(&s);
            sols
        }
        Err(_) => Vec::new(),
    };
    stats.raw_solutions = solutions.len() as u64;

    let accepted = if problem.margin == 0 || solutions.is_empty() {
        solutions
    } else {
        let ext_ideals = problem.ideal_set(problem.margin)?;
        let ext_tables = Tables::new(&ext_ideals);
        let mut ext_engine = Engine::new(&ext_tables, problem.mode, problem.budget);
        let index: HashMap<&Ideal, usize> =
            ext_ideals.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let embed: Vec<usize> = ideals.iter().map(|x| index[x]).collect();
        let ext_root = ext_engine.root()?;
        let mut kept = Vec::new();
        for sol in solutions {
            let (ok, nodes) = match &ext_root {
                Ok(state) => {
                    let fixed: Vec<(usize, usize)> = sol
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| (embed[i], embed[v]))
                        .collect();
                    ext_engine.extends(state, &fixed)?
                }
                Err(_) => (false, 0),
            };
            stats.extension_nodes += nodes;
            if ok {
                kept.push(sol);
            } else {
                stats.discarded_by_extension += 1;
                *stats.conflicts.entry(Cause::Extension).or_default() += 1;
            }
        }
        kept
    };
    let mut tables_out = accepted;
    tables_out.sort();
    let label = match problem.domain {
        Domain::Lattice { max_order } => format!("{} ideals of order <= {max_order}", problem.ring),
        Domain::DvrChain { depth } => format!("{} chain P^0..P^{depth}", problem.ring),
    };
    Ok(SearchResult {
        mode: problem.mode,
        ideals,
        tables: tables_out,
        stats,
        root_trials,
        label,
        seeded,
    })
}

/// Prime operations on the problem's ideal set.
pub fn search_prime(problem: &SearchProblem) -> Result<SearchResult> {
    if problem.mode != SearchMode::Prime {
        return Err(Error::InvalidArgument(
            "search_prime needs mode PRIME".into(),
        ));
    }
    search(problem)
}

/// Semiprime operations on `{P^0, ..., P^depth, (0)}` in `F_2[[t]]`.
pub fn search_semiprime_chain(depth: u32, margin: u32) -> Result<SearchResult> {
    let ring = Ring::dvr(2)?;
    search(&SearchProblem::dvr_chain(
        &ring,
        depth,
        SearchMode::Semiprime,
        margin,
    )?)
}

#[cfg(test)]
mod tests;
