//! Human-readable account of how a search pruned its space.

use std::fmt::Write as _;

use super::SearchResult;

/// Summarises the statistics of a search and, when the problem was run with
/// `explain`, the fate of every root-level alternative assignment.
pub fn explain_pruning(result: &SearchResult) -> String {
    let s = &result.stats;
    let mut out = String::new();
    writeln!(out, "search: {:?} over {}", result.mode, result.label).unwrap();
    writeln!(out, "ideals: {}", result.ideals.len()).unwrap();
    if result.seeded > 0 {
        writeln!(
            out,
            "principal seeding fixed {} ideals before branching",
            result.seeded
        )
        .unwrap();
    }
    writeln!(out, "fixed by root propagation: {}", s.root_fixed).unwrap();
    writeln!(out, "candidate values removed, by cause:").unwrap();
    for (cause, k) in &s.removals {
        writeln!(out, "  {cause:?}: {k}").unwrap();
    }
    writeln!(out, "branch nodes: {}", s.nodes).unwrap();
    writeln!(out, "conflicts, by cause:").unwrap();
    for (cause, k) in &s.conflicts {
        writeln!(out, "  {cause:?}: {k}").unwrap();
    }
    writeln!(out, "per depth (nodes / conflicts):").unwrap();
    for (d, ds) in s.per_depth.iter().enumerate() {
        writeln!(out, "  {d}: {} / {}", ds.nodes, ds.conflicts).unwrap();
    }
    writeln!(
        out,
        "unchecked instances: product {}, scaling {}",
        s.skipped_product_instances, s.skipped_scaling_instances
    )
    .unwrap();
    writeln!(
        out,
        "base solutions: {}, discarded by extension: {}, accepted: {}",
        s.raw_solutions,
        s.discarded_by_extension,
        result.tables.len()
    )
    .unwrap();
    if !result.root_trials.is_empty() {
        writeln!(out, "root trials:").unwrap();
        for trial in &result.root_trials {
            match trial.eliminated_by {
                Some(cause) => {
                    writeln!(
                        out,
                        "  f({}) = {}: eliminated by {cause:?}",
                        trial.ideal, trial.value
                    )
                    .unwrap();
                    for step in trial.chain.iter().skip(1) {
                        writeln!(out, "    {step}").unwrap();
                    }
                }
                None => writeln!(
                    out,
                    "  f({}) = {}: consistent after propagation",
                    trial.ideal, trial.value
                )
                .unwrap(),
            }
        }
    }
    out
}
