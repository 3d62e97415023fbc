//! Covering relation of `⊇` and its DOT rendering.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::{classify_shape, Ideal};

/// Stable node identifier derived from the canonical form.
pub fn node_name(ideal: &Ideal) -> String {
    let mut h = Sha256::new();
    h.update(ideal.ring().to_string().as_bytes());
    match ideal.order() {
        None => h.update(b"zero"),
        Some(n) => {
            h.update(n.to_le_bytes());
            for r in ideal.window_rows() {
                h.update([0xff]);
                h.update(&r);
            }
        }
    }
    let digest = h.finalize();
    let hex: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
    format!("n{hex}")
}

/// Pairs `(i, j)` such that `ideals[i]` covers `ideals[j]`: `I_i ⊋ I_j` with
/// nothing strictly in between. Indices refer to the input slice.
pub fn covering_edges(ideals: &[Ideal]) -> Vec<(usize, usize)> {
    let n = ideals.len();
    let sup: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    i != j
                        && ideals[i] != ideals[j]
                        && ideals[i].contains(&ideals[j]).unwrap_or(false)
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if sup[i][j] && !(0..n).any(|k| sup[i][k] && sup[k][j]) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn label(ideal: &Ideal) -> String {
    match classify_shape(ideal) {
        Ok(tag) => format!("{ideal}\\n{tag}"),
        Err(_) => ideal.to_string(),
    }
}

/// DOT digraph of the covering relation, edges pointing from the larger
/// ideal to the one it covers. Output depends only on the set of ideals.
pub fn hasse_diagram(ideals: &[Ideal]) -> String {
    let mut sorted = ideals.to_vec();
    sorted.sort();
    sorted.dedup();
    let names: Vec<String> = sorted.iter().map(node_name).collect();
    let mut out = String::from("digraph ideals {\n  rankdir=TB;\n  node [shape=box];\n");
    for (ideal, name) in sorted.iter().zip(&names) {
        writeln!(out, "  {name} [label=\"{}\"];", label(ideal)).unwrap();
    }
    for (i, j) in covering_edges(&sorted) {
        writeln!(out, "  {} -> {};", names[i], names[j]).unwrap();
    }
    out.push_str("}\n");
    out
}
