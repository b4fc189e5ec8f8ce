//! DOT renderings of categories and causal orders.

use crate::causal::CausalStructure;
use crate::fincat::FiniteCategory;
use fixedbitset::FixedBitSet;
use std::fmt::Write;

/// Render a category as a digraph: objects as nodes, non-identity morphisms
/// as labelled edges, with the flagged morphisms highlighted.
pub fn category_dot(cat: &FiniteCategory, highlight: &[bool]) -> String {
    let mut out = String::from("digraph category {\n");
    for o in 0..cat.object_count() {
        writeln!(out, "  o{o} [label=\"{}\"];", cat.object_name(o)).unwrap();
    }
    for f in 0..cat.morphism_count() {
        if cat.is_identity(f) {
            continue;
        }
        let style = if highlight.get(f).copied().unwrap_or(false) {
            " color=red penwidth=2"
        } else {
            ""
        };
        writeln!(
            out,
            "  o{} -> o{} [label=\"m{f}\"{style}];",
            cat.source(f),
            cat.target(f)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// Render the Hasse diagram of a causal patch: cover steps as edges, with a
/// highlighted point set (a Cauchy antichain, typically) drawn filled.
pub fn hasse_dot(cs: &CausalStructure, highlight: &FixedBitSet) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for i in 0..cs.patch.len() {
        let (u, v) = cs.patch.coord(i);
        let style = if highlight.contains(i) {
            " style=filled fillcolor=gold"
        } else {
            ""
        };
        writeln!(out, "  p{i} [label=\"({u},{v})\"{style}];").unwrap();
    }
    let n = cs.patch.len();
    for p in 0..n {
        for q in cs.reach.row(p).ones() {
            if q == p {
                continue;
            }
            let between = cs
                .reach
                .row(p)
                .ones()
                .any(|r| r != p && r != q && cs.reach.contains(r, q));
            if !between {
                writeln!(out, "  p{p} -> p{q};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::causal_relation;
    use crate::fincat::build_poset_category;
    use crate::lattice::LatticePatch;
    use crate::relcore::{reflexive_transitive_closure, Relation};

    /// Minimal parser for the subset of DOT this module emits: returns the
    /// node ids and the directed edge list.
    fn parse_dot(s: &str) -> (Vec<String>, Vec<(String, String)>) {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for line in s.lines() {
            let line = line.trim().trim_end_matches(';');
            if line.starts_with("digraph") || line == "}" || line.is_empty() || line.starts_with("rankdir") {
                continue;
            }
            if let Some((lhs, rhs)) = line.split_once("->") {
                let to = rhs.split_whitespace().next().unwrap().trim_end_matches(';');
                edges.push((lhs.trim().to_string(), to.trim().to_string()));
            } else {
                let id = line.split_whitespace().next().unwrap();
                nodes.push(id.to_string());
            }
        }
        (nodes, edges)
    }

    #[test]
    fn category_dot_round_trips() {
        let base = Relation::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let cat = build_poset_category(&reflexive_transitive_closure(&base)).unwrap();
        let highlight = vec![true; cat.morphism_count()];
        let dot = category_dot(&cat, &highlight);
        let (nodes, edges) = parse_dot(&dot);
        assert_eq!(nodes.len(), cat.object_count());
        let non_identity = (0..cat.morphism_count()).filter(|&f| !cat.is_identity(f)).count();
        assert_eq!(edges.len(), non_identity);
        for (a, b) in &edges {
            assert!(nodes.contains(a) && nodes.contains(b));
        }
    }

    #[test]
    fn hasse_dot_has_cover_edges_and_highlights() {
        let p = LatticePatch::rect(0, 1, 0, 1);
        let cs = causal_relation(&p);
        let mut antichain = fixedbitset::FixedBitSet::with_capacity(p.len());
        antichain.insert(p.index_of((0, 1)).unwrap());
        antichain.insert(p.index_of((1, 0)).unwrap());
        let dot = hasse_dot(&cs, &antichain);
        let (nodes, edges) = parse_dot(&dot);
        assert_eq!(nodes.len(), 4);
        // the 2×2 block has exactly four cover steps
        assert_eq!(edges.len(), 4);
        assert_eq!(dot.matches("fillcolor=gold").count(), 2);
    }
}
