//! Graphviz output for Hasse diagrams.

use std::fmt::Write;

use crate::order::FinitePoset;

/// One node per element and one edge per covering pair, drawn bottom to top.
pub fn hasse_dot(name: &str, p: &FinitePoset) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {:?} {{", name).unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    for (i, l) in p.labels().iter().enumerate() {
        writeln!(s, "  n{i} [label={l:?}];").unwrap();
    }
    for (i, j) in p.covers() {
        writeln!(s, "  n{i} -> n{j};").unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let d = FinitePoset::from_relation(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap();
        let dot = hasse_dot("diamond", &d);
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot.matches("[label=").count(), 4);
    }
}
