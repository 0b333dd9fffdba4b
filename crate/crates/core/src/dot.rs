//! Graphviz DOT emission for Cayley graphs, with an optional certified cycle
//! highlighted in red.

use crate::group::{Elem, GroupTable};
use crate::words::{GenSet, GenWord};

/// Renders `Cay(G; S)` as a DOT digraph: one node per element and one
/// directed edge per (element, generator) pair. Edges traversed by `cycle`
/// (walked from the identity) get `color=red`.
pub fn export_dot(gt: &GroupTable, gens: &GenSet, cycle: Option<&GenWord>) -> String {
    let mut highlighted = std::collections::HashSet::new();
    if let Some(word) = cycle {
        let mut v = Elem::IDENTITY;
        for &sg in &word.0 {
            let label = gens.resolve(sg);
            let w = gt.mul(v, label);
            // a backward step rides the forward edge of the inverse-labelled pair
            if sg.inverse {
                highlighted.insert((w, sg.gen as usize));
            } else {
                highlighted.insert((v, sg.gen as usize));
            }
            v = w;
        }
    }
    let mut out = String::new();
    out.push_str(&format!("digraph \"{}\" {{\n", gt.name()));
    for g in gt.elems() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", g.idx(), g.idx()));
    }
    for g in gt.elems() {
        for (i, &s) in gens.elems().iter().enumerate() {
            let h = gt.mul(g, s);
            let attr = if highlighted.contains(&(g, i)) {
                format!(" [label=\"s{i}\", color=red]")
            } else {
                format!(" [label=\"s{i}\"]")
            };
            out.push_str(&format!("  n{} -> n{}{};\n", g.idx(), h.idx(), attr));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::cyclic;
    use crate::words::SignedGen;

    #[test]
    fn edge_and_node_counts() {
        let gt = cyclic(5);
        let gens = GenSet::new(&gt, vec![Elem(1)]);
        let word = GenWord(vec![SignedGen::fwd(0); 5]);
        let dot = export_dot(&gt, &gens, Some(&word));
        assert_eq!(dot.matches(" -> ").count(), 5); // |S| * |G|
        assert_eq!(dot.matches("label=\"s0\"").count(), 5);
        assert_eq!(dot.matches("color=red").count(), 5);
        let plain = export_dot(&gt, &gens, None);
        assert_eq!(plain.matches("color=red").count(), 0);
    }
}
