//! Graphviz DOT export with deterministic ordering: nodes in sorted
//! vertex order, edges in sorted arrow-label order, byte-identical
//! across runs for equal quivers.

use crate::quiver::Quiver;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn emit_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph {\n");
    for v in q.vertices() {
        out.push_str(&format!("  \"{}\";\n", escape(v)));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            escape(&a.source),
            escape(&a.target),
            escape(&a.label)
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::quiver_of_locality;
    use crate::locality::LocalitySet;

    #[test]
    fn example_quiver_renders_with_its_loop() {
        let q = Quiver::new(
            ["x", "y", "z"],
            [("alpha", "x", "y"), ("beta", "y", "z"), ("gamma", "y", "y")],
        )
        .unwrap();
        let dot = emit_dot(&q);
        assert_eq!(
            dot,
            "digraph {\n  \"x\";\n  \"y\";\n  \"z\";\n  \"x\" -> \"y\" [label=\"alpha\"];\n  \"y\" -> \"z\" [label=\"beta\"];\n  \"y\" -> \"y\" [label=\"gamma\"];\n}\n"
        );
    }

    #[test]
    fn empty_quiver_has_an_empty_body() {
        assert_eq!(emit_dot(&Quiver::empty()), "digraph {\n}\n");
    }

    #[test]
    fn derived_quiver_uses_canonical_class_names() {
        let x = LocalitySet::new(["alpha", "beta"], [("alpha", "beta")]).unwrap();
        let dot = emit_dot(&quiver_of_locality(&x));
        assert!(dot.contains("\"alpha.s\";"));
        assert!(dot.contains("\"alpha.t\";"));
        assert!(dot.contains("\"beta.t\";"));
        assert!(dot.contains("\"alpha.s\" -> \"alpha.t\" [label=\"alpha\"];"));
        assert!(dot.contains("\"alpha.t\" -> \"beta.t\" [label=\"beta\"];"));
    }

    #[test]
    fn output_is_stable_across_runs() {
        let q = Quiver::new(["b", "a"], [("e2", "a", "b"), ("e1", "b", "a")]).unwrap();
        assert_eq!(emit_dot(&q), emit_dot(&q));
    }
}
