//! JSON and Graphviz renderings of a torsion poset.

use std::fmt::Write;

use serde::Serialize;

use crate::facering::f_vector;
use crate::torsion_poset::TorsionPoset;

#[derive(Serialize)]
struct ElementJson {
    id: usize,
    rank: usize,
    subset: Vec<usize>,
    character: Vec<String>,
}

#[derive(Serialize)]
struct PosetJson {
    elements: Vec<ElementJson>,
    covers: Vec<[usize; 2]>,
    components: Vec<Vec<usize>>,
    f_vector_per_component: Vec<Vec<u64>>,
}

/// Subsets are 1-based; characters are reduced fractions `p/q`.
pub fn poset_json(gr: &TorsionPoset) -> String {
    let elements = gr
        .elements()
        .iter()
        .enumerate()
        .map(|(id, e)| ElementJson {
            id,
            rank: e.rank(),
            subset: e.subset.indices().map(|i| i + 1).collect(),
            character: e.character.value_strings(),
        })
        .collect();
    let components = gr.components();
    let f_vector_per_component = components
        .iter()
        .map(|c| {
            f_vector(gr.poset(), c)
                .entries()
                .iter()
                .map(|x| u64::try_from(x).expect("counts fit in u64"))
                .collect()
        })
        .collect();
    let doc = PosetJson {
        elements,
        covers: gr.covers().iter().map(|&(c, p)| [c, p]).collect(),
        components,
        f_vector_per_component,
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// One node per element, one edge per cover pointing from child to parent.
pub fn poset_dot(gr: &TorsionPoset) -> String {
    let mut out = String::from("digraph torsion_poset {\n  rankdir=BT;\n");
    let max_rank = gr.elements().iter().map(|e| e.rank()).max().unwrap_or(0);
    for rank in 0..=max_rank {
        let ids: Vec<String> =
            (0..gr.len()).filter(|&i| gr.element(i).rank() == rank).map(|i| format!("n{i}")).collect();
        if !ids.is_empty() {
            writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        }
    }
    for (i, e) in gr.elements().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{e}\"];").unwrap();
    }
    for &(c, p) in gr.covers() {
        writeln!(out, "  n{c} -> n{p};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsion_poset::build_poset;
    use crate::zmatroid::Realization;

    fn m1() -> TorsionPoset {
        build_poset(&Realization::from_i64(2, &[], &[&[2, 0], &[0, 1]]).unwrap())
    }

    #[test]
    fn json_shape() {
        let v: serde_json::Value = serde_json::from_str(&poset_json(&m1())).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), 6);
        assert_eq!(v["covers"].as_array().unwrap().len(), 7);
        assert_eq!(v["elements"][2]["subset"], serde_json::json!([1]));
        assert_eq!(v["elements"][2]["character"], serde_json::json!(["1/2"]));
        assert_eq!(v["f_vector_per_component"], serde_json::json!([[1, 3, 2]]));
    }

    #[test]
    fn dot_shape() {
        let dot = poset_dot(&m1());
        assert_eq!(dot.matches(" -> ").count(), 7);
        assert!(dot.contains("label=\"({1,2}; 1/2,0/1)\"") || dot.contains("label=\"({1,2}; 0/1,1/2)\""));
        assert!(dot.contains("rankdir=BT"));
    }
}
