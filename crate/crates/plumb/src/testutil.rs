//! Small constructors shared by unit tests.

use std::sync::Arc;

use crate::graph::{Cycle, DualGraph, Vertex};

pub(crate) fn graph(vs: &[(&str, i64, u32)], es: &[(&str, &str)]) -> Arc<DualGraph> {
    let vertices = vs
        .iter()
        .map(|&(id, self_intersection, genus)| Vertex {
            id: id.to_string(),
            self_intersection,
            genus,
        })
        .collect();
    let edges = es.iter().map(|&(a, b)| (a.to_string(), b.to_string(), 1)).collect();
    DualGraph::new(vertices, edges).expect("test graph must validate")
}

pub(crate) fn cy(g: &Arc<DualGraph>, entries: &[(&str, i64)]) -> Cycle {
    Cycle::from_int_entries(g, entries).expect("test cycle must validate")
}
