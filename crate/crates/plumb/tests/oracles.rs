//! Independent brute-force cross-checks: box enumeration for smallest
//! anti-nef cycles and bounded quadratic-form sweeps for definiteness.

mod common;

use plumb::corpus;
use plumb::graph::{Cycle, DualGraph, Vertex};
use plumb::singularity::{anti_nef_closure, fundamental_cycle};

use common::{
    as_i64, assert_box_minimal, indefinite_controls, raw_matrix, raw_matrix_from_data, sweep_max,
};

#[test]
fn fundamental_cycles_are_box_minimal_on_every_corpus_graph() {
    for entry in corpus::entries().unwrap() {
        let g = entry.graph();
        let zf = fundamental_cycle(g);
        let lo = vec![1i64; g.vertex_count()];
        assert_box_minimal(g, &lo, &as_i64(&zf));
    }
}

#[test]
fn unit_closures_are_box_minimal_on_every_corpus_graph() {
    for entry in corpus::entries().unwrap() {
        let g = entry.graph();
        for i in 0..g.vertex_count() {
            let start = Cycle::unit(g, &g.vertex(i).id).unwrap();
            let closure = anti_nef_closure(&start).unwrap();
            assert_box_minimal(g, &as_i64(&start), &as_i64(&closure));
        }
    }
}

#[test]
fn accepted_graphs_sweep_strictly_negative() {
    for entry in corpus::entries().unwrap() {
        let g = entry.graph();
        if g.vertex_count() > 6 {
            continue;
        }
        let max = sweep_max(&raw_matrix(g));
        assert!(max < 0, "{}: sweep reached {max}", entry.name);
    }
}

#[test]
fn indefinite_forms_are_rejected_and_witnessed() {
    for (vertices, edges) in indefinite_controls() {
        // The bounded sweep finds a non-negative value of the form.
        let a = raw_matrix_from_data(&vertices, &edges);
        assert!(sweep_max(&a) >= 0, "control {vertices:?} looked definite");

        // And the library refuses to build the graph, for that reason.
        let vs: Vec<Vertex> = vertices
            .iter()
            .map(|&(id, s, g)| Vertex {
                id: id.to_string(),
                self_intersection: s,
                genus: g,
            })
            .collect();
        let es: Vec<(String, String, u32)> = edges
            .iter()
            .map(|&(x, y)| (x.to_string(), y.to_string(), 1))
            .collect();
        let err = DualGraph::new(vs, es).unwrap_err();
        assert!(
            err.to_string().contains("negative definite"),
            "unexpected rejection: {err}"
        );
    }
}
