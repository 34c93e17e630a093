//! Blow-ups of points on the exceptional divisor and blow-downs of
//! (-1)-curves.
//!
//! Strict transforms keep their vertex ids across a blow-up, so the
//! correspondence between source and target vertices is the identity on
//! ids; only the new exceptional curve gets a fresh id.

use std::fmt;
use std::sync::Arc;

use num::Signed;

use crate::graph::{Cycle, DualGraph, Vertex};
use crate::{Error, Result};

/// Position of the center of a blow-up.
///
/// `OnBranch` is graph-theoretically identical to `Generic` on the carrier
/// vertex; the branch token only records which infinitely-near branch of a
/// curve germ is being followed (used by the construction module).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSpec {
    /// Generic (smooth, non-intersection) point of one exceptional curve.
    Generic(String),
    /// Intersection point of two exceptional curves.
    Intersection(String, String),
    /// Point of `carrier` lying on a named branch germ.
    OnBranch { branch: String, carrier: String },
}

impl PointSpec {
    fn base_id(&self) -> String {
        match self {
            PointSpec::Generic(v) => v.clone(),
            PointSpec::Intersection(a, b) => format!("{a}:{b}"),
            PointSpec::OnBranch { carrier, .. } => carrier.clone(),
        }
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Generic(v) => write!(f, "a generic point of {v}"),
            PointSpec::Intersection(a, b) => write!(f, "the intersection of {a} and {b}"),
            PointSpec::OnBranch { branch, carrier } => {
                write!(f, "the point of branch {branch} on {carrier}")
            }
        }
    }
}

/// One blow-up: the source graph, the validated target graph, and the id
/// of the new (-1)-curve.
#[derive(Debug, Clone)]
pub struct BlowupMap {
    source: Arc<DualGraph>,
    target: Arc<DualGraph>,
    center: PointSpec,
    new_vertex: String,
}

/// Blows up a point of the exceptional divisor described by `center`.
pub fn blow_up(graph: &Arc<DualGraph>, center: PointSpec) -> Result<BlowupMap> {
    let carriers: Vec<usize> = match &center {
        PointSpec::Generic(v) | PointSpec::OnBranch { carrier: v, .. } => {
            vec![graph
                .index_of(v)
                .ok_or_else(|| Error::invalid(format!("invalid center: no vertex {v:?}")))?]
        }
        PointSpec::Intersection(a, b) => {
            let ia = graph
                .index_of(a)
                .ok_or_else(|| Error::invalid(format!("invalid center: no vertex {a:?}")))?;
            let ib = graph
                .index_of(b)
                .ok_or_else(|| Error::invalid(format!("invalid center: no vertex {b:?}")))?;
            if !graph.has_edge(ia, ib) {
                return Err(Error::invalid(format!(
                    "invalid center: {a:?} and {b:?} do not intersect"
                )));
            }
            vec![ia, ib]
        }
    };

    // Fresh id: "<center>.F<n>" with the smallest free n.
    let base = center.base_id();
    let new_vertex = (1..)
        .map(|n| format!("{base}.F{n}"))
        .find(|id| !graph.contains(id))
        .expect("some index is free");

    let mut vertices: Vec<Vertex> = graph.vertices().to_vec();
    for &i in &carriers {
        vertices[i].self_intersection -= 1;
    }
    vertices.push(Vertex { id: new_vertex.clone(), self_intersection: -1, genus: 0 });

    let mut edges: Vec<(String, String, u32)> = Vec::new();
    for &(i, j) in graph.edges() {
        // The edge through an intersection center is separated by the
        // blow-up; all other edges survive between strict transforms.
        if carriers.len() == 2 && carriers.contains(&i) && carriers.contains(&j) {
            continue;
        }
        edges.push((graph.vertex(i).id.clone(), graph.vertex(j).id.clone(), 1));
    }
    for &i in &carriers {
        edges.push((graph.vertex(i).id.clone(), new_vertex.clone(), 1));
    }

    let target = DualGraph::new(vertices, edges)?;
    Ok(BlowupMap { source: Arc::clone(graph), target, center, new_vertex })
}

impl BlowupMap {
    pub fn source(&self) -> &Arc<DualGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<DualGraph> {
        &self.target
    }

    pub fn center(&self) -> &PointSpec {
        &self.center
    }

    /// Id of the exceptional curve of this blow-up.
    pub fn new_vertex(&self) -> &str {
        &self.new_vertex
    }

    /// Total transform: coefficients carry over to strict transforms, and
    /// the new curve receives the multiplicity of the center (the carrier's
    /// coefficient, or the sum over both carriers for an intersection
    /// point). Pairing-preserving, and the result pairs to zero with the
    /// new curve.
    pub fn pullback(&self, z: &Cycle) -> Result<Cycle> {
        if !Arc::ptr_eq(z.graph(), &self.source) {
            return Err(Error::invalid("pullback input must live on the source graph"));
        }
        let mut coeffs = Vec::with_capacity(self.target.vertex_count());
        let f_coeff = match &self.center {
            PointSpec::Generic(v) | PointSpec::OnBranch { carrier: v, .. } => {
                z.coeff_of(v).expect("carrier exists in source").clone()
            }
            PointSpec::Intersection(a, b) => {
                z.coeff_of(a).expect("carrier exists") + z.coeff_of(b).expect("carrier exists")
            }
        };
        for v in self.target.vertices() {
            if v.id == self.new_vertex {
                coeffs.push(f_coeff.clone());
            } else {
                coeffs.push(z.coeff_of(&v.id).expect("strict transforms keep their ids").clone());
            }
        }
        Cycle::from_coeffs(&self.target, coeffs)
    }

    /// Forgets the new curve's coefficient. Left inverse of [`pullback`].
    ///
    /// [`pullback`]: BlowupMap::pullback
    pub fn pushforward(&self, z: &Cycle) -> Result<Cycle> {
        if !Arc::ptr_eq(z.graph(), &self.target) {
            return Err(Error::invalid("pushforward input must live on the target graph"));
        }
        let mut coeffs = Vec::with_capacity(self.source.vertex_count());
        for v in self.source.vertices() {
            coeffs.push(z.coeff_of(&v.id).expect("strict transforms keep their ids").clone());
        }
        Cycle::from_coeffs(&self.source, coeffs)
    }
}

/// Blows down a genus-zero (-1)-vertex with at most two neighbors.
///
/// Each neighbor's self-intersection rises by one; two neighbors become
/// adjacent. Errors if the vertex is not contractible, if the new adjacency
/// would duplicate an existing edge, or if the contraction would empty the
/// graph.
pub fn contract(graph: &Arc<DualGraph>, id: &str) -> Result<Arc<DualGraph>> {
    let v = graph
        .index_of(id)
        .ok_or_else(|| Error::invalid(format!("no vertex {id:?} in graph")))?;
    let data = graph.vertex(v);
    if data.self_intersection != -1 || data.genus != 0 {
        return Err(Error::invalid(format!(
            "vertex {id:?} is not contractible (needs self-intersection -1 and genus 0)"
        )));
    }
    let nbrs = graph.neighbors(v);
    if nbrs.len() > 2 {
        return Err(Error::invalid(format!(
            "vertex {id:?} is not contractible (more than two neighbors)"
        )));
    }
    if graph.vertex_count() == 1 {
        return Err(Error::invalid("contraction would empty the graph"));
    }
    if nbrs.len() == 2 && graph.has_edge(nbrs[0], nbrs[1]) {
        return Err(Error::invalid(format!(
            "contracting {id:?} produces a non-simple configuration"
        )));
    }

    let mut vertices = Vec::with_capacity(graph.vertex_count() - 1);
    for (i, w) in graph.vertices().iter().enumerate() {
        if i == v {
            continue;
        }
        let mut w = w.clone();
        if nbrs.contains(&i) {
            w.self_intersection += 1;
        }
        vertices.push(w);
    }
    let mut edges: Vec<(String, String, u32)> = graph
        .edges()
        .iter()
        .filter(|(i, j)| *i != v && *j != v)
        .map(|&(i, j)| (graph.vertex(i).id.clone(), graph.vertex(j).id.clone(), 1))
        .collect();
    if nbrs.len() == 2 {
        edges.push((graph.vertex(nbrs[0]).id.clone(), graph.vertex(nbrs[1]).id.clone(), 1));
    }
    DualGraph::new(vertices, edges)
}

/// Every genus-zero (-1)-vertex pairs strictly negatively with `z`: no
/// blow-down is compatible with representing `z` as a pullback.
pub fn is_minimal_wrt(z: &Cycle) -> bool {
    let graph = z.graph();
    (0..graph.vertex_count()).all(|i| {
        let v = graph.vertex(i);
        v.self_intersection != -1 || v.genus != 0 || z.dot_vertex(i).is_negative()
    })
}

/// Convenience: applies a sequence of blow-ups, threading the graph.
pub fn blow_up_chain(graph: &Arc<DualGraph>, centers: Vec<PointSpec>) -> Result<Vec<BlowupMap>> {
    let mut maps = Vec::with_capacity(centers.len());
    let mut current = Arc::clone(graph);
    for center in centers {
        let map = blow_up(&current, center)?;
        current = Arc::clone(map.target());
        maps.push(map);
    }
    Ok(maps)
}

/// Pulls a cycle through an entire chain of blow-ups.
pub fn pullback_chain(maps: &[BlowupMap], z: &Cycle) -> Result<Cycle> {
    let mut current = z.clone();
    for map in maps {
        current = map.pullback(&current)?;
    }
    Ok(current)
}
