//! Weighted dual graphs of exceptional divisors and rational cycles on them.
//!
//! A [`DualGraph`] is validated once at construction and immutable after
//! that. Vertices are kept sorted lexicographically by id; that order is
//! the coefficient order of every [`Cycle`] on the graph and the order used
//! by the canonical JSON form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Irreducible component of the exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub self_intersection: i64,
    pub genus: u32,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String, u32)>,
}

/// Symmetric integer intersection form with the leading principal minors of
/// its negation cached at construction.
#[derive(Debug, Clone)]
pub struct QuadForm {
    dim: usize,
    entries: Vec<i64>, // row-major, dim x dim
    neg_minors: Vec<BigInt>,
}

impl QuadForm {
    /// Builds the form from a dense square symmetric matrix.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let dim = rows.len();
        for row in &rows {
            if row.len() != dim {
                return Err(Error::invalid("intersection matrix is not square"));
            }
        }
        let mut entries = vec![0i64; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::invalid("intersection matrix is not symmetric"));
                }
                entries[i * dim + j] = rows[i][j];
            }
        }
        let neg_minors = (1..=dim)
            .map(|k| {
                let m: Vec<Vec<BigInt>> = (0..k)
                    .map(|i| (0..k).map(|j| BigInt::from(-entries[i * dim + j])).collect())
                    .collect();
                det(m)
            })
            .collect();
        Ok(QuadForm { dim, entries, neg_minors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    /// Leading principal minors of the negated matrix, sizes 1..=dim.
    pub fn negated_leading_minors(&self) -> &[BigInt] {
        &self.neg_minors
    }

    /// Sylvester criterion: the form is negative definite exactly when all
    /// leading principal minors of the negated matrix are positive.
    pub fn is_negative_definite(&self) -> bool {
        self.neg_minors.iter().all(|m| m.is_positive())
    }

    /// Evaluates z^T A z exactly.
    pub fn evaluate(&self, z: &[BigRational]) -> BigRational {
        assert_eq!(z.len(), self.dim, "vector length must match form dimension");
        let mut acc = BigRational::zero();
        for i in 0..self.dim {
            if z[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let e = self.entry(i, j);
                if e != 0 && !z[j].is_zero() {
                    acc += &z[i] * &z[j] * BigRational::from_integer(BigInt::from(e));
                }
            }
        }
        acc
    }
}

/// Exact determinant by fraction-free elimination with row swaps.
fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // Bareiss: division is exact
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Validated dual graph of a resolution.
///
/// Construction rejects duplicate or unknown ids, loops, repeated edges,
/// edge multiplicities other than one, non-negative self-intersections,
/// empty or disconnected graphs, and any intersection form that is not
/// negative definite.
#[derive(Debug)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>, // i < j, sorted
    adjacency: Vec<Vec<usize>>,
    form: QuadForm,
}

impl PartialEq for DualGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DualGraph {}

impl DualGraph {
    pub fn new(mut vertices: Vec<Vertex>, edges: Vec<(String, String, u32)>) -> Result<Arc<Self>> {
        if vertices.is_empty() {
            return Err(Error::invalid("graph has no vertices"));
        }
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate vertex id {:?}", v.id)));
            }
            if v.self_intersection >= 0 {
                return Err(Error::invalid(format!(
                    "vertex {:?} has self-intersection {} (must be negative)",
                    v.id, v.self_intersection
                )));
            }
        }

        let mut edge_idx = Vec::with_capacity(edges.len());
        for (a, b, mult) in &edges {
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::invalid(format!("edge endpoint {a:?} is not a vertex")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::invalid(format!("edge endpoint {b:?} is not a vertex")))?;
            if ia == ib {
                return Err(Error::invalid(format!("loop edge at {a:?}")));
            }
            if *mult != 1 {
                return Err(Error::invalid(format!(
                    "edge {a:?}-{b:?} has multiplicity {mult} (must be 1)"
                )));
            }
            edge_idx.push((ia.min(ib), ia.max(ib)));
        }
        edge_idx.sort_unstable();
        if edge_idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("repeated edge"));
        }

        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &edge_idx {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }

        // Connectivity: breadth-first from vertex 0.
        let mut seen = vec![false; n];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(v) = queue.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("graph is not connected"));
        }

        let mut rows = vec![vec![0i64; n]; n];
        for (i, v) in vertices.iter().enumerate() {
            rows[i][i] = v.self_intersection;
        }
        for &(i, j) in &edge_idx {
            rows[i][j] = 1;
            rows[j][i] = 1;
        }
        let form = QuadForm::new(rows)?;
        if !form.is_negative_definite() {
            return Err(Error::invalid("intersection form is not negative definite"));
        }

        Ok(Arc::new(DualGraph { vertices, edges: edge_idx, adjacency, form }))
    }

    pub fn from_json(s: &str) -> Result<Arc<Self>> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Self::new(raw.vertices, raw.edges)
    }

    /// Canonical JSON: vertices in lexicographic id order, edges sorted by
    /// endpoint ids. Always round-trips through [`DualGraph::from_json`].
    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| (self.vertices[i].id.clone(), self.vertices[j].id.clone(), 1))
                .collect(),
        };
        serde_json::to_string(&raw).expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.id.as_str().cmp(id)).ok()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index_of(id).is_some()
    }

    /// Edges as index pairs (i, j) with i < j.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(&j)
    }

    /// E_i . E_j
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.vertices[i].self_intersection
        } else if self.has_edge(i, j) {
            1
        } else {
            0
        }
    }

    pub fn form(&self) -> &QuadForm {
        &self.form
    }

    /// A graph is minimal when no vertex is a genus-zero (-1)-curve.
    pub fn is_minimal(&self) -> bool {
        !self.vertices.iter().any(|v| v.self_intersection == -1 && v.genus == 0)
    }

    /// Adjunction degree -E^2 + 2g - 2 of a single vertex.
    pub fn k_degree(&self, i: usize) -> i64 {
        let v = &self.vertices[i];
        -v.self_intersection + 2 * i64::from(v.genus) - 2
    }
}

/// Rational cycle supported on the exceptional divisor of a fixed graph.
///
/// Coefficients are dense in the graph's vertex order. Binary operations
/// require both operands to reference the *same* graph (pointer identity,
/// not isomorphism).
#[derive(Debug, Clone)]
pub struct Cycle {
    graph: Arc<DualGraph>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) && self.coeffs == other.coeffs
    }
}

impl Eq for Cycle {}

#[derive(Serialize, Deserialize)]
struct CycleJson {
    coefficients: BTreeMap<String, CoeffJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Int(i64),
    Str(String),
}

impl Cycle {
    pub fn zero(graph: &Arc<DualGraph>) -> Cycle {
        Cycle { graph: Arc::clone(graph), coeffs: vec![BigRational::zero(); graph.vertex_count()] }
    }

    pub fn unit(graph: &Arc<DualGraph>, id: &str) -> Result<Cycle> {
        let i = graph
            .index_of(id)
            .ok_or_else(|| Error::invalid(format!("no vertex {id:?} in graph")))?;
        let mut c = Cycle::zero(graph);
        c.coeffs[i] = BigRational::one();
        Ok(c)
    }

    /// Sum of all vertices with coefficient one (the reduced divisor).
    pub fn reduced(graph: &Arc<DualGraph>) -> Cycle {
        Cycle { graph: Arc::clone(graph), coeffs: vec![BigRational::one(); graph.vertex_count()] }
    }

    pub fn from_coeffs(graph: &Arc<DualGraph>, coeffs: Vec<BigRational>) -> Result<Cycle> {
        if coeffs.len() != graph.vertex_count() {
            return Err(Error::invalid("coefficient count does not match vertex count"));
        }
        Ok(Cycle { graph: Arc::clone(graph), coeffs })
    }

    pub fn from_map(graph: &Arc<DualGraph>, map: &BTreeMap<String, BigRational>) -> Result<Cycle> {
        let mut c = Cycle::zero(graph);
        for (id, value) in map {
            let i = graph
                .index_of(id)
                .ok_or_else(|| Error::invalid(format!("no vertex {id:?} in graph")))?;
            c.coeffs[i] = value.clone();
        }
        Ok(c)
    }

    pub fn from_int_entries(graph: &Arc<DualGraph>, entries: &[(&str, i64)]) -> Result<Cycle> {
        let mut map = BTreeMap::new();
        for (id, v) in entries {
            map.insert((*id).to_string(), BigRational::from_integer(BigInt::from(*v)));
        }
        Cycle::from_map(graph, &map)
    }

    pub fn from_json(graph: &Arc<DualGraph>, s: &str) -> Result<Cycle> {
        let raw: CycleJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        let mut map = BTreeMap::new();
        for (id, coeff) in raw.coefficients {
            let value = match coeff {
                CoeffJson::Int(n) => BigRational::from_integer(BigInt::from(n)),
                CoeffJson::Str(text) => parse_rational(&text)?,
            };
            map.insert(id, value);
        }
        Cycle::from_map(graph, &map)
    }

    /// Canonical JSON: ids in lexicographic order, zero coefficients
    /// omitted, integers emitted as numbers, other rationals as "p/q".
    pub fn to_json(&self) -> String {
        let mut coefficients = BTreeMap::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let id = self.graph.vertex(i).id.clone();
            let entry = if c.is_integer() {
                match i64::try_from(c.to_integer()) {
                    Ok(n) => CoeffJson::Int(n),
                    Err(_) => CoeffJson::Str(c.to_integer().to_string()),
                }
            } else {
                CoeffJson::Str(format!("{}/{}", c.numer(), c.denom()))
            };
            coefficients.insert(id, entry);
        }
        serde_json::to_string(&CycleJson { coefficients }).expect("cycle serialization cannot fail")
    }

    pub fn graph(&self) -> &Arc<DualGraph> {
        &self.graph
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeff_of(&self, id: &str) -> Option<&BigRational> {
        self.graph.index_of(id).map(|i| &self.coeffs[i])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub(crate) fn coeff_mut(&mut self, i: usize) -> &mut BigRational {
        &mut self.coeffs[i]
    }

    fn check_same_graph(&self, other: &Cycle) -> Result<()> {
        if Arc::ptr_eq(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(Error::invalid("cycles live on different graphs"))
        }
    }

    pub fn try_add(&self, other: &Cycle) -> Result<Cycle> {
        self.check_same_graph(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cycle { graph: Arc::clone(&self.graph), coeffs })
    }

    pub fn try_sub(&self, other: &Cycle) -> Result<Cycle> {
        self.check_same_graph(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Cycle { graph: Arc::clone(&self.graph), coeffs })
    }

    pub fn scale(&self, factor: &BigRational) -> Cycle {
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        Cycle { graph: Arc::clone(&self.graph), coeffs }
    }

    pub fn scale_int(&self, factor: i64) -> Cycle {
        self.scale(&BigRational::from_integer(BigInt::from(factor)))
    }

    /// Z . E_i, the pairing against a single vertex.
    pub fn dot_vertex(&self, i: usize) -> BigRational {
        let mut acc = &self.coeffs[i]
            * BigRational::from_integer(BigInt::from(self.graph.vertex(i).self_intersection));
        for &j in self.graph.neighbors(i) {
            acc += &self.coeffs[j];
        }
        acc
    }

    /// Exact intersection pairing Z . W. Errors when the cycles reference
    /// different graphs.
    pub fn intersect(&self, other: &Cycle) -> Result<BigRational> {
        self.check_same_graph(other)?;
        let mut acc = BigRational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * other.dot_vertex(i);
            }
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> BigRational {
        self.intersect(self).expect("same graph")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// All coefficients non-negative.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Effective and not zero.
    pub fn is_positive(&self) -> bool {
        self.is_effective() && !self.is_zero()
    }

    /// Z . E_i <= 0 for every vertex.
    pub fn is_anti_nef(&self) -> bool {
        (0..self.graph.vertex_count()).all(|i| !self.dot_vertex(i).is_positive())
    }

    /// Indices of vertices with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn support_ids(&self) -> Vec<&str> {
        self.support().into_iter().map(|i| self.graph.vertex(i).id.as_str()).collect()
    }

    /// Indices of vertices with Z . E_i = 0.
    pub fn perp(&self) -> Vec<usize> {
        (0..self.graph.vertex_count()).filter(|&i| self.dot_vertex(i).is_zero()).collect()
    }

    pub fn max_coeff(&self) -> BigRational {
        self.coeffs.iter().max().cloned().unwrap_or_else(BigRational::zero)
    }
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = |_| Error::invalid(format!("cannot parse {text:?} as a rational"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(bad)?;
            let q = BigInt::from_str(q.trim()).map_err(bad)?;
            if q.is_zero() {
                return Err(Error::invalid(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(text.trim()).map_err(bad)?)),
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", self.graph.vertex(i).id)?;
            } else {
                write!(f, "{} {}", c, self.graph.vertex(i).id)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{cy, graph};

    #[test]
    fn rejects_duplicate_ids() {
        let err = DualGraph::new(
            vec![
                Vertex { id: "E0".into(), self_intersection: -2, genus: 0 },
                Vertex { id: "E0".into(), self_intersection: -3, genus: 0 },
            ],
            vec![("E0".into(), "E0".into(), 1)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn rejects_loop_and_multiplicity() {
        let v = |id: &str| Vertex { id: id.into(), self_intersection: -2, genus: 0 };
        let err =
            DualGraph::new(vec![v("A"), v("B")], vec![("A".into(), "A".into(), 1)]).unwrap_err();
        assert!(err.to_string().contains("loop"));
        let err =
            DualGraph::new(vec![v("A"), v("B")], vec![("A".into(), "B".into(), 2)]).unwrap_err();
        assert!(err.to_string().contains("multiplicity"));
    }

    #[test]
    fn rejects_repeated_edge_and_unknown_endpoint() {
        let v = |id: &str| Vertex { id: id.into(), self_intersection: -3, genus: 0 };
        let err = DualGraph::new(
            vec![v("A"), v("B")],
            vec![("A".into(), "B".into(), 1), ("B".into(), "A".into(), 1)],
        )
        .unwrap_err();
        assert!(err.to_string().contains("repeated edge"));
        let err = DualGraph::new(vec![v("A")], vec![("A".into(), "C".into(), 1)]).unwrap_err();
        assert!(err.to_string().contains("not a vertex"));
    }

    #[test]
    fn rejects_disconnected_and_empty() {
        let v = |id: &str| Vertex { id: id.into(), self_intersection: -2, genus: 0 };
        let err = DualGraph::new(vec![v("A"), v("B")], vec![]).unwrap_err();
        assert!(err.to_string().contains("not connected"));
        let err = DualGraph::new(vec![], vec![]).unwrap_err();
        assert!(err.to_string().contains("no vertices"));
    }

    #[test]
    fn rejects_nonnegative_self_intersection() {
        let err = DualGraph::new(
            vec![Vertex { id: "A".into(), self_intersection: 0, genus: 0 }],
            vec![],
        )
        .unwrap_err();
        assert!(err.to_string().contains("self-intersection"));
    }

    #[test]
    fn rejects_indefinite_form() {
        // Two (-1)-vertices joined by an edge: det of the negated matrix is 0.
        let v = |id: &str| Vertex { id: id.into(), self_intersection: -1, genus: 0 };
        let err =
            DualGraph::new(vec![v("A"), v("B")], vec![("A".into(), "B".into(), 1)]).unwrap_err();
        assert!(err.to_string().contains("negative definite"));
    }

    #[test]
    fn vertex_order_is_lexicographic() {
        let g = graph(&[("B", -2, 0), ("A", -2, 0), ("C", -3, 0)], &[("B", "A"), ("B", "C")]);
        let ids: Vec<&str> = g.vertices().iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, ["A", "B", "C"]);
        assert_eq!(g.index_of("C"), Some(2));
    }

    #[test]
    fn pairing_matches_form() {
        let g = graph(&[("E0", -2, 0), ("E1", -3, 1)], &[("E0", "E1")]);
        assert_eq!(g.pairing(0, 0), -2);
        assert_eq!(g.pairing(0, 1), 1);
        assert_eq!(g.form().entry(1, 1), -3);
        assert_eq!(g.k_degree(1), 3 + 2 - 2);
    }

    #[test]
    fn quadform_definite_examples() {
        // A2 chain: negative definite.
        let a2 = QuadForm::new(vec![vec![-2, 1], vec![1, -2]]).unwrap();
        assert!(a2.is_negative_definite());
        // Degenerate pair: det 0.
        let deg = QuadForm::new(vec![vec![-1, 1], vec![1, -1]]).unwrap();
        assert!(!deg.is_negative_definite());
        // Indefinite.
        let ind = QuadForm::new(vec![vec![-1, 3], vec![3, -1]]).unwrap();
        assert!(!ind.is_negative_definite());
        let err = QuadForm::new(vec![vec![-1, 2], vec![1, -1]]).unwrap_err();
        assert!(err.to_string().contains("symmetric"));
    }

    #[test]
    fn quadform_evaluate_matches_intersect() {
        let g = graph(&[("E0", -2, 0), ("E1", -2, 0), ("E2", -3, 0)], &[("E0", "E1"), ("E1", "E2")]);
        let z = cy(&g, &[("E0", 2), ("E1", 3), ("E2", 1)]);
        assert_eq!(g.form().evaluate(z.coeffs()), z.self_intersection());
    }

    #[test]
    fn cycle_arithmetic_and_predicates() {
        let g = graph(&[("E0", -2, 0), ("E1", -2, 0)], &[("E0", "E1")]);
        let z = cy(&g, &[("E0", 1), ("E1", 1)]);
        assert!(z.is_anti_nef());
        assert!(z.is_integral());
        assert!(z.is_positive());
        assert_eq!(z.self_intersection(), BigRational::from_integer(BigInt::from(-2)));
        let e0 = Cycle::unit(&g, "E0").unwrap();
        assert!(!e0.is_anti_nef()); // E0 . E1 = 1
        let w = z.try_sub(&e0).unwrap();
        assert_eq!(w.coeff_of("E0").unwrap(), &BigRational::zero());
        assert_eq!(z.support_ids(), vec!["E0", "E1"]);
        assert_eq!(w.support_ids(), vec!["E1"]);
        assert_eq!(z.perp(), Vec::<usize>::new());
    }

    #[test]
    fn cycles_on_different_graphs_are_rejected() {
        let g1 = graph(&[("E0", -2, 0)], &[]);
        let g2 = graph(&[("E0", -2, 0)], &[]);
        let a = cy(&g1, &[("E0", 1)]);
        let b = cy(&g2, &[("E0", 1)]);
        assert!(a.intersect(&b).is_err());
        assert!(a.try_add(&b).is_err());
        // Same data, distinct identity.
        assert_ne!(a, b);
    }

    #[test]
    fn graph_json_round_trip_is_canonical() {
        let g = graph(&[("E1", -2, 0), ("E0", -1, 2)], &[("E1", "E0")]);
        let s = g.to_json();
        let g2 = DualGraph::from_json(&s).unwrap();
        assert_eq!(*g, *g2);
        assert_eq!(s, g2.to_json());
        // Vertices appear in id order in the serialized form.
        assert!(s.find("\"E0\"").unwrap() < s.find("\"E1\"").unwrap());
    }

    #[test]
    fn graph_json_errors() {
        let err = DualGraph::from_json("{\"vertices\": [").unwrap_err();
        assert!(matches!(err, Error::Json(_)));
        assert!(err.to_string().contains("column"));
        // Well-formed json, invalid graph: validation error, not a json error.
        let err = DualGraph::from_json(
            "{\"vertices\":[{\"id\":\"A\",\"self_intersection\":-1,\"genus\":0},\
             {\"id\":\"B\",\"self_intersection\":-1,\"genus\":0}],\
             \"edges\":[[\"A\",\"B\",1]]}",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn cycle_json_round_trip_with_rationals() {
        let g = graph(&[("E0", -3, 0), ("E1", -2, 0)], &[("E0", "E1")]);
        let z = Cycle::from_json(&g, "{\"coefficients\":{\"E0\":\"1/3\",\"E1\":2}}").unwrap();
        assert_eq!(z.coeff_of("E0").unwrap(), &BigRational::new(BigInt::one(), BigInt::from(3)));
        let s = z.to_json();
        let z2 = Cycle::from_json(&g, &s).unwrap();
        assert_eq!(z, z2);
        assert_eq!(s, "{\"coefficients\":{\"E0\":\"1/3\",\"E1\":2}}");
        // Unknown id rejected.
        assert!(Cycle::from_json(&g, "{\"coefficients\":{\"X\":1}}").is_err());
        // Zero denominator rejected.
        assert!(Cycle::from_json(&g, "{\"coefficients\":{\"E0\":\"1/0\"}}").is_err());
    }

    #[test]
    fn display_renders_named_terms() {
        let g = graph(&[("E0", -2, 2)], &[]);
        let z = cy(&g, &[("E0", 2)]);
        assert_eq!(z.to_string(), "2 E0");
        assert_eq!(Cycle::zero(&g).to_string(), "0");
    }
}
