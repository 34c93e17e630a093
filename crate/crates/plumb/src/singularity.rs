//! Distinguished cycles of a resolution graph and singularity-level data.
//!
//! The closure loop here is the workhorse: it raises coefficients one step
//! at a time until a target system of pairing inequalities holds. The
//! fundamental cycle, and the bound cycle used by the construction module,
//! are both instances.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::graph::{Cycle, DualGraph};
use crate::{Error, Result, Tri};

/// Componentwise-least cycle W >= start with W . E_j <= -margin_j for all j.
///
/// One violating coefficient is raised per step. The set of solutions above
/// `start` is closed under componentwise minimum and every intermediate W
/// stays below each solution, so the result is independent of the selection
/// order. Termination for non-negative margins follows from negative
/// definiteness.
pub(crate) fn laufer_minimal(start: &Cycle, margins: &[i64]) -> Cycle {
    let graph = Arc::clone(start.graph());
    let n = graph.vertex_count();
    assert_eq!(margins.len(), n, "one margin per vertex");
    let bounds: Vec<BigRational> =
        margins.iter().map(|&m| BigRational::from_integer(BigInt::from(-m))).collect();
    let mut w = start.clone();
    let mut dots: Vec<BigRational> = (0..n).map(|i| w.dot_vertex(i)).collect();
    loop {
        let Some(j) = (0..n).find(|&j| dots[j] > bounds[j]) else {
            return w;
        };
        *w.coeff_mut(j) += BigRational::one();
        dots[j] += BigRational::from_integer(BigInt::from(graph.vertex(j).self_intersection));
        for &i in graph.neighbors(j) {
            dots[i] += BigRational::one();
        }
    }
}

/// Least anti-nef cycle above `z0`. Requires `z0` integral and effective.
pub fn anti_nef_closure(z0: &Cycle) -> Result<Cycle> {
    if !z0.is_integral() {
        return Err(Error::invalid("closure start cycle must be integral"));
    }
    if !z0.is_effective() {
        return Err(Error::invalid("closure start cycle has a negative coefficient"));
    }
    Ok(laufer_minimal(z0, &vec![0; z0.graph().vertex_count()]))
}

/// Least positive anti-nef cycle: the closure of the reduced divisor.
/// Any positive anti-nef cycle on a connected graph has full support, so
/// starting from the reduced divisor loses nothing.
pub fn fundamental_cycle(graph: &Arc<DualGraph>) -> Cycle {
    laufer_minimal(&Cycle::reduced(graph), &vec![0; graph.vertex_count()])
}

/// Unique rational solution of Z . E_i = E_i^2 + 2 - 2 g(E_i) for all i.
pub fn canonical_cycle(graph: &Arc<DualGraph>) -> Cycle {
    let n = graph.vertex_count();
    let mut matrix = vec![vec![BigRational::zero(); n + 1]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().take(n).enumerate() {
            *entry = BigRational::from_integer(BigInt::from(graph.pairing(i, j)));
        }
        row[n] = BigRational::from_integer(BigInt::from(-graph.k_degree(i)));
    }
    let coeffs = solve(matrix).expect("negative definite form is invertible");
    Cycle::from_coeffs(graph, coeffs).expect("solution length matches vertex count")
}

/// Exact Gaussian elimination on an augmented n x (n+1) system.
fn solve(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for entry in &mut m[col] {
            *entry /= &p;
        }
        let pivot_row = m[col].clone();
        for (row, r) in m.iter_mut().enumerate() {
            if row != col && !r[col].is_zero() {
                let factor = r[col].clone();
                for (entry, p) in r.iter_mut().zip(&pivot_row).skip(col) {
                    *entry -= &factor * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[row.len() - 1].clone()).collect())
}

/// K . Z computed by adjunction: sum of z_i (-E_i^2 + 2 g_i - 2).
pub fn k_dot(z: &Cycle) -> BigRational {
    let graph = z.graph();
    let mut acc = BigRational::zero();
    for (i, c) in z.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += c * BigRational::from_integer(BigInt::from(graph.k_degree(i)));
        }
    }
    acc
}

/// The canonical cycle has integral coefficients.
pub fn is_numerically_gorenstein(graph: &Arc<DualGraph>) -> bool {
    canonical_cycle(graph).is_integral()
}

/// -Z_f^2 on a minimal graph.
pub fn degree(s: &SingularityData) -> Result<BigInt> {
    if !s.graph().is_minimal() {
        return Err(Error::invalid("degree requires a minimal graph (blow down first)"));
    }
    let zf = fundamental_cycle(s.graph());
    Ok((-zf.self_intersection()).to_integer())
}

/// Resolution graph plus the analytic data declared for the singularity it
/// resolves. The graph alone does not determine p_g, the maximal ideal
/// cycle, or the cohomological cycle; they are inputs here, with defaults
/// filled in only where a theorem pins them down.
#[derive(Debug, Clone)]
pub struct SingularityData {
    graph: Arc<DualGraph>,
    pg: Tri<u64>,
    gorenstein: bool,
    maximal_ideal_cycle: Option<Cycle>,
    cohomological_cycle: Option<Cycle>,
}

impl SingularityData {
    pub fn new(graph: Arc<DualGraph>, pg: Tri<u64>) -> SingularityData {
        SingularityData {
            graph,
            pg,
            gorenstein: false,
            maximal_ideal_cycle: None,
            cohomological_cycle: None,
        }
    }

    pub fn rational(graph: Arc<DualGraph>) -> SingularityData {
        SingularityData::new(graph, Tri::Known(0))
    }

    pub fn with_gorenstein(mut self, flag: bool) -> SingularityData {
        self.gorenstein = flag;
        self
    }

    /// Declares the maximal ideal cycle. It must be integral, anti-nef and
    /// positive on this graph.
    pub fn with_maximal_ideal_cycle(mut self, m: Cycle) -> Result<SingularityData> {
        if !Arc::ptr_eq(m.graph(), &self.graph) {
            return Err(Error::invalid("maximal ideal cycle lives on a different graph"));
        }
        if !(m.is_integral() && m.is_positive() && m.is_anti_nef()) {
            return Err(Error::invalid(
                "maximal ideal cycle must be integral, positive and anti-nef",
            ));
        }
        self.maximal_ideal_cycle = Some(m);
        Ok(self)
    }

    /// Declares the cohomological cycle (the cycle computing p_g through
    /// its structure sheaf). It must be integral and positive; a rational
    /// singularity has none.
    pub fn with_cohomological_cycle(mut self, c: Cycle) -> Result<SingularityData> {
        if !Arc::ptr_eq(c.graph(), &self.graph) {
            return Err(Error::invalid("cohomological cycle lives on a different graph"));
        }
        if !(c.is_integral() && c.is_positive()) {
            return Err(Error::invalid("cohomological cycle must be integral and positive"));
        }
        if self.pg == Tri::Known(0) {
            return Err(Error::inconsistent("a rational singularity has no cohomological cycle"));
        }
        self.cohomological_cycle = Some(c);
        Ok(self)
    }

    pub fn graph(&self) -> &Arc<DualGraph> {
        &self.graph
    }

    pub fn pg(&self) -> &Tri<u64> {
        &self.pg
    }

    pub fn is_gorenstein(&self) -> bool {
        self.gorenstein
    }

    pub fn is_rational(&self) -> bool {
        self.pg == Tri::Known(0)
    }

    /// Gorenstein with p_g = 1.
    pub fn is_minimally_elliptic(&self) -> bool {
        self.gorenstein && self.pg == Tri::Known(1)
    }

    /// The declared maximal ideal cycle, or a default where one is forced:
    /// the fundamental cycle for rational singularities (any resolution),
    /// and for minimally elliptic ones on the minimal resolution as long as
    /// Z_f^2 <= -2 (at Z_f^2 = -1 a base point survives and the maximal
    /// ideal cycle is not cut out by the graph).
    pub fn maximal_ideal_cycle(&self) -> Option<Cycle> {
        if let Some(m) = &self.maximal_ideal_cycle {
            return Some(m.clone());
        }
        if self.is_rational() {
            return Some(fundamental_cycle(&self.graph));
        }
        if self.is_minimally_elliptic() && self.graph.is_minimal() {
            let zf = fundamental_cycle(&self.graph);
            if zf.self_intersection() <= BigRational::from_integer(BigInt::from(-2)) {
                return Some(zf);
            }
        }
        None
    }

    /// The declared cohomological cycle, or the canonical cycle when the
    /// Gorenstein flag is set, p_g is known positive, and the graph is
    /// minimal and numerically Gorenstein.
    pub fn cohomological_cycle(&self) -> Option<Cycle> {
        if let Some(c) = &self.cohomological_cycle {
            return Some(c.clone());
        }
        match self.pg {
            Tri::Known(p) if p > 0 => {}
            _ => return None,
        }
        if self.gorenstein && self.graph.is_minimal() {
            let zk = canonical_cycle(&self.graph);
            if zk.is_integral() && zk.is_positive() {
                return Some(zk);
            }
        }
        None
    }
}
