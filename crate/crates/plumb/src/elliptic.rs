//! Degree-zero line-bundle bookkeeping on an elliptic base curve, and the
//! classification of Ulrich ideals for simple elliptic cone singularities.
//!
//! Points of the elliptic curve are tracked through their images in
//! (Q/Z)^2, which captures every torsion class exactly. Blown-up points
//! are registered by the id of their exceptional curve; restriction
//! classes of cycles are then computed from the graph side alone.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::Rational64;
use num::{Signed, Zero};

use crate::blowup::{blow_up_chain, pullback_chain, BlowupMap, PointSpec};
use crate::graph::{Cycle, DualGraph, Vertex};
use crate::invariants::{colength, multiplicity, IdealDescriptor};
use crate::singularity::{k_dot, SingularityData};
use crate::{Error, Result, Tri};

/// A point of (Q/Z)^2: the rational shadow of a point on an elliptic
/// curve, exact on every torsion class. Coordinates are kept in [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PicPoint {
    x: Rational64,
    y: Rational64,
}

fn wrap(r: Rational64) -> Rational64 {
    r - r.floor()
}

impl PicPoint {
    pub fn new(x: Rational64, y: Rational64) -> PicPoint {
        PicPoint { x: wrap(x), y: wrap(y) }
    }

    pub fn zero() -> PicPoint {
        PicPoint { x: Rational64::zero(), y: Rational64::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn x(&self) -> Rational64 {
        self.x
    }

    pub fn y(&self) -> Rational64 {
        self.y
    }

    pub fn add(&self, other: &PicPoint) -> PicPoint {
        PicPoint::new(self.x + other.x, self.y + other.y)
    }

    pub fn neg(&self) -> PicPoint {
        PicPoint::new(-self.x, -self.y)
    }

    pub fn sub(&self, other: &PicPoint) -> PicPoint {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> PicPoint {
        let k = Rational64::from_integer(k);
        PicPoint::new(self.x * k, self.y * k)
    }

    /// All solutions of n X = target: there are exactly n^2 of them,
    /// the translates of one solution by the n-torsion subgroup.
    pub fn torsion_solutions(n: u32, target: &PicPoint) -> Vec<PicPoint> {
        assert!(n > 0, "torsion order must be positive");
        let n = i64::from(n);
        let inv = Rational64::new(1, n);
        let base = PicPoint::new(target.x * inv, target.y * inv);
        let mut out = Vec::with_capacity((n * n) as usize);
        for i in 0..n {
            for j in 0..n {
                out.push(base.add(&PicPoint::new(
                    Rational64::new(i, n),
                    Rational64::new(j, n),
                )));
            }
        }
        out
    }
}

impl fmt::Display for PicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A simple elliptic cone: the base curve's self-pairing degree, the class
/// of O_{E0}(-E0), and the registered classes of blown-up points, keyed by
/// the id of the exceptional curve over each point.
#[derive(Debug, Clone)]
pub struct EllipticSingularity {
    degree: u64,
    base_class: PicPoint,
    registry: BTreeMap<String, PicPoint>,
}

impl EllipticSingularity {
    pub fn new(degree: u64, base_class: PicPoint) -> EllipticSingularity {
        assert!(degree > 0, "degree must be positive");
        EllipticSingularity { degree, base_class, registry: BTreeMap::new() }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn base_class(&self) -> PicPoint {
        self.base_class
    }

    pub fn register(&mut self, exceptional_id: impl Into<String>, point: PicPoint) {
        self.registry.insert(exceptional_id.into(), point);
    }

    pub fn point(&self, exceptional_id: &str) -> Option<PicPoint> {
        self.registry.get(exceptional_id).copied()
    }
}

/// Restriction of O(Z) to the strict transform of the base curve:
/// its degree, and its class when every contributing point is registered.
#[derive(Debug, Clone)]
pub struct RestrictedClass {
    pub degree: BigInt,
    pub class: Tri<PicPoint>,
}

impl RestrictedClass {
    /// Whether O(-Z) restricts to the trivial bundle on the base curve.
    pub fn is_trivial(&self) -> Tri<bool> {
        if !self.degree.is_zero() {
            return Tri::Known(false);
        }
        match &self.class {
            Tri::Known(p) => Tri::Known(p.is_zero()),
            Tri::Unknown(r) => Tri::Unknown(r.clone()),
        }
    }
}

/// h1 of O(-Z) on a simple elliptic singularity, read off the restriction:
/// positive degree kills it, and at degree zero it is 1 exactly for the
/// trivial class.
pub fn h1_from_restriction(rc: &RestrictedClass) -> Tri<u64> {
    if rc.degree.is_positive() {
        return Tri::Known(0);
    }
    assert!(!rc.degree.is_negative(), "anti-nef cycles restrict with degree >= 0");
    match rc.is_trivial() {
        Tri::Known(true) => Tri::Known(1),
        Tri::Known(false) => Tri::Known(0),
        Tri::Unknown(r) => Tri::Unknown(r),
    }
}

/// Computes the restriction of O(Z) to the base curve after the given
/// chain of blow-ups. Writing n for the coefficient of the base vertex and
/// P for the total transform of the base curve,
/// Z - nP is supported off the base curve and
/// class = sum (z_v - n P_v) point(v) - n base_class
/// over the neighbors v of the base vertex.
pub fn restricted_class(
    ell: &EllipticSingularity,
    maps: &[BlowupMap],
    base: &str,
    z: &Cycle,
) -> Result<RestrictedClass> {
    let final_graph = z.graph();
    if let Some(last) = maps.last() {
        if !Arc::ptr_eq(final_graph, last.target()) {
            return Err(Error::invalid("cycle does not live on the last blow-up target"));
        }
    }
    if !z.is_integral() {
        return Err(Error::invalid("restriction needs an integral cycle"));
    }
    let base_idx = final_graph
        .index_of(base)
        .ok_or_else(|| Error::invalid(format!("no vertex named {base}")))?;

    let start = maps.first().map_or_else(|| Arc::clone(final_graph), |m| Arc::clone(m.source()));
    let p = pullback_chain(maps, &Cycle::unit(&start, base)?)?;

    let n = z.coeff(base_idx).to_integer();
    let n_i64 = i64::try_from(&n).map_err(|_| Error::invalid("base coefficient too large"))?;

    let degree = -z.dot_vertex(base_idx).to_integer();
    let mut class = Tri::Known(ell.base_class().scale(-n_i64));
    for &v in final_graph.neighbors(base_idx) {
        let coeff = (z.coeff(v) - p.coeff(v) * num::BigRational::from_integer(n.clone()))
            .to_integer();
        if coeff.is_zero() {
            continue;
        }
        let id = &final_graph.vertex(v).id;
        let Some(point) = ell.point(id) else {
            class = Tri::unknown("line-bundle class on C_X not graph-determined");
            break;
        };
        let coeff = i64::try_from(&coeff).map_err(|_| Error::invalid("coefficient too large"))?;
        if let Tri::Known(c) = &class {
            class = Tri::Known(c.add(&point.scale(coeff)));
        }
    }
    Ok(RestrictedClass { degree, class })
}

/// How a family of Ulrich ideals is parametrized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parametrization {
    /// Exactly one ideal.
    Single,
    /// A family parametrized by the base curve.
    CurveE0,
    /// A family parametrized by the projective line minus finitely many
    /// points.
    P1MinusPoints(u32),
    /// Finitely many ideals.
    FiniteCount(u32),
    /// Existence is known but the family is not pinned down here.
    Unstated,
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parametrization::Single => write!(f, "a single ideal"),
            Parametrization::CurveE0 => write!(f, "parametrized by the base curve"),
            Parametrization::P1MinusPoints(k) => {
                write!(f, "parametrized by P^1 minus {k} points")
            }
            Parametrization::FiniteCount(k) => write!(f, "exactly {k} ideals"),
            Parametrization::Unstated => write!(f, "unstated"),
        }
    }
}

/// One case of the classification: the numerical row, how the family is
/// parametrized, and a fully constructed witness.
#[derive(Debug, Clone)]
pub struct UlrichCase {
    pub label: &'static str,
    pub colength: u64,
    pub integral_gap: u64,
    pub h1: u64,
    pub k_dot: i64,
    pub multiplicity: u64,
    /// Coefficient of the base curve in the witness cycle.
    pub n: u64,
    pub parametrization: Parametrization,
    pub witness: IdealDescriptor,
    /// Vertices to blow down, in order, to reach the minimal model.
    pub contraction: Vec<String>,
}

struct CaseSpec {
    label: &'static str,
    /// Generic blow-up points on the base curve, as registered classes.
    points: Vec<PicPoint>,
    /// Coefficients of the witness cycle: base curve, then one per map in
    /// order (the X1 exceptional first where present, then the points).
    coeffs: Vec<i64>,
    h1: u64,
    gap: u64,
    parametrization: Parametrization,
}

/// Classifies the Ulrich ideals of the simple elliptic singularity of the
/// given degree, for a base curve whose O(-E0) class is `base_class`.
/// Every returned case carries a witness built on an actual resolution
/// graph with its invariants computed, matching the screen in the
/// invariants module row for row. Degrees five and up have none.
pub fn classify_ulrich(e: u64, base_class: PicPoint) -> Result<Vec<UlrichCase>> {
    if e == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    if e >= 5 {
        return Ok(Vec::new());
    }
    let c = base_class;
    let half = PicPoint::torsion_solutions(2, &c)[0];
    let third = PicPoint::new(Rational64::new(1, 3), Rational64::zero());
    let seventh = PicPoint::new(Rational64::new(1, 7), Rational64::zero());

    let specs: Vec<CaseSpec> = match e {
        1 => vec![
            CaseSpec {
                label: "the maximal ideal",
                points: vec![],
                coeffs: vec![1, 2],
                h1: 1,
                gap: 0,
                parametrization: Parametrization::Single,
            },
            CaseSpec {
                label: "colength two, pulled back from the base-point model",
                points: vec![],
                coeffs: vec![2, 2],
                h1: 0,
                gap: 0,
                parametrization: Parametrization::CurveE0,
            },
            CaseSpec {
                label: "colength three, two distinct cut points",
                points: vec![c.add(&third), c.sub(&third)],
                coeffs: vec![2, 2, 3, 3],
                h1: 1,
                gap: 0,
                // The excluded points come from the three roots of the
                // branch cubic.
                parametrization: Parametrization::P1MinusPoints(3),
            },
            CaseSpec {
                label: "colength four, a tangent cut point",
                points: vec![c.add(&PicPoint::new(Rational64::new(1, 2), Rational64::zero()))],
                coeffs: vec![2, 2, 4],
                h1: 1,
                gap: 0,
                // One tangent line for each root of the branch cubic.
                parametrization: Parametrization::FiniteCount(3),
            },
        ],
        2 => {
            let two_torsion = PicPoint::torsion_solutions(2, &c).len() as u32;
            vec![
                CaseSpec {
                    label: "the maximal ideal",
                    points: vec![],
                    coeffs: vec![1],
                    h1: 0,
                    gap: 0,
                    parametrization: Parametrization::Single,
                },
                CaseSpec {
                    label: "colength two, two distinct cut points",
                    points: vec![half.add(&seventh), half.sub(&seventh)],
                    coeffs: vec![1, 2, 2],
                    h1: 1,
                    gap: 0,
                    // The excluded points are exactly the tangent
                    // configurations of the next case.
                    parametrization: Parametrization::P1MinusPoints(two_torsion),
                },
                CaseSpec {
                    label: "colength three, a tangent cut point",
                    points: vec![half],
                    coeffs: vec![1, 3],
                    h1: 1,
                    gap: 0,
                    parametrization: Parametrization::FiniteCount(two_torsion),
                },
                CaseSpec {
                    label: "closure of the squared maximal ideal",
                    points: vec![],
                    coeffs: vec![2],
                    h1: 0,
                    gap: 1,
                    parametrization: Parametrization::Unstated,
                },
            ]
        }
        3 => vec![CaseSpec {
            label: "colength two, one cut point",
            points: vec![c.add(&seventh)],
            coeffs: vec![1, 2],
            h1: 0,
            gap: 0,
            parametrization: Parametrization::CurveE0,
        }],
        4 => vec![CaseSpec {
            label: "colength two over the maximal ideal",
            points: vec![],
            coeffs: vec![1],
            h1: 0,
            gap: 1,
            parametrization: Parametrization::Unstated,
        }],
        _ => unreachable!(),
    };

    specs.into_iter().map(|spec| build_case(e, c, spec)).collect()
}

/// Builds one classification case: blows up the model, registers the
/// points, derives h1 from the restriction, and packages the descriptor.
fn build_case(e: u64, base_class: PicPoint, spec: CaseSpec) -> Result<UlrichCase> {
    let cone = DualGraph::new(
        vec![Vertex { id: "E0".to_string(), self_intersection: -(e as i64), genus: 1 }],
        Vec::new(),
    )
    .expect("one-vertex elliptic cone is a valid graph");

    // Degree one needs the base point of the maximal ideal blown up first.
    let mut centers: Vec<PointSpec> = Vec::new();
    if e == 1 {
        centers.push(PointSpec::Generic("E0".to_string()));
    }
    for _ in &spec.points {
        centers.push(PointSpec::Generic("E0".to_string()));
    }
    let maps = blow_up_chain(&cone, centers)?;
    let graph = maps.last().map_or_else(|| Arc::clone(&cone), |m| Arc::clone(m.target()));

    let mut ell = EllipticSingularity::new(e, base_class);
    let mut exceptional_ids = Vec::new();
    for map in &maps {
        exceptional_ids.push(map.new_vertex().to_string());
    }
    if e == 1 {
        // The class of the base point is the base class itself: that is
        // what makes the maximal ideal's restriction trivial.
        ell.register(exceptional_ids[0].clone(), base_class);
        for (id, pt) in exceptional_ids[1..].iter().zip(&spec.points) {
            ell.register(id.clone(), *pt);
        }
    } else {
        for (id, pt) in exceptional_ids.iter().zip(&spec.points) {
            ell.register(id.clone(), *pt);
        }
    }

    assert_eq!(spec.coeffs.len(), 1 + exceptional_ids.len());
    let mut z = Cycle::unit(&graph, "E0")?.scale_int(spec.coeffs[0]);
    for (id, &k) in exceptional_ids.iter().zip(&spec.coeffs[1..]) {
        z = z.try_add(&Cycle::unit(&graph, id)?.scale_int(k))?;
    }

    // The maximal ideal cycle: E0 itself, or its total transform; on the
    // degree-one model the base-point exceptional enters twice.
    let mut m = Cycle::unit(&cone, "E0")?;
    if e == 1 {
        m = maps[0].pullback(&m)?.try_add(&Cycle::unit(maps[0].target(), &exceptional_ids[0])?)?;
        m = pullback_chain(&maps[1..], &m)?;
    } else {
        m = pullback_chain(&maps, &m)?;
    }

    let rc = restricted_class(&ell, &maps, "E0", &z)?;
    let h1 = h1_from_restriction(&rc);
    assert_eq!(h1, Tri::Known(spec.h1), "derived h1 disagrees for {}", spec.label);

    let mut sing = SingularityData::new(Arc::clone(&graph), Tri::Known(1))
        .with_gorenstein(true)
        .with_cohomological_cycle(Cycle::unit(&graph, "E0")?)?;
    sing = sing.with_maximal_ideal_cycle(m.clone())?;

    let witness = IdealDescriptor::new(sing, z.clone())?
        .with_h1(h1)?
        .with_integral_gap(Tri::Known(spec.gap))
        .flagged_generated()
        .flagged_stable();

    let col = match colength(&witness)? {
        Tri::Known(v) => u64::try_from(&v).expect("colength fits"),
        Tri::Unknown(r) => return Err(Error::inconsistent(format!("colength unknown: {r}"))),
    };
    let e0 = match multiplicity(&witness) {
        Tri::Known(v) => u64::try_from(&v).expect("multiplicity fits"),
        Tri::Unknown(r) => return Err(Error::inconsistent(format!("multiplicity unknown: {r}"))),
    };
    // Ulrich arithmetic: the colength is half the multiplicity.
    assert_eq!(2 * col, e0, "witness for {} is not Ulrich-shaped", spec.label);
    let kz = k_dot(&z);
    assert!(kz.is_integer());
    let kz = i64::try_from(&kz.to_integer()).expect("K.Z fits");

    // Blow everything down again, newest exceptional first.
    let contraction: Vec<String> = exceptional_ids.iter().rev().cloned().collect();

    Ok(UlrichCase {
        label: spec.label,
        colength: col,
        integral_gap: spec.gap,
        h1: spec.h1,
        k_dot: kz,
        multiplicity: e0,
        n: u64::try_from(spec.coeffs[0]).expect("base coefficient is positive"),
        parametrization: spec.parametrization,
        witness,
        contraction,
    })
}
