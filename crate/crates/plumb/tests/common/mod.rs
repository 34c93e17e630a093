//! Shared helpers for the integration suites: graph builders, independent
//! brute-force oracles over raw i64 arithmetic, and the seeded randomized
//! identity suite.

// Each suite uses its own subset of these helpers.
#![allow(dead_code)]

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plumb::blowup::{blow_up, PointSpec};
use plumb::graph::{Cycle, DualGraph, Vertex};
use plumb::invariants::{closure_colength, colength, epsilon, mu_data, IdealDescriptor};
use plumb::singularity::{
    anti_nef_closure, canonical_cycle, fundamental_cycle, k_dot, SingularityData,
};
use plumb::{Error, Tri};

pub fn graph(vertices: &[(&str, i64, u32)], edges: &[(&str, &str)]) -> Arc<DualGraph> {
    let vs = vertices
        .iter()
        .map(|&(id, self_intersection, genus)| Vertex {
            id: id.to_string(),
            self_intersection,
            genus,
        })
        .collect();
    let es = edges
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string(), 1))
        .collect();
    DualGraph::new(vs, es).expect("test graph is valid")
}

pub fn cy(g: &Arc<DualGraph>, coeffs: &[(&str, i64)]) -> Cycle {
    let mut z = Cycle::zero(g);
    for &(id, c) in coeffs {
        let unit = Cycle::unit(g, id).unwrap();
        z = z.try_add(&unit.scale_int(c)).unwrap();
    }
    z
}

/// The intersection table rebuilt from vertex and edge data alone, in i64.
pub fn raw_matrix(g: &Arc<DualGraph>) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = g.vertex(i).self_intersection;
    }
    for &(i, j) in g.edges() {
        a[i][j] += 1;
        a[j][i] += 1;
    }
    a
}

pub fn is_anti_nef_raw(a: &[Vec<i64>], z: &[i64]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).map(|j| a[i][j] * z[j]).sum::<i64>() <= 0)
}

fn quadratic_form(a: &[Vec<i64>], z: &[i64]) -> i64 {
    let mut q = 0;
    for (i, row) in a.iter().enumerate() {
        for (j, &aij) in row.iter().enumerate() {
            q += aij * z[i] * z[j];
        }
    }
    q
}

/// Calls `f` on every integer vector with lo[i] <= v[i] <= hi[i].
pub fn for_each_in_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let n = lo.len();
    let mut v = lo.to_vec();
    loop {
        f(&v);
        let mut carry = 0;
        while carry < n {
            if v[carry] < hi[carry] {
                v[carry] += 1;
                break;
            }
            v[carry] = lo[carry];
            carry += 1;
        }
        if carry == n {
            return;
        }
    }
}

pub fn as_i64(z: &Cycle) -> Vec<i64> {
    (0..z.graph().vertex_count())
        .map(|i| {
            let c = z.coeff(i);
            assert!(c.is_integer(), "cycle is not integral");
            i64::try_from(c.to_integer()).expect("coefficient fits in i64")
        })
        .collect()
}

/// Independent minimality proof for the smallest anti-nef cycle above
/// `lo`: the anti-nef set over a fixed lower bound is closed under the
/// coordinatewise minimum, so `z` is that minimum exactly when it is the
/// one and only anti-nef vector in the box [lo, z].
pub fn assert_box_minimal(g: &Arc<DualGraph>, lo: &[i64], z: &[i64]) {
    let a = raw_matrix(g);
    assert!(is_anti_nef_raw(&a, z), "claimed closure is not anti-nef");
    assert!(z.iter().all(|&c| c <= 30), "oracle bound exceeded: {z:?}");
    assert!(lo.iter().zip(z).all(|(l, c)| l <= c), "closure below start");
    let mut hits = 0usize;
    for_each_in_box(lo, z, |v| {
        if is_anti_nef_raw(&a, v) {
            hits += 1;
            assert_eq!(v, z, "smaller anti-nef vector in box");
        }
    });
    assert_eq!(hits, 1, "the closure must be the unique anti-nef point");
}

/// Bounded sweep of the quadratic form over [-3,3]^n minus the origin;
/// returns the maximum value attained.
pub fn sweep_max(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let lo = vec![-3i64; n];
    let hi = vec![3i64; n];
    let mut max = i64::MIN;
    for_each_in_box(&lo, &hi, |v| {
        if v.iter().any(|&c| c != 0) {
            max = max.max(quadratic_form(a, v));
        }
    });
    max
}

/// Vertex rows as (id, self-intersection, genus).
pub type RawVertices = Vec<(&'static str, i64, u32)>;
/// Edges as id pairs.
pub type RawEdges = Vec<(&'static str, &'static str)>;

/// Intersection tables that must be rejected: each comes with a vector in
/// the sweep box witnessing failure of negative definiteness.
pub fn indefinite_controls() -> Vec<(RawVertices, RawEdges)> {
    vec![
        // Triangle of (-1)-curves: (1,1,1) gives value 3.
        (
            vec![("A", -1, 0), ("B", -1, 0), ("C", -1, 0)],
            vec![("A", "B"), ("B", "C"), ("A", "C")],
        ),
        // Two (-1)-curves meeting once: (1,1) gives value 0.
        (vec![("A", -1, 0), ("B", -1, 0)], vec![("A", "B")]),
        // (-1)-hub with four (-2)-legs: (2,1,1,1,1) gives value 4.
        (
            vec![("H", -1, 0), ("L1", -2, 0), ("L2", -2, 0), ("L3", -2, 0), ("L4", -2, 0)],
            vec![("H", "L1"), ("H", "L2"), ("H", "L3"), ("H", "L4")],
        ),
    ]
}

pub fn raw_matrix_from_data(
    vertices: &[(&str, i64, u32)],
    edges: &[(&str, &str)],
) -> Vec<Vec<i64>> {
    let index = |id: &str| vertices.iter().position(|&(v, _, _)| v == id).unwrap();
    let n = vertices.len();
    let mut a = vec![vec![0i64; n]; n];
    for (i, &(_, s, _)) in vertices.iter().enumerate() {
        a[i][i] = s;
    }
    for &(x, y) in edges {
        let (i, j) = (index(x), index(y));
        a[i][j] += 1;
        a[j][i] += 1;
    }
    a
}

fn random_graph(rng: &mut ChaCha8Rng) -> Arc<DualGraph> {
    let n = rng.gen_range(2..=6usize);
    let ids: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    if n >= 3 && rng.gen_bool(0.4) {
        // One extra edge, skipping duplicates, to leave the tree shape.
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        if !edges.contains(&(a, b)) {
            edges.push((a, b));
        }
    }
    let mut degree = vec![0i64; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    // Strict diagonal dominance forces negative definiteness.
    let vertices: Vec<(String, i64, u32)> = (0..n)
        .map(|i| {
            (
                ids[i].clone(),
                -(degree[i] + rng.gen_range(1..=3i64)),
                rng.gen_range(0..=2u32),
            )
        })
        .collect();
    let vs = vertices
        .iter()
        .map(|(id, s, g)| Vertex { id: id.clone(), self_intersection: *s, genus: *g })
        .collect();
    let es = edges
        .iter()
        .map(|&(a, b)| (ids[a].clone(), ids[b].clone(), 1u32))
        .collect();
    DualGraph::new(vs, es).expect("diagonally dominant graph is valid")
}

fn random_effective_cycle(rng: &mut ChaCha8Rng, g: &Arc<DualGraph>) -> Cycle {
    let n = g.vertex_count();
    loop {
        let coeffs: Vec<BigRational> = (0..n)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(0..=3i64))))
            .collect();
        if coeffs.iter().any(|c| !num::Zero::is_zero(c)) {
            return Cycle::from_coeffs(g, coeffs).unwrap();
        }
    }
}

fn random_center(rng: &mut ChaCha8Rng, g: &Arc<DualGraph>) -> PointSpec {
    if rng.gen_bool(0.5) || g.edges().is_empty() {
        let i = rng.gen_range(0..g.vertex_count());
        PointSpec::Generic(g.vertex(i).id.clone())
    } else {
        let &(i, j) = &g.edges()[rng.gen_range(0..g.edges().len())];
        PointSpec::Intersection(g.vertex(i).id.clone(), g.vertex(j).id.clone())
    }
}

/// The seeded randomized identity suite. Every run with the same seed
/// replays the same cases; each case exercises all six identities.
pub fn run_property_suite(seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let g = random_graph(&mut rng);
        let map = blow_up(&g, random_center(&mut rng, &g)).unwrap();
        let f = Cycle::unit(map.target(), map.new_vertex()).unwrap();

        // Pullback preserves all pairings and is orthogonal to the new curve.
        let z1 = random_effective_cycle(&mut rng, &g);
        let z2 = random_effective_cycle(&mut rng, &g);
        let p1 = map.pullback(&z1).unwrap();
        let p2 = map.pullback(&z2).unwrap();
        assert_eq!(
            p1.intersect(&p2).unwrap(),
            z1.intersect(&z2).unwrap(),
            "pairing drifted in case {case}"
        );
        assert!(num::Zero::is_zero(&p1.intersect(&f).unwrap()));

        // The canonical cycle transforms as pullback minus the new curve.
        let zk_up = map.pullback(&canonical_cycle(&g)).unwrap();
        assert_eq!(
            canonical_cycle(map.target()),
            zk_up.try_sub(&f).unwrap(),
            "canonical transform failed in case {case}"
        );

        // Colengths are blow-up invariants of the ideal data.
        let z = anti_nef_closure(&random_effective_cycle(&mut rng, &g)).unwrap();
        // chi(Z) can be negative on high-genus graphs; draw (p_g, h1) inside
        // the range where the length chi(Z) + p_g - h1 stays non-negative.
        let chi_rat = -(z.self_intersection() + k_dot(&z)) / BigRational::from_integer(2.into());
        assert!(chi_rat.is_integer(), "chi is an integer for integral cycles");
        let chi = i64::try_from(chi_rat.to_integer()).expect("chi fits in i64");
        let pg = u64::try_from((1 - chi).max(1)).unwrap() + rng.gen_range(0..=2u64);
        let h1_cap = pg.min(u64::try_from(pg as i64 + chi).unwrap());
        let h1 = rng.gen_range(0..=h1_cap);
        let gap = rng.gen_range(0..=2u64);
        let s = SingularityData::new(Arc::clone(&g), Tri::Known(pg));
        let d = IdealDescriptor::new(s.clone(), z.clone())
            .unwrap()
            .with_h1(Tri::Known(h1))
            .unwrap()
            .with_integral_gap(Tri::Known(gap));
        let s_up = SingularityData::new(Arc::clone(map.target()), Tri::Known(pg));
        let d_up = IdealDescriptor::new(s_up, map.pullback(&z).unwrap())
            .unwrap()
            .with_h1(Tri::Known(h1))
            .unwrap()
            .with_integral_gap(Tri::Known(gap));
        assert_eq!(
            closure_colength(&d).unwrap(),
            closure_colength(&d_up).unwrap(),
            "closure colength drifted in case {case}"
        );
        assert_eq!(colength(&d).unwrap(), colength(&d_up).unwrap());

        // The product correction term is symmetric in its two cycles.
        let za = anti_nef_closure(&random_effective_cycle(&mut rng, &g)).unwrap();
        let zb = anti_nef_closure(&random_effective_cycle(&mut rng, &g)).unwrap();
        let ha = rng.gen_range(0..=pg);
        let hb = rng.gen_range(0..=pg);
        let lo = (ha + hb).saturating_sub(pg);
        let hi = ha + hb - lo;
        let hab = rng.gen_range(lo..=hi);
        let one_way = epsilon(&s, &za, &zb, &Tri::Known(ha), &Tri::Known(hb), &Tri::Known(hab));
        let other_way =
            epsilon(&s, &zb, &za, &Tri::Known(hb), &Tri::Known(ha), &Tri::Known(hab));
        assert_eq!(one_way.unwrap(), other_way.unwrap(), "asymmetry in case {case}");

        // The generator-count bounds differ by exactly the geometric genus.
        let with_m = s
            .clone()
            .with_maximal_ideal_cycle(fundamental_cycle(&g))
            .unwrap();
        let dm = IdealDescriptor::new(with_m, z.clone())
            .unwrap()
            .with_h1(Tri::Known(h1))
            .unwrap();
        let mu = mu_data(&dm);
        let upper = mu.upper.into_known().expect("upper bound is computable");
        let lower = mu.lower.into_known().expect("lower bound is computable");
        assert_eq!(&upper - &lower, BigInt::from(pg), "bound gap in case {case}");

        // Correction terms outside [0, p_g] are rejected as inconsistent.
        let too_big = epsilon(
            &s,
            &za,
            &zb,
            &Tri::Known(0),
            &Tri::Known(0),
            &Tri::Known(pg + 1),
        );
        assert!(matches!(too_big, Err(Error::Inconsistent(_))));
        let negative = epsilon(
            &s,
            &za,
            &zb,
            &Tri::Known(pg),
            &Tri::Known(pg),
            &Tri::Known(0),
        );
        assert!(matches!(negative, Err(Error::Inconsistent(_))));
    }
}
