//! Constructive production of p_g-cycles: pick a deep enough anti-nef
//! cycle W, then blow up chains of points on the exceptional curves until
//! the pulled-back cohomology cycle is orthogonal to everything W carries.
//!
//! The output is a cycle on the final resolution together with a replayable
//! record of every blow-up, and a certificate listing each verified check
//! by name.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

use crate::blowup::{blow_up, BlowupMap, PointSpec};
use crate::graph::{Cycle, DualGraph};
use crate::singularity::{canonical_cycle, k_dot, laufer_minimal, SingularityData};
use crate::{Error, Result, Tri, TriBool};

/// Margin demanded of W at each vertex: W.E_j <= -margin_j. Deep enough
/// that every sweep of the construction stays inside the anti-nef cone.
pub fn depth_margins(graph: &Arc<DualGraph>) -> Vec<i64> {
    (0..graph.vertex_count())
        .map(|j| {
            let k = graph.k_degree(j);
            let nbr = if graph.neighbors(j).is_empty() { 0 } else { 1 };
            let g = 2 * i64::from(graph.vertex(j).genus);
            (k + nbr).max(k).max(g).max(0)
        })
        .collect()
}

/// Smallest anti-nef cycle meeting the depth margins.
pub fn choose_w(graph: &Arc<DualGraph>) -> Cycle {
    laufer_minimal(&Cycle::reduced(graph), &depth_margins(graph))
}

/// How the cohomology seed C_0 is chosen.
#[derive(Debug, Clone)]
pub enum SeedStrategy {
    /// C_0 = Z_K; requires the canonical cycle to be integral and positive.
    Canonical,
    /// C_0 = W itself.
    FromW,
    /// Caller-supplied seed; the certificate stays conditional on it.
    Explicit(Cycle),
}

/// One chain of infinitely near points over a base vertex.
#[derive(Debug, Clone)]
pub struct BranchRecord {
    pub token: String,
    pub root: String,
    /// Exceptional vertex ids produced along this branch, in order.
    pub chain: Vec<String>,
}

/// Full record of one construction run.
#[derive(Debug, Clone)]
pub struct Construction {
    pub sing: SingularityData,
    pub strategy: SeedStrategy,
    /// The chosen anti-nef cycle on the base graph.
    pub w: Cycle,
    /// Whether w satisfies the depth margins (choose_w always does).
    pub w_meets_bound: bool,
    /// The seed C_0 on the base graph.
    pub seed: Cycle,
    pub sweeps: u32,
    /// Number of branches blown up in each sweep.
    pub sweep_sizes: Vec<usize>,
    pub maps: Vec<BlowupMap>,
    pub branches: Vec<BranchRecord>,
    pub final_graph: Arc<DualGraph>,
    /// The produced cycle on the final graph.
    pub z: Cycle,
    /// The transformed seed on the final graph.
    pub c_final: Cycle,
}

/// Runs the construction for a given W.
///
/// Every sweep blows up one point on each branch whose carrier still meets
/// the support of the transported seed, replaces the seed C by its pullback
/// minus the new exceptional curve, and extends W by pullback. Afterwards
/// Z is the pulled-back W plus the k-th exceptional of every branch taken
/// k times.
pub fn run_construction(
    s: &SingularityData,
    w: &Cycle,
    strategy: SeedStrategy,
) -> Result<Construction> {
    let graph = s.graph();
    if !Arc::ptr_eq(w.graph(), graph) {
        return Err(Error::invalid("W lives on a different graph"));
    }
    if !(w.is_integral() && w.is_positive() && w.is_anti_nef()) {
        return Err(Error::invalid("W must be integral, positive and anti-nef"));
    }
    let margins = depth_margins(graph);
    let w_meets_bound = (0..graph.vertex_count())
        .all(|j| w.dot_vertex(j) <= BigRational::from_integer(BigInt::from(-margins[j])));

    if s.is_rational() {
        // Nothing cohomological to kill: W itself already works.
        return Ok(Construction {
            sing: s.clone(),
            strategy,
            w: w.clone(),
            w_meets_bound,
            seed: Cycle::zero(graph),
            sweeps: 0,
            sweep_sizes: Vec::new(),
            maps: Vec::new(),
            branches: Vec::new(),
            final_graph: Arc::clone(graph),
            z: w.clone(),
            c_final: Cycle::zero(graph),
        });
    }

    let seed = match &strategy {
        SeedStrategy::Canonical => {
            let zk = canonical_cycle(graph);
            if !(zk.is_integral() && zk.is_positive()) {
                return Err(Error::invalid(
                    "canonical seed requires an integral positive canonical cycle",
                ));
            }
            zk
        }
        SeedStrategy::FromW => w.clone(),
        SeedStrategy::Explicit(c) => {
            if !Arc::ptr_eq(c.graph(), graph) {
                return Err(Error::invalid("explicit seed lives on a different graph"));
            }
            if !(c.is_integral() && c.is_positive()) {
                return Err(Error::invalid("explicit seed must be integral and positive"));
            }
            c.clone()
        }
    };

    // One branch per unit of -W.E_j, rooted at E_j.
    let mut branches = Vec::new();
    let mut carriers = Vec::new();
    for j in 0..graph.vertex_count() {
        let n = (-w.dot_vertex(j)).to_integer();
        let id = &graph.vertex(j).id;
        let mut k = BigInt::from(1);
        while k <= n {
            branches.push(BranchRecord {
                token: format!("{id}.b{k}"),
                root: id.clone(),
                chain: Vec::new(),
            });
            carriers.push(id.clone());
            k += 1;
        }
    }

    let bound = seed.max_coeff().to_integer();
    let mut current = Arc::clone(graph);
    let mut c = seed.clone();
    let mut wp = w.clone();
    let mut maps: Vec<BlowupMap> = Vec::new();
    let mut sweep_sizes = Vec::new();
    let mut sweeps: u32 = 0;

    loop {
        let active: Vec<usize> = (0..branches.len())
            .filter(|&b| {
                let i = current.index_of(&carriers[b]).expect("carrier id exists");
                !c.coeff(i).is_zero()
            })
            .collect();
        if active.is_empty() {
            break;
        }
        // The carrier coefficient drops by one per sweep, so this cannot
        // run past the deepest seed coefficient.
        if BigInt::from(sweeps) >= bound {
            return Err(Error::inconsistent("construction exceeded its sweep bound"));
        }
        for &b in &active {
            let map = blow_up(
                &current,
                PointSpec::OnBranch { branch: branches[b].token.clone(), carrier: carriers[b].clone() },
            )?;
            let f = map.new_vertex().to_string();
            let unit_f = Cycle::unit(map.target(), &f)?;
            c = map.pullback(&c)?.try_sub(&unit_f)?;
            wp = map.pullback(&wp)?;
            current = Arc::clone(map.target());
            branches[b].chain.push(f.clone());
            carriers[b] = f;
            maps.push(map);
        }
        sweep_sizes.push(active.len());
        sweeps += 1;
    }

    let mut z = wp;
    for branch in &branches {
        for (k, fid) in branch.chain.iter().enumerate() {
            let unit = Cycle::unit(&current, fid)?;
            z = z.try_add(&unit.scale_int(k as i64 + 1))?;
        }
    }

    Ok(Construction {
        sing: s.clone(),
        strategy,
        w: w.clone(),
        w_meets_bound,
        seed,
        sweeps,
        sweep_sizes,
        maps,
        branches,
        final_graph: current,
        z,
        c_final: c,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
}

/// Certificate for a construction: every check by name, the verdict on
/// "Z is a p_g-cycle", and whether the verdict is conditional on the seed
/// really being the cohomological cycle.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub checks: Vec<CheckOutcome>,
    pub verdict: TriBool,
    pub conditional: bool,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_check(&self) -> Option<&'static str> {
        self.checks.iter().find(|c| !c.passed).map(|c| c.name)
    }
}

/// Re-verifies a construction record from scratch.
pub fn certify_pg_cycle(con: &Construction) -> Certificate {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool| checks.push(CheckOutcome { name, passed });

    push("integral", con.z.is_integral());
    push("anti-nef", con.z.is_anti_nef());
    push("positive", con.z.is_positive());
    let orthogonal = con
        .c_final
        .support()
        .into_iter()
        .all(|i| con.z.dot_vertex(i).is_zero());
    push("orthogonal to the final cohomology cycle", orthogonal);
    push(
        "sweep count within the seed bound",
        BigInt::from(con.sweeps) <= con.seed.max_coeff().to_integer().max(BigInt::from(0)),
    );

    let rational = con.sing.is_rational();
    let canonical_seed = matches!(con.strategy, SeedStrategy::Canonical);
    if canonical_seed && !rational {
        push("canonical degree vanishes", k_dot(&con.z).is_zero());
        push(
            "final cohomology cycle is canonical",
            con.c_final == canonical_cycle(&con.final_graph),
        );
    }

    let all = checks.iter().all(|c| c.passed);
    let verdict = if !all {
        TriBool::FALSE
    } else if rational || canonical_seed {
        TriBool::TRUE
    } else {
        Tri::unknown("seed cycle not certified as the cohomological cycle")
    };
    Certificate { checks, verdict, conditional: !rational && !canonical_seed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singularity::fundamental_cycle;
    use crate::testutil::{cy, graph};

    fn genus2_cone() -> (Arc<DualGraph>, SingularityData) {
        let g = graph(&[("E0", -2, 2)], &[]);
        let s = SingularityData::new(Arc::clone(&g), Tri::Known(3)).with_gorenstein(true);
        (g, s)
    }

    #[test]
    fn margins_and_w_on_small_graphs() {
        let a1 = graph(&[("E0", -2, 0)], &[]);
        assert_eq!(depth_margins(&a1), vec![0]);
        assert_eq!(choose_w(&a1), fundamental_cycle(&a1));

        let (g2, _) = genus2_cone();
        assert_eq!(depth_margins(&g2), vec![4]);
        assert_eq!(choose_w(&g2), cy(&g2, &[("E0", 2)]));

        let star = graph(
            &[("E0", -1, 0), ("E1", -2, 0), ("E2", -3, 0), ("E3", -7, 0)],
            &[("E0", "E1"), ("E0", "E2"), ("E0", "E3")],
        );
        assert_eq!(depth_margins(&star), vec![0, 1, 2, 6]);
        let w = choose_w(&star);
        assert_eq!(w, cy(&star, &[("E0", 85), ("E1", 43), ("E2", 29), ("E3", 13)]));
        for j in 0..star.vertex_count() {
            let bound = BigRational::from_integer(BigInt::from(-depth_margins(&star)[j]));
            assert!(w.dot_vertex(j) <= bound);
        }
    }

    #[test]
    fn shallow_w_on_the_genus_two_cone() {
        let (g, s) = genus2_cone();
        let w = cy(&g, &[("E0", 1)]);
        let con = run_construction(&s, &w, SeedStrategy::Canonical).unwrap();
        assert!(!con.w_meets_bound);
        assert_eq!(con.sweeps, 2);
        assert_eq!(con.sweep_sizes, vec![2, 2]);
        assert_eq!(con.branches.len(), 2);
        assert_eq!(con.final_graph.vertex_count(), 5);

        // Z = E0 + 2(F1 + F2) + 3(F1' + F2').
        assert_eq!(con.z.self_intersection(), BigRational::from_integer(BigInt::from(-6)));
        assert!(k_dot(&con.z).is_zero());
        for branch in &con.branches {
            assert_eq!(branch.chain.len(), 2);
            let coeffs: Vec<_> =
                branch.chain.iter().map(|f| con.z.coeff_of(f).unwrap().clone()).collect();
            assert_eq!(
                coeffs,
                vec![
                    BigRational::from_integer(BigInt::from(2)),
                    BigRational::from_integer(BigInt::from(3))
                ]
            );
        }

        let cert = certify_pg_cycle(&con);
        assert!(cert.all_passed());
        assert!(cert.verdict.is_true());
        assert!(!cert.conditional);
        assert!(cert.checks.iter().any(|c| c.name == "final cohomology cycle is canonical"));
    }

    #[test]
    fn deep_w_on_the_genus_two_cone() {
        let (g, s) = genus2_cone();
        let w = choose_w(&g);
        let con = run_construction(&s, &w, SeedStrategy::Canonical).unwrap();
        assert!(con.w_meets_bound);
        assert_eq!(con.sweep_sizes, vec![4, 4]);
        assert_eq!(con.z.self_intersection(), BigRational::from_integer(BigInt::from(-16)));
        assert!(certify_pg_cycle(&con).verdict.is_true());
    }

    #[test]
    fn rational_input_needs_no_sweeps() {
        let a1 = graph(&[("E0", -2, 0)], &[]);
        let s = SingularityData::rational(Arc::clone(&a1));
        let w = fundamental_cycle(&a1);
        let con = run_construction(&s, &w, SeedStrategy::Canonical).unwrap();
        assert_eq!(con.sweeps, 0);
        assert_eq!(con.z, w);
        assert!(Arc::ptr_eq(&con.final_graph, &a1));
        let cert = certify_pg_cycle(&con);
        assert!(cert.verdict.is_true() && !cert.conditional);
    }

    #[test]
    fn canonical_seed_rejects_fractional_canonical_cycles() {
        // Quotient cone with undetermined p_g: Z_K = E0 / 3.
        let g = graph(&[("E0", -3, 0)], &[]);
        let s = SingularityData::new(Arc::clone(&g), Tri::unknown("p_g"));
        let err = run_construction(&s, &fundamental_cycle(&g), SeedStrategy::Canonical)
            .unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn explicit_and_from_w_seeds_stay_conditional() {
        let (g, s) = genus2_cone();
        let w = cy(&g, &[("E0", 1)]);

        let explicit = cy(&g, &[("E0", 2)]);
        let con = run_construction(&s, &w, SeedStrategy::Explicit(explicit)).unwrap();
        let cert = certify_pg_cycle(&con);
        assert!(cert.all_passed());
        assert!(cert.conditional);
        assert_eq!(
            cert.verdict.unknown_reason(),
            Some("seed cycle not certified as the cohomological cycle")
        );

        // Seeding with W itself kills only W's own support.
        let con = run_construction(&s, &w, SeedStrategy::FromW).unwrap();
        assert_eq!(con.sweeps, 1);
        assert_eq!(con.sweep_sizes, vec![2]);
        assert_eq!(con.z, cy(&con.final_graph, &[("E0", 1), ("E0.F1", 2), ("E0.F2", 2)]));
        let cert = certify_pg_cycle(&con);
        assert!(cert.all_passed() && cert.conditional);
    }

    #[test]
    fn tampered_records_fail_a_named_check() {
        let (g, s) = genus2_cone();
        let con = run_construction(&s, &cy(&g, &[("E0", 1)]), SeedStrategy::Canonical).unwrap();

        // Bump one late exceptional coefficient: anti-nef breaks.
        let mut bad = con.clone();
        let f = bad.branches[0].chain[1].clone();
        let unit = Cycle::unit(&bad.final_graph, &f).unwrap();
        bad.z = bad.z.try_add(&unit).unwrap();
        let cert = certify_pg_cycle(&bad);
        assert!(cert.verdict.is_false());
        assert_eq!(cert.failed_check(), Some("anti-nef"));

        // Lie about the sweep count.
        let mut bad = con.clone();
        bad.sweeps += 10;
        let cert = certify_pg_cycle(&bad);
        assert!(cert.verdict.is_false());
        assert_eq!(cert.failed_check(), Some("sweep count within the seed bound"));

        // Swap the final seed for something non-canonical. Its support is
        // unchanged, so orthogonality still holds and the canonical
        // comparison is what catches it.
        let mut bad = con;
        bad.c_final = bad.c_final.scale_int(2);
        let cert = certify_pg_cycle(&bad);
        assert!(cert.verdict.is_false());
        assert_eq!(cert.failed_check(), Some("final cohomology cycle is canonical"));
    }
}
