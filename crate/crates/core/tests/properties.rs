use std::sync::OnceLock;

use proptest::prelude::*;
use redge::cert::{self, CertPoint};
use redge::constructions::{self, Family};
use redge::dpg::{parse_dpg, serialize_dpg};
use redge::engine::{edge_probabilities, expected_steps, visit_probabilities};
use redge::enumeration::{admissible_orientations, generate_cubic_planar_3connected};
use redge::graph::{validate_polytope, PolytopeDigraph, VertexId};
use redge::mk::validate_mihalisin_klee;
use redge::rational::q;
use redge::simulate::{simulate, simulate_sequential};
use redge::Rational;

fn pool() -> &'static [PolytopeDigraph] {
    static POOL: OnceLock<Vec<PolytopeDigraph>> = OnceLock::new();
    POOL.get_or_init(|| {
        (5..=7)
            .flat_map(generate_cubic_planar_3connected)
            .flat_map(|g| admissible_orientations(&g))
            .collect()
    })
}

fn any_instance() -> impl Strategy<Value = (PolytopeDigraph, VertexId)> {
    (0..pool().len(), any::<u32>()).prop_map(|(i, s)| {
        let g = pool()[i].clone();
        let start = 1 + s as usize % (g.vertex_count() - 1);
        (g, VertexId(start))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expectation_satisfies_recurrence((g, _) in any_instance()) {
        let t = expected_steps(&g).unwrap();
        prop_assert_eq!(t.verify_recurrence(&g), Ok(()));
        prop_assert!(t.values[0].is_zero());
        for v in 1..g.vertex_count() {
            prop_assert!(t.values[v] >= Rational::one());
        }
    }

    #[test]
    fn edge_flow_sums_to_expectation((g, s) in any_instance()) {
        let t = expected_steps(&g).unwrap();
        let p = edge_probabilities(&g, s).unwrap();
        prop_assert_eq!(p.total(), t.values[s.0].clone());
        let visits = visit_probabilities(&g, s).unwrap();
        prop_assert_eq!(visits[0].clone(), Rational::one());
        // inflow minus outflow is -1 at the start, +1 at the sink, 0 elsewhere
        let net = p.net_inflow(g.vertex_count());
        for (v, x) in net.iter().enumerate() {
            let want = if v == s.0 { q(-1, 1) } else if v == 0 { q(1, 1) } else { q(0, 1) };
            prop_assert_eq!(x.clone(), want);
        }
    }

    #[test]
    fn dpg_round_trip((g, _) in any_instance()) {
        let text = serialize_dpg(&g);
        let back = parse_dpg(&text).unwrap();
        prop_assert_eq!(serialize_dpg(&back), text);
        prop_assert_eq!(back.down_lists(), g.down_lists());
    }

    #[test]
    fn enumerated_orientations_are_valid((g, _) in any_instance()) {
        prop_assert!(validate_polytope(&g).passed());
        prop_assert!(validate_mihalisin_klee(&g).realizable);
    }

    #[test]
    fn parallel_simulation_matches_sequential((g, s) in any_instance(), seed in any::<u64>()) {
        let a = simulate(&g, s, 9000, seed).unwrap();
        let b = simulate_sequential(&g, s, 9000, seed).unwrap();
        prop_assert_eq!(a.histogram, b.histogram);
    }

    #[test]
    fn feasible_points_bound_known_maxima(a in 0u32..2000, b in 0u32..2000) {
        let p = CertPoint::new(q(a as i64, 1000), q(b as i64, 1000));
        let s = cert::builtin_system();
        if cert::is_feasible(&s, &p).feasible {
            let opt = cert::minimize(&s, (&q(1, 1), &q(2, 1))).unwrap();
            prop_assert!(&p.alpha + &p.beta.mul_int(2) >= opt.value);
            for (n, f) in [(4, q(11, 6)), (5, q(3, 1)), (6, q(35, 8)), (7, q(91, 16))] {
                prop_assert!(cert::upper_bound(n, &p).unwrap() >= f);
            }
        }
    }

    #[test]
    fn rational_text_round_trip(n in -100000i64..100000, d in 1i64..10000) {
        let r = q(n, d);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }
}

#[test]
fn backbone_sweep_to_fifty() {
    for k in 2..=50 {
        let b = constructions::backbone(k).unwrap();
        assert!(validate_polytope(&b.graph).passed(), "k = {k}");
        assert!(validate_mihalisin_klee(&b.graph).realizable, "k = {k}");
        let t = expected_steps(&b.graph).unwrap();
        assert_eq!(
            t.values[b.chain[0]],
            constructions::closed_form_expectation(Family::Backbone, k).unwrap()
        );
    }
}

#[test]
fn family_counts() {
    for n in 4..30 {
        let g = constructions::dual_cyclic(n).unwrap();
        assert_eq!((g.facet_count(), g.vertex_count()), (n, 2 * n - 4));
    }
    for k in 2..8 {
        let g = constructions::generate(Family::Example2, k).unwrap().graph;
        assert_eq!((g.facet_count(), g.vertex_count()), (4 * k + 2, 8 * k));
    }
    for k in 1..5 {
        let g = constructions::generate(Family::Example3, k).unwrap().graph;
        assert_eq!((g.facet_count(), g.vertex_count()), (10 * k + 2, 20 * k));
        assert!(validate_polytope(&g).passed());
    }
}
