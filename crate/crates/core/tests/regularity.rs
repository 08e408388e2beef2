use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectcross::geom::Rational;
use rectcross::graph::{AnyGraph, Graph, WeightedGraph};
use rectcross::regularity::*;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn random_weighted(n: usize, rng: &mut ChaCha8Rng) -> WeightedGraph {
    let mut entries = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.6) {
                entries.push((u, v, r(rng.gen_range(0..=4), 4)));
            }
        }
    }
    WeightedGraph::new(n, entries).unwrap()
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

/// e(S,T) straight from the definition, over ordered pairs.
fn cut(g: &WeightedGraph, s: &[usize], t: &[usize]) -> Rational {
    let mut total = Rational::zero();
    for &u in s {
        for &v in t {
            if u != v {
                total += g.weight(u, v);
            }
        }
    }
    total
}

#[test]
fn exact_cut_distance_matches_all_pairs_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let (g, h) = (random_weighted(6, &mut rng), random_weighted(6, &mut rng));
        let mut best = Rational::zero();
        for s in 0u32..64 {
            for t in 0u32..64 {
                let sv: Vec<usize> = (0..6).filter(|i| s >> i & 1 == 1).collect();
                let tv: Vec<usize> = (0..6).filter(|i| t >> i & 1 == 1).collect();
                let d = (cut(&g, &sv, &tv) - cut(&h, &sv, &tv)).abs();
                best = best.max(d);
            }
        }
        let w = cut_distance_exact(&g, &h).unwrap();
        assert_eq!(w.value, best);
        assert_eq!((cut(&g, &w.s, &w.t) - cut(&h, &w.s, &w.t)).abs(), best);
    }
}

#[test]
fn lower_bound_reaches_exact_value_on_most_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut hits = 0;
    for _ in 0..100 {
        let (g, h) = (random_weighted(12, &mut rng), random_weighted(12, &mut rng));
        let exact = cut_distance_exact(&g, &h).unwrap().value;
        let lb = cut_distance_lower_bound(&g, &h, 50).unwrap();
        assert!(lb.value <= exact);
        assert_eq!((cut(&g, &lb.s, &lb.t) - cut(&h, &lb.s, &lb.t)).abs(), lb.value);
        hits += usize::from(lb.value == exact);
    }
    assert!(hits >= 90, "lower bound matched exact on {hits}/100");
}

#[test]
fn complete_bipartite_is_separated() {
    // sides interleaved so the first split is not handed over
    let n = 16;
    let side = |v: usize| v % 2;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| side(u) != side(v))
        .collect();
    let g = Graph::new(n, edges).unwrap();
    let eps = r(1, 8);
    let out = weak_regular_partition(&g, &eps, 8).unwrap();
    for part in out.partition.parts() {
        assert!(part.iter().all(|&v| side(v) == side(part[0])), "mixed part {part:?}");
    }
    assert!(out.certificate.verified_exact);
    assert!(out.deviation < eps * r((n * n) as i64, 1));
    assert_eq!(out.partition.k(), 2);
    assert_eq!(
        partition_deviation_exact(&g, &out.partition).unwrap().value,
        out.deviation
    );
}

#[test]
fn refinement_never_lowers_the_index_and_respects_caps() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..12 {
        let n = 20 + trial * 3;
        let g = gnp(n, 0.5, &mut rng);
        let eps = r(1, 6);
        let out = weak_regular_partition(&g, &eps, 16).unwrap();
        let sizes = out.partition.sizes();
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        assert!(out.partition.k() <= 16);
        assert!(out.certificate.rounds <= round_cap(&eps));
        assert_eq!(out.refined_index.len(), out.certificate.rounds);
        for (before, refined) in out.index_history.iter().zip(&out.refined_index) {
            assert!(refined >= before);
        }
    }
}

#[test]
fn certificate_json_field_names() {
    let g = Graph::complete(6);
    let out = weak_regular_partition(&g, &r(1, 2), 4).unwrap();
    let v: serde_json::Value = serde_json::to_value(&out.certificate).unwrap();
    for key in [
        "epsilon",
        "K",
        "best_deviation",
        "witness_S",
        "witness_T",
        "verified_exact",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["epsilon"], "1/2");
}

#[test]
fn reduced_graph_matches_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let g = gnp(12, 0.5, &mut rng);
    let p = EquitablePartition::contiguous(12, 3).unwrap();
    let rg = reduced_graph(&AnyGraph::Plain(g.clone()), &p).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let count = g
                .edges()
                .iter()
                .filter(|&&(u, v)| (p.part_of(u), p.part_of(v)) == (i, j) || (p.part_of(u), p.part_of(v)) == (j, i))
                .count();
            assert_eq!(rg.weight(i, j), r(count as i64, 16));
        }
    }
    let empty = reduced_graph(&AnyGraph::Plain(Graph::empty(12)), &p).unwrap();
    assert!(empty.graph().positive_edges().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cut_distance_is_a_metric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_weighted(7, &mut rng), random_weighted(7, &mut rng), random_weighted(7, &mut rng));
        let d = |x: &WeightedGraph, y: &WeightedGraph| cut_distance_exact(x, y).unwrap().value;
        prop_assert!(d(&a, &a).is_zero());
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
    }

    #[test]
    fn blow_up_then_reduce_recovers_weights(seed in any::<u64>(), k in 2usize..5, m in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rg = ReducedGraph::new(random_weighted(k, &mut rng));
        let big = blow_up_weights(&rg, m).unwrap();
        let back = reduced_graph(&AnyGraph::Weighted(big), &blow_up_partition(k, m).unwrap()).unwrap();
        prop_assert_eq!(back.graph().matrix(), rg.graph().matrix());
    }

    #[test]
    fn reduced_weights_lie_in_unit_interval(seed in any::<u64>(), n in 5usize..30, k in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gnp(n, 0.7, &mut rng);
        let rg = reduced_graph(&AnyGraph::Plain(g), &EquitablePartition::contiguous(n, k).unwrap()).unwrap();
        for i in 0..k {
            for j in 0..k {
                let w = rg.weight(i, j);
                prop_assert!(w >= r(0, 1) && w <= r(1, 1));
            }
        }
    }
}
