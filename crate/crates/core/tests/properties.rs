use nalgebra::DMatrix;
use proptest::prelude::*;

use nlgs::bo::{expected_improvement, gp_posterior, refit_signal, GpState, GraphEigen, KernelCache};
use nlgs::hausdorff::{directed_hausdorff, hausdorff_dist, PointCloud};
use nlgs::model_spaces::{ModelSpace, SpaceKind};
use nlgs::product::Signature;
use nlgs::space::{build_graph, enumerate_signatures, relation, GraphSpace, GraphVariant, WeightMode};
use nlgs::gh::GhTable;

fn kind() -> impl Strategy<Value = SpaceKind> {
    prop_oneof![Just(SpaceKind::Euclidean), Just(SpaceKind::Hyperboloid), Just(SpaceKind::Hypersphere)]
}

fn cloud(dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-3.0..3.0f64, dim), 1..25)
}

fn brute(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let d = |p: &Vec<f64>, q: &Vec<f64>| p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();
    a.iter().map(|p| b.iter().map(|q| d(p, q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max).sqrt()
}

proptest! {
    #[test]
    fn exp_from_origin_then_dist_recovers_length(k in kind(), v in prop::collection::vec(-1.5..1.5f64, 2)) {
        let m = ModelSpace::unit(k);
        let o = m.origin();
        let ambient = match k {
            SpaceKind::Euclidean => v.clone(),
            SpaceKind::Hyperboloid => vec![0.0, v[0], v[1]],
            SpaceKind::Hypersphere => vec![v[0], v[1], 0.0],
        };
        let p = m.exp_map(&o, &ambient).unwrap();
        m.check_point(&p).unwrap();
        let len = (v[0] * v[0] + v[1] * v[1]).sqrt();
        prop_assert!((m.dist(&o, &p).unwrap() - len).abs() < 1e-9);
    }

    #[test]
    fn product_distance_is_a_metric(
        kinds in prop::collection::vec(kind(), 1..5),
        seeds in prop::collection::vec(-1.0..1.0f64, 24),
    ) {
        let sig = Signature::from_kinds(&kinds).unwrap();
        let n = sig.tangent_dim();
        let pts: Vec<_> = (0..3).map(|i| sig.project(&seeds[i * 8..i * 8 + n]).unwrap()).collect();
        let d = |i: usize, j: usize| sig.dist(&pts[i], &pts[j]).unwrap();
        prop_assert!(d(0, 0).abs() < 1e-7);
        prop_assert!((d(0, 1) - d(1, 0)).abs() < 1e-12);
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9);
    }

    #[test]
    fn hausdorff_matches_brute_force(dim in 1usize..5, seed in any::<u64>(), a in cloud(4), b in cloud(4)) {
        let a: Vec<Vec<f64>> = a.into_iter().map(|p| p[..dim].to_vec()).collect();
        let b: Vec<Vec<f64>> = b.into_iter().map(|p| p[..dim].to_vec()).collect();
        let ca = PointCloud::from_points(&a).unwrap();
        let cb = PointCloud::from_points(&b).unwrap();
        let ab = brute(&a, &b);
        prop_assert_eq!(directed_hausdorff(&ca, &cb, None).unwrap(), ab);
        prop_assert_eq!(directed_hausdorff(&ca, &cb, Some(seed)).unwrap(), ab);
        prop_assert_eq!(hausdorff_dist(&ca, &cb).unwrap(), ab.max(brute(&b, &a)));
        prop_assert_eq!(hausdorff_dist(&ca, &cb).unwrap(), hausdorff_dist(&cb, &ca).unwrap());
    }

    #[test]
    fn canonical_form_ignores_factor_order(kinds in prop::collection::vec(kind(), 1..8), rot in 0usize..8) {
        let sig = Signature::from_kinds(&kinds).unwrap();
        let mut shuffled = kinds.clone();
        shuffled.rotate_left(rot % kinds.len());
        shuffled.reverse();
        let other = Signature::from_kinds(&shuffled).unwrap();
        prop_assert_eq!(sig.canonicalize(), other.canonicalize());
        prop_assert_eq!(sig.counts(), other.counts());
        let text = sig.canonicalize().to_string();
        prop_assert_eq!(text.parse::<Signature>().unwrap().canonicalize().to_string(), text);
    }

    #[test]
    fn relation_is_symmetric(a in prop::collection::vec(kind(), 1..5), b in prop::collection::vec(kind(), 1..5)) {
        let a = Signature::from_kinds(&a).unwrap().canonicalize();
        let b = Signature::from_kinds(&b).unwrap().canonicalize();
        prop_assert_eq!(relation(&a, &b).is_some(), relation(&b, &a).is_some());
        prop_assert!(relation(&a, &a).is_none());
    }

    #[test]
    fn diffusion_kernel_is_psd(
        n in 3usize..20,
        extra in prop::collection::vec((0usize..20, 0usize..20, 0.1..4.0f64), 0..30),
        beta in 1e-2..1e2f64,
    ) {
        let mut w = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            w[(i, i - 1)] = 1.0;
            w[(i - 1, i)] = 1.0;
        }
        for (a, b, x) in extra {
            let (a, b) = (a % n, b % n);
            if a != b {
                w[(a, b)] = x;
                w[(b, a)] = x;
            }
        }
        let mut l = -w.clone();
        for i in 0..n {
            l[(i, i)] = w.row(i).sum();
        }
        let h = GraphEigen::from_laplacian(&l).unwrap().heat(beta);
        prop_assert!((&h - h.transpose()).amax() == 0.0);
        prop_assert!(h.symmetric_eigenvalues().min() >= -1e-8);
    }

    #[test]
    fn ei_is_monotone(mu in -3.0..3.0f64, sd in 0.01..3.0f64, d in 0.0..1.0f64, best in -3.0..3.0f64) {
        let ei = |m: f64, s: f64| expected_improvement(&[m], &[s], best).unwrap()[0];
        prop_assert!(ei(mu, sd) >= 0.0);
        prop_assert!(ei(mu + d, sd) <= ei(mu, sd) + 1e-12);
        prop_assert!(ei(mu, sd + d) >= ei(mu, sd) - 1e-12);
        prop_assert!(ei(mu, sd) >= (best - mu).max(0.0) - 1e-12);
    }

    #[test]
    fn posterior_transforms_affinely(
        values in prop::collection::vec(-2.0..2.0f64, 4),
        scale in 0.1..50.0f64,
        shift in -10.0..10.0f64,
        gi in 0usize..25,
    ) {
        let g = small_graph();
        let cache = KernelCache::from_graph(&g, &nlgs::bo::default_beta_grid()).unwrap();
        let idx = vec![0, 3, 5, 9];
        let query: Vec<usize> = (0..g.len()).collect();
        let s1 = GpState::new(idx.clone(), values.clone(), 1e-6).unwrap();
        let s2 = GpState::new(idx, values.iter().map(|v| scale * v + shift).collect(), 1e-6).unwrap();
        let (m1, d1) = gp_posterior(&refit_signal(&cache, gi, &s1).unwrap(), &s1, &query).unwrap();
        let (m2, d2) = gp_posterior(&refit_signal(&cache, gi, &s2).unwrap(), &s2, &query).unwrap();
        for i in 0..query.len() {
            prop_assert!((m2[i] - (scale * m1[i] + shift)).abs() <= 1e-7 * scale.max(1.0) * (1.0 + m1[i].abs()));
            prop_assert!((d2[i] - scale * d1[i]).abs() <= 1e-7 * scale.max(1.0) * (1.0 + d1[i]));
        }
    }
}

fn small_graph() -> GraphSpace {
    build_graph(enumerate_signatures(3, None).unwrap(), Some(&GhTable::paper_preset()), GraphVariant::GhWeighted, WeightMode::Exact)
        .unwrap()
}

#[test]
fn level_sizes_are_triangular() {
    for k in 1..=13 {
        assert_eq!(enumerate_signatures(k, Some(k)).unwrap().len(), (k + 1) * (k + 2) / 2);
    }
}

#[test]
fn graph_json_round_trip() {
    for variant in [GraphVariant::GhWeighted, GraphVariant::UnweightedPruned, GraphVariant::CompleteUnweighted] {
        let g = small_graph().with_variant(variant, Some(&GhTable::paper_preset()), WeightMode::Exact).unwrap();
        let back = GraphSpace::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back.labels(), g.labels());
        assert_eq!(back.adjacency(), g.adjacency());
        assert_eq!(back.variant(), variant);
    }
}
