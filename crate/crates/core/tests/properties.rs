use colourmodels::duality::{self, XQParams};
use colourmodels::fourier::{self, QFunction};
use colourmodels::graph::{EdgeSubset, Multigraph, Orientation};
use colourmodels::models::{self, EdgeModel, VertexModel, VertexWeights};
use colourmodels::oracles::{self, WeightTable};
use colourmodels::signed::{self, ColourSet};
use colourmodels::{corpus, Budget, Complex64, GroupSpec};
use proptest::prelude::*;

fn budget() -> Budget {
    Budget::default()
}

fn small_graph() -> impl Strategy<Value = Multigraph> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, 0u8..2), 0..=5)))
        .prop_map(|(n, raw)| {
            let edges = raw.iter().map(|&(u, v, _)| (u, v)).collect();
            let heads = raw.iter().map(|&(_, _, h)| h).collect();
            Multigraph::new(n, edges).unwrap().with_orientation(Orientation::from_heads(heads).unwrap()).unwrap()
        })
}

fn group_and_arity() -> impl Strategy<Value = (GroupSpec, usize)> {
    let groups = prop_oneof![
        (2usize..=8).prop_map(GroupSpec::cyclic),
        Just(GroupSpec::f4()),
        Just(GroupSpec::product(&[2, 2]).unwrap()),
        Just(GroupSpec::product(&[2, 3]).unwrap()),
    ];
    groups.prop_flat_map(|g| {
        let q = g.order();
        let max_d = (1usize..=3).filter(|&d| q.pow(d as u32) <= 512).max().unwrap();
        (Just(g), 1..=max_d)
    })
}

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b)), len)
}

fn random_function() -> impl Strategy<Value = (QFunction, QFunction)> {
    group_and_arity().prop_flat_map(|(g, d)| {
        let len = g.order().pow(d as u32);
        (complex_vec(len), complex_vec(len)).prop_map(move |(a, b)| {
            (QFunction::from_values(&g, d, a).unwrap(), QFunction::from_values(&g, d, b).unwrap())
        })
    })
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

mod graph_props {
    use super::*;

    proptest! {
        #[test]
        fn rank_is_monotone_and_unit_increasing(g in small_graph(), bits in any::<u64>(), e in 0usize..5) {
            prop_assume!(g.edge_count() > 0);
            let e = e % g.edge_count();
            let a = EdgeSubset::from_bits(bits, g.edge_count());
            let (r, r1) = (g.rank(a), g.rank(a.with(e)));
            prop_assert!(r <= r1 && r1 <= r + 1);
        }

        #[test]
        fn boundary_and_coboundary_are_adjoint(
            g in small_graph(),
            q in 2usize..=6,
            xs in prop::collection::vec(0usize..64, 4),
            ys in prop::collection::vec(0usize..64, 5),
        ) {
            let group = GroupSpec::cyclic(q);
            let sigma = g.orientation().clone();
            let x: Vec<usize> = xs[..g.vertex_count()].iter().map(|a| a % q).collect();
            let y: Vec<usize> = ys[..g.edge_count()].iter().map(|a| a % q).collect();
            let dx = g.coboundary(&sigma, &group, &x).unwrap();
            let dy = g.boundary(&sigma, &group, &y).unwrap();
            let lhs: usize = dx.iter().zip(&y).map(|(a, b)| a * b).sum::<usize>() % q;
            let rhs: usize = x.iter().zip(&dy).map(|(a, b)| a * b).sum::<usize>() % q;
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn two_stretch_lifts_flows_bijectively() {
        for (name, g) in corpus::all() {
            for q in [2usize, 3] {
                let stretch = g.two_stretch();
                if (q as f64).powi(stretch.graph.edge_count() as i32) > 1e5 {
                    continue;
                }
                let group = GroupSpec::cyclic(q);
                let sigma = g.orientation();
                let flows = oracles::enumerate_flows(&g, sigma, &group, budget()).unwrap();
                let mut lifted: Vec<Vec<usize>> =
                    flows.iter().map(|y| stretch.lift_flow(sigma, &group, y)).collect();
                lifted.sort();
                let mut target =
                    oracles::enumerate_flows(&stretch.graph, stretch.graph.orientation(), &group, budget()).unwrap();
                target.sort();
                assert_eq!(lifted, target, "{name} q={q}");
            }
        }
    }

    #[test]
    fn flow_space_has_the_expected_size() {
        for (name, g) in corpus::all() {
            for q in [2usize, 3, 4] {
                if (q as f64).powi(g.edge_count() as i32) > 1e6 {
                    continue;
                }
                let group = GroupSpec::cyclic(q);
                let flows = oracles::enumerate_flows(&g, g.orientation(), &group, budget()).unwrap();
                let expected = q.pow((g.edge_count() - g.total_rank()) as u32);
                assert_eq!(flows.len(), expected, "{name} q={q}");
            }
        }
    }
}

mod fourier_props {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn transform_is_unitary((f, g) in random_function()) {
            let lhs = fourier::fourier(&f).hermitian(&fourier::fourier(&g)).unwrap();
            let rhs = f.hermitian(&g).unwrap();
            prop_assert!(rel(lhs, rhs) < 1e-9);
        }

        #[test]
        fn square_is_negation_and_fourth_power_is_identity((f, _g) in random_function()) {
            let f2 = fourier::fourier(&fourier::fourier(&f));
            let scale = 1f64.max(f.max_abs());
            prop_assert!(f2.max_abs_diff(&fourier::negate(&f)).unwrap() < 1e-9 * scale);
            let f4 = fourier::fourier(&fourier::fourier(&f2));
            prop_assert!(f4.max_abs_diff(&f).unwrap() < 1e-9 * scale);
            let back = fourier::inverse_fourier(&fourier::fourier(&f));
            prop_assert!(back.max_abs_diff(&f).unwrap() < 1e-9 * scale);
        }

        #[test]
        fn products_transform_to_convolutions((f, g) in random_function()) {
            let q = f.group().order() as f64;
            let lhs = fourier::fourier(&f.pointwise(&g).unwrap());
            let rhs = fourier::convolve(&fourier::fourier(&f), &fourier::fourier(&g))
                .unwrap()
                .scaled(Complex64::new(q.powf(-(f.arity() as f64) / 2.0), 0.0));
            let scale = 1f64.max(lhs.max_abs()).max(rhs.max_abs());
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-9 * scale);
        }
    }

    #[test]
    fn subgroups_of_cyclic_groups_transform_to_annihilators() {
        for q in 2..=12usize {
            let group = GroupSpec::cyclic(q);
            for d in (1..=q).filter(|d| q % d == 0) {
                let ind = QFunction::indicator(&group, 1, |t| t[0] % d == 0);
                let annihilator = q / d;
                let size = (q / d) as f64;
                let expected = QFunction::indicator(&group, 1, |t| t[0] % annihilator == 0)
                    .scaled(Complex64::new(size / (q as f64).sqrt(), 0.0));
                assert!(fourier::fourier(&ind).max_abs_diff(&expected).unwrap() < 1e-9, "q={q} d={d}");
                assert!(fourier::submodule_transform_residual(&ind, 1 << 20).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn f4_characters_are_a_bijection_onto_the_dual() {
        let g = GroupSpec::f4();
        let table = g.character_table();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let lhs = table[a][g.add(b, c)];
                    assert!((lhs - table[a][b] * table[a][c]).norm() < 1e-12);
                }
            }
            for a2 in 0..a {
                assert!(table[a].iter().zip(&table[a2]).any(|(x, y)| (x - y).norm() > 0.5));
            }
        }
    }
}

mod model_props {
    use super::*;

    fn weights(graph: &Multigraph, group: &GroupSpec, seed: &[f64]) -> VertexWeights {
        let mut i = 0usize;
        VertexWeights::for_graph(group, graph, |_| {
            i += 1;
            Complex64::new(seed[i % seed.len()], seed[(i * 7 + 3) % seed.len()])
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn uniform_edge_model_is_the_monochrome_pairing(
            g in small_graph(),
            q in 2usize..=3,
            seed in prop::collection::vec(-1.0f64..1.0, 16),
        ) {
            let group = GroupSpec::cyclic(q);
            let f = weights(&g, &group, &seed);
            let lhs = models::edge_partition(&g, &EdgeModel::uniform(f.clone()), budget()).unwrap().value;
            let rhs = models::halfedge_inner(&g, &f, &QFunction::monochrome(&group, 2), budget()).unwrap().value;
            prop_assert!(rel(lhs, rhs) < 1e-9);
        }

        #[test]
        fn partition_functions_multiply_over_disjoint_unions(
            a in small_graph(),
            b in small_graph(),
            q in 2usize..=3,
            seed in prop::collection::vec(-1.0f64..1.0, 16),
        ) {
            let group = GroupSpec::cyclic(q);
            let u = a.disjoint_union(&b);
            let f = weights(&u, &group, &seed);
            let g1 = QFunction::from_fn(&group, 1, |t| Complex64::new(seed[t[0]], 0.0));
            let model = EdgeModel::new(f, g1).unwrap();
            let z = |h: &Multigraph| models::edge_partition(h, &model, budget()).unwrap().value;
            prop_assert!(rel(z(&u), z(&a) * z(&b)) < 1e-9);

            let vf = QFunction::from_fn(&group, 1, |t| Complex64::new(seed[t[0] + 5], seed[t[0] + 8]));
            let vg = QFunction::from_fn(&group, 2, |t| Complex64::new(seed[t[0] * q + t[1]], 0.5));
            let vm = VertexModel::new(vf, vg).unwrap();
            let zv = |h: &Multigraph| models::vertex_partition(h, &vm, budget()).unwrap().value;
            prop_assert!(rel(zv(&u), zv(&a) * zv(&b)) < 1e-9);
        }
    }

    #[test]
    fn uniform_edge_model_matches_monochrome_pairing_on_the_corpus() {
        for (name, g) in corpus::all() {
            for q in [2usize, 3, 4] {
                if (q as f64).powi(g.edge_count() as i32) > 1e6 {
                    continue;
                }
                let group = GroupSpec::cyclic(q);
                let f = VertexWeights::for_graph(&group, &g, |t| {
                    Complex64::new(1.0 + t.iter().sum::<usize>() as f64 * 0.25, t.first().copied().unwrap_or(0) as f64)
                });
                let lhs = models::edge_partition(&g, &EdgeModel::uniform(f.clone()), budget()).unwrap().value;
                let rhs = models::halfedge_inner(&g, &f, &QFunction::monochrome(&group, 2), budget()).unwrap().value;
                assert!(rel(lhs, rhs) < 1e-9, "{name} q={q}");
            }
        }
    }
}

mod oracle_props {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn flow_enumerator_matches_tutte_exactly() {
        for (name, g) in corpus::all() {
            let tutte = oracles::tutte(&g, budget()).unwrap();
            for q in [2usize, 3, 4] {
                if (q as f64).powi(g.edge_count() as i32) > 1e6 {
                    continue;
                }
                let flows = oracles::enumerate_flows(&g, g.orientation(), &GroupSpec::cyclic(q), budget()).unwrap();
                let enumerator = oracles::hwe(&flows, g.edge_count());
                for s in [2i64, 3, 5] {
                    let lhs = enumerator.eval_int(&BigInt::from(s));
                    let x = BigRational::from_integer(BigInt::from(s));
                    let y = BigRational::new(BigInt::from(s - 1 + q as i64), BigInt::from(s - 1));
                    let pre = num_traits::pow(BigInt::from(s - 1), g.edge_count() - g.total_rank());
                    let rhs = tutte.eval_rational(&x, &y) * BigRational::from_integer(pre);
                    assert_eq!(BigRational::from_integer(lhs), rhs, "{name} q={q} s={s}");
                }
            }
        }
    }

    #[test]
    fn tension_enumerator_is_the_monochrome_polynomial() {
        for (name, g) in corpus::all() {
            for q in [2usize, 3, 4] {
                if (q as f64).powi(g.vertex_count().max(g.edge_count()) as i32) > 1e6 {
                    continue;
                }
                let tensions = oracles::enumerate_tensions(&g, g.orientation(), &GroupSpec::cyclic(q), budget()).unwrap();
                let enumerator = oracles::hwe(&tensions, g.edge_count());
                for t in [0i64, 2, 3] {
                    let lhs = enumerator.eval_int(&BigInt::from(t)) * BigInt::from(q).pow(g.component_count() as u32);
                    let rhs = oracles::monochrome_polynomial(&g, q, Complex64::new(t as f64, 0.0), budget()).unwrap();
                    let lhs: f64 = lhs.to_string().parse().unwrap();
                    assert!(rel(Complex64::new(lhs, 0.0), rhs) < 1e-12, "{name} q={q} t={t}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn macwilliams_identity(idx in 0usize..10, q in 2usize..=4, h in complex_vec(4)) {
            let (name, g) = corpus::all()[idx].clone();
            prop_assume!((q as f64).powi(g.vertex_count().max(g.edge_count()) as i32) <= 1e6);
            let group = GroupSpec::cyclic(q);
            let table = WeightTable::new(&group, h[..q].to_vec()).unwrap();
            let flows = oracles::enumerate_flows(&g, g.orientation(), &group, budget()).unwrap();
            let tensions = oracles::enumerate_tensions(&g, g.orientation(), &group, budget()).unwrap();
            let lhs = oracles::cwe(&flows, &table);
            let scale = (q as f64).powf(-(g.edge_count() as f64) / 2.0) * flows.len() as f64;
            let rhs = oracles::cwe(&tensions, &table.fourier()) * scale;
            prop_assert!(rel(lhs, rhs) < 1e-8, "{}", name);
        }
    }
}

mod duality_props {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn symmetric_edge_weights_make_x_q_orientation_free(
            g in small_graph(),
            heads in prop::collection::vec(0u8..2, 5),
            q in 2usize..=4,
            s in complex_vec(4),
            t in complex_vec(4),
        ) {
            let group = GroupSpec::cyclic(q);
            let sym: Vec<Complex64> = (0..q).map(|b| t[b] + t[group.neg(b)]).collect();
            let p = XQParams::new(
                WeightTable::new(&group, s[..q].to_vec()).unwrap(),
                WeightTable::new(&group, sym).unwrap(),
            ).unwrap();
            let sigma = Orientation::from_heads(heads[..g.edge_count()].to_vec()).unwrap();
            let a = duality::xq_evaluate(&g, g.orientation(), &p, budget()).unwrap().value;
            let b = duality::xq_evaluate(&g, &sigma, &p, budget()).unwrap().value;
            prop_assert!(rel(a, b) < 1e-12);
        }

        #[test]
        fn x_q_equals_its_dual_expansion(
            idx in 0usize..3,
            q in 2usize..=4,
            s in complex_vec(4),
            t in complex_vec(4),
        ) {
            let g = [corpus::digon(), corpus::triangle(), corpus::theta()][idx].clone();
            let group = GroupSpec::cyclic(q);
            let p = XQParams::new(
                WeightTable::new(&group, s[..q].to_vec()).unwrap(),
                WeightTable::new(&group, t[..q].to_vec()).unwrap(),
            ).unwrap();
            let a = duality::xq_evaluate(&g, g.orientation(), &p, budget()).unwrap().value;
            let b = duality::xq_dual(&g, g.orientation(), &p, budget()).unwrap().value;
            prop_assert!(rel(a, b) < 1e-9);
        }
    }

    #[test]
    fn generic_branch_tends_to_the_root_of_unity_branch() {
        let t = Complex64::new(3.0, 0.0);
        for g in [corpus::digon(), corpus::triangle(), corpus::theta()] {
            for q in [2usize, 3, 4] {
                for c in 0..q {
                    let root = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * c as f64 / q as f64);
                    let near = root * Complex64::new(1.0 + 1e-7, 0.0);
                    let a = duality::principal_generic_branch(&g, g.orientation(), q, near, t, budget()).unwrap();
                    let b = duality::principal_root_branch(&g, g.orientation(), q, c, t, budget()).unwrap();
                    assert!(rel(a.value, b.value) < 1e-3, "q={q} c={c}");
                }
            }
        }
    }
}

mod signed_props {
    use super::*;

    #[test]
    fn zero_sum_and_monochrome_parity_pairings_differ_by_the_predicted_sign() {
        for (name, g) in corpus::all() {
            let Some(k) = (1..=4).find(|&k| g.is_regular(k)) else { continue };
            if k < 2 || g.rotation().is_none() || (k as f64).powi(g.edge_count() as i32) > 1e6 {
                continue;
            }
            let set = ColourSet::full(k);
            let zero = signed::zero_sum_parity_sum(&g, &set, budget()).unwrap().value;
            let mono = signed::monochrome_parity_sum(&g, &set, budget()).unwrap().value;
            if k % 2 == 0 && g.vertex_count() % 2 == 1 {
                assert!(zero.norm() < 1e-9 && mono.norm() < 1e-9, "{name}");
                continue;
            }
            let sign = f64::from(signed::cor45_sign(k, g.edge_count(), g.vertex_count()).unwrap());
            assert!((zero - mono * sign).norm() < 1e-9, "{name}: {zero} vs {sign} * {mono}");
        }
    }

    #[test]
    fn zero_sum_pairing_equals_monochrome_pairing_of_the_transform() {
        for (name, g) in corpus::all() {
            for (k, q) in [(2usize, 3usize), (3, 3), (3, 4)] {
                if !g.is_regular(k) || g.rotation().is_none() || (q as f64).powi(g.edge_count() as i32) > 1e6 {
                    continue;
                }
                let set = ColourSet::symmetric(q, k).unwrap();
                let a = signed::zero_sum_parity_sum(&g, &set, budget()).unwrap().value;
                let b = signed::monochrome_parity_fourier_sum(&g, &set, budget()).unwrap().value;
                assert!(rel(a, b) < 1e-9, "{name} k={k} q={q}");
            }
        }
    }

    #[test]
    fn sine_model_magnitude_does_not_depend_on_q() {
        for fixture in corpus::fixtures() {
            let g = &fixture.graph;
            if !fixture.pfaffian_compatible || !g.is_regular(3) {
                continue;
            }
            let values: Vec<f64> = (3..=5)
                .filter(|&q| (q as f64).powi(g.edge_count() as i32) <= 1e6)
                .map(|q| signed::sine_model(g, q, 3, budget()).unwrap().magnitude())
                .collect();
            for v in &values[1..] {
                assert!((v - values[0]).abs() <= 1e-6 * values[0].max(1.0), "{}", fixture.name);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn adjacent_swaps_negate_every_signed_sum(v in 0usize..4, i in 0usize..2) {
            let k4 = corpus::k4();
            let rotation = k4.rotation().unwrap().swap_adjacent(v, i);
            let swapped = k4.clone().with_rotation(rotation.orders().to_vec()).unwrap();
            let b = budget();
            prop_assert_eq!(
                signed::proper_colouring_sign_sum(&swapped, 3, b).unwrap(),
                -signed::proper_colouring_sign_sum(&k4, 3, b).unwrap()
            );
            let (x, y) = (signed::sine_model(&k4, 3, 3, b).unwrap().value, signed::sine_model(&swapped, 3, 3, b).unwrap().value);
            prop_assert!((x + y).norm() < 1e-9);
            let (x, y) = (signed::kplus1_sign_sum(&k4, 3, b).unwrap().value, signed::kplus1_sign_sum(&swapped, 3, b).unwrap().value);
            prop_assert!((x + y).norm() < 1e-9);
        }
    }

    #[test]
    fn single_edge_signed_sums_are_trivial() {
        let e = corpus::single_edge();
        let b = budget();
        for q in [1usize, 2, 3] {
            assert!((signed::sine_model(&e, q, 1, b).unwrap().value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
        assert_eq!(signed::proper_colouring_sign_sum(&e, 1, b).unwrap(), 1);
        assert!((signed::kplus1_sign_sum(&e, 1, b).unwrap().value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
