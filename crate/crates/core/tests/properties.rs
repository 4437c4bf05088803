mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use silverbig_core::big::{build_big, build_big_with};
use silverbig_core::decider::{
    decide_silver, decide_silver_with, find_triple_certificate, DecideOptions, Decision,
};
use silverbig_core::designs::{
    make_affine_plane, make_kts, make_projective_plane, make_sts, Design, StsVariant,
};
use silverbig_core::format::{
    read_alpha_set, read_coloring, read_design, read_graph, write_alpha_set, write_coloring,
    write_design, write_graph,
};
use silverbig_core::independence::{
    enumerate_alpha_sets_with, max_independent_set, xi_census, IndependentSet,
};
use silverbig_core::silver::{rainbow_vertices, Coloring};
use silverbig_core::{Exec, Graph};

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn small_designs() -> Vec<Design> {
    vec![
        make_sts(7, StsVariant::Skolem).unwrap(),
        make_sts(9, StsVariant::Bose).unwrap(),
        make_sts(13, StsVariant::Cyclic13).unwrap(),
        make_sts(13, StsVariant::Noncyclic13).unwrap(),
        make_sts(19, StsVariant::Skolem).unwrap(),
        make_sts(21, StsVariant::Bose).unwrap(),
        make_kts(15).unwrap(),
        make_kts(27).unwrap(),
        make_affine_plane(4).unwrap(),
        make_affine_plane(5).unwrap(),
        make_projective_plane(3).unwrap(),
    ]
}

/// The same design with its points renamed by a seeded permutation.
fn relabel(d: &Design, seed: u64) -> Design {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..d.v()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let blocks = d
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&x| perm[x]).collect())
        .collect();
    Design::new(d.v(), d.k(), d.lambda(), blocks).unwrap()
}

#[test]
fn zero_and_one_bigs_are_complements() {
    for d in small_designs() {
        let g0 = build_big(&d, 0).unwrap();
        let g1 = build_big(&d, 1).unwrap();
        assert_eq!(g0.complement(), g1);
        let b = d.b();
        assert_eq!(g0.edge_count() + g1.edge_count(), b * (b - 1) / 2);
        for i in 2..=d.k() {
            assert_eq!(build_big(&d, i).unwrap().edge_count(), 0);
        }
    }
}

#[test]
fn design_files_round_trip() {
    for d in small_designs() {
        let text = write_design(&d);
        let back = read_design(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(write_design(&back), text);
        // a design without a resolution loses nothing either
        let plain = d.without_resolution();
        assert_eq!(read_design(&write_design(&plain)).unwrap(), plain);
    }
}

#[test]
fn symmetry_break_preserves_answers() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 6..=20 {
        for d in 2..=4 {
            if n * d % 2 == 1 {
                continue;
            }
            let g = common::random_regular(n, d, &mut rng);
            let m = max_independent_set(&g, 1_000_000).unwrap();
            let with = decide_silver(&g, &m.set, 10_000_000).unwrap().decision;
            let opts = DecideOptions {
                budget: 10_000_000,
                symmetry_break: false,
            };
            let without = decide_silver_with(&g, &m.set, opts).unwrap().decision;
            assert_ne!(with, Decision::Unknown);
            assert_eq!(
                matches!(with, Decision::Sat(_)),
                matches!(without, Decision::Sat(_)),
                "n={n} d={d}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelled_designs_round_trip(which in 0usize..11, seed in any::<u64>()) {
        let d = relabel(&small_designs()[which], seed);
        let text = write_design(&d);
        prop_assert_eq!(read_design(&text).unwrap(), d);
    }

    #[test]
    fn graph_coloring_and_set_files_round_trip(n in 1usize..30, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        prop_assert_eq!(&read_graph(&write_graph(&g)).unwrap(), &g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let k = rng.gen_range(1..6);
        let c = Coloring::new((0..n).map(|_| rng.gen_range(0..k)).collect(), k).unwrap();
        prop_assert_eq!(read_coloring(&write_coloring(&c)).unwrap(), c);
        let set: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        prop_assert_eq!(read_alpha_set(&write_alpha_set(&set)).unwrap(), set);
    }

    #[test]
    fn rainbow_matches_all_different(n in 4usize..16, d in 1usize..5, seed in any::<u64>()) {
        prop_assume!(d < n && n * d % 2 == 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_regular(n, d, &mut rng);
        let c = Coloring::new((0..n).map(|_| rng.gen_range(0..=d)).collect(), d + 1).unwrap();
        let got = rainbow_vertices(&g, &c).unwrap();
        let want: Vec<usize> = (0..n)
            .filter(|&x| {
                let mut cs: Vec<usize> = g.closed_neighborhood(x).iter().map(|&u| c.color(u)).collect();
                cs.sort_unstable();
                cs.dedup();
                cs.len() == d + 1
            })
            .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn mis_and_enumeration_match_brute_force(n in 1usize..15, p in 0.05f64..0.9, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let all = common::brute_force_alpha_sets(&g);
        let m = max_independent_set(&g, 10_000_000).unwrap();
        prop_assert!(m.exact);
        prop_assert!(g.is_independent(m.set.vertices()));
        prop_assert_eq!(m.set.len(), all[0].len());
        let seq = enumerate_alpha_sets_with(&g, m.set.len(), 10_000_000, Exec::Sequential).unwrap();
        let par = enumerate_alpha_sets_with(&g, m.set.len(), 10_000_000, Exec::Parallel).unwrap();
        prop_assert!(seq.complete);
        prop_assert_eq!(&seq.sets, &par.sets);
        let sets: Vec<Vec<usize>> = seq.sets.iter().map(|s| s.vertices().to_vec()).collect();
        prop_assert_eq!(sets, all);
    }

    #[test]
    fn census_counts_every_outside_vertex(n in 1usize..25, p in 0.05f64..0.8, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let set = max_independent_set(&g, 1_000_000).unwrap().set;
        let census = xi_census(&g, set.vertices()).unwrap();
        prop_assert_eq!(census.values().sum::<usize>(), n - set.len());
        let incident: usize = census.iter().map(|(i, c)| i * c).sum();
        let direct: usize = set.vertices().iter().map(|&x| g.degree(x)).sum();
        prop_assert_eq!(incident, direct);
    }

    #[test]
    fn certificates_imply_unsat(n in 6usize..22, d in 2usize..6, seed in any::<u64>()) {
        prop_assume!(d < n && n * d % 2 == 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_regular(n, d, &mut rng);
        let set = max_independent_set(&g, 1_000_000).unwrap().set;
        let rep = decide_silver(&g, &set, 10_000_000).unwrap();
        if let Some(cert) = find_triple_certificate(&g, &set).unwrap() {
            prop_assert!(cert.verify(&g));
            prop_assert_eq!(rep.decision, Decision::Unsat);
        }
    }

    #[test]
    fn decider_agrees_with_brute_force(n in 4usize..13, d in 2usize..5, seed in any::<u64>()) {
        prop_assume!(d < n && n * d % 2 == 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_regular(n, d, &mut rng);
        let set = max_independent_set(&g, 1_000_000).unwrap().set;
        let rep = decide_silver(&g, &set, 10_000_000).unwrap();
        let brute = common::brute_force_silver(&g, set.vertices());
        match rep.decision {
            Decision::Sat(c) => {
                prop_assert!(brute.is_some());
                prop_assert!(common::naive_silver(&g, c.colors(), set.vertices()));
            }
            Decision::Unsat => prop_assert!(brute.is_none()),
            Decision::Unknown => prop_assert!(false, "budget exhausted"),
        }
    }

    #[test]
    fn independent_set_constructor_checks(n in 1usize..20, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        prop_assert_eq!(IndependentSet::new(&g, vs.clone()).is_ok(), g.is_independent(&vs));
    }
}

#[test]
fn sequential_and_parallel_bigs_agree() {
    for d in small_designs() {
        for i in 0..=1 {
            assert_eq!(
                build_big_with(&d, i, Exec::Sequential).unwrap(),
                build_big_with(&d, i, Exec::Parallel).unwrap()
            );
        }
    }
}
