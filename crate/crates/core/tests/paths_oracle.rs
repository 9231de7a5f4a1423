use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subset_itrans::oracle::{brute_count_cycles, brute_count_paths};
use subset_itrans::paths::{
    count_cycles_by_weight, count_paths_by_weight, count_paths_full_dp, count_paths_with,
    reconstruct_path, support_walk_dp, Edge, Gluing, WeightedDigraph,
};

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> WeightedDigraph {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.2..0.9);
    let mut edges = Vec::new();
    for tail in 0..n {
        for head in 0..n {
            // Occasional loops and parallel arcs.
            let copies = if rng.gen_bool(density) { 1 + rng.gen_bool(0.1) as usize } else { 0 };
            for _ in 0..copies {
                if tail != head || rng.gen_bool(0.3) {
                    edges.push(Edge { tail, head, weight: rng.gen_range(0..=3) });
                }
            }
        }
    }
    WeightedDigraph::new(n, edges).unwrap()
}

#[test]
fn small_graphs_match_dfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let d = random_graph(&mut rng, 8);
        let n = d.vertex_count();
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        for len in 0..n {
            let fast = count_paths_by_weight(&d, s, t, len).unwrap();
            assert_eq!(fast, brute_count_paths(&d, s, t, len), "s={s} t={t} len={len}\n{d}");
            assert!(fast.coeffs().iter().all(|c| !c.is_negative()));
        }
    }
}

#[test]
fn reversal_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..20 {
        let d = random_graph(&mut rng, 9);
        let n = d.vertex_count();
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let r = d.reversed();
        for len in 0..n {
            assert_eq!(
                count_paths_by_weight(&d, s, t, len).unwrap(),
                count_paths_by_weight(&r, t, s, len).unwrap()
            );
        }
    }
}

#[test]
fn spanning_length_agrees_with_full_dp() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let d = random_graph(&mut rng, 10);
        let n = d.vertex_count();
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        for len in [n - 1, (n - 1) / 2] {
            assert_eq!(
                count_paths_by_weight(&d, s, t, len).unwrap(),
                count_paths_full_dp(&d, s, t, len).unwrap()
            );
        }
    }
}

/// Gluing through the transform slice equals gluing by explicit pairs.
#[test]
fn half_split_gluing_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..20 {
        let d = random_graph(&mut rng, 9);
        let n = d.vertex_count();
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        for len in 0..n {
            assert_eq!(
                count_paths_with(&d, s, t, len, Gluing::Transform).unwrap(),
                count_paths_with(&d, s, t, len, Gluing::Pairwise).unwrap()
            );
        }
    }
}

#[test]
fn weightless_totals_match_unweighted_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..10 {
        let d = random_graph(&mut rng, 8);
        let n = d.vertex_count();
        let flat = WeightedDigraph::new(
            n,
            d.edges().iter().map(|e| Edge { weight: 0, ..*e }).collect(),
        )
        .unwrap();
        for len in 0..n {
            let w = count_paths_by_weight(&d, 0, n - 1, len).unwrap();
            let u = count_paths_by_weight(&flat, 0, n - 1, len).unwrap();
            assert_eq!(w.coeff_sum(), u.coeff(0));
        }
    }
}

#[test]
fn support_table_sums_count_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..10 {
        let d = random_graph(&mut rng, 8);
        let n = d.vertex_count();
        let table = support_walk_dp(&d, 0, n).unwrap();
        for k in 1..=n {
            for t in 0..n {
                let sum: BigInt = table
                    .entries(k)
                    .iter()
                    .filter(|e| e.1 == t)
                    .map(|e| e.2.coeff_sum())
                    .sum();
                assert_eq!(sum, brute_count_paths(&d, 0, t, k - 1).coeff_sum());
            }
        }
    }
}

#[test]
fn cycles_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..20 {
        let d = random_graph(&mut rng, 7);
        for len in 1..=d.vertex_count() {
            assert_eq!(
                count_cycles_by_weight(&d, len).unwrap(),
                brute_count_cycles(&d, len),
                "len={len}\n{d}"
            );
        }
    }
}

#[test]
fn reconstructed_paths_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    let mut positives = 0;
    while positives < 15 {
        let d = random_graph(&mut rng, 8);
        let n = d.vertex_count();
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let len = rng.gen_range(0..n);
        let counts = brute_count_paths(&d, s, t, len);
        for w in 0..=3 * len + 1 {
            let got = reconstruct_path(&d, s, t, len, w as u64).unwrap();
            if counts.coeff(w) == BigInt::from(0) {
                assert_eq!(got, None);
                continue;
            }
            positives += 1;
            let p = got.expect("positive count must reconstruct");
            assert_eq!(p.len(), len + 1);
            assert_eq!((p[0], p[len]), (s, t));
            let mut seen = p.clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), p.len());
            // Some choice of parallel arcs realizes weight w.
            let mut reach = vec![0u64];
            for pair in p.windows(2) {
                let ws: Vec<u64> = d
                    .edges()
                    .iter()
                    .filter(|e| e.tail == pair[0] && e.head == pair[1])
                    .map(|e| e.weight as u64)
                    .collect();
                assert!(!ws.is_empty());
                reach = reach.iter().flat_map(|r| ws.iter().map(move |x| r + x)).collect();
            }
            assert!(reach.contains(&(w as u64)));
        }
    }
}
