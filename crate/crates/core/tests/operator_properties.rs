//! Property tests for the crossover operators and the selection machinery.

use proptest::collection::vec;
use proptest::prelude::*;

use ringga::crossover::{
    arithmetic_with, intermediate_with, ring_at, single_point_at, two_point_at, CrossoverParams,
};
use ringga::engine::{rank_scale, sus_select_with_offset};
use ringga::genome::{clamp, Bounds, Genome};

fn gene() -> impl Strategy<Value = f64> {
    prop_oneof![
        -500.0..500.0f64,
        -5.12..5.12f64,
        Just(0.0),
        Just(-5.12),
        Just(5.12),
    ]
}

fn parents_and_cut(max_d: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>, usize)> {
    (1..=max_d).prop_flat_map(|d| (vec(gene(), d), vec(gene(), d), 0..2 * d))
}

fn sorted_bits(chunks: &[&[f64]]) -> Vec<u64> {
    let mut all: Vec<f64> = chunks.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all.into_iter().map(|x| x.to_bits()).collect()
}

proptest! {
    // The two ring children always split the ring exactly: together they
    // hold each parent gene exactly once.
    #[test]
    fn ring_children_partition_the_parent_multiset(
        (g1, g2, cut) in parents_and_cut(64)
    ) {
        let p1 = Genome::from(g1);
        let p2 = Genome::from(g2);
        let out = ring_at(&p1, &p2, cut).unwrap();
        prop_assert_eq!(
            sorted_bits(&[out.children[0].genes(), out.children[1].genes()]),
            sorted_bits(&[p1.genes(), p2.genes()])
        );
    }

    // Single-point children likewise rearrange parent genes only, and the
    // pair of children is a gene-for-gene partition of the parents.
    #[test]
    fn single_point_children_partition_the_parent_multiset(
        (g1, g2, raw_cut) in parents_and_cut(64)
    ) {
        prop_assume!(g1.len() >= 2);
        let d = g1.len();
        let cut = 1 + raw_cut % (d - 1);
        let p1 = Genome::from(g1);
        let p2 = Genome::from(g2);
        let out = single_point_at(&p1, &p2, cut).unwrap();
        prop_assert_eq!(
            sorted_bits(&[out.children[0].genes(), out.children[1].genes()]),
            sorted_bits(&[p1.genes(), p2.genes()])
        );
    }

    #[test]
    fn two_point_children_partition_the_parent_multiset(
        (g1, g2, raw) in parents_and_cut(64)
    ) {
        prop_assume!(g1.len() >= 3);
        let d = g1.len();
        let i = 1 + raw % (d - 2);
        let j = i + 1 + (raw / (d - 1)) % (d - 1 - i);
        let p1 = Genome::from(g1);
        let p2 = Genome::from(g2);
        let out = two_point_at(&p1, &p2, i, j).unwrap();
        prop_assert_eq!(
            sorted_bits(&[out.children[0].genes(), out.children[1].genes()]),
            sorted_bits(&[p1.genes(), p2.genes()])
        );
    }

    // With ic_ratio at most 1 every intermediate child gene stays inside
    // the interval its parents span.
    #[test]
    fn intermediate_children_stay_in_the_parent_hypercube(
        d in 1..=16usize,
        seed_genes in vec(gene(), 32),
        weights in vec(0.0..1.0f64, 16),
        ratio in 0.0..=1.0f64,
    ) {
        let p1 = Genome::from(seed_genes[..d].to_vec());
        let p2 = Genome::from(seed_genes[16..16 + d].to_vec());
        let params = CrossoverParams { ic_ratio: ratio, ..Default::default() };
        let out = intermediate_with(&p1, &p2, &params, weights[..d].to_vec()).unwrap();
        for child in &out.children {
            for k in 0..d {
                let lo = p1[k].min(p2[k]);
                let hi = p1[k].max(p2[k]);
                prop_assert!(lo <= child[k] && child[k] <= hi,
                    "gene {k}: {} outside [{lo}, {hi}]", child[k]);
            }
        }
    }

    // Arithmetic crossover's mirrored pair conserves the parent sum.
    #[test]
    fn arithmetic_mirror_conserves_the_sum(
        d in 1..=16usize,
        seed_genes in vec(gene(), 32),
        alpha in 0.0..=1.0f64,
    ) {
        let p1 = Genome::from(seed_genes[..d].to_vec());
        let p2 = Genome::from(seed_genes[16..16 + d].to_vec());
        let out = arithmetic_with(&p1, &p2, alpha).unwrap();
        for k in 0..d {
            let sum = out.children[0][k] + out.children[1][k];
            let want = p1[k] + p2[k];
            let scale = want.abs().max(1.0);
            prop_assert!((sum - want).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn clamp_is_idempotent_and_in_bounds(
        genes in vec(-1e4..1e4f64, 1..40),
        (lo, width) in (-100.0..100.0f64, 0.1..200.0f64),
    ) {
        let bounds = Bounds::new(lo, lo + width).unwrap();
        let g = Genome::from(genes);
        let once = clamp(&g, bounds);
        prop_assert!(once.genes().iter().all(|&x| bounds.contains(x)));
        prop_assert_eq!(clamp(&once, bounds), once);
    }

    // Rank weights ignore the objective's scale: any increasing affine
    // transform leaves them untouched.
    #[test]
    fn rank_weights_are_scale_invariant(
        values in vec(-1e3..1e3f64, 1..40),
        scale in 0.001..100.0f64,
        shift in -1e3..1e3f64,
    ) {
        let transformed: Vec<f64> = values.iter().map(|v| scale * v + shift).collect();
        prop_assert_eq!(rank_scale(&values), rank_scale(&transformed));
    }

    #[test]
    fn rank_weights_sum_to_n(values in vec(-1e3..1e3f64, 1..40)) {
        let total: f64 = rank_scale(&values).iter().sum();
        prop_assert!((total - values.len() as f64).abs() < 1e-9);
    }

    // The SUS low-variance guarantee: every selection count is the floor
    // or ceiling of its expectation, for any offset.
    #[test]
    fn sus_counts_never_stray_from_expectation(
        weights in vec(0.0..5.0f64, 1..16),
        count in 1..=32usize,
        offset_frac in 0.0..1.0f64,
    ) {
        let sum: f64 = weights.iter().sum();
        prop_assume!(sum > 1e-9);
        let step = sum / count as f64;
        let picked = sus_select_with_offset(&weights, count, offset_frac * step).unwrap();
        prop_assert_eq!(picked.len(), count);
        for (i, &w) in weights.iter().enumerate() {
            let hits = picked.iter().filter(|&&j| j == i).count() as f64;
            let expected = count as f64 * w / sum;
            prop_assert!(
                hits == expected.floor() || hits == expected.ceil(),
                "index {i}: {hits} picks for expectation {expected}"
            );
        }
    }
}
