use lottery_core::pipeline::{refute, Disposition, PipelineOptions, Rule};
use lottery_core::{Design, Method, VertexSet};
use proptest::prelude::*;

fn design_strategy() -> impl Strategy<Value = Design> {
    (6usize..=16).prop_flat_map(|n| {
        let block = proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 6);
        proptest::collection::vec(block, 1..=7).prop_map(move |blocks| Design::new(n, 6, &blocks).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn verifiers_agree(d in design_strategy()) {
        let a = d.verify_lottery(6, 2, Method::Exhaustive).unwrap();
        let b = d.verify_lottery(6, 2, Method::Clique).unwrap();
        prop_assert_eq!(a.is_valid(), b.is_valid());
    }

    #[test]
    fn adding_a_block_keeps_validity(d in design_strategy(), offset in 0usize..16, stride in 1usize..4) {
        let before = d.verify_lottery(6, 2, Method::Clique).unwrap().is_valid();
        let n = d.n();
        let block: VertexSet = (0..n).map(|i| (offset + i * stride) % n + 1).collect::<std::collections::BTreeSet<_>>()
            .into_iter().take(6).collect();
        prop_assume!(block.len() == 6);
        let bigger = d.with_block(block).unwrap();
        let after = bigger.verify_lottery(6, 2, Method::Clique).unwrap().is_valid();
        prop_assert!(!before || after);
    }

    #[test]
    fn histogram_identities(d in design_strategy()) {
        let h = d.degree_histogram();
        prop_assert_eq!(h.vertex_total(), d.n());
        prop_assert_eq!(h.incidence_total(), 6 * d.size());
        prop_assert_eq!(d.degrees().iter().sum::<usize>(), 6 * d.size());
    }

    #[test]
    fn relabelling_preserves_validity(d in design_strategy(), seed in any::<u64>()) {
        let n = d.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let e = d.relabel(&perm).unwrap();
        prop_assert_eq!(
            d.verify_lottery(6, 2, Method::Clique).unwrap().is_valid(),
            e.verify_lottery(6, 2, Method::Clique).unwrap().is_valid()
        );
    }
}

fn surviving(n: usize, j: usize, opts: &PipelineOptions) -> usize {
    refute(n, j, opts)
        .iter()
        .filter(|c| c.disposition == Disposition::Surviving)
        .count()
}

#[test]
fn disabling_a_rule_never_closes_more_cases() {
    for (n, j) in [(32, 6), (41, 11), (47, 16)] {
        let base = surviving(n, j, &PipelineOptions::default());
        assert_eq!(base, 0, "n={n}");
        for rule in Rule::ALL {
            let weaker = surviving(n, j, &PipelineOptions::without(rule));
            assert!(weaker >= base, "n={n} without {rule:?}");
        }
    }
}
