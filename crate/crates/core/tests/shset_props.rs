mod common;

use std::collections::BTreeSet;

use common::{codes, field, h_values, naive_sh_linear, naive_sh_plain};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shlin::sample::random_candidate;
use shlin::shset::{
    count_with_mode, enumerate_with_mode, h_span_with_mode, holds, is_sh_linear, is_sh_set, verify,
};
use shlin::{Mode, ShSetCandidate, Verdict};

prop_compose! {
    fn candidate()(qi in 0usize..4, r in 2usize..5, h in 1usize..4, extra in 0usize..4, zero in any::<bool>(), seed in any::<u64>()) -> ShSetCandidate {
        let q: usize = [2, 3, 4, 5][qi];
        let r = if q > 3 { r.min(3) } else { r };
        let space = q.pow(r as u32) - usize::from(!zero);
        let size = (h + extra).min(space).min(7);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = h.min(size);
        random_candidate(&field(q), r, size, h, zero, &mut rng).unwrap()
    }
}

fn check_witness(a: &ShSetCandidate, v: &Verdict) {
    if let Verdict::Collision(w) = v {
        assert_ne!(w.lhs, w.rhs);
        assert!(w.lhs.is_canonical(a) && w.rhs.is_canonical(a));
        assert_eq!(w.lhs.terms.len(), a.h());
        assert_eq!(w.rhs.terms.len(), a.h());
        assert_eq!(w.lhs.evaluate(a), w.value);
        assert_eq!(w.rhs.evaluate(a), w.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn linear_verdict_matches_definition(a in candidate()) {
        let v = is_sh_linear(&a);
        prop_assert_eq!(v.is_ok(), naive_sh_linear(&a, a.h()));
        prop_assert_eq!(holds(&a, Mode::Linear), v.is_ok());
        check_witness(&a, &v);
    }

    #[test]
    fn plain_verdict_matches_definition(a in candidate()) {
        let v = is_sh_set(&a);
        prop_assert_eq!(v.is_ok(), naive_sh_plain(&a, a.h()));
        prop_assert_eq!(holds(&a, Mode::Plain), v.is_ok());
        check_witness(&a, &v);
        for (c, _) in enumerate_with_mode(&a, Mode::Plain) {
            prop_assert!(c.terms.iter().all(|t| t.1.code() == 1));
        }
    }

    #[test]
    fn span_matches_definition(a in candidate()) {
        let ours: BTreeSet<Vec<usize>> = h_span_with_mode(&a, Mode::Linear).iter().map(codes).collect();
        let naive: BTreeSet<Vec<usize>> = h_values(&a, a.h()).into_keys().collect();
        prop_assert_eq!(ours, naive);
    }

    #[test]
    fn enumeration_is_canonical_and_counted(a in candidate()) {
        for mode in [Mode::Linear, Mode::Plain] {
            let all = enumerate_with_mode(&a, mode);
            prop_assert_eq!(all.len() as u128, count_with_mode(&a, mode));
            let distinct: BTreeSet<_> = all.iter().map(|(c, _)| c.clone()).collect();
            prop_assert_eq!(distinct.len(), all.len());
            for (c, v) in &all {
                prop_assert!(c.is_canonical(&a));
                prop_assert_eq!(&c.evaluate(&a), v);
            }
        }
    }

    #[test]
    fn witness_is_the_earliest_shared_value(a in candidate()) {
        let Verdict::Collision(w) = verify(&a, Mode::Linear) else { return Ok(()); };
        let all = enumerate_with_mode(&a, Mode::Linear);
        let first = all
            .iter()
            .position(|(_, v)| all.iter().filter(|(_, u)| u == v).count() > 1)
            .unwrap();
        let second = all
            .iter()
            .enumerate()
            .position(|(j, (_, u))| j > first && *u == all[first].1)
            .unwrap();
        prop_assert_eq!(&w.lhs, &all[first].0);
        prop_assert_eq!(&w.rhs, &all[second].0);
    }
}
