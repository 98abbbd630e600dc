mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shrinkca::automaton::{all_traces, ca_step, cell_trace, evolve, transition_matrix, CaState};
use shrinkca::modeler::{ca_charpoly, expand_once};
use shrinkca::shrinker::verify_annihilator;

fn rules_and_state(max_n: usize) -> impl Strategy<Value = (Vec<bool>, Vec<bool>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn step_matches_cell_by_cell_rule((r, s) in rules_and_state(200)) {
        let next = ca_step(&rule_vector(&r), &state(&s)).unwrap();
        prop_assert_eq!(next.bits().into_inner(), step_naive(&r, &s));
    }

    #[test]
    fn step_is_linear((r, u) in rules_and_state(150), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_bits(&mut rng, u.len());
        let rv = rule_vector(&r);
        let (u, v) = (state(&u), state(&v));
        let lhs = ca_step(&rv, &u.xor(&v)).unwrap();
        let rhs = ca_step(&rv, &u).unwrap().xor(&ca_step(&rv, &v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn step_is_row_vector_times_matrix((r, s) in rules_and_state(130)) {
        let rv = rule_vector(&r);
        let a = transition_matrix(&rv);
        prop_assert!(a.is_symmetric());
        prop_assert_eq!(ca_step(&rv, &state(&s)).unwrap(), a.apply(&state(&s)));
    }

    #[test]
    fn mirror_embedding_reproduces_the_half_automaton((r, s) in rules_and_state(40)) {
        let n = r.len();
        let rv = rule_vector(&r);
        let big = expand_once(&rv);
        let embedded: Vec<bool> = s.iter().chain(s.iter().rev()).copied().collect();
        let steps = 3 * n + 5;
        let small = evolve(&rv, &state(&s), steps).unwrap();
        let large = evolve(&big, &state(&embedded), steps).unwrap();
        for (a, b) in small.iter().zip(&large) {
            let bits = b.bits();
            prop_assert_eq!(bits.reversed(), bits.clone());
            prop_assert_eq!(&bits[..n], &a.bits()[..]);
            prop_assert_eq!(bits[n - 1], bits[n]);
        }
    }
}

#[test]
fn traces_satisfy_the_characteristic_recurrence() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let n = rng.gen_range(1..=40);
        let r = random_bits(&mut rng, n);
        let s = random_bits(&mut rng, n);
        let rv = rule_vector(&r);
        let m = ca_charpoly(&rv);
        let traces = all_traces(&rv, &state(&s), 3 * n + 1).unwrap();
        let naive = traces_naive(&r, &s, 3 * n + 1);
        for (i, t) in traces.iter().enumerate() {
            assert_eq!(t.to_vec(), naive[i]);
            assert!(verify_annihilator(t, &m, 1).unwrap());
        }
        assert_eq!(cell_trace(&rv, &state(&s), n, 3 * n + 1).unwrap(), traces[n - 1]);
    }
}

#[test]
fn long_rows_cross_word_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in [63, 64, 65, 127, 128, 129, 1000] {
        let r = random_bits(&mut rng, n);
        let mut s = random_bits(&mut rng, n);
        let rv = rule_vector(&r);
        let mut cur = state(&s);
        for _ in 0..50 {
            cur = ca_step(&rv, &cur).unwrap();
            s = step_naive(&r, &s);
            assert_eq!(cur, CaState::from_bits(&s));
        }
    }
}
