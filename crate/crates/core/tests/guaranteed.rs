use pgexpander::bounds::guaranteed_errors;
use pgexpander::expcode::CodeSpec;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn decodes(eps: usize, seed: u64) -> bool {
    let spec = CodeSpec::pg52(eps).unwrap();
    let weight = guaranteed_errors(eps as u64).unwrap() as usize;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut word = vec![0u8; spec.block_len()];
    for i in sample(&mut rng, word.len(), weight) {
        word[i] = rng.gen_range(1..=255u8);
    }
    let r = spec.iterative_decode(&word, &[]).unwrap();
    r.success && r.final_word.iter().all(|&x| x == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_patterns_of_guaranteed_weight_decode(eps in (1usize..=7).prop_map(|i| 2 * i + 1), seed in any::<u64>()) {
        prop_assert!(decodes(eps, seed));
    }
}
