mod common;

use detcone::cone::{classify, Classification};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn classifier_is_total_and_witnesses_are_real() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut proven, mut refuted) = (0, 0);
    for _ in 0..300 {
        let f = common::random_functional(3, &mut rng);
        match classify(&f).unwrap() {
            Classification::Proven(c) => {
                assert!(c.verify(&f));
                proven += 1;
            }
            Classification::Refuted(r) => {
                assert!(r.witness.value_bits < -1e-6, "{f:?}: {}", r.witness.value_bits);
                assert!(r.witness.reverify(&f).unwrap());
                refuted += 1;
            }
        }
    }
    assert!(proven > 0 && refuted > 0);
}
