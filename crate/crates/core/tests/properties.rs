mod common;

use detcone::cone::shannon_prove;
use detcone::dsl::{determinant_form, entropy_form, parse, print};
use detcone::gausslin::{logdet_rank_function, SpdMatrix};
use detcone::rational::ratio;
use detcone::refuter::{local_descent, SearchConfig};
use detcone::{LinearFunctional, RankFunction};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn functional(seed: u64, n: usize) -> LinearFunctional {
    common::random_functional(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prover_invariant_under_positive_scaling(seed in any::<u64>(), num in 1i64..20, den in 1i64..20) {
        let f = functional(seed, 3);
        let a = ratio(num, den);
        let p = shannon_prove(&f);
        let q = shannon_prove(&f.scaled(&a));
        prop_assert_eq!(p.is_proven(), q.is_proven());
        if let (Some(c), Some(d)) = (p.certificate(), q.certificate()) {
            prop_assert!(c.verify(&f));
            prop_assert!(d.verify(&f.scaled(&a)));
        }
    }

    #[test]
    fn certificates_always_reverify(seed in any::<u64>(), n in 2usize..=4) {
        let f = functional(seed, n);
        if let Some(c) = shannon_prove(&f).certificate() {
            prop_assert!(c.verify(&f));
            prop_assert!(!c.verify(&f.plus(&f).unwrap()) || f.is_zero());
        }
    }

    #[test]
    fn dsl_round_trip_of_generated_forms(seed in any::<u64>(), n in 1usize..=4) {
        let f = functional(seed, n);
        for ast in [entropy_form(&f), determinant_form(&f)] {
            let text = print(&ast);
            let back = parse(&text, n).unwrap();
            prop_assert_eq!(&back, &ast);
            prop_assert_eq!(back.lower().unwrap(), f.clone());
        }
    }

    #[test]
    fn descent_stays_spd_and_never_increases(seed in any::<u64>(), a in 1.0f64..3.0, b in -0.9f64..0.9) {
        let f = functional(seed, 2);
        let start = SpdMatrix::from_rows(&[vec![a, b], vec![b, 1.0]]).unwrap();
        let cfg = SearchConfig::new(seed).with_descent_steps(25);
        let d = local_descent(&f, &start, &cfg).unwrap();
        prop_assert!(d.trace.windows(2).all(|w| w[1] < w[0]));
        let g: RankFunction = logdet_rank_function(&d.matrix).unwrap();
        prop_assert!((f.evaluate(&g).unwrap() - d.value).abs() <= 1e-9);
        prop_assert!(SpdMatrix::new(d.matrix.matrix().clone()).is_ok());
    }
}
