#![allow(dead_code)]

use detcone::cone::elemental_system;
use detcone::rational::ratio;
use detcone::{LinearFunctional, Rational};
use rand::Rng;

fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.random_range(-4..=4), rng.random_range(1..=3))
}

/// Mixes three shapes so every verdict path is exercised: unconstrained
/// coefficients (mostly unbalanced), nonnegative combinations of elemental
/// rows (valid), and such combinations with one row subtracted (balanced but
/// often invalid).
pub fn random_functional(n: usize, rng: &mut impl Rng) -> LinearFunctional {
    let system = elemental_system(n).unwrap();
    let dense_len = (1 << n) - 1;
    match rng.random_range(0..3) {
        0 => {
            let dense: Vec<Rational> = (0..dense_len).map(|_| small_rational(rng)).collect();
            LinearFunctional::from_dense(n, &dense).unwrap()
        }
        kind => {
            let mut f = LinearFunctional::zero(n).unwrap();
            for row in system.rows() {
                if row.id.is_mutual_information() && rng.random_bool(0.4) {
                    let w = ratio(rng.random_range(1..=4), rng.random_range(1..=3));
                    f = f.plus(&row.functional.scaled(&w)).unwrap();
                }
            }
            if kind == 2 {
                let rows = system.rows();
                let row = &rows[rng.random_range(0..rows.len())];
                let w = ratio(rng.random_range(1..=6), rng.random_range(1..=2));
                f = f.plus(&row.functional.scaled(&-w)).unwrap();
            }
            f
        }
    }
}
