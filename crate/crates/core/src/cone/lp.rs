//! Exact phase-1 simplex over the rationals with Bland's rule.
//!
//! Decides whether `target` is a nonnegative combination of `columns`. On
//! failure it returns a Farkas vector `z` with `column · z ≥ 0` for every
//! column and `target · z < 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

pub(crate) fn nonneg_combination(columns: &[Vec<Rational>], target: &[Rational]) -> LpOutcome {
    let m = target.len();
    let ncols = columns.len();
    let width = ncols + m + 1;
    let rhs = width - 1;

    let mut sign = vec![Rational::one(); m];
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        if target[i].is_negative() {
            sign[i] = -Rational::one();
        }
        for (j, col) in columns.iter().enumerate() {
            row[j] = &col[i] * &sign[i];
        }
        row[ncols + i] = Rational::one();
        row[rhs] = &target[i] * &sign[i];
        tab.push(row);
    }
    let mut basis: Vec<usize> = (ncols..ncols + m).collect();

    // Reduced costs of the phase-1 objective Σ artificials; obj[rhs] = −z.
    let mut obj = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..ncols {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }

    while let Some(enter) = (0..ncols + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[enter];
            let better = match &leave {
                None => true,
                Some((best, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*best]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (p, _) = leave.expect("phase-1 objective is bounded below");
        pivot(&mut tab, &mut obj, p, enter);
        basis[p] = enter;
    }

    if obj[rhs].is_zero() {
        let mut weights = vec![Rational::zero(); ncols];
        for (i, &b) in basis.iter().enumerate() {
            if b < ncols {
                weights[b] = tab[i][rhs].clone();
            }
        }
        LpOutcome::Feasible(weights)
    } else {
        // Artificial i has reduced cost 1 − u_i, u the phase-1 duals.
        let farkas = (0..m)
            .map(|i| -(Rational::one() - &obj[ncols + i]) * &sign[i])
            .collect();
        LpOutcome::Infeasible(farkas)
    }
}

fn pivot(tab: &mut [Vec<Rational>], obj: &mut [Rational], p: usize, enter: usize) {
    let inv = Rational::one() / &tab[p][enter];
    for x in tab[p].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let support: Vec<usize> = (0..tab[p].len()).filter(|&j| !tab[p][j].is_zero()).collect();
    let pivot_row = tab[p].clone();
    let eliminate = |row: &mut [Rational]| {
        let factor = row[enter].clone();
        if factor.is_zero() {
            return;
        }
        for &j in &support {
            row[j] -= &factor * &pivot_row[j];
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != p {
            eliminate(row);
        }
    }
    eliminate(obj);
}
