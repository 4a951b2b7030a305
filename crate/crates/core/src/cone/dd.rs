//! Double description: halfspace description `{x : A x ≥ 0}` to extreme rays.
//!
//! Starts from the whole space (a lineality basis, no rays) and intersects
//! one halfspace at a time. Two rays are combined only when adjacent, which
//! is decided by the rank of the constraints tight at both.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{exact_rank, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone)]
struct Ray {
    v: Vec<Rational>,
    /// Processed constraint indices tight at `v`.
    zero: Vec<usize>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Rescales to the primitive integer vector with the same direction.
fn primitive(v: &mut [Rational]) {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return;
    }
    for (slot, x) in v.iter_mut().zip(ints) {
        *slot = Rational::from_integer(x / &gcd);
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Extreme rays (primitive integer vectors) of the pointed cone
/// `{x ∈ ℝ^dim : c · x ≥ 0 for c in constraints}`, processing constraints in
/// the order given.
pub(crate) fn double_description(constraints: &[Vec<Rational>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    let mut lines: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            let mut e = vec![Rational::zero(); dim];
            e[k] = Rational::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<usize> = Vec::new();

    for (t, a) in constraints.iter().enumerate() {
        if a.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: a.len(),
            });
        }
        if let Some(pos) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lines.swap_remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|x| *x = -x.clone());
                al = -al;
            }
            for other in lines.iter_mut() {
                let f = dot(a, other) / &al;
                if !f.is_zero() {
                    for (x, y) in other.iter_mut().zip(&l) {
                        *x -= &f * y;
                    }
                    primitive(other);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / &al;
                if !f.is_zero() {
                    for (x, y) in r.v.iter_mut().zip(&l) {
                        *x -= &f * y;
                    }
                    primitive(&mut r.v);
                }
                r.zero.push(t);
            }
            primitive(&mut l);
            rays.push(Ray {
                v: l,
                zero: processed.clone(),
            });
        } else {
            let values: Vec<Rational> = rays.iter().map(|r| dot(a, &r.v)).collect();
            let target_rank = dim - lines.len();
            let mut next: Vec<Ray> = Vec::new();
            for (r, s) in rays.iter().zip(&values) {
                if !s.is_negative() {
                    let mut r = r.clone();
                    if s.is_zero() {
                        r.zero.push(t);
                    }
                    next.push(r);
                }
            }
            for (p, sp) in rays.iter().zip(&values) {
                if !sp.is_positive() {
                    continue;
                }
                for (q, sq) in rays.iter().zip(&values) {
                    if !sq.is_negative() {
                        continue;
                    }
                    let common = intersect(&p.zero, &q.zero);
                    if target_rank < 2 || common.len() < target_rank - 2 {
                        continue;
                    }
                    let rows: Vec<&[Rational]> =
                        common.iter().map(|&k| constraints[k].as_slice()).collect();
                    if exact_rank(&rows, dim) != target_rank - 2 {
                        continue;
                    }
                    let mut v: Vec<Rational> = p
                        .v
                        .iter()
                        .zip(&q.v)
                        .map(|(x, y)| sp * y - sq * x)
                        .collect();
                    primitive(&mut v);
                    let mut zero = common;
                    zero.push(t);
                    next.push(Ray { v, zero });
                }
            }
            rays = next;
        }
        processed.push(t);
    }
    if !lines.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "cone is not pointed: lineality dimension {}",
            lines.len()
        )));
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}
