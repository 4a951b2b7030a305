use num_integer::binomial;

use super::functional::LinearFunctional;
use super::subset::{GroundSet, Subset};
use crate::rational::{int, ratio};
use crate::{Error, Result};

fn subsets_of_size(ground: GroundSet, k: usize) -> impl Iterator<Item = Subset> {
    ground.nonempty().filter(move |s| s.len() == k)
}

fn check_level(n: usize, l: usize) -> Result<GroundSet> {
    let ground = GroundSet::new(n)?;
    if l == 0 || l >= n {
        return Err(Error::InvalidArgument(format!(
            "level l = {l} must satisfy 1 <= l < n = {n}"
        )));
    }
    Ok(ground)
}

/// `Σ_i g(i) − g(N) ≥ 0`, i.e. `|K| ≤ ∏_i K_ii`. Vacuous at `n = 1`.
pub fn hadamard(n: usize) -> Result<LinearFunctional> {
    let ground = GroundSet::new(n)?;
    let mut f = LinearFunctional::zero(n)?;
    for i in 1..=n {
        f.add_term(Subset::singleton(i), int(1))?;
    }
    f.add_term(ground.full(), int(-1))?;
    Ok(f)
}

/// Szász: `(∏_{|β|=l} |K_β|)^{1/C(n-1,l-1)} ≥ (∏_{|β|=l+1} |K_β|)^{1/C(n-1,l)}`.
pub fn szasz(n: usize, l: usize) -> Result<LinearFunctional> {
    let ground = check_level(n, l)?;
    let lower = binomial(n - 1, l - 1) as i64;
    let upper = binomial(n - 1, l) as i64;
    let mut f = LinearFunctional::zero(n)?;
    for s in subsets_of_size(ground, l) {
        f.add_term(s, ratio(1, lower))?;
    }
    for s in subsets_of_size(ground, l + 1) {
        f.add_term(s, ratio(-1, upper))?;
    }
    Ok(f)
}

/// Han: the average of `h(X_β)/l` over `|β| = l` dominates the same average
/// one level up.
pub fn han(n: usize, l: usize) -> Result<LinearFunctional> {
    let ground = check_level(n, l)?;
    let lower = (binomial(n, l) * l) as i64;
    let upper = (binomial(n, l + 1) * (l + 1)) as i64;
    let mut f = LinearFunctional::zero(n)?;
    for s in subsets_of_size(ground, l) {
        f.add_term(s, ratio(1, lower))?;
    }
    for s in subsets_of_size(ground, l + 1) {
        f.add_term(s, ratio(-1, upper))?;
    }
    Ok(f)
}

/// Index quadruple `(i, j, k, l)` of an Ingleton inequality
///
/// `g(ik) + g(il) + g(jk) + g(jl) + g(kl) ≥ g(ij) + g(k) + g(l) + g(ikl) + g(jkl)`.
///
/// The form is symmetric under `i ↔ j` and `k ↔ l`, so a 4-element ground
/// set carries six distinct instances, one per choice of the pair `{k, l}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IngletonForm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl IngletonForm {
    pub fn new(i: usize, j: usize, k: usize, l: usize) -> Result<Self> {
        let idx = [i, j, k, l];
        for a in 0..4 {
            if idx[a] == 0 {
                return Err(Error::IndexOutOfRange { index: 0, n: 4 });
            }
            for b in a + 1..4 {
                if idx[a] == idx[b] {
                    return Err(Error::InvalidArgument(format!(
                        "Ingleton indices must be distinct, got {idx:?}"
                    )));
                }
            }
        }
        Ok(IngletonForm { i, j, k, l })
    }

    /// The six instances over the indices `{a, b, c, d}`.
    pub fn all_over(indices: [usize; 4]) -> Result<Vec<Self>> {
        let mut forms = Vec::with_capacity(6);
        for x in 0..4 {
            for y in x + 1..4 {
                let rest: Vec<usize> = (0..4).filter(|&t| t != x && t != y).collect();
                forms.push(IngletonForm::new(
                    indices[rest[0]],
                    indices[rest[1]],
                    indices[x],
                    indices[y],
                )?);
            }
        }
        Ok(forms)
    }

    pub fn all_for_four() -> Vec<Self> {
        Self::all_over([1, 2, 3, 4]).expect("distinct indices")
    }
}

impl std::fmt::Display for IngletonForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{};{},{})", self.i, self.j, self.k, self.l)
    }
}

pub fn ingleton(form: IngletonForm, n: usize) -> Result<LinearFunctional> {
    let IngletonForm { i, j, k, l } = form;
    let s = |idx: &[usize]| Subset::from_indices(idx, n);
    let terms = [
        (s(&[i, k])?, 1),
        (s(&[i, l])?, 1),
        (s(&[j, k])?, 1),
        (s(&[j, l])?, 1),
        (s(&[k, l])?, 1),
        (s(&[i, j])?, -1),
        (s(&[k])?, -1),
        (s(&[l])?, -1),
        (s(&[i, k, l])?, -1),
        (s(&[j, k, l])?, -1),
    ];
    LinearFunctional::from_terms(n, terms.into_iter().map(|(s, c)| (s, int(c))))
}
