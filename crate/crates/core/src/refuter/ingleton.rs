use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::SearchConfig;
use super::descent::local_descent;
use super::search::{candidate, violation_threshold, Counterexample};
use crate::gausslin::{logdet_rank_function, SpdMatrix};
use crate::rankfn::{ingleton, IngletonForm, LinearFunctional};
use crate::Result;

const N: usize = 4;
/// Number of lowest-valued candidates polished by descent.
const RESTARTS: usize = 8;

/// Lowest Ingleton value seen when no violation was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestValueReport {
    pub value_bits: f64,
    pub matrix: SpdMatrix,
    pub form: String,
    pub seed: u64,
    pub candidate_index: u64,
    pub budget: usize,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IngletonOutcome {
    Found {
        counterexample: Counterexample,
        form: IngletonForm,
    },
    Best(BestValueReport),
}

impl IngletonOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IngletonOutcome::Found { .. })
    }

    /// Best value reached, whether or not it is a violation.
    pub fn value_bits(&self) -> f64 {
        match self {
            IngletonOutcome::Found { counterexample, .. } => counterexample.value_bits,
            IngletonOutcome::Best(r) => r.value_bits,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Scored {
    value: f64,
    index: u64,
    form: usize,
    violation: bool,
}

fn score(forms: &[LinearFunctional], k: &SpdMatrix, index: u64) -> Option<Scored> {
    let g = logdet_rank_function(k).ok()?;
    forms
        .iter()
        .enumerate()
        .filter_map(|(form, f)| {
            let value = f.evaluate(&g).ok()?;
            Some(Scored {
                value,
                index,
                form,
                violation: value < violation_threshold(f, &g),
            })
        })
        .min_by(|a, b| a.value.total_cmp(&b.value).then(a.form.cmp(&b.form)))
}

/// Minimizes all six Ingleton instances on four indices over log-det
/// functions: `cfg.budget` sampled candidates, then descent from the
/// lowest few. Returns the lowest-index sampled violator if one exists,
/// else the best descent violator, else a best-value report.
pub fn ingleton_violation_search(cfg: &SearchConfig) -> Result<IngletonOutcome> {
    cfg.validate()?;
    let forms_id = IngletonForm::all_for_four();
    let forms: Vec<LinearFunctional> = forms_id
        .iter()
        .map(|&form| ingleton(form, N))
        .collect::<Result<_>>()?;

    let mut scored: Vec<Scored> = cfg.install(|| {
        (0..cfg.budget as u64)
            .into_par_iter()
            .filter_map(|t| {
                let (k, _) = candidate(N, cfg, t).ok()?;
                score(&forms, &k, t)
            })
            .collect()
    })?;

    let found = |f: &IngletonForm, index: u64, k: SpdMatrix, provenance: String| -> Result<IngletonOutcome> {
        let lf = ingleton(*f, N)?;
        Ok(IngletonOutcome::Found {
            counterexample: Counterexample::from_matrix(&lf, k, cfg.seed, index, provenance)?,
            form: *f,
        })
    };

    if let Some(hit) = scored.iter().filter(|s| s.violation).min_by_key(|s| s.index) {
        let (k, kind) = candidate(N, cfg, hit.index)?;
        return found(&forms_id[hit.form], hit.index, k, kind.name().to_string());
    }

    scored.sort_by(|a, b| a.value.total_cmp(&b.value).then(a.index.cmp(&b.index)));
    scored.truncate(RESTARTS);

    struct Polished {
        value: f64,
        matrix: SpdMatrix,
        index: u64,
        form: usize,
        provenance: String,
    }
    let polished: Vec<Polished> = cfg.install(|| {
        scored
            .par_iter()
            .map(|s| -> Result<Polished> {
                let (start, kind) = candidate(N, cfg, s.index)?;
                let d = local_descent(&forms[s.form], &start, cfg)?;
                Ok(Polished {
                    value: d.value,
                    matrix: d.matrix,
                    index: s.index,
                    form: s.form,
                    provenance: format!("{}+descent:{}", kind.name(), d.steps),
                })
            })
            .collect::<Result<Vec<_>>>()
    })??;

    let best = polished
        .into_iter()
        .min_by(|a, b| a.value.total_cmp(&b.value).then(a.index.cmp(&b.index)));
    let Some(best) = best else {
        // Every candidate failed to evaluate; report the identity.
        let k = SpdMatrix::identity(N);
        let value = forms[0].evaluate(&logdet_rank_function(&k)?)?;
        return Ok(IngletonOutcome::Best(BestValueReport {
            value_bits: value,
            matrix: k,
            form: forms_id[0].to_string(),
            seed: cfg.seed,
            candidate_index: 0,
            budget: cfg.budget,
            provenance: "identity".into(),
        }));
    };
    let g = logdet_rank_function(&best.matrix)?;
    let value = forms[best.form].evaluate(&g)?;
    if value < violation_threshold(&forms[best.form], &g) {
        return found(&forms_id[best.form], best.index, best.matrix, best.provenance);
    }
    Ok(IngletonOutcome::Best(BestValueReport {
        value_bits: value,
        matrix: best.matrix,
        form: forms_id[best.form].to_string(),
        seed: cfg.seed,
        candidate_index: best.index,
        budget: cfg.budget,
        provenance: best.provenance,
    }))
}
