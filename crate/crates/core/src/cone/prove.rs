use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::elemental::{elemental_system, ElementalSystem};
use super::lp::{nonneg_combination, LpOutcome};
use crate::rankfn::{LinearFunctional, RankFunction};
use crate::rational::{Rational, RationalText};
use crate::Result;

/// Largest `n` for which failing to prove means the inequality is false.
pub const SHANNON_COMPLETE_UP_TO: usize = 3;

/// Exact proof that `f` is nonnegative on `con(Γ_n, φ_1, …, φ_n)`:
/// `f = Σ_j w_j · row_j` with `w ≥ 0`, and `f(φ_i) = −b_i ≥ 0` for all `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub n: usize,
    /// Elemental row identifiers, aligned with `weights`.
    pub row_ids: Vec<String>,
    pub weights: Vec<Rational>,
    pub phi_checks: Vec<Rational>,
}

impl Certificate {
    /// Re-checks the certificate against `f` in exact arithmetic.
    pub fn verify(&self, f: &LinearFunctional) -> bool {
        if f.n() != self.n {
            return false;
        }
        let Ok(system) = elemental_system(self.n) else {
            return false;
        };
        if self.weights.len() != system.len() || self.weights.iter().any(Signed::is_negative) {
            return false;
        }
        let mut recon = LinearFunctional::zero(self.n).expect("valid n");
        for (w, row) in self.weights.iter().zip(system.rows()) {
            if !w.is_zero() {
                recon = recon.plus(&row.functional.scaled(w)).expect("same n");
            }
        }
        let expected_phi: Vec<Rational> = f.balance_profile().into_iter().map(|b| -b).collect();
        recon == *f
            && self.phi_checks == expected_phi
            && self.phi_checks.iter().all(|c| !c.is_negative())
    }

    /// Nonzero weights keyed by row id.
    pub fn support(&self) -> BTreeMap<String, Rational> {
        self.row_ids
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| !w.is_zero())
            .map(|(id, w)| (id.clone(), w.clone()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let wire = CertificateWire {
            verdict: "proven".into(),
            n: self.n,
            weights: self
                .support()
                .into_iter()
                .map(|(k, v)| (k, RationalText(v)))
                .collect(),
            phi_checks: self.phi_checks.iter().cloned().map(RationalText).collect(),
        };
        serde_json::to_value(wire).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    verdict: String,
    n: usize,
    weights: BTreeMap<String, RationalText>,
    phi_checks: Vec<RationalText>,
}

/// Why a functional is outside the provable cone.
#[derive(Debug, Clone, PartialEq)]
pub enum Refusal {
    /// `f(φ_i) = −b_i < 0`: shrinking coordinate `i` drives the left side to −∞.
    ScalingDirection { index: usize, balance: Rational },
    /// A Shannon polymatroid `g ∈ Γ_n` with `f(g) < 0` (Farkas vector).
    ShannonDual { polymatroid: RankFunction<Rational> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProofOutcome {
    Proven(Certificate),
    NotProvable(Refusal),
}

impl ProofOutcome {
    pub fn is_proven(&self) -> bool {
        matches!(self, ProofOutcome::Proven(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ProofOutcome::Proven(c) => Some(c),
            ProofOutcome::NotProvable(_) => None,
        }
    }

    pub fn to_json(&self, n: usize) -> serde_json::Value {
        match self {
            ProofOutcome::Proven(c) => c.to_json(),
            ProofOutcome::NotProvable(r) => {
                let reason = match r {
                    Refusal::ScalingDirection { index, balance } => serde_json::json!({
                        "kind": "scaling_direction",
                        "index": index,
                        "balance": RationalText(balance.clone()),
                    }),
                    Refusal::ShannonDual { polymatroid } => serde_json::json!({
                        "kind": "shannon_dual",
                        "polymatroid": polymatroid,
                    }),
                };
                serde_json::json!({
                    "verdict": "not_provable",
                    "reason": reason,
                    "shannon_complete": n <= SHANNON_COMPLETE_UP_TO,
                })
            }
        }
    }
}

/// Prover for a fixed ground-set size; reuses the elemental system.
#[derive(Debug, Clone)]
pub struct ShannonProver {
    system: ElementalSystem,
    columns: Vec<Vec<Rational>>,
}

impl ShannonProver {
    pub fn new(n: usize) -> Result<Self> {
        let system = elemental_system(n)?;
        let columns = system.dense_rows();
        Ok(ShannonProver { system, columns })
    }

    pub fn system(&self) -> &ElementalSystem {
        &self.system
    }

    /// Sound for every `n`; complete for `n ≤ 3`.
    pub fn prove(&self, f: &LinearFunctional) -> ProofOutcome {
        assert_eq!(f.n(), self.system.n(), "functional and prover disagree on n");
        let balance = f.balance_profile();
        if let Some((i, b)) = balance
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_positive())
            .max_by(|a, b| a.1.cmp(b.1))
        {
            return ProofOutcome::NotProvable(Refusal::ScalingDirection {
                index: i + 1,
                balance: b.clone(),
            });
        }
        match nonneg_combination(&self.columns, &f.dense()) {
            LpOutcome::Feasible(weights) => ProofOutcome::Proven(Certificate {
                n: f.n(),
                row_ids: self.system.rows().iter().map(|r| r.id.to_string()).collect(),
                weights,
                phi_checks: balance.into_iter().map(|b| -b).collect(),
            }),
            LpOutcome::Infeasible(z) => {
                let scale = z
                    .iter()
                    .map(|x| x.abs())
                    .max()
                    .filter(|m| !m.is_zero())
                    .unwrap_or_else(|| Rational::from_integer(1.into()));
                let mut values = vec![Rational::zero()];
                values.extend(z.into_iter().map(|x| x / &scale));
                let polymatroid =
                    RankFunction::from_values(f.n(), values).expect("2^n - 1 coordinates");
                ProofOutcome::NotProvable(Refusal::ShannonDual { polymatroid })
            }
        }
    }
}

/// Decides whether `f` is a Shannon-type consequence valid for all
/// differential entropies.
pub fn shannon_prove(f: &LinearFunctional) -> ProofOutcome {
    ShannonProver::new(f.n()).expect("functional has a valid n").prove(f)
}

/// `∏_α |K_α|^{c_α} ≥ 1`: the same decision, since `log₂|K_α| = 2 h(X_α)` for
/// a Gaussian with covariance `K/(2πe)` and the factor 2 does not affect signs.
pub fn prove_determinant_inequality(f: &LinearFunctional) -> ProofOutcome {
    shannon_prove(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankfn::{hadamard, han, szasz, Subset};
    use crate::rational::{int, ratio};

    #[test]
    fn hadamard_two_uses_mutual_information_row() {
        let ProofOutcome::Proven(c) = shannon_prove(&hadamard(2).unwrap()) else {
            panic!("hadamard(2) must be provable");
        };
        assert_eq!(c.weights, vec![int(0), int(0), int(1)]);
        assert!(c.verify(&hadamard(2).unwrap()));
        assert_eq!(c.to_json()["weights"]["I(1;2)"], "1");
    }

    #[test]
    fn negative_singleton_fails_shannon_dual() {
        let f = LinearFunctional::from_terms(2, [(Subset(1), int(-1))]).unwrap();
        let ProofOutcome::NotProvable(Refusal::ShannonDual { polymatroid }) = shannon_prove(&f)
        else {
            panic!("expected a polymatroid witness");
        };
        assert!(f.evaluate_exact(&polymatroid).unwrap().is_negative());
        let system = elemental_system(2).unwrap();
        for row in system.rows() {
            assert!(!row.functional.evaluate_exact(&polymatroid).unwrap().is_negative());
        }
    }

    #[test]
    fn positive_singleton_fails_scaling() {
        let f = LinearFunctional::from_terms(2, [(Subset(1), int(1))]).unwrap();
        assert_eq!(
            shannon_prove(&f),
            ProofOutcome::NotProvable(Refusal::ScalingDirection {
                index: 1,
                balance: int(1)
            })
        );
    }

    #[test]
    fn classical_inequalities() {
        for f in [
            szasz(3, 1).unwrap(),
            szasz(3, 2).unwrap(),
            han(3, 1).unwrap(),
            hadamard(3).unwrap(),
        ] {
            let out = prove_determinant_inequality(&f);
            assert!(out.certificate().is_some_and(|c| c.verify(&f)), "{f:?}");
        }
        assert!(!prove_determinant_inequality(&hadamard(2).unwrap().negated()).is_proven());
    }

    #[test]
    fn tampered_certificate_fails() {
        let f = hadamard(3).unwrap();
        let mut c = shannon_prove(&f).certificate().unwrap().clone();
        assert!(c.verify(&f));
        assert!(!c.verify(&szasz(3, 2).unwrap()));
        let k = c.weights.iter().position(|w| !w.is_zero()).unwrap();
        c.weights[k] += ratio(1, 7);
        assert!(!c.verify(&f));
    }

    #[test]
    fn refusal_json_flags_incompleteness() {
        let f = LinearFunctional::from_terms(4, [(Subset(1), int(-1))]).unwrap();
        let v = shannon_prove(&f).to_json(4);
        assert_eq!(v["verdict"], "not_provable");
        assert_eq!(v["shannon_complete"], false);
    }
}
