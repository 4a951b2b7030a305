use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rankfn::{LinearFunctional, Subset};
use crate::rational::{format_rational, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
}

/// `coeff · h{atom}`, or the constant `coeff` when `atom` is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyTerm {
    pub coeff: Rational,
    pub atom: Option<Subset>,
}

/// `|subset|^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetFactor {
    pub subset: Subset,
    pub exponent: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Entropy(Vec<EntropyTerm>),
    /// Product of factors; empty is the literal `1`.
    Det(Vec<DetFactor>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityAst {
    pub n: usize,
    pub left: Expr,
    pub relation: Relation,
    pub right: Expr,
}

fn subset_text(s: Subset) -> String {
    s.indices().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Entropy(terms) => {
                for (k, t) in terms.iter().enumerate() {
                    let neg = t.coeff.is_negative();
                    match (k, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    let mag = t.coeff.abs();
                    match t.atom {
                        None => write!(f, "{}", format_rational(&mag))?,
                        Some(s) if mag.is_one() => write!(f, "h{{{}}}", subset_text(s))?,
                        Some(s) => write!(f, "{}*h{{{}}}", format_rational(&mag), subset_text(s))?,
                    }
                }
                Ok(())
            }
            Expr::Det(factors) if factors.is_empty() => write!(f, "1"),
            Expr::Det(factors) => {
                for (k, d) in factors.iter().enumerate() {
                    if k > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "|{}|", subset_text(d.subset))?;
                    if !d.exponent.is_one() {
                        write!(f, "^{}", format_rational(&d.exponent))?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for InequalityAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Ge => ">=",
            Relation::Le => "<=",
        };
        write!(f, "{} {rel} {}", self.left, self.right)
    }
}

impl Expr {
    fn accumulate(&self, into: &mut LinearFunctional, sign: &Rational, constant: &mut Rational) -> Result<()> {
        match self {
            Expr::Entropy(terms) => {
                for t in terms {
                    match t.atom {
                        Some(s) => into.add_term(s, sign * &t.coeff)?,
                        None => *constant += sign * &t.coeff,
                    }
                }
            }
            Expr::Det(factors) => {
                for d in factors {
                    into.add_term(d.subset, sign * &d.exponent)?;
                }
            }
        }
        Ok(())
    }
}

impl InequalityAst {
    /// `left − right ≥ 0` (negated for `≤`) as a functional on log-values.
    /// Determinant exponents become coefficients of `log|K_α|`.
    pub fn lower(&self) -> Result<LinearFunctional> {
        let mut f = LinearFunctional::zero(self.n)?;
        let mut constant = Rational::zero();
        let one = Rational::one();
        self.left.accumulate(&mut f, &one, &mut constant)?;
        self.right.accumulate(&mut f, &-one, &mut constant)?;
        if !constant.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "constant terms must cancel, net constant {}",
                format_rational(&constant)
            )));
        }
        Ok(match self.relation {
            Relation::Ge => f,
            Relation::Le => f.negated(),
        })
    }
}

/// `Σ c_α h{α} >= 0` with terms in subset mask order.
pub fn entropy_form(f: &LinearFunctional) -> InequalityAst {
    let mut terms: Vec<EntropyTerm> = f
        .terms()
        .map(|(s, c)| EntropyTerm {
            coeff: c.clone(),
            atom: Some(s),
        })
        .collect();
    if terms.is_empty() {
        terms.push(EntropyTerm {
            coeff: Rational::zero(),
            atom: None,
        });
    }
    InequalityAst {
        n: f.n(),
        left: Expr::Entropy(terms),
        relation: Relation::Ge,
        right: Expr::Entropy(vec![EntropyTerm {
            coeff: Rational::zero(),
            atom: None,
        }]),
    }
}

/// `∏_{c_α > 0} |α|^{c_α} >= ∏_{c_α < 0} |α|^{−c_α}`, either side possibly `1`.
pub fn determinant_form(f: &LinearFunctional) -> InequalityAst {
    let side = |positive: bool| {
        Expr::Det(
            f.terms()
                .filter(|(_, c)| c.is_positive() == positive)
                .map(|(s, c)| DetFactor {
                    subset: s,
                    exponent: c.abs(),
                })
                .collect(),
        )
    };
    InequalityAst {
        n: f.n(),
        left: side(true),
        relation: Relation::Ge,
        right: side(false),
    }
}
