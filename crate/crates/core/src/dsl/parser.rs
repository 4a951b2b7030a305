use num_traits::One;

use super::ast::{DetFactor, EntropyTerm, Expr, InequalityAst, Relation};
use super::lexer::{lex, Spanned, Tok};
use crate::rankfn::{GroundSet, LinearFunctional, Subset};
use crate::rational::{parse_rational, Rational};
use crate::{Error, Result};

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    n: usize,
}

/// Side as written, before deciding whether a bare constant is the
/// determinant literal `1`.
enum Side {
    Entropy(Vec<EntropyTerm>, Option<(usize, usize)>),
    Det(Vec<DetFactor>),
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: impl Into<String>) -> Error {
        Error::Parse {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned> {
        let t = self.next();
        if t.tok != tok {
            return Err(self.error_at(&t, format!("expected {}, found {}", tok.describe(), t.tok.describe())));
        }
        Ok(t)
    }

    fn mixed(at: &Spanned) -> Error {
        Error::MixedAtoms {
            line: at.line,
            column: at.column,
        }
    }

    fn int(&mut self) -> Result<(usize, Spanned)> {
        let t = self.next();
        match &t.tok {
            Tok::Num(s) if s.chars().all(|c| c.is_ascii_digit()) => s
                .parse::<usize>()
                .map(|v| (v, t.clone()))
                .map_err(|_| self.error_at(&t, format!("index `{s}` too large"))),
            other => Err(self.error_at(&t, format!("expected an index, found {}", other.describe()))),
        }
    }

    /// `int ["/" int] | decimal`, unsigned.
    fn rat(&mut self) -> Result<Rational> {
        let t = self.next();
        let Tok::Num(text) = &t.tok else {
            return Err(self.error_at(&t, format!("expected a number, found {}", t.tok.describe())));
        };
        let mut text = text.clone();
        if self.peek().tok == Tok::Slash && !text.contains('.') {
            self.next();
            let d = self.next();
            match &d.tok {
                Tok::Num(s) if s.chars().all(|c| c.is_ascii_digit()) => {
                    text = format!("{text}/{s}");
                }
                other => return Err(self.error_at(&d, format!("expected a denominator, found {}", other.describe()))),
            }
        }
        parse_rational(&text).map_err(|e| self.error_at(&t, e.to_string()))
    }

    fn signed_rat(&mut self) -> Result<Rational> {
        match self.peek().tok {
            Tok::Minus => {
                self.next();
                Ok(-self.rat()?)
            }
            Tok::Plus => {
                self.next();
                self.rat()
            }
            _ => self.rat(),
        }
    }

    fn idxlist(&mut self, close: Tok) -> Result<Subset> {
        let mut indices = Vec::new();
        loop {
            let (i, at) = self.int()?;
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRangeAt {
                    index: i,
                    n: self.n,
                    line: at.line,
                    column: at.column,
                });
            }
            if indices.contains(&i) {
                return Err(self.error_at(&at, format!("index {i} repeated")));
            }
            indices.push(i);
            match self.peek().tok {
                Tok::Comma => {
                    self.next();
                }
                _ => break,
            }
        }
        self.expect(close)?;
        Subset::from_indices(&indices, self.n)
    }

    fn entropy_atom(&mut self) -> Result<Subset> {
        self.expect(Tok::H)?;
        self.expect(Tok::LBrace)?;
        self.idxlist(Tok::RBrace)
    }

    fn det_side(&mut self) -> Result<Side> {
        let mut factors = Vec::new();
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Pipe => {
                    self.next();
                    let subset = self.idxlist(Tok::Pipe)?;
                    let exponent = if self.peek().tok == Tok::Caret {
                        self.next();
                        self.signed_rat()?
                    } else {
                        Rational::one()
                    };
                    factors.push(DetFactor { subset, exponent });
                }
                Tok::H => return Err(Self::mixed(&t)),
                _ => return Err(self.error_at(&t, format!("expected `|`, found {}", t.tok.describe()))),
            }
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                }
                Tok::Plus | Tok::Minus => {
                    let t = self.peek().clone();
                    return Err(self.error_at(&t, "determinant products cannot be added"));
                }
                _ => return Ok(Side::Det(factors)),
            }
        }
    }

    fn entropy_side(&mut self) -> Result<Side> {
        let mut terms = Vec::new();
        let first = self.peek().clone();
        let mut negative = match first.tok {
            Tok::Minus => {
                self.next();
                true
            }
            Tok::Plus => {
                self.next();
                false
            }
            _ => false,
        };
        let mut bare_one = None;
        loop {
            let t = self.peek().clone();
            let term = match t.tok {
                Tok::H => EntropyTerm {
                    coeff: Rational::one(),
                    atom: Some(self.entropy_atom()?),
                },
                Tok::Num(_) => {
                    let c = self.rat()?;
                    if self.peek().tok == Tok::Star {
                        self.next();
                        let at = self.peek().clone();
                        if at.tok == Tok::Pipe {
                            return Err(Self::mixed(&at));
                        }
                        EntropyTerm {
                            coeff: c,
                            atom: Some(self.entropy_atom()?),
                        }
                    } else {
                        EntropyTerm { coeff: c, atom: None }
                    }
                }
                Tok::Pipe => return Err(Self::mixed(&t)),
                _ => {
                    return Err(self.error_at(&t, format!("expected a term, found {}", t.tok.describe())));
                }
            };
            if terms.is_empty() && !negative && term.atom.is_none() && term.coeff.is_one() {
                bare_one = Some((t.line, t.column));
            }
            let coeff = if negative { -term.coeff } else { term.coeff };
            terms.push(EntropyTerm { coeff, atom: term.atom });
            match self.peek().tok {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                Tok::Star => {
                    let t = self.peek().clone();
                    if matches!(self.toks.get(self.pos + 1).map(|s| &s.tok), Some(Tok::Pipe)) && bare_one.is_some() {
                        return Err(self.error_at(&t, "the literal 1 cannot be multiplied"));
                    }
                    return Err(self.error_at(&t, "expected `+`, `-` or a relation"));
                }
                _ => {
                    let single = terms.len() == 1;
                    return Ok(Side::Entropy(terms, if single { bare_one } else { None }));
                }
            }
            self.next();
        }
    }

    fn side(&mut self) -> Result<Side> {
        if self.peek().tok == Tok::Pipe {
            self.det_side()
        } else {
            self.entropy_side()
        }
    }

    fn relation(&mut self) -> Result<Relation> {
        let t = self.next();
        match &t.tok {
            Tok::Ge => Ok(Relation::Ge),
            Tok::Le => Ok(Relation::Le),
            Tok::Pipe | Tok::H => Err(Self::mixed(&t)),
            other => Err(self.error_at(&t, format!("expected `>=` or `<=`, found {}", other.describe()))),
        }
    }
}

fn has_atoms(terms: &[EntropyTerm]) -> bool {
    terms.iter().any(|t| t.atom.is_some())
}

/// Parses one inequality over the ground set `{1, …, n}`.
pub fn parse(src: &str, n: usize) -> Result<InequalityAst> {
    GroundSet::new(n)?;
    if src.trim().is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    let mut p = Parser { toks: lex(src)?, pos: 0, n };
    let left = p.side()?;
    let rel_at = p.peek().clone();
    let relation = p.relation()?;
    let right_at = p.peek().clone();
    let right = p.side()?;
    let end = p.next();
    if end.tok != Tok::Eof {
        return Err(p.error_at(&end, format!("unexpected {} after the inequality", end.tok.describe())));
    }
    let (left, right) = match (left, right) {
        (Side::Det(l), Side::Det(r)) => (Expr::Det(l), Expr::Det(r)),
        (Side::Det(l), Side::Entropy(r, one)) => {
            if one.is_some() {
                (Expr::Det(l), Expr::Det(Vec::new()))
            } else if has_atoms(&r) {
                return Err(Parser::mixed(&right_at));
            } else {
                return Err(p.error_at(&right_at, "a determinant side must be a product of atoms or the literal 1"));
            }
        }
        (Side::Entropy(l, one), Side::Det(r)) => {
            if one.is_some() {
                (Expr::Det(Vec::new()), Expr::Det(r))
            } else if has_atoms(&l) {
                return Err(Parser::mixed(&rel_at));
            } else {
                let first = &p.toks[0];
                return Err(p.error_at(first, "a determinant side must be a product of atoms or the literal 1"));
            }
        }
        // `1 >= 1` is taken as the determinant literal on both sides.
        (Side::Entropy(_, Some(_)), Side::Entropy(_, Some(_))) => (Expr::Det(Vec::new()), Expr::Det(Vec::new())),
        (Side::Entropy(l, _), Side::Entropy(r, _)) => (Expr::Entropy(l), Expr::Entropy(r)),
    };
    Ok(InequalityAst {
        n,
        left,
        relation,
        right,
    })
}

/// [`parse`] followed by lowering.
pub fn parse_functional(src: &str, n: usize) -> Result<LinearFunctional> {
    parse(src, n)?.lower()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{determinant_form, entropy_form, print};
    use crate::rankfn::{hadamard, szasz};
    use crate::rational::{int, ratio};

    #[test]
    fn hadamard_spellings() {
        let h = hadamard(2).unwrap();
        assert_eq!(parse_functional("|1|*|2| >= |1,2|", 2).unwrap(), h);
        assert_eq!(parse_functional("h{1}+h{2}-h{1,2} >= 0", 2).unwrap(), h);
        assert_eq!(parse_functional("|1,2| <= |1| * |2|", 2).unwrap(), h);
        assert_eq!(parse_functional("h{1,2} ≤ h{1} + h{2}", 2).unwrap(), h);
    }

    #[test]
    fn exponents_lower_to_coefficients() {
        let f = parse_functional("|1,2|^2 >= |1|^3", 2).unwrap();
        assert_eq!(f.coeff(Subset(0b11)), int(2));
        assert_eq!(f.coeff(Subset(0b01)), int(-3));
        let g = parse_functional("|1|^1/3 * |2|^-0.25 >= 1", 2).unwrap();
        assert_eq!(g.coeff(Subset(0b01)), ratio(1, 3));
        assert_eq!(g.coeff(Subset(0b10)), ratio(-1, 4));
    }

    #[test]
    fn literal_one_either_side() {
        let f = parse_functional("1 <= |1,2|", 2).unwrap();
        assert_eq!(f.coeff(Subset(0b11)), int(1));
        let g = parse_functional("|1,2| >= 1", 2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn constants_must_cancel() {
        assert!(parse_functional("h{1} + 1 >= 1", 1).is_ok());
        assert!(matches!(parse_functional("h{1} >= 1", 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("h{1} + h{3} >= 0", 2),
            Err(Error::IndexOutOfRangeAt { index: 3, n: 2, line: 1, column: 10 })
        );
        assert_eq!(parse("h{1} >= |1|", 2), Err(Error::MixedAtoms { line: 1, column: 6 }));
        assert!(matches!(parse("h{1}\n >= |1| + h{2}", 2), Err(Error::Parse { line: 2, .. })));
        assert_eq!(parse("|1| * h{2} >= 1", 2), Err(Error::MixedAtoms { line: 1, column: 7 }));
        assert!(matches!(parse("h{1} >=", 2), Err(Error::Parse { line: 1, column: 8, .. })));
        assert!(matches!(parse("h{1,1} >= 0", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("|1| >= 2", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse("h{1} >= 0 0", 2), Err(Error::Parse { .. })));
    }

    #[test]
    fn canonical_printing() {
        let a = parse(" -h{2}+ 3/2*h{1,2} -0.5 >= -1/2 ", 2).unwrap();
        assert_eq!(print(&a), "-h{2} + 3/2*h{1,2} - 1/2 >= -1/2");
        assert_eq!(parse(&print(&a), 2).unwrap(), a);
        let d = parse("|2,1|^2*|1| <= 1", 2).unwrap();
        assert_eq!(print(&d), "|1,2|^2 * |1| <= 1");
    }

    #[test]
    fn generated_forms_round_trip() {
        let f = szasz(3, 1).unwrap();
        let e = entropy_form(&f);
        let d = determinant_form(&f);
        assert_eq!(parse(&print(&e), 3).unwrap().lower().unwrap(), f);
        assert_eq!(parse(&print(&d), 3).unwrap().lower().unwrap(), f);
        assert_eq!(print(&entropy_form(&LinearFunctional::zero(2).unwrap())), "0 >= 0");
        assert_eq!(print(&determinant_form(&LinearFunctional::zero(2).unwrap())), "1 >= 1");
    }

    #[test]
    fn det_literal_one_both_sides() {
        let ast = parse("1 >= 1", 2).unwrap();
        assert_eq!(ast.left, Expr::Det(Vec::new()));
        assert!(ast.lower().unwrap().is_zero());
    }
}
