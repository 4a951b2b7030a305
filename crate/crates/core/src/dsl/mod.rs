//! Surface syntax for inequalities.
//!
//! ```text
//! ineq   := expr REL expr            REL := ">=" | "<=" | "≥" | "≤"
//! entropy expr := term {("+"|"-") term}
//! term   := [rat "*"] "h" "{" idxlist "}" | rat
//! det expr := factor {"*" factor} | "1"
//! factor := "|" idxlist "|" ["^" rat]
//! idxlist := int {"," int}           rat := int ["/" int] | decimal
//! ```
//!
//! A leading sign is accepted on the first entropy term and on exponents.
//! Entropy constants must cancel across the relation.

mod ast;
mod lexer;
mod parser;

pub use ast::{determinant_form, entropy_form, DetFactor, EntropyTerm, Expr, InequalityAst, Relation};
pub use parser::{parse, parse_functional};

/// Canonical text of an AST; `parse(print(a)) == a`.
pub fn print(ast: &InequalityAst) -> String {
    ast.to_string()
}
