use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Num(String),
    H,
    LBrace,
    RBrace,
    Pipe,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Ge,
    Le,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number `{s}`"),
            Tok::H => "`h`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        let err = |message: String| Error::Parse {
            line: l0,
            column: c0,
            message,
        };
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        let mut width = 1;
        let tok = match c {
            'h' => Tok::H,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '|' => Tok::Pipe,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{00b7}' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '\u{2265}' => Tok::Ge,
            '\u{2264}' => Tok::Le,
            '>' | '<' => {
                if chars.get(k + 1) != Some(&'=') {
                    return Err(err(format!("expected `{c}=`")));
                }
                width = 2;
                if c == '>' {
                    Tok::Ge
                } else {
                    Tok::Le
                }
            }
            d if d.is_ascii_digit() || d == '.' => {
                let start = k;
                let mut end = k;
                while end < chars.len() && (chars[end].is_ascii_digit() || chars[end] == '.') {
                    end += 1;
                }
                width = end - start;
                Tok::Num(chars[start..end].iter().collect())
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
        k += width;
        column += width;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}
