use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits script text into tokens. `#` and `//` start line comments.
pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<u64>().map_err(|_| Error::Syntax {
                line: l0,
                col: c0,
                expected: "integer literal below 2^64".into(),
            })?;
            col += i - start;
            out.push(Token {
                tok: Tok::Int(v),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric()
                    || chars[i] == '_'
                    || chars[i] == '-' && is_kebab(&chars, start, i))
            {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(text),
                line: l0,
                col: c0,
            });
            continue;
        }
        if "()[]{},;=+-*^/:".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Syntax {
            line: l0,
            col: c0,
            expected: format!("a token, found `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

// Only `dey-sd`, `dey-ep`, `ep-theorems` and `syzygy-dual` use hyphens inside
// a word; anywhere else `-` is subtraction.
fn is_kebab(chars: &[char], start: usize, i: usize) -> bool {
    let head: String = chars[start..i].iter().collect();
    let next = chars.get(i + 1).copied().unwrap_or(' ');
    matches!(head.as_str(), "dey" | "ep" | "syzygy") && next.is_alphabetic()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = tokenize("ring R = F(101)[x,y];\n check dey-sd i=2;").unwrap();
        assert_eq!(t[0].tok, Tok::Ident("ring".into()));
        assert_eq!(t[4].tok, Tok::Sym('('));
        assert_eq!(t[5].tok, Tok::Int(101));
        let dey = t
            .iter()
            .find(|x| x.tok == Tok::Ident("dey-sd".into()))
            .unwrap();
        assert_eq!((dey.line, dey.col), (2, 8));
    }

    #[test]
    fn minus_is_subtraction_between_variables() {
        let t = tokenize("x-y").unwrap();
        assert_eq!(t.len(), 4);
    }
}
