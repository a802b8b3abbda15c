//! Tokenizer for `.qsc` scenarios.

use serde::Serialize;

use crate::error::{DslError, DslResult, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Ident,
    Integer,
    Punct,
    Keyword,
    String,
}

pub const KEYWORDS: [&str; 11] = ["field", "let", "curve", "line", "conic", "point", "lines", "points", "conics", "assert", "print"];

const PUNCT2: [&str; 2] = ["==", "!="];
const PUNCT1: &str = "=()[],:+-*/^";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
    /// Byte range in the source.
    #[serde(skip)]
    pub range: (usize, usize),
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    pub fn is_punct(&self, p: &str) -> bool {
        self.is(TokenKind::Punct, p)
    }

    pub fn is_keyword(&self, k: &str) -> bool {
        self.is(TokenKind::Keyword, k)
    }
}

/// Splits `text` into tokens, skipping whitespace and `#` comments.
pub fn tokenize(text: &str) -> DslResult<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, c)) = chars.peek() {
        let span = Span::new(line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        let mut take_while = |pred: &dyn Fn(char) -> bool, chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !pred(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
                col += 1;
            }
            end
        };
        let (kind, end) = if c.is_ascii_alphabetic() || c == '_' {
            let end = take_while(&|c| c.is_ascii_alphanumeric() || c == '_', &mut chars);
            let word = &text[start..end];
            (if KEYWORDS.contains(&word) { TokenKind::Keyword } else { TokenKind::Ident }, end)
        } else if c.is_ascii_digit() {
            (TokenKind::Integer, take_while(&|c| c.is_ascii_digit(), &mut chars))
        } else if c == '"' {
            chars.next();
            col += 1;
            let mut end = None;
            for (i, c) in chars.by_ref() {
                if c == '\n' {
                    break;
                }
                col += 1;
                if c == '"' {
                    end = Some(i + 1);
                    break;
                }
            }
            let end = end.ok_or_else(|| DslError::Lex { span, message: "unterminated string".into() })?;
            (TokenKind::String, end)
        } else if PUNCT2.iter().any(|p| text[start..].starts_with(p)) {
            chars.next();
            chars.next();
            col += 2;
            (TokenKind::Punct, start + 2)
        } else if PUNCT1.contains(c) {
            chars.next();
            col += 1;
            (TokenKind::Punct, start + 1)
        } else {
            return Err(DslError::Lex { span, message: format!("unexpected character `{c}`") });
        };
        let lexeme = match kind {
            TokenKind::String => text[start + 1..end - 1].to_string(),
            _ => text[start..end].to_string(),
        };
        out.push(Token { kind, lexeme, span, range: (start, end) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(text: &str) -> Vec<(TokenKind, String)> {
        tokenize(text).unwrap().into_iter().map(|t| (t.kind, t.lexeme)).collect()
    }

    #[test]
    fn let_with_fraction() {
        use TokenKind::*;
        let want = [(Keyword, "let"), (Ident, "a"), (Punct, "="), (Integer, "1"), (Punct, "/"), (Integer, "2")];
        assert_eq!(shape("let a = 1/2"), want.map(|(k, l)| (k, l.to_string())).to_vec());
    }

    #[test]
    fn curve_declaration_token_count() {
        // keyword, name, `=`, then x ^ 4 + y ^ 4 + z ^ 4
        assert_eq!(tokenize("curve F = x^4+y^4+z^4").unwrap().len(), 14);
    }

    #[test]
    fn bad_character_reports_column() {
        let err = tokenize("let b = @").unwrap_err();
        assert_eq!(err, DslError::Lex { span: Span::new(1, 9), message: "unexpected character `@`".into() });
    }

    #[test]
    fn comments_strings_and_spans() {
        let toks = tokenize("# header\nprint \"hi\"  # trailing\n  assert a != b").unwrap();
        assert_eq!(toks.len(), 6);
        assert_eq!(toks[0].span, Span::new(2, 1));
        assert_eq!(toks[1].kind, TokenKind::String);
        assert_eq!(toks[1].lexeme, "hi");
        assert_eq!(toks[2].span, Span::new(3, 3));
        assert!(toks[4].is_punct("!="));
        assert!(tokenize("print \"open").is_err());
    }
}
