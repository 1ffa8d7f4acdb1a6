//! Textual set expressions over frame labels.
//!
//! ```text
//! expr   := term (('|' | '∪') term)*
//! term   := factor (('&' | '∩') factor)*
//! factor := LABEL | '(' expr ')' | '{}'
//! ```
//!
//! Intersection binds tighter than union; whitespace is ignored. Positions
//! in errors are character offsets into the input.

use std::fmt;

use thiserror::Error;

use crate::lattice::{Element, Frame};

/// Characters that end a label.
pub const RESERVED: &[char] = &['|', '&', '∪', '∩', '(', ')', '{', '}', ','];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    EmptyInput,
    #[error("unknown label `{label}` at position {position}")]
    UnknownLabel { label: String, position: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Label(String),
    Union,
    Inter,
    Open,
    Close,
    Empty,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Label(l) => write!(f, "label `{l}`"),
            Token::Union => f.write_str("`|`"),
            Token::Inter => f.write_str("`&`"),
            Token::Open => f.write_str("`(`"),
            Token::Close => f.write_str("`)`"),
            Token::Empty => f.write_str("`{}`"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        i += 1;
        let token = match c {
            c if c.is_whitespace() => continue,
            '|' | '∪' => Token::Union,
            '&' | '∩' => Token::Inter,
            '(' => Token::Open,
            ')' => Token::Close,
            '{' => {
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                if chars.get(i) != Some(&'}') {
                    return Err(ParseError::Syntax { position: i, message: "expected `}`".into() });
                }
                i += 1;
                Token::Empty
            }
            '}' | ',' => {
                return Err(ParseError::Syntax { position: start, message: format!("unexpected `{c}`") });
            }
            _ => {
                while i < chars.len() && !chars[i].is_whitespace() && !RESERVED.contains(&chars[i]) {
                    i += 1;
                }
                Token::Label(chars[start..i].iter().collect())
            }
        };
        tokens.push((start, token));
    }
    Ok(tokens)
}

struct Parser<'a> {
    frame: &'a Frame,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Token::Union) {
            self.pos += 1;
            acc = acc.join_raw(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Inter) {
            self.pos += 1;
            acc = acc.meet_raw(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        let position = self.position();
        let Some((_, token)) = self.tokens.get(self.pos).cloned() else {
            return Err(ParseError::Syntax { position, message: "unexpected end of input".into() });
        };
        self.pos += 1;
        match token {
            Token::Label(label) => match self.frame.index_of(&label) {
                Some(i) => Ok(self.frame.singleton(i).expect("index comes from the frame")),
                None => Err(ParseError::UnknownLabel { label, position }),
            },
            Token::Empty => Ok(self.frame.empty_element()),
            Token::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(ParseError::Syntax { position: self.position(), message: "expected `)`".into() });
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(ParseError::Syntax { position, message: format!("unexpected {other}") }),
        }
    }
}

/// Parses `text` into a canonical element of `frame`.
pub fn parse(frame: &Frame, text: &str) -> Result<Element, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let mut parser = Parser { frame, tokens, pos: 0, end: text.chars().count() };
    let x = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        let (position, token) = &parser.tokens[parser.pos];
        return Err(ParseError::Syntax { position: *position, message: format!("unexpected {token}") });
    }
    Ok(x)
}

/// Operator spelling used by [`format`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Glyphs {
    #[default]
    Ascii,
    Unicode,
}

impl Glyphs {
    fn union(self) -> &'static str {
        match self {
            Glyphs::Ascii => "|",
            Glyphs::Unicode => "∪",
        }
    }

    fn inter(self) -> &'static str {
        match self {
            Glyphs::Ascii => "&",
            Glyphs::Unicode => "∩",
        }
    }
}

/// Minimal text for `x`: terms in lexicographic index order, parentheses
/// only around multi-label terms of a union, `{}` for the empty element.
pub fn format(frame: &Frame, x: &Element, glyphs: Glyphs) -> String {
    if x.is_bottom() {
        return "{}".to_string();
    }
    let mut terms = x.terms();
    terms.sort();
    let wrap = terms.len() > 1;
    terms
        .iter()
        .map(|term| {
            let body = term
                .iter()
                .map(|&i| frame.label(i).expect("element matches frame"))
                .collect::<Vec<_>>()
                .join(glyphs.inter());
            if wrap && term.len() > 1 {
                format!("({body})")
            } else {
                body
            }
        })
        .collect::<Vec<_>>()
        .join(glyphs.union())
}
