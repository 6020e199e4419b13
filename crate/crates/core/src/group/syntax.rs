//! Tokens shared by the word and term grammars.
//!
//! ```text
//! word   := factor ('*' factor)*
//! factor := atom ('^' '-'? INT)?
//! atom   := IDENT | '1' | '(' word ')'
//! ```

use super::{Group, GroupError, Syllable, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    Meet,
    Join,
    End,
}

impl Token {
    pub(crate) fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::Int(k) => format!("integer {k}"),
            Token::Star => "'*'".into(),
            Token::Caret => "'^'".into(),
            Token::Minus => "'-'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Meet => "'/\\'".into(),
            Token::Join => "'\\/'".into(),
            Token::End => "end of input".into(),
        }
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, GroupError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'-' => Token::Minus,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                i += 1;
                Token::Meet
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                i += 1;
                Token::Join
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let k = text[start..=i].parse().map_err(|_| GroupError::Syntax {
                    pos: start,
                    msg: "integer too large".into(),
                })?;
                Token::Int(k)
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Token::Ident(text[start..=i].to_string())
            }
            _ => {
                return Err(GroupError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {:?}", text[start..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Cursor {
    tokens: Vec<(usize, Token)>,
    at: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Cursor, GroupError> {
        Ok(Cursor {
            tokens: tokenize(text)?,
            at: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.at].1
    }

    pub(crate) fn pos(&self) -> usize {
        self.tokens[self.at].0
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].1.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> GroupError {
        GroupError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    pub(crate) fn expect(&mut self, want: Token) -> Result<(), GroupError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    /// Parses the signed integer after a `^`.
    pub(crate) fn exponent(&mut self) -> Result<i64, GroupError> {
        let neg = if *self.peek() == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Token::Int(k) => Ok(if neg { -k } else { k }),
            other => Err(self.error(format!("expected exponent, found {}", other.describe()))),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), GroupError> {
        match self.peek() {
            Token::End => Ok(()),
            t => Err(self.error(format!("unexpected {}", t.describe()))),
        }
    }
}

pub(crate) fn parse_word(group: Group, text: &str) -> Result<Word, GroupError> {
    let mut cur = Cursor::new(text)?;
    let w = word(group, &mut cur)?;
    cur.finish()?;
    Ok(w)
}

fn word(group: Group, cur: &mut Cursor) -> Result<Word, GroupError> {
    let mut acc = factor(group, cur)?;
    while *cur.peek() == Token::Star {
        cur.bump();
        acc = acc.mul_unchecked(&factor(group, cur)?);
    }
    Ok(acc)
}

fn factor(group: Group, cur: &mut Cursor) -> Result<Word, GroupError> {
    let base = atom(group, cur)?;
    if *cur.peek() == Token::Caret {
        cur.bump();
        let k = cur.exponent()?;
        return Ok(base.pow(k));
    }
    Ok(base)
}

pub(crate) fn generator_word(group: Group, name: &str) -> Result<Word, GroupError> {
    let gen = group.resolve_generator(name)?;
    group.normal_form(&[Syllable::new(gen, 1)])
}

fn atom(group: Group, cur: &mut Cursor) -> Result<Word, GroupError> {
    let pos = cur.pos();
    match cur.bump() {
        Token::Ident(name) => generator_word(group, &name),
        Token::Int(1) => Ok(group.identity()),
        Token::LParen => {
            let w = word(group, cur)?;
            cur.expect(Token::RParen)?;
            Ok(w)
        }
        other => Err(GroupError::Syntax {
            pos,
            msg: format!("expected generator, '1' or '(', found {}", other.describe()),
        }),
    }
}
