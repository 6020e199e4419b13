//! Terms of the free lattice-ordered group over a group and their action
//! on the group under a left ordering.
//!
//! Grammar (whitespace is insignificant, binary operators associate left):
//!
//! ```text
//! join  := meet ('\/' meet)*
//! meet  := prod ('/\' prod)*
//! prod  := power ('*' power)*
//! power := atom ('^' '-'? INT)?
//! atom  := IDENT | '1' | '(' join ')'
//! ```

mod eval;
mod normal;

use std::fmt;

use crate::group::syntax::{generator_word, Cursor, Token};
use crate::group::{Group, GroupError, Word};
use crate::orderings::OrderError;

pub use eval::{
    acts_trivially_on_ball, basic_element_check, eval_form, eval_term, nontriviality_witness,
    BasicVerdict, EvalResult, KernelVerdict, Witness,
};
pub use normal::{normalize, JoinMeetForm, DEFAULT_ROW_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LGroupError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("normal form exceeds {cap} rows")]
    RowCap { cap: usize },
    #[error("basic-element check needs a complete list of orderings")]
    Incomplete,
}

impl From<GroupError> for LGroupError {
    fn from(e: GroupError) -> Self {
        LGroupError::Order(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LTerm {
    Elem(Word),
    Mul(Box<LTerm>, Box<LTerm>),
    Inv(Box<LTerm>),
    Join(Box<LTerm>, Box<LTerm>),
    Meet(Box<LTerm>, Box<LTerm>),
}

impl LTerm {
    pub fn elem(w: Word) -> LTerm {
        LTerm::Elem(w)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: LTerm, b: LTerm) -> LTerm {
        LTerm::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn inv(a: LTerm) -> LTerm {
        LTerm::Inv(Box::new(a))
    }

    pub fn join(a: LTerm, b: LTerm) -> LTerm {
        LTerm::Join(Box::new(a), Box::new(b))
    }

    pub fn meet(a: LTerm, b: LTerm) -> LTerm {
        LTerm::Meet(Box::new(a), Box::new(b))
    }

    pub fn parse(group: Group, text: &str) -> Result<LTerm, GroupError> {
        let mut cur = Cursor::new(text)?;
        let t = join(group, &mut cur)?;
        cur.finish()?;
        Ok(t)
    }

    /// Group of the leftmost leaf.
    pub fn group(&self) -> Group {
        match self {
            LTerm::Elem(w) => w.group(),
            LTerm::Mul(a, _) | LTerm::Join(a, _) | LTerm::Meet(a, _) | LTerm::Inv(a) => a.group(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            LTerm::Elem(_) => 0,
            LTerm::Inv(a) => 1 + a.depth(),
            LTerm::Mul(a, b) | LTerm::Join(a, b) | LTerm::Meet(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Pushes inverses down to the leaves:
    /// `(xy)^-1 = y^-1 x^-1`, `(x \/ y)^-1 = x^-1 /\ y^-1` and dually.
    pub fn inverse(&self) -> LTerm {
        match self {
            LTerm::Elem(w) => LTerm::Elem(w.inverse()),
            LTerm::Inv(a) => (**a).clone(),
            LTerm::Mul(a, b) => LTerm::mul(b.inverse(), a.inverse()),
            LTerm::Join(a, b) => LTerm::meet(a.inverse(), b.inverse()),
            LTerm::Meet(a, b) => LTerm::join(a.inverse(), b.inverse()),
        }
    }

    fn level(&self) -> u8 {
        match self {
            LTerm::Join(..) => 1,
            LTerm::Meet(..) => 2,
            LTerm::Mul(..) => 3,
            LTerm::Elem(w) if w.syllables().len() > 1 => 3,
            LTerm::Elem(_) | LTerm::Inv(_) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            LTerm::Elem(w) => write!(f, "{w}"),
            LTerm::Inv(a) => {
                f.write_str("(")?;
                a.write_at(f, 0)?;
                f.write_str(")^-1")
            }
            LTerm::Mul(a, b) => {
                a.write_at(f, 3)?;
                f.write_str("*")?;
                // a multi-syllable leaf on the right would re-parse as a longer chain
                b.write_at(f, 4)
            }
            LTerm::Meet(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" /\\ ")?;
                b.write_at(f, 3)
            }
            LTerm::Join(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(" \\/ ")?;
                b.write_at(f, 2)
            }
        }
    }
}

impl fmt::Display for LTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

fn join(group: Group, cur: &mut Cursor) -> Result<LTerm, GroupError> {
    let mut acc = meet(group, cur)?;
    while *cur.peek() == Token::Join {
        cur.bump();
        acc = LTerm::join(acc, meet(group, cur)?);
    }
    Ok(acc)
}

fn meet(group: Group, cur: &mut Cursor) -> Result<LTerm, GroupError> {
    let mut acc = prod(group, cur)?;
    while *cur.peek() == Token::Meet {
        cur.bump();
        acc = LTerm::meet(acc, prod(group, cur)?);
    }
    Ok(acc)
}

fn prod(group: Group, cur: &mut Cursor) -> Result<LTerm, GroupError> {
    let mut acc = power(group, cur)?;
    while *cur.peek() == Token::Star {
        cur.bump();
        let next = power(group, cur)?;
        acc = match (acc, next) {
            (LTerm::Elem(a), LTerm::Elem(b)) => LTerm::Elem(a.mul_unchecked(&b)),
            (a, b) => LTerm::mul(a, b),
        };
    }
    Ok(acc)
}

fn power(group: Group, cur: &mut Cursor) -> Result<LTerm, GroupError> {
    let base = atom(group, cur)?;
    if *cur.peek() != Token::Caret {
        return Ok(base);
    }
    cur.bump();
    let k = cur.exponent()?;
    Ok(match base {
        LTerm::Elem(w) => LTerm::Elem(w.pow(k)),
        _ if k == 0 => LTerm::Elem(group.identity()),
        t => {
            let mut acc = t.clone();
            for _ in 1..k.unsigned_abs() {
                acc = LTerm::mul(acc, t.clone());
            }
            if k < 0 {
                LTerm::inv(acc)
            } else {
                acc
            }
        }
    })
}

fn atom(group: Group, cur: &mut Cursor) -> Result<LTerm, GroupError> {
    match cur.peek().clone() {
        Token::Ident(name) => {
            cur.bump();
            Ok(LTerm::Elem(generator_word(group, &name)?))
        }
        Token::Int(1) => {
            cur.bump();
            Ok(LTerm::Elem(group.identity()))
        }
        Token::LParen => {
            cur.bump();
            let t = join(group, cur)?;
            cur.expect(Token::RParen)?;
            Ok(t)
        }
        other => Err(cur.error(format!(
            "expected generator, '1' or '(', found {}",
            other.describe()
        ))),
    }
}
