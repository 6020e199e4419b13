//! Evaluation of terms as order-preserving permutations of `(G, <_P)`.

use std::cmp::Ordering;
use std::fmt;

use super::{normalize, JoinMeetForm, LGroupError, LTerm};
use crate::group::Word;
use crate::orderings::{LoSpace, PositiveCone};

/// `max_i min_j g_ij h` with the indices that realize it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub point: Word,
    pub output: Word,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for EvalResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} [row {}, col {}]",
            self.point, self.output, self.row, self.col
        )
    }
}

/// Evaluates a normal form at `h`. Ties keep the first index.
pub fn eval_form(cone: &PositiveCone, form: &JoinMeetForm, h: &Word) -> Result<EvalResult, LGroupError> {
    let mut best: Option<(usize, usize, Word)> = None;
    for (i, row) in form.rows().iter().enumerate() {
        let mut low: Option<(usize, Word)> = None;
        for (j, g) in row.iter().enumerate() {
            let x = g.mul(h)?;
            low = match low {
                Some((lj, l)) if cone.compare(&l, &x)? != Ordering::Greater => Some((lj, l)),
                _ => Some((j, x)),
            };
        }
        let (j, x) = low.expect("rows are nonempty");
        best = match best {
            Some((bi, bj, b)) if cone.compare(&b, &x)? != Ordering::Less => Some((bi, bj, b)),
            _ => Some((i, j, x)),
        };
    }
    let (row, col, output) = best.expect("forms are nonempty");
    Ok(EvalResult {
        point: h.clone(),
        output,
        row,
        col,
    })
}

/// Evaluates a term directly, without normalizing.
pub fn eval_term(cone: &PositiveCone, t: &LTerm, h: &Word) -> Result<Word, LGroupError> {
    Ok(match t {
        LTerm::Elem(g) => g.mul(h)?,
        LTerm::Mul(a, b) => eval_term(cone, a, &eval_term(cone, b, h)?)?,
        LTerm::Inv(a) => eval_term(cone, &a.inverse(), h)?,
        LTerm::Join(a, b) => {
            let x = eval_term(cone, a, h)?;
            let y = eval_term(cone, b, h)?;
            cone.max(&x, &y)?.clone()
        }
        LTerm::Meet(a, b) => {
            let x = eval_term(cone, a, h)?;
            let y = eval_term(cone, b, h)?;
            cone.min(&x, &y)?.clone()
        }
    })
}

/// One-sided kernel test on a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelVerdict {
    /// `t` moves `h`, so it is not in the kernel.
    ProofNontrivial { h: Word, image: Word },
    /// Every point of `ball(radius)` is fixed. Evidence only.
    TrivialUpTo { radius: usize },
}

impl KernelVerdict {
    pub fn is_trivial_up_to(&self) -> bool {
        matches!(self, KernelVerdict::TrivialUpTo { .. })
    }
}

impl fmt::Display for KernelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelVerdict::ProofNontrivial { h, image } => {
                write!(f, "proof-nontrivial(h={h}, image={image})")
            }
            KernelVerdict::TrivialUpTo { radius } => write!(f, "trivial-up-to({radius})"),
        }
    }
}

/// Checks `t(h) = h` for every `h` in `ball(radius)`, stopping at the
/// first moved point.
pub fn acts_trivially_on_ball(
    cone: &PositiveCone,
    t: &LTerm,
    radius: usize,
    cap: usize,
    row_cap: usize,
) -> Result<KernelVerdict, LGroupError> {
    let form = normalize(t, row_cap)?;
    let ball = cone.group().enumerate_ball(radius, cap)?;
    for h in ball.iter() {
        let r = eval_form(cone, &form, h)?;
        if r.output != *h {
            return Ok(KernelVerdict::ProofNontrivial {
                h: h.clone(),
                image: r.output,
            });
        }
    }
    Ok(KernelVerdict::TrivialUpTo { radius })
}

/// A cone and a point moved by the term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub cone: usize,
    pub h: Word,
    pub image: Word,
}

/// Searches `cones` in order for one under which `t` moves a point of
/// `ball(radius)`. `None` is inconclusive.
pub fn nontriviality_witness(
    t: &LTerm,
    cones: &[PositiveCone],
    radius: usize,
    cap: usize,
    row_cap: usize,
) -> Result<Option<Witness>, LGroupError> {
    for (k, cone) in cones.iter().enumerate() {
        if let KernelVerdict::ProofNontrivial { h, image } =
            acts_trivially_on_ball(cone, t, radius, cap, row_cap)?
        {
            return Ok(Some(Witness { cone: k, h, image }));
        }
    }
    Ok(None)
}

/// Outcome of evaluating a term at `1` under every ordering of a finite
/// ordering space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicVerdict {
    /// Indices of cones with `t(1) > 1`.
    pub above: Vec<usize>,
    /// Indices of cones with `t(1) < 1`.
    pub below: Vec<usize>,
    pub total: usize,
}

impl BasicVerdict {
    /// `t(1) >= 1` everywhere with strict inequality for exactly one cone.
    pub fn is_basic(&self) -> bool {
        self.above.len() == 1 && self.below.is_empty()
    }

    pub fn unique_cone(&self) -> Option<usize> {
        self.is_basic().then(|| self.above[0])
    }
}

/// Evaluates `t` at `1` under every cone of a complete list of orderings.
pub fn basic_element_check(
    t: &LTerm,
    space: &LoSpace,
    row_cap: usize,
) -> Result<BasicVerdict, LGroupError> {
    if !space.is_complete() {
        return Err(LGroupError::Incomplete);
    }
    let form = normalize(t, row_cap)?;
    let one = space.group().identity();
    let mut verdict = BasicVerdict {
        above: Vec::new(),
        below: Vec::new(),
        total: space.len(),
    };
    for (k, cone) in space.cones().iter().enumerate() {
        let r = eval_form(cone, &form, &one)?;
        match cone.compare(&r.output, &one)? {
            Ordering::Greater => verdict.above.push(k),
            Ordering::Less => verdict.below.push(k),
            Ordering::Equal => {}
        }
    }
    Ok(verdict)
}
