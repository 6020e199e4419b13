//! Positive cones of the built-in groups.
//!
//! A [`PositiveCone`] is a sign oracle: it assigns `+` or `-` to every
//! nonidentity element. Full cones (Tararin, Dehornoy, Magnus, lexicographic)
//! are exact on the whole group; finite cones only know the elements of
//! their ball and refuse queries outside it.

mod enumerate;
mod magnus;
mod predicates;

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::group::{self, Ball, Group, GroupError, Word};

pub use enumerate::{
    count_finite_cones, enumerate_finite_cones, ConeCount, ConeSearch, FiniteConeAssignment,
};
pub use magnus::{MagnusOrder, DEFAULT_MAGNUS_DEGREE};
pub use predicates::{
    is_cofinal_on_ball, is_conradian_on_ball, CofinalEntry, CofinalReport, ConradianReport,
    ConradianViolation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("sign of the identity queried")]
    IdentityQueried,
    #[error("{element} lies outside the domain of the finite cone")]
    OutsideDomain { element: String },
    #[error("Magnus expansion of {element} vanishes up to degree {degree}; raise deg")]
    PrecisionExhausted { element: String, degree: usize },
    #[error("Magnus coefficient overflow")]
    MagnusOverflow,
    #[error("invalid cone spec {spec:?}: {reason}")]
    BadConeSpec { spec: String, reason: String },
    #[error("cone {cone} does not apply to {group}")]
    Incompatible { cone: String, group: Group },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("more than {cap} consistent assignments")]
    CapExceeded { cap: usize },
    #[error("constraint {element} is not a nonidentity element of the ball of radius {radius}")]
    BadConstraint { element: String, radius: usize },
    #[error("no complete enumeration of LO({0}) is available")]
    NotComplete(Group),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s.trim() {
            "+" | "+1" | "1" => Some(Sign::Pos),
            "-" | "-1" => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// Signs `ε_i` of the Tararin generators, `+` when `x_i` is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSequence(pub Vec<Sign>);

impl SignSequence {
    pub fn parse(text: &str) -> Option<SignSequence> {
        text.split(',')
            .map(Sign::parse)
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
            .map(SignSequence)
    }

    pub fn all_positive(n: usize) -> SignSequence {
        SignSequence(vec![Sign::Pos; n])
    }

    /// All `2^n` sequences, `+` before `-`, first entry most significant.
    pub fn all(n: usize) -> Vec<SignSequence> {
        (0..1usize << n)
            .map(|mask| {
                SignSequence(
                    (0..n)
                        .map(|i| {
                            if mask >> (n - 1 - i) & 1 == 1 {
                                Sign::Neg
                            } else {
                                Sign::Pos
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Copy with entry `i` (0-based) negated.
    pub fn flipped(&self, i: usize) -> SignSequence {
        let mut v = self.0.clone();
        v[i] = -v[i];
        SignSequence(v)
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum ConeKind {
    /// `P_ε`: the sign of `x_n^{a_n} .. x_1^{a_1}` is `ε_k sign(a_k)` for the
    /// highest `k` with `a_k != 0`.
    Tararin(SignSequence),
    /// Dehornoy ordering: `s_1 > 1`, sign of the lowest generator of a
    /// handle-reduced word.
    Dehornoy,
    /// Magnus ordering of a free group.
    Magnus(MagnusOrder),
    /// Lexicographic ordering of `Z^n`: coordinates compared in `perm`
    /// order, coordinate `perm[k]` weighted by `signs[k]`.
    Lex { perm: Vec<u32>, signs: Vec<Sign> },
    Finite {
        assignment: Arc<FiniteConeAssignment>,
        source: Option<String>,
    },
    Reverse(Box<PositiveCone>),
    /// `f P f^-1`.
    Conjugate { by: Word, inner: Box<PositiveCone> },
}

#[derive(Debug, Clone)]
pub struct PositiveCone {
    group: Group,
    kind: ConeKind,
}

impl PositiveCone {
    pub fn tararin(group: Group, eps: SignSequence) -> Result<PositiveCone, OrderError> {
        match group {
            Group::Tararin { n } if n as usize == eps.len() => Ok(PositiveCone {
                group,
                kind: ConeKind::Tararin(eps),
            }),
            _ => Err(OrderError::Incompatible {
                cone: format!("tararin:{eps}"),
                group,
            }),
        }
    }

    pub fn dehornoy(group: Group) -> Result<PositiveCone, OrderError> {
        match group {
            Group::Braid { .. } => Ok(PositiveCone {
                group,
                kind: ConeKind::Dehornoy,
            }),
            _ => Err(OrderError::Incompatible {
                cone: "dehornoy".into(),
                group,
            }),
        }
    }

    pub fn magnus(group: Group, order: MagnusOrder) -> Result<PositiveCone, OrderError> {
        match group {
            Group::Free { rank } if order.rank() == rank as usize => Ok(PositiveCone {
                group,
                kind: ConeKind::Magnus(order),
            }),
            _ => Err(OrderError::Incompatible {
                cone: "magnus".into(),
                group,
            }),
        }
    }

    pub fn lex(group: Group, perm: Vec<u32>, signs: Vec<Sign>) -> Result<PositiveCone, OrderError> {
        let Group::Zn { rank } = group else {
            return Err(OrderError::Incompatible {
                cone: "lex".into(),
                group,
            });
        };
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..rank).collect::<Vec<_>>() || signs.len() != perm.len() {
            return Err(OrderError::BadConeSpec {
                spec: "lex".into(),
                reason: format!("perm and signs must cover all {rank} coordinates"),
            });
        }
        Ok(PositiveCone {
            group,
            kind: ConeKind::Lex { perm, signs },
        })
    }

    pub fn finite(assignment: FiniteConeAssignment, source: Option<String>) -> PositiveCone {
        PositiveCone {
            group: assignment.group(),
            kind: ConeKind::Finite {
                assignment: Arc::new(assignment),
                source,
            },
        }
    }

    /// `P^-1`.
    pub fn reverse(&self) -> PositiveCone {
        PositiveCone {
            group: self.group,
            kind: ConeKind::Reverse(Box::new(self.clone())),
        }
    }

    /// `f P f^-1`, whose sign at `g` is the sign of `f^-1 g f` under `P`.
    pub fn conjugate(&self, f: &Word) -> Result<PositiveCone, OrderError> {
        if f.group() != self.group {
            return Err(GroupError::Mismatch {
                left: self.group,
                right: f.group(),
            }
            .into());
        }
        Ok(PositiveCone {
            group: self.group,
            kind: ConeKind::Conjugate {
                by: f.clone(),
                inner: Box::new(self.clone()),
            },
        })
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn kind(&self) -> &ConeKind {
        &self.kind
    }

    /// True when the cone is exact on the whole group (no finite component).
    pub fn is_full(&self) -> bool {
        match &self.kind {
            ConeKind::Finite { .. } => false,
            ConeKind::Reverse(p) | ConeKind::Conjugate { inner: p, .. } => p.is_full(),
            _ => true,
        }
    }

    /// Parses a cone spec: `tararin:+,-,+`, `dehornoy`, `magnus:order=a<b;deg=8`,
    /// `lex:perm=2,1;signs=+,-`, `finite:@file`, `rev(..)`, `conj(f, ..)`.
    pub fn parse(group: Group, spec: &str) -> Result<PositiveCone, OrderError> {
        let spec = spec.trim();
        let bad = |reason: &str| OrderError::BadConeSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        if let Some(inner) = strip_call(spec, "rev") {
            return Ok(PositiveCone::parse(group, inner)?.reverse());
        }
        if let Some(inner) = strip_call(spec, "conj") {
            let (f, rest) = inner.split_once(',').ok_or_else(|| bad("expected conj(f, cone)"))?;
            let f = group.parse_word(f.trim())?;
            return PositiveCone::parse(group, rest)?.conjugate(&f);
        }
        let (head, params) = spec.split_once(':').unwrap_or((spec, ""));
        match head {
            "tararin" => {
                let eps = if params.is_empty() {
                    SignSequence::all_positive(group.generator_count() as usize)
                } else {
                    SignSequence::parse(params).ok_or_else(|| bad("expected signs like +,-,+"))?
                };
                PositiveCone::tararin(group, eps)
            }
            "dehornoy" if params.is_empty() => PositiveCone::dehornoy(group),
            "magnus" => {
                let order = MagnusOrder::parse(group, params).map_err(|r| bad(&r))?;
                PositiveCone::magnus(group, order)
            }
            "lex" => {
                let rank = group.generator_count();
                let mut perm: Vec<u32> = (0..rank).collect();
                let mut signs = vec![Sign::Pos; rank as usize];
                for part in params.split(';').filter(|p| !p.trim().is_empty()) {
                    let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                    match k.trim() {
                        "perm" => {
                            perm = v
                                .split(',')
                                .map(|x| x.trim().parse::<u32>().ok().filter(|&i| i >= 1).map(|i| i - 1))
                                .collect::<Option<_>>()
                                .ok_or_else(|| bad("perm must list 1-based coordinates"))?
                        }
                        "signs" => {
                            signs = SignSequence::parse(v).ok_or_else(|| bad("bad signs"))?.0;
                        }
                        other => return Err(bad(&format!("unknown lex parameter {other:?}"))),
                    }
                }
                PositiveCone::lex(group, perm, signs)
            }
            "finite" => {
                let path = params
                    .strip_prefix('@')
                    .ok_or_else(|| bad("expected finite:@path"))?;
                let assignment = FiniteConeAssignment::load(group, Path::new(path))?;
                Ok(PositiveCone::finite(assignment, Some(path.to_string())))
            }
            _ => Err(bad("unknown cone kind")),
        }
    }

    pub fn sign(&self, g: &Word) -> Result<Sign, OrderError> {
        if g.group() != self.group {
            return Err(GroupError::Mismatch {
                left: self.group,
                right: g.group(),
            }
            .into());
        }
        if g.is_identity() {
            return Err(OrderError::IdentityQueried);
        }
        self.sign_nonidentity(g)
    }

    fn sign_nonidentity(&self, g: &Word) -> Result<Sign, OrderError> {
        let s = match &self.kind {
            ConeKind::Tararin(eps) => {
                // descending normal form: the first syllable is the leading one
                let lead = g.syllables()[0];
                eps.0[lead.gen as usize] * sign_of(lead.exp)
            }
            ConeKind::Dehornoy => Sign::from_i8(group::dehornoy_sign(g.syllables()))
                .expect("nonidentity braid words are nonempty"),
            ConeKind::Magnus(order) => magnus::sign(g, order)?,
            ConeKind::Lex { perm, signs } => {
                let mut out = None;
                for (&c, &s) in perm.iter().zip(signs) {
                    if let Some(syl) = g.syllables().iter().find(|x| x.gen == c) {
                        out = Some(s * sign_of(syl.exp));
                        break;
                    }
                }
                out.expect("nonidentity vectors have a nonzero coordinate")
            }
            ConeKind::Finite { assignment, .. } => assignment.sign_of(g)?,
            ConeKind::Reverse(p) => -p.sign_nonidentity(g)?,
            ConeKind::Conjugate { by, inner } => inner.sign_nonidentity(&g.conjugate_by(by)?)?,
        };
        Ok(s)
    }

    /// `g < h` iff `g^-1 h` is positive.
    pub fn compare(&self, g: &Word, h: &Word) -> Result<Ordering, OrderError> {
        let d = g.inverse().mul(h)?;
        if d.is_identity() {
            return Ok(Ordering::Equal);
        }
        Ok(match self.sign_nonidentity(&d)? {
            Sign::Pos => Ordering::Less,
            Sign::Neg => Ordering::Greater,
        })
    }

    pub fn is_positive(&self, g: &Word) -> Result<bool, OrderError> {
        Ok(!g.is_identity() && self.sign(g)? == Sign::Pos)
    }

    /// Signs on every element of `ball` (`0` at the identity).
    pub fn restrict(&self, ball: &Ball) -> Result<Vec<i8>, OrderError> {
        ball.iter()
            .map(|w| {
                if w.is_identity() {
                    Ok(0)
                } else {
                    self.sign_nonidentity(w).map(Sign::as_i8)
                }
            })
            .collect()
    }

    pub fn max<'a>(&self, a: &'a Word, b: &'a Word) -> Result<&'a Word, OrderError> {
        Ok(if self.compare(a, b)? == Ordering::Less { b } else { a })
    }

    pub fn min<'a>(&self, a: &'a Word, b: &'a Word) -> Result<&'a Word, OrderError> {
        Ok(if self.compare(a, b)? == Ordering::Greater { b } else { a })
    }
}

fn sign_of(e: i64) -> Sign {
    if e > 0 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

fn strip_call<'a>(spec: &'a str, name: &str) -> Option<&'a str> {
    spec.strip_prefix(name)?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')
}

impl fmt::Display for PositiveCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ConeKind::Tararin(eps) => write!(f, "tararin:{eps}"),
            ConeKind::Dehornoy => f.write_str("dehornoy"),
            ConeKind::Magnus(order) => write!(f, "magnus:{}", order.spec(self.group)),
            ConeKind::Lex { perm, signs } => {
                let perm: Vec<String> = perm.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "lex:perm={};signs={}", perm.join(","), SignSequence(signs.clone()))
            }
            ConeKind::Finite { source, .. } => match source {
                Some(path) => write!(f, "finite:@{path}"),
                None => f.write_str("finite:<memory>"),
            },
            ConeKind::Reverse(p) => write!(f, "rev({p})"),
            ConeKind::Conjugate { by, inner } => write!(f, "conj({by}, {inner})"),
        }
    }
}

/// An explicitly enumerated set of cones of one group.
///
/// `complete` is only set by [`LoSpace::complete`], for groups whose space of
/// left orderings is finite and known in closed form.
#[derive(Debug, Clone)]
pub struct LoSpace {
    group: Group,
    cones: Vec<PositiveCone>,
    complete: bool,
}

impl LoSpace {
    /// Every left ordering of `group`: the `2^n` cones `P_ε` of `T_n`, or the
    /// two orderings of an infinite cyclic presentation.
    pub fn complete(group: Group) -> Result<LoSpace, OrderError> {
        let cones = match group {
            Group::Tararin { n } => SignSequence::all(n as usize)
                .into_iter()
                .map(|eps| PositiveCone::tararin(group, eps))
                .collect::<Result<Vec<_>, _>>()?,
            _ if group.is_infinite_cyclic() => {
                let base = match group {
                    Group::Zn { .. } => PositiveCone::lex(group, vec![0], vec![Sign::Pos])?,
                    Group::Free { .. } => PositiveCone::magnus(group, MagnusOrder::natural(1))?,
                    Group::Braid { .. } => PositiveCone::dehornoy(group)?,
                    Group::Tararin { .. } => unreachable!(),
                };
                let rev = base.reverse();
                vec![base, rev]
            }
            _ => return Err(OrderError::NotComplete(group)),
        };
        Ok(LoSpace {
            group,
            cones,
            complete: true,
        })
    }

    pub fn from_cones(group: Group, cones: Vec<PositiveCone>) -> LoSpace {
        LoSpace {
            group,
            cones,
            complete: false,
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn cones(&self) -> &[PositiveCone] {
        &self.cones
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub(crate) fn require_complete(&self) -> Result<(), OrderError> {
        if self.complete {
            Ok(())
        } else {
            Err(OrderError::NotComplete(self.group))
        }
    }
}
