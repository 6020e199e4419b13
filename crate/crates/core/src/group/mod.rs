//! Built-in group families with solvable word problems.
//!
//! Four families are supported: free groups, free abelian groups `Z^n`,
//! the Tararin groups `T_n` and the braid groups `B_n`. Every [`Word`] is
//! kept in its family's normal form, so structural equality coincides with
//! equality in the group for all families except braids, whose words are
//! handle-reduced representatives compared semantically.

mod ball;
mod braid;
mod free;
pub(crate) mod syntax;
mod tararin;
mod zn;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

pub use ball::{Ball, DEFAULT_CAP};
pub(crate) use braid::dehornoy_sign;

/// Largest rank/index accepted in a group spec.
pub const MAX_RANK: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group spec {0:?} (expected free:rank=N, zn:rank=N, tararin:n=N or braid:n=N)")]
    BadSpec(String),
    #[error("generator index {index} out of range for {group}")]
    BadGenerator { group: Group, index: u32 },
    #[error("unknown generator {name:?} for {group}")]
    UnknownGenerator { group: Group, name: String },
    #[error("backend mismatch: {left} vs {right}")]
    Mismatch { left: Group, right: Group },
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("element cap of {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("{0} is not a braid group")]
    NotBraid(Group),
    #[error("exponent overflow")]
    Overflow,
}

/// A group family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    /// Free group on `rank` generators `a, b, c, ...`.
    Free { rank: u32 },
    /// Free abelian group `Z^rank`.
    Zn { rank: u32 },
    /// Tararin group `T_n = <x_1..x_n | x_{i+1} x_i x_{i+1}^-1 = x_i^-1, [x_i, x_j] = 1 for |i-j| > 1>`.
    Tararin { n: u32 },
    /// Braid group on `n` strands with Artin generators `s_1..s_{n-1}`.
    Braid { n: u32 },
}

/// One generator raised to a nonzero power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: u32,
    pub exp: i64,
}

impl Syllable {
    pub fn new(gen: u32, exp: i64) -> Self {
        Syllable { gen, exp }
    }
}

impl Group {
    pub fn parse(spec: &str) -> Result<Group, GroupError> {
        let bad = || GroupError::BadSpec(spec.to_string());
        let (family, param) = spec.trim().split_once(':').ok_or_else(bad)?;
        let (key, value) = param.trim().split_once('=').ok_or_else(bad)?;
        let value: u32 = value.trim().parse().map_err(|_| bad())?;
        let group = match (family.trim(), key.trim()) {
            ("free", "rank") => Group::Free { rank: value },
            ("zn", "rank") => Group::Zn { rank: value },
            ("tararin", "n") => Group::Tararin { n: value },
            ("braid", "n") => Group::Braid { n: value },
            _ => return Err(bad()),
        };
        let min = if matches!(group, Group::Braid { .. }) { 2 } else { 1 };
        if value < min || value > MAX_RANK {
            return Err(bad());
        }
        Ok(group)
    }

    pub fn family(&self) -> &'static str {
        match self {
            Group::Free { .. } => "free",
            Group::Zn { .. } => "zn",
            Group::Tararin { .. } => "tararin",
            Group::Braid { .. } => "braid",
        }
    }

    /// Number of generators (not counting inverses).
    pub fn generator_count(&self) -> u32 {
        match *self {
            Group::Free { rank } | Group::Zn { rank } => rank,
            Group::Tararin { n } => n,
            Group::Braid { n } => n - 1,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match *self {
            Group::Zn { .. } => true,
            Group::Free { rank } => rank == 1,
            Group::Tararin { n } => n == 1,
            Group::Braid { n } => n == 2,
        }
    }

    /// True for the rank-one presentations of the integers.
    pub fn is_infinite_cyclic(&self) -> bool {
        self.generator_count() == 1
    }

    pub fn generator_name(&self, index: u32) -> String {
        match self {
            Group::Free { rank } | Group::Zn { rank } if *rank <= 26 => {
                char::from(b'a' + index as u8).to_string()
            }
            Group::Free { .. } | Group::Zn { .. } | Group::Tararin { .. } => {
                format!("x{}", index + 1)
            }
            Group::Braid { .. } => format!("s{}", index + 1),
        }
    }

    /// Resolves a generator identifier (`b`, `x3`, `s2`, ...) to its index.
    pub fn resolve_generator(&self, name: &str) -> Result<u32, GroupError> {
        let unknown = || GroupError::UnknownGenerator {
            group: *self,
            name: name.to_string(),
        };
        let mut chars = name.chars();
        let head = chars.next().filter(char::is_ascii_lowercase).ok_or_else(unknown)?;
        let digits = chars.as_str();
        let index = if digits.is_empty() {
            head as u32 - 'a' as u32
        } else {
            let prefix_ok = match self {
                Group::Free { .. } | Group::Zn { .. } => head == 'x' || head == 'a',
                Group::Tararin { .. } => head == 'x',
                Group::Braid { .. } => head == 's',
            };
            let k: u32 = digits.parse().map_err(|_| unknown())?;
            if !prefix_ok || k == 0 {
                return Err(unknown());
            }
            k - 1
        };
        if index >= self.generator_count() {
            return Err(unknown());
        }
        Ok(index)
    }

    pub fn identity(&self) -> Word {
        Word {
            group: *self,
            syllables: Vec::new(),
        }
    }

    pub fn generator(&self, index: u32) -> Result<Word, GroupError> {
        self.normal_form(&[Syllable::new(index, 1)])
    }

    /// All generators and their inverses, in the order `g1, g1^-1, g2, g2^-1, ...`.
    pub fn letters(&self) -> Vec<Word> {
        (0..self.generator_count())
            .flat_map(|i| [Syllable::new(i, 1), Syllable::new(i, -1)])
            .map(|s| self.word_unchecked(self.reduce(&[s])))
            .collect()
    }

    /// Canonical form of a raw sequence of generator powers.
    pub fn normal_form(&self, raw: &[Syllable]) -> Result<Word, GroupError> {
        for s in raw {
            if s.gen >= self.generator_count() {
                return Err(GroupError::BadGenerator {
                    group: *self,
                    index: s.gen,
                });
            }
        }
        Ok(self.word_unchecked(self.reduce(raw)))
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word, GroupError> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.mul_unchecked(v))
    }

    pub fn invert(&self, u: &Word) -> Result<Word, GroupError> {
        self.check(u)?;
        Ok(u.inverse())
    }

    /// Parses word syntax such as `x2*x1^-1`, `a*(b*a)^2` or `1`.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        syntax::parse_word(*self, text)
    }

    /// Parses a comma-separated list of words.
    pub fn parse_word_list(&self, text: &str) -> Result<Vec<Word>, GroupError> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.parse_word(s))
            .collect()
    }

    /// All distinct elements of word length at most `radius`, identity first,
    /// then by length and discovery order.
    pub fn enumerate_ball(&self, radius: usize, cap: usize) -> Result<Ball, GroupError> {
        Ball::enumerate(*self, radius, cap)
    }

    /// The Garside half-twist
    /// `(s_{n-1} ... s_1)(s_{n-1} ... s_2) ... (s_{n-1} s_{n-2})(s_{n-1})`.
    pub fn garside_half_twist(&self) -> Result<Word, GroupError> {
        let Group::Braid { n } = *self else {
            return Err(GroupError::NotBraid(*self));
        };
        let mut raw = Vec::new();
        for low in 1..n {
            for i in (low..n).rev() {
                raw.push(Syllable::new(i - 1, 1));
            }
        }
        self.normal_form(&raw)
    }

    fn check(&self, w: &Word) -> Result<(), GroupError> {
        if w.group != *self {
            return Err(GroupError::Mismatch {
                left: *self,
                right: w.group,
            });
        }
        Ok(())
    }

    fn word_unchecked(&self, syllables: Vec<Syllable>) -> Word {
        Word {
            group: *self,
            syllables,
        }
    }

    fn reduce(&self, raw: &[Syllable]) -> Vec<Syllable> {
        match *self {
            Group::Free { .. } => free::reduce(raw.iter().copied()),
            Group::Zn { rank } => zn::from_vec(&zn::to_vec(raw, rank)),
            Group::Tararin { n } => tararin::normal_form(raw, n),
            Group::Braid { .. } => braid::normal_form(raw),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Free { rank } => write!(f, "free:rank={rank}"),
            Group::Zn { rank } => write!(f, "zn:rank={rank}"),
            Group::Tararin { n } => write!(f, "tararin:n={n}"),
            Group::Braid { n } => write!(f, "braid:n={n}"),
        }
    }
}

impl FromStr for Group {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Group::parse(s)
    }
}

/// A group element in its backend's normal form.
///
/// * free: freely reduced syllables;
/// * zn: one syllable per nonzero coordinate, in generator order;
/// * tararin: `x_n^{a_n} ... x_1^{a_1}` (descending generator order);
/// * braid: a handle-reduced word. Equality and hashing are semantic.
#[derive(Clone, Debug)]
pub struct Word {
    group: Group,
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length of the stored representative as a word in generators and inverses.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        let syllables = match self.group {
            Group::Free { .. } | Group::Braid { .. } => self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
            Group::Zn { .. } => self
                .syllables
                .iter()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
            Group::Tararin { n } => {
                tararin::from_vec(&tararin::inverse(&tararin::to_vec(&self.syllables, n)))
            }
        };
        Word {
            group: self.group,
            syllables,
        }
    }

    pub fn mul(&self, other: &Word) -> Result<Word, GroupError> {
        self.group.multiply(self, other)
    }

    pub fn pow(&self, k: i64) -> Word {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.group.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `f^-1 * self * f`.
    pub fn conjugate_by(&self, f: &Word) -> Result<Word, GroupError> {
        f.inverse().mul(self)?.mul(f)
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        debug_assert_eq!(self.group, other.group);
        let syllables = match self.group {
            Group::Free { .. } => free::reduce(
                self.syllables
                    .iter()
                    .chain(other.syllables.iter())
                    .copied(),
            ),
            Group::Zn { rank } => {
                let mut a = zn::to_vec(&self.syllables, rank);
                for s in &other.syllables {
                    a[s.gen as usize] += s.exp;
                }
                zn::from_vec(&a)
            }
            Group::Tararin { n } => tararin::from_vec(&tararin::multiply(
                &tararin::to_vec(&self.syllables, n),
                &tararin::to_vec(&other.syllables, n),
            )),
            Group::Braid { .. } => braid::product(&self.syllables, &other.syllables),
        };
        Word {
            group: self.group,
            syllables,
        }
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        if self.group != other.group {
            return false;
        }
        match self.group {
            Group::Braid { n } => braid::equal(&self.syllables, &other.syllables, n),
            _ => self.syllables == other.syllables,
        }
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        match self.group {
            Group::Braid { n } => braid::burau_key(&self.syllables, n).hash(state),
            _ => self.syllables.hash(state),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(&self.group.generator_name(s.gen))?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}
