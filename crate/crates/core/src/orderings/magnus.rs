//! Magnus ordering of free groups.
//!
//! `a_i -> 1 + A_i` embeds `F_n` into the truncated algebra of
//! noncommutative power series. An element is positive when the first
//! nonzero coefficient of its expansion minus one is positive, monomials
//! ordered by degree and then lexicographically in a chosen variable order.
//! The ordering is bi-invariant.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{OrderError, Sign};
use crate::group::{Group, Word};

pub const DEFAULT_MAGNUS_DEGREE: usize = 8;

/// Variable order and truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusOrder {
    /// Generators from smallest to largest.
    order: Vec<u32>,
    degree: usize,
}

impl MagnusOrder {
    pub fn natural(rank: u32) -> MagnusOrder {
        MagnusOrder {
            order: (0..rank).collect(),
            degree: DEFAULT_MAGNUS_DEGREE,
        }
    }

    pub fn new(order: Vec<u32>, degree: usize) -> Option<MagnusOrder> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        (sorted == (0..order.len() as u32).collect::<Vec<_>>() && degree >= 1)
            .then_some(MagnusOrder { order, degree })
    }

    /// Parses `order=a<b;deg=8` (both parts optional).
    pub fn parse(group: Group, params: &str) -> Result<MagnusOrder, String> {
        let rank = group.generator_count();
        let mut order: Vec<u32> = (0..rank).collect();
        let mut degree = DEFAULT_MAGNUS_DEGREE;
        for part in params.split(';').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or("expected key=value")?;
            match k.trim() {
                "order" => {
                    order = v
                        .split('<')
                        .map(|name| group.resolve_generator(name.trim()).map_err(|e| e.to_string()))
                        .collect::<Result<_, _>>()?;
                }
                "deg" => degree = v.trim().parse().map_err(|_| "deg must be a positive integer")?,
                other => return Err(format!("unknown magnus parameter {other:?}")),
            }
        }
        MagnusOrder::new(order, degree)
            .filter(|o| o.rank() == rank as usize)
            .ok_or_else(|| format!("order must list all {rank} generators once and deg must be >= 1"))
    }

    pub fn rank(&self) -> usize {
        self.order.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn spec(&self, group: Group) -> String {
        let names: Vec<String> = self.order.iter().map(|&g| group.generator_name(g)).collect();
        format!("order={};deg={}", names.join("<"), self.degree)
    }

    fn position(&self, gen: u32) -> u8 {
        self.order.iter().position(|&g| g == gen).expect("validated") as u8
    }
}

/// Monomial in the variables, indexed by position in the variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Monomial(Vec<u8>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Series = BTreeMap<Monomial, i128>;

/// Coefficients of `(1 + X)^k` up to `X^degree`.
fn binomial_row(k: i64, degree: usize) -> Result<Vec<i128>, OrderError> {
    let mut row = vec![1i128];
    for j in 0..degree as i128 {
        let prev = row[j as usize];
        let next = prev
            .checked_mul(k as i128 - j)
            .ok_or(OrderError::MagnusOverflow)?
            / (j + 1);
        row.push(next);
    }
    Ok(row)
}

fn expand(word: &Word, order: &MagnusOrder) -> Result<Series, OrderError> {
    let d = order.degree;
    let mut series = Series::from([(Monomial(Vec::new()), 1)]);
    for syl in word.syllables() {
        let var = order.position(syl.gen);
        let row = binomial_row(syl.exp, d)?;
        let mut next = Series::new();
        for (m, &c) in &series {
            let mut mono = m.0.clone();
            for (j, &b) in row.iter().enumerate().take(d - m.0.len() + 1) {
                if j > 0 {
                    mono.push(var);
                }
                if b == 0 {
                    continue;
                }
                let add = c.checked_mul(b).ok_or(OrderError::MagnusOverflow)?;
                let slot = next.entry(Monomial(mono.clone())).or_insert(0);
                *slot = slot.checked_add(add).ok_or(OrderError::MagnusOverflow)?;
            }
        }
        next.retain(|_, c| *c != 0);
        series = next;
    }
    Ok(series)
}

pub(super) fn sign(word: &Word, order: &MagnusOrder) -> Result<Sign, OrderError> {
    let series = expand(word, order)?;
    series
        .iter()
        .find(|(m, c)| !m.0.is_empty() && **c != 0)
        .map(|(_, &c)| if c > 0 { Sign::Pos } else { Sign::Neg })
        .ok_or_else(|| OrderError::PrecisionExhausted {
            element: word.to_string(),
            degree: order.degree,
        })
}
