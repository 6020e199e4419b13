//! Order-theoretic predicates checked on finite balls.

use std::cmp::Ordering;

use super::{OrderError, PositiveCone};
use crate::group::Word;

/// A positive pair `(g, h)` with `h g^2 <= g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConradianViolation {
    pub g: Word,
    pub h: Word,
}

#[derive(Debug, Clone)]
pub struct ConradianReport {
    pub radius: usize,
    pub positives: usize,
    pub violations: Vec<ConradianViolation>,
}

impl ConradianReport {
    /// No violations among the positive elements of the ball.
    pub fn is_conradian_up_to_radius(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans all positive `g, h` in `ball(radius)` for `h g^2 <= g`.
pub fn is_conradian_on_ball(
    cone: &PositiveCone,
    radius: usize,
    cap: usize,
) -> Result<ConradianReport, OrderError> {
    let ball = cone.group().enumerate_ball(radius, cap)?;
    let mut positives = Vec::new();
    for w in ball.nonidentity() {
        if cone.is_positive(w)? {
            positives.push(w);
        }
    }
    let mut violations = Vec::new();
    for &g in &positives {
        let g2 = g.mul_unchecked(g);
        for &h in &positives {
            if cone.compare(&h.mul_unchecked(&g2), g)? != Ordering::Greater {
                violations.push(ConradianViolation {
                    g: g.clone(),
                    h: h.clone(),
                });
            }
        }
    }
    Ok(ConradianReport {
        radius,
        positives: positives.len(),
        violations,
    })
}

/// Per-element outcome of a cofinality scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalEntry {
    pub h: Word,
    /// Least `n <= bound` with `g^-n < h < g^n`.
    pub exponent: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct CofinalReport {
    /// The tested element, replaced by its inverse when that is the positive one.
    pub g: Word,
    pub radius: usize,
    pub bound: u32,
    pub entries: Vec<CofinalEntry>,
}

impl CofinalReport {
    pub fn is_cofinal_up_to(&self) -> bool {
        self.entries.iter().all(|e| e.exponent.is_some())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Word> {
        self.entries
            .iter()
            .filter(|e| e.exponent.is_none())
            .map(|e| &e.h)
    }

    /// Largest exponent needed, when every element passed.
    pub fn max_exponent(&self) -> Option<u32> {
        self.entries.iter().map(|e| e.exponent).try_fold(0, |m, e| e.map(|e| m.max(e)))
    }
}

/// For each `h` in `ball(radius)`, the least `n <= bound` with
/// `g^-n < h < g^n`. The identity is never cofinal.
pub fn is_cofinal_on_ball(
    cone: &PositiveCone,
    g: &Word,
    radius: usize,
    bound: u32,
    cap: usize,
) -> Result<CofinalReport, OrderError> {
    let ball = cone.group().enumerate_ball(radius, cap)?;
    if g.is_identity() {
        return Ok(CofinalReport {
            g: g.clone(),
            radius,
            bound,
            entries: ball
                .iter()
                .map(|h| CofinalEntry {
                    h: h.clone(),
                    exponent: None,
                })
                .collect(),
        });
    }
    let g = if cone.sign(g)? == super::Sign::Pos {
        g.clone()
    } else {
        g.inverse()
    };
    // g^n and g^-n for n = 1..=bound
    let mut powers = Vec::with_capacity(bound as usize);
    let mut acc = g.group().identity();
    for _ in 0..bound {
        acc = acc.mul_unchecked(&g);
        powers.push((acc.clone(), acc.inverse()));
    }
    let mut entries = Vec::with_capacity(ball.len());
    for h in ball.iter() {
        let mut exponent = None;
        for (n, (up, down)) in powers.iter().enumerate() {
            if cone.compare(down, h)? == Ordering::Less && cone.compare(h, up)? == Ordering::Less {
                exponent = Some(n as u32 + 1);
                break;
            }
        }
        entries.push(CofinalEntry {
            h: h.clone(),
            exponent,
        });
    }
    Ok(CofinalReport {
        g,
        radius,
        bound,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Group, DEFAULT_CAP};

    fn cone(g: &str, c: &str) -> PositiveCone {
        PositiveCone::parse(Group::parse(g).unwrap(), c).unwrap()
    }

    #[test]
    fn abelian_and_bi_orders_are_conradian() {
        let p = cone("zn:rank=2", "lex");
        assert!(is_conradian_on_ball(&p, 4, DEFAULT_CAP).unwrap().is_conradian_up_to_radius());
        let m = cone("free:rank=2", "magnus");
        assert!(is_conradian_on_ball(&m, 3, DEFAULT_CAP).unwrap().is_conradian_up_to_radius());
    }

    #[test]
    fn dehornoy_is_not_conradian() {
        let p = cone("braid:n=3", "dehornoy");
        let r = is_conradian_on_ball(&p, 3, DEFAULT_CAP).unwrap();
        assert!(!r.violations.is_empty());
        let v = &r.violations[0];
        let hg2 = v.h.mul(&v.g).unwrap().mul(&v.g).unwrap();
        assert_ne!(p.compare(&hg2, &v.g).unwrap(), Ordering::Greater);
    }

    #[test]
    fn cofinality() {
        let z = cone("zn:rank=1", "lex");
        let a = Group::Zn { rank: 1 }.parse_word("a").unwrap();
        let r = is_cofinal_on_ball(&z, &a, 10, 11, DEFAULT_CAP).unwrap();
        assert!(r.is_cofinal_up_to());
        assert_eq!(r.max_exponent(), Some(11));
        // a^-1 is tested through its positive inverse
        assert!(is_cofinal_on_ball(&z, &a.inverse(), 10, 11, DEFAULT_CAP).unwrap().is_cofinal_up_to());

        let g = Group::Zn { rank: 2 };
        let lex = cone("zn:rank=2", "lex");
        let r = is_cofinal_on_ball(&lex, &g.parse_word("b").unwrap(), 3, 10, DEFAULT_CAP).unwrap();
        assert!(!r.is_cofinal_up_to());
        assert!(r.failures().any(|h| *h == g.parse_word("a").unwrap()));
    }
}
