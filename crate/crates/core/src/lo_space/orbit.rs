//! Conjugation orbits of cones.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use super::{Certificate, LoError};
use crate::group::{Ball, Group, Syllable, Word};
use crate::orderings::{LoSpace, OrderError, PositiveCone, SignSequence};

/// A restriction of `f P f^-1` to the report ball, with its first conjugator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoint {
    pub conjugator: Word,
    pub signs: Vec<i8>,
}

#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub base: PositiveCone,
    pub conj_radius: usize,
    pub radius: usize,
    pub ball: Arc<Ball>,
    pub points: Vec<OrbitPoint>,
    /// `(from, to, x)`: conjugating point `from` by generator `x` gives `to`.
    pub edges: Vec<(usize, usize, Word)>,
}

impl OrbitReport {
    /// Graphviz rendering of the points and generator edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph orbit {\n");
        for (i, p) in self.points.iter().enumerate() {
            let _ = writeln!(out, "  p{i} [label=\"f={}\"];", p.conjugator);
        }
        for (a, b, x) in &self.edges {
            let _ = writeln!(out, "  p{a} -> p{b} [label=\"{x}\"];");
        }
        out.push_str("}\n");
        out
    }
}

fn restrictions(
    base: &PositiveCone,
    conjugators: &[Word],
    ball: &Ball,
) -> Result<Vec<Vec<i8>>, OrderError> {
    conjugators
        .par_iter()
        .map(|f| base.conjugate(f)?.restrict(ball))
        .collect()
}

/// Distinct restrictions to `ball(radius)` of `f P f^-1` for `f` in
/// `ball(conj_radius)`, each with the first conjugator (in ball order)
/// that realizes it.
pub fn orbit_points(
    base: &PositiveCone,
    conj_radius: usize,
    radius: usize,
    cap: usize,
) -> Result<OrbitReport, LoError> {
    let group = base.group();
    let conj = group.enumerate_ball(conj_radius, cap)?;
    let ball = Arc::new(group.enumerate_ball(radius, cap)?);
    let all = restrictions(base, conj.elements(), &ball)?;
    let mut index: HashMap<Vec<i8>, usize> = HashMap::new();
    let mut points = Vec::new();
    for (f, signs) in conj.iter().zip(all) {
        if !index.contains_key(&signs) {
            index.insert(signs.clone(), points.len());
            points.push(OrbitPoint {
                conjugator: f.clone(),
                signs,
            });
        }
    }
    let gens: Vec<Word> = (0..group.generator_count())
        .map(|i| group.generator(i))
        .collect::<Result<_, _>>()?;
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let moved: Vec<Word> = gens.iter().map(|x| x.mul_unchecked(&p.conjugator)).collect();
        for (x, signs) in gens.iter().zip(restrictions(base, &moved, &ball)?) {
            if let Some(&j) = index.get(&signs) {
                edges.push((i, j, x.clone()));
            }
        }
    }
    Ok(OrbitReport {
        base: base.clone(),
        conj_radius,
        radius,
        ball,
        points,
        edges,
    })
}

/// Searches `ball(conj_radius)` in order for `f` with `f P f^-1` agreeing
/// with `target` on `ball(radius)`. `None` is inconclusive.
pub fn orbit_closure_contains(
    target: &PositiveCone,
    base: &PositiveCone,
    radius: usize,
    conj_radius: usize,
    cap: usize,
) -> Result<Option<Certificate>, LoError> {
    let group = base.group();
    let ball = group.enumerate_ball(radius, cap)?;
    let want = target.restrict(&ball)?;
    let conj = group.enumerate_ball(conj_radius, cap)?;
    let hit = conj
        .elements()
        .par_iter()
        .map(|f| -> Result<Option<Word>, OrderError> {
            Ok((base.conjugate(f)?.restrict(&ball)? == want).then(|| f.clone()))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    match hit {
        Some(Ok(Some(f))) => Ok(Some(Certificate::orbit_membership(base, target, &f, radius))),
        Some(Err(e)) => Err(e.into()),
        _ => Ok(None),
    }
}

#[derive(Debug, Clone)]
pub struct TararinConjugator {
    pub g: Word,
    /// 1-based indices where the sequences disagree, ascending.
    pub flips: Vec<usize>,
    /// Elements of `T_n ∩ ball(3)` compared.
    pub checked: usize,
    pub mismatches: usize,
}

impl TararinConjugator {
    pub fn verified(&self) -> bool {
        self.mismatches == 0
    }
}

/// `g` with `g P_{eps1} g^-1` and `P_{eps2}` agreeing on `T_n`: the product
/// of `x_{i+1}` over disagreeing indices `i <= n`, the lowest flip applied
/// first. Sequences shorter than the rank are padded with `+`. The result
/// is checked on the part of `ball(3)` lying in `T_n`.
pub fn tararin_conjugator(
    group: Group,
    eps1: &SignSequence,
    eps2: &SignSequence,
    n: usize,
    cap: usize,
) -> Result<TararinConjugator, LoError> {
    let Group::Tararin { n: rank } = group else {
        return Err(LoError::NotTararin(group));
    };
    let rank = rank as usize;
    for eps in [eps1, eps2] {
        if eps.len() < n || eps.len() > rank || n == 0 {
            return Err(LoError::BadSequence { n, rank });
        }
    }
    let pad = |e: &SignSequence| {
        let mut v = e.0.clone();
        v.resize(rank, crate::orderings::Sign::Pos);
        SignSequence(v)
    };
    let (e1, e2) = (pad(eps1), pad(eps2));
    let flips: Vec<usize> = (1..=n).filter(|&i| e1.0[i - 1] != e2.0[i - 1]).collect();
    if let Some(&top) = flips.last() {
        if top + 1 > rank {
            return Err(LoError::RankTooSmall { group, n: top, rank });
        }
    }
    // x_{i+1} for the highest flip outermost
    let raw: Vec<Syllable> = flips.iter().rev().map(|&i| Syllable::new(i as u32, 1)).collect();
    let g = group.normal_form(&raw)?;

    let p = PositiveCone::tararin(group, e1)?.conjugate(&g)?;
    let q = PositiveCone::tararin(group, e2)?;
    let ball = group.enumerate_ball(3, cap)?;
    let mut checked = 0;
    let mut mismatches = 0;
    for h in ball.nonidentity() {
        if h.syllables().iter().all(|s| (s.gen as usize) < n) {
            checked += 1;
            if p.sign(h)? != q.sign(h)? {
                mismatches += 1;
            }
        }
    }
    Ok(TararinConjugator {
        g,
        flips,
        checked,
        mismatches,
    })
}

/// Smallest radius `<= 4` on which the members of `space` restrict to
/// pairwise distinct sign vectors.
fn distinguishing_ball(space: &LoSpace, cap: usize) -> Result<(Ball, Vec<Vec<i8>>), LoError> {
    for r in 1..=4 {
        let ball = space.group().enumerate_ball(r, cap)?;
        let signs: Vec<Vec<i8>> = space
            .cones()
            .iter()
            .map(|c| c.restrict(&ball))
            .collect::<Result<_, _>>()?;
        let distinct: BTreeSet<&Vec<i8>> = signs.iter().collect();
        if distinct.len() == signs.len() {
            return Ok((ball, signs));
        }
    }
    Err(LoError::NotClosed {
        cone: "members indistinguishable on ball(4)".into(),
    })
}

#[derive(Debug, Clone)]
pub struct InvariantSetReport {
    pub group: Group,
    pub conj_radius: usize,
    /// Radius on which members were told apart.
    pub radius: usize,
    /// Cone indices of each orbit, sorted; orbits ordered by least member.
    pub sets: Vec<Vec<usize>>,
    /// Every member's own orbit equals its set.
    pub condition_verified: bool,
}

impl InvariantSetReport {
    pub fn sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }
}

/// Orbits of a complete finite space under conjugation by `ball(conj_radius)`,
/// each reported as a minimal invariant set. In a finite space orbits are
/// closed, so orbits and minimal invariant sets coincide.
pub fn minimal_invariant_sets(
    space: &LoSpace,
    conj_radius: usize,
    cap: usize,
) -> Result<InvariantSetReport, LoError> {
    space.require_complete()?;
    let (ball, signs) = distinguishing_ball(space, cap)?;
    let member: HashMap<&Vec<i8>, usize> = signs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let conj = space.group().enumerate_ball(conj_radius, cap)?;
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); space.len()];
    for (k, cone) in space.cones().iter().enumerate() {
        for s in restrictions(cone, conj.elements(), &ball)? {
            let j = *member.get(&s).ok_or_else(|| LoError::NotClosed {
                cone: cone.to_string(),
            })?;
            adj[k].insert(j);
        }
    }
    let reach = |start: usize| {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(k) = queue.pop_front() {
            for &j in &adj[k] {
                if seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        seen
    };
    let mut assigned = vec![false; space.len()];
    let mut sets = Vec::new();
    for k in 0..space.len() {
        if assigned[k] {
            continue;
        }
        let orbit = reach(k);
        for &j in &orbit {
            assigned[j] = true;
        }
        sets.push(orbit);
    }
    let condition_verified = sets.iter().all(|set| set.iter().all(|&q| reach(q) == *set));
    Ok(InvariantSetReport {
        group: space.group(),
        conj_radius,
        radius: ball.radius(),
        sets: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        condition_verified,
    })
}

#[derive(Debug, Clone)]
pub struct FiniteSpaceReport {
    pub size: usize,
    /// For each cone, finitely many elements whose positivity singles it out.
    pub isolating: Vec<Vec<Word>>,
}

/// Size of a complete finite space and an isolating family for each point.
pub fn finite_or_uncountable_check(space: &LoSpace, cap: usize) -> Result<FiniteSpaceReport, LoError> {
    space.require_complete()?;
    let (ball, signs) = distinguishing_ball(space, cap)?;
    let isolating = signs
        .iter()
        .enumerate()
        .map(|(k, mine)| {
            // positive elements of the distinguishing ball, dropping those not needed
            let mut family: Vec<usize> = (1..ball.len()).filter(|&i| mine[i] > 0).collect();
            let isolates = |fam: &[usize]| {
                signs
                    .iter()
                    .enumerate()
                    .all(|(j, other)| j == k || fam.iter().any(|&i| other[i] < 0))
            };
            let mut i = family.len();
            while i > 0 {
                i -= 1;
                let removed = family.remove(i);
                if !isolates(&family) {
                    family.insert(i, removed);
                }
            }
            family.into_iter().map(|i| ball.get(i).clone()).collect()
        })
        .collect();
    Ok(FiniteSpaceReport {
        size: space.len(),
        isolating,
    })
}
