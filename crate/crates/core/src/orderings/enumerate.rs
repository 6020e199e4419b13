//! Exhaustive search for consistent sign assignments on a ball.
//!
//! A sign assignment on `ball \ {1}` is consistent when it is antisymmetric
//! (`sign(g^-1) = -sign(g)`) and closed under products that stay inside the
//! ball (`g, h > 1` and `gh` in the ball imply `gh > 1`). Such an assignment
//! is only a finite-radius shadow of a positive cone: it need not extend to
//! a left ordering of the whole group.
//!
//! The search is a DPLL-style backtracking: pick the least undecided element
//! in ball order, try `+` before `-`, and propagate closure to fixpoint after
//! each decision. Output order is therefore canonical.

use std::fmt;
use std::fs;
use std::ops::ControlFlow;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use super::{OrderError, Sign};
use crate::group::{Ball, Group, Word};

const NONE: u32 = u32::MAX;

/// A consistent sign map on a finite, inversion-closed domain.
#[derive(Debug, Clone)]
pub struct FiniteConeAssignment {
    ball: Arc<Ball>,
    signs: Vec<i8>,
}

impl FiniteConeAssignment {
    /// Wraps a sign vector indexed like `ball` (`0` at the identity).
    pub fn new(ball: Arc<Ball>, signs: Vec<i8>) -> FiniteConeAssignment {
        assert_eq!(ball.len(), signs.len());
        FiniteConeAssignment { ball, signs }
    }

    /// Reads `word sign` lines (`#` starts a comment). Inverses are implied.
    pub fn load(group: Group, path: &Path) -> Result<FiniteConeAssignment, OrderError> {
        let io = |reason: String| OrderError::Io {
            path: path.display().to_string(),
            reason,
        };
        let text = fs::read_to_string(path).map_err(|e| io(e.to_string()))?;
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (word, sign) = line
                .rsplit_once(char::is_whitespace)
                .ok_or_else(|| io(format!("line {}: expected `word sign`", n + 1)))?;
            let sign = Sign::parse(sign).ok_or_else(|| io(format!("line {}: bad sign", n + 1)))?;
            pairs.push((group.parse_word(word.trim())?, sign));
        }
        Self::from_pairs(group, &pairs).map_err(io)
    }

    pub fn from_pairs(group: Group, pairs: &[(Word, Sign)]) -> Result<FiniteConeAssignment, String> {
        let words: Vec<Word> = pairs.iter().map(|(w, _)| w.clone()).collect();
        let ball = Ball::from_words(group, &words);
        let mut signs = vec![0i8; ball.len()];
        for (w, s) in pairs {
            if w.is_identity() {
                return Err("the identity has no sign".into());
            }
            let i = ball.index_of(w).expect("domain contains every listed word");
            let j = ball.inverse_index(i);
            if signs[i] == -s.as_i8() {
                return Err(format!("conflicting signs for {w}"));
            }
            signs[i] = s.as_i8();
            signs[j] = -s.as_i8();
        }
        Ok(FiniteConeAssignment {
            ball: Arc::new(ball),
            signs,
        })
    }

    pub fn group(&self) -> Group {
        self.ball.group()
    }

    pub fn ball(&self) -> &Arc<Ball> {
        &self.ball
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    /// Signs indexed like the ball, `0` at the identity.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign_of(&self, g: &Word) -> Result<Sign, OrderError> {
        self.ball
            .index_of(g)
            .and_then(|i| Sign::from_i8(self.signs[i]))
            .ok_or_else(|| OrderError::OutsideDomain {
                element: g.to_string(),
            })
    }

    /// Positive elements in ball order.
    pub fn positives(&self) -> impl Iterator<Item = &Word> {
        self.ball
            .iter()
            .zip(&self.signs)
            .filter(|(_, &s)| s > 0)
            .map(|(w, _)| w)
    }

    /// Checks antisymmetry and closure under in-ball products.
    pub fn is_consistent(&self) -> bool {
        let b = &self.ball;
        for i in 1..b.len() {
            if self.signs[i] == 0 || self.signs[i] != -self.signs[b.inverse_index(i)] {
                return false;
            }
        }
        let pos: Vec<usize> = (1..b.len()).filter(|&i| self.signs[i] > 0).collect();
        pos.iter().all(|&i| {
            pos.iter().all(|&j| match b.index_of(&b.get(i).mul_unchecked(b.get(j))) {
                Some(k) => self.signs[k] > 0,
                None => true,
            })
        })
    }
}

impl PartialEq for FiniteConeAssignment {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs && self.ball.elements() == other.ball.elements()
    }
}

impl Eq for FiniteConeAssignment {}

impl fmt::Display for FiniteConeAssignment {
    /// `+` elements in ball order, e.g. `{a, b, a*b}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, w) in self.positives().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// Precomputed multiplication table of a ball for the cone search.
pub struct ConeSearch {
    ball: Arc<Ball>,
    table: Vec<u32>,
}

impl ConeSearch {
    pub fn new(group: Group, radius: usize, cap: usize) -> Result<ConeSearch, OrderError> {
        Ok(ConeSearch::from_ball(Arc::new(group.enumerate_ball(radius, cap)?)))
    }

    pub fn from_ball(ball: Arc<Ball>) -> ConeSearch {
        let n = ball.len();
        let table = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let ball = &ball;
                (0..n).map(move |j| {
                    if i == 0 || j == 0 {
                        return NONE;
                    }
                    match ball.index_of(&ball.get(i).mul_unchecked(ball.get(j))) {
                        Some(0) | None => NONE,
                        Some(k) => k as u32,
                    }
                })
            })
            .collect();
        ConeSearch { ball, table }
    }

    pub fn ball(&self) -> &Arc<Ball> {
        &self.ball
    }

    /// Visits every consistent assignment making `required` positive, in
    /// canonical order, until `visit` breaks.
    pub fn run<F>(&self, required: &[usize], mut visit: F)
    where
        F: FnMut(&[i8]) -> ControlFlow<()>,
    {
        let mut state = State {
            search: self,
            n: self.ball.len(),
            sign: vec![0; self.ball.len()],
            trail: Vec::new(),
            queue: Vec::new(),
        };
        for &r in required {
            if !state.assign(r) {
                return;
            }
        }
        let _ = state.dfs(1, &mut visit);
    }

    fn resolve(&self, constraints: &[Word]) -> Result<Vec<usize>, OrderError> {
        constraints
            .iter()
            .map(|w| match self.ball.index_of(w) {
                Some(i) if i > 0 => Ok(i),
                _ => Err(OrderError::BadConstraint {
                    element: w.to_string(),
                    radius: self.ball.radius(),
                }),
            })
            .collect()
    }

    /// All consistent assignments containing `constraints`; fails past `cap`.
    pub fn enumerate(
        &self,
        constraints: &[Word],
        cap: usize,
    ) -> Result<Vec<FiniteConeAssignment>, OrderError> {
        let required = self.resolve(constraints)?;
        let mut out = Vec::new();
        let mut overflow = false;
        self.run(&required, |signs| {
            if out.len() >= cap {
                overflow = true;
                return ControlFlow::Break(());
            }
            out.push(FiniteConeAssignment::new(self.ball.clone(), signs.to_vec()));
            ControlFlow::Continue(())
        });
        if overflow {
            return Err(OrderError::CapExceeded { cap });
        }
        Ok(out)
    }

    /// Counts assignments, stopping once `stop_after` are found. The first
    /// `keep` assignments are returned as witnesses.
    pub fn count(
        &self,
        constraints: &[Word],
        stop_after: Option<usize>,
        keep: usize,
    ) -> Result<ConeCount, OrderError> {
        let required = self.resolve(constraints)?;
        let mut count = 0usize;
        let mut witnesses = Vec::new();
        let mut exhaustive = true;
        self.run(&required, |signs| {
            if witnesses.len() < keep {
                witnesses.push(FiniteConeAssignment::new(self.ball.clone(), signs.to_vec()));
            }
            count += 1;
            if stop_after.is_some_and(|s| count >= s) {
                exhaustive = false;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        Ok(ConeCount {
            radius: self.ball.radius(),
            ball_size: self.ball.len(),
            count,
            exhaustive,
            witnesses,
        })
    }
}

/// Result of [`ConeSearch::count`].
#[derive(Debug, Clone)]
pub struct ConeCount {
    pub radius: usize,
    pub ball_size: usize,
    pub count: usize,
    /// False when the search stopped early at `stop_after`.
    pub exhaustive: bool,
    pub witnesses: Vec<FiniteConeAssignment>,
}

struct State<'a> {
    search: &'a ConeSearch,
    n: usize,
    sign: Vec<i8>,
    trail: Vec<u32>,
    queue: Vec<u32>,
}

impl State<'_> {
    fn product(&self, i: u32, j: u32) -> u32 {
        self.search.table[i as usize * self.n + j as usize]
    }

    fn set_positive(&mut self, p: u32) {
        self.sign[p as usize] = 1;
        self.sign[self.search.ball.inverse_index(p as usize)] = -1;
        self.trail.push(p);
    }

    /// Makes `p` positive and propagates closure; false on conflict.
    fn assign(&mut self, p: usize) -> bool {
        match self.sign[p] {
            1 => return true,
            -1 => return false,
            _ => {}
        }
        self.queue.clear();
        self.set_positive(p as u32);
        self.queue.push(p as u32);
        while let Some(x) = self.queue.pop() {
            // products with positives added later are handled when those pop
            let len = self.trail.len();
            for k in 0..len {
                let y = self.trail[k];
                for z in [self.product(x, y), self.product(y, x)] {
                    if z == NONE {
                        continue;
                    }
                    match self.sign[z as usize] {
                        1 => {}
                        -1 => return false,
                        _ => {
                            self.set_positive(z);
                            self.queue.push(z);
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().unwrap() as usize;
            self.sign[p] = 0;
            self.sign[self.search.ball.inverse_index(p)] = 0;
        }
    }

    fn dfs<F>(&mut self, from: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[i8]) -> ControlFlow<()>,
    {
        let mut i = from;
        while i < self.n && self.sign[i] != 0 {
            i += 1;
        }
        if i == self.n {
            return visit(&self.sign);
        }
        let mark = self.trail.len();
        for choice in [i, self.search.ball.inverse_index(i)] {
            if self.assign(choice) {
                let flow = self.dfs(i + 1, visit);
                if flow.is_break() {
                    self.undo(mark);
                    return flow;
                }
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }
}

/// All consistent assignments on `ball(radius)` making `constraints` positive.
pub fn enumerate_finite_cones(
    group: Group,
    radius: usize,
    constraints: &[Word],
    cap: usize,
) -> Result<Vec<FiniteConeAssignment>, OrderError> {
    ConeSearch::new(group, radius, cap)?.enumerate(constraints, cap)
}

/// Counts consistent assignments, optionally stopping early.
pub fn count_finite_cones(
    group: Group,
    radius: usize,
    constraints: &[Word],
    stop_after: Option<usize>,
    cap: usize,
) -> Result<ConeCount, OrderError> {
    ConeSearch::new(group, radius, cap)?.count(constraints, stop_after, 2)
}
