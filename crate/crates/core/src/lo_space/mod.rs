//! Topology and conjugation dynamics of spaces of orderings, observed on
//! finite balls.
//!
//! Every statement produced here is stamped with the radius it was checked
//! at. Exact claims are only made through [`Certificate`]s whose hypotheses
//! are structural: completeness of a finite space of orderings, or an
//! element known to be cofinal.

mod certificate;
mod kernel;
mod orbit;

use crate::group::{Group, GroupError, Word};
use crate::lgroup::LGroupError;
use crate::orderings::{ConeSearch, FiniteConeAssignment, OrderError};

pub use certificate::{verify_certificate, Certificate, CertificateKind, Verification};
pub use kernel::{
    cofinal_obstruction, known_cofinal, kernel_containment_falsifier, Falsification,
    ObstructionOutcome,
};
pub use orbit::{
    finite_or_uncountable_check, minimal_invariant_sets, orbit_closure_contains, orbit_points,
    tararin_conjugator, FiniteSpaceReport, InvariantSetReport, OrbitPoint, OrbitReport,
    TararinConjugator,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    LGroup(#[from] LGroupError),
    #[error("open set spec may not contain the identity")]
    IdentityInSpec,
    #[error("{group} has rank {rank}; flipping index {n} needs rank at least {}", n + 1)]
    RankTooSmall { group: Group, n: usize, rank: usize },
    #[error("sign sequences must have at least {n} entries and at most {rank}")]
    BadSequence { n: usize, rank: usize },
    #[error("{0} is not a Tararin group")]
    NotTararin(Group),
    #[error("conjugate {cone} is not a member of the supplied space")]
    NotClosed { cone: String },
    #[error("invalid certificate: {0}")]
    BadCertificate(String),
    #[error("radius schedule must be nonempty and increasing")]
    BadSchedule,
}

impl From<GroupError> for LoError {
    fn from(e: GroupError) -> Self {
        LoError::Order(e.into())
    }
}

/// Finitely many elements `g_1..g_n` naming the basic open set
/// `U_{g_1} ∩ .. ∩ U_{g_n}` of cones containing all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSetSpec {
    group: Group,
    elements: Vec<Word>,
}

impl OpenSetSpec {
    pub fn new(group: Group, elements: Vec<Word>) -> Result<OpenSetSpec, LoError> {
        for w in &elements {
            if w.group() != group {
                return Err(GroupError::Mismatch {
                    left: group,
                    right: w.group(),
                }
                .into());
            }
            if w.is_identity() {
                return Err(LoError::IdentityInSpec);
            }
        }
        Ok(OpenSetSpec { group, elements })
    }

    /// Comma-separated words.
    pub fn parse(group: Group, text: &str) -> Result<OpenSetSpec, LoError> {
        OpenSetSpec::new(group, group.parse_word_list(text)?)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }
}

impl std::fmt::Display for OpenSetSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let words: Vec<String> = self.elements.iter().map(Word::to_string).collect();
        f.write_str(&words.join(","))
    }
}

/// Consistent assignments on `ball(radius)` lying in the open set.
pub fn cones_in_open_set(
    spec: &OpenSetSpec,
    radius: usize,
    cap: usize,
) -> Result<Vec<FiniteConeAssignment>, LoError> {
    Ok(ConeSearch::new(spec.group, radius, cap)?.enumerate(&spec.elements, cap)?)
}

/// Outcome of [`isolated_scan`].
#[derive(Debug, Clone)]
pub enum IsolationOutcome {
    /// Exactly one extension at every radius of the schedule.
    Certified(Certificate),
    /// Two distinct extensions at `radius`.
    Refuted {
        radius: usize,
        first: FiniteConeAssignment,
        second: FiniteConeAssignment,
    },
    /// No extension at `radius`: the open set is empty there.
    Empty { radius: usize },
}

#[derive(Debug, Clone)]
pub struct IsolationScan {
    /// `(radius, count)` with counts stopped at 2.
    pub counts: Vec<(usize, usize)>,
    pub outcome: IsolationOutcome,
}

/// Counts consistent extensions of `spec` at each radius, stopping at the
/// first radius with zero or more than one.
pub fn isolated_scan(spec: &OpenSetSpec, radii: &[usize], cap: usize) -> Result<IsolationScan, LoError> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LoError::BadSchedule);
    }
    let mut counts = Vec::new();
    for &r in radii {
        let search = ConeSearch::new(spec.group, r, cap)?;
        let c = search.count(&spec.elements, Some(2), 2)?;
        counts.push((r, c.count));
        match c.count {
            0 => {
                return Ok(IsolationScan {
                    counts,
                    outcome: IsolationOutcome::Empty { radius: r },
                })
            }
            1 => {}
            _ => {
                let mut w = c.witnesses.into_iter();
                let first = w.next().expect("two witnesses kept");
                let second = w.next().expect("two witnesses kept");
                return Ok(IsolationScan {
                    counts,
                    outcome: IsolationOutcome::Refuted {
                        radius: r,
                        first,
                        second,
                    },
                });
            }
        }
    }
    let cert = Certificate::isolation(spec, &counts);
    Ok(IsolationScan {
        counts,
        outcome: IsolationOutcome::Certified(cert),
    })
}
