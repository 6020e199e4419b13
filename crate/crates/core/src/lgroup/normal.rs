//! Join-of-meets normal form `\/_i /\_j g_ij`.

use std::collections::HashSet;
use std::fmt;

use super::{LGroupError, LTerm};
use crate::group::{Group, Word};

pub const DEFAULT_ROW_CAP: usize = 10_000;

/// Rows of a join of meets. Within a row duplicates are dropped; rows are
/// kept in production order with exact repeats removed. No domination
/// pruning is attempted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinMeetForm {
    group: Group,
    rows: Vec<Vec<Word>>,
}

impl JoinMeetForm {
    pub fn new(group: Group, rows: Vec<Vec<Word>>) -> JoinMeetForm {
        assert!(!rows.is_empty() && rows.iter().all(|r| !r.is_empty()));
        let mut f = JoinMeetForm { group, rows: Vec::new() };
        f.push_rows(rows);
        f
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn rows(&self) -> &[Vec<Word>] {
        &self.rows
    }

    pub fn entry_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// The form read back as a term, rows and entries associated left.
    pub fn to_term(&self) -> LTerm {
        let row = |r: &Vec<Word>| {
            r.iter()
                .skip(1)
                .fold(LTerm::Elem(r[0].clone()), |acc, w| LTerm::meet(acc, LTerm::Elem(w.clone())))
        };
        self.rows
            .iter()
            .skip(1)
            .fold(row(&self.rows[0]), |acc, r| LTerm::join(acc, row(r)))
    }

    fn push_rows(&mut self, rows: Vec<Vec<Word>>) {
        let mut seen: HashSet<Vec<Word>> = self.rows.iter().cloned().collect();
        for row in rows {
            let mut uniq = Vec::with_capacity(row.len());
            let mut in_row = HashSet::with_capacity(row.len());
            for w in row {
                if in_row.insert(w.clone()) {
                    uniq.push(w);
                }
            }
            if seen.insert(uniq.clone()) {
                self.rows.push(uniq);
            }
        }
    }
}

impl fmt::Display for JoinMeetForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, w) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Rewrites `t` into join-of-meets form, failing when more than `cap` rows
/// would be produced at any stage.
pub fn normalize(t: &LTerm, cap: usize) -> Result<JoinMeetForm, LGroupError> {
    let rows = rows_of(t, cap)?;
    Ok(JoinMeetForm::new(t.group(), rows))
}

fn check(n: usize, cap: usize) -> Result<(), LGroupError> {
    if n > cap {
        Err(LGroupError::RowCap { cap })
    } else {
        Ok(())
    }
}

fn tidy(group: Group, rows: Vec<Vec<Word>>) -> Vec<Vec<Word>> {
    JoinMeetForm::new(group, rows).rows
}

fn rows_of(t: &LTerm, cap: usize) -> Result<Vec<Vec<Word>>, LGroupError> {
    let group = t.group();
    let rows = match t {
        LTerm::Elem(w) => vec![vec![w.clone()]],
        LTerm::Join(a, b) => {
            let mut x = rows_of(a, cap)?;
            let y = rows_of(b, cap)?;
            check(x.len() + y.len(), cap)?;
            x.extend(y);
            x
        }
        // (\/_i A_i) /\ (\/_k B_k) = \/_{i,k} (A_i /\ B_k)
        LTerm::Meet(a, b) => {
            let x = rows_of(a, cap)?;
            let y = rows_of(b, cap)?;
            check(x.len().saturating_mul(y.len()), cap)?;
            let mut out = Vec::with_capacity(x.len() * y.len());
            for r in &x {
                for s in &y {
                    out.push(r.iter().chain(s).cloned().collect());
                }
            }
            out
        }
        // multiplication distributes over both lattice operations on both sides
        LTerm::Mul(a, b) => {
            let x = rows_of(a, cap)?;
            let y = rows_of(b, cap)?;
            check(x.len().saturating_mul(y.len()), cap)?;
            let mut out = Vec::with_capacity(x.len() * y.len());
            for r in &x {
                for s in &y {
                    let mut row = Vec::with_capacity(r.len() * s.len());
                    for u in r {
                        for v in s {
                            row.push(u.mul_unchecked(v));
                        }
                    }
                    out.push(row);
                }
            }
            out
        }
        // (\/_i /\_j g_ij)^-1 = /\_i \/_j g_ij^-1, then distribute
        LTerm::Inv(a) => {
            let x = rows_of(a, cap)?;
            let mut out: Vec<Vec<Word>> = vec![Vec::new()];
            for r in &x {
                check(out.len().saturating_mul(r.len()), cap)?;
                let mut next = Vec::with_capacity(out.len() * r.len());
                for prefix in &out {
                    for g in r {
                        let mut row = prefix.clone();
                        row.push(g.inverse());
                        next.push(row);
                    }
                }
                out = tidy(group, next);
            }
            out
        }
    };
    Ok(tidy(group, rows))
}
