//! Kernel-containment falsification and the cofinality obstruction.
//!
//! If `g > 1` is cofinal in `<_P` then `g /\ 1` fixes every point under `P`
//! while under `P^-1` it moves `1` to `g`. The kernel of `P` is then not
//! contained in that of `P^-1`, which keeps `P^-1` out of the orbit closure
//! of `P`. The same term separates `P` from any cone under which it moves
//! some point.

use super::{Certificate, LoError};
use crate::group::{Group, Word};
use crate::lgroup::{acts_trivially_on_ball, eval_form, normalize, KernelVerdict, LTerm};
use crate::orderings::{is_cofinal_on_ball, CofinalReport, PositiveCone, Sign};

/// Why `g` is accepted as cofinal in every left ordering, if it is.
pub fn known_cofinal(g: &Word) -> Option<&'static str> {
    if g.is_identity() {
        return None;
    }
    let group = g.group();
    if group.is_infinite_cyclic() {
        return Some("nonidentity element of an infinite cyclic group");
    }
    if let Group::Braid { n } = group {
        // the centre of B_n is generated by the full twist, of exponent sum n(n-1)
        let sum: i64 = g.syllables().iter().map(|s| s.exp).sum();
        let d = (n as i64) * (n as i64 - 1);
        if sum != 0 && sum % d == 0 {
            let full = group.garside_half_twist().ok()?.pow(2);
            if full.pow(sum / d) == *g {
                return Some("nonzero power of the full twist");
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct ObstructionOutcome {
    pub report: CofinalReport,
    pub certificate: Option<Certificate>,
    /// Why no certificate was issued, or the cofinality source when one was.
    pub reason: String,
}

struct Exactness {
    reason: &'static str,
    tainted: bool,
}

/// Conditions under which `g /\ 1` is exactly in the kernel of `P`.
fn exactness(
    cone: &PositiveCone,
    report: &CofinalReport,
    assume_cofinal: bool,
) -> Result<Exactness, String> {
    if !report.is_cofinal_up_to() {
        let h = report.failures().next().expect("a failure exists");
        return Err(format!("cofinality test failed at h={h}"));
    }
    if !cone.is_full() {
        return Err("the cone is only known on a finite ball".into());
    }
    match known_cofinal(&report.g) {
        Some(reason) => Ok(Exactness {
            reason,
            tainted: false,
        }),
        None if assume_cofinal => Ok(Exactness {
            reason: "assumed",
            tainted: true,
        }),
        None => Err(format!(
            "{} is not known to be cofinal; pass --assume-cofinal to assume it",
            report.g
        )),
    }
}

/// Tests cofinality of `g` on `ball(radius)` with exponents up to `bound`
/// and, when `g` is structurally cofinal, certifies that `P^-1` is not in
/// the orbit closure of `P`.
pub fn cofinal_obstruction(
    cone: &PositiveCone,
    g: &Word,
    radius: usize,
    bound: u32,
    assume_cofinal: bool,
    cap: usize,
) -> Result<ObstructionOutcome, LoError> {
    let report = is_cofinal_on_ball(cone, g, radius, bound, cap)?;
    let (certificate, reason) = match exactness(cone, &report, assume_cofinal) {
        Ok(ex) => {
            let one = g.group().identity();
            let cert = Certificate::cofinality(
                cone,
                &cone.reverse(),
                &report.g,
                radius,
                bound,
                &one,
                &report.g,
                ex.reason,
                ex.tainted,
            );
            (Some(cert), ex.reason.to_string())
        }
        Err(reason) => (None, reason),
    };
    Ok(ObstructionOutcome {
        report,
        certificate,
        reason,
    })
}

/// A term in the kernel of `P` up to a radius that moves a point under `Q`.
#[derive(Debug, Clone)]
pub struct Falsification {
    pub term_index: usize,
    pub term: LTerm,
    pub radius: usize,
    pub h: Word,
    pub image: Word,
    /// Present when the term's triviality under `P` is exact.
    pub certificate: Option<Certificate>,
    pub note: String,
}

/// `g` when `t` is `g /\ 1` or `1 /\ g`.
fn meet_with_one(t: &LTerm) -> Option<&Word> {
    match t {
        LTerm::Meet(a, b) => match (&**a, &**b) {
            (LTerm::Elem(g), LTerm::Elem(one)) | (LTerm::Elem(one), LTerm::Elem(g))
                if one.is_identity() && !g.is_identity() =>
            {
                Some(g)
            }
            _ => None,
        },
        _ => None,
    }
}

/// Searches `terms` for one trivial on `ball(radius)` under `P` but moving
/// a point under `Q`. Terms of the form `g /\ 1` with `g` positive and
/// structurally cofinal yield a certificate that `Q` is not in the orbit
/// closure of `P`; anything else is evidence at `radius` only.
#[allow(clippy::too_many_arguments)]
pub fn kernel_containment_falsifier(
    base: &PositiveCone,
    target: &PositiveCone,
    terms: &[LTerm],
    radius: usize,
    bound: u32,
    assume_cofinal: bool,
    cap: usize,
    row_cap: usize,
) -> Result<Option<Falsification>, LoError> {
    for (k, t) in terms.iter().enumerate() {
        if !acts_trivially_on_ball(base, t, radius, cap, row_cap)?.is_trivial_up_to() {
            continue;
        }
        let KernelVerdict::ProofNontrivial { h, image } =
            acts_trivially_on_ball(target, t, radius, cap, row_cap)?
        else {
            continue;
        };
        let mut certificate = None;
        let mut note = format!("evidence at radius {radius}: kernel triviality under the base cone is not exact");
        if let Some(g) = meet_with_one(t) {
            if base.sign(g)? == Sign::Pos {
                let report = is_cofinal_on_ball(base, g, radius, bound, cap)?;
                match exactness(base, &report, assume_cofinal) {
                    Ok(ex) => {
                        certificate = Some(Certificate::cofinality(
                            base, target, g, radius, bound, &h, &image, ex.reason, ex.tainted,
                        ));
                        note = ex.reason.to_string();
                    }
                    Err(reason) => note = format!("evidence at radius {radius}: {reason}"),
                }
            }
        }
        return Ok(Some(Falsification {
            term_index: k,
            term: t.clone(),
            radius,
            h,
            image,
            certificate,
            note,
        }));
    }
    Ok(None)
}

/// Re-evaluates `g /\ 1` under `target` at `h`.
pub(super) fn meet_image(target: &PositiveCone, g: &Word, h: &Word) -> Result<Word, LoError> {
    let t = LTerm::meet(LTerm::Elem(g.clone()), LTerm::Elem(g.group().identity()));
    let form = normalize(&t, 2)?;
    Ok(eval_form(target, &form, h)?.output)
}
