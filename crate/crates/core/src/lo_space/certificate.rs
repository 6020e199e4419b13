//! Re-checkable certificates, serialized as `key=value` records.

use std::fmt;

use super::kernel::{known_cofinal, meet_image};
use super::{isolated_scan, IsolationOutcome, LoError, OpenSetSpec};
use crate::group::{Group, Word};
use crate::lgroup::{acts_trivially_on_ball, basic_element_check, LTerm, DEFAULT_ROW_CAP};
use crate::orderings::{is_cofinal_on_ball, LoSpace, PositiveCone, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    CofinalityObstruction,
    BasicElement,
    IsolationUpToRadius,
    OrbitMembershipWitness,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::CofinalityObstruction => "cofinality-obstruction",
            CertificateKind::BasicElement => "basic-element",
            CertificateKind::IsolationUpToRadius => "isolation-up-to-radius",
            CertificateKind::OrbitMembershipWitness => "orbit-membership-witness",
        }
    }

    pub fn parse(s: &str) -> Option<CertificateKind> {
        [
            CertificateKind::CofinalityObstruction,
            CertificateKind::BasicElement,
            CertificateKind::IsolationUpToRadius,
            CertificateKind::OrbitMembershipWitness,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    kind: CertificateKind,
    statement: String,
    fields: Vec<(String, String)>,
}

impl Certificate {
    fn build(kind: CertificateKind, statement: String, fields: &[(&str, String)]) -> Certificate {
        Certificate {
            kind,
            statement,
            fields: fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    pub(super) fn isolation(spec: &OpenSetSpec, counts: &[(usize, usize)]) -> Certificate {
        let radii: Vec<String> = counts.iter().map(|(r, _)| r.to_string()).collect();
        let n: Vec<String> = counts.iter().map(|(_, c)| c.to_string()).collect();
        Certificate::build(
            CertificateKind::IsolationUpToRadius,
            format!(
                "exactly one consistent assignment makes {{{spec}}} positive at radii {}",
                radii.join(",")
            ),
            &[
                ("group", spec.group().to_string()),
                ("spec", spec.to_string()),
                ("radii", radii.join(",")),
                ("counts", n.join(",")),
            ],
        )
    }

    pub(super) fn orbit_membership(
        base: &PositiveCone,
        target: &PositiveCone,
        f: &Word,
        radius: usize,
    ) -> Certificate {
        Certificate::build(
            CertificateKind::OrbitMembershipWitness,
            format!("conj({f}, {base}) agrees with {target} on ball({radius})"),
            &[
                ("group", base.group().to_string()),
                ("cone", base.to_string()),
                ("target", target.to_string()),
                ("conjugator", f.to_string()),
                ("radius", radius.to_string()),
            ],
        )
    }

    pub fn basic_element(group: Group, term: &LTerm, cone: &PositiveCone, total: usize) -> Certificate {
        Certificate::build(
            CertificateKind::BasicElement,
            format!("{term} is a basic element: t(1) > 1 only under {cone}, t(1) >= 1 under all {total} orderings"),
            &[
                ("group", group.to_string()),
                ("term", term.to_string()),
                ("cone", cone.to_string()),
                ("total", total.to_string()),
            ],
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub(super) fn cofinality(
        base: &PositiveCone,
        target: &PositiveCone,
        g: &Word,
        radius: usize,
        bound: u32,
        h: &Word,
        image: &Word,
        reason: &str,
        tainted: bool,
    ) -> Certificate {
        Certificate::build(
            CertificateKind::CofinalityObstruction,
            format!("{target} is not in the orbit closure of {base}"),
            &[
                ("group", base.group().to_string()),
                ("cone", base.to_string()),
                ("target", target.to_string()),
                ("g", g.to_string()),
                ("term", format!("{g} /\\ 1")),
                ("radius", radius.to_string()),
                ("bound", bound.to_string()),
                ("witness", h.to_string()),
                ("image", image.to_string()),
                ("cofinal", reason.to_string()),
                ("tainted", tainted.to_string()),
            ],
        )
    }

    pub fn kind(&self) -> CertificateKind {
        self.kind
    }

    pub fn statement(&self) -> &str {
        &self.statement
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn is_tainted(&self) -> bool {
        self.get("tainted") == Some("true")
    }

    pub fn to_records(&self) -> String {
        let mut out = format!("certificate={}\nstatement={}\n", self.kind, self.statement);
        for (k, v) in &self.fields {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }

    /// Reads the output of [`Certificate::to_records`]. Blank lines and
    /// `#` comments are skipped; unknown keys are kept.
    pub fn parse(text: &str) -> Result<Certificate, LoError> {
        let bad = |m: String| LoError::BadCertificate(m);
        let mut kind = None;
        let mut statement = String::new();
        let mut fields = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, found {line:?}")))?;
            match k {
                "certificate" => {
                    kind = Some(CertificateKind::parse(v).ok_or_else(|| bad(format!("unknown kind {v:?}")))?)
                }
                "statement" => statement = v.to_string(),
                _ => fields.push((k.to_string(), v.to_string())),
            }
        }
        Ok(Certificate {
            kind: kind.ok_or_else(|| bad("missing certificate= line".into()))?,
            statement,
            fields,
        })
    }

    fn need(&self, key: &str) -> Result<&str, LoError> {
        self.get(key)
            .ok_or_else(|| LoError::BadCertificate(format!("missing field {key}")))
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<T, LoError> {
        self.need(key)?
            .parse()
            .map_err(|_| LoError::BadCertificate(format!("field {key} is not a number")))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_records())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub holds: bool,
    pub detail: String,
}

impl Verification {
    fn ok(detail: impl Into<String>) -> Verification {
        Verification {
            holds: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Verification {
        Verification {
            holds: false,
            detail: detail.into(),
        }
    }
}

/// Re-derives a certificate from its supporting data alone.
pub fn verify_certificate(cert: &Certificate, cap: usize) -> Result<Verification, LoError> {
    let group = Group::parse(cert.need("group")?)?;
    match cert.kind {
        CertificateKind::OrbitMembershipWitness => {
            let p = PositiveCone::parse(group, cert.need("cone")?)?;
            let q = PositiveCone::parse(group, cert.need("target")?)?;
            let f = group.parse_word(cert.need("conjugator")?)?;
            let r: usize = cert.number("radius")?;
            let ball = group.enumerate_ball(r, cap)?;
            let a = p.conjugate(&f)?.restrict(&ball)?;
            let b = q.restrict(&ball)?;
            let diffs = a.iter().zip(&b).filter(|(x, y)| x != y).count();
            Ok(if diffs == 0 {
                Verification::ok(format!("signs agree on all {} elements of ball({r})", ball.len()))
            } else {
                Verification::fail(format!("{diffs} sign mismatches on ball({r})"))
            })
        }
        CertificateKind::IsolationUpToRadius => {
            let spec = OpenSetSpec::parse(group, cert.need("spec")?)?;
            let radii: Vec<usize> = cert
                .need("radii")?
                .split(',')
                .map(|r| r.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| LoError::BadCertificate("bad radii".into()))?;
            let scan = isolated_scan(&spec, &radii, cap)?;
            Ok(match scan.outcome {
                IsolationOutcome::Certified(_) => {
                    Verification::ok(format!("count 1 at radii {}", cert.need("radii")?))
                }
                _ => Verification::fail(format!("counts {:?}", scan.counts)),
            })
        }
        CertificateKind::BasicElement => {
            let t = LTerm::parse(group, cert.need("term")?)?;
            let space = LoSpace::complete(group)?;
            let v = basic_element_check(&t, &space, DEFAULT_ROW_CAP)?;
            let want = cert.need("cone")?;
            Ok(match v.unique_cone() {
                Some(k) if space.cones()[k].to_string() == want && v.total == cert.number::<usize>("total")? => {
                    Verification::ok(format!("unique cone {want} of {}", v.total))
                }
                _ => Verification::fail(format!(
                    "{} cones with t(1) > 1, {} with t(1) < 1",
                    v.above.len(),
                    v.below.len()
                )),
            })
        }
        CertificateKind::CofinalityObstruction => {
            let p = PositiveCone::parse(group, cert.need("cone")?)?;
            let q = PositiveCone::parse(group, cert.need("target")?)?;
            let g = group.parse_word(cert.need("g")?)?;
            let r: usize = cert.number("radius")?;
            let bound: u32 = cert.number("bound")?;
            let h = group.parse_word(cert.need("witness")?)?;
            if !p.is_full() {
                return Ok(Verification::fail("base cone is not a full cone"));
            }
            if g.is_identity() || p.sign(&g)? != Sign::Pos {
                return Ok(Verification::fail(format!("{g} is not positive under {p}")));
            }
            let source = match (known_cofinal(&g), cert.is_tainted()) {
                (Some(reason), _) => reason.to_string(),
                (None, true) => "assumed (tainted)".to_string(),
                (None, false) => return Ok(Verification::fail(format!("{g} is not known to be cofinal"))),
            };
            if !is_cofinal_on_ball(&p, &g, r, bound, cap)?.is_cofinal_up_to() {
                return Ok(Verification::fail(format!("cofinality check fails on ball({r})")));
            }
            let t = LTerm::meet(LTerm::Elem(g.clone()), LTerm::Elem(group.identity()));
            if !acts_trivially_on_ball(&p, &t, r, cap, DEFAULT_ROW_CAP)?.is_trivial_up_to() {
                return Ok(Verification::fail("term moves a point under the base cone"));
            }
            let image = meet_image(&q, &g, &h)?;
            let stated = group.parse_word(cert.need("image")?)?;
            if stated != image {
                return Ok(Verification::fail(format!("stated image {stated}, recomputed {image}")));
            }
            Ok(if image != h {
                Verification::ok(format!("{g} cofinal ({source}); under the target, {h} -> {image}"))
            } else {
                Verification::fail(format!("term fixes {h} under the target"))
            })
        }
    }
}
