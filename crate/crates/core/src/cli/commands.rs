use std::cmp::Ordering;
use std::fs;
use std::io::Read;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CliError, Command, Ctx, Out, Status};
use crate::lgroup::{
    basic_element_check, eval_form, nontriviality_witness, normalize,
};
use crate::lo_space::{
    cofinal_obstruction, cones_in_open_set, finite_or_uncountable_check, isolated_scan,
    kernel_containment_falsifier, minimal_invariant_sets, orbit_closure_contains, orbit_points,
    tararin_conjugator, verify_certificate, Certificate, IsolationOutcome, OpenSetSpec,
};
use crate::orderings::{
    is_cofinal_on_ball, is_conradian_on_ball, ConeSearch, LoSpace, OrderError, Sign, SignSequence,
};

const DEFAULT_RADIUS: usize = 3;
const DEFAULT_CONJ_RADIUS: usize = 2;
const DEFAULT_BOUND: u32 = 10;
const DEFAULT_SAMPLES: usize = 1000;

pub(super) fn dispatch(cmd: Command, ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    match cmd {
        Command::EnumerateCones => enumerate_cones(ctx, out),
        Command::OpenSet => open_set(ctx, out),
        Command::IsolatedScan => isolated(ctx, out),
        Command::Orbit => orbit(ctx, out),
        Command::OrbitContains => orbit_contains(ctx, out),
        Command::KernelFalsify => kernel_falsify(ctx, out),
        Command::CofinalObstruction => obstruction(ctx, out),
        Command::TararinConjugator => conjugator(ctx, out),
        Command::MinimalSets => minimal_sets(ctx, out),
        Command::FiniteCheck => finite_check(ctx, out),
        Command::EvalTerm => eval_term(ctx, out),
        Command::NormalizeTerm => normalize_term(ctx, out),
        Command::NontrivialWitness => nontrivial(ctx, out),
        Command::BasicCheck => basic(ctx, out),
        Command::ConradianCheck => conradian(ctx, out),
        Command::CofinalCheck => cofinal(ctx, out),
        Command::VerifyCertificate => verify(ctx, out),
        Command::AxiomsCheck => axioms(ctx, out),
    }
}

fn certificate(out: &mut Out, cert: &Certificate) {
    out.say("");
    out.raw(&cert.to_records());
}

fn enumerate_cones(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let group = ctx.group()?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let constraints = match &ctx.cfg.spec {
        Some(s) => group.parse_word_list(s)?,
        None => Vec::new(),
    };
    let search = ConeSearch::new(group, r, ctx.cfg.cap)?;
    let keep = if ctx.cfg.list { usize::MAX } else { 0 };
    let c = search.count(&constraints, ctx.cfg.limit, keep)?;
    out.say(format!(
        "consistent sign assignments on ball({r}) of {group} ({} elements); finite shadows, not claimed to extend",
        c.ball_size
    ));
    out.kv("group", group);
    out.kv("radius", r);
    out.kv("ball", c.ball_size);
    out.kv("count", c.count);
    out.kv("exhaustive", c.exhaustive);
    for a in &c.witnesses {
        out.kv("assignment", a);
    }
    Ok(Status::Verdict)
}

fn open_set(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let group = ctx.group()?;
    let spec = OpenSetSpec::parse(group, ctx.cfg.spec.as_deref().ok_or_else(|| CliError::Usage("missing --spec".into()))?)?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let all = cones_in_open_set(&spec, r, ctx.cfg.cap)?;
    out.say(format!("assignments on ball({r}) with {{{spec}}} positive"));
    out.kv("radius", r);
    out.kv("count", all.len());
    for a in &all {
        out.kv("assignment", a);
    }
    Ok(Status::Verdict)
}

fn isolated(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let group = ctx.group()?;
    let spec = OpenSetSpec::parse(group, ctx.cfg.spec.as_deref().ok_or_else(|| CliError::Usage("missing --spec".into()))?)?;
    let radii = ctx.radii("1..3")?;
    let scan = isolated_scan(&spec, &radii, ctx.cfg.cap)?;
    for (r, c) in &scan.counts {
        out.kv(&format!("count_r{r}"), if *c >= 2 { ">=2".to_string() } else { c.to_string() });
    }
    match &scan.outcome {
        IsolationOutcome::Certified(cert) => {
            out.kv("verdict", "isolated-up-to-radius");
            certificate(out, cert);
        }
        IsolationOutcome::Refuted { radius, first, second } => {
            out.kv("verdict", "refuted");
            out.kv("radius", radius);
            out.kv("first", first);
            out.kv("second", second);
        }
        IsolationOutcome::Empty { radius } => {
            out.kv("verdict", "empty");
            out.kv("radius", radius);
        }
    }
    Ok(Status::Verdict)
}

fn orbit(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let cone = ctx.cone()?;
    let s = ctx.conj_radius(DEFAULT_CONJ_RADIUS);
    let r = ctx.radius(DEFAULT_RADIUS);
    let report = orbit_points(cone, s, r, ctx.cfg.cap)?;
    out.say(format!("restrictions to ball({r}) of f P f^-1 for f in ball({s})"));
    out.kv("cone", cone);
    out.kv("conj_radius", s);
    out.kv("radius", r);
    out.kv("points", report.points.len());
    for p in &report.points {
        out.kv("conjugator", &p.conjugator);
    }
    if let Some(path) = &ctx.cfg.emit_dot {
        let dot = report.to_dot();
        if path.as_os_str() == "-" {
            out.raw(&dot);
        } else {
            fs::write(path, dot).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
        }
    }
    Ok(Status::Verdict)
}

fn orbit_contains(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let p = ctx.cone()?;
    let q = ctx.target()?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let s = ctx.conj_radius(DEFAULT_CONJ_RADIUS);
    match orbit_closure_contains(q, p, r, s, ctx.cfg.cap)? {
        Some(cert) => {
            out.kv("verdict", "witness-found");
            out.kv("conjugator", cert.get("conjugator").unwrap_or(""));
            certificate(out, &cert);
            Ok(Status::Verdict)
        }
        None => {
            out.say(format!("no conjugator in ball({s}) matches on ball({r}); inconclusive"));
            out.kv("verdict", "not-found");
            out.kv("conj_radius", s);
            Ok(Status::Inconclusive)
        }
    }
}

fn kernel_falsify(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let p = ctx.cone()?;
    let q = ctx.target()?;
    let terms = ctx.terms()?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let bound = ctx.cfg.bound.unwrap_or(DEFAULT_BOUND);
    let found = kernel_containment_falsifier(
        p,
        q,
        &terms,
        r,
        bound,
        ctx.cfg.assume_cofinal,
        ctx.cfg.cap,
        ctx.cfg.row_cap,
    )?;
    let Some(f) = found else {
        out.say(format!("no term in the family separates the kernels at radius {r}; inconclusive"));
        out.kv("verdict", "none-found");
        return Ok(Status::Inconclusive);
    };
    out.kv("verdict", if f.certificate.is_some() { "certificate" } else { "evidence" });
    out.kv("term", &f.term);
    out.kv("radius", f.radius);
    out.kv("witness", &f.h);
    out.kv("image", &f.image);
    out.kv("note", &f.note);
    if let Some(c) = &f.certificate {
        certificate(out, c);
    }
    Ok(Status::Verdict)
}

fn obstruction(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let p = ctx.cone()?;
    let g = ctx.word(ctx.cfg.element.as_deref(), "element")?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let bound = ctx.cfg.bound.unwrap_or(DEFAULT_BOUND);
    let o = cofinal_obstruction(p, &g, r, bound, ctx.cfg.assume_cofinal, ctx.cfg.cap)?;
    out.kv("cofinal_up_to", o.report.is_cofinal_up_to());
    out.kv("reason", &o.reason);
    match &o.certificate {
        Some(c) => {
            out.kv("verdict", "certificate");
            certificate(out, c);
            Ok(Status::Verdict)
        }
        None => {
            out.kv("verdict", "evidence-only");
            Ok(Status::Inconclusive)
        }
    }
}

fn sequence(text: Option<&str>, flag: &str) -> Result<SignSequence, CliError> {
    let text = text.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))?;
    SignSequence::parse(text).ok_or_else(|| CliError::Usage(format!("bad sign sequence {text:?}")))
}

fn conjugator(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let group = ctx.group()?;
    let from = sequence(ctx.cfg.from.as_deref(), "from")?;
    let to = sequence(ctx.cfg.to.as_deref(), "to")?;
    let n = ctx.cfg.n.unwrap_or(from.len());
    let c = tararin_conjugator(group, &from, &to, n, ctx.cfg.cap)?;
    let flips: Vec<String> = c.flips.iter().map(usize::to_string).collect();
    out.kv("g", &c.g);
    out.kv("flips", flips.join(","));
    out.kv("checked", c.checked);
    out.kv("verified", c.verified());
    Ok(Status::Verdict)
}

fn minimal_sets(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let space = LoSpace::complete(ctx.group()?)?;
    let rep = minimal_invariant_sets(&space, ctx.conj_radius(1), ctx.cfg.cap)?;
    out.say(format!(
        "orbits of the {} orderings of {} under conjugators of length <= {}",
        space.len(),
        rep.group,
        rep.conj_radius
    ));
    out.kv("sets", rep.sets.len());
    for set in &rep.sets {
        let names: Vec<String> = set.iter().map(|&k| space.cones()[k].to_string()).collect();
        out.kv("set", names.join(" "));
    }
    let sizes: Vec<String> = rep.sizes().iter().map(usize::to_string).collect();
    out.kv("sizes", sizes.join(","));
    out.kv("condition_verified", rep.condition_verified);
    Ok(Status::Verdict)
}

fn finite_check(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let space = LoSpace::complete(ctx.group()?)?;
    let rep = finite_or_uncountable_check(&space, ctx.cfg.cap)?;
    out.kv("size", rep.size);
    out.kv("finite", true);
    out.kv("all_isolated", true);
    for (cone, fam) in space.cones().iter().zip(&rep.isolating) {
        let words: Vec<String> = fam.iter().map(|w| w.to_string()).collect();
        out.kv("isolating", format!("{cone} {{{}}}", words.join(", ")));
    }
    Ok(Status::Verdict)
}

fn eval_term(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let cone = ctx.cone()?;
    let t = ctx.term()?;
    let h = ctx.word(Some(ctx.cfg.point.as_deref().unwrap_or("1")), "point")?;
    let form = normalize(&t, ctx.cfg.row_cap)?;
    let r = eval_form(cone, &form, &h)?;
    out.say(r.output.to_string());
    out.say(r.to_string());
    out.kv("point", &r.point);
    out.kv("output", &r.output);
    out.kv("row", r.row);
    out.kv("col", r.col);
    Ok(Status::Verdict)
}

fn normalize_term(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let t = ctx.term()?;
    let form = normalize(&t, ctx.cfg.row_cap)?;
    out.say(form.to_term().to_string());
    out.kv("rows", form.rows().len());
    out.kv("form", &form);
    Ok(Status::Verdict)
}

fn nontrivial(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    if ctx.cones.is_empty() {
        return Err(CliError::Usage("missing --cone".into()));
    }
    let t = ctx.term()?;
    let r = ctx.radius(DEFAULT_RADIUS);
    match nontriviality_witness(&t, &ctx.cones, r, ctx.cfg.cap, ctx.cfg.row_cap)? {
        Some(w) => {
            out.kv("verdict", "nontrivial");
            out.kv("cone", &ctx.cones[w.cone]);
            out.kv("witness", &w.h);
            out.kv("image", &w.image);
            Ok(Status::Verdict)
        }
        None => {
            out.say(format!("every point of ball({r}) is fixed under every cone; inconclusive"));
            out.kv("verdict", "none-found");
            Ok(Status::Inconclusive)
        }
    }
}

fn basic(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let group = ctx.group()?;
    let space = LoSpace::complete(group)?;
    let t = ctx.term()?;
    let v = basic_element_check(&t, &space, ctx.cfg.row_cap)?;
    let names = |ix: &[usize]| {
        ix.iter()
            .map(|&k| space.cones()[k].to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.kv("verdict", if v.is_basic() { "basic" } else { "not-basic" });
    out.kv("above", v.above.len());
    out.kv("below", v.below.len());
    out.kv("total", v.total);
    out.kv("above_cones", names(&v.above));
    if let Some(k) = v.unique_cone() {
        let cert = Certificate::basic_element(group, &t, &space.cones()[k], v.total);
        certificate(out, &cert);
    }
    Ok(Status::Verdict)
}

fn conradian(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let cone = ctx.cone()?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let rep = is_conradian_on_ball(cone, r, ctx.cfg.cap)?;
    out.kv("radius", r);
    out.kv("positives", rep.positives);
    out.kv("violations", rep.violations.len());
    out.kv(
        "verdict",
        if rep.is_conradian_up_to_radius() { "conradian-up-to-radius" } else { "not-conradian" },
    );
    for v in rep.violations.iter().take(10) {
        out.kv("violation", format!("g={} h={}", v.g, v.h));
    }
    Ok(Status::Verdict)
}

fn cofinal(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let cone = ctx.cone()?;
    let g = ctx.word(ctx.cfg.element.as_deref(), "element")?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let bound = ctx.cfg.bound.unwrap_or(DEFAULT_BOUND);
    let rep = is_cofinal_on_ball(cone, &g, r, bound, ctx.cfg.cap)?;
    out.kv("g", &rep.g);
    out.kv("radius", r);
    out.kv("bound", bound);
    out.kv("verdict", if rep.is_cofinal_up_to() { "cofinal-up-to" } else { "not-cofinal" });
    if let Some(m) = rep.max_exponent() {
        out.kv("max_exponent", m);
    }
    for h in rep.failures().take(10) {
        out.kv("failure", h);
    }
    Ok(Status::Verdict)
}

fn verify(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let path = ctx
        .cfg
        .file
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing --file".into()))?;
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        s
    } else {
        fs::read_to_string(path).map_err(io)?
    };
    let cert = Certificate::parse(&text)?;
    let v = verify_certificate(&cert, ctx.cfg.cap)?;
    out.kv("certificate", cert.kind());
    out.kv("holds", v.holds);
    out.kv("tainted", cert.is_tainted());
    out.kv("detail", &v.detail);
    if v.holds {
        Ok(Status::Verdict)
    } else {
        Err(CliError::Usage(format!("certificate does not hold: {}", v.detail)))
    }
}

/// Samples triples from a ball and checks trichotomy, left invariance and
/// closure of the cone; right invariance is reported but not required.
fn axioms(ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let cone = ctx.cone()?;
    let r = ctx.radius(DEFAULT_RADIUS);
    let samples = ctx.cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let ball = cone.group().enumerate_ball(r, ctx.cfg.cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    let (mut trichotomy, mut left, mut closure, mut right, mut skipped) = (0, 0, 0, 0, 0);
    let elements = ball.elements();
    for _ in 0..samples {
        let pick = |rng: &mut ChaCha8Rng| elements.choose(rng).expect("balls are nonempty").clone();
        let (f, g, h) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let check = || -> Result<[bool; 4], OrderError> {
            let tri = g.is_identity() || (cone.sign(&g)? == Sign::Pos) != (cone.sign(&g.inverse())? == Sign::Pos);
            let cmp = cone.compare(&g, &h)?;
            let l = cmp == cone.compare(&f.mul(&g)?, &f.mul(&h)?)?;
            let rt = cmp == cone.compare(&g.mul(&f)?, &h.mul(&f)?)?;
            let c = !(cone.is_positive(&g)? && cone.is_positive(&h)?) || cone.is_positive(&g.mul(&h)?)?;
            Ok([tri, l, c, rt || cmp == Ordering::Equal])
        };
        match check() {
            Ok([tri, l, c, rt]) => {
                trichotomy += usize::from(!tri);
                left += usize::from(!l);
                closure += usize::from(!c);
                right += usize::from(!rt);
            }
            Err(OrderError::OutsideDomain { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    out.kv("samples", samples);
    out.kv("seed", ctx.cfg.seed);
    out.kv("trichotomy_violations", trichotomy);
    out.kv("left_invariance_violations", left);
    out.kv("closure_violations", closure);
    out.kv("right_invariance_violations", right);
    out.kv("skipped", skipped);
    Ok(Status::Verdict)
}
