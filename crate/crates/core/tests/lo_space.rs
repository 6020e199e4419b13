use std::collections::HashSet;

use ordlat::group::{Group, Word, DEFAULT_CAP};
use ordlat::lgroup::{LTerm, DEFAULT_ROW_CAP};
use ordlat::lo_space::{
    cofinal_obstruction, cones_in_open_set, finite_or_uncountable_check, isolated_scan,
    kernel_containment_falsifier, minimal_invariant_sets, orbit_closure_contains, orbit_points,
    tararin_conjugator, verify_certificate, Certificate, CertificateKind, IsolationOutcome, LoError,
    OpenSetSpec,
};
use ordlat::orderings::{LoSpace, PositiveCone, SignSequence};

fn cone(g: Group, spec: &str) -> PositiveCone {
    PositiveCone::parse(g, spec).unwrap()
}

fn w(g: Group, s: &str) -> Word {
    g.parse_word(s).unwrap()
}

fn seq(s: &str) -> SignSequence {
    SignSequence::parse(s).unwrap()
}

fn holds(c: &Certificate) -> bool {
    // verification works from the printed records alone
    let reparsed = Certificate::parse(&c.to_records()).unwrap();
    verify_certificate(&reparsed, DEFAULT_CAP).unwrap().holds
}

#[test]
fn open_set_examples() {
    let z = Group::Zn { rank: 1 };
    assert_eq!(cones_in_open_set(&OpenSetSpec::parse(z, "a").unwrap(), 3, DEFAULT_CAP).unwrap().len(), 1);
    let t = Group::Tararin { n: 2 };
    let spec = OpenSetSpec::parse(t, "x1,x2").unwrap();
    let found = cones_in_open_set(&spec, 4, DEFAULT_CAP).unwrap();
    assert_eq!(found.len(), 1);
    let ball = found[0].ball();
    assert_eq!(found[0].signs(), &cone(t, "tararin:+,+").restrict(ball).unwrap()[..]);
    let f = Group::Free { rank: 2 };
    for r in 1..=3 {
        assert!(cones_in_open_set(&OpenSetSpec::parse(f, "a,a^-1").unwrap(), r, DEFAULT_CAP)
            .unwrap()
            .is_empty());
    }
    for a in cones_in_open_set(&OpenSetSpec::parse(f, "a*b,b^-1").unwrap(), 2, DEFAULT_CAP).unwrap() {
        assert!(a.positives().any(|p| *p == w(f, "a*b")));
        assert!(a.positives().any(|p| *p == w(f, "b^-1")));
    }
}

#[test]
fn isolation_examples() {
    let radii = [1, 2, 3, 4, 5];
    for (g, spec) in [(Group::Zn { rank: 1 }, "a"), (Group::Tararin { n: 2 }, "x1,x2")] {
        let scan = isolated_scan(&OpenSetSpec::parse(g, spec).unwrap(), &radii, DEFAULT_CAP).unwrap();
        assert_eq!(scan.counts, radii.iter().map(|&r| (r, 1)).collect::<Vec<_>>());
        let IsolationOutcome::Certified(cert) = scan.outcome else {
            panic!("{g} {spec}")
        };
        assert_eq!(cert.kind(), CertificateKind::IsolationUpToRadius);
        assert!(holds(&cert));
    }
    let f = Group::Free { rank: 2 };
    let scan = isolated_scan(&OpenSetSpec::parse(f, "a,b").unwrap(), &[1, 2, 3], DEFAULT_CAP).unwrap();
    let IsolationOutcome::Refuted { radius, first, second } = scan.outcome else {
        panic!()
    };
    assert!(radius <= 3);
    assert_ne!(first, second);
    assert!(first.is_consistent() && second.is_consistent());
    assert!(matches!(isolated_scan(&OpenSetSpec::parse(f, "a").unwrap(), &[2, 1], DEFAULT_CAP), Err(LoError::BadSchedule)));
}

/// Generator sign patterns isolate every ordering of a Tararin group.
#[test]
fn tararin_points_are_isolated_by_generator_signs() {
    for n in 1..=4u32 {
        let g = Group::Tararin { n };
        for eps in SignSequence::all(n as usize) {
            let spec: Vec<Word> = eps
                .0
                .iter()
                .enumerate()
                .map(|(i, s)| g.generator(i as u32).unwrap().pow(s.as_i8() as i64))
                .collect();
            let scan = isolated_scan(&OpenSetSpec::new(g, spec).unwrap(), &[1, 2, 3], DEFAULT_CAP).unwrap();
            assert!(matches!(scan.outcome, IsolationOutcome::Certified(_)), "{g} {eps}");
        }
    }
}

#[test]
fn orbit_examples() {
    let z = Group::Zn { rank: 2 };
    assert_eq!(orbit_points(&cone(z, "lex:perm=2,1;signs=-,+"), 3, 3, DEFAULT_CAP).unwrap().points.len(), 1);

    // conjugation flips eps_1 only: the top sign of T_2 is invariant
    let t = Group::Tararin { n: 2 };
    let rep = orbit_points(&cone(t, "tararin:+,+"), 2, 3, DEFAULT_CAP).unwrap();
    let ball = &rep.ball;
    let expected: HashSet<Vec<i8>> = ["tararin:+,+", "tararin:-,+"]
        .iter()
        .map(|s| cone(t, s).restrict(ball).unwrap())
        .collect();
    let got: HashSet<Vec<i8>> = rep.points.iter().map(|p| p.signs.clone()).collect();
    assert_eq!(got, expected);
    assert_eq!(rep.points[1].conjugator, w(t, "x2"));
    for p in &rep.points {
        assert_eq!(cone(t, "tararin:+,+").conjugate(&p.conjugator).unwrap().restrict(ball).unwrap(), p.signs);
    }
    assert!(rep.to_dot().starts_with("digraph"));

    let b = Group::Braid { n: 3 };
    assert!(orbit_points(&cone(b, "dehornoy"), 1, 2, DEFAULT_CAP).unwrap().points.len() >= 2);
}

#[test]
fn orbit_membership_examples() {
    let t3 = Group::Tararin { n: 3 };
    let p = cone(t3, "tararin:+,+,+");
    let same = orbit_closure_contains(&p, &p, 3, 2, DEFAULT_CAP).unwrap().unwrap();
    assert_eq!(same.get("conjugator"), Some("1"));
    let cert = orbit_closure_contains(&cone(t3, "tararin:-,+,+"), &p, 3, 2, DEFAULT_CAP).unwrap().unwrap();
    assert_eq!(cert.get("conjugator"), Some("x2"));
    assert!(holds(&cert));

    let z = Group::Zn { rank: 2 };
    let lex = cone(z, "lex");
    for s in 0..=3 {
        assert!(orbit_closure_contains(&cone(z, "lex:perm=2,1"), &lex, 2, s, DEFAULT_CAP).unwrap().is_none());
    }
}

#[test]
fn falsifier_examples() {
    let z = Group::Zn { rank: 1 };
    let lex = cone(z, "lex");
    let t = LTerm::parse(z, "a /\\ 1").unwrap();
    let f = kernel_containment_falsifier(&lex, &lex.reverse(), &[t], 3, 10, false, DEFAULT_CAP, DEFAULT_ROW_CAP)
        .unwrap()
        .unwrap();
    let cert = f.certificate.unwrap();
    assert!(!cert.is_tainted());
    assert!(holds(&cert));

    let b = Group::Braid { n: 3 };
    let d = cone(b, "dehornoy");
    let full = b.garside_half_twist().unwrap().pow(2);
    let t = LTerm::meet(LTerm::elem(full), LTerm::elem(b.identity()));
    let f = kernel_containment_falsifier(&d, &d.reverse(), &[t], 2, 4, false, DEFAULT_CAP, DEFAULT_ROW_CAP)
        .unwrap()
        .unwrap();
    assert!(holds(&f.certificate.unwrap()));

    // same orbit: nothing in the family separates the kernels
    let t2 = Group::Tararin { n: 2 };
    let family: Vec<LTerm> = ["x1 /\\ 1", "x2 /\\ 1", "x1^-1 /\\ 1", "x2*x1 /\\ 1", "(x1 /\\ x2) \\/ 1", "x2^-1 \\/ 1"]
        .iter()
        .map(|s| LTerm::parse(t2, s).unwrap())
        .collect();
    for r in 1..=4 {
        let found = kernel_containment_falsifier(
            &cone(t2, "tararin:+,+"),
            &cone(t2, "tararin:-,+"),
            &family,
            r,
            10,
            false,
            DEFAULT_CAP,
            DEFAULT_ROW_CAP,
        )
        .unwrap();
        assert!(found.is_none(), "r={r}");
    }
}

#[test]
fn obstruction_examples() {
    let z = Group::Zn { rank: 1 };
    let out = cofinal_obstruction(&cone(z, "lex"), &w(z, "a"), 5, 6, false, DEFAULT_CAP).unwrap();
    assert!(holds(&out.certificate.unwrap()));

    let b = Group::Braid { n: 3 };
    let full = b.garside_half_twist().unwrap().pow(2);
    let out = cofinal_obstruction(&cone(b, "dehornoy"), &full, 3, 4, false, DEFAULT_CAP).unwrap();
    let cert = out.certificate.unwrap();
    assert_eq!(cert.kind(), CertificateKind::CofinalityObstruction);
    assert!(holds(&cert));

    let z2 = Group::Zn { rank: 2 };
    let out = cofinal_obstruction(&cone(z2, "lex"), &w(z2, "b"), 3, 10, false, DEFAULT_CAP).unwrap();
    assert!(out.certificate.is_none());
    assert!(!out.report.is_cofinal_up_to());
}

#[test]
fn conjugator_examples() {
    let t4 = Group::Tararin { n: 4 };
    let same = tararin_conjugator(t4, &seq("+,-,+"), &seq("+,-,+"), 3, DEFAULT_CAP).unwrap();
    assert!(same.g.is_identity());
    let t2 = Group::Tararin { n: 2 };
    let c = tararin_conjugator(t2, &seq("+,+"), &seq("-,+"), 2, DEFAULT_CAP).unwrap();
    assert_eq!(c.g, w(t2, "x2"));
    assert!(c.verified());
    let c = tararin_conjugator(t4, &seq("+,-,+"), &seq("-,+,+"), 3, DEFAULT_CAP).unwrap();
    assert_eq!(c.g, w(t4, "x3*x2"));
    assert_eq!(c.flips, vec![1, 2]);
    assert!(c.verified() && c.checked > 0);
    assert!(matches!(
        tararin_conjugator(t2, &seq("+,+"), &seq("+,-"), 2, DEFAULT_CAP),
        Err(LoError::RankTooSmall { .. })
    ));
    assert!(matches!(
        tararin_conjugator(Group::Zn { rank: 2 }, &seq("+"), &seq("-"), 1, DEFAULT_CAP),
        Err(LoError::NotTararin(_))
    ));
}

/// In T_n conjugation changes eps_1..eps_{n-1} freely and never eps_n, so
/// the orbits are the two halves of LO(T_n) (two points each for n = 1).
#[test]
fn minimal_sets_are_the_two_halves() {
    for (n, sizes) in [(1u32, vec![1, 1]), (2, vec![2, 2]), (3, vec![4, 4])] {
        let space = LoSpace::complete(Group::Tararin { n }).unwrap();
        let rep = minimal_invariant_sets(&space, 1, DEFAULT_CAP).unwrap();
        assert_eq!(rep.sizes(), sizes, "n={n}");
        assert!(rep.condition_verified);
        let union: usize = rep.sets.iter().map(Vec::len).sum();
        assert_eq!(union, 1 << n);
        for set in &rep.sets {
            let top: HashSet<String> = set
                .iter()
                .map(|&k| space.cones()[k].to_string().rsplit(',').next().unwrap().to_string())
                .collect();
            assert_eq!(top.len(), 1, "top sign is constant on an orbit");
        }
    }
}

#[test]
fn finite_space_examples() {
    for (g, size) in [(Group::Tararin { n: 2 }, 4), (Group::Tararin { n: 3 }, 8), (Group::Zn { rank: 1 }, 2)] {
        let rep = finite_or_uncountable_check(&LoSpace::complete(g).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(rep.size, size);
        assert_eq!(rep.isolating.len(), size);
    }
}

#[test]
fn conjugation_is_an_action_on_restrictions() {
    let cases = [
        (Group::Tararin { n: 3 }, "tararin:+,-,+", ["x1", "x2*x3^-1", "x3^2"]),
        (Group::Braid { n: 3 }, "dehornoy", ["s1", "s2^-1*s1", "s1*s2"]),
        (Group::Free { rank: 2 }, "magnus", ["a", "b^-1*a", "a*b"]),
    ];
    for (g, spec, fs) in cases {
        let p = cone(g, spec);
        let ball = g.enumerate_ball(2, DEFAULT_CAP).unwrap();
        for f in fs {
            for h in fs {
                let (f, h) = (w(g, f), w(g, h));
                let outer = p.conjugate(&h).unwrap().conjugate(&f).unwrap();
                let once = p.conjugate(&f.mul(&h).unwrap()).unwrap();
                assert_eq!(outer.restrict(&ball).unwrap(), once.restrict(&ball).unwrap(), "{g} {f} {h}");
            }
        }
    }
}

#[test]
fn forged_certificates_fail() {
    let t3 = Group::Tararin { n: 3 };
    let p = cone(t3, "tararin:+,+,+");
    let cert = orbit_closure_contains(&cone(t3, "tararin:-,+,+"), &p, 3, 2, DEFAULT_CAP).unwrap().unwrap();
    let forged = cert.to_records().replace("conjugator=x2", "conjugator=x3");
    let forged = Certificate::parse(&forged).unwrap();
    assert!(!verify_certificate(&forged, DEFAULT_CAP).unwrap().holds);

    let z = Group::Zn { rank: 2 };
    let scan = isolated_scan(&OpenSetSpec::parse(z, "a,b").unwrap(), &[1, 2], DEFAULT_CAP).unwrap();
    assert!(!matches!(scan.outcome, IsolationOutcome::Certified(_)));
    let fake = "certificate=isolation-up-to-radius\nstatement=made up\ngroup=zn:rank=2\nspec=a,b\nradii=1,2\ncounts=1,1\n";
    assert!(!verify_certificate(&Certificate::parse(fake).unwrap(), DEFAULT_CAP).unwrap().holds);
}
