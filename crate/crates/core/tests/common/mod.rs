#![allow(dead_code)]

use ordlat::group::{Ball, Group, DEFAULT_CAP};

/// Every antisymmetric sign map on `ball \ {1}` closed under in-ball
/// products, by exhaustive search over one sign per inverse pair. Sorted.
pub fn brute_force_cones(ball: &Ball) -> Vec<Vec<i8>> {
    let reps: Vec<usize> = (1..ball.len()).filter(|&i| i < ball.inverse_index(i)).collect();
    assert!(reps.len() <= 20, "brute force is for small balls");
    let mut table = vec![None; ball.len() * ball.len()];
    for i in 1..ball.len() {
        for j in 1..ball.len() {
            table[i * ball.len() + j] = ball.index_of(&ball.get(i).mul(ball.get(j)).unwrap());
        }
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << reps.len()) {
        let mut signs = vec![0i8; ball.len()];
        for (b, &i) in reps.iter().enumerate() {
            let s = if mask >> b & 1 == 1 { 1 } else { -1 };
            signs[i] = s;
            signs[ball.inverse_index(i)] = -s;
        }
        let closed = (1..ball.len()).all(|i| {
            (1..ball.len()).all(|j| {
                signs[i] < 0 || signs[j] < 0 || table[i * ball.len() + j].is_none_or(|k| signs[k] > 0)
            })
        });
        if closed {
            out.push(signs);
        }
    }
    out.sort();
    out
}

/// Backend balls with at most 12 nonidentity elements, as `(group, radius)`.
pub fn small_balls() -> Vec<(Group, usize)> {
    let mut out = Vec::new();
    let groups = [
        Group::Zn { rank: 1 },
        Group::Zn { rank: 2 },
        Group::Zn { rank: 3 },
        Group::Free { rank: 1 },
        Group::Free { rank: 2 },
        Group::Free { rank: 3 },
        Group::Tararin { n: 1 },
        Group::Tararin { n: 2 },
        Group::Tararin { n: 3 },
        Group::Braid { n: 2 },
        Group::Braid { n: 3 },
        Group::Braid { n: 4 },
    ];
    for g in groups {
        for r in 1.. {
            let ball = g.enumerate_ball(r, DEFAULT_CAP).unwrap();
            if ball.len() - 1 > 12 {
                break;
            }
            out.push((g, r));
        }
    }
    out
}

/// A random word of at most `max_len` letters.
pub fn random_word(rng: &mut impl rand::Rng, g: Group, max_len: usize) -> ordlat::group::Word {
    let len = rng.gen_range(0..=max_len);
    let raw: Vec<ordlat::group::Syllable> = (0..len)
        .map(|_| {
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            ordlat::group::Syllable::new(rng.gen_range(0..g.generator_count()), e)
        })
        .collect();
    g.normal_form(&raw).unwrap()
}

/// A random lattice term of depth at most `depth` with leaves of at most
/// `leaf_len` letters.
pub fn random_term(rng: &mut impl rand::Rng, g: Group, depth: usize, leaf_len: usize) -> ordlat::lgroup::LTerm {
    use ordlat::lgroup::LTerm;
    if depth == 0 || rng.gen_bool(0.25) {
        return LTerm::elem(random_word(rng, g, leaf_len));
    }
    let sub = |rng: &mut _| random_term(rng, g, depth - 1, leaf_len);
    match rng.gen_range(0..4) {
        0 => LTerm::mul(sub(rng), sub(rng)),
        1 => LTerm::inv(sub(rng)),
        2 => LTerm::join(sub(rng), sub(rng)),
        _ => LTerm::meet(sub(rng), sub(rng)),
    }
}
