//! Handle reduction in the braid groups.
//!
//! Letters are encoded as signed integers: `+k` is `s_k`, `-k` is `s_k^-1`.
//! A `s_i`-handle is a factor `s_i^e u s_i^-e` where `u` only involves
//! `s_j` with `j > i`. Reducing it conjugates `u` by `s_i^e`:
//! `s_{i+1}^d` becomes `s_{i+1}^-e s_i^d s_{i+1}^e`, higher letters are
//! untouched. Always reducing the handle that ends first terminates and
//! yields a handle-free word, which is empty exactly for the identity.

use super::Syllable;

pub(super) fn letters(syllables: &[Syllable]) -> Vec<i32> {
    let mut out = Vec::new();
    for s in syllables {
        let l = (s.gen + 1) as i32;
        let l = if s.exp > 0 { l } else { -l };
        out.extend(std::iter::repeat_n(l, s.exp.unsigned_abs() as usize));
    }
    out
}

fn syllables(letters: &[i32]) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    for &l in letters {
        let gen = l.unsigned_abs() - 1;
        let e = l.signum() as i64;
        match out.last_mut() {
            Some(top) if top.gen == gen && top.exp.signum() == e => top.exp += e,
            _ => out.push(Syllable::new(gen, e)),
        }
    }
    out
}

fn find_handle(w: &[i32], from: usize) -> Option<(usize, usize)> {
    for q in from.max(1)..w.len() {
        let i = w[q].abs();
        for p in (0..q).rev() {
            let j = w[p].abs();
            if j > i {
                continue;
            }
            if w[p] == -w[q] {
                return Some((p, q));
            }
            break;
        }
    }
    None
}

pub(super) fn handle_reduce(mut w: Vec<i32>) -> Vec<i32> {
    let mut from = 1;
    while let Some((p, q)) = find_handle(&w, from) {
        let i = w[p].abs();
        let e = w[p].signum();
        let mut inner = Vec::with_capacity(3 * (q - p));
        for &l in &w[p + 1..q] {
            if l.abs() == i + 1 {
                inner.extend([-e * (i + 1), l.signum() * i, e * (i + 1)]);
            } else {
                inner.push(l);
            }
        }
        w.splice(p..=q, inner);
        from = p;
    }
    w
}

pub(super) fn normal_form(raw: &[Syllable]) -> Vec<Syllable> {
    syllables(&handle_reduce(letters(raw)))
}

pub(super) fn product(u: &[Syllable], v: &[Syllable]) -> Vec<Syllable> {
    let mut w = letters(u);
    w.extend(letters(v));
    syllables(&handle_reduce(w))
}

/// Dehornoy sign of a handle-reduced word: the sign of its lowest-index
/// generator, `0` for the empty word.
pub(crate) fn dehornoy_sign(reduced: &[Syllable]) -> i8 {
    reduced
        .iter()
        .min_by_key(|s| s.gen)
        .map(|s| s.exp.signum() as i8)
        .unwrap_or(0)
}

pub(super) fn equal(u: &[Syllable], v: &[Syllable], n: u32) -> bool {
    if u == v {
        return true;
    }
    if burau_key(u, n) != burau_key(v, n) {
        return false;
    }
    let mut w: Vec<i32> = letters(u).into_iter().rev().map(|l| -l).collect();
    w.extend(letters(v));
    handle_reduce(w).is_empty()
}

const P: u64 = (1 << 61) - 1;
const T: u64 = 1_000_003;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Unreduced Burau matrix at `t = T` modulo the prime `2^61 - 1`.
///
/// A homomorphic invariant: equal braids have equal keys. Used as a hash and
/// as a fast inequality filter before handle reduction.
pub(super) fn burau_key(syllables: &[Syllable], n: u32) -> Vec<u64> {
    let n = n as usize;
    let t_inv = powmod(T, P - 2);
    let one_minus = |x: u64| (1 + P - x) % P;
    let mut m = vec![0u64; n * n];
    for k in 0..n {
        m[k * n + k] = 1;
    }
    for l in letters(syllables) {
        let i = l.unsigned_abs() as usize - 1;
        let block = if l > 0 {
            [one_minus(T), T, 1, 0]
        } else {
            [0, 1, t_inv, one_minus(t_inv)]
        };
        // right multiplication touches columns i and i+1 only
        for r in 0..n {
            let a = m[r * n + i];
            let b = m[r * n + i + 1];
            m[r * n + i] = (mulmod(a, block[0]) + mulmod(b, block[2])) % P;
            m[r * n + i + 1] = (mulmod(a, block[1]) + mulmod(b, block[3])) % P;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syl(letters: &[i32]) -> Vec<Syllable> {
        syllables(letters)
    }

    #[test]
    fn free_cancellation_is_a_handle() {
        assert!(handle_reduce(vec![1, 2, -2, -1]).is_empty());
    }

    #[test]
    fn braid_relation_reduces_to_empty() {
        // s1 s2 s1 (s2 s1 s2)^-1
        assert!(handle_reduce(vec![1, 2, 1, -2, -1, -2]).is_empty());
        // far commutation in B_4
        assert!(handle_reduce(vec![1, 3, -1, -3]).is_empty());
    }

    #[test]
    fn reduced_words_are_handle_free() {
        let w = handle_reduce(vec![-2, 1, 2, -1, 2, 1, -2, -1, 1, 1]);
        assert!(find_handle(&w, 1).is_none());
        let min = w.iter().map(|l| l.abs()).min().unwrap();
        let signs: Vec<i32> = w.iter().filter(|l| l.abs() == min).map(|l| l.signum()).collect();
        assert!(signs.windows(2).all(|p| p[0] == p[1]));
    }

    #[test]
    fn dehornoy_sign_of_mixed_word() {
        assert_eq!(dehornoy_sign(&normal_form(&syl(&[-2, 1]))), 1);
        assert_eq!(dehornoy_sign(&normal_form(&syl(&[-1, 2]))), -1);
        assert_eq!(dehornoy_sign(&normal_form(&syl(&[2]))), 1);
    }

    #[test]
    fn burau_respects_relations() {
        assert_eq!(burau_key(&syl(&[1, 2, 1]), 3), burau_key(&syl(&[2, 1, 2]), 3));
        assert_eq!(burau_key(&syl(&[1, -1]), 3), burau_key(&[], 3));
        assert_ne!(burau_key(&syl(&[1, 2]), 3), burau_key(&syl(&[2, 1]), 3));
    }
}
