//! Collection in the Tararin groups.
//!
//! Elements are exponent vectors `(a_1, .., a_n)` standing for the normal
//! form `x_n^{a_n} ... x_1^{a_1}`. Moving `x_{i+1}^b` leftwards past
//! `x_i^a` turns it into `x_i^{(-1)^b a}`; all other pairs commute. Hence
//!
//! ```text
//! (a) * (b) = c,   c_i = (-1)^{b_{i+1}} a_i + b_i
//! ```

use super::Syllable;

fn parity_sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(super) fn multiply(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    (0..n)
        .map(|i| {
            let flip = if i + 1 < n { parity_sign(b[i + 1]) } else { 1 };
            flip * a[i] + b[i]
        })
        .collect()
}

pub(super) fn inverse(a: &[i64]) -> Vec<i64> {
    let n = a.len();
    (0..n)
        .map(|i| {
            let flip = if i + 1 < n { parity_sign(a[i + 1]) } else { 1 };
            -flip * a[i]
        })
        .collect()
}

pub(super) fn to_vec(syllables: &[Syllable], n: u32) -> Vec<i64> {
    let mut v = vec![0; n as usize];
    for s in syllables {
        v[s.gen as usize] = s.exp;
    }
    v
}

pub(super) fn from_vec(v: &[i64]) -> Vec<Syllable> {
    v.iter()
        .enumerate()
        .rev()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| Syllable::new(i as u32, e))
        .collect()
}

pub(super) fn normal_form(raw: &[Syllable], n: u32) -> Vec<Syllable> {
    let mut acc = vec![0; n as usize];
    let mut letter = vec![0; n as usize];
    for s in raw {
        letter[s.gen as usize] = s.exp;
        acc = multiply(&acc, &letter);
        letter[s.gen as usize] = 0;
    }
    from_vec(&acc)
}
