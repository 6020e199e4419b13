use super::Syllable;

pub(super) fn to_vec(raw: &[Syllable], rank: u32) -> Vec<i64> {
    let mut v = vec![0; rank as usize];
    for s in raw {
        v[s.gen as usize] += s.exp;
    }
    v
}

pub(super) fn from_vec(v: &[i64]) -> Vec<Syllable> {
    v.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| Syllable::new(i as u32, e))
        .collect()
}
