use super::Syllable;

/// Free reduction with merging of adjacent powers of the same generator.
pub(super) fn reduce(raw: impl IntoIterator<Item = Syllable>) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    for s in raw {
        if s.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.gen == s.gen => {
                top.exp += s.exp;
                if top.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(s),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_across_merged_syllables() {
        let raw = [
            Syllable::new(0, 2),
            Syllable::new(1, 1),
            Syllable::new(1, -1),
            Syllable::new(0, -2),
            Syllable::new(1, 3),
        ];
        assert_eq!(reduce(raw), vec![Syllable::new(1, 3)]);
    }
}
