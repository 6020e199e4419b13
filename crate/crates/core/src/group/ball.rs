use std::collections::HashMap;
use std::sync::Arc;

use super::{Group, GroupError, Word};

/// Default element-count cap for enumerations.
pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite set of group elements closed under inversion, identity at index 0.
///
/// Produced by [`Group::enumerate_ball`]: all elements of generator word
/// length at most `radius`, ordered by length, then by breadth-first
/// discovery using letters in the order `g1, g1^-1, g2, g2^-1, ...`.
#[derive(Debug, Clone)]
pub struct Ball {
    group: Group,
    radius: usize,
    elements: Vec<Word>,
    lengths: Vec<usize>,
    index: HashMap<Word, usize>,
    inverse: Vec<usize>,
}

impl Ball {
    pub(super) fn enumerate(group: Group, radius: usize, cap: usize) -> Result<Ball, GroupError> {
        let letters = group.letters();
        let identity = group.identity();
        let mut elements = vec![identity.clone()];
        let mut lengths = vec![0];
        let mut index = HashMap::from([(identity, 0)]);
        let mut layer = 0..1;
        for len in 1..=radius {
            let start = elements.len();
            for k in layer.clone() {
                for x in &letters {
                    let y = elements[k].mul_unchecked(x);
                    if index.contains_key(&y) {
                        continue;
                    }
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    lengths.push(len);
                }
            }
            layer = start..elements.len();
        }
        let inverse = elements
            .iter()
            .map(|w| index[&w.inverse()])
            .collect();
        Ok(Ball {
            group,
            radius,
            elements,
            lengths,
            index,
            inverse,
        })
    }

    /// An inversion-closed domain built from arbitrary words (for cones read
    /// from files). `radius` is the longest stored representative.
    pub(crate) fn from_words(group: Group, words: &[Word]) -> Ball {
        let identity = group.identity();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0)]);
        for w in words {
            for x in [w.clone(), w.inverse()] {
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elements.len());
                    elements.push(x);
                }
            }
        }
        let lengths: Vec<usize> = elements.iter().map(|w| w.letter_len() as usize).collect();
        let inverse = elements.iter().map(|w| index[&w.inverse()]).collect();
        Ball {
            group,
            radius: lengths.iter().copied().max().unwrap_or(0),
            elements,
            lengths,
            index,
            inverse,
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Word {
        &self.elements[i]
    }

    /// Word length of element `i`.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.elements.iter()
    }

    /// Non-identity elements.
    pub fn nonidentity(&self) -> impl Iterator<Item = &Word> {
        self.elements.iter().skip(1)
    }

    pub fn into_shared(self) -> Arc<Ball> {
        Arc::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_balls() {
        let f2 = Group::Free { rank: 2 };
        let b = f2.enumerate_ball(1, DEFAULT_CAP).unwrap();
        let names: Vec<String> = b.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["1", "a", "a^-1", "b", "b^-1"]);
        assert_eq!(f2.enumerate_ball(3, DEFAULT_CAP).unwrap().len(), 53);

        let z1 = Group::Zn { rank: 1 };
        let b = z1.enumerate_ball(3, DEFAULT_CAP).unwrap();
        assert_eq!(b.len(), 7);
        assert_eq!(b.elements().last().unwrap().to_string(), "a^-3");
    }

    #[test]
    fn cap_is_enforced() {
        let f2 = Group::Free { rank: 2 };
        assert!(matches!(
            f2.enumerate_ball(4, 100),
            Err(GroupError::CapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn inverse_index_is_an_involution() {
        let b = Group::Tararin { n: 2 }.enumerate_ball(3, DEFAULT_CAP).unwrap();
        for i in 0..b.len() {
            assert_eq!(b.inverse_index(b.inverse_index(i)), i);
            assert_eq!(b.get(b.inverse_index(i)), &b.get(i).inverse());
        }
    }
}
