use alloc::vec;
use alloc::vec::Vec;

use crate::formula::ClauseId;

/// Fixed-width set of clause ids `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseSet {
    words: Vec<u64>,
}

impl ClauseSet {
    pub fn empty(num_clauses: usize) -> Self {
        ClauseSet {
            words: vec![0; num_clauses.div_ceil(64)],
        }
    }

    #[inline]
    fn slot(id: ClauseId) -> (usize, u64) {
        let i = id as usize - 1;
        (i / 64, 1u64 << (i % 64))
    }

    #[inline]
    pub fn contains(&self, id: ClauseId) -> bool {
        let (w, b) = Self::slot(id);
        self.words[w] & b != 0
    }

    #[inline]
    pub fn insert(&mut self, id: ClauseId) -> bool {
        let (w, b) = Self::slot(id);
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, id: ClauseId) -> bool {
        let (w, b) = Self::slot(id);
        let had = self.words[w] & b != 0;
        self.words[w] &= !b;
        had
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| (wi * 64 + b + 1) as ClauseId)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_iter() {
        let mut s = ClauseSet::empty(130);
        assert!(s.is_empty());
        assert!(s.insert(1));
        assert!(s.insert(65));
        assert!(s.insert(130));
        assert!(!s.insert(65));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 65, 130]);
        assert!(s.remove(65));
        assert!(!s.contains(65));
        assert_eq!(s.len(), 2);
    }
}
