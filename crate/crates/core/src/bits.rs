//! Fixed-length bitsets over an integer interval, with the shifted
//! intersection used by the witness searches.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bitset { len, words: vec![u64::MAX; len.div_ceil(64)] };
        b.clear_tail();
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn clear_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn unset(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn none(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Clears every bit `i` for which `other[i + shift]` is unset (bits
    /// shifted in from outside `other` count as unset).
    pub fn and_shifted(&mut self, other: &Bitset, shift: i64) {
        let n = self.words.len();
        if shift.unsigned_abs() >= other.len as u64 + 64 {
            self.words.iter_mut().for_each(|w| *w = 0);
            return;
        }
        let word_shift = shift.div_euclid(64);
        let bit_shift = shift.rem_euclid(64) as u32;
        let fetch = |idx: i64| -> u64 {
            if idx < 0 || idx as usize >= other.words.len() {
                0
            } else {
                other.words[idx as usize]
            }
        };
        for i in 0..n {
            let base = i as i64 + word_shift;
            let lo = fetch(base);
            let v = if bit_shift == 0 {
                lo
            } else {
                (lo >> bit_shift) | (fetch(base + 1) << (64 - bit_shift))
            };
            self.words[i] &= v;
        }
        // bits of `other` beyond its length are zero already; ours stay clean
        self.clear_tail();
    }

    /// First set bit at index >= `from`.
    pub fn next_set(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / 64;
        let mut w = self.words[wi] & (u64::MAX << (from % 64));
        loop {
            if w != 0 {
                let i = wi * 64 + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next = self.next_set(0);
        std::iter::from_fn(move || {
            let cur = next?;
            next = self.next_set(cur + 1);
            Some(cur)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_shift(a: &[bool], b: &[bool], shift: i64) -> Vec<bool> {
        a.iter()
            .enumerate()
            .map(|(i, &x)| {
                let j = i as i64 + shift;
                x && j >= 0 && (j as usize) < b.len() && b[j as usize]
            })
            .collect()
    }

    #[test]
    fn shifted_and_matches_naive() {
        let len = 300;
        let pat: Vec<bool> = (0..len).map(|i| (i * 7 + i / 3) % 5 != 0).collect();
        let mut other = Bitset::new(len);
        for (i, &p) in pat.iter().enumerate() {
            if p {
                other.set(i);
            }
        }
        for shift in [-400i64, -129, -64, -63, -1, 0, 1, 5, 63, 64, 65, 130, 299, 400] {
            let mut a = Bitset::full(len);
            a.and_shifted(&other, shift);
            let expect = naive_shift(&vec![true; len], &pat, shift);
            let got: Vec<bool> = (0..len).map(|i| a.get(i)).collect();
            assert_eq!(got, expect, "shift {shift}");
        }
    }

    #[test]
    fn next_set_and_ones() {
        let mut b = Bitset::new(200);
        for i in [0, 63, 64, 150, 199] {
            b.set(i);
        }
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 63, 64, 150, 199]);
        assert_eq!(b.next_set(65), Some(150));
        assert_eq!(b.next_set(200), None);
        assert_eq!(Bitset::full(70).count_ones(), 70);
    }
}
