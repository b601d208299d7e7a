//! Fixed-width edge bitmasks.
//!
//! Bit `i` stands for the edge of colex rank `i`. Four 64-bit words cover
//! every edge space up to 256 edges, which includes all of `C(n, r)` for
//! `n <= 10`. Spaces that fit in one word only ever touch `words[0]`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const WORDS: usize = 4;
pub const MAX_EDGES: usize = WORDS * 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mask([u64; WORDS]);

impl Mask {
    pub const EMPTY: Mask = Mask([0; WORDS]);

    pub fn from_u64(bits: u64) -> Self {
        let mut m = Mask::EMPTY;
        m.0[0] = bits;
        m
    }

    pub fn from_words(words: [u64; WORDS]) -> Self {
        Mask(words)
    }

    /// Mask with bits `0..len` set.
    pub fn low_ones(len: usize) -> Self {
        assert!(len <= MAX_EDGES);
        let mut m = Mask::EMPTY;
        for (w, word) in m.0.iter_mut().enumerate() {
            let lo = w * 64;
            if len >= lo + 64 {
                *word = u64::MAX;
            } else if len > lo {
                *word = (1u64 << (len - lo)) - 1;
            }
        }
        m
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut m = Mask::EMPTY;
        for i in indices {
            m.set(i);
        }
        m
    }

    #[inline]
    pub fn words(&self) -> &[u64; WORDS] {
        &self.0
    }

    /// The low word, for spaces with at most 64 edges.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.0[0]
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.0[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        self.0[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.0[i >> 6] ^= 1u64 << (i & 63);
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and(&self, other: &Mask) -> Mask {
        self.zip(other, |a, b| a & b)
    }

    #[inline]
    pub fn or(&self, other: &Mask) -> Mask {
        self.zip(other, |a, b| a | b)
    }

    #[inline]
    pub fn xor(&self, other: &Mask) -> Mask {
        self.zip(other, |a, b| a ^ b)
    }

    /// `self \ other`.
    #[inline]
    pub fn and_not(&self, other: &Mask) -> Mask {
        self.zip(other, |a, b| a & !b)
    }

    #[inline]
    fn zip(&self, other: &Mask, f: impl Fn(u64, u64) -> u64) -> Mask {
        let mut out = [0u64; WORDS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = f(*a, *b);
        }
        Mask(out)
    }

    /// Set bit positions in ascending order.
    pub fn ones(&self) -> Ones {
        Ones {
            words: self.0,
            word: 0,
        }
    }

    /// Highest set bit, if any.
    pub fn highest(&self) -> Option<usize> {
        for w in (0..WORDS).rev() {
            if self.0[w] != 0 {
                return Some(w * 64 + 63 - self.0[w].leading_zeros() as usize);
            }
        }
        None
    }

    /// Compare only the bits at positions `>= from`, most significant first.
    pub fn cmp_from(&self, other: &Mask, from: usize) -> Ordering {
        for w in (0..WORDS).rev() {
            let lo = w * 64;
            if lo + 64 <= from {
                break;
            }
            let keep = if from > lo {
                u64::MAX << (from - lo)
            } else {
                u64::MAX
            };
            let ord = (self.0[w] & keep).cmp(&(other.0[w] & keep));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    /// Lowercase hexadecimal of the mask integer, zero-padded to
    /// `ceil(edge_count / 4)` digits (at least one).
    pub fn to_hex(&self, edge_count: usize) -> String {
        let digits = edge_count.div_ceil(4).max(1);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let nibble = (self.0[(d * 4) >> 6] >> ((d * 4) & 63)) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).expect("nibble < 16"));
        }
        s
    }

    /// Parse a hexadecimal mask and check that no bit at or beyond
    /// `edge_count` is set. Leading zeros are allowed.
    pub fn from_hex(s: &str, edge_count: usize) -> Result<Mask> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty hex mask"));
        }
        let mut m = Mask::EMPTY;
        for (d, c) in s.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::invalid(format!("invalid hex digit {c:?} in {s:?}")))?
                as u64;
            if nibble == 0 {
                continue;
            }
            let bit = d * 4;
            if bit >= MAX_EDGES {
                return Err(Error::invalid(format!(
                    "hex mask {s:?} exceeds {MAX_EDGES} bits"
                )));
            }
            m.0[bit >> 6] |= nibble << (bit & 63);
        }
        if let Some(h) = m.highest() {
            if h >= edge_count {
                return Err(Error::invalid(format!(
                    "hex mask {s:?} sets bit {h} but the edge space has {edge_count} edges"
                )));
            }
        }
        Ok(m)
    }
}

impl Ord for Mask {
    /// Numeric order of the mask as an unsigned integer.
    fn cmp(&self, other: &Self) -> Ordering {
        for w in (0..WORDS).rev() {
            match self.0[w].cmp(&other.0[w]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.highest().map_or(1, |h| h + 1);
        write!(f, "Mask(0x{})", self.to_hex(top))
    }
}

pub struct Ones {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_is_fixed_width_lowercase() {
        assert_eq!(Mask::from_u64(0x03).to_hex(6), "03");
        assert_eq!(Mask::from_u64(0x2c).to_hex(6), "2c");
        assert_eq!(Mask::EMPTY.to_hex(1), "0");
        assert_eq!(Mask::from_u64(1).to_hex(28), "0000001");
    }

    #[test]
    fn hex_rejects_bits_outside_space() {
        assert!(Mask::from_hex("40", 6).is_err());
        assert!(Mask::from_hex("3f", 6).is_ok());
        assert!(Mask::from_hex("0x3", 6).is_err());
        assert!(Mask::from_hex("", 6).is_err());
    }

    #[test]
    fn high_words_participate() {
        let mut m = Mask::EMPTY;
        m.set(200);
        m.set(3);
        assert_eq!(m.ones().collect::<Vec<_>>(), vec![3, 200]);
        assert_eq!(m.highest(), Some(200));
        assert!(m > Mask::from_u64(u64::MAX));
        assert_eq!(Mask::from_hex(&m.to_hex(252), 252).unwrap(), m);
        assert_eq!(Mask::low_ones(130).count(), 130);
    }

    #[test]
    fn cmp_from_ignores_low_bits() {
        let a = Mask::from_u64(0b1010);
        let b = Mask::from_u64(0b1001);
        assert_eq!(a.cmp_from(&b, 2), Ordering::Equal);
        assert_eq!(a.cmp_from(&b, 0), Ordering::Greater);
    }

    fn arb_mask() -> impl Strategy<Value = Mask> {
        prop::array::uniform4(any::<u64>()).prop_map(Mask::from_words)
    }

    proptest! {
        #[test]
        fn hex_round_trip(m in arb_mask()) {
            prop_assert_eq!(Mask::from_hex(&m.to_hex(MAX_EDGES), MAX_EDGES).unwrap(), m);
        }

        #[test]
        fn order_matches_big_integer_order(a in arb_mask(), b in arb_mask()) {
            let key = |m: &Mask| m.words().iter().rev().copied().collect::<Vec<_>>();
            prop_assert_eq!(a.cmp(&b), key(&a).cmp(&key(&b)));
        }

        #[test]
        fn ones_agrees_with_get(m in arb_mask()) {
            let ones: Vec<usize> = m.ones().collect();
            let scan: Vec<usize> = (0..MAX_EDGES).filter(|&i| m.get(i)).collect();
            prop_assert_eq!(ones.len(), m.count());
            prop_assert_eq!(ones, scan);
        }
    }
}
