//! Packed assignments and growable GF(2) rows.
//!
//! A signature assignment is a `u64` whose bit `i` is the value of variable `i`.
//! In text, variable 0 is the leftmost character.

use std::fmt;

pub fn to_bitstring(x: u64, arity: usize) -> String {
    (0..arity).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Option<(u64, usize)> {
    if s.len() > 64 {
        return None;
    }
    let mut x = 0u64;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => x |= 1 << i,
            _ => return None,
        }
    }
    Some((x, s.chars().count()))
}

/// Mask with the low `n` bits set.
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Key ordering assignments lexicographically by their bitstrings.
pub fn lex_key(x: u64, arity: usize) -> u64 {
    if arity == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - arity)
    }
}

/// A bit vector of arbitrary length, used for GF(2) systems over edge variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / 64];
        if v {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_parity(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitRow({s})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstrings() {
        assert_eq!(to_bitstring(0b011, 4), "1100");
        assert_eq!(parse_bitstring("1100"), Some((0b011, 4)));
        assert_eq!(parse_bitstring("10x"), None);
        assert!(lex_key(0b01, 2) > lex_key(0b10, 2));
    }

    #[test]
    fn rows() {
        let mut r = BitRow::zeros(130);
        r.set(3, true);
        r.set(129, true);
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![3, 129]);
        assert_eq!(r.first_one(), Some(3));
        let mut s = r.clone();
        s.flip(3);
        assert!(r.and_parity(&s));
        s.xor_with(&r);
        assert_eq!(s.ones().collect::<Vec<_>>(), vec![3]);
    }
}
