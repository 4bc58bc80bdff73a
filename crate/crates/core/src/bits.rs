//! Word-level helpers for the bit-row representation used throughout.

pub const WORD_BITS: usize = 64;

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Mask selecting the valid bits of the last word for a universe of `n` bits.
#[inline]
pub fn tail_mask(n: usize) -> u64 {
    let r = n % WORD_BITS;
    if r == 0 {
        !0
    } else {
        (1u64 << r) - 1
    }
}

#[inline]
pub fn get(words: &[u64], i: usize) -> bool {
    words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
}

#[inline]
pub fn clear(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
}

#[inline]
pub fn count_ones(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Popcount of `(a ^ b) & c`.
#[inline]
pub fn count_xor_and(a: &[u64], b: &[u64], c: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| ((x ^ y) & z).count_ones() as usize)
        .sum()
}

/// Indices of set bits, ascending.
pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(wi * WORD_BITS + b)
        })
    })
}
