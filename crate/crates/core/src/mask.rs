//! Fixed-width vertex sets over a target of at most 64 vertices.

use std::fmt;

use serde::Serialize;

/// Maximum number of target vertices a [`ColorMask`] can address.
pub const MAX_TARGET: usize = 64;

/// A subset of target vertices stored as a 64-bit bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct ColorMask(pub u64);

impl ColorMask {
    pub const EMPTY: ColorMask = ColorMask(0);

    /// The mask `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_TARGET);
        if n >= 64 {
            ColorMask(u64::MAX)
        } else {
            ColorMask((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn single(v: usize) -> Self {
        ColorMask(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    #[inline]
    pub fn intersects(self, other: ColorMask) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn is_subset(self, other: ColorMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn from_iter_checked<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut m = ColorMask::EMPTY;
        for v in it {
            m.insert(v);
        }
        m
    }

    /// Image of the set under a vertex permutation.
    pub fn permute(self, perm: &[usize]) -> Self {
        let mut out = 0u64;
        for v in self.iter() {
            out |= 1u64 << perm[v];
        }
        ColorMask(out)
    }
}

impl std::ops::BitAnd for ColorMask {
    type Output = ColorMask;
    #[inline]
    fn bitand(self, rhs: Self) -> Self {
        ColorMask(self.0 & rhs.0)
    }
}

impl std::ops::BitOr for ColorMask {
    type Output = ColorMask;
    #[inline]
    fn bitor(self, rhs: Self) -> Self {
        ColorMask(self.0 | rhs.0)
    }
}

impl std::ops::BitAndAssign for ColorMask {
    #[inline]
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl std::ops::BitOrAssign for ColorMask {
    #[inline]
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl std::ops::Sub for ColorMask {
    type Output = ColorMask;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        ColorMask(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for ColorMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ColorMask::from_iter_checked(iter)
    }
}

pub struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl fmt::Debug for ColorMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ColorMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Iterates over all `k`-subsets of `{0..n}` as masks, in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = ColorMask> {
    debug_assert!(n <= MAX_TARGET);
    let limit = 1u128 << n;
    let mut cur: Option<u128> = if k > n { None } else { Some((1u128 << k) - 1) };
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 {
            None
        } else {
            // Gosper's hack
            let lowest = c & c.wrapping_neg();
            let ripple = c + lowest;
            let next = ripple | (((c ^ ripple) >> 2) / lowest);
            (next < limit).then_some(next)
        };
        Some(ColorMask(c as u64))
    })
}

/// `n choose k`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_counted_correctly() {
        for n in 0..=10 {
            for k in 0..=n {
                let all: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(all.len() as u128, binomial(n, k), "n={n} k={k}");
                assert!(all.iter().all(|m| m.len() == k && m.0 < (1u64 << n)));
                assert!(all.windows(2).all(|w| w[0].0 < w[1].0));
            }
        }
    }

    #[test]
    fn subsets_of_64_bits() {
        assert_eq!(k_subsets(64, 64).count(), 1);
        assert_eq!(k_subsets(64, 63).count(), 64);
    }

    #[test]
    fn mask_basics() {
        let m: ColorMask = [1, 3, 5].into_iter().collect();
        assert_eq!(m.len(), 3);
        assert!(m.contains(3) && !m.contains(2));
        assert_eq!(m.to_string(), "{1,3,5}");
        assert_eq!(m.permute(&[0, 2, 1, 4, 3, 5]), [2, 4, 5].into_iter().collect());
        assert_eq!(ColorMask::full(64).len(), 64);
    }
}
