//! Fixed-width variable sets used as monomials inside the engines.
//!
//! Bit `i` stands for the `i`-th smallest variable under the active order,
//! so among monomials of equal degree the admissible comparison is the
//! numeric comparison of the masks.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

pub(crate) trait Bits: Copy + Eq + Ord + Hash + Debug + Send + Sync + 'static {
    const CAPACITY: usize;

    fn empty() -> Self;
    fn single(i: usize) -> Self;
    fn or(self, other: Self) -> Self;
    fn and(self, other: Self) -> Self;
    /// `self ∖ other`.
    fn minus(self, other: Self) -> Self;
    fn count(self) -> u32;

    fn is_empty(self) -> bool {
        self == Self::empty()
    }

    fn is_subset(self, other: Self) -> bool {
        self.minus(other).is_empty()
    }

    fn disjoint(self, other: Self) -> bool {
        self.and(other).is_empty()
    }

    fn contains(self, i: usize) -> bool {
        !self.and(Self::single(i)).is_empty()
    }

    fn from_indices(idx: &[usize]) -> Self {
        idx.iter().fold(Self::empty(), |acc, &i| acc.or(Self::single(i)))
    }

    fn indices(self) -> Vec<usize> {
        (0..Self::CAPACITY).filter(|&i| self.contains(i)).collect()
    }
}

/// The admissible order on masks: degree first, then numeric value.
#[inline]
pub(crate) fn order<B: Bits>(a: &B, b: &B) -> Ordering {
    a.count().cmp(&b.count()).then_with(|| a.cmp(b))
}

/// Wraps a mask so that the derived `Ord` is the admissible order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Graded<B>(pub B);

impl<B: Bits> PartialOrd for Graded<B> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<B: Bits> Ord for Graded<B> {
    fn cmp(&self, other: &Self) -> Ordering {
        order(&self.0, &other.0)
    }
}

macro_rules! prim_bits {
    ($t:ty) => {
        impl Bits for $t {
            const CAPACITY: usize = <$t>::BITS as usize;

            #[inline]
            fn empty() -> Self {
                0
            }
            #[inline]
            fn single(i: usize) -> Self {
                1 << i
            }
            #[inline]
            fn or(self, other: Self) -> Self {
                self | other
            }
            #[inline]
            fn and(self, other: Self) -> Self {
                self & other
            }
            #[inline]
            fn minus(self, other: Self) -> Self {
                self & !other
            }
            #[inline]
            fn count(self) -> u32 {
                self.count_ones()
            }
            fn indices(self) -> Vec<usize> {
                let mut out = Vec::with_capacity(self.count_ones() as usize);
                let mut m = self;
                while m != 0 {
                    out.push(m.trailing_zeros() as usize);
                    m &= m - 1;
                }
                out
            }
        }
    };
}

prim_bits!(u64);
prim_bits!(u128);

/// A mask of `64·N` bits; word `N − 1` is most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Wide<const N: usize>(pub [u64; N]);

impl<const N: usize> PartialOrd for Wide<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for Wide<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl<const N: usize> Bits for Wide<N> {
    const CAPACITY: usize = 64 * N;

    fn empty() -> Self {
        Wide([0; N])
    }
    fn single(i: usize) -> Self {
        let mut w = [0; N];
        w[i / 64] = 1 << (i % 64);
        Wide(w)
    }
    fn or(self, other: Self) -> Self {
        Wide(std::array::from_fn(|i| self.0[i] | other.0[i]))
    }
    fn and(self, other: Self) -> Self {
        Wide(std::array::from_fn(|i| self.0[i] & other.0[i]))
    }
    fn minus(self, other: Self) -> Self {
        Wide(std::array::from_fn(|i| self.0[i] & !other.0[i]))
    }
    fn count(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_subset(self, other: Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }
    fn indices(self) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &word) in self.0.iter().enumerate() {
            let mut m = word;
            while m != 0 {
                out.push(64 * k + m.trailing_zeros() as usize);
                m &= m - 1;
            }
        }
        out
    }
}
