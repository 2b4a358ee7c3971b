//! Fixed-width bitmasks used by the exact searches.

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits<const N: usize>(pub [u64; N]);

impl<const N: usize> Bits<N> {
    pub const ZERO: Self = Bits([0; N]);

    pub fn first_n(n: usize) -> Self {
        let mut b = Self::ZERO;
        for i in 0..n {
            b.set(i);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn with(mut self, i: usize) -> Self {
        self.set(i);
        self
    }

    #[cfg(test)]
    pub fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn or(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..N {
            r.0[i] |= o.0[i];
        }
        r
    }

    #[inline]
    pub fn and_not(&self, o: &Self) -> Self {
        let mut r = *self;
        for i in 0..N {
            r.0[i] &= !o.0[i];
        }
        r
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn and_count(&self, o: &Self) -> usize {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn lowest(&self) -> Option<usize> {
        self.0
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.0[i].trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..N).flat_map(move |wi| {
            let mut w = self.0[wi];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Smallest supported mask width (in words) covering `n` bits.
pub(crate) fn width_for(n: usize) -> Option<usize> {
    [1, 2, 4, 8, 16, 32, 64]
        .into_iter()
        .find(|&w| w * 64 >= n)
}

pub(crate) const MAX_BITS: usize = 64 * 64;

/// Calls `$body` with `$n` bound to a const mask width fitting `$len` bits.
macro_rules! with_width {
    ($len:expr, $n:ident => $body:expr) => {
        match $crate::bits::width_for($len) {
            Some(1) => {
                const $n: usize = 1;
                $body
            }
            Some(2) => {
                const $n: usize = 2;
                $body
            }
            Some(4) => {
                const $n: usize = 4;
                $body
            }
            Some(8) => {
                const $n: usize = 8;
                $body
            }
            Some(16) => {
                const $n: usize = 16;
                $body
            }
            Some(32) => {
                const $n: usize = 32;
                $body
            }
            Some(_) => {
                const $n: usize = 64;
                $body
            }
            None => Err($crate::error::Error::UniverseTooLarge {
                size: $len,
                limit: $crate::bits::MAX_BITS,
            }),
        }
    };
}
pub(crate) use with_width;
