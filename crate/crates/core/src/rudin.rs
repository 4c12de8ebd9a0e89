//! Generators for `r`, `r'` and the fixed point `s = sigma^inf(a)`.
//!
//! Terms are computed by binary-digit descent in `O(log n)`; prefixes are
//! materialized separately for factor checks. Indices are `u64`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::words::{Letter, Substitution, Word};

/// `r(0) = 1, r(2n) = r(n), r(2n+1) = (-1)^n r(n)`.
pub fn r(mut n: u64) -> i8 {
    let mut sign = 1i8;
    while n > 0 {
        let half = n >> 1;
        if n & 1 == 1 && half & 1 == 1 {
            sign = -sign;
        }
        n = half;
    }
    sign
}

/// `r'(0) = 1, r'(2n) = (-1)^n r'(n), r'(2n+1) = -r'(n)`.
pub fn r_prime(mut n: u64) -> i8 {
    let mut sign = 1i8;
    while n > 0 {
        let half = n >> 1;
        let flip = if n & 1 == 1 { true } else { half & 1 == 1 };
        if flip {
            sign = -sign;
        }
        n = half;
    }
    sign
}

/// One of the two `+-1` sequences studied here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignSeq {
    R,
    RPrime,
}

impl SignSeq {
    pub fn term(self, n: u64) -> i8 {
        match self {
            SignSeq::R => r(n),
            SignSeq::RPrime => r_prime(n),
        }
    }

    /// The first `len` terms.
    pub fn prefix(self, len: usize) -> Vec<i8> {
        (0..len as u64).map(|n| self.term(n)).collect()
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignSeq::R => "r",
            SignSeq::RPrime => "rprime",
        })
    }
}

impl FromStr for SignSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r" => Ok(SignSeq::R),
            "rprime" | "r'" => Ok(SignSeq::RPrime),
            other => Err(Error::InvalidArgument(format!("unknown sequence {other:?}"))),
        }
    }
}

/// First `len` letters of the fixed point `s` of the substitution, leading with `a`.
pub fn s_prefix(len: usize) -> Word {
    let sigma = Substitution::rudin_shapiro();
    let mut k = 0u32;
    while (1usize << k) < len {
        k += 1;
    }
    let mut letters = sigma.iterate(Letter::A, k).into_letters();
    letters.truncate(len);
    Word::from_letters(letters)
}

/// Coefficient check of `R(z) + R(-z) = 2 R(z^2)` up to degree `degree`.
pub fn mahler_check(degree: u64) -> bool {
    mahler_check_with(degree, r)
}

/// As [`mahler_check`] against an arbitrary candidate for `r`.
pub fn mahler_check_with(degree: u64, r: impl Fn(u64) -> i8) -> bool {
    (0..=degree).all(|m| {
        let lhs = r(m) as i64 * (1 + if m % 2 == 0 { 1 } else { -1 });
        let rhs = if m % 2 == 0 { 2 * r(m / 2) as i64 } else { 0 };
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::SignCoding;

    /// Table built straight from the recurrence, index by index.
    fn r_table(len: usize) -> Vec<i8> {
        let mut t = vec![0i8; len];
        t[0] = 1;
        for n in 1..len {
            let h = n / 2;
            // r(2h) = r(h), r(2h+1) = (-1)^h r(h)
            t[n] = if n % 2 == 1 && h % 2 == 1 { -t[h] } else { t[h] };
        }
        t
    }

    #[test]
    fn small_values() {
        assert_eq!(r(0), 1);
        assert_eq!(r(3), -1);
        assert_eq!(r(6), -1);
        assert_eq!(r_prime(0), 1);
        assert_eq!(r_prime(1), -1);
        assert_eq!(r_prime(2), 1);
        let first: Vec<i8> = (0..8).map(r).collect();
        assert_eq!(first, vec![1, 1, 1, -1, 1, 1, -1, 1]);
    }

    #[test]
    fn descent_matches_table() {
        let t = r_table(1 << 16);
        for (n, &v) in t.iter().enumerate() {
            assert_eq!(r(n as u64), v, "n = {n}");
        }
    }

    #[test]
    fn generation_routes_agree() {
        let len = 1usize << 16;
        let s = s_prefix(len);
        let tau = SignCoding::TAU.apply(&s);
        let tau_p = SignCoding::TAU_PRIME.apply(&s);
        for n in 0..len {
            assert_eq!(tau.signs()[n], r(n as u64), "tau at {n}");
            assert_eq!(tau_p.signs()[n], r_prime(n as u64), "tau' at {n}");
            let alt = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(r_prime(n as u64), alt * r(n as u64));
        }
    }

    #[test]
    fn four_step_relations() {
        for n in 0..(1u64 << 16) {
            let alt = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(r(4 * n), r(n));
            assert_eq!(r(4 * n + 1), r(n));
            assert_eq!(r(4 * n + 2), alt * r(n));
            assert_eq!(r(4 * n + 3), -alt * r(n));
        }
    }

    #[test]
    fn prefixes() {
        assert_eq!(s_prefix(1).to_string(), "a");
        assert_eq!(s_prefix(4).to_string(), "abac");
        assert_eq!(s_prefix(8).to_string(), "abacabdb");
        assert_eq!(s_prefix(5).to_string(), "abaca");
        assert!(s_prefix(1000).starts_with(&s_prefix(300)));
    }

    #[test]
    fn mahler() {
        assert!(mahler_check(1));
        assert!(mahler_check(2));
        assert!(mahler_check(4096));
        assert!(!mahler_check_with(64, |n| if n == 10 { -r(n) } else { r(n) }));
    }

    #[test]
    fn large_indices() {
        // 63 adjacent pairs of set bits
        assert_eq!(r(u64::MAX), -1);
        let _ = r_prime(u64::MAX);
    }
}
