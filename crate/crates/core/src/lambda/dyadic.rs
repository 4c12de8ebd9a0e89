use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An exact dyadic rational `q / 2^j`, normalized (`j = 0` or `q` odd).
///
/// Numerators are `i128`; the values handled here have scales below 64 and
/// small magnitudes, so overflow would indicate misuse and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    q: i128,
    j: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { q: 0, j: 0 };
    pub const ONE: Dyadic = Dyadic { q: 1, j: 0 };

    pub fn new(q: i128, j: u32) -> Self {
        if q == 0 {
            return Dyadic::ZERO;
        }
        let shift = q.trailing_zeros().min(j);
        Dyadic {
            q: q >> shift,
            j: j - shift,
        }
    }

    pub fn integer(q: i128) -> Self {
        Dyadic { q, j: 0 }
    }

    /// `2^-j`.
    pub fn pow2_neg(j: u32) -> Self {
        Dyadic { q: 1, j }
    }

    pub fn numerator(&self) -> i128 {
        self.q
    }

    pub fn scale(&self) -> u32 {
        self.j
    }

    pub fn abs(self) -> Self {
        Dyadic {
            q: self.q.abs(),
            j: self.j,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.q == 0
    }

    /// `self * 2^e`.
    pub fn mul_pow2(self, e: u32) -> Self {
        if e <= self.j {
            Dyadic::new(self.q, self.j - e)
        } else {
            Dyadic::new(self.q.checked_shl(e - self.j).expect("dyadic overflow"), 0)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.q as f64 / 2f64.powi(self.j as i32)
    }

    fn aligned(self, other: Self) -> (i128, i128, u32) {
        let j = self.j.max(other.j);
        let a = self.q.checked_shl(j - self.j).expect("dyadic overflow");
        let b = other.q.checked_shl(j - other.j).expect("dyadic overflow");
        (a, b, j)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, j) = self.aligned(rhs);
        Dyadic::new(a.checked_add(b).expect("dyadic overflow"), j)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { q: -self.q, j: self.j }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    // scales add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.q.checked_mul(rhs.q).expect("dyadic overflow"), self.j + rhs.j)
    }
}

impl Mul<i64> for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: i64) -> Dyadic {
        Dyadic::new(self.q.checked_mul(rhs as i128).expect("dyadic overflow"), self.j)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}

/// `q/2^j`, or just `q` for integers.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.j == 0 {
            write!(f, "{}", self.q)
        } else {
            write!(f, "{}/2^{}", self.q, self.j)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalizes_and_prints() {
        assert_eq!(Dyadic::new(4, 3), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(6, 1), Dyadic::integer(3));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert_eq!(Dyadic::new(-3, 2).to_string(), "-3/2^2");
        assert_eq!(Dyadic::pow2_neg(1).mul_pow2(1), Dyadic::ONE);
    }

    #[test]
    fn arithmetic() {
        let half = Dyadic::pow2_neg(1);
        assert_eq!(half + half, Dyadic::ONE);
        assert_eq!(Dyadic::ONE - Dyadic::pow2_neg(4), Dyadic::new(15, 4));
        assert_eq!(half * half, Dyadic::pow2_neg(2));
        assert_eq!(half * 6, Dyadic::integer(3));
        assert!(Dyadic::new(3, 2) < Dyadic::ONE);
        assert_eq!(Dyadic::new(-5, 3).abs(), Dyadic::new(5, 3));
        assert_eq!(Dyadic::new(3, 2).to_f64(), 0.75);
    }

    proptest! {
        #[test]
        fn add_sub_inverse(a in -1000i128..1000, ja in 0u32..20, b in -1000i128..1000, jb in 0u32..20) {
            let (x, y) = (Dyadic::new(a, ja), Dyadic::new(b, jb));
            prop_assert_eq!(x + y - y, x);
            prop_assert_eq!((x + y).to_f64(), x.to_f64() + y.to_f64());
        }
    }
}
