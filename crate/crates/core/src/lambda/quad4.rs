use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Largest scale with `4^k` representable in a `u64`.
pub const MAX_SCALE: u32 = 31;

/// A positive 4-adic rational `p / 4^k`, kept normalized
/// (`k = 0` or `p` not divisible by 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quad4 {
    p: u64,
    k: u32,
}

impl Quad4 {
    pub fn new(p: u64, k: u32) -> Result<Self, Error> {
        if p == 0 {
            return Err(Error::InvalidQuad4(format!("{p}/4^{k} is not positive")));
        }
        let (mut p, mut k) = (p, k);
        while k > 0 && p % 4 == 0 {
            p /= 4;
            k -= 1;
        }
        if k > MAX_SCALE {
            return Err(Error::InvalidQuad4(format!("scale 4^{k} exceeds 4^{MAX_SCALE}")));
        }
        Ok(Quad4 { p, k })
    }

    pub fn integer(n: u64) -> Result<Self, Error> {
        Self::new(n, 0)
    }

    pub fn numerator(&self) -> u64 {
        self.p
    }

    pub fn scale(&self) -> u32 {
        self.k
    }

    pub fn is_integer(&self) -> bool {
        self.k == 0
    }

    /// `floor(x)`.
    pub fn floor(&self) -> u64 {
        self.p >> (2 * self.k)
    }

    /// `floor(4^j x)`, or `None` if it does not fit in 128 bits.
    pub fn floor_scaled(&self, j: u32) -> Option<u128> {
        if j <= self.k {
            Some((self.p >> (2 * (self.k - j))) as u128)
        } else {
            let shift = 2 * (j - self.k);
            let p = self.p as u128;
            if shift >= 128 || p.leading_zeros() < shift {
                None
            } else {
                Some(p << shift)
            }
        }
    }

    /// Fractional base-4 digit `x_j`, `j >= 1`; zero past the scale.
    pub fn digit(&self, j: u32) -> u8 {
        if j == 0 || j > self.k {
            0
        } else {
            ((self.p >> (2 * (self.k - j))) & 3) as u8
        }
    }

    /// Integer part and the terminating fractional digits `x_1 .. x_k`.
    pub fn base4_digits(&self) -> (u64, Vec<u8>) {
        (self.floor(), (1..=self.k).map(|j| self.digit(j)).collect())
    }

    /// `4x`.
    pub fn times4(&self) -> Result<Self, Error> {
        if self.k > 0 {
            Quad4::new(self.p, self.k - 1)
        } else {
            self.p
                .checked_mul(4)
                .ok_or(Error::Overflow("4x"))
                .and_then(|p| Quad4::new(p, 0))
        }
    }

    /// Numerator of `x` over the common denominator `4^k`, `k >= scale`.
    pub fn numerator_at(&self, k: u32) -> Option<u64> {
        if k < self.k {
            return None;
        }
        let shift = 2 * (k - self.k);
        if shift >= 64 || self.p.leading_zeros() < shift {
            None
        } else {
            Some(self.p << shift)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / 4f64.powi(self.k as i32)
    }

    /// Exact decimal expansion (terminating, at most `2k` fractional digits).
    pub fn decimal(&self) -> String {
        let int = self.floor();
        if self.k == 0 {
            return int.to_string();
        }
        // frac / 4^k = frac * 25^k / 10^(2k)
        let frac = (self.p - (int << (2 * self.k))) as u128;
        let digits = 2 * self.k as usize;
        let mut scaled = num_bigint::BigUint::from(frac);
        scaled *= num_bigint::BigUint::from(25u32).pow(self.k);
        let mut s = format!("{scaled:0>digits$}");
        while s.ends_with('0') {
            s.pop();
        }
        if s.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{s}")
        }
    }
}

impl PartialOrd for Quad4 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad4 {
    fn cmp(&self, other: &Self) -> Ordering {
        let k = self.k.max(other.k);
        let a = (self.p as u128) << (2 * (k - self.k));
        let b = (other.p as u128) << (2 * (k - other.k));
        a.cmp(&b)
    }
}

/// `P/4^K`, or just `P` for integers.
impl fmt::Display for Quad4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/4^{}", self.p, self.k)
        }
    }
}

/// Accepts `P/4^K`, `P`, `4^-M`, `4^E`, and `P/D` for a power of two `D`.
impl FromStr for Quad4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidQuad4(s.to_string());
        let t = s.trim();
        if let Some(exp) = t.strip_prefix("4^-") {
            let k: u32 = exp.parse().map_err(|_| bad())?;
            return Quad4::new(1, k);
        }
        if let Some(exp) = t.strip_prefix("4^") {
            let e: u32 = exp.parse().map_err(|_| bad())?;
            let p = 4u64.checked_pow(e).ok_or_else(bad)?;
            return Quad4::new(p, 0);
        }
        match t.split_once('/') {
            None => Quad4::new(t.parse().map_err(|_| bad())?, 0),
            Some((num, den)) => {
                let p: u64 = num.trim().parse().map_err(|_| bad())?;
                let den = den.trim();
                let k = match den.strip_prefix("4^") {
                    Some(e) => e.parse().map_err(|_| bad())?,
                    None => {
                        let d: u64 = den.parse().map_err(|_| bad())?;
                        if d == 0 || !d.is_power_of_two() {
                            return Err(bad());
                        }
                        let t = d.trailing_zeros();
                        if t % 2 == 1 {
                            // p / 2^t = 2p / 4^((t+1)/2)
                            let p2 = p.checked_mul(2).ok_or_else(bad)?;
                            return Quad4::new(p2, t.div_ceil(2));
                        }
                        t / 2
                    }
                };
                Quad4::new(p, k)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quad4 {
        s.parse().unwrap()
    }

    #[test]
    fn normalizes() {
        assert_eq!(q("8/4^1"), q("2"));
        assert_eq!(q("4/4^2"), q("1/4^1"));
        assert_eq!(q("4^-2").to_string(), "1/4^2");
        assert_eq!(q("12/16"), q("3/4^1"));
        assert!("0".parse::<Quad4>().is_err());
        assert!("3/5".parse::<Quad4>().is_err());
        assert_eq!(q("1/2"), q("2/4^1"));
        assert_eq!(q("3/8"), q("6/4^2"));
        assert!("1/4^40".parse::<Quad4>().is_err());
    }

    #[test]
    fn digits() {
        assert_eq!(q("1/4").base4_digits(), (0, vec![1]));
        assert_eq!(q("5").base4_digits(), (5, vec![]));
        assert_eq!(q("15/16").base4_digits(), (0, vec![3, 3]));
        assert_eq!(q("27/4^2").base4_digits(), (1, vec![2, 3]));
    }

    #[test]
    fn scaled_floors() {
        let x = q("27/4^2");
        assert_eq!(x.floor_scaled(0), Some(1));
        assert_eq!(x.floor_scaled(1), Some(6));
        assert_eq!(x.floor_scaled(2), Some(27));
        assert_eq!(x.floor_scaled(3), Some(108));
        assert_eq!(q("1").floor_scaled(70), None);
    }

    #[test]
    fn ordering_and_decimal() {
        assert!(q("1/4") < q("1/2"));
        assert!(q("5/4") > q("1"));
        assert_eq!(q("5/4").decimal(), "1.25");
        assert_eq!(q("1/4^3").decimal(), "0.015625");
        assert_eq!(q("7").decimal(), "7");
        assert_eq!(q("1/4").times4().unwrap(), q("1"));
        assert_eq!(q("3").times4().unwrap(), q("12"));
    }
}
