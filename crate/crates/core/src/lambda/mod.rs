//! Exact evaluation of `lambda(x) = (rho(x) + a(x)) / sqrt(x)` on 4-adic
//! rationals, where `rho(x) = rho(floor x)` and
//!
//! ```text
//! a(x) = sum_{j>=1} d(x_j) a_j(x) 2^-j,
//! a_j(x) = -1 if 4^j x < 1, else Delta M(floor(4^j x) - 1),
//! d(0) = d(2) = 1, d(1) = 0, d(3) = 2,
//! ```
//!
//! with `x_j` the base-4 digits of `x`. For `x = p / 4^k` every digit past
//! `k` is 0 and every `a_j` past `k` is `Delta M(4m + 3) = 1`, so the tail
//! sums to exactly `2^-k` and `a(x)` is a dyadic rational.

mod dyadic;
mod quad4;

pub use dyadic::Dyadic;
pub use quad4::{Quad4, MAX_SCALE};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexity::{delta_m_wide, max_sum};
use crate::error::Error;

/// Digit weight `d(y)`.
pub fn digit_weight(y: u8) -> i8 {
    match y {
        0 | 2 => 1,
        1 => 0,
        3 => 2,
        _ => panic!("base-4 digit out of range: {y}"),
    }
}

fn a_term(x: &Quad4, j: u32, delta: &dyn Fn(u128) -> i8) -> i8 {
    let weight = digit_weight(x.digit(j));
    if weight == 0 {
        return 0;
    }
    let floor = x.floor_scaled(j).expect("j within the scale of x");
    let aj = if floor == 0 { -1 } else { delta(floor - 1) };
    weight * aj
}

/// `d(x_j) a_j(x)` for `1 <= j <= 64`, a value in `{-2, -1, 0, 1, 2}`.
pub fn a_coef(x: &Quad4, j: u32) -> i8 {
    assert!(j >= 1, "coefficients start at j = 1");
    a_term(x, j, &delta_m_wide)
}

/// `a(x)` exactly.
pub fn a_exact(x: &Quad4) -> Dyadic {
    a_exact_with(x, &delta_m_wide)
}

/// [`a_exact`] against an arbitrary candidate for `Delta M`.
pub fn a_exact_with(x: &Quad4, delta: &dyn Fn(u128) -> i8) -> Dyadic {
    let k = x.scale();
    let mut sum = 0i128;
    for j in 1..=k {
        sum = 2 * sum + a_term(x, j, delta) as i128;
    }
    // sum / 2^k plus the tail 2^-k
    Dyadic::new(sum + 1, k)
}

/// A truncated series value with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncated {
    pub value: f64,
    pub error_bound: f64,
    /// Number of series terms actually summed.
    pub terms: u32,
}

/// `a(x)` for a real `x > 0` by summing the series through `j = terms`.
///
/// Since `|d(x_j) a_j(x)| <= 2`, the omitted tail is at most `2^(1-J)`.
/// Digits are extracted exactly from the binary value of `x`; if
/// `floor(4^J x)` would not fit in 128 bits the sum stops earlier and the
/// bound reflects the terms actually used.
pub fn a_float(x: f64, terms: u32) -> Result<Truncated, Error> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::InvalidArgument(format!("a(x) needs a finite x > 0, got {x}")));
    }
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one term is required".into()));
    }
    // x = mant * 2^exp exactly
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let floor_scaled = |j: u32| -> Option<u128> {
        let shift = exp + 2 * j as i32;
        if shift >= 0 {
            let m = mant as u128;
            if shift as u32 >= 128 || m.leading_zeros() < shift as u32 {
                None
            } else {
                Some(m << shift)
            }
        } else if -shift >= 64 {
            Some(0)
        } else {
            Some((mant >> (-shift)) as u128)
        }
    };
    let mut value = 0.0f64;
    let mut used = 0;
    for j in 1..=terms {
        let Some(floor) = floor_scaled(j) else { break };
        let digit = (floor & 3) as u8;
        let aj = if floor == 0 { -1 } else { delta_m_wide(floor - 1) };
        value += (digit_weight(digit) * aj) as f64 * 0.5f64.powi(j as i32);
        used = j;
    }
    if used == 0 {
        return Err(Error::Overflow("a(x) digit extraction"));
    }
    Ok(Truncated {
        value,
        error_bound: 2f64.powi(1 - used as i32),
        terms: used,
    })
}

/// `rho(x) + a(x)`, the exact numerator of `lambda(x)`.
pub fn numerator(x: &Quad4) -> Dyadic {
    numerator_with(x, &max_sum, &delta_m_wide)
}

/// [`numerator`] against candidate `M` and `Delta M`.
pub fn numerator_with(x: &Quad4, max_sum: &dyn Fn(u64) -> u64, delta: &dyn Fn(u128) -> i8) -> Dyadic {
    Dyadic::integer(max_sum(x.floor()) as i128 + 1) + a_exact_with(x, delta)
}

/// `lambda(x)` in double precision.
pub fn lambda_f64(x: &Quad4) -> f64 {
    numerator(x).to_f64() / x.to_f64().sqrt()
}

/// `lambda(x)` with an exact numerator and a decimal rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaValue {
    pub x: Quad4,
    /// `rho(x) + a(x)`.
    pub numerator: Dyadic,
    pub value: f64,
    /// Correctly rounded to `precision` significant digits, trailing zeros trimmed.
    pub decimal: String,
    pub precision: usize,
}

/// `lambda(x)` to `precision` significant digits.
///
/// The square root is taken over big integers: with `numerator = q / 2^j`
/// and `x = p / 4^k`, `floor(lambda 10^F) = isqrt(floor(q^2 4^k 10^2F / (4^j p)))`,
/// computed with guard digits beyond the requested precision and then rounded.
pub fn lambda_exact(x: &Quad4, precision: usize) -> Result<LambdaValue, Error> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be at least 1 digit".into()));
    }
    let num = numerator(x);
    let value = num.to_f64() / x.to_f64().sqrt();
    let decimal = ratio_sqrt_decimal(num, x, value, precision);
    Ok(LambdaValue {
        x: *x,
        numerator: num,
        value,
        decimal,
        precision,
    })
}

fn ratio_sqrt_decimal(num: Dyadic, x: &Quad4, approx: f64, precision: usize) -> String {
    if num.is_zero() {
        return "0".into();
    }
    let negative = num.numerator() < 0;
    let q = BigUint::from(num.numerator().unsigned_abs());
    let magnitude = approx.abs().log10().floor() as i64;
    let frac_digits = (precision as i64 + 3 - 1 - magnitude).max(0) as u32;
    let ten = BigUint::from(10u32);
    let top = &q * &q * (BigUint::one() << (2 * x.scale())) * ten.pow(2 * frac_digits);
    let bottom = (BigUint::one() << (2 * num.scale())) * BigUint::from(x.numerator());
    let floor = (top / bottom).sqrt();
    let text = round_significant(&floor.to_string(), frac_digits as usize, precision);
    if negative {
        format!("-{text}")
    } else {
        text
    }
}

/// Renders `digits * 10^-frac` rounded half-up to `sig` significant digits.
/// `digits` is a floor, so the dropped part decides rounding correctly.
fn round_significant(digits: &str, frac: usize, sig: usize) -> String {
    let digits = digits.trim_start_matches('0');
    if digits.is_empty() {
        return "0".into();
    }
    let mut frac = frac as i64;
    let mut kept: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
    if kept.len() > sig {
        let dropped = kept.len() - sig;
        let round_up = kept[sig] >= 5;
        kept.truncate(sig);
        frac -= dropped as i64;
        if round_up {
            let mut i = kept.len();
            loop {
                if i == 0 {
                    kept.insert(0, 1);
                    break;
                }
                i -= 1;
                if kept[i] == 9 {
                    kept[i] = 0;
                } else {
                    kept[i] += 1;
                    break;
                }
            }
        }
    }
    let mut s: String = kept.iter().map(|d| (b'0' + d) as char).collect();
    if frac <= 0 {
        s.extend(std::iter::repeat_n('0', (-frac) as usize));
        return s;
    }
    let frac = frac as usize;
    if s.len() <= frac {
        s = format!("{}{}", "0".repeat(frac - s.len() + 1), s);
    }
    let (int, fr) = s.split_at(s.len() - frac);
    let fr = fr.trim_end_matches('0');
    if fr.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{fr}")
    }
}

/// One step of the limit `rho(4^k x) / sqrt(4^k x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeStep {
    pub k: u32,
    pub quotient: f64,
}

/// The quotients `rho(4^k x) / sqrt(4^k x)` for `k = 1..=k_max`.
///
/// The last quotient is within `2^(2 - k_max) / sqrt(x)` of `lambda(x)`.
pub fn lambda_limit_probe(x: &Quad4, k_max: u32) -> Result<Vec<ProbeStep>, Error> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let xf = x.to_f64();
    (1..=k_max)
        .map(|k| {
            let floor = x
                .floor_scaled(k)
                .filter(|&f| f <= u64::MAX as u128)
                .ok_or(Error::Overflow("4^k x"))?;
            let scaled = xf * 4f64.powi(k as i32);
            Ok(ProbeStep {
                k,
                quotient: (max_sum(floor as u64) + 1) as f64 / scaled.sqrt(),
            })
        })
        .collect()
}

/// Geometric-mean factor by which `|quotient - lambda|` shrinks per step,
/// over consecutive steps with nonzero deviations. `None` if no such pair.
pub fn probe_shrink_factor(steps: &[ProbeStep], limit: f64) -> Option<f64> {
    let devs: Vec<f64> = steps.iter().map(|s| (s.quotient - limit).abs()).collect();
    let mut log_sum = 0.0;
    let mut count = 0;
    for w in devs.windows(2) {
        if w[0] > 0.0 && w[1] > 0.0 {
            log_sum += (w[0] / w[1]).ln();
            count += 1;
        }
    }
    (count > 0).then(|| (log_sum / count as f64).exp())
}

/// A failed endpoint-difference identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndpointViolation {
    pub k: u32,
    pub z: u64,
    pub got: Dyadic,
    pub expected: Dyadic,
}

/// Prediction for `a(z 4^-k) - a((z+1) 4^-k)`, `1 <= z < 4^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndpointRule {
    /// `-2^-k` for `z <= 4^k - 2` and `1 - 2^-k` at `z = 4^k - 1`.
    ///
    /// Holds when `z = 3 (mod 4)` but not in general: when the last digit
    /// of `z` is not 3, only the `k`-th series term differs and the sign
    /// depends on that digit.
    Uniform,
    /// The exact rule. At `z = 4^k - 1` as above; otherwise `2^-k` times
    /// `-1` if `z = 3 (mod 4)`, `+1` if `z = 0 (mod 4)`, and
    /// `-Delta M(floor(z / 4))` if `z = 1, 2 (mod 4)`.
    Signed,
}

/// Expected `a(z 4^-k) - a((z+1) 4^-k)` under `rule`.
pub fn endpoint_expected(rule: EndpointRule, k: u32, z: u64) -> Dyadic {
    let last = (1u64 << (2 * k)) - 1;
    let step = Dyadic::pow2_neg(k);
    if z == last {
        return Dyadic::ONE - step;
    }
    let sign = match (rule, z % 4) {
        (EndpointRule::Uniform, _) | (EndpointRule::Signed, 3) => -1,
        (EndpointRule::Signed, 0) => 1,
        (EndpointRule::Signed, _) => -delta_m_wide((z / 4) as u128) as i64,
    };
    step * sign
}

/// Checks `rule` over every `1 <= z <= 4^k - 1`.
pub fn endpoint_diffs(k: u32, rule: EndpointRule) -> Result<Vec<EndpointViolation>, Error> {
    endpoint_diffs_with(k, rule, &delta_m_wide)
}

/// [`endpoint_diffs`] with `a` built from a candidate `Delta M`.
pub fn endpoint_diffs_with(
    k: u32,
    rule: EndpointRule,
    delta: &dyn Fn(u128) -> i8,
) -> Result<Vec<EndpointViolation>, Error> {
    if k == 0 || k > 16 {
        return Err(Error::InvalidArgument(format!("endpoint depth {k} outside 1..=16")));
    }
    let top = 1u64 << (2 * k);
    let mut out = Vec::new();
    let mut prev = a_exact_with(&Quad4::new(1, k)?, delta);
    for z in 1..top {
        let next = a_exact_with(&Quad4::new(z + 1, k)?, delta);
        let got = prev - next;
        let expected = endpoint_expected(rule, k, z);
        if got != expected {
            out.push(EndpointViolation { k, z, got, expected });
        }
        prev = next;
    }
    Ok(out)
}

/// Result of a sampled Hölder-1/2 scan of `a` on `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderScan {
    pub max_ratio: f64,
    pub worst_pair: (u64, u64),
    pub pairs: u64,
    pub depth: u32,
}

/// Exact test that `|a(x) - a(y)|^2 == |x - y|` for two grid points.
pub fn holder_ratio_is_one(k: u32, z1: u64, z2: u64) -> Result<bool, Error> {
    let da = a_exact(&Quad4::new(z1, k)?) - a_exact(&Quad4::new(z2, k)?);
    let dz = z1.abs_diff(z2) as i128;
    Ok(da * da == Dyadic::new(dz, 2 * k))
}

/// `|a(x) - a(y)| / |x - y|^(1/2)` over `trials` random pairs of distinct
/// points `z 4^-k` in `(0, 1)`, returning the maximum.
pub fn holder_scan(k: u32, trials: u64, seed: u64) -> Result<HolderScan, Error> {
    holder_scan_with(k, trials, seed, &delta_m_wide)
}

/// [`holder_scan`] against a candidate `Delta M`.
pub fn holder_scan_with(k: u32, trials: u64, seed: u64, delta: &dyn Fn(u128) -> i8) -> Result<HolderScan, Error> {
    if k == 0 || k > MAX_SCALE {
        return Err(Error::InvalidArgument(format!(
            "grid depth {k} outside 1..={MAX_SCALE}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let top = 1u64 << (2 * k);
    if top < 3 {
        return Err(Error::InvalidArgument("grid has fewer than two interior points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scan = HolderScan {
        max_ratio: 0.0,
        worst_pair: (0, 0),
        pairs: 0,
        depth: k,
    };
    let scale = 2f64.powi(k as i32);
    while scan.pairs < trials {
        let z1 = rng.random_range(1..top);
        let z2 = rng.random_range(1..top);
        if z1 == z2 {
            continue;
        }
        let da = a_exact_with(&Quad4::new(z1, k)?, delta) - a_exact_with(&Quad4::new(z2, k)?, delta);
        let ratio = da.abs().to_f64() * scale / (z1.abs_diff(z2) as f64).sqrt();
        if ratio > scan.max_ratio {
            scan.max_ratio = ratio;
            scan.worst_pair = (z1.min(z2), z1.max(z2));
        }
        scan.pairs += 1;
    }
    Ok(scan)
}

/// Numerator form of `lambda(4x) = lambda(x)`:
/// `rho(4x) + a(4x) == 2 (rho(x) + a(x))`, exactly.
pub fn selfsim_check(x: &Quad4) -> Result<bool, Error> {
    selfsim_check_with(x, &max_sum, &delta_m_wide)
}

/// [`selfsim_check`] against candidate `M` and `Delta M`.
pub fn selfsim_check_with(x: &Quad4, max_sum: &dyn Fn(u64) -> u64, delta: &dyn Fn(u128) -> i8) -> Result<bool, Error> {
    let y = x.times4()?;
    Ok(numerator_with(&y, max_sum, delta) == numerator_with(x, max_sum, delta) * 2)
}

/// `lambda(n)` at a positive integer, where `a(n) = 1`.
pub fn lambda_at_integer(n: u64) -> f64 {
    (max_sum(n) + 2) as f64 / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::max_sum;

    fn q(s: &str) -> Quad4 {
        s.parse().unwrap()
    }

    /// `Delta M` as a difference of the recurrence `M`, independent of the
    /// `Delta M` recurrence used by the implementation.
    fn delta_by_difference(n: u128) -> i8 {
        let n = n as u64;
        (max_sum(n + 1) as i64 - max_sum(n) as i64) as i8
    }

    /// Partial sum of the defining series through `terms`, from the
    /// definition of `a_j` with `M` differences.
    fn series_partial(x: &Quad4, terms: u32) -> Dyadic {
        let mut acc = Dyadic::ZERO;
        for j in 1..=terms {
            let floor = x.floor_scaled(j).unwrap();
            let digit = (floor % 4) as u8;
            let aj = if floor == 0 { -1 } else { delta_by_difference(floor - 1) };
            acc = acc + Dyadic::pow2_neg(j) * (digit_weight(digit) * aj) as i64;
        }
        acc
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(a_coef(&q("1/4"), 1), 0);
        assert_eq!(a_coef(&q("1/16"), 1), -1);
        assert_eq!(a_coef(&q("1/2"), 1), 1);
    }

    #[test]
    fn closed_tail_matches_series() {
        for s in [
            "1", "1/4", "1/2", "3/4", "1/16", "5/4", "27/4^2", "1000/4^5", "7", "63/4^3",
        ] {
            let x = q(s);
            for terms in x.scale().max(1)..=24 {
                let partial = series_partial(&x, terms);
                assert_eq!(
                    partial + Dyadic::pow2_neg(terms),
                    a_exact(&x),
                    "x = {s}, terms = {terms}"
                );
            }
        }
    }

    #[test]
    fn a_values() {
        assert_eq!(a_exact(&q("1")), Dyadic::ONE);
        assert_eq!(a_exact(&q("1/4")), Dyadic::pow2_neg(1));
        assert_eq!(a_exact(&q("1/4")) - a_exact(&q("2/4")), -Dyadic::pow2_neg(1));
        assert_eq!(a_exact(&q("1/16")), -Dyadic::pow2_neg(2));
    }

    #[test]
    fn float_series() {
        let t = a_float(1.0, 40).unwrap();
        assert!((t.value - 1.0).abs() <= t.error_bound);
        assert_eq!(t.error_bound, 2f64.powi(-39));
        let t = a_float(0.25, 40).unwrap();
        assert!((t.value - 0.5).abs() <= t.error_bound);
        let t = a_float(0.3, 1).unwrap();
        assert_eq!(t.error_bound, 1.0);
        assert!(a_float(-1.0, 4).is_err());
        assert!(a_float(1.0, 0).is_err());
    }

    #[test]
    fn float_agrees_with_exact_on_grid() {
        for k in 1..=5u32 {
            for p in 1..(4u64.pow(k) * 3) {
                let x = Quad4::new(p, k).unwrap();
                let t = a_float(x.to_f64(), 30).unwrap();
                assert!((t.value - a_exact(&x).to_f64()).abs() <= t.error_bound, "x = {x}");
            }
        }
    }

    #[test]
    fn lambda_values() {
        for (s, expect) in [("1", "3"), ("4", "3"), ("1/4", "3")] {
            let v = lambda_exact(&q(s), 12).unwrap();
            assert_eq!(v.decimal, expect, "x = {s}");
            assert!((v.value - 3.0).abs() < 1e-15);
        }
        let v = lambda_exact(&q("2"), 12).unwrap();
        assert_eq!(v.decimal, "2.82842712475");
        let v = lambda_exact(&q("3"), 12).unwrap();
        assert_eq!(v.numerator, Dyadic::integer(5));
        assert_eq!(v.decimal, "2.88675134595");
        let v = lambda_exact(&q("2"), 40).unwrap();
        assert_eq!(v.decimal, "2.828427124746190097603377448419396157139");
        assert!(lambda_exact(&q("2"), 0).is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_significant("29999", 4, 3), "3");
        assert_eq!(round_significant("12345", 4, 3), "1.23");
        assert_eq!(round_significant("12355", 4, 3), "1.24");
        assert_eq!(round_significant("99960", 4, 3), "10");
        assert_eq!(round_significant("00042", 4, 1), "0.004");
    }

    #[test]
    fn integers_use_closed_form() {
        for n in 1..=4096u64 {
            let x = Quad4::integer(n).unwrap();
            assert_eq!(a_exact(&x), Dyadic::ONE);
            let v = lambda_f64(&x);
            assert!((v - lambda_at_integer(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn probe() {
        let steps = lambda_limit_probe(&q("1"), 10).unwrap();
        assert_eq!(steps[0].quotient, 2.5);
        for s in &steps {
            assert_eq!(s.quotient, 3.0 - 2f64.powi(-(s.k as i32)));
        }
        let f = probe_shrink_factor(&steps, 3.0).unwrap();
        assert!((f - 2.0).abs() < 1e-9);

        let x = q("5/4");
        let lam = lambda_f64(&x);
        let steps = lambda_limit_probe(&x, 20).unwrap();
        let last = steps.last().unwrap();
        assert!((last.quotient - lam).abs() <= 2f64.powi(2 - 20) / x.to_f64().sqrt());
        assert!(lambda_limit_probe(&q("1"), 40).is_err());
    }

    /// `a(z 4^-k)` from `M` alone: `(M(4^K x) + 1) / 2^K - rho(x) + 2^-K` for `K >= k`.
    fn a_from_limit(z: u64, k: u32) -> Dyadic {
        let big = k + 3;
        let scaled = z << (2 * (big - k));
        Dyadic::new(max_sum(scaled) as i128 + 1, big) - Dyadic::integer(max_sum(z >> (2 * k)) as i128 + 1)
            + Dyadic::pow2_neg(big)
    }

    #[test]
    fn exact_matches_limit_oracle() {
        for k in 1..=5u32 {
            for z in 1..(4u64.pow(k) * 2) {
                assert_eq!(
                    a_exact(&Quad4::new(z, k).unwrap()),
                    a_from_limit(z, k),
                    "z = {z}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn endpoints() {
        assert!(endpoint_diffs(1, EndpointRule::Uniform).unwrap().is_empty());
        assert_eq!(a_exact(&q("1/4")) - a_exact(&q("2/4")), -Dyadic::pow2_neg(1));
        assert_eq!(a_exact(&q("3/4")) - a_exact(&q("1")), Dyadic::pow2_neg(1));
        // z = 4^k - 1 at k = 2: 1 - 2^-2
        assert_eq!(a_exact(&q("15/16")) - a_exact(&q("1")), Dyadic::new(3, 2));

        // the uniform rule breaks at multiples of 4 already for k = 2
        let v = endpoint_diffs(2, EndpointRule::Uniform).unwrap();
        assert_eq!(v.iter().map(|e| e.z).collect::<Vec<_>>(), vec![4, 8, 12]);
        assert!(v.iter().all(|e| e.got == Dyadic::pow2_neg(2)));
        assert_eq!(a_from_limit(4, 2) - a_from_limit(5, 2), Dyadic::pow2_neg(2));

        for k in 1..=6 {
            assert!(endpoint_diffs(k, EndpointRule::Signed).unwrap().is_empty(), "k = {k}");
        }
        // a(x) reads Delta M(4m) only through Delta M(4n+1) = Delta M(n)
        let model = crate::verify::Recurrence::REFERENCE.mutated(crate::verify::Mutation::DeltaLow);
        assert!(!endpoint_diffs_with(3, EndpointRule::Signed, &|n| model.delta(n))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn signed_rule_matches_limit_oracle() {
        for k in 1..=5u32 {
            for z in 1..4u64.pow(k) {
                let got = a_from_limit(z, k) - a_from_limit(z + 1, k);
                assert_eq!(got, endpoint_expected(EndpointRule::Signed, k, z), "z = {z}, k = {k}");
            }
        }
    }

    #[test]
    fn holder() {
        for z in 1..=14u64 {
            assert!(holder_ratio_is_one(2, z, z + 1).unwrap());
        }
        assert!(!holder_ratio_is_one(2, 15, 16).unwrap());
        let scan = holder_scan(6, 2000, 7).unwrap();
        assert!(scan.max_ratio <= 10.0);
        assert!(scan.max_ratio >= 1.0);
        assert_eq!(scan, holder_scan(6, 2000, 7).unwrap());
    }

    #[test]
    fn self_similarity() {
        assert!(selfsim_check(&q("1")).unwrap());
        assert!(selfsim_check(&q("1/4")).unwrap());
        assert_eq!(numerator(&q("4")), Dyadic::integer(6));
        assert_eq!(numerator(&q("1/4")) * 2, Dyadic::integer(3));
        for k in 0..=4u32 {
            for p in 1..200u64 {
                assert!(selfsim_check(&Quad4::new(p, k).unwrap()).unwrap());
            }
        }
    }
}
