//! Verification batteries over a parameterized model of the recurrences.
//!
//! [`Recurrence`] re-implements `r`, `M` and `Delta M` with every constant
//! exposed, so a single constant can be perturbed and each battery shown to
//! notice. The reference constants reproduce the library's own functions.

use std::fmt;
use std::str::FromStr;

use crate::complexity::{
    build_extremal, check_sum_identities_with, BruteForce, FactorOracle, Flavor, DEFAULT_PREFIX_CAP,
};
use crate::error::Error;
use crate::lambda::{
    a_exact_with, digit_weight, endpoint_diffs_with, holder_scan_with, numerator_with, selfsim_check_with, Dyadic,
    EndpointRule, Quad4,
};
use crate::regularity::{
    fig2_automaton, guess_linear_representation, kernel_closure, synthesize_dfao, verify_linear_representation,
};
use crate::rudin::mahler_check_with;

/// The constants of the three recurrences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Recurrence {
    /// `r(2n) = s r(n)`; reference `1`.
    pub r_even_sign: i8,
    /// `r(2n+1) = s^n r(n)`; reference `-1`.
    pub r_odd_sign: i8,
    /// Additive constants of `M(4n)`, `M(4n+1)`, `M(4n+2)`, `M(4n+3)`; reference `2, 1, 1, 1`.
    pub m_offsets: [u64; 4],
    /// `Delta M(4n)`; reference `-1`.
    pub delta_low: i8,
    /// `Delta M(4n+3)`; reference `1`.
    pub delta_high: i8,
}

/// A single perturbed constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    REvenSign,
    ROddSign,
    MaxSumOffset(usize),
    DeltaLow,
    DeltaHigh,
}

impl Recurrence {
    pub const REFERENCE: Recurrence = Recurrence {
        r_even_sign: 1,
        r_odd_sign: -1,
        m_offsets: [2, 1, 1, 1],
        delta_low: -1,
        delta_high: 1,
    };

    pub fn mutated(mut self, m: Mutation) -> Self {
        match m {
            Mutation::REvenSign => self.r_even_sign = -self.r_even_sign,
            Mutation::ROddSign => self.r_odd_sign = -self.r_odd_sign,
            Mutation::MaxSumOffset(i) => self.m_offsets[i] += 1,
            Mutation::DeltaLow => self.delta_low = -self.delta_low,
            Mutation::DeltaHigh => self.delta_high = -self.delta_high,
        }
        self
    }

    pub fn r(&self, n: u64) -> i8 {
        if n == 0 {
            return 1;
        }
        let half = n / 2;
        let factor = if n % 2 == 0 {
            self.r_even_sign
        } else if half % 2 == 1 {
            self.r_odd_sign
        } else {
            1
        };
        factor * self.r(half)
    }

    /// `(-1)^n r(n)`.
    pub fn r_prime(&self, n: u64) -> i8 {
        if n % 2 == 0 {
            self.r(n)
        } else {
            -self.r(n)
        }
    }

    fn max_sum_pair(&self, n: u64) -> (u64, u64) {
        let o = self.m_offsets;
        if n < 4 {
            let base = [0, 1, 2, 3, 2 + o[0]];
            return (base[n as usize], base[n as usize + 1]);
        }
        let (a, b) = self.max_sum_pair(n / 4);
        match n % 4 {
            0 => (2 * a + o[0], 2 * a + o[1]),
            1 => (2 * a + o[1], a + b + o[2]),
            2 => (a + b + o[2], 2 * b + o[3]),
            _ => (2 * b + o[3], 2 * b + o[0]),
        }
    }

    pub fn max_sum(&self, n: u64) -> u64 {
        self.max_sum_pair(n).0
    }

    pub fn delta(&self, mut n: u128) -> i8 {
        while n >= 4 {
            match n % 4 {
                0 => return self.delta_low,
                3 => return self.delta_high,
                _ => n /= 4,
            }
        }
        1
    }
}

/// The named batteries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Brute,
    SumIdentities,
    Extremal,
    Automaton,
    Kernel,
    Endpoint,
    Selfsim,
    Holder,
    Mahler,
    Lambda,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Brute,
        Suite::SumIdentities,
        Suite::Extremal,
        Suite::Automaton,
        Suite::Kernel,
        Suite::Endpoint,
        Suite::Selfsim,
        Suite::Holder,
        Suite::Mahler,
        Suite::Lambda,
    ];

    /// Bound used when the suite runs as part of `all`.
    ///
    /// Range suites take the caller's bound; the others keep their own
    /// scale, since their bound is a depth or a sample size.
    pub fn bound_within_all(self, n: u64) -> u64 {
        match self {
            Suite::Automaton => 1 << 16,
            Suite::Kernel => 100_000,
            Suite::Endpoint => 8,
            Suite::Selfsim => 2500,
            Suite::Holder => 10,
            _ => n,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Brute => "brute",
            Suite::SumIdentities => "lemma4",
            Suite::Extremal => "extremal",
            Suite::Automaton => "automaton",
            Suite::Kernel => "kernel",
            Suite::Endpoint => "endpoint",
            Suite::Selfsim => "selfsim",
            Suite::Holder => "holder",
            Suite::Mahler => "mahler",
            Suite::Lambda => "lambda",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one battery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bound: u64,
    pub checks: u64,
    pub violations: u64,
    /// The first few violations, described.
    pub samples: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, bound: u64) -> Self {
        SuiteReport {
            suite,
            bound,
            checks: 0,
            violations: 0,
            samples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.samples.len() < 5 {
                self.samples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Runs `suite` (every battery for [`Suite::All`]) against the reference constants.
pub fn run_suite(suite: Suite, bound: u64) -> Result<Vec<SuiteReport>, Error> {
    run_suite_with(suite, bound, &Recurrence::REFERENCE)
}

pub fn run_suite_with(suite: Suite, bound: u64, model: &Recurrence) -> Result<Vec<SuiteReport>, Error> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    match suite {
        Suite::All => Suite::EACH
            .iter()
            .map(|&s| run_one(s, s.bound_within_all(bound), model))
            .collect(),
        s => Ok(vec![run_one(s, bound, model)?]),
    }
}

fn run_one(suite: Suite, bound: u64, model: &Recurrence) -> Result<SuiteReport, Error> {
    let mut rep = SuiteReport::new(suite, bound);
    match suite {
        Suite::All => unreachable!("expanded by the caller"),
        Suite::Brute => brute(&mut rep, bound, model)?,
        Suite::SumIdentities => {
            for v in check_sum_identities_with(bound, bound, |n| model.r(n)) {
                rep.check(false, || {
                    format!(
                        "identity ({}) at i = {}, n = {}: {} != {}",
                        v.identity, v.i, v.n, v.lhs, v.rhs
                    )
                });
            }
            rep.checks = 16 * bound * bound.saturating_sub(1);
        }
        Suite::Extremal => {
            let mut oracle = FactorOracle::default();
            for n in 1..=bound {
                for flavor in [Flavor::W, Flavor::WTilde] {
                    let ok = build_extremal(n, flavor)
                        .map(|w| oracle.check(&w, model.max_sum(n) as i64).passed())
                        .unwrap_or(false);
                    rep.check(ok, || format!("{flavor} word of length {n}"));
                }
            }
        }
        Suite::Automaton => {
            let a = fig2_automaton();
            for n in 0..bound {
                let out = a.eval(n);
                rep.check(out == model.delta(n as u128) as i64, || {
                    format!("automaton vs Delta M at {n}")
                });
                let diff = model.max_sum(n + 1) as i64 - model.max_sum(n) as i64;
                rep.check(out == diff, || format!("automaton vs M(n+1) - M(n) at {n}"));
            }
        }
        Suite::Kernel => kernel(&mut rep, bound, model)?,
        Suite::Endpoint => {
            for k in 1..=bound as u32 {
                let violations = endpoint_diffs_with(k, EndpointRule::Signed, &|n| model.delta(n))?;
                rep.checks += (1u64 << (2 * k)) - 1;
                for v in violations {
                    rep.checks -= 1;
                    rep.check(false, || {
                        format!("k = {}, z = {}: {} != {}", v.k, v.z, v.got, v.expected)
                    });
                }
            }
        }
        Suite::Selfsim => {
            let (m, d) = (|n| model.max_sum(n), |n| model.delta(n));
            for k in 0..4u32 {
                for p in 1..=bound {
                    let x = Quad4::new(p, k)?;
                    rep.check(selfsim_check_with(&x, &m, &d)?, || format!("self-similarity at {x}"));
                }
            }
        }
        Suite::Holder => holder(&mut rep, bound, model)?,
        Suite::Mahler => {
            rep.check(mahler_check_with(bound, |n| model.r(n)), || {
                format!("coefficient identity fails below degree {bound}")
            });
            rep.checks = bound + 1;
        }
        Suite::Lambda => lambda(&mut rep, bound, model)?,
    }
    Ok(rep)
}

fn brute(rep: &mut SuiteReport, bound: u64, model: &Recurrence) -> Result<(), Error> {
    let m = *model;
    let mut br = BruteForce::from_fn(move |n| m.r(n), DEFAULT_PREFIX_CAP);
    let mut bp = BruteForce::from_fn(move |n| m.r_prime(n), DEFAULT_PREFIX_CAP);
    for n in 1..=bound {
        let (a, b) = (br.extrema(n)?, bp.extrema(n)?);
        let rec = model.max_sum(n) as i64;
        rep.check(a.max == rec && b.max == rec, || {
            format!("M({n}): recurrence {rec}, brute {} and {}", a.max, b.max)
        });
        rep.check(a.max + a.min == 0 && b.max + b.min == 0, || {
            format!("M + m != 0 at {n}")
        });
        let classes = |e: &crate::complexity::ExtremaReport| ((e.max - e.min) / 2 + 1) as u64;
        rep.check(a.rho == classes(&a) && b.rho == classes(&b), || {
            format!("distinct sums at {n} are not (M - m)/2 + 1")
        });
        rep.check(a.rho == b.rho, || format!("rho differs between r and r' at {n}"));
    }
    Ok(())
}

fn kernel(rep: &mut SuiteReport, bound: u64, model: &Recurrence) -> Result<(), Error> {
    let delta = |n: u64| model.delta(n as u128) as i64;
    for base in [2, 4] {
        let small = kernel_closure(&delta, base, 4096, 256)?;
        let big = kernel_closure(&delta, base, 8192, 256)?;
        rep.check(small.closed && big.closed, || {
            format!("base-{base} kernel of Delta M did not close")
        });
        rep.check(small.nodes == big.nodes && small.edges == big.edges, || {
            format!("base-{base} kernel changed under fingerprint doubling")
        });
        if base == 4 && small.closed {
            let a = synthesize_dfao(&small)?;
            rep.check(a.minimize().isomorphic(&fig2_automaton()), || {
                "synthesized automaton differs from the reference".into()
            });
        }
    }
    let m = |n: u64| model.max_sum(n) as i64;
    match guess_linear_representation(&m, 2, 512, 64) {
        Ok(lr) => {
            rep.check(verify_linear_representation(&lr, &m, bound), || {
                format!("linear representation of M fails below {bound}")
            });
            let mut prev = lr.eval(0);
            for n in 0..4096u64 {
                let next = lr.eval(n + 1);
                let d = num_rational::BigRational::from_integer((model.delta(n as u128) as i64).into());
                rep.check(&next - &prev == d, || {
                    format!("representation differences disagree with Delta M at {n}")
                });
                prev = next;
            }
        }
        Err(e) => rep.check(false, || format!("no linear representation of M: {e}")),
    }
    Ok(())
}

fn holder(rep: &mut SuiteReport, depth: u64, model: &Recurrence) -> Result<(), Error> {
    let k = depth as u32;
    let delta = |n: u128| model.delta(n);
    let scan = holder_scan_with(k, 100_000, 0x5eed, &delta)?;
    rep.check(scan.max_ratio <= 10.0, || {
        format!("ratio {} at grid pair {:?} exceeds 10", scan.max_ratio, scan.worst_pair)
    });
    let adj = k.min(6);
    let top = 1u64 << (2 * adj);
    let mut prev = a_exact_with(&Quad4::new(1, adj)?, &delta);
    for z in 1..top - 1 {
        let next = a_exact_with(&Quad4::new(z + 1, adj)?, &delta);
        let da = prev - next;
        rep.check(da * da == Dyadic::pow2_neg(2 * adj), || {
            format!("adjacent ratio is not 1 at z = {z}, k = {adj}")
        });
        prev = next;
    }
    Ok(())
}

fn lambda(rep: &mut SuiteReport, bound: u64, model: &Recurrence) -> Result<(), Error> {
    const TERMS: u32 = 8;
    const DEPTH: u32 = 12;
    let (m, d) = (|n| model.max_sum(n), |n| model.delta(n));
    for n in 1..=bound {
        let x = Quad4::integer(n)?;
        // the series at an integer, summed term by term, plus its tail
        let mut partial = Dyadic::ZERO;
        for j in 1..=TERMS {
            let floor = (n as u128) << (2 * j);
            partial = partial + Dyadic::pow2_neg(j) * (digit_weight(0) * model.delta(floor - 1)) as i64;
        }
        rep.check(partial + Dyadic::pow2_neg(TERMS) == Dyadic::ONE, || {
            format!("a({n}) != 1")
        });
        let exact = numerator_with(&x, &m, &d);
        rep.check(exact == Dyadic::integer(model.max_sum(n) as i128 + 2), || {
            format!("numerator at {n}")
        });
        let Some(scaled) = n.checked_mul(1 << (2 * DEPTH)) else {
            continue;
        };
        let quotient = (model.max_sum(scaled) + 1) as f64 / (scaled as f64).sqrt();
        let limit = exact.to_f64() / (n as f64).sqrt();
        let tol = 2f64.powi(2 - DEPTH as i32) / (n as f64).sqrt();
        rep.check((quotient - limit).abs() <= tol, || {
            format!("limit quotient at {n} is {quotient}, lambda {limit}")
        });
    }
    // geometric decay of the probe error at x = 1
    let devs: Vec<f64> = (1..=20u32)
        .map(|k| ((model.max_sum(1 << (2 * k)) + 1) as f64 / 2f64.powi(k as i32) - 3.0).abs())
        .collect();
    let ratios: Vec<f64> = devs
        .windows(2)
        .filter(|w| w[1] > 0.0)
        .map(|w| (w[0] / w[1]).ln())
        .collect();
    let factor = if ratios.is_empty() {
        0.0
    } else {
        (ratios.iter().sum::<f64>() / ratios.len() as f64).exp()
    };
    rep.check(factor >= 1.9, || {
        format!("probe error at x = 1 shrinks by {factor} per step")
    });
    Ok(())
}
