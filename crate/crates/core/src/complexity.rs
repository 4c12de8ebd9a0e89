//! Window sums, the maximal/minimal window sums `M` and `m`, the abelian
//! complexity `rho`, and the extremal factors that attain `M`.
//!
//! Over `{-1, +1}` two factors are abelian equivalent exactly when their
//! digit sums agree, so `rho(n)` counts the distinct window sums of length
//! `n`. For `r` and `r'` this is `M(n) + 1` with
//!
//! ```text
//! M(4n)   = 2M(n) + 2          M(4n+1) = 2M(n) + 1
//! M(4n+2) = M(n) + M(n+1) + 1  M(4n+3) = 2M(n+1) + 1      (n >= 1)
//! ```
//!
//! and `M(0..=3) = 0, 1, 2, 3`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;
use crate::rudin::{self, SignSeq};
use crate::words::{find_bytes, Letter, SignCoding, Substitution, Word};

/// `Sigma(i, n)`: sum of `n` consecutive terms starting at `i`.
pub fn window_sum(seq: SignSeq, i: u64, n: u64) -> i64 {
    (i..i + n).map(|j| seq.term(j) as i64).sum()
}

/// Maximal and minimal window sums of one length, measured on a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremaReport {
    pub n: u64,
    pub max: i64,
    pub min: i64,
    /// Number of distinct window sums.
    pub rho: u64,
    /// Length of the prefix the windows were taken from.
    pub prefix_len: usize,
    pub stabilized: bool,
}

/// Default cap on the prefix a brute-force measurement may grow to.
pub const DEFAULT_PREFIX_CAP: usize = 1 << 26;

/// Brute-force extrema by exhaustive window scan.
///
/// The prefix starts at `max(4096, 64 n)` terms and doubles until one
/// doubling leaves `(M, m, rho)` unchanged. Terms are cached across calls,
/// so sweeping many `n` reuses the same prefix.
#[derive(Clone)]
pub struct BruteForce {
    seq: Option<SignSeq>,
    term: Arc<dyn Fn(u64) -> i8 + Send + Sync>,
    terms: Vec<i8>,
    cap: usize,
    seen: Vec<bool>,
}

impl fmt::Debug for BruteForce {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BruteForce")
            .field("seq", &self.seq)
            .field("prefix", &self.terms.len())
            .field("cap", &self.cap)
            .finish()
    }
}

impl BruteForce {
    pub fn new(seq: SignSeq) -> Self {
        Self::with_cap(seq, DEFAULT_PREFIX_CAP)
    }

    pub fn with_cap(seq: SignSeq, cap: usize) -> Self {
        let mut b = Self::from_fn(move |n| seq.term(n), cap);
        b.seq = Some(seq);
        b
    }

    /// Brute force over an arbitrary `+-1` sequence.
    pub fn from_fn(term: impl Fn(u64) -> i8 + Send + Sync + 'static, cap: usize) -> Self {
        BruteForce {
            seq: None,
            term: Arc::new(term),
            terms: Vec::new(),
            cap,
            seen: Vec::new(),
        }
    }

    /// The named sequence, if built from one.
    pub fn seq(&self) -> Option<SignSeq> {
        self.seq
    }

    fn ensure(&mut self, len: usize) {
        let start = self.terms.len();
        if len > start {
            let term = &self.term;
            self.terms.extend((start as u64..len as u64).map(|j| term(j)));
        }
    }

    fn scan(&mut self, n: usize, len: usize) -> (i64, i64, u64) {
        self.ensure(len);
        let t = &self.terms[..len];
        self.seen.clear();
        self.seen.resize(2 * n + 1, false);
        let mut sum: i64 = t[..n].iter().map(|&x| x as i64).sum();
        let (mut max, mut min) = (sum, sum);
        let mut distinct = 0u64;
        let mut mark = |s: i64, seen: &mut Vec<bool>| {
            let slot = (s + n as i64) as usize;
            if !seen[slot] {
                seen[slot] = true;
                distinct += 1;
            }
        };
        mark(sum, &mut self.seen);
        for i in n..len {
            sum += t[i] as i64 - t[i - n] as i64;
            max = max.max(sum);
            min = min.min(sum);
            mark(sum, &mut self.seen);
        }
        (max, min, distinct)
    }

    pub fn extrema(&mut self, n: u64) -> Result<ExtremaReport, Error> {
        if n == 0 {
            return Err(Error::InvalidArgument("window length must be at least 1".into()));
        }
        let nu = n as usize;
        let mut len = 4096usize.max(64 * nu);
        if len > self.cap {
            return Err(Error::PrefixCapExceeded { n, cap: self.cap });
        }
        let mut last = self.scan(nu, len);
        loop {
            let next_len = len * 2;
            if next_len > self.cap {
                return Err(Error::PrefixCapExceeded { n, cap: self.cap });
            }
            let next = self.scan(nu, next_len);
            if next == last {
                return Ok(ExtremaReport {
                    n,
                    max: next.0,
                    min: next.1,
                    rho: next.2,
                    prefix_len: next_len,
                    stabilized: true,
                });
            }
            last = next;
            len = next_len;
        }
    }
}

/// One-shot brute-force extrema of `seq` at window length `n >= 1`.
pub fn brute_extrema(seq: SignSeq, n: u64) -> Result<ExtremaReport, Error> {
    BruteForce::new(seq).extrema(n)
}

/// `(M(n), M(n+1))` by descent on the base-4 digits of `n`.
fn max_sum_pair(n: u64) -> (u64, u64) {
    const BASE: [u64; 5] = [0, 1, 2, 3, 4];
    if n < 4 {
        return (BASE[n as usize], BASE[n as usize + 1]);
    }
    let (a, b) = max_sum_pair(n / 4);
    match n % 4 {
        0 => (2 * a + 2, 2 * a + 1),
        1 => (2 * a + 1, a + b + 1),
        2 => (a + b + 1, 2 * b + 1),
        _ => (2 * b + 1, 2 * b + 2),
    }
}

/// `M(n)` from the 4-ary recurrence; `M(0) = 0`.
///
/// Each level of the descent needs `M(q)` and `M(q+1)` only, so the pair is
/// carried upward and no table is kept. `O(log n)` per call.
pub fn max_sum(n: u64) -> u64 {
    max_sum_pair(n).0
}

/// `m(n) = -M(n)`.
pub fn min_sum(n: u64) -> i64 {
    -(max_sum(n) as i64)
}

/// Abelian complexity `rho(n) = M(n) + 1`; `rho(0) = 1`.
pub fn rho(n: u64) -> u64 {
    max_sum(n) + 1
}

/// `Delta M(n) = M(n+1) - M(n)` from its own recurrence:
/// `1` for `n <= 3`, then `Delta M(4n) = -1`, `Delta M(4n+3) = 1`,
/// `Delta M(4n+1) = Delta M(4n+2) = Delta M(n)`.
pub fn delta_m(n: u64) -> i8 {
    delta_m_wide(n as u128)
}

/// [`delta_m`] on 128-bit arguments.
pub fn delta_m_wide(mut n: u128) -> i8 {
    loop {
        if n < 4 {
            return 1;
        }
        match n % 4 {
            0 => return -1,
            3 => return 1,
            _ => n /= 4,
        }
    }
}

/// Prefix sums of `r` over a fixed range, for fast window sums.
struct PrefixSums {
    acc: Vec<i64>,
}

impl PrefixSums {
    fn new(r: &impl Fn(u64) -> i8, len: usize) -> Self {
        let mut acc = Vec::with_capacity(len + 1);
        acc.push(0);
        let mut s = 0i64;
        for j in 0..len as u64 {
            s += r(j) as i64;
            acc.push(s);
        }
        PrefixSums { acc }
    }

    fn sigma(&self, i: u64, n: u64) -> i64 {
        self.acc[(i + n) as usize] - self.acc[i as usize]
    }
}

/// A failed instance of one of the sixteen window-sum identities of `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityViolation {
    /// Identity number, 1 through 16.
    pub identity: u8,
    pub i: u64,
    pub n: u64,
    pub lhs: i64,
    pub rhs: i64,
}

/// Both sides of identity `id` (1..=16) relating `Sigma(4i+a, 4n+b)` to
/// windows of length `n` and `n+1`.
fn identity_sides(id: u8, i: u64, n: u64, s: &impl Fn(u64, u64) -> i64, r: &impl Fn(u64) -> i8) -> (i64, i64) {
    let r = |k: u64| r(k) as i64;
    let a = (id as u64 - 1) % 4;
    let b = (id as u64 - 1) / 4;
    let lhs = s(4 * i + a, 4 * n + b);
    let rhs = match id {
        1 => 2 * s(i, n),
        2 => s(i, n) + s(i + 1, n),
        3 => 2 * s(i + 1, n),
        4 => 2 * s(i + 1, n) - r(4 * i + 4 * n + 3) + r(4 * i + 3),
        5 => 2 * s(i, n) + r(i + n),
        6 => 2 * s(i + 1, n) + r(i),
        7 => 2 * s(i + 1, n) + r(4 * i + 4 * n + 2),
        8 => 2 * s(i + 1, n) + r(4 * i + 3),
        9 => s(i, n) + s(i, n + 1) + r(i + n),
        10 => s(i + 1, n) + s(i, n + 1) + r(4 * i + 4 * n + 2),
        11 => s(i + 1, n) + s(i + 1, n + 1) - r(i + n + 1),
        12 => s(i + 1, n) + s(i + 1, n + 1) + r(4 * i + 3),
        13 => 2 * s(i, n + 1) - r(4 * i + 4 * n + 3),
        14 => 2 * s(i, n + 1) - r(i),
        15 => 2 * s(i + 1, n + 1) - r(i + n + 1),
        16 => 2 * s(i + 1, n + 1) + r(4 * i + 3),
        _ => unreachable!("identity number out of range"),
    };
    (lhs, rhs)
}

/// Evaluates identity `id` at `(i, n)` with direct window sums of `r`.
pub fn sum_identity(id: u8, i: u64, n: u64) -> (i64, i64) {
    assert!((1..=16).contains(&id), "identity number must be in 1..=16");
    identity_sides(id, i, n, &|i, n| window_sum(SignSeq::R, i, n), &rudin::r)
}

/// Sweeps all sixteen identities over `0 <= i < i_max`, `1 <= n < n_max`.
pub fn check_sum_identities(i_max: u64, n_max: u64) -> Vec<IdentityViolation> {
    check_sum_identities_with(i_max, n_max, rudin::r)
}

/// As [`check_sum_identities`] for an arbitrary candidate `r`.
pub fn check_sum_identities_with(i_max: u64, n_max: u64, r: impl Fn(u64) -> i8) -> Vec<IdentityViolation> {
    let span = 4 * (i_max + n_max) + 8;
    let table = PrefixSums::new(&r, span as usize);
    let s = |i, n| table.sigma(i, n);
    let mut out = Vec::new();
    for i in 0..i_max {
        for n in 1..n_max {
            for id in 1..=16u8 {
                let (lhs, rhs) = identity_sides(id, i, n, &s, &r);
                if lhs != rhs {
                    out.push(IdentityViolation {
                        identity: id,
                        i,
                        n,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    out
}

/// Which coding an extremal word maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Maximizes the `tau`-weight (the `r` side).
    W,
    /// Maximizes the `tau'`-weight (the `r'` side).
    WTilde,
}

impl Flavor {
    pub fn coding(self) -> SignCoding {
        match self {
            Flavor::W => SignCoding::TAU,
            Flavor::WTilde => SignCoding::TAU_PRIME,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::W => "w",
            Flavor::WTilde => "wtilde",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "w" | "W" => Ok(Flavor::W),
            "wtilde" | "WTilde" => Ok(Flavor::WTilde),
            other => Err(Error::InvalidArgument(format!("unknown flavor {other:?}"))),
        }
    }
}

/// A length-`n` factor of `s` whose coded digit sum is `M(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalWord {
    pub n: u64,
    pub word: Word,
    pub target_sum: i64,
    pub flavor: Flavor,
}

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn sigma_squared(w: &Word) -> Word {
    let sigma = Substitution::rudin_shapiro();
    sigma.apply(&sigma.apply(w))
}

fn drop_suffix(n: u64, w: Word, suffix: &str) -> Result<Word, Error> {
    let suf = word(suffix);
    if !w.ends_with(&suf) {
        return Err(Error::CancellationMismatch {
            n,
            expected: suffix.into(),
            word: w.to_string(),
        });
    }
    let mut letters = w.into_letters();
    letters.truncate(letters.len() - suf.len());
    Ok(Word::from_letters(letters))
}

fn drop_prefix(n: u64, w: Word, prefix: &str) -> Result<Word, Error> {
    let pre = word(prefix);
    if !w.starts_with(&pre) {
        return Err(Error::CancellationMismatch {
            n,
            expected: prefix.into(),
            word: w.to_string(),
        });
    }
    Ok(Word::from_letters(w.letters()[pre.len()..].to_vec()))
}

fn build_w(n: u64) -> Result<Word, Error> {
    match n {
        1 => return Ok(word("a")),
        2 => return Ok(word("ba")),
        3 => return Ok(word("aba")),
        _ => {}
    }
    let q = n / 4;
    let b = word("b");
    match n % 4 {
        0 => drop_suffix(n, b.concat(&sigma_squared(&build_w(q)?)), "c"),
        1 => Ok(b.concat(&sigma_squared(&build_w(q)?))),
        2 if delta_m(q) == 1 => drop_suffix(n, b.concat(&sigma_squared(&build_w(q + 1)?)), "bac"),
        2 => drop_suffix(n, word("cdb").concat(&sigma_squared(&build_w(q)?)), "c"),
        _ => drop_suffix(n, sigma_squared(&build_w(q + 1)?), "c"),
    }
}

fn build_w_tilde(n: u64) -> Result<Word, Error> {
    match n {
        1 => return Ok(word("c")),
        2 => return Ok(word("ca")),
        3 => return Ok(word("cac")),
        _ => {}
    }
    let q = n / 4;
    let a = word("a");
    match n % 4 {
        0 => Ok(drop_prefix(n, sigma_squared(&build_w_tilde(q)?), "d")?.concat(&a)),
        1 => Ok(sigma_squared(&build_w_tilde(q)?).concat(&a)),
        2 if delta_m(q) == 1 => Ok(drop_prefix(n, sigma_squared(&build_w_tilde(q + 1)?), "dca")?.concat(&a)),
        2 => Ok(drop_prefix(n, sigma_squared(&build_w_tilde(q)?), "d")?.concat(&word("abd"))),
        _ => drop_prefix(n, sigma_squared(&build_w_tilde(q + 1)?), "d"),
    }
}

/// Builds `W_n` or `W~_n` by the 4-ary recursion on `n >= 1`.
///
/// Each step needs only one smaller word, so the recursion is a single chain
/// of depth `log_4 n`.
pub fn build_extremal(n: u64, flavor: Flavor) -> Result<ExtremalWord, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("extremal words start at n = 1".into()));
    }
    let word = match flavor {
        Flavor::W => build_w(n)?,
        Flavor::WTilde => build_w_tilde(n)?,
    };
    Ok(ExtremalWord {
        n,
        word,
        target_sum: max_sum(n) as i64,
        flavor,
    })
}

/// Outcome of checking one extremal word, item by item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalCheck {
    pub length_ok: bool,
    pub sum_ok: bool,
    pub factor_ok: bool,
    /// Last letter in `{a, c}` for `W`, first letter in `{c, d}` for `W~`.
    pub boundary_ok: bool,
    /// `bW` or `dW` occurs in `s` for `W`; `W~a` or `W~b` occurs for `W~`.
    pub extension_ok: bool,
}

impl ExtremalCheck {
    pub fn passed(&self) -> bool {
        self.length_ok && self.sum_ok && self.factor_ok && self.boundary_ok && self.extension_ok
    }
}

/// Default cap on the `s`-prefix searched for factors.
pub const DEFAULT_FACTOR_CAP: usize = 1 << 24;

/// Factor oracle over a growing prefix of `s`.
///
/// Searches start in a prefix of `16 * 4^ceil(log4 n)` letters and double on
/// a miss, up to the cap. A miss at the cap counts as "not a factor".
#[derive(Debug, Clone)]
pub struct FactorOracle {
    prefix: Vec<u8>,
    cap: usize,
}

impl Default for FactorOracle {
    fn default() -> Self {
        Self::with_cap(DEFAULT_FACTOR_CAP)
    }
}

impl FactorOracle {
    pub fn with_cap(cap: usize) -> Self {
        FactorOracle {
            prefix: Vec::new(),
            cap,
        }
    }

    fn ensure(&mut self, len: usize) {
        if self.prefix.len() < len {
            self.prefix = rudin::s_prefix(len).as_bytes();
        }
    }

    /// Whether `w` occurs in `s` within the cap.
    pub fn occurs(&mut self, w: &[u8]) -> bool {
        self.occurs_any(&[w])
    }

    /// Whether any of `ws` occurs. All candidates are tried in each prefix
    /// before it doubles, so one absent word does not force a scan to the cap.
    pub fn occurs_any(&mut self, ws: &[&[u8]]) -> bool {
        let longest = ws.iter().map(|w| w.len()).max().unwrap_or(0);
        let mut pow4 = 1usize;
        while pow4 < longest {
            pow4 *= 4;
        }
        let mut len = (16 * pow4).min(self.cap);
        loop {
            self.ensure(len);
            if ws.iter().any(|w| find_bytes(w, &self.prefix[..len]).is_some()) {
                return true;
            }
            if len >= self.cap {
                return false;
            }
            len = (2 * len).min(self.cap);
        }
    }

    /// Checks `w` against the extremal-word properties with digit-sum target `target`.
    pub fn check(&mut self, w: &ExtremalWord, target: i64) -> ExtremalCheck {
        let bytes = w.word.as_bytes();
        let length_ok = w.word.len() as u64 == w.n;
        let sum_ok = w.flavor.coding().weight(&w.word) == target;
        let factor_ok = self.occurs(&bytes);
        let (boundary_ok, extension_ok) = match w.flavor {
            Flavor::W => {
                let boundary = matches!(w.word.last(), Some(Letter::A | Letter::C));
                let ext = {
                    let (mut with_b, mut with_d) = (vec![b'b'], vec![b'd']);
                    with_b.extend_from_slice(&bytes);
                    with_d.extend_from_slice(&bytes);
                    self.occurs_any(&[&with_b, &with_d])
                };
                (boundary, ext)
            }
            Flavor::WTilde => {
                let boundary = matches!(w.word.first(), Some(Letter::C | Letter::D));
                let ext = {
                    let (mut with_a, mut with_b) = (bytes.clone(), bytes.clone());
                    with_a.push(b'a');
                    with_b.push(b'b');
                    self.occurs_any(&[&with_a, &with_b])
                };
                (boundary, ext)
            }
        };
        ExtremalCheck {
            length_ok,
            sum_ok,
            factor_ok,
            boundary_ok,
            extension_ok,
        }
    }
}

/// Builds `W_n` (or `W~_n`) and checks every extremal property.
pub fn verify_extremal(n: u64, flavor: Flavor) -> bool {
    match build_extremal(n, flavor) {
        Ok(w) => FactorOracle::default().check(&w, max_sum(n) as i64).passed(),
        Err(_) => false,
    }
}

/// Lengths `1..=n_max` whose word fails [`verify_extremal`], sharing one
/// factor oracle across lengths.
pub fn extremal_failures(n_max: u64, flavor: Flavor) -> Vec<u64> {
    let mut oracle = FactorOracle::default();
    (1..=n_max)
        .filter(|&n| match build_extremal(n, flavor) {
            Ok(w) => !oracle.check(&w, max_sum(n) as i64).passed(),
            Err(_) => true,
        })
        .collect()
}
