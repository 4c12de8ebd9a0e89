use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::kernel::{child_label, kernel_indices, Label};
use crate::error::Error;

/// A rational linear representation of a `k`-regular sequence guessed from
/// its kernel.
///
/// `basis[i]` labels a kernel subsequence `g_i`; `relations[i][d]` holds
/// the coefficients with `g_i(k n + d) = sum_j relations[i][d][j] g_j(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinRep {
    pub base: u32,
    pub prefix: usize,
    pub basis: Vec<Label>,
    pub relations: Vec<Vec<Vec<BigRational>>>,
    /// Values `g_i(0)`.
    pub initial: Vec<BigRational>,
    /// Largest index through which the relations were checked, if any.
    pub verified_to: Option<u64>,
}

impl LinRep {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `f(n)` from the representation alone: `V(k m + d) = A_d V(m)`.
    pub fn eval(&self, n: u64) -> BigRational {
        if self.basis.is_empty() {
            return BigRational::zero();
        }
        let mut v = self.initial.clone();
        for d in super::dfao::msd_digits(n, self.base) {
            v = self
                .relations
                .iter()
                .map(|rows| {
                    rows[d as usize]
                        .iter()
                        .zip(&v)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, x)| c * x)
                        .fold(BigRational::zero(), |a, b| a + b)
                })
                .collect();
        }
        // the root (0, 0) is always the first basis element
        v[0].clone()
    }
}

struct Echelon {
    /// Reduced vectors with their pivot column.
    rows: Vec<(usize, Vec<BigRational>)>,
    /// Each reduced row as a combination of basis vectors.
    combos: Vec<Vec<BigRational>>,
}

impl Echelon {
    /// Reduces `v` against the rows; returns the remainder and the
    /// combination of basis vectors that was subtracted.
    fn reduce(&self, mut v: Vec<BigRational>, rank: usize) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut used = vec![BigRational::zero(); rank];
        for ((pivot, row), combo) in self.rows.iter().zip(&self.combos) {
            if v[*pivot].is_zero() {
                continue;
            }
            let alpha = &v[*pivot] / &row[*pivot];
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &alpha * y;
                }
            }
            for (u, c) in used.iter_mut().zip(combo) {
                if !c.is_zero() {
                    *u += &alpha * c;
                }
            }
        }
        (v, used)
    }
}

fn rational_fingerprint(
    f: &dyn Fn(u64) -> i64,
    base: u32,
    label: Label,
    prefix: usize,
) -> Result<Vec<BigRational>, Error> {
    Ok(kernel_indices(base, label, prefix)
        .ok_or(Error::Overflow("kernel index"))?
        .map(|i| BigRational::from_integer(f(i).into()))
        .collect())
}

/// Greedy basis of the kernel module from fingerprints of length `prefix`.
///
/// Kernel nodes are visited breadth first; a node joins the basis when its
/// fingerprint is independent of the basis so far, otherwise its expression
/// in the basis is recorded. Fails when more than `cap` generators are needed.
pub fn guess_linear_representation(
    f: &dyn Fn(u64) -> i64,
    base: u32,
    prefix: usize,
    cap: usize,
) -> Result<LinRep, Error> {
    if base < 2 || cap == 0 {
        return Err(Error::InvalidArgument("guessing needs base >= 2 and cap >= 1".into()));
    }
    if prefix < 2 * cap {
        return Err(Error::InvalidArgument(format!(
            "fingerprint length {prefix} is below twice the cap {cap}"
        )));
    }
    let mut basis: Vec<Label> = Vec::new();
    let mut initial = Vec::new();
    let mut ech = Echelon {
        rows: Vec::new(),
        combos: Vec::new(),
    };
    // pending[i][d]: coefficients of child d of basis i over the basis known so far
    let mut pending: Vec<Vec<Vec<BigRational>>> = Vec::new();

    // inserts a fingerprint, returning its expression in the basis
    let insert = |label: Label,
                  fp: Vec<BigRational>,
                  basis: &mut Vec<Label>,
                  initial: &mut Vec<BigRational>,
                  ech: &mut Echelon|
     -> Result<(Vec<BigRational>, bool), Error> {
        let rank = basis.len();
        let (rest, used) = ech.reduce(fp.clone(), rank);
        match rest.iter().position(|x| !x.is_zero()) {
            None => Ok((used, false)),
            Some(pivot) => {
                if rank == cap {
                    return Err(Error::NotFinitelyGenerated { cap, prefix });
                }
                basis.push(label);
                initial.push(fp[0].clone());
                let mut combo: Vec<BigRational> = used.into_iter().map(|u| -u).collect();
                combo.push(BigRational::one());
                for c in ech.combos.iter_mut() {
                    c.push(BigRational::zero());
                }
                ech.rows.push((pivot, rest));
                ech.combos.push(combo);
                let mut unit = vec![BigRational::zero(); rank + 1];
                unit[rank] = BigRational::one();
                Ok((unit, true))
            }
        }
    };

    let root = rational_fingerprint(f, base, (0, 0), prefix)?;
    let (_, added) = insert((0, 0), root, &mut basis, &mut initial, &mut ech)?;
    let mut queue: VecDeque<usize> = VecDeque::new();
    if added {
        queue.push_back(0);
        pending.push(Vec::new());
    }
    while let Some(i) = queue.pop_front() {
        let mut rows = Vec::with_capacity(base as usize);
        for d in 0..base {
            let label = child_label(base, basis[i], d).ok_or(Error::Overflow("kernel index"))?;
            let fp = rational_fingerprint(f, base, label, prefix)?;
            let (row, added) = insert(label, fp, &mut basis, &mut initial, &mut ech)?;
            if added {
                queue.push_back(basis.len() - 1);
                pending.push(Vec::new());
            }
            rows.push(row);
        }
        pending[i] = rows;
    }
    let rank = basis.len();
    let relations = pending
        .into_iter()
        .map(|rows| {
            rows.into_iter()
                .map(|mut row| {
                    row.resize(rank, BigRational::zero());
                    row
                })
                .collect()
        })
        .collect();
    Ok(LinRep {
        base,
        prefix,
        basis,
        relations,
        initial,
        verified_to: None,
    })
}

/// A relation row scaled to integers: `scale g_child = sum coef_j g_j`.
struct ScaledRow {
    scale: BigInt,
    coefs: Vec<BigInt>,
}

fn scaled(row: &[BigRational]) -> ScaledRow {
    let scale = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coefs = row
        .iter()
        .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
        .collect();
    ScaledRow { scale, coefs }
}

/// Checks every recorded relation at every `n` whose child index is at most `limit`.
pub fn verify_linear_representation(rep: &LinRep, f: &dyn Fn(u64) -> i64, limit: u64) -> bool {
    let k = rep.base as u64;
    let rank = rep.rank();
    let mut strides = Vec::with_capacity(rank);
    for &(e, c) in &rep.basis {
        match k.checked_pow(e) {
            Some(s) => strides.push((s, c)),
            None => return false,
        }
    }
    for i in 0..rank {
        for d in 0..rep.base {
            let Some((ce, cc)) = child_label(rep.base, rep.basis[i], d) else {
                return false;
            };
            let Some(child_stride) = k.checked_pow(ce) else {
                return false;
            };
            if cc > limit {
                continue;
            }
            let row = scaled(&rep.relations[i][d as usize]);
            let small: Option<(i128, Vec<i128>)> = row
                .scale
                .to_i128()
                .zip(row.coefs.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>());
            let count = (limit - cc) / child_stride + 1;
            for n in 0..count {
                let lhs_val = f(child_stride * n + cc);
                let terms = || {
                    strides
                        .iter()
                        .map(|&(s, c)| s.checked_mul(n).and_then(|x| x.checked_add(c)))
                };
                let ok = match &small {
                    Some((scale, coefs)) => {
                        let mut acc: Option<i128> = Some(0);
                        for (coef, idx) in coefs.iter().zip(terms()) {
                            if *coef == 0 {
                                continue;
                            }
                            let Some(idx) = idx else { return false };
                            acc = acc.and_then(|a| coef.checked_mul(f(idx) as i128).and_then(|t| a.checked_add(t)));
                        }
                        match (acc, scale.checked_mul(lhs_val as i128)) {
                            (Some(a), Some(l)) => a == l,
                            _ => big_check(&row, lhs_val, &terms().collect::<Vec<_>>(), f),
                        }
                    }
                    None => big_check(&row, lhs_val, &terms().collect::<Vec<_>>(), f),
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn big_check(row: &ScaledRow, lhs: i64, idx: &[Option<u64>], f: &dyn Fn(u64) -> i64) -> bool {
    let mut acc = BigInt::zero();
    for (coef, i) in row.coefs.iter().zip(idx) {
        if coef.is_zero() {
            continue;
        }
        let Some(i) = i else { return false };
        acc += coef * BigInt::from(f(*i));
    }
    acc == &row.scale * BigInt::from(lhs)
}

/// [`verify_linear_representation`], recording `limit` on success.
pub fn verify_and_record(rep: &mut LinRep, f: &dyn Fn(u64) -> i64, limit: u64) -> bool {
    let ok = verify_linear_representation(rep, f, limit);
    if ok {
        rep.verified_to = Some(limit);
    }
    ok
}

/// Largest absolute numerator or denominator among the relation coefficients.
pub fn coefficient_height(rep: &LinRep) -> BigInt {
    rep.relations
        .iter()
        .flatten()
        .flatten()
        .flat_map(|c| [c.numer().abs(), c.denom().abs()])
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{max_sum, rho};

    fn m(n: u64) -> i64 {
        max_sum(n) as i64
    }

    #[test]
    fn constant_has_rank_one() {
        let rep = guess_linear_representation(&|_| 5, 2, 64, 8).unwrap();
        assert_eq!(rep.rank(), 1);
        assert!(verify_linear_representation(&rep, &|_| 5, 1_000_000));
        assert_eq!(rep.eval(999), BigRational::from_integer(5.into()));
    }

    #[test]
    fn zero_sequence_has_rank_zero() {
        let rep = guess_linear_representation(&|_| 0, 2, 16, 4).unwrap();
        assert_eq!(rep.rank(), 0);
        assert!(verify_linear_representation(&rep, &|_| 0, 1000));
        assert!(rep.eval(10).is_zero());
    }

    #[test]
    fn identity_sequence() {
        let rep = guess_linear_representation(&|n| n as i64, 2, 64, 8).unwrap();
        assert_eq!(rep.rank(), 2);
        assert!(verify_linear_representation(&rep, &|n| n as i64, 10_000));
    }

    #[test]
    fn max_sum_is_regular() {
        let mut rep = guess_linear_representation(&m, 2, 512, 64).unwrap();
        assert!(rep.rank() >= 2 && rep.rank() < 64, "rank {}", rep.rank());
        assert!(verify_and_record(&mut rep, &m, 100_000));
        assert_eq!(rep.verified_to, Some(100_000));
        for n in 0..2000u64 {
            assert_eq!(rep.eval(n), BigRational::from_integer((rho(n) as i64 - 1).into()));
        }
    }

    #[test]
    fn rho_is_regular() {
        let f = |n| rho(n) as i64;
        let rep = guess_linear_representation(&f, 2, 512, 64).unwrap();
        assert!(verify_linear_representation(&rep, &f, 100_000));
    }

    #[test]
    fn corrupted_relation_fails() {
        let mut rep = guess_linear_representation(&m, 2, 512, 64).unwrap();
        let last = rep.relations.len() - 1;
        rep.relations[last][1][0] += BigRational::one();
        assert!(!verify_linear_representation(&rep, &m, 100_000));
    }

    #[test]
    fn cap_and_precondition() {
        assert!(matches!(
            guess_linear_representation(&m, 2, 512, 2),
            Err(Error::NotFinitelyGenerated { .. })
        ));
        assert!(guess_linear_representation(&m, 2, 10, 8).is_err());
    }
}
