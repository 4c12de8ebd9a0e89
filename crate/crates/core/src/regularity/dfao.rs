use std::collections::HashMap;

use crate::error::Error;

/// Deterministic finite automaton with output over base-`k` digits.
///
/// Evaluation feeds digits most-significant first; `0` is the single digit 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    transitions: Vec<Vec<usize>>,
    outputs: Vec<i64>,
    initial: usize,
}

impl Dfao {
    pub fn new(base: u32, transitions: Vec<Vec<usize>>, outputs: Vec<i64>, initial: usize) -> Result<Self, Error> {
        let states = transitions.len();
        if base < 2 {
            return Err(Error::InvalidArgument(format!("digit base {base} is below 2")));
        }
        if states == 0 || outputs.len() != states || initial >= states {
            return Err(Error::InvalidArgument("automaton state tables are inconsistent".into()));
        }
        for row in &transitions {
            if row.len() != base as usize || row.iter().any(|&t| t >= states) {
                return Err(Error::InvalidArgument("transition table is not total".into()));
            }
        }
        Ok(Dfao {
            base,
            transitions,
            outputs,
            initial,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn output(&self, state: usize) -> i64 {
        self.outputs[state]
    }

    pub fn step(&self, state: usize, digit: u32) -> usize {
        self.transitions[state][digit as usize]
    }

    /// Output after reading `digits` (most significant first) from the initial state.
    pub fn eval_digits(&self, digits: &[u32]) -> i64 {
        let end = digits.iter().fold(self.initial, |q, &d| self.step(q, d));
        self.outputs[end]
    }

    pub fn eval(&self, n: u64) -> i64 {
        self.eval_digits(&msd_digits(n, self.base))
    }

    /// Equivalent automaton with unreachable states dropped and
    /// indistinguishable states merged (Moore refinement).
    pub fn minimize(&self) -> Dfao {
        let k = self.base as usize;
        let mut reach = vec![usize::MAX; self.num_states()];
        let mut order = vec![self.initial];
        reach[self.initial] = 0;
        let mut i = 0;
        while i < order.len() {
            for &t in &self.transitions[order[i]] {
                if reach[t] == usize::MAX {
                    reach[t] = order.len();
                    order.push(t);
                }
            }
            i += 1;
        }

        // class ids, seeded by output
        let mut class: Vec<usize> = {
            let mut ids = HashMap::new();
            order
                .iter()
                .map(|&q| {
                    let next = ids.len();
                    *ids.entry(self.outputs[q]).or_insert(next)
                })
                .collect()
        };
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = order
                .iter()
                .enumerate()
                .map(|(i, &q)| {
                    let sig: Vec<usize> = self.transitions[q].iter().map(|&t| class[reach[t]]).collect();
                    let next = ids.len();
                    *ids.entry((class[i], sig)).or_insert(next)
                })
                .collect();
            let stable = ids.len() == class.iter().max().map_or(0, |m| m + 1);
            class = refined;
            if stable {
                break;
            }
        }

        let count = class.iter().max().map_or(0, |m| m + 1);
        let mut transitions = vec![Vec::new(); count];
        let mut outputs = vec![0; count];
        for (i, &q) in order.iter().enumerate() {
            let c = class[i];
            if transitions[c].is_empty() {
                transitions[c] = (0..k).map(|d| class[reach[self.transitions[q][d]]]).collect();
                outputs[c] = self.outputs[q];
            }
        }
        Dfao {
            base: self.base,
            transitions,
            outputs,
            initial: class[0],
        }
    }

    /// Whether the two automata are identical up to renaming of reachable states.
    pub fn isomorphic(&self, other: &Dfao) -> bool {
        if self.base != other.base {
            return false;
        }
        let mut map: HashMap<usize, usize> = HashMap::new();
        let mut back: HashMap<usize, usize> = HashMap::new();
        let mut stack = vec![(self.initial, other.initial)];
        while let Some((p, q)) = stack.pop() {
            match (map.get(&p), back.get(&q)) {
                (Some(&q2), _) if q2 != q => return false,
                (_, Some(&p2)) if p2 != p => return false,
                (Some(_), _) => continue,
                _ => {}
            }
            if self.outputs[p] != other.outputs[q] {
                return false;
            }
            map.insert(p, q);
            back.insert(q, p);
            for d in 0..self.base as usize {
                stack.push((self.transitions[p][d], other.transitions[q][d]));
            }
        }
        true
    }
}

/// Base-`k` digits of `n`, most significant first; `[0]` for zero.
pub fn msd_digits(mut n: u64, base: u32) -> Vec<u32> {
    if n == 0 {
        return vec![0];
    }
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % base as u64) as u32);
        n /= base as u64;
    }
    digits.reverse();
    digits
}

pub fn dfao_eval(d: &Dfao, n: u64) -> i64 {
    d.eval(n)
}

/// The three-state base-4 automaton generating `Delta M`.
///
/// `q0` loops on 0 and moves to `q1` on 1, 2, 3; `q1` loops on 1, 2, 3 and
/// moves to `q2` on 0; `q2` loops on 0, 1, 2 and returns to `q1` on 3.
/// Outputs are `q0, q1 -> 1` and `q2 -> -1`.
pub fn fig2_automaton() -> Dfao {
    Dfao {
        base: 4,
        transitions: vec![vec![0, 1, 1, 1], vec![2, 1, 1, 1], vec![2, 2, 2, 1]],
        outputs: vec![1, 1, -1],
        initial: 0,
    }
}
