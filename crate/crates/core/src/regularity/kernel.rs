use std::collections::{HashMap, VecDeque};

use super::dfao::Dfao;
use crate::error::Error;

/// Kernel label `(e, c)`: the subsequence `n -> f(k^e n + c)`, `c < k^e`.
pub type Label = (u32, u64);

/// Breadth-first closure of the `k`-kernel of a sequence, nodes identified
/// by fingerprints of length `prefix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelClosure {
    pub base: u32,
    pub prefix: usize,
    pub nodes: Vec<Label>,
    pub fingerprints: Vec<Vec<i64>>,
    /// `edges[node][d]` is the node of label `(e+1, c + d k^e)`.
    /// Complete only when `closed`.
    pub edges: Vec<Vec<usize>>,
    pub closed: bool,
}

impl KernelClosure {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

/// `k^e n + c` for `n < len`, or `None` on overflow.
pub(crate) fn kernel_indices(base: u32, (e, c): Label, len: usize) -> Option<impl Iterator<Item = u64>> {
    let step = (base as u64).checked_pow(e)?;
    step.checked_mul(len.saturating_sub(1) as u64)?.checked_add(c)?;
    Some((0..len as u64).map(move |n| step * n + c))
}

pub(crate) fn child_label(base: u32, (e, c): Label, d: u32) -> Option<Label> {
    let step = (base as u64).checked_pow(e)?;
    Some((e + 1, c.checked_add(step.checked_mul(d as u64)?)?))
}

fn fingerprint(f: &dyn Fn(u64) -> i64, base: u32, label: Label, prefix: usize) -> Option<Vec<i64>> {
    Some(kernel_indices(base, label, prefix)?.map(f).collect())
}

/// Explores the kernel from `(0, 0)` until no new fingerprint appears.
///
/// Hitting `cap` nodes, or an index beyond `u64`, yields `closed = false`.
pub fn kernel_closure(f: &dyn Fn(u64) -> i64, base: u32, prefix: usize, cap: usize) -> Result<KernelClosure, Error> {
    if base < 2 || prefix == 0 || cap == 0 {
        return Err(Error::InvalidArgument(
            "kernel closure needs base >= 2, prefix >= 1, cap >= 1".into(),
        ));
    }
    let root = fingerprint(f, base, (0, 0), prefix).ok_or(Error::Overflow("kernel index"))?;
    let mut out = KernelClosure {
        base,
        prefix,
        nodes: vec![(0, 0)],
        fingerprints: vec![root.clone()],
        edges: vec![Vec::new()],
        closed: false,
    };
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::from([(root, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(node) = queue.pop_front() {
        let mut row = Vec::with_capacity(base as usize);
        for d in 0..base {
            let Some(label) = child_label(base, out.nodes[node], d) else {
                return Ok(out);
            };
            let Some(fp) = fingerprint(f, base, label, prefix) else {
                return Ok(out);
            };
            let id = match seen.get(&fp) {
                Some(&id) => id,
                None => {
                    if out.nodes.len() == cap {
                        return Ok(out);
                    }
                    let id = out.nodes.len();
                    out.nodes.push(label);
                    out.fingerprints.push(fp.clone());
                    out.edges.push(Vec::new());
                    seen.insert(fp, id);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        out.edges[node] = row;
    }
    out.closed = true;
    Ok(out)
}

/// Converts a closed kernel into an automaton read most-significant digit first.
///
/// The closure itself is an automaton reading digits least-significant
/// first: from `(e, c)` digit `d` leads to the node of `(e+1, c + d k^e)`,
/// and a node outputs the first term of its subsequence. Reversal uses
/// states that are output vectors `F: node -> value`, starting from the
/// output map, with `F` on digit `a` going to `q -> F(edge(q, a))`; the
/// output of `F` is its value at the root.
pub fn synthesize_dfao(c: &KernelClosure) -> Result<Dfao, Error> {
    if !c.closed {
        return Err(Error::NotClosed { prefix: c.prefix });
    }
    let k = c.base as usize;
    let start: Vec<i64> = c.fingerprints.iter().map(|fp| fp[0]).collect();
    let mut states = vec![start.clone()];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(start, 0)]);
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: Vec<i64> = (0..c.nodes.len()).map(|q| states[i][c.edges[q][a]]).collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    states.push(next.clone());
                    index.insert(next, states.len() - 1);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        transitions.push(row);
        i += 1;
    }
    let outputs = states.iter().map(|s| s[0]).collect();
    Dfao::new(c.base, transitions, outputs, 0)
}
