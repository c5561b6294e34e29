use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::lattice::{lattice, lattice_uncapped, NcLattice};
use super::Partition;
use crate::error::{domain, Result};

/// A strictly increasing chain `π₀ < π₁ < … < π_k` in `NC(n)`, `k ≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain {
    steps: Vec<Partition>,
}

impl Chain {
    pub fn new(steps: Vec<Partition>) -> Result<Self> {
        if steps.len() < 2 {
            return domain("a chain needs at least two steps");
        }
        for w in steps.windows(2) {
            if !w[0].leq(&w[1])? || w[0] == w[1] {
                return domain(format!("{} is not strictly below {}", w[0], w[1]));
            }
        }
        Ok(Chain { steps })
    }

    pub fn n(&self) -> usize {
        self.steps[0].n()
    }

    pub fn steps(&self) -> &[Partition] {
        &self.steps
    }

    pub fn length(&self) -> usize {
        self.steps.len() - 1
    }

    /// Every set occurring as a block of some step, as bitmasks.
    pub fn blocks(&self) -> BTreeSet<u32> {
        self.steps.iter().flat_map(|p| p.block_masks()).collect()
    }

    /// `Blocks(c)` minus the blocks of the first step.
    pub fn blocks_plus(&self) -> BTreeSet<u32> {
        let base: BTreeSet<u32> = self.steps[0].block_masks().into_iter().collect();
        self.blocks().difference(&base).copied().collect()
    }

    /// Each new block occurs in exactly one step after the first.
    pub fn is_efficient(&self) -> bool {
        let base: BTreeSet<u32> = self.steps[0].block_masks().into_iter().collect();
        let mut seen: HashMap<u32, usize> = HashMap::new();
        for p in &self.steps[1..] {
            for m in p.block_masks() {
                if !base.contains(&m) {
                    *seen.entry(m).or_default() += 1;
                }
            }
        }
        seen.values().all(|&c| c == 1)
    }
}

/// All chains from `p` to `q` (or only the efficient ones).
pub fn chains_between(
    p: &Partition,
    q: &Partition,
    efficient_only: bool,
) -> Result<impl Iterator<Item = Chain>> {
    if !p.leq(q)? || p == q {
        return domain(format!("{p} is not strictly below {q}"));
    }
    let l = lattice(p.n())?;
    let (a, b) = (l.idx(p), l.idx(q));
    let raw = if efficient_only && b == l.top() {
        efficient_to_top(p.n(), a).as_ref().clone()
    } else {
        let all = chain_indices(l, a, b);
        if efficient_only {
            all.into_iter().filter(|c| index_chain_is_efficient(l, c)).collect()
        } else {
            all
        }
    };
    Ok(raw.into_iter().map(move |c| Chain {
        steps: c.iter().map(|&i| l.get(i).clone()).collect(),
    }))
}

/// All chains `a = c₀ < … < c_k = b` as index lists, bottom first.
pub(crate) fn chain_indices(l: &NcLattice, a: u32, b: u32) -> Vec<Vec<u32>> {
    let target = l.get(b);
    let mut memo: HashMap<u32, Vec<Vec<u32>>> = HashMap::new();
    fn go(
        l: &NcLattice,
        a: u32,
        b: u32,
        target: &Partition,
        memo: &mut HashMap<u32, Vec<Vec<u32>>>,
    ) -> Vec<Vec<u32>> {
        if let Some(v) = memo.get(&a) {
            return v.clone();
        }
        let mut out = vec![vec![a, b]];
        for c in l.above(a) {
            if c == a || c == b || !l.get(c).leq_unchecked(target) {
                continue;
            }
            for tail in go(l, c, b, target, memo) {
                let mut v = Vec::with_capacity(tail.len() + 1);
                v.push(a);
                v.extend(tail);
                out.push(v);
            }
        }
        memo.insert(a, out.clone());
        out
    }
    go(l, a, b, target, &mut memo)
}

pub(crate) fn index_chain_is_efficient(l: &NcLattice, c: &[u32]) -> bool {
    let base: BTreeSet<u32> = l.get(c[0]).block_masks().into_iter().collect();
    let mut seen = BTreeSet::new();
    for &i in &c[1..] {
        for m in l.get(i).block_masks() {
            if !base.contains(&m) && !seen.insert(m) {
                return false;
            }
        }
    }
    true
}

type ChainList = Arc<Vec<Vec<u32>>>;

fn efficient_cache() -> &'static Mutex<HashMap<(usize, u32), ChainList>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), ChainList>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Efficient chains from element `pi` of `NC(n)` up to `1_n`, built by
/// gluing efficient chains of the restrictions to the blocks of the step
/// just below the top. For `pi = 1_n` the single trivial chain `[top]` is
/// returned, which is what the gluing needs.
pub(crate) fn efficient_to_top(n: usize, pi: u32) -> ChainList {
    if let Some(v) = efficient_cache().lock().unwrap().get(&(n, pi)) {
        return v.clone();
    }
    let l = lattice_uncapped(n);
    let top = l.top();
    let mut out: Vec<Vec<u32>> = Vec::new();
    if pi == top {
        out.push(vec![top]);
    } else {
        out.push(vec![pi, top]);
        let p = l.get(pi);
        for sigma in l.above(pi) {
            if sigma == pi || sigma == top {
                continue;
            }
            let blocks = l.get(sigma).blocks();
            let subs: Vec<ChainList> = blocks
                .iter()
                .map(|w| {
                    let sub = lattice_uncapped(w.len());
                    efficient_to_top(w.len(), sub.idx(&p.restrict_unchecked(w)))
                })
                .collect();
            let mut choice = vec![0usize; subs.len()];
            loop {
                let picked: Vec<&Vec<u32>> =
                    choice.iter().zip(&subs).map(|(&k, s)| &s[k]).collect();
                out.push(glue(l, &blocks, &picked));
                let mut s = 0;
                loop {
                    if s == subs.len() {
                        break;
                    }
                    choice[s] += 1;
                    if choice[s] < subs[s].len() {
                        break;
                    }
                    choice[s] = 0;
                    s += 1;
                }
                if s == subs.len() {
                    break;
                }
            }
        }
    }
    let out = Arc::new(out);
    efficient_cache().lock().unwrap().insert((n, pi), out.clone());
    out
}

/// Assembles block-wise chains (bottom first, each ending at the top of its
/// block) into one chain of `NC(n)` ending with `1_n`. Shorter chains are
/// padded at the bottom by repeating their first element.
fn glue(l: &NcLattice, blocks: &[Vec<usize>], parts: &[&Vec<u32>]) -> Vec<u32> {
    let height = parts.iter().map(|c| c.len()).max().unwrap_or(1);
    let mut chain = Vec::with_capacity(height + 1);
    for level in (0..height).rev() {
        let mut raw = vec![0u16; l.n()];
        for (s, (w, c)) in blocks.iter().zip(parts).enumerate() {
            let k = c.len().saturating_sub(1 + level);
            let local = lattice_uncapped(w.len()).get(c[k]);
            for (i, &x) in w.iter().enumerate() {
                raw[x - 1] = (s as u16) << 8 | local.labels()[i] as u16;
            }
        }
        chain.push(l.idx(&Partition::from_raw_labels(&raw)));
    }
    chain.push(l.top());
    chain
}
