use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use super::Partition;
use crate::error::{domain, Result};

/// Hard ceiling on lattice sizes held in memory (`|NC(12)| = 208012`).
pub const HARD_MAX: usize = 12;
const DEFAULT_CAP: usize = 10;

static CAP: AtomicUsize = AtomicUsize::new(DEFAULT_CAP);
static CACHE: [OnceLock<NcLattice>; HARD_MAX + 1] = [const { OnceLock::new() }; HARD_MAX + 1];

/// Current enumeration cap `n_max`.
pub fn cap() -> usize {
    CAP.load(Ordering::Relaxed)
}

/// Changes the enumeration cap. Lattices already built stay cached.
pub fn set_cap(n: usize) -> Result<()> {
    if n == 0 || n > HARD_MAX {
        return domain(format!("cap must lie in 1..={HARD_MAX}, got {n}"));
    }
    CAP.store(n, Ordering::Relaxed);
    Ok(())
}

/// One step up from a fixed `π`: an element `σ ≥ π` together with the
/// restrictions `π_W` for the blocks `W` of `σ` on which `π` is not already
/// the full block. Each factor is `(|W|, index of π_W in NC(|W|))`.
#[derive(Clone, Debug)]
pub struct UpEdge {
    pub upper: u32,
    pub factors: Vec<(u8, u32)>,
}

/// `NC(n)` with the derived tables everything else consumes.
///
/// Elements are sorted by block count, then by labelling, so index 0 is
/// `1_n`, the last index is `0_n`, and every strict upper bound of an
/// element has a smaller index.
pub struct NcLattice {
    n: usize,
    parts: Vec<Partition>,
    index: HashMap<Partition, u32>,
    kreweras: Vec<u32>,
    kreweras_inv: Vec<u32>,
    up: OnceLock<Vec<Vec<UpEdge>>>,
    shapes: OnceLock<Shapes>,
}

/// Block-size types of the elements of one lattice.
///
/// `shapes[k]` is a block-size multiset (descending); `of[i]` is the type of
/// element `i`; `kr_pairs` counts pairs `(type π, type Kr π)`.
pub struct Shapes {
    pub shapes: Vec<Vec<u8>>,
    pub of: Vec<u32>,
    pub kr_pairs: Vec<((u32, u32), u64)>,
}

/// The cached lattice `NC(n)`; fails for `n = 0` or `n` above the cap.
pub fn lattice(n: usize) -> Result<&'static NcLattice> {
    if n == 0 || n > cap() {
        return domain(format!("n = {n} outside 1..={}", cap()));
    }
    Ok(lattice_uncapped(n))
}

pub(crate) fn lattice_uncapped(n: usize) -> &'static NcLattice {
    assert!(n >= 1 && n <= HARD_MAX, "lattice size {n} beyond hard maximum");
    CACHE[n].get_or_init(|| NcLattice::build(n))
}

/// All of `NC(n)` in canonical form.
pub fn enumerate_nc(n: usize) -> Result<Vec<Partition>> {
    Ok(lattice(n)?.parts.clone())
}

/// Raw labellings of `NC(n)`: the block of 1 is `{1} ∪ S`, and every gap
/// between consecutive elements of that block (and after its last element)
/// carries an independent non-crossing partition.
fn generate(n: usize) -> Vec<Vec<u8>> {
    let mut table: Vec<Vec<Vec<u8>>> = vec![vec![vec![]]];
    for m in 1..=n {
        let mut out = Vec::new();
        for mask in 0u32..(1 << (m - 1)) {
            let mut block = vec![0usize];
            block.extend((1..m).filter(|i| mask >> (i - 1) & 1 == 1));
            let mut gaps = Vec::new();
            for k in 0..block.len() {
                let end = block.get(k + 1).copied().unwrap_or(m);
                if end > block[k] + 1 {
                    gaps.push((block[k] + 1, end));
                }
            }
            let mut partial = vec![vec![0u8; m]];
            let mut next_label = 1u8;
            for &(a, b) in &gaps {
                let fillers = &table[b - a];
                let mut grown = Vec::with_capacity(partial.len() * fillers.len());
                for base in &partial {
                    for f in fillers {
                        let mut v = base.clone();
                        for (i, &l) in f.iter().enumerate() {
                            v[a + i] = next_label + l;
                        }
                        grown.push(v);
                    }
                }
                next_label += (b - a) as u8;
                partial = grown;
            }
            out.extend(partial);
        }
        table.push(out);
    }
    table.swap_remove(n)
}

impl NcLattice {
    fn build(n: usize) -> Self {
        let mut parts: Vec<Partition> = generate(n)
            .into_iter()
            .map(|raw| Partition::from_raw_labels(&raw))
            .collect();
        parts.sort_by(|a, b| a.num_blocks().cmp(&b.num_blocks()).then_with(|| a.cmp(b)));
        let index: HashMap<Partition, u32> =
            parts.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let kreweras: Vec<u32> = parts.iter().map(|p| index[&p.kreweras()]).collect();
        let mut kreweras_inv = vec![0; parts.len()];
        for (i, &k) in kreweras.iter().enumerate() {
            kreweras_inv[k as usize] = i as u32;
        }
        NcLattice {
            n,
            parts,
            index,
            kreweras,
            kreweras_inv,
            up: OnceLock::new(),
            shapes: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn get(&self, i: u32) -> &Partition {
        &self.parts[i as usize]
    }

    pub fn index_of(&self, p: &Partition) -> Result<u32> {
        match self.index.get(p) {
            Some(&i) => Ok(i),
            None => domain(format!("{p} is not an element of NC({})", self.n)),
        }
    }

    pub(crate) fn idx(&self, p: &Partition) -> u32 {
        self.index[p]
    }

    pub fn top(&self) -> u32 {
        0
    }

    pub fn bottom(&self) -> u32 {
        (self.parts.len() - 1) as u32
    }

    pub fn kreweras_index(&self, i: u32) -> u32 {
        self.kreweras[i as usize]
    }

    pub fn kreweras_inverse_index(&self, i: u32) -> u32 {
        self.kreweras_inv[i as usize]
    }

    /// Indices of all `ρ ≤ τ`: products of arbitrary non-crossing partitions
    /// of the blocks of `τ`.
    pub fn below(&self, tau: u32) -> Vec<u32> {
        let t = self.get(tau);
        let mut acc: Vec<Vec<u16>> = vec![vec![0; self.n]];
        for (b, block) in t.blocks().iter().enumerate() {
            let sub = lattice_uncapped(block.len());
            let mut grown = Vec::with_capacity(acc.len() * sub.len());
            for base in &acc {
                for q in sub.parts() {
                    let mut v = base.clone();
                    for (k, &x) in block.iter().enumerate() {
                        v[x - 1] = (b as u16) << 8 | q.labels()[k] as u16;
                    }
                    grown.push(v);
                }
            }
            acc = grown;
        }
        acc.iter().map(|raw| self.idx(&Partition::from_raw_labels(raw))).collect()
    }

    /// Indices of all `σ ≥ π`, via `σ ≥ π ⇔ Kr(σ) ≤ Kr(π)`.
    pub fn above(&self, pi: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .below(self.kreweras_index(pi))
            .into_iter()
            .map(|r| self.kreweras_inverse_index(r))
            .collect();
        out.sort_unstable();
        out
    }

    /// Non-trivial restriction factors of `π` to the blocks of `σ ≥ π`.
    pub fn factors(&self, pi: u32, sigma: u32) -> Vec<(u8, u32)> {
        let p = self.get(pi);
        let mut out = Vec::new();
        for w in self.get(sigma).blocks() {
            if w.len() == 1 {
                continue;
            }
            let r = p.restrict_unchecked(&w);
            if r.is_one() {
                continue;
            }
            let idx = if w.len() == self.n {
                pi
            } else {
                lattice_uncapped(w.len()).idx(&r)
            };
            out.push((w.len() as u8, idx));
        }
        out
    }

    /// Elements grouped by block-size type; sums over `NC(n)` of
    /// quantities that only depend on block sizes collapse onto these.
    pub fn shapes(&self) -> &Shapes {
        self.shapes.get_or_init(|| {
            let mut ids: HashMap<Vec<u8>, u32> = HashMap::new();
            let mut shapes = Vec::new();
            let of: Vec<u32> = self
                .parts
                .iter()
                .map(|p| {
                    let mut key: Vec<u8> = p.block_sizes().iter().map(|&s| s as u8).collect();
                    key.sort_unstable_by(|a, b| b.cmp(a));
                    *ids.entry(key.clone()).or_insert_with(|| {
                        shapes.push(key);
                        (shapes.len() - 1) as u32
                    })
                })
                .collect();
            let mut pairs: HashMap<(u32, u32), u64> = HashMap::new();
            for (i, &k) in self.kreweras.iter().enumerate() {
                *pairs.entry((of[i], of[k as usize])).or_default() += 1;
            }
            let mut kr_pairs: Vec<_> = pairs.into_iter().collect();
            kr_pairs.sort_unstable();
            Shapes { shapes, of, kr_pairs }
        })
    }

    /// For each `π`, every `σ ≥ π` (ascending index, so `1_n` first and `π`
    /// itself last) with its restriction factors. Built once on first use.
    pub fn up(&self) -> &[Vec<UpEdge>] {
        self.up.get_or_init(|| {
            (0..self.len() as u32)
                .map(|pi| {
                    self.above(pi)
                        .into_iter()
                        .map(|s| UpEdge {
                            upper: s,
                            factors: self.factors(pi, s),
                        })
                        .collect()
                })
                .collect()
        })
    }
}
