use std::fmt;
use std::str::FromStr;

use crate::error::{domain, parse_err, Error, Result};

/// A non-crossing partition of `{1..n}`.
///
/// Stored as a restricted-growth labelling: `labels[i]` is the index of the
/// block containing `i + 1`, and blocks are numbered in order of their
/// minima. Equal partitions therefore have identical bytes, and the derived
/// `Ord` is a total order usable for map keys.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Box<[u8]>,
}

/// Largest ground set the label representation supports.
pub const MAX_N: usize = 32;

impl Partition {
    /// Builds a partition from 1-based blocks in any order.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return domain(format!("ground set size {n} out of range"));
        }
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return domain("empty block");
            }
            for &x in block {
                if x == 0 || x > n {
                    return domain(format!("element {x} outside 1..{n}"));
                }
                if owner[x - 1] != usize::MAX {
                    return domain(format!("element {x} appears twice"));
                }
                owner[x - 1] = b;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return domain(format!("element {} is missing", i + 1));
        }
        let p = Self::from_raw_labels(&owner);
        if let Some((a, b)) = p.crossing() {
            return domain(format!("blocks containing {a} and {b} cross"));
        }
        Ok(p)
    }

    /// Canonicalizes an arbitrary labelling (any values, equal value = same
    /// block). The caller guarantees non-crossing.
    pub(crate) fn from_raw_labels<T: Copy + PartialEq>(raw: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let labels = raw
            .iter()
            .map(|x| match seen.iter().position(|s| s == x) {
                Some(i) => i as u8,
                None => {
                    seen.push(*x);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Partition { labels }
    }

    pub fn zero(n: usize) -> Self {
        Partition {
            labels: (0..n as u8).collect(),
        }
    }

    pub fn one(n: usize) -> Self {
        Partition {
            labels: vec![0; n].into_boxed_slice(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of blocks, `|π|`.
    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Index of the block containing the 1-based element `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x - 1] as usize
    }

    /// Blocks as ascending 1-based lists, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i + 1);
        }
        out
    }

    /// Block sizes in block order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_blocks()];
        for &l in self.labels.iter() {
            out[l as usize] += 1;
        }
        out
    }

    /// Each block as a bitmask over `0..n`.
    pub fn block_masks(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize] |= 1 << i;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num_blocks() == self.n()
    }

    pub fn is_one(&self) -> bool {
        self.num_blocks() == 1
    }

    /// Finds two elements witnessing a crossing, if any.
    fn crossing(&self) -> Option<(usize, usize)> {
        let n = self.n();
        let l = &self.labels;
        for a in 0..n {
            for b in a + 1..n {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..n {
                    if l[c] != l[a] {
                        continue;
                    }
                    for d in c + 1..n {
                        if l[d] == l[b] {
                            return Some((a + 1, b + 1));
                        }
                    }
                }
            }
        }
        None
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return domain(format!(
                "partitions of different ground sets ({} and {})",
                self.n(),
                other.n()
            ));
        }
        Ok(())
    }

    /// Reverse refinement: every block of `q` is a union of blocks of `self`.
    pub fn leq(&self, q: &Self) -> Result<bool> {
        self.same_n(q)?;
        Ok(self.leq_unchecked(q))
    }

    pub(crate) fn leq_unchecked(&self, q: &Self) -> bool {
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (a, b) in self.labels.iter().zip(q.labels.iter()) {
            let slot = &mut image[*a as usize];
            if *slot == u8::MAX {
                *slot = *b;
            } else if *slot != *b {
                return false;
            }
        }
        true
    }

    /// The order `≪`: `self ≤ q` and each block of `q` has its minimum and
    /// maximum in one block of `self`.
    pub fn ll(&self, q: &Self) -> Result<bool> {
        self.same_n(q)?;
        if !self.leq_unchecked(q) {
            return Ok(false);
        }
        Ok(q.blocks().iter().all(|w| {
            self.labels[w[0] - 1] == self.labels[w[w.len() - 1] - 1]
        }))
    }

    /// The order `⊑`: `self ≤ q` and within each block of `q` the blocks of
    /// `self` occupy contiguous runs.
    pub fn sqsubseteq(&self, q: &Self) -> Result<bool> {
        self.same_n(q)?;
        if !self.leq_unchecked(q) {
            return Ok(false);
        }
        let mut closed = vec![false; self.num_blocks()];
        for w in q.blocks() {
            let mut prev = u8::MAX;
            for &x in &w {
                let l = self.labels[x - 1];
                if l != prev {
                    if closed[l as usize] {
                        return Ok(false);
                    }
                    if prev != u8::MAX {
                        closed[prev as usize] = true;
                    }
                    prev = l;
                }
            }
        }
        Ok(true)
    }

    /// Blocks as cyclic permutations: each element maps to the next larger
    /// element of its block, the maximum back to the minimum (0-based).
    fn as_permutation(&self) -> Vec<usize> {
        let mut perm = vec![0; self.n()];
        for b in self.blocks() {
            for k in 0..b.len() {
                perm[b[k] - 1] = b[(k + 1) % b.len()] - 1;
            }
        }
        perm
    }

    fn from_permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut raw = vec![usize::MAX; n];
        for start in 0..n {
            if raw[start] != usize::MAX {
                continue;
            }
            let mut x = start;
            while raw[x] == usize::MAX {
                raw[x] = start;
                x = perm[x];
            }
        }
        Self::from_raw_labels(&raw)
    }

    /// Kreweras complement, realized as the permutation `π⁻¹γ` with
    /// `γ = (1 2 … n)`.
    pub fn kreweras(&self) -> Self {
        let n = self.n();
        let gamma: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        self.relative_to_cycles(&gamma)
    }

    /// Kreweras complement of `self` relative to `s ≥ self`: `π⁻¹σ` with the
    /// blocks of both taken as increasing cycles.
    pub fn relative_kreweras(&self, s: &Self) -> Result<Self> {
        if !self.leq(s)? {
            return domain(format!("{self} is not below {s}"));
        }
        Ok(self.relative_to_cycles(&s.as_permutation()))
    }

    fn relative_to_cycles(&self, sigma: &[usize]) -> Self {
        let pi = self.as_permutation();
        let mut inv = vec![0; pi.len()];
        for (i, &j) in pi.iter().enumerate() {
            inv[j] = i;
        }
        let composite: Vec<usize> = sigma.iter().map(|&j| inv[j]).collect();
        Self::from_permutation(&composite)
    }

    /// Relabeled restriction to the ascending 1-based subset `w`.
    pub fn restrict(&self, w: &[usize]) -> Result<Self> {
        if w.is_empty() {
            return domain("restriction to the empty set");
        }
        for k in 0..w.len() {
            if w[k] == 0 || w[k] > self.n() || (k > 0 && w[k] <= w[k - 1]) {
                return domain("restriction set must be ascending inside 1..n");
            }
        }
        Ok(self.restrict_unchecked(w))
    }

    pub(crate) fn restrict_unchecked(&self, w: &[usize]) -> Self {
        let raw: Vec<u8> = w.iter().map(|&x| self.labels[x - 1]).collect();
        Self::from_raw_labels(&raw)
    }

    /// `self ⋄ q`: `self` on `1..n`, then `q` shifted by `n`.
    pub fn concat(&self, q: &Self) -> Self {
        let shift = self.num_blocks() as u8;
        let labels = self
            .labels
            .iter()
            .copied()
            .chain(q.labels.iter().map(|l| l + shift))
            .collect();
        Partition { labels }
    }

    /// `1` and `n` share a block.
    pub fn is_irreducible(&self) -> bool {
        self.labels[0] == self.labels[self.n() - 1]
    }

    /// `[min, max]` of each block, 1-based.
    fn spans(&self) -> Vec<(usize, usize)> {
        let mut spans = vec![(usize::MAX, 0); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            let s = &mut spans[l as usize];
            s.0 = s.0.min(i + 1);
            s.1 = s.1.max(i + 1);
        }
        spans
    }

    /// Which blocks are not nested inside another block.
    fn outer_flags(&self) -> Vec<bool> {
        let spans = self.spans();
        spans
            .iter()
            .map(|&(lo, hi)| !spans.iter().any(|&(a, b)| a < lo && hi < b))
            .collect()
    }

    pub fn outer_count(&self) -> usize {
        self.outer_flags().into_iter().filter(|&o| o).count()
    }

    pub fn inner_count(&self) -> usize {
        self.num_blocks() - self.outer_count()
    }

    /// The interval cover as 1-based `(start, end)` pairs: the spans of the
    /// outer blocks.
    pub fn interval_cover(&self) -> Vec<(usize, usize)> {
        let spans = self.spans();
        let mut out: Vec<_> = self
            .outer_flags()
            .into_iter()
            .zip(spans)
            .filter_map(|(o, s)| o.then_some(s))
            .collect();
        out.sort_unstable();
        out
    }

    /// The unique factorization `self = π₁ ⋄ … ⋄ π_k` into irreducibles.
    pub fn irreducible_factors(&self) -> Vec<Partition> {
        self.interval_cover()
            .into_iter()
            .map(|(a, b)| self.restrict_unchecked(&(a..=b).collect::<Vec<_>>()))
            .collect()
    }

    /// Smallest irreducible partition above `self`.
    pub fn irreducible_cover(&self) -> Self {
        let first = self.labels[0];
        let last = self.labels[self.n() - 1];
        let raw: Vec<u8> = self
            .labels
            .iter()
            .map(|&l| if l == last { first } else { l })
            .collect();
        Self::from_raw_labels(&raw)
    }

    /// Is every block an interval?
    pub fn is_interval(&self) -> bool {
        self.spans()
            .iter()
            .zip(self.block_sizes())
            .all(|(&(lo, hi), size)| hi - lo + 1 == size)
    }

    /// Number of monotone orderings of the blocks (inner blocks come after
    /// the blocks they are nested in), via the hook-length formula for the
    /// nesting forest.
    pub fn monotone_order_count(&self) -> u128 {
        let spans = self.spans();
        let k = spans.len();
        let mut denom: u128 = 1;
        for &(lo, hi) in &spans {
            let hook = spans.iter().filter(|&&(a, b)| lo <= a && b <= hi).count();
            denom *= hook as u128;
        }
        let fact: u128 = (1..=k as u128).product();
        fact / denom
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            f.write_str("{")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `{1,2,5}{3,4}`. Whitespace between tokens is tolerated; block
    /// and element order are not required to be canonical.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut blocks: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
        skip(&mut pos);
        while pos < bytes.len() {
            if bytes[pos] != b'{' {
                return parse_err(pos, "expected `{`");
            }
            let open = pos;
            pos += 1;
            let mut block = Vec::new();
            loop {
                skip(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return parse_err(pos, "expected an element");
                }
                let x: usize = match s[start..pos].parse() {
                    Ok(v) if v > 0 => v,
                    _ => return parse_err(start, "elements must be positive integers"),
                };
                block.push((x, start));
                skip(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b'}') => {
                        pos += 1;
                        break;
                    }
                    Some(_) => return parse_err(pos, "expected `,` or `}`"),
                    None => return parse_err(pos, "unterminated block"),
                }
            }
            blocks.push((open, block));
            skip(&mut pos);
        }
        if blocks.is_empty() {
            return parse_err(0, "empty partition");
        }
        let n: usize = blocks.iter().map(|(_, b)| b.len()).sum();
        if n > MAX_N {
            return parse_err(0, format!("ground set larger than {MAX_N}"));
        }
        let mut owner = vec![usize::MAX; n];
        for (k, (_, block)) in blocks.iter().enumerate() {
            for &(x, at) in block {
                if x > n {
                    return parse_err(at, format!("element {x} exceeds ground set size {n}"));
                }
                if owner[x - 1] != usize::MAX {
                    return parse_err(at, format!("element {x} repeated"));
                }
                owner[x - 1] = k;
            }
        }
        let p = Partition::from_raw_labels(&owner);
        if let Some((a, b)) = p.crossing() {
            let at = blocks[owner[a - 1]].0.max(blocks[owner[b - 1]].0);
            return parse_err(at, format!("block crosses the block containing {a}"));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn text_roundtrip_and_canonical_form() {
        let x = p("{3,4}{5,1,2}");
        assert_eq!(x.to_string(), "{1,2,5}{3,4}");
        assert_eq!(x, p("{1,2,5}{3,4}"));
        assert_eq!(x.num_blocks(), 2);
    }

    #[test]
    fn parser_rejects_bad_input_with_positions() {
        assert!(matches!("{1,3}{2,4}".parse::<Partition>(), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!("{1,2}{2}".parse::<Partition>(), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!("{1,4}".parse::<Partition>(), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!("{1,}".parse::<Partition>(), Err(Error::Parse { pos: 3, .. })));
        assert!("".parse::<Partition>().is_err());
    }

    #[test]
    fn kreweras_small_cases() {
        assert_eq!(p("{1,2}{3}").kreweras(), p("{1}{2,3}"));
        assert_eq!(Partition::one(4).kreweras(), Partition::zero(4));
        assert_eq!(Partition::zero(4).kreweras(), Partition::one(4));
        assert_eq!(p("{1,4}{2,3}").kreweras(), p("{1,3}{2}{4}"));
    }

    #[test]
    fn orders() {
        let a = p("{1,2}{3,4}");
        let b = p("{1,4}{2,3}");
        assert!(!a.leq(&b).unwrap());
        assert!(!Partition::zero(3).ll(&p("{1,3}{2}")).unwrap());
        assert!(!p("{1,3}{2}").sqsubseteq(&Partition::one(3)).unwrap());
        assert!(p("{1,2}{3}").sqsubseteq(&Partition::one(3)).unwrap());
        assert!(a.leq(&Partition::one(3)).is_err());
    }

    #[test]
    fn restriction_and_concatenation() {
        assert_eq!(p("{1,2,5}{3,4}").restrict(&[3, 4, 5]).unwrap(), p("{1,2}{3}"));
        assert_eq!(Partition::one(1).concat(&Partition::one(1)), Partition::zero(2));
        assert!(p("{1,2}").restrict(&[]).is_err());
        assert!(p("{1,2}").restrict(&[2, 1]).is_err());
    }

    #[test]
    fn factors_and_covers() {
        let x = p("{1,2}{3}{4,6}{5}");
        assert_eq!(x.interval_cover(), vec![(1, 2), (3, 3), (4, 6)]);
        assert_eq!(
            x.irreducible_factors(),
            vec![p("{1,2}"), p("{1}"), p("{1,3}{2}")]
        );
        assert_eq!(x.outer_count(), 3);
        assert_eq!(x.inner_count(), 1);
        assert_eq!(x.irreducible_cover(), p("{1,2,4,6}{3}{5}"));
        assert_eq!(Partition::zero(2).irreducible_cover(), Partition::one(2));
    }

    #[test]
    fn monotone_counts() {
        assert_eq!(p("{1,4}{2,3}").monotone_order_count(), 1);
        assert_eq!(Partition::zero(4).monotone_order_count(), 24);
        // {1,6} contains {2,5} ⊃ {3}{4}: 4!/(4·3) = 2
        assert_eq!(p("{1,6}{2,5}{3}{4}").monotone_order_count(), 2);
    }
}
