//! The group of unitized semi-multiplicative functions on `NC`, truncated at
//! a degree `n_max`.
//!
//! A function `g` is stored through its values `z(π) = g(π, 1_n)`; every
//! other value is the product `g(π, σ) = ∏_{W ∈ σ} z(π_W)`.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{domain, Error, Result};
use crate::nc::{lattice, lattice_uncapped, NcLattice, Partition, UpEdge};
use crate::ring::{MPoly, Rational, Scalar};

/// Element of the convolution group, truncated at degree `n_max`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemiMultFn<S> {
    n_max: usize,
    /// `z[n][i]` is the value at element `i` of `NC(n)`; `z[0]` is empty.
    z: Vec<Vec<S>>,
}

/// A multiplicative function, determined by `λ_n = f(0_n, 1_n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultFn<S> {
    lambda: Vec<S>,
}

impl<S: Scalar> SemiMultFn<S> {
    /// Builds a function from a rule giving `z(π)`; the rule is never asked
    /// about `1_n`, whose value is always one.
    pub fn from_fn(n_max: usize, mut rule: impl FnMut(&Partition) -> S) -> Result<Self> {
        if n_max == 0 {
            return domain("n_max must be positive");
        }
        let mut z = vec![Vec::new()];
        for n in 1..=n_max {
            let l = lattice(n)?;
            let mut row = Vec::with_capacity(l.len());
            row.push(S::one());
            for p in &l.parts()[1..] {
                row.push(rule(p));
            }
            z.push(row);
        }
        Ok(SemiMultFn { n_max, z })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `z(π) = g(π, 1_n)`.
    pub fn z(&self, p: &Partition) -> Result<S> {
        let l = self.lattice_for(p.n())?;
        Ok(self.z[p.n()][l.index_of(p)? as usize].clone())
    }

    /// All values at degree `n`, indexed like `lattice(n)`.
    pub fn row(&self, n: usize) -> &[S] {
        &self.z[n]
    }

    fn lattice_for(&self, n: usize) -> Result<&'static NcLattice> {
        if n == 0 || n > self.n_max {
            return domain(format!("degree {n} outside 1..={}", self.n_max));
        }
        lattice(n)
    }

    /// `g(π, σ)` for `π ≤ σ`.
    pub fn evaluate(&self, p: &Partition, s: &Partition) -> Result<S> {
        if !p.leq(s)? {
            return domain(format!("{p} is not below {s}"));
        }
        let l = self.lattice_for(p.n())?;
        Ok(self.value_on(&l.factors(l.idx(p), l.idx(s))))
    }

    pub(crate) fn value_on(&self, factors: &[(u8, u32)]) -> S {
        let mut acc = S::one();
        for &(size, idx) in factors {
            let v = &self.z[size as usize][idx as usize];
            if v.is_zero() {
                return S::zero();
            }
            acc = acc.mul_ref(v);
        }
        acc
    }

    pub(crate) fn edge_value(&self, e: &UpEdge) -> S {
        self.value_on(&e.factors)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n_max != other.n_max {
            return domain(format!(
                "degree caps differ ({} and {})",
                self.n_max, other.n_max
            ));
        }
        Ok(())
    }

    /// `(g₁ ∗ g₂)(π, 1_n) = Σ_{σ ≥ π} g₁(π, σ) z₂(σ)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut z = vec![Vec::new()];
        for n in 1..=self.n_max {
            let l = lattice(n)?;
            let up = l.up();
            let row: Vec<S> = (0..l.len())
                .into_par_iter()
                .map(|pi| {
                    let mut acc = S::zero();
                    for e in &up[pi] {
                        let right = &other.z[n][e.upper as usize];
                        if right.is_zero() {
                            continue;
                        }
                        let left = self.edge_value(e);
                        if !left.is_zero() {
                            acc.add_assign_ref(&left.mul_ref(right));
                        }
                    }
                    acc
                })
                .collect();
            z.push(row);
        }
        Ok(SemiMultFn { n_max: self.n_max, z })
    }

    /// Convolution inverse by the triangular recursion
    /// `z⁻¹(π) = −Σ_{σ > π} g(π, σ) z⁻¹(σ)`.
    pub fn inverse(&self) -> Self {
        let mut z = vec![Vec::new()];
        for n in 1..=self.n_max {
            let l = lattice_uncapped(n);
            let up = l.up();
            let mut row: Vec<S> = Vec::with_capacity(l.len());
            row.push(S::one());
            for pi in 1..l.len() {
                let mut acc = S::zero();
                for e in &up[pi] {
                    if e.upper as usize == pi {
                        continue;
                    }
                    let right = &row[e.upper as usize];
                    if right.is_zero() {
                        continue;
                    }
                    let left = self.edge_value(e);
                    if !left.is_zero() {
                        acc.add_assign_ref(&left.mul_ref(right));
                    }
                }
                row.push(acc.neg_ref());
            }
            z.push(row);
        }
        SemiMultFn { n_max: self.n_max, z }
    }

    /// Applies a ring map to every value.
    pub fn map_scalars<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> SemiMultFn<T> {
        SemiMultFn {
            n_max: self.n_max,
            z: self.z.iter().map(|row| row.iter().map(&mut f).collect()).collect(),
        }
    }

    /// The same function at a smaller degree cap.
    pub fn truncate(&self, n_max: usize) -> Result<Self> {
        if n_max == 0 || n_max > self.n_max {
            return domain(format!("cannot truncate degree {} to {n_max}", self.n_max));
        }
        Ok(SemiMultFn {
            n_max,
            z: self.z[..=n_max].to_vec(),
        })
    }

    /// `z(π) = ∏_{W ∈ Kr π} z(0_{|W|})` for every `π`.
    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative_defects().is_empty()
    }

    fn multiplicative_defects(&self) -> Vec<Partition> {
        let mut bad = Vec::new();
        for n in 1..=self.n_max {
            let l = lattice_uncapped(n);
            for (i, p) in l.parts().iter().enumerate() {
                let expected = crate::ring::product(
                    p.kreweras()
                        .block_sizes()
                        .iter()
                        .map(|&s| &self.z[s][lattice_uncapped(s).bottom() as usize]),
                );
                if expected != self.z[n][i] {
                    bad.push(p.clone());
                }
            }
        }
        bad
    }

    /// Cumulant-to-moment type: `z(π₁ ⋄ π₂) = z(π₁) z(π₂)`, equivalently
    /// `z(π)` is the product over the irreducible factors of `π`.
    pub fn is_c_to_m(&self) -> bool {
        (1..=self.n_max).all(|n| {
            let l = lattice_uncapped(n);
            l.parts().iter().enumerate().all(|(i, p)| {
                let factors = p.irreducible_factors();
                factors.len() == 1
                    || crate::ring::product(
                        factors
                            .iter()
                            .map(|f| &self.z[f.n()][lattice_uncapped(f.n()).idx(f) as usize]),
                    ) == self.z[n][i]
            })
        })
    }

    /// Cumulant-to-cumulant type: `z` vanishes on every reducible `π`.
    pub fn is_c_to_c(&self) -> bool {
        (1..=self.n_max).all(|n| {
            let l = lattice_uncapped(n);
            l.parts()
                .iter()
                .zip(&self.z[n])
                .all(|(p, v)| p.is_irreducible() || v.is_zero())
        })
    }

    /// The unique c-to-c `g` with `g ∗ g_bc-m = self`.
    pub fn right_coset_decompose(&self) -> Result<Self> {
        if !self.is_c_to_m() {
            return domain("function is not of cumulant-to-moment type");
        }
        let g = self.convolve(&g_bc_m(self.n_max)?.inverse())?;
        if !g.is_c_to_c() {
            return Err(Error::Invariant("coset representative is not c-to-c".into()));
        }
        Ok(g)
    }

    /// `(n, partition, value)` for every stored nonzero value off `1_n`.
    pub fn nonzero_values(&self) -> Vec<(Partition, &S)> {
        let mut out = Vec::new();
        for n in 1..=self.n_max {
            let l = lattice_uncapped(n);
            for (i, v) in self.z[n].iter().enumerate().skip(1) {
                if !v.is_zero() {
                    out.push((l.get(i as u32).clone(), v));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let values = self.nonzero_values();
        let ring = ring_tag(values.iter().map(|(_, v)| *v));
        let mut z = Map::new();
        for (p, v) in values {
            z.insert(p.to_string(), Value::String(v.to_string()));
        }
        json!({ "n_max": self.n_max, "ring": ring, "z": z })
    }
}

/// `"rational"` for polynomial data that happens to be constant, otherwise
/// the ring's own tag.
pub(crate) fn ring_tag<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> &'static str {
    if S::RING == "mpoly" && values.into_iter().all(Scalar::is_constant) {
        "rational"
    } else {
        S::RING
    }
}

impl SemiMultFn<MPoly> {
    /// Reads `{ "n_max": k, "ring": "...", "z": { "<partition>": "<scalar>" } }`.
    /// Missing entries are zero, `z(1_n)` is always one.
    pub fn from_json(v: &Value) -> Result<Self> {
        let n_max = v
            .get("n_max")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Domain("missing integer field `n_max`".into()))?
            as usize;
        if let Some(r) = v.get("ring").and_then(Value::as_str) {
            if r != "rational" && r != "mpoly" {
                return domain(format!("unsupported ring `{r}`"));
            }
        }
        let entries = match v.get("z") {
            Some(Value::Object(m)) => m.clone(),
            None => Map::new(),
            Some(_) => return domain("field `z` must be an object"),
        };
        let mut g = SemiMultFn::from_fn(n_max, |_| MPoly::zero())?;
        for (key, val) in entries {
            let p: Partition = key.parse()?;
            let text = match &val {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return domain(format!("value for {key} must be a string")),
            };
            let x: MPoly = text.parse()?;
            if p.n() > n_max {
                return domain(format!("{p} exceeds n_max = {n_max}"));
            }
            let i = lattice(p.n())?.idx(&p) as usize;
            if i == 0 {
                if !x.is_one() {
                    return domain(format!("value at {p} must be 1"));
                }
                continue;
            }
            g.z[p.n()][i] = x;
        }
        Ok(g)
    }
}

impl<S: Scalar> MultFn<S> {
    /// `λ = (λ₁, λ₂, …)` with `λ₁ = 1`.
    pub fn new(lambda: Vec<S>) -> Result<Self> {
        match lambda.first() {
            Some(l1) if l1.is_one() => Ok(MultFn { lambda }),
            Some(_) => domain("λ₁ must equal 1"),
            None => domain("empty λ sequence"),
        }
    }

    pub fn lambda(&self) -> &[S] {
        &self.lambda
    }

    pub fn n_max(&self) -> usize {
        self.lambda.len()
    }

    /// The semi-multiplicative function `z(π) = ∏_{W ∈ Kr π} λ_{|W|}`.
    pub fn to_semi(&self) -> Result<SemiMultFn<S>> {
        SemiMultFn::from_fn(self.n_max(), |p| {
            crate::ring::product(p.kreweras().block_sizes().iter().map(|&s| &self.lambda[s - 1]))
        })
    }

    /// Reads the `λ` sequence off a multiplicative function.
    pub fn from_semi(g: &SemiMultFn<S>) -> Result<Self> {
        if !g.is_multiplicative() {
            return domain("function is not multiplicative");
        }
        let lambda = (1..=g.n_max)
            .map(|n| g.z[n][lattice_uncapped(n).bottom() as usize].clone())
            .collect();
        MultFn::new(lambda)
    }

    /// `u_q⁻¹ ∗ f ∗ u_q`, which stays multiplicative; returns its `θ`
    /// sequence.
    pub fn conjugate_by_u(&self, q: &S) -> Result<MultFn<S>> {
        let f = self.to_semi()?;
        let u = u(self.n_max(), q.clone())?;
        let conj = u.inverse().convolve(&f)?.convolve(&u)?;
        if let Some(p) = conj.multiplicative_defects().first() {
            return Err(Error::Invariant(format!(
                "conjugate is not multiplicative at {p}"
            )));
        }
        MultFn::from_semi(&conj)
    }
}

/// The unit `e`: one on `1_n`, zero elsewhere.
pub fn unit_e<S: Scalar>(n_max: usize) -> Result<SemiMultFn<S>> {
    SemiMultFn::from_fn(n_max, |_| S::zero())
}

/// Free cumulants to moments: identically one.
pub fn g_fc_m<S: Scalar>(n_max: usize) -> Result<SemiMultFn<S>> {
    SemiMultFn::from_fn(n_max, |_| S::one())
}

/// Boolean cumulants to moments: one on interval partitions.
pub fn g_bc_m<S: Scalar>(n_max: usize) -> Result<SemiMultFn<S>> {
    SemiMultFn::from_fn(n_max, |p| if p.is_interval() { S::one() } else { S::zero() })
}

/// `t`-Boolean cumulants to moments: `t^{inner(π)}`, with `0⁰ = 1`.
pub fn g_bc_m_t<S: Scalar>(n_max: usize, t: S) -> Result<SemiMultFn<S>> {
    SemiMultFn::from_fn(n_max, |p| t.pow(p.inner_count() as u32))
}

/// Monotone cumulants to moments: fraction of monotone block orderings.
pub fn g_mc_m<S: Scalar>(n_max: usize) -> Result<SemiMultFn<S>> {
    SemiMultFn::from_fn(n_max, |p| {
        let k = p.num_blocks() as u32;
        let fact: u128 = (1..=k as u128).product();
        S::from_rational(&Rational::new(
            p.monotone_order_count().into(),
            fact.into(),
        ))
    })
}

/// `u_q`: `q^{|π|−1}` on irreducible `π`, zero otherwise.
pub fn u<S: Scalar>(n_max: usize, q: S) -> Result<SemiMultFn<S>> {
    SemiMultFn::from_fn(n_max, |p| {
        if p.is_irreducible() {
            q.pow(p.num_blocks() as u32 - 1)
        } else {
            S::zero()
        }
    })
}

/// Multiplicative function from `λ₁ = 1, λ₂, …`.
pub fn mult_from_lambda<S: Scalar>(lambda: Vec<S>) -> Result<MultFn<S>> {
    MultFn::new(lambda)
}

/// `θ_n = Σ_{π irreducible} q^{|π|−1} ∏_{V ∈ π} λ_{|V|}`, computed directly.
pub fn normalizer_theta<S: Scalar>(lambda: &[S], q: &S) -> Result<Vec<S>> {
    let mut out = Vec::with_capacity(lambda.len());
    for n in 1..=lambda.len() {
        let mut acc = S::zero();
        for p in lattice(n)?.parts() {
            if p.is_irreducible() {
                let w = q.pow(p.num_blocks() as u32 - 1);
                let prod = crate::ring::product(p.block_sizes().iter().map(|&s| &lambda[s - 1]));
                acc.add_assign_ref(&w.mul_ref(&prod));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// The `λ` of every multiplicative function of cumulant-to-cumulant type
/// (only the unit is expected).
pub fn multiplicative_c_to_c(n_max: usize) -> Result<Vec<Rational>> {
    solve_multiplicative(n_max, |g, n| {
        lattice_uncapped(n)
            .parts()
            .iter()
            .zip(g.row(n))
            .filter(|(p, _)| !p.is_irreducible())
            .map(|(_, v)| v.clone())
            .collect()
    })
}

/// The `λ` of every multiplicative function of cumulant-to-moment type
/// (only the free kernel is expected).
pub fn multiplicative_c_to_m(n_max: usize) -> Result<Vec<Rational>> {
    solve_multiplicative(n_max, |g, n| {
        let mut eqs = Vec::new();
        for (p, v) in lattice_uncapped(n).parts().iter().zip(g.row(n)) {
            let factors = p.irreducible_factors();
            if factors.len() > 1 {
                let prod = factors.iter().fold(MPoly::one(), |acc, f| {
                    acc.mul(&g.z(f).expect("factor within cap"))
                });
                eqs.push(v.sub(&prod));
            }
        }
        eqs
    })
}

/// Determines all `λ` (with `λ₁ = 1`) for which the multiplicative function
/// satisfies the polynomial constraints `eqs(g, n) = 0` at every degree.
///
/// Degree by degree, `λ_n` enters the degree-`n` constraints linearly (only
/// through `π = 0_n`), so each step is a linear problem in one unknown once
/// the lower `λ` are fixed. Fails unless the solution is unique.
fn solve_multiplicative(
    n_max: usize,
    eqs: impl Fn(&SemiMultFn<MPoly>, usize) -> Vec<MPoly>,
) -> Result<Vec<Rational>> {
    let mut known: Vec<Rational> = vec![Rational::from_int(1)];
    for n in 2..=n_max {
        let mut lambda: Vec<MPoly> = known.iter().map(MPoly::from_rational).collect();
        let var = MPoly::named("lambda");
        lambda.push(var.clone());
        let g = MultFn::new(lambda)?.to_semi()?;
        let mut value: Option<Rational> = None;
        let mut free = true;
        for e in eqs(&g, n) {
            let b = e.coeff(&crate::ring::mono(&[("lambda", 1)]));
            let a = e.coeff(&crate::ring::Monomial::one());
            if e.len() > usize::from(!a.is_zero()) + usize::from(!b.is_zero()) {
                return Err(Error::Invariant(format!("constraint {e} is not linear")));
            }
            if b.is_zero() {
                if !a.is_zero() {
                    return domain(format!("no solution at degree {n}"));
                }
                continue;
            }
            free = false;
            let x = -a / b;
            match &value {
                Some(v) if *v != x => return domain(format!("no solution at degree {n}")),
                _ => value = Some(x),
            }
        }
        if free {
            return domain(format!("λ_{n} is not determined"));
        }
        known.push(value.unwrap());
    }
    Ok(known)
}
