//! The Hopf algebra `𝒯` on generators `X_π`, whose characters are the
//! semi-multiplicative functions, and its quotients `Sym` and `𝒵`.

mod sym;
mod tn;
mod zalg;

use std::collections::HashMap;

use serde_json::{json, Value};

pub use sym::{psi_to_sym, sym_comultiply, sym_comultiply_partition, y_of, SymGen, SymPoly, SymTensor};
pub use tn::{count_efficient_chains_0n, series_identity_holds};
pub use zalg::{phi_to_z, z_comultiply, z_of, ZGen, ZPoly, ZTensor};

use crate::error::{domain, Result};
use crate::incidence::SemiMultFn;
use crate::nc::{chain_indices, efficient_to_top, lattice, lattice_uncapped, NcLattice, Partition};
use crate::ring::{Generator, Monomial, Poly, Rational, Scalar, Tensor};

/// The generator `X_π` for `π ≠ 1_n`, named by its lattice position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TGen {
    pub n: u8,
    pub idx: u32,
}

impl TGen {
    /// `None` for `1_n`, which is the unit of the algebra.
    pub fn new(p: &Partition) -> Result<Option<Self>> {
        let idx = lattice(p.n())?.index_of(p)?;
        Ok((idx != 0).then_some(TGen { n: p.n() as u8, idx }))
    }

    pub fn partition(&self) -> &'static Partition {
        lattice_uncapped(self.n as usize).get(self.idx)
    }
}

impl Generator for TGen {
    fn weight(&self) -> u32 {
        self.partition().num_blocks() as u32 - 1
    }
    fn label(&self) -> String {
        self.partition().to_string()
    }
}

impl std::fmt::Display for TGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "X{}", self.partition())
    }
}

pub type TPoly = Poly<TGen>;
pub type TTensor = Tensor<TGen>;

/// `X_π` as a polynomial (the unit for `π = 1_n`).
pub fn x(p: &Partition) -> Result<TPoly> {
    Ok(match TGen::new(p)? {
        Some(g) => Poly::var(g),
        None => Poly::one(),
    })
}

/// Monomial of restriction factors as produced by the lattice tables.
fn factor_monomial(factors: &[(u8, u32)]) -> Monomial<TGen> {
    Monomial::from_factors(
        factors
            .iter()
            .map(|&(n, idx)| (TGen { n, idx }, 1))
            .collect(),
    )
}

/// `M_{π,σ} = ∏_{W ∈ σ} X_{π_W}`.
pub fn m_poly(p: &Partition, s: &Partition) -> Result<TPoly> {
    if !p.leq(s)? {
        return domain(format!("{p} is not below {s}"));
    }
    let l = lattice(p.n())?;
    Ok(Poly::term(
        Rational::from_int(1),
        factor_monomial(&l.factors(l.idx(p), l.idx(s))),
    ))
}

/// `Δ(X_π) = Σ_{σ ≥ π} M_{π,σ} ⊗ X_σ`.
pub fn comultiply_gen(g: TGen) -> TTensor {
    let l = lattice_uncapped(g.n as usize);
    let mut out = Tensor::zero(2);
    for e in &l.up()[g.idx as usize] {
        let right = if e.upper == 0 {
            Monomial::one()
        } else {
            Monomial::var(TGen { n: g.n, idx: e.upper })
        };
        out.add_term(vec![factor_monomial(&e.factors), right], &Rational::from_int(1));
    }
    out
}

/// Image of a monomial under a multiplicative map into tensors.
fn monomial_image(m: &Monomial<TGen>, memo: &mut HashMap<TGen, TTensor>, arity: usize) -> TTensor {
    let mut acc = Tensor::one(arity);
    for (g, e) in m.factors() {
        let img = memo.entry(*g).or_insert_with(|| comultiply_gen(*g)).clone();
        for _ in 0..*e {
            acc = acc.mul(&img);
        }
    }
    acc
}

/// The algebra homomorphism `Δ`.
pub fn comultiply(p: &TPoly) -> TTensor {
    let mut memo = HashMap::new();
    let mut out = Tensor::zero(2);
    for (m, c) in p.terms() {
        out.add_assign(&monomial_image(m, &mut memo, 2).scale(c));
    }
    out
}

/// `Δ` applied to a monomial, as a two-fold tensor.
pub fn comultiply_monomial(m: &Monomial<TGen>) -> TTensor {
    monomial_image(m, &mut HashMap::new(), 2)
}

/// `ε`: the constant term.
pub fn counit(p: &TPoly) -> Rational {
    p.coeff(&Monomial::one())
}

/// Which Bogoliubov recursion to use: `Right` puts the recursive `S`
/// factors to the right of the `M_{π,σ}`, `Left` applies `S` to `M_{π,σ}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Memoized antipode on generators.
pub struct Antipode {
    side: Side,
    memo: HashMap<TGen, TPoly>,
}

impl Antipode {
    pub fn new(side: Side) -> Self {
        Antipode {
            side,
            memo: HashMap::new(),
        }
    }

    /// `S(X_π)`.
    pub fn gen(&mut self, g: TGen) -> TPoly {
        if let Some(v) = self.memo.get(&g) {
            return v.clone();
        }
        let l = lattice_uncapped(g.n as usize);
        let mut out = Poly::var(g).neg();
        for e in &l.up()[g.idx as usize] {
            if e.upper == g.idx || e.upper == 0 {
                continue;
            }
            let upper = TGen { n: g.n, idx: e.upper };
            let m = factor_monomial(&e.factors);
            let term = match self.side {
                Side::Right => self.gen(upper).mul_monomial(&m, &Rational::from_int(1)),
                Side::Left => self
                    .monomial(&m)
                    .mul_monomial(&Monomial::var(upper), &Rational::from_int(1)),
            };
            out = out.sub(&term);
        }
        self.memo.insert(g, out.clone());
        out
    }

    /// `S` of a monomial, using multiplicativity.
    pub fn monomial(&mut self, m: &Monomial<TGen>) -> TPoly {
        let mut acc = Poly::one();
        for (g, e) in m.factors() {
            acc = acc.mul(&self.gen(*g).pow(*e));
        }
        acc
    }

    /// `S` as an algebra homomorphism.
    pub fn apply(&mut self, p: &TPoly) -> TPoly {
        p.substitute(|g| self.gen(*g))
    }
}

/// `S(x)` via the chosen Bogoliubov recursion.
pub fn antipode_bogoliubov(p: &TPoly, side: Side) -> TPoly {
    Antipode::new(side).apply(p)
}

/// One signed summand `±M_c` of a chain formula, before collection.
pub type ChainTerm = (i32, Monomial<TGen>);

/// The summands of `S(X_π)` indexed by all chains (sign `(−1)^k`) or by
/// efficient chains (sign `(−1)^{|Blocks⁺(c)|}`), from `π` to `1_n`.
pub fn antipode_chain_terms(p: &Partition, efficient: bool) -> Result<Vec<ChainTerm>> {
    let l = lattice(p.n())?;
    let a = l.index_of(p)?;
    if a == l.top() {
        return domain("the antipode of the unit X_{1_n} is not a chain sum");
    }
    let chains = if efficient {
        efficient_to_top(p.n(), a).as_ref().clone()
    } else {
        chain_indices(l, a, l.top())
    };
    Ok(chains
        .iter()
        .map(|c| {
            let mut m = Monomial::one();
            for w in c.windows(2) {
                m = m.mul(&factor_monomial(&l.factors(w[0], w[1])));
            }
            let exponent = if efficient {
                blocks_plus_count(l, c)
            } else {
                c.len() - 1
            };
            (if exponent % 2 == 0 { 1 } else { -1 }, m)
        })
        .collect())
}

fn blocks_plus_count(l: &NcLattice, c: &[u32]) -> usize {
    let base = l.get(c[0]).block_masks();
    let mut seen: Vec<u32> = Vec::new();
    for &i in &c[1..] {
        for m in l.get(i).block_masks() {
            if !base.contains(&m) && !seen.contains(&m) {
                seen.push(m);
            }
        }
    }
    seen.len()
}

/// `S(X_π)` as a sum over chains from `π` to `1_n`.
pub fn antipode_chains(p: &Partition, efficient: bool) -> Result<TPoly> {
    let mut out = Poly::zero();
    for (sign, m) in antipode_chain_terms(p, efficient)? {
        out.add_term(m, &Rational::from_int(sign as i64));
    }
    Ok(out)
}

/// Generator-wise convolution of linear maps:
/// `(F ∗ G)(X_π) = Σ_{σ ≥ π} F(M_{π,σ}) G(X_σ)`.
pub fn convolve_on_generator(
    g: TGen,
    mut f: impl FnMut(&TPoly) -> TPoly,
    mut h: impl FnMut(&TPoly) -> TPoly,
) -> TPoly {
    let l = lattice_uncapped(g.n as usize);
    let mut out = Poly::zero();
    for e in &l.up()[g.idx as usize] {
        let left = Poly::term(Rational::from_int(1), factor_monomial(&e.factors));
        let right = if e.upper == 0 {
            Poly::one()
        } else {
            Poly::var(TGen { n: g.n, idx: e.upper })
        };
        out.add_assign(&f(&left).mul(&h(&right)));
    }
    out
}

/// `Δ(p) = p ⊗ 1 + 1 ⊗ p`.
pub fn is_primitive(p: &TPoly) -> bool {
    let one = Poly::one();
    let mut expected = Tensor::from_factors(&[p.clone(), one.clone()]);
    expected.add_assign(&Tensor::from_factors(&[one, p.clone()]));
    comultiply(p) == expected
}

/// The character `χ_g` with `χ_g(X_π) = g(π, 1_n)`.
pub struct Character<'a, S> {
    g: &'a SemiMultFn<S>,
}

pub fn character_from<S: Scalar>(g: &SemiMultFn<S>) -> Character<'_, S> {
    Character { g }
}

impl<S: Scalar> Character<'_, S> {
    pub fn gen(&self, x: TGen) -> S {
        self.g.row(x.n as usize)[x.idx as usize].clone()
    }

    pub fn eval(&self, p: &TPoly) -> Result<S> {
        if let Some(g) = p.generators().iter().find(|g| g.n as usize > self.g.n_max()) {
            return domain(format!("{} exceeds the character's degree", g.partition()));
        }
        Ok(p.evaluate(|g| self.gen(*g)))
    }

    pub fn eval_monomial(&self, m: &Monomial<TGen>) -> S {
        let mut acc = S::one();
        for (g, e) in m.factors() {
            acc = acc.mul_ref(&self.gen(*g).pow(*e));
        }
        acc
    }
}

/// `(χ₁ ⊗ χ₂)(t)` for a two-fold tensor.
pub fn eval_tensor<S: Scalar>(t: &TTensor, a: &Character<'_, S>, b: &Character<'_, S>) -> S {
    let mut acc = S::zero();
    for (key, c) in t.terms() {
        let v = a.eval_monomial(&key[0]).mul_ref(&b.eval_monomial(&key[1]));
        acc.add_assign_ref(&v.mul_ref(&S::from_rational(c)));
    }
    acc
}

/// `{"pi", "method", "terms": [{"coeff", "monomial": [labels]}]}`.
pub fn antipode_json(p: &Partition, method: &str, s: &TPoly) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .rev()
        .map(|(m, c)| {
            let labels: Vec<String> = m.expanded().iter().map(|g| g.label()).collect();
            json!({ "coeff": c.to_string(), "monomial": labels })
        })
        .collect();
    json!({ "pi": p.to_string(), "method": method, "terms": terms })
}
