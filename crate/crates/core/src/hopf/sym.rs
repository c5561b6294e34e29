//! The quotient `Sym = ℚ[Y_2, Y_3, …]` (with `Y_1 = 1`) and the map
//! `Ψ(X_π) = Y_{Kr π}`.

use std::collections::HashMap;

use super::{TGen, TPoly};
use crate::error::Result;
use crate::nc::{lattice, lattice_uncapped, Partition};
use crate::ring::{Generator, Monomial, Poly, Rational, Scalar, Tensor};

/// `Y_k` for `k ≥ 2`, of degree `k − 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymGen(pub u8);

impl Generator for SymGen {
    fn weight(&self) -> u32 {
        self.0 as u32 - 1
    }
    fn label(&self) -> String {
        format!("Y{}", self.0)
    }
}

pub type SymPoly = Poly<SymGen>;
pub type SymTensor = Tensor<SymGen>;

fn y_monomial(p: &Partition) -> Monomial<SymGen> {
    Monomial::from_factors(
        p.block_sizes()
            .into_iter()
            .filter(|&s| s > 1)
            .map(|s| (SymGen(s as u8), 1))
            .collect(),
    )
}

/// `Y_π = ∏_{V ∈ π} Y_{|V|}`.
pub fn y_of(p: &Partition) -> SymPoly {
    Poly::term(Rational::from_int(1), y_monomial(p))
}

/// `Ψ`, the algebra map `X_π ↦ Y_{Kr π}`.
pub fn psi_to_sym(p: &TPoly) -> SymPoly {
    p.substitute(|g: &TGen| y_of(&g.partition().kreweras()))
}

fn delta_y(k: u8) -> SymTensor {
    let l = lattice_uncapped(k as usize);
    let mut out = Tensor::zero(2);
    for (i, p) in l.parts().iter().enumerate() {
        let kr = l.get(l.kreweras_index(i as u32));
        out.add_term(vec![y_monomial(p), y_monomial(kr)], &Rational::from_int(1));
    }
    out
}

/// `Δ(Y_k) = Σ_{π ∈ NC(k)} Y_π ⊗ Y_{Kr π}`, extended multiplicatively.
pub fn sym_comultiply(p: &SymPoly) -> SymTensor {
    let mut memo: HashMap<u8, SymTensor> = HashMap::new();
    let mut out = Tensor::zero(2);
    for (m, c) in p.terms() {
        let mut acc = Tensor::one(2);
        for (g, e) in m.factors() {
            let img = memo.entry(g.0).or_insert_with(|| delta_y(g.0)).clone();
            for _ in 0..*e {
                acc = acc.mul(&img);
            }
        }
        out.add_assign(&acc.scale(c));
    }
    out
}

/// `Σ_{π ≤ σ} Y_π ⊗ Y_{Kr_σ π}`, which equals `Δ(Y_σ)`.
pub fn sym_comultiply_partition(sigma: &Partition) -> Result<SymTensor> {
    let l = lattice(sigma.n())?;
    let mut out = Tensor::zero(2);
    for i in l.below(l.idx(sigma)) {
        let p = l.get(i);
        let kr = p.relative_kreweras(sigma)?;
        out.add_term(vec![y_monomial(p), y_monomial(&kr)], &Rational::from_int(1));
    }
    Ok(out)
}
