//! The quotient `𝒵` spanned by irreducible partitions, and the map
//! `Φ(X_π) = Z_π` for irreducible `π` (zero otherwise).

use std::collections::HashMap;

use super::{TGen, TPoly};
use crate::nc::{lattice_uncapped, Partition};
use crate::ring::{Generator, Monomial, Poly, Rational, Scalar, Tensor};

/// `Z_π` for an irreducible `π ≠ 1_n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZGen(pub TGen);

impl Generator for ZGen {
    fn weight(&self) -> u32 {
        self.0.weight()
    }
    fn label(&self) -> String {
        self.0.label()
    }
}

pub type ZPoly = Poly<ZGen>;
pub type ZTensor = Tensor<ZGen>;

/// `Φ`, the quotient map `𝒯 → 𝒵`.
pub fn phi_to_z(p: &TPoly) -> ZPoly {
    p.substitute(|g: &TGen| {
        if g.partition().is_irreducible() {
            Poly::var(ZGen(*g))
        } else {
            Poly::zero()
        }
    })
}

fn delta_z(g: TGen) -> ZTensor {
    let l = lattice_uncapped(g.n as usize);
    let mut out = Tensor::zero(2);
    'edges: for e in &l.up()[g.idx as usize] {
        let mut left = Vec::with_capacity(e.factors.len());
        for &(n, idx) in &e.factors {
            let f = TGen { n, idx };
            if !f.partition().is_irreducible() {
                continue 'edges;
            }
            left.push((ZGen(f), 1));
        }
        let right = if e.upper == 0 {
            Monomial::one()
        } else {
            Monomial::var(ZGen(TGen { n: g.n, idx: e.upper }))
        };
        out.add_term(vec![Monomial::from_factors(left), right], &Rational::from_int(1));
    }
    out
}

/// `Δ(Z_π) = Σ_{σ ≫ π} ∏_{W ∈ σ} Z_{π_W} ⊗ Z_σ`, extended multiplicatively.
pub fn z_comultiply(p: &ZPoly) -> ZTensor {
    let mut memo: HashMap<ZGen, ZTensor> = HashMap::new();
    let mut out = Tensor::zero(2);
    for (m, c) in p.terms() {
        let mut acc = Tensor::one(2);
        for (g, e) in m.factors() {
            let img = memo.entry(*g).or_insert_with(|| delta_z(g.0)).clone();
            for _ in 0..*e {
                acc = acc.mul(&img);
            }
        }
        out.add_assign(&acc.scale(c));
    }
    out
}

/// `Z_π`, or zero when `π` is reducible.
pub fn z_of(p: &Partition) -> crate::Result<ZPoly> {
    Ok(phi_to_z(&super::x(p)?))
}

#[cfg(test)]
mod tests {
    use super::super::{comultiply, x};
    use super::*;
    use crate::nc::lattice;

    #[test]
    fn phi_is_a_coalgebra_map() {
        for n in 1..=5 {
            for p in lattice(n).unwrap().parts() {
                let xp = x(p).unwrap();
                let lhs = comultiply(&xp).map(|_, m| phi_to_z(&Poly::term(Rational::from_int(1), m.clone())));
                let rhs = z_comultiply(&phi_to_z(&xp));
                assert_eq!(lhs, rhs, "{p}");
            }
        }
    }

    #[test]
    fn edges_follow_the_strong_order() {
        let l = lattice(5).unwrap();
        for (i, p) in l.parts().iter().enumerate().skip(1) {
            if !p.is_irreducible() {
                continue;
            }
            let g = TGen { n: 5, idx: i as u32 };
            let expected = l.parts().iter().filter(|s| p.ll(s).unwrap()).count();
            assert_eq!(delta_z(g).len(), expected, "{p}");
        }
    }

    #[test]
    fn reducible_generators_vanish() {
        assert!(z_of(&"{1}{2}".parse().unwrap()).unwrap().is_zero());
        assert!(!z_of(&"{1,3}{2}".parse().unwrap()).unwrap().is_zero());
    }
}
