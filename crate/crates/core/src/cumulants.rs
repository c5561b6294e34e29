//! The right action of the convolution group on univariate moment
//! sequences, and the cumulant calculus built on it.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::incidence::{self, ring_tag, MultFn, SemiMultFn};
use crate::nc::{lattice, lattice_uncapped};
use crate::ring::{Dual, MPoly, Scalar};

/// Scalars `a₁ = 1, a₂, …, a_N`, extended to partitions by
/// `a_π = ∏_{V ∈ π} a_{|V|}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentSeq<S> {
    a: Vec<S>,
}

/// A moment sequence over dual numbers: the pair of a sequence and its
/// infinitesimal companion, whose first entry is zero.
pub type DualMomentSeq<S> = MomentSeq<Dual<S>>;

impl<S: Scalar> MomentSeq<S> {
    pub fn new(a: Vec<S>) -> Result<Self> {
        match a.first() {
            Some(a1) if a1.is_one() => Ok(MomentSeq { a }),
            Some(a1) => domain(format!("first entry must be 1, got {a1}")),
            None => domain("empty sequence"),
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn values(&self) -> &[S] {
        &self.a
    }

    /// `a_n`, 1-based.
    pub fn get(&self, n: usize) -> &S {
        &self.a[n - 1]
    }

    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.a.len() {
            return domain(format!("cannot truncate length {} to {n}", self.a.len()));
        }
        Ok(MomentSeq { a: self.a[..n].to_vec() })
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Result<MomentSeq<T>> {
        MomentSeq::new(self.a.iter().map(f).collect())
    }

    pub fn to_json(&self) -> Value {
        let ring = ring_tag(self.a.iter());
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        json!({ "ring": ring, "a": a })
    }
}

impl<S: Scalar> DualMomentSeq<S> {
    /// Pairs a sequence with an infinitesimal companion `b` (with `b₁ = 0`).
    pub fn dual(first: &MomentSeq<S>, second: Vec<S>) -> Result<Self> {
        if second.len() != first.len() {
            return domain("components have different lengths");
        }
        if !second[0].is_zero() {
            return domain("infinitesimal part must start with 0");
        }
        MomentSeq::new(
            first
                .a
                .iter()
                .zip(second)
                .map(|(a, b)| Dual::new(a.clone(), b))
                .collect(),
        )
    }

    /// The real and infinitesimal components.
    pub fn split(&self) -> (MomentSeq<S>, Vec<S>) {
        (
            MomentSeq { a: self.a.iter().map(|d| d.re.clone()).collect() },
            self.a.iter().map(|d| d.eps.clone()).collect(),
        )
    }
}

impl MomentSeq<MPoly> {
    /// Reads `{"ring": "...", "a": ["1", ...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        if let Some(r) = v.get("ring").and_then(Value::as_str) {
            if r != "rational" && r != "mpoly" {
                return domain(format!("unsupported ring `{r}`"));
            }
        }
        let items = v
            .get("a")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Domain("missing array field `a`".into()))?;
        let a = items
            .iter()
            .map(|x| match x {
                Value::String(s) => s.parse::<MPoly>(),
                Value::Number(n) => n.to_string().parse::<MPoly>(),
                _ => domain("sequence entries must be strings"),
            })
            .collect::<Result<Vec<_>>>()?;
        MomentSeq::new(a)
    }

    /// `(1, x2, x3, …, xN)` with `x` the given variable prefix.
    pub fn symbolic(prefix: &str, n: usize) -> Result<Self> {
        let mut a = vec![MPoly::one()];
        a.extend((2..=n).map(|k| MPoly::named(&format!("{prefix}{k}"))));
        MomentSeq::new(a)
    }
}

/// `Σ_{π ∈ NC(n)} w(π) ∏_{V ∈ π} a_{|V|}` for `n = 1..=a.len()`, with the
/// sum grouped by block-size type.
fn shape_sums<S: Scalar>(a: &[S], mut weight: impl FnMut(usize, usize) -> S) -> Vec<S> {
    let mut out = Vec::with_capacity(a.len());
    let mut memo: HashMap<Vec<u8>, S> = HashMap::new();
    for n in 1..=a.len() {
        let l = lattice_uncapped(n);
        let shapes = l.shapes();
        let mut per_shape = vec![S::zero(); shapes.shapes.len()];
        for (i, &k) in shapes.of.iter().enumerate() {
            let w = weight(n, i);
            if !w.is_zero() {
                per_shape[k as usize].add_assign_ref(&w);
            }
        }
        let mut acc = S::zero();
        for (k, w) in per_shape.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let shape = &shapes.shapes[k];
            let prod = memo
                .entry(shape.clone())
                .or_insert_with(|| crate::ring::product(shape.iter().map(|&s| &a[s as usize - 1])))
                .clone();
            acc.add_assign_ref(&w.mul_ref(&prod));
        }
        out.push(acc);
    }
    out
}

fn check_degree<S: Scalar>(len: usize, g: &SemiMultFn<S>) -> Result<()> {
    if len > g.n_max() {
        return domain(format!(
            "sequence of length {len} exceeds the function's degree {}",
            g.n_max()
        ));
    }
    lattice(len)?;
    Ok(())
}

/// `(m · g)_n = Σ_{π ∈ NC(n)} g(π, 1_n) m_π`.
pub fn act<S: Scalar>(m: &MomentSeq<S>, g: &SemiMultFn<S>) -> Result<MomentSeq<S>> {
    MomentSeq::new(act_plain(&m.a, g)?)
}

/// The action on an arbitrary scalar sequence (no normalization of `a₁`).
pub fn act_plain<S: Scalar>(a: &[S], g: &SemiMultFn<S>) -> Result<Vec<S>> {
    check_degree(a.len(), g)?;
    Ok(shape_sums(a, |n, i| g.row(n)[i].clone()))
}

/// The infinitesimal action written out on the pair `(ψ¹, ψ²)`:
/// the second component is
/// `Σ_π g(π, 1_n) Σ_{W ∈ π} ψ²_{|W|} ∏_{V ≠ W} ψ¹_{|V|}`.
pub fn act_infinitesimal<S: Scalar>(
    psi1: &MomentSeq<S>,
    psi2: &[S],
    g: &SemiMultFn<S>,
) -> Result<(MomentSeq<S>, Vec<S>)> {
    if psi2.len() != psi1.len() {
        return domain("components have different lengths");
    }
    check_degree(psi1.len(), g)?;
    let first = act(psi1, g)?;
    let mut second = Vec::with_capacity(psi1.len());
    for n in 1..=psi1.len() {
        let l = lattice_uncapped(n);
        let mut acc = S::zero();
        for (i, p) in l.parts().iter().enumerate() {
            let w = &g.row(n)[i];
            if w.is_zero() {
                continue;
            }
            let sizes = p.block_sizes();
            for (j, &s) in sizes.iter().enumerate() {
                let mut term = psi2[s - 1].clone();
                for (k, &t) in sizes.iter().enumerate() {
                    if k != j {
                        term = term.mul_ref(&psi1.a[t - 1]);
                    }
                }
                acc.add_assign_ref(&w.mul_ref(&term));
            }
        }
        second.push(acc);
    }
    Ok((first, second))
}

/// A family of cumulants, named by the function taking it to moments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Brand<S> {
    Moments,
    Free,
    Boolean,
    TBoolean(S),
    Monotone,
}

impl<S: Scalar> Brand<S> {
    /// The cumulant-to-moment function of this family.
    pub fn kernel(&self, n_max: usize) -> Result<SemiMultFn<S>> {
        match self {
            Brand::Moments => incidence::unit_e(n_max),
            Brand::Free => incidence::g_fc_m(n_max),
            Brand::Boolean => incidence::g_bc_m(n_max),
            Brand::TBoolean(t) => incidence::g_bc_m_t(n_max, t.clone()),
            Brand::Monotone => incidence::g_mc_m(n_max),
        }
    }
}

pub fn cumulants_to_moments<S: Scalar>(c: &MomentSeq<S>, brand: &Brand<S>) -> Result<MomentSeq<S>> {
    act(c, &brand.kernel(c.len())?)
}

pub fn moments_to_cumulants<S: Scalar>(m: &MomentSeq<S>, brand: &Brand<S>) -> Result<MomentSeq<S>> {
    act(m, &brand.kernel(m.len())?.inverse())
}

/// `g_from ∗ g_to⁻¹`, the function converting one family into another.
pub fn transition_kernel<S: Scalar>(
    from: &Brand<S>,
    to: &Brand<S>,
    n_max: usize,
) -> Result<SemiMultFn<S>> {
    from.kernel(n_max)?.convolve(&to.kernel(n_max)?.inverse())
}

pub fn transition<S: Scalar>(
    c: &MomentSeq<S>,
    from: &Brand<S>,
    to: &Brand<S>,
) -> Result<MomentSeq<S>> {
    act(c, &transition_kernel(from, to, c.len())?)
}

/// Boolean cumulants from cumulants of another family, summing only over
/// irreducible partitions: `β_n = Σ_{π irreducible} c(π) m_π`.
pub fn boolean_from_brand<S: Scalar>(m: &MomentSeq<S>, coeffs: &SemiMultFn<S>) -> Result<MomentSeq<S>> {
    if !coeffs.is_c_to_m() {
        return domain("coefficients must be of cumulant-to-moment type");
    }
    check_degree(m.len(), coeffs)?;
    MomentSeq::new(shape_sums(&m.a, |n, i| {
        if lattice_uncapped(n).get(i as u32).is_irreducible() {
            coeffs.row(n)[i].clone()
        } else {
            S::zero()
        }
    }))
}

/// `Σ_{π ∈ NC(n)} x_π y_{Kr π}`; for free cumulants this is the free
/// cumulant sequence of the product.
pub fn free_multiply<S: Scalar>(kx: &MomentSeq<S>, ky: &MomentSeq<S>) -> Result<MomentSeq<S>> {
    MomentSeq::new(kreweras_sum(&kx.a, &ky.a)?)
}

fn kreweras_sum<S: Scalar>(x: &[S], y: &[S]) -> Result<Vec<S>> {
    if x.len() != y.len() {
        return domain("sequences have different lengths");
    }
    if !x.is_empty() {
        lattice(x.len())?;
    }
    let mut mx: HashMap<u32, S> = HashMap::new();
    let mut my: HashMap<u32, S> = HashMap::new();
    let mut out = Vec::with_capacity(x.len());
    for n in 1..=x.len() {
        let shapes = lattice_uncapped(n).shapes();
        let prod = |seq: &[S], k: u32| {
            crate::ring::product(shapes.shapes[k as usize].iter().map(|&s| &seq[s as usize - 1]))
        };
        mx.clear();
        my.clear();
        let mut acc = S::zero();
        for &((a, b), count) in &shapes.kr_pairs {
            let pa = mx.entry(a).or_insert_with(|| prod(x, a)).clone();
            let pb = my.entry(b).or_insert_with(|| prod(y, b)).clone();
            let term = pa.mul_ref(&pb);
            if !term.is_zero() {
                acc.add_assign_ref(&term.mul_ref(&S::from_int(count as i64)));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Pushes `t`-Boolean cumulants of free `x`, `y` through moments and free
/// cumulants to the `t`-Boolean cumulants of `xy`, and compares with the
/// Kreweras sum of the inputs.
pub fn t_boolean_multiply_check<S: Scalar>(
    bx: &MomentSeq<S>,
    by: &MomentSeq<S>,
    t: &S,
) -> Result<bool> {
    let (lhs, rhs) = t_boolean_multiply_sides(bx, by, t)?;
    Ok(lhs == rhs)
}

/// Both sides of the `t`-Boolean product formula.
pub fn t_boolean_multiply_sides<S: Scalar>(
    bx: &MomentSeq<S>,
    by: &MomentSeq<S>,
    t: &S,
) -> Result<(MomentSeq<S>, MomentSeq<S>)> {
    let n = bx.len();
    let tb = incidence::g_bc_m_t(n, t.clone())?;
    let tb_inv = tb.inverse();
    let free_inv = incidence::g_fc_m::<S>(n)?.inverse();
    let kx = act(&act(bx, &tb)?, &free_inv)?;
    let ky = act(&act(by, &tb)?, &free_inv)?;
    let mxy = act(&free_multiply(&kx, &ky)?, &incidence::g_fc_m(n)?)?;
    let lhs = act(&mxy, &tb_inv)?;
    Ok((lhs, free_multiply(bx, by)?))
}

/// With `f_t` the multiplicative function whose `λ` are the `t`-Boolean
/// cumulants of `y`, checks `u_q⁻¹ ∗ f_t ∗ u_q = f_{t−q}`.
pub fn u_conjugation_identity_check<S: Scalar>(t: &S, q: &S, y_betas: &MomentSeq<S>) -> Result<bool> {
    let n = y_betas.len();
    let f_t = MultFn::new(y_betas.a.clone())?;
    let conj = f_t.conjugate_by_u(q)?;
    let moments = act(y_betas, &incidence::g_bc_m_t(n, t.clone())?)?;
    let shifted = act(&moments, &incidence::g_bc_m_t(n, t.sub_ref(q))?.inverse())?;
    Ok(conj.to_semi()? == MultFn::new(shifted.a)?.to_semi()?)
}

/// `ρ_n(xy) − Σ_{π ∈ NC(n)} ρ_π(x) ρ_{Kr π}(y)` for free `x`, `y`, as a
/// polynomial in the monotone cumulants `rxk`, `ryk` (`k ≥ 2`, `ρ₁ = 1`).
pub fn monotone_discrepancy(n: usize) -> Result<MPoly> {
    if n < 2 {
        return domain(format!("n must be at least 2, got {n}"));
    }
    lattice(n)?;
    let rx = MomentSeq::symbolic("rx", n)?;
    let ry = MomentSeq::symbolic("ry", n)?;
    let mono = incidence::g_mc_m::<MPoly>(n)?;
    let free = incidence::g_fc_m::<MPoly>(n)?;
    let free_inv = free.inverse();
    let kx = act(&act(&rx, &mono)?, &free_inv)?;
    let ky = act(&act(&ry, &mono)?, &free_inv)?;
    let mxy = act(&free_multiply(&kx, &ky)?, &free)?;
    let rxy = act(&mxy, &mono.inverse())?;
    let naive = free_multiply(&rx, &ry)?;
    Ok(rxy.get(n).sub(naive.get(n)))
}

/// Compares `α̃_n` (irreducible sum) with the alternating sum over interval
/// partitions of products of `α̂` (full sum).
pub fn tilde_alpha_identity_check<S: Scalar>(alpha: &[S]) -> Result<bool> {
    let (lhs, rhs) = tilde_alpha_sides(alpha)?;
    Ok(lhs == rhs)
}

/// `(α̃, Σ_{ρ ∈ Int(n)} (−1)^{|ρ|+1} ∏_J α̂_{|J|})`.
pub fn tilde_alpha_sides<S: Scalar>(alpha: &[S]) -> Result<(Vec<S>, Vec<S>)> {
    if alpha.is_empty() {
        return domain("empty sequence");
    }
    lattice(alpha.len())?;
    let hat = shape_sums(alpha, |_, _| S::one());
    let tilde = shape_sums(alpha, |n, i| {
        if lattice_uncapped(n).get(i as u32).is_irreducible() {
            S::one()
        } else {
            S::zero()
        }
    });
    let mut rhs = Vec::with_capacity(alpha.len());
    for n in 1..=alpha.len() {
        let mut acc = S::zero();
        for cuts in 0u32..(1 << (n - 1)) {
            let mut prod = S::one();
            let mut start = 0;
            let mut parts = 0;
            for end in 1..=n {
                if end == n || cuts >> (end - 1) & 1 == 1 {
                    prod = prod.mul_ref(&hat[end - start - 1]);
                    start = end;
                    parts += 1;
                }
            }
            if parts % 2 == 0 {
                prod = prod.neg_ref();
            }
            acc.add_assign_ref(&prod);
        }
        rhs.push(acc);
    }
    Ok((tilde, rhs))
}
