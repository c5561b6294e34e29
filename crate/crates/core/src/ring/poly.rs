//! Sparse commutative polynomials with rational coefficients over an
//! arbitrary ordered set of generators, plus their k-fold tensor powers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Signed, Zero};

use super::Rational;

/// A polynomial generator (variable, partition label, `Y_k`, ...).
pub trait Generator: Clone + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    /// Degree contributed by one occurrence of the generator.
    fn weight(&self) -> u32 {
        1
    }
    /// Text used when printing monomials.
    fn label(&self) -> String;
}

/// A monomial: generators with positive exponents, sorted by generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V> {
    degree: u32,
    factors: Vec<(V, u32)>,
}

impl<V: Generator> Monomial<V> {
    pub fn one() -> Self {
        Monomial {
            degree: 0,
            factors: Vec::new(),
        }
    }

    pub fn var(v: V) -> Self {
        Self::from_factors(vec![(v, 1)])
    }

    /// Builds a monomial from unsorted factors; repeated generators merge.
    pub fn from_factors(mut factors: Vec<(V, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(V, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|(v, e)| v.weight() * e).sum();
        Monomial {
            degree,
            factors: merged,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Weighted degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    /// Number of generator occurrences, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Generators with multiplicity, in order.
    pub fn expanded(&self) -> Vec<V> {
        let mut out = Vec::with_capacity(self.len());
        for (v, e) in &self.factors {
            for _ in 0..*e {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors: out,
        }
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }
}

impl<V: Generator> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl<V: Generator> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Generator> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", v.label())?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<V: Generator> {
    terms: BTreeMap<Monomial<V>, Rational>,
}

impl<V: Generator> Default for Poly<V> {
    fn default() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
}

impl<V: Generator> Poly<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn var(v: V) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial<V>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Monomial<V>, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in items {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial<V>, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Projection onto the homogeneous component of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Whether every monomial has the given degree.
    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    /// Generators occurring in the polynomial.
    pub fn generators(&self) -> Vec<V> {
        let mut out: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Applies the algebra homomorphism sending each generator to `image(v)`.
    pub fn substitute<W: Generator>(&self, mut image: impl FnMut(&V) -> Poly<W>) -> Poly<W> {
        let mut cache: HashMap<V, Poly<W>> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let img = cache.entry(v.clone()).or_insert_with(|| image(v)).clone();
                t = t.mul(&img.pow(*e));
                if t.is_zero() {
                    break;
                }
            }
            out.add_assign(&t);
        }
        out
    }

    /// Evaluates the polynomial in a commutative scalar ring.
    pub fn evaluate<S: super::Scalar>(&self, mut image: impl FnMut(&V) -> S) -> S {
        let mut cache: HashMap<V, S> = HashMap::new();
        let mut out = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(c);
            for (v, e) in m.factors() {
                let img = cache.entry(v.clone()).or_insert_with(|| image(v));
                t = t.mul_ref(&img.pow(*e));
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Applies `f` to every monomial, keeping coefficients.
    pub fn map_monomials<W: Generator>(&self, mut f: impl FnMut(&Monomial<V>) -> Monomial<W>) -> Poly<W> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }
}

impl<V: Generator> fmt::Display for Poly<V> {
    /// Terms from highest to lowest in graded-lex order, e.g.
    /// `-19/12*l2^2*m3 + q - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// An element of a k-fold tensor power of a polynomial algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<V: Generator> {
    arity: usize,
    terms: BTreeMap<Vec<Monomial<V>>, Rational>,
}

impl<V: Generator> Tensor<V> {
    pub fn zero(arity: usize) -> Self {
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial<V>>, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Vec<Monomial<V>>, c: &Rational) {
        assert_eq!(key.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
    }

    /// `a ⊗ b ⊗ ...` of plain polynomials.
    pub fn from_factors(parts: &[Poly<V>]) -> Self {
        let mut acc: Vec<(Vec<Monomial<V>>, Rational)> = vec![(Vec::new(), Rational::one())];
        for p in parts {
            let mut next = Vec::with_capacity(acc.len() * p.len());
            for (key, c) in &acc {
                for (m, d) in p.terms() {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, c * d));
                }
            }
            acc = next;
        }
        let mut out = Tensor::zero(parts.len());
        for (k, c) in acc {
            out.add_term(k, &c);
        }
        out
    }

    /// Factorwise product in the tensor algebra.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        let mut out = Tensor::zero(self.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = ka.iter().zip(kb).map(|(a, b)| a.mul(b)).collect();
                out.add_term(key, &(ca * cb));
            }
        }
        out
    }

    pub fn one(arity: usize) -> Self {
        let mut out = Tensor::zero(arity);
        out.add_term(vec![Monomial::one(); arity], &Rational::one());
        out
    }

    /// Replaces tensor slot `slot` of every term by the image tensor of its
    /// monomial under `f` (a map into `k`-fold tensors); arity grows by `k - 1`.
    pub fn expand_slot(&self, slot: usize, mut f: impl FnMut(&Monomial<V>) -> Tensor<V>) -> Self {
        let mut cache: HashMap<Monomial<V>, Tensor<V>> = HashMap::new();
        let mut out: Option<Tensor<V>> = None;
        for (key, c) in &self.terms {
            let img = cache.entry(key[slot].clone()).or_insert_with(|| f(&key[slot]));
            let acc = out.get_or_insert_with(|| Tensor::zero(self.arity + img.arity - 1));
            for (ik, ic) in &img.terms {
                let mut k = Vec::with_capacity(acc.arity);
                k.extend_from_slice(&key[..slot]);
                k.extend(ik.iter().cloned());
                k.extend_from_slice(&key[slot + 1..]);
                acc.add_term(k, &(c * ic));
            }
        }
        out.unwrap_or_else(|| Tensor::zero(self.arity + 1))
    }

    /// Applies a monomial map in every slot (used for morphisms between algebras).
    pub fn map<W: Generator>(&self, mut f: impl FnMut(usize, &Monomial<V>) -> Poly<W>) -> Tensor<W> {
        let mut out = Tensor::zero(self.arity);
        for (key, c) in &self.terms {
            let parts: Vec<Poly<W>> = key.iter().enumerate().map(|(i, m)| f(i, m)).collect();
            let mut t = Tensor::from_factors(&parts);
            t = t.scale(c);
            out.add_assign(&t);
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Tensor::zero(self.arity);
        for (key, c) in &self.terms {
            out.add_term(key.clone(), &(c * k));
        }
        out
    }
}

impl<V: Generator> fmt::Display for Tensor<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let body: Vec<String> = key.iter().map(|m| m.to_string()).collect();
            write!(f, "{c}*({})", body.join(" ⊗ "))?;
        }
        Ok(())
    }
}
