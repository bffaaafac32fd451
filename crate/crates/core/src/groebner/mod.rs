//! Ideals of polynomial rings with cached reduced Gröbner bases, and the
//! ideal operations built on them.

pub(crate) mod engine;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
pub use crate::order::MonomialOrder;
use crate::poly::{Coeff, Monomial, Polynomial, RingSignature};
use engine::{Basis, ModuleOrder, Term, Vector};

/// Default bound on reduction steps for a single Gröbner computation.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

pub(crate) fn to_vector(p: &Polynomial, order: &ModuleOrder, pos: u32) -> Vector {
    let w = p.signature().weights();
    let mut v: Vector = p
        .terms()
        .iter()
        .map(|(m, c)| (Term::new(pos, m.clone(), w), c.clone()))
        .collect();
    order.sort(&mut v);
    v
}

pub(crate) fn from_vector(v: &[(Term, Coeff)], sig: &RingSignature) -> Polynomial {
    Polynomial::from_terms(sig, v.iter().map(|(t, c)| (t.mono.clone(), c.clone())))
}

/// Reduced Gröbner basis of `gens` under `order`, sorted ascending by
/// leading monomial. Every element is monic.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder, max_steps: u64) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let sig = first.signature().clone();
    let (_, polys) = compute_basis(&sig, gens, order, max_steps)?;
    Ok(polys)
}

fn compute_basis(sig: &RingSignature, gens: &[Polynomial], order: MonomialOrder, max_steps: u64) -> Result<(Basis, Vec<Polynomial>)> {
    let morder = ModuleOrder::for_ideal(order, sig.weights());
    let vectors = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_vector(g, &morder, 0))
        .collect();
    let basis = engine::groebner(&morder, Vec::new(), vectors, max_steps, true)?;
    let polys = basis.vectors().map(|v| from_vector(v, sig)).collect();
    Ok((basis, polys))
}

struct GbCache {
    basis: Basis,
    polys: Vec<Polynomial>,
}

struct IdealData {
    sig: RingSignature,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
    max_steps: u64,
    gb: OnceLock<GbCache>,
}

/// An ideal of `ℚ[x]` given by generators, with a lazily computed reduced
/// Gröbner basis. Cloning shares the cache.
#[derive(Clone)]
pub struct IdealHandle(Arc<IdealData>);

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ideal").field(&self.0.gens).finish()
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.0.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn fresh_name(sig: &RingSignature, base: &str) -> String {
    let mut name = base.to_string();
    while sig.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

impl IdealHandle {
    pub fn new(sig: &RingSignature, gens: Vec<Polynomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.signature() != sig) {
            return Err(Error::SignatureMismatch(format!("generator `{g}` lives in another ring")));
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self::from_parts(sig.clone(), gens, MonomialOrder::default(), DEFAULT_MAX_STEPS))
    }

    fn from_parts(sig: RingSignature, gens: Vec<Polynomial>, order: MonomialOrder, max_steps: u64) -> Self {
        IdealHandle(Arc::new(IdealData { sig, gens, order, max_steps, gb: OnceLock::new() }))
    }

    fn derive(&self, gens: Vec<Polynomial>) -> Self {
        Self::from_parts(self.0.sig.clone(), gens, self.0.order, self.0.max_steps)
    }

    pub fn zero(sig: &RingSignature) -> Self {
        Self::from_parts(sig.clone(), Vec::new(), MonomialOrder::default(), DEFAULT_MAX_STEPS)
    }

    pub fn unit(sig: &RingSignature) -> Self {
        Self::from_parts(sig.clone(), vec![Polynomial::one(sig)], MonomialOrder::default(), DEFAULT_MAX_STEPS)
    }

    /// The ideal generated by all variables.
    pub fn maximal(sig: &RingSignature) -> Self {
        let gens = (0..sig.nvars()).map(|i| Polynomial::var(sig, i)).collect();
        Self::from_parts(sig.clone(), gens, MonomialOrder::default(), DEFAULT_MAX_STEPS)
    }

    pub fn parse(sig: &RingSignature, texts: &[&str]) -> Result<Self> {
        let gens = texts.iter().map(|t| Polynomial::parse(t, sig)).collect::<Result<Vec<_>>>()?;
        Self::new(sig, gens)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::from_parts(self.0.sig.clone(), self.0.gens.clone(), order, self.0.max_steps)
    }

    pub fn with_max_steps(&self, max_steps: u64) -> Self {
        Self::from_parts(self.0.sig.clone(), self.0.gens.clone(), self.0.order, max_steps)
    }

    pub fn signature(&self) -> &RingSignature {
        &self.0.sig
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.0.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn max_steps(&self) -> u64 {
        self.0.max_steps
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.gens.iter().all(Polynomial::is_homogeneous)
    }

    fn cache(&self) -> Result<&GbCache> {
        if let Some(c) = self.0.gb.get() {
            return Ok(c);
        }
        let (basis, polys) = compute_basis(&self.0.sig, &self.0.gens, self.0.order, self.0.max_steps)?;
        // a concurrent fill writes the same canonical basis
        let _ = self.0.gb.set(GbCache { basis, polys });
        Ok(self.0.gb.get().expect("filled"))
    }

    /// Reduced Gröbner basis, ascending by leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        Ok(&self.cache()?.polys)
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.cache()?.basis.leading_terms().map(|t| t.mono.clone()).collect())
    }

    fn check_sig(&self, p: &Polynomial) -> Result<()> {
        if p.signature() != &self.0.sig {
            return Err(Error::SignatureMismatch(format!("`{p}` is not in the ideal's ring")));
        }
        Ok(())
    }

    fn check_same(&self, other: &IdealHandle) -> Result<()> {
        if other.signature() != &self.0.sig {
            return Err(Error::SignatureMismatch("ideals live in different rings".into()));
        }
        Ok(())
    }

    /// Remainder modulo the reduced Gröbner basis.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_sig(p)?;
        let cache = self.cache()?;
        let v = to_vector(p, &cache.basis.order, 0);
        let r = cache.basis.normal_form(v, self.0.max_steps)?;
        Ok(from_vector(&r, &self.0.sig))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        self.check_same(other)?;
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant()))
    }

    /// Literal equality of ideals: the reduced bases coincide.
    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        self.check_same(other)?;
        if self.0.order == other.0.order {
            Ok(self.groebner_basis()? == other.groebner_basis()?)
        } else {
            Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
        }
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same(other)?;
        let mut gens = self.0.gens.clone();
        gens.extend(other.0.gens.iter().cloned());
        Ok(self.derive(gens))
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.0.gens.len() * other.0.gens.len());
        for a in &self.0.gens {
            for b in &other.0.gens {
                gens.push(a * b);
            }
        }
        Ok(self.derive(gens))
    }

    /// Intersection via elimination of `t` from `t·I + (1 − t)·J`.
    pub fn intersection(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same(other)?;
        let sig = &self.0.sig;
        let t = fresh_name(sig, "t");
        let mut names = vec![t];
        names.extend(sig.names().iter().cloned());
        let mut weights = vec![1];
        weights.extend_from_slice(sig.weights());
        let big = RingSignature::new(names, weights)?;
        let shift: Vec<usize> = (1..=sig.nvars()).collect();
        let tv = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &tv;
        let mut gens = Vec::new();
        for f in &self.0.gens {
            gens.push(&tv * &f.rename_into(&big, &shift));
        }
        for g in &other.0.gens {
            gens.push(&one_minus_t * &g.rename_into(&big, &shift));
        }
        let ideal = Self::from_parts(big, gens, self.0.order, self.0.max_steps);
        let eliminated = ideal.eliminate(1)?;
        let gens = eliminated
            .generators()
            .iter()
            .map(|g| g.transport(sig))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.derive(gens))
    }

    /// Generators of `I ∩ ℚ[x_{k+1}, …, x_n]`, as an ideal of the ring on the
    /// remaining variables.
    pub fn eliminate(&self, k: usize) -> Result<IdealHandle> {
        let sig = &self.0.sig;
        if k > sig.nvars() {
            return Err(Error::InvalidInput(format!("cannot eliminate {k} of {} variables", sig.nvars())));
        }
        let (_, gb) = compute_basis(sig, &self.0.gens, MonomialOrder::BlockElimination(k), self.0.max_steps)?;
        let rest = RingSignature::new(sig.names()[k..].to_vec(), sig.weights()[k..].to_vec())?;
        let map: Vec<usize> = (0..sig.nvars()).map(|i| i.saturating_sub(k)).collect();
        let gens = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
            .map(|g| g.rename_into(&rest, &map))
            .collect();
        Ok(Self::from_parts(rest, gens, MonomialOrder::default(), self.0.max_steps))
    }

    /// Rabinowitsch: `p ∈ √I` iff `1 ∈ I + (1 − t·p)`.
    pub fn radical_contains(&self, p: &Polynomial) -> Result<bool> {
        self.check_sig(p)?;
        if self.contains(p)? {
            return Ok(true);
        }
        let sig = &self.0.sig;
        let t = fresh_name(sig, "t");
        let mut names = sig.names().to_vec();
        names.push(t);
        let mut weights = sig.weights().to_vec();
        weights.push(1);
        let big = RingSignature::new(names, weights)?;
        let embed: Vec<usize> = (0..sig.nvars()).collect();
        let mut gens: Vec<Polynomial> = self.0.gens.iter().map(|g| g.rename_into(&big, &embed)).collect();
        let tp = &Polynomial::var(&big, sig.nvars()) * &p.rename_into(&big, &embed);
        gens.push(&Polynomial::one(&big) - &tp);
        let ideal = Self::from_parts(big, gens, MonomialOrder::default(), self.0.max_steps);
        ideal.is_unit()
    }

    /// Every generator of each ideal lies in the radical of the other.
    pub fn radical_equals(&self, other: &IdealHandle) -> Result<bool> {
        self.check_same(other)?;
        for g in other.generators() {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        for g in self.generators() {
            if !other.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of `ℚ[x]/I`: the largest set of variables containing
    /// the support of no leading monomial.
    pub fn krull_dimension(&self) -> Result<usize> {
        let lms = self.leading_monomials()?;
        if lms.iter().any(Monomial::is_one) {
            return Err(Error::EmptySpectrum);
        }
        let supports: Vec<u64> = lms.iter().map(Monomial::support_mask).collect();
        let n = self.0.sig.nvars();
        Ok(n - min_hitting_set(&supports, 0, n as u32))
    }

    /// Maps generators into `target` by variable name.
    pub fn transport(&self, target: &RingSignature) -> Result<IdealHandle> {
        let gens = self
            .0
            .gens
            .iter()
            .map(|g| g.transport(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(target.clone(), gens, self.0.order, self.0.max_steps))
    }
}

/// Size of a smallest variable set meeting every support in `sets`.
fn min_hitting_set(sets: &[u64], chosen: u64, budget: u32) -> usize {
    let Some(&open) = sets.iter().find(|&&s| s & chosen == 0) else {
        return chosen.count_ones() as usize;
    };
    if chosen.count_ones() >= budget {
        return budget as usize;
    }
    let mut best = budget;
    let mut bits = open;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits &= bits - 1;
        let r = min_hitting_set(sets, chosen | b, best) as u32;
        best = best.min(r);
    }
    best as usize
}

/// Sorts by weighted degree (stable) and drops every polynomial lying in the
/// ideal generated by `base` and the ones kept before it.
pub fn minimalize_homogeneous(gens: &[Polynomial], base: Option<&IdealHandle>) -> Result<Vec<Polynomial>> {
    let Some(sig) = gens.first().map(|g| g.signature().clone()).or_else(|| base.map(|b| b.signature().clone())) else {
        return Ok(Vec::new());
    };
    let max_steps = base.map_or(DEFAULT_MAX_STEPS, |b| b.max_steps());
    let mut sorted: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.max_weighted_degree());
    let mut seed: Vec<Polynomial> = base.map(|b| b.generators().to_vec()).unwrap_or_default();
    let mut current = IdealHandle::from_parts(sig.clone(), seed.clone(), MonomialOrder::default(), max_steps);
    let mut kept = Vec::new();
    for g in sorted {
        if current.contains(g)? {
            continue;
        }
        kept.push(g.clone());
        seed.push(g.clone());
        current = IdealHandle::from_parts(sig.clone(), seed.clone(), MonomialOrder::default(), max_steps);
    }
    Ok(kept)
}
