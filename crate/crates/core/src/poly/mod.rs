//! Exact weighted-graded multivariate polynomials over ℚ.

mod monomial;
mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use monomial::Monomial;
pub use parse::parse_polynomial;

use crate::error::{Error, Result};
use crate::order::MonomialOrder;

pub type Coeff = BigRational;

pub fn rational(numer: i64, denom: i64) -> Coeff {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(value))
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct SignatureData {
    names: Vec<String>,
    weights: Vec<u32>,
}

/// Ordered variable names with positive integer weights.
#[derive(Clone, Debug, Eq)]
pub struct RingSignature(Arc<SignatureData>);

impl std::hash::Hash for RingSignature {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialEq for RingSignature {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingSignature {
    pub fn new<S: Into<String>>(names: Vec<S>, weights: Vec<u32>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != weights.len() {
            return Err(Error::InvalidSignature(format!(
                "{} names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if names.len() > 64 {
            return Err(Error::InvalidSignature("at most 64 variables are supported".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_identifier(name) {
                return Err(Error::InvalidSignature(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidSignature(format!("duplicate variable `{name}`")));
            }
        }
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidSignature(format!(
                "weight of `{}` must be positive",
                names[pos]
            )));
        }
        Ok(RingSignature(Arc::new(SignatureData { names, weights })))
    }

    /// All weights equal to 1.
    pub fn standard(names: &[&str]) -> Result<Self> {
        Self::new(names.to_vec(), vec![1; names.len()])
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.0.weights[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.0.weights.iter().all(|&w| w == 1)
    }

    pub(crate) fn default_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        MonomialOrder::WeightedGrevlex.compare(a, b, self.weights())
    }
}

/// A polynomial with rational coefficients. Terms are kept sorted in
/// descending weighted-grevlex order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    sig: RingSignature,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(sig: &RingSignature) -> Self {
        Polynomial { sig: sig.clone(), terms: Vec::new() }
    }

    pub fn constant(sig: &RingSignature, c: Coeff) -> Self {
        let mut p = Self::zero(sig);
        if !c.is_zero() {
            p.terms.push((Monomial::one(sig.nvars()), c));
        }
        p
    }

    pub fn one(sig: &RingSignature) -> Self {
        Self::constant(sig, Coeff::one())
    }

    pub fn var(sig: &RingSignature, index: usize) -> Self {
        Self::monomial(sig, Monomial::var(sig.nvars(), index), Coeff::one())
    }

    pub fn monomial(sig: &RingSignature, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.nvars(), sig.nvars(), "monomial arity");
        let mut p = Self::zero(sig);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(sig: &RingSignature, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), sig.nvars(), "monomial arity");
            *acc.entry(m).or_insert_with(Coeff::zero) += c;
        }
        let mut terms: Vec<(Monomial, Coeff)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| sig.default_cmp(&b.0, &a.0));
        Polynomial { sig: sig.clone(), terms }
    }

    pub fn parse(text: &str, sig: &RingSignature) -> Result<Self> {
        parse_polynomial(text, sig)
    }

    pub fn signature(&self) -> &RingSignature {
        &self.sig
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
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

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the monomial 1.
    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    /// Leading term in weighted grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_term_in(&self, order: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        let w = self.sig.weights();
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0, w))
            .map(|(m, c)| (m, c))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        Polynomial {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; the zero polynomial is unchanged.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // multiplication by a monomial preserves the order of terms
        Polynomial {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.sig);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, index: usize) -> Self {
        assert!(index < self.sig.nvars(), "variable index out of range");
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.set_exponent(index, e - 1);
            terms.push((d, c * BigInt::from(e)));
        }
        // lowering one exponent can reorder terms under weighted grevlex
        terms.sort_by(|a, b| self.sig.default_cmp(&b.0, &a.0));
        Polynomial { sig: self.sig.clone(), terms }
    }

    /// Weighted degree if every term has the same one; `Ok(None)` when not
    /// homogeneous.
    pub fn weighted_degree(&self) -> Result<Option<u64>> {
        let w = self.sig.weights();
        let mut iter = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        let first = iter.next().ok_or(Error::ZeroPolynomial)?;
        if iter.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Ok(None)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.weighted_degree(), Ok(None))
    }

    /// Largest weighted degree of a term (0 for the zero polynomial).
    pub fn max_weighted_degree(&self) -> u64 {
        let w = self.sig.weights();
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).max().unwrap_or(0)
    }

    /// Sends variable `i` to variable `map[i]` of `target`.
    pub fn rename_into(&self, target: &RingSignature, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.sig.nvars());
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Self::from_terms(target, terms)
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn transport(&self, target: &RingSignature) -> Result<Self> {
        let map = self
            .sig
            .names()
            .iter()
            .map(|name| {
                target.index_of(name).ok_or_else(|| {
                    Error::SignatureMismatch(format!("variable `{name}` missing from target ring"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.rename_into(target, &map))
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.sig.nvars());
        let target = images
            .first()
            .map(|p| p.sig.clone())
            .unwrap_or_else(|| self.sig.clone());
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        assert_eq!(self.sig, other.sig, "polynomials from different rings");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.sig.default_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { sig: self.sig.clone(), terms: out }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.sig, rhs.sig, "polynomials from different rings");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.sig);
        }
        if rhs.terms.len() == 1 && rhs.terms[0].1.is_one() {
            return self.mul_monomial(&rhs.terms[0].0);
        }
        let products = self.terms.iter().flat_map(|(ma, ca)| {
            rhs.terms.iter().map(move |(mb, cb)| (ma.mul(mb), ca * cb))
        });
        Polynomial::from_terms(&self.sig, products)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl std::ops::$tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Coeff) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write_coeff(f, &abs)?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.sig.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
