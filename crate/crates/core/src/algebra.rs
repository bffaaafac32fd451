//! Weighted-graded quotient rings `ℚ[x; w] / I` with homogeneous `I`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::poly::{Polynomial, RingSignature};

/// Status of a ring-theoretic hypothesis that the library never verifies on
/// its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Assumption {
    #[default]
    Unknown,
    /// Stated by the user.
    Asserted,
    /// Follows from how the ring was constructed.
    Derived,
    /// Known to fail from how the ring was constructed.
    Refuted,
}

impl Assumption {
    pub fn holds(self) -> bool {
        matches!(self, Assumption::Asserted | Assumption::Derived)
    }

    pub fn from_bool(asserted: bool) -> Self {
        if asserted {
            Assumption::Asserted
        } else {
            Assumption::Unknown
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Assumption::Unknown => "unknown",
            Assumption::Asserted => "asserted",
            Assumption::Derived => "derived",
            Assumption::Refuted => "refuted",
        }
    }

    /// Both parts hold; derived only if neither part is merely asserted.
    pub fn and(self, other: Assumption) -> Assumption {
        use Assumption::*;
        match (self, other) {
            (Refuted, _) | (_, Refuted) => Refuted,
            (Derived, Derived) => Derived,
            (a, b) if a.holds() && b.holds() => Asserted,
            _ => Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub reduced: Assumption,
    pub equidimensional: Assumption,
}

impl Flags {
    pub fn asserted(reduced: bool, equidimensional: bool) -> Self {
        Flags {
            reduced: Assumption::from_bool(reduced),
            equidimensional: Assumption::from_bool(equidimensional),
        }
    }
}

/// A presented ring `S = ℚ[x; w]/I`. Cloning is cheap and shares cached
/// Gröbner data.
#[derive(Clone)]
pub struct GradedAlgebra {
    sig: RingSignature,
    ideal: IdealHandle,
    flags: Flags,
    dimension: Arc<OnceLock<usize>>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra({self})")
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.sig.names().join(","))?;
        if !self.ideal.generators().is_empty() {
            write!(f, "/{}", self.ideal)?;
        }
        Ok(())
    }
}

impl GradedAlgebra {
    /// Rejects generators that are not weighted-homogeneous.
    pub fn new(sig: &RingSignature, gens: Vec<Polynomial>, flags: Flags) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        let ideal = IdealHandle::new(sig, gens)?;
        Ok(Self::from_ideal(ideal, flags))
    }

    pub(crate) fn from_ideal(ideal: IdealHandle, flags: Flags) -> Self {
        GradedAlgebra {
            sig: ideal.signature().clone(),
            ideal,
            flags,
            dimension: Arc::new(OnceLock::new()),
        }
    }

    /// The polynomial ring itself; reduced and equidimensional by construction.
    pub fn polynomial_ring(sig: &RingSignature) -> Self {
        let flags = Flags { reduced: Assumption::Derived, equidimensional: Assumption::Derived };
        Self::from_ideal(IdealHandle::zero(sig), flags)
    }

    pub fn parse(sig: &RingSignature, gens: &[&str], flags: Flags) -> Result<Self> {
        let gens = gens.iter().map(|g| Polynomial::parse(g, sig)).collect::<Result<Vec<_>>>()?;
        Self::new(sig, gens, flags)
    }

    pub fn signature(&self) -> &RingSignature {
        &self.sig
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn nvars(&self) -> usize {
        self.sig.nvars()
    }

    pub fn with_flags(&self, flags: Flags) -> Self {
        GradedAlgebra { flags, ..self.clone() }
    }

    pub fn with_max_steps(&self, max_steps: u64) -> Self {
        Self::from_ideal(self.ideal.with_max_steps(max_steps), self.flags)
    }

    pub fn max_steps(&self) -> u64 {
        self.ideal.max_steps()
    }

    pub fn is_polynomial_ring(&self) -> Result<bool> {
        Ok(self.ideal.groebner_basis()?.is_empty())
    }

    /// Krull dimension from the leading terms of the defining ideal.
    pub fn dimension(&self) -> Result<usize> {
        if let Some(&d) = self.dimension.get() {
            return Ok(d);
        }
        let d = self.ideal.krull_dimension()?;
        let _ = self.dimension.set(d);
        Ok(d)
    }

    /// The ideal of `S` generated by `gens`, stored as `(gens) + I`.
    pub fn lift(&self, gens: Vec<Polynomial>) -> Result<IdealHandle> {
        let mut all = gens;
        all.extend(self.ideal.generators().iter().cloned());
        Ok(IdealHandle::new(&self.sig, all)?.with_max_steps(self.max_steps()))
    }

    pub fn zero_ideal(&self) -> IdealHandle {
        self.ideal.clone()
    }

    pub fn unit_ideal(&self) -> IdealHandle {
        self.lift(vec![Polynomial::one(&self.sig)]).expect("same ring")
    }

    /// `m_S`, generated by the variables.
    pub fn maximal_ideal(&self) -> IdealHandle {
        let vars = (0..self.nvars()).map(|i| Polynomial::var(&self.sig, i)).collect();
        self.lift(vars).expect("same ring")
    }

    /// Residue of `p` modulo the defining ideal.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.ideal.normal_form(p)
    }

    /// True when `J` (a lifted ideal of `S`) contains every variable.
    pub fn contains_maximal(&self, j: &IdealHandle) -> Result<bool> {
        for i in 0..self.nvars() {
            if !j.contains(&Polynomial::var(&self.sig, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
