//! Trace ideals of the exterior powers `Ω^i` of the Kähler differentials of
//! a graded algebra, and the invariants read off from them.

use crate::error::{Error, Result};
use crate::groebner::{minimalize_homogeneous, IdealHandle};
use crate::modsyz::{exterior_power_presentation, fitting_ideal, syzygies, trace_ideal, ModulePresentation, PolyMatrix};
use crate::poly::{Coeff, Polynomial};

pub use crate::algebra::{Assumption, Flags, GradedAlgebra};

/// `S^r → S^n → Ω → 0`, column `j` the gradient of the `j`-th generator.
pub fn kaehler_presentation(s: &GradedAlgebra) -> ModulePresentation {
    let sig = s.signature();
    let n = s.nvars();
    let columns: Vec<Vec<Polynomial>> = s
        .ideal()
        .generators()
        .iter()
        .map(|f| (0..n).map(|i| f.partial_derivative(i)).collect())
        .collect();
    let relations = PolyMatrix::from_columns(sig, n, &columns).expect("gradients have length n");
    ModulePresentation::new(s, relations).expect("same ring")
}

/// The Jacobian `∂f_j/∂x_i`, one row per generator.
pub fn jacobian(s: &GradedAlgebra) -> PolyMatrix {
    kaehler_presentation(s).relations().transpose()
}

/// `tr_S(Ω^i)`, stored as a lift containing `I`.
pub fn diff_trace(s: &GradedAlgebra, i: usize) -> Result<IdealHandle> {
    if i == 0 {
        return Ok(s.unit_ideal());
    }
    trace_ideal(&exterior_power_presentation(&kaehler_presentation(s), i))
}

/// `m_S ⊆ tr(Ω^{dim S})`.
pub fn is_nearly_regular(s: &GradedAlgebra) -> Result<bool> {
    let d = s.dimension()?;
    s.contains_maximal(&diff_trace(s, d)?)
}

fn require_reduced(s: &GradedAlgebra) -> Result<()> {
    if !s.flags().reduced.holds() {
        return Err(Error::AssumptionViolation("the ring is not known to be reduced".into()));
    }
    Ok(())
}

fn require_reduced_equidimensional(s: &GradedAlgebra) -> Result<()> {
    require_reduced(s)?;
    if !s.flags().equidimensional.holds() {
        return Err(Error::AssumptionViolation("the ring is not known to be equidimensional".into()));
    }
    Ok(())
}

/// `1 ∈ tr(Ω^{dim S})`; needs the reduced flag.
pub fn is_regular_via_trace(s: &GradedAlgebra) -> Result<bool> {
    require_reduced(s)?;
    diff_trace(s, s.dimension()?)?.is_unit()
}

/// Largest `j ≤ dim S` with `tr(Ω^j) = S`.
pub fn polynomial_rank(s: &GradedAlgebra) -> Result<usize> {
    for j in (1..=s.dimension()?).rev() {
        if diff_trace(s, j)?.is_unit()? {
            return Ok(j);
        }
    }
    Ok(0)
}

pub fn singular_locus_trace(s: &GradedAlgebra) -> Result<IdealHandle> {
    diff_trace(s, s.dimension()?)
}

/// `I + I_c(Jacobian)` with `c = n − dim S`.
pub fn singular_locus_jacobian(s: &GradedAlgebra) -> Result<IdealHandle> {
    let c = s.nvars() - s.dimension()?;
    let minors = fitting_ideal(&jacobian(s), c);
    s.lift(minors.generators().to_vec())
}

pub fn radical_equal(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    a.radical_equals(b)
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub trace: IdealHandle,
    pub jacobian: IdealHandle,
    pub radicals_agree: bool,
}

/// Compares both descriptions of the singular locus. Under the reduced and
/// equidimensional hypotheses the radicals must agree, so a disagreement
/// means the asserted flags are wrong and the comparison is refused.
pub fn singular_locus_cross_check(s: &GradedAlgebra) -> Result<SingularLocus> {
    require_reduced_equidimensional(s)?;
    let trace = singular_locus_trace(s)?;
    let jacobian = singular_locus_jacobian(s)?;
    if !radical_equal(&trace, &jacobian)? {
        return Err(Error::AssumptionViolation(format!(
            "V(tr) = V{} differs from the Jacobian locus V{}; the ring cannot be both reduced and equidimensional",
            trace, jacobian
        )));
    }
    Ok(SingularLocus { trace, jacobian, radicals_agree: true })
}

/// Every variable lies in the radical of `tr(Ω^{dim S})`.
pub fn is_isolated_singularity(s: &GradedAlgebra) -> Result<bool> {
    require_reduced_equidimensional(s)?;
    let t = singular_locus_trace(s)?;
    for i in 0..s.nvars() {
        if !t.radical_contains(&Polynomial::var(s.signature(), i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A derivation `D` with `D(x_i) = v_i` and an element `t` with `D(t) = 1`.
#[derive(Clone, Debug)]
pub struct SliceWitness {
    pub hom_coefficients: Vec<Polynomial>,
    pub slot: usize,
    pub slice: Polynomial,
}

impl SliceWitness {
    pub fn derivation_images(&self) -> &[Polynomial] {
        &self.hom_coefficients
    }

    /// `D(f) = Σ v_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(f.signature());
        for (i, v) in self.hom_coefficients.iter().enumerate() {
            let d = f.partial_derivative(i);
            if !d.is_zero() && !v.is_zero() {
                acc = &acc + &(v * &d);
            }
        }
        acc
    }
}

/// A homogeneous derivation with a slice, when `tr(Ω) = S`.
pub fn derivation_slice_witness(s: &GradedAlgebra) -> Result<Option<SliceWitness>> {
    let sig = s.signature();
    let a = kaehler_presentation(s).relations().transpose();
    let kernel = syzygies(&a, s)?;
    let mut candidates: Vec<(usize, &Vec<Polynomial>)> = kernel
        .vectors
        .iter()
        .filter_map(|v| v.iter().position(|e| !e.is_zero() && e.is_constant()).map(|slot| (slot, v)))
        .collect();
    candidates.sort_by_key(|&(slot, _)| slot);
    for (slot, v) in candidates {
        let c: Coeff = v[slot].constant_term();
        let slice = Polynomial::var(sig, slot).scale(&c.recip());
        let w = SliceWitness { hom_coefficients: v.clone(), slot, slice };
        let check = &w.apply(&w.slice) - &Polynomial::one(sig);
        if s.reduce(&check)?.is_zero() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Minimal homogeneous generators of the image of `j` in `S`, monic and in
/// canonical string order.
pub fn report_generators(s: &GradedAlgebra, j: &IdealHandle) -> Result<Vec<Polynomial>> {
    if j.is_unit()? {
        return Ok(vec![Polynomial::one(s.signature())]);
    }
    let mut residues = Vec::new();
    for g in j.groebner_basis()?.iter().rev() {
        let r = s.reduce(g)?;
        if !r.is_zero() {
            residues.push(r);
        }
    }
    let mut kept: Vec<Polynomial> = minimalize_homogeneous(&residues, Some(s.ideal()))?
        .into_iter()
        .map(|p| p.monic())
        .collect();
    kept.sort_by_key(|p| p.to_string());
    Ok(kept)
}

/// Everything `classify` reports about a ring.
#[derive(Clone, Debug)]
pub struct DiffTraceReport {
    pub dimension: usize,
    /// `tr(Ω^i)` for `0 ≤ i ≤ dim S + 1`.
    pub traces: Vec<IdealHandle>,
    pub nearly_regular: bool,
    /// Only decided when the ring is known to be reduced.
    pub regular: Option<bool>,
    pub polynomial_rank: usize,
    pub singular_locus_trace: IdealHandle,
    pub singular_locus_jacobian: Option<IdealHandle>,
    pub radicals_agree: Option<bool>,
}

pub fn classify(s: &GradedAlgebra) -> Result<DiffTraceReport> {
    let d = s.dimension()?;
    let traces = (0..=d + 1).map(|i| diff_trace(s, i)).collect::<Result<Vec<_>>>()?;
    let nearly_regular = s.contains_maximal(&traces[d])?;
    let top_is_unit = traces[d].is_unit()?;
    let regular = s.flags().reduced.holds().then_some(top_is_unit);
    let mut polynomial_rank = 0;
    for j in (1..=d).rev() {
        if traces[j].is_unit()? {
            polynomial_rank = j;
            break;
        }
    }
    let (singular_locus_jacobian, radicals_agree) = if s.flags().reduced.holds() && s.flags().equidimensional.holds() {
        let jac = singular_locus_jacobian(s)?;
        let agree = radical_equal(&traces[d], &jac)?;
        (Some(jac), Some(agree))
    } else {
        (None, None)
    };
    Ok(DiffTraceReport {
        dimension: d,
        singular_locus_trace: traces[d].clone(),
        traces,
        nearly_regular,
        regular,
        polynomial_rank,
        singular_locus_jacobian,
        radicals_agree,
    })
}
