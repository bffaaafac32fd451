//! Tensor products and fiber products over ℚ, Veronese subrings, and the
//! closed-form trace predictions for products.

use crate::algebra::{Assumption, Flags, GradedAlgebra};
use crate::difftrace::diff_trace;
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::poly::{Monomial, Polynomial, RingSignature};

/// The disjoint union of two variable sets: colliding names get the factor
/// index as a suffix.
#[derive(Clone, Debug)]
pub struct Combined {
    pub signature: RingSignature,
    /// Position of each variable of the first factor in `signature`.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn combine(a: &RingSignature, b: &RingSignature) -> Result<Combined> {
    let clash = |name: &str, other: &RingSignature| other.index_of(name).is_some();
    let mut names: Vec<String> = Vec::new();
    for n in a.names() {
        names.push(if clash(n, b) { format!("{n}_1") } else { n.clone() });
    }
    for n in b.names() {
        names.push(if clash(n, a) { format!("{n}_2") } else { n.clone() });
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
        return Err(Error::NameCollision(format!("renamed variable `{dup}` still collides")));
    }
    let mut weights = a.weights().to_vec();
    weights.extend_from_slice(b.weights());
    let signature = RingSignature::new(names, weights)?;
    let left = (0..a.nvars()).collect();
    let right = (a.nvars()..a.nvars() + b.nvars()).collect();
    Ok(Combined { signature, left, right })
}

fn embed(gens: &[Polynomial], target: &RingSignature, map: &[usize]) -> Vec<Polynomial> {
    gens.iter().map(|g| g.rename_into(target, map)).collect()
}

fn assemble(a: &GradedAlgebra, b: &GradedAlgebra, c: &Combined, extra: Vec<Polynomial>, flags: Flags) -> Result<GradedAlgebra> {
    let mut gens = embed(a.ideal().generators(), &c.signature, &c.left);
    gens.extend(embed(b.ideal().generators(), &c.signature, &c.right));
    gens.extend(extra);
    let r = GradedAlgebra::new(&c.signature, gens, flags)?;
    Ok(r.with_max_steps(a.max_steps().min(b.max_steps())))
}

/// `A ⊗_ℚ B = ℚ[x, y] / (I_A + I_B)`.
pub fn tensor_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    let c = combine(a.signature(), b.signature())?;
    // over a perfect field both properties pass to the tensor product
    let flags = Flags {
        reduced: a.flags().reduced.and(b.flags().reduced),
        equidimensional: a.flags().equidimensional.and(b.flags().equidimensional),
    };
    assemble(a, b, &c, Vec::new(), flags)
}

/// `A ×_ℚ B = ℚ[x, y] / (I_A + I_B + (x_i y_j))`.
pub fn fiber_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    let c = combine(a.signature(), b.signature())?;
    let sig = &c.signature;
    let mut mixed = Vec::with_capacity(c.left.len() * c.right.len());
    for &i in &c.left {
        for &j in &c.right {
            mixed.push(&Polynomial::var(sig, i) * &Polynomial::var(sig, j));
        }
    }
    // the components of the fiber product are those of A and of B
    let both = a.flags().equidimensional.and(b.flags().equidimensional);
    let equidimensional = if both.holds() && a.dimension()? != b.dimension()? { Assumption::Refuted } else { both };
    let flags = Flags { reduced: a.flags().reduced.and(b.flags().reduced), equidimensional };
    assemble(a, b, &c, mixed, flags)
}

/// `I^†`: `I` when proper, `m_S` when `I = S`.
pub fn dagger(s: &GradedAlgebra, i: &IdealHandle) -> Result<IdealHandle> {
    if i.is_unit()? {
        Ok(s.maximal_ideal())
    } else {
        Ok(i.clone())
    }
}

fn require_theorem_hypotheses(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<(usize, usize)> {
    for (name, s) in [("first", a), ("second", b)] {
        let f = s.flags();
        if !f.reduced.holds() || !f.equidimensional.holds() {
            return Err(Error::AssumptionViolation(format!(
                "the {name} factor is not known to be reduced and equidimensional"
            )));
        }
    }
    let (da, db) = (a.dimension()?, b.dimension()?);
    if da == 0 || db == 0 {
        return Err(Error::AssumptionViolation("both factors need positive dimension".into()));
    }
    Ok((da, db))
}

/// An ideal of a factor, extended to the combined ring `r`.
fn extend(j: &IdealHandle, r: &GradedAlgebra, map: &[usize]) -> Result<IdealHandle> {
    r.lift(embed(j.generators(), r.signature(), map))
}

#[derive(Clone, Debug)]
pub struct TensorPrediction {
    /// `tr_A(Ω^{dim A})R · tr_B(Ω^{dim B})R`.
    pub product: IdealHandle,
    pub intersection: IdealHandle,
    pub product_equals_intersection: bool,
}

/// The predicted `tr_R(Ω^{dim A + dim B})` for `R = A ⊗ B`.
pub fn predicted_tensor_trace(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<TensorPrediction> {
    let (da, db) = require_theorem_hypotheses(a, b)?;
    let r = tensor_product(a, b)?;
    let c = combine(a.signature(), b.signature())?;
    let ta = extend(&diff_trace(a, da)?, &r, &c.left)?;
    let tb = extend(&diff_trace(b, db)?, &r, &c.right)?;
    let product = ta.product(&tb)?.sum(r.ideal())?;
    let intersection = ta.intersection(&tb)?;
    let product_equals_intersection = product.equals(&intersection)?;
    Ok(TensorPrediction { product, intersection, product_equals_intersection })
}

/// The predicted `tr_R(Ω^d)` for `R = A ×_ℚ B` and `d = max(dim A, dim B)`.
pub fn predicted_fiber_trace(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<IdealHandle> {
    let (da, db) = require_theorem_hypotheses(a, b)?;
    let d = da.max(db);
    let r = fiber_product(a, b)?;
    let c = combine(a.signature(), b.signature())?;
    let ia = dagger(a, &diff_trace(a, d)?)?;
    let ib = dagger(b, &diff_trace(b, d)?)?;
    extend(&ia, &r, &c.left)?.sum(&extend(&ib, &r, &c.right)?)
}

/// Degree-`c` monomials in `n` variables, lexicographically descending.
pub fn monomials_of_degree(n: usize, c: u32) -> Vec<Monomial> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(0, c, &mut vec![0; n], &mut out);
    }
    out
}

/// The `c`-th Veronese subring of a standard graded polynomial ring, on new
/// variables `z0, z1, …` of weight 1, one per degree-`c` monomial.
pub fn veronese(ring: &GradedAlgebra, c: u32) -> Result<GradedAlgebra> {
    if c == 0 {
        return Err(Error::InvalidInput("the Veronese degree must be positive".into()));
    }
    if !ring.signature().is_standard_graded() || !ring.is_polynomial_ring()? {
        return Err(Error::InvalidInput("the Veronese needs a standard graded polynomial ring".into()));
    }
    let n = ring.nvars();
    let monos = monomials_of_degree(n, c);
    let k = monos.len();
    let mut names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    names.extend((0..k).map(|j| format!("z{j}")));
    let mut weights = vec![1; n];
    weights.extend(std::iter::repeat_n(c, k));
    let big = RingSignature::new(names, weights)?;
    let gens = monos
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let mut e = m.exponents().to_vec();
            e.extend(std::iter::repeat_n(0, k));
            &Polynomial::var(&big, n + j) - &Polynomial::monomial(&big, Monomial::from_exponents(&e), crate::poly::integer(1))
        })
        .collect();
    let kernel = IdealHandle::new(&big, gens)?.with_max_steps(ring.max_steps()).eliminate(n)?;
    let sig = RingSignature::new((0..k).map(|j| format!("z{j}")).collect::<Vec<_>>(), vec![1; k])?;
    let map: Vec<usize> = (0..k).collect();
    let gens = embed(kernel.generators(), &sig, &map);
    let flags = Flags { reduced: Assumption::Derived, equidimensional: Assumption::Derived };
    Ok(GradedAlgebra::new(&sig, gens, flags)?.with_max_steps(ring.max_steps()))
}
