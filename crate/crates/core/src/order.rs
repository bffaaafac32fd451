//! Monomial orders.

use std::cmp::Ordering;

use crate::poly::Monomial;

/// A multiplicative well-order on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Weighted total degree, ties broken by reverse lexicographic order.
    #[default]
    WeightedGrevlex,
    /// Weighted grevlex on the first `k` variables, then weighted grevlex on
    /// the rest. Any monomial involving the first block beats every monomial
    /// free of it.
    BlockElimination(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::WeightedGrevlex => grevlex_range(a, b, weights, 0, a.nvars()),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(a.nvars());
                grevlex_range(a, b, weights, 0, k)
                    .then_with(|| grevlex_range(a, b, weights, k, a.nvars()))
            }
        }
    }
}

fn grevlex_range(a: &Monomial, b: &Monomial, weights: &[u32], lo: usize, hi: usize) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    let mut da = 0u64;
    let mut db = 0u64;
    for i in lo..hi {
        da += ea[i] as u64 * weights[i] as u64;
        db += eb[i] as u64 * weights[i] as u64;
    }
    da.cmp(&db).then_with(|| {
        for i in (lo..hi).rev() {
            if ea[i] != eb[i] {
                // smaller exponent in the last differing variable wins
                return eb[i].cmp(&ea[i]);
            }
        }
        Ordering::Equal
    })
}
