//! Buchberger's algorithm for submodules of a free module `T^N` over a
//! polynomial ring `T = ℚ[x₁..xₙ]`. Ideals are the case `N = 1`.
//!
//! Pairs are filtered with the Gebauer–Möller update. The product criterion
//! is applied only to pairs of elements supported in a single position,
//! where it is valid.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::{Coeff, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Term {
    pub pos: u32,
    /// Weighted degree of `mono` (without the position shift).
    pub deg: u64,
    pub mono: Monomial,
}

impl Term {
    pub fn new(pos: u32, mono: Monomial, weights: &[u32]) -> Self {
        Term { pos, deg: mono.weighted_degree(weights), mono }
    }

    fn times(&self, m: &Monomial, mdeg: u64) -> Term {
        Term { pos: self.pos, deg: self.deg + mdeg, mono: self.mono.mul(m) }
    }
}

/// Sparse vector, terms sorted descending under the engine order.
pub(crate) type Vector = Vec<(Term, Coeff)>;

/// Order on terms `(position, monomial)`.
///
/// Positions are grouped into blocks; a term in a lower-numbered block beats
/// any term in a higher-numbered block. Inside a block, terms compare by
/// shifted weighted degree (grevlex only), then by the monomial order, then
/// by position (lower index first).
#[derive(Clone, Debug)]
pub(crate) struct ModuleOrder {
    pub mono: MonomialOrder,
    pub weights: Vec<u32>,
    pub shifts: Vec<i64>,
    pub blocks: Vec<u32>,
}

impl ModuleOrder {
    pub fn for_ideal(mono: MonomialOrder, weights: &[u32]) -> Self {
        ModuleOrder { mono, weights: weights.to_vec(), shifts: vec![0], blocks: vec![0] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    fn shifted(&self, t: &Term) -> i64 {
        t.deg as i64 + self.shifts[t.pos as usize]
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let (pa, pb) = (a.pos as usize, b.pos as usize);
        self.blocks[pb]
            .cmp(&self.blocks[pa])
            .then_with(|| match self.mono {
                MonomialOrder::WeightedGrevlex => self
                    .shifted(a)
                    .cmp(&self.shifted(b))
                    .then_with(|| revlex(&a.mono, &b.mono)),
                _ => self.mono.compare(&a.mono, &b.mono, &self.weights),
            })
            .then_with(|| pb.cmp(&pa))
    }

    pub fn sort(&self, v: &mut Vector) {
        v.sort_by(|a, b| self.cmp(&b.0, &a.0));
    }

    fn sugar_of(&self, v: &Vector) -> i64 {
        v.iter().map(|(t, _)| self.shifted(t)).max().unwrap_or(0)
    }
}

fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    for i in (0..ea.len()).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

/// `f - c * m * g`, where `m * g` keeps the term order of `g`.
fn sub_scaled(order: &ModuleOrder, f: &[(Term, Coeff)], c: &Coeff, m: &Monomial, mdeg: u64, g: &[(Term, Coeff)]) -> Vector {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<(Term, Coeff)> = None;
    loop {
        if pending.is_none() && j < g.len() {
            pending = Some((g[j].0.times(m, mdeg), -(c * &g[j].1)));
            j += 1;
        }
        match (&pending, f.get(i)) {
            (None, None) => break,
            (None, Some(_)) => {
                out.extend_from_slice(&f[i..]);
                break;
            }
            (Some(_), None) => {
                out.push(pending.take().unwrap());
            }
            (Some((gt, _)), Some((ft, fc))) => match order.cmp(ft, gt) {
                Ordering::Greater => {
                    out.push((ft.clone(), fc.clone()));
                    i += 1;
                }
                Ordering::Less => out.push(pending.take().unwrap()),
                Ordering::Equal => {
                    let (gt, gc) = pending.take().unwrap();
                    let s = fc + gc;
                    if !s.is_zero() {
                        out.push((gt, s));
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

fn scale_monic(v: &mut Vector) {
    if let Some((_, lc)) = v.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in v.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Elem {
    v: Vector,
    lead: Term,
    mask: u64,
    sugar: i64,
    single_pos: bool,
    group: Option<u32>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    sugar: i64,
}

/// A finished (minimal) Gröbner basis that can reduce vectors.
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub order: ModuleOrder,
    elems: Vec<Elem>,
    by_pos: Vec<Vec<usize>>,
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

fn find_reducer(elems: &[Elem], active: &[usize], t: &Term, tmask: u64) -> Option<usize> {
    active.iter().copied().find(|&k| {
        let e = &elems[k];
        e.mask & !tmask == 0 && e.lead.mono.divides(&t.mono)
    })
}

/// Reduces the leading term of `f` until it is irreducible.
fn top_reduce(order: &ModuleOrder, elems: &[Elem], by_pos: &[Vec<usize>], mut f: Vector, sugar: &mut i64, budget: &mut Budget) -> Result<Vector> {
    while let Some((lt, lc)) = f.first() {
        let mask = lt.mono.support_mask();
        let Some(k) = find_reducer(elems, &by_pos[lt.pos as usize], lt, mask) else { break };
        budget.tick()?;
        let g = &elems[k];
        let m = g.lead.mono.quotient_of(&lt.mono).expect("divisible");
        let mdeg = lt.deg - g.lead.deg;
        *sugar = (*sugar).max(g.sugar + mdeg as i64);
        let c = lc.clone();
        f = sub_scaled(order, &f[1..], &c, &m, mdeg, &g.v[1..]);
    }
    Ok(f)
}

/// Reduces every term of `f`; the result has no term divisible by a leading
/// term of the basis.
fn full_reduce(order: &ModuleOrder, elems: &[Elem], by_pos: &[Vec<usize>], mut f: Vector, skip: Option<usize>, budget: &mut Budget) -> Result<Vector> {
    let mut rem: Vector = Vec::new();
    let mut start = 0;
    while start < f.len() {
        let (t, c) = &f[start];
        let mask = t.mono.support_mask();
        let found = by_pos[t.pos as usize].iter().copied().find(|&k| {
            Some(k) != skip && {
                let e = &elems[k];
                e.mask & !mask == 0 && e.lead.mono.divides(&t.mono)
            }
        });
        match found {
            None => {
                rem.push(f[start].clone());
                start += 1;
            }
            Some(k) => {
                budget.tick()?;
                let g = &elems[k];
                let m = g.lead.mono.quotient_of(&t.mono).expect("divisible");
                let mdeg = t.deg - g.lead.deg;
                let c = c.clone();
                f = sub_scaled(order, &f[start + 1..], &c, &m, mdeg, &g.v[1..]);
                start = 0;
            }
        }
    }
    Ok(rem)
}

pub(crate) struct Input {
    pub v: Vector,
    /// Elements sharing a group are known to form a Gröbner basis among
    /// themselves; their mutual pairs are skipped.
    pub group: Option<u32>,
}

struct State<'o> {
    order: &'o ModuleOrder,
    elems: Vec<Elem>,
    active: Vec<bool>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    budget: Budget,
}

impl State<'_> {
    fn insert(&mut self, mut v: Vector, sugar: i64, group: Option<u32>) {
        scale_monic(&mut v);
        let lead = v[0].0.clone();
        let single_pos = v.iter().all(|(t, _)| t.pos == lead.pos);
        let h = Elem { mask: lead.mono.support_mask(), lead, v, sugar, single_pos, group };
        let hn = self.elems.len();
        let pos = h.lead.pos as usize;

        struct Cand {
            g: usize,
            lcm: Monomial,
            trivial: bool,
        }
        let mut cands: Vec<Cand> = self.by_pos[pos]
            .iter()
            .map(|&g| {
                let e = &self.elems[g];
                let same_group = matches!((h.group, e.group), (Some(a), Some(b)) if a == b);
                let coprime = h.single_pos && e.single_pos && h.lead.mono.is_coprime(&e.lead.mono);
                Cand { g, lcm: h.lead.mono.lcm(&e.lead.mono), trivial: same_group || coprime }
            })
            .collect();

        // M and F criteria: keep a pair only if no other remaining pair has a
        // dividing lcm. Trivial pairs stay around as witnesses.
        let mut kept: Vec<Cand> = Vec::new();
        while let Some(p) = cands.pop() {
            let dominated = cands.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if p.trivial || !dominated {
                kept.push(p);
            }
        }

        // B criterion on existing pairs.
        let elems = &self.elems;
        self.pairs.retain(|pr| {
            if pr.lcm.pos as usize != pos || !h.lead.mono.divides(&pr.lcm.mono) {
                return true;
            }
            let li = elems[pr.i].lead.mono.lcm(&h.lead.mono);
            let lj = elems[pr.j].lead.mono.lcm(&h.lead.mono);
            li == pr.lcm.mono || lj == pr.lcm.mono
        });

        for c in kept.into_iter().filter(|c| !c.trivial) {
            let g = &self.elems[c.g];
            let ldeg = c.lcm.weighted_degree(&self.order.weights);
            let sugar = (h.sugar + (ldeg - h.lead.deg) as i64).max(g.sugar + (ldeg - g.lead.deg) as i64);
            let lcm = Term { pos: pos as u32, deg: ldeg, mono: c.lcm };
            self.pairs.push(Pair { i: c.g, j: hn, lcm, sugar });
        }

        // Drop elements whose leading term is now redundant.
        let hl = &h.lead.mono;
        let mut still = Vec::with_capacity(self.by_pos[pos].len() + 1);
        for &g in &self.by_pos[pos] {
            if hl.divides(&self.elems[g].lead.mono) {
                self.active[g] = false;
            } else {
                still.push(g);
            }
        }
        still.push(hn);
        self.by_pos[pos] = still;
        self.elems.push(h);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            if a.sugar < b.sugar || (a.sugar == b.sugar && order.cmp(&a.lcm, &b.lcm) == Ordering::Less) {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let ma = a.lead.mono.quotient_of(&p.lcm.mono).expect("lcm");
        let mb = b.lead.mono.quotient_of(&p.lcm.mono).expect("lcm");
        let da = p.lcm.deg - a.lead.deg;
        let db = p.lcm.deg - b.lead.deg;
        let shifted_a: Vector = a.v[1..].iter().map(|(t, c)| (t.times(&ma, da), c.clone())).collect();
        sub_scaled(self.order, &shifted_a, &Coeff::one(), &mb, db, &b.v[1..])
    }
}

/// Computes a minimal Gröbner basis of the submodule generated by `seeds`
/// and `gens`; with `reduce`, the reduced basis. Seeds are inserted first
/// without reduction and must each be monic-normalizable and nonzero.
pub(crate) fn groebner(order: &ModuleOrder, seeds: Vec<Input>, gens: Vec<Vector>, max_steps: u64, reduce: bool) -> Result<Basis> {
    let mut st = State {
        order,
        elems: Vec::new(),
        active: Vec::new(),
        by_pos: vec![Vec::new(); order.rank()],
        pairs: Vec::new(),
        budget: Budget { limit: max_steps, used: 0 },
    };
    for s in seeds {
        if s.v.is_empty() {
            continue;
        }
        let sugar = order.sugar_of(&s.v);
        st.insert(s.v, sugar, s.group);
    }
    for g in gens {
        let mut sugar = order.sugar_of(&g);
        let r = top_reduce(order, &st.elems, &st.by_pos, g, &mut sugar, &mut st.budget)?;
        if !r.is_empty() {
            st.insert(r, sugar, None);
        }
    }
    while let Some(p) = st.next_pair() {
        st.budget.tick()?;
        let s = st.spoly(&p);
        let mut sugar = p.sugar;
        let r = top_reduce(order, &st.elems, &st.by_pos, s, &mut sugar, &mut st.budget)?;
        if !r.is_empty() {
            st.insert(r, sugar, None);
        }
    }

    let mut elems: Vec<Elem> = st
        .elems
        .into_iter()
        .zip(st.active)
        .filter_map(|(e, a)| a.then_some(e))
        .collect();
    elems.sort_by(|a, b| order.cmp(&a.lead, &b.lead));
    let mut by_pos = vec![Vec::new(); order.rank()];
    for (k, e) in elems.iter().enumerate() {
        by_pos[e.lead.pos as usize].push(k);
    }
    let mut budget = st.budget;
    if reduce {
        for k in 0..elems.len() {
            let v = std::mem::take(&mut elems[k].v);
            let head = v[0].clone();
            let tail = full_reduce(order, &elems, &by_pos, v[1..].to_vec(), Some(k), &mut budget)?;
            let mut nv = Vec::with_capacity(tail.len() + 1);
            nv.push(head);
            nv.extend(tail);
            elems[k].v = nv;
            elems[k].single_pos = elems[k].v.iter().all(|(t, _)| t.pos == elems[k].lead.pos);
        }
    }
    Ok(Basis { order: order.clone(), elems, by_pos })
}

impl Basis {
    /// Elements sorted ascending by leading term.
    pub fn vectors(&self) -> impl Iterator<Item = &Vector> {
        self.elems.iter().map(|e| &e.v)
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = &Term> {
        self.elems.iter().map(|e| &e.lead)
    }

    pub fn normal_form(&self, f: Vector, max_steps: u64) -> Result<Vector> {
        let mut budget = Budget { limit: max_steps, used: 0 };
        full_reduce(&self.order, &self.elems, &self.by_pos, f, None, &mut budget)
    }
}
