//! Finitely presented modules over `S = T/I`: kernels, exterior powers,
//! trace ideals and Fitting ideals.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::groebner::engine::{self, Basis, Input, ModuleOrder, Term, Vector};
use crate::groebner::{from_vector, to_vector, IdealHandle};
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, RingSignature};

/// Dense matrix of polynomials, row-major.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    sig: RingSignature,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn zeros(sig: &RingSignature, rows: usize, cols: usize) -> Self {
        PolyMatrix { sig: sig.clone(), rows, cols, entries: vec![Polynomial::zero(sig); rows * cols] }
    }

    pub fn identity(sig: &RingSignature, n: usize) -> Self {
        let mut m = Self::zeros(sig, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(sig));
        }
        m
    }

    pub fn from_rows(sig: &RingSignature, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|p| p.signature() != sig) {
            return Err(Error::SignatureMismatch("matrix entry from another ring".into()));
        }
        let n = rows.len();
        Ok(PolyMatrix { sig: sig.clone(), rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Columns become matrix columns; `rows` is needed when there are none.
    pub fn from_columns(sig: &RingSignature, rows: usize, columns: &[Vec<Polynomial>]) -> Result<Self> {
        let mut m = Self::zeros(sig, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::InvalidInput("column of the wrong length".into()));
            }
            for (r, p) in col.iter().enumerate() {
                if p.signature() != sig {
                    return Err(Error::SignatureMismatch("matrix entry from another ring".into()));
                }
                m.set(r, c, p.clone());
            }
        }
        Ok(m)
    }

    pub fn parse(sig: &RingSignature, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|t| Polynomial::parse(t, sig)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(sig, rows)
    }

    pub fn signature(&self) -> &RingSignature {
        &self.sig
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.sig, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul_vector(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        (0..self.rows)
            .map(|r| {
                let mut acc = Polynomial::zero(&self.sig);
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &PolyMatrix) -> Self {
        let mut m = Self::zeros(&self.sig, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }
}

/// `coker(S^r → S^m)` given by an `m × r` relation matrix.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    algebra: GradedAlgebra,
    relations: PolyMatrix,
}

impl ModulePresentation {
    pub fn new(algebra: &GradedAlgebra, relations: PolyMatrix) -> Result<Self> {
        if relations.signature() != algebra.signature() {
            return Err(Error::SignatureMismatch("relations are not over the algebra".into()));
        }
        Ok(ModulePresentation { algebra: algebra.clone(), relations })
    }

    pub fn free(algebra: &GradedAlgebra, rank: usize) -> Self {
        let relations = PolyMatrix::zeros(algebra.signature(), rank, 0);
        ModulePresentation { algebra: algebra.clone(), relations }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn target_rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<Self> {
        if other.algebra.signature() != self.algebra.signature() {
            return Err(Error::SignatureMismatch("summands over different rings".into()));
        }
        Ok(ModulePresentation { algebra: self.algebra.clone(), relations: self.relations.block_sum(&other.relations) })
    }
}

/// Columns generating a kernel over `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelGenerators {
    pub rank: usize,
    pub vectors: Vec<Vec<Polynomial>>,
}

impl KernelGenerators {
    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.vectors.iter().flatten().filter(|p| !p.is_zero())
    }
}

/// Shifts making every generator `Σ_r B[r,c] e_r + e_{p+c}` homogeneous:
/// `deg B[r,c] + row[r] = col[c]`.
fn infer_shifts(b: &PolyMatrix) -> Option<(Vec<i64>, Vec<i64>)> {
    let (p, q) = (b.rows(), b.cols());
    let mut degs = vec![None; p * q];
    for r in 0..p {
        for c in 0..q {
            let e = b.get(r, c);
            if !e.is_zero() {
                degs[r * q + c] = Some(e.weighted_degree().ok()?? as i64);
            }
        }
    }
    // nodes 0..p are rows, p..p+q columns
    let mut shift: Vec<Option<i64>> = vec![None; p + q];
    for start in 0..p + q {
        if shift[start].is_some() {
            continue;
        }
        shift[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let su = shift[u].unwrap();
            let neighbours: Vec<(usize, i64)> = if u < p {
                (0..q).filter_map(|c| degs[u * q + c].map(|d| (p + c, su + d))).collect()
            } else {
                let c = u - p;
                (0..p).filter_map(|r| degs[r * q + c].map(|d| (r, su - d))).collect()
            };
            for (v, want) in neighbours {
                match shift[v] {
                    None => {
                        shift[v] = Some(want);
                        queue.push_back(v);
                    }
                    Some(s) if s != want => return None,
                    _ => {}
                }
            }
        }
    }
    let shift: Vec<i64> = shift.into_iter().map(Option::unwrap).collect();
    Some((shift[..p].to_vec(), shift[p..].to_vec()))
}

fn seeds(ring: &GradedAlgebra, order: &ModuleOrder, positions: std::ops::Range<usize>) -> Result<Vec<Input>> {
    let gb = ring.ideal().groebner_basis()?;
    let mut out = Vec::with_capacity(gb.len() * positions.len());
    for pos in positions {
        for g in gb {
            out.push(Input { v: to_vector(g, order, pos as u32), group: Some(pos as u32) });
        }
    }
    Ok(out)
}

fn entry_vector(col: &[Polynomial], order: &ModuleOrder, offset: usize) -> Vector {
    let mut v: Vector = Vec::new();
    for (i, p) in col.iter().enumerate() {
        v.extend(to_vector(p, order, (offset + i) as u32));
    }
    order.sort(&mut v);
    v
}

/// Generators of `{v ∈ S^q : B·v = 0}` for a `p × q` matrix `B` with entries
/// lifted to `T`.
pub fn syzygies(b: &PolyMatrix, ring: &GradedAlgebra) -> Result<KernelGenerators> {
    let (p, q) = (b.rows(), b.cols());
    let sig = ring.signature();
    if b.signature() != sig {
        return Err(Error::SignatureMismatch("matrix is not over the algebra".into()));
    }
    if q == 0 {
        return Ok(KernelGenerators { rank: 0, vectors: Vec::new() });
    }
    let (rows, cols) = infer_shifts(b).unwrap_or_else(|| (vec![0; p], vec![0; q]));
    let mut blocks = vec![0u32; p];
    blocks.extend(std::iter::repeat_n(1, q));
    let order = ModuleOrder {
        mono: MonomialOrder::WeightedGrevlex,
        weights: sig.weights().to_vec(),
        shifts: rows.into_iter().chain(cols).collect(),
        blocks,
    };
    let gens: Vec<Vector> = (0..q)
        .map(|c| {
            let mut v = entry_vector(&b.column(c), &order, 0);
            v.push((Term::new((p + c) as u32, crate::poly::Monomial::one(sig.nvars()), sig.weights()), crate::poly::integer(1)));
            order.sort(&mut v);
            v
        })
        .collect();
    let basis = engine::groebner(&order, seeds(ring, &order, 0..p + q)?, gens, ring.max_steps(), true)?;
    let mut vectors = Vec::new();
    for v in basis.vectors() {
        if (v[0].0.pos as usize) < p {
            continue;
        }
        let mut coords = vec![Vec::new(); q];
        for (t, c) in v {
            coords[t.pos as usize - p].push((t.clone(), c.clone()));
        }
        let coords = coords
            .iter()
            .map(|terms| ring.reduce(&from_vector(terms, sig)))
            .collect::<Result<Vec<_>>>()?;
        if coords.iter().any(|c| !c.is_zero()) && !vectors.contains(&coords) {
            vectors.push(coords);
        }
    }
    Ok(KernelGenerators { rank: q, vectors })
}

/// Lexicographically ordered `k`-subsets of `0..m`.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Presentation of `∧^k M` from a presentation of `M`.
///
/// The target basis is `e_T` for `k`-subsets `T` in lexicographic order. For
/// every `(k−1)`-subset `T'` and relation column `a`, the relation
/// `Σ_{i∉T'} (−1)^{#{t∈T' : t<i}} a_i e_{T'∪{i}}` is added.
pub fn exterior_power_presentation(p: &ModulePresentation, k: usize) -> ModulePresentation {
    let sig = p.algebra.signature().clone();
    let m = p.target_rank();
    if k == 0 {
        return ModulePresentation::free(&p.algebra, 1);
    }
    if k > m {
        return ModulePresentation::free(&p.algebra, 0);
    }
    let basis = subsets(m, k);
    let index: HashMap<&[usize], usize> = basis.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let a = &p.relations;
    let mut columns = Vec::new();
    for tp in subsets(m, k - 1) {
        for j in 0..a.cols() {
            let mut col = vec![Polynomial::zero(&sig); basis.len()];
            for i in (0..m).filter(|i| !tp.contains(i)) {
                let e = a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let below = tp.iter().filter(|&&t| t < i).count();
                let mut set = tp.clone();
                set.insert(below, i);
                let entry = if below % 2 == 0 { e.clone() } else { -e };
                col[index[set.as_slice()]] = entry;
            }
            columns.push(col);
        }
    }
    let relations = PolyMatrix::from_columns(&sig, basis.len(), &columns).expect("consistent sizes");
    ModulePresentation { algebra: p.algebra.clone(), relations }
}

/// `tr(M)`: the entries of generators of `ker(Aᵗ)`, plus `I`.
pub fn trace_ideal(p: &ModulePresentation) -> Result<IdealHandle> {
    let ring = &p.algebra;
    if p.target_rank() == 0 {
        return Ok(ring.zero_ideal());
    }
    let kernel = syzygies(&p.relations.transpose(), ring)?;
    ring.lift(kernel.entries().cloned().collect())
}

/// Determinants of all `t × t` submatrices, in row-subset then column-subset
/// order. Zero minors are kept.
pub fn minors(b: &PolyMatrix, t: usize) -> Vec<Polynomial> {
    let sig = b.signature();
    if t == 0 {
        return vec![Polynomial::one(sig)];
    }
    let col_sets = subsets(b.cols(), t);
    let mut out = Vec::new();
    for rows in subsets(b.rows(), t) {
        let mut memo: HashMap<(usize, u64), Polynomial> = HashMap::new();
        for cols in &col_sets {
            let mask = cols.iter().fold(0u64, |m, &c| m | 1 << c);
            out.push(det(b, &rows, 0, mask, &mut memo));
        }
    }
    out
}

/// Laplace expansion along `rows[depth]` over the columns in `mask`.
fn det(b: &PolyMatrix, rows: &[usize], depth: usize, mask: u64, memo: &mut HashMap<(usize, u64), Polynomial>) -> Polynomial {
    if depth == rows.len() {
        return Polynomial::one(b.signature());
    }
    if let Some(v) = memo.get(&(depth, mask)) {
        return v.clone();
    }
    let mut acc = Polynomial::zero(b.signature());
    let mut bits = mask;
    let mut k = 0;
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let e = b.get(rows[depth], c);
        if !e.is_zero() {
            let sub = det(b, rows, depth + 1, mask & !(1 << c), memo);
            if !sub.is_zero() {
                let term = e * &sub;
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
        }
        k += 1;
    }
    memo.insert((depth, mask), acc.clone());
    acc
}

/// `I_t(B)`, the ideal of `t × t` minors; `(1)` for `t = 0`, `(0)` beyond
/// the matrix size.
pub fn fitting_ideal(b: &PolyMatrix, t: usize) -> IdealHandle {
    let gens = minors(b, t);
    IdealHandle::new(b.signature(), gens).expect("entries share the signature")
}

/// A submodule of `S^rank` with a Gröbner basis, for membership tests.
pub struct Submodule {
    ring: GradedAlgebra,
    rank: usize,
    basis: Basis,
}

impl Submodule {
    pub fn new(ring: &GradedAlgebra, rank: usize, gens: &[Vec<Polynomial>]) -> Result<Self> {
        let sig = ring.signature();
        let order = ModuleOrder {
            mono: MonomialOrder::WeightedGrevlex,
            weights: sig.weights().to_vec(),
            shifts: vec![0; rank],
            blocks: vec![0; rank],
        };
        let vectors = gens
            .iter()
            .map(|g| entry_vector(g, &order, 0))
            .filter(|v| !v.is_empty())
            .collect();
        let basis = engine::groebner(&order, seeds(ring, &order, 0..rank)?, vectors, ring.max_steps(), false)?;
        Ok(Submodule { ring: ring.clone(), rank, basis })
    }

    pub fn contains(&self, v: &[Polynomial]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::InvalidInput("vector of the wrong length".into()));
        }
        let f = entry_vector(v, &self.basis.order, 0);
        Ok(self.basis.normal_form(f, self.ring.max_steps())?.is_empty())
    }
}
