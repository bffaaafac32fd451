//! Simplicial complexes and their Stanley–Reisner rings.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{Assumption, Flags, GradedAlgebra};
use crate::error::{Error, Result};
use crate::poly::{integer, Monomial, Polynomial, RingSignature};

pub const MAX_VERTICES: usize = 12;

/// A complex on its vertex labels, stored by its facets. Faces are bitmasks
/// over the positions of `labels`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    labels: Vec<u32>,
    facets: Vec<u32>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex({self})")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .facets()
            .iter()
            .map(|face| face.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn bits(m: u32) -> Vec<u32> {
    (0..32).filter(|&i| m & (1 << i) != 0).collect()
}

fn maximal_only(mut masks: Vec<u32>) -> Vec<u32> {
    masks.sort_unstable();
    masks.dedup();
    let mut kept: Vec<u32> = masks
        .iter()
        .copied()
        .filter(|&m| !masks.iter().any(|&o| o != m && o & m == m))
        .collect();
    kept.sort_by_key(|&m| (std::cmp::Reverse(m.count_ones()), bits(m)));
    kept
}

impl SimplicialComplex {
    /// The complex on `{1..n}` with the given facets.
    pub fn from_facets(n: usize, facets: &[Vec<u32>]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidInput(format!("at most {MAX_VERTICES} vertices are supported")));
        }
        if facets.is_empty() {
            return Err(Error::InvalidInput("the facet list is empty".into()));
        }
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            if f.is_empty() {
                return Err(Error::InvalidInput("facets must be nonempty".into()));
            }
            let mut m = 0u32;
            for &v in f {
                if v == 0 || v as usize > n {
                    return Err(Error::InvalidInput(format!("vertex {v} is outside 1..{n}")));
                }
                m |= 1 << (v - 1);
            }
            masks.push(m);
        }
        let covered = masks.iter().fold(0, |a, &m| a | m);
        if let Some(v) = (0..n).find(|&v| covered & (1 << v) == 0) {
            return Err(Error::InvalidInput(format!("vertex {} lies in no facet", v + 1)));
        }
        Ok(SimplicialComplex { labels: (1..=n as u32).collect(), facets: maximal_only(masks) })
    }

    /// Parses `"1 2; 3 4"`; the vertex set is `1..max`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        let mut offset = 0;
        for part in text.split(';') {
            let mut face = Vec::new();
            let mut pos = offset;
            for token in part.split_whitespace() {
                let at = pos + part[pos - offset..].find(token).unwrap_or(0);
                let v = token
                    .parse::<u32>()
                    .map_err(|_| Error::Syntax { position: at, message: format!("`{token}` is not a vertex number") })?;
                face.push(v);
                pos = at + token.len();
            }
            if face.is_empty() {
                return Err(Error::Syntax { position: offset, message: "empty facet".into() });
            }
            facets.push(face);
            offset += part.len() + 1;
        }
        let n = facets.iter().flatten().copied().max().unwrap_or(0) as usize;
        Self::from_facets(n, &facets)
    }

    fn sub(labels: Vec<u32>, facets: Vec<u32>) -> Self {
        SimplicialComplex { labels, facets: maximal_only(facets) }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.labels
    }

    fn to_labels(&self, mask: u32) -> Vec<u32> {
        (0..self.labels.len()).filter(|&i| mask & (1 << i) != 0).map(|i| self.labels[i]).collect()
    }

    fn to_mask(&self, face: &[u32]) -> Option<u32> {
        face.iter()
            .try_fold(0u32, |m, v| self.labels.iter().position(|l| l == v).map(|i| m | 1 << i))
    }

    /// Facets as sorted label lists, largest first.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        self.facets.iter().map(|&m| self.to_labels(m)).collect()
    }

    fn contains_mask(&self, m: u32) -> bool {
        self.facets.iter().any(|&f| f & m == m)
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        self.to_mask(face).is_some_and(|m| self.contains_mask(m))
    }

    /// `max |F| − 1`; `−1` for the complex `{∅}`.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.count_ones() as i64).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets.first().map(|f| f.count_ones());
        self.facets.iter().all(|f| Some(f.count_ones()) == d)
    }

    pub fn is_simplex(&self) -> bool {
        let all = (1u32 << self.labels.len()) - 1;
        self.facets.len() == 1 && self.facets[0] == all
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<SimplicialComplex> {
        // groups stay pairwise disjoint
        let mut groups: Vec<u32> = Vec::new();
        for &f in &self.facets {
            let mut merged = f;
            groups.retain(|&g| {
                if g & merged != 0 {
                    merged |= g;
                    false
                } else {
                    true
                }
            });
            groups.push(merged);
        }
        groups.sort_by_key(|g| g.trailing_zeros());
        groups
            .into_iter()
            .map(|g| {
                let idx: Vec<usize> = (0..self.labels.len()).filter(|&i| g & (1 << i) != 0).collect();
                let labels = idx.iter().map(|&i| self.labels[i]).collect();
                let facets = self.facets.iter().filter(|&&f| f & g != 0).map(|&f| compress(f, &idx)).collect();
                Self::sub(labels, facets)
            })
            .collect()
    }

    /// `lk(F) = {G : G ∪ F ∈ Δ, G ∩ F = ∅}`, on the vertices it uses.
    pub fn link(&self, face: &[u32]) -> Result<SimplicialComplex> {
        let m = self
            .to_mask(face)
            .filter(|&m| self.contains_mask(m))
            .ok_or_else(|| Error::InvalidInput(format!("{face:?} is not a face")))?;
        let raw: Vec<u32> = self.facets.iter().filter(|&&f| f & m == m).map(|&f| f & !m).collect();
        let used = raw.iter().fold(0, |a, &f| a | f);
        let idx: Vec<usize> = (0..self.labels.len()).filter(|&i| used & (1 << i) != 0).collect();
        let labels = idx.iter().map(|&i| self.labels[i]).collect();
        Ok(Self::sub(labels, raw.into_iter().map(|f| compress(f, &idx)).collect()))
    }

    /// Inclusion-minimal non-faces, by size then lexicographically.
    pub fn minimal_non_faces(&self) -> Vec<Vec<u32>> {
        let n = self.labels.len();
        let mut out: Vec<u32> = (1u32..1 << n)
            .filter(|&m| {
                !self.contains_mask(m) && (0..n).filter(|&i| m & (1 << i) != 0).all(|i| self.contains_mask(m & !(1 << i)))
            })
            .collect();
        out.sort_by_key(|&m| (m.count_ones(), self.to_labels(m)));
        out.into_iter().map(|m| self.to_labels(m)).collect()
    }

    /// The smallest relabelling of the facet set under all vertex
    /// permutations; equal for isomorphic complexes on the same count.
    pub fn canonical_form(&self) -> Vec<u32> {
        let n = self.labels.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u32>> = None;
        loop {
            let mut image: Vec<u32> = self
                .facets
                .iter()
                .map(|&f| (0..n).filter(|&i| f & (1 << i) != 0).fold(0, |a, i| a | 1 << perm[i]))
                .collect();
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }
}

fn compress(mask: u32, idx: &[usize]) -> u32 {
    idx.iter().enumerate().fold(0, |a, (k, &i)| if mask & (1 << i) != 0 { a | 1 << k } else { a })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every complex on exactly the vertices `1..n`.
pub fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    fn go(masks: &[u32], k: usize, chosen: &mut Vec<u32>, full: u32, n: usize, out: &mut Vec<SimplicialComplex>) {
        if k == masks.len() {
            if !chosen.is_empty() && chosen.iter().fold(0, |a, &m| a | m) == full {
                out.push(SimplicialComplex::sub((1..=n as u32).collect(), chosen.clone()));
            }
            return;
        }
        go(masks, k + 1, chosen, full, n, out);
        let m = masks[k];
        if chosen.iter().all(|&c| c & m != c && c & m != m) {
            chosen.push(m);
            go(masks, k + 1, chosen, full, n, out);
            chosen.pop();
        }
    }
    assert!(n <= 6, "exhaustive enumeration is for small vertex counts");
    let masks: Vec<u32> = (1u32..1 << n).collect();
    let mut out = Vec::new();
    go(&masks, 0, &mut Vec::new(), (1 << n) - 1, n, &mut out);
    out
}

/// One representative per isomorphism class of complexes on `1..n`.
pub fn isomorphism_classes(n: usize) -> Vec<SimplicialComplex> {
    let mut seen = BTreeSet::new();
    all_complexes(n).into_iter().filter(|c| seen.insert(c.canonical_form())).collect()
}

/// `k[Δ] = ℚ[x_v] / I_Δ` together with its complex.
#[derive(Clone, Debug)]
pub struct SRAlgebra {
    pub algebra: GradedAlgebra,
    pub complex: SimplicialComplex,
}

pub fn variable_name(label: u32) -> String {
    format!("x{label}")
}

pub fn stanley_reisner_algebra(delta: &SimplicialComplex) -> Result<SRAlgebra> {
    let names: Vec<String> = delta.labels.iter().map(|&l| variable_name(l)).collect();
    let n = names.len();
    let sig = RingSignature::new(names, vec![1; n])?;
    let gens = delta
        .minimal_non_faces()
        .iter()
        .map(|face| {
            let mut e = vec![0u32; n];
            for v in face {
                e[delta.labels.iter().position(|l| l == v).expect("own label")] = 1;
            }
            Polynomial::monomial(&sig, Monomial::from_exponents(&e), integer(1))
        })
        .collect();
    // squarefree monomial ideals are radical; the components are the facets
    let flags = Flags {
        reduced: Assumption::Derived,
        equidimensional: if delta.is_pure() { Assumption::Derived } else { Assumption::Refuted },
    };
    Ok(SRAlgebra { algebra: GradedAlgebra::new(&sig, gens, flags)?, complex: delta.clone() })
}

/// Every component is a simplex of dimension `dim Δ`. Needs pure components.
pub fn combinatorial_nearly_regular(delta: &SimplicialComplex) -> Result<bool> {
    let comps = delta.components();
    if let Some(c) = comps.iter().find(|c| !c.is_pure()) {
        return Err(Error::AssumptionViolation(format!("the component `{c}` is not pure")));
    }
    let d = delta.dim();
    Ok(comps.iter().all(|c| c.is_simplex() && c.dim() == d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(s: &str) -> SimplicialComplex {
        SimplicialComplex::parse(s).unwrap()
    }

    fn gens(delta: &SimplicialComplex) -> Vec<String> {
        let sr = stanley_reisner_algebra(delta).unwrap();
        sr.algebra.ideal().generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn construction_and_errors() {
        assert_eq!(cx("1 2; 3 4").facets(), [vec![1, 2], vec![3, 4]]);
        assert_eq!(cx("1 2 3; 1 2").facets(), [vec![1, 2, 3]]);
        assert!(SimplicialComplex::from_facets(3, &[]).is_err());
        assert!(SimplicialComplex::from_facets(3, &[vec![1, 2]]).is_err());
        assert!(SimplicialComplex::from_facets(2, &[vec![1, 3]]).is_err());
        assert!(SimplicialComplex::from_facets(13, &[vec![1]]).is_err());
        assert!(matches!(SimplicialComplex::parse("1 a"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(SimplicialComplex::parse("1 2;;3"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn stanley_reisner_ideals() {
        assert_eq!(gens(&cx("1 2; 3 4")), ["x1*x3", "x1*x4", "x2*x3", "x2*x4"]);
        assert_eq!(gens(&cx("1 2; 2 3")), ["x1*x3"]);
        assert!(gens(&cx("1 2 3")).is_empty());
        assert_eq!(gens(&cx("1 2; 2 3; 1 3")), ["x1*x2*x3"]);
    }

    #[test]
    fn combinatorics() {
        let path = cx("1 2; 2 3");
        let lk = path.link(&[2]).unwrap();
        assert_eq!(lk.vertices(), [1, 3]);
        assert_eq!(lk.facets(), [vec![1], vec![3]]);
        assert!(path.link(&[1, 3]).is_err());
        assert_eq!(path.link(&[1, 2]).unwrap().dim(), -1);
        let edges = cx("1 2; 3 4");
        let comps = edges.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.is_pure() && c.dim() == 1 && c.is_simplex()));
        assert_eq!(path.components().len(), 1);
        assert!(path.is_pure() && !path.is_simplex());
        assert_eq!(cx("1 2; 3 4; 2 3").components().len(), 1);
    }

    #[test]
    fn combinatorial_criterion() {
        assert!(combinatorial_nearly_regular(&cx("1 2; 3 4")).unwrap());
        assert!(!combinatorial_nearly_regular(&cx("1 2; 2 3")).unwrap());
        assert!(!combinatorial_nearly_regular(&cx("1 2; 3")).unwrap());
        assert!(matches!(combinatorial_nearly_regular(&cx("1 2 3; 3 4")), Err(Error::AssumptionViolation(_))));
    }

    #[test]
    fn enumeration_counts() {
        // brute force over all families of nonempty subsets
        for n in 1..=4usize {
            let subsets = (1u32 << n) - 1;
            let expected = (1u64..1 << subsets)
                .filter(|&fam| {
                    let masks: Vec<u32> = (0..subsets).filter(|&k| fam & (1 << k) != 0).map(|k| k + 1).collect();
                    let cover = masks.iter().fold(0, |a, &m| a | m) == (1 << n) - 1;
                    let antichain = masks.iter().all(|&a| masks.iter().all(|&b| a == b || a & b != a));
                    cover && antichain
                })
                .count();
            assert_eq!(all_complexes(n).len(), expected, "n = {n}");
        }
        // points, edge and point, path, hollow triangle, triangle
        assert_eq!(isomorphism_classes(3).len(), 5);
    }
}
