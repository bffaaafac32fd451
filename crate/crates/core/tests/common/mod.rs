#![allow(dead_code)]

use omega_trace::algebra::{Flags, GradedAlgebra};
use omega_trace::constructions::{fiber_product, tensor_product, veronese};
use omega_trace::poly::{Polynomial, RingSignature};
use omega_trace::IdealHandle;

pub struct Entry {
    pub name: &'static str,
    pub ring: GradedAlgebra,
}

pub fn ring(names: &[&str], gens: &[&str], reduced: bool, equidimensional: bool) -> GradedAlgebra {
    let sig = RingSignature::standard(names).unwrap();
    GradedAlgebra::parse(&sig, gens, Flags::asserted(reduced, equidimensional)).unwrap()
}

pub fn weighted(names: &[&str], weights: &[u32], gens: &[&str], reduced: bool, equidimensional: bool) -> GradedAlgebra {
    let sig = RingSignature::new(names.to_vec(), weights.to_vec()).unwrap();
    GradedAlgebra::parse(&sig, gens, Flags::asserted(reduced, equidimensional)).unwrap()
}

pub fn ideal(s: &GradedAlgebra, gens: &[&str]) -> IdealHandle {
    let gens = gens.iter().map(|g| Polynomial::parse(g, s.signature()).unwrap()).collect();
    s.lift(gens).unwrap()
}

pub fn fermat(names: &[&str]) -> GradedAlgebra {
    let g = format!("{}^3 + {}^3 + {}^3", names[0], names[1], names[2]);
    ring(names, &[g.as_str()], true, true)
}

/// Flags are only set where they are true.
pub fn corpus() -> Vec<Entry> {
    let line = ring(&["t"], &[], true, true);
    let cusp = weighted(&["a", "b"], &[2, 3], &["a^3 - b^2"], true, true);
    let conic = ring(&["a", "b", "c"], &["a*c - b^2"], true, true);
    let mut out = vec![
        Entry { name: "line", ring: ring(&["x"], &[], true, true) },
        Entry { name: "plane", ring: ring(&["x", "y"], &[], true, true) },
        Entry { name: "space", ring: ring(&["x", "y", "z"], &[], true, true) },
        Entry { name: "node", ring: ring(&["x", "y"], &["x*y"], true, true) },
        Entry { name: "node x line", ring: ring(&["x", "y", "z"], &["x*y"], true, true) },
        Entry { name: "plane and line", ring: ring(&["x", "y", "z"], &["x*y", "x*z"], true, false) },
        Entry { name: "fermat cubic", ring: fermat(&["x", "y", "z"]) },
        Entry { name: "conic", ring: conic.clone() },
        Entry { name: "twisted cubic cone", ring: veronese(&ring(&["x", "y"], &[], true, true), 3).unwrap() },
        Entry { name: "weighted cusp", ring: cusp.clone() },
        Entry { name: "coordinate planes", ring: ring(&["x", "y", "z"], &["x*y*z"], true, true) },
        Entry { name: "coordinate axes", ring: ring(&["x", "y", "z"], &["x*y", "y*z", "x*z"], true, true) },
        Entry {
            name: "two disjoint edges",
            ring: ring(&["x1", "x2", "x3", "x4"], &["x1*x3", "x1*x4", "x2*x3", "x2*x4"], true, true),
        },
        Entry { name: "quadric cone", ring: ring(&["x", "y", "z", "w"], &["x*y - z*w"], true, true) },
        Entry { name: "sphere cone", ring: ring(&["x", "y", "z"], &["x^2 + y^2 + z^2"], true, true) },
        Entry { name: "E6 surface", ring: weighted(&["x", "y", "z"], &[6, 4, 3], &["x^2 + y^3 + z^4"], true, true) },
        Entry { name: "double line", ring: ring(&["x", "y"], &["x^2"], false, true) },
        Entry { name: "embedded point", ring: ring(&["x", "y"], &["x^2", "x*y"], false, false) },
        Entry { name: "cusp x line", ring: tensor_product(&cusp, &line).unwrap() },
        Entry { name: "conic fiber line", ring: fiber_product(&conic, &line).unwrap() },
    ];
    out.push(Entry { name: "veronese conic", ring: veronese(&ring(&["x", "y"], &[], true, true), 2).unwrap() });
    out
}
