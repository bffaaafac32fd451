//! The ring description format:
//!
//! ```text
//! # two planes meeting in a line
//! vars: x=1, y=1, z
//! ideal: x*y, x*z
//! assume: reduced
//! ```
//!
//! `ideal:` is optional and `assume:` may repeat. Weights default to 1.

use std::path::Path;

use omega_trace::algebra::{Assumption, Flags, GradedAlgebra};
use omega_trace::{Error, Polynomial, RingSignature};

#[derive(Debug, thiserror::Error)]
pub enum RingFileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: generator `{generator}` is not weighted-homogeneous")]
    NotHomogeneous { line: usize, generator: String },
}

pub fn load_ring(path: &Path) -> Result<GradedAlgebra, RingFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| RingFileError::Io { path: path.display().to_string(), source })?;
    parse_ring(&text)
}

fn items(rest: &str) -> impl Iterator<Item = &str> {
    rest.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_ring(text: &str) -> Result<GradedAlgebra, RingFileError> {
    let mut vars: Option<(usize, &str)> = None;
    let mut ideals: Vec<(usize, &str)> = Vec::new();
    let mut flags = Flags::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| RingFileError::Parse { line, message };
        let (key, rest) = content.split_once(':').ok_or_else(|| err(format!("expected `key: value`, got `{content}`")))?;
        match key.trim() {
            "vars" => {
                if vars.is_some() {
                    return Err(err("`vars:` given twice".into()));
                }
                vars = Some((line, rest));
            }
            "ideal" => ideals.push((line, rest)),
            "assume" => {
                for token in items(rest).flat_map(str::split_whitespace) {
                    match token {
                        "reduced" => flags.reduced = Assumption::Asserted,
                        "equidimensional" => flags.equidimensional = Assumption::Asserted,
                        other => return Err(err(format!("unknown assumption `{other}`"))),
                    }
                }
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let (vline, vrest) = vars.ok_or(RingFileError::Parse { line: 0, message: "missing `vars:` line".into() })?;
    let verr = |message: String| RingFileError::Parse { line: vline, message };
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for item in items(vrest) {
        let (name, weight) = match item.split_once('=') {
            Some((n, w)) => {
                let w = w.trim().parse::<u32>().map_err(|_| verr(format!("bad weight in `{item}`")))?;
                (n.trim(), w)
            }
            None => (item, 1),
        };
        names.push(name.to_string());
        weights.push(weight);
    }
    if names.is_empty() {
        return Err(verr("no variables".into()));
    }
    let sig = RingSignature::new(names, weights).map_err(|e| verr(e.to_string()))?;
    let mut gens = Vec::new();
    for (line, rest) in ideals {
        for item in items(rest) {
            let p = Polynomial::parse(item, &sig).map_err(|e| RingFileError::Parse { line, message: format!("`{item}`: {e}") })?;
            if !p.is_homogeneous() {
                return Err(RingFileError::NotHomogeneous { line, generator: item.to_string() });
            }
            gens.push(p);
        }
    }
    GradedAlgebra::new(&sig, gens, flags).map_err(|e| match e {
        Error::NotHomogeneous(g) => RingFileError::NotHomogeneous { line: 0, generator: g },
        other => RingFileError::Parse { line: 0, message: other.to_string() },
    })
}

/// A ring file describing `s`, readable by [`parse_ring`].
pub fn render_ring(s: &GradedAlgebra) -> String {
    let sig = s.signature();
    let vars: Vec<String> = sig.names().iter().zip(sig.weights()).map(|(n, w)| format!("{n}={w}")).collect();
    let mut out = format!("vars: {}\n", vars.join(", "));
    let gens: Vec<String> = s.ideal().generators().iter().map(|g| g.to_string()).collect();
    if !gens.is_empty() {
        out.push_str(&format!("ideal: {}\n", gens.join(", ")));
    }
    let mut assume = Vec::new();
    if s.flags().reduced.holds() {
        assume.push("reduced");
    }
    if s.flags().equidimensional.holds() {
        assume.push("equidimensional");
    }
    if !assume.is_empty() {
        out.push_str(&format!("assume: {}\n", assume.join(", ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_planes() {
        let s = parse_ring("vars: x=1, y=1, z=1\nideal: x*y, x*z\nassume: reduced\n").unwrap();
        assert_eq!(s.signature().names(), ["x", "y", "z"]);
        assert_eq!(s.ideal().generators().len(), 2);
        assert_eq!(s.flags().reduced, Assumption::Asserted);
        assert_eq!(s.flags().equidimensional, Assumption::Unknown);
    }

    #[test]
    fn defaults_and_comments() {
        let s = parse_ring("# plane\nvars: a=2, b=3 # weights\n\nassume: reduced equidimensional\n").unwrap();
        assert_eq!(s.signature().weights(), [2, 3]);
        assert!(s.ideal().generators().is_empty());
        assert!(s.flags().equidimensional.holds());
        let s = parse_ring("vars: x, y\nideal: x*y\nideal: x^2\n").unwrap();
        assert_eq!(s.ideal().generators().len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_ring("vars: x\nideal: x + x^2\n"), Err(RingFileError::NotHomogeneous { line: 2, .. })));
        assert!(matches!(parse_ring("ideal: x\n"), Err(RingFileError::Parse { .. })));
        assert!(matches!(parse_ring("vars: x\nideal: y\n"), Err(RingFileError::Parse { line: 2, .. })));
        assert!(matches!(parse_ring("vars: x=0\n"), Err(RingFileError::Parse { line: 1, .. })));
        assert!(matches!(parse_ring("vars: x\nassume: smooth\n"), Err(RingFileError::Parse { line: 2, .. })));
        assert!(matches!(parse_ring("vars x\n"), Err(RingFileError::Parse { line: 1, .. })));
    }

    #[test]
    fn render_round_trips() {
        let s = parse_ring("vars: a=2, b=3\nideal: a^3 - b^2\nassume: reduced\n").unwrap();
        let again = parse_ring(&render_ring(&s)).unwrap();
        assert_eq!(render_ring(&again), render_ring(&s));
        assert!(again.ideal().equals(&s.ideal().transport(again.signature()).unwrap()).unwrap());
    }
}
