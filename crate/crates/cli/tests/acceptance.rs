use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use omega_trace::constructions::*;
use omega_trace::difftrace::*;
use omega_trace::modsyz::{exterior_power_presentation, subsets, syzygies, ModulePresentation};
use omega_trace::poly::{integer, Monomial, Polynomial, RingSignature};
use omega_trace::simplicial::*;
use omega_trace::IdealHandle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[path = "../../core/tests/common/mod.rs"]
mod corpus;

use corpus::{fermat, ideal, ring, weighted};

type Check = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, what: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1a() -> Check {
    let s = ring(&["x", "y", "z"], &["x*y", "x*z"], true, false);
    ensure(ok(s.dimension())? == 2, "dim ≠ 2")?;
    ensure(ok(ok(diff_trace(&s, 2))?.equals(&ideal(&s, &["y", "z"])))?, "tr(Ω²) ≠ (y,z)")
}

fn c1b() -> Check {
    let s = fermat(&["x", "y", "z"]);
    let t = ok(diff_trace(&s, 2))?;
    ensure(ok(t.equals(&ideal(&s, &["x^2", "y^2", "z^2"])))?, "tr(Ω²) ≠ (x²,y²,z²)")?;
    ensure(!ok(t.equals(&s.maximal_ideal()))?, "tr(Ω²) = m")
}

fn c1c() -> Check {
    let v = ok(veronese(&ring(&["x", "y"], &[], true, true), 3))?;
    let m = v.maximal_ideal();
    let t = ok(diff_trace(&v, 2))?;
    ensure(ok(t.equals(&ok(m.product(&m))?))?, "tr(Ω²) ≠ m²")?;
    ensure(!ok(t.equals(&m))?, "tr(Ω²) = m")
}

fn c2a() -> Check {
    let rings = corpus::corpus();
    ensure(rings.len() >= 15, "corpus too small")?;
    for e in &rings {
        let s = &e.ring;
        let d = ok(s.dimension())?;
        let traces: Vec<IdealHandle> = (0..=d + 1).map(|i| diff_trace(s, i)).collect::<Result<_, _>>().map_err(|x| x.to_string())?;
        for i in 0..=d {
            ensure(ok(traces[i].contains_ideal(&traces[i + 1]))?, format!("{}: chain breaks at {i}", e.name))?;
            let (u0, u1) = (ok(traces[i].is_unit())?, ok(traces[i + 1].is_unit())?);
            ensure(!u1 || u0, format!("{}: unit propagation fails at {i}", e.name))?;
        }
    }
    Ok(())
}

fn c2b() -> Check {
    for e in corpus::corpus().iter().filter(|e| e.ring.flags().reduced.holds()) {
        let s = &e.ring;
        let d = ok(s.dimension())?;
        ensure(ok(ok(diff_trace(s, d + 1))?.equals(&s.zero_ideal()))?, format!("{}: tr(Ω^(d+1)) ≠ 0", e.name))?;
    }
    Ok(())
}

fn c2c() -> Check {
    for e in corpus::corpus() {
        let s = &e.ring;
        let t1 = ok(diff_trace(s, 1))?;
        ensure(ok(s.contains_maximal(&t1))?, format!("{}: m ⊄ tr(Ω¹)", e.name))?;
        if ok(polynomial_rank(s))? == 0 {
            ensure(ok(t1.equals(&s.maximal_ideal()))?, format!("{}: tr(Ω¹) ≠ m with p.rk 0", e.name))?;
        }
    }
    Ok(())
}

fn c2d() -> Check {
    let t = || ring(&["t"], &[], true, true);
    let pairs = [
        (ring(&["x", "y"], &["x*y"], true, true), ring(&["z"], &[], true, true)),
        (fermat(&["x", "y", "z"]), t()),
        (ring(&["x"], &[], true, true), ring(&["y"], &[], true, true)),
        (ring(&["x", "y"], &["x*y"], true, true), ring(&["u", "v"], &["u*v"], true, true)),
        (ring(&["a", "b", "c"], &["a*c - b^2"], true, true), t()),
        (weighted(&["a", "b"], &[2, 3], &["a^3 - b^2"], true, true), ring(&["x", "y"], &["x*y"], true, true)),
    ];
    for (a, b) in &pairs {
        let r = ok(tensor_product(a, b))?;
        let p = ok(predicted_tensor_trace(a, b))?;
        let direct = ok(diff_trace(&r, ok(r.dimension())?))?;
        ensure(ok(direct.equals(&p.product))?, format!("{r}: predicted ≠ direct"))?;
        ensure(p.product_equals_intersection, format!("{r}: product ≠ intersection"))?;
    }
    Ok(())
}

fn c2e() -> Check {
    let line = |v: &str| ring(&[v], &[], true, true);
    let pairs = [
        (line("x"), ring(&["y", "z"], &[], true, true)),
        (line("x"), line("y")),
        (ring(&["x", "y"], &["x*y"], true, true), line("z")),
        (ring(&["a", "b", "c"], &["a*c - b^2"], true, true), line("t")),
        (weighted(&["a", "b"], &[2, 3], &["a^3 - b^2"], true, true), line("t")),
        (fermat(&["x", "y", "z"]), fermat(&["u", "v", "w"])),
    ];
    for (a, b) in &pairs {
        let r = ok(fiber_product(a, b))?;
        let d = ok(a.dimension())?.max(ok(b.dimension())?);
        let direct = ok(diff_trace(&r, d))?;
        ensure(ok(direct.equals(&ok(predicted_fiber_trace(a, b))?))?, format!("{r}: predicted ≠ direct"))?;
    }
    let r = ok(fiber_product(&pairs[0].0, &pairs[0].1))?;
    ensure(r.to_string() == "Q[x,y,z]/(x*y, x*z)", "mismatch pair is not the plane and line")?;
    ensure(ok(ok(diff_trace(&r, 2))?.equals(&ideal(&r, &["y", "z"])))?, "mismatch pair trace ≠ (y,z)")
}

fn c2f() -> Check {
    let rings = [fermat(&["x", "y", "z"]), ring(&["x", "y"], &["x*y"], true, true), ring(&["a", "b", "c"], &["a*c - b^2"], true, true)];
    for s in &rings {
        let t = ok(singular_locus_trace(s))?;
        let j = ok(singular_locus_jacobian(s))?;
        ensure(ok(radical_equal(&t, &j))?, format!("{s}: radicals differ"))?;
    }
    Ok(())
}

fn c2g() -> Check {
    let mut checked = 0;
    for n in 1..=5 {
        for d in all_complexes(n) {
            let comps = d.components();
            if !comps.iter().all(SimplicialComplex::is_pure) {
                continue;
            }
            let sr = ok(stanley_reisner_algebra(&d))?;
            let algebraic = ok(is_nearly_regular(&sr.algebra))?;
            ensure(ok(combinatorial_nearly_regular(&d))? == algebraic, format!("{d}: nearly-regular disagrees"))?;
            if comps.len() == 1 {
                ensure(ok(is_regular_via_trace(&sr.algebra))? == d.is_simplex(), format!("{d}: regular ≠ simplex"))?;
            }
            checked += 1;
        }
    }
    ensure(checked > 2000, format!("only {checked} complexes"))
}

fn c2h() -> Check {
    let names = ["x1", "x2", "x3"];
    for d in 1..=3 {
        ensure(ok(polynomial_rank(&ring(&names[..d], &[], true, true)))? == d, format!("p.rk of Q[x1..x{d}]"))?;
    }
    ensure(ok(polynomial_rank(&ring(&["x", "y"], &["x*y"], true, true)))? == 0, "p.rk Q[x,y]/(xy)")?;
    ensure(ok(polynomial_rank(&ring(&["x", "y", "z"], &["x*y"], true, true)))? == 1, "p.rk Q[x,y,z]/(xy)")
}

fn random_homogeneous(rng: &mut ChaCha8Rng, sig: &RingSignature, degree: u64) -> Polynomial {
    fn all(w: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let mut e = 0u32;
        while e as u64 * w[i] as u64 <= left {
            cur[i] = e;
            all(w, i + 1, left - e as u64 * w[i] as u64, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut monos = Vec::new();
    all(sig.weights(), 0, degree, &mut vec![0; sig.nvars()], &mut monos);
    let terms: Vec<_> = (0..rng.gen_range(1..=4))
        .filter_map(|_| {
            let m = monos.get(rng.gen_range(0..monos.len().max(1)))?.clone();
            Some((m, integer(rng.gen_range(-5..=5))))
        })
        .collect();
    Polynomial::from_terms(sig, terms)
}

fn c3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let names = ["x", "y", "z", "w"];
    // Euler identity
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let sig = ok(RingSignature::new(names[..n].to_vec(), weights))?;
        let d = rng.gen_range(1..=6);
        let f = random_homogeneous(&mut rng, &sig, d);
        let mut euler = Polynomial::zero(&sig);
        for i in 0..n {
            let xi = Polynomial::var(&sig, i).scale(&integer(sig.weight(i) as i64));
            euler = &euler + &(&xi * &f.partial_derivative(i));
        }
        ensure(euler == f.scale(&integer(d as i64)), format!("Euler fails for {f}"))?;
    }
    // reduced bases do not depend on generator order
    let sig = ok(RingSignature::standard(&names[..3]))?;
    for _ in 0..20 {
        let gens: Vec<Polynomial> = (0..3).map(|_| {
            let d = rng.gen_range(1..=3);
            random_homogeneous(&mut rng, &sig, d)
        }).collect();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.rotate_left(1);
        let a = ok(IdealHandle::new(&sig, gens))?;
        let b = ok(IdealHandle::new(&sig, shuffled))?;
        ensure(ok(a.groebner_basis())? == ok(b.groebner_basis())?, "reduced bases differ")?;
    }
    // kernels are sound
    for e in corpus::corpus() {
        let s = &e.ring;
        let omega = kaehler_presentation(s);
        for k in 1..=ok(s.dimension())? + 1 {
            let b = exterior_power_presentation(&omega, k).relations().transpose();
            for v in &ok(syzygies(&b, s))?.vectors {
                for x in b.mul_vector(v) {
                    ensure(ok(s.reduce(&x))?.is_zero(), format!("{}: unsound kernel vector", e.name))?;
                }
            }
        }
    }
    // exterior powers of free modules are free
    let s = ring(&["x", "y"], &["x*y"], true, true);
    for m in 0..=5 {
        for k in 0..=m {
            let w = exterior_power_presentation(&ModulePresentation::free(&s, m), k);
            ensure(w.target_rank() == subsets(m, k).len() && w.relations().is_zero(), format!("∧^{k} of rank {m}"))?;
        }
    }
    Ok(())
}

fn rings_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../rings")
}

fn cli(args: &[&str]) -> Result<(Option<i32>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_omegatrace")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code(), out.stdout))
}

fn c4() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| rings_dir().join(name).display().to_string();
    let v3 = dir.path().join("v3.ring");
    let (_, out) = cli(&["--json", "veronese", "--ring", &path("plane.ring"), "--degree", "3"])?;
    let doc: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    std::fs::write(&v3, doc["ring_file"].as_str().unwrap_or_default()).map_err(|e| e.to_string())?;
    let v3 = v3.display().to_string();
    let (plane_and_line, fermat, plane) = (path("plane_and_line.ring"), path("fermat.ring"), path("plane.ring"));
    let golden: [Vec<&str>; 5] = [
        vec!["--json", "trace", "--ring", &plane_and_line, "--power", "2"],
        vec!["--json", "classify", "--ring", &plane_and_line],
        vec!["--json", "trace", "--ring", &fermat, "--power", "2"],
        vec!["--json", "veronese", "--ring", &plane, "--degree", "3"],
        vec!["--json", "trace", "--ring", &v3, "--power", "2"],
    ];
    for args in &golden {
        let (code, first) = cli(args)?;
        ensure(code == Some(0), format!("{args:?} exited with {code:?}"))?;
        for _ in 0..3 {
            ensure(cli(args)?.1 == first, format!("{args:?} output changed between runs"))?;
        }
    }
    let bad = dir.path().join("bad.ring");
    std::fs::write(&bad, "vars: x, y\nideal: x*(y\n").map_err(|e| e.to_string())?;
    let inhom = dir.path().join("inhom.ring");
    std::fs::write(&inhom, "vars: x, y\nideal: x^2 + y\n").map_err(|e| e.to_string())?;
    let codes = [
        (vec!["trace", "--ring", bad.to_str().unwrap_or_default(), "--power", "1"], 2),
        (vec!["--max-steps", "1", "trace", "--ring", &fermat, "--power", "2"], 3),
        (vec!["trace", "--ring", inhom.to_str().unwrap_or_default(), "--power", "1"], 4),
    ];
    for (args, want) in &codes {
        let (code, _) = cli(args)?;
        ensure(code == Some(*want), format!("{args:?}: exit {code:?}, want {want}"))?;
    }
    golden_values_on_the_command_line()
}

fn golden_values_on_the_command_line() -> Check {
    let path = |name: &str| rings_dir().join(name).display().to_string();
    let doc = |args: &[&str]| -> Result<serde_json::Value, String> {
        serde_json::from_slice(&cli(args)?.1).map_err(|e| e.to_string())
    };
    let t = doc(&["--json", "trace", "--ring", &path("plane_and_line.ring"), "--power", "2"])?;
    ensure(t["trace"] == serde_json::json!(["y", "z"]), format!("1a trace {}", t["trace"]))?;
    let t = doc(&["--json", "trace", "--ring", &path("fermat.ring"), "--power", "2"])?;
    ensure(t["trace"] == serde_json::json!(["x^2", "y^2", "z^2"]), format!("1b trace {}", t["trace"]))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("1a", "Q[x,y,z]/(xy,xz): tr(Ω²) = (y,z), dim 2", c1a),
        ("1b", "Fermat cubic: tr(Ω²) = (x²,y²,z²) ≠ m", c1b),
        ("1c", "third Veronese of Q[x,y]: tr(Ω²) = m² ≠ m", c1c),
        ("2a", "trace chain and unit propagation on the corpus", c2a),
        ("2b", "tr(Ω^(dim+1)) = 0 on reduced corpus rings", c2b),
        ("2c", "m ⊆ tr(Ω¹), equality when p.rk = 0", c2c),
        ("2d", "tensor formula on 6 pairs", c2d),
        ("2e", "fiber formula on 6 pairs with the dimension mismatch", c2e),
        ("2f", "singular locus from trace and Jacobian agree", c2f),
        ("2g", "Stanley-Reisner nearly-regular and simplex criteria, ≤ 5 vertices", c2g),
        ("2h", "polynomial ranks", c2h),
        ("3", "engine suites: Euler, basis order invariance, kernel soundness, free exterior powers", c3),
        ("4", "CLI determinism and exit codes 2/3/4", c4),
    ];
    let mut failed = 0;
    for (id, desc, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match result {
            Ok(()) => println!("PASS {id} {desc}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {desc}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
