//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//! Each criterion runs through the CLI entry point, and its output is
//! checked against expected values or against a second computation.

use std::time::{Duration, Instant};

use loopder::report::ReportJson;
use loopder::run;
use loopder_core::catalog;
use loopder_core::decomposition::{extend_phi, extend_phi_n, Branch};
use loopder_core::gradings::{grading_from_automorphism, omega};
use loopder_core::laurent::Style;
use loopder_core::scalar::cyclotomic_polynomial;
use loopder_core::{Algebra, Automorphism, Field, Matrix, Scalar, Setup, Subspace};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs the CLI with `--json` and parses the report; `code` is the
/// expected exit status.
fn report(args: &[&str], code: i32) -> Result<ReportJson, String> {
    let mut argv: Vec<&str> = args.to_vec();
    argv.push("--json");
    let out = run(argv.iter().copied());
    if out.code != code {
        return Err(format!("`{}` exited {} (expected {code}): {}", args.join(" "), out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| format!("`{}`: bad report: {e}", args.join(" ")))
}

fn value<'a>(r: &'a ReportJson, key: &str) -> Result<&'a str, String> {
    r.values.get(key).map(String::as_str).ok_or_else(|| format!("report lacks value '{key}'"))
}

fn dim(r: &ReportJson, key: &str) -> Result<usize, String> {
    r.dimensions.get(key).copied().ok_or_else(|| format!("report lacks dimension '{key}'"))
}

fn assertion_passes(r: &ReportJson, name: &str) -> Check {
    match r.assertions.iter().find(|a| a.name == name) {
        Some(a) if a.pass => Ok(()),
        Some(a) => Err(format!("assertion '{name}' failed: {:?}", a.witness)),
        None => Err(format!("report lacks assertion '{name}'")),
    }
}

fn passes(r: &ReportJson) -> Check {
    ensure(r.verdict == "pass", format!("{} verdict is {}", r.claim, r.verdict))
}

fn criterion_1() -> Check {
    let r = report(&["counterexample-bm"], 0)?;
    passes(&r)?;
    ensure(value(&r, "D(1⊗z^5)")? == "4(1⊗z^5)", "D(1⊗z^5)")?;
    ensure(value(&r, "D(1⊗z^3)")? == "0", "D(1⊗z^3)")?;
    ensure(value(&r, "D(1⊗z^2)")? == "0", "D(1⊗z^2)")?;
    ensure(
        value(&r, "D((1⊗z^2)(1⊗z^3)) - D(1⊗z^2)(1⊗z^3) - (1⊗z^2)D(1⊗z^3)")? == "4(1⊗z^5) ≠ 0",
        "Leibniz defect",
    )?;
    let text = run(["counterexample-bm"]).stdout;
    for line in ["D(1⊗z^5) = 4(1⊗z^5)", "D(1⊗z^3) = 0", "D(1⊗z^2) = 0", "4(1⊗z^5) ≠ 0"] {
        ensure(text.contains(line), format!("text output lacks '{line}'"))?;
    }
    Ok(())
}

/// `(j/m) z^{j+nm}` rendered as the CLI renders loop elements.
fn expected_last_exa_ii(f: &Field, m: i64, n: i64, j: i64) -> String {
    let c = f.parse(&format!("{j}/{m}")).expect("rational literal");
    let mono = format!("1⊗z^{}", j + n * m);
    if f.is_zero(&c) {
        "0".into()
    } else if f.is_one(&c) {
        mono
    } else {
        format!("{c}({mono})")
    }
}

fn criterion_2() -> Check {
    let r = report(&["phi-eval", "--example", "last-exa-i"], 0)?;
    passes(&r)?;
    ensure(value(&r, "phi(d)(1⊗z^2)")? == "2(1⊗z^2)", "phi(d)(1⊗z^2)")?;
    ensure(value(&r, "phi(d)(1⊗z^5)")? == "5(1⊗z^5)", "phi(d)(1⊗z^5)")?;
    let f = Field::rational();
    for m in 2..=4i64 {
        for n in -2..=2i64 {
            let name = format!("last-exa-ii({m},{n})");
            let r = report(&["phi-eval", "--example", &name], 0)?;
            passes(&r)?;
            assertion_passes(&r, "phi(t^(n+1) d/dt) = m^-1 z^(nm+1) d/dz on z^j, |j| <= 2m")?;
            for j in -2 * m..=2 * m {
                let got = value(&r, &format!("phi(d)(1⊗z^{j})"))?;
                let want = expected_last_exa_ii(&f, m, n, j);
                ensure(got == want, format!("{name}, j = {j}: {got} vs {want}"))?;
            }
        }
    }
    Ok(())
}

const A_NAMES: [&str; 2] = ["sl2", "sl2-graded-variant"];
const S_NAMES: [&str; 4] = ["dual-numbers", "group-algebra(3)", "group-algebra(4)", "group-algebra(2)"];

fn criterion_3() -> Check {
    for a in A_NAMES {
        for s in S_NAMES {
            let r = report(&["verify-thm1", "--algebra", a, "--s", s], 0)?;
            passes(&r)?;
            let lhs = dim(&r, "D(A(x)S)")?;
            let rhs = dim(&r, "D(A)")? * dim(&r, "S")? + dim(&r, "C(A)")? * dim(&r, "D(S)")?;
            ensure(lhs == rhs, format!("{a} (x) {s}: {lhs} != {rhs}"))?;
            assertion_passes(&r, "sum of images equals D(A(x)S)")?;
            assertion_passes(&r, "images intersect trivially")?;
            let alone = report(&["derive", "--algebra", a, "--s", s], 0)?;
            ensure(dim(&alone, "D")? == lhs, format!("{a} (x) {s}: derive disagrees"))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let r = report(&["verify-thm2", "--setup", "sl2-twisted-flagship"], 0)?;
    passes(&r)?;
    for name in [
        "pi injective",
        "pi surjective",
        "phi(pi(D)) = D on a basis",
        "pi(phi(d)) = d on a basis, phi(d) a degree-0 derivation",
    ] {
        assertion_passes(&r, name)?;
    }
    ensure(dim(&r, "D((A(x)S)_0)")? == 6, "dim D((A(x)S)_0) != 6")?;
    ensure(dim(&r, "graded dimension formula")? == 6, "graded dimension formula != 6")?;
    ensure(dim(&r, "rank pi")? == 6, "rank pi != 6")?;
    Ok(())
}

fn criterion_5() -> Check {
    for a in A_NAMES {
        for s in S_NAMES {
            let r = report(&["verify-lemma21", "--algebra", a, "--s", s, "--budget", "25"], 0)?;
            passes(&r)?;
            ensure(dim(&r, "random samples split")? == 25, "sample count")?;
            assertion_passes(&r, "random derivations split as d + remainder")?;
            assertion_passes(&r, "D_S and D_{A(x)1} intersect trivially")?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    for a in A_NAMES {
        for s in S_NAMES.iter().copied().chain(["ground-field"]) {
            let r = report(&["psi-check", "--algebra", a, "--s", s], 0)?;
            passes(&r)?;
            ensure(dim(&r, "C(A(x)S)")? == dim(&r, "C(A)")? * dim(&r, "S")?, format!("{a} (x) {s}"))?;
            assertion_passes(&r, "psi injective")?;
            assertion_passes(&r, "psi surjective")?;
        }
    }
    let out = run(["psi-check", "--algebra", "zero-product(2)", "--s", "dual-numbers"]);
    ensure(out.code == 3 && out.stderr.contains("not perfect"), format!("zero product not refused: {out:?}"))
}

fn criterion_7() -> Check {
    let r = report(&["lemma-identities", "--setup", "sl2-twisted-flagship"], 0)?;
    passes(&r)?;
    for name in ["formula 1", "formula 2", "formula 3", "formula 4", "identity *I", "identity *II", "identity *III"] {
        assertion_passes(&r, name)?;
        ensure(dim(&r, &format!("{name} instances"))? > 0, format!("{name}: no instances"))?;
    }
    ensure(dim(&r, "formula 4 wrap cases")? > 0, "no wrap case exercised")
}

fn criterion_8() -> Check {
    let args = ["verify-thm2", "--setup", "quotient-laurent(5,4)", "--field", "prime:5:4"];
    let r = report(&args, 0)?;
    passes(&r)?;
    assertion_passes(&r, "char-p closed form agrees with the char-0 closed form")?;
    assertion_passes(&r, "general-n closed form is independent of n (n = 1, 2, 3)")?;
    let f = Field::prime(5, 4).map_err(|e| e.to_string())?;
    let spec = catalog::setup_by_name("quotient-laurent(5,4)", &f, Style::Forward).map_err(|e| e.to_string())?;
    let setup = Setup::new(spec).map_err(|e| e.to_string())?;
    ensure(setup.der_fixed().dim() > 0, "no derivations to compare")?;
    for d in setup.der_fixed().basis_matrices() {
        let char0 = extend_phi(&setup, &d, Branch::Char0).map_err(|e| e.to_string())?;
        let charp = extend_phi(&setup, &d, Branch::CharP).map_err(|e| e.to_string())?;
        ensure(char0 == charp, "char-p and char-0 branches differ")?;
        for n in 1..=3 {
            ensure(extend_phi_n(&setup, &d, n).map_err(|e| e.to_string())? == char0, format!("n = {n} differs"))?;
        }
    }
    Ok(())
}

fn test_fields() -> Vec<Field> {
    let mut fields = vec![Field::rational()];
    for m in [3, 4, 5, 8, 12] {
        fields.push(Field::cyclotomic(m).expect("cyclotomic field"));
    }
    for (p, m) in [(5, 4), (7, 3), (13, 12)] {
        fields.push(Field::prime(p, m).expect("prime field"));
    }
    fields
}

/// A field element from small integers: `Σ c_k ζ^k / den`.
fn element(f: &Field, coeffs: &[i64], den: i64) -> Scalar {
    let z = f.zeta();
    let mut acc = f.zero();
    let mut pw = f.one();
    for &c in coeffs {
        acc = f.add(&acc, &f.mul(&f.from_int(c), &pw));
        pw = f.mul(&pw, &z);
    }
    f.div(&acc, &f.from_int(den)).unwrap_or(acc)
}

fn scalars() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (proptest::collection::vec(-9i64..=9, 1..5), 1i64..=6)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn prop(run: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>, what: &str) -> Check {
    run.map_err(|e| format!("{what}: {e}"))
}

fn field_axioms() -> Check {
    for f in test_fields() {
        let g = f.clone();
        prop(
            runner(64).run(&(scalars(), scalars(), scalars()), move |((a, da), (b, db), (c, dc))| {
                let (a, b, c) = (element(&g, &a, da), element(&g, &b, db), element(&g, &c, dc));
                prop_assert_eq!(g.add(&a, &b), g.add(&b, &a));
                prop_assert_eq!(g.mul(&a, &b), g.mul(&b, &a));
                prop_assert_eq!(g.add(&g.add(&a, &b), &c), g.add(&a, &g.add(&b, &c)));
                prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
                prop_assert_eq!(g.mul(&a, &g.add(&b, &c)), g.add(&g.mul(&a, &b), &g.mul(&a, &c)));
                prop_assert_eq!(g.add(&a, &g.neg(&a)), g.zero());
                prop_assert_eq!(g.mul(&a, &g.one()), a.clone());
                if !g.is_zero(&a) {
                    let inv = g.inv(&a).map_err(|e| TestCaseError::fail(e.to_string()))?;
                    prop_assert!(g.is_one(&g.mul(&a, &inv)));
                }
                Ok(())
            }),
            &format!("field axioms over {f}"),
        )?;
    }
    Ok(())
}

fn cyclotomic_roots() -> Check {
    for f in test_fields() {
        let m = f.m();
        let z = omega(&f, m).map_err(|e| e.to_string())?;
        let mut acc = f.zero();
        let mut pw = f.one();
        for c in cyclotomic_polynomial(m) {
            let c: i64 = c.to_string().parse().map_err(|_| "coefficient out of range")?;
            acc = f.add(&acc, &f.mul(&f.from_int(c), &pw));
            pw = f.mul(&pw, &z);
        }
        ensure(f.is_zero(&acc), format!("Phi_{m}(omega) != 0 over {f}"))?;
        for k in 1..m {
            ensure(!f.is_one(&f.pow(&z, k as i64).map_err(|e| e.to_string())?), format!("omega not primitive over {f}"))?;
        }
    }
    Ok(())
}

fn matrices() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        (Just(r), Just(c), proptest::collection::vec(prop_oneof![3 => Just(0i64), 4 => -4i64..=4], r * c))
    })
}

fn build(f: &Field, r: usize, c: usize, data: &[i64]) -> Matrix {
    Matrix::from_flat(f, r, c, data.iter().map(|&x| f.from_int(x)).collect()).expect("shape")
}

fn linear_algebra() -> Check {
    for f in [Field::rational(), Field::cyclotomic(3).expect("Q(zeta_3)"), Field::prime(7, 3).expect("F_7")] {
        let g = f.clone();
        prop(
            runner(96).run(&matrices(), move |(r, c, data)| {
                let m = build(&g, r, c, &data);
                let once = m.rref();
                let twice = once.reduced.rref();
                prop_assert_eq!(&twice.reduced, &once.reduced);
                prop_assert_eq!(once.rank + m.kernel().dim(), c);
                prop_assert_eq!(m.transpose().rank(), once.rank);
                for v in m.kernel().basis() {
                    prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| g.is_zero(x)));
                }
                Ok(())
            }),
            &format!("rref / rank-nullity over {f}"),
        )?;
        let g = f.clone();
        let spans = (1usize..=6).prop_flat_map(|n| {
            let vecs = move || proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=4);
            (Just(n), vecs(), vecs())
        });
        prop(
            runner(96).run(&spans, move |(n, us, ws)| {
                let to = |vs: &Vec<Vec<i64>>| {
                    Subspace::from_spanning(&g, n, vs.iter().map(|v| v.iter().map(|&x| g.from_int(x)).collect()).collect())
                        .unwrap()
                };
                let (u, w) = (to(&us), to(&ws));
                let sum = u.sum(&w).unwrap();
                let meet = u.intersect(&w).unwrap();
                prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
                prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
                prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
                Ok(())
            }),
            &format!("Grassmann identity over {f}"),
        )?;
    }
    Ok(())
}

/// Catalog gradings plus random diagonalizable automorphisms of a
/// zero-product algebra, where every invertible map is an automorphism.
fn gradings() -> Check {
    let f = Field::cyclotomic(4).map_err(|e| e.to_string())?;
    for (a, sigma) in catalog::graded_algebras(&f) {
        check_grading(&a, &sigma)?;
    }
    let g = f.clone();
    let strategy = (1usize..=4).prop_flat_map(|n| {
        (Just(n), proptest::collection::vec(0u64..4, n), proptest::collection::vec(-2i64..=2, n * n))
    });
    prop(
        runner(48).run(&strategy, move |(n, degrees, p)| {
            let a = catalog::zero_product(&g, n);
            let mut p = build(&g, n, n, &p);
            if p.rank() < n {
                p = Matrix::identity(&g, n);
            }
            let w = omega(&g, 4).unwrap();
            let mut d = Matrix::zeros(&g, n, n);
            for (k, e) in degrees.iter().enumerate() {
                d.set(k, k, g.pow(&w, *e as i64).unwrap());
            }
            let sigma = p.mul(&d).unwrap().mul(&p.inverse().unwrap()).unwrap();
            let sigma = Automorphism::check(&a, sigma, 4).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check_grading(&a, &sigma).map_err(TestCaseError::fail)
        }),
        "random gradings",
    )
}

fn check_grading(a: &Algebra, sigma: &Automorphism) -> Check {
    let f = a.field();
    let g = grading_from_automorphism(sigma).map_err(|e| e.to_string())?;
    ensure(g.dims().iter().sum::<usize>() == a.dim(), "components do not span")?;
    let all: Vec<Vec<Scalar>> = g.homogeneous_basis().into_iter().map(|(_, v)| v).collect();
    ensure(Subspace::from_spanning(f, a.dim(), all).map_err(|e| e.to_string())?.dim() == a.dim(), "not a basis")?;
    for (i, x) in g.homogeneous_basis() {
        for (j, y) in g.homogeneous_basis() {
            let xy = a.multiply(&x, &y).map_err(|e| e.to_string())?;
            let ok = xy.iter().all(|c| f.is_zero(c)) || g.degree_of(&xy) == Some((i + j) % g.m());
            ensure(ok, format!("product of degrees {i}, {j} is not homogeneous of degree {}", i + j))?;
        }
    }
    let w = omega(f, g.m()).map_err(|e| e.to_string())?;
    ensure(g.reconstruct(&w).map_err(|e| e.to_string())? == *sigma.matrix(), "sigma not reconstructed")
}

fn criterion_9() -> Check {
    field_axioms()?;
    cyclotomic_roots()?;
    linear_algebra()?;
    gradings()
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    check: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "counterexample reproduction", limit: Some(Duration::from_secs(1)), check: criterion_1 },
        Criterion { id: 2, name: "phi formula reproduction", limit: Some(Duration::from_secs(5)), check: criterion_2 },
        Criterion { id: 3, name: "block decomposition dimension identity", limit: Some(Duration::from_secs(60)), check: criterion_3 },
        Criterion { id: 4, name: "restriction map bijectivity", limit: Some(Duration::from_secs(30)), check: criterion_4 },
        Criterion { id: 5, name: "derivation split", limit: None, check: criterion_5 },
        Criterion { id: 6, name: "centroid map psi", limit: None, check: criterion_6 },
        Criterion { id: 7, name: "surjectivity identities", limit: None, check: criterion_7 },
        Criterion { id: 8, name: "char-p branch", limit: None, check: criterion_8 },
        Criterion { id: 9, name: "infrastructure invariants", limit: Some(Duration::from_secs(30)), check: criterion_9 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(()), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
        let ms = elapsed.as_secs_f64() * 1000.0;
        match outcome {
            Ok(()) => println!("PASS criterion {}: {} [exact] ({ms:.0} ms{limit})", c.id, c.name),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {} [exact] ({ms:.0} ms{limit}): {e}", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
