//! Named example algebras, automorphisms and setups.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::decomposition::{SetupSpec, UnitChoice};
use crate::error::{Error, Result};
use crate::gradings::Automorphism;
use crate::laurent::{quotient_to_finite, LaurentDerivation, LoopSetup, SDerivation, Style, TPower};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn build(field: &Field, basis: Vec<String>, f: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Algebra {
    let n = basis.len();
    let table = (0..n)
        .map(|i| (0..n).map(|j| f(i, j).into_iter().map(|(k, c)| (k, field.from_int(c))).collect()).collect())
        .collect();
    Algebra::new(field, basis, table).expect("catalog tables are well formed")
}

/// `sl₂` in the basis `(e, h, f)`: `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
pub fn sl2(field: &Field) -> Algebra {
    build(field, names(&["e", "h", "f"]), |i, j| match (i, j) {
        (0, 1) => vec![(0, -2)],
        (0, 2) => vec![(1, 1)],
        (1, 0) => vec![(0, 2)],
        (1, 2) => vec![(2, -2)],
        (2, 0) => vec![(1, -1)],
        (2, 1) => vec![(2, 2)],
        _ => vec![],
    })
}

/// The Lie algebra with basis `(x, y, h)`: `[x,y] = 2h`, `[h,x] = 2y`,
/// `[h,y] = 2x`.
pub fn sl2_graded_variant(field: &Field) -> Algebra {
    build(field, names(&["x", "y", "h"]), |i, j| match (i, j) {
        (0, 1) => vec![(2, 2)],
        (1, 0) => vec![(2, -2)],
        (2, 0) => vec![(1, 2)],
        (0, 2) => vec![(1, -2)],
        (2, 1) => vec![(0, 2)],
        (1, 2) => vec![(0, -2)],
        _ => vec![],
    })
}

/// `k[x]/(x²)` in the basis `(1, x)`.
pub fn dual_numbers(field: &Field) -> Algebra {
    build(field, names(&["1", "x"]), |i, j| if i + j <= 1 { vec![(i + j, 1)] } else { vec![] })
}

/// `k[z]/(z^n - 1)`, the group algebra of ℤ_n, in the basis `(1, z, …, z^{n-1})`.
pub fn group_algebra(field: &Field, n: usize) -> Algebra {
    let basis = (0..n)
        .map(|k| match k {
            0 => String::from("1"),
            1 => String::from("z"),
            _ => format!("z^{k}"),
        })
        .collect();
    build(field, basis, |i, j| vec![((i + j) % n, 1)])
}

/// The `n`-dimensional algebra with all products zero.
pub fn zero_product(field: &Field, n: usize) -> Algebra {
    build(field, (0..n).map(|k| format!("b{k}")).collect(), |_, _| vec![])
}

/// The one-dimensional unital algebra `k`.
pub fn ground_field(field: &Field) -> Algebra {
    build(field, names(&["1"]), |_, _| vec![(0, 1)])
}

/// `e ↦ -e, h ↦ h, f ↦ -f` on [`sl2`], period 2.
pub fn sl2_sign_automorphism(a: &Algebra) -> Automorphism {
    diagonal_automorphism(a, &[-1, 1, -1], 2)
}

/// `x ↦ x, y ↦ -y, h ↦ -h` on [`sl2_graded_variant`], period 2.
pub fn chevalley_automorphism(a: &Algebra) -> Automorphism {
    diagonal_automorphism(a, &[1, -1, -1], 2)
}

fn diagonal_automorphism(a: &Algebra, signs: &[i64], m: u64) -> Automorphism {
    let f = a.field();
    let mut t = Matrix::zeros(f, a.dim(), a.dim());
    for (k, s) in signs.iter().enumerate() {
        t.set(k, k, f.from_int(*s));
    }
    Automorphism::check(a, t, m).expect("catalog automorphism")
}

/// `z^k ↦ λ^k z^k` on [`group_algebra`], checked to have period `m`.
pub fn scaling_automorphism(s: &Algebra, lambda: &Scalar, m: u64) -> Result<Automorphism> {
    let f = s.field();
    let mut t = Matrix::zeros(f, s.dim(), s.dim());
    for k in 0..s.dim() {
        t.set(k, k, f.pow(lambda, k as i64)?);
    }
    Automorphism::check(s, t, m)
}

/// Every finite catalog algebra.
pub fn finite_algebras(field: &Field) -> Vec<Algebra> {
    vec![
        sl2(field),
        sl2_graded_variant(field),
        dual_numbers(field),
        group_algebra(field, 2),
        group_algebra(field, 3),
        group_algebra(field, 4),
        zero_product(field, 2),
        ground_field(field),
    ]
}

/// Catalog algebras with a finite-order automorphism available over `field`.
pub fn graded_algebras(field: &Field) -> Vec<(Algebra, Automorphism)> {
    let minus_one = field.from_int(-1);
    let mut out = Vec::new();
    let a = sl2(field);
    out.push((a.clone(), Automorphism::identity(&a, 1)));
    out.push((a.clone(), sl2_sign_automorphism(&a)));
    let b = sl2_graded_variant(field);
    out.push((b.clone(), chevalley_automorphism(&b)));
    let d = dual_numbers(field);
    out.push((d.clone(), scaling_automorphism(&d, &minus_one, 2).expect("x ↦ -x")));
    let s = group_algebra(field, 4);
    out.push((s.clone(), scaling_automorphism(&s, &minus_one, 2).expect("z ↦ -z")));
    if let Some(w) = field.primitive_root(4) {
        out.push((s.clone(), scaling_automorphism(&s, &w, 4).expect("z ↦ ωz")));
    }
    out
}

/// Names accepted by [`algebra_by_name`].
pub const ALGEBRAS: &[&str] = &[
    "sl2",
    "sl2-graded-variant",
    "dual-numbers",
    "group-algebra(n)",
    "zero-product(n)",
    "ground-field",
];

/// Names accepted by [`setup_by_name`].
pub const SETUPS: &[&str] = &["sl2-twisted-flagship", "quotient-laurent(N,m)"];

/// Laurent examples.
pub const LOOP_EXAMPLES: &[&str] = &["exaBM-laurent", "last-exa-i", "last-exa-ii(m,n)"];

fn parse_args(name: &str, prefix: &str) -> Option<Vec<i64>> {
    let inner = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|t| t.trim().parse::<i64>().ok()).collect()
}

/// Looks up a catalog algebra, e.g. `sl2` or `group-algebra(4)`.
pub fn algebra_by_name(name: &str, field: &Field) -> Result<Algebra> {
    let unknown = || Error::Parse { pos: 0, msg: format!("unknown catalog algebra '{name}'") };
    let positive = |args: Option<Vec<i64>>| match args.as_deref() {
        Some([n]) if *n >= 1 => Ok(*n as usize),
        _ => Err(unknown()),
    };
    match name {
        "sl2" => Ok(sl2(field)),
        "sl2-graded-variant" => Ok(sl2_graded_variant(field)),
        "dual-numbers" => Ok(dual_numbers(field)),
        "ground-field" | "k" => Ok(ground_field(field)),
        _ if name.starts_with("group-algebra") => Ok(group_algebra(field, positive(parse_args(name, "group-algebra"))?)),
        _ if name.starts_with("zero-product") => Ok(zero_product(field, positive(parse_args(name, "zero-product"))?)),
        _ => Err(unknown()),
    }
}

/// `sl₂ ⊗ k[z]/(z⁴ - 1)` with `m = 2`, `σ₁` the sign automorphism,
/// `σ₂(z) = -z` and `u = z`.
pub fn flagship_spec(field: &Field) -> SetupSpec {
    let a = sl2(field);
    let s = group_algebra(field, 4);
    let sigma1 = sl2_sign_automorphism(&a).matrix().clone();
    let sigma2 = scaling_automorphism(&s, &field.from_int(-1), 2).expect("z ↦ -z").matrix().clone();
    SetupSpec { a, s, sigma1, sigma2, m: 2, unit: UnitChoice::Explicit(s_basis(field, 4, 1)) }
}

fn s_basis(field: &Field, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[k] = field.one();
    v
}

/// `u = z` in the forward style and `u = z⁻¹` in the inverse style, both in `S_1̄`.
pub fn default_u_exp(style: Style) -> i64 {
    match style {
        Style::Forward => 1,
        Style::Inverse => -1,
    }
}

/// `k ⊗ k[z^{±1}]` with `σ₁ = id`, period `m`, and the given style.
pub fn laurent_over_ground_field(field: &Field, m: u64, style: Style) -> Result<LoopSetup> {
    LoopSetup::trivial(ground_field(field), m, style, default_u_exp(style))
}

/// The quotient of [`laurent_over_ground_field`] by `z^{Nm} = 1`.
pub fn quotient_laurent_spec(field: &Field, n: usize, m: u64, style: Style) -> Result<SetupSpec> {
    Ok(quotient_to_finite(&laurent_over_ground_field(field, m, style)?, n)?.spec)
}

/// Looks up a catalog setup, e.g. `sl2-twisted-flagship` or
/// `quotient-laurent(5,4)`.
pub fn setup_by_name(name: &str, field: &Field, style: Style) -> Result<SetupSpec> {
    if name == "sl2-twisted-flagship" {
        return Ok(flagship_spec(field));
    }
    match parse_args(name, "quotient-laurent").as_deref() {
        Some([n, m]) if *n >= 1 && *m >= 1 => quotient_laurent_spec(field, *n as usize, *m as u64, style),
        _ => Err(Error::Parse { pos: 0, msg: format!("unknown catalog setup '{name}'") }),
    }
}

/// `k ⊗ k[z^{±1}]` over ℚ, `m = 4`, forward style, `u = z`, with
/// `d = z d/dz` restricted to the fixed points.
pub fn exa_bm(field: &Field) -> Result<(LoopSetup, SDerivation)> {
    let ls = laurent_over_ground_field(field, 4, Style::Forward)?;
    Ok((ls, SDerivation(LaurentDerivation::monomial(field, field.one(), 1))))
}

/// Same data as [`exa_bm`], evaluated through φ.
pub fn last_exa_i(field: &Field) -> Result<(LoopSetup, SDerivation)> {
    exa_bm(field)
}

/// `k ⊗ k[z^{±1}]`, inverse style, `u = z⁻¹`, with `d = t^{n+1} d/dt` on
/// `S_0̄ = k[t^{±1}]`, `t = z^m`.
pub fn last_exa_ii(field: &Field, m: u64, n: i64) -> Result<(LoopSetup, TPower)> {
    Ok((laurent_over_ground_field(field, m, Style::Inverse)?, TPower { n }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::Setup;

    #[test]
    fn every_entry_constructs() {
        let f = Field::rational();
        for a in finite_algebras(&f) {
            assert_eq!(a.properties().product_span.ambient(), a.dim());
        }
        for (a, s) in graded_algebras(&Field::cyclotomic(4).unwrap()) {
            assert_eq!(s.dim(), a.dim());
        }
        for name in ["sl2", "sl2-graded-variant", "dual-numbers", "group-algebra(3)", "zero-product(2)", "ground-field"] {
            algebra_by_name(name, &f).unwrap();
        }
        assert!(algebra_by_name("group-algebra(0)", &f).is_err());
        assert!(algebra_by_name("nope", &f).is_err());
        Setup::new(flagship_spec(&f)).unwrap();
        Setup::new(setup_by_name("quotient-laurent(1,2)", &f, Style::Inverse).unwrap()).unwrap();
        exa_bm(&f).unwrap();
        last_exa_ii(&f, 3, -1).unwrap();
    }

    #[test]
    fn graded_variant_is_a_perfect_lie_algebra() {
        let f = Field::rational();
        let a = sl2_graded_variant(&f);
        assert!(a.is_perfect());
        for i in 0..3 {
            let x = a.basis_vector(i);
            assert!(a.multiply(&x, &x).unwrap().iter().all(|c| f.is_zero(c)));
        }
        let (x, y, h) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
        let jacobi = [
            a.multiply(&x, &a.multiply(&y, &h).unwrap()).unwrap(),
            a.multiply(&y, &a.multiply(&h, &x).unwrap()).unwrap(),
            a.multiply(&h, &a.multiply(&x, &y).unwrap()).unwrap(),
        ];
        for k in 0..3 {
            let sum = f.add(&f.add(&jacobi[0][k], &jacobi[1][k]), &jacobi[2][k]);
            assert!(f.is_zero(&sum));
        }
    }
}
