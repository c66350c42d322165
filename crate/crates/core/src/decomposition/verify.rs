//! Checks of the decomposition statements on concrete instances.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::phi::{extend_phi, extend_phi_n, restrict_pi, Branch};
use super::report::VerificationReport;
use super::setup::Setup;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::gradings::endo_component;
use crate::invariants::{
    centroid, centroid_tensor_algebra, derivation_space, is_derivation, kron_vec, leibniz_violation, psi_map,
    relative_derivation_space, right_action_matrix, s_module_derivations_in, vanishing_on_a1_in, EndoSpace, EndoTag,
};
use crate::linalg::Matrix;
use crate::scalar::{FieldKind, Scalar};

fn require_standing(a: &Algebra, s: &Algebra) -> Result<Vec<Scalar>> {
    if a.field() != s.field() {
        return Err(Error::FieldMismatch);
    }
    if !a.is_perfect() {
        return Err(Error::NotPerfect);
    }
    s.require_commutative_associative_unital()
}

/// Splits a derivation `δ` of `A⊗S` as `d + r` with `d(a⊗s) = δ(a⊗1)s`
/// S-linear and `r` vanishing on `A⊗1`; both parts are verified.
pub fn split_derivation(delta: &Matrix, a: &Algebra, s: &Algebra) -> Result<(Matrix, Matrix)> {
    let one = s.require_commutative_associative_unital()?;
    let t = a.tensor_product(s)?;
    if leibniz_violation(&t, delta).is_some() {
        return Err(Error::NotInDomain(String::from("not a derivation of A(x)S")));
    }
    let f = a.field();
    let ns = s.dim();
    let mut cols = Vec::with_capacity(t.dim());
    for i in 0..a.dim() {
        let image = delta.mul_vec(&kron_vec(f, &a.basis_vector(i), &one))?;
        for j in 0..ns {
            let sj = s.basis_vector(j);
            cols.push(image.chunks(ns).flat_map(|c| s.mul_unchecked(c, &sj)).collect());
        }
    }
    let d = Matrix::from_columns(f, t.dim(), &cols)?;
    let r = delta.sub(&d)?;
    if !is_derivation(&t, &d) || !is_derivation(&t, &r) {
        return Err(Error::Invariant(String::from("split parts are not derivations")));
    }
    for j in 0..ns {
        let l = right_action_matrix(a, s, &s.basis_vector(j))?;
        if !d.commutator(&l)?.is_zero() {
            return Err(Error::Invariant(String::from("S-linear part is not S-linear")));
        }
    }
    for i in 0..a.dim() {
        if r.mul_vec(&kron_vec(f, &a.basis_vector(i), &one))?.iter().any(|x| !f.is_zero(x)) {
            return Err(Error::Invariant(String::from("remainder does not vanish on A(x)1")));
        }
    }
    Ok((d, r))
}

/// Images of D(A)⊗S (`d ⊗ L_s`) and C(A)⊗D(S) (`γ ⊗ d'`) inside End(A⊗S).
pub fn tensor_images(
    a: &Algebra,
    s: &Algebra,
    der_a: &EndoSpace,
    cent_a: &EndoSpace,
    der_s: &EndoSpace,
) -> Result<(EndoSpace, EndoSpace)> {
    let f = a.field();
    let n = a.dim() * s.dim();
    let ls: Vec<Matrix> = (0..s.dim()).map(|j| s.left_matrix(&s.basis_vector(j))).collect::<Result<_>>()?;
    let first: Vec<Matrix> = der_a.basis_matrices().iter().flat_map(|d| ls.iter().map(move |l| d.kron(l))).collect();
    let dprimes = der_s.basis_matrices();
    let second: Vec<Matrix> =
        cent_a.basis_matrices().iter().flat_map(|g| dprimes.iter().map(move |d| g.kron(d))).collect();
    Ok((EndoSpace::span(EndoTag::Image, f, n, n, &first)?, EndoSpace::span(EndoTag::Image, f, n, n, &second)?))
}

/// The two images, with every spanning element checked to be a derivation
/// of `A⊗S` and their sum checked to be closed under commutators.
pub fn embed_tensor_derivations(a: &Algebra, s: &Algebra) -> Result<(EndoSpace, EndoSpace)> {
    require_standing(a, s)?;
    let t = a.tensor_product(s)?;
    let (x, y) = tensor_images(a, s, &derivation_space(a), &centroid(a), &derivation_space(s))?;
    for m in x.basis_matrices().iter().chain(&y.basis_matrices()) {
        if !is_derivation(&t, m) {
            return Err(Error::Invariant(String::from("tensor image is not a derivation")));
        }
    }
    let sum = EndoSpace::new(EndoTag::Image, x.rows(), x.cols(), x.space().sum(y.space())?)?;
    if !sum.is_lie_closed() {
        return Err(Error::Invariant(String::from("sum of tensor images is not a Lie subalgebra")));
    }
    Ok((x, y))
}

/// ψ: C(A)⊗S → C(A⊗S).
pub fn verify_psi(a: &Algebra, s: &Algebra) -> Result<VerificationReport> {
    let psi = psi_map(a, s)?;
    let mut r = VerificationReport::new("psi-isomorphism");
    r.hypothesis("A is perfect", true).hypothesis("S is commutative, associative and unital", true);
    r.dim("C(A)", psi.centroid_a.dim())
        .dim("S", s.dim())
        .dim("C(A(x)S)", psi.centroid_tensor.dim())
        .dim("rank psi", psi.rank);
    r.assert("psi injective", psi.injective)
        .assert("psi image inside C(A(x)S)", psi.image_in_centroid)
        .assert("psi surjective", psi.surjective)
        .assert("psi multiplicative", psi.multiplicative)
        .assert("dim C(A(x)S) = dim C(A) * dim S", psi.centroid_tensor.dim() == psi.centroid_a.dim() * s.dim());
    Ok(r)
}

/// D(A⊗S) = D(A)⊗S ⊕ C(A)⊗D(S), with the left side computed by brute force.
pub fn verify_block_decomposition(a: &Algebra, s: &Algebra) -> Result<VerificationReport> {
    require_standing(a, s)?;
    let psi = psi_map(a, s)?;
    if !psi.is_isomorphism() {
        return Err(Error::PsiNotIso);
    }
    let t = a.tensor_product(s)?;
    let der_t = derivation_space(&t);
    let der_a = derivation_space(a);
    let der_s = derivation_space(s);
    let (x, y) = tensor_images(a, s, &der_a, &psi.centroid_a, &der_s)?;
    let expected = der_a.dim() * s.dim() + psi.centroid_a.dim() * der_s.dim();
    let mut r = VerificationReport::new("block-decomposition");
    r.hypothesis("A is perfect", true)
        .hypothesis("S is commutative, associative and unital", true)
        .hypothesis("psi is an isomorphism", true);
    r.dim("D(A)", der_a.dim())
        .dim("C(A)", psi.centroid_a.dim())
        .dim("S", s.dim())
        .dim("D(S)", der_s.dim())
        .dim("D(A(x)S)", der_t.dim())
        .dim("D(A)(x)S", x.dim())
        .dim("C(A)(x)D(S)", y.dim())
        .dim("dim D(A)*dim S + dim C(A)*dim D(S)", expected);
    let sum = x.space().sum(y.space())?;
    r.assert("dim D(A(x)S) = dim D(A)*dim S + dim C(A)*dim D(S)", der_t.dim() == expected)
        .assert("images are injective", x.dim() == der_a.dim() * s.dim() && y.dim() == psi.centroid_a.dim() * der_s.dim())
        .assert("images intersect trivially", x.space().intersect(y.space())?.dim() == 0)
        .assert("sum of images equals D(A(x)S)", sum == *der_t.space());
    Ok(r)
}

/// Coefficient vectors for `count` pseudorandom elements of a space.
fn random_elements(space: &EndoSpace, count: usize, seed: u64) -> Vec<Matrix> {
    let f = space.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coeffs: Vec<Scalar> = (0..space.dim()).map(|_| f.from_int(rng.gen_range(-5i64..=5))).collect();
            space.combine(&coeffs)
        })
        .collect()
}

/// D(A⊗S) = D_S(A⊗S) ⊕ D_{A⊗1}(A⊗S), with `samples` pseudorandom
/// derivations split explicitly, and the dimension identity
/// dim D_{A⊗1}(A⊗S) = dim D(1⊗S, C(A)⊗S) when ψ is an isomorphism.
pub fn verify_derivation_split(a: &Algebra, s: &Algebra, samples: usize, seed: u64) -> Result<VerificationReport> {
    s.require_commutative_associative_unital()?;
    let t = a.tensor_product(s)?;
    let der_t = derivation_space(&t);
    let ds = s_module_derivations_in(&der_t, a, s)?;
    let dv = vanishing_on_a1_in(&der_t, a, s)?;
    let mut r = VerificationReport::new("derivation-split");
    r.hypothesis("S is commutative, associative and unital", true);
    r.dim("D(A(x)S)", der_t.dim()).dim("D_S(A(x)S)", ds.dim()).dim("D_{A(x)1}(A(x)S)", dv.dim());
    r.assert("D_S and D_{A(x)1} intersect trivially", ds.space().intersect(dv.space())?.dim() == 0)
        .assert(
            "D_S + D_{A(x)1} = D(A(x)S)",
            ds.space().is_direct_sum_decomposition_of(dv.space(), der_t.dim())? && ds.space().sum(dv.space())? == *der_t.space(),
        );
    let mut witness = None;
    for (k, delta) in random_elements(&der_t, samples, seed).iter().enumerate() {
        match split_derivation(delta, a, s) {
            Ok((d, rem)) => {
                if !ds.contains(&d) || !dv.contains(&rem) || d.add(&rem)? != *delta {
                    witness = Some(format!("sample {k}: split parts outside D_S / D_(A(x)1)"));
                    break;
                }
            }
            Err(e) => {
                witness = Some(format!("sample {k}: {e}"));
                break;
            }
        }
    }
    r.dim("random samples split", samples);
    r.assert_witness("random derivations split as d + remainder", witness);
    if a.is_perfect() {
        let psi = psi_map(a, s)?;
        if psi.is_isomorphism() {
            let (cs, one_s) = centroid_tensor_algebra(&psi.centroid_a, s)?;
            let rel = relative_derivation_space(&cs, &one_s)?;
            r.dim("D(1(x)S, C(A)(x)S)", rel.dim());
            r.assert("dim D_{A(x)1}(A(x)S) = dim D(1(x)S, C(A)(x)S)", rel.dim() == dv.dim());
        }
    }
    Ok(r)
}

/// For each residue j̄: (D(A⊗S))_j̄ = Σ_k̄ D(A)_k̄ ⊗ S_{j̄-k̄} ⊕ Σ_k̄ C(A)_k̄ ⊗ D(S)_{j̄-k̄}.
pub fn verify_graded_decomposition(setup: &Setup) -> Result<VerificationReport> {
    let f = setup.field();
    let m = setup.m as i64;
    let n = setup.tensor.dim();
    let der_t = setup.der_tensor();
    let grading = setup.grading_der_tensor();
    let mut r = VerificationReport::new("graded-decomposition");
    for h in &setup.hypotheses {
        r.hypothesis(&h.name, h.pass);
    }
    r.dim("D(A(x)S)", der_t.dim());
    let mut total = 0;
    for j in 0..m {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for k in 0..m {
            let das = endo_component(&setup.grading_der_a, &setup.der_a, k);
            let cas = endo_component(&setup.grading_cent_a, &setup.cent_a, k);
            let dss = endo_component(&setup.grading_der_s, &setup.der_s, j - k);
            for d in das.basis_matrices() {
                for sv in setup.grading_s.component(j - k).basis() {
                    first.push(d.kron(&setup.s.left_matrix(sv)?));
                }
            }
            for g in cas.basis_matrices() {
                for d in dss.basis_matrices() {
                    second.push(g.kron(&d));
                }
            }
        }
        let x = EndoSpace::span(EndoTag::Image, f, n, n, &first)?;
        let y = EndoSpace::span(EndoTag::Image, f, n, n, &second)?;
        let comp = grading.component(j);
        let sum = x.space().sum(y.space())?;
        total += comp.dim();
        r.dim(&format!("(D(A(x)S))_{j}"), comp.dim());
        r.dim(&format!("sum D(A)_k (x) S_({j}-k)"), x.dim());
        r.dim(&format!("sum C(A)_k (x) D(S)_({j}-k)"), y.dim());
        r.assert(&format!("degree {j}: images intersect trivially"), x.space().intersect(y.space())?.dim() == 0);
        r.assert(&format!("degree {j}: sum of images equals the graded component"), sum == *comp);
    }
    r.assert("graded dimensions sum to dim D(A(x)S)", total == der_t.dim());
    Ok(r)
}

/// π: (D(A⊗S))_0̄ → D((A⊗S)_0̄) is bijective with inverse φ.
pub fn verify_pi_isomorphism(setup: &Setup) -> Result<VerificationReport> {
    let f = setup.field().clone();
    let source = setup.der_tensor_zero();
    let target = setup.der_fixed();
    let mut r = VerificationReport::new("restriction-isomorphism");
    for h in &setup.hypotheses {
        r.hypothesis(&h.name, h.pass);
    }
    r.dim("A(x)S", setup.tensor.dim())
        .dim("(A(x)S)_0", setup.fixed.dim())
        .dim("(D(A(x)S))_0", source.dim())
        .dim("D((A(x)S)_0)", target.dim())
        .dim("graded dimension formula", setup.graded_dimension_formula());

    let mut columns = Vec::with_capacity(source.dim());
    let mut pi_witness = None;
    for (t, big) in source.basis_matrices().iter().enumerate() {
        let small = restrict_pi(setup, big)?;
        match target.coordinates(&small) {
            Some(c) => columns.push(c),
            None => {
                pi_witness = Some(format!("pi of basis element {t} is not a derivation of the fixed points"));
                break;
            }
        }
    }
    r.assert_witness("pi maps into D((A(x)S)_0)", pi_witness.clone());
    let rank = if pi_witness.is_none() && !columns.is_empty() {
        Matrix::from_columns(&f, target.dim(), &columns)?.rank()
    } else {
        0
    };
    r.dim("rank pi", rank);
    r.assert("pi injective", pi_witness.is_none() && rank == source.dim())
        .assert("pi surjective", pi_witness.is_none() && rank == target.dim());

    let mut witness = None;
    for (t, big) in source.basis_matrices().iter().enumerate() {
        let back = extend_phi(setup, &restrict_pi(setup, big)?, Branch::Char0)?;
        if back != *big {
            witness = Some(format!("basis element {t} of (D(A(x)S))_0"));
            break;
        }
    }
    r.assert_witness("phi(pi(D)) = D on a basis", witness);

    let mut witness = None;
    let mut extensions = Vec::with_capacity(target.dim());
    for (t, d) in target.basis_matrices().iter().enumerate() {
        match extend_phi(setup, d, Branch::Char0) {
            Ok(big) => {
                if restrict_pi(setup, &big)? != *d || !source.contains(&big) {
                    witness = Some(format!("basis element {t} of D((A(x)S)_0)"));
                    break;
                }
                extensions.push(big);
            }
            Err(e) => {
                witness = Some(format!("basis element {t}: {e}"));
                break;
            }
        }
    }
    r.assert_witness("pi(phi(d)) = d on a basis, phi(d) a degree-0 derivation", witness);

    let mut witness = None;
    for (t, d) in target.basis_matrices().iter().enumerate() {
        for n in 2..=3i64 {
            if f.kind() == FieldKind::Prime && n as u64 % f.characteristic() == 0 {
                continue;
            }
            if extend_phi_n(setup, d, n)? != extensions[t] {
                witness = Some(format!("basis element {t}, n = {n}"));
                break;
            }
        }
    }
    r.assert_witness("general-n closed form is independent of n (n = 1, 2, 3)", witness);

    if f.kind() == FieldKind::Prime {
        let mut witness = None;
        for (t, d) in target.basis_matrices().iter().enumerate() {
            if extend_phi(setup, d, Branch::CharP)? != extensions[t] {
                witness = Some(format!("basis element {t}"));
                break;
            }
        }
        r.assert_witness("char-p closed form agrees with the char-0 closed form", witness);
    }

    r.assert(
        "dim D((A(x)S)_0) = sum D(A)_i*dim S_-i + dim C(A)_i*dim D(S)_-i",
        target.dim() == setup.graded_dimension_formula() && source.dim() == target.dim(),
    );
    r.value("u", vec_literal(&setup.unit.u));
    r.value("u'", vec_literal(&setup.unit.u_prime));
    r.value("q", setup.unit.q.to_string());
    Ok(r)
}

pub(crate) fn vec_literal(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
