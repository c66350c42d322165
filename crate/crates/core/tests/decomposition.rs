use loopder_core::catalog;
use loopder_core::decomposition::{
    bm_formula_extend, check_surjectivity_identities, embed_tensor_derivations, extend_phi, extend_phi_n,
    restrict_pi, split_derivation, verify_block_decomposition, verify_derivation_split, verify_graded_decomposition,
    verify_pi_isomorphism, verify_psi, Branch,
};
use loopder_core::invariants::{
    centroid, derivation_space, is_derivation, right_action_matrix, s_module_derivations, vanishing_on_a1_derivations,
};
use loopder_core::{Error, Field, Matrix, Setup, SetupSpec, UnitChoice};

fn q() -> Field {
    Field::rational()
}

fn flagship() -> Setup {
    Setup::new(catalog::flagship_spec(&q())).unwrap()
}

fn ad(a: &loopder_core::Algebra, x: &[loopder_core::Scalar]) -> Matrix {
    a.left_matrix(x).unwrap()
}

#[test]
fn flagship_dimensions() {
    let s = flagship();
    assert_eq!(s.fixed.dim(), 6);
    assert_eq!(s.grading_der_a.dims(), vec![1, 2]);
    assert_eq!(s.grading_s.dims(), vec![2, 2]);
    assert_eq!(s.der_s.dim(), 0);
    assert_eq!(s.der_tensor_zero().dim(), 6);
    assert_eq!(s.der_fixed().dim(), 6);
    assert_eq!(s.graded_dimension_formula(), 6);
}

#[test]
fn flagship_pi_isomorphism_report_passes() {
    let s = flagship();
    let r = verify_pi_isomorphism(&s).unwrap();
    assert!(r.verdict(), "{r:?}");
    assert_eq!(r.dimensions["rank pi"], 6);
}

#[test]
fn flagship_graded_decomposition_passes() {
    let s = flagship();
    let r = verify_graded_decomposition(&s).unwrap();
    assert!(r.verdict(), "{r:?}");
    assert_eq!(r.dimensions["(D(A(x)S))_0"], 6);
}

#[test]
fn flagship_identities_pass_with_wrap_cases() {
    let s = flagship();
    let ds = s.der_fixed().basis_matrices();
    let r = check_surjectivity_identities(&s, &ds, None).unwrap();
    assert!(r.verdict(), "{r:?}");
    assert!(r.dimensions["formula 4 wrap cases"] > 0);
}

#[test]
fn phi_of_pi_on_ad_h() {
    let s = flagship();
    let hx1 = s.pure(&s.a.basis_vector(1), &s.s_one);
    let big = ad(&s.tensor, &hx1);
    assert!(is_derivation(&s.tensor, &big));
    let small = restrict_pi(&s, &big).unwrap();
    let mut off_diagonal_zero = true;
    for r in 0..small.rows() {
        for c in 0..small.cols() {
            if r != c && !s.field().is_zero(&small.get(r, c)) {
                off_diagonal_zero = false;
            }
        }
    }
    assert!(off_diagonal_zero);
    assert_eq!(extend_phi(&s, &small, Branch::Char0).unwrap(), big);
}

#[test]
fn pi_and_phi_are_linear() {
    let s = flagship();
    let f = s.field().clone();
    let src = s.der_tensor_zero().basis_matrices();
    let tgt = s.der_fixed().basis_matrices();
    for k in 0..src.len() - 1 {
        let c = f.from_int(k as i64 - 2);
        let sum = src[k].add(&src[k + 1].scale(&c)).unwrap();
        let lhs = restrict_pi(&s, &sum).unwrap();
        let rhs = restrict_pi(&s, &src[k]).unwrap().add(&restrict_pi(&s, &src[k + 1]).unwrap().scale(&c)).unwrap();
        assert_eq!(lhs, rhs);
        let sum = tgt[k].add(&tgt[k + 1].scale(&c)).unwrap();
        let lhs = extend_phi(&s, &sum, Branch::Char0).unwrap();
        let rhs = extend_phi(&s, &tgt[k], Branch::Char0)
            .unwrap()
            .add(&extend_phi(&s, &tgt[k + 1], Branch::Char0).unwrap().scale(&c))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn restrict_pi_rejects_non_degree_zero() {
    let s = flagship();
    let ex1 = s.pure(&s.a.basis_vector(0), &s.s_one);
    assert!(matches!(restrict_pi(&s, &ad(&s.tensor, &ex1)), Err(Error::NotInDomain(_))));
    let n = s.tensor.dim();
    assert!(restrict_pi(&s, &Matrix::zeros(s.field(), n, n)).unwrap().is_zero());
}

#[test]
fn phi_is_independent_of_n() {
    let s = flagship();
    for d in s.der_fixed().basis_matrices() {
        let one = extend_phi_n(&s, &d, 1).unwrap();
        for n in [-2, -1, 2, 3] {
            assert_eq!(extend_phi_n(&s, &d, n).unwrap(), one);
        }
    }
}

#[test]
fn identity_automorphisms_with_m_one_reduce_to_the_block_decomposition() {
    let f = q();
    let a = catalog::sl2(&f);
    let s = catalog::dual_numbers(&f);
    let spec = SetupSpec {
        sigma1: Matrix::identity(&f, 3),
        sigma2: Matrix::identity(&f, 2),
        a: a.clone(),
        s: s.clone(),
        m: 1,
        unit: UnitChoice::Search { q: 0 },
    };
    let setup = Setup::new(spec).unwrap();
    assert_eq!(setup.fixed.dim(), 6);
    let r = verify_pi_isomorphism(&setup).unwrap();
    assert!(r.verdict(), "{r:?}");
    assert_eq!(setup.der_fixed().dim(), 7);
    for d in setup.der_fixed().basis_matrices() {
        assert_eq!(extend_phi(&setup, &d, Branch::Char0).unwrap(), d);
    }
    assert!(verify_graded_decomposition(&setup).unwrap().verdict());
}

#[test]
fn sigma2_identity_fails_hypothesis_iv() {
    let f = q();
    let mut spec = catalog::flagship_spec(&f);
    spec.sigma2 = Matrix::identity(&f, 4);
    spec.unit = UnitChoice::Search { q: 1 };
    match Setup::new(spec) {
        Err(Error::Hypothesis { item, reason }) => {
            assert_eq!(item, "(iv)");
            assert_eq!(*reason, Error::NoUnitFound { residue: 1 });
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn zero_product_fails_hypothesis_i() {
    let f = q();
    let mut spec = catalog::flagship_spec(&f);
    spec.a = catalog::zero_product(&f, 3);
    assert!(matches!(Setup::new(spec), Err(Error::Hypothesis { item: "(i)", .. })));
}

#[test]
fn bm_formula_agrees_with_phi_when_every_derivation_is_s_linear() {
    let s = flagship();
    assert_eq!(s.der_s.dim(), 0);
    for d in s.der_fixed().basis_matrices() {
        assert_eq!(bm_formula_extend(&s, &d).unwrap(), extend_phi(&s, &d, Branch::Char0).unwrap());
    }
}

#[test]
fn block_decomposition_examples() {
    let f = q();
    let a = catalog::sl2(&f);
    for (s, total) in [(catalog::group_algebra(&f, 3), 9), (catalog::dual_numbers(&f), 7), (catalog::ground_field(&f), 3)] {
        let r = verify_block_decomposition(&a, &s).unwrap();
        assert!(r.verdict(), "{r:?}");
        assert_eq!(r.dimensions["D(A(x)S)"], total);
    }
    assert_eq!(
        verify_block_decomposition(&catalog::zero_product(&f, 2), &catalog::dual_numbers(&f)).unwrap_err(),
        Error::NotPerfect
    );
}

#[test]
fn tensor_images_are_derivation_subalgebras() {
    let f = q();
    let (x, y) = embed_tensor_derivations(&catalog::sl2(&f), &catalog::dual_numbers(&f)).unwrap();
    assert_eq!(x.dim(), 6);
    assert_eq!(y.dim(), 1);
    assert!(x.is_lie_closed());
}

#[test]
fn split_examples() {
    let f = q();
    let a = catalog::sl2(&f);
    let s = catalog::dual_numbers(&f);
    let t = a.tensor_product(&s).unwrap();
    let da = derivation_space(&a).basis_matrices();
    let ls = s.left_matrix(&s.basis_vector(1)).unwrap();
    let delta = da[0].kron(&ls);
    let (d, rem) = split_derivation(&delta, &a, &s).unwrap();
    assert_eq!(d, delta);
    assert!(rem.is_zero());
    let dprime = derivation_space(&s).basis_matrix(0);
    let gamma = centroid(&a).basis_matrix(0);
    let delta2 = gamma.kron(&dprime);
    let (d, rem) = split_derivation(&delta2, &a, &s).unwrap();
    assert!(d.is_zero());
    assert_eq!(rem, delta2);
    let mixed = delta.add(&delta2).unwrap();
    let (d, rem) = split_derivation(&mixed, &a, &s).unwrap();
    assert!(s_module_derivations(&a, &s).unwrap().contains(&d));
    assert!(vanishing_on_a1_derivations(&a, &s).unwrap().contains(&rem));
    assert_eq!(s_module_derivations(&a, &s).unwrap().dim(), 6);
    assert_eq!(vanishing_on_a1_derivations(&a, &s).unwrap().dim(), 1);
    let n = t.dim();
    let not_der = Matrix::identity(&f, n);
    assert!(matches!(split_derivation(&not_der, &a, &s), Err(Error::NotInDomain(_))));
    let _ = right_action_matrix(&a, &s, &s.basis_vector(1)).unwrap();
}

#[test]
fn derivation_split_reports() {
    let f = q();
    for a in [catalog::sl2(&f), catalog::sl2_graded_variant(&f)] {
        for s in [catalog::dual_numbers(&f), catalog::group_algebra(&f, 2)] {
            let r = verify_derivation_split(&a, &s, 5, 7).unwrap();
            assert!(r.verdict(), "{r:?}");
        }
    }
}

#[test]
fn psi_examples() {
    let f = q();
    let r = verify_psi(&catalog::sl2(&f), &catalog::group_algebra(&f, 2)).unwrap();
    assert!(r.verdict());
    assert_eq!(r.dimensions["C(A(x)S)"], 2);
    assert_eq!(verify_psi(&catalog::zero_product(&f, 2), &catalog::ground_field(&f)).unwrap_err(), Error::NotPerfect);
}
