use proptest::prelude::*;
use weakhopf::linalg::{compose, FieldSpec, LinMap, ObjectWord};
use weakhopf::verdict::Status;
use weakhopf::weakhopf::{
    base_subalgebra, check_antipode, check_bialgebra_axioms, conv_inverse, convolve,
    groupoid_algebra, projection_identity_suite, AlgebraData, CoalgebraData, Convolution,
    CoreError, GroupoidPresentation, Projection, WeakBialgebra, WeakHopfAlgebra,
};

const Q: FieldSpec = FieldSpec::Rational;

fn pair2() -> WeakHopfAlgebra {
    groupoid_algebra(&GroupoidPresentation::pair(2), Q).unwrap()
}

fn z2() -> WeakHopfAlgebra {
    groupoid_algebra(
        &GroupoidPresentation::group(&weakhopf::weakhopf::Group::cyclic(2)),
        Q,
    )
    .unwrap()
}

fn h(n: usize) -> ObjectWord {
    ObjectWord::single("H", n)
}

/// Map sending basis vector j to basis vector images[j].
fn basis_map(images: &[usize], n: usize) -> LinMap {
    LinMap::from_fn(Q, h(n), h(n), |i, j| Q.from_i64((images[j] == i) as i64))
}

#[test]
fn z2_group_algebra_passes_all_axioms() {
    let hopf = z2();
    let r = check_bialgebra_axioms(&hopf);
    assert_eq!(r.len(), 11);
    assert!(r.all_pass(), "{r}");
    assert!(check_antipode(&hopf).all_pass());
}

#[test]
fn pair_groupoid_projections_match_contraction() {
    // basis g11, g12, g21, g22 at indices 0..4; g_ij = i*2 + j
    let hopf = pair2();
    assert_eq!(hopf.projection(Projection::L), &basis_map(&[0, 0, 3, 3], 4));
    assert_eq!(hopf.projection(Projection::R), &basis_map(&[0, 3, 0, 3], 4));
    assert!(check_bialgebra_axioms(&hopf).all_pass());
}

#[test]
fn hopf_projections_are_unit_counit() {
    let hopf = z2();
    let ee = LinMap::from_ints(Q, h(2), h(2), &[&[1, 1], &[0, 0]]);
    assert_eq!(hopf.projection(Projection::L), &ee);
    assert_eq!(hopf.projection(Projection::R), &ee);
    assert_eq!(hopf.projection(Projection::L).rank(), 1);
}

#[test]
fn trivial_groupoid_target_map_is_identity() {
    let g = GroupoidPresentation::disjoint_union(&[
        GroupoidPresentation::pair(1),
        GroupoidPresentation::pair(1),
    ]);
    let hopf = groupoid_algebra(&g, Q).unwrap();
    assert_eq!(hopf.projection(Projection::L), &LinMap::identity(Q, &h(2)));
    let b = base_subalgebra(&hopf, Projection::L).unwrap();
    assert_eq!(b.algebra.dim(), 2);
}

#[test]
fn unit_coproduct_of_pair_groupoid() {
    let hopf = pair2();
    let m = hopf.env().eval("eta ; Delta").unwrap();
    let hh = h(4).concat(&h(4));
    // e_{g11⊗g11} + e_{g22⊗g22}: indices 0 and 15
    let expected = LinMap::from_fn(Q, ObjectWord::unit(), hh, |i, _| {
        Q.from_i64((i == 0 || i == 15) as i64)
    });
    assert_eq!(m, expected);
    assert_eq!(
        hopf.env().eval("eta ; epsilon").unwrap().get(0, 0),
        &Q.from_i64(2)
    );
    let z = z2();
    assert_eq!(z.env().eval("eta ; epsilon").unwrap().get(0, 0), &Q.one());
}

#[test]
fn broken_counit_fails_wb2_with_witness() {
    let hopf = pair2();
    let mut eps = hopf.coalgebra().eps().clone();
    eps.set(0, 1, Q.zero());
    let a = hopf.algebra().clone();
    let c = CoalgebraData::unchecked(hopf.coalgebra().delta().clone(), eps).unwrap();
    let broken = WeakBialgebra::unchecked(a.clone(), c.clone()).unwrap();
    let r = check_bialgebra_axioms(&broken);
    let v = r.get("wb2.counit_delta").unwrap();
    assert_eq!(v.status, Status::Fail);
    assert!(v.witness.is_some());
    assert!(matches!(
        WeakBialgebra::new(a, c),
        Err(CoreError::AxiomFailed(_))
    ));
}

#[test]
fn projection_suite_passes_with_and_without_antipode() {
    for hopf in [pair2(), z2()] {
        let with = projection_identity_suite(&hopf, Some(hopf.antipode()));
        assert!(with.all_pass(), "{with}");
        assert!(with.entries().iter().all(|v| v.status == Status::Pass));
        let without = projection_identity_suite(&hopf, None);
        assert!(without.all_pass());
        assert!(without
            .entries()
            .iter()
            .any(|v| v.status == Status::Skipped));
    }
}

#[test]
fn identity_antipode_on_pair_groupoid_fails_at_g12() {
    let hopf = pair2();
    let wrong =
        WeakHopfAlgebra::unchecked(hopf.bialgebra().clone(), LinMap::identity(Q, &h(4))).unwrap();
    let r = check_antipode(&wrong);
    let v = r.get("antipode.left").unwrap();
    assert_eq!(v.status, Status::Fail);
    let w = v.witness.as_ref().unwrap();
    // μ(H⊗S)Δ(g12) = g12·g12 = 0 while Π^L(g12) = g11
    assert_eq!((w.row, w.col), (0, 1));
    assert_eq!((w.lhs.clone(), w.rhs.clone()), (Q.zero(), Q.one()));
}

#[test]
fn convolution_unit_and_projection_examples() {
    let hopf = pair2();
    let (a, c) = (hopf.algebra(), hopf.coalgebra());
    let id = LinMap::identity(Q, &h(4));
    assert_eq!(
        convolve(&id, hopf.projection(Projection::R), c, a).unwrap(),
        id
    );
    assert_eq!(
        convolve(hopf.projection(Projection::L), &id, c, a).unwrap(),
        id
    );
    let pl = hopf.projection(Projection::L);
    assert_eq!(convolve(pl, pl, c, a).unwrap(), basis_map(&[0, 0, 3, 3], 4));

    let z = z2();
    let conv = Convolution::new(z.coalgebra(), 1, z.algebra());
    let alpha = LinMap::from_ints(Q, h(2), h(2), &[&[3, -1], &[2, 5]]);
    assert_eq!(conv.convolve(&alpha, conv.unit()).unwrap(), alpha);
    assert_eq!(conv.convolve(conv.unit(), &alpha).unwrap(), alpha);
}

#[test]
fn antipode_is_the_convolution_inverse_of_identity_for_hopf() {
    let z = z2();
    let conv = Convolution::new(z.coalgebra(), 1, z.algebra());
    let id = LinMap::identity(Q, &h(2));
    let s = conv.inverse(&id, conv.unit()).unwrap().unwrap();
    assert_eq!(&s, z.antipode());
    let bad = LinMap::from_ints(Q, h(2), h(2), &[&[1, 0], &[0, 0]]);
    assert!(matches!(
        conv.inverse(&id, &bad),
        Err(CoreError::RegularityPreconditionFailed)
    ));
}

#[test]
fn weak_antipode_is_the_regular_inverse_between_projections() {
    // id∗S = Π^L and S∗id = Π^R with S∗Π^L = S; solve for S.
    let hopf = pair2();
    let conv = Convolution::new(hopf.coalgebra(), 1, hopf.algebra());
    let id = LinMap::identity(Q, &h(4));
    let (pl, pr) = (
        hopf.projection(Projection::L),
        hopf.projection(Projection::R),
    );
    let s = conv.inverse_between(&id, pl, pr).unwrap().unwrap();
    assert_eq!(&s, hopf.antipode());
    assert_eq!(
        conv_inverse(pl, pl, hopf.coalgebra(), hopf.algebra())
            .unwrap()
            .unwrap(),
        *pl
    );
}

#[test]
fn base_subalgebras() {
    let b = base_subalgebra(&pair2(), Projection::L).unwrap();
    assert_eq!(b.algebra.dim(), 2);
    assert!(b.report.all_pass(), "{}", b.report);
    // commutative: μ∘c = μ
    let a = &b.algebra;
    let w = a.word();
    let c = LinMap::swap(Q, &w, &w);
    assert_eq!(compose(a.mu(), &c).unwrap(), *a.mu());
    assert_eq!(
        base_subalgebra(&z2(), Projection::R).unwrap().algebra.dim(),
        1
    );
}

#[test]
fn enumeration_covers_small_groupoids() {
    let all = GroupoidPresentation::enumerate(3, 9);
    // one object: 16 groups; two objects with both components groups; etc.
    assert!(all.iter().any(|(n, _)| n == "2xC1"));
    assert!(all.iter().any(|(n, _)| n == "3xC1"));
    assert!(all
        .iter()
        .all(|(_, g)| g.objects() <= 3 && g.morphisms() <= 9));
    let names: std::collections::BTreeSet<_> = all.iter().map(|(n, _)| n.clone()).collect();
    assert_eq!(names.len(), all.len());
}

#[test]
fn invalid_group_table_is_rejected() {
    let t = vec![vec![0, 1], vec![1, 1]];
    assert!(weakhopf::weakhopf::Group::from_table(t).is_err());
    assert!(GroupoidPresentation::new(1, vec![0], vec![0], vec![vec![None]]).is_err());
}

#[test]
fn dimension_zero_algebra_is_rejected() {
    let w = ObjectWord::single("Z", 0);
    let mu = LinMap::zero(Q, w.concat(&w), w.clone());
    let eta = LinMap::zero(Q, ObjectWord::unit(), w);
    assert!(AlgebraData::unchecked(mu, eta).is_err());
}

fn small_map(n: usize) -> impl Strategy<Value = LinMap> {
    prop::collection::vec(-2i64..3, n * n)
        .prop_map(move |v| LinMap::from_fn(Q, h(n), h(n), |i, j| Q.from_i64(v[i * n + j])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_is_associative_with_unit(a in small_map(4), b in small_map(4), c in small_map(4)) {
        let hopf = pair2();
        let conv = Convolution::new(hopf.coalgebra(), 1, hopf.algebra());
        let ab_c = conv.convolve(&conv.convolve(&a, &b).unwrap(), &c).unwrap();
        let a_bc = conv.convolve(&a, &conv.convolve(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(conv.convolve(&a, conv.unit()).unwrap(), a.clone());
        prop_assert_eq!(conv.convolve(conv.unit(), &a).unwrap(), a.clone());
    }

    #[test]
    fn regular_inverses_satisfy_their_equations(a in small_map(2)) {
        let z = z2();
        let conv = Convolution::new(z.coalgebra(), 1, z.algebra());
        let u = conv.unit().clone();
        if let Ok(Some(x)) = conv.inverse(&a, &u) {
            prop_assert_eq!(conv.convolve(&a, &x).unwrap(), u.clone());
            prop_assert_eq!(conv.convolve(&x, &a).unwrap(), u.clone());
            prop_assert_eq!(conv.convolve(&x, &u).unwrap(), x.clone());
            prop_assert_eq!(conv.inverse(&a, &u).unwrap(), Some(x));
        }
    }

    #[test]
    fn projections_are_idempotent_unitary_counitary(idx in 0usize..20) {
        let all = GroupoidPresentation::enumerate(3, 9);
        let (_, g) = &all[idx % all.len()];
        let hopf = groupoid_algebra(g, FieldSpec::prime(7).unwrap()).unwrap();
        for k in Projection::ALL {
            let p = hopf.projection(k);
            prop_assert_eq!(&compose(p, p).unwrap(), p);
            prop_assert_eq!(&compose(p, hopf.algebra().eta()).unwrap(), hopf.algebra().eta());
            prop_assert_eq!(&compose(hopf.env().get("epsilon").unwrap(), p).unwrap(), hopf.env().get("epsilon").unwrap());
        }
    }
}
