use proptest::prelude::*;
use weakhopf::ir::{
    check_identity, evaluate, infer_type, parse_expr, Env, IrError, MorExpr, Signature,
};
use weakhopf::linalg::{FieldSpec, LinMap, ObjectWord};
use weakhopf::verdict::Status;
use weakhopf::weakhopf::{groupoid_algebra, Group, GroupoidPresentation};

const Q: FieldSpec = FieldSpec::Rational;

fn h_sig() -> Signature {
    let mut sig = Signature::new();
    sig.add_object("H", 2).unwrap();
    let h = sig.word(&["H"]).unwrap();
    let hh = sig.word(&["H", "H"]).unwrap();
    let k = ObjectWord::unit();
    sig.add_generator("mu", hh.clone(), h.clone()).unwrap();
    sig.add_generator("eta", k.clone(), h.clone()).unwrap();
    sig.add_generator("Delta", h.clone(), hh).unwrap();
    sig.add_generator("epsilon", h.clone(), k).unwrap();
    sig.add_generator("S", h.clone(), h).unwrap();
    sig
}

fn pair2_env() -> Env {
    groupoid_algebra(&GroupoidPresentation::pair(2), Q)
        .unwrap()
        .env()
        .clone()
}

#[test]
fn parse_sequence() {
    let e = parse_expr("mu ; Delta", &h_sig()).unwrap();
    assert_eq!(e, MorExpr::seq(MorExpr::gen("mu"), MorExpr::gen("Delta")));
}

#[test]
fn parse_multiplicativity_side() {
    let sig = h_sig();
    let e = parse_expr(
        "(Delta * Delta) ; (id(H) * swap(H,H) * id(H)) ; (mu * mu)",
        &sig,
    )
    .unwrap();
    let h = sig.word(&["H"]).unwrap();
    let middle = MorExpr::par(
        MorExpr::par(MorExpr::Id(h.clone()), MorExpr::Swap(h.clone(), h.clone())),
        MorExpr::Id(h.clone()),
    );
    let expected = MorExpr::seq(
        MorExpr::seq(
            MorExpr::par(MorExpr::gen("Delta"), MorExpr::gen("Delta")),
            middle,
        ),
        MorExpr::par(MorExpr::gen("mu"), MorExpr::gen("mu")),
    );
    assert_eq!(e, expected);
    assert_eq!(
        infer_type(&e, &sig).unwrap(),
        (
            sig.word(&["H", "H"]).unwrap(),
            sig.word(&["H", "H"]).unwrap()
        )
    );
}

#[test]
fn dangling_semicolon_is_a_syntax_error() {
    match parse_expr("mu ;;", &h_sig()) {
        Err(IrError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 5)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_names_are_located() {
    match parse_expr("mu ;\n  nope", &h_sig()) {
        Err(IrError::UnknownName { name, line, col }) => {
            assert_eq!((name.as_str(), line, col), ("nope", 2, 3))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn typing_examples() {
    let sig = h_sig();
    let h = sig.word(&["H"]).unwrap();
    let hh = sig.word(&["H", "H"]).unwrap();
    assert_eq!(
        infer_type(&MorExpr::gen("mu"), &sig).unwrap(),
        (hh.clone(), h)
    );
    let e = MorExpr::seq(MorExpr::gen("eta"), MorExpr::gen("Delta"));
    assert_eq!(infer_type(&e, &sig).unwrap(), (ObjectWord::unit(), hh));
    let bad = MorExpr::seq(MorExpr::gen("mu"), MorExpr::gen("mu"));
    match infer_type(&bad, &sig) {
        Err(IrError::Type {
            expected, found, ..
        }) => {
            assert_eq!(expected, "H,H");
            assert_eq!(found, "H");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn reserved_names_are_rejected() {
    let mut sig = Signature::new();
    for name in ["K", "id", "swap", "1x", "a.b"] {
        assert!(
            matches!(sig.add_object(name, 1), Err(IrError::BadName(_))),
            "{name}"
        );
    }
    sig.add_object("H", 2).unwrap();
    assert!(matches!(
        sig.add_object("H", 3),
        Err(IrError::ObjectConflict { .. })
    ));
}

#[test]
fn identity_evaluates_to_identity() {
    let env = pair2_env();
    let id = env.eval("id(H)").unwrap();
    assert_eq!(id.rows(), 4);
    assert_eq!(id, LinMap::identity(Q, id.dom()));
}

#[test]
fn unit_then_counit_on_group_algebra() {
    let z2 = groupoid_algebra(&GroupoidPresentation::group(&Group::cyclic(2)), Q).unwrap();
    let m = z2.env().eval("eta ; epsilon").unwrap();
    assert_eq!((m.rows(), m.cols()), (1, 1));
    assert_eq!(m.get(0, 0), &Q.one());
}

#[test]
fn comultiplied_unit_on_pair_groupoid() {
    // basis g11, g12, g21, g22; the unit is g11 + g22 and each g_ii is group-like
    let env = pair2_env();
    let v = env.eval("eta ; Delta").unwrap();
    assert_eq!((v.rows(), v.cols()), (16, 1));
    for row in 0..16 {
        let want = if row == 0 || row == 3 * 4 + 3 { 1 } else { 0 };
        assert_eq!(v.get(row, 0), &Q.from_i64(want), "row {row}");
    }
}

#[test]
fn multiplicativity_of_comultiplication_passes() {
    let env = pair2_env();
    let v = env
        .check(
            "wb1",
            "mu ; Delta",
            "Delta * Delta ; id(H) * swap(H,H) * id(H) ; mu * mu",
        )
        .unwrap();
    assert_eq!(v.status, Status::Pass);
    assert_eq!(v.id, "wb1");
    let same = env.check("refl", "S ; mu", "S ; mu");
    assert!(same.is_err(), "S ; mu is ill typed");
    assert!(env
        .check("refl", "Delta ; mu", "Delta ; mu")
        .unwrap()
        .passed());
}

#[test]
fn corrupted_product_fails_with_witness() {
    let mut env = pair2_env();
    let mut mu = env.get("mu").unwrap().clone();
    // g11·g11 = g11 becomes 2·g11
    mu.set(0, 0, Q.from_i64(2));
    env.bind("mu", mu).unwrap();
    let v = env
        .check(
            "wb1",
            "mu ; Delta",
            "Delta * Delta ; id(H) * swap(H,H) * id(H) ; mu * mu",
        )
        .unwrap();
    assert_eq!(v.status, Status::Fail);
    let w = v.witness.expect("witness");
    assert_eq!((w.row, w.col), (0, 0));
    assert_eq!((w.lhs, w.rhs), (Q.from_i64(2), Q.from_i64(4)));
}

#[test]
fn sides_of_different_type_are_rejected() {
    let env = pair2_env();
    let (l, r) = (env.parse("mu").unwrap(), env.parse("Delta").unwrap());
    assert!(matches!(
        check_identity(&l, &r, &env),
        Err(IrError::SidesDiffer { .. })
    ));
}

#[test]
fn multi_factor_swap_is_a_block_permutation() {
    let env = pair2_env();
    let block = env.eval("swap((H,H),H)").unwrap();
    let stepwise = env.eval("id(H) * swap(H,H) ; swap(H,H) * id(H)").unwrap();
    assert_eq!(block, stepwise);
}

fn leaf() -> impl Strategy<Value = MorExpr> {
    let sig = h_sig();
    let h = sig.word(&["H"]).unwrap();
    let hh = sig.word(&["H", "H"]).unwrap();
    prop_oneof![
        Just(MorExpr::gen("mu")),
        Just(MorExpr::gen("eta")),
        Just(MorExpr::gen("Delta")),
        Just(MorExpr::gen("S")),
        Just(MorExpr::Id(h.clone())),
        Just(MorExpr::Id(hh.clone())),
        Just(MorExpr::Swap(h.clone(), h.clone())),
        Just(MorExpr::Swap(hh, h)),
    ]
}

fn term() -> impl Strategy<Value = MorExpr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| MorExpr::seq(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| MorExpr::par(a, b)),
        ]
    })
}

fn rand_map(env: &Env, dom: &[&str], cod: &[&str], v: &[i64]) -> LinMap {
    let sig = env.signature();
    let (d, c) = (sig.word(dom).unwrap(), sig.word(cod).unwrap());
    LinMap::from_fn(Q, d.clone(), c.clone(), |i, j| {
        Q.from_i64(v[(i * d.dim() + j) % v.len()])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(e in term()) {
        let text = e.to_string();
        let back = parse_expr(&text, &h_sig()).unwrap();
        prop_assert_eq!(back, e, "{}", text);
    }

    #[test]
    fn interchange_law_holds(v in proptest::collection::vec(-3i64..=3, 1..20)) {
        let mut env = Env::new(Q);
        for (name, dim) in [("X", 2), ("Y", 3), ("Z", 2), ("U", 1), ("V", 2), ("W", 3)] {
            env.declare_object(name, dim).unwrap();
        }
        let a = rand_map(&env, &["X"], &["Y"], &v);
        let b = rand_map(&env, &["Y"], &["Z"], &v[v.len() / 2..]);
        let c = rand_map(&env, &["U"], &["V"], &v[v.len() / 3..]);
        let d = rand_map(&env, &["V"], &["W"], &v);
        for (n, m) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            env.bind(n, m).unwrap();
        }
        let lhs = env.eval("(a ; b) * (c ; d)").unwrap();
        let rhs = env.eval("a * c ; b * d").unwrap();
        prop_assert_eq!(lhs, rhs);
        let seq = evaluate(&MorExpr::seq(MorExpr::gen("a"), MorExpr::gen("b")), &env).unwrap();
        prop_assert_eq!(seq, weakhopf::linalg::compose(env.get("b").unwrap(), env.get("a").unwrap()).unwrap());
    }

    #[test]
    fn sparse_evaluation_matches_dense_algebra(v in proptest::collection::vec(-3i64..=3, 1..20)) {
        let mut env = Env::new(Q);
        for (name, dim) in [("X", 2), ("Y", 3), ("U", 2)] {
            env.declare_object(name, dim).unwrap();
        }
        let a = rand_map(&env, &["X"], &["Y"], &v);
        let c = rand_map(&env, &["X", "U"], &["U"], &v[v.len() / 2..]);
        env.bind("a", a.clone()).unwrap();
        env.bind("c", c.clone()).unwrap();
        let sparse = env.eval("swap(U,X) * id(X) ; c * a ; swap(U,Y)").unwrap();
        let (u, x, y) = (ObjectWord::single("U", 2), ObjectWord::single("X", 2), ObjectWord::single("Y", 3));
        let ca = weakhopf::linalg::tensor_product(&c, &a).unwrap();
        let dense = weakhopf::linalg::compose(
            &LinMap::swap(Q, &u, &y),
            &weakhopf::linalg::compose(&ca, &weakhopf::linalg::tensor_product(&LinMap::swap(Q, &u, &x), &LinMap::identity(Q, &x)).unwrap()).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(sparse.entries(), dense.entries());
    }
}
