//! Ready-made crossed-product systems over groupoid algebras.
//!
//! A groupoid algebra acts on its target base algebra `A = H^L` by
//! `ρ(h⊗z) = Π^L(h·z)`; on basis vectors `ρ(g⊗z_x) = δ_{s(g),x} z_{t(g)}`. Normalized
//! cocycles are `u₂` scaled by the coboundary of a scalar function `λ` on morphisms with
//! `λ = 1` on identities: `f(g⊗h) = λ(g)λ(h)/λ(gh)·u₂(g⊗h)`.

use rand::Rng;

use crate::crossed::{CocycleData, CrossedError, WeakMeasure};
use crate::linalg::{compose, tensor_product, FieldSpec, LinMap, ObjectWord, Scalar};
use crate::weakhopf::{
    base_subalgebra, groupoid_algebra, AlgebraData, Group, GroupoidPresentation, Projection,
    WeakHopfAlgebra,
};

/// A weak Hopf algebra with a measure and a cocycle on it.
#[derive(Clone, Debug)]
pub struct SmashInstance {
    pub name: String,
    pub hopf: WeakHopfAlgebra,
    pub measure: WeakMeasure,
    pub cocycle: CocycleData,
}

/// The action of a weak Hopf algebra on its target base algebra.
pub fn base_action(h: &WeakHopfAlgebra) -> Result<WeakMeasure, CrossedError> {
    let b = base_subalgebra(h, Projection::L)?;
    let id = LinMap::identity(h.field(), &h.word());
    let act = compose(
        &b.proj,
        &compose(
            h.env().get("mu").expect("bound"),
            &tensor_product(&id, &b.inj)?,
        )?,
    )?;
    WeakMeasure::for_hopf(h, &b.algebra, act)
}

/// `u₂` scaled column by column by the coboundary of `lambda`, indexed by basis vectors of `H`.
///
/// Requires the basis of `H` to be multiplicatively closed up to zero, as for groupoids.
pub fn coboundary_cocycle(m: &WeakMeasure, lambda: &[Scalar]) -> Result<CocycleData, CrossedError> {
    let n = m.bialgebra().dim();
    assert_eq!(lambda.len(), n, "one scalar per basis vector");
    let mu = m.env().get("mu").expect("bound");
    let u2 = m.env().get("u2").expect("bound");
    let mut f = u2.clone();
    for col in 0..n * n {
        let prod = mu.column(col);
        let Some((k, _)) = prod.iter().next() else {
            continue;
        };
        let scale = lambda[col / n]
            .mul(&lambda[col % n])
            .div(&lambda[k])
            .expect("lambda is nonzero");
        for row in 0..f.rows() {
            let x = f.get(row, col).mul(&scale);
            f.set(row, col, x);
        }
    }
    CocycleData::new(m, f)
}

/// Indices of the identity morphisms: the support of the unit.
fn identities(h: &WeakHopfAlgebra) -> Vec<usize> {
    h.algebra().eta().column(0).iter().map(|(k, _)| k).collect()
}

/// The smash product of a groupoid algebra with its base, twisted by `lambda` when given.
pub fn groupoid_smash(
    name: &str,
    g: &GroupoidPresentation,
    field: FieldSpec,
    lambda: Option<&[Scalar]>,
) -> Result<SmashInstance, CrossedError> {
    let hopf = groupoid_algebra(g, field)?;
    let measure = base_action(&hopf)?;
    let ones = vec![field.one(); hopf.dim()];
    let cocycle = coboundary_cocycle(&measure, lambda.unwrap_or(&ones))?;
    Ok(SmashInstance {
        name: name.to_string(),
        hopf,
        measure,
        cocycle,
    })
}

/// The pair groupoid on two objects acting on `H^L`, with `f = u₂`.
pub fn pair_groupoid_smash(field: FieldSpec) -> SmashInstance {
    groupoid_smash("pair2", &GroupoidPresentation::pair(2), field, None)
        .expect("pair groupoid smash is valid")
}

/// The group algebra of ℤ/2 acting trivially on the ground field, with `f = ε⊗ε`.
pub fn hopf_trivial_smash(field: FieldSpec) -> SmashInstance {
    let hopf = groupoid_algebra(&GroupoidPresentation::group(&Group::cyclic(2)), field)
        .expect("group algebra");
    let k = ObjectWord::single("k", 1);
    let one = |d: ObjectWord, c: ObjectWord| LinMap::from_fn(field, d, c, |_, _| field.one());
    let a = AlgebraData::new(
        one(k.concat(&k), k.clone()),
        one(ObjectWord::unit(), k.clone()),
    )
    .expect("ground field");
    let eps = hopf.env().get("epsilon").expect("bound");
    let rho = LinMap::from_fn(field, hopf.word().concat(&k), k, |r, c| {
        eps.get(r, c).clone()
    });
    let measure = WeakMeasure::for_hopf(&hopf, &a, rho).expect("trivial action");
    let f = hopf.env().eval("epsilon * epsilon").expect("counit");
    let cocycle = CocycleData::new(&measure, f).expect("trivial cocycle");
    SmashInstance {
        name: "hopf_z2".into(),
        hopf,
        measure,
        cocycle,
    }
}

/// A nonzero scalar function on the morphisms, equal to 1 on identities.
pub fn random_normalized_function<R: Rng>(h: &WeakHopfAlgebra, rng: &mut R) -> Vec<Scalar> {
    let field = h.field();
    let ids = identities(h);
    (0..h.dim())
        .map(|k| {
            if ids.contains(&k) {
                return field.one();
            }
            loop {
                let x = field.from_i64(rng.gen_range(-4..=4));
                if !x.is_zero() {
                    return x;
                }
            }
        })
        .collect()
}

/// `count` smash instances over groupoids drawn from the small-groupoid enumeration, each with
/// a random coboundary twist.
pub fn random_instances<R: Rng>(rng: &mut R, count: usize, field: FieldSpec) -> Vec<SmashInstance> {
    let universe = GroupoidPresentation::enumerate(3, 9);
    (0..count)
        .map(|_| {
            let (name, g) = &universe[rng.gen_range(0..universe.len())];
            let hopf = groupoid_algebra(g, field).expect("enumerated groupoids are valid");
            let lambda = random_normalized_function(&hopf, rng);
            groupoid_smash(name, g, field, Some(&lambda)).expect("coboundary twists are valid")
        })
        .collect()
}
