use super::{decomposition, require_cleft, CleavingData, CleftError, Extension, B};
use crate::ir::{evaluate, Env, MorExpr};
use crate::linalg::{compose, satisfies, solve_affine, AffineSolution, Constraint, LinMap};
use crate::verdict::{Verdict, VerdictReport};

/// Object name of the second comodule algebra.
const B_B: &str = "B_b";

/// Conditions on `Φ: B → B′` that are linear in `Φ`.
const LINEAR: [(&str, &str, &str); 4] = [
    ("morphism.extension", "j ; Phi", "j_b"),
    ("morphism.unit", "etaB ; Phi", "etaB_b"),
    (
        "morphism.left_linear",
        "j * id(B) ; muB ; Phi",
        "id(A) * Phi ; j_b * id(B_b) ; muB_b",
    ),
    (
        "morphism.colinear",
        "Phi ; deltaB_b",
        "deltaB ; Phi * id(H)",
    ),
];

/// A verified isomorphism of extensions, or the reason none was found.
#[derive(Clone, Debug)]
pub struct ExtensionEquivalence {
    pub map: Option<LinMap>,
    /// Dimension of the affine family of unital, left `A`-linear, colinear maps with `Φ∘j = j′`;
    /// `None` when the family is empty.
    pub family_dim: Option<usize>,
    pub report: VerdictReport,
}

fn pair_env(x: &Extension, y: &Extension) -> Result<Env, CleftError> {
    let (hx, hy) = (x.comodule.bialgebra.env(), y.comodule.bialgebra.env());
    let same_h = ["mu", "eta", "Delta", "epsilon"]
        .iter()
        .all(|g| hx.get(g) == hy.get(g));
    if !same_h || x.base != y.base {
        return Err(CleftError::Shape("extensions over different A or H".into()));
    }
    let mut env = x.env.clone();
    env.declare_object(B_B, y.comodule.algebra.dim())?;
    for name in ["muB", "etaB", "deltaB", "j"] {
        env.bind(
            &format!("{name}_b"),
            y.env.get(name).expect("bound").renamed(B, B_B),
        )?;
    }
    Ok(env)
}

/// Rows `Σ_k (L(E_k) − L(0))·x_k = −L(0)` for an affine expression `L` in the unknown `Phi`.
fn linear_constraints(
    env: &Env,
    lhs: &MorExpr,
    rhs: &MorExpr,
    zero: &LinMap,
) -> Result<Vec<Constraint>, CleftError> {
    let field = env.field();
    let at = |phi: LinMap| -> Result<LinMap, CleftError> {
        let e = env.with("Phi", phi)?;
        Ok(evaluate(lhs, &e)?.sub(&evaluate(rhs, &e)?)?)
    };
    let base = at(zero.clone())?;
    let n = zero.rows() * zero.cols();
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let mut unit = zero.clone();
        unit.set(k / zero.cols(), k % zero.cols(), field.one());
        columns.push(at(unit)?.sub(&base)?);
    }
    let mut out = Vec::with_capacity(base.rows() * base.cols());
    for r in 0..base.rows() {
        for c in 0..base.cols() {
            let coeffs = columns
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.get(r, c).is_zero())
                .map(|(k, m)| (k, m.get(r, c).clone()))
                .collect();
            out.push(Constraint::new(coeffs, base.get(r, c).neg()));
        }
    }
    Ok(out)
}

fn is_iso(env: &Env, phi: &LinMap) -> Result<bool, CleftError> {
    let e = env.with("Phi", phi.clone())?;
    let mult = e.check("morphism.multiplicative", "muB ; Phi", "Phi * Phi ; muB_b")?;
    Ok(mult.passed() && phi.rows() == phi.cols() && phi.rank() == phi.cols())
}

/// Searches for an isomorphism of cleft extensions `Φ: B → B′`: an algebra isomorphism with
/// `Φ∘j = j′` that is left `A`-linear and `H`-colinear.
///
/// The linear conditions are solved exactly. Multiplicativity is quadratic, so the candidates
/// tried are the unique solution when the family is a point, the particular solution, and
/// `w′∘w̃`, the map matching the two decompositions. A `None` map with a nonzero family
/// dimension is therefore inconclusive; a `None` family proves non-equivalence.
pub fn equivalent_extensions(
    x: &Extension,
    cx: &CleavingData,
    y: &Extension,
    cy: &CleavingData,
) -> Result<ExtensionEquivalence, CleftError> {
    require_cleft(x, cx)?;
    require_cleft(y, cy)?;
    let mut env = pair_env(x, y)?;
    let field = env.field();
    let (bx, by) = (
        x.comodule.algebra.word(),
        y.comodule.algebra.word().renamed(B, B_B),
    );
    let zero = LinMap::zero(field, bx.clone(), by.clone());
    env.bind("Phi", zero.clone())?;
    let mut constraints = Vec::new();
    for (_, lhs, rhs) in LINEAR {
        constraints.extend(linear_constraints(
            &env,
            &env.parse(lhs)?,
            &env.parse(rhs)?,
            &zero,
        )?);
    }
    let family = solve_affine(field, &bx, &by, &constraints);
    let mut report = VerdictReport::new();
    report.push(
        Verdict::from_bool("morphism.family", family.dimension().is_some())
            .with_note(&format!("dimension {:?}", family.dimension())),
    );
    let mut candidates: Vec<LinMap> = family.any().into_iter().cloned().collect();
    if matches!(family, AffineSolution::Affine { .. }) {
        let (dx, dy) = (decomposition(x, cx)?, decomposition(y, cy)?);
        let matched = compose(&dy.w().renamed(B, B_B), dx.w_tilde())?;
        candidates.push(matched);
    }
    let mut map = None;
    for c in candidates {
        if satisfies(&c, &constraints) && is_iso(&env, &c)? {
            map = Some(c);
            break;
        }
    }
    if let Some(phi) = &map {
        let e = env.with("Phi", phi.clone())?;
        for (id, lhs, rhs) in LINEAR {
            report.push(e.check(id, lhs, rhs)?);
        }
        report.push(e.check("morphism.multiplicative", "muB ; Phi", "Phi * Phi ; muB_b")?);
        report.push(Verdict::pass("morphism.bijective"));
    } else {
        report.push(
            Verdict::fail("morphism.found", None)
                .with_note("no candidate is a multiplicative bijection"),
        );
    }
    Ok(ExtensionEquivalence {
        map,
        family_dim: family.dimension(),
        report,
    })
}
