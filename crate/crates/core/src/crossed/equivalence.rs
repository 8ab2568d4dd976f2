use super::{retype, CrossedError, CrossedProduct, E};
use crate::corpus::Corpus;
use crate::ir::Env;
use crate::linalg::LinMap;
use crate::verdict::{Verdict, VerdictReport};
use crate::weakhopf::Convolution;

/// Object name of the second crossed product.
const E_B: &str = "E_b";

/// Generators of the second product, bound with the suffix `_b`.
const SECOND: [&str; 13] = [
    "rho", "chi", "nabla", "u1", "f", "F", "nu", "i", "p", "muE", "etaE", "j", "deltaE",
];

const L_PHI: &str = "id(A) * Delta ; id(A) * phi * id(H) ; muA * id(H)";
const L_PHI_INV: &str = "id(A) * Delta ; id(A) * phiinv * id(H) ; muA * id(H)";
const PHI_OF_ISO: &str = "etaA * id(H) ; p ; Phi ; i_b ; id(A) * epsilon";

/// `Φ_φ: E → E′` with its inverse `Φ_{φ′}` and the verdicts on both.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub phi: LinMap,
    pub phi_inv: LinMap,
    pub map: LinMap,
    pub inverse: LinMap,
    pub report: VerdictReport,
}

/// The first product's env plus the second's generators under `E_b` and `_b` names.
fn pair_env(x: &CrossedProduct, y: &CrossedProduct) -> Result<Env, CrossedError> {
    let (mx, my) = (x.measure(), y.measure());
    let (hx, hy) = (mx.bialgebra(), my.bialgebra());
    let same_h = ["mu", "eta", "Delta", "epsilon"]
        .iter()
        .all(|g| hx.env().get(g) == hy.env().get(g));
    if !same_h || mx.algebra() != my.algebra() {
        return Err(CrossedError::PreconditionFailed(
            "products over different A or H".into(),
        ));
    }
    let mut env = x.env().clone();
    env.declare_object(E_B, y.dim())?;
    for name in SECOND {
        let m = y.env().get(name).expect("bound in every crossed product");
        env.bind(&format!("{name}_b"), m.renamed(E, E_B))?;
    }
    Ok(env)
}

fn check(env: &Env, ids: &[&str]) -> VerdictReport {
    Corpus::active().run_ids("equivalence", ids, env)
}

/// Conditions (1), (3), (4), (5) first, then (2), whose inverse `φ′` comes from the solver.
const CONDITIONS: [(usize, &[&str]); 4] = [
    (1, &["cond1.left", "cond1.right"]),
    (3, &["cond3"]),
    (4, &["cond4"]),
    (5, &["cond5"]),
];

/// Checks the five conditions on `φ: H → A` and, when they hold, builds
/// `Φ_φ = p′∘L(φ)∘i` and verifies it is a unital, left `A`-linear, `H`-colinear algebra
/// isomorphism that commutes with the extensions.
///
/// `φ′` is the inverse of `φ` with `φ∗φ′ = u₁`, `φ′∗φ = u′₁` and `φ′∗u₁ = φ′`.
pub fn equivalence_from_phi(
    x: &CrossedProduct,
    y: &CrossedProduct,
    phi: &LinMap,
) -> Result<Equivalence, CrossedError> {
    let mut env = pair_env(x, y)?;
    let h = x.measure().bialgebra().word();
    let a = x.measure().algebra().word();
    let phi = retype(phi, h, a)?;
    env.bind("phi", phi.clone())?;
    let mut report = VerdictReport::new();
    for (n, ids) in CONDITIONS {
        let r = check(&env, ids);
        let failed = r.first_failure().cloned();
        report.extend("", r);
        if let Some(v) = failed {
            return Err(CrossedError::ConditionFailed {
                condition: n,
                verdict: Box::new(v),
            });
        }
    }
    let m = x.measure();
    let conv = Convolution::new(m.bialgebra().coalgebra(), 1, m.algebra());
    let (u1, u1b) = (
        env.get("u1").expect("bound"),
        env.get("u1_b").expect("bound"),
    );
    let phi_inv = match conv.inverse_between(&phi, u1, u1b) {
        Ok(Some(inv)) => retype(&inv, phi.dom().clone(), phi.cod().clone())?,
        _ => {
            return Err(CrossedError::ConditionFailed {
                condition: 2,
                verdict: Box::new(
                    Verdict::fail("cond2", None).with_note("phi has no regular inverse"),
                ),
            })
        }
    };
    env.bind("phiinv", phi_inv.clone())?;
    let r = check(&env, &["cond2.right", "cond2.left"]);
    if let Some(v) = r.first_failure() {
        return Err(CrossedError::ConditionFailed {
            condition: 2,
            verdict: Box::new(v.clone()),
        });
    }
    report.extend("", r);
    env.define("Lphi", L_PHI)?;
    env.define("Lphiinv", L_PHI_INV)?;
    let map = env.define("Phi", "i ; Lphi ; p_b")?;
    let inverse = env.define("Phiinv", "i_b ; Lphiinv ; p")?;
    let done: Vec<String> = report.entries().iter().map(|v| v.id.clone()).collect();
    for e in Corpus::active().signature("equivalence") {
        if !done.contains(&e.id) {
            report.push(Corpus::active().check_entry(e, &env));
        }
    }
    report.push(Verdict::equal(
        "roundtrip.phi",
        &env.eval(PHI_OF_ISO)?,
        &phi,
    ));
    Ok(Equivalence {
        phi,
        phi_inv,
        map,
        inverse,
        report,
    })
}

const ISO_CHECKS: [&str; 5] = [
    "Phi.multiplicative",
    "Phi.unit",
    "Phi.extension",
    "Phi.left_linear",
    "Phi.colinear",
];

/// `φ_Φ = (A⊗ε)∘i′∘Φ∘p∘(η_A⊗H)` for a verified equivalence `Φ: E → E′`.
///
/// The report holds the checks on `Φ`, the verdicts of [`equivalence_from_phi`] on `φ_Φ`,
/// and `roundtrip.Phi` comparing `Φ_{φ_Φ}` with `Φ`.
pub fn phi_from_iso(
    x: &CrossedProduct,
    y: &CrossedProduct,
    map: &LinMap,
) -> Result<(LinMap, VerdictReport), CrossedError> {
    let mut env = pair_env(x, y)?;
    let (dx, dy) = (x.i().dom().clone(), y.i().dom().renamed(E, E_B));
    env.bind("Phi", retype(map, dx, dy)?)?;
    let mut report = check(&env, &ISO_CHECKS);
    report.push(Verdict::from_bool(
        "Phi.bijective",
        map.rows() == map.cols() && map.rank() == map.cols(),
    ));
    if let Some(v) = report.first_failure() {
        return Err(CrossedError::NotAnEquivalence(v.id.clone()));
    }
    let phi = env.eval(PHI_OF_ISO)?;
    let eq = equivalence_from_phi(x, y, &phi)?;
    report.extend("phi", eq.report);
    report.push(Verdict::equal(
        "roundtrip.Phi",
        &eq.map,
        env.get("Phi").expect("bound"),
    ));
    Ok((phi, report))
}
