//! Comodule algebras, cleft extensions, and the way back from a cleft extension to a
//! crossed product with invertible cocycle.
//!
//! The stages are gated: each one requires every earlier report to be free of failures and
//! otherwise returns [`CleftError::PreconditionFailed`] with the first failing verdict.
//! Envs use the object `B` with `muB`, `etaB`, `deltaB`, the algebra `A` with `muA`,
//! `etaA`, the extension `j`, and the cleaving maps `gamma`, `gammainv`.

mod equivalence;

pub use equivalence::{equivalent_extensions, ExtensionEquivalence};

use crate::corpus::Corpus;
use crate::crossed::{
    build_crossed_product, equalizer_verdict, invert_cocycle, is_weak_module_algebra, CocycleData,
    CrossedError, CrossedProduct, WeakMeasure, A, E, MU_AH,
};
use crate::ir::{Env, IrError};
use crate::linalg::{factor_through, LinMap, LinalgError, ObjectWord};
use crate::verdict::{Verdict, VerdictReport};
use crate::weakhopf::{AlgebraData, CoreError, WeakBialgebra, WeakHopfAlgebra};

/// Object name of the comodule algebra.
pub const B: &str = "B";

#[derive(Debug, Clone, thiserror::Error)]
pub enum CleftError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("precondition fails: {0}")]
    PreconditionFailed(Box<Verdict>),
    #[error("{0} does not factor through j")]
    FactorizationFailed(String),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn retype(m: &LinMap, dom: ObjectWord, cod: ObjectWord) -> Result<LinMap, CleftError> {
    m.with_words(dom.clone(), cod.clone()).map_err(|_| {
        CleftError::Shape(format!(
            "expected {dom} -> {cod}, got {}x{}",
            m.rows(),
            m.cols()
        ))
    })
}

fn require(stage: &str, report: &VerdictReport) -> Result<(), CleftError> {
    match report.first_failure() {
        Some(v) => Err(CleftError::PreconditionFailed(Box::new(
            v.clone().with_id(&format!("{stage}.{}", v.id)),
        ))),
        None => Ok(()),
    }
}

/// An algebra `B` with a right coaction `δ_B: B → B⊗H`.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    bialgebra: WeakBialgebra,
    antipode: Option<LinMap>,
    algebra: AlgebraData,
    env: Env,
}

impl ComoduleAlgebra {
    /// Shape checks only; the laws are reported by [`comodule_algebra_report`].
    pub fn new(
        h: &WeakBialgebra,
        b: &AlgebraData,
        delta: LinMap,
    ) -> Result<ComoduleAlgebra, CleftError> {
        ComoduleAlgebra::assemble(h.clone(), None, h.env().clone(), b, delta)
    }

    /// As [`ComoduleAlgebra::new`], keeping the antipode for the reconstructed action.
    pub fn for_hopf(
        h: &WeakHopfAlgebra,
        b: &AlgebraData,
        delta: LinMap,
    ) -> Result<ComoduleAlgebra, CleftError> {
        ComoduleAlgebra::assemble(
            h.bialgebra().clone(),
            Some(h.antipode().clone()),
            h.env().clone(),
            b,
            delta,
        )
    }

    fn assemble(
        bialgebra: WeakBialgebra,
        antipode: Option<LinMap>,
        mut env: Env,
        b: &AlgebraData,
        delta: LinMap,
    ) -> Result<ComoduleAlgebra, CleftError> {
        let algebra = b.renamed(B);
        let bw = algebra.word();
        env.bind("muB", algebra.mu().clone())?;
        env.bind("etaB", algebra.eta().clone())?;
        env.bind(
            "deltaB",
            retype(&delta, bw.clone(), bw.concat(&bialgebra.word()))?,
        )?;
        Ok(ComoduleAlgebra {
            bialgebra,
            antipode,
            algebra,
            env,
        })
    }

    pub fn bialgebra(&self) -> &WeakBialgebra {
        &self.bialgebra
    }

    /// The algebra, renamed to `B`.
    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }

    pub fn delta(&self) -> &LinMap {
        self.env.get("deltaB").expect("bound")
    }

    pub fn env(&self) -> &Env {
        &self.env
    }
}

const UNIT_CONDITIONS: [&str; 6] = ["unit.1", "unit.2", "unit.3", "unit.4", "unit.5", "unit.6"];

/// Coaction laws, colinearity of `μ_B`, the six equivalent unit conditions, and a verdict
/// that those six agree.
pub fn comodule_algebra_report(c: &ComoduleAlgebra) -> VerdictReport {
    let mut r = Corpus::active().run("comodule", &c.env);
    let passed: Vec<bool> = UNIT_CONDITIONS
        .iter()
        .map(|id| r.get(id).is_some_and(|v| v.passed()))
        .collect();
    r.push(Verdict::from_bool(
        "unit.agree",
        passed.iter().all(|&b| b) || passed.iter().all(|&b| !b),
    ));
    r
}

/// A comodule algebra with an algebra map `j: A → B`.
#[derive(Clone, Debug)]
pub struct Extension {
    comodule: ComoduleAlgebra,
    base: AlgebraData,
    env: Env,
}

impl Extension {
    pub fn new(
        comodule: &ComoduleAlgebra,
        a: &AlgebraData,
        j: LinMap,
    ) -> Result<Extension, CleftError> {
        let base = a.renamed(A);
        let mut env = comodule.env.clone();
        env.bind("muA", base.mu().clone())?;
        env.bind("etaA", base.eta().clone())?;
        env.bind("j", retype(&j, base.word(), comodule.algebra.word())?)?;
        Ok(Extension {
            comodule: comodule.clone(),
            base,
            env,
        })
    }

    pub fn comodule(&self) -> &ComoduleAlgebra {
        &self.comodule
    }

    /// The algebra, renamed to `A`.
    pub fn base(&self) -> &AlgebraData {
        &self.base
    }

    pub fn j(&self) -> &LinMap {
        self.env.get("j").expect("bound")
    }

    pub fn env(&self) -> &Env {
        &self.env
    }
}

/// `j` is a unital algebra monomorphism whose image is exactly the coinvariants, the
/// kernel of `δ_B − (B⊗Π^L)∘δ_B`.
pub fn extension_check(x: &Extension) -> VerdictReport {
    let mut r = Corpus::active().run("extension", &x.env);
    let j = x.j();
    r.push(Verdict::from_bool("j.injective", j.rank() == j.cols()));
    r.push(equalizer_verdict(&x.env, "equalizer", "deltaB", B, "j"));
    r
}

/// A candidate total integral `γ` and its convolution inverse `γ⁻¹`.
#[derive(Clone, Debug)]
pub struct CleavingData {
    pub gamma: LinMap,
    pub gamma_inv: LinMap,
}

fn cleaving_env(x: &Extension, c: &CleavingData) -> Result<Env, CleftError> {
    let (h, b) = (x.comodule.bialgebra.word(), x.comodule.algebra.word());
    let mut env = x.env.clone();
    env.bind("gamma", retype(&c.gamma, h.clone(), b.clone())?)?;
    env.bind("gammainv", retype(&c.gamma_inv, h, b)?)?;
    Ok(env)
}

/// Colinearity, totality, the three convolution-inverse laws, and the factorization of
/// `γ∘Π^L` through `j`.
pub fn cleaving_check(x: &Extension, c: &CleavingData) -> Result<VerdictReport, CleftError> {
    let env = cleaving_env(x, c)?;
    let mut r = Corpus::active().run("cleaving", &env);
    let gpl = env.eval("piL ; gamma")?;
    r.push(Verdict::from_bool(
        "gamma_piL.factors",
        factor_through(x.j(), &gpl).is_some(),
    ));
    Ok(r)
}

/// The maps splitting `B` as `A⊗H` up to the idempotent `Ω = w̃∘w`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub report: VerdictReport,
    env: Env,
}

impl Decomposition {
    fn bound(&self, name: &str) -> &LinMap {
        self.env.get(name).expect("bound")
    }

    /// `Υ = (B⊗μ)∘(c⊗H)∘(H⊗δ_B): H⊗B → B⊗H`.
    pub fn upsilon(&self) -> &LinMap {
        self.bound("Upsilon")
    }

    /// `q = μ_B∘(B⊗γ⁻¹)∘δ_B: B → B`.
    pub fn q(&self) -> &LinMap {
        self.bound("q")
    }

    /// The factor `p: B → A` with `q = j∘p`.
    pub fn p(&self) -> &LinMap {
        self.bound("pq")
    }

    /// `w = μ_B∘(j⊗γ): A⊗H → B`.
    pub fn w(&self) -> &LinMap {
        self.bound("w")
    }

    /// `w̃ = (p⊗H)∘δ_B: B → A⊗H`.
    pub fn w_tilde(&self) -> &LinMap {
        self.bound("wt")
    }

    /// `Ω = w̃∘w`.
    pub fn omega(&self) -> &LinMap {
        self.bound("Omega")
    }

    pub fn env(&self) -> &Env {
        &self.env
    }
}

/// Runs the comodule, extension and cleaving checks, failing on the first failure.
pub fn require_cleft(x: &Extension, c: &CleavingData) -> Result<(), CleftError> {
    require("comodule", &comodule_algebra_report(&x.comodule))?;
    require("extension", &extension_check(x))?;
    require("cleaving", &cleaving_check(x, c)?)
}

/// Factors `q` through `j` and checks that `w` and `w̃` split `B` off `A⊗H`.
pub fn decomposition(x: &Extension, c: &CleavingData) -> Result<Decomposition, CleftError> {
    require_cleft(x, c)?;
    let mut env = cleaving_env(x, c)?;
    env.define("Upsilon", "id(H) * deltaB ; swap(H,B) * id(H) ; id(B) * mu")?;
    let q = env.define("q", "deltaB ; id(B) * gammainv ; muB")?;
    let p = factor_through(x.j(), &q).ok_or_else(|| CleftError::FactorizationFailed("q".into()))?;
    env.bind("pq", retype(&p, x.comodule.algebra.word(), x.base.word())?)?;
    env.define("w", "j * gamma ; muB")?;
    env.define("wt", "deltaB ; pq * id(H)")?;
    let omega = env.define("Omega", "w ; wt")?;
    let mut report = Corpus::active().run("decomposition", &env);
    report.push(
        Verdict::from_bool("Omega.rank", omega.rank() == x.comodule.algebra.dim())
            .with_note(&format!("rank {}", omega.rank())),
    );
    Ok(Decomposition { report, env })
}

/// The measure and cocycle read off a cleft extension.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub report: VerdictReport,
    cocycle: CocycleData,
    env: Env,
}

const MU_TILDE: &str = "w * w ; muB ; wt";
const RHO_ROUTE: &str = "etaA * id(H) * (id(A) * nu ; muA * id(H)) ; mut ; id(A) * epsilon";
const F_ROUTE: &str = "etaA * id(H) * etaA * id(H) ; mut ; id(A) * epsilon";
const FROM_COCYCLE: [&str; 10] = [
    "rho", "chi", "nabla", "u1", "u2", "u3", "v2", "v3", "f", "F",
];

impl Reconstruction {
    pub fn measure(&self) -> &WeakMeasure {
        self.cocycle.measure()
    }

    pub fn cocycle(&self) -> &CocycleData {
        &self.cocycle
    }

    pub fn rho(&self) -> &LinMap {
        self.measure().rho()
    }

    pub fn f(&self) -> &LinMap {
        self.cocycle.f()
    }

    /// `μ̃ = w̃∘μ_B∘(w⊗w)` on `A⊗H`.
    pub fn mu_tilde(&self) -> &LinMap {
        self.env.get("mut").expect("bound")
    }

    /// `ν̃ = w̃∘η_B`.
    pub fn nu_tilde(&self) -> &LinMap {
        self.env.get("nu").expect("bound")
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// `σ = j∘f`, its inverse, and `f⁻¹` from factoring `σ⁻¹` through `j`.
    ///
    /// Requires a reconstruction report without failures.
    pub fn recover_inverse(&self) -> Result<RecoveredInverse, CleftError> {
        require("reconstruct", &self.report)?;
        let mut env = self.env.clone();
        let sigma = env.define(
            "sigma",
            "Delta * gamma ; gamma * Upsilon ; muB * gammainv ; muB",
        )?;
        let sigma_inv = env.define(
            "sigmainv",
            "DeltaHH ; (mu ; gamma) * (gammainv * gammainv ; swap(B,B) ; muB) ; muB",
        )?;
        let j = env.get("j").expect("bound");
        let f_inv = factor_through(j, &sigma_inv)
            .ok_or_else(|| CleftError::FactorizationFailed("sigmainv".into()))?;
        let f_inv = retype(&f_inv, self.f().dom().clone(), self.f().cod().clone())?;
        env.bind("finv", f_inv.clone())?;
        let mut report = Corpus::active().run("recover", &env);
        report.push(match invert_cocycle(&self.cocycle) {
            Ok(inv) => Verdict::equal("finv.matches_solver", &f_inv, &inv.f_inv),
            Err(e) => Verdict::fail("finv.matches_solver", None).with_note(&e.to_string()),
        });
        Ok(RecoveredInverse {
            sigma,
            sigma_inv,
            f_inv,
            report,
        })
    }

    /// Builds `A ×_ρ^f H` from the recovered data and `Φ = w∘i: E → B`.
    ///
    /// Requires a reconstruction report without failures.
    pub fn iso(&self) -> Result<CleftIso, CleftError> {
        require("reconstruct", &self.report)?;
        let rebuilt = build_crossed_product(&self.cocycle)?;
        let mut env = self.env.clone();
        env.declare_object(E, rebuilt.dim())?;
        for (from, to) in [
            ("i", "iE"),
            ("muE", "muE"),
            ("etaE", "etaE"),
            ("deltaE", "deltaE"),
            ("j", "jE"),
        ] {
            env.bind(to, rebuilt.env().get(from).expect("bound").clone())?;
        }
        let map = env.define("Phi", "iE ; w")?;
        let mut report = Corpus::active().run("iso", &env);
        report.push(Verdict::from_bool(
            "iso.bijective",
            map.rows() == map.cols() && map.rank() == map.cols(),
        ));
        Ok(CleftIso {
            map,
            rebuilt,
            report,
        })
    }
}

/// Rebuilds `(ρ, f)` along both routes, checks they agree, and checks the crossed-product
/// hypotheses, the preunit laws of `ν̃` and `Ω = ∇_ν̃ = ∇_ρ`.
pub fn reconstruct(x: &Extension, c: &CleavingData) -> Result<Reconstruction, CleftError> {
    let d = decomposition(x, c)?;
    require("decomposition", &d.report)?;
    let mut env = d.env;
    env.define("mut", MU_TILDE)?;
    env.define("nu", "etaB ; wt")?;
    let rho = env.eval(RHO_ROUTE)?;
    let f = env.eval(F_ROUTE)?;
    let comodule = &x.comodule;
    let hopf = match &comodule.antipode {
        Some(s) => Some(WeakHopfAlgebra::unchecked(
            comodule.bialgebra.clone(),
            s.clone(),
        )?),
        None => None,
    };
    let measure = match &hopf {
        Some(h) => WeakMeasure::unchecked_hopf(h, &x.base, rho)?,
        None => WeakMeasure::unchecked(&comodule.bialgebra, &x.base, rho)?,
    };
    let cocycle = CocycleData::new(&measure, f)?;
    for name in FROM_COCYCLE {
        env.bind(name, cocycle.env().get(name).expect("bound").clone())?;
    }
    env.define("muAH", MU_AH)?;
    let mut report = Corpus::active().run("reconstruct", &env);
    report.push(Verdict::from_bool(
        "rho.weak_action",
        is_weak_module_algebra(&measure),
    ));
    Ok(Reconstruction {
        report,
        cocycle,
        env,
    })
}

/// `σ`, `σ⁻¹` and `f⁻¹` with their verdicts.
#[derive(Clone, Debug)]
pub struct RecoveredInverse {
    pub sigma: LinMap,
    pub sigma_inv: LinMap,
    pub f_inv: LinMap,
    pub report: VerdictReport,
}

/// Reconstructs and then recovers `f⁻¹`; see [`Reconstruction::recover_inverse`].
pub fn recover_inverse_cocycle(
    x: &Extension,
    c: &CleavingData,
) -> Result<RecoveredInverse, CleftError> {
    reconstruct(x, c)?.recover_inverse()
}

/// The rebuilt crossed product and the isomorphism `Φ: E → B`.
#[derive(Clone, Debug)]
pub struct CleftIso {
    pub map: LinMap,
    pub rebuilt: CrossedProduct,
    pub report: VerdictReport,
}

/// Reconstructs, requires the recovered inverse to check out, and builds the isomorphism.
pub fn cleft_to_crossed_iso(x: &Extension, c: &CleavingData) -> Result<CleftIso, CleftError> {
    let r = reconstruct(x, c)?;
    require("recover", &r.recover_inverse()?.report)?;
    r.iso()
}

/// A crossed product seen as an extension of `A` by its `H`-comodule algebra `E`, renamed `B`.
pub fn extension_of(x: &CrossedProduct) -> Result<Extension, CleftError> {
    let m = x.measure();
    let algebra = AlgebraData::unchecked(x.mu_e().renamed(E, B), x.eta_e().renamed(E, B))?;
    let delta = x.delta_e().renamed(E, B);
    let comodule = match m.antipode() {
        Some(s) => {
            let h = WeakHopfAlgebra::unchecked(m.bialgebra().clone(), s.clone())?;
            ComoduleAlgebra::for_hopf(&h, &algebra, delta)?
        }
        None => ComoduleAlgebra::new(m.bialgebra(), &algebra, delta)?,
    };
    Extension::new(&comodule, m.algebra(), x.j().renamed(E, B))
}

/// The cleaving pair `(γ, γ⁻¹)` of a crossed product, renamed to `B`.
pub fn cleaving_of(x: &CrossedProduct, gamma_inv: &LinMap) -> CleavingData {
    CleavingData {
        gamma: x.gamma().renamed(E, B),
        gamma_inv: gamma_inv.renamed(E, B),
    }
}
