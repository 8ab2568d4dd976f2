use super::{
    first_failure, is_weak_module_algebra, retype, CocycleData, CrossedError, WeakMeasure, E,
};
use crate::corpus::Corpus;
use crate::ir::Env;
use crate::linalg::{factor_through, span_basis, split_idempotent, LinMap};
use crate::verdict::{Verdict, VerdictReport};
use crate::weakhopf::{Convolution, CoreError};

pub(crate) const MU_AH: &str = "id(A) * chi * id(H) ; muA * F ; muA * id(H)";

/// The unitary crossed product, stored in split-image coordinates.
///
/// Invariant: `env` extends the cocycle env with the object `E` (dimension rank `∇_ρ`)
/// and `nu`, `muAH`, `i`, `p`, `muE`, `etaE`, `jbar`, `j`, `gamma`, `deltaE`, where
/// `i∘p = ∇_ρ` and `p∘i = id_E`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    cocycle: CocycleData,
    hypotheses: VerdictReport,
    env: Env,
}

impl CrossedProduct {
    pub fn measure(&self) -> &WeakMeasure {
        self.cocycle.measure()
    }

    pub fn cocycle(&self) -> &CocycleData {
        &self.cocycle
    }

    /// Verdicts of the five construction hypotheses, all passing.
    pub fn hypotheses(&self) -> &VerdictReport {
        &self.hypotheses
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    fn bound(&self, name: &str) -> &LinMap {
        self.env.get(name).expect("bound at construction")
    }

    pub fn dim(&self) -> usize {
        self.bound("i").cols()
    }

    /// `i: E → A⊗H`.
    pub fn i(&self) -> &LinMap {
        self.bound("i")
    }

    /// `p: A⊗H → E`.
    pub fn p(&self) -> &LinMap {
        self.bound("p")
    }

    pub fn mu_e(&self) -> &LinMap {
        self.bound("muE")
    }

    pub fn eta_e(&self) -> &LinMap {
        self.bound("etaE")
    }

    /// The preunit `ν = ∇_ρ∘(η_A⊗η)`.
    pub fn nu(&self) -> &LinMap {
        self.bound("nu")
    }

    /// The multiplication of `A⊗H` twisted by `χ_ρ` and `F_f`.
    pub fn mu_ah(&self) -> &LinMap {
        self.bound("muAH")
    }

    /// `j′ = (μ_A⊗H)∘(A⊗ν): A → A⊗H`.
    pub fn jbar(&self) -> &LinMap {
        self.bound("jbar")
    }

    /// `j = p∘j′: A → E`.
    pub fn j(&self) -> &LinMap {
        self.bound("j")
    }

    /// `γ = p∘(η_A⊗H): H → E`.
    pub fn gamma(&self) -> &LinMap {
        self.bound("gamma")
    }

    /// `δ_E = (p⊗H)∘(A⊗Δ)∘i`.
    pub fn delta_e(&self) -> &LinMap {
        self.bound("deltaE")
    }
}

/// Checks the five hypotheses in order and builds the crossed product.
pub fn build_crossed_product(c: &CocycleData) -> Result<CrossedProduct, CrossedError> {
    let corpus = Corpus::active();
    let mut env = c.env().clone();
    env.define("nu", "etaA * eta ; nabla")?;
    let mut hypotheses = corpus.run_ids("crossed_hypotheses", &["cond1"], &env);
    hypotheses.extend(
        "",
        corpus.run_ids("cocycle", &["twisted_module.f", "cocycle.f"], &env),
    );
    hypotheses.extend(
        "",
        corpus.run_ids(
            "crossed_hypotheses",
            &["preunit1", "preunit2", "preunit3"],
            &env,
        ),
    );
    if let Some(v) = first_failure(&hypotheses) {
        return Err(CrossedError::HypothesisFailed(Box::new(v)));
    }
    let split = split_idempotent(c.measure().nabla(), E)?;
    env.declare_object(E, split.rank)?;
    env.bind("i", split.inj)?;
    env.bind("p", split.proj)?;
    env.define("muAH", MU_AH)?;
    env.define("muE", "i * i ; muAH ; p")?;
    env.define("etaE", "nu ; p")?;
    env.define("jbar", "id(A) * nu ; muA * id(H)")?;
    env.define("j", "jbar ; p")?;
    env.define("gamma", "etaA * id(H) ; p")?;
    env.define("deltaE", "i ; id(A) * Delta ; p * id(H)")?;
    Ok(CrossedProduct {
        cocycle: c.clone(),
        hypotheses,
        env,
    })
}

/// Algebra, preunit, extension and comodule laws of a built crossed product.
///
/// `j.monic` is reported separately: degenerate measures with `ρ(1⊗1_A) ≠ 1_A` may give a
/// non-injective `j`.
pub fn crossed_product_law_suite(x: &CrossedProduct) -> VerdictReport {
    let corpus = Corpus::active();
    let mut r = corpus.run_ids(
        "crossed_hypotheses",
        &["preunit.via_twisting", "preunit.piL"],
        &x.env,
    );
    r.extend("", corpus.run("crossed_laws", &x.env));
    r.push(Verdict::from_bool("j.monic", x.j().rank() == x.j().cols()));
    r
}

/// Whether the kernel of `coaction − (X⊗Π^L)∘coaction` is exactly the image of `j`.
///
/// `coaction` and `j` name generators of `env`; the note records the kernel dimension.
pub(crate) fn equalizer_verdict(
    env: &Env,
    id: &str,
    coaction: &str,
    object: &str,
    j: &str,
) -> Verdict {
    let text = format!("{coaction} ; id({object}) * piL");
    let (delta, projected) = match (env.get(coaction), env.eval(&text)) {
        (Some(d), Ok(p)) => (d, p),
        (_, Err(e)) => return Verdict::fail(id, None).with_note(&e.to_string()),
        (None, _) => return Verdict::fail(id, None).with_note(&format!("{coaction} unbound")),
    };
    let Some(j) = env.get(j) else {
        return Verdict::fail(id, None).with_note("j unbound");
    };
    let diff = delta.sub(&projected).expect("same shape");
    let n = diff.cols();
    let kernel = span_basis(diff.kernel_basis(), n);
    let image = j.column_space();
    Verdict::from_bool(id, kernel == image).with_note(&format!(
        "dim {} vs image dim {}",
        kernel.len(),
        image.len()
    ))
}

/// The module-algebra consequences; every entry is skipped unless `ρ` is a weak action.
///
/// Includes the equalizer property of `(A, j)`, decided by exact subspace equality.
pub fn module_algebra_suite(x: &CrossedProduct) -> VerdictReport {
    let corpus = Corpus::active();
    if !is_weak_module_algebra(x.measure()) {
        let mut ids: Vec<&str> = corpus
            .signature("module_suite")
            .map(|e| e.id.as_str())
            .collect();
        ids.push("equalizer");
        return VerdictReport::skip_all(&ids, "rho is not a weak action");
    }
    let mut r = corpus.run("module_suite", &x.env);
    r.push(equalizer_verdict(&x.env, "equalizer", "deltaE", E, "j"));
    r
}

/// `f⁻¹` and the verdicts on the maps it determines.
#[derive(Clone, Debug)]
pub struct InverseCocycle {
    pub f_inv: LinMap,
    pub report: VerdictReport,
}

const INVERSE_DERIVED: [(&str, &str); 10] = [
    ("Fmul_left", "mu * id(H) ; f"),
    ("Fmul_left_inv", "mu * id(H) ; finv"),
    ("Fmul_right", "id(H) * mu ; f"),
    ("Fmul_right_inv", "id(H) * mu ; finv"),
    ("Fact", "id(H) * f ; rho"),
    ("Fact_inv", "id(H) * finv ; rho"),
    ("Fcounit", "f * epsilon"),
    ("Fcounit_inv", "finv * epsilon"),
    ("Fhat", "DeltaHHH ; u3 * Fcounit ; muA"),
    ("Fhat_inv", "DeltaHHH ; Fcounit_inv * u3 ; muA"),
];

/// The regular inverse of `f` in the convolution monoid on `H⊗H` with unit `u₂`.
///
/// Only regularity `f∗u₂ = f` is enforced; the derived identities in the report presume a
/// cocycle report without failures.
pub fn invert_cocycle(c: &CocycleData) -> Result<InverseCocycle, CrossedError> {
    let m = c.measure();
    let conv = Convolution::new(m.bialgebra().coalgebra(), 2, m.algebra());
    let u2 = c.env().get("u2").expect("bound");
    let f_inv = match conv.inverse(c.f(), u2) {
        Ok(Some(x)) => x,
        Ok(None) => return Err(CrossedError::NotInvertible),
        Err(CoreError::RegularityPreconditionFailed) => {
            return Err(CrossedError::PreconditionFailed(
                "f∗u2 differs from f".into(),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let f_inv = retype(&f_inv, c.f().dom().clone(), c.f().cod().clone())?;
    let mut env = c.env().clone();
    env.bind("finv", f_inv.clone())?;
    for (name, text) in INVERSE_DERIVED {
        env.define(name, text)?;
    }
    let report = Corpus::active().run("inverse_cocycle", &env);
    Ok(InverseCocycle { f_inv, report })
}

/// `γ⁻¹` and the cleftness verdicts.
#[derive(Clone, Debug)]
pub struct GammaInverse {
    pub gamma_inv: LinMap,
    pub report: VerdictReport,
}

const Q: &str = "Delta ; S * id(H) ; Delta * id(H) ; id(H) * swap(H,H) ; finv * id(H)";
const Q_ALT: &str = "Delta ; swap(H,H) ; (Delta ; S * id(H) ; finv) * S";

/// `γ⁻¹ = μ_E∘(j⊗γ)∘Q` from a candidate `f⁻¹`, with the convolution-inverse laws, the
/// equalizer property and the factorization of `γ∘Π^L` through `j`.
///
/// The final `cleft` verdict passes iff every other entry passes.
pub fn gamma_inverse(x: &CrossedProduct, f_inv: &LinMap) -> Result<GammaInverse, CrossedError> {
    if x.measure().antipode().is_none() {
        return Err(CrossedError::PreconditionFailed("H has no antipode".into()));
    }
    if !is_weak_module_algebra(x.measure()) {
        return Err(CrossedError::PreconditionFailed(
            "rho is not a weak action".into(),
        ));
    }
    let f = x.cocycle().f();
    let mut env = x.env.clone();
    env.bind("finv", retype(f_inv, f.dom().clone(), f.cod().clone())?)?;
    env.define("Q", Q)?;
    env.define("Qalt", Q_ALT)?;
    let gamma_inv = env.define("gammainv", "Q ; j * gamma ; muE")?;
    let mut report = Corpus::active().run("gamma_inverse", &env);
    report.push(equalizer_verdict(&env, "equalizer", "deltaE", E, "j"));
    let gpl = env.eval("piL ; gamma")?;
    report.push(Verdict::from_bool(
        "gamma_piL.factors",
        factor_through(x.j(), &gpl).is_some(),
    ));
    let ok = report.all_pass();
    report.push(Verdict::from_bool("cleft", ok));
    Ok(GammaInverse { gamma_inv, report })
}
