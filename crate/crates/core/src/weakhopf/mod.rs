//! Algebras, coalgebras, weak bialgebras and weak Hopf algebras given by structure
//! constants, with their axiom suites, convolution monoids and the groupoid examples.

mod convolution;
mod groupoid;

pub use convolution::{conv_inverse, convolve, Convolution};
pub use groupoid::{
    base_subalgebra, groupoid_algebra, small_groups, BaseSubalgebra, Group, GroupoidPresentation,
};

use crate::corpus::{run_suite, Corpus};
use crate::ir::{Env, IrError};
use crate::linalg::{FieldSpec, LinMap, LinalgError, Object, ObjectWord};
use crate::verdict::{Verdict, VerdictReport};

/// Object name under which a weak bialgebra appears in every signature.
pub const H: &str = "H";

#[derive(Debug, Clone, thiserror::Error)]
pub enum CoreError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("axiom fails: {0}")]
    AxiomFailed(Box<Verdict>),
    #[error("regularity precondition fails: g∗u ≠ g")]
    RegularityPreconditionFailed,
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error(transparent)]
    Ir(#[from] IrError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn shape(msg: String) -> CoreError {
    CoreError::Shape(msg)
}

/// The single factor of a one-letter word.
fn single(w: &ObjectWord) -> Option<&Object> {
    match w.factors() {
        [o] => Some(o),
        _ => None,
    }
}

fn first_failure(report: &VerdictReport) -> Result<(), CoreError> {
    match report.first_failure() {
        Some(v) => Err(CoreError::AxiomFailed(Box::new(v.clone()))),
        None => Ok(()),
    }
}

/// An environment with the bundled macros installed.
pub(crate) fn base_env(field: FieldSpec) -> Env {
    let mut env = Env::new(field);
    Corpus::bundled().install_macros(&mut env);
    env
}

/// A unital associative algebra `(X, μ, η)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    object: Object,
    mu: LinMap,
    eta: LinMap,
}

impl AlgebraData {
    /// Shape checks only: `μ: X⊗X → X`, `η: K → X`, `dim X ≥ 1`.
    pub fn unchecked(mu: LinMap, eta: LinMap) -> Result<AlgebraData, CoreError> {
        let object = single(mu.cod())
            .ok_or_else(|| {
                shape(format!(
                    "multiplication codomain {} is not one object",
                    mu.cod()
                ))
            })?
            .clone();
        let x = ObjectWord::from(&object);
        if object.dim == 0 {
            return Err(shape(format!("algebra {} has dimension 0", object.name)));
        }
        if *mu.dom() != x.concat(&x) {
            return Err(shape(format!(
                "multiplication domain {} is not {x},{x}",
                mu.dom()
            )));
        }
        if !eta.dom().is_unit() || *eta.cod() != x {
            return Err(shape(format!(
                "unit {}→{} is not K→{x}",
                eta.dom(),
                eta.cod()
            )));
        }
        if mu.field() != eta.field() {
            return Err(LinalgError::FieldMismatch.into());
        }
        Ok(AlgebraData { object, mu, eta })
    }

    /// Validated constructor: associativity and both unit laws must hold.
    pub fn new(mu: LinMap, eta: LinMap) -> Result<AlgebraData, CoreError> {
        let a = AlgebraData::unchecked(mu, eta)?;
        first_failure(&a.check())?;
        Ok(a)
    }

    pub fn check(&self) -> VerdictReport {
        let x = &*self.object.name;
        let mut env = Env::new(self.field());
        let mut report = VerdictReport::new();
        if let Err(e) = env
            .bind("m", self.mu.clone())
            .and_then(|_| env.bind("e", self.eta.clone()))
        {
            report.push(Verdict::fail("assoc", None).with_note(&e.to_string()));
            return report;
        }
        let checks = [
            (
                "assoc",
                format!("m * id({x}) ; m"),
                format!("id({x}) * m ; m"),
            ),
            ("unit.left", format!("e * id({x}) ; m"), format!("id({x})")),
            ("unit.right", format!("id({x}) * e ; m"), format!("id({x})")),
        ];
        for (id, l, r) in checks {
            report.push(
                env.check(id, &l, &r)
                    .unwrap_or_else(|e| Verdict::fail(id, None).with_note(&e.to_string())),
            );
        }
        report
    }

    pub fn field(&self) -> FieldSpec {
        self.mu.field()
    }

    pub fn object(&self) -> &Object {
        &self.object
    }

    pub fn word(&self) -> ObjectWord {
        ObjectWord::from(&self.object)
    }

    pub fn dim(&self) -> usize {
        self.object.dim
    }

    pub fn mu(&self) -> &LinMap {
        &self.mu
    }

    pub fn eta(&self) -> &LinMap {
        &self.eta
    }

    /// The same algebra on an object renamed to `name`.
    pub fn renamed(&self, name: &str) -> AlgebraData {
        let from = self.object.name.clone();
        AlgebraData {
            object: Object::new(name, self.object.dim),
            mu: self.mu.renamed(&from, name),
            eta: self.eta.renamed(&from, name),
        }
    }
}

/// A counital coassociative coalgebra `(C, Δ, ε)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraData {
    object: Object,
    delta: LinMap,
    eps: LinMap,
}

impl CoalgebraData {
    /// Shape checks only: `Δ: C → C⊗C`, `ε: C → K`, `dim C ≥ 1`.
    pub fn unchecked(delta: LinMap, eps: LinMap) -> Result<CoalgebraData, CoreError> {
        let object = single(delta.dom())
            .ok_or_else(|| {
                shape(format!(
                    "comultiplication domain {} is not one object",
                    delta.dom()
                ))
            })?
            .clone();
        let x = ObjectWord::from(&object);
        if object.dim == 0 {
            return Err(shape(format!("coalgebra {} has dimension 0", object.name)));
        }
        if *delta.cod() != x.concat(&x) {
            return Err(shape(format!(
                "comultiplication codomain {} is not {x},{x}",
                delta.cod()
            )));
        }
        if *eps.dom() != x || !eps.cod().is_unit() {
            return Err(shape(format!(
                "counit {}→{} is not {x}→K",
                eps.dom(),
                eps.cod()
            )));
        }
        if delta.field() != eps.field() {
            return Err(LinalgError::FieldMismatch.into());
        }
        Ok(CoalgebraData { object, delta, eps })
    }

    /// Validated constructor: coassociativity and both counit laws must hold.
    pub fn new(delta: LinMap, eps: LinMap) -> Result<CoalgebraData, CoreError> {
        let c = CoalgebraData::unchecked(delta, eps)?;
        first_failure(&c.check())?;
        Ok(c)
    }

    pub fn check(&self) -> VerdictReport {
        let x = &*self.object.name;
        let mut env = Env::new(self.field());
        let mut report = VerdictReport::new();
        if let Err(e) = env
            .bind("d", self.delta.clone())
            .and_then(|_| env.bind("e", self.eps.clone()))
        {
            report.push(Verdict::fail("coassoc", None).with_note(&e.to_string()));
            return report;
        }
        let checks = [
            (
                "coassoc",
                format!("d ; d * id({x})"),
                format!("d ; id({x}) * d"),
            ),
            (
                "counit.left",
                format!("d ; e * id({x})"),
                format!("id({x})"),
            ),
            (
                "counit.right",
                format!("d ; id({x}) * e"),
                format!("id({x})"),
            ),
        ];
        for (id, l, r) in checks {
            report.push(
                env.check(id, &l, &r)
                    .unwrap_or_else(|e| Verdict::fail(id, None).with_note(&e.to_string())),
            );
        }
        report
    }

    pub fn field(&self) -> FieldSpec {
        self.delta.field()
    }

    pub fn object(&self) -> &Object {
        &self.object
    }

    pub fn word(&self) -> ObjectWord {
        ObjectWord::from(&self.object)
    }

    pub fn dim(&self) -> usize {
        self.object.dim
    }

    pub fn delta(&self) -> &LinMap {
        &self.delta
    }

    pub fn eps(&self) -> &LinMap {
        &self.eps
    }
}

/// One of the four canonical idempotents of a weak bialgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// Target map, image `H^L`.
    L,
    /// Source map, image `H^R`.
    R,
    LBar,
    RBar,
}

impl Projection {
    pub const ALL: [Projection; 4] = [
        Projection::L,
        Projection::R,
        Projection::LBar,
        Projection::RBar,
    ];

    /// Generator name in every signature.
    pub fn name(self) -> &'static str {
        match self {
            Projection::L => "piL",
            Projection::R => "piR",
            Projection::LBar => "piLb",
            Projection::RBar => "piRb",
        }
    }

    /// Defining composite.
    pub fn formula(self) -> &'static str {
        match self {
            Projection::L => "(eta ; Delta) * id(H) ; id(H) * swap(H,H) ; (mu ; epsilon) * id(H)",
            Projection::R => "id(H) * (eta ; Delta) ; swap(H,H) * id(H) ; id(H) * (mu ; epsilon)",
            Projection::LBar => "(eta ; Delta) * id(H) ; id(H) * (mu ; epsilon)",
            Projection::RBar => "id(H) * (eta ; Delta) ; (mu ; epsilon) * id(H)",
        }
    }
}

/// Algebra and coalgebra on one space, with the projections cached.
///
/// `env` binds `mu, eta, Delta, epsilon, piL, piR, piLb, piRb` on the object `H`.
#[derive(Clone, Debug)]
pub struct WeakBialgebra {
    algebra: AlgebraData,
    coalgebra: CoalgebraData,
    projections: [LinMap; 4],
    env: Env,
}

impl WeakBialgebra {
    /// Shape checks only; the escape hatch for deliberate counterexamples.
    pub fn unchecked(
        algebra: AlgebraData,
        coalgebra: CoalgebraData,
    ) -> Result<WeakBialgebra, CoreError> {
        if algebra.object() != coalgebra.object() {
            return Err(shape(format!(
                "algebra on {} but coalgebra on {}",
                algebra.object().name,
                coalgebra.object().name
            )));
        }
        if algebra.field() != coalgebra.field() {
            return Err(LinalgError::FieldMismatch.into());
        }
        let from = algebra.object().name.clone();
        let mut env = base_env(algebra.field());
        env.bind("mu", algebra.mu().renamed(&from, H))?;
        env.bind("eta", algebra.eta().renamed(&from, H))?;
        env.bind("Delta", coalgebra.delta().renamed(&from, H))?;
        env.bind("epsilon", coalgebra.eps().renamed(&from, H))?;
        let mut projections = Vec::new();
        for k in Projection::ALL {
            projections.push(env.define(k.name(), k.formula())?);
        }
        let projections: [LinMap; 4] = projections.try_into().expect("four projections");
        Ok(WeakBialgebra {
            algebra,
            coalgebra,
            projections,
            env,
        })
    }

    /// Validated constructor: every weak bialgebra axiom must hold.
    pub fn new(algebra: AlgebraData, coalgebra: CoalgebraData) -> Result<WeakBialgebra, CoreError> {
        let h = WeakBialgebra::unchecked(algebra, coalgebra)?;
        first_failure(&check_bialgebra_axioms(&h))?;
        Ok(h)
    }

    pub fn from_maps(
        mu: LinMap,
        eta: LinMap,
        delta: LinMap,
        eps: LinMap,
    ) -> Result<WeakBialgebra, CoreError> {
        WeakBialgebra::new(
            AlgebraData::unchecked(mu, eta)?,
            CoalgebraData::unchecked(delta, eps)?,
        )
    }

    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &CoalgebraData {
        &self.coalgebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The space `H` as a one-letter word.
    pub fn word(&self) -> ObjectWord {
        ObjectWord::single(H, self.dim())
    }

    /// Projection matrix on the object `H`.
    pub fn projection(&self, kind: Projection) -> &LinMap {
        &self.projections[kind as usize]
    }

    /// Environment binding the structure maps and projections on the object `H`.
    pub fn env(&self) -> &Env {
        &self.env
    }
}

/// Weak bialgebra with an antipode; `env` additionally binds `S`.
#[derive(Clone, Debug)]
pub struct WeakHopfAlgebra {
    bialgebra: WeakBialgebra,
    antipode: LinMap,
    env: Env,
}

impl WeakHopfAlgebra {
    pub fn unchecked(
        bialgebra: WeakBialgebra,
        antipode: LinMap,
    ) -> Result<WeakHopfAlgebra, CoreError> {
        let w = bialgebra.word();
        if antipode.rows() != w.dim() || antipode.cols() != w.dim() {
            return Err(shape(format!(
                "antipode is {}x{}, expected an endomorphism of H",
                antipode.rows(),
                antipode.cols()
            )));
        }
        let antipode = antipode.with_words(w.clone(), w)?;
        let env = bialgebra.env().with("S", antipode.clone())?;
        Ok(WeakHopfAlgebra {
            bialgebra,
            antipode,
            env,
        })
    }

    /// Validated constructor: the antipode axioms must hold.
    pub fn new(bialgebra: WeakBialgebra, antipode: LinMap) -> Result<WeakHopfAlgebra, CoreError> {
        let h = WeakHopfAlgebra::unchecked(bialgebra, antipode)?;
        first_failure(&check_antipode(&h))?;
        Ok(h)
    }

    pub fn bialgebra(&self) -> &WeakBialgebra {
        &self.bialgebra
    }

    /// Antipode on the object `H`.
    pub fn antipode(&self) -> &LinMap {
        &self.antipode
    }

    /// Environment of the bialgebra plus `S`.
    pub fn env(&self) -> &Env {
        &self.env
    }
}

impl std::ops::Deref for WeakHopfAlgebra {
    type Target = WeakBialgebra;

    fn deref(&self) -> &WeakBialgebra {
        &self.bialgebra
    }
}

/// Associativity, unit, coassociativity, counit and the three weak axioms.
pub fn check_bialgebra_axioms(h: &WeakBialgebra) -> VerdictReport {
    run_suite("weak_bialgebra", h.env())
}

/// The identities relating the projections; antipode entries are skipped without `S`.
pub fn projection_identity_suite(h: &WeakBialgebra, antipode: Option<&LinMap>) -> VerdictReport {
    let env = match antipode {
        Some(s) => {
            let w = h.word();
            match s
                .with_words(w.clone(), w)
                .map_err(IrError::from)
                .and_then(|s| h.env().with("S", s))
            {
                Ok(env) => env,
                Err(e) => {
                    let mut r = VerdictReport::new();
                    r.push(Verdict::fail("antipode.shape", None).with_note(&e.to_string()));
                    return r;
                }
            }
        }
        None => h.env().clone(),
    };
    run_suite("projections", &env)
}

/// The antipode axioms and the derived anti-(co)multiplicativity and (co)unit laws.
pub fn check_antipode(h: &WeakHopfAlgebra) -> VerdictReport {
    run_suite("weak_hopf", h.env())
}
