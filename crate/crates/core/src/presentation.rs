//! JSON presentation files: named objects, generator matrices and role tags.
//!
//! Scalars are strings (`"3/2"`, `"-5"`) read in the declared field. Matrices are row-major
//! with one row per codomain basis vector. Maps keep the names they have in the file; the
//! role accessors relabel them onto the fixed objects `H`, `A` and `B`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cleft::{CleavingData, ComoduleAlgebra, Extension};
use crate::crossed::{CocycleData, CrossedProduct, WeakMeasure};
use crate::instances::SmashInstance;
use crate::ir::Env;
use crate::linalg::{FieldSpec, LinMap, Object, ObjectWord};
use crate::weakhopf::{AlgebraData, CoalgebraData, WeakBialgebra, WeakHopfAlgebra};

#[derive(Debug, thiserror::Error)]
pub enum PresentationError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed presentation: {0}")]
    Json(#[from] serde_json::Error),
    #[error("generator {name}: {message}")]
    Generator { name: String, message: String },
    #[error("missing role {0}")]
    MissingRole(&'static str),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("{0}")]
    Structure(String),
}

fn structure(e: impl std::fmt::Display) -> PresentationError {
    PresentationError::Structure(e.to_string())
}

/// One generator: its domain and codomain words and its matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraRole {
    pub mu: String,
    pub eta: String,
    #[serde(rename = "Delta")]
    pub delta: String,
    pub epsilon: String,
}

/// The algebra `A` and the measure `ρ` on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureRole {
    pub mu: String,
    pub eta: String,
    pub rho: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleRole {
    pub mu: String,
    pub eta: String,
    pub delta: String,
}

/// The algebra `A` and the extension map `j: A → B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRole {
    pub mu: String,
    pub eta: String,
    pub j: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleavingRole {
    pub gamma: String,
    pub gamma_inv: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bialgebra: Option<BialgebraRole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureRole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comodule: Option<ComoduleRole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionRole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cleaving: Option<CleavingRole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

/// The on-disk form. Maps are ordered by name, so serialization is deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub field: FieldSpec,
    pub objects: BTreeMap<String, usize>,
    pub generators: BTreeMap<String, GeneratorEntry>,
    #[serde(default)]
    pub roles: Roles,
}

impl PresentationFile {
    pub fn new(field: FieldSpec) -> PresentationFile {
        PresentationFile {
            field,
            objects: BTreeMap::new(),
            generators: BTreeMap::new(),
            roles: Roles::default(),
        }
    }

    /// Adds a map under `name`, declaring the objects of its words.
    pub fn insert(&mut self, name: &str, m: &LinMap) -> Result<(), PresentationError> {
        let mut names = |w: &ObjectWord| -> Result<Vec<String>, PresentationError> {
            let mut out = Vec::new();
            for o in w.factors() {
                let d = *self.objects.entry(o.name.to_string()).or_insert(o.dim);
                if d != o.dim {
                    return Err(structure(format!(
                        "object {} declared with dimension {d}, not {}",
                        o.name, o.dim
                    )));
                }
                out.push(o.name.to_string());
            }
            Ok(out)
        };
        let dom = names(m.dom())?;
        let cod = names(m.cod())?;
        let matrix = m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        self.generators
            .insert(name.to_string(), GeneratorEntry { dom, cod, matrix });
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// A parsed presentation: the file, its digest, and an env binding every generator.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub file: PresentationFile,
    pub sha256: String,
    env: Env,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Presentation {
    pub fn load(path: &Path, field: Option<FieldSpec>) -> Result<Presentation, PresentationError> {
        let text = std::fs::read_to_string(path).map_err(|source| PresentationError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Presentation::from_json(&text, field)
    }

    /// Parses the file; `field` overrides the declared field.
    pub fn from_json(
        text: &str,
        field: Option<FieldSpec>,
    ) -> Result<Presentation, PresentationError> {
        let mut file: PresentationFile = serde_json::from_str(text)?;
        if let Some(f) = field {
            file.field = f;
        }
        let mut env = Env::new(file.field);
        for (name, &dim) in &file.objects {
            env.declare_object(name, dim).map_err(structure)?;
        }
        for (name, g) in &file.generators {
            let m = parse_generator(&file, name, g)?;
            env.bind(name, m)
                .map_err(|e| PresentationError::Generator {
                    name: name.clone(),
                    message: e.to_string(),
                })?;
        }
        crate::corpus::Corpus::active().install_macros(&mut env);
        Ok(Presentation {
            file,
            sha256: sha256_hex(text.as_bytes()),
            env,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.file.field
    }

    /// Every generator under its file name, plus the corpus macros.
    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn map(&self, name: &str) -> Result<&LinMap, PresentationError> {
        self.env
            .get(name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    fn algebra(&self, mu: &str, eta: &str) -> Result<AlgebraData, PresentationError> {
        AlgebraData::unchecked(self.map(mu)?.clone(), self.map(eta)?.clone()).map_err(structure)
    }

    /// The bialgebra, without checking its axioms.
    pub fn bialgebra(&self) -> Result<WeakBialgebra, PresentationError> {
        let r = self
            .file
            .roles
            .bialgebra
            .as_ref()
            .ok_or(PresentationError::MissingRole("bialgebra"))?;
        let coalgebra =
            CoalgebraData::unchecked(self.map(&r.delta)?.clone(), self.map(&r.epsilon)?.clone())
                .map_err(structure)?;
        WeakBialgebra::unchecked(self.algebra(&r.mu, &r.eta)?, coalgebra).map_err(structure)
    }

    /// The bialgebra with its antipode, when the file tags one.
    pub fn hopf(&self) -> Result<Option<WeakHopfAlgebra>, PresentationError> {
        let Some(s) = &self.file.roles.antipode else {
            return Ok(None);
        };
        let h = self.bialgebra()?;
        WeakHopfAlgebra::unchecked(h, self.map(s)?.clone())
            .map(Some)
            .map_err(structure)
    }

    /// The measure, with `rho` overriding the tagged generator; axioms are not checked.
    pub fn measure(&self, rho: Option<&str>) -> Result<WeakMeasure, PresentationError> {
        let r = self
            .file
            .roles
            .measure
            .as_ref()
            .ok_or(PresentationError::MissingRole("measure"))?;
        let a = self.algebra(&r.mu, &r.eta)?;
        let rho = self.map(rho.unwrap_or(&r.rho))?.clone();
        match self.hopf()? {
            Some(h) => WeakMeasure::unchecked_hopf(&h, &a, rho),
            None => WeakMeasure::unchecked(&self.bialgebra()?, &a, rho),
        }
        .map_err(structure)
    }

    /// The cocycle on `m`, with `f` overriding the tagged generator.
    pub fn cocycle(
        &self,
        m: &WeakMeasure,
        f: Option<&str>,
    ) -> Result<CocycleData, PresentationError> {
        let tagged = self.file.roles.cocycle.as_deref();
        let name = f
            .or(tagged)
            .ok_or(PresentationError::MissingRole("cocycle"))?;
        CocycleData::new(m, self.map(name)?.clone()).map_err(structure)
    }

    pub fn comodule(&self) -> Result<ComoduleAlgebra, PresentationError> {
        let r = self
            .file
            .roles
            .comodule
            .as_ref()
            .ok_or(PresentationError::MissingRole("comodule"))?;
        let b = self.algebra(&r.mu, &r.eta)?;
        let delta = self.map(&r.delta)?.clone();
        match self.hopf()? {
            Some(h) => ComoduleAlgebra::for_hopf(&h, &b, delta),
            None => ComoduleAlgebra::new(&self.bialgebra()?, &b, delta),
        }
        .map_err(structure)
    }

    pub fn extension(&self) -> Result<Extension, PresentationError> {
        let r = self
            .file
            .roles
            .extension
            .as_ref()
            .ok_or(PresentationError::MissingRole("extension"))?;
        let a = self.algebra(&r.mu, &r.eta)?;
        Extension::new(&self.comodule()?, &a, self.map(&r.j)?.clone()).map_err(structure)
    }

    pub fn cleaving(&self) -> Result<CleavingData, PresentationError> {
        let r = self
            .file
            .roles
            .cleaving
            .as_ref()
            .ok_or(PresentationError::MissingRole("cleaving"))?;
        Ok(CleavingData {
            gamma: self.map(&r.gamma)?.clone(),
            gamma_inv: self.map(&r.gamma_inv)?.clone(),
        })
    }

    /// The map tagged `phi`, or the generator `name`.
    pub fn phi(&self, name: Option<&str>) -> Result<LinMap, PresentationError> {
        let tagged = self.file.roles.phi.as_deref();
        let name = name
            .or(tagged)
            .ok_or(PresentationError::MissingRole("phi"))?;
        Ok(self.map(name)?.clone())
    }
}

fn parse_generator(
    file: &PresentationFile,
    name: &str,
    g: &GeneratorEntry,
) -> Result<LinMap, PresentationError> {
    let err = |message: String| PresentationError::Generator {
        name: name.to_string(),
        message,
    };
    let word = |names: &[String]| -> Result<ObjectWord, PresentationError> {
        let mut factors = Vec::new();
        for n in names {
            let d = file
                .objects
                .get(n)
                .ok_or_else(|| err(format!("undeclared object {n}")))?;
            factors.push(Object::new(n, *d));
        }
        Ok(ObjectWord::new(factors))
    };
    let (dom, cod) = (word(&g.dom)?, word(&g.cod)?);
    if g.matrix.len() != cod.dim() || g.matrix.iter().any(|r| r.len() != dom.dim()) {
        return Err(err(format!("matrix is not {}x{}", cod.dim(), dom.dim())));
    }
    let mut entries = Vec::with_capacity(cod.dim() * dom.dim());
    for row in &g.matrix {
        for x in row {
            entries.push(file.field.parse_scalar(x).map_err(|e| err(e.to_string()))?);
        }
    }
    LinMap::new(file.field, dom, cod, entries).map_err(|e| err(e.to_string()))
}

/// A groupoid smash instance with the roles `bialgebra`, `antipode`, `measure`, `cocycle`,
/// and `phi` tagging `u₁`, the map of the identity equivalence.
///
/// Objects are `H` and `A`; generators use the names of the library envs.
pub fn smash_presentation(inst: &SmashInstance) -> PresentationFile {
    let mut file = PresentationFile::new(inst.hopf.field());
    let env = inst.measure.env();
    for name in ["mu", "eta", "Delta", "epsilon", "S", "muA", "etaA", "rho"] {
        file.insert(name, env.get(name).expect("bound"))
            .expect("fresh file");
    }
    file.insert("f", inst.cocycle.f()).expect("fresh file");
    file.insert("u1", env.get("u1").expect("bound"))
        .expect("fresh file");
    file.roles = Roles {
        bialgebra: Some(BialgebraRole {
            mu: "mu".into(),
            eta: "eta".into(),
            delta: "Delta".into(),
            epsilon: "epsilon".into(),
        }),
        antipode: Some("S".into()),
        measure: Some(MeasureRole {
            mu: "muA".into(),
            eta: "etaA".into(),
            rho: "rho".into(),
        }),
        cocycle: Some("f".into()),
        phi: Some("u1".into()),
        ..Roles::default()
    };
    file
}

/// The input presentation plus the built product as a comodule algebra `E` over `A`, and the
/// cleaving pair when `gamma_inv` is given.
pub fn crossed_product_presentation(
    input: &PresentationFile,
    x: &CrossedProduct,
    gamma_inv: Option<&LinMap>,
) -> Result<PresentationFile, PresentationError> {
    let mut file = input.clone();
    for name in ["i", "p", "nu", "muE", "etaE", "deltaE", "j", "gamma"] {
        file.insert(&format!("E_{name}"), x.env().get(name).expect("bound"))?;
    }
    let m = x.measure().env();
    file.insert("E_muA", m.get("muA").expect("bound"))?;
    file.insert("E_etaA", m.get("etaA").expect("bound"))?;
    file.roles.comodule = Some(ComoduleRole {
        mu: "E_muE".into(),
        eta: "E_etaE".into(),
        delta: "E_deltaE".into(),
    });
    file.roles.extension = Some(ExtensionRole {
        mu: "E_muA".into(),
        eta: "E_etaA".into(),
        j: "E_j".into(),
    });
    if let Some(g) = gamma_inv {
        file.insert("E_gammainv", g)?;
        file.roles.cleaving = Some(CleavingRole {
            gamma: "E_gamma".into(),
            gamma_inv: "E_gammainv".into(),
        });
    }
    Ok(file)
}

/// The instance files shipped in `corpus/instances`, by file stem.
///
/// `broken_counit` has `ε(g₁₂) = 0` on the pair groupoid; `broken_preunit` has the ℤ/2
/// cocycle `f(g⊗h) = δ_{h,1}`, right normal and a cocycle but not left normal.
pub fn bundled_instances() -> Vec<(&'static str, PresentationFile)> {
    let q = FieldSpec::Rational;
    let pair = smash_presentation(&crate::instances::pair_groupoid_smash(q));
    let hopf = crate::instances::hopf_trivial_smash(q);
    let mut broken_counit = pair.clone();
    broken_counit
        .generators
        .get_mut("epsilon")
        .expect("counit")
        .matrix[0][1] = "0".into();
    let mut broken_preunit = smash_presentation(&hopf);
    let unit = hopf
        .hopf
        .algebra()
        .eta()
        .column(0)
        .iter()
        .next()
        .expect("unit")
        .0;
    let f = broken_preunit.generators.get_mut("f").expect("cocycle");
    let n = hopf.hopf.dim();
    for col in 0..n * n {
        f.matrix[0][col] = if col % n == unit {
            "1".into()
        } else {
            "0".into()
        };
    }
    vec![
        ("pair_groupoid", pair),
        ("hopf_z2", smash_presentation(&hopf)),
        ("broken_counit", broken_counit),
        ("broken_preunit", broken_preunit),
    ]
}
