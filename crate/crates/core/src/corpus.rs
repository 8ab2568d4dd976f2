//! The identity corpus: named equalities between terms, grouped by signature.
//!
//! Each suite in the library runs every entry of one signature against an [`Env`]
//! binding that signature's generators. Entries naming a generator in `needs` that the
//! environment lacks are reported as skipped.
//!
//! Suites use [`Corpus::active`]: the bundled corpus, or the directory named by the
//! `WEAKHOPF_CORPUS` environment variable when it is set and loads.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::ir::Env;
use crate::verdict::{Verdict, VerdictReport};

const BUNDLED: &str = include_str!("../corpus/identities.json");

/// Environment variable naming a corpus directory that replaces the bundled one.
pub const CORPUS_ENV: &str = "WEAKHOPF_CORPUS";

/// File name of the identity list inside a corpus directory.
pub const IDENTITIES_FILE: &str = "identities.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityEntry {
    pub id: String,
    pub sig: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub needs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    #[serde(default)]
    pub macros: BTreeMap<String, String>,
    pub identities: Vec<IdentityEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed corpus: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate identity {sig}/{id}")]
    Duplicate { sig: String, id: String },
}

impl Corpus {
    /// The corpus compiled into the library.
    pub fn bundled() -> &'static Corpus {
        static CORPUS: OnceLock<Corpus> = OnceLock::new();
        CORPUS.get_or_init(|| Corpus::from_json(BUNDLED).expect("bundled corpus is well formed"))
    }

    /// The corpus named by `WEAKHOPF_CORPUS`, if the variable is set.
    pub fn from_env() -> Option<Result<Corpus, CorpusError>> {
        std::env::var_os(CORPUS_ENV).map(|dir| Corpus::load_dir(Path::new(&dir)))
    }

    /// The corpus used by every suite, resolved once per process.
    pub fn active() -> &'static Corpus {
        static ACTIVE: OnceLock<Corpus> = OnceLock::new();
        ACTIVE.get_or_init(|| match Corpus::from_env() {
            Some(Ok(c)) => c,
            _ => Corpus::bundled().clone(),
        })
    }

    pub fn from_json(text: &str) -> Result<Corpus, CorpusError> {
        let c: Corpus = serde_json::from_str(text)?;
        let mut seen = std::collections::BTreeSet::new();
        for e in &c.identities {
            if !seen.insert((e.sig.as_str(), e.id.as_str())) {
                return Err(CorpusError::Duplicate {
                    sig: e.sig.clone(),
                    id: e.id.clone(),
                });
            }
        }
        Ok(c)
    }

    /// Loads `identities.json` from a corpus directory.
    pub fn load_dir(dir: &Path) -> Result<Corpus, CorpusError> {
        Corpus::from_json(&std::fs::read_to_string(dir.join(IDENTITIES_FILE))?)
    }

    pub fn signature<'a>(&'a self, sig: &'a str) -> impl Iterator<Item = &'a IdentityEntry> + 'a {
        self.identities.iter().filter(move |e| e.sig == sig)
    }

    pub fn signatures(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.identities {
            if !out.contains(&e.sig.as_str()) {
                out.push(&e.sig);
            }
        }
        out
    }

    pub fn entry(&self, sig: &str, id: &str) -> Option<&IdentityEntry> {
        self.identities.iter().find(|e| e.sig == sig && e.id == id)
    }

    /// Adds this corpus's macros to `env`, keeping any generator of the same name.
    pub fn install_macros(&self, env: &mut Env) {
        for (name, text) in &self.macros {
            let _ = env.define_macro(name, text);
        }
    }

    /// Checks one entry; malformed or ill-typed terms fail with the error as the note.
    pub fn check_entry(&self, e: &IdentityEntry, env: &Env) -> Verdict {
        if let Some(missing) = e.needs.iter().find(|n| env.get(n).is_none()) {
            return Verdict::skipped(&e.id, &format!("requires {missing}"));
        }
        match env.check(&e.id, &e.lhs, &e.rhs) {
            Ok(v) => v,
            Err(err) => Verdict::fail(&e.id, None).with_note(&err.to_string()),
        }
    }

    /// Runs every entry of `sig` in corpus order.
    pub fn run(&self, sig: &str, env: &Env) -> VerdictReport {
        let mut env = env.clone();
        self.install_macros(&mut env);
        let mut report = VerdictReport::new();
        for e in self.signature(sig) {
            report.push(self.check_entry(e, &env));
        }
        report
    }

    /// Runs the listed entries of `sig`, in the given order.
    pub fn run_ids(&self, sig: &str, ids: &[&str], env: &Env) -> VerdictReport {
        let mut env = env.clone();
        self.install_macros(&mut env);
        let mut report = VerdictReport::new();
        for id in ids {
            match self.entry(sig, id) {
                Some(e) => report.push(self.check_entry(e, &env)),
                None => report.push(Verdict::fail(id, None).with_note("not in corpus")),
            }
        }
        report
    }
}

/// Runs a signature of the active corpus.
pub fn run_suite(sig: &str, env: &Env) -> VerdictReport {
    Corpus::active().run(sig, env)
}
