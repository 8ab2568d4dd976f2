use std::collections::BTreeMap;

use super::IrError;
use crate::linalg::{Object, ObjectWord};

/// The name reserved for the monoidal unit; `id(K)` is the empty word.
pub const UNIT_NAME: &str = "K";

/// Named objects with dimensions and named generators with their types.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    objects: BTreeMap<String, usize>,
    generators: BTreeMap<String, (ObjectWord, ObjectWord)>,
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    fn check_fresh(&self, name: &str) -> Result<(), IrError> {
        if !valid_ident(name) || name == UNIT_NAME || name == "id" || name == "swap" {
            return Err(IrError::BadName(name.to_string()));
        }
        Ok(())
    }

    /// Declares an object; redeclaring with the same dimension is a no-op.
    pub fn add_object(&mut self, name: &str, dim: usize) -> Result<(), IrError> {
        self.check_fresh(name)?;
        if self.generators.contains_key(name) {
            return Err(IrError::BadName(name.to_string()));
        }
        match self.objects.get(name) {
            Some(&d) if d != dim => Err(IrError::ObjectConflict {
                name: name.to_string(),
                old: d,
                new: dim,
            }),
            _ => {
                self.objects.insert(name.to_string(), dim);
                Ok(())
            }
        }
    }

    /// Declares or retypes a generator; every object in its words must agree with the declarations.
    pub fn add_generator(
        &mut self,
        name: &str,
        dom: ObjectWord,
        cod: ObjectWord,
    ) -> Result<(), IrError> {
        self.check_fresh(name)?;
        if self.objects.contains_key(name) {
            return Err(IrError::BadName(name.to_string()));
        }
        for o in dom.factors().iter().chain(cod.factors()) {
            self.add_object(&o.name, o.dim)?;
        }
        self.generators.insert(name.to_string(), (dom, cod));
        Ok(())
    }

    pub fn object(&self, name: &str) -> Option<Object> {
        self.objects.get(name).map(|&d| Object::new(name, d))
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, usize)> {
        self.objects.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn generator(&self, name: &str) -> Option<&(ObjectWord, ObjectWord)> {
        self.generators.get(name)
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, &(ObjectWord, ObjectWord))> {
        self.generators.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The word of the listed object names; `K` contributes nothing.
    pub fn word(&self, names: &[&str]) -> Result<ObjectWord, IrError> {
        let mut factors = Vec::new();
        for n in names {
            if *n == UNIT_NAME {
                continue;
            }
            factors.push(self.object(n).ok_or_else(|| IrError::UnknownName {
                name: n.to_string(),
                line: 0,
                col: 0,
            })?);
        }
        Ok(ObjectWord::new(factors))
    }
}
