use std::fmt;
use std::sync::Arc;

/// A named object of the monoidal category: a finite-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Object {
    pub name: Arc<str>,
    pub dim: usize,
}

impl Object {
    pub fn new(name: &str, dim: usize) -> Object {
        Object {
            name: Arc::from(name),
            dim,
        }
    }
}

/// A tensor word X₁⊗…⊗Xₙ. The empty word is the unit object `K`, of dimension 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectWord {
    factors: Vec<Object>,
}

impl ObjectWord {
    pub fn unit() -> ObjectWord {
        ObjectWord::default()
    }

    pub fn new(factors: Vec<Object>) -> ObjectWord {
        ObjectWord { factors }
    }

    pub fn single(name: &str, dim: usize) -> ObjectWord {
        ObjectWord::new(vec![Object::new(name, dim)])
    }

    /// `obj` repeated `n` times.
    pub fn power(obj: &Object, n: usize) -> ObjectWord {
        ObjectWord::new(vec![obj.clone(); n])
    }

    pub fn factors(&self) -> &[Object] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|o| o.dim).product()
    }

    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        ObjectWord { factors }
    }

    /// The same word with every factor named `from` renamed to `to`.
    pub fn renamed(&self, from: &str, to: &str) -> ObjectWord {
        ObjectWord::new(
            self.factors
                .iter()
                .map(|o| {
                    if &*o.name == from {
                        Object::new(to, o.dim)
                    } else {
                        o.clone()
                    }
                })
                .collect(),
        )
    }

    /// Words `u`, `v` with `self = u·v` and `u` of length `k`.
    pub fn split_at(&self, k: usize) -> (ObjectWord, ObjectWord) {
        let (a, b) = self.factors.split_at(k);
        (ObjectWord::new(a.to_vec()), ObjectWord::new(b.to_vec()))
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "K");
        }
        let names: Vec<&str> = self.factors.iter().map(|o| &*o.name).collect();
        write!(f, "{}", names.join(","))
    }
}

impl From<&Object> for ObjectWord {
    fn from(o: &Object) -> ObjectWord {
        ObjectWord::new(vec![o.clone()])
    }
}
