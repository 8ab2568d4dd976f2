use std::collections::BTreeMap;

use super::Scalar;

/// A vector stored by its nonzero coordinates, ordered by index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    pub fn unit(index: usize, one: Scalar) -> SparseVec {
        let mut v = SparseVec::new();
        v.entries.insert(index, one);
        v
    }

    /// Adds `c` at `index`, dropping the entry if it cancels.
    pub fn add_at(&mut self, index: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    self.entries.remove(&index);
                } else {
                    *x = s;
                }
            }
            None => {
                self.entries.insert(index, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.entries {
            self.add_at(*i, &c.mul(x));
        }
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries.get(&index)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (f(*i), x.clone()))
                .collect(),
        }
    }

    /// Coordinates of `self ⊗ other` when `other` lives in a space of dimension `right_dim`.
    pub fn kron(&self, other: &SparseVec, right_dim: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in &self.entries {
            for (j, b) in &other.entries {
                out.entries.insert(i * right_dim + j, a.mul(b));
            }
        }
        out
    }

    /// Lowest index where the two vectors differ, with both values (zero given by `zero`).
    pub fn first_difference(
        &self,
        other: &SparseVec,
        zero: &Scalar,
    ) -> Option<(usize, Scalar, Scalar)> {
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return None,
                (Some((i, x)), None) => return Some((**i, (*x).clone(), zero.clone())),
                (None, Some((j, y))) => return Some((**j, zero.clone(), (*y).clone())),
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        return Some((**i, (*x).clone(), zero.clone()));
                    } else if j < i {
                        return Some((**j, zero.clone(), (*y).clone()));
                    } else if x != y {
                        return Some((**i, (*x).clone(), (*y).clone()));
                    }
                    a.next();
                    b.next();
                }
            }
        }
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in iter {
            v.add_at(i, &x);
        }
        v
    }
}
