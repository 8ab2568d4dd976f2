use std::fmt;

use super::{FieldSpec, LinalgError, Object, ObjectWord, Scalar, SparseVec};

/// A linear map `dom → cod` as a dense exact matrix, rows indexed by the codomain basis.
///
/// Basis of a word X₁⊗…⊗Xₙ: lexicographic, leftmost factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    field: FieldSpec,
    dom: ObjectWord,
    cod: ObjectWord,
    entries: Vec<Scalar>,
}

impl LinMap {
    pub fn new(
        field: FieldSpec,
        dom: ObjectWord,
        cod: ObjectWord,
        entries: Vec<Scalar>,
    ) -> Result<LinMap, LinalgError> {
        if entries.len() != dom.dim() * cod.dim() {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                cod.dim(),
                dom.dim()
            )));
        }
        if entries.iter().any(|s| !field.contains(s)) {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(LinMap {
            field,
            dom,
            cod,
            entries,
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        dom: ObjectWord,
        cod: ObjectWord,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> LinMap {
        let (r, c) = (cod.dim(), dom.dim());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(f(i, j));
            }
        }
        LinMap {
            field,
            dom,
            cod,
            entries,
        }
    }

    /// Builds a map from integer structure constants, row-major.
    pub fn from_ints(
        field: FieldSpec,
        dom: ObjectWord,
        cod: ObjectWord,
        rows: &[&[i64]],
    ) -> LinMap {
        assert_eq!(rows.len(), cod.dim(), "row count");
        LinMap::from_fn(field, dom, cod, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn zero(field: FieldSpec, dom: ObjectWord, cod: ObjectWord) -> LinMap {
        let z = field.zero();
        LinMap::from_fn(field, dom, cod, |_, _| z.clone())
    }

    pub fn identity(field: FieldSpec, word: &ObjectWord) -> LinMap {
        let (z, o) = (field.zero(), field.one());
        LinMap::from_fn(field, word.clone(), word.clone(), |i, j| {
            if i == j {
                o.clone()
            } else {
                z.clone()
            }
        })
    }

    /// The map whose `c`-th column is `cols[c]`.
    pub fn from_columns(
        field: FieldSpec,
        dom: ObjectWord,
        cod: ObjectWord,
        cols: &[SparseVec],
    ) -> LinMap {
        assert_eq!(cols.len(), dom.dim(), "column count");
        let (r, c) = (cod.dim(), dom.dim());
        let mut entries = vec![field.zero(); r * c];
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter() {
                entries[i * c + j] = x.clone();
            }
        }
        LinMap {
            field,
            dom,
            cod,
            entries,
        }
    }

    /// `c_{X,Y}: X⊗Y → Y⊗X`, sending e_i⊗e_j to e_j⊗e_i (block permutation for words).
    pub fn swap(field: FieldSpec, x: &ObjectWord, y: &ObjectWord) -> LinMap {
        let (dx, dy) = (x.dim(), y.dim());
        let cols: Vec<SparseVec> = (0..dx * dy)
            .map(|k| SparseVec::unit(swap_index(k, dx, dy), field.one()))
            .collect();
        LinMap::from_columns(field, x.concat(y), y.concat(x), &cols)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dom(&self) -> &ObjectWord {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectWord {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.dim()
    }

    pub fn cols(&self) -> usize {
        self.dom.dim()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        let c = self.cols();
        assert!(self.field.contains(&value), "scalar field mismatch");
        self.entries[row * c + col] = value;
    }

    pub fn column(&self, col: usize) -> SparseVec {
        (0..self.rows())
            .map(|i| (i, self.get(i, col).clone()))
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    /// Applies the map to a sparse vector of the domain.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v.iter() {
            for i in 0..self.rows() {
                out.add_at(i, &x.mul(self.get(i, j)));
            }
        }
        out
    }

    /// Same matrix, relabelled domain and codomain words of equal dimensions.
    pub fn with_words(&self, dom: ObjectWord, cod: ObjectWord) -> Result<LinMap, LinalgError> {
        if dom.dim() != self.cols() || cod.dim() != self.rows() {
            return Err(LinalgError::Shape(format!(
                "cannot relabel {}→{} as {}→{}",
                self.dom, self.cod, dom, cod
            )));
        }
        Ok(LinMap {
            field: self.field,
            dom,
            cod,
            entries: self.entries.clone(),
        })
    }

    /// Same matrix with the object `from` renamed to `to` in both words.
    pub fn renamed(&self, from: &str, to: &str) -> LinMap {
        LinMap {
            dom: self.dom.renamed(from, to),
            cod: self.cod.renamed(from, to),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap, LinalgError> {
        self.same_shape(other)?;
        Ok(self.zip(other, Scalar::add))
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap, LinalgError> {
        self.same_shape(other)?;
        Ok(self.zip(other, Scalar::sub))
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap {
            entries: self.entries.iter().map(|x| x.mul(c)).collect(),
            ..self.clone()
        }
    }

    fn zip(&self, other: &LinMap, op: fn(&Scalar, &Scalar) -> Scalar) -> LinMap {
        LinMap {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| op(a, b))
                .collect(),
            ..self.clone()
        }
    }

    fn same_shape(&self, other: &LinMap) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(LinalgError::Shape(format!(
                "{}→{} vs {}→{}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        Ok(())
    }

    /// First differing entry, scanning columns in order and rows within a column.
    pub fn first_difference(&self, other: &LinMap) -> Option<(usize, usize, Scalar, Scalar)> {
        for j in 0..self.cols().min(other.cols()) {
            for i in 0..self.rows().min(other.rows()) {
                let (a, b) = (self.get(i, j), other.get(i, j));
                if a != b {
                    return Some((i, j, a.clone(), b.clone()));
                }
            }
        }
        None
    }

    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.field, self.cod.clone(), self.dom.clone(), |i, j| {
            self.get(j, i).clone()
        })
    }

    /// Row-major copy as nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .chunks(self.cols().max(1))
            .take(self.rows())
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.to_rows(), self.cols()).1.len()
    }

    /// Basis of the null space, one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = rref(self.to_rows(), self.cols());
        let n = self.cols();
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); n];
            v[free] = self.field.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = r[k][free].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical (reduced echelon) basis of the column space, as rows.
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        let t = self.transpose();
        span_basis(t.to_rows(), t.cols())
    }
}

/// Canonical basis (nonzero RREF rows) of the span of `vectors` in a space of dimension `n`.
pub fn span_basis(vectors: Vec<Vec<Scalar>>, n: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(vectors, n);
    r.into_iter().take(pivots.len()).collect()
}

/// Index of e_j⊗e_i given the index `k` of e_i⊗e_j in X⊗Y.
pub(crate) fn swap_index(k: usize, dx: usize, dy: usize) -> usize {
    let (i, j) = (k / dy, k % dy);
    j * dx + i
}

/// Reduced row echelon form with pivoting on the first nonzero entry of each column.
/// Returns the reduced rows and the ascending pivot columns.
pub fn rref(mut m: Vec<Vec<Scalar>>, ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(r) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r);
        let inv = m[row][col].inv().expect("pivot is nonzero");
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[row].clone();
        for (k, other) in m.iter_mut().enumerate() {
            if k == row || other[col].is_zero() {
                continue;
            }
            let c = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&c.mul(p));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// `g∘f`. Requires `cod(f) = dom(g)` as words.
pub fn compose(g: &LinMap, f: &LinMap) -> Result<LinMap, LinalgError> {
    if g.field != f.field {
        return Err(LinalgError::FieldMismatch);
    }
    if f.cod != g.dom {
        return Err(LinalgError::Shape(format!(
            "cannot compose: codomain {} vs domain {}",
            f.cod, g.dom
        )));
    }
    let (r, m, c) = (g.rows(), g.cols(), f.cols());
    let mut entries = vec![g.field.zero(); r * c];
    for i in 0..r {
        for k in 0..m {
            let a = g.get(i, k);
            if a.is_zero() {
                continue;
            }
            for j in 0..c {
                let b = f.get(k, j);
                if !b.is_zero() {
                    let e = &mut entries[i * c + j];
                    *e = e.add(&a.mul(b));
                }
            }
        }
    }
    Ok(LinMap {
        field: g.field,
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        entries,
    })
}

/// Kronecker product `f⊗g` under the leftmost-most-significant index order.
pub fn tensor_product(f: &LinMap, g: &LinMap) -> Result<LinMap, LinalgError> {
    if f.field != g.field {
        return Err(LinalgError::FieldMismatch);
    }
    let (gr, gc) = (g.rows(), g.cols());
    Ok(LinMap::from_fn(
        f.field,
        f.dom.concat(&g.dom),
        f.cod.concat(&g.cod),
        |i, j| f.get(i / gr, j / gc).mul(g.get(i % gr, j % gc)),
    ))
}

/// Result of splitting an idempotent `e = inj∘proj` with `proj∘inj = id`.
#[derive(Clone, Debug)]
pub struct Split {
    pub rank: usize,
    pub inj: LinMap,
    pub proj: LinMap,
}

/// Splits an idempotent through its image, named `image`.
///
/// The image basis is the set of columns of `e` at the RREF pivot positions, ascending;
/// `proj` is the block of nonzero RREF rows.
pub fn split_idempotent(e: &LinMap, image: &str) -> Result<Split, LinalgError> {
    if e.dom != e.cod {
        return Err(LinalgError::Shape(format!(
            "idempotent must be an endomorphism, got {}→{}",
            e.dom, e.cod
        )));
    }
    let sq = compose(e, e)?;
    if let Some((_, col, _, _)) = sq.first_difference(e) {
        return Err(LinalgError::NotIdempotent { col });
    }
    let (r, pivots) = rref(e.to_rows(), e.cols());
    let rank = pivots.len();
    let img = ObjectWord::new(vec![Object::new(image, rank)]);
    let inj = LinMap::from_fn(e.field, img.clone(), e.cod.clone(), |i, k| {
        e.get(i, pivots[k]).clone()
    });
    let proj = LinMap::from_fn(e.field, e.dom.clone(), img, |k, j| r[k][j].clone());
    Ok(Split { rank, inj, proj })
}

impl fmt::Display for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} -> {} ({}x{})",
            self.dom,
            self.cod,
            self.rows(),
            self.cols()
        )?;
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize) -> ObjectWord {
        ObjectWord::single("V", n)
    }

    #[test]
    fn identity_tensor_identity_is_identity() {
        let q = FieldSpec::Rational;
        let t = tensor_product(&LinMap::identity(q, &w(2)), &LinMap::identity(q, &w(3))).unwrap();
        assert_eq!(
            t.entries(),
            LinMap::identity(q, &w(2).concat(&w(3))).entries()
        );
    }

    #[test]
    fn scalar_tensor_multiplies() {
        let q = FieldSpec::Rational;
        let a = LinMap::from_ints(q, ObjectWord::unit(), ObjectWord::unit(), &[&[2]]);
        let b = LinMap::from_ints(q, ObjectWord::unit(), ObjectWord::unit(), &[&[3]]);
        assert_eq!(tensor_product(&a, &b).unwrap().get(0, 0), &q.from_i64(6));
    }

    #[test]
    fn swap_on_unit_is_identity() {
        let q = FieldSpec::Rational;
        let s = LinMap::swap(q, &ObjectWord::unit(), &w(3));
        assert_eq!(s.entries(), LinMap::identity(q, &w(3)).entries());
    }

    #[test]
    fn swap_two_by_two_exchanges_middle_indices() {
        let q = FieldSpec::Rational;
        let s = LinMap::swap(q, &w(2), &w(2));
        let expected = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]];
        for (i, row) in expected.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(s.get(i, j), &q.from_i64(*x));
            }
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let q = FieldSpec::Rational;
        let (a, b) = (ObjectWord::single("X", 3), ObjectWord::single("Y", 5));
        let c = compose(&LinMap::swap(q, &b, &a), &LinMap::swap(q, &a, &b)).unwrap();
        assert_eq!(c, LinMap::identity(q, &a.concat(&b)));
    }

    #[test]
    fn compose_rejects_word_mismatch() {
        let q = FieldSpec::Rational;
        let f = LinMap::identity(q, &ObjectWord::single("X", 2));
        let g = LinMap::identity(q, &ObjectWord::single("Y", 2));
        assert!(compose(&g, &f).is_err());
    }

    #[test]
    fn split_of_diagonal_idempotent() {
        let q = FieldSpec::Rational;
        let e = LinMap::from_ints(q, w(3), w(3), &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        let s = split_idempotent(&e, "I").unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.inj.column(0), SparseVec::unit(0, q.one()));
        assert_eq!(s.inj.column(1), SparseVec::unit(2, q.one()));
        assert_eq!(compose(&s.inj, &s.proj).unwrap(), e);
        let id = compose(&s.proj, &s.inj).unwrap();
        assert_eq!(id.entries(), LinMap::identity(q, &w(2)).entries());
    }

    #[test]
    fn split_of_zero_and_identity() {
        let q = FieldSpec::Rational;
        let z = split_idempotent(&LinMap::zero(q, w(3), w(3)), "I").unwrap();
        assert_eq!((z.rank, z.inj.cols(), z.proj.rows()), (0, 0, 0));
        let i = split_idempotent(&LinMap::identity(q, &w(3)), "I").unwrap();
        assert_eq!(i.rank, 3);
        assert_eq!(i.inj.entries(), LinMap::identity(q, &w(3)).entries());
    }

    #[test]
    fn split_rejects_non_idempotent_with_witness_column() {
        let q = FieldSpec::Rational;
        let e = LinMap::from_ints(q, w(2), w(2), &[&[1, 0], &[0, 2]]);
        assert!(matches!(
            split_idempotent(&e, "I"),
            Err(LinalgError::NotIdempotent { col: 1 })
        ));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let q = FieldSpec::Rational;
        let m = LinMap::from_ints(q, w(3), w(2), &[&[1, 2, 3], &[2, 4, 6]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in ker {
            let sv: SparseVec = v.into_iter().enumerate().collect();
            assert!(m.apply(&sv).is_zero());
        }
    }
}
