use std::collections::BTreeMap;

use super::{AlgebraData, CoalgebraData, CoreError};
use crate::linalg::{
    solve_affine, AffineSolution, Constraint, FieldSpec, LinMap, ObjectWord, Scalar, SparseVec,
};

/// Nonzero terms `(left, right, coefficient)` of a comultiplied basis vector.
type Terms = Vec<(usize, usize, Scalar)>;

/// The convolution monoid `Hom(C^{⊗n}, A)` with `α∗β = μ_A∘(α⊗β)∘Δ_{C^{⊗n}}`.
///
/// `Δ_{C^{⊗n}}` is the tensor-power comultiplication, which regroups the factors of
/// `Δ^{⊗n}` as (all left legs) ⊗ (all right legs). It is stored sparsely per basis vector.
#[derive(Clone, Debug)]
pub struct Convolution {
    field: FieldSpec,
    dom_dim: usize,
    cod_dim: usize,
    terms: Vec<Terms>,
    mu_cols: Vec<SparseVec>,
    unit: LinMap,
}

impl Convolution {
    /// Convolution on maps `C^{⊗n} → A`, `n ≥ 1`.
    pub fn new(c: &CoalgebraData, n: usize, a: &AlgebraData) -> Convolution {
        assert!(n >= 1, "tensor power must be positive");
        let field = c.field();
        let d = c.dim();
        let base: Vec<Terms> = (0..d)
            .map(|i| {
                c.delta()
                    .column(i)
                    .iter()
                    .map(|(k, x)| (k / d, k % d, x.clone()))
                    .collect()
            })
            .collect();
        let mut terms = base.clone();
        let mut width = d;
        for _ in 1..n {
            let mut next = Vec::with_capacity(terms.len() * d);
            for t in &terms {
                for b in &base {
                    let mut out = Vec::with_capacity(t.len() * b.len());
                    for (l1, r1, x1) in t {
                        for (l2, r2, x2) in b {
                            out.push((l1 * d + l2, r1 * d + r2, x1.mul(x2)));
                        }
                    }
                    next.push(out);
                }
            }
            terms = next;
            width *= d;
        }
        let eps = c.eps();
        let counit: Vec<Scalar> = (0..width)
            .map(|mut k| {
                let mut x = field.one();
                for _ in 0..n {
                    x = x.mul(eps.get(0, k % d));
                    k /= d;
                }
                x
            })
            .collect();
        let unit_vec = a.eta().column(0);
        let unit = LinMap::from_fn(field, ObjectWord::power(c.object(), n), a.word(), |i, j| {
            unit_vec.get(i).map_or(field.zero(), |u| u.mul(&counit[j]))
        });
        Convolution {
            field,
            dom_dim: width,
            cod_dim: a.dim(),
            terms,
            mu_cols: a.mu().columns(),
            unit,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The unit `η_A∘ε^{⊗n}`.
    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    fn check_shape(&self, m: &LinMap) -> Result<(), CoreError> {
        if m.cols() != self.dom_dim || m.rows() != self.cod_dim {
            return Err(CoreError::Shape(format!(
                "expected a {}x{} map, got {}x{}",
                self.cod_dim,
                self.dom_dim,
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    /// `μ_A(a⊗b)` for sparse `a`, `b`.
    fn mult(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (s, x) in a.iter() {
            for (t, y) in b.iter() {
                out.add_scaled(&x.mul(y), &self.mu_cols[s * self.cod_dim + t]);
            }
        }
        out
    }

    /// `α∗β`, with the words of `α`.
    pub fn convolve(&self, alpha: &LinMap, beta: &LinMap) -> Result<LinMap, CoreError> {
        self.check_shape(alpha)?;
        self.check_shape(beta)?;
        let (ac, bc) = (alpha.columns(), beta.columns());
        let cols: Vec<SparseVec> = self
            .terms
            .iter()
            .map(|t| {
                let mut out = SparseVec::new();
                for (l, r, x) in t {
                    out.add_scaled(x, &self.mult(&ac[*l], &bc[*r]));
                }
                out
            })
            .collect();
        Ok(LinMap::from_columns(
            self.field,
            alpha.dom().clone(),
            alpha.cod().clone(),
            &cols,
        ))
    }

    /// Rows of the linear map `x ↦ fixed∗x` (or `x∗fixed` when `unknown_left`) on the
    /// row-major entries of `x`; row `s·dom + c` is the entry `(s, c)` of the product.
    fn product_rows(&self, fixed: &LinMap, unknown_left: bool) -> Vec<BTreeMap<usize, Scalar>> {
        let (m, a) = (self.dom_dim, self.cod_dim);
        let fixed_cols = fixed.columns();
        let mut rows = vec![BTreeMap::new(); a * m];
        for (c, t) in self.terms.iter().enumerate() {
            for (l, r, x) in t {
                let (fixed_idx, unknown_idx) = if unknown_left { (*r, *l) } else { (*l, *r) };
                for tt in 0..a {
                    let e = SparseVec::unit(tt, self.field.one());
                    let prod = if unknown_left {
                        self.mult(&e, &fixed_cols[fixed_idx])
                    } else {
                        self.mult(&fixed_cols[fixed_idx], &e)
                    };
                    for (s, y) in prod.iter() {
                        let slot = rows[s * m + c]
                            .entry(tt * m + unknown_idx)
                            .or_insert(self.field.zero());
                        *slot = slot.add(&x.mul(y));
                    }
                }
            }
        }
        rows
    }

    fn constraints(rows: Vec<BTreeMap<usize, Scalar>>, rhs: &[Scalar]) -> Vec<Constraint> {
        rows.into_iter()
            .zip(rhs)
            .map(|(row, b)| {
                Constraint::new(
                    row.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
                    b.clone(),
                )
            })
            .collect()
    }

    /// Solution set of `g∗x = left_unit`, `x∗g = right_unit`, `x∗left_unit = x`.
    ///
    /// The last equation selects the regular inverse; with equal units the
    /// complementary normalization `right_unit∗x = x` follows by associativity.
    pub fn inverse_solutions(
        &self,
        g: &LinMap,
        left_unit: &LinMap,
        right_unit: &LinMap,
    ) -> Result<AffineSolution, CoreError> {
        for m in [g, left_unit, right_unit] {
            self.check_shape(m)?;
        }
        let zero = vec![self.field.zero(); self.dom_dim * self.cod_dim];
        let mut cs = Convolution::constraints(self.product_rows(g, false), left_unit.entries());
        cs.extend(Convolution::constraints(
            self.product_rows(g, true),
            right_unit.entries(),
        ));
        let mut norm = self.product_rows(left_unit, true);
        for (k, row) in norm.iter_mut().enumerate() {
            let slot = row.entry(k).or_insert(self.field.zero());
            *slot = slot.sub(&self.field.one());
        }
        cs.extend(Convolution::constraints(norm, &zero));
        Ok(solve_affine(self.field, g.dom(), g.cod(), &cs))
    }

    /// The inverse of `g` relative to the idempotent `u`; requires `g∗u = g`.
    pub fn inverse(&self, g: &LinMap, u: &LinMap) -> Result<Option<LinMap>, CoreError> {
        self.inverse_between(g, u, u)
    }

    /// `x` with `g∗x = left_unit`, `x∗g = right_unit`, `x∗left_unit = x`;
    /// requires `g∗right_unit = g`.
    pub fn inverse_between(
        &self,
        g: &LinMap,
        left_unit: &LinMap,
        right_unit: &LinMap,
    ) -> Result<Option<LinMap>, CoreError> {
        if self.convolve(g, right_unit)? != *g {
            return Err(CoreError::RegularityPreconditionFailed);
        }
        Ok(self
            .inverse_solutions(g, left_unit, right_unit)?
            .any()
            .cloned())
    }
}

/// `μ_A∘(α⊗β)∘Δ_C` for maps `C → A`.
pub fn convolve(
    alpha: &LinMap,
    beta: &LinMap,
    c: &CoalgebraData,
    a: &AlgebraData,
) -> Result<LinMap, CoreError> {
    Convolution::new(c, 1, a).convolve(alpha, beta)
}

/// Regular inverse of `g: C^{⊗n} → A` relative to `u`, where `n` is read off `g`.
pub fn conv_inverse(
    g: &LinMap,
    u: &LinMap,
    c: &CoalgebraData,
    a: &AlgebraData,
) -> Result<Option<LinMap>, CoreError> {
    let n = g.dom().len().max(1);
    Convolution::new(c, n, a).inverse(g, u)
}
