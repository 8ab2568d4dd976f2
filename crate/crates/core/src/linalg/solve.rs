use std::collections::BTreeMap;

use super::{FieldSpec, LinMap, ObjectWord, Scalar};

/// One linear equation `Σ coeffs[k]·x[k] = rhs` on the entries of an unknown map.
///
/// Unknown entries are numbered row-major: entry (row, col) has index `row·cols + col`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Scalar)>,
    pub rhs: Scalar,
}

impl Constraint {
    pub fn new(coeffs: Vec<(usize, Scalar)>, rhs: Scalar) -> Constraint {
        Constraint { coeffs, rhs }
    }

    /// The functional `x ↦ Σ_{r,c} w[r,c]·x[r,c]` given by a map of the unknown's shape.
    pub fn from_weights(weights: &LinMap, rhs: Scalar) -> Constraint {
        let coeffs = weights
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, x.clone()))
            .collect();
        Constraint { coeffs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    NoSolution,
    Unique(LinMap),
    Affine {
        particular: LinMap,
        nullspace: Vec<LinMap>,
    },
}

impl AffineSolution {
    /// The unique solution, or the particular one of an affine family.
    pub fn any(&self) -> Option<&LinMap> {
        match self {
            AffineSolution::NoSolution => None,
            AffineSolution::Unique(m) => Some(m),
            AffineSolution::Affine { particular, .. } => Some(particular),
        }
    }

    /// Dimension of the solution set, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            AffineSolution::NoSolution => None,
            AffineSolution::Unique(_) => Some(0),
            AffineSolution::Affine { nullspace, .. } => Some(nullspace.len()),
        }
    }
}

type Row = BTreeMap<usize, Scalar>;

/// Incremental sparse row reduction that keeps every stored row fully reduced.
struct Eliminator {
    /// pivot column → (row, rhs); each row has coefficient 1 at its pivot and 0 at other pivots.
    rows: BTreeMap<usize, (Row, Scalar)>,
    inconsistent: bool,
}

impl Eliminator {
    fn new() -> Eliminator {
        Eliminator {
            rows: BTreeMap::new(),
            inconsistent: false,
        }
    }

    fn insert(&mut self, coeffs: &[(usize, Scalar)], rhs: &Scalar) {
        let mut row: Row = BTreeMap::new();
        for (k, c) in coeffs {
            add_into(&mut row, *k, c);
        }
        let mut rhs = rhs.clone();
        let pivot_cols: Vec<usize> = row
            .keys()
            .copied()
            .filter(|k| self.rows.contains_key(k))
            .collect();
        for p in pivot_cols {
            let Some(c) = row.get(&p).cloned() else {
                continue;
            };
            let (prow, prhs) = &self.rows[&p];
            for (k, x) in prow {
                add_into(&mut row, *k, &c.mul(x).neg());
            }
            rhs = rhs.sub(&c.mul(prhs));
        }
        let Some((&pivot, lead)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return;
        };
        let inv = lead.inv().expect("nonzero lead");
        for x in row.values_mut() {
            *x = x.mul(&inv);
        }
        rhs = rhs.mul(&inv);
        for (other, orhs) in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                for (k, x) in &row {
                    add_into(other, *k, &c.mul(x).neg());
                }
                *orhs = orhs.sub(&c.mul(&rhs));
            }
        }
        self.rows.insert(pivot, (row, rhs));
    }
}

fn add_into(row: &mut Row, k: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match row.get_mut(&k) {
        Some(x) => {
            let s = x.add(c);
            if s.is_zero() {
                row.remove(&k);
            } else {
                *x = s;
            }
        }
        None => {
            row.insert(k, c.clone());
        }
    }
}

/// Solves a linear system on the entries of an unknown map `dom → cod` exactly.
///
/// Free variables are set to zero in the particular solution; the nullspace has one
/// basis vector per free variable, in ascending order.
pub fn solve_affine(
    field: FieldSpec,
    dom: &ObjectWord,
    cod: &ObjectWord,
    constraints: &[Constraint],
) -> AffineSolution {
    let n = dom.dim() * cod.dim();
    let mut el = Eliminator::new();
    for c in constraints {
        el.insert(&c.coeffs, &c.rhs);
        if el.inconsistent {
            return AffineSolution::NoSolution;
        }
    }
    let build = |vals: Vec<Scalar>| {
        LinMap::new(field, dom.clone(), cod.clone(), vals).expect("solution shape")
    };
    let mut particular = vec![field.zero(); n];
    for (&p, (_, rhs)) in &el.rows {
        particular[p] = rhs.clone();
    }
    if el.rows.len() == n {
        return AffineSolution::Unique(build(particular));
    }
    let mut nullspace = Vec::new();
    for free in (0..n).filter(|k| !el.rows.contains_key(k)) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (&p, (row, _)) in &el.rows {
            if let Some(c) = row.get(&free) {
                v[p] = c.neg();
            }
        }
        nullspace.push(build(v));
    }
    AffineSolution::Affine {
        particular: build(particular),
        nullspace,
    }
}

/// Whether `x` satisfies every constraint exactly.
pub fn satisfies(x: &LinMap, constraints: &[Constraint]) -> bool {
    let e = x.entries();
    constraints.iter().all(|c| {
        let lhs = c
            .coeffs
            .iter()
            .fold(x.field().zero(), |acc, (k, w)| acc.add(&w.mul(&e[*k])));
        lhs == c.rhs
    })
}

/// Solves `m·x = b` column by column; `None` if some column of `b` is outside the image of `m`.
///
/// Decides "factorizes through `m`" by exact column-space containment.
pub fn factor_through(m: &LinMap, b: &LinMap) -> Option<LinMap> {
    let field = m.field();
    let (r, c) = (m.rows(), m.cols());
    let mut constraints = Vec::with_capacity(r * b.cols());
    let bc = b.cols();
    for j in 0..bc {
        for i in 0..r {
            let coeffs = (0..c)
                .filter(|&k| !m.get(i, k).is_zero())
                .map(|k| (k * bc + j, m.get(i, k).clone()))
                .collect();
            constraints.push(Constraint::new(coeffs, b.get(i, j).clone()));
        }
    }
    solve_affine(field, b.dom(), m.dom(), &constraints)
        .any()
        .cloned()
}
