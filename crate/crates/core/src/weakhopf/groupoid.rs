use super::{AlgebraData, CoalgebraData, CoreError, Projection, WeakBialgebra, WeakHopfAlgebra};
use crate::linalg::{compose, split_idempotent, FieldSpec, LinMap, ObjectWord, SparseVec};
use crate::verdict::{Verdict, VerdictReport};

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<usize>>,
}

impl Group {
    /// Validates closure, identity at 0, associativity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Group, CoreError> {
        let n = table.len();
        let bad = |m: &str| CoreError::InvalidGroupoid(format!("group table: {m}"));
        if n == 0
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(bad("not a square table over its elements"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(bad("element 0 is not the identity"));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("not associative"));
                    }
                }
            }
            if !(0..n).any(|b| table[a][b] == 0) {
                return Err(bad("element without inverse"));
            }
        }
        Ok(Group { table })
    }

    pub fn cyclic(n: usize) -> Group {
        Group {
            table: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        }
    }

    /// Direct product, element `(a, b)` numbered `a·|other| + b`.
    pub fn product(&self, other: &Group) -> Group {
        let m = other.order();
        let n = self.order() * m;
        Group {
            table: (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                        .collect()
                })
                .collect(),
        }
    }

    /// Dihedral group of order `2n`: element `r^k s^e` numbered `2k + e`.
    pub fn dihedral(n: usize) -> Group {
        let mul = |x: usize, y: usize| {
            let (k1, e1, k2, e2) = (x / 2, x % 2, y / 2, y % 2);
            let k = if e1 == 0 {
                (k1 + k2) % n
            } else {
                (k1 + n - k2) % n
            };
            2 * k + (e1 ^ e2)
        };
        Group {
            table: (0..2 * n)
                .map(|x| (0..2 * n).map(|y| mul(x, y)).collect())
                .collect(),
        }
    }

    /// Quaternion group: `±1, ±i, ±j, ±k` numbered `2u + sign`.
    pub fn quaternion() -> Group {
        // unit products among 1, i, j, k as (unit, negated)
        let unit = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mul = |x: usize, y: usize| {
            let (u, neg) = unit(x / 2, y / 2);
            2 * u + ((x % 2) ^ (y % 2) ^ usize::from(neg))
        };
        Group {
            table: (0..8)
                .map(|x| (0..8).map(|y| mul(x, y)).collect())
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("validated group")
    }
}

/// One group of each isomorphism type of order at most `max_order` (up to 9), named.
pub fn small_groups(max_order: usize) -> Vec<(String, Group)> {
    let c = Group::cyclic;
    let all = vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", c(2).product(&c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", Group::dihedral(3)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C4xC2", c(4).product(&c(2))),
        ("C2xC2xC2", c(2).product(&c(2)).product(&c(2))),
        ("D4", Group::dihedral(4)),
        ("Q8", Group::quaternion()),
        ("C9", c(9)),
        ("C3xC3", c(3).product(&c(3))),
    ];
    all.into_iter()
        .filter(|(_, g)| g.order() <= max_order)
        .map(|(n, g)| (n.to_string(), g))
        .collect()
}

/// A finite groupoid: objects `0..objects`, morphisms with source, target and a partial
/// composition `compose[g][h] = g∘h`, defined exactly when `source(g) = target(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidPresentation {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
    inverses: Vec<usize>,
}

impl GroupoidPresentation {
    /// Validates the category axioms and invertibility of every morphism.
    pub fn new(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<GroupoidPresentation, CoreError> {
        let bad = |m: String| CoreError::InvalidGroupoid(m);
        let n = source.len();
        if target.len() != n || compose.len() != n || compose.iter().any(|r| r.len() != n) {
            return Err(bad("inconsistent table sizes".into()));
        }
        if source.iter().chain(&target).any(|&o| o >= objects) {
            return Err(bad("morphism endpoint out of range".into()));
        }
        for g in 0..n {
            for h in 0..n {
                match compose[g][h] {
                    Some(k) if source[g] == target[h] => {
                        if k >= n || source[k] != source[h] || target[k] != target[g] {
                            return Err(bad(format!(
                                "composite of {g} and {h} has wrong endpoints"
                            )));
                        }
                    }
                    None if source[g] != target[h] => {}
                    _ => {
                        return Err(bad(format!(
                            "composition of {g} and {h} defined off its domain"
                        )))
                    }
                }
            }
        }
        let mut identities = Vec::with_capacity(objects);
        for o in 0..objects {
            let id = (0..n).find(|&e| {
                source[e] == o
                    && target[e] == o
                    && (0..n).all(|g| {
                        (source[g] != o || compose[g][e] == Some(g))
                            && (target[g] != o || compose[e][g] == Some(g))
                    })
            });
            identities.push(id.ok_or_else(|| bad(format!("object {o} has no identity")))?);
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if let (Some(gh), Some(hk)) = (compose[g][h], compose[h][k]) {
                        if compose[gh][k] != compose[g][hk] {
                            return Err(bad(format!(
                                "composition of {g}, {h}, {k} is not associative"
                            )));
                        }
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n).find(|&h| {
                compose[g][h] == Some(identities[target[g]])
                    && compose[h][g] == Some(identities[source[g]])
            });
            inverses.push(inv.ok_or_else(|| bad(format!("morphism {g} has no inverse")))?);
        }
        Ok(GroupoidPresentation {
            objects,
            source,
            target,
            compose,
            identities,
            inverses,
        })
    }

    /// Connected groupoid on `n` objects with vertex group `g`: morphism `(i, j, a)`
    /// goes from `j` to `i` and is numbered `(i·n + j)·|g| + a`.
    pub fn connected(n: usize, g: &Group) -> GroupoidPresentation {
        let k = g.order();
        let m = n * n * k;
        let decode = |x: usize| (x / k / n, x / k % n, x % k);
        let source = (0..m).map(|x| decode(x).1).collect();
        let target = (0..m).map(|x| decode(x).0).collect();
        let compose = (0..m)
            .map(|x| {
                (0..m)
                    .map(|y| {
                        let ((i, j, a), (j2, l, b)) = (decode(x), decode(y));
                        (j == j2).then(|| (i * n + l) * k + g.mul(a, b))
                    })
                    .collect()
            })
            .collect();
        GroupoidPresentation::new(n, source, target, compose).expect("connected groupoid is valid")
    }

    /// Pair groupoid: one morphism `g_ij: j → i` for each pair, numbered `i·n + j`.
    pub fn pair(n: usize) -> GroupoidPresentation {
        GroupoidPresentation::connected(n, &Group::cyclic(1))
    }

    pub fn group(g: &Group) -> GroupoidPresentation {
        GroupoidPresentation::connected(1, g)
    }

    /// Disjoint union; objects and morphisms of later parts are shifted.
    pub fn disjoint_union(parts: &[GroupoidPresentation]) -> GroupoidPresentation {
        let (mut source, mut target) = (Vec::new(), Vec::new());
        let total: usize = parts.iter().map(|p| p.morphisms()).sum();
        let mut compose = vec![vec![None; total]; total];
        let (mut obj_off, mut mor_off) = (0, 0);
        for p in parts {
            source.extend(p.source.iter().map(|o| o + obj_off));
            target.extend(p.target.iter().map(|o| o + obj_off));
            for g in 0..p.morphisms() {
                for h in 0..p.morphisms() {
                    compose[g + mor_off][h + mor_off] = p.compose[g][h].map(|k| k + mor_off);
                }
            }
            obj_off += p.objects;
            mor_off += p.morphisms();
        }
        GroupoidPresentation::new(obj_off, source, target, compose)
            .expect("union of groupoids is valid")
    }

    /// Every groupoid with at most `max_objects` objects and `max_morphisms` morphisms,
    /// one per isomorphism class, as disjoint unions of connected components.
    pub fn enumerate(
        max_objects: usize,
        max_morphisms: usize,
    ) -> Vec<(String, GroupoidPresentation)> {
        let mut components = Vec::new();
        for n in 1..=max_objects {
            for (name, g) in small_groups(max_morphisms / (n * n)) {
                components.push((n, name, g));
            }
        }
        let mut out = Vec::new();
        // multisets of components as non-decreasing index sequences
        #[allow(clippy::too_many_arguments)]
        fn rec(
            comps: &[(usize, String, Group)],
            start: usize,
            objs: usize,
            mors: usize,
            max_o: usize,
            max_m: usize,
            chosen: &mut Vec<usize>,
            out: &mut Vec<(String, GroupoidPresentation)>,
        ) {
            if !chosen.is_empty() {
                let parts: Vec<GroupoidPresentation> = chosen
                    .iter()
                    .map(|&c| GroupoidPresentation::connected(comps[c].0, &comps[c].2))
                    .collect();
                let name: Vec<String> = chosen
                    .iter()
                    .map(|&c| format!("{}x{}", comps[c].0, comps[c].1))
                    .collect();
                out.push((name.join("+"), GroupoidPresentation::disjoint_union(&parts)));
            }
            for c in start..comps.len() {
                let (n, _, g) = &comps[c];
                let m = n * n * g.order();
                if objs + n <= max_o && mors + m <= max_m {
                    chosen.push(c);
                    rec(comps, c, objs + n, mors + m, max_o, max_m, chosen, out);
                    chosen.pop();
                }
            }
        }
        rec(
            &components,
            0,
            0,
            0,
            max_objects,
            max_morphisms,
            &mut Vec::new(),
            &mut out,
        );
        out
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn target(&self, g: usize) -> usize {
        self.target[g]
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose[g][h]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }
}

/// The groupoid algebra: basis the morphisms, `gh = g∘h` or 0, unit the sum of
/// identities, every morphism group-like, `S(g) = g⁻¹`.
pub fn groupoid_algebra(
    g: &GroupoidPresentation,
    field: FieldSpec,
) -> Result<WeakHopfAlgebra, CoreError> {
    let n = g.morphisms();
    let h = ObjectWord::single(super::H, n);
    let hh = h.concat(&h);
    let one = field.one();
    let mu_cols: Vec<SparseVec> = (0..n * n)
        .map(|k| match g.compose(k / n, k % n) {
            Some(c) => SparseVec::unit(c, one.clone()),
            None => SparseVec::new(),
        })
        .collect();
    let mu = LinMap::from_columns(field, hh.clone(), h.clone(), &mu_cols);
    let unit: SparseVec = (0..g.objects())
        .map(|o| (g.identity(o), one.clone()))
        .collect();
    let eta = LinMap::from_columns(field, ObjectWord::unit(), h.clone(), &[unit]);
    let delta_cols: Vec<SparseVec> = (0..n)
        .map(|x| SparseVec::unit(x * n + x, one.clone()))
        .collect();
    let delta = LinMap::from_columns(field, h.clone(), hh, &delta_cols);
    let eps = LinMap::from_fn(field, h.clone(), ObjectWord::unit(), |_, _| one.clone());
    let s_cols: Vec<SparseVec> = (0..n)
        .map(|x| SparseVec::unit(g.inverse(x), one.clone()))
        .collect();
    let s = LinMap::from_columns(field, h.clone(), h, &s_cols);
    let b = WeakBialgebra::new(AlgebraData::new(mu, eta)?, CoalgebraData::new(delta, eps)?)?;
    WeakHopfAlgebra::new(b, s)
}

/// The image of `Π^L` or `Π^R` as an algebra, with its inclusion and projection.
#[derive(Clone, Debug)]
pub struct BaseSubalgebra {
    pub algebra: AlgebraData,
    pub inj: LinMap,
    pub proj: LinMap,
    pub report: VerdictReport,
}

/// Splits `Π^L` (or `Π^R`) and induces `p∘μ∘(i⊗i)`, `p∘η` on the image, named `HL` (`HR`).
pub fn base_subalgebra(h: &WeakBialgebra, side: Projection) -> Result<BaseSubalgebra, CoreError> {
    let name = match side {
        Projection::L => "HL",
        Projection::R => "HR",
        other => {
            return Err(CoreError::Shape(format!(
                "no base subalgebra for {}",
                other.name()
            )));
        }
    };
    let split = split_idempotent(h.projection(side), name)?;
    let (i, p) = (split.inj, split.proj);
    let env = h.env().with("i", i.clone())?.with("p", p.clone())?;
    let mu = env.eval("i * i ; mu ; p")?;
    let eta = env.eval("eta ; p")?;
    let algebra = AlgebraData::unchecked(mu, eta)?;
    let mut report = algebra.check();
    let w = ObjectWord::single(name, split.rank);
    let env = env
        .with("muB", algebra.mu().clone())?
        .with("etaB", algebra.eta().clone())?;
    report.push(env.check("inj.multiplicative", "muB ; i", "i * i ; mu")?);
    report.push(env.check("inj.unit", "etaB ; i", "eta")?);
    report.push(Verdict::from_bool(
        "inj.split",
        compose(&p, &i)? == LinMap::identity(h.field(), &w),
    ));
    Ok(BaseSubalgebra {
        algebra,
        inj: i,
        proj: p,
        report,
    })
}
