use std::collections::BTreeMap;
use std::sync::Arc;

use super::{parse_with_macros, IrError, MorExpr, Signature};
use crate::linalg::{swap_index, FieldSpec, LinMap, ObjectWord, SparseVec};
use crate::verdict::{Verdict, Witness};

/// Infers `(dom, cod)`; a type error names the first mismatched `;` junction by its path.
pub fn infer_type(e: &MorExpr, sig: &Signature) -> Result<(ObjectWord, ObjectWord), IrError> {
    infer_at(e, sig, "root")
}

fn infer_at(e: &MorExpr, sig: &Signature, path: &str) -> Result<(ObjectWord, ObjectWord), IrError> {
    match e {
        MorExpr::Gen(n) => sig
            .generator(n)
            .cloned()
            .ok_or_else(|| IrError::UnknownName {
                name: n.clone(),
                line: 0,
                col: 0,
            }),
        MorExpr::Id(w) => Ok((w.clone(), w.clone())),
        MorExpr::Swap(x, y) => Ok((x.concat(y), y.concat(x))),
        MorExpr::Seq(a, b) => {
            let (d1, c1) = infer_at(a, sig, &format!("{path}/seq.0"))?;
            let (d2, c2) = infer_at(b, sig, &format!("{path}/seq.1"))?;
            if c1 != d2 {
                return Err(IrError::Type {
                    expected: d2.to_string(),
                    found: c1.to_string(),
                    path: path.to_string(),
                });
            }
            Ok((d1, c2))
        }
        MorExpr::Par(a, b) => {
            let (d1, c1) = infer_at(a, sig, &format!("{path}/par.0"))?;
            let (d2, c2) = infer_at(b, sig, &format!("{path}/par.1"))?;
            Ok((d1.concat(&d2), c1.concat(&c2)))
        }
    }
}

#[derive(Debug)]
struct Generator {
    map: LinMap,
    columns: Vec<SparseVec>,
}

/// A signature together with a matrix for every generator.
#[derive(Clone, Debug)]
pub struct Env {
    field: FieldSpec,
    sig: Signature,
    gens: BTreeMap<String, Arc<Generator>>,
    macros: BTreeMap<String, String>,
}

impl Env {
    pub fn new(field: FieldSpec) -> Env {
        Env {
            field,
            sig: Signature::new(),
            gens: BTreeMap::new(),
            macros: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn declare_object(&mut self, name: &str, dim: usize) -> Result<(), IrError> {
        self.sig.add_object(name, dim)
    }

    /// Binds (or rebinds) a generator; its type is read off the map's words.
    pub fn bind(&mut self, name: &str, map: LinMap) -> Result<(), IrError> {
        if self.macros.contains_key(name) {
            return Err(IrError::BadName(name.to_string()));
        }
        if map.field() != self.field {
            return Err(IrError::Linalg(crate::linalg::LinalgError::FieldMismatch));
        }
        self.sig
            .add_generator(name, map.dom().clone(), map.cod().clone())?;
        let columns = map.columns();
        self.gens
            .insert(name.to_string(), Arc::new(Generator { map, columns }));
        Ok(())
    }

    /// A copy of this environment with one more binding.
    pub fn with(&self, name: &str, map: LinMap) -> Result<Env, IrError> {
        let mut e = self.clone();
        e.bind(name, map)?;
        Ok(e)
    }

    pub fn get(&self, name: &str) -> Option<&LinMap> {
        self.gens.get(name).map(|g| &g.map)
    }

    /// Registers a named term, expanded wherever the name occurs in later parses.
    pub fn define_macro(&mut self, name: &str, text: &str) -> Result<(), IrError> {
        if self.sig.generator(name).is_some() || self.sig.object(name).is_some() {
            return Err(IrError::BadName(name.to_string()));
        }
        self.macros.insert(name.to_string(), text.to_string());
        Ok(())
    }

    pub fn parse(&self, text: &str) -> Result<MorExpr, IrError> {
        parse_with_macros(text, &self.sig, &self.macros)
    }

    /// Parses and evaluates a term.
    pub fn eval(&self, text: &str) -> Result<LinMap, IrError> {
        evaluate(&self.parse(text)?, self)
    }

    /// Parses, evaluates and binds a term under `name`.
    pub fn define(&mut self, name: &str, text: &str) -> Result<LinMap, IrError> {
        let m = self.eval(text)?;
        self.bind(name, m.clone())?;
        Ok(m)
    }

    /// Verdict for `lhs = rhs` with the given id.
    pub fn check(&self, id: &str, lhs: &str, rhs: &str) -> Result<Verdict, IrError> {
        let l = self.parse(lhs)?;
        let r = self.parse(rhs)?;
        Ok(check_identity(&l, &r, self)?.with_id(id))
    }

    /// Verdict for a chain `t₀ = t₁ = …`, failing at the first unequal link.
    pub fn check_chain(&self, id: &str, terms: &[&str]) -> Result<Verdict, IrError> {
        for pair in terms.windows(2) {
            let v = self.check(id, pair[0], pair[1])?;
            if !v.passed() {
                return Ok(v.with_note(&format!("{} = {}", pair[0], pair[1])));
            }
        }
        Ok(Verdict::pass(id))
    }
}

/// Executable form of a typed term: each node maps sparse vectors to sparse vectors.
enum Node<'a> {
    Gen(&'a [SparseVec]),
    Id,
    Swap {
        dx: usize,
        dy: usize,
    },
    Seq(Box<Node<'a>>, Box<Node<'a>>),
    Par {
        left: Box<Node<'a>>,
        right: Box<Node<'a>>,
        right_dom: usize,
        right_cod: usize,
    },
}

fn compile<'a>(e: &MorExpr, env: &'a Env) -> Result<Node<'a>, IrError> {
    Ok(match e {
        MorExpr::Gen(n) => Node::Gen(
            &env.gens
                .get(n)
                .ok_or_else(|| IrError::Unbound(n.clone()))?
                .columns,
        ),
        MorExpr::Id(_) => Node::Id,
        MorExpr::Swap(x, y) => Node::Swap {
            dx: x.dim(),
            dy: y.dim(),
        },
        MorExpr::Seq(a, b) => Node::Seq(Box::new(compile(a, env)?), Box::new(compile(b, env)?)),
        MorExpr::Par(a, b) => {
            let (d, c) = infer_type(b, &env.sig)?;
            Node::Par {
                left: Box::new(compile(a, env)?),
                right: Box::new(compile(b, env)?),
                right_dom: d.dim(),
                right_cod: c.dim(),
            }
        }
    })
}

fn apply(node: &Node, v: &SparseVec, field: FieldSpec) -> SparseVec {
    match node {
        Node::Gen(cols) => {
            let mut out = SparseVec::new();
            for (j, x) in v.iter() {
                out.add_scaled(x, &cols[j]);
            }
            out
        }
        Node::Id => v.clone(),
        Node::Swap { dx, dy } => v.map_indices(|k| swap_index(k, *dx, *dy)),
        Node::Seq(a, b) => apply(b, &apply(a, v, field), field),
        Node::Par {
            left,
            right,
            right_dom,
            right_cod,
        } => {
            // v = Σ_i e_i ⊗ w_i; the image is Σ_i left(e_i) ⊗ right(w_i).
            let mut out = SparseVec::new();
            let mut entries = v.iter().peekable();
            while let Some((k, x)) = entries.next() {
                let i = k / right_dom;
                let mut w = SparseVec::unit(k % right_dom, x.clone());
                while let Some((k2, x2)) = entries.peek() {
                    if k2 / right_dom != i {
                        break;
                    }
                    w.add_at(k2 % right_dom, x2);
                    entries.next();
                }
                let a = apply(left, &SparseVec::unit(i, field.one()), field);
                let b = apply(right, &w, field);
                let one = field.one();
                out.add_scaled(&one, &a.kron(&b, *right_cod));
            }
            out
        }
    }
}

/// Compiles a well-typed term to its matrix.
pub fn evaluate(e: &MorExpr, env: &Env) -> Result<LinMap, IrError> {
    let (dom, cod) = infer_type(e, &env.sig)?;
    let node = compile(e, env)?;
    let field = env.field;
    let cols: Vec<SparseVec> = (0..dom.dim())
        .map(|j| apply(&node, &SparseVec::unit(j, field.one()), field))
        .collect();
    Ok(LinMap::from_columns(field, dom, cod, &cols))
}

/// Compares two terms column by column; the witness is the lowest differing column,
/// then the lowest row within it.
pub fn check_identity(lhs: &MorExpr, rhs: &MorExpr, env: &Env) -> Result<Verdict, IrError> {
    let (d1, c1) = infer_type(lhs, &env.sig)?;
    let (d2, c2) = infer_type(rhs, &env.sig)?;
    if d1 != d2 || c1 != c2 {
        return Err(IrError::SidesDiffer {
            lhs: format!("{d1} -> {c1}"),
            rhs: format!("{d2} -> {c2}"),
        });
    }
    let (l, r) = (compile(lhs, env)?, compile(rhs, env)?);
    let field = env.field;
    let zero = field.zero();
    for j in 0..d1.dim() {
        let u = SparseVec::unit(j, field.one());
        let (a, b) = (apply(&l, &u, field), apply(&r, &u, field));
        if let Some((row, x, y)) = a.first_difference(&b, &zero) {
            return Ok(Verdict::fail(
                "identity",
                Some(Witness {
                    row,
                    col: j,
                    lhs: x,
                    rhs: y,
                }),
            ));
        }
    }
    Ok(Verdict::pass("identity"))
}
