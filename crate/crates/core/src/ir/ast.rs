use std::fmt;

use crate::linalg::ObjectWord;

/// A morphism term of a strict symmetric monoidal category.
///
/// `Seq(a, b)` is "a, then b", i.e. the composite b∘a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorExpr {
    Gen(String),
    Id(ObjectWord),
    Swap(ObjectWord, ObjectWord),
    Seq(Box<MorExpr>, Box<MorExpr>),
    Par(Box<MorExpr>, Box<MorExpr>),
}

impl MorExpr {
    pub fn gen(name: &str) -> MorExpr {
        MorExpr::Gen(name.to_string())
    }

    pub fn seq(a: MorExpr, b: MorExpr) -> MorExpr {
        MorExpr::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: MorExpr, b: MorExpr) -> MorExpr {
        MorExpr::Par(Box::new(a), Box::new(b))
    }
}

fn word_text(w: &ObjectWord) -> String {
    w.to_string()
}

/// Swap arguments with several factors are parenthesized so the comma split is unambiguous.
fn swap_arg(w: &ObjectWord) -> String {
    if w.len() > 1 {
        format!("({w})")
    } else {
        w.to_string()
    }
}

impl fmt::Display for MorExpr {
    /// Prints in the surface grammar; `;` is left-associative and binds looser than `*`,
    /// and parentheses are emitted exactly where the tree shape needs them.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorExpr::Gen(n) => write!(f, "{n}"),
            MorExpr::Id(w) => write!(f, "id({})", word_text(w)),
            MorExpr::Swap(x, y) => write!(f, "swap({},{})", swap_arg(x), swap_arg(y)),
            MorExpr::Seq(a, b) => {
                write!(f, "{a} ; ")?;
                match **b {
                    MorExpr::Seq(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            MorExpr::Par(a, b) => {
                match **a {
                    MorExpr::Seq(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " * ")?;
                match **b {
                    MorExpr::Seq(..) | MorExpr::Par(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}
