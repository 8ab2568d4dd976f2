//! Terms of the diagram language evaluated against the pair-groupoid algebra.

use weakhopf::ir::IrError;
use weakhopf::weakhopf::{groupoid_algebra, GroupoidPresentation};
use weakhopf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = groupoid_algebra(&GroupoidPresentation::pair(2), FieldSpec::Rational)?;
    let env = h.env();

    let term = env.parse("(Delta * Delta) ; (id(H) * swap(H,H) * id(H)) ; (mu * mu)")?;
    println!("parsed: {term}");

    let unit = env.eval("eta ; Delta")?;
    let support: Vec<usize> = (0..unit.rows())
        .filter(|&r| !unit.get(r, 0).is_zero())
        .collect();
    println!("Δ(1) is supported on H⊗H basis vectors {support:?}");

    let v = env.check(
        "multiplicative",
        "mu ; Delta",
        "Delta * Delta ; id(H) * swap(H,H) * id(H) ; mu * mu",
    )?;
    println!("{v}");
    let v = env.check("commutative", "mu", "swap(H,H) ; mu")?;
    println!("{v}");

    match env.parse("mu ;;") {
        Err(IrError::Syntax { line, col, msg }) => println!("syntax error at {line}:{col}: {msg}"),
        other => println!("unexpected: {other:?}"),
    }
    if let Err(e) = env.eval("mu ; mu") {
        println!("{e}");
    }
    Ok(())
}
