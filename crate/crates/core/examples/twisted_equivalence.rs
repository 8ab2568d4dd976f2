//! Crossed products twisted by a coboundary are equivalent: `φ = λ·u₁` gives the
//! isomorphism, and the isomorphism gives back `φ`.

use rand::rngs::StdRng;
use rand::SeedableRng;
use weakhopf::crossed::{build_crossed_product, equivalence_from_phi, phi_from_iso};
use weakhopf::instances::{groupoid_smash, random_normalized_function};
use weakhopf::weakhopf::GroupoidPresentation;
use weakhopf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldSpec::Rational;
    let g = GroupoidPresentation::pair(2);
    let plain = groupoid_smash("pair2", &g, q, None)?;
    let lambda = random_normalized_function(&plain.hopf, &mut StdRng::seed_from_u64(1));
    let inverse: Vec<_> = lambda
        .iter()
        .map(|l| q.one().div(l).expect("nonzero"))
        .collect();
    let twisted = groupoid_smash("pair2_twisted", &g, q, Some(&inverse))?;
    println!(
        "λ = {:?}",
        lambda.iter().map(|l| l.to_string()).collect::<Vec<_>>()
    );

    let (x, y) = (
        build_crossed_product(&plain.cocycle)?,
        build_crossed_product(&twisted.cocycle)?,
    );
    let mut phi = plain.measure.u(1)?;
    for (col, l) in lambda.iter().enumerate() {
        for row in 0..phi.rows() {
            let v = phi.get(row, col).mul(l);
            phi.set(row, col, v);
        }
    }
    let eq = equivalence_from_phi(&x, &y, &phi)?;
    print!("Φ: {}", eq.map);
    println!("equivalence verdicts pass: {}", eq.report.all_pass());
    let (back, report) = phi_from_iso(&x, &y, &eq.map)?;
    println!(
        "φ recovered: {}, round trip verdicts pass: {}",
        back == phi,
        report.all_pass()
    );
    Ok(())
}
