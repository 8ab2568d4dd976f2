//! A crossed product read back as a cleft extension: decomposition, recovered action and
//! cocycle, the inverse cocycle from the cleaving map, and the isomorphism with the rebuilt
//! product.

use rand::rngs::StdRng;
use rand::SeedableRng;
use weakhopf::cleft::{
    cleaving_of, cleft_to_crossed_iso, decomposition, extension_of, reconstruct,
};
use weakhopf::crossed::{build_crossed_product, gamma_inverse, invert_cocycle};
use weakhopf::instances::random_instances;
use weakhopf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let mut rng = StdRng::seed_from_u64(seed);
    let s = random_instances(&mut rng, 1, FieldSpec::Rational).remove(0);
    println!("groupoid {} (dim H = {})", s.name, s.hopf.dim());

    let x = build_crossed_product(&s.cocycle)?;
    let f_inv = invert_cocycle(&s.cocycle)?.f_inv;
    let gamma_inv = gamma_inverse(&x, &f_inv)?.gamma_inv;
    let ext = extension_of(&x)?;
    let cleaving = cleaving_of(&x, &gamma_inv);

    let d = decomposition(&ext, &cleaving)?;
    println!("rank Ω = {} = dim B = {}", d.omega().rank(), x.dim());
    let r = reconstruct(&ext, &cleaving)?;
    println!(
        "recovered ρ equal: {}, f equal: {}",
        r.rho() == s.measure.rho(),
        r.f() == s.cocycle.f()
    );
    let inv = r.recover_inverse()?;
    println!("f⁻¹ from σ matches the solver: {}", inv.f_inv == f_inv);
    let iso = cleft_to_crossed_iso(&ext, &cleaving)?;
    println!(
        "Φ: {}x{} of rank {}, verdicts pass: {}",
        iso.map.rows(),
        iso.map.cols(),
        iso.map.rank(),
        iso.report.all_pass()
    );
    Ok(())
}
