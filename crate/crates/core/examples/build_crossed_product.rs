//! The smash product of the pair groupoid with its base algebra: hypotheses, the product
//! algebra, its laws, and the cleaving map γ⁻¹.

use weakhopf::crossed::{
    build_crossed_product, crossed_product_law_suite, gamma_inverse, invert_cocycle,
    module_algebra_suite,
};
use weakhopf::instances::pair_groupoid_smash;
use weakhopf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = pair_groupoid_smash(FieldSpec::Rational);
    let x = build_crossed_product(&s.cocycle)?;
    println!("hypotheses: {} checked", x.hypotheses().len());
    println!("dim A⊗H = {}, dim E = {}", x.i().rows(), x.dim());
    print!("μ_E: {}", x.mu_e());

    let laws = crossed_product_law_suite(&x);
    let module = module_algebra_suite(&x);
    println!(
        "law suite: {} entries, all pass: {}",
        laws.len(),
        laws.all_pass()
    );
    println!(
        "module suite: {} entries, all pass: {}",
        module.len(),
        module.all_pass()
    );

    let inv = invert_cocycle(&s.cocycle)?;
    println!("f⁻¹ = f: {}", &inv.f_inv == s.cocycle.f());
    let gi = gamma_inverse(&x, &inv.f_inv)?;
    print!("γ⁻¹: {}", gi.gamma_inv);
    print!("{}", gi.report);
    Ok(())
}
