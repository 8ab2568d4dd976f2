//! Groupoid algebras as weak Hopf algebras: axioms, target and source projections, and the
//! regular convolution inverse of the identity.

use weakhopf::weakhopf::{
    check_antipode, check_bialgebra_axioms, conv_inverse, groupoid_algebra,
    projection_identity_suite, GroupoidPresentation, Projection,
};
use weakhopf::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let universe = GroupoidPresentation::enumerate(3, 9);
    let f7 = FieldSpec::prime(7)?;
    let mut failures = 0;
    for (name, g) in &universe {
        let h = groupoid_algebra(g, f7)?;
        let reports = [
            check_bialgebra_axioms(&h),
            check_antipode(&h),
            projection_identity_suite(&h, Some(h.antipode())),
        ];
        let bad: usize = reports.iter().map(|r| r.failures().count()).sum();
        failures += bad;
        println!("{name:>24}  dim {:>2}  failures {bad}", h.dim());
    }
    println!("{} groupoids over F_7, {failures} failures", universe.len());

    let h = groupoid_algebra(&GroupoidPresentation::pair(2), FieldSpec::Rational)?;
    print!("Π^L on the pair groupoid: {}", h.projection(Projection::L));
    let id = h.env().eval("id(H)")?;
    let u = h.env().eval("epsilon ; eta")?;
    let pl = h.projection(Projection::L).clone();
    // the antipode is the inverse of the identity between Π^L and Π^R
    let conv = weakhopf::weakhopf::Convolution::new(h.coalgebra(), 1, h.algebra());
    let s = conv.inverse_between(&id, &pl, h.projection(Projection::R))?;
    println!(
        "inverse of id is the antipode: {}",
        s.as_ref() == Some(h.antipode())
    );
    println!(
        "inverse of id relative to η∘ε: {:?}",
        conv_inverse(&id, &u, h.coalgebra(), h.algebra()).map(|x| x.is_some())
    );
    Ok(())
}
