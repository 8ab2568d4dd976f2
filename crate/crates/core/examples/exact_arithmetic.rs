//! Exact matrices over ℚ and F_p: tensor products, symmetry, idempotent splitting and
//! affine solving.

use weakhopf::linalg::{
    compose, solve_affine, split_idempotent, tensor_product, AffineSolution, Constraint,
};
use weakhopf::{FieldSpec, LinMap, ObjectWord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = FieldSpec::Rational;
    let x = ObjectWord::single("X", 2);

    let f = LinMap::from_ints(q, x.clone(), x.clone(), &[&[1, 2], &[3, 4]]);
    let kron = tensor_product(&f, &LinMap::identity(q, &x))?;
    print!("f ⊗ id is {kron}");

    let s = tensor_product(&LinMap::swap(q, &x, &x), &LinMap::identity(q, &x))?;
    println!(
        "swap ⊗ id on basis vector 4·1+2·0+1 lands on {:?}",
        (0..8).find(|&r| !s.get(r, 5).is_zero())
    );

    let e = LinMap::from_ints(q, x.clone(), x.clone(), &[&[1, 1], &[0, 0]]);
    let split = split_idempotent(&e, "I")?;
    println!(
        "rank {}; inj∘proj = e: {}",
        split.rank,
        compose(&split.inj, &split.proj)? == e
    );

    let f5 = FieldSpec::prime(5)?;
    let k = ObjectWord::unit();
    let c = Constraint::new(vec![(0, f5.from_i64(3))], f5.one());
    if let AffineSolution::Unique(sol) = solve_affine(f5, &k, &k, &[c]) {
        println!("3x = 1 over F_5 gives x = {}", sol.get(0, 0));
    }
    println!("2/6 over ℚ parses as {}", q.parse_scalar("2/6")?);
    Ok(())
}
