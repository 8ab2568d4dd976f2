//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weakhopf::cleft::{
    cleaving_of, cleft_to_crossed_iso, extension_of, reconstruct, recover_inverse_cocycle,
};
use weakhopf::crossed::{
    build_crossed_product, cocycle_report, crossed_product_law_suite, equivalence_from_phi,
    gamma_inverse, invert_cocycle, module_algebra_suite, phi_from_iso, CrossedProduct,
};
use weakhopf::instances::{
    groupoid_smash, hopf_trivial_smash, pair_groupoid_smash, random_instances,
    random_normalized_function, SmashInstance,
};
use weakhopf::linalg::{FieldSpec, LinMap};
use weakhopf::verdict::VerdictReport;
use weakhopf::weakhopf::{
    check_antipode, check_bialgebra_axioms, conv_inverse, groupoid_algebra,
    projection_identity_suite, Convolution, CoreError, Group, GroupoidPresentation,
};

const Q: FieldSpec = FieldSpec::Rational;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(name: &str, r: &VerdictReport) -> Result<(), String> {
    match r.first_failure() {
        None => Ok(()),
        Some(v) => Err(format!("{name}: {v}")),
    }
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let universe = GroupoidPresentation::enumerate(3, 9);
    let f7 = FieldSpec::prime(7).unwrap();
    let mut checked = 0;
    for (name, g) in &universe {
        for field in [Q, f7] {
            let h = groupoid_algebra(g, field).map_err(|e| format!("{name}: {e}"))?;
            clean(name, &check_bialgebra_axioms(&h))?;
            clean(name, &check_antipode(&h))?;
            clean(name, &projection_identity_suite(&h, Some(h.antipode())))?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} groupoids, {checked} algebras, {:.1}s",
        universe.len(),
        elapsed.as_secs_f64()
    ))
}

fn identity_corpus() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for s in [pair_groupoid_smash(Q), hopf_trivial_smash(Q)] {
        let x = build_crossed_product(&s.cocycle).map_err(|e| e.to_string())?;
        let reports = [
            projection_identity_suite(&s.hopf, Some(s.hopf.antipode())),
            cocycle_report(&s.cocycle),
            crossed_product_law_suite(&x),
            module_algebra_suite(&x),
        ];
        for r in &reports {
            clean(&s.name, r)?;
            count += r.len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{count} verdicts over 2 instances, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn construction() -> Outcome {
    let s = pair_groupoid_smash(Q);
    let x = build_crossed_product(&s.cocycle).map_err(|e| e.to_string())?;
    ensure(x.dim() == 4, || format!("E_dim {}", x.dim()))?;
    ensure(s.measure.nabla().rank() == 4, || "rank of nabla".into())?;
    let laws = crossed_product_law_suite(&x);
    for id in ["E.assoc", "E.unit.left", "E.unit.right"] {
        ensure(laws.get(id).is_some_and(|v| v.passed()), || {
            format!("{id} fails")
        })?;
    }
    let env = x.env();
    let chi = env.eval("gamma * j ; muE ; i").map_err(|e| e.to_string())?;
    ensure(&chi == s.measure.chi(), || {
        "chi differs from i∘μ_E∘(γ⊗j)".into()
    })?;
    let big_f = env
        .eval("gamma * gamma ; muE ; i")
        .map_err(|e| e.to_string())?;
    ensure(&big_f == s.cocycle.F(), || {
        "F_f differs from i∘μ_E∘(γ⊗γ)".into()
    })?;
    Ok("E_dim 4, product associative and unital, twisting and cocycle map recovered".into())
}

/// `u₂(g_ij ⊗ g_kl) = δ_jk z_i` on the pair groupoid, from the basis alone.
fn pair_u2_oracle(template: &LinMap) -> LinMap {
    LinMap::from_fn(
        Q,
        template.dom().clone(),
        template.cod().clone(),
        |out, col| {
            let (left, right) = (col / 4, col % 4);
            let (i, j, k) = (left / 2, left % 2, right / 2);
            Q.from_i64((j == k && out == i) as i64)
        },
    )
}

fn sample() -> Vec<SmashInstance> {
    random_instances(&mut StdRng::seed_from_u64(20), 20, Q)
}

fn cocycle_inverse(samples: &[SmashInstance]) -> Outcome {
    let s = pair_groupoid_smash(Q);
    let inv = invert_cocycle(&s.cocycle).map_err(|e| e.to_string())?;
    ensure(inv.f_inv == pair_u2_oracle(s.cocycle.f()), || {
        "pair f⁻¹ is not u₂".into()
    })?;
    for s in samples {
        let inv = invert_cocycle(&s.cocycle).map_err(|e| format!("{}: {e}", s.name))?;
        let m = &s.measure;
        let conv = Convolution::new(m.bialgebra().coalgebra(), 2, m.algebra());
        let u2 = m.u(2).map_err(|e| e.to_string())?;
        let f = s.cocycle.f();
        let c = |a: &LinMap, b: &LinMap| conv.convolve(a, b).map_err(|e| e.to_string());
        ensure(c(f, &inv.f_inv)? == u2, || format!("{}: f∗f⁻¹", s.name))?;
        ensure(c(&inv.f_inv, f)? == u2, || format!("{}: f⁻¹∗f", s.name))?;
        ensure(c(&inv.f_inv, &u2)? == inv.f_inv, || {
            format!("{}: f⁻¹∗u₂", s.name)
        })?;
    }
    Ok(format!("pair f⁻¹ = u₂; {} random instances", samples.len()))
}

fn cleftness(samples: &[SmashInstance]) -> Outcome {
    for s in samples {
        let x = build_crossed_product(&s.cocycle).map_err(|e| e.to_string())?;
        let f_inv = invert_cocycle(&s.cocycle).map_err(|e| e.to_string())?.f_inv;
        let gi = gamma_inverse(&x, &f_inv).map_err(|e| e.to_string())?;
        clean(&s.name, &gi.report)?;
    }
    Ok(format!("{} instances cleft", samples.len()))
}

fn round_trip(samples: &[SmashInstance]) -> Outcome {
    for s in samples {
        let x = build_crossed_product(&s.cocycle).map_err(|e| e.to_string())?;
        let f_inv = invert_cocycle(&s.cocycle).map_err(|e| e.to_string())?.f_inv;
        let gi = gamma_inverse(&x, &f_inv).map_err(|e| e.to_string())?;
        let ext = extension_of(&x).map_err(|e| e.to_string())?;
        let c = cleaving_of(&x, &gi.gamma_inv);
        let r = reconstruct(&ext, &c).map_err(|e| format!("{}: {e}", s.name))?;
        ensure(r.rho() == s.measure.rho(), || {
            format!("{}: rho differs", s.name)
        })?;
        ensure(r.f() == s.cocycle.f(), || format!("{}: f differs", s.name))?;
        let iso = cleft_to_crossed_iso(&ext, &c).map_err(|e| format!("{}: {e}", s.name))?;
        clean(&s.name, &iso.report)?;
    }
    Ok(format!("{} instances rebuilt", samples.len()))
}

fn cross_check(samples: &[SmashInstance]) -> Outcome {
    for s in samples {
        let x = build_crossed_product(&s.cocycle).map_err(|e| e.to_string())?;
        let solver = invert_cocycle(&s.cocycle).map_err(|e| e.to_string())?.f_inv;
        let gi = gamma_inverse(&x, &solver).map_err(|e| e.to_string())?;
        let ext = extension_of(&x).map_err(|e| e.to_string())?;
        let rec = recover_inverse_cocycle(&ext, &cleaving_of(&x, &gi.gamma_inv))
            .map_err(|e| e.to_string())?;
        ensure(rec.f_inv == solver, || {
            format!("{}: routes disagree", s.name)
        })?;
    }
    Ok(format!("{} instances agree", samples.len()))
}

fn product(s: &SmashInstance) -> Result<CrossedProduct, String> {
    build_crossed_product(&s.cocycle).map_err(|e| e.to_string())
}

fn equivalence() -> Outcome {
    let s = pair_groupoid_smash(Q);
    let x = product(&s)?;
    let u1 = s.measure.u(1).map_err(|e| e.to_string())?;
    let id = LinMap::identity(Q, x.i().dom());
    let eq = equivalence_from_phi(&x, &x, &u1).map_err(|e| e.to_string())?;
    ensure(eq.map.entries() == id.entries(), || {
        "Φ for u₁ is not id".into()
    })?;
    let (phi, _) = phi_from_iso(&x, &x, &id).map_err(|e| e.to_string())?;
    // u₁(g_ij) = z_i by contraction
    let oracle = LinMap::from_fn(Q, u1.dom().clone(), u1.cod().clone(), |out, col| {
        Q.from_i64((col / 2 == out) as i64)
    });
    ensure(phi == oracle, || "φ for id is not u₁".into())?;

    let mut rng = StdRng::seed_from_u64(8);
    let pair = GroupoidPresentation::pair(2);
    for _ in 0..10 {
        let lambda = random_normalized_function(&s.hopf, &mut rng);
        // λ·u₁ scales each column of u₁ by λ; the target is twisted by the coboundary of 1/λ
        let mut scaled = u1.clone();
        for (col, l) in lambda.iter().enumerate() {
            for row in 0..scaled.rows() {
                let v = scaled.get(row, col).mul(l);
                scaled.set(row, col, v);
            }
        }
        let conv = Convolution::new(s.hopf.coalgebra(), 1, s.measure.algebra());
        let phi = conv.convolve(&u1, &scaled).map_err(|e| e.to_string())?;
        let inverse: Vec<_> = lambda
            .iter()
            .map(|l| Q.one().div(l).expect("nonzero"))
            .collect();
        let y = product(
            &groupoid_smash("pair2", &pair, Q, Some(&inverse)).map_err(|e| e.to_string())?,
        )?;
        let eq = equivalence_from_phi(&x, &y, &phi).map_err(|e| e.to_string())?;
        clean("Phi", &eq.report)?;
        let (back, report) = phi_from_iso(&x, &y, &eq.map).map_err(|e| e.to_string())?;
        clean("phi", &report)?;
        ensure(back == phi, || "φ ↦ Φ ↦ φ is not the identity".into())?;
    }
    Ok("u₁ ↔ id; 10 twisted round trips".into())
}

/// Convolution of `H → A` maps over F₂ for `H = A = F₂[ℤ/2]` on group-like bases, as bit
/// matrices `x[a][h]`.
fn conv_bits(x: [[u8; 2]; 2], y: [[u8; 2]; 2], unit: usize) -> [[u8; 2]; 2] {
    let mul = |a: usize, b: usize| if a == b { unit } else { 1 - unit };
    let mut out = [[0u8; 2]; 2];
    for h in 0..2 {
        for a in 0..2 {
            for b in 0..2 {
                out[mul(a, b)][h] ^= x[a][h] & y[b][h];
            }
        }
    }
    out
}

fn bits(n: u8) -> [[u8; 2]; 2] {
    [[n & 1, n >> 1 & 1], [n >> 2 & 1, n >> 3 & 1]]
}

fn solver_oracle() -> Outcome {
    let f2 = FieldSpec::prime(2).unwrap();
    let h = groupoid_algebra(&GroupoidPresentation::group(&Group::cyclic(2)), f2)
        .map_err(|e| e.to_string())?;
    let unit = h
        .algebra()
        .eta()
        .column(0)
        .iter()
        .next()
        .ok_or("no unit")?
        .0;
    let to_map = |b: [[u8; 2]; 2]| {
        LinMap::from_fn(f2, h.word(), h.word(), |r, c| f2.from_i64(b[r][c] as i64))
    };
    let mut rng = StdRng::seed_from_u64(9);
    let idempotents: Vec<u8> = (0..16)
        .filter(|&n| conv_bits(bits(n), bits(n), unit) == bits(n))
        .collect();
    let (mut invertible, mut irregular) = (0, 0);
    for k in 0..50 {
        let u = if k % 2 == 0 {
            idempotents[rng.gen_range(0..idempotents.len())]
        } else {
            rng.gen_range(0..16)
        };
        let (g, u) = (bits(rng.gen_range(0..16)), bits(u));
        let solutions: Vec<u8> = (0..16)
            .filter(|&n| {
                let x = bits(n);
                conv_bits(g, x, unit) == u
                    && conv_bits(x, g, unit) == u
                    && conv_bits(x, u, unit) == x
            })
            .collect();
        let regular = conv_bits(g, u, unit) == g;
        match conv_inverse(&to_map(g), &to_map(u), h.coalgebra(), h.algebra()) {
            Err(CoreError::RegularityPreconditionFailed) => {
                ensure(!regular, || format!("g={g:?} u={u:?} is regular"))?;
                irregular += 1;
            }
            Ok(Some(x)) => {
                ensure(regular, || "solver skipped the precondition".into())?;
                ensure(solutions.iter().any(|&n| to_map(bits(n)) == x), || {
                    format!("g={g:?} u={u:?}")
                })?;
                invertible += 1;
            }
            Ok(None) => ensure(regular && solutions.is_empty(), || {
                format!("g={g:?} u={u:?} missed")
            })?,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!(
        "50 pairs: {invertible} invertible, {irregular} irregular"
    ))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("weakhopf-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let input = dir.join("pair_groupoid.json");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/instances/pair_groupoid.json");
    std::fs::copy(src, &input).map_err(|e| e.to_string())?;
    let outputs = [
        dir.join("pair_groupoid.build.report.json"),
        dir.join("pair_groupoid.built.json"),
    ];
    let mut runs = Vec::new();
    for _ in 0..2 {
        let status = Command::new(env!("CARGO_BIN_EXE_weakhopf"))
            .arg("build")
            .arg(&input)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure(status.success(), || format!("build exited with {status}"))?;
        let bytes: Vec<Vec<u8>> = outputs
            .iter()
            .map(|p| std::fs::read(p).unwrap_or_default())
            .collect();
        runs.push(bytes);
    }
    ensure(runs[0] == runs[1], || "outputs differ".into())?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok("report and matrices byte-identical".into())
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let samples = sample();
    let criteria: Vec<Criterion> = vec![
        ("axiom suite on small groupoids", Box::new(axiom_suite)),
        (
            "identity corpus on the two smash instances",
            Box::new(identity_corpus),
        ),
        ("crossed product construction", Box::new(construction)),
        (
            "cocycle invertibility",
            Box::new(|| cocycle_inverse(&samples)),
        ),
        (
            "cleftness of built products",
            Box::new(|| cleftness(&samples)),
        ),
        (
            "build and reconstruct round trip",
            Box::new(|| round_trip(&samples)),
        ),
        (
            "inverse cocycle from two routes",
            Box::new(|| cross_check(&samples)),
        ),
        ("equivalence correspondence", Box::new(equivalence)),
        (
            "convolution inverse against exhaustive search",
            Box::new(solver_oracle),
        ),
        ("build determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({detail})", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
