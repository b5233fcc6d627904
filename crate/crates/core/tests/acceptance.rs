//! Acceptance suite. Every check is exact; a criterion passes only when all
//! of its cases agree coefficient by coefficient.
//!
//! Runs without the libtest harness so that the summary lines are always
//! printed: `cargo test -p wreath-sectors --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rayon::prelude::*;

use wreath_sectors::group::perm::factorial;
use wreath_sectors::group::{wreath_product, FiniteGroup, WreathProduct};
use wreath_sectors::gspace::{
    chi_quotient, descriptor_from_gset, gset_wreath_oracle, wreath_fixed_chi, FiniteGSet, GSpaceDescriptor,
};
use wreath_sectors::identities::{dm_psi, lhs_series, rhs_es_exp, rhs_euler_product, verify, verify_dm, Theorem};
use wreath_sectors::presentation::{
    count_index_n_subgroups, enumerate_homs, hall_counts, hnf_count, transitive_hom_count, GammaSetClass,
    GroupPresentation,
};
use wreath_sectors::sectors::{
    gamma_extension, gamma_set_extension_bruteforce, gamma_set_extension_direct, Invariant,
};
use wreath_sectors::series::{format_rational, int, RationalSeries};
use wreath_sectors::{Caps, Ctx};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn caps() -> Caps {
    Caps::default()
}

fn z2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2).unwrap())
}

fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric(3, &caps()).unwrap())
}

fn point(g: &Arc<FiniteGroup>) -> GSpaceDescriptor {
    GSpaceDescriptor::point(g.clone(), &caps()).unwrap()
}

/// A circle on which every reflection fixes two points and every rotation
/// acts freely.
fn circle(g: &Arc<FiniteGroup>) -> GSpaceDescriptor {
    if g.order() == 2 {
        return GSpaceDescriptor::from_table(g.clone(), &[(vec![], 0), (vec![1], 2)], &caps()).unwrap();
    }
    let t = g.find_perm(&[1, 0, 2]).unwrap();
    let c = g.find_perm(&[1, 2, 0]).unwrap();
    let entries = [(vec![], 0), (vec![t], 2), (vec![c], 0), (vec![t, c], 0)];
    GSpaceDescriptor::from_table(g.clone(), &entries, &caps()).unwrap()
}

fn natural_s3() -> GSpaceDescriptor {
    let g = s3();
    descriptor_from_gset(&FiniteGSet::natural(&g).unwrap(), g, &caps()).unwrap()
}

fn z() -> GroupPresentation {
    GroupPresentation::free_abelian(1)
}

fn z_squared() -> GroupPresentation {
    GroupPresentation::free_abelian(2)
}

fn free2() -> GroupPresentation {
    GroupPresentation::free(2)
}

fn commutator_presentation() -> GroupPresentation {
    GroupPresentation::presented(2, vec![vec![1, 2, -1, -2]]).unwrap()
}

fn show(s: &RationalSeries) -> String {
    s.to_strings().join(", ")
}

fn run_identity(
    theorem: Theorem,
    inv: Invariant,
    name: &str,
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    t: usize,
) -> std::result::Result<(), String> {
    let report = verify(theorem, inv, p, desc, t, &Ctx::default()).map_err(|e| format!("{name}: {e}"))?;
    ensure(report.all_passed(), || format!("{name}:\n{report}"))
}

fn criterion_1() -> Check {
    let ctx = Ctx::default();
    let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
    let sets: Vec<(&str, Arc<FiniteGroup>, FiniteGSet)> = vec![
        ("regular Z/2", z2(), FiniteGSet::regular(&z2())),
        ("regular Z/3", z3.clone(), FiniteGSet::regular(&z3)),
        ("natural S3", s3(), FiniteGSet::natural(&s3()).unwrap()),
        ("Z/2 with 2 fixed points", z2(), FiniteGSet::regular(&z2()).with_fixed_points(2)),
    ];
    let sources = [GroupPresentation::trivial(), z(), z_squared(), free2()];
    let mut checked = 0usize;
    for (name, g, x) in &sets {
        let desc = descriptor_from_gset(x, g.clone(), &ctx.caps).map_err(|e| e.to_string())?;
        let max_n = if g.order() == 2 { 4 } else { 3 };
        for n in 1..=max_n {
            let w = wreath_product(g, n, &ctx.caps).map_err(|e| e.to_string())?;
            let wp = WreathProduct::new(g.clone(), n).map_err(|e| e.to_string())?;
            let info = w.wreath().unwrap();
            for p in &sources {
                let homs = enumerate_homs(p, &w, &ctx).map_err(|e| e.to_string())?;
                let bad = homs.iter().collect::<Vec<_>>().into_par_iter().find_any(|images| {
                    let elems: Vec<_> = images.iter().map(|&i| info.decode(i)).collect();
                    let lhs = wreath_fixed_chi(&desc, &w, images).unwrap();
                    let rhs = gset_wreath_oracle(x, &wp, &elems, &ctx.caps).unwrap();
                    lhs != rhs as i64
                });
                if let Some(images) = bad {
                    return Err(format!("{name}, n = {n}, {}: mismatch at θ = {images:?}", p.describe()));
                }
                checked += homs.len();
            }
        }
    }
    Ok(format!("{checked} homomorphisms"))
}

fn criterion_2() -> Check {
    let cases = [
        ("(Z, Z/2, point)", z(), point(&z2()), 5),
        ("(Z, S3, point)", z(), point(&s3()), 3),
        ("(Z, Z/2, circle)", z(), circle(&z2()), 4),
        ("(Z², Z/2, point)", z_squared(), point(&z2()), 3),
        ("(free 2, Z/2, point)", free2(), point(&z2()), 3),
    ];
    for (name, p, desc, t) in &cases {
        run_identity(Theorem::EulerSatake, Invariant::EulerSatake, name, p, desc, *t)?;
    }
    let ctx = Ctx::default();
    let analytic = RationalSeries::from_ints(&[1; 6]);
    let lhs = lhs_series(Invariant::EulerSatake, &z(), &point(&z2()), 5, &ctx).map_err(|e| e.to_string())?;
    let rhs = rhs_es_exp(&z(), &point(&z2()), 5, &ctx).map_err(|e| e.to_string())?;
    ensure(lhs == analytic && rhs == analytic, || format!("expected 1/(1-q), got {} and {}", show(&lhs), show(&rhs)))?;
    Ok(format!("{} configurations", cases.len()))
}

fn criterion_3() -> Check {
    let cases = [
        ("(Z, Z/2, point)", z(), point(&z2()), 4),
        ("(Z, S3, point)", z(), point(&s3()), 3),
        ("(trivial, Z/2, circle)", GroupPresentation::trivial(), circle(&z2()), 5),
    ];
    for (name, p, desc, t) in &cases {
        run_identity(Theorem::Euler, Invariant::Euler, name, p, desc, *t)?;
    }
    let ctx = Ctx::default();
    let lhs = lhs_series(Invariant::Euler, &z(), &point(&z2()), 4, &ctx).map_err(|e| e.to_string())?;
    ensure(lhs == RationalSeries::from_ints(&[1, 2, 5, 10, 20]), || format!("class counts {}", show(&lhs)))?;
    let rhs = rhs_euler_product(&z(), &point(&z2()), 4, &ctx).map_err(|e| e.to_string())?;
    let expected = RationalSeries::product_family(
        &(1..=4).map(|r| RationalSeries::geom_power(r, &int(2), 4)).collect::<Vec<_>>(),
        4,
    );
    ensure(rhs == expected, || format!("product {}", show(&rhs)))?;
    let rhs = rhs_euler_product(&GroupPresentation::trivial(), &circle(&z2()), 5, &ctx).map_err(|e| e.to_string())?;
    ensure(rhs == RationalSeries::from_ints(&[1; 6]), || format!("circle product {}", show(&rhs)))?;
    Ok(format!("{} configurations", cases.len()))
}

fn criterion_4() -> Check {
    let ctx = Ctx::default();
    let cases = [
        ("(Z, Z/2, point)", z(), point(&z2()), 4),
        ("(Z², Z/2, point)", z_squared(), point(&z2()), 3),
        ("(Z, S3, point)", z(), point(&s3()), 3),
        ("(⟨a,b | [a,b]⟩, Z/2, point)", commutator_presentation(), point(&z2()), 3),
    ];
    for (name, p, desc, t) in &cases {
        let report = verify_dm(p, desc, *t, &ctx).map_err(|e| format!("{name}: {e}"))?;
        ensure(report.all_passed(), || format!("{name}:\n{report}"))?;
        let psi = dm_psi(p, desc, *t, &ctx).map_err(|e| e.to_string())?;
        let lhs = lhs_series(Invariant::EulerSatake, p, desc, *t, &ctx).map_err(|e| e.to_string())?;
        ensure(psi == lhs, || format!("{name}: Ψ = {} but sector series = {}", show(&psi), show(&lhs)))?;
    }
    Ok(format!("{} configurations", cases.len()))
}

fn criterion_5() -> Check {
    for inv in [Invariant::EulerSatake, Invariant::Euler] {
        run_identity(Theorem::GammaSet, inv, &format!("(Z, Z/2, point, {})", inv.name()), &z(), &point(&z2()), 4)?;
    }
    Ok("2 configurations".into())
}

fn criterion_6() -> Check {
    let ctx = Ctx::default();
    let gammas = [
        ("Z/2", z2()),
        ("Z/4", Arc::new(FiniteGroup::cyclic(4).unwrap())),
        ("S3", s3()),
    ];
    let mut compared = 0;
    for (gname, gamma) in &gammas {
        let p = GroupPresentation::finite(gamma.clone());
        let src = p.finite_source().unwrap();
        let lattice = gamma.all_subgroups(&ctx.caps).map_err(|e| e.to_string())?;
        for g in [z2(), s3()] {
            for (dname, desc) in [("point", point(&g)), ("circle", circle(&g))] {
                for inv in [Invariant::Euler, Invariant::EulerSatake] {
                    for h in &lattice.subgroups {
                        let label = format!("Γ = {gname}, |H| = {}, |G| = {}, {dname}, {}", h.order(), g.order(), inv.name());
                        let direct = gamma_set_extension_direct(inv, &p, h, &desc, &ctx).map_err(|e| format!("{label}: {e}"))?;
                        let class = GammaSetClass::coset_space(src, h);
                        let brute =
                            gamma_set_extension_bruteforce(inv, &p, &class, &desc, &ctx).map_err(|e| format!("{label}: {e}"))?;
                        ensure(direct.value == brute, || {
                            format!("{label}: direct {} != brute {}", format_rational(&direct.value), format_rational(&brute))
                        })?;
                        if h.order() == gamma.order() {
                            let whole = gamma_extension(inv, &p, &desc, &ctx).map_err(|e| e.to_string())?;
                            ensure(whole.value == brute, || {
                                format!("{label}: extension {} != {}", format_rational(&whole.value), format_rational(&brute))
                            })?;
                        }
                        compared += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{compared} subgroup cases"))
}

fn criterion_7() -> Check {
    let ctx = Ctx::default();
    let hnf: Vec<BigInt> = (1..=6).map(|n| hnf_count(2, n)).collect();
    ensure(hnf == [1, 3, 4, 7, 6, 12].map(BigInt::from), || format!("HNF counts {hnf:?}"))?;
    let hall = hall_counts(2, 4);
    ensure(hall == [1, 3, 13, 71].map(BigInt::from), || format!("Hall counts {hall:?}"))?;
    for n in 1..=3 {
        let count = count_index_n_subgroups(&free2(), n, &ctx).map_err(|e| e.to_string())?;
        let t_n = transitive_hom_count(2, n, &ctx).map_err(|e| e.to_string())?;
        let oracle = t_n / BigInt::from(factorial(n - 1));
        ensure(count == oracle, || format!("free 2, n = {n}: {count} != {oracle}"))?;
    }
    Ok("Z² n ≤ 6, free 2 n ≤ 4".into())
}

fn criterion_8() -> Check {
    let ctx = Ctx::default();
    let trivial = GroupPresentation::trivial();
    for (name, desc) in [("(Z/2, circle)", circle(&z2())), ("(S3, natural)", natural_s3())] {
        for inv in [Invariant::EulerSatake, Invariant::Euler] {
            run_identity(Theorem::Macdonald, inv, &format!("{name} {}", inv.name()), &trivial, &desc, 5)?;
        }
        let quotient = chi_quotient(&desc, &desc.group().whole(), None).map_err(|e| e.to_string())?;
        let euler = lhs_series(Invariant::Euler, &trivial, &desc, 5, &ctx).map_err(|e| e.to_string())?;
        ensure(euler == RationalSeries::geom_power(1, &int(quotient), 5), || format!("{name}: {}", show(&euler)))?;
        let es = lhs_series(Invariant::EulerSatake, &trivial, &desc, 5, &ctx).map_err(|e| e.to_string())?;
        let c = BigRational::new(desc.chi_total().into(), desc.group().order().into());
        let expected = RationalSeries::monomial(5, 1, c).exp_series().unwrap();
        ensure(es == expected, || format!("{name}: {}", show(&es)))?;
    }
    Ok("2 descriptors, both invariants".into())
}

fn group_axioms(name: &str, g: &FiniteGroup) -> std::result::Result<(), String> {
    let n = g.order();
    let e = g.identity();
    for a in 0..n {
        ensure(g.mul(a, e) == a && g.mul(e, a) == a, || format!("{name}: identity fails at {a}"))?;
        ensure(g.mul(a, g.inv(a)) == e && g.mul(g.inv(a), a) == e, || format!("{name}: inverse fails at {a}"))?;
    }
    let assoc = (0..n).into_par_iter().all(|a| {
        (0..n).all(|b| {
            let ab = g.mul(a, b);
            (0..n).all(|c| g.mul(ab, c) == g.mul(a, g.mul(b, c)))
        })
    });
    ensure(assoc, || format!("{name}: not associative"))?;
    let classes = g.conjugacy_classes();
    let total: usize = classes.classes.iter().map(Vec::len).sum();
    ensure(total == n, || format!("{name}: class sizes sum to {total}"))?;
    ensure(classes.classes.iter().all(|c| n.is_multiple_of(c.len())), || format!("{name}: class size does not divide order"))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=5).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

/// `G/K` with `G` acting by left multiplication.
fn coset_space(g: &FiniteGroup, k: &[usize]) -> FiniteGSet {
    let coset_key = |x: usize| k.iter().map(|&h| g.mul(x, h)).min().unwrap();
    let mut keys: Vec<usize> = (0..g.order()).map(coset_key).collect();
    keys.sort_unstable();
    keys.dedup();
    let action = (0..g.order())
        .map(|a| keys.iter().map(|&x| keys.binary_search(&coset_key(g.mul(a, x))).unwrap()).collect())
        .collect();
    FiniteGSet::new(keys.len(), action)
}

/// `Σ_K a_K [G/K]` over subgroup classes, a virtual G-set.
fn descriptor_with(g: &Arc<FiniteGroup>, coefficients: &[i64]) -> GSpaceDescriptor {
    let lattice = g.all_subgroups(&caps()).unwrap();
    let mut acc = point(g).scale(0);
    for (c, &a) in coefficients.iter().enumerate().take(lattice.classes.len()) {
        let x = coset_space(g, lattice.class_representative(c).elements());
        let d = descriptor_from_gset(&x, g.clone(), &caps()).unwrap();
        acc = acc.add(&d.scale(a)).unwrap();
    }
    acc
}

fn criterion_9() -> Check {
    let c = caps();
    let z2c = Arc::new(FiniteGroup::cyclic(2).unwrap());
    let mut groups: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 1..=8 {
        groups.push((format!("Z/{n}"), FiniteGroup::cyclic(n).unwrap()));
    }
    for n in 1..=4 {
        groups.push((format!("S{n}"), FiniteGroup::symmetric(n, &c).unwrap()));
    }
    let z3 = FiniteGroup::cyclic(3).unwrap();
    groups.push(("Z/2 × Z/3".into(), FiniteGroup::direct_product(&z2c, &z3, &c).unwrap()));
    groups.push(("Z/2 × S3".into(), FiniteGroup::direct_product(&z2c, &s3(), &c).unwrap()));
    groups.push((
        "D4".into(),
        FiniteGroup::permutation_generated(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]], &c).unwrap(),
    ));
    for (base, n) in [(z2c.clone(), 2), (z2c.clone(), 3), (s3(), 2)] {
        groups.push((format!("|G| = {} wreath {n}", base.order()), wreath_product(&base, n, &c).unwrap()));
    }
    for (name, g) in &groups {
        group_axioms(name, g)?;
    }

    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner
        .run(&proptest::collection::vec(small_rational(), 8), |tail| {
            let mut coeffs = vec![int(0)];
            coeffs.extend(tail.iter().cloned());
            let f = RationalSeries::from_coeffs(coeffs);
            let back = f.exp_series().unwrap().log_series().unwrap();
            prop_assert_eq!(&back, &f);
            let mut coeffs = vec![int(1)];
            coeffs.extend(tail);
            let g = RationalSeries::from_coeffs(coeffs);
            prop_assert_eq!(g.log_series().unwrap().exp_series().unwrap(), g);
            Ok(())
        })
        .map_err(|e| format!("exp/log round trip: {e}"))?;

    let ctx = Ctx::default();
    let sources = [GroupPresentation::trivial(), z(), z_squared(), free2()];
    let mut runner = TestRunner::new(Config { cases: 24, failure_persistence: None, ..Config::default() });
    let strategy = (any::<bool>(), proptest::collection::vec(-2i64..=2, 4), proptest::collection::vec(-2i64..=2, 4));
    runner
        .run(&strategy, |(use_s3, a, b)| {
            let g = if use_s3 { s3() } else { z2() };
            let (da, db) = (descriptor_with(&g, &a), descriptor_with(&g, &b));
            let sum = da.add(&db).unwrap();
            for p in &sources {
                for inv in [Invariant::Euler, Invariant::EulerSatake] {
                    let lhs = gamma_extension(inv, p, &sum, &ctx).unwrap().value;
                    let rhs = gamma_extension(inv, p, &da, &ctx).unwrap().value + gamma_extension(inv, p, &db, &ctx).unwrap().value;
                    prop_assert_eq!(lhs, rhs);
                }
            }
            Ok(())
        })
        .map_err(|e| format!("descriptor linearity: {e}"))?;
    Ok(format!("{} groups, 100 series, 24 descriptor pairs", groups.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("wreath fixed χ against the G-set oracle", criterion_1),
        ("Euler–Satake exponential identity", criterion_2),
        ("Euler product identity", criterion_3),
        ("Ψ = exp Φ", criterion_4),
        ("Γ-set decomposition", criterion_5),
        ("direct and brute-force Γ-set extensions", criterion_6),
        ("subgroup growth", criterion_7),
        ("trivial-Γ specializations", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1} s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({secs:.1} s)\n{detail}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
