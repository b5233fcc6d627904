use std::sync::Arc;

use num_rational::BigRational;
use wreath_sectors::group::FiniteGroup;
use wreath_sectors::gspace::GSpaceDescriptor;
use wreath_sectors::identities::{
    abstract_data_from_concrete, dm_phi, dm_psi, lhs_series, macdonald_rhs, rhs_es_exp, rhs_euler_product,
    rhs_master_product, verify, Theorem,
};
use wreath_sectors::presentation::GroupPresentation;
use wreath_sectors::sectors::Invariant;
use wreath_sectors::series::{int, RationalSeries};
use wreath_sectors::{Caps, Ctx};

fn z2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2).unwrap())
}

fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric(3, &Caps::default()).unwrap())
}

fn point(g: &Arc<FiniteGroup>) -> GSpaceDescriptor {
    GSpaceDescriptor::point(g.clone(), &Caps::default()).unwrap()
}

fn circle() -> GSpaceDescriptor {
    GSpaceDescriptor::from_table(z2(), &[(vec![], 0), (vec![1], 2)], &Caps::default()).unwrap()
}

#[test]
fn trivial_source_dress_muller() {
    let ctx = Ctx::default();
    let trivial = GroupPresentation::trivial();
    for desc in [circle(), point(&s3())] {
        let c = BigRational::new(desc.chi_total().into(), desc.group().order().into());
        let phi = dm_phi(&trivial, &desc, 5, &ctx).unwrap();
        assert_eq!(phi, RationalSeries::monomial(5, 1, c));
        let psi = dm_psi(&trivial, &desc, 5, &ctx).unwrap();
        assert_eq!(psi, phi.exp_series().unwrap());
        assert_eq!(rhs_es_exp(&trivial, &desc, 5, &ctx).unwrap(), macdonald_rhs(Invariant::EulerSatake, &desc, 5).unwrap());
    }
}

#[test]
fn dress_muller_on_z_is_geometric() {
    let ctx = Ctx::default();
    let z = GroupPresentation::free_abelian(1);
    let psi = dm_psi(&z, &point(&z2()), 4, &ctx).unwrap();
    assert_eq!(psi, RationalSeries::geom_power(1, &int(1), 4));
    assert_eq!(psi, lhs_series(Invariant::EulerSatake, &z, &point(&z2()), 4, &ctx).unwrap());
}

#[test]
fn es_identity_for_s3_on_z() {
    let report = verify(
        Theorem::EulerSatake,
        Invariant::EulerSatake,
        &GroupPresentation::free_abelian(1),
        &point(&s3()),
        3,
        &Ctx::default(),
    )
    .unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.lhs, ["1"; 4]);
}

#[test]
fn master_product_on_z_squared_and_finite_sources() {
    let ctx = Ctx::default();
    let sources = [
        GroupPresentation::free_abelian(2),
        GroupPresentation::finite(Arc::new(FiniteGroup::cyclic(4).unwrap())),
        GroupPresentation::finite(s3()),
    ];
    for p in &sources {
        for desc in [point(&z2()), circle()] {
            for inv in [Invariant::Euler, Invariant::EulerSatake] {
                let report = verify(Theorem::Product, inv, p, &desc, 3, &ctx).unwrap();
                assert!(report.all_passed(), "{}: {report}", p.describe());
            }
        }
    }
}

#[test]
fn abstract_mode_reproduces_concrete_sides() {
    let ctx = Ctx::default();
    let sources = [
        GroupPresentation::trivial(),
        GroupPresentation::free_abelian(1),
        GroupPresentation::free_abelian(2),
        GroupPresentation::free(2),
        GroupPresentation::finite(s3()),
    ];
    for p in &sources {
        let desc = circle();
        let data = abstract_data_from_concrete(p, &desc, 3, &ctx).unwrap();
        assert_eq!(data.euler_product().unwrap(), rhs_euler_product(p, &desc, 3, &ctx).unwrap(), "{}", p.describe());
        assert_eq!(data.es_exp().unwrap(), rhs_es_exp(p, &desc, 3, &ctx).unwrap(), "{}", p.describe());
        if data.by_index.iter().flatten().all(|e| e.rho.is_some()) {
            for inv in [Invariant::Euler, Invariant::EulerSatake] {
                assert_eq!(data.master_product(inv).unwrap(), rhs_master_product(inv, p, &desc, 3, &ctx).unwrap());
            }
        }
    }
}

#[test]
fn gammaset_decomposition_beyond_z() {
    let ctx = Ctx::default();
    for p in [GroupPresentation::free(2), GroupPresentation::finite(s3())] {
        for inv in [Invariant::Euler, Invariant::EulerSatake] {
            let report = verify(Theorem::GammaSet, inv, &p, &point(&z2()), 3, &ctx).unwrap();
            assert!(report.passed(), "{}: {report}", p.describe());
        }
    }
}
