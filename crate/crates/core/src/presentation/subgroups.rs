//! Subgroups of finite index: counts and explicit lists per preset.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::action::orbit_structure;
use super::hnf::{enumerate_hnf, hnf_count, Matrix};
use super::{enumerate_homs, GroupPresentation, Preset};
use crate::caps::Ctx;
use crate::error::{Error, Result};
use crate::group::perm::{factorial, Perm};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Debug, Clone)]
pub enum Realization {
    /// Rows form a basis of the sublattice of `Z^d`.
    Hnf(Matrix),
    /// Transitive action on cosets; the subgroup is the stabilizer of `basepoint`.
    CosetAction { perms: Vec<Perm>, basepoint: usize },
    Literal(Subgroup),
}

#[derive(Debug, Clone)]
pub struct FiniteIndexSubgroup {
    pub index: usize,
    pub realization: Realization,
    pub iso_type: GroupPresentation,
}

/// `N_1..=N_{n_max}` for the free group of rank `k` by Hall's recursion
/// `N_n = n (n!)^{k-1} - Σ_{i<n} ((n-i)!)^{k-1} N_i`.
pub fn hall_counts(k: usize, n_max: usize) -> Vec<BigInt> {
    if k == 0 {
        return (1..=n_max).map(|n| BigInt::from((n == 1) as u8)).collect();
    }
    let fact = |n: usize| BigInt::from(factorial(n));
    let mut counts: Vec<BigInt> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut v = BigInt::from(n) * fact(n).pow(k as u32 - 1);
        for i in 1..n {
            v -= fact(n - i).pow(k as u32 - 1) * &counts[i - 1];
        }
        counts.push(v);
    }
    counts
}

fn is_transitive(perms: &[Perm], n: usize) -> bool {
    n > 0 && orbit_structure(perms, n).len() == 1
}

/// Homomorphisms `F_k → S_n` whose image is transitive on `n` points.
pub fn transitive_hom_count(k: usize, n: usize, ctx: &Ctx) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let s = FiniteGroup::symmetric(n, &ctx.caps)?;
    let perms = s.perms().unwrap();
    let homs = enumerate_homs(&GroupPresentation::free(k), &s, ctx)?;
    let count = homs
        .iter()
        .filter(|h| is_transitive(&h.iter().map(|&i| perms[i].clone()).collect::<Vec<_>>(), n))
        .count();
    Ok(BigInt::from(count))
}

pub fn count_index_n_subgroups(p: &GroupPresentation, n: usize, ctx: &Ctx) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidInput("subgroup index must be positive".into()));
    }
    match p.preset() {
        Some(Preset::Trivial) => Ok(BigInt::from((n == 1) as u8)),
        Some(Preset::FreeAbelian(d)) => Ok(hnf_count(d, n as u64)),
        Some(Preset::Free(k)) => Ok(hall_counts(k, n).pop().unwrap()),
        Some(Preset::Finite) => Ok(BigInt::from(list_finite(p, n, ctx)?.len())),
        None => Err(Error::UnsupportedSource("subgroup counts need a preset source".into())),
    }
}

pub fn list_index_n_subgroups(p: &GroupPresentation, n: usize, ctx: &Ctx) -> Result<Vec<FiniteIndexSubgroup>> {
    if n == 0 {
        return Err(Error::InvalidInput("subgroup index must be positive".into()));
    }
    match p.preset() {
        Some(Preset::Trivial) => Ok(if n == 1 {
            vec![FiniteIndexSubgroup {
                index: 1,
                realization: Realization::CosetAction { perms: vec![], basepoint: 0 },
                iso_type: GroupPresentation::trivial(),
            }]
        } else {
            vec![]
        }),
        Some(Preset::FreeAbelian(d)) => Ok(enumerate_hnf(d, n as u64)
            .into_iter()
            .map(|m| FiniteIndexSubgroup {
                index: n,
                realization: Realization::Hnf(m),
                iso_type: GroupPresentation::free_abelian(d),
            })
            .collect()),
        Some(Preset::Free(k)) => list_free(k, n, ctx),
        Some(Preset::Finite) => list_finite(p, n, ctx),
        None => Err(Error::UnsupportedSource("subgroup lists need a preset source".into())),
    }
}

/// Transitive actions whose points are numbered in breadth-first discovery
/// order from the basepoint; each index-`n` subgroup has exactly one.
fn list_free(k: usize, n: usize, ctx: &Ctx) -> Result<Vec<FiniteIndexSubgroup>> {
    let s = FiniteGroup::symmetric(n, &ctx.caps)?;
    let all = s.perms().unwrap();
    let homs = enumerate_homs(&GroupPresentation::free(k), &s, ctx)?;
    let rank = n * k + 1 - n;
    let mut out = Vec::new();
    for h in homs.iter() {
        let perms: Vec<Perm> = h.iter().map(|&i| all[i].clone()).collect();
        if is_transitive(&perms, n) && is_bfs_labelled(&perms, n) {
            out.push(FiniteIndexSubgroup {
                index: n,
                realization: Realization::CosetAction { perms, basepoint: 0 },
                iso_type: GroupPresentation::free(rank),
            });
        }
    }
    Ok(out)
}

fn is_bfs_labelled(perms: &[Perm], n: usize) -> bool {
    let mut next = 1;
    let mut seen = vec![false; n];
    seen[0] = true;
    for p in 0..n {
        for s in perms {
            let q = s[p];
            if !seen[q] {
                if q != next {
                    return false;
                }
                seen[q] = true;
                next += 1;
            }
        }
    }
    true
}

fn list_finite(p: &GroupPresentation, n: usize, ctx: &Ctx) -> Result<Vec<FiniteIndexSubgroup>> {
    let src = p.finite_source().expect("finite preset has a source");
    let g = &src.group;
    if !g.order().is_multiple_of(n) {
        return Ok(vec![]);
    }
    let lattice = g.all_subgroups(&ctx.caps)?;
    Ok(lattice
        .subgroups
        .iter()
        .filter(|h| h.order() * n == g.order())
        .map(|h| FiniteIndexSubgroup {
            index: n,
            realization: Realization::Literal(h.clone()),
            iso_type: GroupPresentation::finite(Arc::new(g.subgroup_as_group(h))),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hall_free_two() {
        assert_eq!(hall_counts(2, 4), ints(&[1, 3, 13, 71]));
        assert_eq!(hall_counts(1, 5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(hall_counts(0, 3), ints(&[1, 0, 0]));
    }

    #[test]
    fn hall_matches_transitive_actions() {
        let ctx = Ctx::default();
        for k in 1..=2 {
            let hall = hall_counts(k, 4);
            for n in 1..=4 {
                let t = transitive_hom_count(k, n, &ctx).unwrap();
                assert_eq!(&t % BigInt::from(factorial(n - 1)), BigInt::zero());
                assert_eq!(t / BigInt::from(factorial(n - 1)), hall[n - 1]);
                assert_eq!(BigInt::from(list_free(k, n, &ctx).unwrap().len()), hall[n - 1]);
            }
        }
    }

    #[test]
    fn preset_counts() {
        let ctx = Ctx::default();
        let z2 = GroupPresentation::free_abelian(2);
        let counts: Vec<BigInt> = (1..=4).map(|n| count_index_n_subgroups(&z2, n, &ctx).unwrap()).collect();
        assert_eq!(counts, ints(&[1, 3, 4, 7]));
        let z = GroupPresentation::free_abelian(1);
        for n in 1..6 {
            assert_eq!(count_index_n_subgroups(&z, n, &ctx).unwrap(), BigInt::from(1));
        }
        let s3 = GroupPresentation::finite(Arc::new(FiniteGroup::symmetric(3, &Caps::default()).unwrap()));
        let counts: Vec<BigInt> = (1..=6).map(|n| count_index_n_subgroups(&s3, n, &ctx).unwrap()).collect();
        assert_eq!(counts, ints(&[1, 1, 3, 0, 0, 1]));
        let presented = GroupPresentation::presented(1, vec![]).unwrap();
        assert!(matches!(count_index_n_subgroups(&presented, 2, &ctx), Err(Error::UnsupportedSource(_))));
    }

    #[test]
    fn listed_iso_types() {
        let ctx = Ctx::default();
        let subs = list_index_n_subgroups(&GroupPresentation::free(2), 3, &ctx).unwrap();
        assert_eq!(subs.len(), 13);
        assert!(subs.iter().all(|h| h.iso_type.preset() == Some(Preset::Free(4))));
        let z4 = GroupPresentation::finite(Arc::new(FiniteGroup::cyclic(4).unwrap()));
        let subs = list_index_n_subgroups(&z4, 2, &ctx).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].iso_type.finite_source().unwrap().group.order(), 2);
    }
}
