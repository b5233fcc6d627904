//! Permutation actions of Γ: orbits, Schreier generators, Γ-set classes,
//! and restriction of wreath-valued homomorphisms to a single orbit.

use std::collections::VecDeque;
use std::sync::Arc;

use super::hnf::{hermite_normal_form, Matrix};
use super::{enumerate_homs, free_reduce, hom_conjugacy_classes, inverse_word, GroupPresentation, Preset, Word};
use super::{evaluate_unchecked, FiniteSource};
use crate::caps::Ctx;
use crate::error::{Error, Result};
use crate::group::perm::{self, Perm};
use crate::group::{FiniteGroup, Subgroup, WreathElement, WreathProduct};

/// Wreath-element form of an image tuple into a wreath [`FiniteGroup`].
pub fn wreath_images(images: &[usize], w: &FiniteGroup) -> Result<Vec<WreathElement>> {
    let info = w.wreath().ok_or(Error::TargetNotWreath)?;
    Ok(images.iter().map(|&x| info.decode(x)).collect())
}

/// The composite Γ → G(S_n) → S_n, as element indices of the symmetric group.
pub fn underlying_permutation_hom(images: &[usize], w: &FiniteGroup) -> Result<Vec<usize>> {
    let info = w.wreath().ok_or(Error::TargetNotWreath)?;
    Ok(images.iter().map(|&x| info.project(x)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted.
    pub points: Vec<usize>,
    /// The smallest point of the orbit.
    pub basepoint: usize,
    /// `(p, t_p)` in breadth-first order, where the word `t_p` carries the
    /// basepoint to `p`.
    pub transversal: Vec<(usize, Word)>,
    /// Freely reduced nontrivial words `t_{xp}⁻¹ x t_p`; they generate the
    /// basepoint stabilizer.
    pub schreier: Vec<Word>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Orbits of the group generated by `perms` on `0..n`, ordered by basepoint.
pub fn orbit_structure(perms: &[Perm], n: usize) -> Vec<Orbit> {
    let mut word_of: Vec<Option<Word>> = vec![None; n];
    let mut orbits = Vec::new();
    for b in 0..n {
        if word_of[b].is_some() {
            continue;
        }
        word_of[b] = Some(vec![]);
        let mut order = vec![b];
        let mut queue = VecDeque::from([b]);
        while let Some(p) = queue.pop_front() {
            for (s, sigma) in perms.iter().enumerate() {
                let q = sigma[p];
                if word_of[q].is_none() {
                    let mut w = vec![s as i32 + 1];
                    w.extend_from_slice(word_of[p].as_ref().unwrap());
                    word_of[q] = Some(w);
                    order.push(q);
                    queue.push_back(q);
                }
            }
        }
        let mut schreier = Vec::new();
        for &p in &order {
            for (s, sigma) in perms.iter().enumerate() {
                let q = sigma[p];
                let mut w = inverse_word(word_of[q].as_ref().unwrap());
                w.push(s as i32 + 1);
                w.extend_from_slice(word_of[p].as_ref().unwrap());
                let w = free_reduce(&w);
                if !w.is_empty() {
                    schreier.push(w);
                }
            }
        }
        let transversal = order.iter().map(|&p| (p, word_of[p].clone().unwrap())).collect();
        let mut points = order;
        points.sort_unstable();
        orbits.push(Orbit { points, basepoint: b, transversal, schreier });
    }
    orbits
}

/// Isomorphism class of a finite Γ-set of degree `n`, stored as the
/// lexicographically minimal generator-image tuple over all relabelings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaSetClass {
    degree: usize,
    images: Vec<Perm>,
}

impl GammaSetClass {
    pub fn from_action(perms: &[Perm], n: usize) -> Self {
        let mut best: Option<Vec<Perm>> = None;
        for p in perm::all_perms(n) {
            let cand: Vec<Perm> = perms.iter().map(|s| perm::conjugate(&p, s)).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        GammaSetClass { degree: n, images: best.unwrap_or_else(|| perms.to_vec()) }
    }

    /// The empty Γ-set for a source with `generators` generators.
    pub fn empty(generators: usize) -> Self {
        GammaSetClass { degree: 0, images: vec![vec![]; generators] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn orbits(&self) -> Vec<Orbit> {
        orbit_structure(&self.images, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbits().len() == 1
    }

    pub fn disjoint_union(&self, other: &GammaSetClass) -> GammaSetClass {
        let perms: Vec<Perm> = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let mut p = a.clone();
                p.extend(b.iter().map(|&x| x + self.degree));
                p
            })
            .collect();
        GammaSetClass::from_action(&perms, self.degree + other.degree)
    }

    /// `r` disjoint copies.
    pub fn multiple(&self, r: usize) -> GammaSetClass {
        (0..r).fold(GammaSetClass::empty(self.images.len()), |acc, _| acc.disjoint_union(self))
    }

    /// Left cosets `Γ/H` of a finite Γ, with Γ acting by left multiplication.
    pub fn coset_space(src: &FiniteSource, h: &Subgroup) -> GammaSetClass {
        let g = &src.group;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if coset_of[x] == usize::MAX {
                for &y in h.elements() {
                    coset_of[g.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        let perms: Vec<Perm> =
            src.generators.iter().map(|&s| reps.iter().map(|&r| coset_of[g.mul(s, r)]).collect()).collect();
        GammaSetClass::from_action(&perms, reps.len())
    }

    /// Every transitive Γ-set of the given degree, in canonical order.
    pub fn transitive_classes(p: &GroupPresentation, degree: usize, ctx: &Ctx) -> Result<Vec<GammaSetClass>> {
        if degree == 0 {
            return Ok(vec![]);
        }
        let s = FiniteGroup::symmetric(degree, &ctx.caps)?;
        let perms = s.perms().expect("symmetric groups carry permutations");
        let homs = enumerate_homs(p, &s, ctx)?;
        let classes = hom_conjugacy_classes(&homs, &s, ctx)?;
        // Element indices of S_n follow lexicographic order of permutations, so
        // the class representative is already the canonical tuple.
        Ok(classes
            .iter()
            .map(|c| GammaSetClass {
                degree,
                images: homs.get(c.representative).iter().map(|&i| perms[i].clone()).collect(),
            })
            .filter(|c| c.is_transitive())
            .collect())
    }
}

/// A homomorphism from a basepoint stabilizer H into G, presented on the
/// stabilizer's own presentation.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub iso_type: GroupPresentation,
    pub images: Vec<usize>,
    /// HNF basis of the stabilizer lattice, for `Z^d` sources.
    pub lattice_basis: Option<Matrix>,
    /// The stabilizer as a subgroup, for finite sources.
    pub stabilizer: Option<Subgroup>,
}

/// Evaluates stabilizer generators through θ and reads the G-component at the
/// basepoint.
pub fn restrict_to_orbit(
    p: &GroupPresentation,
    wp: &WreathProduct,
    theta: &[WreathElement],
    orbit: &Orbit,
) -> Result<Restriction> {
    let b = orbit.basepoint;
    let component = |w: &[i32]| wp.word_component(w, theta, b);
    match p.preset() {
        Some(Preset::Trivial) => Ok(Restriction {
            iso_type: GroupPresentation::trivial(),
            images: vec![],
            lattice_basis: None,
            stabilizer: None,
        }),
        Some(Preset::Free(k)) => {
            let rank = orbit.len() * k + 1 - orbit.len();
            if orbit.schreier.len() != rank {
                return Err(Error::Inconsistent(format!(
                    "{} Schreier generators for a free stabilizer of rank {rank}",
                    orbit.schreier.len()
                )));
            }
            Ok(Restriction {
                iso_type: GroupPresentation::free(rank),
                images: orbit.schreier.iter().map(|w| component(w)).collect(),
                lattice_basis: None,
                stabilizer: None,
            })
        }
        Some(Preset::FreeAbelian(d)) => {
            let vectors: Vec<Vec<i64>> = orbit
                .schreier
                .iter()
                .map(|w| {
                    let mut v = vec![0i64; d];
                    for &l in w {
                        v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
                    }
                    v
                })
                .collect();
            let mut basis = hermite_normal_form(&vectors, d)?;
            if d > 0 && basis.is_empty() {
                // stabilizer of a fixed point is everything
                basis = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
            }
            if basis.len() != d {
                return Err(Error::Inconsistent("stabilizer lattice is not of full rank".into()));
            }
            let images = basis.iter().map(|row| component(&lattice_word(row))).collect();
            Ok(Restriction {
                iso_type: GroupPresentation::free_abelian(d),
                images,
                lattice_basis: Some(basis),
                stabilizer: None,
            })
        }
        Some(Preset::Finite) => {
            let src = p.finite_source().expect("finite preset has a source");
            let gamma = &src.group;
            let elems: Vec<usize> =
                orbit.schreier.iter().map(|w| evaluate_unchecked(w, &src.generators, gamma)).collect();
            let h = gamma.subgroup_generated(&elems);
            let local = Arc::new(gamma.subgroup_as_group(&h));
            let iso_type = GroupPresentation::finite(local);
            let local_gens = &iso_type.finite_source().unwrap().generators;
            let images = local_gens.iter().map(|&lg| component(&src.words[h.elements()[lg]])).collect();
            Ok(Restriction { iso_type, images, lattice_basis: None, stabilizer: Some(h) })
        }
        None => Err(Error::UnsupportedSource(
            "stabilizer presentations are only derived for preset sources".into(),
        )),
    }
}

/// `x_1^{v_1} ⋯ x_d^{v_d}`.
pub(crate) fn lattice_word(v: &[i64]) -> Word {
    let mut w = Vec::new();
    for (i, &e) in v.iter().enumerate() {
        let l = (i as i32 + 1) * e.signum() as i32;
        for _ in 0..e.unsigned_abs() {
            w.push(l);
        }
    }
    w
}
