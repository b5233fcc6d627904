//! Orbifold input: Euler characteristics of fixed sets `χ(M^H)` for every
//! conjugacy class of subgroups `H ≤ G`, and a literal finite G-set oracle.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup, Subgroup, SubgroupLattice, WreathElement, WreathProduct};
use crate::presentation::{orbit_structure, wreath_images};

/// Fixed-point Euler characteristics keyed by subgroup conjugacy class.
#[derive(Debug, Clone)]
pub struct GSpaceDescriptor {
    group: Arc<FiniteGroup>,
    lattice: Arc<SubgroupLattice>,
    chi: Vec<i64>,
}

/// A subgroup named by generators: element indices, or 1-based permutation
/// images for permutation groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorRef {
    Index(usize),
    Perm(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub generators: Vec<GeneratorRef>,
    pub chi: i64,
}

/// Descriptor JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DescriptorSpec {
    FixedChiTable { entries: Vec<TableEntry> },
    FiniteGset { size: usize, action: Vec<Vec<usize>> },
    Point,
}

impl DescriptorSpec {
    pub fn build(&self, group: &Arc<FiniteGroup>, caps: &Caps) -> Result<GSpaceDescriptor> {
        match self {
            DescriptorSpec::Point => GSpaceDescriptor::point(group.clone(), caps),
            DescriptorSpec::FiniteGset { size, action } => {
                let x = FiniteGSet::new(*size, action.clone());
                descriptor_from_gset(&x, group.clone(), caps)
            }
            DescriptorSpec::FixedChiTable { entries } => {
                let resolved = entries
                    .iter()
                    .map(|e| {
                        let gens =
                            e.generators.iter().map(|g| resolve_generator(group, g)).collect::<Result<Vec<_>>>()?;
                        Ok((gens, e.chi))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GSpaceDescriptor::from_table(group.clone(), &resolved, caps)
            }
        }
    }
}

fn resolve_generator(group: &FiniteGroup, g: &GeneratorRef) -> Result<usize> {
    match g {
        GeneratorRef::Index(i) if *i < group.order() => Ok(*i),
        GeneratorRef::Index(i) => Err(Error::InvalidInput(format!("element index {i} out of range"))),
        GeneratorRef::Perm(p) => {
            let zero_based: Vec<usize> = p.iter().map(|&x| x.wrapping_sub(1)).collect();
            group.find_perm(&zero_based).ok_or_else(|| Error::InvalidPermutation(p.clone()))
        }
    }
}

impl GSpaceDescriptor {
    /// All fixed sets are the point itself.
    pub fn point(group: Arc<FiniteGroup>, caps: &Caps) -> Result<Self> {
        let lattice = Arc::new(group.all_subgroups(caps)?);
        let chi = vec![1; lattice.classes.len()];
        Ok(GSpaceDescriptor { group, lattice, chi })
    }

    /// Entries are `(generators, χ)`. Every subgroup class must be named
    /// exactly once.
    pub fn from_table(group: Arc<FiniteGroup>, entries: &[(Vec<usize>, i64)], caps: &Caps) -> Result<Self> {
        let lattice = Arc::new(group.all_subgroups(caps)?);
        let mut chi: Vec<Option<(i64, usize)>> = vec![None; lattice.classes.len()];
        for (gens, value) in entries {
            let set = group.subgroup_generated(gens);
            let index = lattice.find(set.set()).expect("lattice is complete");
            let class = lattice.class_of[index];
            match chi[class] {
                None => chi[class] = Some((*value, index)),
                Some((v, first)) if v != *value => {
                    let label = if first == index { class_label(&group, &lattice, class) } else {
                        format!("{} (conjugate keys)", class_label(&group, &lattice, class))
                    };
                    return Err(Error::ConjugacyConflict { class: label, first: v, second: *value });
                }
                Some(_) => return Err(Error::DuplicateClass(class_label(&group, &lattice, class))),
            }
        }
        if let Some(missing) = chi.iter().position(|c| c.is_none()) {
            return Err(Error::MissingClass(class_label(&group, &lattice, missing)));
        }
        let chi = chi.into_iter().map(|c| c.unwrap().0).collect();
        Ok(GSpaceDescriptor { group, lattice, chi })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    /// χ per subgroup class, in lattice class order.
    pub fn class_values(&self) -> &[i64] {
        &self.chi
    }

    /// `χ(M)`.
    pub fn chi_total(&self) -> i64 {
        self.chi[self.lattice.class_of[0]]
    }

    pub fn chi_of_set(&self, set: &ElementSet) -> i64 {
        let index = self.lattice.find(set).expect("lattice is complete");
        self.chi[self.lattice.class_of[index]]
    }

    /// `χ(M^{⟨gens⟩})`.
    pub fn chi_generated(&self, gens: &[usize]) -> i64 {
        self.chi_of_set(&self.group.closure(gens))
    }

    pub fn same_group(&self, g: &FiniteGroup) -> bool {
        std::ptr::eq(self.group.as_ref(), g) || *self.group == *g
    }

    /// Pointwise sum; the virtual space `M ⊔ N`.
    pub fn add(&self, other: &GSpaceDescriptor) -> Result<Self> {
        if !other.same_group(&self.group) {
            return Err(Error::GroupMismatch);
        }
        let chi = self.chi.iter().zip(&other.chi).map(|(a, b)| a + b).collect();
        Ok(GSpaceDescriptor { chi, ..self.clone() })
    }

    pub fn scale(&self, k: i64) -> Self {
        GSpaceDescriptor { chi: self.chi.iter().map(|a| a * k).collect(), ..self.clone() }
    }

    pub fn class_label(&self, class: usize) -> String {
        class_label(&self.group, &self.lattice, class)
    }

    /// The descriptor as a table keyed by the class representatives.
    pub fn to_spec(&self) -> DescriptorSpec {
        let entries = (0..self.chi.len())
            .map(|c| TableEntry {
                generators: self
                    .group
                    .subgroup_generators(self.lattice.class_representative(c))
                    .into_iter()
                    .map(GeneratorRef::Index)
                    .collect(),
                chi: self.chi[c],
            })
            .collect();
        DescriptorSpec::FixedChiTable { entries }
    }
}

fn class_label(group: &FiniteGroup, lattice: &SubgroupLattice, class: usize) -> String {
    let gens = group.subgroup_generators(lattice.class_representative(class));
    let names: Vec<String> = gens.iter().map(|&g| group.label(g)).collect();
    format!("<{}>", names.join(", "))
}

/// A finite G-set; `action[g][x]` is `g·x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGSet {
    size: usize,
    action: Vec<Vec<usize>>,
}

impl FiniteGSet {
    pub fn new(size: usize, action: Vec<Vec<usize>>) -> Self {
        FiniteGSet { size, action }
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(g: &FiniteGroup) -> Self {
        FiniteGSet { size: g.order(), action: (0..g.order()).map(|a| (0..g.order()).map(|x| g.mul(a, x)).collect()).collect() }
    }

    /// A permutation group on its points.
    pub fn natural(g: &FiniteGroup) -> Option<Self> {
        let perms = g.perms()?;
        Some(FiniteGSet { size: perms[0].len(), action: perms.to_vec() })
    }

    /// Disjoint union with `m` fixed points.
    pub fn with_fixed_points(&self, m: usize) -> Self {
        let action =
            self.action.iter().map(|row| row.iter().copied().chain(self.size..self.size + m).collect()).collect();
        FiniteGSet { size: self.size + m, action }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        if self.action.len() != g.order() {
            return Err(Error::InvalidAction(format!("{} rows for a group of order {}", self.action.len(), g.order())));
        }
        for (a, row) in self.action.iter().enumerate() {
            if row.len() != self.size || !crate::group::perm::is_permutation(row) {
                return Err(Error::InvalidAction(format!("row {a} is not a permutation of {} points", self.size)));
            }
        }
        if (0..self.size).any(|x| self.act(g.identity(), x) != x) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if let Some(x) = (0..self.size).find(|&x| self.act(a, self.act(b, x)) != self.act(ab, x)) {
                    return Err(Error::InvalidAction(format!("g{a}·(g{b}·{x}) != (g{a}g{b})·{x}")));
                }
            }
        }
        Ok(())
    }

    pub fn fixed_count(&self, elems: &[usize]) -> usize {
        (0..self.size).filter(|&x| elems.iter().all(|&g| self.act(g, x) == x)).count()
    }
}

/// Marks of the G-set: `χ(M^H) = |X^H|`.
pub fn descriptor_from_gset(x: &FiniteGSet, group: Arc<FiniteGroup>, caps: &Caps) -> Result<GSpaceDescriptor> {
    x.validate(&group)?;
    let lattice = Arc::new(group.all_subgroups(caps)?);
    let chi = (0..lattice.classes.len())
        .map(|c| x.fixed_count(lattice.class_representative(c).elements()) as i64)
        .collect();
    Ok(GSpaceDescriptor { group, lattice, chi })
}

/// `χ(M^{⟨θ⟩})` for θ into the descriptor's group.
pub fn chi_of_hom_fixed(desc: &GSpaceDescriptor, target: &FiniteGroup, images: &[usize]) -> Result<i64> {
    if !desc.same_group(target) {
        return Err(Error::GroupMismatch);
    }
    Ok(desc.chi_generated(images))
}

fn burnside(desc: &GSpaceDescriptor, k: &Subgroup, constraint: &[usize]) -> Result<i64> {
    let mut gens = constraint.to_vec();
    gens.push(0);
    let mut sum: i64 = 0;
    for &x in k.elements() {
        *gens.last_mut().unwrap() = x;
        sum += desc.chi_generated(&gens);
    }
    let q = BigRational::new(BigInt::from(sum), BigInt::from(k.order()));
    if !q.is_integer() {
        return Err(Error::NonIntegerResult(crate::series::format_rational(&q)));
    }
    Ok(sum / k.order() as i64)
}

/// `χ(M^{⟨S⟩}/K) = (1/|K|) Σ_k χ(M^{⟨S ∪ {k}⟩})`; `K` must centralize `S`.
pub fn chi_quotient(desc: &GSpaceDescriptor, k: &Subgroup, constraint: Option<&[usize]>) -> Result<i64> {
    let s = constraint.unwrap_or(&[]);
    let g = &desc.group;
    if k.elements().iter().any(|&x| s.iter().any(|&y| !g.commute(x, y))) {
        return Err(Error::NotCentralizing);
    }
    burnside(desc, k, s)
}

/// As [`chi_quotient`] but only asks `K` to normalize `⟨S⟩`, which is all the
/// Burnside step needs for `K` to act on `M^{⟨S⟩}`.
pub fn chi_quotient_normalizing(desc: &GSpaceDescriptor, k: &Subgroup, constraint: &[usize]) -> Result<i64> {
    let g = &desc.group;
    let a = g.subgroup_generated(constraint);
    if k.elements().iter().any(|&x| a.elements().iter().any(|&y| !a.contains(g.conj(x, y)))) {
        return Err(Error::NotNormalizing);
    }
    burnside(desc, k, constraint)
}

/// `χ_ES(X ⋊ K) = χ(X)/|K|`.
pub fn chi_es(chi: i64, k_order: usize) -> BigRational {
    assert!(k_order >= 1, "group order must be positive");
    BigRational::new(BigInt::from(chi), BigInt::from(k_order))
}

/// `χ((M^n)^{⟨elems⟩})` for wreath elements in `G(S_n)`: a product over the
/// orbits of the permutation parts, where an orbit with basepoint `b`
/// contributes `χ(M^{K_b})` and `K_b ≤ G` is generated by the `b`-components
/// of the Schreier generators of the basepoint stabilizer.
pub fn fixed_chi_of_wreath_elements(
    desc: &GSpaceDescriptor,
    wp: &WreathProduct,
    elems: &[WreathElement],
) -> Result<i64> {
    if !desc.same_group(wp.base()) {
        return Err(Error::GroupMismatch);
    }
    let perms: Vec<Vec<usize>> = elems.iter().map(|e| e.perm.clone()).collect();
    let mut total: i64 = 1;
    for orbit in orbit_structure(&perms, wp.degree()) {
        let comps: Vec<usize> =
            orbit.schreier.iter().map(|w| wp.word_component(w, elems, orbit.basepoint)).collect();
        let chi = desc.chi_generated(&comps);
        if chi == 0 {
            return Ok(0);
        }
        total = total.checked_mul(chi).ok_or(Error::Overflow("fixed-set Euler characteristic"))?;
    }
    Ok(total)
}

/// `χ((M^n)^{⟨θ⟩})` for θ into a wreath [`FiniteGroup`].
pub fn wreath_fixed_chi(desc: &GSpaceDescriptor, w: &FiniteGroup, images: &[usize]) -> Result<i64> {
    let info = w.wreath().ok_or(Error::TargetNotWreath)?;
    fixed_chi_of_wreath_elements(desc, &info.product, &wreath_images(images, w)?)
}

/// Literal count of points of `X^n` fixed by every element, under
/// `(g, s)·(x_i) = (g_i x_{s⁻¹(i)})`.
pub fn gset_wreath_oracle(x: &FiniteGSet, wp: &WreathProduct, elems: &[WreathElement], caps: &Caps) -> Result<u64> {
    let n = wp.degree();
    let points = (x.size() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if points > caps.gset_points as u128 {
        return Err(Error::SizeCapExceeded { points, cap: caps.gset_points as u128 });
    }
    if x.size() == 0 {
        return Ok((n == 0) as u64);
    }
    let inv_perms: Vec<Vec<usize>> = elems.iter().map(|e| crate::group::perm::inverse(&e.perm)).collect();
    let count = (0..points as u64)
        .into_par_iter()
        .filter(|&code| {
            let mut tuple = vec![0; n];
            let mut c = code;
            for slot in tuple.iter_mut().rev() {
                *slot = (c % x.size() as u64) as usize;
                c /= x.size() as u64;
            }
            elems.iter().zip(&inv_perms).all(|(e, s_inv)| {
                (0..n).all(|i| x.act(e.components[i], tuple[s_inv[i]]) == tuple[i])
            })
        })
        .count();
    Ok(count as u64)
}
