//! Γ-sector extensions of multiplicative orbifold invariants.

mod lift;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Ctx;
use crate::error::{Error, Result};
use crate::group::perm::{factorial, Perm};
use crate::group::{wreath_product, FiniteGroup, Subgroup, WreathElement, WreathProduct};
use crate::gspace::{chi_es, chi_quotient, chi_quotient_normalizing, fixed_chi_of_wreath_elements, GSpaceDescriptor};
use crate::presentation::{
    enumerate_homs, evaluate_word, hom_conjugacy_classes, restrict_to_orbit, wreath_images, GammaSetClass,
    GroupPresentation, Restriction,
};
use crate::series::format_rational;

pub(crate) use lift::LiftProblem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Euler,
    EulerSatake,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Euler => "euler",
            Invariant::EulerSatake => "euler_satake",
        }
    }
}

impl std::str::FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler" => Ok(Invariant::Euler),
            "euler_satake" => Ok(Invariant::EulerSatake),
            other => Err(Error::InvalidInput(format!("unknown invariant {other:?}"))),
        }
    }
}

/// One sector: a conjugacy class of homomorphisms and its contribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorTerm {
    /// Generator images of the class representative, as target element indices.
    pub representative: Vec<usize>,
    pub class_size: usize,
    pub chi_fixed: i64,
    /// Order of the group acting on the fixed set.
    pub centralizer_order: usize,
    /// `|N^ρ_Γ(H)/H|` on the direct path, where the acting group covers
    /// `C_G(ρ)` with this many sheets; 1 for plain Γ-sectors.
    pub cover_degree: usize,
    pub value: BigRational,
}

impl SectorTerm {
    pub fn report_row(&self) -> serde_json::Value {
        serde_json::json!({
            "representative": self.representative,
            "class_size": self.class_size,
            "chi_fixed": self.chi_fixed,
            "centralizer_order": self.centralizer_order,
            "cover_degree": self.cover_degree,
            "value": format_rational(&self.value),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub value: BigRational,
    pub terms: Vec<SectorTerm>,
}

fn total(terms: Vec<SectorTerm>) -> Extension {
    let value = terms.iter().fold(BigRational::zero(), |acc, t| acc + &t.value);
    Extension { value, terms }
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `φ_Γ(M ⋊ G)`: a sum over conjugacy classes of `θ: Γ → G` of
/// `φ(M^{⟨θ⟩} ⋊ C_G(θ))`.
pub fn gamma_extension(inv: Invariant, p: &GroupPresentation, desc: &GSpaceDescriptor, ctx: &Ctx) -> Result<Extension> {
    let g = desc.group();
    let table = enumerate_homs(p, g, ctx)?;
    let classes = hom_conjugacy_classes(&table, g, ctx)?;
    let terms = classes
        .par_iter()
        .map(|c| {
            let theta = table.get(c.representative);
            let chi_fixed = desc.chi_generated(theta);
            let centralizer = g.centralizer(theta);
            let value = match inv {
                Invariant::Euler => BigRational::from_integer(chi_quotient(desc, &centralizer, Some(theta))?.into()),
                Invariant::EulerSatake => chi_es(chi_fixed, centralizer.order()),
            };
            Ok(SectorTerm {
                representative: theta.to_vec(),
                class_size: c.size,
                chi_fixed,
                centralizer_order: centralizer.order(),
                cover_degree: 1,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(total(terms))
}

/// Sector terms for every hom class into a wreath table, keeping those whose
/// permutation part lies in `filter` when given.
fn wreath_terms(
    inv: Invariant,
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    w: &FiniteGroup,
    filter: Option<&GammaSetClass>,
    ctx: &Ctx,
) -> Result<(Vec<SectorTerm>, BigRational)> {
    let info = w.wreath().ok_or(Error::TargetNotWreath)?;
    let wp = &info.product;
    let table = enumerate_homs(p, w, ctx)?;
    let classes = hom_conjugacy_classes(&table, w, ctx)?;
    let n = wp.degree();
    let keep = |elems: &[WreathElement]| match filter {
        None => true,
        Some(class) => {
            let perms: Vec<Perm> = elems.iter().map(|e| e.perm.clone()).collect();
            GammaSetClass::from_action(&perms, n) == *class
        }
    };
    let terms: Vec<SectorTerm> = classes
        .par_iter()
        .map(|c| {
            let theta = table.get(c.representative);
            let elems = wreath_images(theta, w)?;
            if !keep(&elems) {
                return Ok(None);
            }
            let chi_fixed = fixed_chi_of_wreath_elements(desc, wp, &elems)?;
            let centralizer = w.centralizer(theta);
            let value = match inv {
                Invariant::EulerSatake => chi_es(chi_fixed, centralizer.order()),
                Invariant::Euler => {
                    let sum = orbit_space_sum(desc, wp, &elems, centralizer.elements().iter().map(|&x| wp.decode(x)))?;
                    integral(ratio(sum, centralizer.order()))?
                }
            };
            Ok(Some(SectorTerm {
                representative: theta.to_vec(),
                class_size: c.size,
                chi_fixed,
                centralizer_order: centralizer.order(),
                cover_degree: 1,
                value,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    // Σ over all homs of χ / |W|, the class-free form of the Euler–Satake sum.
    let mut all_homs = BigInt::zero();
    for theta in table.iter() {
        let elems = wreath_images(theta, w)?;
        if keep(&elems) {
            all_homs += fixed_chi_of_wreath_elements(desc, wp, &elems)?;
        }
    }
    Ok((terms, ratio(all_homs, w.order())))
}

/// `Σ_{c} χ((M^n)^{⟨θ, c⟩})`, the Burnside numerator of `χ((M^n)^{⟨θ⟩}/C)`.
fn orbit_space_sum(
    desc: &GSpaceDescriptor,
    wp: &WreathProduct,
    theta: &[WreathElement],
    centralizer: impl Iterator<Item = WreathElement>,
) -> Result<i64> {
    let mut gens = theta.to_vec();
    gens.push(wp.identity());
    let mut sum = 0i64;
    for c in centralizer {
        *gens.last_mut().unwrap() = c;
        sum += fixed_chi_of_wreath_elements(desc, wp, &gens)?;
    }
    Ok(sum)
}

fn integral(q: BigRational) -> Result<BigRational> {
    if q.is_integer() {
        Ok(q)
    } else {
        Err(Error::NonIntegerResult(format_rational(&q)))
    }
}

/// `φ_Γ(M^n ⋊ G(S_n))`.
///
/// A source with no generators has the single trivial sector, evaluated by a
/// pass over the group elements without building a multiplication table.
pub fn gamma_extension_wreath(
    inv: Invariant,
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    n: usize,
    ctx: &Ctx,
) -> Result<Extension> {
    if n == 0 {
        return Ok(total(vec![SectorTerm {
            representative: vec![0; p.generator_count()],
            class_size: 1,
            chi_fixed: 1,
            centralizer_order: 1,
            cover_degree: 1,
            value: BigRational::one(),
        }]));
    }
    if p.generator_count() == 0 {
        return trivial_source_wreath(inv, desc, n, ctx);
    }
    let w = wreath_product(desc.group(), n, &ctx.caps)?;
    let (terms, all_homs) = wreath_terms(inv, p, desc, &w, None, ctx)?;
    let ext = total(terms);
    if inv == Invariant::EulerSatake && ext.value != all_homs {
        return Err(Error::Inconsistent(format!(
            "class sum {} differs from the all-homomorphism sum {}",
            format_rational(&ext.value),
            format_rational(&all_homs)
        )));
    }
    Ok(ext)
}

fn trivial_source_wreath(inv: Invariant, desc: &GSpaceDescriptor, n: usize, ctx: &Ctx) -> Result<Extension> {
    let wp = WreathProduct::new(desc.group().clone(), n)?;
    if wp.order() as u128 > ctx.caps.search_nodes as u128 {
        return Err(Error::SearchCapExceeded { nodes: wp.order() as u128, cap: ctx.caps.search_nodes as u128 });
    }
    let chi_total = desc.chi_total();
    let chi_fixed = (0..n).try_fold(1i64, |acc, _| acc.checked_mul(chi_total)).ok_or(Error::Overflow("χ(M)^n"))?;
    let value = match inv {
        Invariant::EulerSatake => ratio(chi_fixed, wp.order()),
        Invariant::Euler => {
            let sum: i64 = (0..wp.order())
                .into_par_iter()
                .map(|x| fixed_chi_of_wreath_elements(desc, &wp, &[wp.decode(x)]))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            integral(ratio(sum, wp.order()))?
        }
    };
    ctx.stats.add_homs(1);
    ctx.stats.add_classes(1);
    Ok(total(vec![SectorTerm {
        representative: vec![],
        class_size: 1,
        chi_fixed,
        centralizer_order: wp.order(),
        cover_degree: 1,
        value,
    }]))
}

/// `φ_{[X]}(M ⋊ G)` for a Γ-set class of degree `n`: the sum over sectors of
/// `M^n ⋊ G(S_n)` whose permutation part is isomorphic to `X`.
///
/// Runs over gauge-fixed lifts of one representative action σ, so only the
/// centralizer `G^n ⋊ C_{S_n}(σ)` ever appears, never the whole wreath group.
pub fn gamma_set_extension_bruteforce(
    inv: Invariant,
    p: &GroupPresentation,
    class: &GammaSetClass,
    desc: &GSpaceDescriptor,
    ctx: &Ctx,
) -> Result<BigRational> {
    let n = class.degree();
    if class.images().len() != p.generator_count() {
        return Err(Error::InvalidInput("Γ-set class has the wrong number of generators".into()));
    }
    let g = desc.group();
    let wp = WreathProduct::new(g.clone(), n)?;
    let problem = LiftProblem::new(g, class.images(), n, p.relators())?;
    let lifts = problem.gauge_fixed_lifts(ctx)?;
    let action_centralizer = problem.centralizer_of_action();
    let orbits = problem.orbits().len();
    let sums = lifts
        .par_iter()
        .map(|comps| {
            let theta = problem.elements(comps);
            match inv {
                Invariant::EulerSatake => fixed_chi_of_wreath_elements(desc, &wp, &theta),
                Invariant::Euler => {
                    let c = problem.centralizer_of_lift(comps, &action_centralizer);
                    orbit_space_sum(desc, &wp, &theta, c.into_iter())
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let numerator: BigInt = sums.into_iter().map(BigInt::from).sum();
    let denominator = BigInt::from(g.order()).pow(orbits as u32) * action_centralizer.len();
    let value = BigRational::new(numerator, denominator);
    match inv {
        Invariant::Euler => integral(value),
        Invariant::EulerSatake => Ok(value),
    }
}

/// The same quantity read off a full wreath hom table, filtering classes by
/// their permutation part.
pub fn gamma_set_extension_table(
    inv: Invariant,
    p: &GroupPresentation,
    class: &GammaSetClass,
    desc: &GSpaceDescriptor,
    ctx: &Ctx,
) -> Result<BigRational> {
    if class.degree() == 0 {
        return Ok(BigRational::one());
    }
    let w = wreath_product(desc.group(), class.degree(), &ctx.caps)?;
    let (terms, _) = wreath_terms(inv, p, desc, &w, Some(class), ctx)?;
    Ok(total(terms).value)
}

/// `φ_{(Γ/H)}` for finite Γ as a sum over `(N_Γ(H) × G)`-orbits on
/// `HOM(H, G)`, with `(ρ·(u, g))(h) = g⁻¹ρ(uhu⁻¹)g`.
///
/// For ρ with stabilizer `T_ρ`, the sector is `M^{⟨ρ⟩}` acted on by
/// `H\T_ρ` through the G-coordinate.
pub fn gamma_set_extension_direct(
    inv: Invariant,
    p: &GroupPresentation,
    h: &Subgroup,
    desc: &GSpaceDescriptor,
    ctx: &Ctx,
) -> Result<Extension> {
    let src = p.finite_source().ok_or(Error::SourceNotFinite)?;
    let gamma = &src.group;
    let g = desc.group();
    let normalizer = gamma.normalizer(h);
    let h_group = Arc::new(gamma.subgroup_as_group(h));
    let h_pres = GroupPresentation::finite(h_group.clone());
    let h_src = h_pres.finite_source().expect("finite presentation");
    let mut local = vec![usize::MAX; gamma.order()];
    for (i, &x) in h.elements().iter().enumerate() {
        local[x] = i;
    }
    let table = enumerate_homs(&h_pres, g, ctx)?;
    let maps: Vec<Vec<usize>> = table
        .iter()
        .map(|gens| h_src.words.iter().map(|w| evaluate_word(w, gens, g)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let index: HashMap<&[usize], usize> = maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut visited = vec![false; maps.len()];
    let mut terms = Vec::new();
    for (start, rho) in maps.iter().enumerate() {
        if visited[start] {
            continue;
        }
        let mut orbit_size = 0;
        let mut stabilizer = 0usize;
        let mut n_rho = Vec::new();
        let mut k_g = Vec::new();
        let mut image = vec![0; rho.len()];
        for &u in normalizer.elements() {
            for x in 0..g.order() {
                let x_inv = g.inv(x);
                for (i, &hx) in h.elements().iter().enumerate() {
                    image[i] = g.conj(x_inv, rho[local[gamma.conj(u, hx)]]);
                }
                let j = *index
                    .get(image.as_slice())
                    .ok_or_else(|| Error::Inconsistent("twisted homomorphism is missing".into()))?;
                if !visited[j] {
                    visited[j] = true;
                    orbit_size += 1;
                }
                if j == start {
                    stabilizer += 1;
                    n_rho.push(u);
                    k_g.push(x);
                }
            }
        }
        n_rho.sort_unstable();
        n_rho.dedup();
        let centralizer = g.centralizer(rho);
        if stabilizer != n_rho.len() * centralizer.order() {
            return Err(Error::Inconsistent(format!(
                "|T_ρ| = {stabilizer} but |N^ρ|·|C_G(ρ)| = {}",
                n_rho.len() * centralizer.order()
            )));
        }
        let chi_fixed = desc.chi_generated(rho);
        let aut = stabilizer / h.order();
        let value = match inv {
            Invariant::EulerSatake => ratio(chi_fixed as i128 * h.order() as i128, stabilizer),
            Invariant::Euler => {
                let k = g.subgroup_generated(&k_g);
                BigRational::from_integer(chi_quotient_normalizing(desc, &k, rho)?.into())
            }
        };
        terms.push(SectorTerm {
            representative: table.get(start).to_vec(),
            class_size: orbit_size,
            chi_fixed,
            centralizer_order: aut,
            cover_degree: n_rho.len() / h.order(),
            value,
        });
    }
    ctx.stats.add_classes(terms.len() as u64);
    Ok(total(terms))
}

/// Number of subgroups conjugate to a point stabilizer of a transitive
/// Γ-set: `n / |N_Γ(H)/H|`, the action centralizer having order `|N_Γ(H)/H|`.
pub fn transitive_class_size(p: &GroupPresentation, class: &GammaSetClass) -> Result<usize> {
    if !class.is_transitive() {
        return Err(Error::InvalidInput("Γ-set class is not transitive".into()));
    }
    let trivial = FiniteGroup::trivial();
    let problem = LiftProblem::new(&trivial, class.images(), class.degree(), p.relators())?;
    Ok(class.degree() / problem.centralizer_of_action().len())
}

/// One Γ-orbit of `{0..n}` with the restricted homomorphism on its
/// basepoint stabilizer.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub points: Vec<usize>,
    pub index: usize,
    /// The transitive Γ-set class of the orbit.
    pub class: GammaSetClass,
    pub restriction: Restriction,
    /// Restricted images up to conjugation in G.
    pub rho_key: Vec<usize>,
    pub chi_fixed: i64,
}

#[derive(Debug, Clone)]
pub struct IrreducibleDecomposition {
    pub records: Vec<OrbitRecord>,
}

impl IrreducibleDecomposition {
    /// `r(H, ρ)`: how many orbits share each (orbit class, restricted class).
    pub fn multiplicities(&self) -> Vec<(GammaSetClass, Vec<usize>, usize)> {
        let mut counts: BTreeMap<(GammaSetClass, Vec<usize>), usize> = BTreeMap::new();
        for r in &self.records {
            *counts.entry((r.class.clone(), r.rho_key.clone())).or_default() += 1;
        }
        counts.into_iter().map(|((c, k), m)| (c, k, m)).collect()
    }

    pub fn chi_product(&self) -> Result<i64> {
        self.records.iter().try_fold(1i64, |acc, r| acc.checked_mul(r.chi_fixed).ok_or(Error::Overflow("χ product")))
    }
}

/// Splits θ into its restrictions to the Γ-orbits of `{0..n}`.
pub fn eta_split(
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    wp: &WreathProduct,
    theta: &[WreathElement],
) -> Result<IrreducibleDecomposition> {
    let n = wp.degree();
    let g = wp.base();
    let perms: Vec<Perm> = theta.iter().map(|e| e.perm.clone()).collect();
    let mut records = Vec::new();
    for orbit in crate::presentation::orbit_structure(&perms, n) {
        let restriction = restrict_to_orbit(p, wp, theta, &orbit)?;
        let rho_key = (0..g.order())
            .map(|x| restriction.images.iter().map(|&y| g.conj(x, y)).collect::<Vec<_>>())
            .min()
            .unwrap_or_default();
        let local: Vec<Perm> = perms
            .iter()
            .map(|s| orbit.points.iter().map(|&q| orbit.points.binary_search(&s[q]).unwrap()).collect())
            .collect();
        records.push(OrbitRecord {
            index: orbit.len(),
            class: GammaSetClass::from_action(&local, orbit.len()),
            chi_fixed: desc.chi_generated(&restriction.images),
            points: orbit.points.clone(),
            restriction,
            rho_key,
        });
    }
    Ok(IrreducibleDecomposition { records })
}

/// `Σ_θ χ / |G|^n` over all θ into `G(S_n)`, and over the transitive ones.
/// Grouped by the class of the permutation part σ; the lifts of σ number
/// `|G|^{n-o}` per gauge-fixed lift, `o` being the orbit count.
fn lift_sums(p: &GroupPresentation, desc: &GSpaceDescriptor, n: usize, ctx: &Ctx) -> Result<(BigRational, BigRational)> {
    let g = desc.group();
    let wp = WreathProduct::new(g.clone(), n)?;
    let s = FiniteGroup::symmetric(n, &ctx.caps)?;
    let perms = s.perms().expect("symmetric group");
    let table = enumerate_homs(p, &s, ctx)?;
    let classes = hom_conjugacy_classes(&table, &s, ctx)?;
    let mut all = BigRational::zero();
    let mut transitive = BigRational::zero();
    for c in &classes {
        let sigma: Vec<Perm> = table.get(c.representative).iter().map(|&i| perms[i].clone()).collect();
        let problem = LiftProblem::new(g, &sigma, n, p.relators())?;
        let lifts = problem.gauge_fixed_lifts(ctx)?;
        let sum: i64 = lifts
            .par_iter()
            .map(|comps| fixed_chi_of_wreath_elements(desc, &wp, &problem.elements(comps)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        let term = BigRational::new(BigInt::from(sum) * c.size, BigInt::from(g.order()).pow(problem.orbits().len() as u32));
        if problem.orbits().len() == 1 {
            transitive += &term;
        }
        all += term;
    }
    Ok((all, transitive))
}

/// `ψ(n) = Σ_{θ: Γ → G(S_n)} χ((M^n)^{⟨θ⟩}) / |G|^n`, with `ψ(0) = 1`.
pub fn psi(n: usize, p: &GroupPresentation, desc: &GSpaceDescriptor, ctx: &Ctx) -> Result<BigRational> {
    if n == 0 {
        return Ok(BigRational::one());
    }
    Ok(lift_sums(p, desc, n, ctx)?.0)
}

/// `φ^η(n)`: the part of `ψ(n)` from θ acting transitively, with `φ^η(0) = 0`.
pub fn phi_eta(n: usize, p: &GroupPresentation, desc: &GSpaceDescriptor, ctx: &Ctx) -> Result<BigRational> {
    if n == 0 {
        return Ok(BigRational::zero());
    }
    Ok(lift_sums(p, desc, n, ctx)?.1)
}

/// `n!` as a rational, for exponential generating functions.
pub fn factorial_rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(factorial(n)))
}
