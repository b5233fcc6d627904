//! Both sides of each generating-function identity as truncated series, and
//! exact comparison reports.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::caps::Ctx;
use crate::error::{Error, Result};
use crate::gspace::{chi_es, chi_quotient, GSpaceDescriptor};
use crate::presentation::{
    count_index_n_subgroups, hall_counts, hnf_count, list_index_n_subgroups, GammaSetClass, GroupPresentation,
    Preset, Realization,
};
use crate::sectors::{
    factorial_rational, gamma_extension, gamma_extension_wreath, gamma_set_extension_bruteforce,
    gamma_set_extension_direct, phi_eta, psi, transitive_class_size, Invariant,
};
use crate::series::{format_rational, series_equal, RationalSeries};

fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `Σ_{n ≤ T} q^n φ_Γ(M^n ⋊ G(S_n))`.
pub fn lhs_series(
    inv: Invariant,
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    t: usize,
    ctx: &Ctx,
) -> Result<RationalSeries> {
    let coeffs = (0..=t)
        .map(|n| Ok(gamma_extension_wreath(inv, p, desc, n, ctx)?.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalSeries::from_coeffs(coeffs))
}

/// `∏_r (1 - q^r)^{-e_r}` with `e_r` the sum of `χ_{(Γ/H)}` over the
/// transitive Γ-sets of degree `r`, each evaluated by brute force.
pub fn rhs_euler_product(p: &GroupPresentation, desc: &GSpaceDescriptor, t: usize, ctx: &Ctx) -> Result<RationalSeries> {
    let mut factors = Vec::new();
    for r in 1..=t {
        let mut exponent = BigRational::zero();
        for class in GammaSetClass::transitive_classes(p, r, ctx)? {
            exponent += gamma_set_extension_bruteforce(Invariant::Euler, p, &class, desc, ctx)?;
        }
        factors.push(RationalSeries::geom_power(r, &exponent, t));
    }
    Ok(RationalSeries::product_family(&factors, t))
}

/// The abelian form: `e_r = Σ_{|Γ/H| = r} χ_H(M ⋊ G)` over all subgroups.
pub fn rhs_euler_product_abelian(
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    t: usize,
    ctx: &Ctx,
) -> Result<RationalSeries> {
    if !p.is_abelian_preset() {
        return Err(Error::UnsupportedSource("the subgroup-sum form needs an abelian source".into()));
    }
    let factors = (1..=t)
        .map(|r| Ok(RationalSeries::geom_power(r, &subgroup_sum(Invariant::Euler, p, desc, r, ctx)?, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalSeries::product_family(&factors, t))
}

/// `Σ_{|Γ/H| = n} φ_H(M ⋊ G)` over all subgroups of index `n`.
fn subgroup_sum(inv: Invariant, p: &GroupPresentation, desc: &GSpaceDescriptor, n: usize, ctx: &Ctx) -> Result<BigRational> {
    match p.preset() {
        Some(Preset::Trivial) => Ok(if n == 1 { gamma_extension(inv, p, desc, ctx)?.value } else { BigRational::zero() }),
        Some(Preset::FreeAbelian(d)) => {
            let count = hnf_count(d, n as u64);
            if count.is_zero() {
                return Ok(BigRational::zero());
            }
            Ok(gamma_extension(inv, &GroupPresentation::free_abelian(d), desc, ctx)?.value * count)
        }
        Some(Preset::Free(k)) => {
            let count = hall_counts(k, n).pop().expect("n >= 1");
            let rank = n * k + 1 - n;
            Ok(gamma_extension(inv, &GroupPresentation::free(rank), desc, ctx)?.value * count)
        }
        Some(Preset::Finite) => {
            let mut sum = BigRational::zero();
            for h in list_index_n_subgroups(p, n, ctx)? {
                sum += gamma_extension(inv, &h.iso_type, desc, ctx)?.value;
            }
            Ok(sum)
        }
        None => Err(Error::UnsupportedSource("subgroup sums need a preset source".into())),
    }
}

/// `exp(Σ_n q^n/n Σ_{|Γ/H| = n} χ^{ES}_H(M ⋊ G))`.
pub fn rhs_es_exp(p: &GroupPresentation, desc: &GSpaceDescriptor, t: usize, ctx: &Ctx) -> Result<RationalSeries> {
    let mut log = vec![BigRational::zero(); t + 1];
    for (n, slot) in log.iter_mut().enumerate().skip(1) {
        *slot = subgroup_sum(Invariant::EulerSatake, p, desc, n, ctx)? / big(n);
    }
    RationalSeries::from_coeffs(log).exp_series()
}

/// One `[ρ]` factor of the product over `(H), [ρ]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoSector {
    /// `χ(M^{⟨ρ⟩} ⋊ Aut)`, the orbit-space Euler characteristic.
    #[serde(serialize_with = "ser_rational")]
    pub euler: BigRational,
    /// `χ_ES(M^{⟨ρ⟩} ⋊ C_G(ρ))`.
    #[serde(serialize_with = "ser_rational")]
    pub euler_satake: BigRational,
    /// `|N^ρ_Γ(H)/H|`.
    pub cover_degree: usize,
}

/// Data for a batch of subgroup conjugacy classes of one index sharing all
/// values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbstractEntry {
    pub label: String,
    /// How many conjugacy classes this entry stands for.
    #[serde(serialize_with = "ser_bigint")]
    pub classes: BigInt,
    /// Subgroups in each class.
    pub class_size: usize,
    /// `χ_{(Γ/H)}(M ⋊ G)`.
    #[serde(serialize_with = "ser_rational")]
    pub euler: BigRational,
    /// `χ^{ES}_H(M ⋊ G)`.
    #[serde(serialize_with = "ser_rational")]
    pub euler_satake: BigRational,
    /// Per-`[ρ]` data, when the classes of `HOM(H, G)` are known.
    pub rho: Option<Vec<RhoSector>>,
}

/// Per-index subgroup data, enough to evaluate every right-hand side
/// without touching the orbifold again.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbstractSectorData {
    pub truncation: usize,
    /// `by_index[r - 1]` holds the entries for index `r`.
    pub by_index: Vec<Vec<AbstractEntry>>,
}

fn ser_rational<S: serde::Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl AbstractSectorData {
    pub fn validate(&self) -> Result<()> {
        if self.by_index.len() != self.truncation {
            return Err(Error::InvalidInput("one entry list per index up to the truncation".into()));
        }
        for entries in &self.by_index {
            let mut labels: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
            labels.sort_unstable();
            if labels.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput("duplicate label within an index".into()));
            }
            if entries.iter().any(|e| e.classes < BigInt::zero()) {
                return Err(Error::InvalidInput("negative class count".into()));
            }
        }
        Ok(())
    }

    fn indexed(&self) -> impl Iterator<Item = (usize, &AbstractEntry)> {
        self.by_index.iter().enumerate().flat_map(|(i, es)| es.iter().map(move |e| (i + 1, e)))
    }

    pub fn euler_product(&self) -> Result<RationalSeries> {
        self.validate()?;
        let t = self.truncation;
        let factors: Vec<RationalSeries> = self
            .indexed()
            .map(|(r, e)| RationalSeries::geom_power(r, &(&e.euler * &e.classes), t))
            .collect();
        Ok(RationalSeries::product_family(&factors, t))
    }

    pub fn es_exp(&self) -> Result<RationalSeries> {
        self.validate()?;
        let mut log = vec![BigRational::zero(); self.truncation + 1];
        for (r, e) in self.indexed() {
            log[r] += &e.euler_satake * (&e.classes * e.class_size) / big(r);
        }
        RationalSeries::from_coeffs(log).exp_series()
    }

    pub fn master_product(&self, inv: Invariant) -> Result<RationalSeries> {
        self.validate()?;
        let t = self.truncation;
        let mut factors = Vec::new();
        for (r, e) in self.indexed() {
            let rho = e
                .rho
                .as_ref()
                .ok_or_else(|| Error::UnsupportedSource(format!("no [ρ] data for {}", e.label)))?;
            for s in rho {
                factors.push(match inv {
                    Invariant::Euler => RationalSeries::geom_power(r, &(&s.euler * &e.classes), t),
                    Invariant::EulerSatake => {
                        let c = &s.euler_satake * &e.classes / big(s.cover_degree);
                        RationalSeries::monomial(t, r, c).exp_series()?
                    }
                });
            }
        }
        Ok(RationalSeries::product_family(&factors, t))
    }
}

/// Builds the abstract data from the concrete pipeline: one aggregated entry
/// per index for `Z^d` (every sublattice is again `Z^d`), literal subgroup
/// classes for finite Γ, transitive Γ-set classes for free groups.
pub fn abstract_data_from_concrete(
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    t: usize,
    ctx: &Ctx,
) -> Result<AbstractSectorData> {
    let mut by_index = Vec::with_capacity(t);
    match p.preset() {
        Some(Preset::Trivial) | Some(Preset::FreeAbelian(_)) => {
            let d = match p.preset() {
                Some(Preset::FreeAbelian(d)) => d,
                _ => 0,
            };
            let lattice = GroupPresentation::free_abelian(d);
            let euler = gamma_extension(Invariant::Euler, &lattice, desc, ctx)?;
            let es = gamma_extension(Invariant::EulerSatake, &lattice, desc, ctx)?;
            for r in 1..=t {
                let classes = hnf_count(d, r as u64);
                let rho = euler
                    .terms
                    .iter()
                    .zip(&es.terms)
                    .map(|(a, b)| RhoSector { euler: a.value.clone(), euler_satake: b.value.clone(), cover_degree: r })
                    .collect();
                by_index.push(if classes.is_zero() {
                    vec![]
                } else {
                    vec![AbstractEntry {
                        label: format!("index-{r} sublattices"),
                        classes,
                        class_size: 1,
                        euler: euler.value.clone(),
                        euler_satake: es.value.clone(),
                        rho: Some(rho),
                    }]
                });
            }
        }
        Some(Preset::Finite) => {
            let src = p.finite_source().expect("finite source");
            let gamma = &src.group;
            let lattice = gamma.all_subgroups(&ctx.caps)?;
            by_index = vec![Vec::new(); t];
            for (c, members) in lattice.classes.iter().enumerate() {
                let h = lattice.class_representative(c);
                let r = gamma.order() / h.order();
                if r > t {
                    continue;
                }
                let euler = gamma_set_extension_direct(Invariant::Euler, p, h, desc, ctx)?;
                let es = gamma_set_extension_direct(Invariant::EulerSatake, p, h, desc, ctx)?;
                let iso = GroupPresentation::finite(std::sync::Arc::new(gamma.subgroup_as_group(h)));
                let rho = euler
                    .terms
                    .iter()
                    .zip(&es.terms)
                    .map(|(a, b)| RhoSector {
                        euler: a.value.clone(),
                        euler_satake: &b.value * big(b.cover_degree),
                        cover_degree: b.cover_degree,
                    })
                    .collect();
                let gens: Vec<String> = gamma.subgroup_generators(h).iter().map(|&g| gamma.label(g)).collect();
                by_index[r - 1].push(AbstractEntry {
                    label: format!("<{}>", gens.join(", ")),
                    classes: BigInt::one(),
                    class_size: members.len(),
                    euler: euler.value,
                    euler_satake: gamma_extension(Invariant::EulerSatake, &iso, desc, ctx)?.value,
                    rho: Some(rho),
                });
            }
        }
        Some(Preset::Free(k)) => {
            for r in 1..=t {
                let es = gamma_extension(Invariant::EulerSatake, &GroupPresentation::free(r * k + 1 - r), desc, ctx)?;
                let mut entries = Vec::new();
                for (i, class) in GammaSetClass::transitive_classes(p, r, ctx)?.into_iter().enumerate() {
                    entries.push(AbstractEntry {
                        label: format!("index-{r} class {i}"),
                        classes: BigInt::one(),
                        class_size: transitive_class_size(p, &class)?,
                        euler: gamma_set_extension_bruteforce(Invariant::Euler, p, &class, desc, ctx)?,
                        euler_satake: es.value.clone(),
                        rho: None,
                    });
                }
                by_index.push(entries);
            }
        }
        None => return Err(Error::UnsupportedSource("abstract data needs a preset source".into())),
    }
    Ok(AbstractSectorData { truncation: t, by_index })
}

/// `∏_{(H), [ρ]} Σ_n q^{|Γ/H| n} φ((M^{⟨ρ⟩})^n ⋊ Aut(S_n))`, evaluated with
/// MacDonald's formula per factor (euler) or the covering exp (euler_satake).
pub fn rhs_master_product(
    inv: Invariant,
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    t: usize,
    ctx: &Ctx,
) -> Result<RationalSeries> {
    match p.preset() {
        Some(Preset::Trivial) | Some(Preset::FreeAbelian(_)) | Some(Preset::Finite) => {
            abstract_data_from_concrete(p, desc, t, ctx)?.master_product(inv)
        }
        _ => Err(Error::UnsupportedSource("the product over [ρ] needs an abelian preset or a finite source".into())),
    }
}

/// `Φ = Σ_{n ≥ 1} φ^η(n) q^n/n!`.
pub fn dm_phi(p: &GroupPresentation, desc: &GSpaceDescriptor, t: usize, ctx: &Ctx) -> Result<RationalSeries> {
    let coeffs = (0..=t)
        .map(|n| Ok(phi_eta(n, p, desc, ctx)? / factorial_rational(n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalSeries::from_coeffs(coeffs))
}

/// `Ψ = Σ_{n ≥ 0} ψ(n) q^n/n!`.
pub fn dm_psi(p: &GroupPresentation, desc: &GSpaceDescriptor, t: usize, ctx: &Ctx) -> Result<RationalSeries> {
    let coeffs = (0..=t)
        .map(|n| Ok(psi(n, p, desc, ctx)? / factorial_rational(n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalSeries::from_coeffs(coeffs))
}

/// `Σ_r q^{r·deg} φ_{r(Γ/H)}` for one transitive class.
fn gammaset_factor(
    inv: Invariant,
    p: &GroupPresentation,
    class: &GammaSetClass,
    desc: &GSpaceDescriptor,
    t: usize,
    ctx: &Ctx,
) -> Result<RationalSeries> {
    let mut coeffs = vec![BigRational::zero(); t + 1];
    coeffs[0] = BigRational::one();
    let mut r = 1;
    while r * class.degree() <= t {
        coeffs[r * class.degree()] = gamma_set_extension_bruteforce(inv, p, &class.multiple(r), desc, ctx)?;
        r += 1;
    }
    Ok(RationalSeries::from_coeffs(coeffs))
}

/// `∏_{(H)} Σ_r q^{r|Γ/H|} φ_{r(Γ/H)}`.
pub fn rhs_gammaset(
    inv: Invariant,
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    t: usize,
    ctx: &Ctx,
) -> Result<RationalSeries> {
    let mut factors = Vec::new();
    for d in 1..=t {
        for class in GammaSetClass::transitive_classes(p, d, ctx)? {
            factors.push(gammaset_factor(inv, p, &class, desc, t, ctx)?);
        }
    }
    Ok(RationalSeries::product_family(&factors, t))
}

/// `(1 - q)^{-χ(M/G)}` or `exp(q χ_ES(M ⋊ G))`.
pub fn macdonald_rhs(inv: Invariant, desc: &GSpaceDescriptor, t: usize) -> Result<RationalSeries> {
    match inv {
        Invariant::Euler => {
            let chi = chi_quotient(desc, &desc.group().whole(), None)?;
            Ok(RationalSeries::geom_power(1, &big(chi), t))
        }
        Invariant::EulerSatake => {
            let c = chi_es(desc.chi_total(), desc.group().order());
            RationalSeries::monomial(t, 1, c).exp_series()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    #[serde(rename = "thm-euler")]
    Euler,
    #[serde(rename = "thm-es")]
    EulerSatake,
    #[serde(rename = "thm-product")]
    Product,
    #[serde(rename = "thm-dm")]
    DressMuller,
    #[serde(rename = "thm-gammaset")]
    GammaSet,
    #[serde(rename = "macdonald")]
    Macdonald,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::Euler,
        Theorem::EulerSatake,
        Theorem::Product,
        Theorem::DressMuller,
        Theorem::GammaSet,
        Theorem::Macdonald,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Euler => "thm-euler",
            Theorem::EulerSatake => "thm-es",
            Theorem::Product => "thm-product",
            Theorem::DressMuller => "thm-dm",
            Theorem::GammaSet => "thm-gammaset",
            Theorem::Macdonald => "macdonald",
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown theorem tag {s:?}")))
    }
}

/// A secondary equality checked alongside the main one.
#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportStats {
    pub homs_enumerated: u64,
    pub classes: u64,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportMismatch {
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub invariant: Option<Invariant>,
    #[serde(rename = "T")]
    pub truncation: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    /// `"pass"` iff every coefficient up to `T` matches.
    pub verdict: &'static str,
    pub mismatch: Option<ReportMismatch>,
    pub cross_checks: Vec<CrossCheck>,
    pub stats: ReportStats,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn all_passed(&self) -> bool {
        self.passed() && self.cross_checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let inv = self.invariant.map(|i| format!(" [{}]", i.name())).unwrap_or_default();
        writeln!(f, "{}{} at T = {}: {}", self.theorem.tag(), inv, self.truncation, self.verdict)?;
        writeln!(f, "  lhs: {}", self.lhs.join(", "))?;
        writeln!(f, "  rhs: {}", self.rhs.join(", "))?;
        if let Some(m) = &self.mismatch {
            writeln!(f, "  first mismatch at q^{}: {} != {}", m.index, m.lhs, m.rhs)?;
        }
        for c in &self.cross_checks {
            let detail = c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
            writeln!(f, "  check {}: {}{}", c.name, if c.pass { "pass" } else { "FAIL" }, detail)?;
        }
        write!(
            f,
            "  stats: {} homomorphisms, {} classes, {} ms",
            self.stats.homs_enumerated, self.stats.classes, self.stats.wall_ms
        )
    }
}

fn cross_check(name: &str, a: &RationalSeries, b: &RationalSeries) -> CrossCheck {
    match series_equal(a, b) {
        Ok(()) => CrossCheck { name: name.into(), pass: true, detail: None },
        Err(m) => CrossCheck { name: name.into(), pass: false, detail: Some(m.to_string()) },
    }
}

/// Builds both sides of the tagged identity and compares them exactly.
pub fn verify(
    theorem: Theorem,
    inv: Invariant,
    p: &GroupPresentation,
    desc: &GSpaceDescriptor,
    t: usize,
    ctx: &Ctx,
) -> Result<VerificationReport> {
    if t == 0 {
        return Err(Error::InvalidInput("truncation must be positive".into()));
    }
    if t > ctx.caps.truncation {
        return Err(Error::InvalidInput(format!("truncation {t} exceeds the maximum {}", ctx.caps.truncation)));
    }
    let start = Instant::now();
    let homs_before = ctx.stats.homs();
    let classes_before = ctx.stats.classes();
    let mut checks = Vec::new();
    let (invariant, lhs, rhs) = match theorem {
        Theorem::Euler => {
            let lhs = lhs_series(Invariant::Euler, p, desc, t, ctx)?;
            let rhs = rhs_euler_product(p, desc, t, ctx)?;
            if p.is_abelian_preset() {
                checks.push(cross_check("abelian subgroup-sum form", &rhs, &rhs_euler_product_abelian(p, desc, t, ctx)?));
            }
            (Some(Invariant::Euler), lhs, rhs)
        }
        Theorem::EulerSatake => {
            let lhs = lhs_series(Invariant::EulerSatake, p, desc, t, ctx)?;
            (Some(Invariant::EulerSatake), lhs, rhs_es_exp(p, desc, t, ctx)?)
        }
        Theorem::Product => {
            let lhs = lhs_series(inv, p, desc, t, ctx)?;
            let rhs = rhs_master_product(inv, p, desc, t, ctx)?;
            let aggregate = match inv {
                Invariant::Euler => rhs_euler_product(p, desc, t, ctx)?,
                Invariant::EulerSatake => rhs_es_exp(p, desc, t, ctx)?,
            };
            checks.push(cross_check("aggregate form", &rhs, &aggregate));
            (Some(inv), lhs, rhs)
        }
        Theorem::DressMuller => {
            let psi = dm_psi(p, desc, t, ctx)?;
            let rhs = dm_phi(p, desc, t, ctx)?.exp_series()?;
            checks.push(cross_check("Ψ against the Euler–Satake sector series", &psi, &lhs_series(Invariant::EulerSatake, p, desc, t, ctx)?));
            (None, psi, rhs)
        }
        Theorem::GammaSet => {
            let lhs = lhs_series(inv, p, desc, t, ctx)?;
            (Some(inv), lhs, rhs_gammaset(inv, p, desc, t, ctx)?)
        }
        Theorem::Macdonald => {
            if p.generator_count() != 0 {
                return Err(Error::InvalidInput("macdonald needs the trivial source".into()));
            }
            let lhs = lhs_series(inv, p, desc, t, ctx)?;
            (Some(inv), lhs, macdonald_rhs(inv, desc, t)?)
        }
    };
    let mismatch = series_equal(&lhs, &rhs).err().map(|m| ReportMismatch {
        index: m.index,
        lhs: format_rational(&m.lhs),
        rhs: format_rational(&m.rhs),
    });
    Ok(VerificationReport {
        theorem,
        invariant,
        truncation: t,
        lhs: lhs.to_strings(),
        rhs: rhs.to_strings(),
        verdict: if mismatch.is_none() { "pass" } else { "fail" },
        mismatch,
        cross_checks: checks,
        stats: ReportStats {
            homs_enumerated: ctx.stats.homs() - homs_before,
            classes: ctx.stats.classes() - classes_before,
            wall_ms: start.elapsed().as_millis(),
        },
    })
}

/// `Ψ = exp Φ`, with Ψ also compared against the Euler–Satake sector series.
pub fn verify_dm(p: &GroupPresentation, desc: &GSpaceDescriptor, t: usize, ctx: &Ctx) -> Result<VerificationReport> {
    verify(Theorem::DressMuller, Invariant::EulerSatake, p, desc, t, ctx)
}

/// Index-`n` subgroup counts for `n = 1..=t`.
pub fn subgroup_counts(p: &GroupPresentation, t: usize, ctx: &Ctx) -> Result<Vec<BigInt>> {
    (1..=t).map(|n| count_index_n_subgroups(p, n, ctx)).collect()
}

/// For a free-abelian source, the sublattices of index `n` as HNF matrices.
pub fn sublattices(p: &GroupPresentation, n: usize, ctx: &Ctx) -> Result<Vec<Vec<Vec<i64>>>> {
    Ok(list_index_n_subgroups(p, n, ctx)?
        .into_iter()
        .filter_map(|h| match h.realization {
            Realization::Hnf(m) => Some(m),
            _ => None,
        })
        .collect())
}
