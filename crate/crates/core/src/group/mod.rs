//! Finite groups as validated multiplication tables over dense indices.

pub mod perm;
mod subgroup;
mod wreath;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{AxiomViolation, Error, Result};

pub use perm::Perm;
pub use subgroup::{ConjugacyClasses, ElementSet, Subgroup, SubgroupLattice};
pub use wreath::{wreath_product, WreathElement, WreathInfo, WreathProduct};

/// Tables are stored as `u16`, which bounds every materialized group.
pub const MAX_TABLE_ORDER: usize = 1 << 16;

/// A finite group on the element indices `0..order`.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u16>,
    identity: usize,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
    /// Faithful permutation realization, when the group was built from one.
    /// Sorted lexicographically, so element `i` is `perms[i]`.
    perms: Option<Vec<Perm>>,
    wreath: Option<Arc<WreathInfo>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .field("wreath", &self.wreath.as_ref().map(|w| (w.product.base().order(), w.product.degree())))
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

/// Builtin group constructors, also the group JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Symmetric { n: usize },
    DirectProduct { factors: Vec<GroupSpec> },
    /// Generators are 1-based image lists, e.g. `[2,1,3]` for the transposition (1 2).
    Permutation { degree: usize, generators: Vec<Vec<usize>> },
    Table { table: Vec<Vec<usize>> },
    Wreath { base: Box<GroupSpec>, n: usize },
}

pub fn builtin_group(spec: &GroupSpec, caps: &Caps) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
        GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n, caps),
        GroupSpec::DirectProduct { factors } => {
            let mut iter = factors.iter();
            let mut acc = match iter.next() {
                Some(f) => builtin_group(f, caps)?,
                None => return Ok(FiniteGroup::trivial()),
            };
            for f in iter {
                let g = builtin_group(f, caps)?;
                acc = FiniteGroup::direct_product(&acc, &g, caps)?;
            }
            Ok(acc)
        }
        GroupSpec::Permutation { degree, generators } => {
            let gens = generators
                .iter()
                .map(|g| {
                    if g.contains(&0) {
                        return Err(Error::InvalidPermutation(g.clone()));
                    }
                    Ok(g.iter().map(|&x| x - 1).collect())
                })
                .collect::<Result<Vec<Perm>>>()?;
            FiniteGroup::permutation_generated(*degree, &gens, caps)
        }
        GroupSpec::Table { table } => make_group(table, caps),
        GroupSpec::Wreath { base, n } => {
            let g = Arc::new(builtin_group(base, caps)?);
            wreath_product(&g, *n, caps)
        }
    }
}

fn check_order(what: &str, order: u128, caps: &Caps) -> Result<()> {
    let cap = (caps.order as u128).min(MAX_TABLE_ORDER as u128);
    if order > cap {
        return Err(Error::OrderCapExceeded { what: what.to_string(), order, cap });
    }
    Ok(())
}

/// Validates a multiplication table and builds the group.
///
/// Associativity is checked exactly with Light's test over a generating set,
/// which costs `O(order² · generators)` rather than `O(order³)`.
pub fn make_group(table: &[Vec<usize>], caps: &Caps) -> Result<FiniteGroup> {
    let order = table.len();
    if order == 0 {
        return Err(Error::NotAGroup(AxiomViolation::Empty));
    }
    check_order("multiplication table", order as u128, caps)?;
    let mut mul = Vec::with_capacity(order * order);
    for (r, row) in table.iter().enumerate() {
        if row.len() != order {
            return Err(Error::NotAGroup(AxiomViolation::NotSquare { row: r, len: row.len(), order }));
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= order {
                return Err(Error::NotAGroup(AxiomViolation::OutOfRange { row: r, col: c, value: v }));
            }
            mul.push(v as u16);
        }
    }
    for r in 0..order {
        let mut seen = vec![false; order];
        for c in 0..order {
            let v = mul[r * order + c] as usize;
            if seen[v] {
                return Err(Error::NotAGroup(AxiomViolation::RowNotPermutation { row: r }));
            }
            seen[v] = true;
        }
    }
    for c in 0..order {
        let mut seen = vec![false; order];
        for r in 0..order {
            let v = mul[r * order + c] as usize;
            if seen[v] {
                return Err(Error::NotAGroup(AxiomViolation::ColumnNotPermutation { col: c }));
            }
            seen[v] = true;
        }
    }
    let at = |a: usize, b: usize| mul[a * order + b] as usize;
    let identity = (0..order)
        .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or(Error::NotAGroup(AxiomViolation::NoIdentity))?;

    // Generating set of the magma, then Light's associativity test on it.
    let mut member = vec![false; order];
    let mut members: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    for x in 0..order {
        if member[x] {
            continue;
        }
        gens.push(x);
        let mut queue = VecDeque::from([x]);
        member[x] = true;
        members.push(x);
        while let Some(z) = queue.pop_front() {
            let snapshot = members.len();
            for i in 0..snapshot {
                let y = members[i];
                for p in [at(z, y), at(y, z)] {
                    if !member[p] {
                        member[p] = true;
                        members.push(p);
                        queue.push_back(p);
                    }
                }
            }
        }
    }
    for &a in &gens {
        for x in 0..order {
            let xa = at(x, a);
            for y in 0..order {
                if at(xa, y) != at(x, at(a, y)) {
                    return Err(Error::NotAGroup(AxiomViolation::NotAssociative { a: x, b: a, c: y }));
                }
            }
        }
    }
    let mut inv = vec![usize::MAX; order];
    for x in 0..order {
        let y = (0..order)
            .find(|&y| at(x, y) == identity)
            .ok_or(Error::NotAGroup(AxiomViolation::NoInverse { element: x }))?;
        if at(y, x) != identity {
            return Err(Error::NotAGroup(AxiomViolation::NoInverse { element: x }));
        }
        inv[x] = y;
    }
    Ok(FiniteGroup { order, mul, identity, inv, labels: None, perms: None, wreath: None })
}

impl FiniteGroup {
    /// Builds from a table known to satisfy the axioms. Identity and inverses
    /// are derived.
    pub(crate) fn from_trusted(order: usize, mul: Vec<u16>) -> FiniteGroup {
        debug_assert_eq!(mul.len(), order * order);
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x))
            .expect("trusted table has an identity");
        let mut inv = vec![0; order];
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] as usize == identity {
                    inv[x] = y;
                    break;
                }
            }
        }
        FiniteGroup { order, mul, identity, inv, labels: None, perms: None, wreath: None }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_trusted(1, vec![0]).with_labels(vec!["e".to_string()])
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclic group of order 0".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::OrderCapExceeded {
                what: format!("cyclic {n}"),
                order: n as u128,
                cap: MAX_TABLE_ORDER as u128,
            });
        }
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(((a + b) % n) as u16);
            }
        }
        let labels = (0..n).map(|k| k.to_string()).collect();
        Ok(FiniteGroup::from_trusted(n, mul).with_labels(labels))
    }

    pub fn symmetric(n: usize, caps: &Caps) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::InvalidInput("symmetric group of degree 0".into()));
        }
        check_order(&format!("symmetric {n}"), perm::factorial(n), caps)?;
        Ok(FiniteGroup::from_sorted_perms(n, perm::all_perms(n), |p| perm::lehmer_rank(p)))
    }

    /// Closure of the identity under right multiplication by the generators.
    pub fn permutation_generated(degree: usize, generators: &[Perm], caps: &Caps) -> Result<FiniteGroup> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.len() });
            }
            if !perm::is_permutation(g) {
                return Err(Error::InvalidPermutation(g.clone()));
            }
        }
        let cap = caps.order.min(MAX_TABLE_ORDER);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        let id = perm::identity(degree);
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = perm::compose(&x, g);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::OrderCapExceeded {
                            what: "permutation-generated group".into(),
                            order: seen.len() as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut perms: Vec<Perm> = seen.into_keys().collect();
        perms.sort();
        let index: HashMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(FiniteGroup::from_sorted_perms(degree, perms, |p| index[p]))
    }

    fn from_sorted_perms(degree: usize, perms: Vec<Perm>, rank: impl Fn(&Perm) -> usize + Sync) -> FiniteGroup {
        use rayon::prelude::*;
        let order = perms.len();
        let rows: Vec<Vec<u16>> = (0..order)
            .into_par_iter()
            .map(|a| (0..order).map(|b| rank(&perm::compose(&perms[a], &perms[b])) as u16).collect())
            .collect();
        let mul = rows.concat();
        let labels = perms.iter().map(|p| perm::cycle_string(p)).collect();
        let mut g = FiniteGroup::from_trusted(order, mul).with_labels(labels);
        debug_assert!(perms.iter().all(|p| p.len() == degree));
        g.perms = Some(perms);
        g
    }

    /// `a × b` with index `i·|b| + j` for the pair `(i, j)`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, caps: &Caps) -> Result<FiniteGroup> {
        let order = a.order * b.order;
        check_order("direct product", order as u128, caps)?;
        let mut mul = Vec::with_capacity(order * order);
        for x in 0..order {
            let (x1, x2) = (x / b.order, x % b.order);
            for y in 0..order {
                let (y1, y2) = (y / b.order, y % b.order);
                mul.push((a.mul(x1, y1) * b.order + b.mul(x2, y2)) as u16);
            }
        }
        let labels = (0..order)
            .map(|x| format!("({},{})", a.label(x / b.order), b.label(x % b.order)))
            .collect();
        let mut g = FiniteGroup::from_trusted(order, mul).with_labels(labels);
        if let (Some(pa), Some(pb)) = (&a.perms, &b.perms) {
            // Action on the disjoint union of the two point sets. Index order
            // matches lexicographic order of the concatenated images.
            let da = pa[0].len();
            g.perms = Some(
                (0..order)
                    .map(|x| {
                        let mut p = pa[x / b.order].clone();
                        p.extend(pb[x % b.order].iter().map(|&i| i + da));
                        p
                    })
                    .collect(),
            );
        }
        Ok(g)
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub(crate) fn with_wreath(mut self, info: Arc<WreathInfo>) -> Self {
        self.wreath = Some(info);
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv[a] } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn perms(&self) -> Option<&[Perm]> {
        self.perms.as_deref()
    }

    /// Element index of a permutation in a permutation-realized group.
    pub fn find_perm(&self, p: &[usize]) -> Option<usize> {
        let perms = self.perms.as_ref()?;
        perms.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    pub fn wreath(&self) -> Option<&WreathInfo> {
        self.wreath.as_deref()
    }

    /// Row-major table, for export.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }
}
