//! Wreath products `G(S_n) = G^n ⋊ S_n`.
//!
//! Multiplication is `((g),s)·((h),t) = ((g_i h_{s⁻¹(i)}), s∘t)`, and the
//! element index is `lehmer(s)·|G|^n + Σ g_i |G|^(n-1-i)`, so projecting to
//! `S_n` is integer division by `|G|^n`.

use std::sync::Arc;

use super::perm::{self, Perm};
use super::{check_order, FiniteGroup};
use crate::caps::Caps;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathElement {
    pub components: Vec<usize>,
    pub perm: Perm,
}

/// Table-free arithmetic in `G(S_n)`; usable far beyond the table caps.
#[derive(Debug, Clone)]
pub struct WreathProduct {
    base: Arc<FiniteGroup>,
    n: usize,
    base_power: usize,
    order: usize,
}

impl WreathProduct {
    pub fn new(base: Arc<FiniteGroup>, n: usize) -> Result<Self> {
        let mut base_power: usize = 1;
        for _ in 0..n {
            base_power = base_power.checked_mul(base.order()).ok_or(Error::Overflow("wreath order"))?;
        }
        let fact = usize::try_from(perm::factorial(n)).map_err(|_| Error::Overflow("wreath order"))?;
        let order = base_power.checked_mul(fact).ok_or(Error::Overflow("wreath order"))?;
        Ok(WreathProduct { base, n, base_power, order })
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `|G|^n`, the order of the base subgroup.
    pub fn base_power(&self) -> usize {
        self.base_power
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { components: vec![self.base.identity(); self.n], perm: perm::identity(self.n) }
    }

    pub fn mul(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        let s_inv = perm::inverse(&a.perm);
        let components =
            (0..self.n).map(|i| self.base.mul(a.components[i], b.components[s_inv[i]])).collect();
        WreathElement { components, perm: perm::compose(&a.perm, &b.perm) }
    }

    pub fn inverse(&self, a: &WreathElement) -> WreathElement {
        let components = (0..self.n).map(|j| self.base.inv(a.components[a.perm[j]])).collect();
        WreathElement { components, perm: perm::inverse(&a.perm) }
    }

    /// `w x w⁻¹`.
    pub fn conjugate(&self, w: &WreathElement, x: &WreathElement) -> WreathElement {
        self.mul(&self.mul(w, x), &self.inverse(w))
    }

    pub fn encode(&self, a: &WreathElement) -> usize {
        let g = self.base.order();
        let comps = a.components.iter().fold(0usize, |acc, &c| acc * g + c);
        perm::lehmer_rank(&a.perm) * self.base_power + comps
    }

    pub fn decode(&self, index: usize) -> WreathElement {
        let g = self.base.order();
        let mut rest = index % self.base_power;
        let mut components = vec![0; self.n];
        for i in (0..self.n).rev() {
            components[i] = rest % g;
            rest /= g;
        }
        WreathElement { components, perm: perm::lehmer_unrank(self.n, index / self.base_power) }
    }

    /// Lehmer rank of the permutation part, i.e. the image index in `S_n`.
    pub fn project(&self, index: usize) -> usize {
        index / self.base_power
    }

    /// Component at `pos` of the product `θ(word)`, where letter `±(s+1)`
    /// stands for `gens[s]` or its inverse.
    ///
    /// Uses `((g),s)·x` having component `g_i x_{s⁻¹(i)}` at `i`, so only one
    /// coordinate is tracked through the word.
    pub fn word_component(&self, word: &[i32], gens: &[WreathElement], pos: usize) -> usize {
        let g = &self.base;
        let mut acc = g.identity();
        let mut pos = pos;
        for &letter in word {
            let x = &gens[letter.unsigned_abs() as usize - 1];
            if letter > 0 {
                acc = g.mul(acc, x.components[pos]);
                pos = x.perm.iter().position(|&y| y == pos).expect("permutation");
            } else {
                pos = x.perm[pos];
                acc = g.mul(acc, g.inv(x.components[pos]));
            }
        }
        acc
    }

    /// `θ(word)` by full multiplication.
    pub fn evaluate_word(&self, word: &[i32], gens: &[WreathElement]) -> WreathElement {
        word.iter().fold(self.identity(), |acc, &letter| {
            let x = &gens[letter.unsigned_abs() as usize - 1];
            if letter > 0 {
                self.mul(&acc, x)
            } else {
                self.mul(&acc, &self.inverse(x))
            }
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = WreathElement> + '_ {
        (0..self.order).map(move |i| self.decode(i))
    }
}

/// Attached to a wreath [`FiniteGroup`]: the codec plus the symmetric group
/// that the projection lands in.
#[derive(Debug, Clone)]
pub struct WreathInfo {
    pub product: WreathProduct,
    pub symmetric: Arc<FiniteGroup>,
}

impl WreathInfo {
    pub fn decode(&self, index: usize) -> WreathElement {
        self.product.decode(index)
    }

    pub fn encode(&self, a: &WreathElement) -> usize {
        self.product.encode(a)
    }

    pub fn project(&self, index: usize) -> usize {
        self.product.project(index)
    }
}

/// Builds the multiplication table of `G(S_n)`.
pub fn wreath_product(base: &Arc<FiniteGroup>, n: usize, caps: &Caps) -> Result<FiniteGroup> {
    use rayon::prelude::*;
    if n == 0 {
        return Err(Error::InvalidInput("wreath product of degree 0".into()));
    }
    let wp = WreathProduct::new(base.clone(), n)?;
    check_order("wreath product", wp.order() as u128, caps)?;
    let symmetric = Arc::new(FiniteGroup::symmetric(n, caps)?);
    let order = wp.order();
    let elems: Vec<WreathElement> = wp.elements().collect();
    let rows: Vec<Vec<u16>> = (0..order)
        .into_par_iter()
        .map(|a| elems.iter().map(|b| wp.encode(&wp.mul(&elems[a], b)) as u16).collect())
        .collect();
    let labels = elems
        .iter()
        .map(|e| {
            let comps: Vec<String> = e.components.iter().map(|&c| base.label(c)).collect();
            format!("(({}),{})", comps.join(","), perm::cycle_string(&e.perm))
        })
        .collect();
    let info = Arc::new(WreathInfo { product: wp, symmetric });
    Ok(FiniteGroup::from_trusted(order, rows.concat()).with_labels(labels).with_wreath(info))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn z2_wr_s2_is_dihedral_of_order_8() {
        let caps = Caps::default();
        let w = wreath_product(&z2(), 2, &caps).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.conjugacy_classes().len(), 5);
        assert!(!w.is_abelian());
        make_group(&w.table(), &caps).unwrap();
    }

    #[test]
    fn swap_times_swap() {
        // ((g1,g2),(12)) · ((h1,h2),(12)) = ((g1 h2, g2 h1), id)
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let wp = WreathProduct::new(g.clone(), 2).unwrap();
        let swap = vec![1, 0];
        for (g1, g2, h1, h2) in [(1, 2, 0, 1), (2, 2, 1, 0), (1, 0, 2, 2)] {
            let a = WreathElement { components: vec![g1, g2], perm: swap.clone() };
            let b = WreathElement { components: vec![h1, h2], perm: swap.clone() };
            let c = wp.mul(&a, &b);
            assert_eq!(c.components, vec![g.mul(g1, h2), g.mul(g2, h1)]);
            assert_eq!(c.perm, vec![0, 1]);
        }
    }

    #[test]
    fn codec_roundtrip_and_inverse() {
        let s3 = Arc::new(FiniteGroup::symmetric(3, &Caps::default()).unwrap());
        let wp = WreathProduct::new(s3, 2).unwrap();
        assert_eq!(wp.order(), 72);
        let id = wp.identity();
        assert_eq!(wp.encode(&id), 0);
        for i in 0..wp.order() {
            let e = wp.decode(i);
            assert_eq!(wp.encode(&e), i);
            assert_eq!(wp.mul(&e, &wp.inverse(&e)), id);
            assert_eq!(wp.mul(&wp.inverse(&e), &e), id);
        }
    }

    #[test]
    fn projection_is_a_surjective_homomorphism() {
        let caps = Caps::default();
        let w = wreath_product(&z2(), 3, &caps).unwrap();
        let info = w.wreath().unwrap();
        let s = &info.symmetric;
        let mut kernel = 0;
        let mut hit = vec![false; s.order()];
        for a in 0..w.order() {
            hit[info.project(a)] = true;
            if info.project(a) == s.identity() {
                kernel += 1;
            }
            for b in 0..w.order() {
                assert_eq!(info.project(w.mul(a, b)), s.mul(info.project(a), info.project(b)));
            }
        }
        assert!(hit.iter().all(|&h| h));
        assert_eq!(kernel, 8);
    }

    #[test]
    fn word_component_matches_full_product() {
        let s3 = Arc::new(FiniteGroup::symmetric(3, &Caps::default()).unwrap());
        let wp = WreathProduct::new(s3, 3).unwrap();
        let gens = [wp.decode(12345), wp.decode(4321), wp.decode(777)];
        let words: [&[i32]; 4] = [&[1, 2, -3, 1], &[-1, -1, 2], &[3, -2, 3, 1, -1], &[]];
        for w in words {
            let full = wp.evaluate_word(w, &gens);
            for pos in 0..3 {
                assert_eq!(wp.word_component(w, &gens, pos), full.components[pos]);
            }
        }
    }

    #[test]
    fn inverse_in_degree_four() {
        let s3 = Arc::new(FiniteGroup::symmetric(3, &Caps::default()).unwrap());
        let wp = WreathProduct::new(s3, 4).unwrap();
        for index in (0..wp.order()).step_by(997) {
            let a = wp.decode(index);
            assert_eq!(wp.mul(&a, &wp.inverse(&a)), wp.identity());
            assert_eq!(wp.mul(&wp.inverse(&a), &a), wp.identity());
        }
    }

    #[test]
    fn trivial_base_gives_symmetric_group() {
        let caps = Caps::default();
        let w = wreath_product(&Arc::new(FiniteGroup::trivial()), 4, &caps).unwrap();
        assert_eq!(w, FiniteGroup::symmetric(4, &caps).unwrap());
    }

    #[test]
    fn order_cap() {
        let caps = Caps { order: 40, ..Caps::default() };
        assert!(wreath_product(&z2(), 3, &caps).unwrap_err().is_cap());
    }
}
