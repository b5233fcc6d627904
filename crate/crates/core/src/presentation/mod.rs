//! Finitely generated source groups Γ given by generators and relators.
//!
//! Words are signed 1-based letters: `+i` is generator `i`, `-i` its inverse.

mod action;
mod hnf;
mod homs;
mod subgroups;

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{builtin_group, FiniteGroup, GroupSpec};

pub use action::{
    orbit_structure, restrict_to_orbit, underlying_permutation_hom, wreath_images, GammaSetClass, Orbit,
    Restriction,
};
pub use hnf::{enumerate_hnf, hermite_normal_form, hnf_count};
pub use homs::{enumerate_homs, hom_conjugacy_classes, HomClass, HomTable};
pub use subgroups::{
    count_index_n_subgroups, hall_counts, list_index_n_subgroups, transitive_hom_count, FiniteIndexSubgroup,
    Realization,
};

pub type Word = Vec<i32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Trivial,
    FreeAbelian(usize),
    Free(usize),
    Finite,
}

/// A finite Γ together with the data linking it to its presentation.
#[derive(Debug, Clone)]
pub struct FiniteSource {
    pub group: Arc<FiniteGroup>,
    /// Element of `group` for each presentation generator.
    pub generators: Vec<usize>,
    /// A word for every element, read off a breadth-first spanning tree.
    pub words: Vec<Word>,
}

#[derive(Debug, Clone)]
pub struct GroupPresentation {
    generator_count: usize,
    relators: Vec<Word>,
    preset: Option<Preset>,
    finite: Option<Arc<FiniteSource>>,
}

/// Presentation JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresentationSpec {
    Trivial,
    FreeAbelian { rank: usize },
    Free { rank: usize },
    Presented { rank: usize, #[serde(default)] relators: Vec<Word> },
    Finite { group: GroupSpec },
}

impl PresentationSpec {
    pub fn build(&self, caps: &Caps) -> Result<GroupPresentation> {
        match self {
            PresentationSpec::Trivial => Ok(GroupPresentation::trivial()),
            PresentationSpec::FreeAbelian { rank } => Ok(GroupPresentation::free_abelian(*rank)),
            PresentationSpec::Free { rank } => Ok(GroupPresentation::free(*rank)),
            PresentationSpec::Presented { rank, relators } => GroupPresentation::presented(*rank, relators.clone()),
            PresentationSpec::Finite { group } => {
                Ok(GroupPresentation::finite(Arc::new(builtin_group(group, caps)?)))
            }
        }
    }
}

impl GroupPresentation {
    pub fn trivial() -> Self {
        GroupPresentation { generator_count: 0, relators: vec![], preset: Some(Preset::Trivial), finite: None }
    }

    /// `Z^d` with the `d(d-1)/2` commutators `[x_i, x_j]`, `i < j`.
    pub fn free_abelian(d: usize) -> Self {
        let mut relators = Vec::new();
        for i in 1..=d as i32 {
            for j in i + 1..=d as i32 {
                relators.push(vec![i, j, -i, -j]);
            }
        }
        GroupPresentation { generator_count: d, relators, preset: Some(Preset::FreeAbelian(d)), finite: None }
    }

    pub fn free(k: usize) -> Self {
        GroupPresentation { generator_count: k, relators: vec![], preset: Some(Preset::Free(k)), finite: None }
    }

    /// A general presentation; no subgroup structure is derived for it.
    pub fn presented(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            check_letters(r, generator_count)?;
        }
        Ok(GroupPresentation { generator_count, relators, preset: None, finite: None })
    }

    /// Presentation of a finite group from its Cayley graph: generators are a
    /// greedy generating set and relators are `w_g s w_{gs}⁻¹` over a
    /// breadth-first spanning tree.
    pub fn finite(group: Arc<FiniteGroup>) -> Self {
        let generators = group.subgroup_generators(&group.whole());
        let mut words: Vec<Option<Word>> = vec![None; group.order()];
        words[group.identity()] = Some(vec![]);
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            for (s, &x) in generators.iter().enumerate() {
                let h = group.mul(g, x);
                if words[h].is_none() {
                    let mut w = words[g].clone().unwrap();
                    w.push(s as i32 + 1);
                    words[h] = Some(w);
                    queue.push_back(h);
                }
            }
        }
        let words: Vec<Word> = words.into_iter().map(|w| w.expect("generators generate")).collect();
        let mut relators = BTreeSet::new();
        for g in 0..group.order() {
            for (s, &x) in generators.iter().enumerate() {
                let mut w = words[g].clone();
                w.push(s as i32 + 1);
                w.extend(inverse_word(&words[group.mul(g, x)]));
                let w = free_reduce(&w);
                if !w.is_empty() {
                    relators.insert(w);
                }
            }
        }
        GroupPresentation {
            generator_count: generators.len(),
            relators: relators.into_iter().collect(),
            preset: Some(Preset::Finite),
            finite: Some(Arc::new(FiniteSource { group, generators, words })),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn preset(&self) -> Option<Preset> {
        self.preset
    }

    pub fn finite_source(&self) -> Option<&FiniteSource> {
        self.finite.as_deref()
    }

    pub fn is_abelian_preset(&self) -> bool {
        match self.preset {
            Some(Preset::Trivial | Preset::FreeAbelian(_)) => true,
            Some(Preset::Free(k)) => k <= 1,
            Some(Preset::Finite) => self.finite.as_ref().is_some_and(|f| f.group.is_abelian()),
            None => false,
        }
    }

    pub fn describe(&self) -> String {
        match self.preset {
            Some(Preset::Trivial) => "trivial".into(),
            Some(Preset::FreeAbelian(d)) => format!("Z^{d}"),
            Some(Preset::Free(k)) => format!("F_{k}"),
            Some(Preset::Finite) => format!("finite of order {}", self.finite.as_ref().unwrap().group.order()),
            None => format!("<{} generators | {} relators>", self.generator_count, self.relators.len()),
        }
    }
}

fn check_letters(word: &[i32], generators: usize) -> Result<()> {
    for &l in word {
        if l == 0 || l.unsigned_abs() as usize > generators {
            return Err(Error::BadLetter { letter: l, generators });
        }
    }
    Ok(())
}

/// Left-to-right product of generator images and their inverses.
pub fn evaluate_word(word: &[i32], images: &[usize], g: &FiniteGroup) -> Result<usize> {
    check_letters(word, images.len())?;
    Ok(evaluate_unchecked(word, images, g))
}

#[inline]
pub(crate) fn evaluate_unchecked(word: &[i32], images: &[usize], g: &FiniteGroup) -> usize {
    let mut acc = g.identity();
    for &l in word {
        let x = images[l.unsigned_abs() as usize - 1];
        acc = g.mul(acc, if l > 0 { x } else { g.inv(x) });
    }
    acc
}

pub fn inverse_word(word: &[i32]) -> Word {
    word.iter().rev().map(|&l| -l).collect()
}

pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}
