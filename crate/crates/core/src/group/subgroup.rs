use std::collections::{HashMap, VecDeque};

use super::FiniteGroup;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Bitset over element indices; the hashing/ordering key for subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet { words: vec![0; order.div_ceil(64)] }
    }

    pub fn from_elements(order: usize, elems: &[usize]) -> Self {
        let mut s = ElementSet::empty(order);
        for &e in elems {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Returns true when `x` was not yet present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let w = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

/// A subgroup, as the sorted list of its element indices in the parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    set: ElementSet,
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Smaller subgroups first, then lexicographic on the element lists.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl Subgroup {
    pub(crate) fn from_set(set: ElementSet) -> Self {
        let elements = set.iter().collect();
        Subgroup { elements, set }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }
}

/// Conjugacy classes; classes are ordered by representative, which is the
/// minimal element index of the class.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }
}

/// All subgroups of a group together with their conjugacy classes.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    /// Sorted by (order, elements).
    pub subgroups: Vec<Subgroup>,
    /// Each class lists subgroup indices ascending; classes are ordered by
    /// their first (canonical representative) member.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    index: HashMap<ElementSet, usize>,
}

impl SubgroupLattice {
    pub fn find(&self, set: &ElementSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn class_representative(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class][0]]
    }

    pub fn class_of_set(&self, set: &ElementSet) -> Option<usize> {
        self.find(set).map(|i| self.class_of[i])
    }
}

impl FiniteGroup {
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let y = self.conj(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        let mut s = ElementSet::empty(self.order());
        for g in 0..self.order() {
            if set.iter().all(|&x| self.commute(g, x)) {
                s.insert(g);
            }
        }
        Subgroup::from_set(s)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut s = ElementSet::empty(self.order());
        for g in 0..self.order() {
            if h.elements().iter().all(|&x| h.contains(self.conj(g, x))) {
                s.insert(g);
            }
        }
        Subgroup::from_set(s)
    }

    /// Closure of `gens` (plus the identity) under multiplication.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup::from_set(self.closure(gens))
    }

    pub(crate) fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::empty(self.order());
        set.insert(self.identity());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_generated(&[])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_set(ElementSet::from_elements(self.order(), &(0..self.order()).collect::<Vec<_>>()))
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> ElementSet {
        let mut s = ElementSet::empty(self.order());
        for &x in h.elements() {
            s.insert(self.conj(g, x));
        }
        s
    }

    /// Greedy generating set: walk the elements in index order and keep those
    /// not already generated.
    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for &x in h.elements() {
            if !current.contains(x) {
                gens.push(x);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// The subgroup as a group in its own right, with element `i` standing
    /// for `h.elements()[i]` of the parent.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let elems = h.elements();
        let pos = |x: usize| elems.binary_search(&x).expect("subgroup is closed");
        let mut mul = Vec::with_capacity(elems.len() * elems.len());
        for &a in elems {
            for &b in elems {
                mul.push(pos(self.mul(a, b)) as u16);
            }
        }
        let labels = elems.iter().map(|&x| self.label(x)).collect();
        FiniteGroup::from_trusted(elems.len(), mul).with_labels(labels)
    }

    /// Every subgroup, found as joins of cyclic subgroups iterated to a
    /// fixpoint, then grouped into conjugacy classes.
    pub fn all_subgroups(&self, caps: &Caps) -> Result<SubgroupLattice> {
        let n = self.order();
        if n > caps.subgroup_lattice {
            return Err(Error::OrderCapExceeded {
                what: "subgroup lattice".into(),
                order: n as u128,
                cap: caps.subgroup_lattice as u128,
            });
        }
        let mut index: HashMap<ElementSet, usize> = HashMap::new();
        let mut found: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        let mut cyclic_gens: Vec<usize> = Vec::new();
        for x in 0..n {
            let s = self.closure(&[x]);
            if !index.contains_key(&s) {
                index.insert(s.clone(), found.len());
                found.push((s, vec![x]));
                cyclic_gens.push(x);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for &c in &cyclic_gens {
                if found[i].0.contains(c) {
                    continue;
                }
                let mut gens = found[i].1.clone();
                gens.push(c);
                let s = self.closure(&gens);
                if !index.contains_key(&s) {
                    index.insert(s.clone(), found.len());
                    found.push((s, gens));
                }
            }
            i += 1;
        }
        let mut subgroups: Vec<Subgroup> = found.into_iter().map(|(s, _)| Subgroup::from_set(s)).collect();
        subgroups.sort();
        let index: HashMap<ElementSet, usize> =
            subgroups.iter().enumerate().map(|(i, h)| (h.set().clone(), i)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let c = self.conjugate_subgroup(g, &subgroups[i]);
                let j = index[&c];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(SubgroupLattice { subgroups, classes, class_of, index })
    }
}
