//! Homomorphisms Γ → G as generator image tuples.

use rayon::prelude::*;

use super::{evaluate_unchecked, GroupPresentation, Word};
use crate::caps::Ctx;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Image tuples stored flat, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    arity: usize,
    len: usize,
    data: Vec<usize>,
}

impl HomTable {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn position(&self, images: &[usize]) -> Option<usize> {
        if self.arity == 0 {
            return (self.len == 1 && images.is_empty()).then_some(0);
        }
        let (mut lo, mut hi) = (0, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(images) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// One orbit of simultaneous conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomClass {
    /// Position in the table of the lexicographically minimal member.
    pub representative: usize,
    pub size: usize,
    /// `|C_G(θ)| = |G| / size`.
    pub centralizer_order: usize,
}

/// Depth-first search over generator images in lexicographic order; a
/// relator is checked as soon as its largest letter is assigned.
pub fn enumerate_homs(p: &GroupPresentation, g: &FiniteGroup, ctx: &Ctx) -> Result<HomTable> {
    let k = p.generator_count();
    let nodes = (g.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if nodes > ctx.caps.search_nodes as u128 {
        return Err(Error::SearchCapExceeded { nodes, cap: ctx.caps.search_nodes as u128 });
    }
    if k == 0 {
        ctx.stats.add_homs(1);
        return Ok(HomTable { arity: 0, len: 1, data: vec![] });
    }
    let mut by_depth: Vec<Vec<&Word>> = vec![Vec::new(); k];
    for r in p.relators() {
        match r.iter().map(|l| l.unsigned_abs() as usize).max() {
            Some(m) => by_depth[m - 1].push(r),
            None => continue,
        }
    }
    let data: Vec<usize> = (0..g.order())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut images = vec![0; k];
            images[0] = first;
            if by_depth[0].iter().all(|r| evaluate_unchecked(r, &images[..1], g) == g.identity()) {
                dfs(1, &mut images, g, &by_depth, &mut out);
            }
            out
        })
        .collect();
    let len = data.len() / k;
    ctx.stats.add_homs(len as u64);
    Ok(HomTable { arity: k, len, data })
}

fn dfs(depth: usize, images: &mut Vec<usize>, g: &FiniteGroup, by_depth: &[Vec<&Word>], out: &mut Vec<usize>) {
    if depth == images.len() {
        out.extend_from_slice(images);
        return;
    }
    for x in 0..g.order() {
        images[depth] = x;
        if by_depth[depth].iter().all(|r| evaluate_unchecked(r, &images[..=depth], g) == g.identity()) {
            dfs(depth + 1, images, g, by_depth, out);
        }
    }
}

/// Orbits of the table under simultaneous conjugation. Each orbit is walked
/// explicitly; scanning in table order makes the first unvisited tuple the
/// lexicographic minimum of its orbit.
pub fn hom_conjugacy_classes(table: &HomTable, g: &FiniteGroup, ctx: &Ctx) -> Result<Vec<HomClass>> {
    let mut visited = vec![false; table.len()];
    let mut classes = Vec::new();
    let mut buf = vec![0; table.arity()];
    for i in 0..table.len() {
        if visited[i] {
            continue;
        }
        let mut size = 0;
        for x in 0..g.order() {
            for (b, &y) in buf.iter_mut().zip(table.get(i)) {
                *b = g.conj(x, y);
            }
            let j = table
                .position(&buf)
                .ok_or_else(|| Error::Inconsistent("conjugate of a homomorphism is missing from the table".into()))?;
            if !visited[j] {
                visited[j] = true;
                size += 1;
            }
        }
        if !g.order().is_multiple_of(size) {
            return Err(Error::Inconsistent(format!("class size {size} does not divide {}", g.order())));
        }
        classes.push(HomClass { representative: i, size, centralizer_order: g.order() / size });
    }
    ctx.stats.add_classes(classes.len() as u64);
    Ok(classes)
}
