//! Homomorphisms into `G(S_n)` with a prescribed permutation part σ.
//!
//! A lift of σ assigns a component `c_{s,i} ∈ G` to every generator `s` and
//! position `i`. Conjugating by `(g, 1) ∈ G^n` sends `c_{s,i}` to
//! `g_i c_{s,i} g_{σ_s⁻¹(i)}⁻¹`, so the components on a spanning tree of each
//! orbit can be set to the identity. Every lift has exactly `|G|^o` gauge
//! transformations (one free choice per orbit) landing it in the gauge-fixed
//! set, which turns sums over all lifts into sums over gauge-fixed ones.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::caps::Ctx;
use crate::error::{Error, Result};
use crate::group::perm::{self, Perm};
use crate::group::{FiniteGroup, WreathElement};
use crate::presentation::{orbit_structure, Orbit, Word};

pub(crate) struct LiftProblem<'a> {
    g: &'a FiniteGroup,
    n: usize,
    sigma: Vec<Perm>,
    sigma_inv: Vec<Perm>,
    orbits: Vec<Orbit>,
    /// Spanning-tree edge into each non-basepoint: `(point, generator, parent)`.
    tree: Vec<(usize, usize, usize)>,
    free: Vec<(usize, usize)>,
    /// `checks[d]` lists `(relator, start)` pairs decided once `free[d]` is set.
    checks: Vec<Vec<(usize, usize)>>,
    relators: &'a [Word],
}

impl<'a> LiftProblem<'a> {
    pub(crate) fn new(g: &'a FiniteGroup, sigma: &[Perm], n: usize, relators: &'a [Word]) -> Result<Self> {
        let sigma_inv: Vec<Perm> = sigma.iter().map(|s| perm::inverse(s)).collect();
        let orbits = orbit_structure(sigma, n);
        let mut is_tree = vec![false; sigma.len() * n];
        let mut tree = Vec::new();
        for orbit in &orbits {
            for (q, word) in &orbit.transversal {
                if let Some(&first) = word.first() {
                    let s = first as usize - 1;
                    is_tree[s * n + q] = true;
                    tree.push((*q, s, sigma_inv[s][*q]));
                }
            }
        }
        let free: Vec<(usize, usize)> =
            (0..sigma.len()).flat_map(|s| (0..n).map(move |i| (s, i))).filter(|&(s, i)| !is_tree[s * n + i]).collect();
        let mut depth_of = vec![None; sigma.len() * n];
        for (d, &(s, i)) in free.iter().enumerate() {
            depth_of[s * n + i] = Some(d);
        }
        let mut problem = LiftProblem {
            g,
            n,
            sigma: sigma.to_vec(),
            sigma_inv,
            orbits,
            tree,
            free,
            checks: Vec::new(),
            relators,
        };
        let mut checks = vec![Vec::new(); problem.free.len().max(1)];
        for (r, word) in relators.iter().enumerate() {
            for start in 0..n {
                let (vars, end) = problem.walk_vars(word, start);
                if end != start {
                    return Err(Error::InvalidInput("permutation action violates a relator".into()));
                }
                let depth = vars.iter().filter_map(|&(s, i)| depth_of[s * n + i]).max().unwrap_or(0);
                checks[depth].push((r, start));
            }
        }
        problem.checks = checks;
        Ok(problem)
    }

    pub(crate) fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    fn walk_vars(&self, word: &[i32], start: usize) -> (Vec<(usize, usize)>, usize) {
        let mut pos = start;
        let mut vars = Vec::with_capacity(word.len());
        for &letter in word {
            let s = letter.unsigned_abs() as usize - 1;
            if letter > 0 {
                vars.push((s, pos));
                pos = self.sigma_inv[s][pos];
            } else {
                pos = self.sigma[s][pos];
                vars.push((s, pos));
            }
        }
        (vars, pos)
    }

    fn relator_holds(&self, comps: &[usize], word: &[i32], start: usize) -> bool {
        let g = self.g;
        let mut pos = start;
        let mut acc = g.identity();
        for &letter in word {
            let s = letter.unsigned_abs() as usize - 1;
            if letter > 0 {
                acc = g.mul(acc, comps[s * self.n + pos]);
                pos = self.sigma_inv[s][pos];
            } else {
                pos = self.sigma[s][pos];
                acc = g.mul(acc, g.inv(comps[s * self.n + pos]));
            }
        }
        acc == g.identity()
    }

    fn passes(&self, comps: &[usize], depth: usize) -> bool {
        self.checks[depth].iter().all(|&(r, start)| self.relator_holds(comps, &self.relators[r], start))
    }

    /// Every gauge-fixed lift, as flat component arrays indexed `s·n + i`.
    pub(crate) fn gauge_fixed_lifts(&self, ctx: &Ctx) -> Result<Vec<Vec<usize>>> {
        let comps = vec![self.g.identity(); self.sigma.len() * self.n];
        if self.free.is_empty() {
            return Ok(if self.passes(&comps, 0) { vec![comps] } else { vec![] });
        }
        let nodes = AtomicU64::new(0);
        let cap = ctx.caps.search_nodes;
        let (s0, i0) = self.free[0];
        let branches: Vec<Result<Vec<Vec<usize>>>> = (0..self.g.order())
            .into_par_iter()
            .map(|x| {
                let mut comps = comps.clone();
                comps[s0 * self.n + i0] = x;
                let mut out = Vec::new();
                if self.passes(&comps, 0) {
                    self.dfs(1, &mut comps, &mut out, &nodes, cap)?;
                }
                Ok(out)
            })
            .collect();
        let mut lifts = Vec::new();
        for b in branches {
            lifts.extend(b?);
        }
        ctx.stats.add_homs(lifts.len() as u64);
        Ok(lifts)
    }

    fn dfs(
        &self,
        depth: usize,
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &AtomicU64,
        cap: u64,
    ) -> Result<()> {
        if depth == self.free.len() {
            out.push(comps.clone());
            return Ok(());
        }
        let seen = nodes.fetch_add(self.g.order() as u64, Ordering::Relaxed) + self.g.order() as u64;
        if seen > cap {
            return Err(Error::SearchCapExceeded { nodes: seen as u128, cap: cap as u128 });
        }
        let (s, i) = self.free[depth];
        for x in 0..self.g.order() {
            comps[s * self.n + i] = x;
            if self.passes(comps, depth) {
                self.dfs(depth + 1, comps, out, nodes, cap)?;
            }
        }
        comps[s * self.n + i] = self.g.identity();
        Ok(())
    }

    pub(crate) fn elements(&self, comps: &[usize]) -> Vec<WreathElement> {
        self.sigma
            .iter()
            .enumerate()
            .map(|(s, p)| WreathElement { components: comps[s * self.n..(s + 1) * self.n].to_vec(), perm: p.clone() })
            .collect()
    }

    /// `C_{S_n}(σ)`: each orbit basepoint is sent somewhere unused, and the
    /// image of the rest of the orbit is forced by commuting with σ.
    pub(crate) fn centralizer_of_action(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut pi = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.place_orbit(0, &mut pi, &mut used, &mut out);
        out
    }

    fn place_orbit(&self, j: usize, pi: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if j == self.orbits.len() {
            out.push(pi.clone());
            return;
        }
        let orbit = &self.orbits[j];
        for t in 0..self.n {
            if used[t] {
                continue;
            }
            let mut placed = Vec::with_capacity(orbit.len());
            let mut ok = true;
            pi[orbit.basepoint] = t;
            used[t] = true;
            placed.push(t);
            for &(q, s, parent) in self.tree.iter().filter(|e| orbit.points.binary_search(&e.0).is_ok()) {
                let image = self.sigma[s][pi[parent]];
                if used[image] {
                    ok = false;
                    break;
                }
                pi[q] = image;
                used[image] = true;
                placed.push(image);
            }
            ok = ok
                && orbit
                    .points
                    .iter()
                    .all(|&p| self.sigma.iter().all(|s| pi[s[p]] == s[pi[p]]));
            if ok {
                self.place_orbit(j + 1, pi, used, out);
            }
            for x in placed {
                used[x] = false;
            }
            for &p in &orbit.points {
                pi[p] = usize::MAX;
            }
        }
    }

    /// `C_{G(S_n)}(θ)` for the lift `comps`, given `C_{S_n}(σ)`.
    ///
    /// `(g, π)` commutes with `(c_s, σ_s)` exactly when
    /// `g_{σ_s⁻¹(i)} = c_{s,i}⁻¹ g_i c_{s,π⁻¹(i)}` for all `i`; along the
    /// spanning tree this determines `g` on an orbit from its basepoint value.
    pub(crate) fn centralizer_of_lift(&self, comps: &[usize], action_centralizer: &[Perm]) -> Vec<WreathElement> {
        let g = self.g;
        let n = self.n;
        let mut out = Vec::new();
        for pi in action_centralizer {
            let pi_inv = perm::inverse(pi);
            let mut per_orbit: Vec<Vec<Vec<(usize, usize)>>> = Vec::with_capacity(self.orbits.len());
            for orbit in &self.orbits {
                let edges: Vec<&(usize, usize, usize)> =
                    self.tree.iter().filter(|e| orbit.points.binary_search(&e.0).is_ok()).collect();
                let mut valid = Vec::new();
                let mut gv = vec![0; n];
                for x in 0..g.order() {
                    gv[orbit.basepoint] = x;
                    for &&(q, s, parent) in &edges {
                        gv[q] = g.mul(g.mul(comps[s * n + q], gv[parent]), g.inv(comps[s * n + pi_inv[q]]));
                    }
                    let commutes = orbit.points.iter().all(|&i| {
                        (0..self.sigma.len()).all(|s| {
                            let lhs = gv[self.sigma_inv[s][i]];
                            let rhs = g.mul(g.mul(g.inv(comps[s * n + i]), gv[i]), comps[s * n + pi_inv[i]]);
                            lhs == rhs
                        })
                    });
                    if commutes {
                        valid.push(orbit.points.iter().map(|&p| (p, gv[p])).collect());
                    }
                }
                per_orbit.push(valid);
            }
            let mut components = vec![g.identity(); n];
            product_assign(&per_orbit, 0, &mut components, &mut |c| {
                out.push(WreathElement { components: c.to_vec(), perm: pi.clone() })
            });
        }
        out
    }
}

fn product_assign(
    per_orbit: &[Vec<Vec<(usize, usize)>>],
    j: usize,
    components: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if j == per_orbit.len() {
        emit(components);
        return;
    }
    for choice in &per_orbit[j] {
        for &(p, x) in choice {
            components[p] = x;
        }
        product_assign(per_orbit, j + 1, components, emit);
    }
}
