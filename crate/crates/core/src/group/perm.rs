//! Permutations of `{0, .., n-1}` stored as image vectors.
//!
//! Composition follows the left-action convention used throughout the crate:
//! `compose(s, t)` is `s ∘ t`, i.e. apply `t` first.

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn compose(s: &[usize], t: &[usize]) -> Perm {
    t.iter().map(|&i| s[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `p ∘ s ∘ p⁻¹`.
pub fn conjugate(p: &[usize], s: &[usize]) -> Perm {
    let mut out = vec![0; s.len()];
    for i in 0..s.len() {
        out[p[i]] = p[s[i]];
    }
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Rank in lexicographic order (Lehmer code read as a factorial-base number).
pub fn lehmer_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

pub fn lehmer_unrank(n: usize, mut rank: usize) -> Perm {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// All permutations of degree `n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let count = factorial(n) as usize;
    (0..count).map(|r| lehmer_unrank(n, r)).collect()
}

/// Disjoint cycles of length at least two, each starting at its smallest point.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        if cycle.len() > 1 {
            out.push(cycle);
        }
    }
    out
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn cycle_string(p: &[usize]) -> String {
    let cs = cycles(p);
    if cs.is_empty() {
        return "()".to_string();
    }
    cs.iter()
        .map(|c| {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", body.join(" "))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank_roundtrip() {
        for n in 0..6 {
            let perms = all_perms(n);
            assert_eq!(perms.len() as u128, factorial(n));
            for (r, p) in perms.iter().enumerate() {
                assert!(is_permutation(p));
                assert_eq!(lehmer_rank(p), r);
            }
            let mut sorted = perms.clone();
            sorted.sort();
            assert_eq!(sorted, perms);
        }
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let s = vec![1, 0, 2];
        let t = vec![0, 2, 1];
        // t sends 1 -> 2, then s fixes 2
        assert_eq!(compose(&s, &t)[1], 2);
        assert_eq!(compose(&s, &inverse(&s)), identity(3));
        assert_eq!(conjugate(&t, &s), compose(&compose(&t, &s), &inverse(&t)));
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(cycle_string(&[1, 2, 0]), "(1 2 3)");
        assert_eq!(cycle_string(&[1, 0, 2, 3]), "(1 2)");
        assert_eq!(cycle_string(&[0, 1]), "()");
    }
}
