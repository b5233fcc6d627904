//! Row-style Hermite normal forms: upper triangular, positive diagonal,
//! entries above a pivot reduced into `0..pivot`. The rows of a
//! determinant-`n` HNF are a basis of an index-`n` sublattice of `Z^d`.

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

/// Ordered factorizations of `n` into `d` positive factors.
fn diagonals(d: usize, n: u64) -> Vec<Vec<u64>> {
    if d == 0 {
        return if n == 1 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (1..=n).filter(|a| n.is_multiple_of(*a)) {
        for mut rest in diagonals(d - 1, n / a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Number of HNFs of determinant `n`: column `j` contributes `d_j^j` choices.
pub fn hnf_count(d: usize, n: u64) -> BigInt {
    diagonals(d, n)
        .iter()
        .map(|diag| diag.iter().enumerate().map(|(j, &dj)| BigInt::from(dj).pow(j as u32)).product::<BigInt>())
        .sum()
}

/// All HNFs of determinant `n`, diagonal-major in lexicographic order.
pub fn enumerate_hnf(d: usize, n: u64) -> Vec<Matrix> {
    let mut out = Vec::new();
    for diag in diagonals(d, n) {
        let mut m: Matrix = vec![vec![0; d]; d];
        for (i, &di) in diag.iter().enumerate() {
            m[i][i] = di as i64;
        }
        let slots: Vec<(usize, usize)> = (0..d).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        fill(&mut m, &slots, 0, &diag, &mut out);
    }
    out
}

fn fill(m: &mut Matrix, slots: &[(usize, usize)], k: usize, diag: &[u64], out: &mut Vec<Matrix>) {
    if k == slots.len() {
        out.push(m.clone());
        return;
    }
    let (i, j) = slots[k];
    for v in 0..diag[j] as i64 {
        m[i][j] = v;
        fill(m, slots, k + 1, diag, out);
    }
}

/// HNF of the lattice spanned by `rows` (each of length `d`); zero rows are
/// dropped, so a full-rank input yields a `d × d` matrix.
pub fn hermite_normal_form(rows: &[Vec<i64>], d: usize) -> Result<Matrix> {
    let mut a: Matrix = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if a.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidInput("lattice vectors of mixed length".into()));
    }
    let mut r = 0;
    for c in 0..d {
        if r == a.len() {
            break;
        }
        // Euclid on column c among rows r.. until one nonzero entry remains.
        loop {
            let pivot = (r..a.len()).filter(|&i| a[i][c] != 0).min_by_key(|&i| a[i][c].unsigned_abs());
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c] != 0 {
                    let q = a[i][c].div_euclid(a[r][c]);
                    sub_row(&mut a, i, r, q)?;
                    if a[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_euclid(a[r][c]);
            sub_row(&mut a, i, r, q)?;
        }
        r += 1;
    }
    a.truncate(r);
    Ok(a)
}

fn sub_row(a: &mut Matrix, i: usize, r: usize, q: i64) -> Result<()> {
    for c in 0..a[i].len() {
        let t = a[r][c].checked_mul(q).and_then(|t| a[i][c].checked_sub(t)).ok_or(Error::Overflow("HNF"))?;
        a[i][c] = t;
    }
    Ok(())
}
