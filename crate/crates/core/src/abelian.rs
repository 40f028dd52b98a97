//! Finitely generated abelian groups through the Smith normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i128>>;

/// `Z^rank x Z_{d1} x ... ` with `d1 | d2 | ...`, every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub free_part: Vec<i128>,
    pub torsion_part: Vec<i128>,
}

fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Returns `(u, d, v)` with `u * m * v = d`, `u`, `v` unimodular and the diagonal of `d`
/// a non-negative divisibility chain.
pub fn smith_normal_form(m: &IntMatrix, ncols: usize) -> (IntMatrix, IntMatrix, IntMatrix) {
    let nrows = m.len();
    let mut a = m.clone();
    let mut u = identity(nrows);
    let mut v = identity(ncols);

    let swap_cols = |a: &mut IntMatrix, v: &mut IntMatrix, x: usize, y: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(x, y);
        }
    };
    // col_x -= q * col_y
    let col_op = |a: &mut IntMatrix, v: &mut IntMatrix, x: usize, y: usize, q: i128| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row[x] -= q * row[y];
        }
    };
    let row_op = |a: &mut IntMatrix, u: &mut IntMatrix, x: usize, y: usize, q: i128| {
        for k in 0..a[x].len() {
            a[x][k] -= q * a[y][k];
        }
        for k in 0..u[x].len() {
            u[x][k] -= q * u[y][k];
        }
    };

    for t in 0..nrows.min(ncols) {
        loop {
            let pivot = (t..nrows)
                .flat_map(|i| (t..ncols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, &mut v, t, pj);

            let mut clean = true;
            for i in t + 1..nrows {
                let q = a[i][t] / a[t][t];
                if q != 0 {
                    row_op(&mut a, &mut u, i, t, q);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..ncols {
                let q = a[t][j] / a[t][t];
                if q != 0 {
                    col_op(&mut a, &mut v, j, t, q);
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => row_op(&mut a, &mut u, t, i, -1),
                None => break,
            }
        }
        if a.get(t).is_some_and(|r| r[t] < 0) {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -*x;
            }
        }
    }
    (u, a, v)
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, ncols: usize) -> IntMatrix {
    a.iter()
        .map(|row| (0..ncols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Exact determinant by fraction-free elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> i128 {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 { 1 } else { sign * a[n - 1][n - 1] }
}

/// `Z^n / <relations>` together with the image of each standard generator.
pub fn quotient_by_relations(n: usize, relations: &[Vec<i128>]) -> (AbelianGroup, Vec<GroupElement>) {
    let (_, d, v) = smith_normal_form(&relations.to_vec(), n);
    let diag: Vec<i128> = (0..n).map(|i| d.get(i).map_or(0, |r| r[i])).collect();
    let torsion_idx: Vec<usize> = (0..n).filter(|&i| diag[i] > 1).collect();
    let free_idx: Vec<usize> = (0..n).filter(|&i| diag[i] == 0).collect();
    let group = AbelianGroup {
        rank: free_idx.len(),
        torsion: torsion_idx.iter().map(|&i| diag[i] as u64).collect(),
    };
    let images = (0..n)
        .map(|j| GroupElement {
            free_part: free_idx.iter().map(|&i| v[j][i]).collect(),
            torsion_part: torsion_idx.iter().map(|&i| v[j][i].rem_euclid(diag[i])).collect(),
        })
        .collect();
    (group, images)
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: vec![] }
    }

    /// Normalize any list of cyclic orders (each `>= 1`) into invariant factors.
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in orders {
            for (p, pk) in prime_powers(d) {
                by_prime.entry(p).or_default().push(pk);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, pk) in factors.iter_mut().rev().zip(powers.iter()) {
                *slot *= pk;
            }
        }
        Self { rank, torsion: factors }
    }

    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

fn prime_powers(mut d: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            let mut pk = 1;
            while d.is_multiple_of(p) {
                d /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if d > 1 {
        out.push((d, d));
    }
    out
}

pub fn isomorphic(a: &AbelianGroup, b: &AbelianGroup) -> bool {
    let na = AbelianGroup::from_cyclic_orders(a.rank, &a.torsion);
    let nb = AbelianGroup::from_cyclic_orders(b.rank, &b.torsion);
    na == nb
}

impl fmt::Display for AbelianGroup {
    /// `Z^r x Z_d^k x ...`, torsion listed by decreasing order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &d in &self.torsion {
            *counts.entry(d).or_default() += 1;
        }
        for (d, k) in counts.iter().rev() {
            terms.push(if *k == 1 { format!("Z_{d}") } else { format!("Z_{d}^{k}") });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" x "))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Accepts products of `Z`, `Z^r`, `Z_d`, `Z_{d}`, `Z_d^k` joined by `x` or `×`; `0` is trivial.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid group `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('ℤ', "Z");
        if compact == "0" {
            return Ok(Self::free(0));
        }
        let mut rank = 0;
        let mut orders = Vec::new();
        for term in compact.split(['x', '×']) {
            let body = term.strip_prefix('Z').ok_or_else(bad)?;
            let (base, exp) = match body.rsplit_once('^') {
                Some((b, e)) => (b, e.trim_matches(['{', '}']).parse::<usize>().map_err(|_| bad())?),
                None => (body, 1),
            };
            if base.is_empty() {
                rank += exp;
            } else {
                let d: u64 = base
                    .strip_prefix('_')
                    .ok_or_else(bad)?
                    .trim_matches(['{', '}'])
                    .parse()
                    .map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                orders.extend(std::iter::repeat_n(d, exp));
            }
        }
        Ok(Self::from_cyclic_orders(rank, &orders))
    }
}
