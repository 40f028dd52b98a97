//! Dense Gaussian elimination over an exact field, shared by the complex (Q(i))
//! and real (Q) code paths.

use num_traits::{One, Zero};

use crate::exact::{Rational, GQ};

pub trait Field: Clone + PartialEq + Zero + One {
    fn sub_f(&self, rhs: &Self) -> Self;
    fn mul_f(&self, rhs: &Self) -> Self;
    fn inv_f(&self) -> Self;
    fn neg_f(&self) -> Self;
}

impl Field for Rational {
    fn sub_f(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_f(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv_f(&self) -> Self {
        self.recip()
    }
    fn neg_f(&self) -> Self {
        -self
    }
}

impl Field for GQ {
    fn sub_f(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_f(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv_f(&self) -> Self {
        self.try_inv().expect("pivot is nonzero")
    }
    fn neg_f(&self) -> Self {
        -self
    }
}

/// `row[k] -= factor * pivot_row[k]` for all `k`.
fn axpy<F: Field>(row: &mut [F], factor: &F, pivot_row: &[F]) {
    for (r, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *r = r.sub_f(&factor.mul_f(p));
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv_f();
        for x in rows[r].iter_mut() {
            *x = x.mul_f(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows.
pub fn nullspace<F: Field>(constraints: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut rows: Vec<Vec<F>> = constraints.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let pivots = rref(&mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = row[free].neg_f();
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(vectors: &[Vec<F>]) -> usize {
    let Some(n) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut rows = vectors.to_vec();
    rref(&mut rows, n).len()
}

/// Echelon form of a family of vectors that remembers how each reduced row was
/// built from the originals, so membership and coordinates are one pass each.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: Vec<Vec<F>>,
    transforms: Vec<Vec<F>>,
    pivots: Vec<usize>,
    len: usize,
    n_input: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(vectors: &[Vec<F>], len: usize) -> Self {
        let n = vectors.len();
        let mut aug: Vec<Vec<F>> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row = v.clone();
                row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
                row
            })
            .collect();
        let pivots = rref(&mut aug, len);
        // Rows past the rank (dependency relations) were truncated by rref.
        let mut rows = Vec::new();
        let mut transforms = Vec::new();
        for row in aug.into_iter().take(pivots.len()) {
            let (l, r) = row.split_at(len);
            rows.push(l.to_vec());
            transforms.push(r.to_vec());
        }
        Self { rows, transforms, pivots, len, n_input: n }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.n_input
    }

    /// Coefficients `c` with `sum c_j v_j = x`, or `None` when `x` is outside the span.
    /// Only meaningful for independent families.
    pub fn express(&self, x: &[F]) -> Option<Vec<F>> {
        debug_assert_eq!(x.len(), self.len);
        let mut residual = x.to_vec();
        let mut coeffs = vec![F::zero(); self.n_input];
        for ((row, tr), &p) in self.rows.iter().zip(&self.transforms).zip(&self.pivots) {
            let a = residual[p].clone();
            if a.is_zero() {
                continue;
            }
            axpy(&mut residual, &a, row);
            for (c, t) in coeffs.iter_mut().zip(tr) {
                if !t.is_zero() {
                    *c = c.clone() + a.mul_f(t);
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, x: &[F]) -> bool {
        let mut residual = x.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let a = residual[p].clone();
            if !a.is_zero() {
                axpy(&mut residual, &a, row);
            }
        }
        residual.iter().all(Zero::is_zero)
    }
}
