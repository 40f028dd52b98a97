//! Fixed-size square matrices over Q(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, GQ};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMat<const N: usize> {
    pub entries: [[GQ; N]; N],
}

pub type Mat2 = SquareMat<2>;
pub type Mat4 = SquareMat<4>;

impl<const N: usize> SquareMat<N> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> GQ) -> Self {
        Self { entries: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| GQ::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { GQ::one() } else { GQ::zero() })
    }

    pub fn diag(d: [GQ; N]) -> Self {
        Self::from_fn(|r, c| if r == c { d[r].clone() } else { GQ::zero() })
    }

    pub fn from_ints(rows: [[i64; N]; N]) -> Self {
        Self::from_fn(|r, c| GQ::from(rows[r][c]))
    }

    /// Matrix unit `E_jk` with 1-based indices.
    pub fn unit(j: usize, k: usize) -> Self {
        Self::from_fn(|r, c| if r + 1 == j && c + 1 == k { GQ::one() } else { GQ::zero() })
    }

    pub fn get(&self, r: usize, c: usize) -> &GQ {
        &self.entries[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().flatten().all(GQ::is_real)
    }

    pub fn scale(&self, s: &GQ) -> Self {
        Self::from_fn(|r, c| &self.entries[r][c] * s)
    }

    pub fn scale_real(&self, s: &Rational) -> Self {
        Self::from_fn(|r, c| self.entries[r][c].scale(s))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.entries[c][r].clone())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|r, c| self.entries[r][c].conj())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|r, c| self.entries[c][r].conj())
    }

    pub fn trace(&self) -> GQ {
        (0..N).fold(GQ::zero(), |acc, k| acc + &self.entries[k][k])
    }

    pub fn is_hermitian(&self) -> bool {
        self.dagger() == *self
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| &acc * self)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let mut a = self.entries.clone();
        let mut inv = Self::identity().entries;
        for col in 0..N {
            let p = (col..N).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, p);
            inv.swap(col, p);
            let s = a[col][col].try_inv()?;
            for k in 0..N {
                a[col][k] = &a[col][k] * &s;
                inv[col][k] = &inv[col][k] * &s;
            }
            for r in 0..N {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for k in 0..N {
                        let da = &f * &a[col][k];
                        let di = &f * &inv[col][k];
                        a[r][k] -= &da;
                        inv[r][k] -= &di;
                    }
                }
            }
        }
        Ok(Self { entries: inv })
    }

    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> GQ {
        let mut a = self.entries.clone();
        let mut det = GQ::one();
        for col in 0..N {
            let Some(p) = (col..N).find(|&r| !a[r][col].is_zero()) else {
                return GQ::zero();
            };
            if p != col {
                a.swap(col, p);
                det = -det;
            }
            det = &det * &a[col][col];
            let s = a[col][col].try_inv().expect("nonzero pivot");
            for r in col + 1..N {
                if !a[r][col].is_zero() {
                    let f = &a[r][col] * &s;
                    for k in col..N {
                        let d = &f * &a[col][k];
                        a[r][k] -= &d;
                    }
                }
            }
        }
        det
    }

    /// Coordinates over Q(i), row-major.
    pub fn to_complex_vec(&self) -> Vec<GQ> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn from_complex_vec(v: &[GQ]) -> Self {
        Self::from_fn(|r, c| v[r * N + c].clone())
    }

    /// Coordinates over Q: real and imaginary parts interleaved, row-major.
    pub fn to_real_vec(&self) -> Vec<Rational> {
        self.entries
            .iter()
            .flatten()
            .flat_map(|z| [z.re.clone(), z.im.clone()])
            .collect()
    }

    pub fn from_real_vec(v: &[Rational]) -> Self {
        Self::from_fn(|r, c| {
            let k = 2 * (r * N + c);
            GQ::new(v[k].clone(), v[k + 1].clone())
        })
    }

    /// If `other = lambda * self` for a scalar `lambda`, return it.
    pub fn ratio_to(&self, other: &Self) -> Option<GQ> {
        let (r, c) = (0..N * N).map(|k| (k / N, k % N)).find(|&(r, c)| !self.entries[r][c].is_zero())?;
        let lambda = other.entries[r][c].try_div(&self.entries[r][c]).ok()?;
        (self.scale(&lambda) == *other).then_some(lambda)
    }
}

impl<'a, const N: usize> Mul<&'a SquareMat<N>> for &'a SquareMat<N> {
    type Output = SquareMat<N>;
    fn mul(self, rhs: &SquareMat<N>) -> SquareMat<N> {
        SquareMat::from_fn(|r, c| {
            let mut acc = GQ::zero();
            for k in 0..N {
                let (a, b) = (&self.entries[r][k], &rhs.entries[k][c]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }
}

impl<'a, const N: usize> Add<&'a SquareMat<N>> for &'a SquareMat<N> {
    type Output = SquareMat<N>;
    fn add(self, rhs: &SquareMat<N>) -> SquareMat<N> {
        SquareMat::from_fn(|r, c| &self.entries[r][c] + &rhs.entries[r][c])
    }
}

impl<'a, const N: usize> Sub<&'a SquareMat<N>> for &'a SquareMat<N> {
    type Output = SquareMat<N>;
    fn sub(self, rhs: &SquareMat<N>) -> SquareMat<N> {
        SquareMat::from_fn(|r, c| &self.entries[r][c] - &rhs.entries[r][c])
    }
}

impl<const N: usize> Neg for &SquareMat<N> {
    type Output = SquareMat<N>;
    fn neg(self) -> SquareMat<N> {
        SquareMat::from_fn(|r, c| -&self.entries[r][c])
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl<const N: usize> $tr<SquareMat<N>> for SquareMat<N> {
            type Output = SquareMat<N>;
            fn $m(self, rhs: SquareMat<N>) -> SquareMat<N> {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Mul, mul);
owned_binop!(Add, add);
owned_binop!(Sub, sub);

/// Lie bracket `xy - yx`.
pub fn bracket(x: &Mat4, y: &Mat4) -> Mat4 {
    &(x * y) - &(y * x)
}

/// Kronecker product with index convention `I = i1*2 + j1`, `J = i2*2 + j2`.
pub fn tensor(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|row, col| a.get(row / 2, col / 2) * b.get(row % 2, col % 2))
}

/// Real Pauli matrices: `s0 = I`, `s1 = [[0,1],[1,0]]`, `s2 = s1*s3 = [[0,-1],[1,0]]`, `s3 = diag(1,-1)`.
pub fn sigma(j: usize) -> Mat2 {
    match j {
        0 => Mat2::from_ints([[1, 0], [0, 1]]),
        1 => Mat2::from_ints([[0, 1], [1, 0]]),
        2 => Mat2::from_ints([[0, -1], [1, 0]]),
        3 => Mat2::from_ints([[1, 0], [0, -1]]),
        _ => panic!("Pauli index {j} out of range"),
    }
}

/// Inertia `(positive, zero, negative)` of a hermitian form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        Self { n_plus, n_zero, n_minus }
    }

    pub fn flipped(self) -> Self {
        Self::new(self.n_minus, self.n_zero, self.n_plus)
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_plus, self.n_zero, self.n_minus)
    }
}

/// Inertia of a hermitian matrix by congruence `A -> P A P^+`.
///
/// Pivots on a nonzero diagonal entry when one exists; otherwise a nonzero
/// off-diagonal entry `a_kj` is folded into the diagonal by adding `a_kj`
/// times row `j` to row `k` (and the conjugate on columns), which makes the
/// new diagonal entry `2|a_kj|^2`.
#[allow(clippy::needless_range_loop)]
pub fn hermitian_inertia(m: &[Vec<GQ>]) -> Result<Signature> {
    let n = m.len();
    let mut a: Vec<Vec<GQ>> = m.to_vec();
    for r in 0..n {
        for c in 0..n {
            if a[r][c] != a[c][r].conj() {
                return Err(Error::NotHermitian);
            }
        }
    }
    let (mut plus, mut minus) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().copied().find(|&k| !a[k][k].is_zero()) {
            Some(k) => k,
            None => {
                let Some((k, j)) = active
                    .iter()
                    .flat_map(|&k| active.iter().map(move |&j| (k, j)))
                    .find(|&(k, j)| k != j && !a[k][j].is_zero())
                else {
                    break;
                };
                let c = a[k][j].clone();
                for t in 0..n {
                    let d = &c * &a[j][t];
                    a[k][t] += &d;
                }
                let cc = c.conj();
                for t in 0..n {
                    let d = &a[t][j] * &cc;
                    a[t][k] += &d;
                }
                k
            }
        };
        let p = a[pivot][pivot].clone();
        debug_assert!(p.is_real());
        if p.re > Rational::zero() {
            plus += 1;
        } else {
            minus += 1;
        }
        let pinv = p.try_inv()?;
        for &r in active.iter().filter(|&&r| r != pivot) {
            if a[r][pivot].is_zero() {
                continue;
            }
            let f = &a[r][pivot] * &pinv;
            let fc = f.conj();
            for t in 0..n {
                let d = &f * &a[pivot][t];
                a[r][t] -= &d;
            }
            for t in 0..n {
                let d = &a[t][pivot] * &fc;
                a[t][r] -= &d;
            }
        }
        active.retain(|&k| k != pivot);
    }
    Ok(Signature::new(plus, n - plus - minus, minus))
}

/// Inertia of a hermitian 4x4 matrix.
pub fn signature(e: &Mat4) -> Result<Signature> {
    let rows: Vec<Vec<GQ>> = e.entries.iter().map(|r| r.to_vec()).collect();
    hermitian_inertia(&rows)
}

impl<const N: usize> FromStr for SquareMat<N> {
    type Err = Error;

    /// `N` rows of `N` scalar literals, row-major; entries separated by
    /// whitespace or commas, rows optionally by `;` or newlines.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != N * N {
            return Err(Error::Parse(format!("expected {} matrix entries, found {}", N * N, tokens.len())));
        }
        let vals = tokens.iter().map(|t| t.parse()).collect::<Result<Vec<GQ>>>()?;
        Ok(Self::from_complex_vec(&vals))
    }
}

impl<const N: usize> fmt::Display for SquareMat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|z| z.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for SquareMat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;

    fn e(j: usize, k: usize) -> Mat4 {
        Mat4::unit(j, k)
    }

    fn pauli_p() -> Mat4 {
        Mat4::from_ints([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]])
    }

    fn pauli_q() -> Mat4 {
        Mat4::diag([gq("1"), gq("i"), gq("-1"), gq("-i")])
    }

    #[test]
    fn brackets() {
        assert_eq!(bracket(&e(1, 2), &e(2, 3)), e(1, 3));
        let h = &e(1, 1) - &e(2, 2);
        assert_eq!(bracket(&h, &e(1, 2)), e(1, 2).scale(&gq("2")));
        let (p, q) = (pauli_p(), pauli_q());
        // independent check: entrywise products
        let qp = &q * &p;
        let pq = &p * &q;
        assert_eq!(pq, qp.scale(&GQ::i()));
        assert!(!bracket(&p, &q).is_zero());
        assert_eq!(bracket(&p, &q), pq.scale(&gq("1+i")));
    }

    #[test]
    fn tensors() {
        assert_eq!(tensor(&sigma(0), &sigma(0)), Mat4::identity());
        let swap = Mat4::from_ints([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(tensor(&sigma(1), &sigma(0)), swap);
        assert_eq!(
            tensor(&sigma(3), &sigma(3)),
            Mat4::diag([gq("1"), gq("-1"), gq("-1"), gq("1")])
        );
        assert_eq!(&sigma(1) * &sigma(3), sigma(2));
    }

    #[test]
    fn daggers() {
        let x = Mat4::identity().scale(&GQ::i());
        assert_eq!(x.dagger(), Mat4::identity().scale(&gq("-i")));
        assert_eq!(e(1, 2).dagger(), e(2, 1));
        let e224: Mat4 = "1 0 0 0; 0 0 0 -i; 0 0 -1 0; 0 i 0 0".parse().unwrap();
        assert_eq!(e224.dagger(), e224);
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&Mat4::identity()).unwrap(), Signature::new(4, 0, 0));
        let d = Mat4::diag([gq("1"), gq("1"), gq("-1"), gq("-1")]);
        assert_eq!(signature(&d).unwrap(), Signature::new(2, 0, 2));
        let e313: Mat4 = "1 0 0 0; 0 0 0 1; 0 0 1 0; 0 1 0 0".parse().unwrap();
        assert_eq!(signature(&e313).unwrap(), Signature::new(3, 0, 1));
        let e224: Mat4 = "1 0 0 0; 0 0 0 -i; 0 0 -1 0; 0 i 0 0".parse().unwrap();
        assert_eq!(signature(&e224).unwrap(), Signature::new(2, 0, 2));
        assert_eq!(signature(&Mat4::zero()).unwrap(), Signature::new(0, 4, 0));
        assert_eq!(signature(&e(1, 2)), Err(Error::NotHermitian));
        let degenerate: Mat4 = "0 1 0 0; 1 0 0 0; 0 0 0 0; 0 0 0 2".parse().unwrap();
        assert_eq!(signature(&degenerate).unwrap(), Signature::new(2, 1, 1));
    }

    #[test]
    fn inverse_and_det() {
        let p = pauli_p();
        assert_eq!(&p * &p.inverse().unwrap(), Mat4::identity());
        assert_eq!(p.det(), gq("-1"));
        assert_eq!(pauli_q().det(), gq("-1"));
        assert_eq!(e(1, 2).inverse(), Err(Error::SingularMatrix));
        assert_eq!(p.pow(4), Mat4::identity());
    }

    #[test]
    fn literal_round_trip() {
        let m: Mat4 = "1, 0, 0, 1/2*i\n0 1 0 0\n0 0 1 0\n-1+i 0 0 1".parse().unwrap();
        assert_eq!(m.to_string().parse::<Mat4>().unwrap(), m);
        assert!("1 2 3".parse::<Mat4>().is_err());
    }
}
