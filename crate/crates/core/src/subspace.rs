//! Spans of 4x4 matrices over Q(i) or over Q, with exact membership,
//! coordinates, fixed-point spaces and real intersections.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, GQ};
use crate::linalg::{nullspace, Echelon};
use crate::mat::Mat4;

/// Number of real coordinates of a 4x4 complex matrix.
pub const REAL_DIM: usize = 32;
/// Number of complex coordinates of a 4x4 complex matrix.
pub const COMPLEX_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarField {
    ComplexSpan,
    RealSpan,
}

#[derive(Clone)]
enum Engine {
    Complex(Echelon<GQ>),
    Real(Echelon<Rational>),
}

/// An independent family of matrices together with the field it spans over.
#[derive(Clone)]
pub struct Subspace {
    basis: Vec<Mat4>,
    field: ScalarField,
    engine: Engine,
}

impl Subspace {
    pub fn new(basis: Vec<Mat4>, field: ScalarField) -> Result<Self> {
        let engine = match field {
            ScalarField::ComplexSpan => {
                let vs: Vec<_> = basis.iter().map(Mat4::to_complex_vec).collect();
                Engine::Complex(Echelon::new(&vs, COMPLEX_DIM))
            }
            ScalarField::RealSpan => {
                let vs: Vec<_> = basis.iter().map(Mat4::to_real_vec).collect();
                Engine::Real(Echelon::new(&vs, REAL_DIM))
            }
        };
        let independent = match &engine {
            Engine::Complex(e) => e.is_independent(),
            Engine::Real(e) => e.is_independent(),
        };
        if !independent {
            return Err(Error::DependentBasis);
        }
        Ok(Self { basis, field, engine })
    }

    pub fn complex(basis: Vec<Mat4>) -> Result<Self> {
        Self::new(basis, ScalarField::ComplexSpan)
    }

    pub fn real(basis: Vec<Mat4>) -> Result<Self> {
        Self::new(basis, ScalarField::RealSpan)
    }

    pub fn basis(&self) -> &[Mat4] {
        &self.basis
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients of `x` over the span's field, or `None` when `x` is outside.
    /// Real-span coefficients come back as Gaussian rationals with zero imaginary part.
    pub fn coordinates(&self, x: &Mat4) -> Option<Vec<GQ>> {
        match &self.engine {
            Engine::Complex(e) => e.express(&x.to_complex_vec()),
            Engine::Real(e) => e
                .express(&x.to_real_vec())
                .map(|c| c.into_iter().map(GQ::real).collect()),
        }
    }

    pub fn contains(&self, x: &Mat4) -> bool {
        match &self.engine {
            Engine::Complex(e) => e.contains(&x.to_complex_vec()),
            Engine::Real(e) => e.contains(&x.to_real_vec()),
        }
    }

    /// Rebuild `sum c_l b_l`.
    pub fn combine(&self, coeffs: &[GQ]) -> Mat4 {
        self.basis
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(Mat4::zero(), |acc, (b, c)| &acc + &b.scale(c))
    }

    pub fn is_within(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Same set of matrices (fields must agree).
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.field == other.field && self.dim() == other.dim() && self.is_within(other)
    }

    /// Real span of `basis ∪ i·basis`; the realification of a complex span.
    pub fn realified(&self) -> Subspace {
        let mut v = self.basis.clone();
        if self.field == ScalarField::ComplexSpan {
            v.extend(self.basis.iter().map(|b| b.scale(&GQ::i())));
        }
        Subspace::real(v).expect("realification of an independent family is independent")
    }

    /// Complex span of the same basis (a real basis may become dependent).
    pub fn complexified(&self) -> Result<Subspace> {
        Subspace::complex(self.basis.clone())
    }

    pub fn scaled(&self, alpha: &GQ) -> Result<Subspace> {
        Subspace::new(self.basis.iter().map(|b| b.scale(alpha)).collect(), self.field)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace").field("field", &self.field).field("basis", &self.basis).finish()
    }
}

/// The 32 real unit matrices `E_jk` and `i E_jk`, in real-coordinate order.
fn real_units() -> Vec<Mat4> {
    (0..REAL_DIM)
        .map(|t| {
            let mut v = vec![Rational::zero(); REAL_DIM];
            v[t] = Rational::one();
            Mat4::from_real_vec(&v)
        })
        .collect()
}

/// Real solution space of homogeneous rational constraints on the 32 real coordinates.
pub fn real_solution_space(constraints: &[Vec<Rational>]) -> Subspace {
    let basis = nullspace(constraints, REAL_DIM).iter().map(|v| Mat4::from_real_vec(v)).collect();
    Subspace::real(basis).expect("nullspace basis is independent")
}

/// Complex solution space of homogeneous constraints on the 16 complex coordinates.
pub fn complex_solution_space(constraints: &[Vec<GQ>]) -> Subspace {
    let basis = nullspace(constraints, COMPLEX_DIM).iter().map(|v| Mat4::from_complex_vec(v)).collect();
    Subspace::complex(basis).expect("nullspace basis is independent")
}

/// Rows expressing `map(X) = 0` for an R-linear `map`, over the 32 real coordinates.
pub fn real_constraints(map: impl Fn(&Mat4) -> Mat4) -> Vec<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = real_units().iter().map(|u| map(u).to_real_vec()).collect();
    transpose(&cols, REAL_DIM)
}

/// Rows expressing `map(X) = 0` for a C-linear `map`, over the 16 complex coordinates.
pub fn complex_constraints(map: impl Fn(&Mat4) -> Mat4) -> Vec<Vec<GQ>> {
    let cols: Vec<Vec<GQ>> = (0..COMPLEX_DIM)
        .map(|t| map(&Mat4::unit(t / 4 + 1, t % 4 + 1)).to_complex_vec())
        .collect();
    transpose(&cols, COMPLEX_DIM)
}

/// Rows for `tr X = 0` (real and imaginary parts).
pub fn trace_constraints() -> Vec<Vec<Rational>> {
    let mut re = vec![Rational::zero(); REAL_DIM];
    let mut im = vec![Rational::zero(); REAL_DIM];
    for k in 0..4 {
        re[2 * (5 * k)] = Rational::one();
        im[2 * (5 * k) + 1] = Rational::one();
    }
    vec![re, im]
}

fn transpose<F: Clone>(cols: &[Vec<F>], nrows: usize) -> Vec<Vec<F>> {
    (0..nrows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Real span of `{X in span : map(X) = X}` for an R-linear `map`, found by
/// writing `X = sum (a_l + i b_l) X_l` and solving over Q.
pub fn intersect_real(s: &Subspace, map: impl Fn(&Mat4) -> Mat4) -> Subspace {
    let gens: Vec<Mat4> = match s.field() {
        ScalarField::ComplexSpan => s
            .basis()
            .iter()
            .flat_map(|b| [b.clone(), b.scale(&GQ::i())])
            .collect(),
        ScalarField::RealSpan => s.basis().to_vec(),
    };
    let cols: Vec<Vec<Rational>> = gens.iter().map(|g| (&map(g) - g).to_real_vec()).collect();
    let rows = transpose(&cols, REAL_DIM);
    let sol = nullspace(&rows, gens.len());
    let basis = sol
        .iter()
        .map(|c| {
            gens.iter()
                .zip(c)
                .filter(|(_, x)| !x.is_zero())
                .fold(Mat4::zero(), |acc, (g, x)| &acc + &g.scale_real(x))
        })
        .collect();
    Subspace::real(basis).expect("independent generators give an independent solution basis")
}

/// Complex basis of sl(4,C): off-diagonal units then `E11-E22, E22-E33, E33-E44`.
pub fn sl4_basis() -> Vec<Mat4> {
    let mut v: Vec<Mat4> = (1..=4)
        .flat_map(|j| (1..=4).filter(move |&k| k != j).map(move |k| Mat4::unit(j, k)))
        .collect();
    for k in 1..4 {
        v.push(&Mat4::unit(k, k) - &Mat4::unit(k + 1, k + 1));
    }
    v
}

pub fn sl4() -> Subspace {
    Subspace::complex(sl4_basis()).expect("sl(4) basis is independent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;

    #[test]
    fn coordinates_and_membership() {
        let s = Subspace::complex(vec![Mat4::unit(1, 2)]).unwrap();
        assert_eq!(s.coordinates(&Mat4::unit(1, 2).scale(&gq("5i"))), Some(vec![gq("5i")]));
        let r = Subspace::real(vec![Mat4::unit(1, 2)]).unwrap();
        assert_eq!(r.coordinates(&Mat4::unit(1, 2).scale(&GQ::i())), None);
        let x14 = &Mat4::unit(1, 1) - &Mat4::unit(2, 2);
        let x15 = &(&Mat4::unit(1, 1) - &Mat4::unit(2, 2)) - &(&Mat4::unit(3, 3) - &Mat4::unit(4, 4));
        let s = Subspace::complex(vec![x14.clone(), x15.clone()]).unwrap();
        assert_eq!(s.coordinates(&(&x14 + &x15)), Some(vec![gq("1"), gq("1")]));
        assert!(Subspace::complex(vec![x14.clone(), x14.scale(&gq("i"))]).is_err());
        assert!(Subspace::real(vec![x14.clone(), x14.scale(&gq("i"))]).is_ok());
    }

    #[test]
    fn solution_spaces() {
        // real symmetric traceless
        let mut c = real_constraints(|x| x - &x.transpose());
        c.extend(trace_constraints());
        c.extend(real_constraints(|x| Mat4::from_fn(|r, k| GQ::real(x.get(r, k).im.clone()))));
        assert_eq!(real_solution_space(&c).dim(), 9);
        // traceless real
        let mut c = real_constraints(|x| x - &x.conj());
        c.extend(trace_constraints());
        assert_eq!(real_solution_space(&c).dim(), 15);
        // anti-hermitian traceless
        let mut c = real_constraints(|x| x + &x.dagger());
        c.extend(trace_constraints());
        assert_eq!(real_solution_space(&c).dim(), 15);
    }

    #[test]
    fn real_intersections() {
        let s = Subspace::complex(vec![Mat4::unit(1, 2)]).unwrap();
        let r = intersect_real(&s, Mat4::conj);
        assert!(r.same_span(&Subspace::real(vec![Mat4::unit(1, 2)]).unwrap()));
        let s = Subspace::complex(vec![&Mat4::unit(1, 1) - &Mat4::unit(2, 2)]).unwrap();
        let r = intersect_real(&s, |x| -&x.dagger());
        let expect = Subspace::real(vec![s.basis()[0].scale(&GQ::i())]).unwrap();
        assert!(r.same_span(&expect));
    }

    #[test]
    fn sl4_dimension() {
        assert_eq!(sl4().dim(), 15);
        assert!(sl4().basis().iter().all(|b| b.trace().is_zero()));
    }
}
