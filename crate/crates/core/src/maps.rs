//! Automorphisms `Ad_A`, `Out_C` and the antiautomorphisms `J0∘Ad_F`, `J0∘Out_E` of sl(4,C).

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::GQ;
use crate::mat::Mat4;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AutKind {
    Inner,
    Outer,
}

/// `Inner(A): X -> A^-1 X A`, `Outer(C): X -> -(C^-1 X C)^T`.
#[derive(Clone, PartialEq, Eq)]
pub struct Automorphism {
    kind: AutKind,
    matrix: Mat4,
    inverse: Mat4,
}

impl Automorphism {
    pub fn new(kind: AutKind, matrix: Mat4) -> Result<Self> {
        let inverse = matrix.inverse()?;
        Ok(Self { kind, matrix, inverse })
    }

    pub fn inner(a: Mat4) -> Result<Self> {
        Self::new(AutKind::Inner, a)
    }

    pub fn outer(c: Mat4) -> Result<Self> {
        Self::new(AutKind::Outer, c)
    }

    pub fn identity() -> Self {
        Self::inner(Mat4::identity()).expect("identity is invertible")
    }

    pub fn kind(&self) -> AutKind {
        self.kind
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn apply(&self, x: &Mat4) -> Mat4 {
        let y = &(&self.inverse * x) * &self.matrix;
        match self.kind {
            AutKind::Inner => y,
            AutKind::Outer => -&y.transpose(),
        }
    }

    /// `self ∘ other`, i.e. `X -> self(other(X))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let (a, b) = (&self.matrix, &other.matrix);
        let (kind, m) = match (self.kind, other.kind) {
            (AutKind::Inner, AutKind::Inner) => (AutKind::Inner, b * a),
            (AutKind::Outer, AutKind::Inner) => (AutKind::Outer, b * a),
            (AutKind::Inner, AutKind::Outer) => (AutKind::Outer, b * &self.inverse.transpose()),
            (AutKind::Outer, AutKind::Outer) => (AutKind::Inner, b * &self.inverse.transpose()),
        };
        Automorphism::new(kind, m).expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> Automorphism {
        match self.kind {
            AutKind::Inner => Automorphism::inner(self.inverse.clone()),
            AutKind::Outer => Automorphism::outer(self.matrix.transpose()),
        }
        .expect("inverse is invertible")
    }

    /// Representative matrix scaled so its first nonzero entry is 1.
    pub fn normalized(&self) -> (AutKind, Mat4) {
        let first = self
            .matrix
            .entries
            .iter()
            .flatten()
            .find(|z| !z.is_zero())
            .expect("invertible matrix has a nonzero entry");
        let s = first.try_inv().expect("nonzero");
        (self.kind, self.matrix.scale(&s))
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})", self.kind, self.matrix)
    }
}

pub fn apply_aut(g: &Automorphism, x: &Mat4) -> Mat4 {
    g.apply(x)
}

/// Same kind and proportional matrices.
pub fn aut_equal_projective(g: &Automorphism, h: &Automorphism) -> bool {
    g.kind == h.kind && g.matrix.ratio_to(&h.matrix).is_some()
}

/// `f ∘ g ∘ f^-1`.
pub fn conjugate_aut(g: &Automorphism, f: &Automorphism) -> Automorphism {
    f.compose(g).compose(&f.inverse())
}

/// The scalar by which `g` acts on the complex span `s`.
pub fn eigenvalue_on(g: &Automorphism, s: &Subspace) -> Result<GQ> {
    let mut lambda: Option<GQ> = None;
    for b in s.basis() {
        let l = b.ratio_to(&g.apply(b)).ok_or(Error::NotEigensubspace)?;
        match &lambda {
            Some(prev) if *prev != l => return Err(Error::NotEigensubspace),
            _ => lambda = Some(l),
        }
    }
    lambda.ok_or(Error::NotEigensubspace)
}

/// True iff every eigenvalue of `g` on the given parts is real.
pub fn has_real_spectrum(g: &Automorphism, parts: &[Subspace]) -> Result<bool> {
    for p in parts {
        if !eigenvalue_on(g, p)?.is_real() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projective closure of a generating set, or `None` past `limit` elements.
pub fn generate_group(gens: &[Automorphism], limit: usize) -> Option<Vec<Automorphism>> {
    let id = Automorphism::identity();
    let mut seen = HashSet::from([id.normalized()]);
    let mut elems = vec![id];
    let mut frontier = 0;
    while frontier < elems.len() {
        let x = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.normalized()) {
                elems.push(y);
                if elems.len() > limit {
                    return None;
                }
            }
        }
    }
    Some(elems)
}

pub fn contains_projective(set: &[Automorphism], g: &Automorphism) -> bool {
    set.iter().any(|h| aut_equal_projective(g, h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AntiKind {
    /// `J0∘Ad_F`, fixed set `XF = F X̄`.
    ConjInner,
    /// `J0∘Out_E`, fixed set `XE = -E X^†`.
    ConjOuter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormClass {
    Circular,
    Anticircular,
    Hermitian,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Antiautomorphism {
    kind: AntiKind,
    matrix: Mat4,
    inverse: Mat4,
    class: FormClass,
}

impl Antiautomorphism {
    pub fn new(kind: AntiKind, matrix: Mat4) -> Result<Self> {
        let inverse = matrix.inverse()?;
        let class = match kind {
            AntiKind::ConjInner => {
                let ff = &matrix * &matrix.conj();
                let c = Mat4::identity().ratio_to(&ff).filter(GQ::is_real).ok_or_else(|| {
                    Error::InvalidAntiautomorphism("F·conj(F) is not a real multiple of I".into())
                })?;
                if c.re.is_positive() {
                    FormClass::Circular
                } else {
                    FormClass::Anticircular
                }
            }
            AntiKind::ConjOuter => {
                if !matrix.is_hermitian() {
                    return Err(Error::InvalidAntiautomorphism("E is not hermitian".into()));
                }
                FormClass::Hermitian
            }
        };
        Ok(Self { kind, matrix, inverse, class })
    }

    pub fn conj_inner(f: Mat4) -> Result<Self> {
        Self::new(AntiKind::ConjInner, f)
    }

    pub fn conj_outer(e: Mat4) -> Result<Self> {
        Self::new(AntiKind::ConjOuter, e)
    }

    /// `J0∘h` for an automorphism `h`; `J0∘Out_C` needs `C` hermitian up to a real scale.
    pub fn from_aut(h: &Automorphism) -> Result<Self> {
        match h.kind() {
            AutKind::Inner => Self::conj_inner(h.matrix().clone()),
            AutKind::Outer => Self::conj_outer(h.matrix().dagger()),
        }
    }

    pub fn kind(&self) -> AntiKind {
        self.kind
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn class(&self) -> FormClass {
        self.class
    }

    pub fn apply(&self, x: &Mat4) -> Mat4 {
        match self.kind {
            AntiKind::ConjInner => (&(&self.inverse * x) * &self.matrix).conj(),
            AntiKind::ConjOuter => -&(&(&self.matrix * &x.dagger()) * &self.inverse),
        }
    }

    pub fn fixed_condition(&self, x: &Mat4) -> bool {
        let m = &self.matrix;
        match self.kind {
            AntiKind::ConjInner => x * m == m * &x.conj(),
            AntiKind::ConjOuter => x * m == -&(m * &x.dagger()),
        }
    }
}

impl fmt::Debug for Antiautomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({:?})", self.kind, self.matrix)
    }
}

pub fn fixed_condition(j: &Antiautomorphism, x: &Mat4) -> bool {
    j.fixed_condition(x)
}

/// Multiplier `alpha` with `conj(alpha)/alpha = lambda` for a fourth root of unity.
pub fn multiplier_for(lambda: &GQ) -> Option<GQ> {
    let one = GQ::one();
    let i = GQ::i();
    if *lambda == one {
        Some(one)
    } else if *lambda == -&one {
        Some(i)
    } else if *lambda == i {
        Some(GQ::from_ints(1, -1))
    } else if *lambda == -&i {
        Some(GQ::from_ints(1, 1))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gq, phase_ratio};
    use crate::mat::{bracket, sigma, tensor};

    fn p() -> Mat4 {
        Mat4::from_ints([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]])
    }

    fn q() -> Mat4 {
        Mat4::diag([gq("1"), gq("i"), gq("-1"), gq("-i")])
    }

    fn d(v: [&str; 4]) -> Mat4 {
        Mat4::diag(v.map(gq))
    }

    #[test]
    fn applications() {
        let g = Automorphism::inner(d(["2", "1", "1", "1"])).unwrap();
        assert_eq!(g.apply(&Mat4::unit(1, 2)), Mat4::unit(1, 2).scale(&gq("1/2")));
        let o = Automorphism::outer(Mat4::identity()).unwrap();
        assert_eq!(o.apply(&Mat4::unit(1, 2)), -&Mat4::unit(2, 1));
        let k2 = Mat4::from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
        let x13 = &Mat4::unit(3, 3) - &Mat4::unit(4, 4);
        assert_eq!(Automorphism::outer(k2).unwrap().apply(&x13), x13);
        assert!(Automorphism::inner(Mat4::zero()).is_err());
    }

    #[test]
    fn eigenvalues() {
        let sp = Subspace::complex(vec![p()]).unwrap();
        assert_eq!(eigenvalue_on(&Automorphism::inner(q()).unwrap(), &sp).unwrap(), GQ::i());
        let a = Subspace::complex(vec![&Mat4::unit(1, 2) - &Mat4::unit(2, 1)]).unwrap();
        assert_eq!(eigenvalue_on(&Automorphism::outer(Mat4::identity()).unwrap(), &a).unwrap(), GQ::one());
        let e12 = Subspace::complex(vec![Mat4::unit(1, 2)]).unwrap();
        let t = Automorphism::inner(d(["2", "3", "5", "1"])).unwrap();
        assert_eq!(eigenvalue_on(&t, &e12).unwrap(), gq("3/2"));
        let mixed = Subspace::complex(vec![Mat4::unit(1, 2), Mat4::unit(1, 3)]).unwrap();
        assert_eq!(eigenvalue_on(&t, &mixed), Err(Error::NotEigensubspace));
        assert_eq!(has_real_spectrum(&Automorphism::inner(q()).unwrap(), &[sp]), Ok(false));
    }

    #[test]
    fn projective_equality() {
        let id = Automorphism::identity();
        assert!(aut_equal_projective(&id, &Automorphism::inner(Mat4::identity().scale(&gq("7"))).unwrap()));
        let a = Automorphism::inner(tensor(&sigma(1), &sigma(0))).unwrap();
        let b = Automorphism::inner(tensor(&sigma(0), &sigma(1))).unwrap();
        assert!(!aut_equal_projective(&a, &b));
        let qa = Automorphism::inner(q()).unwrap();
        assert!(aut_equal_projective(&qa, &Automorphism::inner(q().scale(&GQ::i())).unwrap()));
        assert!(!aut_equal_projective(&id, &Automorphism::outer(Mat4::identity()).unwrap()));
    }

    fn samples() -> Vec<Mat4> {
        vec![
            p(),
            q(),
            Mat4::from_ints([[1, 2, 0, 0], [0, 1, 0, 3], [1, 0, 1, 0], [0, 0, 1, 1]]),
            Mat4::unit(1, 3).scale(&gq("1+2i")),
        ]
    }

    #[test]
    fn composition_matches_application() {
        let mats = [p(), q(), d(["2", "3", "5", "1"]), Mat4::from_ints([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 1], [0, 0, 0, 1]])];
        for a in &mats {
            for b in &mats {
                for (ka, kb) in [(AutKind::Inner, AutKind::Inner), (AutKind::Inner, AutKind::Outer), (AutKind::Outer, AutKind::Inner), (AutKind::Outer, AutKind::Outer)] {
                    let g = Automorphism::new(ka, a.clone()).unwrap();
                    let h = Automorphism::new(kb, b.clone()).unwrap();
                    let gh = g.compose(&h);
                    for x in samples() {
                        assert_eq!(gh.apply(&x), g.apply(&h.apply(&x)));
                        assert_eq!(g.inverse().apply(&g.apply(&x)), x);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation() {
        let s = Automorphism::inner(p()).unwrap();
        let id = Automorphism::identity();
        assert!(aut_equal_projective(&conjugate_aut(&id, &s), &id));
        let pp = Automorphism::inner(p()).unwrap();
        assert!(aut_equal_projective(&conjugate_aut(&pp, &id), &pp));
        let g = Automorphism::outer(d(["1", "2", "3", "4"])).unwrap();
        let c = conjugate_aut(&g, &s);
        for x in samples() {
            assert_eq!(c.apply(&s.apply(&x)), s.apply(&g.apply(&x)));
        }
    }

    #[test]
    fn group_generation() {
        let g2 = [Automorphism::inner(p()).unwrap(), Automorphism::inner(q()).unwrap()];
        assert_eq!(generate_group(&g2, 100).unwrap().len(), 16);
        let t = [Automorphism::inner(d(["2", "1", "1", "1"])).unwrap()];
        assert!(generate_group(&t, 50).is_none());
    }

    #[test]
    fn antiautomorphisms() {
        let real = Antiautomorphism::conj_inner(Mat4::identity()).unwrap();
        assert_eq!(real.class(), FormClass::Circular);
        assert!(real.fixed_condition(&Mat4::unit(1, 2)));
        let su = Antiautomorphism::conj_outer(Mat4::identity()).unwrap();
        assert!(su.fixed_condition(&(&Mat4::unit(1, 1) - &Mat4::unit(2, 2)).scale(&GQ::i())));
        assert!(!su.fixed_condition(&(&Mat4::unit(1, 1) - &Mat4::unit(2, 2))));
        let fstar = Mat4::from_ints([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]);
        assert_eq!(Antiautomorphism::conj_inner(fstar).unwrap().class(), FormClass::Anticircular);
        assert!(Antiautomorphism::conj_outer(Mat4::unit(1, 2) + Mat4::identity()).is_err());
        assert!(Antiautomorphism::conj_inner(d(["1", "1+i", "1", "1"])).is_err());
        for j in [real, su] {
            for x in samples() {
                assert_eq!(j.apply(&j.apply(&x)), x);
                let fixed = &x + &j.apply(&x);
                assert!(j.fixed_condition(&fixed));
            }
        }
    }

    #[test]
    fn j0_of_automorphism() {
        let h = Automorphism::inner(tensor(&sigma(2), &sigma(2))).unwrap();
        let j = Antiautomorphism::from_aut(&h).unwrap();
        for x in samples() {
            assert_eq!(j.apply(&x), h.apply(&x).conj());
        }
        let c = Mat4::from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
        let h = Automorphism::outer(c).unwrap();
        let j = Antiautomorphism::from_aut(&h).unwrap();
        for x in samples() {
            assert_eq!(j.apply(&x), h.apply(&x).conj());
            assert_eq!(bracket(&j.apply(&x), &j.apply(&p())), j.apply(&bracket(&x, &p())));
        }
    }

    #[test]
    fn multipliers() {
        for l in ["1", "-1", "i", "-i"] {
            let a = multiplier_for(&gq(l)).unwrap();
            assert_eq!(phase_ratio(&a).unwrap(), gq(l));
        }
        assert_eq!(multiplier_for(&gq("2")), None);
    }
}
