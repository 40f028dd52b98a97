//! Gradings: direct sums of subspaces closed under the bracket, their product tables,
//! universal groups, eigenvalue labels and refinements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{quotient_by_relations, AbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exact::GQ;
use crate::linalg::Echelon;
use crate::maps::{eigenvalue_on, Automorphism};
use crate::mat::{bracket, Mat4};
use crate::parallel::par_map;
use crate::subspace::{ScalarField, Subspace, COMPLEX_DIM, REAL_DIM};

#[derive(Clone, Debug)]
pub struct Grading {
    pub name: String,
    pub parent: Subspace,
    pub parts: Vec<Subspace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Product {
    Zero,
    Into(usize),
}

/// `[L_j, L_k]` for `j <= k` (0-based part indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTable {
    pub entries: BTreeMap<(usize, usize), Product>,
}

impl ProductTable {
    pub fn get(&self, j: usize, k: usize) -> Product {
        self.entries[&(j.min(k), j.max(k))]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalGroup {
    pub group: AbelianGroup,
    pub images: Vec<GroupElement>,
    pub is_group_grading: bool,
}

impl UniversalGroup {
    /// Pairs of distinct parts sharing an image.
    pub fn collisions(&self) -> Vec<(usize, usize)> {
        let n = self.images.len();
        (0..n)
            .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
            .filter(|&(j, k)| self.images[j] == self.images[k])
            .collect()
    }
}

/// Union of all part bases, with part boundaries, over the grading's field.
struct Combined {
    echelon: Coords,
    owner: Vec<usize>,
}

enum Coords {
    Complex(Echelon<GQ>),
    Real(Echelon<crate::exact::Rational>),
}

impl Combined {
    fn new(g: &Grading) -> Self {
        let all: Vec<&Mat4> = g.parts.iter().flat_map(|p| p.basis()).collect();
        let owner = g.parts.iter().enumerate().flat_map(|(i, p)| std::iter::repeat_n(i, p.dim())).collect();
        let echelon = match g.field() {
            ScalarField::ComplexSpan => {
                Coords::Complex(Echelon::new(&all.iter().map(|m| m.to_complex_vec()).collect::<Vec<_>>(), COMPLEX_DIM))
            }
            ScalarField::RealSpan => {
                Coords::Real(Echelon::new(&all.iter().map(|m| m.to_real_vec()).collect::<Vec<_>>(), REAL_DIM))
            }
        };
        Self { echelon, owner }
    }

    fn independent(&self) -> bool {
        match &self.echelon {
            Coords::Complex(e) => e.is_independent(),
            Coords::Real(e) => e.is_independent(),
        }
    }

    /// Parts carrying a nonzero coefficient of `x`, or `None` when `x` is outside the sum.
    fn support(&self, x: &Mat4) -> Option<Vec<usize>> {
        let nonzero: Vec<bool> = match &self.echelon {
            Coords::Complex(e) => e.express(&x.to_complex_vec())?.iter().map(|c| !num_traits::Zero::is_zero(c)).collect(),
            Coords::Real(e) => e.express(&x.to_real_vec())?.iter().map(|c| !num_traits::Zero::is_zero(c)).collect(),
        };
        let mut parts: Vec<usize> = nonzero.iter().zip(&self.owner).filter(|(nz, _)| **nz).map(|(_, &o)| o).collect();
        parts.dedup();
        Some(parts)
    }
}

impl Grading {
    pub fn new(name: impl Into<String>, parent: Subspace, parts: Vec<Subspace>) -> Self {
        Self { name: name.into(), parent, parts }
    }

    pub fn field(&self) -> ScalarField {
        self.parent.field()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// Same parent, parts reordered by `order` (a permutation of part indices).
    pub fn permuted(&self, order: &[usize]) -> Grading {
        Grading::new(self.name.clone(), self.parent.clone(), order.iter().map(|&i| self.parts[i].clone()).collect())
    }
}

/// Parts lie in the parent, their bases are jointly independent and dimensions add up.
pub fn verify_direct_sum(g: &Grading) -> Result<()> {
    if g.parts.iter().any(|p| p.field() != g.field()) {
        return Err(Error::DimensionMismatch { expected: g.parent.dim(), found: g.total_dim() });
    }
    if g.parts.iter().any(|p| p.dim() == 0 || !p.is_within(&g.parent)) {
        return Err(Error::DependentBasis);
    }
    if !Combined::new(g).independent() {
        return Err(Error::DependentBasis);
    }
    if g.total_dim() != g.parent.dim() {
        return Err(Error::DimensionMismatch { expected: g.parent.dim(), found: g.total_dim() });
    }
    Ok(())
}

pub fn product_table(g: &Grading) -> Result<ProductTable> {
    let combined = Combined::new(g);
    let n = g.parts.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j..n).map(move |k| (j, k))).collect();
    let results = par_map(&pairs, |&(j, k)| {
        let mut target: Option<usize> = None;
        for x in g.parts[j].basis() {
            for y in g.parts[k].basis() {
                let b = bracket(x, y);
                if b.is_zero() {
                    continue;
                }
                match combined.support(&b).as_deref() {
                    Some([m]) if target.is_none_or(|t| t == *m) => target = Some(*m),
                    _ => return Err(Error::NotAGrading(j, k)),
                }
            }
        }
        Ok(((j, k), target.map_or(Product::Zero, Product::Into)))
    });
    Ok(ProductTable { entries: results.into_iter().collect::<Result<_>>()? })
}

/// One generator per part, one relation `g_j + g_k - g_m` per nonzero bracket.
pub fn universal_group_of(g: &Grading, table: &ProductTable) -> UniversalGroup {
    let n = g.parts.len();
    let relations: Vec<Vec<i128>> = table
        .entries
        .iter()
        .filter_map(|(&(j, k), p)| match p {
            Product::Zero => None,
            Product::Into(m) => {
                let mut r = vec![0i128; n];
                r[j] += 1;
                r[k] += 1;
                r[*m] -= 1;
                Some(r)
            }
        })
        .collect();
    let (group, images) = quotient_by_relations(n, &relations);
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let is_group_grading = sorted.len() == n;
    UniversalGroup { group, images, is_group_grading }
}

/// Joint eigenvalue tuple of each part, which must be pairwise distinct.
pub fn eigenlabel_certificate(g: &Grading, generators: &[Automorphism]) -> Result<Vec<Vec<GQ>>> {
    let labels = g
        .parts
        .iter()
        .map(|p| generators.iter().map(|h| eigenvalue_on(h, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    for j in 0..labels.len() {
        for k in j + 1..labels.len() {
            if labels[j] == labels[k] {
                return Err(Error::CollidingLabels(j, k));
            }
        }
    }
    Ok(labels)
}

/// Each fine part sits in exactly one coarse part, and each coarse part is the sum of its fine parts.
pub fn is_refinement(fine: &Grading, coarse: &Grading) -> bool {
    if fine.field() != coarse.field() {
        return false;
    }
    let mut assigned: Vec<Vec<&Mat4>> = vec![Vec::new(); coarse.parts.len()];
    for f in &fine.parts {
        let owners: Vec<usize> = (0..coarse.parts.len()).filter(|&c| f.is_within(&coarse.parts[c])).collect();
        let [c] = owners[..] else { return false };
        assigned[c].extend(f.basis());
    }
    assigned.iter().zip(&coarse.parts).all(|(v, c)| {
        Subspace::new(v.iter().map(|m| (*m).clone()).collect(), c.field()).is_ok_and(|s| s.dim() == c.dim())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;
    use crate::subspace::sl4;

    fn e(j: usize, k: usize) -> Mat4 {
        Mat4::unit(j, k)
    }

    fn root_grading() -> Grading {
        let order = [(2, 3), (1, 2), (1, 3), (3, 4), (2, 4), (4, 1), (1, 4), (4, 2), (4, 3), (3, 1), (2, 1), (3, 2)];
        let mut parts: Vec<Subspace> = order.iter().map(|&(j, k)| Subspace::complex(vec![e(j, k)]).unwrap()).collect();
        let cartan = (1..4).map(|k| &e(k, k) - &e(k + 1, k + 1)).collect();
        parts.push(Subspace::complex(cartan).unwrap());
        Grading::new("root", sl4(), parts)
    }

    fn pauli_grading() -> Grading {
        let p = Mat4::from_ints([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]);
        let q = Mat4::diag([gq("1"), gq("i"), gq("-1"), gq("-i")]);
        let parts = (0..4u32)
            .flat_map(|j| (0..4u32).map(move |k| (j, k)))
            .filter(|&jk| jk != (0, 0))
            .map(|(j, k)| Subspace::complex(vec![&p.pow(j) * &q.pow(k)]).unwrap())
            .collect();
        Grading::new("pauli", sl4(), parts)
    }

    #[test]
    fn root_grading_checks() {
        let g = root_grading();
        verify_direct_sum(&g).unwrap();
        let t = product_table(&g).unwrap();
        assert_eq!(t.get(1, 0), Product::Into(2));
        assert_eq!(t.get(12, 12), Product::Zero);
        let u = universal_group_of(&g, &t);
        assert_eq!(u.group, AbelianGroup::free(3));
        assert!(u.is_group_grading);
        let torus = Automorphism::inner(Mat4::diag([gq("2"), gq("3"), gq("5"), gq("1")])).unwrap();
        assert!(eigenlabel_certificate(&g, &[torus]).is_ok());
        let weak = Automorphism::inner(Mat4::diag([gq("2"), gq("1"), gq("1"), gq("1")])).unwrap();
        assert!(matches!(eigenlabel_certificate(&g, &[weak]), Err(Error::CollidingLabels(_, _))));
    }

    #[test]
    fn corrupted_direct_sum() {
        let mut g = root_grading();
        g.parts[0] = Subspace::complex(vec![e(1, 2)]).unwrap();
        assert_eq!(verify_direct_sum(&g), Err(Error::DependentBasis));
        g.parts.pop();
        assert!(verify_direct_sum(&g).is_err());
    }

    #[test]
    fn mixed_part_is_not_a_grading() {
        let mut g = root_grading();
        g.parts[0] = Subspace::complex(vec![&e(2, 3) + &e(1, 2)]).unwrap();
        g.parts[1] = Subspace::complex(vec![e(1, 2)]).unwrap();
        assert!(matches!(product_table(&g), Err(Error::NotAGrading(_, _))));
    }

    #[test]
    fn pauli_group_and_refinement() {
        let g = pauli_grading();
        verify_direct_sum(&g).unwrap();
        let t = product_table(&g).unwrap();
        let u = universal_group_of(&g, &t);
        assert_eq!(u.group, "Z_4^2".parse().unwrap());
        assert!(u.is_group_grading);
        assert!(is_refinement(&g, &g));
        assert!(!is_refinement(&g, &root_grading()));
        let reversed: Vec<usize> = (0..15).rev().collect();
        let r = g.permuted(&reversed);
        assert_eq!(universal_group_of(&r, &product_table(&r).unwrap()).group, u.group);
    }

    #[test]
    fn coarsening_is_refined_by_root_grading() {
        let fine = root_grading();
        let mut parts: Vec<Subspace> = fine.parts[..12].to_vec();
        let cartan = fine.parts[12].basis().to_vec();
        parts.push(Subspace::complex(cartan[..1].to_vec()).unwrap());
        parts.push(Subspace::complex(cartan[1..].to_vec()).unwrap());
        let finer = Grading::new("finer", sl4(), parts);
        assert!(is_refinement(&finer, &fine));
        assert!(!is_refinement(&fine, &finer));
    }
}
