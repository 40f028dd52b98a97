//! Subalgebra gradings of sp_K(4,C) and o_K(4,C) displayed by an sl(4,C) grading,
//! and the non-group refinement of the gamma5 o-grading.

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, Family};
use crate::error::{Error, Result};
use crate::gradings::{is_refinement, product_table, universal_group_of, verify_direct_sum, Grading};
use crate::mat::Mat4;
use crate::parallel::par_map;
use crate::subspace::{complex_constraints, complex_solution_space, Subspace};

/// `{X : XK = -K X^T}`, computed directly as a solution space.
pub fn form_subalgebra(k: &Mat4) -> Subspace {
    complex_solution_space(&complex_constraints(|x| &(x * k) + &(k * &x.transpose())))
}

/// `Out_K(X) = -(K^-1 X K)^T`; for `K = ±K^T` its fixed points are the subalgebra above.
pub fn out_k(k: &Mat4, k_inv: &Mat4, x: &Mat4) -> Mat4 {
    -&(&(k_inv * x) * k).transpose()
}

fn check_form(k: &Mat4) -> Result<(Mat4, Family)> {
    let inv = k.inverse().map_err(|_| Error::InvalidForm("K is singular".into()))?;
    let kt = k.transpose();
    let family = if kt == *k {
        Family::O
    } else if kt == -k {
        Family::Sp
    } else {
        return Err(Error::InvalidForm("K is neither symmetric nor skew".into()));
    };
    Ok((inv, family))
}

/// Sign of `Out_K` on part `j`: `Some(true)` for +1, `Some(false)` for -1.
fn part_sign(j: usize, part: &Subspace, k: &Mat4, k_inv: &Mat4) -> Result<bool> {
    let mut sign = None;
    for b in part.basis() {
        let o = out_k(k, k_inv, b);
        if !part.contains(&o) {
            return Err(Error::NotInvariant(j));
        }
        let s = if o == *b {
            true
        } else if o == -b {
            false
        } else {
            return Err(Error::PartSplitByForm(j));
        };
        match sign {
            Some(prev) if prev != s => return Err(Error::PartSplitByForm(j)),
            _ => sign = Some(s),
        }
    }
    sign.ok_or(Error::PartSplitByForm(j))
}

/// The grading of the K-subalgebra formed by the parts of `g` on which `Out_K` is +1.
pub fn displayed_subgrading(g: &Grading, k: &Mat4) -> Result<Grading> {
    let (k_inv, family) = check_form(k)?;
    let idx: Vec<usize> = (0..g.parts.len()).collect();
    let signs = par_map(&idx, |&j| part_sign(j, &g.parts[j], k, &k_inv));
    let mut parts = Vec::new();
    for (j, s) in signs.into_iter().enumerate() {
        if s? {
            parts.push(g.parts[j].clone());
        }
    }
    let tag = if family == Family::Sp { "sp" } else { "o" };
    let sub = Grading::new(format!("{}/{tag}", g.name), form_subalgebra(k), parts);
    verify_direct_sum(&sub)?;
    Ok(sub)
}

/// Indices of the parts of `g` kept by [`displayed_subgrading`].
pub fn displayed_indices(g: &Grading, k: &Mat4) -> Result<Vec<usize>> {
    let sub = displayed_subgrading(g, k)?;
    Ok(sub
        .parts
        .iter()
        .map(|p| g.parts.iter().position(|q| q.same_span(p)).expect("parts come from g"))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonGroupCertificate {
    pub source: String,
    pub unsplit_parts: usize,
    pub unsplit_is_group: bool,
    pub split_parts: usize,
    pub split_closes: bool,
    pub split_is_refinement: bool,
    pub split_is_group: bool,
    /// Pairs of parts of the split grading with the same universal-group image.
    pub collisions: Vec<(usize, usize)>,
}

impl NonGroupCertificate {
    pub fn holds(&self) -> bool {
        self.unsplit_is_group
            && self.split_closes
            && self.split_is_refinement
            && !self.split_is_group
            && !self.collisions.is_empty()
    }
}

/// Split the cataloged part of the displayed o-grading and show the result is a
/// grading whose universal group identifies two of its parts.
pub fn certify_nongroup_refinement(cat: &Catalog) -> Result<NonGroupCertificate> {
    let split = cat.splits.first().ok_or_else(|| Error::UnknownName("split".into()))?;
    let spec = cat.grading(&split.source)?;
    let k = cat.matrix(&split.k_name)?;
    let coarse = displayed_subgrading(&spec.grading(), k)?;
    let coarse_table = product_table(&coarse)?;
    let coarse_u = universal_group_of(&coarse, &coarse_table);

    let target = &spec.grading().parts[split.part];
    let at = coarse.parts.iter().position(|p| p.same_span(target)).ok_or(Error::NotInvariant(split.part))?;
    let mut parts = Vec::new();
    for piece in &split.pieces {
        let basis = piece
            .iter()
            .map(|l| spec.basis_by_label(l).cloned().ok_or_else(|| Error::UnknownName(l.clone())))
            .collect::<Result<Vec<_>>>()?;
        parts.push(Subspace::complex(basis)?);
    }
    parts.extend(coarse.parts.iter().enumerate().filter(|&(j, _)| j != at).map(|(_, p)| p.clone()));
    let fine = Grading::new(format!("{}/split", coarse.name), coarse.parent.clone(), parts);
    verify_direct_sum(&fine)?;
    let table = product_table(&fine);
    let (split_closes, u) = match &table {
        Ok(t) => (true, Some(universal_group_of(&fine, t))),
        Err(_) => (false, None),
    };
    Ok(NonGroupCertificate {
        source: coarse.name.clone(),
        unsplit_parts: coarse.parts.len(),
        unsplit_is_group: coarse_u.is_group_grading,
        split_parts: fine.parts.len(),
        split_closes,
        split_is_refinement: is_refinement(&fine, &coarse),
        split_is_group: u.as_ref().is_some_and(|u| u.is_group_grading),
        collisions: u.map(|u| u.collisions()).unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;

    #[test]
    fn subalgebra_dimensions() {
        let cat = load_catalog().unwrap();
        assert_eq!(form_subalgebra(cat.matrix("K0").unwrap()).dim(), 10);
        for k in ["K1", "K2", "K3"] {
            assert_eq!(form_subalgebra(cat.matrix(k).unwrap()).dim(), 6);
        }
    }

    #[test]
    fn gamma3_displays_antisymmetric_parts() {
        let cat = load_catalog().unwrap();
        let g = cat.grading("gamma3").unwrap().grading();
        assert_eq!(displayed_indices(&g, &Mat4::identity()).unwrap(), vec![1, 3, 5, 7, 9, 11]);
    }

    #[test]
    fn root_grading_is_not_preserved_by_transpose() {
        let cat = load_catalog().unwrap();
        let g = cat.grading("gamma1").unwrap().grading();
        assert!(matches!(displayed_subgrading(&g, &Mat4::identity()), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn bad_forms_rejected() {
        let cat = load_catalog().unwrap();
        let g = cat.grading("gamma3").unwrap().grading();
        assert!(matches!(displayed_subgrading(&g, &Mat4::zero()), Err(Error::InvalidForm(_))));
        let m = Mat4::from_ints([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(matches!(displayed_subgrading(&g, &m), Err(Error::InvalidForm(_))));
    }

    #[test]
    fn split_part_is_reported() {
        // E12 + E21 and E12 - E21 together in one part: transpose separates them.
        let x = &Mat4::unit(1, 2) + &Mat4::unit(2, 1);
        let y = &Mat4::unit(1, 2) - &Mat4::unit(2, 1);
        let g = Grading::new("t", crate::subspace::sl4(), vec![Subspace::complex(vec![x, y]).unwrap()]);
        assert!(matches!(displayed_subgrading(&g, &Mat4::identity()), Err(Error::PartSplitByForm(0))));
    }
}
