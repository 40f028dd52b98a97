//! Real forms as fixed points of involutive antiautomorphisms, and the three ways
//! of obtaining their gradings: intersecting with a complex grading, rescaling a
//! real basis, and splitting by a real MAD-group. Also the exhaustive gamma2 search
//! and the real-part containments.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CoefficientTable, Family, MadGroupSpec};
use crate::displayed::form_subalgebra;
use crate::error::{Error, Result};
use crate::exact::{Rational, GQ};
use crate::gradings::Grading;
use crate::maps::{
    conjugate_aut, contains_projective, eigenvalue_on, generate_group, has_real_spectrum, multiplier_for, AntiKind,
    Antiautomorphism, Automorphism, FormClass,
};
use crate::mat::{hermitian_inertia, signature, Mat4, Signature};
use crate::parallel::par_map;
use crate::subspace::{complex_constraints, complex_solution_space, intersect_real, sl4, Subspace};

const GROUP_LIMIT: usize = 4096;

#[derive(Clone, Debug)]
pub struct RealForm {
    pub name: String,
    pub antiaut: Antiautomorphism,
    /// Real span of the fixed points.
    pub basis: Subspace,
    /// The complex algebra it is a real form of.
    pub parent: Subspace,
}

impl RealForm {
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `basis ∩ i·basis = 0` and `basis + i·basis` is the realified parent.
    pub fn is_real_structure(&self) -> bool {
        let mut v = self.basis.basis().to_vec();
        v.extend(self.basis.basis().iter().map(|b| b.scale(&GQ::i())));
        Subspace::real(v).is_ok_and(|s| s.same_span(&self.parent.realified()))
    }

    /// Inertia of the trace form `tr(XY)`, a positive multiple of the Killing form.
    pub fn killing_signature(&self) -> Result<Signature> {
        let b = self.basis.basis();
        let gram: Vec<Vec<GQ>> = b.iter().map(|x| b.iter().map(|y| (x * y).trace()).collect()).collect();
        if gram.iter().flatten().any(|t| !t.is_real()) {
            return Err(Error::NotHermitian);
        }
        hermitian_inertia(&gram)
    }
}

/// Fixed points of `j` inside `parent`; their real dimension must equal `dim_C(parent)`.
pub fn fixed_points(j: &Antiautomorphism, parent: &Subspace) -> Result<RealForm> {
    let basis = intersect_real(parent, |x| j.apply(x));
    if basis.dim() != parent.dim() {
        return Err(Error::DimensionMismatch { expected: parent.dim(), found: basis.dim() });
    }
    Ok(RealForm { name: String::new(), antiaut: j.clone(), basis, parent: parent.clone() })
}

/// `L_k ∩ L_J` for every part, or `None` when some intersection is too small.
pub fn determine_real_grading(g: &Grading, rf: &RealForm) -> Option<Grading> {
    let parts = par_map(&g.parts, |p| {
        let r = intersect_real(p, |x| rf.antiaut.apply(x));
        (r.dim() == p.dim()).then_some(r)
    });
    let parts = parts.into_iter().collect::<Option<Vec<_>>>()?;
    Some(Grading::new(format!("{}/{}", g.name, rf.name), rf.basis.clone(), parts))
}

/// The real form of sl(4,C) defined by a cataloged representation.
pub fn sl_form(cat: &Catalog, rep: &str) -> Result<RealForm> {
    let r = cat.rep(rep)?;
    Ok(fixed_points(&r.antiaut, &sl4())?.named(rep))
}

/// The canonical construction of a cataloged real form.
pub fn real_form(cat: &Catalog, name: &str) -> Result<RealForm> {
    let spec = cat.realform(name)?;
    let parent = match &spec.k {
        Some(k) => form_subalgebra(k),
        None => sl4(),
    };
    let rf = fixed_points(&spec.antiaut, &parent)?.named(name);
    if rf.dim() != spec.family.complex_dim() {
        return Err(Error::DimensionMismatch { expected: spec.family.complex_dim(), found: rf.dim() });
    }
    Ok(rf)
}

/// Checks every multiplier of a coefficient table and returns the real grading it describes.
pub fn verify_coefficient_table(cat: &Catalog, t: &CoefficientTable) -> Result<Grading> {
    let spec = cat.grading(&t.grading)?;
    let rf = sl_form(cat, &t.rep)?;
    let g = spec.grading();
    let mut parts = Vec::with_capacity(g.parts.len());
    for (k, (part, alpha)) in spec.parts.iter().zip(&t.multipliers).enumerate() {
        let scaled: Vec<Mat4> = part.basis.iter().map(|x| x.scale(alpha)).collect();
        if !scaled.iter().all(|x| rf.antiaut.fixed_condition(x)) {
            return Err(Error::MultiplierInvalid(k));
        }
        let span = Subspace::real(scaled).map_err(|_| Error::MultiplierInvalid(k))?;
        let meet = intersect_real(&g.parts[k], |x| rf.antiaut.apply(x));
        if !span.same_span(&meet) {
            return Err(Error::MultiplierInvalid(k));
        }
        parts.push(span);
    }
    Ok(Grading::new(format!("{}/{}", t.grading, t.rep), rf.basis, parts))
}

/// `h` lies in the MAD-group generating `g`. Finite groups are enumerated; for
/// parametric ones `h` must act by a scalar on every part, which by maximality
/// characterises membership.
pub fn in_mad_group(g: &Grading, h: &Automorphism, mad: &MadGroupSpec) -> bool {
    if mad.finite {
        let elems = generate_group(&mad.generators(), GROUP_LIMIT).expect("finite MAD-group");
        contains_projective(&elems, h)
    } else {
        acts_diagonally(g, h)
    }
}

pub fn acts_diagonally(g: &Grading, h: &Automorphism) -> bool {
    g.parts.iter().all(|p| eigenvalue_on(h, p).is_ok())
}

/// Real grading spanned by `alpha_k X_{k,l}` for the real form fixed by `J0∘h`,
/// or `None` when `h` is outside the MAD-group.
pub fn real_basis_witness(g: &Grading, h: &Automorphism, mad: &MadGroupSpec) -> Result<Option<Grading>> {
    if !g.parts.iter().flat_map(Subspace::basis).all(Mat4::is_real) {
        return Err(Error::NonRealBasis);
    }
    if !in_mad_group(g, h, mad) {
        return Ok(None);
    }
    let j = Antiautomorphism::from_aut(h)?;
    let mut parts = Vec::with_capacity(g.parts.len());
    for (k, p) in g.parts.iter().enumerate() {
        let lambda = eigenvalue_on(h, p)?;
        if !lambda.norm_sqr().is_one() {
            return Err(Error::NonUnitEigenvalue(lambda.to_string()));
        }
        let alpha = multiplier_for(&lambda).ok_or(Error::MultiplierInvalid(k))?;
        parts.push(p.basis().iter().map(|x| x.scale(&alpha)).collect::<Vec<_>>());
    }
    let rf = fixed_points(&j, &sl4())?;
    let parts = parts.into_iter().map(Subspace::real).collect::<Result<Vec<_>>>()?;
    Ok(Some(Grading::new(format!("{}/witness", g.name), rf.basis, parts)))
}

/// Joint eigenspaces of `generators` on `rf`, found by repeated real kernel
/// computations. Candidate eigenvalues come from the generators' action on `g`.
pub fn mad_eigendecompose(rf: &RealForm, generators: &[Automorphism], g: &Grading) -> Result<Grading> {
    let mut pieces = vec![rf.basis.clone()];
    for (gi, h) in generators.iter().enumerate() {
        let mut cands: Vec<Rational> = Vec::new();
        for p in &g.parts {
            let l = eigenvalue_on(h, p).map_err(|_| Error::NotInvariant(gi))?;
            if !l.is_real() {
                return Err(Error::NotRealSpectrum(gi));
            }
            if !cands.contains(&l.re) {
                cands.push(l.re);
            }
        }
        if !rf.basis.basis().iter().all(|x| rf.basis.contains(&h.apply(x))) {
            return Err(Error::NotInvariant(gi));
        }
        let split = par_map(&pieces, |w| {
            let ks: Vec<Subspace> = cands
                .iter()
                .map(|l| intersect_real(w, |x| &(&h.apply(x) - &x.scale_real(l)) + x))
                .filter(|k| k.dim() > 0)
                .collect();
            (ks.iter().map(Subspace::dim).sum::<usize>() == w.dim()).then_some(ks)
        });
        pieces = split.into_iter().map(|s| s.ok_or(Error::NotInvariant(gi))).collect::<Result<Vec<_>>>()?.concat();
    }
    Ok(Grading::new(format!("{}/mad", rf.name), rf.basis.clone(), pieces))
}

/// Same set of parts, ignoring order.
pub fn same_partition(a: &Grading, b: &Grading) -> bool {
    a.parts.len() == b.parts.len()
        && a.parts.iter().all(|p| b.parts.iter().filter(|q| q.same_span(p)).count() == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionKind {
    Circular,
    Anticircular,
    Hermitian(Signature),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma2Witness {
    pub kind: AntiKind,
    pub matrix: Mat4,
    /// Phases `conj(alpha)/alpha` imposed on `X4 = P` and `X3 = Q`.
    pub eta: GQ,
    pub mu: GQ,
    pub multipliers: Vec<GQ>,
    pub signature: Option<Signature>,
}

fn fourth_roots() -> [GQ; 4] {
    [GQ::one(), -GQ::one(), GQ::i(), -GQ::i()]
}

/// Constraint space for `X E = -phase · E X^†` (hermitian) or `X F = phase · F X̄`.
fn phase_space(kind: AntiKind, p: &Mat4, q: &Mat4, eta: &GQ, mu: &GQ) -> Subspace {
    let mut c = Vec::new();
    for (x, ph) in [(p, eta), (q, mu)] {
        match kind {
            AntiKind::ConjOuter => {
                let xd = x.dagger();
                c.extend(complex_constraints(|e| &(x * e) + &(e * &xd).scale(ph)));
            }
            AntiKind::ConjInner => {
                let xb = x.conj();
                c.extend(complex_constraints(|f| &(x * f) - &(f * &xb).scale(ph)));
            }
        }
    }
    complex_solution_space(&c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gamma2Case {
    pub kind: String,
    pub eta: String,
    pub mu: String,
    pub complex_dim: usize,
    pub hermitian_dim: usize,
}

/// Solution-space dimensions for every phase pair, the raw data behind the search.
pub fn gamma2_cases(cat: &Catalog) -> Result<Vec<Gamma2Case>> {
    let spec = cat.grading("gamma2")?;
    let p = spec.basis_by_label("X4").ok_or_else(|| Error::UnknownName("X4".into()))?;
    let q = spec.basis_by_label("X3").ok_or_else(|| Error::UnknownName("X3".into()))?;
    let mut out = Vec::new();
    for kind in [AntiKind::ConjOuter, AntiKind::ConjInner] {
        for eta in fourth_roots() {
            for mu in fourth_roots() {
                let s = phase_space(kind, p, q, &eta, &mu);
                let h = match kind {
                    AntiKind::ConjOuter => intersect_real(&s, Mat4::dagger).dim(),
                    AntiKind::ConjInner => 0,
                };
                out.push(Gamma2Case {
                    kind: format!("{kind:?}"),
                    eta: eta.to_string(),
                    mu: mu.to_string(),
                    complex_dim: s.dim(),
                    hermitian_dim: h,
                });
            }
        }
    }
    Ok(out)
}

/// Exhaustive search for antiautomorphisms of the requested kind whose real form
/// inherits gamma2. The phases of `P` and `Q` are fourth roots of unity because
/// `P^4 = Q^4 = I`; all other parts are products of these two.
pub fn gamma2_witnesses(cat: &Catalog, kind: ObstructionKind) -> Result<Vec<Gamma2Witness>> {
    let spec = cat.grading("gamma2")?;
    let g = spec.grading();
    let p = spec.basis_by_label("X4").ok_or_else(|| Error::UnknownName("X4".into()))?;
    let q = spec.basis_by_label("X3").ok_or_else(|| Error::UnknownName("X3".into()))?;
    let anti = match kind {
        ObstructionKind::Hermitian(_) => AntiKind::ConjOuter,
        _ => AntiKind::ConjInner,
    };
    let mut out = Vec::new();
    for eta in fourth_roots() {
        for mu in fourth_roots() {
            let s = phase_space(anti, p, q, &eta, &mu);
            let candidates: Vec<Mat4> = match anti {
                AntiKind::ConjOuter => intersect_real(&s, Mat4::dagger).basis().to_vec(),
                AntiKind::ConjInner => s.basis().to_vec(),
            };
            for c in candidates {
                for sign in [GQ::one(), -GQ::one()] {
                    let m = c.scale(&sign);
                    let Ok(j) = Antiautomorphism::new(anti, m.clone()) else { continue };
                    let sig = match (kind, j.class()) {
                        (ObstructionKind::Hermitian(want), FormClass::Hermitian) => {
                            let s = signature(&m)?;
                            if s != want && s.flipped() != want {
                                continue;
                            }
                            Some(s)
                        }
                        (ObstructionKind::Circular, FormClass::Circular) => None,
                        (ObstructionKind::Anticircular, FormClass::Anticircular) => None,
                        _ => continue,
                    };
                    let Ok(rf) = fixed_points(&j, &sl4()) else { continue };
                    let Some(real) = determine_real_grading(&g, &rf) else { continue };
                    let multipliers = real
                        .parts
                        .iter()
                        .zip(&g.parts)
                        .map(|(r, c)| c.basis()[0].ratio_to(&r.basis()[0]).expect("one-dimensional parts"))
                        .collect();
                    out.push(Gamma2Witness {
                        kind: anti,
                        matrix: m,
                        eta: eta.clone(),
                        mu: mu.clone(),
                        multipliers,
                        signature: sig,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The first witness of [`gamma2_witnesses`], or `None` when the search is empty.
pub fn gamma2_obstruction(cat: &Catalog, kind: ObstructionKind) -> Result<Option<Gamma2Witness>> {
    Ok(gamma2_witnesses(cat, kind)?.into_iter().next())
}

/// The diagonal conditions `(a+ā)e11 = 0`, `(a-iā)e22 = 0`, `(a-ā)e33 = 0`,
/// `(a+iā)e44 = 0` on the phase of `a`: each has a one-dimensional real kernel,
/// the four kernels are distinct, and no direction `e^{ikπ/4}` kills two of them.
pub fn alpha3_conditions_incompatible() -> bool {
    let i = GQ::i();
    type PhaseMap = Box<dyn Fn(&GQ) -> GQ>;
    let coeffs: [PhaseMap; 4] = [
        Box::new(|a: &GQ| a + &a.conj()),
        Box::new(move |a: &GQ| a - &(&i * &a.conj())),
        Box::new(|a: &GQ| a - &a.conj()),
        Box::new(move |a: &GQ| a + &(&GQ::i() * &a.conj())),
    ];
    // kernel of each R-linear map on (re, im), as a direction
    let kernels: Vec<Option<GQ>> = coeffs
        .iter()
        .map(|f| {
            let c1 = f(&GQ::one());
            let c2 = f(&GQ::i());
            // a = x + y i, f(a) = x c1 + y c2 = 0
            let rows = vec![vec![c1.re.clone(), c2.re.clone()], vec![c1.im.clone(), c2.im.clone()]];
            let ns = crate::linalg::nullspace(&rows, 2);
            match &ns[..] {
                [v] => Some(GQ::new(v[0].clone(), v[1].clone())),
                _ => None,
            }
        })
        .collect();
    let Some(kernels) = kernels.into_iter().collect::<Option<Vec<_>>>() else { return false };
    for a in 0..4 {
        for b in a + 1..4 {
            let x = &kernels[a];
            let y = &kernels[b];
            if (&x.re * &y.im - &x.im * &y.re).is_zero() {
                return false;
            }
        }
    }
    let dirs = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];
    dirs.iter().all(|&(x, y)| {
        let a = GQ::from_ints(x, y);
        coeffs.iter().filter(|f| f(&a).is_zero()).count() <= 1
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealPartReport {
    pub g7_order: usize,
    pub g2r_order: usize,
    pub g2r_matches_catalog: bool,
    pub g2r_in_g7: bool,
    pub g8r_order: usize,
    pub g8r_conjugate_matches_catalog: bool,
    pub g8r_conjugate_in_g7: bool,
    pub generators_real: bool,
    pub inner_q_real: bool,
}

impl RealPartReport {
    pub fn holds(&self) -> bool {
        self.g2r_matches_catalog
            && self.g2r_in_g7
            && self.g2r_order < self.g7_order
            && self.g8r_conjugate_matches_catalog
            && self.g8r_conjugate_in_g7
            && self.g8r_order < self.g7_order
            && self.generators_real
            && !self.inner_q_real
    }
}

fn same_set(a: &[Automorphism], b: &[Automorphism]) -> bool {
    a.len() == b.len() && a.iter().all(|x| contains_projective(b, x))
}

/// Elements of a finite MAD-group with real spectrum on its grading.
pub fn real_part(elems: &[Automorphism], g: &Grading) -> Vec<Automorphism> {
    elems.iter().filter(|h| has_real_spectrum(h, &g.parts).unwrap_or(false)).cloned().collect()
}

fn grading_of(cat: &Catalog, mad: &str) -> Result<Grading> {
    cat.gradings.iter().find(|g| g.mad == mad).map(|g| g.grading()).ok_or_else(|| Error::UnknownName(mad.into()))
}

fn closure(gens: &[Automorphism]) -> Result<Vec<Automorphism>> {
    generate_group(gens, GROUP_LIMIT).ok_or_else(|| Error::CatalogCorrupt("group is not finite".into()))
}

pub fn verify_realpart_relations(cat: &Catalog) -> Result<RealPartReport> {
    let g7 = closure(&cat.madgroup("g7")?.generators())?;
    let g2 = closure(&cat.madgroup("g2")?.generators())?;
    let g8 = closure(&cat.madgroup("g8")?.generators())?;
    let gamma2 = grading_of(cat, "g2")?;
    let gamma7 = grading_of(cat, "g7")?;
    let gamma8 = grading_of(cat, "g8")?;

    let g2r = real_part(&g2, &gamma2);
    let g2r_cat = closure(&cat.realpart("g2R")?.generators())?;
    let g8r = real_part(&g8, &gamma8);
    let rt = cat.realpart("g8Rt")?;
    let f = Automorphism::inner(cat.matrix(rt.conjugated_by.as_deref().unwrap_or("S"))?.clone())?;
    let g8r_conj: Vec<Automorphism> = g8r.iter().map(|h| conjugate_aut(h, &f)).collect();
    let g8r_cat = closure(&rt.generators())?;

    let mut generators_real = true;
    for rp in &cat.realparts {
        let g = if rp.conjugated_by.is_some() { gamma7.clone() } else { grading_of(cat, rp.parent.as_deref().unwrap_or(""))? };
        for h in rp.generators() {
            generators_real &= has_real_spectrum(&h, &g.parts)?;
        }
    }
    let inner_q = Automorphism::inner(cat.matrix("Q")?.clone())?;

    Ok(RealPartReport {
        g7_order: g7.len(),
        g2r_order: g2r.len(),
        g2r_matches_catalog: same_set(&g2r, &g2r_cat),
        g2r_in_g7: g2r.iter().all(|h| contains_projective(&g7, h)),
        g8r_order: g8r.len(),
        g8r_conjugate_matches_catalog: same_set(&g8r_conj, &g8r_cat),
        g8r_conjugate_in_g7: g8r_conj.iter().all(|h| contains_projective(&g7, h)),
        generators_real,
        inner_q_real: has_real_spectrum(&inner_q, &gamma2.parts)?,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealGradingCount {
    pub sl: usize,
    pub sp: usize,
    pub o: usize,
    pub total: usize,
    /// `(real form, grading)` pairs for which a grading was produced.
    pub pairs: BTreeSet<(String, String)>,
    /// `(real form, grading) -> representations` that realise it.
    pub realised_by: BTreeMap<(String, String), Vec<String>>,
}

/// Identifies an sp or o real form by the Killing-form inertia of the canonical forms.
fn identify(family: Family, sig: Signature, table: &[(String, Family, Signature)]) -> Option<String> {
    table.iter().find(|(_, f, s)| *f == family && *s == sig).map(|(n, _, _)| n.clone())
}

/// Runs every cataloged representation against every grading (and every displayed
/// subalgebra) and counts the distinct `(real form, grading)` pairs obtained.
pub fn count_real_gradings(cat: &Catalog) -> Result<RealGradingCount> {
    let reps: Vec<String> = cat
        .realforms
        .iter()
        .filter(|f| f.family == Family::Sl)
        .flat_map(|f| f.reps.clone())
        .collect();
    let forms: Vec<RealForm> = reps.iter().map(|r| sl_form(cat, r)).collect::<Result<_>>()?;
    let gradings: Vec<Grading> = cat.gradings.iter().map(|g| g.grading()).collect();

    let mut sub_table = Vec::new();
    for f in cat.realforms.iter().filter(|f| f.family != Family::Sl) {
        let rf = real_form(cat, &f.name)?;
        sub_table.push((f.name.clone(), f.family, rf.killing_signature()?));
    }

    let jobs: Vec<(usize, usize)> = (0..gradings.len()).flat_map(|g| (0..forms.len()).map(move |r| (g, r))).collect();
    let sl_hits = par_map(&jobs, |&(gi, ri)| determine_real_grading(&gradings[gi], &forms[ri]).is_some());

    let mut out = RealGradingCount::default();
    let record = |out: &mut RealGradingCount, form: String, grading: &str, rep: &str| {
        let key = (form, grading.to_string());
        out.realised_by.entry(key.clone()).or_default().push(rep.to_string());
        out.pairs.insert(key);
    };
    for (&(gi, ri), hit) in jobs.iter().zip(&sl_hits) {
        if *hit {
            let form = cat.form_of_rep(&reps[ri])?.name.clone();
            record(&mut out, form, &gradings[gi].name, &reps[ri]);
        }
    }

    let sub_jobs: Vec<(usize, usize)> =
        (0..cat.displayed.len()).flat_map(|d| (0..forms.len()).map(move |r| (d, r))).collect();
    let sub_hits = par_map(&sub_jobs, |&(di, ri)| -> Result<Option<Signature>> {
        let d = &cat.displayed[di];
        let parent = form_subalgebra(&d.k);
        let Ok(sub) = fixed_points(&forms[ri].antiaut, &parent) else { return Ok(None) };
        let g = cat.grading(&d.source)?.grading();
        let full = d
            .selected_parts
            .iter()
            .all(|&k| intersect_real(&g.parts[k], |x| forms[ri].antiaut.apply(x)).dim() == g.parts[k].dim());
        if !full {
            return Ok(None);
        }
        Ok(Some(sub.killing_signature()?))
    });
    for (&(di, ri), hit) in sub_jobs.iter().zip(sub_hits) {
        if let Some(sig) = hit? {
            let d = &cat.displayed[di];
            let name = identify(d.family, sig, &sub_table)
                .ok_or_else(|| Error::UnknownName(format!("{} form with Killing signature {sig}", d.source)))?;
            record(&mut out, name, &d.source, &reps[ri]);
        }
    }

    for (form, _) in &out.pairs {
        match cat.realform(form)?.family {
            Family::Sl => out.sl += 1,
            Family::Sp => out.sp += 1,
            Family::O => out.o += 1,
        }
    }
    out.total = out.sl + out.sp + out.o;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;
    use crate::exact::gq;

    #[test]
    fn standard_fixed_point_spaces() {
        let r = fixed_points(&Antiautomorphism::conj_inner(Mat4::identity()).unwrap(), &sl4()).unwrap();
        assert_eq!(r.dim(), 15);
        assert!(r.basis.basis().iter().all(Mat4::is_real));
        assert!(r.is_real_structure());
        let u = fixed_points(&Antiautomorphism::conj_outer(Mat4::identity()).unwrap(), &sl4()).unwrap();
        assert!(u.basis.basis().iter().all(|x| x.dagger() == -x));
        assert_eq!(u.killing_signature().unwrap(), Signature::new(0, 0, 15));
    }

    #[test]
    fn real_form_dimensions() {
        let cat = load_catalog().unwrap();
        for f in &cat.realforms {
            let rf = real_form(cat, &f.name).unwrap();
            assert_eq!(rf.dim(), f.family.complex_dim(), "{}", f.name);
            assert!(rf.is_real_structure(), "{}", f.name);
        }
    }

    #[test]
    fn involution_splits_in_two() {
        let cat = load_catalog().unwrap();
        let rf = real_form(cat, "sl4r").unwrap();
        let g3 = cat.grading("gamma3").unwrap().grading();
        let h = Automorphism::inner(Mat4::diag([gq("-1"), gq("1"), gq("1"), gq("1")])).unwrap();
        let d = mad_eigendecompose(&rf, &[h], &g3).unwrap();
        assert_eq!(d.dims(), vec![6, 9]);
    }

    #[test]
    fn complex_generator_rejected() {
        let cat = load_catalog().unwrap();
        let rf = real_form(cat, "sl4r").unwrap();
        let g2 = cat.grading("gamma2").unwrap().grading();
        let q = Automorphism::inner(cat.matrix("Q").unwrap().clone()).unwrap();
        assert!(matches!(mad_eigendecompose(&rf, &[q], &g2), Err(Error::NotRealSpectrum(0))));
    }

    #[test]
    fn phase_conditions() {
        assert!(alpha3_conditions_incompatible());
    }

    #[test]
    fn non_real_basis_rejected() {
        let cat = load_catalog().unwrap();
        let g2 = cat.grading("gamma2").unwrap().grading();
        let mad = cat.madgroup("g2").unwrap();
        assert!(matches!(real_basis_witness(&g2, &Automorphism::identity(), mad), Err(Error::NonRealBasis)));
    }
}
