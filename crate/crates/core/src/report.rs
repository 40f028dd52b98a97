//! Verification reports: one [`Check`] per claim, grouped by scope.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abelian::isomorphic;
use crate::catalog::{Catalog, Family};
use crate::displayed::{certify_nongroup_refinement, displayed_indices, displayed_subgrading};
use crate::error::{Error, Result};
use crate::gradings::{eigenlabel_certificate, product_table, universal_group_of, verify_direct_sum};
use crate::mat::Signature;
use crate::parallel::par_map;
use crate::realforms::{
    count_real_gradings, determine_real_grading, fixed_points, gamma2_witnesses, mad_eigendecompose, real_form,
    same_partition, sl_form, verify_coefficient_table, verify_realpart_relations, ObstructionKind,
    RealGradingCount,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check_id: String,
    pub paper_ref: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    fn new(id: impl Into<String>, claim: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Self {
            check_id: id.into(),
            paper_ref: claim.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details: details.into(),
        }
    }

    fn from_result<T>(id: String, claim: String, r: Result<T>, ok: impl FnOnce(&T) -> (bool, String)) -> Self {
        match r {
            Ok(v) => {
                let (pass, details) = ok(&v);
                Self::new(id, claim, pass, details)
            }
            Err(e) => Self::new(id, claim, false, e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn from_checks(mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        Self { checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_markdown(&self) -> String {
        let pass = self.checks.iter().filter(|c| c.passed()).count();
        let mut out = format!("# Verification report\n\n{pass}/{} checks pass\n\n", self.checks.len());
        out.push_str("| check | status | claim | details |\n|---|---|---|---|\n");
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            let details = c.details.replace('|', "\\|").replace('\n', "<br>");
            let _ = writeln!(out, "| `{}` | {status} | {} | {details} |", c.check_id, c.paper_ref);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Grading(Option<String>),
    RealForm { name: Option<String>, grading: Option<String> },
    Displayed,
    RealParts,
    Count,
}

pub fn verify(cat: &Catalog, scope: &Scope) -> Result<Report> {
    let checks = match scope {
        Scope::All => {
            let mut all = grading_checks(cat, None)?;
            all.extend(displayed_checks(cat)?);
            all.extend(realform_checks(cat, None, None)?);
            all.extend(realpart_checks(cat)?);
            all.extend(count_checks(&count_real_gradings(cat)?, cat));
            all
        }
        Scope::Grading(name) => grading_checks(cat, name.as_deref())?,
        Scope::RealForm { name, grading } => realform_checks(cat, name.as_deref(), grading.as_deref())?,
        Scope::Displayed => displayed_checks(cat)?,
        Scope::RealParts => realpart_checks(cat)?,
        Scope::Count => count_checks(&count_real_gradings(cat)?, cat),
    };
    Ok(Report::from_checks(checks))
}

fn grading_checks(cat: &Catalog, name: Option<&str>) -> Result<Vec<Check>> {
    let specs: Vec<_> = match name {
        Some(n) => vec![cat.grading(n)?],
        None => cat.gradings.iter().collect(),
    };
    let per = par_map(&specs, |spec| -> Result<Vec<Check>> {
        let g = spec.grading();
        let id = |s: &str| format!("grading.{}.{s}", spec.name);
        let gens = cat.madgroup(&spec.mad)?.generators();
        let table = product_table(&g);
        let mut out = vec![
            Check::from_result(
                id("direct_sum"),
                format!("{} decomposes sl(4,C) into {} parts", spec.name, g.parts.len()),
                verify_direct_sum(&g),
                |_| (true, format!("dims {:?}, total {}", g.dims(), g.total_dim())),
            ),
            Check::from_result(
                id("eigenlabels"),
                format!("parts of {} are joint eigenspaces of {}", spec.name, spec.mad),
                eigenlabel_certificate(&g, &gens),
                |labels| (true, format!("{} distinct labels", labels.len())),
            ),
        ];
        match table {
            Ok(t) => {
                out.push(Check::new(id("closure"), format!("{} is closed under the bracket", spec.name), true, ""));
                let u = universal_group_of(&g, &t);
                let ok = u.is_group_grading && isomorphic(&u.group, &spec.claimed_group);
                out.push(Check::new(
                    id("universal_group"),
                    format!("universal group of {} is {}", spec.name, spec.claimed_group),
                    ok,
                    u.group.to_string(),
                ));
            }
            Err(e) => {
                out.push(Check::new(id("closure"), format!("{} is closed under the bracket", spec.name), false, e.to_string()));
            }
        }
        Ok(out)
    });
    Ok(per.into_iter().collect::<Result<Vec<_>>>()?.concat())
}

fn displayed_checks(cat: &Catalog) -> Result<Vec<Check>> {
    let mut out: Vec<Check> = par_map(&cat.displayed, |d| -> Result<Check> {
        let g = cat.grading(&d.source)?.grading();
        let family = match d.family {
            Family::Sp => "sp",
            Family::O => "o",
            Family::Sl => "sl",
        };
        let id = format!("displayed.{family}.{}.{}", d.source, d.k_name);
        let claim = format!("{} displays {family}_{} on {} parts", d.source, d.k_name, d.selected_parts.len());
        let computed = displayed_indices(&g, &d.k).and_then(|idx| {
            let sub = displayed_subgrading(&g, &d.k)?;
            Ok((idx, sub.total_dim()))
        });
        Ok(Check::from_result(id, claim, computed, |(idx, dim)| {
            let mut want = d.selected_parts.clone();
            want.sort_unstable();
            let ok = *idx == want && *dim == d.family.complex_dim();
            let labels: Vec<String> = idx.iter().map(|k| format!("L{}", k + 1)).collect();
            (ok, format!("parts {}, dim {dim}", labels.join(",")))
        }))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    for s in &cat.splits {
        out.push(Check::from_result(
            format!("displayed.split.{}.{}", s.source, s.k_name),
            format!("splitting L{} of the displayed grading closes but is not a group grading", s.part + 1),
            certify_nongroup_refinement(cat),
            |c| (c.holds(), format!("{} parts, colliding images {:?}", c.split_parts, c.collisions)),
        ));
    }
    Ok(out)
}

fn obstruction_kind(cat: &Catalog, form: &str) -> Result<ObstructionKind> {
    let spec = cat.realform(form)?;
    Ok(match (spec.class, spec.signature) {
        (_, Some(s)) => ObstructionKind::Hermitian(s),
        (Some(crate::maps::FormClass::Anticircular), _) => ObstructionKind::Anticircular,
        _ => ObstructionKind::Circular,
    })
}

fn realform_checks(cat: &Catalog, name: Option<&str>, grading: Option<&str>) -> Result<Vec<Check>> {
    let forms: Vec<_> = match name {
        Some(n) => vec![cat.realform(n)?],
        None => cat.realforms.iter().collect(),
    };
    if let Some(g) = grading {
        cat.grading(g)?;
    }
    let wanted = |g: &str| grading.is_none_or(|w| w == g);
    let mut out = Vec::new();

    for t in cat.coefficient_tables.iter().filter(|t| wanted(&t.grading)) {
        let form = cat.form_of_rep(&t.rep)?;
        if !forms.iter().any(|f| f.name == form.name) {
            continue;
        }
        let id = format!("realform.{}.{}.coefficients.{}", form.name, t.grading, t.rep);
        let claim = format!("coefficient table of {} on {} via {}", t.grading, form.name, t.rep);
        let check = match verify_coefficient_table(cat, t).and_then(|real| product_table(&real).map(|_| real.parts.len())) {
            Ok(n) => Check::new(id, claim, true, format!("{n} real parts, real structure constants")),
            Err(Error::MultiplierInvalid(k)) => {
                let part = cat.grading(&t.grading)?.parts[k].labels.join("+");
                Check::new(id, claim, false, format!("multiplier {} on {part} is not fixed by {}", t.multipliers[k], t.rep))
            }
            Err(e) => Check::new(id, claim, false, e.to_string()),
        };
        out.push(check);
    }

    let needs_count = forms.iter().any(|f| f.family != Family::Sl);
    let count = if needs_count { Some(count_real_gradings(cat)?) } else { None };
    for f in &forms {
        let listed = |g: &str| match f.family {
            Family::Sl => cat
                .coefficient_tables
                .iter()
                .any(|t| t.grading == g && f.reps.contains(&t.rep)),
            _ => cat.subforms.iter().any(|s| s.form == f.name && s.grading == g),
        };
        let candidates: Vec<&str> = match f.family {
            Family::Sl => cat.gradings.iter().map(|g| g.name.as_str()).collect(),
            fam => cat.displayed.iter().filter(|d| d.family == fam).map(|d| d.source.as_str()).collect(),
        };
        for g in candidates.into_iter().filter(|g| wanted(g)) {
            let via: Vec<String> = match (&f.family, &count) {
                (Family::Sl, _) => {
                    let grading = cat.grading(g)?.grading();
                    let hits = par_map(&f.reps, |r| -> Result<bool> {
                        Ok(determine_real_grading(&grading, &sl_form(cat, r)?).is_some())
                    });
                    f.reps.iter().zip(hits).filter_map(|(r, h)| h.map(|h| h.then(|| r.clone())).transpose()).collect::<Result<_>>()?
                }
                (_, Some(c)) => c.realised_by.get(&(f.name.clone(), g.to_string())).cloned().unwrap_or_default(),
                (_, None) => unreachable!(),
            };
            let expect = listed(g);
            let details = if via.is_empty() { "not determined".to_string() } else { format!("determined via {}", via.join(",")) };
            let claim = if expect {
                format!("{g} determines a fine grading of {}", f.name)
            } else {
                format!("{g} does not determine a fine grading of {}", f.name)
            };
            out.push(Check::new(format!("realform.{}.{g}.determined", f.name), claim, expect != via.is_empty(), details));
        }
        if f.family == Family::Sl && wanted("gamma2") {
            let kind = obstruction_kind(cat, &f.name)?;
            let expect = listed("gamma2");
            out.push(Check::from_result(
                format!("realform.{}.gamma2.obstruction", f.name),
                format!("exhaustive phase search for gamma2 on {} {}", f.name, if expect { "finds a witness" } else { "is empty" }),
                gamma2_witnesses(cat, kind),
                |ws| {
                    let matches_rep = ws.iter().any(|w| {
                        f.reps.iter().any(|r| {
                            cat.rep(r).is_ok_and(|rep| w.matrix.ratio_to(rep.antiaut.matrix()).is_some_and(|q| q.is_real()))
                        })
                    });
                    let ok = if expect { matches_rep } else { ws.is_empty() };
                    (ok, format!("{} witnesses", ws.len()))
                },
            ));
        }
    }

    for s in cat.subforms.iter().filter(|s| wanted(&s.grading) && forms.iter().any(|f| f.name == s.form)) {
        let r = (|| -> Result<(Signature, Signature)> {
            let k = cat.matrix(&s.k_name)?;
            let rf = fixed_points(&cat.rep(&s.rep)?.antiaut, &crate::displayed::form_subalgebra(k))?;
            Ok((rf.killing_signature()?, real_form(cat, &s.form)?.killing_signature()?))
        })();
        out.push(Check::from_result(
            format!("realform.{}.{}.subform.{}", s.form, s.grading, s.rep),
            format!("{} is the fixed set of {} in the form subalgebra of {}", s.form, s.rep, s.k_name),
            r,
            |(got, want)| {
                let name = cat
                    .realforms
                    .iter()
                    .filter(|f| f.family == cat.realform(&s.form).map(|x| x.family).unwrap_or(Family::Sl))
                    .find(|f| real_form(cat, &f.name).and_then(|rf| rf.killing_signature()).is_ok_and(|k| k == *got))
                    .map(|f| f.name.as_str())
                    .unwrap_or("unknown");
                (got == want, format!("Killing signature {got}, identified as {name}"))
            },
        ));
    }
    Ok(out)
}

fn realpart_checks(cat: &Catalog) -> Result<Vec<Check>> {
    let mut out = vec![Check::from_result(
        "realparts.relations".into(),
        "real part of g2 and conjugated real part of g8 lie properly inside g7".into(),
        verify_realpart_relations(cat),
        |r| {
            (
                r.holds(),
                format!(
                    "|g7|={}, |g2R|={}, |g8R|={}, Inner(Q) real spectrum: {}",
                    r.g7_order, r.g2r_order, r.g8r_order, r.inner_q_real
                ),
            )
        },
    )];
    let mut jobs = Vec::new();
    for row in &cat.madreal {
        for g in &row.groups {
            jobs.push((row.form.clone(), g.clone()));
        }
    }
    let agreement = par_map(&jobs, |(form, gname)| {
        let r = (|| -> Result<bool> {
            let rp = cat.realpart(gname)?;
            let mad = rp.parent.as_deref().ok_or_else(|| Error::UnknownName(gname.clone()))?;
            let spec = cat.gradings.iter().find(|g| g.mad == mad).ok_or_else(|| Error::UnknownName(mad.into()))?;
            let t = cat
                .coefficient_tables
                .iter()
                .find(|t| t.grading == spec.name && cat.form_of_rep(&t.rep).is_ok_and(|f| f.name == *form))
                .ok_or_else(|| Error::UnknownName(format!("{form} on {}", spec.name)))?;
            let rf = sl_form(cat, &t.rep)?;
            let g = spec.grading();
            let via_mad = mad_eigendecompose(&rf, &rp.generators(), &g)?;
            Ok(determine_real_grading(&g, &rf).is_some_and(|d| same_partition(&via_mad, &d)))
        })();
        Check::from_result(
            format!("realparts.agreement.{form}.{gname}"),
            format!("eigenspaces of {gname} on {form} give the intersected grading"),
            r,
            |ok| (*ok, String::new()),
        )
    });
    out.extend(agreement);
    Ok(out)
}

fn count_checks(c: &RealGradingCount, cat: &Catalog) -> Vec<Check> {
    [("sl", c.sl), ("sp", c.sp), ("o", c.o), ("total", c.total)]
        .into_iter()
        .map(|(key, got)| {
            let want = cat.expected(key);
            let claim = match want {
                Some(w) => format!("{key} count is {w}"),
                None => format!("{key} count"),
            };
            Check::new(format!("count.{key}"), claim, want == Some(got), format!("{key} = {got}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_catalog;

    #[test]
    fn markdown_lists_every_check() {
        let r = Report::from_checks(vec![
            Check::new("b", "claim b", false, "x|y"),
            Check::new("a", "claim a", true, ""),
        ]);
        assert_eq!(r.checks[0].check_id, "a");
        let md = r.to_markdown();
        assert!(md.contains("1/2 checks pass"));
        assert!(md.contains("x\\|y"));
        assert!(!r.passed());
    }

    #[test]
    fn grading_scope() {
        let cat = load_catalog().unwrap();
        let r = verify(cat, &Scope::Grading(Some("gamma7".into()))).unwrap();
        assert!(r.passed());
        assert_eq!(r.get("grading.gamma7.universal_group").unwrap().details, "Z_2^5");
        assert!(matches!(verify(cat, &Scope::Grading(Some("gamma9".into()))), Err(Error::UnknownName(_))));
    }

    #[test]
    fn expected_negative_is_a_pass() {
        let cat = load_catalog().unwrap();
        let scope = Scope::RealForm { name: Some("su40".into()), grading: Some("gamma2".into()) };
        let r = verify(cat, &scope).unwrap();
        let c = r.get("realform.su40.gamma2.determined").unwrap();
        assert_eq!(c.details, "not determined");
        assert!(r.passed(), "{r:?}");
    }
}
