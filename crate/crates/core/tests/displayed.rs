use std::collections::BTreeSet;

use finegrad::catalog::{load_catalog, Family};
use finegrad::displayed::{certify_nongroup_refinement, displayed_indices, displayed_subgrading, out_k};
use finegrad::gradings::product_table;
use finegrad::maps::{eigenvalue_on, Automorphism};

#[test]
fn displayed_selections_match_catalog() {
    let cat = load_catalog().unwrap();
    for d in &cat.displayed {
        let g = cat.grading(&d.source).unwrap().grading();
        let got: BTreeSet<usize> = displayed_indices(&g, &d.k).unwrap().into_iter().collect();
        let want: BTreeSet<usize> = d.selected_parts.iter().copied().collect();
        assert_eq!(got, want, "{} {}", d.source, d.k_name);
        let sub = displayed_subgrading(&g, &d.k).unwrap();
        let dim = if d.family == Family::Sp { 10 } else { 6 };
        assert_eq!(sub.total_dim(), dim);
        product_table(&sub).unwrap();
    }
}

#[test]
fn selected_vectors_satisfy_the_form_rule_and_others_fail() {
    let cat = load_catalog().unwrap();
    for d in &cat.displayed {
        let spec = cat.grading(&d.source).unwrap();
        for (j, part) in spec.parts.iter().enumerate() {
            for x in &part.basis {
                let holds = (x * &d.k) == (-&(&d.k * &x.transpose()));
                assert_eq!(holds, d.selected_parts.contains(&j), "{} L{}", d.source, j + 1);
            }
        }
    }
}

#[test]
fn out_k_is_in_the_mad_group_exactly_when_it_displays() {
    let cat = load_catalog().unwrap();
    for d in &cat.displayed {
        let g = cat.grading(&d.source).unwrap().grading();
        let h = Automorphism::outer(d.k.clone()).unwrap();
        let kinv = d.k.inverse().unwrap();
        for p in &g.parts {
            let l = eigenvalue_on(&h, p).unwrap();
            assert!(l == finegrad::exact::gq("1") || l == finegrad::exact::gq("-1"));
            for b in p.basis() {
                assert_eq!(h.apply(b), out_k(&d.k, &kinv, b));
            }
        }
    }
    let g1 = cat.grading("gamma1").unwrap().grading();
    for k in ["K0", "K1", "K2", "K3"] {
        assert!(displayed_subgrading(&g1, cat.matrix(k).unwrap()).is_err(), "{k}");
    }
}

#[test]
fn gamma5_o_refinement_is_not_a_group_grading() {
    let cat = load_catalog().unwrap();
    let c = certify_nongroup_refinement(cat).unwrap();
    assert!(c.unsplit_is_group);
    assert_eq!(c.unsplit_parts, 5);
    assert_eq!(c.split_parts, 6);
    assert!(c.split_closes && c.split_is_refinement);
    assert!(!c.split_is_group);
    assert!(!c.collisions.is_empty());
    assert!(c.holds());
}
