use finegrad::abelian::isomorphic;
use finegrad::catalog::load_catalog;
use finegrad::gradings::{eigenlabel_certificate, product_table, universal_group_of, verify_direct_sum};
use finegrad::maps::eigenvalue_on;

#[test]
fn all_eight_gradings_close_and_carry_their_groups() {
    let cat = load_catalog().unwrap();
    for spec in &cat.gradings {
        let g = spec.grading();
        verify_direct_sum(&g).unwrap_or_else(|e| panic!("{}: {e}", spec.name));
        let table = product_table(&g).unwrap_or_else(|e| panic!("{}: {e}", spec.name));
        let gens = cat.madgroup(&spec.mad).unwrap().generators();
        eigenlabel_certificate(&g, &gens).unwrap_or_else(|e| panic!("{}: {e}", spec.name));
        let u = universal_group_of(&g, &table);
        assert!(u.is_group_grading, "{}", spec.name);
        assert!(isomorphic(&u.group, &spec.claimed_group), "{}: {} vs {}", spec.name, u.group, spec.claimed_group);
    }
}

#[test]
fn real_parts_act_with_real_spectrum_on_their_gradings() {
    let cat = load_catalog().unwrap();
    for rp in cat.realparts.iter().filter(|r| r.conjugated_by.is_none()) {
        let parent = cat.madgroup(rp.parent.as_deref().unwrap()).unwrap();
        let g = cat.gradings.iter().find(|g| g.mad == parent.name).unwrap().grading();
        for h in rp.generators() {
            for p in &g.parts {
                let l = eigenvalue_on(&h, p).unwrap_or_else(|e| panic!("{}: {e}", rp.name));
                assert!(l.is_real(), "{}: eigenvalue {l}", rp.name);
            }
        }
    }
}
