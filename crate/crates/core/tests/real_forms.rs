use finegrad::catalog::{load_catalog, Family};
use finegrad::exact::gq;
use finegrad::gradings::{product_table, verify_direct_sum};
use finegrad::maps::{generate_group, Antiautomorphism, AutKind, Automorphism};
use finegrad::mat::{Mat4, Signature};
use finegrad::realforms::*;

#[test]
fn coefficient_tables_verify_and_close_over_q() {
    let cat = load_catalog().unwrap();
    for t in &cat.coefficient_tables {
        let real = match verify_coefficient_table(cat, t) {
            Ok(real) => real,
            Err(e) => {
                // the cataloged su(3,1) multiplier for X7 on gamma8 is real; the fixed-point condition needs i
                assert_eq!((t.grading.as_str(), t.rep.as_str()), ("gamma8", "e31_2"));
                assert_eq!(e, finegrad::error::Error::MultiplierInvalid(6));
                let mut fixed = t.clone();
                fixed.multipliers[6] = gq("i");
                verify_coefficient_table(cat, &fixed).unwrap()
            }
        };
        let rf = sl_form(cat, &t.rep).unwrap();
        let det = determine_real_grading(&cat.grading(&t.grading).unwrap().grading(), &rf).unwrap();
        assert!(same_partition(&det, &real));
        verify_direct_sum(&real).unwrap();
        product_table(&real).unwrap();
        // structure constants are real rationals: brackets of real-span vectors stay in the real span
        for p in &real.parts {
            for q in &real.parts {
                let b = finegrad::mat::bracket(&p.basis()[0], &q.basis()[0]);
                assert!(real.parent.contains(&b));
            }
        }
    }
}

#[test]
fn wrong_multiplier_is_located() {
    let cat = load_catalog().unwrap();
    let mut t = cat.coefficient_table("gamma3", "e40_1").unwrap().clone();
    t.multipliers[4] = gq("1");
    assert_eq!(verify_coefficient_table(cat, &t).unwrap_err(), finegrad::error::Error::MultiplierInvalid(4));
}

#[test]
fn killing_signatures_identify_the_twelve_forms() {
    let cat = load_catalog().unwrap();
    let expect = [
        ("sl4r", 9, 6),
        ("sustar4", 5, 10),
        ("su40", 0, 15),
        ("su31", 6, 9),
        ("su22", 8, 7),
        ("sp4r", 6, 4),
        ("usp40", 0, 10),
        ("usp22", 4, 6),
        ("sostar4", 2, 4),
        ("so40", 0, 6),
        ("so31", 3, 3),
        ("so22", 4, 2),
    ];
    for (name, p, n) in expect {
        let rf = real_form(cat, name).unwrap();
        assert_eq!(rf.killing_signature().unwrap(), Signature::new(p, 0, n), "{name}");
    }
    for f in cat.realforms.iter().filter(|f| f.family == Family::Sl) {
        let want = real_form(cat, &f.name).unwrap().killing_signature().unwrap();
        for r in &f.reps {
            assert_eq!(sl_form(cat, r).unwrap().killing_signature().unwrap(), want, "{r}");
        }
    }
}

#[test]
fn intersection_list_is_reproduced() {
    let cat = load_catalog().unwrap();
    let count = count_real_gradings(cat).unwrap();
    let sp4r = real_form(cat, "sp4r").unwrap().killing_signature().unwrap();
    let mut mismatched = Vec::new();
    for s in &cat.subforms {
        let k = cat.matrix(&s.k_name).unwrap();
        let d = cat.displayed_for(cat.realform(&s.form).unwrap().family, &s.grading).unwrap();
        assert_eq!(&d.k, k);
        let rf = fixed_points(&cat.rep(&s.rep).unwrap().antiaut, &finegrad::displayed::form_subalgebra(k)).unwrap();
        let canonical = real_form(cat, &s.form).unwrap();
        let sig = rf.killing_signature().unwrap();
        if sig != canonical.killing_signature().unwrap() {
            assert_eq!(sig, sp4r);
            mismatched.push((s.form.as_str(), s.grading.as_str(), s.rep.as_str()));
            continue;
        }
        let key = (s.form.clone(), s.grading.clone());
        let reps = count.realised_by.get(&key).unwrap_or_else(|| panic!("{key:?} missing"));
        assert!(reps.contains(&s.rep), "{key:?} via {} not among {reps:?}", s.rep);
    }
    // sp_J meets su(E3) in sp(4,R), not usp(2,2)
    assert_eq!(mismatched, [("usp22", "gamma5", "e22_3"), ("usp22", "gamma6", "e22_3")]);
    let gamma6 = &count.realised_by[&("usp22".to_string(), "gamma6".to_string())];
    assert!(gamma6.contains(&"fstar_1".to_string()));
    assert!(!count.pairs.contains(&("usp22".to_string(), "gamma5".to_string())));
}

#[test]
fn recount_finds_forty_three() {
    let cat = load_catalog().unwrap();
    let c = count_real_gradings(cat).unwrap();
    assert_eq!((c.sl, c.sp, c.o, c.total), (23, 6, 14, 43));
    assert_eq!(cat.expected("sl"), Some(23));
    assert_eq!(cat.expected("o"), Some(14));
    assert_eq!(cat.expected("total"), Some(44));
    let missing = ("usp22".to_string(), "gamma5".to_string());
    let listed: std::collections::BTreeSet<(String, String)> = cat
        .coefficient_tables
        .iter()
        .map(|t| (cat.form_of_rep(&t.rep).unwrap().name.clone(), t.grading.clone()))
        .chain(cat.subforms.iter().map(|s| (s.form.clone(), s.grading.clone())))
        .collect();
    assert!(listed.contains(&missing));
    let computed: std::collections::BTreeSet<_> = c.pairs.iter().cloned().chain([missing]).collect();
    assert_eq!(listed, computed);
}

#[test]
fn gamma2_search() {
    let cat = load_catalog().unwrap();
    assert_eq!(gamma2_obstruction(cat, ObstructionKind::Circular).unwrap(), None);
    assert_eq!(gamma2_obstruction(cat, ObstructionKind::Anticircular).unwrap(), None);
    assert_eq!(gamma2_obstruction(cat, ObstructionKind::Hermitian(Signature::new(4, 0, 0))).unwrap(), None);
    for (sig, rep) in [(Signature::new(3, 0, 1), "e31_3"), (Signature::new(2, 0, 2), "e22_4")] {
        let ws = gamma2_witnesses(cat, ObstructionKind::Hermitian(sig)).unwrap();
        let e = cat.rep(rep).unwrap().antiaut.matrix();
        assert!(ws.iter().any(|w| w.matrix.ratio_to(e).is_some_and(|r| r.is_real())), "{rep}");
        assert!(ws.iter().all(|w| w.signature.is_some_and(|s| s == sig || s.flipped() == sig)));
    }
    let cases = gamma2_cases(cat).unwrap();
    assert_eq!(cases.len(), 32);
    for c in &cases {
        match c.kind.as_str() {
            "ConjInner" => assert_eq!(c.complex_dim, 0),
            _ => assert_eq!((c.complex_dim, c.hermitian_dim), (1, 1)),
        }
    }
}

#[test]
fn real_part_relations() {
    let cat = load_catalog().unwrap();
    let r = verify_realpart_relations(cat).unwrap();
    eprintln!("{r:?}");
    assert!(r.holds());
}

#[test]
fn mad_and_fundamental_methods_agree() {
    let cat = load_catalog().unwrap();
    for row in &cat.madreal {
        for gname in &row.groups {
            let rp = cat.realpart(gname).unwrap();
            let mad = rp.parent.as_deref().unwrap();
            let spec = cat.gradings.iter().find(|g| g.mad == mad).unwrap();
            let t = cat
                .coefficient_tables
                .iter()
                .find(|t| t.grading == spec.name && cat.form_of_rep(&t.rep).unwrap().name == row.form)
                .unwrap_or_else(|| panic!("{} {}", row.form, spec.name));
            let rf = sl_form(cat, &t.rep).unwrap();
            let g = spec.grading();
            let via_mad = mad_eigendecompose(&rf, &rp.generators(), &g)
                .unwrap_or_else(|e| panic!("{} {gname}: {e}", row.form));
            let via_meet = determine_real_grading(&g, &rf).unwrap();
            assert!(same_partition(&via_mad, &via_meet), "{} {gname}", row.form);
        }
    }
}

#[test]
fn real_basis_method() {
    let cat = load_catalog().unwrap();
    let g3 = cat.grading("gamma3").unwrap().grading();
    let out = Automorphism::outer(Mat4::identity()).unwrap();
    let w = real_basis_witness(&g3, &out, cat.madgroup("g3").unwrap()).unwrap().unwrap();
    let rf = sl_form(cat, "e40_1").unwrap();
    assert!(same_partition(&w, &determine_real_grading(&g3, &rf).unwrap()));

    let g7 = cat.grading("gamma7").unwrap().grading();
    let s2 = finegrad::mat::tensor(&finegrad::mat::sigma(2), &finegrad::mat::sigma(2));
    let h = Automorphism::inner(s2).unwrap();
    let w = real_basis_witness(&g7, &h, cat.madgroup("g7").unwrap()).unwrap().unwrap();
    assert_eq!(w.parts.len(), 15);

    let g1 = cat.grading("gamma1").unwrap().grading();
    assert!(real_basis_witness(&g1, &out, cat.madgroup("g1").unwrap()).unwrap().is_none());
}

#[test]
fn real_basis_agrees_with_fundamental_on_every_finite_group_element() {
    let cat = load_catalog().unwrap();
    for spec in &cat.gradings {
        let g = spec.grading();
        if !g.parts.iter().flat_map(|p| p.basis()).all(Mat4::is_real) {
            continue;
        }
        let mad = cat.madgroup(&spec.mad).unwrap();
        if !mad.finite {
            continue;
        }
        for h in generate_group(&mad.generators(), 4096).unwrap() {
            let Ok(j) = Antiautomorphism::from_aut(&h) else { continue };
            let w = real_basis_witness(&g, &h, mad).unwrap().unwrap();
            let rf = fixed_points(&j, &finegrad::subspace::sl4()).unwrap();
            let d = determine_real_grading(&g, &rf).expect("real-basis witness implies determination");
            assert!(same_partition(&w, &d), "{} {:?}", spec.name, h.kind() == AutKind::Inner);
        }
        // an automorphism outside the group gives nothing
        let h = Automorphism::inner(Mat4::from_ints([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])).unwrap();
        assert!(real_basis_witness(&g, &h, mad).unwrap().is_none());
    }
}

#[test]
fn gamma5_never_yields_usp22_on_sp_k0() {
    let cat = load_catalog().unwrap();
    let g5 = cat.grading("gamma5").unwrap().grading();
    let k0 = cat.matrix("K0").unwrap();
    let sub = finegrad::displayed::displayed_subgrading(&g5, k0).unwrap();
    let parent = finegrad::displayed::form_subalgebra(k0);
    let c5 = cat.matrix("C5").unwrap();
    let units = ["1", "-1", "i", "-i", "3/5+4/5*i", "5/13-12/13*i"].map(gq);
    let mut realised = std::collections::BTreeSet::new();
    for a in &units {
        for b in &units {
            let d = Mat4::diag([a.clone(), a.try_inv().unwrap(), b.clone(), b.try_inv().unwrap()]);
            let hs = [Automorphism::inner(d.clone()), Automorphism::outer(&d * c5), Automorphism::outer(c5 * &d)];
            for h in hs.into_iter().map(Result::unwrap) {
                let Ok(j) = Antiautomorphism::from_aut(&h) else { continue };
                let Ok(rf) = fixed_points(&j, &parent) else { continue };
                if determine_real_grading(&sub, &rf).is_some() {
                    realised.insert(rf.killing_signature().unwrap());
                }
            }
        }
    }
    assert_eq!(realised.into_iter().collect::<Vec<_>>(), [Signature::new(6, 0, 4)]);
}
