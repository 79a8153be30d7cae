use higherar::complete::{build_m, e_chain, structural_suite, verify_catalogue, DEFAULT_SLICE_CAP};
use higherar::exactla::PrimeField;
use higherar::quivalg::named::{a3_linear, d4_subspace};
use higherar::quivalg::tensor_algebra;
use higherar::repmod::tensor_rep;
use higherar::tensorops::{ass_via_cone, homogeneity_transfer_check, tau_tensor_check};

#[test]
fn d4_times_a3() {
    let f = PrimeField::new(32003);
    let (a, b) = (d4_subspace(&f), a3_linear(&f));
    let t = tensor_algebra(&a, &b).unwrap();
    let ca = build_m(&a, 1, DEFAULT_SLICE_CAP, 3).unwrap();
    let cb = build_m(&b, 1, DEFAULT_SLICE_CAP, 3).unwrap();
    let cat = build_m(&t, 2, DEFAULT_SLICE_CAP, 3).unwrap();
    assert_eq!(cat.len(), 24);
    assert_eq!(cat.slice_sizes(), vec![12, 8, 4]);
    assert_eq!(cat.t_indices().len(), 12);
    assert_eq!(ca.homogeneous(), Some(3));
    let mut l = cb.orbit_lengths.clone();
    l.sort();
    assert_eq!(l, vec![1, 2, 3]);

    let v = verify_catalogue(&cat).unwrap();
    assert!(v.d_complete, "{v:?}");
    assert!(!v.d_rep_finite);
    assert!(v.acyclic.ok && v.c_zero.ok);

    let s = structural_suite(&cat).unwrap();
    assert!(s.all_ok(), "{s:?}");
    assert_eq!(s.sequence_count, 12);

    let e = e_chain(&cat).unwrap();
    assert!(e.reached_t && e.tilting && e.rigid.iter().all(|c| c.ok));

    let h = homogeneity_transfer_check(&ca, &cb, &cat).unwrap();
    assert!(!h.t_is_tensor && h.consistent());

    // Every member is X ⊗ Y with X, Y in the factor catalogues, and τ_2
    // splits over the factors.
    let mut found = 0;
    for x in &ca.members {
        for y in &cb.members {
            let xy = tensor_rep(&x.rep, &y.rep, &t).unwrap();
            if cat.index_of(&xy).unwrap().is_some() {
                found += 1;
                assert!(tau_tensor_check(&x.rep, &y.rep, 1, 1, &t, 3).unwrap());
            }
        }
    }
    assert_eq!(found, 24);

    for i in 0..2 {
        for &ya in ca.m_p().iter().filter(|&&y| ca.members[y].slice == i) {
            for &yb in cb.m_p().iter().filter(|&&y| cb.members[y].slice == i) {
                let r = ass_via_cone(&ca, ya, &cb, yb, &cat).unwrap();
                assert!(r.isomorphic);
            }
        }
    }
}
