use higherar::complete::{build_m, e_chain, structural_suite, verify_catalogue, DEFAULT_SLICE_CAP};
use higherar::exactla::PrimeField;
use higherar::knit::{classify_modules, enumerate_indecomposables, tag_counts, DEFAULT_KNIT_CAP};
use higherar::quivalg::named::a2;
use higherar::quivalg::tensor_algebra;
use higherar::repmod::grid;
use higherar::seqcat::d_almost_split;
use higherar::tensorops::ass_via_cone;

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

#[test]
fn a2_times_a2() {
    let f = PrimeField::new(32003);
    let a = a2(&f);
    let t = tensor_algebra(&a, &a).unwrap();
    let ca = build_m(&a, 1, DEFAULT_SLICE_CAP, 7).unwrap();
    let cat = build_m(&t, 2, DEFAULT_SLICE_CAP, 7).unwrap();

    let tg: Vec<String> = cat.t_parts().iter().map(grid).collect();
    assert_eq!(sorted(tg), sorted(["0010", "1111", "0101", "1100"].map(String::from).to_vec()));
    assert_eq!(sorted(cat.labels()), sorted(["0010", "1111", "0101", "1100", "0100"].map(String::from).to_vec()));

    let v = verify_catalogue(&cat).unwrap();
    assert!(v.d_complete && v.acyclic.ok && !v.d_rep_finite, "{v:?}");

    // One 2-almost split sequence, ending at the simple injective.
    let m_p = cat.m_p();
    assert_eq!(m_p.len(), 1);
    assert_eq!(cat.members[m_p[0]].label, "0100");
    let direct = d_almost_split(&cat.ctx, m_p[0], 2).unwrap();
    let terms: Vec<Vec<String>> = (0..=3)
        .map(|k| sorted(direct.decomposition(k).unwrap().parts.iter().map(|p| grid(&p.rep)).collect()))
        .collect();
    assert_eq!(terms, vec![vec!["0100"], vec!["0101", "1100"], vec!["1111"], vec!["0010"]]);
    let y = ca.m_p()[0];
    assert!(ass_via_cone(&ca, y, &ca, y, &cat).unwrap().isomorphic);

    let s = structural_suite(&cat).unwrap();
    assert!(s.all_ok(), "{s:?}");
    let e = e_chain(&cat).unwrap();
    assert!(e.reached_t && e.tilting && e.rigid.iter().all(|c| c.ok));

    assert_eq!(cat.arrows().unwrap().len(), 5);
}

// The displayed AR quiver repeats two dimension vectors; the enumeration
// has 11 modules. rad P for P = 1111 is outside T^⊥ (Ext^1(0101, 1011) = 1),
// so only P/soc P lies in T^⊥ outside 𝓜.
#[test]
fn a2_times_a2_classification() {
    let f = PrimeField::new(32003);
    let a = a2(&f);
    let t = tensor_algebra(&a, &a).unwrap();
    let cat = build_m(&t, 2, DEFAULT_SLICE_CAP, 7).unwrap();
    let q = enumerate_indecomposables(&t, DEFAULT_KNIT_CAP, 7).unwrap();
    assert_eq!(q.modules.len(), 11);
    let c = classify_modules(&q, &cat).unwrap();
    assert_eq!(tag_counts(&c), [4, 1, 1, 5]);
}
