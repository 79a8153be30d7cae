//! The category 𝓜, its slices and `T`, and the verifier for conditions
//! (A), (B), (C) of d-completeness.

mod catalogue;
mod directed;
mod verify;

pub use catalogue::{build_m, MCatalogue, Member, TauImage, DEFAULT_SLICE_CAP};
pub use directed::{directedness_report, DirectednessReport};
pub use verify::{
    e_chain, e_step, is_tilting, perp_membership, structural_suite, verify_catalogue, verify_conditions, Check, EChain,
    StructuralReport, TiltingReport, Verdict,
};

use crate::error::Result;
use crate::exactla::Field;
use crate::quivalg::Alg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub homogeneous: Option<usize>,
    pub d_rep_finite: bool,
    pub d_cocomplete: bool,
}

/// Homogeneity and representation-finiteness from a verdict, and
/// cocompleteness as completeness of the opposite algebra.
pub fn classify_algebra<F: Field>(alg: &Alg<F>, verdict: &Verdict, cap: usize, seed: u64) -> Result<Classification> {
    let (op, _) = verify_conditions(&alg.opposite(), verdict.d, cap, seed)?;
    Ok(Classification { homogeneous: verdict.homogeneous, d_rep_finite: verdict.d_rep_finite, d_cocomplete: op.d_complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::quivalg::named::*;
    use crate::quivalg::tensor_algebra;
    use crate::repmod::{grid, Rep};

    fn gf() -> PrimeField {
        PrimeField::new(32003)
    }

    fn sorted(v: Vec<String>) -> Vec<String> {
        let mut v = v;
        v.sort();
        v
    }

    #[test]
    fn semisimple_has_one_slice() {
        let alg = semisimple(&gf(), 3);
        let cat = build_m(&alg, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        assert_eq!(cat.slice_sizes(), vec![3]);
        assert_eq!(cat.t_indices().len(), 3);
        let v = verify_catalogue(&cat).unwrap();
        assert!(v.d_complete && v.d_rep_finite);
        assert_eq!(v.homogeneous, Some(1));
    }

    #[test]
    fn factor_orbit_lengths() {
        let f = gf();
        let a2c = build_m(&a2(&f), 1, DEFAULT_SLICE_CAP, 1).unwrap();
        assert_eq!(a2c.orbit_lengths, vec![1, 2]);
        let a3 = build_m(&a3_linear(&f), 1, DEFAULT_SLICE_CAP, 1).unwrap();
        let mut l = a3.orbit_lengths.clone();
        l.sort();
        assert_eq!(l, vec![1, 2, 3]);
        assert_eq!(a3.len(), 6);
        let d4 = build_m(&d4_subspace(&f), 1, DEFAULT_SLICE_CAP, 1).unwrap();
        assert_eq!(d4.homogeneous(), Some(3));
        assert_eq!(d4.slice_sizes(), vec![4, 4, 4]);
        let bip = build_m(&a3_bipartite(&f), 1, DEFAULT_SLICE_CAP, 1).unwrap();
        assert_eq!(bip.homogeneous(), Some(2));
    }

    #[test]
    fn square_catalogue() {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let cat = build_m(&t, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        assert_eq!(sorted(cat.labels()), sorted(vec!["0010".into(), "1111".into(), "0101".into(), "1100".into(), "0100".into()]));
        let tl: Vec<String> = cat.t_parts().iter().map(grid).collect();
        assert_eq!(sorted(tl), sorted(vec!["0010".into(), "1111".into(), "0101".into(), "1100".into()]));
        let v = verify_catalogue(&cat).unwrap();
        assert!(v.d_complete, "{v:?}");
        assert!(!v.d_rep_finite);
        assert!(v.acyclic.ok && v.c_zero.ok);
        let s = structural_suite(&cat).unwrap();
        assert!(s.all_ok(), "{s:?}");
        assert_eq!(s.sequence_count, 1);
        let e = e_chain(&cat).unwrap();
        assert!(e.reached_t && e.tilting);
        assert_eq!(e.steps.len(), 2);
        assert!(e.rigid.iter().all(|c| c.ok));
    }

    #[test]
    fn tilting_rejects_non_rigid_summand() {
        let alg = a2(&gf());
        let parts = vec![Rep::projective(&alg, 0), Rep::projective(&alg, 1)];
        let r = is_tilting(&parts, 2, 1).unwrap();
        assert!(r.is_tilting());
        assert_eq!(r.coresolution.len(), 1);
        let mut bad = parts.clone();
        bad.push(Rep::simple(&alg, 1));
        let r = is_tilting(&bad, 2, 1).unwrap();
        assert_eq!(r.ext_failure.map(|e| e.0), Some(1));
        // Not tilting: too few summands to coresolve Λ.
        let r = is_tilting(&[Rep::projective(&alg, 1)], 2, 1).unwrap();
        assert!(!r.is_tilting());
    }

    #[test]
    fn square_is_cocomplete() {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let (v, _) = verify_conditions(&t, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        let c = classify_algebra(&t, &v, DEFAULT_SLICE_CAP, 1).unwrap();
        assert!(c.d_cocomplete);
        assert_eq!(c.homogeneous, None);
    }

    #[test]
    fn square_m_quiver() {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let cat = build_m(&t, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        let l = cat.labels();
        let mut arrows: Vec<(String, String)> = cat
            .arrows()
            .unwrap()
            .into_iter()
            .map(|(x, y, m)| {
                assert_eq!(m, 1);
                (l[x].clone(), l[y].clone())
            })
            .collect();
        arrows.sort();
        let want = [("0010", "1111"), ("0101", "0100"), ("1100", "0100"), ("1111", "0101"), ("1111", "1100")];
        assert_eq!(arrows, want.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>());
    }
}
