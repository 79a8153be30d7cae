//! Tensor products of complexes and chain maps over `A ⊗ B`, Künneth
//! checks, and the tensor constructions of sequences in 𝓜(A ⊗ B).
//!
//! Sign convention: `d(x ⊗ y) = dx ⊗ y + (−1)^p x ⊗ dy` for `x` in degree
//! `p`. Summands of a total term are ordered by `p` ascending.

use crate::complete::MCatalogue;
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::homolog::{ext_dim, tau_d};
use crate::quivalg::Alg;
use crate::repmod::{grid, is_isomorphic, rad_top, tensor_rep, Decomposition, DirectSum, Rep, RepMap};
use crate::seqcat::{
    check_functor_exactness, complex_isomorphism, d_almost_split, sink_sequence, slice_split, source_sequence,
    verify_almost_split, ComplexMap, ComplexOfReps, SequenceCheck, Side, SliceSplit,
};

pub use crate::seqcat::mapping_cone as cone;

pub const SIGN_CONVENTION: &str = "d(x⊗y) = dx⊗y + (-1)^p x⊗dy, p = degree of x";

/// `X_• ⊗ Y_•` with the bidegree of every summand of every total term.
#[derive(Clone, Debug)]
pub struct TotalComplex<F: Field> {
    pub left: ComplexOfReps<F>,
    pub right: ComplexOfReps<F>,
    pub total: ComplexOfReps<F>,
    pub sums: Vec<DirectSum<F>>,
    pub bidegrees: Vec<Vec<(i64, i64)>>,
}

fn bidegrees(xl: i64, xh: i64, yl: i64, yh: i64, k: i64) -> Vec<(i64, i64)> {
    (xl.max(k - yh)..=xh.min(k - yl)).map(|p| (p, k - p)).collect()
}

fn sign<F: Field>(f: &F, p: i64) -> F::Elem {
    if p.rem_euclid(2) == 0 {
        f.one()
    } else {
        f.neg(&f.one())
    }
}

fn dec_or_empty<F: Field>(c: &ComplexOfReps<F>, k: i64) -> Option<Decomposition<F>> {
    let t = c.term(k);
    if t.is_zero() {
        Some(Decomposition { module: t, parts: vec![], classes: vec![] })
    } else {
        c.decomposition(k).cloned()
    }
}

pub fn tensor_complex<F: Field>(x: &ComplexOfReps<F>, y: &ComplexOfReps<F>, over: &Alg<F>) -> Result<TotalComplex<F>> {
    let f = over.field();
    if x.is_empty() || y.is_empty() {
        let total = ComplexOfReps::new(over, 0, vec![], vec![])?;
        return Ok(TotalComplex { left: x.clone(), right: y.clone(), total, sums: vec![], bidegrees: vec![] });
    }
    let (xl, xh, yl, yh) = (x.low, x.high(), y.low, y.high());
    let (low, high) = (xl + yl, xh + yh);
    let mut sums = Vec::new();
    let mut bideg = Vec::new();
    for k in low..=high {
        let idx = bidegrees(xl, xh, yl, yh, k);
        let parts: Vec<Rep<F>> = idx.iter().map(|&(p, q)| tensor_rep(&x.term(p), &y.term(q), over)).collect::<Result<_>>()?;
        sums.push(DirectSum::new(over, &parts));
        bideg.push(idx);
    }
    let mut diffs = Vec::new();
    for k in low + 1..=high {
        let (si, ti) = ((k - low) as usize, (k - 1 - low) as usize);
        let (src_idx, tgt_idx) = (&bideg[si], &bideg[ti]);
        let mut err = None;
        let d = DirectSum::matrix_map(&sums[si], &sums[ti], |i, j| {
            let (p, q) = src_idx[j];
            let (p2, q2) = tgt_idx[i];
            let r = if p2 == p - 1 && q2 == q {
                x.diff(p).tensor(&RepMap::identity(&y.term(q)), over)
            } else if p2 == p && q2 == q - 1 {
                RepMap::identity(&x.term(p)).tensor(&y.diff(q), over).map(|m| m.scale(&sign(f, p)))
            } else {
                return None;
            };
            match r {
                Ok(m) => Some(m),
                Err(e) => {
                    err = Some(e);
                    None
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        diffs.push(d);
    }
    let terms = sums.iter().map(|s| s.sum.clone()).collect();
    let mut total = ComplexOfReps::new(over, low, terms, diffs)?;
    for i in 0..bideg.len() {
        let mut decs = Vec::new();
        for &(p, q) in &bideg[i] {
            match (dec_or_empty(x, p), dec_or_empty(y, q)) {
                (Some(dx), Some(dy)) => decs.push(Decomposition::tensor(&dx, &dy, over)?),
                _ => break,
            }
        }
        if decs.len() == bideg[i].len() {
            let refs: Vec<&Decomposition<F>> = decs.iter().collect();
            total.decomps[i] = Some(Decomposition::of_direct_sum(&sums[i], &refs)?);
        }
    }
    Ok(TotalComplex { left: x.clone(), right: y.clone(), total, sums, bidegrees: bideg })
}

/// `f ⊗ g` between total complexes, block diagonal in the bidegrees.
pub fn tensor_chain_map<F: Field>(
    f: &ComplexMap<F>,
    g: &ComplexMap<F>,
    source: &TotalComplex<F>,
    target: &TotalComplex<F>,
    over: &Alg<F>,
) -> Result<ComplexMap<F>> {
    let (s, t) = (&source.total, &target.total);
    let lo = s.low.min(t.low);
    let hi = s.high().max(t.high());
    let mut maps = Vec::new();
    for k in lo..=hi {
        let (Some(si), Some(ti)) = (index_in(s, k), index_in(t, k)) else {
            maps.push(RepMap::zero(&s.term(k), &t.term(k)));
            continue;
        };
        let (sb, tb) = (&source.bidegrees[si], &target.bidegrees[ti]);
        let mut err = None;
        let m = DirectSum::matrix_map(&source.sums[si], &target.sums[ti], |i, j| {
            if sb[j] != tb[i] {
                return None;
            }
            let (p, q) = sb[j];
            match f.map(p).tensor(&g.map(q), over) {
                Ok(m) => Some(m),
                Err(e) => {
                    err = Some(e);
                    None
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        maps.push(m);
    }
    Ok(ComplexMap { source: s.clone(), target: t.clone(), low: lo, maps })
}

fn index_in<F: Field>(c: &ComplexOfReps<F>, k: i64) -> Option<usize> {
    (k >= c.low && k <= c.high()).then(|| (k - c.low) as usize)
}

/// Vertexwise Künneth identity `H_k(X ⊗ Y) = ⊕_{p+q=k} H_p(X) ⊗ H_q(Y)`
/// in every degree.
pub fn kunneth_homology_check<F: Field>(t: &TotalComplex<F>) -> bool {
    let over = &t.total.alg;
    let tf = over.tensor_factors().expect("tensor algebra");
    let (x, y) = (&t.left, &t.right);
    if x.is_empty() || y.is_empty() {
        return t.total.is_empty();
    }
    (t.total.low..=t.total.high()).all(|k| {
        let h = t.total.homology_dims(k);
        (0..over.vertex_count()).all(|v| {
            let (i, j) = tf.pair(v);
            let expect: usize = bidegrees(x.low, x.high(), y.low, y.high(), k)
                .iter()
                .map(|&(p, q)| x.homology_dims(p)[i] * y.homology_dims(q)[j])
                .sum();
            h[v] == expect
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    /// `(i, dim Ext^i(X_A ⊗ X_B, Y_A ⊗ Y_B), Σ_{p+q=i} dim Ext^p(X_A, Y_A) · dim Ext^q(X_B, Y_B))`.
    pub degrees: Vec<(usize, usize, usize)>,
}

impl KunnethReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|&(_, l, r)| l == r)
    }
}

pub fn kunneth_ext_check<F: Field>(
    xa: &Rep<F>,
    ya: &Rep<F>,
    xb: &Rep<F>,
    yb: &Rep<F>,
    upto: usize,
    over: &Alg<F>,
) -> Result<KunnethReport> {
    let (x, y) = (tensor_rep(xa, xb, over)?, tensor_rep(ya, yb, over)?);
    let ea: Vec<usize> = (0..=upto).map(|i| ext_dim(xa, ya, i)).collect::<Result<_>>()?;
    let eb: Vec<usize> = (0..=upto).map(|i| ext_dim(xb, yb, i)).collect::<Result<_>>()?;
    let mut degrees = Vec::new();
    for i in 0..=upto {
        let lhs = ext_dim(&x, &y, i)?;
        let rhs = (0..=i).map(|p| ea[p] * eb[i - p]).sum();
        degrees.push((i, lhs, rhs));
    }
    Ok(KunnethReport { degrees })
}

/// `τ_{n+m}(X ⊗ Y) ≅ τ_n X ⊗ τ_m Y`.
pub fn tau_tensor_check<F: Field>(x: &Rep<F>, y: &Rep<F>, n: usize, m: usize, over: &Alg<F>, seed: u64) -> Result<bool> {
    let direct = tau_d(&tensor_rep(x, y, over)?, n + m)?;
    let via = tensor_rep(&tau_d(x, n)?, &tau_d(y, m)?, over)?;
    Ok(is_isomorphic(&direct, &via, seed)?.is_some())
}

/// The d-almost split sequence of a catalogue member split at its slice.
pub fn split_sequence<F: Field>(cat: &MCatalogue<F>, y: usize) -> Result<SliceSplit<F>> {
    let seq = d_almost_split(&cat.ctx, y, cat.d)?;
    let i = cat.members[y].slice + 1;
    slice_split(&seq, &|r| cat.slice_of(r), i)
}

#[derive(Clone, Debug)]
pub struct AssViaCone<F: Field> {
    pub cone: ComplexOfReps<F>,
    pub direct: ComplexOfReps<F>,
    pub check: SequenceCheck,
    pub isomorphic: bool,
}

/// `Cone(φ ⊗ ψ)` for the slice splits of the sequences ending at `ya` and
/// `yb` (which must lie in a common slice), verified as an
/// `(n+m)`-almost split sequence and compared with the one computed
/// directly in 𝓜(A ⊗ B).
pub fn ass_via_cone<F: Field>(
    cat_a: &MCatalogue<F>,
    ya: usize,
    cat_b: &MCatalogue<F>,
    yb: usize,
    cat_ab: &MCatalogue<F>,
) -> Result<AssViaCone<F>> {
    if cat_a.members[ya].slice != cat_b.members[yb].slice {
        return Err(Error::Invalid("right ends lie in different slices".into()));
    }
    let over = &cat_ab.alg;
    let d = cat_a.d + cat_b.d;
    let (sa, sb) = (split_sequence(cat_a, ya)?, split_sequence(cat_b, yb)?);
    let ee = tensor_complex(&sa.e, &sb.e, over)?;
    let ff = tensor_complex(&sa.f, &sb.f, over)?;
    let phi = tensor_chain_map(&sa.phi, &sb.phi, &ee, &ff, over)?;
    if !phi.commutes() {
        return Err(Error::NotAlmostSplit("φ ⊗ ψ is not a chain map".into()));
    }
    let (c, _) = cone(&phi)?;
    let c = c.padded(0, d as i64 + 1);
    let y = c.term(0);
    let yi = cat_ab
        .index_of(&y)?
        .ok_or_else(|| Error::NotAlmostSplit(format!("right end {} is not in 𝓜", grid(&y))))?;
    let tau_y = tau_d(&y, d)?;
    let check = verify_almost_split(&cat_ab.ctx, &c, Some(&tau_y))?;
    let direct = sink_sequence(&cat_ab.ctx, yi, d)?;
    let isomorphic = complex_isomorphism(&c, &direct, cat_ab.ctx.seed)?.is_some();
    Ok(AssViaCone { cone: c, direct, check, isomorphic })
}

#[derive(Clone, Debug)]
pub struct InjectiveSource<F: Field> {
    pub sequence: ComplexOfReps<F>,
    pub source_exact: bool,
    pub top_identity: bool,
}

/// The total complex of the source sequences of injectives `X` and `Y`,
/// shifted so that `X ⊗ Y` sits in degree `n + m + 1`, checked as a
/// source sequence in 𝓜(A ⊗ B), together with the dimension identity
/// `top(X ⊗ Y, M ⊗ N) = top(X, M) · top(Y, N)` over all factor members.
pub fn injective_source_sequence<F: Field>(
    cat_a: &MCatalogue<F>,
    x: usize,
    cat_b: &MCatalogue<F>,
    y: usize,
    cat_ab: &MCatalogue<F>,
) -> Result<InjectiveSource<F>> {
    let over = &cat_ab.alg;
    if cat_a.members[x].injective.is_none() || cat_b.members[y].injective.is_none() {
        return Err(Error::Invalid("injective source sequences need injective modules".into()));
    }
    let xs = source_sequence(&cat_a.ctx, x, cat_a.d)?;
    let ys = source_sequence(&cat_b.ctx, y, cat_b.d)?;
    let t = tensor_complex(&xs, &ys, over)?;
    let mut seq = t.total.clone();
    seq.low -= 1;
    let seq = seq.trimmed();
    let mut source_exact = true;
    for g in cat_ab.ctx.generators() {
        if !check_functor_exactness(&seq, g, Side::Contravariant)?.is_exact() {
            source_exact = false;
            break;
        }
    }
    let xy = tensor_rep(cat_a.rep(x), cat_b.rep(y), over)?;
    let mut top_identity = true;
    'outer: for ma in &cat_a.members {
        let ta = rad_top(cat_a.rep(x), &ma.rep)?.top_dim();
        for nb in &cat_b.members {
            let tb = rad_top(cat_b.rep(y), &nb.rep)?.top_dim();
            let mn = tensor_rep(&ma.rep, &nb.rep, over)?;
            if rad_top(&xy, &mn)?.top_dim() != ta * tb {
                top_identity = false;
                break 'outer;
            }
        }
    }
    Ok(InjectiveSource { sequence: seq, source_exact, top_identity })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityTransfer {
    /// `T_{A⊗B} ≅ T_A ⊗ T_B`.
    pub t_is_tensor: bool,
    /// The common `l` when both factors are homogeneous with the same `l`.
    pub common_l: Option<usize>,
}

impl HomogeneityTransfer {
    /// The two sides of the equivalence agree.
    pub fn consistent(&self) -> bool {
        self.t_is_tensor == self.common_l.is_some()
    }
}

pub fn homogeneity_transfer_check<F: Field>(cat_a: &MCatalogue<F>, cat_b: &MCatalogue<F>, cat_ab: &MCatalogue<F>) -> Result<HomogeneityTransfer> {
    let over = &cat_ab.alg;
    let tt = tensor_rep(&cat_a.compute_t(), &cat_b.compute_t(), over)?;
    let t_is_tensor = is_isomorphic(&cat_ab.compute_t(), &tt, cat_ab.ctx.seed)?.is_some();
    let common_l = match (cat_a.homogeneous(), cat_b.homogeneous()) {
        (Some(a), Some(b)) if a == b => Some(a),
        _ => None,
    };
    Ok(HomogeneityTransfer { t_is_tensor, common_l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::{build_m, DEFAULT_SLICE_CAP};
    use crate::exactla::PrimeField;
    use crate::quivalg::named::*;
    use crate::quivalg::tensor_algebra;
    use crate::seqcat::{ComplexOfReps, ComplexMap};

    fn gf() -> PrimeField {
        PrimeField::new(32003)
    }

    fn single<F: Field>(x: &Rep<F>) -> ComplexOfReps<F> {
        ComplexOfReps::new(x.alg(), 0, vec![x.clone()], vec![]).unwrap()
    }

    #[test]
    fn degree_zero_total_is_tensor() {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let (x, y) = (Rep::projective(&a, 1), Rep::injective(&a, 1));
        let tc = tensor_complex(&single(&x), &single(&y), &t).unwrap();
        assert_eq!(tc.total.len(), 1);
        assert_eq!(tc.total.term(0).dims(), tensor_rep(&x, &y, &t).unwrap().dims());
    }

    #[test]
    fn total_of_exact_complexes_is_exact() {
        let f = gf();
        let (a, b) = (a2(&f), a3_linear(&f));
        let t = tensor_algebra(&a, &b).unwrap();
        let ca = build_m(&a, 1, DEFAULT_SLICE_CAP, 1).unwrap();
        let cb = build_m(&b, 1, DEFAULT_SLICE_CAP, 1).unwrap();
        let sa = d_almost_split(&ca.ctx, ca.m_p()[0], 1).unwrap();
        let sb = d_almost_split(&cb.ctx, cb.m_p()[0], 1).unwrap();
        let tc = tensor_complex(&sa, &sb, &t).unwrap();
        assert!(tc.total.is_exact());
        assert!(kunneth_homology_check(&tc));
        // Homology on both sides.
        let p = Rep::projective(&a, 0);
        let inc = crate::repmod::hom(&p, &Rep::projective(&a, 1)).unwrap().basis()[0].clone();
        let c = ComplexOfReps::new(&a, 0, vec![Rep::projective(&a, 1), p], vec![inc]).unwrap();
        let tc = tensor_complex(&c, &single(&Rep::projective(&b, 2)), &t).unwrap();
        assert!(!tc.total.is_exact());
        assert!(kunneth_homology_check(&tc));
    }

    #[test]
    fn identity_tensor_identity_is_chain_map() {
        let f = gf();
        let a = a2(&f);
        let t = tensor_algebra(&a, &a).unwrap();
        let ca = build_m(&a, 1, DEFAULT_SLICE_CAP, 1).unwrap();
        let s = d_almost_split(&ca.ctx, ca.m_p()[0], 1).unwrap();
        let id = ComplexMap { source: s.clone(), target: s.clone(), low: s.low, maps: s.terms.iter().map(RepMap::identity).collect() };
        let tc = tensor_complex(&s, &s, &t).unwrap();
        let m = tensor_chain_map(&id, &id, &tc, &tc, &t).unwrap();
        assert!(m.commutes() && m.is_iso());
    }

    #[test]
    fn kunneth_ext_small() {
        let f = gf();
        let a = a2(&f);
        let t = tensor_algebra(&a, &a).unwrap();
        let (s0, s1) = (Rep::simple(&a, 0), Rep::simple(&a, 1));
        let r = kunneth_ext_check(&s1, &s0, &s1, &s0, 2, &t).unwrap();
        assert!(r.holds());
        assert_eq!(r.degrees[2], (2, 1, 1));
    }

    #[test]
    fn tau_of_tensor_injectives() {
        let f = gf();
        let (a, b) = (d4_subspace(&f), a3_linear(&f));
        let t = tensor_algebra(&a, &b).unwrap();
        for i in 0..4 {
            for j in 0..3 {
                assert!(tau_tensor_check(&Rep::injective(&a, i), &Rep::injective(&b, j), 1, 1, &t, 1).unwrap());
            }
        }
    }

    #[test]
    fn square_sequence_via_cone() {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let ca = build_m(&a, 1, DEFAULT_SLICE_CAP, 1).unwrap();
        let cab = build_m(&t, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        let y = ca.m_p()[0];
        let r = ass_via_cone(&ca, y, &ca, y, &cab).unwrap();
        assert!(r.isomorphic);
        let grids: Vec<Vec<String>> = (0..=3)
            .map(|k| {
                let mut g: Vec<String> = r.cone.decomposition(k).unwrap().parts.iter().map(|p| grid(&p.rep)).collect();
                g.sort();
                g
            })
            .collect();
        assert_eq!(grids, vec![vec!["0100"], vec!["0101", "1100"], vec!["1111"], vec!["0010"]]);
    }

    #[test]
    fn injective_sources_and_transfer() {
        let f = gf();
        let a = a2(&f);
        let t = tensor_algebra(&a, &a).unwrap();
        let ca = build_m(&a, 1, DEFAULT_SLICE_CAP, 1).unwrap();
        let cab = build_m(&t, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        // The injective at the sink.
        let r = injective_source_sequence(&ca, 0, &ca, 0, &cab).unwrap();
        assert!(r.source_exact && r.top_identity);
        assert_eq!(grid(&r.sequence.term(3)), "1111");
        let h = homogeneity_transfer_check(&ca, &ca, &cab).unwrap();
        assert!(!h.t_is_tensor && h.consistent());
        let b = a3_bipartite(&f);
        let tb = tensor_algebra(&b, &b).unwrap();
        let cb = build_m(&b, 1, DEFAULT_SLICE_CAP, 1).unwrap();
        let cbb = build_m(&tb, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        let h = homogeneity_transfer_check(&cb, &cb, &cbb).unwrap();
        assert!(h.t_is_tensor && h.common_l == Some(2));
    }
}
