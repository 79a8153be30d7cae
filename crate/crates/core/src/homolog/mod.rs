//! Minimal projective resolutions, Ext, global dimension and the higher
//! translates `τ_d = D Ext^d(−, Λ)` and `τ_d⁻ = Ext^d_{Λ^op}(D−, Λ)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Subspace};
use crate::quivalg::{Alg, AlgElem};
use crate::repmod::{Rep, RepMap};

/// A map `⊕_g P_{source[g]} → ⊕_h P_{target[h]}` of projectives. Generator
/// `g` goes to `Σ_h entries[g][h]` with `entries[g][h] ∈ e_{target[h]} Λ e_{source[g]}`.
#[derive(Clone, Debug)]
pub struct ProjMap<F: Field> {
    pub alg: Alg<F>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub entries: Vec<Vec<AlgElem<F>>>,
}

impl<F: Field> ProjMap<F> {
    /// The same map as a module homomorphism between explicit projective
    /// sums.
    pub fn realize(&self) -> RepMap<F> {
        let alg = &self.alg;
        let src = Rep::projective_sum(alg, &self.source);
        let tgt = Rep::projective_sum(alg, &self.target);
        self.realize_between(&src, &tgt)
    }

    pub(crate) fn realize_between(&self, src: &Rep<F>, tgt: &Rep<F>) -> RepMap<F> {
        let alg = &self.alg;
        let f = alg.field();
        let n = alg.vertex_count();
        let comps = (0..n)
            .map(|w| {
                let mut m = Mat::zeros(f, tgt.dim_at(w), src.dim_at(w));
                let mut col = 0;
                for (g, &s) in self.source.iter().enumerate() {
                    for &b in alg.block(s, w) {
                        let be = alg.basis_elem(b);
                        let mut row = 0;
                        for (h, &t) in self.target.iter().enumerate() {
                            let prod = alg.elem_mul(&self.entries[g][h], &be);
                            for (k, c) in prod.coeffs.iter().enumerate() {
                                m.set(row + k, col, c.clone());
                            }
                            row += alg.block_dim(t, w);
                        }
                        col += 1;
                    }
                }
                m
            })
            .collect();
        RepMap::from_parts(src, tgt, comps)
    }

    /// No entry has a component along a trivial path.
    pub fn is_radical(&self) -> bool {
        let alg = &self.alg;
        self.entries.iter().flatten().all(|x| {
            x.source != x.target || alg.field().is_zero(&x.coeffs[alg.basis_position(alg.vertex_basis(x.source))])
        })
    }

    /// `Hom(−, Λ)` of this map, as a map of projectives over `Λ^op`.
    pub fn transpose(&self) -> ProjMap<F> {
        let op = self.alg.opposite();
        let entries = (0..self.target.len())
            .map(|h| (0..self.source.len()).map(|g| self.alg.to_opposite_elem(&self.entries[g][h])).collect())
            .collect();
        ProjMap { alg: op, source: self.target.clone(), target: self.source.clone(), entries }
    }
}

/// `⋯ → P_1 → P_0 → X → 0`, minimal. `diffs[i]: P_{i+1} → P_i`.
#[derive(Clone, Debug)]
pub struct ProjResolution<F: Field> {
    pub module: Rep<F>,
    /// Vertices of the generators of each `P_i`.
    pub gens: Vec<Vec<usize>>,
    pub diffs: Vec<ProjMap<F>>,
    /// Image in `X_v` of each generator of `P_0`.
    pub augmentation: Vec<Vec<F::Elem>>,
}

impl<F: Field> ProjResolution<F> {
    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens[0].is_empty()
    }

    pub fn term(&self, i: usize) -> Rep<F> {
        match self.gens.get(i) {
            Some(g) => Rep::projective_sum(self.module.alg(), g),
            None => Rep::zero(self.module.alg()),
        }
    }
}

/// Vertex and vector of each generator of `top X`: at every vertex the
/// canonical complement of the images of the incoming arrows.
pub(crate) fn top_generators<F: Field>(x: &Rep<F>) -> Vec<(usize, Vec<F::Elem>)> {
    let f = x.field();
    let q = x.alg().quiver();
    let mut out = Vec::new();
    for v in 0..x.dims().len() {
        let mut cols = Vec::new();
        for a in q.arrows_into(v) {
            cols.extend(x.map(a).columns());
        }
        let img = Subspace::span(f, x.dim_at(v), &cols);
        for u in img.complement_basis() {
            out.push((v, u));
        }
    }
    out
}

/// The map `⊕ P_{v_g} → X` sending generator `g` to `u_g ∈ X_{v_g}`.
pub fn cover_map<F: Field>(x: &Rep<F>, gens: &[(usize, Vec<F::Elem>)]) -> RepMap<F> {
    let alg = x.alg();
    let f = x.field();
    let vertices: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let p = Rep::projective_sum(alg, &vertices);
    let mats = x.path_matrices();
    let comps = (0..alg.vertex_count())
        .map(|w| {
            let mut cols = Vec::with_capacity(p.dim_at(w));
            for (v, u) in gens {
                for &b in alg.block(*v, w) {
                    cols.push(mats[b].mul_vec(u));
                }
            }
            Mat::from_columns(f, x.dim_at(w), &cols)
        })
        .collect();
    RepMap::from_parts(&p, x, comps)
}

/// Minimal projective resolution, cached on the module. Acyclic quivers
/// bound the length by the number of vertices.
pub fn resolution<F: Field>(x: &Rep<F>) -> Result<Arc<ProjResolution<F>>> {
    if let Some(r) = x.resolution_cell().get() {
        return Ok(r.clone());
    }
    let r = Arc::new(build_resolution(x, x.alg().vertex_count())?);
    let _ = x.resolution_cell().set(r);
    Ok(x.resolution_cell().get().unwrap().clone())
}

/// As [`resolution`], failing when the length exceeds `max_len`.
pub fn min_proj_resolution<F: Field>(x: &Rep<F>, max_len: usize) -> Result<Arc<ProjResolution<F>>> {
    let r = resolution(x)?;
    if r.len() > max_len {
        return Err(Error::ResolutionTooLong(max_len));
    }
    Ok(r)
}

fn build_resolution<F: Field>(x: &Rep<F>, max_len: usize) -> Result<ProjResolution<F>> {
    let alg = x.alg();
    let mut gens_all: Vec<Vec<usize>> = Vec::new();
    let mut diffs: Vec<ProjMap<F>> = Vec::new();
    let mut augmentation = Vec::new();
    let mut k = x.clone();
    let mut into_prev: Option<RepMap<F>> = None;
    loop {
        let gens = top_generators(&k);
        let vertices: Vec<usize> = gens.iter().map(|g| g.0).collect();
        match &into_prev {
            None => augmentation = gens.iter().map(|g| g.1.clone()).collect(),
            Some(inc) => {
                let prev = gens_all.last().unwrap();
                let entries = gens
                    .iter()
                    .map(|(v, u)| {
                        let img = inc.comp(*v).mul_vec(u);
                        let mut off = 0;
                        prev.iter()
                            .map(|&t| {
                                let len = alg.block_dim(t, *v);
                                let e = AlgElem { source: t, target: *v, coeffs: img[off..off + len].to_vec() };
                                off += len;
                                e
                            })
                            .collect()
                    })
                    .collect();
                diffs.push(ProjMap { alg: alg.clone(), source: vertices.clone(), target: prev.clone(), entries });
            }
        }
        gens_all.push(vertices);
        if k.is_zero() {
            break;
        }
        let pi = cover_map(&k, &gens);
        let (omega, inc) = pi.kernel();
        if omega.is_zero() {
            break;
        }
        if diffs.len() + 1 > max_len {
            return Err(Error::ResolutionTooLong(max_len));
        }
        k = omega;
        into_prev = Some(inc);
    }
    Ok(ProjResolution { module: x.clone(), gens: gens_all, diffs, augmentation })
}

pub fn projective_dimension<F: Field>(x: &Rep<F>) -> Result<usize> {
    Ok(resolution(x)?.len())
}

pub fn global_dimension<F: Field>(alg: &Alg<F>) -> Result<usize> {
    let mut g = 0;
    for v in 0..alg.vertex_count() {
        g = g.max(projective_dimension(&Rep::simple(alg, v))?);
    }
    Ok(g)
}

/// `Ext^i(X, Y)` with cocycle representatives in `Hom(P_i, Y) = ⊕_g Y_{v_g}`.
#[derive(Clone, Debug)]
pub struct ExtSpace<F: Field> {
    pub degree: usize,
    pub dim: usize,
    /// Generator vertices of `P_i`; cochains are concatenations of `Y_{v_g}`.
    pub gens: Vec<usize>,
    pub cocycles: Vec<Vec<F::Elem>>,
}

/// Coboundary `Hom(P_i, Y) → Hom(P_{i+1}, Y)`; block `(g', h)` is the action
/// of `x_{g', h}` on `Y`.
fn coboundary<F: Field>(res: &ProjResolution<F>, y: &Rep<F>, i: usize) -> Mat<F> {
    let f = y.field();
    let src: &[usize] = res.gens.get(i).map(|g| g.as_slice()).unwrap_or(&[]);
    let cols: usize = src.iter().map(|&v| y.dim_at(v)).sum();
    let Some(d) = res.diffs.get(i) else {
        let rows: usize = res.gens.get(i + 1).map(|g| g.iter().map(|&v| y.dim_at(v)).sum()).unwrap_or(0);
        return Mat::zeros(f, rows, cols);
    };
    let rows: usize = d.source.iter().map(|&v| y.dim_at(v)).sum();
    let mut m = Mat::zeros(f, rows, cols);
    let mut r0 = 0;
    for (g, &vg) in d.source.iter().enumerate() {
        let mut c0 = 0;
        for (h, &th) in d.target.iter().enumerate() {
            let block = y.elem_matrix(&d.entries[g][h]);
            m.set_block(r0, c0, &block);
            c0 += y.dim_at(th);
        }
        r0 += y.dim_at(vg);
    }
    m
}

pub fn ext<F: Field>(x: &Rep<F>, y: &Rep<F>, i: usize) -> Result<ExtSpace<F>> {
    if !crate::quivalg::same_algebra(x.alg(), y.alg()) {
        return Err(Error::AlgebraMismatch("Ext between modules over different algebras".into()));
    }
    let res = resolution(x)?;
    let f = y.field();
    let gens = res.gens.get(i).cloned().unwrap_or_default();
    let ambient: usize = gens.iter().map(|&v| y.dim_at(v)).sum();
    let kernel = coboundary(&res, y, i).kernel();
    let image = if i == 0 { Vec::new() } else { coboundary(&res, y, i - 1).image() };
    let b = Subspace::span(f, ambient, &image);
    let cocycles: Vec<Vec<F::Elem>> = b.independent_extension(&kernel).into_iter().map(|k| kernel[k].clone()).collect();
    Ok(ExtSpace { degree: i, dim: cocycles.len(), gens, cocycles })
}

pub fn ext_dim<F: Field>(x: &Rep<F>, y: &Rep<F>, i: usize) -> Result<usize> {
    let res = resolution(x)?;
    if i > res.len() {
        return Ok(0);
    }
    let k = coboundary(&res, y, i);
    let ker = k.cols() - k.rank();
    let im = if i == 0 { 0 } else { coboundary(&res, y, i - 1).rank() };
    Ok(ker - im)
}

/// `dim Ext^i(X, Y)` for `i = 0..=upto`.
pub fn ext_dims<F: Field>(x: &Rep<F>, y: &Rep<F>, upto: usize) -> Result<Vec<usize>> {
    (0..=upto).map(|i| ext_dim(x, y, i)).collect()
}

/// `Hom(P_•, Λ)` realized over `Λ^op`: `(Q_i, δ^i: Q_i → Q_{i+1})`.
fn dual_cochain<F: Field>(res: &ProjResolution<F>, upto: usize) -> (Vec<Rep<F>>, Vec<RepMap<F>>) {
    let op = res.module.alg().opposite();
    let qs: Vec<Rep<F>> = (0..=upto + 1)
        .map(|i| match res.gens.get(i) {
            Some(g) => Rep::projective_sum(&op, g),
            None => Rep::zero(&op),
        })
        .collect();
    let deltas = (0..=upto)
        .map(|i| match res.diffs.get(i) {
            Some(d) => d.transpose().realize_between(&qs[i], &qs[i + 1]),
            None => RepMap::zero(&qs[i], &qs[i + 1]),
        })
        .collect();
    (qs, deltas)
}

/// `Ext^d(X, Λ)` as a right `Λ^op`-module.
pub fn ext_against_algebra<F: Field>(x: &Rep<F>, d: usize) -> Result<Rep<F>> {
    let res = resolution(x)?;
    let op = x.alg().opposite();
    if d > res.len() {
        return Ok(Rep::zero(&op));
    }
    let (_, deltas) = dual_cochain(&res, d);
    let (kern, inc) = deltas[d].kernel();
    if d == 0 {
        return Ok(kern);
    }
    let prev = &deltas[d - 1];
    let comps: Vec<Mat<F>> = (0..op.vertex_count())
        .map(|v| inc.comp(v).solve(prev.comp(v)).expect("coboundaries are cocycles"))
        .collect();
    let into_kernel = RepMap::from_parts(prev.source(), &kern, comps);
    Ok(into_kernel.cokernel().0)
}

/// `Tr Ω^{d-1} X = coker(Hom(P_{d-1}, Λ) → Hom(P_d, Λ))` over `Λ^op`.
pub fn transpose_syzygy<F: Field>(x: &Rep<F>, d: usize) -> Result<Rep<F>> {
    assert!(d >= 1);
    let res = resolution(x)?;
    let (_, deltas) = dual_cochain(&res, d);
    Ok(deltas[d - 1].cokernel().0)
}

/// `τ_d X = D Ext^d(X, Λ)`.
pub fn tau_d<F: Field>(x: &Rep<F>, d: usize) -> Result<Rep<F>> {
    Ok(ext_against_algebra(x, d)?.dual())
}

/// `τ_d⁻ X = Ext^d_{Λ^op}(DX, Λ^op)`, a right `Λ`-module.
pub fn tau_d_minus<F: Field>(x: &Rep<F>, d: usize) -> Result<Rep<F>> {
    ext_against_algebra(&x.dual(), d)
}

/// Classical `τ = D Tr`.
pub fn tau<F: Field>(x: &Rep<F>) -> Result<Rep<F>> {
    Ok(transpose_syzygy(x, 1)?.dual())
}

/// Classical `τ⁻ = Tr D`.
pub fn tau_minus<F: Field>(x: &Rep<F>) -> Result<Rep<F>> {
    transpose_syzygy(&x.dual(), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use crate::quivalg::named::*;
    use crate::quivalg::tensor_algebra;
    use crate::repmod::{hom, iso_indecomposable, tensor_rep};

    fn gf() -> PrimeField {
        PrimeField::new(32003)
    }

    fn check_exact<F: Field>(res: &ProjResolution<F>) {
        let x = &res.module;
        let maps: Vec<RepMap<F>> = res.diffs.iter().map(|d| d.realize()).collect();
        for d in &res.diffs {
            assert!(d.is_radical());
        }
        for w in maps.windows(2) {
            assert!(w[0].compose(&w[1]).is_zero());
        }
        // Alternating sum of dimension vectors vanishes.
        for v in 0..x.dims().len() {
            let mut s = x.dim_at(v) as i64;
            for (i, _) in res.gens.iter().enumerate() {
                let t = res.term(i).dim_at(v) as i64;
                s += if i % 2 == 0 { -t } else { t };
            }
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn a2_resolutions() {
        let alg = a2(&gf());
        let p = Rep::projective(&alg, 1);
        assert_eq!(resolution(&p).unwrap().len(), 0);
        // 0 → P_1 → P_2 → S_2 → 0.
        let r = resolution(&Rep::simple(&alg, 1)).unwrap();
        assert_eq!(r.gens, vec![vec![1], vec![0]]);
        check_exact(&r);
        assert_eq!(global_dimension(&alg).unwrap(), 1);
        assert_eq!(global_dimension(&semisimple(&gf(), 3)).unwrap(), 0);
    }

    #[test]
    fn square_has_global_dimension_two() {
        let f = gf();
        let sq = commutative_square(&f);
        assert_eq!(global_dimension(&sq).unwrap(), 2);
        for v in 0..4 {
            check_exact(&resolution(&Rep::simple(&sq, v)).unwrap());
            check_exact(&resolution(&Rep::injective(&sq, v)).unwrap());
        }
        let t = tensor_algebra(&d4_subspace(&f), &a3_linear(&f)).unwrap();
        assert_eq!(global_dimension(&t).unwrap(), 2);
    }

    #[test]
    fn ext_small_cases() {
        let alg = a2(&gf());
        let (s1, s2) = (Rep::simple(&alg, 0), Rep::simple(&alg, 1));
        assert_eq!(ext_dims(&s2, &s1, 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(ext_dims(&s1, &s2, 2).unwrap(), vec![0, 0, 0]);
        let p = Rep::projective(&alg, 1);
        for y in [&s1, &s2, &p] {
            assert_eq!(ext_dim(&p, y, 1).unwrap(), 0);
            assert_eq!(ext_dim(&s2, y, 0).unwrap(), hom(&s2, y).unwrap().dim());
        }
        let e = ext(&s2, &s1, 1).unwrap();
        assert_eq!((e.dim, e.gens.clone()), (1, vec![0]));
    }

    #[test]
    fn classical_translates_on_a2() {
        let alg = a2(&gf());
        let (p1, i2) = (Rep::projective(&alg, 0), Rep::injective(&alg, 1));
        let t = tau_d(&i2, 1).unwrap();
        assert!(iso_indecomposable(&t, &p1).unwrap().is_some());
        let tm = tau_d_minus(&p1, 1).unwrap();
        assert!(std::sync::Arc::ptr_eq(tm.alg(), &alg));
        assert!(iso_indecomposable(&tm, &i2).unwrap().is_some());
        assert!(tau_d(&Rep::projective(&alg, 1), 1).unwrap().is_zero());
        assert!(tau_d_minus(&Rep::injective(&alg, 0), 1).unwrap().is_zero());
        assert!(iso_indecomposable(&tau(&i2).unwrap(), &p1).unwrap().is_some());
        assert!(iso_indecomposable(&tau_minus(&p1).unwrap(), &i2).unwrap().is_some());
    }

    #[test]
    fn tau2_of_tensor_injectives() {
        let f = gf();
        let a = a2(&f);
        let t = tensor_algebra(&a, &a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let (x, y) = (Rep::injective(&a, i), Rep::injective(&a, j));
                let lhs = tau_d(&tensor_rep(&x, &y, &t).unwrap(), 2).unwrap();
                let rhs = tensor_rep(&tau_d(&x, 1).unwrap(), &tau_d(&y, 1).unwrap(), &t).unwrap();
                assert_eq!(lhs.dims(), rhs.dims());
                if !lhs.is_zero() {
                    assert!(iso_indecomposable(&lhs, &rhs).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn ext_is_field_independent() {
        let qa = d4_subspace(&Rationals);
        let pa = d4_subspace(&gf());
        for v in 0..4 {
            for w in 0..4 {
                let q = ext_dims(&Rep::injective(&qa, v), &Rep::projective(&qa, w), 1).unwrap();
                let p = ext_dims(&Rep::injective(&pa, v), &Rep::projective(&pa, w), 1).unwrap();
                assert_eq!(q, p);
            }
        }
    }
}
