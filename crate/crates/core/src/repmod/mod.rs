//! Modules as quiver representations.
//!
//! Modules are right modules. A path `a_1 ⋯ a_k` acts on `X` as
//! `X(a_k) ⋯ X(a_1)`, so the projective `P_v = e_vΛ` has the paths starting
//! at `v` as basis and `I_v = D(Λe_v)`.

mod decompose;
mod hom;
mod rep;

pub use decompose::{decompose, decompose_with, match_decompositions, Decomposition, Summand, DEFAULT_RETRIES};
pub use hom::{endo_radical, hom, is_indecomposable, is_isomorphic, iso_indecomposable, rad_from as rad_top_from, rad_top, HomSpace, RadTop};
pub use rep::{DirectSum, Rep, RepMap};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::quivalg::{same_algebra, Alg, TensorArrow};

/// `X ⊗_k Y` over `A ⊗ B`. At `(i, j)` the space is `X_i ⊗ Y_j`.
pub fn tensor_rep<F: Field>(x: &Rep<F>, y: &Rep<F>, over: &Alg<F>) -> Result<Rep<F>> {
    let tf = over
        .tensor_factors()
        .ok_or_else(|| Error::AlgebraMismatch(format!("{} is not a tensor product", over.name())))?;
    if !same_algebra(&tf.left, x.alg()) || !same_algebra(&tf.right, y.alg()) {
        return Err(Error::AlgebraMismatch("tensor factors do not match the modules".into()));
    }
    let f = over.field();
    let dims: Vec<usize> = (0..over.vertex_count())
        .map(|v| {
            let (i, j) = tf.pair(v);
            x.dim_at(i) * y.dim_at(j)
        })
        .collect();
    let maps = (0..over.arrow_count())
        .map(|k| match tf.arrow(k) {
            TensorArrow::Left { arrow, vertex } => x.map(arrow).kronecker(&Mat::identity(f, y.dim_at(vertex))),
            TensorArrow::Right { vertex, arrow } => Mat::identity(f, x.dim_at(vertex)).kronecker(y.map(arrow)),
        })
        .collect();
    Ok(Rep::from_parts(over, dims, maps))
}

/// `coker(⊕ P_{v'} → ⊕ P_v)` for a random radical map between random sums
/// of at most `max_gens` indecomposable projectives, with sparse random
/// coefficients. Used for property tests.
pub fn random_presented<F: Field, R: rand::Rng + ?Sized>(alg: &Alg<F>, max_gens: usize, rng: &mut R) -> Result<Rep<F>> {
    let n = alg.vertex_count();
    let mut pick = || -> Vec<usize> { (0..rng.gen_range(1..=max_gens.max(1))).map(|_| rng.gen_range(0..n)).collect() };
    let (top, rel) = (pick(), pick());
    let p0 = Rep::projective_sum(alg, &top);
    let p1 = Rep::projective_sum(alg, &rel);
    let rt = rad_top(&p1, &p0)?;
    let f = p0.field();
    let coeffs: Vec<Vec<F::Elem>> = rt.rad.basis().to_vec();
    let mut c = vec![f.zero(); rt.hom.dim()];
    for b in &coeffs {
        if rng.gen_bool(0.5) {
            let s = f.random(rng);
            for (o, x) in c.iter_mut().zip(b) {
                f.add_mul_assign(o, &s, x);
            }
        }
    }
    Ok(rt.hom.combine(&c).cokernel().0)
}

/// Dimension vector as a grid: for tensor algebras one row per vertex of
/// the right factor, highest first, and one column per vertex of the left
/// factor. Rows are joined by `/` in the multi-row form.
pub fn grid_rows<F: Field>(x: &Rep<F>) -> Vec<String> {
    let cell = |n: usize| if n < 10 { n.to_string() } else { format!("({n})") };
    match x.alg().tensor_factors() {
        Some(tf) => {
            let (na, nb) = (tf.left.vertex_count(), tf.right.vertex_count());
            (0..nb).rev().map(|j| (0..na).map(|i| cell(x.dim_at(tf.vertex(i, j)))).collect()).collect()
        }
        None => vec![x.dims().iter().map(|&n| cell(n)).collect()],
    }
}

/// [`grid_rows`] concatenated, e.g. `0010`.
pub fn grid<F: Field>(x: &Rep<F>) -> String {
    grid_rows(x).concat()
}

/// Multiplicity of each `P_v` in the top of a module.
pub fn top_multiplicities<F: Field>(x: &Rep<F>) -> Vec<usize> {
    let f = x.field();
    let q = x.alg().quiver();
    (0..x.dims().len())
        .map(|v| {
            let images: Vec<&Mat<F>> = q.arrows_into(v).map(|a| x.map(a)).collect();
            let r = if images.is_empty() { 0 } else { Mat::hstack(f, x.dim_at(v), &images).rank() };
            x.dim_at(v) - r
        })
        .collect()
}

/// Whether `X` is projective: its top already accounts for its dimension.
pub fn is_projective<F: Field>(x: &Rep<F>) -> bool {
    let alg = x.alg();
    let top = top_multiplicities(x);
    let covered: usize = top.iter().enumerate().map(|(v, &t)| t * (0..alg.vertex_count()).map(|w| alg.block_dim(v, w)).sum::<usize>()).sum();
    covered == x.total_dim()
}

/// `ν(P) = D Hom(P, Λ)`: sends `P_v` to `I_v`.
pub fn nakayama<F: Field>(p: &Rep<F>) -> Result<Rep<F>> {
    if !is_projective(p) {
        return Err(Error::NotProjective(format!("{:?}", p.dims())));
    }
    let alg = p.alg();
    let parts: Vec<Rep<F>> = top_multiplicities(p)
        .iter()
        .enumerate()
        .flat_map(|(v, &t)| std::iter::repeat_with(move || Rep::injective(alg, v)).take(t))
        .collect();
    Ok(if parts.is_empty() { Rep::zero(alg) } else { Rep::direct_sum(alg, &parts) })
}
