use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rep::{Rep, RepMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Subspace};
use crate::homolog::{cover_map, top_generators};
use crate::quivalg::same_algebra;

/// A basis of `Hom(X, Y)`. Coordinates of a homomorphism are entries at the
/// free positions of the defining linear system, so they are read off
/// without solving.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    source: Rep<F>,
    target: Rep<F>,
    basis: Vec<RepMap<F>>,
    coords: Coords<F>,
}

/// What the system is solved for: all matrix entries of `f`, or the images
/// `f(u_g)` of the top generators `u_g` of `X`.
#[derive(Clone, Debug)]
enum Coords<F: Field> {
    Flat(Vec<usize>),
    Generators { gens: Vec<(usize, Vec<F::Elem>)>, offsets: Vec<usize>, free: Vec<usize> },
}

impl<F: Field> HomSpace<F> {
    pub fn source(&self) -> &Rep<F> {
        &self.source
    }
    pub fn target(&self) -> &Rep<F> {
        &self.target
    }
    pub fn basis(&self) -> &[RepMap<F>] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism in this basis.
    pub fn coords(&self, f: &RepMap<F>) -> Vec<F::Elem> {
        match &self.coords {
            Coords::Flat(free) => {
                let flat = f.flatten();
                free.iter().map(|&i| flat[i].clone()).collect()
            }
            Coords::Generators { gens, offsets, free } => free
                .iter()
                .map(|&i| {
                    let g = offsets.partition_point(|&o| o <= i) - 1;
                    let (v, u) = &gens[g];
                    f.comp(*v).mul_vec(u)[i - offsets[g]].clone()
                })
                .collect(),
        }
    }

    pub fn combine(&self, coeffs: &[F::Elem]) -> RepMap<F> {
        let field = self.source.field();
        let mut flat = vec![field.zero(); self.source.dims().iter().zip(self.target.dims()).map(|(a, b)| a * b).sum()];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if field.is_zero(c) {
                continue;
            }
            for (o, x) in flat.iter_mut().zip(b.flatten()) {
                field.add_mul_assign(o, c, &x);
            }
        }
        RepMap::from_flat(&self.source, &self.target, &flat)
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> RepMap<F> {
        let f = self.source.field();
        let c: Vec<F::Elem> = (0..self.dim()).map(|_| f.random(rng)).collect();
        self.combine(&c)
    }
}

/// `Hom_Λ(X, Y)` by solving `f_t X_a = Y_a f_s` for every arrow `a: s → t`.
pub fn hom<F: Field>(x: &Rep<F>, y: &Rep<F>) -> Result<HomSpace<F>> {
    if !same_algebra(x.alg(), y.alg()) {
        return Err(Error::AlgebraMismatch("Hom between modules over different algebras".into()));
    }
    let n = x.dims().len();
    let flat: usize = (0..n).map(|v| x.dim_at(v) * y.dim_at(v)).sum();
    if flat > 16 {
        let gens = top_generators(x);
        if gens.iter().map(|g| y.dim_at(g.0)).sum::<usize>() < flat {
            return Ok(hom_presented(x, y, gens));
        }
    }
    Ok(hom_flat(x, y))
}

/// `Hom(X, Y) = ker(Hom(P_0, Y) → Hom(P_1, Y))` for the projective cover
/// `P_0 → X` and the top of its kernel.
fn hom_presented<F: Field>(x: &Rep<F>, y: &Rep<F>, gens: Vec<(usize, Vec<F::Elem>)>) -> HomSpace<F> {
    let f = x.field();
    let alg = x.alg();
    let cover = cover_map(x, &gens);
    let (k, inc) = cover.kernel();
    let mut offsets = Vec::with_capacity(gens.len());
    let mut unknowns = 0;
    for (v, _) in &gens {
        offsets.push(unknowns);
        unknowns += y.dim_at(*v);
    }
    let ymats = y.path_matrices();
    // A relation r ∈ (P_0)_w forces Σ_g Σ_b r[g, b] Y(b) y_g = 0 in Y_w.
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (w, kv) in top_generators(&k) {
        let r = inc.comp(w).mul_vec(&kv);
        let mut block = vec![vec![f.zero(); unknowns]; y.dim_at(w)];
        let mut pos = 0;
        for (g, (v, _)) in gens.iter().enumerate() {
            for &b in alg.block(*v, w) {
                let c = &r[pos];
                pos += 1;
                if f.is_zero(c) {
                    continue;
                }
                let m = &ymats[b];
                for (i, row) in block.iter_mut().enumerate() {
                    for j in 0..y.dim_at(*v) {
                        f.add_mul_assign(&mut row[offsets[g] + j], c, m.get(i, j));
                    }
                }
            }
        }
        rows.extend(block.into_iter().filter(|row| row.iter().any(|e| !f.is_zero(e))));
    }
    let system = Mat::from_rows(f, unknowns, &rows);
    let (_, pivots) = system.rref();
    let mut is_pivot = vec![false; unknowns];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..unknowns).filter(|&i| !is_pivot[i]).collect();
    // f_v = ĝ_v ∘ s_v with s_v a right inverse of the surjection (P_0)_v → X_v.
    let sections: Vec<Mat<F>> = (0..x.dims().len())
        .map(|v| cover.comp(v).solve(&Mat::identity(f, x.dim_at(v))).expect("projective cover is onto"))
        .collect();
    let basis = system
        .kernel()
        .iter()
        .map(|sol| {
            let comps = (0..x.dims().len())
                .map(|v| {
                    let mut cols = Vec::with_capacity(cover.source().dim_at(v));
                    for (g, (s, _)) in gens.iter().enumerate() {
                        let yg = &sol[offsets[g]..offsets[g] + y.dim_at(*s)];
                        for &b in alg.block(*s, v) {
                            cols.push(ymats[b].mul_vec(yg));
                        }
                    }
                    Mat::from_columns(f, y.dim_at(v), &cols).mul(&sections[v])
                })
                .collect();
            RepMap::from_parts(x, y, comps)
        })
        .collect();
    HomSpace { source: x.clone(), target: y.clone(), basis, coords: Coords::Generators { gens, offsets, free } }
}

fn hom_flat<F: Field>(x: &Rep<F>, y: &Rep<F>) -> HomSpace<F> {
    let f = x.field();
    let n = x.dims().len();
    let mut offsets = Vec::with_capacity(n);
    let mut unknowns = 0;
    for v in 0..n {
        offsets.push(unknowns);
        unknowns += x.dim_at(v) * y.dim_at(v);
    }
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (k, a) in x.alg().quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (xa, ya) = (x.map(k), y.map(k));
        let (xs, xt, ys, yt) = (x.dim_at(s), x.dim_at(t), y.dim_at(s), y.dim_at(t));
        // (f_t X_a - Y_a f_s)[r, c] = 0 for r < yt, c < xs.
        for r in 0..yt {
            for c in 0..xs {
                let mut eq = vec![f.zero(); unknowns];
                for kk in 0..xt {
                    let coef = xa.get(kk, c);
                    if !f.is_zero(coef) {
                        let idx = offsets[t] + r * xt + kk;
                        eq[idx] = f.add(&eq[idx], coef);
                    }
                }
                for kk in 0..ys {
                    let coef = ya.get(r, kk);
                    if !f.is_zero(coef) {
                        let idx = offsets[s] + kk * xs + c;
                        eq[idx] = f.sub(&eq[idx], coef);
                    }
                }
                if eq.iter().any(|e| !f.is_zero(e)) {
                    rows.push(eq);
                }
            }
        }
    }
    let system = Mat::from_rows(f, unknowns, &rows);
    let (_, pivots) = system.rref();
    let mut is_pivot = vec![false; unknowns];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..unknowns).filter(|&i| !is_pivot[i]).collect();
    let basis = system.kernel().iter().map(|v| RepMap::from_flat(x, y, v)).collect();
    HomSpace { source: x.clone(), target: y.clone(), basis, coords: Coords::Flat(free) }
}

/// `Hom(X, Y)` with the radical `rad(X, Y)` inside it.
#[derive(Clone, Debug)]
pub struct RadTop<F: Field> {
    pub hom: HomSpace<F>,
    /// The radical, as a subspace of hom coordinates.
    pub rad: Subspace<F>,
}

impl<F: Field> RadTop<F> {
    pub fn rad_basis(&self) -> Vec<RepMap<F>> {
        self.rad.basis().iter().map(|c| self.hom.combine(c)).collect()
    }

    pub fn top_dim(&self) -> usize {
        self.hom.dim() - self.rad.dim()
    }

    pub fn in_rad(&self, f: &RepMap<F>) -> bool {
        self.rad.contains(&self.hom.coords(f))
    }

    /// Basis elements of `Hom` outside the radical that span a complement.
    pub fn top_representatives(&self) -> Vec<RepMap<F>> {
        let units: Vec<Vec<F::Elem>> =
            (0..self.hom.dim()).map(|i| crate::exactla::unit(self.hom.source.field(), self.hom.dim(), i)).collect();
        self.rad.independent_extension(&units).into_iter().map(|i| self.hom.basis[i].clone()).collect()
    }
}

fn check_characteristic<F: Field>(x: &Rep<F>, y: &Rep<F>) -> Result<()> {
    let p = x.field().characteristic();
    let needed = x.total_dim().max(y.total_dim());
    if p != 0 && p <= needed as u64 {
        return Err(Error::CharTooSmall { p, needed });
    }
    Ok(())
}

/// `rad(X, Y) = { f : tr(h ∘ f) = 0 for all h: Y → X }`.
///
/// This trace criterion needs the characteristic to exceed the dimensions
/// of `X` and `Y`.
pub fn rad_top<F: Field>(x: &Rep<F>, y: &Rep<F>) -> Result<RadTop<F>> {
    let h = hom(x, y)?;
    let back = hom(y, x)?;
    rad_from(h, &back)
}

pub fn rad_from<F: Field>(h: HomSpace<F>, back: &HomSpace<F>) -> Result<RadTop<F>> {
    let (x, y) = (h.source.clone(), h.target.clone());
    check_characteristic(&x, &y)?;
    let f = x.field();
    let m = h.dim();
    let pairing = Mat::from_fn(f, back.dim(), m, |j, i| trace_pair(f, &back.basis[j], &h.basis[i]));
    let rad = Subspace::span(f, m, &pairing.kernel());
    Ok(RadTop { hom: h, rad })
}

/// `tr(g ∘ f)` without forming the product.
fn trace_pair<F: Field>(field: &F, g: &RepMap<F>, f: &RepMap<F>) -> F::Elem {
    let mut acc = field.zero();
    for (gv, fv) in g.comps().iter().zip(f.comps()) {
        for r in 0..gv.rows() {
            for c in 0..gv.cols() {
                let a = gv.get(r, c);
                if !field.is_zero(a) {
                    field.add_mul_assign(&mut acc, a, fv.get(c, r));
                }
            }
        }
    }
    acc
}

/// `J(End X)`.
pub fn endo_radical<F: Field>(x: &Rep<F>) -> Result<RadTop<F>> {
    let h = hom(x, x)?;
    let back = h.clone();
    rad_from(h, &back)
}

/// Certified indecomposability: `End(X)/J` is one dimensional.
pub fn is_indecomposable<F: Field>(x: &Rep<F>) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    Ok(endo_radical(x)?.top_dim() == 1)
}

/// For indecomposable `X` and `Y`: an isomorphism, if they are isomorphic.
pub fn iso_indecomposable<F: Field>(x: &Rep<F>, y: &Rep<F>) -> Result<Option<RepMap<F>>> {
    if x.dims() != y.dims() {
        return Ok(None);
    }
    let rt = rad_top(x, y)?;
    match rt.top_representatives().into_iter().next() {
        None => Ok(None),
        Some(f) if f.is_iso() => Ok(Some(f)),
        Some(_) => Err(Error::Invalid("isomorphism test needs indecomposable modules".into())),
    }
}

/// Isomorphism test for arbitrary modules. Random elements of `Hom(X, Y)`
/// are tried first; otherwise both sides are decomposed and the summands
/// matched.
pub fn is_isomorphic<F: Field>(x: &Rep<F>, y: &Rep<F>, seed: u64) -> Result<Option<RepMap<F>>> {
    if x.dims() != y.dims() {
        return Ok(None);
    }
    if x.is_zero() {
        return Ok(Some(RepMap::zero(x, y)));
    }
    let h = hom(x, y)?;
    if h.dim() == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        let f = h.random_element(&mut rng);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    let dx = super::decompose(x, seed)?;
    let dy = super::decompose(y, seed)?;
    super::decompose::match_decompositions(&dx, &dy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::quivalg::named::*;
    use crate::quivalg::tensor_algebra;

    #[test]
    fn presented_and_flat_agree() {
        let f = PrimeField::new(32003);
        let a = a3_bipartite(&f);
        let t = tensor_algebra(&a, &a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ms: Vec<Rep<PrimeField>> = (0..6).map(|_| crate::repmod::random_presented(&t, 4, &mut rng).unwrap()).collect();
        for x in &ms {
            for y in &ms {
                let p = hom_presented(x, y, top_generators(x));
                let q = hom_flat(x, y);
                assert_eq!(p.dim(), q.dim());
                for b in p.basis() {
                    assert!(b.commutes());
                }
                let c: Vec<u32> = (0..p.dim()).map(|_| f.random(&mut rng)).collect();
                assert_eq!(p.coords(&p.combine(&c)), c);
                assert_eq!(q.coords(&p.combine(&c)).len(), q.dim());
            }
        }
    }

    #[test]
    fn hom_from_projective_is_evaluation() {
        let f = PrimeField::new(32003);
        let alg = commutative_square(&f);
        let ys: Vec<Rep<PrimeField>> = (0..4)
            .flat_map(|v| [Rep::projective(&alg, v), Rep::injective(&alg, v), Rep::simple(&alg, v)])
            .collect();
        for v in 0..4 {
            let p = Rep::projective(&alg, v);
            for y in &ys {
                assert_eq!(hom(&p, y).unwrap().dim(), y.dim_at(v));
            }
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = PrimeField::new(101);
        let alg = d4_subspace(&f);
        let x = Rep::direct_sum(&alg, &[Rep::projective(&alg, 1), Rep::injective(&alg, 0)]);
        let h = hom(&x, &x).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let c: Vec<u32> = (0..h.dim()).map(|_| f.random(&mut rng)).collect();
            let m = h.combine(&c);
            assert!(m.commutes());
            assert_eq!(h.coords(&m), c);
        }
    }

    #[test]
    fn radical_of_a2() {
        let f = PrimeField::new(32003);
        let alg = a2(&f);
        let (p1, p2) = (Rep::projective(&alg, 0), Rep::projective(&alg, 1));
        // The inclusion P_1 → P_2 is radical, and rad(P_2, P_1) = 0 = Hom.
        let rt = rad_top(&p1, &p2).unwrap();
        assert_eq!((rt.hom.dim(), rt.rad.dim()), (1, 1));
        let e = endo_radical(&Rep::direct_sum(&alg, &[p1.clone(), p2.clone()])).unwrap();
        // End(P_1 ⊕ P_2) has dim 3, radical spanned by the inclusion.
        assert_eq!((e.hom.dim(), e.rad.dim()), (3, 1));
        assert!(is_indecomposable(&p2).unwrap());
        assert!(!is_indecomposable(&Rep::direct_sum(&alg, &[p1.clone(), p1])).unwrap());
    }

    #[test]
    fn char_guard() {
        let f = PrimeField::new(3);
        let alg = a2(&f);
        let s = Rep::simple(&alg, 0);
        let x = Rep::direct_sum(&alg, &[s.clone(), s.clone(), s]);
        assert_eq!(endo_radical(&x).unwrap_err(), Error::CharTooSmall { p: 3, needed: 3 });
    }

    #[test]
    fn projective_top_is_injective_socle() {
        let f = PrimeField::new(32003);
        let alg = a2(&f);
        let p2 = Rep::projective(&alg, 1);
        let i1 = Rep::injective(&alg, 0);
        assert_eq!(p2.dims(), &[1, 1]);
        assert_eq!(Rep::injective(&alg, 1).dims(), &[0, 1]);
        assert!(iso_indecomposable(&p2, &i1).unwrap().is_some());
        assert!(iso_indecomposable(&Rep::projective(&alg, 0), &Rep::simple(&alg, 1)).unwrap().is_none());
    }
}
