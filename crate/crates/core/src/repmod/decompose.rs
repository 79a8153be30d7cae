use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::{endo_radical, iso_indecomposable, HomSpace};
use super::rep::{Rep, RepMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Subspace};
use crate::quivalg::Alg;

/// Default number of random endomorphisms tried per splitting step.
pub const DEFAULT_RETRIES: usize = 64;

/// One indecomposable summand `ι: S → X`, `π: X → S` with `π ι = 1`.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub rep: Rep<F>,
    pub inclusion: RepMap<F>,
    pub projection: RepMap<F>,
    /// Index into [`Decomposition::classes`].
    pub class: usize,
    pub label: Option<String>,
}

/// `X = ⊕ S_k` with every `S_k` certified indecomposable.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub module: Rep<F>,
    pub parts: Vec<Summand<F>>,
    /// Isoclass representatives with multiplicities.
    pub classes: Vec<(Rep<F>, usize)>,
}

impl<F: Field> Decomposition<F> {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Builds the decomposition of an explicit direct sum whose parts are
    /// already known to be indecomposable.
    pub fn from_direct_sum(ds: &super::DirectSum<F>, labels: Option<&[String]>) -> Result<Self> {
        let mut d = Decomposition { module: ds.sum.clone(), parts: Vec::new(), classes: Vec::new() };
        for (k, p) in ds.parts.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let class = d.class_of(p)?;
            d.parts.push(Summand {
                rep: p.clone(),
                inclusion: ds.inclusions[k].clone(),
                projection: ds.projections[k].clone(),
                class,
                label: labels.map(|l| l[k].clone()),
            });
        }
        Ok(d)
    }

    /// Labels the parts of a sum of known indecomposables by keys (e.g.
    /// generator indices); equal keys mean isomorphic parts. No isomorphism
    /// tests are run.
    pub fn from_keyed_sum(ds: &super::DirectSum<F>, keys: &[usize], labels: Option<&[String]>) -> Self {
        let mut d = Decomposition { module: ds.sum.clone(), parts: Vec::new(), classes: Vec::new() };
        let mut seen: Vec<usize> = Vec::new();
        for (k, p) in ds.parts.iter().enumerate() {
            let class = match seen.iter().position(|&x| x == keys[k]) {
                Some(c) => {
                    d.classes[c].1 += 1;
                    c
                }
                None => {
                    seen.push(keys[k]);
                    d.classes.push((p.clone(), 1));
                    seen.len() - 1
                }
            };
            d.parts.push(Summand {
                rep: p.clone(),
                inclusion: ds.inclusions[k].clone(),
                projection: ds.projections[k].clone(),
                class,
                label: labels.map(|l| l[k].clone()),
            });
        }
        d
    }

    /// Decomposition of `⊕ M_i` from decompositions of the `M_i`.
    pub fn of_direct_sum(ds: &super::DirectSum<F>, decs: &[&Decomposition<F>]) -> Result<Self> {
        let mut d = Decomposition { module: ds.sum.clone(), parts: Vec::new(), classes: Vec::new() };
        for (i, dec) in decs.iter().enumerate() {
            for p in &dec.parts {
                let class = d.class_of(&p.rep)?;
                d.parts.push(Summand {
                    rep: p.rep.clone(),
                    inclusion: ds.inclusions[i].compose(&p.inclusion),
                    projection: p.projection.compose(&ds.projections[i]),
                    class,
                    label: p.label.clone(),
                });
            }
        }
        Ok(d)
    }

    /// Inclusion and projection of the sum of the chosen parts, as maps of
    /// an explicit direct sum.
    pub fn restrict(&self, chosen: &[usize]) -> (super::DirectSum<F>, RepMap<F>, RepMap<F>) {
        let alg = self.module.alg();
        let reps: Vec<Rep<F>> = chosen.iter().map(|&k| self.parts[k].rep.clone()).collect();
        let ds = super::DirectSum::new(alg, &reps);
        let mut inc = RepMap::zero(&ds.sum, &self.module);
        let mut proj = RepMap::zero(&self.module, &ds.sum);
        for (j, &k) in chosen.iter().enumerate() {
            inc = inc.add(&self.parts[k].inclusion.compose(&ds.projections[j]));
            proj = proj.add(&ds.inclusions[j].compose(&self.parts[k].projection));
        }
        (ds, inc, proj)
    }

    fn class_of(&mut self, s: &Rep<F>) -> Result<usize> {
        for (i, (r, m)) in self.classes.iter_mut().enumerate() {
            if r.dims() == s.dims() && iso_indecomposable(r, s)?.is_some() {
                *m += 1;
                return Ok(i);
            }
        }
        self.classes.push((s.clone(), 1));
        Ok(self.classes.len() - 1)
    }

    /// Dimension vectors of the summands, sorted.
    pub fn dim_multiset(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.parts.iter().map(|p| p.rep.dims().to_vec()).collect();
        v.sort();
        v
    }

    /// The decomposition of `X ⊗ Y` by tensoring summands: `ι_k ⊗ ι_l`.
    /// Tensor products of summands with split local endomorphism rings stay
    /// indecomposable, and distinct class pairs give distinct classes.
    pub fn tensor(dx: &Self, dy: &Self, over: &Alg<F>) -> Result<Self> {
        let module = super::tensor_rep(&dx.module, &dy.module, over)?;
        let ny = dy.classes.len();
        let mut classes: Vec<(Rep<F>, usize)> = Vec::new();
        let mut class_index = vec![None; dx.classes.len() * ny];
        for (i, (rx, mx)) in dx.classes.iter().enumerate() {
            for (j, (ry, my)) in dy.classes.iter().enumerate() {
                class_index[i * ny + j] = Some(classes.len());
                classes.push((super::tensor_rep(rx, ry, over)?, mx * my));
            }
        }
        let mut parts = Vec::new();
        for sx in &dx.parts {
            for sy in &dy.parts {
                let raw = sx.inclusion.tensor(&sy.inclusion, over)?;
                let rep = raw.source().clone();
                let inclusion = raw.retarget(&rep, &module);
                let projection = sx.projection.tensor(&sy.projection, over)?.retarget(&module, &rep);
                let label = match (&sx.label, &sy.label) {
                    (Some(a), Some(b)) => Some(format!("{a}⊗{b}")),
                    _ => None,
                };
                parts.push(Summand { rep, inclusion, projection, class: class_index[sx.class * ny + sy.class].unwrap(), label });
            }
        }
        Ok(Decomposition { module, parts, classes })
    }
}

/// Krull–Schmidt decomposition with the default retry budget.
pub fn decompose<F: Field>(x: &Rep<F>, seed: u64) -> Result<Decomposition<F>> {
    decompose_with(x, seed, DEFAULT_RETRIES)
}

/// Splits `X` with Fitting's lemma: an endomorphism `g` that is neither
/// nilpotent nor invertible gives `X = ker g^N ⊕ im g^N`. Summands are
/// accepted when `End/J` is one dimensional.
pub fn decompose_with<F: Field>(x: &Rep<F>, seed: u64, retries: usize) -> Result<Decomposition<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves: Vec<(Rep<F>, RepMap<F>, RepMap<F>)> = Vec::new();
    let mut work = vec![(x.clone(), RepMap::identity(x), RepMap::identity(x))];
    while let Some((k, inc, proj)) = work.pop() {
        if k.is_zero() {
            continue;
        }
        match find_splitter(&k, &mut rng, retries)? {
            None => leaves.push((k, inc, proj)),
            Some(e) => {
                let (k1, i1) = e.kernel();
                let (k2, i2) = e.image();
                let (p1, p2) = complementary_projections(&k, &i1, &i2);
                work.push((k2, inc.compose(&i2), p2.compose(&proj)));
                work.push((k1, inc.compose(&i1), p1.compose(&proj)));
            }
        }
    }
    leaves.sort_by(|a, b| (a.0.total_dim(), a.0.dims()).cmp(&(b.0.total_dim(), b.0.dims())));
    let mut d = Decomposition { module: x.clone(), parts: Vec::new(), classes: Vec::new() };
    for (rep, inclusion, projection) in leaves {
        let class = d.class_of(&rep)?;
        d.parts.push(Summand { rep, inclusion, projection, class, label: None });
    }
    Ok(d)
}

/// Projections for `X = A ⊕ B` given the two inclusions.
fn complementary_projections<F: Field>(x: &Rep<F>, ia: &RepMap<F>, ib: &RepMap<F>) -> (RepMap<F>, RepMap<F>) {
    let f = x.field();
    let (a, b) = (ia.source(), ib.source());
    let mut pa = Vec::new();
    let mut pb = Vec::new();
    for v in 0..x.dims().len() {
        let both = Mat::hstack(f, x.dim_at(v), &[ia.comp(v), ib.comp(v)]);
        let inv = both.inverse().expect("Fitting summands are complementary");
        let da = a.dim_at(v);
        pa.push(inv.select_rows(&(0..da).collect::<Vec<_>>()));
        pb.push(inv.select_rows(&(da..x.dim_at(v)).collect::<Vec<_>>()));
    }
    (RepMap::from_parts(x, a, pa), RepMap::from_parts(x, b, pb))
}

/// `None` when `X` is certified indecomposable; otherwise an idempotent-like
/// power `g^N` that is neither zero nor invertible.
fn find_splitter<F: Field, R: Rng>(x: &Rep<F>, rng: &mut R, retries: usize) -> Result<Option<RepMap<F>>> {
    let rt = endo_radical(x)?;
    if rt.top_dim() == 1 {
        return Ok(None);
    }
    let h = &rt.hom;
    for b in h.basis() {
        if let Some(e) = fitting_power(x, b) {
            return Ok(Some(e));
        }
    }
    let big: Vec<usize> = (0..x.dims().len()).filter(|&v| x.dim_at(v) >= 2).collect();
    for attempt in 0..retries {
        let g = if attempt % 2 == 1 && !big.is_empty() {
            rank_one_element(x, h, big[rng.gen_range(0..big.len())], rng)
        } else {
            Some(h.random_element(rng))
        };
        if let Some(e) = g.and_then(|g| fitting_power(x, &g)) {
            return Ok(Some(e));
        }
    }
    Err(Error::DecompositionInconclusive { dim: x.total_dim(), retries })
}

/// A random endomorphism whose component at `v` has image in a random line.
/// Such elements act with rank at most one on each simple factor of
/// `End/J`, so they carry an eigenvalue in the base field.
fn rank_one_element<F: Field, R: Rng>(x: &Rep<F>, h: &HomSpace<F>, v: usize, rng: &mut R) -> Option<RepMap<F>> {
    let f = x.field();
    let d = x.dim_at(v);
    let w: Vec<F::Elem> = (0..d).map(|_| f.random(rng)).collect();
    let line = Subspace::span(f, d, &[w.clone()]);
    if line.dim() == 0 {
        return None;
    }
    let mut cols = vec![w];
    cols.extend(line.complement_basis());
    let inv = Mat::from_columns(f, d, &cols).inverse()?;
    let kill = inv.select_rows(&(1..d).collect::<Vec<_>>());
    // Constraint kill · g_v = 0, linear in the hom coordinates.
    let images: Vec<Vec<F::Elem>> = h.basis().iter().map(|b| kill.mul(b.comp(v)).into_data()).collect();
    let constraint = Mat::from_columns(f, (d - 1) * d, &images);
    let ideal = constraint.kernel();
    if ideal.is_empty() {
        return None;
    }
    let mut c = vec![f.zero(); h.dim()];
    for gen in &ideal {
        let r = f.random(rng);
        for (ci, gi) in c.iter_mut().zip(gen) {
            f.add_mul_assign(ci, &r, gi);
        }
    }
    Some(h.combine(&c))
}

/// Looks for an eigenvalue `λ` of `g` such that `(g - λ)^N` is neither zero
/// nor invertible.
fn fitting_power<F: Field>(x: &Rep<F>, g: &RepMap<F>) -> Option<RepMap<F>> {
    let f = x.field();
    let n = x.dims().iter().copied().max().unwrap_or(0) as u64;
    let mut eigen: Vec<F::Elem> = Vec::new();
    for c in g.comps() {
        if c.rows() == 0 {
            continue;
        }
        for r in f.roots(&c.charpoly()) {
            if !eigen.contains(&r) {
                eigen.push(r);
            }
        }
    }
    let id = RepMap::identity(x);
    for lam in eigen {
        let shifted = g.sub(&id.scale(&lam));
        let comps: Vec<Mat<F>> = shifted.comps().iter().map(|c| c.pow(n)).collect();
        let e = RepMap::from_parts(x, x, comps);
        if !e.is_zero() && !e.is_iso() {
            return Some(e);
        }
    }
    None
}

/// An isomorphism assembled from matching summands, if the multisets of
/// isoclasses agree.
pub fn match_decompositions<F: Field>(dx: &Decomposition<F>, dy: &Decomposition<F>) -> Result<Option<RepMap<F>>> {
    if dx.parts.len() != dy.parts.len() {
        return Ok(None);
    }
    let mut used = vec![false; dy.parts.len()];
    let mut total = RepMap::zero(&dx.module, &dy.module);
    for sx in &dx.parts {
        let mut found = false;
        for (j, sy) in dy.parts.iter().enumerate() {
            if used[j] || sx.rep.dims() != sy.rep.dims() {
                continue;
            }
            if let Some(phi) = iso_indecomposable(&sx.rep, &sy.rep)? {
                used[j] = true;
                total = total.add(&sy.inclusion.compose(&phi).compose(&sx.projection));
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    debug_assert!(total.is_iso());
    Ok(Some(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use crate::quivalg::named::*;
    use crate::repmod::hom::is_isomorphic;

    fn check<F: Field>(d: &Decomposition<F>) {
        let x = &d.module;
        let mut sum = RepMap::zero(x, x);
        for p in &d.parts {
            assert!(p.inclusion.commutes() && p.projection.commutes());
            assert!(p.projection.compose(&p.inclusion).comps().iter().all(|c| c.is_identity()));
            sum = sum.add(&p.inclusion.compose(&p.projection));
            assert!(crate::repmod::is_indecomposable(&p.rep).unwrap());
        }
        assert!(sum.comps().iter().all(|c| c.is_identity()));
    }

    #[test]
    fn splits_regular_module_of_square() {
        let f = PrimeField::new(32003);
        let alg = commutative_square(&f);
        let d = decompose(&Rep::regular(&alg), 5).unwrap();
        check(&d);
        assert_eq!(d.len(), 4);
        assert_eq!(d.classes.len(), 4);
    }

    #[test]
    fn repeated_summands_over_q() {
        // End(S ⊕ S ⊕ S) = M_3(Q): random elements rarely have rational
        // eigenvalues, the rank-one search still splits.
        let alg = d4_subspace(&Rationals);
        let s = Rep::injective(&alg, 0);
        let x = Rep::direct_sum(&alg, &[s.clone(), s.clone(), s.clone(), Rep::projective(&alg, 0)]);
        let h = crate::repmod::hom(&x, &x).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = h.random_element(&mut rng);
        let inv = g.inverse().unwrap();
        // Conjugate so the summands are not coordinate blocks.
        let maps: Vec<Mat<Rationals>> = (0..alg.arrow_count())
            .map(|k| {
                let a = alg.quiver().arrow(k);
                g.comp(a.target).mul(x.map(k)).mul(inv.comp(a.source))
            })
            .collect();
        let y = Rep::new(&alg, x.dims().to_vec(), maps).unwrap();
        let d = decompose(&y, 1).unwrap();
        check(&d);
        assert_eq!(d.len(), 4);
        let mults: Vec<usize> = d.classes.iter().map(|c| c.1).collect();
        assert_eq!(mults, vec![1, 3]);
        assert!(is_isomorphic(&x, &y, 2).unwrap().is_some());
    }

    #[test]
    fn d4_generic_subspace_rep_is_indecomposable() {
        let f = PrimeField::new(32003);
        let alg = d4_subspace(&f);
        // (2;1,1,1) with three lines in general position.
        let maps = vec![
            Mat::from_i64(&f, &[&[1], &[0]]),
            Mat::from_i64(&f, &[&[0], &[1]]),
            Mat::from_i64(&f, &[&[1], &[1]]),
        ];
        let x = Rep::new(&alg, vec![2, 1, 1, 1], maps).unwrap();
        let d = decompose(&x, 0).unwrap();
        assert_eq!(d.len(), 1);
        // Two lines equal: splits off a simple.
        let maps = vec![
            Mat::from_i64(&f, &[&[1], &[0]]),
            Mat::from_i64(&f, &[&[1], &[0]]),
            Mat::from_i64(&f, &[&[0], &[1]]),
        ];
        let y = Rep::new(&alg, vec![2, 1, 1, 1], maps).unwrap();
        let d = decompose(&y, 0).unwrap();
        check(&d);
        assert_eq!(d.dim_multiset(), vec![vec![1, 0, 0, 1], vec![1, 1, 1, 0]]);
    }

    #[test]
    fn tensor_decomposition() {
        let f = PrimeField::new(32003);
        let a = a2(&f);
        let t = crate::quivalg::tensor_algebra(&a, &a).unwrap();
        let ds = crate::repmod::DirectSum::new(&a, &[Rep::projective(&a, 0), Rep::projective(&a, 1)]);
        let d = Decomposition::from_direct_sum(&ds, None).unwrap();
        let dt = Decomposition::tensor(&d, &d, &t).unwrap();
        check(&dt);
        assert_eq!(dt.len(), 4);
        assert_eq!(dt.classes.len(), 4);
    }
}
