//! Classical Auslander–Reiten theory: almost split sequences, knitting of
//! the AR quiver, and the classification of indecomposables against 𝓜
//! and `T^⊥`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complete::{perp_membership, MCatalogue};
use crate::error::{Error, Result};
use crate::exactla::{Field, Subspace};
use crate::homolog::{cover_map, ext, ext_dim, resolution, tau_minus};
use crate::quivalg::Alg;
use crate::repmod::{decompose, endo_radical, grid, hom, iso_indecomposable, DirectSum, Rep, RepMap};
use crate::seqcat::ComplexOfReps;

pub const DEFAULT_KNIT_CAP: usize = 256;
const SOCLE_RETRIES: usize = 8;

/// `0 → X → E → τ⁻X → 0` in degrees 2, 1, 0.
#[derive(Clone, Debug)]
pub struct ArSequence<F: Field> {
    pub left: Rep<F>,
    pub middle: Rep<F>,
    pub right: Rep<F>,
    pub inclusion: RepMap<F>,
    pub projection: RepMap<F>,
}

impl<F: Field> ArSequence<F> {
    pub fn complex(&self) -> Result<ComplexOfReps<F>> {
        ComplexOfReps::new(
            self.left.alg(),
            0,
            vec![self.right.clone(), self.middle.clone(), self.left.clone()],
            vec![self.projection.clone(), self.inclusion.clone()],
        )
    }
}

/// `g` with `mono ∘ g = f`.
fn through_mono<F: Field>(f: &RepMap<F>, mono: &RepMap<F>) -> Result<RepMap<F>> {
    let comps = (0..f.comps().len())
        .map(|v| mono.comp(v).solve(f.comp(v)))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::NotAnARSequence("map does not factor through the kernel".into()))?;
    Ok(RepMap::from_parts(f.source(), mono.source(), comps))
}

/// `g` with `g ∘ epi = f`.
fn through_epi<F: Field>(f: &RepMap<F>, epi: &RepMap<F>) -> Result<RepMap<F>> {
    let comps = (0..f.comps().len())
        .map(|v| epi.comp(v).transpose().solve(&f.comp(v).transpose()).map(|m| m.transpose()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::NotAnARSequence("map does not factor through the cokernel".into()))?;
    Ok(RepMap::from_parts(epi.target(), f.target(), comps))
}

/// The extension `0 → X → E → Z → 0` of a cocycle `ε ∈ Hom(P_1, X)` of the
/// minimal resolution of `Z`: `E = (X ⊕ P_0) / {(εp, −d p)}`.
fn extension<F: Field>(x: &Rep<F>, z: &Rep<F>, eps: &[F::Elem]) -> Result<(Rep<F>, RepMap<F>, RepMap<F>)> {
    let res = resolution(z)?;
    let (g0, g1) = (&res.gens[0], res.gens.get(1).cloned().unwrap_or_default());
    let mut off = 0;
    let pairs: Vec<(usize, Vec<F::Elem>)> = g1
        .iter()
        .map(|&v| {
            let u = eps[off..off + x.dim_at(v)].to_vec();
            off += x.dim_at(v);
            (v, u)
        })
        .collect();
    let e = cover_map(x, &pairs);
    let aug_pairs: Vec<(usize, Vec<F::Elem>)> = g0.iter().cloned().zip(res.augmentation.iter().cloned()).collect();
    let aug = cover_map(z, &aug_pairs);
    let p0 = aug.source().clone();
    let d1 = match res.diffs.first() {
        Some(d) => d.realize().retarget(e.source(), &p0),
        None => RepMap::zero(e.source(), &p0),
    };
    let sum = DirectSum::new(x.alg(), &[x.clone(), p0.clone()]);
    let j = sum.inclusions[0].compose(&e).sub(&sum.inclusions[1].compose(&d1));
    let (mid, q) = j.cokernel();
    let inc = q.compose(&sum.inclusions[0]);
    let proj = through_epi(&aug.compose(&sum.projections[1]), &q)?;
    Ok((mid, inc, proj))
}

/// Pullback of `0 → X → E → Z → 0` along `r: Z → Z`.
fn pullback<F: Field>(inc: &RepMap<F>, proj: &RepMap<F>, r: &RepMap<F>) -> Result<(Rep<F>, RepMap<F>, RepMap<F>)> {
    let (mid, z) = (proj.source(), proj.target());
    let sum = DirectSum::new(z.alg(), &[mid.clone(), z.clone()]);
    let k = proj.compose(&sum.projections[0]).sub(&r.compose(&sum.projections[1]));
    let (pb, kinc) = k.kernel();
    let inc2 = through_mono(&sum.inclusions[0].compose(inc), &kinc)?;
    let proj2 = sum.projections[1].compose(&kinc);
    Ok((pb, inc2, proj2))
}

/// Radical endomorphisms of `Z` that do not lift through `E → Z`; empty
/// together with `id` not lifting means almost split.
fn lifting_defect<F: Field>(proj: &RepMap<F>) -> Result<(bool, Vec<RepMap<F>>)> {
    let z = proj.target();
    let mid = proj.source();
    let rad = endo_radical(z)?;
    let h = hom(z, mid)?;
    let images: Vec<Vec<F::Elem>> = h.basis().iter().map(|g| rad.hom.coords(&proj.compose(g))).collect();
    let lifted = Subspace::span(z.field(), rad.hom.dim(), &images);
    let splits = lifted.contains(&rad.hom.coords(&RepMap::identity(z)));
    let missing = rad.rad.basis().iter().filter(|c| !lifted.contains(c)).map(|c| rad.hom.combine(c)).collect();
    Ok((splits, missing))
}

/// The almost split sequence starting at an indecomposable non-injective
/// `X`, from a random element of `Ext¹(τ⁻X, X)` moved into the socle over
/// `End(τ⁻X)` by pullbacks along radical endomorphisms.
pub fn classical_ar_sequence<F: Field>(x: &Rep<F>, seed: u64) -> Result<ArSequence<F>> {
    let z = tau_minus(x)?;
    if z.is_zero() {
        return Err(Error::Invalid(format!("{} is injective", grid(x))));
    }
    let f = x.field();
    let e1 = ext(&z, x, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SOCLE_RETRIES {
        let coeffs: Vec<F::Elem> = (0..e1.dim).map(|_| f.random(&mut rng)).collect();
        let mut eps = vec![f.zero(); e1.cocycles.first().map(|c| c.len()).unwrap_or(0)];
        for (c, v) in coeffs.iter().zip(&e1.cocycles) {
            for (o, a) in eps.iter_mut().zip(v) {
                f.add_mul_assign(o, c, a);
            }
        }
        let (mut mid, mut inc, mut proj) = extension(x, &z, &eps)?;
        for _ in 0..=z.total_dim() {
            let (splits, missing) = lifting_defect(&proj)?;
            if splits {
                break;
            }
            match missing.first() {
                None => {
                    let s = ArSequence { left: x.clone(), middle: mid, right: z, inclusion: inc, projection: proj };
                    if s.complex()?.is_exact() {
                        return Ok(s);
                    }
                    return Err(Error::NotAnARSequence(format!("sequence at {} is not exact", grid(x))));
                }
                Some(r) => {
                    (mid, inc, proj) = pullback(&inc, &proj, r)?;
                }
            }
        }
    }
    Err(Error::NotAnARSequence(format!("no socle element of Ext¹(τ⁻{0}, {0}) found", grid(x))))
}

/// Indecomposables with irreducible maps and the `τ⁻` orbits.
#[derive(Clone, Debug)]
pub struct ArQuiver<F: Field> {
    pub alg: Alg<F>,
    pub modules: Vec<Rep<F>>,
    pub labels: Vec<String>,
    /// `(from, to, multiplicity)`.
    pub arrows: Vec<(usize, usize, usize)>,
    pub tau_minus: Vec<Option<usize>>,
}

impl<F: Field> ArQuiver<F> {
    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn index_of(&self, x: &Rep<F>) -> Result<Option<usize>> {
        for (i, m) in self.modules.iter().enumerate() {
            if m.dims() == x.dims() && iso_indecomposable(m, x)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Knits the AR quiver from the indecomposable projectives.
pub fn enumerate_indecomposables<F: Field>(alg: &Alg<F>, cap: usize, seed: u64) -> Result<ArQuiver<F>> {
    let starts: Vec<Rep<F>> = (0..alg.vertex_count()).map(|v| Rep::projective(alg, v)).collect();
    enumerate_from(alg, &starts, cap, seed)
}

/// Knitting from the given indecomposables, closing under `τ⁻` and middle
/// terms of almost split sequences.
pub fn enumerate_from<F: Field>(alg: &Alg<F>, starts: &[Rep<F>], cap: usize, seed: u64) -> Result<ArQuiver<F>> {
    let mut q = ArQuiver { alg: alg.clone(), modules: Vec::new(), labels: Vec::new(), arrows: Vec::new(), tau_minus: Vec::new() };
    let add = |q: &mut ArQuiver<F>, x: &Rep<F>| -> Result<usize> {
        if let Some(i) = q.index_of(x)? {
            return Ok(i);
        }
        if q.modules.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        q.modules.push(x.clone());
        q.labels.push(grid(x));
        q.tau_minus.push(None);
        Ok(q.modules.len() - 1)
    };
    for s in starts {
        add(&mut q, s)?;
    }
    let mut next = 0;
    while next < q.modules.len() {
        let x = q.modules[next].clone();
        if !tau_minus(&x)?.is_zero() {
            let s = classical_ar_sequence(&x, seed ^ next as u64)?;
            let z = add(&mut q, &s.right)?;
            q.tau_minus[next] = Some(z);
            let dec = decompose(&s.middle, seed)?;
            for (rep, mult) in &dec.classes {
                let e = add(&mut q, rep)?;
                push_arrow(&mut q.arrows, next, e, *mult);
                push_arrow(&mut q.arrows, e, z, *mult);
            }
        }
        next += 1;
    }
    Ok(q)
}

fn push_arrow(arrows: &mut Vec<(usize, usize, usize)>, a: usize, b: usize, m: usize) {
    match arrows.iter_mut().find(|(x, y, _)| *x == a && *y == b) {
        Some(e) => e.2 = e.2.max(m),
        None => arrows.push((a, b, m)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// `⊗`
    InAddT,
    /// `⊙`
    InMNotT,
    /// `■`
    InPerpNotM,
    /// `·`
    OutsidePerp,
}

impl Tag {
    pub fn symbol(self) -> &'static str {
        match self {
            Tag::InAddT => "⊗",
            Tag::InMNotT => "⊙",
            Tag::InPerpNotM => "■",
            Tag::OutsidePerp => "·",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModuleClass {
    pub index: usize,
    pub tag: Tag,
    /// `Ext^{>0}(X, 𝓜) ≠ 0` and `Ext^{>0}(𝓜, X) ≠ 0`, for `■` modules.
    pub ext_to_m: bool,
    pub ext_from_m: bool,
}

pub fn classify_modules<F: Field>(ar: &ArQuiver<F>, cat: &MCatalogue<F>) -> Result<Vec<ModuleClass>> {
    let t = cat.t_parts();
    let gl = cat.gl_dim;
    let mut out = Vec::new();
    for (i, x) in ar.modules.iter().enumerate() {
        let tag = match cat.index_of(x)? {
            Some(m) if cat.t_indices().contains(&m) => Tag::InAddT,
            Some(_) => Tag::InMNotT,
            None if perp_membership(&t, x, gl)? => Tag::InPerpNotM,
            None => Tag::OutsidePerp,
        };
        let (mut to, mut from) = (false, false);
        if tag == Tag::InPerpNotM {
            for m in &cat.members {
                for k in 1..=gl {
                    to |= ext_dim(x, &m.rep, k)? != 0;
                    from |= ext_dim(&m.rep, x, k)? != 0;
                }
            }
        }
        out.push(ModuleClass { index: i, tag, ext_to_m: to, ext_from_m: from });
    }
    Ok(out)
}

/// Number of modules with each tag, in the order `⊗ ⊙ ■ ·`.
pub fn tag_counts(classes: &[ModuleClass]) -> [usize; 4] {
    let mut c = [0; 4];
    for m in classes {
        c[m.tag as usize] += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complete::{build_m, DEFAULT_SLICE_CAP};
    use crate::exactla::PrimeField;
    use crate::quivalg::named::*;
    use crate::quivalg::tensor_algebra;
    use crate::seqcat::{complex_isomorphism, d_almost_split, CatContext};

    fn gf() -> PrimeField {
        PrimeField::new(32003)
    }

    #[test]
    fn a2_sequence() {
        let alg = a2(&gf());
        let s = classical_ar_sequence(&Rep::projective(&alg, 0), 1).unwrap();
        assert_eq!(s.middle.dims(), &[1, 1]);
        assert_eq!(s.right.dims(), &[0, 1]);
        assert!(classical_ar_sequence(&Rep::injective(&alg, 0), 1).is_err());
    }

    #[test]
    fn counts_on_small_algebras() {
        let f = gf();
        assert_eq!(enumerate_indecomposables(&a2(&f), DEFAULT_KNIT_CAP, 1).unwrap().len(), 3);
        let a3 = enumerate_indecomposables(&a3_linear(&f), DEFAULT_KNIT_CAP, 1).unwrap();
        let mut dims: Vec<Vec<usize>> = a3.modules.iter().map(|m| m.dims().to_vec()).collect();
        dims.sort();
        assert_eq!(dims, vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]);
        assert_eq!(enumerate_indecomposables(&d4_subspace(&f), DEFAULT_KNIT_CAP, 1).unwrap().len(), 12);
        assert!(matches!(enumerate_indecomposables(&d4_subspace(&f), 5, 1), Err(Error::CapExceeded(5))));
    }

    #[test]
    fn d4_middle_terms() {
        let alg = d4_subspace(&gf());
        // P_i for a non-central vertex i: the middle term has the central
        // projective P_1 = (1,0,0,0) removed... checked through dimensions.
        for v in 1..4 {
            let p = Rep::projective(&alg, v);
            let s = classical_ar_sequence(&p, 2).unwrap();
            let e: Vec<usize> = s.middle.dims().to_vec();
            let sum: Vec<usize> = p.dims().iter().zip(s.right.dims()).map(|(a, b)| a + b).collect();
            assert_eq!(e, sum);
            assert_eq!(decompose(&s.middle, 1).unwrap().len(), 1);
        }
    }

    #[test]
    fn mesh_additivity_and_order_independence() {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let q = enumerate_indecomposables(&t, DEFAULT_KNIT_CAP, 1).unwrap();
        assert_eq!(q.len(), 11);
        for (x, z) in q.tau_minus.iter().enumerate().filter_map(|(x, z)| z.map(|z| (x, z))) {
            let mut mid = vec![0usize; 4];
            for &(a, b, m) in &q.arrows {
                if a == x {
                    for v in 0..4 {
                        mid[v] += m * q.modules[b].dim_at(v);
                    }
                }
            }
            let expect: Vec<usize> = (0..4).map(|v| q.modules[x].dim_at(v) + q.modules[z].dim_at(v)).collect();
            assert_eq!(mid, expect);
        }
        let starts: Vec<Rep<PrimeField>> = (0..4).rev().map(|v| Rep::projective(&t, v)).collect();
        let r = enumerate_from(&t, &starts, DEFAULT_KNIT_CAP, 9).unwrap();
        assert_eq!(r.len(), q.len());
        for m in &r.modules {
            assert!(q.index_of(m).unwrap().is_some());
        }
    }

    #[test]
    fn agrees_with_seqcat_at_d1() {
        let alg = a3_linear(&gf());
        let q = enumerate_indecomposables(&alg, DEFAULT_KNIT_CAP, 1).unwrap();
        let ctx = CatContext::new(&alg, q.modules.clone(), q.labels.clone(), 1).unwrap();
        for (x, z) in q.tau_minus.iter().enumerate().filter_map(|(x, z)| z.map(|z| (x, z))) {
            let a = classical_ar_sequence(&q.modules[x], 4).unwrap().complex().unwrap();
            let b = d_almost_split(&ctx, z, 1).unwrap();
            assert!(complex_isomorphism(&a, &b, 1).unwrap().is_some());
        }
    }

    #[test]
    fn square_classification() {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let cat = build_m(&t, 2, DEFAULT_SLICE_CAP, 1).unwrap();
        let q = enumerate_indecomposables(&t, DEFAULT_KNIT_CAP, 1).unwrap();
        let c = classify_modules(&q, &cat).unwrap();
        let tag = |g: &str| c.iter().find(|m| q.labels[m.index] == g).unwrap().tag;
        for g in ["0010", "1111", "0101", "1100"] {
            assert_eq!(tag(g), Tag::InAddT);
        }
        assert_eq!(tag("0100"), Tag::InMNotT);
        // P/soc P for the projective-injective P = 1111.
        assert_eq!(tag("1101"), Tag::InPerpNotM);
        // rad P: no map 0101 -> P, so 0101 -> top P does not lift and
        // Ext^1(0101, rad P) = coker(Hom(0101, P) -> Hom(0101, top P)) != 0.
        assert_eq!(tag("1011"), Tag::OutsidePerp);
        let rad_p = &q.modules[q.labels.iter().position(|l| l == "1011").unwrap()];
        let i10 = &q.modules[q.labels.iter().position(|l| l == "0101").unwrap()];
        assert_eq!(crate::homolog::ext_dims(i10, rad_p, 2).unwrap()[1], 1);
        assert_eq!(tag_counts(&c), [4, 1, 1, 5]);
        for m in c.iter().filter(|m| m.tag == Tag::InPerpNotM) {
            assert!(m.ext_to_m && m.ext_from_m);
        }
    }
}
