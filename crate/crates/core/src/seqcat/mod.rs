//! Finite additive subcategories `add G`, minimal approximations, sink,
//! source and d-almost split sequences, and the exactness checks for the
//! functors `F_X` (covariant) and `G_X` (contravariant).

mod complex;

pub use complex::{chain_maps, complex_isomorphism, mapping_cone, ComplexMap, ComplexOfReps};

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Subspace};
use crate::quivalg::Alg;
use crate::repmod::{hom, iso_indecomposable, rad_top, Decomposition, DirectSum, HomSpace, RadTop, Rep, RepMap};

/// The category `add(G_1 ⊕ ⋯ ⊕ G_r)` with cached `Hom` and `rad` between
/// generators.
pub struct CatContext<F: Field> {
    alg: Alg<F>,
    gens: Vec<Rep<F>>,
    labels: Vec<String>,
    rads: Vec<OnceLock<Arc<RadTop<F>>>>,
    pub seed: u64,
}

impl<F: Field> CatContext<F> {
    /// Generators must be indecomposable and pairwise non-isomorphic; the
    /// latter is checked.
    pub fn new(alg: &Alg<F>, gens: Vec<Rep<F>>, labels: Vec<String>, seed: u64) -> Result<Self> {
        for i in 0..gens.len() {
            for j in 0..i {
                if gens[i].dims() == gens[j].dims() && iso_indecomposable(&gens[i], &gens[j])?.is_some() {
                    return Err(Error::Invalid(format!("generators {} and {} are isomorphic", labels[j], labels[i])));
                }
            }
        }
        let r = gens.len();
        Ok(CatContext { alg: alg.clone(), gens, labels, rads: (0..r * r).map(|_| OnceLock::new()).collect(), seed })
    }

    pub fn alg(&self) -> &Alg<F> {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator(&self, a: usize) -> &Rep<F> {
        &self.gens[a]
    }

    pub fn generators(&self) -> &[Rep<F>] {
        &self.gens
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// `Hom(G_a, G_b)` with its radical.
    pub fn rad_top(&self, a: usize, b: usize) -> Result<Arc<RadTop<F>>> {
        let cell = &self.rads[a * self.gens.len() + b];
        if let Some(r) = cell.get() {
            return Ok(r.clone());
        }
        let r = Arc::new(rad_top(&self.gens[a], &self.gens[b])?);
        let _ = cell.set(r);
        Ok(cell.get().unwrap().clone())
    }

    /// Index of the generator isomorphic to an indecomposable `X`.
    pub fn index_of(&self, x: &Rep<F>) -> Result<Option<usize>> {
        for (a, g) in self.gens.iter().enumerate() {
            if g.dims() == x.dims() && iso_indecomposable(g, x)?.is_some() {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    /// `⊕ G_{keys}` with its labeled decomposition.
    pub fn sum(&self, keys: &[usize]) -> (DirectSum<F>, Decomposition<F>) {
        let reps: Vec<Rep<F>> = keys.iter().map(|&a| self.gens[a].clone()).collect();
        let ds = DirectSum::new(&self.alg, &reps);
        let labels: Vec<String> = keys.iter().map(|&a| self.labels[a].clone()).collect();
        let dec = Decomposition::from_keyed_sum(&ds, keys, Some(&labels));
        (ds, dec)
    }

    /// Generator index of each part of a decomposition.
    pub fn locate(&self, d: &Decomposition<F>) -> Result<Vec<Option<usize>>> {
        let mut class_idx = Vec::with_capacity(d.classes.len());
        for (r, _) in &d.classes {
            class_idx.push(self.index_of(r)?);
        }
        Ok(d.parts.iter().map(|p| class_idx[p.class]).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApproxMode {
    Full,
    Radical,
}

/// `C = ⊕ G_{gens}` with the approximation map (`C → K` for right, `K → C`
/// for left approximations).
#[derive(Clone, Debug)]
pub struct Approximation<F: Field> {
    pub gens: Vec<usize>,
    pub sum: DirectSum<F>,
    pub decomposition: Decomposition<F>,
    pub map: RepMap<F>,
}

/// The relevant part of `Hom(G, K)` or `Hom(K, G)`: all of it, or the radical.
struct Piece<F: Field> {
    hom: HomSpace<F>,
    space: Vec<Vec<F::Elem>>,
}

fn piece<F: Field>(h: HomSpace<F>, back: impl FnOnce() -> Result<HomSpace<F>>, mode: ApproxMode) -> Result<Piece<F>> {
    let f = h.source().field().clone();
    let space = match mode {
        ApproxMode::Full => (0..h.dim()).map(|i| crate::exactla::unit(&f, h.dim(), i)).collect(),
        ApproxMode::Radical => {
            let b = back()?;
            let rt = crate::repmod::rad_top_from(h.clone(), &b)?;
            rt.rad.basis().to_vec()
        }
    };
    Ok(Piece { hom: h, space })
}

/// Minimal right `add G`-approximation of `K` (mode `Full`), or minimal
/// right almost split map into `K` (mode `Radical`): generators of the
/// `End`-module `Hom(−, K)` resp. `rad(−, K)` modulo its radical.
pub fn minimal_right_approx<F: Field>(ctx: &CatContext<F>, k: &Rep<F>, mode: ApproxMode) -> Result<Approximation<F>> {
    let r = ctx.len();
    let pieces: Vec<Piece<F>> = (0..r)
        .map(|b| piece(hom(&ctx.gens[b], k)?, || hom(k, &ctx.gens[b]), mode))
        .collect::<Result<_>>()?;
    let mut keys = Vec::new();
    let mut maps = Vec::new();
    for a in 0..r {
        let pa = &pieces[a];
        if pa.space.is_empty() {
            continue;
        }
        let field = k.field();
        let mut composites = Vec::new();
        for (b, pb) in pieces.iter().enumerate() {
            let rt = ctx.rad_top(a, b)?;
            if rt.rad.dim() == 0 || pb.space.is_empty() {
                continue;
            }
            let rads = rt.rad_basis();
            for hc in &pb.space {
                let h = pb.hom.combine(hc);
                for rr in &rads {
                    composites.push(pa.hom.coords(&h.compose(rr)));
                }
            }
        }
        let sub = Subspace::span(field, pa.hom.dim(), &composites);
        for i in sub.independent_extension(&pa.space) {
            keys.push(a);
            maps.push(pa.hom.combine(&pa.space[i]));
        }
    }
    let (sum, decomposition) = ctx.sum(&keys);
    let mut map = RepMap::zero(&sum.sum, k);
    for (j, m) in maps.iter().enumerate() {
        map = map.add(&m.compose(&sum.projections[j]));
    }
    Ok(Approximation { gens: keys, sum, decomposition, map })
}

/// Minimal left approximation (`Full`) or minimal left almost split map
/// (`Radical`) out of `K`.
pub fn minimal_left_approx<F: Field>(ctx: &CatContext<F>, k: &Rep<F>, mode: ApproxMode) -> Result<Approximation<F>> {
    let r = ctx.len();
    let pieces: Vec<Piece<F>> = (0..r)
        .map(|b| piece(hom(k, &ctx.gens[b])?, || hom(&ctx.gens[b], k), mode))
        .collect::<Result<_>>()?;
    let mut keys = Vec::new();
    let mut maps = Vec::new();
    for b in 0..r {
        let pb = &pieces[b];
        if pb.space.is_empty() {
            continue;
        }
        let field = k.field();
        let mut composites = Vec::new();
        for (a, pa) in pieces.iter().enumerate() {
            let rt = ctx.rad_top(a, b)?;
            if rt.rad.dim() == 0 || pa.space.is_empty() {
                continue;
            }
            let rads = rt.rad_basis();
            for hc in &pa.space {
                let h = pa.hom.combine(hc);
                for rr in &rads {
                    composites.push(pb.hom.coords(&rr.compose(&h)));
                }
            }
        }
        let sub = Subspace::span(field, pb.hom.dim(), &composites);
        for i in sub.independent_extension(&pb.space) {
            keys.push(b);
            maps.push(pb.hom.combine(&pb.space[i]));
        }
    }
    let (sum, decomposition) = ctx.sum(&keys);
    let mut map = RepMap::zero(k, &sum.sum);
    for (j, m) in maps.iter().enumerate() {
        map = map.add(&sum.inclusions[j].compose(m));
    }
    Ok(Approximation { gens: keys, sum, decomposition, map })
}

fn dims_of<F: Field>(x: &Rep<F>) -> String {
    format!("{:?}", x.dims())
}

/// `0 → K_d → C_d → ⋯ → C_1 → Y → 0` by iterated kernels: a right almost
/// split map `C_1 → Y`, then minimal right approximations of the kernels.
/// `Y` sits in degree 0 and `K_d` in degree `d + 1`.
pub fn sink_sequence<F: Field>(ctx: &CatContext<F>, y: usize, d: usize) -> Result<ComplexOfReps<F>> {
    assert!(d >= 1);
    let yrep = ctx.gens[y].clone();
    let (_, ydec) = ctx.sum(&[y]);
    let first = minimal_right_approx(ctx, &yrep, ApproxMode::Radical)?;
    if !first.map.is_epi() {
        return Err(Error::NotAlmostSplit(format!(
            "right almost split map into {} is not surjective",
            ctx.label(y)
        )));
    }
    let mut terms = vec![yrep.clone(), first.sum.sum.clone()];
    let mut decomps = vec![Some(ydec), Some(first.decomposition.clone())];
    let mut diffs = vec![first.map.clone()];
    let (mut kern, mut inc) = first.map.kernel();
    for j in 2..=d + 1 {
        let a = minimal_right_approx(ctx, &kern, ApproxMode::Full)?;
        if j == d + 1 {
            if !a.map.is_iso() {
                return Err(Error::SequenceLeavesCategory(format!(
                    "kernel {} at degree {} is not in the category",
                    dims_of(&kern),
                    j
                )));
            }
        } else if !a.map.is_epi() {
            return Err(Error::SequenceLeavesCategory(format!(
                "kernel {} at degree {} is not covered by the category",
                dims_of(&kern),
                j
            )));
        }
        diffs.push(inc.compose(&a.map));
        terms.push(a.sum.sum.clone());
        decomps.push(Some(a.decomposition.clone()));
        let (k2, i2) = a.map.kernel();
        kern = k2;
        inc = i2;
    }
    let mut c = ComplexOfReps::new(ctx.alg(), 0, terms, diffs)?;
    c.decomps = decomps;
    Ok(c)
}

/// `X → C_d → ⋯` by a left almost split map out of `X` followed by minimal
/// left approximations of the successive cokernels, until the cokernel is
/// zero. `X` sits in degree `d + 1`; at most `d + 1` terms follow it.
pub fn source_sequence<F: Field>(ctx: &CatContext<F>, x: usize, d: usize) -> Result<ComplexOfReps<F>> {
    assert!(d >= 1);
    let xrep = ctx.gens[x].clone();
    let (_, xdec) = ctx.sum(&[x]);
    let first = minimal_left_approx(ctx, &xrep, ApproxMode::Radical)?;
    // Collected from degree d+1 downwards.
    let mut terms = vec![xrep, first.sum.sum.clone()];
    let mut decomps = vec![Some(xdec), Some(first.decomposition.clone())];
    let mut diffs = vec![first.map.clone()];
    let (mut q, mut proj) = first.map.cokernel();
    let mut count = 1;
    while !q.is_zero() {
        if count == d + 1 {
            return Err(Error::SequenceLeavesCategory(format!(
                "cokernel {} after {} steps from {} is nonzero",
                dims_of(&q),
                count,
                ctx.label(x)
            )));
        }
        let b = minimal_left_approx(ctx, &q, ApproxMode::Full)?;
        diffs.push(b.map.compose(&proj));
        terms.push(b.sum.sum.clone());
        decomps.push(Some(b.decomposition.clone()));
        let (q2, p2) = b.map.cokernel();
        q = q2;
        proj = p2;
        count += 1;
    }
    terms.reverse();
    decomps.reverse();
    diffs.reverse();
    let low = (d + 1 - count) as i64;
    let mut c = ComplexOfReps::new(ctx.alg(), low, terms, diffs)?;
    c.decomps = decomps;
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `F_X`: `Hom(X, C_k)`, with `rad(X, C_low)` at the right end.
    Covariant,
    /// `G_X`: `Hom(C_k, X)`, with `rad(C_high, X)` at the left end.
    Contravariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionReport {
    pub degree: i64,
    /// Kernel of the outgoing map (or dimension of the target space at the
    /// radical end).
    pub kernel: usize,
    /// Image of the incoming map.
    pub image: usize,
}

impl PositionReport {
    pub fn is_exact(&self) -> bool {
        self.kernel == self.image
    }
}

#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub side: Side,
    pub positions: Vec<PositionReport>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.positions.iter().all(|p| p.is_exact())
    }

    pub fn failures(&self) -> Vec<&PositionReport> {
        self.positions.iter().filter(|p| !p.is_exact()).collect()
    }
}

/// Exactness of `0 → F(C_high) → ⋯ → F(C_low) → 0` for `F = F_X` (or the
/// contravariant `G_X` read in the other direction), where the end at the
/// sequence's right (resp. left) end is replaced by the radical.
pub fn check_functor_exactness<F: Field>(c: &ComplexOfReps<F>, x: &Rep<F>, side: Side) -> Result<ExactnessReport> {
    let (lo, hi) = (c.low, c.high());
    let f = x.field();
    // spaces[k - lo] and the subspace that is the functor value there.
    let mut spaces = Vec::new();
    let mut values: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for k in lo..=hi {
        let t = c.term(k);
        let (h, radical_end) = match side {
            Side::Covariant => (hom(x, &t)?, k == lo),
            Side::Contravariant => (hom(&t, x)?, k == hi),
        };
        let val = if radical_end {
            let back = match side {
                Side::Covariant => hom(&t, x)?,
                Side::Contravariant => hom(x, &t)?,
            };
            crate::repmod::rad_top_from(h.clone(), &back)?.rad.basis().to_vec()
        } else {
            (0..h.dim()).map(|i| crate::exactla::unit(f, h.dim(), i)).collect()
        };
        spaces.push(h);
        values.push(val);
    }
    // Induced map between functor values at degrees k and k-1 (direction
    // depends on the side), as a matrix on coordinates.
    let induced = |k: i64| -> Mat<F> {
        let (i, j) = ((k - lo) as usize, (k - 1 - lo) as usize);
        let dk = c.diff(k);
        match side {
            Side::Covariant => {
                let cols: Vec<Vec<F::Elem>> = values[i].iter().map(|v| spaces[j].coords(&dk.compose(&spaces[i].combine(v)))).collect();
                Mat::from_columns(f, spaces[j].dim(), &cols)
            }
            Side::Contravariant => {
                let cols: Vec<Vec<F::Elem>> = values[j].iter().map(|v| spaces[i].coords(&spaces[j].combine(v).compose(&dk))).collect();
                Mat::from_columns(f, spaces[i].dim(), &cols)
            }
        }
    };
    let mut positions = Vec::new();
    for k in lo..=hi {
        let i = (k - lo) as usize;
        let dim_here = values[i].len();
        // Maps leaving and entering position k in the functor sequence.
        let (out_rank, in_rank) = match side {
            Side::Covariant => (
                if k > lo { induced(k).rank() } else { 0 },
                if k < hi { induced(k + 1).rank() } else { 0 },
            ),
            Side::Contravariant => (
                if k < hi { induced(k + 1).rank() } else { 0 },
                if k > lo { induced(k).rank() } else { 0 },
            ),
        };
        positions.push(PositionReport { degree: k, kernel: dim_here - out_rank, image: in_rank });
    }
    Ok(ExactnessReport { side, positions })
}

/// Whether every differential lies in the radical.
pub fn radical_differentials<F: Field>(c: &ComplexOfReps<F>) -> Result<Option<i64>> {
    for k in c.low + 1..=c.high() {
        let dk = c.diff(k);
        let rt = rad_top(&c.term(k), &c.term(k - 1))?;
        if !rt.in_rad(&dk) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// First zero row or column of a differential, written in the
/// decompositions of the terms: a summand mapped to zero, or a summand
/// not hit by any component.
pub fn zero_row_or_column<F: Field>(c: &ComplexOfReps<F>) -> Option<String> {
    for k in c.low + 1..=c.high() {
        let dk = c.diff(k);
        let (Some(src), Some(tgt)) = (c.decomposition(k), c.decomposition(k - 1)) else { continue };
        for (s, ps) in src.parts.iter().enumerate() {
            if tgt.parts.iter().all(|pt| pt.projection.compose(&dk).compose(&ps.inclusion).is_zero()) {
                return Some(format!("zero column: summand {s} in degree {k}"));
            }
        }
        for (t, pt) in tgt.parts.iter().enumerate() {
            if src.parts.iter().all(|ps| pt.projection.compose(&dk).compose(&ps.inclusion).is_zero()) {
                return Some(format!("zero row: summand {t} in degree {}", k - 1));
            }
        }
    }
    None
}

/// Outcome of [`verify_almost_split`].
#[derive(Clone, Debug, Default)]
pub struct SequenceCheck {
    pub exact: bool,
    pub radical: bool,
    pub covariant_exact: bool,
    pub contravariant_exact: bool,
    pub left_end_is_tau: Option<bool>,
    pub no_zero_rows_or_columns: bool,
}

/// Runs every check of a d-almost split sequence on a complex with the
/// right end in degree 0 and the left end in degree `d + 1`.
pub fn verify_almost_split<F: Field>(ctx: &CatContext<F>, c: &ComplexOfReps<F>, tau_y: Option<&Rep<F>>) -> Result<SequenceCheck> {
    let mut out = SequenceCheck { exact: c.is_exact(), ..Default::default() };
    if !out.exact {
        return Err(Error::NotAlmostSplit(format!("not exact at degree {:?}", c.first_homology())));
    }
    out.radical = radical_differentials(c)?.is_none();
    if !out.radical {
        return Err(Error::NotAlmostSplit("a differential is not radical".into()));
    }
    for (a, g) in ctx.generators().iter().enumerate() {
        let fx = check_functor_exactness(c, g, Side::Covariant)?;
        if !fx.is_exact() {
            return Err(Error::NotAlmostSplit(format!("F_X not exact for X = {} at {:?}", ctx.label(a), fx.failures())));
        }
        let gx = check_functor_exactness(c, g, Side::Contravariant)?;
        if !gx.is_exact() {
            return Err(Error::NotAlmostSplit(format!("G_X not exact for X = {} at {:?}", ctx.label(a), gx.failures())));
        }
    }
    out.covariant_exact = true;
    out.contravariant_exact = true;
    if let Some(t) = tau_y {
        let left = c.term(c.high());
        let ok = left.dims() == t.dims() && !t.is_zero() && crate::repmod::is_isomorphic(&left, t, ctx.seed)?.is_some();
        out.left_end_is_tau = Some(ok);
        if !ok {
            return Err(Error::NotAlmostSplit("left end is not τ_d of the right end".into()));
        }
    }
    let mut c2 = c.clone();
    c2.ensure_decomposed(ctx.seed)?;
    if let Some(w) = zero_row_or_column(&c2) {
        return Err(Error::NotAlmostSplit(w));
    }
    out.no_zero_rows_or_columns = true;
    Ok(out)
}

/// The d-almost split sequence ending at generator `y`, fully verified.
pub fn d_almost_split<F: Field>(ctx: &CatContext<F>, y: usize, d: usize) -> Result<ComplexOfReps<F>> {
    let tau_y = crate::homolog::tau_d(ctx.generator(y), d)?;
    if tau_y.is_zero() {
        return Err(Error::NotAlmostSplit(format!("τ_d of {} vanishes", ctx.label(y))));
    }
    let seq = sink_sequence(ctx, y, d)?;
    verify_almost_split(ctx, &seq, Some(&tau_y))?;
    Ok(seq)
}

/// Lifts `f_0: C_low → D_low` to a chain map between two sequences with
/// the same degree range, degree by degree upwards.
pub fn induced_map<F: Field>(c: &ComplexOfReps<F>, d: &ComplexOfReps<F>, f0: &RepMap<F>) -> Result<ComplexMap<F>> {
    let lo = c.low.min(d.low);
    let hi = c.high().max(d.high());
    let field = f0.source().field();
    let mut maps = vec![f0.clone()];
    for k in lo + 1..=hi {
        let g = maps.last().unwrap().compose(&c.diff(k));
        let h = hom(&c.term(k), &d.term(k))?;
        let dd = d.diff(k);
        let cols: Vec<Vec<F::Elem>> = h.basis().iter().map(|b| dd.compose(b).flatten()).collect();
        let target = g.flatten();
        let a = Mat::from_columns(field, target.len(), &cols);
        let b = Mat::from_columns(field, target.len(), &[target]);
        let sol = a.solve(&b).map_err(|_| Error::LiftFailed(format!("no lift in degree {k}")))?;
        maps.push(h.combine(&sol.column(0)));
    }
    let m = ComplexMap { source: c.clone(), target: d.clone(), low: lo, maps };
    if !m.commutes() {
        return Err(Error::LiftFailed("lifted squares do not commute".into()));
    }
    Ok(m)
}

/// `E_• → F_•` with `Cone φ ≅` the input sequence.
#[derive(Clone, Debug)]
pub struct SliceSplit<F: Field> {
    pub e: ComplexOfReps<F>,
    pub f: ComplexOfReps<F>,
    pub phi: ComplexMap<F>,
}

/// Splits a sequence whose summands lie in slices `i` and `i - 1`:
/// `E_j` is the slice-`i` part of degree `j + 1`, `F_j` the slice-`(i-1)`
/// part of degree `j`; `d_E` is minus the `E`-block and `φ` the block from
/// `E` to `F`. The block from `F` to `E` must vanish.
pub fn slice_split<F: Field>(
    seq: &ComplexOfReps<F>,
    slice_of: &dyn Fn(&Rep<F>) -> Result<Option<usize>>,
    i: usize,
) -> Result<SliceSplit<F>> {
    assert!(i >= 1);
    let alg = seq.alg.clone();
    let (lo, hi) = (seq.low, seq.high());
    let mut e_parts = Vec::new();
    let mut f_parts = Vec::new();
    for k in lo..=hi {
        let dec = seq.decomposition(k).ok_or_else(|| Error::Invalid("slice split needs decomposed terms".into()))?;
        let mut ep = Vec::new();
        let mut fp = Vec::new();
        for (p, part) in dec.parts.iter().enumerate() {
            match slice_of(&part.rep)? {
                Some(s) if s == i => ep.push(p),
                Some(s) if s + 1 == i => fp.push(p),
                other => {
                    return Err(Error::SliceMixing(format!(
                        "summand {:?} in degree {k} lies in slice {:?}",
                        part.rep.dims(),
                        other
                    )))
                }
            }
        }
        e_parts.push(dec.restrict(&ep));
        f_parts.push(dec.restrict(&fp));
    }
    let idx = |k: i64| (k - lo) as usize;
    // E_j = slice-i part of degree j + 1.
    let e_terms: Vec<Rep<F>> = (lo..=hi).map(|k| e_parts[idx(k)].0.sum.clone()).collect();
    let e_diffs: Vec<RepMap<F>> = (lo + 1..=hi)
        .map(|k| e_parts[idx(k - 1)].2.compose(&seq.diff(k)).compose(&e_parts[idx(k)].1).neg())
        .collect();
    let mut e = ComplexOfReps::new(&alg, lo - 1, e_terms, e_diffs)?;
    let f_terms: Vec<Rep<F>> = (lo..=hi).map(|k| f_parts[idx(k)].0.sum.clone()).collect();
    let f_diffs: Vec<RepMap<F>> = (lo + 1..=hi)
        .map(|k| f_parts[idx(k - 1)].2.compose(&seq.diff(k)).compose(&f_parts[idx(k)].1))
        .collect();
    let mut fc = ComplexOfReps::new(&alg, lo, f_terms, f_diffs)?;
    for k in lo..=hi {
        let dec = seq.decomposition(k).unwrap();
        e.decomps[idx(k)] = Some(part_decomposition(dec, &e_parts[idx(k)].0, |s| slice_of(s).map(|x| x == Some(i)))?);
        fc.decomps[idx(k)] = Some(part_decomposition(dec, &f_parts[idx(k)].0, |s| slice_of(s).map(|x| x != Some(i)))?);
    }
    for k in lo + 1..=hi {
        let b = e_parts[idx(k - 1)].2.compose(&seq.diff(k)).compose(&f_parts[idx(k)].1);
        if !b.is_zero() {
            return Err(Error::SliceMixing(format!("nonzero map from slice {} to slice {} in degree {k}", i - 1, i)));
        }
    }
    // φ_j: E_j → F_j is the block of d_{j+1}.
    let phi_maps: Vec<RepMap<F>> = (lo - 1..=hi)
        .map(|j| {
            if j + 1 > hi || j < lo {
                RepMap::zero(&e.term(j), &fc.term(j))
            } else {
                f_parts[idx(j)].2.compose(&seq.diff(j + 1)).compose(&e_parts[idx(j + 1)].1)
            }
        })
        .collect();
    let phi = ComplexMap { source: e.clone(), target: fc.clone(), low: lo - 1, maps: phi_maps };
    if !phi.commutes() {
        return Err(Error::SliceMixing("slice blocks do not form a chain map".into()));
    }
    // Cone(φ)_k = E_{k-1} ⊕ F_k maps onto the sequence by [ι_E, ι_F].
    let (cone, sums) = mapping_cone(&phi)?;
    let maps: Vec<RepMap<F>> = (cone.low..=cone.high())
        .map(|k| {
            let s = &sums[(k - cone.low) as usize];
            if k < lo || k > hi {
                return RepMap::zero(&s.sum, &seq.term(k));
            }
            e_parts[idx(k)].1.compose(&s.projections[0]).add(&f_parts[idx(k)].1.compose(&s.projections[1]))
        })
        .collect();
    let iso = ComplexMap { source: cone.clone(), target: seq.clone(), low: cone.low, maps };
    if !iso.commutes() || !iso.is_iso() {
        return Err(Error::SliceMixing("Cone φ does not reassemble the sequence".into()));
    }
    Ok(SliceSplit { e, f: fc, phi })
}

fn part_decomposition<F: Field>(
    dec: &Decomposition<F>,
    ds: &DirectSum<F>,
    keep: impl Fn(&Rep<F>) -> Result<bool>,
) -> Result<Decomposition<F>> {
    let mut keys = Vec::new();
    let mut labels = Vec::new();
    for p in &dec.parts {
        if keep(&p.rep)? {
            keys.push(p.class);
            labels.push(p.label.clone().unwrap_or_default());
        }
    }
    Ok(Decomposition::from_keyed_sum(ds, &keys, Some(&labels)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::homolog::tau_d;
    use crate::quivalg::named::*;
    use crate::quivalg::tensor_algebra;
    use crate::repmod::grid;

    fn gf() -> PrimeField {
        PrimeField::new(32003)
    }

    fn ctx_of(alg: &Alg<PrimeField>, gens: Vec<Rep<PrimeField>>) -> CatContext<PrimeField> {
        let labels = gens.iter().map(grid).collect();
        CatContext::new(alg, gens, labels, 7).unwrap()
    }

    fn square_m() -> (Alg<PrimeField>, CatContext<PrimeField>) {
        let a = a2(&gf());
        let t = tensor_algebra(&a, &a).unwrap();
        let tf = t.tensor_factors().unwrap();
        let inj = |i, j| Rep::injective(&t, tf.vertex(i, j));
        let s = inj(1, 1);
        let ts = tau_d(&s, 2).unwrap();
        let gens = vec![ts, inj(0, 0), inj(1, 0), inj(0, 1), s];
        let ctx = ctx_of(&t, gens);
        (t, ctx)
    }

    fn term_grids(c: &ComplexOfReps<PrimeField>) -> Vec<Vec<String>> {
        (c.low..=c.high())
            .map(|k| {
                let mut g: Vec<String> = c.decomposition(k).unwrap().parts.iter().map(|p| grid(&p.rep)).collect();
                g.sort();
                g
            })
            .collect()
    }

    #[test]
    fn a2_ar_sequence() {
        let alg = a2(&gf());
        let ctx = ctx_of(&alg, vec![Rep::projective(&alg, 0), Rep::projective(&alg, 1), Rep::injective(&alg, 1)]);
        let seq = d_almost_split(&ctx, 2, 1).unwrap();
        let dims: Vec<Vec<usize>> = seq.terms.iter().map(|t| t.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
        let src = source_sequence(&ctx, 0, 1).unwrap();
        assert_eq!(src.low, 0);
        assert!(complex_isomorphism(&src, &seq, 3).unwrap().is_some());
        // Right almost split map into a projective is the radical inclusion.
        let p = sink_sequence(&ctx, 0, 1);
        assert!(p.is_err());
    }

    #[test]
    fn square_sequence_terms() {
        let (_, ctx) = square_m();
        assert_eq!(ctx.label(0), "0010");
        let seq = d_almost_split(&ctx, 4, 2).unwrap();
        assert_eq!(
            term_grids(&seq),
            vec![vec!["0100".to_string()], vec!["0101".into(), "1100".into()], vec!["1111".into()], vec!["0010".into()]]
        );
        let src = source_sequence(&ctx, 0, 2).unwrap();
        assert_eq!((src.low, src.high()), (0, 3));
        assert!(complex_isomorphism(&src, &seq, 5).unwrap().is_some());
    }

    #[test]
    fn approximations_are_minimal() {
        let (_, ctx) = square_m();
        let a = minimal_right_approx(&ctx, ctx.generator(4), ApproxMode::Radical).unwrap();
        let mut g = a.gens.clone();
        g.sort();
        assert_eq!(g, vec![2, 3]);
        let full = minimal_right_approx(&ctx, ctx.generator(4), ApproxMode::Full).unwrap();
        assert_eq!(full.gens, vec![4]);
        assert!(full.map.is_iso());
        let l = minimal_left_approx(&ctx, ctx.generator(1), ApproxMode::Radical).unwrap();
        assert_eq!(l.gens.len(), 2);
    }

    #[test]
    fn split_sequence_fails_exactness() {
        let alg = a2(&gf());
        let (p0, i1) = (Rep::projective(&alg, 0), Rep::injective(&alg, 1));
        let ctx = ctx_of(&alg, vec![p0.clone(), Rep::projective(&alg, 1), i1.clone()]);
        let ds = DirectSum::new(&alg, &[p0.clone(), i1.clone()]);
        let split = ComplexOfReps::new(&alg, 0, vec![i1.clone(), ds.sum.clone(), p0.clone()], vec![ds.projections[1].clone(), ds.inclusions[0].clone()]).unwrap();
        assert!(split.is_exact());
        assert_eq!(radical_differentials(&split).unwrap(), Some(1));
        let cov = check_functor_exactness(&split, &i1, Side::Covariant).unwrap();
        assert!(!cov.is_exact());
        assert!(verify_almost_split(&ctx, &split, None).is_err());
    }

    #[test]
    fn lifts_identity_between_equal_sequences() {
        let (_, ctx) = square_m();
        let seq = sink_sequence(&ctx, 4, 2).unwrap();
        let m = induced_map(&seq, &seq, &RepMap::identity(&seq.term(0))).unwrap();
        assert!(m.commutes());
        // Every lift of an iso on the right end is an iso.
        assert!(m.is_iso());
    }
}
