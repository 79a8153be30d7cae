use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::quivalg::Alg;
use crate::repmod::{decompose, hom, Decomposition, Rep, RepMap};

/// A bounded complex `C_high → ⋯ → C_low` in homological degrees.
/// `diffs[k]: terms[k+1] → terms[k]`.
#[derive(Clone, Debug)]
pub struct ComplexOfReps<F: Field> {
    pub alg: Alg<F>,
    pub low: i64,
    pub terms: Vec<Rep<F>>,
    pub diffs: Vec<RepMap<F>>,
    pub decomps: Vec<Option<Decomposition<F>>>,
}

impl<F: Field> ComplexOfReps<F> {
    /// Checks that consecutive differentials compose to zero.
    pub fn new(alg: &Alg<F>, low: i64, terms: Vec<Rep<F>>, diffs: Vec<RepMap<F>>) -> Result<Self> {
        if terms.len() != diffs.len() + 1 && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::Invalid("a complex needs one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source().dims() != terms[k + 1].dims() || d.target().dims() != terms[k].dims() {
                return Err(Error::Invalid(format!("differential at degree {} has the wrong shape", low + k as i64 + 1)));
            }
        }
        for w in diffs.windows(2) {
            if !w[0].compose(&w[1]).is_zero() {
                return Err(Error::Invalid("differentials do not compose to zero".into()));
            }
        }
        let n = terms.len();
        Ok(ComplexOfReps { alg: alg.clone(), low, terms, diffs, decomps: vec![None; n] })
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The term in degree `k`, zero outside the stored range.
    pub fn term(&self, k: i64) -> Rep<F> {
        if k < self.low || k > self.high() {
            Rep::zero(&self.alg)
        } else {
            self.terms[(k - self.low) as usize].clone()
        }
    }

    /// `d_k: C_k → C_{k-1}`, zero outside the stored range.
    pub fn diff(&self, k: i64) -> RepMap<F> {
        if k > self.low && k <= self.high() {
            self.diffs[(k - self.low - 1) as usize].clone()
        } else {
            RepMap::zero(&self.term(k), &self.term(k - 1))
        }
    }

    pub fn decomposition(&self, k: i64) -> Option<&Decomposition<F>> {
        if k < self.low || k > self.high() {
            return None;
        }
        self.decomps[(k - self.low) as usize].as_ref()
    }

    /// Fills in missing decompositions of the terms.
    pub fn ensure_decomposed(&mut self, seed: u64) -> Result<()> {
        for (t, d) in self.terms.iter().zip(self.decomps.iter_mut()) {
            if d.is_none() {
                *d = Some(decompose(t, seed)?);
            }
        }
        Ok(())
    }

    /// Vertexwise dimension of the homology in degree `k`.
    pub fn homology_dims(&self, k: i64) -> Vec<usize> {
        let t = self.term(k);
        let (out, inc) = (self.diff(k), self.diff(k + 1));
        (0..t.dims().len())
            .map(|v| t.dim_at(v) - out.comp(v).rank() - inc.comp(v).rank())
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        (self.low..=self.high()).all(|k| self.homology_dims(k).iter().all(|&h| h == 0))
    }

    /// First degree with nonzero homology.
    pub fn first_homology(&self) -> Option<i64> {
        (self.low..=self.high()).find(|&k| self.homology_dims(k).iter().any(|&h| h != 0))
    }

    /// `Σ (-1)^k dim C_k`, vertexwise.
    pub fn euler_characteristic(&self) -> Vec<i64> {
        let n = self.alg.vertex_count();
        let mut e = vec![0i64; n];
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if (self.low + i as i64).rem_euclid(2) == 0 { 1 } else { -1 };
            for (v, x) in e.iter_mut().enumerate() {
                *x += sign * t.dim_at(v) as i64;
            }
        }
        e
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.terms.len();
        while lo < hi && self.terms[lo].is_zero() {
            lo += 1;
        }
        while hi > lo && self.terms[hi - 1].is_zero() {
            hi -= 1;
        }
        if lo == hi {
            return ComplexOfReps { alg: self.alg.clone(), low: self.low, terms: vec![], diffs: vec![], decomps: vec![] };
        }
        ComplexOfReps {
            alg: self.alg.clone(),
            low: self.low + lo as i64,
            terms: self.terms[lo..hi].to_vec(),
            diffs: self.diffs[lo..hi - 1].to_vec(),
            decomps: self.decomps[lo..hi].to_vec(),
        }
    }

    /// Same complex over a stored degree range covering `[low, high]`.
    pub fn padded(&self, low: i64, high: i64) -> Self {
        let terms: Vec<Rep<F>> = (low..=high).map(|k| self.term(k)).collect();
        let diffs: Vec<RepMap<F>> = (low + 1..=high).map(|k| self.diff(k)).collect();
        let decomps = (low..=high).map(|k| self.decomposition(k).cloned()).collect();
        ComplexOfReps { alg: self.alg.clone(), low, terms, diffs, decomps }
    }

    /// Dimension vectors of the indecomposable summands per degree (needs
    /// decompositions).
    pub fn summand_dims(&self) -> Vec<Vec<Vec<usize>>> {
        self.decomps.iter().map(|d| d.as_ref().map(|d| d.dim_multiset()).unwrap_or_default()).collect()
    }
}

/// A chain map with `maps[k]: source_k → target_k` over the source's
/// degree range.
#[derive(Clone, Debug)]
pub struct ComplexMap<F: Field> {
    pub source: ComplexOfReps<F>,
    pub target: ComplexOfReps<F>,
    pub low: i64,
    pub maps: Vec<RepMap<F>>,
}

impl<F: Field> ComplexMap<F> {
    pub fn map(&self, k: i64) -> RepMap<F> {
        if k >= self.low && ((k - self.low) as usize) < self.maps.len() {
            self.maps[(k - self.low) as usize].clone()
        } else {
            RepMap::zero(&self.source.term(k), &self.target.term(k))
        }
    }

    fn range(&self) -> (i64, i64) {
        (
            self.source.low.min(self.target.low).min(self.low),
            self.source.high().max(self.target.high()).max(self.low + self.maps.len() as i64 - 1),
        )
    }

    /// `d^D f_k = f_{k-1} d^C` in every degree.
    pub fn commutes(&self) -> bool {
        let (lo, hi) = self.range();
        (lo..=hi + 1).all(|k| {
            let l = self.target.diff(k).compose(&self.map(k));
            let r = self.map(k - 1).compose(&self.source.diff(k));
            l.sub(&r).is_zero()
        })
    }

    pub fn is_iso(&self) -> bool {
        let (lo, hi) = self.range();
        (lo..=hi).all(|k| self.map(k).is_iso())
    }
}

/// Basis of the space of chain maps `C → D`.
pub fn chain_maps<F: Field>(c: &ComplexOfReps<F>, d: &ComplexOfReps<F>) -> Result<Vec<ComplexMap<F>>> {
    let lo = c.low.min(d.low);
    let hi = c.high().max(d.high());
    let f = c.alg.field();
    let spaces: Vec<_> = (lo..=hi).map(|k| hom(&c.term(k), &d.term(k))).collect::<Result<_>>()?;
    let offsets: Vec<usize> = spaces
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.dim();
            Some(o)
        })
        .collect();
    let unknowns: usize = spaces.iter().map(|s| s.dim()).sum();
    // Equations d^D f_k − f_{k-1} d^C = 0 in Hom(C_k, D_{k-1}), flattened.
    let mut blocks: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for k in lo + 1..=hi {
        let i = (k - lo) as usize;
        let (dd, dc) = (d.diff(k), c.diff(k));
        let mut cols: Vec<Vec<F::Elem>> = vec![Vec::new(); unknowns];
        let width: usize = {
            let (s, t) = (c.term(k), d.term(k - 1));
            s.dims().iter().zip(t.dims()).map(|(a, b)| a * b).sum()
        };
        for (j, col) in cols.iter_mut().enumerate() {
            *col = vec![f.zero(); width];
            if j >= offsets[i] && j < offsets[i] + spaces[i].dim() {
                *col = dd.compose(&spaces[i].basis()[j - offsets[i]]).flatten();
            } else if j >= offsets[i - 1] && j < offsets[i - 1] + spaces[i - 1].dim() {
                *col = spaces[i - 1].basis()[j - offsets[i - 1]].compose(&dc).neg().flatten();
            }
        }
        blocks.push(cols);
    }
    let total_rows: usize = blocks.iter().map(|b| b.first().map(|c| c.len()).unwrap_or(0)).sum();
    let mut system = Mat::zeros(f, total_rows, unknowns);
    let mut r0 = 0;
    for b in &blocks {
        let h = b.first().map(|c| c.len()).unwrap_or(0);
        for (j, col) in b.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                if !f.is_zero(x) {
                    system.set(r0 + r, j, x.clone());
                }
            }
        }
        r0 += h;
    }
    let kernel = system.kernel();
    Ok(kernel
        .iter()
        .map(|v| {
            let maps = (lo..=hi)
                .map(|k| {
                    let i = (k - lo) as usize;
                    spaces[i].combine(&v[offsets[i]..offsets[i] + spaces[i].dim()])
                })
                .collect();
            ComplexMap { source: c.clone(), target: d.clone(), low: lo, maps }
        })
        .collect())
}

/// A chain isomorphism `C → D`, searched among random chain maps.
pub fn complex_isomorphism<F: Field>(c: &ComplexOfReps<F>, d: &ComplexOfReps<F>, seed: u64) -> Result<Option<ComplexMap<F>>> {
    let lo = c.low.min(d.low);
    let hi = c.high().max(d.high());
    if (lo..=hi).any(|k| c.term(k).dims() != d.term(k).dims()) {
        return Ok(None);
    }
    let basis = chain_maps(c, d)?;
    if basis.is_empty() {
        return Ok((lo..=hi).all(|k| c.term(k).is_zero()).then(|| ComplexMap { source: c.clone(), target: d.clone(), low: lo, maps: vec![] }));
    }
    let f = c.alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let coeffs: Vec<F::Elem> = basis.iter().map(|_| f.random(&mut rng)).collect();
        let maps = (0..basis[0].maps.len())
            .map(|i| {
                let mut m = basis[0].maps[i].scale(&coeffs[0]);
                for (b, cf) in basis.iter().zip(&coeffs).skip(1) {
                    m = m.add(&b.maps[i].scale(cf));
                }
                m
            })
            .collect();
        let cm = ComplexMap { source: c.clone(), target: d.clone(), low: lo, maps };
        if cm.is_iso() {
            debug_assert!(cm.commutes());
            return Ok(Some(cm));
        }
    }
    Ok(None)
}

/// `Cone(φ)_k = E_{k-1} ⊕ F_k` with differential `[[−d_E, 0], [φ, d_F]]`,
/// together with the direct sum structure of every term.
pub fn mapping_cone<F: Field>(phi: &ComplexMap<F>) -> Result<(ComplexOfReps<F>, Vec<crate::repmod::DirectSum<F>>)> {
    use crate::repmod::DirectSum;
    let (e, fc) = (&phi.source, &phi.target);
    let alg = &e.alg;
    let low = (e.low + 1).min(fc.low);
    let high = (e.high() + 1).max(fc.high());
    let sums: Vec<DirectSum<F>> = (low..=high).map(|k| DirectSum::new(alg, &[e.term(k - 1), fc.term(k)])).collect();
    let mut diffs = Vec::new();
    for k in low + 1..=high {
        let (src, tgt) = (&sums[(k - low) as usize], &sums[(k - 1 - low) as usize]);
        diffs.push(DirectSum::matrix_map(src, tgt, |i, j| match (i, j) {
            (0, 0) => Some(e.diff(k - 1).neg()),
            (1, 0) => Some(phi.map(k - 1)),
            (1, 1) => Some(fc.diff(k)),
            _ => None,
        }));
    }
    let terms = sums.iter().map(|s| s.sum.clone()).collect();
    let mut cone = ComplexOfReps::new(alg, low, terms, diffs)?;
    for (i, k) in (low..=high).enumerate() {
        let de = e.decomposition(k - 1).cloned().or_else(|| empty_dec(&e.term(k - 1)));
        let df = fc.decomposition(k).cloned().or_else(|| empty_dec(&fc.term(k)));
        if let (Some(de), Some(df)) = (de, df) {
            cone.decomps[i] = Some(Decomposition::of_direct_sum(&sums[i], &[&de, &df])?);
        }
    }
    Ok((cone, sums))
}

fn empty_dec<F: Field>(x: &Rep<F>) -> Option<Decomposition<F>> {
    x.is_zero().then(|| Decomposition { module: x.clone(), parts: vec![], classes: vec![] })
}
