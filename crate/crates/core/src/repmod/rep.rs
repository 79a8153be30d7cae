use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Subspace};
use crate::homolog::ProjResolution;
use crate::quivalg::{same_algebra, Alg, AlgElem};

struct RepData<F: Field> {
    alg: Alg<F>,
    dims: Vec<usize>,
    maps: Vec<Mat<F>>,
    path_mats: OnceLock<Vec<Mat<F>>>,
    pub(crate) resolution: OnceLock<Arc<ProjResolution<F>>>,
}

/// A finite dimensional right module, as a representation of the quiver.
/// Cloning is cheap.
#[derive(Clone)]
pub struct Rep<F: Field>(Arc<RepData<F>>);

impl<F: Field> fmt::Debug for Rep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?} over {}", self.dims(), self.alg().name())
    }
}

impl<F: Field> PartialEq for Rep<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.dims() == other.dims() && same_algebra(self.alg(), other.alg()) && self.0.maps == other.0.maps)
    }
}

impl<F: Field> Rep<F> {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(alg: &Alg<F>, dims: Vec<usize>, maps: Vec<Mat<F>>) -> Result<Self> {
        if dims.len() != alg.vertex_count() || maps.len() != alg.arrow_count() {
            return Err(Error::Invalid("dimension vector or arrow count does not match the quiver".into()));
        }
        for (k, a) in alg.quiver().arrows().iter().enumerate() {
            if maps[k].rows() != dims[a.target] || maps[k].cols() != dims[a.source] {
                return Err(Error::Invalid(format!("matrix of arrow {} has the wrong shape", a.name)));
            }
        }
        let rep = Self::from_parts(alg, dims, maps);
        for r in alg.relations() {
            let (_, w) = &r.terms[0];
            let (s, t) = (alg.quiver().arrow(w[0]).source, alg.quiver().arrow(*w.last().unwrap()).target);
            let f = alg.field();
            let mut acc = Mat::zeros(f, rep.dim_at(t), rep.dim_at(s));
            for (c, w) in &r.terms {
                acc = acc.add(&rep.word_matrix(w).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::Invalid("relation does not vanish on the representation".into()));
            }
        }
        Ok(rep)
    }

    pub(crate) fn from_parts(alg: &Alg<F>, dims: Vec<usize>, maps: Vec<Mat<F>>) -> Self {
        Rep(Arc::new(RepData {
            alg: alg.clone(),
            dims,
            maps,
            path_mats: OnceLock::new(),
            resolution: OnceLock::new(),
        }))
    }

    pub(crate) fn resolution_cell(&self) -> &OnceLock<Arc<ProjResolution<F>>> {
        &self.0.resolution
    }

    pub fn zero(alg: &Alg<F>) -> Self {
        let f = alg.field();
        let maps = alg.quiver().arrows().iter().map(|_| Mat::zeros(f, 0, 0)).collect();
        Self::from_parts(alg, vec![0; alg.vertex_count()], maps)
    }

    pub fn simple(alg: &Alg<F>, v: usize) -> Self {
        let f = alg.field();
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Self::from_parts(alg, dims, maps)
    }

    /// `P_v = e_vΛ`: at `w` the basis paths from `v` to `w`, arrows acting by
    /// right multiplication.
    pub fn projective(alg: &Alg<F>, v: usize) -> Self {
        let f = alg.field();
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|w| alg.block_dim(v, w)).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let ab = alg.arrow_basis(k);
                let cols: Vec<Vec<F::Elem>> =
                    alg.block(v, a.source).iter().map(|&b| alg.basis_product(b, ab).to_vec()).collect();
                Mat::from_columns(f, dims[a.target], &cols)
            })
            .collect();
        Self::from_parts(alg, dims, maps)
    }

    /// `I_v = D(Λe_v)`, the dual of the projective `P_v` of the opposite
    /// algebra.
    pub fn injective(alg: &Alg<F>, v: usize) -> Self {
        Self::projective(&alg.opposite(), v).dual()
    }

    /// `⊕ P_v` over the listed vertices, in order.
    pub fn projective_sum(alg: &Alg<F>, vertices: &[usize]) -> Self {
        let parts: Vec<Rep<F>> = vertices.iter().map(|&v| Self::projective(alg, v)).collect();
        Self::direct_sum(alg, &parts)
    }

    /// The regular module `Λ_Λ = ⊕ P_v`.
    pub fn regular(alg: &Alg<F>) -> Self {
        let vs: Vec<usize> = (0..alg.vertex_count()).collect();
        Self::projective_sum(alg, &vs)
    }

    /// `DΛ = ⊕ I_v`.
    pub fn injective_cogenerator(alg: &Alg<F>) -> Self {
        let parts: Vec<Rep<F>> = (0..alg.vertex_count()).map(|v| Self::injective(alg, v)).collect();
        Self::direct_sum(alg, &parts)
    }

    pub fn direct_sum(alg: &Alg<F>, parts: &[Rep<F>]) -> Self {
        if parts.len() == 1 {
            return parts[0].clone();
        }
        let f = alg.field();
        let n = alg.vertex_count();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
        let maps = (0..alg.arrow_count())
            .map(|k| {
                let blocks: Vec<&Mat<F>> = parts.iter().map(|p| p.map(k)).collect();
                Mat::block_diag(f, &blocks)
            })
            .collect();
        Self::from_parts(alg, dims, maps)
    }

    /// The dual `Hom_k(X, k)` as a module over the opposite algebra.
    pub fn dual(&self) -> Self {
        let op = self.alg().opposite();
        let maps = self.0.maps.iter().map(|m| m.transpose()).collect();
        Self::from_parts(&op, self.0.dims.clone(), maps)
    }

    pub fn alg(&self) -> &Alg<F> {
        &self.0.alg
    }

    pub fn field(&self) -> &F {
        self.0.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Mat<F> {
        &self.0.maps[arrow]
    }

    pub fn maps(&self) -> &[Mat<F>] {
        &self.0.maps
    }

    pub fn same_object(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Matrix of a path word: `X(a_1 ⋯ a_k) = X(a_k) ⋯ X(a_1)`.
    pub fn word_matrix(&self, word: &[usize]) -> Mat<F> {
        let q = self.alg().quiver();
        let start = q.arrow(word[0]).source;
        let mut m = Mat::identity(self.field(), self.dim_at(start));
        for &a in word {
            m = self.map(a).mul(&m);
        }
        m
    }

    /// Matrices of all basis paths, indexed like the algebra basis.
    pub fn path_matrices(&self) -> &[Mat<F>] {
        self.0.path_mats.get_or_init(|| {
            let alg = self.alg();
            (0..alg.dim())
                .map(|b| {
                    let p = alg.basis_path(b);
                    if p.is_trivial() {
                        Mat::identity(self.field(), self.dim_at(p.source))
                    } else {
                        self.word_matrix(&p.arrows)
                    }
                })
                .collect()
        })
    }

    /// Action of `x ∈ e_sΛe_t` as a map `X_s → X_t`.
    pub fn elem_matrix(&self, x: &AlgElem<F>) -> Mat<F> {
        let f = self.field();
        let mats = self.path_matrices();
        let mut m = Mat::zeros(f, self.dim_at(x.target), self.dim_at(x.source));
        for (c, &b) in x.coeffs.iter().zip(self.alg().block(x.source, x.target)) {
            if !f.is_zero(c) {
                m = m.add(&mats[b].scale(c));
            }
        }
        m
    }

    /// Submodule with the given column bases (one per vertex, closed under
    /// the arrows), and its inclusion.
    pub fn subrep(&self, bases: &[Mat<F>]) -> (Rep<F>, RepMap<F>) {
        let alg = self.alg();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let image = self.map(k).mul(&bases[a.source]);
                bases[a.target].solve(&image).expect("subspace not closed under the arrows")
            })
            .collect();
        let sub = Self::from_parts(alg, dims, maps);
        let incl = RepMap::from_parts(&sub, self, bases.to_vec());
        (sub, incl)
    }

    /// Quotient by the submodule spanned (vertexwise) by the given columns,
    /// with the projection. The quotient basis is the canonical complement.
    pub fn quotient(&self, spans: &[Mat<F>]) -> (Rep<F>, RepMap<F>) {
        let f = self.field();
        let alg = self.alg();
        let mut projections = Vec::with_capacity(spans.len());
        let mut sections = Vec::with_capacity(spans.len());
        for (v, s) in spans.iter().enumerate() {
            let d = self.dim_at(v);
            let sub = Subspace::span(f, d, &s.columns());
            let comp = sub.complement_basis();
            let mut all: Vec<Vec<F::Elem>> = sub.basis().to_vec();
            all.extend(comp.iter().cloned());
            let change = Mat::from_columns(f, d, &all);
            let inv = change.inverse().expect("basis change is invertible");
            let rows: Vec<usize> = (sub.dim()..d).collect();
            projections.push(inv.select_rows(&rows));
            sections.push(Mat::from_columns(f, d, &comp));
        }
        let dims: Vec<usize> = sections.iter().map(|s| s.cols()).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| projections[a.target].mul(self.map(k)).mul(&sections[a.source]))
            .collect();
        let q = Self::from_parts(alg, dims, maps);
        let proj = RepMap::from_parts(self, &q, projections);
        (q, proj)
    }
}

/// A module homomorphism, one matrix per vertex (`target dim × source dim`).
#[derive(Clone)]
pub struct RepMap<F: Field> {
    source: Rep<F>,
    target: Rep<F>,
    comps: Vec<Mat<F>>,
}

impl<F: Field> fmt::Debug for RepMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMap {:?} -> {:?}", self.source.dims(), self.target.dims())
    }
}

impl<F: Field> RepMap<F> {
    /// Checks shapes and the commutation `f_t X_a = Y_a f_s`.
    pub fn new(source: &Rep<F>, target: &Rep<F>, comps: Vec<Mat<F>>) -> Result<Self> {
        if !same_algebra(source.alg(), target.alg()) {
            return Err(Error::AlgebraMismatch("map between modules over different algebras".into()));
        }
        let m = Self::from_parts(source, target, comps);
        for (v, c) in m.comps.iter().enumerate() {
            if c.rows() != target.dim_at(v) || c.cols() != source.dim_at(v) {
                return Err(Error::Invalid(format!("component at vertex {v} has the wrong shape")));
            }
        }
        if !m.commutes() {
            return Err(Error::Invalid("matrices do not commute with the arrows".into()));
        }
        Ok(m)
    }

    pub(crate) fn from_parts(source: &Rep<F>, target: &Rep<F>, comps: Vec<Mat<F>>) -> Self {
        RepMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn commutes(&self) -> bool {
        self.source.alg().quiver().arrows().iter().enumerate().all(|(k, a)| {
            self.comps[a.target].mul(self.source.map(k)) == self.target.map(k).mul(&self.comps[a.source])
        })
    }

    pub fn zero(source: &Rep<F>, target: &Rep<F>) -> Self {
        let f = source.field();
        let comps = (0..source.dims().len()).map(|v| Mat::zeros(f, target.dim_at(v), source.dim_at(v))).collect();
        Self::from_parts(source, target, comps)
    }

    pub fn identity(x: &Rep<F>) -> Self {
        let f = x.field();
        let comps = x.dims().iter().map(|&d| Mat::identity(f, d)).collect();
        Self::from_parts(x, x, comps)
    }

    pub fn source(&self) -> &Rep<F> {
        &self.source
    }
    pub fn target(&self) -> &Rep<F> {
        &self.target
    }
    pub fn comps(&self) -> &[Mat<F>] {
        &self.comps
    }
    pub fn comp(&self, v: usize) -> &Mat<F> {
        &self.comps[v]
    }

    /// Same maps, viewed between other objects with the same dimension
    /// vectors (e.g. a sum seen through an explicit decomposition).
    pub fn retarget(&self, source: &Rep<F>, target: &Rep<F>) -> Self {
        debug_assert_eq!(source.dims(), self.source.dims());
        debug_assert_eq!(target.dims(), self.target.dims());
        Self::from_parts(source, target, self.comps.clone())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &RepMap<F>) -> RepMap<F> {
        assert_eq!(first.target.dims(), self.source.dims(), "maps do not compose");
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.mul(f)).collect();
        Self::from_parts(&first.source, &self.target, comps)
    }

    pub fn add(&self, other: &RepMap<F>) -> RepMap<F> {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        Self::from_parts(&self.source, &self.target, comps)
    }

    pub fn sub(&self, other: &RepMap<F>) -> RepMap<F> {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect();
        Self::from_parts(&self.source, &self.target, comps)
    }

    pub fn neg(&self) -> RepMap<F> {
        let comps = self.comps.iter().map(|a| a.neg()).collect();
        Self::from_parts(&self.source, &self.target, comps)
    }

    pub fn scale(&self, c: &F::Elem) -> RepMap<F> {
        let comps = self.comps.iter().map(|a| a.scale(c)).collect();
        Self::from_parts(&self.source, &self.target, comps)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn inverse(&self) -> Option<RepMap<F>> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(Self::from_parts(&self.target, &self.source, comps))
    }

    /// `Σ_v tr(f_v)`.
    pub fn trace(&self) -> F::Elem {
        let f = self.source.field();
        self.comps.iter().fold(f.zero(), |acc, c| f.add(&acc, &c.trace()))
    }

    /// Entries of all components, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<F::Elem> {
        self.comps.iter().flat_map(|c| c.data().iter().cloned()).collect()
    }

    pub fn from_flat(source: &Rep<F>, target: &Rep<F>, v: &[F::Elem]) -> Self {
        let f = source.field();
        let mut off = 0;
        let comps = (0..source.dims().len())
            .map(|i| {
                let (r, c) = (target.dim_at(i), source.dim_at(i));
                let m = Mat::from_vec(f, r, c, v[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        Self::from_parts(source, target, comps)
    }

    pub fn kernel(&self) -> (Rep<F>, RepMap<F>) {
        let f = self.source.field();
        let bases: Vec<Mat<F>> = self
            .comps
            .iter()
            .enumerate()
            .map(|(v, c)| Mat::from_columns(f, self.source.dim_at(v), &c.kernel()))
            .collect();
        self.source.subrep(&bases)
    }

    pub fn image(&self) -> (Rep<F>, RepMap<F>) {
        let f = self.source.field();
        let bases: Vec<Mat<F>> = self
            .comps
            .iter()
            .enumerate()
            .map(|(v, c)| Mat::from_columns(f, self.target.dim_at(v), &c.image()))
            .collect();
        self.target.subrep(&bases)
    }

    pub fn cokernel(&self) -> (Rep<F>, RepMap<F>) {
        self.target.quotient(&self.comps)
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.comps.iter().map(|c| c.rank()).collect()
    }

    /// `f ⊗ g` over the tensor product algebra.
    pub fn tensor(&self, g: &RepMap<F>, over: &Alg<F>) -> Result<RepMap<F>> {
        let s = super::tensor_rep(&self.source, &g.source, over)?;
        let t = super::tensor_rep(&self.target, &g.target, over)?;
        let tf = over.tensor_factors().unwrap();
        let comps = (0..over.vertex_count())
            .map(|v| {
                let (i, j) = tf.pair(v);
                self.comps[i].kronecker(&g.comps[j])
            })
            .collect();
        Ok(Self::from_parts(&s, &t, comps))
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum<F: Field> {
    pub sum: Rep<F>,
    pub parts: Vec<Rep<F>>,
    pub inclusions: Vec<RepMap<F>>,
    pub projections: Vec<RepMap<F>>,
}

impl<F: Field> DirectSum<F> {
    pub fn new(alg: &Alg<F>, parts: &[Rep<F>]) -> Self {
        let f = alg.field();
        let n = alg.vertex_count();
        let sum = if parts.len() == 1 { parts[0].clone() } else { Rep::direct_sum(alg, parts) };
        let mut inclusions = Vec::with_capacity(parts.len());
        let mut projections = Vec::with_capacity(parts.len());
        let mut offsets = vec![0usize; n];
        for p in parts {
            let mut inc = Vec::with_capacity(n);
            let mut proj = Vec::with_capacity(n);
            for v in 0..n {
                let (d, total) = (p.dim_at(v), sum.dim_at(v));
                let mut i = Mat::zeros(f, total, d);
                let mut q = Mat::zeros(f, d, total);
                for k in 0..d {
                    i.set(offsets[v] + k, k, f.one());
                    q.set(k, offsets[v] + k, f.one());
                }
                offsets[v] += d;
                inc.push(i);
                proj.push(q);
            }
            inclusions.push(RepMap::from_parts(p, &sum, inc));
            projections.push(RepMap::from_parts(&sum, p, proj));
        }
        DirectSum { sum, parts: parts.to_vec(), inclusions, projections }
    }

    /// The map `⊕ source parts → ⊕ target parts` with components
    /// `comp(i, j): source part j → target part i` (or zero).
    pub fn matrix_map(
        source: &DirectSum<F>,
        target: &DirectSum<F>,
        mut comp: impl FnMut(usize, usize) -> Option<RepMap<F>>,
    ) -> RepMap<F> {
        let mut m = RepMap::zero(&source.sum, &target.sum);
        for i in 0..target.parts.len() {
            for j in 0..source.parts.len() {
                if let Some(c) = comp(i, j) {
                    m = m.add(&target.inclusions[i].compose(&c).compose(&source.projections[j]));
                }
            }
        }
        m
    }
}
