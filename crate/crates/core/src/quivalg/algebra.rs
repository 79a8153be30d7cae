use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use super::quiver::{enumerate_paths, Arrow, Path, Quiver};
use crate::error::{Error, Result};
use crate::exactla::{Field, Subspace};

/// A linear combination of parallel paths, each of length at least two.
/// Words are arrow ids composed left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F: Field> {
    pub terms: Vec<(F::Elem, Vec<usize>)>,
}

impl<F: Field> Relation<F> {
    pub fn new(terms: Vec<(F::Elem, Vec<usize>)>) -> Self {
        Relation { terms }
    }
}

/// An element of `e_s Λ e_t`, in coordinates of the basis paths from `s`
/// to `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem<F: Field> {
    pub source: usize,
    pub target: usize,
    pub coeffs: Vec<F::Elem>,
}

/// The factors of a tensor product algebra. Vertex `(i, j)` has index
/// `i·|V_B| + j`; arrows `(a, j)` come first, then `(i, b)`.
#[derive(Clone, Debug)]
pub struct TensorFactors<F: Field> {
    pub left: Arc<BoundQuiverAlgebra<F>>,
    pub right: Arc<BoundQuiverAlgebra<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorArrow {
    /// Arrow `a` of the left factor at vertex `j` of the right factor.
    Left { arrow: usize, vertex: usize },
    /// Arrow `b` of the right factor at vertex `i` of the left factor.
    Right { vertex: usize, arrow: usize },
}

impl<F: Field> TensorFactors<F> {
    pub fn vertex(&self, i: usize, j: usize) -> usize {
        i * self.right.vertex_count() + j
    }

    pub fn pair(&self, v: usize) -> (usize, usize) {
        let nb = self.right.vertex_count();
        (v / nb, v % nb)
    }

    pub fn arrow(&self, k: usize) -> TensorArrow {
        let nb = self.right.vertex_count();
        let left_count = self.left.quiver().arrows().len() * nb;
        if k < left_count {
            TensorArrow::Left { arrow: k / nb, vertex: k % nb }
        } else {
            let mb = self.right.quiver().arrows().len();
            let k = k - left_count;
            TensorArrow::Right { vertex: k / mb, arrow: k % mb }
        }
    }
}

enum OpLink<F: Field> {
    Owned(Arc<BoundQuiverAlgebra<F>>),
    Back(Weak<BoundQuiverAlgebra<F>>),
}

/// `kQ/I` for an acyclic quiver `Q`, with a basis of paths modulo the
/// ideal generated by the relations.
///
/// The basis of each block `e_s Λ e_t` consists of paths; when the ideal
/// identifies paths, the longest (and lexicographically last) ones are
/// rewritten in terms of the others.
pub struct BoundQuiverAlgebra<F: Field> {
    field: F,
    name: String,
    quiver: Quiver,
    relations: Vec<Relation<F>>,
    paths: Vec<Path>,
    path_lookup: HashMap<(usize, Vec<usize>), usize>,
    block_paths: Vec<Vec<usize>>,
    ideals: Vec<Subspace<F>>,
    basis: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    basis_pos: Vec<usize>,
    reduction: Vec<Vec<F::Elem>>,
    mult: Vec<Vec<F::Elem>>,
    vertex_basis: Vec<usize>,
    arrow_basis: Vec<usize>,
    tensor: Option<TensorFactors<F>>,
    opposite: OnceLock<OpLink<F>>,
}

impl<F: Field> fmt::Debug for BoundQuiverAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundQuiverAlgebra")
            .field("name", &self.name)
            .field("vertices", &self.quiver.vertex_count())
            .field("arrows", &self.quiver.arrows().len())
            .field("dim", &self.dim())
            .finish()
    }
}

impl<F: Field> BoundQuiverAlgebra<F> {
    pub fn new(field: &F, name: &str, quiver: Quiver, relations: Vec<Relation<F>>) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::build(field, name, quiver, relations, None)?))
    }

    fn build(
        field: &F,
        name: &str,
        quiver: Quiver,
        relations: Vec<Relation<F>>,
        tensor: Option<TensorFactors<F>>,
    ) -> Result<Self> {
        let n = quiver.vertex_count();
        let paths = enumerate_paths(&quiver)?;
        let mut path_lookup = HashMap::new();
        let mut block_paths = vec![Vec::new(); n * n];
        for (i, p) in paths.iter().enumerate() {
            path_lookup.insert((p.source, p.arrows.clone()), i);
            block_paths[p.source * n + p.target].push(i);
        }
        let mut endpoints = Vec::with_capacity(relations.len());
        for r in &relations {
            endpoints.push(check_relation(&quiver, r)?);
        }

        // Spanning vectors of the two-sided ideal, block by block.
        let mut ideal_vecs: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); n * n];
        for (r, &(u, v)) in relations.iter().zip(&endpoints) {
            for s in 0..n {
                for &pi in &block_paths[s * n + u] {
                    for t in 0..n {
                        let bp = &block_paths[s * n + t];
                        if bp.is_empty() {
                            continue;
                        }
                        for &qi in &block_paths[v * n + t] {
                            let mut vec = vec![field.zero(); bp.len()];
                            for (c, w) in &r.terms {
                                let mut word = paths[pi].arrows.clone();
                                word.extend_from_slice(w);
                                word.extend_from_slice(&paths[qi].arrows);
                                let idx = path_lookup[&(s, word)];
                                let pos = bp.iter().position(|&x| x == idx).unwrap();
                                vec[pos] = field.add(&vec[pos], c);
                            }
                            if vec.iter().any(|x| !field.is_zero(x)) {
                                ideal_vecs[s * n + t].push(vec);
                            }
                        }
                    }
                }
            }
        }

        let mut ideals = Vec::with_capacity(n * n);
        let mut basis = Vec::new();
        let mut blocks = vec![Vec::new(); n * n];
        let mut basis_pos = Vec::new();
        let mut reduction = vec![Vec::new(); paths.len()];
        for s in 0..n {
            for t in 0..n {
                let bp = &block_paths[s * n + t];
                let m = bp.len();
                let ideal = Subspace::span(field, m, &ideal_vecs[s * n + t]);
                // Reverse column order so pivots land on the largest paths.
                let reversed: Vec<Vec<F::Elem>> =
                    ideal.basis().iter().map(|row| row.iter().rev().cloned().collect()).collect();
                let rev = Subspace::span(field, m, &reversed);
                let mut pivot_row = vec![None; m];
                for (row, &c) in rev.pivots().iter().enumerate() {
                    pivot_row[m - 1 - c] = Some(row);
                }
                let kept: Vec<usize> = (0..m).filter(|&i| pivot_row[i].is_none()).collect();
                for (pos, &i) in kept.iter().enumerate() {
                    blocks[s * n + t].push(basis.len());
                    basis.push(bp[i]);
                    basis_pos.push(pos);
                    let mut unit = vec![field.zero(); kept.len()];
                    unit[pos] = field.one();
                    reduction[bp[i]] = unit;
                }
                for i in 0..m {
                    if let Some(row) = pivot_row[i] {
                        let r = &rev.basis()[row];
                        reduction[bp[i]] = kept.iter().map(|&k| field.neg(&r[m - 1 - k])).collect();
                    }
                }
                ideals.push(ideal);
            }
        }

        let dim = basis.len();
        let mut mult = vec![Vec::new(); dim * dim];
        for (bi, &pb) in basis.iter().enumerate() {
            for (ci, &pc) in basis.iter().enumerate() {
                if let Some(p) = paths[pb].concat(&paths[pc]) {
                    let idx = path_lookup[&(p.source, p.arrows)];
                    mult[bi * dim + ci] = reduction[idx].clone();
                }
            }
        }
        let find_basis = |p: usize| basis.iter().position(|&x| x == p);
        let vertex_basis = (0..n)
            .map(|v| find_basis(path_lookup[&(v, Vec::new())]).expect("trivial path in the ideal"))
            .collect();
        let arrow_basis = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| {
                find_basis(path_lookup[&(a.source, vec![k])])
                    .ok_or_else(|| Error::Invalid(format!("arrow {} lies in the relation ideal", a.name)))
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(BoundQuiverAlgebra {
            field: field.clone(),
            name: name.to_string(),
            quiver,
            relations,
            paths,
            path_lookup,
            block_paths,
            ideals,
            basis,
            blocks,
            basis_pos,
            reduction,
            mult,
            vertex_basis,
            arrow_basis,
            tensor,
            opposite: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation<F>] {
        &self.relations
    }
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows().len()
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn tensor_factors(&self) -> Option<&TensorFactors<F>> {
        self.tensor.as_ref()
    }
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Global indices of the basis paths from `s` to `t`.
    pub fn block(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s * self.vertex_count() + t]
    }

    pub fn block_dim(&self, s: usize, t: usize) -> usize {
        self.block(s, t).len()
    }

    pub fn basis_path(&self, b: usize) -> &Path {
        &self.paths[self.basis[b]]
    }

    /// Position of basis element `b` inside its block.
    pub fn basis_position(&self, b: usize) -> usize {
        self.basis_pos[b]
    }

    pub fn vertex_basis(&self, v: usize) -> usize {
        self.vertex_basis[v]
    }

    pub fn arrow_basis(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Product of two basis elements as coordinates in the block
    /// `(source of b, target of c)`; empty when they do not compose.
    pub fn basis_product(&self, b: usize, c: usize) -> &[F::Elem] {
        &self.mult[b * self.dim() + c]
    }

    /// Class of the path `word` starting at `source`, if it is a path.
    pub fn reduce_word(&self, source: usize, word: &[usize]) -> Option<AlgElem<F>> {
        let idx = *self.path_lookup.get(&(source, word.to_vec()))?;
        let p = &self.paths[idx];
        Some(AlgElem { source: p.source, target: p.target, coeffs: self.reduction[idx].clone() })
    }

    pub fn zero_elem(&self, s: usize, t: usize) -> AlgElem<F> {
        AlgElem { source: s, target: t, coeffs: vec![self.field.zero(); self.block_dim(s, t)] }
    }

    pub fn basis_elem(&self, b: usize) -> AlgElem<F> {
        let p = self.basis_path(b);
        let mut e = self.zero_elem(p.source, p.target);
        e.coeffs[self.basis_pos[b]] = self.field.one();
        e
    }

    pub fn idempotent(&self, v: usize) -> AlgElem<F> {
        self.basis_elem(self.vertex_basis[v])
    }

    pub fn elem_is_zero(&self, x: &AlgElem<F>) -> bool {
        x.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn elem_add(&self, x: &AlgElem<F>, y: &AlgElem<F>) -> AlgElem<F> {
        assert_eq!((x.source, x.target), (y.source, y.target));
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| self.field.add(a, b)).collect();
        AlgElem { source: x.source, target: x.target, coeffs }
    }

    pub fn elem_scale(&self, x: &AlgElem<F>, c: &F::Elem) -> AlgElem<F> {
        let coeffs = x.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        AlgElem { source: x.source, target: x.target, coeffs }
    }

    /// `x · y`, paths composed left to right.
    pub fn elem_mul(&self, x: &AlgElem<F>, y: &AlgElem<F>) -> AlgElem<F> {
        assert_eq!(x.target, y.source, "elements do not compose");
        let f = &self.field;
        let mut out = self.zero_elem(x.source, y.target);
        for (bi, &b) in self.block(x.source, x.target).iter().enumerate() {
            if f.is_zero(&x.coeffs[bi]) {
                continue;
            }
            for (ci, &c) in self.block(y.source, y.target).iter().enumerate() {
                if f.is_zero(&y.coeffs[ci]) {
                    continue;
                }
                let coef = f.mul(&x.coeffs[bi], &y.coeffs[ci]);
                for (o, p) in out.coeffs.iter_mut().zip(self.basis_product(b, c)) {
                    f.add_mul_assign(o, &coef, p);
                }
            }
        }
        out
    }

    pub fn format_elem(&self, x: &AlgElem<F>) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (c, &b) in x.coeffs.iter().zip(self.block(x.source, x.target)) {
            if f.is_zero(c) {
                continue;
            }
            let p = self.basis_path(b);
            let word = if p.is_trivial() {
                format!("e{}", self.quiver.vertex_name(p.source))
            } else {
                self.quiver.word_name(&p.arrows)
            };
            parts.push(if f.is_one(c) { word } else { format!("{}*{}", f.format(c), word) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The opposite algebra. Cached, and `opposite(opposite(A))` is `A`
    /// itself while `A` is alive.
    pub fn opposite(self: &Arc<Self>) -> Arc<Self> {
        let link = self.opposite.get_or_init(|| {
            let relations = self
                .relations
                .iter()
                .map(|r| Relation::new(r.terms.iter().map(|(c, w)| (c.clone(), w.iter().rev().cloned().collect())).collect()))
                .collect();
            let tensor = self.tensor.as_ref().map(|t| TensorFactors { left: t.left.opposite(), right: t.right.opposite() });
            let op = Self::build(&self.field, &opposite_name(&self.name), self.quiver.opposite(), relations, tensor)
                .expect("opposite of a valid algebra is valid");
            op.opposite.set(OpLink::Back(Arc::downgrade(self))).ok();
            OpLink::Owned(Arc::new(op))
        });
        match link {
            OpLink::Owned(op) => op.clone(),
            OpLink::Back(w) => w.upgrade().unwrap_or_else(|| {
                // The original is gone; rebuild a structurally identical copy.
                let relations = self
                    .relations
                    .iter()
                    .map(|r| Relation::new(r.terms.iter().map(|(c, w)| (c.clone(), w.iter().rev().cloned().collect())).collect()))
                    .collect();
                Arc::new(
                    Self::build(&self.field, &opposite_name(&self.name), self.quiver.opposite(), relations, None)
                        .expect("opposite of a valid algebra is valid"),
                )
            }),
        }
    }

    /// Image of `x ∈ e_sΛe_t` in `e_tΛ^op e_s` (reverse every path).
    pub fn to_opposite_elem(self: &Arc<Self>, x: &AlgElem<F>) -> AlgElem<F> {
        let op = self.opposite();
        let f = &self.field;
        let mut out = op.zero_elem(x.target, x.source);
        for (c, &b) in x.coeffs.iter().zip(self.block(x.source, x.target)) {
            if f.is_zero(c) {
                continue;
            }
            let word: Vec<usize> = self.basis_path(b).arrows.iter().rev().cloned().collect();
            let r = op.reduce_word(x.target, &word).expect("reversed path exists");
            for (o, p) in out.coeffs.iter_mut().zip(&r.coeffs) {
                f.add_mul_assign(o, c, p);
            }
        }
        out
    }

    /// Same field, quiver and relation ideal.
    pub fn same_presentation(&self, other: &Self) -> bool {
        if self.field != other.field || self.quiver != other.quiver {
            return false;
        }
        let id_v: Vec<usize> = (0..self.vertex_count()).collect();
        let id_a: Vec<usize> = (0..self.arrow_count()).collect();
        self.is_relabeling_of(other, &id_v, &id_a)
    }

    /// Whether sending vertex `v` to `vertex_map[v]` and arrow `a` to
    /// `arrow_map[a]` identifies this algebra with `other`.
    pub fn is_relabeling_of(&self, other: &Self, vertex_map: &[usize], arrow_map: &[usize]) -> bool {
        let n = self.vertex_count();
        if n != other.vertex_count() || self.arrow_count() != other.arrow_count() || self.field != other.field {
            return false;
        }
        for (k, a) in self.quiver.arrows().iter().enumerate() {
            let b = other.quiver.arrow(arrow_map[k]);
            if b.source != vertex_map[a.source] || b.target != vertex_map[a.target] {
                return false;
            }
        }
        for s in 0..n {
            for t in 0..n {
                let bp = &self.block_paths[s * n + t];
                let (s2, t2) = (vertex_map[s], vertex_map[t]);
                let obp = &other.block_paths[s2 * n + t2];
                if bp.len() != obp.len() {
                    return false;
                }
                let pos_in_other: Vec<usize> = bp
                    .iter()
                    .map(|&pi| {
                        let word: Vec<usize> = self.paths[pi].arrows.iter().map(|&a| arrow_map[a]).collect();
                        let idx = other.path_lookup[&(s2, word)];
                        obp.iter().position(|&x| x == idx).unwrap()
                    })
                    .collect();
                let mapped: Vec<Vec<F::Elem>> = self.ideals[s * n + t]
                    .basis()
                    .iter()
                    .map(|row| {
                        let mut v = vec![self.field.zero(); row.len()];
                        for (i, c) in row.iter().enumerate() {
                            v[pos_in_other[i]] = c.clone();
                        }
                        v
                    })
                    .collect();
                let oi = &other.ideals[s2 * n + t2];
                if mapped.len() != oi.dim() || !oi.contains_all(&mapped) {
                    return false;
                }
            }
        }
        true
    }
}

fn opposite_name(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}

fn check_relation<F: Field>(q: &Quiver, r: &Relation<F>) -> Result<(usize, usize)> {
    let describe = || {
        r.terms.iter().map(|(_, w)| q.word_name(w)).collect::<Vec<_>>().join(" | ")
    };
    let mut ends = None;
    for (_, w) in &r.terms {
        if w.len() < 2 || w.iter().any(|&a| a >= q.arrows().len()) {
            return Err(Error::InconsistentRelation(describe()));
        }
        if w.windows(2).any(|p| q.arrow(p[0]).target != q.arrow(p[1]).source) {
            return Err(Error::InconsistentRelation(describe()));
        }
        let e = (q.arrow(w[0]).source, q.arrow(*w.last().unwrap()).target);
        if ends.is_some_and(|x| x != e) {
            return Err(Error::InconsistentRelation(describe()));
        }
        ends = Some(e);
    }
    ends.ok_or_else(|| Error::InconsistentRelation("empty relation".into()))
}

/// Whether two handles refer to the same algebra.
pub fn same_algebra<F: Field>(a: &Arc<BoundQuiverAlgebra<F>>, b: &Arc<BoundQuiverAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || a.same_presentation(b)
}

/// `A ⊗_k B` as a bound quiver algebra.
///
/// Relations: every relation of `A` at every vertex of `B`, every relation
/// of `B` at every vertex of `A`, and for arrows `a: i → i'`, `b: j → j'`
/// the commutativity relation `(a,j)·(i',b) − (i,b)·(a,j')`.
pub fn tensor_algebra<F: Field>(
    a: &Arc<BoundQuiverAlgebra<F>>,
    b: &Arc<BoundQuiverAlgebra<F>>,
) -> Result<Arc<BoundQuiverAlgebra<F>>> {
    if a.field() != b.field() {
        return Err(Error::AlgebraMismatch("tensor factors over different fields".into()));
    }
    let f = a.field();
    let (qa, qb) = (a.quiver(), b.quiver());
    let (na, nb) = (qa.vertex_count(), qb.vertex_count());
    let (ma, mb) = (qa.arrows().len(), qb.arrows().len());
    let mut vertices = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            vertices.push(format!("{}|{}", qa.vertex_name(i), qb.vertex_name(j)));
        }
    }
    let left = |k: usize, j: usize| k * nb + j;
    let right = |i: usize, k: usize| ma * nb + i * mb + k;
    let mut arrows = Vec::with_capacity(ma * nb + na * mb);
    for (k, ar) in qa.arrows().iter().enumerate() {
        for j in 0..nb {
            debug_assert_eq!(arrows.len(), left(k, j));
            arrows.push(Arrow {
                name: format!("{}|{}", ar.name, qb.vertex_name(j)),
                source: ar.source * nb + j,
                target: ar.target * nb + j,
            });
        }
    }
    for i in 0..na {
        for (k, br) in qb.arrows().iter().enumerate() {
            debug_assert_eq!(arrows.len(), right(i, k));
            arrows.push(Arrow {
                name: format!("{}|{}", qa.vertex_name(i), br.name),
                source: i * nb + br.source,
                target: i * nb + br.target,
            });
        }
    }
    let mut relations = Vec::new();
    for r in a.relations() {
        for j in 0..nb {
            relations.push(Relation::new(
                r.terms.iter().map(|(c, w)| (c.clone(), w.iter().map(|&k| left(k, j)).collect())).collect(),
            ));
        }
    }
    for i in 0..na {
        for r in b.relations() {
            relations.push(Relation::new(
                r.terms.iter().map(|(c, w)| (c.clone(), w.iter().map(|&k| right(i, k)).collect())).collect(),
            ));
        }
    }
    for (ka, ar) in qa.arrows().iter().enumerate() {
        for (kb, br) in qb.arrows().iter().enumerate() {
            relations.push(Relation::new(vec![
                (f.one(), vec![left(ka, br.source), right(ar.target, kb)]),
                (f.neg(&f.one()), vec![right(ar.source, kb), left(ka, br.target)]),
            ]));
        }
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let name = format!("{}*{}", a.name(), b.name());
    let alg = BoundQuiverAlgebra::build(
        f,
        &name,
        quiver,
        relations,
        Some(TensorFactors { left: a.clone(), right: b.clone() }),
    )?;
    if alg.dim() != a.dim() * b.dim() {
        return Err(Error::Invalid(format!(
            "tensor presentation has dimension {} instead of {}",
            alg.dim(),
            a.dim() * b.dim()
        )));
    }
    Ok(Arc::new(alg))
}
