use std::fmt;

use super::field::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Result of [`Mat::kernel_image`]. Vectors are columns given as `Vec`s.
#[derive(Clone, Debug)]
pub struct KernelImage<E> {
    pub kernel: Vec<Vec<E>>,
    pub image: Vec<Vec<E>>,
    pub rank: usize,
}

/// `AX = B` has no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoSolution;

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.field.format(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// In-place reduced row echelon form on a row-major buffer. Pivots are only
/// searched in the first `pivot_cols` columns. Returns the pivot columns.
pub(crate) fn rref_in_place<F: Field>(
    field: &F,
    data: &mut [F::Elem],
    rows: usize,
    cols: usize,
    pivot_cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(&data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = field.mul(&data[r * cols + j], &inv);
        }
        let pivot_row: Vec<F::Elem> = data[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c].clone();
            if field.is_zero(&factor) {
                continue;
            }
            let neg = field.neg(&factor);
            for (k, pv) in pivot_row.iter().enumerate() {
                if !field.is_zero(pv) {
                    field.add_mul_assign(&mut data[i * cols + c + k], &neg, pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field: field.clone(), rows, cols, data }
    }

    /// Integer entries, mainly for tests.
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Mat { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let brow = &other.data[k * oc..(k + 1) * oc];
                let orow = &mut out.data[i * oc..(i + 1) * oc];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !f.is_zero(b) {
                        f.add_mul_assign(o, a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        f.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut result = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// `(A⊗B)[i·B.rows+k, j·B.cols+l] = A[i,j]·B[k,l]`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let f = &self.field;
        let (br, bc) = (other.rows, other.cols);
        let mut out = Self::zeros(f, self.rows * br, self.cols * bc);
        let oc = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..br {
                    for l in 0..bc {
                        out.data[(i * br + k) * oc + j * bc + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Copy of the block `rows × cols` starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Self::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn hstack(field: &F, rows: usize, blocks: &[&Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut c = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, c, b);
            c += b.cols;
        }
        out
    }

    pub fn vstack(field: &F, cols: usize, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            out.set_block(r, 0, b);
            r += b.rows;
        }
        out
    }

    pub fn block_diag(field: &F, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, m.rows, m.cols, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical null space basis: one vector per free column, with a 1 in
    /// that column and zeros in the other free columns.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&self.field, &r, &pivots)
    }

    /// Canonical column space basis: the nonzero rows of rref(Aᵀ).
    pub fn image(&self) -> Vec<Vec<F::Elem>> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn kernel_image(&self) -> KernelImage<F::Elem> {
        let kernel = self.kernel();
        let image = self.image();
        let rank = image.len();
        KernelImage { kernel, image, rank }
    }

    /// Solves `self · X = b`, free variables set to zero.
    pub fn solve(&self, b: &Self) -> Result<Self, NoSolution> {
        assert_eq!(self.rows, b.rows, "row mismatch in solve");
        let f = &self.field;
        let n = self.cols;
        let w = n + b.cols;
        let mut aug = Vec::with_capacity(self.rows * w);
        for i in 0..self.rows {
            aug.extend(self.row(i).iter().cloned());
            aug.extend(b.row(i).iter().cloned());
        }
        let pivots = rref_in_place(f, &mut aug, self.rows, w, n);
        for i in pivots.len()..self.rows {
            if aug[i * w + n..(i + 1) * w].iter().any(|x| !f.is_zero(x)) {
                return Err(NoSolution);
            }
        }
        let mut x = Self::zeros(f, n, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, aug[i * w + n + j].clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Self::identity(&self.field, self.rows)).ok()?;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn determinant(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&m[i * n + c])) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m[c * n + c].clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv);
            for i in c + 1..n {
                let factor = f.mul(&m[i * n + c], &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(&factor, &m[c * n + j]);
                    m[i * n + j] = f.sub(&m[i * n + j], &t);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        let mut t = f.zero();
        for i in 0..self.rows.min(self.cols) {
            t = f.add(&t, self.get(i, i));
        }
        t
    }

    /// Characteristic polynomial `det(xI − A)`, constant term first, via
    /// reduction to Hessenberg form.
    pub fn charpoly(&self) -> Vec<F::Elem> {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1));
            for k in m + 1..n {
                let u = f.mul(h.get(k, m - 1), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(&u, h.get(m, j));
                    let v = f.sub(h.get(k, j), &t);
                    h.set(k, j, v);
                }
                for r in 0..n {
                    let t = f.mul(&u, h.get(r, k));
                    let v = f.add(h.get(r, m), &t);
                    h.set(r, m, v);
                }
            }
        }
        let mut p: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for m in 1..=n {
            let hmm = h.get(m - 1, m - 1);
            let prev = &p[m - 1];
            let mut next = vec![f.zero(); m + 1];
            for (k, c) in prev.iter().enumerate() {
                next[k + 1] = f.add(&next[k + 1], c);
                let t = f.mul(hmm, c);
                next[k] = f.sub(&next[k], &t);
            }
            let mut t = f.one();
            for i in (1..m).rev() {
                t = f.mul(&t, h.get(i, i - 1));
                if f.is_zero(&t) {
                    break;
                }
                let coef = f.mul(&t, h.get(i - 1, m - 1));
                for (k, c) in p[i - 1].iter().enumerate() {
                    let s = f.mul(&coef, c);
                    next[k] = f.sub(&next[k], &s);
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}

pub(crate) fn kernel_from_rref<F: Field>(f: &F, r: &Mat<F>, pivots: &[usize]) -> Vec<Vec<F::Elem>> {
    let n = r.cols;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); n];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}
