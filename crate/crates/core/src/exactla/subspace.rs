use super::field::Field;
use super::mat::{rref_in_place, Mat};

/// A subspace of `F^n` kept in reduced echelon form, together with the
/// change of basis back to the vectors it was spanned by.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    /// `rows[j] = Σ_i transform[j][i] · generators[i]`
    transform: Vec<Vec<F::Elem>>,
    generators: usize,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new(), transform: Vec::new(), generators: 0 }
    }

    pub fn span(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let k = vectors.len();
        let w = ambient + k;
        let mut data = Vec::with_capacity(k * w);
        for (i, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            data.extend(v.iter().cloned());
            for j in 0..k {
                data.push(if i == j { field.one() } else { field.zero() });
            }
        }
        let pivots = rref_in_place(field, &mut data, k, w, ambient);
        let rows = (0..pivots.len()).map(|i| data[i * w..i * w + ambient].to_vec()).collect();
        let transform = (0..pivots.len()).map(|i| data[i * w + ambient..(i + 1) * w].to_vec()).collect();
        Subspace { field: field.clone(), ambient, rows, pivots, transform, generators: k }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let vecs: Vec<Vec<F::Elem>> = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Self::span(field, ambient, &vecs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    /// Echelon basis.
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its echelon expansion; zero iff `v` lies in the subspace.
    pub fn residue(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            let neg = f.neg(&c);
            for (x, y) in r.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    f.add_mul_assign(x, &neg, y);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.residue(v).iter().all(|x| self.field.is_zero(x))
    }

    pub fn contains_all(&self, vs: &[Vec<F::Elem>]) -> bool {
        vs.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis. Assumes membership.
    pub fn echelon_coords(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coefficients expressing `v` in the spanning vectors given at
    /// construction, or `None` if `v` is outside the span.
    pub fn generator_coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.generators];
        for (t, &p) in self.transform.iter().zip(&self.pivots) {
            let a = &v[p];
            if f.is_zero(a) {
                continue;
            }
            for (ci, ti) in c.iter_mut().zip(t) {
                f.add_mul_assign(ci, a, ti);
            }
        }
        Some(c)
    }

    /// Standard unit vectors at the non-pivot positions: a canonical
    /// complement.
    pub fn complement_basis(&self) -> Vec<Vec<F::Elem>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).map(|i| unit(&self.field, self.ambient, i)).collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Self::span(&self.field, self.ambient, &all)
    }

    /// Indices of those candidates that are independent modulo this
    /// subspace and the earlier chosen candidates.
    pub fn independent_extension(&self, candidates: &[Vec<F::Elem>]) -> Vec<usize> {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            if !current.contains(c) {
                chosen.push(i);
                let mut rows = current.rows.clone();
                rows.push(c.clone());
                current = Self::span(&self.field, self.ambient, &rows);
            }
        }
        chosen
    }

    /// Matrix with the echelon basis as columns.
    pub fn as_columns(&self) -> Mat<F> {
        Mat::from_columns(&self.field, self.ambient, &self.rows)
    }
}

pub fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Rationals;

    fn v(xs: &[i64]) -> Vec<num::BigRational> {
        xs.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn membership_and_coords() {
        let s = Subspace::span(&Rationals, 3, &[v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 2, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[2, 3, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
        let c = s.generator_coords(&v(&[2, 3, 1])).unwrap();
        let rebuilt: Vec<_> = (0..3)
            .map(|k| {
                let gens = [v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 2, 1])];
                gens.iter().zip(&c).fold(Rationals.zero(), |acc, (g, ci)| acc + &g[k] * ci)
            })
            .collect();
        assert_eq!(rebuilt, v(&[2, 3, 1]));
        assert_eq!(s.complement_basis(), vec![v(&[0, 0, 1])]);
    }

    #[test]
    fn independent_extension_skips_dependent() {
        let s = Subspace::span(&Rationals, 3, &[v(&[1, 0, 0])]);
        let picked = s.independent_extension(&[v(&[2, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0]), v(&[0, 0, 5])]);
        assert_eq!(picked, vec![1, 3]);
    }
}
