//! Small algebras used throughout the tests and the command line corpus.

use std::sync::Arc;

use super::algebra::{BoundQuiverAlgebra, Relation};
use super::quiver::{Arrow, Quiver};
use crate::error::{Error, Result};
use crate::exactla::Field;

/// Builds an algebra from vertex names, `(name, source, target)` arrows and
/// relations given as `(coefficient, "a.b.c")` terms.
pub fn from_names<F: Field>(
    field: &F,
    name: &str,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(i64, &str)]],
) -> Result<Arc<BoundQuiverAlgebra<F>>> {
    let vidx = |v: &str| {
        vertices.iter().position(|x| *x == v).ok_or_else(|| Error::Invalid(format!("unknown vertex {v}")))
    };
    let arrows = arrows
        .iter()
        .map(|(n, s, t)| Ok(Arrow { name: n.to_string(), source: vidx(s)?, target: vidx(t)? }))
        .collect::<Result<Vec<_>>>()?;
    let quiver = Quiver::new(vertices.iter().map(|v| v.to_string()).collect(), arrows)?;
    let rels = relations
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|(c, word)| {
                    let w = word
                        .split('.')
                        .map(|a| quiver.arrow_index(a).ok_or_else(|| Error::Invalid(format!("unknown arrow {a}"))))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((field.from_i64(*c), w))
                })
                .collect::<Result<Vec<_>>>()
                .map(Relation::new)
        })
        .collect::<Result<Vec<_>>>()?;
    BoundQuiverAlgebra::new(field, name, quiver, rels)
}

/// The field itself, as a one-vertex algebra.
pub fn one_vertex<F: Field>(field: &F) -> Arc<BoundQuiverAlgebra<F>> {
    from_names(field, "k", &["1"], &[], &[]).unwrap()
}

/// `k × ... × k` with `n` factors.
pub fn semisimple<F: Field>(field: &F, n: usize) -> Arc<BoundQuiverAlgebra<F>> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    from_names(field, &format!("k^{n}"), &refs, &[], &[]).unwrap()
}

/// `1 ← 2`.
pub fn a2<F: Field>(field: &F) -> Arc<BoundQuiverAlgebra<F>> {
    from_names(field, "A2", &["1", "2"], &[("a", "2", "1")], &[]).unwrap()
}

/// `a ← b ← c`.
pub fn a3_linear<F: Field>(field: &F) -> Arc<BoundQuiverAlgebra<F>> {
    from_names(field, "A3", &["a", "b", "c"], &[("x", "b", "a"), ("y", "c", "b")], &[]).unwrap()
}

/// `1 → 2 ← 3`.
pub fn a3_bipartite<F: Field>(field: &F) -> Arc<BoundQuiverAlgebra<F>> {
    from_names(field, "A3bip", &["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")], &[]).unwrap()
}

/// Subspace orientation of D4: arrows `2 → 1`, `3 → 1`, `4 → 1`.
pub fn d4_subspace<F: Field>(field: &F) -> Arc<BoundQuiverAlgebra<F>> {
    from_names(
        field,
        "D4",
        &["1", "2", "3", "4"],
        &[("a", "2", "1"), ("b", "3", "1"), ("c", "4", "1")],
        &[],
    )
    .unwrap()
}

/// The commutative square `22 → 12 → 11`, `22 → 21 → 11`.
pub fn commutative_square<F: Field>(field: &F) -> Arc<BoundQuiverAlgebra<F>> {
    from_names(
        field,
        "square",
        &["11", "12", "21", "22"],
        &[("p", "12", "11"), ("q", "21", "11"), ("r", "22", "12"), ("s", "22", "21")],
        &[&[(1, "r.p"), (-1, "s.q")]],
    )
    .unwrap()
}
