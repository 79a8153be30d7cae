use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver without directed cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path as a word of arrow ids, composed left to right. The trivial path
/// at `v` has `source == target == v` and no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`; `None` when they do not meet.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }
}

impl Quiver {
    /// Checks indices, name uniqueness and acyclicity.
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = HashMap::new();
        for v in &vertices {
            if seen.insert(v.clone(), ()).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex name {v}")));
            }
        }
        let mut seen = HashMap::new();
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::Invalid(format!("arrow {} has an unknown endpoint", a.name)));
            }
            if seen.insert(a.name.clone(), ()).is_some() {
                return Err(Error::Invalid(format!("duplicate arrow name {}", a.name)));
            }
        }
        let q = Quiver { vertices, arrows };
        if let Some(v) = q.cycle_vertex() {
            return Err(Error::CyclicQuiver(q.vertices[v].clone()));
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows ending at `v`.
    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    /// Some vertex on a directed cycle, if any (Kahn's algorithm leftovers).
    fn cycle_vertex(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = vec![false; n];
        while let Some(v) = stack.pop() {
            removed[v] = true;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        (0..n).find(|&v| !removed[v])
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }

    pub fn word_name(&self, arrows: &[usize]) -> String {
        arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }
}

/// All paths, ordered by length and then lexicographically by arrow ids.
pub fn enumerate_paths(q: &Quiver) -> Result<Vec<Path>> {
    if let Some(v) = q.cycle_vertex() {
        return Err(Error::CyclicQuiver(q.vertex_name(v).to_string()));
    }
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for (i, a) in q.arrows().iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(i);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|x, y| {
        (x.len(), &x.arrows, x.source).cmp(&(y.len(), &y.arrows, y.source))
    });
    Ok(all)
}
