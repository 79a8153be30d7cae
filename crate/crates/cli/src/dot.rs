use std::fmt::Write as _;

use higherar::complete::{MCatalogue, TauImage};
use higherar::exactla::Field;
use higherar::knit::ArQuiver;
use higherar::quivalg::Quiver;
use higherar::repmod::{grid_rows, Rep};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn label<F: Field>(x: &Rep<F>) -> String {
    grid_rows(x).iter().map(|r| escape(r)).collect::<Vec<_>>().join("\\n")
}

fn edge(out: &mut String, from: usize, to: usize, mult: usize, dashed: bool) {
    let mut attrs = Vec::new();
    if mult > 1 {
        attrs.push(format!("label=\"{mult}\""));
    }
    if dashed {
        attrs.push("style=dashed".to_string());
    }
    if attrs.is_empty() {
        writeln!(out, "  n{from} -> n{to};").unwrap();
    } else {
        writeln!(out, "  n{from} -> n{to} [{}];", attrs.join(", ")).unwrap();
    }
}

pub fn quiver_dot(q: &Quiver) -> String {
    let mut s = String::from("digraph Q {\n");
    for (i, v) in q.vertex_names().iter().enumerate() {
        writeln!(s, "  n{i} [label=\"{}\"];", escape(v)).unwrap();
    }
    for a in q.arrows() {
        writeln!(s, "  n{} -> n{} [label=\"{}\"];", a.source, a.target, escape(&a.name)).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Irreducible maps of 𝓜 solid, `X ⇢ τ_d X` dashed when `tau` is set.
pub fn m_dot<F: Field>(cat: &MCatalogue<F>, arrows: &[(usize, usize, usize)], tau: bool) -> String {
    let mut s = String::from("digraph M {\n  node [shape=plaintext];\n");
    for (i, m) in cat.members.iter().enumerate() {
        writeln!(s, "  n{i} [label=\"{}\"];", label(&m.rep)).unwrap();
    }
    for &(x, y, k) in arrows {
        edge(&mut s, x, y, k, false);
    }
    if tau {
        for (i, m) in cat.members.iter().enumerate() {
            match &m.tau {
                TauImage::Member(j) => edge(&mut s, i, *j, 1, true),
                TauImage::Decomposable(js) => js.iter().for_each(|&j| edge(&mut s, i, j, 1, true)),
                TauImage::Zero => {}
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn ar_dot<F: Field>(ar: &ArQuiver<F>, tau: bool) -> String {
    let mut s = String::from("digraph AR {\n  node [shape=plaintext];\n");
    for (i, x) in ar.modules.iter().enumerate() {
        writeln!(s, "  n{i} [label=\"{}\"];", label(x)).unwrap();
    }
    for &(x, y, k) in &ar.arrows {
        edge(&mut s, x, y, k, false);
    }
    if tau {
        for (x, t) in ar.tau_minus.iter().enumerate() {
            if let Some(y) = t {
                edge(&mut s, *y, x, 1, true);
            }
        }
    }
    s.push_str("}\n");
    s
}
