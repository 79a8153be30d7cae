//! Line-oriented `key = value` reports. Each ends in a `--- verdict` block.

use std::fmt::Write as _;

use higherar::complete::{
    build_m, classify_algebra, e_chain, structural_suite, verify_conditions, Check, MCatalogue, TauImage, Verdict,
};
use higherar::exactla::Field;
use higherar::homolog::{global_dimension, tau_d};
use higherar::knit::{classify_modules, enumerate_indecomposables, tag_counts, Tag};
use higherar::quivalg::{tensor_algebra, Alg};
use higherar::repmod::{grid, tensor_rep};
use higherar::seqcat::{sink_sequence, verify_almost_split, ComplexOfReps};
use higherar::tensorops::{ass_via_cone, homogeneity_transfer_check, injective_source_sequence, tau_tensor_check};
use higherar::Error;

use crate::dot::{ar_dot, m_dot, quiver_dot};
use crate::{CliError, Settings, EXIT_FAILED, EXIT_VERIFIED};

macro_rules! kv {
    ($out:expr, $k:expr, $($v:tt)*) => {
        writeln!($out, "{} = {}", $k, format!($($v)*)).unwrap()
    };
}

fn field_name<F: Field>(alg: &Alg<F>) -> String {
    match alg.field().characteristic() {
        0 => "Q".into(),
        p => format!("GF({p})"),
    }
}

fn header<F: Field>(alg: &Alg<F>, s: &Settings, out: &mut String) {
    kv!(out, "algebra", "{}", alg.name());
    kv!(out, "field", "{}", field_name(alg));
    kv!(out, "seed", "{}", s.seed);
    kv!(out, "vertices", "{}", alg.vertex_count());
    kv!(out, "dimension", "{}", alg.dim());
}

fn check_value(c: &Check) -> String {
    match (&c.ok, &c.witness) {
        (true, _) => "ok".into(),
        (false, Some(w)) => format!("failed: {w}"),
        (false, None) => "failed".into(),
    }
}

fn status(ok: bool) -> (&'static str, i32) {
    if ok {
        ("verified", EXIT_VERIFIED)
    } else {
        ("failed", EXIT_FAILED)
    }
}

fn catalogue_lines<F: Field>(cat: &MCatalogue<F>, out: &mut String) {
    kv!(out, "global_dimension", "{}", cat.gl_dim);
    kv!(out, "slices", "{}", join(cat.slice_sizes()));
    kv!(out, "members", "{}", cat.len());
    let t = cat.t_indices();
    for (i, m) in cat.members.iter().enumerate() {
        let tau = match &m.tau {
            TauImage::Zero => "0".to_string(),
            TauImage::Member(j) => cat.members[*j].label.clone(),
            TauImage::Decomposable(js) => js.iter().map(|&j| cat.members[j].label.clone()).collect::<Vec<_>>().join("+"),
        };
        let mut flags = String::new();
        if t.contains(&i) {
            flags.push_str(" T");
        }
        if m.injective.is_some() {
            flags.push_str(" injective");
        }
        kv!(out, format!("member.{i}"), "{} slice={} tau={tau}{flags}", m.label, m.slice);
    }
    kv!(out, "T", "{}", t.iter().map(|&i| cat.members[i].label.clone()).collect::<Vec<_>>().join(" "));
    kv!(out, "orbit_lengths", "{}", join(cat.orbit_lengths.clone()));
}

fn slug(s: &str) -> String {
    s.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()).collect::<Vec<_>>().join("_")
}

fn join(v: Vec<usize>) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn verdict_lines(v: &Verdict, out: &mut String) {
    kv!(out, "condition_A", "{}", check_value(&v.a));
    kv!(out, "condition_B", "{}", check_value(&v.b));
    kv!(out, "condition_C", "{}", check_value(&v.c));
    kv!(out, "condition_C_degree_0", "{}", check_value(&v.c_zero));
}

fn verdict_block(v: &Verdict, extra: &[(String, String)], ok: bool, out: &mut String) -> i32 {
    let d = v.d;
    out.push_str("--- verdict\n");
    kv!(out, format!("{d}-complete"), "{}", v.d_complete);
    kv!(out, "acyclic", "{}", v.acyclic.ok);
    kv!(out, format!("{d}-representation-finite"), "{}", v.d_rep_finite);
    kv!(out, "homogeneous", "{}", v.homogeneous.map_or("none".to_string(), |l| l.to_string()));
    for (k, val) in extra {
        kv!(out, k, "{val}");
    }
    let (word, code) = status(ok);
    kv!(out, "status", "{word}");
    code
}

fn structural_lines<F: Field>(cat: &MCatalogue<F>, out: &mut String) -> Result<bool, CliError> {
    let s = structural_suite(cat)?;
    for (name, c) in s.checks() {
        kv!(out, format!("structural.{}", slug(name)), "{}", check_value(c));
    }
    kv!(out, "sequences_verified", "{}", s.sequence_count);
    let e = e_chain(cat)?;
    for (k, step) in e.steps.iter().enumerate() {
        let labels: Vec<String> = step.iter().map(|&i| cat.members[i].label.clone()).collect();
        kv!(out, format!("e_chain.{k}"), "{} rigid={}", labels.join(" "), e.rigid.get(k).is_some_and(|c| c.ok));
    }
    kv!(out, "e_chain_reaches_T", "{}", e.reached_t);
    kv!(out, "e_chain_tilting", "{}", e.tilting);
    Ok(s.all_ok() && e.reached_t && e.tilting && e.rigid.iter().all(|c| c.ok))
}

/// `(verdict, catalogue)`, failing (A) with a witness when `gl.dim > d`.
fn verify_at<F: Field>(alg: &Alg<F>, d: usize, s: &Settings) -> Result<(Verdict, Option<MCatalogue<F>>), CliError> {
    if d == 0 {
        return Err(CliError::Input("d must be at least 1".into()));
    }
    let gl = global_dimension(alg)?;
    if gl > d {
        let fail = || Check::fail(format!("global dimension {gl} exceeds d = {d}"));
        let v = Verdict {
            d,
            a: fail(),
            b: fail(),
            c: fail(),
            c_zero: fail(),
            acyclic: fail(),
            d_complete: false,
            d_rep_finite: false,
            homogeneous: None,
            orbit_lengths: Vec::new(),
        };
        return Ok((v, None));
    }
    Ok(verify_conditions(alg, d, s.slice_cap, s.seed)?)
}

pub fn check<F: Field>(alg: &Alg<F>, d: usize, s: &Settings, out: &mut String) -> Result<i32, CliError> {
    header(alg, s, out);
    kv!(out, "d", "{d}");
    let (v, cat) = verify_at(alg, d, s)?;
    let mut ok = v.d_complete;
    if let Some(cat) = &cat {
        catalogue_lines(cat, out);
        verdict_lines(&v, out);
        if v.d_complete {
            ok &= structural_lines(cat, out)?;
        }
    } else {
        verdict_lines(&v, out);
    }
    Ok(verdict_block(&v, &[], ok, out))
}

pub fn tensor_check<F: Field>(a: &Alg<F>, b: &Alg<F>, n: usize, m: usize, s: &Settings, out: &mut String) -> Result<i32, CliError> {
    let d = n + m;
    let t = tensor_algebra(a, b)?;
    header(&t, s, out);
    kv!(out, "n", "{n}");
    kv!(out, "m", "{m}");
    kv!(out, "d", "{d}");
    let (va, ca) = verify_at(a, n, s)?;
    let (vb, cb) = verify_at(b, m, s)?;
    for (tag, v, k) in [("A", &va, n), ("B", &vb, m)] {
        kv!(out, format!("factor.{tag}.{k}-complete"), "{}", v.d_complete);
        kv!(out, format!("factor.{tag}.{k}-representation-finite"), "{}", v.d_rep_finite);
        kv!(out, format!("factor.{tag}.orbit_lengths"), "{}", join(v.orbit_lengths.clone()));
    }
    let (v, cat) = verify_at(&t, d, s)?;
    let mut ok = v.d_complete && va.d_complete && vb.d_complete;
    let mut extra = Vec::new();
    if let Some(cat) = &cat {
        catalogue_lines(cat, out);
        verdict_lines(&v, out);
        if v.d_complete {
            ok &= structural_lines(cat, out)?;
        }
        if let (Some(ca), Some(cb), true) = (&ca, &cb, ok) {
            ok &= factor_pipeline(ca, cb, cat, n, m, s, out, &mut extra)?;
            let predicted =
                va.d_rep_finite && vb.d_rep_finite && ca.homogeneous().is_some() && ca.homogeneous() == cb.homogeneous();
            let agrees = predicted == v.d_rep_finite;
            kv!(out, "representation_finite_from_factors", "{predicted}");
            extra.push(("representation_finite_agrees_with_factors".into(), agrees.to_string()));
            ok &= agrees;
        }
    } else {
        verdict_lines(&v, out);
    }
    Ok(verdict_block(&v, &extra, ok, out))
}

#[allow(clippy::too_many_arguments)]
fn factor_pipeline<F: Field>(
    ca: &MCatalogue<F>,
    cb: &MCatalogue<F>,
    cat: &MCatalogue<F>,
    n: usize,
    m: usize,
    s: &Settings,
    out: &mut String,
    extra: &mut Vec<(String, String)>,
) -> Result<bool, CliError> {
    let over = &cat.alg;
    let mut found = vec![false; cat.len()];
    let mut tau_ok = true;
    for x in &ca.members {
        for y in &cb.members {
            let xy = tensor_rep(&x.rep, &y.rep, over)?;
            if let Some(i) = cat.index_of(&xy)? {
                found[i] = true;
                tau_ok &= tau_tensor_check(&x.rep, &y.rep, n, m, over, s.seed)?;
            }
        }
    }
    let tensors = found.iter().filter(|&&f| f).count();
    kv!(out, "members_as_factor_tensors", "{tensors}/{}", cat.len());
    kv!(out, "tau_of_tensors", "{}", if tau_ok { "ok" } else { "failed" });

    let (mut cones, mut cones_ok) = (0, true);
    let slices = ca.slices.len().min(cb.slices.len());
    for i in 0..slices {
        for &ya in ca.m_p().iter().filter(|&&y| ca.members[y].slice == i) {
            for &yb in cb.m_p().iter().filter(|&&y| cb.members[y].slice == i) {
                let r = ass_via_cone(ca, ya, cb, yb, cat)?;
                cones += 1;
                cones_ok &= r.isomorphic;
            }
        }
    }
    kv!(out, "sequences_via_cone", "{cones} {}", if cones_ok { "ok" } else { "failed" });

    let (mut sources, mut sources_ok) = (0, true);
    for x in (0..ca.len()).filter(|&x| ca.members[x].injective.is_some()) {
        for y in (0..cb.len()).filter(|&y| cb.members[y].injective.is_some()) {
            let r = injective_source_sequence(ca, x, cb, y, cat)?;
            sources += 1;
            sources_ok &= r.source_exact && r.top_identity;
        }
    }
    kv!(out, "injective_source_sequences", "{sources} {}", if sources_ok { "ok" } else { "failed" });

    let h = homogeneity_transfer_check(ca, cb, cat)?;
    kv!(out, "T_is_tensor_of_factor_T", "{}", h.t_is_tensor);
    extra.push(("homogeneity_transfer".into(), h.consistent().to_string()));
    Ok(tensors == cat.len() && tau_ok && cones_ok && sources_ok && h.consistent())
}

pub fn quiver<F: Field>(alg: &Alg<F>, m_cat: bool, ar: bool, d: Option<usize>, s: &Settings, out: &mut String) -> Result<i32, CliError> {
    if m_cat {
        let d = match d {
            Some(d) => d,
            None => global_dimension(alg)?.max(1),
        };
        let cat = build_m(alg, d, s.slice_cap, s.seed)?;
        out.push_str(&m_dot(&cat, &cat.arrows()?, true));
    } else if ar {
        let q = enumerate_indecomposables(alg, s.knit_cap, s.seed)?;
        out.push_str(&ar_dot(&q, true));
    } else {
        out.push_str(&quiver_dot(alg.quiver()));
    }
    Ok(EXIT_VERIFIED)
}

pub fn classify<F: Field>(alg: &Alg<F>, d: usize, s: &Settings, out: &mut String) -> Result<i32, CliError> {
    header(alg, s, out);
    kv!(out, "d", "{d}");
    let (v, cat) = verify_at(alg, d, s)?;
    let Some(cat) = cat else {
        verdict_lines(&v, out);
        return Ok(verdict_block(&v, &[], false, out));
    };
    catalogue_lines(&cat, out);
    let q = enumerate_indecomposables(alg, s.knit_cap, s.seed)?;
    let classes = classify_modules(&q, &cat)?;
    kv!(out, "indecomposables", "{}", q.modules.len());
    let mut perp_ok = true;
    for c in &classes {
        let mut line = format!("{} {}", q.labels[c.index], c.tag.symbol());
        if c.tag == Tag::InPerpNotM {
            write!(line, " ext_to_M={} ext_from_M={}", c.ext_to_m, c.ext_from_m).unwrap();
            perp_ok &= c.ext_to_m && c.ext_from_m;
        }
        kv!(out, format!("module.{}", c.index), "{line}");
    }
    let [t, mt, p, o] = tag_counts(&classes);
    kv!(out, "count.in_add_T", "{t}");
    kv!(out, "count.in_M_not_T", "{mt}");
    kv!(out, "count.in_perp_not_M", "{p}");
    kv!(out, "count.outside_perp", "{o}");
    let cl = classify_algebra(alg, &v, s.slice_cap, s.seed)?;
    let extra = vec![
        (format!("{d}-cocomplete"), cl.d_cocomplete.to_string()),
        ("perp_modules_have_ext_on_both_sides".to_string(), perp_ok.to_string()),
    ];
    Ok(verdict_block(&v, &extra, v.d_complete && perp_ok, out))
}

fn sequence_text<F: Field>(c: &ComplexOfReps<F>) -> String {
    let mut parts = vec!["0".to_string()];
    let mut k = c.high();
    while k >= c.low {
        let term = match c.decomposition(k) {
            Some(dec) => dec.parts.iter().map(|p| grid(&p.rep)).collect::<Vec<_>>().join("+"),
            None => grid(&c.term(k)),
        };
        parts.push(term);
        k -= 1;
    }
    parts.push("0".into());
    parts.join(" -> ")
}

pub fn sequences<F: Field>(alg: &Alg<F>, d: usize, end: Option<&str>, s: &Settings, out: &mut String) -> Result<i32, CliError> {
    header(alg, s, out);
    kv!(out, "d", "{d}");
    if d == 0 {
        return Err(CliError::Input("d must be at least 1".into()));
    }
    let cat = build_m(alg, d, s.slice_cap, s.seed)?;
    let targets = match end {
        None => cat.m_p(),
        Some(e) => {
            let idx = cat
                .members
                .iter()
                .position(|m| m.label == e)
                .ok_or_else(|| CliError::Input(format!("{e} is not a member of 𝓜")))?;
            vec![idx]
        }
    };
    let mut ok = true;
    for y in targets {
        let label = cat.members[y].label.clone();
        let tau_y = tau_d(cat.rep(y), d)?;
        if tau_y.is_zero() {
            kv!(out, format!("sequence.{label}"), "none (tau_{d} vanishes)");
            ok = false;
            continue;
        }
        let result = sink_sequence(&cat.ctx, y, d).and_then(|mut c| {
            let check = verify_almost_split(&cat.ctx, &c, Some(&tau_y))?;
            c.ensure_decomposed(s.seed)?;
            Ok((c, check))
        });
        match result {
            Ok((c, check)) => {
                kv!(out, format!("sequence.{label}"), "{}", sequence_text(&c));
                kv!(
                    out,
                    format!("sequence.{label}.checks"),
                    "exact={} radical={} F_exact={} G_exact={} left_end_is_tau={} no_zero_rows_or_columns={}",
                    check.exact,
                    check.radical,
                    check.covariant_exact,
                    check.contravariant_exact,
                    check.left_end_is_tau.unwrap_or(false),
                    check.no_zero_rows_or_columns
                );
            }
            Err(e @ (Error::NotAlmostSplit(_) | Error::SequenceLeavesCategory(_))) => {
                kv!(out, format!("sequence.{label}"), "failed: {e}");
                ok = false;
            }
            Err(e) => return Err(e.into()),
        }
    }
    out.push_str("--- verdict\n");
    let (word, code) = status(ok);
    kv!(out, "status", "{word}");
    Ok(code)
}
