use rayon::prelude::*;

use super::catalogue::{build_m, MCatalogue, TauImage};
use super::directed::directedness_report;
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::homolog::{ext_dim, global_dimension, projective_dimension, tau_d_minus};
use crate::quivalg::Alg;
use crate::repmod::{grid, hom, is_isomorphic, iso_indecomposable, Rep};
use crate::seqcat::{check_functor_exactness, d_almost_split, minimal_left_approx, source_sequence, ApproxMode, CatContext, Side};

/// A verified property with the first counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub ok: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check { ok: true, witness: None }
    }

    pub fn fail(w: impl Into<String>) -> Self {
        Check { ok: false, witness: Some(w.into()) }
    }

    fn from_first(w: Option<String>) -> Self {
        match w {
            None => Check::pass(),
            Some(w) => Check::fail(w),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TiltingReport {
    /// `(i, a, b)` with `Ext^i(T_a, T_b) ≠ 0`.
    pub ext_failure: Option<(usize, usize, usize)>,
    /// Summand labels of `T_0, T_1, …` in `0 → Λ → T_0 → ⋯ → T_m → 0`.
    pub coresolution: Vec<Vec<String>>,
    pub obstruction: Option<String>,
}

impl TiltingReport {
    pub fn is_tilting(&self) -> bool {
        self.ext_failure.is_none() && self.obstruction.is_none()
    }
}

/// Self-orthogonality through `gl.dim`, then the coresolution of `Λ` by
/// minimal left `add T`-approximations within `bound` steps.
pub fn is_tilting<F: Field>(parts: &[Rep<F>], bound: usize, seed: u64) -> Result<TiltingReport> {
    let alg = parts.first().map(|p| p.alg().clone()).ok_or_else(|| Error::Invalid("empty module".into()))?;
    let gl = global_dimension(&alg)?;
    let n = parts.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let bad: Vec<Option<(usize, usize, usize)>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            for i in 1..=gl {
                if ext_dim(&parts[a], &parts[b], i)? != 0 {
                    return Ok(Some((i, a, b)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let ext_failure = bad.into_iter().flatten().min();
    let mut report = TiltingReport { ext_failure, coresolution: Vec::new(), obstruction: None };
    if report.ext_failure.is_some() {
        return Ok(report);
    }
    let ctx = CatContext::new(&alg, parts.to_vec(), parts.iter().map(grid).collect(), seed)?;
    let mut k = Rep::regular(&alg);
    while !k.is_zero() {
        if report.coresolution.len() >= bound {
            report.obstruction = Some(format!("coresolution does not end within {bound} steps"));
            return Ok(report);
        }
        let a = minimal_left_approx(&ctx, &k, ApproxMode::Full)?;
        if !a.map.is_mono() {
            report.obstruction = Some(format!("approximation {} is not injective at step {}", grid(&k), report.coresolution.len()));
            return Ok(report);
        }
        report.coresolution.push(a.gens.iter().map(|&g| ctx.label(g).to_string()).collect());
        k = a.map.cokernel().0;
    }
    Ok(report)
}

/// `Ext^i(T, X) = 0` for `0 < i ≤ gl.dim`.
pub fn perp_membership<F: Field>(t_parts: &[Rep<F>], x: &Rep<F>, gl_dim: usize) -> Result<bool> {
    for t in t_parts {
        for i in 1..=gl_dim {
            if ext_dim(t, x, i)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub d: usize,
    pub a: Check,
    pub b: Check,
    pub c: Check,
    /// `Hom(𝓜_P, Λ) = 0`, the degree zero case of (C).
    pub c_zero: Check,
    pub acyclic: Check,
    pub d_complete: bool,
    pub d_rep_finite: bool,
    pub homogeneous: Option<usize>,
    pub orbit_lengths: Vec<usize>,
}

impl Verdict {
    fn failed_build(d: usize, why: String) -> Self {
        Verdict {
            d,
            a: Check::fail(why),
            b: Check::fail("𝓜 not built"),
            c: Check::fail("𝓜 not built"),
            c_zero: Check::fail("𝓜 not built"),
            acyclic: Check::fail("𝓜 not built"),
            d_complete: false,
            d_rep_finite: false,
            homogeneous: None,
            orbit_lengths: Vec::new(),
        }
    }
}

/// Builds 𝓜 and verifies (A), (B), (C). A slice cap overrun fails (A).
pub fn verify_conditions<F: Field>(alg: &Alg<F>, d: usize, cap: usize, seed: u64) -> Result<(Verdict, Option<MCatalogue<F>>)> {
    match build_m(alg, d, cap, seed) {
        Ok(cat) => Ok((verify_catalogue(&cat)?, Some(cat))),
        Err(Error::TauNonVanishing(c)) => Ok((Verdict::failed_build(d, format!("τ_d does not vanish within {c} slices")), None)),
        Err(e) => Err(e),
    }
}

pub fn verify_catalogue<F: Field>(cat: &MCatalogue<F>) -> Result<Verdict> {
    let d = cat.d;
    let seed = cat.ctx.seed;
    let t_parts = cat.t_parts();
    let tilting = is_tilting(&t_parts, cat.gl_dim + 1, seed)?;
    let a = if tilting.is_tilting() {
        Check::pass()
    } else if let Some((i, x, y)) = tilting.ext_failure {
        Check::fail(format!("Ext^{i}({}, {}) ≠ 0", grid(&t_parts[x]), grid(&t_parts[y])))
    } else {
        Check::fail(tilting.obstruction.clone().unwrap_or_default())
    };
    let b = condition_b(cat, &t_parts)?;
    let regular = Rep::regular(&cat.alg);
    let mp = cat.m_p();
    let c_fail: Vec<Option<String>> = mp
        .par_iter()
        .map(|&x| {
            for i in 1..d {
                if ext_dim(cat.rep(x), &regular, i)? != 0 {
                    return Ok(Some(format!("Ext^{i}({}, Λ) ≠ 0", cat.members[x].label)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    let c = Check::from_first(c_fail.into_iter().flatten().next());
    let mut c_zero = Check::pass();
    for &x in &mp {
        if hom(cat.rep(x), &regular)?.dim() != 0 {
            c_zero = Check::fail(format!("Hom({}, Λ) ≠ 0", cat.members[x].label));
            break;
        }
    }
    let dir = directedness_report(cat.ctx.generators())?;
    let acyclic = match &dir.cycle {
        None => Check::pass(),
        Some(c) => Check::fail(format!("cycle through {:?}", c.iter().map(|&i| cat.members[i].label.clone()).collect::<Vec<_>>())),
    };
    let d_complete = a.ok && b.ok && c.ok;
    let d_rep_finite = d_complete && is_isomorphic(&cat.compute_t(), &regular, seed)?.is_some();
    Ok(Verdict { d, a, b, c, c_zero, acyclic, d_complete, d_rep_finite, homogeneous: cat.homogeneous(), orbit_lengths: cat.orbit_lengths.clone() })
}

/// (B) through its source-sequence characterization: 𝓜 rigid in degrees
/// `0 < i < d`, `𝓜 ⊆ T^⊥`, `pd T ≤ d`, and a source sequence in 𝓜 of
/// length at most `d + 1` for every indecomposable of 𝓜.
fn condition_b<F: Field>(cat: &MCatalogue<F>, t_parts: &[Rep<F>]) -> Result<Check> {
    if let Some(w) = rigidity_failure(cat, &(0..cat.len()).collect::<Vec<_>>(), 1, cat.d.saturating_sub(1))? {
        return Ok(Check::fail(w));
    }
    for m in &cat.members {
        if !perp_membership(t_parts, &m.rep, cat.gl_dim)? {
            return Ok(Check::fail(format!("{} ∉ T^⊥", m.label)));
        }
    }
    for t in t_parts {
        if projective_dimension(t)? > cat.d {
            return Ok(Check::fail(format!("pd {} > d", grid(t))));
        }
    }
    let fails: Vec<Option<String>> = (0..cat.len())
        .into_par_iter()
        .map(|x| {
            let seq = match source_sequence(&cat.ctx, x, cat.d) {
                Ok(s) => s,
                Err(Error::SequenceLeavesCategory(w)) => return Ok(Some(w)),
                Err(e) => return Err(e),
            };
            for (g, gen) in cat.ctx.generators().iter().enumerate() {
                let r = check_functor_exactness(&seq, gen, Side::Contravariant)?;
                if !r.is_exact() {
                    return Ok(Some(format!("source sequence of {} not exact against {}", cat.members[x].label, cat.ctx.label(g))));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(Check::from_first(fails.into_iter().flatten().next()))
}

/// First `Ext^i(X, Y) ≠ 0` with `lo ≤ i ≤ hi` among the listed members.
fn rigidity_failure<F: Field>(cat: &MCatalogue<F>, idx: &[usize], lo: usize, hi: usize) -> Result<Option<String>> {
    if lo > hi {
        return Ok(None);
    }
    let pairs: Vec<(usize, usize)> = idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).collect();
    let bad: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            for i in lo..=hi {
                if ext_dim(cat.rep(x), cat.rep(y), i)? != 0 {
                    return Ok(Some(format!("Ext^{i}({}, {}) ≠ 0", cat.members[x].label, cat.members[y].label)));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(bad.into_iter().flatten().next())
}

/// `E(S_1 ⊕ S_2) = S_1 ⊕ τ_d S_2` on member indices, `S_1 ∈ add T`.
pub fn e_step<F: Field>(cat: &MCatalogue<F>, s: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = s
        .iter()
        .flat_map(|&x| match &cat.members[x].tau {
            TauImage::Zero => vec![x],
            TauImage::Member(y) => vec![*y],
            TauImage::Decomposable(ys) => ys.clone(),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct EChain {
    /// `E^k DΛ` as member indices, starting with `DΛ`.
    pub steps: Vec<Vec<usize>>,
    /// Rigidity `Ext^{i≠0}(S, S) = 0` at each step.
    pub rigid: Vec<Check>,
    pub reached_t: bool,
    pub tilting: bool,
}

pub fn e_chain<F: Field>(cat: &MCatalogue<F>) -> Result<EChain> {
    let t = cat.t_indices();
    let mut s: Vec<usize> = (0..cat.len()).filter(|&i| cat.members[i].injective.is_some()).collect();
    let mut steps = vec![s.clone()];
    let mut rigid = vec![Check::from_first(rigidity_failure(cat, &s, 1, cat.gl_dim)?)];
    while s != t && steps.len() <= cat.len() + 1 {
        s = e_step(cat, &s);
        rigid.push(Check::from_first(rigidity_failure(cat, &s, 1, cat.gl_dim)?));
        steps.push(s.clone());
    }
    let reached_t = s == t;
    let tilting = reached_t && is_tilting(&cat.t_parts(), cat.gl_dim + 1, cat.ctx.seed)?.is_tilting();
    Ok(EChain { steps, rigid, reached_t, tilting })
}

/// The catalogue-level properties a d-complete algebra must have.
#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub slice_hom_vanishing: Check,
    pub rigidity: Check,
    pub condition_c: Check,
    pub tau_bijection: Check,
    pub sequences: Check,
    pub directedness_order: Check,
    pub sequence_count: usize,
}

impl StructuralReport {
    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("slice hom vanishing", &self.slice_hom_vanishing),
            ("rigidity", &self.rigidity),
            ("condition C with i = 0", &self.condition_c),
            ("tau bijection", &self.tau_bijection),
            ("no zero rows or columns", &self.sequences),
            ("directedness order", &self.directedness_order),
        ]
    }

    pub fn all_ok(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.ok)
    }
}

pub fn structural_suite<F: Field>(cat: &MCatalogue<F>) -> Result<StructuralReport> {
    let d = cat.d;
    // Hom(S(i), S(j)) = 0 for i < j.
    let mut slice_hom = Check::pass();
    'outer: for (i, si) in cat.slices.iter().enumerate() {
        for sj in &cat.slices[i + 1..] {
            for &x in si {
                for &y in sj {
                    if hom(cat.rep(x), cat.rep(y))?.dim() != 0 {
                        slice_hom = Check::fail(format!("Hom({}, {}) ≠ 0", cat.members[x].label, cat.members[y].label));
                        break 'outer;
                    }
                }
            }
        }
    }
    let rigidity = Check::from_first(rigidity_failure(cat, &(0..cat.len()).collect::<Vec<_>>(), 1, d.saturating_sub(1))?);
    let regular = Rep::regular(&cat.alg);
    let mut condition_c = Check::pass();
    'c: for &x in &cat.m_p() {
        for i in 0..d {
            if ext_dim(cat.rep(x), &regular, i)? != 0 {
                condition_c = Check::fail(format!("Ext^{i}({}, Λ) ≠ 0", cat.members[x].label));
                break 'c;
            }
        }
    }
    let tau_bijection = tau_bijection(cat)?;
    let dir = directedness_report(cat.ctx.generators())?;
    let mut sequences = Check::pass();
    let mut order = if dir.is_acyclic() { Check::pass() } else { Check::fail("𝓜 is not directed") };
    let mp = cat.m_p();
    let seqs: Vec<_> = mp.par_iter().map(|&y| d_almost_split(&cat.ctx, y, d)).collect();
    let mut count = 0;
    for (&y, seq) in mp.iter().zip(seqs) {
        let seq = match seq {
            Ok(s) => s,
            Err(e) => {
                if sequences.ok {
                    sequences = Check::fail(format!("{}: {e}", cat.members[y].label));
                }
                continue;
            }
        };
        count += 1;
        let TauImage::Member(ty) = cat.members[y].tau else { continue };
        for k in 1..=d as i64 {
            let Some(dec) = seq.decomposition(k) else { continue };
            for z in cat.ctx.locate(dec)? {
                let ok = match z {
                    Some(z) => dir.precedes(ty, z) && dir.precedes(z, y),
                    None => false,
                };
                if !ok && order.ok {
                    order = Check::fail(format!("middle term of the sequence ending at {} breaks τ_dY < Z < Y", cat.members[y].label));
                }
            }
        }
    }
    Ok(StructuralReport {
        slice_hom_vanishing: slice_hom,
        rigidity,
        condition_c,
        tau_bijection,
        sequences,
        directedness_order: order,
        sequence_count: count,
    })
}

/// `τ_d: 𝓜_P → 𝓜_I` and `τ_d⁻: 𝓜_I → 𝓜_P` are mutually inverse on
/// indecomposables.
fn tau_bijection<F: Field>(cat: &MCatalogue<F>) -> Result<Check> {
    let mi = cat.m_i();
    let mut hit = vec![false; cat.len()];
    for &x in &cat.m_p() {
        let y = match &cat.members[x].tau {
            TauImage::Member(y) => *y,
            other => return Ok(Check::fail(format!("τ_d {} = {:?}", cat.members[x].label, other))),
        };
        if !mi.contains(&y) || hit[y] {
            return Ok(Check::fail(format!("τ_d {} is not a new member of 𝓜_I", cat.members[x].label)));
        }
        hit[y] = true;
    }
    for &y in &mi {
        if !hit[y] {
            return Ok(Check::fail(format!("{} is not τ_d of a member", cat.members[y].label)));
        }
        let back = tau_d_minus(cat.rep(y), cat.d)?;
        if back.is_zero() {
            return Ok(Check::fail(format!("τ_d⁻ {} = 0", cat.members[y].label)));
        }
        let Some(x) = cat.index_of(&back)? else {
            return Ok(Check::fail(format!("τ_d⁻ {} is not in 𝓜", cat.members[y].label)));
        };
        if cat.members[x].tau != TauImage::Member(y) || iso_indecomposable(&back, cat.rep(x))?.is_none() {
            return Ok(Check::fail(format!("τ_d τ_d⁻ {} ≇ {}", cat.members[y].label, cat.members[y].label)));
        }
    }
    Ok(Check::pass())
}
