use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::homolog::{global_dimension, tau_d};
use crate::quivalg::Alg;
use crate::repmod::{decompose, grid, iso_indecomposable, Rep};
use crate::seqcat::{minimal_right_approx, ApproxMode, CatContext};

/// Where `τ_d` sends a member of 𝓜.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauImage {
    Zero,
    Member(usize),
    /// `τ_d X` split into several summands (never happens when the
    /// algebra is d-complete).
    Decomposable(Vec<usize>),
}

#[derive(Clone, Debug)]
pub struct Member<F: Field> {
    pub rep: Rep<F>,
    pub label: String,
    pub slice: usize,
    pub tau: TauImage,
    /// Vertex `v` when the member is `I_v`.
    pub injective: Option<usize>,
}

/// `𝓜 = add{τ_d^i DΛ}` with its slices.
pub struct MCatalogue<F: Field> {
    pub alg: Alg<F>,
    pub d: usize,
    pub gl_dim: usize,
    pub members: Vec<Member<F>>,
    pub slices: Vec<Vec<usize>>,
    /// `l_v` with `τ_d^{l_v - 1} I_v ≠ 0 = τ_d^{l_v} I_v`, per vertex.
    pub orbit_lengths: Vec<usize>,
    pub ctx: CatContext<F>,
}

pub const DEFAULT_SLICE_CAP: usize = 64;

/// Builds 𝓜 slice by slice from the indecomposable injectives.
pub fn build_m<F: Field>(alg: &Alg<F>, d: usize, cap: usize, seed: u64) -> Result<MCatalogue<F>> {
    let gl_dim = global_dimension(alg)?;
    if gl_dim > d {
        return Err(Error::Invalid(format!("global dimension {gl_dim} exceeds d = {d}")));
    }
    let mut members: Vec<Member<F>> = (0..alg.vertex_count())
        .map(|v| {
            let rep = Rep::injective(alg, v);
            Member { label: grid(&rep), rep, slice: 0, tau: TauImage::Zero, injective: Some(v) }
        })
        .collect();
    let mut slices = vec![(0..members.len()).collect::<Vec<_>>()];
    loop {
        let frontier = slices.last().unwrap().clone();
        let mut next = Vec::new();
        for x in frontier {
            let t = tau_d(&members[x].rep, d)?;
            if t.is_zero() {
                continue;
            }
            let dec = decompose(&t, seed)?;
            let mut images = Vec::new();
            for part in &dec.parts {
                let found = find_member(&members, &part.rep)?;
                let idx = match found {
                    Some(i) => i,
                    None => {
                        members.push(Member {
                            label: grid(&part.rep),
                            rep: part.rep.clone(),
                            slice: slices.len(),
                            tau: TauImage::Zero,
                            injective: None,
                        });
                        next.push(members.len() - 1);
                        members.len() - 1
                    }
                };
                images.push(idx);
            }
            members[x].tau = if images.len() == 1 { TauImage::Member(images[0]) } else { TauImage::Decomposable(images) };
        }
        if next.is_empty() {
            break;
        }
        if slices.len() >= cap {
            return Err(Error::TauNonVanishing(cap));
        }
        slices.push(next);
    }
    let orbit_lengths = (0..alg.vertex_count())
        .map(|v| {
            let mut cur = v;
            let mut l = 1;
            while let TauImage::Member(y) = members[cur].tau {
                cur = y;
                l += 1;
                if l > members.len() {
                    break;
                }
            }
            l
        })
        .collect();
    let ctx = CatContext::new(alg, members.iter().map(|m| m.rep.clone()).collect(), members.iter().map(|m| m.label.clone()).collect(), seed)?;
    Ok(MCatalogue { alg: alg.clone(), d, gl_dim, members, slices, orbit_lengths, ctx })
}

fn find_member<F: Field>(members: &[Member<F>], x: &Rep<F>) -> Result<Option<usize>> {
    for (i, m) in members.iter().enumerate() {
        if m.rep.dims() == x.dims() && iso_indecomposable(&m.rep, x)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

impl<F: Field> MCatalogue<F> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rep(&self, i: usize) -> &Rep<F> {
        &self.members[i].rep
    }

    /// Members of 𝓟: `τ_d X = 0`.
    pub fn t_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.members[i].tau == TauImage::Zero).collect()
    }

    /// Indecomposables of 𝓜_P.
    pub fn m_p(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.members[i].tau != TauImage::Zero).collect()
    }

    /// Indecomposables of 𝓜_I.
    pub fn m_i(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.members[i].injective.is_none()).collect()
    }

    pub fn t_parts(&self) -> Vec<Rep<F>> {
        self.t_indices().iter().map(|&i| self.members[i].rep.clone()).collect()
    }

    /// The basic module `T` with `add T = 𝓟`.
    pub fn compute_t(&self) -> Rep<F> {
        let parts = self.t_parts();
        if parts.is_empty() {
            Rep::zero(&self.alg)
        } else {
            Rep::direct_sum(&self.alg, &parts)
        }
    }

    /// Index of the member isomorphic to an indecomposable `X`.
    pub fn index_of(&self, x: &Rep<F>) -> Result<Option<usize>> {
        find_member(&self.members, x)
    }

    pub fn slice_of(&self, x: &Rep<F>) -> Result<Option<usize>> {
        Ok(self.index_of(x)?.map(|i| self.members[i].slice))
    }

    pub fn slice_sizes(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.len()).collect()
    }

    /// `l` when every injective orbit has the same length.
    pub fn homogeneous(&self) -> Option<usize> {
        let first = *self.orbit_lengths.first()?;
        self.orbit_lengths.iter().all(|&l| l == first).then_some(first)
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|m| m.label.clone()).collect()
    }

    /// Irreducible maps of 𝓜 as `(from, to, multiplicity)`, read off the
    /// minimal right almost split map into each member.
    pub fn arrows(&self) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            let ap = minimal_right_approx(&self.ctx, self.rep(y), ApproxMode::Radical)?;
            let mut counts = vec![0usize; self.len()];
            for &g in &ap.gens {
                counts[g] += 1;
            }
            out.extend(counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(x, &c)| (x, y, c)));
        }
        Ok(out)
    }
}
