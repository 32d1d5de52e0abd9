//! Diagram stretching: the index map σ, the root embedding ψ into the
//! higher-rank system of the same family, its partial section π, and the
//! dominant-weight embedding Ψ.
//!
//! For a set of cuts `c = {c_1 < … < c_t}` the map σ: [n] → [n+t] skips
//! exactly the positions `c_k + k`; ψ acts on ε-coordinates by sending a
//! positive entry at position i to σ(i) and the negative entry at position
//! j+1 to σ(j)+1.

use std::collections::HashSet;

use num_traits::Zero;

use crate::cones::CutSet;
use crate::error::{Error, Result};
use crate::rootsys::{int_to_i64, Family, Label, Root, RootSystem};

/// A stretching context: the base system, its cut set, and the stretched
/// system of rank `n + t`.
#[derive(Debug, Clone)]
pub struct Stretching {
    base: RootSystem,
    stretched: RootSystem,
    cuts: CutSet,
    sigma: Vec<usize>,
    missing: Vec<usize>,
}

/// Value of the partial section π on a stretched positive root.
///
/// π lands in the root monoid; it is either a root, zero (exactly on the
/// inserted simple roots), or one of the two family-specific non-root
/// values: `2·(i,n)` in type B and `(i,n−2) + (i,~(n−1))` in type D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiImage {
    Root(Root),
    DoubleShortB { i: usize },
    SpinPairD { i: usize },
    Zero,
}

impl Stretching {
    pub fn new(family: Family, rank: usize, cuts: &CutSet) -> Result<Stretching> {
        let base = RootSystem::new(family, rank)?;
        Stretching::from_system(&base, cuts)
    }

    pub fn from_system(rs: &RootSystem, cuts: &CutSet) -> Result<Stretching> {
        let cuts = CutSet::new(rs, cuts.positions().to_vec())?;
        let n = rs.rank();
        let t = cuts.len();
        let sigma: Vec<usize> = (1..=n)
            .map(|i| i + cuts.positions().iter().filter(|&&c| c < i).count())
            .collect();
        let missing: Vec<usize> = cuts
            .positions()
            .iter()
            .enumerate()
            .map(|(k, &c)| c + k + 1)
            .collect();
        let stretched = RootSystem::new(rs.family(), n + t)?;
        Ok(Stretching {
            base: rs.clone(),
            stretched,
            cuts,
            sigma,
            missing,
        })
    }

    pub fn base(&self) -> &RootSystem {
        &self.base
    }

    pub fn stretched(&self) -> &RootSystem {
        &self.stretched
    }

    pub fn cuts(&self) -> &CutSet {
        &self.cuts
    }

    pub fn t(&self) -> usize {
        self.cuts.len()
    }

    /// σ(i), 1-based.
    pub fn sigma(&self, i: usize) -> usize {
        self.sigma[i - 1]
    }

    /// The positions of `[n+t]` missing from the image of σ: `c_k + k`.
    pub fn missing(&self) -> &[usize] {
        &self.missing
    }

    /// ψ applied to a positive root of the base system.
    pub fn psi_root(&self, beta: &Root) -> Result<Root> {
        self.base.index_of_required(beta)?;
        let mut out = vec![0i64; self.stretched.ambient_dim()];
        for (pos0, &c) in beta.coords.iter().enumerate() {
            let i = pos0 + 1;
            if c > 0 {
                out[self.sigma(i) - 1] += c;
            } else if c < 0 {
                // negative entry sits at position j+1; image position σ(j)+1
                out[self.sigma(i - 1)] += c;
            }
        }
        let image = Root::new(out);
        if !self.stretched.is_positive_root(&image.coords) {
            return Err(Error::invariant(format!(
                "image of {:?} under the stretch embedding is not a positive root",
                beta.coords
            )));
        }
        Ok(image)
    }

    /// The image of ψ, ordered like the base positive roots.
    pub fn image_set(&self) -> Result<Vec<Root>> {
        let images: Vec<Root> = self
            .base
            .positive_roots()
            .iter()
            .map(|b| self.psi_root(b))
            .collect::<Result<_>>()?;
        let distinct: HashSet<&Vec<i64>> = images.iter().map(|r| &r.coords).collect();
        if distinct.len() != images.len() {
            return Err(Error::invariant("stretch embedding is not injective"));
        }
        Ok(images)
    }

    /// π: coefficient restriction from the stretched simple roots to the
    /// base ones, classified into root / double-short / spin-pair / zero.
    pub fn pi_section(&self, beta_tilde: &Root) -> Result<PiImage> {
        let idx = self.stretched.index_of_required(beta_tilde)?;
        let cs = self.stretched.simple_coeffs(idx);
        let n = self.base.rank();
        let pulled: Vec<i64> = (1..=n).map(|k| cs[self.sigma(k) - 1]).collect();
        if pulled.iter().all(|&c| c == 0) {
            return Ok(PiImage::Zero);
        }
        // root case: compare against the ε-vector Σ c_k α_k
        let dim = self.base.ambient_dim();
        let mut eps = vec![0i64; dim];
        for (k, &c) in pulled.iter().enumerate() {
            for (p, &a) in self.base.simple_root(k + 1).coords.iter().enumerate() {
                eps[p] += c * a;
            }
        }
        if self.base.is_positive_root(&eps) {
            return Ok(PiImage::Root(Root::new(eps)));
        }
        match self.base.family() {
            Family::B => {
                for i in 1..=n {
                    let idx = self.base.index_of_label(Label::Straight(i, n)).unwrap();
                    let target: Vec<i64> = self
                        .base
                        .simple_coeffs(idx)
                        .iter()
                        .map(|&c| 2 * c)
                        .collect();
                    if pulled == target {
                        return Ok(PiImage::DoubleShortB { i });
                    }
                }
            }
            Family::D => {
                for i in 1..=(n - 2) {
                    let a = self.base.index_of_label(Label::Straight(i, n - 2)).unwrap();
                    let b = self.base.index_of_label(Label::Barred(i, n - 1)).unwrap();
                    let target: Vec<i64> = self
                        .base
                        .simple_coeffs(a)
                        .iter()
                        .zip(self.base.simple_coeffs(b))
                        .map(|(x, y)| x + y)
                        .collect();
                    if pulled == target {
                        return Ok(PiImage::SpinPairD { i });
                    }
                }
            }
            _ => {}
        }
        Err(Error::invariant(format!(
            "unexpected section value {pulled:?} for stretched root {:?}",
            beta_tilde.coords
        )))
    }

    /// Ψ on dominant weights in the fundamental basis: coordinate j goes to
    /// slot σ(j) of the stretched fundamental basis.
    pub fn psi_weight(&self, lambda: &[i64]) -> Result<Vec<i64>> {
        if lambda.len() != self.base.rank() {
            return Err(Error::domain("weight has wrong number of coordinates"));
        }
        if lambda.iter().any(|&c| c < 0) {
            return Err(Error::domain("weight is not dominant"));
        }
        let mut out = vec![0i64; self.stretched.rank()];
        for (j0, &c) in lambda.iter().enumerate() {
            out[self.sigma(j0 + 1) - 1] = c;
        }
        Ok(out)
    }

    /// Exponents of the defining relations of the degenerate module: for
    /// each image root β̃ the value `⟨Ψ(λ), β̃^∨⟩ + 1`, ordered like the
    /// base positive roots.
    pub fn ideal_exponents(&self, lambda: &[i64]) -> Result<Vec<(Root, i64)>> {
        let psi_lambda = self.psi_weight(lambda)?;
        let mu = self.stretched.weight_to_eps(&psi_lambda);
        self.image_set()?
            .into_iter()
            .map(|bt| {
                let p = self.stretched.pairing(&mu, &bt);
                if !p.is_integer() {
                    return Err(Error::invariant("non-integral pairing"));
                }
                let e = int_to_i64(p.to_integer()) + 1;
                Ok((bt, e))
            })
            .collect()
    }

    /// Brute-force closure and convexity checks for the image set: sums of
    /// images landing in the stretched system come from base sums, and sums
    /// of two non-image roots never land in the image.
    pub fn closure_and_convexity_check(&self) -> Result<StretchReport> {
        let images = self.image_set()?;
        self.closure_and_convexity_with(&images)
    }

    /// Same check against an explicitly supplied image list (exposed so the
    /// suite can fault-inject a wrong image).
    pub fn closure_and_convexity_with(&self, images: &[Root]) -> Result<StretchReport> {
        let mut failures = Vec::new();
        let image_set: HashSet<Vec<i64>> = images.iter().map(|r| r.coords.clone()).collect();
        let npos = self.base.num_positive_roots();
        for i in 0..npos {
            for j in 0..npos {
                let sum = images[i].sum(&images[j]);
                if self.stretched.is_positive_root(&sum.coords) {
                    let base_sum = self.base.root(i).sum(self.base.root(j));
                    let ok = self.base.is_positive_root(&base_sum.coords) && {
                        let k = self.base.index_of(&base_sum).unwrap();
                        images[k].coords == sum.coords
                    };
                    if !ok {
                        failures.push(format!(
                            "closure: images of roots {i} and {j} sum to a stretched root \
                             but the base roots do not match"
                        ));
                    }
                }
            }
        }
        let complement: Vec<&Root> = self
            .stretched
            .positive_roots()
            .iter()
            .filter(|r| !image_set.contains(&r.coords))
            .collect();
        for a in &complement {
            for b in &complement {
                let sum = a.sum(b);
                if image_set.contains(&sum.coords) {
                    failures.push(format!(
                        "convexity: {:?} + {:?} lands in the image",
                        a.coords, b.coords
                    ));
                }
            }
        }
        Ok(StretchReport {
            cases: npos * npos + complement.len() * complement.len(),
            failures,
        })
    }

    /// `S_β̃`: non-image positive roots α̃ with `−α̃ + kβ̃` in the image for
    /// some k ≥ 1. Used by the verification suite only.
    pub fn s_beta(&self, beta_tilde: &Root) -> Result<Vec<Root>> {
        let images: HashSet<Vec<i64>> = self.image_set()?.into_iter().map(|r| r.coords).collect();
        self.stretched.index_of_required(beta_tilde)?;
        let mut out = Vec::new();
        for a in self.stretched.positive_roots() {
            if images.contains(&a.coords) {
                continue;
            }
            for k in 1..=4i64 {
                let v: Vec<i64> = a
                    .coords
                    .iter()
                    .zip(&beta_tilde.coords)
                    .map(|(x, y)| -x + k * y)
                    .collect();
                if images.contains(&v) {
                    out.push(a.clone());
                    break;
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct StretchReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl StretchReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the two pairing identities characterizing Ψ:
/// `(Ψλ, ψ(β)^∨) = (λ, β^∨)` for all β in the base system, and
/// `(Ψλ, α̃_ℓ^∨) = 0` for every ℓ outside the image of σ.
pub fn psi_pairing_identities(st: &Stretching, lambda: &[i64]) -> Result<bool> {
    let psi_lambda = st.psi_weight(lambda)?;
    let mu = st.stretched().weight_to_eps(&psi_lambda);
    let lam_eps = st.base().weight_to_eps(lambda);
    for beta in st.base().positive_roots() {
        let lhs = st.stretched().pairing(&mu, &st.psi_root(beta)?);
        let rhs = st.base().pairing(&lam_eps, beta);
        if lhs != rhs {
            return Ok(false);
        }
    }
    for &miss in st.missing() {
        let p = st
            .stretched()
            .pairing(&mu, st.stretched().simple_root(miss));
        if !p.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
