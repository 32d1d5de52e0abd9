//! Characters and dimensions: Demazure operators on Laurent characters,
//! Demazure characters along reduced words, and the Weyl dimension
//! formula.
//!
//! Characters live on a scaled integer weight lattice: ε-coordinates are
//! doubled in types B and D so the half-integral spin weights stay
//! integral. Multiplicities are signed internally (intermediate terms of a
//! divided-difference step may cancel); final characters are checked to be
//! genuinely nonnegative.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde_json::json;

use crate::cones::CutSet;
use crate::error::{Error, Result};
use crate::rootsys::{int_to_i64, rat, Family, Rat, RootSystem};
use crate::stretch::Stretching;
use crate::weyl::{build_wc, word_to_element, Word};

const BIAS: i64 = 128;

fn pack(v: &[i64]) -> u128 {
    assert!(v.len() <= 16, "weight vector too long to pack");
    v.iter().enumerate().fold(0u128, |acc, (i, &x)| {
        assert!(
            (-BIAS..BIAS).contains(&x),
            "weight coordinate {x} out of packable range"
        );
        acc | (((x + BIAS) as u128 & 0xff) << (8 * i))
    })
}

fn unpack(key: u128, dim: usize) -> Vec<i64> {
    (0..dim)
        .map(|i| (((key >> (8 * i)) & 0xff) as i64) - BIAS)
        .collect()
}

/// A finite multiset of integer weight vectors with multiplicities.
///
/// Weights are stored as `scale · μ` in ε-coordinates; `scale` is 2 in
/// types B/D and 1 in types A/C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentChar {
    scale: i64,
    dim: usize,
    terms: HashMap<u128, i64>,
}

pub fn weight_scale(family: Family) -> i64 {
    match family {
        Family::B | Family::D => 2,
        Family::A | Family::C => 1,
    }
}

impl LaurentChar {
    pub fn zero(rs: &RootSystem) -> LaurentChar {
        LaurentChar {
            scale: weight_scale(rs.family()),
            dim: rs.ambient_dim(),
            terms: HashMap::new(),
        }
    }

    /// The character `e^λ` of the highest-weight line, for a dominant
    /// weight in the fundamental basis.
    pub fn highest_weight(rs: &RootSystem, lambda: &[i64]) -> Result<LaurentChar> {
        if lambda.iter().any(|&c| c < 0) {
            return Err(Error::domain("weight is not dominant"));
        }
        let scale = weight_scale(rs.family());
        let eps = rs.weight_to_eps(lambda);
        let scaled: Vec<i64> = eps
            .iter()
            .map(|q| {
                let v = q * rat(scale);
                if !v.is_integer() {
                    return Err(Error::invariant("scaled weight not integral"));
                }
                Ok(int_to_i64(v.to_integer()))
            })
            .collect::<Result<_>>()?;
        let mut terms = HashMap::new();
        terms.insert(pack(&scaled), 1i64);
        Ok(LaurentChar {
            scale,
            dim: rs.ambient_dim(),
            terms,
        })
    }

    /// Adds `mult · e^{ν/scale}` for a scaled integer weight ν.
    pub fn add_scaled_term(&mut self, nu: &[i64], mult: i64) {
        assert_eq!(nu.len(), self.dim);
        let e = self.terms.entry(pack(nu)).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.terms.remove(&pack(nu));
        }
    }

    /// Total multiplicity (the dimension when this is a module character).
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn num_weights(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Terms as (scaled weight vector, multiplicity), sorted by weight.
    pub fn sorted_terms(&self) -> Vec<(Vec<i64>, i64)> {
        let mut out: Vec<(Vec<i64>, i64)> = self
            .terms
            .iter()
            .map(|(&k, &m)| (unpack(k, self.dim), m))
            .collect();
        out.sort();
        out
    }

    /// Multiplicity of the exact rational weight μ (in ε-coordinates).
    pub fn multiplicity(&self, mu: &[Rat]) -> i64 {
        let scaled: Option<Vec<i64>> = mu
            .iter()
            .map(|q| {
                let v = q * rat(self.scale);
                v.is_integer().then(|| int_to_i64(v.to_integer()))
            })
            .collect();
        match scaled {
            Some(v) => self.terms.get(&pack(&v)).copied().unwrap_or(0),
            None => 0,
        }
    }

    fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(w, m)| json!({"weight": w, "mult": m}))
            .collect();
        json!({"scale": self.scale, "terms": terms})
    }
}

/// Pairing `⟨μ, α_i^∨⟩` from the scaled weight vector.
fn scaled_pairing(rs: &RootSystem, nu: &[i64], i: usize, scale: i64) -> i64 {
    let n = rs.rank();
    let raw = match rs.family() {
        Family::A => nu[i - 1] - nu[i],
        Family::B => {
            if i < n {
                // long simple root: μ_i − μ_{i+1}, entries doubled
                nu[i - 1] - nu[i]
            } else {
                // ⟨μ, ε_n^∨⟩ = 2 μ_n = ν_n
                2 * nu[n - 1]
            }
        }
        Family::C => {
            if i < n {
                nu[i - 1] - nu[i]
            } else {
                nu[n - 1]
            }
        }
        Family::D => {
            if i < n {
                nu[i - 1] - nu[i]
            } else {
                nu[n - 2] + nu[n - 1]
            }
        }
    };
    // For the doubled lattice the differences above are 2⟨μ,α^∨⟩ except in
    // the short-root case of B where the doubling already cancels.
    match rs.family() {
        Family::A | Family::C => raw,
        Family::B => {
            if i < n {
                debug_assert_eq!(raw % 2, 0);
                raw / 2
            } else {
                debug_assert_eq!(raw % scale, 0);
                raw / scale
            }
        }
        Family::D => {
            debug_assert_eq!(raw % 2, 0);
            raw / 2
        }
    }
}

/// One divided-difference operator applied termwise via the closed form.
pub fn demazure_step(rs: &RootSystem, i: usize, chi: &LaurentChar) -> LaurentChar {
    let scale = chi.scale;
    debug_assert_eq!(scale, weight_scale(rs.family()));
    let alpha: Vec<i64> = rs
        .simple_root(i)
        .coords
        .iter()
        .map(|&c| c * scale)
        .collect();
    let mut out = LaurentChar {
        scale,
        dim: chi.dim,
        terms: HashMap::new(),
    };
    for (&key, &mult) in &chi.terms {
        let nu = unpack(key, chi.dim);
        let m = scaled_pairing(rs, &nu, i, scale);
        if m >= 0 {
            let mut v = nu.clone();
            for _k in 0..=m {
                out.add_scaled_term(&v, mult);
                if _k < m {
                    for (a, b) in v.iter_mut().zip(&alpha) {
                        *a -= b;
                    }
                }
            }
        } else if m <= -2 {
            let mut v = nu.clone();
            for _k in 1..=(-m - 1) {
                for (a, b) in v.iter_mut().zip(&alpha) {
                    *a += b;
                }
                out.add_scaled_term(&v, -mult);
            }
        }
        // m == −1 contributes nothing
    }
    out
}

/// The Demazure character `D_{i_1} ⋯ D_{i_r} e^λ` along a reduced word.
///
/// The word must be reduced (checked); λ must be dominant.
pub fn demazure_character(rs: &RootSystem, word: &Word, lambda: &[i64]) -> Result<LaurentChar> {
    let (_, reduced) = word_to_element(rs, word)?;
    if !reduced {
        return Err(Error::precondition("word is not reduced"));
    }
    let mut chi = LaurentChar::highest_weight(rs, lambda)?;
    for &i in word.letters().iter().rev() {
        chi = demazure_step(rs, i, &chi);
    }
    if !chi.all_nonnegative() {
        return Err(Error::invariant(
            "Demazure character has a nonpositive multiplicity",
        ));
    }
    Ok(chi)
}

/// Exact Weyl dimension `∏ (λ+ρ, β^∨) / (ρ, β^∨)`.
pub fn weyl_dim(rs: &RootSystem, lambda: &[i64]) -> Result<BigInt> {
    if lambda.iter().any(|&c| c < 0) {
        return Err(Error::domain("weight is not dominant"));
    }
    let rho = rs.rho();
    let lam = rs.weight_to_eps(lambda);
    let lam_rho: Vec<Rat> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut prod = Rat::one();
    for beta in rs.positive_roots() {
        let num = rs.pairing(&lam_rho, beta);
        let den = rs.pairing(&rho, beta);
        prod *= num / den;
    }
    if !prod.is_integer() || !prod.is_positive() {
        return Err(Error::invariant("Weyl dimension is not a positive integer"));
    }
    Ok(prod.to_integer())
}

/// One case of the dimension-equality check.
#[derive(Debug, Clone)]
pub struct DimCase {
    pub lambda: Vec<i64>,
    pub expected: BigInt,
    pub computed: BigInt,
}

impl DimCase {
    pub fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

/// For each dominant weight in the grid, compares the Demazure dimension
/// of the stretched module at the embedded weight against the Weyl
/// dimension in the base system.
pub fn verify_dim_equalities(
    rs: &RootSystem,
    cuts: &CutSet,
    grid: &[Vec<i64>],
) -> Result<Vec<DimCase>> {
    let st = Stretching::from_system(rs, cuts)?;
    let word = build_wc(rs, cuts)?;
    let mut out = Vec::with_capacity(grid.len());
    for lambda in grid {
        let expected = weyl_dim(rs, lambda)?;
        let psi_lambda = st.psi_weight(lambda)?;
        let chi = demazure_character(st.stretched(), &word, &psi_lambda)?;
        out.push(DimCase {
            lambda: lambda.clone(),
            expected,
            computed: BigInt::from(chi.dimension()),
        });
    }
    Ok(out)
}

/// All dominant weights with coordinates bounded by `max_coord`
/// (including zero), in lexicographic order.
pub fn weight_grid(rank: usize, max_coord: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    loop {
        out.push(cur.clone());
        let mut k = rank;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < max_coord {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    #[test]
    fn step_on_fundamental_weight() {
        let a2 = rs(Family::A, 2);
        let chi = LaurentChar::highest_weight(&a2, &[1, 0]).unwrap();
        let out = demazure_step(&a2, 1, &chi);
        assert_eq!(out.dimension(), 2);
        // weights ε1 and ε2
        assert_eq!(
            out.sorted_terms(),
            vec![(vec![0, 1, 0], 1), (vec![1, 0, 0], 1)]
        );
    }

    #[test]
    fn step_on_zero_weight() {
        let a2 = rs(Family::A, 2);
        let chi = LaurentChar::highest_weight(&a2, &[0, 0]).unwrap();
        let out = demazure_step(&a2, 1, &chi);
        assert_eq!(out, chi);
    }

    #[test]
    fn step_is_idempotent_on_random_characters() {
        let b2 = rs(Family::B, 2);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let mut chi = LaurentChar::zero(&b2);
            for _ in 0..rng.gen_range(1..6) {
                // random point of the doubled lattice with even pairings
                let v = vec![2 * rng.gen_range(-4i64..=4), 2 * rng.gen_range(-4i64..=4)];
                chi.add_scaled_term(&v, rng.gen_range(1..4));
            }
            for i in 1..=2usize {
                let once = demazure_step(&b2, i, &chi);
                let twice = demazure_step(&b2, i, &once);
                assert_eq!(once, twice);
            }
        }
    }

    #[test]
    fn character_of_vector_rep_demazure() {
        let a3 = rs(Family::A, 3);
        let chi = demazure_character(&a3, &Word(vec![2, 3, 1]), &[1, 0, 0]).unwrap();
        assert_eq!(chi.dimension(), 3);
        assert_eq!(
            chi.sorted_terms(),
            vec![
                (vec![0, 0, 1, 0], 1),
                (vec![0, 1, 0, 0], 1),
                (vec![1, 0, 0, 0], 1)
            ]
        );
    }

    #[test]
    fn empty_word_is_highest_weight_line() {
        let a3 = rs(Family::A, 3);
        let chi = demazure_character(&a3, &Word(vec![]), &[0, 1, 1]).unwrap();
        assert_eq!(chi.dimension(), 1);
    }

    #[test]
    fn longest_word_gives_full_module() {
        let a3 = rs(Family::A, 3);
        // reduced word for the longest element of A3
        let w0 = Word(vec![1, 2, 1, 3, 2, 1]);
        let chi = demazure_character(&a3, &w0, &[1, 0, 0]).unwrap();
        assert_eq!(chi.dimension(), 4);
        let chi2 = demazure_character(&a3, &w0, &[1, 0, 1]).unwrap();
        assert_eq!(
            BigInt::from(chi2.dimension()),
            weyl_dim(&a3, &[1, 0, 1]).unwrap()
        );
    }

    #[test]
    fn non_reduced_word_is_rejected() {
        let a2 = rs(Family::A, 2);
        assert!(matches!(
            demazure_character(&a2, &Word(vec![1, 1]), &[1, 0]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduced_word_independence() {
        let a2 = rs(Family::A, 2);
        for lam in [[1i64, 0], [0, 1], [1, 1], [2, 1]] {
            let c1 = demazure_character(&a2, &Word(vec![1, 2, 1]), &lam).unwrap();
            let c2 = demazure_character(&a2, &Word(vec![2, 1, 2]), &lam).unwrap();
            assert_eq!(c1, c2);
        }
        let b2 = rs(Family::B, 2);
        for lam in [[1i64, 0], [0, 1], [1, 1]] {
            let c1 = demazure_character(&b2, &Word(vec![1, 2, 1, 2]), &lam).unwrap();
            let c2 = demazure_character(&b2, &Word(vec![2, 1, 2, 1]), &lam).unwrap();
            assert_eq!(c1, c2);
        }
    }

    #[test]
    fn weyl_dims_known_values() {
        assert_eq!(
            weyl_dim(&rs(Family::A, 2), &[1, 0]).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            weyl_dim(&rs(Family::A, 2), &[1, 1]).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            weyl_dim(&rs(Family::B, 3), &[0, 0, 1]).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            weyl_dim(&rs(Family::C, 3), &[0, 1, 0]).unwrap(),
            BigInt::from(14)
        );
        assert_eq!(
            weyl_dim(&rs(Family::D, 4), &[0, 1, 0, 0]).unwrap(),
            BigInt::from(28)
        );
        // spin dimensions
        assert_eq!(
            weyl_dim(&rs(Family::B, 4), &[0, 0, 0, 1]).unwrap(),
            BigInt::from(16)
        );
        assert_eq!(
            weyl_dim(&rs(Family::D, 5), &[0, 0, 0, 1, 0]).unwrap(),
            BigInt::from(16)
        );
    }

    #[test]
    fn dim_equalities_b3_cut1() {
        let b3 = rs(Family::B, 3);
        let cuts = CutSet::new(&b3, vec![1]).unwrap();
        let grid = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let cases = verify_dim_equalities(&b3, &cuts, &grid).unwrap();
        let dims: Vec<BigInt> = cases.iter().map(|c| c.computed.clone()).collect();
        assert_eq!(
            dims,
            vec![BigInt::from(7), BigInt::from(21), BigInt::from(8)]
        );
        assert!(cases.iter().all(|c| c.pass()));
    }

    #[test]
    fn dim_equalities_a2_adjoint() {
        let a2 = rs(Family::A, 2);
        let cuts = CutSet::new(&a2, vec![1]).unwrap();
        let cases = verify_dim_equalities(&a2, &cuts, &[vec![1, 1]]).unwrap();
        assert_eq!(cases[0].computed, BigInt::from(8));
        assert!(cases[0].pass());
    }

    #[test]
    fn weight_grid_counts() {
        assert_eq!(weight_grid(2, 2).len(), 9);
        assert_eq!(weight_grid(3, 1).len(), 8);
        assert!(weight_grid(2, 1).contains(&vec![0, 0]));
    }

    #[test]
    fn char_json_shape() {
        let a2 = rs(Family::A, 2);
        let chi = demazure_character(&a2, &Word(vec![1]), &[1, 0]).unwrap();
        let v = chi.to_json();
        assert_eq!(v["scale"], 1);
        assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    }
}
