//! Classical root systems in ε-coordinates with the two-index labeling.
//!
//! Roots are stored as integer vectors in the standard basis; the labels
//! `(i,j)` and `(i,~j)` are derived views. Type A lives in dimension
//! `n + 1`, types B/C/D in dimension `n`. The inner product is normalized
//! per family so that short roots have squared length 2 (long roots in B/C
//! then have squared length 4); coroots are exact rational vectors.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Classical family of a simple Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::domain(format!("unknown family '{other}'"))),
        }
    }

    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Identifier of a classical root system: family plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystemId {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Self {
        RootSystemId { family, rank }
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root in ε-coordinates (integer vector of the ambient dimension).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    pub fn negated(&self) -> Root {
        Root::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn sum(&self, other: &Root) -> Root {
        Root::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

/// Two-index label of a positive root.
///
/// `Straight(i, j)` is the root `α_i + … + α_j` (with the family-specific
/// reading for the top index); `Barred(i, j)` is the root whose ε-form is
/// `ε_i + ε_j` (or `2ε_i` when `i = j` in type C). Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Straight(usize, usize),
    Barred(usize, usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Straight(i, j) => write!(f, "({i},{j})"),
            Label::Barred(i, j) => write!(f, "({i},~{j})"),
        }
    }
}

impl Label {
    /// Parses `"(i,j)"` or `"(i,~j)"`.
    pub fn parse(s: &str) -> Result<Label> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::domain(format!("cannot parse label '{s}'")));
        }
        let i: usize = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("cannot parse label '{s}'")))?;
        let second = parts[1].trim();
        if let Some(rest) = second.strip_prefix('~') {
            let j: usize = rest
                .parse()
                .map_err(|_| Error::domain(format!("cannot parse label '{s}'")))?;
            Ok(Label::Barred(i, j))
        } else {
            let j: usize = second
                .parse()
                .map_err(|_| Error::domain(format!("cannot parse label '{s}'")))?;
            Ok(Label::Straight(i, j))
        }
    }
}

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Derived data of a positive root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootData {
    pub height: i64,
    pub support: Vec<usize>,
    pub length_sq: i64,
    pub coroot: Vec<Rat>,
}

/// A classical root system with positive roots, labels and Cartan data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    id: RootSystemId,
    dim: usize,
    positive: Vec<Root>,
    labels: Vec<Label>,
    by_coords: HashMap<Vec<i64>, usize>,
    by_label: HashMap<Label, usize>,
    all_root_coords: HashMap<Vec<i64>, (usize, bool)>,
    simple_indices: Vec<usize>,
    simple_coeffs: Vec<Vec<i64>>,
    scale: i64,
}

impl RootSystem {
    /// Builds the root system, its labels and Cartan data.
    ///
    /// Rank minima: A needs n ≥ 1, B and C need n ≥ 2, D needs n ≥ 4.
    pub fn new(family: Family, rank: usize) -> Result<RootSystem> {
        let id = RootSystemId::new(family, rank);
        if rank < family.min_rank() {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                min: family.min_rank(),
            });
        }
        let n = rank;
        let dim = match family {
            Family::A => n + 1,
            _ => n,
        };
        let mut positive = Vec::new();
        let mut labels = Vec::new();

        let mut push = |coords: Vec<i64>, label: Label| {
            positive.push(Root::new(coords));
            labels.push(label);
        };

        let eps = |i: usize| -> Vec<i64> {
            let mut v = vec![0i64; dim];
            v[i - 1] = 1;
            v
        };
        let diff = |i: usize, j: usize| -> Vec<i64> {
            let mut v = vec![0i64; dim];
            v[i - 1] = 1;
            v[j - 1] = -1;
            v
        };
        let plus = |i: usize, j: usize| -> Vec<i64> {
            let mut v = vec![0i64; dim];
            v[i - 1] += 1;
            v[j - 1] += 1;
            v
        };

        match family {
            Family::A => {
                for i in 1..=n {
                    for j in i..=n {
                        push(diff(i, j + 1), Label::Straight(i, j));
                    }
                }
            }
            Family::B => {
                for i in 1..=n {
                    for j in i..=n {
                        if j < n {
                            push(diff(i, j + 1), Label::Straight(i, j));
                        } else {
                            push(eps(i), Label::Straight(i, n));
                        }
                    }
                }
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        push(plus(i, j), Label::Barred(i, j));
                    }
                }
            }
            Family::C => {
                for i in 1..=n {
                    for j in i..=n {
                        if j < n {
                            push(diff(i, j + 1), Label::Straight(i, j));
                        } else {
                            push(plus(i, n), Label::Straight(i, n));
                        }
                    }
                }
                for i in 1..=(n - 1) {
                    for j in i..=(n - 1) {
                        push(plus(i, j), Label::Barred(i, j));
                    }
                }
            }
            Family::D => {
                for i in 1..=n {
                    for j in i..=n {
                        if j <= n - 1 {
                            push(diff(i, j + 1), Label::Straight(i, j));
                        } else if i <= n - 2 {
                            push(plus(i, n), Label::Straight(i, n));
                        } else if i == n {
                            push(plus(n - 1, n), Label::Straight(n, n));
                        }
                        // (n-1, n) is not a label in type D
                    }
                }
                for i in 1..=(n - 1) {
                    for j in (i + 1)..=(n - 1) {
                        push(plus(i, j), Label::Barred(i, j));
                    }
                }
            }
        }

        let by_coords: HashMap<Vec<i64>, usize> = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), k))
            .collect();
        let by_label: HashMap<Label, usize> =
            labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
        let mut all_root_coords = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            all_root_coords.insert(r.coords.clone(), (k, true));
            all_root_coords.insert(r.negated().coords, (k, false));
        }

        let simple_indices: Vec<usize> =
            (1..=n).map(|k| by_label[&Label::Straight(k, k)]).collect();

        let scale = match family {
            Family::B => 2,
            _ => 1,
        };

        let mut rs = RootSystem {
            id,
            dim,
            positive,
            labels,
            by_coords,
            by_label,
            all_root_coords,
            simple_indices,
            simple_coeffs: Vec::new(),
            scale,
        };
        rs.simple_coeffs = rs.compute_simple_coeffs()?;
        Ok(rs)
    }

    /// Expands every positive root over the simple roots by exact solve and
    /// checks the coefficients are nonnegative integers.
    fn compute_simple_coeffs(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        // Solve  Σ_k x_k α_k = β  for each β by rational Gaussian elimination.
        let simples: Vec<&Root> = self
            .simple_indices
            .iter()
            .map(|&i| &self.positive[i])
            .collect();
        let mut out = Vec::with_capacity(self.positive.len());
        for root in &self.positive {
            // dim x (n+1) augmented system
            let mut m: Vec<Vec<Rat>> = (0..self.dim)
                .map(|row| {
                    let mut r: Vec<Rat> = (0..n).map(|col| rat(simples[col].coords[row])).collect();
                    r.push(rat(root.coords[row]));
                    r
                })
                .collect();
            let mut pivots = Vec::new();
            let mut prow = 0usize;
            for col in 0..n {
                if let Some(sel) = (prow..self.dim).find(|&r| !m[r][col].is_zero()) {
                    m.swap(prow, sel);
                    let inv = m[prow][col].clone();
                    for c in col..=n {
                        m[prow][c] = &m[prow][c] / &inv;
                    }
                    for r in 0..self.dim {
                        if r != prow && !m[r][col].is_zero() {
                            let f = m[r][col].clone();
                            for c in col..=n {
                                m[r][c] = &m[r][c] - &f * &m[prow][c];
                            }
                        }
                    }
                    pivots.push((prow, col));
                    prow += 1;
                }
            }
            for r in prow..self.dim {
                if !m[r][n].is_zero() {
                    return Err(Error::invariant(format!(
                        "root {:?} not in simple-root span",
                        root.coords
                    )));
                }
            }
            let mut coeffs = vec![0i64; n];
            for (r, col) in pivots {
                let v = &m[r][n];
                if !v.is_integer() || v.is_negative() {
                    return Err(Error::invariant(format!(
                        "non-integral simple-root coefficient for {:?}",
                        root.coords
                    )));
                }
                coeffs[col] = int_to_i64(v.to_integer());
            }
            out.push(coeffs);
        }
        Ok(out)
    }

    pub fn id(&self) -> RootSystemId {
        self.id
    }

    pub fn family(&self) -> Family {
        self.id.family
    }

    pub fn rank(&self) -> usize {
        self.id.rank
    }

    /// Dimension of the ambient ε-space (`n + 1` for type A, `n` otherwise).
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.positive[idx]
    }

    pub fn label(&self, idx: usize) -> Label {
        self.labels[idx]
    }

    /// Index of a positive root, by coordinates.
    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.by_coords.get(&root.coords).copied()
    }

    pub fn index_of_required(&self, root: &Root) -> Result<usize> {
        self.index_of(root)
            .ok_or_else(|| Error::NotARoot(root.coords.clone()))
    }

    /// Looks a label up; in type C, `(i,~n)` is accepted as an alias for
    /// `(i,n)`.
    pub fn index_of_label(&self, label: Label) -> Option<usize> {
        if let Some(&k) = self.by_label.get(&label) {
            return Some(k);
        }
        if self.family() == Family::C {
            if let Label::Barred(i, j) = label {
                if j == self.rank() {
                    return self.by_label.get(&Label::Straight(i, j)).copied();
                }
            }
        }
        None
    }

    pub fn simple_root(&self, k: usize) -> &Root {
        &self.positive[self.simple_indices[k - 1]]
    }

    pub fn simple_index(&self, k: usize) -> usize {
        self.simple_indices[k - 1]
    }

    pub fn is_positive_root(&self, coords: &[i64]) -> bool {
        self.by_coords.contains_key(coords)
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.all_root_coords.contains_key(coords)
    }

    /// Returns `β1 + β2` when the sum is again a positive root.
    pub fn try_add(&self, b1: &Root, b2: &Root) -> Result<Option<Root>> {
        self.index_of_required(b1)?;
        self.index_of_required(b2)?;
        let s = b1.sum(b2);
        Ok(if self.is_positive_root(&s.coords) {
            Some(s)
        } else {
            None
        })
    }

    /// The α-chain through β: returns `(q, r)` with `q = max{k : β + kα ∈ Φ}`
    /// and `r = max{k : β − kα ∈ Φ}`. Requires `α ≠ ±β`.
    pub fn alpha_chain(&self, alpha: &Root, beta: &Root) -> Result<(usize, usize)> {
        if !self.is_root(&alpha.coords) || !self.is_root(&beta.coords) {
            return Err(Error::domain("alpha_chain: inputs must be roots"));
        }
        if alpha.coords == beta.coords || alpha.negated().coords == beta.coords {
            return Err(Error::domain("alpha_chain: α = ±β is excluded"));
        }
        let step = |k: i64| -> Vec<i64> {
            beta.coords
                .iter()
                .zip(&alpha.coords)
                .map(|(b, a)| b + k * a)
                .collect()
        };
        let mut q = 0usize;
        while self.is_root(&step(q as i64 + 1)) {
            q += 1;
        }
        let mut r = 0usize;
        while self.is_root(&step(-(r as i64) - 1)) {
            r += 1;
        }
        Ok((q, r))
    }

    /// Simple-root coefficients of a positive root.
    pub fn simple_coeffs(&self, idx: usize) -> &[i64] {
        &self.simple_coeffs[idx]
    }

    /// Height: sum of the simple-root coefficients.
    pub fn height(&self, idx: usize) -> i64 {
        self.simple_coeffs[idx].iter().sum()
    }

    /// Support: simple-root indices with nonzero coefficient (1-based).
    pub fn support(&self, idx: usize) -> Vec<usize> {
        self.simple_coeffs[idx]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, _)| k + 1)
            .collect()
    }

    /// Family-normalized inner product of two integer ε-vectors.
    pub fn inner_i(&self, x: &[i64], y: &[i64]) -> i64 {
        self.scale * x.iter().zip(y).map(|(a, b)| a * b).sum::<i64>()
    }

    /// Family-normalized inner product of rational ε-vectors.
    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let s = x.iter().zip(y).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        s * rat(self.scale)
    }

    /// Squared length of a root (2 for short, 4 for long in B/C).
    pub fn length_sq(&self, root: &Root) -> i64 {
        self.inner_i(&root.coords, &root.coords)
    }

    /// The coroot `β^∨ = 2β / (β,β)` as a rational ε-vector.
    pub fn coroot(&self, root: &Root) -> Vec<Rat> {
        let lsq = self.length_sq(root);
        root.coords.iter().map(|&c| rat_frac(2 * c, lsq)).collect()
    }

    /// Height, support, squared length and coroot of a positive root in
    /// one bundle.
    pub fn root_data(&self, root: &Root) -> Result<RootData> {
        let idx = self.index_of_required(root)?;
        Ok(RootData {
            height: self.height(idx),
            support: self.support(idx),
            length_sq: self.length_sq(root),
            coroot: self.coroot(root),
        })
    }

    /// Pairing `⟨μ, β^∨⟩ = 2(μ,β)/(β,β)` for a rational weight μ.
    pub fn pairing(&self, mu: &[Rat], root: &Root) -> Rat {
        let beta: Vec<Rat> = root.coords.iter().map(|&c| rat(c)).collect();
        let num = self.inner(mu, &beta) * rat(2);
        num / rat(self.length_sq(root))
    }

    /// The fundamental weight `ϖ_k` in ε-coordinates. In type A the gl-style
    /// representative `ε_1 + … + ε_k` is used (all pairings with coroots are
    /// insensitive to the choice).
    pub fn fundamental_weight(&self, k: usize) -> Vec<Rat> {
        let n = self.rank();
        assert!(k >= 1 && k <= n, "fundamental weight index out of range");
        let mut v = vec![Rat::zero(); self.dim];
        match self.family() {
            Family::A | Family::C => {
                for c in v.iter_mut().take(k) {
                    *c = Rat::one();
                }
            }
            Family::B => {
                if k < n {
                    for c in v.iter_mut().take(k) {
                        *c = Rat::one();
                    }
                } else {
                    for c in v.iter_mut() {
                        *c = rat_frac(1, 2);
                    }
                }
            }
            Family::D => {
                if k <= n - 2 {
                    for c in v.iter_mut().take(k) {
                        *c = Rat::one();
                    }
                } else {
                    for c in v.iter_mut() {
                        *c = rat_frac(1, 2);
                    }
                    if k == n - 1 {
                        v[n - 1] = rat_frac(-1, 2);
                    }
                }
            }
        }
        v
    }

    /// ε-coordinates of a dominant weight given in the fundamental basis.
    pub fn weight_to_eps(&self, lambda: &[i64]) -> Vec<Rat> {
        assert_eq!(lambda.len(), self.rank());
        let mut v = vec![Rat::zero(); self.dim];
        for (k, &c) in lambda.iter().enumerate() {
            if c != 0 {
                let w = self.fundamental_weight(k + 1);
                for (a, b) in v.iter_mut().zip(w) {
                    *a += b * rat(c);
                }
            }
        }
        v
    }

    /// ρ = sum of the fundamental weights, in ε-coordinates.
    pub fn rho(&self) -> Vec<Rat> {
        self.weight_to_eps(&vec![1i64; self.rank()])
    }

    /// The Cartan matrix `⟨α_j, α_i^∨⟩` (rows i, columns j).
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let aj: Vec<Rat> =
                            self.simple_root(j).coords.iter().map(|&c| rat(c)).collect();
                        let p = self.pairing(&aj, self.simple_root(i));
                        assert!(p.is_integer());
                        int_to_i64(p.to_integer())
                    })
                    .collect()
            })
            .collect()
    }

    /// Expands an integer ε-vector over the simple roots; `None` when the
    /// vector is not an integral combination (coefficients may be negative).
    pub fn to_simple_coords(&self, eps: &[i64]) -> Option<Vec<i64>> {
        let n = self.rank();
        assert_eq!(eps.len(), self.dim);
        let mut m: Vec<Vec<Rat>> = (0..self.dim)
            .map(|row| {
                let mut r: Vec<Rat> = (0..n)
                    .map(|col| rat(self.simple_root(col + 1).coords[row]))
                    .collect();
                r.push(rat(eps[row]));
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prow = 0usize;
        for col in 0..n {
            if let Some(sel) = (prow..self.dim).find(|&r| !m[r][col].is_zero()) {
                m.swap(prow, sel);
                let inv = m[prow][col].clone();
                for c in col..=n {
                    m[prow][c] = &m[prow][c] / &inv;
                }
                for r in 0..self.dim {
                    if r != prow && !m[r][col].is_zero() {
                        let f = m[r][col].clone();
                        for c in col..=n {
                            m[r][c] = &m[r][c] - &f * &m[prow][c];
                        }
                    }
                }
                pivots.push((prow, col));
                prow += 1;
            }
        }
        for r in prow..self.dim {
            if !m[r][n].is_zero() {
                return None;
            }
        }
        let mut coeffs = vec![0i64; n];
        for (r, col) in pivots {
            let v = &m[r][n];
            if !v.is_integer() {
                return None;
            }
            coeffs[col] = int_to_i64(v.clone().to_integer());
        }
        Some(coeffs)
    }

    /// Upper bound for cut positions: `n − 1` in types A/B/C, `n − 3` in D.
    pub fn cut_bound(&self) -> usize {
        match self.family() {
            Family::D => self.rank() - 3,
            _ => self.rank() - 1,
        }
    }
}

pub fn int_to_i64(b: BigInt) -> i64 {
    use num_traits::ToPrimitive;
    b.to_i64().expect("integer out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs(Family::A, 2).num_positive_roots(), 3);
        assert_eq!(rs(Family::B, 3).num_positive_roots(), 9);
        for n in 1..=5 {
            assert_eq!(rs(Family::A, n).num_positive_roots(), n * (n + 1) / 2);
        }
        for n in 2..=5 {
            assert_eq!(rs(Family::B, n).num_positive_roots(), n * n);
            assert_eq!(rs(Family::C, n).num_positive_roots(), n * n);
        }
        for n in 4..=6 {
            assert_eq!(rs(Family::D, n).num_positive_roots(), n * (n - 1));
        }
    }

    #[test]
    fn rank_below_minimum_is_rejected() {
        assert!(matches!(
            RootSystem::new(Family::D, 3),
            Err(Error::InvalidRank { .. })
        ));
        assert!(RootSystem::new(Family::B, 1).is_err());
        assert!(RootSystem::new(Family::C, 1).is_err());
        assert!(RootSystem::new(Family::A, 1).is_ok());
    }

    #[test]
    fn a2_try_add() {
        let s = rs(Family::A, 2);
        let a1 = s.simple_root(1).clone();
        let a2 = s.simple_root(2).clone();
        let a12 = s.try_add(&a1, &a2).unwrap().expect("α1+α2 is a root");
        assert_eq!(s.label(s.index_of(&a12).unwrap()), Label::Straight(1, 2));
        assert!(s.try_add(&a12, &a1).unwrap().is_none());
        assert!(s.try_add(&Root::new(vec![5, 0, 0]), &a1).is_err());
    }

    #[test]
    fn b2_try_add_short_short() {
        let s = rs(Family::B, 2);
        // (ε1−ε2) + ε2 = ε1
        let a11 = s
            .root(s.index_of_label(Label::Straight(1, 1)).unwrap())
            .clone();
        let a22 = s
            .root(s.index_of_label(Label::Straight(2, 2)).unwrap())
            .clone();
        let sum = s.try_add(&a11, &a22).unwrap().unwrap();
        assert_eq!(s.label(s.index_of(&sum).unwrap()), Label::Straight(1, 2));
        assert_eq!(sum.coords, vec![1, 0]);
    }

    #[test]
    fn alpha_chains() {
        let a2 = rs(Family::A, 2);
        let (q, r) = a2
            .alpha_chain(a2.simple_root(1), a2.simple_root(2))
            .unwrap();
        assert_eq!((q, r), (1, 0));

        let b2 = rs(Family::B, 2);
        let alpha = b2.simple_root(2).clone(); // ε2
        let beta = b2.simple_root(1).clone(); // ε1−ε2
        assert_eq!(b2.alpha_chain(&alpha, &beta).unwrap(), (2, 0));
        let eps1 = Root::new(vec![1, 0]);
        assert_eq!(b2.alpha_chain(&alpha, &eps1).unwrap(), (1, 1));
        assert!(b2.alpha_chain(&alpha, &alpha).is_err());
    }

    #[test]
    fn chain_relation_matches_pairing() {
        // r − q = ⟨β, α^∨⟩ over all root pairs, small ranks.
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let s = rs(f, n);
            let mut all: Vec<Root> = s.positive_roots().to_vec();
            all.extend(s.positive_roots().iter().map(|r| r.negated()));
            for a in &all {
                for b in &all {
                    if a.coords == b.coords || a.negated().coords == b.coords {
                        continue;
                    }
                    let (q, r) = s.alpha_chain(a, b).unwrap();
                    let bq: Vec<Rat> = b.coords.iter().map(|&c| rat(c)).collect();
                    let p = s.pairing(&bq, a);
                    assert!(p.is_integer());
                    assert_eq!(
                        int_to_i64(p.to_integer()),
                        r as i64 - q as i64,
                        "chain relation failed for {f}{n}: α={:?} β={:?}",
                        a.coords,
                        b.coords
                    );
                }
            }
        }
    }

    #[test]
    fn heights_and_support() {
        let s = rs(Family::A, 2);
        let i = s.index_of_label(Label::Straight(1, 2)).unwrap();
        assert_eq!(s.height(i), 2);
        assert_eq!(s.support(i), vec![1, 2]);

        // B3: ε1+ε2 = α1 + 2α2 + 2α3, height 5
        let b3 = rs(Family::B, 3);
        let i = b3.index_of_label(Label::Barred(1, 2)).unwrap();
        assert_eq!(b3.simple_coeffs(i), &[1, 2, 2]);
        assert_eq!(b3.height(i), 5);
    }

    #[test]
    fn length_normalization() {
        // Long roots squared length 4 in B/C, short 2; all 2 in A/D.
        let c2 = rs(Family::C, 2);
        let long = c2
            .root(c2.index_of_label(Label::Barred(1, 1)).unwrap())
            .clone();
        assert_eq!(long.coords, vec![2, 0]);
        assert_eq!(c2.length_sq(&long), 4);
        let short = c2.simple_root(1);
        assert_eq!(c2.length_sq(short), 2);

        let b2 = rs(Family::B, 2);
        assert_eq!(b2.length_sq(b2.simple_root(2)), 2); // ε2 short
        assert_eq!(b2.length_sq(b2.simple_root(1)), 4); // ε1−ε2 long

        let a2 = rs(Family::A, 2);
        assert_eq!(a2.length_sq(a2.simple_root(1)), 2);
        let d4 = rs(Family::D, 4);
        for r in d4.positive_roots() {
            assert_eq!(d4.length_sq(r), 2);
        }
    }

    #[test]
    fn coroot_of_long_c_root() {
        let c2 = rs(Family::C, 2);
        let long = c2
            .root(c2.index_of_label(Label::Barred(1, 1)).unwrap())
            .clone();
        assert_eq!(c2.coroot(&long), vec![rat(1), rat(0)]);
    }

    #[test]
    fn root_data_bundle() {
        let a2 = rs(Family::A, 2);
        let a12 = a2
            .root(a2.index_of_label(Label::Straight(1, 2)).unwrap())
            .clone();
        let data = a2.root_data(&a12).unwrap();
        assert_eq!(data.height, 2);
        assert_eq!(data.support, vec![1, 2]);
        assert_eq!(data.length_sq, 2);
        assert!(a2.root_data(&Root::new(vec![2, 0, 0])).is_err());
    }

    #[test]
    fn simple_coefficients_nonnegative_and_height_additive() {
        for (f, max) in [
            (Family::A, 5),
            (Family::B, 5),
            (Family::C, 5),
            (Family::D, 6),
        ] {
            for n in f.min_rank()..=max {
                let s = rs(f, n);
                for i in 0..s.num_positive_roots() {
                    assert!(s.simple_coeffs(i).iter().all(|&c| c >= 0));
                    assert_eq!(s.height(i), s.simple_coeffs(i).iter().sum::<i64>());
                }
            }
        }
    }

    #[test]
    fn label_coords_roundtrip() {
        for (f, max) in [
            (Family::A, 5),
            (Family::B, 5),
            (Family::C, 5),
            (Family::D, 6),
        ] {
            for n in f.min_rank()..=max {
                let s = rs(f, n);
                for i in 0..s.num_positive_roots() {
                    let l = s.label(i);
                    assert_eq!(s.index_of_label(l), Some(i));
                    assert_eq!(s.index_of(s.root(i)), Some(i));
                }
            }
        }
    }

    #[test]
    fn c_barred_n_alias() {
        let c3 = rs(Family::C, 3);
        let via_alias = c3.index_of_label(Label::Barred(1, 3)).unwrap();
        let direct = c3.index_of_label(Label::Straight(1, 3)).unwrap();
        assert_eq!(via_alias, direct);
    }

    #[test]
    fn d_labels() {
        let d4 = rs(Family::D, 4);
        // α4 = ε3 + ε4 carries the label (4,4)
        let i = d4.index_of_label(Label::Straight(4, 4)).unwrap();
        assert_eq!(d4.root(i).coords, vec![0, 0, 1, 1]);
        // (3,4) is not a label
        assert!(d4.index_of_label(Label::Straight(3, 4)).is_none());
        // (1,4) = ε1 + ε4
        let i = d4.index_of_label(Label::Straight(1, 4)).unwrap();
        assert_eq!(d4.root(i).coords, vec![1, 0, 0, 1]);
    }

    #[test]
    fn cartan_matrix_b2() {
        let b2 = rs(Family::B, 2);
        assert_eq!(b2.cartan_matrix(), vec![vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn label_parse_roundtrip() {
        for l in [Label::Straight(1, 2), Label::Barred(3, 5)] {
            assert_eq!(Label::parse(&l.to_string()).unwrap(), l);
        }
    }
}
