//! Explicit fundamental modules as wedge powers of the vector
//! representation, degree filtrations, and the raising-operator span of
//! the extremal vector.
//!
//! Basis vectors are sorted k-subsets of the ordered one-particle basis
//! (for B the order is `1 < … < n < 0 < −n < … < −1`, for D the same
//! without `0`). All linear algebra is exact rational Gaussian
//! elimination on sparse vectors.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chevalley::{vector_rep, Mat, VectorRep};
use crate::cones::{abelianisation_cone, membership, CutSet, DegreeVector, Mode};
use crate::demazure::weyl_dim;
use crate::error::{Error, Result};
use crate::rootsys::{rat, Family, Rat, RootSystem, RootSystemId};
use crate::stretch::Stretching;
use crate::weyl::extremal_columns;

pub type SparseVec = BTreeMap<usize, BigRational>;

/// Incremental row space with exact elimination.
#[derive(Debug, Default)]
pub struct SparseSpan {
    pivots: BTreeMap<usize, SparseVec>,
}

impl SparseSpan {
    pub fn new() -> Self {
        SparseSpan {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }

    fn reduce(&self, v: &mut SparseVec) {
        loop {
            let Some((&lead, _)) = v.iter().next() else {
                return;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return;
            };
            let factor = v[&lead].clone();
            for (k, c) in pivot {
                let entry = v.entry(*k).or_insert_with(Rat::zero);
                *entry -= &factor * c;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    /// Inserts a vector; returns true when the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        self.reduce(&mut v);
        let Some((&lead, _)) = v.iter().next() else {
            return false;
        };
        let inv = v[&lead].clone();
        for c in v.values_mut() {
            *c = &*c / &inv;
        }
        self.pivots.insert(lead, v);
        true
    }
}

/// A wedge power of the vector representation with integral operators.
#[derive(Debug, Clone)]
pub struct WedgeModule {
    pub system: RootSystemId,
    pub k: usize,
    basis: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    rep: VectorRep,
    num_positive: usize,
}

fn subsets(dim: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..k as u8).collect();
    if k == 0 || k > dim {
        return out;
    }
    loop {
        out.push(cur.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < dim - (k - i) {
                cur[i] += 1;
                for j in (i + 1)..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl WedgeModule {
    /// Builds `Λ^k` of the vector representation. Valid for `1 ≤ k ≤ n`
    /// in type A, `1 ≤ k ≤ n−1` in type B and `1 ≤ k ≤ n−2` in type D;
    /// spin indices and type C are rejected.
    pub fn new(rs: &RootSystem, k: usize) -> Result<WedgeModule> {
        let n = rs.rank();
        let ok = match rs.family() {
            Family::A => k >= 1 && k <= n,
            Family::B => k >= 1 && k <= n - 1,
            Family::D => k >= 1 && k <= n - 2,
            Family::C => {
                return Err(Error::domain(
                    "wedge realizations are built for types A, B and D only",
                ))
            }
        };
        if !ok {
            return Err(Error::domain(format!(
                "fundamental index {k} is outside the non-spin wedge range for {}",
                rs.id()
            )));
        }
        let rep = vector_rep(rs);
        let basis = subsets(rep.dim, k);
        let index: HashMap<Vec<u8>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        Ok(WedgeModule {
            system: rs.id(),
            k,
            basis,
            index,
            rep,
            num_positive: rs.num_positive_roots(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_subset(&self, idx: usize) -> &[u8] {
        &self.basis[idx]
    }

    pub fn index_of_subset(&self, subset: &[u8]) -> Option<usize> {
        self.index.get(subset).copied()
    }

    /// Weight (ε-coordinates) of a basis vector.
    pub fn basis_weight(&self, idx: usize) -> Vec<i64> {
        let dim_eps = self.rep.basis_weight[0].len();
        let mut w = vec![0i64; dim_eps];
        for &p in &self.basis[idx] {
            for (a, b) in w.iter_mut().zip(&self.rep.basis_weight[p as usize]) {
                *a += b;
            }
        }
        w
    }

    /// The highest weight vector `e_1 ∧ … ∧ e_k`.
    pub fn highest_weight_vector(&self) -> SparseVec {
        let subset: Vec<u8> = (0..self.k as u8).collect();
        let mut v = SparseVec::new();
        v.insert(self.index[&subset], Rat::one());
        v
    }

    fn apply_matrix(&self, m: &Mat, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&bidx, coeff) in v {
            let subset = &self.basis[bidx];
            for (pos, &p) in subset.iter().enumerate() {
                // X e_p = Σ_r m[r][p] e_r
                for (r, row) in m.iter().enumerate() {
                    let c = row[p as usize];
                    if c == 0 {
                        continue;
                    }
                    let r8 = r as u8;
                    if subset.contains(&r8) && r8 != p {
                        continue;
                    }
                    // replace position `pos` by r, re-sort, sign = moves
                    let mut new_subset = subset.clone();
                    new_subset[pos] = r8;
                    let mut sign = 1i64;
                    let mut q = pos;
                    while q > 0 && new_subset[q - 1] > new_subset[q] {
                        new_subset.swap(q - 1, q);
                        sign = -sign;
                        q -= 1;
                    }
                    while q + 1 < new_subset.len() && new_subset[q] > new_subset[q + 1] {
                        new_subset.swap(q, q + 1);
                        sign = -sign;
                        q += 1;
                    }
                    let target = self.index[&new_subset];
                    let entry = out.entry(target).or_insert_with(Rat::zero);
                    *entry += coeff * rat(sign * c);
                    if entry.is_zero() {
                        out.remove(&target);
                    }
                }
            }
        }
        out
    }

    pub fn apply_e(&self, root_idx: usize, v: &SparseVec) -> SparseVec {
        self.apply_matrix(&self.rep.e[root_idx], v)
    }

    pub fn apply_f(&self, root_idx: usize, v: &SparseVec) -> SparseVec {
        self.apply_matrix(&self.rep.f[root_idx], v)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.num_positive
    }
}

/// All multisets of positive roots summing to the given simple-root
/// coordinate vector.
fn kostant_partitions(rs: &RootSystem, target: &[i64]) -> Vec<Vec<(usize, usize)>> {
    let n = rs.num_positive_roots();
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();

    fn go(
        rs: &RootSystem,
        idx: usize,
        remaining: &mut Vec<i64>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if remaining.iter().all(|&c| c == 0) {
            out.push(current.clone());
            return;
        }
        if idx == rs.num_positive_roots() {
            return;
        }
        // max multiplicity of root idx
        let coeffs = rs.simple_coeffs(idx);
        let mut maxm = i64::MAX;
        for (c, r) in coeffs.iter().zip(remaining.iter()) {
            if *c > 0 {
                maxm = maxm.min(r / c);
            }
        }
        for m in (0..=maxm.max(0)).rev() {
            if m > 0 {
                for (r, c) in remaining.iter_mut().zip(coeffs) {
                    *r -= m * c;
                }
                current.push((idx, m as usize));
            }
            let feasible = remaining.iter().all(|&c| c >= 0);
            if feasible {
                go(rs, idx + 1, remaining, current, out);
            }
            if m > 0 {
                current.pop();
                for (r, c) in remaining.iter_mut().zip(coeffs) {
                    *r += m * c;
                }
            }
        }
    }

    let mut remaining = target.to_vec();
    go(rs, 0, &mut remaining, &mut current, &mut out);
    let _ = n;
    out
}

/// Graded dimensions of the degree filtration on a wedge module: for each
/// jump value `m`, the dimension of `span{monomials of degree ≤ m}` modulo
/// the span below. The values sum to the module dimension.
pub fn filtration_dims(
    rs: &RootSystem,
    module: &WedgeModule,
    d: &DegreeVector,
) -> Result<BTreeMap<Rat, usize>> {
    if rs.id() != module.system {
        return Err(Error::domain("module belongs to a different root system"));
    }
    let cone = abelianisation_cone(rs);
    if !membership(&cone, d, Mode::Closure)? {
        return Err(Error::ConeMembership(format!(
            "degree vector is not in the abelianisation cone of {}",
            rs.id()
        )));
    }
    // group basis indices by weight
    let mut weights: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for idx in 0..module.dim() {
        weights
            .entry(module.basis_weight(idx))
            .or_default()
            .push(idx);
    }
    let hw = module.basis_weight(
        *module
            .index
            .get(&(0..module.k as u8).collect::<Vec<u8>>())
            .unwrap(),
    );

    let mut graded: BTreeMap<Rat, usize> = BTreeMap::new();
    for mu in weights.keys() {
        let diff: Vec<i64> = hw.iter().zip(mu).map(|(a, b)| a - b).collect();
        let Some(target) = rs.to_simple_coords(&diff) else {
            continue;
        };
        if target.iter().any(|&c| c < 0) {
            continue;
        }
        // all monomials reaching this weight, with their degrees
        let mut items: Vec<(Rat, SparseVec)> = Vec::new();
        for partition in kostant_partitions(rs, &target) {
            let mut degree = Rat::zero();
            let mut vec = module.highest_weight_vector();
            // canonical order: apply higher root indices first
            for &(ri, mult) in partition.iter() {
                for _ in 0..mult {
                    degree += d.get(ri);
                }
            }
            for &(ri, mult) in partition.iter().rev() {
                for _ in 0..mult {
                    vec = module.apply_f(ri, &vec);
                    if vec.is_empty() {
                        break;
                    }
                }
                if vec.is_empty() {
                    break;
                }
            }
            if !vec.is_empty() {
                items.push((degree, vec));
            }
        }
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let mut span = SparseSpan::new();
        for (degree, vec) in items {
            if span.insert(vec) {
                *graded.entry(degree).or_insert(0) += 1;
            }
        }
    }
    let total: usize = graded.values().sum();
    if total != module.dim() {
        return Err(Error::invariant(format!(
            "filtration total {total} differs from module dimension {}",
            module.dim()
        )));
    }
    Ok(graded)
}

/// Result of the raising-operator closure from the extremal vector.
#[derive(Debug)]
pub struct DemazureSpan {
    pub dim: usize,
    /// Reduced basis of the span (rows of the elimination).
    pub vectors: Vec<SparseVec>,
    /// Positions (into the one-particle basis) that every wedge component
    /// must contain.
    pub prefix: Vec<u8>,
    /// Contiguous window of admissible non-prefix positions.
    pub window: (u8, u8),
    module: WedgeModule,
}

impl DemazureSpan {
    /// Structural containment: every wedge component of every span vector
    /// keeps the prefix and stays inside the window.
    pub fn containment_holds(&self) -> bool {
        for v in &self.vectors {
            for &bidx in v.keys() {
                let subset = self.module.basis_subset(bidx);
                for &p in &self.prefix {
                    if !subset.contains(&p) {
                        return false;
                    }
                }
                for &p in subset {
                    if !self.prefix.contains(&p) && (p < self.window.0 || p > self.window.1) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Position of a signed one-particle index in the ordered basis of the
/// vector representation.
fn position_of_signed(family: Family, rank: usize, signed_idx: i64) -> usize {
    let n = rank;
    if signed_idx > 0 {
        (signed_idx - 1) as usize
    } else {
        let m = signed_idx.unsigned_abs() as usize;
        match family {
            Family::B => 2 * n + 1 - m,
            Family::D => 2 * n - m,
            _ => unreachable!("negative indices occur in types B and D only"),
        }
    }
}

/// Applies raising operators to the extremal vector of the stretched wedge
/// module until the span closes, and checks the resulting dimension
/// against the Weyl dimension of the base fundamental module.
pub fn demazure_span_dim(rs: &RootSystem, cuts: &CutSet, i: usize) -> Result<DemazureSpan> {
    let cols = extremal_columns(rs, cuts, i)?; // validates i per family
    let st = Stretching::from_system(rs, cuts)?;
    let t = st.t();
    let n = rs.rank();
    let li = st.sigma(i);
    let big = st.stretched();
    let module = WedgeModule::new(big, li)?;
    let mut subset: Vec<u8> = cols
        .iter()
        .map(|&c| position_of_signed(rs.family(), big.rank(), c) as u8)
        .collect();
    subset.sort_unstable();
    let start_idx = module
        .index_of_subset(&subset)
        .ok_or_else(|| Error::invariant("extremal columns do not index a basis vector"))?;

    let mut span = SparseSpan::new();
    let mut start = SparseVec::new();
    start.insert(start_idx, Rat::one());
    span.insert(start);
    // closure under all raising operators
    loop {
        let mut new_vectors = Vec::new();
        for row in span.rows() {
            for ri in 0..module.num_positive_roots() {
                let image = module.apply_e(ri, row);
                if !image.is_empty() {
                    new_vectors.push(image);
                }
            }
        }
        let mut grew = false;
        for v in new_vectors {
            if span.insert(v) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    let dim = span.rank();
    let mut lam = vec![0i64; n];
    lam[i - 1] = 1;
    let expected = weyl_dim(rs, &lam)?;
    if BigInt::from(dim) != expected {
        return Err(Error::invariant(format!(
            "raising closure has dimension {dim}, expected {expected} for {} i={i} cuts {cuts}",
            rs.id()
        )));
    }

    let prefix: Vec<u8> = (0..(li - i) as u8).collect();
    let window_lo = (li - i) as u8;
    // Raising operators only decrease one-particle indices, so the
    // admissible window ends at the largest extremal index. It contains
    // n+1 order elements in type A, 2n+1 in type B and 2n in type D,
    // matching the binomial dimension bounds.
    let window_hi = match rs.family() {
        Family::A => (n + li - i) as u8, // index n+1+li−i, position −1
        Family::B | Family::D => {
            let end_index = -((2 * t + i + 1) as i64 - li as i64);
            position_of_signed(rs.family(), big.rank(), end_index) as u8
        }
        Family::C => unreachable!(),
    };
    let vectors: Vec<SparseVec> = span.rows().cloned().collect();
    Ok(DemazureSpan {
        dim,
        vectors,
        prefix,
        window: (window_lo, window_hi),
        module,
    })
}
