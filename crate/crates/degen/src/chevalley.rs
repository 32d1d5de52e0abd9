//! Integral structure constants from explicit matrix realizations, the
//! degree-graded bracket, and the graded Lie-algebra isomorphism check.
//!
//! Types A, C and D use the standard realizations (anti-diagonal bilinear
//! form for C/D), which are Chevalley bases on the nose. Type B is folded
//! out of the D realization one rank up: the short root vectors are sums of
//! the two swapped long ones, which produces the required `±2` constants
//! with integer matrices. Signs are convention-dependent, so the
//! isomorphism check works up to a sign character solved over GF(2).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::cones::{
    abelianisation_cone, dynkin_cone, membership, relint_point, CutSet, DegreeVector, Mode,
};
use crate::error::{Error, Result};
use crate::rootsys::{Family, Rat, Root, RootSystem, RootSystemId};
use crate::stretch::Stretching;

pub type Mat = Vec<Vec<i64>>;

fn zeros(dim: usize) -> Mat {
    vec![vec![0i64; dim]; dim]
}

fn mat_bracket(a: &Mat, b: &Mat) -> Mat {
    let dim = a.len();
    let mut out = zeros(dim);
    for (i, oi) in out.iter_mut().enumerate() {
        for k in 0..dim {
            let aik = a[i][k];
            let bik = b[i][k];
            if aik != 0 {
                for (j, o) in oi.iter_mut().enumerate() {
                    *o += aik * b[k][j];
                }
            }
            if bik != 0 {
                for (j, o) in oi.iter_mut().enumerate() {
                    *o -= bik * a[k][j];
                }
            }
        }
    }
    out
}

/// Returns `c` with `a = c · b` when `a` is an exact integer multiple of
/// `b`, and `None` otherwise (also when `b = 0`).
fn proportionality(a: &Mat, b: &Mat) -> Option<i64> {
    let mut ratio: Option<i64> = None;
    for (ra, rb) in a.iter().zip(b) {
        for (&x, &y) in ra.iter().zip(rb) {
            if y == 0 {
                if x != 0 {
                    return None;
                }
            } else {
                if x % y != 0 {
                    return None;
                }
                let c = x / y;
                match ratio {
                    None => ratio = Some(c),
                    Some(r) if r != c => return None,
                    _ => {}
                }
            }
        }
    }
    ratio
}

/// The defining (vector) representation with integral operators for every
/// root vector, plus the coroot operators of the simple roots.
#[derive(Debug, Clone)]
pub struct VectorRep {
    pub dim: usize,
    /// Raising operator per positive root, indexed like the root list.
    pub e: Vec<Mat>,
    /// Lowering operator per positive root.
    pub f: Vec<Mat>,
    /// Coroot operator per simple root, `h_k = [e_k, f_k]`.
    pub h: Vec<Mat>,
    /// Weight of each basis vector in ε-coordinates.
    pub basis_weight: Vec<Vec<i64>>,
}

pub fn vector_rep(rs: &RootSystem) -> VectorRep {
    match rs.family() {
        Family::A => vector_rep_a(rs),
        Family::C => vector_rep_c(rs),
        Family::D => vector_rep_d(rs),
        Family::B => vector_rep_b(rs),
    }
}

fn unit(dim: usize, i: usize, j: usize) -> Mat {
    let mut m = zeros(dim);
    m[i - 1][j - 1] = 1;
    m
}

fn mat_add(a: &Mat, b: &Mat, sgn: i64) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + sgn * y).collect())
        .collect()
}

fn vector_rep_a(rs: &RootSystem) -> VectorRep {
    let n = rs.rank();
    let dim = n + 1;
    let mut e = Vec::new();
    let mut f = Vec::new();
    for root in rs.positive_roots() {
        // ε_i − ε_j with i < j
        let i = root.coords.iter().position(|&c| c > 0).unwrap() + 1;
        let j = root.coords.iter().position(|&c| c < 0).unwrap() + 1;
        e.push(unit(dim, i, j));
        f.push(unit(dim, j, i));
    }
    let h = (1..=n)
        .map(|k| {
            let ei = rs.simple_index(k);
            mat_bracket(&e[ei], &f[ei])
        })
        .collect();
    let basis_weight = (0..dim)
        .map(|m| {
            let mut w = vec![0i64; dim];
            w[m] = 1;
            w
        })
        .collect();
    VectorRep {
        dim,
        e,
        f,
        h,
        basis_weight,
    }
}

/// Splits the ε-form of a B/C/D root into its signed index pattern.
enum EpsShape {
    Diff(usize, usize), // ε_i − ε_j
    Sum(usize, usize),  // ε_i + ε_j, i < j
    Short(usize),       // ε_i
    Long(usize),        // 2ε_i
}

fn eps_shape(root: &Root) -> EpsShape {
    let pos: Vec<(usize, i64)> = root
        .coords
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i + 1, c))
        .collect();
    match pos.as_slice() {
        [(i, 1), (j, -1)] => EpsShape::Diff(*i, *j),
        [(i, -1), (j, 1)] => EpsShape::Diff(*j, *i),
        [(i, 1), (j, 1)] => EpsShape::Sum(*i, *j),
        [(i, 1)] => EpsShape::Short(*i),
        [(i, 2)] => EpsShape::Long(*i),
        other => panic!("unexpected root shape {other:?}"),
    }
}

fn vector_rep_c(rs: &RootSystem) -> VectorRep {
    let n = rs.rank();
    let dim = 2 * n;
    let pr = |i: usize| 2 * n + 1 - i;
    let mut e = Vec::new();
    let mut f = Vec::new();
    for root in rs.positive_roots() {
        let (em, fm) = match eps_shape(root) {
            EpsShape::Diff(i, j) => (
                mat_add(&unit(dim, i, j), &unit(dim, pr(j), pr(i)), -1),
                mat_add(&unit(dim, j, i), &unit(dim, pr(i), pr(j)), -1),
            ),
            EpsShape::Sum(i, j) => (
                mat_add(&unit(dim, i, pr(j)), &unit(dim, j, pr(i)), 1),
                mat_add(&unit(dim, pr(j), i), &unit(dim, pr(i), j), 1),
            ),
            EpsShape::Long(i) => (unit(dim, i, pr(i)), unit(dim, pr(i), i)),
            EpsShape::Short(_) => unreachable!("no short ε roots in type C"),
        };
        e.push(em);
        f.push(fm);
    }
    let h = (1..=n)
        .map(|k| {
            let ei = rs.simple_index(k);
            mat_bracket(&e[ei], &f[ei])
        })
        .collect();
    let basis_weight = (0..dim)
        .map(|m0| {
            let mut w = vec![0i64; n];
            if m0 < n {
                w[m0] = 1;
            } else {
                w[2 * n - 1 - m0] = -1;
            }
            w
        })
        .collect();
    VectorRep {
        dim,
        e,
        f,
        h,
        basis_weight,
    }
}

fn vector_rep_d(rs: &RootSystem) -> VectorRep {
    let n = rs.rank();
    let dim = 2 * n;
    let pr = |i: usize| 2 * n + 1 - i;
    let mut e = Vec::new();
    let mut f = Vec::new();
    for root in rs.positive_roots() {
        let (em, fm) = match eps_shape(root) {
            EpsShape::Diff(i, j) => (
                mat_add(&unit(dim, i, j), &unit(dim, pr(j), pr(i)), -1),
                mat_add(&unit(dim, j, i), &unit(dim, pr(i), pr(j)), -1),
            ),
            EpsShape::Sum(i, j) => (
                mat_add(&unit(dim, i, pr(j)), &unit(dim, j, pr(i)), -1),
                mat_add(&unit(dim, pr(j), i), &unit(dim, pr(i), j), -1),
            ),
            _ => unreachable!("no short or doubled roots in type D"),
        };
        e.push(em);
        f.push(fm);
    }
    let h = (1..=n)
        .map(|k| {
            let ei = rs.simple_index(k);
            mat_bracket(&e[ei], &f[ei])
        })
        .collect();
    let basis_weight = (0..dim)
        .map(|m0| {
            let mut w = vec![0i64; n];
            if m0 < n {
                w[m0] = 1;
            } else {
                w[2 * n - 1 - m0] = -1;
            }
            w
        })
        .collect();
    VectorRep {
        dim,
        e,
        f,
        h,
        basis_weight,
    }
}

/// Type B as the fold of the D realization one rank up. The ambient
/// (2n+2)-dimensional matrices are restricted to the invariant subspace
/// spanned by `e_1, …, e_n, e_{n+1}+e_{n+2}, e_{n+3}, …, e_{2n+2}`, which
/// keeps everything integral.
fn vector_rep_b(rs: &RootSystem) -> VectorRep {
    let n = rs.rank();
    let big = 2 * n + 2;
    let dim = 2 * n + 1;
    let pr = |i: usize| big + 1 - i;

    // big-space operator -> restriction to the B basis
    let restrict = |m: &Mat| -> Mat {
        // columns of the new matrix: images of the basis vectors
        let to_big = |col: usize| -> Vec<i64> {
            // basis vector as coordinates in the big space
            let mut v = vec![0i64; big];
            if col < n {
                v[col] = 1;
            } else if col == n {
                v[n] = 1;
                v[n + 1] = 1;
            } else {
                v[col + 1] = 1;
            }
            v
        };
        let mut out = zeros(dim);
        for col in 0..dim {
            let vin = to_big(col);
            let mut vout = vec![0i64; big];
            for (r, row) in m.iter().enumerate() {
                vout[r] = row.iter().zip(&vin).map(|(a, b)| a * b).sum();
            }
            assert_eq!(vout[n], vout[n + 1], "operator does not fix the fold");
            for row in 0..dim {
                out[row][col] = if row < n {
                    vout[row]
                } else if row == n {
                    vout[n]
                } else {
                    vout[row + 1]
                };
            }
        }
        out
    };

    let mid = n + 1;
    let mut e = Vec::new();
    let mut f = Vec::new();
    for root in rs.positive_roots() {
        let (ebig, fbig) = match eps_shape(root) {
            EpsShape::Diff(i, j) => (
                mat_add(&unit(big, i, j), &unit(big, pr(j), pr(i)), -1),
                mat_add(&unit(big, j, i), &unit(big, pr(i), pr(j)), -1),
            ),
            EpsShape::Sum(i, j) => (
                mat_add(&unit(big, i, pr(j)), &unit(big, j, pr(i)), -1),
                mat_add(&unit(big, pr(j), i), &unit(big, pr(i), j), -1),
            ),
            EpsShape::Short(i) => {
                // fold of (ε_i − ε_{n+1}) and (ε_i + ε_{n+1})
                let e1 = mat_add(&unit(big, i, mid), &unit(big, pr(mid), pr(i)), -1);
                let e2 = mat_add(&unit(big, i, pr(mid)), &unit(big, mid, pr(i)), -1);
                let f1 = mat_add(&unit(big, mid, i), &unit(big, pr(i), pr(mid)), -1);
                let f2 = mat_add(&unit(big, pr(mid), i), &unit(big, pr(i), mid), -1);
                (mat_add(&e1, &e2, 1), mat_add(&f1, &f2, 1))
            }
            EpsShape::Long(_) => unreachable!("no doubled roots in type B"),
        };
        e.push(restrict(&ebig));
        f.push(restrict(&fbig));
    }
    let h = (1..=n)
        .map(|k| {
            let ei = rs.simple_index(k);
            mat_bracket(&e[ei], &f[ei])
        })
        .collect();
    let basis_weight = (0..dim)
        .map(|m0| {
            let mut w = vec![0i64; n];
            if m0 < n {
                w[m0] = 1;
            } else if m0 > n {
                w[2 * n - m0] = -1;
            }
            w
        })
        .collect();
    VectorRep {
        dim,
        e,
        f,
        h,
        basis_weight,
    }
}

/// Signed root index: positive roots are `1..=N`, negatives `−1..=−N`.
pub fn signed(idx: usize, positive: bool) -> i64 {
    let v = (idx + 1) as i64;
    if positive {
        v
    } else {
        -v
    }
}

/// Integral structure constants `N_{ξ,η}` over all ordered pairs of
/// (signed) roots with `ξ + η` a root.
#[derive(Debug, Clone)]
pub struct StructureTable {
    system: RootSystemId,
    num_positive: usize,
    constants: HashMap<(i64, i64), i64>,
}

impl StructureTable {
    pub fn system(&self) -> RootSystemId {
        self.system
    }

    pub fn num_positive_roots(&self) -> usize {
        self.num_positive
    }

    /// `N_{ξ,η}` for signed root indices (see [`signed`]).
    pub fn constant(&self, xi: i64, eta: i64) -> Option<i64> {
        self.constants.get(&(xi, eta)).copied()
    }

    /// Constant of `[f_α, f_β]` in terms of `f_{α+β}`, for positive roots
    /// `α, β` given by index. Equals `N_{−α,−β}`.
    pub fn lowering_constant(&self, alpha: usize, beta: usize) -> Option<i64> {
        self.constant(signed(alpha, false), signed(beta, false))
    }

    /// Fault-injection helper for the verification suite: returns a copy
    /// with the sign of one lowering constant (and its antisymmetric
    /// partner) flipped.
    pub fn with_sign_flipped(&self, alpha: usize, beta: usize) -> StructureTable {
        let mut t = self.clone();
        let a = signed(alpha, false);
        let b = signed(beta, false);
        if let Some(v) = t.constants.get_mut(&(a, b)) {
            *v = -*v;
        }
        if let Some(v) = t.constants.get_mut(&(b, a)) {
            *v = -*v;
        }
        t
    }
}

fn table_cache() -> &'static Mutex<HashMap<RootSystemId, StructureTable>> {
    static CACHE: OnceLock<Mutex<HashMap<RootSystemId, StructureTable>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds (and caches) the structure-constant table of a system from its
/// matrix realization.
pub fn build_chevalley(rs: &RootSystem) -> Result<StructureTable> {
    if let Some(t) = table_cache().lock().unwrap().get(&rs.id()) {
        return Ok(t.clone());
    }
    let rep = vector_rep(rs);
    let npos = rs.num_positive_roots();
    let signed_roots: Vec<(i64, Root, &Mat)> = (0..npos)
        .flat_map(|i| {
            [
                (signed(i, true), rs.root(i).clone(), &rep.e[i]),
                (signed(i, false), rs.root(i).negated(), &rep.f[i]),
            ]
        })
        .collect();
    let mat_of = |coords: &Vec<i64>| -> Option<&Mat> {
        rs.index_of(&Root::new(coords.clone()))
            .map(|i| &rep.e[i])
            .or_else(|| {
                let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
                rs.index_of(&Root::new(neg)).map(|i| &rep.f[i])
            })
    };
    let mut constants = HashMap::new();
    for (ka, ra, ma) in &signed_roots {
        for (kb, rb, mb) in &signed_roots {
            if ka == kb {
                continue;
            }
            let sum = ra.sum(rb);
            if sum.coords.iter().all(|&c| c == 0) {
                continue; // Cartan direction, not part of the table
            }
            let Some(target) = mat_of(&sum.coords) else {
                continue;
            };
            let br = mat_bracket(ma, mb);
            match proportionality(&br, target) {
                Some(c) if c != 0 => {
                    constants.insert((*ka, *kb), c);
                }
                _ => {
                    return Err(Error::invariant(format!(
                        "bracket not a nonzero multiple of the target root vector \
                         for pair ({ka},{kb}) in {}",
                        rs.id()
                    )))
                }
            }
        }
    }
    let table = StructureTable {
        system: rs.id(),
        num_positive: npos,
        constants,
    };
    table_cache().lock().unwrap().insert(rs.id(), table.clone());
    Ok(table)
}

/// The associated graded nilpotent algebra for a degree vector: the
/// bracket of two lowering generators survives exactly when the degrees
/// add up.
pub struct GradedLieAlgebra<'a> {
    rs: &'a RootSystem,
    table: StructureTable,
    d: DegreeVector,
}

impl<'a> GradedLieAlgebra<'a> {
    /// Checks `d` against the closure of the base cone before building.
    pub fn new(rs: &'a RootSystem, d: DegreeVector) -> Result<Self> {
        let cone = abelianisation_cone(rs);
        if !membership(&cone, &d, Mode::Closure)? {
            return Err(Error::ConeMembership(format!(
                "degree vector is not in the abelianisation cone of {}",
                rs.id()
            )));
        }
        let table = build_chevalley(rs)?;
        Ok(GradedLieAlgebra { rs, table, d })
    }

    /// Test-only constructor that substitutes a (possibly corrupted) table.
    pub fn with_table(rs: &'a RootSystem, d: DegreeVector, table: StructureTable) -> Result<Self> {
        let cone = abelianisation_cone(rs);
        if !membership(&cone, &d, Mode::Closure)? {
            return Err(Error::ConeMembership(format!(
                "degree vector is not in the abelianisation cone of {}",
                rs.id()
            )));
        }
        Ok(GradedLieAlgebra { rs, table, d })
    }

    pub fn degree(&self) -> &DegreeVector {
        &self.d
    }

    fn graded_constant(&self, i: usize, j: usize) -> Option<(i64, usize)> {
        if i == j {
            return None;
        }
        let sum = self.rs.root(i).sum(self.rs.root(j));
        let k = self.rs.index_of(&sum)?;
        let deg_sum: Rat = self.d.get(i) + self.d.get(j);
        if deg_sum != *self.d.get(k) {
            return None;
        }
        let c = self
            .table
            .lowering_constant(i, j)
            .expect("summable pair must have a constant");
        Some((c, k))
    }

    /// `[f_α, f_β]` in the graded algebra: `Some((N, α+β))` when the sum is
    /// a positive root and the degrees add exactly, `None` otherwise.
    pub fn bracket(&self, alpha: &Root, beta: &Root) -> Result<Option<(i64, Root)>> {
        let i = self.rs.index_of_required(alpha)?;
        let j = self.rs.index_of_required(beta)?;
        Ok(self
            .graded_constant(i, j)
            .map(|(c, k)| (c, self.rs.root(k).clone())))
    }

    /// Jacobi identity over all triples of positive roots.
    pub fn jacobi_check(&self) -> bool {
        let n = self.rs.num_positive_roots();
        let c = |i: usize, j: usize| -> Option<(i64, usize)> { self.graded_constant(i, j) };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut total = 0i64;
                    // [f_x, [f_y, f_z]] + [f_y, [f_z, f_x]] + [f_z, [f_x, f_y]]
                    for (a, b, cc) in [(x, y, z), (y, z, x), (z, x, y)] {
                        if let Some((n1, m)) = c(b, cc) {
                            if let Some((n2, _)) = c(a, m) {
                                total += n1 * n2;
                            }
                        }
                    }
                    if total != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Report of the graded-isomorphism check between the degree-graded
/// algebra and the image subalgebra of the stretched system.
#[derive(Debug, Clone)]
pub struct IsoReport {
    pub pattern_mismatches: Vec<(usize, usize)>,
    pub magnitude_mismatches: Vec<(usize, usize)>,
    /// Sign character `t: Φ⁺ → {±1}` with
    /// `t_α t_β N_{α,β} = t_{α+β} Ñ_{ψα,ψβ}` on surviving brackets.
    pub rescaling: Option<Vec<i8>>,
    pub surviving_pairs: usize,
}

impl IsoReport {
    pub fn pass(&self) -> bool {
        self.pattern_mismatches.is_empty()
            && self.magnitude_mismatches.is_empty()
            && self.rescaling.is_some()
    }
}

/// Checks that the graded algebra at `d` and the stretched image
/// subalgebra have identical zero/nonzero bracket patterns and equal
/// constants up to a sign character (solved over GF(2)).
///
/// Precondition: `d` lies in the relative interior of the Dynkin cone.
pub fn verify_laiso(rs: &RootSystem, cuts: &CutSet, d: &DegreeVector) -> Result<IsoReport> {
    let cone = dynkin_cone(rs, cuts)?;
    if !membership(&cone, d, Mode::Relint)? {
        return Err(Error::precondition(
            "degree vector is not in the relative interior of the Dynkin cone",
        ));
    }
    let st = Stretching::from_system(rs, cuts)?;
    let base_table = build_chevalley(rs)?;
    let str_table = build_chevalley(st.stretched())?;
    let images = st.image_set()?;
    let image_idx: Vec<usize> = images
        .iter()
        .map(|r| st.stretched().index_of_required(r))
        .collect::<Result<_>>()?;

    let n = rs.num_positive_roots();
    let mut pattern_mismatches = Vec::new();
    let mut magnitude_mismatches = Vec::new();
    // GF(2) system: one row per surviving unordered pair.
    let mut rows: Vec<(u64, bool)> = Vec::new();
    let mut surviving = 0usize;
    assert!(n <= 64, "sign solver uses u64 masks");

    for i in 0..n {
        for j in (i + 1)..n {
            let sum = rs.root(i).sum(rs.root(j));
            let base_nonzero = match rs.index_of(&sum) {
                Some(k) => self_degree_adds(d, i, j, k),
                None => false,
            };
            let str_sum = images[i].sum(&images[j]);
            let str_nonzero = st.stretched().is_positive_root(&str_sum.coords);
            if base_nonzero != str_nonzero {
                pattern_mismatches.push((i, j));
                continue;
            }
            if !base_nonzero {
                continue;
            }
            surviving += 1;
            let k = rs.index_of(&sum).unwrap();
            let n_base = base_table.lowering_constant(i, j).unwrap();
            let n_str = str_table
                .constant(signed(image_idx[i], false), signed(image_idx[j], false))
                .unwrap();
            if n_base.abs() != n_str.abs() {
                magnitude_mismatches.push((i, j));
                continue;
            }
            let rhs = (n_base < 0) != (n_str < 0);
            rows.push(((1u64 << i) | (1u64 << j) | (1u64 << k), rhs));
        }
    }

    let rescaling = solve_gf2(n, &rows).map(|bits| {
        (0..n)
            .map(|i| if bits & (1u64 << i) != 0 { -1i8 } else { 1i8 })
            .collect()
    });

    Ok(IsoReport {
        pattern_mismatches,
        magnitude_mismatches,
        rescaling,
        surviving_pairs: surviving,
    })
}

fn self_degree_adds(d: &DegreeVector, i: usize, j: usize, k: usize) -> bool {
    let s: Rat = d.get(i) + d.get(j);
    s == *d.get(k)
}

/// Solves `x · row_mask = rhs (mod 2)` for all rows; returns one solution
/// as a bitmask, or `None` if inconsistent.
fn solve_gf2(nvars: usize, rows: &[(u64, bool)]) -> Option<u64> {
    let mut system: Vec<(u64, bool)> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut used = vec![false; system.len()];
    for col in 0..nvars {
        let Some(r) = (0..system.len()).find(|&r| !used[r] && system[r].0 & (1u64 << col) != 0)
        else {
            continue;
        };
        used[r] = true;
        pivots.push((r, col));
        let (pm, pb) = system[r];
        for (rr, row) in system.iter_mut().enumerate() {
            if rr != r && row.0 & (1u64 << col) != 0 {
                row.0 ^= pm;
                row.1 ^= pb;
            }
        }
    }
    // inconsistent if a zero row has rhs 1
    if system.iter().any(|&(mask, rhs)| mask == 0 && rhs) {
        return None;
    }
    let mut x = 0u64;
    for &(r, col) in &pivots {
        if system[r].1 {
            x |= 1u64 << col;
        }
    }
    Some(x)
}

/// Convenience: the graded algebra at a relative-interior point of the
/// Dynkin cone for `cuts`.
pub fn graded_at_relint<'a>(
    rs: &'a RootSystem,
    cuts: &CutSet,
) -> Result<(GradedLieAlgebra<'a>, DegreeVector)> {
    let cone = dynkin_cone(rs, cuts)?;
    let d = relint_point(rs, &cone)?;
    Ok((GradedLieAlgebra::new(rs, d.clone())?, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{rat, Label};

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    #[test]
    fn rep_satisfies_chevalley_magnitudes() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let s = rs(f, n);
            let table = build_chevalley(&s).unwrap();
            for i in 0..s.num_positive_roots() {
                for j in 0..s.num_positive_roots() {
                    if i == j {
                        continue;
                    }
                    let sum = s.root(i).sum(s.root(j));
                    if s.index_of(&sum).is_some() {
                        let (_q, r) = s.alpha_chain(s.root(i), s.root(j)).unwrap();
                        let c = table
                            .constant(signed(i, true), signed(j, true))
                            .expect("constant must exist");
                        assert_eq!(
                            c.unsigned_abs() as usize,
                            r + 1,
                            "{f}{n}: |N| ≠ r+1 for pair {i},{j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn chain_magnitude_identity() {
        // |N_{α,β}| = q (α+β, α+β) / (β,β) over summable pairs
        for (f, n) in [(Family::B, 3), (Family::C, 3)] {
            let s = rs(f, n);
            let table = build_chevalley(&s).unwrap();
            for i in 0..s.num_positive_roots() {
                for j in 0..s.num_positive_roots() {
                    if i == j {
                        continue;
                    }
                    let sum = s.root(i).sum(s.root(j));
                    if let Some(k) = s.index_of(&sum) {
                        let (q, _r) = s.alpha_chain(s.root(i), s.root(j)).unwrap();
                        let c = table.constant(signed(i, true), signed(j, true)).unwrap();
                        let expected = q as i64 * s.length_sq(s.root(k)) / s.length_sq(s.root(j));
                        assert_eq!(c.abs(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_magnitudes_exhaustive_rank5() {
        // |N| = r+1 over every summable pair, all families at the suite
        // rank ceiling (type D one higher).
        for (f, n) in [
            (Family::A, 5),
            (Family::B, 5),
            (Family::C, 5),
            (Family::D, 6),
        ] {
            let s = rs(f, n);
            let table = build_chevalley(&s).unwrap();
            for i in 0..s.num_positive_roots() {
                for j in 0..s.num_positive_roots() {
                    if i == j {
                        continue;
                    }
                    let sum = s.root(i).sum(s.root(j));
                    if s.index_of(&sum).is_some() {
                        let (_q, r) = s.alpha_chain(s.root(i), s.root(j)).unwrap();
                        let c = table.constant(signed(i, true), signed(j, true)).unwrap();
                        assert_eq!(c.unsigned_abs() as usize, r + 1, "{f}{n} pair {i},{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_pattern_stable_on_cone_interior() {
        // two interior points of the same cut cone give identical
        // zero/nonzero bracket patterns
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::D, 4)] {
            let s = rs(f, n);
            for cuts in CutSet::all(&s) {
                let cone = dynkin_cone(&s, &cuts).unwrap();
                let r1 = relint_point(&s, &cone).unwrap();
                let h = DegreeVector::height_point(&s);
                let r2 = DegreeVector::new(
                    r1.values
                        .iter()
                        .zip(&h.values)
                        .map(|(a, b)| (a + b) / rat(2))
                        .collect(),
                );
                assert!(membership(&cone, &r2, Mode::Relint).unwrap());
                let g1 = GradedLieAlgebra::new(&s, r1).unwrap();
                let g2 = GradedLieAlgebra::new(&s, r2).unwrap();
                for a in s.positive_roots() {
                    for b in s.positive_roots() {
                        if a != b {
                            assert_eq!(
                                g1.bracket(a, b).unwrap().is_some(),
                                g2.bracket(a, b).unwrap().is_some(),
                                "{f}{n} cuts {cuts}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn antisymmetry() {
        let s = rs(Family::B, 2);
        let t = build_chevalley(&s).unwrap();
        for i in 0..s.num_positive_roots() {
            for j in 0..s.num_positive_roots() {
                if let Some(c) = t.constant(signed(i, true), signed(j, true)) {
                    assert_eq!(t.constant(signed(j, true), signed(i, true)), Some(-c));
                }
                if let Some(c) = t.lowering_constant(i, j) {
                    // N_{−α,−β} = −N_{α,β}
                    assert_eq!(t.constant(signed(i, true), signed(j, true)), Some(-c));
                }
            }
        }
    }

    #[test]
    fn expected_small_magnitudes() {
        let a2 = rs(Family::A, 2);
        let t = build_chevalley(&a2).unwrap();
        assert_eq!(
            t.constant(signed(0, true), signed(2, true)).unwrap().abs(),
            1
        );

        // B2: |N_{α2, ε1}| = 2
        let b2 = rs(Family::B, 2);
        let t = build_chevalley(&b2).unwrap();
        let i_a2 = b2.index_of_label(Label::Straight(2, 2)).unwrap();
        let i_e1 = b2.index_of_label(Label::Straight(1, 2)).unwrap();
        assert_eq!(
            t.constant(signed(i_a2, true), signed(i_e1, true))
                .unwrap()
                .abs(),
            2
        );

        // C2: |N_{α1, 2ε2}| = 1, with chain q = 2 through ε1+ε2 to 2ε1
        let c2 = rs(Family::C, 2);
        let t = build_chevalley(&c2).unwrap();
        let i_a1 = c2.index_of_label(Label::Straight(1, 1)).unwrap();
        let i_l2 = c2.index_of_label(Label::Straight(2, 2)).unwrap();
        assert_eq!(c2.root(i_l2).coords, vec![0, 2]);
        let (q, _) = c2.alpha_chain(c2.root(i_a1), c2.root(i_l2)).unwrap();
        assert_eq!(q, 2);
        assert_eq!(
            t.constant(signed(i_a1, true), signed(i_l2, true))
                .unwrap()
                .abs(),
            1
        );
    }

    #[test]
    fn graded_bracket_at_height_point() {
        let s = rs(Family::A, 2);
        let g = GradedLieAlgebra::new(&s, DegreeVector::height_point(&s)).unwrap();
        let a1 = s.simple_root(1).clone();
        let a2 = s.simple_root(2).clone();
        let out = g.bracket(&a1, &a2).unwrap().expect("bracket survives");
        assert_eq!(out.0.abs(), 1);
        assert_eq!(out.1.coords, a1.sum(&a2).coords);
    }

    #[test]
    fn graded_bracket_dies_on_strict_point() {
        let s = rs(Family::A, 2);
        let g = GradedLieAlgebra::new(&s, DegreeVector::from_i64(vec![1, 1, 1])).unwrap();
        let a1 = s.simple_root(1).clone();
        let a2 = s.simple_root(2).clone();
        assert!(g.bracket(&a1, &a2).unwrap().is_none());
    }

    #[test]
    fn graded_bracket_rejects_outside_cone() {
        let s = rs(Family::A, 2);
        // degree vector violating the single inequality
        let d = DegreeVector::from_i64(vec![1, 3, 1]);
        assert!(matches!(
            GradedLieAlgebra::new(&s, d),
            Err(Error::ConeMembership(_))
        ));
    }

    #[test]
    fn strictly_superadditive_is_abelian() {
        let s = rs(Family::B, 2);
        // all degrees 1: every sum strictly exceeds the target
        let g = GradedLieAlgebra::new(&s, DegreeVector::from_i64(vec![1, 1, 1, 1])).unwrap();
        for a in s.positive_roots() {
            for b in s.positive_roots() {
                if a != b {
                    assert!(g.bracket(a, b).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn jacobi_small() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 2),
            (Family::D, 4),
        ] {
            let s = rs(f, n);
            let g = GradedLieAlgebra::new(&s, DegreeVector::height_point(&s)).unwrap();
            assert!(g.jacobi_check(), "{f}{n} jacobi at height point");
        }
    }

    #[test]
    fn jacobi_detects_corruption() {
        // A3 has the triple (α1, α2, α3) with root sum, which ties the
        // signs of distinct pairs together; flipping one breaks Jacobi.
        let s = rs(Family::A, 3);
        let table = build_chevalley(&s).unwrap();
        let i_a1 = s.index_of_label(Label::Straight(1, 1)).unwrap();
        let i_a2 = s.index_of_label(Label::Straight(2, 2)).unwrap();
        let bad = table.with_sign_flipped(i_a1, i_a2);
        let g = GradedLieAlgebra::with_table(&s, DegreeVector::height_point(&s), bad).unwrap();
        assert!(!g.jacobi_check());
    }

    #[test]
    fn laiso_a2() {
        let s = rs(Family::A, 2);
        let cuts = CutSet::new(&s, vec![1]).unwrap();
        // (1,1,1): every bracket dies on both sides
        let d = DegreeVector::from_i64(vec![1, 1, 1]);
        let rep = verify_laiso(&s, &cuts, &d).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.surviving_pairs, 0);

        // empty cuts with the height point: identity-like correspondence
        let cuts0 = CutSet::empty();
        let cone = dynkin_cone(&s, &cuts0).unwrap();
        let d0 = relint_point(&s, &cone).unwrap();
        let rep0 = verify_laiso(&s, &cuts0, &d0).unwrap();
        assert!(rep0.pass());
        assert_eq!(rep0.surviving_pairs, 1);
    }

    #[test]
    fn laiso_rejects_non_relint_point() {
        let s = rs(Family::A, 2);
        let cuts = CutSet::new(&s, vec![1]).unwrap();
        let h = DegreeVector::height_point(&s); // tight, not interior
        assert!(matches!(
            verify_laiso(&s, &cuts, &h),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn laiso_b3_with_cut() {
        let s = rs(Family::B, 3);
        let cuts = CutSet::new(&s, vec![1]).unwrap();
        let cone = dynkin_cone(&s, &cuts).unwrap();
        let d = relint_point(&s, &cone).unwrap();
        let rep = verify_laiso(&s, &cuts, &d).unwrap();
        assert!(rep.pass(), "{rep:?}");
    }

    #[test]
    fn weights_of_vector_rep_match_operators() {
        // e_β maps the μ weight space into the μ+β weight space
        for (f, n) in [
            (Family::A, 2),
            (Family::B, 2),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let s = rs(f, n);
            let rep = vector_rep(&s);
            for (ri, root) in s.positive_roots().iter().enumerate() {
                for col in 0..rep.dim {
                    for row in 0..rep.dim {
                        if rep.e[ri][row][col] != 0 {
                            let expect: Vec<i64> = rep.basis_weight[col]
                                .iter()
                                .zip(&root.coords)
                                .map(|(w, b)| w + b)
                                .collect();
                            assert_eq!(rep.basis_weight[row], expect, "{f}{n} e_{ri}");
                        }
                        if rep.f[ri][row][col] != 0 {
                            let expect: Vec<i64> = rep.basis_weight[col]
                                .iter()
                                .zip(&root.coords)
                                .map(|(w, b)| w - b)
                                .collect();
                            assert_eq!(rep.basis_weight[row], expect, "{f}{n} f_{ri}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h_operators_act_by_pairing() {
        for (f, n) in [(Family::B, 3), (Family::C, 2), (Family::D, 4)] {
            let s = rs(f, n);
            let rep = vector_rep(&s);
            for k in 1..=n {
                for col in 0..rep.dim {
                    let wq: Vec<Rat> = rep.basis_weight[col].iter().map(|&c| rat(c)).collect();
                    let expect = s.pairing(&wq, s.simple_root(k));
                    for row in 0..rep.dim {
                        let v = rep.h[k - 1][row][col];
                        if row == col {
                            assert_eq!(rat(v), expect);
                        } else {
                            assert_eq!(v, 0);
                        }
                    }
                }
            }
        }
    }
}
