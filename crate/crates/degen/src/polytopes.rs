//! Chain polytopes on the positive-root grid for types A and C: the root
//! poset, join/meet on two-index labels, triangularity of Weyl elements,
//! and exact lattice-point counting of the marked polytope.

use std::collections::HashMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::rootsys::{Family, Label, Root, RootSystem};
use crate::weyl::{inversion_set, WeylElement};

/// The partial order on positive roots generated by `α ≻ β` whenever
/// `α − β` is a positive root.
#[derive(Debug, Clone)]
pub struct RootPoset {
    n: usize,
    /// `ge[i][j]` is true iff root i ≽ root j in the generated order.
    ge: Vec<Vec<bool>>,
}

impl RootPoset {
    pub fn new(rs: &RootSystem) -> Result<RootPoset> {
        let n = rs.num_positive_roots();
        let mut ge = vec![vec![false; n]; n];
        for (i, gi) in ge.iter_mut().enumerate() {
            gi[i] = true;
            for (j, g) in gi.iter_mut().enumerate() {
                if i != j {
                    let diff: Vec<i64> = rs
                        .root(i)
                        .coords
                        .iter()
                        .zip(&rs.root(j).coords)
                        .map(|(a, b)| a - b)
                        .collect();
                    if rs.is_positive_root(&diff) {
                        *g = true;
                    }
                }
            }
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                if ge[i][k] {
                    for j in 0..n {
                        if ge[k][j] {
                            ge[i][j] = true;
                        }
                    }
                }
            }
        }
        // antisymmetry (heights strictly decrease along the raw relation,
        // so cycles are impossible; check anyway)
        for i in 0..n {
            for j in 0..n {
                if i != j && ge[i][j] && ge[j][i] {
                    return Err(Error::invariant("root order is not antisymmetric"));
                }
            }
        }
        Ok(RootPoset { n, ge })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ge(&self, i: usize, j: usize) -> bool {
        self.ge[i][j]
    }

    /// Whether the raw relation `α − β ∈ Φ⁺` is itself transitive (it is
    /// not in general; the generated order is used instead).
    pub fn literal_relation_transitive(rs: &RootSystem) -> bool {
        let n = rs.num_positive_roots();
        let rel = |i: usize, j: usize| -> bool {
            let diff: Vec<i64> = rs
                .root(i)
                .coords
                .iter()
                .zip(&rs.root(j).coords)
                .map(|(a, b)| a - b)
                .collect();
            rs.is_positive_root(&diff)
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rel(i, j) && rel(j, k) && !rel(i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn straight_label(rs: &RootSystem, root: &Root) -> Result<(usize, usize)> {
    let idx = rs.index_of_required(root)?;
    match rs.label(idx) {
        Label::Straight(i, j) => Ok((i, j)),
        Label::Barred(..) => Err(Error::domain("expected a straight label")),
    }
}

/// Join and meet of two type-A roots: the join is `(min i, max j)`; the
/// meet is `(max i, min j)` when the supports intersect, absent otherwise.
pub fn join_meet(rs: &RootSystem, a: &Root, b: &Root) -> Result<(Root, Option<Root>)> {
    if rs.family() != Family::A {
        return Err(Error::domain("join/meet is defined on type A labels"));
    }
    let (i1, j1) = straight_label(rs, a)?;
    let (i2, j2) = straight_label(rs, b)?;
    let join = rs
        .root(
            rs.index_of_label(Label::Straight(i1.min(i2), j1.max(j2)))
                .expect("join label exists"),
        )
        .clone();
    let meet = if i1.max(i2) <= j1.min(j2) {
        Some(
            rs.root(
                rs.index_of_label(Label::Straight(i1.max(i2), j1.min(j2)))
                    .expect("meet label exists"),
            )
            .clone(),
        )
    } else {
        None
    };
    Ok((join, meet))
}

fn interval_set_triangular(intervals: &[(usize, usize)]) -> bool {
    let have: std::collections::HashSet<(usize, usize)> = intervals.iter().copied().collect();
    for &(i1, j1) in intervals {
        for &(i2, j2) in intervals {
            let union_consecutive = i1.max(i2) <= j1.min(j2) + 1;
            if union_consecutive && !have.contains(&(i1.min(i2), j1.max(j2))) {
                return false;
            }
            let meet_exists = i1.max(i2) <= j1.min(j2);
            if meet_exists && !have.contains(&(i1.max(i2), j1.min(j2))) {
                return false;
            }
        }
    }
    true
}

/// Embeds a type-C signed permutation into the symmetric group on `2m`
/// letters (generator i goes to the product of the transpositions i and
/// 2m−i; the last generator goes to the middle transposition).
pub fn embed_c_into_a(rs_c: &RootSystem, w: &WeylElement) -> Result<(RootSystem, WeylElement)> {
    if rs_c.family() != Family::C {
        return Err(Error::domain("embedding takes a type C element"));
    }
    let m = rs_c.rank();
    let rs_a = RootSystem::new(Family::A, 2 * m - 1)?;
    // positions: k ↔ ε_k for k ≤ m, and 2m+1−k ↔ −ε_k
    let phi = |signed: i64| -> usize {
        if signed > 0 {
            signed as usize
        } else {
            2 * m + 1 - signed.unsigned_abs() as usize
        }
    };
    let images: Vec<i64> = (1..=2 * m)
        .map(|pos| {
            let (k, sign) = if pos <= m {
                (pos, 1i64)
            } else {
                (2 * m + 1 - pos, -1i64)
            };
            phi(sign * w.image_of(k)) as i64
        })
        .collect();
    let w_a = WeylElement::from_images(&rs_a, images)?;
    Ok((rs_a, w_a))
}

/// Whether the inversion set of `w` is closed under join (when the support
/// union is consecutive) and meet (when it exists). Type C elements are
/// tested through their embedding into the type-A Coxeter group.
pub fn is_triangular(rs: &RootSystem, w: &WeylElement) -> Result<bool> {
    match rs.family() {
        Family::A => {
            let intervals: Vec<(usize, usize)> = inversion_set(rs, w)
                .iter()
                .map(|r| straight_label(rs, r))
                .collect::<Result<_>>()?;
            Ok(interval_set_triangular(&intervals))
        }
        Family::C => {
            let (rs_a, w_a) = embed_c_into_a(rs, w)?;
            is_triangular(&rs_a, &w_a)
        }
        _ => Err(Error::domain(
            "triangularity is defined for types A and C only",
        )),
    }
}

/// The chain-polytope inequality system: each inequality bounds the sum of
/// the variables along one grid path by a prefix sum of the marking.
#[derive(Debug, Clone)]
pub struct MarkedPolytope {
    pub num_vars: usize,
    /// (root indices along the path, bound)
    pub inequalities: Vec<(Vec<usize>, i64)>,
}

impl MarkedPolytope {
    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        let ineqs: Vec<serde_json::Value> = self
            .inequalities
            .iter()
            .map(|(vars, b)| {
                json!({
                    "chain": vars.iter().map(|&v| rs.label(v).to_string()).collect::<Vec<_>>(),
                    "bound": b,
                })
            })
            .collect();
        json!({"vars": self.num_vars, "inequalities": ineqs})
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Col {
    S(usize),
    B(usize),
}

/// Builds the path inequality system for a dominant weight.
pub fn marked_polytope(rs: &RootSystem, lambda: &[i64]) -> Result<MarkedPolytope> {
    if !matches!(rs.family(), Family::A | Family::C) {
        return Err(Error::domain(
            "chain polytopes are built for types A and C only",
        ));
    }
    if lambda.len() != rs.rank() || lambda.iter().any(|&c| c < 0) {
        return Err(Error::domain("marking must be a dominant weight"));
    }
    let n = rs.rank();
    let prefix: Vec<i64> = {
        let mut acc = 0;
        let mut v = vec![0i64];
        for &c in lambda {
            acc += c;
            v.push(acc);
        }
        v // prefix[j] = λ_1 + … + λ_j
    };
    let seg = |i: usize, j: usize| -> i64 { prefix[j] - prefix[i - 1] };

    let var_of = |p: usize, col: Col| -> usize {
        let label = match col {
            Col::S(q) => Label::Straight(p, q),
            Col::B(q) => Label::Barred(p, q),
        };
        rs.index_of_label(label).expect("grid label exists")
    };

    let mut best: HashMap<Vec<usize>, i64> = HashMap::new();
    let mut emit = |vars: &[usize], bound: i64| {
        let mut key = vars.to_vec();
        key.sort_unstable();
        let e = best.entry(key).or_insert(bound);
        if bound < *e {
            *e = bound;
        }
    };

    // Depth-first walk over the grid from each diagonal start.
    struct Walk<'a> {
        rs: &'a RootSystem,
        n: usize,
        start: usize,
    }
    fn walk(
        ctx: &Walk,
        p: usize,
        col: Col,
        path: &mut Vec<usize>,
        var_of: &dyn Fn(usize, Col) -> usize,
        seg: &dyn Fn(usize, usize) -> i64,
        emit: &mut dyn FnMut(&[usize], i64),
    ) {
        let n = ctx.n;
        path.push(var_of(p, col));
        match col {
            Col::S(q) => {
                if p == q {
                    // straight diagonal endpoint
                    let bound = if ctx.rs.family() == Family::C && q == n {
                        seg(ctx.start, n)
                    } else {
                        seg(ctx.start, q)
                    };
                    emit(path, bound);
                }
            }
            Col::B(q) => {
                if p == q {
                    // doubled-root row end (type C)
                    emit(path, seg(ctx.start, n));
                }
            }
        }
        // right step
        match col {
            Col::S(q) => {
                if q < n {
                    walk(ctx, p, Col::S(q + 1), path, var_of, seg, emit);
                } else if ctx.rs.family() == Family::C && p <= n - 1 {
                    walk(ctx, p, Col::B(n - 1), path, var_of, seg, emit);
                }
            }
            Col::B(q) => {
                if q > p {
                    walk(ctx, p, Col::B(q - 1), path, var_of, seg, emit);
                }
            }
        }
        // down step
        match col {
            Col::S(q) => {
                if p + 1 <= q {
                    walk(ctx, p + 1, Col::S(q), path, var_of, seg, emit);
                }
            }
            Col::B(q) => {
                if p + 1 <= q {
                    walk(ctx, p + 1, Col::B(q), path, var_of, seg, emit);
                }
            }
        }
        path.pop();
    }

    for start in 1..=n {
        let ctx = Walk { rs, n, start };
        let mut path = Vec::new();
        walk(
            &ctx,
            start,
            Col::S(start),
            &mut path,
            &var_of,
            &seg,
            &mut emit,
        );
    }

    // Drop dominated inequalities: a strict superset of the support with a
    // bound at most as big makes an inequality redundant.
    let raw: Vec<(Vec<usize>, i64)> = best.into_iter().collect();
    let mut keep = vec![true; raw.len()];
    for (a, (va, ba)) in raw.iter().enumerate() {
        let dominated = raw.iter().enumerate().any(|(b, (vb, bb))| {
            a != b
                && bb <= ba
                && va.len() < vb.len()
                && va.iter().all(|x| vb.binary_search(x).is_ok())
        });
        if dominated {
            keep[a] = false;
        }
    }
    let mut inequalities: Vec<(Vec<usize>, i64)> = raw
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .collect();
    inequalities.sort();
    Ok(MarkedPolytope {
        num_vars: rs.num_positive_roots(),
        inequalities,
    })
}

/// Exact number of integer points of the marked polytope.
pub fn lattice_point_count(rs: &RootSystem, lambda: &[i64]) -> Result<u64> {
    let poly = marked_polytope(rs, lambda)?;
    let nvars = poly.num_vars;
    let mut cons_of: Vec<Vec<u32>> = vec![Vec::new(); nvars];
    for (ci, (vars, _)) in poly.inequalities.iter().enumerate() {
        for &v in vars {
            cons_of[v].push(ci as u32);
        }
    }
    for (v, list) in cons_of.iter().enumerate() {
        if list.is_empty() {
            return Err(Error::invariant(format!(
                "variable {v} is unconstrained; the count would diverge"
            )));
        }
    }
    let mut rem: Vec<i64> = poly.inequalities.iter().map(|(_, b)| *b).collect();

    fn go(v: usize, nvars: usize, cons_of: &[Vec<u32>], rem: &mut [i64]) -> u64 {
        if v == nvars {
            return 1;
        }
        let ub = cons_of[v]
            .iter()
            .map(|&c| rem[c as usize])
            .min()
            .expect("every variable is constrained");
        let mut total = go(v + 1, nvars, cons_of, rem);
        for used in 1..=ub {
            for &c in &cons_of[v] {
                rem[c as usize] -= 1;
            }
            total += go(v + 1, nvars, cons_of, rem);
            let _ = used;
        }
        for &c in &cons_of[v] {
            rem[c as usize] += ub;
        }
        total
    }

    Ok(go(0, nvars, &cons_of, &mut rem))
}
