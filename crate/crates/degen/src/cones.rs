//! Degree-vector cones: the cone of partial abelianisations and its
//! Dynkin subcones.
//!
//! A degree vector assigns an exact rational to every positive root. The
//! base cone is cut out by one inequality `d_{β1} + d_{β2} ≥ d_{β1+β2}` per
//! unordered summable pair. A Dynkin cone for a set of cut positions keeps
//! exactly the inequalities that factor through a cut as inequalities,
//! forces every other base inequality to an equality, and adds the
//! differential-operator equalities of the family.
//!
//! Membership in the relative interior is decided with exact rational LP:
//! an inequality counts as strict-able unless its maximum slack over the
//! cone is zero.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use num_traits::{Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::ratlp::{Lp, LpOutcome, Rel};
use crate::rootsys::{rat, Family, Label, Rat, Root, RootSystem, RootSystemId};

/// An exact-rational assignment `d: Φ⁺ → ℚ`, indexed like
/// `RootSystem::positive_roots`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    pub values: Vec<Rat>,
}

impl DegreeVector {
    pub fn new(values: Vec<Rat>) -> Self {
        DegreeVector { values }
    }

    pub fn from_i64(values: Vec<i64>) -> Self {
        DegreeVector {
            values: values.into_iter().map(rat).collect(),
        }
    }

    /// The height point `h_β = ht(β)`.
    pub fn height_point(rs: &RootSystem) -> Self {
        DegreeVector {
            values: (0..rs.num_positive_roots())
                .map(|i| rat(rs.height(i)))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Rat {
        &self.values[idx]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Eq,
}

/// Origin of a constraint inside a cone description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    /// Base inequality of the abelianisation cone.
    Base,
    /// Partial-abelianisation inequality kept strict-able by a cut.
    Pa,
    /// Differential-operator equality.
    Do,
    /// Base inequality forced to an equality.
    OtherEq,
}

impl Tag {
    fn as_str(self) -> &'static str {
        match self {
            Tag::Base => "base",
            Tag::Pa => "PA",
            Tag::Do => "DO",
            Tag::OtherEq => "other-equality",
        }
    }
}

/// One linear constraint `Σ coeff_β · d_β  REL  0` over the positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse coefficients: (positive-root index, coefficient).
    pub coeffs: Vec<(usize, Rat)>,
    pub relation: Relation,
    pub tag: Tag,
}

impl Constraint {
    pub fn eval(&self, d: &DegreeVector) -> Rat {
        self.coeffs
            .iter()
            .fold(Rat::zero(), |acc, (i, c)| acc + c * &d.values[*i])
    }

    fn canonical(&self) -> Vec<(usize, Rat)> {
        let mut v = self.coeffs.clone();
        v.sort_by_key(|(i, _)| *i);
        if self.relation == Relation::Eq {
            if let Some((_, first)) = v.first() {
                if first.is_negative() {
                    for (_, c) in v.iter_mut() {
                        *c = -c.clone();
                    }
                }
            }
        }
        v
    }
}

/// A finite list of linear constraints over `Φ⁺` of a fixed system.
#[derive(Debug, Clone)]
pub struct ConeSpec {
    pub system: RootSystemId,
    pub num_roots: usize,
    pub constraints: Vec<Constraint>,
}

/// Strictly increasing set of cut positions on the Dynkin diagram.
///
/// Valid positions are `1..=n−1` in types A/B/C and `1..=n−3` in type D.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutSet {
    positions: Vec<usize>,
}

impl CutSet {
    pub fn new(rs: &RootSystem, positions: Vec<usize>) -> Result<CutSet> {
        let bound = rs.cut_bound();
        let mut sorted = positions;
        sorted.sort_unstable();
        sorted.dedup();
        for &p in &sorted {
            if p < 1 || p > bound {
                return Err(Error::domain(format!(
                    "cut position {p} out of range 1..={bound} for {}",
                    rs.id()
                )));
            }
        }
        Ok(CutSet { positions: sorted })
    }

    pub fn empty() -> CutSet {
        CutSet {
            positions: Vec::new(),
        }
    }

    /// Unvalidated constructor for contexts without a root system at hand.
    pub fn from_sorted(positions: Vec<usize>) -> CutSet {
        CutSet { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.positions.binary_search(&p).is_ok()
    }

    /// Every cut set of the given system, in a deterministic order.
    pub fn all(rs: &RootSystem) -> Vec<CutSet> {
        let bound = rs.cut_bound();
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << bound) {
            let positions: Vec<usize> =
                (1..=bound).filter(|p| mask & (1 << (p - 1)) != 0).collect();
            out.push(CutSet { positions });
        }
        out
    }
}

impl std::fmt::Display for CutSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.positions.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// All unordered pairs of positive roots whose sum is again a positive
/// root, together with the index of the sum.
pub fn summable_pairs(rs: &RootSystem) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let n = rs.num_positive_roots();
    for i in 0..n {
        for j in (i + 1)..n {
            let s = rs.root(i).sum(rs.root(j));
            if let Some(k) = rs.index_of(&s) {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// The cone of partial abelianisations: one `≥` constraint per unordered
/// summable pair, no duplicates.
pub fn abelianisation_cone(rs: &RootSystem) -> ConeSpec {
    let constraints = summable_pairs(rs)
        .into_iter()
        .map(|(i, j, k)| Constraint {
            coeffs: vec![(i, rat(1)), (j, rat(1)), (k, rat(-1))],
            relation: Relation::Ge,
            tag: Tag::Base,
        })
        .collect();
    ConeSpec {
        system: rs.id(),
        num_roots: rs.num_positive_roots(),
        constraints,
    }
}

/// Whether the base pair `{β1, β2}` factors through the cut `j`: one root
/// is `ε_a − ε_{j+1}` (straight label `(a,j)`) and the other contains
/// `+ε_{j+1}`.
fn pair_is_pa(rs: &RootSystem, i1: usize, i2: usize, j: usize) -> bool {
    let through = |a: usize, b: usize| -> bool {
        matches!(rs.label(a), Label::Straight(_, top) if top == j) && {
            let ra = rs.root(a);
            match ra.coords.iter().position(|&c| c < 0) {
                Some(pos) => pos == j && rs.root(b).coords[pos] > 0,
                None => false,
            }
        }
    };
    through(i1, i2) || through(i2, i1)
}

fn add_do_equality(
    rs: &RootSystem,
    plus: [(usize, usize, bool); 2],
    minus: [(usize, usize, bool); 2],
    out: &mut Vec<Constraint>,
) {
    // Each entry is (i, j, barred). Skip the instance if a label is invalid.
    let lookup = |&(i, j, barred): &(usize, usize, bool)| -> Option<usize> {
        let label = if barred {
            Label::Barred(i, j)
        } else {
            Label::Straight(i, j)
        };
        rs.index_of_label(label)
    };
    let mut coeffs: HashMap<usize, Rat> = HashMap::new();
    for t in &plus {
        match lookup(t) {
            Some(idx) => *coeffs.entry(idx).or_insert_with(Rat::zero) += rat(1),
            None => return,
        }
    }
    for t in &minus {
        match lookup(t) {
            Some(idx) => *coeffs.entry(idx).or_insert_with(Rat::zero) += rat(-1),
            None => return,
        }
    }
    let coeffs: Vec<(usize, Rat)> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    if coeffs.is_empty() {
        return;
    }
    out.push(Constraint {
        coeffs,
        relation: Relation::Eq,
        tag: Tag::Do,
    });
}

/// Differential-operator equalities of the family (before deduplication).
fn do_equalities(rs: &RootSystem) -> Vec<Constraint> {
    let n = rs.rank();
    let mut out = Vec::new();
    let f = rs.family();

    // Straight four-index exchange, common to all families.
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in j..=n {
                for l in (k + 1)..=n {
                    add_do_equality(
                        rs,
                        [(i, k, false), (j, l, false)],
                        [(i, l, false), (j, k, false)],
                        &mut out,
                    );
                }
            }
        }
    }

    if matches!(f, Family::B | Family::C | Family::D) {
        // Mixed barred/straight exchange.
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in j..=n {
                    for l in j..=n {
                        add_do_equality(
                            rs,
                            [(i, k, true), (j, l, false)],
                            [(i, l, false), (j, k, true)],
                            &mut out,
                        );
                    }
                }
            }
        }
        // Fully barred exchange; the top index range depends on the family.
        let top = match f {
            Family::B => n,
            Family::C => n - 1,
            Family::D => n - 2,
            Family::A => unreachable!(),
        };
        for i in 1..=top {
            for j in (i + 1)..=top {
                for k in (j + 1)..=top {
                    for l in (k + 1)..=top {
                        add_do_equality(
                            rs,
                            [(i, j, true), (k, l, true)],
                            [(i, k, true), (j, l, true)],
                            &mut out,
                        );
                        add_do_equality(
                            rs,
                            [(i, k, true), (j, l, true)],
                            [(i, l, true), (j, k, true)],
                            &mut out,
                        );
                    }
                }
            }
        }
    }
    out
}

/// The Dynkin cone for a cut set: base inequalities factoring through a cut
/// stay `≥`, every other base inequality becomes an equality, and the
/// differential-operator equalities are appended.
pub fn dynkin_cone(rs: &RootSystem, cuts: &CutSet) -> Result<ConeSpec> {
    for &p in cuts.positions() {
        if p < 1 || p > rs.cut_bound() {
            return Err(Error::domain(format!(
                "cut position {p} out of range 1..={} for {}",
                rs.cut_bound(),
                rs.id()
            )));
        }
    }

    let mut constraints: Vec<Constraint> = summable_pairs(rs)
        .into_iter()
        .map(|(i, j, k)| {
            let is_pa = cuts.positions().iter().any(|&c| pair_is_pa(rs, i, j, c));
            Constraint {
                coeffs: vec![(i, rat(1)), (j, rat(1)), (k, rat(-1))],
                relation: if is_pa { Relation::Ge } else { Relation::Eq },
                tag: if is_pa { Tag::Pa } else { Tag::OtherEq },
            }
        })
        .collect();

    let mut seen: HashSet<Vec<(usize, String)>> = constraints
        .iter()
        .map(|c| {
            c.canonical()
                .into_iter()
                .map(|(i, r)| (i, r.to_string()))
                .collect()
        })
        .collect();
    for c in do_equalities(rs) {
        let key: Vec<(usize, String)> = c
            .canonical()
            .into_iter()
            .map(|(i, r)| (i, r.to_string()))
            .collect();
        if seen.insert(key) {
            constraints.push(c);
        }
    }

    Ok(ConeSpec {
        system: rs.id(),
        num_roots: rs.num_positive_roots(),
        constraints,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Closure,
    Relint,
}

fn check_dims(cone: &ConeSpec, d: &DegreeVector) -> Result<()> {
    if cone.num_roots != d.len() {
        return Err(Error::domain(format!(
            "degree vector has {} entries, cone is over {} roots",
            d.len(),
            cone.num_roots
        )));
    }
    Ok(())
}

/// Exact membership test. In `Relint` mode every equality must hold
/// exactly and every non-implied inequality must be strictly positive.
pub fn membership(cone: &ConeSpec, d: &DegreeVector, mode: Mode) -> Result<bool> {
    check_dims(cone, d)?;
    for c in &cone.constraints {
        let v = c.eval(d);
        match c.relation {
            Relation::Eq => {
                if !v.is_zero() {
                    return Ok(false);
                }
            }
            Relation::Ge => {
                if v.is_negative() {
                    return Ok(false);
                }
            }
        }
    }
    if mode == Mode::Closure {
        return Ok(true);
    }
    let implied = implied_equalities(cone)?;
    for (c, must_vanish) in cone.constraints.iter().zip(&implied) {
        if c.relation == Relation::Ge && !must_vanish && !c.eval(d).is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cone_fingerprint(cone: &ConeSpec) -> String {
    let mut s = String::new();
    write!(s, "{}|{}|", cone.system, cone.num_roots).unwrap();
    let mut keys: Vec<String> = cone
        .constraints
        .iter()
        .map(|c| {
            let mut k = String::new();
            for (i, r) in c.canonical() {
                write!(k, "{i}:{r},").unwrap();
            }
            write!(k, "{:?}", c.relation).unwrap();
            k
        })
        .collect();
    keys.sort();
    s.push_str(&keys.join(";"));
    s
}

struct ConeCacheEntry {
    implied: Vec<bool>,
    relint: Option<DegreeVector>,
}

fn cone_cache() -> &'static Mutex<HashMap<String, ConeCacheEntry>> {
    static CACHE: OnceLock<Mutex<HashMap<String, ConeCacheEntry>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// For every constraint: must it vanish on the whole cone? (Always true
/// for equalities; true for an inequality iff its max slack over the cone
/// is zero.) Results are cached per cone.
pub fn implied_equalities(cone: &ConeSpec) -> Result<Vec<bool>> {
    let key = cone_fingerprint(cone);
    if let Some(entry) = cone_cache().lock().unwrap().get(&key) {
        return Ok(entry.implied.clone());
    }
    let implied = compute_implied(cone)?;
    cone_cache().lock().unwrap().insert(
        key,
        ConeCacheEntry {
            implied: implied.clone(),
            relint: None,
        },
    );
    Ok(implied)
}

/// Indices of a maximal linearly independent subset of the equality rows.
/// Dependent equalities are implied by the independent ones and can be
/// dropped from LP formulations (membership checks still test all rows).
fn independent_equalities(cone: &ConeSpec) -> Vec<usize> {
    let m = cone.num_roots;
    let mut basis: Vec<Vec<Rat>> = Vec::new(); // rows in echelon form
    let mut leads: Vec<usize> = Vec::new();
    let mut keep = Vec::new();
    for (ci, c) in cone.constraints.iter().enumerate() {
        if c.relation != Relation::Eq {
            continue;
        }
        let mut row = vec![Rat::zero(); m];
        for (i, v) in &c.coeffs {
            row[*i] = v.clone();
        }
        // reduce against the echelon basis
        for (b, &lead) in basis.iter().zip(&leads) {
            if !row[lead].is_zero() {
                let f = row[lead].clone();
                for (r, bb) in row.iter_mut().zip(b) {
                    *r = &*r - &f * bb;
                }
            }
        }
        if let Some(lead) = row.iter().position(|v| !v.is_zero()) {
            let inv = row[lead].clone();
            for r in row.iter_mut() {
                *r = &*r / &inv;
            }
            basis.push(row);
            leads.push(lead);
            keep.push(ci);
        }
    }
    keep
}

/// Builds the row of a constraint over variables `u = d + 1` (so the box
/// `−1 ≤ d ≤ 1` becomes `0 ≤ u ≤ 2`); returns the row and the shift `a·𝟙`.
fn shifted_row(cone: &ConeSpec, c: &Constraint, extra: usize) -> (Vec<Rat>, Rat) {
    let m = cone.num_roots;
    let mut a = vec![Rat::zero(); m + extra];
    let mut shift = Rat::zero();
    for (i, v) in &c.coeffs {
        a[*i] = v.clone();
        shift += v;
    }
    (a, shift)
}

fn compute_implied(cone: &ConeSpec) -> Result<Vec<bool>> {
    let m = cone.num_roots;
    let ge_rows: Vec<usize> = cone
        .constraints
        .iter()
        .enumerate()
        .filter(|(_, c)| c.relation == Relation::Ge)
        .map(|(i, _)| i)
        .collect();
    let mut implied: Vec<bool> = cone
        .constraints
        .iter()
        .map(|c| c.relation == Relation::Eq)
        .collect();
    if ge_rows.is_empty() {
        return Ok(implied);
    }

    let eq_keep = independent_equalities(cone);
    let build_base = |with_slack: bool| -> Lp {
        let extra = usize::from(with_slack);
        let mut lp = Lp::new(m + extra);
        for (ci, c) in cone.constraints.iter().enumerate() {
            let (mut a, shift) = shifted_row(cone, c, extra);
            match c.relation {
                Relation::Eq => {
                    if eq_keep.binary_search(&ci).is_ok() {
                        lp.add_row(a, Rel::Eq, shift);
                    }
                }
                Relation::Ge => {
                    if with_slack {
                        a[m] = rat(-1);
                    }
                    lp.add_row(a, Rel::Ge, shift);
                }
            }
        }
        for i in 0..m {
            let mut a = vec![Rat::zero(); m + extra];
            a[i] = rat(1);
            lp.add_row(a, Rel::Le, rat(2)); // u ≤ 2 ⟺ d ≤ 1
        }
        lp
    };

    // Fast path: one LP maximizing a common slack; a positive optimum
    // certifies that no inequality is implied.
    let mut lp = build_base(true);
    let mut cap = vec![Rat::zero(); m + 1];
    cap[m] = rat(1);
    lp.add_row(cap, Rel::Le, rat(1));
    let mut obj = vec![Rat::zero(); m + 1];
    obj[m] = rat(1);
    lp.set_objective(obj);
    match lp.solve() {
        LpOutcome::Optimal { value, .. } if value.is_positive() => return Ok(implied),
        LpOutcome::Optimal { .. } => {}
        LpOutcome::Infeasible => {
            return Err(Error::invariant(
                "cone LP infeasible; the zero vector should always be feasible",
            ))
        }
        LpOutcome::Unbounded => return Err(Error::invariant("boxed cone LP unbounded")),
    }

    // Slow path: one LP per inequality, maximizing its slack.
    for &ri in &ge_rows {
        let mut lp = build_base(false);
        let (a, shift) = shifted_row(cone, &cone.constraints[ri], 0);
        lp.set_objective(a);
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => {
                implied[ri] = value <= shift;
            }
            other => {
                return Err(Error::invariant(format!(
                    "implied-equality LP returned {other:?}"
                )))
            }
        }
    }
    Ok(implied)
}

/// A point in the relative interior of the cone, by exact LP: maximize a
/// common slack `s` subject to all equalities, `a·d ≥ s` for every
/// non-implied inequality, and the box `0 ≤ d_β ≤ B` with `B` four times
/// the maximal root height.
pub fn relint_point(rs: &RootSystem, cone: &ConeSpec) -> Result<DegreeVector> {
    if rs.id() != cone.system {
        return Err(Error::domain("cone belongs to a different root system"));
    }
    let key = cone_fingerprint(cone);
    if let Some(entry) = cone_cache().lock().unwrap().get(&key) {
        if let Some(d) = &entry.relint {
            return Ok(d.clone());
        }
    }
    let implied = implied_equalities(cone)?;
    let m = cone.num_roots;
    let bound = 4 * (0..m).map(|i| rs.height(i)).max().unwrap_or(1);
    let eq_keep = independent_equalities(cone);

    let mut lp = Lp::new(m + 1);
    for (ci, (c, &is_implied)) in cone.constraints.iter().zip(&implied).enumerate() {
        let mut a = vec![Rat::zero(); m + 1];
        for (i, v) in &c.coeffs {
            a[*i] = v.clone();
        }
        match c.relation {
            Relation::Eq => {
                if eq_keep.binary_search(&ci).is_ok() {
                    lp.add_row(a, Rel::Eq, rat(0));
                }
            }
            Relation::Ge => {
                if !is_implied {
                    a[m] = rat(-1);
                }
                lp.add_row(a, Rel::Ge, rat(0));
            }
        }
    }
    for i in 0..m {
        let mut a = vec![Rat::zero(); m + 1];
        a[i] = rat(1);
        lp.add_row(a, Rel::Le, rat(bound));
    }
    let mut cap = vec![Rat::zero(); m + 1];
    cap[m] = rat(1);
    lp.add_row(cap, Rel::Le, rat(1));
    let mut obj = vec![Rat::zero(); m + 1];
    obj[m] = rat(1);
    lp.set_objective(obj);

    let needs_slack = cone
        .constraints
        .iter()
        .zip(&implied)
        .any(|(c, &i)| c.relation == Relation::Ge && !i);
    match lp.solve() {
        LpOutcome::Optimal { value, point } => {
            if needs_slack && !value.is_positive() {
                return Err(Error::LpInfeasible(format!(
                    "no strictly interior point found for cone over {}",
                    cone.system
                )));
            }
            let d = DegreeVector::new(point[..m].to_vec());
            debug_assert!(membership(cone, &d, Mode::Relint)?);
            let mut cache = cone_cache().lock().unwrap();
            cache.insert(
                key,
                ConeCacheEntry {
                    implied,
                    relint: Some(d.clone()),
                },
            );
            Ok(d)
        }
        other => Err(Error::LpInfeasible(format!(
            "relative-interior LP returned {other:?}"
        ))),
    }
}

/// The witness `2 − e_α − e_β + e_γ` for the summable triple `α + β = γ`:
/// it violates exactly the constraint of its own triple.
pub fn facet_witness(
    rs: &RootSystem,
    alpha: &Root,
    beta: &Root,
    gamma: &Root,
) -> Result<DegreeVector> {
    let ia = rs.index_of_required(alpha)?;
    let ib = rs.index_of_required(beta)?;
    let ig = rs.index_of_required(gamma)?;
    if alpha.sum(beta).coords != gamma.coords {
        return Err(Error::domain("facet_witness: α + β ≠ γ"));
    }
    let mut values = vec![rat(2); rs.num_positive_roots()];
    values[ia] = rat(1);
    values[ib] = rat(1);
    values[ig] = rat(3);
    Ok(DegreeVector::new(values))
}

/// JSON form of a cone: constraint list with root labels and rational
/// coefficients as numerator/denominator pairs.
pub fn cone_to_json(rs: &RootSystem, cone: &ConeSpec) -> serde_json::Value {
    let constraints: Vec<serde_json::Value> = cone
        .constraints
        .iter()
        .map(|c| {
            let terms: Vec<serde_json::Value> = c
                .coeffs
                .iter()
                .map(|(i, r)| {
                    json!({
                        "root": rs.label(*i).to_string(),
                        "num": r.numer().to_string(),
                        "den": r.denom().to_string(),
                    })
                })
                .collect();
            json!({
                "tag": c.tag.as_str(),
                "relation": match c.relation { Relation::Ge => ">=", Relation::Eq => "=" },
                "terms": terms,
            })
        })
        .collect();
    json!({
        "system": cone.system.to_string(),
        "constraints": constraints,
    })
}
