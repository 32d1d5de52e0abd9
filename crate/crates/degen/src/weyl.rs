//! Weyl groups as signed permutations of the ε-basis, reduced words,
//! inversion sets, and the distinguished element of the stretched system
//! whose inversion set is the image of the root embedding.

use std::collections::BTreeSet;

use crate::cones::CutSet;
use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootSystem};
use crate::stretch::Stretching;

/// A word in the simple reflections (letters are 1-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// A (signed) permutation: `w(ε_k) = sign · ε_m` is stored as `map[k−1] =
/// ±m`. Type A elements are plain permutations of the `n+1` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    family: Family,
    map: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> WeylElement {
        WeylElement {
            family: rs.family(),
            map: (1..=rs.ambient_dim() as i64).collect(),
        }
    }

    pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<WeylElement> {
        let n = rs.rank();
        let dim = rs.ambient_dim();
        if i < 1 || i > n {
            return Err(Error::domain(format!(
                "simple reflection index {i} out of range for {}",
                rs.id()
            )));
        }
        let mut map: Vec<i64> = (1..=dim as i64).collect();
        match rs.family() {
            Family::A => map.swap(i - 1, i),
            Family::B | Family::C => {
                if i < n {
                    map.swap(i - 1, i);
                } else {
                    map[n - 1] = -(n as i64);
                }
            }
            Family::D => {
                if i < n {
                    map.swap(i - 1, i);
                } else {
                    map[n - 2] = -(n as i64);
                    map[n - 1] = -(n as i64 - 1);
                }
            }
        }
        Ok(WeylElement {
            family: rs.family(),
            map,
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let map = other
            .map
            .iter()
            .map(|&bm| {
                let sign = bm.signum();
                sign * self.map[(bm.unsigned_abs() as usize) - 1]
            })
            .collect();
        WeylElement {
            family: self.family,
            map,
        }
    }

    /// Image of the 1-based basis index `k`, as a signed index.
    pub fn image_of(&self, k: usize) -> i64 {
        self.map[k - 1]
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    /// Action on an integer ε-vector.
    pub fn apply(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; coords.len()];
        for (k0, &c) in coords.iter().enumerate() {
            if c != 0 {
                let m = self.map[k0];
                out[(m.unsigned_abs() as usize) - 1] += m.signum() * c;
            }
        }
        out
    }

    /// Number of sign changes (0 in type A).
    pub fn sign_changes(&self) -> usize {
        self.map.iter().filter(|&&m| m < 0).count()
    }

    /// Builds an element from its signed one-line form `w(ε_k) = images[k−1]`,
    /// validating bijectivity and the family's sign rules (no signs in type
    /// A, an even number of sign changes in type D).
    pub fn from_images(rs: &RootSystem, images: Vec<i64>) -> Result<WeylElement> {
        let dim = rs.ambient_dim();
        if images.len() != dim {
            return Err(Error::domain("one-line form has wrong length"));
        }
        let mut seen = vec![false; dim];
        for &m in &images {
            let a = m.unsigned_abs() as usize;
            if m == 0 || a < 1 || a > dim || seen[a - 1] {
                return Err(Error::domain("one-line form is not a signed bijection"));
            }
            seen[a - 1] = true;
        }
        let signs = images.iter().filter(|&&m| m < 0).count();
        match rs.family() {
            Family::A if signs > 0 => {
                return Err(Error::domain("type A elements have no sign changes"))
            }
            Family::D if signs % 2 == 1 => {
                return Err(Error::domain(
                    "type D elements have an even number of sign changes",
                ))
            }
            _ => {}
        }
        Ok(WeylElement {
            family: rs.family(),
            map: images,
        })
    }
}

/// Composes a word right-to-left into an element and reports whether the
/// word is reduced (length equals the inversion count of the product).
pub fn word_to_element(rs: &RootSystem, word: &Word) -> Result<(WeylElement, bool)> {
    let mut w = WeylElement::identity(rs);
    for &i in word.letters().iter().rev() {
        let s = WeylElement::simple_reflection(rs, i)?;
        w = s.compose(&w);
    }
    let reduced = inversion_set(rs, &w).len() == word.len();
    Ok((w, reduced))
}

/// Positive roots sent to negative roots, by direct action.
pub fn inversion_set(rs: &RootSystem, w: &WeylElement) -> Vec<Root> {
    rs.positive_roots()
        .iter()
        .filter(|beta| {
            let image = w.apply(&beta.coords);
            let neg: Vec<i64> = image.iter().map(|c| -c).collect();
            rs.is_positive_root(&neg)
        })
        .cloned()
        .collect()
}

/// Inversion set of a reduced word by telescoping
/// (`α_{i_r}, s_{i_r} α_{i_{r−1}}, …`), cross-checked against the direct
/// action; a mismatch (non-reduced word or internal bug) is an error.
pub fn inversion_set_from_word(rs: &RootSystem, word: &Word) -> Result<Vec<Root>> {
    let mut suffix = WeylElement::identity(rs);
    let mut out: Vec<Root> = Vec::new();
    let letters = word.letters();
    for pos in (0..letters.len()).rev() {
        let alpha = rs.simple_root(letters[pos]).clone();
        let image = suffix.apply(&alpha.coords);
        out.push(Root::new(image));
        let s = WeylElement::simple_reflection(rs, letters[pos])?;
        suffix = s.compose(&suffix);
    }
    // `suffix` is now the full element.
    let direct = inversion_set(rs, &suffix);
    let a: BTreeSet<Vec<i64>> = out.iter().map(|r| r.coords.clone()).collect();
    let b: BTreeSet<Vec<i64>> = direct.iter().map(|r| r.coords.clone()).collect();
    if a != b || a.len() != out.len() {
        return Err(Error::invariant(
            "telescoped inversion set disagrees with direct action (word not reduced?)",
        ));
    }
    Ok(out)
}

/// The factor `v_k = (s_k ⋯ s_{c_k+k−1}) ⋯ (s_k ⋯ s_{c_{k−1}+k})` of the
/// type-A reduced decomposition; segments run from the long one down.
fn v_factor(k: usize, ck: usize, ck_prev: usize, out: &mut Vec<usize>) {
    let hi = ck + k - 1;
    let lo = ck_prev + k;
    let mut m = hi;
    while m >= lo {
        for s in k..=m {
            out.push(s);
        }
        if m == lo {
            break;
        }
        m -= 1;
    }
}

/// The concatenation `v_{t+1} v_t ⋯ v_1` with `c_{t+1} := top`.
fn v_chain(cuts: &CutSet, top: usize, out: &mut Vec<usize>) {
    let t = cuts.len();
    let c = |k: usize| -> usize {
        if k == 0 {
            0
        } else if k == t + 1 {
            top
        } else {
            cuts.positions()[k - 1]
        }
    };
    for k in (1..=t + 1).rev() {
        if c(k) > c(k - 1) {
            v_factor(k, c(k), c(k - 1), out);
        }
    }
}

/// The distinguished Weyl element of the stretched system, as an explicit
/// word: the type-specific longest-element prefix followed by the type-A
/// chain of `v` factors. The word is reduced of length `|Φ⁺|` of the base
/// system.
pub fn build_wc(rs: &RootSystem, cuts: &CutSet) -> Result<Word> {
    let cuts = CutSet::new(rs, cuts.positions().to_vec())?;
    let n = rs.rank();
    let t = cuts.len();
    let big = n + t;
    let mut letters: Vec<usize> = Vec::new();
    match rs.family() {
        Family::A => {
            v_chain(&cuts, n, &mut letters);
        }
        Family::B | Family::C => {
            for a in (t + 1..=big).rev() {
                for s in a..=big {
                    letters.push(s);
                }
            }
            v_chain(&cuts, n - 1, &mut letters);
        }
        Family::D => {
            for k in (1..=n - 1).rev() {
                if k % 2 == 1 {
                    for s in (t + k)..=(big - 2) {
                        letters.push(s);
                    }
                    letters.push(big);
                } else {
                    for s in (t + k)..=(big - 1) {
                        letters.push(s);
                    }
                }
            }
            v_chain(&cuts, n - 1, &mut letters);
        }
    }
    Ok(Word(letters))
}

/// Outcome of checking that the inversion set of the distinguished element
/// equals the image of the root embedding.
#[derive(Debug, Clone)]
pub struct WeylGroupReport {
    pub word_len: usize,
    pub reduced: bool,
    pub expected_len: usize,
    pub sets_equal: bool,
}

impl WeylGroupReport {
    pub fn pass(&self) -> bool {
        self.reduced && self.word_len == self.expected_len && self.sets_equal
    }
}

/// Checks reducedness, length `|Φ⁺|`, and the inversion-set identity for
/// the distinguished element of `(rs, cuts)`.
pub fn verify_weylgroup(rs: &RootSystem, cuts: &CutSet) -> Result<WeylGroupReport> {
    let st = Stretching::from_system(rs, cuts)?;
    let word = build_wc(rs, cuts)?;
    let (w, reduced) = word_to_element(st.stretched(), &word)?;
    let inv: BTreeSet<Vec<i64>> = inversion_set(st.stretched(), &w)
        .into_iter()
        .map(|r| r.coords)
        .collect();
    let img: BTreeSet<Vec<i64>> = st.image_set()?.into_iter().map(|r| r.coords).collect();
    Ok(WeylGroupReport {
        word_len: word.len(),
        reduced,
        expected_len: rs.num_positive_roots(),
        sets_equal: inv == img,
    })
}

/// Columns of the extremal vector: the image of `{1, …, σ(i)}` under the
/// distinguished element, as signed indices, checked against the closed
/// form. Valid for `i ≤ n` in type A, `i ≤ n−1` in type B and `i ≤ n−2`
/// in type D (the non-spin fundamentals).
pub fn extremal_columns(rs: &RootSystem, cuts: &CutSet, i: usize) -> Result<Vec<i64>> {
    let n = rs.rank();
    let valid = match rs.family() {
        Family::A => i >= 1 && i <= n,
        Family::B => i >= 1 && i <= n - 1,
        Family::D => i >= 1 && i <= n - 2,
        Family::C => {
            return Err(Error::domain(
                "extremal columns are defined for types A, B and D only",
            ))
        }
    };
    if !valid {
        return Err(Error::domain(format!(
            "fundamental index {i} out of the non-spin range for {}",
            rs.id()
        )));
    }
    let st = Stretching::from_system(rs, cuts)?;
    let t = st.t();
    let li = st.sigma(i);
    let word = build_wc(rs, cuts)?;
    let (w, _) = word_to_element(st.stretched(), &word)?;
    let mut direct: Vec<i64> = (1..=li).map(|k| w.image_of(k)).collect();
    direct.sort_unstable();

    let mut closed: Vec<i64> = (1..=(li - i) as i64).collect();
    match rs.family() {
        Family::A => {
            let lo = (n + 2 + li) as i64 - 2 * i as i64;
            let hi = (n + 1 + li) as i64 - i as i64;
            closed.extend(lo..=hi);
        }
        Family::B | Family::D => {
            let lo = (2 * t + i + 1) as i64 - li as i64;
            let hi = (2 * t + 2 * i) as i64 - li as i64;
            closed.extend((lo..=hi).map(|m| -m));
        }
        Family::C => unreachable!(),
    }
    closed.sort_unstable();
    if direct != closed {
        return Err(Error::invariant(format!(
            "extremal columns for {} cuts {cuts} i={i}: direct action {direct:?} \
             differs from closed form {closed:?}",
            rs.id()
        )));
    }
    Ok(direct)
}

/// The explicit one-line formulas for the type-A distinguished permutation,
/// checked against the composed word. Returns false on any mismatch.
pub fn check_type_a_one_line_forms(rs: &RootSystem, cuts: &CutSet) -> Result<bool> {
    if rs.family() != Family::A {
        return Err(Error::domain("one-line forms apply to type A only"));
    }
    let st = Stretching::from_system(rs, cuts)?;
    let n = rs.rank();
    let word = build_wc(rs, cuts)?;
    let (w, _) = word_to_element(st.stretched(), &word)?;
    for j in 1..=n {
        let lj = st.sigma(j);
        let lprev = if j == 1 { 0 } else { st.sigma(j - 1) };
        if lj == lprev + 1 {
            let expect = lj as i64 + (n as i64 - 2 * j as i64 + 2);
            if w.image_of(lj) != expect {
                return Ok(false);
            }
        } else {
            debug_assert_eq!(lj, lprev + 2);
            if w.image_of(lj - 1) != (lj - j) as i64 {
                return Ok(false);
            }
            if w.image_of(lj) != (lj + n - j + 1) as i64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The action of the orthogonal/symplectic prefix on the stretched basis:
/// `ε_{t+1}, …, ε_{n+t}` go to `−ε_{n+t}, …, −ε_{t+1}` (with the type-D
/// odd-rank exception at `ε_{t+1}`).
pub fn check_prefix_action(rs: &RootSystem, cuts: &CutSet) -> Result<bool> {
    let n = rs.rank();
    let t = cuts.len();
    let big = n + t;
    let stretched = RootSystem::new(rs.family(), big)?;
    let mut letters: Vec<usize> = Vec::new();
    match rs.family() {
        Family::B | Family::C => {
            for a in (t + 1..=big).rev() {
                for s in a..=big {
                    letters.push(s);
                }
            }
        }
        Family::D => {
            for k in (1..=n - 1).rev() {
                if k % 2 == 1 {
                    for s in (t + k)..=(big - 2) {
                        letters.push(s);
                    }
                    letters.push(big);
                } else {
                    for s in (t + k)..=(big - 1) {
                        letters.push(s);
                    }
                }
            }
        }
        Family::A => return Err(Error::domain("no prefix in type A")),
    }
    let (w, _) = word_to_element(&stretched, &Word(letters))?;
    for k in 1..=n {
        let expect = if rs.family() == Family::D && n % 2 == 1 && k == 1 {
            big as i64
        } else {
            -((big - k + 1) as i64)
        };
        if w.image_of(t + k) != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    fn cut(rs: &RootSystem, p: &[usize]) -> CutSet {
        CutSet::new(rs, p.to_vec()).unwrap()
    }

    #[test]
    fn word_composition_convention() {
        let a3 = rs(Family::A, 3);
        let (w, reduced) = word_to_element(&a3, &Word(vec![2, 3, 1])).unwrap();
        assert!(reduced);
        assert_eq!(
            (1..=4).map(|k| w.image_of(k)).collect::<Vec<_>>(),
            vec![3, 1, 4, 2]
        );
    }

    #[test]
    fn square_of_reflection_is_identity() {
        let a2 = rs(Family::A, 2);
        let (w, reduced) = word_to_element(&a2, &Word(vec![1, 1])).unwrap();
        assert!(!reduced);
        assert_eq!(w, WeylElement::identity(&a2));
    }

    #[test]
    fn b2_sign_change() {
        let b2 = rs(Family::B, 2);
        let (w, reduced) = word_to_element(&b2, &Word(vec![2])).unwrap();
        assert!(reduced);
        assert_eq!(w.image_of(2), -2);
        assert_eq!(w.sign_changes(), 1);
    }

    #[test]
    fn inversion_sets_a3() {
        let a3 = rs(Family::A, 3);
        let (w, _) = word_to_element(&a3, &Word(vec![2, 3, 1])).unwrap();
        let mut inv: Vec<Vec<i64>> = inversion_set(&a3, &w)
            .into_iter()
            .map(|r| r.coords)
            .collect();
        inv.sort();
        // α1, α3, α1+α2+α3
        let mut expect = vec![vec![1, -1, 0, 0], vec![0, 0, 1, -1], vec![1, 0, 0, -1]];
        expect.sort();
        assert_eq!(inv, expect);
    }

    #[test]
    fn identity_and_longest_inversions() {
        let a2 = rs(Family::A, 2);
        assert!(inversion_set(&a2, &WeylElement::identity(&a2)).is_empty());
        let (w0, reduced) = word_to_element(&a2, &Word(vec![1, 2, 1])).unwrap();
        assert!(reduced);
        assert_eq!(inversion_set(&a2, &w0).len(), 3);
    }

    #[test]
    fn telescoped_inversions_match_direct() {
        let a3 = rs(Family::A, 3);
        let set = inversion_set_from_word(&a3, &Word(vec![2, 3, 1])).unwrap();
        assert_eq!(set.len(), 3);
        // non-reduced words are rejected
        assert!(inversion_set_from_word(&a3, &Word(vec![1, 1])).is_err());
    }

    #[test]
    fn wc_word_a2_cut1() {
        let a2 = rs(Family::A, 2);
        let w = build_wc(&a2, &cut(&a2, &[1])).unwrap();
        assert_eq!(w.0, vec![2, 3, 1]);
    }

    #[test]
    fn wc_word_b2_cut1() {
        let b2 = rs(Family::B, 2);
        let w = build_wc(&b2, &cut(&b2, &[1])).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.0, vec![3, 2, 3, 1]);
    }

    #[test]
    fn wc_word_d4_cut1_length() {
        let d4 = rs(Family::D, 4);
        let w = build_wc(&d4, &cut(&d4, &[1])).unwrap();
        assert_eq!(w.len(), 12);
    }

    #[test]
    fn wc_empty_cut_is_longest_element() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 2),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let s = rs(f, n);
            let w = build_wc(&s, &CutSet::empty()).unwrap();
            let (el, reduced) = word_to_element(&s, &w).unwrap();
            assert!(reduced, "{f}{n}");
            assert_eq!(inversion_set(&s, &el).len(), s.num_positive_roots());
        }
    }

    #[test]
    fn weylgroup_reports_pass_small() {
        for (f, n) in [
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
        ] {
            let s = rs(f, n);
            for cuts in CutSet::all(&s) {
                let rep = verify_weylgroup(&s, &cuts).unwrap();
                assert!(rep.pass(), "{f}{n} cuts {cuts}: {rep:?}");
            }
        }
    }

    #[test]
    fn extremal_columns_a2_cut1() {
        let a2 = rs(Family::A, 2);
        let c = cut(&a2, &[1]);
        assert_eq!(extremal_columns(&a2, &c, 1).unwrap(), vec![3]);
        assert_eq!(extremal_columns(&a2, &c, 2).unwrap(), vec![1, 3, 4]);
    }

    #[test]
    fn extremal_columns_no_cuts_is_suffix() {
        // with no cuts the element is the longest one; the columns are the
        // closed-form window
        let a3 = rs(Family::A, 3);
        for i in 1..=3usize {
            let cols = extremal_columns(&a3, &CutSet::empty(), i).unwrap();
            let expect: Vec<i64> = ((4 - i as i64 + 1)..=4).collect();
            assert_eq!(cols, expect);
        }
    }

    #[test]
    fn extremal_columns_b2() {
        let b2 = rs(Family::B, 2);
        let c = cut(&b2, &[1]);
        assert_eq!(extremal_columns(&b2, &c, 1).unwrap(), vec![-3]);
    }

    #[test]
    fn extremal_columns_domain_errors() {
        let c3 = rs(Family::C, 3);
        assert!(extremal_columns(&c3, &CutSet::empty(), 1).is_err());
        let b3 = rs(Family::B, 3);
        assert!(extremal_columns(&b3, &CutSet::empty(), 3).is_err()); // spin
        let d4 = rs(Family::D, 4);
        assert!(extremal_columns(&d4, &CutSet::empty(), 3).is_err()); // spin
    }

    #[test]
    fn one_line_forms_type_a() {
        for n in 1..=6 {
            let s = rs(Family::A, n);
            for cuts in CutSet::all(&s) {
                assert!(
                    check_type_a_one_line_forms(&s, &cuts).unwrap(),
                    "A{n} {cuts}"
                );
            }
        }
    }

    #[test]
    fn prefix_action_bc_and_d() {
        for (f, n) in [
            (Family::B, 2),
            (Family::B, 4),
            (Family::C, 3),
            (Family::D, 4),
            (Family::D, 5),
        ] {
            let s = rs(f, n);
            for cuts in CutSet::all(&s) {
                assert!(check_prefix_action(&s, &cuts).unwrap(), "{f}{n} {cuts}");
            }
        }
    }
}
