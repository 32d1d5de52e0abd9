//! Exact rational linear programming via a dense two-phase simplex.
//!
//! Small problems only (a few hundred rows): the cone computations need
//! strictness certificates, so everything runs over `BigRational` with
//! Bland's rule to guarantee termination. No floating point.

use num_traits::{One, Signed, Zero};

use crate::rootsys::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Ge,
    Eq,
}

/// `maximize c·x  subject to  a_i·x REL_i b_i,  x ≥ 0`.
#[derive(Debug, Clone)]
pub struct Lp {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub rows: Vec<(Vec<Rat>, Rel, Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

impl Lp {
    pub fn new(num_vars: usize) -> Self {
        Lp {
            num_vars,
            objective: vec![Rat::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn set_objective(&mut self, c: Vec<Rat>) {
        assert_eq!(c.len(), self.num_vars);
        self.objective = c;
    }

    pub fn add_row(&mut self, a: Vec<Rat>, rel: Rel, b: Rat) {
        assert_eq!(a.len(), self.num_vars);
        self.rows.push((a, rel, b));
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve()
    }
}

struct Tableau {
    ncols: usize,
    nstruct: usize,
    rows: Vec<Vec<Rat>>, // each row: coefficients then rhs
    basis: Vec<usize>,
    artificial_from: usize,
    objective: Vec<Rat>,
}

impl Tableau {
    fn build(lp: &Lp) -> Tableau {
        let m = lp.rows.len();
        // columns: structural | slack/surplus (one per Le/Ge row) | artificial
        let mut nslack = 0usize;
        for (_, rel, _) in &lp.rows {
            if *rel != Rel::Eq {
                nslack += 1;
            }
        }
        let nstruct = lp.num_vars;
        let slack_from = nstruct;
        let artificial_from = nstruct + nslack;
        let ncols = artificial_from + m; // at most one artificial per row
        let mut rows = Vec::with_capacity(m);
        let mut basis = vec![usize::MAX; m];
        let mut next_slack = slack_from;
        for (ri, (a, rel, b)) in lp.rows.iter().enumerate() {
            let mut row = vec![Rat::zero(); ncols + 1];
            let flip = b.is_negative();
            let sgn = if flip { -Rat::one() } else { Rat::one() };
            for (j, v) in a.iter().enumerate() {
                row[j] = v * &sgn;
            }
            row[ncols] = b * &sgn;
            let eff_rel = match (rel, flip) {
                (Rel::Eq, _) => Rel::Eq,
                (Rel::Le, false) | (Rel::Ge, true) => Rel::Le,
                (Rel::Ge, false) | (Rel::Le, true) => Rel::Ge,
            };
            match eff_rel {
                Rel::Le => {
                    row[next_slack] = Rat::one();
                    basis[ri] = next_slack;
                    next_slack += 1;
                }
                Rel::Ge => {
                    row[next_slack] = -Rat::one();
                    next_slack += 1;
                    row[artificial_from + ri] = Rat::one();
                    basis[ri] = artificial_from + ri;
                }
                Rel::Eq => {
                    row[artificial_from + ri] = Rat::one();
                    basis[ri] = artificial_from + ri;
                }
            }
            rows.push(row);
        }
        Tableau {
            ncols,
            nstruct,
            rows,
            basis,
            artificial_from,
            objective: lp.objective.clone(),
        }
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [Rat]) {
        let inv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.ncols {
                    let delta = &f * &self.rows[r][j];
                    self.rows[i][j] = &self.rows[i][j] - delta;
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for j in 0..=self.ncols {
                let delta = &f * &self.rows[r][j];
                obj[j] = &obj[j] - delta;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations with Bland's rule on the given reduced-cost
    /// row (columns `>= banned_from` never enter). Returns false on
    /// unboundedness.
    fn iterate(&mut self, obj: &mut [Rat], banned_from: usize) -> bool {
        loop {
            // Bland: smallest-index column with positive reduced profit.
            let mut entering = None;
            for (j, v) in obj.iter().enumerate().take(self.ncols) {
                if j >= banned_from {
                    break;
                }
                if v.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            // Ratio test; Bland tie-break on smallest basic variable.
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][c].is_positive() {
                    let ratio = &self.rows[r][self.ncols] / &self.rows[r][c];
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, c, obj);
        }
    }

    fn solve(mut self) -> LpOutcome {
        let m = self.rows.len();
        // Phase 1: maximize −Σ artificials.
        let needs_phase1 = self.basis.iter().any(|&b| b >= self.artificial_from);
        if needs_phase1 {
            let mut obj = vec![Rat::zero(); self.ncols + 1];
            for j in self.artificial_from..self.ncols {
                obj[j] = -Rat::one();
            }
            // Make reduced costs of basic artificials zero.
            for r in 0..m {
                if self.basis[r] >= self.artificial_from {
                    for j in 0..=self.ncols {
                        let delta = self.rows[r][j].clone();
                        obj[j] = &obj[j] + delta;
                    }
                }
            }
            if !self.iterate(&mut obj, self.ncols) {
                unreachable!("phase 1 is bounded by construction");
            }
            // At optimum, obj[ncols] equals −(Σ artificials) ... nonzero
            // means some artificial is stuck positive: infeasible.
            if !obj[self.ncols].is_zero() {
                return LpOutcome::Infeasible;
            }
            // Pivot remaining basic artificials out, or drop redundant rows.
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.artificial_from {
                    let mut pivoted = false;
                    for c in 0..self.artificial_from {
                        if !self.rows[r][c].is_zero() {
                            let mut dummy = vec![Rat::zero(); self.ncols + 1];
                            self.pivot(r, c, &mut dummy);
                            pivoted = true;
                            break;
                        }
                    }
                    if !pivoted {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
                r += 1;
            }
        }

        // Phase 2: reduced costs start as c_j, adjusted for basic columns.
        let mut obj = vec![Rat::zero(); self.ncols + 1];
        for (j, c) in self.objective.iter().enumerate() {
            obj[j] = c.clone();
        }
        for r in 0..self.rows.len() {
            let b = self.basis[r];
            if b < self.nstruct && !self.objective[b].is_zero() {
                let f = self.objective[b].clone();
                for j in 0..=self.ncols {
                    let delta = &f * &self.rows[r][j];
                    obj[j] = &obj[j] - delta;
                }
            }
        }
        if !self.iterate(&mut obj, self.artificial_from) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rat::zero(); self.nstruct];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.nstruct {
                point[b] = self.rows[r][self.ncols].clone();
            }
        }
        let value = self
            .objective
            .iter()
            .zip(&point)
            .fold(Rat::zero(), |acc, (c, x)| acc + c * x);
        LpOutcome::Optimal { value, point }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{rat, rat_frac};

    #[test]
    fn simple_max() {
        // max x + y st x + 2y <= 4, x <= 3
        let mut lp = Lp::new(2);
        lp.set_objective(vec![rat(1), rat(1)]);
        lp.add_row(vec![rat(1), rat(2)], Rel::Le, rat(4));
        lp.add_row(vec![rat(1), rat(0)], Rel::Le, rat(3));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat_frac(7, 2));
                assert_eq!(point, vec![rat(3), rat_frac(1, 2)]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn equality_and_ge() {
        // max y st x + y = 2, x >= 1  ->  y = 1
        let mut lp = Lp::new(2);
        lp.set_objective(vec![rat(0), rat(1)]);
        lp.add_row(vec![rat(1), rat(1)], Rel::Eq, rat(2));
        lp.add_row(vec![rat(1), rat(0)], Rel::Ge, rat(1));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn infeasible() {
        let mut lp = Lp::new(1);
        lp.set_objective(vec![rat(1)]);
        lp.add_row(vec![rat(1)], Rel::Ge, rat(3));
        lp.add_row(vec![rat(1)], Rel::Le, rat(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded() {
        let mut lp = Lp::new(2);
        lp.set_objective(vec![rat(1), rat(0)]);
        lp.add_row(vec![rat(0), rat(1)], Rel::Le, rat(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_normalization() {
        // max x st -x >= -5  (i.e. x <= 5)
        let mut lp = Lp::new(1);
        lp.set_objective(vec![rat(1)]);
        lp.add_row(vec![rat(-1)], Rel::Ge, rat(-5));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(5)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn degenerate_does_not_cycle() {
        // Beale's cycling example; Bland's rule must terminate.
        let mut lp = Lp::new(4);
        lp.set_objective(vec![rat_frac(3, 4), rat(-150), rat_frac(1, 50), rat(-6)]);
        lp.add_row(
            vec![rat_frac(1, 4), rat(-60), rat_frac(-1, 25), rat(9)],
            Rel::Le,
            rat(0),
        );
        lp.add_row(
            vec![rat_frac(1, 2), rat(-90), rat_frac(-1, 50), rat(3)],
            Rel::Le,
            rat(0),
        );
        lp.add_row(vec![rat(0), rat(0), rat(1), rat(0)], Rel::Le, rat(1));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat_frac(1, 20)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }
}
