//! Exact rational linear programming.
//!
//! Two-phase primal simplex over `BigRational` with Bland's anti-cycling
//! rule. There is no scaling, no tolerance, no rounding anywhere; every
//! pivot is exact, so degeneracy costs time but never correctness.
//!
//! Verdicts carry certificates and `solve` replays them before returning:
//! an optimal point is checked against every constraint together with a
//! feasible dual vector of equal objective value, an unbounded verdict is
//! checked via a recession ray with strictly negative objective drift, and
//! infeasibility is backed by a Farkas vector from the phase-one duals.
//! A certificate that fails to replay is a solver bug and panics.

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::numeric::{Rat, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `x_j >= 0`.
    NonNeg,
    /// Unrestricted; internally split into a difference of two
    /// nonnegative columns.
    Free,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vector,
    pub rel: Rel,
    pub rhs: Rat,
}

/// Minimize `objective . x` subject to the rows and per-variable bounds.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vector,
    pub bounds: Vec<Bound>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vector, bounds: Vec<Bound>) -> Self {
        assert_eq!(objective.dim(), bounds.len());
        LinearProgram {
            objective,
            bounds,
            constraints: Vec::new(),
        }
    }

    pub fn ge(&mut self, coeffs: Vector, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.dim(), self.objective.dim());
        self.constraints.push(Constraint {
            coeffs,
            rel: Rel::Ge,
            rhs,
        });
        self
    }

    pub fn eq(&mut self, coeffs: Vector, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.dim(), self.objective.dim());
        self.constraints.push(Constraint {
            coeffs,
            rel: Rel::Eq,
            rhs,
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LPResult {
    Optimal {
        value: Rat,
        point: Vector,
        /// One multiplier per constraint row, in input order; `>= 0` on
        /// `Ge` rows, free on `Eq` rows, and `dual . rhs == value`.
        dual: Vec<Rat>,
    },
    Unbounded {
        /// Recession direction of the feasible set with `objective . ray < 0`.
        ray: Vector,
    },
    Infeasible {
        /// Farkas multipliers in input row order: `>= 0` on `Ge` rows,
        /// `farkas . A <= 0` on NonNeg columns (`= 0` on Free columns),
        /// and `farkas . rhs > 0`.
        farkas: Vec<Rat>,
    },
}

impl LPResult {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LPResult::Optimal { .. })
    }
}

// Expanded standard form `A x = b, x >= 0, b >= 0`, built by splitting free
// variables, appending slacks on Ge rows, and flipping negative-rhs rows.
// Flipping and slack insertion preserve the solution set exactly, so
// infeasibility certificates can live entirely in this space.
struct StdForm {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    flipped: Vec<bool>,
    ncols: usize,
    // column of (pos part, optional neg part) per original variable
    var_cols: Vec<(usize, Option<usize>)>,
    // slack column per row, where present
    slack_col: Vec<Option<usize>>,
}

impl StdForm {
    fn build(lp: &LinearProgram) -> StdForm {
        let mut var_cols = Vec::with_capacity(lp.objective.dim());
        let mut ncols = 0;
        for b in &lp.bounds {
            match b {
                Bound::NonNeg => {
                    var_cols.push((ncols, None));
                    ncols += 1;
                }
                Bound::Free => {
                    var_cols.push((ncols, Some(ncols + 1)));
                    ncols += 2;
                }
            }
        }
        let mut slack_col = Vec::with_capacity(lp.constraints.len());
        for c in &lp.constraints {
            match c.rel {
                Rel::Ge => {
                    slack_col.push(Some(ncols));
                    ncols += 1;
                }
                Rel::Eq => slack_col.push(None),
            }
        }
        let mut rows = Vec::with_capacity(lp.constraints.len());
        let mut rhs = Vec::with_capacity(lp.constraints.len());
        let mut flipped = Vec::with_capacity(lp.constraints.len());
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rat::zero(); ncols];
            for (j, a) in c.coeffs.0.iter().enumerate() {
                let (p, n) = var_cols[j];
                row[p] = a.clone();
                if let Some(n) = n {
                    row[n] = -a;
                }
            }
            if let Some(s) = slack_col[i] {
                row[s] = -Rat::one();
            }
            let flip = c.rhs.is_negative();
            if flip {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
                rhs.push(-&c.rhs);
            } else {
                rhs.push(c.rhs.clone());
            }
            flipped.push(flip);
            rows.push(row);
        }
        StdForm {
            rows,
            rhs,
            flipped,
            ncols,
            var_cols,
            slack_col,
        }
    }

    /// Expanded phase-two costs (objective on variable columns, zero on slacks).
    fn costs(&self, lp: &LinearProgram) -> Vec<Rat> {
        let mut c = vec![Rat::zero(); self.ncols];
        for (j, cj) in lp.objective.0.iter().enumerate() {
            let (p, n) = self.var_cols[j];
            c[p] = cj.clone();
            if let Some(n) = n {
                c[n] = -cj;
            }
        }
        c
    }

    /// Collapse an expanded-space vector back onto the original variables.
    fn to_original(&self, x: &[Rat]) -> Vector {
        Vector(
            self.var_cols
                .iter()
                .map(|&(p, n)| match n {
                    Some(n) => &x[p] - &x[n],
                    None => x[p].clone(),
                })
                .collect(),
        )
    }
}

struct Tableau {
    // each row: coefficient columns, then the right-hand side
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    // reduced costs, then minus the current objective value
    obj: Vec<Rat>,
    ncols: usize,
    // std-form row index per tableau row (redundant rows get dropped)
    row_ids: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        assert!(!p.is_zero(), "zero pivot");
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let sub = p * &f;
                    *x = &*x - &sub;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&pivot_row) {
                let sub = p * &f;
                *x = &*x - &sub;
            }
        }
        self.basis[r] = c;
    }

    fn set_objective(&mut self, costs: &[Rat]) {
        self.obj = costs.to_vec();
        self.obj.push(Rat::zero());
        for r in 0..self.rows.len() {
            let c = self.basis[r];
            if !self.obj[c].is_zero() {
                let f = self.obj[c].clone();
                let row = self.rows[r].clone();
                for (x, p) in self.obj.iter_mut().zip(&row) {
                    let sub = p * &f;
                    *x = &*x - &sub;
                }
            }
        }
    }

    /// Bland iteration restricted to the first `allowed` columns:
    /// entering column is the lowest index with negative reduced cost,
    /// leaving row breaks ratio ties by lowest basis index. `Ok(())` at
    /// optimality, `Err(col)` when the entering column has no positive
    /// entry and therefore proves unboundedness.
    fn run(&mut self, allowed: usize) -> Result<(), usize> {
        loop {
            let Some(enter) = (0..allowed).find(|&c| self.obj[c].is_negative()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][enter];
                if a.is_positive() {
                    let ratio = &self.rows[r][self.ncols] / a;
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Err(enter),
            }
        }
    }

    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    /// Multipliers `y` with `B^T y = c_B`, taking basis columns from the
    /// unpivoted std-form matrix (artificial columns are identity columns
    /// on their own row). One entry per surviving tableau row.
    fn basis_duals(&self, std: &StdForm, costs: &[Rat], art_row_of_col: &[usize]) -> Vec<Rat> {
        let k = self.rows.len();
        let mut bt = vec![vec![Rat::zero(); k]; k];
        let mut cb = vec![Rat::zero(); k];
        for (j, &col) in self.basis.iter().enumerate() {
            cb[j] = costs[col].clone();
            for (i, &rid) in self.row_ids.iter().enumerate() {
                bt[j][i] = if col < std.ncols {
                    std.rows[rid][col].clone()
                } else if art_row_of_col[col - std.ncols] == rid {
                    Rat::one()
                } else {
                    Rat::zero()
                };
            }
        }
        linalg::solve(&bt, &cb).expect("basis matrix is invertible")
    }
}

pub fn solve(lp: &LinearProgram) -> LPResult {
    assert_eq!(lp.objective.dim(), lp.bounds.len());
    for c in &lp.constraints {
        assert_eq!(c.coeffs.dim(), lp.objective.dim(), "constraint dimension");
    }
    let std = StdForm::build(lp);
    let m = std.rows.len();
    let nstd = std.ncols;

    // Initial basis: reuse a slack wherever its column came out +1 (flipped
    // Ge rows), otherwise append an artificial column.
    let mut basis = vec![usize::MAX; m];
    for r in 0..m {
        if let Some(s) = std.slack_col[r] {
            if std.rows[r][s] == Rat::one() {
                basis[r] = s;
            }
        }
    }
    let mut ncols = nstd;
    let mut art_row_of_col = Vec::new();
    for (r, b) in basis.iter_mut().enumerate() {
        if *b == usize::MAX {
            *b = ncols;
            art_row_of_col.push(r);
            ncols += 1;
        }
    }

    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = std.rows[r].clone();
        row.resize(ncols, Rat::zero());
        if basis[r] >= nstd {
            row[basis[r]] = Rat::one();
        }
        row.push(std.rhs[r].clone());
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        basis,
        obj: Vec::new(),
        ncols,
        row_ids: (0..m).collect(),
    };

    if ncols > nstd {
        // Phase one: minimize the sum of artificials.
        let mut costs = vec![Rat::zero(); ncols];
        for c in costs.iter_mut().skip(nstd) {
            *c = Rat::one();
        }
        t.set_objective(&costs);
        if t.run(ncols).is_err() {
            unreachable!("phase one is bounded below by zero");
        }
        let phase1 = -t.obj[t.ncols].clone();
        if phase1.is_positive() {
            let y_std = t.basis_duals(&std, &costs, &art_row_of_col);
            verify_farkas(&std, &y_std);
            // map back to input row order; flipped rows change sign
            let mut farkas = vec![Rat::zero(); lp.constraints.len()];
            for (i, &rid) in t.row_ids.iter().enumerate() {
                farkas[rid] = if std.flipped[rid] {
                    -&y_std[i]
                } else {
                    y_std[i].clone()
                };
            }
            verify_farkas_input(lp, &farkas);
            return LPResult::Infeasible { farkas };
        }
        // Pivot artificials out of the basis; a row with no real column
        // left to pivot on is a redundant constraint and is dropped.
        // Artificial-basic rows sit at level zero here, so these pivots
        // keep the current vertex.
        let mut drop = Vec::new();
        for r in 0..t.rows.len() {
            if t.basis[r] >= nstd {
                match (0..nstd).find(|&c| !t.rows[r][c].is_zero()) {
                    Some(c) => t.pivot(r, c),
                    None => drop.push(r),
                }
            }
        }
        for &r in drop.iter().rev() {
            t.rows.remove(r);
            t.basis.remove(r);
            t.row_ids.remove(r);
        }
        for row in t.rows.iter_mut() {
            row.drain(nstd..ncols);
        }
        t.ncols = nstd;
    }

    // Phase two on the real objective.
    let costs = std.costs(lp);
    t.set_objective(&costs);
    match t.run(nstd) {
        Err(enter) => {
            let mut d = vec![Rat::zero(); nstd];
            d[enter] = Rat::one();
            for r in 0..t.rows.len() {
                d[t.basis[r]] = -&t.rows[r][enter];
            }
            let ray = std.to_original(&d);
            verify_ray(lp, &ray);
            LPResult::Unbounded { ray }
        }
        Ok(()) => {
            let mut x = vec![Rat::zero(); nstd];
            for r in 0..t.rows.len() {
                x[t.basis[r]] = t.rhs(r).clone();
            }
            let point = std.to_original(&x);
            let value = lp.objective.dot(&point);
            let y = t.basis_duals(&std, &costs, &[]);
            let mut dual = vec![Rat::zero(); lp.constraints.len()];
            for (i, &rid) in t.row_ids.iter().enumerate() {
                dual[rid] = if std.flipped[rid] { -&y[i] } else { y[i].clone() };
            }
            verify_optimal(lp, &point, &value, &dual);
            LPResult::Optimal { value, point, dual }
        }
    }
}

fn verify_optimal(lp: &LinearProgram, point: &Vector, value: &Rat, dual: &[Rat]) {
    for (j, b) in lp.bounds.iter().enumerate() {
        if *b == Bound::NonNeg {
            assert!(
                !point.0[j].is_negative(),
                "optimal point violates x[{j}] >= 0"
            );
        }
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let lhs = c.coeffs.dot(point);
        let ok = match c.rel {
            Rel::Ge => lhs >= c.rhs,
            Rel::Eq => lhs == c.rhs,
        };
        assert!(ok, "optimal point violates constraint {i}");
    }
    assert_eq!(&lp.objective.dot(point), value, "objective value mismatch");

    let mut dual_value = Rat::zero();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.rel == Rel::Ge {
            assert!(!dual[i].is_negative(), "dual[{i}] negative on a Ge row");
        }
        dual_value += &dual[i] * &c.rhs;
    }
    for (j, b) in lp.bounds.iter().enumerate() {
        let mut reduced = lp.objective.0[j].clone();
        for (i, c) in lp.constraints.iter().enumerate() {
            reduced -= &dual[i] * &c.coeffs.0[j];
        }
        match b {
            Bound::NonNeg => {
                assert!(!reduced.is_negative(), "dual infeasible at variable {j}")
            }
            Bound::Free => {
                assert!(reduced.is_zero(), "dual infeasible at free variable {j}")
            }
        }
    }
    assert_eq!(&dual_value, value, "strong duality gap");
}

fn verify_ray(lp: &LinearProgram, ray: &Vector) {
    for (j, b) in lp.bounds.iter().enumerate() {
        if *b == Bound::NonNeg {
            assert!(!ray.0[j].is_negative(), "ray violates x[{j}] >= 0");
        }
    }
    for (i, c) in lp.constraints.iter().enumerate() {
        let drift = c.coeffs.dot(ray);
        let ok = match c.rel {
            Rel::Ge => !drift.is_negative(),
            Rel::Eq => drift.is_zero(),
        };
        assert!(ok, "ray leaves the feasible set at constraint {i}");
    }
    assert!(
        lp.objective.dot(ray).is_negative(),
        "ray does not improve the objective"
    );
}

/// The same certificate in input row order: nonnegative on Ge rows,
/// `y^T A <= 0` on NonNeg columns and `= 0` on Free columns, `y^T b > 0`.
fn verify_farkas_input(lp: &LinearProgram, y: &[Rat]) {
    let mut yb = Rat::zero();
    for (i, c) in lp.constraints.iter().enumerate() {
        if c.rel == Rel::Ge {
            assert!(!y[i].is_negative(), "Farkas multiplier negative on Ge row {i}");
        }
        yb += &y[i] * &c.rhs;
    }
    assert!(yb.is_positive(), "input-space Farkas value not positive");
    for (j, b) in lp.bounds.iter().enumerate() {
        let mut col = Rat::zero();
        for (i, c) in lp.constraints.iter().enumerate() {
            col += &y[i] * &c.coeffs.0[j];
        }
        match b {
            Bound::NonNeg => assert!(!col.is_positive(), "Farkas fails column {j}"),
            Bound::Free => assert!(col.is_zero(), "Farkas fails free column {j}"),
        }
    }
}

/// In std space, `y^T A <= 0` columnwise with `y^T b > 0` witnesses that
/// `A x = b, x >= 0` has no solution, and std form is solution-equivalent
/// to the input program.
fn verify_farkas(std: &StdForm, y: &[Rat]) {
    for c in 0..std.ncols {
        let mut dot = Rat::zero();
        for (i, yi) in y.iter().enumerate() {
            dot += yi * &std.rows[i][c];
        }
        assert!(!dot.is_positive(), "Farkas vector fails column {c}");
    }
    let mut yb = Rat::zero();
    for (i, yi) in y.iter().enumerate() {
        yb += yi * &std.rhs[i];
    }
    assert!(yb.is_positive(), "Farkas vector has nonpositive value");
}
