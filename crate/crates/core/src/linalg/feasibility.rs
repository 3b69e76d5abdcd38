//! Exact feasibility of homogeneous sign-constrained linear systems.
//!
//! A [`SignConstrainedSystem`] asks for `z` with
//! `strict · z > 0`, `nonneg · z >= 0` and `zero · z = 0` (row-wise).
//! [`feasible`] decides this exactly. It maximizes a slack `t` subject to
//! `strict · z >= t`, the remaining rows, and `|z_j| <= 1`, using a dense
//! rational simplex with Bland's rule. The system is feasible iff the optimum
//! is positive.
//!
//! Infeasible answers carry a Motzkin-type certificate: multipliers
//! `y_s >= 0` (not all zero), `y_n >= 0` and free `y_z` with
//! `strictᵀ y_s + nonnegᵀ y_n + zeroᵀ y_z = 0`. Any `z` satisfying the
//! system would give `0 = y_sᵀ strict z + ... > 0`, so the certificate can be
//! checked without trusting the solver.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::dot;
use super::{Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignConstrainedSystem {
    vars: usize,
    strict: Vec<Vec<Rational>>,
    nonneg: Vec<Vec<Rational>>,
    zero: Vec<Vec<Rational>>,
}

impl SignConstrainedSystem {
    pub fn new(vars: usize) -> Self {
        SignConstrainedSystem {
            vars,
            strict: Vec::new(),
            nonneg: Vec::new(),
            zero: Vec::new(),
        }
    }

    /// Builds a system from three row blocks sharing `vars` columns.
    pub fn from_blocks(
        vars: usize,
        strict: &RationalMatrix,
        nonneg: &RationalMatrix,
        zero: &RationalMatrix,
    ) -> Self {
        let mut s = Self::new(vars);
        for (block, m) in [(0, strict), (1, nonneg), (2, zero)] {
            assert!(m.rows() == 0 || m.cols() == vars, "column count mismatch");
            for i in 0..m.rows() {
                let row = m.row(i).to_vec();
                match block {
                    0 => s.strict.push(row),
                    1 => s.nonneg.push(row),
                    _ => s.zero.push(row),
                }
            }
        }
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn strict_rows(&self) -> &[Vec<Rational>] {
        &self.strict
    }

    pub fn nonneg_rows(&self) -> &[Vec<Rational>] {
        &self.nonneg
    }

    pub fn zero_rows(&self) -> &[Vec<Rational>] {
        &self.zero
    }

    pub fn push_strict(&mut self, row: Vec<Rational>) -> &mut Self {
        assert_eq!(row.len(), self.vars);
        self.strict.push(row);
        self
    }

    pub fn push_nonneg(&mut self, row: Vec<Rational>) -> &mut Self {
        assert_eq!(row.len(), self.vars);
        self.nonneg.push(row);
        self
    }

    pub fn push_zero(&mut self, row: Vec<Rational>) -> &mut Self {
        assert_eq!(row.len(), self.vars);
        self.zero.push(row);
        self
    }

    /// Exact check that `z` satisfies every row.
    pub fn is_satisfied_by(&self, z: &[Rational]) -> bool {
        z.len() == self.vars
            && self.strict.iter().all(|r| dot(r, z).is_positive())
            && self.nonneg.iter().all(|r| !dot(r, z).is_negative())
            && self.zero.iter().all(|r| dot(r, z).is_zero())
    }
}

/// Multipliers proving that a [`SignConstrainedSystem`] has no solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfeasibilityCertificate {
    #[serde(serialize_with = "super::serialize_rationals")]
    pub strict: Vec<Rational>,
    #[serde(serialize_with = "super::serialize_rationals")]
    pub nonneg: Vec<Rational>,
    #[serde(serialize_with = "super::serialize_rationals")]
    pub zero: Vec<Rational>,
}

impl InfeasibilityCertificate {
    /// Exact re-check of the certificate against `sys`.
    pub fn verify(&self, sys: &SignConstrainedSystem) -> bool {
        if self.strict.len() != sys.strict.len()
            || self.nonneg.len() != sys.nonneg.len()
            || self.zero.len() != sys.zero.len()
        {
            return false;
        }
        if self.strict.iter().any(Signed::is_negative)
            || self.nonneg.iter().any(Signed::is_negative)
            || self.strict.iter().all(Zero::is_zero)
        {
            return false;
        }
        let mut combo = vec![Rational::zero(); sys.vars];
        let blocks = [
            (&sys.strict, &self.strict),
            (&sys.nonneg, &self.nonneg),
            (&sys.zero, &self.zero),
        ];
        for (rows, ys) in blocks {
            for (row, y) in rows.iter().zip(ys) {
                if y.is_zero() {
                    continue;
                }
                for (c, a) in combo.iter_mut().zip(row) {
                    *c += y * a;
                }
            }
        }
        combo.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(InfeasibilityCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(z) => Some(z),
            Feasibility::Infeasible(_) => None,
        }
    }

    pub fn into_witness(self) -> Option<Vec<Rational>> {
        match self {
            Feasibility::Feasible(z) => Some(z),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// Decides the system exactly; see the module docs for the method.
pub fn feasible(sys: &SignConstrainedSystem) -> Feasibility {
    let n = sys.vars;
    if sys.strict.is_empty() {
        return Feasibility::Feasible(vec![Rational::zero(); n]);
    }
    // Variables: p (n), q (n), t (1), with z = p - q.
    let nv = 2 * n + 1;
    let t_col = 2 * n;
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let push_diff = |rows: &mut Vec<(Vec<Rational>, Rational)>, a: &[Rational], sign: i64, t: bool| {
        // sign * (a·p - a·q) [+ t] <= 0
        let mut r = vec![Rational::zero(); nv];
        let s = Rational::from_integer(sign.into());
        for j in 0..n {
            r[j] = &a[j] * &s;
            r[n + j] = -&r[j];
        }
        if t {
            r[t_col] = Rational::one();
        }
        rows.push((r, Rational::zero()));
    };
    for a in &sys.strict {
        push_diff(&mut rows, a, -1, true);
    }
    for a in &sys.nonneg {
        push_diff(&mut rows, a, -1, false);
    }
    for a in &sys.zero {
        push_diff(&mut rows, a, 1, false);
        push_diff(&mut rows, a, -1, false);
    }
    for j in 0..n {
        let mut r = vec![Rational::zero(); nv];
        r[j] = Rational::one();
        r[n + j] = Rational::one();
        rows.push((r, Rational::one()));
    }
    let mut r = vec![Rational::zero(); nv];
    r[t_col] = Rational::one();
    rows.push((r, Rational::one()));

    let mut c = vec![Rational::zero(); nv];
    c[t_col] = Rational::one();
    let sol = maximize(&rows, &c);

    if sol.value.is_positive() {
        let z: Vec<Rational> = (0..n).map(|j| &sol.x[j] - &sol.x[n + j]).collect();
        debug_assert!(sys.is_satisfied_by(&z));
        return Feasibility::Feasible(z);
    }

    let ns = sys.strict.len();
    let nn = sys.nonneg.len();
    let nz = sys.zero.len();
    let y = &sol.duals;
    let cert = InfeasibilityCertificate {
        strict: y[..ns].to_vec(),
        nonneg: y[ns..ns + nn].to_vec(),
        zero: (0..nz)
            .map(|i| &y[ns + nn + 2 * i + 1] - &y[ns + nn + 2 * i])
            .collect(),
    };
    debug_assert!(cert.verify(sys), "simplex produced an invalid certificate");
    Feasibility::Infeasible(cert)
}

struct LpSolution {
    value: Rational,
    x: Vec<Rational>,
    duals: Vec<Rational>,
}

/// Maximizes `c·x` subject to `A x <= b`, `x >= 0`, with `b >= 0` so the slack
/// basis is feasible. Bland's rule guarantees termination on the (heavily
/// degenerate) homogeneous systems produced above.
fn maximize(rows: &[(Vec<Rational>, Rational)], c: &[Rational]) -> LpSolution {
    let m = rows.len();
    let nv = c.len();
    let width = nv + m + 1;
    let rhs = nv + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (a, b)) in rows.iter().enumerate() {
        debug_assert!(!b.is_negative());
        let mut r = vec![Rational::zero(); width];
        r[..nv].clone_from_slice(a);
        r[nv + i] = Rational::one();
        r[rhs] = b.clone();
        tab.push(r);
    }
    let mut obj = vec![Rational::zero(); width];
    for j in 0..nv {
        obj[j] = -c[j].clone();
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    loop {
        let Some(enter) = (0..nv + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let a = &tab[i][enter];
            if a.is_positive() {
                let ratio = &tab[i][rhs] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pr, _) = leave.expect("objective is bounded by construction");
        pivot(&mut tab, &mut obj, pr, enter);
        basis[pr] = enter;
    }

    let mut x = vec![Rational::zero(); nv];
    for (i, &b) in basis.iter().enumerate() {
        if b < nv {
            x[b] = tab[i][rhs].clone();
        }
    }
    LpSolution {
        value: obj[rhs].clone(),
        x,
        duals: obj[nv..nv + m].to_vec(),
    }
}

fn pivot(tab: &mut [Vec<Rational>], obj: &mut [Rational], pr: usize, pc: usize) {
    let inv = tab[pr][pc].recip();
    for v in tab[pr].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    let prow = tab[pr].clone();
    let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for &j in &nz {
            row[j] -= &f * &prow[j];
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for &j in &nz {
            obj[j] -= &f * &prow[j];
        }
    }
}
