use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{to_f64, Rational, RationalMatrix};

/// Sparse multivariate polynomial with rational coefficients. Monomials are
/// exponent vectors over a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&exponents).unwrap_or_else(Rational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(exponents, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Self::zero(self.vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            sum += t;
        }
        sum
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| to_f64(c) * point.iter().zip(e).map(|(x, &k)| x.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// Every coefficient is nonnegative, so the value is `≥ 0` on the positive orthant.
    pub fn coefficients_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Every coefficient is positive and there is at least one term.
    pub fn coefficients_positive(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    pub fn display_with<'a>(&'a self, symbols: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { p: self, symbols }
    }
}

struct PolyDisplay<'a> {
    p: &'a Polynomial,
    symbols: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = self.symbols.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Square matrix of polynomials in named parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricMatrix {
    symbols: Vec<String>,
    n: usize,
    entries: Vec<Polynomial>,
}

impl ParametricMatrix {
    pub fn zeros(symbols: Vec<String>, n: usize) -> Self {
        let vars = symbols.len();
        ParametricMatrix { symbols, n, entries: vec![Polynomial::zero(vars); n * n] }
    }

    /// `Σ_s λ_s M_s` for constant matrices `M_s`, one per symbol.
    pub fn linear_combination(symbols: Vec<String>, mats: &[RationalMatrix]) -> Self {
        assert_eq!(symbols.len(), mats.len());
        let n = mats.first().map_or(0, |m| m.rows());
        let mut out = Self::zeros(symbols, n);
        let vars = out.symbols.len();
        for (s, m) in mats.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let t = Polynomial::var(vars, s).scale(&m[(i, j)]);
                    out.entries[i * n + j] = out.entries[i * n + j].add(&t);
                }
            }
        }
        out
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn neg(&self) -> Self {
        ParametricMatrix {
            symbols: self.symbols.clone(),
            n: self.n,
            entries: self.entries.iter().map(|p| p.neg()).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.get(i, j).eval(point);
            }
        }
        m
    }

    /// Constant matrix with no parameters.
    pub fn constant(m: &RationalMatrix) -> Self {
        let n = m.rows();
        let mut out = Self::zeros(Vec::new(), n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = Polynomial::constant(0, m[(i, j)].clone());
            }
        }
        out
    }

    /// Restriction to the principal submatrix on `set`.
    pub fn principal_submatrix(&self, set: &[usize]) -> Self {
        let k = set.len();
        let mut out = Self::zeros(self.symbols.clone(), k);
        for (a, &i) in set.iter().enumerate() {
            for (b, &j) in set.iter().enumerate() {
                out.entries[a * k + b] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Determinant of the submatrix on `rows` x `cols`; `cols` must be
    /// strictly increasing and the matrix at most 63 x 63.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        assert_eq!(rows.len(), cols.len());
        assert!(cols.windows(2).all(|w| w[0] < w[1]), "columns must be increasing");
        let mask = cols.iter().fold(0u64, |m, &c| m | (1 << c));
        self.minor_rec(rows, mask, &mut HashMap::new())
    }

    pub fn principal_minor(&self, set: &[usize]) -> Polynomial {
        self.minor(set, set)
    }

    /// Every minor with row list `rows`, keyed by the column bit mask.
    pub fn minors_of_rows(&self, rows: &[usize]) -> HashMap<u64, Polynomial> {
        assert!(self.n < 64);
        let mut memo = HashMap::new();
        let mut out = HashMap::new();
        for mask in 0u64..(1u64 << self.n) {
            if mask.count_ones() as usize == rows.len() {
                let p = self.minor_rec(rows, mask, &mut memo);
                out.insert(mask, p);
            }
        }
        out
    }

    // Laplace expansion along the next row. With the rows fixed, the set of
    // remaining columns identifies the subproblem.
    fn minor_rec(&self, rows: &[usize], mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::constant(self.symbols.len(), Rational::one());
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let row = rows[rows.len() - mask.count_ones() as usize];
        let mut acc = Polynomial::zero(self.symbols.len());
        let mut pos = 0;
        for c in 0..self.n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let a = self.get(row, c);
            if !a.is_zero() {
                let t = a.mul(&self.minor_rec(rows, mask & !(1 << c), memo));
                acc = if pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Entries rendered with the parameter names, row by row.
    pub fn display_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).display_with(&self.symbols).to_string()).collect())
            .collect()
    }
}
