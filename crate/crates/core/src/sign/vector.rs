use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of(v: &Rational) -> Sign {
        if v.is_positive() {
            Sign::Plus
        } else if v.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    pub fn neg(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }

    /// `+1`, `0` or `-1`.
    pub fn as_rational(self) -> Rational {
        Rational::from_integer(match self {
            Sign::Minus => (-1).into(),
            Sign::Zero => 0.into(),
            Sign::Plus => 1.into(),
        })
    }

    /// The partial order with `0 < -` and `0 < +`.
    pub fn leq(self, other: Sign) -> bool {
        self == Sign::Zero || self == other
    }
}

/// An element of `{-, 0, +}^d`, written as a string such as `"+0-"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(entries: Vec<Sign>) -> Self {
        SignVector(entries)
    }

    pub fn zero(d: usize) -> Self {
        SignVector(vec![Sign::Zero; d])
    }

    pub fn of(values: &[Rational]) -> Self {
        SignVector(values.iter().map(Sign::of).collect())
    }

    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != Sign::Zero).collect()
    }

    pub fn neg(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.neg()).collect())
    }

    /// Componentwise product `σ ⊙ τ`.
    pub fn hadamard(&self, other: &SignVector) -> SignVector {
        assert_eq!(self.len(), other.len(), "sign vectors of different length");
        SignVector(self.0.iter().zip(&other.0).map(|(a, b)| a.mul(*b)).collect())
    }

    /// `self ≤ other` componentwise under `0 < -`, `0 < +`.
    pub fn leq(&self, other: &SignVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }

    /// `σ ⊙ τ ≥ 0`.
    pub fn harmonious(&self, other: &SignVector) -> bool {
        self.hadamard(other).0.iter().all(|&s| s != Sign::Minus)
    }

    /// `σ ⊙ τ > 0`: harmonious and overlapping.
    pub fn conformal_overlap(&self, other: &SignVector) -> bool {
        let h = self.hadamard(other);
        h.0.iter().all(|&s| s != Sign::Minus) && h.0.contains(&Sign::Plus)
    }

    /// `σ ⊥ τ`: the product vanishes or contains both signs.
    pub fn orthogonal(&self, other: &SignVector) -> bool {
        let h = self.hadamard(other);
        h.is_zero() || (h.0.contains(&Sign::Plus) && h.0.contains(&Sign::Minus))
    }

    /// All `3^d` sign vectors of length `d`, in lexicographic order.
    pub fn all(d: usize) -> impl Iterator<Item = SignVector> {
        let total = 3usize.pow(d as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![Sign::Minus; d];
            for slot in v.iter_mut().rev() {
                *slot = [Sign::Minus, Sign::Zero, Sign::Plus][code % 3];
                code /= 3;
            }
            SignVector(v)
        })
    }

    /// All `σ ≤ self`.
    pub fn below(&self) -> Vec<SignVector> {
        let supp = self.support();
        (0..1usize << supp.len())
            .map(|mask| {
                let mut v = SignVector::zero(self.len());
                for (b, &i) in supp.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        v.0[i] = self.0[i];
                    }
                }
                v
            })
            .collect()
    }

    /// All `σ ≥ self`.
    pub fn above(&self) -> Vec<SignVector> {
        let free: Vec<usize> = (0..self.len()).filter(|&i| self.0[i] == Sign::Zero).collect();
        let mut out = Vec::new();
        for fill in SignVector::all(free.len()) {
            let mut v = self.clone();
            for (k, &i) in free.iter().enumerate() {
                v.0[i] = fill.0[k];
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for SignVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '-' => Ok(Sign::Minus),
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Plus),
                other => Err(format!("invalid sign character {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMode {
    Lower,
    Upper,
    Total,
}

/// A finite set of sign vectors of a common length.
///
/// Equality compares members only, not provenance.
#[derive(Clone, Debug)]
pub struct SignSet {
    dim: usize,
    members: BTreeSet<SignVector>,
    provenance: String,
}

impl PartialEq for SignSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.members == other.members
    }
}

impl Eq for SignSet {}

impl SignSet {
    pub fn new(dim: usize, provenance: impl Into<String>) -> Self {
        SignSet { dim, members: BTreeSet::new(), provenance: provenance.into() }
    }

    pub fn from_members<I: IntoIterator<Item = SignVector>>(dim: usize, members: I) -> Self {
        let mut s = SignSet::new(dim, "explicit");
        for m in members {
            s.insert(m);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = p.into();
        self
    }

    pub fn insert(&mut self, v: SignVector) -> bool {
        assert_eq!(v.len(), self.dim, "sign vector has wrong length");
        self.members.insert(v)
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.members.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignVector> {
        self.members.iter()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &SignVector> {
        self.members.iter().filter(|v| !v.is_zero())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &SignSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SignSet) -> SignSet {
        let mut s = SignSet::new(self.dim, format!("{} ∩ {}", self.provenance, other.provenance));
        s.members = self.members.intersection(&other.members).cloned().collect();
        s
    }

    pub fn union(&self, other: &SignSet) -> SignSet {
        let mut s = SignSet::new(self.dim, format!("{} ∪ {}", self.provenance, other.provenance));
        s.members = self.members.union(&other.members).cloned().collect();
        s
    }

    pub fn is_closed_under_negation(&self) -> bool {
        self.members.iter().all(|v| self.members.contains(&v.neg()))
    }

    /// Lower closure ranges over every member; upper and total closures over
    /// nonzero members only.
    pub fn closure(&self, mode: ClosureMode) -> SignSet {
        let mut out = SignSet::new(self.dim, format!("{}{}", self.provenance, match mode {
            ClosureMode::Lower => "↓",
            ClosureMode::Upper => "↑",
            ClosureMode::Total => "↕",
        }));
        for t in &self.members {
            let lower = mode == ClosureMode::Lower || (mode == ClosureMode::Total && !t.is_zero());
            let upper = mode != ClosureMode::Lower && !t.is_zero();
            if lower {
                out.members.extend(t.below());
            }
            if upper {
                out.members.extend(t.above());
            }
        }
        out
    }

    /// Membership in the closure without materializing it.
    pub fn closure_contains(&self, mode: ClosureMode, s: &SignVector) -> bool {
        self.members.iter().any(|t| match mode {
            ClosureMode::Lower => s.leq(t),
            ClosureMode::Upper => !t.is_zero() && t.leq(s),
            ClosureMode::Total => !t.is_zero() && (s.leq(t) || t.leq(s)),
        })
    }

    /// `𝒯⊥`: all sign vectors orthogonal to every member.
    pub fn orthogonal_complement(&self) -> SignSet {
        SignSet {
            dim: self.dim,
            members: SignVector::all(self.dim)
                .filter(|s| self.members.iter().all(|t| s.orthogonal(t)))
                .collect(),
            provenance: format!("({})⊥", self.provenance),
        }
    }
}
