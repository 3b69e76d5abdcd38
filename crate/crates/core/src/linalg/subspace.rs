use num_traits::{Signed, Zero};

use super::matrix::dot;
use super::{LinalgError, Rational, RationalMatrix};

/// A linear subspace of `Q^ambient` given by a list of independent spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    /// Span of arbitrary vectors; dependent vectors are dropped.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let m = RationalMatrix::from_columns(ambient, vectors);
        SubspaceBasis {
            ambient,
            vectors: m.image_basis(),
        }
    }

    /// Column space of a matrix.
    pub fn image_of(m: &RationalMatrix) -> Self {
        SubspaceBasis {
            ambient: m.rows(),
            vectors: m.image_basis(),
        }
    }

    /// Null space of a matrix.
    pub fn kernel_of(m: &RationalMatrix) -> Self {
        SubspaceBasis {
            ambient: m.cols(),
            vectors: m.kernel_basis(),
        }
    }

    /// Uses `vectors` verbatim; fails if they are dependent.
    pub fn from_independent(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(LinalgError::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        let m = RationalMatrix::from_columns(ambient, &vectors);
        if m.rank() != vectors.len() {
            return Err(LinalgError::DependentColumns);
        }
        Ok(SubspaceBasis { ambient, vectors })
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: RationalMatrix::identity(ambient).columns(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    /// The `ambient x dim` matrix with the basis vectors as columns.
    pub fn matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient, &self.vectors)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut cols = self.vectors.clone();
        cols.push(v.to_vec());
        RationalMatrix::from_columns(self.ambient, &cols).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    /// Equality of spans, by mutual containment.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other)
    }

    pub fn orthogonal_complement(&self) -> SubspaceBasis {
        if self.vectors.is_empty() {
            return SubspaceBasis::full(self.ambient);
        }
        SubspaceBasis::kernel_of(&self.matrix().transpose())
    }

    /// Rescales every basis vector by a positive rational.
    pub fn scaled(&self, factors: &[Rational]) -> SubspaceBasis {
        assert_eq!(factors.len(), self.dim());
        assert!(factors.iter().all(Signed::is_positive));
        SubspaceBasis {
            ambient: self.ambient,
            vectors: self
                .vectors
                .iter()
                .zip(factors)
                .map(|(v, f)| v.iter().map(|x| x * f).collect())
                .collect(),
        }
    }
}

/// Gram–Schmidt without normalization, so the result stays rational.
///
/// Columns of the result are pairwise orthogonal and span the same space.
/// Scaling a basis column by a positive rational maps every orthant of the
/// parameter space onto itself, which is all the sign conditions need.
pub fn orthogonal_basis(b: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
    let m = b.matrix();
    if m.rank() != b.dim() {
        return Err(LinalgError::DependentColumns);
    }
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(b.dim());
    for v in b.vectors() {
        let mut w = v.clone();
        for u in &out {
            let c = dot(&w, u) / dot(u, u);
            if c.is_zero() {
                continue;
            }
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &c * ui;
            }
        }
        out.push(w);
    }
    Ok(SubspaceBasis {
        ambient: b.ambient(),
        vectors: out,
    })
}
