use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{QMatrix, Rat, Subspace};

use super::algebra::NilLieAlgebra;
use super::point::{same_algebra, AlgebraRef, GroupPoint};

/// A Lie algebra morphism `D`, acting on the group as `exp . D . log`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieMorphism {
    source: AlgebraRef,
    target: AlgebraRef,
    matrix: QMatrix,
}

impl LieMorphism {
    /// Checks shape and bracket preservation.
    pub fn new(source: &AlgebraRef, target: &AlgebraRef, matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        if !source.preserves_brackets(target, &matrix) {
            return Err(Error::InvalidMorphism("matrix does not preserve brackets".into()));
        }
        Ok(LieMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    /// For matrices known to be morphisms, e.g. products of morphisms.
    pub(crate) fn new_unchecked(source: &AlgebraRef, target: &AlgebraRef, matrix: QMatrix) -> Self {
        LieMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(algebra: &AlgebraRef) -> Self {
        LieMorphism {
            source: algebra.clone(),
            target: algebra.clone(),
            matrix: QMatrix::identity(algebra.dim()),
        }
    }

    pub fn zero(source: &AlgebraRef, target: &AlgebraRef) -> Self {
        LieMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: QMatrix::zeros(target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &AlgebraRef {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef {
        &self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply_vec(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.apply(v)
    }

    pub fn apply(&self, x: &GroupPoint) -> Result<GroupPoint> {
        if !same_algebra(x.algebra(), &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        GroupPoint::new(&self.target, self.matrix.apply(x.coords()))
    }

    /// `self . inner`.
    pub fn compose(&self, inner: &LieMorphism) -> Result<LieMorphism> {
        if !same_algebra(&inner.target, &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(LieMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.dot(&inner.matrix),
        })
    }

    pub fn inverse(&self) -> Result<LieMorphism> {
        Ok(LieMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_square() && self.matrix.is_invertible()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// The image `D(n_1)` as a subspace of the target algebra.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vec<Rat>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        Subspace::spanned_by(self.target.dim(), &cols)
    }
}

/// The group morphism `exp . D . log` applied to a point.
pub fn lie_morphism_apply(d: &LieMorphism, x: &GroupPoint) -> Result<GroupPoint> {
    d.apply(x)
}

/// The unique Lie morphism whose group map sends each generator to its image.
///
/// The logs of the generators must span the source algebra. The linear system `D log g_i =
/// log h_i` is solved exactly and the solution is then checked for bracket preservation.
pub fn extend_from_lattice(gen_points: &[GroupPoint], images: &[GroupPoint]) -> Result<LieMorphism> {
    if gen_points.len() != images.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} generators but {} images",
            gen_points.len(),
            images.len()
        )));
    }
    let (Some(first), Some(first_img)) = (gen_points.first(), images.first()) else {
        return Err(Error::Underdetermined { rank: 0, dim: 0 });
    };
    let source = first.algebra().clone();
    let target = first_img.algebra().clone();
    if gen_points.iter().any(|g| !same_algebra(g.algebra(), &source))
        || images.iter().any(|g| !same_algebra(g.algebra(), &target))
    {
        return Err(Error::AlgebraMismatch);
    }
    let matrix = solve_images(&source, &target, gen_points, images)?;
    if !source.preserves_brackets(&target, &matrix) {
        return Err(Error::InvalidMorphism(
            "the unique linear extension does not preserve brackets".into(),
        ));
    }
    Ok(LieMorphism {
        source,
        target,
        matrix,
    })
}

fn solve_images(
    source: &NilLieAlgebra,
    target: &NilLieAlgebra,
    gen_points: &[GroupPoint],
    images: &[GroupPoint],
) -> Result<QMatrix> {
    let n = source.dim();
    let m = target.dim();
    // rows of X are generator logs; D^T solves X D^T = Y
    let x = QMatrix::from_rows(gen_points.iter().map(|g| g.coords().to_vec()).collect())?;
    let y = QMatrix::from_rows(images.iter().map(|g| g.coords().to_vec()).collect())?;
    let rank = x.rank();
    if rank < n {
        return Err(Error::Underdetermined { rank, dim: n });
    }
    let mut dt = QMatrix::zeros(n, m);
    for k in 0..m {
        let sol = crate::exactalg::solve_linear(&x, &y.column(k))?;
        let Some(col) = sol.particular() else {
            return Err(Error::Inconsistent(format!(
                "images are not the restriction of a linear map (coordinate {})",
                k + 1
            )));
        };
        for (i, v) in col.iter().enumerate() {
            dt[(i, k)] = v.clone();
        }
    }
    Ok(dt.transpose())
}

impl fmt::Debug for LieMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieMorphism{}", self.matrix)
    }
}
