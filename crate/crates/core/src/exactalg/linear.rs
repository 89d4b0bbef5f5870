use num_traits::Zero;

use super::matrix::QMatrix;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Solution set of a linear system `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    /// `b` is not in the image of `A`.
    Empty,
    /// `particular + span(kernel)`; the kernel basis is in reduced echelon form.
    Affine {
        particular: Vec<Rat>,
        kernel: Vec<Vec<Rat>>,
    },
}

impl SolutionSet {
    pub fn particular(&self) -> Option<&[Rat]> {
        match self {
            SolutionSet::Empty => None,
            SolutionSet::Affine { particular, .. } => Some(particular),
        }
    }

    pub fn kernel(&self) -> &[Vec<Rat>] {
        match self {
            SolutionSet::Empty => &[],
            SolutionSet::Affine { kernel, .. } => kernel,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, SolutionSet::Affine { kernel, .. } if kernel.is_empty())
    }
}

/// Solves `A x = b` exactly. Free variables of the particular solution are set to zero.
pub fn solve_linear(a: &QMatrix, b: &[Rat]) -> Result<SolutionSet> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug = QMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(SolutionSet::Empty);
    }
    let mut particular = vec![Rat::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = r[(row, n)].clone();
    }
    Ok(SolutionSet::Affine {
        particular,
        kernel: kernel_from_rref(&r, &pivots, n),
    })
}

/// Basis of the null space of `A`, in reduced echelon form.
pub fn kernel(a: &QMatrix) -> Vec<Vec<Rat>> {
    let (r, pivots) = a.rref();
    kernel_from_rref(&r, &pivots, a.cols())
}

fn kernel_from_rref(r: &QMatrix, pivots: &[usize], n: usize) -> Vec<Vec<Rat>> {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let raw: Vec<Vec<Rat>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = super::rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect();
    echelon_basis(n, &raw)
}

/// Nonzero rows of the reduced row echelon form of the stacked vectors.
pub fn echelon_basis(len: usize, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::from_rows(vectors.to_vec()).expect("equal-length vectors");
    debug_assert_eq!(m.cols(), len);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn rank_of(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors.to_vec())
        .expect("equal-length vectors")
        .rank()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

/// A linear subspace of `Q^n` kept as a reduced echelon basis, so that membership and
/// coordinates are read off the pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::spanned_by(
            ambient,
            &(0..ambient)
                .map(|i| super::rat::unit_vector(ambient, i))
                .collect::<Vec<_>>(),
        )
    }

    pub fn spanned_by(ambient: usize, vectors: &[Vec<Rat>]) -> Self {
        let basis = echelon_basis(ambient, vectors);
        let pivots = basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Coordinates of `v` with respect to the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                *r -= c * x;
            }
        }
        is_zero_vec(&residual).then_some(coords)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Adds `v` to the span; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        if self.contains(v) {
            return false;
        }
        let mut vectors = self.basis.clone();
        vectors.push(v.to_vec());
        *self = Subspace::spanned_by(self.ambient, &vectors);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::spanned_by(self.ambient, &vectors)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve sum a_i u_i = sum b_j w_j.
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut columns = self.basis.clone();
        columns.extend(other.basis.iter().map(|w| vec_neg(w)));
        let m = QMatrix::from_columns(self.ambient, &columns);
        let vectors: Vec<Vec<Rat>> = kernel(&m)
            .into_iter()
            .map(|k| {
                let mut acc = vec![Rat::zero(); self.ambient];
                for (c, u) in k.iter().zip(&self.basis) {
                    for (a, x) in acc.iter_mut().zip(u) {
                        *a += c * x;
                    }
                }
                acc
            })
            .collect();
        Subspace::spanned_by(self.ambient, &vectors)
    }
}
