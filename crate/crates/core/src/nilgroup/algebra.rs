use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{
    int, is_zero_vec, solve_linear, unit_vector, zero_vec, Coefficient, QMatrix, Rat, SolutionSet,
    Subspace,
};

/// Largest nilpotency class the group law supports.
pub const MAX_CLASS: usize = 6;

/// A rational nilpotent Lie algebra on a weighted basis `e_1, ..., e_n`.
///
/// Structure constants satisfy `[e_i, e_j] = sum_k c_{ij}^k e_k` with `c_{ij}^k = 0` unless
/// `weight(k) >= weight(i) + weight(j)`, which bounds the nilpotency class by the largest weight.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NilLieAlgebra {
    dim: usize,
    weights: Vec<u32>,
    consts: Vec<Rat>,
    class: usize,
}

impl NilLieAlgebra {
    /// Validates antisymmetry, the Jacobi identity and grading compatibility.
    pub fn new(weights: Vec<u32>, consts: Vec<Rat>) -> Result<Self> {
        let n = weights.len();
        if consts.len() != n * n * n {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants, got {}",
                n * n * n,
                consts.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidAlgebra("weights must be positive".into()));
        }
        let mut alg = NilLieAlgebra {
            dim: n,
            weights,
            consts,
            class: 0,
        };
        alg.validate()?;
        alg.class = alg.compute_class();
        if alg.class > MAX_CLASS {
            return Err(Error::InvalidAlgebra(format!(
                "nilpotency class {} exceeds the supported maximum {MAX_CLASS}",
                alg.class
            )));
        }
        Ok(alg)
    }

    /// Builds the algebra from the nonzero brackets `[e_i, e_j] = v` with `i < j`.
    pub fn from_brackets(weights: Vec<u32>, brackets: &[(usize, usize, Vec<Rat>)]) -> Result<Self> {
        let n = weights.len();
        let mut consts = vec![Rat::zero(); n * n * n];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || v.len() != n {
                return Err(Error::InvalidAlgebra(format!("bracket [e{},e{}] out of range", i + 1, j + 1)));
            }
            if i == j {
                if !is_zero_vec(v) {
                    return Err(Error::InvalidAlgebra(format!("[e{0},e{0}] must vanish", i + 1)));
                }
                continue;
            }
            for (k, c) in v.iter().enumerate() {
                consts[(i * n + j) * n + k] = c.clone();
                consts[(j * n + i) * n + k] = -c.clone();
            }
        }
        Self::new(weights, consts)
    }

    pub fn abelian(n: usize) -> Self {
        Self::new(vec![1; n], vec![Rat::zero(); n * n * n]).expect("abelian algebra")
    }

    /// The three-dimensional Heisenberg algebra `[e1, e2] = e3` with weights 1, 1, 2.
    pub fn heisenberg() -> Self {
        Self::from_brackets(vec![1, 1, 2], &[(0, 1, unit_vector(3, 2))]).expect("Heisenberg algebra")
    }

    /// Strictly upper triangular `m x m` matrices, basis `E_{ij}` (i < j) in row-major order
    /// with weight `j - i`.
    pub fn strictly_upper(m: usize) -> Self {
        let index: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect();
        let n = index.len();
        let pos = |i: usize, j: usize| index.iter().position(|&p| p == (i, j));
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let (i, j) = index[a];
                let (k, l) = index[b];
                let mut v = zero_vec(n);
                if j == k {
                    v[pos(i, l).unwrap()] += int(1);
                }
                if l == i {
                    v[pos(k, j).unwrap()] -= int(1);
                }
                if !is_zero_vec(&v) {
                    brackets.push((a, b, v));
                }
            }
        }
        let weights = index.iter().map(|&(i, j)| (j - i) as u32).collect();
        Self::from_brackets(weights, &brackets).expect("strictly upper triangular algebra")
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if *c != -self.c(j, i, k).clone() {
                        return Err(Error::InvalidAlgebra(format!(
                            "bracket not antisymmetric at [e{},e{}]",
                            i + 1,
                            j + 1
                        )));
                    }
                    if !c.is_zero() && self.weights[k] < self.weights[i] + self.weights[j] {
                        return Err(Error::InvalidAlgebra(format!(
                            "[e{},e{}] has an e{} component below the weight filtration",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit_vector(n, i), unit_vector(n, j), unit_vector(n, k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    let sum: Vec<Rat> = (0..n).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if !is_zero_vec(&sum) {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails for e{}, e{}, e{}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn c(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        self.c(i, j, k)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Largest basis weight; bounds the weighted degree of the group law.
    pub fn depth(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Nilpotency class: length of the lower central series.
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(Zero::is_zero)
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        self.bracket_generic(x, y)
    }

    pub fn bracket_generic<T: Coefficient>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.dim;
        assert!(x.len() == n && y.len() == n, "vector length");
        let Some(zero) = x.first().map(Coefficient::c_zero) else {
            return Vec::new();
        };
        let mut out = vec![zero; n];
        for i in 0..n {
            if x[i].c_is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || y[j].c_is_zero() {
                    continue;
                }
                let mut prod: Option<T> = None;
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    let p = prod.get_or_insert_with(|| x[i].c_mul(&y[j]));
                    out[k] = out[k].c_add(&p.c_scale(c));
                }
            }
        }
        out
    }

    /// Matrix of `ad_x = [x, -]`.
    pub fn ad_matrix(&self, x: &[Rat]) -> QMatrix {
        let cols: Vec<Vec<Rat>> = (0..self.dim)
            .map(|j| self.bracket(x, &unit_vector(self.dim, j)))
            .collect();
        QMatrix::from_columns(self.dim, &cols)
    }

    /// Terms `g_1 = g, g_{k+1} = [g, g_k]`, ending with the zero subspace.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let n = self.dim;
        let basis: Vec<Vec<Rat>> = (0..n).map(|i| unit_vector(n, i)).collect();
        lower_central_series_of(n, &basis, |a, b| self.bracket(a, b))
    }

    fn compute_class(&self) -> usize {
        self.lower_central_series().len().saturating_sub(1)
    }

    /// Largest `k` with `v` in the k-th term of the lower central series (0 for `v = 0`
    /// is reported as the series length).
    pub fn lcs_depth(&self, series: &[Subspace], v: &[Rat]) -> usize {
        let mut depth = 0;
        for (k, s) in series.iter().enumerate() {
            if s.contains(v) {
                depth = k + 1;
            }
        }
        depth
    }

    /// True when the matrix maps each weight filtration step `span{e_j : w_j >= w}` into itself.
    pub fn preserves_filtration(&self, m: &QMatrix) -> bool {
        (0..self.dim).all(|k| {
            (0..self.dim).all(|j| self.weights[j] <= self.weights[k] || m[(k, j)].is_zero())
        })
    }

    /// Checks `D[x, y] = [Dx, Dy]` on basis pairs for a linear map into `target`.
    pub fn preserves_brackets(&self, target: &NilLieAlgebra, d: &QMatrix) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = d.apply(&self.bracket(&unit_vector(n, i), &unit_vector(n, j)));
                let rhs = target.bracket(&d.column(i), &d.column(j));
                lhs == rhs
            })
        })
    }
}

/// Lower central series of the Lie algebra spanned by `basis` inside some ambient bracket space.
pub(crate) fn lower_central_series_of(
    ambient: usize,
    basis: &[Vec<Rat>],
    bracket: impl Fn(&[Rat], &[Rat]) -> Vec<Rat>,
) -> Vec<Subspace> {
    let top = Subspace::spanned_by(ambient, basis);
    let mut series = vec![top.clone()];
    loop {
        let last = series.last().unwrap();
        if last.dim() == 0 {
            break;
        }
        let gens: Vec<Vec<Rat>> = top
            .basis()
            .iter()
            .flat_map(|a| last.basis().iter().map(|b| bracket(a, b)).collect::<Vec<_>>())
            .filter(|v| !is_zero_vec(v))
            .collect();
        let next = Subspace::spanned_by(ambient, &gens);
        if next.dim() == last.dim() {
            // not nilpotent; caller validates
            break;
        }
        series.push(next);
    }
    series
}

/// An abstract nilpotent Lie algebra rebuilt from a bracket-closed subspace, together with the
/// basis (in ambient coordinates) its coordinates refer to.
#[derive(Debug, Clone)]
pub struct AdaptedSubalgebra {
    pub algebra: NilLieAlgebra,
    pub basis: Vec<Vec<Rat>>,
}

impl AdaptedSubalgebra {
    /// Coordinates of an ambient vector in the adapted basis, if it lies in the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if self.basis.is_empty() {
            return is_zero_vec(v).then(Vec::new);
        }
        let m = QMatrix::from_columns(v.len(), &self.basis);
        match solve_linear(&m, v).ok()? {
            SolutionSet::Empty => None,
            SolutionSet::Affine { particular, .. } => Some(particular),
        }
    }

    /// Ambient vector with the given adapted coordinates.
    pub fn embed(&self, coords: &[Rat]) -> Vec<Rat> {
        let len = self.basis.first().map_or(0, Vec::len);
        let mut out = zero_vec(len);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}

/// Rebuilds the span of `vectors` as an abstract algebra whose weights come from its own lower
/// central series, so that every automorphism preserves the weight filtration.
pub fn adapted_subalgebra(
    ambient: usize,
    vectors: &[Vec<Rat>],
    bracket: impl Fn(&[Rat], &[Rat]) -> Vec<Rat>,
) -> Result<AdaptedSubalgebra> {
    let series = lower_central_series_of(ambient, vectors, &bracket);
    if series.last().is_some_and(|s| s.dim() > 0) {
        return Err(Error::InvalidAlgebra("span is not a nilpotent Lie algebra".into()));
    }
    let top = &series[0];
    for a in top.basis() {
        for b in top.basis() {
            if !top.contains(&bracket(a, b)) {
                return Err(Error::InvalidAlgebra("span is not closed under the bracket".into()));
            }
        }
    }
    // deepest layer first, then extend
    let mut chosen = Subspace::zero(ambient);
    let mut layers: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); series.len()];
    for k in (0..series.len()).rev() {
        for v in series[k].basis() {
            if chosen.insert(v) {
                layers[k].push(v.clone());
            }
        }
    }
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    for (k, layer) in layers.into_iter().enumerate() {
        for v in layer {
            basis.push(v);
            weights.push(k as u32 + 1);
        }
    }
    let n = basis.len();
    let holder = AdaptedSubalgebra {
        algebra: NilLieAlgebra::abelian(0),
        basis: basis.clone(),
    };
    let mut consts = vec![Rat::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let br = bracket(&basis[i], &basis[j]);
            if is_zero_vec(&br) {
                continue;
            }
            let coords = holder
                .coordinates(&br)
                .ok_or_else(|| Error::Internal("bracket left the subalgebra".into()))?;
            for (k, c) in coords.into_iter().enumerate() {
                consts[(i * n + j) * n + k] = c;
            }
        }
    }
    Ok(AdaptedSubalgebra {
        algebra: NilLieAlgebra::new(weights, consts)?,
        basis,
    })
}

impl fmt::Debug for NilLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilLieAlgebra(dim {}, weights {:?}", self.dim, self.weights)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v: Vec<Rat> = (0..self.dim).map(|k| self.c(i, j, k).clone()).collect();
                if !is_zero_vec(&v) {
                    write!(f, ", [e{},e{}]=", i + 1, j + 1)?;
                    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                    write!(f, "({})", parts.join(","))?;
                }
            }
        }
        write!(f, ")")
    }
}
