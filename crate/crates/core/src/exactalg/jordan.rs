use super::matrix::QMatrix;
use super::rat::{factorial, int, Rat};
use super::upoly::char_poly;
use crate::error::{Error, Result};

/// Multiplicative Jordan-Chevalley decomposition `A = S U = U S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple: QMatrix,
    pub unipotent: QMatrix,
}

/// Splits an invertible rational matrix into commuting semisimple and unipotent factors.
///
/// The semisimple part is the limit of the Newton iteration `S <- S - p(S) p'(S)^{-1}` for the
/// squarefree part `p` of the characteristic polynomial; it terminates after at most
/// `log2(n)` steps and never leaves Q.
pub fn jordan_chevalley(a: &QMatrix) -> Result<JordanPair> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("Jordan decomposition of a non-square matrix".into()));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let p = char_poly(a).squarefree_part();
    let dp = p.derivative();
    let mut s = a.clone();
    for _ in 0..=a.rows() {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            let unipotent = s.inverse()?.dot(a);
            return Ok(JordanPair {
                semisimple: s,
                unipotent,
            });
        }
        let correction = ps.dot(&dp.eval_matrix(&s).inverse()?);
        s = s.minus(&correction);
    }
    Err(Error::Internal("Newton iteration for the semisimple part did not converge".into()))
}

pub fn is_semisimple(a: &QMatrix) -> bool {
    a.is_square() && {
        let p = char_poly(a).squarefree_part();
        p.eval_matrix(a).is_zero()
    }
}

pub fn is_unipotent_matrix(a: &QMatrix) -> bool {
    a.is_square() && a.minus(&QMatrix::identity(a.rows())).is_nilpotent()
}

/// `log(A)` for unipotent `A`, as the finite series in `X = A - I`.
pub fn nilpotent_log(a: &QMatrix) -> Result<QMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("log of a non-square matrix".into()));
    }
    let n = a.rows();
    let x = a.minus(&QMatrix::identity(n));
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut acc = QMatrix::zeros(n, n);
    let mut power = x.clone();
    for k in 1..n.max(1) + 1 {
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        acc = acc.plus(&power.scale(&(sign / int(k as i64))));
        power = power.dot(&x);
    }
    Ok(acc)
}

/// `exp(X)` for nilpotent `X`; the series stops at the nilpotency index.
pub fn nilpotent_exp(x: &QMatrix) -> Result<QMatrix> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("exp of a non-square matrix".into()));
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(exp_series(x))
}

/// The exponential series of a matrix already known to be nilpotent.
pub(crate) fn exp_series(x: &QMatrix) -> QMatrix {
    let n = x.rows();
    let mut acc = QMatrix::identity(n);
    let mut power = QMatrix::identity(n);
    for k in 1..=n {
        power = power.dot(x);
        if power.is_zero() {
            break;
        }
        acc = acc.plus(&power.scale(&factorial(k).recip()));
    }
    acc
}

/// `exp(t X)` with exact rational `t`.
pub fn exp_scaled(x: &QMatrix, t: &Rat) -> Result<QMatrix> {
    nilpotent_exp(&x.scale(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    #[test]
    fn already_unipotent() {
        let a = QMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let jp = jordan_chevalley(&a).unwrap();
        assert!(jp.semisimple.is_identity());
        assert_eq!(jp.unipotent, a);
    }

    #[test]
    fn already_semisimple() {
        let a = QMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let jp = jordan_chevalley(&a).unwrap();
        assert_eq!(jp.semisimple, a);
        assert!(jp.unipotent.is_identity());
    }

    #[test]
    fn klein_generator_affine_form() {
        let mut a = QMatrix::from_i64(3, 3, &[-1, 0, 0, 0, 1, 0, 0, 0, 1]);
        a[(1, 2)] = rat(1, 2);
        let jp = jordan_chevalley(&a).unwrap();
        assert_eq!(jp.semisimple, QMatrix::from_i64(3, 3, &[-1, 0, 0, 0, 1, 0, 0, 0, 1]));
        let mut u = QMatrix::identity(3);
        u[(1, 2)] = rat(1, 2);
        assert_eq!(jp.unipotent, u);
        // contract checks
        assert_eq!(jp.semisimple.dot(&jp.unipotent), a);
        assert_eq!(jp.unipotent.dot(&jp.semisimple), a);
        assert!(is_semisimple(&jp.semisimple));
        assert!(is_unipotent_matrix(&jp.unipotent));
    }

    #[test]
    fn singular_rejected() {
        let a = QMatrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert_eq!(jordan_chevalley(&a), Err(Error::Singular));
    }

    #[test]
    fn log_of_identity() {
        assert!(nilpotent_log(&QMatrix::identity(3)).unwrap().is_zero());
    }

    #[test]
    fn log_exp_unitriangular() {
        let mut a = QMatrix::from_i64(3, 3, &[1, 1, 0, 0, 1, 1, 0, 0, 1]);
        a[(0, 2)] = rat(1, 2);
        let l = nilpotent_log(&a).unwrap();
        assert_eq!(l, QMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]));
        assert_eq!(nilpotent_exp(&l).unwrap(), a);
    }

    #[test]
    fn exp_of_square_zero() {
        let e13 = QMatrix::unit(3, 0, 2);
        assert_eq!(nilpotent_exp(&e13).unwrap(), QMatrix::identity(3).plus(&e13));
    }

    #[test]
    fn non_nilpotent_rejected() {
        assert_eq!(nilpotent_exp(&QMatrix::identity(2)), Err(Error::NotNilpotent));
        assert_eq!(
            nilpotent_log(&QMatrix::from_i64(2, 2, &[2, 0, 0, 1])),
            Err(Error::NotNilpotent)
        );
    }
}
