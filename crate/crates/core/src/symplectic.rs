//! Matrices over `Q` and `Z/p^r`, the similitude group `GSp4` for the
//! antidiagonal form `J`, the embedding of `GL2 x_{GL1} GL2`, parabolic
//! membership, and the two open-orbit predicates.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::ring::{CoefficientRing, Rationals, ResidueRing};
use crate::weights_regions::Parabolic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("matrices live over different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("determinants differ")]
    DeterminantMismatch,
    #[error("entry {0} is not p-integral")]
    NotIntegral(String),
    #[error("expected a {0}x{0} matrix")]
    WrongShape(usize),
}

/// A square matrix tagged with its coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R: CoefficientRing> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

impl<R: CoefficientRing> Matrix<R> {
    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self, SymplecticError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SymplecticError::WrongShape(n));
        }
        Ok(Matrix { ring, n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints<const N: usize>(ring: R, rows: [[i64; N]; N]) -> Self {
        let entries = rows.iter().flatten().map(|&x| ring.from_i64(x)).collect();
        Matrix { ring, n: N, entries }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { ring.one() } else { ring.zero() })
            .collect();
        Matrix { ring, n, entries }
    }

    pub fn diagonal(ring: R, diag: Vec<R::Elem>) -> Self {
        let n = diag.len();
        let mut m = Self::identity(ring.clone(), n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<R::Elem> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        Matrix { ring: self.ring.clone(), n, entries }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let entries = self.entries.iter().map(|x| self.ring.mul(c, x)).collect();
        Matrix { ring: self.ring.clone(), n: self.n, entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SymplecticError> {
        if self.ring != other.ring {
            return Err(SymplecticError::RingMismatch);
        }
        if self.n != other.n {
            return Err(SymplecticError::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let r = &self.ring;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(r.zero(), |acc, l| r.add(&acc, &r.mul(self.get(i, l), other.get(l, j))))
            })
            .collect();
        Ok(Matrix { ring: self.ring.clone(), n, entries })
    }

    /// Determinant of a 2x2 matrix.
    pub fn det2(&self) -> Result<R::Elem, SymplecticError> {
        if self.n != 2 {
            return Err(SymplecticError::WrongShape(2));
        }
        let r = &self.ring;
        Ok(r.sub(&r.mul(self.get(0, 0), self.get(1, 1)), &r.mul(self.get(0, 1), self.get(1, 0))))
    }
}

impl<R: CoefficientRing> fmt::Display for Matrix<R>
where
    R::Elem: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The form `J` with `J[0][3] = J[1][2] = 1` and `J[2][1] = J[3][0] = -1`.
pub fn j_matrix<R: CoefficientRing>(ring: R) -> Matrix<R> {
    Matrix::from_ints(ring, [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
}

/// `Some(nu)` when `g^t J g = nu J` with `nu` nonzero.
pub fn is_symplectic<R: CoefficientRing>(g: &Matrix<R>) -> Option<R::Elem> {
    if g.n != 4 {
        return None;
    }
    let j = j_matrix(g.ring.clone());
    let form = g.transpose().mul(&j).ok()?.mul(g).ok()?;
    let nu = form.get(0, 3).clone();
    if g.ring.is_zero(&nu) || form != j.scale(&nu) {
        return None;
    }
    Some(nu)
}

/// The embedding `(h1, h2) -> [[a,0,0,b],[0,a',b',0],[0,c',d',0],[c,0,0,d]]`.
pub fn iota<R: CoefficientRing>(h1: &Matrix<R>, h2: &Matrix<R>) -> Result<Matrix<R>, SymplecticError> {
    if h1.ring != h2.ring {
        return Err(SymplecticError::RingMismatch);
    }
    let (d1, d2) = (h1.det2()?, h2.det2()?);
    if d1 != d2 || h1.ring.is_zero(&d1) {
        return Err(SymplecticError::DeterminantMismatch);
    }
    let z = h1.ring.zero();
    let e = |m: &Matrix<R>, i, j| m.get(i, j).clone();
    let rows = vec![
        vec![e(h1, 0, 0), z.clone(), z.clone(), e(h1, 0, 1)],
        vec![z.clone(), e(h2, 0, 0), e(h2, 0, 1), z.clone()],
        vec![z.clone(), e(h2, 1, 0), e(h2, 1, 1), z.clone()],
        vec![e(h1, 1, 0), z.clone(), z, e(h1, 1, 1)],
    ];
    let g = Matrix::from_rows(h1.ring.clone(), rows)?;
    debug_assert_eq!(is_symplectic(&g), Some(d1));
    Ok(g)
}

/// Reduce a `p`-integral rational matrix into `Z/p^r`.
pub fn reduce(m: &Matrix<Rationals>, ring: &ResidueRing) -> Result<Matrix<ResidueRing>, SymplecticError> {
    let entries = m
        .entries
        .iter()
        .map(|x| ring.from_rational(x).map_err(|_| SymplecticError::NotIntegral(x.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix { ring: ring.clone(), n: m.n, entries })
}

fn zero_mod_p(m: &Matrix<ResidueRing>, i: usize, j: usize) -> bool {
    let p = BigInt::from(m.ring.p());
    (m.get(i, j) % p).is_zero()
}

/// Membership of the reduction mod `p` in a standard parabolic of `GSp4`:
/// the upper-triangular Borel, the Siegel parabolic (lower-left 2x2 block
/// zero), or the Klingen parabolic (first column `(*,0,0,0)`, last row
/// `(0,0,0,*)`).
pub fn in_parabolic(m: &Matrix<ResidueRing>, which: Parabolic) -> bool {
    if m.n != 4 {
        return false;
    }
    let z = |i, j| zero_mod_p(m, i, j);
    match which {
        Parabolic::Whole => true,
        Parabolic::Borel => (0..4).all(|i| (0..i).all(|j| z(i, j))),
        Parabolic::Siegel => (2..4).all(|i| (0..2).all(|j| z(i, j))),
        Parabolic::Klingen => (1..4).all(|i| z(i, 0)) && (0..3).all(|j| z(3, j)),
    }
}

/// The first column mod `p` is neither `(0,*,*,0)` nor `(*,0,0,*)`.
pub fn valid_u_kl(m: &Matrix<ResidueRing>) -> bool {
    if m.n != 4 {
        return false;
    }
    let z = |i| zero_mod_p(m, i, 0);
    let outer_zero = z(0) && z(3);
    let inner_zero = z(1) && z(2);
    !outer_zero && !inner_zero
}

/// The lower-unipotent representative of the open orbit used for region `e`.
pub fn u_b_constant() -> Matrix<Rationals> {
    Matrix::from_ints(Rationals, [[1, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [0, -1, -1, 1]])
}

/// `diag(p^2, p, p, 1)`.
pub fn diag_p2_p_p_1(p: u64) -> Matrix<Rationals> {
    let q = |n: u64| BigRational::from_integer(BigInt::from(n));
    Matrix::diagonal(Rationals, vec![q(p * p), q(p), q(p), q(1)])
}
