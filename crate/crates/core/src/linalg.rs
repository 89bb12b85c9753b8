//! Dense solves for the tiny systems used here (3×3 complex steady state,
//! 3×3 real normal equations of the Lorentzian fit).

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::Real;

/// Field element the elimination can run over.
pub trait LinearScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    type Real: Real;

    fn additive_identity() -> Self;
    fn multiplicative_identity() -> Self;
    /// Modulus used for pivot selection and the singularity test.
    fn modulus(&self) -> Self::Real;
}

macro_rules! impl_real_scalar {
    ($($t:ty),*) => {$(
        impl LinearScalar for $t {
            type Real = $t;

            fn additive_identity() -> Self {
                0.0
            }
            fn multiplicative_identity() -> Self {
                1.0
            }
            fn modulus(&self) -> $t {
                self.abs()
            }
        }
    )*};
}

impl_real_scalar!(f32, f64);

impl<T: Real> LinearScalar for Complex<T> {
    type Real = T;

    fn additive_identity() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn multiplicative_identity() -> Self {
        Complex::new(T::one(), T::zero())
    }
    fn modulus(&self) -> T {
        self.norm()
    }
}

/// Result of a successful solve.
#[derive(Debug, Clone, Copy)]
pub struct Solution<S, const N: usize> {
    pub x: [S; N],
    pub det: S,
}

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
///
/// Returns `Err(det)` when `|det| < min_det` (or a pivot is exactly zero).
pub fn solve<S: LinearScalar, const N: usize>(
    mut a: [[S; N]; N],
    mut b: [S; N],
    min_det: S::Real,
) -> Result<Solution<S, N>, S> {
    let mut det = S::multiplicative_identity();
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| {
                a[i][col]
                    .modulus()
                    .partial_cmp(&a[j][col].modulus())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if a[pivot][col].modulus() == num_traits::Zero::zero() {
            return Err(S::additive_identity());
        }
        if pivot != col {
            a.swap(pivot, col);
            b.swap(pivot, col);
            det = -det;
        }
        let diag = a[col][col];
        det = det * diag;
        for row in col + 1..N {
            let factor = a[row][col] / diag;
            for k in col..N {
                a[row][k] = a[row][k] - factor * a[col][k];
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    if !(det.modulus() >= min_det) {
        return Err(det);
    }
    let mut x = [S::additive_identity(); N];
    for row in (0..N).rev() {
        let mut acc = b[row];
        for k in row + 1..N {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(Solution { x, det })
}
