//! Realified ladder-operator construction of the quaternionic irreducible
//! representations of so(3) ≅ Im ℍ.
//!
//! For n odd, spin s = n/2 acts on ℂⁿ⁺¹ and ρ(i) = −2iJₓ, ρ(j) = −2iJ_y, ρ(k) = −2iJ_z,
//! so that [ρ(i), ρ(j)] = 2ρ(k) cyclically, the same relations as L_i, L_j, L_k.
//! The realification x + iy ↦ (x, y) gives skew matrices on ℝ^{2(n+1)}.

use crate::error::{Error, Result};
use crate::exact::{self, rat, ratio, QMatrix, Rational};
use crate::linalg::Matrix;

fn check(n: usize) -> Result<()> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::InvalidFamily(format!("su(2) irrep index {n} must be odd and at least 3 (quaternionic, real dimension ≥ 8)")));
    }
    Ok(())
}

/// [[A, −B], [B, A]] for the complex matrix A + iB.
fn realify<T: Clone + nalgebra::Scalar + std::ops::Neg<Output = T>>(re: &nalgebra::DMatrix<T>, im: &nalgebra::DMatrix<T>) -> nalgebra::DMatrix<T> {
    let d = re.nrows();
    nalgebra::DMatrix::from_fn(2 * d, 2 * d, |r, c| match (r < d, c < d) {
        (true, true) => re[(r, c)].clone(),
        (true, false) => -im[(r, c - d)].clone(),
        (false, true) => im[(r - d, c)].clone(),
        (false, false) => re[(r - d, c - d)].clone(),
    })
}

/// Images of i, j, k in the ladder-normalized basis (E₊|m⟩ = (s−m)(s+m+1)|m+1⟩,
/// E₋|m⟩ = |m−1⟩). Exact but not skew; related to [`su2_irrep`] by a diagonal similarity.
pub fn su2_irrep_exact(n: usize) -> Result<[QMatrix; 3]> {
    check(n)?;
    let d = n + 1;
    // index a ↔ m = s − a, with 2s = n
    let two_m = |a: usize| n as i64 - 2 * a as i64;
    let mut ep = exact::zeros(d, d);
    let mut em = exact::zeros(d, d);
    let mut two_jz = exact::zeros(d, d);
    for a in 0..d {
        two_jz[(a, a)] = rat(two_m(a));
        if a > 0 {
            // E₊ : |m⟩ (index a) ↦ |m+1⟩ (index a−1); (s−m)(s+m+1) = (n − 2m)(n + 2m + 2)/4
            let c = ratio((n as i64 - two_m(a)) * (n as i64 + two_m(a) + 2), 4);
            ep[(a - 1, a)] = c;
            em[(a, a - 1)] = rat(1);
        }
    }
    let zero = exact::zeros(d, d);
    let sum = exact::add(&ep, &em);
    let diff = exact::sub(&em, &ep);
    let neg = |m: &QMatrix| exact::scale(m, &rat(-1));
    // ρ(i) = −i(E₊ + E₋), ρ(j) = E₋ − E₊, ρ(k) = −i·2J_z
    Ok([realify(&zero, &neg(&sum)), realify(&diff, &zero), realify(&zero, &neg(&two_jz))])
}

/// Orthonormal-basis images of i, j, k: skew matrices on ℝ^{2(n+1)}.
pub fn su2_irrep(n: usize) -> Result<[Matrix; 3]> {
    check(n)?;
    let d = n + 1;
    let s = n as f64 / 2.0;
    let m = |a: usize| s - a as f64;
    let mut jp = Matrix::zeros(d, d);
    let mut jz = Matrix::zeros(d, d);
    for a in 0..d {
        jz[(a, a)] = m(a);
        if a > 0 {
            jp[(a - 1, a)] = ((s - m(a)) * (s + m(a) + 1.0)).sqrt();
        }
    }
    let jm = jp.transpose();
    let zero = Matrix::zeros(d, d);
    Ok([realify(&zero, &-(&jp + &jm)), realify(&(&jm - &jp), &zero), realify(&zero, &(&jz * -2.0))])
}

/// Casimir scalar c with ρ(i)² + ρ(j)² + ρ(k)² = −c·I, c = n(n + 2).
pub fn casimir(n: usize) -> Rational {
    rat((n * (n + 2)) as i64)
}
