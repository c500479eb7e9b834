//! Seven anticommuting complex structures on ℝ⁸ from octonion left multiplication.
//!
//! Octonions are pairs of quaternions with (a, b)(c, d) = (ac − d̄b, da + bc̄), basis
//! e₀…e₇ = (1,0), (i,0), (j,0), (k,0), (0,1), (0,i), (0,j), (0,k).

use crate::exact::{self, rat, QMatrix, Rational};
use crate::linalg::Matrix;
use crate::quaternion::QuatQ;

type Octonion = (QuatQ, QuatQ);

fn mul((a, b): &Octonion, (c, d): &Octonion) -> Octonion {
    (a.clone() * c.clone() - d.conj() * b.clone(), d.clone() * a.clone() + b.clone() * c.conj())
}

fn basis(n: usize) -> Octonion {
    let mut c = [rat(0), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0)];
    c[n] = rat(1);
    let [a0, a1, a2, a3, b0, b1, b2, b3] = c;
    (QuatQ::new(a0, a1, a2, a3), QuatQ::new(b0, b1, b2, b3))
}

fn coeffs((a, b): &Octonion) -> [Rational; 8] {
    let [a0, a1, a2, a3] = a.coeffs();
    let [b0, b1, b2, b3] = b.coeffs();
    [a0, a1, a2, a3, b0, b1, b2, b3]
}

/// Matrix of x ↦ e_m·x on ℝ⁸.
pub fn left_mult_octonion(m: usize) -> QMatrix {
    let e = basis(m);
    let mut out = exact::zeros(8, 8);
    for n in 0..8 {
        let col = coeffs(&mul(&e, &basis(n)));
        for (r, v) in col.into_iter().enumerate() {
            out[(r, n)] = v;
        }
    }
    out
}

/// J₁, …, J₇ (index 0 holds J₁), exact.
pub fn octonion_complex_structures_exact() -> [QMatrix; 7] {
    std::array::from_fn(|i| left_mult_octonion(i + 1))
}

pub fn octonion_complex_structures() -> [Matrix; 7] {
    octonion_complex_structures_exact().map(|m| exact::to_float_matrix(&m))
}

/// Sign s with J₁J₂⋯J₇ = s·I₈.
pub fn product_sign() -> i64 {
    let js = octonion_complex_structures_exact();
    let prod = js.iter().skip(1).fold(js[0].clone(), |acc, j| exact::matmul(&acc, j));
    if prod == exact::identity(8) {
        1
    } else if prod == exact::scale(&exact::identity(8), &rat(-1)) {
        -1
    } else {
        0
    }
}

/// J′ = J₇ cos θ + J₆J₇ sin θ.
pub fn j_prime(theta: f64) -> Matrix {
    let js = octonion_complex_structures();
    &js[6] * theta.cos() + &js[5] * &js[6] * theta.sin()
}
