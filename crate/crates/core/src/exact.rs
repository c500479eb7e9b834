//! Exact rational matrices and the handful of eliminations the exact checks need.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

pub type QMatrix = DMatrix<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn to_float_matrix(m: &QMatrix) -> DMatrix<f64> {
    m.map(|q| to_f64(&q))
}

pub fn identity(n: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| if i == j { rat(1) } else { rat(0) })
}

pub fn zeros(r: usize, c: usize) -> QMatrix {
    QMatrix::from_element(r, c, rat(0))
}

/// Parses `"p/q"`, `"p"` or a decimal literal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits: BigInt = format!("{}{}", int.trim_start_matches('-'), frac).parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let q = Rational::new(digits, scale);
        return Some(if neg { -q } else { q });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn matmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    assert_eq!(a.ncols(), b.nrows());
    QMatrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        let mut acc = rat(0);
        for k in 0..a.ncols() {
            if !a[(i, k)].is_zero() && !b[(k, j)].is_zero() {
                acc += &a[(i, k)] * &b[(k, j)];
            }
        }
        acc
    })
}

pub fn add(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.zip_map(b, |x, y| x + y)
}

pub fn sub(a: &QMatrix, b: &QMatrix) -> QMatrix {
    a.zip_map(b, |x, y| x - y)
}

pub fn scale(a: &QMatrix, c: &Rational) -> QMatrix {
    a.map(|x| x * c)
}

pub fn commutator(a: &QMatrix, b: &QMatrix) -> QMatrix {
    sub(&matmul(a, b), &matmul(b, a))
}

pub fn trace(a: &QMatrix) -> Rational {
    (0..a.nrows().min(a.ncols())).fold(rat(0), |acc, i| acc + &a[(i, i)])
}

pub fn is_zero(a: &QMatrix) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn is_skew(a: &QMatrix) -> bool {
    a.is_square() && is_zero(&add(a, &a.transpose()))
}

pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                out[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.nrows();
    }
    out
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for j in c..cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = m[(i, c)].clone();
                for j in c..cols {
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of the right kernel, one vector per free column.
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rational>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let cols = m.ncols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![rat(0); cols];
            v[f] = rat(1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -w[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b` for square non-singular `a`.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.nrows();
    if a.ncols() != n || b.len() != n {
        return None;
    }
    let mut aug = QMatrix::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some((0..n).map(|i| aug[(i, n)].clone()).collect())
}

pub fn det(a: &QMatrix) -> Rational {
    let n = a.nrows();
    assert!(a.is_square());
    let mut m = a.clone();
    let mut d = rat(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
            return rat(0);
        };
        if p != c {
            m.swap_rows(c, p);
            d = -d;
        }
        let piv = m[(c, c)].clone();
        d *= &piv;
        for i in c + 1..n {
            if !m[(i, c)].is_zero() {
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= t;
                }
            }
        }
    }
    d
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_rational("-2"), Some(rat(-2)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(7)), "7");
    }

    #[test]
    fn det_and_kernel() {
        let m = QMatrix::from_row_slice(3, 3, &[rat(1), rat(2), rat(3), rat(2), rat(4), rat(6), rat(0), rat(1), rat(1)]);
        assert!(det(&m).is_zero());
        let k = nullspace(&m);
        assert_eq!(k.len(), 1);
        let v = QMatrix::from_column_slice(3, 1, &k[0]);
        assert!(is_zero(&matmul(&m, &v)));
        let a = QMatrix::from_row_slice(2, 2, &[rat(2), rat(1), rat(1), rat(3)]);
        assert_eq!(det(&a), rat(5));
        assert_eq!(solve(&a, &[rat(3), rat(4)]).unwrap(), vec![rat(1), rat(1)]);
    }
}
