//! Fixed-size complex matrix helpers for two-qubit operators.

use num_complex::Complex64;

pub type Matrix2 = [[Complex64; 2]; 2];
pub type Matrix4 = [[Complex64; 4]; 4];
pub type Vector4 = [Complex64; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn identity4() -> Matrix4 {
    let mut m = [[ZERO; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn transpose(m: &Matrix4) -> Matrix4 {
    let mut t = [[ZERO; 4]; 4];
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = *v;
        }
    }
    t
}

pub fn adjoint(m: &Matrix4) -> Matrix4 {
    let mut t = transpose(m);
    t.iter_mut().flatten().for_each(|v| *v = v.conj());
    t
}

pub fn mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut c = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn mul_vec(a: &Matrix4, x: &Vector4) -> Vector4 {
    let mut y = [ZERO; 4];
    for (yi, row) in y.iter_mut().zip(a) {
        *yi = row.iter().zip(x).map(|(m, v)| m * v).sum();
    }
    y
}

/// `a (x) b` with `a` on the high bit.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut m = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            m[r][c] = a[r >> 1][c >> 1] * b[r & 1][c & 1];
        }
    }
    m
}

pub fn scale(m: &Matrix4, s: f64) -> Matrix4 {
    let mut out = *m;
    out.iter_mut().flatten().for_each(|v| *v *= s);
    out
}

pub fn frobenius(m: &Matrix4) -> f64 {
    m.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise `|a - b|`.
pub fn max_abs_diff(a: &Matrix4, b: &Matrix4) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Frobenius norm of `m^dagger m - I`.
pub fn unitarity_defect(m: &Matrix4) -> f64 {
    let mut g = mul(&adjoint(m), m);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] -= ONE;
    }
    frobenius(&g)
}

/// Gauss-Jordan inverse with partial pivoting. `None` when a pivot falls
/// below `rel_tol` times the largest entry of `m`.
pub fn inverse(m: &Matrix4, rel_tol: f64) -> Option<Matrix4> {
    let scale = m.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let mut a = *m;
    let mut inv = identity4();
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .unwrap();
        if a[pivot][col].norm() <= rel_tol * scale {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for k in 0..4 {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for row in 0..4 {
            if row != col {
                let f = a[row][col];
                if f != ZERO {
                    for k in 0..4 {
                        let (ak, ik) = (a[col][k], inv[col][k]);
                        a[row][k] -= f * ak;
                        inv[row][k] -= f * ik;
                    }
                }
            }
        }
    }
    Some(inv)
}
