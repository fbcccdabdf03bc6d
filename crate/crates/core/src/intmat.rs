//! Integer matrices and Smith normal form with full transform bookkeeping.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = a.len();
    let inner = if m > 0 { a[0].len() } else { 0 };
    let n = if inner > 0 { b[0].len() } else { 0 };
    assert!(inner == b.len(), "dimension mismatch");
    let mut out = vec![vec![BigInt::zero(); n]; m];
    for i in 0..m {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = &a[i][k] * &bk[j];
                out[i][j] += t;
            }
        }
    }
    out
}

/// U * A * V = D where D is diagonal with d[0] | d[1] | ... and every d[i] >= 0.
/// u_inv and v_inv are the exact inverses of u and v.
pub struct SmithNormalForm {
    pub d: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn smith_normal_form(a0: &IntMatrix) -> SmithNormalForm {
    let m = a0.len();
    let n = if m > 0 { a0[0].len() } else { 0 };
    let mut a: IntMatrix = a0.to_vec();
    let mut u = identity(m);
    let mut u_inv = identity(m);
    let mut v = identity(n);
    let mut v_inv = identity(n);

    // row i += c * row j on A and U; U_inv gets the inverse column op
    let row_add = |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix,
                   i: usize, j: usize, c: &BigInt| {
        for col in 0..n {
            let t = c * &a[j][col];
            a[i][col] += t;
        }
        for col in 0..m {
            let t = c * &u[j][col];
            u[i][col] += t;
        }
        for row in u_inv.iter_mut() {
            let t = c * &row[i];
            row[j] -= t;
        }
    };
    let col_add = |a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix,
                   j: usize, i: usize, c: &BigInt| {
        for row in a.iter_mut() {
            let t = c * &row[i];
            row[j] += t;
        }
        for row in v.iter_mut() {
            let t = c * &row[i];
            row[j] += t;
        }
        for col in 0..n {
            let t = c * &v_inv[j][col];
            v_inv[i][col] -= t;
        }
    };

    let dim = m.min(n);
    let mut t = 0usize;
    while t < dim {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        if bi != t {
            a.swap(bi, t);
            u.swap(bi, t);
            for row in u_inv.iter_mut() {
                row.swap(bi, t);
            }
        }
        if bj != t {
            for row in a.iter_mut() {
                row.swap(bj, t);
            }
            for row in v.iter_mut() {
                row.swap(bj, t);
            }
            v_inv.swap(bj, t);
        }

        loop {
            // clear the pivot column and row by truncated division
            let mut dirty = false;
            for i in (t + 1)..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    row_add(&mut a, &mut u, &mut u_inv, i, t, &(-q));
                }
                if !a[i][t].is_zero() {
                    // remainder is strictly smaller; promote it to pivot
                    a.swap(i, t);
                    u.swap(i, t);
                    for row in u_inv.iter_mut() {
                        row.swap(i, t);
                    }
                    dirty = true;
                }
            }
            for j in (t + 1)..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    col_add(&mut a, &mut v, &mut v_inv, j, t, &(-q));
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(j, t);
                    }
                    for row in v.iter_mut() {
                        row.swap(j, t);
                    }
                    v_inv.swap(j, t);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // cross is clear; enforce divisibility into the remaining block
            let mut fixed = true;
            'scan: for i in (t + 1)..m {
                for j in (t + 1)..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one());
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }

        if a[t][t].is_negative() {
            let neg = -BigInt::one();
            for col in 0..n {
                a[t][col] = &a[t][col] * &neg;
            }
            for col in 0..m {
                u[t][col] = &u[t][col] * &neg;
            }
            for row in u_inv.iter_mut() {
                row[t] = &row[t] * &neg;
            }
        }
        t += 1;
    }

    let mut d = vec![BigInt::zero(); dim];
    for (i, slot) in d.iter_mut().enumerate() {
        *slot = a[i][i].clone();
    }
    let rank = d.iter().filter(|x| !x.is_zero()).count();
    SmithNormalForm {
        d,
        rank,
        u,
        v,
        u_inv,
        v_inv,
    }
}
