//! Matrices over the Laurent ring: exact determinants via fraction-free
//! Bareiss elimination and gcds of fixed-size minors.

use crate::field::Field;
use crate::gcd::poly_gcd;
use crate::laurent::LaurentPoly;

#[derive(Clone, Debug)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<LaurentPoly>,
    field: Field,
    vars: usize,
}

impl PolyMatrix {
    pub fn new(field: Field, vars: usize, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            data: vec![LaurentPoly::zero(field, vars); rows * cols],
            field,
            vars,
        }
    }

    pub fn from_rows(field: Field, vars: usize, rows: Vec<Vec<LaurentPoly>>) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = PolyMatrix::new(field, vars, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, p) in row.into_iter().enumerate() {
                assert_eq!(p.field(), field);
                assert_eq!(p.vars(), vars);
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::new(self.field, self.vars, row_idx.len(), col_idx.len());
        for (i, &ri) in row_idx.iter().enumerate() {
            for (j, &cj) in col_idx.iter().enumerate() {
                m.set(i, j, self.at(ri, cj).clone());
            }
        }
        m
    }

    pub fn delete_columns(&self, cols: &[usize]) -> PolyMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|c| !cols.contains(c)).collect();
        let all_rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all_rows, &keep)
    }
}

/// Exact determinant. Negative exponents are cleared row by row with monomial
/// shifts whose product is restored at the end, then fraction-free Bareiss
/// elimination runs in the ordinary polynomial ring. Pivots prefer sparse
/// rows; every interior division is exact by the Bareiss identity.
pub fn poly_det(m: &PolyMatrix) -> LaurentPoly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let field = m.field;
    let vars = m.vars;
    if n == 0 {
        return LaurentPoly::one(field, vars);
    }

    // clear negative exponents per row, tracking the monomial unit
    let mut unit_shift = vec![0i64; vars];
    let mut a: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row_min = vec![i64::MAX; vars];
        let mut any = false;
        for j in 0..n {
            if let Some(mins) = m.at(i, j).min_exponents() {
                any = true;
                for (r, v) in row_min.iter_mut().zip(mins) {
                    *r = (*r).min(v);
                }
            }
        }
        if !any {
            return LaurentPoly::zero(field, vars); // zero row
        }
        let shift: Vec<i64> = row_min.iter().map(|&v| if v < 0 { -v } else { 0 }).collect();
        for (u, s) in unit_shift.iter_mut().zip(&shift) {
            *u -= s;
        }
        a.push(
            (0..n)
                .map(|j| m.at(i, j).mul_term(&shift, &field.one()))
                .collect(),
        );
    }

    let mut sign = false;
    let mut prev = LaurentPoly::one(field, vars);
    for k in 0..n {
        // pivot: nonzero entry in column k at or below row k with fewest terms
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].num_terms(), i));
        let Some(p) = pivot else {
            return LaurentPoly::zero(field, vars);
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        if k + 1 == n {
            break;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            if row[k].is_zero() {
                // still need the pivot scaling to keep the Bareiss identity
                for j in (k + 1)..n {
                    let t = pivot_row[k].mul(&row[j]);
                    row[j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
                row[k] = LaurentPoly::zero(field, vars);
                continue;
            }
            for j in (k + 1)..n {
                let t = pivot_row[k]
                    .mul(&row[j])
                    .sub(&row[k].mul(&pivot_row[j]));
                row[j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[k] = LaurentPoly::zero(field, vars);
        }
        prev = a[k][k].clone();
    }

    let mut det = a[n - 1][n - 1].clone();
    if sign {
        det = det.neg();
    }
    det.mul_term(&unit_shift, &field.one())
}

/// Result of [`minor_gcd`]: the gcd folded so far and whether the enumeration
/// stopped at the cap (in which case the polynomial only divides the true gcd).
#[derive(Clone, Debug)]
pub struct MinorGcd {
    pub gcd: LaurentPoly,
    pub divisor_only: bool,
    pub minors_evaluated: usize,
}

/// Canonical gcd of all size x size minors of m, enumerating row and column
/// subsets in colexicographic order with early exit once the running gcd is a
/// unit. size 0 gives 1; size exceeding either dimension gives 0 (no minors,
/// zero ideal). An optional cap bounds the number of evaluated minors.
pub fn minor_gcd(m: &PolyMatrix, size: usize, cap: Option<usize>) -> MinorGcd {
    let field = m.field;
    let vars = m.vars;
    if size == 0 {
        return MinorGcd {
            gcd: LaurentPoly::one(field, vars),
            divisor_only: false,
            minors_evaluated: 0,
        };
    }
    if size > m.rows || size > m.cols {
        return MinorGcd {
            gcd: LaurentPoly::zero(field, vars),
            divisor_only: false,
            minors_evaluated: 0,
        };
    }
    let mut g = LaurentPoly::zero(field, vars);
    let mut count = 0usize;
    let mut rows = first_subset(size);
    loop {
        let mut cols = first_subset(size);
        loop {
            let sub = m.submatrix(&rows, &cols);
            g = poly_gcd(&g, &poly_det(&sub));
            count += 1;
            if g.is_one() {
                return MinorGcd {
                    gcd: g,
                    divisor_only: false,
                    minors_evaluated: count,
                };
            }
            if let Some(c) = cap {
                if count >= c {
                    return MinorGcd {
                        gcd: g,
                        divisor_only: true,
                        minors_evaluated: count,
                    };
                }
            }
            if !next_subset_colex(&mut cols, m.cols) {
                break;
            }
        }
        if !next_subset_colex(&mut rows, m.rows) {
            break;
        }
    }
    MinorGcd {
        gcd: g,
        divisor_only: false,
        minors_evaluated: count,
    }
}

fn first_subset(size: usize) -> Vec<usize> {
    (0..size).collect()
}

/// Advance an ascending index subset in colexicographic order. False when the
/// last subset has been passed.
fn next_subset_colex(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in 0..k {
        let limit = if i + 1 < k { s[i + 1] } else { n };
        if s[i] + 1 < limit {
            s[i] += 1;
            for (j, slot) in s.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}
