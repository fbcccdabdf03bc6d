//! Polynomial gcd, computed recursively: univariate Euclid over the
//! coefficient field at the base, primitive pseudo-remainder sequences in the
//! top variable above it. Results are canonical unit-normal forms, which makes
//! the gcd of a set of polynomials independent of the order they are folded in.

use crate::field::Field;
use crate::laurent::LaurentPoly;

/// Canonical gcd in the Laurent ring. gcd(0, 0) = 0; units collapse to 1.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.field(), b.field(), "field mismatch");
    assert_eq!(a.vars(), b.vars(), "variable count mismatch");
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    if a.is_unit() || b.is_unit() {
        return LaurentPoly::one(a.field(), a.vars());
    }
    // canonical() shifts negative exponents away, so the recursion below works
    // in the ordinary polynomial ring
    gcd_ordinary(&a.canonical(), &b.canonical(), a.vars()).canonical()
}

fn gcd_ordinary(a: &LaurentPoly, b: &LaurentPoly, vars: usize) -> LaurentPoly {
    if vars == 1 {
        return gcd_univariate(a, b);
    }
    let top = vars - 1;
    let a_coeffs = coefficients_in(a, top);
    let b_coeffs = coefficients_in(b, top);
    let a_cont = content(&a_coeffs, a.field(), vars - 1);
    let b_cont = content(&b_coeffs, b.field(), vars - 1);
    let a_pp = divide_coeffs(&a_coeffs, &a_cont);
    let b_pp = divide_coeffs(&b_coeffs, &b_cont);
    let cont_gcd = gcd_ordinary(&a_cont, &b_cont, vars - 1);
    let pp_gcd = primitive_prs(a_pp, b_pp, a.field(), vars);
    assemble(&pp_gcd, top).mul(&lift(&cont_gcd, top))
}

/// Euclid over a field.
fn gcd_univariate(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut f = a.canonical();
    let mut g = b.canonical();
    while !g.is_zero() {
        let r = rem_univariate(&f, &g);
        f = g;
        g = r;
    }
    f.canonical()
}

fn rem_univariate(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let field = f.field();
    let gd = g.max_exponents().expect("nonzero divisor")[0];
    let g_lead = g.coeff(&[gd]);
    let g_lead_inv = field.inv(&g_lead).expect("nonzero lead");
    let mut r = f.clone();
    loop {
        let Some(rd) = r.max_exponents().map(|m| m[0]) else {
            return r;
        };
        if rd < gd {
            return r;
        }
        let c = field.mul(&r.coeff(&[rd]), &g_lead_inv);
        let t = LaurentPoly::monomial(field, 1, &[rd - gd], c);
        r = r.sub(&t.mul(g));
    }
}

/// View p as a polynomial in variable `top`; entry d is the coefficient of
/// top^d, a polynomial in the remaining variables.
fn coefficients_in(p: &LaurentPoly, top: usize) -> Vec<LaurentPoly> {
    let deg = p.max_exponents().map(|m| m[top]).unwrap_or(0);
    let sub_vars = p.vars() - 1;
    let mut out = vec![LaurentPoly::zero(p.field(), sub_vars); (deg + 1) as usize];
    for (e, c) in p.terms() {
        let d = e[top] as usize;
        let rest: Vec<i64> = e
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != top)
            .map(|(_, &x)| x as i64)
            .collect();
        out[d] = out[d].add(&LaurentPoly::monomial(p.field(), sub_vars, &rest, c.clone()));
    }
    out
}

fn assemble(coeffs: &[LaurentPoly], top: usize) -> LaurentPoly {
    let sub_vars = coeffs[0].vars();
    let vars = sub_vars + 1;
    let field = coeffs[0].field();
    let mut out = LaurentPoly::zero(field, vars);
    for (d, c) in coeffs.iter().enumerate() {
        for (e, coef) in c.terms() {
            let mut ne: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            ne.insert(top, d as i64);
            out = out.add(&LaurentPoly::monomial(field, vars, &ne, coef.clone()));
        }
    }
    out
}

fn lift(p: &LaurentPoly, top: usize) -> LaurentPoly {
    assemble(&[p.clone()], top)
}

fn content(coeffs: &[LaurentPoly], field: Field, sub_vars: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(field, sub_vars);
    for c in coeffs {
        if !c.is_zero() {
            g = poly_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

fn divide_coeffs(coeffs: &[LaurentPoly], d: &LaurentPoly) -> Vec<LaurentPoly> {
    coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                c.div_exact(d).expect("content divides every coefficient")
            }
        })
        .collect()
}

/// Primitive pseudo-remainder sequence on primitive inputs, as coefficient
/// vectors in the top variable.
fn primitive_prs(
    mut f: Vec<LaurentPoly>,
    mut g: Vec<LaurentPoly>,
    field: Field,
    vars: usize,
) -> Vec<LaurentPoly> {
    trim(&mut f);
    trim(&mut g);
    if degree_of(&f) < degree_of(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_empty() {
            return f;
        }
        if degree_of(&g) == 0 {
            // a nonzero constant (in the top variable) divides both primitive
            // parts only through the content, which is already factored out
            return vec![LaurentPoly::one(field, vars - 1)];
        }
        let r = pseudo_rem(&f, &g);
        f = g;
        g = make_primitive(r, field);
    }
}

fn trim(v: &mut Vec<LaurentPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn degree_of(v: &[LaurentPoly]) -> usize {
    v.len().saturating_sub(1)
}

/// lc(g)^(deg f - deg g + 1) * f mod g, coefficientwise in the lower ring.
fn pseudo_rem(f: &[LaurentPoly], g: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let df = degree_of(f);
    let dg = degree_of(g);
    let lc_g = g[dg].clone();
    let mut r: Vec<LaurentPoly> = f.to_vec();
    let mut steps = df as i64 - dg as i64 + 1;
    while degree_of(&r) >= dg && !r.iter().all(|c| c.is_zero()) {
        let dr = degree_of(&r);
        if r[dr].is_zero() {
            r.pop();
            continue;
        }
        let lead = r[dr].clone();
        // r = lc_g * r - lead * g * top^(dr - dg)
        for c in r.iter_mut() {
            *c = c.mul(&lc_g);
        }
        let shift = dr - dg;
        for (i, gc) in g.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&gc.mul(&lead));
        }
        trim(&mut r);
        steps -= 1;
        if r.is_empty() {
            break;
        }
    }
    // keep the classical pseudo-remainder scaling so exactness is preserved
    while steps > 0 {
        for c in r.iter_mut() {
            *c = c.mul(&lc_g);
        }
        steps -= 1;
    }
    r
}

fn make_primitive(mut v: Vec<LaurentPoly>, field: Field) -> Vec<LaurentPoly> {
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let sub_vars = v[0].vars();
    let c = content(&v, field, sub_vars);
    divide_coeffs(&v, &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn p(field: Field, names: &[&str], s: &str) -> LaurentPoly {
        LaurentPoly::parse(field, names, s).unwrap()
    }

    #[test]
    fn univariate_known_answer() {
        // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1
        let a = p(q(), &["t"], "t^2 - 1");
        let b = p(q(), &["t"], "t^2 - 2 t + 1");
        assert_eq!(poly_gcd(&a, &b), p(q(), &["t"], "t - 1"));
    }

    #[test]
    fn bivariate_known_answer() {
        // shared factor x y + 1 over F13
        let f13 = Field::prime(13).unwrap();
        let common = p(f13, &["x", "y"], "x y + 1");
        let a = common.mul(&p(f13, &["x", "y"], "x^2 + y"));
        let b = common.mul(&p(f13, &["x", "y"], "y^2 + 5 x + 1"));
        assert_eq!(poly_gcd(&a, &b), common.canonical());
    }

    #[test]
    fn coprime_inputs_give_one() {
        let a = p(q(), &["x", "y"], "x + 1");
        let b = p(q(), &["x", "y"], "y + 1");
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn zero_and_unit_conventions() {
        let z = LaurentPoly::zero(q(), 2);
        let a = p(q(), &["x", "y"], "2 x y - 2");
        assert_eq!(poly_gcd(&z, &a), a.canonical());
        assert_eq!(poly_gcd(&z, &z), z);
        let u = LaurentPoly::monomial(q(), 2, &[-1, 3], q().from_i64(5));
        assert!(poly_gcd(&u, &a).is_one());
    }

    #[test]
    fn gcd_divides_both_inputs_on_laurent_polynomials() {
        let f5 = Field::prime(5).unwrap();
        let a = p(f5, &["x", "y"], "x^(-2) y + 3 + y^(-1)");
        let b = p(f5, &["x", "y"], "x y^(-1) + 2 x^(-1)");
        let g = poly_gcd(&a, &b);
        assert!(g.divides(&a));
        assert!(g.divides(&b));
    }
}
