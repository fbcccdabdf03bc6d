//! Newton polytopes of sparse Laurent polynomials and the induced width
//! seminorm on integer covectors.

use crate::laurent::LaurentPoly;
use num::rational::Rational64;
use num::Zero;

/// Convex hull of the support in two variables, counterclockwise starting
/// from the lexicographically smallest vertex. Zero polynomial gives no
/// points; collinear support collapses to its endpoints.
pub fn newton_vertices_2d(p: &LaurentPoly) -> Vec<(i64, i64)> {
    assert_eq!(p.vars(), 2, "two-variable hull");
    let mut pts: Vec<(i64, i64)> = p.support().iter().map(|e| (e[0], e[1])).collect();
    pts.sort_unstable();
    pts.dedup();
    convex_hull(pts)
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone chain on sorted deduplicated input.
pub fn convex_hull(pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

/// Width of the support in direction phi: max dot minus min dot, 0 for the
/// zero polynomial. Works in any number of variables straight off the
/// support, no hull needed.
pub fn seminorm_eval(p: &LaurentPoly, phi: &[i64]) -> i64 {
    assert_eq!(p.vars(), phi.len(), "covector arity mismatch");
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for e in p.support() {
        let d: i64 = e.iter().zip(phi).map(|(a, b)| a * b).sum();
        lo = lo.min(d);
        hi = hi.max(d);
    }
    if lo > hi {
        0
    } else {
        hi - lo
    }
}

/// Rational-covector width, used to test ball membership exactly.
pub fn seminorm_eval_rat(p: &LaurentPoly, phi: &[Rational64]) -> Rational64 {
    assert_eq!(p.vars(), phi.len(), "covector arity mismatch");
    let mut lo: Option<Rational64> = None;
    let mut hi: Option<Rational64> = None;
    for e in p.support() {
        let d: Rational64 = e
            .iter()
            .zip(phi)
            .map(|(&a, b)| Rational64::from_integer(a) * b)
            .sum();
        lo = Some(lo.map_or(d, |v| v.min(d)));
        hi = Some(hi.map_or(d, |v| v.max(d)));
    }
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => Rational64::zero(),
    }
}

/// True when the support affinely spans the full rank, i.e. the polynomial
/// is not a one-variable polynomial in disguise along some direction.
pub fn support_spans(p: &LaurentPoly) -> bool {
    let sup = p.support();
    let b = p.vars();
    let Some(base) = sup.first() else {
        return b == 0;
    };
    let rows: Vec<Vec<num::BigInt>> = sup[1..]
        .iter()
        .map(|e| {
            e.iter()
                .zip(base)
                .map(|(a, b)| num::BigInt::from(a - b))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return b == 0;
    }
    crate::intmat::smith_normal_form(&rows).rank == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn poly2(text: &str) -> LaurentPoly {
        LaurentPoly::parse(Field::Rationals, &["x", "y"], text).unwrap()
    }

    #[test]
    fn unit_square_hull() {
        let p = poly2("x*y - x - y + 1");
        assert_eq!(
            newton_vertices_2d(&p),
            vec![(0, 0), (1, 0), (1, 1), (0, 1)]
        );
    }

    #[test]
    fn parallelogram_hull_ignores_interior() {
        let p = poly2(
            "3*x^6*y^2 + 3*x^4*y^2 + 4*x^4*y + 2*x^4 + x^2*y^2 + 3*x^2*y - x^2 - 1",
        );
        assert_eq!(
            newton_vertices_2d(&p),
            vec![(0, 0), (4, 0), (6, 2), (2, 2)]
        );
    }

    #[test]
    fn degenerate_hulls() {
        assert!(newton_vertices_2d(&LaurentPoly::zero(Field::Rationals, 2)).is_empty());
        assert_eq!(newton_vertices_2d(&poly2("x*y")), vec![(1, 1)]);
        assert_eq!(
            newton_vertices_2d(&poly2("1 + x*y + x^2*y^2")),
            vec![(0, 0), (2, 2)]
        );
    }

    #[test]
    fn widths_of_the_unit_square() {
        let p = poly2("x*y - x - y + 1");
        assert_eq!(seminorm_eval(&p, &[1, 0]), 1);
        assert_eq!(seminorm_eval(&p, &[0, 1]), 1);
        assert_eq!(seminorm_eval(&p, &[1, 1]), 2);
        assert_eq!(seminorm_eval(&p, &[1, -1]), 2);
        assert_eq!(seminorm_eval(&LaurentPoly::zero(Field::Rationals, 2), &[1, 1]), 0);
    }

    #[test]
    fn seminorm_properties_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let p = poly2("x^3*y - 2*x + y^2 + 5 - x^-2*y^-1");
        for _ in 0..200 {
            let a = [rng.gen_range(-6..=6i64), rng.gen_range(-6..=6i64)];
            let b = [rng.gen_range(-6..=6i64), rng.gen_range(-6..=6i64)];
            let lam: i64 = rng.gen_range(-4..=4);
            // homogeneity
            assert_eq!(
                seminorm_eval(&p, &[lam * a[0], lam * a[1]]),
                lam.abs() * seminorm_eval(&p, &a)
            );
            // subadditivity
            let sum = [a[0] + b[0], a[1] + b[1]];
            assert!(seminorm_eval(&p, &sum) <= seminorm_eval(&p, &a) + seminorm_eval(&p, &b));
            // unit invariance
            let shifted = p.mul_term(&[3, -2], &Field::Rationals.from_i64(-7));
            assert_eq!(seminorm_eval(&shifted, &a), seminorm_eval(&p, &a));
        }
    }

    #[test]
    fn span_detection() {
        assert!(support_spans(&poly2("x*y - x - y + 1")));
        assert!(!support_spans(&poly2("x*y + 1"))); // line through (0,0),(1,1)
        assert!(!support_spans(&poly2("x^2"))); // single point
        assert!(!support_spans(&LaurentPoly::zero(Field::Rationals, 2)));
    }
}
