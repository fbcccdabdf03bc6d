//! Lower bounds for the Thurston norm from one-variable degree data, the
//! seminorm route through the multivariable polynomial, and the product
//! formula for splices along meridians.

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::newton::seminorm_eval;
use crate::polymat::{poly_det, PolyMatrix};
use crate::twist::{one_variable_suite, TwistData};
use num::rational::Rational64;
use num::Zero;

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub phi: Vec<i64>,
    pub bound: Rational64,
    pub deg1: i64,
    pub deg0: i64,
    pub deg2: i64,
    pub vanished: bool,
    pub user_upper: Option<Rational64>,
    pub sharp: Option<bool>,
}

/// Degree-route lower bound at a covector: (deg d1 - deg d0 - deg d2)/k from
/// the one-variable suite, zero when the first order vanishes. Degrees are
/// breadths (max minus min exponent).
pub fn thurston_bound(
    data: &TwistData,
    phi: &[i64],
    user_upper: Option<Rational64>,
) -> Result<BoundReport, Error> {
    let suite = one_variable_suite(data, phi, true, None)?;
    let deg0 = suite.delta0.breadth(0);
    let deg1 = suite.delta1.breadth(0);
    let deg2 = suite.delta2.breadth(0);
    let vanished = suite.delta1.is_zero();
    let bound = if vanished {
        Rational64::zero()
    } else {
        Rational64::new(deg1 - deg0 - deg2, data.k() as i64)
    };
    let sharp = user_upper.map(|u| u == bound);
    Ok(BoundReport {
        phi: phi.to_vec(),
        bound,
        deg1,
        deg0,
        deg2,
        vanished,
        user_upper,
        sharp,
    })
}

/// Seminorm-route lower bound: width of the multivariable first order in
/// direction phi over the block size. Valid on all of the dual cone at once,
/// which is what the ball encodes.
pub fn seminorm_bound(delta1: &LaurentPoly, k: usize, phi: &[i64]) -> Rational64 {
    Rational64::new(seminorm_eval(delta1, phi), k as i64)
}

/// det(image(meridian) - I) for a generator the abelianization sends to a
/// unit vector; the correction factor of the splice product formula.
pub fn meridian_factor(data: &TwistData, gen: usize) -> LaurentPoly {
    let block = PolyMatrix::from_rows(data.field(), data.b(), data.generator_block(gen));
    poly_det(&block)
}

/// One knot-level factor of the splice product: d1 * meridian / d0, exact by
/// hypothesis, with failures surfaced.
fn splice_factor(
    d1: &LaurentPoly,
    d0: &LaurentPoly,
    meridian: &LaurentPoly,
) -> Result<LaurentPoly, Error> {
    if d1.is_zero() {
        return Err(Error::math(
            "splice factor with vanishing first order".to_string(),
        ));
    }
    d1.mul(meridian).div_exact(d0).ok_or_else(|| {
        Error::math("inexact division in the splice product formula".to_string())
    })
}

/// Two-variable product of the per-knot factors: factor(K1) in the first
/// variable times factor(K2) in the second.
pub fn hopf_like_product(
    k1: (&LaurentPoly, &LaurentPoly, &LaurentPoly),
    k2: (&LaurentPoly, &LaurentPoly, &LaurentPoly),
) -> Result<LaurentPoly, Error> {
    let f1 = splice_factor(k1.0, k1.1, k1.2)?;
    let f2 = splice_factor(k2.0, k2.1, k2.2)?;
    Ok(f1.embed(2, 0).mul(&f2.embed(2, 1)).canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::perm::parse_cycles;
    use crate::presentation::{abelianization, GroupPresentation};
    use crate::rep::{standard_module, PermutationAssignment};
    use crate::twist::alexander_suite;
    use crate::words::FreeWord;

    fn pres(gens: &[&str], rels: &[&str]) -> GroupPresentation {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let relators = rels
            .iter()
            .map(|r| FreeWord::parse(&names, r).unwrap())
            .collect();
        GroupPresentation::new(names, relators, None).unwrap()
    }

    fn trefoil() -> TwistData {
        let p = pres(&["a", "b"], &["a b a b^-1 a^-1 b^-1"]);
        let psi = abelianization(&p);
        TwistData::trivial_over(p, psi, Field::Rationals).unwrap()
    }

    #[test]
    fn degree_bound_is_sharp_for_the_trefoil() {
        // genus 1 knot: Thurston norm of the generator is 2g - 1 = 1
        let d = trefoil();
        let r = thurston_bound(&d, &[1], Some(Rational64::new(1, 1))).unwrap();
        assert_eq!(r.bound, Rational64::new(1, 1));
        assert_eq!((r.deg1, r.deg0, r.deg2), (2, 1, 0));
        assert_eq!(r.sharp, Some(true));
    }

    #[test]
    fn twisted_degree_bound_matches_the_untwisted_one() {
        let p = pres(&["a", "b", "c"], &["b c b^-1 a^-1", "c a c^-1 b^-1"]);
        let psi = abelianization(&p);
        let assign = PermutationAssignment {
            q: 3,
            images: vec![
                parse_cycles("(1 2)", 3).unwrap(),
                parse_cycles("(2 3)", 3).unwrap(),
                parse_cycles("(1 3)", 3).unwrap(),
            ],
        };
        let rep = standard_module(&assign, 13).unwrap();
        let d = TwistData::new(p, psi, rep).unwrap();
        let r = thurston_bound(&d, &[1], None).unwrap();
        // (2 - 0 - 0)/2 = 1, again sharp for genus 1
        assert_eq!(r.bound, Rational64::new(1, 1));
    }

    #[test]
    fn vanishing_first_order_reports_zero() {
        // direct check of the zero convention via an engineered zero: a free
        // presentation of rank 2 has too few relators for any minor
        let p = pres(&["a", "b"], &[]);
        let psi = abelianization(&p);
        let d = TwistData::trivial_over(p, psi, Field::Rationals).unwrap();
        let r = thurston_bound(&d, &[1, 0], None).unwrap();
        assert!(r.vanished);
        assert_eq!(r.bound, Rational64::zero());
    }

    #[test]
    fn seminorm_bound_agrees_with_degree_bound_on_products() {
        let names = ["x", "y"];
        let p = LaurentPoly::parse(
            Field::Rationals,
            &names,
            "(1 + x + x^2) * (1 + y + y^4)",
        )
        .unwrap();
        assert_eq!(seminorm_bound(&p, 1, &[1, 0]), Rational64::new(2, 1));
        assert_eq!(seminorm_bound(&p, 1, &[0, 1]), Rational64::new(4, 1));
        assert_eq!(seminorm_bound(&p, 2, &[0, 1]), Rational64::new(2, 1));
        assert_eq!(seminorm_bound(&p, 1, &[2, -3]), Rational64::new(16, 1));
    }

    #[test]
    fn product_formula_reduces_to_plain_product_when_untwisted() {
        let d = trefoil();
        let suite = alexander_suite(&d, true, None).unwrap();
        let mer = meridian_factor(&d, 0);
        assert!(mer.unit_eq(&suite.delta0)); // both t - 1 for one dimension
        let prod = hopf_like_product(
            (&suite.delta1, &suite.delta0, &mer),
            (&suite.delta1, &suite.delta0, &mer),
        )
        .unwrap();
        let want = LaurentPoly::parse(
            Field::Rationals,
            &["x1", "x2"],
            "(x1^2 - x1 + 1) * (x2^2 - x2 + 1)",
        )
        .unwrap();
        assert!(prod.unit_eq(&want));
    }

    #[test]
    fn product_formula_degree_bookkeeping() {
        // twisted factor degree: deg d1 + k - deg d0
        let p = pres(&["a", "b", "c"], &["b c b^-1 a^-1", "c a c^-1 b^-1"]);
        let psi = abelianization(&p);
        let assign = PermutationAssignment {
            q: 3,
            images: vec![
                parse_cycles("(1 2)", 3).unwrap(),
                parse_cycles("(2 3)", 3).unwrap(),
                parse_cycles("(1 3)", 3).unwrap(),
            ],
        };
        let rep = standard_module(&assign, 13).unwrap();
        let d = TwistData::new(p, psi, rep).unwrap();
        let suite = alexander_suite(&d, true, None).unwrap();
        let mer = meridian_factor(&d, 0);
        let prod = hopf_like_product(
            (&suite.delta1, &suite.delta0, &mer),
            (&suite.delta1, &suite.delta0, &mer),
        )
        .unwrap();
        let expect = suite.delta1.breadth(0) + 2 - suite.delta0.breadth(0);
        assert_eq!(prod.breadth(0), expect);
        assert_eq!(prod.breadth(1), expect);
    }

    #[test]
    fn inexact_division_is_an_error() {
        let f = Field::Rationals;
        let t = LaurentPoly::parse(f, &["t"], "t + 1").unwrap();
        let d0 = LaurentPoly::parse(f, &["t"], "t - 1").unwrap();
        let mer = LaurentPoly::parse(f, &["t"], "t + 2").unwrap();
        assert!(hopf_like_product((&t, &d0, &mer), (&t, &d0, &mer)).is_err());
        let zero = LaurentPoly::zero(f, 1);
        assert!(hopf_like_product((&zero, &d0, &mer), (&t, &d0, &mer)).is_err());
    }
}
