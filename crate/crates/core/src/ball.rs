//! Dual unit balls of the width seminorm in two variables: polygon, strip,
//! or the whole plane, with exact rational vertices, JSON and SVG output.

use crate::laurent::LaurentPoly;
use crate::newton::{convex_hull, newton_vertices_2d, seminorm_eval};
use num::rational::Rational64;

/// Dual ball of phi -> seminorm(phi)/k. Vertices are exact rationals in
/// counterclockwise order; halfplanes are a*x + b*y <= c. An unbounded ball
/// carries recession generators; the whole plane has no halfplanes at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBall {
    pub scale_k: usize,
    pub vertices: Vec<(Rational64, Rational64)>,
    pub halfplanes: Vec<(i64, i64, i64)>,
    pub recession: Vec<(i64, i64)>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn primitive(v: (i64, i64)) -> (i64, i64) {
    let g = gcd(v.0, v.1);
    if g == 0 {
        (0, 0)
    } else {
        (v.0 / g, v.1 / g)
    }
}

/// Difference body of the support hull: the pairwise differences of hull
/// vertices, hulled again. Centrally symmetric by construction.
pub fn difference_body(p: &LaurentPoly) -> Vec<(i64, i64)> {
    let hull = newton_vertices_2d(p);
    let mut diffs: Vec<(i64, i64)> = Vec::new();
    for &v in &hull {
        for &w in &hull {
            diffs.push((v.0 - w.0, v.1 - w.1));
        }
    }
    diffs.sort_unstable();
    diffs.dedup();
    convex_hull(diffs)
}

pub fn norm_ball_2d(p: &LaurentPoly, k: usize) -> NormBall {
    assert!(k > 0, "scale must be positive");
    assert_eq!(p.vars(), 2, "two-variable ball");
    let d = difference_body(p);
    let kq = Rational64::from_integer(k as i64);

    // zero polynomial or monomial: the seminorm vanishes identically
    if d.len() <= 1 {
        return NormBall {
            scale_k: k,
            vertices: Vec::new(),
            halfplanes: Vec::new(),
            recession: vec![(1, 0), (0, 1), (-1, 0), (0, -1)],
        };
    }

    // segment through the origin: an infinite strip
    if d.len() == 2 {
        let dir = d[1]; // d = {-dir, dir} after the symmetric hull
        let ortho = primitive((-dir.1, dir.0));
        return NormBall {
            scale_k: k,
            vertices: Vec::new(),
            halfplanes: vec![
                (dir.0, dir.1, k as i64),
                (-dir.0, -dir.1, k as i64),
            ],
            recession: vec![ortho, (-ortho.0, -ortho.1)],
        };
    }

    // full-dimensional polygon: the polar dual, one vertex per consecutive
    // halfplane pair
    let m = d.len();
    let mut vertices = Vec::with_capacity(m);
    for i in 0..m {
        let a = d[i];
        let b = d[(i + 1) % m];
        let den = a.0 * b.1 - a.1 * b.0;
        debug_assert!(den > 0, "difference body must wind counterclockwise");
        let den = Rational64::from_integer(den);
        let x = kq * Rational64::from_integer(b.1 - a.1) / den;
        let y = kq * Rational64::from_integer(a.0 - b.0) / den;
        vertices.push((x, y));
    }
    NormBall {
        scale_k: k,
        vertices,
        halfplanes: d.iter().map(|&(a, b)| (a, b, k as i64)).collect(),
        recession: Vec::new(),
    }
}

impl NormBall {
    pub fn contains(&self, x: Rational64, y: Rational64) -> bool {
        self.halfplanes.iter().all(|&(a, b, c)| {
            Rational64::from_integer(a) * x + Rational64::from_integer(b) * y
                <= Rational64::from_integer(c)
        })
    }

    pub fn is_bounded(&self) -> bool {
        !self.vertices.is_empty() && self.recession.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "scale_k": self.scale_k,
            "vertices": self
                .vertices
                .iter()
                .map(|(x, y)| vec![x.to_string(), y.to_string()])
                .collect::<Vec<_>>(),
            "halfplanes": self
                .halfplanes
                .iter()
                .map(|&(a, b, c)| vec![a, b, c])
                .collect::<Vec<_>>(),
            "recession": self
                .recession
                .iter()
                .map(|&(x, y)| vec![x, y])
                .collect::<Vec<_>>(),
        })
    }
}

/// Two scaled seminorms that disagree at phi certify that no fibration can
/// realize phi in the cone around it: a one-sided obstruction only.
pub fn fibering_obstruction(
    a: (&LaurentPoly, usize),
    b: (&LaurentPoly, usize),
    phi: &[i64],
) -> bool {
    let left = seminorm_eval(a.0, phi) * (b.1 as i64);
    let right = seminorm_eval(b.0, phi) * (a.1 as i64);
    left != right
}

fn rat_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Self-contained SVG sketch: axes, the ball (polygon or strip), labeled
/// vertices. Unbounded directions are clipped at the frame.
pub fn ball_svg(ball: &NormBall) -> String {
    let size = 420.0;
    let half = size / 2.0;
    // fit the widest feature, default scale for degenerate balls
    let mut extent: f64 = 0.0;
    for (x, y) in &ball.vertices {
        extent = extent.max(rat_f64(*x).abs()).max(rat_f64(*y).abs());
    }
    for &(a, b, c) in &ball.halfplanes {
        // distance of the boundary line from the origin
        let n = ((a * a + b * b) as f64).sqrt();
        if n > 0.0 {
            extent = extent.max((c as f64 / n).abs());
        }
    }
    if extent == 0.0 {
        extent = 1.0;
    }
    let scale = (half - 40.0) / extent;
    let px = |x: f64, y: f64| (half + x * scale, half - y * scale);

    let mut body = String::new();
    body.push_str(&format!(
        "<line x1='0' y1='{half}' x2='{size}' y2='{half}' stroke='#bbb'/>\
         <line x1='{half}' y1='0' x2='{half}' y2='{size}' stroke='#bbb'/>"
    ));

    if ball.halfplanes.is_empty() {
        body.push_str(&format!(
            "<rect x='0' y='0' width='{size}' height='{size}' fill='#7b9cd4' fill-opacity='0.25'/>\
             <text x='10' y='24' font-size='13'>entire plane</text>"
        ));
    } else if ball.vertices.is_empty() {
        // strip between two parallel boundary lines
        let (a, b, c) = ball.halfplanes[0];
        let n2 = (a * a + b * b) as f64;
        let (ux, uy) = (a as f64 / n2, b as f64 / n2); // point on a*x+b*y=c is c*(ux,uy)
        let (dx, dy) = (-(b as f64), a as f64); // direction of the lines
        let reach = extent * 6.0;
        let corners = [
            (c as f64 * ux + dx * reach, c as f64 * uy + dy * reach),
            (c as f64 * ux - dx * reach, c as f64 * uy - dy * reach),
            (-c as f64 * ux - dx * reach, -(c as f64) * uy - dy * reach),
            (-c as f64 * ux + dx * reach, -(c as f64) * uy + dy * reach),
        ];
        let pts: Vec<String> = corners
            .iter()
            .map(|&(x, y)| {
                let (sx, sy) = px(x, y);
                format!("{sx:.1},{sy:.1}")
            })
            .collect();
        body.push_str(&format!(
            "<polygon points='{}' fill='#7b9cd4' fill-opacity='0.25' stroke='#3a5a9c'/>",
            pts.join(" ")
        ));
    } else {
        let pts: Vec<String> = ball
            .vertices
            .iter()
            .map(|(x, y)| {
                let (sx, sy) = px(rat_f64(*x), rat_f64(*y));
                format!("{sx:.1},{sy:.1}")
            })
            .collect();
        body.push_str(&format!(
            "<polygon points='{}' fill='#7b9cd4' fill-opacity='0.25' stroke='#3a5a9c' stroke-width='1.5'/>",
            pts.join(" ")
        ));
        for (x, y) in &ball.vertices {
            let (sx, sy) = px(rat_f64(*x), rat_f64(*y));
            body.push_str(&format!(
                "<circle cx='{sx:.1}' cy='{sy:.1}' r='3' fill='#1d3a6e'/>\
                 <text x='{:.1}' y='{:.1}' font-size='11'>({}, {})</text>",
                sx + 5.0,
                sy - 5.0,
                x,
                y
            ));
        }
    }

    format!(
        "<svg xmlns='http://www.w3.org/2000/svg' width='{size}' height='{size}' \
         viewBox='0 0 {size} {size}' font-family='monospace'>\
         <rect width='{size}' height='{size}' fill='white'/>{body}</svg>"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn poly2(text: &str) -> LaurentPoly {
        LaurentPoly::parse(Field::Rationals, &["x", "y"], text).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn square_support_gives_diamond_ball() {
        // difference body [-1,1]^2, polar at scale 1: |x| + |y| <= 1
        let p = poly2("x*y - x - y + 1");
        let ball = norm_ball_2d(&p, 1);
        assert!(ball.is_bounded());
        let vs: std::collections::BTreeSet<_> = ball.vertices.iter().cloned().collect();
        let want: std::collections::BTreeSet<_> = [
            (rat(1, 1), rat(0, 1)),
            (rat(0, 1), rat(1, 1)),
            (rat(-1, 1), rat(0, 1)),
            (rat(0, 1), rat(-1, 1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(vs, want);
        assert!(ball.contains(rat(1, 2), rat(1, 2)));
        assert!(!ball.contains(rat(3, 4), rat(1, 2)));
    }

    #[test]
    fn rectangle_support_gives_scaled_diamond() {
        // widths 4 and 12 at scale 2: vertices (1/2,0),(0,1/6)
        let p = poly2("(1 + x + x^2 + x^3 + x^4) * (1 + y^12)");
        let ball = norm_ball_2d(&p, 2);
        let vs: std::collections::BTreeSet<_> = ball.vertices.iter().cloned().collect();
        let want: std::collections::BTreeSet<_> = [
            (rat(1, 2), rat(0, 1)),
            (rat(0, 1), rat(1, 6)),
            (rat(-1, 2), rat(0, 1)),
            (rat(0, 1), rat(-1, 6)),
        ]
        .into_iter()
        .collect();
        assert_eq!(vs, want);
    }

    #[test]
    fn collinear_support_gives_strip() {
        let p = poly2("1 + y^6 + y^12");
        let ball = norm_ball_2d(&p, 2);
        assert!(ball.vertices.is_empty());
        assert_eq!(ball.recession, vec![(-1, 0), (1, 0)]);
        // |y| <= 2/12
        assert!(ball.contains(rat(100, 1), rat(1, 6)));
        assert!(!ball.contains(rat(0, 1), rat(1, 5)));
    }

    #[test]
    fn monomial_gives_whole_plane() {
        let ball = norm_ball_2d(&poly2("x^3*y^-2"), 1);
        assert!(ball.halfplanes.is_empty());
        assert!(ball.contains(rat(1000, 1), rat(-1000, 1)));
        let ball0 = norm_ball_2d(&LaurentPoly::zero(Field::Rationals, 2), 3);
        assert!(ball0.halfplanes.is_empty());
    }

    #[test]
    fn vertices_satisfy_the_seminorm_exactly() {
        use crate::newton::seminorm_eval_rat;
        let p = poly2("3*x^6*y^2 + 3*x^4*y^2 + 4*x^4*y + 2*x^4 + x^2*y^2 + 3*x^2*y - x^2 - 1");
        let ball = norm_ball_2d(&p, 2);
        for (x, y) in &ball.vertices {
            let s = seminorm_eval_rat(&p, &[*x, *y]);
            assert_eq!(s, rat(2, 1), "vertex ({x},{y})");
        }
    }

    #[test]
    fn membership_matches_seminorm_on_random_rationals() {
        use crate::newton::seminorm_eval_rat;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let p = poly2("x*y - x - y + 1");
        let ball = norm_ball_2d(&p, 1);
        for _ in 0..500 {
            let x = rat(rng.gen_range(-30..=30), rng.gen_range(1..=9));
            let y = rat(rng.gen_range(-30..=30), rng.gen_range(1..=9));
            let inside = seminorm_eval_rat(&p, &[x, y]) <= rat(1, 1);
            assert_eq!(ball.contains(x, y), inside, "at ({x},{y})");
        }
    }

    #[test]
    fn obstruction_fires_only_off_axis() {
        // normalized widths: (2|p|+4|q|)/1 vs (4|p|+12|q|)/2
        let untwisted = poly2("(1 + x + x^2) * (1 + y^4)");
        let twisted = poly2("(1 + x^4) * (1 + y^12)");
        assert!(!fibering_obstruction((&untwisted, 1), (&twisted, 2), &[1, 0]));
        assert!(!fibering_obstruction((&untwisted, 1), (&twisted, 2), &[-3, 0]));
        assert!(fibering_obstruction((&untwisted, 1), (&twisted, 2), &[0, 1]));
        assert!(fibering_obstruction((&untwisted, 1), (&twisted, 2), &[1, 1]));
        assert!(fibering_obstruction((&untwisted, 1), (&twisted, 2), &[2, -1]));
    }

    #[test]
    fn svg_renders_all_shapes() {
        for p in ["x*y - x - y + 1", "1 + y^6", "x"] {
            let svg = ball_svg(&norm_ball_2d(&poly2(p), 1));
            assert!(svg.starts_with("<svg"));
            assert!(svg.ends_with("</svg>"));
        }
    }

    #[test]
    fn json_shape() {
        let ball = norm_ball_2d(&poly2("x*y - x - y + 1"), 1);
        let v = ball.to_json();
        assert_eq!(v["scale_k"], 1);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
        assert_eq!(v["recession"].as_array().unwrap().len(), 0);
    }
}
