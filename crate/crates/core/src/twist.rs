//! Fox-Jacobian order computations twisted by a linear representation
//! tensored with the free-abelian character of the presentation.

use crate::error::Error;
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::polymat::{minor_gcd, poly_det, PolyMatrix};
use crate::presentation::{AbelianizationMap, GroupPresentation};
use crate::rep::Representation;
use crate::words::{fox_derivative, FreeWord, GroupRingElem};

/// A presentation together with its free-abelianization map and a linear
/// representation, the full input of the order pipeline.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub pres: GroupPresentation,
    pub psi: AbelianizationMap,
    pub rep: Representation,
}

pub type PolyBlock = Vec<Vec<LaurentPoly>>;

impl TwistData {
    pub fn new(
        pres: GroupPresentation,
        psi: AbelianizationMap,
        rep: Representation,
    ) -> Result<TwistData, Error> {
        if psi.rank == 0 {
            return Err(Error::validation("rank-zero abelian quotient".to_string()));
        }
        psi.validate(&pres)?;
        rep.validate(&pres)?;
        Ok(TwistData { pres, psi, rep })
    }

    pub fn trivial_over(
        pres: GroupPresentation,
        psi: AbelianizationMap,
        field: Field,
    ) -> Result<TwistData, Error> {
        let rep = Representation::trivial(field, pres.num_generators());
        TwistData::new(pres, psi, rep)
    }

    pub fn b(&self) -> usize {
        self.psi.rank
    }

    pub fn k(&self) -> usize {
        self.rep.dim
    }

    pub fn field(&self) -> Field {
        self.rep.field
    }

    /// Image of a single word: the matrix part times the monomial carrying
    /// its abelianized exponent vector.
    pub fn twist_word(&self, w: &FreeWord) -> PolyBlock {
        let k = self.k();
        let b = self.b();
        let field = self.field();
        let a = self.rep.evaluate(w);
        let e = self.psi.eval(w);
        (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| {
                        if a[r][c].is_zero() {
                            LaurentPoly::zero(field, b)
                        } else {
                            LaurentPoly::monomial(field, b, &e, a[r][c].clone())
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Linear extension of [`twist_word`] to group-ring elements.
    pub fn twist_block(&self, elem: &GroupRingElem) -> PolyBlock {
        let k = self.k();
        let b = self.b();
        let field = self.field();
        let mut out = vec![vec![LaurentPoly::zero(field, b); k]; k];
        for (w, c) in elem.iter() {
            let coeff = field.from_i64(c);
            let a = self.rep.evaluate(w);
            let e = self.psi.eval(w);
            for (r, out_row) in out.iter_mut().enumerate() {
                for (col, slot) in out_row.iter_mut().enumerate() {
                    if a[r][col].is_zero() {
                        continue;
                    }
                    let term =
                        LaurentPoly::monomial(field, b, &e, field.mul(&a[r][col], &coeff));
                    *slot = slot.add(&term);
                }
            }
        }
        out
    }

    /// Image of generator i minus the identity block.
    pub fn generator_block(&self, i: usize) -> PolyBlock {
        let mut block = self.twist_word(&FreeWord::generator(i));
        let one = LaurentPoly::one(self.field(), self.b());
        for (d, row) in block.iter_mut().enumerate() {
            row[d] = row[d].sub(&one);
        }
        block
    }
}

fn write_block(m: &mut PolyMatrix, block: &PolyBlock, row0: usize, col0: usize) {
    for (r, row) in block.iter().enumerate() {
        for (c, p) in row.iter().enumerate() {
            m.set(row0 + r, col0 + c, p.clone());
        }
    }
}

/// The (relators x generators) Jacobian of twisted Fox derivatives, one
/// k x k block per entry.
pub fn alexander_matrix(data: &TwistData) -> PolyMatrix {
    let k = data.k();
    let n = data.pres.num_generators();
    let m = data.pres.num_relators();
    let mut out = PolyMatrix::new(data.field(), data.b(), m * k, n * k);
    for (j, r) in data.pres.relators.iter().enumerate() {
        for i in 0..n {
            let block = data.twist_block(&fox_derivative(r, i));
            write_block(&mut out, &block, j * k, i * k);
        }
    }
    out
}

/// Row of blocks (image of g_i) - I, the presentation matrix of the
/// zeroth homology.
pub fn order_zero_matrix(data: &TwistData) -> PolyMatrix {
    let k = data.k();
    let n = data.pres.num_generators();
    let mut out = PolyMatrix::new(data.field(), data.b(), k, n * k);
    for i in 0..n {
        let block = data.generator_block(i);
        write_block(&mut out, &block, 0, i * k);
    }
    out
}

pub fn delta0(data: &TwistData) -> LaurentPoly {
    minor_gcd(&order_zero_matrix(data), data.k(), None).gcd.canonical()
}

/// Gcd of the corank-k minors of the Jacobian. Zero when the zeroth order
/// vanishes or when there are too few rows for any minor. The second value
/// reports whether a cap truncated the enumeration (result then only
/// divides the true gcd).
pub fn delta1_full(data: &TwistData, cap: Option<usize>) -> (LaurentPoly, bool) {
    let k = data.k();
    let n = data.pres.num_generators();
    let m = data.pres.num_relators();
    let size = n * k - k;
    if delta0(data).is_zero() || m * k < size {
        return (LaurentPoly::zero(data.field(), data.b()), false);
    }
    let mg = minor_gcd(&alexander_matrix(data), size, cap);
    (mg.gcd.canonical(), mg.divisor_only)
}

/// Column-deletion route: for every admissible generator j (the block
/// det(image(g_j) - I) is nonzero) the quotient det(A_j)/det_j agrees up to
/// units; the first one times delta0 is the answer. None when the route does
/// not apply (presentation not square after deletion, or no admissible j).
pub fn delta1_wada(data: &TwistData) -> Result<Option<LaurentPoly>, Error> {
    let k = data.k();
    let n = data.pres.num_generators();
    let m = data.pres.num_relators();
    if m + 1 != n {
        return Ok(None);
    }
    let d0 = delta0(data);
    if d0.is_zero() {
        return Ok(Some(LaurentPoly::zero(data.field(), data.b())));
    }
    let mut admissible: Vec<(usize, LaurentPoly)> = Vec::new();
    for j in 0..n {
        let block = PolyMatrix::from_rows(data.field(), data.b(), data.generator_block(j));
        let den = poly_det(&block);
        if !den.is_zero() {
            admissible.push((j, den));
        }
    }
    if admissible.is_empty() {
        return Ok(None);
    }
    let a = alexander_matrix(data);
    let mut nums = Vec::with_capacity(admissible.len());
    for (j, _) in &admissible {
        let cols: Vec<usize> = (j * k..(j + 1) * k).collect();
        nums.push(poly_det(&a.delete_columns(&cols)));
    }
    for i in 1..admissible.len() {
        let left = nums[0].mul(&admissible[i].1);
        let right = nums[i].mul(&admissible[0].1);
        if !left.unit_eq(&right) {
            return Err(Error::math(format!(
                "column-deletion quotients disagree between generators {} and {}",
                admissible[0].0, admissible[i].0
            )));
        }
    }
    let num = nums[0].mul(&d0);
    let q = num.div_exact(&admissible[0].1).ok_or_else(|| {
        Error::math("inexact division in the column-deletion route".to_string())
    })?;
    Ok(Some(q.canonical()))
}

/// Second order for a deficiency-one complex: the kernel of the top
/// differential is a submodule of a free module, zero exactly when the first
/// order is nonzero. The flag marks the degenerate case.
pub fn delta2(data: &TwistData, d1: &LaurentPoly) -> (LaurentPoly, bool) {
    if d1.is_zero() {
        (LaurentPoly::zero(data.field(), data.b()), true)
    } else {
        (LaurentPoly::one(data.field(), data.b()), false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMethod {
    FullMinorGcd,
    Wada,
}

impl DeltaMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            DeltaMethod::FullMinorGcd => "full-minor-gcd",
            DeltaMethod::Wada => "wada",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlexanderResult {
    pub delta0: LaurentPoly,
    pub delta1: LaurentPoly,
    pub delta2: LaurentPoly,
    pub delta2_undetermined: bool,
    pub b: usize,
    pub k: usize,
    pub field: Field,
    pub method: DeltaMethod,
    pub divisor_only: bool,
}

/// All three orders. prefer_wada takes the column-deletion fast path when it
/// applies, falling back to the full minor enumeration.
pub fn alexander_suite(
    data: &TwistData,
    prefer_wada: bool,
    cap: Option<usize>,
) -> Result<AlexanderResult, Error> {
    let d0 = delta0(data);
    let mut method = DeltaMethod::FullMinorGcd;
    let mut divisor_only = false;
    let d1 = if prefer_wada {
        match delta1_wada(data)? {
            Some(d1) => {
                method = DeltaMethod::Wada;
                d1
            }
            None => {
                let (d1, cap_hit) = delta1_full(data, cap);
                divisor_only = cap_hit;
                d1
            }
        }
    } else {
        let (d1, cap_hit) = delta1_full(data, cap);
        divisor_only = cap_hit;
        d1
    };
    let (d2, undetermined) = delta2(data, &d1);
    Ok(AlexanderResult {
        delta0: d0,
        delta1: d1,
        delta2: d2,
        delta2_undetermined: undetermined,
        b: data.b(),
        k: data.k(),
        field: data.field(),
        method,
        divisor_only,
    })
}

/// Rerun the whole suite with the abelianization composed into a single
/// variable along the covector. This recomputes at the matrix level; it does
/// not specialize the multivariable polynomial.
pub fn one_variable_suite(
    data: &TwistData,
    phi: &[i64],
    prefer_wada: bool,
    cap: Option<usize>,
) -> Result<AlexanderResult, Error> {
    if phi.len() != data.b() {
        return Err(Error::validation(format!(
            "covector has {} entries for rank {}",
            phi.len(),
            data.b()
        )));
    }
    if phi.iter().all(|&c| c == 0) {
        return Err(Error::validation("zero covector".to_string()));
    }
    let composed = TwistData::new(
        data.pres.clone(),
        data.psi.compose_covector(phi),
        data.rep.clone(),
    )?;
    alexander_suite(&composed, prefer_wada, cap)
}

#[derive(Clone, Debug)]
pub struct TuraevCheck {
    pub holds: bool,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

/// Torsion consistency: the one-variable first order must be unit-equal to
/// the specialized multivariable first order times the one-variable zeroth
/// and second orders. The zero cases are covered: a vanishing specialization
/// forces a vanishing one-variable order and conversely a vanishing
/// one-variable order zeroes the second-order factor.
pub fn check_turaev_identity(
    data: &TwistData,
    phi: &[i64],
    multi: &AlexanderResult,
) -> Result<TuraevCheck, Error> {
    if data.b() < 2 {
        return Err(Error::validation(
            "identity check needs rank at least 2".to_string(),
        ));
    }
    if multi.divisor_only {
        return Err(Error::validation(
            "identity check needs an exact multivariable order".to_string(),
        ));
    }
    let one = one_variable_suite(data, phi, true, None)?;
    assert!(
        !one.delta0.is_zero(),
        "one-variable zeroth order vanished on a validated input"
    );
    let lhs = one.delta1.clone();
    let rhs = multi
        .delta1
        .specialize(phi)
        .mul(&one.delta0)
        .mul(&one.delta2)
        .canonical();
    Ok(TuraevCheck {
        holds: lhs.unit_eq(&rhs),
        lhs,
        rhs,
    })
}
