//! Finite-dimensional representations over Q or a prime field: validation,
//! symmetric-group search with Wirtinger propagation, the sum-zero standard
//! module, abelian characters, and pullback to covers.

use crate::cover::CoverData;
use crate::error::Error;
use crate::field::{Field, FieldElem};
use crate::perm::{self, Perm};
use crate::presentation::GroupPresentation;
use crate::words::FreeWord;
use num::bigint::BigInt;
use num::ToPrimitive;
use std::collections::BTreeSet;

pub type FMat = Vec<Vec<FieldElem>>;

pub fn mat_identity(field: Field, k: usize) -> FMat {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { field.one() } else { field.zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(field: Field, a: &FMat, b: &FMat) -> FMat {
    let k = a.len();
    let n = b[0].len();
    let mut out = vec![vec![field.zero(); n]; k];
    for i in 0..k {
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                let t = field.mul(&a[i][l], &brow[j]);
                out[i][j] = field.add(&out[i][j], &t);
            }
        }
    }
    out
}

pub fn mat_is_identity(a: &FMat) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
    })
}

/// Gauss-Jordan inverse; None for singular input.
pub fn mat_inverse(field: Field, a: &FMat) -> Option<FMat> {
    let k = a.len();
    let mut m: Vec<Vec<FieldElem>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..k {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let inv = field.inv(&m[col][col])?;
        for j in 0..2 * k {
            m[col][j] = field.mul(&m[col][j], &inv);
        }
        for r in 0..k {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..2 * k {
                let t = field.mul(&f, &m[col][j]);
                m[r][j] = field.sub(&m[r][j], &t);
            }
        }
    }
    Some(m.into_iter().map(|row| row[k..].to_vec()).collect())
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub field: Field,
    pub dim: usize,
    pub images: Vec<FMat>,
    inverses: Vec<FMat>,
}

impl Representation {
    pub fn new(field: Field, dim: usize, images: Vec<FMat>) -> Result<Representation, Error> {
        let mut inverses = Vec::with_capacity(images.len());
        for (g, m) in images.iter().enumerate() {
            if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                return Err(Error::validation(format!(
                    "image {g} is not a {dim}x{dim} matrix"
                )));
            }
            let inv = mat_inverse(field, m).ok_or_else(|| {
                Error::validation(format!("image of generator {g} is singular"))
            })?;
            inverses.push(inv);
        }
        Ok(Representation {
            field,
            dim,
            images,
            inverses,
        })
    }

    pub fn trivial(field: Field, generators: usize) -> Representation {
        let id = mat_identity(field, 1);
        Representation {
            field,
            dim: 1,
            images: vec![id.clone(); generators],
            inverses: vec![id; generators],
        }
    }

    pub fn evaluate(&self, w: &FreeWord) -> FMat {
        let mut acc = mat_identity(self.field, self.dim);
        for &(g, s) in w.letters() {
            let m = if s { &self.images[g] } else { &self.inverses[g] };
            acc = mat_mul(self.field, &acc, m);
        }
        acc
    }

    /// Every relator must evaluate to the identity matrix.
    pub fn validate(&self, pres: &GroupPresentation) -> Result<(), Error> {
        if self.images.len() != pres.generators.len() {
            return Err(Error::validation(format!(
                "representation has {} images for {} generators",
                self.images.len(),
                pres.generators.len()
            )));
        }
        for (j, r) in pres.relators.iter().enumerate() {
            if !mat_is_identity(&self.evaluate(r)) {
                return Err(Error::validation(format!(
                    "relator {j} ('{}') does not map to the identity",
                    r.display(&pres.generators)
                )));
            }
        }
        Ok(())
    }

    pub fn conjugated(&self, basis: &FMat) -> Result<Representation, Error> {
        let inv = mat_inverse(self.field, basis)
            .ok_or_else(|| Error::validation("singular basis change".to_string()))?;
        let images = self
            .images
            .iter()
            .map(|m| mat_mul(self.field, &mat_mul(self.field, &inv, m), basis))
            .collect();
        Representation::new(self.field, self.dim, images)
    }

    pub fn to_json(&self, names: &[String]) -> String {
        let mut map = serde_json::Map::new();
        map.insert("field".into(), field_to_json(self.field));
        map.insert("dim".into(), serde_json::json!(self.dim));
        let mut imgs = serde_json::Map::new();
        for (g, m) in self.images.iter().enumerate() {
            let rows: Vec<serde_json::Value> = m
                .iter()
                .map(|row| serde_json::Value::Array(row.iter().map(elem_to_json).collect()))
                .collect();
            imgs.insert(names[g].clone(), serde_json::Value::Array(rows));
        }
        map.insert("images".into(), serde_json::Value::Object(imgs));
        serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("rep serialization")
    }

    pub fn from_json(text: &str, pres: &GroupPresentation) -> Result<Representation, Error> {
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("representation JSON: {e}")))?;
        let field = field_from_json(
            v.get("field")
                .ok_or_else(|| Error::parse("representation JSON lacks 'field'".to_string()))?,
        )?;
        let dim = v
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::parse("representation JSON lacks 'dim'".to_string()))?
            as usize;
        let imgs = v
            .get("images")
            .and_then(|i| i.as_object())
            .ok_or_else(|| Error::parse("representation JSON lacks 'images'".to_string()))?;
        let mut images = Vec::new();
        for name in &pres.generators {
            let m = imgs.get(name).ok_or_else(|| {
                Error::parse(format!("representation JSON missing image for '{name}'"))
            })?;
            let rows = m
                .as_array()
                .ok_or_else(|| Error::parse(format!("image of '{name}' is not an array")))?;
            let mut mat = Vec::new();
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::parse(format!("row of '{name}' is not an array")))?;
                let mut out = Vec::new();
                for e in row {
                    out.push(elem_from_json(field, e)?);
                }
                mat.push(out);
            }
            images.push(mat);
        }
        Representation::new(field, dim, images)
    }
}

fn field_to_json(f: Field) -> serde_json::Value {
    match f {
        Field::Rationals => serde_json::json!("Q"),
        Field::Prime(p) => serde_json::json!(p),
    }
}

fn field_from_json(v: &serde_json::Value) -> Result<Field, Error> {
    match v {
        serde_json::Value::String(s) if s == "Q" || s == "q" => Ok(Field::Rationals),
        serde_json::Value::Number(n) => {
            let p = n
                .as_u64()
                .ok_or_else(|| Error::parse(format!("bad field '{n}'")))?;
            Field::prime(p)
        }
        other => Err(Error::parse(format!("bad field '{other}'"))),
    }
}

fn elem_to_json(e: &FieldElem) -> serde_json::Value {
    match e {
        FieldElem::Mod(v) => serde_json::json!(v),
        FieldElem::Rat(r) => {
            if r.is_integer() {
                match r.numer().to_i64() {
                    Some(n) => serde_json::json!(n),
                    None => serde_json::json!(r.to_string()),
                }
            } else {
                serde_json::json!(r.to_string())
            }
        }
    }
}

fn elem_from_json(field: Field, v: &serde_json::Value) -> Result<FieldElem, Error> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(field.from_i64(i))
            } else {
                Err(Error::parse(format!("non-integer matrix entry '{n}'")))
            }
        }
        serde_json::Value::String(s) => field.parse_elem(s),
        other => Err(Error::parse(format!("bad matrix entry '{other}'"))),
    }
}

/// Per-generator permutations satisfying all relators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PermutationAssignment {
    pub q: usize,
    pub images: Vec<Perm>,
}

impl PermutationAssignment {
    pub fn validate(&self, pres: &GroupPresentation) -> Result<(), Error> {
        for (j, r) in pres.relators.iter().enumerate() {
            if !perm::is_identity(&eval_perm_word(&self.images, self.q, r)) {
                return Err(Error::validation(format!(
                    "relator {j} does not map to the identity permutation"
                )));
            }
        }
        Ok(())
    }

    pub fn has_abelian_image(&self) -> bool {
        for a in &self.images {
            for b in &self.images {
                if perm::compose(a, b) != perm::compose(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

fn eval_perm_word(images: &[Perm], q: usize, w: &FreeWord) -> Perm {
    let mut acc = perm::identity(q);
    for &(g, s) in w.letters() {
        let m = if s {
            images[g].clone()
        } else {
            perm::inverse(&images[g])
        };
        acc = perm::compose(&acc, &m);
    }
    acc
}

fn all_perms(q: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = perm::identity(q);
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..q.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..q).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Lexicographically minimal simultaneous conjugate, the dedup key.
fn canonical_conjugate(images: &[Perm], universe: &[Perm]) -> Vec<Perm> {
    let mut best: Option<Vec<Perm>> = None;
    for sigma in universe {
        let sigma_inv = perm::inverse(sigma);
        let conj: Vec<Perm> = images
            .iter()
            .map(|p| perm::compose(&perm::compose(&sigma_inv, p), sigma))
            .collect();
        if best.as_ref().map(|b| &conj < b).unwrap_or(true) {
            best = Some(conj);
        }
    }
    best.unwrap_or_else(|| images.to_vec())
}

/// Backtracking search for homomorphisms into S_q, propagating Wirtinger
/// conjugation relators (the third image is determined by the other two),
/// deduplicated up to simultaneous conjugation.
pub fn search_symmetric(
    pres: &GroupPresentation,
    q: usize,
    limit: usize,
    exclude_abelian: bool,
) -> Result<Vec<PermutationAssignment>, Error> {
    if !(2..=6).contains(&q) {
        return Err(Error::validation(format!("q = {q} outside 2..6")));
    }
    let n = pres.generators.len();
    let universe = all_perms(q);

    // conjugation constraints (over, in, out, sign): out = over^s in over^-s
    struct Conj {
        over: usize,
        inner: usize,
        out: usize,
        pos: bool,
    }
    let mut conjs = Vec::new();
    for r in &pres.relators {
        let l = r.letters();
        if l.len() == 4 && l[0].0 == l[2].0 && l[0].1 != l[2].1 && l[1].1 && !l[3].1 {
            conjs.push(Conj {
                over: l[0].0,
                inner: l[1].0,
                out: l[3].0,
                pos: l[0].1,
            });
        }
    }

    let mut found: Vec<PermutationAssignment> = Vec::new();
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
    let mut state: Vec<Option<Perm>> = vec![None; n];

    fn propagate(
        state: &mut [Option<Perm>],
        conjs: &[Conj],
        pres: &GroupPresentation,
        q: usize,
    ) -> Result<(), ()> {
        loop {
            let mut progress = false;
            for c in conjs {
                let ov = state[c.over].clone();
                let Some(ov) = ov else { continue };
                let ov_dir = if c.pos {
                    ov.clone()
                } else {
                    perm::inverse(&ov)
                };
                let ov_inv = perm::inverse(&ov_dir);
                match (state[c.inner].clone(), state[c.out].clone()) {
                    (Some(inn), None) => {
                        let out = perm::compose(&perm::compose(&ov_dir, &inn), &ov_inv);
                        state[c.out] = Some(out);
                        progress = true;
                    }
                    (None, Some(out)) => {
                        let inn = perm::compose(&perm::compose(&ov_inv, &out), &ov_dir);
                        state[c.inner] = Some(inn);
                        progress = true;
                    }
                    (Some(inn), Some(out)) => {
                        if perm::compose(&perm::compose(&ov_dir, &inn), &ov_inv) != out {
                            return Err(());
                        }
                    }
                    (None, None) => {}
                }
            }
            if !progress {
                break;
            }
        }
        // fully assigned relators must evaluate to the identity
        for r in &pres.relators {
            if r.letters().iter().all(|&(g, _)| state[g].is_some()) {
                let images: Vec<Perm> = state
                    .iter()
                    .map(|s| s.clone().unwrap_or_else(|| perm::identity(q)))
                    .collect();
                if !perm::is_identity(&eval_perm_word(&images, q, r)) {
                    return Err(());
                }
            }
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        state: &mut Vec<Option<Perm>>,
        conjs: &[Conj],
        pres: &GroupPresentation,
        q: usize,
        universe: &[Perm],
        seen: &mut BTreeSet<Vec<Perm>>,
        found: &mut Vec<PermutationAssignment>,
        limit: usize,
        exclude_abelian: bool,
    ) {
        if found.len() >= limit {
            return;
        }
        let Some(free) = state.iter().position(|s| s.is_none()) else {
            let images: Vec<Perm> = state.iter().map(|s| s.clone().unwrap()).collect();
            let assign = PermutationAssignment {
                q,
                images: images.clone(),
            };
            if assign.validate(pres).is_err() {
                return;
            }
            if exclude_abelian && assign.has_abelian_image() {
                return;
            }
            let key = canonical_conjugate(&images, universe);
            if seen.insert(key) {
                found.push(assign);
            }
            return;
        };
        let saved = state.clone();
        for p in universe {
            state[free] = Some(p.clone());
            if propagate(state, conjs, pres, q).is_ok() {
                recurse(
                    state, conjs, pres, q, universe, seen, found, limit,
                    exclude_abelian,
                );
            }
            *state = saved.clone();
        }
    }

    recurse(
        &mut state,
        &conjs,
        pres,
        q,
        &universe,
        &mut seen,
        &mut found,
        limit,
        exclude_abelian,
    );
    found.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(found)
}

/// Permutation matrices restricted to the sum-zero subspace in the basis
/// e_1 - e_q, ..., e_{q-1} - e_q.
pub fn standard_module(assign: &PermutationAssignment, p: u64) -> Result<Representation, Error> {
    let field = Field::prime(p)?;
    let q = assign.q;
    let k = q - 1;
    let mut images = Vec::new();
    for sigma in &assign.images {
        let mut m = vec![vec![field.zero(); k]; k];
        for c in 0..k {
            // sigma(e_c - e_{q-1}) = e_{sigma(c)} - e_{sigma(q-1)}
            let top = sigma[c];
            let bot = sigma[q - 1];
            if top < k {
                m[top][c] = field.add(&m[top][c], &field.one());
            }
            if bot < k {
                m[bot][c] = field.sub(&m[bot][c], &field.one());
            }
        }
        images.push(m);
    }
    Representation::new(field, k, images)
}

/// All homomorphisms to the units of F_p, through the abelianization. The
/// optional cap bounds how many are returned.
pub fn enumerate_characters(
    pres: &GroupPresentation,
    p: u64,
    cap: Option<usize>,
) -> Result<Vec<Representation>, Error> {
    let field = Field::prime(p)?;
    let n = pres.generators.len();
    let units = p - 1;
    // multiplicative generator of F_p^*
    let omega = (2..p)
        .find(|&w| {
            let mut pw = 1u64;
            let mut seen = 1u64;
            for _ in 0..units - 1 {
                pw = pw * w % p;
                if pw == 1 {
                    break;
                }
                seen += 1;
            }
            seen == units
        })
        .unwrap_or(1);

    // coordinates of each generator in the diagonalized H_1
    let (coords, orders): (Vec<Vec<i64>>, Vec<u64>) = if pres.relators.is_empty() {
        (
            (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
            vec![0; n],
        )
    } else {
        let snf = crate::intmat::smith_normal_form(&pres.relator_matrix());
        let coords = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| snf.v[i][j].to_i64().expect("character coordinate fits"))
                    .collect()
            })
            .collect();
        let mut orders = vec![0u64; n];
        for (i, o) in orders.iter_mut().enumerate() {
            if i < snf.d.len() && !num::Zero::is_zero(&snf.d[i]) {
                *o = num::Integer::gcd(&snf.d[i], &BigInt::from(units))
                    .to_u64()
                    .expect("character order fits");
            }
        }
        (coords, orders)
    };

    // per coordinate: the list of allowed values
    let mut choices: Vec<Vec<u64>> = Vec::new();
    for &o in &orders {
        let e = if o == 0 { units } else { o };
        let step = units / e;
        let mut vals = Vec::with_capacity(e as usize);
        let mut v = 1u64;
        let omega_step = pow_mod(omega, step, p);
        for _ in 0..e {
            vals.push(v);
            v = v * omega_step % p;
        }
        choices.push(vals);
    }

    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let vals: Vec<u64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let mut images = Vec::with_capacity(n);
        for g in 0..n {
            let mut acc = 1u64;
            for (c, &v) in vals.iter().enumerate() {
                acc = acc * char_pow(v, coords[g][c], p) % p;
            }
            images.push(vec![vec![FieldElem::Mod(acc)]]);
        }
        let rep = Representation::new(field, 1, images)?;
        rep.validate(pres)?;
        out.push(rep);
        if let Some(c) = cap {
            if out.len() >= c {
                break;
            }
        }
        // advance mixed-radix counter
        for pos in 0..=n {
            if pos == n {
                break 'outer;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    Ok(out)
}

/// Character count from the invariant factors: product of gcd(d_i, p-1)
/// over torsion, times (p-1)^b over the free rank.
pub fn character_count(pres: &GroupPresentation, p: u64) -> u128 {
    let n = pres.generators.len();
    let units = (p - 1) as u128;
    if pres.relators.is_empty() {
        return units.pow(n as u32);
    }
    let snf = crate::intmat::smith_normal_form(&pres.relator_matrix());
    let mut count: u128 = 1;
    for i in 0..n {
        if i < snf.d.len() && !num::Zero::is_zero(&snf.d[i]) {
            let g = num::Integer::gcd(&snf.d[i], &BigInt::from(p - 1));
            count *= g.to_u128().expect("gcd fits");
        } else {
            count *= units;
        }
    }
    count
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn char_pow(v: u64, e: i64, p: u64) -> u64 {
    if e >= 0 {
        pow_mod(v, e as u64, p)
    } else {
        let inv = pow_mod(v, p - 2, p);
        pow_mod(inv, (-e) as u64, p)
    }
}

/// Each cover generator maps to the base representation of its underlying
/// word; validated against the cover presentation.
pub fn pullback_rep(rep: &Representation, cover: &CoverData) -> Result<Representation, Error> {
    let images = cover
        .underlying
        .iter()
        .map(|w| rep.evaluate(w))
        .collect::<Vec<_>>();
    let out = Representation::new(rep.field, rep.dim, images)?;
    out.validate(&cover.presentation)?;
    Ok(out)
}
