//! Sparse multivariable Laurent polynomials with exact coefficients.
//!
//! Terms are kept in a BTreeMap keyed by exponent vector, so iteration order,
//! and with it every derived output, is deterministic. Exponent vectors always
//! have exactly `vars` entries; the map never stores zero coefficients.
//!
//! Units of the Laurent ring are the nonzero single-term polynomials. The
//! canonical form of a nonzero polynomial shifts every variable's minimum
//! exponent to 0 and rescales so the lexicographically largest remaining term
//! has coefficient 1; two polynomials agree up to a unit exactly when their
//! canonical forms are equal.

use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::field::{Field, FieldElem};

/// Exponent vector. Inline up to 4 variables.
pub type Expo = SmallVec<[i16; 4]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    vars: usize,
    terms: BTreeMap<Expo, FieldElem>,
}

impl LaurentPoly {
    pub fn zero(field: Field, vars: usize) -> LaurentPoly {
        LaurentPoly {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, vars: usize, c: FieldElem) -> LaurentPoly {
        let mut p = LaurentPoly::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(Expo::from_elem(0, vars), c);
        }
        p
    }

    pub fn one(field: Field, vars: usize) -> LaurentPoly {
        LaurentPoly::constant(field, vars, field.one())
    }

    /// c * x^e
    pub fn monomial(field: Field, vars: usize, e: &[i64], c: FieldElem) -> LaurentPoly {
        let mut p = LaurentPoly::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(to_expo(e, vars), c);
        }
        p
    }

    /// The variable x_i.
    pub fn var(field: Field, vars: usize, i: usize) -> LaurentPoly {
        let mut e = vec![0i64; vars];
        e[i] = 1;
        LaurentPoly::monomial(field, vars, &e, field.one())
    }

    pub fn from_terms(field: Field, vars: usize, terms: &[(&[i64], FieldElem)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(field, vars);
        for (e, c) in terms {
            p.add_term(&to_expo(e, vars), c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Unit of the Laurent ring: exactly one term.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> FieldElem {
        self.terms
            .get(&to_expo(e, self.vars))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, e: &Expo, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(e) {
            Some(old) => {
                let s = self.field.add(old, c);
                if s.is_zero() {
                    self.terms.remove(e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e.clone(), c.clone());
            }
        }
    }

    fn check_compat(&self, other: &LaurentPoly) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.vars, other.vars, "variable count mismatch");
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check_compat(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.field, self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    /// Multiply by c * x^e.
    pub fn mul_term(&self, e: &[i64], c: &FieldElem) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.field, self.vars);
        }
        let shift = to_expo(e, self.vars);
        let mut out = LaurentPoly::zero(self.field, self.vars);
        for (ex, co) in &self.terms {
            let mut ne = ex.clone();
            for (a, b) in ne.iter_mut().zip(shift.iter()) {
                *a = a.checked_add(*b).expect("exponent overflow");
            }
            out.terms.insert(ne, self.field.mul(co, c));
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.check_compat(other);
        let mut out = LaurentPoly::zero(self.field, self.vars);
        // iterate over the smaller operand's terms in the outer loop
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                let mut e = e1.clone();
                for (a, b) in e.iter_mut().zip(e2.iter()) {
                    *a = a.checked_add(*b).expect("exponent overflow");
                }
                out.add_term(&e, &small.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.field, self.vars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Per-variable minimum exponents. None for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        self.exponent_fold(|a, b| a.min(b))
    }

    pub fn max_exponents(&self) -> Option<Vec<i64>> {
        self.exponent_fold(|a, b| a.max(b))
    }

    fn exponent_fold(&self, f: impl Fn(i64, i64) -> i64) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut acc: Vec<i64> = first.iter().map(|&x| x as i64).collect();
        for e in it {
            for (a, &b) in acc.iter_mut().zip(e.iter()) {
                *a = f(*a, b as i64);
            }
        }
        Some(acc)
    }

    /// Breadth in variable i: max exponent minus min exponent. 0 for the zero
    /// polynomial by convention.
    pub fn breadth(&self, i: usize) -> i64 {
        match (self.max_exponents(), self.min_exponents()) {
            (Some(max), Some(min)) => max[i] - min[i],
            _ => 0,
        }
    }

    /// Canonical unit-normal form. Zero maps to zero.
    pub fn canonical(&self) -> LaurentPoly {
        let Some(min) = self.min_exponents() else {
            return self.clone();
        };
        let shift: Vec<i64> = min.iter().map(|&m| -m).collect();
        let shifted = self.mul_term(&shift, &self.field.one());
        // scale the lexicographically largest term to coefficient 1
        let (_, lead) = shifted.terms.last_key_value().expect("nonzero");
        let inv = self.field.inv(lead).expect("nonzero coefficient");
        shifted.scale(&inv)
    }

    /// Equality up to multiplication by a unit c * x^e.
    pub fn unit_eq(&self, other: &LaurentPoly) -> bool {
        self.canonical() == other.canonical()
    }

    /// Ring map x_i -> t^(phi_i): exponent vectors are contracted against phi.
    pub fn specialize(&self, phi: &[i64]) -> LaurentPoly {
        assert_eq!(phi.len(), self.vars, "covector length mismatch");
        let mut out = LaurentPoly::zero(self.field, 1);
        for (e, c) in &self.terms {
            let d: i64 = e
                .iter()
                .zip(phi.iter())
                .map(|(&ei, &pi)| ei as i64 * pi)
                .sum();
            out.add_term(&to_expo(&[d], 1), c);
        }
        out
    }

    /// Full evaluation. None if a negative exponent meets a non-invertible value.
    pub fn evaluate(&self, xs: &[FieldElem]) -> Option<FieldElem> {
        assert_eq!(xs.len(), self.vars);
        let f = self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                let p = if ei >= 0 {
                    f.pow(&xs[i], ei as u64)
                } else {
                    f.pow(&f.inv(&xs[i])?, (-ei) as u64)
                };
                term = f.mul(&term, &p);
            }
            acc = f.add(&acc, &term);
        }
        Some(acc)
    }

    /// Exact division in the Laurent ring. None when the division has a remainder.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        self.check_compat(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        // shift both to ordinary polynomials; monomial factors are units
        let smin = self.min_exponents().unwrap();
        let dmin = d.min_exponents().unwrap();
        let f = self.field;
        let one = f.one();
        let num = self.mul_term(&smin.iter().map(|&m| -m).collect::<Vec<_>>(), &one);
        let den = d.mul_term(&dmin.iter().map(|&m| -m).collect::<Vec<_>>(), &one);

        // normal-form reduction by the single divisor under lex order
        let (dlead_e, dlead_c) = den.terms.last_key_value().expect("nonzero divisor");
        let dlead_e = dlead_e.clone();
        let dlead_c = dlead_c.clone();
        let dlead_inv = f.inv(&dlead_c).expect("nonzero");
        let mut rem = num;
        let mut quot = LaurentPoly::zero(f, self.vars);
        loop {
            // largest remaining term divisible by the divisor lead
            let hit = rem
                .terms
                .iter()
                .rev()
                .find(|(e, _)| e.iter().zip(dlead_e.iter()).all(|(a, b)| a >= b));
            let Some((e, c)) = hit else {
                break;
            };
            let qe: Vec<i64> = e
                .iter()
                .zip(dlead_e.iter())
                .map(|(&a, &b)| (a - b) as i64)
                .collect();
            let qc = f.mul(c, &dlead_inv);
            let qterm = LaurentPoly::monomial(f, self.vars, &qe, qc);
            rem = rem.sub(&qterm.mul(&den));
            quot = quot.add(&qterm);
            if rem.is_zero() {
                break;
            }
        }
        if !rem.is_zero() {
            return None;
        }
        // reattach the monomial unit shift
        let unit_shift: Vec<i64> = smin.iter().zip(dmin.iter()).map(|(a, b)| a - b).collect();
        Some(quot.mul_term(&unit_shift, &one))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Exponent vectors of the support.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).collect())
            .collect()
    }

    /// Reinterpret a 1-variable polynomial in variable `which` of a `vars`-variable ring.
    pub fn embed(&self, vars: usize, which: usize) -> LaurentPoly {
        assert_eq!(self.vars, 1, "embed expects a univariate polynomial");
        assert!(which < vars);
        let mut out = LaurentPoly::zero(self.field, vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; vars];
            ne[which] = e[0] as i64;
            out.add_term(&to_expo(&ne, vars), c);
        }
        out
    }

    /// Parser for tests and fixtures: integers, named variables, + - * ^ and
    /// parentheses; ^ binds tighter than * which binds tighter than + and -.
    /// Exponents may be negative integers, possibly parenthesized.
    pub fn parse(field: Field, names: &[&str], input: &str) -> Result<LaurentPoly, Error> {
        Parser {
            field,
            names,
            chars: input.chars().collect(),
            pos: 0,
        }
        .parse_all()
    }

    /// Render with the given variable names.
    pub fn display(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.vars);
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // descending lex so leading terms print first
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &ei) in e.iter().enumerate() {
                match ei {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], ei)),
                }
            }
            let coeff = format!("{c}");
            let body = if factors.is_empty() {
                coeff.clone()
            } else if c.is_one() {
                factors.join("*")
            } else if coeff == "-1" {
                format!("-{}", factors.join("*"))
            } else {
                format!("{}*{}", coeff, factors.join("*"))
            };
            if out.is_empty() {
                out = body;
            } else if let Some(stripped) = body.strip_prefix('-') {
                out = format!("{out} - {stripped}");
            } else {
                out = format!("{out} + {body}");
            }
        }
        out
    }
}

pub(crate) fn to_expo(e: &[i64], vars: usize) -> Expo {
    assert_eq!(e.len(), vars, "exponent arity mismatch");
    e.iter()
        .map(|&x| i16::try_from(x).expect("exponent out of i16 range"))
        .collect()
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.vars);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.display(&refs))
    }
}

/// "t" for one variable, "x1", "x2", ... otherwise.
pub fn default_var_names(vars: usize) -> Vec<String> {
    match vars {
        1 => vec!["t".into()],
        n => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

struct Parser<'a> {
    field: Field,
    names: &'a [&'a str],
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn parse_all(&mut self) -> Result<LaurentPoly, Error> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos != self.chars.len() {
            return Err(Error::parse(format!(
                "unexpected input at offset {}",
                self.pos
            )));
        }
        Ok(p)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, Error> {
        let mut acc = if self.peek() == Some('-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                // juxtaposition: a variable or '(' directly after a factor
                Some(c) if c.is_alphabetic() || c == '(' => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly, Error> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.exponent()?;
            if e >= 0 {
                return Ok(base.pow(e as u32));
            }
            // negative exponents only make sense for units
            if !base.is_unit() {
                return Err(Error::parse("negative exponent of a non-unit"));
            }
            let inv = LaurentPoly::one(self.field, base.vars)
                .div_exact(&base)
                .ok_or_else(|| Error::parse("cannot invert"))?;
            return Ok(inv.pow((-e) as u32));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, Error> {
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let n = self.integer()?;
        if paren {
            if self.peek() != Some(')') {
                return Err(Error::parse("expected ) after exponent"));
            }
            self.pos += 1;
        }
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<LaurentPoly, Error> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse("expected )"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(LaurentPoly::constant(
                    self.field,
                    self.names.len(),
                    self.field.from_i64(n),
                ))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let idx = self
                    .names
                    .iter()
                    .position(|&n| n == name)
                    .ok_or_else(|| Error::parse(format!("unknown variable {name}")))?;
                Ok(LaurentPoly::var(self.field, self.names.len(), idx))
            }
            other => Err(Error::parse(format!("unexpected token {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>()
            .map_err(|_| Error::parse("integer out of range"))
    }
}
