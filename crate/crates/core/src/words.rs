//! Free-group words, free reduction, integer group-ring elements, and Fox
//! derivatives.

use crate::error::Error;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// (generator index, true for the generator itself, false for its inverse)
pub type Letter = (usize, bool);

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> FreeWord {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> FreeWord {
        FreeWord {
            letters: vec![(i, true)],
        }
    }

    pub fn letter(i: usize, positive: bool) -> FreeWord {
        FreeWord {
            letters: vec![(i, positive)],
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> FreeWord {
        let mut stack: Vec<Letter> = Vec::new();
        for (g, s) in letters {
            if stack.last() == Some(&(g, !s)) {
                stack.pop();
            } else {
                stack.push((g, s));
            }
        }
        FreeWord { letters: stack }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, s)| (g, !s)).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn conjugated_by(&self, t: &FreeWord) -> FreeWord {
        t.mul(self).mul(&t.inverse())
    }

    /// Net exponent of each of the first n generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut out = vec![0i64; n];
        for &(g, s) in &self.letters {
            out[g] += if s { 1 } else { -1 };
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Space-separated letters, `^-1` suffix marking inverses.
    pub fn parse(names: &[String], input: &str) -> Result<FreeWord, Error> {
        let mut letters = Vec::new();
        for tok in input.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                None => (tok, 1i64),
                Some((name, e)) => {
                    let e: i64 = e.parse().map_err(|_| {
                        Error::parse(format!("bad exponent in word token '{tok}'"))
                    })?;
                    (name, e)
                }
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::parse(format!("unknown generator '{name}'")))?;
            for _ in 0..exp.unsigned_abs() {
                letters.push((g, exp > 0));
            }
        }
        Ok(FreeWord::from_letters(letters))
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return String::new();
        }
        let mut out = String::new();
        for (i, &(g, s)) in self.letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&names[g]);
            if !s {
                out.push_str("^-1");
            }
        }
        out
    }
}

/// Formal Z-linear combination of free words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElem {
    pub fn zero() -> GroupRingElem {
        GroupRingElem::default()
    }

    pub fn from_word(w: FreeWord) -> GroupRingElem {
        let mut e = GroupRingElem::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> GroupRingElem {
        GroupRingElem {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn mul_word_left(&self, u: &FreeWord) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (w, &c) in &self.terms {
            out.add_term(u.mul(w), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else if *c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let body = if w.is_identity() {
                "1".to_string()
            } else {
                format!("({})", w.display(names))
            };
            if mag == 1 {
                out.push_str(&body);
            } else {
                let _ = write!(out, "{mag} {body}");
            }
        }
        out
    }
}

/// Fox derivative with respect to generator g, by one left-to-right pass:
/// a positive occurrence of g contributes +(prefix before it), a negative
/// occurrence contributes -(prefix through it).
pub fn fox_derivative(w: &FreeWord, g: usize) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    let mut prefix: Vec<Letter> = Vec::new();
    for &(h, s) in w.letters() {
        if h == g && s {
            out.add_term(FreeWord::from_letters(prefix.iter().copied()), 1);
        }
        prefix.push((h, s));
        if h == g && !s {
            out.add_term(FreeWord::from_letters(prefix.iter().copied()), -1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn w(spec: &str) -> FreeWord {
        FreeWord::parse(&names(&["a", "b", "c"]), spec).unwrap()
    }

    #[test]
    fn reduction() {
        assert!(w("a a^-1").is_identity());
        assert_eq!(w("a b b^-1 a"), w("a a"));
        let reduced = w("a b^-1 a");
        assert_eq!(FreeWord::from_letters(reduced.letters().to_vec()), reduced);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let ns = names(&["a", "b", "c"]);
        for s in ["a b^-1 c a", "a^2 b^-2", "b"] {
            let word = FreeWord::parse(&ns, s).unwrap();
            let shown = word.display(&ns);
            assert_eq!(FreeWord::parse(&ns, &shown).unwrap(), word);
        }
        assert!(FreeWord::parse(&ns, "a z").is_err());
        assert!(FreeWord::parse(&ns, "a^x").is_err());
    }

    #[test]
    fn inverse_and_exponent_sums() {
        let word = w("a a b^-1 c");
        assert!(word.mul(&word.inverse()).is_identity());
        assert_eq!(word.exponent_sums(3), vec![2, -1, 1]);
    }

    #[test]
    fn fox_rules_on_single_letters() {
        let d = fox_derivative(&w("a"), 0);
        assert_eq!(d, GroupRingElem::from_word(FreeWord::identity()));
        assert!(fox_derivative(&w("b"), 0).is_zero());
        let d = fox_derivative(&w("a^-1"), 0);
        let mut want = GroupRingElem::zero();
        want.add_term(w("a^-1"), -1);
        assert_eq!(d, want);
    }

    #[test]
    fn fox_square() {
        // d(a^2)/da = 1 + a
        let d = fox_derivative(&w("a a"), 0);
        let mut want = GroupRingElem::zero();
        want.add_term(FreeWord::identity(), 1);
        want.add_term(w("a"), 1);
        assert_eq!(d, want);
    }

    #[test]
    fn fox_commutator() {
        // d(aba^-1 b^-1)/da = 1 - aba^-1
        let d = fox_derivative(&w("a b a^-1 b^-1"), 0);
        let mut want = GroupRingElem::zero();
        want.add_term(FreeWord::identity(), 1);
        want.add_term(w("a b a^-1"), -1);
        assert_eq!(d, want);
    }

    #[test]
    fn fox_longer_word() {
        // d(abab^-1 a^-1 b^-1)/da = 1 + ab - abab^-1 a^-1
        let d = fox_derivative(&w("a b a b^-1 a^-1 b^-1"), 0);
        let mut want = GroupRingElem::zero();
        want.add_term(FreeWord::identity(), 1);
        want.add_term(w("a b"), 1);
        want.add_term(w("a b a b^-1 a^-1"), -1);
        assert_eq!(d, want);
    }

    /// Product-rule recursion, as an independent check of the scan.
    fn fox_recursive(word: &FreeWord, g: usize) -> GroupRingElem {
        let letters = word.letters();
        match letters.len() {
            0 => GroupRingElem::zero(),
            1 => {
                let (h, s) = letters[0];
                let mut out = GroupRingElem::zero();
                if h == g {
                    if s {
                        out.add_term(FreeWord::identity(), 1);
                    } else {
                        out.add_term(FreeWord::letter(h, false), -1);
                    }
                }
                out
            }
            n => {
                let u = FreeWord::from_letters(letters[..n / 2].to_vec());
                let v = FreeWord::from_letters(letters[n / 2..].to_vec());
                fox_recursive(&u, g).add(&fox_recursive(&v, g).mul_word_left(&u))
            }
        }
    }

    #[test]
    fn fox_scan_matches_product_rule_recursion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let len = rng.gen_range(0..14);
            let letters: Vec<Letter> = (0..len)
                .map(|_| (rng.gen_range(0..3usize), rng.gen_bool(0.5)))
                .collect();
            let word = FreeWord::from_letters(letters);
            for g in 0..3 {
                assert_eq!(fox_derivative(&word, g), fox_recursive(&word, g));
            }
        }
    }
}
