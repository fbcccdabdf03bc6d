//! Presentations of finite-index covers by Schreier rewriting over a
//! breadth-first coset transversal.

use crate::error::Error;
use crate::perm::{self, Perm};
use crate::presentation::{AbelianizationMap, GroupPresentation};
use crate::words::FreeWord;

#[derive(Clone, Debug)]
pub struct CoverData {
    pub presentation: GroupPresentation,
    /// Base-group word carried by each cover generator.
    pub underlying: Vec<FreeWord>,
    pub index: usize,
    /// Coset representative words, coset 0 first.
    pub transversal: Vec<FreeWord>,
}

/// quotient: one permutation per base generator, acting on cosets on the
/// right. Requires the action to kill every relator and to be transitive.
pub fn reidemeister_schreier(
    pres: &GroupPresentation,
    quotient: &[Perm],
) -> Result<CoverData, Error> {
    let g_count = pres.generators.len();
    if quotient.len() != g_count {
        return Err(Error::validation(
            "need exactly one permutation per generator".to_string(),
        ));
    }
    let n = quotient.first().map(|p| p.len()).unwrap_or(1).max(1);
    if quotient.iter().any(|p| p.len() != n) {
        return Err(Error::validation(
            "permutations act on different coset counts".to_string(),
        ));
    }
    let inv: Vec<Perm> = quotient.iter().map(perm::inverse).collect();
    let act = |c: usize, g: usize, pos: bool| -> usize {
        if pos {
            quotient[g][c]
        } else {
            inv[g][c]
        }
    };
    for (j, r) in pres.relators.iter().enumerate() {
        for c in 0..n {
            let mut x = c;
            for &(g, s) in r.letters() {
                x = act(x, g, s);
            }
            if x != c {
                return Err(Error::validation(format!(
                    "quotient does not kill relator {j}"
                )));
            }
        }
    }

    // breadth-first transversal over generator order, then inverses
    let mut transversal: Vec<Option<FreeWord>> = vec![None; n];
    transversal[0] = Some(FreeWord::identity());
    let mut tree = vec![vec![false; g_count]; n]; // tree[c][g]: edge c --g--> c*g
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..g_count {
            for pos in [true, false] {
                let c2 = act(c, g, pos);
                if transversal[c2].is_none() {
                    let t = transversal[c].as_ref().unwrap();
                    transversal[c2] = Some(t.mul(&FreeWord::letter(g, pos)));
                    if pos {
                        tree[c][g] = true;
                    } else {
                        tree[c2][g] = true;
                    }
                    queue.push_back(c2);
                }
            }
        }
    }
    if transversal.iter().any(|t| t.is_none()) {
        return Err(Error::validation(
            "coset action is not transitive".to_string(),
        ));
    }
    let transversal: Vec<FreeWord> = transversal.into_iter().map(|t| t.unwrap()).collect();

    // cover generators: non-tree (generator, coset) pairs in (g, c) order
    let mut index_of = vec![vec![usize::MAX; n]; g_count];
    let mut names = Vec::new();
    let mut underlying = Vec::new();
    for g in 0..g_count {
        for c in 0..n {
            if tree[c][g] {
                continue;
            }
            index_of[g][c] = names.len();
            names.push(if n == 1 {
                format!("{}_0", pres.generators[g])
            } else {
                format!("{}_{}", pres.generators[g], c)
            });
            let c2 = act(c, g, true);
            let word = transversal[c]
                .mul(&FreeWord::generator(g))
                .mul(&transversal[c2].inverse());
            underlying.push(word);
        }
    }

    // rewrite each relator from each starting coset
    let rewrite = |w: &FreeWord, start: usize| -> FreeWord {
        let mut letters = Vec::new();
        let mut c = start;
        for &(g, s) in w.letters() {
            if s {
                if !tree[c][g] {
                    letters.push((index_of[g][c], true));
                }
                c = act(c, g, true);
            } else {
                let c2 = act(c, g, false);
                if !tree[c2][g] {
                    letters.push((index_of[g][c2], false));
                }
                c = c2;
            }
        }
        FreeWord::from_letters(letters)
    };
    let mut relators = Vec::new();
    for r in &pres.relators {
        for c in 0..n {
            let rw = rewrite(r, c);
            assert!(!rw.is_identity(), "rewritten relator collapsed");
            relators.push(rw);
        }
    }

    // Euler characteristic of the presentation complex scales by the index
    let chi_base = 1 - pres.num_generators() as i64 + pres.num_relators() as i64;
    let chi_cover = 1 - names.len() as i64 + relators.len() as i64;
    assert_eq!(chi_cover, n as i64 * chi_base, "cover bookkeeping");

    let presentation = GroupPresentation::new(names, relators, None)?;
    Ok(CoverData {
        presentation,
        underlying,
        index: n,
        transversal,
    })
}

/// Pull an abelianization-style map back to the cover by evaluating it on
/// each cover generator's underlying word.
pub fn pullback_psi(cover: &CoverData, psi: &AbelianizationMap) -> Result<AbelianizationMap, Error> {
    let images = cover
        .underlying
        .iter()
        .map(|w| psi.eval(w))
        .collect::<Vec<_>>();
    let out = AbelianizationMap {
        rank: psi.rank,
        images,
    };
    out.validate(&cover.presentation)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use crate::presentation::abelianization;

    fn pres(gens: &[&str], rels: &[&str]) -> GroupPresentation {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let relators = rels
            .iter()
            .map(|r| FreeWord::parse(&names, r).unwrap())
            .collect();
        GroupPresentation::new(names, relators, None).unwrap()
    }

    #[test]
    fn rank_one_free_group_double_cover() {
        let p = pres(&["a"], &[]);
        let cover = reidemeister_schreier(&p, &[parse_cycles("(1 2)", 2).unwrap()]).unwrap();
        assert_eq!(cover.index, 2);
        assert_eq!(cover.presentation.num_generators(), 1);
        assert_eq!(cover.presentation.num_relators(), 0);
        assert_eq!(
            cover.underlying[0],
            FreeWord::parse(&p.generators, "a a").unwrap()
        );
    }

    #[test]
    fn torus_double_cover_has_rank_two() {
        let p = pres(&["a", "b"], &["a b a^-1 b^-1"]);
        let q = vec![
            parse_cycles("(1 2)", 2).unwrap(),
            parse_cycles("(1)(2)", 2).unwrap(),
        ];
        let cover = reidemeister_schreier(&p, &q).unwrap();
        assert_eq!(cover.index, 2);
        assert_eq!(cover.presentation.num_generators(), 3);
        assert_eq!(cover.presentation.num_relators(), 2);
        let ab = abelianization(&cover.presentation);
        assert_eq!(ab.rank, 2);
        // a^2 and one of the b's underlie generators
        let base = &p.generators;
        assert!(cover
            .underlying
            .contains(&FreeWord::parse(base, "a a").unwrap()));
        assert!(cover
            .underlying
            .contains(&FreeWord::parse(base, "b").unwrap()));
        assert!(cover
            .underlying
            .contains(&FreeWord::parse(base, "a b a^-1").unwrap()));
    }

    #[test]
    fn trivial_quotient_echoes_presentation() {
        let p = pres(&["a", "b"], &["a b a b^-1 a^-1 b^-1"]);
        let cover = reidemeister_schreier(&p, &[vec![0], vec![0]]).unwrap();
        assert_eq!(cover.index, 1);
        assert_eq!(cover.presentation.num_generators(), 2);
        assert_eq!(cover.presentation.relators, p.relators);
    }

    #[test]
    fn non_transitive_action_rejected() {
        let p = pres(&["a"], &[]);
        let err = reidemeister_schreier(&p, &[parse_cycles("(1)(2)", 2).unwrap()]);
        assert!(err.is_err());
    }

    #[test]
    fn relator_violation_rejected() {
        let p = pres(&["a"], &["a a"]);
        let err = reidemeister_schreier(&p, &[parse_cycles("(1 2 3)", 3).unwrap()]);
        assert!(err.is_err());
    }

    #[test]
    fn pullback_psi_evaluates_underlying_words() {
        let p = pres(&["a", "b"], &["a b a^-1 b^-1"]);
        let q = vec![
            parse_cycles("(1 2)", 2).unwrap(),
            parse_cycles("(1)(2)", 2).unwrap(),
        ];
        let cover = reidemeister_schreier(&p, &q).unwrap();
        let psi = abelianization(&p);
        let pulled = pullback_psi(&cover, &psi).unwrap();
        assert_eq!(pulled.rank, 2);
        assert!(pulled.is_rationally_surjective());
        let mut images = pulled.images.clone();
        images.sort();
        assert_eq!(images, vec![vec![0, 1], vec![0, 1], vec![2, 0]]);
    }
}
