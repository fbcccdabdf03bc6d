//! Group presentations, JSON serialization, and abelianization maps.

use crate::error::Error;
use crate::intmat::{smith_normal_form, IntMatrix};
use crate::words::FreeWord;
use num::bigint::BigInt;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord>,
    /// 1-based diagram component per generator, when the presentation came
    /// from a link diagram.
    pub components: Option<Vec<usize>>,
}

impl GroupPresentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<FreeWord>,
        components: Option<Vec<usize>>,
    ) -> Result<GroupPresentation, Error> {
        let n = generators.len();
        for (i, name) in generators.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '^') {
                return Err(Error::validation(format!("bad generator name '{name}'")));
            }
            if generators[..i].contains(name) {
                return Err(Error::validation(format!(
                    "duplicate generator name '{name}'"
                )));
            }
        }
        for (j, r) in relators.iter().enumerate() {
            if r.is_identity() {
                return Err(Error::validation(format!(
                    "relator {j} reduces to the empty word"
                )));
            }
            if let Some(g) = r.max_generator() {
                if g >= n {
                    return Err(Error::validation(format!(
                        "relator {j} uses generator index {g} out of range"
                    )));
                }
            }
        }
        if let Some(c) = &components {
            if c.len() != n {
                return Err(Error::validation(
                    "component labels do not match generator count".to_string(),
                ));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
            components,
        })
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn parse_word(&self, s: &str) -> Result<FreeWord, Error> {
        FreeWord::parse(&self.generators, s)
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn relator_matrix(&self) -> IntMatrix {
        self.relators
            .iter()
            .map(|r| {
                r.exponent_sums(self.generators.len())
                    .into_iter()
                    .map(BigInt::from)
                    .collect()
            })
            .collect()
    }

    pub fn from_json(text: &str) -> Result<(GroupPresentation, Option<AbelianizationMap>), Error> {
        let dto: PresentationDto =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("presentation JSON: {e}")))?;
        let mut relators = Vec::new();
        for r in &dto.relators {
            relators.push(FreeWord::parse(&dto.generators, r)?);
        }
        let components = match &dto.components {
            None => None,
            Some(map) => {
                let mut v = vec![0usize; dto.generators.len()];
                for (i, g) in dto.generators.iter().enumerate() {
                    v[i] = *map.get(g).ok_or_else(|| {
                        Error::parse(format!("components map is missing generator '{g}'"))
                    })?;
                }
                Some(v)
            }
        };
        let pres = GroupPresentation::new(dto.generators, relators, components)?;
        let psi = match dto.psi {
            None => None,
            Some(p) => {
                let map = AbelianizationMap {
                    rank: p.rank,
                    images: p.images,
                };
                map.validate(&pres)?;
                Some(map)
            }
        };
        Ok((pres, psi))
    }

    pub fn to_json(&self, psi: Option<&AbelianizationMap>) -> String {
        let dto = PresentationDto {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| r.display(&self.generators))
                .collect(),
            components: self.components.as_ref().map(|c| {
                self.generators
                    .iter()
                    .cloned()
                    .zip(c.iter().copied())
                    .collect()
            }),
            psi: psi.map(|p| PsiDto {
                rank: p.rank,
                images: p.images.clone(),
            }),
        };
        serde_json::to_string_pretty(&dto).expect("presentation serialization")
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationDto {
    generators: Vec<String>,
    relators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<PsiDto>,
}

#[derive(Serialize, Deserialize)]
struct PsiDto {
    rank: usize,
    images: Vec<Vec<i64>>,
}

/// Homomorphism to a free abelian group Z^rank, given by per-generator
/// image vectors. Kills every relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    pub rank: usize,
    pub images: Vec<Vec<i64>>,
}

impl AbelianizationMap {
    pub fn eval(&self, w: &FreeWord) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for &(g, s) in w.letters() {
            let sign = if s { 1 } else { -1 };
            for (o, &v) in out.iter_mut().zip(&self.images[g]) {
                *o += sign * v;
            }
        }
        out
    }

    pub fn validate(&self, pres: &GroupPresentation) -> Result<(), Error> {
        if self.images.len() != pres.generators.len() {
            return Err(Error::validation(
                "abelianization image count does not match generator count".to_string(),
            ));
        }
        if self.images.iter().any(|v| v.len() != self.rank) {
            return Err(Error::validation(
                "abelianization image has wrong rank".to_string(),
            ));
        }
        for (j, r) in pres.relators.iter().enumerate() {
            if self.eval(r).iter().any(|&v| v != 0) {
                return Err(Error::validation(format!(
                    "abelianization does not kill relator {j}"
                )));
            }
        }
        Ok(())
    }

    /// Rank of the image lattice equals the target rank.
    pub fn is_rationally_surjective(&self) -> bool {
        let m: IntMatrix = self
            .images
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        if self.rank == 0 {
            return true;
        }
        if m.is_empty() {
            return false;
        }
        smith_normal_form(&m).rank == self.rank
    }

    /// Compose with a covector F -> Z, giving a rank-1 map.
    pub fn compose_covector(&self, phi: &[i64]) -> AbelianizationMap {
        assert_eq!(phi.len(), self.rank);
        AbelianizationMap {
            rank: 1,
            images: self
                .images
                .iter()
                .map(|row| vec![row.iter().zip(phi).map(|(&a, &b)| a * b).sum()])
                .collect(),
        }
    }
}

/// Projection of the generators onto the free part of H_1, from the Smith
/// normal form of the relator exponent matrix. Surjective by construction.
pub fn abelianization(pres: &GroupPresentation) -> AbelianizationMap {
    let n = pres.generators.len();
    if pres.relators.is_empty() {
        let images = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        return AbelianizationMap { rank: n, images };
    }
    let m = pres.relator_matrix();
    let snf = smith_normal_form(&m);
    let r = snf.rank;
    let b = n - r;
    // free coordinates are columns r..n of V; normalize each column's sign
    let mut cols: Vec<Vec<BigInt>> = (r..n)
        .map(|j| (0..n).map(|i| snf.v[i][j].clone()).collect())
        .collect();
    for col in cols.iter_mut() {
        if let Some(first) = col.iter().find(|x| !num::Zero::is_zero(*x)) {
            if first < &BigInt::from(0) {
                for x in col.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }
    let images = (0..n)
        .map(|i| {
            cols.iter()
                .map(|col| col[i].to_i64().expect("abelianization image fits in i64"))
                .collect()
        })
        .collect();
    let map = AbelianizationMap { rank: b, images };
    map.validate(pres).expect("SNF projection kills relators");
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: &[&str], rels: &[&str]) -> GroupPresentation {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let relators = rels
            .iter()
            .map(|r| FreeWord::parse(&names, r).unwrap())
            .collect();
        GroupPresentation::new(names, relators, None).unwrap()
    }

    #[test]
    fn abelianization_of_commutator_is_full_rank() {
        let p = pres(&["a", "b"], &["a b a^-1 b^-1"]);
        let m = abelianization(&p);
        assert_eq!(m.rank, 2);
        assert_eq!(m.images, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn abelianization_of_two_generator_trefoil() {
        let p = pres(&["a", "b"], &["a b a b^-1 a^-1 b^-1"]);
        let m = abelianization(&p);
        assert_eq!(m.rank, 1);
        assert_eq!(m.images, vec![vec![1], vec![1]]);
    }

    #[test]
    fn abelianization_with_pure_torsion_has_rank_zero() {
        let p = pres(&["a"], &["a a"]);
        let m = abelianization(&p);
        assert_eq!(m.rank, 0);
        assert!(m.is_rationally_surjective());
    }

    #[test]
    fn free_presentation_gets_identity_map() {
        let p = pres(&["a", "b"], &[]);
        let m = abelianization(&p);
        assert_eq!(m.rank, 2);
        assert_eq!(m.images, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn empty_relator_rejected() {
        let names = vec!["a".to_string()];
        let w = FreeWord::parse(&names, "a a^-1").unwrap();
        assert!(GroupPresentation::new(names, vec![w], None).is_err());
    }

    #[test]
    fn json_round_trip_with_components() {
        let mut p = pres(&["a", "b"], &["a b a^-1 b^-1"]);
        p.components = Some(vec![1, 2]);
        let psi = abelianization(&p);
        let text = p.to_json(Some(&psi));
        let (q, psi2) = GroupPresentation::from_json(&text).unwrap();
        assert_eq!(q.generators, p.generators);
        assert_eq!(q.relators, p.relators);
        assert_eq!(q.components, p.components);
        assert_eq!(psi2, Some(psi));
    }

    #[test]
    fn rational_surjectivity_detects_rank_drop() {
        let m = AbelianizationMap {
            rank: 2,
            images: vec![vec![1, 1], vec![2, 2]],
        };
        assert!(!m.is_rationally_surjective());
        let m = AbelianizationMap {
            rank: 2,
            images: vec![vec![1, 1], vec![1, -1]],
        };
        assert!(m.is_rationally_surjective());
    }

    #[test]
    fn compose_covector_matches_dot_products() {
        let m = AbelianizationMap {
            rank: 2,
            images: vec![vec![1, 0], vec![0, 1], vec![2, -1]],
        };
        let c = m.compose_covector(&[3, 5]);
        assert_eq!(c.images, vec![vec![3], vec![5], vec![1]]);
    }
}
