//! Wirtinger presentations from planar diagrams: one generator per arc, one
//! conjugation relator per crossing with the last crossing's relator dropped,
//! and the meridian abelianization map.

use crate::error::Error;
use crate::pd::PDCode;
use crate::presentation::{AbelianizationMap, GroupPresentation};
use crate::words::FreeWord;

#[derive(Clone, Debug)]
pub struct WirtingerData {
    pub presentation: GroupPresentation,
    pub psi: AbelianizationMap,
    /// arc index of each diagram edge
    pub arc_of_edge: Vec<usize>,
    /// 0-based component of each arc
    pub arc_component: Vec<usize>,
    /// per component, the arc chosen as its meridian (least-edge arc)
    pub meridian_arcs: Vec<usize>,
}

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    if parent[x] != x {
        let root = find(parent, parent[x]);
        parent[x] = root;
        root
    } else {
        x
    }
}

fn arc_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=count).map(|i| format!("g{i}")).collect()
    }
}

pub fn wirtinger(pd: &PDCode) -> Result<WirtingerData, Error> {
    if pd.num_crossings() == 0 {
        let presentation =
            GroupPresentation::new(vec!["a".to_string()], vec![], Some(vec![1]))?;
        return Ok(WirtingerData {
            presentation,
            psi: AbelianizationMap {
                rank: 1,
                images: vec![vec![1]],
            },
            arc_of_edge: vec![],
            arc_component: vec![0],
            meridian_arcs: vec![0],
        });
    }

    // arcs: edges merged across over-passes
    let mut parent: Vec<usize> = (0..pd.edges).collect();
    for c in &pd.crossings {
        let (b, d) = (c[1], c[3]);
        let (rb, rd) = (find(&mut parent, b), find(&mut parent, d));
        if rb != rd {
            let (lo, hi) = (rb.min(rd), rb.max(rd));
            parent[hi] = lo;
        }
    }
    let mut arc_of_edge = vec![usize::MAX; pd.edges];
    let mut arc_component = Vec::new();
    let mut count = 0usize;
    for e in 0..pd.edges {
        let root = find(&mut parent, e);
        if arc_of_edge[root] == usize::MAX {
            arc_of_edge[root] = count;
            arc_component.push(pd.edge_component[e]);
            count += 1;
        }
        arc_of_edge[e] = arc_of_edge[root];
    }

    let names = arc_names(count);
    let mut relators = Vec::new();
    for (i, c) in pd.crossings.iter().enumerate() {
        if i + 1 == pd.num_crossings() {
            break; // the standard redundant relator
        }
        let g_in = arc_of_edge[c[0]];
        let g_out = arc_of_edge[c[2]];
        let g_over = arc_of_edge[c[1]];
        let pos = pd.signs[i] > 0;
        let r = FreeWord::from_letters([
            (g_over, pos),
            (g_in, true),
            (g_over, !pos),
            (g_out, false),
        ]);
        if !r.is_identity() {
            relators.push(r);
        }
    }

    let components: Vec<usize> = arc_component.iter().map(|&c| c + 1).collect();
    let presentation = GroupPresentation::new(names, relators, Some(components))?;

    let images = arc_component
        .iter()
        .map(|&c| (0..pd.mu).map(|j| i64::from(j == c)).collect())
        .collect();
    let psi = AbelianizationMap {
        rank: pd.mu,
        images,
    };
    psi.validate(&presentation)?;

    let mut meridian_arcs = vec![usize::MAX; pd.mu];
    for e in 0..pd.edges {
        let comp = pd.edge_component[e];
        if meridian_arcs[comp] == usize::MAX {
            meridian_arcs[comp] = arc_of_edge[e];
        }
    }

    Ok(WirtingerData {
        presentation,
        psi,
        arc_of_edge,
        arc_component,
        meridian_arcs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::parse_pd;
    use crate::presentation::abelianization;

    #[test]
    fn trefoil_presentation_shape() {
        let pd = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let w = wirtinger(&pd).unwrap();
        assert_eq!(w.presentation.num_generators(), 3);
        assert_eq!(w.presentation.num_relators(), 2);
        assert_eq!(w.psi.rank, 1);
        assert_eq!(w.psi.images, vec![vec![1], vec![1], vec![1]]);
        let ab = abelianization(&w.presentation);
        assert_eq!(ab.rank, 1);
    }

    #[test]
    fn hopf_presentation_shape() {
        let pd = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        let w = wirtinger(&pd).unwrap();
        assert_eq!(w.presentation.num_generators(), 2);
        assert_eq!(w.presentation.num_relators(), 1);
        assert_eq!(w.psi.rank, 2);
        assert_eq!(w.psi.images, vec![vec![1, 0], vec![0, 1]]);
        // the surviving relator is a commutator-like conjugation
        let r = &w.presentation.relators[0];
        assert_eq!(r.len(), 4);
        assert_eq!(r.exponent_sums(2), vec![0, 0]);
    }

    #[test]
    fn unknot_from_empty_diagram() {
        let pd = parse_pd("").unwrap();
        let w = wirtinger(&pd).unwrap();
        assert_eq!(w.presentation.num_generators(), 1);
        assert_eq!(w.presentation.num_relators(), 0);
        assert_eq!(w.psi.rank, 1);
    }

    #[test]
    fn kinked_unknot_collapses() {
        let pd = parse_pd("X[1,2,2,1]").unwrap();
        let w = wirtinger(&pd).unwrap();
        assert_eq!(w.presentation.num_generators(), 1);
        assert_eq!(w.presentation.num_relators(), 0);
    }

    #[test]
    fn meridians_are_least_edge_arcs() {
        let pd = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        let w = wirtinger(&pd).unwrap();
        assert_eq!(w.meridian_arcs, vec![w.arc_of_edge[0], w.arc_of_edge[2]]);
    }
}
