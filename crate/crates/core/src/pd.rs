//! Planar-diagram codes: parsing, orientation resolution, component
//! structure, and crossing signs.
//!
//! A crossing tuple (a,b,c,d) lists the four arc labels counterclockwise
//! starting at the incoming under-arc a; the under-strand exits at c. The
//! over-strand direction is recovered from the global constraint that every
//! edge enters exactly one crossing and leaves exactly one; the crossing is
//! positive when the over-strand runs b to d.

use crate::error::Error;
use serde::Deserialize;

#[derive(Clone, Debug)]
pub struct PDCode {
    /// (a, b, c, d) tuples, 0-based edge labels.
    pub crossings: Vec<[usize; 4]>,
    /// +1 if over-strand runs b -> d, -1 if d -> b.
    pub signs: Vec<i8>,
    /// Number of edges (2 * crossings).
    pub edges: usize,
    /// succ[e] = edge following e along its strand.
    pub succ: Vec<usize>,
    /// 0-based component index per edge, ordered by least edge label.
    pub edge_component: Vec<usize>,
    /// Number of link components.
    pub mu: usize,
}

impl PDCode {
    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Over-strand entry edge at crossing i.
    pub fn over_in(&self, i: usize) -> usize {
        if self.signs[i] > 0 {
            self.crossings[i][1]
        } else {
            self.crossings[i][3]
        }
    }

    pub fn to_text(&self) -> String {
        self.crossings
            .iter()
            .map(|t| format!("X[{},{},{},{}]", t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Deserialize)]
struct PdJson {
    pd: Vec<Vec<usize>>,
}

/// Accepts either whitespace-separated `X[a,b,c,d]` tokens or the JSON form
/// `{"pd": [[a,b,c,d], ...]}`. An empty crossing list is the zero-crossing
/// unknot diagram.
pub fn parse_pd(text: &str) -> Result<PDCode, Error> {
    let trimmed = text.trim();
    let tuples: Vec<[usize; 4]> = if trimmed.starts_with('{') {
        let dto: PdJson = serde_json::from_str(trimmed)
            .map_err(|e| Error::parse(format!("PD JSON: {e}")))?;
        let mut out = Vec::new();
        for (i, row) in dto.pd.iter().enumerate() {
            if row.len() != 4 {
                return Err(Error::parse(format!(
                    "crossing {} has {} entries, expected 4",
                    i + 1,
                    row.len()
                )));
            }
            out.push([row[0], row[1], row[2], row[3]]);
        }
        out
    } else {
        let mut out = Vec::new();
        for (i, tok) in trimmed.split_whitespace().enumerate() {
            out.push(parse_tuple(tok, i + 1)?);
        }
        out
    };
    resolve(tuples)
}

fn parse_tuple(tok: &str, pos: usize) -> Result<[usize; 4], Error> {
    let body = tok
        .strip_prefix("X[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::parse(format!("token {pos}: expected X[a,b,c,d], got '{tok}'")))?;
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::parse(format!(
            "token {pos}: expected 4 arc labels, got {}",
            parts.len()
        )));
    }
    let mut tuple = [0usize; 4];
    for (slot, p) in tuple.iter_mut().zip(&parts) {
        let v: usize = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("token {pos}: bad arc label '{p}'")))?;
        if v == 0 {
            return Err(Error::parse(format!("token {pos}: arc labels start at 1")));
        }
        *slot = v;
    }
    Ok(tuple)
}

fn resolve(tuples_1based: Vec<[usize; 4]>) -> Result<PDCode, Error> {
    let n = tuples_1based.len();
    if n == 0 {
        return Ok(PDCode {
            crossings: vec![],
            signs: vec![],
            edges: 0,
            succ: vec![],
            edge_component: vec![],
            mu: 1,
        });
    }
    let edges = 2 * n;
    let mut crossings = Vec::with_capacity(n);
    let mut count = vec![0usize; edges];
    for (i, t) in tuples_1based.iter().enumerate() {
        let mut c = [0usize; 4];
        for (slot, &v) in c.iter_mut().zip(t) {
            if v < 1 || v > edges {
                return Err(Error::parse(format!(
                    "crossing {}: arc label {} outside 1..{}",
                    i + 1,
                    v,
                    edges
                )));
            }
            *slot = v - 1;
            count[v - 1] += 1;
        }
        crossings.push(c);
    }
    for (e, &c) in count.iter().enumerate() {
        if c != 2 {
            return Err(Error::parse(format!(
                "arc label {} appears {} times, expected 2",
                e + 1,
                c
            )));
        }
    }

    // Fixed roles: a enters, c leaves. Over direction per crossing is the
    // unknown; role parity of each edge's two occurrences pins it down.
    // occurrence: (crossing, slot) with slot in 0..4
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edges];
    for (i, c) in crossings.iter().enumerate() {
        for (slot, &e) in c.iter().enumerate() {
            occ[e].push((i, slot));
        }
    }
    // dir[i] = Some(true) when over-strand runs b -> d at crossing i
    let mut dir: Vec<Option<bool>> = vec![None; n];
    // role of an over slot: slot 1 (b) is an entry iff dir; slot 3 (d) iff !dir
    let entry_role = |slot: usize, d: bool| -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => d,
            3 => !d,
            _ => unreachable!(),
        }
    };
    let set_dir = |dir: &mut Vec<Option<bool>>,
                   i: usize,
                   d: bool,
                   queue: &mut Vec<usize>|
     -> Result<(), Error> {
        match dir[i] {
            None => {
                dir[i] = Some(d);
                queue.push(i);
                Ok(())
            }
            Some(old) if old == d => Ok(()),
            Some(_) => Err(Error::parse(format!(
                "inconsistent orientation at crossing {}",
                i + 1
            ))),
        }
    };
    let mut queue: Vec<usize> = Vec::new();
    // seed from edges with one fixed role and one over slot, and check
    // edges with two fixed roles
    for e in 0..edges {
        let (o1, o2) = (occ[e][0], occ[e][1]);
        let fixed1 = o1.1 == 0 || o1.1 == 2;
        let fixed2 = o2.1 == 0 || o2.1 == 2;
        if fixed1 && fixed2 {
            if (o1.1 == 0) == (o2.1 == 0) {
                return Err(Error::parse(format!(
                    "inconsistent orientation: arc {} enters or leaves twice",
                    e + 1
                )));
            }
        } else if fixed1 || fixed2 {
            let (fixed, over) = if fixed1 { (o1, o2) } else { (o2, o1) };
            let need_entry = fixed.1 == 2; // edge leaves elsewhere, must enter here
            let d = if over.1 == 1 { need_entry } else { !need_entry };
            set_dir(&mut dir, over.0, d, &mut queue)?;
        }
    }
    // propagate across edges with two over slots
    let mut head = 0;
    loop {
        while head < queue.len() {
            let i = queue[head];
            head += 1;
            let d_i = dir[i].unwrap();
            for slot in [1usize, 3] {
                let e = crossings[i][slot];
                let mine = entry_role(slot, d_i);
                for &(j, s2) in &occ[e] {
                    if (j, s2) == (i, slot) {
                        continue;
                    }
                    if s2 == 0 || s2 == 2 {
                        let other_entry = s2 == 0;
                        if other_entry == mine {
                            return Err(Error::parse(format!(
                                "inconsistent orientation at arc {}",
                                e + 1
                            )));
                        }
                    } else if j == i {
                        // both over slots at one crossing: entry roles differ
                        // automatically, nothing to learn
                    } else {
                        let want = if s2 == 1 { !mine } else { mine };
                        set_dir(&mut dir, j, want, &mut queue)?;
                    }
                }
            }
        }
        // components never passing under leave free cycles; orient the
        // lowest-index undecided crossing by the label heuristic
        match dir.iter().position(|d| d.is_none()) {
            None => break,
            Some(i) => {
                let (b, d) = (crossings[i][1], crossings[i][3]);
                let forward = (b + 1) % edges == d || (d + 1) % edges != b;
                set_dir(&mut dir, i, forward, &mut queue)?;
            }
        }
    }

    // successor map and in/out balance check
    let mut succ = vec![usize::MAX; edges];
    let mut seen_in = vec![false; edges];
    let mut seen_out = vec![false; edges];
    for (i, c) in crossings.iter().enumerate() {
        let d_i = dir[i].unwrap();
        let (over_in, over_out) = if d_i { (c[1], c[3]) } else { (c[3], c[1]) };
        for (e_in, e_out) in [(c[0], c[2]), (over_in, over_out)] {
            if seen_in[e_in] || seen_out[e_out] {
                return Err(Error::parse(format!(
                    "inconsistent orientation at crossing {}",
                    i + 1
                )));
            }
            seen_in[e_in] = true;
            seen_out[e_out] = true;
            succ[e_in] = e_out;
        }
    }

    // components: cycles of succ, ordered by least edge label
    let mut edge_component = vec![usize::MAX; edges];
    let mut mu = 0;
    for start in 0..edges {
        if edge_component[start] != usize::MAX {
            continue;
        }
        let mut e = start;
        loop {
            edge_component[e] = mu;
            e = succ[e];
            if e == start {
                break;
            }
        }
        mu += 1;
    }

    let signs = dir.iter().map(|d| if d.unwrap() { 1 } else { -1 }).collect();
    Ok(PDCode {
        crossings,
        signs,
        edges,
        succ,
        edge_component,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    pub const HOPF: &str = "X[1,3,2,4] X[3,1,4,2]";

    #[test]
    fn trefoil_is_one_component_all_positive() {
        let pd = parse_pd(TREFOIL).unwrap();
        assert_eq!(pd.mu, 1);
        assert_eq!(pd.signs, vec![1, 1, 1]);
        assert_eq!(pd.succ, vec![1, 2, 3, 4, 5, 0]);
    }

    #[test]
    fn hopf_is_two_components_like_signed() {
        let pd = parse_pd(HOPF).unwrap();
        assert_eq!(pd.mu, 2);
        assert_eq!(pd.edge_component, vec![0, 0, 1, 1]);
        assert_eq!(pd.signs[0], pd.signs[1]);
    }

    #[test]
    fn json_form_parses_like_text() {
        let a = parse_pd(HOPF).unwrap();
        let b = parse_pd(r#"{"pd": [[1,3,2,4],[3,1,4,2]]}"#).unwrap();
        assert_eq!(a.crossings, b.crossings);
        assert_eq!(a.signs, b.signs);
    }

    #[test]
    fn kinked_unknot_single_arc() {
        let pd = parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(pd.mu, 1);
        assert_eq!(pd.succ, vec![1, 0]);
    }

    #[test]
    fn empty_input_is_unknot() {
        let pd = parse_pd("").unwrap();
        assert_eq!(pd.mu, 1);
        assert_eq!(pd.num_crossings(), 0);
    }

    #[test]
    fn arity_error() {
        assert!(parse_pd("X[1,2,3]").is_err());
    }

    #[test]
    fn label_count_error() {
        assert!(parse_pd("X[1,2,3,4] X[1,2,3,5]").is_err());
    }

    #[test]
    fn range_error() {
        assert!(parse_pd("X[1,2,3,9] X[3,1,9,2]").is_err());
    }

    #[test]
    fn round_trip_text() {
        let pd = parse_pd(TREFOIL).unwrap();
        let again = parse_pd(&pd.to_text()).unwrap();
        assert_eq!(pd.crossings, again.crossings);
    }
}
