//! Permutations of {0..q-1} with 1-based cycle-string I/O like "(1 2)(3)".

use crate::error::Error;

pub type Perm = Vec<usize>;

pub fn identity(q: usize) -> Perm {
    (0..q).collect()
}

pub fn is_identity(p: &Perm) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

/// apply a then b
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

pub fn inverse(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        out[v] = i;
    }
    out
}

pub fn sign(p: &Perm) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sgn = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sgn = -sgn;
        }
    }
    sgn
}

pub fn parse_cycles(s: &str, q: usize) -> Result<Perm, Error> {
    let mut p = identity(q);
    let mut assigned = vec![false; q];
    let body = s.trim();
    if body == "()" || body == "e" || body == "id" {
        return Ok(p);
    }
    let mut rest = body;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(format!("expected '(' in permutation '{s}'")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::parse(format!("unclosed cycle in permutation '{s}'")))?;
        let cycle_text = &open[..close];
        rest = &open[close + 1..];
        let mut cycle = Vec::new();
        for tok in cycle_text.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(format!("bad cycle entry '{tok}'")))?;
            if v < 1 || v > q {
                return Err(Error::parse(format!(
                    "cycle entry {v} outside 1..{q}"
                )));
            }
            if assigned[v - 1] {
                return Err(Error::parse(format!("point {v} repeated in cycles")));
            }
            assigned[v - 1] = true;
            cycle.push(v - 1);
        }
        for (i, &x) in cycle.iter().enumerate() {
            p[x] = cycle[(i + 1) % cycle.len()];
        }
    }
    Ok(p)
}

pub fn display_cycles(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        for s in ["(1 2)(3)", "(1 2 3)", "(1)(2)(3)"] {
            let p = parse_cycles(s, 3).unwrap();
            let q = parse_cycles(&display_cycles(&p), 3).unwrap();
            assert_eq!(p, q);
        }
        assert_eq!(parse_cycles("(1 2)(3)", 3).unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn compose_and_inverse() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(2 3)", 3).unwrap();
        // (1 2) then (2 3): 1 -> 2 -> 3
        assert_eq!(compose(&a, &b), parse_cycles("(1 3 2)", 3).unwrap());
        assert!(is_identity(&compose(&a, &inverse(&a))));
    }

    #[test]
    fn signs() {
        assert_eq!(sign(&parse_cycles("(1 2)", 4).unwrap()), -1);
        assert_eq!(sign(&parse_cycles("(1 2 3)", 4).unwrap()), 1);
        assert_eq!(sign(&identity(4)), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_cycles("(1 2", 3).is_err());
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("(1 1)", 3).is_err());
    }
}
