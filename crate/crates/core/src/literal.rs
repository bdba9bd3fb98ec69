//! Text syntax for subsets, used by the command line.
//!
//! A literal is a comma-separated list of items. Each item is a sum of terms
//! joined by `+`, where a term is a dense index (`7`), a coordinate tuple
//! (`(3,1)`), a generated subgroup (`<5>` or `<(2,0);(0,1)>`) or the name of a
//! subgroup bound in the environment (`H`). `2+<5>` is therefore the coset
//! `2 + ⟨5⟩`. A leading `-` negates a term.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{cyclic_subgroup, Elem, Group, Subgroup};
use crate::set::GSubset;

pub type SubgroupEnv = BTreeMap<String, Subgroup>;

pub fn parse_subset(g: &Group, text: &str, env: &SubgroupEnv) -> Result<GSubset> {
    let t = text.trim();
    let t = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
    let t = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(t);
    let mut out = GSubset::empty(g);
    for item in split_top(t, ',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let mut acc = GSubset::singleton(g, Elem::ZERO);
        for term in split_top(item, '+') {
            let part = parse_term(g, term.trim(), env)?;
            let mut next = GSubset::empty(g);
            for x in acc.iter() {
                for y in part.iter() {
                    next.insert(g.add(x, y));
                }
            }
            acc = next;
        }
        out = out.union(&acc);
    }
    Ok(out)
}

/// Parse a single element: an index or a coordinate tuple.
pub fn parse_elem(g: &Group, text: &str) -> Result<Elem> {
    let t = text.trim();
    if let Some(neg) = t.strip_prefix('-') {
        return Ok(g.neg(parse_elem(g, neg)?));
    }
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{c}` in `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        return g.encode(&coords);
    }
    let index = t
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("`{t}` is not an element")))?;
    g.elem(index)
}

fn parse_term(g: &Group, term: &str, env: &SubgroupEnv) -> Result<GSubset> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    if let Some(inner) = term.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        let mut acc = GSubset::singleton(g, Elem::ZERO);
        for gen in inner.split(';') {
            let x = parse_elem(g, gen)?;
            let c = cyclic_subgroup(g, x);
            let mut next = GSubset::empty(g);
            for a in acc.iter() {
                for b in c.carrier().iter() {
                    next.insert(g.add(a, b));
                }
            }
            acc = next;
        }
        return Ok(acc);
    }
    if term.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        let h = env
            .get(term)
            .ok_or_else(|| Error::Parse(format!("unknown subgroup name `{term}`")))?;
        if h.group() != g {
            return Err(Error::Parse(format!("subgroup `{term}` belongs to another group")));
        }
        return Ok(h.carrier().clone());
    }
    Ok(GSubset::singleton(g, parse_elem(g, term)?))
}

fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '<' => depth += 1,
            ')' | '>' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Parse `NAME=<literal>` bindings into subgroups.
pub fn parse_binding(g: &Group, text: &str, env: &SubgroupEnv) -> Result<(String, Subgroup)> {
    let (name, body) = text
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected NAME=<gens>, got `{text}`")))?;
    let carrier = parse_subset(g, body, env)?;
    let h = Subgroup::from_carrier(carrier)?;
    Ok((name.trim().to_string(), h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_and_cosets() {
        let g = Group::cyclic(15).unwrap();
        let env = SubgroupEnv::new();
        let s = parse_subset(&g, "0,5,2+<5>", &env).unwrap();
        assert_eq!(s.to_indices(), vec![0, 2, 5, 7, 12]);
        assert!(parse_subset(&g, "", &env).unwrap().is_empty());
        assert_eq!(parse_subset(&g, "[1, 2]", &env).unwrap().to_indices(), vec![1, 2]);
        assert!(parse_subset(&g, "15", &env).is_err());
        assert_eq!(parse_subset(&g, "-1", &env).unwrap().to_indices(), vec![14]);
    }

    #[test]
    fn named_subgroups_and_tuples() {
        let g = Group::new(&[4, 2]).unwrap();
        let mut env = SubgroupEnv::new();
        let (name, h) = parse_binding(&g, "H=<(2,0)>", &env).unwrap();
        env.insert(name, h);
        let s = parse_subset(&g, "H, (1,0)+<(2,0);(0,1)>", &env).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.contains(g.encode(&[3, 1]).unwrap()));
        assert!(parse_subset(&g, "J", &env).is_err());
    }
}
