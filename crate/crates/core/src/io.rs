//! Text serialization of grown graphs.
//!
//! ```text
//! ktree 2 3 7
//! 0 1
//! 0 2
//! 1 2
//! ...
//! cliques 7
//! 0 1 0 -
//! 0 2 1 -
//! ...
//! ```
//!
//! The header is `family k steps seed`. Edge lines `u v` follow with
//! `u < v`, sorted by `(v, u)`, so the later-born endpoint always comes
//! second. The optional `cliques N` section lists each registry entry as its
//! members, creation round and retirement round (`-` when still active).
//! Vertex ids are birth indices, which is enough to replay the growth, so a
//! file without the clique section still restores the full registry; when
//! the section is present it is checked against the replay.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{EvolvingGraph, Family, Topology, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphHeader {
    pub family: Family,
    pub k: usize,
    pub steps: usize,
    pub seed: u64,
}

pub fn write_graph<W: Write>(g: &EvolvingGraph, seed: u64, with_cliques: bool, mut out: W) -> Result<()> {
    writeln!(out, "{} {} {} {}", g.family(), g.k(), g.steps(), seed)?;
    for v in 0..g.vertex_count() {
        for &u in g.neighbors(v).iter().take_while(|&&u| u < v) {
            writeln!(out, "{u} {v}")?;
        }
    }
    if with_cliques {
        writeln!(out, "cliques {}", g.cliques().len())?;
        for c in g.cliques() {
            for u in &c.members {
                write!(out, "{u} ")?;
            }
            match c.retired_round {
                Some(r) => writeln!(out, "{} {}", c.created_round, r)?,
                None => writeln!(out, "{} -", c.created_round)?,
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

pub fn read_graph<R: BufRead>(input: R) -> Result<(GraphHeader, EvolvingGraph)> {
    let mut lines = input.lines().enumerate();
    let (_, header_line) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header_line = header_line?;
    let mut tok = header_line.split_whitespace();
    let family: Family = tok
        .next()
        .ok_or_else(|| parse_err(1, "missing family"))?
        .parse()
        .map_err(|_| parse_err(1, "unknown family"))?;
    let header = GraphHeader {
        family,
        k: field(tok.next(), 1, "k")?,
        steps: field(tok.next(), 1, "steps")?,
        seed: field(tok.next(), 1, "seed")?,
    };
    if tok.next().is_some() {
        return Err(parse_err(1, "trailing header fields"));
    }
    let n = header
        .k
        .checked_add(header.steps)
        .ok_or_else(|| parse_err(1, "vertex count overflows"))?;
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut clique_lines: Option<(usize, Vec<(usize, String)>)> = None;
    for (i, line) in lines {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if let Some((_, body)) = clique_lines.as_mut() {
            body.push((lineno, line));
            continue;
        }
        let mut tok = line.split_whitespace();
        if line.starts_with("cliques") {
            tok.next();
            clique_lines = Some((field(tok.next(), lineno, "clique count")?, Vec::new()));
            continue;
        }
        let u: usize = field(tok.next(), lineno, "vertex")?;
        let v: usize = field(tok.next(), lineno, "vertex")?;
        if tok.next().is_some() {
            return Err(parse_err(lineno, "trailing fields"));
        }
        if u >= n || v >= n || u == v {
            return Err(parse_err(lineno, format!("edge {u} {v} is invalid for {n} vertices")));
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let g = EvolvingGraph::replay(header.family, header.k, &adjacency).map_err(|e| parse_err(0, e.to_string()))?;
    if let Some((count, body)) = clique_lines {
        if count != g.cliques().len() || body.len() != count {
            return Err(parse_err(0, "clique section does not match the replayed registry"));
        }
        for ((lineno, line), rec) in body.iter().zip(g.cliques()) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != header.k + 2 {
                return Err(parse_err(*lineno, "wrong number of clique fields"));
            }
            let members: Vec<Vertex> = toks[..header.k]
                .iter()
                .map(|t| field(Some(t), *lineno, "member"))
                .collect::<Result<_>>()?;
            let created: usize = field(Some(toks[header.k]), *lineno, "creation round")?;
            let retired = match toks[header.k + 1] {
                "-" => None,
                t => Some(field(Some(t), *lineno, "retirement round")?),
            };
            if members != rec.members || created != rec.created_round || retired != rec.retired_round {
                return Err(parse_err(*lineno, "clique record disagrees with the replayed registry"));
            }
        }
    }
    Ok((header, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, generate_k_tree};
    use crate::rng::seeded;

    #[test]
    fn triangle_file() {
        let g = generate_k_tree(2, 1, &mut seeded(7)).unwrap();
        let mut buf = Vec::new();
        write_graph(&g, 7, false, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "ktree 2 1 7\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn round_trip_with_registry() {
        for family in [Family::KTree, Family::KApollonian] {
            let g = generate(family, 3, 60, &mut seeded(2)).unwrap();
            for with_cliques in [false, true] {
                let mut buf = Vec::new();
                write_graph(&g, 99, with_cliques, &mut buf).unwrap();
                let (h, back) = read_graph(buf.as_slice()).unwrap();
                assert_eq!(h, GraphHeader { family, k: 3, steps: 60, seed: 99 });
                assert_eq!(back.cliques(), g.cliques());
                let mut again = Vec::new();
                write_graph(&back, 99, with_cliques, &mut again).unwrap();
                assert_eq!(again, buf);
            }
        }
    }

    #[test]
    fn malformed_files() {
        for text in [
            "",
            "ktree 2\n",
            "tree 2 1 0\n0 1\n",
            "ktree 2 1 0\n0 1\n0 5\n",
            "ktree 2 1 0\n0 1\n1 2\n",
            "ktree 2 1 0\n0 1\n0 2\n1 2\ncliques 2\n0 1 0 -\n",
            "ktree 2 1 0\n0 1\n0 2\n1 2\ncliques 3\n0 1 0 -\n0 2 1 -\n1 2 1 4\n",
        ] {
            assert!(read_graph(text.as_bytes()).is_err(), "{text:?}");
        }
    }
}
