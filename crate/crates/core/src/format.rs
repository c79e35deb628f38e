//! Line-based text format for embeddings.
//!
//! ```text
//! graph bipartite 2 3
//! rot x1: y1 y2 y3
//! rot x2: y1 y2 y3
//! rot y1: x1 x2
//! rot y2: x1 x2
//! rot y3: x1 x2
//! ```
//!
//! Edges are implied by the rotations. `#` starts a comment line. Rotations
//! may be given in any phase and are re-canonicalized on parse. A file may
//! hold several embeddings back to back, each starting with its header line.

use std::fmt::Write as _;

use crate::embedding::Embedding;
use crate::error::{ParseError, ParseErrorKind};
use crate::graph::{Graph, Vertex};

pub fn serialize(e: &Embedding) -> String {
    let g = e.graph();
    let mut out = String::new();
    let _ = writeln!(out, "graph bipartite {} {}", g.part_x_size(), g.part_y_size());
    for v in g.vertices() {
        let _ = write!(out, "rot {v}:");
        for w in e.rotation(v) {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    out
}

/// Parses exactly one embedding.
pub fn parse(text: &str) -> Result<Embedding, ParseError> {
    let mut all = parse_many(text)?;
    match all.len() {
        0 => Err(ParseError { line: 1, kind: ParseErrorKind::Empty }),
        1 => Ok(all.pop().unwrap()),
        _ => Err(ParseError { line: 1, kind: ParseErrorKind::BadHeader }),
    }
}

/// Parses a sequence of embeddings, each introduced by a header line.
pub fn parse_many(text: &str) -> Result<Vec<Embedding>, ParseError> {
    let mut out = Vec::new();
    let mut current: Option<Block> = None;
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with("graph") {
            if let Some(block) = current.take() {
                out.push(block.finish()?);
            }
            current = Some(Block::from_header(trimmed, line)?);
            continue;
        }
        let block = current
            .as_mut()
            .ok_or(ParseError { line, kind: ParseErrorKind::BadHeader })?;
        block.add_rotation(trimmed, line)?;
    }
    if let Some(block) = current {
        out.push(block.finish()?);
    }
    Ok(out)
}

struct Block {
    p: u32,
    q: u32,
    header_line: usize,
    /// (line, rotation) per vertex slot.
    rotations: Vec<Option<(usize, Vec<Vertex>)>>,
}

impl Block {
    fn from_header(text: &str, line: usize) -> Result<Block, ParseError> {
        let err = ParseError { line, kind: ParseErrorKind::BadHeader };
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [ "graph", "bipartite", p, q ] = fields.as_slice() else {
            return Err(err);
        };
        let p: u32 = p.parse().map_err(|_| err.clone())?;
        let q: u32 = q.parse().map_err(|_| err.clone())?;
        if p == 0 || q == 0 {
            return Err(err);
        }
        Ok(Block { p, q, header_line: line, rotations: vec![None; (p + q) as usize] })
    }

    fn slot(&self, token: &str, line: usize) -> Result<(Vertex, usize), ParseError> {
        let unknown = || ParseError { line, kind: ParseErrorKind::UnknownVertex(token.to_string()) };
        match Vertex::parse(token).ok_or_else(unknown)? {
            v @ Vertex::X(i) if i <= self.p => Ok((v, (i - 1) as usize)),
            v @ Vertex::Y(j) if j <= self.q => Ok((v, (self.p + j - 1) as usize)),
            _ => Err(unknown()),
        }
    }

    fn add_rotation(&mut self, text: &str, line: usize) -> Result<(), ParseError> {
        let bad = ParseError { line, kind: ParseErrorKind::BadRotationLine };
        let rest = text.strip_prefix("rot").ok_or(bad.clone())?;
        let (head, tail) = rest.split_once(':').ok_or(bad)?;
        let (vertex, slot) = self.slot(head.trim(), line)?;
        if self.rotations[slot].is_some() {
            return Err(ParseError { line, kind: ParseErrorKind::DuplicateRotation(vertex) });
        }
        let mut rotation = Vec::new();
        for token in tail.split_whitespace() {
            let (neighbor, _) = self.slot(token, line)?;
            if neighbor.is_x() == vertex.is_x() {
                return Err(ParseError { line, kind: ParseErrorKind::SameSide { vertex, neighbor } });
            }
            if rotation.contains(&neighbor) {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::RepeatedNeighbor { vertex, neighbor },
                });
            }
            rotation.push(neighbor);
        }
        self.rotations[slot] = Some((line, rotation));
        Ok(())
    }

    fn finish(self) -> Result<Embedding, ParseError> {
        let mut rotations = Vec::with_capacity(self.rotations.len());
        let mut lines = Vec::with_capacity(self.rotations.len());
        for (slot, entry) in self.rotations.into_iter().enumerate() {
            let vertex = if (slot as u32) < self.p {
                Vertex::X(slot as u32 + 1)
            } else {
                Vertex::Y(slot as u32 - self.p + 1)
            };
            let (line, rotation) = entry.ok_or(ParseError {
                line: self.header_line,
                kind: ParseErrorKind::MissingRotation(vertex),
            })?;
            lines.push(line);
            rotations.push(rotation);
        }
        // Edges come from the x-side lists; y-side lists must agree.
        let edges = rotations[..self.p as usize].iter().enumerate().flat_map(|(i, r)| {
            r.iter().map(move |w| (i as u32 + 1, w.index()))
        });
        let graph = Graph::from_edges(self.p, self.q, edges).map_err(|e| ParseError {
            line: self.header_line,
            kind: ParseErrorKind::Invalid(e.into()),
        })?;
        for (slot, rotation) in rotations.iter().enumerate() {
            let vertex = graph.vertex_at(slot);
            let expected = graph.degree(vertex);
            let consistent = rotation.iter().all(|&w| graph.has_edge(vertex, w));
            if rotation.len() != expected || !consistent {
                return Err(ParseError {
                    line: lines[slot],
                    kind: ParseErrorKind::LengthMismatch { vertex, expected, found: rotation.len() },
                });
            }
        }
        Embedding::new(graph, rotations).map_err(|e| ParseError {
            line: self.header_line,
            kind: ParseErrorKind::Invalid(e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const K23: &str = "graph bipartite 2 3\n\
                       # one-face system\n\
                       rot x1: y2 y3 y1\n\
                       rot x2: y1 y2 y3\n\
                       rot y1: x1 x2\n\
                       rot y2: x2 x1\n\
                       rot y3: x1 x2\n";

    #[test]
    fn parse_recanonicalizes_and_round_trips() {
        let e = parse(K23).unwrap();
        assert_eq!(e.rotation(Vertex::X(1)), &[Vertex::Y(1), Vertex::Y(2), Vertex::Y(3)]);
        assert_eq!(e.face_count(), 1);
        let text = serialize(&e);
        assert!(text.starts_with("graph bipartite 2 3\nrot x1: y1 y2 y3\n"));
        assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn repeated_neighbor_names_line() {
        let text = K23.replace("rot x2: y1 y2 y3", "rot x2: y1 y2 y2");
        let err = parse(&text).unwrap_err();
        assert_eq!(err.line, 4);
        assert!(matches!(err.kind, ParseErrorKind::RepeatedNeighbor { .. }));
    }

    #[test]
    fn length_mismatch_rejected() {
        let text = K23.replace("rot y3: x1 x2", "rot y3: x1");
        let err = parse(&text).unwrap_err();
        assert_eq!(err.line, 7);
        assert!(matches!(err.kind, ParseErrorKind::LengthMismatch { .. }));
    }

    #[test]
    fn unknown_and_same_side_rejected() {
        let err = parse(&K23.replace("rot x2: y1 y2 y3", "rot x2: y1 y2 y4")).unwrap_err();
        assert_eq!((err.line, err.kind), (4, ParseErrorKind::UnknownVertex("y4".into())));
        let err = parse(&K23.replace("rot x2: y1 y2 y3", "rot x2: y1 y2 x1")).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::SameSide { .. }));
        let err = parse(&K23.replace("rot y3: x1 x2\n", "")).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingRotation(Vertex::Y(3)));
        let err = parse(&K23.replace("rot y3: x1 x2\n", "rot y2: x1 x2\n")).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateRotation(Vertex::Y(2)));
        let err = parse("graph bipartite 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadHeader);
    }

    #[test]
    fn several_embeddings_in_one_file() {
        let twice = format!("{K23}\n{K23}");
        assert_eq!(parse_many(&twice).unwrap().len(), 2);
        assert!(parse(&twice).is_err());
    }
}
