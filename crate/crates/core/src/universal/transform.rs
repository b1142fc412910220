use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Vertex};

/// Removal of a pinned path `P`, recording each remaining vertex's colour,
/// neighbours on `P` and the colours of those edges in a single new vertex
/// colour.
///
/// The pinned graph is `G[V(P)]`, chords included, so that the inverse can
/// rebuild edges between path vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinnedTransform {
    pub pin: ColoredGraph,
    pub path: Vec<Vertex>,
}

/// What a vertex outside `P` knows about itself and about `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub color: u32,
    /// Edge colour to each path vertex, in path order; `None` for non-neighbours.
    pub attach: Vec<Option<u32>>,
}

impl PinnedTransform {
    pub fn new(pin: ColoredGraph, path: Vec<Vertex>) -> Result<Self> {
        if path.is_empty() {
            return Err(Error::Precondition("pin path is empty".into()));
        }
        if pin.graph().order() != path.len() || path.iter().any(|&v| !pin.graph().contains(v)) {
            return Err(Error::Precondition(
                "pinned graph must have exactly the path's vertices".into(),
            ));
        }
        if path.len() > 1 && !pin.graph().is_path(&path) {
            return Err(Error::Precondition("pin path is not a path of the pinned graph".into()));
        }
        Ok(PinnedTransform { pin, path })
    }

    /// Pins `g[path]`.
    pub fn from_path(g: &ColoredGraph, path: &[Vertex]) -> Result<Self> {
        Self::new(g.induced_subgraph(path), path.to_vec())
    }

    pub fn c(&self) -> u32 {
        self.pin.c()
    }

    pub fn d(&self) -> u32 {
        self.pin.d()
    }

    /// `d' = d (c + 1)^|P|`.
    pub fn d_prime(&self) -> Result<u32> {
        let base = self.c() + 1;
        let mut out = self.d();
        for _ in 0..self.path.len() {
            out = out
                .checked_mul(base)
                .ok_or_else(|| Error::Overflow(format!("d' for |P| = {}", self.path.len())))?;
        }
        Ok(out)
    }

    pub fn encode(&self, desc: &Descriptor) -> Result<u32> {
        if desc.color >= self.d() || desc.attach.len() != self.path.len() {
            return Err(Error::OutOfRange(format!("descriptor {desc:?} outside the encoding")));
        }
        let base = self.c() + 1;
        let mut code = 0u32;
        for a in desc.attach.iter().rev() {
            let digit = match *a {
                None => 0,
                Some(col) if col < self.c() => col + 1,
                Some(col) => return Err(Error::OutOfRange(format!("edge colour {col} >= c = {}", self.c()))),
            };
            code = code * base + digit;
        }
        Ok(code * self.d() + desc.color)
    }

    pub fn decode(&self, code: u32) -> Result<Descriptor> {
        if code >= self.d_prime()? {
            return Err(Error::OutOfRange(format!("colour {code} >= d'")));
        }
        let base = self.c() + 1;
        let color = code % self.d();
        let mut rest = code / self.d();
        let mut attach = Vec::with_capacity(self.path.len());
        for _ in 0..self.path.len() {
            let digit = rest % base;
            rest /= base;
            attach.push(if digit == 0 { None } else { Some(digit - 1) });
        }
        Ok(Descriptor { color, attach })
    }
}

/// `t(h)`: `h` minus the path vertices, recoloured by descriptor.
pub fn transform_t(h: &ColoredGraph, pt: &PinnedTransform) -> Result<ColoredGraph> {
    if h.c() != pt.c() || h.d() != pt.d() {
        return Err(Error::Precondition("palette differs from the pinned graph's".into()));
    }
    let mut out = ColoredGraph::empty(pt.c(), pt.d_prime()?)?;
    let on_path = |v: Vertex| pt.path.contains(&v);
    for (&v, &color) in h.vertex_colors() {
        if on_path(v) {
            continue;
        }
        let attach = pt.path.iter().map(|&p| h.edge_color(v, p)).collect();
        out.add_vertex(v, pt.encode(&Descriptor { color, attach })?)?;
    }
    for (&(u, v), &col) in h.edge_colors() {
        if !on_path(u) && !on_path(v) {
            out.add_edge(u, v, col)?;
        }
    }
    Ok(out)
}

/// `t̊(h')`: the unique graph containing the pinned graph whose transform is `h'`.
pub fn transform_t_inv(h_prime: &ColoredGraph, pt: &PinnedTransform) -> Result<ColoredGraph> {
    if h_prime.c() != pt.c() {
        return Err(Error::Precondition(
            "edge palette differs from the pinned graph's".into(),
        ));
    }
    if let Some(v) = pt.path.iter().find(|&&v| h_prime.graph().contains(v)) {
        return Err(Error::Precondition(format!("vertex {v} lies on the pin path")));
    }
    let mut out = pt.pin.clone();
    for (&v, &code) in h_prime.vertex_colors() {
        let desc = pt.decode(code)?;
        out.add_vertex(v, desc.color)?;
        for (i, a) in desc.attach.iter().enumerate() {
            if let Some(col) = *a {
                out.add_edge(v, pt.path[i], col)?;
            }
        }
    }
    for (&(u, v), &col) in h_prime.edge_colors() {
        out.add_edge(u, v, col)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn pin3() -> PinnedTransform {
        let mut p = ColoredGraph::empty(2, 1).unwrap();
        p.add_edge(0, 1, 0).unwrap();
        p.add_edge(1, 2, 1).unwrap();
        PinnedTransform::new(p, vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn d_prime_and_codes() {
        let pt = pin3();
        assert_eq!(pt.d_prime().unwrap(), 27);
        for code in 0..27 {
            assert_eq!(pt.encode(&pt.decode(code).unwrap()).unwrap(), code);
        }
        assert!(pt.decode(27).is_err());
    }

    #[test]
    fn examples() {
        let pt = pin3();
        let mut h = pt.pin.clone();
        assert_eq!(transform_t(&h, &pt).unwrap().graph().order(), 0);
        h.add_vertex(7, 0).unwrap();
        h.add_edge(7, 0, 0).unwrap();
        h.add_edge(7, 2, 1).unwrap();
        let t = transform_t(&h, &pt).unwrap();
        let desc = pt.decode(t.vertex_color(7).unwrap()).unwrap();
        assert_eq!(desc.attach, vec![Some(0), None, Some(1)]);
        assert_eq!(transform_t_inv(&t, &pt).unwrap(), h);

        let empty = ColoredGraph::empty(2, 27).unwrap();
        assert_eq!(transform_t_inv(&empty, &pt).unwrap(), pt.pin);

        let lone =
            ColoredGraph::from_parts(Graph::with_vertices([9]), [(9, 0)].into(), Default::default(), 2, 27).unwrap();
        let back = transform_t_inv(&lone, &pt).unwrap();
        assert_eq!(back.graph().order(), 4);
        assert_eq!(back.graph().degree(9), 0);
    }

    #[test]
    fn chords_survive_the_roundtrip() {
        let mut g = ColoredGraph::empty(1, 1).unwrap();
        for (u, v) in [(0, 1), (1, 2), (0, 2), (2, 3)] {
            g.add_edge(u, v, 0).unwrap();
        }
        let pt = PinnedTransform::from_path(&g, &[0, 1, 2]).unwrap();
        let back = transform_t_inv(&transform_t(&g, &pt).unwrap(), &pt).unwrap();
        assert_eq!(back, g);
    }
}
