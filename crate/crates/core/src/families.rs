//! Named graph families with fixed, documented vertex labellings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Path with `n` edges on `0..=n`.
    Path {
        n: usize,
    },
    /// Cycle on `0..n`.
    Cycle {
        n: usize,
    },
    /// Cycles of lengths `n` and `m` sharing the edge `0-1`.
    TwoCycles {
        n: usize,
        m: usize,
    },
    /// Rim `0..k`, hub `k`.
    Wheel {
        k: usize,
    },
    /// Rim `0..k`, non-adjacent apexes `k` and `k+1`.
    DoubleWheel {
        k: usize,
    },
    /// Rails `0..k` and `k..2k`, rungs `i - (k+i)`.
    Ladder {
        k: usize,
    },
    CircularLadder {
        k: usize,
    },
    MoebiusLadder {
        k: usize,
    },
    /// Sides `0..a` and `a..a+b`.
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    Complete {
        n: usize,
    },
    /// Ray truncated to `m` vertices `0..m`, apexes `m` and `m+1`.
    RayWithTwoApexes {
        m: usize,
    },
    Cone {
        base: Graph,
    },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        let bad = |what: &str, need: &str| Err(Error::OutOfRange(format!("{what}: need {need}")));
        match *self {
            Path { n } if n < 1 => bad("path P_n", "n >= 1"),
            Cycle { n } if n < 3 => bad("cycle C_n", "n >= 3"),
            TwoCycles { n, m } if n < 3 || m < 3 => bad("two cycles C_{n,m}", "n, m >= 3"),
            Wheel { k } if k < 3 => bad("wheel W_k", "k >= 3"),
            DoubleWheel { k } if k < 3 => bad("double wheel D_k", "k >= 3"),
            Ladder { k } if k < 3 => bad("ladder L_k", "k >= 3"),
            CircularLadder { k } if k < 3 => bad("circular ladder O_k", "k >= 3"),
            MoebiusLadder { k } if k < 3 => bad("Moebius ladder M_k", "k >= 3"),
            CompleteBipartite { a, b } if a < 1 || b < 1 => bad("complete bipartite K_{a,b}", "a, b >= 1"),
            Complete { n } if n < 1 => bad("complete graph K_n", "n >= 1"),
            RayWithTwoApexes { m } if m < 1 => bad("R_2 truncation", "m >= 1"),
            _ => Ok(()),
        }
    }

    /// Parses CLI tokens such as `W 5`, `Cnm 3 4`, `K 3 3`, `R2 6`.
    pub fn parse_tokens(tokens: &[String]) -> Result<Self> {
        let (head, rest) = tokens
            .split_first()
            .ok_or_else(|| Error::Parse("empty family specification".into()))?;
        let nums: Vec<usize> = rest
            .iter()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
            .collect::<Result<_>>()?;
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "family {head} takes {k} parameter(s), got {}",
                    nums.len()
                )))
            }
        };
        let spec = match head.as_str() {
            "P" => {
                arity(1)?;
                FamilySpec::Path { n: nums[0] }
            }
            "C" => {
                arity(1)?;
                FamilySpec::Cycle { n: nums[0] }
            }
            "Cnm" => {
                arity(2)?;
                FamilySpec::TwoCycles { n: nums[0], m: nums[1] }
            }
            "W" => {
                arity(1)?;
                FamilySpec::Wheel { k: nums[0] }
            }
            "D" => {
                arity(1)?;
                FamilySpec::DoubleWheel { k: nums[0] }
            }
            "L" => {
                arity(1)?;
                FamilySpec::Ladder { k: nums[0] }
            }
            "O" => {
                arity(1)?;
                FamilySpec::CircularLadder { k: nums[0] }
            }
            "M" => {
                arity(1)?;
                FamilySpec::MoebiusLadder { k: nums[0] }
            }
            "K" if nums.len() == 1 => FamilySpec::Complete { n: nums[0] },
            "K" => {
                arity(2)?;
                FamilySpec::CompleteBipartite { a: nums[0], b: nums[1] }
            }
            "R2" => {
                arity(1)?;
                FamilySpec::RayWithTwoApexes { m: nums[0] }
            }
            other => return Err(Error::Parse(format!("unknown family {other}"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Parses compact names: `C4`, `C3,4`, `W3`, `K5`, `P3`.
    pub fn parse_compact(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(|ch: char| ch.is_ascii_digit())
            .ok_or_else(|| Error::Parse(format!("no parameters in {s:?}")))?;
        let (head, params) = s.split_at(split);
        let mut tokens = vec![head.to_string()];
        tokens.extend(params.split(',').map(|t| t.trim().to_string()));
        if head == "C" && tokens.len() == 3 {
            tokens[0] = "Cnm".into();
        }
        Self::parse_tokens(&tokens)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Path { n } => write!(f, "P{n}"),
            Cycle { n } => write!(f, "C{n}"),
            TwoCycles { n, m } => write!(f, "C{n},{m}"),
            Wheel { k } => write!(f, "W{k}"),
            DoubleWheel { k } => write!(f, "D{k}"),
            Ladder { k } => write!(f, "L{k}"),
            CircularLadder { k } => write!(f, "O{k}"),
            MoebiusLadder { k } => write!(f, "M{k}"),
            CompleteBipartite { a, b } => write!(f, "K{a},{b}"),
            Complete { n } => write!(f, "K{n}"),
            RayWithTwoApexes { m } => write!(f, "R2[{m}]"),
            Cone { base } => write!(f, "cone({} vertices)", base.order()),
        }
    }
}

fn cycle_edges(g: &mut Graph, vs: &[Vertex]) {
    for i in 0..vs.len() {
        g.add_edge(vs[i], vs[(i + 1) % vs.len()]);
    }
}

fn ladder(k: usize) -> Graph {
    let k = k as Vertex;
    let mut g = Graph::with_vertices(0..2 * k);
    for i in 0..k {
        g.add_edge(i, k + i);
        if i + 1 < k {
            g.add_edge(i, i + 1);
            g.add_edge(k + i, k + i + 1);
        }
    }
    g
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    use FamilySpec::*;
    spec.validate()?;
    let g = match *spec {
        Path { n } => {
            let n = n as Vertex;
            let mut g = Graph::with_vertices(0..=n);
            for i in 0..n {
                g.add_edge(i, i + 1);
            }
            g
        }
        Cycle { n } => {
            let vs: Vec<Vertex> = (0..n as Vertex).collect();
            let mut g = Graph::with_vertices(vs.iter().copied());
            cycle_edges(&mut g, &vs);
            g
        }
        TwoCycles { n, m } => {
            let mut g = Graph::with_vertices([0, 1]);
            let mut next = 2;
            for len in [n, m] {
                let mut cyc = vec![0, 1];
                for _ in 0..len - 2 {
                    cyc.push(next);
                    next += 1;
                }
                cyc.reverse();
                // cycle ... 1, 0 closes through the shared edge
                cycle_edges(&mut g, &cyc);
            }
            g
        }
        Wheel { k } => cone(&generate(&Cycle { n: k })?),
        DoubleWheel { k } => {
            let mut g = generate(&Cycle { n: k })?;
            let k = k as Vertex;
            for apex in [k, k + 1] {
                for i in 0..k {
                    g.add_edge(apex, i);
                }
            }
            g
        }
        Ladder { k } => ladder(k),
        CircularLadder { k } => {
            let mut g = ladder(k);
            let k = k as Vertex;
            g.add_edge(0, k - 1);
            g.add_edge(k, 2 * k - 1);
            g
        }
        MoebiusLadder { k } => {
            let mut g = ladder(k);
            let k = k as Vertex;
            g.add_edge(0, 2 * k - 1);
            g.add_edge(k, k - 1);
            g
        }
        CompleteBipartite { a, b } => {
            let (a, b) = (a as Vertex, b as Vertex);
            let mut g = Graph::with_vertices(0..a + b);
            for i in 0..a {
                for j in a..a + b {
                    g.add_edge(i, j);
                }
            }
            g
        }
        Complete { n } => {
            let n = n as Vertex;
            let mut g = Graph::with_vertices(0..n);
            for i in 0..n {
                for j in i + 1..n {
                    g.add_edge(i, j);
                }
            }
            g
        }
        RayWithTwoApexes { m } => {
            let m = m as Vertex;
            let mut g = Graph::with_vertices(0..m + 2);
            for i in 0..m {
                if i + 1 < m {
                    g.add_edge(i, i + 1);
                }
                g.add_edge(m, i);
                g.add_edge(m + 1, i);
            }
            g
        }
        Cone { ref base } => cone(base),
    };
    Ok(g)
}

/// Adds a fresh apex (the next unused identifier) adjacent to every vertex.
pub fn cone(g: &Graph) -> Graph {
    let apex = g.next_vertex_id();
    let mut out = g.clone();
    out.add_vertex(apex);
    for v in g.vertices() {
        out.add_edge(apex, v);
    }
    out
}

/// Convenience constructors used throughout the crate.
pub fn path(n: usize) -> Graph {
    generate(&FamilySpec::Path { n }).expect("path parameters")
}

pub fn cycle(n: usize) -> Graph {
    generate(&FamilySpec::Cycle { n }).expect("cycle parameters")
}

pub fn wheel(k: usize) -> Graph {
    generate(&FamilySpec::Wheel { k }).expect("wheel parameters")
}

pub fn complete(n: usize) -> Graph {
    generate(&FamilySpec::Complete { n }).expect("complete graph parameters")
}

pub fn two_cycles(n: usize, m: usize) -> Graph {
    generate(&FamilySpec::TwoCycles { n, m }).expect("two-cycle parameters")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    generate(&FamilySpec::CompleteBipartite { a, b }).expect("bipartite parameters")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(spec: FamilySpec) -> (usize, usize) {
        let g = generate(&spec).unwrap();
        (g.order(), g.size())
    }

    #[test]
    fn family_sizes() {
        assert_eq!(counts(FamilySpec::Wheel { k: 5 }), (6, 10));
        assert_eq!(counts(FamilySpec::TwoCycles { n: 3, m: 4 }), (5, 6));
        assert_eq!(counts(FamilySpec::CircularLadder { k: 5 }), (10, 15));
        assert_eq!(counts(FamilySpec::MoebiusLadder { k: 5 }), (10, 15));
        assert_eq!(counts(FamilySpec::DoubleWheel { k: 5 }), (7, 15));
        assert_eq!(counts(FamilySpec::CompleteBipartite { a: 3, b: 4 }), (7, 12));
        assert_eq!(counts(FamilySpec::RayWithTwoApexes { m: 6 }), (8, 17));
    }

    #[test]
    fn double_wheel_apexes_not_adjacent() {
        let g = generate(&FamilySpec::DoubleWheel { k: 5 }).unwrap();
        assert!(!g.has_edge(5, 6));
        assert_eq!(g.degree(5), 5);
    }

    #[test]
    fn two_cycles_share_one_edge() {
        let g = two_cycles(4, 5);
        assert!(g.has_edge(0, 1));
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
        assert!(g.vertices().filter(|&v| v > 1).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn cone_examples() {
        assert_eq!(cone(&cycle(6)), wheel(6));
        assert_eq!(cone(&Graph::new()), complete(1));
        assert_eq!(cone(&complete(3)), complete(4));
    }

    #[test]
    fn ranges_rejected() {
        assert!(generate(&FamilySpec::Wheel { k: 2 }).is_err());
        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
        assert!(generate(&FamilySpec::Path { n: 0 }).is_err());
        assert!(generate(&FamilySpec::TwoCycles { n: 3, m: 2 }).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(FamilySpec::parse_compact("W3").unwrap(), FamilySpec::Wheel { k: 3 });
        assert_eq!(
            FamilySpec::parse_compact("C3,4").unwrap(),
            FamilySpec::TwoCycles { n: 3, m: 4 }
        );
        assert_eq!(FamilySpec::parse_compact("K5").unwrap(), FamilySpec::Complete { n: 5 });
        let toks: Vec<String> = ["Cnm", "3", "4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            FamilySpec::parse_tokens(&toks).unwrap(),
            FamilySpec::TwoCycles { n: 3, m: 4 }
        );
        assert!(FamilySpec::parse_compact("W2").is_err());
    }

    #[test]
    fn deterministic() {
        let a = generate(&FamilySpec::MoebiusLadder { k: 7 }).unwrap();
        let b = generate(&FamilySpec::MoebiusLadder { k: 7 }).unwrap();
        assert_eq!(a, b);
    }
}
