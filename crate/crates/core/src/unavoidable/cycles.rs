use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ExtractionCertificate, Route};
use crate::connectivity::{disjoint_set_paths, is_k_connected};
use crate::error::{Error, Result};
use crate::families::{generate, FamilySpec};
use crate::graph::{Graph, Vertex};
use crate::minor::{find_subdivision, verify_model};
use crate::paths::{
    cycle_with_length_in, longest_path, path_of_length_at_least, shortest_cycle_at_least, LONGEST_PATH_CAP,
};
use crate::search::SearchOutcome;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongCycle {
    pub cycle: Vec<Vertex>,
    /// The path of length at least `n^2` the hypothesis was checked on.
    pub path: Vec<Vertex>,
}

fn require_two_connected(g: &Graph) -> Result<()> {
    if !is_k_connected(g, 2) {
        return Err(Error::Precondition(format!(
            "graph on {} vertices is not 2-connected",
            g.order()
        )));
    }
    Ok(())
}

fn path_length_note(g: &Graph) -> String {
    if g.order() <= LONGEST_PATH_CAP {
        match longest_path(g) {
            Ok(p) => format!("longest path has length {}", p.len().saturating_sub(1)),
            Err(_) => String::new(),
        }
    } else {
        format!("graph has only {} vertices", g.order())
    }
}

/// In a 2-connected graph with a path of length `n^2`, a cycle of length at
/// least `n`. The first qualifying cycle found is returned.
pub fn find_long_cycle(g: &Graph, n: usize, path: Option<&[Vertex]>, budget: u64) -> Result<LongCycle> {
    if n < 1 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    require_two_connected(g)?;
    let need = n.checked_mul(n).ok_or_else(|| Error::Overflow(format!("{n}^2")))?;
    let path = match path {
        Some(p) => {
            if !g.is_path(p) {
                return Err(Error::Precondition("supplied vertex sequence is not a path".into()));
            }
            if p.len() - 1 < need {
                return Err(Error::Precondition(format!(
                    "supplied path has length {} < n^2 = {need}",
                    p.len() - 1
                )));
            }
            p.to_vec()
        }
        None => match path_of_length_at_least(g, need, budget) {
            SearchOutcome::Found(p) => p,
            SearchOutcome::Absent => {
                return Err(Error::Precondition(format!(
                    "no path of length n^2 = {need}: {}",
                    path_length_note(g)
                )))
            }
            SearchOutcome::Inconclusive { .. } => return Err(Error::BudgetExhausted { budget }),
        },
    };
    match cycle_with_length_in(g, n, usize::MAX, budget) {
        SearchOutcome::Found(cycle) => Ok(LongCycle { cycle, path }),
        SearchOutcome::Absent => Err(Error::CounterexampleCandidate(format!(
            "2-connected graph on {} vertices has a path of length {} but no cycle of length >= {n}",
            g.order(),
            path.len() - 1
        ))),
        SearchOutcome::Inconclusive { .. } => Err(Error::BudgetExhausted { budget }),
    }
}

/// Two vertex-disjoint `a`-`b` paths in a 2-connected graph.
pub fn two_disjoint_connecting_paths(
    g: &Graph,
    a: &BTreeSet<Vertex>,
    b: &BTreeSet<Vertex>,
) -> Result<[Vec<Vertex>; 2]> {
    require_two_connected(g)?;
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Precondition(
            "both vertex sets need at least two vertices".into(),
        ));
    }
    if !a.is_disjoint(b) {
        return Err(Error::Precondition("vertex sets must be disjoint".into()));
    }
    if let Some(v) = a.iter().chain(b).find(|&&v| !g.contains(v)) {
        return Err(Error::UnknownVertex(*v));
    }
    let mut paths = disjoint_set_paths(g, a, b, 2);
    if paths.len() < 2 {
        return Err(Error::CounterexampleCandidate(
            "2-connected graph without two disjoint connecting paths".into(),
        ));
    }
    let second = paths.pop().unwrap();
    Ok([paths.pop().unwrap(), second])
}

fn cycle_graph(c: &[Vertex]) -> Graph {
    let mut h = Graph::with_vertices(c.iter().copied());
    for i in 0..c.len() {
        h.add_edge(c[i], c[(i + 1) % c.len()]);
    }
    h
}

fn path_graph(p: &[Vertex]) -> Graph {
    let mut h = Graph::with_vertices(p.iter().copied());
    for w in p.windows(2) {
        h.add_edge(w[0], w[1]);
    }
    h
}

/// The longest stretch of `d2` between consecutive vertices of `on`.
fn longest_segment(d2: &[Vertex], on: &BTreeSet<Vertex>) -> Vec<Vertex> {
    let len = d2.len();
    let marks: Vec<usize> = (0..len).filter(|&i| on.contains(&d2[i])).collect();
    let mut best: Vec<Vertex> = Vec::new();
    for (j, &i) in marks.iter().enumerate() {
        let next = marks[(j + 1) % marks.len()];
        let span = (next + len - i - 1) % len + 1;
        if span + 1 > best.len() {
            best = (0..=span).map(|t| d2[(i + t) % len]).collect();
        }
    }
    best
}

/// A certified `C_{n,m}` minor in a 2-connected graph, following the case
/// split on how a cycle `D1` of length at least `2n` meets a cycle `D2` of
/// length at least `|D1| m`. When no such pair of cycles exists the
/// subdivision is searched for directly.
pub fn find_cycle_pair_minor(g: &Graph, n: usize, m: usize, budget: u64) -> Result<ExtractionCertificate> {
    let target = FamilySpec::TwoCycles { n, m };
    let pattern = generate(&target)?;
    require_two_connected(g)?;
    let exhausted = Error::BudgetExhausted { budget };

    let d1 = match shortest_cycle_at_least(g, 2 * n, budget) {
        SearchOutcome::Found(c) => Some(c),
        SearchOutcome::Absent => None,
        SearchOutcome::Inconclusive { .. } => return Err(exhausted),
    };
    let pair = match d1 {
        Some(d1) => match cycle_with_length_in(g, d1.len() * m, usize::MAX, budget) {
            SearchOutcome::Found(d2) => Some((d1, d2)),
            SearchOutcome::Absent => None,
            SearchOutcome::Inconclusive { .. } => return Err(exhausted),
        },
        None => None,
    };

    let (route, frame) = match pair {
        None => (Route::DirectSubdivision, g.clone()),
        Some((d1, d2)) => {
            let s1: BTreeSet<Vertex> = d1.iter().copied().collect();
            let s2: BTreeSet<Vertex> = d2.iter().copied().collect();
            let shared: Vec<Vertex> = s1.intersection(&s2).copied().collect();
            let mut frame = cycle_graph(&d1);
            match shared.len() {
                0 => {
                    let [p1, p2] = two_disjoint_connecting_paths(g, &s1, &s2)?;
                    frame = frame
                        .union(&cycle_graph(&d2))
                        .union(&path_graph(&p1))
                        .union(&path_graph(&p2));
                    (Route::DisjointCycles, frame)
                }
                1 => {
                    let v = shared[0];
                    let rest = g.without_vertices(&[v]);
                    let a: BTreeSet<Vertex> = s1.iter().copied().filter(|&x| x != v).collect();
                    let b: BTreeSet<Vertex> = s2.iter().copied().filter(|&x| x != v).collect();
                    let p = disjoint_set_paths(&rest, &a, &b, 1).pop().ok_or_else(|| {
                        Error::CounterexampleCandidate(format!("no cycle-to-cycle path avoiding {v}"))
                    })?;
                    frame = frame.union(&cycle_graph(&d2)).union(&path_graph(&p));
                    (Route::SharedVertex, frame)
                }
                _ => {
                    let seg = longest_segment(&d2, &s1);
                    if seg.len() - 1 < m {
                        return Err(Error::CounterexampleCandidate(format!(
                            "longest segment of D2 between D1 vertices has length {} < m = {m}",
                            seg.len() - 1
                        )));
                    }
                    frame = frame.union(&path_graph(&seg));
                    (Route::SharedSegment, frame)
                }
            }
        }
    };

    let sub = match find_subdivision(&pattern, &frame, budget)? {
        SearchOutcome::Found(s) => s,
        SearchOutcome::Inconclusive { .. } => return Err(exhausted),
        SearchOutcome::Absent if route == Route::DirectSubdivision => {
            return Err(Error::Precondition(format!(
                "graph has no cycle pair of lengths 2n = {} and 2n*m = {}, and no C_{{{n},{m}}} subdivision",
                2 * n,
                2 * n * m
            )))
        }
        SearchOutcome::Absent => {
            return Err(Error::CounterexampleCandidate(format!(
                "{route:?}: no C_{{{n},{m}}} subdivision in the union of the cycles and connecting paths"
            )))
        }
    };
    let model = sub.to_model(g);
    let report = verify_model(&model);
    if !report.is_valid() {
        return Err(Error::CounterexampleCandidate(format!(
            "extracted model fails verification: {}",
            report.violations[0]
        )));
    }
    Ok(ExtractionCertificate {
        target,
        route,
        model,
        subdivision: Some(sub),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, wheel};
    use crate::search::DEFAULT_BUDGET;

    #[test]
    fn long_cycle_examples() {
        let err = find_long_cycle(&complete(4), 3, None, DEFAULT_BUDGET).unwrap_err();
        assert!(err.to_string().contains("longest path has length 3"));
        let c = find_long_cycle(&cycle(10), 3, None, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.cycle.len(), 10);
        let c = find_long_cycle(&cycle(17), 4, None, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.cycle.len(), 17);
        let o6 = generate(&FamilySpec::CircularLadder { k: 6 }).unwrap();
        assert!(matches!(
            find_long_cycle(&o6, 4, None, DEFAULT_BUDGET),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn connecting_paths() {
        let g = cycle(6);
        let [p, q] = two_disjoint_connecting_paths(&g, &BTreeSet::from([0, 1]), &BTreeSet::from([3, 4])).unwrap();
        assert!(g.is_path(&p) && g.is_path(&q));
        assert!(p.iter().all(|v| !q.contains(v)));
        let [p, q] =
            two_disjoint_connecting_paths(&complete(4), &BTreeSet::from([0, 1]), &BTreeSet::from([2, 3])).unwrap();
        assert_eq!((p.len(), q.len()), (2, 2));
    }

    #[test]
    fn cycle_pair_examples() {
        for g in [wheel(4), complete(4)] {
            let cert = find_cycle_pair_minor(&g, 3, 3, DEFAULT_BUDGET).unwrap();
            assert!(cert.verify(&g));
            assert_eq!(cert.route, Route::DirectSubdivision);
        }
        assert!(matches!(
            find_cycle_pair_minor(&cycle(6), 3, 4, DEFAULT_BUDGET),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cycle_pair_through_the_case_split() {
        let o9 = generate(&FamilySpec::CircularLadder { k: 9 }).unwrap();
        let cert = find_cycle_pair_minor(&o9, 3, 3, DEFAULT_BUDGET).unwrap();
        assert_ne!(cert.route, Route::DirectSubdivision);
        assert!(cert.verify(&o9));
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"route\"") && json.contains("\"branch_sets\""));
        let back: ExtractionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn segment_wraps_around() {
        let seg = longest_segment(&[0, 1, 2, 3, 4, 5], &BTreeSet::from([1, 2]));
        assert_eq!(seg, vec![2, 3, 4, 5, 0, 1]);
    }
}
