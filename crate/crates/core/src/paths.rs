//! Exhaustive path and cycle search with reachability pruning.
//!
//! Lengths count edges: a path on `k` vertices has length `k - 1`, a cycle
//! on `k` vertices has length `k`.

use std::collections::VecDeque;

use crate::connectivity::biconnected_components;
use crate::error::{Error, Result};
use crate::graph::{Dense, Graph, Vertex};
use crate::search::{Budget, SearchOutcome};

/// Largest graph accepted by [`longest_path`].
pub const LONGEST_PATH_CAP: usize = 25;

/// Number of vertices reachable from `from` through unvisited, allowed
/// vertices (excluding `from` itself).
fn reach_count(d: &Dense, from: usize, visited: &[bool], allowed: impl Fn(usize) -> bool, seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    let mut count = 0;
    while let Some(u) = queue.pop_front() {
        for &w in &d.adj[u] {
            if !seen[w] && !visited[w] && allowed(w) {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count
}

/// A longest path, exact. Refuses graphs above [`LONGEST_PATH_CAP`] vertices.
pub fn longest_path(g: &Graph) -> Result<Vec<Vertex>> {
    longest_path_capped(g, LONGEST_PATH_CAP)
}

pub fn longest_path_capped(g: &Graph, cap: usize) -> Result<Vec<Vertex>> {
    if g.order() > cap {
        return Err(Error::SizeCap {
            what: "longest path search",
            size: g.order(),
            cap,
        });
    }
    let d = g.dense();
    let n = d.len();
    let mut best: Vec<usize> = Vec::new();
    let mut visited = vec![false; n];
    let mut seen = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for comp in g.components() {
        if comp.len() <= best.len() {
            continue;
        }
        for &s in &comp {
            let s = d.index[&s];
            path.push(s);
            visited[s] = true;
            longest_from(&d, &mut path, &mut visited, &mut seen, &mut best, comp.len());
            visited[s] = false;
            path.pop();
            if best.len() == comp.len() {
                break;
            }
        }
    }
    Ok(best.into_iter().map(|i| d.ids[i]).collect())
}

fn longest_from(
    d: &Dense,
    path: &mut Vec<usize>,
    visited: &mut [bool],
    seen: &mut Vec<bool>,
    best: &mut Vec<usize>,
    comp_size: usize,
) {
    if path.len() > best.len() {
        *best = path.clone();
    }
    if best.len() == comp_size {
        return;
    }
    let u = *path.last().unwrap();
    if path.len() + reach_count(d, u, visited, |_| true, seen) <= best.len() {
        return;
    }
    for i in 0..d.adj[u].len() {
        let w = d.adj[u][i];
        if visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(w);
        longest_from(d, path, visited, seen, best, comp_size);
        path.pop();
        visited[w] = false;
        if best.len() == comp_size {
            return;
        }
    }
}

/// A path of length at least `len`, searched exhaustively within `budget`
/// nodes. Works on graphs of any size.
pub fn path_of_length_at_least(g: &Graph, len: usize, budget: u64) -> SearchOutcome<Vec<Vertex>> {
    let d = g.dense();
    let n = d.len();
    let target = len + 1;
    if target > n {
        return SearchOutcome::Absent;
    }
    let mut budget = Budget::new(budget);
    let mut visited = vec![false; n];
    let mut seen = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for comp in g.components() {
        if comp.len() < target {
            continue;
        }
        let mut starts: Vec<usize> = comp.iter().map(|v| d.index[v]).collect();
        starts.sort_by_key(|&s| (d.adj[s].len(), s));
        for s in starts {
            path.push(s);
            visited[s] = true;
            let r = reach_path(&d, &mut path, &mut visited, &mut seen, target, &mut budget);
            visited[s] = false;
            path.pop();
            match r {
                Ok(Some(p)) => return SearchOutcome::Found(p.into_iter().map(|i| d.ids[i]).collect()),
                Ok(None) => {}
                Err(()) => return budget.inconclusive(),
            }
        }
    }
    SearchOutcome::Absent
}

fn reach_path(
    d: &Dense,
    path: &mut Vec<usize>,
    visited: &mut [bool],
    seen: &mut Vec<bool>,
    target: usize,
    budget: &mut Budget,
) -> std::result::Result<Option<Vec<usize>>, ()> {
    budget.tick().map_err(|_| ())?;
    if path.len() >= target {
        return Ok(Some(path.clone()));
    }
    let u = *path.last().unwrap();
    if path.len() + reach_count(d, u, visited, |_| true, seen) < target {
        return Ok(None);
    }
    let mut next: Vec<usize> = d.adj[u].iter().copied().filter(|&w| !visited[w]).collect();
    next.sort_by_key(|&w| (d.adj[w].iter().filter(|&&x| !visited[x]).count(), w));
    for w in next {
        visited[w] = true;
        path.push(w);
        let r = reach_path(d, path, visited, seen, target, budget);
        path.pop();
        visited[w] = false;
        if let Ok(None) = r {
            continue;
        }
        return r;
    }
    Ok(None)
}

/// A cycle whose length lies in `lo..=hi`, searched block by block.
pub fn cycle_with_length_in(g: &Graph, lo: usize, hi: usize, budget: u64) -> SearchOutcome<Vec<Vertex>> {
    cycle_in_range(g, lo, hi, &mut Budget::new(budget))
}

fn cycle_in_range(g: &Graph, lo: usize, hi: usize, budget: &mut Budget) -> SearchOutcome<Vec<Vertex>> {
    let lo = lo.max(3);
    if hi < lo {
        return SearchOutcome::Absent;
    }
    let mut blocks = biconnected_components(g).blocks;
    blocks.sort_by_key(|b| std::cmp::Reverse(b.len()));
    for block in blocks {
        if block.len() < lo {
            continue;
        }
        let sub = g.induced_subgraph(&block);
        match cycle_in_block(&sub, lo, hi, budget) {
            Ok(Some(c)) => return SearchOutcome::Found(c),
            Ok(None) => {}
            Err(()) => return budget.inconclusive(),
        }
    }
    SearchOutcome::Absent
}

fn cycle_in_block(
    g: &Graph,
    lo: usize,
    hi: usize,
    budget: &mut Budget,
) -> std::result::Result<Option<Vec<Vertex>>, ()> {
    let d = g.dense();
    let n = d.len();
    let mut visited = vec![false; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if n - s < lo {
            break;
        }
        let mut path = vec![s];
        visited[s] = true;
        let r = extend_cycle(&d, s, &mut path, &mut visited, &mut seen, lo, hi, budget)?;
        visited[s] = false;
        if let Some(c) = r {
            return Ok(Some(c.into_iter().map(|i| d.ids[i]).collect()));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn extend_cycle(
    d: &Dense,
    s: usize,
    path: &mut Vec<usize>,
    visited: &mut [bool],
    seen: &mut Vec<bool>,
    lo: usize,
    hi: usize,
    budget: &mut Budget,
) -> std::result::Result<Option<Vec<usize>>, ()> {
    budget.tick().map_err(|_| ())?;
    let u = *path.last().unwrap();
    let l = path.len();
    if l >= lo && l <= hi && l >= 3 && d.adj[u].contains(&s) {
        return Ok(Some(path.clone()));
    }
    if l >= hi {
        return Ok(None);
    }
    let r = reach_count(d, u, visited, |w| w > s, seen);
    if l + r < lo {
        return Ok(None);
    }
    let can_close = d.adj[s].iter().any(|&w| w == u || (w > s && !visited[w] && seen[w]));
    if !can_close {
        return Ok(None);
    }
    for i in 0..d.adj[u].len() {
        let w = d.adj[u][i];
        if w <= s || visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(w);
        let r = extend_cycle(d, s, path, visited, seen, lo, hi, budget);
        path.pop();
        visited[w] = false;
        match r {
            Ok(None) => {}
            other => return other,
        }
    }
    Ok(None)
}

/// A cycle of length at least `n`, or `None` when the circumference is
/// smaller. Exact (unbounded search).
pub fn circumference_at_least(g: &Graph, n: usize) -> Option<Vec<Vertex>> {
    cycle_with_length_in(g, n, usize::MAX, u64::MAX).found()
}

/// A longest cycle, exact; `None` for forests.
pub fn longest_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    let mut lo = 3;
    while let Some(c) = circumference_at_least(g, lo) {
        lo = c.len() + 1;
        best = Some(c);
    }
    best
}

/// Length of a longest cycle, 0 for forests.
pub fn circumference(g: &Graph) -> usize {
    longest_cycle(g).map_or(0, |c| c.len())
}

/// A shortest cycle among those of length at least `lo`.
pub fn shortest_cycle_at_least(g: &Graph, lo: usize, budget: u64) -> SearchOutcome<Vec<Vertex>> {
    let mut budget = Budget::new(budget);
    for len in lo.max(3)..=g.order() {
        match cycle_in_range(g, len, len, &mut budget) {
            SearchOutcome::Absent => {}
            other => return other,
        }
    }
    SearchOutcome::Absent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, generate, two_cycles, FamilySpec};

    #[test]
    fn longest_path_examples() {
        assert_eq!(longest_path(&cycle(6)).unwrap().len() - 1, 5);
        assert_eq!(longest_path(&complete_bipartite(1, 4)).unwrap().len() - 1, 2);
        let o5 = generate(&FamilySpec::CircularLadder { k: 5 }).unwrap();
        let p = longest_path(&o5).unwrap();
        assert!(o5.is_path(&p));
        assert_eq!(p.len() - 1, 9);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(longest_path(&cycle(26)), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(circumference_at_least(&cycle(7), 5).unwrap().len(), 7);
        assert!(circumference_at_least(&crate::families::path(8), 3).is_none());
        let c = circumference_at_least(&two_cycles(3, 3), 4).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(circumference(&complete(5)), 5);
    }

    #[test]
    fn shortest_cycle_search() {
        let g = complete(5);
        let c = shortest_cycle_at_least(&g, 4, 1_000_000).found().unwrap();
        assert_eq!(c.len(), 4);
        assert!(g.is_cycle(&c));
    }

    #[test]
    fn budgeted_path() {
        let g = cycle(40);
        let p = path_of_length_at_least(&g, 39, 1_000_000).found().unwrap();
        assert!(g.is_path(&p));
        assert!(path_of_length_at_least(&g, 40, 1_000_000).is_absent());
    }
}
