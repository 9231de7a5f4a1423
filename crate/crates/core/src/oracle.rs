//! Brute-force reference implementations.
//!
//! Everything here is a literal reading of the defining sums and shares no
//! code with the fast paths beyond the ring, lattice and graph types.

use crate::itrans::IntersectionTable;
use crate::lattice::SetFamily;
use crate::paths::WeightedDigraph;
use crate::ring::{Ring, WeightPolynomial};

/// `x_j(Y) = sum of f(X) over X in F with |X ∩ Y| = j`, by a double loop.
pub fn brute_intersection_transform<R: Ring>(
    family: &SetFamily,
    values: &[R::Elem],
    targets: &SetFamily,
    ring: &R,
) -> IntersectionTable<R::Elem> {
    let n = family.ground_size().max(targets.ground_size());
    let mut rows = vec![vec![ring.zero(); targets.len()]; n + 1];
    for (k, y) in targets.iter().enumerate() {
        for (x, v) in family.iter().zip(values) {
            let j = (x & y).count_ones() as usize;
            rows[j][k] = ring.add(&rows[j][k], v);
        }
    }
    IntersectionTable {
        targets: targets.clone(),
        rows,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    /// Sum over members containing the argument.
    Up,
    /// Sum over members contained in the argument.
    Down,
}

/// Superset or subset sums of `f` evaluated at each member of `targets`.
pub fn brute_zeta<R: Ring>(
    kind: ZetaKind,
    family: &SetFamily,
    values: &[R::Elem],
    targets: &SetFamily,
    ring: &R,
) -> Vec<R::Elem> {
    targets
        .iter()
        .map(|y| {
            let mut acc = ring.zero();
            for (x, v) in family.iter().zip(values) {
                let hit = match kind {
                    ZetaKind::Up => y & !x == 0,
                    ZetaKind::Down => x & !y == 0,
                };
                if hit {
                    acc = ring.add(&acc, v);
                }
            }
            acc
        })
        .collect()
}

fn dfs(
    d: &WeightedDigraph,
    cur: usize,
    t: usize,
    left: usize,
    weight: usize,
    visited: &mut Vec<bool>,
    acc: &mut WeightPolynomial,
) {
    if left == 0 {
        if cur == t {
            acc.add_assign(&WeightPolynomial::monomial(weight));
        }
        return;
    }
    for e in d.edges() {
        if e.tail != cur || visited[e.head] {
            continue;
        }
        visited[e.head] = true;
        dfs(d, e.head, t, left - 1, weight + e.weight as usize, visited, acc);
        visited[e.head] = false;
    }
}

/// Enumerates every simple walk from `s` with `len` arcs by depth-first
/// search and accumulates `z^weight` for those ending at `t`.
pub fn brute_count_paths(d: &WeightedDigraph, s: usize, t: usize, len: usize) -> WeightPolynomial {
    let mut visited = vec![false; d.vertex_count()];
    visited[s] = true;
    let mut acc = WeightPolynomial::zero();
    dfs(d, s, t, len, 0, &mut visited, &mut acc);
    acc
}

/// Counts directed cycles with `len` arcs by enumerating closed simple walks
/// from every start vertex; each cycle appears once per rotation, so the
/// total is divided by `len`.
pub fn brute_count_cycles(d: &WeightedDigraph, len: usize) -> WeightPolynomial {
    assert!(len >= 1);
    let mut closed = WeightPolynomial::zero();
    for v in 0..d.vertex_count() {
        for e in d.edges().iter().filter(|e| e.head == v) {
            // Walks v -> e.tail of len - 1 arcs, closed by e.
            if len == 1 {
                if e.tail == v {
                    closed.add_assign(&WeightPolynomial::monomial(e.weight as usize));
                }
                continue;
            }
            if e.tail == v {
                continue;
            }
            let open = brute_count_paths(d, v, e.tail, len - 1);
            closed.add_assign(&open.mul(&WeightPolynomial::monomial(e.weight as usize)));
        }
    }
    closed
        .exact_div(len as i64)
        .expect("closed walks come in full rotation classes")
}
