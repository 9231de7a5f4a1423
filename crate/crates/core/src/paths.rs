//! Counting simple paths and cycles of a given length by weight.
//!
//! A simple walk of length `l` from `s` to `t` splits uniquely into a prefix
//! of length `floor(l/2)` ending at some vertex `a` and a suffix of length
//! `ceil(l/2)` starting at `a`, whose supports meet exactly in `{a}`. Both
//! halves come from a support-indexed walk DP that only touches sets of
//! about `l/2` vertices; the halves are glued through the `j = 1` slice of
//! the intersection transform.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::DirectEval;
use crate::error::{Error, Result};
use crate::itrans::intersection_rows;
use crate::lattice::{full_mask, rank, SetFamily, SubsetMask, MAX_GROUND};
use crate::ring::{PolyRing, WeightPolynomial};
use crate::zeta::IndexedFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub weight: u32,
}

/// A digraph on vertices `0..n` with nonnegative integer edge weights.
/// Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedDigraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::Capacity(n));
        }
        if let Some(e) = edges.iter().find(|e| e.tail >= n || e.head >= n) {
            return Err(Error::arg(format!(
                "edge {} -> {} leaves the vertex range 0..{n}",
                e.tail, e.head
            )));
        }
        Ok(WeightedDigraph { n, edges })
    }

    /// All `n(n-1)` non-loop arcs with a common weight.
    pub fn complete(n: usize, weight: u32) -> Result<Self> {
        let edges = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .map(|(tail, head)| Edge { tail, head, weight })
            .collect();
        Self::new(n, edges)
    }

    /// Each non-loop arc present independently with probability `density`,
    /// weights uniform in `0..=max_weight`. Deterministic in `seed`.
    pub fn random(n: usize, density: f64, max_weight: u32, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for tail in 0..n {
            for head in 0..n {
                if tail != head && rng.gen_bool(density) {
                    edges.push(Edge {
                        tail,
                        head,
                        weight: rng.gen_range(0..=max_weight),
                    });
                }
            }
        }
        Self::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The largest edge weight `B`.
    pub fn weight_bound(&self) -> u32 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    pub fn reversed(&self) -> WeightedDigraph {
        WeightedDigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    tail: e.head,
                    head: e.tail,
                    weight: e.weight,
                })
                .collect(),
        }
    }

    /// The subgraph induced by `keep`, relabeled to `0..|keep|` in increasing
    /// order. Returns the old label of each new vertex.
    pub fn induced(&self, keep: SubsetMask) -> (WeightedDigraph, Vec<usize>) {
        let old: Vec<usize> = (0..self.n).filter(|&v| keep >> v & 1 == 1).collect();
        let mut new = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| new[e.tail] != usize::MAX && new[e.head] != usize::MAX)
            .map(|e| Edge {
                tail: new[e.tail],
                head: new[e.head],
                weight: e.weight,
            })
            .collect();
        (
            WeightedDigraph {
                n: old.len(),
                edges,
            },
            old,
        )
    }

    /// Parses `n m` followed by `m` lines of `tail head weight`. Blank lines
    /// and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let nums = parse_fields(hline, header, 2)?;
        let (n, m) = (nums[0] as usize, nums[1] as usize);
        if n > MAX_GROUND {
            return Err(Error::parse(hline, format!("{n} vertices exceed the capacity of 32")));
        }
        let mut edges = Vec::with_capacity(m);
        let mut last = hline;
        for (lineno, line) in lines {
            last = lineno;
            if edges.len() == m {
                return Err(Error::parse(lineno, format!("more than the declared {m} edges")));
            }
            let f = parse_fields(lineno, line, 3)?;
            let (tail, head) = (f[0] as usize, f[1] as usize);
            if tail >= n || head >= n {
                return Err(Error::parse(lineno, format!("vertex out of range 0..{n}")));
            }
            let weight = u32::try_from(f[2])
                .map_err(|_| Error::parse(lineno, "weight does not fit in 32 bits"))?;
            edges.push(Edge { tail, head, weight });
        }
        if edges.len() != m {
            return Err(Error::parse(
                last,
                format!("expected {m} edges, found {}", edges.len()),
            ));
        }
        Self::new(n, edges)
    }
}

fn parse_fields(lineno: usize, line: &str, count: usize) -> Result<Vec<u64>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != count {
        return Err(Error::parse(
            lineno,
            format!("expected {count} fields, found {}", fields.len()),
        ));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("`{f}` is not a nonnegative integer")))
        })
        .collect()
}

impl fmt::Display for WeightedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.tail, e.head, e.weight)?;
        }
        Ok(())
    }
}

/// For every ordered pair `(a, t)`, the sum of `z^w(e)` over the arcs
/// `a -> t`.
#[derive(Debug, Clone)]
pub struct EdgePolyTable {
    n: usize,
    polys: Vec<Option<WeightPolynomial>>,
    succ: Vec<Vec<usize>>,
}

impl EdgePolyTable {
    pub fn new(d: &WeightedDigraph) -> Self {
        let n = d.n;
        let mut polys: Vec<Option<WeightPolynomial>> = vec![None; n * n];
        for e in &d.edges {
            polys[e.tail * n + e.head]
                .get_or_insert_with(WeightPolynomial::zero)
                .add_assign(&WeightPolynomial::monomial(e.weight as usize));
        }
        let succ = (0..n)
            .map(|a| (0..n).filter(|&t| polys[a * n + t].is_some()).collect())
            .collect();
        EdgePolyTable { n, polys, succ }
    }

    pub fn get(&self, a: usize, t: usize) -> Option<&WeightPolynomial> {
        self.polys[a * self.n + t].as_ref()
    }

    pub fn successors(&self, a: usize) -> &[usize] {
        &self.succ[a]
    }
}

/// `f_{s,a}(S)`: the weight polynomial of simple walks from a fixed source
/// `s` to `a` whose vertex set is exactly `S`. Only reachable states are
/// stored.
#[derive(Debug, Clone)]
pub struct SupportDPTable {
    n: usize,
    source: usize,
    /// `layers[k]` maps each support of size `k` to per-endpoint values.
    layers: Vec<HashMap<SubsetMask, Vec<Option<WeightPolynomial>>>>,
}

impl SupportDPTable {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn max_support(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn get(&self, support: SubsetMask, end: usize) -> Option<&WeightPolynomial> {
        self.layers
            .get(rank(support))?
            .get(&support)?
            .get(end)?
            .as_ref()
    }

    /// All stored `(S, a, f_{s,a}(S))` with `|S| = k`, sorted by `(S, a)`.
    pub fn entries(&self, k: usize) -> Vec<(SubsetMask, usize, &WeightPolynomial)> {
        let mut out: Vec<_> = self
            .layers
            .get(k)
            .into_iter()
            .flatten()
            .flat_map(|(&m, ends)| {
                ends.iter()
                    .enumerate()
                    .filter_map(move |(a, p)| p.as_ref().map(|p| (m, a, p)))
            })
            .collect();
        out.sort_by_key(|&(m, a, _)| (m, a));
        out
    }

    /// Number of stored nonzero states.
    pub fn state_count(&self) -> usize {
        self.layers
            .iter()
            .flat_map(|l| l.values())
            .map(|ends| ends.iter().flatten().count())
            .sum()
    }
}

/// Fills `f_{s,a}(S)` for all supports `S` of size at most `kmax`, in
/// increasing size, from `f_{s,s}({s}) = 1` and
/// `f_{s,t}(S) = sum over a in S - t of f_{s,a}(S - t) * E(a, t)`.
pub fn support_walk_dp(d: &WeightedDigraph, s: usize, kmax: usize) -> Result<SupportDPTable> {
    let n = d.n;
    if s >= n {
        return Err(Error::arg(format!("source {s} out of range 0..{n}")));
    }
    if kmax == 0 || kmax > n {
        return Err(Error::arg(format!("support bound {kmax} outside 1..={n}")));
    }
    let edges = EdgePolyTable::new(d);
    let mut layers: Vec<HashMap<SubsetMask, Vec<Option<WeightPolynomial>>>> =
        vec![HashMap::new(); kmax + 1];
    let mut base = vec![None; n];
    base[s] = Some(WeightPolynomial::constant(1));
    layers[1].insert(1 << s, base);

    for k in 1..kmax {
        let (done, rest) = layers.split_at_mut(k + 1);
        let (cur, next) = (&done[k], &mut rest[0]);
        for (&support, ends) in cur {
            for (a, p) in ends.iter().enumerate() {
                let Some(p) = p else { continue };
                for &t in edges.successors(a) {
                    if support >> t & 1 == 1 {
                        continue;
                    }
                    let term = p.mul(edges.get(a, t).unwrap());
                    let slot = &mut next
                        .entry(support | 1 << t)
                        .or_insert_with(|| vec![None; n])[t];
                    match slot {
                        Some(acc) => acc.add_assign(&term),
                        None => *slot = Some(term),
                    }
                }
            }
        }
    }
    Ok(SupportDPTable {
        n,
        source: s,
        layers,
    })
}

fn check_query(d: &WeightedDigraph, s: usize, t: usize, len: usize) -> Result<()> {
    let n = d.n;
    if s >= n || t >= n {
        return Err(Error::arg(format!("endpoints ({s}, {t}) out of range 0..{n}")));
    }
    if len >= n {
        return Err(Error::arg(format!("length {len} outside 0..={}", n.saturating_sub(1))));
    }
    Ok(())
}

/// How the two halves are matched up at their shared vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gluing {
    /// The `j = 1` slice of the intersection transform.
    Transform,
    /// Direct enumeration of pairs with `|S ∩ T| = 1`.
    Pairwise,
}

/// Family and values of one endpoint's nonzero states in a layer, sorted.
fn endpoint_function(
    table: &SupportDPTable,
    k: usize,
    a: usize,
) -> Option<IndexedFunction<WeightPolynomial>> {
    let mut pairs: Vec<(SubsetMask, WeightPolynomial)> = table
        .layers
        .get(k)?
        .iter()
        .filter_map(|(&m, ends)| ends[a].clone().map(|p| (m, p)))
        .collect();
    if pairs.is_empty() {
        return None;
    }
    pairs.sort_by_key(|(m, _)| *m);
    let (masks, vals): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let domain = SetFamily::new(table.n, masks).expect("supports fit the ground set");
    Some(IndexedFunction::new(domain, vals).expect("aligned"))
}

/// `sum over a, S of p_{s,a}(S) * r_{a,t}(S)` with `p` from the forward table
/// on supports of size `ks` and `r` the `j = 1` transform of `q_{a,t}` on
/// supports of size `kt`.
fn glue(
    forward: &SupportDPTable,
    backward: &SupportDPTable,
    ks: usize,
    kt: usize,
    how: Gluing,
) -> WeightPolynomial {
    let mut total = WeightPolynomial::zero();
    let mut eval = DirectEval::new(&PolyRing);
    for a in 0..forward.n {
        let Some(p) = endpoint_function(forward, ks, a) else {
            continue;
        };
        let Some(q) = endpoint_function(backward, kt, a) else {
            continue;
        };
        let r: Vec<Option<WeightPolynomial>> = match how {
            Gluing::Transform => intersection_rows(&mut eval, &q, &p.domain, &[1])
                .expect("families share the vertex set")
                .pop()
                .unwrap(),
            Gluing::Pairwise => p
                .domain
                .iter()
                .map(|s| {
                    let mut acc: Option<WeightPolynomial> = None;
                    for (t, v) in q.domain.iter().zip(&q.values) {
                        if (s & t).count_ones() == 1 {
                            let v = v.as_ref().unwrap();
                            match &mut acc {
                                Some(x) => x.add_assign(v),
                                None => acc = Some(v.clone()),
                            }
                        }
                    }
                    acc
                })
                .collect(),
        };
        for (pv, rv) in p.values.iter().zip(&r) {
            if let (Some(pv), Some(rv)) = (pv, rv) {
                total.add_assign(&pv.mul(rv));
            }
        }
    }
    total
}

fn half_sizes(len: usize) -> (usize, usize) {
    (len / 2 + 1, len.div_ceil(2) + 1)
}

/// Generating polynomial `g_{s,t}(l)`: the coefficient of `z^w` is the
/// number of simple paths from `s` to `t` with `l` edges and total weight
/// `w`.
pub fn count_paths_by_weight(
    d: &WeightedDigraph,
    s: usize,
    t: usize,
    len: usize,
) -> Result<WeightPolynomial> {
    count_paths_with(d, s, t, len, Gluing::Transform)
}

pub fn count_paths_with(
    d: &WeightedDigraph,
    s: usize,
    t: usize,
    len: usize,
    how: Gluing,
) -> Result<WeightPolynomial> {
    check_query(d, s, t, len)?;
    if len == 0 {
        return Ok(if s == t {
            WeightPolynomial::constant(1)
        } else {
            WeightPolynomial::zero()
        });
    }
    let (ks, kt) = half_sizes(len);
    let forward = support_walk_dp(d, s, ks)?;
    let backward = support_walk_dp(&d.reversed(), t, kt)?;
    Ok(glue(&forward, &backward, ks, kt, how))
}

/// The same count from a single walk DP run to full support size `l + 1`.
pub fn count_paths_full_dp(
    d: &WeightedDigraph,
    s: usize,
    t: usize,
    len: usize,
) -> Result<WeightPolynomial> {
    check_query(d, s, t, len)?;
    let table = support_walk_dp(d, s, len + 1)?;
    let mut total = WeightPolynomial::zero();
    for (_, a, p) in table.entries(len + 1) {
        if a == t {
            total.add_assign(p);
        }
    }
    Ok(total)
}

/// Directed cycles with `l` arcs by total weight, each counted once.
///
/// A cycle is charged to its smallest vertex `v`: count paths from `v` of
/// length `l - 1` inside the vertices `>= v`, then close them with an arc
/// back to `v`. Loops are the cycles of length 1.
pub fn count_cycles_by_weight(d: &WeightedDigraph, len: usize) -> Result<WeightPolynomial> {
    let n = d.n;
    if len == 0 || len > n {
        return Err(Error::arg(format!("cycle length {len} outside 1..={n}")));
    }
    let mut total = WeightPolynomial::zero();
    let plen = len - 1;
    let (ks, kt) = half_sizes(plen);
    for v in 0..n {
        let keep = full_mask(n) & !((1u32 << v) - 1);
        let (sub, _) = d.induced(keep);
        if plen >= sub.n {
            break;
        }
        let mut closing: Vec<Option<WeightPolynomial>> = vec![None; sub.n];
        for e in d.edges.iter().filter(|e| e.head == v && e.tail >= v) {
            closing[e.tail - v]
                .get_or_insert_with(WeightPolynomial::zero)
                .add_assign(&WeightPolynomial::monomial(e.weight as usize));
        }
        if closing.iter().all(Option::is_none) {
            continue;
        }
        // The anchor is vertex 0 of the induced subgraph.
        let forward = (plen > 0).then(|| support_walk_dp(&sub, 0, ks)).transpose()?;
        let reversed = sub.reversed();
        for (u, close) in closing.iter().enumerate() {
            let Some(close) = close else { continue };
            let paths = match &forward {
                None if u == 0 => WeightPolynomial::constant(1),
                None => continue,
                Some(fw) => {
                    let backward = support_walk_dp(&reversed, u, kt)?;
                    glue(fw, &backward, ks, kt, Gluing::Transform)
                }
            };
            total.add_assign(&paths.mul(close));
        }
    }
    Ok(total)
}

/// One simple path from `s` to `t` with `l` arcs and total weight `w`, or
/// `None` if there is none.
///
/// Fixes arcs greedily: from the current vertex, take the first arc whose
/// residual instance (current vertex deleted, remaining length and weight)
/// still has a nonzero count.
pub fn reconstruct_path(
    d: &WeightedDigraph,
    s: usize,
    t: usize,
    len: usize,
    weight: u64,
) -> Result<Option<Vec<usize>>> {
    check_query(d, s, t, len)?;
    let has = |p: &WeightPolynomial, w: u64| {
        usize::try_from(w).is_ok_and(|w| !num_traits::Zero::is_zero(&p.coeff(w)))
    };
    if !has(&count_paths_by_weight(d, s, t, len)?, weight) {
        return Ok(None);
    }
    let mut path = vec![s];
    let mut removed: SubsetMask = 0;
    let (mut cur, mut rem_len, mut rem_w) = (s, len, weight);
    while rem_len > 0 {
        removed |= 1 << cur;
        let (sub, old) = d.induced(full_mask(d.n) & !removed);
        let new_of = |v: usize| old.iter().position(|&o| o == v);
        let target = new_of(t).expect("target is never deleted before the end");
        let mut step = None;
        for e in d.edges.iter().filter(|e| e.tail == cur) {
            if removed >> e.head & 1 == 1 || u64::from(e.weight) > rem_w {
                continue;
            }
            let next = new_of(e.head).unwrap();
            if rem_len > sub.n {
                continue;
            }
            let residual = count_paths_by_weight(&sub, next, target, rem_len - 1)?;
            if has(&residual, rem_w - u64::from(e.weight)) {
                step = Some(*e);
                break;
            }
        }
        let e = step.expect("a positive count always admits an extending arc");
        path.push(e.head);
        cur = e.head;
        rem_len -= 1;
        rem_w -= u64::from(e.weight);
    }
    Ok(Some(path))
}
