//! The fast intersection transform.
//!
//! For `f` on a family `F` and targets `G`, computes
//! `x_j(Y) = sum of f(X) over X in F with |X ∩ Y| = j` for every `Y` in `G`
//! and `j = 0..=n`, in three stages:
//!
//! 1. superset sums `g` of `f` on the down-closure of `F`;
//! 2. for each rank `i`, subset sums `y_i` on `G` of the rank-`i` part of `g`,
//!    which gives `y_i(Y) = sum_j C(j, i) x_j(Y)`;
//! 3. `x(Y) = B y(Y)` with `B` the inverse of the binomial matrix.
//!
//! Everything runs through [`Builder`], so the same code emits a circuit or
//! evaluates directly.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::circuit::{add_opt, Builder, Circuit, CircuitBuilder, DirectEval};
use crate::error::{Error, Result};
use crate::lattice::{down_closure, format_set, rank, SetFamily, SubsetMask};
use crate::ring::{BigIntRing, Ring};
use crate::zeta::{down_sweep, up_zeta_on_downclosure, IndexedFunction};

/// Mutually inverse integer matrices `a[i][j] = C(j, i)` and
/// `b[i][j] = (-1)^(i+j) C(j, i)`, for `i, j = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalPair {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
}

pub const MAX_PASCAL: usize = 64;

/// `C(n, k)` for `0 <= k <= n <= 64` fits in an `i64`.
fn binomial_rows(n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let mut row = vec![0i64; p + 1];
        row[0] = 1;
        row[p] = 1;
        for q in 1..p {
            row[q] = rows[p - 1][q - 1] + rows[p - 1][q];
        }
        rows.push(row);
    }
    rows
}

pub fn pascal_matrices(n: usize) -> Result<PascalPair> {
    if n > MAX_PASCAL {
        return Err(Error::arg(format!("Pascal matrices limited to n <= {MAX_PASCAL}")));
    }
    let c = binomial_rows(n);
    let binom = |p: usize, q: usize| if q <= p { c[p][q] } else { 0 };
    let a: Vec<Vec<i64>> = (0..=n)
        .map(|i| (0..=n).map(|j| binom(j, i)).collect())
        .collect();
    let b = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| if (i + j) % 2 == 0 { binom(j, i) } else { -binom(j, i) })
                .collect()
        })
        .collect();
    let pair = PascalPair { a, b };
    debug_assert!(pair.is_inverse_pair());
    Ok(pair)
}

impl PascalPair {
    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// Checks `A B = B A = I` in exact arithmetic.
    pub fn is_inverse_pair(&self) -> bool {
        let is_identity = |x: &[Vec<i64>], y: &[Vec<i64>]| {
            let d = x.len();
            (0..d).all(|i| {
                (0..d).all(|j| {
                    let s: BigInt = (0..d)
                        .map(|k| BigInt::from(x[i][k]) * BigInt::from(y[k][j]))
                        .sum();
                    if i == j {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
            })
        };
        is_identity(&self.a, &self.b) && is_identity(&self.b, &self.a)
    }
}

/// Values indexed by `(j, Y)` for `j = 0..=n` and `Y` in the target family.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionTable<T> {
    pub targets: SetFamily,
    /// `rows[j][k]` belongs to the `k`-th target in ascending mask order.
    pub rows: Vec<Vec<T>>,
}

impl<T> IntersectionTable<T> {
    pub fn get(&self, j: usize, y: SubsetMask) -> Option<&T> {
        let k = self.targets.position(y)?;
        self.rows.get(j).map(|row| &row[k])
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> IntersectionTable<U> {
        IntersectionTable {
            targets: self.targets.clone(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(&mut f).collect())
                .collect(),
        }
    }
}

impl<T: fmt::Display> IntersectionTable<T> {
    /// Tab-separated `j`, `set`, `value` with a header line, rows ordered by
    /// `j` and then by mask.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("j\tset\tvalue\n");
        for (j, row) in self.rows.iter().enumerate() {
            for (y, v) in self.targets.iter().zip(row) {
                let _ = writeln!(out, "{j}\t{}\t{v}", format_set(y));
            }
        }
        out
    }
}

fn same_ground(f: &SetFamily, g: &SetFamily) -> Result<()> {
    if f.ground_size() != g.ground_size() {
        return Err(Error::arg(format!(
            "input family has ground size {} but target family has {}",
            f.ground_size(),
            g.ground_size()
        )));
    }
    Ok(())
}

/// Stages 1 and 2: `y[i][k] = sum over X in F of C(|X ∩ Y_k|, i) f(X)` for
/// `i = 0..=r`, where `r` is the smaller of the largest ranks in `F` and `G`
/// (all higher ranks vanish). Empty when either family is empty.
pub fn ranked_subset_sums<B: Builder>(
    b: &mut B,
    f: &IndexedFunction<B::Wire>,
    targets: &SetFamily,
) -> Result<Vec<Vec<Option<B::Wire>>>> {
    same_ground(&f.domain, targets)?;
    let (Some(rf), Some(rg)) = (f.domain.max_rank(), targets.max_rank()) else {
        return Ok(Vec::new());
    };
    let top = rf.min(rg);

    let g = up_zeta_on_downclosure(b, f);
    let closed = down_closure(targets);
    let target_pos: Vec<usize> = targets
        .iter()
        .map(|m| closed.position(m).unwrap())
        .collect();

    let mut y = Vec::with_capacity(top + 1);
    for i in 0..=top {
        // The rank split is a relabeling: rank-i values of g seed the sweep.
        let mut vals: Vec<Option<B::Wire>> = closed
            .iter()
            .map(|m| if rank(m) == i { g.get(m).cloned() } else { None })
            .collect();
        down_sweep(b, &closed, &mut vals, Some(i));
        y.push(target_pos.iter().map(|&p| vals[p].clone()).collect());
    }
    Ok(y)
}

/// Stage 3 for one target: `x_j = sum_i b[j][i] y_i` for each requested `j`.
/// Zero entries of `B` and absent `y_i` emit nothing; rows past `y.len()`
/// are zero.
pub fn recover_from_ranked<B: Builder>(
    b: &mut B,
    pascal: &PascalPair,
    y: &[Option<B::Wire>],
    rows: &[usize],
) -> Vec<Option<B::Wire>> {
    rows.iter()
        .map(|&j| {
            let mut acc = None;
            for (i, yi) in y.iter().enumerate().skip(j) {
                let coef = pascal.b[j][i];
                if coef == 0 {
                    continue;
                }
                if let Some(w) = yi {
                    let term = b.scale(coef, w);
                    add_opt(b, &mut acc, &term);
                }
            }
            acc
        })
        .collect()
}

/// The requested rows of the intersection transform, `out[r][k]` being row
/// `rows[r]` at the `k`-th target. `None` marks a structural zero.
pub fn intersection_rows<B: Builder>(
    b: &mut B,
    f: &IndexedFunction<B::Wire>,
    targets: &SetFamily,
    rows: &[usize],
) -> Result<Vec<Vec<Option<B::Wire>>>> {
    let n = f.domain.ground_size();
    if let Some(&bad) = rows.iter().find(|&&j| j > n) {
        return Err(Error::arg(format!("row {bad} exceeds ground size {n}")));
    }
    let y = ranked_subset_sums(b, f, targets)?;
    let mut out = vec![Vec::with_capacity(targets.len()); rows.len()];
    if y.is_empty() {
        for row in &mut out {
            row.resize(targets.len(), None);
        }
        return Ok(out);
    }
    let pascal = pascal_matrices(y.len() - 1)?;
    let mut column = Vec::with_capacity(y.len());
    for k in 0..targets.len() {
        column.clear();
        column.extend(y.iter().map(|yi| yi[k].clone()));
        let x = recover_from_ranked(b, &pascal, &column, rows);
        for (row, v) in out.iter_mut().zip(x) {
            row.push(v);
        }
    }
    Ok(out)
}

/// Label of the output gate for `(j, Y)`.
pub fn output_label(j: usize, y: SubsetMask) -> String {
    format!("{j}:{y}")
}

/// Builds a circuit with one input per member of `F` (in the family's
/// order) and one output per `(j, Y)`, `j = 0..=n`, `Y` in `G`, registered
/// in `(j, mask)` order. Identically zero outputs share a `CONST 0` gate.
pub fn build_intersection_circuit(
    family: &SetFamily,
    targets: &SetFamily,
) -> Result<(Circuit, IntersectionTable<String>)> {
    same_ground(family, targets)?;
    let n = family.ground_size();
    let mut b = CircuitBuilder::new();
    let inputs: Vec<_> = (0..family.len()).map(|_| b.input()).collect();
    let f = IndexedFunction::new(family.clone(), inputs)?;
    let rows: Vec<usize> = (0..=n).collect();
    let x = intersection_rows(&mut b, &f, targets, &rows)?;

    let mut labels = Vec::with_capacity(n + 1);
    for (j, row) in x.iter().enumerate() {
        let mut row_labels = Vec::with_capacity(targets.len());
        for (y, w) in targets.iter().zip(row) {
            let id = match w {
                Some(id) => *id,
                None => b.constant(0),
            };
            let label = output_label(j, y);
            b.output(label.clone(), id);
            row_labels.push(label);
        }
        labels.push(row_labels);
    }
    Ok((
        b.finish(),
        IntersectionTable {
            targets: targets.clone(),
            rows: labels,
        },
    ))
}

/// Evaluates the transform directly in `ring`; `values` align with `family`.
pub fn intersection_transform<R: Ring>(
    family: &SetFamily,
    values: &[R::Elem],
    targets: &SetFamily,
    ring: &R,
) -> Result<IntersectionTable<R::Elem>> {
    same_ground(family, targets)?;
    let n = family.ground_size();
    let f = IndexedFunction::new(family.clone(), values.to_vec())?;
    let mut b = DirectEval::new(ring);
    let rows: Vec<usize> = (0..=n).collect();
    let x = intersection_rows(&mut b, &f, targets, &rows)?;
    Ok(IntersectionTable {
        targets: targets.clone(),
        rows: x
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.unwrap_or_else(|| ring.zero())).collect())
            .collect(),
    })
}

fn count_row(family: &SetFamily, targets: &SetFamily, j: usize) -> Result<Vec<u64>> {
    same_ground(family, targets)?;
    let ones = vec![BigInt::one(); family.len()];
    let f = IndexedFunction::new(family.clone(), ones)?;
    let mut b = DirectEval::new(&BigIntRing);
    let mut x = intersection_rows(&mut b, &f, targets, &[j])?;
    Ok(x.pop()
        .unwrap()
        .into_iter()
        .map(|v| v.map_or(0, |c| c.to_u64().expect("counts are nonnegative")))
        .collect())
}

/// For each `Y` in `G`, the number of members of `F` disjoint from `Y`.
pub fn count_disjoint(
    family: &SetFamily,
    targets: &SetFamily,
) -> Result<BTreeMap<SubsetMask, u64>> {
    let counts = count_row(family, targets, 0)?;
    Ok(targets.iter().zip(counts).collect())
}

/// For each `Y` in `G`, the number of members of `F` contained in `Y`,
/// via disjointness from the complement of `Y`.
pub fn count_subsets_of(
    family: &SetFamily,
    targets: &SetFamily,
) -> Result<BTreeMap<SubsetMask, u64>> {
    same_ground(family, targets)?;
    let full = crate::lattice::full_mask(targets.ground_size());
    let complements = targets.complement();
    let counts = count_row(family, &complements, 0)?;
    Ok(complements
        .iter()
        .zip(counts)
        .map(|(c, k)| (full & !c, k))
        .collect())
}
