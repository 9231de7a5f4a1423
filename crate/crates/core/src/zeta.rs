//! Trimmed zeta transforms on the subset lattice.
//!
//! For `f` supported on a family `F`, the up-zeta transform sums `f` over
//! supersets and the down-zeta transform sums `f` over subsets. Both are
//! computed by Yates-style sweeps, one ground element at a time, over a
//! closed family instead of all of `2^U`: superset sums only need the
//! down-closure of `F`, subset sums only need the down-closure of the targets.

use crate::circuit::{add_opt, Builder};
use crate::error::{Error, Result};
use crate::lattice::{down_closure, rank, SetFamily};

/// A function on a set family, implicitly zero off its domain. `None`
/// entries are structural zeros that emit no gates.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedFunction<W> {
    pub domain: SetFamily,
    pub values: Vec<Option<W>>,
}

impl<W: Clone> IndexedFunction<W> {
    pub fn new(domain: SetFamily, values: Vec<W>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::arg(format!(
                "{} values for a domain of {} sets",
                values.len(),
                domain.len()
            )));
        }
        Ok(IndexedFunction {
            domain,
            values: values.into_iter().map(Some).collect(),
        })
    }

    pub fn get(&self, mask: u32) -> Option<&W> {
        self.domain
            .position(mask)
            .and_then(|i| self.values[i].as_ref())
    }

    /// Restriction to another family, reading zero where `f` is undefined.
    pub fn restrict_to(&self, targets: &SetFamily) -> IndexedFunction<W> {
        IndexedFunction {
            domain: targets.clone(),
            values: targets.iter().map(|m| self.get(m).cloned()).collect(),
        }
    }

    /// The same values on the complemented sets `U \ X`.
    pub fn complemented(&self) -> IndexedFunction<W> {
        let domain = self.domain.complement();
        let full = crate::lattice::full_mask(domain.ground_size());
        let values = domain.iter().map(|m| self.get(full & !m).cloned()).collect();
        IndexedFunction { domain, values }
    }
}

/// Which of the four trimmed zeta constructions to run. The names give the
/// transform and the family whose size bounds the work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaVariant {
    /// Superset sums on `G`, work `|F| + |up(G)|`.
    UpViaUpClosure,
    /// Superset sums on `G`, work `|down(F)| + |G|`.
    UpViaDownClosure,
    /// Subset sums on `G`, work `|F| + |down(G)|`.
    DownViaDownClosure,
    /// Subset sums on `G`, work `|up(F)| + |G|`.
    DownViaUpClosure,
}

fn same_ground(a: &SetFamily, b: &SetFamily) -> Result<()> {
    if a.ground_size() != b.ground_size() {
        return Err(Error::arg(format!(
            "ground set sizes differ: {} vs {}",
            a.ground_size(),
            b.ground_size()
        )));
    }
    Ok(())
}

/// Superset sums of `f` at every member of the down-closure of its domain.
///
/// Sweeps `g(Y) += g(Y + i)` for `i = 0..n`; a superset absent from the
/// closure contributes zero. Emits at most `n * |down(F)|` additions.
pub fn up_zeta_on_downclosure<B: Builder>(
    b: &mut B,
    f: &IndexedFunction<B::Wire>,
) -> IndexedFunction<B::Wire> {
    let closed = down_closure(&f.domain);
    let mut vals = f.restrict_to(&closed).values;
    up_sweep(b, &closed, &mut vals);
    IndexedFunction {
        domain: closed,
        values: vals,
    }
}

/// Subset sums of `f` at every member of `targets`.
///
/// `f` is first restricted to the down-closure of the targets; then
/// `h(Y) += h(Y - i)` sweeps over that closure. Emits at most
/// `n * |down(G)|` additions.
pub fn down_zeta_on_targets<B: Builder>(
    b: &mut B,
    f: &IndexedFunction<B::Wire>,
    targets: &SetFamily,
) -> Result<IndexedFunction<B::Wire>> {
    same_ground(&f.domain, targets)?;
    let closed = down_closure(targets);
    let mut vals = f.restrict_to(&closed).values;
    down_sweep(b, &closed, &mut vals, None);
    Ok(IndexedFunction {
        values: targets
            .iter()
            .map(|m| vals[closed.position(m).unwrap()].clone())
            .collect(),
        domain: targets.clone(),
    })
}

/// The complement-dual constructions: superset sums on `G` bounded by
/// `|down(F)|` (`up == true`), or subset sums on `G` bounded by `|up(F)|`
/// (`up == false`).
///
/// Complementing every set swaps inclusion and exchanges down- and
/// up-closures, so the second reduces to the first on complemented inputs.
pub fn zeta_by_complement<B: Builder>(
    b: &mut B,
    up: bool,
    f: &IndexedFunction<B::Wire>,
    targets: &SetFamily,
) -> Result<IndexedFunction<B::Wire>> {
    same_ground(&f.domain, targets)?;
    if up {
        let g = up_zeta_on_downclosure(b, f);
        Ok(g.restrict_to(targets))
    } else {
        let g = up_zeta_on_downclosure(b, &f.complemented());
        let read = g.restrict_to(&targets.complement());
        Ok(read.complemented().restrict_to(targets))
    }
}

/// Dispatches to the requested trimmed construction.
pub fn zeta_on_targets<B: Builder>(
    b: &mut B,
    variant: ZetaVariant,
    f: &IndexedFunction<B::Wire>,
    targets: &SetFamily,
) -> Result<IndexedFunction<B::Wire>> {
    match variant {
        ZetaVariant::UpViaUpClosure => {
            same_ground(&f.domain, targets)?;
            let h = down_zeta_on_targets(b, &f.complemented(), &targets.complement())?;
            Ok(h.complemented().restrict_to(targets))
        }
        ZetaVariant::UpViaDownClosure => zeta_by_complement(b, true, f, targets),
        ZetaVariant::DownViaDownClosure => down_zeta_on_targets(b, f, targets),
        ZetaVariant::DownViaUpClosure => zeta_by_complement(b, false, f, targets),
    }
}

/// In-place superset sweep over a down-closed family.
pub(crate) fn up_sweep<B: Builder>(b: &mut B, closed: &SetFamily, vals: &mut [Option<B::Wire>]) {
    let masks = closed.masks();
    for e in 0..closed.ground_size() {
        let bit = 1u32 << e;
        for (idx, &y) in masks.iter().enumerate() {
            if y & bit != 0 {
                continue;
            }
            let Some(j) = closed.position(y | bit) else {
                continue;
            };
            // y | bit sorts after y.
            let (lo, hi) = vals.split_at_mut(j);
            if let Some(w) = &hi[0] {
                add_opt(b, &mut lo[idx], w);
            }
        }
    }
}

/// In-place subset sweep over a down-closed family. With `skip_rank_le =
/// Some(r)` the input must vanish below rank `r`, and sets of rank at most
/// `r` are left untouched since they can only receive zeros.
pub(crate) fn down_sweep<B: Builder>(
    b: &mut B,
    closed: &SetFamily,
    vals: &mut [Option<B::Wire>],
    skip_rank_le: Option<usize>,
) {
    let masks = closed.masks();
    for e in 0..closed.ground_size() {
        let bit = 1u32 << e;
        for (idx, &y) in masks.iter().enumerate() {
            if y & bit == 0 || skip_rank_le.is_some_and(|r| rank(y) <= r) {
                continue;
            }
            let j = closed
                .position(y & !bit)
                .expect("family is down-closed");
            let (lo, hi) = vals.split_at_mut(idx);
            if let Some(w) = &lo[j] {
                add_opt(b, &mut hi[0], w);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::DirectEval;
    use crate::lattice::mask_of;
    use crate::ring::BigIntRing;
    use num_bigint::BigInt;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| mask_of(s)).collect()).unwrap()
    }

    fn func(domain: SetFamily, vals: &[i64]) -> IndexedFunction<BigInt> {
        IndexedFunction::new(domain, vals.iter().map(|&v| BigInt::from(v)).collect()).unwrap()
    }

    fn ints(f: &IndexedFunction<BigInt>) -> Vec<i64> {
        f.values
            .iter()
            .map(|v| v.as_ref().map_or(0, |x| i64::try_from(x).unwrap()))
            .collect()
    }

    #[test]
    fn up_zeta_examples() {
        let mut b = DirectEval::new(&BigIntRing);
        let g = up_zeta_on_downclosure(&mut b, &func(fam(2, &[&[0, 1]]), &[5]));
        assert_eq!(g.domain.len(), 4);
        assert_eq!(ints(&g), vec![5, 5, 5, 5]);

        let g = up_zeta_on_downclosure(&mut b, &func(fam(2, &[&[0], &[1]]), &[1, 1]));
        // domain order: {}, {0}, {1}
        assert_eq!(ints(&g), vec![2, 1, 1]);

        let g = up_zeta_on_downclosure(&mut b, &func(SetFamily::empty(3).unwrap(), &[]));
        assert!(g.domain.is_empty());
    }

    #[test]
    fn down_zeta_examples() {
        let mut b = DirectEval::new(&BigIntRing);
        let h = down_zeta_on_targets(
            &mut b,
            &func(fam(2, &[&[0], &[1]]), &[1, 1]),
            &fam(2, &[&[0, 1]]),
        )
        .unwrap();
        assert_eq!(ints(&h), vec![2]);

        let h = down_zeta_on_targets(&mut b, &func(fam(2, &[&[0, 1]]), &[1]), &fam(2, &[&[0]]))
            .unwrap();
        assert_eq!(ints(&h), vec![0]);

        let h = down_zeta_on_targets(
            &mut b,
            &func(fam(2, &[&[], &[0], &[0, 1]]), &[1, 1, 1]),
            &fam(2, &[&[0], &[0, 1]]),
        )
        .unwrap();
        assert_eq!(ints(&h), vec![2, 3]);
    }

    #[test]
    fn complement_examples() {
        let mut b = DirectEval::new(&BigIntRing);
        let h = zeta_by_complement(&mut b, false, &func(fam(2, &[&[0]]), &[1]), &fam(2, &[&[0, 1]]))
            .unwrap();
        assert_eq!(ints(&h), vec![1]);
        let h = zeta_by_complement(&mut b, true, &func(fam(2, &[&[0, 1]]), &[1]), &fam(2, &[&[0]]))
            .unwrap();
        assert_eq!(ints(&h), vec![1]);
    }

    #[test]
    fn mismatched_ground_sets() {
        let mut b = DirectEval::new(&BigIntRing);
        let r = down_zeta_on_targets(&mut b, &func(fam(2, &[&[0]]), &[1]), &fam(3, &[&[0]]));
        assert!(matches!(r, Err(Error::Argument(_))));
    }

    #[test]
    fn value_count_must_match_domain() {
        assert!(IndexedFunction::new(fam(2, &[&[0]]), vec![1, 2]).is_err());
    }
}
