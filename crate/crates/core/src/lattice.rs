//! Subsets of a small ground set, set families and their closures.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// A subset of the ground set `{0, .., n-1}` with bit `i` marking element `i`.
pub type SubsetMask = u32;

pub const MAX_GROUND: usize = 32;

pub fn full_mask(n: usize) -> SubsetMask {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn mask_of(elements: &[usize]) -> SubsetMask {
    elements.iter().fold(0, |m, &e| m | (1 << e))
}

pub fn elements(mut mask: SubsetMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let e = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(e)
        }
    })
}

pub fn rank(mask: SubsetMask) -> usize {
    mask.count_ones() as usize
}

/// Renders a set as space-joined indices inside brackets, e.g. `[0 2]`.
pub fn format_set(mask: SubsetMask) -> String {
    let parts: Vec<String> = elements(mask).map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

/// A deduplicated family of subsets of a fixed ground set, kept in ascending
/// mask order with a position index.
#[derive(Clone, Default)]
pub struct SetFamily {
    n: usize,
    masks: Vec<SubsetMask>,
    index: HashMap<SubsetMask, usize>,
}

impl SetFamily {
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Builds a family over `{0, .., n-1}`; duplicates are merged.
    pub fn new(n: usize, mut masks: Vec<SubsetMask>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::Capacity(n));
        }
        let full = full_mask(n);
        if let Some(bad) = masks.iter().find(|&&m| m & !full != 0) {
            return Err(Error::arg(format!(
                "set {} is not contained in a ground set of size {n}",
                format_set(*bad)
            )));
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(Self::from_sorted(n, masks))
    }

    fn from_sorted(n: usize, masks: Vec<SubsetMask>) -> Self {
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        SetFamily { n, masks, index }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[SubsetMask] {
        &self.masks
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.masks.iter().copied()
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        self.index.contains_key(&mask)
    }

    pub fn position(&self, mask: SubsetMask) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Largest cardinality among the members, `None` when empty.
    pub fn max_rank(&self) -> Option<usize> {
        self.masks.iter().map(|&m| rank(m)).max()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.masks.iter().all(|&m| other.contains(m))
    }

    /// The family of complements `U \ X`.
    pub fn complement(&self) -> SetFamily {
        let full = full_mask(self.n);
        let masks = self.masks.iter().map(|&m| full & !m).collect();
        Self::new(self.n, masks).expect("complements stay inside the ground set")
    }

    /// The same members read over a different ground-set size.
    pub fn with_ground_size(&self, n: usize) -> Result<SetFamily> {
        Self::new(n, self.masks.clone())
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.masks == other.masks
    }
}

impl Eq for SetFamily {}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.masks.iter().map(|&m| format_set(m)))
            .finish()
    }
}

/// All members of the family and all their subsets.
///
/// Works one popcount layer at a time, stripping single elements from the
/// current frontier, so the cost is `O(n * |down(F)|)`.
pub fn down_closure(fam: &SetFamily) -> SetFamily {
    close(fam, |m, _| elements(m).map(move |e| m & !(1 << e)).collect())
}

/// All members of the family and all their supersets inside `2^U`.
pub fn up_closure(fam: &SetFamily) -> SetFamily {
    let full = full_mask(fam.n);
    close(fam, move |m, _| {
        elements(full & !m).map(move |e| m | (1 << e)).collect()
    })
}

fn close(fam: &SetFamily, step: impl Fn(SubsetMask, usize) -> Vec<SubsetMask>) -> SetFamily {
    let mut seen: HashSet<SubsetMask> = fam.masks.iter().copied().collect();
    let mut frontier: Vec<SubsetMask> = fam.masks.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in frontier {
            for nb in step(m, fam.n) {
                if seen.insert(nb) {
                    next.push(nb);
                }
            }
        }
        frontier = next;
    }
    let mut masks: Vec<SubsetMask> = seen.into_iter().collect();
    masks.sort_unstable();
    SetFamily::from_sorted(fam.n, masks)
}

/// Every `k`-subset of `{0, .., n-1}`, ascending.
pub fn all_k_subsets(n: usize, k: usize) -> Result<SetFamily> {
    if n > MAX_GROUND {
        return Err(Error::Capacity(n));
    }
    if k > n {
        return Err(Error::arg(format!("k = {k} exceeds n = {n}")));
    }
    Ok(SetFamily::from_sorted(n, k_subsets(n, k).collect()))
}

/// Gosper's hack: masks with `k` bits set below bit `n`, in increasing order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = SubsetMask> {
    let limit = 1u64 << n;
    let mut cur: Option<u64> = if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let m = cur?;
        cur = if m == 0 {
            None
        } else {
            let c = m & m.wrapping_neg();
            let r = m + c;
            let next = (((r ^ m) >> 2) / c) | r;
            (next < limit).then_some(next)
        };
        Some(m as SubsetMask)
    })
}

/// Parses the family text format: one set per line as space-separated
/// zero-based indices, an empty line is the empty set, and lines starting
/// with `#` are comments.
///
/// Returns the masks in file order. Duplicate sets are rejected.
pub fn parse_family(text: &str) -> Result<Vec<SubsetMask>> {
    let mut masks = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        let mut mask: SubsetMask = 0;
        for tok in line.split_whitespace() {
            let e: usize = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("`{tok}` is not an element index")))?;
            if e >= MAX_GROUND {
                return Err(Error::parse(
                    lineno,
                    format!("element {e} exceeds the 32-element capacity"),
                ));
            }
            mask |= 1 << e;
        }
        if !seen.insert(mask) {
            return Err(Error::parse(
                lineno,
                format!("duplicate set {}", format_set(mask)),
            ));
        }
        masks.push(mask);
    }
    Ok(masks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| mask_of(s)).collect()).unwrap()
    }

    #[test]
    fn down_closure_examples() {
        assert!(down_closure(&SetFamily::empty(3).unwrap()).is_empty());
        assert_eq!(
            down_closure(&fam(2, &[&[0, 1]])),
            fam(2, &[&[], &[0], &[1], &[0, 1]])
        );
        assert_eq!(
            down_closure(&fam(3, &[&[0], &[1, 2]])),
            fam(3, &[&[], &[0], &[1], &[2], &[1, 2]])
        );
    }

    #[test]
    fn up_closure_examples() {
        assert!(up_closure(&SetFamily::empty(4).unwrap()).is_empty());
        assert_eq!(up_closure(&fam(2, &[&[0, 1]])), fam(2, &[&[0, 1]]));
        assert_eq!(up_closure(&fam(2, &[&[0]])), fam(2, &[&[0], &[0, 1]]));
    }

    #[test]
    fn k_subset_examples() {
        assert_eq!(all_k_subsets(3, 0).unwrap(), fam(3, &[&[]]));
        assert_eq!(
            all_k_subsets(3, 2).unwrap(),
            fam(3, &[&[0, 1], &[0, 2], &[1, 2]])
        );
        assert_eq!(all_k_subsets(5, 5).unwrap(), fam(5, &[&[0, 1, 2, 3, 4]]));
        assert_eq!(all_k_subsets(0, 0).unwrap().masks(), &[0]);
        assert!(all_k_subsets(3, 4).is_err());
        assert!(all_k_subsets(33, 1).is_err());
        assert_eq!(all_k_subsets(32, 32).unwrap().masks(), &[u32::MAX]);
        assert_eq!(all_k_subsets(32, 1).unwrap().len(), 32);
    }

    #[test]
    fn capacity_and_range_errors() {
        assert!(matches!(SetFamily::new(33, vec![]), Err(Error::Capacity(33))));
        assert!(SetFamily::new(2, vec![0b100]).is_err());
    }

    #[test]
    fn family_text_format() {
        let text = "# header\n0 2\n\n1\n";
        assert_eq!(parse_family(text).unwrap(), vec![0b101, 0, 0b10]);
        let err = parse_family("0\nx\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(
            parse_family("1 0\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn set_rendering() {
        assert_eq!(format_set(0), "[]");
        assert_eq!(format_set(0b1011), "[0 1 3]");
    }
}
