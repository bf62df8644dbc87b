//! Weak and strong compositions, partitions, and the operators on them:
//! flattening, dominance, refinement, left swaps, `lsort` and the
//! stability statistics `sigma` and `eta`.
//!
//! The textual form of every composition type is a comma-separated list of
//! decimal parts (`0,3,2`); the empty composition is the empty string.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of nonnegative integers. Length is significant:
/// `(0,3,2)` and `(0,3,2,0)` are different indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakComposition(Vec<usize>);

/// A composition with strictly positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrongComposition(Vec<usize>);

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

/// Reverse-lexicographic comparison: the last parts are compared first.
pub fn revlex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Canonical listing order for index sequences: reverse-lexicographically
/// largest first, so the dominance-minimal `x^a` of a key polynomial leads.
pub fn canonical_cmp(a: &[usize], b: &[usize]) -> Ordering {
    revlex_cmp(b, a)
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|p| {
            p.trim().parse::<usize>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

fn fmt_parts(parts: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

impl WeakComposition {
    pub fn new(parts: Vec<usize>) -> Self {
        WeakComposition(parts)
    }

    pub fn zeros(n: usize) -> Self {
        WeakComposition(vec![0; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|a|`, the sum of the parts.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `ℓ(a)`, the number of nonzero parts.
    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0).count()
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// 1-based index of the last nonzero part, 0 if there is none.
    pub fn last_nonzero(&self) -> usize {
        self.0.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1)
    }

    pub fn leading_zeros(&self) -> usize {
        self.0.iter().take_while(|&&p| p == 0).count()
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Nonzero parts occupy a contiguous block of positions ending at the
    /// last position. The all-zero composition qualifies vacuously.
    pub fn nonzeros_form_terminal_interval(&self) -> bool {
        if self.is_all_zero() {
            return true;
        }
        let start = self.leading_zeros();
        self.0[start..].iter().all(|&p| p > 0)
    }

    pub fn flatten(&self) -> StrongComposition {
        StrongComposition(self.0.iter().copied().filter(|&p| p > 0).collect())
    }

    pub fn sort_decreasing(&self) -> Partition {
        let mut parts: Vec<usize> = self.0.iter().copied().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Reversal with zeros removed; defined only for weakly increasing input.
    pub fn rev_increasing(&self) -> Result<Partition> {
        if !self.is_weakly_increasing() {
            return Err(Error::NotWeaklyIncreasing(self.to_string()));
        }
        Ok(Partition(
            self.0.iter().rev().copied().filter(|&p| p > 0).collect(),
        ))
    }

    /// `0^m × a`.
    pub fn prepend_zeros(&self, m: usize) -> WeakComposition {
        let mut parts = vec![0; m];
        parts.extend_from_slice(&self.0);
        WeakComposition(parts)
    }

    /// Dominance order: `self ≥ other` iff every prefix sum of `self` is at
    /// least the matching prefix sum of `other`.
    pub fn dominates(&self, other: &WeakComposition) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(dominates_slices(&self.0, &other.0))
    }
}

pub(crate) fn dominates_slices(b: &[usize], a: &[usize]) -> bool {
    let (mut sb, mut sa) = (0usize, 0usize);
    for (x, y) in b.iter().zip(a) {
        sb += x;
        sa += y;
        if sb < sa {
            return false;
        }
    }
    true
}

impl StrongComposition {
    /// Fails if any part is zero.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition(format!(
                "strong composition has a zero part: {parts:?}"
            )));
        }
        Ok(StrongComposition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_weak(&self) -> WeakComposition {
        WeakComposition(self.0.clone())
    }

    /// Whether `self` splits into consecutive blocks summing to the parts of
    /// `coarser`, in order.
    pub fn refines(&self, coarser: &StrongComposition) -> bool {
        refines_slices(&self.0, &coarser.0)
    }

    pub fn reversed(&self) -> StrongComposition {
        StrongComposition(self.0.iter().rev().copied().collect())
    }

    /// The composition of `n = self.weight()` whose descent set is `set`
    /// (a subset of `1..n`).
    pub fn from_descent_set(n: usize, set: &BTreeSet<usize>) -> StrongComposition {
        let mut parts = Vec::new();
        let mut prev = 0;
        for &d in set.iter().filter(|&&d| d > 0 && d < n) {
            parts.push(d - prev);
            prev = d;
        }
        if n > prev {
            parts.push(n - prev);
        }
        StrongComposition(parts)
    }
}

pub(crate) fn refines_slices(fine: &[usize], coarse: &[usize]) -> bool {
    let mut it = fine.iter();
    for &target in coarse {
        let mut acc = 0;
        while acc < target {
            match it.next() {
                Some(&p) => acc += p,
                None => return false,
            }
        }
        if acc != target {
            return false;
        }
    }
    it.next().is_none()
}

impl Partition {
    /// Fails unless the parts are positive and weakly decreasing.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("not a partition: {parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of cells in column `c` (1-based) of the Young diagram.
    pub fn column_height(&self, c: usize) -> usize {
        self.0.iter().filter(|&&p| p >= c).count()
    }
}

macro_rules! text_form {
    ($ty:ident, $ctor:expr) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_parts(&self.0, f)
            }
        }

        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                let parts = parse_parts(s)?;
                $ctor(parts).map_err(|e| match e {
                    Error::Precondition(reason) => Error::Parse {
                        input: s.to_string(),
                        reason,
                    },
                    other => other,
                })
            }
        }
    };
}

text_form!(WeakComposition, |p| Ok::<_, Error>(WeakComposition::new(p)));
text_form!(StrongComposition, StrongComposition::new);
text_form!(Partition, Partition::new);

/// Closure of `{a}` under left swaps (exchange `a_i < a_j` with `i < j`),
/// in canonical order.
pub fn lswap_set(a: &WeakComposition) -> Vec<WeakComposition> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(a.clone());
    queue.push_back(a.clone());
    while let Some(cur) = queue.pop_front() {
        let p = cur.parts();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] < p[j] {
                    let mut next = p.to_vec();
                    next.swap(i, j);
                    let next = WeakComposition(next);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|x, y| canonical_cmp(x.parts(), y.parts()));
    out
}

/// One representative per flattening class of `lswap_set(a)`: the element
/// dominated by every other member of its class.
pub fn qlswap_set(a: &WeakComposition) -> Vec<WeakComposition> {
    let mut classes: BTreeMap<StrongComposition, Vec<WeakComposition>> = BTreeMap::new();
    for b in lswap_set(a) {
        classes.entry(b.flatten()).or_default().push(b);
    }
    let mut out = Vec::new();
    for members in classes.values() {
        let minimum = members.iter().find(|b| {
            members
                .iter()
                .all(|c| dominates_slices(c.parts(), b.parts()))
        });
        if let Some(b) = minimum {
            out.push(b.clone());
        }
    }
    out.sort_by(|x, y| canonical_cmp(x.parts(), y.parts()));
    out
}

/// The dominance-minimal `b` obtained from `a` by moving nonzero parts
/// weakly left so that `flat(b)` is weakly increasing, or `None`.
///
/// Exhaustive over increasing position vectors for the sorted nonzero parts.
pub fn lsort(a: &WeakComposition) -> Option<WeakComposition> {
    let n = a.len();
    let mut values: Vec<usize> = a.parts().iter().copied().filter(|&p| p > 0).collect();
    values.sort_unstable();

    // origins[v] = positions of v in a, ascending
    let mut origins: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (pos, &v) in a.parts().iter().enumerate() {
        if v > 0 {
            origins.entry(v).or_default().push(pos);
        }
    }
    // For slot t (into sorted values) the bound is the origin of the same
    // rank among equal values: matching equal values in order is optimal.
    let mut bound = Vec::with_capacity(values.len());
    let mut rank: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in &values {
        let r = rank.entry(v).or_insert(0);
        bound.push(origins[&v][*r]);
        *r += 1;
    }

    let mut candidates = Vec::new();
    let mut positions = Vec::with_capacity(values.len());
    place(0, 0, n, &bound, &mut positions, &mut candidates);

    let built: Vec<Vec<usize>> = candidates
        .iter()
        .map(|ps| {
            let mut b = vec![0; n];
            for (t, &p) in ps.iter().enumerate() {
                b[p] = values[t];
            }
            b
        })
        .collect();

    built
        .iter()
        .find(|b| built.iter().all(|c| dominates_slices(c, b)))
        .map(|b| WeakComposition(b.clone()))
}

fn place(
    t: usize,
    start: usize,
    n: usize,
    bound: &[usize],
    positions: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if t == bound.len() {
        out.push(positions.clone());
        return;
    }
    let remaining = bound.len() - t;
    if start + remaining > n {
        return;
    }
    for p in start..=bound[t].min(n - remaining) {
        positions.push(p);
        place(t + 1, p + 1, n, bound, positions, out);
        positions.pop();
    }
}

/// Leading zeros needed (positive) or in excess (negative) for `lsort`.
pub fn sigma(a: &WeakComposition) -> i64 {
    if let Some(b) = lsort(a) {
        return -(b.leading_zeros() as i64);
    }
    // ℓ(a) leading zeros always suffice
    (1..=a.nonzero_count())
        .find(|&m| lsort(&a.prepend_zeros(m)).is_some())
        .expect("lsort exists after padding by the number of nonzero parts") as i64
}

/// The stability point of the slide expansion of the key polynomial.
pub fn eta(a: &WeakComposition) -> i64 {
    a.weight() as i64 - a.max_part() as i64 + 1 - a.nonzero_count() as i64 + sigma(a)
}

/// All weak compositions of the given length with weight at most
/// `max_weight`, in lexicographic order.
pub fn weak_compositions_up_to(length: usize, max_weight: usize) -> Vec<WeakComposition> {
    (0..=max_weight)
        .flat_map(|w| weak_compositions_of(w, length))
        .collect()
}

/// All weak compositions of `weight` with exactly `length` parts.
pub fn weak_compositions_of(weight: usize, length: usize) -> Vec<WeakComposition> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<WeakComposition>) {
        if slots == 0 {
            if rest == 0 {
                out.push(WeakComposition(cur.clone()));
            }
            return;
        }
        for p in (0..=rest).rev() {
            if slots == 1 && p != rest {
                continue;
            }
            cur.push(p);
            go(rest - p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, length, &mut Vec::with_capacity(length), &mut out);
    out
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::strategies::{strong, weak, weak_of_len};
    use proptest::prelude::*;

    fn triple() -> impl Strategy<Value = (WeakComposition, WeakComposition, WeakComposition)> {
        (1usize..=4).prop_flat_map(|n| (weak_of_len(n, 3), weak_of_len(n, 3), weak_of_len(n, 3)))
    }

    proptest! {
        #[test]
        fn dominance_is_a_partial_order((a, b, c) in triple()) {
            prop_assert!(a.dominates(&a).unwrap());
            if a.weight() == b.weight() && a.dominates(&b).unwrap() && b.dominates(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if a.dominates(&b).unwrap() && b.dominates(&c).unwrap() {
                prop_assert!(a.dominates(&c).unwrap());
            }
        }

        #[test]
        fn lsort_flattens_increasing(a in weak(6, 8)) {
            if let Some(b) = lsort(&a) {
                prop_assert!(b.flatten().to_weak().is_weakly_increasing());
                prop_assert_eq!(sigma(&b), sigma(&a));
            }
        }

        #[test]
        fn sigma_and_eta_shift_with_zeros(a in weak(5, 7), m in 0usize..4) {
            let b = a.prepend_zeros(m);
            prop_assert_eq!(sigma(&b), sigma(&a) - m as i64);
            prop_assert_eq!(eta(&b), eta(&a) - m as i64);
        }

        #[test]
        fn qlswap_representatives(a in weak(4, 6)) {
            let reps = qlswap_set(&a);
            let flats: BTreeSet<StrongComposition> = reps.iter().map(WeakComposition::flatten).collect();
            prop_assert_eq!(flats.len(), reps.len());
            for b in lswap_set(&a) {
                let rep = reps.iter().find(|r| r.flatten() == b.flatten());
                prop_assert!(rep.is_some());
                prop_assert!(b.dominates(rep.unwrap()).unwrap());
            }
        }

        #[test]
        fn merging_parts_is_refined_by_the_original(c in strong(5, 8), cuts in prop::collection::vec(any::<bool>(), 5)) {
            let mut coarse = Vec::new();
            for (k, &p) in c.parts().iter().enumerate() {
                match coarse.last_mut() {
                    Some(last) if k > 0 && cuts[k - 1] => *last += p,
                    _ => coarse.push(p),
                }
            }
            let alpha = StrongComposition::new(coarse).unwrap();
            prop_assert!(c.refines(&alpha));
            prop_assert_eq!(c.weight(), alpha.weight());
        }

        #[test]
        fn refinement_implies_equal_size(c in strong(4, 6), alpha in strong(4, 6)) {
            if c.refines(&alpha) {
                prop_assert_eq!(c.weight(), alpha.weight());
            }
        }

        #[test]
        fn text_round_trip(a in weak(6, 9)) {
            prop_assert_eq!(a.to_string().parse::<WeakComposition>().unwrap(), a);
        }
    }
}
