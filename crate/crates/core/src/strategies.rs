//! Proptest strategies for small compositions.

use proptest::prelude::*;

use crate::composition::{StrongComposition, WeakComposition};

/// Weak compositions of length `1..=max_len` and weight at most `max_weight`.
pub fn weak(max_len: usize, max_weight: usize) -> impl Strategy<Value = WeakComposition> {
    prop::collection::vec(0..=max_weight, 1..=max_len)
        .prop_filter("weight bound", move |v| {
            v.iter().sum::<usize>() <= max_weight
        })
        .prop_map(WeakComposition::new)
}

pub fn weak_of_len(len: usize, max_part: usize) -> impl Strategy<Value = WeakComposition> {
    prop::collection::vec(0..=max_part, len).prop_map(WeakComposition::new)
}

pub fn strong(max_len: usize, max_weight: usize) -> impl Strategy<Value = StrongComposition> {
    prop::collection::vec(1..=max_weight.max(1), 1..=max_len)
        .prop_filter("weight bound", move |v| {
            v.iter().sum::<usize>() <= max_weight
        })
        .prop_map(|v| StrongComposition::new(v).expect("positive parts"))
}
