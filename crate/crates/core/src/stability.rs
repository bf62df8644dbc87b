//! Stability of slide expansions under prepending zeros: the maps `t_{i,j}`,
//! spring-loaded pushes, and the stability point `η`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::composition::{eta, WeakComposition};
use crate::error::{Error, Result};
use crate::expand::{key_to_slides, Expansion};
use crate::kohnert::{
    destandardize_cells, enumerate_qkt, from_signed, is_quasi_yamanouchi, kohnert_label, to_signed,
    validate_kt, KohnertTableau,
};
use crate::qsym::syt_count;

fn check_indices(a: &WeakComposition, i: usize, j: usize) -> Result<()> {
    let p = a.parts();
    let fail = |why: &str| Err(Error::Precondition(format!("t_{{{i},{j}}} on {a}: {why}")));
    if i < 2 || i >= j || j > p.len() {
        return fail("need 2 ≤ i < j ≤ n");
    }
    let (before, at_j) = (p[i - 2], p[j - 1]);
    if !(before < at_j && at_j < p[i - 1]) {
        return fail("need a_{i-1} < a_j < a_i");
    }
    if p[i - 1..j - 1].windows(2).any(|w| w[0] > w[1]) {
        return fail("need a_i ≤ … ≤ a_{j-1}");
    }
    if !p[..i - 1].contains(&0) {
        return fail("need a zero before a_i");
    }
    Ok(())
}

/// First index of the maximal run of nonzero parts ending at `i − 1`
/// (1-based); equals `i` when `a_{i−1} = 0`.
fn run_start(p: &[usize], i: usize) -> usize {
    let mut k = i;
    while k > 1 && p[k - 2] > 0 {
        k -= 1;
    }
    k
}

/// The content `b` reached by `t_{i,j}`: slide the nonzero run just left of
/// `a_i` one place left, then swap positions `i − 1` and `j`.
pub fn t_target(a: &WeakComposition, i: usize, j: usize) -> Result<WeakComposition> {
    check_indices(a, i, j)?;
    let mut b = a.parts().to_vec();
    let k = run_start(&b, i);
    if k < i {
        b[k - 2..i - 1].rotate_left(1);
    }
    b.swap(i - 2, j - 1);
    Ok(WeakComposition::new(b))
}

/// `t_{i,j}` applied to `T ∈ QKT(a)`.
///
/// Labels of the run `k..i−1` drop by one; in columns `1..a_j` the labels
/// `i..j` are replaced bottom to top by `i−1..j−1`; if `j−1` then sits in
/// row `j`, that row and every row it would collide with below move down one.
/// The result is checked against the canonical `b`-labeling of its shape.
pub fn t_move(t: &KohnertTableau, i: usize, j: usize) -> Result<KohnertTableau> {
    let a = t.content();
    let b = t_target(a, i, j)?;
    if !validate_kt(t) || !is_quasi_yamanouchi(t) {
        return Err(Error::Precondition("t_{i,j} acts on QKT(a)".into()));
    }
    let p = a.parts();
    let k = run_start(p, i);

    let mut cells: BTreeMap<(usize, usize), usize> = t
        .cells()
        .map(|(cell, l)| (cell, if (k..i).contains(&l) { l - 1 } else { l }))
        .collect();
    for c in 1..=p[j - 1] {
        let rows: BTreeSet<usize> = cells
            .iter()
            .filter(|(&(_, col), &l)| col == c && (i..=j).contains(&l))
            .map(|(&(r, _), _)| r)
            .collect();
        for (offset, r) in rows.into_iter().enumerate() {
            cells.insert((r, c), i - 1 + offset);
        }
    }

    if cells.iter().any(|(&(r, _), &l)| r == j && l == j - 1) {
        let cols_in = |r: usize| -> BTreeSet<usize> {
            cells
                .keys()
                .filter(|&&(row, _)| row == r)
                .map(|&(_, c)| c)
                .collect()
        };
        let mut low = j;
        while low > 1 && !cols_in(low).is_disjoint(&cols_in(low - 1)) {
            low -= 1;
        }
        if low == 1 {
            return Err(Error::Internal(format!(
                "t_{{{i},{j}}} pushes a row below row 1"
            )));
        }
        cells = cells
            .into_iter()
            .map(|((r, c), l)| {
                if (low..=j).contains(&r) {
                    ((r - 1, c), l)
                } else {
                    ((r, c), l)
                }
            })
            .collect();
    }

    let image = KohnertTableau::new(b.clone(), cells)?;
    let relabeled = kohnert_label(&image.diagram(), &b)?;
    if relabeled.as_ref() != Some(&image) || !is_quasi_yamanouchi(&image) {
        return Err(Error::Internal(format!(
            "t_{{{i},{j}}} image disagrees with the canonical labeling by {b}"
        )));
    }
    Ok(image)
}

/// Spring-loaded push of the rightmost cell `C` of `row`, followed by
/// destandardization. `Ok(None)` when the row is empty, nothing lies below,
/// neither case applies, or the result leaves the positive quadrant.
pub fn spring_push(t: &KohnertTableau, row: usize) -> Result<Option<KohnertTableau>> {
    if !is_quasi_yamanouchi(t) {
        return Err(Error::NotQuasiYamanouchi);
    }
    let cells = to_signed(t);
    let i = row as i64;
    let Some((&(_, c_col), &c_label)) = cells.range((i, 0)..(i + 1, 0)).next_back() else {
        return Ok(None);
    };
    let Some(&(j, _)) = cells.range(..(i, 0)).next_back().map(|(k, _)| k) else {
        return Ok(None);
    };
    let (&(_, d_col), &d_label) = cells
        .range((j, 0)..(j + 1, 0))
        .next()
        .expect("row j nonempty");

    let (keep_e, landing) = if d_col < c_col && (c_col - d_col >= 2 || d_label < c_label) {
        (false, j)
    } else if d_col == c_col {
        match cells.get(&(j, d_col + 1)) {
            Some(&e_label) if c_label > d_label && c_label > e_label => (true, j - 1),
            _ => return Ok(None),
        }
    } else {
        return Ok(None);
    };

    let mut pushed: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    for (&(r, c), &l) in &cells {
        let stays = (r, c) == (j, d_col) || (keep_e && (r, c) == (j, d_col + 1));
        let target = if (r, c) == (i, c_col) {
            (landing, c)
        } else if r < i && !stays {
            (r - 1, c)
        } else {
            (r, c)
        };
        pushed.insert(target, l);
    }
    destandardize_cells(&mut pushed);
    let Some(u) = from_signed(t.content(), &pushed) else {
        return Ok(None);
    };
    if !validate_kt(&u) || !is_quasi_yamanouchi(&u) {
        return Err(Error::Internal(format!(
            "spring-loaded push of row {row} left the quasi-Yamanouchi Kohnert tableaux"
        )));
    }
    Ok(Some(u))
}

/// Undirected graph on `QKT(a)` joining tableaux related by a push.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpringGraph {
    pub vertices: Vec<KohnertTableau>,
    /// Index pairs `(u, v)` with `u < v`.
    pub edges: BTreeSet<(usize, usize)>,
}

impl SpringGraph {
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn spring_graph(a: &WeakComposition) -> Result<SpringGraph> {
    let vertices = enumerate_qkt(a)?;
    let index: BTreeMap<&KohnertTableau, usize> =
        vertices.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut edges = BTreeSet::new();
    for (u, t) in vertices.iter().enumerate() {
        for row in 1..=t.max_row() {
            if let Some(image) = spring_push(t, row)? {
                let v = *index
                    .get(&image)
                    .ok_or_else(|| Error::Internal(format!("push image outside QKT({a})")))?;
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
        }
    }
    Ok(SpringGraph { vertices, edges })
}

/// `#QKT(0^m × a)` for `m = 0..=m_max`.
pub fn stability_profile(a: &WeakComposition, m_max: usize) -> Result<Vec<usize>> {
    (0..=m_max)
        .map(|m| Ok(enumerate_qkt(&a.prepend_zeros(m))?.len()))
        .collect()
}

/// `η(a)` clamped at zero: the number of zeros after which nothing changes.
pub fn stability_point(a: &WeakComposition) -> usize {
    eta(a).max(0) as usize
}

/// Lowest occupied row over all of `QKT(a)`; `None` when `a` is all zeros.
pub fn lowest_row(a: &WeakComposition) -> Result<Option<usize>> {
    Ok(enumerate_qkt(a)?.iter().filter_map(|t| t.min_row()).min())
}

/// The slide expansion of `κ_{0^η × a}`.
pub fn stable_slide_expansion(a: &WeakComposition) -> Result<Expansion> {
    key_to_slides(&a.prepend_zeros(stability_point(a)))
}

/// Prepends `m` zeros to every index of a slide expansion.
pub fn shift_expansion(e: &Expansion, m: usize) -> Expansion {
    let mut out = Expansion::new(e.basis());
    for (idx, c) in e.terms() {
        let mut shifted = vec![0; m];
        shifted.extend_from_slice(idx);
        out.add(shifted, c);
    }
    out
}

/// Whether `profile` increases strictly up to `onset` and is constant after.
pub fn plateau_at(profile: &[usize], onset: usize) -> bool {
    let rising = profile
        .iter()
        .take(onset + 1)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] < w[1]);
    let flat = profile
        .iter()
        .skip(onset)
        .collect::<Vec<_>>()
        .windows(2)
        .all(|w| w[0] == w[1]);
    rising && flat
}

/// One line of the stability report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRecord {
    pub a: WeakComposition,
    pub eta: i64,
    pub profile: Vec<usize>,
    pub plateau_ok: bool,
    pub connected_ok: bool,
}

/// Profile up to `η + extra` (at least `extra`), checked for the plateau at
/// `max(η, 0)` with value `#SYT(sort(a))`, plus connectivity of the spring
/// graphs from the plateau on. All-zero `a` only needs a constant profile
/// of 1.
///
/// Below the plateau part of `QKT(0^m × a)` is virtual (it would need rows
/// under row 1), and the graph on the remaining tableaux may split; shifting
/// up by `η − m` rows turns the full virtual graph into the one at `m = η`.
pub fn stability_record(a: &WeakComposition, extra: usize) -> Result<StabilityRecord> {
    let onset = stability_point(a);
    let m_max = onset + extra;
    let profile = stability_profile(a, m_max)?;
    let plateau_ok = if a.is_all_zero() {
        profile.iter().all(|&c| c == 1)
    } else {
        plateau_at(&profile, onset) && profile[m_max] as u128 == syt_count(&a.sort_decreasing())
    };
    let mut connected_ok = true;
    for m in onset..=m_max {
        connected_ok &= spring_graph(&a.prepend_zeros(m))?.is_connected();
    }
    Ok(StabilityRecord {
        a: a.clone(),
        eta: eta(a),
        profile,
        plateau_ok,
        connected_ok,
    })
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::kohnert::enumerate_qqkt;
    use crate::qsym::sct_count;
    use crate::strategies::weak;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn stable_from_eta_on(a in weak(3, 5)) {
            let rec = stability_record(&a, 1).unwrap();
            prop_assert!(rec.plateau_ok, "profile {:?} eta {}", rec.profile, rec.eta);
            prop_assert!(rec.connected_ok);
            let onset = stability_point(&a);
            let stable = stable_slide_expansion(&a).unwrap();
            for m in 0..=1 {
                let padded = a.prepend_zeros(onset + m);
                prop_assert_eq!(key_to_slides(&padded).unwrap(), shift_expansion(&stable, m));
            }
        }

        #[test]
        fn quasi_kohnert_count_is_stable(a in weak(3, 5)) {
            prop_assume!(!a.is_all_zero());
            let onset = stability_point(&a);
            let expected = sct_count(&a.flatten());
            for m in onset..=onset + 1 {
                prop_assert_eq!(enumerate_qqkt(&a.prepend_zeros(m)).unwrap().len() as u64, expected);
            }
        }

        #[test]
        fn pushes_move_the_bottom_by_at_most_one(a in weak(3, 5)) {
            let padded = a.prepend_zeros(stability_point(&a));
            for t in enumerate_qkt(&padded).unwrap() {
                let Some(low) = t.min_row() else { continue };
                for row in 1..=t.max_row() {
                    if let Some(u) = spring_push(&t, row).unwrap() {
                        let new_low = u.min_row().unwrap();
                        prop_assert!(new_low + 1 >= low && new_low <= low + 1);
                    }
                }
            }
        }
    }
}
