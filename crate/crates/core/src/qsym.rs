//! Semistandard and quasi-Yamanouchi Young tableaux, standard composition
//! tableaux, and the maps `φ` and `ψ` from Kohnert-side objects.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{canonical_cmp, Partition, StrongComposition, WeakComposition};
use crate::error::{Error, Result};
use crate::expand::{Basis, Expansion};
use crate::kohnert::{
    is_quasi_kohnert, is_quasi_yamanouchi, render_grid, validate_kt, KohnertTableau,
};

/// A filling of a partition shape. `rows[0]` is the bottom (longest) row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    /// Checks that the rows fit the shape, weakly increase along rows and
    /// strictly increase up columns.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let t = YoungTableau { shape, rows };
        if !t.is_semistandard() {
            return Err(Error::Precondition("filling is not semistandard".into()));
        }
        Ok(t)
    }

    fn is_semistandard(&self) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|r| r.iter().all(|&x| x > 0) && r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(up, down)| up > down));
        rows_ok && cols_ok
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        self.rows
            .get(row.checked_sub(1)?)?
            .get(col.checked_sub(1)?)
            .copied()
    }

    pub fn max_entry(&self) -> usize {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Entry counts as a composition of length `n`.
    pub fn weight(&self, n: usize) -> WeakComposition {
        let mut w = vec![0; n.max(self.max_entry())];
        for &x in self.rows.iter().flatten() {
            w[x - 1] += 1;
        }
        WeakComposition::new(w)
    }

    /// Top row first, entries separated by spaces.
    pub fn render(&self) -> String {
        render_rows(&self.rows)
    }
}

impl fmt::Display for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_rows(rows: &[Vec<usize>]) -> String {
    let cells: BTreeMap<(usize, usize), String> = rows
        .iter()
        .enumerate()
        .flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, x)| ((r + 1, c + 1), x.to_string()))
        })
        .collect();
    render_grid(&cells, rows.len())
}

/// `SSYT_n(λ)`, sorted by weight (canonical order) and then by filling.
pub fn enumerate_ssyt(lambda: &Partition, n: usize) -> Vec<YoungTableau> {
    let shape = lambda.parts().to_vec();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fill(&cells, 0, n, &mut rows, &mut out);
    let mut tableaux: Vec<YoungTableau> = out
        .into_iter()
        .map(|rows| YoungTableau {
            shape: lambda.clone(),
            rows,
        })
        .collect();
    tableaux.sort_by(|x, y| {
        canonical_cmp(x.weight(n).parts(), y.weight(n).parts()).then_with(|| x.rows.cmp(&y.rows))
    });
    tableaux
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    n: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some(&(r, c)) = cells.get(k) else {
        out.push(rows.clone());
        return;
    };
    let left = if c > 0 { rows[r][c - 1] } else { 1 };
    let below = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
    for x in left.max(below)..=n {
        rows[r][c] = x;
        fill(cells, k + 1, n, rows, out);
    }
    rows[r][c] = 0;
}

/// The leftmost `i` lies weakly left of some `i − 1`, for every `i > 1`
/// present.
pub fn is_qyt(t: &YoungTableau) -> bool {
    let mut min_col: BTreeMap<usize, usize> = BTreeMap::new();
    let mut max_col: BTreeMap<usize, usize> = BTreeMap::new();
    for row in &t.rows {
        for (c, &x) in row.iter().enumerate() {
            let e = min_col.entry(x).or_insert(c);
            *e = (*e).min(c);
            let e = max_col.entry(x).or_insert(c);
            *e = (*e).max(c);
        }
    }
    min_col
        .iter()
        .filter(|(&i, _)| i > 1)
        .all(|(&i, &left)| max_col.get(&(i - 1)).is_some_and(|&m| left <= m))
}

/// `QYT_n(λ)`.
pub fn enumerate_qyt(lambda: &Partition, n: usize) -> Vec<YoungTableau> {
    enumerate_ssyt(lambda, n)
        .into_iter()
        .filter(is_qyt)
        .collect()
}

/// Sends a label `i` in row `r` to row `k + 1 − i`, same column, with entry
/// `k + 1 − r`; a bijection `KT(a) → SSYT_k(rev(a))` for weakly increasing
/// `(a_1, …, a_k)` followed by zeros.
pub fn kt_to_ssyt(t: &KohnertTableau, k: usize) -> Result<YoungTableau> {
    if !validate_kt(t) {
        return Err(Error::Precondition("not a Kohnert tableau".into()));
    }
    let a = t.content().parts();
    if k > a.len() || a[k..].iter().any(|&x| x > 0) {
        return Err(Error::Precondition(format!(
            "content {} has nonzero parts beyond position {k}",
            t.content()
        )));
    }
    let prefix = WeakComposition::new(a[..k].to_vec());
    if !prefix.is_weakly_increasing() {
        return Err(Error::NotWeaklyIncreasing(prefix.to_string()));
    }
    let mut rows: Vec<Vec<usize>> = (1..=k).map(|s| vec![0; a[k - s]]).collect();
    for ((r, c), i) in t.cells() {
        if r > k {
            return Err(Error::RowOutOfRange { row: r, bound: k });
        }
        rows[k - i][c - 1] = k + 1 - r;
    }
    rows.retain(|row| !row.is_empty());
    YoungTableau::new(rows).map_err(|_| Error::Internal("image is not semistandard".into()))
}

/// Inverse of [`kt_to_ssyt`]: entry `e` in row `s`, column `c` becomes label
/// `k + 1 − s` in row `k + 1 − e`. The content has length `n ≥ k`.
pub fn ssyt_to_kt(y: &YoungTableau, k: usize, n: usize) -> Result<KohnertTableau> {
    if y.rows.len() > k || y.max_entry() > k || n < k {
        return Err(Error::Precondition(format!(
            "tableau does not fit in {k} rows and entries"
        )));
    }
    let mut content = vec![0; n];
    let mut cells = BTreeMap::new();
    for (s, row) in y.rows.iter().enumerate() {
        let label = k - s;
        content[label - 1] = row.len();
        for (c, &e) in row.iter().enumerate() {
            cells.insert((k + 1 - e, c + 1), label);
        }
    }
    KohnertTableau::new(WeakComposition::new(content), cells)
}

/// `φ`: number the nonempty rows of `T` from the top, flip, and let the
/// cells fall. Column `c` of the result lists, bottom to top, the ranks of
/// the rows met reading column `c` of `T` downward.
pub fn phi(t: &KohnertTableau) -> Result<YoungTableau> {
    if !is_quasi_yamanouchi(t) {
        return Err(Error::NotQuasiYamanouchi);
    }
    let nonempty: BTreeSet<usize> = t.cells().map(|((r, _), _)| r).collect();
    let rank: HashMap<usize, usize> = nonempty
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &r)| (r, i + 1))
        .collect();
    let shape = t.content().sort_decreasing();
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    for c in 1..=shape.largest() {
        let mut col: Vec<usize> = t.column(c).into_iter().map(|(r, _)| rank[&r]).collect();
        col.sort_unstable();
        for (h, x) in col.into_iter().enumerate() {
            rows[h][c - 1] = x;
        }
    }
    YoungTableau::new(rows).map_err(|_| Error::Internal("φ image is not semistandard".into()))
}

/// A standard composition tableau. `rows[0]` is the bottom row, of length
/// `α_1`; entries are listed left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositionTableau {
    pub shape: StrongComposition,
    pub rows: Vec<Vec<usize>>,
}

impl CompositionTableau {
    pub fn size(&self) -> usize {
        self.shape.weight()
    }

    /// `(row, col)` of each label, indexed by label.
    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.size() + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                pos[x] = (r + 1, c + 1);
            }
        }
        pos
    }

    pub fn render(&self) -> String {
        render_rows(&self.rows)
    }
}

impl fmt::Display for CompositionTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Compositions covered by `beta`: drop a leading `1`, or lower a part to
/// `v ≥ 1` when no earlier part equals `v`. Each comes with the removed
/// cell's row index (0-based) and whether rows shift.
fn predecessors(beta: &[usize]) -> Vec<(Vec<usize>, usize, bool)> {
    let mut out = Vec::new();
    if beta.first() == Some(&1) {
        out.push((beta[1..].to_vec(), 0, true));
    }
    for r in 0..beta.len() {
        if beta[r] >= 2 {
            let v = beta[r] - 1;
            if !beta[..r].contains(&v) {
                let mut p = beta.to_vec();
                p[r] = v;
                out.push((p, r, false));
            }
        }
    }
    out
}

/// `SCT(α)`: one tableau per saturated chain from `(1)` to `α`, with label
/// `i` in the cell added at step `n − i + 1`.
pub fn enumerate_sct(alpha: &StrongComposition) -> Vec<CompositionTableau> {
    let parts = alpha.parts().to_vec();
    let mut rows: Vec<Vec<usize>> = parts.iter().map(|&len| vec![0; len]).collect();
    let row_ids: Vec<usize> = (0..parts.len()).collect();
    let mut out = Vec::new();
    if !parts.is_empty() {
        descend(&parts, row_ids, 1, &mut rows, &mut out);
    } else {
        out.push(Vec::new());
    }
    let mut tableaux: Vec<CompositionTableau> = out
        .into_iter()
        .map(|rows| CompositionTableau {
            shape: alpha.clone(),
            rows,
        })
        .collect();
    tableaux.sort();
    tableaux
}

fn descend(
    beta: &[usize],
    row_ids: Vec<usize>,
    label: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if beta == [1] {
        rows[row_ids[0]][0] = label;
        out.push(rows.clone());
        return;
    }
    for (pred, r, shift) in predecessors(beta) {
        rows[row_ids[r]][beta[r] - 1] = label;
        let mut ids = row_ids.clone();
        if shift {
            ids.remove(0);
        }
        descend(&pred, ids, label + 1, rows, out);
    }
}

/// Number of saturated chains from `(1)` to `α`, memoized.
pub fn sct_count(alpha: &StrongComposition) -> u64 {
    fn go(beta: Vec<usize>, memo: &mut HashMap<Vec<usize>, u64>) -> u64 {
        if beta == [1] {
            return 1;
        }
        if let Some(&v) = memo.get(&beta) {
            return v;
        }
        let total = predecessors(&beta)
            .into_iter()
            .map(|(p, _, _)| go(p, memo))
            .sum();
        memo.insert(beta, total);
        total
    }
    if alpha.is_empty() {
        return 1;
    }
    go(alpha.parts().to_vec(), &mut HashMap::new())
}

/// `i` is a descent when `i + 1` sits weakly right of `i`.
pub fn descent_set(t: &CompositionTableau) -> BTreeSet<usize> {
    let pos = t.positions();
    (1..t.size())
        .filter(|&i| pos[i + 1].1 >= pos[i].1)
        .collect()
}

/// `Des(T)`, the composition of `n` cut at the descents.
pub fn descent_composition(t: &CompositionTableau) -> StrongComposition {
    StrongComposition::from_descent_set(t.size(), &descent_set(t))
}

/// `ψ`: number the cells `m, …, 1` reading rows left to right from the
/// top, left-justify by repeatedly lifting the highest (then leftmost) cell
/// whose left neighbour is empty into the lowest row above where it can sit
/// beside an occupied cell, and delete the empty rows.
pub fn psi(t: &KohnertTableau) -> Result<CompositionTableau> {
    if !validate_kt(t) || !is_quasi_yamanouchi(t) {
        return Err(Error::NotQuasiYamanouchi);
    }
    if !is_quasi_kohnert(t) {
        return Err(Error::NotQuasiKohnert);
    }
    let m = t.len();
    let mut order: Vec<(usize, usize)> = t.cells().map(|(cell, _)| cell).collect();
    order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut grid: BTreeMap<(usize, usize), usize> = order
        .iter()
        .enumerate()
        .map(|(k, &cell)| (cell, m - k))
        .collect();

    loop {
        let floating = grid
            .keys()
            .copied()
            .filter(|&(r, c)| c > 1 && !grid.contains_key(&(r, c - 1)))
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        let Some((r, c)) = floating else { break };
        let top = grid.keys().map(|&(r, _)| r).max().unwrap_or(0);
        let target = (r + 1..=top)
            .find(|&r2| grid.contains_key(&(r2, c - 1)) && !grid.contains_key(&(r2, c)))
            .ok_or_else(|| Error::Internal(format!("no landing row for cell ({r},{c})")))?;
        let label = grid.remove(&(r, c)).expect("cell present");
        grid.insert((target, c), label);
    }

    let mut by_row: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&(r, _), &label) in &grid {
        by_row.entry(r).or_default().push(label);
    }
    let rows: Vec<Vec<usize>> = by_row.into_values().collect();
    let shape = StrongComposition::new(rows.iter().map(Vec::len).collect())?;
    let s = CompositionTableau { shape, rows };
    if s.shape != t.content().flatten() || !enumerate_sct(&s.shape).contains(&s) {
        return Err(Error::Internal(
            "ψ image is not a composition tableau".into(),
        ));
    }
    Ok(s)
}

/// `s_λ = Σ_{T ∈ QYT_n(λ)} F_{wt(T)}`, valid once `n ≥ |λ| − λ_1 + 1`.
pub fn schur_to_fundamentals(lambda: &Partition, n: usize) -> Result<Expansion> {
    let bound = lambda.weight() - lambda.largest() + 1;
    if n < bound {
        return Err(Error::Precondition(format!(
            "need at least {bound} variables, got {n}"
        )));
    }
    Ok(Expansion::from_indices(
        Basis::FundamentalQsym,
        enumerate_qyt(lambda, n)
            .iter()
            .map(|t| t.weight(n).flatten().parts().to_vec()),
    ))
}

/// `QS_α = Σ_{T ∈ SCT(α)} F_{Des(T)}`.
pub fn quasischur_to_fundamentals(alpha: &StrongComposition) -> Expansion {
    Expansion::from_indices(
        Basis::FundamentalQsym,
        enumerate_sct(alpha)
            .iter()
            .map(|t| descent_composition(t).parts().to_vec()),
    )
}

/// Number of standard Young tableaux of shape `λ` by the hook-length formula.
pub fn syt_count(lambda: &Partition) -> u128 {
    let parts = lambda.parts();
    let factorial: u128 = (1..=lambda.weight() as u128).product();
    let mut hooks: u128 = 1;
    for (r, &len) in parts.iter().enumerate() {
        for c in 1..=len {
            let arm = len - c;
            let leg = lambda.column_height(c) - (r + 1);
            hooks *= (arm + leg + 1) as u128;
        }
    }
    factorial / hooks
}
