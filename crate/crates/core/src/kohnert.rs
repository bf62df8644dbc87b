//! Kohnert tableaux: labeled Kohnert diagrams with a content composition.
//!
//! A Kohnert tableau of content `a` carries labels `1^{a_1}, …, n^{a_n}` and
//! satisfies four conditions (see [`kt_violation`]). Every diagram of
//! `KM(a)` has exactly one such labeling, produced by [`kohnert_label`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{
    canonical_cmp, dominates_slices, qlswap_set, refines_slices, WeakComposition,
};
use crate::diagram::{is_kohnert_diagram, key_diagram, kohnert_closure, Cell, Diagram};
use crate::error::{Error, Result};

/// A diagram whose cells carry labels, paired with its content.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KohnertTableau {
    content: WeakComposition,
    cells: BTreeMap<Cell, usize>,
}

/// Serialized form: `{content: [..], cells: [{row, col, label}, ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauRecord {
    pub content: Vec<usize>,
    pub cells: Vec<LabeledCell>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledCell {
    pub row: usize,
    pub col: usize,
    pub label: usize,
}

impl KohnertTableau {
    /// Unchecked constructor; use [`validate_kt`] to test the conditions.
    pub fn new(content: WeakComposition, cells: BTreeMap<Cell, usize>) -> Result<Self> {
        if let Some(&(r, c)) = cells.keys().find(|&&(r, c)| r == 0 || c == 0) {
            return Err(Error::Precondition(format!(
                "cell ({r},{c}) lies outside the positive quadrant"
            )));
        }
        Ok(KohnertTableau { content, cells })
    }

    /// The Yamanouchi tableau: `i`s filling row `i` of the key diagram.
    pub fn yamanouchi(a: &WeakComposition) -> Self {
        let cells = key_diagram(a).cells().map(|(r, c)| ((r, c), r)).collect();
        KohnertTableau {
            content: a.clone(),
            cells,
        }
    }

    pub fn content(&self) -> &WeakComposition {
        &self.content
    }

    pub fn cells(&self) -> impl Iterator<Item = (Cell, usize)> + '_ {
        self.cells.iter().map(|(&c, &l)| (c, l))
    }

    pub fn label(&self, cell: Cell) -> Option<usize> {
        self.cells.get(&cell).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::from_cells(self.cells.keys().copied()).expect("cells are in the positive quadrant")
    }

    pub fn max_row(&self) -> usize {
        self.cells.keys().map(|&(r, _)| r).max().unwrap_or(0)
    }

    pub fn min_row(&self) -> Option<usize> {
        self.cells.keys().map(|&(r, _)| r).min()
    }

    /// Row counts, reported at length `max(n, top occupied row)`.
    pub fn weight(&self) -> WeakComposition {
        let n = self.content.len().max(self.max_row());
        self.diagram().weight(n).expect("length covers every row")
    }

    /// Cells of row `r` as `(col, label)`, left to right.
    pub fn row(&self, r: usize) -> Vec<(usize, usize)> {
        self.cells
            .range((r, 0)..(r + 1, 0))
            .map(|(&(_, c), &l)| (c, l))
            .collect()
    }

    /// Cells of column `c` as `(row, label)`, bottom to top.
    pub fn column(&self, c: usize) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .filter(|(&(_, col), _)| col == c)
            .map(|(&(r, _), &l)| (r, l))
            .collect()
    }

    pub fn to_record(&self) -> TableauRecord {
        TableauRecord {
            content: self.content.parts().to_vec(),
            cells: self
                .cells
                .iter()
                .map(|(&(row, col), &label)| LabeledCell { row, col, label })
                .collect(),
        }
    }

    pub fn from_record(rec: &TableauRecord) -> Result<Self> {
        let cells = rec
            .cells
            .iter()
            .map(|c| ((c.row, c.col), c.label))
            .collect();
        KohnertTableau::new(WeakComposition::new(rec.content.clone()), cells)
    }

    /// Text grid, top row first; rows `max(n, top row)` down to 1. Gaps are
    /// `.` and labels are right-aligned to a common width.
    pub fn render(&self) -> String {
        let rows = self.content.len().max(self.max_row());
        let grid: BTreeMap<Cell, String> = self
            .cells
            .iter()
            .map(|(&c, &l)| (c, l.to_string()))
            .collect();
        render_grid(&grid, rows)
    }

    /// Parses the grid produced by [`KohnertTableau::render`]; the last line
    /// is row 1.
    pub fn from_grid(content: WeakComposition, text: &str) -> Result<Self> {
        let cells = parse_grid(text)?
            .into_iter()
            .map(|(cell, tok)| {
                tok.parse::<usize>()
                    .map(|l| (cell, l))
                    .map_err(|e| Error::Parse {
                        input: tok.clone(),
                        reason: e.to_string(),
                    })
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        KohnertTableau::new(content, cells)
    }
}

impl fmt::Display for KohnertTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Renders `(row, col) -> token` top row first with `.` for gaps.
pub fn render_grid(cells: &BTreeMap<Cell, String>, min_rows: usize) -> String {
    let rows = cells
        .keys()
        .map(|&(r, _)| r)
        .max()
        .unwrap_or(0)
        .max(min_rows);
    let cols = cells.keys().map(|&(_, c)| c).max().unwrap_or(0).max(1);
    let width = cells.values().map(|s| s.len()).max().unwrap_or(1).max(1);
    let mut out = String::new();
    for r in (1..=rows).rev() {
        let line: Vec<String> = (1..=cols)
            .map(|c| {
                let tok = cells.get(&(r, c)).map_or(".", |s| s.as_str());
                format!("{tok:>width$}")
            })
            .collect();
        out.push_str(crate::diagram::grid_line(line).trim_end());
        out.push('\n');
    }
    out
}

/// Inverse of [`render_grid`]: whitespace-separated tokens, `.` is a gap,
/// the last line is row 1.
pub fn parse_grid(text: &str) -> Result<BTreeMap<Cell, String>> {
    let lines: Vec<&str> = text.lines().collect();
    let rows = lines.len();
    let mut cells = BTreeMap::new();
    for (i, line) in lines.iter().enumerate() {
        let row = rows - i;
        for (j, tok) in line.split_whitespace().enumerate() {
            if tok != "." {
                cells.insert((row, j + 1), tok.to_string());
            }
        }
    }
    Ok(cells)
}

/// The first Kohnert tableau condition violated by `t`, if any. Checks the
/// label multiset and conditions (i)–(iv).
pub fn kt_violation(t: &KohnertTableau) -> Option<&'static str> {
    let a = t.content.parts();
    let n = a.len();
    // label -> (col -> row)
    let mut by_label: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    for (&(r, c), &l) in &t.cells {
        if l == 0 || l > n {
            return Some("label outside 1..n");
        }
        if by_label.entry(l).or_default().insert(c, r).is_some() {
            return Some("(i) label repeated in a column");
        }
    }
    for (idx, &len) in a.iter().enumerate() {
        let cols = by_label.get(&(idx + 1));
        let ok = match cols {
            None => len == 0,
            Some(m) => m.len() == len && m.keys().copied().eq(1..=len),
        };
        if !ok {
            return Some("(i) label i must fill columns 1..a_i");
        }
    }
    if t.cells.iter().any(|(&(r, _), &l)| l < r) {
        return Some("(ii) entry smaller than its row");
    }
    for cols in by_label.values() {
        let rows: Vec<usize> = cols.values().copied().collect();
        if rows.windows(2).any(|w| w[1] > w[0]) {
            return Some("(iii) equal labels must weakly descend");
        }
    }
    for c in 1..=t.diagram().max_col() {
        let col = t.column(c);
        for &(ri, i) in &col {
            for &(rj, j) in &col {
                if i < j && ri > rj {
                    let witness = by_label
                        .get(&i)
                        .and_then(|m| m.get(&(c + 1)))
                        .is_some_and(|&r| r > rj);
                    if !witness {
                        return Some("(iv) inversion without a witness to the right");
                    }
                }
            }
        }
    }
    None
}

pub fn validate_kt(t: &KohnertTableau) -> bool {
    kt_violation(t).is_none()
}

/// The labels `L_a` assigns to `d`, without checking condition (ii).
///
/// Columns are labeled right to left and each column bottom to top, every
/// cell taking the smallest unused label whose copy one column to the right
/// (if any) is weakly lower.
pub fn label_cells(d: &Diagram, a: &WeakComposition) -> Result<BTreeMap<Cell, usize>> {
    let parts = a.parts();
    let width = a.max_part().max(d.max_col());
    for col in 1..=width {
        let expected = parts.iter().filter(|&&p| p >= col).count();
        let found = d.column_count(col);
        if found != expected {
            return Err(Error::ColumnCount {
                column: col,
                found,
                expected,
            });
        }
    }

    let mut cells: BTreeMap<Cell, usize> = BTreeMap::new();
    // row of label i in the column to the right
    let mut right: BTreeMap<usize, usize> = BTreeMap::new();
    for col in (1..=a.max_part()).rev() {
        let mut available: BTreeSet<usize> = parts
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= col)
            .map(|(i, _)| i + 1)
            .collect();
        let mut here = BTreeMap::new();
        for row in d.column(col) {
            let label = available
                .iter()
                .copied()
                .find(|i| right.get(i).is_none_or(|&r| r <= row))
                .ok_or(Error::NotKohnertDiagram)?;
            available.remove(&label);
            here.insert(label, row);
            cells.insert((row, col), label);
        }
        right = here;
    }
    Ok(cells)
}

/// The canonical labeling `L_a(D)`. `Ok(None)` when some label lands below
/// its row, which happens exactly when `D ∉ KM(a)`.
pub fn kohnert_label(d: &Diagram, a: &WeakComposition) -> Result<Option<KohnertTableau>> {
    let cells = label_cells(d, a)?;
    if cells.iter().any(|(&(r, _), &l)| l < r) {
        return Ok(None);
    }
    Ok(Some(KohnertTableau {
        content: a.clone(),
        cells,
    }))
}

/// `KT(a)`, obtained by labeling every diagram of `KM(a)`.
pub fn enumerate_kt(a: &WeakComposition) -> Result<Vec<KohnertTableau>> {
    let mut out = Vec::new();
    for d in kohnert_closure(a) {
        match kohnert_label(&d, a)? {
            Some(t) => out.push(t),
            None => {
                return Err(Error::Internal(format!(
                    "closure element of KM({a}) failed to label"
                )))
            }
        }
    }
    sort_tableaux(&mut out);
    Ok(out)
}

/// Canonical listing order: by weight (reverse-lex, largest first), then cells.
pub fn sort_tableaux(ts: &mut [KohnertTableau]) {
    ts.sort_by(|x, y| canonical_cmp(x.weight().parts(), y.weight().parts()).then_with(|| x.cmp(y)));
}

/// Every nonempty row `i` contains an `i`, or row `i+1` has a cell weakly
/// right of some cell of row `i`.
pub fn is_quasi_yamanouchi(t: &KohnertTableau) -> bool {
    let mut rows: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (&(r, c), &l) in &t.cells {
        rows.entry(r).or_default().push((c, l));
    }
    rows.iter().all(|(&r, cells)| {
        if cells.iter().any(|&(_, l)| l == r) {
            return true;
        }
        let leftmost = cells.iter().map(|&(c, _)| c).min().unwrap_or(0);
        rows.get(&(r + 1))
            .is_some_and(|above| above.iter().any(|&(c, _)| c >= leftmost))
    })
}

/// Lifts a nonempty row `i` into row `i + 1` while every cell of row `i`
/// lies strictly right of every cell of row `i + 1` and the leftmost label
/// of row `i` exceeds `i`; repeats from the bottom until no row qualifies.
///
/// Rows are signed so that the same routine serves tableaux pushed below
/// row 1 during intermediate steps.
pub(crate) fn destandardize_cells(cells: &mut BTreeMap<(i64, usize), usize>) {
    loop {
        let mut rows: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (&(r, c), &l) in cells.iter() {
            rows.entry(r).or_default().push((c, l));
        }
        let lift = rows.iter().find_map(|(&r, row)| {
            let (left_col, left_label) = *row.iter().min_by_key(|&&(c, _)| c)?;
            let clear_above = rows
                .get(&(r + 1))
                .is_none_or(|above| above.iter().all(|&(c, _)| c < left_col));
            (clear_above && left_label as i64 > r).then_some(r)
        });
        let Some(r) = lift else { break };
        let moved: Vec<((i64, usize), usize)> = cells
            .range((r, 0)..(r + 1, 0))
            .map(|(&k, &v)| (k, v))
            .collect();
        for ((_, c), l) in moved {
            cells.remove(&(r, c));
            cells.insert((r + 1, c), l);
        }
    }
}

pub(crate) fn to_signed(t: &KohnertTableau) -> BTreeMap<(i64, usize), usize> {
    t.cells
        .iter()
        .map(|(&(r, c), &l)| ((r as i64, c), l))
        .collect()
}

/// Back to positive rows; `None` if any cell sits at row 0 or below.
pub(crate) fn from_signed(
    content: &WeakComposition,
    cells: &BTreeMap<(i64, usize), usize>,
) -> Option<KohnertTableau> {
    let mut out = BTreeMap::new();
    for (&(r, c), &l) in cells {
        if r < 1 {
            return None;
        }
        out.insert((r as usize, c), l);
    }
    Some(KohnertTableau {
        content: content.clone(),
        cells: out,
    })
}

/// The destandardization `dst(T)`, a quasi-Yamanouchi tableau.
pub fn destandardize(t: &KohnertTableau) -> KohnertTableau {
    let mut cells = to_signed(t);
    destandardize_cells(&mut cells);
    from_signed(&t.content, &cells).expect("lifting never lowers a row")
}

/// The unique `T` with `wt(T) = b` and `dst(T) = U`.
///
/// Each nonempty row of `U` is split right to left into blocks whose sizes
/// are the parts of `b` refining it, and the blocks drop to their rows.
pub fn destandardization_fiber(u: &KohnertTableau, b: &WeakComposition) -> Result<KohnertTableau> {
    if !is_quasi_yamanouchi(u) {
        return Err(Error::NotQuasiYamanouchi);
    }
    let wu = u.weight();
    if b.len() != wu.len() {
        return Err(Error::LengthMismatch {
            left: b.len(),
            right: wu.len(),
        });
    }
    if !dominates_slices(b.parts(), wu.parts()) {
        return Err(Error::Precondition(format!("{b} does not dominate {wu}")));
    }
    if !refines_slices(b.flatten().parts(), wu.flatten().parts()) {
        return Err(Error::Precondition(format!(
            "flat({b}) does not refine flat({wu})"
        )));
    }

    let mut targets = b
        .parts()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(i, &p)| (i + 1, p));
    let mut cells = BTreeMap::new();
    for (idx, &size) in wu.parts().iter().enumerate() {
        if size == 0 {
            continue;
        }
        let row = idx + 1;
        // right to left
        let mut source: Vec<(usize, usize)> = u.row(row);
        source.reverse();
        let mut taken = 0;
        while taken < size {
            let (target_row, count) = targets
                .next()
                .ok_or_else(|| Error::Internal("refinement ran out of parts".into()))?;
            if target_row > row {
                return Err(Error::Internal(format!(
                    "block for row {row} would rise to row {target_row}"
                )));
            }
            for &(c, l) in &source[taken..taken + count] {
                cells.insert((target_row, c), l);
            }
            taken += count;
        }
    }
    let t = KohnertTableau {
        content: u.content.clone(),
        cells,
    };
    if !validate_kt(&t) || destandardize(&t) != *u {
        return Err(Error::Internal(format!(
            "fiber element of weight {b} is not a Kohnert tableau over U"
        )));
    }
    Ok(t)
}

/// Column 1 strictly increases upward, and whenever `i` sits left of and
/// weakly above `j` in adjacent columns with `i < j`, `a_i ≥ a_j`.
pub fn is_quasi_kohnert(t: &KohnertTableau) -> bool {
    let a = t.content.parts();
    let first: Vec<usize> = t.column(1).into_iter().map(|(_, l)| l).collect();
    if first.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    for (&(r, c), &i) in &t.cells {
        for (rj, j) in t.column(c + 1) {
            if rj <= r && i < j && a[i - 1] < a[j - 1] {
                return false;
            }
        }
    }
    true
}

/// `QKT(a)`.
pub fn enumerate_qkt(a: &WeakComposition) -> Result<Vec<KohnertTableau>> {
    Ok(enumerate_kt(a)?
        .into_iter()
        .filter(is_quasi_yamanouchi)
        .collect())
}

/// `qKT(a)`, the quasi-Kohnert tableaux.
pub fn enumerate_quasi_kohnert(a: &WeakComposition) -> Result<Vec<KohnertTableau>> {
    Ok(enumerate_kt(a)?
        .into_iter()
        .filter(is_quasi_kohnert)
        .collect())
}

/// `QqKT(a)`, the quasi-Yamanouchi quasi-Kohnert tableaux.
pub fn enumerate_qqkt(a: &WeakComposition) -> Result<Vec<KohnertTableau>> {
    Ok(enumerate_kt(a)?
        .into_iter()
        .filter(|t| is_quasi_yamanouchi(t) && is_quasi_kohnert(t))
        .collect())
}

/// Greedy threading of a Kohnert diagram. Each thread lists its cells from
/// its starting column down to column 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreadDecomposition {
    pub threads: Vec<Vec<Cell>>,
}

impl ThreadDecomposition {
    /// Index of the thread containing `cell`.
    pub fn thread_of(&self, cell: Cell) -> Option<usize> {
        self.threads.iter().position(|t| t.contains(&cell))
    }

    /// Grid with each cell marked by its thread letter (`a`, `b`, …).
    pub fn render(&self, min_rows: usize) -> String {
        let cells: BTreeMap<Cell, String> = self
            .threads
            .iter()
            .enumerate()
            .flat_map(|(k, t)| {
                let tag = thread_tag(k);
                t.iter().map(move |&c| (c, tag.clone()))
            })
            .collect();
        render_grid(&cells, min_rows)
    }
}

fn thread_tag(k: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if k < letters.len() {
        (letters[k] as char).to_string()
    } else {
        format!("t{k}")
    }
}

/// Starts each thread at the lowest free cell of the rightmost column that
/// still has free cells, then extends left through the lowest free cell
/// weakly above the previous one.
pub fn thread_decompose(d: &Diagram) -> Result<ThreadDecomposition> {
    if !is_kohnert_diagram(d) {
        return Err(Error::NotKohnertDiagram);
    }
    let mut free: BTreeSet<(usize, usize)> = d.cells().map(|(r, c)| (c, r)).collect();
    let mut threads = Vec::new();
    while let Some(&(start_col, _)) = free.iter().next_back() {
        let &(_, start_row) = free
            .range((start_col, 0)..(start_col + 1, 0))
            .next()
            .expect("column has a free cell");
        free.remove(&(start_col, start_row));
        let mut thread = vec![(start_row, start_col)];
        let mut prev_row = start_row;
        for col in (1..start_col).rev() {
            let Some(&(_, row)) = free.range((col, prev_row)..(col + 1, 0)).next() else {
                break;
            };
            free.remove(&(col, row));
            thread.push((row, col));
            prev_row = row;
        }
        if thread.last().map(|&(_, c)| c) != Some(1) {
            return Err(Error::Internal(format!(
                "thread starting at ({start_row},{start_col}) stops before column 1"
            )));
        }
        threads.push(thread);
    }
    Ok(ThreadDecomposition { threads })
}

/// The thread map `θ`. Each thread is first labeled by the row of its
/// column-1 cell; the resulting content `c` is then moved onto the element
/// `b` of `Qlswap(a)` with `flat(b) = flat(c)`, the `k`-th nonzero position
/// of `c` relabeled as the `k`-th nonzero position of `b`.
pub fn thread_map(t: &KohnertTableau) -> Result<KohnertTableau> {
    let decomposition = thread_decompose(&t.diagram())?;
    let n = t.content.len().max(t.max_row());
    let mut rows = vec![0; n];
    for thread in &decomposition.threads {
        let &(row, _) = thread.last().expect("threads are nonempty");
        rows[row - 1] = thread.len();
    }
    let c = WeakComposition::new(rows);
    let b = qlswap_set(&t.content)
        .into_iter()
        .find(|b| b.flatten() == c.flatten())
        .ok_or_else(|| {
            Error::Internal(format!(
                "no element of Qlswap({}) flattens like ({c})",
                t.content
            ))
        })?;
    let from: Vec<usize> = (1..=n).filter(|&i| c.parts()[i - 1] > 0).collect();
    let to: Vec<usize> = (1..=b.len()).filter(|&i| b.parts()[i - 1] > 0).collect();
    let relabel: BTreeMap<usize, usize> = from.into_iter().zip(to).collect();
    let mut cells = BTreeMap::new();
    for thread in &decomposition.threads {
        let &(row, _) = thread.last().expect("threads are nonempty");
        for &cell in thread {
            cells.insert(cell, relabel[&row]);
        }
    }
    Ok(KohnertTableau { content: b, cells })
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::strategies::weak;
    use proptest::prelude::*;

    fn fills(
        cells: &[Cell],
        counts: &mut Vec<usize>,
        acc: &mut BTreeMap<Cell, usize>,
        out: &mut Vec<BTreeMap<Cell, usize>>,
    ) {
        let Some((&cell, rest)) = cells.split_first() else {
            out.push(acc.clone());
            return;
        };
        for label in 1..=counts.len() {
            if counts[label - 1] > 0 {
                counts[label - 1] -= 1;
                acc.insert(cell, label);
                fills(rest, counts, acc, out);
                acc.remove(&cell);
                counts[label - 1] += 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn labels_match_diagrams(a in weak(4, 6)) {
            let kt = enumerate_kt(&a).unwrap();
            let km = kohnert_closure(&a);
            prop_assert_eq!(kt.len(), km.len());
            for t in &kt {
                prop_assert!(validate_kt(t));
                let relabeled = kohnert_label(&t.diagram(), &a).unwrap();
                prop_assert_eq!(relabeled.as_ref(), Some(t));
            }
        }

        #[test]
        fn each_diagram_has_one_filling(a in weak(4, 5)) {
            for d in kohnert_closure(&a) {
                let cells: Vec<Cell> = d.cells().collect();
                let mut all = Vec::new();
                fills(&cells, &mut a.parts().to_vec(), &mut BTreeMap::new(), &mut all);
                let valid: Vec<_> = all
                    .into_iter()
                    .filter_map(|m| KohnertTableau::new(a.clone(), m).ok())
                    .filter(validate_kt)
                    .collect();
                prop_assert_eq!(valid.len(), 1);
            }
        }

        #[test]
        fn destandardization_laws(a in weak(4, 6)) {
            let kt = enumerate_kt(&a).unwrap();
            let qkt = enumerate_qkt(&a).unwrap();
            for t in &kt {
                let u = destandardize(t);
                prop_assert!(validate_kt(&u));
                prop_assert!(is_quasi_yamanouchi(&u));
                prop_assert_eq!(u.content(), t.content());
                prop_assert_eq!(&destandardize(&u), &u);
                prop_assert!(qkt.contains(&u));
                let (wt, wu) = (t.weight(), u.weight());
                prop_assert!(wt.dominates(&wu).unwrap());
                prop_assert!(wt.flatten().refines(&wu.flatten()));
                prop_assert_eq!(&destandardization_fiber(&u, &wt).unwrap(), t);
            }
            let trailing_zeros_only = a.parts().iter().skip_while(|&&p| p > 0).all(|&p| p == 0);
            prop_assert_eq!(kt.len() == qkt.len(), trailing_zeros_only);
        }

        #[test]
        fn thread_map_laws(a in weak(4, 6)) {
            let reps = qlswap_set(&a);
            let mut seen = BTreeSet::new();
            for t in enumerate_qkt(&a).unwrap() {
                let image = thread_map(&t).unwrap();
                prop_assert!(validate_kt(&image));
                prop_assert!(is_quasi_yamanouchi(&image));
                prop_assert!(is_quasi_kohnert(&image));
                prop_assert_eq!(image.weight(), t.weight());
                prop_assert!(reps.contains(image.content()));
                prop_assert!(seen.insert(image));
            }
        }

        #[test]
        fn adjacent_row_entries_weakly_increase(a in weak(4, 6)) {
            for t in enumerate_kt(&a).unwrap() {
                for ((r, c), l) in t.cells() {
                    if let Some(right) = t.label((r, c + 1)) {
                        prop_assert!(l <= right, "{} at ({},{})", t.render(), r, c);
                    }
                }
            }
        }

        #[test]
        fn records_round_trip(a in weak(4, 5)) {
            for t in enumerate_kt(&a).unwrap() {
                prop_assert_eq!(&KohnertTableau::from_record(&t.to_record()).unwrap(), &t);
                prop_assert_eq!(&KohnertTableau::from_grid(a.clone(), &t.render()).unwrap(), &t);
            }
        }
    }
}
