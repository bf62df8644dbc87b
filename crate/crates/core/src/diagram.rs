//! Cell diagrams in the positive quadrant, Kohnert moves and the closure
//! `KM(a)` of a key diagram under them.
//!
//! Rows are indexed from 1 at the bottom (French convention), columns from 1
//! at the left. A cell is a `(row, col)` pair.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{canonical_cmp, WeakComposition};
use crate::error::{Error, Result};

pub type Cell = (usize, usize);

/// A finite set of cells. Iteration order (and the serialized form) is the
/// sorted cell list, row-major from the bottom row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Diagram(BTreeSet<Cell>);

impl Diagram {
    pub fn new() -> Self {
        Diagram(BTreeSet::new())
    }

    /// Rejects cells with a zero coordinate.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self> {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        if let Some(&(r, c)) = set.iter().find(|&&(r, c)| r == 0 || c == 0) {
            return Err(Error::Precondition(format!(
                "cell ({r},{c}) lies outside the positive quadrant"
            )));
        }
        Ok(Diagram(set))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.0.contains(&cell)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_row(&self) -> usize {
        self.0.iter().map(|&(r, _)| r).max().unwrap_or(0)
    }

    pub fn max_col(&self) -> usize {
        self.0.iter().map(|&(_, c)| c).max().unwrap_or(0)
    }

    pub fn min_row(&self) -> Option<usize> {
        self.0.iter().map(|&(r, _)| r).min()
    }

    pub(crate) fn insert(&mut self, cell: Cell) -> bool {
        self.0.insert(cell)
    }

    pub(crate) fn remove(&mut self, cell: Cell) -> bool {
        self.0.remove(&cell)
    }

    /// Rows of cells in column `col`, ascending.
    pub fn column(&self, col: usize) -> Vec<usize> {
        self.0
            .iter()
            .filter(|&&(_, c)| c == col)
            .map(|&(r, _)| r)
            .collect()
    }

    /// Columns of cells in row `row`, ascending.
    pub fn row(&self, row: usize) -> Vec<usize> {
        self.0
            .range((row, 0)..(row + 1, 0))
            .map(|&(_, c)| c)
            .collect()
    }

    pub fn column_count(&self, col: usize) -> usize {
        self.0.iter().filter(|&&(_, c)| c == col).count()
    }

    /// Row counts as a weak composition of length `n`.
    pub fn weight(&self, n: usize) -> Result<WeakComposition> {
        let mut parts = vec![0; n];
        for &(r, _) in &self.0 {
            if r > n {
                return Err(Error::RowOutOfRange { row: r, bound: n });
            }
            parts[r - 1] += 1;
        }
        Ok(WeakComposition::new(parts))
    }

    /// Canonical text form: one `row,col` pair per line.
    pub fn to_pairs_text(&self) -> String {
        let mut s = String::new();
        for &(r, c) in &self.0 {
            s.push_str(&format!("{r},{c}\n"));
        }
        s
    }

    /// Grid rendering, top row first, `x` for a cell and `.` for a gap.
    /// At least `min_rows` rows are drawn.
    pub fn render(&self, min_rows: usize) -> String {
        let rows = self.max_row().max(min_rows);
        let cols = self.max_col().max(1);
        let mut out = String::new();
        for r in (1..=rows).rev() {
            let line: Vec<String> = (1..=cols)
                .map(|c| if self.contains((r, c)) { "x" } else { "." }.to_string())
                .collect();
            out.push_str(&grid_line(line));
            out.push('\n');
        }
        out
    }
}

/// Joins one grid row, dropping trailing gaps but keeping at least one token.
pub(crate) fn grid_line(mut tokens: Vec<String>) -> String {
    while tokens.len() > 1 && tokens.last().is_some_and(|t| t.trim() == ".") {
        tokens.pop();
    }
    tokens.join(" ")
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

/// `D_a`: `a_i` left-justified cells in row `i`.
pub fn key_diagram(a: &WeakComposition) -> Diagram {
    Diagram(
        a.parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |c| (i + 1, c)))
            .collect(),
    )
}

/// Moves the rightmost cell of `row` to the highest empty position below it
/// in its column. `None` when the row is empty or the column is full below.
pub fn kohnert_move(d: &Diagram, row: usize) -> Option<Diagram> {
    let &col = d.row(row).last()?;
    let target = (1..row).rev().find(|&r| !d.contains((r, col)))?;
    let mut next = d.clone();
    next.remove((row, col));
    next.insert((target, col));
    Some(next)
}

/// `KM(a)`: breadth-first closure of the key diagram under Kohnert moves,
/// returned in canonical order (by weight, then by cell list).
pub fn kohnert_closure(a: &WeakComposition) -> Vec<Diagram> {
    let start = key_diagram(a);
    let mut seen: HashSet<Diagram> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(d) = queue.pop_front() {
        for row in 1..=d.max_row() {
            if let Some(next) = kohnert_move(&d, row) {
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    let n = a.len();
    let mut out: Vec<Diagram> = seen.into_iter().collect();
    sort_diagrams(&mut out, n);
    out
}

pub(crate) fn sort_diagrams(ds: &mut [Diagram], n: usize) {
    ds.sort_by(|x, y| {
        let wx = x
            .weight(n.max(x.max_row()))
            .map(|w| w.into_parts())
            .unwrap_or_default();
        let wy = y
            .weight(n.max(y.max_row()))
            .map(|w| w.into_parts())
            .unwrap_or_default();
        canonical_cmp(&wx, &wy).then_with(|| x.cmp(y))
    });
}

/// Static Kohnert criterion: at every position `(i, j)` with `j > 1` the
/// number of cells weakly above it in column `j` is at most the number weakly
/// above `(i, j-1)` in column `j-1`.
pub fn is_kohnert_diagram(d: &Diagram) -> bool {
    let cols = d.max_col();
    let top = d.max_row();
    for j in 2..=cols {
        let right = d.column(j);
        let left = d.column(j - 1);
        // counts only change at occupied rows of column j
        for i in 1..=top {
            let above_right = right.iter().filter(|&&r| r >= i).count();
            let above_left = left.iter().filter(|&&r| r >= i).count();
            if above_right > above_left {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wc(s: &str) -> WeakComposition {
        s.parse().unwrap()
    }

    fn diag(cells: &[Cell]) -> Diagram {
        Diagram::from_cells(cells.iter().copied()).unwrap()
    }

    #[test]
    fn key_diagram_examples() {
        assert_eq!(
            key_diagram(&wc("0,3,2")),
            diag(&[(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
        );
        assert!(key_diagram(&wc("0,0")).is_empty());
        assert_eq!(key_diagram(&wc("2,1")), diag(&[(1, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn kohnert_move_examples() {
        let d = key_diagram(&wc("0,3,2"));
        assert_eq!(
            kohnert_move(&d, 2),
            Some(diag(&[(1, 3), (2, 1), (2, 2), (3, 1), (3, 2)]))
        );
        assert_eq!(kohnert_move(&d, 1), None);
        // jumps over the occupied (2,2)
        assert_eq!(
            kohnert_move(&d, 3),
            Some(diag(&[(1, 2), (2, 1), (2, 2), (2, 3), (3, 1)]))
        );
        // column full below
        assert_eq!(kohnert_move(&key_diagram(&wc("1,1")), 2), None);
    }

    #[test]
    fn closure_examples() {
        let km = kohnert_closure(&wc("0,3,2"));
        assert_eq!(km.len(), 9);
        assert!(km.iter().all(is_kohnert_diagram));
        assert_eq!(kohnert_closure(&wc("0,0,0")), vec![Diagram::new()]);
        assert_eq!(kohnert_closure(&wc("1,1")).len(), 1);
        assert_eq!(kohnert_closure(&wc("")), vec![Diagram::new()]);
    }

    #[test]
    fn criterion_examples() {
        assert!(is_kohnert_diagram(&Diagram::new()));
        assert!(!is_kohnert_diagram(&diag(&[(1, 2)])));
        // the (1,1,1) staircase: Kohnert, though not for (0,2,1)
        let stair = diag(&[(1, 1), (2, 2), (3, 1)]);
        assert!(is_kohnert_diagram(&stair));
        assert!(!kohnert_closure(&wc("0,2,1")).contains(&stair));
        assert!(kohnert_closure(&wc("0,0,2,1")).contains(&stair));
    }

    #[test]
    fn weight_examples() {
        let d = key_diagram(&wc("0,3,2"));
        assert_eq!(d.weight(3).unwrap(), wc("0,3,2"));
        let second = kohnert_move(&d, 2).unwrap();
        assert_eq!(second.weight(3).unwrap(), wc("1,2,2"));
        assert_eq!(Diagram::new().weight(2).unwrap(), wc("0,0"));
        assert_eq!(d.weight(2), Err(Error::RowOutOfRange { row: 3, bound: 2 }));
    }

    #[test]
    fn column_conservation_and_dominance() {
        for a in crate::composition::weak_compositions_up_to(3, 5) {
            let n = a.len();
            for d in kohnert_closure(&a) {
                for k in 1..=a.max_part() {
                    let expected = a.parts().iter().filter(|&&p| p >= k).count();
                    assert_eq!(d.column_count(k), expected);
                }
                let w = d.weight(n).unwrap();
                assert!(w.dominates(&a).unwrap());
                if w == a {
                    assert_eq!(d, key_diagram(&a));
                }
            }
        }
    }

    #[test]
    fn text_forms() {
        let d = diag(&[(1, 2), (2, 1)]);
        assert_eq!(d.to_pairs_text(), "1,2\n2,1\n");
        assert_eq!(d.render(3), ".\nx\n. x\n");
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, "[[1,2],[2,1]]");
        let back: Diagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::strategies::weak;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn closure_invariants(a in weak(4, 6)) {
            let km = kohnert_closure(&a);
            let n = a.len();
            for d in &km {
                prop_assert!(is_kohnert_diagram(d));
                for col in 1..=a.max_part() {
                    let expected = a.parts().iter().filter(|&&p| p >= col).count();
                    prop_assert_eq!(d.column_count(col), expected);
                }
                let w = d.weight(n).unwrap();
                prop_assert!(w.dominates(&a).unwrap());
                prop_assert_eq!(w == a, *d == key_diagram(&a));
                for row in 1..=d.max_row() {
                    if let Some(e) = kohnert_move(d, row) {
                        prop_assert!(km.contains(&e));
                    }
                }
            }
        }
    }
}
