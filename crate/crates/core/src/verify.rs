//! Verification suites shared by the command line and the test harness.
//!
//! Each suite runs named checks over a corpus and collects every failing
//! instance; a suite passes when no check has failures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::composition::{
    canonical_cmp, eta, lsort, lswap_set, qlswap_set, sigma, weak_compositions_up_to, Partition,
    StrongComposition, WeakComposition,
};
use crate::diagram::{kohnert_closure, Cell, Diagram};
use crate::error::{Error, Result};
use crate::expand::{
    fundamental_slide, key_polynomial, key_polynomial_from_tableaux, key_to_quasikeys,
    key_to_slides, quasi_key_polynomial, quasi_schur_polynomial, quasikey_to_slides,
    schur_polynomial, Basis, Expansion, SparseIntegerPolynomial,
};
use crate::kohnert::{
    destandardize, enumerate_kt, enumerate_qkt, enumerate_qqkt, enumerate_quasi_kohnert,
    is_quasi_yamanouchi, kohnert_label, label_cells, parse_grid, thread_decompose, thread_map,
    validate_kt, KohnertTableau,
};
use crate::qsym::{
    descent_composition, enumerate_qyt, enumerate_sct, enumerate_ssyt, is_qyt, kt_to_ssyt, phi,
    psi, quasischur_to_fundamentals, schur_to_fundamentals, sct_count, YoungTableau,
};
use crate::stability::{
    lowest_row, shift_expansion, spring_graph, spring_push, stability_point, stability_record,
    stable_slide_expansion, t_move, t_target, StabilityRecord,
};

/// One named property and the instances that violate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn entry(&mut self, name: &str) -> &mut Check {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.checks.push(Check {
                    name: name.to_string(),
                    instances: 0,
                    failures: Vec::new(),
                });
                self.checks.len() - 1
            }
        };
        &mut self.checks[pos]
    }

    pub fn record(&mut self, name: &str, instance: impl fmt::Display, ok: bool) {
        let check = self.entry(name);
        check.instances += 1;
        if !ok {
            check.failures.push(instance.to_string());
        }
    }

    /// Like [`Report::record`]; an error counts as a failure and its message
    /// is kept.
    pub fn record_result(&mut self, name: &str, instance: impl fmt::Display, r: Result<bool>) {
        match r {
            Ok(ok) => self.record(name, instance, ok),
            Err(e) => self.record(name, format!("{instance}: {e}"), false),
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            let e = self.entry(&c.name);
            e.instances += c.instances;
            e.failures.extend(c.failures);
        }
    }

    /// One line per check, then one indented line per failing instance.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            out.push_str(&format!("{status:<4} {} ({} checked", c.name, c.instances));
            if !c.passed() {
                out.push_str(&format!(", {} failed", c.failures.len()));
            }
            out.push_str(")\n");
            for f in &c.failures {
                out.push_str(&format!("     {f}\n"));
            }
        }
        out
    }
}

/// Every weak composition of length `1..=max_length` and weight at most
/// `max_weight`, shortest first and canonically ordered within a length.
pub fn corpus(max_weight: usize, max_length: usize) -> Vec<WeakComposition> {
    let mut out = Vec::new();
    for len in 1..=max_length {
        let mut level = weak_compositions_up_to(len, max_weight);
        level.sort_by(|a, b| canonical_cmp(a.parts(), b.parts()));
        out.extend(level);
    }
    out
}

fn label(a: &WeakComposition) -> String {
    format!("({a})")
}

/// Polynomial identities: the two constructions of `κ_a`, the slide and
/// quasi-key expansions, and unitriangularity.
pub fn identities(max_weight: usize, max_length: usize) -> Report {
    let mut rep = Report::default();
    for a in corpus(max_weight, max_length) {
        let id = label(&a);
        let kappa = key_polynomial(&a);
        rep.record_result(
            "key polynomial from diagrams equals key polynomial from tableaux",
            &id,
            key_polynomial_from_tableaux(&a).map(|p| p == kappa),
        );
        rep.record_result(
            "slides over QKT(a) sum to the key polynomial",
            &id,
            key_to_slides(&a)
                .and_then(|e| e.evaluate(a.len()))
                .map(|p| p == kappa),
        );
        let q = quasi_key_polynomial(&a);
        rep.record_result(
            "slides over QqKT(a) sum to the quasi-key polynomial",
            &id,
            q.as_ref()
                .map_err(Clone::clone)
                .and_then(|q| Ok(quasikey_to_slides(&a)?.evaluate(a.len())? == *q)),
        );
        rep.record_result(
            "quasi-keys over Qlswap(a) sum to the key polynomial",
            &id,
            key_to_quasikeys(&a).evaluate(a.len()).map(|p| p == kappa),
        );
        let unitriangular = |p: &SparseIntegerPolynomial| {
            p.dominance_minimal() == vec![a.parts().to_vec()] && p.coefficient(a.parts()) == 1
        };
        rep.record(
            "x^a is the dominance-minimal term of the key polynomial",
            &id,
            unitriangular(&kappa),
        );
        rep.record_result(
            "x^a is the dominance-minimal term of the quasi-key polynomial",
            &id,
            q.map(|q| unitriangular(&q)),
        );
    }
    rep
}

/// Symmetry of `κ_a` and quasisymmetry of `Q_a` in `x_1, …, x_k` for every
/// `k` past the last nonzero part.
pub fn symmetry(max_weight: usize, max_length: usize) -> Report {
    let mut rep = Report::default();
    for a in corpus(max_weight, max_length) {
        let n = a.len();
        let kappa = key_polynomial(&a);
        let q = match quasi_key_polynomial(&a) {
            Ok(q) => q,
            Err(e) => {
                rep.record(
                    "quasi-key polynomial computed",
                    format!("{}: {e}", label(&a)),
                    false,
                );
                continue;
            }
        };
        for k in a.last_nonzero().max(1)..=n {
            let id = format!("{} k={k}", label(&a));
            let prefix = WeakComposition::new(a.parts()[..k].to_vec());
            let symmetric = kappa.is_symmetric_in(k);
            rep.record(
                "key polynomial symmetric iff its prefix is weakly increasing",
                &id,
                symmetric == prefix.is_weakly_increasing(),
            );
            if symmetric {
                let ok = prefix
                    .rev_increasing()
                    .map(|lambda| schur_polynomial(&lambda, k) == kappa.restrict(k));
                rep.record_result(
                    "symmetric key polynomial equals a Schur polynomial",
                    &id,
                    ok,
                );
            }
            let quasi = q.is_quasisymmetric_in(k);
            rep.record(
                "quasi-key polynomial quasisymmetric iff nonzeros end at a_k",
                &id,
                quasi == prefix.nonzeros_form_terminal_interval(),
            );
            if quasi {
                let ok = if a.is_all_zero() {
                    Ok(q == SparseIntegerPolynomial::monomial(&vec![0; n]))
                } else {
                    quasi_schur_polynomial(&a.flatten(), k).map(|qs| qs == q.restrict(k))
                };
                rep.record_result(
                    "quasisymmetric quasi-key polynomial equals a quasi-Schur polynomial",
                    &id,
                    ok,
                );
            }
        }
    }
    rep
}

fn sum_weights<'a, I: IntoIterator<Item = &'a KohnertTableau>>(
    n: usize,
    ts: I,
) -> Result<SparseIntegerPolynomial> {
    let mut p = SparseIntegerPolynomial::zero(n);
    for t in ts {
        p.add_term(t.weight().parts(), 1)?;
    }
    Ok(p)
}

fn all_distinct<T: Ord, I: IntoIterator<Item = T>>(it: I) -> bool {
    let mut seen = BTreeSet::new();
    it.into_iter().all(|x| seen.insert(x))
}

/// Bijections: labeling, destandardization fibers, `θ`, `φ` and `ψ`.
pub fn bijections(max_weight: usize, max_length: usize) -> Report {
    let mut rep = Report::default();
    for a in corpus(max_weight, max_length) {
        let id = label(&a);
        let n = a.len();
        let kt = match enumerate_kt(&a) {
            Ok(kt) => kt,
            Err(e) => {
                rep.record("KT(a) enumerated", format!("{id}: {e}"), false);
                continue;
            }
        };
        rep.record(
            "#KT(a) equals #KM(a)",
            &id,
            kt.len() == kohnert_closure(&a).len(),
        );
        rep.record_result(
            "labeling the stripped diagram recovers every T in KT(a)",
            &id,
            kt.iter().try_fold(true, |ok, t| {
                Ok(ok && kohnert_label(&t.diagram(), &a)?.as_ref() == Some(t))
            }),
        );

        let mut fibers: BTreeMap<KohnertTableau, Vec<&KohnertTableau>> = BTreeMap::new();
        for t in &kt {
            fibers.entry(destandardize(t)).or_default().push(t);
        }
        let qkt = match enumerate_qkt(&a) {
            Ok(q) => q,
            Err(e) => {
                rep.record("QKT(a) enumerated", format!("{id}: {e}"), false);
                continue;
            }
        };
        rep.record(
            "dst maps KT(a) onto QKT(a)",
            &id,
            same_set(&fibers.keys().cloned().collect::<Vec<_>>(), &qkt),
        );
        rep.record(
            "dst is idempotent and keeps the content",
            &id,
            fibers
                .keys()
                .all(|u| destandardize(u) == *u && u.content() == &a),
        );
        rep.record_result(
            "each dst fiber sums to a single slide polynomial",
            &id,
            fibers.iter().try_fold(true, |ok, (u, fiber)| {
                Ok(ok && sum_weights(n, fiber.iter().copied())? == fundamental_slide(&u.weight()))
            }),
        );

        rep.record_result(
            "theta is injective, weight-preserving, onto the QqKT(b) for b in Qlswap(a)",
            &id,
            (|| {
                let images: Vec<KohnertTableau> =
                    qkt.iter().map(thread_map).collect::<Result<_>>()?;
                let weights = qkt
                    .iter()
                    .zip(&images)
                    .all(|(t, u)| t.weight() == u.weight());
                let mut target = BTreeSet::new();
                for b in qlswap_set(&a) {
                    target.extend(enumerate_qqkt(&b)?);
                }
                let image: BTreeSet<KohnertTableau> = images.iter().cloned().collect();
                Ok(weights && image.len() == images.len() && image == target)
            })(),
        );

        rep.record_result(
            "phi is injective and weight-reversing into QYT_n(sort(a))",
            &id,
            (|| {
                let shape = a.sort_decreasing();
                let mut ok = true;
                let mut images = Vec::new();
                for t in &qkt {
                    let y = phi(t)?;
                    let mut w: Vec<usize> = y.weight(y.max_entry()).into_parts();
                    w.reverse();
                    ok &= y.shape == shape && is_qyt(&y) && y.max_entry() <= n;
                    ok &= w == t.weight().flatten().parts();
                    images.push(y);
                }
                Ok(ok && all_distinct(images))
            })(),
        );

        rep.record_result(
            "psi is injective with Des(psi(T)) = flat(wt(T))",
            &id,
            (|| {
                let qqkt = enumerate_qqkt(&a)?;
                let mut ok = true;
                let mut images = Vec::new();
                for t in &qqkt {
                    let s = psi(t)?;
                    ok &= descent_composition(&s) == t.weight().flatten();
                    images.push(s);
                }
                Ok(ok && all_distinct(images))
            })(),
        );
    }
    rep
}

fn flat_multiset<'a, I: IntoIterator<Item = &'a KohnertTableau>>(ts: I) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = ts
        .into_iter()
        .map(|t| t.weight().flatten().parts().to_vec())
        .collect();
    v.sort();
    v
}

/// Stability of the slide expansions under prepending zeros, for `m` up to
/// `max(η, 0) + extra`. Also returns the per-composition records.
pub fn stability(
    max_weight: usize,
    max_length: usize,
    extra: usize,
) -> (Report, Vec<StabilityRecord>) {
    let mut rep = Report::default();
    let mut records = Vec::new();
    for a in corpus(max_weight, max_length) {
        let id = label(&a);
        let onset = stability_point(&a);
        let m_max = onset + extra;
        match stability_record(&a, extra) {
            Ok(r) => {
                rep.record(
                    "QKT counts rise strictly to a plateau at eta with value #SYT(sort(a))",
                    &id,
                    r.plateau_ok,
                );
                rep.record(
                    "spring graphs are connected from eta on",
                    &id,
                    r.connected_ok,
                );
                let first_stable = r
                    .profile
                    .windows(2)
                    .enumerate()
                    .all(|(m, w)| w[0] != w[1] || m >= onset);
                rep.record(
                    "the first repeated count is at or after eta",
                    &id,
                    first_stable,
                );
                records.push(r);
            }
            Err(e) => rep.record("stability record computed", format!("{id}: {e}"), false),
        }

        rep.record_result(
            "slide expansions past eta are zero-shifts of the one at eta",
            &id,
            (|| {
                let base = stable_slide_expansion(&a)?;
                let mut ok = true;
                for m in onset..=m_max {
                    ok &= key_to_slides(&a.prepend_zeros(m))? == shift_expansion(&base, m - onset);
                }
                Ok(ok)
            })(),
        );

        if a.is_all_zero() {
            continue;
        }
        rep.record_result(
            "lowest row of QKT(0^m a) is m - eta + 1 past eta",
            &id,
            (|| {
                let e = eta(&a);
                let mut ok = true;
                for m in onset..=m_max {
                    ok &= lowest_row(&a.prepend_zeros(m))? == Some((m as i64 - e + 1) as usize);
                }
                Ok(ok)
            })(),
        );

        let alpha = a.flatten();
        let mut des: Vec<Vec<usize>> = enumerate_sct(&alpha)
            .iter()
            .map(|s| descent_composition(s).parts().to_vec())
            .collect();
        des.sort();
        let lambda = a.sort_decreasing();
        let mut qyt: Vec<Vec<usize>> = enumerate_qyt(&lambda, lambda.weight())
            .iter()
            .map(|y| y.weight(lambda.weight()).flatten().parts().to_vec())
            .collect();
        qyt.sort();
        rep.record_result(
            "flat weights of QqKT(0^m a) past eta are the descents of SCT(flat(a))",
            &id,
            (|| {
                let mut ok = true;
                for m in onset..=m_max {
                    let qq = enumerate_qqkt(&a.prepend_zeros(m))?;
                    ok &= flat_multiset(&qq) == des && qq.len() as u64 == sct_count(&alpha);
                }
                Ok(ok)
            })(),
        );
        rep.record_result(
            "reversed flat weights of QKT(0^m a) past eta are the weights of QYT(sort(a))",
            &id,
            (|| {
                let mut ok = true;
                for m in onset..=m_max {
                    let mut rev: Vec<Vec<usize>> =
                        flat_multiset(&enumerate_qkt(&a.prepend_zeros(m))?)
                            .into_iter()
                            .map(|mut w| {
                                w.reverse();
                                w
                            })
                            .collect();
                    rev.sort();
                    ok &= rev == qyt;
                }
                Ok(ok)
            })(),
        );

        let padded = a.prepend_zeros(onset);
        rep.record_result(
            "spring pushes move the lowest row by at most one",
            &id,
            (|| {
                let g = spring_graph(&padded)?;
                Ok(g.edges.iter().all(|&(u, v)| {
                    let (x, y) = (g.vertices[u].min_row(), g.vertices[v].min_row());
                    matches!((x, y), (Some(x), Some(y)) if x.abs_diff(y) <= 1)
                }))
            })(),
        );

        let len = padded.len();
        for i in 2..=len {
            for j in i + 1..=len {
                let Ok(b) = t_target(&padded, i, j) else {
                    continue;
                };
                let tid = format!("({padded}) i={i} j={j}");
                rep.record_result(
                    "t_ij is injective into QKT(b) and keeps the lowest row",
                    &tid,
                    (|| {
                        let source = enumerate_qkt(&padded)?;
                        let target: BTreeSet<KohnertTableau> =
                            enumerate_qkt(&b)?.into_iter().collect();
                        let images: Vec<KohnertTableau> = source
                            .iter()
                            .map(|t| t_move(t, i, j))
                            .collect::<Result<_>>()?;
                        Ok(images.iter().all(|u| target.contains(u))
                            && all_distinct(images.iter())
                            && lowest_row(&padded)? == lowest_row(&b)?)
                    })(),
                );
            }
        }
    }
    (rep, records)
}

/// The figures, drawn top row first with `.` for gaps. `*` marks a circled
/// cell, `#` a boxed one, and a trailing letter a thread.
pub const FIGURES: &str = include_str!("../golden/figures.txt");

/// A named list of grids from [`FIGURES`].
#[derive(Debug, Clone)]
pub struct Figure {
    pub name: String,
    pub arg: String,
    pub grids: Vec<String>,
}

pub fn figures() -> Vec<Figure> {
    let mut out: Vec<Figure> = Vec::new();
    let mut grid = String::new();
    for line in FIGURES.lines().chain(std::iter::once("")) {
        let line = line.trim_end();
        if let Some(head) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let (name, arg) = head.split_once(' ').unwrap_or((head, ""));
            out.push(Figure {
                name: name.to_string(),
                arg: arg.to_string(),
                grids: Vec::new(),
            });
        } else if line.is_empty() {
            if !grid.is_empty() {
                if let Some(f) = out.last_mut() {
                    f.grids.push(std::mem::take(&mut grid));
                }
            }
        } else {
            grid.push_str(line);
            grid.push('\n');
        }
    }
    out
}

fn figure(name: &str, arg: &str) -> Result<Figure> {
    figures()
        .into_iter()
        .find(|f| f.name == name && f.arg == arg)
        .ok_or_else(|| Error::Internal(format!("no figure [{name} {arg}]")))
}

/// Cells of a grid with markers split off the labels.
fn marked_cells(text: &str) -> Result<BTreeMap<Cell, (usize, String)>> {
    parse_grid(text)?
        .into_iter()
        .map(|(cell, tok)| {
            let digits: String = tok.chars().take_while(char::is_ascii_digit).collect();
            let mark = tok[digits.len()..].to_string();
            let l = digits.parse::<usize>().map_err(|e| Error::Parse {
                input: tok.clone(),
                reason: e.to_string(),
            })?;
            Ok((cell, (l, mark)))
        })
        .collect()
}

fn marked(text: &str, mark: &str) -> Result<Vec<Cell>> {
    Ok(marked_cells(text)?
        .into_iter()
        .filter(|(_, (_, m))| m == mark)
        .map(|(c, _)| c)
        .collect())
}

fn grid_tableau(content: &WeakComposition, text: &str) -> Result<KohnertTableau> {
    let cells = marked_cells(text)?
        .into_iter()
        .map(|(c, (l, _))| (c, l))
        .collect();
    KohnertTableau::new(content.clone(), cells)
}

/// Tableau whose content is read off the label counts, padded to `n`.
fn counted_tableau(n: usize, text: &str) -> Result<KohnertTableau> {
    let cells: BTreeMap<Cell, usize> = marked_cells(text)?
        .into_iter()
        .map(|(c, (l, _))| (c, l))
        .collect();
    let mut content = vec![0; n.max(cells.values().copied().max().unwrap_or(0))];
    for &l in cells.values() {
        content[l - 1] += 1;
    }
    KohnertTableau::new(WeakComposition::new(content), cells)
}

fn grid_diagram(text: &str) -> Result<Diagram> {
    Diagram::from_cells(parse_grid(text)?.into_keys())
}

fn figure_tableaux(name: &str, a: &str) -> Result<Vec<KohnertTableau>> {
    let content: WeakComposition = a.parse()?;
    figure(name, a)?
        .grids
        .iter()
        .map(|g| grid_tableau(&content, g))
        .collect()
}

fn same_set<T: Ord + Clone>(x: &[T], y: &[T]) -> bool {
    x.len() == y.len()
        && x.iter().cloned().collect::<BTreeSet<_>>() == y.iter().cloned().collect::<BTreeSet<_>>()
}

/// A figure of tableaux matches an enumeration as a set, and each drawn
/// grid is exactly what the renderer prints.
fn tableau_figure(
    name: &str,
    a: &str,
    family: fn(&WeakComposition) -> Result<Vec<KohnertTableau>>,
) -> Result<bool> {
    let drawn = figure_tableaux(name, a)?;
    let grids = figure(name, a)?.grids;
    let pinned = drawn.iter().zip(&grids).all(|(t, g)| t.render() == *g);
    Ok(pinned && drawn.iter().all(validate_kt) && same_set(&drawn, &family(&a.parse()?)?))
}

fn wc(s: &str) -> WeakComposition {
    s.parse().expect("literal composition")
}

/// Compositions written digit by digit, as in `032`.
fn digits(s: &str) -> Vec<usize> {
    s.chars()
        .map(|c| c.to_digit(10).expect("digit") as usize)
        .collect()
}

fn poly(terms: &[(i64, &str)]) -> SparseIntegerPolynomial {
    let n = terms.first().map_or(0, |t| t.1.len());
    let mut p = SparseIntegerPolynomial::zero(n);
    for &(c, e) in terms {
        p.add_term(&digits(e), c).expect("literal polynomial");
    }
    p
}

fn expansion(basis: Basis, indices: &[&str]) -> Expansion {
    Expansion::from_indices(basis, indices.iter().map(|s| digits(s)))
}

fn young(text: &str) -> Result<YoungTableau> {
    YoungTableau::new(young_rows(text)?)
}

/// Replays every figure and displayed example.
pub fn golden() -> Report {
    let mut rep = Report::default();
    let mut check = |name: &str, r: Result<bool>| rep.record_result(name, "figure", r);

    check(
        "KM(0,3,2): the nine drawn diagrams",
        (|| {
            let f = figure("km", "0,3,2")?;
            let drawn: Vec<Diagram> = f
                .grids
                .iter()
                .map(|g| grid_diagram(g))
                .collect::<Result<_>>()?;
            let pinned = drawn.iter().zip(&f.grids).all(|(d, g)| d.render(3) == *g);
            Ok(pinned && drawn.len() == 9 && same_set(&drawn, &kohnert_closure(&wc("0,3,2"))))
        })(),
    );
    check(
        "kappa_032 monomials",
        Ok(key_polynomial(&wc("0,3,2"))
            == poly(&[
                (1, "032"),
                (1, "122"),
                (1, "212"),
                (1, "302"),
                (1, "221"),
                (1, "311"),
                (1, "320"),
                (1, "131"),
                (1, "230"),
            ])),
    );
    check(
        "KT(0,3,2): the nine drawn tableaux",
        tableau_figure("kt", "0,3,2", enumerate_kt),
    );
    check(
        "labeling of a diagram in KM(0,4,0,2,4,1)",
        (|| {
            let a = wc("0,4,0,2,4,1");
            let d = grid_diagram(&figure("label-diagram", "0,4,0,2,4,1")?.grids[0])?;
            let want = grid_tableau(&a, &figure("label", "0,4,0,2,4,1")?.grids[0])?;
            Ok(kohnert_label(&d, &a)? == Some(want))
        })(),
    );
    for a in ["0,2,1", "0,0,2,1"] {
        check(
            &format!("labeling with ({a}) drawn in the labeling-failure figure"),
            (|| {
                let content = wc(a);
                let d = grid_diagram(&figure("raw-label-diagram", a)?.grids[0])?;
                let want = grid_tableau(&content, &figure("raw-label", a)?.grids[0])?;
                let raw = label_cells(&d, &content)?;
                let fails_ii = raw.iter().any(|(&(r, _), &l)| l < r);
                let in_km = kohnert_closure(&content).contains(&d);
                Ok(raw == want.cells().collect::<BTreeMap<_, _>>()
                    && fails_ii == !in_km
                    && kohnert_label(&d, &content)?.is_some() == in_km)
            })(),
        );
    }
    check(
        "QKT(0,3,2): the four drawn tableaux",
        tableau_figure("qkt", "0,3,2", enumerate_qkt),
    );
    check(
        "F_032 monomials",
        Ok(fundamental_slide(&wc("0,3,2"))
            == poly(&[
                (1, "032"),
                (1, "122"),
                (1, "212"),
                (1, "302"),
                (1, "311"),
                (1, "320"),
            ])),
    );
    check(
        "kappa_032 = F_032 + F_221 + F_131 + F_230",
        key_to_slides(&wc("0,3,2"))
            .map(|e| e == expansion(Basis::FundamentalSlide, &["032", "221", "131", "230"])),
    );
    check(
        "destandardization example",
        (|| {
            let g = figure_tableaux("dst", "0,0,1,4,2,1,0,3")?;
            Ok(validate_kt(&g[0]) && is_quasi_yamanouchi(&g[1]) && destandardize(&g[0]) == g[1])
        })(),
    );
    check(
        "qKT(0,3,2): the eight drawn tableaux",
        tableau_figure("qkohnert", "0,3,2", enumerate_quasi_kohnert),
    );
    check(
        "Q_032 monomials",
        quasi_key_polynomial(&wc("0,3,2")).map(|q| {
            q == poly(&[
                (1, "032"),
                (1, "122"),
                (1, "212"),
                (1, "302"),
                (1, "221"),
                (1, "311"),
                (1, "320"),
                (1, "131"),
            ])
        }),
    );
    check(
        "QqKT(0,0,3,2): the three drawn tableaux",
        tableau_figure("qqkt", "0,0,3,2", enumerate_qqkt),
    );
    check(
        "QqKT(0,2,3,0): the two drawn tableaux",
        tableau_figure("qqkt", "0,2,3,0", enumerate_qqkt),
    );
    check(
        "Q_0032 = F_0032 + F_0221 + F_0131",
        quasikey_to_slides(&wc("0,0,3,2"))
            .map(|e| e == expansion(Basis::FundamentalSlide, &["0032", "0221", "0131"])),
    );
    check(
        "Q_0230 = F_0230 + F_1220",
        quasikey_to_slides(&wc("0,2,3,0"))
            .map(|e| e == expansion(Basis::FundamentalSlide, &["0230", "1220"])),
    );
    check(
        "Q_0032 + Q_0230 = kappa_0032",
        (|| {
            let mut sum = quasi_key_polynomial(&wc("0,0,3,2"))?;
            sum.add_assign(&quasi_key_polynomial(&wc("0,2,3,0"))?)?;
            Ok(sum == key_polynomial(&wc("0,0,3,2")))
        })(),
    );
    check(
        "lswap(0,2,3,2)",
        Ok(same_set(
            &lswap_set(&wc("0,2,3,2")),
            &[
                "0,2,3,2", "2,0,3,2", "2,3,0,2", "2,3,2,0", "0,3,2,2", "3,0,2,2", "3,2,0,2",
                "3,2,2,0", "2,2,3,0",
            ]
            .map(wc),
        )),
    );
    check(
        "Qlswap(0,2,3,2)",
        Ok(same_set(
            &qlswap_set(&wc("0,2,3,2")),
            &["0,2,3,2", "0,3,2,2", "2,2,3,0"].map(wc),
        )),
    );
    check(
        "kappa_0232 = Q_0232 + Q_0322 + Q_2230",
        Ok(key_to_quasikeys(&wc("0,2,3,2"))
            == expansion(Basis::QuasiKey, &["0232", "0322", "2230"])),
    );
    check(
        "thread decompositions of QKT(0,2,3,2)",
        (|| {
            let f = figure("threads", "0,2,3,2")?;
            let drawn: Vec<KohnertTableau> = f
                .grids
                .iter()
                .map(|g| grid_tableau(&wc("0,2,3,2"), g))
                .collect::<Result<_>>()?;
            let mut ok = same_set(&drawn, &enumerate_qkt(&wc("0,2,3,2"))?);
            for (t, g) in drawn.iter().zip(&f.grids) {
                let mut want: BTreeMap<String, BTreeSet<Cell>> = BTreeMap::new();
                for (cell, (_, tag)) in marked_cells(g)? {
                    want.entry(tag).or_default().insert(cell);
                }
                let want: BTreeSet<BTreeSet<Cell>> = want.into_values().collect();
                let got: BTreeSet<BTreeSet<Cell>> = thread_decompose(&t.diagram())?
                    .threads
                    .into_iter()
                    .map(|th| th.into_iter().collect())
                    .collect();
                ok &= want == got;
            }
            Ok(ok)
        })(),
    );
    check(
        "thread map images of QKT(0,2,3,2)",
        (|| {
            let src = figure_tableaux("threads", "0,2,3,2")?;
            let img: Vec<KohnertTableau> = figure("theta", "0,2,3,2")?
                .grids
                .iter()
                .map(|g| counted_tableau(4, g))
                .collect::<Result<_>>()?;
            let mut ok = src.len() == img.len();
            for (t, u) in src.iter().zip(&img) {
                ok &= thread_map(t)? == *u;
            }
            Ok(ok)
        })(),
    );
    check(
        "SSYT_3(3,2): the fifteen drawn tableaux",
        (|| {
            let drawn: Vec<YoungTableau> = figure("ssyt", "3,2 3")?
                .grids
                .iter()
                .map(|g| young(g))
                .collect::<Result<_>>()?;
            let lambda = Partition::new(vec![3, 2])?;
            Ok(drawn.len() == 15 && same_set(&drawn, &enumerate_ssyt(&lambda, 3)))
        })(),
    );
    check(
        "s_32(x1,x2,x3) coefficients",
        Ok(
            schur_polynomial(&Partition::new(vec![3, 2]).expect("partition"), 3)
                == poly(&[
                    (1, "230"),
                    (2, "221"),
                    (2, "212"),
                    (1, "203"),
                    (2, "122"),
                    (1, "113"),
                    (1, "023"),
                    (1, "131"),
                    (1, "032"),
                    (1, "320"),
                    (1, "311"),
                    (1, "302"),
                ]),
        ),
    );
    check(
        "KT(0,2,3) corresponds entrywise to SSYT_3(3,2)",
        (|| {
            let kt = figure_tableaux("kt", "0,2,3")?;
            let ssyt: Vec<YoungTableau> = figure("ssyt", "3,2 3")?
                .grids
                .iter()
                .map(|g| young(g))
                .collect::<Result<_>>()?;
            let mut ok = kt.len() == 15 && same_set(&kt, &enumerate_kt(&wc("0,2,3"))?);
            for (t, y) in kt.iter().zip(&ssyt) {
                ok &= kt_to_ssyt(t, 3)? == *y;
            }
            Ok(ok)
        })(),
    );
    check(
        "QKT(0,0,3,2): the five drawn tableaux",
        tableau_figure("qkt", "0,0,3,2", enumerate_qkt),
    );
    check(
        "QYT(3,2): the five drawn tableaux, and phi onto them",
        (|| {
            let lambda = Partition::new(vec![3, 2])?;
            let drawn: Vec<YoungTableau> = figure("qyt", "3,2")?
                .grids
                .iter()
                .map(|g| young(g))
                .collect::<Result<_>>()?;
            let images: Vec<YoungTableau> = enumerate_qkt(&wc("0,0,3,2"))?
                .iter()
                .map(phi)
                .collect::<Result<_>>()?;
            Ok(drawn.len() == 5
                && same_set(&drawn, &enumerate_qyt(&lambda, 4))
                && same_set(&drawn, &images))
        })(),
    );
    check(
        "kappa_0032 = F_0032 + F_0221 + F_0131 + F_0230 + F_1220",
        key_to_slides(&wc("0,0,3,2")).map(|e| {
            e == expansion(
                Basis::FundamentalSlide,
                &["0032", "0221", "0131", "0230", "1220"],
            )
        }),
    );
    check(
        "s_32 = F_23 + F_122 + F_131 + F_32 + F_221",
        schur_to_fundamentals(&Partition::new(vec![3, 2]).expect("partition"), 5)
            .map(|e| e == expansion(Basis::FundamentalQsym, &["23", "122", "131", "32", "221"])),
    );
    check(
        "phi example",
        (|| {
            let f = figure("phi", "1,3,1,0,4,0,2")?;
            let t = grid_tableau(&wc("1,3,1,0,4,0,2"), &f.grids[0])?;
            // the middle step labels each cell by the rank of its row, counted
            // from the top among nonempty rows
            let rows: BTreeSet<usize> = t.cells().map(|((r, _), _)| r).collect();
            let ranked: BTreeMap<Cell, usize> = t
                .cells()
                .map(|((r, c), _)| ((r, c), rows.range(r..).count()))
                .collect();
            let middle: BTreeMap<Cell, usize> = marked_cells(&f.grids[1])?
                .into_iter()
                .map(|(c, (l, _))| (c, l))
                .collect();
            Ok(is_quasi_yamanouchi(&t) && ranked == middle && phi(&t)? == young(&f.grids[2])?)
        })(),
    );
    check(
        "QqKT(0,0,2,3,2): the seven drawn tableaux",
        tableau_figure("qqkt", "0,0,2,3,2", enumerate_qqkt),
    );
    check(
        "Q_232 = F_232",
        quasikey_to_slides(&wc("2,3,2")).map(|e| e == expansion(Basis::FundamentalSlide, &["232"])),
    );
    check(
        "Q_0232 slide expansion",
        quasikey_to_slides(&wc("0,2,3,2")).map(|e| {
            e == expansion(
                Basis::FundamentalSlide,
                &["0232", "1222", "2221", "1231", "2131"],
            )
        }),
    );
    check(
        "Q_00232 slide expansion",
        quasikey_to_slides(&wc("0,0,2,3,2")).map(|e| {
            e == expansion(
                Basis::FundamentalSlide,
                &[
                    "00232", "01222", "02221", "01231", "02131", "12121", "11221",
                ],
            )
        }),
    );
    check(
        "Q_0^m232 slide expansion for m = 2, 3, 4",
        (|| {
            let mut ok = true;
            for m in 2..=4usize {
                let pad = |k: usize, s: &str| {
                    let mut v = vec![0; k];
                    v.extend(digits(s));
                    v
                };
                let want = Expansion::from_indices(
                    Basis::FundamentalSlide,
                    vec![
                        pad(m, "232"),
                        pad(m - 1, "1222"),
                        pad(m - 1, "2221"),
                        pad(m - 1, "1231"),
                        pad(m - 1, "2131"),
                        pad(m - 2, "12121"),
                        pad(m - 2, "11221"),
                    ],
                );
                ok &= quasikey_to_slides(&wc("2,3,2").prepend_zeros(m))? == want;
            }
            Ok(ok)
        })(),
    );
    check(
        "SCT(2,3,2): the seven drawn tableaux and their descents",
        (|| {
            let alpha = StrongComposition::new(vec![2, 3, 2])?;
            let drawn: Vec<Vec<Vec<usize>>> = figure("sct", "2,3,2")?
                .grids
                .iter()
                .map(|g| young_rows(g))
                .collect::<Result<_>>()?;
            let all = enumerate_sct(&alpha);
            let want_des = ["232", "1222", "2221", "1231", "2131", "12121", "11221"];
            let mut ok = drawn.len() == 7 && all.len() == 7;
            for (rows, des) in drawn.iter().zip(want_des) {
                match all.iter().find(|s| s.rows == *rows) {
                    Some(s) => ok &= descent_composition(s).parts() == digits(des),
                    None => ok = false,
                }
            }
            Ok(ok)
        })(),
    );
    check(
        "QS_(2,3,2) expansion",
        Ok(quasischur_to_fundamentals(
            &StrongComposition::new(vec![2, 3, 2]).expect("composition"),
        ) == expansion(
            Basis::FundamentalQsym,
            &["232", "1222", "2221", "1231", "2131", "12121", "11221"],
        )),
    );
    check(
        "psi maps QqKT(0,0,2,3,2) onto SCT(2,3,2)",
        (|| {
            let images: Vec<_> = enumerate_qqkt(&wc("0,0,2,3,2"))?
                .iter()
                .map(psi)
                .collect::<Result<_>>()?;
            Ok(same_set(
                &images,
                &enumerate_sct(&StrongComposition::new(vec![2, 3, 2])?),
            ))
        })(),
    );
    check(
        "sigma, eta and lsort examples",
        Ok({
            let a = wc("0,0,2,0,0,0,4,1,0,3,2");
            let b = wc("0,3,0,2,2");
            sigma(&a) == -1
                && sigma(&b) == 1
                && eta(&a) == 3
                && eta(&b) == 3
                && lsort(&a) == Some(wc("0,1,2,0,2,3,4,0,0,0,0"))
                && lsort(&b).is_none()
        }),
    );
    check(
        "t_5,7 target",
        t_target(&wc("0,2,0,1,3,4,2,1"), 5, 7).map(|b| b == wc("0,2,1,2,3,4,0,1")),
    );
    check(
        "t_3,4 on QKT(0,0,3,2)",
        (|| {
            let src = figure_tableaux("qkt", "0,0,3,2")?;
            let img: Vec<KohnertTableau> = figure("t34", "0,0,3,2")?
                .grids
                .iter()
                .map(|g| grid_tableau(&wc("0,2,3,0"), g))
                .collect::<Result<_>>()?;
            let mut ok = src.len() == img.len();
            for (t, u) in src.iter().zip(&img) {
                ok &= t_move(t, 3, 4)? == *u;
            }
            Ok(ok)
        })(),
    );
    for k in ["1", "2"] {
        check(
            &format!("spring-loaded push example {k}"),
            (|| {
                let f = figure("spring-push", k)?;
                let t = counted_tableau(9, &f.grids[0])?;
                let u = counted_tableau(9, &f.grids[2])?;
                let c = marked(&f.grids[0], "*")?;
                let row = c
                    .first()
                    .map(|c| c.0)
                    .ok_or_else(|| Error::Internal("no circled cell".into()))?;
                Ok(spring_push(&t, row)? == Some(u))
            })(),
        );
    }
    for a in ["0,0,3,0,2,5", "0,0,3,0,2,1"] {
        check(
            &format!("unspring example with content ({a})"),
            (|| {
                let g = figure_tableaux("unspring", a)?;
                let (t, u1, u) = (&g[0], &g[1], &g[2]);
                let row = marked(&figure("unspring", a)?.grids[2], "*")?[0].0;
                Ok(validate_kt(u1)
                    && destandardize(u1) == *u
                    && is_quasi_yamanouchi(t)
                    && spring_push(u, row)? == Some(t.clone()))
            })(),
        );
    }
    let graph = (|| {
        let f = figure("spring-graph", "0,0,3,2")?;
        let a = wc("0,0,3,2");
        let drawn: Vec<KohnertTableau> = f
            .grids
            .iter()
            .map(|g| grid_tableau(&a, g))
            .collect::<Result<_>>()?;
        let rows: Vec<usize> = f
            .grids
            .iter()
            .map(|g| Ok(marked(g, "*")?.first().map_or(0, |c| c.0)))
            .collect::<Result<_>>()?;
        Ok((drawn, rows))
    })();
    match graph {
        Ok((drawn, rows)) => {
            check(
                "spring graph on QKT(0,0,3,2): vertices and connectivity",
                (|| {
                    let g = spring_graph(&wc("0,0,3,2"))?;
                    Ok(same_set(&drawn, &g.vertices) && g.is_connected())
                })(),
            );
            for k in 0..drawn.len().saturating_sub(1) {
                let name = format!("spring graph on QKT(0,0,3,2): arrow {} -> {}", k + 1, k + 2);
                match spring_push(&drawn[k], rows[k]) {
                    Ok(u) => {
                        let got = u.as_ref().map_or("none".to_string(), one_line);
                        let detail = format!(
                            "push of {} in row {} gives {got}, drawn {}",
                            one_line(&drawn[k]),
                            rows[k],
                            one_line(&drawn[k + 1])
                        );
                        rep.record(&name, detail, u.as_ref() == Some(&drawn[k + 1]));
                    }
                    Err(e) => rep.record_result(&name, "figure", Err(e)),
                }
            }
        }
        Err(e) => check("spring graph on QKT(0,0,3,2)", Err(e)),
    }
    rep
}

/// A tableau on one line, rows top first separated by `/`.
fn one_line(t: &KohnertTableau) -> String {
    t.render().lines().collect::<Vec<_>>().join(" / ")
}

fn young_rows(text: &str) -> Result<Vec<Vec<usize>>> {
    let cells = marked_cells(text)?;
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ((r, _), (l, _)) in cells {
        rows.entry(r).or_default().push(l);
    }
    Ok(rows.into_values().collect())
}
