//! Exact sparse polynomials and expansions into the monomial, fundamental
//! slide, quasi-key and fundamental quasisymmetric bases.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::composition::{
    canonical_cmp, dominates_slices, qlswap_set, refines_slices, weak_compositions_of, Partition,
    StrongComposition, WeakComposition,
};
use crate::diagram::kohnert_closure;
use crate::error::{Error, Result};
use crate::kohnert::{enumerate_kt, enumerate_qkt, enumerate_qqkt, enumerate_quasi_kohnert};
use crate::qsym::{enumerate_ssyt, quasischur_to_fundamentals};

fn checked_sum(x: i64, y: i64) -> i64 {
    x.checked_add(y)
        .unwrap_or_else(|| panic!("coefficient overflow adding {x} and {y}"))
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim().parse::<usize>().map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Splits `"+ 3 x^{1,2}"` into its signed coefficient and the braced list.
fn parse_term_line(line: &str, head: &str) -> Result<(i64, Vec<usize>)> {
    let err = |reason: &str| Error::Parse {
        input: line.to_string(),
        reason: reason.to_string(),
    };
    let mut words = line.split_whitespace();
    let sign = match words.next() {
        Some("+") => 1,
        Some("-") => -1,
        _ => return Err(err("expected a leading + or -")),
    };
    let coeff: i64 = words
        .next()
        .ok_or_else(|| err("missing coefficient"))?
        .parse()
        .map_err(|_| err("bad coefficient"))?;
    let body = words.next().ok_or_else(|| err("missing term"))?;
    if words.next().is_some() {
        return Err(err("trailing text"));
    }
    let inner = body
        .strip_prefix(head)
        .and_then(|b| b.strip_prefix('{'))
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| err("malformed term"))?;
    Ok((sign * coeff, parse_usize_list(inner)?))
}

/// A polynomial in `x_1, …, x_n` with integer coefficients, stored as a map
/// from exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntegerPolynomial {
    n: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub coeff: i64,
    pub exponents: Vec<usize>,
}

impl SparseIntegerPolynomial {
    pub fn zero(n: usize) -> Self {
        SparseIntegerPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponents: &[usize]) -> Self {
        let mut p = Self::zero(exponents.len());
        p.terms.insert(exponents.to_vec(), 1);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, exponents: &[usize]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: &[usize], coeff: i64) -> Result<()> {
        if exponents.len() != self.n {
            return Err(Error::LengthMismatch {
                left: exponents.len(),
                right: self.n,
            });
        }
        if coeff == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(exponents.to_vec()).or_insert(0);
        *entry = checked_sum(*entry, coeff);
        if *entry == 0 {
            self.terms.remove(exponents);
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &SparseIntegerPolynomial) -> Result<()> {
        if other.n != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        for (e, &c) in &other.terms {
            self.add_term(e, c)?;
        }
        Ok(())
    }

    pub fn scaled(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|_| k != 0)
            .map(|(e, &c)| {
                let v = c
                    .checked_mul(k)
                    .unwrap_or_else(|| panic!("coefficient overflow scaling {c} by {k}"));
                (e.clone(), v)
            })
            .collect();
        SparseIntegerPolynomial { n: self.n, terms }
    }

    /// Terms in canonical order: reverse-lexicographically largest exponent
    /// vector first.
    pub fn terms(&self) -> Vec<(&[usize], i64)> {
        let mut v: Vec<(&[usize], i64)> =
            self.terms.iter().map(|(e, &c)| (e.as_slice(), c)).collect();
        v.sort_by(|x, y| canonical_cmp(x.0, y.0));
        v
    }

    /// Exponent vectors that no other exponent of the polynomial lies
    /// strictly below in dominance order.
    pub fn dominance_minimal(&self) -> Vec<Vec<usize>> {
        self.terms
            .keys()
            .filter(|e| !self.terms.keys().any(|f| f != *e && dominates_slices(e, f)))
            .cloned()
            .collect()
    }

    /// Sets `x_{k+1}, …, x_n` to zero and drops them.
    pub fn restrict(&self, k: usize) -> Self {
        let k = k.min(self.n);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[k..].iter().all(|&x| x == 0))
            .map(|(e, &c)| (e[..k].to_vec(), c))
            .collect();
        SparseIntegerPolynomial { n: k, terms }
    }

    /// Whether every term lives in `x_1, …, x_k`.
    pub fn supported_in(&self, k: usize) -> bool {
        self.terms.keys().all(|e| e.iter().skip(k).all(|&x| x == 0))
    }

    /// Invariant under every permutation of `x_1, …, x_k`, checked through
    /// adjacent transpositions.
    pub fn is_symmetric_in(&self, k: usize) -> bool {
        let k = k.min(self.n);
        self.terms.iter().all(|(e, &c)| {
            (1..k).all(|i| {
                let mut f = e.clone();
                f.swap(i - 1, i);
                self.coefficient(&f) == c
            })
        })
    }

    /// Quasisymmetric in `x_1, …, x_k`: the polynomial uses only those
    /// variables, and the coefficient of `x^b` depends on `flat(b)` alone.
    pub fn is_quasisymmetric_in(&self, k: usize) -> bool {
        if k > self.n || !self.supported_in(k) {
            return false;
        }
        let mut classes: BTreeMap<Vec<usize>, (usize, i64)> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let flat: Vec<usize> = e.iter().copied().filter(|&x| x > 0).collect();
            let entry = classes.entry(flat).or_insert((0, c));
            if entry.1 != c {
                return false;
            }
            entry.0 += 1;
        }
        classes
            .iter()
            .all(|(flat, &(count, _))| count as u128 == binomial(k, flat.len()))
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0\n".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let sign = if c < 0 { '-' } else { '+' };
            out.push_str(&format!("{sign} {} x^{{{}}}\n", c.unsigned_abs(), join(e)));
        }
        out
    }

    /// Parses [`SparseIntegerPolynomial::render`] output in `n` variables.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut p = Self::zero(n);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line == "0" {
                continue;
            }
            let (c, e) = parse_term_line(line, "x^")?;
            p.add_term(&e, c)?;
        }
        Ok(p)
    }

    pub fn to_records(&self) -> Vec<MonomialRecord> {
        self.terms()
            .into_iter()
            .map(|(e, c)| MonomialRecord {
                coeff: c,
                exponents: e.to_vec(),
            })
            .collect()
    }

    pub fn from_records(records: &[MonomialRecord], n: usize) -> Result<Self> {
        let mut p = Self::zero(n);
        for r in records {
            p.add_term(&r.exponents, r.coeff)?;
        }
        Ok(p)
    }
}

impl fmt::Display for SparseIntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The basis an [`Expansion`] is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "F")]
    FundamentalSlide,
    #[serde(rename = "Q")]
    QuasiKey,
    #[serde(rename = "Ffun")]
    FundamentalQsym,
    #[serde(rename = "QS")]
    QuasiSchur,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::FundamentalSlide => "F",
            Basis::QuasiKey => "Q",
            Basis::FundamentalQsym => "Ffun",
            Basis::QuasiSchur => "QS",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(Basis::Monomial),
            "F" => Ok(Basis::FundamentalSlide),
            "Q" => Ok(Basis::QuasiKey),
            "Ffun" => Ok(Basis::FundamentalQsym),
            "QS" => Ok(Basis::QuasiSchur),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "unknown basis symbol".into(),
            }),
        }
    }
}

/// A nonnegative combination of basis elements indexed by compositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    basis: Basis,
    terms: BTreeMap<Vec<usize>, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionRecord {
    pub basis: Basis,
    pub coeff: i64,
    pub index: Vec<usize>,
}

impl Expansion {
    pub fn new(basis: Basis) -> Self {
        Expansion {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// Counts each index with multiplicity.
    pub fn from_indices<I: IntoIterator<Item = Vec<usize>>>(basis: Basis, indices: I) -> Self {
        let mut e = Self::new(basis);
        for idx in indices {
            e.add(idx, 1);
        }
        e
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add(&mut self, index: Vec<usize>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(index.clone()).or_insert(0);
        *entry = checked_sum(*entry, coeff);
        if *entry == 0 {
            self.terms.remove(&index);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, index: &[usize]) -> i64 {
        self.terms.get(index).copied().unwrap_or(0)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.terms.values().copied().fold(0, checked_sum)
    }

    /// Terms in canonical (reverse-lexicographic, largest first) order.
    pub fn terms(&self) -> Vec<(&[usize], i64)> {
        let mut v: Vec<(&[usize], i64)> =
            self.terms.iter().map(|(e, &c)| (e.as_slice(), c)).collect();
        v.sort_by(|x, y| canonical_cmp(x.0, y.0));
        v
    }

    /// Expands every basis element into monomials. `n` is the number of
    /// variables for the quasisymmetric bases; the others use the index length.
    pub fn evaluate(&self, n: usize) -> Result<SparseIntegerPolynomial> {
        let mut out: Option<SparseIntegerPolynomial> = None;
        for (idx, c) in self.terms() {
            let part = match self.basis {
                Basis::Monomial => SparseIntegerPolynomial::monomial(idx),
                Basis::FundamentalSlide => fundamental_slide(&WeakComposition::new(idx.to_vec())),
                Basis::QuasiKey => quasi_key_polynomial(&WeakComposition::new(idx.to_vec()))?,
                Basis::FundamentalQsym => {
                    fundamental_qsym_polynomial(&StrongComposition::new(idx.to_vec())?, n)
                }
                Basis::QuasiSchur => {
                    quasi_schur_polynomial(&StrongComposition::new(idx.to_vec())?, n)?
                }
            };
            match out.as_mut() {
                None => out = Some(part.scaled(c)),
                Some(acc) => acc.add_assign(&part.scaled(c))?,
            }
        }
        Ok(out.unwrap_or_else(|| SparseIntegerPolynomial::zero(n)))
    }

    /// Multiset of indices, each repeated by its coefficient.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        self.terms()
            .into_iter()
            .flat_map(|(idx, c)| std::iter::repeat_n(idx.to_vec(), c.max(0) as usize))
            .collect()
    }

    pub fn render(&self) -> String {
        if self.is_empty() {
            return "0\n".to_string();
        }
        let b = self.basis.symbol();
        let mut out = String::new();
        for (idx, c) in self.terms() {
            let sign = if c < 0 { '-' } else { '+' };
            out.push_str(&format!(
                "{sign} {} {b}_{{{}}}\n",
                c.unsigned_abs(),
                join(idx)
            ));
        }
        out
    }

    pub fn parse(text: &str, basis: Basis) -> Result<Self> {
        let mut e = Self::new(basis);
        let head = format!("{}_", basis.symbol());
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line == "0" {
                continue;
            }
            let (c, idx) = parse_term_line(line, &head)?;
            e.add(idx, c);
        }
        Ok(e)
    }

    pub fn to_records(&self) -> Vec<ExpansionRecord> {
        self.terms()
            .into_iter()
            .map(|(idx, coeff)| ExpansionRecord {
                basis: self.basis,
                coeff,
                index: idx.to_vec(),
            })
            .collect()
    }

    pub fn from_records(records: &[ExpansionRecord], basis: Basis) -> Result<Self> {
        let mut e = Self::new(basis);
        for r in records {
            if r.basis != basis {
                return Err(Error::Precondition(format!(
                    "record in basis {} inside a {} expansion",
                    r.basis.symbol(),
                    basis.symbol()
                )));
            }
            e.add(r.index.clone(), r.coeff);
        }
        Ok(e)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn sum_weights<I: IntoIterator<Item = WeakComposition>>(
    n: usize,
    ws: I,
) -> SparseIntegerPolynomial {
    let mut p = SparseIntegerPolynomial::zero(n);
    for w in ws {
        p.add_term(w.parts(), 1).expect("weights have length n");
    }
    p
}

/// `κ_a = Σ_{D ∈ KM(a)} x^{wt(D)}`.
pub fn key_polynomial(a: &WeakComposition) -> SparseIntegerPolynomial {
    let n = a.len();
    sum_weights(
        n,
        kohnert_closure(a)
            .iter()
            .map(|d| d.weight(n).expect("Kohnert moves only lower cells")),
    )
}

/// `κ_a` as the weight generating function of `KT(a)`.
pub fn key_polynomial_from_tableaux(a: &WeakComposition) -> Result<SparseIntegerPolynomial> {
    Ok(sum_weights(
        a.len(),
        enumerate_kt(a)?.iter().map(|t| t.weight()),
    ))
}

/// `F_a`: the sum of `x^b` over `b ≥ a` in dominance with `flat(b)` refining
/// `flat(a)`.
pub fn fundamental_slide(a: &WeakComposition) -> SparseIntegerPolynomial {
    let flat = a.flatten();
    sum_weights(
        a.len(),
        weak_compositions_of(a.weight(), a.len())
            .into_iter()
            .filter(|b| {
                dominates_slices(b.parts(), a.parts())
                    && refines_slices(b.flatten().parts(), flat.parts())
            }),
    )
}

/// `κ_a = Σ_{T ∈ QKT(a)} F_{wt(T)}`.
pub fn key_to_slides(a: &WeakComposition) -> Result<Expansion> {
    Ok(Expansion::from_indices(
        Basis::FundamentalSlide,
        enumerate_qkt(a)?.iter().map(|t| t.weight().into_parts()),
    ))
}

/// `Q_a = Σ_{T ∈ qKT(a)} x^{wt(T)}`.
pub fn quasi_key_polynomial(a: &WeakComposition) -> Result<SparseIntegerPolynomial> {
    Ok(sum_weights(
        a.len(),
        enumerate_quasi_kohnert(a)?.iter().map(|t| t.weight()),
    ))
}

/// `Q_a = Σ_{T ∈ QqKT(a)} F_{wt(T)}`.
pub fn quasikey_to_slides(a: &WeakComposition) -> Result<Expansion> {
    Ok(Expansion::from_indices(
        Basis::FundamentalSlide,
        enumerate_qqkt(a)?.iter().map(|t| t.weight().into_parts()),
    ))
}

/// `κ_a = Σ_{b ∈ Qlswap(a)} Q_b`.
pub fn key_to_quasikeys(a: &WeakComposition) -> Expansion {
    Expansion::from_indices(
        Basis::QuasiKey,
        qlswap_set(a).into_iter().map(WeakComposition::into_parts),
    )
}

/// `s_λ(x_1, …, x_n)` from semistandard tableaux.
pub fn schur_polynomial(lambda: &Partition, n: usize) -> SparseIntegerPolynomial {
    sum_weights(n, enumerate_ssyt(lambda, n).iter().map(|t| t.weight(n)))
}

/// `F_α(x_1, …, x_n)`: every `x^b` with `b` of length `n` and `flat(b)`
/// refining `α`.
pub fn fundamental_qsym_polynomial(alpha: &StrongComposition, n: usize) -> SparseIntegerPolynomial {
    sum_weights(
        n,
        weak_compositions_of(alpha.weight(), n)
            .into_iter()
            .filter(|b| refines_slices(b.flatten().parts(), alpha.parts())),
    )
}

/// `QS_α(x_1, …, x_n) = Σ_{T ∈ SCT(α)} F_{Des(T)}(x_1, …, x_n)`.
pub fn quasi_schur_polynomial(
    alpha: &StrongComposition,
    n: usize,
) -> Result<SparseIntegerPolynomial> {
    quasischur_to_fundamentals(alpha).evaluate(n)
}
