//! Acceptance criteria. Prints one PASS/FAIL line per criterion, with the
//! failing details indented below, and exits nonzero if any criterion fails.
//!
//! Library suites are cross-checked against small brute-force oracles that
//! live here and share no code with the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use kohnert::composition::{eta, lsort, qlswap_set, sigma};
use kohnert::diagram::kohnert_closure;
use kohnert::expand::{
    fundamental_slide, key_polynomial, key_to_quasikeys, key_to_slides, quasi_key_polynomial,
    quasikey_to_slides, Expansion, SparseIntegerPolynomial,
};
use kohnert::kohnert::{enumerate_kt, enumerate_qkt, enumerate_qqkt, enumerate_quasi_kohnert};
use kohnert::qsym::{descent_composition, enumerate_sct, quasischur_to_fundamentals};
use kohnert::stability::{stability_point, stability_profile};
use kohnert::verify::{self, Report};
use kohnert::{StrongComposition, WeakComposition};

type Poly = BTreeMap<Vec<usize>, i64>;
type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&mut self, rep: &Report) {
        for c in rep.checks.iter().filter(|c| !c.passed()) {
            let mut line = format!(
                "{} ({} of {} failed)",
                c.name,
                c.failures.len(),
                c.instances
            );
            for f in c.failures.iter().take(5) {
                line.push_str(&format!("\n      {}", f.replace('\n', "\n      ")));
            }
            self.failures.push(line);
        }
    }
}

fn wc(s: &str) -> WeakComposition {
    s.parse().unwrap()
}

fn sc(v: &[usize]) -> StrongComposition {
    StrongComposition::new(v.to_vec()).unwrap()
}

fn as_map(p: &SparseIntegerPolynomial) -> Poly {
    p.terms()
        .into_iter()
        .map(|(e, c)| (e.to_vec(), c))
        .collect()
}

fn add_into(acc: &mut Poly, p: &Poly, k: i64) {
    for (e, &c) in p {
        *acc.entry(e.clone()).or_insert(0) += k * c;
    }
    acc.retain(|_, c| *c != 0);
}

fn corpus(max_weight: usize, max_length: usize) -> Vec<Vec<usize>> {
    fn go(slots: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 0..=rest {
            cur.push(p);
            go(slots - 1, rest - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 1..=max_length {
        go(len, max_weight, &mut Vec::new(), &mut out);
    }
    out
}

fn weak_of(weight: usize, len: usize) -> Vec<Vec<usize>> {
    corpus(weight, len)
        .into_iter()
        .filter(|v| v.len() == len && v.iter().sum::<usize>() == weight)
        .collect()
}

fn flat(v: &[usize]) -> Vec<usize> {
    v.iter().copied().filter(|&x| x > 0).collect()
}

fn partial_sums(v: &[usize]) -> BTreeSet<usize> {
    v.iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect()
}

fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    fine.iter().sum::<usize>() == coarse.iter().sum::<usize>()
        && partial_sums(coarse).is_subset(&partial_sums(fine))
}

fn dominates(b: &[usize], a: &[usize]) -> bool {
    let (mut sb, mut sa) = (0, 0);
    b.iter().zip(a).all(|(x, y)| {
        sb += x;
        sa += y;
        sb >= sa
    })
}

/// Kohnert closure by depth-first search, returning the monomial sum.
fn oracle_key(a: &[usize]) -> Poly {
    let start: BTreeSet<(usize, usize)> = a
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (1..=len).map(move |c| (i + 1, c)))
        .collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(d) = stack.pop() {
        for row in 1..=a.len() {
            let Some(col) = d.iter().filter(|&&(r, _)| r == row).map(|&(_, c)| c).max() else {
                continue;
            };
            if let Some(target) = (1..row).rev().find(|&r| !d.contains(&(r, col))) {
                let mut e = d.clone();
                e.remove(&(row, col));
                e.insert((target, col));
                if seen.insert(e.clone()) {
                    stack.push(e);
                }
            }
        }
    }
    let mut p = Poly::new();
    for d in seen {
        let mut w = vec![0; a.len()];
        for (r, _) in d {
            w[r - 1] += 1;
        }
        *p.entry(w).or_insert(0) += 1;
    }
    p
}

/// Monomials `x^b` with `b ≥ a` in dominance and `flat(b)` refining `flat(a)`.
fn oracle_slide(a: &[usize]) -> Poly {
    weak_of(a.iter().sum(), a.len())
        .into_iter()
        .filter(|b| dominates(b, a) && refines(&flat(b), &flat(a)))
        .map(|b| (b, 1))
        .collect()
}

/// `F_β(x_1..x_k)`: exponents of length `k` whose flattening refines `β`.
fn oracle_fundamental(beta: &[usize], k: usize) -> Poly {
    weak_of(beta.iter().sum(), k)
        .into_iter()
        .filter(|b| refines(&flat(b), beta))
        .map(|b| (b, 1))
        .collect()
}

fn slides_to_poly(e: &Expansion) -> Poly {
    let mut p = Poly::new();
    for (idx, c) in e.terms() {
        add_into(&mut p, &oracle_slide(idx), c);
    }
    p
}

/// Semistandard fillings of `λ` with entries at most `k`, by brute force.
fn oracle_schur(lambda: &[usize], k: usize) -> Poly {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    fn go(
        cells: &[(usize, usize)],
        idx: usize,
        k: usize,
        fill: &mut BTreeMap<(usize, usize), usize>,
        out: &mut Poly,
    ) {
        if idx == cells.len() {
            let mut w = vec![0; k];
            for &v in fill.values() {
                w[v - 1] += 1;
            }
            *out.entry(w).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[idx];
        for v in 1..=k {
            let row_ok = c == 0 || fill[&(r, c - 1)] <= v;
            let col_ok = r == 0 || fill[&(r - 1, c)] < v;
            if row_ok && col_ok {
                fill.insert((r, c), v);
                go(cells, idx + 1, k, fill, out);
                fill.remove(&(r, c));
            }
        }
    }
    let mut out = Poly::new();
    go(&cells, 0, k, &mut BTreeMap::new(), &mut out);
    out
}

/// Standard Young tableaux of shape `λ`, by removing corners.
fn oracle_syt(lambda: &[usize], memo: &mut BTreeMap<Vec<usize>, u128>) -> u128 {
    if lambda.iter().sum::<usize>() == 0 {
        return 1;
    }
    if let Some(&v) = memo.get(lambda) {
        return v;
    }
    let mut total = 0;
    for r in 0..lambda.len() {
        let below = lambda.get(r + 1).copied().unwrap_or(0);
        if lambda[r] > below {
            let mut mu = lambda.to_vec();
            mu[r] -= 1;
            while mu.last() == Some(&0) {
                mu.pop();
            }
            total += oracle_syt(&mu, memo);
        }
    }
    memo.insert(lambda.to_vec(), total);
    total
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn is_symmetric(p: &Poly) -> bool {
    p.iter().all(|(e, &c)| {
        let mut perm = e.clone();
        perm.sort_unstable();
        loop {
            if p.get(&perm).copied().unwrap_or(0) != c {
                return false;
            }
            if !next_permutation(&mut perm) {
                return true;
            }
        }
    })
}

fn is_quasisymmetric(p: &Poly, k: usize) -> bool {
    fn positions(
        len: usize,
        k: usize,
        from: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..k {
            cur.push(i);
            positions(len, k, i + 1, cur, out);
            cur.pop();
        }
    }
    p.iter().all(|(e, &c)| {
        let f = flat(e);
        let mut all = Vec::new();
        positions(f.len(), k, 0, &mut Vec::new(), &mut all);
        all.iter().all(|pos| {
            let mut b = vec![0; k];
            for (&i, &x) in pos.iter().zip(&f) {
                b[i] = x;
            }
            p.get(&b).copied().unwrap_or(0) == c
        })
    })
}

fn criterion_golden() -> Outcome {
    let mut out = Outcome::new();
    out.report(&verify::golden());
    let counts = [
        ("#KM(0,3,2)", kohnert_closure(&wc("0,3,2")).len(), 9),
        ("#KT(0,2,3)", enumerate_kt(&wc("0,2,3")).unwrap().len(), 15),
        ("#QKT(0,3,2)", enumerate_qkt(&wc("0,3,2")).unwrap().len(), 4),
        (
            "#qKT(0,3,2)",
            enumerate_quasi_kohnert(&wc("0,3,2")).unwrap().len(),
            8,
        ),
        (
            "#QqKT(0,0,3,2)",
            enumerate_qqkt(&wc("0,0,3,2")).unwrap().len(),
            3,
        ),
        (
            "#QqKT(0,2,3,0)",
            enumerate_qqkt(&wc("0,2,3,0")).unwrap().len(),
            2,
        ),
        ("#SCT(2,3,2)", enumerate_sct(&sc(&[2, 3, 2])).len(), 7),
    ];
    for (what, got, want) in counts {
        out.expect(got == want, || format!("{what} = {got}, expected {want}"));
    }
    let km = oracle_key(&[0, 3, 2]);
    out.expect(km.values().sum::<i64>() == 9, || {
        "oracle #KM(0,3,2) differs".into()
    });

    let slides: BTreeSet<Vec<usize>> = key_to_slides(&wc("0,3,2"))
        .unwrap()
        .indices()
        .into_iter()
        .collect();
    let want: BTreeSet<Vec<usize>> = [[0, 3, 2], [2, 2, 1], [1, 3, 1], [2, 3, 0]]
        .map(Vec::from)
        .into();
    out.expect(slides == want, || format!("slides of κ_032: {slides:?}"));

    let q: BTreeSet<Vec<usize>> = qlswap_set(&wc("0,2,3,2"))
        .iter()
        .map(|b| b.parts().to_vec())
        .collect();
    let want: BTreeSet<Vec<usize>> = [[0, 2, 3, 2], [0, 3, 2, 2], [2, 2, 3, 0]]
        .map(Vec::from)
        .into();
    out.expect(q == want, || format!("Qlswap(0,2,3,2) = {q:?}"));
    let qk: BTreeSet<Vec<usize>> = key_to_quasikeys(&wc("0,2,3,2"))
        .indices()
        .into_iter()
        .collect();
    out.expect(qk == want, || format!("quasi-keys of κ_0232: {qk:?}"));

    let mut des: Vec<Vec<usize>> = enumerate_sct(&sc(&[2, 3, 2]))
        .iter()
        .map(|t| descent_composition(t).parts().to_vec())
        .collect();
    des.sort();
    let mut from_qs = quasischur_to_fundamentals(&sc(&[2, 3, 2])).indices();
    from_qs.sort();
    out.expect(des == from_qs, || {
        "QS_232 disagrees with SCT descents".into()
    });

    for (a, s, e, l) in [
        (
            "0,0,2,0,0,0,4,1,0,3,2",
            -1,
            3,
            Some("0,1,2,0,2,3,4,0,0,0,0"),
        ),
        ("0,3,0,2,2", 1, 3, None),
    ] {
        let a = wc(a);
        let got = (sigma(&a), eta(&a), lsort(&a));
        let want = (s, e, l.map(wc));
        out.expect(got == want, || {
            format!("({a}): (σ, η, lsort) = {got:?}, expected {want:?}")
        });
    }
    out
}

fn criterion_identities() -> Outcome {
    let mut out = Outcome::new();
    out.report(&verify::identities(6, 4));
    for v in corpus(6, 4) {
        let a = WeakComposition::new(v.clone());
        let kappa = oracle_key(&v);
        out.expect(as_map(&key_polynomial(&a)) == kappa, || {
            format!("({a}): κ differs from the closure oracle")
        });
        out.expect(as_map(&fundamental_slide(&a)) == oracle_slide(&v), || {
            format!("({a}): F differs from the slide oracle")
        });
        let via_slides = slides_to_poly(&key_to_slides(&a).unwrap());
        out.expect(via_slides == kappa, || {
            format!("({a}): Σ F over QKT differs from κ")
        });
        let q = as_map(&quasi_key_polynomial(&a).unwrap());
        out.expect(
            slides_to_poly(&quasikey_to_slides(&a).unwrap()) == q,
            || format!("({a}): Σ F over QqKT differs from Q"),
        );
        let mut sum = Poly::new();
        for b in qlswap_set(&a) {
            add_into(
                &mut sum,
                &slides_to_poly(&quasikey_to_slides(&b).unwrap()),
                1,
            );
        }
        out.expect(sum == kappa, || {
            format!("({a}): Σ Q over Qlswap differs from κ")
        });
        for (name, p) in [("κ", &kappa), ("Q", &q)] {
            let lead = p.get(&v).copied() == Some(1)
                && p.keys()
                    .all(|e| e == &v || (dominates(e, &v) && !dominates(&v, e)));
            out.expect(lead, || {
                format!("({a}): x^a is not the unique minimal term of {name}")
            });
        }
    }
    out
}

fn criterion_bijections() -> Outcome {
    let mut out = Outcome::new();
    out.report(&verify::bijections(6, 4));
    out
}

fn criterion_stability() -> Outcome {
    let mut out = Outcome::new();
    let (rep, records) = verify::stability(5, 3, 2);
    out.report(&rep);
    let mut memo = BTreeMap::new();
    for rec in &records {
        let a = &rec.a;
        let onset = stability_point(a);
        let profile = stability_profile(a, onset + 2).unwrap();
        out.expect(profile == rec.profile, || {
            format!("({a}): profile is not reproducible")
        });
        if a.is_all_zero() {
            out.expect(profile.iter().all(|&c| c == 1), || {
                format!("({a}): profile {profile:?}")
            });
            continue;
        }
        // first index from which the profile is constant, and strict rise before it
        let observed = (0..profile.len())
            .find(|&m| profile[m..].iter().all(|&c| c == profile[m]))
            .unwrap();
        let rising = profile[..=observed].windows(2).all(|w| w[0] < w[1]);
        out.expect(observed == onset && rising, || {
            format!(
                "({a}): profile {profile:?} has onset {observed}, η = {}",
                rec.eta
            )
        });
        let mut lambda = flat(a.parts());
        lambda.sort_unstable_by(|x, y| y.cmp(x));
        let syt = oracle_syt(&lambda, &mut memo);
        out.expect(*profile.last().unwrap() as u128 == syt, || {
            format!(
                "({a}): plateau {} but #SYT = {syt}",
                profile.last().unwrap()
            )
        });
    }
    out.expect(records.len() == corpus(5, 3).len(), || {
        "stability corpus size".into()
    });
    out
}

fn criterion_symmetry() -> Outcome {
    let mut out = Outcome::new();
    out.report(&verify::symmetry(6, 4));
    for v in corpus(6, 4) {
        let a = WeakComposition::new(v.clone());
        let n = v.len();
        let last = v.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
        let kappa = key_polynomial(&a);
        let q = quasi_key_polynomial(&a).unwrap();
        for k in last.max(1)..=n {
            let pre = &v[..k];
            let kk = as_map(&kappa.restrict(k));
            let increasing = pre.windows(2).all(|w| w[0] <= w[1]);
            out.expect(is_symmetric(&kk) == increasing, || {
                format!("({a}), k = {k}: symmetry is {}", !increasing)
            });
            if increasing {
                let lambda: Vec<usize> = pre.iter().rev().copied().filter(|&x| x > 0).collect();
                out.expect(kk == oracle_schur(&lambda, k), || {
                    format!("({a}), k = {k}: κ is not s_λ")
                });
            }

            let qk = as_map(&q.restrict(k));
            let nz: Vec<usize> = (0..k).filter(|&i| pre[i] > 0).collect();
            let terminal = nz.is_empty()
                || (nz[nz.len() - 1] == k - 1 && nz[nz.len() - 1] - nz[0] + 1 == nz.len());
            out.expect(is_quasisymmetric(&qk, k) == terminal, || {
                format!("({a}), k = {k}: quasisymmetry is {}", !terminal)
            });
            if terminal {
                let want = if nz.is_empty() {
                    Poly::from([(vec![0; k], 1)])
                } else {
                    let mut p = Poly::new();
                    for (beta, c) in
                        quasischur_to_fundamentals(&StrongComposition::new(flat(pre)).unwrap())
                            .terms()
                    {
                        add_into(&mut p, &oracle_fundamental(beta, k), c);
                    }
                    p
                };
                out.expect(qk == want, || {
                    format!("({a}), k = {k}: Q is not the quasi-Schur truncation")
                });
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 5] = [
        ("golden reproduction", criterion_golden),
        (
            "identity suite, |a| <= 6, length <= 4",
            criterion_identities,
        ),
        (
            "bijection suite, |a| <= 6, length <= 4",
            criterion_bijections,
        ),
        (
            "stability suite, |a| <= 5, length <= 3, m <= eta + 2",
            criterion_stability,
        ),
        ("symmetry and quasisymmetry criteria", criterion_symmetry),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let ok = outcome.failures.is_empty();
        all &= ok;
        println!(
            "{} criterion {}: {name}",
            if ok { "PASS" } else { "FAIL" },
            k + 1
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
