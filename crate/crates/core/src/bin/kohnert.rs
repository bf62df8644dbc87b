use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use kohnert::composition::{eta, lsort, qlswap_set, sigma};
use kohnert::diagram::kohnert_closure;
use kohnert::expand::{
    fundamental_qsym_polynomial, fundamental_slide, key_polynomial, key_to_quasikeys,
    key_to_slides, quasi_key_polynomial, quasi_schur_polynomial, quasikey_to_slides,
    schur_polynomial, Expansion, SparseIntegerPolynomial,
};
use kohnert::kohnert::{
    enumerate_kt, enumerate_qkt, enumerate_qqkt, enumerate_quasi_kohnert, thread_decompose,
    KohnertTableau,
};
use kohnert::qsym::{
    descent_composition, enumerate_qyt, enumerate_sct, enumerate_ssyt, quasischur_to_fundamentals,
    schur_to_fundamentals, syt_count,
};
use kohnert::stability::{stability_point, stability_profile};
use kohnert::verify::{self, Report};
use kohnert::{Error, Partition, StrongComposition, WeakComposition};

#[derive(Parser)]
#[command(
    name = "kohnert",
    version,
    about = "Kohnert tableaux, key and quasi-key polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Km,
    Kt,
    Qkt,
    Qkohnert,
    Qqkt,
    Ssyt,
    Qyt,
    Sct,
    Threads,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    KeyMonomial,
    KeySlide,
    KeyQkey,
    QkeyMonomial,
    QkeySlide,
    Schur,
    SchurFund,
    Qschur,
    QschurFund,
    SlideMonomial,
    FundQsym,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Identities,
    Bijections,
    Stability,
    Golden,
}

#[derive(Subcommand)]
enum Command {
    /// List a family of tableaux or diagrams in canonical order.
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated parts; a partition for ssyt/qyt, a strong
        /// composition for sct.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Largest entry for ssyt/qyt (default: the size of the shape).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a polynomial or a basis expansion.
    Expand {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Number of variables for the symmetric and quasisymmetric targets.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Statistics of a weak composition.
    Stats {
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Last padding for the profile (default: eta + 2).
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_weight: usize,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        /// Paddings checked past eta by the stability suite.
        #[arg(long, default_value_t = 2)]
        m_max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

struct Output {
    text: String,
    ok: bool,
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("serializable"));
    out.push('\n');
}

fn listing<T>(
    format: Format,
    items: &[T],
    text: impl Fn(&T) -> String,
    record: impl Fn(&T) -> serde_json::Value,
) -> String {
    let mut out = String::new();
    for item in items {
        match format {
            Format::Text => {
                let body = text(item);
                out.push_str(if body.is_empty() { "(empty)\n" } else { &body });
                out.push('\n');
            }
            Format::Structured => json_line(&mut out, &record(item)),
        }
    }
    match format {
        Format::Text => writeln!(out, "count: {}", items.len()).unwrap(),
        Format::Structured => json_line(&mut out, &json!({ "count": items.len() })),
    }
    out
}

fn tableaux(format: Format, ts: &[KohnertTableau]) -> String {
    listing(format, ts, KohnertTableau::render, |t| json!(t.to_record()))
}

fn enumerate(
    family: Family,
    input: &str,
    n: Option<usize>,
    format: Format,
) -> Result<String, Error> {
    Ok(match family {
        Family::Km => {
            let a: WeakComposition = input.parse()?;
            let ds = kohnert_closure(&a);
            listing(
                format,
                &ds,
                |d| d.render(a.len()),
                |d| json!({ "cells": d }),
            )
        }
        Family::Kt => tableaux(format, &enumerate_kt(&input.parse()?)?),
        Family::Qkt => tableaux(format, &enumerate_qkt(&input.parse()?)?),
        Family::Qkohnert => tableaux(format, &enumerate_quasi_kohnert(&input.parse()?)?),
        Family::Qqkt => tableaux(format, &enumerate_qqkt(&input.parse()?)?),
        Family::Ssyt | Family::Qyt => {
            let lambda: Partition = input.parse()?;
            let n = n.unwrap_or(lambda.weight());
            let ys = match family {
                Family::Ssyt => enumerate_ssyt(&lambda, n),
                _ => enumerate_qyt(&lambda, n),
            };
            listing(format, &ys, |y| y.render(), |y| json!(y))
        }
        Family::Sct => {
            let alpha: StrongComposition = input.parse()?;
            let ts = enumerate_sct(&alpha);
            listing(
                format,
                &ts,
                |t| format!("{}Des: {}\n", t.render(), descent_composition(t)),
                |t| json!({ "tableau": t, "descents": descent_composition(t).parts() }),
            )
        }
        Family::Threads => {
            let ts = enumerate_qkt(&input.parse()?)?;
            let decomposed = ts
                .into_iter()
                .map(|t| Ok((thread_decompose(&t.diagram())?, t)))
                .collect::<Result<Vec<_>, Error>>()?;
            listing(
                format,
                &decomposed,
                |(d, t)| format!("{}{}", t.render(), d.render(t.content().len())),
                |(d, t)| json!({ "tableau": t.to_record(), "threads": d.threads }),
            )
        }
    })
}

fn polynomial(format: Format, p: &SparseIntegerPolynomial) -> String {
    match format {
        Format::Text => p.render(),
        Format::Structured => {
            let mut out = String::new();
            for r in p.to_records() {
                json_line(&mut out, &r);
            }
            out
        }
    }
}

fn expansion(format: Format, e: &Expansion) -> String {
    match format {
        Format::Text => {
            if e.is_empty() {
                "0\n".to_string()
            } else {
                e.render()
            }
        }
        Format::Structured => {
            let mut out = String::new();
            for r in e.to_records() {
                json_line(&mut out, &r);
            }
            out
        }
    }
}

fn expand(target: Target, input: &str, n: Option<usize>, format: Format) -> Result<String, Error> {
    let weak = || input.parse::<WeakComposition>();
    let strong = || input.parse::<StrongComposition>();
    Ok(match target {
        Target::KeyMonomial => polynomial(format, &key_polynomial(&weak()?)),
        Target::KeySlide => expansion(format, &key_to_slides(&weak()?)?),
        Target::KeyQkey => expansion(format, &key_to_quasikeys(&weak()?)),
        Target::QkeyMonomial => polynomial(format, &quasi_key_polynomial(&weak()?)?),
        Target::QkeySlide => expansion(format, &quasikey_to_slides(&weak()?)?),
        Target::SlideMonomial => polynomial(format, &fundamental_slide(&weak()?)),
        Target::Schur => {
            let lambda: Partition = input.parse()?;
            let n = n.unwrap_or(lambda.len());
            polynomial(format, &schur_polynomial(&lambda, n))
        }
        Target::SchurFund => {
            let lambda: Partition = input.parse()?;
            let n = n.unwrap_or((lambda.weight() + 1).saturating_sub(lambda.largest()));
            expansion(format, &schur_to_fundamentals(&lambda, n)?)
        }
        Target::Qschur => {
            let alpha = strong()?;
            let n = n.unwrap_or(alpha.len());
            polynomial(format, &quasi_schur_polynomial(&alpha, n)?)
        }
        Target::QschurFund => expansion(format, &quasischur_to_fundamentals(&strong()?)),
        Target::FundQsym => {
            let alpha = strong()?;
            let n = n.unwrap_or(alpha.len());
            polynomial(format, &fundamental_qsym_polynomial(&alpha, n))
        }
    })
}

fn stats(input: &str, m_max: Option<usize>, format: Format) -> Result<String, Error> {
    let a: WeakComposition = input.parse()?;
    let m_max = m_max.unwrap_or(stability_point(&a) + 2);
    let qlswap: Vec<String> = qlswap_set(&a).iter().map(ToString::to_string).collect();
    let record = json!({
        "a": a,
        "length": a.len(),
        "weight": a.weight(),
        "sigma": sigma(&a),
        "eta": eta(&a),
        "lsort": lsort(&a),
        "km": kohnert_closure(&a).len(),
        "qkt": enumerate_qkt(&a)?.len(),
        "qkohnert": enumerate_quasi_kohnert(&a)?.len(),
        "qqkt": enumerate_qqkt(&a)?.len(),
        "qlswap": qlswap,
        "profile": stability_profile(&a, m_max)?,
        "syt": syt_count(&a.sort_decreasing()) as u64,
    });
    Ok(match format {
        Format::Structured => {
            let mut out = String::new();
            json_line(&mut out, &record);
            out
        }
        Format::Text => {
            let mut out = String::new();
            let lsort_text = lsort(&a).map_or("none".to_string(), |b| b.to_string());
            let profile: Vec<String> = record["profile"]
                .as_array()
                .expect("profile")
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(out, "a: {a}").unwrap();
            writeln!(out, "length: {}", a.len()).unwrap();
            writeln!(out, "weight: {}", a.weight()).unwrap();
            writeln!(out, "sigma: {}", sigma(&a)).unwrap();
            writeln!(out, "eta: {}", eta(&a)).unwrap();
            writeln!(out, "lsort: {lsort_text}").unwrap();
            writeln!(out, "#KM: {}", record["km"]).unwrap();
            writeln!(out, "#QKT: {}", record["qkt"]).unwrap();
            writeln!(out, "#qKT: {}", record["qkohnert"]).unwrap();
            writeln!(out, "#QqKT: {}", record["qqkt"]).unwrap();
            writeln!(out, "Qlswap: {}", qlswap.join(" ")).unwrap();
            writeln!(out, "profile: {}", profile.join(" ")).unwrap();
            writeln!(out, "#SYT(sort): {}", record["syt"]).unwrap();
            out
        }
    })
}

fn report(format: Format, rep: &Report) -> String {
    match format {
        Format::Text => format!(
            "{}{}\n",
            rep.render(),
            if rep.passed() { "PASS" } else { "FAIL" }
        ),
        Format::Structured => {
            let mut out = String::new();
            for c in &rep.checks {
                json_line(&mut out, c);
            }
            json_line(&mut out, &json!({ "passed": rep.passed() }));
            out
        }
    }
}

fn run_verify(
    suite: Suite,
    max_weight: usize,
    max_length: usize,
    extra: usize,
    format: Format,
) -> Output {
    let rep = match suite {
        Suite::Identities => {
            let mut rep = verify::identities(max_weight, max_length);
            rep.merge(verify::symmetry(max_weight, max_length));
            rep
        }
        Suite::Bijections => verify::bijections(max_weight, max_length),
        Suite::Golden => verify::golden(),
        Suite::Stability => {
            let (rep, records) = verify::stability(max_weight, max_length, extra);
            let mut text = String::new();
            if format == Format::Structured {
                for r in &records {
                    json_line(&mut text, r);
                }
            }
            text.push_str(&report(format, &rep));
            return Output {
                text,
                ok: rep.passed(),
            };
        }
    };
    Output {
        text: report(format, &rep),
        ok: rep.passed(),
    }
}

fn run(cli: Cli) -> Result<Output, Error> {
    let text = match cli.command {
        Command::Enumerate {
            family,
            input,
            n,
            format,
        } => enumerate(family, &input, n, format)?,
        Command::Expand {
            target,
            input,
            n,
            format,
        } => expand(target, &input, n, format)?,
        Command::Stats {
            input,
            m_max,
            format,
        } => stats(&input, m_max, format)?,
        Command::Verify {
            suite,
            max_weight,
            max_length,
            m_max,
            format,
        } => {
            return Ok(run_verify(suite, max_weight, max_length, m_max, format));
        }
    };
    Ok(Output { text, ok: true })
}

/// Usage errors exit 2; help and version requests exit 0.
fn usage_code(e: &clap::Error) -> u8 {
    if e.use_stderr() {
        2
    } else {
        0
    }
}

/// 0 on success, 1 for a failed verification or an internal error, 2 for
/// bad input.
fn exit_code(result: &Result<Output, Error>) -> u8 {
    match result {
        Ok(out) if out.ok => 0,
        Ok(_) | Err(Error::Internal(_)) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(usage_code(&e));
        }
    };
    let result = run(cli);
    match &result {
        Ok(out) => print!("{}", out.text),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use kohnert::expand::{Basis, ExpansionRecord};
    use kohnert::kohnert::TableauRecord;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("kohnert").chain(args.iter().copied())).unwrap()
    }

    fn text(args: &[&str]) -> String {
        run(cli(args)).unwrap().text
    }

    fn json_lines(s: &str) -> Vec<serde_json::Value> {
        s.lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect()
    }

    #[test]
    fn output_is_deterministic() {
        for args in [
            &["enumerate", "--family", "qkt", "--input", "0,0,3,2"][..],
            &[
                "enumerate",
                "--family",
                "km",
                "--input",
                "0,3,2",
                "--format",
                "structured",
            ],
            &["expand", "--target", "key-slide", "--input", "0,2,3,2"],
            &["stats", "--input", "0,2,3,2"],
        ] {
            assert_eq!(text(args), text(args));
        }
    }

    #[test]
    fn tableau_listings_agree() {
        for input in ["0,3,2", "0,0,3,2", "1,0,2", ""] {
            let plain = text(&["enumerate", "--family", "kt", "--input", input]);
            let records = json_lines(&text(&[
                "enumerate",
                "--family",
                "kt",
                "--input",
                input,
                "--format",
                "structured",
            ]));
            let (count, records) = records.split_last().unwrap();
            assert_eq!(count["count"], records.len());
            let a: WeakComposition = input.parse().unwrap();
            let blocks: Vec<&str> = plain
                .split(
                    "

",
                )
                .collect();
            let (tail, blocks) = blocks.split_last().unwrap();
            assert_eq!(tail.trim(), format!("count: {}", records.len()));
            assert_eq!(blocks.len(), records.len());
            for (block, rec) in blocks.iter().zip(records) {
                let rec: TableauRecord = serde_json::from_value(rec.clone()).unwrap();
                let from_json = KohnertTableau::from_record(&rec).unwrap();
                let from_text = if *block == "(empty)" {
                    KohnertTableau::new(a.clone(), Default::default()).unwrap()
                } else {
                    KohnertTableau::from_grid(a.clone(), block).unwrap()
                };
                assert_eq!(from_text, from_json);
            }
        }
    }

    #[test]
    fn expansion_formats_agree() {
        for (target, basis, input) in [
            ("key-slide", Basis::FundamentalSlide, "0,2,3,2"),
            ("key-qkey", Basis::QuasiKey, "0,1,0,2"),
            ("qkey-slide", Basis::FundamentalSlide, "1,0,3"),
            ("schur-fund", Basis::FundamentalQsym, "3,2"),
            ("qschur-fund", Basis::FundamentalQsym, "2,3,2"),
        ] {
            let plain = text(&["expand", "--target", target, "--input", input]);
            let structured = text(&[
                "expand",
                "--target",
                target,
                "--input",
                input,
                "--format",
                "structured",
            ]);
            let records: Vec<ExpansionRecord> = json_lines(&structured)
                .into_iter()
                .map(|v| serde_json::from_value(v).unwrap())
                .collect();
            assert_eq!(
                Expansion::parse(&plain, basis).unwrap(),
                Expansion::from_records(&records, basis).unwrap()
            );
        }
    }

    #[test]
    fn polynomial_formats_agree() {
        let plain = text(&["expand", "--target", "key-monomial", "--input", "0,3,2"]);
        let structured = text(&[
            "expand",
            "--target",
            "key-monomial",
            "--input",
            "0,3,2",
            "--format",
            "structured",
        ]);
        let records: Vec<_> = json_lines(&structured)
            .into_iter()
            .map(|v| serde_json::from_value(v).unwrap())
            .collect();
        assert_eq!(
            SparseIntegerPolynomial::parse(&plain, 3).unwrap(),
            SparseIntegerPolynomial::from_records(&records, 3).unwrap()
        );
        assert_eq!(SparseIntegerPolynomial::parse(&plain, 3).unwrap().len(), 9);
    }

    #[test]
    fn exit_codes() {
        let usage =
            Cli::try_parse_from(["kohnert", "enumerate", "--family", "nope", "--input", "1"]);
        assert_eq!(usage_code(&usage.err().unwrap()), 2);
        let help = Cli::try_parse_from(["kohnert", "--help"]);
        assert_eq!(usage_code(&help.err().unwrap()), 0);

        let ok = run(cli(&["enumerate", "--family", "km", "--input", "0,3,2"]));
        assert_eq!(exit_code(&ok), 0);
        let bad_input = run(cli(&["enumerate", "--family", "kt", "--input", "1,x"]));
        assert_eq!(exit_code(&bad_input), 2);
        let bad_shape = run(cli(&["enumerate", "--family", "ssyt", "--input", "1,2"]));
        assert_eq!(exit_code(&bad_shape), 2);
        let passing = run(cli(&[
            "verify",
            "--suite",
            "identities",
            "--max-weight",
            "3",
            "--max-length",
            "3",
        ]));
        assert_eq!(exit_code(&passing), 0);
        let failing = Ok(Output {
            text: String::new(),
            ok: false,
        });
        assert_eq!(exit_code(&failing), 1);
        assert_eq!(exit_code(&Err(Error::Internal("x".into()))), 1);
    }
}
