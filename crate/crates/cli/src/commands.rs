//! Executes parsed commands into run reports.

use std::io::Read;
use std::path::Path;
use std::time::Instant;

use ryserlab::data::{parker_square, parker_swapped};
use ryserlab::io::{
    parse_matrix, parse_rectangle, parse_square, parse_squares, parse_zero_one, write_path,
    write_square, write_squares, write_transversal, write_zero_one, SymbolTable,
};
use ryserlab::latin::LatinSquare;
use ryserlab::matching::{
    birkhoff_decompose, birkhoff_term_bound, completable_rs, find_sdr, is_sdr, max_matching,
    min_line_cover, SetSystem,
};
use ryserlab::matrix::Rational;
use ryserlab::mols::{
    are_orthogonal, complete_system, macneish_mols, plane_from_system, system_from_plane,
    verify_plane, FiniteField, OrthogonalSystem, PlaneIncidence,
};
use ryserlab::permanents::{
    bound_report, circulant_identity_check, count_rectangles, count_reduced_squares,
    count_reduced_squares_parallel, counterexample_suite, derangement_identity_check, permanent,
    rectangle_sandwich_check, Verdict,
};
use ryserlab::problems::{
    problem1_analyze, problem2_analyze, DesignParams, Problem1Outcome, Problem2Outcome,
};
use ryserlab::transversals::{
    check_parity_conjecture, count_decompositions, count_decompositions_bounded,
    count_decompositions_parallel, count_transversals, count_transversals_parallel,
    enumerate_transversals, enumerate_transversals_parallel, find_decomposition, find_transversal,
    mate_from_decomposition,
};
use serde_json::json;

use crate::acceptance;
use crate::args::{
    Cli, Command, CountCommand, Dataset, FileInput, MolsCommand, OutFile, PermCommand,
    PlaneCommand, SquareInput, TransversalsCommand,
};
use crate::report::{ReportBuilder, RunReport, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] ryserlab::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 when the library detected an internal inconsistency, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(ryserlab::Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(text)
}

fn read_input(b: &mut ReportBuilder, input: &FileInput) -> Result<String> {
    let text = read(&input.file)?;
    b.input(text.as_bytes());
    Ok(text)
}

fn load_square(b: &mut ReportBuilder, input: &SquareInput) -> Result<(LatinSquare, SymbolTable)> {
    let (sq, table) = match (&input.file, input.data) {
        (_, Some(Dataset::Parker)) => (parker_square(), SymbolTable::numeric(10)),
        (_, Some(Dataset::ParkerSwapped)) => (parker_swapped(), SymbolTable::numeric(10)),
        (Some(path), None) => parse_square(&read(path)?)?,
        (None, None) => return Err(CliError::Usage("give a square file or --data".into())),
    };
    b.input(write_square(&sq, Some(&table)).as_bytes());
    Ok((sq, table))
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("not a rational number: {s}")))
}

fn polynomial(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| {
            let coef = if c == 1 && d > 0 {
                String::new()
            } else {
                c.to_string()
            };
            match d {
                0 => c.to_string(),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{d}"),
            }
        })
        .collect();
    terms.join(" + ")
}

fn save(b: &mut ReportBuilder, out: &OutFile, text: &str) -> Result<()> {
    if let Some(path) = &out.out {
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        b.out("written", path.display().to_string());
    }
    Ok(())
}

fn system_report(b: &mut ReportBuilder, sys: &OrthogonalSystem) -> Result<()> {
    b.out("order", sys.order());
    b.out("squares", sys.len());
    b.out("system", write_squares(sys.squares()));
    let s = sys.squares();
    let mut all = true;
    for x in 0..s.len() {
        for y in x + 1..s.len() {
            all &= are_orthogonal(&s[x], &s[y])?;
        }
    }
    b.require(
        "pairwise orthogonal",
        all,
        format!("{} pairs", s.len() * s.len().saturating_sub(1) / 2),
    );
    Ok(())
}

fn gf_system(p: u64, a: u32) -> Result<OrthogonalSystem> {
    let field = FiniteField::new(p, a)?;
    if field.size() == 2 {
        return Ok(OrthogonalSystem::new(2, vec![LatinSquare::cyclic(2)])?);
    }
    Ok(complete_system(&field)?)
}

fn verdict_status(v: &Verdict, gating: bool) -> Status {
    match v {
        _ if !gating => Status::Info,
        Verdict::Holds | Verdict::Equality => Status::Pass,
        Verdict::Violated => Status::Fail,
        Verdict::Inconclusive => Status::Info,
        Verdict::Skipped(_) => Status::Skip,
    }
}

/// Runs one command and returns its report.
pub fn execute(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let mut b = ReportBuilder::new(format!("{:?}", cli.command));
    let par = cli.threads > 1;
    match &cli.command {
        Command::Match(input) => {
            let a = parse_zero_one(&read_input(&mut b, input)?)?;
            let m = max_matching(&a);
            let cover = min_line_cover(&a);
            b.out("matching_size", m.len());
            b.out(
                "matching",
                m.cells()
                    .iter()
                    .map(|&(i, j)| format!("{i}:{j}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            b.require(
                "valid matching",
                m.is_valid_for(&a),
                "cells hold ones in distinct lines",
            );
            b.require(
                "konig",
                m.len() == cover.len(),
                format!("matching {} = cover {}", m.len(), cover.len()),
            );
        }
        Command::Cover(input) => {
            let a = parse_zero_one(&read_input(&mut b, input)?)?;
            let cover = min_line_cover(&a);
            let m = max_matching(&a);
            b.out("cover_size", cover.len());
            b.out("rows", json!(cover.rows));
            b.out("cols", json!(cover.cols));
            b.require("covers", cover.covers(&a), "every 1 lies on a chosen line");
            b.require(
                "konig",
                m.len() == cover.len(),
                format!("cover {} = matching {}", cover.len(), m.len()),
            );
        }
        Command::Sdr(input) => {
            let a = parse_zero_one(&read_input(&mut b, input)?)?;
            let sys = SetSystem::from_incidence(&a);
            match find_sdr(&sys) {
                Ok(sdr) => {
                    b.out("sdr", json!(sdr.0));
                    b.require(
                        "distinct representatives",
                        is_sdr(&sys, &sdr),
                        "a_i in S_i, all distinct",
                    );
                }
                Err(v) => {
                    b.out("hall_violator", json!(v.indices));
                    b.out("union", json!(v.union));
                    b.require(
                        "hall violation",
                        v.union.len() < v.indices.len(),
                        format!("{} sets with {} elements", v.indices.len(), v.union.len()),
                    );
                }
            }
        }
        Command::Birkhoff(input) => {
            let a = parse_matrix(&read_input(&mut b, input)?)?;
            let dec = birkhoff_decompose(&a)?;
            let n = a.rows();
            let terms: Vec<String> = dec
                .terms
                .iter()
                .map(|(c, p)| {
                    format!(
                        "{c} * [{}]",
                        p.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                    )
                })
                .collect();
            b.out("terms", dec.terms.len());
            b.out("decomposition", terms.join("\n") + "\n");
            b.require(
                "reconstructs",
                dec.reconstruct(n) == a,
                "exact sum equals the input",
            );
            b.require(
                "term bound",
                dec.terms.len() <= birkhoff_term_bound(n),
                format!("{} <= {}", dec.terms.len(), birkhoff_term_bound(n)),
            );
        }
        Command::Complete { input, order } => {
            let parsed = parse_rectangle(&read_input(&mut b, input)?, *order)?;
            let rect = &parsed.rect;
            let c = completable_rs(rect)?;
            b.out("order", rect.order());
            b.out("counts", json!(c.counts));
            b.out("threshold", c.threshold);
            b.out("completable", c.completable);
            if let Some(sq) = &c.completion {
                b.out("completion", write_square(sq, Some(&parsed.symbols)));
                let extends = (0..rect.rows())
                    .all(|i| (0..rect.cols()).all(|j| sq.get(i, j) == rect.row(i)[j] as usize));
                b.require(
                    "completion extends input",
                    extends,
                    "first rows and columns preserved",
                );
            }
        }
        Command::Transversals(cmd) => match cmd {
            TransversalsCommand::Count(input) => {
                let (sq, _) = load_square(&mut b, input)?;
                let count = if par {
                    count_transversals_parallel(&sq)?
                } else {
                    count_transversals(&sq)?
                };
                b.out("count", count);
            }
            TransversalsCommand::List(input) => {
                let (sq, table) = load_square(&mut b, input)?;
                let set = if par {
                    enumerate_transversals_parallel(&sq)?
                } else {
                    enumerate_transversals(&sq)?
                };
                b.out("count", set.len());
                let lines: String = set
                    .transversals()
                    .iter()
                    .map(|t| write_transversal(t, Some(&table)) + "\n")
                    .collect();
                b.out("transversals", lines);
            }
            TransversalsCommand::Parity(input) => {
                let (sq, _) = load_square(&mut b, input)?;
                let v = check_parity_conjecture(&sq)?;
                b.out("order", v.order);
                b.out("count", v.count);
                b.out("parity_matches_order", v.consistent);
                if v.order % 2 == 0 {
                    b.require(
                        "even order gives an even count",
                        v.consistent,
                        format!("{} transversals", v.count),
                    );
                } else {
                    let detail = if v.consistent {
                        "odd count, as conjectured for odd orders".to_string()
                    } else {
                        format!(
                            "even count {}: a counterexample to the odd-order parity statement",
                            v.count
                        )
                    };
                    b.check("odd-order parity", Status::Info, detail);
                }
            }
            TransversalsCommand::Find(input) => {
                let (sq, table) = load_square(&mut b, input)?;
                match find_transversal(&sq)? {
                    Some(t) => {
                        b.out("transversal", write_transversal(&t, Some(&table)));
                        b.out("columns", write_path(t.path()));
                    }
                    None => b.out("transversal", "none"),
                }
            }
        },
        Command::Decompose(input) => {
            let (sq, table) = load_square(&mut b, input)?;
            match find_decomposition(&sq)? {
                Some(dec) => {
                    let lines: String = dec
                        .transversals()
                        .iter()
                        .map(|t| write_transversal(t, Some(&table)) + "\n")
                        .collect();
                    b.out("decomposition", lines);
                }
                None => b.out("decomposition", "none"),
            }
        }
        Command::Mate(input) => {
            let (sq, _) = load_square(&mut b, input)?;
            match find_decomposition(&sq)? {
                Some(dec) => {
                    let mate = mate_from_decomposition(&sq, &dec)?;
                    b.out("mate", write_square(&mate, None));
                    b.require(
                        "orthogonal",
                        are_orthogonal(&sq, &mate)?,
                        "all n^2 ordered pairs occur",
                    );
                }
                None => b.out("mate", "none"),
            }
        }
        Command::DecompositionsCount { input, budget } => {
            let (sq, _) = load_square(&mut b, input)?;
            match budget {
                Some(nodes) => {
                    let partial = count_decompositions_bounded(&sq, *nodes)?;
                    b.out("count", partial.count);
                    b.out("complete", partial.complete);
                    b.out("budget", partial.budget);
                }
                None => {
                    let count = if par {
                        count_decompositions_parallel(&sq)?
                    } else {
                        count_decompositions(&sq)?
                    };
                    b.out("count", count);
                    b.out("complete", true);
                }
            }
        }
        Command::Mols(cmd) => match cmd {
            MolsCommand::Gf { p, a, out } => {
                let field = FiniteField::new(*p, *a)?;
                b.out("field_size", field.size());
                b.out("modulus", polynomial(field.modulus()));
                b.require(
                    "field axioms",
                    field.check_axioms(),
                    "checked on all pairs and triples",
                );
                let sys = complete_system(&field)?;
                system_report(&mut b, &sys)?;
                save(&mut b, out, &write_squares(sys.squares()))?;
            }
            MolsCommand::Macneish { n, out } => {
                let sys = macneish_mols(*n)?;
                system_report(&mut b, &sys)?;
                save(&mut b, out, &write_squares(sys.squares()))?;
            }
        },
        Command::Plane(cmd) => match cmd {
            PlaneCommand::Build { system, p, a, out } => {
                let sys = match (system, p, a) {
                    (Some(path), _, _) => {
                        let text = read(path)?;
                        b.input(text.as_bytes());
                        let squares: Vec<LatinSquare> =
                            parse_squares(&text)?.into_iter().map(|(s, _)| s).collect();
                        let order = squares.first().map_or(0, LatinSquare::order);
                        OrthogonalSystem::new(order, squares)?
                    }
                    (None, Some(p), Some(a)) => gf_system(*p, *a)?,
                    _ => return Err(CliError::Usage("give --system or both --p and --a".into())),
                };
                let plane = plane_from_system(&sys)?;
                let n = plane.order();
                b.out("order", n);
                b.out("points", plane.size());
                b.out("incidence", write_zero_one(plane.matrix()));
                b.require(
                    "plane",
                    verify_plane(plane.matrix(), n)?,
                    format!("AA^T = {n}I + J"),
                );
                save(&mut b, out, &write_zero_one(plane.matrix()))?;
            }
            PlaneCommand::Verify { input, order } => {
                let a = parse_zero_one(&read_input(&mut b, input)?)?;
                let ok = verify_plane(&a, *order)?;
                b.out("is_plane", ok);
                b.require("plane", ok, format!("AA^T = {order}I + J"));
            }
            PlaneCommand::Extract { input, order } => {
                let a = parse_zero_one(&read_input(&mut b, input)?)?;
                let plane = PlaneIncidence::new(a, *order)?;
                let sys = system_from_plane(&plane)?;
                b.require(
                    "complete",
                    sys.is_complete(),
                    format!("{} squares of order {order}", sys.len()),
                );
                system_report(&mut b, &sys)?;
            }
        },
        Command::Perm(cmd) => match cmd {
            PermCommand::Compute(input) => {
                let a = parse_matrix(&read_input(&mut b, input)?)?;
                let per = permanent(&a)?;
                b.out("permanent", per.value.to_string());
                b.out("method", format!("{:?}", per.method).to_lowercase());
            }
            PermCommand::Bounds(input) => {
                let a = parse_matrix(&read_input(&mut b, input)?)?;
                let report = bound_report(&a)?;
                b.out("permanent", report.permanent.to_string());
                for e in &report.entries {
                    let detail = format!("{} with bound {}: {}", e.statement, e.value, e.verdict);
                    b.check(e.name, verdict_status(&e.verdict, e.gating), detail);
                }
            }
            PermCommand::Counterexamples => {
                let r = counterexample_suite()?;
                b.out("jurkat_per_a", r.jurkat_a.to_string());
                b.out("jurkat_per_b", r.jurkat_b.to_string());
                b.out("jurkat_per_ab", r.jurkat_ab.to_string());
                b.out("newman_per_a", r.newman_a.to_string());
                b.out("newman_per_aat", r.newman_aat.to_string());
                b.require(
                    "per(AB) > min(per A, per B)",
                    r.jurkat_refutes,
                    "product bound refuted",
                );
                b.require(
                    "per(AA^T) > per(A)",
                    r.newman_refutes,
                    "monotonicity refuted",
                );
            }
            PermCommand::Identity { n, x, y } => {
                let d = derangement_identity_check(*n)?;
                b.out("derangements", d.derangements.to_string());
                b.out("per_j_minus_i", d.permanent.to_string());
                b.out("identity_sum", d.identity_sum.to_string());
                b.out("wrong_exponent_sum", d.wrong_exponent_sum.to_string());
                b.require(
                    "derangement identity",
                    d.holds,
                    format!("D_{n} = per(J - I) = sum"),
                );
                if let (Some(x), Some(y)) = (x, y) {
                    let (x, y) = (parse_rational(x)?, parse_rational(y)?);
                    let c = circulant_identity_check(*n, &x, &y)?;
                    b.out("circulant_permanent", c.permanent.to_string());
                    b.out("closed_form", c.closed_form.to_string());
                    b.out("expansion", c.expansion.to_string());
                    b.out(
                        "kaplansky",
                        json!(c
                            .coefficients
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()),
                    );
                    b.require("circulant identity", c.holds, "per = x^n + y^n = expansion");
                }
            }
        },
        Command::Count(cmd) => match cmd {
            CountCommand::Squares { n } => {
                let count = if par {
                    count_reduced_squares_parallel(*n)?
                } else {
                    count_reduced_squares(*n)?
                };
                b.out("reduced_squares", count);
            }
            CountCommand::Rectangles { r, n, normalized } => {
                b.out(
                    "rectangles",
                    count_rectangles(*r, *n, *normalized)?.to_string(),
                );
            }
            CountCommand::Sandwich { r, n } => {
                let s = rectangle_sandwich_check(*r, *n)?;
                b.out("count", s.count.to_string());
                b.out("lower", s.lower.to_string());
                b.out("upper", s.upper.clone());
                b.out("upper_without_factorial", s.upper_without_factorial.clone());
                b.check(
                    "lower bound",
                    verdict_status(&s.lower_verdict, true),
                    s.lower_verdict.to_string(),
                );
                b.check(
                    "upper bound",
                    verdict_status(&s.upper_verdict, true),
                    s.upper_verdict.to_string(),
                );
                b.check(
                    "upper bound without factorial",
                    Status::Info,
                    s.upper_without_factorial_verdict.to_string(),
                );
            }
        },
        Command::Problem1(input) => {
            let a = parse_zero_one(&read_input(&mut b, input)?)?;
            let (outcome, detail) = match problem1_analyze(&a)? {
                Problem1Outcome::AllOnesRow(i) => ("all_ones_row", json!(i)),
                Problem1Outcome::DisjointColumns { a, b } => ("disjoint_columns", json!([a, b])),
                Problem1Outcome::ForbiddenSubmatrix { rows, cols } => {
                    ("forbidden_submatrix", json!({"rows": rows, "cols": cols}))
                }
            };
            b.out("outcome", outcome);
            b.out("witness", detail);
        }
        Command::Problem2 {
            input,
            v,
            k,
            lambda,
        } => {
            let a = parse_zero_one(&read_input(&mut b, input)?)?;
            match problem2_analyze(&a, DesignParams::new(*v, *k, *lambda))? {
                Problem2Outcome::Verified { trace, row_sums_k } => {
                    b.out("trace", trace);
                    b.out("row_sums_k", row_sums_k);
                    b.require(
                        "trace equals k",
                        trace == *k,
                        format!("trace {trace}, k {k}"),
                    );
                }
                Problem2Outcome::PremiseFailure(p) => {
                    b.out("premise_failure", format!("{p:?}"));
                }
            }
        }
        Command::Acceptance { scale } => {
            for r in acceptance::run(*scale) {
                b.check(format!("criterion {}", r.id), r.status, r.line_detail());
            }
        }
    }
    Ok(b.finish(start.elapsed()))
}
