use std::fmt::Write as _;

use hnfdecomp::decompose::SPLIT_ORACLE_LIMIT;
use hnfdecomp::graph::REDUCIBILITY_ORACLE_LIMIT;
use hnfdecomp::io::{ChecksReport, ComponentMethod, ComponentsReport, DecomposeReport, HnfReport};
use hnfdecomp::{
    decomposable_brute_force, hermite_normal_form, prepare_input, reducibility_witness_brute_force, rref_int,
    run_hnf_decomposition, selftest, verify_decomposition, DecomposeError, GraphError, IntMatrix,
    WeightedGraph,
};
use serde::Serialize;

use crate::{exit, Format, Outcome};

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports serialize");
    s.push('\n');
    s
}

fn indented(m: &impl std::fmt::Display) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn index_list(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn set_list(sets: &[Vec<usize>]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn ok(stdout: String, code: u8) -> Outcome {
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

pub fn hnf(a: &IntMatrix, format: Format) -> Outcome {
    let res = hermite_normal_form(a);
    let report = HnfReport::from(&res);
    let out = match format {
        Format::Structured => json(&report),
        Format::Text => format!(
            "rank: {}\npivot_cols: {}\nH:\n{}P:\n{}P_inverse:\n{}",
            report.rank,
            index_list(&report.pivot_cols),
            indented(&report.h),
            indented(&report.p),
            indented(&report.p_inverse),
        ),
    };
    ok(out, exit::OK)
}

fn decompose_error(e: DecomposeError) -> Outcome {
    let code = match e {
        DecomposeError::ZeroColumn(_) => exit::INVALID_INPUT,
        DecomposeError::RankDeficient { .. } => exit::RANK_DEFICIENT,
        DecomposeError::TooLarge { .. } | DecomposeError::BlockStructure { .. } => exit::CHECK_FAILED,
    };
    Outcome::fail(code, format!("error: {e}"))
}

pub fn decompose(input: &IntMatrix, format: Format, check: bool, strip_zero_rows: bool) -> Outcome {
    let a = match prepare_input(input, strip_zero_rows) {
        Ok(a) => a,
        Err(e) => return decompose_error(e),
    };
    let run = match run_hnf_decomposition(&a) {
        Ok(r) => r,
        Err(e) => return decompose_error(e),
    };
    let d = &run.decomposition;

    let mut checks = ChecksReport::from_connectivity(&run.connectivity);
    if check {
        checks.record_verification(&verify_decomposition(&a, d));
        let h = &run.hnf.h;
        if h.rows() <= SPLIT_ORACLE_LIMIT && h.cols() <= SPLIT_ORACLE_LIMIT {
            let split = decomposable_brute_force(h).expect("size checked").is_some();
            checks.split_oracle_agrees = Some(split == d.decomposable);
        }
        if h.cols() <= REDUCIBILITY_ORACLE_LIMIT {
            let witness = reducibility_witness_brute_force(&h.gram()).expect("gram is symmetric");
            checks.reducibility_oracle_agrees = Some(witness.is_some() == d.decomposable);
        }
    }
    let passed = checks.passed();

    let mut report = DecomposeReport::new(&run, checks);
    if strip_zero_rows {
        report.stripped_rows = input.zero_rows().iter().map(|i| i + 1).collect();
    }

    let out = match format {
        Format::Structured => json(&report),
        Format::Text => render_decomposition(&report, check),
    };
    let code = if !passed {
        exit::CHECK_FAILED
    } else if report.decomposable {
        exit::OK
    } else {
        exit::INDECOMPOSABLE
    };
    let mut outcome = ok(out, code);
    if !passed {
        outcome.stderr = "error: decomposition checks failed".into();
    }
    outcome
}

fn render_decomposition(r: &DecomposeReport, check: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "decomposable: {}", r.decomposable);
    let _ = writeln!(s, "rank: {}", r.rank);
    let _ = writeln!(s, "pivot_cols: {}", index_list(&r.pivot_cols));
    if !r.stripped_rows.is_empty() {
        let _ = writeln!(s, "stripped_rows: {}", index_list(&r.stripped_rows));
    }
    let _ = writeln!(s, "column_partition: {}", set_list(&r.column_partition));
    let _ = writeln!(s, "row_partition: {}", set_list(&r.row_partition));
    let _ = writeln!(s, "Q: {}", index_list(&r.q_vector));
    let _ = write!(s, "P:\n{}", indented(&r.p));
    let _ = write!(s, "P_inverse:\n{}", indented(&r.p_inverse));
    for (k, b) in r.blocks.iter().enumerate() {
        let _ = write!(s, "block {} ({}x{}):\n{}", k + 1, b.rows(), b.cols(), indented(b));
    }
    let c = &r.checks;
    let _ = writeln!(s, "checks:");
    match &c.laplacian_rref_sets {
        None => {
            let _ = writeln!(s, "  laplacian_rref: agree");
        }
        Some(sets) => {
            let _ = writeln!(s, "  laplacian_rref: disagree (rref sets {})", set_list(sets));
        }
    }
    if check {
        let flag = |v: Option<bool>| match v {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "skipped",
        };
        let _ = writeln!(s, "  verify: {}", flag(c.verified));
        for reason in &c.verify_reasons {
            let _ = writeln!(s, "    - {reason}");
        }
        let _ = writeln!(s, "  split_oracle: {}", flag(c.split_oracle_agrees));
        let _ = writeln!(s, "  reducibility_oracle: {}", flag(c.reducibility_oracle_agrees));
    }
    s
}

pub fn components(b: &IntMatrix, format: Format, method: ComponentMethod) -> Outcome {
    let g = match WeightedGraph::new(b.clone()) {
        Ok(g) => g,
        Err(e) => return Outcome::fail(exit::INVALID_INPUT, format!("error: {e}")),
    };
    let laplacian = g.laplacian();
    let want_rref = matches!(method, ComponentMethod::Rref | ComponentMethod::Both);
    let rref = want_rref.then(|| ComponentsReport::rref_rows(&rref_int(&laplacian)));

    let (components, methods_agree, rref_sets) = match method {
        ComponentMethod::ZeroPattern => (g.components_via_zero_pattern().one_based(), None, None),
        ComponentMethod::Rref => match g.components_via_rref() {
            Ok(p) => (p.one_based(), None, None),
            Err(e @ GraphError::RrefNotPartition { .. }) => {
                return Outcome::fail(exit::CHECK_FAILED, format!("error: {e}"));
            }
            Err(e) => return Outcome::fail(exit::INVALID_INPUT, format!("error: {e}")),
        },
        ComponentMethod::Both => {
            let zp = g.components_via_zero_pattern();
            match g.components_via_rref() {
                Ok(p) if p == zp => (zp.one_based(), Some(true), None),
                Ok(p) => (zp.one_based(), Some(false), Some(p.one_based())),
                Err(GraphError::RrefNotPartition { rref_sets, .. }) => {
                    (zp.one_based(), Some(false), Some(rref_sets))
                }
                Err(e) => return Outcome::fail(exit::INVALID_INPUT, format!("error: {e}")),
            }
        }
    };
    let report = ComponentsReport {
        method: match method {
            ComponentMethod::Rref => "rref",
            ComponentMethod::ZeroPattern => "zero-pattern",
            ComponentMethod::Both => "both",
        }
        .to_string(),
        laplacian,
        rref,
        components,
        methods_agree,
        rref_sets,
    };
    let out = match format {
        Format::Structured => json(&report),
        Format::Text => {
            let mut s = format!("laplacian:\n{}", indented(&report.laplacian));
            if let Some(rows) = &report.rref {
                let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
                let _ = writeln!(s, "rref:");
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    let _ = writeln!(s, "  {}", cells.join(" "));
                }
            }
            let _ = writeln!(s, "components: {}", set_list(&report.components));
            match (report.methods_agree, &report.rref_sets) {
                (Some(true), _) => {
                    let _ = writeln!(s, "note: methods agree");
                }
                (Some(false), Some(sets)) => {
                    let _ = writeln!(s, "note: methods disagree; rref sets {}", set_list(sets));
                }
                _ => {}
            }
            s
        }
    };
    ok(out, exit::OK)
}

#[derive(Serialize)]
struct SelftestLine<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

pub fn selftest(seed: u64, cases: usize, format: Format) -> Outcome {
    let results = selftest::run(seed, cases);
    let all = results.iter().all(|c| c.passed);
    let out = match format {
        Format::Structured => json(
            &results
                .iter()
                .map(|c| SelftestLine {
                    name: c.name,
                    passed: c.passed,
                    detail: &c.detail,
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = String::new();
            for c in &results {
                let _ = writeln!(s, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            }
            let _ = writeln!(
                s,
                "{}/{} passed",
                results.iter().filter(|c| c.passed).count(),
                results.len()
            );
            s
        }
    };
    ok(out, if all { exit::OK } else { exit::CHECK_FAILED })
}
