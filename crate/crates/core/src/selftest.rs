//! Built-in golden vectors plus a seeded randomized agreement sweep.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decompose::{decomposable_brute_force, hnf_decomposition, is_decomposable, verify_decomposition};
use crate::graph::{rref_int, WeightedGraph};
use crate::hermite::hermite_normal_form;
use crate::imat;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::sampling::random_admissible;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfTestCase {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub mod golden {
    use crate::imat;
    use crate::matrix::IntMatrix;

    pub fn a() -> IntMatrix {
        imat![[2, -4, 2, 5, -6], [2, -2, 2, 5, -3], [0, -2, 1, 2, -3]]
    }

    pub fn h() -> IntMatrix {
        imat![[2, 0, 0, 1, 0], [0, 2, 0, 0, 3], [0, 0, 1, 2, 0]]
    }

    pub fn p() -> IntMatrix {
        imat![[1, -2, 2], [1, -1, 2], [0, -1, 1]]
    }

    pub fn gram() -> IntMatrix {
        imat![
            [4, 0, 0, 2, 0],
            [0, 4, 0, 0, 6],
            [0, 0, 1, 2, 0],
            [2, 0, 2, 5, 0],
            [0, 6, 0, 0, 9]
        ]
    }

    pub fn laplacian() -> IntMatrix {
        imat![
            [2, 0, 0, -2, 0],
            [0, 6, 0, 0, -6],
            [0, 0, 2, -2, 0],
            [-2, 0, -2, 4, 0],
            [0, -6, 0, 0, 6]
        ]
    }

    pub fn laplacian_rref() -> IntMatrix {
        imat![
            [1, 0, 0, -1, 0],
            [0, 1, 0, 0, -1],
            [0, 0, 1, -1, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0]
        ]
    }

    pub fn blocks() -> Vec<IntMatrix> {
        vec![imat![[2, 0, 1], [0, 1, 2]], imat![[2, 3]]]
    }

    pub fn components() -> Vec<Vec<usize>> {
        vec![vec![1, 3, 4], vec![2, 5]]
    }
}

fn case(name: &'static str, passed: bool, detail: impl Into<String>) -> SelfTestCase {
    SelfTestCase {
        name,
        passed,
        detail: detail.into(),
    }
}

pub fn run(seed: u64, random_cases: usize) -> Vec<SelfTestCase> {
    let mut out = Vec::new();
    let a = golden::a();

    let hnf = hermite_normal_form(&a);
    out.push(case(
        "hnf",
        hnf.h == golden::h() && hnf.p.multiply(&hnf.h).ok() == Some(a.clone()) && hnf.p.is_unimodular(),
        format!("H =\n{}", hnf.h),
    ));
    out.push(case(
        "hnf_alternative_witness",
        golden::p().multiply(&golden::h()).ok() == Some(a.clone()) && golden::p().is_unimodular(),
        "P·H = A with the reference witness",
    ));

    let b = hnf.h.gram();
    out.push(case("gram", b == golden::gram(), format!("B =\n{b}")));

    let graph = WeightedGraph::new(b).expect("gram is symmetric");
    let l = graph.laplacian();
    out.push(case("laplacian", l == golden::laplacian(), format!("L =\n{l}")));
    let r = rref_int(&l);
    out.push(case(
        "laplacian_rref",
        r.matrix == RatMatrix::from(&golden::laplacian_rref()),
        format!("R =\n{}", r.matrix),
    ));

    let zp = graph.components_via_zero_pattern();
    let via_rref = graph.components_via_rref();
    out.push(case(
        "components",
        zp.one_based() == golden::components()
            && via_rref.as_ref().map(|p| p.one_based()).ok() == Some(golden::components()),
        zp.to_string(),
    ));

    match hnf_decomposition(&a) {
        Ok(d) => {
            let v = verify_decomposition(&a, &d);
            out.push(case(
                "decomposition",
                d.decomposable && d.blocks == golden::blocks() && v.ok,
                format!("columns {}; reasons {:?}", d.column_partition, v.reasons),
            ));
        }
        Err(e) => out.push(case("decomposition", false, e.to_string())),
    }

    let row = imat![[1, 1]];
    out.push(case(
        "indecomposable_row",
        is_decomposable(&row) == Ok(false)
            && decomposable_brute_force(&row).ok() == Some(None)
            && hnf_decomposition(&row).is_ok_and(|d| d.blocks == vec![row.clone()]),
        "[[1, 1]] stays a single block",
    ));
    out.push(case(
        "identity_splits",
        is_decomposable(&IntMatrix::identity(4)) == Ok(true),
        "I4 is decomposable",
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..random_cases {
        let m = random_admissible(&mut rng, 3, 6, 3);
        let theorem = is_decomposable(&m).expect("admissible");
        let oracle = decomposable_brute_force(&hermite_normal_form(&m).h)
            .expect("within limits")
            .is_some();
        let sound = hnf_decomposition(&m).is_ok_and(|d| verify_decomposition(&m, &d).ok);
        if theorem != oracle || !sound {
            mismatches.push(m);
        }
    }
    out.push(case(
        "random_agreement",
        mismatches.is_empty(),
        match mismatches.first() {
            None => format!("{random_cases} cases, seed {seed}"),
            Some(m) => format!("{} mismatches; first:\n{m}", mismatches.len()),
        },
    ));
    out
}
