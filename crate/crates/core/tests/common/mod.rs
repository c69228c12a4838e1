//! Randomized property suites shared by the property tests and the
//! acceptance run. Every suite uses a pinned proptest seed.
#![allow(dead_code)]

use gencluster::cases::case_seed;
use gencluster::composite::{composite_mutate_matrix, enlarge, CompositeSeed};
use gencluster::document::{SeedDocument, SemifieldName, Term};
use gencluster::pattern::{ExchangeMatrix, GeneralizedSeed, TreeWord};
use gencluster::verify::{matrix_from_upper, run_check, Check, Instance};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub const SEED: [u8; 32] = *b"generalized-cluster-pinned-seed!";

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        rng_algorithm: RngAlgorithm::ChaCha,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Universal,
    Tropical,
    Trivial,
}

/// A random instance: skew-symmetrizer, upper triangle of B, degrees,
/// a walk and a coefficient semifield.
#[derive(Clone, Debug)]
pub struct Spec {
    pub d: Vec<i64>,
    pub upper: Vec<i64>,
    pub r: Vec<usize>,
    pub dirs: Vec<usize>,
    pub coefficients: Coefficients,
}

/// Instances with `n ≤ 3`, `r_i ≤ 3`, `|b_ij| ≤ 2` and walks of length at
/// most `depth`.
pub fn spec(depth: usize, coefficients: Vec<Coefficients>) -> impl Strategy<Value = Spec> {
    (1usize..=3).prop_flat_map(move |n| {
        (
            vec(1i64..=2, n),
            vec(-2i64..=2, n * (n - 1) / 2),
            vec(1usize..=3, n),
            vec(0..n, 0..=depth),
            proptest::sample::select(coefficients.clone()),
        )
            .prop_map(|(d, upper, r, dirs, coefficients)| Spec {
                d,
                upper,
                r,
                dirs,
                coefficients,
            })
    })
}

impl Spec {
    pub fn matrix(&self) -> ExchangeMatrix {
        matrix_from_upper(&self.d, &self.upper)
    }

    /// The walk with repeated directions dropped.
    pub fn word(&self) -> TreeWord {
        let mut dirs: Vec<usize> = Vec::new();
        for &k in &self.dirs {
            if dirs.last() != Some(&k) {
                dirs.push(k);
            }
        }
        TreeWord::new(dirs, self.r.len()).unwrap()
    }

    pub fn document(&self) -> SeedDocument {
        let mut doc = SeedDocument::universal(self.matrix().rows().to_vec(), &self.r);
        match self.coefficients {
            Coefficients::Universal => {}
            Coefficients::Tropical => doc.semifield.kind = SemifieldName::Tropical,
            Coefficients::Trivial => {
                doc.semifield.kind = SemifieldName::Trivial;
                doc.semifield.generators.clear();
                for y in &mut doc.y {
                    y.numerator = vec![Term::unit()];
                }
                for z in &mut doc.z {
                    let top = z.len() - 1;
                    for (l, c) in z.iter_mut().enumerate() {
                        let mut t = Term::unit();
                        if l != 0 && l != top {
                            t.multiplicity = l as u64 + 1;
                        }
                        *c = vec![t];
                    }
                }
            }
        }
        doc
    }

    pub fn seed(&self) -> GeneralizedSeed {
        self.document().to_seed().unwrap()
    }

    pub fn instance(&self) -> Instance {
        Instance::new(format!("{:?}", self), self.seed())
    }
}

fn finish(result: Result<(), TestError<Spec>>, cases: u32) -> Result<u32, String> {
    result.map(|_| cases).map_err(|e| e.to_string())
}

/// `μ_k μ_k = id` on generalized seeds, composite seeds and exchange
/// matrices, at a random vertex of depth at most 2, for every `k`.
pub fn involution(cases: u32) -> Result<u32, String> {
    let all = vec![Coefficients::Universal, Coefficients::Tropical, Coefficients::Trivial];
    let res = runner(cases).run(&spec(2, all), |s| {
        let w = s.word();
        let g = s.seed().walk(&w).unwrap();
        let c = CompositeSeed::initial(&s.seed()).unwrap().walk(&w).unwrap();
        for k in 0..s.r.len() {
            let back = g.mutate(k).unwrap().mutate(k).unwrap();
            prop_assert!(back.equals(&g), "generalized k={}: {:?}", k + 1, back.difference(&g));
            let back = c.mutate(k).unwrap().mutate(k).unwrap();
            prop_assert!(back.equals(&c), "composite k={}: {:?}", k + 1, back.difference(&c));
            let b = g.b();
            prop_assert_eq!(&b.mutate(&s.r, k).unwrap().mutate(&s.r, k).unwrap(), b);
        }
        Ok(())
    });
    finish(res, cases)
}

/// Every order of the inner mutations of a composite mutation, and the
/// closed form, give the same seed.
pub fn composite_order(cases: u32) -> Result<u32, String> {
    let all = vec![Coefficients::Universal, Coefficients::Tropical, Coefficients::Trivial];
    let strategy = (spec(2, all), any::<u64>());
    let res = runner(cases).run(&strategy, |(s, shuffle)| {
        let c = CompositeSeed::initial(&s.seed()).unwrap().walk(&s.word()).unwrap();
        for k in 0..s.r.len() {
            let reference = c.mutate(k).unwrap();
            let mut order: Vec<usize> = (0..s.r[k]).collect();
            let mut x = shuffle;
            for i in (1..order.len()).rev() {
                order.swap(i, (x % (i as u64 + 1)) as usize);
                x /= i as u64 + 1;
            }
            let other = c.mutate_ordered(k, &order).unwrap();
            prop_assert!(other.equals(&reference), "order {:?}: {:?}", order, other.difference(&reference));
            let closed = c.mutate_closed_form(k).unwrap();
            prop_assert!(closed.equals(&reference), "closed form: {:?}", closed.difference(&reference));
        }
        Ok(())
    })
    .map_err(|e| match e {
        TestError::Abort(r) => TestError::Abort(r),
        TestError::Fail(r, (s, _)) => TestError::Fail(r, s),
    });
    finish(res, cases)
}

/// `D` skew-symmetrizes every exchange matrix along walks of depth at most
/// 6, and the enlarged `D` every enlarged matrix.
pub fn skew_symmetrizer(cases: u32) -> Result<u32, String> {
    let res = runner(cases).run(&spec(6, vec![Coefficients::Universal]), |s| {
        let mut b = s.matrix();
        let d = s.d.clone();
        prop_assert!(b.is_skew_symmetrized_by(&d));
        let big_d: Vec<i64> = d.iter().zip(&s.r).flat_map(|(&x, &r)| std::iter::repeat_n(x, r)).collect();
        let mut big = enlarge(&b, &s.r);
        for &k in s.word().dirs() {
            b = b.mutate(&s.r, k).unwrap();
            big = composite_mutate_matrix(&big, &s.r, k).unwrap();
            prop_assert!(b.is_skew_symmetrized_by(&d), "{} by {:?}", b.render(), d);
            prop_assert!(big.is_skew_symmetrized_by(&big_d), "{} by {:?}", big.render(), big_d);
            prop_assert_eq!(&big, &enlarge(&b, &s.r));
        }
        Ok(())
    });
    finish(res, cases)
}

/// Separation formulas of both patterns reproduce the mutated seeds.
pub fn separation(cases: u32, depth: usize) -> Result<u32, String> {
    let all = vec![Coefficients::Universal, Coefficients::Tropical, Coefficients::Trivial];
    let res = runner(cases).run(&spec(depth, all), |s| {
        let r = run_check(Check::Separation, &s.instance(), &s.word());
        prop_assert!(r.passed, "{}", r.line());
        Ok(())
    });
    finish(res, cases)
}

/// Cluster variables are Laurent polynomials with nonnegative
/// coefficients in the initial cluster.
pub fn laurent_positive(cases: u32, depth: usize) -> Result<u32, String> {
    let all = vec![Coefficients::Universal, Coefficients::Tropical, Coefficients::Trivial];
    let res = runner(cases).run(&spec(depth, all), |s| {
        let r = run_check(Check::LaurentPositive, &s.instance(), &s.word());
        prop_assert!(r.passed, "{}", r.line());
        Ok(())
    });
    finish(res, cases)
}

/// `check` on both worked cases over all reduced words up to `depth`.
pub fn on_cases(check: Check, depth: usize) -> Result<u32, String> {
    on_cases_at(check, &[(1, depth), (2, depth)])
}

/// `check` over all reduced words up to the given depth per case.
pub fn on_cases_at(check: Check, depths: &[(u32, usize)]) -> Result<u32, String> {
    let mut count = 0;
    for &(case, depth) in depths {
        let inst = Instance::new(format!("case{case}"), case_seed(case).unwrap());
        for w in TreeWord::all_up_to(2, depth) {
            let r = run_check(check, &inst, &w);
            if !r.passed {
                return Err(r.line());
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Walk depths per case for the separation and positivity suites. Case 2
/// stops at 4: a single depth-5 walk there runs for several minutes.
pub const CASE_DEPTHS: [(u32, usize); 2] = [(1, 5), (2, 4)];

/// Word length bound for the separation and positivity suites on random
/// instances. At 4, rank-3 instances with degree-2 exchange polynomials and
/// entries of size 2 already exhaust memory.
pub const RANDOM_DEPTH: usize = 3;
