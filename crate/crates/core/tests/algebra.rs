mod common;

use std::sync::Arc;

use common::{runner, spec, Coefficients};
use gencluster::document::SeedDocument;
use gencluster::polyring::{
    elementary_expand, elementary_reduce, psi_hat, ElementarySymbols, LaurentPolynomial, Monomial,
    RationalFunction,
};
use gencluster::semifield::{
    ExchangePolynomial, Flavor, GroupRingElement, SemifieldElement, SemifieldKind,
};
use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

const TRIPLES: u32 = 1000;
const NVARS: usize = 2;

fn kind(flavor: Flavor) -> Arc<SemifieldKind> {
    let generators = match flavor {
        Flavor::Trivial => Vec::new(),
        _ => vec!["a".to_string(), "b".to_string()],
    };
    let vars = (0..generators.len()).collect();
    SemifieldKind::new(flavor, generators, vars, NVARS).unwrap()
}

/// Polynomial in two variables from `(coefficient, exponent, exponent)`
/// triples.
fn poly(nvars: usize, terms: &[(i64, i32, i32)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        nvars,
        terms.iter().map(|&(c, a, b)| {
            let mut e = vec![0; nvars];
            e[0] = a;
            e[1] = b;
            (Monomial::from_exps(e), BigInt::from(c))
        }),
    )
}

fn positive_poly(exp: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = Vec<(i64, i32, i32)>> {
    vec((1i64..=3, exp.clone(), exp), 1..=3)
}

/// Subtraction-free elements: Laurent monomials for the tropical kind,
/// ratios of positive polynomials for the universal kind.
fn element(flavor: Flavor) -> BoxedStrategy<SemifieldElement> {
    let k = kind(flavor);
    match flavor {
        Flavor::Trivial => Just(SemifieldElement::one(&k)).boxed(),
        Flavor::Tropical => vec(-3i64..=3, 2)
            .prop_map(move |e| SemifieldElement::monomial(&k, &e).unwrap())
            .boxed(),
        Flavor::Universal => (positive_poly(-1..=2), positive_poly(0..=1))
            .prop_map(move |(n, d)| {
                let sum = |ts: &[(i64, i32, i32)]| {
                    ts.iter()
                        .map(|&(c, a, b)| {
                            SemifieldElement::monomial(&k, &[a as i64, b as i64])
                                .unwrap()
                                .multiple(&BigInt::from(c))
                        })
                        .reduce(|x, y| x.add(&y).unwrap())
                        .unwrap()
                };
                sum(&n).div(&sum(&d)).unwrap()
            })
            .boxed(),
    }
}

fn np(flavor: Flavor) -> BoxedStrategy<GroupRingElement> {
    let k = kind(flavor);
    vec((1i64..=3, element(flavor)), 1..=3)
        .prop_map(move |ts| GroupRingElement::new(&k, ts.into_iter().map(|(a, p)| (BigInt::from(a), p)).collect()).unwrap())
        .boxed()
}

fn check(res: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) {
    if let Err(e) = res {
        panic!("{e}");
    }
}

fn same(a: &SemifieldElement, b: &SemifieldElement) -> Result<(), TestCaseError> {
    prop_assert!(a.equals(b), "{:?} != {:?}", a, b);
    Ok(())
}

#[test]
fn semifield_addition_laws() {
    for flavor in [Flavor::Trivial, Flavor::Tropical, Flavor::Universal] {
        let triple = (element(flavor), element(flavor), element(flavor));
        check(runner(TRIPLES).run(&triple, |(a, b, c)| {
            same(&a.add(&b)?, &b.add(&a)?)?;
            same(&a.add(&b)?.add(&c)?, &a.add(&b.add(&c)?)?)?;
            same(&a.mul(&b.add(&c)?)?, &a.mul(&b)?.add(&a.mul(&c)?)?)?;
            Ok(())
        }));
    }
}

#[test]
fn projection_respects_sum_and_product() {
    for flavor in [Flavor::Trivial, Flavor::Tropical, Flavor::Universal] {
        check(runner(200).run(&(np(flavor), np(flavor)), |(a, b)| {
            let pa = a.project_np()?.expect("nonzero");
            let pb = b.project_np()?.expect("nonzero");
            same(&a.add(&b)?.project_np()?.unwrap(), &pa.add(&pb)?)?;
            same(&a.mul(&b)?.project_np()?.unwrap(), &pa.mul(&pb)?)?;
            Ok(())
        }));
    }
}

fn exchange(flavor: Flavor) -> BoxedStrategy<ExchangePolynomial> {
    let k = kind(flavor);
    let inner = prop_oneof![Just(None), np(flavor).prop_map(Some)];
    vec(inner, 0..=3)
        .prop_map(move |cs| {
            let mut coeffs = vec![GroupRingElement::one(&k)];
            coeffs.extend(cs.into_iter().map(|c| c.unwrap_or_else(|| GroupRingElement::zero(&k))));
            coeffs.push(GroupRingElement::one(&k));
            ExchangePolynomial::new(coeffs).unwrap()
        })
        .boxed()
}

#[test]
fn specialization_is_never_zero() {
    for flavor in [Flavor::Trivial, Flavor::Tropical, Flavor::Universal] {
        check(runner(200).run(&(exchange(flavor), element(flavor)), |(z, y)| {
            let v = z.specialize(&y)?;
            if let Some(f) = v.as_rational() {
                prop_assert!(!f.is_zero());
                prop_assert!(f.is_subtraction_free());
            }
            Ok(())
        }));
    }
}

#[test]
fn reciprocal_polynomial() {
    check(runner(200).run(&(exchange(Flavor::Universal), positive_poly(-1..=1)), |(z, u)| {
        let u = RationalFunction::from_poly(&poly(NVARS, &u));
        let r = z.degree() as i32;
        let lhs = z.reciprocal().evaluate(&u);
        let rhs = u.pow(r)?.mul(&z.evaluate(&u.inv()?));
        prop_assert!(lhs.equals(&rhs));
        prop_assert!(z.reciprocal().reciprocal().equals(&z));
        Ok(())
    }));
}

/// Sum of `p` over all permutations of the first three variables.
fn symmetrize3(p: &LaurentPolynomial) -> LaurentPolynomial {
    let n = p.nvars();
    let mut acc = LaurentPolynomial::zero(n);
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let mut full: Vec<usize> = (0..n).collect();
        full[..3].copy_from_slice(&perm);
        acc = acc.add(&p.permute(&full));
    }
    acc
}

fn sym_poly() -> impl Strategy<Value = LaurentPolynomial> {
    vec((-3i64..=3, vec(0i32..=2, 4)), 1..=3).prop_map(|ts| {
        let p = LaurentPolynomial::from_terms(4, ts.into_iter().map(|(c, e)| (Monomial::from_exps(e), BigInt::from(c))));
        symmetrize3(&p)
    })
}

#[test]
fn elementary_reduction_is_a_ring_homomorphism() {
    let blocks = vec![vec![0, 1, 2]];
    check(runner(200).run(&(sym_poly(), sym_poly()), |(p, q)| {
        let rp = elementary_reduce(&p, &blocks)?;
        let rq = elementary_reduce(&q, &blocks)?;
        prop_assert_eq!(elementary_reduce(&p.add(&q), &blocks)?, rp.add(&rq));
        prop_assert_eq!(elementary_reduce(&p.mul(&q), &blocks)?, rp.mul(&rq));
        prop_assert_eq!(elementary_expand(&rp, &blocks), p);
        Ok(())
    }));
}

/// Variables `s1, s2, y, z`; the block `{s1, s2}` with `e_1 ↦ z`.
fn symbols() -> ElementarySymbols {
    ElementarySymbols {
        blocks: vec![vec![0, 1]],
        targets: vec![vec![RationalFunction::var(4, 3)]],
        aggregates: Vec::new(),
    }
}

/// Positive block-symmetric polynomials in `s1, s2, y` with a constant term.
fn psi_domain() -> impl Strategy<Value = RationalFunction> {
    vec((1i64..=2, vec(0i32..=2, 3)), 0..=2).prop_map(|ts| {
        let mut terms = vec![(Monomial::one(4), BigInt::from(1))];
        for (c, mut e) in ts {
            e.push(0);
            terms.push((Monomial::from_exps(e), BigInt::from(c)));
        }
        let p = LaurentPolynomial::from_terms(4, terms);
        let swapped = p.permute(&[1, 0, 2, 3]);
        RationalFunction::from_poly(&p.mul(&swapped))
    })
}

#[test]
fn psi_hat_is_multiplicative() {
    let sym = symbols();
    check(runner(100).run(&(psi_domain(), psi_domain(), -2i32..=2), |(f, g, k)| {
        let pf = psi_hat(&f, &sym)?;
        let pg = psi_hat(&g, &sym)?;
        prop_assert!(psi_hat(&f.mul(&g), &sym)?.equals(&pf.mul(&pg)));
        prop_assert!(psi_hat(&f.div(&g)?, &sym)?.equals(&pf.div(&pg)?));
        prop_assert!(psi_hat(&f.pow(k)?, &sym)?.equals(&pf.pow(k)?));
        Ok(())
    }));
}

fn ratfn() -> impl Strategy<Value = RationalFunction> {
    (vec((-3i64..=3, -1i32..=2, -1i32..=2), 1..=3), positive_poly(0..=2)).prop_filter_map("nonzero", |(n, d)| {
        let n = poly(NVARS, &n);
        (!n.is_zero()).then(|| RationalFunction::from_ratio(&n, &poly(NVARS, &d)).unwrap())
    })
}

#[test]
fn rational_function_equality_is_an_equivalence() {
    check(runner(300).run(&(ratfn(), ratfn(), ratfn()), |(a, h, k)| {
        let b = a.mul(&h).div(&h)?;
        let c = a.mul(&k).div(&k)?;
        prop_assert!(a.equals(&a));
        prop_assert!(a.equals(&b) && b.equals(&a));
        prop_assert!(b.equals(&c) && a.equals(&c));
        prop_assert!(!a.equals(&a.add(&RationalFunction::one(NVARS))));
        prop_assert_eq!(a.equals(&h), h.equals(&a));
        Ok(())
    }));
}

#[test]
fn seed_documents_round_trip() {
    let all = vec![Coefficients::Universal, Coefficients::Tropical, Coefficients::Trivial];
    check(runner(100).run(&spec(0, all), |s| {
        let doc = s.document();
        let text = doc.render();
        let back = SeedDocument::parse(&text)?;
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.render(), text);
        let seed = back.to_seed()?;
        prop_assert!(seed.equals(&doc.to_seed()?));
        Ok(())
    }));
}

/// Polynomials in three variables; wide exponent ranges and coefficients
/// reach the sparse, dense and big-coefficient product paths.
fn product_operand() -> impl Strategy<Value = LaurentPolynomial> {
    let coeff = prop_oneof![
        (-5i64..=5).prop_map(BigInt::from),
        (any::<i64>(), 0u32..200).prop_map(|(c, s)| BigInt::from(c) << s),
    ];
    let spread = prop_oneof![Just(2i32), Just(40i32)];
    spread.prop_flat_map(move |k| {
        vec((coeff.clone(), vec(-k..=k, 3)), 1..=40).prop_map(|ts| {
            LaurentPolynomial::from_terms(3, ts.into_iter().map(|(c, e)| (Monomial::from_exps(e), c)))
        })
    })
}

#[test]
fn multiplication_matches_schoolbook_product() {
    check(runner(300).run(&(product_operand(), product_operand()), |(p, q)| {
        let expected = LaurentPolynomial::from_terms(
            3,
            p.terms()
                .iter()
                .flat_map(|(ma, ca)| q.terms().iter().map(move |(mb, cb)| (ma.mul(mb), ca * cb))),
        );
        prop_assert_eq!(p.mul(&q), expected);
        Ok(())
    }));
}
