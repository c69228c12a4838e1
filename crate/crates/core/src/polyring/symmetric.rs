use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::poly::{LaurentPolynomial, Monomial};
use crate::error::{Error, Result};

/// True iff `p` is invariant under every permutation of the variables in
/// `block` (checked on adjacent transpositions).
pub fn block_symmetric(p: &LaurentPolynomial, block: &[usize]) -> bool {
    let n = p.nvars();
    for w in block.windows(2) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(w[0], w[1]);
        if p.permute(&perm) != *p {
            return false;
        }
    }
    true
}

/// Expansion of `e_1^{d_1} ... e_r^{d_r}` in `r` variables, keyed by
/// exponent vectors.
fn elementary_power(r: usize, d: &[u32], cache: &mut FxHashMap<Vec<u32>, Vec<(Vec<i32>, BigInt)>>) -> Vec<(Vec<i32>, BigInt)> {
    if let Some(v) = cache.get(d) {
        return v.clone();
    }
    let mut acc: FxHashMap<Vec<i32>, BigInt> = FxHashMap::default();
    acc.insert(vec![0; r], BigInt::one());
    for (k, &dk) in d.iter().enumerate() {
        // e_{k+1}: all 0/1 vectors with k+1 ones.
        let subsets: Vec<Vec<i32>> = (0u32..(1 << r))
            .filter(|m| m.count_ones() as usize == k + 1)
            .map(|m| (0..r).map(|b| ((m >> b) & 1) as i32).collect())
            .collect();
        for _ in 0..dk {
            let mut next: FxHashMap<Vec<i32>, BigInt> = FxHashMap::default();
            for (e, c) in &acc {
                for s in &subsets {
                    let key: Vec<i32> = e.iter().zip(s).map(|(a, b)| a + b).collect();
                    *next.entry(key).or_insert_with(BigInt::zero) += c;
                }
            }
            acc = next;
        }
    }
    let v: Vec<(Vec<i32>, BigInt)> = acc.into_iter().collect();
    cache.insert(d.to_vec(), v.clone());
    v
}

/// Rewrites `p` in the elementary symmetric polynomials of one block.
/// The result reuses the slot of the block's `l`-th variable for the
/// symbol `e_l`. Only monomials with non-increasing block exponents are
/// tracked; symmetry is checked up front.
fn reduce_block(p: &LaurentPolynomial, block: &[usize]) -> Result<LaurentPolynomial> {
    let n = p.nvars();
    let r = block.len();
    if r == 0 || p.is_zero() {
        return Ok(p.clone());
    }
    if !block_symmetric(p, block) {
        return Err(Error::NotBlockSymmetric);
    }
    let mut work: BTreeMap<Vec<i32>, FxHashMap<Monomial, BigInt>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key: Vec<i32> = block.iter().map(|&v| m.exps()[v]).collect();
        if key.iter().any(|&e| e < 0) {
            return Err(Error::NotBlockSymmetric);
        }
        if key.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let mut rest = m.exps().to_vec();
        for &v in block {
            rest[v] = 0;
        }
        *work
            .entry(key)
            .or_default()
            .entry(Monomial::from_exps(rest))
            .or_insert_with(BigInt::zero) += c;
    }
    let mut cache = FxHashMap::default();
    let mut out: Vec<(Monomial, BigInt)> = Vec::new();
    while let Some((alpha, coef)) = work.pop_last() {
        let coef: Vec<(Monomial, BigInt)> = coef.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if coef.is_empty() {
            continue;
        }
        let d: Vec<u32> = (0..r)
            .map(|k| (alpha[k] - if k + 1 < r { alpha[k + 1] } else { 0 }) as u32)
            .collect();
        for (m, c) in &coef {
            let mut e = m.exps().to_vec();
            for (k, &v) in block.iter().enumerate() {
                e[v] = d[k] as i32;
            }
            out.push((Monomial::from_exps(e), c.clone()));
        }
        for (beta, k) in elementary_power(r, &d, &mut cache) {
            if beta == alpha || beta.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let slot = work.entry(beta).or_default();
            for (m, c) in &coef {
                *slot.entry(m.clone()).or_insert_with(BigInt::zero) -= c * &k;
            }
        }
    }
    Ok(LaurentPolynomial::from_terms(n, out))
}

/// Unique representation of a block-symmetric polynomial in the
/// elementary symbols, computed by leading-term elimination in lex order,
/// one block at a time. Slot `blocks[i][l]` of the result carries the
/// exponent of `e_{i,l+1}`.
pub fn elementary_reduce(p: &LaurentPolynomial, blocks: &[Vec<usize>]) -> Result<LaurentPolynomial> {
    let mut q = p.clone();
    for block in blocks {
        if q.terms().iter().any(|(m, _)| block.iter().any(|&v| m.exps()[v] != 0)) {
            q = reduce_block(&q, block)?;
        }
    }
    Ok(q)
}

/// Inverse of [`elementary_reduce`]: expands the symbols back into the
/// block variables.
pub fn elementary_expand(p: &LaurentPolynomial, blocks: &[Vec<usize>]) -> LaurentPolynomial {
    let n = p.nvars();
    let mut out = LaurentPolynomial::zero(n);
    let mut cache = FxHashMap::default();
    for (m, c) in p.terms() {
        let mut rest = m.exps().to_vec();
        let mut term = LaurentPolynomial::constant(n, c.clone());
        for block in blocks {
            let d: Vec<u32> = block.iter().map(|&v| m.exps()[v] as u32).collect();
            for &v in block {
                rest[v] = 0;
            }
            let expansion = elementary_power(block.len(), &d, &mut cache);
            let poly = LaurentPolynomial::from_terms(
                n,
                expansion.into_iter().map(|(beta, k)| {
                    let mut e = vec![0; n];
                    for (j, &v) in block.iter().enumerate() {
                        e[v] = beta[j];
                    }
                    (Monomial::from_exps(e), k)
                }),
            );
            term = term.mul(&poly);
        }
        out = out.add(&term.mul_monomial(&Monomial::from_exps(rest)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(n, i)
    }

    #[test]
    fn symmetry_detection() {
        let n = 2;
        let b = [0, 1];
        assert!(block_symmetric(&v(n, 0).add(&v(n, 1)), &b));
        assert!(!block_symmetric(&v(n, 0), &b));
        let p = v(n, 0).pow(2).mul(&v(n, 1)).add(&v(n, 0).mul(&v(n, 1).pow(2)));
        assert!(block_symmetric(&p, &b));
    }

    #[test]
    fn power_sum_in_two_variables() {
        // s1^2 + s2^2 = e1^2 - 2 e2
        let n = 2;
        let p = v(n, 0).pow(2).add(&v(n, 1).pow(2));
        let got = elementary_reduce(&p, &[vec![0, 1]]).unwrap();
        let expected = v(n, 0).pow(2).sub(&v(n, 1).scale(&BigInt::from(2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn product_is_top_symbol() {
        let n = 2;
        let got = elementary_reduce(&v(n, 0).mul(&v(n, 1)), &[vec![0, 1]]).unwrap();
        assert_eq!(got, v(n, 1));
    }

    #[test]
    fn split_quadratic() {
        // (1 + s1 y)(1 + s2 y) = 1 + e1 y + e2 y^2 with y in slot 2.
        let n = 3;
        let one = LaurentPolynomial::one(n);
        let y = v(n, 2);
        let p = one.add(&v(n, 0).mul(&y)).mul(&one.add(&v(n, 1).mul(&y)));
        let got = elementary_reduce(&p, &[vec![0, 1]]).unwrap();
        let expected = one.add(&v(n, 0).mul(&y)).add(&v(n, 1).mul(&y.pow(2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let n = 2;
        assert_eq!(
            elementary_reduce(&v(n, 0), &[vec![0, 1]]).unwrap_err(),
            Error::NotBlockSymmetric
        );
    }
}
