use rustc_hash::FxHashMap;

use super::poly::LaurentPolynomial;
use super::ratfn::{substitute_poly, Factor, RationalFunction};
use super::symmetric::elementary_reduce;
use crate::error::{Error, Result};

/// Data for the substitution homomorphisms: the splitting-variable blocks,
/// the values of `e_{i1}, ..., e_{i,r_i-1}` (the top symbol maps to 1), and
/// the aggregate map sending a block of composite cluster variables to one
/// generalized cluster variable.
#[derive(Clone, Debug)]
pub struct ElementarySymbols {
    pub blocks: Vec<Vec<usize>>,
    pub targets: Vec<Vec<RationalFunction>>,
    pub aggregates: Vec<(Vec<usize>, usize)>,
}

impl ElementarySymbols {
    fn is_s(&self, nvars: usize) -> Vec<bool> {
        let mut out = vec![false; nvars];
        for b in &self.blocks {
            for &v in b {
                out[v] = true;
            }
        }
        out
    }

    fn images(&self, nvars: usize) -> Vec<RationalFunction> {
        let mut images: Vec<RationalFunction> =
            (0..nvars).map(|v| RationalFunction::var(nvars, v)).collect();
        for (i, b) in self.blocks.iter().enumerate() {
            for (l, &v) in b.iter().enumerate() {
                images[v] = if l + 1 == b.len() {
                    RationalFunction::one(nvars)
                } else {
                    self.targets[i][l].clone()
                };
            }
        }
        images
    }

    /// Rewrites exponents of composite cluster variables as exponents of
    /// aggregates; `None` unless each block carries one common exponent.
    fn collapse_exps(&self, e: &[i32]) -> Option<Vec<i32>> {
        let mut out = e.to_vec();
        for (block, target) in &self.aggregates {
            let k = e[block[0]];
            if block.iter().any(|&v| e[v] != k) {
                return None;
            }
            for &v in block {
                out[v] = 0;
            }
            out[*target] += k;
        }
        Some(out)
    }

    fn collapse_poly(&self, p: &LaurentPolynomial) -> Option<LaurentPolynomial> {
        if self.aggregates.is_empty() {
            return Some(p.clone());
        }
        for (m, _) in p.terms() {
            self.collapse_exps(m.exps())?;
        }
        Some(p.map_monomials(p.nvars(), |e| self.collapse_exps(e).unwrap()))
    }

    /// Image of one block-symmetric polynomial.
    fn image_poly(&self, p: &LaurentPolynomial) -> Result<RationalFunction> {
        let n = p.nvars();
        let reduced = elementary_reduce(p, &self.blocks).map_err(|_| Error::NotInPsiDomain)?;
        substitute_poly(&reduced, &self.images(n))
    }
}

fn s_dependent(p: &LaurentPolynomial, is_s: &[bool]) -> bool {
    p.used_vars().iter().zip(is_s).any(|(u, s)| *u && *s)
}

/// Orbits of the given factors under block permutations of the splitting
/// variables, as index groups. `None` if some image is not in the list.
fn orbits(factors: &[(Factor, i32)], sym: &ElementarySymbols) -> Option<Vec<Vec<usize>>> {
    let index: FxHashMap<&Factor, usize> = factors.iter().enumerate().map(|(i, (f, _))| (f, i)).collect();
    let mut parent: Vec<usize> = (0..factors.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, (f, _)) in factors.iter().enumerate() {
        let n = f.poly().nvars();
        for b in &sym.blocks {
            for w in b.windows(2) {
                if !f.poly().uses_var(w[0]) && !f.poly().uses_var(w[1]) {
                    continue;
                }
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(w[0], w[1]);
                let img = RationalFunction::from_poly(&f.poly().permute(&perm));
                let [(g, 1)] = img.factors() else {
                    return None;
                };
                let j = *index.get(g)?;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    for i in 0..factors.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    Some(out)
}

fn expand(n: usize, list: &[(Factor, i32)], idx: &[usize], sign: i32) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::one(n);
    for &i in idx {
        let (f, e) = &list[i];
        let e = e * sign;
        if e > 0 {
            acc = acc.mul(&f.poly().pow(e as u32));
        }
    }
    acc
}

/// Field-level substitution homomorphism. Numerator and denominator are
/// rewritten in the elementary symbols of every splitting block, which are
/// then replaced by their targets; composite cluster variables collapse to
/// aggregates.
pub fn psi_hat(f: &RationalFunction, sym: &ElementarySymbols) -> Result<RationalFunction> {
    let n = f.nvars();
    if f.is_zero() {
        return Ok(RationalFunction::zero(n));
    }
    let is_s = sym.is_s(n);

    // Monomial part: s-exponents must agree within a block (they map to a
    // power of the top symbol, hence to 1).
    let mut mono = f.mono().to_vec();
    for b in &sym.blocks {
        let k = mono[b[0]];
        if b.iter().any(|&v| mono[v] != k) {
            return Err(Error::NotInPsiDomain);
        }
        for &v in b {
            mono[v] = 0;
        }
    }

    // Collapse factor by factor; anything that does not collapse alone is
    // multiplied out together with the monomial.
    let mut good: Vec<(Factor, i32)> = Vec::new();
    let mut bad: Vec<(Factor, i32)> = Vec::new();
    for (fac, e) in f.factors() {
        match sym.collapse_poly(fac.poly()) {
            Some(q) => {
                let r = RationalFunction::from_poly(&q);
                for (g, k) in r.factors() {
                    good.push((g.clone(), k * e));
                }
                for (v, &x) in r.mono().iter().enumerate() {
                    mono[v] += x * e;
                }
            }
            None => bad.push((fac.clone(), *e)),
        }
    }
    let mut result = RationalFunction::constant(n, f.coeff().clone());
    if bad.is_empty() {
        let m = sym.collapse_exps(&mono).ok_or(Error::NotAggregateFunction)?;
        result = result.mul(&RationalFunction::monomial(n, &super::poly::Monomial::from_exps(m)));
    } else {
        let all: Vec<usize> = (0..bad.len()).collect();
        let pos_m: Vec<i32> = mono.iter().map(|&e| e.max(0)).collect();
        let neg_m: Vec<i32> = mono.iter().map(|&e| (-e).max(0)).collect();
        let num = expand(n, &bad, &all, 1).mul_monomial(&super::poly::Monomial::from_exps(pos_m));
        let den = expand(n, &bad, &all, -1).mul_monomial(&super::poly::Monomial::from_exps(neg_m));
        let num = sym.collapse_poly(&num).ok_or(Error::NotAggregateFunction)?;
        let den = sym.collapse_poly(&den).ok_or(Error::NotAggregateFunction)?;
        let q = RationalFunction::from_poly(&num).div(&RationalFunction::from_poly(&den))?;
        result = result.mul(&RationalFunction::monomial(
            n,
            &super::poly::Monomial::from_exps(q.mono().to_vec()),
        ));
        result = result.mul(&RationalFunction::constant(n, q.coeff().clone()));
        for (g, k) in q.factors() {
            good.push((g.clone(), *k));
        }
        for b in &sym.blocks {
            let k = result.mono()[b[0]];
            if b.iter().any(|&v| result.mono()[v] != k) {
                return Err(Error::NotInPsiDomain);
            }
        }
        let mut m = result.mono().to_vec();
        for b in &sym.blocks {
            for &v in b {
                m[v] = 0;
            }
        }
        result = RationalFunction::constant(n, result.coeff().clone())
            .mul(&RationalFunction::monomial(n, &super::poly::Monomial::from_exps(m)));
    }

    // Merge duplicate factors produced by collapsing.
    good.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Factor, i32)> = Vec::new();
    for (g, k) in good {
        match merged.last_mut() {
            Some((h, e)) if *h == g => *e += k,
            _ => merged.push((g, k)),
        }
    }
    merged.retain(|(_, e)| *e != 0);

    let (free, dep): (Vec<_>, Vec<_>) = merged.into_iter().partition(|(g, _)| !s_dependent(g.poly(), &is_s));
    for (g, e) in &free {
        result = result.mul(&RationalFunction::from_poly(g.poly()).pow(*e)?);
    }
    if dep.is_empty() {
        return Ok(result);
    }

    let mut images: Option<Vec<(RationalFunction, i32)>> = None;
    if let Some(groups) = orbits(&dep, sym) {
        let mut acc = Vec::new();
        let mut ok = true;
        for g in &groups {
            let e = dep[g[0]].1;
            if g.iter().any(|&i| dep[i].1 != e) {
                ok = false;
                break;
            }
            let mut prod = LaurentPolynomial::one(n);
            for &i in g {
                prod = prod.mul(dep[i].0.poly());
            }
            match sym.image_poly(&prod) {
                Ok(img) => acc.push((img, e)),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            images = Some(acc);
        }
    }
    let images = match images {
        Some(v) => v,
        None => {
            let all: Vec<usize> = (0..dep.len()).collect();
            let num = expand(n, &dep, &all, 1);
            let den = expand(n, &dep, &all, -1);
            vec![(sym.image_poly(&num)?, 1), (sym.image_poly(&den)?, -1)]
        }
    };
    for (img, e) in images {
        if e < 0 && img.is_zero() {
            return Err(Error::DenominatorInKernel);
        }
        result = result.mul(&img.pow(e)?);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Variables: s1, s2, y, z.
    fn setup() -> ElementarySymbols {
        ElementarySymbols {
            blocks: vec![vec![0, 1]],
            targets: vec![vec![RationalFunction::var(4, 3)]],
            aggregates: Vec::new(),
        }
    }

    #[test]
    fn split_quadratic_maps_to_exchange_polynomial() {
        let sym = setup();
        let n = 4;
        let one = RationalFunction::one(n);
        let y = RationalFunction::var(n, 2);
        let s1 = RationalFunction::var(n, 0);
        let s2 = RationalFunction::var(n, 1);
        let f = one.add(&s1.mul(&y)).mul(&one.add(&s2.mul(&y)));
        let got = psi_hat(&f, &sym).unwrap();
        let z = RationalFunction::var(n, 3);
        let expected = one.add(&z.mul(&y)).add(&y.mul(&y));
        assert!(got.equals(&expected));
        let cube = psi_hat(&f.pow(-3).unwrap(), &sym).unwrap();
        assert!(cube.equals(&expected.pow(-3).unwrap()));
    }

    #[test]
    fn top_symbol_maps_to_one() {
        let sym = setup();
        let f = RationalFunction::var(4, 0).mul(&RationalFunction::var(4, 1));
        assert!(psi_hat(&f, &sym).unwrap().equals(&RationalFunction::one(4)));
    }

    #[test]
    fn single_splitting_variable_is_outside_domain() {
        let sym = setup();
        let f = RationalFunction::var(4, 0);
        assert_eq!(psi_hat(&f, &sym).unwrap_err(), Error::NotInPsiDomain);
    }

    #[test]
    fn kernel_denominator_is_rejected() {
        // 1 / (s1 + s2 - z) has image 1 / 0.
        let sym = setup();
        let n = 4;
        let den = RationalFunction::var(n, 0)
            .add(&RationalFunction::var(n, 1))
            .sub(&RationalFunction::var(n, 3));
        let f = den.inv().unwrap();
        assert_eq!(psi_hat(&f, &sym).unwrap_err(), Error::DenominatorInKernel);
    }
}
