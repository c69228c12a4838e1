//! C-matrices, G-matrices and F-polynomials of the generalized and the
//! composite pattern, the tracked `𝒵` polynomials, and reconstruction of
//! seeds from the separation formulas.

use std::sync::Arc;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::composite::CompositeSeed;
use crate::error::{Error, Result};
use crate::pattern::{pos, render_matrix, to_i32, ExchangeMatrix, GeneralizedSeed, TreeWord};
use crate::polyring::{
    substitute_poly, LaurentPolynomial, Monomial, RationalFunction, VarRole, VariableTable,
};
use crate::semifield::{eval_subtraction_free, SemifieldElement};

pub type Matrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

/// Formal variables of F-polynomials: `y_i`, `ỹ_il` (named `y{i}_{l}`),
/// `z_il` for `0 < l < r_i`, and `s_il`.
#[derive(Clone, Debug)]
pub struct FTable {
    pub table: VariableTable,
    pub degrees: Vec<usize>,
    pub y: Vec<usize>,
    pub y_tilde: Vec<Vec<usize>>,
    pub z: Vec<Vec<usize>>,
    pub s: Vec<Vec<usize>>,
}

impl FTable {
    pub fn new(degrees: &[usize]) -> Result<Arc<Self>> {
        let mut table = VariableTable::new();
        let mut y = Vec::new();
        for i in 0..degrees.len() {
            y.push(table.push(format!("y{}", i + 1), VarRole::Formal)?);
        }
        let mut y_tilde = Vec::new();
        for (i, &r) in degrees.iter().enumerate() {
            y_tilde.push(
                (0..r)
                    .map(|l| table.push(format!("y{}_{}", i + 1, l + 1), VarRole::Formal))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut z = Vec::new();
        for (i, &r) in degrees.iter().enumerate() {
            z.push(
                (1..r)
                    .map(|l| table.push(format!("z{}_{}", i + 1, l), VarRole::Formal))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut s = Vec::new();
        for (i, &r) in degrees.iter().enumerate() {
            s.push(
                (0..r)
                    .map(|l| table.push(format!("s{}_{}", i + 1, l + 1), VarRole::Splitting(i, l)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(Arc::new(FTable {
            table,
            degrees: degrees.to_vec(),
            y,
            y_tilde,
            z,
            s,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn flat_y_tilde(&self) -> Vec<usize> {
        self.y_tilde.iter().flatten().copied().collect()
    }

    /// `𝒵_{i;t0}(u) = 1 + z_i1 u + ... + u^{r_i}` as coefficient list.
    pub fn initial_zeta(&self, i: usize) -> Vec<LaurentPolynomial> {
        let n = self.nvars();
        let mut c = vec![LaurentPolynomial::one(n)];
        c.extend(self.z[i].iter().map(|&v| LaurentPolynomial::var(n, v)));
        c.push(LaurentPolynomial::one(n));
        c
    }
}

fn checked(v: Option<i64>) -> Result<i64> {
    v.ok_or_else(|| Error::BoundExceeded("matrix entry".into()))
}

/// One step of the C-recursion with mutation degrees `r` and `B_t`.
pub fn mutate_c(c: &[Vec<i64>], b: &[Vec<i64>], r: &[usize], k: usize) -> Result<Matrix> {
    let n = c.len();
    let rk = r[k] as i64;
    let mut out = c.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if j == k {
                -c[i][k]
            } else {
                let a = checked(c[i][k].checked_mul(pos(b[k][j])))?;
                let d = checked(pos(-c[i][k]).checked_mul(b[k][j]))?;
                checked(checked(a.checked_add(d))?.checked_mul(rk).and_then(|x| x.checked_add(c[i][j])))?
            };
        }
    }
    Ok(out)
}

/// One step of the G-recursion; `b0` is the initial exchange matrix.
pub fn mutate_g(g: &[Vec<i64>], c: &[Vec<i64>], b: &[Vec<i64>], b0: &[Vec<i64>], r: &[usize], k: usize) -> Result<Matrix> {
    let n = g.len();
    let rk = r[k] as i64;
    let mut out = g.to_vec();
    for i in 0..n {
        let mut sum = 0i64;
        for a in 0..n {
            let t1 = checked(g[i][a].checked_mul(pos(-b[a][k])))?;
            let t2 = checked(b0[i][a].checked_mul(pos(-c[a][k])))?;
            sum = checked(sum.checked_add(t1).and_then(|s| s.checked_sub(t2)))?;
        }
        out[i][k] = checked(sum.checked_mul(rk).and_then(|s| s.checked_sub(g[i][k])))?;
    }
    Ok(out)
}

struct PowCache<'a> {
    base: &'a [LaurentPolynomial],
    cache: FxHashMap<(usize, u32), LaurentPolynomial>,
}

impl<'a> PowCache<'a> {
    fn new(base: &'a [LaurentPolynomial]) -> Self {
        PowCache {
            base,
            cache: FxHashMap::default(),
        }
    }

    fn get(&mut self, j: usize, e: u32) -> LaurentPolynomial {
        if e == 1 {
            return self.base[j].clone();
        }
        if let Some(p) = self.cache.get(&(j, e)) {
            return p.clone();
        }
        let p = self.get(j, e - 1).mul(&self.base[j]);
        self.cache.insert((j, e), p.clone());
        p
    }
}

/// `M / F_k`: the new F-polynomial in direction `k`. `yvars[j]` is the
/// formal variable attached to index `j`, `zeta` the current `𝒵_k`.
pub fn mutate_f(
    f: &[LaurentPolynomial],
    c: &Matrix,
    b: &Matrix,
    r: &[usize],
    zeta: &[LaurentPolynomial],
    yvars: &[usize],
    k: usize,
) -> Result<LaurentPolynomial> {
    let n = f.len();
    let nv = f[0].nvars();
    let rk = r[k] as i64;
    let mut powers = PowCache::new(f);
    let mut m = LaurentPolynomial::zero(nv);
    for (l, coef) in zeta.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let l = l as i64;
        let mut exps = vec![0i32; nv];
        let mut term = coef.clone();
        for j in 0..n {
            let ey = rk * pos(-c[j][k]) + l * c[j][k];
            let ef = rk * pos(-b[j][k]) + l * b[j][k];
            debug_assert!(ey >= 0 && ef >= 0);
            exps[yvars[j]] += to_i32(ey)?;
            if ef > 0 && !f[j].is_one() {
                term = term.mul(&powers.get(j, ef as u32));
            }
        }
        m = m.add(&term.mul_monomial(&Monomial::from_exps(exps)));
    }
    m.div_exact(&f[k])
        .ok_or_else(|| Error::Unsupported("F-polynomial recursion is not exact".into()))
}

/// C, G, F and `𝒵` of the generalized pattern at one vertex.
#[derive(Clone, Debug)]
pub struct GeneralizedInvariants {
    pub word: TreeWord,
    pub b: Matrix,
    pub c: Matrix,
    pub g: Matrix,
    pub f: Vec<LaurentPolynomial>,
    pub zeta: Vec<Vec<LaurentPolynomial>>,
}

/// Generalized invariants at every prefix of `w`.
pub fn generalized_trace(b0: &ExchangeMatrix, r: &[usize], w: &TreeWord, ft: &FTable) -> Result<Vec<GeneralizedInvariants>> {
    let n = b0.rank();
    if r.len() != n || ft.degrees != r {
        return Err(Error::DegreeMismatch);
    }
    let nv = ft.nvars();
    let init = GeneralizedInvariants {
        word: TreeWord::empty(),
        b: b0.rows().to_vec(),
        c: identity(n),
        g: identity(n),
        f: vec![LaurentPolynomial::one(nv); n],
        zeta: (0..n).map(|i| ft.initial_zeta(i)).collect(),
    };
    let mut out = vec![init];
    let mut bm = b0.clone();
    for (d, &k) in w.dirs().iter().enumerate() {
        let prev = out.last().unwrap();
        let fk = mutate_f(&prev.f, &prev.c, &prev.b, r, &prev.zeta[k], &ft.y, k)?;
        let g = mutate_g(&prev.g, &prev.c, &prev.b, b0.rows(), r, k)?;
        let c = mutate_c(&prev.c, &prev.b, r, k)?;
        let mut f = prev.f.clone();
        f[k] = fk;
        let mut zeta = prev.zeta.clone();
        zeta[k].reverse();
        bm = bm.mutate(r, k)?;
        out.push(GeneralizedInvariants {
            word: w.prefix(d + 1),
            b: bm.rows().to_vec(),
            c,
            g,
            f,
            zeta,
        });
    }
    Ok(out)
}

pub fn generalized_invariants(b0: &ExchangeMatrix, r: &[usize], w: &TreeWord, ft: &FTable) -> Result<GeneralizedInvariants> {
    Ok(generalized_trace(b0, r, w, ft)?.pop().unwrap())
}

/// C, G, F of the composite pattern at one vertex, in flat composite
/// indexing; `b` is the enlarged exchange matrix.
#[derive(Clone, Debug)]
pub struct CompositeInvariants {
    pub word: TreeWord,
    pub b: Matrix,
    pub sigma: Vec<i8>,
    pub c: Matrix,
    pub g: Matrix,
    pub f: Vec<LaurentPolynomial>,
}

/// Offsets of the blocks in flat composite indexing.
pub fn offsets(r: &[usize]) -> Vec<usize> {
    (0..r.len()).map(|i| r[..i].iter().sum()).collect()
}

/// Composite invariants at every prefix of `w`; each composite step runs
/// `r_k` ordinary steps in the order `l = 1..r_k`.
pub fn composite_trace(b0: &ExchangeMatrix, r: &[usize], w: &TreeWord, ft: &FTable) -> Result<Vec<CompositeInvariants>> {
    let n = b0.rank();
    if r.len() != n || ft.degrees != r {
        return Err(Error::DegreeMismatch);
    }
    let big0 = crate::composite::enlarge(b0, r);
    let total: usize = r.iter().sum();
    let ones = vec![1usize; total];
    let nv = ft.nvars();
    let zeta = vec![LaurentPolynomial::one(nv), LaurentPolynomial::one(nv)];
    let yvars = ft.flat_y_tilde();
    let off = offsets(r);
    let mut out = vec![CompositeInvariants {
        word: TreeWord::empty(),
        b: big0.rows().to_vec(),
        sigma: vec![1; n],
        c: identity(total),
        g: identity(total),
        f: vec![LaurentPolynomial::one(nv); total],
    }];
    let mut bm = big0.clone();
    for (d, &k) in w.dirs().iter().enumerate() {
        let mut cur = out.last().unwrap().clone();
        for l in 0..r[k] {
            let idx = off[k] + l;
            let fk = mutate_f(&cur.f, &cur.c, &cur.b, &ones, &zeta, &yvars, idx)?;
            cur.g = mutate_g(&cur.g, &cur.c, &cur.b, big0.rows(), &ones, idx)?;
            cur.c = mutate_c(&cur.c, &cur.b, &ones, idx)?;
            cur.f[idx] = fk;
            bm = bm.mutate(&ones, idx)?;
            cur.b = bm.rows().to_vec();
        }
        cur.sigma[k] = -cur.sigma[k];
        cur.word = w.prefix(d + 1);
        out.push(cur);
    }
    Ok(out)
}

pub fn composite_invariants(b0: &ExchangeMatrix, r: &[usize], w: &TreeWord, ft: &FTable) -> Result<CompositeInvariants> {
    Ok(composite_trace(b0, r, w, ft)?.pop().unwrap())
}

/// New F-polynomials `F_kl^{-1} P_kl Q_kl` of a composite step in
/// direction `k`, from the data before the step.
pub fn composite_step_closed_form(prev: &CompositeInvariants, r: &[usize], ft: &FTable, k: usize) -> Result<Vec<RationalFunction>> {
    let nv = ft.nvars();
    let off = offsets(r);
    let yvars = ft.flat_y_tilde();
    let total = yvars.len();
    let fr: Vec<RationalFunction> = prev.f.iter().map(RationalFunction::from_poly).collect();
    let mut out = Vec::new();
    for l in 0..r[k] {
        let kl = off[k] + l;
        let mut p = RationalFunction::one(nv);
        let mut q = RationalFunction::one(nv);
        for jm in 0..total {
            let bjk = prev.b[jm][off[k]];
            let cjm = prev.c[jm][kl];
            let y = RationalFunction::var(nv, yvars[jm]);
            p = p.mul(&y.pow(to_i32(pos(-cjm))?)?).mul(&fr[jm].pow(to_i32(pos(-bjk))?)?);
            q = q.mul(&y.pow(to_i32(cjm)?)?).mul(&fr[jm].pow(to_i32(bjk)?)?);
        }
        let q = RationalFunction::one(nv).add(&q);
        out.push(p.mul(&q).div(&fr[kl])?);
    }
    Ok(out)
}

/// True when, for every block row `i` and every column, the entries over
/// `l` share a sign.
pub fn sign_coherent_blocks(c: &Matrix, r: &[usize]) -> bool {
    let off = offsets(r);
    (0..c.len()).all(|col| {
        (0..r.len()).all(|i| {
            let vals = (0..r[i]).map(|l| c[off[i] + l][col]);
            vals.clone().all(|v| v >= 0) || vals.clone().all(|v| v <= 0)
        })
    })
}

/// `m_{il,jm} - σ_j δ_{il,jm}` collapsed to an `n × n` matrix; `None` if
/// it depends on `l` or `m`.
pub fn shifted(m: &Matrix, r: &[usize], sigma: &[i8]) -> Option<Matrix> {
    let n = r.len();
    let off = offsets(r);
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut val = None;
            for l in 0..r[i] {
                for mm in 0..r[j] {
                    let (a, b) = (off[i] + l, off[j] + mm);
                    let v = m[a][b] - if a == b { sigma[j] as i64 } else { 0 };
                    match val {
                        None => val = Some(v),
                        Some(x) if x != v => return None,
                        _ => {}
                    }
                }
            }
            out[i][j] = val.unwrap();
        }
    }
    Some(out)
}

/// Renders a family of polynomials one per line as `name = poly`.
pub fn render_polys(names: &[String], f: &[LaurentPolynomial], ft: &FTable) -> String {
    names
        .iter()
        .zip(f)
        .map(|(n, p)| format!("{n} = {}\n", p.render(&ft.table)))
        .collect()
}

pub fn render_invariant_matrix(m: &Matrix) -> String {
    render_matrix(m)
}

/// Values of F-table variables in a semifield: `y_j ↦ y_j`,
/// `z_jl ↦ π(ẑ_jl)` (`None` for a zero coefficient).
fn p0_values(seed: &GeneralizedSeed, ft: &FTable) -> Result<Vec<Option<SemifieldElement>>> {
    let one = SemifieldElement::one(seed.kind());
    let mut vals: Vec<Option<SemifieldElement>> = vec![Some(one); ft.nvars()];
    for j in 0..seed.rank() {
        vals[ft.y[j]] = Some(seed.y()[j].clone());
        for (l, &v) in ft.z[j].iter().enumerate() {
            vals[v] = seed.z()[j].coeffs()[l + 1].project_np()?;
        }
    }
    Ok(vals)
}

/// `F|_P0`: terms through a zero coefficient are dropped.
fn eval_p0(f: &LaurentPolynomial, vals: &[Option<SemifieldElement>], seed: &GeneralizedSeed) -> Result<SemifieldElement> {
    let kept: Vec<(Monomial, BigInt)> = f
        .terms()
        .iter()
        .filter(|(m, _)| m.exps().iter().enumerate().all(|(v, &e)| e == 0 || vals[v].is_some()))
        .cloned()
        .collect();
    let p = LaurentPolynomial::from_terms(f.nvars(), kept);
    let one = SemifieldElement::one(seed.kind());
    let full: Vec<SemifieldElement> = vals.iter().map(|v| v.clone().unwrap_or_else(|| one.clone())).collect();
    eval_subtraction_free(&p, &full, seed.kind())
}

/// Generalized cluster and coefficient variables rebuilt from C, G, F and
/// the initial seed.
pub fn separation_generalized(
    seed0: &GeneralizedSeed,
    inv: &GeneralizedInvariants,
    ft: &FTable,
) -> Result<(Vec<RationalFunction>, Vec<SemifieldElement>)> {
    let n = seed0.rank();
    let nv = seed0.table().nvars();
    let vals = p0_values(seed0, ft)?;
    let fp0: Vec<SemifieldElement> = inv.f.iter().map(|f| eval_p0(f, &vals, seed0)).collect::<Result<_>>()?;

    let mut images = vec![RationalFunction::one(nv); ft.nvars()];
    for j in 0..n {
        images[ft.y[j]] = seed0.y_hat(j)?;
        for (l, &v) in ft.z[j].iter().enumerate() {
            images[v] = seed0.z()[j].coeffs()[l + 1].evaluate();
        }
    }
    let mut x = Vec::new();
    for i in 0..n {
        let mut acc = substitute_poly(&inv.f[i], &images)?.div(&fp0[i].to_ring_value())?;
        for j in 0..n {
            acc = acc.mul(&seed0.x()[j].pow(to_i32(inv.g[j][i])?)?);
        }
        x.push(acc);
    }
    let mut y = Vec::new();
    for i in 0..n {
        let mut acc = SemifieldElement::one(seed0.kind());
        for j in 0..n {
            acc = acc.mul(&seed0.y()[j].pow(inv.c[j][i]))?;
            acc = acc.mul(&fp0[j].pow(inv.b[j][i]))?;
        }
        y.push(acc);
    }
    Ok((x, y))
}

/// Composite cluster and coefficient variables (flat indexing) rebuilt
/// from C, G, F and the initial composite seed.
pub fn separation_composite(
    seed0: &CompositeSeed,
    inv: &CompositeInvariants,
    ft: &FTable,
) -> Result<(Vec<RationalFunction>, Vec<SemifieldElement>)> {
    let inner = seed0.inner();
    let total = inner.rank();
    let nv = seed0.table().nvars();
    let yvars = ft.flat_y_tilde();
    let mut hat = vec![RationalFunction::one(nv); ft.nvars()];
    let mut plain = vec![RationalFunction::one(nv); ft.nvars()];
    for jm in 0..total {
        hat[yvars[jm]] = inner.y_hat(jm)?;
        plain[yvars[jm]] = inner.y()[jm].to_ring_value();
    }
    let bar = seed0.extended();
    let fbar: Vec<SemifieldElement> = inv
        .f
        .iter()
        .map(|f| Ok(SemifieldElement::universal(bar, substitute_poly(f, &plain)?)?))
        .collect::<Result<_>>()?;
    let mut x = Vec::new();
    for il in 0..total {
        let mut acc = substitute_poly(&inv.f[il], &hat)?.div(&fbar[il].to_ring_value())?;
        for jm in 0..total {
            acc = acc.mul(&inner.x()[jm].pow(to_i32(inv.g[jm][il])?)?);
        }
        x.push(acc);
    }
    let mut y = Vec::new();
    for il in 0..total {
        let mut acc = SemifieldElement::one(bar);
        for jm in 0..total {
            acc = acc.mul(&inner.y()[jm].pow(inv.c[jm][il]))?;
            acc = acc.mul(&fbar[jm].pow(inv.b[jm][il]))?;
        }
        y.push(acc);
    }
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_ordinary_c_matrices() {
        // A2 with r = (1,1): c-vectors after mutating at 1 then 2.
        let b = vec![vec![0, 1], vec![-1, 0]];
        let r = [1, 1];
        let c1 = mutate_c(&identity(2), &b, &r, 0).unwrap();
        assert_eq!(c1, vec![vec![-1, 1], vec![0, 1]]);
        let b1 = vec![vec![0, -1], vec![1, 0]];
        let c2 = mutate_c(&c1, &b1, &r, 1).unwrap();
        assert_eq!(c2, vec![vec![0, -1], vec![1, -1]]);
    }

    #[test]
    fn shifted_matrix_detects_dependence() {
        let m = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(shifted(&m, &[2, 1], &[1, 1]).unwrap(), vec![vec![0, 0], vec![0, 0]]);
        let bad = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(shifted(&bad, &[2, 1], &[1, 1]).is_none());
    }

    #[test]
    fn sign_coherence_within_blocks() {
        let c = vec![vec![1, 0, -1], vec![0, 1, -1], vec![0, 0, -1]];
        assert!(sign_coherent_blocks(&c, &[2, 1]));
        let bad = vec![vec![1, 0, -1], vec![-1, 1, -1], vec![0, 0, -1]];
        assert!(!sign_coherent_blocks(&bad, &[2, 1]));
    }
}
