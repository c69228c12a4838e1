//! Enlarged exchange matrices, composite seeds over the extended
//! semifield, composite mutation, and the aggregates `X_i`, `Ŷ_i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pattern::{pos, to_i32, ExchangeMatrix, GeneralizedSeed, TreeWord};
use crate::polyring::{ElementarySymbols, RationalFunction, SeedTable};
use crate::semifield::{ExchangePolynomial, Flavor, SemifieldElement, SemifieldKind};

/// Block matrix with block `(i, j)` the constant `b_ij` of shape
/// `r_i × r_j`.
pub fn enlarge(b: &ExchangeMatrix, r: &[usize]) -> ExchangeMatrix {
    let n = b.rank();
    let mut rows = Vec::new();
    let mut d = Vec::new();
    for i in 0..n {
        for _ in 0..r[i] {
            let mut row = Vec::new();
            for j in 0..n {
                row.extend(std::iter::repeat_n(b.get(i, j), r[j]));
            }
            rows.push(row);
            d.push(b.d()[i]);
        }
    }
    ExchangeMatrix::from_parts(rows, d)
}

/// Reads back `B` from an enlarged matrix; `None` unless every block is
/// constant.
pub fn shrink(big: &ExchangeMatrix, r: &[usize]) -> Option<ExchangeMatrix> {
    let n = r.len();
    let offs: Vec<usize> = (0..n).map(|i| r[..i].iter().sum()).collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = big.get(offs[i], offs[j]);
            for a in 0..r[i] {
                for c in 0..r[j] {
                    if big.get(offs[i] + a, offs[j] + c) != v {
                        return None;
                    }
                }
            }
            rows[i][j] = v;
        }
    }
    let d: Vec<i64> = offs.iter().map(|&o| big.d()[o]).collect();
    Some(ExchangeMatrix::from_parts(rows, d))
}

/// The `r_k` ordinary mutations of an enlarged matrix in direction `k`.
pub fn composite_mutate_matrix(big: &ExchangeMatrix, r: &[usize], k: usize) -> Result<ExchangeMatrix> {
    if k >= r.len() {
        return Err(Error::IndexOutOfRange(k + 1));
    }
    let ones = vec![1usize; big.rank()];
    let off: usize = r[..k].iter().sum();
    let mut m = big.clone();
    for l in 0..r[k] {
        m = m.mutate(&ones, off + l)?;
    }
    Ok(m)
}

/// `σ_i = (-1)^{#i in w}`.
pub fn sigma_of_word(w: &TreeWord, n: usize) -> Vec<i8> {
    let mut s = vec![1i8; n];
    for &k in w.dirs() {
        s[k] = -s[k];
    }
    s
}

/// Composite seed: an ordinary seed of rank `Σ r_i` over the extended
/// semifield, together with the sign-tracked exchange polynomials.
#[derive(Clone, Debug)]
pub struct CompositeSeed {
    base: Arc<SemifieldKind>,
    inner: GeneralizedSeed,
    sigma: Vec<i8>,
    zt: Vec<ExchangePolynomial>,
    z0: Vec<ExchangePolynomial>,
}

/// Universal semifield over the generators of `base` and the splitting
/// variables of `table`.
pub fn extended_kind(table: &SeedTable, base: &SemifieldKind) -> Result<Arc<SemifieldKind>> {
    let mut names: Vec<String> = base.generators().to_vec();
    let mut vars: Vec<usize> = base.vars().to_vec();
    for block in &table.splitting {
        for &v in block {
            names.push(table.table.name(v).to_string());
            vars.push(v);
        }
    }
    SemifieldKind::new(Flavor::Universal, names, vars, table.nvars())
}

impl CompositeSeed {
    /// Splitting initial seed of a generalized seed: fresh cluster
    /// variables `x_il`, `y_il = s_il y_i`, enlarged matrix, all signs +1.
    pub fn initial(g: &GeneralizedSeed) -> Result<Self> {
        let table = g.table().clone();
        if table.degrees != g.degrees() {
            return Err(Error::VariableTableMismatch("degrees of seed table".into()));
        }
        let bar = extended_kind(&table, g.kind())?;
        let nv = table.nvars();
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut z = Vec::new();
        for i in 0..g.rank() {
            let yi = g.y()[i].embed(&bar)?;
            for l in 0..table.degrees[i] {
                x.push(RationalFunction::var(nv, table.composite_cluster[i][l]));
                let s = SemifieldElement::universal(&bar, RationalFunction::var(nv, table.splitting[i][l]))?;
                y.push(s.mul(&yi)?);
                z.push(ExchangePolynomial::binomial(&bar));
            }
        }
        let inner = GeneralizedSeed::from_parts(table.clone(), bar, x, y, z, enlarge(g.b(), &table.degrees))?;
        Ok(CompositeSeed {
            base: g.kind().clone(),
            inner,
            sigma: vec![1; g.rank()],
            zt: g.z().to_vec(),
            z0: g.z().to_vec(),
        })
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.inner.table().degrees
    }

    pub fn table(&self) -> &Arc<SeedTable> {
        self.inner.table()
    }

    pub fn base(&self) -> &Arc<SemifieldKind> {
        &self.base
    }

    pub fn extended(&self) -> &Arc<SemifieldKind> {
        self.inner.kind()
    }

    /// The underlying ordinary seed, indexed by flat composite indices.
    pub fn inner(&self) -> &GeneralizedSeed {
        &self.inner
    }

    pub fn x(&self, i: usize, l: usize) -> &RationalFunction {
        &self.inner.x()[self.table().flat(i, l)]
    }

    pub fn y(&self, i: usize, l: usize) -> &SemifieldElement {
        &self.inner.y()[self.table().flat(i, l)]
    }

    pub fn b(&self) -> &ExchangeMatrix {
        self.inner.b()
    }

    /// The generalized exchange matrix read off the constant blocks.
    pub fn generalized_b(&self) -> Result<ExchangeMatrix> {
        shrink(self.b(), self.degrees()).ok_or(Error::NotBlockSymmetric)
    }

    pub fn sigma(&self) -> &[i8] {
        &self.sigma
    }

    pub fn zt(&self) -> &[ExchangePolynomial] {
        &self.zt
    }

    /// Symbols for `ψ`: `e_il ↦ π(ẑ_il)` of the initial exchange
    /// polynomials, `e_{i r_i} ↦ 1`.
    pub fn psi_symbols(&self) -> Result<ElementarySymbols> {
        let targets = self.z0.iter().map(|z| z.inner_values()).collect::<Result<Vec<_>>>()?;
        Ok(ElementarySymbols {
            blocks: self.table().splitting.clone(),
            targets,
            aggregates: Vec::new(),
        })
    }

    /// Symbols for `ψ̂`: `ê_il ↦ ẑ_il` and the block of `x_il` collapsing to
    /// `x_i`.
    pub fn psi_hat_symbols(&self) -> Result<ElementarySymbols> {
        let t = self.table();
        let targets = self
            .z0
            .iter()
            .map(|z| {
                let c = z.coeffs();
                c[1..c.len() - 1].iter().map(|e| e.evaluate()).collect()
            })
            .collect();
        Ok(ElementarySymbols {
            blocks: t.splitting.clone(),
            targets,
            aggregates: t
                .composite_cluster
                .iter()
                .cloned()
                .zip(t.cluster.iter().copied())
                .collect(),
        })
    }

    fn check_direction(&self, k: usize) -> Result<()> {
        if k >= self.rank() {
            return Err(Error::IndexOutOfRange(k + 1));
        }
        let t = self.table();
        let r = self.degrees()[k];
        for a in 0..r {
            for c in 0..r {
                if self.b().get(t.flat(k, a), t.flat(k, c)) != 0 {
                    return Err(Error::NotBlockSymmetric);
                }
            }
        }
        Ok(())
    }

    /// Composite mutation `μ_{k r_k} ∘ ... ∘ μ_{k1}`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let order: Vec<usize> = (0..self.degrees().get(k).copied().unwrap_or(0)).collect();
        self.mutate_ordered(k, &order)
    }

    /// Composite mutation with the inner ordinary mutations applied in the
    /// given order of `l`.
    pub fn mutate_ordered(&self, k: usize, order: &[usize]) -> Result<Self> {
        self.check_direction(k)?;
        let r = self.degrees()[k];
        let mut seen = vec![false; r];
        for &l in order {
            if l >= r || std::mem::replace(&mut seen[l], true) {
                return Err(Error::IndexOutOfRange(l + 1));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::IndexOutOfRange(r));
        }
        let mut inner = self.inner.clone();
        for &l in order {
            inner = inner.mutate(self.table().flat(k, l))?;
        }
        let mut out = self.clone();
        out.inner = inner;
        out.sigma[k] = -out.sigma[k];
        out.zt[k] = out.zt[k].reciprocal();
        Ok(out)
    }

    /// Composite mutation evaluated through the closed forms for the
    /// whole block at once.
    pub fn mutate_closed_form(&self, k: usize) -> Result<Self> {
        self.check_direction(k)?;
        let t = self.table().clone();
        let b = self.generalized_b()?;
        let n = self.rank();
        let nv = t.nvars();
        let bar = self.extended().clone();
        let r = self.degrees().to_vec();

        let mut xmono = RationalFunction::one(nv);
        let mut aggregate = vec![RationalFunction::one(nv); n];
        for j in 0..n {
            for m in 0..r[j] {
                aggregate[j] = aggregate[j].mul(self.x(j, m));
            }
            let e = pos(-b.get(j, k));
            if e != 0 {
                xmono = xmono.mul(&aggregate[j].pow(to_i32(e)?)?);
            }
        }
        let one = SemifieldElement::one(&bar);
        let mut x = self.inner.x().to_vec();
        let mut y = self.inner.y().to_vec();
        let mut ysum = one.clone();
        let mut yprod = one.clone();
        for m in 0..r[k] {
            yprod = yprod.mul(self.y(k, m))?;
            ysum = ysum.mul(&one.add(self.y(k, m))?)?;
        }
        for l in 0..r[k] {
            let idx = t.flat(k, l);
            let mut yhat = self.y(k, l).to_ring_value();
            for j in 0..n {
                let e = b.get(j, k);
                if e != 0 {
                    yhat = yhat.mul(&aggregate[j].pow(to_i32(e)?)?);
                }
            }
            let num = RationalFunction::one(nv).add(&yhat);
            let den = one.add(self.y(k, l))?.to_ring_value();
            x[idx] = self.x(k, l).inv()?.mul(&xmono).mul(&num).div(&den)?;
            y[idx] = self.y(k, l).inv();
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let bki = b.get(k, i);
            let f = yprod.pow(pos(bki)).mul(&ysum.pow(-bki))?;
            for l in 0..r[i] {
                let idx = t.flat(i, l);
                y[idx] = y[idx].mul(&f)?;
            }
        }
        let big = enlarge(&b.mutate(&r, k)?, &r);
        let z = self.inner.z().to_vec();
        let inner = GeneralizedSeed::from_parts(t, bar, x, y, z, big)?;
        let mut out = self.clone();
        out.inner = inner;
        out.sigma[k] = -out.sigma[k];
        out.zt[k] = out.zt[k].reciprocal();
        Ok(out)
    }

    pub fn walk(&self, w: &TreeWord) -> Result<Self> {
        let mut s = self.clone();
        for &k in w.dirs() {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Seed at every prefix of `w`, starting with `self`.
    pub fn walk_trace(&self, w: &TreeWord) -> Result<Vec<Self>> {
        let mut out = vec![self.clone()];
        for &k in w.dirs() {
            let next = out.last().unwrap().mutate(k)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.sigma == other.sigma
            && self.zt.iter().zip(&other.zt).all(|(a, b)| a.equals(b))
            && self.inner.equals(&other.inner)
    }

    pub fn difference(&self, other: &Self) -> Option<String> {
        if self.sigma != other.sigma {
            return Some(format!("sigma: {:?} vs {:?}", self.sigma, other.sigma));
        }
        self.inner.difference(&other.inner)
    }

    /// `ŷ_il = y_il prod_{jm} x_jm^{b_{jm,il}}`.
    pub fn y_hat(&self, i: usize, l: usize) -> Result<RationalFunction> {
        self.inner.y_hat(self.table().flat(i, l))
    }

    pub fn render(&self) -> String {
        let t = self.table();
        let vars = &t.table;
        let mut out = String::new();
        for i in 0..self.rank() {
            for l in 0..self.degrees()[i] {
                out.push_str(&format!("x{}_{} = {}\n", i + 1, l + 1, self.x(i, l).render(vars)));
            }
        }
        for i in 0..self.rank() {
            for l in 0..self.degrees()[i] {
                out.push_str(&format!("y{}_{} = {}\n", i + 1, l + 1, self.y(i, l).render(vars)));
            }
        }
        let sig: Vec<String> = self.sigma.iter().map(|s| if *s > 0 { "+".into() } else { "-".into() }).collect();
        out.push_str(&format!("sigma = ({})\n", sig.join(",")));
        out.push_str(&format!("B = {}\n", self.b().render()));
        out
    }
}

/// `X_i = prod_l x_il` and `Ŷ_i = y_i prod_j X_j^{b_ji}` at one vertex.
#[derive(Clone, Debug)]
pub struct Aggregates {
    pub x: Vec<RationalFunction>,
    pub y_hat: Vec<RationalFunction>,
}

/// Aggregates of a composite seed paired with the generalized seed at the
/// same vertex.
pub fn aggregates(c: &CompositeSeed, g: &GeneralizedSeed) -> Result<Aggregates> {
    if c.rank() != g.rank() || c.degrees() != g.degrees().as_slice() {
        return Err(Error::DegreeMismatch);
    }
    let nv = c.table().nvars();
    let n = c.rank();
    let x: Vec<RationalFunction> = (0..n)
        .map(|i| (0..c.degrees()[i]).fold(RationalFunction::one(nv), |acc, l| acc.mul(c.x(i, l))))
        .collect();
    let mut y_hat = Vec::new();
    for i in 0..n {
        let mut acc = g.y()[i].to_ring_value();
        for j in 0..n {
            let e = g.b().get(j, i);
            if e != 0 {
                acc = acc.mul(&x[j].pow(to_i32(e)?)?);
            }
        }
        y_hat.push(acc);
    }
    Ok(Aggregates { x, y_hat })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enlargement_of_rank_two_example() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-2, 0]], None).unwrap();
        let big = enlarge(&b, &[2, 3]);
        assert_eq!(
            big.rows(),
            &[
                vec![0, 0, 1, 1, 1],
                vec![0, 0, 1, 1, 1],
                vec![-2, -2, 0, 0, 0],
                vec![-2, -2, 0, 0, 0],
                vec![-2, -2, 0, 0, 0],
            ]
        );
        assert_eq!(shrink(&big, &[2, 3]).unwrap(), b);
    }

    #[test]
    fn unit_degrees_enlarge_to_self() {
        let b = ExchangeMatrix::new(vec![vec![0, 2, -1], vec![-1, 0, 1], vec![1, -2, 0]], None);
        if let Ok(b) = b {
            assert_eq!(enlarge(&b, &[1, 1, 1]), b);
        }
        let z = ExchangeMatrix::new(vec![vec![0, 0], vec![0, 0]], None).unwrap();
        assert!(enlarge(&z, &[2, 2]).rows().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn sigma_parities() {
        let w = TreeWord::new(vec![0, 1, 0], 2).unwrap();
        assert_eq!(sigma_of_word(&w, 2), vec![1, -1]);
        assert_eq!(sigma_of_word(&TreeWord::new(vec![0], 2).unwrap(), 2), vec![-1, 1]);
        assert_eq!(sigma_of_word(&TreeWord::empty(), 3), vec![1, 1, 1]);
    }
}
