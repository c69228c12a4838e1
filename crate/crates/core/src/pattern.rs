//! Generalized seeds, mutation with a mutation degree, and walks in the
//! regular tree.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{RationalFunction, SeedTable, VariableTable};
use crate::semifield::{ExchangePolynomial, SemifieldElement, SemifieldKind};

pub(crate) fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Skew-symmetrizable integer matrix with a positive integer
/// skew-symmetrizer `d` (`d_i b_ij = -d_j b_ji`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeMatrix {
    rows: Vec<Vec<i64>>,
    d: Vec<i64>,
}

/// Minimal positive integer skew-symmetrizer, found by propagating
/// `d_j = -d_i b_ij / b_ji` over connected components.
pub fn skew_symmetrizer(rows: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotSkewSymmetrizable);
    }
    for i in 0..n {
        if rows[i][i] != 0 {
            return Err(Error::NotSkewSymmetrizable);
        }
        for j in 0..n {
            let (a, b) = (rows[i][j], rows[j][i]);
            if (a == 0) != (b == 0) || (a != 0 && a.signum() == b.signum()) {
                return Err(Error::NotSkewSymmetrizable);
            }
        }
    }
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(BigRational::one());
        let mut stack = vec![root];
        let mut comp = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if rows[i][j] == 0 {
                    continue;
                }
                let dj = -&di * BigRational::from_integer(rows[i][j].into())
                    / BigRational::from_integer(rows[j][i].into());
                match &d[j] {
                    Some(existing) if *existing != dj => return Err(Error::NotSkewSymmetrizable),
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                        comp.push(j);
                    }
                }
            }
        }
        let lcm = comp
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, &i| acc.lcm(d[i].as_ref().unwrap().denom()));
        let scaled: Vec<num_bigint::BigInt> = comp
            .iter()
            .map(|&i| (d[i].as_ref().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = scaled.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(scaled) {
            out[i] = i64::try_from(v / &g).map_err(|_| Error::BoundExceeded("skew-symmetrizer".into()))?;
        }
    }
    Ok(out)
}

impl ExchangeMatrix {
    /// Validates `rows`; a supplied `d` must be positive and
    /// skew-symmetrize, otherwise one is computed.
    pub fn new(rows: Vec<Vec<i64>>, d: Option<Vec<BigRational>>) -> Result<Self> {
        let computed = skew_symmetrizer(&rows)?;
        let d = match d {
            None => computed,
            Some(given) => {
                if given.len() != rows.len() || given.iter().any(|x| !x.is_positive()) {
                    return Err(Error::NotSkewSymmetrizable);
                }
                let lcm = given
                    .iter()
                    .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let ints: Vec<i64> = given
                    .iter()
                    .map(|x| {
                        i64::try_from((x * BigRational::from_integer(lcm.clone())).to_integer())
                            .map_err(|_| Error::BoundExceeded("skew-symmetrizer".into()))
                    })
                    .collect::<Result<_>>()?;
                if !skew_symmetrizes(&rows, &ints) {
                    return Err(Error::NotSkewSymmetrizable);
                }
                ints
            }
        };
        Ok(ExchangeMatrix { rows, d })
    }

    pub(crate) fn from_parts(rows: Vec<Vec<i64>>, d: Vec<i64>) -> Self {
        debug_assert!(skew_symmetrizes(&rows, &d));
        ExchangeMatrix { rows, d }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn is_skew_symmetrized_by(&self, d: &[i64]) -> bool {
        skew_symmetrizes(&self.rows, d)
    }

    /// Mutation in direction `k` (0-based) with mutation degree `r`.
    pub fn mutate(&self, r: &[usize], k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange(k + 1));
        }
        let rk = r[k] as i64;
        let b = &self.rows;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    let t = b[i][k]
                        .checked_mul(pos(b[k][j]))
                        .and_then(|a| pos(-b[i][k]).checked_mul(b[k][j]).and_then(|c| a.checked_add(c)))
                        .and_then(|s| s.checked_mul(rk))
                        .and_then(|s| s.checked_add(b[i][j]))
                        .ok_or_else(|| Error::BoundExceeded("exchange matrix entry".into()))?;
                    t
                };
            }
        }
        Ok(ExchangeMatrix {
            rows: out,
            d: self.d.clone(),
        })
    }

    pub fn render(&self) -> String {
        render_matrix(&self.rows)
    }
}

fn skew_symmetrizes(rows: &[Vec<i64>], d: &[i64]) -> bool {
    let n = rows.len();
    d.len() == n
        && d.iter().all(|&x| x > 0)
        && (0..n).all(|i| (0..n).all(|j| d[i] as i128 * rows[i][j] as i128 == -(d[j] as i128) * rows[j][i] as i128))
}

/// Row-major rendering `[[a,b],[c,d]]`.
pub fn render_matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// A reduced word `(k_1, ..., k_d)` naming a vertex of the tree;
/// directions are stored 0-based and displayed 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeWord(Vec<usize>);

impl TreeWord {
    pub fn new(dirs: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&k) = dirs.iter().find(|&&k| k >= n) {
            return Err(Error::IndexOutOfRange(k + 1));
        }
        if dirs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NonReducedWord);
        }
        Ok(TreeWord(dirs))
    }

    pub fn empty() -> Self {
        TreeWord(Vec::new())
    }

    /// Parses `"1,2,1"` (1-based); the empty string is the initial vertex.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::empty());
        }
        let mut dirs = Vec::new();
        for (pos, part) in text.split(',').enumerate() {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("word entry {}", pos + 1), format!("'{}' is not a direction", part.trim())))?;
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRange(k));
            }
            dirs.push(k - 1);
        }
        Self::new(dirs, n)
    }

    pub fn dirs(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, len: usize) -> TreeWord {
        TreeWord(self.0[..len].to_vec())
    }

    /// All reduced words of length at most `depth` over `n` directions, in
    /// length-then-lexicographic order (the empty word first).
    pub fn all_up_to(n: usize, depth: usize) -> Vec<TreeWord> {
        let mut out = vec![TreeWord::empty()];
        let mut frontier = vec![TreeWord::empty()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &frontier {
                for k in 0..n {
                    if w.0.last() != Some(&k) {
                        let mut d = w.0.clone();
                        d.push(k);
                        next.push(TreeWord(d));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| (k + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Generalized seed `(x, y, Z, B)`. Cluster variables are rational
/// functions over the seed table; coefficients live in `kind`.
#[derive(Clone, Debug)]
pub struct GeneralizedSeed {
    table: Arc<SeedTable>,
    kind: Arc<SemifieldKind>,
    x: Vec<RationalFunction>,
    y: Vec<SemifieldElement>,
    z: Vec<ExchangePolynomial>,
    b: ExchangeMatrix,
}

impl GeneralizedSeed {
    /// Initial seed with cluster variables `x1, ..., xn` of the table.
    pub fn initial(
        table: Arc<SeedTable>,
        kind: Arc<SemifieldKind>,
        y: Vec<SemifieldElement>,
        z: Vec<ExchangePolynomial>,
        b: ExchangeMatrix,
    ) -> Result<Self> {
        let n = table.nvars();
        let x = table.cluster.iter().map(|&v| RationalFunction::var(n, v)).collect();
        Self::from_parts(table, kind, x, y, z, b)
    }

    pub fn from_parts(
        table: Arc<SeedTable>,
        kind: Arc<SemifieldKind>,
        x: Vec<RationalFunction>,
        y: Vec<SemifieldElement>,
        z: Vec<ExchangePolynomial>,
        b: ExchangeMatrix,
    ) -> Result<Self> {
        let seed = GeneralizedSeed {
            table,
            kind,
            x,
            y,
            z,
            b,
        };
        seed.validate()?;
        Ok(seed)
    }

    /// Checks shapes, degrees, exchange-polynomial endpoints and the
    /// skew-symmetrizer.
    pub fn validate(&self) -> Result<()> {
        let n = self.b.rank();
        if self.x.len() != n || self.y.len() != n || self.z.len() != n {
            return Err(Error::DegreeMismatch);
        }
        if !self.b.is_skew_symmetrized_by(&self.b.d) {
            return Err(Error::NotSkewSymmetrizable);
        }
        for z in &self.z {
            if z.degree() == 0 {
                return Err(Error::DegreeMismatch);
            }
            if !z.coeffs()[0].is_one() || !z.coeffs()[z.degree()].is_one() {
                return Err(Error::NonMonicExchangePolynomial);
            }
        }
        for y in &self.y {
            if **y.kind() != *self.kind {
                return Err(Error::SemifieldMismatch);
            }
        }
        if self.x.iter().any(|x| x.nvars() != self.table.nvars()) {
            return Err(Error::VariableTableMismatch("cluster variable arity".into()));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.b.rank()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.z.iter().map(|z| z.degree()).collect()
    }

    pub fn table(&self) -> &Arc<SeedTable> {
        &self.table
    }

    pub fn vars(&self) -> &VariableTable {
        &self.table.table
    }

    pub fn kind(&self) -> &Arc<SemifieldKind> {
        &self.kind
    }

    pub fn x(&self) -> &[RationalFunction] {
        &self.x
    }

    pub fn y(&self) -> &[SemifieldElement] {
        &self.y
    }

    pub fn z(&self) -> &[ExchangePolynomial] {
        &self.z
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    /// `ŷ_k = y_k prod_j x_j^{b_jk}` as a field element.
    pub fn y_hat(&self, k: usize) -> Result<RationalFunction> {
        let mut acc = self.y[k].to_ring_value();
        for j in 0..self.rank() {
            let e = self.b.get(j, k);
            if e != 0 {
                acc = acc.mul(&self.x[j].pow(to_i32(e)?)?);
            }
        }
        Ok(acc)
    }

    /// Mutation in direction `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange(k + 1));
        }
        let r = self.degrees();
        let rk = r[k] as i64;
        let spec = self.z[k].specialize(&self.y[k])?;

        let mut monomial = RationalFunction::one(self.table.nvars());
        for j in 0..n {
            let e = pos(-self.b.get(j, k)) * rk;
            if e != 0 {
                monomial = monomial.mul(&self.x[j].pow(to_i32(e)?)?);
            }
        }
        let numer = self.z[k].evaluate(&self.y_hat(k)?);
        let xk = self.x[k]
            .inv()?
            .mul(&monomial)
            .mul(&numer)
            .div(&spec.to_ring_value())?;

        let mut y = self.y.clone();
        for (i, yi) in y.iter_mut().enumerate() {
            if i == k {
                *yi = self.y[k].inv();
            } else {
                let bki = self.b.get(k, i);
                let t = self.y[k].pow(pos(bki) * rk).mul(&spec.pow(-bki))?;
                *yi = yi.mul(&t)?;
            }
        }
        let mut x = self.x.clone();
        x[k] = xk;
        let mut z = self.z.clone();
        z[k] = z[k].reciprocal();
        Ok(GeneralizedSeed {
            table: self.table.clone(),
            kind: self.kind.clone(),
            x,
            y,
            z,
            b: self.b.mutate(&r, k)?,
        })
    }

    /// Left-to-right fold of mutations along `w`.
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

    /// Componentwise equality of all four components.
    pub fn equals(&self, other: &Self) -> bool {
        self.b == other.b
            && self.x.iter().zip(&other.x).all(|(a, b)| a.equals(b))
            && self.y.iter().zip(&other.y).all(|(a, b)| a.equals(b))
            && self.z.iter().zip(&other.z).all(|(a, b)| a.equals(b))
    }

    /// First differing component, for witnesses.
    pub fn difference(&self, other: &Self) -> Option<String> {
        let t = self.vars();
        if self.b != other.b {
            return Some(format!("B: {} vs {}", self.b.render(), other.b.render()));
        }
        for i in 0..self.rank() {
            if !self.x[i].equals(&other.x[i]) {
                return Some(format!("x{}: {} vs {}", i + 1, self.x[i].render(t), other.x[i].render(t)));
            }
            if !self.y[i].equals(&other.y[i]) {
                return Some(format!("y{}: {} vs {}", i + 1, self.y[i].render(t), other.y[i].render(t)));
            }
            if !self.z[i].equals(&other.z[i]) {
                return Some(format!("Z{}: {} vs {}", i + 1, self.z[i].render(t), other.z[i].render(t)));
            }
        }
        None
    }

    /// Laurent in the initial cluster variables with positive
    /// coefficients: no denominator factor involves a cluster variable,
    /// denominator factors are subtraction-free, and the expanded numerator
    /// has nonnegative coefficients.
    pub fn x_is_laurent_positive(&self, i: usize) -> bool {
        let x = &self.x[i];
        x.is_laurent_in(&self.table.cluster)
            && x.coeff().is_positive()
            && x
                .factors()
                .iter()
                .filter(|(_, e)| *e < 0)
                .all(|(f, _)| f.poly().has_nonnegative_coefficients())
            && x.numerator().has_nonnegative_coefficients()
    }

    pub fn render(&self) -> String {
        let t = self.vars();
        let mut out = String::new();
        for i in 0..self.rank() {
            out.push_str(&format!("x{} = {}\n", i + 1, self.x[i].render(t)));
        }
        for i in 0..self.rank() {
            out.push_str(&format!("y{} = {}\n", i + 1, self.y[i].render(t)));
        }
        for i in 0..self.rank() {
            out.push_str(&format!("Z{}(u) = {}\n", i + 1, self.z[i].render(t)));
        }
        out.push_str(&format!("B = {}\n", self.b.render()));
        out
    }
}

pub(crate) fn to_i32(e: i64) -> Result<i32> {
    i32::try_from(e).map_err(|_| Error::BoundExceeded("exponent".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_matrix_is_rejected() {
        assert_eq!(
            ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]], None).unwrap_err(),
            Error::NotSkewSymmetrizable
        );
    }

    #[test]
    fn computed_symmetrizer() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-2, 0]], None).unwrap();
        assert_eq!(b.d(), &[2, 1]);
        let given = ExchangeMatrix::new(
            vec![vec![0, 1], vec![-2, 0]],
            Some(vec![BigRational::from_integer(2.into()), BigRational::one()]),
        );
        assert!(given.is_ok());
    }

    #[test]
    fn rank_two_mutation_negates() {
        let b = ExchangeMatrix::new(vec![vec![0, 3], vec![-1, 0]], None).unwrap();
        let m = b.mutate(&[2, 1], 0).unwrap();
        assert_eq!(m.rows(), &[vec![0, -3], vec![1, 0]]);
    }

    #[test]
    fn degree_weighted_mutation() {
        let b = ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]], None).unwrap();
        let m = b.mutate(&[1, 2, 1], 1).unwrap();
        assert_eq!(m.get(0, 2), 2);
        assert_eq!(m.get(2, 0), -2);
        assert_eq!(m.get(0, 1), -1);
        assert_eq!(m.get(1, 2), -1);
        assert_eq!(m.mutate(&[1, 2, 1], 1).unwrap(), b);
    }

    #[test]
    fn words() {
        assert_eq!(TreeWord::parse("1,2,1", 2).unwrap().dirs(), &[0, 1, 0]);
        assert_eq!(TreeWord::parse("1,1", 2).unwrap_err(), Error::NonReducedWord);
        assert_eq!(TreeWord::parse("3", 2).unwrap_err(), Error::IndexOutOfRange(3));
        assert!(TreeWord::parse("", 2).unwrap().is_empty());
        assert_eq!(TreeWord::all_up_to(2, 3).len(), 7);
        assert_eq!(TreeWord::all_up_to(3, 2).len(), 1 + 3 + 6);
    }
}
