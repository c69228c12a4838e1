use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHasher};

use super::table::VariableTable;

/// Exponent vector of a Laurent monomial. The total degree is cached
/// because it drives the monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: i64,
    exps: Box<[i32]>,
}

/// Graded order: total degree first, then a variable-0-first comparison in
/// which the smaller exponent wins. Compatible with multiplication, so it
/// is a valid monomial order for division.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, i: usize, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial {
            degree: e as i64,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn from_exps(exps: Vec<i32>) -> Self {
        let degree = exps.iter().map(|&e| e as i64).sum();
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    /// Product of monomials. Panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<i32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let exps: Vec<i32> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_sub(b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self.degree - other.degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let exps: Vec<i32> = self
            .exps
            .iter()
            .map(|&a| a.checked_mul(k).expect("exponent overflow"))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    pub fn render(&self, table: &VariableTable) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(table.name(i).to_string()),
                _ => parts.push(format!("{}^{}", table.name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Sparse multivariate Laurent polynomial with arbitrary-precision integer
/// coefficients. Terms are kept sorted ascending in the monomial order with
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

fn bits_of(c: &BigInt) -> u64 {
    c.bits()
}

/// Signed limb decomposition `c = sum_t limb_t 2^(width t)`, used to
/// accumulate big products in `i128` cells.
#[derive(Clone, Copy)]
struct Limbs {
    width: u64,
    count: usize,
}

impl Limbs {
    /// Layout for products of coefficients of `wide_bits` by coefficients
    /// of `narrow_bits`, with at most `2^len_bits` products per cell.
    fn for_product(wide_bits: u64, narrow_bits: u64, len_bits: u64) -> Option<Limbs> {
        if narrow_bits > 62 || narrow_bits + len_bits > 100 {
            return None;
        }
        let width = (126 - narrow_bits - len_bits).min(64);
        Some(Limbs {
            width,
            count: wide_bits.div_ceil(width).max(1) as usize,
        })
    }

    fn split(&self, c: &BigInt, out: &mut Vec<i128>) {
        if self.count == 1 {
            out.push(c.to_i128().expect("limb fits"));
            return;
        }
        let mask = (BigInt::one() << self.width) - 1;
        let sign = if c.is_negative() { -1 } else { 1 };
        let mut mag = c.abs();
        for _ in 0..self.count {
            out.push(sign * (&mag & &mask).to_i128().expect("limb fits"));
            mag >>= self.width;
        }
    }

    fn join(&self, parts: &[i128]) -> BigInt {
        parts
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &x| (acc << self.width) + BigInt::from(x))
    }
}

/// Sparse accumulator for one slab: packed key to a run of `limbs` cells.
#[derive(Default)]
struct Cells {
    index: FxHashMap<u128, usize>,
    cells: Vec<i128>,
}

impl Cells {
    fn add_products(&mut self, wide: &[(u128, &[i128])], narrow: &[(u128, i128)], limbs: usize) {
        for &(kw, parts) in wide {
            for &(kn, cn) in narrow {
                let next = self.cells.len();
                let at = *self.index.entry(kw + kn).or_insert(next);
                if at == next {
                    self.cells.resize(next + limbs, 0);
                }
                for (a, p) in self.cells[at..at + limbs].iter_mut().zip(parts) {
                    *a += p * cn;
                }
            }
        }
    }
}

const PARALLEL_PRODUCT: u128 = 1 << 21;

/// `f(s)` for every slab `s`, concatenated; slabs run on the rayon pool
/// when the product is large.
#[cfg(feature = "parallel")]
fn map_slabs<T: Send>(count: usize, pairs: u128, f: impl Fn(usize) -> Vec<T> + Send + Sync) -> Vec<T> {
    use rayon::prelude::*;
    if pairs < PARALLEL_PRODUCT || rayon::current_num_threads() < 2 {
        return (0..count).flat_map(f).collect();
    }
    let parts: Vec<Vec<T>> = (0..count).into_par_iter().map(f).collect();
    parts.into_iter().flatten().collect()
}

#[cfg(not(feature = "parallel"))]
fn map_slabs<T: Send>(count: usize, _pairs: u128, f: impl Fn(usize) -> Vec<T> + Send + Sync) -> Vec<T> {
    let _ = PARALLEL_PRODUCT;
    (0..count).flat_map(f).collect()
}

/// Mixed-radix layout of the exponent box of a product, with one variable
/// (`cut`) pulled out to index slabs.
struct SlabLayout {
    cut: usize,
    offset: Vec<i32>,
    stride: Vec<u128>,
    slab: u128,
    slabs: usize,
}

impl SlabLayout {
    fn for_product(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<SlabLayout> {
        let (min_a, max_a) = (a.min_degrees(), a.max_degrees());
        let (min_b, max_b) = (b.min_degrees(), b.max_degrees());
        let radix: Vec<u128> = (0..a.nvars)
            .map(|v| (max_a[v] as i128 - min_a[v] as i128 + max_b[v] as i128 - min_b[v] as i128 + 1) as u128)
            .collect();
        let cut = (0..a.nvars).max_by_key(|&v| radix[v])?;
        let mut stride = vec![0u128; a.nvars];
        let mut slab = 1u128;
        for v in (0..a.nvars).rev() {
            if v != cut {
                stride[v] = slab;
                slab = slab.checked_mul(radix[v])?;
            }
        }
        Some(SlabLayout {
            cut,
            offset: (0..a.nvars).map(|v| min_a[v] + min_b[v]).collect(),
            stride,
            slab,
            slabs: usize::try_from(radix[cut]).ok()?,
        })
    }

    fn encode(&self, e: &[i32], min: &[i32]) -> u128 {
        e.iter()
            .zip(min)
            .zip(&self.stride)
            .map(|((x, m), s)| (x - m) as u128 * s)
            .sum()
    }

    fn decode(&self, s: usize, mut k: u128) -> Monomial {
        let mut e = vec![0i32; self.stride.len()];
        for (v, x) in e.iter_mut().enumerate() {
            let d = if v == self.cut {
                s as u128
            } else {
                let d = k / self.stride[v];
                k %= self.stride[v];
                d
            };
            *x = d as i32 + self.offset[v];
        }
        Monomial::from_exps(e)
    }
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(nvars), c.into())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i, 1), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        LaurentPolynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: FxHashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPolynomial { nvars, terms }
    }

    /// Trusted constructor: terms already sorted, distinct and nonzero.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, BigInt)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term (largest in the monomial order).
    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        match self.terms.binary_search_by(|(t, _)| t.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_nonnegative())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// Per-variable maximum exponent (zero vector for the zero polynomial).
    pub fn max_degrees(&self) -> Vec<i32> {
        let mut out = vec![i32::MIN; self.nvars];
        for (m, _) in &self.terms {
            for (o, &e) in out.iter_mut().zip(m.exps()) {
                *o = (*o).max(e);
            }
        }
        if self.terms.is_empty() {
            out.iter_mut().for_each(|o| *o = 0);
        }
        out
    }

    /// Per-variable minimum exponent; this is the monomial content.
    pub fn min_degrees(&self) -> Vec<i32> {
        let mut out = vec![i32::MAX; self.nvars];
        for (m, _) in &self.terms {
            for (o, &e) in out.iter_mut().zip(m.exps()) {
                *o = (*o).min(e);
            }
        }
        if self.terms.is_empty() {
            out.iter_mut().for_each(|o| *o = 0);
        }
        out
    }

    pub fn monomial_content(&self) -> Monomial {
        Monomial::from_exps(self.min_degrees())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps()[i] != 0)
    }

    pub fn used_vars(&self) -> Vec<bool> {
        let mut out = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (o, &e) in out.iter_mut().zip(m.exps()) {
                *o |= e != 0;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Exact division of every coefficient by `k`. Caller guarantees
    /// divisibility.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!((c % k).is_zero());
                    (m.clone(), c / k)
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        if let Some(p) = self.mul_limbed(other) {
            return p;
        }
        let cap = (self.terms.len() * other.terms.len()).min(1 << 20);
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(cap);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Product with `i128` accumulators: the operand with wider
    /// coefficients is split into limbs, the other must fit in `i64`.
    /// The exponent box of the result is cut into slabs along its longest
    /// side. A slab accumulates in a flat array when the box is small next
    /// to the number of term pairs, otherwise in its own hash map.
    fn mul_limbed(&self, other: &Self) -> Option<Self> {
        const MAX_SLAB: u128 = 1 << 22;
        let bits = |p: &Self| p.terms.iter().map(|(_, c)| bits_of(c)).max().unwrap_or(0);
        let (wide, narrow) = if bits(self) >= bits(other) { (self, other) } else { (other, self) };
        let len_bits = 64 - (self.terms.len().min(other.terms.len()) as u64).leading_zeros() as u64;
        let limbs = Limbs::for_product(bits(wide), bits(narrow), len_bits)?;
        let layout = SlabLayout::for_product(wide, narrow)?;
        let (l, cut) = (limbs.count, layout.cut);
        let mut parts = Vec::with_capacity(wide.terms.len() * l);
        for (_, c) in &wide.terms {
            limbs.split(c, &mut parts);
        }
        let (min_a, min_b) = (wide.min_degrees(), narrow.min_degrees());
        let span_a = (wide.max_degrees()[cut] - min_a[cut]) as usize + 1;
        let span_b = (narrow.max_degrees()[cut] - min_b[cut]) as usize + 1;
        let mut wide_at: Vec<Vec<(u128, &[i128])>> = vec![Vec::new(); span_a];
        for ((m, _), p) in wide.terms.iter().zip(parts.chunks_exact(l)) {
            wide_at[(m.exps()[cut] - min_a[cut]) as usize].push((layout.encode(m.exps(), &min_a), p));
        }
        let mut narrow_at: Vec<Vec<(u128, i128)>> = vec![Vec::new(); span_b];
        for (m, c) in &narrow.terms {
            let c = c.to_i128().expect("fits");
            narrow_at[(m.exps()[cut] - min_b[cut]) as usize].push((layout.encode(m.exps(), &min_b), c));
        }
        let (wide_at, narrow_at) = (&wide_at, &narrow_at);
        let groups = |s: usize| {
            (s.saturating_sub(span_b - 1)..=s.min(span_a - 1))
                .map(move |ia| (&wide_at[ia], &narrow_at[s - ia]))
                .filter(|(w, n)| !w.is_empty() && !n.is_empty())
        };
        let pairs = (wide.terms.len() * narrow.terms.len()) as u128;
        let dense = layout.slab * l as u128 <= MAX_SLAB && layout.slab * layout.slabs as u128 <= 8 * pairs;
        let mut terms = if dense {
            let mut acc = vec![0i128; l * layout.slab as usize];
            let mut terms = Vec::new();
            for s in 0..layout.slabs {
                let mut touched = false;
                for (ws, ns) in groups(s) {
                    touched = true;
                    for &(kw, p) in ws {
                        for &(kn, cn) in ns {
                            let at = (kw + kn) as usize * l;
                            for (a, x) in acc[at..at + l].iter_mut().zip(p) {
                                *a += x * cn;
                            }
                        }
                    }
                }
                if !touched {
                    continue;
                }
                for (k, cell) in acc.chunks_exact_mut(l).enumerate() {
                    if cell.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let c = limbs.join(cell);
                    cell.fill(0);
                    if !c.is_zero() {
                        terms.push((layout.decode(s, k as u128), c));
                    }
                }
            }
            terms
        } else {
            map_slabs(layout.slabs, pairs, |s| {
                let mut acc = Cells::default();
                for (ws, ns) in groups(s) {
                    acc.add_products(ws, ns, l);
                }
                acc.index
                    .into_iter()
                    .filter_map(|(k, at)| {
                        let c = limbs.join(&acc.cells[at..at + l]);
                        (!c.is_zero()).then(|| (layout.decode(s, k), c))
                    })
                    .collect()
            })
        };
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Some(LaurentPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        if k == 0 {
            return result;
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Self::term(m.pow(k as i32), num_traits::pow(c.clone(), k as usize));
        }
        // Repeated multiplication keeps intermediate sizes smaller than
        // squaring for sparse inputs.
        for _ in 0..k {
            result = result.mul(self);
        }
        result
    }

    /// Applies an exponent map to every term and recombines.
    pub fn map_monomials(&self, nvars: usize, f: impl Fn(&[i32]) -> Vec<i32>) -> Self {
        Self::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_exps(f(m.exps())), c.clone())),
        )
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        self.map_monomials(self.nvars, |e| {
            let mut out = vec![0; e.len()];
            for (i, &x) in e.iter().enumerate() {
                out[perm[i]] = x;
            }
            out
        })
    }

    /// Exact division. Returns `None` when `q` does not divide `self` in
    /// the Laurent ring restricted to the exponent box implied by degrees.
    pub fn div_exact(&self, q: &Self) -> Option<Self> {
        assert!(!q.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if q.terms.len() == 1 {
            let (qm, qc) = &q.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let (d, r) = c.div_rem(qc);
                if !r.is_zero() {
                    return None;
                }
                out.push((m.div(qm), d));
            }
            return Some(LaurentPolynomial {
                nvars: self.nvars,
                terms: out,
            });
        }
        if q.terms.len() > self.terms.len() && self.terms.len() == 1 {
            return None;
        }
        let pmax = self.max_degrees();
        let pmin = self.min_degrees();
        let qmax = q.max_degrees();
        let qmin = q.min_degrees();
        let mut lo = Vec::with_capacity(self.nvars);
        let mut hi = Vec::with_capacity(self.nvars);
        for v in 0..self.nvars {
            let l = pmin[v] - qmin[v];
            let h = pmax[v] - qmax[v];
            if l > h {
                return None;
            }
            lo.push(l);
            hi.push(h);
        }
        if !modular::maybe_divides(self, q) {
            return None;
        }
        if let Some(out) = self.div_exact_packed(q, &pmin, &qmin, &lo, &hi) {
            return out;
        }
        let (lm, lc) = q.leading().unwrap().clone();
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        let rest = &q.terms[..q.terms.len() - 1];
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(&lm);
            if qm
                .exps()
                .iter()
                .enumerate()
                .any(|(v, &e)| e < lo[v] || e > hi[v])
            {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (tm, tc) in rest {
                let mm = tm.mul(&qm);
                let delta = tc * &qc;
                match rem.entry(mm) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        quot.reverse();
        Some(LaurentPolynomial {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Exact division with exponents packed into `u128` keys, eliminating
    /// leading terms in lex order. `None` if the box of `self` does not fit.
    fn div_exact_packed(&self, q: &Self, pmin: &[i32], qmin: &[i32], lo: &[i32], hi: &[i32]) -> Option<Option<Self>> {
        let pmax = self.max_degrees();
        let mut shifts = Vec::with_capacity(self.nvars);
        let mut widths = Vec::with_capacity(self.nvars);
        let mut total = 0u32;
        for v in 0..self.nvars {
            let w = 64 - ((pmax[v] - pmin[v]) as u64).leading_zeros();
            shifts.push(total);
            widths.push(w);
            total += w;
            if total > 128 {
                return None;
            }
        }
        let encode = |e: &[i32], min: &[i32]| -> u128 {
            let mut k = 0u128;
            for v in 0..e.len() {
                if widths[v] > 0 {
                    k |= ((e[v] - min[v]) as u128) << shifts[v];
                }
            }
            k
        };
        let field = |k: u128, v: usize| -> i32 {
            if widths[v] == 0 {
                0
            } else {
                ((k >> shifts[v]) & ((1u128 << widths[v]) - 1)) as i32
            }
        };
        let mut qterms: Vec<(u128, &BigInt)> = q.terms.iter().map(|(m, c)| (encode(m.exps(), qmin), c)).collect();
        qterms.sort_unstable_by_key(|t| t.0);
        let (lk, lc) = qterms.pop().unwrap();
        let lfields: Vec<i32> = (0..self.nvars).map(|v| field(lk, v)).collect();
        let mut rem: BTreeMap<u128, BigInt> = self.terms.iter().map(|(m, c)| (encode(m.exps(), pmin), c.clone())).collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((k, c)) = rem.pop_last() {
            let mut exps = Vec::with_capacity(self.nvars);
            for v in 0..self.nvars {
                let d = field(k, v) - lfields[v];
                if d < 0 || d > hi[v] - lo[v] {
                    return Some(None);
                }
                exps.push(d + lo[v]);
            }
            let qk = k - lk;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Some(None);
            }
            for &(tk, tc) in &qterms {
                let delta = tc * &qc;
                match rem.entry(tk + qk) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((Monomial::from_exps(exps), qc));
        }
        quot.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Some(Some(LaurentPolynomial {
            nvars: self.nvars,
            terms: quot,
        }))
    }

    /// Stable 64-bit fingerprint.
    pub fn fingerprint(&self) -> u64 {
        let mut h = FxHasher::default();
        self.hash(&mut h);
        h.finish()
    }

    pub fn render(&self, table: &VariableTable) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render(table));
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&m.render(table));
            }
        }
        out
    }

    /// Renders with generated names `v0, v1, ...`.
    pub fn render_plain(&self) -> String {
        let mut t = VariableTable::new();
        for i in 0..self.nvars {
            t.push(format!("v{i}"), super::table::VarRole::Formal).unwrap();
        }
        self.render(&t)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

/// Sound non-divisibility filter: reduce both polynomials to univariate
/// images over a prime field and test divisibility there.
pub(crate) mod modular {
    use super::*;

    pub(crate) const P: u64 = (1u64 << 61) - 1;

    pub(crate) fn mulmod(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    pub(crate) fn addmod(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    pub(crate) fn powmod(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    }

    pub(crate) fn reduce(c: &BigInt) -> u64 {
        if let Some(v) = c.to_i64() {
            let m = v.rem_euclid(P as i64);
            return m as u64;
        }
        let m = c.mod_floor(&BigInt::from(P));
        m.to_u64().unwrap()
    }

    pub(crate) fn splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn image(p: &LaurentPolynomial, v: usize, points: &[u64], pows: &[Vec<u64>]) -> Vec<u64> {
        let deg = p.max_degrees()[v].max(0) as usize;
        let mut out = vec![0u64; deg + 1];
        for (m, c) in p.terms() {
            let mut val = reduce(c);
            for (w, &e) in m.exps().iter().enumerate() {
                if w != v && e != 0 {
                    let e = e as usize;
                    val = mulmod(
                        val,
                        if e < pows[w].len() {
                            pows[w][e]
                        } else {
                            powmod(points[w], e as u64)
                        },
                    );
                }
            }
            let d = m.exps()[v] as usize;
            out[d] = addmod(out[d], val);
        }
        out
    }

    /// Value at a point with nonzero coordinates; negative exponents use
    /// modular inverses.
    pub(crate) fn eval(p: &LaurentPolynomial, points: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (m, c) in p.terms() {
            let mut val = reduce(c);
            for (w, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    val = mulmod(val, powmod(points[w], e as u64));
                } else if e < 0 {
                    let inv = powmod(points[w], P - 2);
                    val = mulmod(val, powmod(inv, (-(e as i64)) as u64));
                }
            }
            acc = addmod(acc, val);
        }
        acc
    }

    pub(super) fn maybe_divides(p: &LaurentPolynomial, q: &LaurentPolynomial) -> bool {
        if !p.is_polynomial() || !q.is_polynomial() {
            return true;
        }
        let qmax = q.max_degrees();
        let (v, &dv) = match qmax.iter().enumerate().max_by_key(|(_, &d)| d) {
            Some(x) => x,
            None => return true,
        };
        if dv == 0 {
            return true;
        }
        let pmax = p.max_degrees();
        let mut state = 0x5EED_CAFE_u64;
        let points: Vec<u64> = (0..p.nvars()).map(|_| splitmix(&mut state) % P).collect();
        let pows: Vec<Vec<u64>> = points
            .iter()
            .zip(pmax.iter())
            .map(|(&x, &d)| {
                let d = (d.max(0) as usize).min(4096);
                let mut t = Vec::with_capacity(d + 1);
                let mut acc = 1u64;
                for _ in 0..=d {
                    t.push(acc);
                    acc = mulmod(acc, x);
                }
                t
            })
            .collect();
        let mut a = image(p, v, &points, &pows);
        let mut b = image(q, v, &points, &pows);
        while b.last() == Some(&0) {
            b.pop();
        }
        if b.is_empty() {
            return true;
        }
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.len() < b.len() {
            return a.is_empty();
        }
        let lead_inv = powmod(*b.last().unwrap(), P - 2);
        let db = b.len() - 1;
        for top in (db..a.len()).rev() {
            let coef = mulmod(a[top], lead_inv);
            if coef == 0 {
                continue;
            }
            let shift = top - db;
            for (k, &bk) in b.iter().enumerate() {
                let sub = mulmod(coef, bk);
                a[shift + k] = addmod(a[shift + k], P - sub);
            }
        }
        a[..db].iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(n, i)
    }

    fn c(n: usize, k: i64) -> LaurentPolynomial {
        LaurentPolynomial::constant(n, k)
    }

    #[test]
    fn one_plus_x_times_one_minus_x() {
        let x = v(1, 0);
        let p = c(1, 1).add(&x).mul(&c(1, 1).sub(&x));
        let expected = c(1, 1).sub(&x.mul(&x));
        assert_eq!(p, expected);
    }

    #[test]
    fn laurent_units() {
        let xinv = LaurentPolynomial::term(Monomial::var(1, 0, -1), BigInt::one());
        assert!(xinv.mul(&v(1, 0)).is_one());
    }

    #[test]
    fn exact_division_roundtrip() {
        let n = 3;
        let a = c(n, 1).add(&v(n, 0)).add(&v(n, 1).mul(&v(n, 2)));
        let b = c(n, 2).sub(&v(n, 2).pow(3)).add(&v(n, 0).mul(&v(n, 1)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let off = prod.add(&c(n, 1));
        assert!(off.div_exact(&a).is_none());
    }

    #[test]
    fn division_rejects_partial_divisor() {
        let n = 1;
        let x = v(n, 0);
        let p = c(n, 1).add(&x).pow(2);
        let q = c(n, 1).add(&x.pow(2));
        assert!(p.div_exact(&q).is_none());
    }

    #[test]
    fn big_coefficients_survive_multiplication() {
        let n = 2;
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let p = LaurentPolynomial::constant(n, big.clone()).add(&v(n, 0));
        let q = p.mul(&p);
        assert_eq!(q.coefficient(&Monomial::one(n)), &big * &big);
        assert_eq!(q.div_exact(&p).unwrap(), p);
    }

    #[test]
    fn render_is_ascending() {
        let mut t = VariableTable::new();
        t.push("y1", super::super::table::VarRole::Formal).unwrap();
        t.push("z", super::super::table::VarRole::Formal).unwrap();
        let y = v(2, 0);
        let z = v(2, 1);
        let p = c(2, 1).add(&z.mul(&y)).add(&y.mul(&y));
        assert_eq!(p.render(&t), "1 + y1^2 + y1*z");
        assert_eq!(c(2, 1).sub(&y.scale(&BigInt::from(2))).render(&t), "1 - 2*y1");
    }
}
