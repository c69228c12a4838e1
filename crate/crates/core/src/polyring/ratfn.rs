use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::poly::modular;
use super::poly::{LaurentPolynomial, Monomial};
use super::table::VariableTable;
use crate::error::{Error, Result};

/// A normalized polynomial factor: nonconstant, no monomial content,
/// primitive, positive leading coefficient. The fingerprint is cached.
#[derive(Clone, Debug)]
pub struct Factor {
    hash: u64,
    poly: Arc<LaurentPolynomial>,
}

impl Factor {
    fn new(poly: LaurentPolynomial) -> Self {
        Factor {
            hash: poly.fingerprint(),
            poly: Arc::new(poly),
        }
    }

    pub fn poly(&self) -> &LaurentPolynomial {
        &self.poly
    }
}

impl PartialEq for Factor {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && (Arc::ptr_eq(&self.poly, &other.poly) || self.poly == other.poly)
    }
}

impl Eq for Factor {}

impl Hash for Factor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.hash.hash(state)
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.hash.cmp(&other.hash).then_with(|| {
            if Arc::ptr_eq(&self.poly, &other.poly) {
                Ordering::Equal
            } else {
                self.poly.cmp(&other.poly)
            }
        })
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type DivKey = (u64, u64);
type DivEntry = (Arc<LaurentPolynomial>, Arc<LaurentPolynomial>, Option<Arc<LaurentPolynomial>>);

thread_local! {
    static DIV_CACHE: RefCell<FxHashMap<DivKey, Vec<DivEntry>>> = RefCell::new(FxHashMap::default());
}

const DIV_CACHE_LIMIT: usize = 200_000;

/// `a / b` if exact, memoized per thread.
fn cached_div(a: &Factor, b: &Factor) -> Option<Arc<LaurentPolynomial>> {
    let key = (a.hash, b.hash);
    let hit = DIV_CACHE.with(|c| {
        c.borrow().get(&key).and_then(|v| {
            v.iter()
                .find(|(pa, pb, _)| **pa == *a.poly && **pb == *b.poly)
                .map(|(_, _, r)| r.clone())
        })
    });
    if let Some(r) = hit {
        return r;
    }
    let r = a.poly.div_exact(&b.poly).map(Arc::new);
    DIV_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > DIV_CACHE_LIMIT {
            c.clear();
        }
        c.entry(key)
            .or_default()
            .push((a.poly.clone(), b.poly.clone(), r.clone()));
    });
    r
}

/// Element of the rational function field, stored as
/// `coeff * x^mono * prod factor^exp`. Two representatives of the same
/// function may differ; use [`RationalFunction::equals`] to compare.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    nvars: usize,
    coeff: BigRational,
    mono: Vec<i32>,
    factors: Vec<(Factor, i32)>,
}

/// Splits a polynomial into scalar, monomial content, and a normalized
/// factor (absent when the remainder is 1).
fn normalize_poly(p: &LaurentPolynomial) -> (BigInt, Vec<i32>, Option<LaurentPolynomial>) {
    let n = p.nvars();
    let content = p.content();
    let mut scalar = content.clone();
    if p.leading().unwrap().1.is_negative() {
        scalar = -scalar;
    }
    let mono = p.min_degrees();
    if p.len() == 1 {
        return (p.terms()[0].1.clone(), p.terms()[0].0.exps().to_vec(), None);
    }
    let shift = Monomial::from_exps(mono.clone());
    let needs_shift = mono.iter().any(|&e| e != 0);
    let terms: Vec<(Monomial, BigInt)> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let m = if needs_shift { m.div(&shift) } else { m.clone() };
            (m, c / &scalar)
        })
        .collect();
    // Dividing by a monomial preserves the order, so terms stay sorted.
    let q = LaurentPolynomial::from_sorted(n, terms);
    (scalar, mono, Some(q))
}

fn merge_factors(a: &[(Factor, i32)], b: &[(Factor, i32)], sign: i32) -> Vec<(Factor, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
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
                out.push((b[j].0.clone(), sign * b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let e = a[i].1 + sign * b[j].1;
                if e != 0 {
                    out.push((a[i].0.clone(), e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn expand_factors(nvars: usize, list: &[(&Factor, u32)]) -> LaurentPolynomial {
    let mut pieces: Vec<LaurentPolynomial> = list
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(f, e)| f.poly.pow(*e))
        .collect();
    pieces.sort_by_key(|p| p.len());
    let mut acc = LaurentPolynomial::one(nvars);
    for p in pieces {
        acc = acc.mul(&p);
    }
    acc
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        RationalFunction {
            nvars,
            coeff: BigRational::zero(),
            mono: vec![0; nvars],
            factors: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        RationalFunction {
            nvars,
            coeff: c,
            mono: vec![0; nvars],
            factors: Vec::new(),
        }
    }

    pub fn integer(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, &Monomial::var(nvars, i, 1))
    }

    pub fn monomial(nvars: usize, m: &Monomial) -> Self {
        RationalFunction {
            nvars,
            coeff: BigRational::one(),
            mono: m.exps().to_vec(),
            factors: Vec::new(),
        }
    }

    pub fn from_poly(p: &LaurentPolynomial) -> Self {
        let n = p.nvars();
        if p.is_zero() {
            return Self::zero(n);
        }
        let (scalar, mono, rest) = normalize_poly(p);
        RationalFunction {
            nvars: n,
            coeff: BigRational::from_integer(scalar),
            mono,
            factors: rest.map(|q| vec![(Factor::new(q), 1)]).unwrap_or_default(),
        }
    }

    pub fn from_ratio(num: &LaurentPolynomial, den: &LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Self::from_poly(num).div(&Self::from_poly(den))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn mono(&self) -> &[i32] {
        &self.mono
    }

    pub fn factors(&self) -> &[(Factor, i32)] {
        &self.factors
    }

    /// True when the stored form is `c * monomial` with no factors.
    pub fn is_monomial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn as_constant(&self) -> Option<&BigRational> {
        if self.is_zero() || (self.factors.is_empty() && self.mono.iter().all(|&e| e == 0)) {
            Some(&self.coeff)
        } else {
            None
        }
    }

    /// Variables occurring anywhere in the stored form.
    pub fn used_vars(&self) -> Vec<bool> {
        let mut out: Vec<bool> = self.mono.iter().map(|&e| e != 0).collect();
        for (f, _) in &self.factors {
            for (o, u) in out.iter_mut().zip(f.poly.used_vars()) {
                *o |= u;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.coeff = -out.coeff;
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = RationalFunction {
            nvars: self.nvars,
            coeff: &self.coeff * &other.coeff,
            mono: self
                .mono
                .iter()
                .zip(other.mono.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
            factors: merge_factors(&self.factors, &other.factors, 1),
        };
        out.cancel();
        out
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(RationalFunction {
            nvars: self.nvars,
            coeff: self.coeff.recip(),
            mono: self.mono.iter().map(|e| -e).collect(),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if k == 0 {
            return Ok(Self::one(self.nvars));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        Ok(RationalFunction {
            nvars: self.nvars,
            coeff: num_traits::pow(self.coeff.clone(), k as usize),
            mono: self
                .mono
                .iter()
                .map(|e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), e * k)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = self.nvars;
        // Common part: minimum exponent of every factor and variable.
        let mono: Vec<i32> = self
            .mono
            .iter()
            .zip(other.mono.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        let mut common: Vec<(Factor, i32)> = Vec::new();
        let mut res_a: Vec<(&Factor, u32)> = Vec::new();
        let mut res_b: Vec<(&Factor, u32)> = Vec::new();
        {
            let a = &self.factors;
            let b = &other.factors;
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let ord = if i == a.len() {
                    Ordering::Greater
                } else if j == b.len() {
                    Ordering::Less
                } else {
                    a[i].0.cmp(&b[j].0)
                };
                let (f, ea, eb) = match ord {
                    Ordering::Less => {
                        i += 1;
                        (&a[i - 1].0, a[i - 1].1, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (&b[j - 1].0, 0, b[j - 1].1)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (&a[i - 1].0, a[i - 1].1, b[j - 1].1)
                    }
                };
                let m = ea.min(eb);
                if m != 0 {
                    common.push((f.clone(), m));
                }
                if ea > m {
                    res_a.push((f, (ea - m) as u32));
                }
                if eb > m {
                    res_b.push((f, (eb - m) as u32));
                }
            }
        }
        // Scalar: gcd of numerators over lcm of denominators.
        let scalar = BigRational::new(
            self.coeff.numer().gcd(other.coeff.numer()),
            self.coeff.denom().lcm(other.coeff.denom()),
        );
        let ka = (&self.coeff / &scalar).to_integer();
        let kb = (&other.coeff / &scalar).to_integer();
        let ma: Vec<i32> = self.mono.iter().zip(&mono).map(|(a, m)| a - m).collect();
        let mb: Vec<i32> = other.mono.iter().zip(&mono).map(|(b, m)| b - m).collect();
        let pa = expand_factors(n, &res_a)
            .mul_monomial(&Monomial::from_exps(ma))
            .scale(&ka);
        let pb = expand_factors(n, &res_b)
            .mul_monomial(&Monomial::from_exps(mb))
            .scale(&kb);
        let sum = pa.add(&pb);
        if sum.is_zero() {
            return Self::zero(n);
        }
        let base = RationalFunction {
            nvars: n,
            coeff: scalar,
            mono,
            factors: common,
        };
        base.mul(&Self::from_poly(&sum))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Removes factors that divide one another across numerator and
    /// denominator.
    fn cancel(&mut self) {
        loop {
            let mut action = None;
            'search: for (i, (fi, ei)) in self.factors.iter().enumerate() {
                if *ei <= 0 {
                    continue;
                }
                for (j, (fj, ej)) in self.factors.iter().enumerate() {
                    if *ej >= 0 {
                        continue;
                    }
                    if let Some(q) = cached_div(fi, fj) {
                        action = Some((i, j, q));
                        break 'search;
                    }
                    if let Some(q) = cached_div(fj, fi) {
                        action = Some((j, i, q));
                        break 'search;
                    }
                }
            }
            let Some((big, small, q)) = action else {
                return;
            };
            // big = small * q, so big^a small^b = small^(a+b) q^a.
            let a = self.factors[big].1;
            let small_f = self.factors[small].0.clone();
            let b = self.factors[small].1;
            let mut rest: Vec<(Factor, i32)> = self
                .factors
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != big && *k != small)
                .map(|(_, x)| x.clone())
                .collect();
            if a + b != 0 {
                rest = merge_factors(&rest, &[(small_f, a + b)], 1);
            }
            let qf = Self::from_poly(&q);
            debug_assert!(qf.coeff.is_one() && qf.mono.iter().all(|&e| e == 0));
            let qpow: Vec<(Factor, i32)> = qf.factors.iter().map(|(f, e)| (f.clone(), e * a)).collect();
            self.factors = merge_factors(&rest, &qpow, 1);
        }
    }

    /// Expanded numerator: scalar numerator, positive monomial part and
    /// positive-exponent factors.
    pub fn numerator(&self) -> LaurentPolynomial {
        let pos: Vec<(&Factor, u32)> = self
            .factors
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(f, e)| (f, *e as u32))
            .collect();
        let m: Vec<i32> = self.mono.iter().map(|&e| e.max(0)).collect();
        expand_factors(self.nvars, &pos)
            .mul_monomial(&Monomial::from_exps(m))
            .scale(self.coeff.numer())
    }

    /// Expanded denominator; together with [`RationalFunction::numerator`]
    /// it represents the same function.
    pub fn denominator(&self) -> LaurentPolynomial {
        let neg: Vec<(&Factor, u32)> = self
            .factors
            .iter()
            .filter(|(_, e)| *e < 0)
            .map(|(f, e)| (f, (-e) as u32))
            .collect();
        let m: Vec<i32> = self.mono.iter().map(|&e| (-e).max(0)).collect();
        expand_factors(self.nvars, &neg)
            .mul_monomial(&Monomial::from_exps(m))
            .scale(self.coeff.denom())
    }

    /// True when every negative-exponent factor avoids the given variables,
    /// so the function is Laurent in them.
    pub fn is_laurent_in(&self, vars: &[usize]) -> bool {
        self.factors
            .iter()
            .filter(|(_, e)| *e < 0)
            .all(|(f, _)| vars.iter().all(|&v| !f.poly.uses_var(v)))
    }

    /// Value modulo a large prime at a point with nonzero coordinates;
    /// `None` if a denominator vanishes there.
    pub fn eval_mod(&self, points: &[u64]) -> Option<u64> {
        let p = modular::P;
        if self.is_zero() {
            return Some(0);
        }
        let num = modular::reduce(self.coeff.numer());
        let den = modular::reduce(self.coeff.denom());
        if den == 0 {
            return None;
        }
        let mut val = modular::mulmod(num, modular::powmod(den, p - 2));
        for (v, &e) in self.mono.iter().enumerate() {
            if e > 0 {
                val = modular::mulmod(val, modular::powmod(points[v], e as u64));
            } else if e < 0 {
                let inv = modular::powmod(points[v], p - 2);
                val = modular::mulmod(val, modular::powmod(inv, (-(e as i64)) as u64));
            }
        }
        for (f, e) in &self.factors {
            let fv = modular::eval(&f.poly, points);
            if *e > 0 {
                val = modular::mulmod(val, modular::powmod(fv, *e as u64));
            } else {
                if fv == 0 {
                    return None;
                }
                let inv = modular::powmod(fv, p - 2);
                val = modular::mulmod(val, modular::powmod(inv, (-(*e as i64)) as u64));
            }
        }
        Some(val)
    }

    fn same_form(&self, other: &Self) -> bool {
        self.coeff == other.coeff && self.mono == other.mono && self.factors == other.factors
    }

    /// Exact equality of functions: a structural fast path, a modular
    /// fingerprint to reject quickly, then the exact difference.
    pub fn equals(&self, other: &Self) -> bool {
        if self.same_form(other) {
            return true;
        }
        let mut state = 0xC0FF_EE00_u64;
        for _ in 0..2 {
            let pts: Vec<u64> = (0..self.nvars)
                .map(|_| modular::splitmix(&mut state) % (modular::P - 1) + 1)
                .collect();
            if let (Some(a), Some(b)) = (self.eval_mod(&pts), other.eval_mod(&pts)) {
                if a != b {
                    return false;
                }
            }
        }
        self.sub(other).is_zero()
    }

    /// Subtraction-free test: sufficient check on the stored factors, then
    /// the expanded numerator and denominator.
    pub fn is_subtraction_free(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if !self.coeff.is_positive() {
            return false;
        }
        if self
            .factors
            .iter()
            .all(|(f, _)| f.poly.has_nonnegative_coefficients())
        {
            return true;
        }
        self.numerator().has_nonnegative_coefficients()
            && self.denominator().has_nonnegative_coefficients()
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<Self> {
        let n = images.first().map(|r| r.nvars).unwrap_or(0);
        if self.is_zero() {
            return Ok(Self::zero(n));
        }
        let mut out = Self::constant(n, self.coeff.clone());
        for (v, &e) in self.mono.iter().enumerate() {
            if e != 0 {
                out = out.mul(&images[v].pow(e)?);
            }
        }
        for (f, e) in &self.factors {
            let val = substitute_poly(&f.poly, images)?;
            out = out.mul(&val.pow(*e)?);
        }
        Ok(out)
    }

    /// Variable renaming into a table of size `nvars`: variable `i` goes to
    /// `map[i]`, which must be `Some` for every used variable.
    pub fn rename(&self, nvars: usize, map: &[Option<usize>]) -> Self {
        let images: Vec<RationalFunction> = map
            .iter()
            .map(|m| match m {
                Some(j) => Self::var(nvars, *j),
                None => Self::one(nvars),
            })
            .collect();
        self.substitute(&images).expect("renaming never divides by zero")
    }

    pub fn render(&self, table: &VariableTable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let num = self.numerator();
        let den = self.denominator();
        if den.is_one() {
            return num.render(table);
        }
        let wrap = |p: &LaurentPolynomial| {
            let s = p.render(table);
            if p.len() > 1 || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&num), wrap(&den))
    }

    pub fn render_plain(&self) -> String {
        let mut t = VariableTable::new();
        for i in 0..self.nvars {
            t.push(format!("v{i}"), super::table::VarRole::Formal).unwrap();
        }
        self.render(&t)
    }
}

/// Evaluates a polynomial at rational-function arguments over a common
/// denominator, so each image is expanded once.
pub fn substitute_poly(p: &LaurentPolynomial, images: &[RationalFunction]) -> Result<RationalFunction> {
    let n = images.first().map(|r| r.nvars).unwrap_or(0);
    if p.is_zero() {
        return Ok(RationalFunction::zero(n));
    }
    let pmax = p.max_degrees();
    let pmin = p.min_degrees();
    let used = p.used_vars();
    // Monomial images: rename exponents directly and scale by powers of
    // the image coefficients.
    if used
        .iter()
        .enumerate()
        .all(|(v, &u)| !u || (images[v].is_monomial() && !images[v].is_zero()))
    {
        let unit = used.iter().enumerate().all(|(v, &u)| !u || images[v].coeff.is_one());
        let mut powers: FxHashMap<(usize, i32), BigRational> = FxHashMap::default();
        let mut acc: FxHashMap<Monomial, BigRational> = FxHashMap::default();
        for (m, c) in p.terms() {
            let mut e = vec![0i32; n];
            let mut k = BigRational::from_integer(c.clone());
            for (v, &d) in m.exps().iter().enumerate() {
                if d == 0 {
                    continue;
                }
                for (t, &x) in e.iter_mut().zip(images[v].mono.iter()) {
                    *t = t
                        .checked_add(x.checked_mul(d).expect("exponent overflow"))
                        .expect("exponent overflow");
                }
                if !unit && !images[v].coeff.is_one() {
                    k *= &*powers
                        .entry((v, d))
                        .or_insert_with(|| num_traits::pow::Pow::pow(&images[v].coeff, d));
                }
            }
            *acc.entry(Monomial::from_exps(e)).or_insert_with(BigRational::zero) += k;
        }
        let den = acc.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scaled = acc.into_iter().map(|(m, c)| {
            let k = (c * BigRational::from_integer(den.clone())).to_integer();
            (m, k)
        });
        let q = LaurentPolynomial::from_terms(n, scaled);
        return Ok(RationalFunction::from_poly(&q).mul(&RationalFunction::constant(
            n,
            BigRational::new(BigInt::one(), den),
        )));
    }
    let mut nums: Vec<Vec<LaurentPolynomial>> = vec![Vec::new(); images.len()];
    let mut dens: Vec<Vec<LaurentPolynomial>> = vec![Vec::new(); images.len()];
    let mut scale = RationalFunction::one(n);
    for v in 0..images.len() {
        if !used[v] {
            continue;
        }
        if images[v].is_zero() && pmin[v] < 0 {
            return Err(Error::InversionOfZero);
        }
        let a = images[v].numerator();
        let b = images[v].denominator();
        let span = (pmax[v] - pmin[v]) as usize;
        let mut pa = vec![LaurentPolynomial::one(n)];
        let mut pb = vec![LaurentPolynomial::one(n)];
        for k in 0..span {
            pa.push(pa[k].mul(&a));
            pb.push(pb[k].mul(&b));
        }
        nums[v] = pa;
        dens[v] = pb;
        let af = RationalFunction::from_poly(&a);
        let bf = RationalFunction::from_poly(&b);
        scale = scale.mul(&af.pow(pmin[v])?).mul(&bf.pow(-pmax[v])?);
    }
    let mut sum: FxHashMap<Monomial, BigInt> = FxHashMap::default();
    for (m, c) in p.terms() {
        let mut term = LaurentPolynomial::constant(n, c.clone());
        for (v, &e) in m.exps().iter().enumerate() {
            if !used[v] {
                continue;
            }
            let ia = (e - pmin[v]) as usize;
            let ib = (pmax[v] - e) as usize;
            if ia > 0 {
                term = term.mul(&nums[v][ia]);
            }
            if ib > 0 {
                term = term.mul(&dens[v][ib]);
            }
        }
        for (m, c) in term.into_terms() {
            *sum.entry(m).or_insert_with(BigInt::zero) += c;
        }
    }
    let sum = LaurentPolynomial::from_terms(n, sum);
    Ok(RationalFunction::from_poly(&sum).mul(&scale))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, i: usize) -> RationalFunction {
        RationalFunction::var(n, i)
    }

    fn int(n: usize, k: i64) -> RationalFunction {
        RationalFunction::integer(n, k)
    }

    #[test]
    fn quotient_of_difference_of_squares() {
        let x = var(1, 0);
        let num = x.mul(&x).sub(&int(1, 1));
        let den = x.sub(&int(1, 1));
        let q = num.div(&den).unwrap();
        assert!(q.equals(&x.add(&int(1, 1))));
        assert!(q.is_monomial() || q.factors().iter().all(|(_, e)| *e > 0));
    }

    #[test]
    fn inverse_of_variable() {
        let x = var(1, 0);
        let inv = x.inv().unwrap();
        let m = RationalFunction::monomial(1, &Monomial::var(1, 0, -1));
        assert!(inv.equals(&m));
    }

    #[test]
    fn distinct_functions_differ() {
        let y = var(1, 0);
        let a = int(1, 1).add(&y);
        let b = int(1, 1).add(&y.mul(&int(1, 2)));
        assert!(!a.equals(&b));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(RationalFunction::zero(2).inv().unwrap_err(), Error::InversionOfZero);
    }

    #[test]
    fn cancellation_after_addition() {
        // (x^2 + 2x + 1) / (x + 1) reduces to x + 1 with no denominator.
        let x = var(1, 0);
        let one = int(1, 1);
        let f = x.mul(&x).add(&x.mul(&int(1, 2))).add(&one);
        let g = f.div(&x.add(&one)).unwrap();
        assert!(g.factors().iter().all(|(_, e)| *e > 0));
        assert!(g.denominator().is_one());
    }

    #[test]
    fn substitution_into_fraction() {
        // p(v) = v^2 + 1 at v = 1/(1+w) gives (w^2 + 2w + 2)/(1+w)^2.
        let n = 2;
        let p = LaurentPolynomial::var(n, 0).pow(2).add(&LaurentPolynomial::one(n));
        let w = var(n, 1);
        let img = int(n, 1).div(&int(n, 1).add(&w)).unwrap();
        let got = substitute_poly(&p, &[img, w.clone()]).unwrap();
        let expected = w
            .mul(&w)
            .add(&w.mul(&int(n, 2)))
            .add(&int(n, 2))
            .div(&int(n, 1).add(&w).pow(2).unwrap())
            .unwrap();
        assert!(got.equals(&expected));
    }
}
