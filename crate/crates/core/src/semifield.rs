//! Coefficient semifields (trivial, tropical, universal), the group-ring
//! fragment used for exchange-polynomial coefficients, and the projection
//! onto the semifield.
//!
//! Elements live over an ambient [`VariableTable`](crate::polyring::VariableTable):
//! universal values are rational functions in the generator variables,
//! tropical values are exponent vectors that embed as Laurent monomials.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{
    psi_hat, substitute_poly, ElementarySymbols, LaurentPolynomial, Monomial, RationalFunction,
    VariableTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Trivial,
    Tropical,
    Universal,
}

/// A semifield together with the positions of its generators in the
/// ambient variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemifieldKind {
    flavor: Flavor,
    generators: Vec<String>,
    vars: Vec<usize>,
    nvars: usize,
}

impl SemifieldKind {
    pub fn new(flavor: Flavor, generators: Vec<String>, vars: Vec<usize>, nvars: usize) -> Result<Arc<Self>> {
        if generators.len() != vars.len() {
            return Err(Error::VariableTableMismatch("generator count".into()));
        }
        if flavor == Flavor::Trivial && !generators.is_empty() {
            return Err(Error::VariableTableMismatch("trivial semifield has no generators".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if !crate::polyring::is_identifier(g) || generators[..k].contains(g) {
                return Err(Error::VariableTableMismatch(format!("bad generator '{g}'")));
            }
        }
        if vars.iter().any(|&v| v >= nvars) {
            return Err(Error::VariableTableMismatch("generator index".into()));
        }
        Ok(Arc::new(SemifieldKind {
            flavor,
            generators,
            vars,
            nvars,
        }))
    }

    /// Kind whose generators are looked up by name in `table`.
    pub fn over_table(flavor: Flavor, generators: &[String], table: &VariableTable) -> Result<Arc<Self>> {
        let vars = generators
            .iter()
            .map(|g| {
                table
                    .index_of(g)
                    .ok_or_else(|| Error::VariableTableMismatch(format!("unknown generator '{g}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(flavor, generators.to_vec(), vars, table.len())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

#[derive(Clone, Debug)]
enum Value {
    One,
    Tropical(Vec<i64>),
    Universal(RationalFunction),
}

#[derive(Clone, Debug)]
pub struct SemifieldElement {
    kind: Arc<SemifieldKind>,
    value: Value,
}

fn same_kind(a: &Arc<SemifieldKind>, b: &Arc<SemifieldKind>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SemifieldMismatch)
    }
}

impl SemifieldElement {
    pub fn one(kind: &Arc<SemifieldKind>) -> Self {
        let value = match kind.flavor {
            Flavor::Trivial => Value::One,
            Flavor::Tropical => Value::Tropical(vec![0; kind.generators.len()]),
            Flavor::Universal => Value::Universal(RationalFunction::one(kind.nvars)),
        };
        SemifieldElement {
            kind: kind.clone(),
            value,
        }
    }

    /// The `i`-th generator.
    pub fn generator(kind: &Arc<SemifieldKind>, i: usize) -> Result<Self> {
        if i >= kind.generators.len() {
            return Err(Error::IndexOutOfRange(i + 1));
        }
        Self::monomial(kind, &unit_vector(kind.generators.len(), i))
    }

    /// Product of generators with the given exponents.
    pub fn monomial(kind: &Arc<SemifieldKind>, exps: &[i64]) -> Result<Self> {
        if exps.len() != kind.generators.len() {
            return Err(Error::VariableTableMismatch("exponent vector length".into()));
        }
        let value = match kind.flavor {
            Flavor::Trivial => Value::One,
            Flavor::Tropical => Value::Tropical(exps.to_vec()),
            Flavor::Universal => {
                let mut e = vec![0i32; kind.nvars];
                for (&v, &x) in kind.vars.iter().zip(exps) {
                    e[v] = i32::try_from(x).map_err(|_| Error::BoundExceeded("exponent".into()))?;
                }
                Value::Universal(RationalFunction::monomial(kind.nvars, &Monomial::from_exps(e)))
            }
        };
        Ok(SemifieldElement {
            kind: kind.clone(),
            value,
        })
    }

    /// Universal element from a rational function in the generators; it
    /// must be nonzero and subtraction-free.
    pub fn universal(kind: &Arc<SemifieldKind>, f: RationalFunction) -> Result<Self> {
        if kind.flavor != Flavor::Universal {
            return Err(Error::SemifieldMismatch);
        }
        let used = f.used_vars();
        if used
            .iter()
            .enumerate()
            .any(|(v, &u)| u && !kind.vars.contains(&v))
        {
            return Err(Error::VariableTableMismatch("non-generator variable".into()));
        }
        if !f.is_subtraction_free() {
            return Err(Error::NotInNp);
        }
        Ok(SemifieldElement {
            kind: kind.clone(),
            value: Value::Universal(f),
        })
    }

    /// Universal element without the subtraction-free check; for values
    /// produced by semifield operations.
    pub(crate) fn universal_unchecked(kind: &Arc<SemifieldKind>, f: RationalFunction) -> Self {
        SemifieldElement {
            kind: kind.clone(),
            value: Value::Universal(f),
        }
    }

    pub fn kind(&self) -> &Arc<SemifieldKind> {
        &self.kind
    }

    pub fn tropical_exponents(&self) -> Option<&[i64]> {
        match &self.value {
            Value::Tropical(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&RationalFunction> {
        match &self.value {
            Value::Universal(f) => Some(f),
            _ => None,
        }
    }

    /// `self ⊕ other`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        same_kind(&self.kind, &other.kind)?;
        let value = match (&self.value, &other.value) {
            (Value::One, Value::One) => Value::One,
            (Value::Tropical(a), Value::Tropical(b)) => {
                Value::Tropical(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect())
            }
            (Value::Universal(a), Value::Universal(b)) => Value::Universal(a.add(b)),
            _ => return Err(Error::SemifieldMismatch),
        };
        Ok(SemifieldElement {
            kind: self.kind.clone(),
            value,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_kind(&self.kind, &other.kind)?;
        let value = match (&self.value, &other.value) {
            (Value::One, Value::One) => Value::One,
            (Value::Tropical(a), Value::Tropical(b)) => {
                Value::Tropical(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Value::Universal(a), Value::Universal(b)) => Value::Universal(a.mul(b)),
            _ => return Err(Error::SemifieldMismatch),
        };
        Ok(SemifieldElement {
            kind: self.kind.clone(),
            value,
        })
    }

    pub fn inv(&self) -> Self {
        let value = match &self.value {
            Value::One => Value::One,
            Value::Tropical(a) => Value::Tropical(a.iter().map(|x| -x).collect()),
            Value::Universal(f) => Value::Universal(f.inv().expect("semifield elements are nonzero")),
        };
        SemifieldElement {
            kind: self.kind.clone(),
            value,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let value = match &self.value {
            Value::One => Value::One,
            Value::Tropical(a) => Value::Tropical(a.iter().map(|x| x * k).collect()),
            Value::Universal(f) => Value::Universal(
                f.pow(i32::try_from(k).expect("exponent overflow"))
                    .expect("semifield elements are nonzero"),
            ),
        };
        SemifieldElement {
            kind: self.kind.clone(),
            value,
        }
    }

    /// `a` copies of `self` under ⊕, for `a >= 1`.
    pub fn multiple(&self, a: &BigInt) -> Self {
        debug_assert!(a.is_positive());
        match &self.value {
            Value::Universal(f) => SemifieldElement {
                kind: self.kind.clone(),
                value: Value::Universal(f.mul(&RationalFunction::constant(
                    self.kind.nvars,
                    BigRational::from_integer(a.clone()),
                ))),
            },
            _ => self.clone(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::One => true,
            Value::Tropical(a) => a.iter().all(|&x| x == 0),
            Value::Universal(f) => f.equals(&RationalFunction::one(self.kind.nvars)),
        }
    }

    /// Semifield equality (exact; universal values compare as functions).
    pub fn equals(&self, other: &Self) -> bool {
        if same_kind(&self.kind, &other.kind).is_err() {
            return false;
        }
        match (&self.value, &other.value) {
            (Value::One, Value::One) => true,
            (Value::Tropical(a), Value::Tropical(b)) => a == b,
            (Value::Universal(a), Value::Universal(b)) => a.equals(b),
            _ => false,
        }
    }

    /// Image in the ambient rational-function field: a Laurent monomial for
    /// tropical values, the function itself for universal ones, 1 for
    /// the trivial semifield.
    pub fn to_ring_value(&self) -> RationalFunction {
        let n = self.kind.nvars;
        match &self.value {
            Value::One => RationalFunction::one(n),
            Value::Tropical(a) => {
                let mut e = vec![0i32; n];
                for (&v, &x) in self.kind.vars.iter().zip(a) {
                    e[v] = i32::try_from(x).expect("exponent overflow");
                }
                RationalFunction::monomial(n, &Monomial::from_exps(e))
            }
            Value::Universal(f) => f.clone(),
        }
    }

    /// Moves a value into another kind over the same ambient table whose
    /// generators include this kind's generators.
    pub fn embed(&self, target: &Arc<SemifieldKind>) -> Result<Self> {
        if target.nvars != self.kind.nvars {
            return Err(Error::VariableTableMismatch("ambient table".into()));
        }
        match (target.flavor, &self.value) {
            (Flavor::Trivial, _) => Ok(Self::one(target)),
            (Flavor::Universal, Value::Universal(_) | Value::Tropical(_) | Value::One) => {
                for v in &self.kind.vars {
                    if !target.vars.contains(v) {
                        return Err(Error::VariableTableMismatch("embedding generators".into()));
                    }
                }
                Ok(Self::universal_unchecked(target, self.to_ring_value()))
            }
            (Flavor::Tropical, Value::Tropical(a)) => {
                let mut e = vec![0i64; target.generators.len()];
                for (&v, &x) in self.kind.vars.iter().zip(a) {
                    let j = target
                        .vars
                        .iter()
                        .position(|&w| w == v)
                        .ok_or_else(|| Error::VariableTableMismatch("embedding generators".into()))?;
                    e[j] = x;
                }
                Self::monomial(target, &e)
            }
            _ => Err(Error::SemifieldMismatch),
        }
    }

    pub fn render(&self, table: &VariableTable) -> String {
        match &self.value {
            Value::One => "1".to_string(),
            _ => self.to_ring_value().render(table),
        }
    }
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Tropical value of a subtraction-free function in the ambient table:
/// componentwise minimum exponents of the numerator minus those of the
/// denominator, read off at the generators of `kind`.
pub fn tropicalize(f: &RationalFunction, kind: &Arc<SemifieldKind>) -> Result<SemifieldElement> {
    if f.is_zero() || !f.is_subtraction_free() {
        return Err(Error::NotInNp);
    }
    let mut e: Vec<i64> = f.mono().iter().map(|&x| x as i64).collect();
    for (fac, k) in f.factors() {
        for (t, m) in e.iter_mut().zip(fac.poly().min_degrees()) {
            *t += m as i64 * *k as i64;
        }
    }
    let used: Vec<bool> = {
        let mut u = vec![false; kind.nvars];
        for &v in &kind.vars {
            u[v] = true;
        }
        u
    };
    if e.iter().enumerate().any(|(v, &x)| x != 0 && !used[v]) {
        return Err(Error::VariableTableMismatch("non-generator variable".into()));
    }
    let exps: Vec<i64> = kind.vars.iter().map(|&v| e[v]).collect();
    SemifieldElement::monomial(kind, &exps)
}

/// Semifield-level substitution homomorphism: the field-level map on the
/// universal value, landing in `base` (projected when `base` is tropical).
pub fn psi(e: &SemifieldElement, sym: &ElementarySymbols, base: &Arc<SemifieldKind>) -> Result<SemifieldElement> {
    let Value::Universal(f) = &e.value else {
        return Err(Error::SemifieldMismatch);
    };
    let img = psi_hat(f, sym)?;
    match base.flavor {
        Flavor::Trivial => Ok(SemifieldElement::one(base)),
        Flavor::Tropical => tropicalize(&img, base).map_err(|_| Error::NotInPsiDomain),
        Flavor::Universal => {
            let used = img.used_vars();
            if used
                .iter()
                .enumerate()
                .any(|(v, &u)| u && !base.vars.contains(&v))
            {
                return Err(Error::NotInPsiDomain);
            }
            Ok(SemifieldElement::universal_unchecked(base, img))
        }
    }
}

/// Value of an integer polynomial with nonnegative coefficients at
/// semifield arguments (variable `v` ↦ `values[v]`).
pub fn eval_subtraction_free(p: &LaurentPolynomial, values: &[SemifieldElement], kind: &Arc<SemifieldKind>) -> Result<SemifieldElement> {
    if p.is_zero() || !p.has_nonnegative_coefficients() {
        return Err(Error::NotInNp);
    }
    match kind.flavor {
        Flavor::Trivial => Ok(SemifieldElement::one(kind)),
        Flavor::Tropical => {
            let mut acc: Option<SemifieldElement> = None;
            for (m, _) in p.terms() {
                let mut t = SemifieldElement::one(kind);
                for (v, &k) in m.exps().iter().enumerate() {
                    if k != 0 {
                        t = t.mul(&values[v].pow(k as i64))?;
                    }
                }
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t)?,
                });
            }
            Ok(acc.unwrap())
        }
        Flavor::Universal => {
            let images: Vec<RationalFunction> = values.iter().map(|x| x.to_ring_value()).collect();
            let f = substitute_poly(p, &images)?;
            Ok(SemifieldElement::universal_unchecked(kind, f))
        }
    }
}

/// Formal integer combination of semifield elements.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    kind: Arc<SemifieldKind>,
    terms: Vec<(BigInt, SemifieldElement)>,
}

impl GroupRingElement {
    pub fn new(kind: &Arc<SemifieldKind>, terms: Vec<(BigInt, SemifieldElement)>) -> Result<Self> {
        let mut out: Vec<(BigInt, SemifieldElement)> = Vec::new();
        for (a, p) in terms {
            same_kind(kind, &p.kind)?;
            match out.iter_mut().find(|(_, q)| q.equals(&p)) {
                Some((b, _)) => *b += a,
                None => out.push((a, p)),
            }
        }
        out.retain(|(a, _)| !a.is_zero());
        Ok(GroupRingElement {
            kind: kind.clone(),
            terms: out,
        })
    }

    pub fn zero(kind: &Arc<SemifieldKind>) -> Self {
        GroupRingElement {
            kind: kind.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(kind: &Arc<SemifieldKind>) -> Self {
        Self::from_element(SemifieldElement::one(kind))
    }

    pub fn from_element(p: SemifieldElement) -> Self {
        GroupRingElement {
            kind: p.kind.clone(),
            terms: vec![(BigInt::one(), p)],
        }
    }

    pub fn terms(&self) -> &[(BigInt, SemifieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_np(&self) -> bool {
        self.terms.iter().all(|(a, _)| a.is_positive())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_kind(&self.kind, &other.kind)?;
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Self::new(&self.kind, t)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_kind(&self.kind, &other.kind)?;
        let mut t = Vec::new();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                t.push((a * b, p.mul(q)?));
            }
        }
        Self::new(&self.kind, t)
    }

    /// Projection onto the semifield: `⊕_j a_j ⊕ p_j`; `None` is the
    /// zero marker for the empty sum.
    pub fn project_np(&self) -> Result<Option<SemifieldElement>> {
        if !self.is_np() {
            return Err(Error::NotInNp);
        }
        let mut acc: Option<SemifieldElement> = None;
        for (a, p) in &self.terms {
            let t = p.multiple(a);
            acc = Some(match acc {
                None => t,
                Some(s) => s.add(&t)?,
            });
        }
        Ok(acc)
    }

    /// Image in the ambient field (sum of the ring values of the terms).
    pub fn evaluate(&self) -> RationalFunction {
        let n = self.kind.nvars;
        let mut acc = RationalFunction::zero(n);
        for (a, p) in &self.terms {
            let c = RationalFunction::constant(n, BigRational::from_integer(a.clone()));
            acc = acc.add(&c.mul(&p.to_ring_value()));
        }
        acc
    }

    /// Equality of formal combinations (order-insensitive).
    pub fn equals(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(a, p)| {
                other
                    .terms
                    .iter()
                    .any(|(b, q)| a == b && p.equals(q))
            })
    }

    pub fn render(&self, table: &VariableTable) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(a, p)| {
                if a.is_one() {
                    format!("[{}]", p.render(table))
                } else {
                    format!("{a}*[{}]", p.render(table))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `Z(u) = sum_l ẑ_l u^l` with NP coefficients and `ẑ_0 = ẑ_r = 1`.
#[derive(Clone, Debug)]
pub struct ExchangePolynomial {
    coeffs: Vec<GroupRingElement>,
}

impl ExchangePolynomial {
    pub fn new(coeffs: Vec<GroupRingElement>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::MalformedExchangePolynomial("degree must be at least 1".into()));
        }
        if !coeffs[0].is_one() || !coeffs[coeffs.len() - 1].is_one() {
            return Err(Error::NonMonicExchangePolynomial);
        }
        if let Some(l) = coeffs.iter().position(|c| !c.is_np()) {
            return Err(Error::MalformedExchangePolynomial(format!(
                "coefficient {l} is not in NP"
            )));
        }
        Ok(ExchangePolynomial { coeffs })
    }

    /// `1 + u`.
    pub fn binomial(kind: &Arc<SemifieldKind>) -> Self {
        ExchangePolynomial {
            coeffs: vec![GroupRingElement::one(kind), GroupRingElement::one(kind)],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GroupRingElement] {
        &self.coeffs
    }

    pub fn kind(&self) -> &Arc<SemifieldKind> {
        &self.coeffs[0].kind
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.equals(b))
    }

    /// `u^r Z(1/u)`.
    pub fn reciprocal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        ExchangePolynomial { coeffs: c }
    }

    /// Specialization `⊕_l π(ẑ_l) y^l`, zero coefficients skipped.
    pub fn specialize(&self, y: &SemifieldElement) -> Result<SemifieldElement> {
        same_kind(self.kind(), y.kind())?;
        let mut acc: Option<SemifieldElement> = None;
        let mut power = SemifieldElement::one(y.kind());
        for (l, z) in self.coeffs.iter().enumerate() {
            if l > 0 {
                power = power.mul(y)?;
            }
            if let Some(p) = z.project_np()? {
                let t = p.mul(&power)?;
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t)?,
                });
            }
        }
        Ok(acc.expect("constant term is 1"))
    }

    /// `Z(u)` evaluated at a field element, coefficients taken through
    /// [`GroupRingElement::evaluate`].
    pub fn evaluate(&self, u: &RationalFunction) -> RationalFunction {
        let n = u.nvars();
        let mut acc = RationalFunction::zero(n);
        let mut power = RationalFunction::one(n);
        for (l, z) in self.coeffs.iter().enumerate() {
            if l > 0 {
                power = power.mul(u);
            }
            if !z.is_zero() {
                acc = acc.add(&z.evaluate().mul(&power));
            }
        }
        acc
    }

    /// Values `π(ẑ_l)` for `0 < l < r` as ring values, zero for a zero
    /// coefficient.
    pub fn inner_values(&self) -> Result<Vec<RationalFunction>> {
        let n = self.kind().nvars;
        self.coeffs[1..self.coeffs.len() - 1]
            .iter()
            .map(|z| {
                Ok(match z.project_np()? {
                    Some(p) => p.to_ring_value(),
                    None => RationalFunction::zero(n),
                })
            })
            .collect()
    }

    pub fn render(&self, table: &VariableTable) -> String {
        let mut parts = Vec::new();
        for (l, z) in self.coeffs.iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            let c = if z.is_one() { String::new() } else { z.render(table) };
            let u = match l {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{l}"),
            };
            parts.push(match (c.is_empty(), u.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => u,
                (false, true) => c,
                (false, false) => format!("{c}*{u}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Trivial => "trivial",
            Flavor::Tropical => "tropical",
            Flavor::Universal => "universal",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::VarRole;

    fn table(names: &[&str]) -> VariableTable {
        let mut t = VariableTable::new();
        for n in names {
            t.push(*n, VarRole::Coefficient).unwrap();
        }
        t
    }

    fn kind(flavor: Flavor, names: &[&str]) -> Arc<SemifieldKind> {
        let t = table(names);
        let gens: Vec<String> = if flavor == Flavor::Trivial {
            Vec::new()
        } else {
            names.iter().map(|s| s.to_string()).collect()
        };
        SemifieldKind::over_table(flavor, &gens, &t).unwrap()
    }

    #[test]
    fn tropical_addition_takes_minimum() {
        let k = kind(Flavor::Tropical, &["u"]);
        let a = SemifieldElement::monomial(&k, &[2]).unwrap();
        let b = SemifieldElement::monomial(&k, &[-1]).unwrap();
        assert_eq!(a.add(&b).unwrap().tropical_exponents(), Some(&[-1i64][..]));
        let c = SemifieldElement::monomial(&k, &[3]).unwrap();
        assert_eq!(c.mul(&b).unwrap().tropical_exponents(), Some(&[2i64][..]));
    }

    #[test]
    fn trivial_semifield() {
        let k = kind(Flavor::Trivial, &[]);
        let one = SemifieldElement::one(&k);
        assert!(one.add(&one).unwrap().is_one());
        assert!(one.mul(&one).unwrap().is_one());
    }

    #[test]
    fn universal_group_law() {
        let k = kind(Flavor::Universal, &["y", "z"]);
        let y = SemifieldElement::generator(&k, 0).unwrap();
        let z = SemifieldElement::generator(&k, 1).unwrap();
        let one = SemifieldElement::one(&k);
        let a = one.add(&z.mul(&y).unwrap()).unwrap();
        assert!(a.mul(&a.inv()).unwrap().is_one());
    }

    #[test]
    fn mismatched_kinds() {
        let a = SemifieldElement::one(&kind(Flavor::Tropical, &["u"]));
        let b = SemifieldElement::one(&kind(Flavor::Universal, &["u"]));
        assert_eq!(a.add(&b).unwrap_err(), Error::SemifieldMismatch);
    }

    #[test]
    fn projection_of_group_ring_elements() {
        let k = kind(Flavor::Tropical, &["u"]);
        let u = SemifieldElement::generator(&k, 0).unwrap();
        let e = GroupRingElement::new(&k, vec![(BigInt::from(2), u.clone())]).unwrap();
        assert!(e.project_np().unwrap().unwrap().equals(&u));
        assert!(GroupRingElement::zero(&k).project_np().unwrap().is_none());
        let bad = GroupRingElement::new(&k, vec![(BigInt::from(-1), u)]).unwrap();
        assert_eq!(bad.project_np().unwrap_err(), Error::NotInNp);
    }

    #[test]
    fn specialization_in_tropical_takes_min_exponent() {
        // 1 + u + u^2 at y = u: min over exponents {0, 1, 2} is 0.
        let k = kind(Flavor::Tropical, &["u"]);
        let one = GroupRingElement::one(&k);
        let z = ExchangePolynomial::new(vec![one.clone(), one.clone(), one]).unwrap();
        let u = SemifieldElement::generator(&k, 0).unwrap();
        assert!(z.specialize(&u).unwrap().is_one());
    }

    #[test]
    fn malformed_exchange_polynomials() {
        let k = kind(Flavor::Universal, &["y"]);
        let y = SemifieldElement::generator(&k, 0).unwrap();
        let one = GroupRingElement::one(&k);
        let gy = GroupRingElement::from_element(y);
        assert_eq!(
            ExchangePolynomial::new(vec![gy, one.clone()]).unwrap_err(),
            Error::NonMonicExchangePolynomial
        );
        assert!(matches!(
            ExchangePolynomial::new(vec![one]).unwrap_err(),
            Error::MalformedExchangePolynomial(_)
        ));
    }
}
