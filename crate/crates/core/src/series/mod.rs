//! Truncated power series in commuting (even) and anticommuting (odd) generators with
//! complex coefficients.

mod matrix;
mod monomial;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use matrix::SeriesMatrix;
pub use monomial::Monomial;

use crate::error::{Error, Result};
use crate::real::{cabs, cone, creal, csqrt, czero, Real, C};

pub const DEFAULT_TRUNCATION: u32 = 4;
pub const MAX_ODD: usize = 64;

/// Ordered generator names and the total-degree truncation order `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    pub even: Vec<String>,
    pub odd: Vec<String>,
    pub truncation: u32,
}

impl GeneratorTable {
    pub fn new(even: Vec<String>, odd: Vec<String>, truncation: u32) -> Result<Arc<Self>> {
        if odd.len() > MAX_ODD {
            return Err(Error::TooManyGenerators(format!("{} odd generators, at most {MAX_ODD}", odd.len())));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in even.iter().chain(&odd) {
            if n.is_empty() || n.contains(['*', '^', ' ']) || n == "1" {
                return Err(Error::InvalidSpec(format!("invalid generator name {n:?}")));
            }
            if !seen.insert(n.clone()) {
                return Err(Error::InvalidSpec(format!("duplicate generator name {n:?}")));
            }
        }
        Ok(Arc::new(GeneratorTable { even, odd, truncation }))
    }

    pub fn empty(truncation: u32) -> Arc<Self> {
        Arc::new(GeneratorTable { even: vec![], odd: vec![], truncation })
    }

    pub fn even_index(&self, name: &str) -> Option<usize> {
        self.even.iter().position(|n| n == name)
    }

    pub fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|n| n == name)
    }

    /// Parses a canonical key such as `delta1^2*eps1_1(1)*eps1_1(2)`. Odd factors may be
    /// listed in any order; the returned sign reorders them canonically.
    pub fn parse_key(&self, key: &str) -> Result<(Monomial, i64)> {
        let mut m = Monomial::one(self.even.len());
        let mut sign = 1i64;
        if key.trim() == "1" {
            return Ok((m, 1));
        }
        for tok in key.split('*') {
            let tok = tok.trim();
            let (name, pow) = match tok.rsplit_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().map_err(|_| Error::UnknownGenerator(tok.to_string()))?),
                None => (tok, 1),
            };
            if let Some(i) = self.even_index(name) {
                m.even[i] += pow as u16;
            } else if let Some(j) = self.odd_index(name) {
                if pow != 1 || m.odd & (1u64 << j) != 0 {
                    return Ok((m, 0));
                }
                // moving generator j to its canonical slot passes the set bits above it
                if (m.odd >> (j + 1)).count_ones() % 2 == 1 {
                    sign = -sign;
                }
                m.odd |= 1u64 << j;
            } else {
                return Err(Error::UnknownGenerator(name.to_string()));
            }
        }
        Ok((m, sign))
    }

    pub fn format_key(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.even.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.even[i].clone()),
                _ => parts.push(format!("{}^{}", self.even[i], e)),
            }
        }
        for j in 0..self.odd.len() {
            if m.odd & (1u64 << j) != 0 {
                parts.push(self.odd[j].clone());
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone)]
pub struct SuperSeries<T: Real> {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, C<T>>,
}

impl<T: Real> fmt::Debug for SuperSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, v) in &self.terms {
            m.entry(&self.table.format_key(k), v);
        }
        m.finish()
    }
}

impl<T: Real> SuperSeries<T> {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        SuperSeries { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: C<T>) -> Self {
        let mut s = Self::zero(table);
        s.add_term(Monomial::one(table.even.len()), c);
        s
    }

    pub fn real(table: &Arc<GeneratorTable>, x: T) -> Self {
        Self::constant(table, creal(x))
    }

    pub fn generator(table: &Arc<GeneratorTable>, name: &str) -> Result<Self> {
        let (m, _) = table.parse_key(name)?;
        let mut s = Self::zero(table);
        s.add_term(m, cone());
        Ok(s)
    }

    pub fn from_terms(table: &Arc<GeneratorTable>, terms: impl IntoIterator<Item = (Monomial, C<T>)>) -> Self {
        let mut s = Self::zero(table);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn truncation(&self) -> u32 {
        self.table.truncation
    }

    /// Adds `c * m`, dropping monomials above the truncation order.
    pub fn add_term(&mut self, m: Monomial, c: C<T>) {
        if m.degree() > self.table.truncation {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(czero);
        *e = *e + c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C<T> {
        self.terms.get(&Monomial::one(self.table.even.len())).copied().unwrap_or_else(czero)
    }

    pub fn coeff(&self, m: &Monomial) -> C<T> {
        self.terms.get(m).copied().unwrap_or_else(czero)
    }

    /// Coefficient of a monomial given by its key; fails for keys above the truncation.
    pub fn coefficient(&self, key: &str) -> Result<C<T>> {
        let (m, sign) = self.table.parse_key(key)?;
        if m.degree() > self.table.truncation {
            return Err(Error::InvalidSpec(format!("monomial {key} exceeds truncation order")));
        }
        let c = self.coeff(&m);
        Ok(c * creal(T::from_i64(sign)))
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut s = self.clone();
        for (m, c) in &other.terms {
            s.add_term(m.clone(), *c);
        }
        Ok(s)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut s = Self::zero(&self.table);
        let d = self.table.truncation;
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if da + mb.degree() > d {
                    continue;
                }
                if let Some((m, sign)) = ma.mul(mb) {
                    let c = *ca * *cb;
                    s.add_term(m, if sign < 0 { -c } else { c });
                }
            }
        }
        s
    }

    pub fn scale(&self, c: C<T>) -> Self {
        SuperSeries { table: self.table.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), *v * c)).collect() }
    }

    pub fn scale_real(&self, x: T) -> Self {
        self.scale(creal(x))
    }

    pub fn add_constant(&self, c: C<T>) -> Self {
        let mut s = self.clone();
        s.add_term(Monomial::one(self.table.even.len()), c);
        s
    }

    fn without_constant(&self) -> Self {
        let one = Monomial::one(self.table.even.len());
        SuperSeries {
            table: self.table.clone(),
            terms: self.terms.iter().filter(|(m, _)| **m != one).map(|(m, c)| (m.clone(), *c)).collect(),
        }
    }

    /// `sum_n coeffs[n] x^n` for `x` without constant term (so `x^n = 0` for `n > D`).
    fn compose_nilpotent(x: &Self, coeffs: impl Fn(u32) -> C<T>) -> Self {
        let d = x.table.truncation;
        let mut out = Self::constant(&x.table, coeffs(0));
        let mut pow = Self::constant(&x.table, cone());
        for n in 1..=d {
            pow = pow.mul_unchecked(x);
            if pow.is_empty() {
                break;
            }
            out = &out + &pow.scale(coeffs(n));
        }
        out
    }

    /// `exp(a)` for `a` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if self.constant_term() != czero() {
            return Err(Error::ConstantTerm("zero constant term for exp".into()));
        }
        let mut fact = vec![T::one()];
        for n in 1..=self.table.truncation {
            let prev = fact[n as usize - 1];
            fact.push(prev * T::from_i64(n as i64));
        }
        Ok(Self::compose_nilpotent(self, |n| creal(T::one() / fact[n as usize])))
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if cabs(c0) == T::zero() {
            return Err(Error::ConstantTerm("nonzero constant term to invert".into()));
        }
        let inv0 = cone::<T>() / c0;
        let x = self.without_constant().scale(inv0);
        Ok(Self::compose_nilpotent(&x, |n| if n % 2 == 0 { inv0 } else { -inv0 }))
    }

    /// Principal square root: principal root of the constant term, then the binomial series.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if cabs(c0) == T::zero() {
            return Err(Error::ConstantTerm("nonzero constant term for sqrt".into()));
        }
        let r0 = csqrt(c0);
        let x = self.without_constant().scale(cone::<T>() / c0);
        // binom(1/2, n)
        let mut b = vec![T::one()];
        let half = T::one() / T::from_i64(2);
        for n in 1..=self.table.truncation as i64 {
            let prev = b[n as usize - 1];
            b.push(prev * (half - T::from_i64(n - 1)) / T::from_i64(n));
        }
        Ok(Self::compose_nilpotent(&x, |n| r0 * creal(b[n as usize])))
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::constant(&self.table, cone());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        Ok(acc)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Evaluates the even generators at the given values. Fails if odd terms are present.
    pub fn evaluate(&self, values: &[C<T>]) -> Result<C<T>> {
        if values.len() != self.table.even.len() {
            return Err(Error::Dimension(format!("{} even values expected", self.table.even.len())));
        }
        let mut s = czero::<T>();
        for (m, c) in &self.terms {
            if m.odd != 0 {
                return Err(Error::InvalidSpec("cannot evaluate a series with odd terms".into()));
            }
            let mut t = *c;
            for (e, v) in m.even.iter().zip(values) {
                for _ in 0..*e {
                    t = t * *v;
                }
            }
            s = s + t;
        }
        Ok(s)
    }

    pub fn map<U: Real>(&self, f: impl Fn(C<T>) -> C<U>) -> SuperSeries<U> {
        SuperSeries { table: self.table.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), f(*c))).collect() }
    }

    pub fn max_abs(&self) -> T {
        self.terms.values().fold(T::zero(), |a, c| a.max(cabs(*c)))
    }

    /// Largest coefficientwise distance to another series over the same table.
    pub fn max_diff(&self, other: &Self) -> T {
        let d = self - other;
        d.max_abs()
    }

    /// Whether every monomial has an even number of odd generators.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.odd.count_ones() % 2 == 0)
    }

    /// Coefficients keyed by canonical monomial strings, in canonical order.
    pub fn to_keyed(&self) -> Vec<(String, C<T>)> {
        self.terms.iter().map(|(m, c)| (self.table.format_key(m), *c)).collect()
    }
}

impl<'a, T: Real> Add for &'a SuperSeries<T> {
    type Output = SuperSeries<T>;
    fn add(self, o: Self) -> SuperSeries<T> {
        self.try_add(o).expect("generator tables differ")
    }
}

impl<'a, T: Real> Sub for &'a SuperSeries<T> {
    type Output = SuperSeries<T>;
    fn sub(self, o: Self) -> SuperSeries<T> {
        self.try_add(&-o).expect("generator tables differ")
    }
}

impl<'a, T: Real> Neg for &'a SuperSeries<T> {
    type Output = SuperSeries<T>;
    fn neg(self) -> SuperSeries<T> {
        self.scale(-cone::<T>())
    }
}

impl<'a, T: Real> Mul for &'a SuperSeries<T> {
    type Output = SuperSeries<T>;
    fn mul(self, o: Self) -> SuperSeries<T> {
        self.try_mul(o).expect("generator tables differ")
    }
}
