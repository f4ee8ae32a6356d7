//! Exact polynomials in the ambient coordinates `x1..xm`, a small text format for them,
//! and Weyl-invariance checks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{Family, RootSystem};
use crate::rational::{dot, format_rational, inverse, mat_mul, qi, transpose, QMat, Q};
use crate::real::Real;
use crate::series::SuperSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, *c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Lowest total degree of a monomial (0 for the zero polynomial).
    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).min().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), *c);
        }
        p
    }

    pub fn scale(&self, c: Q) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                p.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut p = Self::constant(self.nvars, Q::one());
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                p.add_term(f, c * qi(e[i] as i64));
            }
        }
        p
    }

    /// `x -> p(M x)`.
    pub fn substitute_linear(&self, m: &QMat) -> Self {
        let forms: Vec<Polynomial> = m.iter().map(|row| Polynomial::linear(row)).collect();
        let maxdeg = self.degree() as usize;
        let powers: Vec<Vec<Polynomial>> = forms
            .iter()
            .map(|f| {
                let mut v = vec![Polynomial::constant(self.nvars, Q::one())];
                for k in 1..=maxdeg {
                    let next = v[k - 1].mul(f);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(self.nvars, *c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            p = p.add(&t);
        }
        p
    }

    pub fn eval_q(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |s, (e, c)| {
            s + e.iter().zip(x).fold(*c, |t, (&k, xi)| {
                let mut t = t;
                for _ in 0..k {
                    t *= xi;
                }
                t
            })
        })
    }

    pub fn eval_real<T: Real>(&self, x: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |s, (e, c)| {
            s + e.iter().zip(x).fold(T::from_ratio(c), |t, (&k, xi)| t * xi.powi(k as i32))
        })
    }

    /// Evaluates at a point whose coordinates are series.
    pub fn eval_series<T: Real>(&self, x: &[SuperSeries<T>]) -> SuperSeries<T> {
        let table = x[0].table().clone();
        let maxdeg = self.degree() as usize;
        let mut powers: Vec<Vec<SuperSeries<T>>> = Vec::with_capacity(self.nvars);
        for xi in x {
            let used = self.terms.keys().map(|e| e[powers.len()]).max().unwrap_or(0) as usize;
            let mut v = vec![SuperSeries::real(&table, T::one())];
            for k in 1..=used.min(maxdeg) {
                let next = &v[k - 1] * xi;
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc = SuperSeries::zero(&table);
        for (e, c) in &self.terms {
            let mut t = SuperSeries::real(&table, T::from_ratio(c));
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut parts = Vec::new();
            let neg = *c < Q::zero();
            let mag = if neg { -c } else { *c };
            let is_const = e.iter().all(|&k| k == 0);
            if mag != Q::one() || is_const {
                parts.push(format_rational(&mag));
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => parts.push(format!("x{}", i + 1)),
                    _ => parts.push(format!("x{}^{}", i + 1, k)),
                }
            }
            let body = parts.join("*");
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Context for parsing: number of ambient variables and the named invariants.
#[derive(Clone, Debug)]
pub struct PolyContext {
    pub nvars: usize,
    pub family: Family,
    pub metric: Q,
}

impl PolyContext {
    pub fn of(rs: &RootSystem) -> Self {
        PolyContext { nvars: rs.ambient_dim(), family: rs.cartan_type.family, metric: rs.metric }
    }

    /// `B(x, x) / 2`.
    pub fn casimir(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for i in 0..self.nvars {
            let mut e = vec![0; self.nvars];
            e[i] = 2;
            p.add_term(e, self.metric / qi(2));
        }
        p
    }

    /// `sum_i x_i^k`; on t this is the k-th power sum of the eigenvalues in the
    /// defining representation of SU(n+1).
    pub fn power_sum(&self, k: u32) -> Result<Polynomial> {
        if self.family != Family::A {
            return Err(Error::InvalidPolynomial("power_sum is only defined for type A".into()));
        }
        let mut p = Polynomial::zero(self.nvars);
        for i in 0..self.nvars {
            let mut e = vec![0; self.nvars];
            e[i] = k;
            p.add_term(e, Q::one());
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a PolyContext,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { input: self.src.to_string(), position: self.pos, message: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse {
            input: self.src.to_string(),
            position: start,
            message: "integer out of range".into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.scale(qi(-1)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let sign = if self.eat('-') {
            qi(-1)
        } else {
            self.eat('+');
            qi(1)
        };
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc.scale(sign))
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.integer()?;
            if k > 64 {
                return self.err("exponent too large");
            }
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.ctx.nvars;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.integer()?;
                if self.src[self.pos..].starts_with('/') || self.src[self.pos..].starts_with('.') {
                    self.pos += 1;
                    self.integer()?;
                }
                let lit = &self.src[start..self.pos];
                let v = crate::rational::parse_rational(lit).map_err(|e| match e {
                    Error::Parse { position, message, .. } => {
                        Error::Parse { input: self.src.to_string(), position: start + position, message }
                    }
                    other => other,
                })?;
                Ok(Polynomial::constant(n, v))
            }
            Some('x') => {
                self.pos += 1;
                let at = self.pos;
                let i = self.integer()? as usize;
                if i == 0 || i > n {
                    self.pos = at;
                    return self.err(&format!("variable index must be in 1..={n}"));
                }
                Ok(Polynomial::var(n, i - 1))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    "casimir" => Ok(self.ctx.casimir()),
                    "power_sum" => {
                        if !self.eat('(') {
                            return self.err("expected '(' after power_sum");
                        }
                        let k = self.integer()?;
                        if !self.eat(')') {
                            return self.err("expected ')'");
                        }
                        self.ctx.power_sum(k as u32).map_err(|e| match e {
                            Error::InvalidPolynomial(m) => {
                                Error::Parse { input: self.src.to_string(), position: start, message: m }
                            }
                            other => other,
                        })
                    }
                    _ => {
                        self.pos = start;
                        self.err("unknown identifier")
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses e.g. `"casimir + 1/3*x1^3 - x2*x3"` or `"power_sum(4)"`.
pub fn parse_polynomial(src: &str, ctx: &PolyContext) -> Result<Polynomial> {
    let mut p = Parser { src, pos: 0, ctx };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Orthogonal projection of the ambient space onto t, as a rational matrix.
pub fn projection_to_t(rs: &RootSystem) -> QMat {
    // columns: simple coroots
    let m = rs.ambient_dim();
    let e: QMat = (0..m).map(|k| (0..rs.rank).map(|i| rs.simple_coroots[i][k]).collect()).collect();
    let g = mat_mul(&transpose(&e), &e);
    mat_mul(&mat_mul(&e, &inverse(&g).expect("coroots are independent")), &transpose(&e))
}

/// Ambient matrix of the reflection in a root (given by ambient coordinates).
pub fn reflection_matrix(root: &[Q]) -> QMat {
    let n2 = dot(root, root);
    let m = root.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let id = if i == j { Q::one() } else { Q::zero() };
                    id - qi(2) * root[i] * root[j] / n2
                })
                .collect()
        })
        .collect()
}

/// Checks `p(s x) = p(x)` on t for the reflections in the given roots (ambient coordinates).
pub fn check_invariant(rs: &RootSystem, p: &Polynomial, roots: &[Vec<Q>]) -> Result<()> {
    let proj = projection_to_t(rs);
    let restricted = p.substitute_linear(&proj);
    for (k, r) in roots.iter().enumerate() {
        let moved = restricted.substitute_linear(&reflection_matrix(r));
        if moved != restricted {
            return Err(Error::NotInvariant(format!("{p} changes under reflection {k}")));
        }
    }
    Ok(())
}

/// Average of `p` over the Weyl group, a convenient source of invariants.
pub fn reynolds(rs: &RootSystem, p: &Polynomial, budget: u64) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(p.nvars);
    let mut count = 0i64;
    crate::lie::for_each_weyl_element(rs, budget, |w| {
        acc = acc.add(&p.substitute_linear(&w.ambient_matrix(rs)));
        count += 1;
    })?;
    Ok(acc.scale(Q::new(1, count)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap(), qi(1)).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let ctx = PolyContext::of(&rs("A2"));
        let p = parse_polynomial("3/2*x1^2*x2 - x3 + 1/4", &ctx).unwrap();
        assert_eq!(p.eval_q(&[qi(1), qi(2), qi(3)]), q(1, 4));
        let again = parse_polynomial(&p.to_string(), &ctx).unwrap();
        assert_eq!(p, again);
        let c = parse_polynomial("casimir", &ctx).unwrap();
        assert_eq!(c.eval_q(&[qi(1), qi(-1), qi(0)]), qi(1));
        let s = parse_polynomial("(x1 + x2)^2 - 2*x1*x2 - x1^2", &ctx).unwrap();
        assert_eq!(s, Polynomial::var(3, 1).pow(2));
    }

    #[test]
    fn parse_errors_have_positions() {
        let ctx = PolyContext::of(&rs("A1"));
        match parse_polynomial("x1 + x5", &ctx) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("1/0*x1", &ctx) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        let g = PolyContext::of(&rs("G2"));
        assert!(matches!(parse_polynomial("power_sum(3)", &g), Err(Error::Parse { .. })));
    }

    #[test]
    fn invariance() {
        let r = rs("G2");
        let ctx = PolyContext::of(&r);
        let simple = r.simple_roots.clone();
        let c = parse_polynomial("casimir^3", &ctx).unwrap();
        assert!(check_invariant(&r, &c, &simple).is_ok());
        let bad = parse_polynomial("x1^2", &ctx).unwrap();
        assert!(check_invariant(&r, &bad, &simple).is_err());
        let inv = reynolds(&r, &bad.mul(&bad).mul(&bad), 100).unwrap();
        assert!(check_invariant(&r, &inv, &simple).is_ok());
        assert!(!inv.is_zero());
    }

    #[test]
    fn zero_on_t_counts_as_invariant() {
        let r = rs("A2");
        let ctx = PolyContext::of(&r);
        let p = parse_polynomial("x1 + x2 + x3 + x1^2 + x2^2 + x3^2", &ctx).unwrap();
        assert!(check_invariant(&r, &p, &r.simple_roots).is_ok());
    }
}
