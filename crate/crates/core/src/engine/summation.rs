use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::weights::{dominant_weights_in_ball, f64_of, lambda_plus_rho};
use crate::real::{creal, CompensatedSum, Real, C};
use crate::series::{GeneratorTable, Monomial, SuperSeries};

use super::{Evaluator, PairingSpec, SummationMode};

/// Nested radii `R, R/2, ..., R/2^(LEVELS-1)` used for Richardson extrapolation.
const LEVELS: usize = 5;
const MIN_LEVEL_TERMS: usize = 4;
/// Weights with `eps |lambda + rho|^2 > CUTOFF` are dropped from the regulated sums.
const CUTOFF: f64 = 50.0;
/// Factor applied to the geometric shell extrapolation of the tail.
const TAIL_SAFETY: f64 = 2.0;

#[derive(Clone, Copy, Debug)]
pub struct SumOptions {
    pub threads: usize,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegulatorStep {
    pub epsilon: f64,
    pub radius: f64,
    pub terms: u64,
    pub coefficients: Vec<(String, C<f64>)>,
}

/// Polynomial extrapolation to zero in `variable` over the given nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Extrapolation {
    pub variable: &'static str,
    pub nodes: Vec<f64>,
    pub terms: Vec<u64>,
    /// Largest coefficientwise difference between the two highest orders.
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub mode: SummationMode,
    pub precision: &'static str,
    pub truncation: u32,
    pub radius: f64,
    pub tolerance: f64,
    pub converged: bool,
    /// Ratio of the last two dyadic shell sums of `|term|`.
    pub shell_ratio: Option<f64>,
    /// Tail estimate of plain truncation.
    pub raw_tail: Option<f64>,
    /// Radius of the extra shells evaluated when the ball itself was too small.
    pub probe_radius: Option<f64>,
    pub extrapolation: Option<Extrapolation>,
    /// Whether the extrapolated value replaced the truncated sum.
    pub accelerated: bool,
    /// Bound on accumulated rounding, included in the tail bound.
    pub rounding: f64,
    pub dim_moduli: i64,
    pub center_order: u64,
}

#[derive(Clone, Debug)]
pub struct PairingResult {
    pub coefficients: Vec<(String, C<f64>)>,
    pub terms_summed: u64,
    pub tail_bound: f64,
    pub regulator_trace: Vec<RegulatorStep>,
    pub diagnostics: Diagnostics,
    pub wallclock: Duration,
}

impl PairingResult {
    pub fn coefficient(&self, key: &str) -> Option<C<f64>> {
        self.coefficients.iter().find(|(k, _)| k == key).map(|(_, c)| *c)
    }

    /// Largest coefficientwise difference to another result; keys missing on one side count
    /// with their full size.
    pub fn max_diff(&self, other: &PairingResult) -> f64 {
        let a: BTreeMap<&str, C<f64>> = self.coefficients.iter().map(|(k, c)| (k.as_str(), *c)).collect();
        let b: BTreeMap<&str, C<f64>> = other.coefficients.iter().map(|(k, c)| (k.as_str(), *c)).collect();
        let zero = C::new(0.0, 0.0);
        a.keys()
            .chain(b.keys())
            .map(|k| (a.get(k).copied().unwrap_or(zero) - b.get(k).copied().unwrap_or(zero)).norm())
            .fold(0.0, f64::max)
    }
}

struct Accumulator<T: Real> {
    sums: BTreeMap<Monomial, CompensatedSum<T>>,
}

impl<T: Real> Accumulator<T> {
    fn new() -> Self {
        Accumulator { sums: BTreeMap::new() }
    }

    fn add(&mut self, s: &SuperSeries<T>, w: Option<T>) {
        for (m, c) in s.terms() {
            let v = match w {
                Some(w) => *c * creal(w),
                None => *c,
            };
            self.sums.entry(m.clone()).or_default().add(v);
        }
    }

    fn value(&self, table: &Arc<GeneratorTable>) -> SuperSeries<T> {
        let mut s = SuperSeries::from_terms(table, self.sums.iter().map(|(m, c)| (m.clone(), c.value())));
        s.add_term(Monomial::one(table.even.len()), crate::real::czero());
        s
    }
}

fn keyed_f64<T: Real>(s: &SuperSeries<T>) -> Vec<(String, C<f64>)> {
    s.to_keyed().into_iter().map(|(k, c)| (k, C::new(c.re.to_f64(), c.im.to_f64()))).collect()
}

/// Neville's scheme at 0. Returns the estimate from all nodes and the one without node 0.
fn neville<T: Real>(xs: &[T], ys: &[SuperSeries<T>]) -> (SuperSeries<T>, SuperSeries<T>) {
    let n = xs.len();
    let mut p: Vec<SuperSeries<T>> = ys.to_vec();
    let mut next_best = ys[n - 1].clone();
    for len in 1..n {
        for i in 0..n - len {
            let j = i + len;
            let a = p[i + 1].scale_real(xs[i]);
            let b = p[i].scale_real(xs[j]);
            p[i] = (&a - &b).scale_real(T::one() / (xs[i] - xs[j]));
        }
        if len == n - 2 {
            next_best = p[1].clone();
        }
    }
    (p[0].clone(), next_best)
}

/// `sum_i |L_i(0)|` for the Lagrange basis on the nodes: amplification of rounding errors.
fn lebesgue_at_zero(xs: &[f64]) -> f64 {
    (0..xs.len())
        .map(|i| {
            (0..xs.len()).filter(|&j| j != i).map(|j| (xs[j] / (xs[j] - xs[i])).abs()).product::<f64>()
        })
        .sum()
}

fn evaluate<T: Real>(pool: &rayon::ThreadPool, ev: &Evaluator<'_, T>, weights: &[Vec<i64>]) -> Result<Vec<SuperSeries<T>>> {
    pool.install(|| weights.par_iter().map(|l| ev.term(l)).collect())
}

fn ball(spec: &PairingSpec, radius: f64) -> Result<Vec<Vec<i64>>> {
    let w = dominant_weights_in_ball(&spec.rs, radius)?;
    if w.len() > spec.summation.max_weights {
        return Err(Error::BudgetExceeded {
            what: format!("dominant weights within radius {radius}"),
            needed: w.len() as u64,
            budget: spec.summation.max_weights as u64,
        });
    }
    Ok(w)
}

fn norm2_f64(spec: &PairingSpec, lambda: &[i64]) -> f64 {
    f64_of(&spec.rs.norm2(&lambda_plus_rho(lambda)))
}

/// Sum over dominant weights of the pairing summand, in the mode given by [`PairingSpec::mode`].
pub fn sum_pairing<T: Real>(spec: &PairingSpec, opts: &SumOptions) -> Result<PairingResult> {
    spec.check_regime()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    let ev = Evaluator::<T>::new(spec);
    let diagnostics = Diagnostics {
        mode: spec.mode(),
        precision: T::NAME,
        truncation: spec.table.truncation,
        radius: spec.summation.radius,
        tolerance: spec.summation.tolerance,
        converged: false,
        shell_ratio: None,
        raw_tail: None,
        probe_radius: None,
        extrapolation: None,
        accelerated: false,
        rounding: 0.0,
        dim_moduli: spec.dim_moduli(),
        center_order: spec.rs.center_order(),
    };
    let mut result = match spec.mode() {
        SummationMode::Truncate => truncate(spec, &pool, &ev, diagnostics)?,
        SummationMode::ConvergenceFactor => regulated(spec, &pool, &ev, diagnostics)?,
    };
    result.diagnostics.converged = result.tail_bound <= spec.summation.tolerance;
    result.wallclock = start.elapsed();
    Ok(result)
}

fn shell_sums(norms: &[f64], mags: &[f64], r: f64) -> (f64, f64, usize, usize) {
    let (mut a0, mut a1, mut n0, mut n1) = (0.0, 0.0, 0, 0);
    for (&n, &m) in norms.iter().zip(mags) {
        if n > r / 2.0 && n <= r {
            a0 += m;
            n0 += 1;
        } else if n > r / 4.0 && n <= r / 2.0 {
            a1 += m;
            n1 += 1;
        }
    }
    (a0, a1, n0, n1)
}

/// Geometric continuation of the shell sums beyond `r`.
fn geometric_tail(a0: f64, a1: f64) -> Result<(f64, f64)> {
    let q = if a1 > 0.0 { a0 / a1 } else { 0.0 };
    if q >= 1.0 {
        return Err(Error::Divergence(format!("dyadic shell sums of |term| do not decrease (ratio {q:.3})")));
    }
    Ok((TAIL_SAFETY * a0 * q / (1.0 - q), q))
}

/// Whether every coefficient keeps its sign over the outer shell `(r/2, r]`. Partial sums
/// in rank one then have an expansion in `h = 1/|lambda + rho|`; oscillating terms and
/// lattice sums over balls in higher rank do not.
fn sign_stable<T: Real>(norms: &[f64], terms: &[SuperSeries<T>], r: f64) -> bool {
    let shell: Vec<&SuperSeries<T>> = norms.iter().zip(terms).filter(|(n, _)| **n > r / 2.0).map(|(_, t)| t).collect();
    let mut keys: BTreeMap<&Monomial, (f64, f64)> = BTreeMap::new();
    for t in &shell {
        for (m, c) in t.terms() {
            let e = keys.entry(m).or_insert((0.0, 0.0));
            e.0 = e.0.max(c.re.to_f64().abs());
            e.1 = e.1.max(c.im.to_f64().abs());
        }
    }
    keys.iter().all(|(m, &(re_max, im_max))| {
        let mut signs = [0i8; 2];
        shell.iter().all(|t| {
            let c = t.coeff(m);
            [(c.re.to_f64(), re_max), (c.im.to_f64(), im_max)].iter().enumerate().all(|(k, &(v, max))| {
                if v.abs() <= 1e-10 * max {
                    return true;
                }
                let s = if v > 0.0 { 1 } else { -1 };
                if signs[k] == 0 {
                    signs[k] = s;
                }
                signs[k] == s
            })
        })
    })
}

fn truncate<T: Real>(spec: &PairingSpec, pool: &rayon::ThreadPool, ev: &Evaluator<'_, T>, mut diag: Diagnostics) -> Result<PairingResult> {
    let r = spec.summation.radius;
    let weights = ball(spec, r)?;
    let norms: Vec<f64> = weights.iter().map(|l| norm2_f64(spec, l).sqrt()).collect();
    let terms = evaluate(pool, ev, &weights)?;
    let mags: Vec<f64> = terms.iter().map(|t| t.max_abs().to_f64()).collect();

    // prefix lengths of the nested balls, coarsest first
    let mut counts: Vec<usize> = (0..LEVELS)
        .rev()
        .map(|k| norms.partition_point(|&n| n <= r / f64::powi(2.0, k as i32)))
        .filter(|&c| c >= MIN_LEVEL_TERMS)
        .collect();
    counts.dedup();
    let mut acc = Accumulator::<T>::new();
    let mut snapshots = Vec::new();
    let mut next = 0;
    for (i, t) in terms.iter().enumerate() {
        acc.add(t, None);
        while next < counts.len() && counts[next] == i + 1 {
            snapshots.push(acc.value(&spec.table));
            next += 1;
        }
    }
    let mut value = acc.value(&spec.table);
    let scale = value.max_abs().to_f64();

    let (a0, a1, n0, n1) = shell_sums(&norms, &mags, r);
    let (raw_tail, q) = if n0 > 0 && n1 > 0 {
        geometric_tail(a0, a1)?
    } else {
        // too few weights inside the ball: evaluate further shells, without summing them
        let rho_norm = norm2_f64(spec, &vec![0; spec.rs.rank]).sqrt();
        let mut rp = 2.0 * r.max(rho_norm);
        let mut probe = ball(spec, rp)?;
        for _ in 0..8 {
            let pn: Vec<f64> = probe.iter().map(|l| norm2_f64(spec, l).sqrt()).collect();
            let (_, _, m0, m1) = shell_sums(&pn, &vec![0.0; pn.len()], rp);
            if m0 > 0 && m1 > 0 {
                break;
            }
            rp *= 2.0;
            probe = ball(spec, rp)?;
        }
        let extra: Vec<Vec<i64>> = probe[weights.len()..].to_vec();
        let extra_terms = evaluate(pool, ev, &extra)?;
        let pn: Vec<f64> = probe.iter().map(|l| norm2_f64(spec, l).sqrt()).collect();
        let pm: Vec<f64> = mags.iter().copied().chain(extra_terms.iter().map(|t| t.max_abs().to_f64())).collect();
        let inner: f64 = pm[weights.len()..].iter().sum();
        let (b0, b1, _, _) = shell_sums(&pn, &pm, rp);
        let (t, q) = geometric_tail(b0, b1)?;
        diag.probe_radius = Some(rp);
        (inner + t, q)
    };
    diag.shell_ratio = Some(q);
    diag.raw_tail = Some(raw_tail);
    let mut rounding = 4.0 * T::EPSILON * scale + f64::EPSILON * scale;
    let mut tail_bound = raw_tail + rounding;

    if spec.summation.accelerate && snapshots.len() >= 3 && spec.rs.rank == 1 && sign_stable(&norms, &terms, r) {
        let hs: Vec<f64> = counts.iter().map(|&c| 1.0 / norms[c - 1]).collect();
        let xs: Vec<T> = hs.iter().map(|&h| T::from_f64(h)).collect();
        let (top, below) = neville(&xs, &snapshots);
        let error = top.max_diff(&below).to_f64();
        let amp = lebesgue_at_zero(&hs);
        let ext_rounding = amp * 4.0 * T::EPSILON * scale + f64::EPSILON * scale;
        diag.extrapolation = Some(Extrapolation {
            variable: "h",
            nodes: hs,
            terms: counts.iter().map(|&c| c as u64).collect(),
            error,
        });
        if error + ext_rounding < tail_bound {
            value = top;
            rounding = ext_rounding;
            tail_bound = error + ext_rounding;
            diag.accelerated = true;
        }
    }
    diag.rounding = rounding;
    Ok(PairingResult {
        coefficients: keyed_f64(&value),
        terms_summed: weights.len() as u64,
        tail_bound,
        regulator_trace: vec![],
        diagnostics: diag,
        wallclock: Duration::ZERO,
    })
}

fn regulated<T: Real>(spec: &PairingSpec, pool: &rayon::ThreadPool, ev: &Evaluator<'_, T>, mut diag: Diagnostics) -> Result<PairingResult> {
    let mut eps = spec.summation.epsilons.clone();
    if eps.len() < 2 || eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::InvalidSpec("convergence factor needs at least two positive epsilons".into()));
    }
    eps.sort_by(|a, b| b.total_cmp(a));
    eps.dedup();
    if eps.len() < 2 {
        return Err(Error::InvalidSpec("epsilons must be distinct".into()));
    }
    let r_max = (CUTOFF / eps[eps.len() - 1]).sqrt();
    let weights = ball(spec, r_max)?;
    let n2: Vec<f64> = weights.iter().map(|l| norm2_f64(spec, l)).collect();
    let n2_exact: Vec<T> = weights.iter().map(|l| T::from_ratio(&spec.rs.norm2(&lambda_plus_rho(l)))).collect();
    let terms = evaluate(pool, ev, &weights)?;

    let mut trace = Vec::with_capacity(eps.len());
    let mut values = Vec::with_capacity(eps.len());
    let mut scale: f64 = 0.0;
    for &e in &eps {
        let limit = CUTOFF / e;
        let et = T::from_f64(e);
        let mut acc = Accumulator::<T>::new();
        let mut count = 0u64;
        for ((t, &m2), &m2t) in terms.iter().zip(&n2).zip(&n2_exact) {
            if m2 > limit {
                break;
            }
            acc.add(t, Some((-(et * m2t)).exp()));
            count += 1;
        }
        let v = acc.value(&spec.table);
        scale = scale.max(v.max_abs().to_f64());
        trace.push(RegulatorStep { epsilon: e, radius: limit.sqrt(), terms: count, coefficients: keyed_f64(&v) });
        values.push(v);
    }
    let ts: Vec<f64> = eps.iter().map(|e| e.sqrt()).collect();
    let xs: Vec<T> = eps.iter().map(|&e| T::from_f64(e).sqrt()).collect();
    let (top, below) = neville(&xs, &values);
    let residual = top.max_diff(&below).to_f64();
    let rounding = lebesgue_at_zero(&ts) * 4.0 * T::EPSILON * scale + f64::EPSILON * scale;
    diag.radius = r_max;
    diag.rounding = rounding;
    diag.extrapolation = Some(Extrapolation {
        variable: "sqrt_eps",
        nodes: ts,
        terms: trace.iter().map(|s| s.terms).collect(),
        error: residual,
    });
    diag.accelerated = true;
    Ok(PairingResult {
        coefficients: keyed_f64(&top),
        terms_summed: weights.len() as u64,
        tail_bound: residual + rounding,
        regulator_trace: trace,
        diagnostics: diag,
        wallclock: Duration::ZERO,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::RootSystem;
    use crate::rational::qi;

    fn lagrange_check(xs: &[f64]) {
        // extrapolating samples of a cubic to 0 is exact
        let table = GeneratorTable::empty(4);
        let f = |x: f64| 2.0 - 3.0 * x + 0.5 * x * x * x;
        let ys: Vec<SuperSeries<f64>> = xs.iter().map(|&x| SuperSeries::real(&table, f(x))).collect();
        let (top, _) = neville(xs, &ys);
        assert!((top.constant_term().re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn neville_is_exact_for_polynomials() {
        lagrange_check(&[0.4, 0.2, 0.1, 0.05]);
        lagrange_check(&[1.0, 0.7, 0.5, 0.3, 0.2]);
    }

    #[test]
    fn empty_ball_gives_zero_with_a_tail() {
        let rs = Arc::new(RootSystem::new("A1".parse().unwrap(), qi(1)).unwrap());
        let mut spec = PairingSpec::volume(rs, 2);
        spec.summation.radius = 0.5;
        spec.summation.mode = Some(SummationMode::Truncate);
        let r = sum_pairing::<f64>(&spec, &SumOptions { threads: 1 }).unwrap();
        assert_eq!(r.terms_summed, 0);
        assert_eq!(r.coefficient("1"), Some(C::new(0.0, 0.0)));
        assert!(r.tail_bound > 0.1 && r.tail_bound.is_finite());
        assert!(r.diagnostics.probe_radius.is_some());
    }
}
