//! Per-weight summands of the localization formulas and their regularized sums over
//! dominant weights.

mod fusion;
mod summation;

use std::sync::Arc;

use crate::deformation::{BetaSpec, DeformedP, DetVariant, InvariantPoly};
use crate::error::{Error, Result};
use crate::lie::weights::{dominant_integral, lambda_plus_rho, to_q};
use crate::lie::{AlcovePoint, RootSystem};
use crate::poly::Polynomial;
use crate::real::{creal, two_pi_i_pow, Real};
use crate::rep::{vol_g, weyl_dimension_real, ConjugacyClass};
use crate::series::{GeneratorTable, SuperSeries};

pub use fusion::{fourier_coefficient, fusion_product_check, FusionReport};
pub use summation::{sum_pairing, Diagnostics, Extrapolation, PairingResult, RegulatorStep, SumOptions};

/// A boundary condition: the class of `exp(mu)` and a `W_K`-invariant polynomial `Q`.
#[derive(Clone, Debug)]
pub struct Marking {
    pub class: ConjugacyClass,
    pub q: InvariantPoly,
}

impl Marking {
    pub fn new(rs: &RootSystem, mu: AlcovePoint, q: Polynomial, budget: u64) -> Result<Self> {
        let class = ConjugacyClass::new(rs, mu, budget)?;
        let q = InvariantPoly::for_subsystem(rs, q, &class.k_roots)?;
        Ok(Marking { class, q })
    }

    /// `mu = 0`, `Q = 1`.
    pub fn trivial(rs: &RootSystem) -> Self {
        Marking { class: ConjugacyClass::identity(rs), q: InvariantPoly::one(rs) }
    }

    pub fn has_constant_q(&self) -> bool {
        self.q.poly.degree() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummationMode {
    Truncate,
    ConvergenceFactor,
}

impl SummationMode {
    pub fn name(self) -> &'static str {
        match self {
            SummationMode::Truncate => "truncate",
            SummationMode::ConvergenceFactor => "convergence_factor",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SummationSpec {
    /// `None` picks truncation when the terms decay at least like `dim^-2` with constant
    /// `Q`, and the convergence factor otherwise.
    pub mode: Option<SummationMode>,
    pub radius: f64,
    pub epsilons: Vec<f64>,
    pub tolerance: f64,
    /// Richardson extrapolation over nested radii in truncate mode.
    pub accelerate: bool,
    pub max_weights: usize,
}

impl Default for SummationSpec {
    fn default() -> Self {
        SummationSpec {
            mode: None,
            radius: 100.0,
            epsilons: (0..6).map(|k| 0.1 / f64::powi(2.0, k)).collect(),
            tolerance: 1e-8,
            accelerate: true,
            max_weights: 2_000_000,
        }
    }
}

/// Everything needed to evaluate the pairing sum.
#[derive(Clone, Debug)]
pub struct PairingSpec {
    pub rs: Arc<RootSystem>,
    pub genus: usize,
    pub markings: Vec<Marking>,
    pub deformation: DeformedP,
    pub beta: BetaSpec,
    pub table: Arc<GeneratorTable>,
    pub summation: SummationSpec,
}

/// Even generators are the deformation then the sigma names; odd generators are the
/// handle names in order, `eps1` before `eps2` within a handle.
pub fn generator_table(p: &DeformedP, beta: &BetaSpec, truncation: u32) -> Result<Arc<GeneratorTable>> {
    let even = p.terms.iter().chain(&beta.sigmas).map(|w| w.name.clone()).collect();
    let odd = beta.handles.iter().flat_map(|h| h.eps1.iter().chain(&h.eps2)).map(|w| w.name.clone()).collect();
    GeneratorTable::new(even, odd, truncation)
}

impl PairingSpec {
    pub fn new(
        genus: usize,
        markings: Vec<Marking>,
        deformation: DeformedP,
        beta: BetaSpec,
        truncation: u32,
        summation: SummationSpec,
    ) -> Result<Self> {
        if beta.handles.len() > genus {
            return Err(Error::InvalidSpec(format!("{} handles given for genus {genus}", beta.handles.len())));
        }
        let table = generator_table(&deformation, &beta, truncation)?;
        let rs = deformation.rs.clone();
        Ok(PairingSpec { rs, genus, markings, deformation, beta, table, summation })
    }

    /// The quadratic, unmarked, `beta = 1` problem of genus `s`.
    pub fn volume(rs: Arc<RootSystem>, genus: usize) -> Self {
        let p = DeformedP::quadratic(rs);
        PairingSpec::new(genus, vec![], p, BetaSpec::trivial(), crate::series::DEFAULT_TRUNCATION, SummationSpec::default())
            .expect("empty generator table")
    }

    pub fn with_marking(&self, m: Marking) -> Self {
        let mut s = self.clone();
        s.markings.push(m);
        s
    }

    /// `2s + r >= 3`, the regime where the generic stabilizer is the center.
    pub fn check_regime(&self) -> Result<()> {
        if 2 * self.genus + self.markings.len() < 3 {
            return Err(Error::InvalidSpec(format!(
                "genus {} with {} markings is outside the range 2s + r >= 3",
                self.genus,
                self.markings.len()
            )));
        }
        Ok(())
    }

    /// The requested mode, or truncation when every term decays absolutely: `2s + r >= 4`,
    /// constant `Q`s, and no generators (their coefficients grow polynomially in lambda).
    pub fn mode(&self) -> SummationMode {
        self.summation.mode.unwrap_or_else(|| {
            let plain = self.table.even.is_empty() && self.table.odd.is_empty();
            if plain && 2 * self.genus + self.markings.len() >= 4 && self.markings.iter().all(Marking::has_constant_q) {
                SummationMode::Truncate
            } else {
                SummationMode::ConvergenceFactor
            }
        })
    }

    /// Dimension of the moduli space, `(2s - 2) dim G + sum_l dim C_l`.
    pub fn dim_moduli(&self) -> i64 {
        let g = self.rs.dim() as i64;
        (2 * self.genus as i64 - 2) * g + self.markings.iter().map(|m| m.class.dim(&self.rs) as i64).sum::<i64>()
    }
}

fn checked_lambda(rs: &RootSystem, lambda: &[i64]) -> Result<()> {
    if lambda.len() != rs.rank {
        return Err(Error::Dimension(format!("weight needs {} labels", rs.rank)));
    }
    dominant_integral(&to_q(lambda)).map(|_| ())
}

/// Fourier coefficient of a conjugacy class against `conj(chi_lambda)`:
/// `(2 pi i)^{dim C/2} Q(xi) (det p''/det p''_k)^{1/2} conj(chi_lambda(C)) Vol(C)`.
pub fn conjugacy_fourier_term<T: Real>(
    p: &DeformedP,
    table: &Arc<GeneratorTable>,
    marking: &Marking,
    lambda: &[i64],
) -> Result<SuperSeries<T>> {
    let rs = &p.rs;
    checked_lambda(rs, lambda)?;
    let xi = p.solve_xi_weight::<T>(table, &lambda_plus_rho(lambda))?;
    let q = marking.q.poly.eval_series(&xi);
    let ratio = p.det_half_pp(&xi, DetVariant::Ratio(&marking.class.k_roots))?;
    let chi = marking.class.char_value::<T>(rs, lambda)?.conj();
    let pre = two_pi_i_pow::<T>(marking.class.dim(rs) as i32 / 2) * chi * creal(marking.class.volume::<T>(rs));
    Ok((&q * &ratio).scale(pre))
}

/// Fourier coefficient of the double `D(G)` with the given `beta` data:
/// `(2 pi i)^{dim G} vol_G^2 det p''(xi) / dim V_lambda * exp(R~(xi))`.
pub fn double_fourier_term<T: Real>(
    p: &DeformedP,
    table: &Arc<GeneratorTable>,
    beta: &BetaSpec,
    lambda: &[i64],
) -> Result<SuperSeries<T>> {
    let rs = &p.rs;
    checked_lambda(rs, lambda)?;
    let xi = p.solve_xi_weight::<T>(table, &lambda_plus_rho(lambda))?;
    let f = p.det_half_pp(&xi, DetVariant::Full)?;
    let e = p.rtilde(&xi, beta)?.exp()?;
    let dim: T = weyl_dimension_real(rs, lambda)?;
    let v = vol_g::<T>(rs);
    let pre = two_pi_i_pow::<T>(rs.dim() as i32) * creal(v * v / dim);
    Ok((&(&f * &f) * &e).scale(pre))
}

/// Per-spec constants shared by all terms.
pub struct Evaluator<'a, T: Real> {
    spec: &'a PairingSpec,
    prefactor: T,
    volumes: Vec<T>,
}

impl<'a, T: Real> Evaluator<'a, T> {
    pub fn new(spec: &'a PairingSpec) -> Self {
        let rs = &spec.rs;
        let prefactor = T::from_i64(rs.center_order() as i64) * vol_g::<T>(rs).powi(2 * spec.genus as i32 - 2);
        let volumes = spec.markings.iter().map(|m| m.class.volume::<T>(rs)).collect();
        Evaluator { spec, prefactor, volumes }
    }

    /// `#Z vol_G^{2s-2} e^{R~} (det^{1/2} p'' / dim)^{2s+r-2} prod_l Q_l Vol(C_l) conj(chi_l) / det^{1/2} p''_{k_l}`.
    pub fn term(&self, lambda: &[i64]) -> Result<SuperSeries<T>> {
        let spec = self.spec;
        let rs = &spec.rs;
        let p = &spec.deformation;
        checked_lambda(rs, lambda)?;
        let xi = p.solve_xi_weight::<T>(&spec.table, &lambda_plus_rho(lambda))?;
        let dim: T = weyl_dimension_real(rs, lambda)?;
        let f = p.det_half_pp(&xi, DetVariant::Full)?.scale_real(T::one() / dim);
        let mut acc = f.powi(2 * spec.genus as i32 - 2)?;
        acc = &acc * &p.rtilde(&xi, &spec.beta)?.exp()?;
        for (m, vol) in spec.markings.iter().zip(&self.volumes) {
            let ratio = p.det_half_pp(&xi, DetVariant::Ratio(&m.class.k_roots))?;
            let chi = m.class.char_ratio::<T>(rs, lambda)?.conj();
            let q = m.q.poly.eval_series(&xi);
            acc = &acc * &(&q * &ratio).scale(chi * creal(*vol));
        }
        Ok(acc.scale_real(self.prefactor))
    }
}

/// The summand of the pairing sum at `lambda`; see [`Evaluator::term`].
pub fn pairing_term<T: Real>(spec: &PairingSpec, lambda: &[i64]) -> Result<SuperSeries<T>> {
    Evaluator::<T>::new(spec).term(lambda)
}
