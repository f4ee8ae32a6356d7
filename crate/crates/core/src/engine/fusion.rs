use crate::deformation::{BetaSpec, DetVariant};
use crate::error::Result;
use crate::lie::weights::lambda_plus_rho;
use crate::real::{creal, two_pi_i_pow, Real};
use crate::rep::{vol_g, weyl_dimension_real};
use crate::series::SuperSeries;

use super::{conjugacy_fourier_term, double_fourier_term, PairingSpec};

/// Beta data carried by the `j`-th double: the sigma part rides on the first one.
fn handle_beta(spec: &PairingSpec, j: usize) -> BetaSpec {
    BetaSpec {
        sigmas: if j == 0 { spec.beta.sigmas.clone() } else { vec![] },
        handles: spec.beta.handles.get(j).cloned().into_iter().collect(),
    }
}

/// Fourier coefficient of the fusion product `D(G)^s * C_1 * ... * C_r` against
/// `conj(chi_lambda)`: the product of the factor coefficients divided by
/// `dim V_lambda^(s + r - 1)`.
pub fn fourier_coefficient<T: Real>(spec: &PairingSpec, lambda: &[i64]) -> Result<SuperSeries<T>> {
    let rs = &spec.rs;
    let p = &spec.deformation;
    let table = &spec.table;
    let mut acc = SuperSeries::real(table, T::one());
    for j in 0..spec.genus {
        acc = &acc * &double_fourier_term::<T>(p, table, &handle_beta(spec, j), lambda)?;
    }
    if spec.genus == 0 && !spec.beta.sigmas.is_empty() {
        let xi = p.solve_xi_weight::<T>(table, &lambda_plus_rho(lambda))?;
        acc = &acc * &p.rtilde(&xi, &handle_beta(spec, 0))?.exp()?;
    }
    for m in &spec.markings {
        acc = &acc * &conjugacy_fourier_term::<T>(p, table, m, lambda)?;
    }
    let factors = spec.genus + spec.markings.len();
    let dim: T = weyl_dimension_real(rs, lambda)?;
    Ok(acc.scale_real((T::one() / dim).powi(factors as i32 - 1)))
}

#[derive(Clone, Debug)]
pub struct FusionReport {
    pub lambda: Vec<i64>,
    /// Largest coefficientwise difference between the assembled term and the product.
    pub max_abs_diff: f64,
    /// Largest coefficient of the assembled term.
    pub scale: f64,
}

impl FusionReport {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.max_abs_diff / self.scale
        } else {
            self.max_abs_diff
        }
    }
}

/// Compares the assembled summand with the normalized fusion product
/// `#Z (2 pi i)^{-dim M/2} vol_G^{-2} dim V_lambda / det p''(xi) * fourier_coefficient`,
/// where `dim M = 2s dim G + sum_l dim C_l` is the dimension of the unreduced space.
pub fn fusion_product_check<T: Real>(spec: &PairingSpec, lambdas: &[Vec<i64>]) -> Result<Vec<FusionReport>> {
    let rs = &spec.rs;
    let p = &spec.deformation;
    let half_dim_m = (spec.genus * rs.dim()) as i32 + spec.markings.iter().map(|m| m.class.dim(rs) as i32 / 2).sum::<i32>();
    let v = vol_g::<T>(rs);
    let mut out = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        let assembled = super::pairing_term::<T>(spec, lambda)?;
        let fc = fourier_coefficient::<T>(spec, lambda)?;
        let xi = p.solve_xi_weight::<T>(&spec.table, &lambda_plus_rho(lambda))?;
        let f = p.det_half_pp(&xi, DetVariant::Full)?;
        let det = (&f * &f).inv()?;
        let dim: T = weyl_dimension_real(rs, lambda)?;
        let pre = two_pi_i_pow::<T>(-half_dim_m) * creal(T::from_i64(rs.center_order() as i64) * dim / (v * v));
        let product = (&det * &fc).scale(pre);
        out.push(FusionReport {
            lambda: lambda.clone(),
            max_abs_diff: assembled.max_diff(&product).to_f64(),
            scale: assembled.max_abs().to_f64(),
        });
    }
    Ok(out)
}
