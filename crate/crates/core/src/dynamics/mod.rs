//! The cubic family `f_t(z) = (1−t)z² + tz³`, its critical data, the pinching
//! sequence of `F(z) = z|z|` and Julia set slices.

mod julia;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalar::{rational, Field};

pub use julia::{
    complement_components, default_escape_radius, framing_half_width, render_julia_slice, sweep,
    Census, ClassGrid, Component, JuliaSlice, JuliaSliceReport, Pixel, PixelClass, RenderConfig,
    RenderError, BASIN_RADIUS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("parameter t = {0} is outside [0, 1]")]
    ParameterRange(String),
    #[error("n = {0} is beyond float precision (at most {MAX_PINCH_N})")]
    PinchTooLarge(u32),
    #[error("n must be positive")]
    PinchZero,
    #[error("iterates of F leave the float range at n = {0}")]
    FloatRange(u32),
    #[error("annulus grid needs r > 1, positive sample counts and a positive step")]
    Grid,
}

/// `t ∈ [0, 1]`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FtParams {
    t: BigRational,
}

impl FtParams {
    pub fn new(t: BigRational) -> Result<Self, DynamicsError> {
        if t < BigRational::zero() || t > BigRational::one() {
            return Err(DynamicsError::ParameterRange(t.to_string()));
        }
        Ok(FtParams { t })
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self, DynamicsError> {
        Self::new(rational(num, den))
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn t_as<T: Float>(&self) -> T {
        T::from(self.t.to_f64().expect("t is in [0, 1]")).expect("float conversion")
    }

    /// `f_t(z)` over any field containing `ℚ`.
    pub fn eval_exact<K: Field + From<BigRational>>(&self, z: &K) -> K {
        let t = K::from(self.t.clone());
        let z2 = z.clone() * z.clone();
        z2.clone() * (K::one() - t.clone()) + z2 * z.clone() * t
    }
}

/// `f_t(z) = (1−t)z² + tz³` in floating point.
pub fn ft_eval<T: Float>(t: T, z: Complex<T>) -> Complex<T> {
    z * z * (z * t + (T::one() - t))
}

/// Critical points (with multiplicity) and distinct finite critical values of `f_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalData {
    pub points: Vec<BigRational>,
    pub values: Vec<BigRational>,
    /// `t = 0`: only the data of `z²` remains.
    pub degenerate: bool,
}

/// Points `0` and `−2(1−t)/(3t)`, values `0` and `4(1−t)³/(27t²)`.
pub fn ft_critical_data(p: &FtParams) -> CriticalData {
    let t = p.t();
    let zero = BigRational::zero();
    if t.is_zero() {
        return CriticalData {
            points: vec![zero.clone()],
            values: vec![zero],
            degenerate: true,
        };
    }
    let s = BigRational::one() - t;
    let point = -(rational(2, 1) * &s) / (rational(3, 1) * t);
    let value = rational(4, 27) * &s * &s * &s / (t * t);
    let mut values = vec![zero.clone()];
    if !value.is_zero() {
        values.push(value);
    }
    CriticalData {
        points: vec![zero, point],
        values,
        degenerate: false,
    }
}

pub const MAX_PINCH_N: u32 = 40;

/// Polar sample grid on the annulus `1/r < |z| < r`, radii log-uniform at
/// cell centers, and the finite-difference step relative to `|z|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusGrid<T> {
    pub r: T,
    pub radial: usize,
    pub angular: usize,
    pub relative_step: T,
}

impl<T: Float> Default for AnnulusGrid<T> {
    fn default() -> Self {
        AnnulusGrid {
            r: T::from(2.0).expect("float"),
            radial: 100,
            angular: 100,
            relative_step: T::from(1e-6).expect("float"),
        }
    }
}

impl<T: Float> AnnulusGrid<T> {
    pub fn samples(&self) -> Vec<Complex<T>> {
        let log_r = self.r.ln();
        let two = T::from(2.0).expect("float");
        let mut out = Vec::with_capacity(self.radial * self.angular);
        for i in 0..self.radial {
            let frac = T::from(2 * i + 1).expect("float") / T::from(self.radial).expect("float");
            let rho = (log_r * (frac - T::one())).exp();
            for j in 0..self.angular {
                let theta = two
                    * T::from(std::f64::consts::PI).expect("float")
                    * T::from(j).expect("float")
                    / T::from(self.angular).expect("float");
                out.push(Complex::from_polar(rho, theta));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinchNorm<T> {
    pub n: u32,
    pub closed_form: T,
    pub measured: T,
}

/// `‖μₙ‖` for `μₙ = ∂̄Fⁿ/∂Fⁿ`, `F(z) = z|z|`: the closed form `(2ⁿ−1)/(2ⁿ+1)`
/// next to the maximum of the 4-point Wirtinger estimate over the grid.
pub fn pinch_beltrami_norm<T: Float>(
    n: u32,
    grid: &AnnulusGrid<T>,
) -> Result<PinchNorm<T>, DynamicsError> {
    if n == 0 {
        return Err(DynamicsError::PinchZero);
    }
    if n > MAX_PINCH_N {
        return Err(DynamicsError::PinchTooLarge(n));
    }
    if !(grid.r > T::one() && grid.radial > 0 && grid.angular > 0 && grid.relative_step > T::zero())
    {
        return Err(DynamicsError::Grid);
    }
    let p = T::from(2.0).expect("float").powi(n as i32);
    let closed_form = (p - T::one()) / (p + T::one());
    let iterate = |z: Complex<T>| -> Result<Complex<T>, DynamicsError> {
        let mut w = z;
        for _ in 0..n {
            w = w * w.norm();
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(DynamicsError::FloatRange(n));
            }
        }
        Ok(w)
    };
    let four = T::from(4.0).expect("float");
    let i = Complex::i();
    let mut measured = T::zero();
    for z in grid.samples() {
        let h = grid.relative_step * z.norm();
        let dx = iterate(z + h)? - iterate(z - h)?;
        let dy = iterate(z + i * h)? - iterate(z - i * h)?;
        let d = (dx - i * dy) / (four * h);
        let dbar = (dx + i * dy) / (four * h);
        let ratio = (dbar / d).norm();
        if !ratio.is_finite() {
            return Err(DynamicsError::FloatRange(n));
        }
        measured = measured.max(ratio);
    }
    Ok(PinchNorm {
        n,
        closed_form,
        measured,
    })
}
