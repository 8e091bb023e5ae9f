use std::fmt;

use num_complex::Complex;
use num_traits::Float;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use super::{ft_eval, FtParams};
use crate::scalar::format_rational;

/// Orbits closer to 0 than this count as captured by the superattracting point 0.
pub const BASIN_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("resolution {0} is below 16")]
    Resolution(usize),
    #[error("max_iter must be at least 1")]
    MaxIter,
    #[error("half_width must be positive and finite")]
    HalfWidth,
    #[error("escape radius must exceed 1")]
    EscapeRadius,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderConfig<T> {
    pub center: Complex<T>,
    pub half_width: T,
    /// Pixels per side.
    pub resolution: usize,
    pub max_iter: u32,
    /// `None` picks the sound default for the parameter, see [`default_escape_radius`].
    pub escape_radius: Option<T>,
}

impl<T: Float> Default for RenderConfig<T> {
    fn default() -> Self {
        RenderConfig {
            center: Complex::new(T::zero(), T::zero()),
            half_width: T::from(2.0).expect("float"),
            resolution: 512,
            max_iter: 500,
            escape_radius: None,
        }
    }
}

impl<T: Float> RenderConfig<T> {
    /// The default grid on a window centered at 0 that contains the filled
    /// Julia set of `f_t`, see [`framing_half_width`].
    pub fn for_parameter(p: &FtParams) -> Self {
        RenderConfig {
            half_width: framing_half_width(p.t_as()),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if self.resolution < 16 {
            return Err(RenderError::Resolution(self.resolution));
        }
        if self.max_iter < 1 {
            return Err(RenderError::MaxIter);
        }
        if !(self.half_width > T::zero() && self.half_width.is_finite()) {
            return Err(RenderError::HalfWidth);
        }
        if self.escape_radius.is_some_and(|r| !(r > T::one())) {
            return Err(RenderError::EscapeRadius);
        }
        Ok(())
    }

    fn pixel_size(&self) -> T {
        self.half_width * T::from(2.0).expect("float") / T::from(self.resolution).expect("float")
    }

    /// Center of pixel `(row, col)`; row 0 is the top edge.
    pub fn pixel_center(&self, row: usize, col: usize) -> Complex<T> {
        let px = self.pixel_size();
        let half = T::from(0.5).expect("float");
        Complex::new(
            self.center.re - self.half_width + (T::from(col).expect("float") + half) * px,
            self.center.im + self.half_width - (T::from(row).expect("float") + half) * px,
        )
    }

    /// Index of the pixel whose closed cell contains 0 (ties go right and down).
    pub fn origin_pixel(&self) -> Option<usize> {
        let px = self.pixel_size();
        let col = ((-self.center.re + self.half_width) / px).floor();
        let row = ((self.center.im + self.half_width) / px).floor();
        let n = T::from(self.resolution).expect("float");
        if col < T::zero() || row < T::zero() || col >= n || row >= n {
            return None;
        }
        Some(row.to_usize()? * self.resolution + col.to_usize()?)
    }
}

/// `max(2, 1.05·(2−t)/t)`, or 2 at `t = 0`. For `|z| ≥ (2−t)/t` we have
/// `|f_t(z)| ≥ |z|²`, so the filled Julia set lies inside; it reaches out to the
/// fixed point `−1/t`.
pub fn framing_half_width<T: Float>(t: T) -> T {
    let two = T::from(2.0).expect("float");
    if t <= T::zero() {
        two
    } else {
        two.max(T::from(1.05).expect("float") * (two - t) / t)
    }
}

/// `max(2, 3/t)`, or 2 at `t = 0`. Beyond it
/// `|f_t(z)| ≥ |z|²(t|z| − (1−t)) ≥ 2|z|`, so escape is irreversible.
pub fn default_escape_radius<T: Float>(t: T) -> T {
    let two = T::from(2.0).expect("float");
    if t <= T::zero() {
        two
    } else {
        two.max(T::from(3.0).expect("float") / t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pixel {
    /// First `k` with `|z_k| > R`.
    Escaped(u32),
    /// First `k` with `|z_k| < 10⁻⁶`.
    Basin(u32),
    Retained,
}

impl Pixel {
    pub fn class(&self) -> Option<PixelClass> {
        match self {
            Pixel::Escaped(_) => Some(PixelClass::Escaped),
            Pixel::Basin(_) => Some(PixelClass::Basin),
            Pixel::Retained => None,
        }
    }

    fn gray(&self) -> u8 {
        match *self {
            Pixel::Escaped(k) => 255 - k.saturating_mul(4).min(127) as u8,
            Pixel::Basin(k) => 1 + k.saturating_mul(4).min(126) as u8,
            Pixel::Retained => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PixelClass {
    Escaped,
    Basin,
}

/// Row-major classification, row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGrid {
    pub resolution: usize,
    pub cells: Vec<Pixel>,
    pub origin: Option<usize>,
}

impl ClassGrid {
    pub fn count(&self, class: Option<PixelClass>) -> usize {
        self.cells.iter().filter(|p| p.class() == class).count()
    }

    /// Binary PPM (P6), gray levels from the iteration counts, retained pixels black.
    pub fn to_ppm(&self) -> Vec<u8> {
        let n = self.resolution;
        let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
        out.reserve(3 * n * n);
        for p in &self.cells {
            let g = p.gray();
            out.extend_from_slice(&[g, g, g]);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Component {
    pub class: PixelClass,
    pub size: usize,
    pub touches_boundary: bool,
    pub contains_origin: bool,
}

impl Component {
    /// Basin components are bounded in the plane; the escaping region is not.
    /// Independent of where the window cuts the picture.
    pub fn bounded(&self) -> bool {
        self.class == PixelClass::Basin
    }
}

/// Components of the classified (non-retained) pixels, ordered by first pixel in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub components: Vec<Component>,
    pub retained: usize,
}

impl Census {
    pub fn classified(&self) -> usize {
        self.components.iter().map(|c| c.size).sum()
    }
}

/// 4-connected union-find over pixels of the same class: escaped with
/// escaped, basin with basin. Retained pixels separate components.
pub fn complement_components(grid: &ClassGrid) -> Census {
    let n = grid.resolution;
    let cells = &grid.cells;
    let mut uf = UnionFind::<usize>::new(cells.len());
    for row in 0..n {
        for col in 0..n {
            let k = row * n + col;
            let Some(class) = cells[k].class() else {
                continue;
            };
            if col + 1 < n && cells[k + 1].class() == Some(class) {
                uf.union(k, k + 1);
            }
            if row + 1 < n && cells[k + n].class() == Some(class) {
                uf.union(k, k + n);
            }
        }
    }
    let mut slot_of_root = vec![usize::MAX; cells.len()];
    let mut components: Vec<Component> = Vec::new();
    let mut retained = 0;
    for (k, p) in cells.iter().enumerate() {
        let Some(class) = p.class() else {
            retained += 1;
            continue;
        };
        let root = uf.find(k);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = components.len();
            components.push(Component {
                class,
                size: 0,
                touches_boundary: false,
                contains_origin: false,
            });
        }
        let c = &mut components[slot_of_root[root]];
        c.size += 1;
        let (row, col) = (k / n, k % n);
        if row == 0 || col == 0 || row + 1 == n || col + 1 == n {
            c.touches_boundary = true;
        }
        if grid.origin == Some(k) {
            c.contains_origin = true;
        }
    }
    Census {
        components,
        retained,
    }
}

/// A rendered slice: classification, census and the parameters behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct JuliaSlice<T> {
    pub params: FtParams,
    pub config: RenderConfig<T>,
    pub escape_radius: T,
    pub grid: ClassGrid,
    pub census: Census,
}

impl<T: Float> JuliaSlice<T> {
    pub fn report(&self) -> JuliaSliceReport {
        JuliaSliceReport {
            t: format_rational(self.params.t()),
            resolution: self.grid.resolution,
            sizes: self.census.components.iter().map(|c| c.size).collect(),
            bounded: self
                .census
                .components
                .iter()
                .map(Component::bounded)
                .collect(),
        }
    }

    /// The component holding the origin pixel, if that pixel was classified.
    pub fn origin_component(&self) -> Option<&Component> {
        self.census.components.iter().find(|c| c.contains_origin)
    }
}

/// `t=<frac> resolution=<n> components=<k> sizes=[...] bounded=[...]`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JuliaSliceReport {
    pub t: String,
    pub resolution: usize,
    pub sizes: Vec<usize>,
    pub bounded: Vec<bool>,
}

impl fmt::Display for JuliaSliceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: Vec<String>| xs.join(",");
        write!(
            f,
            "t={} resolution={} components={} sizes=[{}] bounded=[{}]",
            self.t,
            self.resolution,
            self.sizes.len(),
            join(self.sizes.iter().map(ToString::to_string).collect()),
            join(self.bounded.iter().map(ToString::to_string).collect()),
        )
    }
}

fn classify<T: Float>(t: T, z0: Complex<T>, radius: T, max_iter: u32) -> Pixel {
    let basin = T::from(BASIN_RADIUS).expect("float");
    let mut z = z0;
    for k in 0..=max_iter {
        let r = z.norm();
        if r > radius {
            return Pixel::Escaped(k);
        }
        if r < basin {
            return Pixel::Basin(k);
        }
        if k < max_iter {
            z = ft_eval(t, z);
        }
    }
    Pixel::Retained
}

/// Escape-time classification of the window under `f_t`, rows in parallel.
pub fn render_julia_slice<T: Float + Send + Sync>(
    params: &FtParams,
    cfg: &RenderConfig<T>,
) -> Result<JuliaSlice<T>, RenderError> {
    cfg.validate()?;
    let t: T = params.t_as();
    let radius = cfg
        .escape_radius
        .unwrap_or_else(|| default_escape_radius(t));
    let n = cfg.resolution;
    let mut cells = vec![Pixel::Retained; n * n];
    cells.par_chunks_mut(n).enumerate().for_each(|(row, line)| {
        for (col, cell) in line.iter_mut().enumerate() {
            *cell = classify(t, cfg.pixel_center(row, col), radius, cfg.max_iter);
        }
    });
    let grid = ClassGrid {
        resolution: n,
        cells,
        origin: cfg.origin_pixel(),
    };
    let census = complement_components(&grid);
    Ok(JuliaSlice {
        params: params.clone(),
        config: *cfg,
        escape_radius: radius,
        grid,
        census,
    })
}

/// One slice per parameter, in order.
pub fn sweep<T: Float + Send + Sync>(
    params: &[FtParams],
    cfg: &RenderConfig<T>,
) -> Result<Vec<JuliaSlice<T>>, RenderError> {
    params.iter().map(|p| render_julia_slice(p, cfg)).collect()
}
