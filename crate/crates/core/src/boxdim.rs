//! Box-counting dimension of function graphs sampled on 4-adic grids.
//!
//! Counting is by column oscillation: a column `[c delta, (c+1) delta]`
//! contributes `floor(max / delta) - floor(min / delta) + 1` boxes, over the
//! sample points it contains (boundary points belong to both neighbours).
//! For graphs of functions this differs from literal mesh counting by a
//! bounded factor and gives the same dimension.

use crate::error::Error;
use crate::lambda::{numerator, Quad4, MAX_SCALE};

pub const DEFAULT_POINT_CAP: u64 = 1 << 24;

/// Oversampling between the finest mesh and the sample grid, as a power of 4.
pub const OVERSAMPLE: u32 = 2;

/// Largest slope difference accepted between an interval and its image under `x -> 4x`.
pub const RESCALE_TOLERANCE: f64 = 0.05;

/// Function values at `z 4^-m` for `z0 <= z <= z0 + values.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    z0: u64,
    m: u32,
    values: Vec<f64>,
}

impl GraphSample {
    /// Samples `f(z)` for every grid index `z0 <= z <= z1` at spacing `4^-m`.
    pub fn from_grid(z0: u64, z1: u64, m: u32, cap: u64, f: impl Fn(u64) -> f64) -> Result<Self, Error> {
        if z1 <= z0 {
            return Err(Error::InvalidArgument("sample interval is empty".into()));
        }
        if m > MAX_SCALE {
            return Err(Error::InvalidArgument(format!(
                "resolution 4^-{m} exceeds 4^-{MAX_SCALE}"
            )));
        }
        let points = z1 - z0 + 1;
        if points > cap {
            return Err(Error::GridTooLarge { points, cap });
        }
        Ok(GraphSample {
            z0,
            m,
            values: (z0..=z1).map(f).collect(),
        })
    }

    pub fn resolution(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `(x, y)` pairs in increasing `x`.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let scale = 4f64.powi(self.m as i32);
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &y)| ((self.z0 + i as u64) as f64 / scale, y))
    }

    /// Grid index range `(z0, z1)`.
    pub fn span(&self) -> (u64, u64) {
        (self.z0, self.z0 + self.values.len() as u64 - 1)
    }
}

/// `lambda` at every grid point `z 4^-m` of `[alpha, beta]`.
pub fn sample_graph(alpha: &Quad4, beta: &Quad4, m: u32) -> Result<GraphSample, Error> {
    sample_graph_with_cap(alpha, beta, m, DEFAULT_POINT_CAP)
}

pub fn sample_graph_with_cap(alpha: &Quad4, beta: &Quad4, m: u32, cap: u64) -> Result<GraphSample, Error> {
    if alpha >= beta {
        return Err(Error::InvalidArgument(format!(
            "need alpha < beta, got {alpha} and {beta}"
        )));
    }
    if m == 0 || m < alpha.scale() || m < beta.scale() {
        return Err(Error::InvalidArgument(format!(
            "grid 4^-{m} does not contain the endpoints"
        )));
    }
    let z0 = alpha.numerator_at(m).ok_or(Error::Overflow("grid index"))?;
    let z1 = beta.numerator_at(m).ok_or(Error::Overflow("grid index"))?;
    if z1 - z0 + 1 > cap {
        return Err(Error::GridTooLarge {
            points: z1 - z0 + 1,
            cap,
        });
    }
    let scale = 4f64.powi(m as i32);
    GraphSample::from_grid(z0, z1, m, cap, |z| {
        let x = Quad4::new(z, m).expect("grid point is positive");
        numerator(&x).to_f64() / (z as f64 / scale).sqrt()
    })
}

/// Boxes met by each width-`4^-j` column, left to right.
pub fn column_counts(sample: &GraphSample, j: u32) -> Result<Vec<u64>, Error> {
    if sample.m < j + 1 {
        return Err(Error::ResolutionTooCoarse {
            sample: sample.m,
            mesh: j,
        });
    }
    let width = 1u64 << (2 * (sample.m - j));
    let inv_delta = 4f64.powi(j as i32);
    let (z0, z1) = sample.span();
    let first = z0 / width;
    let last = z1.div_ceil(width).max(first + 1) - 1;
    let mut out = Vec::with_capacity((last - first + 1) as usize);
    for c in first..=last {
        let lo = (c * width).max(z0);
        let hi = ((c + 1) * width).min(z1);
        if lo > hi {
            continue;
        }
        let slice = &sample.values[(lo - z0) as usize..=(hi - z0) as usize];
        let (min, max) = slice
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
        out.push(((max * inv_delta).floor() - (min * inv_delta).floor()) as u64 + 1);
    }
    Ok(out)
}

/// `N_delta` at `delta = 4^-j`.
pub fn box_count(sample: &GraphSample, j: u32) -> Result<u64, Error> {
    Ok(column_counts(sample, j)?.iter().sum())
}

/// Least-squares line through `(ln(1/delta), ln N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination.
    pub r2: f64,
}

/// Fits `ln N` against `ln(1/delta)` over `(delta, N)` entries.
pub fn fit_dimension(entries: &[(f64, u64)]) -> Result<Fit, Error> {
    if entries.len() < 3 {
        return Err(Error::DegenerateFit("fewer than three entries"));
    }
    if entries.iter().any(|&(d, n)| d.is_nan() || d <= 0.0 || n == 0) {
        return Err(Error::DegenerateFit("non-positive mesh size or count"));
    }
    let xs: Vec<f64> = entries.iter().map(|&(d, _)| -d.ln()).collect();
    let ys: Vec<f64> = entries.iter().map(|&(_, n)| (n as f64).ln()).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all mesh sizes are equal"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(Fit { slope, intercept, r2 })
}

/// One row of a box-count table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxEntry {
    pub j: u32,
    pub delta: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountReport {
    pub alpha: Quad4,
    pub beta: Quad4,
    pub sample_depth: u32,
    /// Ordered by decreasing `delta`.
    pub entries: Vec<BoxEntry>,
    pub fit: Fit,
}

/// Counts at `delta = 4^-j` for `j_min <= j <= j_max` and fits the slope.
pub fn box_count_report(
    sample: &GraphSample,
    alpha: Quad4,
    beta: Quad4,
    j_min: u32,
    j_max: u32,
) -> Result<BoxCountReport, Error> {
    if j_min >= j_max {
        return Err(Error::InvalidArgument(format!(
            "need jmin < jmax, got {j_min} and {j_max}"
        )));
    }
    let entries = (j_min..=j_max)
        .map(|j| {
            Ok(BoxEntry {
                j,
                delta: 4f64.powi(-(j as i32)),
                count: box_count(sample, j)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let pairs: Vec<(f64, u64)> = entries.iter().map(|e| (e.delta, e.count)).collect();
    let fit = fit_dimension(&pairs)?;
    Ok(BoxCountReport {
        alpha,
        beta,
        sample_depth: sample.m,
        entries,
        fit,
    })
}

/// Box counts of the graph of `lambda` on `[alpha, beta]` sampled at depth `m`.
pub fn lambda_report(alpha: &Quad4, beta: &Quad4, j_min: u32, j_max: u32, m: u32) -> Result<BoxCountReport, Error> {
    let sample = sample_graph(alpha, beta, m)?;
    box_count_report(&sample, *alpha, *beta, j_min, j_max)
}

/// The main report with its two diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub main: BoxCountReport,
    /// Same counts on `[4 alpha, 4 beta]`, where `lambda(4x) = lambda(x)`.
    pub rescaled: BoxCountReport,
    /// Same counts with the sample grid refined once more.
    pub refined: BoxCountReport,
}

impl DimensionReport {
    pub fn slope(&self) -> f64 {
        self.main.fit.slope
    }

    pub fn rescale_gap(&self) -> f64 {
        (self.main.fit.slope - self.rescaled.fit.slope).abs()
    }

    pub fn rescale_ok(&self) -> bool {
        self.rescale_gap() <= RESCALE_TOLERANCE
    }

    pub fn refinement_gap(&self) -> f64 {
        (self.main.fit.slope - self.refined.fit.slope).abs()
    }
}

/// Box-dimension estimate for the graph of `lambda` on `[alpha, beta]`
/// with meshes `4^-j_min .. 4^-j_max`, sampled at `4^-(j_max + 2)`.
pub fn dimension_report(alpha: &Quad4, beta: &Quad4, j_min: u32, j_max: u32) -> Result<DimensionReport, Error> {
    let m = j_max + OVERSAMPLE;
    let main = lambda_report(alpha, beta, j_min, j_max, m)?;
    let rescaled = lambda_report(&alpha.times4()?, &beta.times4()?, j_min, j_max, m)?;
    let refined = lambda_report(alpha, beta, j_min, j_max, m + 1)?;
    Ok(DimensionReport {
        main,
        rescaled,
        refined,
    })
}

/// Graph of `A sum_{n>=0} 2^-n dist(4^n x, Z)`, truncated at `4^-m`; its
/// box dimension is `3/2`. Samples `[z0, z1] 4^-m`.
pub fn takagi_sample(z0: u64, z1: u64, m: u32, amplitude: f64) -> Result<GraphSample, Error> {
    GraphSample::from_grid(z0, z1, m, DEFAULT_POINT_CAP, |z| {
        let mut sum = 0.0;
        let mut weight = 1.0;
        // 4^n z / 4^m mod 1 is exact on the grid
        for n in 0..=m {
            let period = 1u64 << (2 * (m - n));
            let r = z % period;
            let frac = r.min(period - r) as f64 / period as f64;
            sum += weight * frac;
            weight *= 0.5;
        }
        amplitude * sum
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::rho;

    fn q(s: &str) -> Quad4 {
        s.parse().unwrap()
    }

    #[test]
    fn lambda_sample_shape() {
        let s = sample_graph(&q("1"), &q("4"), 2).unwrap();
        assert_eq!(s.len(), 49);
        let v = s.values();
        assert!((v[0] - 3.0).abs() < 1e-15);
        assert!((v[48] - 3.0).abs() < 1e-15);
        for (i, n) in [(16usize, 2u64), (32, 3)] {
            let want = (rho(n) + 1) as f64 / (n as f64).sqrt();
            assert!((v[i] - want).abs() < 1e-14);
        }
        let xs: Vec<f64> = s.points().map(|p| p.0).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert!(sample_graph(&q("4"), &q("1"), 2).is_err());
        assert!(matches!(
            sample_graph_with_cap(&q("1"), &q("4"), 8, 1000),
            Err(Error::GridTooLarge { .. })
        ));
    }

    #[test]
    fn elementary_counts() {
        // constant 3 on [1, 2]
        let s = GraphSample::from_grid(16, 32, 2, DEFAULT_POINT_CAP, |_| 3.0).unwrap();
        assert_eq!(box_count(&s, 1).unwrap(), 4);
        // y = x on [0, 1]
        let s = GraphSample::from_grid(0, 16, 2, DEFAULT_POINT_CAP, |z| z as f64 / 16.0).unwrap();
        assert_eq!(box_count(&s, 1).unwrap(), 8);
        assert!(matches!(box_count(&s, 2), Err(Error::ResolutionTooCoarse { .. })));
    }

    #[test]
    fn fits() {
        let synthetic: Vec<(f64, u64)> = (1..=6).map(|j| (4f64.powi(-j), 8u64.pow(j as u32))).collect();
        let fit = fit_dimension(&synthetic).unwrap();
        assert!((fit.slope - 1.5).abs() < 1e-12);
        assert!((fit.r2 - 1.0).abs() < 1e-12);
        let flat = [(0.5, 4), (0.25, 4), (0.125, 4)];
        assert_eq!(fit_dimension(&flat).unwrap().slope, 0.0);
        assert!(fit_dimension(&[(0.5, 2), (0.5, 2), (0.5, 2)]).is_err());
        assert!(fit_dimension(&[(0.5, 2), (0.25, 4)]).is_err());
    }

    #[test]
    fn calibration() {
        let line = GraphSample::from_grid(1 << 18, 1 << 20, 9, DEFAULT_POINT_CAP, |z| z as f64 / 262144.0).unwrap();
        let r = box_count_report(&line, q("1"), q("4"), 3, 7).unwrap();
        assert!((r.fit.slope - 1.0).abs() < 0.03, "line slope {}", r.fit.slope);
        let t = takagi_sample(0, 1 << 18, 9, 64.0).unwrap();
        let r = box_count_report(&t, q("1"), q("4"), 3, 7).unwrap();
        assert!((r.fit.slope - 1.5).abs() < 0.03, "takagi slope {}", r.fit.slope);
    }

    #[test]
    fn counts_grow_as_mesh_shrinks() {
        let s = sample_graph(&q("1"), &q("4"), 7).unwrap();
        let counts: Vec<u64> = (1..=5).map(|j| box_count(&s, j).unwrap()).collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
    }

    #[test]
    fn per_column_lower_bound() {
        let (alpha, beta) = (q("1/4"), q("1"));
        let s = sample_graph(&alpha, &beta, 9).unwrap();
        for k in 4..=7u32 {
            if 3 * (1u64 << k) >= alpha.numerator_at(k).unwrap() {
                continue;
            }
            let bound = ((1u64 << k) as f64 / (2.0 * beta.to_f64().sqrt())).floor() as u64;
            let cols = column_counts(&s, k).unwrap();
            assert!(cols.iter().all(|&c| c >= bound), "k = {k}");
        }
    }
}
