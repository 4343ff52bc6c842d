//! Average Euclidean displacement `||P(v + g) - P(v)||` as a function of the
//! scalar gap `g`.
//!
//! Start points are drawn with ChaCha8, a counter-based generator: the
//! generator is seeded from the 64-bit seed and gap `g` reads stream `g`, so
//! each gap's samples are fixed by `(seed, g)` alone and gaps can be evaluated
//! in any order or in parallel.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cells::Cell;
use crate::error::{Error, Result};
use crate::recurrence::{encode, LatticePoint};

use super::zcurve::z_encode;

pub const DEFAULT_SEED: u64 = 0x5fc5fc;

/// The scalar-to-point map being measured.
#[derive(Debug, Clone, Copy)]
pub enum DimredCurve<'a> {
    Cell(&'a Cell),
    ZCurve { rank: usize },
}

impl DimredCurve<'_> {
    pub fn rank(&self) -> usize {
        match self {
            DimredCurve::Cell(c) => c.rank(),
            DimredCurve::ZCurve { rank } => *rank,
        }
    }

    pub fn side(&self) -> u32 {
        match self {
            DimredCurve::Cell(c) => c.side(),
            DimredCurve::ZCurve { .. } => 2,
        }
    }

    fn point(&self, u: u64) -> LatticePoint {
        let u = BigUint::from(u);
        match self {
            DimredCurve::Cell(c) => encode(&u, c),
            DimredCurve::ZCurve { rank } => z_encode(&u, *rank).expect("rank checked"),
        }
    }

    fn names(&self) -> (&'static str, String) {
        match self {
            DimredCurve::Cell(c) => ("cell", c.variant().to_string()),
            DimredCurve::ZCurve { .. } => ("zcurve", "-".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimredConfig {
    pub max_gap: u64,
    pub samples: u64,
    /// Scalars are drawn from `[0, s^(d*levels) - g)`; `None` picks
    /// [`default_domain_levels`].
    pub domain_levels: Option<u64>,
    pub seed: u64,
}

impl Default for DimredConfig {
    fn default() -> Self {
        Self { max_gap: 100, samples: 4096, domain_levels: None, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapMean {
    pub gap: u64,
    pub mean_distance: f64,
    pub samples: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimredSeries {
    pub curve: String,
    pub rank: usize,
    pub side: u32,
    pub variant: String,
    pub seed: u64,
    pub domain_levels: u64,
    pub gaps: Vec<GapMean>,
}

impl DimredSeries {
    pub fn means(&self) -> Vec<f64> {
        self.gaps.iter().map(|g| g.mean_distance).collect()
    }

    /// `curve,d,s,variant,gap,mean_distance,samples,seed` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("curve,d,s,variant,gap,mean_distance,samples,seed\n");
        self.write_rows(&mut out);
        out
    }

    /// Data rows only, for concatenating several series under one header.
    pub fn write_rows(&self, out: &mut String) {
        for g in &self.gaps {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.curve,
                self.rank,
                self.side,
                self.variant,
                g.gap,
                format_significant(g.mean_distance, 6),
                g.samples,
                self.seed
            );
        }
    }
}

/// Smallest `m` with `s^(d*m) >= 2^20`.
pub fn default_domain_levels(side: u32, rank: usize) -> u64 {
    let target = 1u128 << 20;
    let mut nodes = 1u128;
    let mut m = 0;
    while nodes < target {
        nodes = nodes.saturating_mul((side as u128).pow(rank as u32));
        m += 1;
    }
    m
}

pub fn dimred_profile(curve: DimredCurve<'_>, config: &DimredConfig) -> Result<DimredSeries> {
    let rank = curve.rank();
    let side = curve.side();
    if rank < 2 {
        return Err(Error::Argument("rank must be at least 2".into()));
    }
    if config.max_gap == 0 || config.samples == 0 {
        return Err(Error::Argument("max_gap and samples must be positive".into()));
    }
    let levels = config.domain_levels.unwrap_or_else(|| default_domain_levels(side, rank));
    let domain = u32::try_from(rank as u64 * levels)
        .ok()
        .and_then(|e| (side as u64).checked_pow(e))
        .ok_or_else(|| Error::Argument("sampling domain exceeds 64 bits".into()))?;
    if domain <= config.max_gap || domain - config.max_gap < config.samples {
        return Err(Error::Argument(format!(
            "domain of {domain} points is too small for {} samples at gap {}",
            config.samples, config.max_gap
        )));
    }

    let gaps: Vec<GapMean> = (1..=config.max_gap)
        .into_par_iter()
        .map(|gap| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(gap);
            let mut total = 0.0f64;
            for _ in 0..config.samples {
                let v = rng.gen_range(0..domain - gap);
                let sq = curve.point(v).squared_distance(&curve.point(v + gap));
                total += sq.to_f64().expect("finite").sqrt();
            }
            GapMean { gap, mean_distance: total / config.samples as f64, samples: config.samples }
        })
        .collect();

    let (name, variant) = curve.names();
    Ok(DimredSeries {
        curve: name.into(),
        rank,
        side,
        variant,
        seed: config.seed,
        domain_levels: levels,
        gaps,
    })
}

/// Least-squares slope of `ln(mean)` against `ln(gap)`.
pub fn loglog_slope(series: &DimredSeries) -> Result<f64> {
    if series.gaps.len() < 10 {
        return Err(Error::Fit(format!("need at least 10 gaps, have {}", series.gaps.len())));
    }
    if series.gaps.iter().any(|g| g.gap == 0 || g.mean_distance.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Fit("gaps and means must be positive".into()));
    }
    let xs: Vec<f64> = series.gaps.iter().map(|g| (g.gap as f64).ln()).collect();
    let ys: Vec<f64> = series.gaps.iter().map(|g| g.mean_distance.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all gaps are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    // Rounding can carry into the next decade, e.g. 9.999995 -> 10.0000.
    let rounded: f64 = format!("{:.*e}", digits - 1, x).parse().unwrap_or(x);
    let exp = if rounded.abs() >= 10f64.powi(exp + 1) { exp + 1 } else { exp };
    let text = if exp < -4 || exp >= digits as i32 {
        format!("{:.*e}", digits - 1, x)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    };
    if text.contains('e') {
        let (mantissa, e) = text.split_once('e').expect("has exponent");
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{e}")
    } else {
        trim_zeros(&text).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
