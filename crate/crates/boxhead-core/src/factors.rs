//! Ground-truth generative factors for the three box-scene dataset variants.
//!
//! Each scene is described by ten discrete factors. Five of them (wall hue,
//! floor hue, cube hue, azimuth, scale) are independent with ten values each.
//! The macro-level hue and the four micro-level hues form a two-level
//! hierarchy: every micro hue is the macro hue plus an independent discretized
//! noise offset, and in variant 1 the macro hue itself depends on the cube
//! hue. Noise distributions are discretized *before* conditioning values are
//! added: uniform noise into equal-width bin centers, Gaussian noise into
//! equal-probability bin centers.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Number of scalar factors in a [`FactorVector`].
pub const FACTOR_COUNT: usize = 10;

/// Column order used by every factor table in the crate.
pub const FACTOR_NAMES: [&str; FACTOR_COUNT] = [
    "wall_hue",
    "floor_hue",
    "cube_hue",
    "macro_hue",
    "micro_hue_1",
    "micro_hue_2",
    "micro_hue_3",
    "micro_hue_4",
    "azimuth",
    "scale",
];

/// Column indices of the macro-level factor group (floor, wall, cube hue,
/// azimuth, scale). The macro hue itself belongs to neither group.
pub const MACRO_FACTOR_COLUMNS: [usize; 5] = [0, 1, 2, 8, 9];
/// Column indices of the micro-level factor group (the four quadrant hues).
pub const MICRO_FACTOR_COLUMNS: [usize; 4] = [4, 5, 6, 7];

/// Ground-truth factor values for one scene.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorVector {
    pub wall_hue: f64,
    pub floor_hue: f64,
    pub cube_hue: f64,
    pub macro_hue: f64,
    pub micro_hue: [f64; 4],
    /// Radians in [-pi/6, pi/6].
    pub azimuth: f64,
    /// Unitless cube scale in [1, 1.25].
    pub scale: f64,
}

impl FactorVector {
    pub fn to_array(&self) -> [f64; FACTOR_COUNT] {
        [
            self.wall_hue,
            self.floor_hue,
            self.cube_hue,
            self.macro_hue,
            self.micro_hue[0],
            self.micro_hue[1],
            self.micro_hue[2],
            self.micro_hue[3],
            self.azimuth,
            self.scale,
        ]
    }

    pub fn from_array(a: [f64; FACTOR_COUNT]) -> Self {
        FactorVector {
            wall_hue: a[0],
            floor_hue: a[1],
            cube_hue: a[2],
            macro_hue: a[3],
            micro_hue: [a[4], a[5], a[6], a[7]],
            azimuth: a[8],
            scale: a[9],
        }
    }
}

/// How the macro-level hue is generated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MacroDist {
    /// Variant 1: Gaussian around the cube hue, discretized noise.
    GaussianAroundCube { sigma: f64 },
    /// Variants 2 and 3: uniform over [0, 1), discretized.
    Uniform,
}

/// Noise added to the macro hue to produce each micro hue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MicroNoise {
    Uniform { half_width: f64 },
    Gaussian { sigma: f64 },
}

/// Full generative description of one dataset variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantSpec {
    pub variant_id: u8,
    pub macro_dist: MacroDist,
    pub micro_noise: MicroNoise,
    pub macro_cardinality: usize,
    pub micro_cardinality: usize,
    pub other_cardinality: usize,
    /// Discretized macro noise offsets (variant 1) or uniform macro base
    /// values (variants 2, 3), precomputed from the distribution.
    macro_values: Vec<f64>,
    /// Discretized micro noise offsets.
    micro_offsets: Vec<f64>,
}

impl VariantSpec {
    pub fn new(variant_id: u8) -> Result<Self> {
        let (macro_dist, micro_noise) = match variant_id {
            1 => (
                MacroDist::GaussianAroundCube { sigma: 0.2 },
                MicroNoise::Uniform { half_width: 0.1 },
            ),
            2 => (MacroDist::Uniform, MicroNoise::Gaussian { sigma: 0.1 }),
            3 => (MacroDist::Uniform, MicroNoise::Gaussian { sigma: 0.2 }),
            other => {
                return Err(Error::Config(format!(
                    "unknown dataset variant {other}; expected 1, 2 or 3"
                )))
            }
        };
        let (macro_k, micro_k, other_k) = (7, 4, 10);
        let macro_values = match macro_dist {
            MacroDist::GaussianAroundCube { sigma } => (0..macro_k)
                .map(|i| discretize_gaussian(sigma, macro_k, i))
                .collect::<Result<Vec<_>>>()?,
            MacroDist::Uniform => (0..macro_k)
                .map(|i| discretize_uniform(0.0, 1.0, macro_k, i))
                .collect::<Result<Vec<_>>>()?,
        };
        let micro_offsets = match micro_noise {
            MicroNoise::Uniform { half_width } => (0..micro_k)
                .map(|i| discretize_uniform(-half_width, half_width, micro_k, i))
                .collect::<Result<Vec<_>>>()?,
            MicroNoise::Gaussian { sigma } => (0..micro_k)
                .map(|i| discretize_gaussian(sigma, micro_k, i))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(VariantSpec {
            variant_id,
            macro_dist,
            micro_noise,
            macro_cardinality: macro_k,
            micro_cardinality: micro_k,
            other_cardinality: other_k,
            macro_values,
            micro_offsets,
        })
    }

    /// Discretized macro base values (offsets for variant 1).
    pub fn macro_values(&self) -> &[f64] {
        &self.macro_values
    }

    /// Discretized micro noise offsets.
    pub fn micro_offsets(&self) -> &[f64] {
        &self.micro_offsets
    }
}

/// Bin-center value of an equal-width discretization of [lo, hi).
pub fn discretize_uniform(lo: f64, hi: f64, k: usize, index: usize) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::Contract(format!(
            "discretize_uniform: lo={lo} must be < hi={hi}"
        )));
    }
    if k == 0 || index >= k {
        return Err(Error::Contract(format!(
            "discretize_uniform: index {index} out of range for k={k}"
        )));
    }
    Ok(lo + (index as f64 + 0.5) * (hi - lo) / k as f64)
}

/// Equal-probability bin center of a zero-mean Gaussian: sigma * PhiInv((i+0.5)/k).
pub fn discretize_gaussian(sigma: f64, k: usize, index: usize) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Contract(format!(
            "discretize_gaussian: sigma={sigma} must be positive"
        )));
    }
    if k == 0 || index >= k {
        return Err(Error::Contract(format!(
            "discretize_gaussian: index {index} out of range for k={k}"
        )));
    }
    let p = (index as f64 + 0.5) / k as f64;
    let std_normal = Normal::new(0.0, 1.0).expect("unit normal");
    Ok(sigma * std_normal.inverse_cdf(p))
}

/// Wrap a hue onto the circle [0, 1).
pub fn wrap_hue(h: f64) -> Result<f64> {
    if !h.is_finite() {
        return Err(Error::Contract(format!("wrap_hue: non-finite input {h}")));
    }
    let r = h.rem_euclid(1.0);
    // rem_euclid can return exactly 1.0 for tiny negative inputs.
    Ok(if r >= 1.0 { 0.0 } else { r })
}

/// Draw one factor vector. Deterministic given (spec, rng_seed).
pub fn sample_factors(spec: &VariantSpec, rng_seed: u64) -> FactorVector {
    let mut rng = rng_from_seed(rng_seed);
    let k = spec.other_cardinality;
    // Fixed draw order: wall, floor, cube, macro, micro 1..4, azimuth, scale.
    let wall_hue = uniform_bin(&mut rng, 0.0, 1.0, k);
    let floor_hue = uniform_bin(&mut rng, 0.0, 1.0, k);
    let cube_hue = uniform_bin(&mut rng, 0.0, 1.0, k);
    let macro_base = spec.macro_values[rng.gen_range(0..spec.macro_cardinality)];
    let macro_hue = match spec.macro_dist {
        MacroDist::GaussianAroundCube { .. } => {
            wrap_hue(cube_hue + macro_base).expect("finite hue")
        }
        MacroDist::Uniform => macro_base,
    };
    let mut micro_hue = [0.0; 4];
    for m in &mut micro_hue {
        let off = spec.micro_offsets[rng.gen_range(0..spec.micro_cardinality)];
        *m = wrap_hue(macro_hue + off).expect("finite hue");
    }
    let azimuth = uniform_bin(&mut rng, -std::f64::consts::FRAC_PI_6, std::f64::consts::FRAC_PI_6, k);
    let scale = uniform_bin(&mut rng, 1.0, 1.25, k);
    FactorVector {
        wall_hue,
        floor_hue,
        cube_hue,
        macro_hue,
        micro_hue,
        azimuth,
        scale,
    }
}

fn uniform_bin(rng: &mut impl Rng, lo: f64, hi: f64, k: usize) -> f64 {
    let idx = rng.gen_range(0..k);
    discretize_uniform(lo, hi, k, idx).expect("valid bin")
}

/// Number of bins per hue variable in [`factor_dependency_strength`].
///
/// Dependence between the macro and micro hues is a statement about metric
/// proximity on the hue circle, not about the (injective) discrete value
/// mapping, so both variables are binned on a fixed grid coarser than the
/// 28-value micro support before the histogram is taken. 16 bins separates
/// the three variants with gaps of hundreds of standard errors at n = 1e5.
pub const DEPENDENCY_HUE_BINS: usize = 16;

/// Plug-in mutual information (nats) of two discrete variables given as
/// bin-index pairs over `bins_x` x `bins_y` cells.
pub fn plugin_mutual_information(
    pairs: &[(usize, usize)],
    bins_x: usize,
    bins_y: usize,
) -> f64 {
    let n = pairs.len() as f64;
    let mut joint = vec![0u64; bins_x * bins_y];
    let mut px = vec![0u64; bins_x];
    let mut py = vec![0u64; bins_y];
    for &(a, b) in pairs {
        joint[a * bins_y + b] += 1;
        px[a] += 1;
        py[b] += 1;
    }
    let mut mi = 0.0;
    for a in 0..bins_x {
        for b in 0..bins_y {
            let c = joint[a * bins_y + b];
            if c == 0 {
                continue;
            }
            let pj = c as f64 / n;
            mi += pj * (pj / (px[a] as f64 / n * (py[b] as f64 / n))).ln();
        }
    }
    mi
}

fn hue_bin(h: f64, bins: usize) -> usize {
    ((h * bins as f64) as usize).min(bins - 1)
}

/// Monte Carlo estimate of MI(macro hue, first micro hue) in nats under the
/// variant's generative process, hue binned at [`DEPENDENCY_HUE_BINS`].
pub fn factor_dependency_strength(spec: &VariantSpec, n: usize, rng_seed: u64) -> Result<f64> {
    if n < 10_000 {
        return Err(Error::Contract(format!(
            "factor_dependency_strength: n={n} is below the minimum of 10000"
        )));
    }
    let bins = DEPENDENCY_HUE_BINS;
    let pairs: Vec<(usize, usize)> = (0..n as u64)
        .map(|i| {
            let f = sample_factors(spec, crate::rng::sub_seed(rng_seed, i));
            (hue_bin(f.macro_hue, bins), hue_bin(f.micro_hue[0], bins))
        })
        .collect();
    Ok(plugin_mutual_information(&pairs, bins, bins))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::sub_seed;

    /// Independent probit oracle: bisection on the normal CDF computed by
    /// adaptive Simpson quadrature of the density. Shares no code with the
    /// implementation path above.
    fn quadrature_probit(p: f64) -> f64 {
        fn pdf(x: f64) -> f64 {
            (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
        }
        fn simpson(a: f64, b: f64, n: usize) -> f64 {
            let h = (b - a) / n as f64;
            let mut s = pdf(a) + pdf(b);
            for i in 1..n {
                let x = a + i as f64 * h;
                s += pdf(x) * if i % 2 == 0 { 2.0 } else { 4.0 };
            }
            s * h / 3.0
        }
        fn cdf(x: f64) -> f64 {
            0.5 + simpson(0.0, x, 4000)
        }
        let (mut lo, mut hi) = (-10.0_f64, 10.0_f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn discretize_uniform_examples() {
        assert_eq!(discretize_uniform(0.0, 1.0, 10, 0).unwrap(), 0.05);
        assert_eq!(discretize_uniform(0.0, 1.0, 10, 9).unwrap(), 0.95);
        assert!((discretize_uniform(-0.1, 0.1, 4, 1).unwrap() - (-0.025)).abs() < 1e-15);
        assert!(discretize_uniform(0.0, 1.0, 10, 10).is_err());
        assert!(discretize_uniform(1.0, 0.0, 10, 0).is_err());
    }

    #[test]
    fn discretize_gaussian_matches_quadrature_oracle() {
        // Frozen from the quadrature oracle (and checked against it here).
        let cases = [
            (0.1, 4, 3, 0.115_034_938_037_600_79),
            (0.2, 7, 3, 0.0),
            (0.2, 7, 6, 0.293_046_758_537_104_6),
            (0.2, 4, 0, -0.230_069_876_075_201_57),
        ];
        for (sigma, k, idx, expect) in cases {
            let got = discretize_gaussian(sigma, k, idx).unwrap();
            assert!(
                (got - expect).abs() < 1e-9,
                "dg({sigma},{k},{idx}) = {got}, frozen {expect}"
            );
            let oracle = sigma * quadrature_probit((idx as f64 + 0.5) / k as f64);
            assert!(
                (got - oracle).abs() < 1e-8,
                "dg({sigma},{k},{idx}) = {got}, oracle {oracle}"
            );
        }
        assert!(discretize_gaussian(-1.0, 4, 0).is_err());
        assert!(discretize_gaussian(1.0, 4, 4).is_err());
    }

    #[test]
    fn wrap_hue_examples() {
        assert!((wrap_hue(1.2).unwrap() - 0.2).abs() < 1e-15);
        assert!((wrap_hue(-0.05).unwrap() - 0.95).abs() < 1e-15);
        assert_eq!(wrap_hue(0.5).unwrap(), 0.5);
        assert_eq!(wrap_hue(1.0).unwrap(), 0.0);
        assert!(wrap_hue(f64::NAN).is_err());
        assert!(wrap_hue(f64::INFINITY).is_err());
    }

    #[test]
    fn wrap_hue_always_in_range() {
        for i in -1000..1000 {
            let h = i as f64 * 0.0137;
            let w = wrap_hue(h).unwrap();
            assert!((0.0..1.0).contains(&w), "wrap_hue({h}) = {w}");
        }
    }

    #[test]
    fn variant2_macro_on_seven_bin_centers() {
        let spec = VariantSpec::new(2).unwrap();
        for i in 0..500u64 {
            let f = sample_factors(&spec, sub_seed(11, i));
            let scaled = f.macro_hue * 7.0 - 0.5;
            assert!(
                (scaled - scaled.round()).abs() < 1e-12,
                "macro_hue {} is not a 7-bin center",
                f.macro_hue
            );
        }
    }

    #[test]
    fn variant1_macro_median_noise_keeps_cube_hue() {
        // discretize_gaussian(0.2, 7, 3) == 0, so whenever the median noise
        // bin is drawn the macro hue equals the cube hue exactly.
        let spec = VariantSpec::new(1).unwrap();
        let mut seen = 0;
        for i in 0..2000u64 {
            let f = sample_factors(&spec, sub_seed(5, i));
            let diff = wrap_hue(f.macro_hue - f.cube_hue).unwrap();
            let offset = if diff > 0.5 { diff - 1.0 } else { diff };
            if offset.abs() < 1e-12 {
                seen += 1;
            } else {
                // Otherwise the offset must be one of the 6 nonzero centers.
                assert!(
                    spec.macro_values()
                        .iter()
                        .any(|v| (v - offset).abs() < 1e-9),
                    "offset {offset} not a discretized noise value"
                );
            }
        }
        assert!(seen > 100, "median noise bin never drawn ({seen})");
    }

    #[test]
    fn variant3_micro_offset_example() {
        // Spec'd scenario: macro 0.9, lowest micro noise bin for sigma=0.2.
        let off = discretize_gaussian(0.2, 4, 0).unwrap();
        let micro = wrap_hue(0.9 + off).unwrap();
        assert!((micro - 0.669_930_123_924_798_4).abs() < 1e-9);
        assert!((micro - 0.6699).abs() < 1e-4);
    }

    #[test]
    fn sampling_is_deterministic() {
        for v in 1..=3 {
            let spec = VariantSpec::new(v).unwrap();
            let a = sample_factors(&spec, 12345);
            let b = sample_factors(&spec, 12345);
            assert_eq!(a, b);
        }
        assert!(VariantSpec::new(4).is_err());
        assert!(VariantSpec::new(0).is_err());
    }

    #[test]
    fn value_set_cardinalities() {
        use std::collections::BTreeSet;
        for v in 1..=3u8 {
            let spec = VariantSpec::new(v).unwrap();
            let mut sets: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); 10];
            for i in 0..20_000u64 {
                let f = sample_factors(&spec, sub_seed(99, i));
                for (j, x) in f.to_array().iter().enumerate() {
                    sets[j].insert(x.to_bits());
                }
            }
            for j in [0usize, 1, 2, 8, 9] {
                assert_eq!(sets[j].len(), 10, "variant {v} factor {j}");
            }
            // Base cardinalities: the macro *offset* set has 7 values and each
            // micro offset set has 4; the realized value sets are products of
            // base draws with their conditioning values.
            match v {
                1 => assert!(sets[3].len() > 7, "variant 1 macro values compound"),
                _ => assert_eq!(sets[3].len(), 7, "variant {v} macro"),
            }
        }
    }

    #[test]
    fn micro_offsets_have_base_cardinality_four() {
        use std::collections::BTreeSet;
        for v in 1..=3u8 {
            let spec = VariantSpec::new(v).unwrap();
            let mut offsets = BTreeSet::new();
            for i in 0..5_000u64 {
                let f = sample_factors(&spec, sub_seed(1234, i));
                for m in f.micro_hue {
                    let d = wrap_hue(m - f.macro_hue).unwrap();
                    let off = if d > 0.5 { d - 1.0 } else { d };
                    offsets.insert((off * 1e12).round() as i64);
                }
            }
            assert_eq!(offsets.len(), 4, "variant {v} micro offsets: {offsets:?}");
        }
    }

    #[test]
    fn plugin_mi_synthetic_endpoints() {
        // Independent pair: MI ~ 0.
        let mut rng = rng_from_seed(1);
        use rand::Rng;
        let pairs: Vec<(usize, usize)> =
            (0..100_000).map(|_| (rng.gen_range(0..8), rng.gen_range(0..8))).collect();
        let mi = plugin_mutual_information(&pairs, 8, 8);
        assert!(mi.abs() < 2e-3, "independent MI = {mi}");

        // Identical pair: MI == H(X) = ln 8 for uniform X.
        let pairs: Vec<(usize, usize)> = (0..100_000)
            .map(|_| {
                let x = rng.gen_range(0..8);
                (x, x)
            })
            .collect();
        let mi = plugin_mutual_information(&pairs, 8, 8);
        assert!((mi - (8.0f64).ln()).abs() < 1e-3, "identical MI = {mi}");
    }

    #[test]
    fn dependency_strength_orders_variants_smoke() {
        let mut vals = Vec::new();
        for v in 1..=3u8 {
            let spec = VariantSpec::new(v).unwrap();
            vals.push(factor_dependency_strength(&spec, 20_000, 7).unwrap());
        }
        assert!(
            vals[0] > vals[1] && vals[1] > vals[2],
            "dependency strengths not strictly decreasing: {vals:?}"
        );
        let spec = VariantSpec::new(1).unwrap();
        assert!(factor_dependency_strength(&spec, 100, 7).is_err());
    }
}
