//! Floating-point verification lab for the cyclic-insertion description of
//! vanishing trees: regeneration families, critical values, radar-screen
//! path systems, fiber tracking, and extraction of numeric insertions and
//! trees. Everything else in the crate is exact; this module is the only
//! consumer of floating point.

pub mod contour;
pub mod cpoly;
pub mod radar;
pub mod stages;
pub mod track;
pub mod verify;

use crate::an::DegenerationJ;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use radar::{radar_screen, Lift, RadarScreen};
pub use stages::{lab, numeric_insertion, numeric_insertions, numeric_vanishing_tree, stage_structure, trees_equal_up_to_rotation, NumericLab, NumericStage, StageStructure};
pub use track::{track_fiber, Pencil, Seg, TrackOptions};
pub use verify::{surjectivity_search, verify_theorem, SurjectivityReport, TheoremReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("polynomial is degenerate (degree < 2 or zero derivative)")]
    DegeneratePolynomial,
    #[error("critical value at zero cannot be lifted")]
    ZeroCriticalValue,
    #[error("two critical values share a modulus (log radii {re_a} and {re_b}); perturb the coefficients")]
    EqualModulus { re_a: f64, re_b: f64 },
    #[error("expected {expected} branch shifts, got {got}")]
    BranchCount { expected: usize, got: usize },
    #[error("stage clusters are separated by less than a factor of {required} (got {got:.3}); use a smaller s")]
    ClusterSeparation { required: f64, got: f64 },
    #[error("cluster sizes {got:?} do not match the stage sizes {expected:?}")]
    ClusterSizes { expected: Vec<usize>, got: Vec<usize> },
    #[error("root matching became ambiguous near t = {t_re} + {t_im}i at the minimum step size")]
    TrackingAmbiguity { t_re: f64, t_im: f64 },
    #[error("path passes within {margin} of the critical value {t_re} + {t_im}i")]
    PathTooClose { t_re: f64, t_im: f64, margin: f64 },
    #[error("fiber cluster analysis failed: {0}")]
    ClusterStructure(String),
    #[error("loop monodromy has unexpected cycle structure: {0}")]
    LoopStructure(String),
}

/// The canonical integer height certifying the triangulation of a
/// degeneration: slope `i` on the `i`-th breakpoint interval, interior
/// points one above the fold, and height 0 at 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction {
    pub n: usize,
    /// `values[a]` for `a = 0..n+1`.
    pub values: Vec<i64>,
    /// Slopes on the breakpoint intervals, strictly increasing.
    pub slopes: Vec<i64>,
}

pub fn height_from_j(j: &DegenerationJ) -> HeightFunction {
    let n = j.n;
    let ks = j.breakpoints();
    let mut values = vec![0i64; n + 2];
    let mut slopes = Vec::with_capacity(j.stages());
    for (stage, w) in ks.windows(2).enumerate() {
        let slope = stage as i64 + 1;
        slopes.push(slope);
        let (lo, hi) = (w[0], w[1]);
        for a in lo + 1..=hi {
            let fold = values[lo] + slope * (a - lo) as i64;
            values[a] = if a == hi { fold } else { fold + 1 };
        }
    }
    HeightFunction { n, values, slopes }
}

/// The regeneration family `ψ(c, s, t)(z) = Σ c_i s^{η(i)} z^i + s^{η(0)} t`
/// at a fixed small `s`, with `c_i = 1` on the breakpoints.
#[derive(Clone, Debug)]
pub struct Regeneration {
    pub j: DegenerationJ,
    pub height: HeightFunction,
    pub s: f64,
    pub c: Vec<Complex64>,
    pub pencil: Pencil,
}

impl Regeneration {
    pub fn new(j: &DegenerationJ, s: f64, c: Vec<Complex64>) -> Regeneration {
        let n = j.n;
        assert_eq!(c.len(), n + 2);
        let height = height_from_j(j);
        let mut z_coeffs = vec![Complex64::new(0.0, 0.0); n + 2];
        for k in 1..=n + 1 {
            z_coeffs[k] = c[k] * s.powi(height.values[k] as i32);
        }
        let t_scale = Complex64::new(s.powi(height.values[0] as i32), 0.0);
        Regeneration { j: j.clone(), height, s, c, pencil: Pencil { z_coeffs, t_scale } }
    }

    /// Default coefficients: exactly 1 on breakpoints, `1 + 0.1·(u + iv)`
    /// with `u, v` uniform in `[−1, 1]` elsewhere, from a seeded generator.
    pub fn seeded(j: &DegenerationJ, s: f64, seed: u64) -> Regeneration {
        Regeneration::new(j, s, seeded_coefficients(j, seed))
    }
}

pub fn seeded_coefficients(j: &DegenerationJ, seed: u64) -> Vec<Complex64> {
    let n = j.n;
    let breaks: std::collections::BTreeSet<usize> = j.breakpoints().iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..=n + 1)
        .map(|i| {
            // draw for every slot to keep streams aligned across J's
            let u: f64 = rng.gen_range(-1.0..1.0);
            let v: f64 = rng.gen_range(-1.0..1.0);
            if i >= 1 && breaks.contains(&i) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(1.0 + 0.1 * u, 0.1 * v)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivision::{interval_config, interval_k_set};
    use crate::scalar::Scalar as _;
    use crate::Rat;
    use std::collections::BTreeSet;

    #[test]
    fn canonical_heights() {
        // all breakpoints: strictly convex, η(i) = i(i−1)/2
        let j = DegenerationJ::from_interior(3, &BTreeSet::from([2, 3])).unwrap();
        let h = height_from_j(&j);
        assert_eq!(h.values, vec![0, 0, 1, 3, 6]);
        assert_eq!(h.slopes, vec![1, 2, 3]);

        // J = {1,3}, n=2: single slope on [1,3], η(2) strictly above
        let j13 = DegenerationJ::from_breakpoints(2, vec![1, 3]).unwrap();
        let h13 = height_from_j(&j13);
        assert_eq!(h13.slopes, vec![1]);
        assert_eq!(h13.values[3] - h13.values[1], 2);
        assert!(h13.values[2] > h13.values[1] + 1 * (2 - 1) - 1);
        assert_eq!(h13.values[2], 2);

        // J = {1,2,4,8}: slopes 1, 2, 3
        let j248 = DegenerationJ::from_breakpoints(7, vec![1, 2, 4, 8]).unwrap();
        let h248 = height_from_j(&j248);
        assert_eq!(h248.slopes, vec![1, 2, 3]);
        assert_eq!(h248.values[2], 1);
        assert_eq!(h248.values[4], 5);
        assert_eq!(h248.values[8], 17);
    }

    #[test]
    fn height_induces_the_breakpoint_triangulation() {
        // cross-module oracle: the lower hull of the canonical height is the
        // triangulation with cells between consecutive breakpoints of {0} ∪ J
        for (n, ks) in [(2usize, vec![1, 3]), (3, vec![1, 2, 4]), (4, vec![1, 3, 5])] {
            let j = DegenerationJ::from_breakpoints(n, ks.clone()).unwrap();
            let h = height_from_j(&j);
            let cfg = interval_config::<Rat>(n);
            let heights: Vec<Rat> = h.values.iter().map(|&v| Rat::from_int(v)).collect();
            let sub = cfg.subdivision_from_height(&heights).unwrap();
            let expected_breaks: BTreeSet<usize> =
                ks.iter().copied().filter(|&k| k <= n).collect();
            assert_eq!(interval_k_set(&sub, n), expected_breaks, "J = {ks:?}");
            assert_eq!(sub.cells.len(), j.stages() + 1);
            for c in &sub.cells {
                assert_eq!(c.marked.len(), 2, "every cell is a plain segment");
            }
        }
    }

    #[test]
    fn seeded_coefficients_fix_breakpoints() {
        let j = DegenerationJ::from_breakpoints(4, vec![1, 3, 5]).unwrap();
        let c = seeded_coefficients(&j, 7);
        assert_eq!(c[1], Complex64::new(1.0, 0.0));
        assert_eq!(c[3], Complex64::new(1.0, 0.0));
        assert_eq!(c[5], Complex64::new(1.0, 0.0));
        assert!((c[2] - Complex64::new(1.0, 0.0)).norm() > 1e-6);
        // deterministic
        assert_eq!(c, seeded_coefficients(&j, 7));
    }
}
