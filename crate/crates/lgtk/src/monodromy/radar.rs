//! Radar screens: distinguished bases of paths to critical values, built as
//! staircase polylines in the logarithmic plane and ordered by decreasing
//! modulus.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::MonodromyError;

#[derive(Clone, Debug)]
pub enum Lift {
    /// All imaginary parts in `[0, 2π)`.
    Fundamental,
    /// `2π`-branch shifts applied per value, indexed in decreasing-modulus
    /// order.
    Explicit(Vec<i32>),
}

/// A radar screen: log-plane lifts of the critical values sorted by
/// decreasing real part, and for each a staircase polyline out to the shared
/// base region, pairwise disjoint after an `ε` offset.
#[derive(Clone, Debug)]
pub struct RadarScreen {
    /// Lifted critical values, decreasing `Re`.
    pub lifts: Vec<Complex64>,
    /// `exp` of the lifts, same order.
    pub values: Vec<Complex64>,
    /// For each value, the polyline from the lift out to the base
    /// (`paths[i][0]` is the lift, the last point is the base level).
    pub paths: Vec<Vec<Complex64>>,
    /// Common base point in the log plane.
    pub base: Complex64,
    pub epsilon: f64,
}

/// Builds the radar screen for nonzero critical values with pairwise
/// distinct moduli (relative tolerance `1e−9`; ties must be perturbed by the
/// caller).
pub fn radar_screen(
    values: &[Complex64],
    lift: &Lift,
    epsilon: f64,
) -> Result<RadarScreen, MonodromyError> {
    if values.is_empty() {
        return Err(MonodromyError::DegeneratePolynomial);
    }
    if values.iter().any(|v| v.norm() == 0.0) {
        return Err(MonodromyError::ZeroCriticalValue);
    }
    let mut lifts: Vec<Complex64> = values
        .iter()
        .map(|v| {
            let mut theta = v.arg();
            if theta < 0.0 {
                theta += TAU;
            }
            Complex64::new(v.norm().ln(), theta)
        })
        .collect();
    lifts.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    for w in lifts.windows(2) {
        if (w[0].re - w[1].re).abs() < 1e-9 * (1.0 + w[0].re.abs()) {
            return Err(MonodromyError::EqualModulus { re_a: w[0].re, re_b: w[1].re });
        }
    }
    if let Lift::Explicit(shifts) = lift {
        if shifts.len() != lifts.len() {
            return Err(MonodromyError::BranchCount { expected: lifts.len(), got: shifts.len() });
        }
        for (w, &k) in lifts.iter_mut().zip(shifts) {
            w.im += TAU * k as f64;
        }
    }
    let r = lifts.len();
    let re_max = lifts[0].re;
    let re_min = lifts[r - 1].re;
    let base_re = re_max + (re_max - re_min) + TAU + 2.0;
    let base = Complex64::new(base_re, lifts[0].im);
    // keep column offsets well inside the smallest column gap
    let min_col_gap = lifts
        .windows(2)
        .map(|w| w[0].re - w[1].re)
        .fold(f64::INFINITY, f64::min);
    let epsilon = epsilon.min(0.08 * min_col_gap / r as f64);
    // Path i is the unperturbed nested staircase offset to the right of its
    // orientation by i·ε: horizontals drop by i·ε, verticals shift toward
    // the outside of their turn, so offset copies never cross each other or
    // another path's exclusive leg.
    let mut paths = Vec::with_capacity(r);
    for i in 0..r {
        let off = (i + 1) as f64 * epsilon;
        let mut pts = vec![lifts[i]];
        let mut y_level = lifts[i].im; // unperturbed level of the incoming horizontal
        let mut y_actual = lifts[i].im; // its offset copy (the own leg is exact)
        for k in (0..i).rev() {
            let rising = lifts[k].im > y_level;
            let x_col = lifts[k].re + if rising { off } else { -off };
            let y_next = lifts[k].im - off;
            push_point(&mut pts, Complex64::new(x_col, y_actual));
            push_point(&mut pts, Complex64::new(x_col, y_next));
            y_level = lifts[k].im;
            y_actual = y_next;
        }
        push_point(&mut pts, Complex64::new(base_re, y_actual));
        push_point(&mut pts, base);
        paths.push(pts);
    }
    let exp_values = paths_values(&lifts);
    Ok(RadarScreen { lifts, values: exp_values, paths, base, epsilon })
}

fn paths_values(lifts: &[Complex64]) -> Vec<Complex64> {
    lifts.iter().map(|w| w.exp()).collect()
}

fn push_point(pts: &mut Vec<Complex64>, p: Complex64) {
    if pts.last().map(|q| (q - p).norm() > 0.0).unwrap_or(true) {
        pts.push(p);
    }
}

impl RadarScreen {
    /// The path to value `i` traversed from the base inward.
    pub fn path_from_base(&self, i: usize) -> Vec<Complex64> {
        let mut p = self.paths[i].clone();
        p.reverse();
        p
    }

    /// Clips the inward path to the band `re_lo ≤ Re ≤ re_hi`, keeping the
    /// traversal order (outer to inner). Staircase `Re` is monotone inward.
    pub fn clip_inward(&self, i: usize, re_hi: f64, re_lo: f64) -> Vec<Complex64> {
        let path = self.path_from_base(i);
        let mut out: Vec<Complex64> = Vec::new();
        for seg in path.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let (mut a2, mut b2) = (a, b);
            if (a.re - b.re).abs() > 0.0 {
                // horizontal piece (Re decreases inward)
                debug_assert!(a.re >= b.re - 1e-12);
                if b.re > re_hi || a.re < re_lo {
                    continue;
                }
                if a.re > re_hi {
                    a2 = Complex64::new(re_hi, a.im);
                }
                if b.re < re_lo {
                    b2 = Complex64::new(re_lo, b.im);
                }
            } else {
                // vertical piece
                if a.re > re_hi || a.re < re_lo {
                    continue;
                }
            }
            push_point(&mut out, a2);
            push_point(&mut out, b2);
        }
        out
    }
}

/// Samples every path at `samples` points and reports the minimal pairwise
/// distance between distinct paths away from the shared base column.
pub fn min_pairwise_distance(screen: &RadarScreen, samples: usize) -> f64 {
    let sample = |path: &[Complex64]| -> Vec<Complex64> {
        let mut total = 0.0;
        for w in path.windows(2) {
            total += (w[1] - w[0]).norm();
        }
        if total == 0.0 {
            return vec![path[0]];
        }
        let mut pts = Vec::with_capacity(samples);
        for s in 0..samples {
            let mut target = total * s as f64 / (samples - 1) as f64;
            let mut p = path[0];
            for w in path.windows(2) {
                let len = (w[1] - w[0]).norm();
                if target <= len {
                    p = w[0] + (w[1] - w[0]) * (target / len.max(1e-300));
                    break;
                }
                target -= len;
                p = w[1];
            }
            pts.push(p);
        }
        pts
    };
    let cut = screen.base.re - 1.0;
    let mut min = f64::INFINITY;
    let sampled: Vec<Vec<Complex64>> = screen.paths.iter().map(|p| sample(p)).collect();
    for i in 0..sampled.len() {
        for j in i + 1..sampled.len() {
            for a in &sampled[i] {
                if a.re > cut {
                    continue;
                }
                for b in &sampled[j] {
                    if b.re > cut {
                        continue;
                    }
                    min = min.min((a - b).norm());
                }
            }
        }
    }
    min
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_value_is_a_ray() {
        let screen =
            radar_screen(&[Complex64::new(-0.25, 0.0)], &Lift::Fundamental, 0.01).unwrap();
        assert_eq!(screen.paths.len(), 1);
        assert_eq!(screen.paths[0].len(), 2);
        assert!((screen.lifts[0].im - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn two_values_make_a_staircase_ordered_by_modulus() {
        let vals = [Complex64::new(0.5, 0.2), Complex64::new(-2.0, 1.0)];
        let screen = radar_screen(&vals, &Lift::Fundamental, 0.02).unwrap();
        assert!(screen.lifts[0].re > screen.lifts[1].re);
        // the second path has the corner structure and stays disjoint
        assert!(screen.paths[1].len() >= 3);
        let d = min_pairwise_distance(&screen, 1000);
        assert!(d > 1e-4, "paths must not cross, min distance {d}");
    }

    #[test]
    fn equal_moduli_are_rejected() {
        let vals = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        assert!(matches!(
            radar_screen(&vals, &Lift::Fundamental, 0.01),
            Err(MonodromyError::EqualModulus { .. })
        ));
    }

    #[test]
    fn explicit_branch_shifts() {
        let vals = [Complex64::new(2.0, 0.1), Complex64::new(0.3, 0.7)];
        let screen = radar_screen(&vals, &Lift::Explicit(vec![0, 1]), 0.01).unwrap();
        assert!(screen.lifts[1].im > TAU);
        assert!(matches!(
            radar_screen(&vals, &Lift::Explicit(vec![0]), 0.01),
            Err(MonodromyError::BranchCount { .. })
        ));
    }

    #[test]
    fn roots_of_unity_pattern_non_crossing() {
        // a circuit-like pattern: equal-modulus values must be perturbed
        let vals: Vec<Complex64> = (0..4)
            .map(|k| {
                Complex64::from_polar(1.0 + 0.05 * k as f64, TAU * k as f64 / 4.0 + 0.3)
            })
            .collect();
        let screen = radar_screen(&vals, &Lift::Fundamental, 0.02).unwrap();
        assert_eq!(screen.paths.len(), 4);
        let d = min_pairwise_distance(&screen, 1000);
        assert!(d > 1e-4);
        // clip: the inward path to the smallest value crosses the band of
        // the larger ones
        let clipped = screen.clip_inward(3, screen.lifts[0].re, screen.lifts[3].re);
        assert!(clipped.len() >= 2);
        assert!(clipped.first().unwrap().re >= clipped.last().unwrap().re);
    }
}
