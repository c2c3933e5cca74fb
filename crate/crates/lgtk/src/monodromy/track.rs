//! Numerical parallel transport of pencil fibers along paths in the base:
//! warm-started simultaneous iteration with adaptive step halving until the
//! step-to-gap ratio makes root matching unambiguous.

use num_complex::Complex64;

use super::cpoly::{derivative, eval, residual_scale};
use super::MonodromyError;

/// The affine pencil `ψ_t(z) = Σ_{k≥1} z_coeffs[k] z^k + t_scale · t`.
#[derive(Clone, Debug)]
pub struct Pencil {
    /// Ascending coefficients of the `z`-part; slot 0 must be zero (the
    /// constant term is carried by `t`).
    pub z_coeffs: Vec<Complex64>,
    pub t_scale: Complex64,
}

impl Pencil {
    pub fn degree(&self) -> usize {
        self.z_coeffs.len() - 1
    }

    pub fn poly_at(&self, t: Complex64) -> Vec<Complex64> {
        let mut p = self.z_coeffs.clone();
        p[0] = self.t_scale * t;
        p
    }

    /// The fiber over `t`, freshly solved.
    pub fn fiber(&self, t: Complex64) -> Result<Vec<Complex64>, MonodromyError> {
        super::cpoly::all_roots(&self.poly_at(t))
    }

    /// Critical values of the pencil in the `t` coordinate.
    pub fn critical_values(&self) -> Result<Vec<Complex64>, MonodromyError> {
        let dz = derivative(&self.z_coeffs);
        let pts = super::cpoly::all_roots(&dz)?;
        Ok(pts
            .into_iter()
            .map(|z| {
                let mut zp = Complex64::new(0.0, 0.0);
                for (k, c) in self.z_coeffs.iter().enumerate().skip(1) {
                    zp += c * z.powu(k as u32);
                }
                -zp / self.t_scale
            })
            .collect())
    }
}

/// A path segment in the base: a line in the `t`-plane or a line in the
/// logarithmic plane (exponentiated while tracking).
#[derive(Clone, Copy, Debug)]
pub enum Seg {
    Line(Complex64, Complex64),
    Log(Complex64, Complex64),
}

impl Seg {
    pub fn at(&self, tau: f64) -> Complex64 {
        match self {
            Seg::Line(a, b) => a + (b - a) * tau,
            Seg::Log(a, b) => (a + (b - a) * tau).exp(),
        }
    }

    pub fn start(&self) -> Complex64 {
        self.at(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.at(1.0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TrackOptions {
    /// Relative residual target per corrected root.
    pub tol: f64,
    /// A step is accepted when every root moved less than `1/gap_ratio`
    /// times the distance to its nearest neighbour.
    pub gap_ratio: f64,
    pub min_step: f64,
    pub initial_step: f64,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions { tol: 1e-12, gap_ratio: 3.0, min_step: 1e-12, initial_step: 0.25 }
    }
}

fn correct(pencil: &Pencil, t: Complex64, z: &mut [Complex64], tol: f64) -> bool {
    let p = pencil.poly_at(t);
    let dp = derivative(&p);
    for _ in 0..60 {
        let mut worst = 0.0f64;
        for i in 0..z.len() {
            let pz = eval(&p, z[i]);
            let scale = residual_scale(&p, z[i]);
            let rel = pz.norm() / scale;
            if rel <= tol {
                continue;
            }
            worst = worst.max(rel);
            let dpz = eval(&dp, z[i]);
            let newton = if dpz.norm() > 1e-300 { pz / dpz } else { pz };
            let mut s = Complex64::new(0.0, 0.0);
            for (jj, zj) in z.iter().enumerate() {
                if jj != i {
                    let d = z[i] - zj;
                    if d.norm() > 1e-300 {
                        s += d.finv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() > 1e-3 { newton / denom } else { newton };
            z[i] -= step;
        }
        if worst == 0.0 {
            return true;
        }
    }
    // near-degenerate fibers cannot always reach the target relative
    // residual in doubles; a 1e−9 backward error still identifies the root
    z.iter().all(|&zi| {
        let pz = eval(&p, zi);
        pz.norm() <= (tol * 1e3).max(1e-9) * residual_scale(&p, zi)
    })
}

fn min_gap(z: &[Complex64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            g = g.min((z[i] - z[j]).norm());
        }
    }
    g
}

/// Tracks all fiber roots along the segments; the returned fiber is aligned
/// index-by-index with `start`.
pub fn track(
    pencil: &Pencil,
    segs: &[Seg],
    start: &[Complex64],
    opts: &TrackOptions,
) -> Result<Vec<Complex64>, MonodromyError> {
    let mut fiber: Vec<Complex64> = start.to_vec();
    for seg in segs {
        let mut tau = 0.0f64;
        let mut h = opts.initial_step;
        while tau < 1.0 {
            let step = h.min(1.0 - tau);
            let t_new = seg.at(tau + step);
            let mut trial = fiber.clone();
            let converged = correct(pencil, t_new, &mut trial, opts.tol);
            let mut ok = converged;
            if ok {
                let gap = min_gap(&trial);
                let moved = fiber
                    .iter()
                    .zip(&trial)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0f64, f64::max);
                ok = moved * opts.gap_ratio < gap || moved == 0.0;
            }
            if ok {
                fiber = trial;
                tau += step;
                h = (h * 1.7).min(0.25);
            } else {
                h *= 0.5;
                if h < opts.min_step {
                    return Err(MonodromyError::TrackingAmbiguity {
                        t_re: seg.at(tau).re,
                        t_im: seg.at(tau).im,
                    });
                }
            }
        }
    }
    Ok(fiber)
}

/// Matches each point of `from` to its nearest point of `to`; `None` when a
/// match is not injective or the second-nearest point is closer than
/// `gap_ratio` times the nearest.
pub fn match_fibers(from: &[Complex64], to: &[Complex64], gap_ratio: f64) -> Option<Vec<usize>> {
    let n = from.len();
    if to.len() != n {
        return None;
    }
    let mut assignment = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for (i, f) in from.iter().enumerate() {
        let mut dists: Vec<(f64, usize)> =
            to.iter().enumerate().map(|(j, t)| ((f - t).norm(), j)).collect();
        dists.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let (best, j) = dists[0];
        if n > 1 {
            let (second, _) = dists[1];
            if best > 0.0 && second < gap_ratio * best {
                return None;
            }
        }
        if taken[j] {
            return None;
        }
        taken[j] = true;
        assignment[i] = j;
    }
    Some(assignment)
}

/// Public transport wrapper: tracks along a `t`-plane polyline, optionally
/// pre-checking a clearance margin to known critical values; returns the end
/// fiber and, for a closed path, the induced permutation of the start fiber.
pub fn track_fiber(
    pencil: &Pencil,
    polyline: &[Complex64],
    start: &[Complex64],
    critical_values: Option<&[Complex64]>,
    margin: f64,
    opts: &TrackOptions,
) -> Result<(Vec<Complex64>, Option<Vec<usize>>), MonodromyError> {
    if polyline.len() < 2 {
        return Ok((start.to_vec(), Some((0..start.len()).collect())));
    }
    if let Some(crit) = critical_values {
        for w in polyline.windows(2) {
            for q in crit {
                if segment_distance(w[0], w[1], *q) < margin {
                    return Err(MonodromyError::PathTooClose {
                        t_re: q.re,
                        t_im: q.im,
                        margin,
                    });
                }
            }
        }
    }
    let segs: Vec<Seg> = polyline.windows(2).map(|w| Seg::Line(w[0], w[1])).collect();
    let end = track(pencil, &segs, start, opts)?;
    let closed = (polyline[0] - polyline[polyline.len() - 1]).norm() < 1e-12;
    let perm = if closed { match_fibers(&end, start, opts.gap_ratio) } else { None };
    Ok((end, perm))
}

fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quadratic() -> Pencil {
        // ψ = z² + t: critical value of w(z) = −z² at t = 0 only
        Pencil { z_coeffs: vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], t_scale: c(1.0, 0.0) }
    }

    #[test]
    fn constant_path_is_identity() {
        let p = quadratic();
        let t0 = c(1.0, 0.0);
        let fiber = p.fiber(t0).unwrap();
        let (end, perm) =
            track_fiber(&p, &[t0, t0], &fiber, None, 0.0, &TrackOptions::default()).unwrap();
        assert_eq!(perm, Some(vec![0, 1]));
        for (a, b) in fiber.iter().zip(&end) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn double_cover_loop_swaps_roots() {
        // w(z) = z² + z: fibers of z² + z + t; loop around the critical value
        // t = 1/4 swaps the two colliding roots
        let p = Pencil {
            z_coeffs: vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
            t_scale: c(1.0, 0.0),
        };
        let center = c(0.25, 0.0);
        let radius = 0.1;
        let mut loop_pts: Vec<Complex64> = (0..=48)
            .map(|k| {
                let th = std::f64::consts::TAU * k as f64 / 48.0;
                center + c(radius * th.cos(), radius * th.sin())
            })
            .collect();
        loop_pts[48] = loop_pts[0];
        let start = p.fiber(loop_pts[0]).unwrap();
        let (_, perm) =
            track_fiber(&p, &loop_pts, &start, None, 0.0, &TrackOptions::default()).unwrap();
        assert_eq!(perm, Some(vec![1, 0]), "transposition of the colliding pair");
    }

    #[test]
    fn cubic_local_monodromies() {
        // w = z³ + z²: loop around critical value −4/27 gives a transposition;
        // loop around 0 (the b = 2 collision) gives a 2-cycle among those roots
        let p = Pencil {
            z_coeffs: vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
            t_scale: c(1.0, 0.0),
        };
        // fiber of z³ + z² + t = 0; critical t-values: t = −w(crit) = 0, −4/27
        let circle = |center: Complex64, radius: f64| -> Vec<Complex64> {
            let mut pts: Vec<Complex64> = (0..=64)
                .map(|k| {
                    let th = std::f64::consts::TAU * k as f64 / 64.0;
                    center + c(radius * th.cos(), radius * th.sin())
                })
                .collect();
            pts[64] = pts[0];
            pts
        };
        for center in [c(-4.0 / 27.0, 0.0), c(0.0, 0.0)] {
            let pts = circle(center, 0.02);
            let start = p.fiber(pts[0]).unwrap();
            let (_, perm) =
                track_fiber(&p, &pts, &start, None, 0.0, &TrackOptions::default()).unwrap();
            let perm = perm.expect("loop closes");
            let moved: Vec<usize> = (0..3).filter(|&i| perm[i] != i).collect();
            assert_eq!(moved.len(), 2, "one transposition around {center}");
        }
    }

    #[test]
    fn inverse_path_composes_to_identity() {
        let p = quadratic();
        let path = vec![c(1.0, 0.0), c(1.0, 2.0), c(-3.0, 2.0), c(-3.0, 1.0)];
        let start = p.fiber(path[0]).unwrap();
        let opts = TrackOptions::default();
        let (mid, _) = track_fiber(&p, &path, &start, None, 0.0, &opts).unwrap();
        let back: Vec<Complex64> = path.iter().rev().copied().collect();
        let (end, _) = track_fiber(&p, &back, &mid, None, 0.0, &opts).unwrap();
        for (a, b) in start.iter().zip(&end) {
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn margin_violation_is_reported() {
        let p = quadratic();
        let path = vec![c(1.0, 0.0), c(-1.0, 0.0)];
        let start = p.fiber(path[0]).unwrap();
        let crit = [c(0.0, 0.0)];
        let r = track_fiber(&p, &path, &start, Some(&crit), 0.05, &TrackOptions::default());
        assert!(matches!(r, Err(MonodromyError::PathTooClose { .. })));
    }
}
