//! Complex polynomial utilities: evaluation, derivative, simultaneous root
//! finding (Aberth–Ehrlich with Newton-polygon initial radii), and critical
//! data of one-variable pencils.

use num_complex::Complex64;

use super::MonodromyError;

/// Coefficients ascending: `p[k]` multiplies `z^k`.
pub fn eval(p: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn derivative(p: &[Complex64]) -> Vec<Complex64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

/// Backward-error scale: Σ |p_k| |z|^k, for relative residual tests.
pub fn residual_scale(p: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut acc = 0.0;
    let mut rk = 1.0;
    for c in p {
        acc += c.norm() * rk;
        rk *= r;
    }
    acc.max(f64::MIN_POSITIVE)
}

fn trim(p: &[Complex64]) -> &[Complex64] {
    let mut end = p.len();
    while end > 0 && p[end - 1].norm() == 0.0 {
        end -= 1;
    }
    &p[..end]
}

/// Initial root guesses from the upper convex hull of `(k, log|p_k|)`:
/// each hull edge of width `w` contributes `w` points on the circle of the
/// balanced radius.
fn initial_guesses(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let pts: Vec<(usize, f64)> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    // upper convex hull, left to right
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &(x, y) in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as f64 - x1 as f64) * (y - y1) - (x as f64 - x1 as f64) * (y2 - y1);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let mut guesses = Vec::with_capacity(n);
    for w in hull.windows(2) {
        let (l, yl) = w[0];
        let (r, yr) = w[1];
        let width = r - l;
        let radius = ((yl - yr) / width as f64).exp();
        for j in 0..width {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.37) / width as f64
                + 0.61 * l as f64;
            guesses.push(Complex64::from_polar(radius, theta));
        }
    }
    guesses
}

/// All roots of `p` by Aberth–Ehrlich iteration; deterministic for a given
/// coefficient vector.
pub fn all_roots(p: &[Complex64]) -> Result<Vec<Complex64>, MonodromyError> {
    let p = trim(p);
    if p.len() <= 1 {
        return if p.is_empty() {
            Err(MonodromyError::DegeneratePolynomial)
        } else {
            Ok(vec![])
        };
    }
    // peel off roots at the origin
    let ord = p.iter().position(|c| c.norm() > 0.0).unwrap();
    if ord > 0 {
        let mut out = vec![Complex64::new(0.0, 0.0); ord];
        out.extend(all_roots(&p[ord..])?);
        return Ok(out);
    }
    let dp = derivative(p);
    let mut z = initial_guesses(p);
    let n = z.len();
    debug_assert_eq!(n, p.len() - 1);
    let tol = 1e-14;
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pz = eval(p, z[i]);
            if pz.norm() <= tol * residual_scale(p, z[i]) {
                continue;
            }
            let dpz = eval(&dp, z[i]);
            let newton = pz / dpz;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s += (z[i] - zj).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            z[i] -= step;
            moved = moved.max(step.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    // final Newton polish
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let pz = eval(p, *zi);
            if pz.norm() <= 1e-15 * residual_scale(p, *zi) {
                break;
            }
            let dpz = eval(&dp, *zi);
            if dpz.norm() == 0.0 {
                break;
            }
            *zi -= pz / dpz;
        }
    }
    Ok(z)
}

/// Refines `z` as a root of `p` by Newton to the requested relative
/// residual; returns the refined root.
pub fn refine_root(p: &[Complex64], mut z: Complex64, rel_tol: f64) -> Complex64 {
    let dp = derivative(p);
    for _ in 0..60 {
        let pz = eval(p, z);
        if pz.norm() <= rel_tol * residual_scale(p, z) {
            break;
        }
        let dpz = eval(&dp, z);
        if dpz.norm() == 0.0 {
            break;
        }
        z -= pz / dpz;
    }
    z
}

/// Critical points and values of the polynomial map `u ↦ p(u)`: roots of
/// `p'` refined to relative residual below `1e−12`, paired with their values.
pub fn critical_data(p: &[Complex64]) -> Result<Vec<(Complex64, Complex64)>, MonodromyError> {
    let p = trim(p);
    if p.len() < 3 {
        return Err(MonodromyError::DegeneratePolynomial);
    }
    let dp = derivative(p);
    if trim(&dp).is_empty() {
        return Err(MonodromyError::DegeneratePolynomial);
    }
    let mut pts = all_roots(&dp)?;
    for z in pts.iter_mut() {
        *z = refine_root(&dp, *z, 1e-12);
    }
    let mut out: Vec<(Complex64, Complex64)> = pts.into_iter().map(|z| (z, eval(p, z))).collect();
    out.sort_by(|a, b| {
        let (ma, mb) = (a.1.norm(), b.1.norm());
        mb.partial_cmp(&ma)
            .unwrap()
            .then(a.1.arg().partial_cmp(&b.1.arg()).unwrap())
            .then(a.0.arg().partial_cmp(&b.0.arg()).unwrap())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_critical_point() {
        // u² + u: critical point −1/2, value −1/4
        let p = vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let cd = critical_data(&p).unwrap();
        assert_eq!(cd.len(), 1);
        assert!((cd[0].0 - c(-0.5, 0.0)).norm() < 1e-12);
        assert!((cd[0].1 - c(-0.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cubic_critical_data() {
        // u³ + u²: points 0 and −2/3, values 0 and 4/27
        let p = vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let mut cd = critical_data(&p).unwrap();
        cd.sort_by(|a, b| a.0.norm().partial_cmp(&b.0.norm()).unwrap());
        assert_eq!(cd.len(), 2);
        assert!(cd[0].0.norm() < 1e-9);
        assert!((cd[1].0 - c(-2.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((cd[1].1 - c(4.0 / 27.0, 0.0)).norm() < 1e-12);
        // nonzero critical point modulus = (b/(a+b))^{1/a} at a=1, b=2
        assert!((cd[1].0.norm() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn circuit_critical_values_sit_on_a_circle() {
        // u^{a+b} + u^b: a nonzero critical points at modulus (b/(a+b))^{1/a},
        // equally spaced in argument
        for (a, b) in [(2usize, 1usize), (3, 2), (4, 4)] {
            let mut p = vec![c(0.0, 0.0); a + b + 1];
            p[a + b] = c(1.0, 0.0);
            p[b] = c(1.0, 0.0);
            let cd = critical_data(&p).unwrap();
            let nonzero: Vec<_> = cd.iter().filter(|(z, _)| z.norm() > 1e-9).collect();
            assert_eq!(nonzero.len(), a);
            let r = (b as f64 / (a + b) as f64).powf(1.0 / a as f64);
            let mut args: Vec<f64> = Vec::new();
            for (z, _) in &nonzero {
                assert!((z.norm() - r).abs() < 1e-10, "a={a} b={b}");
                args.push(z.arg());
            }
            args.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for w in args.windows(2) {
                let gap = w[1] - w[0];
                assert!((gap - 2.0 * std::f64::consts::PI / a as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn random_polynomial_roots_have_small_residuals() {
        let p: Vec<Complex64> = (0..9)
            .map(|k| c((k as f64 * 0.7).sin() + 0.2, (k as f64 * 1.3).cos()))
            .collect();
        let roots = all_roots(&p).unwrap();
        assert_eq!(roots.len(), 8);
        for z in roots {
            assert!(eval(&p, z).norm() <= 1e-10 * residual_scale(&p, z));
        }
    }

    #[test]
    fn wide_magnitude_spread_roots() {
        // roots at 1e-3, 1, 1e3: coefficients span many orders of magnitude
        let r1 = c(1e-3, 0.0);
        let r2 = c(1.0, 0.0);
        let r3 = c(1e3, 0.0);
        // (z−r1)(z−r2)(z−r3)
        let p = vec![
            -(r1 * r2 * r3),
            r1 * r2 + r1 * r3 + r2 * r3,
            -(r1 + r2 + r3),
            c(1.0, 0.0),
        ];
        let mut roots = all_roots(&p).unwrap();
        roots.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        assert!((roots[0] - r1).norm() < 1e-9 * 1e-3 + 1e-12);
        assert!((roots[1] - r2).norm() < 1e-9);
        assert!((roots[2] - r3).norm() < 1e-6);
    }
}
