//! Grid census of sublevel-set components of `|p(u)|`: the pinching picture
//! behind the stage insertions. For `w = u^{a+b} + u^b` the sublevel set
//! `{|w| < r}` has one component above the critical modulus and `a + 1`
//! components below it.

use num_complex::Complex64;

use super::cpoly::eval;

/// Counts connected components (4-connectivity) of `{|p(u)| < r}` sampled on
/// an `n × n` grid over `[−window, window]²`.
pub fn sublevel_components(p: &[Complex64], r: f64, window: f64, n: usize) -> usize {
    let mut inside = vec![false; n * n];
    for iy in 0..n {
        for ix in 0..n {
            let x = -window + 2.0 * window * ix as f64 / (n - 1) as f64;
            let y = -window + 2.0 * window * iy as f64 / (n - 1) as f64;
            inside[iy * n + ix] = eval(p, Complex64::new(x, y)).norm() < r;
        }
    }
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut [usize], a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for iy in 0..n {
        for ix in 0..n {
            let idx = iy * n + ix;
            if !inside[idx] {
                continue;
            }
            if ix + 1 < n && inside[idx + 1] {
                union(&mut parent, idx, idx + 1);
            }
            if iy + 1 < n && inside[idx + n] {
                union(&mut parent, idx, idx + n);
            }
        }
    }
    let mut roots = std::collections::BTreeSet::new();
    for idx in 0..n * n {
        if inside[idx] {
            let r = find(&mut parent, idx);
            roots.insert(r);
        }
    }
    roots.len()
}

/// The circuit polynomial `u^{a+b} + u^b`.
pub fn circuit_polynomial(a: usize, b: usize) -> Vec<Complex64> {
    let mut p = vec![Complex64::new(0.0, 0.0); a + b + 1];
    p[a + b] = Complex64::new(1.0, 0.0);
    p[b] = Complex64::new(1.0, 0.0);
    p
}

/// Modulus of the nonzero critical values of `u^{a+b} + u^b`.
pub fn circuit_critical_modulus(a: usize, b: usize) -> f64 {
    let a = a as f64;
    let b = b as f64;
    let rpt = (b / (a + b)).powf(1.0 / a);
    rpt.powf(b) * a / (a + b)
}
