//! Dense exact linear algebra: elimination, solving, nullspaces, affine
//! charts for dimension-deficient point sets, and primitive integer
//! normalization of rational vectors.

use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn scale<S: Scalar>(a: &[S], c: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

pub fn is_zero_vec<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn int_vec<S: Scalar>(v: &[i64]) -> Vec<S> {
    v.iter().map(|&x| S::from_int(x)).collect()
}

/// Row echelon form in place; returns pivot column indices.
pub fn row_echelon<S: Scalar>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for j in c..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    row_echelon(&mut m).len()
}

/// Any solution of `A x = b`, or `None` if inconsistent.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_echelon(&mut m);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right nullspace of `A` (rows of the result).
pub fn nullspace<S: Scalar>(a: &[Vec<S>]) -> Vec<Vec<S>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<S>> = a.to_vec();
    let pivots = row_echelon(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = S::zero() - m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix.
pub fn det<S: Scalar>(a: &[Vec<S>]) -> S {
    let n = a.len();
    let mut m: Vec<Vec<S>> = a.to_vec();
    let mut d = S::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return S::zero();
        };
        if p != c {
            m.swap(c, p);
            d = S::zero() - d;
        }
        d = d * m[c][c].clone();
        let inv = S::one() / m[c][c].clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for j in c..n {
                let t = m[c][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
    }
    d
}

/// Normalized (lattice) volume of the simplex on `pts`: |det| of the edge
/// matrix, so a unimodular simplex has volume 1.
pub fn simplex_normalized_volume<S: Scalar>(pts: &[Vec<S>]) -> S {
    let d = pts.len() - 1;
    let rows: Vec<Vec<S>> = (1..=d).map(|i| sub(&pts[i], &pts[0])).collect();
    debug_assert!(rows.iter().all(|r| r.len() == d));
    det(&rows).abs()
}

/// Clears denominators and divides by the content, keeping direction.
pub fn primitive_integer<S: Scalar>(v: &[S]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(&x.denom_big());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer_big() * (&lcm / x.denom_big()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn from_bigints<S: Scalar>(v: &[BigInt]) -> Vec<S> {
    v.iter().map(|x| S::from_big_ratio(x, &BigInt::one())).collect()
}

/// An affine chart for the span of a point set: an origin and independent
/// direction vectors. Lets dimension-deficient hulls run in full-dimensional
/// intrinsic coordinates while keeping ambient data recoverable.
#[derive(Clone, Debug)]
pub struct AffineChart<S: Scalar> {
    pub origin: Vec<S>,
    /// Independent ambient directions spanning the point set's span.
    pub directions: Vec<Vec<S>>,
}

impl<S: Scalar> AffineChart<S> {
    pub fn from_points(points: &[Vec<S>]) -> Self {
        assert!(!points.is_empty());
        let origin = points[0].clone();
        let mut directions: Vec<Vec<S>> = Vec::new();
        let mut echelon: Vec<Vec<S>> = Vec::new();
        for p in &points[1..] {
            let d = sub(p, &origin);
            let mut trial = echelon.clone();
            trial.push(d.clone());
            if row_echelon(&mut trial).len() > echelon.len() {
                directions.push(d);
                echelon = trial;
            }
        }
        AffineChart { origin, directions }
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    /// Intrinsic coordinates of `p`, or `None` if `p` is outside the span.
    pub fn coords(&self, p: &[S]) -> Option<Vec<S>> {
        let diff = sub(p, &self.origin);
        if self.directions.is_empty() {
            return if is_zero_vec(&diff) { Some(vec![]) } else { None };
        }
        // columns are the directions
        let m = self.ambient_dim();
        let k = self.dim();
        let a: Vec<Vec<S>> = (0..m)
            .map(|i| (0..k).map(|j| self.directions[j][i].clone()).collect())
            .collect();
        let x = solve(&a, &diff)?;
        // `solve` tolerates underdetermined systems; verify exactly.
        let mut recon = self.origin.clone();
        for (j, c) in x.iter().enumerate() {
            recon = add(&recon, &scale(&self.directions[j], c));
        }
        if recon == p.to_vec() {
            Some(x)
        } else {
            None
        }
    }

    pub fn to_ambient_point(&self, coords: &[S]) -> Vec<S> {
        let mut p = self.origin.clone();
        for (j, c) in coords.iter().enumerate() {
            p = add(&p, &scale(&self.directions[j], c));
        }
        p
    }

    /// Lifts an intrinsic linear functional to an ambient one agreeing on the
    /// span: `n = B (BᵀB)⁻¹ ñ`.
    pub fn normal_to_ambient(&self, intrinsic: &[S]) -> Vec<S> {
        let k = self.dim();
        assert_eq!(intrinsic.len(), k);
        let gram: Vec<Vec<S>> = (0..k)
            .map(|i| (0..k).map(|j| dot(&self.directions[i], &self.directions[j])).collect())
            .collect();
        let y = solve(&gram, intrinsic).expect("Gram matrix of independent directions is invertible");
        let mut n = vec![S::zero(); self.ambient_dim()];
        for (j, c) in y.iter().enumerate() {
            n = add(&n, &scale(&self.directions[j], c));
        }
        n
    }

    /// Equalities `(u, u·origin)` cutting out the affine span.
    pub fn span_equations(&self) -> Vec<(Vec<S>, S)> {
        if self.dim() == self.ambient_dim() {
            return vec![];
        }
        let rows: Vec<Vec<S>> = self.directions.clone();
        let kernel = if rows.is_empty() {
            (0..self.ambient_dim())
                .map(|i| {
                    let mut v = vec![S::zero(); self.ambient_dim()];
                    v[i] = S::one();
                    v
                })
                .collect()
        } else {
            nullspace(&rows)
        };
        kernel
            .into_iter()
            .map(|u| {
                let c = dot(&u, &self.origin);
                (u, c)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        int_vec(xs)
    }

    #[test]
    fn solve_and_nullspace() {
        let a = vec![v(&[1, 2]), v(&[2, 4])];
        let b = v(&[3, 6]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(dot(&a[0], &x), Rat::from_int(3));
        assert!(solve(&a, &v(&[3, 7])).is_none());
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        assert!(dot(&a[0], &ns[0]).is_zero());
    }

    #[test]
    fn determinant_and_volume() {
        let a = vec![v(&[2, 0]), v(&[0, 3])];
        assert_eq!(det(&a), Rat::from_int(6));
        let tri = vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])];
        assert_eq!(simplex_normalized_volume(&tri), Rat::from_int(1));
    }

    #[test]
    fn chart_round_trip() {
        // a 1-dimensional set inside the plane
        let pts = vec![v(&[0, 0]), v(&[2, 2]), v(&[5, 5])];
        let chart = AffineChart::from_points(&pts);
        assert_eq!(chart.dim(), 1);
        let c = chart.coords(&v(&[5, 5])).unwrap();
        assert_eq!(chart.to_ambient_point(&c), v(&[5, 5]));
        assert!(chart.coords(&v(&[1, 0])).is_none());
        let eqs = chart.span_equations();
        assert_eq!(eqs.len(), 1);
        let (u, c0) = &eqs[0];
        assert_eq!(&dot(u, &v(&[2, 2])), c0);
    }

    #[test]
    fn primitive_direction() {
        let w = vec![Rat::from_fraction(1, 2), Rat::from_fraction(-3, 4), Rat::from_int(0)];
        let p = primitive_integer(&w);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
