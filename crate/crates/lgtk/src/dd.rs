//! Double description over the integers: extreme rays of a pointed cone
//! `{x : ⟨a_i, x⟩ ≥ 0}`. Rays are kept as primitive integer vectors so the
//! arithmetic never leaves `BigInt`. Used for exact facet enumeration via the
//! polar cone; no general-position assumption is made.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::cmp::Ordering;

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reduce(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    /// Tight set over the constraints processed so far, as a bitset.
    zero: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn popcount(a: &[u64]) -> u32 {
    a.iter().map(|x| x.count_ones()).sum()
}

/// Extreme rays of the pointed cone `{x : ⟨a_i, x⟩ ≥ 0 for all i}`.
///
/// Panics if no full-rank subset of constraints exists (which would mean the
/// cone is not pointed).
pub fn extreme_rays(constraints: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    assert!(!constraints.is_empty());
    let dim = constraints[0].len();
    let words = constraints.len().div_ceil(64);

    // Initial simplicial cone from `dim` independent constraints.
    let mut basis_idx: Vec<usize> = Vec::new();
    {
        use crate::linalg::{rank, from_bigints};
        use crate::Rat;
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        for (i, c) in constraints.iter().enumerate() {
            let cand: Vec<Rat> = from_bigints(c);
            let mut trial = chosen.clone();
            trial.push(cand.clone());
            if rank(&trial) > chosen.len() {
                chosen.push(cand);
                basis_idx.push(i);
                if chosen.len() == dim {
                    break;
                }
            }
        }
        assert_eq!(basis_idx.len(), dim, "cone is not pointed: constraint normals do not span");
    }

    // Rays of the initial cone: columns of the inverse of the basis matrix.
    let mut rays: Vec<Ray> = {
        use crate::linalg::{from_bigints, solve};
        use crate::Rat;
        let a_rows: Vec<Vec<Rat>> = basis_idx.iter().map(|&i| from_bigints(&constraints[i])).collect();
        (0..dim)
            .map(|j| {
                let mut e = vec![Rat::zero(); dim];
                e[j] = num_traits::One::one();
                let col = solve(&a_rows, &e).expect("basis is invertible");
                let mut v = crate::linalg::primitive_integer(&col);
                reduce(&mut v);
                Ray { v, zero: vec![0; words] }
            })
            .collect()
    };

    let mut processed: Vec<usize> = basis_idx.clone();
    for r in rays.iter_mut() {
        for (k, &ci) in processed.iter().enumerate() {
            if idot(&r.v, &constraints[ci]).is_zero() {
                bit_set(&mut r.zero, k);
            }
        }
    }

    for (ci, cons) in constraints.iter().enumerate() {
        if basis_idx.contains(&ci) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(&r.v, cons)).collect();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            match v.cmp(&BigInt::zero()) {
                Ordering::Greater => plus.push(i),
                Ordering::Less => minus.push(i),
                Ordering::Equal => {}
            }
        }
        let slot = processed.len();
        processed.push(ci);
        if minus.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                r.zero.resize(words, 0);
                if vals[i].is_zero() {
                    bit_set(&mut r.zero, slot);
                }
            }
            continue;
        }
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &m in &minus {
                let common = intersect(&rays[p].zero, &rays[m].zero);
                // rank lower bound: adjacent rays share ≥ dim−2 tight constraints
                if dim >= 2 && (popcount(&common) as usize) < dim - 2 {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == m || !subset(&common, &r.zero));
                if !adjacent {
                    continue;
                }
                let mut v: Vec<BigInt> = (0..rays[p].v.len())
                    .map(|j| &vals[p] * &rays[m].v[j] - &vals[m] * &rays[p].v[j])
                    .collect();
                reduce(&mut v);
                let mut zero = common.clone();
                bit_set(&mut zero, slot);
                new_rays.push(Ray { v, zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i] < BigInt::zero() {
                continue;
            }
            let mut r = r.clone();
            if vals[i].is_zero() {
                bit_set(&mut r.zero, slot);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_rays() {
        let cons = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        let rays = extreme_rays(&cons);
        assert_eq!(rays.len(), 3);
        assert!(rays.contains(&iv(&[1, 0, 0])));
    }

    #[test]
    fn square_cone() {
        // cone over the square [-1,1]^2 at height 1: x3 ≥ ±x1, x3 ≥ ±x2
        let cons = vec![
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
        ];
        let rays = extreme_rays(&cons);
        assert_eq!(rays.len(), 4);
        assert!(rays.contains(&iv(&[1, 1, 1])));
        assert!(rays.contains(&iv(&[-1, -1, 1])));
    }

    #[test]
    fn redundant_constraints_are_harmless() {
        let cons = vec![
            iv(&[1, 0, 1]),
            iv(&[-1, 0, 1]),
            iv(&[0, 1, 1]),
            iv(&[0, -1, 1]),
            iv(&[0, 0, 1]),    // redundant
            iv(&[1, 1, 3]),    // redundant
        ];
        let rays = extreme_rays(&cons);
        assert_eq!(rays.len(), 4);
    }

    #[test]
    fn cone_over_pentagon() {
        // pentagon (2,0),(0,2),(−2,0),(−1,−2),(1,−2) at height 1
        let cons = vec![
            iv(&[-1, -1, 2]),
            iv(&[1, -1, 2]),
            iv(&[2, 1, 4]),
            iv(&[0, 1, 2]),
            iv(&[-2, 1, 4]),
        ];
        let rays = extreme_rays(&cons);
        assert_eq!(rays.len(), 5);
        assert!(rays.contains(&iv(&[2, 0, 1])));
        assert!(rays.contains(&iv(&[-1, -2, 1])));
    }
}
