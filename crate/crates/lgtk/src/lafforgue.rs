//! The Lafforgue polytope `Σ(A) + Δ^A`, the explicit facet matrix of the
//! interval case, and the classification of its facets by pointed coarse
//! subdivisions.

use crate::linalg::primitive_integer;
use crate::polytope::{standard_simplex, Polytope};
use crate::scalar::Scalar;
use crate::subdivision::{PointConfiguration, SubdivisionError};
use num_bigint::BigInt;
use serde::Serialize;

/// Minkowski sum of the secondary polytope and the standard simplex of
/// `R^A`; its normal fan refines the secondary fan by pointings.
pub fn lafforgue_polytope<S: Scalar>(
    config: &PointConfiguration<S>,
) -> Result<Polytope<S>, SubdivisionError> {
    let (secondary, _) = config.secondary_polytope()?;
    let simplex = standard_simplex::<S>(config.len());
    Ok(secondary.minkowski_sum(&simplex)?)
}

/// The `(n+1) × (3n+2)` matrix pairing the facet-supporting functionals of
/// the interval Lafforgue polytope with the basis `f_0, …, f_n` of the
/// sum-zero hyperplane. Block structure:
/// top row `(−1 0 ⋯ 0 | 0 ⋯ 0 | 1 ⋯ 1 | 1 −1)`, lower block `(C_n | −I | −I | 0 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiMatrix {
    pub n: usize,
    /// `matrix[row][col]`, rows indexed by `f_0..f_n`, columns by the facet
    /// generators: drops `g_i`, right splits, left splits, two verticals.
    pub matrix: Vec<Vec<i64>>,
}

pub fn an_xi_matrix(n: usize) -> XiMatrix {
    assert!(n >= 1, "interval facet matrix requires n ≥ 1");
    let cols = 3 * n + 2;
    let mut m = vec![vec![0i64; cols]; n + 1];
    for i in 1..=n {
        // drop g_i: pairing with f_0 is −1 only for i = 1; Cartan column below
        m[0][i - 1] = if i == 1 { -1 } else { 0 };
        for j in 1..=n {
            m[j][i - 1] = if i == j {
                2
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
        }
        // right split g_{2i}: −f_i^∨ component
        m[i][n + i - 1] = -1;
        // left split g_{3i}: top 1, −f_i^∨ component
        m[0][2 * n + i - 1] = 1;
        m[i][2 * n + i - 1] = -1;
    }
    // verticals
    m[0][3 * n] = 1;
    m[0][3 * n + 1] = -1;
    XiMatrix { n, matrix: m }
}

/// The supporting functionals named by the columns of [`an_xi_matrix`], as
/// elements of `(Z^A)^∨` (length `n+2`).
pub fn an_xi_generators(n: usize) -> Vec<Vec<i64>> {
    assert!(n >= 1);
    let len = n + 2;
    let mut gens = Vec::with_capacity(3 * n + 2);
    for i in 1..=n {
        let mut g = vec![0i64; len];
        g[i] = 1;
        gens.push(g);
    }
    for i in 1..=n {
        // ramp to the right of i: η(j) = j − i for j > i
        let mut g = vec![0i64; len];
        for (j, slot) in g.iter_mut().enumerate().take(len).skip(i + 1) {
            *slot = (j - i) as i64;
        }
        gens.push(g);
    }
    for i in 1..=n {
        // ramp to the left of i: η(j) = i − j for j < i
        let mut g = vec![0i64; len];
        for (j, slot) in g.iter_mut().enumerate().take(i) {
            *slot = (i - j) as i64;
        }
        gens.push(g);
    }
    let down: Vec<i64> = (0..len).map(|j| -(j as i64)).collect();
    let up: Vec<i64> = (0..len).map(|j| j as i64).collect();
    gens.push(down);
    gens.push(up);
    gens
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FacetType {
    InteriorPointDrop,
    RightPointedSplit,
    LeftPointedSplit,
    Vertical0,
    VerticalTop,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledFacet {
    /// Index into the Lafforgue polytope's facet list.
    pub facet: usize,
    #[serde(rename = "type")]
    pub ty: FacetType,
    pub index: usize,
    /// The pointing set of the pointed coarse subdivision.
    pub pointing: Vec<usize>,
    pub normal: Vec<i64>,
}

/// Pairs `⟨N, f_j⟩` of an ambient functional with the sum-zero basis
/// `f_0 = e_0 − e_1`, `f_j = −e_{j−1} + 2e_j − e_{j+1}`.
fn pair_with_gamma_basis<S: Scalar>(normal: &[S], n: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(normal[0].clone() - normal[1].clone());
    for j in 1..=n {
        let v = S::zero() - normal[j - 1].clone() + S::from_int(2) * normal[j].clone()
            - normal[j + 1].clone();
        out.push(v);
    }
    out
}

fn same_up_to_positive_scale(a: &[BigInt], b: &[BigInt]) -> bool {
    // both primitive with direction preserved, so equality suffices
    a == b
}

/// Matches each facet of the interval Lafforgue polytope (up to positive
/// scaling in the pairing with the `f`-basis) to a column of `an_xi_matrix`,
/// returning `matching[facet] = column`. Fails if the correspondence is not
/// a bijection.
pub fn match_facets_to_xi_columns<S: Scalar>(
    lafforgue: &Polytope<S>,
    n: usize,
) -> Option<Vec<usize>> {
    let xi = an_xi_matrix(n);
    if lafforgue.facets().len() != 3 * n + 2 {
        return None;
    }
    let cols: Vec<Vec<BigInt>> = (0..3 * n + 2)
        .map(|c| {
            let col: Vec<S> = (0..=n).map(|r| S::from_int(xi.matrix[r][c])).collect();
            primitive_integer(&col)
        })
        .collect();
    let mut matching = Vec::with_capacity(lafforgue.facets().len());
    let mut used = vec![false; cols.len()];
    for f in lafforgue.facets() {
        // inner functional minimized on the facet
        let inner: Vec<S> = f.normal.iter().map(|x| S::zero() - x.clone()).collect();
        let paired = pair_with_gamma_basis(&inner, n);
        let prim = primitive_integer(&paired);
        let col = (0..cols.len()).find(|&c| !used[c] && same_up_to_positive_scale(&prim, &cols[c]))?;
        used[col] = true;
        matching.push(col);
    }
    Some(matching)
}

/// Classifies every facet of the interval Lafforgue polytope by its pointed
/// coarse subdivision: `n` interior-point drops, `n` right-pointed splits
/// (pointing `{0..i}`), `n` left-pointed splits (pointing `{i..n+1}`), and
/// the two vertical facets.
pub fn an_pointed_facet_labels<S: Scalar>(n: usize) -> Result<Vec<LabeledFacet>, SubdivisionError> {
    assert!(n >= 1);
    let config = crate::subdivision::interval_config::<S>(n);
    let poly = lafforgue_polytope(&config)?;
    let matching = match_facets_to_xi_columns(&poly, n).ok_or_else(|| {
        SubdivisionError::NotASubdivision("facets do not match the interval facet matrix".into())
    })?;
    let mut out = Vec::with_capacity(matching.len());
    for (facet, &col) in matching.iter().enumerate() {
        let (ty, index, pointing) = if col < n {
            let i = col + 1;
            let pointing: Vec<usize> = (0..=n + 1).filter(|&j| j != i).collect();
            (FacetType::InteriorPointDrop, i, pointing)
        } else if col < 2 * n {
            let i = col - n + 1;
            (FacetType::RightPointedSplit, i, (0..=i).collect())
        } else if col < 3 * n {
            let i = col - 2 * n + 1;
            (FacetType::LeftPointedSplit, i, (i..=n + 1).collect())
        } else if col == 3 * n {
            (FacetType::Vertical0, 0, vec![0])
        } else {
            (FacetType::VerticalTop, n + 1, vec![n + 1])
        };
        let normal: Vec<i64> = poly.facets()[facet]
            .normal
            .iter()
            .map(|x| i64::try_from(&x.numer_big()).expect("primitive facet normal fits i64"))
            .collect();
        out.push(LabeledFacet { facet, ty, index, pointing, normal });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;
    use crate::subdivision::interval_config;
    use crate::Rat;
    use num_traits::Zero;
    use std::collections::BTreeMap;

    #[test]
    fn xi_matrix_small_instances() {
        let xi1 = an_xi_matrix(1);
        assert_eq!(xi1.matrix, vec![vec![-1, 0, 1, 1, -1], vec![2, -1, -1, 0, 0]]);
        let xi2 = an_xi_matrix(2);
        assert_eq!(xi2.matrix.len(), 3);
        assert_eq!(xi2.matrix[0].len(), 8);
        // Cartan block C₂ in the lower-left
        assert_eq!(xi2.matrix[1][0], 2);
        assert_eq!(xi2.matrix[2][0], -1);
        assert_eq!(xi2.matrix[1][1], -1);
        assert_eq!(xi2.matrix[2][1], 2);
        assert_eq!(xi2.matrix[0], vec![-1, 0, 0, 0, 1, 1, 1, -1]);
    }

    #[test]
    fn xi_generators_pair_to_the_matrix() {
        for n in 1..=3usize {
            let xi = an_xi_matrix(n);
            let gens = an_xi_generators(n);
            assert_eq!(gens.len(), 3 * n + 2);
            for (c, g) in gens.iter().enumerate() {
                let gs: Vec<Rat> = crate::linalg::int_vec(g);
                let paired = pair_with_gamma_basis(&gs, n);
                for (r, row) in xi.matrix.iter().enumerate() {
                    assert_eq!(paired[r], Rat::from_int(row[c]), "n={n} col={c} row={r}");
                }
            }
        }
    }

    #[test]
    fn interval_lafforgue_dimension_and_facets() {
        for (n, expected_dim) in [(1usize, 2usize), (2, 3)] {
            let cfg = interval_config::<Rat>(n);
            let p = lafforgue_polytope(&cfg).unwrap();
            assert_eq!(p.dim(), expected_dim, "dim = |A| − 1");
            assert_eq!(p.facets().len(), 3 * n + 2, "3n+2 facets at n={n}");
        }
    }

    #[test]
    fn interval_lafforgue_vertex_count_and_simplicity() {
        // vertices ↔ pointed triangulations (K, k), k ∈ K ∪ {0, n+1}
        for n in 1..=3usize {
            let cfg = interval_config::<Rat>(n);
            let p = lafforgue_polytope(&cfg).unwrap();
            let expected: usize =
                (0u64..(1 << n)).map(|mask| mask.count_ones() as usize + 2).sum();
            assert_eq!(p.vertices().len(), expected, "Σ (|K|+2) at n={n}");
            // simple polytope ⟺ simplicial normal fan
            let dim = p.dim();
            for vi in 0..p.vertices().len() {
                let count =
                    p.vertex_facet_incidence().iter().filter(|inc| inc.contains(&vi)).count();
                assert_eq!(count, dim, "vertex {vi} lies on dim-many facets");
            }
        }
    }

    #[test]
    fn facets_match_xi_columns_bijectively() {
        for n in 1..=3usize {
            let cfg = interval_config::<Rat>(n);
            let p = lafforgue_polytope(&cfg).unwrap();
            let matching = match_facets_to_xi_columns(&p, n).expect("bijective matching");
            let mut seen = vec![false; 3 * n + 2];
            for &c in &matching {
                assert!(!seen[c]);
                seen[c] = true;
            }
        }
    }

    #[test]
    fn facet_labels_count() {
        for n in 1..=2usize {
            let labels = an_pointed_facet_labels::<Rat>(n).unwrap();
            let mut counts: BTreeMap<FacetType, usize> = BTreeMap::new();
            for l in &labels {
                *counts.entry(l.ty).or_default() += 1;
            }
            assert_eq!(counts[&FacetType::InteriorPointDrop], n);
            assert_eq!(counts[&FacetType::RightPointedSplit], n);
            assert_eq!(counts[&FacetType::LeftPointedSplit], n);
            assert_eq!(counts[&FacetType::Vertical0], 1);
            assert_eq!(counts[&FacetType::VerticalTop], 1);
            for l in &labels {
                if l.ty == FacetType::RightPointedSplit {
                    assert_eq!(l.pointing, (0..=l.index).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn lafforgue_cones_refine_secondary_cones() {
        // every maximal cone of the Lafforgue fan lies in a secondary cone:
        // each facet functional at a Lafforgue vertex u = φ_T + e_a is
        // minimized over the secondary polytope at φ_T
        let n = 2usize;
        let cfg = interval_config::<Rat>(n);
        let (secondary, _) = cfg.secondary_polytope().unwrap();
        let simplex = standard_simplex::<Rat>(cfg.len());
        let laf = secondary.minkowski_sum(&simplex).unwrap();
        for (vi, u) in laf.vertices().iter().enumerate() {
            let mut decomp = None;
            for sv in secondary.vertices() {
                for ev in simplex.vertices() {
                    if crate::linalg::add(sv, ev) == *u {
                        assert!(decomp.is_none(), "decomposition is unique");
                        decomp = Some(sv.clone());
                    }
                }
            }
            let phi = decomp.expect("vertex decomposes");
            for (fi, inc) in laf.vertex_facet_incidence().iter().enumerate() {
                if !inc.contains(&vi) {
                    continue;
                }
                let inner: Vec<Rat> = laf.facets()[fi]
                    .normal
                    .iter()
                    .map(|x| Rat::zero() - x.clone())
                    .collect();
                let min_at_phi = dot(&inner, &phi);
                for sv in secondary.vertices() {
                    assert!(dot(&inner, sv) >= min_at_phi);
                }
            }
        }
    }
}
