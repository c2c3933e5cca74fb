//! Exact polytopes: V- and H-representations, face lattices, Minkowski sums,
//! normal fans and combinatorial isomorphism.
//!
//! A polytope may sit in a higher-dimensional ambient space; computations run
//! in intrinsic coordinates of its affine span and results are mapped back,
//! so vertex counts never depend on tolerances.

use crate::dd;
use crate::linalg::{self, dot, AffineChart};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("empty point list")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("functional is constant on the polytope")]
    ConstantFunctional,
    #[error("polytope must have dimension at least 1")]
    ZeroDimensional,
}

/// Facet inequality `⟨normal, x⟩ ≤ offset` with primitive integer data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

#[derive(Clone, Debug)]
pub struct Polytope<S: Scalar> {
    ambient_dim: usize,
    /// Extreme points, sorted lexicographically.
    vertices: Vec<Vec<S>>,
    chart: AffineChart<S>,
    /// Intrinsic coordinates of the vertices, same order.
    vertex_coords: Vec<Vec<S>>,
    facets: Vec<Facet<S>>,
    /// Equalities cutting out the affine span when dimension-deficient.
    equations: Vec<(Vec<S>, S)>,
    /// Per facet: sorted incident vertex indices.
    incidence: Vec<Vec<usize>>,
    lattice: OnceLock<FaceLattice>,
}

/// The graded face poset, from the empty face (rank −1) up to the polytope.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    /// Indices of the faces of each dimension: `by_dim[0]` is the empty face
    /// bucket at rank −1, `by_dim[r + 1]` the faces of dimension `r`.
    pub by_dim: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: isize,
    pub children: Vec<usize>,
    pub parents: Vec<usize>,
}

impl<S: Scalar> Polytope<S> {
    /// Convex hull of a nonempty point list with a common dimension.
    /// Dimension-deficient input is handled by working in the affine span.
    pub fn hull(points: &[Vec<S>]) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyInput);
        }
        let ambient = points[0].len();
        for p in points {
            if p.len() != ambient {
                return Err(GeometryError::DimensionMismatch { expected: ambient, got: p.len() });
            }
        }
        let mut pts: Vec<Vec<S>> = points.to_vec();
        pts.sort();
        pts.dedup();
        let chart = AffineChart::from_points(&pts);
        let k = chart.dim();
        let equations = chart.span_equations();
        if k == 0 {
            let p = pts[0].clone();
            return Ok(Polytope {
                ambient_dim: ambient,
                vertices: vec![p],
                vertex_coords: vec![vec![]],
                chart,
                facets: vec![],
                equations,
                incidence: vec![],
                lattice: OnceLock::new(),
            });
        }
        let coords: Vec<Vec<S>> = pts
            .iter()
            .map(|p| chart.coords(p).expect("chart spans its defining points"))
            .collect();
        // Center at the average so the origin is interior, then run double
        // description on the homogenized polar cone {(y,t) : ⟨q_i,y⟩ ≤ t}.
        let count = S::from_int(coords.len() as i64);
        let mut center = vec![S::zero(); k];
        for c in &coords {
            center = linalg::add(&center, c);
        }
        center = center.iter().map(|x| x.clone() / count.clone()).collect();
        let mut cons: Vec<Vec<BigInt>> = Vec::with_capacity(coords.len());
        for c in &coords {
            let q = linalg::sub(c, &center);
            let mut row: Vec<S> = q.iter().map(|x| S::zero() - x.clone()).collect();
            row.push(S::one());
            cons.push(linalg::primitive_integer(&row));
        }
        let rays = dd::extreme_rays(&cons);
        let mut facets: Vec<Facet<S>> = Vec::new();
        for r in &rays {
            let t = r.last().unwrap().clone();
            assert!(t > BigInt::zero(), "polar of a bounded polytope has no recession rays");
            // Intrinsic inequality ⟨y, z − center⟩ ≤ t.
            let y: Vec<S> = linalg::from_bigints(&r[..k]);
            let t_s = S::from_big_ratio(&t, &BigInt::one());
            let n = chart.normal_to_ambient(&y);
            let off = t_s + dot(&y, &center) + dot(&n, &chart.origin);
            let mut row = n.clone();
            row.push(off);
            let prim = linalg::primitive_integer(&row);
            let normal: Vec<S> = linalg::from_bigints(&prim[..ambient]);
            let offset = S::from_big_ratio(&prim[ambient], &BigInt::one());
            facets.push(Facet { normal, offset });
        }
        facets.sort_by(|a, b| (a.normal.clone(), a.offset.clone()).cmp(&(b.normal.clone(), b.offset.clone())));
        // Vertices: points whose tight facet normals span the intrinsic space.
        let mut vertices = Vec::new();
        let mut vertex_coords = Vec::new();
        for (p, c) in pts.iter().zip(&coords) {
            let tight: Vec<Vec<S>> = facets
                .iter()
                .filter(|f| dot(&f.normal, p) == f.offset)
                .map(|f| {
                    (0..k).map(|j| dot(&f.normal, &chart.directions[j])).collect::<Vec<S>>()
                })
                .collect();
            if linalg::rank(&tight) == k {
                vertices.push(p.clone());
                vertex_coords.push(c.clone());
            }
        }
        let incidence: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| dot(&f.normal, v) == f.offset)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok(Polytope {
            ambient_dim: ambient,
            vertices,
            vertex_coords,
            chart,
            facets,
            equations,
            incidence,
            lattice: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    pub fn equations(&self) -> &[(Vec<S>, S)] {
        &self.equations
    }

    /// Per-facet sorted vertex indices.
    pub fn vertex_facet_incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn chart(&self) -> &AffineChart<S> {
        &self.chart
    }

    pub fn contains(&self, p: &[S]) -> bool {
        if p.len() != self.ambient_dim {
            return false;
        }
        self.equations.iter().all(|(u, c)| &dot(u, p) == c)
            && self.facets.iter().all(|f| dot(&f.normal, p) <= f.offset)
    }

    /// Evaluates a functional on all vertices.
    pub fn values<'a>(&'a self, gamma: &'a [S]) -> impl Iterator<Item = S> + 'a {
        self.vertices.iter().map(move |v| dot(gamma, v))
    }

    /// The face lattice, computed once and cached. Safe under concurrent
    /// readers: `OnceLock` guarantees single-writer initialization.
    pub fn face_lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| self.build_lattice())
    }

    fn face_dim(&self, verts: &[usize]) -> isize {
        if verts.is_empty() {
            return -1;
        }
        let rows: Vec<Vec<S>> = verts[1..]
            .iter()
            .map(|&i| linalg::sub(&self.vertex_coords[i], &self.vertex_coords[verts[0]]))
            .collect();
        linalg::rank(&rows) as isize
    }

    fn build_lattice(&self) -> FaceLattice {
        let n = self.vertices.len();
        let top: Vec<usize> = (0..n).collect();
        let mut faces: Vec<Face> = Vec::new();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut queue: Vec<usize> = Vec::new();
        let top_dim = self.dim() as isize;
        faces.push(Face { vertices: top.clone(), dim: top_dim, children: vec![], parents: vec![] });
        index.insert(top, 0);
        queue.push(0);
        let facet_sets: Vec<BTreeSet<usize>> =
            self.incidence.iter().map(|v| v.iter().copied().collect()).collect();
        let mut head = 0;
        while head < queue.len() {
            let fi = queue[head];
            head += 1;
            let fset: BTreeSet<usize> = faces[fi].vertices.iter().copied().collect();
            if faces[fi].dim == -1 {
                continue;
            }
            // facets of this face arise as intersections with polytope facets
            let mut cands: BTreeSet<Vec<usize>> = BTreeSet::new();
            for fs in &facet_sets {
                let inter: Vec<usize> = fset.intersection(fs).copied().collect();
                if inter.len() < fset.len() {
                    cands.insert(inter);
                }
            }
            if faces[fi].dim == 0 {
                cands.insert(vec![]);
            }
            let maximal: Vec<Vec<usize>> = cands
                .iter()
                .filter(|c| {
                    !cands.iter().any(|d| {
                        d.len() > c.len() && {
                            let ds: BTreeSet<usize> = d.iter().copied().collect();
                            c.iter().all(|x| ds.contains(x))
                        }
                    })
                })
                .cloned()
                .collect();
            for child in maximal {
                let ci = *index.entry(child.clone()).or_insert_with(|| {
                    let dim = self.face_dim(&child);
                    faces.push(Face { vertices: child, dim, children: vec![], parents: vec![] });
                    queue.push(faces.len() - 1);
                    faces.len() - 1
                });
                if !faces[fi].children.contains(&ci) {
                    faces[fi].children.push(ci);
                    faces[ci].parents.push(fi);
                }
            }
        }
        for f in faces.iter_mut() {
            f.children.sort();
            f.parents.sort();
        }
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); (top_dim + 2) as usize];
        for (i, f) in faces.iter().enumerate() {
            by_dim[(f.dim + 1) as usize].push(i);
        }
        FaceLattice { faces, by_dim }
    }

    /// `f_r` for `r = 0 .. dim−1` (proper nonempty faces).
    pub fn f_vector(&self) -> Vec<usize> {
        let l = self.face_lattice();
        (0..self.dim()).map(|r| l.by_dim[r + 1].len()).collect()
    }

    /// Edges as sorted vertex-index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.dim() == 0 {
            return vec![];
        }
        let l = self.face_lattice();
        let mut out: Vec<(usize, usize)> = l.by_dim[2]
            .iter()
            .map(|&i| {
                let vs = &l.faces[i].vertices;
                assert_eq!(vs.len(), 2, "an edge has exactly two vertices");
                (vs[0], vs[1])
            })
            .collect();
        out.sort();
        out
    }

    /// Σ (−1)^r f_r over proper faces equals 1 − (−1)^dim.
    pub fn euler_relation_holds(&self) -> bool {
        let f = self.f_vector();
        let mut sum: i64 = 0;
        for (r, &c) in f.iter().enumerate() {
            sum += if r % 2 == 0 { c as i64 } else { -(c as i64) };
        }
        let expected = 1 - if self.dim() % 2 == 0 { 1 } else { -1 };
        sum == expected
    }

    /// Minkowski sum; vertex set of the result is a subset of the pairwise
    /// vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope<S>) -> Result<Polytope<S>, GeometryError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                sums.push(linalg::add(v, w));
            }
        }
        Polytope::hull(&sums)
    }

    /// Inner-normal fan in intrinsic dual coordinates: the maximal cone at a
    /// vertex consists of the functionals minimized there.
    pub fn normal_fan(&self) -> Result<Fan, GeometryError> {
        if self.dim() == 0 {
            return Err(GeometryError::ZeroDimensional);
        }
        let k = self.dim();
        let mut rays: Vec<Vec<BigInt>> = Vec::new();
        for f in &self.facets {
            let y: Vec<S> = (0..k)
                .map(|j| S::zero() - dot(&f.normal, &self.chart.directions[j]))
                .collect();
            rays.push(linalg::primitive_integer(&y));
        }
        let lattice = self.face_lattice();
        let mut cones: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let facet_sets: Vec<BTreeSet<usize>> =
            self.incidence.iter().map(|v| v.iter().copied().collect()).collect();
        for f in &lattice.faces {
            if f.dim < 0 {
                continue;
            }
            let fset: BTreeSet<usize> = f.vertices.iter().copied().collect();
            let cone: BTreeSet<usize> = facet_sets
                .iter()
                .enumerate()
                .filter(|(_, fs)| fset.is_subset(fs))
                .map(|(i, _)| i)
                .collect();
            cones.insert(cone);
        }
        let mut maximal: Vec<BTreeSet<usize>> = Vec::new();
        for (vi, _) in self.vertices.iter().enumerate() {
            let cone: BTreeSet<usize> = facet_sets
                .iter()
                .enumerate()
                .filter(|(_, fs)| fs.contains(&vi))
                .map(|(i, _)| i)
                .collect();
            maximal.push(cone);
        }
        Ok(Fan { lattice_rank: k, rays, cones: cones.into_iter().collect(), maximal })
    }

    /// Face-lattice isomorphism test; returns a vertex bijection witness
    /// (`witness[i]` is the image of vertex `i`) when isomorphic.
    pub fn combinatorially_isomorphic(&self, other: &Polytope<S>) -> Option<Vec<usize>> {
        bipartite_isomorphism(
            self.vertices.len(),
            self.vertex_facet_incidence(),
            other.vertices.len(),
            other.vertex_facet_incidence(),
        )
    }
}

/// A rational polyhedral fan given by primitive ray generators and cones as
/// ray-index sets (closed under taking faces).
#[derive(Clone, Debug)]
pub struct Fan {
    pub lattice_rank: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub cones: Vec<BTreeSet<usize>>,
    /// One maximal cone per vertex of the defining polytope, same order as
    /// its vertex list.
    pub maximal: Vec<BTreeSet<usize>>,
}

/// Canonical-form search for an isomorphism of vertex–facet incidence
/// structures. The face lattice of a polytope is determined by this bipartite
/// incidence, so a two-sided isomorphism is exactly a combinatorial
/// isomorphism. Color refinement prunes the backtracking.
fn bipartite_isomorphism(
    nv_a: usize,
    facets_a: &[Vec<usize>],
    nv_b: usize,
    facets_b: &[Vec<usize>],
) -> Option<Vec<usize>> {
    if nv_a != nv_b || facets_a.len() != facets_b.len() {
        return None;
    }
    if facets_a.is_empty() {
        // zero-dimensional polytopes
        return Some((0..nv_a).collect());
    }
    let nf = facets_a.len();
    let vertex_facets = |facets: &[Vec<usize>], nv: usize| -> Vec<Vec<usize>> {
        let mut vf = vec![Vec::new(); nv];
        for (fi, vs) in facets.iter().enumerate() {
            for &v in vs {
                vf[v].push(fi);
            }
        }
        vf
    };
    let vf_a = vertex_facets(facets_a, nv_a);
    let vf_b = vertex_facets(facets_b, nv_b);

    // Iterative color refinement on both sides simultaneously.
    let refine = |facets: &[Vec<usize>], vf: &[Vec<usize>]| -> (Vec<u64>, Vec<u64>) {
        let nv = vf.len();
        let nf = facets.len();
        let mut vc: Vec<u64> = vec![0; nv];
        let mut fc: Vec<u64> = vec![0; nf];
        for _ in 0..nv + nf {
            let mut new_fc: Vec<u64> = (0..nf)
                .map(|i| {
                    let mut sig: Vec<u64> = facets[i].iter().map(|&v| vc[v]).collect();
                    sig.sort_unstable();
                    hash_sig(fc[i], &sig)
                })
                .collect();
            let mut new_vc: Vec<u64> = (0..nv)
                .map(|i| {
                    let mut sig: Vec<u64> = vf[i].iter().map(|&f| new_fc[f]).collect();
                    sig.sort_unstable();
                    hash_sig(vc[i], &sig)
                })
                .collect();
            if new_vc == vc && new_fc == fc {
                break;
            }
            std::mem::swap(&mut vc, &mut new_vc);
            std::mem::swap(&mut fc, &mut new_fc);
        }
        (vc, fc)
    };
    let (vc_a, fc_a) = refine(facets_a, &vf_a);
    let (vc_b, fc_b) = refine(facets_b, &vf_b);
    let mut count_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut count_b: BTreeMap<u64, usize> = BTreeMap::new();
    for c in &vc_a {
        *count_a.entry(*c).or_default() += 1;
    }
    for c in &vc_b {
        *count_b.entry(*c).or_default() += 1;
    }
    if count_a != count_b {
        return None;
    }
    let mut fcount_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut fcount_b: BTreeMap<u64, usize> = BTreeMap::new();
    for c in &fc_a {
        *fcount_a.entry(*c).or_default() += 1;
    }
    for c in &fc_b {
        *fcount_b.entry(*c).or_default() += 1;
    }
    if fcount_a != fcount_b {
        return None;
    }

    // Backtrack over facet assignments, rarest colors first.
    let mut order: Vec<usize> = (0..nf).collect();
    order.sort_by_key(|&i| (fcount_a[&fc_a[i]], fc_a[i], i));
    let sets_a: Vec<BTreeSet<usize>> = facets_a.iter().map(|v| v.iter().copied().collect()).collect();
    let sets_b: Vec<BTreeSet<usize>> = facets_b.iter().map(|v| v.iter().copied().collect()).collect();

    struct Search<'a> {
        order: &'a [usize],
        fc_a: &'a [u64],
        fc_b: &'a [u64],
        vc_a: &'a [u64],
        vc_b: &'a [u64],
        sets_a: &'a [BTreeSet<usize>],
        sets_b: &'a [BTreeSet<usize>],
        vf_a: &'a [Vec<usize>],
        vf_b: &'a [Vec<usize>],
        nv: usize,
        fmap: Vec<Option<usize>>,
        used: Vec<bool>,
        nodes: usize,
    }

    impl Search<'_> {
        fn consistent(&self, depth: usize) -> bool {
            // Vertices must be partitioned identically by the incidence
            // pattern over the assigned facets.
            let assigned: Vec<(usize, usize)> = self.order[..depth]
                .iter()
                .map(|&fa| (fa, self.fmap[fa].unwrap()))
                .collect();
            let mut pat_a: BTreeMap<(Vec<bool>, u64), usize> = BTreeMap::new();
            let mut pat_b: BTreeMap<(Vec<bool>, u64), usize> = BTreeMap::new();
            for v in 0..self.nv {
                let key_a: Vec<bool> = assigned.iter().map(|&(fa, _)| self.sets_a[fa].contains(&v)).collect();
                *pat_a.entry((key_a, self.vc_a[v])).or_default() += 1;
                let key_b: Vec<bool> = assigned.iter().map(|&(_, fb)| self.sets_b[fb].contains(&v)).collect();
                *pat_b.entry((key_b, self.vc_b[v])).or_default() += 1;
            }
            pat_a == pat_b
        }

        fn go(&mut self, depth: usize) -> Option<Vec<usize>> {
            self.nodes += 1;
            if self.nodes > 2_000_000 {
                return None;
            }
            if depth == self.order.len() {
                return self.extract();
            }
            let fa = self.order[depth];
            for fb in 0..self.order.len() {
                if self.used[fb]
                    || self.fc_b[fb] != self.fc_a[fa]
                    || self.sets_b[fb].len() != self.sets_a[fa].len()
                {
                    continue;
                }
                self.fmap[fa] = Some(fb);
                self.used[fb] = true;
                if self.consistent(depth + 1) {
                    if let Some(w) = self.go(depth + 1) {
                        return Some(w);
                    }
                }
                self.fmap[fa] = None;
                self.used[fb] = false;
            }
            None
        }

        fn extract(&self) -> Option<Vec<usize>> {
            // vertex → vertex with identical facet-incidence pattern
            let mut sig_b: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for v in 0..self.nv {
                let mut sig: Vec<usize> = self.vf_b[v].to_vec();
                sig.sort_unstable();
                sig_b.entry(sig).or_default().push(v);
            }
            let mut witness = vec![usize::MAX; self.nv];
            let mut taken = vec![false; self.nv];
            for v in 0..self.nv {
                let mut sig: Vec<usize> = self.vf_a[v].iter().map(|&f| self.fmap[f].unwrap()).collect();
                sig.sort_unstable();
                let cands = sig_b.get(&sig)?;
                let w = cands.iter().find(|&&w| !taken[w])?;
                witness[v] = *w;
                taken[*w] = true;
            }
            Some(witness)
        }
    }

    let mut s = Search {
        order: &order,
        fc_a: &fc_a,
        fc_b: &fc_b,
        vc_a: &vc_a,
        vc_b: &vc_b,
        sets_a: &sets_a,
        sets_b: &sets_b,
        vf_a: &vf_a,
        vf_b: &vf_b,
        nv: nv_a,
        fmap: vec![None; nf],
        used: vec![false; nf],
        nodes: 0,
    };
    let witness = s.go(0)?;
    // Verify the witness induces an incidence isomorphism.
    let image_sets: BTreeSet<Vec<usize>> = sets_a
        .iter()
        .map(|fs| {
            let mut img: Vec<usize> = fs.iter().map(|&v| witness[v]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    let target_sets: BTreeSet<Vec<usize>> =
        sets_b.iter().map(|fs| fs.iter().copied().collect()).collect();
    if image_sets == target_sets {
        Some(witness)
    } else {
        None
    }
}

fn hash_sig(prev: u64, sig: &[u64]) -> u64 {
    // FNV-1a over the previous color and the sorted signature
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(prev);
    for &x in sig {
        eat(x);
    }
    h
}

/// `{0,1}^n` as a reference polytope.
pub fn unit_cube<S: Scalar>(n: usize) -> Polytope<S> {
    let mut pts = Vec::with_capacity(1 << n);
    for mask in 0..(1u64 << n) {
        pts.push((0..n).map(|i| S::from_int(((mask >> i) & 1) as i64)).collect());
    }
    Polytope::hull(&pts).expect("cube hull")
}

/// Standard simplex `conv{e_0, …, e_{n−1}}` in `R^n`.
pub fn standard_simplex<S: Scalar>(n: usize) -> Polytope<S> {
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = vec![S::zero(); n];
        p[i] = S::one();
        pts.push(p);
    }
    Polytope::hull(&pts).expect("simplex hull")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::Rat;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    #[test]
    fn segment_hull() {
        let p = Polytope::<Rat>::hull(&pts(&[&[0], &[3]])).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices().len(), 2);
        assert_eq!(p.facets().len(), 2);
    }

    #[test]
    fn hexagon_drops_interior_point() {
        let e2 = pts(&[&[0, 0], &[-1, -1], &[-1, 0], &[0, 1], &[1, 1], &[1, 0], &[0, -1]]);
        let p = Polytope::hull(&e2).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.facets().len(), 6);
        assert!(!p.vertices().contains(&int_vec::<Rat>(&[0, 0])));
        assert!(p.contains(&int_vec::<Rat>(&[0, 0])));
    }

    #[test]
    fn low_dim_hull_in_high_ambient() {
        // the four GKZ vectors of {0,1,2,3}: a quadrilateral in R^4
        let p = Polytope::<Rat>::hull(&pts(&[
            &[3, 0, 0, 3],
            &[1, 3, 0, 2],
            &[2, 0, 3, 1],
            &[1, 2, 2, 1],
        ]))
        .unwrap();
        assert_eq!(p.ambient_dim(), 4);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.equations().len(), 2);
        // every vertex satisfies the equations and facet inequalities
        for v in p.vertices() {
            assert!(p.contains(v));
        }
    }

    #[test]
    fn face_lattice_of_cube() {
        let c = unit_cube::<Rat>(3);
        assert_eq!(c.f_vector(), vec![8, 12, 6]);
        assert!(c.euler_relation_holds());
        assert_eq!(c.edges().len(), 12);
    }

    #[test]
    fn minkowski_translate_and_square() {
        let seg_x = Polytope::<Rat>::hull(&pts(&[&[0, 0], &[1, 0]])).unwrap();
        let seg_y = Polytope::<Rat>::hull(&pts(&[&[0, 0], &[0, 1]])).unwrap();
        let square = seg_x.minkowski_sum(&seg_y).unwrap();
        assert_eq!(square.vertices().len(), 4);
        assert_eq!(square.facets().len(), 4);
        let point = Polytope::<Rat>::hull(&pts(&[&[5, 7]])).unwrap();
        let sq2 = square.minkowski_sum(&point).unwrap();
        assert_eq!(sq2.vertices().len(), 4);
        assert!(sq2.vertices().contains(&int_vec::<Rat>(&[5, 7])));
    }

    #[test]
    fn normal_fan_of_interval() {
        let p = Polytope::<Rat>::hull(&pts(&[&[0], &[3]])).unwrap();
        let fan = p.normal_fan().unwrap();
        assert_eq!(fan.rays.len(), 2);
        let rays: BTreeSet<Vec<BigInt>> = fan.rays.iter().cloned().collect();
        assert!(rays.contains(&vec![BigInt::from(1)]));
        assert!(rays.contains(&vec![BigInt::from(-1)]));
        assert_eq!(fan.maximal.len(), 2);
    }

    #[test]
    fn hexagon_normal_fan_is_self_dual_up_to_unimodular_map() {
        let e2 = pts(&[&[-1, -1], &[-1, 0], &[0, 1], &[1, 1], &[1, 0], &[0, -1]]);
        let p = Polytope::hull(&e2).unwrap();
        let fan = p.normal_fan().unwrap();
        assert_eq!(fan.rays.len(), 6);
        // ambient inner primitive edge normals
        let inner: BTreeSet<Vec<i64>> = p
            .facets()
            .iter()
            .map(|f| {
                f.normal
                    .iter()
                    .map(|x| -i64::try_from(&x.numer_big()).unwrap())
                    .collect()
            })
            .collect();
        // (x,y) ↦ (x,−y) in GL₂(Z) carries the vertex set onto the normals
        let image: BTreeSet<Vec<i64>> = p
            .vertices()
            .iter()
            .map(|v| {
                let x = i64::try_from(&v[0].numer_big()).unwrap();
                let y = i64::try_from(&v[1].numer_big()).unwrap();
                vec![x, -y]
            })
            .collect();
        assert_eq!(inner, image);
    }

    #[test]
    fn iso_square_vs_quadrilateral() {
        let sq = unit_cube::<Rat>(2);
        let quad = Polytope::<Rat>::hull(&pts(&[&[0, 0], &[4, 1], &[5, 6], &[-1, 3]])).unwrap();
        let w = sq.combinatorially_isomorphic(&quad).expect("both are quadrilaterals");
        assert_eq!(w.len(), 4);
        let tri = standard_simplex::<Rat>(3);
        assert!(sq.combinatorially_isomorphic(&tri).is_none());
        let id = sq.combinatorially_isomorphic(&sq).expect("self isomorphism");
        assert_eq!(id.len(), 4);
    }

    #[test]
    fn cube_iso_cube_other_coords() {
        let c = unit_cube::<Rat>(4);
        let scaled: Vec<Vec<Rat>> = c
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x.clone() * Rat::from_int(3) + Rat::from_int(1)).collect())
            .collect();
        let c2 = Polytope::hull(&scaled).unwrap();
        assert!(c.combinatorially_isomorphic(&c2).is_some());
    }
}
