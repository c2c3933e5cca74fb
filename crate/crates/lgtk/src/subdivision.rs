//! Point configurations and their regular subdivisions: lower-hull
//! subdivisions from height functions, a regularity LP with verified
//! certificates, bistellar flips through circuits, flip-graph enumeration of
//! regular triangulations, GKZ vectors and the secondary polytope.

use crate::linalg::{self, dot, int_vec, simplex_normalized_volume};
use crate::lp::{lp_optimize, Constraint, LpResult, Rel, Sense};
use crate::polytope::{GeometryError, Polytope};
use crate::scalar::Scalar;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("duplicate point at indices {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("points span dimension {got}, configuration requires {required}")]
    NotFullDimensional { required: usize, got: usize },
    #[error("point {index} has {got} coordinates, expected {expected}")]
    PointDimension { index: usize, expected: usize, got: usize },
    #[error("height vector has {got} entries for {expected} points")]
    HeightLength { expected: usize, got: usize },
    #[error("not a polyhedral subdivision: {0}")]
    NotASubdivision(String),
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A finite marked set of lattice points spanning rank `d`, together with its
/// hull `Q`. Point order is significant: indices are the identity of points
/// everywhere downstream.
#[derive(Debug)]
pub struct PointConfiguration<S: Scalar> {
    dim: usize,
    points: Vec<Vec<i64>>,
    points_s: Vec<Vec<S>>,
    hull: Polytope<S>,
    volume: S,
    circuits: OnceLock<Vec<Circuit>>,
}

/// A support-minimal affine dependence, split by coefficient sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    /// Indices of the vertices of the cell polytope.
    pub vertices: Vec<usize>,
    /// Indices of all configuration points on the corresponding lower face.
    pub marked: Vec<usize>,
}

/// A regular polyhedral subdivision with its certifying height.
#[derive(Clone, Debug)]
pub struct Subdivision<S> {
    pub cells: Vec<Cell>,
    pub height: Vec<S>,
}

impl<S> Subdivision<S> {
    /// Equality of marked subdivisions ignores the certifying height.
    pub fn same_cells(&self, other: &Subdivision<S>) -> bool {
        self.cells == other.cells
    }

    pub fn cell_key(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        self.cells.iter().map(|c| (c.vertices.clone(), c.marked.clone())).collect()
    }
}

/// A subdivision whose cells are all `d`-simplices marked exactly by their
/// vertices.
pub type Triangulation<S> = Subdivision<S>;

pub struct Regularity<S> {
    pub regular: bool,
    pub height: Option<Vec<S>>,
    pub farkas: Option<Vec<S>>,
}

impl<S: Scalar> PointConfiguration<S> {
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self, SubdivisionError> {
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(SubdivisionError::PointDimension {
                    index: i,
                    expected: dim,
                    got: p.len(),
                });
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(SubdivisionError::DuplicatePoint(i, j));
                }
            }
        }
        let points_s: Vec<Vec<S>> = points.iter().map(|p| int_vec(p)).collect();
        let hull = Polytope::hull(&points_s)?;
        if hull.dim() != dim {
            return Err(SubdivisionError::NotFullDimensional { required: dim, got: hull.dim() });
        }
        let volume = {
            let cells = placing_cells(&points_s, dim);
            cells
                .iter()
                .map(|c| {
                    let pts: Vec<Vec<S>> = c.iter().map(|&i| points_s[i].clone()).collect();
                    simplex_normalized_volume(&pts)
                })
                .fold(S::zero(), |a, b| a + b)
        };
        Ok(PointConfiguration { dim, points, points_s, hull, volume, circuits: OnceLock::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn points_scalar(&self) -> &[Vec<S>] {
        &self.points_s
    }

    pub fn hull(&self) -> &Polytope<S> {
        &self.hull
    }

    /// Normalized lattice volume of `Q` (unimodular simplex = 1).
    pub fn volume(&self) -> &S {
        &self.volume
    }

    fn cell_points(&self, cell: &[usize]) -> Vec<Vec<S>> {
        cell.iter().map(|&i| self.points_s[i].clone()).collect()
    }

    /// The marked subdivision induced by the lower hull of the lifted points
    /// `(a, η(a))`. Every height yields a regular subdivision.
    pub fn subdivision_from_height(&self, height: &[S]) -> Result<Subdivision<S>, SubdivisionError> {
        if height.len() != self.len() {
            return Err(SubdivisionError::HeightLength { expected: self.len(), got: height.len() });
        }
        let lifted: Vec<Vec<S>> = self
            .points_s
            .iter()
            .zip(height)
            .map(|(p, h)| {
                let mut q = p.clone();
                q.push(h.clone());
                q
            })
            .collect();
        let lifted_hull = Polytope::hull(&lifted)?;
        let mut cells = Vec::new();
        if lifted_hull.dim() <= self.dim {
            // affine height: the trivial subdivision, everything marked
            let marked: Vec<usize> = (0..self.len()).collect();
            let vertices: Vec<usize> = (0..self.len())
                .filter(|&i| self.hull.vertices().contains(&self.points_s[i]))
                .collect();
            cells.push(Cell { vertices, marked });
        } else {
            for f in lifted_hull.facets() {
                // lower facet: outward normal points down in the lift direction
                if f.normal[self.dim] >= S::zero() {
                    continue;
                }
                let marked: Vec<usize> =
                    (0..self.len()).filter(|&i| dot(&f.normal, &lifted[i]) == f.offset).collect();
                let cell_poly = Polytope::hull(&self.cell_points(&marked))?;
                let vertices: Vec<usize> = marked
                    .iter()
                    .copied()
                    .filter(|&i| cell_poly.vertices().contains(&self.points_s[i]))
                    .collect();
                cells.push(Cell { vertices, marked });
            }
            cells.sort();
        }
        Ok(Subdivision { cells, height: height.to_vec() })
    }

    /// Structural validation that `cells` form a polyhedral subdivision of
    /// `(Q, A)` with consistent markings.
    pub fn validate_subdivision(&self, cells: &[Cell]) -> Result<(), SubdivisionError> {
        if cells.is_empty() {
            return Err(SubdivisionError::NotASubdivision("no cells".into()));
        }
        let mut vol = S::zero();
        let mut polys = Vec::new();
        for c in cells {
            let vset: BTreeSet<usize> = c.vertices.iter().copied().collect();
            let mset: BTreeSet<usize> = c.marked.iter().copied().collect();
            if !vset.is_subset(&mset) {
                return Err(SubdivisionError::NotASubdivision(
                    "cell vertices must be marked".into(),
                ));
            }
            if c.marked.iter().any(|&i| i >= self.len()) {
                return Err(SubdivisionError::NotASubdivision("point index out of range".into()));
            }
            let poly = Polytope::hull(&self.cell_points(&c.vertices))?;
            if poly.dim() != self.dim {
                return Err(SubdivisionError::NotASubdivision("cell is not full-dimensional".into()));
            }
            if poly.vertices().len() != c.vertices.len() {
                return Err(SubdivisionError::NotASubdivision(
                    "cell vertex list contains non-vertices".into(),
                ));
            }
            for &i in &c.marked {
                if !poly.contains(&self.points_s[i]) {
                    return Err(SubdivisionError::NotASubdivision(
                        "marked point outside its cell".into(),
                    ));
                }
            }
            let tri = placing_cells(&self.cell_points(&c.vertices), self.dim);
            for t in &tri {
                let pts: Vec<Vec<S>> =
                    t.iter().map(|&j| self.points_s[c.vertices[j]].clone()).collect();
                vol = vol + simplex_normalized_volume(&pts);
            }
            polys.push(poly);
        }
        if vol != self.volume {
            return Err(SubdivisionError::NotASubdivision(format!(
                "cell volumes sum to {vol}, hull volume is {}",
                self.volume
            )));
        }
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if polytopes_overlap(&polys[i], &polys[j]) {
                    return Err(SubdivisionError::NotASubdivision(format!(
                        "cells {i} and {j} overlap"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Solves for a height inducing exactly these marked cells. Every point
    /// not marked in a cell must lie strictly above that cell's fold; a unit
    /// gap is equivalent to a positive gap because heights scale.
    ///
    /// Triangulations take a fast path: the LP is posed on the heights alone
    /// via barycentric coefficients, and the structural validation is
    /// subsumed by verifying that the certificate reproduces the cells.
    pub fn is_regular(&self, cells: &[Cell]) -> Result<Regularity<S>, SubdivisionError> {
        let is_triangulation = cells.iter().all(|c| {
            c.vertices.len() == self.dim + 1
                && c.marked == c.vertices
                && !simplex_normalized_volume(&self.cell_points(&c.vertices)).is_zero()
        });
        let outcome = if is_triangulation {
            self.regularity_lp_simplicial(cells)
        } else {
            self.validate_subdivision(cells)?;
            self.regularity_lp_general(cells)
        };
        match outcome {
            Regularity { regular: true, height: Some(height), .. } => {
                // the certificate is verified, not trusted
                let check = self.subdivision_from_height(&height)?;
                let mut sorted = cells.to_vec();
                sorted.sort();
                if check.cells != sorted {
                    if is_triangulation {
                        // diagnose: the input was not a subdivision at all
                        self.validate_subdivision(cells)?;
                    }
                    return Err(SubdivisionError::NotASubdivision(
                        "certificate does not reproduce the subdivision".into(),
                    ));
                }
                Ok(Regularity { regular: true, height: Some(height), farkas: None })
            }
            other => {
                if is_triangulation && !other.regular {
                    // make sure infeasibility reflects non-regularity rather
                    // than malformed input
                    self.validate_subdivision(cells)?;
                }
                Ok(other)
            }
        }
    }

    /// Height-only LP for simplicial cells: one strict fold per interior
    /// ridge and one strict above-ness row per (cell, outside point), with
    /// coefficients from affine dependences.
    fn regularity_lp_simplicial(&self, cells: &[Cell]) -> Regularity<S> {
        let n = self.len();
        let mut cons: Vec<Constraint<S>> = Vec::new();
        // folds: for each ridge shared by two cells, the unique affine
        // dependence on the d+2 involved points must lift positively
        let cell_sets: Vec<BTreeSet<usize>> =
            cells.iter().map(|c| c.vertices.iter().copied().collect()).collect();
        let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, c) in cells.iter().enumerate() {
            for skip in 0..c.vertices.len() {
                let mut r = c.vertices.clone();
                r.remove(skip);
                ridges.entry(r).or_default().push(ci);
            }
        }
        for (_ridge, owners) in ridges.iter().filter(|(_, o)| o.len() == 2) {
            let union: Vec<usize> =
                cell_sets[owners[0]].union(&cell_sets[owners[1]]).copied().collect();
            // affine dependence on the union (d+2 points, unique up to scale)
            let rows: Vec<Vec<S>> = (0..=self.dim)
                .map(|r| {
                    union
                        .iter()
                        .map(|&i| {
                            if r == 0 {
                                S::one()
                            } else {
                                self.points_s[i][r - 1].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            let ns = linalg::nullspace(&rows);
            if ns.len() != 1 {
                continue;
            }
            let mut dep = ns[0].clone();
            // orient so the apex of the first owner gets a positive sign
            let apex = cell_sets[owners[0]].difference(&cell_sets[owners[1]]).next().copied();
            if let Some(apex) = apex {
                let pos = union.iter().position(|&i| i == apex).unwrap();
                if dep[pos] < S::zero() {
                    dep = dep.iter().map(|x| S::zero() - x.clone()).collect();
                }
            }
            let mut row = vec![S::zero(); n];
            for (pos, &i) in union.iter().enumerate() {
                row[i] = dep[pos].clone();
            }
            cons.push((row, Rel::Ge, S::one()));
        }
        // unused points must lie strictly above every cell containing them
        for (ci, c) in cells.iter().enumerate() {
            for a in 0..n {
                if cell_sets[ci].contains(&a) {
                    continue;
                }
                // barycentric coordinates of point a in the cell
                let rows: Vec<Vec<S>> = (0..=self.dim)
                    .map(|r| {
                        c.vertices
                            .iter()
                            .map(|&i| {
                                if r == 0 {
                                    S::one()
                                } else {
                                    self.points_s[i][r - 1].clone()
                                }
                            })
                            .collect()
                    })
                    .collect();
                let mut rhs = vec![S::one()];
                rhs.extend(self.points_s[a].clone());
                let Some(bary) = linalg::solve(&rows, &rhs) else {
                    continue;
                };
                if bary.iter().any(|x| *x < S::zero()) {
                    continue; // outside the cell
                }
                // η(a) − Σ bary_i η(v_i) ≥ 1
                let mut row = vec![S::zero(); n];
                row[a] = S::one();
                for (pos, &i) in c.vertices.iter().enumerate() {
                    row[i] = row[i].clone() - bary[pos].clone();
                }
                cons.push((row, Rel::Ge, S::one()));
            }
        }
        match lp_optimize(&cons, &vec![S::zero(); n], Sense::Min) {
            LpResult::Optimal { point, .. } | LpResult::Unbounded { point, .. } => {
                Regularity { regular: true, height: Some(point), farkas: None }
            }
            LpResult::Infeasible { farkas } => {
                Regularity { regular: false, height: None, farkas: Some(farkas) }
            }
        }
    }

    fn regularity_lp_general(&self, cells: &[Cell]) -> Regularity<S> {
        let n = self.len();
        let d = self.dim;
        let k = cells.len();
        // variables: η_0..η_{n−1}, then per cell (g_1..g_d, b)
        let nvars = n + k * (d + 1);
        let mut cons: Vec<Constraint<S>> = Vec::new();
        for (ci, cell) in cells.iter().enumerate() {
            let marked: BTreeSet<usize> = cell.marked.iter().copied().collect();
            for i in 0..n {
                let mut row = vec![S::zero(); nvars];
                row[i] = S::one();
                let base = n + ci * (d + 1);
                for j in 0..d {
                    row[base + j] = S::zero() - self.points_s[i][j].clone();
                }
                row[base + d] = S::zero() - S::one();
                if marked.contains(&i) {
                    cons.push((row, Rel::Eq, S::zero()));
                } else {
                    cons.push((row, Rel::Ge, S::one()));
                }
            }
        }
        match lp_optimize(&cons, &vec![S::zero(); nvars], Sense::Min) {
            LpResult::Optimal { point, .. } | LpResult::Unbounded { point, .. } => {
                Regularity { regular: true, height: Some(point[..n].to_vec()), farkas: None }
            }
            LpResult::Infeasible { farkas } => {
                Regularity { regular: false, height: None, farkas: Some(farkas) }
            }
        }
    }

    /// All circuits: subsets carrying a sign-split minimal affine dependence.
    pub fn circuits(&self) -> &[Circuit] {
        self.circuits.get_or_init(|| {
            let n = self.len();
            let d = self.dim;
            let mut out = Vec::new();
            let mut subset: Vec<usize> = Vec::new();
            enumerate_subsets(n, d + 2, &mut subset, &mut |s| {
                if s.len() < 2 {
                    return;
                }
                // homogenized columns (1, a_i); dependence = right nullspace
                let rows: Vec<Vec<S>> = (0..=d)
                    .map(|r| {
                        s.iter()
                            .map(|&i| {
                                if r == 0 {
                                    S::one()
                                } else {
                                    self.points_s[i][r - 1].clone()
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ns = linalg::nullspace(&rows);
                if ns.len() != 1 {
                    return;
                }
                let dep = &ns[0];
                if dep.iter().any(|x| x.is_zero()) {
                    return; // not support-minimal
                }
                let mut positive = Vec::new();
                let mut negative = Vec::new();
                for (pos, &idx) in s.iter().enumerate() {
                    if dep[pos] > S::zero() {
                        positive.push(idx);
                    } else {
                        negative.push(idx);
                    }
                }
                if positive.is_empty() || negative.is_empty() {
                    return;
                }
                // canonical orientation: lowest index on the positive side
                if negative[0] < positive[0] {
                    std::mem::swap(&mut positive, &mut negative);
                }
                out.push(Circuit { positive, negative });
            });
            out.sort_by(|a, b| {
                (a.positive.clone(), a.negative.clone())
                    .cmp(&(b.positive.clone(), b.negative.clone()))
            });
            out
        })
    }

    /// All regular triangulations adjacent to `t` across an edge of the
    /// secondary polytope, found by circuit search. Agreement with GKZ vertex
    /// adjacency is covered by the flip-graph/edge-graph tests.
    pub fn flips(&self, t: &Triangulation<S>) -> Result<Vec<Triangulation<S>>, SubdivisionError> {
        let cell_sets: Vec<BTreeSet<usize>> =
            t.cells.iter().map(|c| c.vertices.iter().copied().collect()).collect();
        let mut results: Vec<Triangulation<S>> = Vec::new();
        let mut seen: BTreeSet<Vec<(Vec<usize>, Vec<usize>)>> = BTreeSet::new();
        for circuit in self.circuits() {
            for dir in 0..2 {
                let (side_in, side_out) = if dir == 0 {
                    (&circuit.positive, &circuit.negative)
                } else {
                    (&circuit.negative, &circuit.positive)
                };
                let Some(new_cells) = try_circuit_flip(&cell_sets, circuit, side_in, side_out)
                else {
                    continue;
                };
                let cells: Vec<Cell> = {
                    let mut cs: Vec<Cell> = new_cells
                        .iter()
                        .map(|vs| {
                            let v: Vec<usize> = vs.iter().copied().collect();
                            Cell { marked: v.clone(), vertices: v }
                        })
                        .collect();
                    cs.sort();
                    cs
                };
                let key: Vec<(Vec<usize>, Vec<usize>)> =
                    cells.iter().map(|c| (c.vertices.clone(), c.marked.clone())).collect();
                if !seen.insert(key) {
                    continue;
                }
                let Ok(reg) = self.is_regular(&cells) else {
                    continue;
                };
                if reg.regular {
                    results.push(Subdivision { cells, height: reg.height.unwrap() });
                }
            }
        }
        results.sort_by(|a, b| a.cell_key().cmp(&b.cell_key()));
        Ok(results)
    }

    /// The placing triangulation induced by the point order: always regular,
    /// deterministic; interior points of the running hull stay unused.
    pub fn placing_triangulation(&self) -> Triangulation<S> {
        let cells_idx = placing_cells(&self.points_s, self.dim);
        let mut cells: Vec<Cell> = cells_idx
            .into_iter()
            .map(|v| Cell { vertices: v.clone(), marked: v })
            .collect();
        cells.sort();
        let reg = self.is_regular(&cells).expect("placing triangulation is a subdivision");
        assert!(reg.regular, "placing triangulations are regular");
        Subdivision { cells, height: reg.height.unwrap() }
    }

    /// Breadth-first closure of the flip graph from the placing
    /// triangulation; completeness follows from the connectivity of the
    /// secondary polytope edge graph.
    pub fn enumerate_regular_triangulations(
        &self,
    ) -> Result<Vec<Triangulation<S>>, SubdivisionError> {
        let start = self.placing_triangulation();
        let mut seen: BTreeMap<Vec<(Vec<usize>, Vec<usize>)>, Triangulation<S>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        seen.insert(start.cell_key(), start.clone());
        queue.push_back(start);
        while let Some(t) = queue.pop_front() {
            for nb in self.flips(&t)? {
                if !seen.contains_key(&nb.cell_key()) {
                    seen.insert(nb.cell_key(), nb.clone());
                    queue.push_back(nb);
                }
            }
        }
        Ok(seen.into_values().collect())
    }

    /// GKZ vector: entry at a point is the total normalized volume of the
    /// triangulation simplices having it as a vertex.
    pub fn gkz_vector(&self, t: &Triangulation<S>) -> Vec<S> {
        let mut v = vec![S::zero(); self.len()];
        for cell in &t.cells {
            let vol = simplex_normalized_volume(&self.cell_points(&cell.vertices));
            for &i in &cell.vertices {
                v[i] = v[i].clone() + vol.clone();
            }
        }
        v
    }

    /// Hull of all GKZ vectors, with the bijective vertex → triangulation map
    /// (parallel to the polytope's vertex list).
    pub fn secondary_polytope(
        &self,
    ) -> Result<(Polytope<S>, Vec<Triangulation<S>>), SubdivisionError> {
        let tris = self.enumerate_regular_triangulations()?;
        let gkz: Vec<Vec<S>> = tris.iter().map(|t| self.gkz_vector(t)).collect();
        let poly = Polytope::hull(&gkz)?;
        assert_eq!(
            poly.vertices().len(),
            tris.len(),
            "every GKZ vector of a regular triangulation is a vertex"
        );
        assert_eq!(poly.dim(), self.len() - self.dim - 1, "secondary polytope dimension");
        let mut map = Vec::with_capacity(tris.len());
        for v in poly.vertices() {
            let idx = gkz.iter().position(|g| g == v).expect("hull vertices are GKZ vectors");
            map.push(tris[idx].clone());
        }
        Ok((poly, map))
    }
}

/// Exact overlap test: do two full-dimensional polytopes share an interior
/// point? A common interior point exists iff one exists with a positive
/// facet gap, and gaps rescale, so a unit gap bound is enough.
fn polytopes_overlap<S: Scalar>(a: &Polytope<S>, b: &Polytope<S>) -> bool {
    let d = a.ambient_dim();
    // variables: x (d), gap ε; maximize ε subject to ⟨n,x⟩ + ε ≤ c
    let mut cons: Vec<Constraint<S>> = Vec::new();
    for f in a.facets().iter().chain(b.facets()) {
        let mut row = f.normal.clone();
        row.push(S::one());
        cons.push((row, Rel::Le, f.offset.clone()));
    }
    let mut eps_row = vec![S::zero(); d + 1];
    eps_row[d] = S::one();
    cons.push((eps_row.clone(), Rel::Le, S::one()));
    match lp_optimize(&cons, &eps_row, Sense::Max) {
        LpResult::Optimal { value, .. } => value > S::zero(),
        LpResult::Unbounded { .. } => true,
        LpResult::Infeasible { .. } => false,
    }
}

fn enumerate_subsets(
    n: usize,
    max_size: usize,
    current: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    fn rec(
        n: usize,
        max_size: usize,
        start: usize,
        current: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        f(current);
        if current.len() == max_size {
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, max_size, i + 1, current, f);
            current.pop();
        }
    }
    rec(n, max_size, 0, current, f);
}

/// The two triangulations of a circuit: cells omit one point of the chosen
/// sign class each.
fn circuit_side_cells(circuit: &Circuit, side: &[usize]) -> Vec<BTreeSet<usize>> {
    let full: BTreeSet<usize> = circuit.positive.iter().chain(&circuit.negative).copied().collect();
    side.iter()
        .map(|&i| {
            let mut c = full.clone();
            c.remove(&i);
            c
        })
        .collect()
}

/// Bistellar flip: if every cell of one circuit triangulation is a face of
/// `t` and all of them have the same link, replace their joins with the
/// other side.
fn try_circuit_flip(
    cell_sets: &[BTreeSet<usize>],
    circuit: &Circuit,
    side_in: &[usize],
    side_out: &[usize],
) -> Option<Vec<BTreeSet<usize>>> {
    let in_cells = circuit_side_cells(circuit, side_in);
    let out_cells = circuit_side_cells(circuit, side_out);
    let mut common_link: Option<BTreeSet<BTreeSet<usize>>> = None;
    let mut star: HashSet<usize> = HashSet::new();
    for sigma in &in_cells {
        let mut link: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for (ci, cell) in cell_sets.iter().enumerate() {
            if sigma.is_subset(cell) {
                link.insert(cell.difference(sigma).copied().collect());
                star.insert(ci);
            }
        }
        if link.is_empty() {
            return None;
        }
        match &common_link {
            None => common_link = Some(link),
            Some(l) => {
                if *l != link {
                    return None;
                }
            }
        }
    }
    let link = common_link?;
    let mut result: Vec<BTreeSet<usize>> = cell_sets
        .iter()
        .enumerate()
        .filter(|(ci, _)| !star.contains(ci))
        .map(|(_, c)| c.clone())
        .collect();
    for sigma in &out_cells {
        for tau in &link {
            let cell: BTreeSet<usize> = sigma.union(tau).copied().collect();
            result.push(cell);
        }
    }
    Some(result)
}

/// Simplicial cells of the placing triangulation of `points` (insertion in
/// list order, interior points skipped). Indices refer to `points`.
pub fn placing_cells<S: Scalar>(points: &[Vec<S>], dim: usize) -> Vec<Vec<usize>> {
    // initial simplex: greedily take rank-increasing points in order
    let mut simplex: Vec<usize> = Vec::new();
    for i in 0..points.len() {
        let mut trial: Vec<usize> = simplex.clone();
        trial.push(i);
        let rows: Vec<Vec<S>> = trial[1..]
            .iter()
            .map(|&j| linalg::sub(&points[j], &points[trial[0]]))
            .collect();
        if linalg::rank(&rows) == trial.len() - 1 {
            simplex = trial;
            if simplex.len() == dim + 1 {
                break;
            }
        }
    }
    assert_eq!(simplex.len(), dim + 1, "points must span dimension {dim}");
    let mut cells: Vec<Vec<usize>> = vec![{
        let mut s = simplex.clone();
        s.sort_unstable();
        s
    }];
    let mut processed: Vec<usize> = simplex.clone();
    for i in 0..points.len() {
        if simplex.contains(&i) {
            continue;
        }
        let hull_pts: Vec<Vec<S>> = processed.iter().map(|&j| points[j].clone()).collect();
        let hull = Polytope::hull(&hull_pts).expect("running hull");
        let visible: Vec<_> =
            hull.facets().iter().filter(|f| dot(&f.normal, &points[i]) > f.offset).collect();
        processed.push(i);
        if visible.is_empty() {
            continue;
        }
        // cone from the new point over visible boundary simplices
        let mut boundary: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for cell in &cells {
            for skip in 0..cell.len() {
                let mut face: Vec<usize> = cell.clone();
                face.remove(skip);
                *boundary.entry(face).or_default() += 1;
            }
        }
        for (face, count) in boundary {
            if count != 1 {
                continue;
            }
            let on_visible =
                visible.iter().any(|f| face.iter().all(|&j| dot(&f.normal, &points[j]) == f.offset));
            if !on_visible {
                continue;
            }
            let mut cell = face.clone();
            cell.push(i);
            cell.sort_unstable();
            let pts: Vec<Vec<S>> = cell.iter().map(|&j| points[j].clone()).collect();
            if !simplex_normalized_volume(&pts).is_zero() {
                cells.push(cell);
            }
        }
    }
    cells.sort();
    cells
}

/// The interval configuration `{0, …, n+1} ⊂ Z`.
pub fn interval_config<S: Scalar>(n: usize) -> PointConfiguration<S> {
    let points: Vec<Vec<i64>> = (0..=(n as i64) + 1).map(|i| vec![i]).collect();
    PointConfiguration::new(1, points).expect("interval configuration")
}

/// The triangulation `T_K` of the interval `{0,…,n+1}`: cells between
/// consecutive breakpoints of `{0} ∪ K ∪ {n+1}`.
pub fn interval_triangulation<S: Scalar>(
    config: &PointConfiguration<S>,
    k_set: &BTreeSet<usize>,
) -> Triangulation<S> {
    let n = config.len() - 2;
    let mut breaks: Vec<usize> = vec![0];
    breaks.extend(k_set.iter().copied().filter(|&k| k >= 1 && k <= n));
    breaks.push(n + 1);
    breaks.dedup();
    let cells: Vec<Cell> = breaks
        .windows(2)
        .map(|w| Cell { vertices: vec![w[0], w[1]], marked: vec![w[0], w[1]] })
        .collect();
    let reg = config.is_regular(&cells).expect("interval triangulations are subdivisions");
    assert!(reg.regular);
    Subdivision { cells, height: reg.height.unwrap() }
}

/// The breakpoint set of an interval triangulation.
pub fn interval_k_set<S: Scalar>(t: &Triangulation<S>, n: usize) -> BTreeSet<usize> {
    let mut k = BTreeSet::new();
    for c in &t.cells {
        for &v in &c.vertices {
            if v >= 1 && v <= n {
                k.insert(v);
            }
        }
    }
    k
}

/// The seven marked points of the hexagon configuration (center first).
pub fn e2_points() -> Vec<Vec<i64>> {
    vec![
        vec![0, 0],
        vec![-1, -1],
        vec![-1, 0],
        vec![0, 1],
        vec![1, 1],
        vec![1, 0],
        vec![0, -1],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn interval4() -> PointConfiguration<Rat> {
        interval_config(2)
    }

    fn heights(xs: &[i64]) -> Vec<Rat> {
        int_vec(xs)
    }

    /// Independent 1-D lower-hull oracle by direct slope comparison.
    fn lower_cells_1d(points: &[i64], height: &[i64]) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = points.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| points[i]);
        let mut chain = vec![order[0]];
        loop {
            let last = *chain.last().unwrap();
            // smallest slope wins; among equal slopes, the farthest point
            let mut best: Option<(i64, i64, usize)> = None; // (dh, dx, j)
            for &j in &order {
                if points[j] <= points[last] {
                    continue;
                }
                let dh = height[j] - height[last];
                let dx = points[j] - points[last];
                let better = match best {
                    None => true,
                    Some((bh, bx, bj)) => {
                        // dh/dx < bh/bx  ⟺  dh·bx < bh·dx (dx, bx > 0)
                        dh * bx < bh * dx || (dh * bx == bh * dx && points[j] > points[bj])
                    }
                };
                if better {
                    best = Some((dh, dx, j));
                }
            }
            match best {
                None => break,
                Some((_, _, j)) => chain.push(j),
            }
        }
        let mut cells = Vec::new();
        for w in chain.windows(2) {
            let (a, b) = (w[0], w[1]);
            let marked: Vec<usize> = (0..n)
                .filter(|&i| {
                    points[i] >= points[a] && points[i] <= points[b] && {
                        let lhs = (height[i] - height[a]) * (points[b] - points[a]);
                        let rhs = (height[b] - height[a]) * (points[i] - points[a]);
                        lhs == rhs
                    }
                })
                .collect();
            cells.push((vec![a, b], marked));
        }
        cells
    }

    #[test]
    fn flat_height_trivial_subdivision() {
        let cfg = interval4();
        let s = cfg.subdivision_from_height(&heights(&[0, 0, 0, 0])).unwrap();
        assert_eq!(s.cells.len(), 1);
        assert_eq!(s.cells[0].vertices, vec![0, 3]);
        assert_eq!(s.cells[0].marked, vec![0, 1, 2, 3]);
    }

    #[test]
    fn one_dim_lower_hull_matches_oracle() {
        let cfg = interval4();
        for h in [[0i64, -1, 0, 3], [0, -1, 2, 3], [0, 0, -1, 0], [5, 1, 1, 5], [0, 2, 1, 9]] {
            let s = cfg.subdivision_from_height(&heights(&h)).unwrap();
            let expect = lower_cells_1d(&[0, 1, 2, 3], &h);
            assert_eq!(s.cells.len(), expect.len(), "height {h:?}");
            for (cell, (vs, ms)) in s.cells.iter().zip(&expect) {
                assert_eq!(&cell.vertices, vs, "height {h:?}");
                assert_eq!(&cell.marked, ms, "height {h:?}");
            }
        }
        // a height whose middle point lies strictly above one long cell
        let s = cfg.subdivision_from_height(&heights(&[0, -1, 2, 3])).unwrap();
        assert_eq!(s.cells[0].vertices, vec![0, 1]);
        assert_eq!(s.cells[1].vertices, vec![1, 3]);
        assert_eq!(s.cells[1].marked, vec![1, 3]);
        // (0,−1,0,3) keeps the lift of 2 on the lower hull: three cells
        let s2 = cfg.subdivision_from_height(&heights(&[0, -1, 0, 3])).unwrap();
        assert_eq!(s2.cells.len(), 3);
    }

    #[test]
    fn e2_star_triangulation_from_height() {
        let cfg = PointConfiguration::<Rat>::new(2, e2_points()).unwrap();
        let mut h = vec![Rat::zero(); 7];
        h[0] = Rat::from_int(-1);
        let s = cfg.subdivision_from_height(&h).unwrap();
        assert_eq!(s.cells.len(), 6);
        for c in &s.cells {
            assert_eq!(c.vertices.len(), 3);
            assert!(c.vertices.contains(&0));
            assert_eq!(c.marked, c.vertices);
        }
    }

    #[test]
    fn regularity_round_trip_and_trivial() {
        let cfg = interval4();
        let s = cfg.subdivision_from_height(&heights(&[0, -1, 0, 3])).unwrap();
        let reg = cfg.is_regular(&s.cells).unwrap();
        assert!(reg.regular);
        let again = cfg.subdivision_from_height(&reg.height.unwrap()).unwrap();
        assert!(again.same_cells(&s));

        let trivial = cfg.subdivision_from_height(&heights(&[0, 0, 0, 0])).unwrap();
        let reg2 = cfg.is_regular(&trivial.cells).unwrap();
        assert!(reg2.regular);
    }

    #[test]
    fn interval_flips_follow_cube_edges() {
        let cfg = interval4();
        let t_empty = interval_triangulation(&cfg, &BTreeSet::new());
        let flips = cfg.flips(&t_empty).unwrap();
        let k_sets: BTreeSet<BTreeSet<usize>> = flips.iter().map(|t| interval_k_set(t, 2)).collect();
        let expected: BTreeSet<BTreeSet<usize>> =
            [BTreeSet::from([1]), BTreeSet::from([2])].into_iter().collect();
        assert_eq!(k_sets, expected);

        let t12 = interval_triangulation(&cfg, &BTreeSet::from([1, 2]));
        let flips12 = cfg.flips(&t12).unwrap();
        let k12: BTreeSet<BTreeSet<usize>> = flips12.iter().map(|t| interval_k_set(t, 2)).collect();
        assert_eq!(k12, expected);
    }

    #[test]
    fn flip_symmetry() {
        let cfg = interval_config::<Rat>(3);
        for t in cfg.enumerate_regular_triangulations().unwrap() {
            for nb in cfg.flips(&t).unwrap() {
                let back = cfg.flips(&nb).unwrap();
                assert!(back.iter().any(|s| s.same_cells(&t)));
            }
        }
    }

    #[test]
    fn gkz_vectors_of_interval4() {
        let cfg = interval4();
        let cases: Vec<(BTreeSet<usize>, Vec<i64>)> = vec![
            (BTreeSet::new(), vec![3, 0, 0, 3]),
            (BTreeSet::from([1]), vec![1, 3, 0, 2]),
            (BTreeSet::from([2]), vec![2, 0, 3, 1]),
            (BTreeSet::from([1, 2]), vec![1, 2, 2, 1]),
        ];
        for (k, expect) in cases {
            let t = interval_triangulation(&cfg, &k);
            assert_eq!(cfg.gkz_vector(&t), int_vec::<Rat>(&expect));
        }
    }

    #[test]
    fn gkz_sum_rule() {
        let cfg = PointConfiguration::<Rat>::new(2, e2_points()).unwrap();
        let tris = cfg.enumerate_regular_triangulations().unwrap();
        let expected = Rat::from_int(3) * cfg.volume().clone();
        for t in &tris {
            let total = cfg.gkz_vector(t).into_iter().fold(Rat::zero(), |a, b| a + b);
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn interval_enumeration_counts() {
        for n in 1..=4usize {
            let cfg = interval_config::<Rat>(n);
            let tris = cfg.enumerate_regular_triangulations().unwrap();
            assert_eq!(tris.len(), 1 << n, "2^n triangulations for n={n}");
        }
        // single simplex: one triangulation
        let simplex =
            PointConfiguration::<Rat>::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(simplex.enumerate_regular_triangulations().unwrap().len(), 1);
    }

    #[test]
    fn e2_star_has_six_flips() {
        let cfg = PointConfiguration::<Rat>::new(2, e2_points()).unwrap();
        let mut h = vec![Rat::zero(); 7];
        h[0] = Rat::from_int(-1);
        let star = cfg.subdivision_from_height(&h).unwrap();
        let flips = cfg.flips(&star).unwrap();
        assert_eq!(flips.len(), 6);
    }

    #[test]
    fn e2_has_32_regular_triangulations() {
        let cfg = PointConfiguration::<Rat>::new(2, e2_points()).unwrap();
        let tris = cfg.enumerate_regular_triangulations().unwrap();
        assert_eq!(tris.len(), 32);
        for t in tris.iter().step_by(7) {
            let reg = cfg.is_regular(&t.cells).unwrap();
            assert!(reg.regular);
        }
    }

    #[test]
    fn secondary_polytope_of_interval4_is_quadrilateral() {
        let cfg = interval4();
        let (poly, map) = cfg.secondary_polytope().unwrap();
        assert_eq!(poly.ambient_dim(), 4);
        assert_eq!(poly.dim(), 2);
        assert_eq!(poly.vertices().len(), 4);
        assert_eq!(map.len(), 4);
        for (v, t) in poly.vertices().iter().zip(&map) {
            assert_eq!(v, &cfg.gkz_vector(t));
        }
    }

    #[test]
    fn mother_of_all_examples_is_not_regular() {
        let points =
            vec![vec![4, 0], vec![0, 4], vec![0, 0], vec![2, 1], vec![1, 2], vec![1, 1]];
        let cfg = PointConfiguration::<Rat>::new(2, points).unwrap();
        let cell = |v: [usize; 3]| {
            let mut vs = v.to_vec();
            vs.sort_unstable();
            Cell { vertices: vs.clone(), marked: vs }
        };
        let mut cells = vec![
            cell([0, 1, 3]),
            cell([1, 3, 4]),
            cell([1, 2, 4]),
            cell([2, 4, 5]),
            cell([0, 2, 5]),
            cell([0, 3, 5]),
            cell([3, 4, 5]),
        ];
        cells.sort();
        let reg = cfg.is_regular(&cells).unwrap();
        assert!(!reg.regular);
        assert!(reg.farkas.is_some());
    }
}
