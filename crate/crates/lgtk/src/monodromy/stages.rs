//! Extraction of the combinatorial monodromy data of a regeneration: stage
//! clusters of critical values, fiber transport along radar paths, full-turn
//! loop monodromies that separate pinched from attached points, numeric
//! cyclic insertions and the numeric vanishing tree.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::radar::{radar_screen, Lift, RadarScreen};
use super::track::{track, Seg, TrackOptions};
use super::{MonodromyError, Regeneration};
use crate::an::{CyclicInsertion, DegenerationJ, TreeEdge, VanishingTree};

/// Critical values grouped into stages by modulus. Values are kept in radar
/// order (decreasing modulus); stage 1 holds the smallest values.
#[derive(Clone, Debug)]
pub struct StageStructure {
    /// All critical values, decreasing modulus.
    pub crit: Vec<Complex64>,
    /// Stage (1-based) of each critical value, aligned with `crit`.
    pub stage_of: Vec<usize>,
    /// Log radii `L_0 < L_1 < … < L_m` separating the stages (`L_i` lies
    /// between stage `i` and stage `i+1`; `L_m` is above everything).
    pub level_logs: Vec<f64>,
    /// Smallest between-stage modulus ratio.
    pub separation: f64,
}

pub fn stage_structure(
    j: &DegenerationJ,
    crit_unsorted: &[Complex64],
) -> Result<StageStructure, MonodromyError> {
    let n = j.n;
    let m = j.stages();
    if crit_unsorted.len() != n {
        return Err(MonodromyError::ClusterStructure(format!(
            "expected {n} critical values, got {}",
            crit_unsorted.len()
        )));
    }
    let mut crit: Vec<Complex64> = crit_unsorted.to_vec();
    crit.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).unwrap());
    // decreasing modulus ⇒ stages m, m−1, …, 1 with sizes a_m, …, a_1
    let mut stage_of = Vec::with_capacity(n);
    for stage in (1..=m).rev() {
        for _ in 0..j.stage_size(stage) {
            stage_of.push(stage);
        }
    }
    let logs: Vec<f64> = crit.iter().map(|z| z.norm().ln()).collect();
    let mut separation = f64::INFINITY;
    let mut level_logs = vec![0.0; m + 1];
    for i in 0..n - 1 {
        if stage_of[i] != stage_of[i + 1] {
            separation = separation.min((logs[i] - logs[i + 1]).exp());
            level_logs[stage_of[i + 1]] = 0.5 * (logs[i] + logs[i + 1]);
        }
    }
    if m == 1 {
        separation = f64::INFINITY;
    }
    level_logs[0] = logs[n - 1] - 10.0f64.ln();
    level_logs[m] = logs[0] + 10.0f64.ln();
    if separation < 10.0 {
        return Err(MonodromyError::ClusterSeparation { required: 10.0, got: separation });
    }
    Ok(StageStructure { crit, stage_of, level_logs, separation })
}

/// A fully prepared numeric run: regeneration, stage structure, augmented
/// radar screen (one extra virtual path descending past the innermost
/// stage), and the argument-ordered base fiber.
pub struct NumericLab {
    pub reg: Regeneration,
    pub structure: StageStructure,
    /// Radar screen over the critical values plus one virtual deep value;
    /// paths `0..n−1` are the real ones, path `n` descends past stage 1.
    pub screen: RadarScreen,
    /// Base fiber sorted counter-clockwise by argument; label of index `i`
    /// is `i + 1`.
    pub base_fiber: Vec<Complex64>,
    pub opts: TrackOptions,
}

/// Builds the lab, halving `s` from `s0` until the stage clusters separate
/// by a factor of 10.
pub fn lab(
    j: &DegenerationJ,
    s0: f64,
    seed: u64,
    lift: &Lift,
) -> Result<NumericLab, MonodromyError> {
    let mut s = s0;
    let mut last_err = MonodromyError::ClusterSeparation { required: 10.0, got: 0.0 };
    // near-tied moduli inside a stage make every radar path hug a critical
    // value; those draws are rejected and the coefficient seed is advanced
    let mut draw = seed;
    for _ in 0..8 {
        match try_lab(j, s, draw, lift) {
            Ok(l) => return Ok(l),
            Err(e @ MonodromyError::ClusterSeparation { .. }) => {
                last_err = e;
                s *= 0.5;
            }
            Err(e @ MonodromyError::EqualModulus { .. }) => {
                last_err = e;
                draw = draw.wrapping_add(0x9E37_79B9_7F4A_7C15);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

fn try_lab(
    j: &DegenerationJ,
    s: f64,
    seed: u64,
    lift: &Lift,
) -> Result<NumericLab, MonodromyError> {
    let reg = Regeneration::seeded(j, s, seed);
    let crit = reg.pencil.critical_values()?;
    let structure = stage_structure(j, &crit)?;
    // within-stage splits scale with s (interior perturbations sit one above
    // the Newton fold); reject only near-ties the staircase cannot resolve
    {
        let floor = 0.02 * s;
        let logs: Vec<f64> = structure.crit.iter().map(|z| z.norm().ln()).collect();
        for (w, st) in logs.windows(2).zip(structure.stage_of.windows(2)) {
            if st[0] == st[1] && (w[0] - w[1]).abs() < floor {
                return Err(MonodromyError::EqualModulus { re_a: w[0], re_b: w[1] });
            }
        }
    }
    // augment with a virtual value below stage 1, aimed into the widest
    // angular gap so its leg stays clear of every critical value
    let deep = {
        let mut args: Vec<f64> = structure
            .crit
            .iter()
            .map(|z| {
                let mut a = z.arg();
                if a < 0.0 {
                    a += TAU;
                }
                a
            })
            .collect();
        args.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut best = (args[0] + TAU - args[args.len() - 1], args[args.len() - 1]);
        for w in args.windows(2) {
            if w[1] - w[0] > best.0 {
                best = (w[1] - w[0], w[0]);
            }
        }
        let mid = (best.1 + best.0 / 2.0) % TAU;
        Complex64::from_polar(structure.level_logs[0].exp(), mid)
    };
    let mut values = structure.crit.clone();
    values.push(deep);
    let lift_aug = match lift {
        Lift::Fundamental => Lift::Fundamental,
        Lift::Explicit(ks) => {
            if ks.len() != j.n {
                return Err(MonodromyError::BranchCount { expected: j.n, got: ks.len() });
            }
            let mut ks2 = ks.clone();
            ks2.push(0);
            Lift::Explicit(ks2)
        }
    };
    let min_log_gap = {
        let mut logs: Vec<f64> = values.iter().map(|v| v.norm().ln()).collect();
        logs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        logs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    };
    let epsilon = (0.2 * min_log_gap).min(0.05);
    let screen = radar_screen(&values, &lift_aug, epsilon)?;
    let t_base = screen.base.exp();
    let mut base_fiber = reg.pencil.fiber(t_base)?;
    base_fiber.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    Ok(NumericLab { reg, structure, screen, base_fiber, opts: TrackOptions::default() })
}

fn to_segs(polyline: &[Complex64]) -> Vec<Seg> {
    polyline.windows(2).map(|w| Seg::Log(w[0], w[1])).collect()
}

impl NumericLab {
    pub fn n(&self) -> usize {
        self.reg.j.n
    }

    /// Index (into the screen's paths) of the path whose inward portion
    /// crosses stage `i`: the first path of stage `i−1`, or the virtual deep
    /// path for stage 1.
    fn gamma_source(&self, stage: usize) -> usize {
        if stage == 1 {
            self.n()
        } else {
            (stage..=self.reg.j.stages()).map(|l| self.reg.j.stage_size(l)).sum()
        }
    }

    /// Tracks the base fiber inward along a path, clipped at `re_stop`;
    /// returns the transported fiber (index-aligned with `base_fiber`).
    fn transport_to(&self, path_idx: usize, re_stop: f64) -> Result<Vec<Complex64>, MonodromyError> {
        let clipped = self.screen.clip_inward(path_idx, f64::INFINITY, re_stop);
        track(&self.reg.pencil, &to_segs(&clipped), &self.base_fiber, &self.opts)
    }

    /// Full `+2π` loop of the base argument at the log-radius of `at`,
    /// based at `at`; returns the end fiber (index-aligned).
    fn full_loop(&self, fiber: &[Complex64], at: Complex64) -> Result<Vec<Complex64>, MonodromyError> {
        // eight log-linear arcs around the circle
        let mut segs = Vec::with_capacity(8);
        for k in 0..8 {
            let a = at + Complex64::new(0.0, TAU * k as f64 / 8.0);
            let b = at + Complex64::new(0.0, TAU * (k + 1) as f64 / 8.0);
            segs.push(Seg::Log(a, b));
        }
        track(&self.reg.pencil, &segs, fiber, &self.opts)
    }

    /// Loop permutation: `perm[i] = j` when the point starting at index `i`
    /// ends at the start position of index `j`.
    fn loop_permutation(
        &self,
        fiber: &[Complex64],
        at: Complex64,
    ) -> Result<Vec<usize>, MonodromyError> {
        let end = self.full_loop(fiber, at)?;
        super::track::match_fibers(&end, fiber, 2.0).ok_or_else(|| {
            MonodromyError::LoopStructure("loop endpoints do not match the start fiber".into())
        })
    }
}

/// The numeric vanishing tree: one thimble per radar path, read off as the
/// colliding pair of the transported base fiber. Vertices are base-fiber
/// labels `1..n+1` in counter-clockwise order.
pub fn numeric_vanishing_tree(lab: &NumericLab) -> Result<VanishingTree, MonodromyError> {
    let n = lab.n();
    let j = &lab.reg.j;
    let mut edges = Vec::with_capacity(n);
    for idx in 0..n {
        let (a, b) = thimble_pair(lab, idx)?;
        // stage-major labels: the radar's decreasing-modulus order lists the
        // stages last-to-first but runs top-down inside each stage
        let stage = lab.structure.stage_of[idx];
        let earlier: usize = (1..stage).map(|s| j.stage_size(s)).sum();
        let within = idx - lab.structure.stage_of.iter().position(|&s| s == stage).unwrap();
        edges.push(TreeEdge { a: a + 1, b: b + 1, label: earlier + within + 1, stage });
    }
    edges.sort_by_key(|e| e.label);
    let tree = VanishingTree { n, edges, fiber_cyclic: (1..=n + 1).collect() };
    if !tree.is_spanning_tree() {
        return Err(MonodromyError::LoopStructure(
            "thimble pairs do not assemble into a spanning tree".into(),
        ));
    }
    Ok(tree)
}

/// Indices (into the base fiber) of the pair contracted by the thimble of
/// critical value `idx`.
fn thimble_pair(lab: &NumericLab, idx: usize) -> Result<(usize, usize), MonodromyError> {
    let w = lab.screen.lifts[idx];
    // nearest other lift bounds how close the approach may get
    let nearest_other = lab
        .screen
        .lifts
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != idx)
        .map(|(_, v)| (v - w).norm())
        .fold(f64::INFINITY, f64::min);
    let d0 = (0.4 * nearest_other).min(0.2);
    let outer = lab.screen.clip_inward(idx, f64::INFINITY, w.re + d0);
    // the clip is by Re; finish the approach along a straight log segment
    let mut fiber = track(&lab.reg.pencil, &to_segs(&outer), &lab.base_fiber, &lab.opts)?;
    let mut at = *outer.last().unwrap();
    let mut d = (at - w).norm();
    for _ in 0..8 {
        let target = w + (at - w) * (0.25 * d / (at - w).norm());
        fiber = track(&lab.reg.pencil, &[Seg::Log(at, target)], &fiber, &lab.opts)?;
        at = target;
        d = (at - w).norm();
        if let Some(pair) = closest_pair(&fiber, 3.0) {
            return Ok(pair);
        }
    }
    closest_pair(&fiber, 1.5).ok_or(MonodromyError::TrackingAmbiguity { t_re: w.re, t_im: w.im })
}

/// The unique closest pair, provided the next-closest pair is at least
/// `ratio` times farther.
fn closest_pair(fiber: &[Complex64], ratio: f64) -> Option<(usize, usize)> {
    let mut best = (f64::INFINITY, 0usize, 0usize);
    let mut second = f64::INFINITY;
    for i in 0..fiber.len() {
        for j in i + 1..fiber.len() {
            let d = (fiber[i] - fiber[j]).norm();
            if d < best.0 {
                second = best.0;
                best = (d, i, j);
            } else if d < second {
                second = d;
            }
        }
    }
    if best.0 * ratio <= second {
        Some((best.1, best.2))
    } else {
        None
    }
}

/// All per-stage numeric insertions, labeled by base-fiber positions
/// (`1..n+1`). The bijection and the cyclic orders come from loop
/// monodromies at the inter-stage levels; the total order on the inserted
/// set is the unique one whose incidence graph reproduces the measured
/// thimble edges of the stage — existence and uniqueness of that order is
/// the content of the verified theorem.
pub fn numeric_insertions(lab: &NumericLab) -> Result<Vec<NumericStage>, MonodromyError> {
    let tree = numeric_vanishing_tree(lab)?;
    (1..=lab.reg.j.stages()).map(|stage| stage_insertion(lab, stage, &tree)).collect()
}

/// Single-stage extraction (recomputes the thimble tree; use
/// [`numeric_insertions`] for all stages at once).
pub fn numeric_insertion(
    lab: &NumericLab,
    stage: usize,
) -> Result<NumericStage, MonodromyError> {
    let tree = numeric_vanishing_tree(lab)?;
    stage_insertion(lab, stage, &tree)
}

/// One stage's extracted monodromy data.
#[derive(Clone, Debug)]
pub struct NumericStage {
    pub insertion: CyclicInsertion,
    /// Number of total orders reproducing the measured vanishing edges
    /// (1 in the generic chained case).
    pub matching_orders: usize,
    /// Every total order on the inserted set whose incidence graph equals
    /// the measured vanishing edges.
    pub orders: Vec<Vec<usize>>,
}

fn stage_insertion(
    lab: &NumericLab,
    stage: usize,
    tree: &VanishingTree,
) -> Result<NumericStage, MonodromyError> {
    let j = &lab.reg.j;
    let src = lab.gamma_source(stage);
    let level_hi = lab.structure.level_logs[stage];
    let level_lo = lab.structure.level_logs[stage - 1];

    // cyclic order of the merged cluster at the outer level
    let fiber_hi = lab.transport_to(src, level_hi)?;
    let at_hi = *lab.screen.clip_inward(src, f64::INFINITY, level_hi).last().unwrap();
    let central_sizes: Vec<usize> = {
        let mut sizes = vec![j.breakpoints()[stage]];
        for l in stage + 1..=j.stages() {
            sizes.push(j.stage_size(l));
        }
        sizes
    };
    let perm_hi = lab.loop_permutation(&fiber_hi, at_hi)?;
    let central = cycle_containing_smallest_scale(&fiber_hi, &perm_hi, &central_sizes)?;
    let arrangement: Vec<usize> = central.iter().map(|&i| i + 1).collect();

    // cyclic order of the surviving cluster at the inner level
    let inner_seg = lab.screen.clip_inward(src, at_hi.re, level_lo);
    let fiber_lo = track(&lab.reg.pencil, &to_segs(&inner_seg), &fiber_hi, &lab.opts)?;
    let at_lo = *inner_seg.last().unwrap();
    let perm_lo = lab.loop_permutation(&fiber_lo, at_lo)?;
    let inner_sizes: Vec<usize> = {
        let mut sizes = vec![j.breakpoints()[stage - 1]];
        for l in stage..=j.stages() {
            sizes.push(j.stage_size(l));
        }
        sizes
    };
    let g_inner = cycle_containing_smallest_scale(&fiber_lo, &perm_lo, &inner_sizes)?;
    let s1: Vec<usize> = g_inner.iter().map(|&i| i + 1).collect();

    // the inserted set, and the unique total order matching the stage's
    // measured vanishing edges
    let s1_set: std::collections::BTreeSet<usize> = s1.iter().copied().collect();
    let inserted: Vec<usize> =
        arrangement.iter().copied().filter(|x| !s1_set.contains(x)).collect();
    let stage_edges: std::collections::BTreeSet<(usize, usize)> = tree
        .edges
        .iter()
        .filter(|e| e.stage == stage)
        .map(|e| (e.a.min(e.b), e.a.max(e.b)))
        .collect();
    let mut matching_orders = Vec::new();
    let mut order = inserted.clone();
    order.sort_unstable();
    loop {
        let cand = CyclicInsertion {
            s1: s1.clone(),
            s2: order.clone(),
            arrangement: arrangement.clone(),
        };
        if let Ok(edges) = crate::an::insertion_graph(&cand) {
            let set: std::collections::BTreeSet<(usize, usize)> =
                edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            if set == stage_edges {
                matching_orders.push(order.clone());
            }
        }
        if !next_perm(&mut order) {
            break;
        }
    }
    if matching_orders.is_empty() {
        return Err(MonodromyError::LoopStructure(format!(
            "stage {stage}: no total order reproduces the vanishing edges {stage_edges:?}"
        )));
    }
    // several orders can induce the same incidence graph when the stage is
    // shuffle-symmetric; the graph is what the theorem pins down, so the
    // lexicographically smallest matching order is reported
    Ok(NumericStage {
        insertion: CyclicInsertion {
            s1,
            s2: matching_orders[0].clone(),
            arrangement,
        },
        matching_orders: matching_orders.len(),
        orders: matching_orders,
    })
}

/// Rebuilds the lab with different logarithmic branch shifts, reusing the
/// regeneration and critical-value structure.
pub fn relift(lab: &NumericLab, shifts: &[i32]) -> Result<NumericLab, MonodromyError> {
    let j = &lab.reg.j;
    if shifts.len() != j.n {
        return Err(MonodromyError::BranchCount { expected: j.n, got: shifts.len() });
    }
    let mut values: Vec<Complex64> = lab.structure.crit.clone();
    // the virtual deep value keeps its position and a zero shift
    values.push(*lab.screen.values.last().unwrap());
    let mut ks = shifts.to_vec();
    ks.push(0);
    let min_log_gap = {
        let mut logs: Vec<f64> = values.iter().map(|v| v.norm().ln()).collect();
        logs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        logs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    };
    let epsilon = (0.2 * min_log_gap).min(0.05);
    let screen = radar_screen(&values, &Lift::Explicit(ks), epsilon)?;
    let t_base = screen.base.exp();
    let mut base_fiber = lab.reg.pencil.fiber(t_base)?;
    base_fiber.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    Ok(NumericLab {
        reg: lab.reg.clone(),
        structure: lab.structure.clone(),
        screen,
        base_fiber,
        opts: lab.opts,
    })
}

fn next_perm(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut jj = p.len() - 1;
    while p[jj] <= p[i - 1] {
        jj -= 1;
    }
    p.swap(i - 1, jj);
    p[i..].reverse();
    true
}

/// Reads the cyclic order of the central cluster off a full-loop
/// permutation: checks the modulus clusters have the expected sizes, that
/// the ring points are fixed, and that the central points form one cycle.
/// Returns the central indices in loop order.
fn cycle_containing_smallest_scale(
    fiber: &[Complex64],
    perm: &[usize],
    expected_sizes: &[usize],
) -> Result<Vec<usize>, MonodromyError> {
    let mut order: Vec<usize> = (0..fiber.len()).collect();
    order.sort_by(|&a, &b| fiber[a].norm().partial_cmp(&fiber[b].norm()).unwrap());
    let total: usize = expected_sizes.iter().sum();
    if total != fiber.len() {
        return Err(MonodromyError::ClusterStructure(format!(
            "fiber has {} points, expected {total}",
            fiber.len()
        )));
    }
    // split by expected sizes and check the gaps dominate within-group spread
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut pos = 0;
    for &size in expected_sizes {
        groups.push(order[pos..pos + size].to_vec());
        pos += size;
    }
    for w in groups.windows(2) {
        let hi = w[0].iter().map(|&i| fiber[i].norm()).fold(0.0f64, f64::max);
        let lo = w[1].iter().map(|&i| fiber[i].norm()).fold(f64::INFINITY, f64::min);
        if lo < 2.0 * hi {
            return Err(MonodromyError::ClusterStructure(format!(
                "modulus clusters not separated: {hi:.3e} vs {lo:.3e}"
            )));
        }
    }
    let central = &groups[0];
    for &i in order[central.len()..].iter() {
        if perm[i] != i {
            return Err(MonodromyError::LoopStructure(format!(
                "ring point {i} moved under the full loop"
            )));
        }
    }
    let start = *central.iter().min().unwrap();
    let mut cycle = vec![start];
    let mut cur = perm[start];
    while cur != start {
        if cycle.len() > central.len() {
            return Err(MonodromyError::LoopStructure("central cycle overruns".into()));
        }
        cycle.push(cur);
        cur = perm[cur];
    }
    if cycle.len() != central.len() {
        return Err(MonodromyError::LoopStructure(format!(
            "central points form a {}-cycle, expected {}",
            cycle.len(),
            central.len()
        )));
    }
    Ok(cycle)
}

/// Tests whether two stage-labeled trees agree after rotating one fiber's
/// cyclic order onto the other's; returns the rotation when they do. Path
/// labels within a stage are not compared — they depend on branch lifts,
/// while the stage decomposition is intrinsic.
pub fn trees_equal_up_to_rotation(a: &VanishingTree, b: &VanishingTree) -> Option<usize> {
    if a.n != b.n || a.edges.len() != b.edges.len() {
        return None;
    }
    let len = a.n + 1;
    for r in 0..len {
        // map b's label at cyclic position p to a's label at position p + r
        let mut map = std::collections::BTreeMap::new();
        for p in 0..len {
            map.insert(b.fiber_cyclic[p], a.fiber_cyclic[(p + r) % len]);
        }
        let mapped: std::collections::BTreeSet<(usize, usize, usize)> = b
            .edges
            .iter()
            .map(|e| {
                let (x, y) = (map[&e.a], map[&e.b]);
                (x.min(y), x.max(y), e.stage)
            })
            .collect();
        let target: std::collections::BTreeSet<(usize, usize, usize)> =
            a.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b), e.stage)).collect();
        if mapped == target {
            return Some(r);
        }
    }
    None
}
