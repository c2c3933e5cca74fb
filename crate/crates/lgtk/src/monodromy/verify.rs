//! End-to-end verification: random-coefficient trials comparing the numeric
//! vanishing tree against the combinatorial composition of the numeric
//! insertions, and the desk-scale surjectivity search over radar branches.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

use super::radar::Lift;
use super::stages::{lab, numeric_insertions, numeric_vanishing_tree, trees_equal_up_to_rotation};
use super::MonodromyError;
use crate::an::{vanishing_tree, CyclicInsertion, DegenerationJ};

#[derive(Debug, Clone, Serialize)]
pub struct StageReport {
    pub stage: usize,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub arrangement: Vec<usize>,
    /// Total orders on the inserted set reproducing the measured vanishing
    /// edges (1 generically; larger for shuffle-symmetric stages).
    pub matching_orders: usize,
    pub valid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub stages: Vec<StageReport>,
    pub insertions_valid: bool,
    /// Numeric thimble tree equals the tree composed from the numeric
    /// insertions (labels shared, so equality is on the nose; the rotation
    /// freedom is still allowed).
    pub tree_match: bool,
    pub cluster_moduli: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub interior: Vec<usize>,
    pub s: f64,
    pub trials: Vec<TrialReport>,
    pub all_valid: bool,
    pub all_match: bool,
}

/// Runs `trials` seeded random-coefficient regenerations of the
/// degeneration and checks, per stage, that the numeric monodromy data is a
/// valid cyclic insertion, and that the thimble tree equals the composed
/// insertion tree.
pub fn verify_theorem(
    j: &DegenerationJ,
    s0: f64,
    base_seed: u64,
    trials: u32,
) -> Result<TheoremReport, MonodromyError> {
    let mut out = Vec::with_capacity(trials as usize);
    let mut s_used = s0;
    for t in 0..trials {
        let seed = base_seed.wrapping_add(t as u64);
        let lab = lab(j, s0, seed, &Lift::Fundamental)?;
        s_used = lab.reg.s;
        let stages_data = numeric_insertions(&lab)?;
        let insertions: Vec<CyclicInsertion> =
            stages_data.iter().map(|s| s.insertion.clone()).collect();
        let mut stages = Vec::new();
        let mut insertions_valid = true;
        for (i, st) in stages_data.iter().enumerate() {
            let ins = &st.insertion;
            let valid = ins.validate().is_ok();
            insertions_valid &= valid;
            stages.push(StageReport {
                stage: i + 1,
                s1: ins.s1.clone(),
                s2: ins.s2.clone(),
                arrangement: ins.arrangement.clone(),
                matching_orders: st.matching_orders,
                valid,
            });
        }
        let composed = vanishing_tree(j, &insertions)
            .map_err(|e| MonodromyError::ClusterStructure(e.to_string()))?;
        let thimble = numeric_vanishing_tree(&lab)?;
        let tree_match = trees_equal_up_to_rotation(&thimble, &composed).is_some();
        let cluster_moduli: Vec<Vec<f64>> = (1..=j.stages())
            .map(|stage| {
                lab.structure
                    .crit
                    .iter()
                    .zip(&lab.structure.stage_of)
                    .filter(|(_, &s)| s == stage)
                    .map(|(z, _)| z.norm())
                    .collect()
            })
            .collect();
        out.push(TrialReport { seed, stages, insertions_valid, tree_match, cluster_moduli });
    }
    Ok(TheoremReport {
        n: j.n,
        interior: j.interior().into_iter().collect(),
        s: s_used,
        all_valid: out.iter().all(|t| t.insertions_valid),
        all_match: out.iter().all(|t| t.tree_match),
        trials: out,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SurjectivityReport {
    pub n: usize,
    /// Number of distinct (insertion, order) pairs predicted: `n!`.
    pub target: usize,
    pub found: usize,
    pub complete: bool,
    pub runs: usize,
    /// Canonical keys still missing when incomplete.
    pub missing: Vec<Vec<usize>>,
}

/// Canonical key of a single-circuit (insertion, order) pair: the
/// arrangement read from the base point of `S1`, with each `S2` element
/// replaced by its order rank `1..n` and the `S1` point by `0`.
fn canonical_key(ins: &CyclicInsertion) -> Vec<usize> {
    let pos = ins
        .arrangement
        .iter()
        .position(|x| x == &ins.s1[0])
        .expect("S1 point sits in the arrangement");
    let m = ins.arrangement.len();
    (0..m)
        .map(|k| {
            let x = ins.arrangement[(pos + k) % m];
            ins.s2.iter().position(|&y| y == x).map(|r| r + 1).unwrap_or(0)
        })
        .collect()
}

/// For the single-circuit degeneration `J = {1, n+1}`, searches coefficient
/// seeds (norm orders) and logarithmic branch shifts until every cyclic
/// insertion with every total order has been realized by an actual
/// monodromy run. A run whose vanishing graph is reproduced by several
/// orders realizes each of those (insertion, order) pairs.
pub fn surjectivity_search(
    n: usize,
    s0: f64,
    max_seeds: u64,
    max_runs: usize,
) -> Result<SurjectivityReport, MonodromyError> {
    let j = DegenerationJ::from_interior(n, &BTreeSet::new())
        .expect("single-circuit degeneration");
    let target: usize = (1..=n).product();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut runs = 0usize;
    let shift_range: Vec<i32> = (0..=(n as i32 + 1) / 2).flat_map(|k| {
        if k == 0 { vec![0] } else { vec![k, -k] }
    }).collect();
    'outer: for seed in 0..max_seeds {
        if found.len() == target || runs >= max_runs {
            break;
        }
        let Ok(base_lab) = super::stages::lab(&j, s0, seed, &Lift::Fundamental) else {
            continue;
        };
        // branch shifts are independent runs; explore them in parallel in
        // deterministic batches
        let grid = shift_grid(n, &shift_range);
        for chunk in grid.chunks(64) {
            if found.len() == target || runs >= max_runs {
                break 'outer;
            }
            let results: Vec<Vec<Vec<usize>>> = chunk
                .par_iter()
                .map(|shifts| {
                    let Ok(l) = super::stages::relift(&base_lab, shifts) else {
                        return vec![];
                    };
                    let Ok(ins) = numeric_insertions(&l) else {
                        return vec![];
                    };
                    let stage = &ins[0];
                    if stage.insertion.validate().is_err() {
                        return vec![];
                    }
                    stage
                        .orders
                        .iter()
                        .map(|order| {
                            canonical_key(&CyclicInsertion {
                                s1: stage.insertion.s1.clone(),
                                s2: order.clone(),
                                arrangement: stage.insertion.arrangement.clone(),
                            })
                        })
                        .collect()
                })
                .collect();
            runs += chunk.len();
            for keys in results {
                for key in keys {
                    found.insert(key);
                }
            }
        }
    }
    let missing: Vec<Vec<usize>> = if found.len() == target {
        vec![]
    } else {
        all_keys(n).into_iter().filter(|k| !found.contains(k)).collect()
    };
    Ok(SurjectivityReport {
        n,
        target,
        found: found.len(),
        complete: found.len() == target,
        runs,
        missing,
    })
}

fn all_keys(n: usize) -> Vec<Vec<usize>> {
    // permutations of 1..n after the leading 0
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        let mut key = vec![0];
        key.extend(&perm);
        out.push(key);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
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

fn shift_grid(n: usize, range: &[i32]) -> Vec<Vec<i32>> {
    let mut out: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * range.len());
        for base in &out {
            for &r in range {
                let mut v = base.clone();
                v.push(r);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalComparison {
    pub stage: usize,
    pub matches_up_to_rotation: bool,
}

/// Compares the numeric insertions of the seeded default run against the
/// canonical combinatorial data, stage by stage, up to rotation of the
/// arrangement.
pub fn compare_with_canonical(
    j: &DegenerationJ,
    s0: f64,
    seed: u64,
) -> Result<Vec<CanonicalComparison>, MonodromyError> {
    let l = lab(j, s0, seed, &Lift::Fundamental)?;
    let numeric = numeric_insertions(&l)?;
    let canonical = crate::an::canonical_insertions(j);
    Ok(numeric
        .iter()
        .zip(&canonical)
        .enumerate()
        .map(|(i, (num, can))| {
            // compare as cyclic words over (is-new, rank) with S1 anchored
            let matches = insertion_equal_up_to_rotation(&num.insertion, can);
            CanonicalComparison { stage: i + 1, matches_up_to_rotation: matches }
        })
        .collect())
}

/// Structural equality of two insertions as cyclic arrangements: there is a
/// rotation matching them which sends `S1` cyclic orders and `S2` ranks onto
/// each other.
pub fn insertion_equal_up_to_rotation(a: &CyclicInsertion, b: &CyclicInsertion) -> bool {
    if a.s1.len() != b.s1.len() || a.s2.len() != b.s2.len() {
        return false;
    }
    // replace labels by (class, index-along-own-order)
    let encode = |ins: &CyclicInsertion| -> Vec<(bool, usize)> {
        let s1_pos: BTreeMap<usize, usize> =
            ins.s1.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let s2_pos: BTreeMap<usize, usize> =
            ins.s2.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        ins.arrangement
            .iter()
            .map(|x| {
                if let Some(&r) = s2_pos.get(x) {
                    (true, r)
                } else {
                    (false, s1_pos[x])
                }
            })
            .collect()
    };
    let ea = encode(a);
    let eb = encode(b);
    let m = ea.len();
    // rotations of the arrangement and of the S1 cyclic base point
    for rot in 0..m {
        for s1_shift in 0..a.s1.len().max(1) {
            let ok = (0..m).all(|p| {
                let (new_a, ia) = ea[(p + rot) % m];
                let (new_b, ib) = eb[p];
                if new_a != new_b {
                    return false;
                }
                if new_a {
                    ia == ib
                } else {
                    (ia + s1_shift) % a.s1.len() == ib
                }
            });
            if ok {
                return true;
            }
        }
    }
    false
}
