//! Covering-number computations: certified brackets for the weighted
//! (fractional) covering number, classical covers by greedy and exact search,
//! and the homothety schedule toward the interior-covering limit.
//!
//! Net transfer works at the certified net radius `rho` (= delta/2 for the
//! grid construction):
//!
//! - cover side: the LP over a rho-net of `K` with matrix body `T + rho*B`
//!   upper-bounds `N_omega(K, T + 2*rho*B)`; any true weighted cover of `K`
//!   by `T` snaps onto the net within `rho`, so the value does not exceed
//!   `N_omega(K, T)` whenever the optimum survives atom snapping.
//! - separation side: the LP over a rho-net of `K + T` (augmented with a
//!   rho-net of `K`, so the K-part is itself a net of `K`) with body
//!   `T + rho*B` lower-bounds `M_omega(K, T)`.
//!
//! A bracket for `N*(K,T) = M_omega(K,-T)` combines the cover value for `T`
//! with the separation value for `-T`.

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, DEFAULT_TOL};
use crate::lp::{build_cover_lp, CoverLp};
use crate::nets::{grid_net, Net, NetConfig};
use crate::point::Point;
use serde::Serialize;

/// Discrete weighted cover: atoms, total weight and the verification margin.
#[derive(Clone, Debug, Serialize)]
pub struct WeightedCover {
    pub atoms: Vec<(Point, f64)>,
    pub total_weight: f64,
    /// Matrix body the margins were verified against (original body plus the
    /// net-radius inflation).
    #[serde(skip)]
    pub body: ConvexBody,
    /// Minimum over verification points of the covered mass.
    pub checked_margin: f64,
    pub verified: bool,
}

/// Integral cover: translate centers plus a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralCover {
    pub centers: Vec<Point>,
    #[serde(skip)]
    pub body: ConvexBody,
    pub verified: bool,
    /// Fraction of verification points covered (1.0 when verified).
    pub coverage: f64,
}

/// What a bracket endpoint certifies, machine-readable.
#[derive(Clone, Debug, Serialize)]
pub struct BoundMeaning {
    /// one of "lower_bounds" / "upper_bounds"
    pub relation: &'static str,
    /// the exact perturbed quantity bounded
    pub quantity: String,
    /// net radius entering the perturbation
    pub rho: f64,
}

/// Certified interval for a covering number.
#[derive(Clone, Debug, Serialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
    /// net scale of the reported stage
    pub delta: f64,
    pub lower_meaning: BoundMeaning,
    pub upper_meaning: BoundMeaning,
    /// set when the schedule ran out before reaching the target gap
    pub gap_warning: bool,
    pub stages: Vec<BracketStage>,
    /// primal support of the cover LP at the reported stage
    pub atoms: Vec<(Point, f64)>,
}

impl Bracket {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        self.lower - tol <= v && v <= self.upper + tol
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketStage {
    pub delta: f64,
    pub upper: f64,
    pub lower: f64,
    pub cover_net_points: usize,
    pub separation_net_points: usize,
}

/// Where candidate centers may lie for the cover LP.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterMode {
    /// centers restricted to the net of `K` (the restricted variant)
    InK,
    /// centers from a net of the dilated domain `K + (-T)`
    Dilated,
}

#[derive(Clone, Debug, Default)]
pub struct CoveringConfig {
    pub net: NetConfig,
}

/// Outcome of the separation LP: the value plus its separated atoms.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationOutcome {
    pub value: f64,
    pub atoms: Vec<(Point, f64)>,
    pub net_points: usize,
    pub rho: f64,
}

/// Fractional cover of the net of `K` by translates of `T` (matrix body
/// inflated by the certified net radius). The value upper-bounds
/// `N_omega(K, T + delta*B)`.
pub fn fractional_cover_on_net(
    k: &ConvexBody,
    t: &ConvexBody,
    delta: f64,
    cfg: &CoveringConfig,
) -> Result<(WeightedCover, f64)> {
    let (cover, value, _) = cover_lp_on_net(k, t, delta, CenterMode::InK, cfg)?;
    Ok((cover, value))
}

fn cover_lp_on_net(
    k: &ConvexBody,
    t: &ConvexBody,
    delta: f64,
    mode: CenterMode,
    cfg: &CoveringConfig,
) -> Result<(WeightedCover, f64, Net)> {
    check_dims(k, t)?;
    let net = grid_net(k, delta, &cfg.net)?;
    let rho = net.certified_radius;
    let t_infl = t.inflate(rho)?;
    let centers: Vec<Point> = match mode {
        CenterMode::InK => net.points.clone(),
        CenterMode::Dilated => {
            let dil = k.minkowski_sum(&t.negate())?;
            grid_net(&dil, delta, &cfg.net)?.points
        }
    };
    let mut lp = build_cover_lp(&centers, &net.points, &t_infl, k)?;
    let (value, weights) = lp.solve_primal()?;
    let cover = extract_cover(&lp, &centers, &weights, t_infl);
    Ok((cover, value, net))
}

fn extract_cover(
    lp: &CoverLp,
    centers: &[Point],
    weights: &[f64],
    body: ConvexBody,
) -> WeightedCover {
    let atoms: Vec<(Point, f64)> = centers
        .iter()
        .zip(weights.iter())
        .filter(|(_, w)| **w > 1e-12)
        .map(|(p, w)| (*p, *w))
        .collect();
    let total_weight: f64 = atoms.iter().map(|(_, w)| w).sum();
    let mut margin = f64::INFINITY;
    for i in 0..lp.rows() {
        if lp.c[i] > 0.5 {
            let v = lp.matrix.row_dot(i, weights);
            if v < margin {
                margin = v;
            }
        }
    }
    WeightedCover {
        atoms,
        total_weight,
        body,
        checked_margin: margin,
        verified: margin >= 1.0 - 1e-9,
    }
}

/// Separation value on a net of `K + T`, augmented so that its K-part nets
/// `K`. The returned value lower-bounds `M_omega(K, T)`.
pub fn fractional_separation_on_net(
    k: &ConvexBody,
    t: &ConvexBody,
    delta: f64,
    cfg: &CoveringConfig,
) -> Result<SeparationOutcome> {
    check_dims(k, t)?;
    let domain = k.minkowski_sum(t)?;
    let net_d = grid_net(&domain, delta, &cfg.net)?;
    let net_k = grid_net(k, delta, &cfg.net)?;
    let rho = net_d.certified_radius.max(net_k.certified_radius);
    // columns: packing constraints at every net point; rows: atoms in K
    let mut columns = net_d.points.clone();
    columns.extend_from_slice(&net_k.points);
    let rows: Vec<Point> = columns
        .iter()
        .filter(|p| k.contains_point(p, DEFAULT_TOL))
        .copied()
        .collect();
    if rows.is_empty() {
        return Err(Error::EmptyPointList);
    }
    // matrix body -(T + rho*B): M[i][j] = 1 iff column_j in row_i + (T+rho*B)
    let body = t.inflate(rho)?.negate();
    let mut lp = build_cover_lp(&columns, &rows, &body, k)?;
    let (value, y) = lp.solve_dual()?;
    let atoms: Vec<(Point, f64)> = rows
        .iter()
        .zip(y.iter())
        .filter(|(_, w)| **w > 1e-12)
        .map(|(p, w)| (*p, *w))
        .collect();
    Ok(SeparationOutcome {
        value,
        atoms,
        net_points: columns.len(),
        rho,
    })
}

/// Certified bracket for `N*(K,T)` along a decreasing delta schedule.
///
/// For each stage: `upper` is the cover-LP value for `T` (upper-bounds the
/// `2*rho`-inflated weighted covering number), `lower` the separation value
/// for `-T` (lower-bounds `M_omega(K,-T) = N*(K,T)`). Stops when the gap
/// reaches `target_gap`; otherwise flags the warning and keeps the best
/// stage.
pub fn bracket_weighted_cover(
    k: &ConvexBody,
    t: &ConvexBody,
    schedule: &[f64],
    target_gap: f64,
    cfg: &CoveringConfig,
) -> Result<Bracket> {
    check_dims(k, t)?;
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("empty delta schedule".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter(
            "delta schedule must be strictly decreasing".into(),
        ));
    }
    let mut stages: Vec<BracketStage> = Vec::new();
    let mut best: Option<(usize, f64, Vec<(Point, f64)>, f64)> = None; // (stage, gap, atoms, rho)
    for &delta in schedule {
        let (cover, upper, net) = cover_lp_on_net(k, t, delta, CenterMode::InK, cfg)?;
        let sep = fractional_separation_on_net(k, &t.negate(), delta, cfg)?;
        let stage = BracketStage {
            delta,
            upper,
            lower: sep.value,
            cover_net_points: net.points.len(),
            separation_net_points: sep.net_points,
        };
        let gap = upper - sep.value;
        stages.push(stage);
        let better = match &best {
            None => true,
            Some((_, g, _, _)) => gap < *g - 1e-12,
        };
        if better {
            best = Some((stages.len() - 1, gap, cover.atoms.clone(), net.certified_radius));
        }
        if gap <= target_gap {
            break;
        }
    }
    let (idx, gap, atoms, rho) = best.unwrap();
    let stage = &stages[idx];
    Ok(Bracket {
        lower: stage.lower,
        upper: stage.upper,
        delta: stage.delta,
        lower_meaning: BoundMeaning {
            relation: "lower_bounds",
            quantity: "M_omega(K,-T) = N*(K,T)".into(),
            rho,
        },
        upper_meaning: BoundMeaning {
            relation: "upper_bounds",
            quantity: format!("N_omega(K, T + {:.3e}*B)", 2.0 * rho),
            rho,
        },
        gap_warning: gap > target_gap,
        stages,
        atoms,
    })
}

/// Greedy set cover of the net by eroded translates; the returned centers
/// with body `T` cover all of `K`.
pub fn classical_cover_greedy(
    k: &ConvexBody,
    t: &ConvexBody,
    delta: f64,
    cfg: &CoveringConfig,
) -> Result<IntegralCover> {
    greedy_cover_with_margin(k, t, delta, 1.0, cfg)
}

/// Greedy cover with erosion `margin_factor * rho`; `margin_factor = 2`
/// yields covers that stay valid after a further `rho` inflation of the
/// covered side (used by the rounding pipeline).
pub(crate) fn greedy_cover_with_margin(
    k: &ConvexBody,
    t: &ConvexBody,
    delta: f64,
    margin_factor: f64,
    cfg: &CoveringConfig,
) -> Result<IntegralCover> {
    check_dims(k, t)?;
    let net = grid_net(k, delta, &cfg.net)?;
    let rho = net.certified_radius;
    let t_eroded = t.erode(margin_factor * rho)?;
    let lp = build_cover_lp(&net.points, &net.points, &t_eroded, k)?;
    let chosen = greedy_on_lp(&lp)?;
    let centers: Vec<Point> = chosen.iter().map(|&j| net.points[j]).collect();
    // verify: every net point covered by a chosen eroded translate
    let mut covered = vec![false; lp.rows()];
    for &j in &chosen {
        for i in lp.matrix.col_ones(j) {
            covered[i] = true;
        }
    }
    let verified = covered.iter().all(|&b| b);
    let coverage = covered.iter().filter(|&&b| b).count() as f64 / lp.rows() as f64;
    Ok(IntegralCover {
        centers,
        body: t.clone(),
        verified,
        coverage,
    })
}

/// Greedy column selection on a built LP (lowest column index on ties).
fn greedy_on_lp(lp: &CoverLp) -> Result<Vec<usize>> {
    let rows = lp.rows();
    let cols = lp.cols();
    let mut uncovered: Vec<bool> = (0..rows).map(|i| lp.c[i] > 0.5).collect();
    let mut remaining = uncovered.iter().filter(|&&b| b).count();
    // reject impossible instances up front
    for i in 0..rows {
        if uncovered[i] && lp.matrix.count_row(i) == 0 {
            return Err(Error::UncoverablePoint { index: i });
        }
    }
    let mut chosen = Vec::new();
    while remaining > 0 {
        let mut best_j = usize::MAX;
        let mut best_gain = 0usize;
        for j in 0..cols {
            let gain = lp.matrix.col_ones(j).filter(|&i| uncovered[i]).count();
            if gain > best_gain {
                best_gain = gain;
                best_j = j;
            }
        }
        if best_gain == 0 {
            return Err(Error::SolverFailure(
                "greedy cover stalled with uncovered rows".into(),
            ));
        }
        chosen.push(best_j);
        for i in lp.matrix.col_ones(best_j) {
            if uncovered[i] {
                uncovered[i] = false;
                remaining -= 1;
            }
        }
    }
    Ok(chosen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExactCoverStatus {
    Exact,
    BudgetExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactCoverResult {
    pub count: usize,
    pub column_indices: Vec<usize>,
    pub status: ExactCoverStatus,
    pub nodes: usize,
}

/// Exact minimum 0/1 cover by branch and bound.
///
/// Requires `cols <= 64` unless a node budget is given; on budget exhaustion
/// the best found (greedy-initialized) solution is returned with the status
/// flagged.
pub fn classical_cover_exact_small(lp: &CoverLp, max_nodes: usize) -> Result<ExactCoverResult> {
    if lp.cols() > 64 && max_nodes == 0 {
        return Err(Error::InvalidParameter(format!(
            "exact cover requires cols <= 64 (got {}) or an explicit node budget",
            lp.cols()
        )));
    }
    let budget = if max_nodes == 0 { 1_000_000 } else { max_nodes };
    let rows: Vec<usize> = (0..lp.rows()).filter(|&i| lp.c[i] > 0.5).collect();
    if rows.is_empty() {
        return Ok(ExactCoverResult {
            count: 0,
            column_indices: Vec::new(),
            status: ExactCoverStatus::Exact,
            nodes: 0,
        });
    }
    for &i in &rows {
        if lp.matrix.count_row(i) == 0 {
            return Err(Error::UncoverablePoint { index: i });
        }
    }
    // per-column bitmask over the required rows
    let words = rows.len().div_ceil(64);
    let row_pos: std::collections::HashMap<usize, usize> =
        rows.iter().enumerate().map(|(pos, &i)| (i, pos)).collect();
    let col_masks: Vec<Vec<u64>> = (0..lp.cols())
        .map(|j| {
            let mut mask = vec![0u64; words];
            for i in lp.matrix.col_ones(j) {
                if let Some(&pos) = row_pos.get(&i) {
                    mask[pos / 64] |= 1u64 << (pos % 64);
                }
            }
            mask
        })
        .collect();
    let full: Vec<u64> = {
        let mut m = vec![u64::MAX; words];
        let spare = words * 64 - rows.len();
        if spare > 0 {
            m[words - 1] >>= spare;
        }
        m
    };
    // greedy upper bound for pruning
    let greedy = greedy_on_lp(lp)?;
    let max_col_cover = col_masks
        .iter()
        .map(|m| m.iter().map(|w| w.count_ones() as usize).sum::<usize>())
        .max()
        .unwrap_or(1)
        .max(1);
    let lp_bound = lp
        .solution()
        .map(|s| (s.primal_value - 1e-9).ceil() as usize)
        .unwrap_or(0);

    struct Search<'a> {
        col_masks: &'a [Vec<u64>],
        best: usize,
        best_cols: Vec<usize>,
        nodes: usize,
        budget: usize,
        exhausted: bool,
        max_col_cover: usize,
        lp_bound: usize,
    }
    impl Search<'_> {
        fn run(&mut self, uncovered: &[u64], chosen: &mut Vec<usize>) {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            let remaining: usize = uncovered.iter().map(|w| w.count_ones() as usize).sum();
            if remaining == 0 {
                if chosen.len() < self.best {
                    self.best = chosen.len();
                    self.best_cols = chosen.clone();
                }
                return;
            }
            let bound = chosen.len() + remaining.div_ceil(self.max_col_cover);
            if bound >= self.best || chosen.len() + 1 > self.best {
                return;
            }
            if self.best <= self.lp_bound {
                return; // already matches the LP lower bound
            }
            // branch on the uncovered row with fewest candidate columns
            let mut pivot_row = None;
            let mut fewest = usize::MAX;
            for (w, word) in uncovered.iter().enumerate() {
                let mut bits = *word;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let pos = w * 64 + b;
                    let cand = self
                        .col_masks
                        .iter()
                        .filter(|m| m[pos / 64] >> (pos % 64) & 1 == 1)
                        .count();
                    if cand < fewest {
                        fewest = cand;
                        pivot_row = Some(pos);
                    }
                }
            }
            let Some(pos) = pivot_row else { return };
            let mut cands: Vec<usize> = (0..self.col_masks.len())
                .filter(|&j| self.col_masks[j][pos / 64] >> (pos % 64) & 1 == 1)
                .collect();
            // larger coverage first, index as tiebreak (already ascending)
            cands.sort_by_key(|&j| {
                std::cmp::Reverse(
                    self.col_masks[j]
                        .iter()
                        .zip(uncovered.iter())
                        .map(|(m, u)| (m & u).count_ones() as usize)
                        .sum::<usize>(),
                )
            });
            for j in cands {
                let next: Vec<u64> = uncovered
                    .iter()
                    .zip(self.col_masks[j].iter())
                    .map(|(u, m)| u & !m)
                    .collect();
                chosen.push(j);
                self.run(&next, chosen);
                chosen.pop();
                if self.exhausted || self.best <= self.lp_bound {
                    return;
                }
            }
        }
    }
    let mut search = Search {
        col_masks: &col_masks,
        best: greedy.len(),
        best_cols: greedy.clone(),
        nodes: 0,
        budget,
        exhausted: false,
        max_col_cover,
        lp_bound,
    };
    let mut chosen = Vec::new();
    search.run(&full, &mut chosen);
    Ok(ExactCoverResult {
        count: search.best,
        column_indices: search.best_cols,
        status: if search.exhausted {
            ExactCoverStatus::BudgetExceeded
        } else {
            ExactCoverStatus::Exact
        },
        nodes: search.nodes,
    })
}

/// Brackets of `N_omega(K, lambda*K)` along an increasing homothety schedule,
/// reported against the Hadwiger-type ceilings.
#[derive(Clone, Debug, Serialize)]
pub struct HadwigerEntry {
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HadwigerWeightedReport {
    pub entries: Vec<HadwigerEntry>,
    pub ceiling_symmetric: f64,
    pub ceiling_general: f64,
}

pub fn hadwiger_weighted(
    k: &ConvexBody,
    lambda_schedule: &[f64],
    delta: f64,
    cfg: &CoveringConfig,
) -> Result<HadwigerWeightedReport> {
    if lambda_schedule.iter().any(|&l| l <= 0.0 || l >= 1.0) {
        return Err(Error::InvalidParameter(
            "lambda schedule must lie strictly in (0, 1)".into(),
        ));
    }
    if lambda_schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "lambda schedule must be strictly increasing".into(),
        ));
    }
    // center at the interior witness so the homothety shrinks into the body
    let k_centered = if k.contains_point(&Point::zero(k.dim()), -1e-9) {
        k.clone()
    } else {
        k.translate(&k.interior_point().neg().to_vec())?
    };
    let n = k.dim() as u32;
    let mut entries = Vec::new();
    for &lambda in lambda_schedule {
        let t = k_centered.scale(lambda)?;
        let bracket = bracket_weighted_cover(&k_centered, &t, &[delta], f64::INFINITY, cfg)?;
        entries.push(HadwigerEntry {
            lambda,
            lower: bracket.lower,
            upper: bracket.upper,
            delta: bracket.delta,
        });
    }
    Ok(HadwigerWeightedReport {
        entries,
        ceiling_symmetric: 2f64.powi(n as i32),
        ceiling_general: binomial(2 * n as u64, n as u64),
    })
}

pub(crate) fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut v = 1.0f64;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v.round()
}

fn check_dims(k: &ConvexBody, t: &ConvexBody) -> Result<()> {
    if k.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: t.dim(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests;
