//! Degree and weight statistics that drive the step schedule.
//!
//! For a distance threshold `x`, `VS(x)` is the set of vertices whose shortest
//! distance is at least `x` (unreached vertices included). The schedule tracks
//!
//! * `sumD(x)`, the total degree of `VS(x)`;
//! * `highD(x)`, the degree threshold that splits `VS(x)` into two halves of
//!   roughly equal degree mass;
//!
//! and combines them with the weight quantiles of [`WeightQuantizer`] into
//!
//! * the *dynamic step*: `gap(x)`, the width of the next distance band, and
//! * the *selection threshold*: how far below the band settled vertices switch
//!   from pushing their edges to answering pull requests.
//!
//! The closed forms live in [`formulas`]; [`StepSchedule`] feeds them with the
//! statistics of a running solve.

use crate::error::{Error, Result};
use crate::graph::{DegreeStats, WeightQuantizer};

pub const DEFAULT_ALPHA: u32 = 3;
pub const DEFAULT_BETA: f64 = 0.9;
pub const DEFAULT_ST_NUM: usize = 1 << 10;

/// How `compute_st` enumerates selection-threshold candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CandidateMode {
    /// `st_num + 1` evenly spaced points over `[st0, st1]`.
    #[default]
    Grid,
    /// Every settled distance. Quadratic overall; meant for analysis runs.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepParams {
    /// Degree threshold below which a band is given the full weight range.
    pub alpha: u32,
    /// Cap on `prob`, in `(0, 1)`.
    pub beta: f64,
    pub st_num: usize,
    pub candidates: CandidateMode,
}

impl Default for StepParams {
    fn default() -> Self {
        StepParams {
            alpha: DEFAULT_ALPHA,
            beta: DEFAULT_BETA,
            st_num: DEFAULT_ST_NUM,
            candidates: CandidateMode::Grid,
        }
    }
}

impl StepParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::Argument(format!("beta {} outside (0, 1)", self.beta)));
        }
        if self.st_num == 0 {
            return Err(Error::Argument("st_num must be positive".into()));
        }
        Ok(())
    }
}

/// Closed-form pieces of the two heuristics, free of any solver state.
pub mod formulas {
    use crate::graph::WeightQuantizer;

    /// Share of the degree mass on the larger side of `x`, capped at `beta`.
    pub fn prob(sum_d: f64, total_degree: f64, beta: f64) -> f64 {
        beta.min(sum_d.max(total_degree - sum_d) / total_degree)
    }

    /// Per-edge probability that makes a band of `high_d`-degree vertices
    /// unlikely to be crossed by a shorter path.
    pub fn ratio(prob: f64, high_d: f64) -> f64 {
        1.0 - (1.0 - prob).powf(1.0 / (prob * high_d))
    }

    /// Clamped band ends used by the traversal estimators.
    #[derive(Clone, Copy, Debug, PartialEq)]
    pub struct Clamp {
        pub lb0: f64,
        pub ub0: f64,
        pub ub1: f64,
    }

    /// A path shorter than `lb - max_w` cannot reach `[lb, y)` in one edge, and
    /// no new path can be longer than `lb + max_w`.
    pub fn clamp(x: f64, lb: f64, y: f64, max_w: f64) -> Clamp {
        let lb0 = x.max(lb - max_w);
        Clamp {
            lb0,
            ub0: y.min(lb + max_w),
            ub1: y.min(lb0 + max_w),
        }
    }

    /// Arcs pushed by settled vertices in `[lb0, lb)` into the band `[lb, ub0)`.
    pub fn pushed(lb: f64, ub0: f64, sum_d_lb0: f64, sum_d_lb: f64, max_w: f64) -> f64 {
        (ub0 - lb) * (sum_d_lb0 - sum_d_lb) / max_w
    }

    /// Pull requests sent by unsettled vertices along arcs lighter than `ub1 - lb0`.
    pub fn pulled(lb0: f64, ub1: f64, sum_d_lb: f64, max_w: f64) -> f64 {
        (ub1 - lb0) * sum_d_lb / max_w
    }

    /// Band width: the full weight range while high-degree vertices are
    /// rare (`high_d <= alpha`), otherwise the weight quantile `ratio`.
    pub fn gap(high_d: u32, alpha: u32, prob: f64, quantizer: &WeightQuantizer) -> f64 {
        if high_d <= alpha {
            quantizer.max_weight()
        } else {
            quantizer.lookup(ratio(prob, high_d as f64))
        }
    }

    /// Pulled arcs whose far end is settled in `[lb0, lb)`.
    pub fn long(pulled: f64, sum_d_lb0: f64, sum_d_lb: f64, total_degree: f64) -> f64 {
        pulled * (sum_d_lb0 - sum_d_lb) / total_degree
    }
}

/// Degree threshold `t` splitting a degree histogram into `{deg < t}` and
/// `{deg >= t}` with the smallest difference in degree mass.
///
/// Candidates are the positive degrees present in the histogram; ties go to
/// the smaller threshold. `None` if no vertex has positive degree.
pub fn balanced_degree_threshold(histogram: &[u64]) -> Option<u32> {
    let total: u128 = histogram
        .iter()
        .enumerate()
        .map(|(d, &c)| d as u128 * c as u128)
        .sum();
    let mut below: u128 = 0;
    let mut best: Option<(u128, u32)> = None;
    for (d, &count) in histogram.iter().enumerate().skip(1) {
        if count == 0 {
            continue;
        }
        let above = total - below;
        let diff = below.abs_diff(above);
        if best.is_none_or(|(b, _)| diff < b) {
            best = Some((diff, d as u32));
        }
        below += d as u128 * count as u128;
    }
    best.map(|(_, t)| t)
}

/// Statistics of the vertices settled so far, maintained at step boundaries.
///
/// Vertices settle in increasing distance bands, so the settled list stays
/// sorted by appending each band after sorting it. `sumD` of any threshold at or
/// below the current boundary is then a binary search over degree prefix sums.
#[derive(Clone, Debug)]
pub struct StepSchedule {
    params: StepParams,
    total_degree: u64,
    unsettled_degree_sum: u64,
    unsettled_histogram: Vec<u64>,
    settled_dist: Vec<f64>,
    /// `settled_prefix[i]` = degree mass of the first `i` settled vertices.
    settled_prefix: Vec<u64>,
    boundary: f64,
    st0: Option<f64>,
    st1: Option<f64>,
    gaps: Vec<(f64, f64)>,
}

impl StepSchedule {
    pub fn new(degrees: &DegreeStats, params: StepParams) -> Self {
        StepSchedule {
            params,
            total_degree: degrees.total_degree,
            unsettled_degree_sum: degrees.total_degree,
            unsettled_histogram: degrees.histogram.clone(),
            settled_dist: Vec::new(),
            settled_prefix: vec![0],
            boundary: 0.0,
            st0: None,
            st1: None,
            gaps: Vec::new(),
        }
    }

    pub fn params(&self) -> &StepParams {
        &self.params
    }

    /// `2 |E|`.
    pub fn total_degree(&self) -> u64 {
        self.total_degree
    }

    pub fn edge_count(&self) -> u64 {
        self.total_degree / 2
    }

    /// The current lower bound: every vertex closer than this is settled.
    pub fn boundary(&self) -> f64 {
        self.boundary
    }

    pub fn unsettled_degree_sum(&self) -> u64 {
        self.unsettled_degree_sum
    }

    pub fn settled_count(&self) -> usize {
        self.settled_dist.len()
    }

    pub fn st0(&self) -> Option<f64> {
        self.st0
    }

    pub fn st1(&self) -> Option<f64> {
        self.st1
    }

    pub fn set_st0(&mut self, st0: f64) {
        self.st0 = Some(st0);
    }

    /// Records a band of newly settled `(distance, degree)` pairs and moves the
    /// boundary to `new_boundary`.
    ///
    /// Every distance must lie in `[old boundary, new_boundary)`.
    pub fn settle(&mut self, mut band: Vec<(f64, u32)>, new_boundary: f64) {
        debug_assert!(new_boundary >= self.boundary);
        band.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        debug_assert!(band
            .first()
            .is_none_or(|&(d, _)| d >= self.settled_dist.last().copied().unwrap_or(0.0)));
        debug_assert!(band.last().is_none_or(|&(d, _)| d < new_boundary));
        for (dist, degree) in band {
            let mass = *self.settled_prefix.last().unwrap() + degree as u64;
            self.settled_dist.push(dist);
            self.settled_prefix.push(mass);
            self.unsettled_degree_sum -= degree as u64;
            self.unsettled_histogram[degree as usize] -= 1;
        }
        self.boundary = new_boundary;
        if self.st1.is_none() && self.unsettled_degree_sum <= self.edge_count() {
            self.st1 = Some(new_boundary);
        }
    }

    /// `sumD(x)` for any `x` up to the current boundary.
    pub fn sum_d(&self, x: f64) -> Result<u64> {
        if x > self.boundary {
            return Err(Error::Query(format!(
                "sumD({x}) requested beyond the settled boundary {}",
                self.boundary
            )));
        }
        let below = self.settled_dist.partition_point(|&d| d < x);
        Ok(self.total_degree - self.settled_prefix[below])
    }

    /// `highD` of the unsettled set at the current boundary.
    pub fn high_d(&self, x: f64) -> Result<u32> {
        if x != self.boundary {
            return Err(Error::Query(format!(
                "highD is only tracked at the current boundary {}, not {x}",
                self.boundary
            )));
        }
        balanced_degree_threshold(&self.unsettled_histogram)
            .ok_or_else(|| Error::Query(format!("VS({x}) holds no vertex with edges")))
    }

    pub fn prob(&self, x: f64) -> Result<f64> {
        if self.total_degree == 0 {
            return Err(Error::Argument("prob is undefined without edges".into()));
        }
        Ok(formulas::prob(
            self.sum_d(x)? as f64,
            self.total_degree as f64,
            self.params.beta,
        ))
    }

    pub fn ratio(&self, x: f64) -> Result<f64> {
        Ok(formulas::ratio(self.prob(x)?, self.high_d(x)? as f64))
    }

    /// Width of the band starting at `x`; remembered so that `compute_st`
    /// can later ask whether a past band used the full weight range.
    pub fn gap(&mut self, quantizer: &WeightQuantizer, x: f64) -> Result<f64> {
        let gap = formulas::gap(self.high_d(x)?, self.params.alpha, self.prob(x)?, quantizer);
        if let Some(entry) = self.gaps.iter_mut().rev().find(|(b, _)| *b == x) {
            entry.1 = gap;
        } else {
            self.gaps.push((x, gap));
        }
        Ok(gap)
    }

    /// A gap previously computed by [`StepSchedule::gap`].
    pub fn recorded_gap(&self, x: f64) -> Option<f64> {
        self.gaps.iter().rev().find(|(b, _)| *b == x).map(|&(_, g)| g)
    }

    fn clamped(&self, x: f64, lb: f64, y: f64, quantizer: &WeightQuantizer) -> Result<(formulas::Clamp, f64, f64)> {
        let c = formulas::clamp(x, lb, y, quantizer.max_weight());
        Ok((c, self.sum_d(c.lb0)? as f64, self.sum_d(lb)? as f64))
    }

    pub fn estimate_pushed(&self, x: f64, lb: f64, y: f64, quantizer: &WeightQuantizer) -> Result<f64> {
        let (c, s0, s) = self.clamped(x, lb, y, quantizer)?;
        Ok(formulas::pushed(lb, c.ub0, s0, s, quantizer.max_weight()))
    }

    pub fn estimate_pulled(&self, x: f64, lb: f64, y: f64, quantizer: &WeightQuantizer) -> Result<f64> {
        let (c, _, s) = self.clamped(x, lb, y, quantizer)?;
        Ok(formulas::pulled(c.lb0, c.ub1, s, quantizer.max_weight()))
    }

    pub fn estimate_long(&self, x: f64, lb: f64, y: f64, quantizer: &WeightQuantizer) -> Result<f64> {
        let (c, s0, s) = self.clamped(x, lb, y, quantizer)?;
        let pulled = formulas::pulled(c.lb0, c.ub1, s, quantizer.max_weight());
        Ok(formulas::long(pulled, s0, s, self.total_degree as f64))
    }

    /// Traversals saved by pulling instead of pushing for settled vertices in `[x, lb)`.
    pub fn profit(&self, x: f64, lb: f64, y: f64, quantizer: &WeightQuantizer) -> Result<f64> {
        let (c, s0, s) = self.clamped(x, lb, y, quantizer)?;
        let max_w = quantizer.max_weight();
        let pushed = formulas::pushed(lb, c.ub0, s0, s, max_w);
        let pulled = formulas::pulled(c.lb0, c.ub1, s, max_w);
        let long = formulas::long(pulled, s0, s, self.total_degree as f64);
        Ok(pushed - long - pulled)
    }

    /// Selection threshold for the band that follows the completed band
    /// `[lb, ub)`. The boundary must already sit at `ub`.
    ///
    /// Returning `ub` means the next band is push-only.
    pub fn compute_st(&mut self, lb: f64, ub: f64, quantizer: &WeightQuantizer) -> Result<f64> {
        let max_w = quantizer.max_weight();
        let gap_lb = self.recorded_gap(lb);
        if self.sum_d(ub)? >= self.edge_count() || gap_lb == Some(max_w) {
            return Ok(ub);
        }
        let gap_ub = self.gap(quantizer, ub)?;
        if gap_ub == max_w {
            return Ok((ub - max_w).max(0.0));
        }
        let y = ub + gap_ub;
        let mut best = (ub, 0.0);
        for x in self.candidates(ub) {
            let profit = self.profit(x, ub, y, quantizer)?;
            if profit > best.1 {
                best = (x, profit);
            }
        }
        Ok(best.0)
    }

    fn candidates(&self, ub: f64) -> Vec<f64> {
        match self.params.candidates {
            CandidateMode::Exact => {
                let mut xs: Vec<f64> = self.settled_dist.iter().copied().filter(|&x| x < ub).collect();
                xs.dedup();
                xs
            }
            CandidateMode::Grid => match (self.st0, self.st1) {
                (Some(st0), Some(st1)) if st1 > st0 => {
                    let n = self.params.st_num;
                    let step = (st1 - st0) / n as f64;
                    (0..=n)
                        .map(|k| k as f64 * step + st0)
                        .filter(|&x| x < ub)
                        .collect()
                }
                _ => Vec::new(),
            },
        }
    }
}
