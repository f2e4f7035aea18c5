//! Deterministic candidate sweeps for the supremum estimators.
//!
//! Every estimator in this crate is a maximum over an explicit candidate
//! list. The sweep runs in parallel under the `parallel` feature and
//! reduces with a total order (score, then lowest index), so the result is
//! identical to the sequential fallback regardless of scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluation budget for a supremum search.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct SearchBudget {
    /// Cap on candidate evaluations (seeds plus refinement).
    pub max_evals: usize,
    /// Local refinement rounds around the incumbent.
    pub refine_rounds: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_evals: 4096, refine_rounds: 4 }
    }
}

impl SearchBudget {
    pub fn with_max_evals(max_evals: usize) -> Self {
        SearchBudget { max_evals, ..Default::default() }
    }

    /// Scale the budget by a factor (CLI `--budget` plumbs through here).
    pub fn scaled(&self, factor: f64) -> Self {
        SearchBudget {
            max_evals: ((self.max_evals as f64 * factor) as usize).max(16),
            refine_rounds: self.refine_rounds,
        }
    }
}

/// Outcome of a budgeted sweep: the best score with its candidate index,
/// and whether the candidate list was truncated by the budget.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub best_index: usize,
    pub best_score: f64,
    pub evals: usize,
    pub exhausted: bool,
}

fn better(lhs: (usize, f64), rhs: (usize, f64)) -> (usize, f64) {
    // Max by score; ties break to the lowest index. NaN loses to anything.
    if rhs.1 > lhs.1 || (rhs.1 == lhs.1 && rhs.0 < lhs.0) || lhs.1.is_nan() {
        rhs
    } else {
        lhs
    }
}

/// Sequential kernel; always compiled, used as the fallback and as the
/// baseline in the benchmark suite.
pub fn sweep_max_seq<T, F>(items: &[T], score: F) -> Option<(usize, f64)>
where
    F: Fn(&T) -> f64,
{
    items
        .iter()
        .enumerate()
        .map(|(i, t)| (i, score(t)))
        .filter(|(_, s)| !s.is_nan())
        .fold(None, |acc, cur| Some(acc.map_or(cur, |a| better(a, cur))))
}

/// Parallel kernel under the `parallel` feature, with the deterministic
/// reduction order described above.
#[cfg(feature = "parallel")]
pub fn sweep_max<T, F>(items: &[T], score: F) -> Option<(usize, f64)>
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    items
        .par_iter()
        .enumerate()
        .map(|(i, t)| (i, score(t)))
        .filter(|(_, s)| !s.is_nan())
        .reduce_with(better)
}

#[cfg(not(feature = "parallel"))]
pub fn sweep_max<T, F>(items: &[T], score: F) -> Option<(usize, f64)>
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    sweep_max_seq(items, score)
}

/// Budgeted sweep over a candidate list: truncates to the budget, marks
/// exhaustion, and reports the winner.
pub fn budgeted_sweep<T, F>(items: &[T], budget: &SearchBudget, score: F) -> Option<SweepOutcome>
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    let n = items.len().min(budget.max_evals);
    let exhausted = items.len() > budget.max_evals;
    let (best_index, best_score) = sweep_max(&items[..n], score)?;
    Some(SweepOutcome { best_index, best_score, evals: n, exhausted })
}

/// Deterministic logarithmic ladder in (0, 1), symmetric around 1/2 in the
/// scale coordinate a = s/(1−s); used to sweep the log-2 box family.
pub fn scale_ladder(per_side: usize, max_log_scale: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * per_side + 1);
    for k in -(per_side as i64)..=(per_side as i64) {
        let log_a = (k as f64) / (per_side as f64) * max_log_scale;
        out.push(log_a.exp());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<f64> = (0..10_000).map(|i| ((i * 2654435761_usize) % 1000) as f64).collect();
        let par = sweep_max(&items, |x| *x).unwrap();
        let seq = sweep_max_seq(&items, |x| *x).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn tie_break_is_lowest_index() {
        let items = [1.0, 3.0, 3.0, 2.0];
        let (i, s) = sweep_max(&items, |x| *x).unwrap();
        assert_eq!((i, s), (1, 3.0));
    }

    #[test]
    fn budget_truncates() {
        let items: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let out = budgeted_sweep(&items, &SearchBudget::with_max_evals(10), |x| *x).unwrap();
        assert!(out.exhausted);
        assert_eq!(out.best_score, 9.0);
    }
}
