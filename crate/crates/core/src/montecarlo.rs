//! Monte Carlo estimators for walk covariance, first passage and length
//! growth.
//!
//! Trial `t` draws from stream `t` of the run seed (see
//! [`crate::subwords::trial_rng`]). Trials run on the rayon pool and are
//! reduced in trial order, so results do not depend on scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::rootsys::RootSystem;
use crate::sigma::check_open_p;
use crate::subwords::{run_periods, trial_rng, KeepRule, LetterWord};
use crate::weylgroup::FastGroup;

pub const DEFAULT_BATCHES: usize = 100;
pub const WATCHDOG_PERIODS: u64 = 1_000_000;

/// Standard error of the mean of `values` from `batches` contiguous
/// batches. `NaN` when fewer than two batches are available.
pub fn batch_means_se(values: &[f64], batches: usize) -> f64 {
    let b = batches.min(values.len());
    if b < 2 {
        return f64::NAN;
    }
    let means: Vec<f64> = (0..b)
        .map(|i| {
            let lo = i * values.len() / b;
            let hi = (i + 1) * values.len() / b;
            values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();
    let mu = means.iter().sum::<f64>() / b as f64;
    let var = means.iter().map(|m| (m - mu) * (m - mu)).sum::<f64>() / (b - 1) as f64;
    (var / b as f64).sqrt()
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample mean and centered covariance (divisor `N − 1`) of row vectors.
pub fn mean_and_covariance(rows: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = rows.len();
    let d = rows.first().map_or(0, |r| r.len());
    let mut mu = vec![0.0; d];
    for r in rows {
        for (m, x) in mu.iter_mut().zip(r) {
            *m += x;
        }
    }
    mu.iter_mut().for_each(|m| *m /= n as f64);
    let mut cov = vec![vec![0.0; d]; d];
    for r in rows {
        for i in 0..d {
            for j in 0..d {
                cov[i][j] += (r[i] - mu[i]) * (r[j] - mu[j]);
            }
        }
    }
    let div = (n.max(2) - 1) as f64;
    cov.iter_mut().flatten().for_each(|c| *c /= div);
    (mu, cov)
}

fn trace(m: &[Vec<f64>]) -> f64 {
    (0..m.len()).map(|i| m[i][i]).sum()
}

/// `‖C − (tr C / r) I‖_F / (tr C / r)`.
pub fn isotropy_defect(cov: &[Vec<f64>]) -> f64 {
    let r = cov.len();
    let s = trace(cov) / r as f64;
    let mut f = 0.0;
    for i in 0..r {
        for j in 0..r {
            let target = if i == j { s } else { 0.0 };
            f += (cov[i][j] - target).powi(2);
        }
    }
    f.sqrt() / s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub length: u64,
    /// `v•` in the orthonormal basis of `V`, unscaled.
    pub centroid: Vec<f64>,
    pub returns: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkStats {
    pub trials: u64,
    pub periods: u64,
    /// Mean of `v•/√K` in the orthonormal basis of `V`.
    pub mean_vector: Vec<f64>,
    pub mean_se: Vec<f64>,
    /// Covariance of `v•/√K`.
    pub covariance_matrix: Vec<Vec<f64>>,
    pub sigma2_hat: f64,
    pub sigma2_se: f64,
    pub length_scaling_hat: f64,
    pub length_scaling_se: f64,
    pub isotropy_defect: f64,
    /// Identity visits summed over all trials.
    pub total_returns: u64,
}

fn check_walk_params(rs: &RootSystem, word: &LetterWord, p: &Q) -> Result<KeepRule> {
    check_open_p(p)?;
    for &i in word.letters() {
        rs.check_letter(i)?;
    }
    KeepRule::new(p)
}

/// Runs `trials` independent walks of `periods` periods.
pub fn simulate_trials(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    periods: u64,
    trials: u64,
    seed: u64,
) -> Result<Vec<TrialRecord>> {
    let keep = check_walk_params(rs, word, p)?;
    let group = FastGroup::new(rs);
    let order = word.processing_order();
    Ok((0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut u = group.identity();
            let mut returns = 0;
            for _ in 0..periods {
                for &i in &order {
                    if keep.draw(&mut rng) {
                        group.apply_letter(&mut u, i);
                        if group.is_identity(&u) {
                            returns += 1;
                        }
                    } else if group.is_identity(&u) {
                        returns += 1;
                    }
                }
            }
            TrialRecord {
                trial: t,
                length: group.coxeter_length(&u),
                centroid: rs.to_v_coords(&group.centroid_f64(&u)),
                returns,
            }
        })
        .collect())
}

pub fn walk_stats_from_records(rs: &RootSystem, records: &[TrialRecord], periods: u64) -> WalkStats {
    let r = rs.rank();
    let sk = (periods.max(1) as f64).sqrt();
    let rows: Vec<Vec<f64>> = records
        .iter()
        .map(|t| t.centroid.iter().map(|x| x / sk).collect())
        .collect();
    let (mu, cov) = mean_and_covariance(&rows);
    let mean_se = (0..r)
        .map(|i| {
            let col: Vec<f64> = rows.iter().map(|row| row[i]).collect();
            batch_means_se(&col, DEFAULT_BATCHES)
        })
        .collect();
    let per_trial_sigma: Vec<f64> = rows
        .iter()
        .map(|row| row.iter().zip(&mu).map(|(x, m)| (x - m) * (x - m)).sum::<f64>() / r as f64)
        .collect();
    let lengths: Vec<f64> = records.iter().map(|t| t.length as f64 / sk).collect();
    let sigma2_hat = trace(&cov) / r as f64;
    WalkStats {
        trials: records.len() as u64,
        periods,
        mean_vector: mu,
        mean_se,
        isotropy_defect: isotropy_defect(&cov),
        covariance_matrix: cov,
        sigma2_hat,
        sigma2_se: batch_means_se(&per_trial_sigma, DEFAULT_BATCHES),
        length_scaling_hat: mean(&lengths),
        length_scaling_se: batch_means_se(&lengths, DEFAULT_BATCHES),
        total_returns: records.iter().map(|t| t.returns).sum(),
    }
}

pub fn estimate_walk_stats(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    periods: u64,
    trials: u64,
    seed: u64,
) -> Result<WalkStats> {
    if periods < 1 || trials < 2 {
        return Err(Error::InvalidArgument("walk statistics need K ≥ 1 and N ≥ 2".into()));
    }
    let records = simulate_trials(rs, word, p, periods, trials, seed)?;
    Ok(walk_stats_from_records(rs, &records, periods))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FirstPassageStats {
    pub trials: u64,
    pub weyl_order: u128,
    pub mean_t: f64,
    pub mean_t_se: f64,
    /// Mean displacement in the orthonormal basis of `V`.
    pub mean_d: Vec<f64>,
    pub mean_d_se: Vec<f64>,
    pub cov_d: Vec<Vec<f64>>,
    /// `tr(Cov D) / (r |W̄|)`.
    pub sigma2_hat_fp: f64,
    pub sigma2_hat_fp_se: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Excursion {
    pub periods: u64,
    pub displacement: Vec<f64>,
}

/// Excursions of the finite-part chain from `𝟙` back to `𝟙`, each started
/// at the identity on its own stream.
pub fn simulate_excursions(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    trials: u64,
    seed: u64,
) -> Result<Vec<Excursion>> {
    let keep = check_walk_params(rs, word, p)?;
    let group = FastGroup::new(rs);
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut u = group.identity();
            let mut periods = 0u64;
            loop {
                run_periods(&group, word.letters(), keep, 1, &mut rng, &mut u, None);
                periods += 1;
                if group.finite_is_identity(&u) {
                    break;
                }
                if periods >= WATCHDOG_PERIODS {
                    return Err(Error::Watchdog(WATCHDOG_PERIODS));
                }
            }
            Ok(Excursion {
                periods,
                displacement: rs.to_v_coords(&group.translation_f64(&u)),
            })
        })
        .collect()
}

pub fn estimate_first_passage(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    trials: u64,
    seed: u64,
) -> Result<FirstPassageStats> {
    if trials < 2 {
        return Err(Error::InvalidArgument("first passage needs N ≥ 2".into()));
    }
    let ex = simulate_excursions(rs, word, p, trials, seed)?;
    let r = rs.rank();
    let order = rs.weyl_order() as f64;
    let ts: Vec<f64> = ex.iter().map(|e| e.periods as f64).collect();
    let rows: Vec<Vec<f64>> = ex.iter().map(|e| e.displacement.clone()).collect();
    let (mu, cov) = mean_and_covariance(&rows);
    let mean_d_se = (0..r)
        .map(|i| {
            let col: Vec<f64> = rows.iter().map(|row| row[i]).collect();
            batch_means_se(&col, DEFAULT_BATCHES)
        })
        .collect();
    let per_trial: Vec<f64> = rows
        .iter()
        .map(|row| row.iter().zip(&mu).map(|(x, m)| (x - m) * (x - m)).sum::<f64>() / (r as f64 * order))
        .collect();
    Ok(FirstPassageStats {
        trials,
        weyl_order: rs.weyl_order(),
        mean_t: mean(&ts),
        mean_t_se: batch_means_se(&ts, DEFAULT_BATCHES),
        mean_d: mu,
        mean_d_se,
        sigma2_hat_fp: trace(&cov) / (r as f64 * order),
        sigma2_hat_fp_se: batch_means_se(&per_trial, DEFAULT_BATCHES),
        cov_d: cov,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LengthRow {
    pub periods: u64,
    /// `Ê[ℓ] / √K`.
    pub scaled_mean: f64,
    pub se: f64,
}

/// `Ê[ℓ(v_p(b^K))]/√K` at each `K` in `ks`, read off one trajectory per
/// trial at the listed checkpoints.
pub fn estimate_length_scaling(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    ks: &[u64],
    trials: u64,
    seed: u64,
) -> Result<Vec<LengthRow>> {
    let keep = check_walk_params(rs, word, p)?;
    let mut checkpoints = ks.to_vec();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    if checkpoints.first() == Some(&0) {
        return Err(Error::InvalidArgument("K must be at least 1".into()));
    }
    let group = FastGroup::new(rs);
    let per_trial: Vec<Vec<u64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut u = group.identity();
            let mut done = 0u64;
            checkpoints
                .iter()
                .map(|&k| {
                    run_periods(&group, word.letters(), keep, k - done, &mut rng, &mut u, None);
                    done = k;
                    group.coxeter_length(&u)
                })
                .collect()
        })
        .collect();
    Ok(checkpoints
        .iter()
        .enumerate()
        .map(|(c, &k)| {
            let vals: Vec<f64> = per_trial.iter().map(|l| l[c] as f64 / (k as f64).sqrt()).collect();
            LengthRow {
                periods: k,
                scaled_mean: mean(&vals),
                se: batch_means_se(&vals, DEFAULT_BATCHES),
            }
        })
        .collect())
}
