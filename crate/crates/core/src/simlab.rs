//! Seeded Monte Carlo experiments on the PG(5, 2) code.
//!
//! Every round transmits the all-zero codeword, corrupts it, decodes it and
//! records whether the decoder claimed success and whether it was right.
//! Round `i` draws from ChaCha20 seeded with the trial seed on stream `i`, so
//! results do not depend on thread scheduling or on how many rounds run.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expcode::{CodeSpec, GeneratorMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorModel {
    /// `weight` distinct labels chosen uniformly.
    Random,
    /// `weight` consecutive labels, not wrapping around.
    Burst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialConfig {
    pub epsilon: usize,
    pub model: ErrorModel,
    pub weight: usize,
    pub rounds: usize,
    pub seed: u64,
    pub max_iterations: usize,
}

impl TrialConfig {
    pub fn new(epsilon: usize, model: ErrorModel, weight: usize, rounds: usize, seed: u64) -> Self {
        Self {
            epsilon,
            model,
            weight,
            rounds,
            seed,
            max_iterations: crate::expcode::DEFAULT_MAX_ITERATIONS,
        }
    }

    fn spec(&self) -> Result<CodeSpec> {
        if self.rounds == 0 {
            return Err(Error::InvalidParameter("rounds must be at least 1".into()));
        }
        CodeSpec::pg52(self.epsilon)?.with_max_iterations(self.max_iterations)
    }
}

/// Outcome of one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    /// First corrupted stream position (bursts only), 0-based.
    pub start: Option<usize>,
    pub success: bool,
    pub iterations: usize,
    /// Success was claimed but the output is not the transmitted word.
    pub miscorrected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialSummary {
    pub epsilon: usize,
    pub model: ErrorModel,
    pub weight: usize,
    pub rounds: usize,
    pub seed: u64,
    pub failures_pct: f64,
    /// Mean iterations over successful rounds; `None` when none succeeded.
    pub avg_iterations: Option<f64>,
    pub miscorrections: usize,
    /// Interleaving depth, for interleaved trials.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRun {
    pub summary: TrialSummary,
    pub records: Vec<RoundRecord>,
}

fn round_rng(seed: u64, round: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(round as u64);
    rng
}

fn summarize(cfg: &TrialConfig, k: Option<usize>, records: Vec<RoundRecord>) -> TrialRun {
    let successes: Vec<&RoundRecord> = records.iter().filter(|r| r.success).collect();
    let failures = records.len() - successes.len();
    let avg_iterations = (!successes.is_empty()).then(|| {
        successes.iter().map(|r| r.iterations as f64).sum::<f64>() / successes.len() as f64
    });
    TrialRun {
        summary: TrialSummary {
            epsilon: cfg.epsilon,
            model: cfg.model,
            weight: cfg.weight,
            rounds: records.len(),
            seed: cfg.seed,
            failures_pct: 100.0 * failures as f64 / records.len() as f64,
            avg_iterations,
            miscorrections: records.iter().filter(|r| r.miscorrected).count(),
            k,
        },
        records,
    }
}

fn decode_round(spec: &CodeSpec, round: usize, start: Option<usize>, word: &[u8]) -> Result<RoundRecord> {
    let report = spec.iterative_decode(word, &[])?;
    Ok(RoundRecord {
        round,
        start,
        success: report.success,
        iterations: report.iterations_used,
        miscorrected: report.success && report.final_word.iter().any(|&x| x != 0),
    })
}

/// Writes uniform nonzero values at the given positions.
fn corrupt<R: Rng>(rng: &mut R, word: &mut [u8], positions: impl Iterator<Item = usize>) {
    for p in positions {
        word[p] = rng.gen_range(1..=255u8);
    }
}

/// Random symbol errors at `weight` distinct positions.
pub fn run_random(cfg: &TrialConfig) -> Result<TrialRun> {
    if cfg.model != ErrorModel::Random {
        return Err(Error::InvalidParameter("run_random needs the random model".into()));
    }
    let spec = cfg.spec()?;
    let n = spec.block_len();
    if cfg.weight > n {
        return Err(Error::OutOfRange {
            what: "weight",
            value: cfg.weight as i64,
            lo: 0,
            hi: n as i64,
        });
    }
    let records = (0..cfg.rounds)
        .into_par_iter()
        .map(|round| {
            let mut rng = round_rng(cfg.seed, round);
            let mut word = vec![0u8; n];
            let pos = sample(&mut rng, n, cfg.weight);
            corrupt(&mut rng, &mut word, pos.into_iter());
            decode_round(&spec, round, None, &word)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(cfg, None, records))
}

fn check_burst(cfg: &TrialConfig, n: usize) -> Result<()> {
    if cfg.model != ErrorModel::Burst {
        return Err(Error::InvalidParameter("burst runs need the burst model".into()));
    }
    if cfg.weight == 0 || cfg.weight > n {
        return Err(Error::OutOfRange {
            what: "burst length",
            value: cfg.weight as i64,
            lo: 1,
            hi: n as i64,
        });
    }
    Ok(())
}

/// Decodes one burst starting at 0-based position `start`.
pub fn burst_round(spec: &CodeSpec, cfg: &TrialConfig, round: usize, start: usize) -> Result<RoundRecord> {
    let n = spec.block_len();
    let mut rng = round_rng(cfg.seed, round);
    let mut word = vec![0u8; n];
    corrupt(&mut rng, &mut word, start..start + cfg.weight);
    decode_round(spec, round, Some(start), &word)
}

/// Bursts of `weight` consecutive labels at uniformly chosen starts.
pub fn run_burst(cfg: &TrialConfig) -> Result<TrialRun> {
    let spec = cfg.spec()?;
    let n = spec.block_len();
    check_burst(cfg, n)?;
    let records = (0..cfg.rounds)
        .into_par_iter()
        .map(|round| {
            let start = round_rng(cfg.seed, round).gen_range(0..=n - cfg.weight);
            burst_round(&spec, cfg, round, start)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(cfg, None, records))
}

/// Every possible burst start once, in order; `cfg.rounds` is ignored.
pub fn run_burst_exhaustive(cfg: &TrialConfig) -> Result<TrialRun> {
    let mut cfg = *cfg;
    cfg.rounds = 1;
    let spec = cfg.spec()?;
    let n = spec.block_len();
    check_burst(&cfg, n)?;
    let records = (0..=n - cfg.weight)
        .into_par_iter()
        .map(|start| burst_round(&spec, &cfg, start, start))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(&cfg, None, records))
}

/// k codewords interleaved symbol by symbol (stream position i belongs to
/// codeword i mod k), one burst on the stream, each codeword decoded on its
/// own. A round fails if any codeword fails; its iteration count is the
/// largest among the codewords.
pub fn run_interleaved(k: usize, cfg: &TrialConfig) -> Result<TrialRun> {
    if k == 0 {
        return Err(Error::InvalidParameter("interleaving depth must be at least 1".into()));
    }
    let spec = cfg.spec()?;
    let n = spec.block_len();
    check_burst(cfg, k * n)?;
    let records = (0..cfg.rounds)
        .into_par_iter()
        .map(|round| {
            let mut rng = round_rng(cfg.seed, round);
            let start = rng.gen_range(0..=k * n - cfg.weight);
            let mut stream = vec![0u8; k * n];
            corrupt(&mut rng, &mut stream, start..start + cfg.weight);
            let mut rec = RoundRecord {
                round,
                start: Some(start),
                success: true,
                iterations: 0,
                miscorrected: false,
            };
            for c in 0..k {
                let word: Vec<u8> = stream.iter().skip(c).step_by(k).copied().collect();
                let r = decode_round(&spec, round, Some(start), &word)?;
                rec.success &= r.success;
                rec.miscorrected |= r.miscorrected;
                rec.iterations = rec.iterations.max(r.iterations);
            }
            rec.miscorrected &= rec.success;
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(cfg, Some(k), records))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinearityReport {
    pub pairs: usize,
    pub agreements: usize,
}

impl LinearityReport {
    pub fn all_agree(&self) -> bool {
        self.pairs == self.agreements
    }
}

/// Decodes c + e and 0 + e for random codewords c and random weight-`weight`
/// errors e, and checks that the two runs agree: same success flag, same
/// iteration count, and outputs differing by exactly c.
pub fn linearity_justification_check(
    spec: &CodeSpec,
    generator: &GeneratorMatrix,
    pairs: usize,
    weight: usize,
    seed: u64,
) -> Result<LinearityReport> {
    let n = spec.block_len();
    let agreements = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = round_rng(seed, i);
            let msg: Vec<u8> = (0..generator.k()).map(|_| rng.gen()).collect();
            let c = generator.encode(spec.field(), &msg)?;
            let mut e = vec![0u8; n];
            let pos = sample(&mut rng, n, weight);
            corrupt(&mut rng, &mut e, pos.into_iter());
            let received: Vec<u8> = c.iter().zip(&e).map(|(a, b)| a ^ b).collect();
            let a = spec.iterative_decode(&received, &[])?;
            let b = spec.iterative_decode(&e, &[])?;
            let shifted: Vec<u8> = b.final_word.iter().zip(&c).map(|(x, y)| x ^ y).collect();
            Ok(a.success == b.success
                && a.iterations_used == b.iterations_used
                && a.per_iteration == b.per_iteration
                && a.final_word == shifted)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&ok| ok)
        .count();
    Ok(LinearityReport { pairs, agreements })
}

/// Aligned text table: one row per summary.
pub fn format_summaries(rows: &[TrialSummary]) -> String {
    let mut s = format!(
        "{:>3} {:>6} {:>6} {:>6} {:>9} {:>8} {:>7}\n",
        "ε", "model", "errors", "rounds", "failures%", "avg_iter", "miscorr"
    );
    for r in rows {
        let model = match (r.model, r.k) {
            (_, Some(k)) => format!("ilv{k}"),
            (ErrorModel::Random, None) => "random".into(),
            (ErrorModel::Burst, None) => "burst".into(),
        };
        let avg = r.avg_iterations.map_or("-".to_string(), |a| format!("{a:.2}"));
        s.push_str(&format!(
            "{:>3} {:>6} {:>6} {:>6} {:>9.1} {:>8} {:>7}\n",
            r.epsilon, model, r.weight, r.rounds, r.failures_pct, avg, r.miscorrections
        ));
    }
    s
}
