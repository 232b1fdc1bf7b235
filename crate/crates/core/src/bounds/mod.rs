//! Error-correction bounds for the PG(5, 2) code family and the search for
//! minimal failure configurations.
//!
//! ξ(ε) is the smallest p such that p points and p hyperplanes carry an
//! embedded bipartite subgraph of minimum degree (ε+1)/2. An error on every
//! edge of such a subgraph makes every touched component fail forever, so
//! E(ε) = ξ(ε)·(ε+1)/2 - 1 errors are always corrected.

mod search;

pub use search::{search_min_config, verify_witness, SearchOptions, SearchResult, SearchStatus};

use serde::Serialize;

use crate::error::{Error, Result};

/// Graph parameters entering the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundInputs {
    pub n_side: u64,
    pub d: u64,
    pub lambda: f64,
    pub epsilon: u64,
}

impl BoundInputs {
    /// PG(5, 2): 63 vertices per side, degree 31, second eigenvalue 4.
    pub fn pg52(epsilon: u64) -> Self {
        Self {
            n_side: 63,
            d: 31,
            lambda: 4.0,
            epsilon,
        }
    }

    /// Smallest number of errors a component cannot correct, (ε+1)/2.
    pub fn t_plus(&self) -> u64 {
        (self.epsilon + 1) / 2
    }
}

/// Length of the component code on the PG(5, 2) graph.
const SUBCODE_LEN: u64 = 31;

fn check_epsilon(epsilon: u64) -> Result<()> {
    if epsilon % 2 == 0 || !(3..=15).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "ε must be odd and in 3..=15, got {epsilon}"
        )));
    }
    Ok(())
}

/// Minimal per-side size of a failure configuration. Values up to ε = 13
/// come from planes of PG(5, 2); ξ(15) = 11 is assumed (see
/// [`eig_xi_lower_bound`] and [`search_min_config`] for what is proven).
pub fn xi(epsilon: u64) -> Result<u64> {
    check_epsilon(epsilon)?;
    Ok(if epsilon <= 13 { (epsilon + 1) / 2 } else { 11 })
}

/// E(ε) = ξ(ε)·(ε+1)/2 - 1.
pub fn guaranteed_errors(epsilon: u64) -> Result<u64> {
    Ok(xi(epsilon)? * (epsilon + 1) / 2 - 1)
}

/// Rate (32 - ε)/31 of the component code.
pub fn subcode_rate(epsilon: u64) -> Result<f64> {
    check_epsilon(epsilon)?;
    Ok((SUBCODE_LEN + 1 - epsilon) as f64 / SUBCODE_LEN as f64)
}

/// Rate lower bound 2r - 1 of the overall code.
pub fn rate_lower_bound(epsilon: u64) -> Result<f64> {
    Ok(2.0 * subcode_rate(epsilon)? - 1.0)
}

fn check_lambda(lambda: f64, d: f64) -> Result<()> {
    if !(lambda >= 0.0 && lambda < d) {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= λ < d, got λ = {lambda}, d = {d}"
        )));
    }
    Ok(())
}

fn check_unit(name: &str, x: f64, open_at_zero: bool) -> Result<()> {
    let ok = if open_at_zero {
        x > 0.0 && x <= 1.0
    } else {
        (0.0..=1.0).contains(&x)
    };
    if !ok {
        return Err(Error::InvalidParameter(format!("{name} = {x} out of range")));
    }
    Ok(())
}

/// Relative minimum distance bound ((ε - λ/d)/(1 - λ/d))² for a code with
/// component relative distance ε on a d-regular graph with second eigenvalue λ.
pub fn sipser_distance_bound(epsilon_rel: f64, lambda: f64, d: f64) -> Result<f64> {
    check_unit("ε_rel", epsilon_rel, true)?;
    check_lambda(lambda, d)?;
    let r = lambda / d;
    Ok(((epsilon_rel - r) / (1.0 - r)).powi(2))
}

/// Relative distance after one decoding round from relative distance α:
/// α(2/3 + 16α/ε² + 4λ/(ε·d)).
pub fn sipser_contraction(alpha: f64, epsilon_rel: f64, lambda: f64, d: f64) -> Result<f64> {
    check_unit("α", alpha, false)?;
    check_unit("ε_rel", epsilon_rel, true)?;
    check_lambda(lambda, d)?;
    Ok(alpha
        * (2.0 / 3.0 + 16.0 * alpha / (epsilon_rel * epsilon_rel)
            + 4.0 * lambda / (epsilon_rel * d)))
}

/// Zemor-style guaranteed correction with (ε+1)/2 in place of ε/2:
/// ⌊n·t⁺·(t⁺ - λ)/d⌋, defined only when ε >= 3λ.
pub fn zemor_bound_with(inputs: &BoundInputs) -> Option<u64> {
    let eps = inputs.epsilon as f64;
    if eps < 3.0 * inputs.lambda {
        return None;
    }
    let t = inputs.t_plus() as f64;
    let v = inputs.n_side as f64 * t * (t - inputs.lambda) / inputs.d as f64;
    Some(v.floor() as u64)
}

/// [`zemor_bound_with`] on PG(5, 2).
pub fn zemor_bound(epsilon: u64) -> Result<Option<u64>> {
    check_epsilon(epsilon)?;
    Ok(zemor_bound_with(&BoundInputs::pg52(epsilon)))
}

/// Spectral lower bound ⌈n(γ - λ)/(d - λ)⌉ on the per-side size of a
/// subgraph with minimum degree γ.
pub fn eig_xi_lower_bound(gamma: u64, n_side: u64, d: u64, lambda: u64) -> Result<u64> {
    if lambda >= d {
        return Err(Error::InvalidParameter(format!("need λ < d, got λ = {lambda}, d = {d}")));
    }
    if gamma <= lambda {
        return Err(Error::InvalidParameter(format!(
            "bound is vacuous for γ = {gamma} <= λ = {lambda}"
        )));
    }
    if gamma > d {
        return Err(Error::InvalidParameter(format!("γ = {gamma} exceeds degree {d}")));
    }
    Ok((n_side * (gamma - lambda)).div_ceil(d - lambda))
}

/// Floor 3δ - 2p on the common neighbours of any three vertices in a side of
/// size p with minimum degree δ (clamped at 0).
pub fn min_common_neighbors(p: u64, delta: u64) -> Result<u64> {
    if delta > p {
        return Err(Error::InvalidParameter(format!("δ = {delta} exceeds p = {p}")));
    }
    Ok((3 * delta).saturating_sub(2 * p))
}

/// One row of the parameter table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub epsilon: u64,
    pub subcode_rate: f64,
    pub rate_lower_bound: f64,
    pub guaranteed_errors: u64,
    pub zemor_bound: Option<u64>,
}

/// Rows for ε = 3, 5, …, 15.
pub fn parameter_table() -> Vec<TableRow> {
    (3..=15)
        .step_by(2)
        .map(|e| TableRow {
            epsilon: e,
            subcode_rate: subcode_rate(e).expect("ε in range"),
            rate_lower_bound: rate_lower_bound(e).expect("ε in range"),
            guaranteed_errors: guaranteed_errors(e).expect("ε in range"),
            zemor_bound: zemor_bound(e).expect("ε in range"),
        })
        .collect()
}

/// Aligned text rendering with rates to two decimals and "--" for undefined.
pub fn format_table(rows: &[TableRow]) -> String {
    let mut s = String::from(" ε  r_sub  rate  E  zemor\n");
    for r in rows {
        let z = r.zemor_bound.map_or("--".to_string(), |z| z.to_string());
        s.push_str(&format!(
            "{:>2} {:.2} {:.2} {:>2} {:>2}\n",
            r.epsilon, r.subcode_rate, r.rate_lower_bound, r.guaranteed_errors, z
        ));
    }
    s
}
