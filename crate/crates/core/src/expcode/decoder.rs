//! Iterative decoding with skip-on-failure components, and planted minimal
//! failure configurations.

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use super::CodeSpec;
use crate::error::{Error, Result};
use crate::projgeom::{Flat, ProjectiveSpace};
use crate::rscodec::InPlace;
use crate::tanner::Side;

/// What one side did in one iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SideRecord {
    pub iteration: usize,
    pub side: Side,
    pub component_failures: usize,
    pub symbols_changed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeReport {
    /// Every component word on both sides is a codeword at exit.
    pub success: bool,
    pub iterations_used: usize,
    pub per_iteration: Vec<SideRecord>,
    pub final_word: Vec<u8>,
}

impl DecodeReport {
    /// Component failures per iteration as (point side, hyperplane side).
    pub fn failure_counts(&self) -> Vec<(usize, usize)> {
        self.per_iteration
            .chunks(2)
            .map(|c| (c[0].component_failures, c.get(1).map_or(0, |r| r.component_failures)))
            .collect()
    }
}

impl CodeSpec {
    /// Decodes `received` with the given erased labels (1-based).
    ///
    /// Each iteration runs every point vertex, then every hyperplane vertex.
    /// A component whose decoder refuses leaves its symbols as they are. The
    /// loop stops after the first iteration that leaves all component words
    /// valid, or after `max_iterations`.
    pub fn iterative_decode(&self, received: &[u8], erasures: &[u32]) -> Result<DecodeReport> {
        let n = self.block_len();
        if received.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: received.len(),
            });
        }
        let mut erased = vec![false; n + 1];
        for &l in erasures {
            if l == 0 || l as usize > n {
                return Err(Error::OutOfRange {
                    what: "erased label",
                    value: l as i64,
                    lo: 1,
                    hi: n as i64,
                });
            }
            erased[l as usize] = true;
        }

        let mut word = received.to_vec();
        let mut per_iteration = Vec::with_capacity(2 * self.max_iterations());
        let mut success = false;
        let mut iterations_used = 0;
        for iteration in 1..=self.max_iterations() {
            iterations_used = iteration;
            for side in [Side::Point, Side::Hyperplane] {
                per_iteration.push(self.decode_side(iteration, side, &mut word, &mut erased)?);
            }
            if self.all_syndromes_zero(&word) {
                success = true;
                break;
            }
        }
        Ok(DecodeReport {
            success,
            iterations_used,
            per_iteration,
            final_word: word,
        })
    }

    /// One pass over a side. Vertices of one side share no edges, so updating
    /// the word vertex by vertex equals decoding them all from one snapshot.
    fn decode_side(
        &self,
        iteration: usize,
        side: Side,
        word: &mut [u8],
        erased: &mut [bool],
    ) -> Result<SideRecord> {
        let codec = self.codec();
        let max_erasures = self.rs().parity_len();
        let mut buf = vec![0u8; self.rs().n()];
        let mut local_erasures = Vec::with_capacity(self.rs().n());
        let mut component_failures = 0;
        let mut symbols_changed = 0;
        for v in 0..self.graph().n_side() {
            let labels = self.graph().adjacency(side, v);
            local_erasures.clear();
            for (j, &l) in labels.iter().enumerate() {
                buf[j] = word[l as usize - 1];
                if erased[l as usize] {
                    local_erasures.push(j);
                }
            }
            if local_erasures.len() > max_erasures {
                component_failures += 1;
                continue;
            }
            match codec.decode_in_place(&mut buf, &local_erasures)? {
                InPlace::Corrected {
                    symbols_changed: changed,
                    ..
                } => {
                    symbols_changed += changed;
                    for (j, &l) in labels.iter().enumerate() {
                        word[l as usize - 1] = buf[j];
                        erased[l as usize] = false;
                    }
                }
                InPlace::Failed => component_failures += 1,
            }
        }
        Ok(SideRecord {
            iteration,
            side,
            component_failures,
            symbols_changed,
        })
    }
}

/// Corrupts the biclique between (ε+1)/2 points and (ε+1)/2 hyperplanes of
/// `plane` with random nonzero values. Returns (label, value) pairs sorted by
/// label; add the values to a codeword to plant the pattern.
pub fn plant_failure_config<R: Rng + ?Sized>(
    spec: &CodeSpec,
    plane: &Flat,
    rng: &mut R,
) -> Result<Vec<(u32, u8)>> {
    let graph = spec.graph();
    if plane.dimension() != 2 {
        return Err(Error::InvalidParameter(format!(
            "expected a plane, got a flat of dimension {}",
            plane.dimension()
        )));
    }
    if plane.points().iter().any(|p| p.0 as usize > graph.n_side()) {
        return Err(Error::InvalidParameter(
            "plane does not belong to the graph's geometry".into(),
        ));
    }
    let pg = ProjectiveSpace::new(graph.dimension())?;
    let hyps = pg.hyperplanes_through(plane);
    let side = (spec.epsilon() + 1) / 2;
    if side > plane.points().len() || side > hyps.len() {
        return Err(Error::InvalidParameter(format!(
            "a plane has only {} points; ε = {} needs {side}",
            plane.points().len(),
            spec.epsilon()
        )));
    }
    let mut pts: Vec<usize> = sample(rng, plane.points().len(), side).into_vec();
    let mut hs: Vec<usize> = sample(rng, hyps.len(), side).into_vec();
    pts.sort_unstable();
    hs.sort_unstable();
    let mut out = Vec::with_capacity(side * side);
    for &pi in &pts {
        let p = plane.points()[pi];
        for &hi in &hs {
            let h = hyps[hi];
            let label = graph
                .adjacency(Side::Point, p.0 as usize - 1)
                .iter()
                .copied()
                .find(|&l| graph.edges()[l as usize - 1].hyperplane == h)
                .ok_or_else(|| Error::Construction(format!("no edge between {p} and {h}")))?;
            out.push((label, rng.gen_range(1..=255u8)));
        }
    }
    out.sort_unstable();
    Ok(out)
}
