//! Exhaustive backtracking search for p points and p hyperplanes whose
//! incidence subgraph has minimum degree δ on both sides.
//!
//! Points are chosen in increasing id order. The hyperplanes still able to
//! reach δ incidences form the candidate set; the branch is cut when fewer
//! than p candidates remain, when a chosen point sees fewer than δ of them,
//! or when two or three chosen points share fewer candidates than a full
//! solution forces (2δ - p and 3δ - 2p). Once p points are fixed, a second
//! search picks the hyperplanes.
//!
//! Symmetry reduction uses the transitivity of GL(d+1, 2) on ordered
//! independent sets: a point set of rank r can be moved so that it contains
//! the unit vectors e_1 … e_r and lies inside their span. Only such point
//! sets are enumerated, one rank at a time.

use serde::Serialize;

use crate::bounds::min_common_neighbors;
use crate::error::{Error, Result};
use crate::projgeom::{incident, HyperplaneId, PointId};
use crate::tanner::TannerGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Found,
    NotFound,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub witness: Option<(Vec<PointId>, Vec<HyperplaneId>)>,
    pub nodes_explored: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes before giving up with `Timeout`.
    pub budget: u64,
    pub pruning: bool,
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: 1_000_000_000,
            pruning: true,
            symmetry: true,
        }
    }
}

/// Checks a witness by direct incidence counting.
pub fn verify_witness(points: &[PointId], hyps: &[HyperplaneId], p: usize, delta: usize) -> bool {
    let distinct = |v: Vec<u32>| {
        let mut s = v.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == v.len()
    };
    points.len() == p
        && hyps.len() == p
        && distinct(points.iter().map(|x| x.0).collect())
        && distinct(hyps.iter().map(|x| x.0).collect())
        && points
            .iter()
            .all(|&pt| hyps.iter().filter(|&&h| incident(pt, h)).count() >= delta)
        && hyps
            .iter()
            .all(|&h| points.iter().filter(|&&pt| incident(pt, h)).count() >= delta)
}

enum Outcome {
    Found(u64, u64),
    Exhausted,
    Timeout,
}

struct Searcher<'a> {
    p: usize,
    delta: u32,
    /// hyperplane mask of each point id
    nbr: &'a [u64],
    /// point mask of each hyperplane id
    pts_of: &'a [u64],
    all_hyps: u64,
    pair_floor: u32,
    triple_floor: u32,
    pruning: bool,
    budget: u64,
    nodes: u64,
}

fn bits(mut m: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros();
            m &= m - 1;
            b
        })
    })
}

impl Searcher<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes > self.budget
    }

    /// Hyperplanes that can still collect δ incidences from `chosen` plus at
    /// most `need` further points drawn from `rest`.
    fn candidates(&self, chosen: u64, rest: u64, need: usize) -> u64 {
        let mut c = 0;
        for h in bits(self.all_hyps) {
            let have = (self.pts_of[h as usize] & chosen).count_ones();
            let more = (self.pts_of[h as usize] & rest).count_ones().min(need as u32);
            if have + more >= self.delta {
                c |= 1 << h;
            }
        }
        c
    }

    fn feasible(&self, chosen: &[u32], cand: u64) -> bool {
        if (cand.count_ones() as usize) < self.p {
            return false;
        }
        let masks: Vec<u64> = chosen.iter().map(|&x| self.nbr[x as usize] & cand).collect();
        if masks.iter().any(|m| m.count_ones() < self.delta) {
            return false;
        }
        if self.pair_floor > 0 {
            for i in 0..masks.len() {
                for j in i + 1..masks.len() {
                    if (masks[i] & masks[j]).count_ones() < self.pair_floor {
                        return false;
                    }
                }
            }
        }
        if self.triple_floor > 0 {
            for i in 0..masks.len() {
                for j in i + 1..masks.len() {
                    let ij = masks[i] & masks[j];
                    for k in masks.iter().skip(j + 1) {
                        if (ij & k).count_ones() < self.triple_floor {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Extends `chosen` with points from `pool[from..]`.
    fn points(&mut self, chosen: &mut Vec<u32>, pool: &[u32], from: usize) -> Outcome {
        if self.tick() {
            return Outcome::Timeout;
        }
        let need = self.p - chosen.len();
        if need == 0 {
            return self.leaf(chosen);
        }
        if pool.len() - from < need {
            return Outcome::Exhausted;
        }
        if self.pruning {
            let chosen_mask = chosen.iter().fold(0u64, |m, &x| m | 1 << x);
            let rest = pool[from..].iter().fold(0u64, |m, &x| m | 1 << x);
            let cand = self.candidates(chosen_mask, rest, need);
            if !self.feasible(chosen, cand) {
                return Outcome::Exhausted;
            }
        }
        for i in from..=pool.len() - need {
            chosen.push(pool[i]);
            let r = self.points(chosen, pool, i + 1);
            chosen.pop();
            if !matches!(r, Outcome::Exhausted) {
                return r;
            }
        }
        Outcome::Exhausted
    }

    fn leaf(&mut self, chosen: &[u32]) -> Outcome {
        let pmask = chosen.iter().fold(0u64, |m, &x| m | 1 << x);
        let cand: Vec<u32> = bits(self.all_hyps)
            .filter(|&h| (self.pts_of[h as usize] & pmask).count_ones() >= self.delta)
            .collect();
        if cand.len() < self.p {
            return Outcome::Exhausted;
        }
        let mut counts = vec![0u32; chosen.len()];
        match self.hyperplanes(chosen, &cand, 0, 0, &mut counts, 0) {
            None => Outcome::Exhausted,
            Some(None) => Outcome::Timeout,
            Some(Some(hmask)) => Outcome::Found(pmask, hmask),
        }
    }

    /// Picks p hyperplanes from `cand[from..]`. `Some(Some(mask))` on success,
    /// `Some(None)` on timeout, `None` when exhausted.
    fn hyperplanes(
        &mut self,
        chosen: &[u32],
        cand: &[u32],
        from: usize,
        taken: usize,
        counts: &mut [u32],
        hmask: u64,
    ) -> Option<Option<u64>> {
        if self.tick() {
            return Some(None);
        }
        let slots = self.p - taken;
        if slots == 0 {
            return counts
                .iter()
                .all(|&c| c >= self.delta)
                .then_some(Some(hmask));
        }
        if cand.len() - from < slots {
            return None;
        }
        if self.pruning {
            let rest = cand[from..].iter().fold(0u64, |m, &h| m | 1 << h);
            for (i, &x) in chosen.iter().enumerate() {
                let avail = (self.nbr[x as usize] & rest).count_ones().min(slots as u32);
                if counts[i] + avail < self.delta {
                    return None;
                }
            }
        }
        for i in from..=cand.len() - slots {
            let h = cand[i];
            for (j, &x) in chosen.iter().enumerate() {
                counts[j] += u32::from(self.nbr[x as usize] >> h & 1 == 1);
            }
            let r = self.hyperplanes(chosen, cand, i + 1, taken + 1, counts, hmask | 1 << h);
            for (j, &x) in chosen.iter().enumerate() {
                counts[j] -= u32::from(self.nbr[x as usize] >> h & 1 == 1);
            }
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

/// Searches the graph for p points and p hyperplanes with every vertex
/// incident to at least δ of the other side. Needs a graph with at most 63
/// vertices per side.
pub fn search_min_config(
    graph: &TannerGraph,
    p: usize,
    delta: usize,
    options: SearchOptions,
) -> Result<SearchResult> {
    let n = graph.n_side();
    if p == 0 || p > n {
        return Err(Error::OutOfRange {
            what: "partition size",
            value: p as i64,
            lo: 1,
            hi: n as i64,
        });
    }
    if delta == 0 || delta > graph.degree() {
        return Err(Error::OutOfRange {
            what: "minimum degree",
            value: delta as i64,
            lo: 1,
            hi: graph.degree() as i64,
        });
    }
    if delta > p {
        return Err(Error::InvalidParameter(format!(
            "minimum degree {delta} cannot exceed partition size {p}"
        )));
    }
    let (nbr, pts_of) = graph.incidence_masks()?;
    let all_hyps = (1..=n as u32).fold(0u64, |m, h| m | 1 << h);
    let (pair_floor, triple_floor) = if options.pruning {
        (
            (2 * delta).saturating_sub(p) as u32,
            min_common_neighbors(p as u64, delta as u64)? as u32,
        )
    } else {
        (0, 0)
    };
    let mut s = Searcher {
        p,
        delta: delta as u32,
        nbr: &nbr,
        pts_of: &pts_of,
        all_hyps,
        pair_floor,
        triple_floor,
        pruning: options.pruning,
        budget: options.budget,
        nodes: 0,
    };

    // (forced base points, pool of optional points)
    let mut classes: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    if options.symmetry {
        let rank_max = graph.dimension() as usize + 1;
        for r in 1..=rank_max.min(p) {
            let span = (1u32 << r) - 1;
            if (span as usize) < p {
                continue;
            }
            let base: Vec<u32> = (0..r).map(|i| 1 << i).collect();
            let pool = (1..=span).filter(|x| !x.is_power_of_two()).collect();
            classes.push((base, pool));
        }
    } else {
        classes.push((Vec::new(), (1..=n as u32).collect()));
    }

    for (base, pool) in classes {
        let mut chosen = base;
        match s.points(&mut chosen, &pool, 0) {
            Outcome::Exhausted => {}
            Outcome::Timeout => {
                return Ok(SearchResult {
                    status: SearchStatus::Timeout,
                    witness: None,
                    nodes_explored: s.nodes.min(s.budget),
                })
            }
            Outcome::Found(pm, hm) => {
                let points: Vec<PointId> = bits(pm).map(PointId).collect();
                let hyps: Vec<HyperplaneId> = bits(hm).map(HyperplaneId).collect();
                if !verify_witness(&points, &hyps, p, delta) {
                    return Err(Error::Construction("search produced an invalid witness".into()));
                }
                return Ok(SearchResult {
                    status: SearchStatus::Found,
                    witness: Some((points, hyps)),
                    nodes_explored: s.nodes,
                });
            }
        }
    }
    Ok(SearchResult {
        status: SearchStatus::NotFound,
        witness: None,
        nodes_explored: s.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Existence by trying every pair of p-subsets of points and hyperplanes.
    fn brute_force(graph: &TannerGraph, p: usize, delta: usize) -> bool {
        let n = graph.n_side() as u32;
        let subsets = |k: usize| -> Vec<Vec<u32>> {
            let mut out = Vec::new();
            let mut cur = Vec::new();
            fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for x in start..=n {
                    cur.push(x);
                    rec(x + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            rec(1, n, k, &mut cur, &mut out);
            out
        };
        let sets = subsets(p);
        sets.iter().any(|ps| {
            let pts: Vec<PointId> = ps.iter().map(|&x| PointId(x)).collect();
            sets.iter().any(|hs| {
                let hyps: Vec<HyperplaneId> = hs.iter().map(|&x| HyperplaneId(x)).collect();
                verify_witness(&pts, &hyps, p, delta)
            })
        })
    }

    fn all_option_sets() -> Vec<SearchOptions> {
        let mut v = Vec::new();
        for pruning in [false, true] {
            for symmetry in [false, true] {
                v.push(SearchOptions {
                    budget: u64::MAX,
                    pruning,
                    symmetry,
                });
            }
        }
        v
    }

    #[test]
    fn agrees_with_brute_force_on_fano_and_pg3() {
        for d in [2, 3] {
            let g = TannerGraph::build(d).unwrap();
            for p in 1..=4 {
                for delta in 1..=p.min(g.degree()) {
                    let expected = brute_force(&g, p, delta);
                    for opt in all_option_sets() {
                        let r = search_min_config(&g, p, delta, opt).unwrap();
                        let found = r.status == SearchStatus::Found;
                        assert_eq!(found, expected, "d={d} p={p} δ={delta} {opt:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn pg5_small_instances_agree_across_options() {
        let g = TannerGraph::build(5).unwrap();
        for p in 1..=4 {
            for delta in 1..=p {
                let statuses: Vec<SearchStatus> = all_option_sets()
                    .into_iter()
                    .map(|o| search_min_config(&g, p, delta, o).unwrap().status)
                    .collect();
                assert!(statuses.iter().all(|&s| s == SearchStatus::Found), "p={p} δ={delta}");
            }
        }
    }

    #[test]
    fn plane_witness() {
        let g = TannerGraph::build(5).unwrap();
        let r = search_min_config(&g, 3, 3, SearchOptions::default()).unwrap();
        assert_eq!(r.status, SearchStatus::Found);
        let (pts, hyps) = r.witness.unwrap();
        assert!(verify_witness(&pts, &hyps, 3, 3));
    }

    #[test]
    fn fano_has_no_dense_four_by_four() {
        // in PG(2, 2) two points share one line, so 4 points with 3 common
        // lines each are impossible
        let g = TannerGraph::build(2).unwrap();
        let r = search_min_config(&g, 4, 3, SearchOptions::default()).unwrap();
        assert_eq!(r.status, SearchStatus::NotFound);
    }

    #[test]
    fn argument_checks_and_budget() {
        let g = TannerGraph::build(5).unwrap();
        assert!(search_min_config(&g, 2, 3, SearchOptions::default()).is_err());
        assert!(search_min_config(&g, 0, 0, SearchOptions::default()).is_err());
        assert!(search_min_config(&g, 64, 3, SearchOptions::default()).is_err());
        let tight = SearchOptions {
            budget: 100,
            ..SearchOptions::default()
        };
        let a = search_min_config(&g, 11, 8, tight).unwrap();
        let b = search_min_config(&g, 11, 8, tight).unwrap();
        assert_eq!(a.status, SearchStatus::Timeout);
        assert_eq!(a.nodes_explored, 100);
        assert_eq!(a, b);
    }

    #[test]
    fn witness_checker_rejects_bad_sets() {
        let pts = vec![PointId(1), PointId(2), PointId(3)];
        let hyps = vec![HyperplaneId(4), HyperplaneId(8), HyperplaneId(12)];
        assert!(verify_witness(&pts, &hyps, 3, 3));
        assert!(!verify_witness(&pts, &hyps, 3, 4));
        assert!(!verify_witness(&pts, &[HyperplaneId(4), HyperplaneId(4), HyperplaneId(8)], 3, 1));
        assert!(!verify_witness(&pts, &[HyperplaneId(1), HyperplaneId(8), HyperplaneId(12)], 3, 3));
    }
}
