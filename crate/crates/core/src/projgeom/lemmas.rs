//! Exhaustive checks of the structural facts about PG(5, 2) that the
//! minimal-failure-configuration arguments rely on.
//!
//! Every check walks the full geometry (or all relevant flat pairs) and counts
//! configurations violating the claim. Point and hyperplane sets are handled
//! as 64-bit masks indexed by id.

use super::{incident, HyperplaneId, PointId, ProjectiveSpace};

/// Outcome of one exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: &'static str,
    pub cases: u64,
    pub counterexamples: u64,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.counterexamples == 0 && self.cases > 0
    }
}

/// Precomputed incidence masks for PG(5, 2).
struct Pg52 {
    /// hyperplanes containing each point, indexed by point id
    hyps_of_point: [u64; 64],
    /// points on each hyperplane, indexed by hyperplane id
    points_of_hyp: [u64; 64],
    /// (point mask, hyperplane mask) for each plane
    planes: Vec<(u64, u64)>,
}

impl Pg52 {
    fn new() -> Self {
        let pg = ProjectiveSpace::new(5).expect("d = 5 is valid");
        let mut hyps_of_point = [0u64; 64];
        let mut points_of_hyp = [0u64; 64];
        for p in 1..64u32 {
            for h in 1..64u32 {
                if incident(PointId(p), HyperplaneId(h)) {
                    hyps_of_point[p as usize] |= 1 << h;
                    points_of_hyp[h as usize] |= 1 << p;
                }
            }
        }
        let planes = pg
            .enumerate_planes()
            .expect("PG(5, 2) has planes")
            .iter()
            .map(|f| {
                let pm = f.mask();
                let hm = f
                    .basis()
                    .iter()
                    .fold(!1u64, |acc, p| acc & hyps_of_point[p.0 as usize]);
                (pm, hm)
            })
            .collect();
        Self {
            hyps_of_point,
            points_of_hyp,
            planes,
        }
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros();
            m &= m - 1;
            Some(b)
        }
    })
}

/// Three ids are collinear (dependent) iff one is the sum of the other two.
fn collinear(a: u32, b: u32, c: u32) -> bool {
    a ^ b == c
}

/// Any four points contain three non-collinear ones.
pub fn lemma_four_points_have_independent_triple() -> LemmaReport {
    let mut cases = 0;
    let mut bad = 0;
    for a in 1..64u32 {
        for b in a + 1..64 {
            for c in b + 1..64 {
                for d in c + 1..64 {
                    cases += 1;
                    let all_collinear = collinear(a, b, c)
                        && collinear(a, b, d)
                        && collinear(a, c, d)
                        && collinear(b, c, d);
                    if all_collinear {
                        bad += 1;
                    }
                }
            }
        }
    }
    LemmaReport {
        name: "four points contain a non-collinear triple",
        cases,
        counterexamples: bad,
    }
}

/// A point off a plane lies on at most 3 of the 7 hyperplanes through the
/// plane, and when it lies on 3 they are dependent. Dually, a hyperplane not
/// containing the plane holds at most 3 of its points, collinear when 3.
pub fn lemma_external_point_meets_at_most_three() -> LemmaReport {
    let g = Pg52::new();
    let mut cases = 0;
    let mut bad = 0;
    for &(pm, hm) in &g.planes {
        for q in bits(!pm & !1) {
            cases += 1;
            let on = g.hyps_of_point[q as usize] & hm;
            match on.count_ones() {
                0..=2 => {}
                3 => {
                    let v: Vec<u32> = bits(on).collect();
                    if !collinear(v[0], v[1], v[2]) {
                        bad += 1;
                    }
                }
                _ => bad += 1,
            }
        }
        for h in bits(!hm & !1) {
            cases += 1;
            let on = g.points_of_hyp[h as usize] & pm;
            match on.count_ones() {
                0..=2 => {}
                3 => {
                    let v: Vec<u32> = bits(on).collect();
                    if !collinear(v[0], v[1], v[2]) {
                        bad += 1;
                    }
                }
                _ => bad += 1,
            }
        }
    }
    LemmaReport {
        name: "external point lies on at most 3 hyperplanes of a plane",
        cases,
        counterexamples: bad,
    }
}

/// For planes P1, P2 meeting in a line, at least 4 hyperplanes through P1
/// contain none of the 4 points of P2 outside P1.
pub fn lemma_line_meeting_planes() -> LemmaReport {
    let g = Pg52::new();
    let mut cases = 0;
    let mut bad = 0;
    for (i, &(p1, h1)) in g.planes.iter().enumerate() {
        for (j, &(p2, _)) in g.planes.iter().enumerate() {
            if i == j || (p1 & p2).count_ones() != 3 {
                continue;
            }
            cases += 1;
            let outside = p2 & !p1;
            let avoiding = bits(h1)
                .filter(|&h| g.points_of_hyp[h as usize] & outside == 0)
                .count();
            if avoiding < 4 {
                bad += 1;
            }
        }
    }
    LemmaReport {
        name: "planes meeting in a line leave 4 hyperplanes avoiding P2 minus P1",
        cases,
        counterexamples: bad,
    }
}

/// For planes meeting in a single point A, each of the 6 hyperplanes through
/// P1 not containing P2 cuts P2 in a line through A, and those 6 lines are the
/// 3 lines of P2 through A, each hit by exactly 2 hyperplanes.
pub fn lemma_point_meeting_planes() -> LemmaReport {
    let g = Pg52::new();
    let mut cases = 0;
    let mut bad = 0;
    for (i, &(p1, h1)) in g.planes.iter().enumerate() {
        for (j, &(p2, h2)) in g.planes.iter().enumerate() {
            if i == j || (p1 & p2).count_ones() != 1 {
                continue;
            }
            cases += 1;
            let common = p1 & p2;
            let non_common = h1 & !h2;
            let mut ok = non_common.count_ones() == 6 && (h1 & h2).count_ones() == 1;
            let mut meets: Vec<u64> = Vec::with_capacity(6);
            for h in bits(non_common) {
                let meet = g.points_of_hyp[h as usize] & p2;
                let pts: Vec<u32> = bits(meet).collect();
                let is_line = pts.len() == 3 && collinear(pts[0], pts[1], pts[2]);
                if !is_line || meet & common == 0 {
                    ok = false;
                }
                meets.push(meet);
            }
            meets.sort_unstable();
            let mut distinct = meets.clone();
            distinct.dedup();
            if distinct.len() != 3 || meets.chunks(2).any(|c| c.len() != 2 || c[0] != c[1]) {
                ok = false;
            }
            if !ok {
                bad += 1;
            }
        }
    }
    LemmaReport {
        name: "planes meeting in a point are cut along the 3 lines through it",
        cases,
        counterexamples: bad,
    }
}

/// Two distinct hyperplanes through P1 cut any plane P2 disjoint from P1 in
/// two distinct lines. Checked over every disjoint plane pair.
pub fn lemma_disjoint_planes_distinct_lines() -> LemmaReport {
    let g = Pg52::new();
    let mut cases = 0;
    let mut bad = 0;
    for &(p1, h1) in &g.planes {
        let hyps: Vec<u32> = bits(h1).collect();
        for &(p2, _) in &g.planes {
            if p1 & p2 != 0 {
                continue;
            }
            let cuts: Vec<u64> = hyps
                .iter()
                .map(|&h| g.points_of_hyp[h as usize] & p2)
                .collect();
            for a in 0..cuts.len() {
                for b in a + 1..cuts.len() {
                    cases += 1;
                    let la = cuts[a];
                    let lb = cuts[b];
                    if la.count_ones() != 3 || lb.count_ones() != 3 || la == lb {
                        bad += 1;
                    }
                }
            }
        }
    }
    LemmaReport {
        name: "hyperplanes through P1 cut a disjoint plane in distinct lines",
        cases,
        counterexamples: bad,
    }
}

/// Runs every check.
pub fn verify_all() -> Vec<LemmaReport> {
    vec![
        lemma_four_points_have_independent_triple(),
        lemma_external_point_meets_at_most_three(),
        lemma_line_meeting_planes(),
        lemma_point_meeting_planes(),
        lemma_disjoint_planes_distinct_lines(),
    ]
}
