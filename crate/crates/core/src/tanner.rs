//! The labeled point-hyperplane incidence graph of PG(d, 2).
//!
//! Every edge carries one code symbol. Edges are numbered so that consecutive
//! labels land on distinct point vertices: the k-th edge (1-based) of point
//! vertex v gets label `v + n·(k - 1)`, n being the number of points. A
//! point's edges are ordered by hyperplane id ascending, and a hyperplane's
//! edges by point id ascending. These orderings fix the symbol positions seen
//! by each component decoder and are part of the code definition.

use crate::error::{Error, Result};
use crate::projgeom::{gaussian, incident, HyperplaneId, PointId, ProjectiveSpace};

/// One edge of the graph. Labels are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: u32,
    pub point: PointId,
    pub hyperplane: HyperplaneId,
}

/// Vertex side of the bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Point,
    Hyperplane,
}

#[derive(Clone, Debug)]
pub struct TannerGraph {
    d: u32,
    n_side: usize,
    degree: usize,
    /// edges[label - 1]
    edges: Vec<Edge>,
    /// point_adj[v - 1][k - 1] = label
    point_adj: Vec<Vec<u32>>,
    /// hyp_adj[h - 1][j] = label of the edge to the j-th point on h
    hyp_adj: Vec<Vec<u32>>,
}

impl TannerGraph {
    /// Builds the graph of PG(d, 2). d = 5 gives the 63 + 63 vertex, degree-31 graph.
    pub fn build(d: u32) -> Result<Self> {
        if !(2..=12).contains(&d) {
            return Err(Error::OutOfRange {
                what: "d",
                value: d as i64,
                lo: 2,
                hi: 12,
            });
        }
        let pg = ProjectiveSpace::new(d)?;
        let n_side = pg.num_points();
        let degree = gaussian(d - 1, d - 2, 2)? as usize;
        let mut edges = vec![
            Edge {
                label: 0,
                point: PointId(0),
                hyperplane: HyperplaneId(0),
            };
            n_side * degree
        ];
        let mut point_adj = Vec::with_capacity(n_side);
        let mut hyp_adj = vec![Vec::with_capacity(degree); n_side];
        for p in pg.points() {
            let mut row = Vec::with_capacity(degree);
            for h in pg.hyperplanes().filter(|&h| incident(p, h)) {
                let k = row.len() + 1;
                let label = label_for(n_side, p.0 as usize, k);
                edges[label as usize - 1] = Edge {
                    label,
                    point: p,
                    hyperplane: h,
                };
                row.push(label);
                // points are visited in ascending id order, so each hyperplane
                // row ends up sorted by point id
                hyp_adj[h.0 as usize - 1].push(label);
            }
            if row.len() != degree {
                return Err(Error::Construction(format!(
                    "point {p} has degree {} (expected {degree})",
                    row.len()
                )));
            }
            point_adj.push(row);
        }
        if let Some(h) = hyp_adj.iter().position(|r| r.len() != degree) {
            return Err(Error::Construction(format!(
                "hyperplane {} has degree {}",
                h + 1,
                hyp_adj[h].len()
            )));
        }
        Ok(Self {
            d,
            n_side,
            degree,
            edges,
            point_adj,
            hyp_adj,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    /// Vertices per side (63 for d = 5).
    pub fn n_side(&self) -> usize {
        self.n_side
    }

    /// Common degree of every vertex (31 for d = 5).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of edges, which is the code block length.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, label: u32) -> Result<&Edge> {
        self.check_label(label)?;
        Ok(&self.edges[label as usize - 1])
    }

    /// Labels incident on a vertex in local order. `index` is 0-based.
    pub fn adjacency(&self, side: Side, index: usize) -> &[u32] {
        match side {
            Side::Point => &self.point_adj[index],
            Side::Hyperplane => &self.hyp_adj[index],
        }
    }

    fn check_label(&self, label: u32) -> Result<()> {
        if label == 0 || label as usize > self.edges.len() {
            return Err(Error::OutOfRange {
                what: "label",
                value: label as i64,
                lo: 1,
                hi: self.edges.len() as i64,
            });
        }
        Ok(())
    }

    /// Label of the k-th edge (1-based) of point vertex v (1-based).
    pub fn label_of(&self, v: usize, k: usize) -> Result<u32> {
        if v == 0 || v > self.n_side {
            return Err(Error::OutOfRange {
                what: "point vertex",
                value: v as i64,
                lo: 1,
                hi: self.n_side as i64,
            });
        }
        if k == 0 || k > self.degree {
            return Err(Error::OutOfRange {
                what: "local edge index",
                value: k as i64,
                lo: 1,
                hi: self.degree as i64,
            });
        }
        Ok(label_for(self.n_side, v, k))
    }

    /// Inverse of [`label_of`](Self::label_of): (point vertex, local edge index).
    pub fn position_of(&self, label: u32) -> Result<(usize, usize)> {
        self.check_label(label)?;
        let l = label as usize - 1;
        Ok((l % self.n_side + 1, l / self.n_side + 1))
    }

    /// 0-1 incidence matrix N with N[p-1][h-1] = 1 iff point p is on hyperplane h.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        let mut n = vec![vec![0u8; self.n_side]; self.n_side];
        for e in &self.edges {
            n[e.point.0 as usize - 1][e.hyperplane.0 as usize - 1] = 1;
        }
        n
    }

    /// Verifies N·Nᵀ = (k - λ)·I + λ·J exactly over the integers and returns
    /// (k, λ), where λ is the number of hyperplanes through two points.
    pub fn gram_check(&self) -> Result<(u64, u64)> {
        let k = self.degree as u64;
        // two points span a line; count hyperplanes through it
        let lambda = if self.d == 2 {
            1
        } else {
            gaussian(self.d - 2, self.d - 3, 2)?
        };
        let n = self.incidence_matrix();
        for (i, ri) in n.iter().enumerate() {
            for (j, rj) in n.iter().enumerate() {
                let dot: u64 = ri.iter().zip(rj).map(|(&a, &b)| (a * b) as u64).sum();
                let expected = if i == j { k } else { lambda };
                if dot != expected {
                    return Err(Error::Construction(format!(
                        "(N Nᵀ)[{i}][{j}] = {dot}, expected {expected}"
                    )));
                }
            }
        }
        Ok((k, lambda))
    }

    /// Second largest eigenvalue of the bipartite adjacency matrix, √(k - λ).
    ///
    /// The adjacency eigenvalues are ± the singular values of N, and the design
    /// identity gives N·Nᵀ the eigenvalues k² (once) and k - λ (n - 1 times).
    pub fn second_eigenvalue(&self) -> Result<f64> {
        let (k, lambda) = self.gram_check()?;
        Ok(((k - lambda) as f64).sqrt())
    }

    /// Labeled edge list, one "label pointId hyperplaneId" line per edge in label order.
    pub fn export_edges(&self) -> String {
        let mut s = String::with_capacity(self.edges.len() * 12);
        for e in &self.edges {
            s.push_str(&format!("{} {} {}\n", e.label, e.point, e.hyperplane));
        }
        s
    }

    /// Neighbourhood bitmasks (hyperplanes of each point, points of each
    /// hyperplane), indexed by id. Requires ids < 64, i.e. d <= 5.
    pub fn incidence_masks(&self) -> Result<(Vec<u64>, Vec<u64>)> {
        if self.n_side >= 64 {
            return Err(Error::InvalidParameter(format!(
                "bitmask view needs at most 63 vertices per side, graph has {}",
                self.n_side
            )));
        }
        let mut pts = vec![0u64; self.n_side + 1];
        let mut hyps = vec![0u64; self.n_side + 1];
        for e in &self.edges {
            pts[e.point.0 as usize] |= 1 << e.hyperplane.0;
            hyps[e.hyperplane.0 as usize] |= 1 << e.point.0;
        }
        Ok((pts, hyps))
    }
}

fn label_for(n_side: usize, v: usize, k: usize) -> u32 {
    (v + n_side * (k - 1)) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg5_cardinalities() {
        let g = TannerGraph::build(5).unwrap();
        assert_eq!(g.n_side(), 63);
        assert_eq!(g.degree(), 31);
        assert_eq!(g.num_edges(), 1953);
        assert_eq!(g.num_edges(), 63 * 31);
        for i in 0..63 {
            assert_eq!(g.adjacency(Side::Point, i).len(), 31);
            assert_eq!(g.adjacency(Side::Hyperplane, i).len(), 31);
        }
    }

    #[test]
    fn labels_are_a_bijection() {
        let g = TannerGraph::build(5).unwrap();
        let mut seen = vec![false; 1954];
        for i in 0..63 {
            for &l in g.adjacency(Side::Point, i) {
                assert!(!seen[l as usize]);
                seen[l as usize] = true;
            }
        }
        assert!(seen[1..].iter().all(|&b| b));
        for (i, e) in g.edges().iter().enumerate() {
            assert_eq!(e.label as usize, i + 1);
            assert!(incident(e.point, e.hyperplane));
        }
    }

    #[test]
    fn label_examples() {
        let g = TannerGraph::build(5).unwrap();
        assert_eq!(g.label_of(1, 1).unwrap(), 1);
        assert_eq!(g.label_of(1, 2).unwrap(), 64);
        assert_eq!(g.label_of(1, 31).unwrap(), 1891);
        assert_eq!(g.label_of(2, 1).unwrap(), 2);
        assert_eq!(g.position_of(64).unwrap(), (1, 2));
        assert!(g.label_of(0, 1).is_err());
        assert!(g.label_of(64, 1).is_err());
        assert!(g.label_of(1, 32).is_err());
        assert!(g.position_of(0).is_err());
        assert!(g.position_of(1954).is_err());
        for l in 1..=1953 {
            let (v, k) = g.position_of(l).unwrap();
            assert_eq!(g.label_of(v, k).unwrap(), l);
            assert_eq!(g.edge(l).unwrap().point, PointId(v as u32));
        }
    }

    #[test]
    fn local_orders() {
        let g = TannerGraph::build(5).unwrap();
        for i in 0..63 {
            let hs: Vec<u32> = g
                .adjacency(Side::Point, i)
                .iter()
                .map(|&l| g.edge(l).unwrap().hyperplane.0)
                .collect();
            assert!(hs.windows(2).all(|w| w[0] < w[1]));
            let ps: Vec<u32> = g
                .adjacency(Side::Hyperplane, i)
                .iter()
                .map(|&l| g.edge(l).unwrap().point.0)
                .collect();
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
            assert!(g
                .adjacency(Side::Hyperplane, i)
                .iter()
                .all(|&l| g.edge(l).unwrap().hyperplane.0 as usize == i + 1));
        }
    }

    #[test]
    fn design_identity_and_spectrum() {
        let g = TannerGraph::build(5).unwrap();
        assert_eq!(g.gram_check().unwrap(), (31, 15));
        assert_eq!(g.second_eigenvalue().unwrap(), 4.0);
        // Zemor's applicability condition d >= 3λ
        assert!(3 * 4 <= g.degree());
        let g3 = TannerGraph::build(3).unwrap();
        assert_eq!(g3.gram_check().unwrap(), (7, 3));
        assert_eq!(g3.second_eigenvalue().unwrap(), 2.0);
    }

    #[test]
    fn dual_design_identity() {
        // any two hyperplanes share exactly 15 points
        let g = TannerGraph::build(5).unwrap();
        let (_, hyps) = g.incidence_masks().unwrap();
        for a in 1..64 {
            for b in a + 1..64 {
                assert_eq!((hyps[a] & hyps[b]).count_ones(), 15);
            }
        }
    }

    #[test]
    fn burst_windows_touch_each_point_at_most_twice() {
        let g = TannerGraph::build(5).unwrap();
        for start in 1..=(1953 - 126 + 1) {
            let mut hits = [0u8; 64];
            for l in start..start + 126 {
                hits[g.edge(l).unwrap().point.0 as usize] += 1;
            }
            assert!(hits.iter().all(|&h| h <= 2));
        }
    }

    #[test]
    fn larger_geometry() {
        let g = TannerGraph::build(8).unwrap();
        assert_eq!(g.n_side(), 511);
        assert_eq!(g.degree(), 255);
        assert_eq!(g.num_edges(), 130_305);
        assert!(g.incidence_masks().is_err());
    }

    #[test]
    fn export_format() {
        let g = TannerGraph::build(5).unwrap();
        let text = g.export_edges();
        let first = text.lines().next().unwrap();
        let e = g.edge(1).unwrap();
        assert_eq!(first, format!("1 {} {}", e.point, e.hyperplane));
        assert_eq!(text.lines().count(), 1953);
    }
}
