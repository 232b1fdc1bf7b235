//! The overall code: every vertex of the Tanner graph sees its incident edge
//! symbols, in local edge order, as a codeword of the component RS code.
//!
//! The parity-check matrix stacks ε - 1 rows per vertex. Row i of vertex u has
//! `α^(i·j)` in the column of u's j-th edge and zeros elsewhere. The generator
//! comes from the reduced row echelon form of that matrix and is systematic on
//! the non-pivot columns.

mod decoder;
pub mod matrix;

pub use decoder::{plant_failure_config, DecodeReport, SideRecord};

use crate::error::{Error, Result};
use crate::galois::GaloisField;
use crate::rscodec::{RsCodec, RsParams};
use crate::tanner::{Side, TannerGraph};

/// Default iteration cap of the iterative decoder.
pub const DEFAULT_MAX_ITERATIONS: usize = 4;

/// A Tanner graph paired with its component code.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    graph: TannerGraph,
    codec: RsCodec,
    max_iterations: usize,
}

impl CodeSpec {
    /// Component code of length equal to the graph degree and design distance ε over GF(256).
    pub fn new(graph: TannerGraph, epsilon: usize) -> Result<Self> {
        let codec = RsCodec::gf256(graph.degree(), epsilon)?;
        Ok(Self {
            graph,
            codec,
            max_iterations: DEFAULT_MAX_ITERATIONS,
        })
    }

    /// The code on the PG(5, 2) graph.
    pub fn pg52(epsilon: usize) -> Result<Self> {
        Self::new(TannerGraph::build(5)?, epsilon)
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Result<Self> {
        if max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        self.max_iterations = max_iterations;
        Ok(self)
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn codec(&self) -> &RsCodec {
        &self.codec
    }

    pub fn rs(&self) -> &RsParams {
        self.codec.params()
    }

    pub fn field(&self) -> &GaloisField {
        self.codec.field()
    }

    pub fn epsilon(&self) -> usize {
        self.rs().epsilon()
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    /// Block length: the number of edges.
    pub fn block_len(&self) -> usize {
        self.graph.num_edges()
    }

    /// Lower bound N·(2r - 1) on the dimension, r being the component rate.
    pub fn dimension_lower_bound(&self) -> f64 {
        self.block_len() as f64 * (2.0 * self.rs().rate() - 1.0)
    }

    /// Symbols seen by one vertex, in local edge order.
    pub fn component_word(&self, word: &[u8], side: Side, index: usize) -> Vec<u8> {
        self.graph
            .adjacency(side, index)
            .iter()
            .map(|&l| word[l as usize - 1])
            .collect()
    }

    /// True iff every component word on both sides is an RS codeword.
    pub fn all_syndromes_zero(&self, word: &[u8]) -> bool {
        [Side::Point, Side::Hyperplane].iter().all(|&side| {
            (0..self.graph.n_side())
                .all(|v| self.codec.is_codeword(&self.component_word(word, side, v)))
        })
    }

    /// Parity-check matrix, (2·n_side·(ε - 1)) × N. Point vertices come first.
    pub fn build_parity(&self) -> ParityMatrix {
        let f = self.field();
        let n = self.block_len();
        let r = self.rs().parity_len();
        let mut rows = Vec::with_capacity(2 * self.graph.n_side() * r);
        for side in [Side::Point, Side::Hyperplane] {
            for v in 0..self.graph.n_side() {
                let labels = self.graph.adjacency(side, v);
                for i in 1..=r {
                    let mut row = vec![0u8; n];
                    for (j, &l) in labels.iter().enumerate() {
                        row[l as usize - 1] = f.alpha_pow((i * j) as i64);
                    }
                    rows.push(row);
                }
            }
        }
        ParityMatrix {
            rows,
            cols: n,
            epsilon: self.epsilon(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParityMatrix {
    pub rows: Vec<Vec<u8>>,
    pub cols: usize,
    pub epsilon: usize,
}

/// Systematic generator: `rows[j]` has a 1 in `info_columns[j]`, zeros in the
/// other information columns, and the parity columns filled in.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    pub rows: Vec<Vec<u8>>,
    pub cols: usize,
    pub epsilon: usize,
    /// Rank of the parity-check matrix it was derived from.
    pub parity_rank: usize,
    pub info_columns: Vec<usize>,
    pub pivot_columns: Vec<usize>,
}

impl GeneratorMatrix {
    /// Dimension of the code.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Encodes k message symbols as `message·G`.
    pub fn encode(&self, field: &GaloisField, message: &[u8]) -> Result<Vec<u8>> {
        if message.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                got: message.len(),
            });
        }
        Ok(matrix::vec_mat(field, message, &self.rows))
    }

    /// Reads the message back from a codeword's information columns.
    pub fn extract_message(&self, codeword: &[u8]) -> Vec<u8> {
        self.info_columns.iter().map(|&c| codeword[c]).collect()
    }
}

/// Null-space generator of `h` via reduced row echelon form.
pub fn derive_generator(field: &GaloisField, h: &ParityMatrix) -> GeneratorMatrix {
    let mut r = h.rows.clone();
    let pivots = matrix::rre(field, &mut r);
    let mut is_pivot = vec![false; h.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let info: Vec<usize> = (0..h.cols).filter(|&c| !is_pivot[c]).collect();
    // x_free = e_f; x_pivot(i) = -R[i][f], and negation is the identity here
    let rows = info
        .iter()
        .map(|&f| {
            let mut g = vec![0u8; h.cols];
            g[f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                g[p] = r[i][f];
            }
            g
        })
        .collect();
    GeneratorMatrix {
        rows,
        cols: h.cols,
        epsilon: h.epsilon,
        parity_rank: pivots.len(),
        info_columns: info,
        pivot_columns: pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pg3(eps: usize) -> CodeSpec {
        CodeSpec::new(TannerGraph::build(3).unwrap(), eps).unwrap()
    }

    #[test]
    fn parity_shape_and_rows() {
        let spec = CodeSpec::pg52(5).unwrap();
        let h = spec.build_parity();
        assert_eq!((h.rows.len(), h.cols), (504, 1953));
        // row 1 of point vertex 1: α^j on the label of its j-th edge
        let f = spec.field();
        for (j, &l) in spec.graph().adjacency(Side::Point, 0).iter().enumerate() {
            assert_eq!(h.rows[0][l as usize - 1], f.alpha_pow(j as i64));
        }
        for row in &h.rows {
            assert_eq!(row.iter().filter(|&&x| x != 0).count(), 31);
        }
    }

    #[test]
    fn small_geometry_generator() {
        // PG(3, 2): 15 + 15 vertices of degree 7, 105 edges
        let spec = pg3(3);
        let h = spec.build_parity();
        assert_eq!((h.rows.len(), h.cols), (60, 105));
        let g = derive_generator(spec.field(), &h);
        assert_eq!(g.k() + g.parity_rank, 105);
        assert!(g.k() as f64 >= spec.dimension_lower_bound());
        for row in &g.rows {
            for hr in &h.rows {
                assert_eq!(matrix::dot(spec.field(), row, hr), 0);
            }
        }
        assert_eq!(matrix::rank(spec.field(), &g.rows), g.k());
    }

    #[test]
    fn encode_is_linear_and_valid() {
        let spec = pg3(3);
        let g = derive_generator(spec.field(), &spec.build_parity());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m1: Vec<u8> = (0..g.k()).map(|_| rng.gen()).collect();
        let m2: Vec<u8> = (0..g.k()).map(|_| rng.gen()).collect();
        let sum: Vec<u8> = m1.iter().zip(&m2).map(|(a, b)| a ^ b).collect();
        let c1 = g.encode(spec.field(), &m1).unwrap();
        let c2 = g.encode(spec.field(), &m2).unwrap();
        let c3 = g.encode(spec.field(), &sum).unwrap();
        let c12: Vec<u8> = c1.iter().zip(&c2).map(|(a, b)| a ^ b).collect();
        assert_eq!(c3, c12);
        assert!(spec.all_syndromes_zero(&c1));
        assert_eq!(g.extract_message(&c1), m1);
        assert_eq!(g.encode(spec.field(), &vec![0; g.k()]).unwrap(), vec![0; 105]);
        assert!(g.encode(spec.field(), &[0]).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(CodeSpec::pg52(4).is_err());
        assert!(CodeSpec::pg52(33).is_err());
        assert!(CodeSpec::pg52(5).unwrap().with_max_iterations(0).is_err());
    }
}
