//! Expander-like codes on the point-hyperplane incidence graph of PG(5, 2)
//! with shortened Reed–Solomon component codes over GF(256).
//!
//! The crate is organised bottom-up:
//!
//! - [`galois`]: GF(2^m) arithmetic and polynomials.
//! - [`projgeom`]: points, hyperplanes and flats of PG(d, 2), plus exhaustive
//!   structural checks in [`projgeom::lemmas`].
//! - [`tanner`]: the labeled bipartite graph whose edges carry symbols.
//! - [`rscodec`]: the length-31 component codec with skip-on-failure decoding.
//! - [`expcode`]: the overall code, its matrices and the iterative decoder.
//! - [`bounds`]: error-correction bounds and the minimal-configuration search.
//! - [`simlab`]: seeded Monte Carlo experiments.
//! - [`io`]: hex word formats.

pub mod bounds;
pub mod error;
pub mod expcode;
pub mod galois;
pub mod io;
pub mod projgeom;
pub mod rscodec;
pub mod simlab;
pub mod tanner;

pub use error::{Error, Result};
pub use galois::GaloisField;
pub use projgeom::{Flat, HyperplaneId, PointId, ProjectiveSpace};
pub use rscodec::{RsCodec, RsOutcome, RsParams, RsStatus};
pub use tanner::{Side, TannerGraph};
