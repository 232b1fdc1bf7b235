//! Finite projective geometry PG(d, GF(2)).
//!
//! A point is a nonzero vector of GF(2)^(d+1), identified by its integer
//! encoding (1 ..= 2^(d+1) - 1). A hyperplane is identified the same way by its
//! normal vector, and a point lies on a hyperplane iff their GF(2) dot product
//! vanishes. With this representation points and hyperplanes share the id
//! range, so duality is the identity map on ids.
//!
//! Counting formulas work over any GF(s); enumeration of flats is GF(2) only.

pub mod lemmas;

use std::fmt;

use crate::error::{Error, Result};

/// A point of PG(d, 2), stored as its nonzero coordinate vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct PointId(pub u32);

/// A hyperplane of PG(d, 2), stored as its nonzero normal vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct HyperplaneId(pub u32);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for HyperplaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Point p lies on hyperplane h iff <p, h> = 0 over GF(2).
#[inline]
pub fn incident(p: PointId, h: HyperplaneId) -> bool {
    (p.0 & h.0).count_ones() % 2 == 0
}

/// Number of points of PG(d, s): (s^(d+1) - 1) / (s - 1).
pub fn num_points(d: u32, s: u64) -> Result<u64> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("field size s = {s} < 2")));
    }
    let top = checked_pow(s, d + 1)?;
    Ok((top - 1) / (s - 1))
}

/// Gaussian coefficient φ(n, l, s): the number of l-dimensional projective
/// subspaces of an n-dimensional projective space over GF(s).
pub fn gaussian(n: u32, l: u32, s: u64) -> Result<u64> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("field size s = {s} < 2")));
    }
    if l > n {
        return Err(Error::InvalidParameter(format!("l = {l} exceeds n = {n}")));
    }
    // Accumulate as a running ratio; every partial product is itself a
    // Gaussian binomial, so each division is exact.
    let mut acc: u128 = 1;
    for i in 0..=l {
        let num = checked_pow(s, n + 1 - i)? as u128 - 1;
        let den = checked_pow(s, i + 1)? as u128 - 1;
        acc = acc.checked_mul(num).ok_or(Error::Overflow("gaussian"))?;
        debug_assert_eq!(acc % den, 0);
        acc /= den;
    }
    u64::try_from(acc).map_err(|_| Error::Overflow("gaussian"))
}

fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow("power"))
}

/// A projective subspace over GF(2). Two flats are equal iff their point
/// sets are; the basis is one arbitrary choice of spanning points.
#[derive(Clone, Debug)]
pub struct Flat {
    dimension: u32,
    points: Vec<PointId>,
    basis: Vec<PointId>,
}

impl PartialEq for Flat {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Flat {}

impl Flat {
    /// Projective dimension (0 for a point, 2 for a plane).
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// All points, sorted by id.
    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn basis(&self) -> &[PointId] {
        &self.basis
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Point set as a bitmask (bit i set iff point i is in the flat).
    /// Only meaningful when all ids are below 64, i.e. d <= 5.
    pub fn mask(&self) -> u64 {
        self.points.iter().fold(0u64, |m, p| m | (1u64 << p.0))
    }
}

/// Returns the GF(2) linear span of `vectors` as (independent basis, all nonzero
/// members in ascending order).
fn linear_closure(vectors: impl IntoIterator<Item = u32>) -> (Vec<u32>, Vec<u32>) {
    let mut basis: Vec<u32> = Vec::new();
    // reduced copies keyed by leading bit, used for the independence test
    let mut echelon: Vec<u32> = Vec::new();
    for v in vectors {
        let mut r = v;
        for &e in &echelon {
            r = r.min(r ^ e);
        }
        if r != 0 {
            basis.push(v);
            echelon.push(r);
            echelon.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let mut members = Vec::with_capacity((1usize << basis.len()) - 1);
    for mask in 1u32..(1u32 << basis.len()) {
        let mut x = 0u32;
        for (i, &b) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x ^= b;
            }
        }
        members.push(x);
    }
    members.sort_unstable();
    (basis, members)
}

/// PG(d, 2) with its point and hyperplane sets.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    d: u32,
}

impl ProjectiveSpace {
    /// PG(d, 2). Ids are stored in 32 bits, so d is capped at 30.
    pub fn new(d: u32) -> Result<Self> {
        if !(1..=30).contains(&d) {
            return Err(Error::OutOfRange {
                what: "d",
                value: d as i64,
                lo: 1,
                hi: 30,
            });
        }
        Ok(Self { d })
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    pub fn num_points(&self) -> usize {
        (1usize << (self.d + 1)) - 1
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (1..=self.num_points() as u32).map(PointId)
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = HyperplaneId> {
        (1..=self.num_points() as u32).map(HyperplaneId)
    }

    fn check_point(&self, p: u32) -> Result<()> {
        if p == 0 || p as usize > self.num_points() {
            return Err(Error::OutOfRange {
                what: "point id",
                value: p as i64,
                lo: 1,
                hi: self.num_points() as i64,
            });
        }
        Ok(())
    }

    /// Points lying on `h`, ascending.
    pub fn points_on(&self, h: HyperplaneId) -> Vec<PointId> {
        self.points().filter(|&p| incident(p, h)).collect()
    }

    /// Smallest flat containing all given points.
    pub fn span(&self, points: &[PointId]) -> Result<Flat> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("span of an empty point set".into()));
        }
        for p in points {
            self.check_point(p.0)?;
        }
        let (basis, members) = linear_closure(points.iter().map(|p| p.0));
        Ok(Flat {
            dimension: basis.len() as u32 - 1,
            points: members.into_iter().map(PointId).collect(),
            basis: basis.into_iter().map(PointId).collect(),
        })
    }

    /// Every hyperplane containing the whole flat, ascending by id.
    pub fn hyperplanes_through(&self, f: &Flat) -> Vec<HyperplaneId> {
        self.hyperplanes()
            .filter(|&h| f.basis.iter().all(|&p| incident(p, h)))
            .collect()
    }

    /// All flats of projective dimension 1.
    pub fn enumerate_lines(&self) -> Vec<Flat> {
        let n = self.num_points() as u32;
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                // each line {a, b, a^b} is emitted once, from its two smallest points
                if (a ^ b) > b {
                    out.push(Flat {
                        dimension: 1,
                        points: vec![PointId(a), PointId(b), PointId(a ^ b)],
                        basis: vec![PointId(a), PointId(b)],
                    });
                }
            }
        }
        out
    }

    /// All flats of projective dimension 2, each with its seven points.
    pub fn enumerate_planes(&self) -> Result<Vec<Flat>> {
        if self.d < 2 {
            return Err(Error::InvalidParameter(format!(
                "PG({}, 2) has no planes",
                self.d
            )));
        }
        let n = self.num_points() as u32;
        let mut out = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if (a ^ b) < b {
                    continue;
                }
                for c in b + 1..=n {
                    // (a, b, c) must be the lexicographically least generating
                    // triple: a is the plane's minimum, b the minimum of the rest,
                    // and c the minimum outside the line through a and b.
                    if c == (a ^ b) {
                        continue;
                    }
                    let others = [a ^ c, b ^ c, a ^ b ^ c];
                    if others.iter().any(|&x| x < c) {
                        continue;
                    }
                    let mut pts = vec![a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c];
                    pts.sort_unstable();
                    out.push(Flat {
                        dimension: 2,
                        points: pts.into_iter().map(PointId).collect(),
                        basis: vec![PointId(a), PointId(b), PointId(c)],
                    });
                }
            }
        }
        Ok(out)
    }

    /// Incidence structure as "pointId hyperplaneId" lines, sorted by point then hyperplane.
    pub fn export_incidence(&self) -> String {
        let mut s = String::new();
        for p in self.points() {
            for h in self.hyperplanes() {
                if incident(p, h) {
                    s.push_str(&format!("{p} {h}\n"));
                }
            }
        }
        s
    }
}
