//! Monomial ideals of `k[x, y]`, stored as minimal exponent vectors.

use alloc::vec::Vec;

use crate::error::{self, Error, Result};
use crate::geometry::{lower_left_hull, minimal_points, BoundaryPath, LatticePoint};

/// A monomial ideal given by its minimal generators: a nonempty antichain in
/// `N²` sorted by `x` ascending (hence `y` strictly descending).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    generators: Vec<LatticePoint>,
}

impl MonomialIdeal {
    /// Keeps the componentwise-minimal points; they generate the same ideal.
    pub fn minimize(points: &[LatticePoint]) -> Result<MonomialIdeal> {
        if points.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        if let Some(p) = points.iter().find(|p| !p.in_positive_quadrant()) {
            return Err(Error::NotInPositiveQuadrant(*p));
        }
        Ok(MonomialIdeal {
            generators: minimal_points(points),
        })
    }

    /// The unit ideal `(1)`.
    pub fn unit() -> MonomialIdeal {
        MonomialIdeal {
            generators: alloc::vec![LatticePoint::ORIGIN],
        }
    }

    /// Trusted constructor for staircases produced inside the crate.
    pub(crate) fn from_staircase(generators: Vec<LatticePoint>) -> Result<MonomialIdeal> {
        debug_assert!(generators
            .windows(2)
            .all(|w| w[0].x < w[1].x && w[0].y > w[1].y));
        match generators.iter().find(|p| !p.in_positive_quadrant()) {
            Some(p) => Err(Error::NotInPositiveQuadrant(*p)),
            None if generators.is_empty() => Err(Error::EmptyGeneratorSet),
            None => Ok(MonomialIdeal { generators }),
        }
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<LatticePoint> {
        self.generators
    }

    /// Whether some generator divides the monomial with exponent `p`.
    pub fn contains(&self, p: LatticePoint) -> bool {
        // the last generator with g.x <= p.x has the smallest y among them
        let i = self.generators.partition_point(|g| g.x <= p.x);
        i > 0 && self.generators[i - 1].y <= p.y
    }

    /// Lower boundary of the Newton polyhedron.
    pub fn newton_boundary(&self) -> Result<BoundaryPath> {
        lower_left_hull(&self.generators)
    }

    /// Lattice points of the Newton polyhedron, as minimal generators.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        let path = self.newton_boundary()?;
        MonomialIdeal::from_staircase(path.ceil_scan()?)
    }

    /// Product ideal from the generator sumset. Not closed in general.
    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut sums = Vec::with_capacity(self.generators.len() * other.generators.len());
        for g in &self.generators {
            for h in &other.generators {
                sums.push(g.checked_add(*h)?);
            }
        }
        Ok(MonomialIdeal {
            generators: minimal_points(&sums),
        })
    }

    pub fn is_integrally_closed(&self) -> Result<bool> {
        Ok(self.integral_closure()? == *self)
    }

    /// Contains a pure power of each variable.
    pub fn is_m_primary(&self) -> bool {
        self.generators[0].x == 0 && self.generators[self.generators.len() - 1].y == 0
    }

    /// `(min x, min y)` over the generators; the ideal is this monomial times
    /// an m-primary ideal.
    pub fn corner(&self) -> LatticePoint {
        LatticePoint::new(
            self.generators[0].x,
            self.generators[self.generators.len() - 1].y,
        )
    }
}

/// Brute-force membership in the integral closure, independent of any hull
/// computation: `p` is integral over `I` when `r·p` is divisible by some
/// product of `r` generators for some `r ≥ 1`.
///
/// Minimal `k`-fold generator sums are tabulated once for every `k` up to
/// `r_max`; a query then looks up each level. A `false` answer only means no
/// witness exists with `r ≤ r_max`.
#[derive(Clone, Debug)]
pub struct ClosureOracle {
    /// `levels[k - 1]` holds the minimal `k`-fold sums, sorted by `x`.
    levels: Vec<Vec<LatticePoint>>,
}

impl ClosureOracle {
    pub fn new(ideal: &MonomialIdeal, r_max: u32) -> Result<ClosureOracle> {
        if r_max == 0 {
            return Err(Error::InvalidArgument("r_max must be positive"));
        }
        let gens = ideal.generators();
        let mut levels: Vec<Vec<LatticePoint>> = Vec::with_capacity(r_max as usize);
        levels.push(gens.to_vec());
        for _ in 1..r_max {
            let next = minimal_sums(levels.last().expect("first level present"), gens)?;
            levels.push(next);
        }
        Ok(ClosureOracle { levels })
    }

    /// The smallest `r ≤ r_max` witnessing integrality of `p`, if any.
    pub fn witness(&self, p: LatticePoint) -> Result<Option<u32>> {
        for (k, level) in self.levels.iter().enumerate() {
            let r = k as i64 + 1;
            let target = p.checked_scale(r)?;
            let i = level.partition_point(|q| q.x <= target.x);
            if i > 0 && level[i - 1].y <= target.y {
                return Ok(Some(r as u32));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, p: LatticePoint) -> Result<bool> {
        Ok(self.witness(p)?.is_some())
    }
}

/// Minimal elements of the sumset `level + gens`, via the lowest sum in
/// every column.
fn minimal_sums(level: &[LatticePoint], gens: &[LatticePoint]) -> Result<Vec<LatticePoint>> {
    let x_min = error::add(level[0].x, gens[0].x)?;
    let x_max = error::add(level[level.len() - 1].x, gens[gens.len() - 1].x)?;
    let width =
        usize::try_from(error::sub(x_max, x_min)?).map_err(|_| Error::OverflowDetected)? + 1;
    let mut lowest: Vec<Option<i64>> = alloc::vec![None; width];
    for p in level {
        for g in gens {
            let s = p.checked_add(*g)?;
            let slot = &mut lowest[(s.x - x_min) as usize];
            *slot = Some(slot.map_or(s.y, |y| y.min(s.y)));
        }
    }
    let mut out = Vec::new();
    let mut best = i64::MAX;
    for (dx, y) in lowest.into_iter().enumerate() {
        if let Some(y) = y {
            if y < best {
                best = y;
                out.push(LatticePoint::new(x_min + dx as i64, y));
            }
        }
    }
    Ok(out)
}

/// One-shot form of [`ClosureOracle`].
pub fn closure_contains_oracle(ideal: &MonomialIdeal, p: LatticePoint, r_max: u32) -> Result<bool> {
    if !p.in_positive_quadrant() {
        return Ok(false);
    }
    ClosureOracle::new(ideal, r_max)?.contains(p)
}
