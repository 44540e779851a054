//! Co-artinian monomial modules in `Z²` and their infinite factorizations.
//!
//! A finitely generated module is kept as a staircase of minimal generators,
//! like an ideal but with coordinates of any sign. Modules with infinitely
//! many faces are represented by a [`FactorStream`]: an anchor vertex and two
//! slope-ordered sequences of simple factors, one extending the boundary to
//! the right of the anchor and one to the left.

mod admission;
mod convergence;
mod stream;

use alloc::vec::Vec;

pub use admission::{admit_module, Admitted, ModuleDescription, NamedFamily};
pub use convergence::{check_convergence, Rect, StabilizationReport, Window};
pub use stream::{FactorStream, Side, SideRule};

use crate::enumeration::{calkin_wilf_rank, CalkinWilf};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::geometry::{lower_left_hull, minimal_points, BoundaryPath, LatticePoint};
use crate::ideal::MonomialIdeal;

/// A finitely generated monomial module: a nonempty antichain in `Z²`
/// sorted by `x` ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialModule {
    generators: Vec<LatticePoint>,
}

impl MonomialModule {
    pub fn from_generators(points: &[LatticePoint]) -> Result<MonomialModule> {
        if points.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        Ok(MonomialModule {
            generators: minimal_points(points),
        })
    }

    pub(crate) fn from_staircase(generators: Vec<LatticePoint>) -> MonomialModule {
        debug_assert!(!generators.is_empty());
        debug_assert!(generators
            .windows(2)
            .all(|w| w[0].x < w[1].x && w[0].y > w[1].y));
        MonomialModule { generators }
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        let i = self.generators.partition_point(|g| g.x <= p.x);
        i > 0 && self.generators[i - 1].y <= p.y
    }

    pub fn newton_boundary(&self) -> Result<BoundaryPath> {
        lower_left_hull(&self.generators)
    }

    /// `(min x, min y)` over the generators.
    pub fn corner(&self) -> LatticePoint {
        LatticePoint::new(
            self.generators[0].x,
            self.generators[self.generators.len() - 1].y,
        )
    }

    pub fn translate(&self, by: LatticePoint) -> Result<MonomialModule> {
        Ok(MonomialModule {
            generators: self
                .generators
                .iter()
                .map(|g| g.checked_add(by))
                .collect::<Result<_>>()?,
        })
    }

    /// Product module from the generator sumset.
    pub fn multiply(&self, other: &MonomialModule) -> Result<MonomialModule> {
        let mut sums = Vec::with_capacity(self.generators.len() * other.generators.len());
        for g in &self.generators {
            for h in &other.generators {
                sums.push(g.checked_add(*h)?);
            }
        }
        Ok(MonomialModule {
            generators: minimal_points(&sums),
        })
    }

    /// Integral closure, computed on the translate that sits in `N²`.
    pub fn closure(&self) -> Result<MonomialModule> {
        let corner = self.corner();
        let back = LatticePoint::new(0, 0).checked_sub(corner)?;
        let ideal = MonomialIdeal::minimize(self.translate(back)?.generators())?;
        MonomialModule::from_staircase(ideal.integral_closure()?.into_generators())
            .translate(corner)
    }

    pub fn is_integrally_closed(&self) -> Result<bool> {
        Ok(self.closure()? == *self)
    }

    /// Canonical translate with its leftmost hull vertex at the origin,
    /// together with the shift that was removed.
    pub fn normalize(&self) -> Result<(MonomialModule, LatticePoint)> {
        let shift = self.generators[0];
        let back = LatticePoint::ORIGIN.checked_sub(shift)?;
        Ok((self.translate(back)?, shift))
    }

    /// `I_a(M) = x^a y^a M ∩ k[x, y]`.
    ///
    /// Shifted generators below an axis are projected onto it, which yields
    /// the minimal points where the shifted staircase crosses the axis.
    pub fn quadrant_truncation(&self, a: u64) -> Result<MonomialIdeal> {
        let shift = crate::error::to_i64(a)?;
        let shifted = self.translate(LatticePoint::new(shift, shift))?;
        if !shifted.generators.iter().any(|g| g.in_positive_quadrant()) {
            return Err(Error::EmptyTruncation { shift });
        }
        let clipped: Vec<LatticePoint> = shifted
            .generators
            .iter()
            .map(|g| LatticePoint::new(g.x.max(0), g.y.max(0)))
            .collect();
        MonomialIdeal::minimize(&clipped)
    }

    /// Factorization of an integrally closed module, anchored at its corner.
    pub fn factor(&self) -> Result<Factorization> {
        let path = self.newton_boundary()?;
        if path.ceil_scan()? != self.generators {
            return Err(Error::NotIntegrallyClosed);
        }
        Ok(Factorization::from_boundary(self.corner(), &path))
    }

    /// Reinterprets the module as an ideal when it lies in `N²`.
    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::minimize(&self.generators)
    }
}

impl From<MonomialIdeal> for MonomialModule {
    fn from(ideal: MonomialIdeal) -> Self {
        MonomialModule::from_staircase(ideal.into_generators())
    }
}

/// The finite factor stream of a module: anchored at its leftmost hull vertex,
/// with the hull edges of its closure as right factors.
pub fn factor_stream_of_module(module: &MonomialModule) -> Result<FactorStream> {
    let path = module.newton_boundary()?;
    let right = path
        .edges()
        .iter()
        .map(|e| (e.step.slope(), e.multiplicity))
        .collect();
    FactorStream::new(path.start(), SideRule::empty(), SideRule::List(right))
}

/// `ρ_N`: keeps the factors whose slope is among the first `n` Calkin–Wilf
/// rationals. The anchor is kept.
pub fn truncate_factorization(f: &Factorization, n: u64) -> Factorization {
    f.retain(|s| calkin_wilf_rank(s).is_some_and(|rank| rank <= n))
}

/// `ρ_N` of an infinite product: collects both sides' multiplicities at the
/// first `n` Calkin–Wilf rationals. The result is a class representative
/// anchored at the origin.
pub fn truncate_stream(stream: &FactorStream, n: u64) -> Result<Factorization> {
    let mut out = Factorization::default();
    for slope in CalkinWilf::new().take(n as usize) {
        let b = stream.multiplicity(slope);
        out.insert(slope, b)?;
    }
    Ok(out)
}
