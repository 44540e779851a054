//! Unique factorization of integrally closed monomial ideals into simple
//! ideals `E_{r/s} = closure of (x^r, y^s)`.
//!
//! Each bounded edge of the Newton polygon with primitive step `(r, -s)` and
//! lattice length `b` contributes the factor `E_{r/s}^b`; scanning the
//! boundary left to right lists the factors by increasing `r/s`. A monomial
//! translation is split off so that non-m-primary ideals factor too.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{self, Error, Result};
use crate::geometry::{BoundaryPath, Edge, LatticePoint, Slope};
use crate::ideal::MonomialIdeal;
use crate::monomial_module::MonomialModule;

/// `E_{r/s}`: the integral closure of `(x^r, y^s)`.
pub fn simple_ideal(v: Slope) -> MonomialIdeal {
    let path = BoundaryPath::from_edges(
        LatticePoint::new(0, v.denominator()),
        [Edge {
            step: v.step(),
            multiplicity: 1,
        }],
    )
    .expect("single edge from (0, s) to (r, 0) fits in i64");
    MonomialIdeal::from_staircase(path.ceil_scan().expect("simple edge scan"))
        .expect("simple ideal lies in the positive quadrant")
}

/// A monomial `x^u y^v` (the anchor) times a finite product of simple ideals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub anchor: LatticePoint,
    factors: BTreeMap<Slope, u64>,
}

impl Factorization {
    pub fn new(anchor: LatticePoint) -> Self {
        Factorization {
            anchor,
            factors: BTreeMap::new(),
        }
    }

    /// Builds from `(slope, multiplicity)` pairs; repeated slopes add up and
    /// zero multiplicities are dropped.
    pub fn from_factors(
        anchor: LatticePoint,
        factors: impl IntoIterator<Item = (Slope, u64)>,
    ) -> Result<Self> {
        let mut f = Factorization::new(anchor);
        for (slope, b) in factors {
            f.insert(slope, b)?;
        }
        Ok(f)
    }

    /// Multiplies in `E_slope^b`.
    pub fn insert(&mut self, slope: Slope, b: u64) -> Result<()> {
        if b == 0 {
            return Ok(());
        }
        let entry = self.factors.entry(slope).or_insert(0);
        *entry = entry.checked_add(b).ok_or(Error::OverflowDetected)?;
        Ok(())
    }

    /// Factors in increasing slope order.
    pub fn factors(&self) -> impl Iterator<Item = (Slope, u64)> + '_ {
        self.factors.iter().map(|(s, b)| (*s, *b))
    }

    pub fn multiplicity(&self, slope: Slope) -> u64 {
        self.factors.get(&slope).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Equality modulo translation.
    pub fn same_class(&self, other: &Factorization) -> bool {
        self.factors == other.factors
    }

    /// Keeps only the factors whose slope satisfies `keep`.
    pub fn retain(&self, mut keep: impl FnMut(Slope) -> bool) -> Factorization {
        Factorization {
            anchor: self.anchor,
            factors: self
                .factors
                .iter()
                .filter(|(s, _)| keep(**s))
                .map(|(s, b)| (*s, *b))
                .collect(),
        }
    }

    /// Boundary path of the product: it starts at `anchor + (0, Σ b·s)` and
    /// descends to `anchor + (Σ b·r, 0)`.
    pub fn boundary(&self) -> Result<BoundaryPath> {
        let mut height = 0i64;
        let mut edges = Vec::with_capacity(self.factors.len());
        for (slope, b) in self.factors() {
            height = error::add(height, error::mul(error::to_i64(b)?, slope.denominator())?)?;
            edges.push(Edge {
                step: slope.step(),
                multiplicity: b,
            });
        }
        let start = self.anchor.checked_add(LatticePoint::new(0, height))?;
        BoundaryPath::from_edges(start, edges)
    }

    /// The integrally closed ideal this factorization describes.
    pub fn expand(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::from_staircase(self.boundary()?.ceil_scan()?)
    }

    /// Like [`expand`](Self::expand) but allows a negative anchor.
    pub fn expand_module(&self) -> Result<MonomialModule> {
        Ok(MonomialModule::from_staircase(
            self.boundary()?.ceil_scan()?,
        ))
    }

    /// The monoid operation: anchors add, multiplicities add.
    pub fn multiply(&self, other: &Factorization) -> Result<Factorization> {
        let mut out = self.clone();
        out.anchor = out.anchor.checked_add(other.anchor)?;
        for (slope, b) in other.factors() {
            out.insert(slope, b)?;
        }
        Ok(out)
    }

    /// Reads the factorization off a boundary path whose lower-left corner is
    /// `corner`.
    pub(crate) fn from_boundary(corner: LatticePoint, path: &BoundaryPath) -> Factorization {
        Factorization {
            anchor: corner,
            factors: path
                .edges()
                .iter()
                .map(|e| (e.step.slope(), e.multiplicity))
                .collect(),
        }
    }
}

impl MonomialIdeal {
    /// Factors an integrally closed ideal. Closure is not applied implicitly.
    pub fn factor(&self) -> Result<Factorization> {
        let path = self.newton_boundary()?;
        if MonomialIdeal::from_staircase(path.ceil_scan()?)? != *self {
            return Err(Error::NotIntegrallyClosed);
        }
        Ok(Factorization::from_boundary(self.corner(), &path))
    }

    /// One simple factor with multiplicity one and no translation.
    pub fn is_simple(&self) -> Result<bool> {
        let f = self.factor()?;
        Ok(f.anchor == LatticePoint::ORIGIN && f.factors().map(|(_, b)| b).eq([1]))
    }
}
