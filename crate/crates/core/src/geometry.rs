//! Exact planar primitives on the integer lattice.
//!
//! The lower boundary of a two-dimensional Newton polyhedron is a convex
//! polygonal path that runs from upper left to lower right. It is stored as a
//! start vertex followed by edges; each edge is a primitive direction
//! `(run, -drop)` with `gcd(run, drop) = 1` together with a multiplicity, so
//! the edge displaces by `(m·run, -m·drop)` and contains `m + 1` lattice
//! points. Convexity means the ratio `run/drop` strictly increases from left to
//! right.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{self, Error, Result};

/// An exponent vector in `Z²`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn checked_add(self, other: LatticePoint) -> Result<LatticePoint> {
        Ok(LatticePoint::new(
            error::add(self.x, other.x)?,
            error::add(self.y, other.y)?,
        ))
    }

    pub fn checked_sub(self, other: LatticePoint) -> Result<LatticePoint> {
        Ok(LatticePoint::new(
            error::sub(self.x, other.x)?,
            error::sub(self.y, other.y)?,
        ))
    }

    pub fn checked_scale(self, k: i64) -> Result<LatticePoint> {
        Ok(LatticePoint::new(
            error::mul(self.x, k)?,
            error::mul(self.y, k)?,
        ))
    }

    /// Componentwise `self ≤ other`, i.e. the monomial of `self` divides that
    /// of `other`.
    pub fn divides(self, other: LatticePoint) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn in_positive_quadrant(self) -> bool {
        self.x >= 0 && self.y >= 0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint::new(x, y)
    }
}

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A positive rational `r/s` in lowest terms, ordered by value.
///
/// Indexes the simple ideal `E_{r/s}`, whose Newton polygon has one bounded
/// edge from `(0, s)` to `(r, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    /// Builds `r/s`, reducing to lowest terms.
    pub fn new(r: i64, s: i64) -> Result<Slope> {
        if r <= 0 || s <= 0 {
            return Err(Error::InvalidSlope {
                numerator: r,
                denominator: s,
            });
        }
        let g = gcd(r, s);
        Ok(Slope {
            num: r / g,
            den: s / g,
        })
    }

    /// Builds `r/s` only if it is already in lowest terms.
    pub fn reduced(r: i64, s: i64) -> Option<Slope> {
        (r > 0 && s > 0 && gcd(r, s) == 1).then_some(Slope { num: r, den: s })
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn step(self) -> PrimitiveStep {
        PrimitiveStep {
            run: self.num,
            drop: self.den,
        }
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Primitive edge direction `(run, -drop)`; its outward normal is
/// `(-drop, -run)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimitiveStep {
    run: i64,
    drop: i64,
}

impl PrimitiveStep {
    pub fn new(run: i64, drop: i64) -> Result<PrimitiveStep> {
        if run <= 0 || drop <= 0 {
            return Err(Error::DegenerateEdge { dx: run, dy: drop });
        }
        if gcd(run, drop) != 1 {
            return Err(Error::InvalidArgument("primitive step must be coprime"));
        }
        Ok(PrimitiveStep { run, drop })
    }

    pub fn run(self) -> i64 {
        self.run
    }

    pub fn drop(self) -> i64 {
        self.drop
    }

    pub fn slope(self) -> Slope {
        Slope {
            num: self.run,
            den: self.drop,
        }
    }
}

/// Splits the displacement `(dx, -dy)` into a primitive step and its
/// multiplicity `gcd(dx, dy)`.
pub fn primitive_step(dx: i64, dy: i64) -> Result<(PrimitiveStep, u64)> {
    if dx <= 0 || dy <= 0 {
        return Err(Error::DegenerateEdge { dx, dy });
    }
    let g = gcd(dx, dy);
    Ok((
        PrimitiveStep {
            run: dx / g,
            drop: dy / g,
        },
        g as u64,
    ))
}

/// A bounded face of a boundary path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub step: PrimitiveStep,
    pub multiplicity: u64,
}

impl Edge {
    pub fn new(step: PrimitiveStep, multiplicity: u64) -> Result<Edge> {
        if multiplicity == 0 {
            return Err(Error::InvalidArgument("edge multiplicity must be positive"));
        }
        Ok(Edge { step, multiplicity })
    }

    /// `(m·run, -m·drop)`.
    pub fn displacement(self) -> Result<LatticePoint> {
        let m = error::to_i64(self.multiplicity)?;
        Ok(LatticePoint::new(
            error::mul(m, self.step.run)?,
            -error::mul(m, self.step.drop)?,
        ))
    }
}

/// Number of lattice segments on the edge.
pub fn lattice_length(edge: Edge) -> u64 {
    edge.multiplicity
}

/// An exact rational with positive denominator, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i128,
    den: i128,
}

impl Fraction {
    pub fn new(num: i128, den: i128) -> Fraction {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_i128(num, den).max(1);
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(v: i64) -> Fraction {
        Fraction {
            num: v as i128,
            den: 1,
        }
    }

    pub fn numer(self) -> i128 {
        self.num
    }

    pub fn denom(self) -> i128 {
        self.den
    }

    pub fn floor(self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(self) -> i128 {
        -(-self.num).div_euclid(self.den)
    }

    /// Compares with an integer without leaving exact arithmetic.
    pub fn cmp_integer(self, v: i64) -> Ordering {
        // |num| < 2^127 / den whenever it came from a path evaluation, but
        // guard the product anyway.
        match (v as i128).checked_mul(self.den) {
            Some(scaled) => self.num.cmp(&scaled),
            None => {
                if v > 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Value of a boundary path at an abscissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Floor {
    /// The polyhedron has no point over this abscissa.
    Unbounded,
    At(Fraction),
}

/// Turn direction of an ordered point triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Sign of the cross product `(b - a) × (c - a)`.
///
/// Differences are taken in `i128`; only the products can overflow, which
/// needs coordinates beyond roughly `2^62`.
pub fn orientation(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Result<Orientation> {
    let (abx, aby) = (b.x as i128 - a.x as i128, b.y as i128 - a.y as i128);
    let (acx, acy) = (c.x as i128 - a.x as i128, c.y as i128 - a.y as i128);
    let lhs = abx.checked_mul(acy).ok_or(Error::OverflowDetected)?;
    let rhs = aby.checked_mul(acx).ok_or(Error::OverflowDetected)?;
    Ok(match lhs.cmp(&rhs) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    })
}

/// Componentwise-minimal elements of `points`, sorted by `x` ascending (so
/// `y` strictly descending). Duplicates collapse.
pub(crate) fn minimal_points(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut sorted: Vec<LatticePoint> = points.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<LatticePoint> = Vec::with_capacity(sorted.len());
    for p in sorted {
        match out.last() {
            Some(last) if p.y >= last.y => {}
            _ => out.push(p),
        }
    }
    out
}

/// The lower boundary of `conv(points) + R_+²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryPath {
    start: LatticePoint,
    edges: Vec<Edge>,
    vertices: Vec<LatticePoint>,
    left_ray: bool,
    right_ray: bool,
}

impl BoundaryPath {
    /// Builds a path from its leftmost vertex and left-to-right edges.
    /// Adjacent edges with the same step are merged; slopes must otherwise
    /// strictly increase.
    pub fn from_edges(start: LatticePoint, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut merged: Vec<Edge> = Vec::new();
        for (index, edge) in edges.into_iter().enumerate() {
            if edge.multiplicity == 0 {
                return Err(Error::InvalidArgument("edge multiplicity must be positive"));
            }
            match merged.last_mut() {
                Some(last) if last.step == edge.step => {
                    last.multiplicity = last
                        .multiplicity
                        .checked_add(edge.multiplicity)
                        .ok_or(Error::OverflowDetected)?;
                }
                Some(last) if last.step.slope() > edge.step.slope() => {
                    return Err(Error::NonConvexPath { index });
                }
                _ => merged.push(edge),
            }
        }
        let mut vertices = Vec::with_capacity(merged.len() + 1);
        let mut v = start;
        vertices.push(v);
        for edge in &merged {
            v = v.checked_add(edge.displacement()?)?;
            vertices.push(v);
        }
        Ok(BoundaryPath {
            start,
            edges: merged,
            vertices,
            left_ray: true,
            right_ray: true,
        })
    }

    /// Marks which recession rays are drawn. Both are present for any
    /// polyhedron with recession cone `R_+²`; clearing them describes a
    /// window onto a longer path.
    pub fn with_rays(mut self, left: bool, right: bool) -> Self {
        self.left_ray = left;
        self.right_ray = right;
        self
    }

    pub fn start(&self) -> LatticePoint {
        self.start
    }

    pub fn end(&self) -> LatticePoint {
        *self.vertices.last().expect("path has a start vertex")
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn has_left_ray(&self) -> bool {
        self.left_ray
    }

    pub fn has_right_ray(&self) -> bool {
        self.right_ray
    }

    pub fn translate(&self, by: LatticePoint) -> Result<Self> {
        let start = self.start.checked_add(by)?;
        Ok(BoundaryPath {
            start,
            edges: self.edges.clone(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.checked_add(by))
                .collect::<Result<_>>()?,
            left_ray: self.left_ray,
            right_ray: self.right_ray,
        })
    }

    /// Minimal ordinate of the polyhedron over abscissa `x`.
    pub fn floor_at(&self, x: i64) -> Floor {
        if x < self.start.x {
            return Floor::Unbounded;
        }
        let end = self.end();
        if x >= end.x {
            return Floor::At(Fraction::integer(end.y));
        }
        // index of the last vertex with v.x <= x
        let i = self.vertices.partition_point(|v| v.x <= x) - 1;
        let v = self.vertices[i];
        let step = self.edges[i].step;
        let r = step.run as i128;
        let s = step.drop as i128;
        Floor::At(Fraction::new(
            v.y as i128 * r - s * (x as i128 - v.x as i128),
            r,
        ))
    }

    /// Whether `p` lies in the closed polyhedron.
    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.floor_at(p.x) {
            Floor::Unbounded => false,
            Floor::At(f) => f.cmp_integer(p.y) != Ordering::Greater,
        }
    }

    /// Minimal lattice points of the polyhedron: for every integer abscissa
    /// between the end vertices, the lowest lattice point on or above the
    /// path, kept where that height strictly drops.
    pub fn ceil_scan(&self) -> Result<Vec<LatticePoint>> {
        let mut out = Vec::new();
        out.push(self.start);
        for (edge, &v) in self.edges.iter().zip(&self.vertices) {
            let r = edge.step.run as i128;
            let s = edge.step.drop as i128;
            let width = error::mul(error::to_i64(edge.multiplicity)?, edge.step.run)?;
            let mut last_y = out.last().map(|p| p.y).unwrap_or(i64::MAX);
            for t in 1..=width {
                let y = v.y as i128 - (s * t as i128).div_euclid(r);
                let y = y as i64;
                if y < last_y {
                    out.push(LatticePoint::new(v.x + t, y));
                    last_y = y;
                }
            }
        }
        Ok(out)
    }
}

/// Lower-left convex hull: the boundary path of `conv(points) + R_+²`.
///
/// Dominated points are discarded first, then a monotone chain over the
/// remaining staircase keeps only strict counter-clockwise turns; collinear
/// runs end up as one edge with multiplicity.
pub fn lower_left_hull(points: &[LatticePoint]) -> Result<BoundaryPath> {
    if points.is_empty() {
        return Err(Error::EmptyGeneratorSet);
    }
    let staircase = minimal_points(points);
    let mut chain: Vec<LatticePoint> = Vec::with_capacity(staircase.len());
    for p in staircase {
        while chain.len() >= 2 {
            let n = chain.len();
            if orientation(chain[n - 2], chain[n - 1], p)? == Orientation::CounterClockwise {
                break;
            }
            chain.pop();
        }
        chain.push(p);
    }
    let edges = chain
        .windows(2)
        .map(|w| {
            let (step, m) =
                primitive_step(error::sub(w[1].x, w[0].x)?, error::sub(w[0].y, w[1].y)?)?;
            Edge::new(step, m)
        })
        .collect::<Result<Vec<_>>>()?;
    BoundaryPath::from_edges(chain[0], edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&p| p.into()).collect()
    }

    fn step(r: i64, s: i64) -> PrimitiveStep {
        PrimitiveStep::new(r, s).unwrap()
    }

    #[test]
    fn primitive_step_factors_gcd() {
        assert_eq!(primitive_step(4, 3).unwrap(), (step(4, 3), 1));
        assert_eq!(primitive_step(2, 2).unwrap(), (step(1, 1), 2));
        assert_eq!(primitive_step(10, 4).unwrap(), (step(5, 2), 2));
        assert_eq!(
            primitive_step(0, 3),
            Err(Error::DegenerateEdge { dx: 0, dy: 3 })
        );
        assert!(primitive_step(3, -1).is_err());
    }

    #[test]
    fn slope_reduces_and_orders_by_value() {
        let a = Slope::new(10, 4).unwrap();
        assert_eq!((a.numerator(), a.denominator()), (5, 2));
        assert!(Slope::new(4, 3).unwrap() < Slope::new(5, 2).unwrap());
        assert!(Slope::new(1, 3).unwrap() < Slope::new(1, 2).unwrap());
        assert_eq!(Slope::new(2, 2).unwrap(), Slope::new(1, 1).unwrap());
        assert!(Slope::reduced(2, 2).is_none());
        assert!(Slope::new(0, 1).is_err());
    }

    #[test]
    fn hull_of_collinear_points() {
        let path = lower_left_hull(&pts(&[(2, 0), (0, 2), (1, 1)])).unwrap();
        assert_eq!(path.start(), LatticePoint::new(0, 2));
        assert_eq!(path.edges(), &[Edge::new(step(1, 1), 2).unwrap()]);
        assert!(path.has_left_ray() && path.has_right_ray());
    }

    #[test]
    fn hull_of_product_sumset() {
        let a = pts(&[(0, 3), (2, 2), (3, 1), (4, 0)]);
        let b = pts(&[(0, 2), (3, 1), (5, 0)]);
        let mut sums = Vec::new();
        for p in &a {
            for q in &b {
                sums.push(p.checked_add(*q).unwrap());
            }
        }
        let path = lower_left_hull(&sums).unwrap();
        assert_eq!(path.vertices(), &pts(&[(0, 5), (4, 2), (9, 0)])[..]);
    }

    #[test]
    fn hull_of_single_point() {
        let path = lower_left_hull(&pts(&[(0, 0)])).unwrap();
        assert_eq!(path.start(), LatticePoint::ORIGIN);
        assert!(path.edges().is_empty());
        assert_eq!(lower_left_hull(&[]), Err(Error::EmptyGeneratorSet));
    }

    #[test]
    fn hull_discards_dominated_points_before_choosing_start() {
        let path = lower_left_hull(&pts(&[(0, 5), (0, 3), (1, 4), (3, 0)])).unwrap();
        assert_eq!(path.start(), LatticePoint::new(0, 3));
        assert_eq!(path.end(), LatticePoint::new(3, 0));
    }

    #[test]
    fn floor_interpolates_exactly() {
        let path = lower_left_hull(&pts(&[(0, 5), (4, 2), (9, 0)])).unwrap();
        assert_eq!(path.floor_at(1), Floor::At(Fraction::new(17, 4)));
        assert_eq!(path.floor_at(0), Floor::At(Fraction::integer(5)));
        assert_eq!(path.floor_at(40), Floor::At(Fraction::integer(0)));
        assert_eq!(path.floor_at(-1), Floor::Unbounded);
    }

    #[test]
    fn lattice_length_is_multiplicity() {
        assert_eq!(lattice_length(Edge::new(step(1, 1), 2).unwrap()), 2);
        assert_eq!(lattice_length(Edge::new(step(4, 3), 1).unwrap()), 1);
        assert_eq!(lattice_length(Edge::new(step(5, 2), 3).unwrap()), 3);
    }

    #[test]
    fn from_edges_rejects_concave_paths_and_merges_repeats() {
        let e = |r, s, m| Edge::new(step(r, s), m).unwrap();
        assert_eq!(
            BoundaryPath::from_edges(LatticePoint::ORIGIN, vec![e(2, 1, 1), e(1, 1, 1)]),
            Err(Error::NonConvexPath { index: 1 })
        );
        let p =
            BoundaryPath::from_edges(LatticePoint::ORIGIN, vec![e(1, 1, 1), e(1, 1, 2)]).unwrap();
        assert_eq!(p.edges(), &[e(1, 1, 3)]);
    }

    #[test]
    fn ceil_scan_of_simple_edge() {
        let p = BoundaryPath::from_edges(
            LatticePoint::new(0, 3),
            vec![Edge::new(step(4, 3), 1).unwrap()],
        )
        .unwrap();
        assert_eq!(
            p.ceil_scan().unwrap(),
            pts(&[(0, 3), (2, 2), (3, 1), (4, 0)])
        );
    }

    #[test]
    fn overflow_is_reported() {
        let e = Edge::new(step(1, 1), u64::MAX).unwrap();
        assert_eq!(
            BoundaryPath::from_edges(LatticePoint::ORIGIN, vec![e]),
            Err(Error::OverflowDetected)
        );
        let big = LatticePoint::new(i64::MAX, 0);
        assert_eq!(
            big.checked_add(LatticePoint::new(1, 0)),
            Err(Error::OverflowDetected)
        );
    }

    #[test]
    fn fraction_rounding() {
        let f = Fraction::new(-7, 2);
        assert_eq!((f.floor(), f.ceil()), (-4, -3));
        assert_eq!(Fraction::new(6, -4), Fraction::new(-3, 2));
    }
}
