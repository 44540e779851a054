use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{self, Error, Result, Violation};
use crate::geometry::{BoundaryPath, Edge, LatticePoint, Slope};

use super::MonomialModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// How the factors on one side of the anchor are enumerated.
///
/// Right factors are listed by increasing slope and left factors by
/// decreasing slope, so that both walk away from the anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SideRule {
    /// An explicit finite list of `(slope, multiplicity)`.
    List(Vec<(Slope, u64)>),
    /// `E_{k/1}, E_{(k+1)/1}, …` on the right and the mirror image
    /// `E_{1/k}, E_{1/(k+1)}, …` on the left, each with multiplicity one.
    Triangular { start: i64 },
    /// The single factor `E_slope^exponent`.
    Powers { slope: Slope, exponent: u64 },
}

impl SideRule {
    pub fn empty() -> SideRule {
        SideRule::List(Vec::new())
    }

    /// Number of factors, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        match self {
            SideRule::List(v) => Some(v.len()),
            SideRule::Triangular { .. } => None,
            SideRule::Powers { .. } => Some(1),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The `i`-th factor (0-based) walking away from the anchor.
    pub fn factor(&self, side: Side, i: usize) -> Result<Option<(Slope, u64)>> {
        match self {
            SideRule::List(v) => Ok(v.get(i).copied()),
            SideRule::Triangular { start } => {
                let k = error::add(
                    *start,
                    i64::try_from(i).map_err(|_| Error::OverflowDetected)?,
                )?;
                let slope = match side {
                    Side::Right => Slope::new(k, 1)?,
                    Side::Left => Slope::new(1, k)?,
                };
                Ok(Some((slope, 1)))
            }
            SideRule::Powers { slope, exponent } => Ok((i == 0).then_some((*slope, *exponent))),
        }
    }

    /// Multiplicity of `E_slope` on this side.
    pub fn multiplicity(&self, side: Side, slope: Slope) -> u64 {
        match self {
            SideRule::List(v) => v.iter().find(|(s, _)| *s == slope).map_or(0, |(_, b)| *b),
            SideRule::Triangular { start } => {
                let index = match side {
                    Side::Right if slope.denominator() == 1 => slope.numerator(),
                    Side::Left if slope.numerator() == 1 => slope.denominator(),
                    _ => return 0,
                };
                u64::from(index >= *start)
            }
            SideRule::Powers { slope: s, exponent } => {
                if *s == slope {
                    *exponent
                } else {
                    0
                }
            }
        }
    }

    fn validate(&self, side: Side) -> core::result::Result<(), Violation> {
        match self {
            SideRule::List(v) => {
                let wanted = match side {
                    Side::Right => Ordering::Less,
                    Side::Left => Ordering::Greater,
                };
                for (index, (_, b)) in v.iter().enumerate() {
                    if *b == 0 {
                        return Err(Violation::ZeroMultiplicity { side, index });
                    }
                }
                for (index, w) in v.windows(2).enumerate() {
                    if w[0].0.cmp(&w[1].0) != wanted {
                        return Err(Violation::SlopeOrder {
                            side,
                            index: index + 1,
                        });
                    }
                }
                Ok(())
            }
            SideRule::Triangular { start } => {
                if *start < 1 {
                    Err(Violation::FamilyParameter(
                        "triangular start must be at least 1",
                    ))
                } else {
                    Ok(())
                }
            }
            SideRule::Powers { exponent, .. } => {
                if *exponent == 0 {
                    Err(Violation::ZeroMultiplicity { side, index: 0 })
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// An anchored, possibly infinite product of simple factors.
///
/// The boundary passes through `anchor`; right factors continue it to the
/// lower right in increasing slope order, left factors continue it to the
/// upper left in decreasing slope order. Every left slope is below every right
/// slope, so the whole path is convex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorStream {
    anchor: LatticePoint,
    left: SideRule,
    right: SideRule,
}

impl FactorStream {
    pub fn new(anchor: LatticePoint, left: SideRule, right: SideRule) -> Result<FactorStream> {
        left.validate(Side::Left)
            .map_err(Error::NonAdmissibleModule)?;
        right
            .validate(Side::Right)
            .map_err(Error::NonAdmissibleModule)?;
        // left is decreasing and right increasing, so the first entries are
        // the closest pair
        if let (Some((l, _)), Some((r, _))) =
            (left.factor(Side::Left, 0)?, right.factor(Side::Right, 0)?)
        {
            if l >= r {
                return Err(Error::NonAdmissibleModule(Violation::SidesOverlap {
                    left: l,
                    right: r,
                }));
            }
        }
        Ok(FactorStream {
            anchor,
            left,
            right,
        })
    }

    pub fn anchor(&self) -> LatticePoint {
        self.anchor
    }

    pub fn left(&self) -> &SideRule {
        &self.left
    }

    pub fn right(&self) -> &SideRule {
        &self.right
    }

    pub fn is_finite(&self) -> bool {
        self.left.len().is_some() && self.right.len().is_some()
    }

    /// Total multiplicity of `E_slope` across both sides.
    pub fn multiplicity(&self, slope: Slope) -> u64 {
        self.left.multiplicity(Side::Left, slope) + self.right.multiplicity(Side::Right, slope)
    }

    fn take(&self, side: Side, n: usize) -> Result<Vec<Edge>> {
        let rule = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        let n = rule.len().map_or(n, |len| n.min(len));
        let mut out = Vec::new();
        for i in 0..n {
            match rule.factor(side, i)? {
                Some((slope, b)) => out.push(Edge {
                    step: slope.step(),
                    multiplicity: b,
                }),
                None => break,
            }
        }
        Ok(out)
    }

    /// Boundary of the product of the first `n_left` left and `n_right`
    /// right factors, still passing through the anchor. Finite sides
    /// saturate.
    pub fn partial_path(&self, n_left: usize, n_right: usize) -> Result<BoundaryPath> {
        let left = self.take(Side::Left, n_left)?;
        let right = self.take(Side::Right, n_right)?;
        let mut start = self.anchor;
        for e in &left {
            start = start.checked_sub(e.displacement()?)?;
        }
        BoundaryPath::from_edges(start, left.into_iter().rev().chain(right))
    }

    /// The approximant `U_n`: generators of [`partial_path`](Self::partial_path).
    pub fn partial_sum(&self, n_left: usize, n_right: usize) -> Result<MonomialModule> {
        Ok(MonomialModule::from_staircase(
            self.partial_path(n_left, n_right)?.ceil_scan()?,
        ))
    }

    /// Membership of `p` in the limit module.
    ///
    /// Each factor moves the boundary at least one unit horizontally, so at
    /// most `|p.x - anchor.x|` factors are expanded.
    pub fn contains(&self, p: LatticePoint) -> Result<bool> {
        let mut v = self.anchor;
        if p.x >= v.x {
            for i in 0.. {
                let Some((slope, b)) = self.right.factor(Side::Right, i)? else {
                    return Ok(p.y >= v.y);
                };
                let next = v.checked_add(
                    Edge {
                        step: slope.step(),
                        multiplicity: b,
                    }
                    .displacement()?,
                )?;
                if next.x >= p.x {
                    return Ok(on_or_above(v, slope, p));
                }
                v = next;
            }
        } else {
            for i in 0.. {
                let Some((slope, b)) = self.left.factor(Side::Left, i)? else {
                    return Ok(false);
                };
                let prev = v.checked_sub(
                    Edge {
                        step: slope.step(),
                        multiplicity: b,
                    }
                    .displacement()?,
                )?;
                if prev.x <= p.x {
                    return Ok(on_or_above(prev, slope, p));
                }
                v = prev;
            }
        }
        unreachable!("factor index space exhausted")
    }
}

/// `p` is on or above the line through `v` with direction `(r, -s)`.
fn on_or_above(v: LatticePoint, slope: Slope, p: LatticePoint) -> bool {
    let r = slope.numerator() as i128;
    let s = slope.denominator() as i128;
    // p.y ≥ v.y − s/r·(p.x − v.x)
    p.y as i128 * r >= v.y as i128 * r - s * (p.x as i128 - v.x as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn slope(r: i64, s: i64) -> Slope {
        Slope::reduced(r, s).unwrap()
    }

    fn triangular() -> FactorStream {
        FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::empty(),
            SideRule::Triangular { start: 1 },
        )
        .unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn triangular_partial_sum() {
        let s = triangular();
        let path = s.partial_path(4, 4).unwrap();
        assert_eq!(
            path.vertices(),
            &pts(&[(0, 0), (1, -1), (3, -2), (6, -3), (10, -4)])[..]
        );
        assert_eq!(
            s.partial_sum(4, 4).unwrap().generators(),
            &pts(&[(0, 0), (1, -1), (3, -2), (6, -3), (10, -4)])[..]
        );
    }

    #[test]
    fn empty_partial_sum_is_the_anchor() {
        let s = FactorStream::new(
            LatticePoint::new(3, -1),
            SideRule::Triangular { start: 2 },
            SideRule::Triangular { start: 1 },
        )
        .unwrap();
        assert_eq!(
            s.partial_sum(0, 0).unwrap().generators(),
            &[LatticePoint::new(3, -1)]
        );
    }

    #[test]
    fn finite_partial_sum_matches_expand() {
        let s = FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::empty(),
            SideRule::List(vec![(slope(4, 3), 1), (slope(5, 2), 1)]),
        )
        .unwrap();
        let expected = crate::Factorization::from_factors(
            LatticePoint::ORIGIN,
            [(slope(4, 3), 1), (slope(5, 2), 1)],
        )
        .unwrap()
        .expand_module()
        .unwrap();
        let (normal, shift) = expected.normalize().unwrap();
        assert_eq!(shift, LatticePoint::new(0, 5));
        assert_eq!(s.partial_sum(2, 2).unwrap(), normal);
        // saturates beyond the list
        assert_eq!(s.partial_sum(9, 9).unwrap(), normal);
    }

    #[test]
    fn left_side_extends_up_and_left() {
        let s = FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::Triangular { start: 2 },
            SideRule::empty(),
        )
        .unwrap();
        let path = s.partial_path(2, 0).unwrap();
        assert_eq!(path.vertices(), &pts(&[(-2, 5), (-1, 2), (0, 0)])[..]);
    }

    #[test]
    fn validation() {
        let bad_order = FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::empty(),
            SideRule::List(vec![(slope(2, 1), 1), (slope(1, 1), 1)]),
        );
        assert_eq!(
            bad_order,
            Err(Error::NonAdmissibleModule(Violation::SlopeOrder {
                side: Side::Right,
                index: 1
            }))
        );
        let repeated = FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::List(vec![(slope(1, 2), 1), (slope(1, 2), 1)]),
            SideRule::empty(),
        );
        assert!(repeated.is_err());
        let overlap = FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::Triangular { start: 1 },
            SideRule::Triangular { start: 1 },
        );
        assert_eq!(
            overlap,
            Err(Error::NonAdmissibleModule(Violation::SidesOverlap {
                left: slope(1, 1),
                right: slope(1, 1)
            }))
        );
        let zero = FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::empty(),
            SideRule::Powers {
                slope: slope(2, 3),
                exponent: 0,
            },
        );
        assert!(zero.is_err());
        assert!(FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::empty(),
            SideRule::Triangular { start: 0 }
        )
        .is_err());
    }

    #[test]
    fn limit_membership() {
        let s = triangular();
        assert!(s.contains(LatticePoint::new(0, 0)).unwrap());
        assert!(!s.contains(LatticePoint::new(-1, 100)).unwrap());
        assert!(s.contains(LatticePoint::new(10, -4)).unwrap());
        assert!(!s.contains(LatticePoint::new(9, -4)).unwrap());
        assert!(s.contains(LatticePoint::new(1000, -44)).unwrap());
        // T_44 = 990, T_45 = 1035: the boundary at x = 1000 lies between -44 and -45
        assert!(!s.contains(LatticePoint::new(1000, -45)).unwrap());
    }

    #[test]
    fn multiplicities() {
        let s = FactorStream::new(
            LatticePoint::ORIGIN,
            SideRule::Triangular { start: 2 },
            SideRule::Powers {
                slope: slope(3, 2),
                exponent: 4,
            },
        )
        .unwrap();
        assert_eq!(s.multiplicity(slope(1, 2)), 1);
        assert_eq!(s.multiplicity(slope(1, 1)), 0);
        assert_eq!(s.multiplicity(slope(3, 2)), 4);
        assert!(!s.is_finite());
    }
}
