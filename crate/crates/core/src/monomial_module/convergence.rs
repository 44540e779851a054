//! Lattice-point-wise convergence of approximants, observed on finite
//! rectangles.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{BoundaryPath, LatticePoint};

use super::{FactorStream, MonomialModule};

/// Closed integer rectangle `[x_min..x_max] × [y_min..y_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Rect {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Result<Rect> {
        if x_min > x_max || y_min > y_max {
            return Err(Error::InvalidArgument("rectangle bounds are reversed"));
        }
        Ok(Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    pub fn width(&self) -> u64 {
        (self.x_max as i128 - self.x_min as i128 + 1) as u64
    }

    pub fn height(&self) -> u64 {
        (self.y_max as i128 - self.y_min as i128 + 1) as u64
    }

    pub fn cells(&self) -> Option<u64> {
        self.width().checked_mul(self.height())
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        (self.x_min..=self.x_max).contains(&p.x) && (self.y_min..=self.y_max).contains(&p.y)
    }

    /// Points row by row, bottom row first.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (self.y_min..=self.y_max)
            .flat_map(move |y| (self.x_min..=self.x_max).map(move |x| LatticePoint::new(x, y)))
    }
}

/// Membership bits of a module over a rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    rect: Rect,
    bits: Vec<bool>,
}

impl Window {
    pub fn try_from_fn(
        rect: Rect,
        mut member: impl FnMut(LatticePoint) -> Result<bool>,
    ) -> Result<Window> {
        let cells = rect
            .cells()
            .and_then(|c| usize::try_from(c).ok())
            .ok_or(Error::InvalidArgument("window too large"))?;
        let mut bits = Vec::with_capacity(cells);
        for p in rect.points() {
            bits.push(member(p)?);
        }
        Ok(Window { rect, bits })
    }

    pub fn of_path(path: &BoundaryPath, rect: Rect) -> Result<Window> {
        Window::try_from_fn(rect, |p| Ok(path.contains(p)))
    }

    pub fn of_module(module: &MonomialModule, rect: Rect) -> Result<Window> {
        Window::try_from_fn(rect, |p| Ok(module.contains(p)))
    }

    /// Window of the limit module of a stream.
    pub fn of_stream(stream: &FactorStream, rect: Rect) -> Result<Window> {
        Window::try_from_fn(rect, |p| stream.contains(p))
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn get(&self, p: LatticePoint) -> Option<bool> {
        if !self.rect.contains(p) {
            return None;
        }
        let row = (p.y - self.rect.y_min) as u64;
        let col = (p.x - self.rect.x_min) as u64;
        Some(self.bits[(row * self.rect.width() + col) as usize])
    }

    pub fn count_members(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Membership is closed under moving up or right inside the rectangle.
    pub fn is_monotone(&self) -> bool {
        self.rect.points().all(|p| {
            if !self.get(p).unwrap_or(false) {
                return true;
            }
            let up = LatticePoint::new(p.x, p.y + 1);
            let right = LatticePoint::new(p.x + 1, p.y);
            self.get(up).unwrap_or(true) && self.get(right).unwrap_or(true)
        })
    }
}

/// Outcome of [`check_convergence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub rect: Rect,
    pub n_start: u64,
    pub n_end: u64,
    /// Least `n` from which every window up to `n_end` is identical, when that
    /// is confirmed by at least one later window.
    pub stabilized_at: Option<u64>,
    /// Window of the approximant at `n_end`.
    pub window: Window,
}

/// Compares the windows of `partial_sum(n, n)` for `n` in `n_start..=n_end`,
/// with the anchor held fixed as the translation.
pub fn check_convergence(
    stream: &FactorStream,
    rect: Rect,
    n_start: u64,
    n_end: u64,
) -> Result<StabilizationReport> {
    if n_start == 0 || n_start > n_end {
        return Err(Error::InvalidArgument("need 1 <= n_start <= n_end"));
    }
    let window_at = |n: u64| -> Result<Window> {
        let n = usize::try_from(n).map_err(|_| Error::OverflowDetected)?;
        Window::of_path(&stream.partial_path(n, n)?, rect)
    };
    let last = window_at(n_end)?;
    let mut n0 = n_end;
    while n0 > n_start && window_at(n0 - 1)? == last {
        n0 -= 1;
    }
    Ok(StabilizationReport {
        rect,
        n_start,
        n_end,
        stabilized_at: (n0 < n_end).then_some(n0),
        window: last,
    })
}
