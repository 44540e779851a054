//! The Calkin–Wilf enumeration `1/1, 1/2, 2/1, 1/3, 3/2, 2/3, 3/1, …` of the
//! positive rationals, each appearing exactly once.

use alloc::vec::Vec;

use crate::geometry::Slope;

/// Iterator over the Calkin–Wilf sequence.
///
/// Uses the successor `q ↦ 1 / (2⌊q⌋ − q + 1)`. Stops if a term no longer
/// fits in `i64`.
#[derive(Clone, Debug)]
pub struct CalkinWilf {
    next: Option<(i64, i64)>,
}

impl CalkinWilf {
    pub fn new() -> Self {
        CalkinWilf { next: Some((1, 1)) }
    }
}

impl Default for CalkinWilf {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CalkinWilf {
    type Item = Slope;

    fn next(&mut self) -> Option<Slope> {
        let (a, b) = self.next?;
        // a/b -> b / (2·⌊a/b⌋·b − a + b)
        self.next = (a / b)
            .checked_mul(2)
            .and_then(|k| k.checked_mul(b))
            .and_then(|kb| kb.checked_sub(a))
            .and_then(|v| v.checked_add(b))
            .map(|den| (b, den));
        Some(Slope::reduced(a, b).expect("Calkin–Wilf terms are reduced"))
    }
}

/// 1-based position of `v` in the Calkin–Wilf sequence, or `None` when the
/// position does not fit in `u64`.
///
/// The position is the breadth-first index in the Calkin–Wilf tree (root
/// `1/1`, children `a/(a+b)` and `(a+b)/b`), read off the path from the root
/// as binary digits. The path is recovered run by run with Euclid's algorithm.
pub fn calkin_wilf_rank(v: Slope) -> Option<u64> {
    let (mut a, mut b) = (v.numerator(), v.denominator());
    // runs of (is_right_child, length), from the leaf upwards
    let mut runs: Vec<(bool, i64)> = Vec::new();
    let mut depth: i64 = 0;
    while (a, b) != (1, 1) {
        if a > b {
            let k = if b == 1 { a - 1 } else { a / b };
            a -= k * b;
            runs.push((true, k));
            depth += k;
        } else {
            let k = if a == 1 { b - 1 } else { b / a };
            b -= k * a;
            runs.push((false, k));
            depth += k;
        }
        if depth > 63 {
            return None;
        }
    }
    let mut index: u64 = 1;
    for &(right, k) in runs.iter().rev() {
        for _ in 0..k {
            index = (index << 1) | right as u64;
        }
    }
    Some(index)
}
