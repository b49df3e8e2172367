//! Closed intervals over the extended reals.
//!
//! An [`Interval`] is either empty or `[lo, hi]` with `lo <= hi`, where both
//! bounds may be infinite. Arithmetic follows the set definition: the result
//! of `J op J'` is the hull of every *defined* `x op y` with `x` in `J` and
//! `y` in `J'`. Undefined points (division by zero, `inf - inf`, `0 * inf`,
//! `inf / inf`) are dropped from the set rather than propagated, so every
//! operator is total on intervals.
//!
//! Bounds are plain `f64` values without directed rounding.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A real number, `-inf`, or `+inf`. Never NaN.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const NEG_INF: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const POS_INF: ExtReal = ExtReal(f64::INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps a float. Returns `None` for NaN.
    pub fn new(v: f64) -> Option<Self> {
        if v.is_nan() {
            None
        } else if v == 0.0 {
            // fold -0.0 into +0.0
            Some(ExtReal(0.0))
        } else {
            Some(ExtReal(v))
        }
    }

    pub fn finite(v: f64) -> Self {
        assert!(v.is_finite(), "ExtReal::finite called with {v}");
        ExtReal::new(v).unwrap()
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("ExtReal is never NaN")
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "+inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl From<ExtReal> for f64 {
    fn from(v: ExtReal) -> f64 {
        v.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub const ALL: [ArithOp; 4] = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div];

    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Sub => "-",
            ArithOp::Mul => "*",
            ArithOp::Div => "/",
        }
    }

    /// Extended-real evaluation of `x op y`. `None` where the operation is
    /// undefined.
    pub fn apply(self, x: ExtReal, y: ExtReal) -> Option<ExtReal> {
        let (a, b) = (x.get(), y.get());
        match self {
            ArithOp::Add if a.is_infinite() && b.is_infinite() && a != b => None,
            ArithOp::Sub if a.is_infinite() && b.is_infinite() && a == b => None,
            ArithOp::Mul if (a == 0.0 && b.is_infinite()) || (a.is_infinite() && b == 0.0) => None,
            ArithOp::Div if b == 0.0 || (a.is_infinite() && b.is_infinite()) => None,
            ArithOp::Add => ExtReal::new(a + b),
            ArithOp::Sub => ExtReal::new(a - b),
            ArithOp::Mul => ExtReal::new(a * b),
            ArithOp::Div => ExtReal::new(a / b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CmpOp {
    Eq,
    Lt,
    Gt,
    Le,
    Ge,
}

impl CmpOp {
    pub const ALL: [CmpOp; 5] = [CmpOp::Eq, CmpOp::Lt, CmpOp::Gt, CmpOp::Le, CmpOp::Ge];

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
        }
    }

    pub fn test<T: PartialOrd>(self, x: T, y: T) -> bool {
        match self {
            CmpOp::Eq => x == y,
            CmpOp::Lt => x < y,
            CmpOp::Gt => x > y,
            CmpOp::Le => x <= y,
            CmpOp::Ge => x >= y,
        }
    }
}

/// A closed interval of extended reals, or the empty interval.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interval {
    Empty,
    Closed { lo: ExtReal, hi: ExtReal },
}

impl Interval {
    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn new(lo: ExtReal, hi: ExtReal) -> Self {
        if lo <= hi {
            Interval::Closed { lo, hi }
        } else {
            Interval::Empty
        }
    }

    pub fn point(v: f64) -> Self {
        let v = ExtReal::new(v).expect("NaN interval bound");
        Interval::Closed { lo: v, hi: v }
    }

    pub fn from_f64(lo: f64, hi: f64) -> Self {
        match (ExtReal::new(lo), ExtReal::new(hi)) {
            (Some(lo), Some(hi)) => Interval::new(lo, hi),
            _ => Interval::Empty,
        }
    }

    pub fn everything() -> Self {
        Interval::Closed { lo: ExtReal::NEG_INF, hi: ExtReal::POS_INF }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn bounds(&self) -> Option<(ExtReal, ExtReal)> {
        match *self {
            Interval::Empty => None,
            Interval::Closed { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn contains(&self, v: ExtReal) -> bool {
        match *self {
            Interval::Empty => false,
            Interval::Closed { lo, hi } => lo <= v && v <= hi,
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Interval) -> bool {
        match (*self, *other) {
            (Interval::Empty, _) => true,
            (_, Interval::Empty) => false,
            (Interval::Closed { lo, hi }, Interval::Closed { lo: l2, hi: h2 }) => l2 <= lo && hi <= h2,
        }
    }

    /// Smallest interval containing both.
    pub fn join(&self, other: &Interval) -> Interval {
        match (*self, *other) {
            (Interval::Empty, x) | (x, Interval::Empty) => x,
            (Interval::Closed { lo, hi }, Interval::Closed { lo: l2, hi: h2 }) => {
                Interval::Closed { lo: lo.min(l2), hi: hi.max(h2) }
            }
        }
    }

    /// Extends the interval to cover `v`.
    pub fn extend(&mut self, v: ExtReal) {
        *self = self.join(&Interval::Closed { lo: v, hi: v });
    }

    fn has_finite_point(&self) -> bool {
        match *self {
            Interval::Empty => false,
            // only the degenerate [-inf,-inf] and [+inf,+inf] lack a real
            Interval::Closed { lo, hi } => !(lo == hi && lo.is_infinite()),
        }
    }

    /// `J op J'` as the hull of all defined pointwise results.
    pub fn arith(&self, op: ArithOp, other: &Interval) -> Interval {
        let (Some((a, b)), Some((c, d))) = (self.bounds(), other.bounds()) else {
            return Interval::Empty;
        };
        match op {
            ArithOp::Add | ArithOp::Sub => hull_of_corners(op, [a, b], [c, d]),
            ArithOp::Mul => {
                let mut out = hull_of_corners(op, [a, b], [c, d]);
                // 0 * y for a real y is attained even when the corner 0 * inf is not
                if (self.contains(ExtReal::ZERO) && other.has_finite_point())
                    || (other.contains(ExtReal::ZERO) && self.has_finite_point())
                {
                    out.extend(ExtReal::ZERO);
                }
                out
            }
            ArithOp::Div => {
                let mut out = Interval::Empty;
                // y ranges over the negative and positive parts separately; 0 is excluded
                if c < ExtReal::ZERO {
                    let hi = d.min(ExtReal::ZERO);
                    out = out.join(&self.div_signed_part(c, hi, hi == ExtReal::ZERO, -1.0));
                }
                if d > ExtReal::ZERO {
                    let lo = c.max(ExtReal::ZERO);
                    out = out.join(&self.div_signed_part(lo, d, lo == ExtReal::ZERO, 1.0));
                }
                out
            }
        }
    }

    /// `self / y` for `y` in `[lo, hi]` of constant `sign`, where the bound
    /// at zero (if `open_at_zero`) is excluded.
    fn div_signed_part(&self, lo: ExtReal, hi: ExtReal, open_at_zero: bool, sign: f64) -> Interval {
        let (a, b) = self.bounds().expect("non-empty dividend");
        let part = Interval::Closed { lo, hi };
        let mut out = Interval::Empty;
        for x in [a, b] {
            for y in [lo, hi] {
                if let Some(v) = ArithOp::Div.apply(x, y) {
                    out.extend(v);
                }
            }
            if open_at_zero {
                // y -> 0 from the side of `sign`
                let v = x.get();
                if v == 0.0 {
                    out.extend(ExtReal::ZERO);
                } else {
                    out.extend(if v * sign > 0.0 { ExtReal::POS_INF } else { ExtReal::NEG_INF });
                }
            }
        }
        let part_infinite_end = lo.is_infinite() || hi.is_infinite();
        let self_infinite_end = a.is_infinite() || b.is_infinite();
        if part_infinite_end && self_infinite_end {
            // the inf/inf corner is undefined; its neighbourhood is not
            if self.has_finite_point() {
                out.extend(ExtReal::ZERO);
            }
            if part.has_finite_point() {
                for x in [a, b].into_iter().filter(|x| x.is_infinite()) {
                    out.extend(if x.get() * sign > 0.0 { ExtReal::POS_INF } else { ExtReal::NEG_INF });
                }
            }
        }
        out
    }

    /// Existential comparison: is there `x` in `self` and `y` in `other`
    /// with `x cmp y`?
    pub fn compare(&self, cmp: CmpOp, other: &Interval) -> bool {
        let (Some((a, b)), Some((c, d))) = (self.bounds(), other.bounds()) else {
            return false;
        };
        match cmp {
            CmpOp::Eq => a <= d && c <= b,
            CmpOp::Lt => a < d,
            CmpOp::Gt => b > c,
            CmpOp::Le => a <= d,
            CmpOp::Ge => b >= c,
        }
    }
}

fn hull_of_corners(op: ArithOp, xs: [ExtReal; 2], ys: [ExtReal; 2]) -> Interval {
    let mut out = Interval::Empty;
    for &x in &xs {
        for &y in &ys {
            if let Some(v) = op.apply(x, y) {
                out.extend(v);
            }
        }
    }
    out
}

/// Smallest interval containing every value; empty for no values.
pub fn hull<I: IntoIterator<Item = ExtReal>>(values: I) -> Interval {
    values.into_iter().fold(Interval::Empty, |mut acc, v| {
        acc.extend(v);
        acc
    })
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => write!(f, "∅"),
            Interval::Closed { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}
