//! Scalar abstraction for capacities and lengths, plus the `Dist` type that
//! adds a true infinity sentinel on top of any scalar.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_traits::Num;

/// Numeric type usable as a capacity / edge length.
///
/// Implemented for every signed `Num` with a partial order, so `i64`, `f64`
/// and `num_rational::Ratio<i64>` all qualify. Exact types keep every cut
/// comparison exact; floats are accepted but compared with `partial_cmp`.
pub trait Scalar:
    Num + Neg<Output = Self> + Copy + PartialOrd + Debug + Display + FromStr + Send + Sync + 'static
{
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + Copy + PartialOrd + Debug + Display + FromStr + Send + Sync + 'static
{
}

/// A distance: either finite or `+∞`.
///
/// Addition saturates at `Inf`; `Inf` is never represented by a large finite
/// value, so an infinite edge can never sneak into a finite shortest path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Dist<W> {
    Finite(W),
    Inf,
}

impl<W: Scalar> Dist<W> {
    pub fn zero() -> Self {
        Dist::Finite(W::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    pub fn finite(self) -> Option<W> {
        match self {
            Dist::Finite(w) => Some(w),
            Dist::Inf => None,
        }
    }

    pub fn add(self, w: W) -> Self {
        match self {
            Dist::Finite(a) => Dist::Finite(a + w),
            Dist::Inf => Dist::Inf,
        }
    }

    pub fn add_dist(self, other: Self) -> Self {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Inf,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl<W: Scalar> PartialOrd for Dist<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => a.total_cmp(b),
            (Dist::Finite(_), Dist::Inf) => Ordering::Less,
            (Dist::Inf, Dist::Finite(_)) => Ordering::Greater,
            (Dist::Inf, Dist::Inf) => Ordering::Equal,
        })
    }
}

impl<W: Scalar> Display for Dist<W> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dist::Finite(w) => write!(f, "{w}"),
            Dist::Inf => write!(f, "inf"),
        }
    }
}

impl<W: Scalar> From<W> for Dist<W> {
    fn from(w: W) -> Self {
        Dist::Finite(w)
    }
}

/// Heap key ordered by `Scalar::total_cmp`, reversed so `BinaryHeap` pops the
/// smallest key first.
#[derive(Clone, Copy, Debug)]
pub(crate) struct MinKey<W, T>(pub W, pub T);

impl<W: Scalar, T: Ord> PartialEq for MinKey<W, T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Scalar, T: Ord> Eq for MinKey<W, T> {}

impl<W: Scalar, T: Ord> PartialOrd for MinKey<W, T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Scalar, T: Ord> Ord for MinKey<W, T> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}
