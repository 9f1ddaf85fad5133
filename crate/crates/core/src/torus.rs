//! The circle `T = R/Z` with period one, cut maps, cyclic order and arcs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used to flag degenerate arcs.
pub const EPS_TOR: f64 = 1e-12;

/// A point of the torus stored as its representative in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusPoint(f64);

impl TorusPoint {
    pub const ZERO: TorusPoint = TorusPoint(0.0);

    /// Wraps a finite real into `[0, 1)`.
    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() {
            Ok(TorusPoint(frac(r)))
        } else {
            Err(Error::NonFinite(r))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Counterclockwise offset from `self` to `other`, in `[0, 1)`.
    pub fn offset_to(self, other: TorusPoint) -> f64 {
        frac(other.0 - self.0)
    }

    /// Moves the point by `delta` along the circle.
    pub fn shifted(self, delta: f64) -> TorusPoint {
        TorusPoint(frac(self.0 + delta))
    }

    /// Signed representative of `self - other` in `[-1/2, 1/2)`.
    pub fn signed_diff(self, other: TorusPoint) -> f64 {
        let d = frac(self.0 - other.0);
        if d >= 0.5 {
            d - 1.0
        } else {
            d
        }
    }

    pub fn dist(self, other: TorusPoint) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(1.0 - d)
    }
}

impl From<TorusPoint> for f64 {
    fn from(p: TorusPoint) -> f64 {
        p.0
    }
}

/// `r mod 1` in `[0, 1)`; inputs must be finite.
pub(crate) fn frac(r: f64) -> f64 {
    let x = r - r.floor();
    // r slightly below an integer can round up to exactly 1.0
    if x >= 1.0 {
        0.0
    } else {
        x
    }
}

/// `r mod 1` as a torus point.
pub fn wrap(r: f64) -> Result<TorusPoint> {
    TorusPoint::new(r)
}

/// Inverse of the cut map at `c`: the unique `x` in `[0, 1)` with `wrap(x + c) = y`.
pub fn cut_lift(c: TorusPoint, y: TorusPoint) -> f64 {
    c.offset_to(y)
}

/// The cut map at `c`.
pub fn cut_project(c: TorusPoint, x: f64) -> TorusPoint {
    c.shifted(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyclicOrder {
    /// Weak cyclic order (closed simplex).
    pub ordered: bool,
    /// Strict cyclic order with no degenerate arc (open simplex).
    pub strict: bool,
}

/// Tests weak and strict cyclic order by counting descents of the circular listing.
pub fn cyclic_order(nodes: &[TorusPoint]) -> CyclicOrder {
    let n = nodes.len();
    if n <= 1 {
        return CyclicOrder {
            ordered: true,
            strict: true,
        };
    }
    let descents = (0..n)
        .filter(|&j| nodes[(j + 1) % n].0 < nodes[j].0)
        .count();
    let ordered = descents <= 1;
    let strict = ordered
        && descents == 1
        && (0..n).all(|j| {
            let len = nodes[j].offset_to(nodes[(j + 1) % n]);
            len > EPS_TOR && len < 1.0 - EPS_TOR
        });
    CyclicOrder { ordered, strict }
}

/// A closed arc traversed counterclockwise from `start`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub start: TorusPoint,
    pub len: f64,
}

impl Arc {
    pub fn end(&self) -> TorusPoint {
        self.start.shifted(self.len)
    }

    pub fn len(&self) -> f64 {
        self.len
    }

    pub fn is_degenerate(&self) -> bool {
        self.len <= EPS_TOR
    }

    pub fn is_full(&self) -> bool {
        self.len >= 1.0
    }

    pub fn contains(&self, t: TorusPoint) -> bool {
        self.is_full() || self.start.offset_to(t) <= self.len
    }

    /// Offset of `t` from the arc start, `None` if `t` is not on the arc.
    pub fn offset_of(&self, t: TorusPoint) -> Option<f64> {
        let d = self.start.offset_to(t);
        (self.is_full() || d <= self.len).then_some(d)
    }

    /// Whether `inner` lies inside `self`, allowing `slack` at both ends.
    pub fn contains_arc(&self, inner: &Arc, slack: f64) -> bool {
        if self.is_full() {
            return true;
        }
        if inner.len > self.len + slack {
            return false;
        }
        let mut d = self.start.offset_to(inner.start);
        if d > 1.0 - slack {
            d -= 1.0;
        }
        d >= -slack && d + inner.len <= self.len + slack
    }

    /// Point at fraction `s` in `[0, 1]` along the arc.
    pub fn point_at(&self, s: f64) -> TorusPoint {
        self.start.shifted(s * self.len)
    }
}

/// The arcs `[y_j, y_{j+1}]` (indices mod n) of a cyclically ordered node list.
///
/// When every node coincides the last arc is the full circle.
pub fn arcs_of(nodes: &[TorusPoint]) -> Result<Vec<Arc>> {
    let n = nodes.len();
    if n == 0 || !cyclic_order(nodes).ordered {
        return Err(Error::Unordered);
    }
    let all_equal = nodes.iter().all(|y| y.0 == nodes[0].0);
    Ok((0..n)
        .map(|j| {
            let start = nodes[j];
            let len = if all_equal {
                if j + 1 == n {
                    1.0
                } else {
                    0.0
                }
            } else {
                start.offset_to(nodes[(j + 1) % n])
            };
            Arc { start, len }
        })
        .collect())
}
