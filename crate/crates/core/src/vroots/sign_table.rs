use std::cmp::Ordering;

use serde_json::{json, Value};

use super::triangle::{algebraic_to_json, ExtendedBound, VirtualRootTriangle};
use crate::numerics::{algebraic_compare, algebraic_sign, RealAlgebraic};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    Exact,
    /// adjacency not decided; the region is only known to be covered by virtual roots
    CoveredUpToVr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Gap {
        lo: ExtendedBound,
        hi: ExtendedBound,
        sign: i8,
        resolution: Resolution,
    },
    Point {
        at: RealAlgebraic,
        sign: i8,
        resolution: Resolution,
    },
}

impl Region {
    pub fn sign(&self) -> i8 {
        match self {
            Region::Gap { sign, .. } | Region::Point { sign, .. } => *sign,
        }
    }

    pub fn to_json(&self) -> Value {
        let res = |r: &Resolution| match r {
            Resolution::Exact => "exact",
            Resolution::CoveredUpToVr => "covered-up-to-vr",
        };
        match self {
            Region::Gap {
                lo,
                hi,
                sign,
                resolution,
            } => json!({
                "kind": "gap",
                "lo": lo.to_json(),
                "hi": hi.to_json(),
                "sign": sign,
                "resolution": res(resolution),
            }),
            Region::Point { at, sign, resolution } => json!({
                "kind": "point",
                "at": algebraic_to_json(at),
                "sign": sign,
                "resolution": res(resolution),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignTable {
    /// distinct top-row virtual roots, increasing
    pub boundaries: Vec<RealAlgebraic>,
    /// regions from left to right, gaps and points alternating
    pub regions: Vec<Region>,
}

impl SignTable {
    pub fn to_json(&self) -> Value {
        json!({
            "boundaries": self.boundaries.iter().map(algebraic_to_json).collect::<Vec<_>>(),
            "regions": self.regions.iter().map(Region::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Sign of `f` on the real line, read off the top row of the triangle.
///
/// On the open gap between `rho_{d,j}` and `rho_{d,j+1}` the sign is
/// `(-1)^(d-j)`; at the virtual roots themselves it is computed exactly.
pub fn sign_table(t: &VirtualRootTriangle) -> SignTable {
    let d = t.degree();
    let f = t.poly();
    let top = t.top();
    let gap_sign = |j: usize| if (d - j) % 2 == 0 { 1 } else { -1 };

    let mut boundaries: Vec<RealAlgebraic> = Vec::new();
    let mut regions = Vec::new();
    let mut lo = ExtendedBound::NegInf;
    for j in 0..=d {
        let hi = t.rho_ext(d, j + 1);
        let empty = match (&lo, &hi) {
            (ExtendedBound::Finite(a), ExtendedBound::Finite(b)) => algebraic_compare(a, b) == Ordering::Equal,
            _ => false,
        };
        if !empty {
            regions.push(Region::Gap {
                lo: lo.clone(),
                hi: hi.clone(),
                sign: gap_sign(j),
                resolution: Resolution::Exact,
            });
        }
        if j < d {
            let x = &top[j];
            let fresh = boundaries
                .last()
                .map_or(true, |b| algebraic_compare(b, x) != Ordering::Equal);
            if fresh {
                boundaries.push(x.clone());
                regions.push(Region::Point {
                    at: x.clone(),
                    sign: algebraic_sign(f, x),
                    resolution: Resolution::Exact,
                });
            }
        }
        lo = hi;
    }
    SignTable { boundaries, regions }
}
