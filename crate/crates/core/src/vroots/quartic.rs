//! The closed system of weak inequalities that pins down `rho_{1,1}`,
//! `rho_{2,1}`, `rho_{2,2}`, `rho_{3,2}`, `rho_{3,3}` and `rho_{4,3}` for a
//! monic quartic, each sign fixed in advance by the monotonicity pattern.

use std::cmp::Ordering;

use super::triangle::VirtualRootTriangle;
use crate::error::{domain, Result};
use crate::numerics::{algebraic_compare, algebraic_sign, RealAlgebraic, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub name: &'static str,
    pub holds: bool,
}

fn ord_sign(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// sign of `(x - y) * g(z)`
fn product_sign(x: &RealAlgebraic, y: &RealAlgebraic, g: &UniPoly, z: &RealAlgebraic) -> i8 {
    ord_sign(algebraic_compare(x, y)) * algebraic_sign(g, z)
}

fn le(x: &RealAlgebraic, y: &RealAlgebraic) -> bool {
    algebraic_compare(x, y) != Ordering::Greater
}

/// Evaluates every inequality of the system on the computed triangle.
pub fn quartic_system(t: &VirtualRootTriangle) -> Result<Vec<Inequality>> {
    if t.degree() != 4 {
        return Err(domain("the quartic system needs a degree 4 triangle"));
    }
    let f = t.poly().clone();
    let f1 = t.derivative(1);
    let f2 = t.derivative(2);
    let f3 = t.derivative(3);
    let r = |d, j| t.rho(d, j);
    let (r11, r21, r22, r32, r33, r43) = (r(1, 1), r(2, 1), r(2, 2), r(3, 2), r(3, 3), r(4, 3));

    let ineq = |name, holds| Inequality { name, holds };
    Ok(vec![
        ineq("vr_1_1", algebraic_sign(&f3, r11) == 0),
        ineq("vr_2_1_0", le(r21, r11)),
        ineq("vr_2_1_1", product_sign(r21, r11, &f2, r11) >= 0),
        ineq("vr_2_1_2", product_sign(r21, r11, &f2, r21) >= 0),
        ineq("vr_2_1_3", algebraic_sign(&f2, r21) >= 0),
        ineq("vr_2_2_0", le(r11, r22)),
        ineq("vr_2_2_1", product_sign(r22, r11, &f2, r11) <= 0),
        ineq("vr_2_2_2", product_sign(r22, r11, &f2, r22) <= 0),
        ineq("vr_2_2_3", algebraic_sign(&f2, r22) >= 0),
        ineq("vr_3_3_0", le(r22, r33)),
        ineq("vr_3_3_1", product_sign(r33, r22, &f1, r22) <= 0),
        ineq("vr_3_3_2", product_sign(r33, r22, &f1, r33) <= 0),
        ineq("vr_3_3_3", algebraic_sign(&f1, r33) >= 0),
        ineq("vr_3_2_0", le(r21, r32) && le(r32, r22)),
        ineq("vr_3_2_1", product_sign(r32, r21, &f1, r21) >= 0),
        ineq("vr_3_2_2", product_sign(r32, r22, &f1, r22) >= 0),
        ineq("vr_3_2_3", product_sign(r32, r21, &f1, r32) >= 0),
        ineq("vr_3_2_4", product_sign(r32, r22, &f1, r32) >= 0),
        ineq("vr_4_3_0", le(r32, r43) && le(r43, r33)),
        ineq("vr_4_3_1", product_sign(r43, r32, &f, r32) >= 0),
        ineq("vr_4_3_2", product_sign(r43, r33, &f, r33) >= 0),
        ineq("vr_4_3_3", product_sign(r43, r32, &f, r43) >= 0),
        ineq("vr_4_3_4", product_sign(r43, r33, &f, r43) >= 0),
    ])
}
