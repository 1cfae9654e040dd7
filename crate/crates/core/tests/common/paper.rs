// Printed decompositions of the worked examples, rebuilt term by term in the
// oracle ring. Each function returns the positive and negative side.

use super::{q, Oracle};
use dcsos::Rational;
use num_traits::One;

fn sq(p: &Oracle) -> Oracle {
    p.mul(p)
}

fn x(n: usize, i: usize) -> Oracle {
    Oracle::var(n, i)
}

pub type Sides = (Vec<Oracle>, Vec<Oracle>);

/// `−2x1³x2⁵` with `o = x1³x2`, `e = x2²` and parameter `s`.
pub fn explicit_split(s: &Rational) -> Sides {
    let inv = Rational::one() / s;
    let a = x(2, 0).pow(3).mul(&x(2, 1).pow(3));
    let b = x(2, 1).pow(2);
    (
        vec![sq(&a).scale(&inv), sq(&b).scale(s)],
        vec![sq(&a.add(&b.scale(s))).scale(&inv)],
    )
}

/// `−2x1³x2⁵` through Procedure D.
pub fn improved_parity() -> Sides {
    let (x1, x2) = (x(2, 0), x(2, 1));
    let lead = x1.mul(&x2.pow(2)).scale(&q(1, 2));
    (
        vec![sq(&lead.mul(&x1.sub(&x2))).scale(&q(2, 1))],
        vec![sq(&lead.mul(&x1.add(&x2))).scale(&q(2, 1))],
    )
}

/// `3x1x2²` through the basic parity DCSOS.
pub fn parity_dcsos_3x1x2() -> Sides {
    let n = 2;
    let one = Oracle::constant(n, q(1, 1));
    let (x1, x2) = (x(n, 0), x(n, 1));
    let plus = sq(&x1.add(&one)).scale(&q(1, 4));
    let minus = sq(&x1.sub(&one)).scale(&q(1, 4));
    let w = q(3, 2);
    (
        vec![sq(&plus.add(&x2.pow(2))).scale(&w), sq(&minus).scale(&w)],
        vec![sq(&plus).scale(&w), sq(&x2.pow(2).add(&minus)).scale(&w)],
    )
}

/// `(g₁, h₁)` for `x1·x2` in three variables.
fn xy_parts() -> (Oracle, Oracle) {
    let (x1, x2) = (x(3, 0), x(3, 1));
    (sq(&x1.add(&x2)).scale(&q(1, 4)), sq(&x1.sub(&x2)).scale(&q(1, 4)))
}

/// `−2x1³x2x3²` through the improved parity DCSOS.
pub fn improved_parity_dcsos() -> Sides {
    let (g1, h1) = xy_parts();
    let x1s = x(3, 0).pow(2);
    let x3s = x(3, 2).pow(2);
    let half = q(1, 2);
    let p1 = sq(&g1.add(&x1s)).add(&sq(&h1)).scale(&half);
    let p2 = sq(&g1).add(&sq(&h1.add(&x1s))).scale(&half);
    (
        vec![sq(&x3s.add(&p2)), sq(&p1)],
        vec![sq(&x3s.add(&p1)), sq(&p2)],
    )
}

/// `−2x1³x2x3²` through the minimal-degree DCSOS: seven cubes per side.
pub fn minimal_dcsos() -> Sides {
    let (g1, h1) = xy_parts();
    let (x1, x2) = (x(3, 0), x(3, 1));
    let x1s = x1.pow(2);
    let x3s = x(3, 2).pow(2);
    let third = q(1, 3);
    (
        vec![
            x1.sub(&x2).pow(6).scale(&q(1, 192)),
            x1s.add(&x3s).pow(3).scale(&third),
            g1.add(&x1s).pow(3).scale(&third),
            g1.add(&x3s).pow(3).scale(&third),
            x1s.pow(3).scale(&third),
            x3s.pow(3).scale(&third),
            h1.add(&x1s).add(&x3s).pow(3).scale(&third),
        ],
        vec![
            h1.add(&x1s).pow(3).scale(&third),
            h1.add(&x3s).pow(3).scale(&third),
            x1s.add(&x3s).pow(3).scale(&third),
            g1.add(&x1s).add(&x3s).pow(3).scale(&third),
            x1.add(&x2).pow(6).scale(&q(1, 192)),
            x1s.pow(3).scale(&third),
            x3s.pow(3).scale(&third),
        ],
    )
}
