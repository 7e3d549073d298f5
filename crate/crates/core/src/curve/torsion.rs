//! Rational torsion subgroups.
//!
//! Strategy: pass to an integral short model Y² = X³ + AX + B, where every
//! torsion point has integer coordinates with Y = 0 or Y² dividing
//! −16(4A³ + 27B²).  Candidates are enumerated from a factorization of that
//! bound, confirmed by computing orders (which cannot exceed 12 over Q), and
//! transported back to the caller's model.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CurveError, IsomorphismData, RationalPoint, WeierstrassModel};
use crate::arith::{factorize, rat_int, FactorEffort, Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionSubgroup {
    pub order: u32,
    /// `[]` trivial, `[n]` cyclic of order n, `[2, 2m]` when the full
    /// 2-torsion is rational.
    pub invariants: Vec<u32>,
    /// Every torsion point on the input model: origin first, then affine
    /// points sorted by coordinates.
    pub points: Vec<RationalPoint>,
}

impl TorsionSubgroup {
    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.points.contains(p)
    }
}

fn eval(a: &Int, b: &Int, x: &Int) -> Int {
    x * x * x + a * x + b
}

/// Sign-change bisection over a segment on which x³ + ax + b is monotone.
fn bisect_monotone(a: &Int, b: &Int, lo: Int, hi: Int, increasing: bool, out: &mut Vec<Int>) {
    if lo > hi {
        return;
    }
    let orient = if increasing { 1 } else { -1 };
    let sgn = |x: &Int| -> i32 {
        let v = eval(a, b, x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            orient
        } else {
            -orient
        }
    };
    if sgn(&lo) > 0 || sgn(&hi) < 0 {
        return;
    }
    let (mut lo, mut hi) = (lo, hi);
    let two = Int::from(2);
    while lo < hi {
        let mid = (&lo + &hi).div_floor(&two);
        if sgn(&mid) < 0 {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if eval(a, b, &lo).is_zero() {
        out.push(lo);
    }
}

/// All integer roots of x³ + a·x + b.
pub fn integer_roots_depressed_cubic(a: &Int, b: &Int) -> Vec<Int> {
    // Cauchy bound for a monic cubic
    let bound = Int::one() + std::cmp::max(a.abs(), b.abs());
    let mut out = Vec::new();
    if a.is_negative() {
        // critical points at ±√(−a/3): decreasing between, increasing outside
        let m = (-a).div_floor(&Int::from(3)).sqrt();
        let g: Int = &m + 2;
        bisect_monotone(a, b, -bound.clone(), -g.clone(), true, &mut out);
        bisect_monotone(a, b, -m.clone(), m.clone(), false, &mut out);
        bisect_monotone(a, b, g.clone(), bound, true, &mut out);
        let m1: Int = &m + 1;
        for x in [m1.clone(), g.clone(), -m1, -g] {
            if eval(a, b, &x).is_zero() {
                out.push(x);
            }
        }
    } else {
        bisect_monotone(a, b, -bound.clone(), bound, true, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

fn divisors_from(factors: &[(Int, u32)]) -> Vec<Int> {
    let mut divs = vec![Int::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pe = Int::one();
            for _ in 0..=*e {
                next.push(d * &pe);
                pe *= p;
            }
        }
        divs = next;
    }
    divs
}

/// Map to Y² = X³ − 27c4·X − 54c6 (integral input model assumed).
fn to_short_model(e: &Arc<WeierstrassModel>) -> (Arc<WeierstrassModel>, IsomorphismData) {
    let half = |x: &Rat| x / rat_int(2);
    let complete_square =
        IsomorphismData::translation(Rat::zero(), -half(&e.a1), -half(&e.a3));
    let depress = IsomorphismData::translation(-(e.b2() / rat_int(12)), Rat::zero(), Rat::zero());
    let scale = IsomorphismData::scaling(Rat::new(Int::one(), Int::from(6)));
    let phi = complete_square.then(&depress).then(&scale);
    let short = phi.apply(e);
    debug_assert!(short.a1.is_zero() && short.a2.is_zero() && short.a3.is_zero());
    debug_assert_eq!(short.a4, rat_int(-27) * e.c4());
    debug_assert_eq!(short.a6, rat_int(-54) * e.c6());
    (short, phi)
}

fn order_at_most_12(p: &RationalPoint) -> Option<u32> {
    let mut acc = p.clone();
    for k in 1..=12u32 {
        if acc.is_infinity() {
            return Some(k);
        }
        acc = acc.add(p);
    }
    None
}

pub fn torsion_subgroup(model: &Arc<WeierstrassModel>) -> Result<TorsionSubgroup, CurveError> {
    let (integral, to_integral) = model.integral_model();
    let (short, to_short) = to_short_model(&integral);
    let full = to_integral.then(&to_short);
    let back = full.inverse();
    debug_assert_eq!(*back.apply(&short), **model);

    let a = short.a4.numer().clone();
    let b = short.a6.numer().clone();

    // Lutz bound: Y = 0 or Y² | −16(4A³ + 27B²)
    let disc16 = Int::from(-16) * (Int::from(4) * &a * &a * &a + Int::from(27) * &b * &b);
    let f = factorize(&disc16, &FactorEffort::default()).map_err(|_| CurveError::Singular)?;
    if !f.complete {
        return Err(CurveError::LutzFactorizationIncomplete);
    }
    let sqrt_part: Vec<(Int, u32)> = f
        .factors
        .iter()
        .filter(|(_, e)| *e >= 2)
        .map(|(p, e)| (p.clone(), e / 2))
        .collect();

    let mut short_candidates: Vec<(Int, Int)> = Vec::new();
    for x in integer_roots_depressed_cubic(&a, &b) {
        short_candidates.push((x, Int::zero()));
    }
    for y in divisors_from(&sqrt_part) {
        let shift = &b - &y * &y;
        for x in integer_roots_depressed_cubic(&a, &shift) {
            short_candidates.push((x.clone(), y.clone()));
            short_candidates.push((x, -&y));
        }
    }
    short_candidates.sort();
    short_candidates.dedup();

    let mut points = vec![RationalPoint::infinity(model)];
    let mut two_torsion = 0u32;
    for (x, y) in short_candidates {
        let p = RationalPoint::new(&short, Rat::from_integer(x), Rat::from_integer(y))
            .expect("candidate satisfies the short equation by construction");
        match order_at_most_12(&p) {
            None => continue,
            Some(ord) => {
                if ord == 2 {
                    two_torsion += 1;
                }
                points.push(back.transport(&p, model));
            }
        }
    }
    points.sort_by(|p, q| p.coords.cmp(&q.coords));

    let order = points.len() as u32;
    let invariants = if order == 1 {
        vec![]
    } else if two_torsion == 3 {
        vec![2, order / 2]
    } else {
        vec![order]
    };
    Ok(TorsionSubgroup {
        order,
        invariants,
        points,
    })
}
