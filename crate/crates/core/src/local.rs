//! Minimal models and local reduction data: Kodaira type, Tamagawa number,
//! split / non-split multiplicative vs additive kind, and the potentially
//! good / potentially multiplicative dichotomy, for every prime including
//! 2 and 3.
//!
//! The classification follows the standard case chain on an integral model:
//! translate the singular point to the origin, branch on v(c4), then walk
//! the additive cases II → III → IV → (I0*, Im*, IV*, III*, II*) with the
//! prescribed coordinate shifts; reaching the final divisibility ladder means
//! the model was non-minimal, so scale by ℓ and restart.  All arithmetic is
//! on exact integers; root-finding mod ℓ uses closed forms plus a residue
//! search only for ℓ ≤ 3, so arbitrarily large primes are fine.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, is_prime, vp, vp_int, FactorEffort, Int, Rat, Valuation};
use crate::curve::{IsomorphismData, WeierstrassModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalError {
    #[error("discriminant factorization incomplete; unfactored cofactor {0}")]
    IncompleteFactorization(Int),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl std::fmt::Display for KodairaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KodairaType::I0 => write!(f, "I0"),
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::I0Star => write!(f, "I0*"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl std::fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReductionKind::Good => "good",
            ReductionKind::SplitMultiplicative => "split multiplicative",
            ReductionKind::NonsplitMultiplicative => "non-split multiplicative",
            ReductionKind::Additive => "additive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialReduction {
    Good,
    Multiplicative,
}

/// Everything Tate's algorithm knows about E at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionData {
    pub ell: Int,
    pub kodaira: KodairaType,
    pub tamagawa: u32,
    pub kind: ReductionKind,
    pub potential: PotentialReduction,
    pub v_disc_min: i64,
    pub v_c4: Valuation,
    pub v_j: Valuation,
}

impl ReductionData {
    /// Internal-consistency relations; panics on violation (used by tests on
    /// every produced value).
    pub fn assert_invariants(&self) {
        let good = self.kind == ReductionKind::Good;
        assert_eq!(good, self.v_disc_min == 0);
        assert_eq!(good, self.kodaira == KodairaType::I0);
        let mult = matches!(
            self.kind,
            ReductionKind::SplitMultiplicative | ReductionKind::NonsplitMultiplicative
        );
        assert_eq!(
            mult,
            self.v_c4 == Valuation::Finite(0) && self.v_disc_min > 0
        );
        if let KodairaType::I(n) = self.kodaira {
            assert!(mult && n as i64 == self.v_disc_min);
            assert_eq!(self.v_j, Valuation::Finite(-(n as i64)));
            match self.kind {
                ReductionKind::SplitMultiplicative => assert_eq!(self.tamagawa, n),
                ReductionKind::NonsplitMultiplicative => {
                    assert!(self.tamagawa == 1 || (self.tamagawa == 2 && n % 2 == 0));
                }
                _ => unreachable!(),
            }
            assert!(n % self.tamagawa == 0 || self.tamagawa <= 2);
        }
        assert_eq!(
            self.potential == PotentialReduction::Multiplicative,
            self.v_j < Valuation::Finite(0)
        );
        assert!(self.tamagawa >= 1);
    }
}

// ---- integer-coefficient model helpers ----

fn coeffs_of(model: &WeierstrassModel) -> [Int; 5] {
    debug_assert!(model.is_integral());
    [
        model.a1.numer().clone(),
        model.a2.numer().clone(),
        model.a3.numer().clone(),
        model.a4.numer().clone(),
        model.a6.numer().clone(),
    ]
}

fn model_of(a: &[Int; 5]) -> Arc<WeierstrassModel> {
    WeierstrassModel::new([
        Rat::from_integer(a[0].clone()),
        Rat::from_integer(a[1].clone()),
        Rat::from_integer(a[2].clone()),
        Rat::from_integer(a[3].clone()),
        Rat::from_integer(a[4].clone()),
    ])
    .expect("translations and ℓ-scalings preserve nonsingularity")
}

fn b_invariants(a: &[Int; 5]) -> (Int, Int, Int, Int) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    (b2, b4, b6, b8)
}

fn disc_of(a: &[Int; 5]) -> Int {
    let (b2, b4, b6, b8) = b_invariants(a);
    -(&b2 * &b2 * &b8) - 8 * (&b4 * &b4 * &b4) - 27 * (&b6 * &b6) + 9 * &b2 * &b4 * &b6
}

fn c4_of(a: &[Int; 5]) -> Int {
    let (b2, b4, _, _) = b_invariants(a);
    &b2 * &b2 - 24 * b4
}

fn translate(a: &[Int; 5], r: &Int, s: &Int, t: &Int) -> [Int; 5] {
    let [a1, a2, a3, a4, a6] = a;
    [
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    ]
}

fn exact_div(n: &Int, d: &Int) -> Int {
    let (q, r) = n.div_rem(d);
    debug_assert!(r.is_zero(), "division {n}/{d} not exact");
    q
}

fn scale_down(a: &[Int; 5], ell: &Int) -> [Int; 5] {
    [
        exact_div(&a[0], ell),
        exact_div(&a[1], &ell.pow(2)),
        exact_div(&a[2], &ell.pow(3)),
        exact_div(&a[3], &ell.pow(4)),
        exact_div(&a[4], &ell.pow(6)),
    ]
}

fn vl(n: &Int, ell: &Int) -> i64 {
    match vp_int(n, ell) {
        Valuation::Finite(v) => v,
        Valuation::PlusInfinity => i64::MAX, // 0 divides everything
    }
}

fn md(n: &Int, ell: &Int) -> Int {
    n.mod_floor(ell)
}

fn minv(a: &Int, ell: &Int) -> Int {
    let e = a.extended_gcd(ell);
    debug_assert!(e.gcd.is_one());
    md(&e.x, ell)
}

/// Legendre symbol for odd primes.
fn chi_mod(a: &Int, ell: &Int) -> i32 {
    let r = md(a, ell);
    if r.is_zero() {
        return 0;
    }
    let e = (ell - 1u32) / 2;
    let s = r.modpow(&e, ell);
    if s.is_one() {
        1
    } else {
        -1
    }
}

// ---- root structure of small polynomials mod ℓ ----

enum QuadRoots {
    /// Two distinct roots over the algebraic closure.
    Distinct { rational: bool },
    /// A double (necessarily rational) root.
    Double(Int),
}

/// Root structure of T² + A·T − B mod ℓ.
fn quad_roots(a: &Int, b: &Int, ell: &Int) -> QuadRoots {
    let two = Int::from(2);
    if *ell == two {
        return if md(a, ell).is_one() {
            QuadRoots::Distinct {
                rational: md(b, ell).is_zero(),
            }
        } else {
            QuadRoots::Double(md(b, ell)) // (T + √B)², √ = identity on F_2
        };
    }
    let disc = a * a + 4 * b;
    if md(&disc, ell).is_zero() {
        let half = minv(&two, ell);
        QuadRoots::Double(md(&(-a * half), ell))
    } else {
        QuadRoots::Distinct {
            rational: chi_mod(&disc, ell) == 1,
        }
    }
}

enum CubicRoots {
    Distinct { rational_count: u32 },
    DoubleSimple { double: Int },
    Triple(Int),
}

fn cubic_eval(p: &Int, q: &Int, r: &Int, x: &Int, ell: &Int) -> Int {
    md(&(((x + p) * x + q) * x + r), ell)
}

/// x^ℓ mod (T³ + pT² + qT + r) mod ℓ, as coefficients [c0, c1, c2].
fn frobenius_poly(p: &Int, q: &Int, r: &Int, ell: &Int) -> [Int; 3] {
    let redc = |v: &mut [Int; 5]| {
        // T³ ≡ −(pT² + qT + r), applied from the top
        for i in (3..5).rev() {
            let c = std::mem::replace(&mut v[i], Int::zero());
            if c.is_zero() {
                continue;
            }
            v[i - 1] = md(&(&v[i - 1] - &c * p), ell);
            v[i - 2] = md(&(&v[i - 2] - &c * q), ell);
            v[i - 3] = md(&(&v[i - 3] - &c * r), ell);
        }
    };
    let mul = |x: &[Int; 3], y: &[Int; 3]| -> [Int; 3] {
        let mut v = [
            Int::zero(),
            Int::zero(),
            Int::zero(),
            Int::zero(),
            Int::zero(),
        ];
        for i in 0..3 {
            for j in 0..3 {
                v[i + j] = md(&(&v[i + j] + &x[i] * &y[j]), ell);
            }
        }
        redc(&mut v);
        [v[0].clone(), v[1].clone(), v[2].clone()]
    };
    let mut result = [Int::one(), Int::zero(), Int::zero()];
    let mut base = [Int::zero(), Int::one(), Int::zero()]; // T
    let mut e = ell.clone();
    let two = Int::from(2);
    while e.is_positive() {
        if md(&e, &two).is_one() {
            result = mul(&result, &base);
        }
        base = mul(&base, &base);
        e /= &two;
    }
    result
}

/// Root structure of T³ + p·T² + q·T + r mod ℓ.
fn cubic_roots(p: &Int, q: &Int, r: &Int, ell: &Int) -> CubicRoots {
    let disc = 18 * p * q * r - 4 * p.pow(3) * r + p * p * q * q - 4 * q.pow(3) - 27 * r * r;
    let small = *ell <= Int::from(3);
    if md(&disc, ell).is_zero() {
        // a repeated root of a cubic over F_ℓ is always F_ℓ-rational
        if small {
            let three = Int::from(3);
            if *ell == three {
                // (T − α)³ = T³ − α³ in characteristic 3
                if md(p, ell).is_zero() && md(q, ell).is_zero() {
                    return CubicRoots::Triple(md(&-r, ell));
                }
            }
            let mut x = Int::zero();
            while &x < ell {
                if cubic_eval(p, q, r, &x, ell).is_zero() {
                    let deriv = md(&(3 * &x * &x + 2 * p * &x + q), ell);
                    if deriv.is_zero() {
                        // triple iff the coefficients match (T − α)³
                        let t3 = md(&(p + 3 * &x), ell).is_zero()
                            && md(&(q - 3 * &x * &x), ell).is_zero();
                        return if t3 {
                            CubicRoots::Triple(x)
                        } else {
                            CubicRoots::DoubleSimple { double: x }
                        };
                    }
                }
                x += 1;
            }
            unreachable!("zero discriminant forces a rational repeated root");
        }
        // ℓ ≥ 5: triple ⟺ p² ≡ 3q
        if md(&(p * p - 3 * q), ell).is_zero() {
            let third = minv(&Int::from(3), ell);
            return CubicRoots::Triple(md(&(-p * third), ell));
        }
        let num = 9 * r - p * q;
        let den = 2 * (p * p - 3 * q);
        return CubicRoots::DoubleSimple {
            double: md(&(num * minv(&den, ell)), ell),
        };
    }
    // distinct roots: count the rational ones
    if small {
        let mut count = 0;
        let mut x = Int::zero();
        while &x < ell {
            if cubic_eval(p, q, r, &x, ell).is_zero() {
                count += 1;
            }
            x += 1;
        }
        return CubicRoots::Distinct {
            rational_count: count,
        };
    }
    if chi_mod(&disc, ell) == -1 {
        // Galois group not in A₃: exactly one rational root
        return CubicRoots::Distinct { rational_count: 1 };
    }
    // square discriminant: all three roots rational or none — decided by
    // whether T^ℓ ≡ T mod P
    let frob = frobenius_poly(p, q, r, ell);
    let is_t = frob[0].is_zero() && frob[1].is_one() && frob[2].is_zero();
    CubicRoots::Distinct {
        rational_count: if is_t { 3 } else { 0 },
    }
}

/// The unique singular point of the reduced curve mod ℓ (v(Δ) > 0 assumed).
fn singular_point(a: &[Int; 5], ell: &Int) -> (Int, Int) {
    let [a1, a2, a3, a4, a6] = a;
    if vl(&c4_of(a), ell) == 0 || *ell <= Int::from(3) {
        if *ell <= Int::from(3) {
            // residue scan: F = F_x = F_y = 0
            let mut x = Int::zero();
            while &x < ell {
                let mut y = Int::zero();
                while &y < ell {
                    let f = &y * &y + a1 * &x * &y + a3 * &y
                        - (&x * &x * &x + a2 * &x * &x + a4 * &x + a6);
                    let fx = a1 * &y - (3 * &x * &x + 2 * a2 * &x + a4);
                    let fy = 2 * &y + a1 * &x + a3;
                    if md(&f, ell).is_zero() && md(&fx, ell).is_zero() && md(&fy, ell).is_zero()
                    {
                        return (x, y);
                    }
                    y += 1;
                }
                x += 1;
            }
            unreachable!("singular reduction has a rational singular point");
        }
        // node (ℓ ≥ 5): x0 is the double root of the completed square
        let (b2, b4, b6, _) = b_invariants(a);
        let x0 = md(&((18 * b6 - &b2 * b4) * minv(&c4_of(a), ell)), ell);
        let y0 = md(&(-(a1 * &x0 + a3) * minv(&Int::from(2), ell)), ell);
        return (x0, y0);
    }
    // cusp (ℓ ≥ 5): triple root −b2/12
    let (b2, _, _, _) = b_invariants(a);
    let x0 = md(&(-b2 * minv(&Int::from(12), ell)), ell);
    let y0 = md(&(-(a1 * &x0 + a3) * minv(&Int::from(2), ell)), ell);
    (x0, y0)
}

enum TateOutcome {
    Classified {
        kodaira: KodairaType,
        tamagawa: u32,
        kind: ReductionKind,
    },
    /// Step-11 divisibilities hold on `translated`; scale by ℓ and restart.
    NonMinimal {
        translated: [Int; 5],
        shifts: IsomorphismData,
    },
}

struct Shifted {
    a: [Int; 5],
    shifts: IsomorphismData,
}

impl Shifted {
    fn shift(&mut self, r: Int, s: Int, t: Int) {
        self.a = translate(&self.a, &r, &s, &t);
        self.shifts = self.shifts.then(&IsomorphismData::translation(
            Rat::from_integer(r),
            Rat::from_integer(s),
            Rat::from_integer(t),
        ));
    }
}

fn classified(kodaira: KodairaType, tamagawa: u32, kind: ReductionKind) -> TateOutcome {
    TateOutcome::Classified {
        kodaira,
        tamagawa,
        kind,
    }
}

fn run_tate_integral(a0: &[Int; 5], ell: &Int) -> TateOutcome {
    use ReductionKind::*;
    let two = Int::from(2);
    let disc = disc_of(a0);
    let n = vl(&disc, ell);
    assert!(n >= 0 && n < i64::MAX);
    if n == 0 {
        return classified(KodairaType::I0, 1, Good);
    }

    // move the singular point to the origin
    let mut cur = Shifted {
        a: a0.clone(),
        shifts: IsomorphismData::identity(),
    };
    let (x0, y0) = singular_point(&cur.a, ell);
    cur.shift(x0, Int::zero(), y0);
    debug_assert!(vl(&cur.a[2], ell) >= 1 && vl(&cur.a[3], ell) >= 1 && vl(&cur.a[4], ell) >= 1);

    if vl(&c4_of(&cur.a), ell) == 0 {
        // multiplicative: tangent directions from T² + a1·T − a2
        let rational = matches!(
            quad_roots(&cur.a[0], &cur.a[1], ell),
            QuadRoots::Distinct { rational: true }
        );
        let n = n as u32;
        let (kind, tamagawa) = if rational {
            (SplitMultiplicative, n)
        } else {
            (NonsplitMultiplicative, if n % 2 == 0 { 2 } else { 1 })
        };
        return classified(KodairaType::I(n), tamagawa, kind);
    }

    if vl(&cur.a[4], ell) < 2 {
        return classified(KodairaType::II, 1, Additive);
    }
    let (_, _, _, b8) = b_invariants(&cur.a);
    if vl(&b8, ell) < 3 {
        return classified(KodairaType::III, 2, Additive);
    }
    let (_, _, b6, _) = b_invariants(&cur.a);
    if vl(&b6, ell) < 3 {
        let a31 = exact_div(&cur.a[2], ell);
        let a62 = exact_div(&cur.a[4], &ell.pow(2));
        let c = match quad_roots(&a31, &a62, ell) {
            QuadRoots::Distinct { rational: true } => 3,
            QuadRoots::Distinct { rational: false } => 1,
            QuadRoots::Double(_) => unreachable!("v(b6) = 2 makes the quadratic separable"),
        };
        return classified(KodairaType::IV, c, Additive);
    }

    // prepare: ℓ | a1, a2; ℓ² | a3, a4; ℓ³ | a6
    let s = if *ell == two {
        md(&cur.a[1], ell)
    } else {
        md(&(-&cur.a[0] * minv(&two, ell)), ell)
    };
    cur.shift(Int::zero(), s, Int::zero());
    let t = if *ell == two {
        ell * md(&exact_div(&cur.a[4], &ell.pow(2)), ell)
    } else {
        ell * md(
            &(-exact_div(&cur.a[2], ell) * minv(&two, ell)),
            ell,
        )
    };
    cur.shift(Int::zero(), Int::zero(), t);
    debug_assert!(
        vl(&cur.a[0], ell) >= 1
            && vl(&cur.a[1], ell) >= 1
            && vl(&cur.a[2], ell) >= 2
            && vl(&cur.a[3], ell) >= 2
            && vl(&cur.a[4], ell) >= 3
    );

    let p = exact_div(&cur.a[1], ell);
    let q = exact_div(&cur.a[3], &ell.pow(2));
    let r6 = exact_div(&cur.a[4], &ell.pow(3));
    match cubic_roots(&p, &q, &r6, ell) {
        CubicRoots::Distinct { rational_count } => {
            classified(KodairaType::I0Star, 1 + rational_count, Additive)
        }
        CubicRoots::DoubleSimple { double } => {
            cur.shift(ell * double, Int::zero(), Int::zero());
            // alternate quadratic tests in Y and X at rising ℓ-levels
            let (mut ix, mut iy) = (3u32, 3u32);
            let mut mx = ell.pow(2);
            let mut my = ell.pow(2);
            loop {
                let a2t = exact_div(&cur.a[1], ell);
                let a3t = exact_div(&cur.a[2], &my);
                let a6t = exact_div(&cur.a[4], &(&mx * &my));
                match quad_roots(&a3t, &a6t, ell) {
                    QuadRoots::Distinct { rational } => {
                        return classified(
                            KodairaType::IStar(ix + iy - 5),
                            if rational { 4 } else { 2 },
                            Additive,
                        );
                    }
                    QuadRoots::Double(y0) => {
                        cur.shift(Int::zero(), Int::zero(), &my * y0);
                        iy += 1;
                        my *= ell;
                    }
                }
                let a4t = exact_div(&cur.a[3], &(ell * &mx));
                let a6t = exact_div(&cur.a[4], &(&mx * &my));
                // a2t·X² + a4t·X + a6t, normalized by the unit a2t
                let inv_a2 = minv(&a2t, ell);
                match quad_roots(&(&a4t * &inv_a2), &(-&a6t * &inv_a2), ell) {
                    QuadRoots::Distinct { rational } => {
                        return classified(
                            KodairaType::IStar(ix + iy - 5),
                            if rational { 4 } else { 2 },
                            Additive,
                        );
                    }
                    QuadRoots::Double(x0) => {
                        cur.shift(&mx * x0, Int::zero(), Int::zero());
                        ix += 1;
                        mx *= ell;
                    }
                }
            }
        }
        CubicRoots::Triple(alpha) => {
            cur.shift(ell * alpha, Int::zero(), Int::zero());
            let a32 = exact_div(&cur.a[2], &ell.pow(2));
            let a64 = exact_div(&cur.a[4], &ell.pow(4));
            match quad_roots(&a32, &a64, ell) {
                QuadRoots::Distinct { rational } => {
                    return classified(KodairaType::IVStar, if rational { 3 } else { 1 }, Additive);
                }
                QuadRoots::Double(y0) => {
                    cur.shift(Int::zero(), Int::zero(), ell.pow(2) * y0);
                }
            }
            if vl(&cur.a[3], ell) == 3 {
                return classified(KodairaType::IIIStar, 2, Additive);
            }
            if vl(&cur.a[4], ell) == 5 {
                return classified(KodairaType::IIStar, 1, Additive);
            }
            debug_assert!(
                vl(&cur.a[0], ell) >= 1
                    && vl(&cur.a[1], ell) >= 2
                    && vl(&cur.a[2], ell) >= 3
                    && vl(&cur.a[3], ell) >= 4
                    && vl(&cur.a[4], ell) >= 6
            );
            TateOutcome::NonMinimal {
                translated: cur.a,
                shifts: cur.shifts,
            }
        }
    }
}

/// An ℓ-minimal integral model of the curve and the map onto it.
pub fn minimal_model_at(
    model: &Arc<WeierstrassModel>,
    ell: &Int,
) -> (Arc<WeierstrassModel>, IsomorphismData) {
    debug_assert!(is_prime(ell));
    let (integral, mut iso) = model.integral_model();
    let mut a = coeffs_of(&integral);
    loop {
        match run_tate_integral(&a, ell) {
            TateOutcome::Classified { .. } => return (model_of(&a), iso),
            TateOutcome::NonMinimal { translated, shifts } => {
                a = scale_down(&translated, ell);
                let rescale = IsomorphismData::scaling(Rat::from_integer(ell.clone()));
                iso = iso.then(&shifts).then(&rescale);
            }
        }
    }
}

/// Full local data at ℓ (the model is minimized internally first).
pub fn tate_algorithm(model: &Arc<WeierstrassModel>, ell: &Int) -> ReductionData {
    let (minimal, _) = minimal_model_at(model, ell);
    let a = coeffs_of(&minimal);
    let TateOutcome::Classified {
        kodaira,
        tamagawa,
        kind,
    } = run_tate_integral(&a, ell)
    else {
        unreachable!("minimal model cannot be reduced further")
    };
    let v_disc_min = vl(&disc_of(&a), ell);
    let v_c4 = vp_int(&c4_of(&a), ell);
    let v_j = vp(&minimal.j_invariant(), ell).expect("ℓ is prime");
    let potential = if v_j < Valuation::Finite(0) {
        PotentialReduction::Multiplicative
    } else {
        PotentialReduction::Good
    };
    ReductionData {
        ell: ell.clone(),
        kodaira,
        tamagawa,
        kind,
        potential,
        v_disc_min,
        v_c4,
        v_j,
    }
}

/// Local data at every prime of bad reduction, ascending.  Requires a
/// complete factorization of the (integral-model) discriminant.
pub fn bad_primes(
    model: &Arc<WeierstrassModel>,
) -> Result<Vec<(Int, ReductionData)>, LocalError> {
    bad_primes_with_effort(model, &FactorEffort::default())
}

pub fn bad_primes_with_effort(
    model: &Arc<WeierstrassModel>,
    effort: &FactorEffort,
) -> Result<Vec<(Int, ReductionData)>, LocalError> {
    let (integral, _) = model.integral_model();
    let disc = integral.discriminant();
    let f = factorize(disc.numer(), effort)
        .expect("nonsingular model has nonzero discriminant");
    if !f.complete {
        return Err(LocalError::IncompleteFactorization(f.cofactor));
    }
    let mut out = Vec::new();
    for (ell, _) in &f.factors {
        let data = tate_algorithm(model, ell);
        if data.v_disc_min > 0 {
            out.push((ell.clone(), data));
        }
    }
    Ok(out)
}
