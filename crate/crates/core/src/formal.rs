//! The formal group of a Weierstrass model at the origin: the w-expansion in
//! z = −x/y, the formal logarithm, the two-variable addition law, and an
//! exact divisibility test inside the kernel of reduction E₁(Q_p).
//!
//! Everything is truncated power series over Q with explicit precision.  For
//! an odd prime and a p-integral model the logarithm preserves valuations on
//! E₁ term by term — the z¹ term dominates — so the truncated evaluation
//! decides v_p(log) exactly; no precision analysis leaks into callers.

use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{is_prime, vp, Int, Rat, Valuation};
use crate::curve::{RationalPoint, WeierstrassModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormalError {
    #[error("series precision {0} too small; at least 4 terms are needed")]
    PrecisionTooSmall(usize),
    #[error("divisibility in the formal group requires an odd prime")]
    OddPrimeRequired,
    #[error("point does not reduce to the identity, so it is outside the formal group")]
    NotInKernelOfReduction,
}

/// Power series truncated at O(z^precision); index k holds the z^k coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rat::zero(); precision],
        }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// The z^k coefficient; panics beyond the precision (it is unknown there).
    pub fn coeff(&self, k: usize) -> &Rat {
        assert!(k < self.coeffs.len(), "coefficient {k} beyond precision");
        &self.coeffs[k]
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(precision <= self.coeffs.len());
        TruncatedSeries {
            coeffs: self.coeffs[..precision].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        TruncatedSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, u) in self.coeffs.iter().enumerate().take(n) {
            if u.is_zero() {
                continue;
            }
            for (j, v) in other.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += u * v;
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiply by z^k (k extra orders of precision become available).
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        TruncatedSeries { coeffs }
    }

    /// Divide by z^k; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(self.coeffs[..k].iter().all(Rat::is_zero));
        TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert_unit(&self) -> Self {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "cannot invert a series with zero constant term");
        let mut inv = vec![c0.recip()];
        for k in 1..self.precision() {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv.push(-acc / c0);
        }
        TruncatedSeries { coeffs: inv }
    }

    pub fn derivative(&self) -> Self {
        TruncatedSeries {
            coeffs: (1..self.precision())
                .map(|k| &self.coeffs[k] * Rat::from_integer(Int::from(k)))
                .collect(),
        }
    }

    /// Termwise antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![Rat::zero()];
        for (k, v) in self.coeffs.iter().enumerate() {
            coeffs.push(v / Rat::from_integer(Int::from(k + 1)));
        }
        TruncatedSeries { coeffs }
    }

    /// Evaluate the known terms at a rational argument.
    pub fn eval(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// The neutral-chart expansions: w(z) with w − z³ of order ≥ 4, and the
/// scaled coordinates x·z² and y·z³ (both units; y·z³ = −x·z²).
pub struct FormalExpansion {
    pub w: TruncatedSeries,
    pub x_z2: TruncatedSeries,
    pub y_z3: TruncatedSeries,
    pub precision: usize,
}

fn z_pow(k: usize, precision: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rat::zero(); precision];
    if k < precision {
        coeffs[k] = Rat::one();
    }
    TruncatedSeries::new(coeffs)
}

/// Solve w = z³ + a1·z·w + a2·z²·w + a3·w² + a4·z·w² + a6·w³ by iteration;
/// x·z² and y·z³ are returned to the requested precision.
pub fn formal_expansion(
    model: &Arc<WeierstrassModel>,
    precision: usize,
) -> Result<FormalExpansion, FormalError> {
    if precision < 4 {
        return Err(FormalError::PrecisionTooSmall(precision));
    }
    let wide = precision + 3;
    let z3 = z_pow(3, wide);
    let mut w = z3.clone();
    for _ in 0..wide {
        let w2 = w.mul(&w);
        let w3 = w2.mul(&w);
        w = z3
            .add(&w.shift_up(1).truncate(wide).scale(&model.a1))
            .add(&w.shift_up(2).truncate(wide).scale(&model.a2))
            .add(&w2.scale(&model.a3))
            .add(&w2.shift_up(1).truncate(wide).scale(&model.a4))
            .add(&w3.scale(&model.a6));
    }
    let unit = w.shift_down(3); // w/z³, constant term 1
    let x_z2 = unit.invert_unit();
    let y_z3 = x_z2.scale(&-Rat::one());
    Ok(FormalExpansion {
        w,
        x_z2,
        y_z3,
        precision,
    })
}

/// The formal logarithm ∫ (dx/dz) / (2y + a1·x + a3) dz = z + O(z²).
pub fn formal_log(
    model: &Arc<WeierstrassModel>,
    precision: usize,
) -> Result<TruncatedSeries, FormalError> {
    if precision < 4 {
        return Err(FormalError::PrecisionTooSmall(precision));
    }
    let exp = formal_expansion(model, (precision - 1).max(4))?;
    let x = &exp.x_z2;
    let n = x.precision();
    // numerator (dx/dz)·z³ and denominator (2y + a1·x + a3)·z³
    let num = x.derivative().shift_up(1).truncate(n).sub(&x.scale(&Rat::from_integer(Int::from(2))));
    let den = x
        .scale(&Rat::from_integer(Int::from(-2)))
        .add(&x.shift_up(1).truncate(n).scale(&model.a1))
        .add(&z_pow(3, n).scale(&model.a3));
    let integrand = num.mul(&den.invert_unit());
    let log = integrand.integral();
    Ok(log.truncate(precision.min(log.precision())))
}

/// Two-variable series truncated at total degree < precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<Vec<Rat>>,
    precision: usize,
}

impl BivariateSeries {
    pub fn zero(precision: usize) -> Self {
        BivariateSeries {
            coeffs: vec![vec![Rat::zero(); precision]; precision],
            precision,
        }
    }

    pub fn var1(precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[1][0] = Rat::one();
        s
    }

    pub fn var2(precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0][1] = Rat::one();
        s
    }

    pub fn constant(c: Rat, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0][0] = c;
        s
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rat {
        assert!(i + j < self.precision, "coefficient beyond precision");
        &self.coeffs[i][j]
    }

    fn clip(&mut self) {
        for i in 0..self.precision {
            for j in 0..self.precision {
                if i + j >= self.precision {
                    self.coeffs[i][j] = Rat::zero();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.precision.min(other.precision);
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                out.coeffs[i][j] = &self.coeffs[i][j] + &other.coeffs[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for v in row {
                *v *= c;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision.min(other.precision);
        let mut out = Self::zero(n);
        for i1 in 0..n {
            for j1 in 0..n - i1 {
                let u = &self.coeffs[i1][j1];
                if u.is_zero() {
                    continue;
                }
                for i2 in 0..n - i1 - j1 {
                    for j2 in 0..n - i1 - j1 - i2 {
                        let v = &other.coeffs[i2][j2];
                        if !v.is_zero() {
                            out.coeffs[i1 + i2][j1 + j2] += u * v;
                        }
                    }
                }
            }
        }
        out.clip();
        out
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.precision {
            for j in 0..self.precision - i {
                if self.coeffs[i][j] != self.coeffs[j][i] {
                    return false;
                }
            }
        }
        true
    }

    /// Set the second variable to zero, leaving a series in the first.
    pub fn set_var2_zero(&self) -> TruncatedSeries {
        TruncatedSeries::new((0..self.precision).map(|i| self.coeffs[i][0].clone()).collect())
    }

    /// Substitute this series (constant term must vanish) into a univariate one.
    pub fn substitute_into(&self, f: &TruncatedSeries) -> BivariateSeries {
        assert!(self.coeffs[0][0].is_zero(), "substitution needs positive order");
        let n = self.precision.min(f.precision());
        let mut acc = BivariateSeries::constant(f.coeff(0).clone(), n);
        let mut power = BivariateSeries::constant(Rat::one(), n);
        for k in 1..n {
            power = power.mul(self);
            acc = acc.add(&power.scale(f.coeff(k)));
        }
        acc
    }
}

/// The addition law F(z1, z2) of the formal group: symmetric, F(z, 0) = z,
/// and log F(z1, z2) = log z1 + log z2.
pub fn formal_group_law(
    model: &Arc<WeierstrassModel>,
    precision: usize,
) -> Result<BivariateSeries, FormalError> {
    if precision < 4 {
        return Err(FormalError::PrecisionTooSmall(precision));
    }
    let n = precision;
    let exp = formal_expansion(model, n)?;
    let w = &exp.w;

    // λ = Σ_k w_k (z1^k − z2^k)/(z1 − z2), the slope through (z1,w1),(z2,w2)
    let mut lam = BivariateSeries::zero(n);
    for k in 3..w.precision() {
        let wk = w.coeff(k);
        if wk.is_zero() {
            continue;
        }
        for i in 0..k {
            let j = k - 1 - i;
            if i + j < n {
                lam.coeffs[i][j] += wk;
            }
        }
    }
    let w1 = {
        let mut s = BivariateSeries::zero(n);
        for k in 3..w.precision().min(n) {
            s.coeffs[k][0] = w.coeff(k).clone();
        }
        s
    };
    let z1 = BivariateSeries::var1(n);
    let z2 = BivariateSeries::var2(n);
    let nu = w1.add(&lam.mul(&z1).scale(&-Rat::one()));

    let lam2 = lam.mul(&lam);
    let lam3 = lam2.mul(&lam);
    let two = Rat::from_integer(Int::from(2));
    let three = Rat::from_integer(Int::from(3));
    let numer = lam
        .scale(&model.a1)
        .add(&nu.scale(&model.a2))
        .add(&lam2.scale(&model.a3))
        .add(&lam.mul(&nu).scale(&(&model.a4 * &two)))
        .add(&lam2.mul(&nu).scale(&(&model.a6 * &three)));
    let den = BivariateSeries::constant(Rat::one(), n)
        .add(&lam.scale(&model.a2))
        .add(&lam2.scale(&model.a4))
        .add(&lam3.scale(&model.a6));
    // geometric inversion of the unit denominator
    let e = BivariateSeries::constant(Rat::one(), n).add(&den.scale(&-Rat::one()));
    let mut den_inv = BivariateSeries::constant(Rat::one(), n);
    let mut power = BivariateSeries::constant(Rat::one(), n);
    for _ in 1..n {
        power = power.mul(&e);
        den_inv = den_inv.add(&power);
    }
    // third root of the line section, then apply the formal inversion
    let z3p = z1
        .add(&z2)
        .scale(&-Rat::one())
        .add(&numer.mul(&den_inv).scale(&-Rat::one()));

    // i(z) = z·x·z² / (y·z³ + a1·z·x·z² + a3·z³)
    let x = &exp.x_z2;
    let m = x.precision();
    let inv_den = exp
        .y_z3
        .add(&x.shift_up(1).truncate(m).scale(&model.a1))
        .add(&z_pow(3, m).scale(&model.a3));
    let i_series = x.shift_up(1).truncate(m).mul(&inv_den.invert_unit());
    Ok(z3p.substitute_into(&i_series))
}

/// Exact divisibility data for a point of E₁(Q_p) = the kernel of reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Report {
    pub vp_z: Valuation,
    pub vp_log: Valuation,
    /// Whether the point lies in p^n·E₁(Q_p).
    pub member: bool,
    pub precision: usize,
}

/// Decide whether `point` ∈ p^n·E₁(Q_p) by evaluating the formal logarithm
/// at z = −x/y.  Odd p only; the model must be p-integral.
pub fn e1_divisibility(point: &RationalPoint, p: &Int, n: u32) -> Result<E1Report, FormalError> {
    if *p == Int::from(2) {
        return Err(FormalError::OddPrimeRequired);
    }
    debug_assert!(is_prime(p));
    let model = point.model();
    debug_assert!(
        [&model.a1, &model.a2, &model.a3, &model.a4, &model.a6]
            .iter()
            .all(|a| vp(a, p).unwrap() >= Valuation::Finite(0)),
        "divisibility test needs a p-integral model"
    );
    let precision = p
        .to_usize()
        .expect("working prime fits in usize")
        .max(n as usize + 3);
    if point.is_infinity() {
        return Ok(E1Report {
            vp_z: Valuation::PlusInfinity,
            vp_log: Valuation::PlusInfinity,
            member: true,
            precision,
        });
    }
    let x = point.x().unwrap();
    let y = point.y().unwrap();
    if vp(x, p).unwrap() >= Valuation::Finite(0) {
        return Err(FormalError::NotInKernelOfReduction);
    }
    let z0 = -(x / y);
    let vp_z = vp(&z0, p).unwrap();
    let log = formal_log(&model, precision)?;
    let value = log.eval(&z0);
    let vp_log = vp(&value, p).unwrap();
    // v_p is preserved by the logarithm for odd p, so the truncation cannot
    // disturb the comparison below
    debug_assert_eq!(vp_log, vp_z);
    Ok(E1Report {
        vp_z,
        vp_log,
        member: vp_log >= Valuation::Finite(n as i64 + 1),
        precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, rat_int};

    fn model(c: [i64; 5]) -> Arc<WeierstrassModel> {
        WeierstrassModel::from_int_coeffs(c).unwrap()
    }

    fn series(vals: &[(usize, Rat)], precision: usize) -> TruncatedSeries {
        let mut coeffs = vec![Rat::zero(); precision];
        for (k, v) in vals {
            coeffs[*k] = v.clone();
        }
        TruncatedSeries::new(coeffs)
    }

    #[test]
    fn precision_below_four_is_rejected() {
        let m = model([0, 1, 1, 0, 0]);
        assert_eq!(
            formal_expansion(&m, 3).err(),
            Some(FormalError::PrecisionTooSmall(3))
        );
        assert_eq!(
            formal_log(&m, 0).err(),
            Some(FormalError::PrecisionTooSmall(0))
        );
        assert_eq!(
            formal_group_law(&m, 2).err(),
            Some(FormalError::PrecisionTooSmall(2))
        );
    }

    #[test]
    fn neutral_chart_series_of_y2y_eq_x3x2() {
        let exp = formal_expansion(&model([0, 1, 1, 0, 0]), 8).unwrap();
        // w = z³ + z⁵ + z⁶ + z⁷ + 3z⁸ + 3z⁹ + 6z¹⁰ + O(z¹¹)
        for (k, c) in [(3, 1), (4, 0), (5, 1), (6, 1), (7, 1), (8, 3), (9, 3), (10, 6)] {
            assert_eq!(exp.w.coeff(k), &rat_int(c), "w coefficient {k}");
        }
        // x·z² = 1 − z² − z³ − z⁵ − z⁶ − z⁷ + O(z⁸)
        let expected = series(
            &[
                (0, rat_int(1)),
                (2, rat_int(-1)),
                (3, rat_int(-1)),
                (5, rat_int(-1)),
                (6, rat_int(-1)),
                (7, rat_int(-1)),
            ],
            8,
        );
        assert_eq!(exp.x_z2, expected);
        assert_eq!(exp.y_z3, expected.scale(&rat_int(-1)));
    }

    #[test]
    fn scaled_weierstrass_identity_holds() {
        // Y² + a1·z·X·Y + a3·z³·Y = X³ + a2·z²·X² + a4·z⁴·X + a6·z⁶
        let m = model([1, 2, 3, 4, 5]);
        let exp = formal_expansion(&m, 10).unwrap();
        let n = exp.x_z2.precision();
        let x = &exp.x_z2;
        let y = &exp.y_z3;
        let lhs = y
            .mul(y)
            .add(&x.mul(y).shift_up(1).truncate(n).scale(&m.a1))
            .add(&y.shift_up(3).truncate(n).scale(&m.a3));
        let rhs = x
            .mul(x)
            .mul(x)
            .add(&x.mul(x).shift_up(2).truncate(n).scale(&m.a2))
            .add(&x.shift_up(4).truncate(n).scale(&m.a4))
            .add(&z_pow(6, n).scale(&m.a6));
        assert_eq!(lhs, rhs);
        // leading x-coefficients: 1, −a1, −a2, −a3, −(a4 + a1·a3)
        assert_eq!(x.coeff(0), &rat_int(1));
        assert_eq!(x.coeff(1), &rat_int(-1));
        assert_eq!(x.coeff(2), &rat_int(-2));
        assert_eq!(x.coeff(3), &rat_int(-3));
        assert_eq!(x.coeff(4), &rat_int(-7));
    }

    #[test]
    fn logarithm_of_y2y_eq_x3x2() {
        let log = formal_log(&model([0, 1, 1, 0, 0]), 10).unwrap();
        let expected = series(
            &[
                (1, rat_int(1)),
                (3, rat(1, 3)),
                (4, rat(1, 2)),
                (5, rat(1, 5)),
                (6, rat_int(1)),
                (7, rat_int(1)),
                (8, rat(3, 2)),
                (9, rat(31, 9)),
            ],
            10,
        );
        assert_eq!(log, expected);
    }

    #[test]
    fn large_quartic_coefficient_is_stable_across_precisions() {
        let m = model([0, 0, 0, -2401, 1]);
        let small = formal_expansion(&m, 8).unwrap();
        let big = formal_expansion(&m, 12).unwrap();
        assert_eq!(small.x_z2.coeff(4), &rat_int(2401));
        for k in 0..8 {
            assert_eq!(small.x_z2.coeff(k), big.x_z2.coeff(k));
        }
        let log = formal_log(&m, 8).unwrap();
        assert_eq!(log.coeff(5), &rat(-4802, 5));
    }

    #[test]
    fn log_coefficient_denominators_divide_the_index() {
        for c in [[1, 2, 3, 4, 5], [0, 0, 0, -2401, 1], [0, 1, 1, 0, 0]] {
            let log = formal_log(&model(c), 12).unwrap();
            for k in 1..log.precision() {
                let scaled = log.coeff(k) * Rat::from_integer(Int::from(k));
                assert!(scaled.is_integer(), "k = {k}: {}", log.coeff(k));
            }
        }
    }

    #[test]
    fn group_law_is_symmetric_and_unital() {
        for c in [[0, 0, 1, 0, 0], [1, 2, 3, 4, 5], [0, 1, 1, 0, 0]] {
            let m = model(c);
            let f = formal_group_law(&m, 7).unwrap();
            assert!(f.is_symmetric());
            assert_eq!(f.set_var2_zero(), series(&[(1, rat_int(1))], 7));
            assert_eq!(f.coeff(1, 1), &-&m.a1);
            assert_eq!(f.coeff(2, 1), &-&m.a2);
            assert_eq!(f.coeff(3, 1), &(-rat_int(2) * &m.a3));
            assert_eq!(f.coeff(2, 2), &(&m.a1 * &m.a2 - rat_int(3) * &m.a3));
        }
    }

    #[test]
    fn logarithm_linearizes_the_group_law() {
        for c in [[0, 1, 1, 0, 0], [1, 2, 3, 4, 5]] {
            let m = model(c);
            let n = 8;
            let f = formal_group_law(&m, n).unwrap();
            let log = formal_log(&m, n).unwrap();
            let lhs = f.substitute_into(&log);
            let rhs = BivariateSeries::var1(n)
                .substitute_into(&log)
                .add(&BivariateSeries::var2(n).substitute_into(&log));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn divisibility_of_the_deep_multiple_on_y2y_eq_x3x2() {
        // 19·(0,0) lands far down the kernel filtration at 13
        let m = model([0, 1, 1, 0, 0]);
        let g = RationalPoint::from_ints(&m, 0, 0).unwrap();
        let pt = g.mul_i64(19);
        let p = int(13);
        for (n, member) in [(1, true), (2, true), (3, false)] {
            let rep = e1_divisibility(&pt, &p, n).unwrap();
            assert_eq!(rep.vp_z, Valuation::Finite(3));
            assert_eq!(rep.vp_log, Valuation::Finite(3));
            assert_eq!(rep.member, member, "level {n}");
        }
    }

    #[test]
    fn divisibility_on_the_minus2401_curve() {
        let m = model([0, 0, 0, -2401, 1]);
        let p = int(7);
        let q3 = RationalPoint::from_ints(&m, -49, 1).unwrap().mul_i64(3);
        let rep = e1_divisibility(&q3, &p, 1).unwrap();
        assert_eq!(rep.vp_z, Valuation::Finite(2));
        assert!(rep.member);
        assert!(!e1_divisibility(&q3, &p, 2).unwrap().member);
        // 3·(0,1) sits much deeper: v(z) = 8
        let p3 = RationalPoint::from_ints(&m, 0, 1).unwrap().mul_i64(3);
        let rep = e1_divisibility(&p3, &p, 5).unwrap();
        assert_eq!(rep.vp_z, Valuation::Finite(8));
        assert!(rep.member);
        assert!(e1_divisibility(&p3, &p, 7).unwrap().member);
        assert!(!e1_divisibility(&p3, &p, 8).unwrap().member);
    }

    #[test]
    fn divisibility_rejections() {
        let m = model([0, 1, 1, 0, 0]);
        let g = RationalPoint::from_ints(&m, 0, 0).unwrap();
        assert_eq!(
            e1_divisibility(&g.mul_i64(19), &int(2), 1).err(),
            Some(FormalError::OddPrimeRequired)
        );
        // the generator itself has integral coordinates: not in the kernel
        assert_eq!(
            e1_divisibility(&g, &int(13), 1).err(),
            Some(FormalError::NotInKernelOfReduction)
        );
        let o = RationalPoint::infinity(&m);
        let rep = e1_divisibility(&o, &int(13), 5).unwrap();
        assert!(rep.member);
        assert_eq!(rep.vp_z, Valuation::PlusInfinity);
    }
}
