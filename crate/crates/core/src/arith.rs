//! Exact integer/rational scalars, p-adic valuations, primality, and integer
//! factorization with bounded effort.
//!
//! [`Int`] and [`Rat`] come from the `num` family; a `Rat` is always in lowest
//! terms with positive denominator, so equality is structural and hashing is
//! sound.  Everything else here is hand-rolled: [`vp`] (normalized so that
//! `vp(0) = +inf`), [`is_prime`] (deterministic Miller–Rabin below a published
//! witness-set threshold, labeled probable-prime above it), and [`factorize`]
//! (trial division + Brent's cycle variant of Pollard rho, each with an
//! explicit budget; an exhausted budget yields an *incomplete* factorization
//! whose composite cofactor is carried, never silently dropped).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

/// Shorthand constructors used throughout the crate and its tests.
pub fn int(n: i64) -> Int {
    Int::from(n)
}
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("p = {0} is not prime")]
    NotPrime(Int),
    #[error("cannot factor 0")]
    FactorZero,
}

/// A p-adic valuation; `PlusInfinity` is the valuation of 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    PlusInfinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::PlusInfinity => None,
        }
    }
    pub fn is_infinite(self) -> bool {
        self == Valuation::PlusInfinity
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (PlusInfinity, PlusInfinity) => std::cmp::Ordering::Equal,
            (PlusInfinity, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), PlusInfinity) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::PlusInfinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::PlusInfinity => write!(f, "+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        if raw == "+inf" {
            Ok(Valuation::PlusInfinity)
        } else {
            raw.parse::<i64>()
                .map(Valuation::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}

/// v_p(n) for a nonzero integer, assuming (not checking) that p is prime.
pub fn vp_int(n: &Int, p: &Int) -> Valuation {
    if n.is_zero() {
        return Valuation::PlusInfinity;
    }
    let mut v = 0i64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        m = q;
    }
}

/// v_p(q) for a rational q, with v_p(0) = +inf.  Errors if p is not prime.
pub fn vp(q: &Rat, p: &Int) -> Result<Valuation, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p.clone()));
    }
    if q.is_zero() {
        return Ok(Valuation::PlusInfinity);
    }
    let num = vp_int(q.numer(), p);
    let den = vp_int(q.denom(), p);
    match (num, den) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Ok(Valuation::Finite(a - b)),
        _ => unreachable!("numerator and denominator of a nonzero rational are nonzero"),
    }
}

/// Outcome of a primality test, distinguishing proved from probable primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime,
    /// Passed strong tests but lies above the deterministic witness threshold.
    ProbablePrime,
}

/// Largest bound below which the fixed Miller–Rabin witness set
/// {2,3,...,41} is a proven deterministic primality test
/// (Sorenson–Webster 2015).
fn deterministic_threshold() -> &'static Int {
    static T: OnceLock<Int> = OnceLock::new();
    T.get_or_init(|| Int::from_str("3317044064679887385961981").unwrap())
}

const MR_WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn miller_rabin_witness(n: &Int, a: &Int) -> bool {
    // returns true if `a` witnesses compositeness of odd n > 2
    let one = Int::one();
    let nm1 = n - &one;
    let s = vp_int(&nm1, &Int::from(2)).finite().unwrap();
    let d = &nm1 >> (s as usize);
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return false;
    }
    for _ in 1..s {
        x = x.modpow(&Int::from(2), n);
        if x == nm1 {
            return false;
        }
    }
    true
}

pub fn classify_prime(n: &Int) -> Primality {
    let n = n.abs();
    if n < Int::from(2) {
        return Primality::Composite;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let s = Int::from(small);
        if n == s {
            return Primality::Prime;
        }
        if (&n % &s).is_zero() {
            return Primality::Composite;
        }
    }
    for a in MR_WITNESSES {
        if miller_rabin_witness(&n, &Int::from(a)) {
            return Primality::Composite;
        }
    }
    if &n < deterministic_threshold() {
        Primality::Prime
    } else {
        Primality::ProbablePrime
    }
}

/// True when n is prime or probable-prime (see [`classify_prime`] for the
/// distinction; reports must label any probable-prime reliance).
pub fn is_prime(n: &Int) -> bool {
    classify_prime(n) != Primality::Composite
}

/// Effort budget for [`factorize`]: trial division up to `trial_bound`, then
/// Pollard rho with at most `rho_rounds` iterations in total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorEffort {
    pub trial_bound: u64,
    pub rho_rounds: u64,
}

impl Default for FactorEffort {
    fn default() -> Self {
        FactorEffort {
            trial_bound: 1_000_000,
            rho_rounds: 1_000_000,
        }
    }
}

/// sign · ∏ prime^exponent · cofactor, with `complete` ⟺ cofactor = 1.
/// Factors are ascending; each listed prime passed [`is_prime`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    pub factors: Vec<(Int, u32)>,
    pub cofactor: Int,
    pub complete: bool,
}

impl Factorization {
    pub fn value(&self) -> Int {
        let mut v = self.cofactor.clone();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// Exponent of p among the *found* factors.  Meaningful as the exact
    /// p-adic valuation only when the factorization is complete or p exceeds
    /// nothing hidden in the cofactor.
    pub fn exponent_of(&self, p: &Int) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Any listed factor that is only a probable prime (above the
    /// deterministic witness threshold).
    pub fn probable_prime_factors(&self) -> Vec<Int> {
        self.factors
            .iter()
            .filter(|(p, _)| classify_prime(p) == Primality::ProbablePrime)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Render as `±2^a·3^b·…`, with an explicit marker for an unfactored
    /// cofactor.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        if !self.complete {
            parts.push(format!("(cofactor {} unfactored)", self.cofactor));
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        };
        if self.negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^64 so the product fits in u128
    (a * b) % m
}

/// Brent's variant of Pollard rho on a u64-sized composite.  Deterministic:
/// the polynomial offset starts at 1 and increments on failure.  Returns a
/// nontrivial factor or None when the budget runs out.
fn rho_u64(n: u64, budget: &mut u64) -> Option<u64> {
    debug_assert!(n > 1 && n % 2 == 1);
    let n128 = n as u128;
    let mut c: u128 = 1;
    loop {
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u64 = 1;
        let mut saved_x = x;
        let mut power: u64 = 1;
        let mut lam: u64 = 0;
        while d == 1 {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            if lam == power {
                saved_x = x;
                power <<= 1;
                lam = 0;
            }
            x = (mulmod_u128(x, x, n128) + c) % n128;
            lam += 1;
            let diff = if x > saved_x { x - saved_x } else { saved_x - x };
            d = num_integer::gcd(diff as u64, n);
            let _ = y;
            y = x;
        }
        if d != n {
            return Some(d);
        }
        c += 1; // cycle degenerated; retry with the next offset
        if c > 20 {
            return None;
        }
    }
}

/// Same shape as [`rho_u64`] for integers beyond u64.
fn rho_big(n: &Int, budget: &mut u64) -> Option<Int> {
    let mut c = Int::one();
    loop {
        let mut x = Int::from(2);
        let mut saved_x = x.clone();
        let mut power: u64 = 1;
        let mut lam: u64 = 0;
        let mut d = Int::one();
        while d.is_one() {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            if lam == power {
                saved_x = x.clone();
                power <<= 1;
                lam = 0;
            }
            x = (&x * &x + &c) % n;
            lam += 1;
            let diff = (&x - &saved_x).abs();
            d = diff.gcd(n);
        }
        if &d != n {
            return Some(d);
        }
        c += 1;
        if c > Int::from(20) {
            return None;
        }
    }
}

fn push_factor(factors: &mut Vec<(Int, u32)>, p: Int, e: u32) {
    if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        factors.push((p, e));
    }
}

/// Factor n ≠ 0 within the given effort.  Sign is held separately; the
/// product of the listed prime powers and the cofactor always equals |n|.
pub fn factorize(n: &Int, effort: &FactorEffort) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::FactorZero);
    }
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut factors: Vec<(Int, u32)> = Vec::new();

    // Trial division.  The u64 fast path matters: the default bound visits
    // several hundred thousand candidates.
    for small in [2u64, 3, 5] {
        if small > effort.trial_bound {
            break;
        }
        let p = Int::from(small);
        let v = vp_int(&m, &p);
        if let Valuation::Finite(v) = v {
            if v > 0 {
                m /= p.pow(v as u32);
                push_factor(&mut factors, p, v as u32);
            }
        }
    }
    // 30-wheel over candidates coprime to 2·3·5.
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut cand: u64 = 7;
    let mut wi = 0usize;
    while cand <= effort.trial_bound && !m.is_one() {
        if let Some(m64) = m.to_u64() {
            // pure u64 loop from here on
            let mut m64 = m64;
            while cand <= effort.trial_bound && m64 > 1 {
                if cand.saturating_mul(cand) > m64 {
                    // remaining part is prime
                    push_factor(&mut factors, Int::from(m64), 1);
                    m64 = 1;
                    break;
                }
                if m64 % cand == 0 {
                    let mut e = 0u32;
                    while m64 % cand == 0 {
                        m64 /= cand;
                        e += 1;
                    }
                    push_factor(&mut factors, Int::from(cand), e);
                }
                cand += WHEEL[wi];
                wi = (wi + 1) % WHEEL.len();
            }
            m = Int::from(m64);
        } else {
            let p = Int::from(cand);
            let v = vp_int(&m, &p);
            if let Valuation::Finite(v) = v {
                if v > 0 {
                    m /= p.pow(v as u32);
                    push_factor(&mut factors, p, v as u32);
                }
            }
            cand += WHEEL[wi];
            wi = (wi + 1) % WHEEL.len();
        }
    }

    // Split what remains with rho under a shared budget.
    let mut budget = effort.rho_rounds;
    let mut pending = vec![m];
    let mut cofactor = Int::one();
    while let Some(cur) = pending.pop() {
        if cur.is_one() {
            continue;
        }
        if is_prime(&cur) {
            push_factor(&mut factors, cur, 1);
            continue;
        }
        let split = if let Some(n64) = cur.to_u64() {
            rho_u64(n64, &mut budget).map(Int::from)
        } else {
            rho_big(&cur, &mut budget)
        };
        match split {
            Some(d) => {
                let q = &cur / &d;
                pending.push(d);
                pending.push(q);
            }
            None => cofactor *= cur,
        }
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let complete = cofactor.is_one();
    Ok(Factorization {
        negative,
        factors,
        cofactor,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vp_basics() {
        let p7 = int(7);
        assert_eq!(vp(&Rat::zero(), &p7).unwrap(), Valuation::PlusInfinity);
        assert_eq!(vp(&rat(9, 4), &int(3)).unwrap(), Valuation::Finite(2));
        assert_eq!(vp(&rat(9, 4), &int(2)).unwrap(), Valuation::Finite(-2));
        // j-invariant of y^2 + y = x^3 + x^2 is -4096/43
        assert_eq!(vp(&rat(-4096, 43), &int(43)).unwrap(), Valuation::Finite(-1));
        assert!(matches!(vp(&rat(1, 2), &int(6)), Err(ArithError::NotPrime(_))));
        assert!(matches!(vp(&rat(1, 2), &int(1)), Err(ArithError::NotPrime(_))));
    }

    #[test]
    fn valuation_ordering_and_arith() {
        use Valuation::*;
        assert!(Finite(3) < PlusInfinity);
        assert!(Finite(-2) < Finite(0));
        assert_eq!(Finite(2) + Finite(3), Finite(5));
        assert_eq!(Finite(2) + PlusInfinity, PlusInfinity);
        assert_eq!(PlusInfinity.to_string(), "+inf");
    }

    #[test]
    fn rational_normal_form_is_maintained() {
        let a = rat(2, -4);
        assert_eq!(a.numer(), &int(-1));
        assert_eq!(a.denom(), &int(2));
        let z = rat(0, 5);
        assert_eq!(z.denom(), &int(1));
        // exactness: (a/b + c/d) - c/d == a/b
        let b = rat(22, 7);
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn primality_small_and_labeled() {
        assert_eq!(classify_prime(&int(0)), Primality::Composite);
        assert_eq!(classify_prime(&int(1)), Primality::Composite);
        assert_eq!(classify_prime(&int(2)), Primality::Prime);
        assert_eq!(classify_prime(&int(561)), Primality::Composite); // Carmichael
        assert_eq!(classify_prime(&int(1069)), Primality::Prime);
        assert_eq!(classify_prime(&int(51791533)), Primality::Prime);
        // 2^61 - 1 is a Mersenne prime below the deterministic threshold
        let m61 = (Int::one() << 61) - 1;
        assert_eq!(classify_prime(&m61), Primality::Prime);
        // 2^89 - 1 is prime but above the threshold: labeled probable
        let m89 = (Int::one() << 89) - 1;
        assert_eq!(classify_prime(&m89), Primality::ProbablePrime);
        assert!(is_prime(&m89));
    }

    #[test]
    fn factor_small_powers() {
        let f = factorize(&int(2401), &FactorEffort::default()).unwrap();
        assert_eq!(f.factors, vec![(int(7), 4)]);
        assert!(f.complete && !f.negative);
        assert_eq!(f.render(), "7^4");
        assert_eq!(f.value(), int(2401));

        let f = factorize(&int(-43), &FactorEffort::default()).unwrap();
        assert!(f.negative);
        assert_eq!(f.render(), "-43");
    }

    #[test]
    fn factor_discriminant_of_the_minus2401_curve() {
        let f = factorize(&Int::from(885842380432u64), &FactorEffort::default()).unwrap();
        assert_eq!(
            f.factors,
            vec![(int(2), 4), (int(1069), 1), (int(51791533), 1)]
        );
        assert!(f.complete);
        assert_eq!(f.render(), "2^4·1069·51791533");
    }

    #[test]
    fn factor_cole_mersenne() {
        // 2^67 - 1 = 193707721 · 761838257287 (Cole, 1903); rho finds it fast
        let n = (Int::one() << 67) - 1;
        let f = factorize(&n, &FactorEffort::default()).unwrap();
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![(int(193707721), 1), (Int::from(761838257287u64), 1)]
        );
    }

    #[test]
    fn factor_budget_exhaustion_keeps_cofactor() {
        let n = int(1_000_000_007) * int(1_000_000_009);
        let effort = FactorEffort {
            trial_bound: 1_000_000,
            rho_rounds: 0,
        };
        let f = factorize(&n, &effort).unwrap();
        assert!(!f.complete);
        assert_eq!(f.cofactor, n);
        assert!(f.factors.is_empty());
        assert!(f.render().contains("unfactored"));
        assert_eq!(f.value(), n);
        // and with the default budget it resolves
        let g = factorize(&n, &FactorEffort::default()).unwrap();
        assert!(g.complete);
        assert_eq!(g.factors.len(), 2);
    }

    #[test]
    fn factor_zero_rejected() {
        assert!(matches!(
            factorize(&Int::zero(), &FactorEffort::default()),
            Err(ArithError::FactorZero)
        ));
    }

    #[test]
    fn factor_one_and_minus_one() {
        let f = factorize(&int(1), &FactorEffort::default()).unwrap();
        assert!(f.complete && f.factors.is_empty() && !f.negative);
        assert_eq!(f.render(), "1");
        let f = factorize(&int(-1), &FactorEffort::default()).unwrap();
        assert!(f.negative);
        assert_eq!(f.render(), "-1");
    }
}
