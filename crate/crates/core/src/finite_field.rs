//! Finite fields F_{ℓ^d} realized as polynomial quotients, reduced curves and
//! their group law, brute-force point counting, Frobenius-trace extension
//! counts, and p-primary structure with explicit discrete-log coordinates.
//!
//! Everything here is exhaustive-search arithmetic capped at q ≤ 10⁶ field
//! elements: this layer is the oracle that certifies non-divisibility and
//! independence statements, so transparency beats asymptotics.  The extension
//! modulus is the lexicographically smallest irreducible monic polynomial
//! (smallest base-ℓ encoding of the non-leading coefficients), making every
//! transcript reproducible without external tables.

use std::collections::HashSet;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, Int, Rat};
use crate::curve::{RationalPoint, WeierstrassModel};

pub const FIELD_SIZE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CharacteristicNotPrime(u64),
    #[error("field size {0} exceeds the exhaustive-search cap")]
    TooLarge(u64),
    #[error("coefficient not integral at {0}")]
    NonIntegral(u64),
    #[error("singular reduction")]
    SingularReduction,
    #[error("Hasse bound violated: a = {0} at ell = {1}")]
    HasseViolated(i64, u64),
}

/// An element of F_{ℓ^d}: `d` coefficients, ascending degree, entries < ℓ.
pub type FqElem = Vec<u64>;

/// A point over F_q: `None` is the point at infinity.
pub type FqPoint = Option<(FqElem, FqElem)>;

const NO_SQRT: u64 = u64::MAX;

/// The field F_q, q = ℓ^d, with its modulus and a square-root table.
#[derive(Debug)]
pub struct FqCtx {
    pub ell: u64,
    pub d: u32,
    pub q: u64,
    /// Monic irreducible of degree d, ascending coefficients (length d+1).
    pub modulus: Vec<u64>,
    sqrt_tab: Vec<u64>,
}

// ---- dense polynomial helpers over F_ℓ (modulus search only) ----

fn ptrim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn pmul(a: &[u64], b: &[u64], ell: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % ell;
        }
    }
    ptrim(&mut out);
    out
}

fn inv_mod_u64(a: u64, ell: u64) -> u64 {
    // ℓ prime, a ≢ 0
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (ell as i128, (a % ell) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    debug_assert_eq!(r, 1);
    (((t % ell as i128) + ell as i128) % ell as i128) as u64
}

fn prem(a: &[u64], m: &[u64], ell: u64) -> Vec<u64> {
    let mut rem = a.to_vec();
    ptrim(&mut rem);
    let dm = m.len() - 1;
    if dm == 0 {
        return vec![0]; // nonzero constant divides everything
    }
    let lead_inv = inv_mod_u64(m[dm], ell);
    while rem.len() > dm {
        let da = rem.len() - 1;
        let c = (rem[da] * lead_inv) % ell;
        let shift = da - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c * mi) % ell;
            rem[shift + i] = (rem[shift + i] + ell - sub) % ell;
        }
        debug_assert_eq!(rem[da], 0);
        rem.pop();
        ptrim(&mut rem);
    }
    rem
}

fn pgcd(a: &[u64], b: &[u64], ell: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !(y.len() == 1 && y[0] == 0) {
        let r = prem(&x, &y, ell);
        x = y;
        y = r;
    }
    x
}

/// base^(ℓ) mod m — one Frobenius step by square-and-multiply.
fn ppow_ell(base: &[u64], ell: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = prem(base, m, ell);
    let mut e = ell;
    while e > 0 {
        if e & 1 == 1 {
            result = prem(&pmul(&result, &b, ell), m, ell);
        }
        b = prem(&pmul(&b, &b, ell), m, ell);
        e >>= 1;
    }
    result
}

/// Monic f of degree d ≥ 1 irreducible over F_ℓ: gcd(x^(ℓ^k) − x, f) is
/// constant for k ≤ d/2 (any factor would have an irreducible divisor of
/// degree ≤ d/2).
fn poly_irreducible(f: &[u64], ell: u64) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let mut frob = vec![0u64, 1]; // x
    for _ in 1..=(d / 2) {
        frob = ppow_ell(&frob, ell, f);
        // frob − x
        let mut diff = frob.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + ell - 1) % ell;
        ptrim(&mut diff);
        let g = pgcd(f, &diff, ell);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn find_modulus(ell: u64, d: u32) -> Vec<u64> {
    let q = ell.pow(d);
    for code in 0..q {
        let mut f = Vec::with_capacity(d as usize + 1);
        let mut c = code;
        for _ in 0..d {
            f.push(c % ell);
            c /= ell;
        }
        f.push(1);
        if poly_irreducible(&f, ell) {
            return f;
        }
    }
    unreachable!("an irreducible monic polynomial of every degree exists over F_ℓ")
}

impl FqCtx {
    pub fn new(ell: u64, d: u32) -> Result<Arc<FqCtx>, FieldError> {
        if !is_prime(&Int::from(ell)) {
            return Err(FieldError::CharacteristicNotPrime(ell));
        }
        let q = ell
            .checked_pow(d)
            .filter(|&q| q <= FIELD_SIZE_CAP)
            .ok_or(FieldError::TooLarge(u64::MAX))?;
        if d == 0 {
            return Err(FieldError::TooLarge(0));
        }
        let modulus = find_modulus(ell, d);
        let mut ctx = FqCtx {
            ell,
            d,
            q,
            modulus,
            sqrt_tab: Vec::new(),
        };
        let mut tab = vec![NO_SQRT; q as usize];
        for code in 0..q {
            let t = ctx.dec(code);
            let sq = ctx.enc(&ctx.mul(&t, &t));
            if tab[sq as usize] == NO_SQRT {
                tab[sq as usize] = code;
            }
        }
        ctx.sqrt_tab = tab;
        Ok(Arc::new(ctx))
    }

    pub fn prime(ell: u64) -> Result<Arc<FqCtx>, FieldError> {
        FqCtx::new(ell, 1)
    }

    pub fn zero(&self) -> FqElem {
        vec![0; self.d as usize]
    }
    pub fn one(&self) -> FqElem {
        self.scalar(1)
    }
    pub fn scalar(&self, n: u64) -> FqElem {
        let mut e = self.zero();
        e[0] = n % self.ell;
        e
    }
    pub fn from_int(&self, n: &Int) -> FqElem {
        let r = n.mod_floor(&Int::from(self.ell));
        self.scalar(r.to_u64().unwrap())
    }
    pub fn from_rat(&self, x: &Rat) -> Result<FqElem, FieldError> {
        let den = self.from_int(x.denom());
        if self.is_zero(&den) {
            return Err(FieldError::NonIntegral(self.ell));
        }
        let num = self.from_int(x.numer());
        Ok(self.mul(&num, &self.inv(&den).unwrap()))
    }

    pub fn enc(&self, e: &FqElem) -> u64 {
        let mut code = 0u64;
        for &c in e.iter().rev() {
            code = code * self.ell + c;
        }
        code
    }
    pub fn dec(&self, mut code: u64) -> FqElem {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = code % self.ell;
            code /= self.ell;
        }
        e
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + y) % self.ell)
            .collect()
    }
    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.ell - y) % self.ell)
            .collect()
    }
    pub fn neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|&x| (self.ell - x) % self.ell).collect()
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let d = self.d as usize;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.ell;
            }
        }
        // reduce by the monic modulus from the top down
        for i in (d..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mk) in self.modulus.iter().enumerate().take(d) {
                let idx = i - d + k;
                let sub = (c * mk) % self.ell;
                prod[idx] = (prod[idx] + self.ell - sub) % self.ell;
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut result = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.mul(a, &self.inv(b).expect("division by zero in F_q"))
    }

    /// A square root of `a` if one exists (the smallest-encoded one).
    pub fn sqrt(&self, a: &FqElem) -> Option<FqElem> {
        let code = self.sqrt_tab[self.enc(a) as usize];
        (code != NO_SQRT).then(|| self.dec(code))
    }

    /// Quadratic character: 0 at zero, ±1 otherwise.  Meaningful for odd ℓ.
    pub fn chi(&self, a: &FqElem) -> i32 {
        if self.is_zero(a) {
            0
        } else if self.sqrt_tab[self.enc(a) as usize] != NO_SQRT {
            1
        } else {
            -1
        }
    }
}

/// A Weierstrass model with coefficients reduced into F_q.
#[derive(Debug, Clone)]
pub struct ReducedCurve {
    pub ctx: Arc<FqCtx>,
    pub a: [FqElem; 5],
    /// True when ℓ divides the discriminant of the input model.
    pub singular: bool,
}

pub fn reduce_curve(
    model: &WeierstrassModel,
    ctx: &Arc<FqCtx>,
) -> Result<ReducedCurve, FieldError> {
    let a = [
        ctx.from_rat(&model.a1)?,
        ctx.from_rat(&model.a2)?,
        ctx.from_rat(&model.a3)?,
        ctx.from_rat(&model.a4)?,
        ctx.from_rat(&model.a6)?,
    ];
    let singular = ctx.is_zero(&ctx.from_rat(&model.discriminant())?);
    Ok(ReducedCurve {
        ctx: Arc::clone(ctx),
        a,
        singular,
    })
}

/// Reduce a rational point; a p-adically polar point (v_ℓ(x) < 0) lands at O.
pub fn reduce_point(p: &RationalPoint, curve: &ReducedCurve) -> Result<FqPoint, FieldError> {
    let ctx = &curve.ctx;
    let (x, y) = match p.coords() {
        None => return Ok(None),
        Some(c) => c,
    };
    let ell = Int::from(ctx.ell);
    let den_divisible =
        |q: &Rat| -> bool { q.denom().mod_floor(&ell).is_zero() };
    if den_divisible(x) {
        // on an ℓ-integral model this forces v(y) < 0 too: the point reduces to O
        debug_assert!(den_divisible(y));
        return Ok(None);
    }
    let rx = ctx.from_rat(x)?;
    let ry = ctx.from_rat(y)?;
    debug_assert!(curve.contains(&rx, &ry));
    Ok(Some((rx, ry)))
}

impl ReducedCurve {
    fn b_invariants(&self) -> (FqElem, FqElem, FqElem) {
        let c = &self.ctx;
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = c.add(&c.mul(a1, a1), &c.mul(&c.scalar(4), a2));
        let b4 = c.add(&c.mul(&c.scalar(2), a4), &c.mul(a1, a3));
        let b6 = c.add(&c.mul(a3, a3), &c.mul(&c.scalar(4), a6));
        (b2, b4, b6)
    }

    pub fn contains(&self, x: &FqElem, y: &FqElem) -> bool {
        let c = &self.ctx;
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = c.add(
            &c.add(&c.mul(y, y), &c.mul(&c.mul(a1, x), y)),
            &c.mul(a3, y),
        );
        let rhs = c.add(
            &c.add(
                &c.add(&c.mul(&c.mul(x, x), x), &c.mul(a2, &c.mul(x, x))),
                &c.mul(a4, x),
            ),
            a6,
        );
        lhs == rhs
    }

    pub fn neg_point(&self, p: &FqPoint) -> FqPoint {
        let c = &self.ctx;
        p.as_ref().map(|(x, y)| {
            let ny = c.sub(&c.neg(y), &c.add(&c.mul(&self.a[0], x), &self.a[2]));
            (x.clone(), ny)
        })
    }

    pub fn add_points(&self, p: &FqPoint, q: &FqPoint) -> FqPoint {
        let c = &self.ctx;
        let [a1, a2, a3, a4, a6] = &self.a;
        let (x1, y1) = match p {
            None => return q.clone(),
            Some(c) => c,
        };
        let (x2, y2) = match q {
            None => return p.clone(),
            Some(c) => c,
        };
        let (lambda, nu) = if x1 == x2 {
            let denom = c.add(&c.add(&c.mul(&c.scalar(2), y1), &c.mul(a1, x1)), a3);
            if y1 != y2 || c.is_zero(&denom) {
                return None;
            }
            let num_l = c.sub(
                &c.add(
                    &c.add(
                        &c.mul(&c.scalar(3), &c.mul(x1, x1)),
                        &c.mul(&c.scalar(2), &c.mul(a2, x1)),
                    ),
                    a4,
                ),
                &c.mul(a1, y1),
            );
            let num_n = c.sub(
                &c.add(
                    &c.add(
                        &c.neg(&c.mul(&c.mul(x1, x1), x1)),
                        &c.mul(a4, x1),
                    ),
                    &c.mul(&c.scalar(2), a6),
                ),
                &c.mul(a3, y1),
            );
            (c.div(&num_l, &denom), c.div(&num_n, &denom))
        } else {
            let dx = c.sub(x2, x1);
            let lambda = c.div(&c.sub(y2, y1), &dx);
            let nu = c.div(&c.sub(&c.mul(y1, x2), &c.mul(y2, x1)), &dx);
            (lambda, nu)
        };
        let x3 = c.sub(
            &c.sub(
                &c.sub(&c.add(&c.mul(&lambda, &lambda), &c.mul(a1, &lambda)), a2),
                x1,
            ),
            x2,
        );
        let y3 = c.sub(
            &c.sub(&c.neg(&c.mul(&c.add(&lambda, a1), &x3)), &nu),
            a3,
        );
        Some((x3, y3))
    }

    pub fn mul_point(&self, k: u64, p: &FqPoint) -> FqPoint {
        if k == 0 {
            return None;
        }
        let mut acc: FqPoint = None;
        let mut bit = 63 - k.leading_zeros();
        loop {
            acc = self.add_points(&acc, &acc);
            if (k >> bit) & 1 == 1 {
                acc = self.add_points(&acc, p);
            }
            if bit == 0 {
                break;
            }
            bit -= 1;
        }
        acc
    }

    /// All points, infinity first; deterministic ordering by x then y code.
    pub fn points(&self) -> Result<Vec<FqPoint>, FieldError> {
        if self.singular {
            return Err(FieldError::SingularReduction);
        }
        let c = &self.ctx;
        let mut pts: Vec<FqPoint> = vec![None];
        if c.ell == 2 {
            if c.q > 1024 {
                return Err(FieldError::TooLarge(c.q));
            }
            for xc in 0..c.q {
                let x = c.dec(xc);
                for yc in 0..c.q {
                    let y = c.dec(yc);
                    if self.contains(&x, &y) {
                        pts.push(Some((x.clone(), y)));
                    }
                }
            }
            return Ok(pts);
        }
        let (b2, b4, b6) = self.b_invariants();
        let half = c.inv(&c.scalar(2)).unwrap();
        let [a1, _, a3, _, _] = &self.a;
        for xc in 0..c.q {
            let x = c.dec(xc);
            // w² = 4x³ + b2·x² + 2·b4·x + b6 where w = 2y + a1·x + a3
            let g = c.add(
                &c.mul(
                    &c.add(
                        &c.mul(&c.add(&c.mul(&c.scalar(4), &x), &b2), &x),
                        &c.mul(&c.scalar(2), &b4),
                    ),
                    &x,
                ),
                &b6,
            );
            if let Some(w) = c.sqrt(&g) {
                let y1 = c.mul(&c.sub(&w, &c.add(&c.mul(a1, &x), a3)), &half);
                pts.push(Some((x.clone(), y1)));
                if !c.is_zero(&w) {
                    let nw = c.neg(&w);
                    let y2 = c.mul(&c.sub(&nw, &c.add(&c.mul(a1, &x), a3)), &half);
                    pts.push(Some((x, y2)));
                }
            }
        }
        Ok(pts)
    }

    pub fn count_points(&self) -> Result<u64, FieldError> {
        if self.singular {
            return Err(FieldError::SingularReduction);
        }
        let c = &self.ctx;
        if c.ell == 2 {
            return Ok(self.points()?.len() as u64);
        }
        let (b2, b4, b6) = self.b_invariants();
        let mut total: i64 = 1; // infinity
        for xc in 0..c.q {
            let x = c.dec(xc);
            let g = c.add(
                &c.mul(
                    &c.add(
                        &c.mul(&c.add(&c.mul(&c.scalar(4), &x), &b2), &x),
                        &c.mul(&c.scalar(2), &b4),
                    ),
                    &x,
                ),
                &b6,
            );
            total += 1 + c.chi(&g) as i64;
        }
        Ok(total as u64)
    }

    /// a = ℓ^d + 1 − |E(F_q)|, with the Hasse bound asserted.
    pub fn trace_of_frobenius(&self) -> Result<i64, FieldError> {
        let n = self.count_points()? as i64;
        let a = self.ctx.q as i64 + 1 - n;
        if (a as i128) * (a as i128) > 4 * self.ctx.q as i128 {
            return Err(FieldError::HasseViolated(a, self.ctx.ell));
        }
        Ok(a)
    }
}

/// |E(F_{ℓ^d})| from the trace over F_ℓ via t_k = a·t_{k−1} − ℓ·t_{k−2}.
pub fn extension_count(a_ell: i64, ell: u64, d: u32) -> Result<u64, FieldError> {
    if (a_ell as i128) * (a_ell as i128) > 4 * ell as i128 {
        return Err(FieldError::HasseViolated(a_ell, ell));
    }
    let mut t_prev: i128 = 2;
    let mut t_cur: i128 = a_ell as i128;
    if d == 0 {
        return Err(FieldError::TooLarge(0));
    }
    for _ in 2..=d {
        let next = a_ell as i128 * t_cur - ell as i128 * t_prev;
        t_prev = t_cur;
        t_cur = next;
    }
    let qd = (ell as i128).pow(d);
    Ok((qd + 1 - t_cur) as u64)
}

fn enc_point(ctx: &FqCtx, p: &FqPoint) -> (u64, u64) {
    match p {
        None => (u64::MAX, u64::MAX),
        Some((x, y)) => (ctx.enc(x), ctx.enc(y)),
    }
}

/// The p-primary part of E(F_q) as Z/p^a × Z/p^b (a ≥ b) with generators,
/// ready for membership and coordinate queries.
#[derive(Debug, Clone)]
pub struct PPrimaryStructure {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub seed: u64,
    /// Group order and the projector N/p^v · ((N/p^v)^{-1} mod p^v).
    pub group_order: u64,
    project: u64,
    g1: FqPoint,
    g2: FqPoint,
}

fn p_power_order(curve: &ReducedCurve, p: u64, pt: &FqPoint, cap: u32) -> u32 {
    let mut t = pt.clone();
    for k in 0..=cap {
        if t.is_none() {
            return k;
        }
        t = curve.mul_point(p, &t);
    }
    unreachable!("order exceeds the p-Sylow exponent")
}

/// Order probing by seeded random x-sampling (fast path proves the Sylow
/// cyclic); exhaustive enumeration settles every remaining case exactly.
pub fn p_primary_structure(
    curve: &ReducedCurve,
    p: u64,
    seed: u64,
) -> Result<PPrimaryStructure, FieldError> {
    if curve.singular {
        return Err(FieldError::SingularReduction);
    }
    let ctx = &curve.ctx;
    let n = curve.count_points()?;
    let mut v = 0u32;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    let pv = p.pow(v);
    let trivial = PPrimaryStructure {
        p,
        a: 0,
        b: 0,
        seed,
        group_order: n,
        project: 0,
        g1: None,
        g2: None,
    };
    if v == 0 {
        return Ok(trivial);
    }
    // project = m·(m⁻¹ mod p^v): kills the prime-to-p part, identity on the Sylow
    let m_inv = inv_mod_pow(m % pv, pv);
    let project = m.checked_mul(m_inv).expect("projector fits in u64");

    // Cyclic fast path by sampling (the only consumer of the seed).  When
    // char = p or μ_p ⊄ F_q the rank is 1 and this almost always settles it;
    // exhaustive enumeration below makes the answer exact regardless.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(u32, FqPoint)> = None;
    if ctx.ell != 2 {
        let (b2, b4, b6) = curve.b_invariants();
        let half = ctx.inv(&ctx.scalar(2)).unwrap();
        for _ in 0..64 {
            let x = ctx.dec(rng.gen_range(0..ctx.q));
            let g = ctx.add(
                &ctx.mul(
                    &ctx.add(
                        &ctx.mul(&ctx.add(&ctx.mul(&ctx.scalar(4), &x), &b2), &x),
                        &ctx.mul(&ctx.scalar(2), &b4),
                    ),
                    &x,
                ),
                &b6,
            );
            let Some(w) = ctx.sqrt(&g) else { continue };
            let y = ctx.mul(
                &ctx.sub(&w, &ctx.add(&ctx.mul(&curve.a[0], &x), &curve.a[2])),
                &half,
            );
            let pt: FqPoint = Some((x, y));
            debug_assert!(curve.mul_point(n, &pt).is_none()); // order | N
            let s = curve.mul_point(project, &pt);
            let k = p_power_order(curve, p, &s, v);
            if best.as_ref().map_or(true, |(bk, _)| k > *bk) {
                best = Some((k, s));
            }
            if k == v {
                break;
            }
        }
    }
    if let Some((k, g1)) = best {
        if k == v {
            return Ok(PPrimaryStructure {
                p,
                a: v,
                b: 0,
                seed,
                group_order: n,
                project,
                g1,
                g2: None,
            });
        }
    }

    // exact path: enumerate the Sylow subgroup
    let mut sylow: Vec<FqPoint> = Vec::new();
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    for pt in curve.points()? {
        let s = curve.mul_point(project, &pt);
        if seen.insert(enc_point(ctx, &s)) {
            sylow.push(s);
        }
    }
    debug_assert_eq!(sylow.len() as u64, pv);
    sylow.sort_by_key(|s| enc_point(ctx, s));

    let mut alpha = 0u32;
    let mut g1: FqPoint = None;
    for s in &sylow {
        let k = p_power_order(curve, p, s, v);
        if k > alpha {
            alpha = k;
            g1 = s.clone();
            if alpha == v {
                break;
            }
        }
    }
    let beta = v - alpha;
    let mut g2: FqPoint = None;
    if beta > 0 {
        let span: HashSet<(u64, u64)> = (0..p.pow(alpha))
            .map(|k| enc_point(ctx, &curve.mul_point(k, &g1)))
            .collect();
        let pb1 = p.pow(beta - 1);
        for h in &sylow {
            if p_power_order(curve, p, h, v) == beta
                && !span.contains(&enc_point(ctx, &curve.mul_point(pb1, h)))
            {
                g2 = h.clone();
                break;
            }
        }
        assert!(g2.is_some(), "rank-2 p-group must admit a complement");
    }
    Ok(PPrimaryStructure {
        p,
        a: alpha,
        b: beta,
        seed,
        group_order: n,
        project,
        g1,
        g2,
    })
}

fn inv_mod_pow(a: u64, m: u64) -> u64 {
    // gcd(a, m) = 1
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    debug_assert_eq!(r, 1);
    (((t % m as i128) + m as i128) % m as i128) as u64
}

/// Coordinates (i, j) of the Sylow projection of `pt` with respect to the
/// generators: pt_S = i·g1 + j·g2, 0 ≤ i < p^a, 0 ≤ j < p^b.
fn sylow_coordinates(
    curve: &ReducedCurve,
    st: &PPrimaryStructure,
    pt: &FqPoint,
) -> (u64, u64) {
    debug_assert!(st.a > 0);
    let target = curve.mul_point(st.project, pt);
    let pa = st.p.pow(st.a);
    let pb = st.p.pow(st.b);
    let mut acc1: FqPoint = None;
    for i in 0..pa {
        let mut acc2 = acc1.clone();
        for j in 0..pb {
            if acc2 == target {
                return (i, j);
            }
            acc2 = curve.add_points(&acc2, &st.g2);
        }
        acc1 = curve.add_points(&acc1, &st.g1);
    }
    unreachable!("generators span the p-Sylow subgroup")
}

/// Is the reduction of a point in p·E(F_q)?  Exact via the Sylow structure.
pub fn in_p_multiple(curve: &ReducedCurve, st: &PPrimaryStructure, pt: &FqPoint) -> bool {
    if st.a == 0 {
        return true; // multiplication by p is onto the prime-to-p part
    }
    let (i, j) = sylow_coordinates(curve, st, pt);
    i % st.p == 0 && j % st.p == 0
}

/// The class of `pt` in E(F_q)/p·E(F_q) ≅ (Z/p)^rank as 0, 1 or 2 digits.
pub fn coords_mod_p(curve: &ReducedCurve, st: &PPrimaryStructure, pt: &FqPoint) -> Vec<u64> {
    let mut out = Vec::new();
    if st.a == 0 {
        return out;
    }
    let (i, j) = sylow_coordinates(curve, st, pt);
    out.push(i % st.p);
    if st.b > 0 {
        out.push(j % st.p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::WeierstrassModel;

    fn curve_over(coeffs: [i64; 5], ell: u64, d: u32) -> ReducedCurve {
        let m = WeierstrassModel::from_int_coeffs(coeffs).unwrap();
        reduce_curve(&m, &FqCtx::new(ell, d).unwrap()).unwrap()
    }

    #[test]
    fn smallest_moduli_are_reproducible() {
        assert_eq!(FqCtx::new(2, 2).unwrap().modulus, vec![1, 1, 1]); // x²+x+1
        assert_eq!(FqCtx::new(3, 2).unwrap().modulus, vec![1, 0, 1]); // x²+1
        assert_eq!(
            FqCtx::new(5, 5).unwrap().modulus,
            vec![1, 4, 0, 0, 0, 1] // x⁵+4x+1
        );
        assert_eq!(FqCtx::new(7, 1).unwrap().modulus, vec![0, 1]); // x
    }

    #[test]
    fn field_arithmetic_in_f9() {
        let f9 = FqCtx::new(3, 2).unwrap();
        // modulus x²+1: (x+1)² = x²+2x+1 = 2x
        let a = vec![1, 1];
        assert_eq!(f9.mul(&a, &a), vec![0, 2]);
        for code in 1..9 {
            let e = f9.dec(code);
            let i = f9.inv(&e).unwrap();
            assert_eq!(f9.mul(&e, &i), f9.one());
        }
        assert!(f9.inv(&f9.zero()).is_none());
    }

    #[test]
    fn sqrt_table_is_consistent() {
        let f25 = FqCtx::new(5, 2).unwrap();
        let mut squares = 0;
        for code in 0..25 {
            let e = f25.dec(code);
            if let Some(r) = f25.sqrt(&e) {
                assert_eq!(f25.mul(&r, &r), e);
                squares += 1;
            } else {
                assert_eq!(f25.chi(&e), -1);
            }
        }
        assert_eq!(squares, 13); // (q+1)/2 including zero
    }

    #[test]
    fn brute_force_counts_match_known_values() {
        assert_eq!(curve_over([0, -1, 1, 0, 0], 5, 1).count_points().unwrap(), 5);
        assert_eq!(curve_over([0, 1, 1, 0, 0], 3, 1).count_points().unwrap(), 6);
        assert_eq!(curve_over([0, 1, 1, 0, 0], 2, 1).count_points().unwrap(), 5);
        assert_eq!(
            curve_over([0, 1, 1, 0, 0], 13, 1).count_points().unwrap(),
            19
        );
        assert_eq!(
            curve_over([0, 0, 0, -2401, 1], 3, 1).count_points().unwrap(),
            7
        );
    }

    #[test]
    fn char_two_extension_count_matches_brute_force() {
        let c = curve_over([0, 1, 1, 0, 0], 2, 2);
        assert_eq!(c.count_points().unwrap(), 5);
        assert_eq!(extension_count(-2, 2, 2).unwrap(), 5);
    }

    #[test]
    fn singular_reduction_is_flagged_and_refused() {
        let c = curve_over([0, -1, 1, 0, 0], 11, 1);
        assert!(c.singular);
        assert_eq!(c.count_points(), Err(FieldError::SingularReduction));
    }

    #[test]
    fn extension_counts_by_trace_recurrence() {
        assert_eq!(extension_count(1, 5, 1).unwrap(), 5);
        assert_eq!(extension_count(1, 5, 5).unwrap(), 3025);
        assert_eq!(extension_count(-2, 3, 1).unwrap(), 6);
        assert_eq!(
            extension_count(5, 3, 1),
            Err(FieldError::HasseViolated(5, 3))
        );
    }

    #[test]
    fn extension_field_count_agrees_with_recurrence() {
        let c = curve_over([0, -1, 1, 0, 0], 5, 5);
        assert_eq!(c.count_points().unwrap(), 3025);
        assert_eq!(c.trace_of_frobenius().unwrap(), 5i64.pow(5) + 1 - 3025);
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let m = WeierstrassModel::from_int_coeffs([0, 1, 1, 0, 0]).unwrap();
        let c = reduce_curve(&m, &FqCtx::prime(5).unwrap()).unwrap();
        let g = RationalPoint::from_ints(&m, 0, 0).unwrap();
        for k in 1..8i64 {
            for j in 1..8i64 {
                let lhs = reduce_point(&g.mul_i64(k + j), &c).unwrap();
                let rhs = c.add_points(
                    &reduce_point(&g.mul_i64(k), &c).unwrap(),
                    &reduce_point(&g.mul_i64(j), &c).unwrap(),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn polar_points_reduce_to_infinity() {
        let m = WeierstrassModel::from_int_coeffs([0, 1, 1, 0, 0]).unwrap();
        let c = reduce_curve(&m, &FqCtx::prime(13).unwrap()).unwrap();
        let g = RationalPoint::from_ints(&m, 0, 0).unwrap();
        // 19G has 13^6 in its x-denominator
        assert_eq!(reduce_point(&g.mul_i64(19), &c).unwrap(), None);
        assert!(reduce_point(&g.mul_i64(2), &c).unwrap().is_some());
    }

    #[test]
    fn five_primary_structure_over_f_5_5() {
        let c = curve_over([0, -1, 1, 0, 0], 5, 5);
        let st = p_primary_structure(&c, 5, 0).unwrap();
        assert_eq!((st.a, st.b), (2, 0)); // Z/25
        assert_eq!(st.group_order, 3025);

        // the reduced rational 5-torsion point lies in 5·E(F_{5^5})
        let m = WeierstrassModel::from_int_coeffs([0, -1, 1, 0, 0]).unwrap();
        let g = RationalPoint::from_ints(&m, 0, 0).unwrap();
        let gbar = reduce_point(&g, &c).unwrap();
        assert!(in_p_multiple(&c, &st, &gbar));
        // ... but not over F_5 itself, where the 5-part has order 5
        let c1 = curve_over([0, -1, 1, 0, 0], 5, 1);
        let st1 = p_primary_structure(&c1, 5, 0).unwrap();
        assert_eq!((st1.a, st1.b), (1, 0));
        let gbar1 = reduce_point(&g, &c1).unwrap();
        assert!(!in_p_multiple(&c1, &st1, &gbar1));
    }

    #[test]
    fn trivial_p_part_when_p_misses_the_order() {
        let c = curve_over([0, 1, 1, 0, 0], 3, 1);
        let st = p_primary_structure(&c, 13, 7).unwrap();
        assert_eq!((st.a, st.b), (0, 0));
        let any = c.points().unwrap()[1].clone();
        assert!(in_p_multiple(&c, &st, &any));
        assert!(coords_mod_p(&c, &st, &any).is_empty());
    }

    #[test]
    fn rank_two_structure_with_full_two_torsion() {
        let c = curve_over([0, 0, 0, -1, 0], 5, 1);
        assert_eq!(c.count_points().unwrap(), 8);
        let st = p_primary_structure(&c, 2, 3).unwrap();
        assert_eq!((st.a, st.b), (2, 1)); // Z/4 × Z/2
        for pt in c.points().unwrap() {
            let coords = coords_mod_p(&c, &st, &pt);
            assert_eq!(coords.len(), 2);
            assert_eq!(
                in_p_multiple(&c, &st, &pt),
                coords.iter().all(|&d| d == 0)
            );
        }
    }

    #[test]
    fn cyclic_seven_part_membership() {
        let c = curve_over([0, 0, 0, -2401, 1], 3, 1);
        let st = p_primary_structure(&c, 7, 11).unwrap();
        assert_eq!((st.a, st.b), (1, 0)); // |E(F_3)| = 7
        let pt = c.points().unwrap()[1].clone();
        assert!(!in_p_multiple(&c, &st, &pt)); // 7E(F_3) = O alone
        assert!(in_p_multiple(&c, &st, &None));
        assert_eq!(coords_mod_p(&c, &st, &None), vec![0]);
        assert_ne!(coords_mod_p(&c, &st, &pt), vec![0]);
    }

    #[test]
    fn sampled_structure_is_seed_stable() {
        let c = curve_over([0, -1, 1, 0, 0], 5, 5);
        let s1 = p_primary_structure(&c, 5, 42).unwrap();
        let s2 = p_primary_structure(&c, 5, 42).unwrap();
        assert_eq!(enc_point(&c.ctx, &s1.g1), enc_point(&c.ctx, &s2.g1));
        assert_eq!((s1.a, s1.b), (s2.a, s2.b));
    }
}
