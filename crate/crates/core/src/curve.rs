//! Long Weierstrass models over Q, the exact group law, and the standard
//! (u, r, s, t) changes of variables.
//!
//! Every [`RationalPoint`] carries a shared handle to the model it lives on;
//! combining points from different models is a bug in the caller and panics.
//! All arithmetic is exact over `Rat`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, Int, Rat};

pub mod torsion;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("singular model: discriminant is zero")]
    Singular,
    #[error("point ({0}, {1}) is not on the curve")]
    NotOnCurve(Rat, Rat),
    #[error("torsion bound could not be fully factored; raise the effort")]
    LutzFactorizationIncomplete,
}

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 with rational coefficients and
/// nonzero discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

impl WeierstrassModel {
    pub fn new(a: [Rat; 5]) -> Result<Arc<Self>, CurveError> {
        let [a1, a2, a3, a4, a6] = a;
        let m = WeierstrassModel { a1, a2, a3, a4, a6 };
        if m.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(Arc::new(m))
    }

    pub fn from_int_coeffs(a: [i64; 5]) -> Result<Arc<Self>, CurveError> {
        Self::new(a.map(rat_int))
    }

    pub fn b2(&self) -> Rat {
        &self.a1 * &self.a1 + rat_int(4) * &self.a2
    }
    pub fn b4(&self) -> Rat {
        rat_int(2) * &self.a4 + &self.a1 * &self.a3
    }
    pub fn b6(&self) -> Rat {
        &self.a3 * &self.a3 + rat_int(4) * &self.a6
    }
    pub fn b8(&self) -> Rat {
        &self.a1 * &self.a1 * &self.a6 + rat_int(4) * &self.a2 * &self.a6
            - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4
    }
    pub fn c4(&self) -> Rat {
        let b2 = self.b2();
        &b2 * &b2 - rat_int(24) * self.b4()
    }
    pub fn c6(&self) -> Rat {
        let b2 = self.b2();
        let b4 = self.b4();
        -(&b2 * &b2 * &b2) + rat_int(36) * &b2 * &b4 - rat_int(216) * self.b6()
    }
    pub fn discriminant(&self) -> Rat {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - rat_int(8) * &b4 * &b4 * &b4 - rat_int(27) * &b6 * &b6
            + rat_int(9) * &b2 * &b4 * &b6
    }
    pub fn j_invariant(&self) -> Rat {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn is_integral(&self) -> bool {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
            .iter()
            .all(|a| a.denom().is_one())
    }

    /// Clear denominators: returns an integral model together with the map
    /// *from this model to it*.
    pub fn integral_model(self: &Arc<Self>) -> (Arc<WeierstrassModel>, IsomorphismData) {
        if self.is_integral() {
            return (Arc::clone(self), IsomorphismData::identity());
        }
        let mut m = Int::one();
        for a in [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6] {
            m = num_integer::lcm(m, a.denom().clone());
        }
        let iso = IsomorphismData {
            u: Rat::new(Int::one(), m),
            r: Rat::zero(),
            s: Rat::zero(),
            t: Rat::zero(),
        };
        (iso.apply(self), iso)
    }

    /// Right-hand side x³ + a2·x² + a4·x + a6.
    pub fn rhs(&self, x: &Rat) -> Rat {
        ((x + &self.a2) * x + &self.a4) * x + &self.a6
    }

    pub fn contains(&self, x: &Rat, y: &Rat) -> bool {
        y * y + &self.a1 * x * y + &self.a3 * y == self.rhs(x)
    }
}

/// A point on a fixed model: either the origin O or an affine pair.
#[derive(Debug, Clone)]
pub struct RationalPoint {
    model: Arc<WeierstrassModel>,
    coords: Option<(Rat, Rat)>,
}

impl PartialEq for RationalPoint {
    fn eq(&self, other: &Self) -> bool {
        *self.model == *other.model && self.coords == other.coords
    }
}
impl Eq for RationalPoint {}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coords {
            None => write!(f, "O"),
            Some((x, y)) => write!(f, "({x}, {y})"),
        }
    }
}

impl RationalPoint {
    pub fn infinity(model: &Arc<WeierstrassModel>) -> Self {
        RationalPoint {
            model: Arc::clone(model),
            coords: None,
        }
    }

    pub fn new(model: &Arc<WeierstrassModel>, x: Rat, y: Rat) -> Result<Self, CurveError> {
        if !model.contains(&x, &y) {
            return Err(CurveError::NotOnCurve(x, y));
        }
        Ok(RationalPoint {
            model: Arc::clone(model),
            coords: Some((x, y)),
        })
    }

    pub fn from_ints(model: &Arc<WeierstrassModel>, x: i64, y: i64) -> Result<Self, CurveError> {
        Self::new(model, rat_int(x), rat_int(y))
    }

    pub fn model(&self) -> &Arc<WeierstrassModel> {
        &self.model
    }
    pub fn is_infinity(&self) -> bool {
        self.coords.is_none()
    }
    pub fn coords(&self) -> Option<(&Rat, &Rat)> {
        self.coords.as_ref().map(|(x, y)| (x, y))
    }
    pub fn x(&self) -> Option<&Rat> {
        self.coords.as_ref().map(|(x, _)| x)
    }
    pub fn y(&self) -> Option<&Rat> {
        self.coords.as_ref().map(|(_, y)| y)
    }

    fn assert_same_model(&self, other: &RationalPoint) {
        assert!(
            *self.model == *other.model,
            "group law across different Weierstrass models: {} vs {}",
            self.model,
            other.model
        );
    }

    pub fn neg(&self) -> RationalPoint {
        match &self.coords {
            None => self.clone(),
            Some((x, y)) => {
                let m = &self.model;
                let ny = -y - &m.a1 * x - &m.a3;
                RationalPoint {
                    model: Arc::clone(m),
                    coords: Some((x.clone(), ny)),
                }
            }
        }
    }

    pub fn add(&self, other: &RationalPoint) -> RationalPoint {
        self.assert_same_model(other);
        let (x1, y1) = match &self.coords {
            None => return other.clone(),
            Some(c) => c,
        };
        let (x2, y2) = match &other.coords {
            None => return self.clone(),
            Some(c) => c,
        };
        let m = &self.model;
        let (lambda, nu) = if x1 == x2 {
            // vertical line (sum is O) unless the points coincide off 2-torsion
            let denom = rat_int(2) * y1 + &m.a1 * x1 + &m.a3;
            if y1 != y2 || denom.is_zero() {
                return RationalPoint::infinity(m);
            }
            let lambda =
                (rat_int(3) * x1 * x1 + rat_int(2) * &m.a2 * x1 + &m.a4 - &m.a1 * y1) / &denom;
            let nu = (-(x1 * x1 * x1) + &m.a4 * x1 + rat_int(2) * &m.a6 - &m.a3 * y1) / &denom;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + &m.a1 * &lambda - &m.a2 - x1 - x2;
        let y3 = -(&lambda + &m.a1) * &x3 - &nu - &m.a3;
        RationalPoint {
            model: Arc::clone(m),
            coords: Some((x3, y3)),
        }
    }

    pub fn sub(&self, other: &RationalPoint) -> RationalPoint {
        self.add(&other.neg())
    }

    pub fn double(&self) -> RationalPoint {
        self.add(self)
    }

    pub fn scalar_mul(&self, k: &Int) -> RationalPoint {
        if k.is_negative() {
            return self.neg().scalar_mul(&-k);
        }
        let mut acc = RationalPoint::infinity(&self.model);
        for i in (0..k.bits()).rev() {
            acc = acc.double();
            if k.bit(i) {
                acc = acc.add(self);
            }
        }
        acc
    }

    pub fn mul_i64(&self, k: i64) -> RationalPoint {
        self.scalar_mul(&Int::from(k))
    }
}

/// Change of variables x = u²x' + r, y = u³y' + u²s·x' + t between models.
/// `apply` maps a model to its image; `transport` carries points forward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsomorphismData {
    pub u: Rat,
    pub r: Rat,
    pub s: Rat,
    pub t: Rat,
}

impl IsomorphismData {
    pub fn new(u: Rat, r: Rat, s: Rat, t: Rat) -> Self {
        assert!(!u.is_zero(), "scaling factor u must be nonzero");
        IsomorphismData { u, r, s, t }
    }

    pub fn identity() -> Self {
        IsomorphismData {
            u: rat_int(1),
            r: Rat::zero(),
            s: Rat::zero(),
            t: Rat::zero(),
        }
    }

    /// Translation-only map (u = 1), the shape used by reduction-type
    /// bookkeeping.
    pub fn translation(r: Rat, s: Rat, t: Rat) -> Self {
        IsomorphismData {
            u: rat_int(1),
            r,
            s,
            t,
        }
    }

    /// Pure rescaling x ↦ x/u², y ↦ y/u³.
    pub fn scaling(u: Rat) -> Self {
        Self::new(u, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn apply(&self, m: &WeierstrassModel) -> Arc<WeierstrassModel> {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let a1 = (&m.a1 + rat_int(2) * s) / u;
        let a2 = (&m.a2 - s * &m.a1 + rat_int(3) * r - s * s) / &u2;
        let a3 = (&m.a3 + r * &m.a1 + rat_int(2) * t) / &u3;
        let a4 = (&m.a4 - s * &m.a3 + rat_int(2) * r * &m.a2 - (t + r * s) * &m.a1
            + rat_int(3) * r * r
            - rat_int(2) * s * t)
            / &u4;
        let a6 = (&m.a6 + r * &m.a4 + r * r * &m.a2 + r * r * r
            - t * &m.a3
            - t * t
            - r * t * &m.a1)
            / &u6;
        Arc::new(WeierstrassModel { a1, a2, a3, a4, a6 })
    }

    /// Carry a point of the source model onto the image model.
    pub fn transport(&self, p: &RationalPoint, target: &Arc<WeierstrassModel>) -> RationalPoint {
        match &p.coords {
            None => RationalPoint::infinity(target),
            Some((x, y)) => {
                let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
                let u2 = u * u;
                let u3 = &u2 * u;
                let xr = x - r;
                let nx = &xr / &u2;
                let ny = (y - s * &xr - t) / &u3;
                debug_assert!(target.contains(&nx, &ny));
                RationalPoint {
                    model: Arc::clone(target),
                    coords: Some((nx, ny)),
                }
            }
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &IsomorphismData) -> IsomorphismData {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.t);
        let u1sq = u1 * u1;
        IsomorphismData {
            u: u1 * u2,
            r: r1 + &u1sq * r2,
            s: s1 + u1 * s2,
            t: t1 + &u1sq * u1 * t2 + &u1sq * s1 * r2,
        }
    }

    pub fn inverse(&self) -> IsomorphismData {
        let (u, r, s, t) = (&self.u, &self.r, &self.s, &self.t);
        let u2 = u * u;
        let u3 = &u2 * u;
        IsomorphismData {
            u: rat_int(1) / u,
            r: -(r / &u2),
            s: -(s / u),
            t: (r * s - t) / &u3,
        }
    }
}
