//! The decision layer: reduction-type conditions, valuation-based witness
//! certificates with a formal-group cross-check, divisibility and independence
//! proofs through reduction mod good primes, and the assembled lower bounds.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{rat_int, vp, FactorEffort, Int, Rat, Valuation};
use crate::curve::torsion::torsion_subgroup;
use crate::curve::{IsomorphismData, RationalPoint, WeierstrassModel};
use crate::finite_field::{
    coords_mod_p, in_p_multiple, p_primary_structure, reduce_curve, reduce_point, FieldError,
    FqCtx,
};
use crate::formal::e1_divisibility;
use crate::local::{
    bad_primes, bad_primes_with_effort, minimal_model_at, PotentialReduction, ReductionKind,
};

/// Largest multiple of each base tried during the witness search.
pub const DEFAULT_K_MAX: u32 = 50;
/// Auxiliary primes up to this bound feed the divisibility and independence scans.
pub const DEFAULT_AUX_BOUND: u64 = 1000;
/// Good primes up to this bound feed the irreducibility certificate.
pub const DEFAULT_ELL_BOUND: u64 = 200;
/// Extension degrees up to this bound feed the torsion divisibility probe.
pub const DEFAULT_DEGREE_BOUND: u32 = 6;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("bad reduction at {0}: the torsion probe needs a good prime")]
    BadReduction(Int),
    #[error("the supplied point does not have order p")]
    NotOrderP,
    #[error("field arithmetic: {0}")]
    Field(#[from] FieldError),
}

/// No bad prime ℓ ≠ p with v_ℓ(j) < 0 may have p | v_ℓ(j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultStatus {
    Holds,
    Fails(Int),
    Unknown(String),
}

impl fmt::Display for MultStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultStatus::Holds => write!(f, "holds"),
            MultStatus::Fails(ell) => write!(f, "fails at {ell}"),
            MultStatus::Unknown(reason) => write!(f, "unknown: {reason}"),
        }
    }
}

/// For p = 3 no prime ℓ ≠ 3 may have additive potentially good reduction;
/// for p ≥ 5 there is nothing to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AddStatus {
    Vacuous,
    Holds,
    Fails(Int),
    /// Not in the three-variant contract, but honest: at p = 3 an incomplete
    /// discriminant factorization leaves possible additive primes unseen.
    Unknown(String),
}

impl fmt::Display for AddStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AddStatus::Vacuous => write!(f, "vacuous (p >= 5)"),
            AddStatus::Holds => write!(f, "holds"),
            AddStatus::Fails(ell) => write!(f, "fails at {ell}"),
            AddStatus::Unknown(reason) => write!(f, "unknown: {reason}"),
        }
    }
}

/// Whether restriction of classes to the division field is known injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InjStatus {
    ProvedLargeP,
    ProvedTwistTorsion,
    Unknown,
}

impl fmt::Display for InjStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InjStatus::ProvedLargeP => write!(f, "proved (p >= 13)"),
            InjStatus::ProvedTwistTorsion => {
                write!(f, "proved (the twist by p has no rational p-torsion)")
            }
            InjStatus::Unknown => write!(f, "unknown"),
        }
    }
}

/// Whether the mod-p Galois representation is known irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibleStatus {
    Certified(Int),
    Assumed,
    Unknown,
}

impl fmt::Display for IrreducibleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleStatus::Certified(ell) => write!(f, "certified via reduction at {ell}"),
            IrreducibleStatus::Assumed => write!(f, "assumed"),
            IrreducibleStatus::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionsReport {
    pub multiplicative: MultStatus,
    pub additive: AddStatus,
    pub injectivity: InjStatus,
    pub irreducibility: IrreducibleStatus,
}

impl ConditionsReport {
    /// The valuation criterion for witnesses applies only under the
    /// multiplicative and additive conditions.
    pub fn witness_gate(&self) -> bool {
        matches!(self.multiplicative, MultStatus::Holds)
            && matches!(self.additive, AddStatus::Vacuous | AddStatus::Holds)
    }

    /// The doubled class-number bound additionally needs injectivity and
    /// irreducibility.
    pub fn bound_gate(&self) -> bool {
        matches!(
            self.injectivity,
            InjStatus::ProvedLargeP | InjStatus::ProvedTwistTorsion
        ) && matches!(
            self.irreducibility,
            IrreducibleStatus::Certified(_) | IrreducibleStatus::Assumed
        )
    }
}

pub fn check_multiplicative(model: &Arc<WeierstrassModel>, p: &Int) -> MultStatus {
    check_multiplicative_with_effort(model, p, &FactorEffort::default())
}

pub fn check_multiplicative_with_effort(
    model: &Arc<WeierstrassModel>,
    p: &Int,
    effort: &FactorEffort,
) -> MultStatus {
    let bad = match bad_primes_with_effort(model, effort) {
        Ok(bad) => bad,
        Err(e) => return MultStatus::Unknown(e.to_string()),
    };
    for (ell, data) in &bad {
        if ell == p {
            continue;
        }
        if let Some(v) = data.v_j.finite() {
            if v < 0 && (Int::from(v) % p).is_zero() {
                return MultStatus::Fails(ell.clone());
            }
        }
    }
    MultStatus::Holds
}

pub fn check_additive(model: &Arc<WeierstrassModel>, p: &Int) -> AddStatus {
    if *p >= Int::from(5) {
        return AddStatus::Vacuous;
    }
    let bad = match bad_primes(model) {
        Ok(bad) => bad,
        Err(e) => return AddStatus::Unknown(e.to_string()),
    };
    for (ell, data) in &bad {
        if *ell != Int::from(3)
            && data.kind == ReductionKind::Additive
            && data.potential == PotentialReduction::Good
        {
            return AddStatus::Fails(ell.clone());
        }
    }
    AddStatus::Holds
}

/// The quadratic twist of E by d on a short model: y² = x³ − 27c4d²x − 54c6d³.
fn quadratic_twist(model: &Arc<WeierstrassModel>, d: &Int) -> Arc<WeierstrassModel> {
    let (integral, _) = model.integral_model();
    let d = Rat::from(d.clone());
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    WeierstrassModel::new([
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        rat_int(-27) * integral.c4() * d2,
        rat_int(-54) * integral.c6() * d3,
    ])
    .expect("a twist of a nonsingular curve is nonsingular")
}

pub fn check_injectivity(model: &Arc<WeierstrassModel>, p: &Int, n: u32) -> InjStatus {
    debug_assert!(n >= 1);
    if *p >= Int::from(13) {
        return InjStatus::ProvedLargeP;
    }
    match torsion_subgroup(&quadratic_twist(model, p)) {
        Ok(t) if !(Int::from(t.order) % p).is_zero() => InjStatus::ProvedTwistTorsion,
        _ => InjStatus::Unknown,
    }
}

/// x² − a_ℓ x + ℓ irreducible mod p for one good ℓ rules out a Galois-stable
/// line in E[p]; the test is one-sided.
pub fn check_irreducible(
    model: &Arc<WeierstrassModel>,
    p: &Int,
    ell_bound: u64,
) -> IrreducibleStatus {
    let exponent = (p - Int::one()) / Int::from(2);
    let nonresidue = p - Int::one();
    for ell in primes_up_to(ell_bound) {
        if Int::from(ell) == *p {
            continue;
        }
        let Some((reduced_model, _)) = good_model_at(model, ell) else {
            continue;
        };
        let Ok(ctx) = FqCtx::prime(ell) else {
            break;
        };
        let Ok(curve) = reduce_curve(&reduced_model, &ctx) else {
            continue;
        };
        let Ok(a) = curve.trace_of_frobenius() else {
            continue;
        };
        let disc = (Int::from(a) * Int::from(a) - Int::from(4) * Int::from(ell)).mod_floor(p);
        if !disc.is_zero() && disc.modpow(&exponent, p) == nonresidue {
            return IrreducibleStatus::Certified(Int::from(ell));
        }
    }
    IrreducibleStatus::Unknown
}

pub fn evaluate_conditions(
    model: &Arc<WeierstrassModel>,
    p: &Int,
    n: u32,
    ell_bound: u64,
    assume_irreducible: bool,
) -> ConditionsReport {
    let mut irreducibility = check_irreducible(model, p, ell_bound);
    if irreducibility == IrreducibleStatus::Unknown && assume_irreducible {
        irreducibility = IrreducibleStatus::Assumed;
    }
    ConditionsReport {
        multiplicative: check_multiplicative(model, p),
        additive: check_additive(model, p),
        injectivity: check_injectivity(model, p, n),
        irreducibility,
    }
}

/// How a point is known to lie outside p·E(Q), if it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotInPE {
    /// p ∤ k for P = k·(declared generator); conditional on the basis claim.
    ProvedBasis { index: usize, multiple: u32 },
    /// The reduction of P escapes p·E(F_ℓ); unconditional.
    ProvedReduction { ell: Int },
    Divisible,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct WitnessCertificate {
    pub base_index: usize,
    pub multiple: u32,
    pub level: u32,
    pub vp_x: Valuation,
    pub vp_x_over_y: Valuation,
    pub formal_oracle_agrees: bool,
    pub not_in_pe: NotInPE,
    pub torsion_base: bool,
    /// The witness on the caller's model (the valuations above are taken on
    /// the p-minimal model).
    pub point: RationalPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessRejection {
    #[error("the zero point carries no information")]
    ZeroPoint,
    #[error("conditions not established; raw valuations {vp_x:?}, {vp_x_over_y:?}")]
    ConditionsUnproved {
        vp_x: Option<Valuation>,
        vp_x_over_y: Option<Valuation>,
    },
    #[error("v_p(X) = {vp_x} is not negative")]
    NotInKernel { vp_x: Valuation },
    #[error("v_p(X/Y) = {vp_x_over_y} is below the requested level")]
    DepthTooSmall {
        vp_x: Valuation,
        vp_x_over_y: Valuation,
    },
}

/// The valuation criterion on the p-minimal model: v_p(X) < 0 and
/// v_p(X/Y) ≥ n+1.  Decided by exact arithmetic; the formal-group oracle is
/// recorded as an independent cross-check, never consulted for the decision.
pub fn certify_witness(
    point: &RationalPoint,
    p: &Int,
    n: u32,
    conditions: &ConditionsReport,
) -> Result<WitnessCertificate, WitnessRejection> {
    debug_assert!(n >= 1);
    let (minimal, iso) = minimal_model_at(point.model(), p);
    let moved = iso.transport(point, &minimal);
    let vp_x = moved.x().map(|x| vp(x, p).expect("p is prime"));
    let vp_x_over_y = match moved.coords() {
        Some((x, y)) if !y.is_zero() => Some(vp(&(x / y), p).expect("p is prime")),
        _ => None,
    };
    if !conditions.witness_gate() {
        return Err(WitnessRejection::ConditionsUnproved { vp_x, vp_x_over_y });
    }
    if point.is_infinity() {
        return Err(WitnessRejection::ZeroPoint);
    }
    let vx = vp_x.expect("affine point");
    if vx >= Valuation::Finite(0) {
        return Err(WitnessRejection::NotInKernel { vp_x: vx });
    }
    // A pole on an integral model has v(x) = −2m, v(y) = −3m, so y ≠ 0.
    let vxy = vp_x_over_y.expect("polar point has nonzero y");
    if vxy < Valuation::Finite(i64::from(n) + 1) {
        return Err(WitnessRejection::DepthTooSmall {
            vp_x: vx,
            vp_x_over_y: vxy,
        });
    }
    let formal_oracle_agrees = e1_divisibility(&moved, p, n)
        .map(|report| report.member)
        .unwrap_or(false);
    debug_assert!(
        formal_oracle_agrees,
        "valuation route and formal-group oracle disagree"
    );
    Ok(WitnessCertificate {
        base_index: 0,
        multiple: 1,
        level: n,
        vp_x: vx,
        vp_x_over_y: vxy,
        formal_oracle_agrees,
        not_in_pe: NotInPE::Unknown,
        torsion_base: false,
        point: point.clone(),
    })
}

/// Rational torsion has order ≤ 12, so twelve additions decide finiteness.
fn has_finite_order(base: &RationalPoint) -> bool {
    let mut acc = base.clone();
    for _ in 1..=12 {
        if acc.is_infinity() {
            return true;
        }
        acc = acc.add(base);
    }
    false
}

/// Scan k·B for 1 ≤ k ≤ k_max over every base.  Once k is accepted for a base,
/// multiples of k are skipped: they repeat the same chain, never extend it.
pub fn witness_search(
    bases: &[RationalPoint],
    p: &Int,
    n: u32,
    k_max: u32,
    conditions: &ConditionsReport,
) -> Vec<WitnessCertificate> {
    let mut out = Vec::new();
    for (index, base) in bases.iter().enumerate() {
        let torsion_base = has_finite_order(base);
        let mut accepted: Vec<u32> = Vec::new();
        let mut acc = RationalPoint::infinity(base.model());
        for k in 1..=k_max {
            acc = acc.add(base);
            if accepted.iter().any(|&a| k % a == 0) {
                continue;
            }
            if let Ok(mut certificate) = certify_witness(&acc, p, n, conditions) {
                certificate.base_index = index;
                certificate.multiple = k;
                certificate.torsion_base = torsion_base;
                out.push(certificate);
                accepted.push(k);
            }
        }
    }
    out
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for q in 2..=n {
        if !composite[q] {
            out.push(q as u64);
            let mut m = q * q;
            while m <= n {
                composite[m] = true;
                m += q;
            }
        }
    }
    out
}

/// The ℓ-minimal model when E has good reduction at ℓ, else None.
fn good_model_at(
    model: &Arc<WeierstrassModel>,
    ell: u64,
) -> Option<(Arc<WeierstrassModel>, IsomorphismData)> {
    let ell_int = Int::from(ell);
    let (minimal, iso) = minimal_model_at(model, &ell_int);
    match vp(&minimal.discriminant(), &ell_int).expect("prime modulus") {
        Valuation::Finite(0) => Some((minimal, iso)),
        _ => None,
    }
}

/// Prove P ∉ p·E(Q): exactly via the declared-basis provenance when present,
/// else one-sidedly by scanning reductions at good primes.
pub fn not_divisible(
    point: &RationalPoint,
    p: &Int,
    provenance: Option<(usize, u32)>,
    aux_bound: u64,
    seed: u64,
) -> NotInPE {
    if let Some((index, multiple)) = provenance {
        return if (Int::from(multiple) % p).is_zero() {
            NotInPE::Divisible
        } else {
            NotInPE::ProvedBasis { index, multiple }
        };
    }
    let Some(p_small) = p.to_u64() else {
        return NotInPE::Unknown;
    };
    for ell in primes_up_to(aux_bound) {
        if Int::from(ell) == *p {
            continue;
        }
        let Some((minimal, iso)) = good_model_at(point.model(), ell) else {
            continue;
        };
        let Ok(ctx) = FqCtx::prime(ell) else {
            break;
        };
        let Ok(curve) = reduce_curve(&minimal, &ctx) else {
            continue;
        };
        let Ok(st) = p_primary_structure(&curve, p_small, seed) else {
            continue;
        };
        if st.a == 0 {
            continue; // multiplication by p is onto E(F_ℓ): no information
        }
        let moved = iso.transport(point, &minimal);
        let Ok(reduced) = reduce_point(&moved, &curve) else {
            continue;
        };
        if !in_p_multiple(&curve, &st, &reduced) {
            return NotInPE::ProvedReduction {
                ell: Int::from(ell),
            };
        }
    }
    NotInPE::Unknown
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub rank: usize,
    /// The good primes whose columns enlarged the span, in scan order.
    pub primes_used: Vec<Int>,
}

fn pow_mod_u64(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Gaussian elimination over F_p, one column at a time; `basis` keeps reduced
/// columns tagged by pivot row.
fn insert_mod_p(basis: &mut Vec<(usize, Vec<u64>)>, mut v: Vec<u64>, p: u64) -> bool {
    for (pivot, b) in basis.iter() {
        let f = v[*pivot] % p;
        if f != 0 {
            for (x, y) in v.iter_mut().zip(b.iter()) {
                *x = (*x + (p - f) * *y) % p;
            }
        }
    }
    let Some(pivot) = v.iter().position(|&x| x % p != 0) else {
        return false;
    };
    let inv = pow_mod_u64(v[pivot], p - 2, p);
    for x in v.iter_mut() {
        *x = *x % p * inv % p;
    }
    basis.push((pivot, v));
    true
}

/// The F_p-rank of the image of the points in ∏_ℓ E(F_ℓ)/p·E(F_ℓ) over good
/// ℓ ≤ aux_bound — a certified lower bound for their rank in E(Q)/pE(Q).
/// Stops as soon as the rank equals the number of points.
pub fn independence_mod_p(
    points: &[RationalPoint],
    p: &Int,
    aux_bound: u64,
    seed: u64,
) -> IndependenceReport {
    let mut report = IndependenceReport {
        rank: 0,
        primes_used: Vec::new(),
    };
    let Some(first) = points.first() else {
        return report;
    };
    debug_assert!(points.iter().all(|q| **q.model() == **first.model()));
    let Some(p_small) = p.to_u64() else {
        return report;
    };
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for ell in primes_up_to(aux_bound) {
        if Int::from(ell) == *p {
            continue;
        }
        let Some((minimal, iso)) = good_model_at(first.model(), ell) else {
            continue;
        };
        let Ok(ctx) = FqCtx::prime(ell) else {
            break;
        };
        let Ok(curve) = reduce_curve(&minimal, &ctx) else {
            continue;
        };
        let Ok(st) = p_primary_structure(&curve, p_small, seed) else {
            continue;
        };
        if st.a == 0 {
            continue;
        }
        let digits: Vec<Vec<u64>> = points
            .iter()
            .map(|q| {
                let moved = iso.transport(q, &minimal);
                let reduced = reduce_point(&moved, &curve).expect("integral model");
                coords_mod_p(&curve, &st, &reduced)
            })
            .collect();
        let width = usize::from(st.a > 0) + usize::from(st.b > 0);
        let mut contributed = false;
        for d in 0..width {
            let column: Vec<u64> = digits.iter().map(|dg| dg[d]).collect();
            if insert_mod_p(&mut basis, column, p_small) {
                contributed = true;
            }
        }
        if contributed {
            report.primes_used.push(Int::from(ell));
            report.rank = basis.len();
            if report.rank == points.len() {
                break;
            }
        }
    }
    report.rank = basis.len();
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub r_ur_lower: u32,
    pub class_valuation_lower: u32,
    /// Only meaningful at level 1.
    pub multiplicity_lower: Option<u32>,
    pub conditional_on: Vec<String>,
    pub heuristic_notes: Vec<String>,
}

/// Level 1 counts independent proved witnesses; level n ≥ 2 reports n from a
/// single witness of that depth and never sums several.
pub fn assemble_bounds(
    conditions: &ConditionsReport,
    certificates: &[WitnessCertificate],
    independence_rank: usize,
    p: &Int,
    n: u32,
) -> BoundReport {
    let mut conditional_on = Vec::new();
    let qualified: Vec<&WitnessCertificate> = certificates
        .iter()
        .filter(|c| {
            !c.torsion_base
                && matches!(
                    c.not_in_pe,
                    NotInPE::ProvedBasis { .. } | NotInPE::ProvedReduction { .. }
                )
        })
        .collect();
    let r_ur_lower = if n == 1 {
        independence_rank.min(qualified.len()) as u32
    } else if qualified.is_empty() {
        0
    } else {
        n
    };
    if certificates
        .iter()
        .any(|c| !c.torsion_base && c.not_in_pe == NotInPE::Unknown)
    {
        conditional_on.push(format!(
            "not_divisible unknown: a certified witness could not be proved outside {p}E(Q)"
        ));
    }
    if qualified
        .iter()
        .any(|c| matches!(c.not_in_pe, NotInPE::ProvedBasis { .. }))
    {
        conditional_on
            .push("the declared generators are assumed to form a basis of E(Q)/torsion".into());
    }
    let mut released = true;
    if conditions.injectivity == InjStatus::Unknown {
        released = false;
        conditional_on.push("injectivity unknown".into());
    }
    match conditions.irreducibility {
        IrreducibleStatus::Certified(_) => {}
        IrreducibleStatus::Assumed => {
            conditional_on.push("irreducibility assumed, not certified".into());
        }
        IrreducibleStatus::Unknown => {
            released = false;
            conditional_on.push("irreducibility unknown".into());
        }
    }
    let class_valuation_lower = if released { 2 * r_ur_lower } else { 0 };
    let multiplicity_lower = (n == 1).then(|| if released { r_ur_lower } else { 0 });
    BoundReport {
        r_ur_lower,
        class_valuation_lower,
        multiplicity_lower,
        conditional_on,
        heuristic_notes: Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicNote {
    pub found_degree: Option<u32>,
    /// (a, b) with the p-primary part Z/p^a × Z/p^b.
    pub p_primary: Option<(u32, u32)>,
    pub group_order: Option<u64>,
    pub text: String,
}

fn p_power_group(p: &Int, a: u32, b: u32) -> String {
    match (a, b) {
        (0, _) => "trivial".into(),
        (a, 0) => format!("Z/{}", p.pow(a)),
        (a, b) => format!("Z/{} x Z/{}", p.pow(a), p.pow(b)),
    }
}

/// Probe whether an order-p torsion point becomes p-divisible over the
/// residue extensions F_{p^d}, d ≤ degree_bound.  Good reduction at p is
/// required; a hit is reported as a heuristic note and never enters a bound.
pub fn torsion_unramified_heuristic(
    point: &RationalPoint,
    p: &Int,
    degree_bound: u32,
    seed: u64,
) -> Result<HeuristicNote, CriteriaError> {
    let (minimal, iso) = minimal_model_at(point.model(), p);
    if vp(&minimal.discriminant(), p).expect("p is prime") != Valuation::Finite(0) {
        return Err(CriteriaError::BadReduction(p.clone()));
    }
    if point.is_infinity() || !point.scalar_mul(p).is_infinity() {
        return Err(CriteriaError::NotOrderP);
    }
    let Some(p_small) = p.to_u64() else {
        return Err(CriteriaError::Field(FieldError::TooLarge(u64::MAX)));
    };
    let moved = iso.transport(point, &minimal);
    let (x, y) = point.coords().expect("order-p point is affine");
    for d in 1..=degree_bound {
        let Ok(ctx) = FqCtx::new(p_small, d) else {
            break;
        };
        let curve = reduce_curve(&minimal, &ctx)?;
        let st = p_primary_structure(&curve, p_small, seed)?;
        let reduced = reduce_point(&moved, &curve)?;
        if st.a > 0 && reduced.is_some() && in_p_multiple(&curve, &st, &reduced) {
            let group = p_power_group(p, st.a, st.b);
            return Ok(HeuristicNote {
                found_degree: Some(d),
                p_primary: Some((st.a, st.b)),
                group_order: Some(st.group_order),
                text: format!(
                    "heuristic: the order-{p} torsion point ({x}, {y}) reduces into \
                     {p}*E(F_{p}^{d}) (group order {}, {p}-primary part {group}); \
                     torsion divisible in an unramified extension suggests a positive \
                     {p}-valuation of the class number at level 1; \
                     not counted toward any certified bound",
                    st.group_order
                ),
            });
        }
    }
    Ok(HeuristicNote {
        found_degree: None,
        p_primary: None,
        group_order: None,
        text: format!(
            "heuristic: the order-{p} torsion point ({x}, {y}) stays outside \
             {p}*E(F_{p}^d) for every d <= {degree_bound}; no unramified \
             divisibility detected"
        ),
    })
}
