//! Invariants of the Galois covers `Y_k(a,b)` of embedded Hirzebruch surfaces.
//!
//! Chern numbers grow like `n!` with `n = 2ab + kb²`, so every value is kept
//! as an exact rational coefficient of `n!`; [`ChernPair::expand`] multiplies
//! out when `n` is small enough.
//!
//! The closed forms are transcribed term by term as they are usually stated.
//! Where two forms describe the same quantity, [`chern_y`] evaluates both and
//! refuses to answer if they disagree.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default largest `n` for which `n!`-multiples are expanded.
pub const DEFAULT_EXPANSION_CAP: u64 = 40;

/// Parameters are capped so every bracket fits comfortably in `i128`.
const PARAM_CAP: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceParams {
    pub k: u32,
    pub a: u32,
    pub b: u32,
}

impl SurfaceParams {
    /// Accepts `a ≥ 1`, or `a = 0` with `k = 1` (the Veronese case).
    pub fn new(k: u32, a: u32, b: u32) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidParams("b must be at least 1".into()));
        }
        if a == 0 && k != 1 {
            return Err(Error::InvalidParams(format!("a = 0 is only covered for k = 1, got k = {k}")));
        }
        if k.max(a).max(b) > PARAM_CAP {
            return Err(Error::InvalidParams(format!("parameters above {PARAM_CAP} are not supported")));
        }
        Ok(SurfaceParams { k, a, b })
    }

    fn ints(&self) -> (i128, i128, i128) {
        (self.k as i128, self.a as i128, self.b as i128)
    }

    /// `n = 2ab + kb²`.
    pub fn degree(&self) -> u64 {
        let (k, a, b) = self.ints();
        (2 * a * b + k * b * b) as u64
    }
}

impl fmt::Display for SurfaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.k, self.a, self.b)
    }
}

fn rat(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `coeff · n!` when `n ≤ cap` and the product is an integer.
pub fn expand(coeff: &BigRational, n: u64, cap: u64) -> Option<BigInt> {
    if n > cap {
        return None;
    }
    let v = coeff * BigRational::from_integer(factorial(n));
    v.is_integer().then(|| v.to_integer())
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Frac {
        num: String,
        den: String,
    }
    Frac { num: r.numer().to_string(), den: r.denom().to_string() }.serialize(s)
}

fn ser_opt_int<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.as_ref().map(|i| i.to_string()).serialize(s)
}

/// `c₁² = c1sq_coeff · n!`, `c₂ = c2_coeff · n!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernPair {
    pub factorial_index: u64,
    #[serde(serialize_with = "ser_rational")]
    pub c1sq_coeff: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub c2_coeff: BigRational,
    #[serde(serialize_with = "ser_opt_int", skip_serializing_if = "Option::is_none")]
    pub c1sq: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_int", skip_serializing_if = "Option::is_none")]
    pub c2: Option<BigInt>,
}

impl ChernPair {
    pub fn new(factorial_index: u64, c1sq_coeff: BigRational, c2_coeff: BigRational) -> Self {
        ChernPair { factorial_index, c1sq_coeff, c2_coeff, c1sq: None, c2: None }
    }

    /// Fills in the integer values when `n ≤ cap`.
    pub fn expand(mut self, cap: u64) -> Self {
        self.c1sq = expand(&self.c1sq_coeff, self.factorial_index, cap);
        self.c2 = expand(&self.c2_coeff, self.factorial_index, cap);
        self
    }

    /// Equality of the exact values, ignoring expansion.
    pub fn same_values(&self, other: &ChernPair) -> bool {
        self.factorial_index == other.factorial_index
            && self.c1sq_coeff == other.c1sq_coeff
            && self.c2_coeff == other.c2_coeff
    }

    /// `τ = (c₁² − 2c₂)/3`.
    pub fn signature(&self) -> ExactValue {
        let two = BigRational::from_integer(2.into());
        let three = BigRational::from_integer(3.into());
        ExactValue { factorial_index: self.factorial_index, coeff: (&self.c1sq_coeff - two * &self.c2_coeff) / three }
    }

    /// `c₁²/c₂` as a float, for display.
    pub fn ratio(&self) -> Option<f64> {
        if self.c2_coeff.is_zero() {
            return None;
        }
        (&self.c1sq_coeff / &self.c2_coeff).to_f64()
    }
}

/// `coeff · n!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub factorial_index: u64,
    #[serde(serialize_with = "ser_rational")]
    pub coeff: BigRational,
}

impl ExactValue {
    pub fn sign(&self) -> Ordering {
        self.coeff.cmp(&BigRational::zero())
    }

    pub fn value(&self, cap: u64) -> Option<BigInt> {
        expand(&self.coeff, self.factorial_index, cap)
    }
}

/// Intersection data of `F_k` embedded by `|aC + bE₀|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HirzebruchData {
    pub ek: i128,
    pub n: i128,
    pub c1sq_x: i128,
    pub c2_x: i128,
}

pub fn hirzebruch_data(p: SurfaceParams) -> HirzebruchData {
    let (k, a, b) = p.ints();
    HirzebruchData { ek: -2 * a - 2 * b - b * k, n: 2 * a * b + b * b * k, c1sq_x: 8, c2_x: 4 }
}

/// Chern numbers of the Galois cover of a degree-`n` surface `X` with
/// hyperplane class `E` and canonical class `K`.
pub fn galois_chern(ek: i128, n: i128, c1sq_x: i128, c2_x: i128) -> Result<ChernPair> {
    if n < 1 {
        return Err(Error::InvalidParams(format!("degree must be positive, got {n}")));
    }
    let c1 = ek * ek + 6 * n * ek + 9 * n * n - 12 * ek - 36 * n + 36;
    let c2 = 72 - 10 * c1sq_x - 54 * ek - 114 * n + 27 * n * n + 14 * c2_x + 3 * ek * ek + 18 * n * ek;
    Ok(ChernPair::new(n as u64, rat(c1, 4), rat(c2, 24)))
}

/// The two displayed closed forms for `Y_k(a,b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForms {
    pub expanded: ChernPair,
    pub factored: ChernPair,
}

pub fn closed_forms(p: SurfaceParams) -> ClosedForms {
    let (k, a, b) = p.ints();
    let n = p.degree();
    let c1_expanded = 4 * a * a + 4 * b * b - 64 * a * b + 24 * a + 24 * b - 24 * a * a * b - 24 * a * b * b
        + 36
        + 36 * a * a * b * b
        + k * (12 * b + 4 * a * b - 12 * b * b * b + 36 * a * b * b * b - 24 * a * b * b - 32 * b * b)
        + k * k * (b * b - 6 * b * b * b + 9 * b * b * b * b);
    let r = 3 * a * b - a - b - 3;
    let c1_factored = k * k * b * b * (3 * b - 1) * (3 * b - 1) + 4 * k * b * (3 * b - 1) * r + 4 * r * r;
    let c2_expanded = 4
        * (4 + 9 * a + 9 * b - 17 * a * b + a * a + b * b + 9 * a * a * b * b - 6 * a * a * b - 6 * a * b * b)
        + 2 * k * (9 * b - 17 * b * b + 18 * a * b * b * b + 2 * a * b - 12 * a * b * b - 6 * b * b * b)
        + k * k * (9 * b * b * b * b + b * b - 6 * b * b * b);
    let s = 2 * a + k * b;
    let c2_factored =
        (3 * b - 1) * (3 * b - 1) * s * s + (9 - 17 * b - 6 * b * b) * (4 * a + 2 * k * b) + 4 * (b * b + 9 * b + 4);
    ClosedForms {
        expanded: ChernPair::new(n, rat(c1_expanded, 4), rat(c2_expanded, 8)),
        factored: ChernPair::new(n, rat(c1_factored, 4), rat(c2_factored, 8)),
    }
}

/// Specialization to `k = 1`.
pub fn chern_y_k1(a: u32, b: u32) -> ChernPair {
    let (a, b) = (a as i128, b as i128);
    let n = (2 * a * b + b * b) as u64;
    let t = 3 * b * b + 6 * a * b - 3 * b - 2 * a - 6;
    let c2 = 16 + 54 * b + 36 * a - 64 * a * b + 4 * a * a - 29 * b * b + 36 * a * a * b * b
        - 24 * a * a * b
        - 48 * a * b * b
        - 18 * b * b * b
        + 9 * b * b * b * b
        + 36 * a * b * b * b;
    ChernPair::new(n, rat(t * t, 4), rat(c2, 8))
}

/// Specialization to `k = 0`.
pub fn chern_y_k0(a: u32, b: u32) -> ChernPair {
    let (a, b) = (a as i128, b as i128);
    let n = (2 * a * b) as u64;
    let t = 3 * a * b - a - b - 3;
    let c2 = 4 + 9 * a + 9 * b - 17 * a * b + a * a + b * b + 9 * a * a * b * b - 6 * a * a * b - 6 * a * b * b;
    ChernPair::new(n, rat(t * t, 1), rat(c2, 2))
}

/// Chern numbers of the Galois cover of the Veronese surface of order `b`.
pub fn veronese_chern(b: u32) -> Result<ChernPair> {
    if b == 0 || b > PARAM_CAP {
        return Err(Error::InvalidParams(format!("b must be in 1..={PARAM_CAP}, got {b}")));
    }
    let b = b as i128;
    let c1 = b * b * b * b - 2 * b * b * b - 3 * b * b + 4 * b + 4;
    let c2 = 16 + 54 * b - 29 * b * b - 18 * b * b * b + 9 * b * b * b * b;
    Ok(ChernPair::new((b * b) as u64, rat(9 * c1, 4), rat(c2, 8)))
}

/// Chern numbers of `Y_k(a,b)`. Both closed forms, the general formula
/// applied to the surface data and (where they apply) the `k ∈ {0, 1}` and
/// Veronese specializations must all agree.
pub fn chern_y(p: SurfaceParams) -> Result<ChernPair> {
    let forms = closed_forms(p);
    if !forms.expanded.same_values(&forms.factored) {
        return Err(Error::IdentityViolation(format!("closed forms disagree at {p}")));
    }
    let h = hirzebruch_data(p);
    let general = galois_chern(h.ek, h.n, h.c1sq_x, h.c2_x)?;
    if !general.same_values(&forms.factored) {
        return Err(Error::IdentityViolation(format!("closed form differs from the general formula at {p}")));
    }
    let special = match (p.k, p.a) {
        (1, 0) => Some(veronese_chern(p.b)?),
        (1, a) => Some(chern_y_k1(a, p.b)),
        (0, a) => Some(chern_y_k0(a, p.b)),
        _ => None,
    };
    if let Some(s) = special {
        if !s.same_values(&forms.factored) {
            return Err(Error::IdentityViolation(format!("specialized formula differs at {p}")));
        }
    }
    Ok(forms.factored)
}

/// Closed-form signature, checked against `(c₁² − 2c₂)/3`.
pub fn signature(p: SurfaceParams) -> Result<ExactValue> {
    let (k, a, b) = p.ints();
    let bracket = 4 * (a * b - 3 * a - 3 * b + 5) + 2 * k * (b - 3) * b;
    let tau = ExactValue { factorial_index: p.degree(), coeff: rat(bracket, 12) };
    if chern_y(p)?.signature() != tau {
        return Err(Error::IdentityViolation(format!("signature formula differs from Chern numbers at {p}")));
    }
    Ok(tau)
}

/// `(ℤ_c)^rank` with `c = gcd(a, b)`, `rank = n − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub torsion_order: u64,
    pub rank: u64,
}

impl GroupDescriptor {
    pub fn is_trivial(&self) -> bool {
        self.torsion_order == 1 || self.rank == 0
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "1")
        } else {
            write!(f, "(Z_{})^{}", self.torsion_order, self.rank)
        }
    }
}

pub fn pi1(p: SurfaceParams) -> Result<GroupDescriptor> {
    if p.a == 0 {
        return Err(Error::InvalidParams("fundamental group needs a >= 1".into()));
    }
    Ok(GroupDescriptor { torsion_order: (p.a as u64).gcd(&(p.b as u64)), rank: p.degree() - 2 })
}

/// Degree, dual degree, cusps and (when known) nodes of the branch curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchInvariants {
    pub n: i128,
    pub m: i128,
    pub mu: i128,
    pub phi: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i128>,
}

pub fn branch_invariants(p: SurfaceParams) -> Result<BranchInvariants> {
    let (k, a, b) = p.ints();
    if a >= 1 {
        Ok(BranchInvariants {
            n: 2 * a * b + k * b * b,
            m: 6 * a * b - 2 * a - 2 * b + k * (3 * b * b - b),
            mu: 6 * a * b - 4 * a - 4 * b + 4 + k * (3 * b * b - 2 * b),
            phi: 24 * a * b - 18 * a - 18 * b + 12 + k * (12 * b * b - 9 * b),
            d: None,
        })
    } else if k == 1 {
        // (b − 1)(3b³ − 3b² − 14b + 16) is always even.
        Ok(BranchInvariants {
            n: b * b,
            m: 3 * b * (b - 1),
            mu: 3 * (b - 1) * (b - 1),
            phi: 3 * (b - 1) * (4 * b - 5),
            d: Some(3 * (b - 1) * (3 * b * b * b - 3 * b * b - 14 * b + 16) / 2),
        })
    } else {
        Err(Error::InvalidParams("branch invariants need a >= 1 or (a = 0, k = 1)".into()))
    }
}

/// General type by the case list in `k`, `ab`.
pub fn general_type_by_cases(p: SurfaceParams) -> bool {
    let ab = p.a as u64 * p.b as u64;
    match p.k {
        0 => ab >= 3,
        1 | 2 => ab >= 2,
        _ => true,
    }
}

/// Spin by the residue list in `b mod 4`.
pub fn spin_by_residues(p: SurfaceParams) -> bool {
    let (k, a, b) = (p.k as u64, p.a as u64, p.b as u64);
    (b % 4 == 0 && a % 2 == 1) || (b % 4 == 1 && k % 2 == 0) || (b % 4 == 2 && (a + k) % 2 == 1) || b % 4 == 3
}

/// Membership in the positive-signature condition table (`a ≥ 1`).
pub fn positive_signature_table(p: SurfaceParams) -> bool {
    let (k, a, b) = (p.k, p.a, p.b);
    POSITIVITY_TABLE.iter().any(|row| row.matches(k, a, b))
}

/// One row: `k` in range, `a ≥ a_min` (or `a = a_min` when exact), `b` in range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityRow {
    pub k_min: u32,
    pub k_max: Option<u32>,
    pub a_min: u32,
    pub a_exact: bool,
    pub b_min: u32,
    pub b_max: Option<u32>,
}

impl PositivityRow {
    pub fn matches(&self, k: u32, a: u32, b: u32) -> bool {
        let k_ok = k >= self.k_min && self.k_max.is_none_or(|m| k <= m);
        let a_ok = if self.a_exact { a == self.a_min } else { a >= self.a_min };
        let b_ok = b >= self.b_min && self.b_max.is_none_or(|m| b <= m);
        k_ok && a_ok && b_ok
    }
}

impl fmt::Display for PositivityRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k_max {
            Some(m) if m == self.k_min => write!(f, "k = {m}")?,
            _ => write!(f, "k >= {}", self.k_min)?,
        }
        write!(f, ", a {} {}", if self.a_exact { "=" } else { ">=" }, self.a_min)?;
        match self.b_max {
            Some(m) if m == self.b_min => write!(f, ", b = {m}"),
            _ => write!(f, ", b >= {}", self.b_min),
        }
    }
}

const fn row(k: u32, k_exact: bool, a: u32, a_exact: bool, b: u32, b_exact: bool) -> PositivityRow {
    PositivityRow {
        k_min: k,
        k_max: if k_exact { Some(k) } else { None },
        a_min: a,
        a_exact,
        b_min: b,
        b_max: if b_exact { Some(b) } else { None },
    }
}

pub const POSITIVITY_TABLE: [PositivityRow; 11] = [
    row(0, true, 8, false, 4, true),
    row(0, true, 6, false, 5, false),
    row(1, true, 6, false, 4, true),
    row(1, true, 3, false, 5, true),
    row(1, true, 2, false, 6, true),
    row(1, true, 1, false, 7, false),
    row(2, true, 4, false, 4, true),
    row(2, true, 1, false, 5, false),
    row(3, true, 2, false, 4, true),
    row(3, true, 1, false, 5, false),
    row(4, false, 1, true, 4, false),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub params: SurfaceParams,
    pub general_type: bool,
    pub spin: bool,
    pub simply_connected: bool,
    /// −1, 0 or 1.
    pub signature_sign: i8,
    pub checks: ClassificationChecks,
}

/// Independent criteria the flags are compared with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationChecks {
    pub branch_degree: i128,
    /// `m > 6`.
    pub general_type_by_degree: bool,
    /// `m` not divisible by 4.
    pub spin_by_degree: bool,
    /// Membership in the positivity table.
    pub positive_by_table: bool,
}

impl ClassificationChecks {
    pub fn consistent_with(&self, c: &Classification) -> bool {
        self.general_type_by_degree == c.general_type
            && self.spin_by_degree == c.spin
            && self.positive_by_table == (c.signature_sign > 0)
    }
}

impl Classification {
    pub fn is_consistent(&self) -> bool {
        self.checks.consistent_with(self)
    }
}

pub fn classify(p: SurfaceParams) -> Result<Classification> {
    if p.a == 0 {
        return Err(Error::InvalidParams("classification needs a >= 1".into()));
    }
    let m = branch_invariants(p)?.m;
    let tau = signature(p)?;
    Ok(Classification {
        params: p,
        general_type: general_type_by_cases(p),
        spin: spin_by_residues(p),
        simply_connected: pi1(p)?.is_trivial(),
        signature_sign: match tau.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        },
        checks: ClassificationChecks {
            branch_degree: m,
            general_type_by_degree: m > 6,
            spin_by_degree: m % 4 != 0,
            positive_by_table: positive_signature_table(p),
        },
    })
}

/// Two surfaces with equal Chern numbers and different fundamental groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualPairReport {
    pub s: u32,
    pub t: u32,
    pub first: SurfaceParams,
    pub second: SurfaceParams,
    pub first_chern: ChernPair,
    pub second_chern: ChernPair,
    pub c1sq_equal: bool,
    pub c2_equal: bool,
    pub signature_equal: bool,
    pub first_pi1: GroupDescriptor,
    pub second_pi1: GroupDescriptor,
    /// `4st + 4t² − 2`.
    pub expected_rank: u64,
    /// Whether the stated closed forms in `s, t` reproduce the values.
    pub closed_form_c1sq_agrees: bool,
    pub closed_form_c2_agrees: bool,
}

/// Closed forms of `(c₁², c₂)` in `s, t` as stated, coefficients of `(4st+4t²)!`.
pub fn equal_pair_closed_forms(s: u32, t: u32) -> ChernPair {
    let (s, t) = (s as i128, t as i128);
    let n = (4 * s * t + 4 * t * t) as u64;
    let c1 = 9 + 6 * s + 18 * t + s * s - 30 * s * t - 27 * t * t - 12 * t * s * s - 48 * t * t * s - 30 * t * t * t
        + 36 * t * t * s * s
        + 72 * s * t * t * t
        + 36 * t * t * t * t;
    let c2 = 4 + 27 * t + 9 * s - 32 * s * t + s * s - 29 * t * t + 36 * s * s * t * t
        - 12 * s * s * t
        - 48 * s * t * t
        - 36 * t * t * t
        + 36 * t * t * t * t
        + 72 * s * t * t * t;
    ChernPair::new(n, rat(c1, 1), rat(c2, 2))
}

pub fn equal_chern_pair(s: u32, t: u32) -> Result<EqualPairReport> {
    if s == 0 || t == 0 || s.is_multiple_of(2) || t.is_multiple_of(2) || (s as u64).gcd(&(t as u64)) != 1 {
        return Err(Error::InvalidParams(format!("s and t must be odd, positive and coprime, got ({s}, {t})")));
    }
    let first = SurfaceParams::new(1, s, 2 * t)?;
    let second = SurfaceParams::new(0, s + t, 2 * t)?;
    let (c_first, c_second) = (chern_y(first)?, chern_y(second)?);
    let stated = equal_pair_closed_forms(s, t);
    let (st, tt) = (s as u64, t as u64);
    Ok(EqualPairReport {
        s,
        t,
        first,
        second,
        c1sq_equal: c_first.factorial_index == c_second.factorial_index && c_first.c1sq_coeff == c_second.c1sq_coeff,
        c2_equal: c_first.factorial_index == c_second.factorial_index && c_first.c2_coeff == c_second.c2_coeff,
        signature_equal: c_first.signature() == c_second.signature(),
        first_pi1: pi1(first)?,
        second_pi1: pi1(second)?,
        expected_rank: 4 * st * tt + 4 * tt * tt - 2,
        closed_form_c1sq_agrees: stated.factorial_index == c_first.factorial_index
            && stated.c1sq_coeff == c_first.c1sq_coeff,
        closed_form_c2_agrees: stated.factorial_index == c_first.factorial_index && stated.c2_coeff == c_first.c2_coeff,
        first_chern: c_first,
        second_chern: c_second,
    })
}

/// A filter for [`scan`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Predicate {
    SimplyConnected(bool),
    GeneralType(bool),
    Spin(bool),
    /// Required sign of the signature: −1, 0 or 1.
    Signature(i8),
}

impl Predicate {
    /// `sc`, `gt`, `spin` (each optionally prefixed by `!`), `tau>0`,
    /// `tau=0`, `tau<0`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (want, body) = match s.strip_prefix('!') {
            Some(rest) => (false, rest),
            None => (true, s),
        };
        let p = match body {
            "sc" => Predicate::SimplyConnected(want),
            "gt" => Predicate::GeneralType(want),
            "spin" => Predicate::Spin(want),
            "tau>0" if want => Predicate::Signature(1),
            "tau=0" if want => Predicate::Signature(0),
            "tau<0" if want => Predicate::Signature(-1),
            _ => return Err(Error::Parse(format!("unknown predicate {s:?}"))),
        };
        Ok(p)
    }

    pub fn holds(&self, c: &Classification) -> bool {
        match *self {
            Predicate::SimplyConnected(w) => c.simply_connected == w,
            Predicate::GeneralType(w) => c.general_type == w,
            Predicate::Spin(w) => c.spin == w,
            Predicate::Signature(o) => c.signature_sign == o,
        }
    }
}

/// Inclusive range of a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: u32,
    pub hi: u32,
}

impl ParamRange {
    pub fn new(lo: u32, hi: u32) -> Self {
        ParamRange { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

/// All `(k, a, b)` with `a ≥ 1` in the ranges satisfying every predicate, in
/// lexicographic order.
pub fn scan(k: ParamRange, a: ParamRange, b: ParamRange, predicates: &[Predicate]) -> Result<Vec<Classification>> {
    if k.is_empty() || a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParams("empty parameter range".into()));
    }
    let mut out = Vec::new();
    for k in k.iter() {
        for a in a.iter().filter(|&a| a >= 1) {
            for b in b.iter().filter(|&b| b >= 1) {
                let c = classify(SurfaceParams::new(k, a, b)?)?;
                if predicates.iter().all(|p| p.holds(&c)) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// Sign of a rational as −1, 0, 1.
pub fn sign_of(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(k: u32, a: u32, b: u32) -> SurfaceParams {
        SurfaceParams::new(k, a, b).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn surface_data() {
        let h = hirzebruch_data(sp(0, 1, 1));
        assert_eq!((h.ek, h.n), (-4, 2));
        let h = hirzebruch_data(sp(1, 0, 4));
        assert_eq!(h.ek, -12);
        assert_eq!(hirzebruch_data(sp(2, 2, 3)).n, 30);
        assert!(SurfaceParams::new(2, 0, 3).is_err());
        assert!(SurfaceParams::new(1, 1, 0).is_err());
    }

    #[test]
    fn general_formula_examples() {
        assert!(galois_chern(0, 2, 8, 4).unwrap().c1sq_coeff.is_zero());
        let c = chern_y(sp(0, 2, 2)).unwrap().expand(DEFAULT_EXPANSION_CAP);
        assert_eq!(c.c1sq, Some(int(40320 * 25)));
        assert!(galois_chern(0, 0, 8, 4).is_err());
    }

    #[test]
    fn veronese_values() {
        let v = veronese_chern(3).unwrap().expand(DEFAULT_EXPANSION_CAP);
        assert_eq!(v.c1sq, Some(int(13_063_680)));
        assert_eq!(v.c2, Some(int(7_257_600)));
        assert_eq!(v.ratio(), Some(1.8));
        assert_eq!(veronese_chern(1).unwrap().c1sq_coeff, BigRational::from_integer(9.into()));
        assert!(veronese_chern(2).unwrap().c1sq_coeff.is_zero());
        assert_eq!(chern_y(sp(1, 0, 3)).unwrap().expand(40).c1sq, Some(int(13_063_680)));
    }

    #[test]
    fn zero_signature_quadruples() {
        for (k, a, b) in [(0, 7, 4), (1, 5, 4), (2, 3, 4), (3, 1, 4)] {
            assert_eq!(signature(sp(k, a, b)).unwrap().sign(), Ordering::Equal);
        }
        assert_eq!(signature(sp(1, 3, 5)).unwrap().sign(), Ordering::Greater);
    }

    #[test]
    fn fundamental_groups() {
        assert_eq!(pi1(sp(0, 2, 2)).unwrap(), GroupDescriptor { torsion_order: 2, rank: 6 });
        assert!(pi1(sp(1, 3, 5)).unwrap().is_trivial());
        assert!(pi1(sp(1, 0, 3)).is_err());
        assert_eq!(pi1(sp(0, 2, 2)).unwrap().to_string(), "(Z_2)^6");
    }

    #[test]
    fn branch_curve_data() {
        let v = branch_invariants(sp(1, 0, 3)).unwrap();
        assert_eq!((v.n, v.m, v.mu, v.phi, v.d), (9, 18, 12, 42, Some(84)));
        assert_eq!(branch_invariants(sp(1, 5, 4)).unwrap().m, 146);
        for a in 1..=20 {
            for b in 1..=20 {
                let (ai, bi) = (a as i128, b as i128);
                let m = branch_invariants(sp(1, a, b)).unwrap().m;
                assert_eq!(m, 6 * ai * bi - 2 * ai - 3 * bi + 3 * bi * bi);
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify(sp(0, 7, 4)).unwrap();
        assert!(c.general_type && c.spin && c.simply_connected && c.signature_sign == 0);
        assert!(!classify(sp(1, 1, 1)).unwrap().general_type);
        let c = classify(sp(1, 3, 5)).unwrap();
        // m = 144, so the canonical class is not divisible by two here.
        assert_eq!(c.checks.branch_degree, 144);
        assert!(!c.spin && !c.checks.spin_by_degree);
        assert!(classify(sp(1, 0, 3)).is_err());
    }

    #[test]
    fn equal_pairs() {
        let r = equal_chern_pair(1, 1).unwrap();
        assert_eq!((r.first_chern.factorial_index, r.second_chern.factorial_index), (8, 8));
        assert!(r.c1sq_equal && r.c2_equal && r.signature_equal);
        assert!(r.first_pi1.is_trivial());
        assert_eq!(r.second_pi1, GroupDescriptor { torsion_order: 2, rank: 6 });
        assert!(equal_chern_pair(3, 1).unwrap().c1sq_equal);
        assert!(equal_chern_pair(2, 1).is_err());
        assert!(equal_chern_pair(3, 3).is_err());
    }

    #[test]
    fn stated_pair_forms() {
        // The c₂ form reproduces the values; the stated c₁² form carries
        // −30t³ where the computed value needs −36t³.
        for (s, t) in [(1, 1), (3, 1), (1, 3), (5, 3)] {
            let r = equal_chern_pair(s, t).unwrap();
            assert!(r.closed_form_c2_agrees);
            assert!(!r.closed_form_c1sq_agrees);
            let stated = equal_pair_closed_forms(s, t);
            let diff = &r.first_chern.c1sq_coeff - &stated.c1sq_coeff;
            let t3 = BigRational::from_integer(BigInt::from(6 * (t as i64).pow(3)));
            assert_eq!(diff, -t3);
        }
    }

    #[test]
    fn predicates() {
        assert_eq!(Predicate::parse("tau>0").unwrap(), Predicate::Signature(1));
        assert_eq!(Predicate::parse("!sc").unwrap(), Predicate::SimplyConnected(false));
        assert!(Predicate::parse("tau>1").is_err());
        assert!(Predicate::parse("!tau>0").is_err());
    }

    #[test]
    fn scans() {
        let preds: Vec<Predicate> = ["tau>0", "tau<0"].iter().map(|s| Predicate::parse(s).unwrap()).collect();
        let r = scan(ParamRange::new(0, 2), ParamRange::new(1, 5), ParamRange::new(1, 5), &preds).unwrap();
        assert!(r.is_empty());
        assert!(scan(ParamRange::new(2, 1), ParamRange::new(1, 1), ParamRange::new(1, 1), &[]).is_err());
        let r = scan(
            ParamRange::new(1, 1),
            ParamRange::new(3, 3),
            ParamRange::new(5, 8),
            &[Predicate::Signature(1), Predicate::GeneralType(true)],
        )
        .unwrap();
        assert_eq!(r.iter().map(|c| c.params.b).collect::<Vec<_>>(), vec![5, 6, 7, 8]);
    }

    #[test]
    fn positivity_rows() {
        assert!(positive_signature_table(sp(0, 8, 4)));
        assert!(!positive_signature_table(sp(0, 7, 4)));
        assert!(positive_signature_table(sp(5, 1, 4)));
        assert!(!positive_signature_table(sp(5, 2, 4)));
        assert_eq!(POSITIVITY_TABLE[10].to_string(), "k >= 4, a = 1, b >= 4");
        assert_eq!(POSITIVITY_TABLE[0].to_string(), "k = 0, a >= 8, b = 4");
    }

    #[test]
    fn expansion_cap() {
        assert_eq!(expand(&BigRational::one(), 41, 40), None);
        assert_eq!(expand(&BigRational::one(), 5, 40), Some(int(120)));
        assert_eq!(sign_of(&rat(-1, 3)), -1);
    }
}
