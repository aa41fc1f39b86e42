//! Exact counting for sets of type `(a,b,c)` with respect to hyperplanes:
//! the double-counting identities and their closed-form solution for
//! `t_a, t_b, t_c`, the divisibility lemma, Baer cone sizes, pencil systems,
//! feasible-size screening, per-theorem parameter tables and endpoint sign
//! checks.
//!
//! Everything here is integer or rational arithmetic on `BigInt`; no floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::spectra::Spectrum;

fn int(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `theta_m` over GF(q) as a big integer, `m >= -1`.
pub fn theta(m: i64, q: u64) -> BigInt {
    assert!(m >= -1, "theta is defined for m >= -1");
    (0..=m).fold(BigInt::zero(), |acc, _| acc * q + 1)
}

/// `q^e` for any integer exponent.
fn qpow(q: u64, e: i64) -> BigRational {
    let p = rat(int(q).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

fn pow(q: u64, e: i64) -> BigInt {
    assert!(e >= 0);
    int(q).pow(e as u32)
}

/// Integer square root when `q` is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(q)).then_some(r)
}

fn sqrt_order(q: u64) -> Result<u64> {
    exact_sqrt(q).filter(|&r| r > 1).ok_or(Error::NonSquareOrder(q))
}

/// Size of an `(r,s)`-Baer cone, `r, s >= -1`.
pub fn c_rs(r: i64, s: i64, q: u64) -> Result<BigInt> {
    if r < -1 || s < -1 {
        return Err(Error::HypothesisViolated(format!("C_(r,s) needs r, s >= -1, got ({r}, {s})")));
    }
    let v = c_rs_rational(r, s, q)?;
    debug_assert!(v.is_integer());
    Ok(v.to_integer())
}

/// The Baer cone size formula read as a rational function, defined for
/// every integer `r`. Used where a parameter lands outside `r >= -1`.
pub fn c_rs_rational(r: i64, s: i64, q: u64) -> Result<BigRational> {
    let root = sqrt_order(q)?;
    if s < -1 {
        return Err(Error::HypothesisViolated(format!("C_(r,s) needs s >= -1, got {s}")));
    }
    let base = rat(theta(s, root));
    let qr = qpow(q, r + 1);
    Ok(base * &qr + (qr - rat(1)) / rat(q as i64 - 1))
}

/// Intersection numbers `a < b < c` of a three-valued hyperplane spectrum in PG(n,q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeParameters {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub n: u32,
    pub q: u64,
}

impl TypeParameters {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, n: u32, q: u64) -> Result<Self> {
        let params = TypeParameters { a: a.into(), b: b.into(), c: c.into(), n, q };
        params.check_order()?;
        if params.a.is_negative() || params.c > theta(n as i64 - 1, q) {
            return Err(Error::HypothesisViolated(format!(
                "intersection sizes ({}, {}, {}) outside 0..=theta_(n-1)",
                params.a, params.b, params.c
            )));
        }
        Ok(params)
    }

    fn check_order(&self) -> Result<()> {
        if self.a < self.b && self.b < self.c {
            Ok(())
        } else {
            Err(Error::DegenerateType { a: self.a.to_string(), b: self.b.to_string(), c: self.c.to_string() })
        }
    }
}

/// `(t_a, t_b, t_c)` from the three double-counting identities, for rational sizes.
pub fn closed_form(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    n: u32,
    q: u64,
    k: &BigRational,
) -> [BigRational; 3] {
    let n = n as i64;
    let (th0, th1, th2) = (rat(theta(n, q)), rat(theta(n - 1, q)), rat(theta(n - 2, q)));
    let one = rat(1);
    let quad = |x: &BigRational, y: &BigRational| -> BigRational {
        k * k * &th2 - k * (&th2 + (x + y - &one) * &th1) + x * y * &th0
    };
    [quad(b, c) / ((b - a) * (c - a)), quad(a, c) / ((c - b) * (a - b)), quad(a, b) / ((a - c) * (b - c))]
}

/// The unique `(t_a, t_b, t_c)` consistent with a set of `k` points of this type.
pub fn t_closed_form(params: &TypeParameters, k: &BigInt) -> Result<[BigRational; 3]> {
    params.check_order()?;
    let (a, b, c) = (rat(params.a.clone()), rat(params.b.clone()), rat(params.c.clone()));
    Ok(closed_form(&a, &b, &c, params.n, params.q, &rat(k.clone())))
}

/// Left and right sides of the three double-counting identities.
pub fn identity_sides(spectrum: &Spectrum, k: u64, n: u32, q: u64) -> [(BigInt, BigInt); 3] {
    let n = n as i64;
    let (k, mut s0, mut s1, mut s2) = (int(k), BigInt::zero(), BigInt::zero(), BigInt::zero());
    for (&m, &t) in spectrum.by_size() {
        let (m, t) = (int(m as u64), int(t));
        s0 += &t;
        s1 += &m * &t;
        s2 += &m * (&m - 1) * &t;
    }
    [(s0, theta(n, q)), (s1, &k * theta(n - 1, q)), (s2, &k * (&k - 1) * theta(n - 2, q))]
}

/// True iff the hyperplane spectrum satisfies all three identities exactly.
pub fn verify_identities(spectrum: &Spectrum, k: u64, n: u32, q: u64) -> bool {
    spectrum.dim() + 1 == n as usize && identity_sides(spectrum, k, n, q).iter().all(|(l, r)| l == r)
}

/// `a = b = c = theta_(n-1) = alpha (mod beta)` with `gcd(alpha, beta) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub alpha: BigInt,
    pub beta: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    /// The hypothesis holds, so `k = k_residue (mod beta)` where `k_residue = theta_n mod beta`.
    Applies {
        hypothesis: Congruence,
        k_residue: BigInt,
    },
    Inapplicable(String),
}

impl LemmaOutcome {
    pub fn condition(&self) -> Option<KCondition> {
        match self {
            LemmaOutcome::Applies { hypothesis, k_residue } => {
                Some(KCondition::Congruent { residue: k_residue.clone(), modulus: hypothesis.beta.clone() })
            }
            LemmaOutcome::Inapplicable(_) => None,
        }
    }
}

/// If the three sizes and `theta_(n-1)` share a residue coprime to `beta`,
/// then `k = theta_n (mod beta)`.
pub fn lemma_congruence(params: &TypeParameters, beta: &BigInt) -> LemmaOutcome {
    if beta <= &BigInt::zero() {
        return LemmaOutcome::Inapplicable(format!("modulus {beta} is not positive"));
    }
    let n = params.n as i64;
    let residues = [&params.a, &params.b, &params.c, &theta(n - 1, params.q)].map(|x| x.mod_floor(beta));
    let alpha = residues[0].clone();
    if residues.iter().any(|r| r != &alpha) {
        return LemmaOutcome::Inapplicable(format!(
            "residues of a, b, c, theta_(n-1) mod {beta} differ: {:?}",
            residues.iter().map(|r| r.to_string()).collect::<Vec<_>>()
        ));
    }
    if !alpha.gcd(beta).is_one() {
        return LemmaOutcome::Inapplicable(format!("common residue {alpha} is not coprime to {beta}"));
    }
    LemmaOutcome::Applies {
        k_residue: theta(n, params.q).mod_floor(beta),
        hypothesis: Congruence { alpha, beta: beta.clone() },
    }
}

/// A necessary condition on the size `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KCondition {
    /// `k = residue (mod modulus)`.
    Congruent { residue: BigInt, modulus: BigInt },
    /// `modulus` divides the product of `k - offset` over all offsets.
    DividesProduct { modulus: BigInt, offsets: Vec<BigInt> },
}

impl KCondition {
    pub fn holds(&self, k: &BigInt) -> bool {
        match self {
            KCondition::Congruent { residue, modulus } => (k - residue).mod_floor(modulus).is_zero(),
            KCondition::DividesProduct { modulus, offsets } => {
                offsets.iter().fold(BigInt::one(), |acc, o| acc * (k - o)).mod_floor(modulus).is_zero()
            }
        }
    }
}

impl fmt::Display for KCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KCondition::Congruent { residue, modulus } => write!(f, "k = {residue} (mod {modulus})"),
            KCondition::DividesProduct { modulus, offsets } => {
                write!(f, "{modulus} | ")?;
                for (i, o) in offsets.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    if o.is_zero() {
                        write!(f, "k")?;
                    } else {
                        write!(f, "(k-{o})")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Counts `(u_a, u_b, u_c)` of a pencil through an `(n-2)`-space.
pub type PencilSolution = (u64, u64, u64);

/// Non-negative solutions of the pencil system through an `(n-2)`-space
/// meeting the set in `axis_points` points:
/// `u_a + u_b + u_c = q + 1` and
/// `axis_points + (a - x) u_a + (b - x) u_b + (c - x) u_c = k`, with `u_a >= u_a_min`.
/// An axis disjoint from the set gives `a u_a + b u_b + c u_c = k`.
pub fn pencil_feasible(params: &TypeParameters, k: &BigInt, axis_points: u64, u_a_min: u64) -> Vec<PencilSolution> {
    let total = params.q + 1;
    let x = int(axis_points);
    let mut out = Vec::new();
    for u_b in 0..=total {
        for u_c in 0..=total - u_b {
            let u_a = total - u_b - u_c;
            if u_a < u_a_min {
                continue;
            }
            let points = &x + (&params.a - &x) * u_a + (&params.b - &x) * u_b + (&params.c - &x) * u_c;
            if &points == k {
                out.push((u_a, u_b, u_c));
            }
        }
    }
    out.sort_unstable();
    out
}

/// A size that survived screening, with its hyperplane counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleK {
    pub k: BigInt,
    pub t: [BigInt; 3],
}

/// Sizes in `[lo, hi]` satisfying every condition for which the closed form
/// gives non-negative integers (all at least 1 when `require_all_realized`).
pub fn feasible_k(
    params: &TypeParameters,
    lo: u64,
    hi: u64,
    conditions: &[KCondition],
    require_all_realized: bool,
) -> Result<Vec<FeasibleK>> {
    if lo > hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    params.check_order()?;
    let floor = if require_all_realized { BigInt::one() } else { BigInt::zero() };
    let mut out = Vec::new();
    for k in lo..=hi {
        let k = int(k);
        if !conditions.iter().all(|c| c.holds(&k)) {
            continue;
        }
        let t = t_closed_form(params, &k)?;
        if t.iter().all(|x| x.is_integer() && x.to_integer() >= floor) {
            out.push(FeasibleK { k, t: t.map(|x| x.to_integer()) });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Baer cones, `(n-2t-1, 2t)`.
    Baer,
    /// Unital cones with `(n-3)`-dimensional vertex.
    Unital,
    /// Hyperoval cones in PG(3,q).
    Hyperoval3,
    /// Hyperoval cones in PG(n,q), `n >= 4`.
    HyperovalN,
    /// Maximal arc cones in PG(n,q), `n >= 5`.
    MaxArc,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] =
        [TheoremId::Baer, TheoremId::Unital, TheoremId::Hyperoval3, TheoremId::HyperovalN, TheoremId::MaxArc];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Baer => "baer",
            TheoremId::Unital => "unital",
            TheoremId::Hyperoval3 => "hyperoval3",
            TheoremId::HyperovalN => "hyperovalN",
            TheoremId::MaxArc => "maxarc",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseDescriptor {
    BaerSubgeometry { dim: i64 },
    Unital,
    Hyperoval,
    MaximalArc { degree: u64 },
}

impl fmt::Display for BaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseDescriptor::BaerSubgeometry { dim } => write!(f, "Baer subgeometry of dimension {dim}"),
            BaseDescriptor::Unital => write!(f, "unital"),
            BaseDescriptor::Hyperoval => write!(f, "hyperoval"),
            BaseDescriptor::MaximalArc { degree } => write!(f, "maximal arc of degree {degree}"),
        }
    }
}

/// Everything a characterization predicts for one `(n, q, t|d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremInstance {
    pub theorem: TheoremId,
    pub n: u32,
    pub q: u64,
    /// `t` for Baer cones, `d` for maximal arc cones.
    pub param: Option<u64>,
    pub params: TypeParameters,
    pub expected_k: BigInt,
    pub expected_t: [BigInt; 3],
    pub vertex_dim: i64,
    pub base: BaseDescriptor,
}

fn violated(msg: impl Into<String>) -> Error {
    Error::HypothesisViolated(msg.into())
}

fn require_prime_power(q: u64) -> Result<()> {
    crate::gf::prime_power(q).map(|_| ()).ok_or_else(|| violated(format!("q={q} is not a prime power")))
}

fn require_param(theorem: TheoremId, param: Option<u64>) -> Result<u64> {
    param.ok_or_else(|| {
        violated(format!("{theorem} needs its {} parameter", if theorem == TheoremId::Baer { "t" } else { "d" }))
    })
}

/// Checks the stated hypotheses of a theorem (not integrality of its data).
fn check_hypotheses(theorem: TheoremId, n: u32, q: u64, param: Option<u64>) -> Result<()> {
    require_prime_power(q)?;
    match theorem {
        TheoremId::Baer => {
            let t = require_param(theorem, param)?;
            if exact_sqrt(q).is_none() {
                return Err(violated(format!("q={q} is not a square")));
            }
            if n < 4 {
                return Err(violated(format!("n={n} < 4")));
            }
            if t < 1 || 2 * t > n as u64 {
                return Err(violated(format!("need 2 <= 2t <= n, got t={t}, n={n}")));
            }
            if q < 16 && !(t == 1 && q >= 4) {
                return Err(violated(format!("need q >= 16 (or q >= 4 when t = 1), got q={q}, t={t}")));
            }
        }
        TheoremId::Unital => {
            if exact_sqrt(q).is_none() {
                return Err(violated(format!("q={q} is not a square")));
            }
            if n < 4 {
                return Err(violated(format!("n={n} < 4")));
            }
        }
        TheoremId::Hyperoval3 => {
            if n != 3 {
                return Err(violated(format!("hyperoval3 lives in PG(3,q), got n={n}")));
            }
        }
        TheoremId::HyperovalN => {
            if n < 4 {
                return Err(violated(format!("n={n} < 4")));
            }
        }
        TheoremId::MaxArc => {
            let d = require_param(theorem, param)?;
            if n < 5 {
                return Err(violated(format!("n={n} < 5")));
            }
            if d < 2 || d + 1 > q {
                return Err(violated(format!("need 2 <= d <= q-1, got d={d}, q={q}")));
            }
            if !(d - 1).gcd(&q).is_one() {
                return Err(violated(format!("gcd(d-1, q) = gcd({}, {q}) != 1", d - 1)));
            }
        }
    }
    Ok(())
}

/// `(a, b, c)` as rationals; only the Baer `b` can fail to be an integer.
fn rational_sizes(theorem: TheoremId, n: u32, q: u64, param: Option<u64>) -> Result<[BigRational; 3]> {
    let ni = n as i64;
    let th = |m: i64| rat(theta(m, q));
    let qp = |e: i64| rat(pow(q, e));
    Ok(match theorem {
        TheoremId::Baer => {
            let t = param.unwrap_or(1) as i64;
            [
                c_rs_rational(ni - 2 * t - 1, 2 * t - 2, q)?,
                c_rs_rational(ni - 2 * t - 2, 2 * t, q)?,
                c_rs_rational(ni - 2 * t - 1, 2 * t - 1, q)?,
            ]
        }
        TheoremId::Unital => {
            let root = sqrt_order(q)?;
            let s = rat(pow(root, 2 * ni - 3));
            [th(ni - 2), th(ni - 3) + &s, th(ni - 2) + s]
        }
        TheoremId::Hyperoval3 => [rat(1), rat(q + 2), rat(2 * q + 1)],
        TheoremId::HyperovalN => [th(ni - 3), th(ni - 2) + qp(ni - 3), th(ni - 2) + qp(ni - 2)],
        TheoremId::MaxArc => {
            let d = param.unwrap_or(2);
            let arc = rat(int(q * d + d) - q);
            [th(ni - 3), qp(ni - 3) * arc + th(ni - 4), qp(ni - 2) * rat(d) + th(ni - 3)]
        }
    })
}

fn as_integer(x: &BigRational, what: &str) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(violated(format!("{what} = {x} is not an integer, no set of this type exists")))
    }
}

/// Parameters, size, hyperplane counts, vertex and base predicted for one instance.
pub fn theorem_instance(theorem: TheoremId, n: u32, q: u64, param: Option<u64>) -> Result<TheoremInstance> {
    check_hypotheses(theorem, n, q, param)?;
    let ni = n as i64;
    let [a, b, c] = rational_sizes(theorem, n, q, param)?;
    let params = TypeParameters::new(as_integer(&a, "a")?, as_integer(&b, "b")?, as_integer(&c, "c")?, n, q)?;
    let th = |m: i64| theta(m, q);
    let qb = int(q);
    let (expected_k, stated_t, vertex_dim, base, param) = match theorem {
        TheoremId::Baer => {
            let t = param.unwrap() as i64;
            let k = c_rs(ni - 2 * t - 1, 2 * t, q)?;
            (k, None, ni - 2 * t - 1, BaseDescriptor::BaerSubgeometry { dim: 2 * t }, Some(t as u64))
        }
        TheoremId::Unital => {
            let root = int(sqrt_order(q)?);
            let k = th(ni - 2) + root.pow(2 * n - 1);
            let t = [root.pow(3) + 1, th(ni) - th(2), &qb * &qb - root.pow(3) + &qb];
            (k, Some(t), ni - 3, BaseDescriptor::Unital, None)
        }
        TheoremId::Hyperoval3 | TheoremId::HyperovalN => {
            let k = th(ni - 1) + pow(q, ni - 2);
            let t = [(&qb * &qb - &qb) / 2, th(ni) - th(2), (&qb * &qb + 3 * &qb + 2) / 2];
            (k, Some(t), ni - 3, BaseDescriptor::Hyperoval, None)
        }
        TheoremId::MaxArc => {
            let d = param.unwrap();
            let arc = int(q * d + d) - q;
            let k = pow(q, ni - 2) * &arc + th(ni - 3);
            let ta = rat(&qb * (&qb + 1 - d)) / rat(d);
            let tc = rat((&qb + 1) * &arc) / rat(d);
            let t = [as_integer(&ta, "t_a")?, th(ni) - th(2), as_integer(&tc, "t_c")?];
            (k, Some(t), ni - 3, BaseDescriptor::MaximalArc { degree: d }, Some(d))
        }
    };
    let closed = t_closed_form(&params, &expected_k)?;
    let expected_t = match stated_t {
        Some(t) => t,
        None => [as_integer(&closed[0], "t_a")?, as_integer(&closed[1], "t_b")?, as_integer(&closed[2], "t_c")?],
    };
    if expected_t.iter().any(|t| !t.is_positive()) {
        return Err(violated(format!(
            "hyperplane counts ({}, {}, {}) are not all positive",
            expected_t[0], expected_t[1], expected_t[2]
        )));
    }
    Ok(TheoremInstance { theorem, n, q, param, params, expected_k, expected_t, vertex_dim, base })
}

/// The screening data a characterization derives before pinning `k`: a
/// size range, necessary conditions, and the pencil used to discard survivors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Screen {
    pub lo: u64,
    pub hi: u64,
    pub conditions: Vec<KCondition>,
    /// `(axis_points, u_a_min)` for [`pencil_feasible`].
    pub pencil: (u64, u64),
}

impl TheoremInstance {
    pub fn screen(&self) -> Screen {
        let (n, q) = (self.n as i64, self.q);
        let big_q = int(q);
        let c = self.params.c.clone();
        let to_u64 = |x: BigInt| u64::try_from(x).expect("screen bounds fit in u64");
        let lemma = |beta: BigInt| lemma_congruence(&self.params, &beta).condition().into_iter();
        let a_points = to_u64(self.params.a.clone());
        match self.theorem {
            TheoremId::Hyperoval3 => Screen {
                lo: to_u64(c),
                hi: 2 * q * q + 1,
                conditions: vec![
                    KCondition::DividesProduct { modulus: int(q + 1), offsets: vec![int(0)] },
                    KCondition::DividesProduct { modulus: big_q, offsets: vec![int(1), int(2)] },
                ],
                // a line inside a 1-plane missing the set
                pencil: (0, 1),
            },
            TheoremId::Baer => {
                let t = self.param.unwrap() as i64;
                let root = int(exact_sqrt(q).unwrap());
                let hi = &self.params.a + root.pow((2 * n - 4 * t + 3) as u32) * theta(t - 1, q);
                Screen { lo: to_u64(c), hi: to_u64(hi), conditions: lemma(big_q).collect(), pencil: (a_points, 1) }
            }
            TheoremId::Unital => {
                let root = int(exact_sqrt(q).unwrap());
                Screen {
                    lo: to_u64(c),
                    hi: to_u64(theta(n - 2, q) + root.pow((2 * n - 1) as u32)),
                    conditions: lemma(pow(q, n - 2)).collect(),
                    pencil: (a_points, 1),
                }
            }
            TheoremId::HyperovalN => Screen {
                lo: to_u64(c),
                hi: to_u64(2 * pow(q, n - 1) + theta(n - 3, q)),
                conditions: lemma(pow(q, n - 3)).collect(),
                pencil: (a_points, 1),
            },
            TheoremId::MaxArc => Screen {
                lo: to_u64(c),
                hi: to_u64(int(self.param.unwrap()) * pow(q, n - 1) + theta(n - 3, q)),
                conditions: lemma(pow(q, n - 3)).collect(),
                pencil: (a_points, 1),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Ta,
    Tb,
    Tc,
}

impl Quantity {
    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["t_a", "t_b", "t_c"][self.index()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    Negative,
    AtMostHalf,
    LessThanOne,
    Equals(BigRational),
}

impl Claim {
    pub fn holds(&self, v: &BigRational) -> bool {
        match self {
            Claim::Negative => v.is_negative(),
            Claim::AtMostHalf => v <= &BigRational::new(int(1), int(2)),
            Claim::LessThanOne => v < &rat(1),
            Claim::Equals(x) => v == x,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Negative => write!(f, "< 0"),
            Claim::AtMostHalf => write!(f, "<= 1/2"),
            Claim::LessThanOne => write!(f, "< 1"),
            Claim::Equals(x) => write!(f, "= {x}"),
        }
    }
}

/// One evaluation of `t_a`, `t_b` or `t_c` at a specific `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointCheck {
    pub quantity: Quantity,
    pub k: BigInt,
    pub value: BigRational,
    pub claim: Claim,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalVerdict {
    Pass,
    Fail,
    /// `lo > hi`; nothing to exclude.
    Empty,
}

/// A claimed bound at both ends of an interval of sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCheck {
    pub lo: EndpointCheck,
    pub hi: EndpointCheck,
    pub verdict: IntervalVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    pub theorem: TheoremId,
    pub n: u32,
    pub q: u64,
    pub param: Option<u64>,
    pub intervals: Vec<IntervalCheck>,
    /// Isolated evaluations at single sizes.
    pub points: Vec<EndpointCheck>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.intervals.iter().all(|i| i.verdict != IntervalVerdict::Fail) && self.points.iter().all(|p| p.holds)
    }
}

struct Evaluator {
    sizes: [BigRational; 3],
    n: u32,
    q: u64,
}

impl Evaluator {
    fn at(&self, quantity: Quantity, k: BigInt, claim: Claim) -> EndpointCheck {
        let [a, b, c] = &self.sizes;
        let value = closed_form(a, b, c, self.n, self.q, &rat(k.clone()))[quantity.index()].clone();
        let holds = claim.holds(&value);
        EndpointCheck { quantity, k, value, claim, holds }
    }

    fn interval(&self, quantity: Quantity, lo: (BigInt, Claim), hi: (BigInt, Claim)) -> IntervalCheck {
        let empty = lo.0 > hi.0;
        let lo = self.at(quantity, lo.0, lo.1);
        let hi = self.at(quantity, hi.0, hi.1);
        let verdict = if empty {
            IntervalVerdict::Empty
        } else if lo.holds && hi.holds {
            IntervalVerdict::Pass
        } else {
            IntervalVerdict::Fail
        };
        IntervalCheck { lo, hi, verdict }
    }
}

/// Evaluates the closed forms at the interval endpoints used to exclude
/// sizes other than the predicted one, and checks the claimed bounds.
pub fn step_sign_check(theorem: TheoremId, n: u32, q: u64, param: Option<u64>) -> Result<SignReport> {
    check_hypotheses(theorem, n, q, param)?;
    let sizes = rational_sizes(theorem, n, q, param)?;
    if !(sizes[0] < sizes[1] && sizes[1] < sizes[2]) {
        return Err(Error::DegenerateType {
            a: sizes[0].to_string(),
            b: sizes[1].to_string(),
            c: sizes[2].to_string(),
        });
    }
    let ni = n as i64;
    let ev = Evaluator { sizes: sizes.clone(), n, q };
    let th = |m: i64| theta(m, q);
    let qp = |e: i64| pow(q, e);
    let mut intervals = Vec::new();
    let mut points = Vec::new();
    use Claim::*;
    use Quantity::*;
    match theorem {
        TheoremId::Baer => {
            let t = param.unwrap() as i64;
            let root = int(exact_sqrt(q).unwrap());
            let a = sizes[0].to_integer();
            let lo = c_rs(ni - 2 * t - 1, 2 * t, q)? + q;
            let hi = a + root.pow((2 * ni - 4 * t + 3) as u32) * th(t - 1);
            intervals.push(ev.interval(Ta, (lo, Negative), (hi, Negative)));
        }
        TheoremId::Unital => {
            let root = int(exact_sqrt(q).unwrap());
            intervals.push(ev.interval(
                Tc,
                (th(ni - 1) + qp(ni - 2), Negative),
                (th(ni - 3) + root.pow((2 * ni - 1) as u32), Negative),
            ));
            points.push(ev.at(Tb, th(ni - 1), Equals(-rat(root.pow(3)))));
        }
        TheoremId::Hyperoval3 => {
            let qb = int(q);
            points.push(ev.at(Tc, 2 * &qb + 2, Equals(-rat((&qb + 1) * (&qb + 1)) / rat(2))));
            let k: BigInt = &qb * &qb + 3 * &qb + 2;
            points.push(ev.at(Ta, k.clone(), Equals(rat(qb.clone()) / rat(2) + rat(1))));
            let tb = rat(qb.pow(4) - qb.pow(3) - 4 * qb.pow(2) - 4 * &qb - 1) / rat(&qb - 1);
            points.push(ev.at(Tb, k, Equals(tb)));
        }
        TheoremId::HyperovalN => {
            let c = sizes[2].to_integer();
            intervals.push(ev.interval(Tc, (c, Negative), (th(ni - 1) + qp(ni - 2) - qp(ni - 3), Negative)));
            intervals.push(ev.interval(
                Ta,
                (th(ni - 1) + qp(ni - 2) + qp(ni - 3), AtMostHalf),
                (2 * qp(ni - 1) + th(ni - 3), Negative),
            ));
        }
        TheoremId::MaxArc => {
            let d = param.unwrap();
            let c = sizes[2].to_integer();
            let k_star = qp(ni - 2) * (int(q * d + d) - q) + th(ni - 3);
            intervals.push(ev.interval(Tc, (c, Negative), (&k_star - qp(ni - 3), Negative)));
            intervals.push(ev.interval(
                Ta,
                (&k_star + qp(ni - 3), Negative),
                (int(d) * qp(ni - 1) + th(ni - 3), LessThanOne),
            ));
        }
    }
    Ok(SignReport { theorem, n, q, param, intervals, points })
}
