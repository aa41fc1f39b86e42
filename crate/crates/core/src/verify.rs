//! End-to-end verification of one characterization instance: build the
//! canonical cone, measure it, and compare every prediction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::counting::{
    feasible_k, lemma_congruence, pencil_feasible, step_sign_check, t_closed_form, theorem_instance, verify_identities,
    BaseDescriptor, IntervalVerdict, LemmaOutcome, SignReport, TheoremId, TheoremInstance,
};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::objects::{ConeDescriptor, PointSet};
use crate::pg::{Geometry, Subspace};
use crate::spectra::{pencil_counts, recognize_cone, spectrum_with_workers, Spectrum};

/// One expected-versus-measured comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, measured: impl ToString, passed: bool) -> Self {
        Check { name: name.into(), expected: expected.to_string(), measured: measured.to_string(), passed }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, expected: T, measured: T) -> Self {
        let passed = expected == measured;
        Check::new(name, format!("{expected:?}"), format!("{measured:?}"), passed)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub instance: TheoremInstance,
    pub cone: PointSet,
    pub spectrum: Spectrum,
    pub sign: SignReport,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Modulus for the divisibility lemma when pinning down `k`.
pub fn lemma_modulus(theorem: TheoremId, n: u32, q: u64) -> BigInt {
    let e = match theorem {
        TheoremId::Baer => 1,
        TheoremId::Unital => n - 2,
        TheoremId::Hyperoval3 | TheoremId::HyperovalN | TheoremId::MaxArc => n - 3,
    };
    BigInt::from(q).pow(e)
}

/// Canonical cone realizing an instance.
pub fn canonical_cone(geometry: &Geometry, instance: &TheoremInstance) -> Result<ConeDescriptor> {
    match instance.base {
        BaseDescriptor::BaerSubgeometry { dim } => ConeDescriptor::baer(geometry, instance.vertex_dim, dim),
        BaseDescriptor::Unital => ConeDescriptor::unital(geometry),
        BaseDescriptor::Hyperoval => ConeDescriptor::hyperoval(geometry),
        BaseDescriptor::MaximalArc { degree } => ConeDescriptor::maximal_arc(geometry, degree),
    }
}

/// Rejects inputs that make no sense before any theorem hypothesis is consulted.
fn precheck(theorem: TheoremId, q: u64, param: Option<u64>) -> Result<()> {
    if crate::gf::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    if let (TheoremId::MaxArc, Some(d)) = (theorem, param) {
        if d == 0 || !q.is_multiple_of(d) {
            return Err(Error::DegreeNotDividingOrder { d, q });
        }
    }
    Ok(())
}

/// Axes `(n-2)`-spaces with a predicted pencil, and that prediction as `(u_a, u_b, u_c)`.
fn pencil_axes(
    geometry: &Geometry,
    instance: &TheoremInstance,
    descriptor: &ConeDescriptor,
    cone: &PointSet,
) -> Result<(Vec<Subspace>, (u64, u64, u64))> {
    let q = instance.q;
    match instance.base {
        BaseDescriptor::Hyperoval | BaseDescriptor::MaximalArc { .. } => {
            let d = match instance.base {
                BaseDescriptor::MaximalArc { degree } => degree,
                _ => 2,
            };
            let mut axes = Vec::new();
            for x in descriptor.base_ambient.points().iter() {
                if descriptor.base.contains(x) {
                    continue;
                }
                let point = geometry.span(&[x])?;
                axes.push(geometry.join(&descriptor.vertex, &point));
            }
            Ok((axes, (q / d, 0, q + 1 - q / d)))
        }
        BaseDescriptor::Unital => {
            let a = usize::try_from(&instance.params.a).expect("size fits");
            let mut axes = Vec::new();
            for h in 0..geometry.num_hyperplanes() {
                let mut meet = geometry.incidence(h).clone();
                meet.intersect_with(cone.bits());
                if meet.count() == a {
                    axes.push(geometry.span_of_set(&meet));
                }
            }
            Ok((axes, (1, 0, q)))
        }
        BaseDescriptor::BaerSubgeometry { .. } => Ok((Vec::new(), (0, 0, 0))),
    }
}

fn sign_checks(report: &SignReport) -> Vec<Check> {
    let mut out = Vec::new();
    for iv in &report.intervals {
        for end in [&iv.lo, &iv.hi] {
            let name = format!("sign {} at k={}", end.quantity, end.k);
            match iv.verdict {
                IntervalVerdict::Empty => {
                    out.push(Check::new(name, end.claim.to_string(), "empty interval", true));
                }
                _ => out.push(Check::new(name, end.claim.to_string(), &end.value, end.holds)),
            }
        }
    }
    for p in &report.points {
        out.push(Check::new(format!("value {} at k={}", p.quantity, p.k), p.claim.to_string(), &p.value, p.holds));
    }
    out
}

/// Builds the canonical cone of an instance and checks size, spectrum,
/// identities, closed form, lemma, pencil law, recognition and sign claims.
pub fn verify_theorem(theorem: TheoremId, n: u32, q: u64, param: Option<u64>, workers: usize) -> Result<VerifyReport> {
    precheck(theorem, q, param)?;
    let instance = theorem_instance(theorem, n, q, param)?;
    let geometry = Geometry::new(Field::from_order(q)?, n as usize)?;
    let descriptor = canonical_cone(&geometry, &instance)?;
    let cone = descriptor.points(&geometry)?;
    let k = cone.len() as u64;
    let mut checks = Vec::new();

    checks.push(Check::eq("size", instance.expected_k.clone(), BigInt::from(k)));

    let measured = spectrum_with_workers(&geometry, &cone, n as usize - 1, workers)?;
    let p = &instance.params;
    let to_usize = |x: &BigInt| usize::try_from(x).expect("size fits");
    let to_u64 = |x: &BigInt| u64::try_from(x).expect("count fits");
    let expected: BTreeMap<usize, u64> =
        [&p.a, &p.b, &p.c].iter().zip(&instance.expected_t).map(|(m, t)| (to_usize(m), to_u64(t))).collect();
    checks.push(Check::eq("hyperplane spectrum", &expected, measured.by_size()));
    checks.push(Check::eq("counting identities", true, verify_identities(&measured, k, n, q)));

    let closed = t_closed_form(p, &BigInt::from(k))?;
    let measured_t: Vec<String> = [&p.a, &p.b, &p.c].iter().map(|m| measured.count(to_usize(m)).to_string()).collect();
    checks.push(Check::eq("closed form at measured k", closed.iter().map(|x| x.to_string()).collect(), measured_t));

    let beta = lemma_modulus(theorem, n, q);
    match lemma_congruence(p, &beta) {
        LemmaOutcome::Applies { k_residue, .. } => {
            let got = BigInt::from(k) % &beta;
            checks.push(Check::new(format!("k mod {beta}"), &k_residue, &got, got == k_residue));
        }
        LemmaOutcome::Inapplicable(why) => {
            checks.push(Check::new(format!("lemma mod {beta}"), "applicable", why, false));
        }
    }

    let screen = instance.screen();
    let survivors = feasible_k(p, screen.lo, screen.hi, &screen.conditions, true)?;
    let kept = survivors.iter().any(|f| f.k == instance.expected_k);
    checks.push(Check::new(format!("screen [{}, {}] keeps k", screen.lo, screen.hi), &instance.expected_k, kept, kept));
    let solutions = pencil_feasible(p, &instance.expected_k, screen.pencil.0, screen.pencil.1);
    checks.push(Check::new(
        "pencil system solvable at k",
        "non-empty",
        format!("{solutions:?}"),
        !solutions.is_empty(),
    ));

    let (axes, law) = pencil_axes(&geometry, &instance, &descriptor, &cone)?;
    if !axes.is_empty() {
        let mut bad = Vec::new();
        for axis in &axes {
            let profile = pencil_counts(&geometry, &cone, axis)?;
            let got = (profile.u(to_usize(&p.a)), profile.u(to_usize(&p.b)), profile.u(to_usize(&p.c)));
            if got != law {
                bad.push(got);
            }
        }
        checks.push(Check::new(
            format!("pencil law over {} axes", axes.len()),
            format!("{law:?}"),
            if bad.is_empty() { format!("{law:?}") } else { format!("{} axes differ, first {:?}", bad.len(), bad[0]) },
            bad.is_empty(),
        ));
    }

    let rec = recognize_cone(&geometry, &cone);
    checks.push(Check::eq("recognized vertex dimension", instance.vertex_dim, rec.vertex.dim()));
    checks.push(Check::eq("recognized as cone over vertex", true, rec.is_cone_over_vertex));
    checks.push(Check::eq("recognized base size", descriptor.base.len(), rec.base.len()));

    let sign = step_sign_check(theorem, n, q, param)?;
    checks.extend(sign_checks(&sign));

    Ok(VerifyReport { instance, cone, spectrum: measured, sign, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperoval3_q4_passes() {
        let report = verify_theorem(TheoremId::Hyperoval3, 3, 4, None, 1).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.cone.len(), 25);
        let pencil = report.checks.iter().find(|c| c.name.starts_with("pencil law")).unwrap();
        assert_eq!(pencil.name, "pencil law over 15 axes");
    }

    #[test]
    fn unital_and_baer_pass() {
        for (th, n, q, p) in [(TheoremId::Unital, 4, 4, None), (TheoremId::Baer, 4, 4, Some(1))] {
            let report = verify_theorem(th, n, q, p, 2).unwrap();
            assert!(report.passed(), "{th}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn maxarc_degree_must_divide_order() {
        let err = verify_theorem(TheoremId::MaxArc, 5, 4, Some(3), 1).unwrap_err();
        assert_eq!(err, Error::DegreeNotDividingOrder { d: 3, q: 4 });
        assert!(err.to_string().contains("3 does not divide"));
    }
}
