//! From a derivation to the structure of its isotropy group, plus the
//! finiteness criterion, realizability of finite groups, and the
//! quantum-plane distinguishing witness.
//!
//! A diagonal automorphism `(mu1, mu2)` commutes with a derivation exactly
//! when `(mu1, mu2)` lies in the kernel of a family of characters read off
//! from the derivation: `(i-1, j)` for each monomial of `delta(x)` and
//! `(i, j-1)` for each monomial of `delta(y)`. For an inner derivation
//! `ad_w` the same family is `(i, j)` over the monomials of `w`, except that
//! monomials with `q^i = 1` and `q^j = 1` drop out (their commutator
//! coefficients vanish).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmath::prime_factorization;
use crate::qplane::{Derivation, QPoly, QPolyTermDto};
use crate::scalar::{QSpec, Scalar};
use crate::torus::{
    normalize_characters, solve_constraints, Character, Classification, GroupReport,
};

/// Which constraint-extraction route produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintPath {
    /// Constraints read from `w` of a decomposed derivation.
    InnerShortcut,
    /// Constraints read from the generator images.
    GeneralImages,
}

/// Result of an isotropy computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyResult {
    pub report: GroupReport,
    /// Active constraints after `q`-filtering and normalization.
    pub constraints: Vec<Character>,
    pub path: ConstraintPath,
}

/// Characters cut out by the inner derivation `ad_w`: one `(i, j)` per
/// monomial of `w`, skipping monomials with both `q^i = 1` and `q^j = 1`
/// (central monomials when `q` is a root of unity).
pub fn constraints_from_inner(w: &QPoly, spec: &QSpec) -> Vec<Character> {
    let raw: Vec<Character> = w
        .support()
        .filter(|&(i, j)| !(spec.q_power_is_one(i as i64) && spec.q_power_is_one(j as i64)))
        .map(|(i, j)| Character::new(i as i64, j as i64))
        .collect();
    normalize_characters(&raw)
}

/// Characters cut out by arbitrary generator images: `(i-1, j)` per monomial
/// of `delta(x)` and `(i, j-1)` per monomial of `delta(y)`.
pub fn constraints_from_images(delta: &Derivation) -> Vec<Character> {
    let mut raw = Vec::new();
    for (i, j) in delta.dx().support() {
        raw.push(Character::new(i as i64 - 1, j as i64));
    }
    for (i, j) in delta.dy().support() {
        raw.push(Character::new(i as i64, j as i64 - 1));
    }
    normalize_characters(&raw)
}

/// Compute the isotropy group of a derivation.
///
/// Uses the inner-form shortcut when the derivation carries its decomposition
/// `(w, a, b)` with scalar `a`, `b`; otherwise falls back to the generator
/// images. When the shortcut applies, both routes are computed and must agree
/// exactly.
pub fn isotropy_group(delta: &Derivation, spec: &QSpec) -> Result<IsotropyResult> {
    spec.validate()?;
    let (constraints, path) = match delta.inner_form() {
        Some(inner) => {
            let shortcut = constraints_from_inner(&inner.w, spec);
            let general = constraints_from_images(delta);
            if shortcut != general {
                return Err(Error::Internal(format!(
                    "inner-shortcut constraints {shortcut:?} disagree with image constraints {general:?}"
                )));
            }
            (shortcut, ConstraintPath::InnerShortcut)
        }
        None => (
            constraints_from_images(delta),
            ConstraintPath::GeneralImages,
        ),
    };
    let report = solve_constraints(&constraints)?;
    Ok(IsotropyResult {
        report,
        constraints,
        path,
    })
}

/// Convenience wrapper: isotropy of `ad_w + a D_x + b D_y`.
pub fn isotropy_group_of_inner(
    w: &QPoly,
    a: &Scalar,
    b: &Scalar,
    spec: &QSpec,
) -> Result<IsotropyResult> {
    let delta = Derivation::from_inner_form(w, a, b, spec)?;
    isotropy_group(&delta, spec)
}

/// Finiteness criterion for `ad_w + a D_x + b D_y` with scalar `a`, `b`:
/// after dropping monomials killed by the `q`-filter, two support points with
/// a nonzero minor must remain.
pub fn finiteness_check(w: &QPoly, spec: &QSpec) -> bool {
    let survivors: Vec<(u32, u32)> = w
        .support()
        .filter(|&(i, j)| !(spec.q_power_is_one(i as i64) && spec.q_power_is_one(j as i64)))
        .collect();
    for (idx, &(i, j)) in survivors.iter().enumerate() {
        for &(r, s) in &survivors[idx + 1..] {
            if i as i128 * s as i128 - r as i128 * j as i128 != 0 {
                return true;
            }
        }
    }
    false
}

/// Split `lcm(r, s)` into coprime parts `(r', s')` with `r' | r`, `s' | s`.
///
/// Prime by prime, the full exponent goes to `r'` when `r`'s exponent is at
/// least `s`'s (ties go to `r'`), and to `s'` otherwise.
pub fn coprime_lcm_split(r: u64, s: u64) -> Result<(u64, u64)> {
    if r == 0 || s == 0 {
        return Err(Error::BadInput("orders must be positive".into()));
    }
    let rf = prime_factorization(r);
    let sf = prime_factorization(s);
    let mut r_part = 1u64;
    let mut s_part = 1u64;
    let mut primes: Vec<u64> = rf.iter().chain(sf.iter()).map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let re = rf.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e);
        let se = sf.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e);
        if re >= se {
            r_part *= p.pow(re);
        } else {
            s_part *= p.pow(se);
        }
    }
    Ok((r_part, s_part))
}

/// Outcome of a realizability query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizabilityStatus {
    Realizable,
    NotRealizable,
    Unknown,
}

/// Whether `Z_n1 + Z_n2` occurs as an isotropy group, with a witness when it
/// does.
#[derive(Debug, Clone)]
pub struct RealizabilityVerdict {
    pub status: RealizabilityStatus,
    /// `w` whose inner derivation realizes the group.
    pub witness: Option<QPoly>,
    pub reason: String,
    /// Isotropy report of the witness, when one was computed.
    pub verified: Option<GroupReport>,
}

impl RealizabilityVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status,
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "reason": self.reason,
            "verified": self.verified,
        })
    }
}

/// Try to realize `Z_n1 + Z_n2` (with `n2 | n1`) as an isotropy group via
/// the witness `w = x^n1 + y^n2`.
///
/// When `q` is a primitive `p`-th root of unity and `p` divides both `n1`
/// and `n2`, no derivation at all realizes the group. When `q^n1 != 1` the
/// witness works and its isotropy group is verified internally. The
/// remaining boundary (`q^n1 = 1` but not the obstruction case) is reported
/// as unknown.
pub fn realize_group(n1: u64, n2: u64, spec: &QSpec) -> Result<RealizabilityVerdict> {
    spec.validate()?;
    if n1 == 0 || n2 == 0 {
        return Err(Error::BadInput("group orders must be positive".into()));
    }
    if !n1.is_multiple_of(n2) {
        return Err(Error::BadInput(format!(
            "invariant factors require n2 | n1, got ({n1}, {n2})"
        )));
    }
    if let QSpec::RootOfUnity(p) = spec {
        if n1.is_multiple_of(*p) && n2.is_multiple_of(*p) {
            return Ok(RealizabilityVerdict {
                status: RealizabilityStatus::NotRealizable,
                witness: None,
                reason: format!(
                    "q has order {p} and {p} divides both {n1} and {n2}: every defining \
                     character of an isotropy group must survive the q-filter, but a group \
                     containing the full {p}-torsion forces every character exponent pair \
                     to be divisible by {p}"
                ),
                verified: None,
            });
        }
    }
    if !spec.q_power_is_one(n1 as i64) {
        let e1 = u32::try_from(n1).map_err(|_| Error::Overflow("witness exponent"))?;
        let e2 = u32::try_from(n2).map_err(|_| Error::Overflow("witness exponent"))?;
        let w = QPoly::monomial(e1, 0, Scalar::one())
            .add(&QPoly::monomial(0, e2, Scalar::one()), spec)?;
        let result = isotropy_group_of_inner(&w, &Scalar::zero(), &Scalar::zero(), spec)?;
        let expected = (num::integer::lcm(n1, n2), num::integer::gcd(n1, n2));
        if result.report.classification != Classification::Finite
            || result.report.invariants != expected
        {
            return Err(Error::Internal(format!(
                "witness x^{n1} + y^{n2} produced invariants {:?}, expected {expected:?}",
                result.report.invariants
            )));
        }
        return Ok(RealizabilityVerdict {
            status: RealizabilityStatus::Realizable,
            witness: Some(w),
            reason: format!("q^{n1} != 1, so both witness constraints stay active"),
            verified: Some(result.report),
        });
    }
    Ok(RealizabilityVerdict {
        status: RealizabilityStatus::Unknown,
        witness: None,
        reason: format!(
            "q^{n1} = 1 but the order of q does not divide both invariants; the standard \
             witness degenerates and no general criterion applies"
        ),
        verified: None,
    })
}

/// Smallest exponent distinguishing two `q`-specializations: the least `n`
/// with `q^n != 1` and `q1^n = 1`, falling back to the swapped roles, or
/// nothing when the specializations are indistinguishable this way (both
/// formal, or roots of unity of equal order).
pub fn isomorphism_obstruction(spec1: &QSpec, spec2: &QSpec) -> Option<u64> {
    // Least n with a^n != 1 and b^n = 1.
    fn directed(a: &QSpec, b: &QSpec) -> Option<u64> {
        let QSpec::RootOfUnity(nb) = b else {
            return None; // b^n is never 1
        };
        match a {
            QSpec::Transcendental => Some(*nb),
            QSpec::RootOfUnity(na) => {
                let lcm = num::integer::lcm(*na, *nb);
                (*nb..=lcm).step_by(*nb as usize).find(|n| n % na != 0)
            }
        }
    }
    directed(spec1, spec2).or_else(|| directed(spec2, spec1))
}

/// JSON form of a `q` specialization:
/// `{"type": "transcendental"}` or `{"type": "root_of_unity", "order": N}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum QSpecDto {
    Transcendental,
    RootOfUnity { order: u64 },
}

impl QSpecDto {
    pub fn to_spec(&self) -> Result<QSpec> {
        match self {
            QSpecDto::Transcendental => Ok(QSpec::Transcendental),
            QSpecDto::RootOfUnity { order } => QSpec::root_of_unity(*order),
        }
    }
}

impl From<QSpec> for QSpecDto {
    fn from(spec: QSpec) -> QSpecDto {
        match spec {
            QSpec::Transcendental => QSpecDto::Transcendental,
            QSpec::RootOfUnity(order) => QSpecDto::RootOfUnity { order },
        }
    }
}

/// Input document for an isotropy computation: a `q` specialization plus
/// either a decomposed derivation (`w`, optional scalar `a`, `b`) or raw
/// generator images (`dx`, `dy`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivationDocument {
    pub q: QSpecDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<QPolyTermDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dx: Option<Vec<QPolyTermDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dy: Option<Vec<QPolyTermDto>>,
}

impl DerivationDocument {
    pub fn build(&self) -> Result<(Derivation, QSpec)> {
        let spec = self.q.to_spec()?;
        match (&self.w, &self.dx, &self.dy) {
            (Some(w), None, None) => {
                let w = QPoly::from_dto(w, &spec)?;
                let a = match &self.a {
                    Some(text) => Scalar::parse(text, &spec)?,
                    None => Scalar::zero(),
                };
                let b = match &self.b {
                    Some(text) => Scalar::parse(text, &spec)?,
                    None => Scalar::zero(),
                };
                Ok((Derivation::from_inner_form(&w, &a, &b, &spec)?, spec))
            }
            (None, Some(dx), Some(dy)) => {
                if self.a.is_some() || self.b.is_some() {
                    return Err(Error::Parse(
                        "scalar coefficients a/b only apply to the decomposed form".into(),
                    ));
                }
                let dx = QPoly::from_dto(dx, &spec)?;
                let dy = QPoly::from_dto(dy, &spec)?;
                Ok((Derivation::from_images(dx, dy, &spec)?, spec))
            }
            _ => Err(Error::Parse(
                "document must contain either `w` (with optional `a`, `b`) or both `dx` and `dy`"
                    .into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qplane::{commutes, DiagonalAutomorphism};
    use crate::torus::TorsionPoint;

    const T: QSpec = QSpec::Transcendental;

    fn mono(i: u32, j: u32) -> QPoly {
        QPoly::monomial(i, j, Scalar::one())
    }

    fn inner(w: &QPoly, spec: &QSpec) -> IsotropyResult {
        isotropy_group_of_inner(w, &Scalar::zero(), &Scalar::zero(), spec).unwrap()
    }

    #[test]
    fn inner_constraints_examples() {
        // w = x^m: a single character (m, 0).
        assert_eq!(
            constraints_from_inner(&mono(5, 0), &T),
            vec![Character::new(5, 0)]
        );
        // Constant w: nothing.
        assert_eq!(constraints_from_inner(&QPoly::one(), &T), vec![]);
        // Root-of-unity filter: (4,4) is central under order 4.
        let spec4 = QSpec::root_of_unity(4).unwrap();
        let w = mono(2, 0).add(&mono(4, 4), &spec4).unwrap();
        assert_eq!(
            constraints_from_inner(&w, &spec4),
            vec![Character::new(2, 0)]
        );
        // The symbolic commutator of the filtered monomial is 0, so the
        // image route sees the same single constraint.
        let d = Derivation::from_inner_form(&w, &Scalar::zero(), &Scalar::zero(), &spec4).unwrap();
        assert_eq!(constraints_from_images(&d), vec![Character::new(2, 0)]);
    }

    #[test]
    fn image_constraints_examples() {
        // D_x: character (0,0) is dropped.
        let d = Derivation::from_inner_form(&QPoly::zero(), &Scalar::one(), &Scalar::zero(), &T)
            .unwrap();
        assert_eq!(constraints_from_images(&d), vec![]);

        // ad_(x^3 y + x^2 y^2): characters (3,1), (2,2).
        let w = mono(3, 1).add(&mono(2, 2), &T).unwrap();
        let d = Derivation::from_inner_form(&w, &Scalar::zero(), &Scalar::zero(), &T).unwrap();
        assert_eq!(
            constraints_from_images(&d),
            vec![Character::new(2, 2), Character::new(3, 1)]
        );
    }

    #[test]
    fn isotropy_structure_examples() {
        // w = x: the 1-torus (trivial torsion).
        let res = inner(&QPoly::x(), &T);
        assert_eq!(res.report.classification, Classification::Infinite);
        assert_eq!(res.report.torus_rank, 1);
        assert_eq!(res.report.invariants, (1, 1));
        assert_eq!(res.path, ConstraintPath::InnerShortcut);

        // w a single nonconstant monomial: infinite.
        let res = inner(&mono(3, 2), &T);
        assert_eq!(res.report.classification, Classification::Infinite);

        // w = x^3 y + x^2 y^2: the cyclic group of order 4.
        let w = mono(3, 1).add(&mono(2, 2), &T).unwrap();
        let res = inner(&w, &T);
        assert_eq!(res.report.classification, Classification::Finite);
        assert_eq!(res.report.order, Some(4));
        assert_eq!(res.report.invariants, (4, 1));
    }

    #[test]
    fn shortcut_and_images_agree_with_scalar_scalings() {
        let w = mono(3, 1).add(&mono(2, 2), &T).unwrap();
        let a = Scalar::from_integer(7);
        let b = Scalar::from_rational(num::BigRational::new(3.into(), 5.into()));
        let res = isotropy_group_of_inner(&w, &a, &b, &T).unwrap();
        assert_eq!(res.path, ConstraintPath::InnerShortcut);
        assert_eq!(res.report.order, Some(4));

        let delta = Derivation::from_inner_form(&w, &a, &b, &T).unwrap();
        let via_images =
            Derivation::from_images(delta.dx().clone(), delta.dy().clone(), &T).unwrap();
        let res2 = isotropy_group(&via_images, &T).unwrap();
        assert_eq!(res2.path, ConstraintPath::GeneralImages);
        assert_eq!(res2.report, res.report);
        assert_eq!(res2.constraints, res.constraints);
    }

    #[test]
    fn finiteness_criterion_examples() {
        let w = mono(3, 1).add(&mono(2, 2), &T).unwrap();
        assert!(finiteness_check(&w, &T));

        let w = mono(2, 4).add(&mono(3, 6), &T).unwrap();
        assert!(!finiteness_check(&w, &T));

        let spec4 = QSpec::root_of_unity(4).unwrap();
        let w = mono(2, 0).add(&mono(4, 4), &spec4).unwrap();
        assert!(!finiteness_check(&w, &spec4));
    }

    #[test]
    fn generators_commute_with_the_derivation() {
        let w = mono(3, 1).add(&mono(2, 2), &T).unwrap();
        let delta = Derivation::from_inner_form(&w, &Scalar::zero(), &Scalar::zero(), &T).unwrap();
        let res = isotropy_group(&delta, &T).unwrap();
        for gen in &res.report.generators {
            let (un, ud) = gen.u();
            let (vn, vd) = gen.v();
            let rho = DiagonalAutomorphism::new(
                Scalar::root_of_unity(ud as u64, un).unwrap(),
                Scalar::root_of_unity(vd as u64, vn).unwrap(),
                &T,
            )
            .unwrap();
            assert!(commutes(&rho, &delta, &T).unwrap());
        }
        // A non-member fails.
        let bad = TorsionPoint::new(1, 8, 0, 1).unwrap();
        let (un, ud) = bad.u();
        let rho = DiagonalAutomorphism::new(
            Scalar::root_of_unity(ud as u64, un).unwrap(),
            Scalar::one(),
            &T,
        )
        .unwrap();
        assert!(!commutes(&rho, &delta, &T).unwrap());
    }

    #[test]
    fn coprime_split_examples() {
        assert_eq!(coprime_lcm_split(12, 18).unwrap(), (4, 9));
        assert_eq!(coprime_lcm_split(1, 1).unwrap(), (1, 1));
        assert_eq!(coprime_lcm_split(8, 3).unwrap(), (8, 3));
    }

    #[test]
    fn realize_examples() {
        let v = realize_group(12, 4, &T).unwrap();
        assert_eq!(v.status, RealizabilityStatus::Realizable);
        assert_eq!(v.witness.as_ref().unwrap().to_string(), "x^12 + y^4");
        assert_eq!(v.verified.as_ref().unwrap().invariants, (12, 4));

        let spec5 = QSpec::root_of_unity(5).unwrap();
        let v = realize_group(6, 3, &spec5).unwrap();
        assert_eq!(v.status, RealizabilityStatus::Realizable);

        let spec3 = QSpec::root_of_unity(3).unwrap();
        let v = realize_group(6, 3, &spec3).unwrap();
        assert_eq!(v.status, RealizabilityStatus::NotRealizable);

        // q^6 = 1 under order 6 but 6 does not divide n2 = 2: unknown.
        let spec6 = QSpec::root_of_unity(6).unwrap();
        let v = realize_group(6, 2, &spec6).unwrap();
        assert_eq!(v.status, RealizabilityStatus::Unknown);

        assert!(matches!(realize_group(12, 5, &T), Err(Error::BadInput(_))));
    }

    #[test]
    fn obstruction_examples() {
        let spec5 = QSpec::root_of_unity(5).unwrap();
        assert_eq!(isomorphism_obstruction(&T, &spec5), Some(5));
        assert_eq!(isomorphism_obstruction(&spec5, &T), Some(5));
        let spec3 = QSpec::root_of_unity(3).unwrap();
        assert_eq!(isomorphism_obstruction(&spec3, &spec3), None);
        assert_eq!(isomorphism_obstruction(&T, &T), None);
        let spec4 = QSpec::root_of_unity(4).unwrap();
        let spec6 = QSpec::root_of_unity(6).unwrap();
        assert_eq!(isomorphism_obstruction(&spec4, &spec6), Some(6));
        assert_eq!(isomorphism_obstruction(&spec6, &spec4), Some(4));
        // Divisible orders fall back to the swapped direction.
        assert_eq!(isomorphism_obstruction(&spec3, &spec6), Some(3));
    }

    #[test]
    fn document_round_trip() {
        let json = r#"{
            "q": {"type": "transcendental"},
            "w": [{"i": 3, "j": 1, "coeff": "1"}, {"i": 2, "j": 2, "coeff": "1"}]
        }"#;
        let doc: DerivationDocument = serde_json::from_str(json).unwrap();
        let (delta, spec) = doc.build().unwrap();
        let res = isotropy_group(&delta, &spec).unwrap();
        assert_eq!(res.report.order, Some(4));

        let json = r#"{
            "q": {"type": "root_of_unity", "order": 4},
            "dx": [{"i": 1, "j": 0, "coeff": "2"}],
            "dy": []
        }"#;
        let doc: DerivationDocument = serde_json::from_str(json).unwrap();
        let (delta, spec) = doc.build().unwrap();
        let res = isotropy_group(&delta, &spec).unwrap();
        assert_eq!(res.path, ConstraintPath::GeneralImages);
        assert_eq!(res.report.classification, Classification::FullTorus);

        let bad = r#"{"q": {"type": "root_of_unity", "order": 2}, "w": []}"#;
        let doc: DerivationDocument = serde_json::from_str(bad).unwrap();
        assert!(matches!(doc.build(), Err(Error::InvalidQOrder(2))));
    }
}
