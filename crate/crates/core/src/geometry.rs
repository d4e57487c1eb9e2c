//! Intersection theory for the binomial curves `x^a y^b = 1` and
//! `x^c y^d = 1` with positive exponents and `ad - bc != 0`.
//!
//! After homogenization the curves meet only at the two coordinate points at
//! infinity beyond the affine plane. The local multiplicities there come from
//! a closed formula (with a Puiseux-parameterization substitution as an
//! independent oracle), the affine points are the `|ad - bc|` torsion points
//! of the associated character system, and everything is tied together by the
//! Bezout count `(a+b)(c+d)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{QSpec, Scalar};
use crate::torus::{solve_constraints, Character, GroupReport, TorsionPoint};

/// A validated pair of binomial curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurvePair {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl CurvePair {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<CurvePair> {
        if a == 0 || b == 0 || c == 0 || d == 0 {
            return Err(Error::BadInput(
                "curve exponents must be positive integers".into(),
            ));
        }
        if det(a, b, c, d) == 0 {
            return Err(Error::DegenerateSystem);
        }
        Ok(CurvePair { a, b, c, d })
    }

    pub fn ledger(&self) -> Result<BezoutLedger> {
        bezout_ledger(self.a, self.b, self.c, self.d)
    }

    pub fn report(&self) -> Result<IntersectionReport> {
        intersection_report(self.a, self.b, self.c, self.d)
    }
}

fn det(a: u64, b: u64, c: u64, d: u64) -> i128 {
    a as i128 * d as i128 - b as i128 * c as i128
}

/// Multiplicities `((0:1:0), (1:0:0))` for coprime branches
/// (`gcd(a,b) = gcd(c,d) = 1`): `ac + min(bc, ad)` and `bd + min(ad, bc)`.
pub fn mult_at_infinity_coprime(a: u64, b: u64, c: u64, d: u64) -> Result<(u64, u64)> {
    if a == 0 || b == 0 || c == 0 || d == 0 {
        return Err(Error::BadInput("exponents must be positive".into()));
    }
    if num::integer::gcd(a, b) != 1 || num::integer::gcd(c, d) != 1 {
        return Err(Error::BadInput(
            "branch multiplicities need gcd(a,b) = gcd(c,d) = 1; use the general form".into(),
        ));
    }
    if det(a, b, c, d) == 0 {
        return Err(Error::DegenerateSystem);
    }
    let bc = b * c;
    let ad = a * d;
    Ok((a * c + bc.min(ad), b * d + ad.min(bc)))
}

/// Independent oracle for the multiplicity at `(0:1:0)`.
///
/// In the chart `y = 1` the curves are `x^a = z^(a+b)` and `x^c = z^(c+d)`;
/// substituting the parameterization `t -> (t^(a+b), t^a)` of the first into
/// the second gives `t^(c(a+b)) - t^(a(c+d))`, and the multiplicity is the
/// `t`-order of that pullback.
pub fn puiseux_order_oracle(a: u64, b: u64, c: u64, d: u64) -> Result<u64> {
    if num::integer::gcd(a, b) != 1 || num::integer::gcd(c, d) != 1 {
        return Err(Error::BadInput(
            "the parameterization covers one branch: need gcd(a,b) = gcd(c,d) = 1".into(),
        ));
    }
    if det(a, b, c, d) == 0 {
        return Err(Error::DegenerateSystem);
    }
    // Terms of the second homogenized curve in the chart y = 1, as
    // (coefficient, x-exponent, z-exponent).
    let curve = [(1i64, c, 0u64), (-1i64, 0, c + d)];
    // Pull back along x = t^(a+b), z = t^a and collect t-exponents.
    let mut pullback: Vec<(u64, i64)> = Vec::new();
    for (coeff, xe, ze) in curve {
        let t_exp = xe * (a + b) + ze * a;
        match pullback.iter_mut().find(|(e, _)| *e == t_exp) {
            Some((_, c0)) => *c0 += coeff,
            None => pullback.push((t_exp, coeff)),
        }
    }
    pullback
        .into_iter()
        .filter(|&(_, c0)| c0 != 0)
        .map(|(e, _)| e)
        .min()
        .ok_or(Error::DegenerateSystem)
}

/// General multiplicities at infinity: with `d1 = gcd(a,b)`, `d2 = gcd(c,d)`
/// and primed quotients, each of the `d1 * d2` branch pairs contributes the
/// coprime formula, so the totals are `d1 d2 (a'c' + min(b'c', a'd'))` and
/// `d1 d2 (b'd' + min(b'c', a'd'))`.
pub fn mult_at_infinity_general(a: u64, b: u64, c: u64, d: u64) -> Result<(u64, u64)> {
    if a == 0 || b == 0 || c == 0 || d == 0 {
        return Err(Error::BadInput("exponents must be positive".into()));
    }
    if det(a, b, c, d) == 0 {
        return Err(Error::DegenerateSystem);
    }
    let d1 = num::integer::gcd(a, b);
    let d2 = num::integer::gcd(c, d);
    let (ap, bp, cp, dp) = (a / d1, b / d1, c / d2, d / d2);
    let cross = (bp * cp).min(ap * dp);
    Ok((d1 * d2 * (ap * cp + cross), d1 * d2 * (bp * dp + cross)))
}

/// Bezout bookkeeping for one curve pair. The invariant
/// `total = affine + at010 + at100` is asserted on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BezoutLedger {
    /// `(a+b)(c+d)`: all intersections counted with multiplicity.
    pub total: u64,
    /// `|ad - bc|` distinct transversal affine points.
    pub affine: u64,
    /// Multiplicity at `(0:1:0)`.
    pub at010: u64,
    /// Multiplicity at `(1:0:0)`.
    pub at100: u64,
}

pub fn bezout_ledger(a: u64, b: u64, c: u64, d: u64) -> Result<BezoutLedger> {
    let (at010, at100) = mult_at_infinity_general(a, b, c, d)?;
    let ledger = BezoutLedger {
        total: (a + b) * (c + d),
        affine: u64::try_from(det(a, b, c, d).unsigned_abs())
            .map_err(|_| Error::Overflow("affine count"))?,
        at010,
        at100,
    };
    if ledger.total != ledger.affine + ledger.at010 + ledger.at100 {
        return Err(Error::Internal(format!(
            "bezout ledger violated for ({a},{b},{c},{d}): {} != {} + {} + {}",
            ledger.total, ledger.affine, ledger.at010, ledger.at100
        )));
    }
    Ok(ledger)
}

/// All affine intersection points: the solution group of the character pair
/// `{(a,b), (c,d)}`, each point checked transversal by evaluating
/// `(ad - bc) * x0^(a+c-1) * y0^(b+d-1)` exactly in cyclotomic arithmetic.
///
/// Pure delegation to the character solver, so zero exponents are fine here
/// (the curve degenerates to a coordinate-line system); only the
/// multiplicity-at-infinity formulas require positive exponents.
pub fn affine_intersection_points(a: u64, b: u64, c: u64, d: u64) -> Result<Vec<TorsionPoint>> {
    let report = affine_group(a, b, c, d)?;
    let points = report.elements()?;
    let expected = det(a, b, c, d).unsigned_abs();
    if points.len() as u128 != expected {
        return Err(Error::Internal(format!(
            "expected {expected} affine points, enumerated {}",
            points.len()
        )));
    }
    let spec = QSpec::Transcendental;
    let jac = Scalar::from_integer(
        i64::try_from(det(a, b, c, d)).map_err(|_| Error::Overflow("jacobian factor"))?,
    );
    for p in &points {
        let (un, ud) = p.u();
        let (vn, vd) = p.v();
        let x0 = Scalar::root_of_unity(ud as u64, un)?;
        let y0 = Scalar::root_of_unity(vd as u64, vn)?;
        let value = jac
            .mul(&x0.pow((a + c).saturating_sub(1), &spec)?, &spec)?
            .mul(&y0.pow((b + d).saturating_sub(1), &spec)?, &spec)?;
        if value.is_zero() {
            return Err(Error::Internal(format!(
                "intersection at {p} is not transversal"
            )));
        }
    }
    Ok(points)
}

fn affine_group(a: u64, b: u64, c: u64, d: u64) -> Result<GroupReport> {
    if det(a, b, c, d) == 0 {
        return Err(Error::DegenerateSystem);
    }
    let to_char = |m: u64, n: u64| -> Result<Character> {
        Ok(Character::new(
            i64::try_from(m).map_err(|_| Error::Overflow("character exponent"))?,
            i64::try_from(n).map_err(|_| Error::Overflow("character exponent"))?,
        ))
    };
    solve_constraints(&[to_char(a, b)?, to_char(c, d)?])
}

/// Branch decomposition data for the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchDecomposition {
    pub d1: u64,
    pub d2: u64,
    /// `(a', b', c', d')`: the coprime branch exponents.
    pub primed: (u64, u64, u64, u64),
}

/// CLI-facing intersection report.
#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    /// Degrees `(a+b, c+d)` of the homogenized curves.
    pub degrees: (u64, u64),
    pub ledger: BezoutLedger,
    pub points: Vec<TorsionPoint>,
    pub branch_decomposition: BranchDecomposition,
    /// Group structure of the affine intersection points.
    pub group: GroupReport,
}

pub fn intersection_report(a: u64, b: u64, c: u64, d: u64) -> Result<IntersectionReport> {
    let ledger = bezout_ledger(a, b, c, d)?;
    let points = affine_intersection_points(a, b, c, d)?;
    let group = affine_group(a, b, c, d)?;
    let d1 = num::integer::gcd(a, b);
    let d2 = num::integer::gcd(c, d);
    Ok(IntersectionReport {
        degrees: (a + b, c + d),
        ledger,
        points,
        branch_decomposition: BranchDecomposition {
            d1,
            d2,
            primed: (a / d1, b / d1, c / d2, d / d2),
        },
        group,
    })
}
