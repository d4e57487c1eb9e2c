//! Exact coefficient arithmetic: rationals extended by a root of unity `z`
//! of conductor `L` and a quantum parameter `q`.
//!
//! Elements live in `Q(z_L)[q, q^-1]`. The `z`-part of every term is kept
//! reduced modulo the cyclotomic polynomial `Phi_L`, so canonical-form
//! equality coincides with mathematical equality and the zero test is exact.
//! Under a root-of-unity specialization `q` is folded into the `z`-powers
//! (with `q = z_L^(L/N)` for order `N`), so specialized scalars carry no
//! `q`-degree at all.
//!
//! Binary operations lift both operands to the least common conductor. A
//! global cap (default 10 000, see [`set_max_conductor`]) turns runaway
//! conductor growth into a clean resource error.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::RatPoly;

/// Default conductor cap.
pub const DEFAULT_MAX_CONDUCTOR: u64 = 10_000;

static MAX_CONDUCTOR: AtomicU64 = AtomicU64::new(DEFAULT_MAX_CONDUCTOR);

/// Current conductor cap.
pub fn max_conductor() -> u64 {
    MAX_CONDUCTOR.load(Ordering::Relaxed)
}

/// Set the conductor cap. Intended for process startup (CLI flag or the
/// `QPI_MAX_CONDUCTOR` environment variable).
pub fn set_max_conductor(cap: u64) {
    MAX_CONDUCTOR.store(cap.max(1), Ordering::Relaxed);
}

fn check_conductor(l: u128) -> Result<u64> {
    let cap = max_conductor();
    if l > cap as u128 {
        Err(Error::ConductorCap { required: l, cap })
    } else {
        Ok(l as u64)
    }
}

fn lcm_u64(a: u64, b: u64) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a as u128 / num::integer::gcd(a, b) as u128) * b as u128
}

/// Arithmetic nature of the quantum parameter `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QSpec {
    /// `q` is formal: `q^k = 1` only for `k = 0`.
    Transcendental,
    /// `q` is a primitive `N`-th root of unity, `N >= 3`.
    RootOfUnity(u64),
}

impl QSpec {
    /// Checked constructor for the root-of-unity case; rejects `N < 3`
    /// because the quantum plane assumes `q^2 != 1`.
    pub fn root_of_unity(n: u64) -> Result<QSpec> {
        if n < 3 {
            return Err(Error::InvalidQOrder(n));
        }
        Ok(QSpec::RootOfUnity(n))
    }

    /// Validate an enum value produced by pattern construction.
    pub fn validate(&self) -> Result<()> {
        match self {
            QSpec::Transcendental => Ok(()),
            QSpec::RootOfUnity(n) if *n >= 3 => Ok(()),
            QSpec::RootOfUnity(n) => Err(Error::InvalidQOrder(*n)),
        }
    }

    /// Does `q^k = 1` hold under this specialization?
    pub fn q_power_is_one(&self, k: i64) -> bool {
        match self {
            QSpec::Transcendental => k == 0,
            QSpec::RootOfUnity(n) => k.rem_euclid(*n as i64) == 0,
        }
    }
}

/// Whether the factor `q^k - 1` vanishes under `spec`.
pub fn q_power_is_one(k: i64, spec: &QSpec) -> bool {
    spec.q_power_is_one(k)
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Arc<RatPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<RatPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Phi_N` as a rational polynomial, memoized.
pub(crate) fn cyclotomic_ratpoly(n: u64) -> Result<Arc<RatPoly>> {
    check_conductor(n as u128)?;
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return Ok(p.clone());
    }
    // Phi_N = (t^N - 1) / prod_{d | N, d < N} Phi_d
    let mut poly = RatPoly::power_minus_one(n as usize);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_ratpoly(d)?;
            let (q, r) = poly.div_rem(&phi_d);
            debug_assert!(r.is_zero(), "cyclotomic division must be exact");
            poly = q;
        }
    }
    let arc = Arc::new(poly);
    cyclo_cache().lock().unwrap().insert(n, arc.clone());
    Ok(arc)
}

/// The `N`-th cyclotomic polynomial, coefficients in ascending degree order.
///
/// Monic with integer coefficients and degree `phi(N)`. Computed by dividing
/// `t^N - 1` by the product of the `Phi_d` over proper divisors `d` of `N`.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::BadInput("cyclotomic index must be positive".into()));
    }
    let p = cyclotomic_ratpoly(n)?;
    p.coeffs()
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                Ok(c.numer().clone())
            } else {
                Err(Error::Internal(format!(
                    "cyclotomic polynomial Phi_{n} has non-integer coefficient {c}"
                )))
            }
        })
        .collect()
}

/// An exact element of `Q(z_L)[q, q^-1]`.
///
/// Terms map `(q-power, z-power)` to a nonzero rational coefficient; the
/// `z`-powers are reduced modulo `Phi_L`, so they range over
/// `0 .. deg(Phi_L)`. Values are immutable once built and safe to share.
#[derive(Debug, Clone)]
pub struct Scalar {
    conductor: u64,
    terms: BTreeMap<(i64, u64), BigRational>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            conductor: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert((0, 0), r);
        }
        Scalar {
            conductor: 1,
            terms,
        }
    }

    pub fn from_integer(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from(BigInt::from(n)))
    }

    /// `q^k`, canonicalized under `spec` (folded into `z`-powers when `q` is
    /// specialized to a root of unity).
    pub fn q_power(k: i64, spec: &QSpec) -> Result<Scalar> {
        let mut raw = BTreeMap::new();
        raw.insert((k, 0u64), BigRational::one());
        Scalar::reduce(1, raw, spec)
    }

    /// `z_order^exp` (any integer exponent, normalized modulo `order`).
    pub fn root_of_unity(order: u64, exp: i64) -> Result<Scalar> {
        if order == 0 {
            return Err(Error::BadInput(
                "root of unity order must be positive".into(),
            ));
        }
        check_conductor(order as u128)?;
        let e = exp.rem_euclid(order as i64) as u64;
        let mut raw = BTreeMap::new();
        raw.insert((0i64, e), BigRational::one());
        Scalar::reduce(order, raw, &QSpec::Transcendental)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// The value as a plain rational, when it has no `q` or `z` content.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    pub(crate) fn terms(&self) -> impl Iterator<Item = (&(i64, u64), &BigRational)> {
        self.terms.iter()
    }

    /// Canonicalize a raw term map: fold `q` when specialized, reduce
    /// `z`-powers modulo the cyclotomic polynomial, drop zeros.
    fn reduce(
        conductor: u64,
        raw: BTreeMap<(i64, u64), BigRational>,
        spec: &QSpec,
    ) -> Result<Scalar> {
        spec.validate()?;
        // Fold q into z-powers under a root-of-unity specialization.
        let (conductor, raw) = match spec {
            QSpec::RootOfUnity(n) if raw.keys().any(|(k, _)| *k != 0) => {
                let l = check_conductor(lcm_u64(conductor, *n))?;
                let stretch = l / conductor;
                let q_step = l / n;
                let mut folded: BTreeMap<(i64, u64), BigRational> = BTreeMap::new();
                for ((k, e), c) in raw {
                    let ze = (e as i128 * stretch as i128 + k as i128 * q_step as i128)
                        .rem_euclid(l as i128) as u64;
                    *folded.entry((0, ze)).or_insert_with(BigRational::zero) += c;
                }
                (l, folded)
            }
            _ => (conductor, raw),
        };
        let phi = cyclotomic_ratpoly(conductor)?;
        let deg = phi.degree();
        // Group by q-power, reduce each z-polynomial mod Phi_L.
        let mut by_q: BTreeMap<i64, Vec<BigRational>> = BTreeMap::new();
        for ((k, e), c) in raw {
            if c.is_zero() {
                continue;
            }
            let e = (e % conductor) as usize;
            let bucket = by_q.entry(k).or_default();
            if bucket.len() <= e {
                bucket.resize(e + 1, BigRational::zero());
            }
            bucket[e] += c;
        }
        let mut terms = BTreeMap::new();
        for (k, coeffs) in by_q {
            let poly = RatPoly::from_coeffs(coeffs);
            let reduced = if poly.degree() >= deg && !poly.is_zero() {
                poly.div_rem(&phi).1
            } else {
                poly
            };
            for (e, c) in reduced.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((k, e as u64), c.clone());
                }
            }
        }
        Ok(Scalar { conductor, terms })
    }

    /// Canonical form at conductor `l` (a multiple of the current one).
    pub(crate) fn lift_to_conductor(&self, l: u64) -> Result<Scalar> {
        if l == self.conductor {
            return Ok(self.clone());
        }
        debug_assert!(l.is_multiple_of(self.conductor));
        check_conductor(l as u128)?;
        Scalar::reduce(l, self.raw_at_conductor(l), &QSpec::Transcendental)
    }

    /// Re-express the terms at a larger conductor `l` (a multiple of the
    /// current one), as a raw map ready for reduction.
    fn raw_at_conductor(&self, l: u64) -> BTreeMap<(i64, u64), BigRational> {
        let stretch = (l / self.conductor) as u128;
        self.terms
            .iter()
            .map(|(&(k, e), c)| ((k, (e as u128 * stretch % l as u128) as u64), c.clone()))
            .collect()
    }

    pub fn add(&self, other: &Scalar, spec: &QSpec) -> Result<Scalar> {
        let l = check_conductor(lcm_u64(self.conductor, other.conductor))?;
        let mut raw = self.raw_at_conductor(l);
        for (key, c) in other.raw_at_conductor(l) {
            *raw.entry(key).or_insert_with(BigRational::zero) += c;
        }
        Scalar::reduce(l, raw, spec)
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Scalar, spec: &QSpec) -> Result<Scalar> {
        self.add(&other.neg(), spec)
    }

    pub fn mul(&self, other: &Scalar, spec: &QSpec) -> Result<Scalar> {
        let l = check_conductor(lcm_u64(self.conductor, other.conductor))?;
        let a = self.raw_at_conductor(l);
        let b = other.raw_at_conductor(l);
        let mut raw: BTreeMap<(i64, u64), BigRational> = BTreeMap::new();
        for ((k1, e1), c1) in &a {
            for ((k2, e2), c2) in &b {
                let k = k1
                    .checked_add(*k2)
                    .ok_or(Error::Overflow("q-exponent addition"))?;
                let e = (*e1 as u128 + *e2 as u128) % l as u128;
                *raw.entry((k, e as u64)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        Scalar::reduce(l, raw, spec)
    }

    pub fn pow(&self, mut exp: u64, spec: &QSpec) -> Result<Scalar> {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, spec)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base, spec)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse, defined exactly for the units of the ring:
    /// elements supported on a single `q`-power whose cyclotomic part is
    /// nonzero. The cyclotomic part is inverted with the extended Euclidean
    /// algorithm modulo `Phi_L`.
    pub fn try_inverse(&self, spec: &QSpec) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::BadInput("zero has no inverse".into()));
        }
        let mut q_powers = self.terms.keys().map(|(k, _)| *k);
        let k = q_powers.next().unwrap();
        if q_powers.any(|k2| k2 != k) {
            return Err(Error::BadInput(
                "not a unit: mixed q-powers cannot be inverted in the Laurent ring".into(),
            ));
        }
        let mut coeffs = Vec::new();
        for (&(_, e), c) in &self.terms {
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigRational::zero());
            }
            coeffs[e] = c.clone();
        }
        let a = RatPoly::from_coeffs(coeffs);
        let phi = cyclotomic_ratpoly(self.conductor)?;
        let (g, s, _) = a.xgcd(&phi);
        if !g.is_constant() || g.is_zero() {
            return Err(Error::Internal(format!(
                "nonzero residue not invertible modulo Phi_{}",
                self.conductor
            )));
        }
        // g is monic constant 1, so s * a = 1 mod Phi_L.
        let (_, s) = s.div_rem(&phi);
        let neg_k = k
            .checked_neg()
            .ok_or(Error::Overflow("q-exponent negation"))?;
        let raw = s
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| ((neg_k, e as u64), c.clone()))
            .collect();
        Scalar::reduce(self.conductor, raw, spec)
    }

    /// Parse the textual form (see the grammar in the repository README).
    pub fn parse(text: &str, spec: &QSpec) -> Result<Scalar> {
        crate::parse::parse_scalar(text, spec)
    }
}

impl PartialEq for Scalar {
    /// Canonical forms at the same conductor compare structurally; at
    /// different conductors both sides are lifted to the least common one.
    ///
    /// Panics if the common conductor exceeds the cap; comparisons at that
    /// scale should go through the fallible arithmetic instead.
    fn eq(&self, other: &Scalar) -> bool {
        if self.conductor == other.conductor {
            return self.terms == other.terms;
        }
        let l = check_conductor(lcm_u64(self.conductor, other.conductor))
            .expect("conductor cap exceeded while comparing scalars");
        let lift = |s: &Scalar| {
            Scalar::reduce(l, s.raw_at_conductor(l), &QSpec::Transcendental)
                .expect("lift within cap cannot fail")
        };
        lift(self).terms == lift(other).terms
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor > 1 {
            write!(f, "conductor={}; ", self.conductor)?;
        }
        write!(f, "{}", ScalarBody(self))
    }
}

/// Term list without the conductor prefix; used when a larger document has
/// already declared the conductor.
pub(crate) struct ScalarBody<'a>(pub &'a Scalar);

impl fmt::Display for ScalarBody<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0;
        if s.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(k, e), c)) in s.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (k == 0 && e == 0) {
                parts.push(mag.to_string());
            }
            match k {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{k}")),
            }
            match e {
                0 => {}
                1 => parts.push("z".into()),
                _ => parts.push(format!("z^{e}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;

    const T: QSpec = QSpec::Transcendental;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_base_case() {
        // Phi_1 = t - 1
        assert_eq!(
            cyclotomic_polynomial(1).unwrap(),
            vec![BigInt::from(-1), BigInt::from(1)]
        );
    }

    #[test]
    fn cyclotomic_small_values_match_division_oracle() {
        // Frozen from the schoolbook long-division oracle:
        // Phi_4 = (t^4 - 1) / (Phi_1 * Phi_2) = t^2 + 1
        assert_eq!(
            cyclotomic_polynomial(4).unwrap(),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        // Phi_6 = t^2 - t + 1
        assert_eq!(
            cyclotomic_polynomial(6).unwrap(),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        // And the oracle agrees on every N up to 40.
        for n in 1..=40u64 {
            let expected: Vec<BigInt> = oracles::cyclotomic_by_long_division(n)
                .iter()
                .map(|&c| BigInt::from(c))
                .collect();
            assert_eq!(cyclotomic_polynomial(n).unwrap(), expected, "Phi_{n}");
        }
    }

    #[test]
    fn cyclotomic_product_reconstructs_power_minus_one() {
        // prod_{d | N} Phi_d = t^N - 1 for all N <= 60.
        for n in 1..=60u64 {
            let mut prod = RatPoly::from_coeffs(vec![BigRational::one()]);
            for d in 1..=n {
                if n % d == 0 {
                    prod = prod.mul(&cyclotomic_ratpoly(d).unwrap());
                }
            }
            assert_eq!(prod, RatPoly::power_minus_one(n as usize), "N = {n}");
        }
    }

    #[test]
    fn cyclotomic_respects_cap() {
        let err = cyclotomic_polynomial(max_conductor() + 1).unwrap_err();
        assert!(matches!(err, Error::ConductorCap { .. }));
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        // 1 + z_3 + z_3^2 = 0
        let z = Scalar::root_of_unity(3, 1).unwrap();
        let z2 = Scalar::root_of_unity(3, 2).unwrap();
        let sum = Scalar::one().add(&z, &T).unwrap().add(&z2, &T).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn laurent_cancellation() {
        let q = Scalar::q_power(1, &T).unwrap();
        let qinv = Scalar::q_power(-1, &T).unwrap();
        assert!(q.mul(&qinv, &T).unwrap().is_one());
    }

    #[test]
    fn specialization_forces_q_order() {
        let spec = QSpec::root_of_unity(5).unwrap();
        let q5 = Scalar::q_power(5, &spec).unwrap();
        assert!(q5.is_one());
        let q3 = Scalar::q_power(3, &spec).unwrap();
        assert!(!q3.is_one());
        // q^3 is z_5^3 after folding
        assert_eq!(q3, Scalar::root_of_unity(5, 3).unwrap());
    }

    #[test]
    fn q_power_is_one_cases() {
        assert!(q_power_is_one(0, &T));
        assert!(!q_power_is_one(3, &T));
        let s3 = QSpec::root_of_unity(3).unwrap();
        assert!(q_power_is_one(6, &s3));
        assert!(!q_power_is_one(4, &s3));
        assert!(q_power_is_one(-3, &s3));
    }

    #[test]
    fn root_order_detection() {
        // is_zero(z_N^k - 1) iff N | k, for N <= 30.
        for n in 1..=30u64 {
            for k in 0..(2 * n + 1) {
                let z = Scalar::root_of_unity(n, k as i64).unwrap();
                let diff = z.sub(&Scalar::one(), &T).unwrap();
                assert_eq!(diff.is_zero(), k % n == 0, "N={n} k={k}");
            }
        }
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        // z_4 * z_6 has order 12: (z_4 z_6)^12 = 1 and no smaller power is 1.
        let z4 = Scalar::root_of_unity(4, 1).unwrap();
        let z6 = Scalar::root_of_unity(6, 1).unwrap();
        let w = z4.mul(&z6, &T).unwrap();
        assert_eq!(w.conductor(), 12);
        let mut acc = Scalar::one();
        for k in 1..=12 {
            acc = acc.mul(&w, &T).unwrap();
            assert_eq!(acc.is_one(), k == 12, "power {k}");
        }
    }

    #[test]
    fn equality_lifts_conductors() {
        // z_6^2 constructed at conductor 6 equals z_3 at conductor 3.
        let a = Scalar::root_of_unity(6, 2).unwrap();
        let b = Scalar::root_of_unity(3, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Scalar::root_of_unity(3, 2).unwrap());
    }

    #[test]
    fn conductor_cap_surfaces_as_resource_error() {
        // 101 * 103 > 10_000 with the default cap.
        let a = Scalar::root_of_unity(101, 1).unwrap();
        let b = Scalar::root_of_unity(103, 1).unwrap();
        let err = a.mul(&b, &T).unwrap_err();
        assert!(matches!(err, Error::ConductorCap { .. }));
        assert_eq!(err.category().exit_code(), 4);
    }

    #[test]
    fn inverse_of_units() {
        // Rational times q-power.
        let c = Scalar::from_rational(rat(3, 2));
        let q2 = Scalar::q_power(2, &T).unwrap();
        let u = c.mul(&q2, &T).unwrap();
        let inv = u.try_inverse(&T).unwrap();
        assert!(u.mul(&inv, &T).unwrap().is_one());

        // A root of unity whose canonical form has several terms: z_3^2.
        let z = Scalar::root_of_unity(3, 2).unwrap();
        let inv = z.try_inverse(&T).unwrap();
        assert!(z.mul(&inv, &T).unwrap().is_one());
        assert_eq!(inv, Scalar::root_of_unity(3, 1).unwrap());

        // Genuine Laurent polynomials in q are not units.
        let q = Scalar::q_power(1, &T).unwrap();
        let poly = q.add(&Scalar::one(), &T).unwrap();
        assert!(poly.try_inverse(&T).is_err());
    }

    #[test]
    fn cyclotomic_identities() {
        // z_12^2 = z_6, z_12^3 = z_4, z_12^4 = z_3.
        assert_eq!(
            Scalar::root_of_unity(12, 2).unwrap(),
            Scalar::root_of_unity(6, 1).unwrap()
        );
        assert_eq!(
            Scalar::root_of_unity(12, 3).unwrap(),
            Scalar::root_of_unity(4, 1).unwrap()
        );
        assert_eq!(
            Scalar::root_of_unity(12, 4).unwrap(),
            Scalar::root_of_unity(3, 1).unwrap()
        );

        // (z_8 + z_8^-1)^2 = 2.
        let z8 = Scalar::root_of_unity(8, 1).unwrap();
        let s = z8.add(&Scalar::root_of_unity(8, 7).unwrap(), &T).unwrap();
        assert_eq!(s.mul(&s, &T).unwrap(), Scalar::from_integer(2));

        // (1 + z_3)^-1 = -z_3, since 1 + z_3 = -z_3^2.
        let z3 = Scalar::root_of_unity(3, 1).unwrap();
        let u = Scalar::one().add(&z3, &T).unwrap();
        assert_eq!(u.try_inverse(&T).unwrap(), z3.neg());

        // Under order 6, q^3 = -1.
        let spec = QSpec::root_of_unity(6).unwrap();
        let q3 = Scalar::q_power(3, &spec).unwrap();
        assert!(q3.add(&Scalar::one(), &spec).unwrap().is_zero());
    }

    #[test]
    fn display_round_trip() {
        let z = Scalar::root_of_unity(12, 3).unwrap();
        let q = Scalar::q_power(-1, &T).unwrap();
        let s = Scalar::from_rational(rat(1, 2))
            .mul(&q, &T)
            .unwrap()
            .mul(&z, &T)
            .unwrap()
            .add(&Scalar::from_integer(2), &T)
            .unwrap();
        let text = s.to_string();
        assert_eq!(text, "conductor=12; 1/2*q^-1*z^3 + 2");
        assert_eq!(Scalar::parse(&text, &T).unwrap(), s);
    }
}
