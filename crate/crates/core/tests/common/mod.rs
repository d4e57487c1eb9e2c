//! Shared helpers for the integration suites: seeded randomness and
//! generators for scalars, polynomials and automorphisms.
#![allow(dead_code)]

use num::{BigInt, BigRational};
use qpi_core::qplane::{DiagonalAutomorphism, QPoly};
use qpi_core::scalar::{QSpec, Scalar};
use qpi_core::torus::TorsionPoint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.random_range(-6i64..=6);
    let den = rng.random_range(1i64..=4);
    Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// A random scalar: a short sum of rational multiples of `q^k z^e` at a
/// small conductor.
pub fn random_scalar(rng: &mut ChaCha8Rng, spec: &QSpec) -> Scalar {
    let conductor = *[1u64, 3, 4, 6].choose(rng).unwrap();
    let mut acc = Scalar::zero();
    for _ in 0..rng.random_range(1..=3) {
        let mut term = random_rational(rng);
        if let QSpec::Transcendental = spec {
            let k = rng.random_range(-2i64..=2);
            term = term.mul(&Scalar::q_power(k, spec).unwrap(), spec).unwrap();
        } else {
            let k = rng.random_range(0i64..=4);
            term = term.mul(&Scalar::q_power(k, spec).unwrap(), spec).unwrap();
        }
        let e = rng.random_range(0i64..=(conductor as i64 - 1).max(0));
        term = term
            .mul(&Scalar::root_of_unity(conductor, e).unwrap(), spec)
            .unwrap();
        acc = acc.add(&term, spec).unwrap();
    }
    acc
}

/// A random normal-form polynomial with nonzero rational coefficients.
pub fn random_qpoly(rng: &mut ChaCha8Rng, spec: &QSpec, max_exp: u32, max_terms: usize) -> QPoly {
    let mut acc = QPoly::zero();
    for _ in 0..rng.random_range(1..=max_terms) {
        let i = rng.random_range(0..=max_exp);
        let j = rng.random_range(0..=max_exp);
        let mut c = random_rational(rng);
        if c.is_zero() {
            c = Scalar::one();
        }
        acc = acc.add(&QPoly::monomial(i, j, c), spec).unwrap();
    }
    acc
}

/// A random `w` with small nonzero integer coefficients, support in
/// `[0, max_exp]^2`.
pub fn random_w(rng: &mut ChaCha8Rng, spec: &QSpec, max_exp: u32, max_terms: usize) -> QPoly {
    let mut acc = QPoly::zero();
    for _ in 0..rng.random_range(1..=max_terms) {
        let i = rng.random_range(0..=max_exp);
        let j = rng.random_range(0..=max_exp);
        let c = Scalar::from_integer(*[-2i64, -1, 1, 2, 3].choose(rng).unwrap());
        acc = acc.add(&QPoly::monomial(i, j, c), spec).unwrap();
    }
    acc
}

/// Realize a torsion point as a diagonal automorphism with exact
/// root-of-unity entries.
pub fn realize_point(p: &TorsionPoint, spec: &QSpec) -> DiagonalAutomorphism {
    let (un, ud) = p.u();
    let (vn, vd) = p.v();
    DiagonalAutomorphism::new(
        Scalar::root_of_unity(ud as u64, un).unwrap(),
        Scalar::root_of_unity(vd as u64, vn).unwrap(),
        spec,
    )
    .unwrap()
}
