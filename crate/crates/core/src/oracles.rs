//! Independent reference routines used by the verification suites.
//!
//! Everything here deliberately avoids the main computation paths: the
//! free-algebra routines rewrite words letter by letter instead of using the
//! closed monomial product rule, the cyclotomic routine is schoolbook integer
//! long division, and the Laurent helpers are plain commutative convolution.
//! The test suites and the CLI `selfcheck` compare these against the fast
//! paths; they are not used anywhere else.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::qplane::QPoly;
use crate::scalar::{QSpec, Scalar};

/// An element of the free algebra on `x`, `y`: words mapped to coefficients.
#[derive(Debug, Clone, Default)]
pub struct FreeElem {
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl FreeElem {
    /// Embed a normal-form element, each monomial as the word `x..xy..y`.
    pub fn from_qpoly(f: &QPoly) -> FreeElem {
        let mut terms = BTreeMap::new();
        for ((i, j), c) in f.terms() {
            let mut word = Vec::with_capacity((i + j) as usize);
            word.extend(std::iter::repeat_n(b'x', i as usize));
            word.extend(std::iter::repeat_n(b'y', j as usize));
            terms.insert(word, c.clone());
        }
        FreeElem { terms }
    }

    fn insert_add(&mut self, word: Vec<u8>, c: Scalar, spec: &QSpec) -> Result<()> {
        match self.terms.remove(&word) {
            None => {
                if !c.is_zero() {
                    self.terms.insert(word, c);
                }
            }
            Some(old) => {
                let sum = old.add(&c, spec)?;
                if !sum.is_zero() {
                    self.terms.insert(word, sum);
                }
            }
        }
        Ok(())
    }

    /// Concatenation product, no reordering.
    pub fn mul(&self, other: &FreeElem, spec: &QSpec) -> Result<FreeElem> {
        let mut out = FreeElem::default();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut word = w1.clone();
                word.extend_from_slice(w2);
                out.insert_add(word, c1.mul(c2, spec)?, spec)?;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreeElem, spec: &QSpec) -> Result<FreeElem> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.neg(), spec)?;
        }
        Ok(out)
    }

    /// Rewrite to normal form by repeatedly replacing one adjacent `yx` pair
    /// with `q * xy`, then read off the exponents.
    pub fn normalize(&self, spec: &QSpec) -> Result<QPoly> {
        let q = Scalar::q_power(1, spec)?;
        let mut work: Vec<(Vec<u8>, Scalar)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        let mut sorted = FreeElem::default();
        while let Some((word, coeff)) = work.pop() {
            match word.windows(2).position(|pair| pair == b"yx") {
                Some(p) => {
                    let mut swapped = word.clone();
                    swapped[p] = b'x';
                    swapped[p + 1] = b'y';
                    work.push((swapped, coeff.mul(&q, spec)?));
                }
                None => sorted.insert_add(word, coeff, spec)?,
            }
        }
        let mut out = QPoly::zero();
        for (word, c) in sorted.terms {
            let i = word.iter().filter(|&&b| b == b'x').count() as u32;
            let j = word.len() as u32 - i;
            out = out.add(&QPoly::monomial(i, j, c), spec)?;
        }
        Ok(out)
    }
}

/// Product computed entirely in the free algebra followed by rewriting.
pub fn free_multiply(f: &QPoly, g: &QPoly, spec: &QSpec) -> Result<QPoly> {
    FreeElem::from_qpoly(f)
        .mul(&FreeElem::from_qpoly(g), spec)?
        .normalize(spec)
}

/// Commutator `wu - uw` computed in the free algebra.
pub fn free_commutator(w: &QPoly, u: &QPoly, spec: &QSpec) -> Result<QPoly> {
    let fw = FreeElem::from_qpoly(w);
    let fu = FreeElem::from_qpoly(u);
    fw.mul(&fu, spec)?
        .sub(&fu.mul(&fw, spec)?, spec)?
        .normalize(spec)
}

/// The `n`-th cyclotomic polynomial by schoolbook integer long division,
/// coefficients ascending. Supports the small indices the tests exercise.
pub fn cyclotomic_by_long_division(n: u64) -> Vec<i64> {
    fn trim(mut v: Vec<i64>) -> Vec<i64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    // Exact division of integer polynomials, panics if not exact.
    fn divide(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem = num.to_vec();
        let lead = *den.last().unwrap();
        let mut quot = vec![0i64; rem.len() - den.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + den.len() - 1] / lead;
            assert_eq!(c * lead, rem[k + den.len() - 1], "division must be exact");
            quot[k] = c;
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "division must be exact");
        quot
    }
    fn multiply(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    // t^n - 1 divided by the product of all proper-divisor cyclotomics.
    let mut divisor = vec![1i64];
    for d in 1..n {
        if n.is_multiple_of(d) {
            divisor = multiply(&divisor, &cyclotomic_by_long_division(d));
        }
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    trim(divide(&num, &divisor))
}

/// A commutative Laurent polynomial in two variables with integer
/// coefficients, used to check binomial divisibility identities.
pub type Laurent2 = BTreeMap<(i64, i64), i64>;

pub fn laurent_term(e1: i64, e2: i64, c: i64) -> Laurent2 {
    let mut m = Laurent2::new();
    if c != 0 {
        m.insert((e1, e2), c);
    }
    m
}

pub fn laurent_add(a: &Laurent2, b: &Laurent2) -> Laurent2 {
    let mut out = a.clone();
    for (&k, &c) in b {
        let v = out.entry(k).or_insert(0);
        *v += c;
        if *v == 0 {
            out.remove(&k);
        }
    }
    out
}

pub fn laurent_neg(a: &Laurent2) -> Laurent2 {
    a.iter().map(|(&k, &c)| (k, -c)).collect()
}

pub fn laurent_mul(a: &Laurent2, b: &Laurent2) -> Laurent2 {
    let mut out = Laurent2::new();
    for (&(e1, e2), &c1) in a {
        for (&(f1, f2), &c2) in b {
            let k = (e1 + f1, e2 + f2);
            let v = out.entry(k).or_insert(0);
            *v += c1 * c2;
            if *v == 0 {
                out.remove(&k);
            }
        }
    }
    out
}
