//! Dense univariate polynomials over the rationals.
//!
//! Internal helper for cyclotomic reduction: computing `Phi_N`, taking
//! remainders modulo it, and inverting residues with the extended Euclidean
//! algorithm. Coefficients are stored in ascending degree order; the vector is
//! empty for the zero polynomial and its last entry is nonzero otherwise.

use num::{BigRational, One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// `t^n - 1`.
    pub fn power_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[0] = -BigRational::one();
        coeffs[n] = BigRational::one();
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial by convention of the call sites.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return RatPoly::zero();
        }
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    #[allow(dead_code)] // test helper
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        RatPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        RatPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = q * divisor + r` and `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len();
        if rem.len() < d {
            return (RatPoly::zero(), self.clone());
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut quot = vec![BigRational::zero(); rem.len() - d + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let v = c.clone() * b;
                rem[k + j] -= v;
            }
            quot[k] = c;
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`,
    /// `g` monic (or zero when both inputs are zero).
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let one = RatPoly::from_coeffs(vec![BigRational::one()]);
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = one.clone();
        let mut s1 = RatPoly::zero();
        let mut t0 = RatPoly::zero();
        let mut t1 = one;
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead_inv = BigRational::one() / r0.coeffs.last().unwrap().clone();
        (
            r0.scale(&lead_inv),
            s0.scale(&lead_inv),
            t0.scale(&lead_inv),
        )
    }
}
