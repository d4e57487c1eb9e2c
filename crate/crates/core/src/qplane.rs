//! Normal-form arithmetic in the quantum plane, derivations given by their
//! generator images, diagonal automorphisms, and the commutation test.
//!
//! Elements are kept in the normal form `sum c_ij x^i y^j`; the defining
//! relation `yx = q*xy` enters through the monomial product rule
//! `(x^i y^j)(x^k y^l) = q^(jk) x^(i+k) y^(j+l)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{QSpec, Scalar, ScalarBody};

/// A normal-form element `sum c_ij x^i y^j` with exact scalar coefficients.
///
/// No zero coefficients are stored; equality is support-plus-coefficient
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn one() -> QPoly {
        QPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> QPoly {
        QPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Scalar) -> QPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        QPoly { terms }
    }

    pub fn x() -> QPoly {
        QPoly::monomial(1, 0, Scalar::one())
    }

    pub fn y() -> QPoly {
        QPoly::monomial(0, 1, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Exponent pairs with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn insert_add(&mut self, key: (u32, u32), c: Scalar, spec: &QSpec) -> Result<()> {
        match self.terms.remove(&key) {
            None => {
                if !c.is_zero() {
                    self.terms.insert(key, c);
                }
            }
            Some(old) => {
                let sum = old.add(&c, spec)?;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &QPoly, spec: &QSpec) -> Result<QPoly> {
        let mut out = self.clone();
        for (&key, c) in &other.terms {
            out.insert_add(key, c.clone(), spec)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &QPoly, spec: &QSpec) -> Result<QPoly> {
        self.add(&other.neg(), spec)
    }

    pub fn scale(&self, s: &Scalar, spec: &QSpec) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for (&key, c) in &self.terms {
            out.insert_add(key, c.mul(s, spec)?, spec)?;
        }
        Ok(out)
    }

    /// Normal-form product under `yx = q*xy`.
    pub fn mul(&self, other: &QPoly, spec: &QSpec) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let i = i1.checked_add(i2).ok_or(Error::Overflow("x-exponent"))?;
                let j = j1.checked_add(j2).ok_or(Error::Overflow("y-exponent"))?;
                let q_exp = i64::try_from(j1 as u64 * i2 as u64)
                    .map_err(|_| Error::Overflow("q-exponent"))?;
                let mut c = c1.mul(c2, spec)?;
                if q_exp != 0 {
                    c = c.mul(&Scalar::q_power(q_exp, spec)?, spec)?;
                }
                out.insert_add((i, j), c, spec)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32, spec: &QSpec) -> Result<QPoly> {
        let mut acc = QPoly::one();
        for _ in 0..exp {
            acc = acc.mul(self, spec)?;
        }
        Ok(acc)
    }

    /// Parse the textual form (see the grammar in the repository README).
    pub fn parse(text: &str, spec: &QSpec) -> Result<QPoly> {
        crate::parse::parse_qpoly(text, spec)
    }

    /// JSON term-list form.
    pub fn to_dto(&self) -> Vec<QPolyTermDto> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| QPolyTermDto {
                i,
                j,
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_dto(dto: &[QPolyTermDto], spec: &QSpec) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for t in dto {
            let c = Scalar::parse(&t.coeff, spec)?;
            out.insert_add((t.i, t.j), c, spec)?;
        }
        Ok(out)
    }
}

/// One term of the JSON form: `{"i": 2, "j": 1, "coeff": "1/2*q"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QPolyTermDto {
    pub i: u32,
    pub j: u32,
    pub coeff: String,
}

/// `wu - uw`.
///
/// For `w = x^i y^j` this yields `[w, x] = (q^j - 1) x^(i+1) y^j` and
/// `[w, y] = (1 - q^i) x^i y^(j+1)`.
pub fn commutator(w: &QPoly, u: &QPoly, spec: &QSpec) -> Result<QPoly> {
    w.mul(u, spec)?.sub(&u.mul(w, spec)?, spec)
}

impl fmt::Display for QPoly {
    /// Textual form; panics if lifting every coefficient to a common
    /// conductor would exceed the cap (build such documents through the
    /// fallible API instead).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut conductor: u128 = 1;
        for c in self.terms.values() {
            conductor = num::integer::lcm(conductor, c.conductor() as u128);
            assert!(
                conductor <= crate::scalar::max_conductor() as u128,
                "conductor cap exceeded while displaying polynomial"
            );
        }
        let conductor = conductor as u64;
        if conductor > 1 {
            write!(f, "conductor={conductor}; ")?;
        }
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let c = c
                .lift_to_conductor(conductor)
                .expect("conductor cap exceeded while displaying polynomial");
            let mut vars = String::new();
            match i {
                0 => {}
                1 => vars.push('x'),
                _ => vars.push_str(&format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push('y');
                }
                _ => {
                    if !vars.is_empty() {
                        vars.push('*');
                    }
                    vars.push_str(&format!("y^{j}"));
                }
            }
            let (sign, body) = render_coefficient(&c, &vars);
            if idx == 0 {
                if sign < 0 {
                    write!(f, "-")?;
                }
            } else if sign < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// Render one polynomial term: returns (sign, body without leading sign).
fn render_coefficient(c: &Scalar, vars: &str) -> (i8, String) {
    use num::Signed;
    let mut it = c.terms();
    let first = it.next();
    let single = first.is_some() && it.next().is_none();
    if single {
        let (&(k, e), rat) = first.unwrap();
        let sign = if rat.is_negative() { -1 } else { 1 };
        let mag = rat.abs();
        let mut parts: Vec<String> = Vec::new();
        if !num::One::is_one(&mag) || (k == 0 && e == 0 && vars.is_empty()) {
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
        if !vars.is_empty() {
            parts.push(vars.to_string());
        }
        (sign, parts.join("*"))
    } else {
        let body = format!("({})", ScalarBody(c));
        if vars.is_empty() {
            (1, body)
        } else {
            (1, format!("{body}*{vars}"))
        }
    }
}

/// A derivation, determined by its images on the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    dx: QPoly,
    dy: QPoly,
    provenance: Option<InnerForm>,
}

/// Decomposed form `ad_w + a*D_x + b*D_y` with scalar `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerForm {
    pub w: QPoly,
    pub a: Scalar,
    pub b: Scalar,
}

impl Derivation {
    /// Build `ad_w + a*D_x + b*D_y`: the images are `[w,x] + a*x` and
    /// `[w,y] + b*y`. Scalar `a`, `b` only; derivations whose scaling
    /// coefficients are nonscalar central elements must come in through
    /// [`Derivation::from_images`].
    pub fn from_inner_form(w: &QPoly, a: &Scalar, b: &Scalar, spec: &QSpec) -> Result<Derivation> {
        spec.validate()?;
        let dx = commutator(w, &QPoly::x(), spec)?.add(&QPoly::monomial(1, 0, a.clone()), spec)?;
        let dy = commutator(w, &QPoly::y(), spec)?.add(&QPoly::monomial(0, 1, b.clone()), spec)?;
        debug_assert!(
            relation_residual(&dx, &dy, spec)?.is_zero(),
            "inner-form construction must satisfy the defining relation"
        );
        Ok(Derivation {
            dx,
            dy,
            provenance: Some(InnerForm {
                w: w.clone(),
                a: a.clone(),
                b: b.clone(),
            }),
        })
    }

    /// Build a derivation from arbitrary images, verifying that they respect
    /// the defining relation `yx = q*xy`.
    pub fn from_images(dx: QPoly, dy: QPoly, spec: &QSpec) -> Result<Derivation> {
        spec.validate()?;
        let residual = relation_residual(&dx, &dy, spec)?;
        if !residual.is_zero() {
            return Err(Error::NotADerivation {
                residual: residual.to_string(),
            });
        }
        Ok(Derivation {
            dx,
            dy,
            provenance: None,
        })
    }

    pub fn dx(&self) -> &QPoly {
        &self.dx
    }

    pub fn dy(&self) -> &QPoly {
        &self.dy
    }

    pub fn inner_form(&self) -> Option<&InnerForm> {
        self.provenance.as_ref()
    }

    /// Evaluate the derivation on an arbitrary normal-form element by the
    /// Leibniz rule applied to each monomial.
    pub fn apply(&self, f: &QPoly, spec: &QSpec) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for ((i, j), c) in f.terms() {
            let image = self.monomial_image(i, j, spec)?;
            out = out.add(&image.scale(c, spec)?, spec)?;
        }
        Ok(out)
    }

    /// delta(x^i y^j) = sum_t x^t dx x^(i-1-t) y^j + sum_t x^i y^t dy y^(j-1-t).
    fn monomial_image(&self, i: u32, j: u32, spec: &QSpec) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for t in 0..i {
            let left = QPoly::monomial(t, 0, Scalar::one());
            let right = QPoly::monomial(i - 1 - t, j, Scalar::one());
            out = out.add(&left.mul(&self.dx, spec)?.mul(&right, spec)?, spec)?;
        }
        for t in 0..j {
            let left = QPoly::monomial(i, t, Scalar::one());
            let right = QPoly::monomial(0, j - 1 - t, Scalar::one());
            out = out.add(&left.mul(&self.dy, spec)?.mul(&right, spec)?, spec)?;
        }
        Ok(out)
    }
}

/// The defining-relation residual `dy*x + y*dx - q*(dx*y + x*dy)`; zero
/// exactly when `(dx, dy)` are the images of a derivation.
pub fn relation_residual(dx: &QPoly, dy: &QPoly, spec: &QSpec) -> Result<QPoly> {
    let x = QPoly::x();
    let y = QPoly::y();
    let lhs = dy.mul(&x, spec)?.add(&y.mul(dx, spec)?, spec)?;
    let rhs = dx
        .mul(&y, spec)?
        .add(&x.mul(dy, spec)?, spec)?
        .scale(&Scalar::q_power(1, spec)?, spec)?;
    lhs.sub(&rhs, spec)
}

/// A diagonal automorphism `x -> mu1*x`, `y -> mu2*y` with unit entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAutomorphism {
    mu1: Scalar,
    mu2: Scalar,
}

impl DiagonalAutomorphism {
    /// Checked constructor: both entries must be units of the scalar ring.
    pub fn new(mu1: Scalar, mu2: Scalar, spec: &QSpec) -> Result<DiagonalAutomorphism> {
        mu1.try_inverse(spec)
            .map_err(|_| Error::BadInput("mu1 is not a unit".into()))?;
        mu2.try_inverse(spec)
            .map_err(|_| Error::BadInput("mu2 is not a unit".into()))?;
        Ok(DiagonalAutomorphism { mu1, mu2 })
    }

    pub fn identity() -> DiagonalAutomorphism {
        DiagonalAutomorphism {
            mu1: Scalar::one(),
            mu2: Scalar::one(),
        }
    }

    pub fn mu1(&self) -> &Scalar {
        &self.mu1
    }

    pub fn mu2(&self) -> &Scalar {
        &self.mu2
    }

    /// Apply to a normal-form element: `c x^i y^j -> c mu1^i mu2^j x^i y^j`.
    pub fn apply(&self, f: &QPoly, spec: &QSpec) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for ((i, j), c) in f.terms() {
            let factor = self
                .mu1
                .pow(i as u64, spec)?
                .mul(&self.mu2.pow(j as u64, spec)?, spec)?;
            out = out.add(&QPoly::monomial(i, j, c.mul(&factor, spec)?), spec)?;
        }
        Ok(out)
    }

    pub fn inverse(&self, spec: &QSpec) -> Result<DiagonalAutomorphism> {
        Ok(DiagonalAutomorphism {
            mu1: self.mu1.try_inverse(spec)?,
            mu2: self.mu2.try_inverse(spec)?,
        })
    }
}

/// Does `rho` commute with `delta`? Evaluates `(rho delta - delta rho)` on
/// both generators and tests the residuals for zero.
///
/// On `x` the residual is `rho(dx) - mu1*dx`, i.e. termwise
/// `a_ij mu1 (mu1^(i-1) mu2^j - 1) x^i y^j`; symmetrically on `y`.
pub fn commutes(rho: &DiagonalAutomorphism, delta: &Derivation, spec: &QSpec) -> Result<bool> {
    let rx = rho
        .apply(delta.dx(), spec)?
        .sub(&delta.dx().scale(rho.mu1(), spec)?, spec)?;
    if !rx.is_zero() {
        return Ok(false);
    }
    let ry = rho
        .apply(delta.dy(), spec)?
        .sub(&delta.dy().scale(rho.mu2(), spec)?, spec)?;
    Ok(ry.is_zero())
}

/// `rho delta rho^-1`, as a derivation.
pub fn conjugate(
    rho: &DiagonalAutomorphism,
    delta: &Derivation,
    spec: &QSpec,
) -> Result<Derivation> {
    let inv = rho.inverse(spec)?;
    let dx = rho.apply(delta.dx(), spec)?.scale(inv.mu1(), spec)?;
    let dy = rho.apply(delta.dy(), spec)?.scale(inv.mu2(), spec)?;
    Derivation::from_images(dx, dy, spec)
}
