//! Univariate polynomials over `F_{q^2}`.

use crate::error::{Error, Result};
use crate::ff::{Element, Field};

/// Coefficients in ascending degree with no trailing zeros; the zero
/// polynomial is empty and has degree `None` (i.e. `-∞`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Element>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Element>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Element) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c·x^j`.
    pub fn monomial(c: Element, j: usize) -> Self {
        let mut coeffs = vec![Element::ZERO; j + 1];
        coeffs[j] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> Element {
        self.coeffs.get(j).copied().unwrap_or(Element::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `deg(self) <= bound`, with the zero polynomial always passing.
    pub fn degree_at_most(&self, bound: usize) -> bool {
        self.degree().is_none_or(|d| d <= bound)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, field: &Field, x: Element) -> Element {
        self.coeffs
            .iter()
            .rev()
            .fold(Element::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|j| field.add(self.coeff(j), other.coeff(j)))
                .collect(),
        )
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Element::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, field: &Field, lambda: Element) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| field.mul(c, lambda)).collect())
    }

    /// `h(x) = Σ f_j^q x^j`.
    pub fn conjugate_coeffs(&self, field: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| field.frobenius(c)).collect())
    }

    /// `f(a·x + b)`, expanded by Horner's rule over the linear polynomial.
    pub fn compose_affine(&self, field: &Field, a: Element, b: Element) -> Poly {
        let linear = Poly::new(vec![b, a]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            acc.mul(field, &linear).add(field, &Poly::constant(c))
        })
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(field: &Field, points: &[(Element, Element)]) -> Result<Poly> {
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::DuplicateAbscissa);
            }
        }
        let mut acc = Poly::zero();
        for (i, &(xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::constant(Element::ONE);
            let mut denom = Element::ONE;
            for (j, &(xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(field, &Poly::new(vec![field.neg(xj), Element::ONE]));
                denom = field.mul(denom, field.sub(xi, xj));
            }
            let scale = field.div(yi, denom)?;
            acc = acc.add(field, &basis.scale(field, scale));
        }
        Ok(acc)
    }
}
