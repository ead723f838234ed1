//! Reference implementations used as oracles. None of them touch the
//! log/Zech tables or the linear-algebra routines of the library.
#![allow(dead_code)]

use hermgrs::grs::CodeSpec;
use hermgrs::linalg::Matrix;
use hermgrs::{make_field, Element, Field};
use itertools::Itertools;

/// Schoolbook arithmetic on base-p digit vectors modulo the field modulus.
pub struct Naive {
    pub p: u64,
    pub n: usize,
    modulus: Vec<u64>,
}

impl Naive {
    pub fn of(field: &Field) -> Self {
        Naive {
            p: field.characteristic(),
            n: field.modulus().len() - 1,
            modulus: field.modulus().to_vec(),
        }
    }

    fn digits(&self, x: Element) -> Vec<u64> {
        let mut i = x.index() as u64;
        (0..self.n)
            .map(|_| {
                let d = i % self.p;
                i /= self.p;
                d
            })
            .collect()
    }

    fn element(&self, field: &Field, d: &[u64]) -> Element {
        let idx = d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c);
        field.element(idx as u32).unwrap()
    }

    pub fn add(&self, field: &Field, x: Element, y: Element) -> Element {
        let (a, b) = (self.digits(x), self.digits(y));
        let s: Vec<u64> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        self.element(field, &s)
    }

    pub fn neg(&self, field: &Field, x: Element) -> Element {
        let s: Vec<u64> = self
            .digits(x)
            .iter()
            .map(|&u| (self.p - u) % self.p)
            .collect();
        self.element(field, &s)
    }

    pub fn sub(&self, field: &Field, x: Element, y: Element) -> Element {
        self.add(field, x, self.neg(field, y))
    }

    pub fn mul(&self, field: &Field, x: Element, y: Element) -> Element {
        let (a, b) = (self.digits(x), self.digits(y));
        let mut prod = vec![0u64; 2 * self.n];
        for (i, &u) in a.iter().enumerate() {
            for (j, &v) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        // modulus is monic of degree n
        for d in (self.n..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (t, &mc) in self.modulus.iter().enumerate() {
                let k = d - self.n + t;
                prod[k] = (prod[k] + self.p * self.p - c * mc % self.p) % self.p;
            }
        }
        self.element(field, &prod[..self.n])
    }

    pub fn pow(&self, field: &Field, x: Element, mut e: u64) -> Element {
        let mut base = x;
        let mut acc = Element::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(field, acc, base);
            }
            base = self.mul(field, base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat, `x^{q^2 - 2}`.
    pub fn inv(&self, field: &Field, x: Element) -> Element {
        self.pow(field, x, field.order() - 2)
    }

    pub fn conj(&self, field: &Field, x: Element) -> Element {
        self.pow(field, x, field.q())
    }
}

/// Field for `q` in the test range.
pub fn field_q(q: u64) -> Field {
    let (p, m) = match q {
        2 => (2, 1),
        3 => (3, 1),
        4 => (2, 2),
        5 => (5, 1),
        7 => (7, 1),
        8 => (2, 3),
        9 => (3, 2),
        11 => (11, 1),
        _ => panic!("no test field for q = {q}"),
    };
    make_field(p, m).unwrap()
}

/// `Σ_i x_i y_i^q` over the coordinates, with naive arithmetic.
pub fn hermitian_product(field: &Field, nv: &Naive, x: &[Element], y: &[Element]) -> Element {
    x.iter().zip(y).fold(Element::ZERO, |acc, (&a, &b)| {
        nv.add(field, acc, nv.mul(field, a, nv.conj(field, b)))
    })
}

/// Generator rows written out with naive arithmetic.
pub fn naive_rows(field: &Field, nv: &Naive, code: &CodeSpec) -> Vec<Vec<Element>> {
    (0..code.k())
        .map(|i| {
            let mut row: Vec<Element> = code
                .locators()
                .iter()
                .zip(code.multipliers())
                .map(|(&a, &v)| nv.mul(field, v, nv.pow(field, a, i as u64)))
                .collect();
            if code.is_extended() {
                row.push(if i + 1 == code.k() {
                    Element::ONE
                } else {
                    Element::ZERO
                });
            }
            row
        })
        .collect()
}

/// Self-duality by pairwise Hermitian products of naive generator rows.
pub fn naive_self_dual(field: &Field, code: &CodeSpec) -> bool {
    let nv = Naive::of(field);
    let shape = if code.is_extended() {
        code.n() + 1 == 2 * code.k()
    } else {
        code.n() == 2 * code.k()
    };
    let rows = naive_rows(field, &nv, code);
    shape
        && rows.iter().all(|r| {
            rows.iter()
                .all(|s| hermitian_product(field, &nv, r, s).is_zero())
        })
}

/// Lexicographically first `x ∈ (F_q^*)^n` with `Mx = b`, by enumeration.
pub fn brute_subfield_solve(field: &Field, m: &Matrix, b: &[Element]) -> Option<Vec<Element>> {
    let nv = Naive::of(field);
    let units: Vec<Element> = field
        .elements()
        .filter(|&x| !x.is_zero() && nv.conj(field, x) == x)
        .collect();
    (0..m.cols())
        .map(|_| units.iter().copied())
        .multi_cartesian_product()
        .find(|x| {
            (0..m.rows()).all(|r| {
                let lhs = m
                    .row(r)
                    .iter()
                    .zip(x)
                    .fold(Element::ZERO, |acc, (&a, &xi)| {
                        nv.add(field, acc, nv.mul(field, a, xi))
                    });
                lhs == b[r]
            })
        })
}

/// Exhaustive multiplier search through the naive Gram check, for tiny `n`.
pub fn brute_multipliers_exist(field: &Field, locators: &[Element], extended: bool) -> bool {
    let k = (locators.len() + usize::from(extended)) / 2;
    let nonzero: Vec<Element> = field.nonzero_elements().collect();
    (0..locators.len())
        .map(|_| nonzero.iter().copied())
        .multi_cartesian_product()
        .any(|v| {
            let code = CodeSpec::new(locators.to_vec(), v, k, extended).unwrap();
            naive_self_dual(field, &code)
        })
}
