//! The three explicit locator families and the closed-form multipliers that
//! make the corresponding (extended) GRS codes Hermitian self-dual.
//!
//! Every construction records `λ` and the affine map `x ↦ Ax + B` with
//! `v_i^{q+1} = λ u_i` and `α_i^q = A α_i + B`, so that the witness
//! `g(x) = λ h(Ax + B)`, `h = Σ f_j^q x^j`, can be rebuilt for any message
//! polynomial `f`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ff::{Element, Field};
use crate::grs::{u_vector, CodeSpec};
use crate::poly::Poly;
use crate::report::Pool;
use crate::selfdual::criterion_direct;

/// `S = {α : α^q = θ^e α + b}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyS {
    /// `e` reduced modulo `q^2 - 1`.
    pub e: u64,
    pub b: Element,
    pub elements: Vec<Element>,
}

pub fn family_s(field: &Field, e: i64, b: Element) -> FamilyS {
    let e = e.rem_euclid(field.group_order() as i64) as u64;
    let a = field.theta_pow(e as i64);
    let elements = field
        .elements()
        .filter(|&x| field.frobenius(x) == field.add(field.mul(a, x), b))
        .collect();
    FamilyS { e, b, elements }
}

/// `B_l = a_l θ + V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyB {
    pub l: usize,
    pub a_l: Element,
    pub elements: Vec<Element>,
}

/// `B_{l,m} = a_l + θ^m V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBlm {
    pub l: usize,
    pub m: u64,
    pub elements: Vec<Element>,
}

fn trace_zero_index(field: &Field, l: usize) -> Result<Element> {
    field
        .trace_zero_set()
        .get(l)
        .ok_or(Error::IndexOutOfRange { l, q: field.q() })
}

/// First `l` in `2..=q` with `a_l β ∈ V^*`, if any.
pub fn coset_condition_failure(field: &Field, beta: Element) -> Option<usize> {
    let v = field.trace_zero_set();
    (2..=v.len()).find(|&l| {
        let x = field.mul(v.get(l).unwrap(), beta);
        !x.is_zero() && field.trace(x).is_zero()
    })
}

/// `{shift + scale·x : x ∈ V}` in ascending canonical order.
fn shifted_scaled_v(field: &Field, shift: Element, scale: Element) -> Vec<Element> {
    field
        .trace_zero_set()
        .elements
        .iter()
        .map(|&x| field.add(shift, field.mul(scale, x)))
        .sorted()
        .collect()
}

pub fn family_b(field: &Field, l: usize) -> Result<FamilyB> {
    let a_l = trace_zero_index(field, l)?;
    let theta = field.theta();
    if let Some(bad) = coset_condition_failure(field, theta) {
        return Err(Error::InvalidBeta { l: bad });
    }
    Ok(FamilyB {
        l,
        a_l,
        elements: shifted_scaled_v(field, field.mul(a_l, theta), Element::ONE),
    })
}

/// `a_l + θ^m V` without checking the coset condition on `θ^m`.
pub fn blm_elements(field: &Field, l: usize, m: u64) -> Result<Vec<Element>> {
    let a_l = trace_zero_index(field, l)?;
    Ok(shifted_scaled_v(field, a_l, field.theta_pow(m as i64)))
}

pub fn family_blm(field: &Field, l: usize, m: u64) -> Result<FamilyBlm> {
    let elements = blm_elements(field, l, m)?;
    if let Some(bad) = coset_condition_failure(field, field.theta_pow(m as i64)) {
        return Err(Error::InvalidBetaM { m, l: bad });
    }
    Ok(FamilyBlm { l, m, elements })
}

/// Exponents `m` in `0..q^2-1` for which `θ^m` satisfies the coset condition.
pub fn valid_m_values(field: &Field) -> Vec<u64> {
    (0..field.group_order())
        .filter(|&m| coset_condition_failure(field, field.theta_pow(m as i64)).is_none())
        .collect()
}

/// A constructed self-dual code together with the data of its proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub theorem: u8,
    pub code: CodeSpec,
    /// `v_i^{q+1} = λ u_i` for every `i`.
    pub lambda: Element,
    /// `(A, B)` with `α_i^q = A α_i + B`.
    pub affine: (Element, Element),
    /// Unreduced exponent of each `v_i = θ^{…}` as given by the proof formula.
    pub proof_exponents: Vec<u64>,
    /// The `s` chosen in the extended cases.
    pub s: Option<u64>,
}

impl Construction {
    /// `g(x) = λ h(Ax + B)` for the message polynomial `f`.
    pub fn witness(&self, field: &Field, f: &Poly) -> Poly {
        let (a, b) = self.affine;
        f.conjugate_coeffs(field)
            .compose_affine(field, a, b)
            .scale(field, self.lambda)
    }
}

struct Shape {
    k: usize,
    extended: bool,
}

fn check_shape(field: &Field, n: usize, extended: bool) -> Result<Shape> {
    let q = field.q() as usize;
    if n == 0 || (extended && n.is_multiple_of(2)) || (!extended && n % 2 == 1) {
        return Err(Error::DimensionMismatch {
            n,
            k: n.div_ceil(2),
            extended,
        });
    }
    if n > q {
        return Err(Error::HypothesisViolated(format!("n = {n} exceeds q = {q}")));
    }
    Ok(Shape {
        k: (n + usize::from(extended)) / 2,
        extended,
    })
}

fn pick_locators(
    field: &Field,
    family: &[Element],
    n: usize,
    chosen: Option<&[Element]>,
) -> Result<Vec<Element>> {
    match chosen {
        Some(xs) => {
            if xs.len() != n {
                return Err(Error::InvalidCode(format!(
                    "{} locators supplied for n = {n}",
                    xs.len()
                )));
            }
            if xs.iter().duplicates().next().is_some() {
                return Err(Error::DuplicateLocator);
            }
            if let Some(x) = xs.iter().find(|x| !family.contains(x)) {
                return Err(Error::NotInFamily(field.render(*x)));
            }
            Ok(xs.to_vec())
        }
        None => {
            if family.len() < n {
                return Err(Error::HypothesisViolated(format!(
                    "family has {} elements, n = {n}",
                    family.len()
                )));
            }
            Ok(family[..n].to_vec())
        }
    }
}

/// `t` with `θ^{offset + t(q+1)} = x`, failing when no such `t` exists.
fn norm_class(field: &Field, x: Element, offset: i64) -> Result<u64> {
    let n = field.group_order() as i64;
    let step = field.q() as i64 + 1;
    let t = (field.dlog(x)? as i64 - offset).rem_euclid(n);
    if t % step != 0 {
        return Err(Error::HypothesisViolated(format!(
            "dlog {} is not ≡ {offset} mod q+1",
            field.dlog(x)?
        )));
    }
    Ok((t / step) as u64)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    field: &Field,
    theorem: u8,
    shape: &Shape,
    locators: Vec<Element>,
    proof_exponents: Vec<u64>,
    lambda: Element,
    affine: (Element, Element),
    s: Option<u64>,
) -> Result<Construction> {
    let multipliers = proof_exponents
        .iter()
        .map(|&t| field.theta_pow((t % field.group_order()) as i64))
        .collect();
    let code = CodeSpec::new(locators, multipliers, shape.k, shape.extended)?;
    let u = u_vector(field, code.locators())?;
    for (v, ui) in code.multipliers().iter().zip(u.as_slice()) {
        if field.norm(*v) != field.mul(lambda, *ui) {
            return Err(Error::HypothesisViolated("v^{q+1} ≠ λu".into()));
        }
    }
    if !criterion_direct(field, &code)? {
        return Err(Error::HypothesisViolated(
            "constructed code fails the Gram check".into(),
        ));
    }
    Ok(Construction {
        theorem,
        code,
        lambda,
        affine,
        proof_exponents,
        s,
    })
}

/// Codes on locators from `S = {α : α^q = θ^e α + b}`.
///
/// Plain (`n = 2k`) requires `(q-1) | e(n-1)`; extended (`n = 2k-1`)
/// requires `(q-1) | e(k-1)`.
pub fn construct_theorem1(
    field: &Field,
    e: i64,
    b: Element,
    n: usize,
    extended: bool,
    locators: Option<&[Element]>,
) -> Result<Construction> {
    let shape = check_shape(field, n, extended)?;
    let family = family_s(field, e, b);
    let e = family.e;
    let q = field.q();
    let qm1 = q - 1;
    let hyp = if extended {
        e * (shape.k as u64 - 1)
    } else {
        e * (n as u64 - 1)
    };
    if hyp % qm1 != 0 {
        return Err(Error::HypothesisViolated(format!(
            "(q-1) = {qm1} does not divide {hyp}"
        )));
    }
    // e(n-1)/(q-1); divisible in both cases because n - 1 = 2(k - 1) when extended
    let big_e = e * (n as u64 - 1);
    if !big_e.is_multiple_of(qm1) {
        return Err(Error::HypothesisViolated(format!(
            "(q-1) = {qm1} does not divide e(n-1) = {big_e}"
        )));
    }
    let big_e = big_e / qm1;
    let locators = pick_locators(field, &family.elements, n, locators)?;
    let u = u_vector(field, &locators)?;
    let affine = (field.theta_pow(e as i64), b);

    let mut classes = Vec::with_capacity(n);
    for &ui in u.as_slice() {
        classes.push(norm_class(field, ui, -(big_e as i64))?);
    }
    if !extended {
        let lambda = field.theta_pow(big_e as i64);
        return finish(field, 1, &shape, locators, classes, lambda, affine, None);
    }
    let ek = e * (shape.k as u64 - 1) / qm1;
    let s = (qm1 - ek % qm1) % qm1;
    let offset = s + if q % 2 == 1 { (q - 1) / 2 } else { 0 };
    let lambda = field.neg(field.theta_pow((big_e + s * (q + 1)) as i64));
    let exps = classes.iter().map(|c| c + offset).collect();
    finish(field, 1, &shape, locators, exps, lambda, affine, Some(s))
}

/// Codes on locators from `B_l = a_l θ + V`, `n <= q`.
pub fn construct_theorem2(
    field: &Field,
    l: usize,
    n: usize,
    extended: bool,
    locators: Option<&[Element]>,
) -> Result<Construction> {
    let shape = check_shape(field, n, extended)?;
    let family = family_b(field, l)?;
    let q = field.q();
    let odd = q % 2 == 1;
    let theta = field.theta();
    // α^q = -α + (θ - θ^q) a_l
    let affine = (
        field.minus_one(),
        field.mul(field.sub(theta, field.frobenius(theta)), family.a_l),
    );
    let locators = pick_locators(field, &family.elements, n, locators)?;
    let u = u_vector(field, &locators)?;

    if !extended {
        let half = q.div_ceil(2) as i64;
        let (offset, shift, lambda) = if odd {
            (half, 1, field.theta_pow(half))
        } else {
            (0, 0, Element::ONE)
        };
        let exps = u
            .as_slice()
            .iter()
            .map(|&ui| norm_class(field, ui, offset).map(|c| c + shift))
            .collect::<Result<Vec<_>>>()?;
        return finish(field, 2, &shape, locators, exps, lambda, affine, None);
    }
    let k = shape.k as u64;
    let shift = if odd { k * (q - 1) / 2 } else { 0 };
    let lambda = if k % 2 == 1 {
        field.minus_one()
    } else {
        Element::ONE
    };
    let exps = u
        .as_slice()
        .iter()
        .map(|&ui| norm_class(field, ui, 0).map(|c| c + shift))
        .collect::<Result<Vec<_>>>()?;
    finish(field, 2, &shape, locators, exps, lambda, affine, None)
}

/// Codes on locators from `B_{l,m} = a_l + θ^m V`, `n <= q`.
pub fn construct_theorem3(
    field: &Field,
    l: usize,
    m: u64,
    n: usize,
    extended: bool,
    locators: Option<&[Element]>,
) -> Result<Construction> {
    let shape = check_shape(field, n, extended)?;
    let family = family_blm(field, l, m)?;
    let a_l = trace_zero_index(field, l)?;
    let q = field.q();
    let odd = q % 2 == 1;
    let nn = field.group_order();
    let m = m % nn;
    let beta = field.theta_pow(m as i64);
    let beta_qm1 = field.pow_u(beta, q - 1);
    // α^q = -β^{q-1} α + (β^{q-1} - 1) a_l
    let affine = (
        field.neg(beta_qm1),
        field.mul(field.sub(beta_qm1, Element::ONE), a_l),
    );
    let locators = pick_locators(field, &family.elements, n, locators)?;
    let u = u_vector(field, &locators)?;
    // P_i = β^{n-1} u_i = ∏ (x_i - x_j)^{-1}
    let beta_n1 = field.pow_u(beta, n as u64 - 1);
    let p: Vec<Element> = u.as_slice().iter().map(|&ui| field.mul(beta_n1, ui)).collect();
    let mn1 = m * (n as u64 - 1);

    if !extended {
        let half = q.div_ceil(2) as i64;
        let (offset, shift, lambda) = if odd {
            (half, 1, field.theta_pow(mn1 as i64 + half))
        } else {
            (0, 0, field.theta_pow(mn1 as i64))
        };
        let exps = p
            .iter()
            .map(|&pi| norm_class(field, pi, offset).map(|c| c + shift))
            .collect::<Result<Vec<_>>>()?;
        return finish(field, 3, &shape, locators, exps, lambda, affine, None);
    }
    let k = shape.k as u64;
    let qm1 = q - 1;
    let mk = (m * (k - 1)) % qm1;
    let s = (qm1 - mk) % qm1;
    let shift = s + if odd { k * (q - 1) / 2 } else { 0 };
    let mut lambda = field.theta_pow((mn1 + s * (q + 1)) as i64);
    if k % 2 == 1 {
        lambda = field.neg(lambda);
    }
    let exps = p
        .iter()
        .map(|&pi| norm_class(field, pi, 0).map(|c| c + shift))
        .collect::<Result<Vec<_>>>()?;
    finish(field, 3, &shape, locators, exps, lambda, affine, Some(s))
}

/// Resolves a pool name: `all`, `all-nonzero`, `subgroup` (`⟨θ^{q-1}⟩`),
/// `subfield` (`F_q`), `subfield-v` (`F_q ∪ V`), `trace-zero` (`V`),
/// `B:l`, `Blm:l:m` or `S:e:b`.
pub fn named_pool(field: &Field, name: &str) -> Result<Pool> {
    let q = field.q();
    let parts: Vec<&str> = name.split(':').collect();
    let parse_usize = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad index `{s}` in pool `{name}`")))
    };
    let elements = match parts.as_slice() {
        ["all"] => field.elements().collect(),
        ["all-nonzero"] => field.nonzero_elements().collect(),
        ["subgroup"] => (0..q + 1)
            .map(|t| field.theta_pow((t * (q - 1)) as i64))
            .collect(),
        ["subfield"] => field.subfield_elements(),
        ["subfield-v"] => {
            let mut xs = field.subfield_elements();
            xs.extend(field.trace_zero_set().elements);
            xs
        }
        ["trace-zero"] => field.trace_zero_set().elements,
        ["B", l] => family_b(field, parse_usize(l)?)?.elements,
        ["Blm", l, m] => family_blm(field, parse_usize(l)?, parse_usize(m)? as u64)?.elements,
        ["S", e, b] => {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{e}` in pool `{name}`")))?;
            family_s(field, e, field.parse_element(b)?).elements
        }
        _ => return Err(Error::Parse(format!("unknown pool `{name}`"))),
    };
    Ok(Pool::new(name, elements).canonical())
}
