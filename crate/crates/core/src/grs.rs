//! Generalized Reed–Solomon codes `GRS_k(a, v)` and their extensions
//! `GRS_k(a, v, ∞)` by the coefficient of `x^{k-1}`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Element, Field};
use crate::linalg::{determinant, Matrix};
use crate::poly::Poly;

/// Default cap on `q^{2k}` for brute-force minimum distance.
pub const DEFAULT_CODEWORD_BUDGET: u128 = 1_000_000;
/// Default cap on generator-matrix columns for the exhaustive minor check.
pub const DEFAULT_MAX_MINOR_COLUMNS: usize = 12;

/// Locators, multipliers, dimension and the extension flag of one code.
///
/// Locator order is significant. The `∞` coordinate of an extended code is
/// carried by the flag and never stored as a locator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    locators: Vec<Element>,
    multipliers: Vec<Element>,
    k: usize,
    extended: bool,
}

impl CodeSpec {
    pub fn new(
        locators: Vec<Element>,
        multipliers: Vec<Element>,
        k: usize,
        extended: bool,
    ) -> Result<Self> {
        let n = locators.len();
        if multipliers.len() != n {
            return Err(Error::InvalidCode(format!(
                "{} locators but {} multipliers",
                n,
                multipliers.len()
            )));
        }
        if k == 0 || k > n + usize::from(extended) {
            return Err(Error::InvalidCode(format!("dimension k = {k} with n = {n}")));
        }
        if locators.iter().duplicates().next().is_some() {
            return Err(Error::DuplicateLocator);
        }
        if let Some(i) = multipliers.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroMultiplier(i));
        }
        Ok(CodeSpec {
            locators,
            multipliers,
            k,
            extended,
        })
    }

    pub fn locators(&self) -> &[Element] {
        &self.locators
    }

    pub fn multipliers(&self) -> &[Element] {
        &self.multipliers
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of finite locators.
    pub fn n(&self) -> usize {
        self.locators.len()
    }

    /// Code length including the `∞` coordinate when extended.
    pub fn length(&self) -> usize {
        self.n() + usize::from(self.extended)
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Singleton-bound distance `length - k + 1`.
    pub fn designed_distance(&self) -> usize {
        self.length() - self.k + 1
    }

    pub fn with_multipliers(&self, multipliers: Vec<Element>) -> Result<Self> {
        CodeSpec::new(self.locators.clone(), multipliers, self.k, self.extended)
    }

    /// Checks the shape `n = 2k` (plain) or `n = 2k - 1` (extended).
    pub fn check_self_dual_shape(&self) -> Result<()> {
        let ok = if self.extended {
            self.n() + 1 == 2 * self.k
        } else {
            self.n() == 2 * self.k
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                n: self.n(),
                k: self.k,
                extended: self.extended,
            })
        }
    }

    pub fn to_json(&self, field: &Field) -> CodeSpecJson {
        CodeSpecJson {
            q: field.q(),
            field: field.record(),
            locators: self
                .locators
                .iter()
                .map(|&a| match field.dlog(a) {
                    Ok(k) => LocatorRepr::Dlog(k as i64),
                    Err(_) => LocatorRepr::Zero("zero".into()),
                })
                .collect(),
            multipliers: self
                .multipliers
                .iter()
                .map(|&v| field.dlog_or_minus_one(v))
                .collect(),
            k: self.k,
            extended: self.extended,
        }
    }
}

/// A locator in JSON: a dlog, or `"zero"` (`-1` is accepted on input).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocatorRepr {
    Dlog(i64),
    Zero(String),
}

impl LocatorRepr {
    fn to_element(&self, field: &Field) -> Result<Element> {
        match self {
            LocatorRepr::Dlog(-1) => Ok(Element::ZERO),
            LocatorRepr::Dlog(k) if *k >= 0 => Ok(field.theta_pow(*k)),
            LocatorRepr::Zero(s) if s == "zero" => Ok(Element::ZERO),
            other => Err(Error::Parse(format!("bad locator {other:?}"))),
        }
    }
}

/// Serialized form of a [`CodeSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecJson {
    pub q: u64,
    pub field: String,
    pub locators: Vec<LocatorRepr>,
    pub multipliers: Vec<i64>,
    pub k: usize,
    pub extended: bool,
}

impl CodeSpecJson {
    pub fn to_code(&self) -> Result<(Field, CodeSpec)> {
        let field = Field::from_record(&self.field)?;
        if field.q() != self.q {
            return Err(Error::FieldMismatch(format!(
                "q = {} but field record has q = {}",
                self.q,
                field.q()
            )));
        }
        let locators = self
            .locators
            .iter()
            .map(|l| l.to_element(&field))
            .collect::<Result<Vec<_>>>()?;
        let multipliers = self
            .multipliers
            .iter()
            .map(|&d| {
                if d < 0 {
                    Err(Error::Parse(format!("multiplier dlog {d} encodes zero")))
                } else {
                    Ok(field.theta_pow(d))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let code = CodeSpec::new(locators, multipliers, self.k, self.extended)?;
        Ok((field, code))
    }
}

/// `u_i = ∏_{j≠i} (α_i - α_j)^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UVector(pub Vec<Element>);

impl UVector {
    pub fn as_slice(&self) -> &[Element] {
        &self.0
    }
}

/// Computes the `u`-vector; a single locator gives the empty product `1`.
pub fn u_vector(field: &Field, locators: &[Element]) -> Result<UVector> {
    let mut u = Vec::with_capacity(locators.len());
    for (i, &ai) in locators.iter().enumerate() {
        let mut prod = Element::ONE;
        for (j, &aj) in locators.iter().enumerate() {
            if i != j {
                let d = field.sub(ai, aj);
                if d.is_zero() {
                    return Err(Error::DuplicateLocator);
                }
                prod = field.mul(prod, d);
            }
        }
        u.push(field.inv(prod)?);
    }
    Ok(UVector(u))
}

/// Rows `v_j α_j^i` for `0 <= i < k`, plus the column `e_k` when extended.
pub fn generator_matrix(field: &Field, code: &CodeSpec) -> Matrix {
    let n = code.n();
    let cols = code.length();
    let mut g = Matrix::zeros(code.k, cols);
    for i in 0..code.k {
        for j in 0..n {
            g[(i, j)] = field.mul(
                code.multipliers[j],
                field.pow_u(code.locators[j], i as u64),
            );
        }
    }
    if code.extended {
        g[(code.k - 1, n)] = Element::ONE;
    }
    g
}

/// Codeword `(v_1 f(α_1), ..., v_n f(α_n) [, f_{k-1}])`.
pub fn encode(field: &Field, code: &CodeSpec, f: &Poly) -> Result<Vec<Element>> {
    if let Some(d) = f.degree() {
        if d >= code.k {
            return Err(Error::DegreeTooHigh {
                degree: d,
                max: code.k - 1,
            });
        }
    }
    let mut word: Vec<Element> = code
        .locators
        .iter()
        .zip(&code.multipliers)
        .map(|(&a, &v)| field.mul(v, f.eval(field, a)))
        .collect();
    if code.extended {
        word.push(f.coeff(code.k - 1));
    }
    Ok(word)
}

/// `G · conj(G)^T`, the Hermitian inner products of the generator rows.
pub fn hermitian_gram(field: &Field, code: &CodeSpec) -> Matrix {
    let g = generator_matrix(field, code);
    let conj_t = g.map(|e| field.frobenius(e)).transpose();
    g.mul(field, &conj_t)
}

pub fn hamming_weight(word: &[Element]) -> usize {
    word.iter().filter(|e| !e.is_zero()).count()
}

/// Minimum distance of the row space of `g` by enumerating one message
/// per projective point (first nonzero coordinate equal to one).
pub fn min_distance_matrix(field: &Field, g: &Matrix, budget: u128) -> Result<usize> {
    let k = g.rows();
    let order = field.order() as u128;
    let total = order.checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::EnumerationBudgetExceeded {
            needed: total,
            budget,
        });
    }
    let elements: Vec<Element> = field.elements().collect();
    let cols = g.cols();
    let mut best = usize::MAX;
    for lead in 0..k {
        let tail = k - lead - 1;
        let mut digits = vec![0usize; tail];
        'odometer: loop {
            let mut word: Vec<Element> = g.row(lead).to_vec();
            for (t, &d) in digits.iter().enumerate() {
                let coef = elements[d];
                if coef.is_zero() {
                    continue;
                }
                let row = g.row(lead + 1 + t);
                for c in 0..cols {
                    word[c] = field.add(word[c], field.mul(coef, row[c]));
                }
            }
            let w = hamming_weight(&word);
            if w > 0 {
                best = best.min(w);
            }
            for slot in (0..tail).rev() {
                digits[slot] += 1;
                if digits[slot] < elements.len() {
                    continue 'odometer;
                }
                digits[slot] = 0;
            }
            break;
        }
    }
    Ok(if best == usize::MAX { 0 } else { best })
}

pub fn min_distance_bruteforce(field: &Field, code: &CodeSpec, budget: u128) -> Result<usize> {
    min_distance_matrix(field, &generator_matrix(field, code), budget)
}

/// True iff every maximal (`rows × rows`) minor of `g` is nonzero.
pub fn is_mds_matrix(field: &Field, g: &Matrix, max_columns: usize) -> Result<bool> {
    if g.cols() > max_columns {
        return Err(Error::CombinatorialBudgetExceeded {
            needed: g.cols() as u128,
            budget: max_columns as u128,
        });
    }
    let k = g.rows();
    if k > g.cols() {
        return Ok(false);
    }
    Ok((0..g.cols())
        .combinations(k)
        .all(|cols| !determinant(field, &g.select_columns(&cols)).is_zero()))
}

/// MDS check through the maximal minors; when the message space is small
/// enough the brute-force distance is computed too and must agree.
pub fn is_mds(field: &Field, code: &CodeSpec) -> Result<bool> {
    is_mds_with(
        field,
        code,
        DEFAULT_MAX_MINOR_COLUMNS,
        DEFAULT_CODEWORD_BUDGET,
    )
}

/// [`is_mds`] with explicit limits on the minor and codeword enumerations.
pub fn is_mds_with(
    field: &Field,
    code: &CodeSpec,
    max_columns: usize,
    codeword_budget: u128,
) -> Result<bool> {
    let g = generator_matrix(field, code);
    let by_minors = is_mds_matrix(field, &g, max_columns)?;
    if let Ok(d) = min_distance_matrix(field, &g, codeword_budget) {
        assert_eq!(
            by_minors,
            d == code.designed_distance(),
            "minor test and brute-force distance disagree"
        );
    }
    Ok(by_minors)
}
