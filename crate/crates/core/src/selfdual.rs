//! Hermitian self-duality criteria, the multiplier search built on the
//! power-sum systems, exhaustive existence scans and the span-condition
//! predicates.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{Element, Field};
use crate::grs::{hermitian_gram, u_vector, CodeSpec};
use crate::linalg::{rank, solve, solve_in_subfield_nonzero, Matrix, SolverLimits};
use crate::poly::Poly;
use crate::report::{
    ConjectureEntry, ConjectureReport, ConjectureTotals, Pool, ReportMetadata, ScanEntry,
    ScanReport, ScanTotals,
};

/// `C` is Hermitian self-dual iff the Gram matrix of its generator rows
/// vanishes; the shape `n = 2k` (or `n + 1 = 2k`) supplies the dimension count.
pub fn criterion_direct(field: &Field, code: &CodeSpec) -> Result<bool> {
    code.check_self_dual_shape()?;
    Ok(hermitian_gram(field, code).is_zero())
}

/// Interpolant `g` through `(α_i, v_i^{q+1} α_i^{jq} / u_i)`, the witness
/// candidate for `f = x^j`.
fn monomial_witness(field: &Field, code: &CodeSpec, u: &[Element], j: usize) -> Result<Poly> {
    let q = field.q();
    let points = code
        .locators()
        .iter()
        .zip(code.multipliers())
        .zip(u)
        .map(|((&a, &v), &ui)| {
            let y = field.mul(field.norm(v), field.pow_u(a, j as u64 * q));
            Ok((a, field.div(y, ui)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Poly::interpolate(field, &points)
}

/// Witness-polynomial test for plain codes (`n = 2k`): every monomial
/// `x^j`, `j < k`, must admit `g` of degree at most `k - 1`.
pub fn criterion_lemma1(field: &Field, code: &CodeSpec) -> Result<bool> {
    if code.is_extended() {
        return Err(Error::DimensionMismatch {
            n: code.n(),
            k: code.k(),
            extended: true,
        });
    }
    code.check_self_dual_shape()?;
    let u = u_vector(field, code.locators())?;
    for j in 0..code.k() {
        if !monomial_witness(field, code, u.as_slice(), j)?.degree_at_most(code.k() - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Witness-polynomial test for extended codes (`n = 2k - 1`): besides the
/// degree bound, `-g_{k-1}` must equal `f_{k-1}^q`, i.e. `g_{k-1} = 0` for
/// `j < k - 1` and `g_{k-1} = -1` for `j = k - 1`.
pub fn criterion_lemma2(field: &Field, code: &CodeSpec) -> Result<bool> {
    if !code.is_extended() {
        return Err(Error::DimensionMismatch {
            n: code.n(),
            k: code.k(),
            extended: false,
        });
    }
    code.check_self_dual_shape()?;
    let k = code.k();
    let u = u_vector(field, code.locators())?;
    for j in 0..k {
        let g = monomial_witness(field, code, u.as_slice(), j)?;
        let expected_top = if j + 1 == k {
            field.minus_one()
        } else {
            Element::ZERO
        };
        if !g.degree_at_most(k - 1) || g.coeff(k - 1) != expected_top {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dispatches to the witness test matching the code's extension flag.
pub fn criterion_lemma(field: &Field, code: &CodeSpec) -> Result<bool> {
    if code.is_extended() {
        criterion_lemma2(field, code)
    } else {
        criterion_lemma1(field, code)
    }
}

/// The power-sum system over `x_l = v_l^{q+1}` with its exponent descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionMatrix {
    pub matrix: Matrix,
    pub rhs: Vec<Element>,
    /// `(i, j)` of each row; the row entry is `α_l^{i + jq}`.
    pub exponents: Vec<(u64, u64)>,
    pub extended: bool,
}

impl CriterionMatrix {
    /// Integer exponent `i + jq` of each row, unreduced.
    pub fn row_exponents(&self, q: u64) -> Vec<u64> {
        self.exponents.iter().map(|&(i, j)| i + j * q).collect()
    }
}

fn check_distinct(locators: &[Element]) -> Result<()> {
    if locators.iter().duplicates().next().is_some() {
        Err(Error::DuplicateLocator)
    } else {
        Ok(())
    }
}

/// Half-size `h` of the exponent grid: `n/2` (plain) or `(n+1)/2` (extended).
fn grid_size(n: usize, extended: bool) -> Result<usize> {
    let ok = if extended { n % 2 == 1 } else { n.is_multiple_of(2) && n > 0 };
    if !ok {
        return Err(Error::DimensionMismatch {
            n,
            k: n.div_ceil(2),
            extended,
        });
    }
    Ok(if extended { n.div_ceil(2) } else { n / 2 })
}

/// Builds the plain system (rows `(i, j)`, `0 <= i, j < n/2`, zero right-hand
/// side) or the extended one (rows `(i, j)`, `0 <= i, j <= (n-1)/2`, with the
/// last row `α^{((n-1)/2)(q+1)}` carrying right-hand side `-1`). Rows are
/// ordered with `j` outer and `i` inner.
pub fn build_criterion_matrix(
    field: &Field,
    locators: &[Element],
    extended: bool,
) -> Result<CriterionMatrix> {
    check_distinct(locators)?;
    let h = grid_size(locators.len(), extended)?;
    let q = field.q();
    let exponents: Vec<(u64, u64)> = (0..h as u64)
        .flat_map(|j| (0..h as u64).map(move |i| (i, j)))
        .collect();
    let rows: Vec<Vec<Element>> = exponents
        .iter()
        .map(|&(i, j)| {
            locators
                .iter()
                .map(|&a| field.pow_u(a, i + j * q))
                .collect()
        })
        .collect();
    let mut rhs = vec![Element::ZERO; rows.len()];
    if extended {
        *rhs.last_mut().unwrap() = field.minus_one();
    }
    Ok(CriterionMatrix {
        matrix: Matrix::from_rows(&rows),
        rhs,
        exponents,
        extended,
    })
}

/// Searches for multipliers making the (extended) GRS code on `locators`
/// Hermitian self-dual. `None` is a proof that no multipliers exist.
pub fn find_multipliers(
    field: &Field,
    locators: &[Element],
    extended: bool,
    limits: SolverLimits,
) -> Result<Option<CodeSpec>> {
    let system = build_criterion_matrix(field, locators, extended)?;
    let Some(sol) = solve_in_subfield_nonzero(field, &system.matrix, &system.rhs, limits)? else {
        return Ok(None);
    };
    let multipliers = sol
        .x
        .iter()
        .map(|&x| field.solve_norm(x))
        .collect::<Result<Vec<_>>>()?;
    let k = (locators.len() + usize::from(extended)) / 2;
    let code = CodeSpec::new(locators.to_vec(), multipliers, k, extended)?;
    assert!(
        criterion_direct(field, &code)?,
        "lifted multipliers fail the Gram check"
    );
    Ok(Some(code))
}

/// Outcome of a span-membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanConditionResult {
    pub holds: bool,
    /// Exponent of the target power vector found in the span.
    pub target_exponent: Option<u64>,
    /// Exponents of the spanning power vectors, in the order of `witness`.
    pub basis_exponents: Vec<u64>,
    /// Coefficients reproducing the target from the spanning vectors.
    pub witness: Option<Vec<Element>>,
}

/// `a^e = (α_1^e, ..., α_n^e)` with `0^0 = 1`.
pub fn power_vector(field: &Field, locators: &[Element], e: u64) -> Vec<Element> {
    locators.iter().map(|&a| field.pow_u(a, e)).collect()
}

fn span_membership(
    field: &Field,
    locators: &[Element],
    basis_exponents: Vec<u64>,
    targets: [u64; 2],
) -> SpanConditionResult {
    let n = locators.len();
    // columns of `m` are the spanning vectors; an empty basis spans {0}
    let mut data = Vec::with_capacity(n * basis_exponents.len());
    for &a in locators {
        data.extend(basis_exponents.iter().map(|&e| field.pow_u(a, e)));
    }
    let m = Matrix::new(n, basis_exponents.len(), data);
    let base_rank = rank(field, &m);
    for target in targets {
        let t = power_vector(field, locators, target);
        let with_target = Matrix::new(
            n,
            m.cols() + 1,
            (0..n)
                .flat_map(|r| m.row(r).iter().copied().chain([t[r]]))
                .collect(),
        );
        if rank(field, &with_target) != base_rank {
            continue;
        }
        let sol = solve(field, &m, &t).expect("rank test says the target is in the span");
        assert_eq!(m.mul_vec(field, &sol.particular), t);
        return SpanConditionResult {
            holds: true,
            target_exponent: Some(target),
            basis_exponents,
            witness: Some(sol.particular),
        };
    }
    SpanConditionResult {
        holds: false,
        target_exponent: None,
        basis_exponents,
        witness: None,
    }
}

/// Is `a^{n/2 + q}` or `a^{(n/2) q + 1}` in the span of
/// `{a^{iq + j} : 0 <= i, j <= n/2 - 1}`?
pub fn span_condition_plain(field: &Field, locators: &[Element]) -> Result<SpanConditionResult> {
    check_distinct(locators)?;
    let h = grid_size(locators.len(), false)? as u64;
    let q = field.q();
    let basis = (0..h)
        .flat_map(|i| (0..h).map(move |j| i * q + j))
        .collect();
    Ok(span_membership(field, locators, basis, [h + q, h * q + 1]))
}

/// Is `a^{(n+1)/2}` or `a^{((n+1)/2) q}` in the span of
/// `{a^{iq + j}}` for `0 <= i <= (n-3)/2, 0 <= j <= (n-1)/2` together with
/// `i = (n-1)/2, 0 <= j <= (n-1)/2 - 1`?
pub fn span_condition_extended(
    field: &Field,
    locators: &[Element],
) -> Result<SpanConditionResult> {
    check_distinct(locators)?;
    grid_size(locators.len(), true)?;
    let h = ((locators.len() - 1) / 2) as u64;
    let q = field.q();
    let basis = (0..=h)
        .flat_map(|i| {
            let top = if i == h { h } else { h + 1 };
            (0..top).map(move |j| i * q + j)
        })
        .collect();
    Ok(span_membership(
        field,
        locators,
        basis,
        [h + 1, (h + 1) * q],
    ))
}

pub fn span_condition(
    field: &Field,
    locators: &[Element],
    extended: bool,
) -> Result<SpanConditionResult> {
    if extended {
        span_condition_extended(field, locators)
    } else {
        span_condition_plain(field, locators)
    }
}

/// Tunables shared by the exhaustive sweeps.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub limits: SolverLimits,
    /// Maximum number of subsets a single sweep may visit.
    pub subset_budget: u128,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

pub const DEFAULT_SUBSET_BUDGET: u128 = 1_000_000;

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            limits: SolverLimits::default(),
            subset_budget: DEFAULT_SUBSET_BUDGET,
            workers: None,
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn run_parallel<T, F>(workers: Option<usize>, subsets: Vec<Vec<Element>>, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[Element]) -> Result<T> + Sync + Send,
{
    let run = || subsets.par_iter().map(|s| job(s)).collect::<Result<Vec<T>>>();
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidCode(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn subsets_of(pool: &Pool, n: usize, budget: u128) -> Result<Vec<Vec<Element>>> {
    let count = binomial(pool.elements.len(), n);
    if count > budget {
        return Err(Error::CombinatorialBudgetExceeded {
            needed: count,
            budget,
        });
    }
    Ok(pool.elements.iter().copied().combinations(n).collect())
}

fn dlogs(field: &Field, xs: &[Element]) -> Vec<i64> {
    xs.iter().map(|&x| field.dlog_or_minus_one(x)).collect()
}

/// Runs [`find_multipliers`] on every `n`-subset of `pool`. Subsets are
/// visited in canonical (ascending) order and the report keeps that order
/// regardless of the number of workers.
pub fn existence_scan(
    field: &Field,
    n: usize,
    pool: &Pool,
    extended: bool,
    opts: ScanOptions,
) -> Result<ScanReport> {
    let pool = pool.canonical();
    let subsets = subsets_of(&pool, n, opts.subset_budget)?;
    let entries = run_parallel(opts.workers, subsets, |s| {
        match find_multipliers(field, s, extended, opts.limits) {
            Ok(Some(code)) => Ok(ScanEntry {
                locators: dlogs(field, s),
                exists: true,
                multipliers: Some(dlogs(field, code.multipliers())),
                gram_checked: criterion_direct(field, &code)?,
                error: None,
            }),
            Ok(None) => Ok(ScanEntry {
                locators: dlogs(field, s),
                exists: false,
                multipliers: None,
                gram_checked: false,
                error: None,
            }),
            Err(e) if e.is_budget() => Err(e),
            Err(e) => Ok(ScanEntry {
                locators: dlogs(field, s),
                exists: false,
                multipliers: None,
                gram_checked: false,
                error: Some(e.code().to_string()),
            }),
        }
    })?;
    let totals = ScanTotals::from_entries(&entries);
    let k = (n + usize::from(extended)) / 2;
    Ok(ScanReport {
        metadata: ReportMetadata::new(
            field,
            "scan",
            serde_json::json!({
                "q": field.q(),
                "n": n,
                "extended": extended,
                "pool": pool.description,
            }),
        ),
        n,
        k,
        extended,
        pool: pool.description.clone(),
        entries,
        totals,
    })
}

/// Largest length allowed by the conditional theorems: `q + 1` for plain
/// codes and `q` for extended ones.
pub fn conjecture_bound(field: &Field, extended: bool) -> usize {
    if extended {
        field.q() as usize
    } else {
        field.q() as usize + 1
    }
}

/// Evaluates the span condition and existence for every `n`-subset of
/// `pool`, flagging instances where both hold although `n` exceeds the bound.
pub fn conjecture_sweep(
    field: &Field,
    n: usize,
    pool: &Pool,
    extended: bool,
    opts: ScanOptions,
) -> Result<ConjectureReport> {
    let pool = pool.canonical();
    let subsets = subsets_of(&pool, n, opts.subset_budget)?;
    let bound = conjecture_bound(field, extended);
    let entries = run_parallel(opts.workers, subsets, |s| {
        let span = span_condition(field, s, extended)?;
        let exists = find_multipliers(field, s, extended, opts.limits)?.is_some();
        Ok(ConjectureEntry {
            locators: dlogs(field, s),
            span_condition: span.holds,
            span_target: span.target_exponent,
            exists,
            violates: span.holds && exists && n > bound,
        })
    })?;
    let totals = ConjectureTotals::from_entries(&entries);
    Ok(ConjectureReport {
        metadata: ReportMetadata::new(
            field,
            "conjecture",
            serde_json::json!({
                "q": field.q(),
                "n": n,
                "extended": extended,
                "pool": pool.description,
            }),
        ),
        n,
        extended,
        bound,
        pool: pool.description.clone(),
        entries,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn direct_examples() {
        let f = make_field(3, 1).unwrap();
        let a = vec![Element::ZERO, f.theta_pow(2)];
        let good = CodeSpec::new(a.clone(), vec![Element::ONE, f.theta()], 1, false).unwrap();
        assert!(criterion_direct(&f, &good).unwrap());
        assert!(criterion_lemma1(&f, &good).unwrap());
        let bad = CodeSpec::new(a, vec![Element::ONE; 2], 1, false).unwrap();
        assert!(!criterion_direct(&f, &bad).unwrap());
        assert!(!criterion_lemma1(&f, &bad).unwrap());
    }

    #[test]
    fn shape_errors() {
        let f = make_field(3, 1).unwrap();
        let c = CodeSpec::new(
            vec![Element::ZERO, Element::ONE, f.theta()],
            vec![Element::ONE; 3],
            1,
            false,
        )
        .unwrap();
        assert!(matches!(
            criterion_direct(&f, &c),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(criterion_lemma2(&f, &c).is_err());
        assert!(build_criterion_matrix(&f, &[Element::ONE], false).is_err());
        assert_eq!(
            build_criterion_matrix(&f, &[Element::ONE, Element::ONE], false),
            Err(Error::DuplicateLocator)
        );
    }

    #[test]
    fn lemma2_single_point() {
        let f = make_field(3, 1).unwrap();
        for v in f.nonzero_elements() {
            let c = CodeSpec::new(vec![f.theta()], vec![v], 1, true).unwrap();
            let expect = f.add(f.norm(v), Element::ONE).is_zero();
            assert_eq!(criterion_lemma2(&f, &c).unwrap(), expect);
            assert_eq!(criterion_direct(&f, &c).unwrap(), expect);
        }
    }

    #[test]
    fn criterion_matrix_shapes() {
        let f = make_field(3, 1).unwrap();
        let two = build_criterion_matrix(&f, &[Element::ZERO, f.theta()], false).unwrap();
        assert_eq!(two.matrix, Matrix::from_rows(&[vec![Element::ONE; 2]]));
        assert_eq!(two.rhs, vec![Element::ZERO]);
        let one = build_criterion_matrix(&f, &[f.theta()], true).unwrap();
        assert_eq!(one.matrix, Matrix::from_rows(&[vec![Element::ONE]]));
        assert_eq!(one.rhs, vec![f.minus_one()]);
        let four: Vec<_> = (1..5).map(|k| f.theta_pow(k)).collect();
        let m = build_criterion_matrix(&f, &four, false).unwrap();
        assert_eq!(m.row_exponents(3), vec![0, 1, 3, 4]);
        let three: Vec<_> = (1..4).map(|k| f.theta_pow(k)).collect();
        let m = build_criterion_matrix(&f, &three, true).unwrap();
        assert_eq!(m.row_exponents(3), vec![0, 1, 3, 4]);
        assert_eq!(m.rhs[3], f.minus_one());
    }

    #[test]
    fn find_multipliers_small() {
        let f = make_field(3, 1).unwrap();
        let a = [Element::ZERO, f.theta_pow(2)];
        let code = find_multipliers(&f, &a, false, SolverLimits::default())
            .unwrap()
            .unwrap();
        let v = code.multipliers();
        assert_eq!(f.norm(v[0]), f.neg(f.norm(v[1])));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 6), 28);
        assert_eq!(binomial(8, 5), 56);
        assert_eq!(binomial(15, 8), 6435);
        assert_eq!(binomial(3, 5), 0);
    }
}
