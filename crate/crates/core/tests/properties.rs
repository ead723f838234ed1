mod common;

use std::sync::OnceLock;

use hermgrs::constructions::{blm_elements, family_b, family_s, valid_m_values};
use hermgrs::grs::{encode, hermitian_gram, u_vector, CodeSpec};
use hermgrs::linalg::{
    determinant, null_space, rank, rref, solve, split_element, split_to_subfield, Matrix,
};
use hermgrs::selfdual::{criterion_direct, criterion_lemma};
use hermgrs::{Element, Field, Poly};
use proptest::prelude::*;

use common::{field_q, naive_self_dual, Naive};

const QS: [u64; 6] = [3, 4, 5, 7, 8, 9];

fn fields() -> &'static Vec<Field> {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| QS.iter().map(|&q| field_q(q)).collect())
}

fn pick(field: &Field, raw: u32) -> Element {
    field.element(raw % field.order() as u32).unwrap()
}

fn nonzero(field: &Field, raw: u32) -> Element {
    field.theta_pow((raw as u64 % field.group_order()) as i64)
}

fn distinct(field: &Field, raws: &[u32]) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::new();
    for &r in raws {
        let x = pick(field, r);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn fidx() -> impl Strategy<Value = usize> {
    0..QS.len()
}

proptest! {
    #[test]
    fn arithmetic_matches_schoolbook(fi in fidx(), a in any::<u32>(), b in any::<u32>()) {
        let f = &fields()[fi];
        let nv = Naive::of(f);
        let (x, y) = (pick(f, a), pick(f, b));
        prop_assert_eq!(f.add(x, y), nv.add(f, x, y));
        prop_assert_eq!(f.sub(x, y), nv.sub(f, x, y));
        prop_assert_eq!(f.mul(x, y), nv.mul(f, x, y));
        prop_assert_eq!(f.neg(x), nv.neg(f, x));
        if !y.is_zero() {
            prop_assert_eq!(f.inv(y).unwrap(), nv.inv(f, y));
            prop_assert_eq!(f.mul(f.div(x, y).unwrap(), y), x);
        } else {
            prop_assert!(f.inv(y).is_err());
        }
    }

    #[test]
    fn field_axioms(fi in fidx(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[fi];
        let (x, y, z) = (pick(f, a), pick(f, b), pick(f, c));
        prop_assert_eq!(f.add(x, y), f.add(y, x));
        prop_assert_eq!(f.mul(x, y), f.mul(y, x));
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, Element::ZERO), x);
        prop_assert_eq!(f.mul(x, Element::ONE), x);
        prop_assert_eq!(f.add(x, f.neg(x)), Element::ZERO);
    }

    #[test]
    fn frobenius_is_an_involutive_automorphism(fi in fidx(), a in any::<u32>(), b in any::<u32>()) {
        let f = &fields()[fi];
        let nv = Naive::of(f);
        let (x, y) = (pick(f, a), pick(f, b));
        prop_assert_eq!(f.frobenius(x), nv.conj(f, x));
        prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
        prop_assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
        prop_assert_eq!(f.frobenius(f.frobenius(x)), x);
        prop_assert!(f.in_subfield(f.trace(x)));
        prop_assert!(f.in_subfield(f.norm(x)));
        prop_assert_eq!(f.in_subfield(x), nv.conj(f, x) == x);
    }

    #[test]
    fn dlog_round_trip(fi in fidx(), a in any::<u32>(), k in any::<i64>()) {
        let f = &fields()[fi];
        let x = nonzero(f, a);
        prop_assert_eq!(f.theta_pow(f.dlog(x).unwrap() as i64), x);
        let n = f.group_order() as i64;
        prop_assert_eq!(f.dlog(f.theta_pow(k)).unwrap() as i64, k.rem_euclid(n));
        let nv = Naive::of(f);
        prop_assert_eq!(f.theta_pow(k), nv.pow(f, f.theta(), k.rem_euclid(n) as u64));
    }

    #[test]
    fn pow_matches_repeated_squaring(fi in fidx(), a in any::<u32>(), e in 0u64..10_000) {
        let f = &fields()[fi];
        let nv = Naive::of(f);
        let x = pick(f, a);
        prop_assert_eq!(f.pow_u(x, e), nv.pow(f, x, e));
        if !x.is_zero() {
            prop_assert_eq!(f.mul(f.pow(x, -(e as i64)).unwrap(), f.pow_u(x, e)), Element::ONE);
        }
    }

    #[test]
    fn solve_norm_inverts_norm(fi in fidx(), a in any::<u32>()) {
        let f = &fields()[fi];
        let c = f.norm(nonzero(f, a));
        let v = f.solve_norm(c).unwrap();
        prop_assert_eq!(f.norm(v), c);
        prop_assert!(f.dlog(v).unwrap() < f.q() - 1);
    }

    #[test]
    fn interpolation_round_trip(
        fi in fidx(),
        coeffs in prop::collection::vec(any::<u32>(), 0..6),
        xs in prop::collection::vec(any::<u32>(), 6..12),
    ) {
        let f = &fields()[fi];
        let p = Poly::new(coeffs.iter().map(|&c| pick(f, c)).collect());
        let xs = distinct(f, &xs);
        prop_assume!(xs.len() > p.degree().map_or(0, |d| d));
        let pts: Vec<_> = xs.iter().map(|&x| (x, p.eval(f, x))).collect();
        prop_assert_eq!(Poly::interpolate(f, &pts).unwrap(), p);
    }

    #[test]
    fn polynomial_operations_commute_with_evaluation(
        fi in fidx(),
        c1 in prop::collection::vec(any::<u32>(), 0..5),
        c2 in prop::collection::vec(any::<u32>(), 0..5),
        a in any::<u32>(), b in any::<u32>(), x in any::<u32>(),
    ) {
        let f = &fields()[fi];
        let p1 = Poly::new(c1.iter().map(|&c| pick(f, c)).collect());
        let p2 = Poly::new(c2.iter().map(|&c| pick(f, c)).collect());
        let (a, b, x) = (pick(f, a), pick(f, b), pick(f, x));
        prop_assert_eq!(p1.add(f, &p2).eval(f, x), f.add(p1.eval(f, x), p2.eval(f, x)));
        prop_assert_eq!(p1.mul(f, &p2).eval(f, x), f.mul(p1.eval(f, x), p2.eval(f, x)));
        prop_assert_eq!(
            p1.compose_affine(f, a, b).eval(f, x),
            p1.eval(f, f.add(f.mul(a, x), b))
        );
        // h(x^q) = f(x)^q
        prop_assert_eq!(
            p1.conjugate_coeffs(f).eval(f, f.frobenius(x)),
            f.frobenius(p1.eval(f, x))
        );
        prop_assert_eq!(p1.scale(f, a).eval(f, x), f.mul(a, p1.eval(f, x)));
    }

    #[test]
    fn u_vector_power_sums(fi in fidx(), raws in prop::collection::vec(any::<u32>(), 2..8)) {
        let f = &fields()[fi];
        let nv = Naive::of(f);
        let a = distinct(f, &raws);
        prop_assume!(a.len() >= 2);
        let u = u_vector(f, &a).unwrap();
        for (i, &ui) in u.as_slice().iter().enumerate() {
            let prod = a.iter().enumerate().filter(|&(j, _)| j != i).fold(ui, |acc, (_, &aj)| {
                nv.mul(f, acc, nv.sub(f, a[i], aj))
            });
            prop_assert_eq!(prod, Element::ONE);
        }
        // Σ u_i α_i^j = 0 for j < n - 1 and 1 for j = n - 1
        let n = a.len();
        for j in 0..n {
            let s = a.iter().zip(u.as_slice()).fold(Element::ZERO, |acc, (&x, &ui)| {
                nv.add(f, acc, nv.mul(f, ui, nv.pow(f, x, j as u64)))
            });
            prop_assert_eq!(s, if j + 1 == n { Element::ONE } else { Element::ZERO });
        }
    }

    #[test]
    fn u_vector_conjugation_on_families(
        fi in fidx(), l in any::<u32>(), m in any::<u32>(), n in 2usize..10, seed in any::<u64>(),
    ) {
        let f = &fields()[fi];
        let q = f.q() as usize;
        let l = 1 + l as usize % q;
        let take = |xs: &[Element]| -> Vec<Element> {
            let n = n.min(xs.len());
            let start = (seed as usize) % (xs.len() - n + 1);
            xs[start..start + n].to_vec()
        };
        // B_l: u_i^q = (-1)^{n-1} u_i
        let a = take(&family_b(f, l).unwrap().elements);
        let u = u_vector(f, &a).unwrap();
        let sign = if a.len() % 2 == 0 { f.minus_one() } else { Element::ONE };
        for &ui in u.as_slice() {
            prop_assert_eq!(f.frobenius(ui), f.mul(sign, ui));
        }
        // B_{l,m}: u_i^q = (-1)^{n-1} β^{(1-q)(n-1)} u_i
        let ms = valid_m_values(f);
        let mm = ms[m as usize % ms.len()];
        let a = take(&blm_elements(f, l, mm).unwrap());
        let u = u_vector(f, &a).unwrap();
        let sign = if a.len() % 2 == 0 { f.minus_one() } else { Element::ONE };
        let beta = f.theta_pow(mm as i64);
        let factor = f.mul(sign, f.pow(beta, (1 - q as i64) * (a.len() as i64 - 1)).unwrap());
        for &ui in u.as_slice() {
            prop_assert_eq!(f.frobenius(ui), f.mul(factor, ui));
        }
    }

    #[test]
    fn family_s_satisfies_its_equation(fi in fidx(), e in any::<i64>(), b in any::<u32>()) {
        let f = &fields()[fi];
        let b = pick(f, b);
        let s = family_s(f, e, b);
        let a = f.theta_pow(e);
        let nv = Naive::of(f);
        let expect: Vec<Element> = f
            .elements()
            .filter(|&x| nv.conj(f, x) == nv.add(f, nv.mul(f, a, x), b))
            .collect();
        prop_assert_eq!(&s.elements, &expect);
        if s.elements.len() >= 2 {
            let u = u_vector(f, &s.elements).unwrap();
            // u_i^q = A^{-(n-1)} u_i
            let factor = f.pow(a, -(s.elements.len() as i64 - 1)).unwrap();
            for &ui in u.as_slice() {
                prop_assert_eq!(f.frobenius(ui), f.mul(factor, ui));
            }
        }
    }

    #[test]
    fn rref_is_idempotent_and_null_space_is_exact(
        fi in fidx(), rows in 1usize..5, cols in 1usize..6,
        data in prop::collection::vec(any::<u32>(), 30),
    ) {
        let f = &fields()[fi];
        let cells: Vec<Element> = data.iter().take(rows * cols).map(|&r| {
            // bias toward zero so rank deficiency is common
            if r % 3 == 0 { Element::ZERO } else { pick(f, r) }
        }).collect();
        let m = Matrix::new(rows, cols, cells);
        let red = rref(f, &m);
        prop_assert_eq!(&rref(f, &red.matrix).matrix, &red.matrix);
        prop_assert_eq!(red.rank, rank(f, &m.transpose()));
        let ns = null_space(f, &m);
        prop_assert_eq!(ns.len(), cols - red.rank);
        let nv = Naive::of(f);
        for v in &ns {
            for r in 0..rows {
                let s = m.row(r).iter().zip(v).fold(Element::ZERO, |acc, (&a, &x)| {
                    nv.add(f, acc, nv.mul(f, a, x))
                });
                prop_assert!(s.is_zero());
            }
        }
        if rows == cols {
            prop_assert_eq!(determinant(f, &m).is_zero(), red.rank < rows);
        }
    }

    #[test]
    fn solve_returns_a_solution(
        fi in fidx(), rows in 1usize..5, cols in 1usize..5,
        data in prop::collection::vec(any::<u32>(), 20), xs in prop::collection::vec(any::<u32>(), 4),
        planted in any::<bool>(), rhs in prop::collection::vec(any::<u32>(), 4),
    ) {
        let f = &fields()[fi];
        let m = Matrix::new(rows, cols, data.iter().take(rows * cols).map(|&r| pick(f, r)).collect());
        let b: Vec<Element> = if planted {
            let x: Vec<Element> = xs.iter().take(cols).map(|&r| pick(f, r)).collect();
            m.mul_vec(f, &x)
        } else {
            rhs.iter().take(rows).map(|&r| pick(f, r)).collect()
        };
        match solve(f, &m, &b) {
            Some(sol) => {
                prop_assert_eq!(m.mul_vec(f, &sol.particular), b.clone());
                for k in &sol.kernel {
                    prop_assert!(m.mul_vec(f, k).iter().all(|e| e.is_zero()));
                }
            }
            None => {
                prop_assert!(!planted);
                let aug = (0..rows).map(|r| {
                    let mut row = m.row(r).to_vec();
                    row.push(b[r]);
                    row
                }).collect::<Vec<_>>();
                prop_assert!(rank(f, &Matrix::from_rows(&aug)) > rank(f, &m));
            }
        }
    }

    #[test]
    fn split_is_sound(fi in fidx(), a in any::<u32>(), data in prop::collection::vec(any::<u32>(), 6), xs in prop::collection::vec(any::<u32>(), 3)) {
        let f = &fields()[fi];
        let e = pick(f, a);
        let (e0, e1) = split_element(f, e);
        prop_assert!(f.in_subfield(e0) && f.in_subfield(e1));
        prop_assert_eq!(f.add(e0, f.mul(f.theta(), e1)), e);
        // for x over F_q, Mx = b iff the split system holds
        let m = Matrix::new(2, 3, data.iter().map(|&r| pick(f, r)).collect());
        let sub = f.subfield_elements();
        let x: Vec<Element> = xs.iter().map(|&r| sub[r as usize % sub.len()]).collect();
        let b = m.mul_vec(f, &x);
        let (s, rhs) = split_to_subfield(f, &m, &b);
        prop_assert_eq!(s.mul_vec(f, &x), rhs);
    }

    #[test]
    fn gram_matches_pairwise_products(
        fi in fidx(), raws in prop::collection::vec(any::<u32>(), 1..7),
        vs in prop::collection::vec(any::<u32>(), 7), k in 1usize..4, extended in any::<bool>(),
    ) {
        let f = &fields()[fi];
        let a = distinct(f, &raws);
        prop_assume!(k <= a.len());
        let v: Vec<Element> = vs.iter().take(a.len()).map(|&r| nonzero(f, r)).collect();
        let code = CodeSpec::new(a, v, k, extended).unwrap();
        let nv = Naive::of(f);
        let rows = common::naive_rows(f, &nv, &code);
        let g = hermitian_gram(f, &code);
        for i in 0..k {
            for j in 0..k {
                prop_assert_eq!(g[(i, j)], common::hermitian_product(f, &nv, &rows[i], &rows[j]));
            }
            // row i encodes x^i
            prop_assert_eq!(encode(f, &code, &Poly::monomial(Element::ONE, i)).unwrap(), rows[i].clone());
        }
    }

    #[test]
    fn criteria_agree_on_random_codes(
        fi in fidx(), raws in prop::collection::vec(any::<u32>(), 1..7),
        vs in prop::collection::vec(any::<u32>(), 7), extended in any::<bool>(),
    ) {
        let f = &fields()[fi];
        let mut a = distinct(f, &raws);
        if a.len() % 2 == usize::from(!extended) {
            a.pop();
        }
        prop_assume!(!a.is_empty());
        let k = (a.len() + usize::from(extended)) / 2;
        let v: Vec<Element> = vs.iter().take(a.len()).map(|&r| nonzero(f, r)).collect();
        let code = CodeSpec::new(a, v, k, extended).unwrap();
        let direct = criterion_direct(f, &code).unwrap();
        prop_assert_eq!(direct, criterion_lemma(f, &code).unwrap());
        prop_assert_eq!(direct, naive_self_dual(f, &code));
    }
}
