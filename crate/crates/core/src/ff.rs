//! Table-driven arithmetic in `F_{q^2}` and its subfield `F_q`.
//!
//! Elements are canonical indices: the coefficient vector of the element
//! as a polynomial in the primitive root `θ` over `F_p`, read as a base-`p`
//! integer (constant term least significant). Index 0 is zero, index 1 is one.
//! Multiplication goes through discrete log / antilog tables; addition uses a
//! Zech logarithm table, so every operation is a handful of table lookups.
//!
//! The defining modulus is the smallest primitive polynomial of degree `2m`
//! under Conway's ordering: writing `f = x^n - a_1 x^{n-1} + a_2 x^{n-2} - ...`,
//! candidates are compared lexicographically on `(a_1, ..., a_n)`. For
//! `F_9` this selects `x^2 + 2x + 2`.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on `q^2` so that the tables stay small.
pub const DEFAULT_TABLE_BOUND: u64 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

/// One member of `F_{q^2}`, identified by its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Exact description of `F_{q^2}` together with its lookup tables.
#[derive(Clone)]
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    order: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    minus_one_log: u32,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^m` into `(p, m)`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, m))
}

/// Builds `F_{q^2}` with `q = p^m` under the default table bound.
pub fn make_field(p: u64, m: u32) -> Result<Field> {
    Field::new(p, m)
}

impl Field {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_bound(p, m, DEFAULT_TABLE_BOUND)
    }

    /// Builds `F_{q^2}` for `q = p^m`, refusing fields with `q^2 > bound`.
    pub fn with_bound(p: u64, m: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::NotPrimePower(1));
        }
        let order = p
            .checked_pow(2 * m)
            .filter(|&o| o <= bound)
            .ok_or(Error::FieldTooLarge {
                order: p.saturating_pow(2 * m),
                bound,
            })?;
        let degree = 2 * m as usize;
        let candidates = p.pow(degree as u32);
        for t in 0..candidates {
            // a_1 is the most significant digit of t.
            let mut a = vec![0u64; degree + 1];
            let mut rest = t;
            for i in (1..=degree).rev() {
                a[i] = rest % p;
                rest /= p;
            }
            if a[degree] == 0 {
                continue;
            }
            let mut modulus = vec![0u64; degree + 1];
            modulus[degree] = 1;
            for (i, &ai) in a.iter().enumerate().skip(1) {
                let c = if i % 2 == 1 { (p - ai) % p } else { ai };
                modulus[degree - i] = c;
            }
            if let Some(exp) = primitive_powers(p, &modulus, order) {
                return Ok(Self::from_tables(p, m, modulus, exp));
            }
        }
        unreachable!("a primitive polynomial of every degree exists")
    }

    /// Rebuilds a field from an exported record `p m c_0 c_1 ... c_{2m}`.
    pub fn from_record(record: &str) -> Result<Self> {
        let nums: Vec<u64> = record
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad field record token `{t}`")))
            })
            .collect::<Result<_>>()?;
        if nums.len() < 3 {
            return Err(Error::Parse("field record too short".into()));
        }
        let (p, m) = (nums[0], nums[1] as u32);
        let field = Field::new(p, m)?;
        let modulus = &nums[2..];
        if modulus != field.modulus.as_slice() {
            let modulus = modulus.to_vec();
            let degree = 2 * m as usize;
            if modulus.len() != degree + 1
                || modulus[degree] != 1
                || modulus.iter().any(|&c| c >= p)
            {
                return Err(Error::Parse("malformed modulus in field record".into()));
            }
            let exp = primitive_powers(p, &modulus, field.order).ok_or_else(|| {
                Error::Parse("field record modulus is not primitive".into())
            })?;
            return Ok(Self::from_tables(p, m, modulus, exp));
        }
        Ok(field)
    }

    fn from_tables(p: u64, m: u32, modulus: Vec<u64>, exp: Vec<u32>) -> Self {
        let order = p.pow(2 * m);
        let n = (order - 1) as usize;
        let mut log = vec![NO_LOG; order as usize];
        for (t, &e) in exp.iter().enumerate() {
            log[e as usize] = t as u32;
        }
        let digits = 2 * m as usize;
        let add_repr = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a as u64, b as u64);
            let mut out = 0u64;
            let mut scale = 1u64;
            for _ in 0..digits {
                out += ((a % p + b % p) % p) * scale;
                a /= p;
                b /= p;
                scale *= p;
            }
            out as u32
        };
        let zech = (0..n)
            .map(|d| {
                let s = add_repr(1, exp[d]);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let minus_one_log = if p == 2 { 0 } else { (n / 2) as u32 };
        Field {
            p,
            m,
            q: p.pow(m),
            order,
            modulus,
            exp,
            log,
            zech,
            minus_one_log,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    /// Order of the subfield, `q`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Order of the field, `q^2`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Multiplicative order `q^2 - 1` of the primitive element.
    pub fn group_order(&self) -> u64 {
        self.order - 1
    }

    /// Modulus coefficients in ascending degree, leading 1 included.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Text record `p m c_0 ... c_{2m}`.
    pub fn record(&self) -> String {
        let mut s = format!("{} {}", self.p, self.m);
        for c in &self.modulus {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn element(&self, index: u32) -> Result<Element> {
        if (index as u64) < self.order {
            Ok(Element(index))
        } else {
            Err(Error::Parse(format!(
                "element index {index} outside field of order {}",
                self.order
            )))
        }
    }

    /// All elements in ascending canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order as u32).map(Element)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Element> {
        (1..self.order as u32).map(Element)
    }

    /// The primitive element `θ`.
    pub fn theta(&self) -> Element {
        Element(self.exp[1 % self.exp.len()])
    }

    /// `θ^e` for any integer exponent.
    pub fn theta_pow(&self, e: i64) -> Element {
        let n = self.group_order() as i64;
        Element(self.exp[e.rem_euclid(n) as usize])
    }

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let n = self.exp.len() as u32;
        let lx = self.log[x.0 as usize];
        let ly = self.log[y.0 as usize];
        let d = if ly >= lx { ly - lx } else { ly + n - lx };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return Element::ZERO;
        }
        let s = lx + z;
        Element(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        if x.is_zero() || self.p == 2 {
            return x;
        }
        let n = self.exp.len() as u32;
        let s = self.log[x.0 as usize] + self.minus_one_log;
        Element(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    #[inline]
    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        if x.is_zero() || y.is_zero() {
            return Element::ZERO;
        }
        let n = self.exp.len() as u32;
        let s = self.log[x.0 as usize] + self.log[y.0 as usize];
        Element(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    pub fn inv(&self, x: Element) -> Result<Element> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.exp.len() as u32;
        Ok(Element(self.exp[((n - self.log[x.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, x: Element, y: Element) -> Result<Element> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; negative exponents invert the base, and `0^0 = 1`.
    pub fn pow(&self, x: Element, e: i64) -> Result<Element> {
        if x.is_zero() {
            return match e {
                0 => Ok(Element::ONE),
                e if e > 0 => Ok(Element::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = self.group_order() as i128;
        let t = (self.log[x.0 as usize] as i128 * e as i128).rem_euclid(n);
        Ok(Element(self.exp[t as usize]))
    }

    /// `x^e` for a non-negative exponent; never fails.
    #[inline]
    pub fn pow_u(&self, x: Element, e: u64) -> Element {
        if x.is_zero() {
            return if e == 0 { Element::ONE } else { Element::ZERO };
        }
        let n = self.group_order() as u128;
        let t = (self.log[x.0 as usize] as u128 * e as u128) % n;
        Element(self.exp[t as usize])
    }

    /// The conjugation `x ↦ x^q`.
    #[inline]
    pub fn frobenius(&self, x: Element) -> Element {
        self.pow_u(x, self.q)
    }

    /// `Tr(x) = x + x^q`.
    pub fn trace(&self, x: Element) -> Element {
        self.add(x, self.frobenius(x))
    }

    /// `N(x) = x^{q+1}`.
    pub fn norm(&self, x: Element) -> Element {
        self.pow_u(x, self.q + 1)
    }

    pub fn dlog(&self, x: Element) -> Result<u64> {
        if x.is_zero() {
            Err(Error::LogOfZero)
        } else {
            Ok(self.log[x.0 as usize] as u64)
        }
    }

    /// Membership in `F_q`, the fixed field of the Frobenius map.
    pub fn in_subfield(&self, x: Element) -> bool {
        self.frobenius(x) == x
    }

    pub fn minus_one(&self) -> Element {
        self.neg(Element::ONE)
    }

    /// The `q` elements of `F_q`, in ascending canonical order.
    pub fn subfield_elements(&self) -> Vec<Element> {
        let step = self.q + 1;
        let mut out: Vec<Element> = std::iter::once(Element::ZERO)
            .chain((0..self.q - 1).map(|s| self.theta_pow((s * step) as i64)))
            .collect();
        out.sort();
        out
    }

    /// The trace-zero subspace `V`, zero first, then ascending dlog.
    pub fn trace_zero_set(&self) -> TraceZeroSet {
        let mut nonzero: Vec<Element> = self
            .nonzero_elements()
            .filter(|&x| self.trace(x).is_zero())
            .collect();
        nonzero.sort_by_key(|&x| self.log[x.0 as usize]);
        let mut elements = Vec::with_capacity(self.q as usize);
        elements.push(Element::ZERO);
        elements.extend(nonzero);
        TraceZeroSet { elements }
    }

    /// Smallest-dlog `ξ` with `ξ^{q+1} = c` for `c ∈ F_q^*`.
    pub fn solve_norm(&self, c: Element) -> Result<Element> {
        if c.is_zero() || !self.in_subfield(c) {
            return Err(Error::NotInSubfield);
        }
        let l = self.dlog(c)?;
        let step = self.q + 1;
        if l % step != 0 {
            return Err(Error::NoSolution);
        }
        let xi = self.theta_pow((l / step) as i64);
        assert_eq!(self.norm(xi), c);
        Ok(xi)
    }

    /// Human-readable form: `0` or `θ^k`.
    pub fn render(&self, x: Element) -> String {
        match self.dlog(x) {
            Ok(k) => format!("θ^{k}"),
            Err(_) => "0".to_string(),
        }
    }

    /// JSON form: dlog, or `-1` for zero.
    pub fn dlog_or_minus_one(&self, x: Element) -> i64 {
        self.dlog(x).map(|k| k as i64).unwrap_or(-1)
    }

    /// Parses `0`, `zero`, `1`, `θ^k`, `t^k` or `theta^k`.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        match s {
            "0" | "zero" => return Ok(Element::ZERO),
            "1" | "one" => return Ok(Element::ONE),
            "θ" | "t" | "theta" => return Ok(self.theta()),
            _ => {}
        }
        let exp = ["θ^", "theta^", "t^"]
            .iter()
            .find_map(|prefix| s.strip_prefix(prefix))
            .ok_or_else(|| Error::Parse(format!("cannot parse element `{s}`")))?;
        let k: i64 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
        Ok(self.theta_pow(k))
    }
}

/// Powers of `x` modulo `modulus` as canonical indices, if `x` is primitive.
fn primitive_powers(p: u64, modulus: &[u64], order: u64) -> Option<Vec<u32>> {
    let degree = modulus.len() - 1;
    let n = (order - 1) as usize;
    let mut state = vec![0u64; degree];
    state[0] = 1;
    let mut exp = Vec::with_capacity(n);
    let encode = |s: &[u64]| -> u32 { s.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32 };
    for t in 0..n {
        let idx = encode(&state);
        if t > 0 && idx == 1 {
            return None;
        }
        exp.push(idx);
        // multiply by x and reduce by the monic modulus
        let top = state[degree - 1];
        for i in (1..degree).rev() {
            state[i] = state[i - 1];
        }
        state[0] = 0;
        if top != 0 {
            for i in 0..degree {
                state[i] = (state[i] + (p - top) * modulus[i]) % p;
            }
        }
    }
    (encode(&state) == 1).then_some(exp)
}

/// The trace-zero subspace `V = {a_1 = 0, a_2, ..., a_q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceZeroSet {
    pub elements: Vec<Element>,
}

impl TraceZeroSet {
    /// `a_l` for `1 <= l <= q`.
    pub fn get(&self, l: usize) -> Option<Element> {
        l.checked_sub(1).and_then(|i| self.elements.get(i).copied())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.contains(&x)
    }
}
