//! Finite fields GF(p) and GF(p^m) with integer labels.
//!
//! A prime field uses the residues `0..p` as labels. An extension field
//! GF(p^m) labels zero as `0` and the power `α^(u-1)` as `u`, where `α` is a
//! root of the field's primitive polynomial. Multiplication of nonzero labels
//! is therefore exponent addition modulo `q - 1`; addition goes through a
//! Zech logarithm table.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::fixtures;

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NonPrimeP(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    OrderTooLarge(u64),
    #[error("polynomial {poly:?} is not primitive over GF({p})")]
    NotPrimitive { p: u32, poly: Vec<u32> },
    #[error("polynomial must be monic of degree {m} with coefficients below {p}, got {poly:?}")]
    MalformedPolynomial { p: u32, m: u32, poly: Vec<u32> },
    #[error("no default primitive polynomial for q = {0}; supply one explicitly")]
    UnknownDefaultPolynomial(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("label {label} is not an element of GF({q})")]
    LabelOutOfField { label: u32, q: u32 },
}

/// A field element, identified by its label in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn label(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Label arithmetic used by the hot loops. Labels are plain `u32` values;
/// callers guarantee they are below `q`.
pub(crate) trait Arith: Sync + Send {
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// `a` must be nonzero.
    fn inv(&self, a: u32) -> u32;
    fn neg(&self, a: u32) -> u32;

    /// Calls `visit` with `w + d*h` for every nonzero scalar `d`.
    fn for_each_line_point<const D: usize>(
        &self,
        w: &[u32; D],
        h: &[u32; D],
        visit: impl FnMut(&[u32; D]),
    );

    /// `w + d*h`, coordinatewise.
    #[inline]
    fn axpy<const D: usize>(&self, w: &[u32; D], d: u32, h: &[u32; D]) -> [u32; D] {
        let mut out = *w;
        for k in 0..D {
            out[k] = self.add(w[k], self.mul(d, h[k]));
        }
        out
    }
}

/// GF(p) with Barrett reduction for products.
#[derive(Debug, Clone)]
pub(crate) struct PrimeArith {
    p: u32,
    barrett: u64,
    inverses: Vec<u32>,
}

impl PrimeArith {
    fn new(p: u32) -> Self {
        let barrett = (1u64 << 62) / p as u64;
        let mut inverses = vec![0u32; p as usize];
        if p > 1 {
            inverses[1] = 1;
            // inv(a) = -(p / a) * inv(p mod a)
            for a in 2..p as u64 {
                let pm = p as u64;
                let v = (pm - (pm / a) * inverses[(pm % a) as usize] as u64 % pm) % pm;
                inverses[a as usize] = v as u32;
            }
        }
        PrimeArith {
            p,
            barrett,
            inverses,
        }
    }

    #[inline(always)]
    fn reduce(&self, x: u64) -> u32 {
        let quot = ((x as u128 * self.barrett as u128) >> 62) as u64;
        let mut rem = x - quot * self.p as u64;
        if rem >= self.p as u64 {
            rem -= self.p as u64;
        }
        rem as u32
    }
}

impl Arith for PrimeArith {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    #[inline(always)]
    fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    #[inline(always)]
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    fn for_each_line_point<const D: usize>(
        &self,
        w: &[u32; D],
        h: &[u32; D],
        mut visit: impl FnMut(&[u32; D]),
    ) {
        let mut v = *w;
        for _ in 1..self.p {
            for k in 0..D {
                v[k] = self.add(v[k], h[k]);
            }
            visit(&v);
        }
    }
}

/// GF(p^m) in the power labeling, with Zech logarithms for addition.
#[derive(Debug, Clone)]
pub(crate) struct ExtArith {
    order_minus_one: u32,
    /// `zech[k]` is the exponent of `1 + α^k`, or `NO_LOG` when that sum is zero.
    zech: Vec<u32>,
    /// Exponent of `-1`.
    neg_one_exp: u32,
}

impl ExtArith {
    #[inline(always)]
    fn exp_add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.order_minus_one {
            s - self.order_minus_one
        } else {
            s
        }
    }
}

impl Arith for ExtArith {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = a - 1;
        let lb = b - 1;
        let k = if lb >= la {
            lb - la
        } else {
            lb + self.order_minus_one - la
        };
        let z = self.zech[k as usize];
        if z == NO_LOG {
            0
        } else {
            self.exp_add(la, z) + 1
        }
    }

    #[inline(always)]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp_add(a - 1, b - 1) + 1
        }
    }

    #[inline(always)]
    fn inv(&self, a: u32) -> u32 {
        let la = a - 1;
        if la == 0 {
            1
        } else {
            self.order_minus_one - la + 1
        }
    }

    #[inline(always)]
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.exp_add(a - 1, self.neg_one_exp) + 1
        }
    }

    #[inline(always)]
    fn for_each_line_point<const D: usize>(
        &self,
        w: &[u32; D],
        h: &[u32; D],
        mut visit: impl FnMut(&[u32; D]),
    ) {
        for d in 1..=self.order_minus_one {
            visit(&self.axpy(w, d, h));
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum ArithKind {
    Prime(PrimeArith),
    Ext(ExtArith),
}

/// A finite field together with its label arithmetic.
///
/// Immutable after construction and cheap to share across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients, constant term first. Empty for prime fields.
    poly: Vec<u32>,
    /// `exp[k]` is the label of `g^k` for the field's generator `g`.
    exp: Arc<[u32]>,
    /// `log[label]` is the exponent of a nonzero label.
    log: Arc<[u32]>,
    pub(crate) arith: Arc<ArithKind>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.poly == other.poly
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds GF(p^m). For `m >= 2` the polynomial defaults to the embedded
    /// table entry for `q`; a supplied polynomial must be monic of degree `m`
    /// and primitive.
    pub fn new(p: u32, m: u32, poly: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NonPrimeP(p as u64));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::OrderTooLarge((p as u64).saturating_pow(m)))?;
        let q = q as u32;
        if m == 1 {
            return Ok(Self::prime_field(p));
        }
        let poly: Vec<u32> = match poly {
            Some(c) => c.to_vec(),
            None => fixtures::default_polynomial(q as u64)
                .ok_or(FieldError::UnknownDefaultPolynomial(q as u64))?
                .to_vec(),
        };
        if poly.len() != m as usize + 1
            || poly[m as usize] != 1
            || poly.iter().any(|&c| c >= p)
        {
            return Err(FieldError::MalformedPolynomial { p, m, poly });
        }
        Self::extension_field(p, m, q, poly)
    }

    /// Builds GF(q) for a prime power `q`, using the default polynomial when
    /// `q` is not prime.
    pub fn from_order(q: u64, poly: Option<&[u32]>) -> Result<Self, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p as u32, m, poly)
    }

    fn prime_field(p: u32) -> Self {
        let arith = PrimeArith::new(p);
        let g = primitive_root(p);
        let mut exp = Vec::with_capacity(p as usize - 1);
        let mut log = vec![NO_LOG; p as usize];
        let mut x = 1u32;
        for k in 0..p - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = arith.mul(x, g);
        }
        FieldSpec {
            p,
            m: 1,
            q: p,
            poly: Vec::new(),
            exp: exp.into(),
            log: log.into(),
            arith: Arc::new(ArithKind::Prime(arith)),
        }
    }

    fn extension_field(p: u32, m: u32, q: u32, poly: Vec<u32>) -> Result<Self, FieldError> {
        // Polynomial residues are packed as base-p integers, digit k holding
        // the coefficient of x^k.
        let order = q - 1;
        let mut pow_to_vec = Vec::with_capacity(order as usize);
        let mut vec_to_pow = vec![NO_LOG; q as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for k in 0..order {
            let packed = pack(&cur, p);
            if vec_to_pow[packed as usize] != NO_LOG {
                return Err(FieldError::NotPrimitive { p, poly });
            }
            vec_to_pow[packed as usize] = k;
            pow_to_vec.push(packed);
            // cur *= x modulo poly
            let top = cur[m as usize - 1];
            for i in (1..m as usize).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..m as usize {
                    cur[i] = (cur[i] + (p - poly[i]) * top) % p;
                }
            }
        }
        // α^(q-1) must return to 1; period exactly q-1 follows from the
        // distinctness check above.
        if cur.iter().enumerate().any(|(i, &c)| c != u32::from(i == 0)) {
            return Err(FieldError::NotPrimitive { p, poly });
        }
        let one = 1;
        let mut zech = vec![NO_LOG; order as usize];
        for k in 0..order {
            let s = add_packed(one, pow_to_vec[k as usize], p, m);
            if s != 0 {
                zech[k as usize] = vec_to_pow[s as usize];
            }
        }
        let neg_one_exp = if p == 2 { 0 } else { order / 2 };
        let exp: Vec<u32> = (0..order).map(|k| k + 1).collect();
        let mut log = vec![NO_LOG; q as usize];
        for u in 1..q {
            log[u as usize] = u - 1;
        }
        Ok(FieldSpec {
            p,
            m,
            q,
            poly,
            exp: exp.into(),
            log: log.into(),
            arith: Arc::new(ArithKind::Ext(ExtArith {
                order_minus_one: order,
                zech,
                neg_one_exp,
            })),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    /// Defining polynomial, constant term first; `None` for prime fields.
    pub fn polynomial(&self) -> Option<&[u32]> {
        if self.m == 1 {
            None
        } else {
            Some(&self.poly)
        }
    }

    /// Polynomial in its text form: space-separated coefficients, constant
    /// term first.
    pub fn polynomial_text(&self) -> Option<String> {
        self.polynomial().map(format_polynomial)
    }

    pub fn contains(&self, label: u32) -> bool {
        label < self.q
    }

    pub fn element(&self, label: u32) -> Result<FieldElement, FieldError> {
        if self.contains(label) {
            Ok(FieldElement(label))
        } else {
            Err(FieldError::LabelOutOfField { label, q: self.q })
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_label(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_label(a.0))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_label(a.0, self.neg_label(b.0)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_label(a.0, b.0))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            Err(FieldError::ZeroInverse)
        } else {
            Ok(FieldElement(self.inv_label(a.0)))
        }
    }

    /// `g^k` where `g` is the multiplicative generator: `α` for extension
    /// fields, the least primitive root for prime fields.
    pub fn exp(&self, k: u32) -> FieldElement {
        FieldElement(self.exp[(k % (self.q - 1)) as usize])
    }

    /// Discrete logarithm of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        match self.log.get(a.0 as usize) {
            Some(&l) if l != NO_LOG => Some(l),
            _ => None,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub(crate) fn add_label(&self, a: u32, b: u32) -> u32 {
        match &*self.arith {
            ArithKind::Prime(f) => f.add(a, b),
            ArithKind::Ext(f) => f.add(a, b),
        }
    }

    #[inline]
    pub(crate) fn mul_label(&self, a: u32, b: u32) -> u32 {
        match &*self.arith {
            ArithKind::Prime(f) => f.mul(a, b),
            ArithKind::Ext(f) => f.mul(a, b),
        }
    }

    #[inline]
    pub(crate) fn inv_label(&self, a: u32) -> u32 {
        match &*self.arith {
            ArithKind::Prime(f) => f.inv(a),
            ArithKind::Ext(f) => f.inv(a),
        }
    }

    #[inline]
    pub(crate) fn neg_label(&self, a: u32) -> u32 {
        match &*self.arith {
            ArithKind::Prime(f) => f.neg(a),
            ArithKind::Ext(f) => f.neg(a),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polynomial_text() {
            None => write!(f, "GF({})", self.q),
            Some(poly) => write!(f, "GF({}) [{}]", self.q, poly),
        }
    }
}

/// Dispatches a generic body over the concrete arithmetic of a field.
macro_rules! with_arith {
    ($field:expr, |$a:ident| $body:expr) => {
        match &*$field.arith {
            $crate::gf::ArithKind::Prime($a) => $body,
            $crate::gf::ArithKind::Ext($a) => $body,
        }
    };
}
pub(crate) use with_arith;

pub fn format_polynomial(coeffs: &[u32]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_polynomial(text: &str) -> Option<Vec<u32>> {
    text.split_whitespace().map(|t| t.parse().ok()).collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_packed(mut a: u32, mut b: u32, p: u32, m: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

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

/// `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let order = (p - 1) as u64;
    let mut factors = Vec::new();
    let mut n = order;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= p as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r
    };
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow(g as u64, order / f) != 1))
        .expect("every prime field has a primitive root")
}
