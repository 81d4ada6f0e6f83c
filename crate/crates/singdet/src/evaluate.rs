//! Exact special values of the Jones, Q and Alexander polynomials.
//!
//! Jones values live in `Z[ζ]` with `ζ = e^{2πi/24}`, which contains `i`,
//! `√2`, `√3` and every `t^{1/2}` needed at `t = 1, -1, e^{2πi/3}, i, e^{2πi/6}`.
//! Q values live in `Z[√5]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{det_exact, IntMatrix, SymMatrix};
use crate::numtheory::{legendre_unchecked, nu, split_prime_power, Sign};
use crate::seifert::{singular_determinant, LinkInvariantBundle, SeifertData};

/// Degree of the 24th cyclotomic polynomial `x^8 - x^4 + 1`.
const CYCLO_DEG: usize = 8;

/// Element of `Z[ζ_24]` in the power basis `1, ζ, ..., ζ^7`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    coeffs: [BigInt; CYCLO_DEG],
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            coeffs: std::array::from_fn(|_| BigInt::zero()),
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero();
        z.coeffs[0] = n.into();
        z
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        // ζ^12 = -1, and ζ^8 = ζ^4 - 1 for the remaining range.
        let (k, sign) = if k >= 12 { (k - 12, -1) } else { (k, 1) };
        let mut z = Self::zero();
        if k < 8 {
            z.coeffs[k] = BigInt::from(sign);
        } else {
            z.coeffs[k - 4] = BigInt::from(sign);
            z.coeffs[k - 8] = BigInt::from(-sign);
        }
        z
    }

    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    pub fn sqrt2() -> Self {
        Self::zeta_pow(3) + Self::zeta_pow(-3)
    }

    pub fn sqrt3() -> Self {
        Self::zeta_pow(2) + Self::zeta_pow(-2)
    }

    /// `i√3 = 2ζ_6 - 1`.
    pub fn i_sqrt3() -> Self {
        Self::zeta_pow(4) * Self::from_int(2) - Self::one()
    }

    pub fn coeffs(&self) -> &[BigInt; CYCLO_DEG] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out + Self::zeta_pow(-(k as i64)).scale(c);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Cyclotomic {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] * k),
        }
    }

    /// The integer `n` if this element is `n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Writes the value as `m · i^e · √2^a · √3^b` with `e, a, b ∈ {0, 1}`.
    fn monomial_form(&self) -> Option<(BigInt, bool, bool, bool)> {
        for e in [false, true] {
            for a in [false, true] {
                for b in [false, true] {
                    let mut u = Self::one();
                    if e {
                        u = &u * &Self::i();
                    }
                    if a {
                        u = &u * &Self::sqrt2();
                    }
                    if b {
                        u = &u * &Self::sqrt3();
                    }
                    let norm = BigInt::from(if a { 2 } else { 1 } * if b { 3 } else { 1 });
                    let Some(prod) = (self * &u.conj()).as_integer() else {
                        continue;
                    };
                    let (m, r) = prod.div_rem(&norm);
                    if r.is_zero() && !m.is_zero() && &u.scale(&m) == self {
                        return Some((m, e, a, b));
                    }
                }
            }
        }
        None
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] + &rhs.coeffs[j]),
        }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] - &rhs.coeffs[j]),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            coeffs: self.coeffs.map(|c| -c),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut wide: [BigInt; 2 * CYCLO_DEG - 1] = std::array::from_fn(|_| BigInt::zero());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        // x^k = x^{k-4} - x^{k-8} for k >= 8
        for k in (CYCLO_DEG..wide.len()).rev() {
            let c = std::mem::take(&mut wide[k]);
            if c.is_zero() {
                continue;
            }
            wide[k - 4] += &c;
            wide[k - 8] -= &c;
        }
        Cyclotomic {
            coeffs: std::array::from_fn(|j| wide[j].clone()),
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

fn join_factors(sign: bool, parts: Vec<String>) -> String {
    let body = if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    };
    if sign {
        format!("-{body}")
    } else {
        body
    }
}

/// `Some(j)` when `n = base^j`.
fn exact_power(n: &BigInt, base: u32) -> Option<u32> {
    let b = BigInt::from(base);
    let mut x = n.clone();
    let mut j = 0;
    while x > BigInt::one() {
        let (q, r) = x.div_rem(&b);
        if !r.is_zero() {
            return None;
        }
        x = q;
        j += 1;
    }
    x.is_one().then_some(j)
}

fn surd(name: &str, power: u32) -> String {
    if power == 1 {
        name.to_string()
    } else {
        format!("{name}^{power}")
    }
}

impl fmt::Display for Cyclotomic {
    /// Canonical form such as `-2*i`, `i*sqrt3^3` or `sqrt2`; other values fall
    /// back to a polynomial in `z = e^{2πi/24}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if let Some((m, e, a, b)) = self.monomial_form() {
            let neg = m.is_negative();
            let mag = m.abs();
            let mut parts = Vec::new();
            let three = if b { exact_power(&mag, 3) } else { None };
            let two = if a && three.is_none() {
                exact_power(&mag, 2)
            } else {
                None
            };
            if three.is_none() && two.is_none() && !mag.is_one() {
                parts.push(mag.to_string());
            }
            if e {
                parts.push("i".to_string());
            }
            if a {
                parts.push(surd("sqrt2", 2 * two.unwrap_or(0) + 1));
            }
            if b {
                parts.push(surd("sqrt3", 2 * three.unwrap_or(0) + 1));
            }
            return f.write_str(&join_factors(neg, parts));
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Element `a + b√5` of `Z[√5]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZSqrt5 {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZSqrt5 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        ZSqrt5 {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn sqrt5_pow(k: u32) -> Self {
        let five = BigInt::from(5).pow(k / 2);
        if k % 2 == 0 {
            ZSqrt5::new(five, 0)
        } else {
            ZSqrt5::new(0, five)
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZSqrt5::new(&self.a * k, &self.b * k)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for ZSqrt5 {
    /// Canonical form such as `-sqrt5`, `sqrt5^3` or `5`; otherwise `a + b*sqrt5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            let neg = self.b.is_negative();
            let mag = self.b.abs();
            let parts = match exact_power(&mag, 5) {
                Some(j) => vec![surd("sqrt5", 2 * j + 1)],
                None => vec![mag.to_string(), "sqrt5".to_string()],
            };
            return f.write_str(&join_factors(neg, parts));
        }
        write!(f, "{} + {}*sqrt5", self.a, self.b)
    }
}

/// An exact special value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlgebraicValue {
    Cyclo(Cyclotomic),
    Sqrt5(ZSqrt5),
}

impl AlgebraicValue {
    pub fn as_cyclo(&self) -> Option<&Cyclotomic> {
        match self {
            AlgebraicValue::Cyclo(c) => Some(c),
            AlgebraicValue::Sqrt5(_) => None,
        }
    }

    pub fn as_sqrt5(&self) -> Option<&ZSqrt5> {
        match self {
            AlgebraicValue::Sqrt5(s) => Some(s),
            AlgebraicValue::Cyclo(_) => None,
        }
    }
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicValue::Cyclo(c) => c.fmt(f),
            AlgebraicValue::Sqrt5(s) => s.fmt(f),
        }
    }
}

/// Element of `Q(√5)` with rational coordinates, used while evaluating.
#[derive(Debug, Clone, PartialEq, Eq)]
struct QSqrt5 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt5 {
    fn from_halves(a: i64, b: i64) -> Self {
        let two = BigInt::from(2);
        QSqrt5 {
            a: BigRational::new(a.into(), two.clone()),
            b: BigRational::new(b.into(), two),
        }
    }

    fn one() -> Self {
        Self::from_halves(2, 0)
    }

    fn mul(&self, o: &QSqrt5) -> QSqrt5 {
        let five = BigRational::from_integer(5.into());
        QSqrt5 {
            a: &self.a * &o.a + five * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn pow(&self, e: u32) -> QSqrt5 {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    fn to_integral(&self) -> Option<ZSqrt5> {
        (self.a.is_integer() && self.b.is_integer())
            .then(|| ZSqrt5::new(self.a.to_integer(), self.b.to_integer()))
    }
}

/// Laurent polynomial in `t^{1/2}` with integer coefficients. Keys are
/// doubled exponents, so `t^{5/2}` is stored under 5.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c · t^{e/2}`.
    pub fn monomial(doubled_exp: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(doubled_exp, c.into());
        p
    }

    /// Builds from `(doubled exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, doubled_exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(doubled_exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&doubled_exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, doubled_exp: i64) -> BigInt {
        self.terms.get(&doubled_exp).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut p = Self::zero();
        for (&e, c) in &self.terms {
            p.add_term(e, c * k);
        }
        p
    }

    /// Multiplies by `t^{e/2}`.
    pub fn shift(&self, doubled_exp: i64) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + doubled_exp, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `t^{1/2} ↦ t^{-1/2}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluates with `t^{1/2} = ζ_24^k`.
    pub fn eval_zeta24(&self, k: i64) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (&e, c) in &self.terms {
            acc = acc + Cyclotomic::zeta_pow(e * k).scale(c);
        }
        acc
    }

    /// Evaluates a polynomial with only integer exponents of its variable
    /// (even doubled exponents) at `z = (√5 - 1)/2`.
    pub fn eval_golden(&self) -> Result<ZSqrt5> {
        let z = QSqrt5::from_halves(-1, 1);
        let zinv = QSqrt5::from_halves(1, 1);
        let mut acc = QSqrt5 {
            a: BigRational::zero(),
            b: BigRational::zero(),
        };
        for (&e, c) in &self.terms {
            if e % 2 != 0 {
                return Err(Error::Unsupported("half-integer exponent in Q polynomial".into()));
            }
            let k = e / 2;
            let base = if k >= 0 { &z } else { &zinv };
            let term = base.pow(k.unsigned_abs() as u32);
            let c = BigRational::from_integer(c.clone());
            acc.a += &c * term.a;
            acc.b += &c * term.b;
        }
        acc.to_integral()
            .ok_or_else(|| Error::Unsupported("value is not in Z[sqrt5]".into()))
    }

    /// Formats with variable `var`, exponents as `var^(k/2)` when odd.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match (e, e % 2 == 0) {
                (0, _) => String::new(),
                (2, _) => var.to_string(),
                (_, true) => format!("{var}^{}", e / 2),
                (_, false) => format!("{var}^({e}/2)"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = Error;

    /// Reads sums of terms like `-3*t^(-2)`, `t^(5/2)`, `t`, `7`; spaces are
    /// ignored, so both the display form and table exports parse.
    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("bad polynomial {text:?}"));
        let mut p = LaurentPolynomial::zero();
        let mut starts: Vec<usize> = Vec::new();
        let mut depth = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > 0 => starts.push(i),
                _ => {}
            }
        }
        starts.insert(0, 0);
        starts.push(s.len());
        for w in starts.windows(2) {
            let term = &s[w[0]..w[1]];
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, mono) = match body.find('t') {
                None => (body, None),
                Some(k) => (body[..k].trim_end_matches('*'), Some(&body[k + 1..])),
            };
            let mut c: BigInt = if coef.is_empty() {
                BigInt::one()
            } else {
                coef.parse().map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            let e = match mono {
                None => 0,
                Some("") => 2,
                Some(m) => {
                    let m = m.strip_prefix('^').ok_or_else(bad)?;
                    let m = m.strip_prefix('(').and_then(|m| m.strip_suffix(')')).unwrap_or(m);
                    match m.split_once('/') {
                        Some((num, "2")) => num.parse::<i64>().map_err(|_| bad())?,
                        Some(_) => return Err(bad()),
                        None => 2 * m.parse::<i64>().map_err(|_| bad())?,
                    }
                }
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut p = self.clone();
        for (&e, c) in &rhs.terms {
            p.add_term(e, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut p = self.clone();
        for (&e, c) in &rhs.terms {
            p.add_term(e, -c);
        }
        p
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

/// Exponents `k` with `t^{1/2} = ζ_24^k` at the five special points.
pub mod points {
    /// t = 1
    pub const ONE: i64 = 0;
    /// t = -1, `t^{1/2} = i`
    pub const MINUS_ONE: i64 = 6;
    /// t = e^{2πi/3}
    pub const ZETA3: i64 = 4;
    /// t = i, `t^{1/2} = e^{πi/4}`
    pub const I: i64 = 3;
    /// t = e^{2πi/6}
    pub const ZETA6: i64 = 2;
}

fn sign_value(s: Sign) -> Cyclotomic {
    Cyclotomic::from_int(s.to_i64())
}

fn check_odd_positive(det: &BigInt) -> Result<()> {
    if det.is_even() {
        return Err(Error::EvenDeterminant);
    }
    if !det.is_positive() {
        return Err(Error::Parse(format!("determinant {det} must be positive")));
    }
    Ok(())
}

/// `ν(q) (-1)^{α + d + w} (i√3)^d` with `det = 3^α q`; `wall_parity` is the
/// B-summand parity of the 3-primary linking form
/// ([`crate::linkform::WallDecomposition::b_parity`]).
pub fn jones_at_zeta6_knot(det: &BigInt, dim_f3: usize, wall_parity: u8) -> Result<AlgebraicValue> {
    check_odd_positive(det)?;
    let (alpha, q) = split_prime_power(det, 3);
    let s = nu(&q)? * Sign::parity(alpha as i64 + dim_f3 as i64 + wall_parity as i64);
    let v = &sign_value(s) * &Cyclotomic::i_sqrt3().pow(dim_f3 as u32);
    Ok(AlgebraicValue::Cyclo(v))
}

/// The five values `V(1), V(-1), V(e^{2πi/3}), V(i), V(e^{2πi/6})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesSpecialValues {
    pub at_one: Cyclotomic,
    pub at_minus_one: Cyclotomic,
    pub at_zeta3: Cyclotomic,
    pub at_i: Cyclotomic,
    pub at_zeta6: Cyclotomic,
}

impl JonesSpecialValues {
    pub fn as_array(&self) -> [(&'static str, &Cyclotomic); 5] {
        [
            ("V(1)", &self.at_one),
            ("V(-1)", &self.at_minus_one),
            ("V(zeta3)", &self.at_zeta3),
            ("V(i)", &self.at_i),
            ("V(zeta6)", &self.at_zeta6),
        ]
    }

    /// The same five values read off a Jones polynomial.
    pub fn from_polynomial(v: &LaurentPolynomial) -> Self {
        JonesSpecialValues {
            at_one: v.eval_zeta24(points::ONE),
            at_minus_one: v.eval_zeta24(points::MINUS_ONE),
            at_zeta3: v.eval_zeta24(points::ZETA3),
            at_i: v.eval_zeta24(points::I),
            at_zeta6: v.eval_zeta24(points::ZETA6),
        }
    }
}

/// Link evaluation table. `proper_arf` is `(-1)^Arf` for proper links and
/// `None` otherwise; knots fall back to the bundle's own Arf sign.
pub fn jones_special_values(
    bundle: &LinkInvariantBundle,
    delta3: Sign,
    proper_arf: Option<Sign>,
) -> Result<JonesSpecialValues> {
    let c = bundle.c as u32;
    let d3 = *bundle
        .d_p
        .get(&3)
        .ok_or_else(|| Error::Missing("d_3 in invariant bundle".into()))?;
    let arf = match (proper_arf, bundle.c) {
        (Some(a), _) => Some(a),
        (None, 1) => Some(
            bundle
                .arf_sign
                .ok_or_else(|| Error::Missing("Arf sign of a knot".into()))?,
        ),
        (None, _) => None,
    };
    let i = Cyclotomic::i();
    let at_i = match arf {
        Some(a) => &(-Cyclotomic::sqrt2()).pow(c - 1) * &sign_value(a),
        None => Cyclotomic::zero(),
    };
    let sigma_pow = i.pow(bundle.sigma.rem_euclid(4) as u32);
    Ok(JonesSpecialValues {
        at_one: Cyclotomic::from_int(-2).pow(c - 1),
        at_minus_one: sigma_pow.scale(&bundle.det),
        at_zeta3: Cyclotomic::from_int(-1).pow(c - 1),
        at_i,
        at_zeta6: &(&sign_value(delta3) * &i.pow(c - 1)) * &Cyclotomic::i_sqrt3().pow(d3 as u32),
    })
}

/// `(q|5) (-1)^w (√5)^{d_5}` with `det = 5^α q`; `wall_parity` is the
/// B-summand parity of the 5-primary linking form.
pub fn q_at_golden(det: &BigInt, d5: usize, wall_parity: u8) -> Result<AlgebraicValue> {
    check_odd_positive(det)?;
    let (_, q) = split_prime_power(det, 5);
    let s = Sign::from_i64(legendre_unchecked(&q, 5) as i64).expect("q prime to 5")
        * Sign::parity(wall_parity as i64);
    Ok(AlgebraicValue::Sqrt5(
        ZSqrt5::sqrt5_pow(d5 as u32).scale(&BigInt::from(s.to_i64())),
    ))
}

/// `δ_5(M) (√5)^{d_5}` for any link.
pub fn q_at_golden_link(m: &SymMatrix) -> Result<AlgebraicValue> {
    let sd = singular_determinant(m, 5)?;
    Ok(AlgebraicValue::Sqrt5(
        ZSqrt5::sqrt5_pow(sd.d_p as u32).scale(&BigInt::from(sd.value.to_i64())),
    ))
}

/// Conway-normalized `Δ(t) = det(-t^{1/2} A + t^{-1/2} A^T)`.
pub fn alexander_poly(a: &SeifertData) -> LaurentPolynomial {
    let am = a.seifert_matrix();
    let n = am.rows();
    let at = am.transpose();
    // s^n Δ = det(-s^2 A + A^T), a polynomial in s of degree at most 2n.
    let samples: Vec<(BigInt, BigInt)> = (0..=2 * n as i64)
        .map(|s| {
            let s2 = BigInt::from(-s * s);
            let m: IntMatrix = am.scale(&s2).add(&at);
            (BigInt::from(s), det_exact(&m))
        })
        .collect();
    let coeffs = interpolate(&samples);
    let mut p = LaurentPolynomial::zero();
    for (k, c) in coeffs.into_iter().enumerate() {
        p.add_term(k as i64 - n as i64, c);
    }
    p
}

/// Newton interpolation with integer nodes; exact since the result is integral.
fn interpolate(samples: &[(BigInt, BigInt)]) -> Vec<BigInt> {
    let n = samples.len();
    let xs: Vec<BigRational> = samples
        .iter()
        .map(|(x, _)| BigRational::from_integer(x.clone()))
        .collect();
    let mut dd: Vec<BigRational> = samples
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if poly[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &poly[d];
            }
            next[d] -= &poly[d] * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// `Δ(-1)` with `t^{1/2} = i`.
pub fn alexander_at_minus1(a: &SeifertData) -> AlgebraicValue {
    AlgebraicValue::Cyclo(alexander_poly(a).eval_zeta24(points::MINUS_ONE))
}

/// `i^k` for any integer k.
pub fn i_pow(k: i64) -> Cyclotomic {
    Cyclotomic::zeta_pow(6 * k)
}

/// `i^{-σ} det`, the predicted value of `Δ(-1)`.
pub fn alexander_at_minus1_closed_form(a: &SeifertData) -> AlgebraicValue {
    AlgebraicValue::Cyclo(i_pow(-a.signature()).scale(&a.determinant()))
}

impl Cyclotomic {
    /// Approximate value as `(re, im)`; diagnostic only.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let th = std::f64::consts::PI * k as f64 / 12.0;
            re += x * th.cos();
            im += x * th.sin();
        }
        (re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shadow(v: &LaurentPolynomial, half_angle: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in v.terms() {
            let x = c.to_f64().unwrap();
            re += x * (e as f64 * half_angle).cos();
            im += x * (e as f64 * half_angle).sin();
        }
        (re, im)
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
    }

    #[test]
    fn parses_polynomials() {
        let v: LaurentPolynomial = "-t^(-2)+ 4*t^(-1)-8+ 15*t".parse().unwrap();
        assert_eq!(v, LaurentPolynomial::from_terms([(-4, -1), (-2, 4), (0, -8), (2, 15)]));
        let h = LaurentPolynomial::from_terms([(5, -1), (1, -1)]);
        assert_eq!(h.to_string().parse::<LaurentPolynomial>().unwrap(), h);
        assert_eq!("1".parse::<LaurentPolynomial>().unwrap(), LaurentPolynomial::one());
        assert!("t^(1/3)".parse::<LaurentPolynomial>().is_err());
        assert!("".parse::<LaurentPolynomial>().is_err());
    }

    #[test]
    fn ring_identities() {
        assert_eq!(&Cyclotomic::i() * &Cyclotomic::i(), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::sqrt2().pow(2), Cyclotomic::from_int(2));
        assert_eq!(Cyclotomic::sqrt3().pow(2), Cyclotomic::from_int(3));
        assert_eq!(Cyclotomic::i_sqrt3().pow(2), Cyclotomic::from_int(-3));
        assert_eq!(
            Cyclotomic::i_sqrt3(),
            &Cyclotomic::i() * &Cyclotomic::sqrt3()
        );
        assert_eq!(Cyclotomic::zeta_pow(24), Cyclotomic::one());
        for k in -30..30 {
            assert_eq!(
                &Cyclotomic::zeta_pow(k) * &Cyclotomic::zeta_pow(5),
                Cyclotomic::zeta_pow(k + 5)
            );
        }
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Cyclotomic::i().scale(&(-2).into()).to_string(), "-2*i");
        assert_eq!(Cyclotomic::i_sqrt3().pow(3).to_string(), "-i*sqrt3^3");
        assert_eq!((-Cyclotomic::i_sqrt3().pow(3)).to_string(), "i*sqrt3^3");
        assert_eq!(Cyclotomic::from_int(-3).to_string(), "-3");
        assert_eq!(Cyclotomic::sqrt2().to_string(), "sqrt2");
        assert_eq!(Cyclotomic::sqrt2().pow(3).to_string(), "sqrt2^3");
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        assert_eq!(ZSqrt5::new(0, -1).to_string(), "-sqrt5");
        assert_eq!(ZSqrt5::sqrt5_pow(3).to_string(), "sqrt5^3");
        assert_eq!(ZSqrt5::sqrt5_pow(2).to_string(), "5");
        assert_eq!((Cyclotomic::one() + Cyclotomic::zeta_pow(1)).to_string(), "1 + 1*z");
    }

    #[test]
    fn hopf_and_torus_goldens() {
        let hp = LaurentPolynomial::from_terms([(5, -1), (1, -1)]);
        let v = JonesSpecialValues::from_polynomial(&hp);
        assert_eq!(v.at_minus_one.to_string(), "-2*i");
        assert_eq!(v.at_zeta6.to_string(), "-i");
        let t = LaurentPolynomial::from_terms([(3, -1), (7, -1), (9, 1), (11, -1)]);
        assert_eq!(t.eval_zeta24(points::I).to_string(), "sqrt2");
        let s = LaurentPolynomial::from_terms([(-9, -1), (-5, -1), (-3, 1), (-1, -1)]);
        assert_eq!(s.eval_zeta24(points::I).to_string(), "-sqrt2");
        assert_eq!(hp.to_string(), "-t^(5/2) - t^(1/2)");
    }

    #[test]
    fn shadow_agrees() {
        let t = LaurentPolynomial::from_terms([(3, -1), (7, -1), (9, 1), (11, -1), (-4, 3)]);
        for k in [0i64, 2, 3, 4, 6, 1, 5] {
            let exact = t.eval_zeta24(k).approx();
            let ang = std::f64::consts::PI * k as f64 / 12.0;
            assert!(close(exact, shadow(&t, ang)), "k={k}");
        }
    }

    #[test]
    fn zeta6_closed_form() {
        assert_eq!(
            jones_at_zeta6_knot(&BigInt::from(1), 0, 0).unwrap().to_string(),
            "1"
        );
        assert!(jones_at_zeta6_knot(&BigInt::from(4), 0, 0).is_err());
        let v = jones_at_zeta6_knot(&BigInt::from(3), 1, 1).unwrap();
        assert_eq!(v.to_string(), "-i*sqrt3");
        let v = jones_at_zeta6_knot(&BigInt::from(3), 1, 0).unwrap();
        assert_eq!(v.to_string(), "i*sqrt3");
    }

    #[test]
    fn golden_values() {
        let unknot = LaurentPolynomial::one();
        assert_eq!(unknot.eval_golden().unwrap(), ZSqrt5::new(1, 0));
        // μ = 2z^{-1} - 1 evaluates to √5
        let mu = LaurentPolynomial::from_terms([(-2, 2), (0, -1)]);
        assert_eq!(mu.eval_golden().unwrap().to_string(), "sqrt5");
        assert_eq!(
            q_at_golden_link(&SymMatrix::zeros(2)).unwrap().to_string(),
            "5"
        );
        let p = SymMatrix::from_rows(&[[22, 17], [17, 22]]).unwrap();
        assert_eq!(q_at_golden_link(&p).unwrap().to_string(), "-sqrt5");
        assert_eq!(
            q_at_golden(&BigInt::from(1), 0, 0).unwrap().to_string(),
            "1"
        );
    }

    #[test]
    fn alexander_examples() {
        let unknot = SeifertData::new(IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!(alexander_poly(&unknot), LaurentPolynomial::one());
        let hp = SeifertData::from_rows(&[[-1]]).unwrap();
        assert_eq!(alexander_at_minus1(&hp).to_string(), "2*i");
        assert_eq!(alexander_at_minus1_closed_form(&hp), alexander_at_minus1(&hp));
        let tref = SeifertData::from_rows(&[[-1, 1], [0, -1]]).unwrap();
        assert_eq!(
            alexander_poly(&tref),
            LaurentPolynomial::from_terms([(2, 1), (0, -1), (-2, 1)])
        );
        assert_eq!(alexander_at_minus1_closed_form(&tref), alexander_at_minus1(&tref));
    }
}
