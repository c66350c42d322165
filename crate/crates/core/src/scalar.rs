//! Exact scalar fields: `Q`, cyclotomic fields `Q(zeta_m)` and prime fields.
//!
//! A [`Scalar`] is plain data; arithmetic goes through the [`Field`] it
//! belongs to, which carries the cyclotomic modulus or the prime.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Cyclotomic,
    Prime,
}

#[derive(Debug)]
struct FieldData {
    kind: FieldKind,
    m: u64,
    p: u64,
    /// Coefficients of the m-th cyclotomic polynomial, constant term first.
    modulus: Vec<BigInt>,
    /// Primitive m-th root of unity (prime kind only).
    root: u64,
}

/// An exact field descriptor. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind && self.0.m == other.0.m && self.0.p == other.0.p)
    }
}

impl Eq for Field {}

/// An element of one of the supported fields, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// Coefficients of `sum c_t zeta^t`, reduced modulo the cyclotomic polynomial.
    Cyclotomic(Vec<BigRational>),
    Prime(u64),
}

/// Binary and unary operations accepted by [`Field::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpResult {
    Value(Scalar),
    Bool(bool),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Smallest element of `F_p` of multiplicative order exactly `m`.
fn element_of_order(m: u64, p: u64) -> Option<u64> {
    if (p - 1) % m != 0 {
        return None;
    }
    let factors = prime_factors(m);
    (1..p).find(|&h| pow_mod(h, m, p) == 1 && factors.iter().all(|&q| pow_mod(h, m / q, p) != 1))
}

/// Cyclotomic polynomial `Phi_m`, constant term first, by exact division of
/// `x^m - 1` by `Phi_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, dc) in den.iter().enumerate() {
            rem[k + t] -= &c * dc;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "cyclotomic division left a remainder");
    quot
}

fn totient(m: u64) -> u64 {
    prime_factors(m).iter().fold(m, |acc, &q| acc / q * (q - 1))
}

impl Field {
    pub fn rational() -> Self {
        Field(Arc::new(FieldData { kind: FieldKind::Rational, m: 1, p: 0, modulus: Vec::new(), root: 1 }))
    }

    /// `Q(zeta_m)`.
    pub fn cyclotomic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::NoPrimitiveRoot { m });
        }
        Ok(Field(Arc::new(FieldData {
            kind: FieldKind::Cyclotomic,
            m,
            p: 0,
            modulus: cyclotomic_polynomial(m),
            root: 1,
        })))
    }

    /// `F_p` together with a primitive `m`-th root of unity.
    pub fn prime(p: u64, m: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || m % p == 0 {
            return Err(Error::CharDividesM { p, m });
        }
        let root = element_of_order(m, p).ok_or(Error::NoPrimitiveRoot { m })?;
        Ok(Field(Arc::new(FieldData { kind: FieldKind::Prime, m, p, modulus: Vec::new(), root })))
    }

    /// Generic constructor. The rational field only carries roots of order 1 and 2.
    pub fn make(kind: FieldKind, m: u64, p: Option<u64>) -> Result<Self> {
        match kind {
            FieldKind::Rational if m == 1 || m == 2 => Ok(Self::rational()),
            FieldKind::Rational => Err(Error::NoPrimitiveRoot { m }),
            FieldKind::Cyclotomic => Self::cyclotomic(m),
            FieldKind::Prime => Self::prime(p.ok_or(Error::NotPrime(0))?, m),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn m(&self) -> u64 {
        self.0.m
    }

    /// Characteristic: 0 or the prime.
    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }

    /// Number of rational coordinates of a cyclotomic element.
    pub fn degree(&self) -> usize {
        match self.0.kind {
            FieldKind::Cyclotomic => self.0.modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.0.kind {
            FieldKind::Rational => Scalar::Rational(BigRational::zero()),
            FieldKind::Cyclotomic => Scalar::Cyclotomic(vec![BigRational::zero(); self.degree()]),
            FieldKind::Prime => Scalar::Prime(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every field")
    }

    /// Image of a rational number. Fails in `F_p` when the denominator vanishes.
    pub fn from_rational(&self, q: BigRational) -> Result<Scalar> {
        match self.0.kind {
            FieldKind::Rational => Ok(Scalar::Rational(q)),
            FieldKind::Cyclotomic => {
                let mut v = vec![BigRational::zero(); self.degree()];
                v[0] = q;
                Ok(Scalar::Cyclotomic(v))
            }
            FieldKind::Prime => {
                let p = BigInt::from(self.0.p);
                let n = q.numer().mod_floor(&p).to_u64().unwrap();
                let d = q.denom().mod_floor(&p).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Prime(n * pow_mod(d, self.0.p - 2, self.0.p) % self.0.p))
            }
        }
    }

    /// The distinguished primitive m-th root of unity of the descriptor.
    pub fn zeta(&self) -> Scalar {
        match self.0.kind {
            FieldKind::Rational => self.one(),
            FieldKind::Cyclotomic => {
                let mut v = vec![BigRational::zero(); self.degree()];
                if v.len() == 1 {
                    // Phi_1 = x - 1, Phi_2 = x + 1: zeta is 1 or -1.
                    v[0] = BigRational::from_integer(-self.0.modulus[0].clone());
                } else {
                    v[1] = BigRational::one();
                }
                Scalar::Cyclotomic(v)
            }
            FieldKind::Prime => Scalar::Prime(self.0.root),
        }
    }

    /// A primitive `k`-th root of unity, if the field has one.
    pub fn primitive_root(&self, k: u64) -> Option<Scalar> {
        if k == 0 {
            return None;
        }
        if k == 1 {
            return Some(self.one());
        }
        match self.0.kind {
            FieldKind::Rational => (k == 2).then(|| self.from_int(-1)),
            FieldKind::Cyclotomic => {
                let big_m = self.0.m;
                // For odd M the field also contains -zeta, of order 2M.
                let (gen, order) = if big_m % 2 == 1 {
                    (self.neg(&self.zeta()), 2 * big_m)
                } else {
                    (self.zeta(), big_m)
                };
                (order % k == 0).then(|| self.pow_u(&gen, order / k))
            }
            FieldKind::Prime => element_of_order(k, self.0.p).map(Scalar::Prime),
        }
    }

    /// Whether `s` is a well-formed canonical element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self.0.kind, s) {
            (FieldKind::Rational, Scalar::Rational(_)) => true,
            (FieldKind::Cyclotomic, Scalar::Cyclotomic(v)) => v.len() == self.degree(),
            (FieldKind::Prime, Scalar::Prime(r)) => *r < self.0.p,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Cyclotomic(v) => v.iter().all(Zero::is_zero),
            Scalar::Prime(r) => *r == 0,
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        *s == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => {
                Scalar::Cyclotomic(x.iter().zip(y).map(|(s, t)| s + t).collect())
            }
            (Scalar::Prime(x), Scalar::Prime(y)) => Scalar::Prime((x + y) % self.0.p),
            _ => panic!("scalar kinds do not match"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Cyclotomic(x) => Scalar::Cyclotomic(x.iter().map(|s| -s).collect()),
            Scalar::Prime(x) => Scalar::Prime((self.0.p - x) % self.0.p),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Cyclotomic(x), Scalar::Cyclotomic(y)) => Scalar::Cyclotomic(self.cyclo_mul(x, y)),
            (Scalar::Prime(x), Scalar::Prime(y)) => Scalar::Prime(x * y % self.0.p),
            _ => panic!("scalar kinds do not match"),
        }
    }

    /// `a + b * c`, the inner step of every elimination.
    pub fn mul_add(&self, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        self.add(a, &self.mul(b, c))
    }

    fn cyclo_mul(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let n = x.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.cyclo_reduce(prod)
    }

    fn cyclo_reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let modulus = &self.0.modulus;
        let deg = modulus.len() - 1;
        for k in (deg..poly.len()).rev() {
            let c = core::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (t, mc) in modulus.iter().enumerate().take(deg) {
                if !mc.is_zero() {
                    poly[k - deg + t] -= &c * BigRational::from_integer(mc.clone());
                }
            }
        }
        poly.truncate(deg);
        poly.resize(deg, BigRational::zero());
        poly
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match a {
            Scalar::Rational(x) => Ok(Scalar::Rational(x.recip())),
            Scalar::Prime(x) => Ok(Scalar::Prime(pow_mod(*x, self.0.p - 2, self.0.p))),
            Scalar::Cyclotomic(x) => self.cyclo_inv(x).map(Scalar::Cyclotomic),
        }
    }

    /// Solves `a * y = 1` as a linear system over `Q` in the power basis.
    fn cyclo_inv(&self, a: &[BigRational]) -> Result<Vec<BigRational>> {
        let n = a.len();
        // Column t of the multiplication matrix is a * zeta^t.
        let mut cols = Vec::with_capacity(n);
        let mut cur = a.to_vec();
        for _ in 0..n {
            cols.push(cur.clone());
            let mut shifted = vec![BigRational::zero()];
            shifted.extend(cur.iter().cloned());
            cur = self.cyclo_reduce(shifted);
        }
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let lead = aug[col][col].clone();
            for v in aug[col].iter_mut() {
                *v /= &lead;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=n {
                        let delta = &f * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        Ok(aug.into_iter().map(|row| row[n].clone()).collect())
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow_u(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        if e < 0 {
            Ok(self.pow_u(&self.inv(a)?, e.unsigned_abs()))
        } else {
            Ok(self.pow_u(a, e as u64))
        }
    }

    /// Checked arithmetic: validates that both operands belong to this field.
    pub fn apply(&self, op: ScalarOp, a: &Scalar, b: Option<&Scalar>) -> Result<OpResult> {
        if !self.contains(a) || b.is_some_and(|b| !self.contains(b)) {
            return Err(Error::FieldMismatch);
        }
        let rhs = || b.ok_or(Error::FieldMismatch);
        Ok(match op {
            ScalarOp::Add => OpResult::Value(self.add(a, rhs()?)),
            ScalarOp::Sub => OpResult::Value(self.sub(a, rhs()?)),
            ScalarOp::Mul => OpResult::Value(self.mul(a, rhs()?)),
            ScalarOp::Div => OpResult::Value(self.div(a, rhs()?)?),
            ScalarOp::Neg => OpResult::Value(self.neg(a)),
            ScalarOp::Inv => OpResult::Value(self.inv(a)?),
            ScalarOp::Eq => OpResult::Bool(a == rhs()?),
        })
    }

    /// Parses a scalar literal.
    ///
    /// Rationals are `[+-]digits[/digits]`, cyclotomic elements are
    /// `[c0, c1, ...]` meaning `sum c_t zeta^t` (zero padded), prime field
    /// elements are integers reduced modulo `p`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let mut cur = Cursor { text, pos: 0 };
        cur.skip_ws();
        let value = match self.0.kind {
            FieldKind::Rational => Scalar::Rational(cur.rational()?),
            FieldKind::Cyclotomic => {
                let deg = self.degree();
                if cur.peek() == Some('[') {
                    cur.pos += 1;
                    let mut coeffs = Vec::new();
                    cur.skip_ws();
                    if cur.peek() != Some(']') {
                        loop {
                            cur.skip_ws();
                            coeffs.push(cur.rational()?);
                            cur.skip_ws();
                            match cur.peek() {
                                Some(',') => cur.pos += 1,
                                Some(']') => break,
                                _ => return Err(cur.error("expected ',' or ']'")),
                            }
                        }
                    }
                    if coeffs.len() > deg {
                        return Err(cur.error(&format!("at most {deg} coefficients allowed")));
                    }
                    cur.pos += 1;
                    coeffs.resize(deg, BigRational::zero());
                    Scalar::Cyclotomic(coeffs)
                } else {
                    self.from_rational(cur.rational()?)?
                }
            }
            FieldKind::Prime => {
                let start = cur.pos;
                let q = cur.rational()?;
                if !q.is_integer() {
                    return Err(Error::Parse { pos: start, msg: "expected an integer".into() });
                }
                self.from_rational(q)?
            }
        };
        cur.skip_ws();
        if cur.pos != text.len() {
            return Err(cur.error("trailing input"));
        }
        Ok(value)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.text[start..self.pos].parse::<BigInt>().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let num = self.digits()?;
        let den = if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::Parse { pos: at, msg: "zero denominator".into() });
            }
            d
        } else {
            BigInt::one()
        };
        let q = BigRational::new(num, den);
        Ok(if negative { -q } else { q })
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => fmt_rational(q, f),
            Scalar::Prime(r) => write!(f, "{r}"),
            Scalar::Cyclotomic(v) => {
                f.write_str("[")?;
                for (i, q) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    fmt_rational(q, f)?;
                }
                f.write_str("]")
            }
        }
    }
}

impl Scalar {
    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Cyclotomic(v) if v[1..].iter().all(Zero::is_zero) => Some(v[0].clone()),
            _ => None,
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Rational => f.write_str("Q"),
            FieldKind::Cyclotomic => write!(f, "Q(zeta_{})", self.0.m),
            FieldKind::Prime => write!(f, "F_{} (m = {})", self.0.p, self.0.m),
        }
    }
}

/// Euler's totient, the degree of `Q(zeta_m)` over `Q`.
pub fn euler_phi(m: u64) -> u64 {
    totient(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn phi4_is_x2_plus_1() {
        let f = Field::cyclotomic(4).unwrap();
        let ints: Vec<i64> = f.modulus().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(ints, [1, 0, 1]);
        let z = f.zeta();
        assert_eq!(f.mul(&z, &z), f.from_int(-1));
    }

    #[test]
    fn phi1_is_plain_rationals() {
        let f = Field::cyclotomic(1).unwrap();
        let ints: Vec<i64> = f.modulus().iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(ints, [-1, 1]);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.zeta(), f.one());
    }

    #[test]
    fn cyclotomic_modulus_divides_x_m_minus_1() {
        for m in 1..=24u64 {
            let phi = cyclotomic_polynomial(m);
            assert_eq!(phi.len() as u64 - 1, euler_phi(m), "degree of Phi_{m}");
            assert!(phi.last().unwrap().is_one());
            let mut num = vec![BigInt::zero(); m as usize + 1];
            num[0] = -BigInt::one();
            num[m as usize] = BigInt::one();
            // exact_div_monic asserts a zero remainder in debug builds
            let quot = exact_div_monic(&num, &phi);
            assert_eq!(quot.len() + phi.len() - 1, num.len());
        }
    }

    #[test]
    fn prime_field_root_by_exhaustion() {
        let f = Field::prime(5, 4).unwrap();
        // independent search: elements of F_5^x of order 4
        let order4: Vec<u64> = (1..5u64)
            .filter(|&h| (1..=4).find(|&k| pow_mod(h, k, 5) == 1) == Some(4))
            .collect();
        assert_eq!(order4, [2, 3]);
        assert_eq!(f.zeta(), Scalar::Prime(2));
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(Field::prime(5, 5).unwrap_err(), Error::CharDividesM { p: 5, m: 5 });
        assert_eq!(Field::prime(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(Field::prime(7, 4).unwrap_err(), Error::NoPrimitiveRoot { m: 4 });
        assert_eq!(Field::make(FieldKind::Rational, 3, None).unwrap_err(), Error::NoPrimitiveRoot { m: 3 });
    }

    #[test]
    fn inverse_of_one_plus_zeta4() {
        let f = Field::cyclotomic(4).unwrap();
        let a = f.add(&f.one(), &f.zeta());
        let inv = f.inv(&a).unwrap();
        // (1 + zeta)(1 - zeta) = 1 - zeta^2 = 2
        assert_eq!(inv, Scalar::Cyclotomic(vec![q(1, 2), q(-1, 2)]));
        assert_eq!(f.mul(&a, &inv), f.one());
    }

    #[test]
    fn rational_normalization() {
        let f = Field::rational();
        let a = f.parse("2/4").unwrap();
        let b = f.parse("1/4").unwrap();
        assert_eq!(f.add(&a, &b).to_string(), "3/4");
    }

    #[test]
    fn zeta_power_m_is_one() {
        let f = Field::cyclotomic(4).unwrap();
        let z = f.zeta();
        let z4 = f.mul(&f.mul(&z, &z), &f.mul(&z, &z));
        assert_eq!(z4, f.one());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Field::rational().parse("-3/2").unwrap(), Scalar::Rational(q(-3, 2)));
        let c4 = Field::cyclotomic(4).unwrap();
        assert_eq!(c4.parse("[0, 1]").unwrap(), c4.zeta());
        assert_eq!(c4.parse("[5]").unwrap(), c4.from_int(5));
        assert_eq!(Field::prime(5, 4).unwrap().parse("7").unwrap(), Scalar::Prime(2));
        assert_eq!(Field::prime(5, 4).unwrap().parse("-1").unwrap(), Scalar::Prime(4));
    }

    #[test]
    fn parse_errors_carry_position() {
        let f = Field::rational();
        assert_eq!(f.parse("1/0").unwrap_err(), Error::Parse { pos: 2, msg: "zero denominator".into() });
        assert!(matches!(f.parse("12x"), Err(Error::Parse { pos: 2, .. })));
        let c4 = Field::cyclotomic(4).unwrap();
        assert!(matches!(c4.parse("[1, 2, 3]"), Err(Error::Parse { .. })));
        assert!(matches!(Field::prime(5, 4).unwrap().parse("1/2"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn checked_ops_detect_mismatch() {
        let f = Field::rational();
        let g = Field::prime(5, 4).unwrap();
        assert_eq!(f.apply(ScalarOp::Add, &f.one(), Some(&g.one())), Err(Error::FieldMismatch));
        assert_eq!(f.apply(ScalarOp::Inv, &f.zero(), None), Err(Error::DivisionByZero));
        assert_eq!(f.apply(ScalarOp::Eq, &f.one(), Some(&f.one())), Ok(OpResult::Bool(true)));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        let fields = [
            Field::rational(),
            Field::cyclotomic(3).unwrap(),
            Field::cyclotomic(4).unwrap(),
            Field::cyclotomic(12).unwrap(),
            Field::prime(13, 12).unwrap(),
        ];
        for f in &fields {
            for k in 1..=12u64 {
                let Some(w) = f.primitive_root(k) else { continue };
                assert!(f.is_one(&f.pow(&w, k as i64).unwrap()), "{f}: w^{k}");
                for j in 1..k {
                    assert!(!f.is_one(&f.pow(&w, j as i64).unwrap()), "{f}: w^{j} for k = {k}");
                }
            }
        }
        // Q(zeta_3) contains -zeta_3 of order 6
        assert!(Field::cyclotomic(3).unwrap().primitive_root(6).is_some());
    }

    #[test]
    fn cyclotomic_polynomial_vanishes_at_zeta() {
        for m in [1u64, 2, 3, 4, 5, 6, 8, 9, 12] {
            let f = Field::cyclotomic(m).unwrap();
            let z = f.zeta();
            let mut acc = f.zero();
            for (t, c) in f.modulus().iter().enumerate() {
                let c = f.from_rational(BigRational::from_integer(c.clone())).unwrap();
                acc = f.add(&acc, &f.mul(&c, &f.pow(&z, t as i64).unwrap()));
            }
            assert!(f.is_zero(&acc), "Phi_{m}(zeta) != 0");
        }
    }

    fn arb_scalar(f: Field) -> impl Strategy<Value = Scalar> {
        let deg = f.degree();
        proptest::collection::vec((-20i64..20, 1i64..7), deg).prop_map(move |cs| match f.kind() {
            FieldKind::Rational => Scalar::Rational(q(cs[0].0, cs[0].1)),
            FieldKind::Cyclotomic => Scalar::Cyclotomic(cs.iter().map(|&(n, d)| q(n, d)).collect()),
            FieldKind::Prime => f.from_int(cs[0].0 * cs[0].1),
        })
    }

    fn field_axioms(f: &Field, a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert!(f.is_zero(&f.add(a, &f.neg(a))));
        if !f.is_zero(a) {
            assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
        }
    }

    proptest! {
        #[test]
        fn rational_axioms(a in arb_scalar(Field::rational()), b in arb_scalar(Field::rational()), c in arb_scalar(Field::rational())) {
            field_axioms(&Field::rational(), &a, &b, &c);
        }

        #[test]
        fn cyclotomic_axioms(a in arb_scalar(Field::cyclotomic(12).unwrap()), b in arb_scalar(Field::cyclotomic(12).unwrap()), c in arb_scalar(Field::cyclotomic(12).unwrap())) {
            field_axioms(&Field::cyclotomic(12).unwrap(), &a, &b, &c);
        }

        #[test]
        fn prime_axioms(a in arb_scalar(Field::prime(13, 4).unwrap()), b in arb_scalar(Field::prime(13, 4).unwrap()), c in arb_scalar(Field::prime(13, 4).unwrap())) {
            field_axioms(&Field::prime(13, 4).unwrap(), &a, &b, &c);
        }

        #[test]
        fn print_parse_round_trip(a in arb_scalar(Field::cyclotomic(5).unwrap())) {
            let f = Field::cyclotomic(5).unwrap();
            let text = a.to_string();
            let back = f.parse(&text).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
