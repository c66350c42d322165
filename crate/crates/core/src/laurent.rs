//! Sparse model of `A ⊗ k[z^{±1}]` with its ℤ_m-grading, derivations
//! `p(z) d/dz`, and the extension formulas evaluated term by term.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Algebra;
use crate::catalog;
use crate::decomposition::{SetupSpec, UnitChoice};
use crate::error::{Error, Result};
use crate::gradings::{eps, grading_from_automorphism, inverse_mod, omega, Automorphism, Grading};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, Scalar};

/// Which automorphism of `k[z^{±1}]` grades it: `z^n ↦ ω^n z^n`
/// (forward, `S_ī = z^i k[z^{±m}]`) or `z^n ↦ ω^{-n} z^n` (inverse,
/// `S_ī = z^{-i} k[z^{±m}]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Forward,
    Inverse,
}

/// Residue of `z^n` in ℤ_m.
pub fn graded_component(n: i64, m: u64, style: Style) -> u64 {
    match style {
        Style::Forward => eps(n, m),
        Style::Inverse => eps(-n, m),
    }
}

/// A Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentElement {
    field: Field,
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentElement {
    pub fn zero(field: &Field) -> Self {
        LaurentElement { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::monomial(field, field.one(), 0)
    }

    /// `c z^n`.
    pub fn monomial(field: &Field, c: Scalar, n: i64) -> Self {
        let mut x = Self::zero(field);
        x.add_term(n, &c);
        x
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut x = Self::zero(field);
        for (n, c) in terms {
            x.add_term(n, &c);
        }
        x
    }

    fn add_term(&mut self, n: i64, c: &Scalar) {
        let v = match self.terms.get(&n) {
            Some(old) => self.field.add(old, c),
            None => c.clone(),
        };
        if self.field.is_zero(&v) {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, v);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: i64) -> Scalar {
        self.terms.get(&n).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut x = self.clone();
        for (n, c) in &other.terms {
            x.add_term(*n, c);
        }
        Ok(x)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(&self.field, self.terms.iter().map(|(n, x)| (*n, self.field.mul(c, x))))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut x = Self::zero(&self.field);
        for (n, c) in &self.terms {
            for (k, d) in &other.terms {
                x.add_term(n + k, &self.field.mul(c, d));
            }
        }
        Ok(x)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentElement { field: self.field.clone(), terms: self.terms.iter().map(|(n, c)| (n + k, c.clone())).collect() }
    }

    /// `d/dz`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(&self.field, self.terms.iter().map(|(n, c)| (n - 1, self.field.mul(&self.field.from_int(*n), c))))
    }

    /// Parses a sum of `c*z^n` terms; `c*z`, `z^n`, `-z^n` and bare `c` are
    /// accepted, and `0` is the zero element.
    pub fn parse(text: &str, field: &Field) -> Result<Self> {
        let mut x = Self::zero(field);
        for (offset, term) in split_top_level(text, '+') {
            let (n, c) = parse_term(term.trim(), field).map_err(|e| shift_pos(e, offset))?;
            x.add_term(n, &c);
        }
        Ok(x)
    }
}

fn shift_pos(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        e => e,
    }
}

/// Splits at `sep` outside brackets, returning byte offsets with pieces.
fn split_top_level(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn parse_term(term: &str, field: &Field) -> Result<(i64, Scalar)> {
    let err = |msg: &str| Error::Parse { pos: 0, msg: String::from(msg) };
    if term.is_empty() {
        return Err(err("empty term"));
    }
    let (coeff, power) = match term.rfind('z') {
        None => return Ok((0, field.parse(term)?)),
        Some(zpos) => {
            let head = term[..zpos].trim_end();
            let coeff = if let Some(c) = head.strip_suffix('*') {
                field.parse(c.trim())?
            } else {
                match head {
                    "" => field.one(),
                    "-" => field.from_int(-1),
                    _ => return Err(err("expected '*' before z")),
                }
            };
            (coeff, &term[zpos + 1..])
        }
    };
    let power = power.trim();
    let n = if power.is_empty() {
        1
    } else {
        let p = power.strip_prefix('^').ok_or_else(|| err("expected '^' after z"))?;
        p.trim().parse::<i64>().map_err(|_| err("bad exponent"))?
    };
    Ok((n, coeff))
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (n, c)) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{n}")?,
            }
        }
        Ok(())
    }
}

/// The derivation `p(z) d/dz` of `k[z^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentDerivation {
    pub coefficient: LaurentElement,
}

impl LaurentDerivation {
    pub fn new(coefficient: LaurentElement) -> Self {
        LaurentDerivation { coefficient }
    }

    /// `c z^k d/dz`.
    pub fn monomial(field: &Field, c: Scalar, k: i64) -> Self {
        Self::new(LaurentElement::monomial(field, c, k))
    }

    pub fn apply(&self, x: &LaurentElement) -> Result<LaurentElement> {
        self.coefficient.mul(&x.derivative())
    }

    /// Whether the derivation has degree 0̄, i.e. every exponent of `p` is
    /// `1 mod m`.
    pub fn is_degree_zero(&self, m: u64) -> bool {
        self.coefficient.terms().all(|(n, _)| eps(n - 1, m) == 0)
    }
}

/// A finite sum `Σ_n a_n ⊗ z^n` with `a_n` in coordinates of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopElement {
    field: Field,
    dim: usize,
    terms: BTreeMap<i64, Vec<Scalar>>,
}

impl LoopElement {
    pub fn zero(field: &Field, dim: usize) -> Self {
        LoopElement { field: field.clone(), dim, terms: BTreeMap::new() }
    }

    /// `a ⊗ z^n`.
    pub fn pure(field: &Field, a: &[Scalar], n: i64) -> Self {
        let mut x = Self::zero(field, a.len());
        x.add_term(n, a);
        x
    }

    /// `a ⊗ p(z)`.
    pub fn tensor(a: &[Scalar], p: &LaurentElement) -> Self {
        let mut x = Self::zero(p.field(), a.len());
        for (n, c) in p.terms() {
            let v: Vec<Scalar> = a.iter().map(|y| p.field().mul(c, y)).collect();
            x.add_term(n, &v);
        }
        x
    }

    fn add_term(&mut self, n: i64, a: &[Scalar]) {
        let f = &self.field;
        let v: Vec<Scalar> = match self.terms.get(&n) {
            Some(old) => old.iter().zip(a).map(|(x, y)| f.add(x, y)).collect(),
            None => a.to_vec(),
        };
        if v.iter().all(|x| f.is_zero(x)) {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, v);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `z^n`.
    pub fn coeff(&self, n: i64) -> Vec<Scalar> {
        self.terms.get(&n).cloned().unwrap_or_else(|| vec![self.field.zero(); self.dim])
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &[Scalar])> {
        self.terms.iter().map(|(n, a)| (*n, a.as_slice()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut x = self.clone();
        for (n, a) in &other.terms {
            x.add_term(*n, a);
        }
        x
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut x = Self::zero(&self.field, self.dim);
        for (n, a) in &self.terms {
            let v: Vec<Scalar> = a.iter().map(|y| self.field.mul(c, y)).collect();
            x.add_term(*n, &v);
        }
        x
    }

    /// The module action `x · z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LoopElement {
            field: self.field.clone(),
            dim: self.dim,
            terms: self.terms.iter().map(|(n, a)| (n + k, a.clone())).collect(),
        }
    }

    /// The module action `x · p(z)`.
    pub fn act(&self, p: &LaurentElement) -> Self {
        let mut x = Self::zero(&self.field, self.dim);
        for (k, c) in p.terms() {
            x = x.add(&self.shift(k).scale(c));
        }
        x
    }

    /// `(a ⊗ z^p)(b ⊗ z^q) = ab ⊗ z^{p+q}`.
    pub fn mul(&self, other: &Self, a: &Algebra) -> Result<Self> {
        if self.dim != a.dim() || other.dim != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: other.dim });
        }
        let mut x = Self::zero(&self.field, self.dim);
        for (p, u) in &self.terms {
            for (q, v) in &other.terms {
                x.add_term(p + q, &a.mul_unchecked(u, v));
            }
        }
        Ok(x)
    }

    /// Parses `name: laurent; name: laurent; ...` over the basis names of `a`.
    pub fn parse(text: &str, a: &Algebra) -> Result<Self> {
        let f = a.field();
        let mut x = Self::zero(f, a.dim());
        if text.trim() == "0" {
            return Ok(x);
        }
        for (offset, part) in split_top_level(text, ';') {
            if part.trim().is_empty() {
                continue;
            }
            let colon = part.find(':').ok_or(Error::Parse { pos: offset, msg: String::from("expected 'name: laurent'") })?;
            let name = part[..colon].trim();
            let k = a
                .index_of(name)
                .ok_or_else(|| Error::Parse { pos: offset, msg: format!("unknown basis element '{name}'") })?;
            let p = LaurentElement::parse(&part[colon + 1..], f).map_err(|e| shift_pos(e, offset + colon + 1))?;
            x = x.add(&Self::tensor(&a.basis_vector(k), &p));
        }
        Ok(x)
    }

    /// Renders as a sum of `c(name⊗z^n)` terms.
    pub fn render(&self, a: &Algebra) -> String {
        let mut parts = Vec::new();
        for (n, v) in &self.terms {
            for (k, c) in v.iter().enumerate() {
                if self.field.is_zero(c) {
                    continue;
                }
                let mono = format!("{}⊗z^{}", a.names()[k], n);
                parts.push(if self.field.is_one(c) { mono } else { format!("{c}({mono})") });
            }
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}

/// A twisted loop setting: `A` graded by `σ₁`, `S = k[z^{±1}]` graded by
/// `style`, and a monomial unit `u = z^e` of unit residue `q`.
#[derive(Clone, Debug)]
pub struct LoopSetup {
    pub a: Algebra,
    pub sigma1: Matrix,
    pub grading_a: Grading,
    pub m: u64,
    pub style: Style,
    pub u_exp: i64,
    pub q: u64,
}

impl LoopSetup {
    /// `σ₁` given as an automorphism of `A` of period `m`.
    pub fn new(a: Algebra, sigma1: &Automorphism, style: Style, u_exp: i64) -> Result<Self> {
        let grading_a = grading_from_automorphism(sigma1)?;
        Self::build(a, sigma1.matrix().clone(), grading_a, sigma1.period(), style, u_exp)
    }

    /// `σ₁ = id`; no root of unity is needed.
    pub fn trivial(a: Algebra, m: u64, style: Style, u_exp: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::WrongPeriod { m });
        }
        let f = a.field().clone();
        let n = a.dim();
        let mut comps = vec![Subspace::full(&f, n)];
        comps.extend((1..m).map(|_| Subspace::zero(&f, n)));
        let grading_a = Grading::new(comps)?;
        Self::build(a, Matrix::identity(&f, n), grading_a, m, style, u_exp)
    }

    fn build(a: Algebra, sigma1: Matrix, grading_a: Grading, m: u64, style: Style, u_exp: i64) -> Result<Self> {
        let q = graded_component(u_exp, m, style);
        if inverse_mod(q, m).is_none() {
            return Err(Error::Hypothesis { item: "(iv)", reason: Box::new(Error::NotUnitResidue { q, m }) });
        }
        Ok(LoopSetup { a, sigma1, grading_a, m, style, u_exp, q })
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn residue(&self, n: i64) -> u64 {
        graded_component(n, self.m, self.style)
    }

    fn eps(&self, i: i64) -> i64 {
        eps(i, self.m) as i64
    }

    /// Exponent of `u' = u^{ε(q̄⁻¹)} ∈ S_1̄`.
    pub fn u_prime_exp(&self) -> i64 {
        self.u_exp * inverse_mod(self.q, self.m).expect("checked in construction") as i64
    }

    /// Splits `x` into homogeneous pure pieces `(ī, a_ī, n)`, `a_ī ⊗ z^n`.
    pub fn homogeneous_terms(&self, x: &LoopElement) -> Result<Vec<(i64, Vec<Scalar>, i64)>> {
        let f = self.field();
        let mut out = Vec::new();
        for (n, v) in x.terms() {
            for (i, comp) in self.grading_a.decompose(v)?.into_iter().enumerate() {
                if comp.iter().any(|c| !f.is_zero(c)) {
                    out.push((i as i64, comp, n));
                }
            }
        }
        Ok(out)
    }

    /// Whether `x` lies in the fixed-point algebra `(A ⊗ S)_0̄`.
    pub fn is_fixed(&self, x: &LoopElement) -> Result<bool> {
        Ok(self.homogeneous_terms(x)?.iter().all(|(i, _, n)| eps(*i + self.residue(*n) as i64, self.m) == 0))
    }

    fn pure(&self, a: &[Scalar], n: i64) -> LoopElement {
        LoopElement::pure(self.field(), a, n)
    }
}

/// A derivation of the fixed-point algebra, given by its values on
/// requested fixed elements.
pub trait FixedPointDerivation {
    fn apply(&self, ls: &LoopSetup, x: &LoopElement) -> Result<LoopElement>;
}

/// The restriction of `id ⊗ p(z) d/dz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDerivation(pub LaurentDerivation);

impl FixedPointDerivation for SDerivation {
    fn apply(&self, ls: &LoopSetup, x: &LoopElement) -> Result<LoopElement> {
        if !self.0.is_degree_zero(ls.m) {
            return Err(Error::NotInDomain(String::from("p(z) d/dz does not preserve the fixed points")));
        }
        let f = ls.field();
        let mut out = LoopElement::zero(f, x.dim());
        for (n, a) in x.terms() {
            let image = self.0.apply(&LaurentElement::monomial(f, f.one(), n))?;
            out = out.add(&LoopElement::tensor(a, &image));
        }
        Ok(out)
    }
}

/// Left multiplication by a fixed element `w`: the adjoint action when
/// `A` is a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjoint(pub LoopElement);

impl FixedPointDerivation for Adjoint {
    fn apply(&self, ls: &LoopSetup, x: &LoopElement) -> Result<LoopElement> {
        if !ls.is_fixed(&self.0)? {
            return Err(Error::NotInDomain(String::from("ad(w) needs w in the fixed-point algebra")));
        }
        self.0.mul(x, &ls.a)
    }
}

/// `id ⊗ t^{n+1} d/dt` with `t = z^m`, defined on `a ⊗ t^k` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TPower {
    pub n: i64,
}

impl FixedPointDerivation for TPower {
    fn apply(&self, ls: &LoopSetup, x: &LoopElement) -> Result<LoopElement> {
        let m = ls.m as i64;
        let f = ls.field();
        let mut out = LoopElement::zero(f, x.dim());
        for (e, a) in x.terms() {
            if e.rem_euclid(m) != 0 {
                return Err(Error::NotInDomain(format!("z^{e} is not a power of t = z^{m}")));
            }
            let k = e / m;
            let v: Vec<Scalar> = a.iter().map(|c| f.mul(&f.from_int(k), c)).collect();
            out = out.add(&ls.pure(&v, m * (k + self.n)));
        }
        Ok(out)
    }
}

/// A derivation supplied as a function on fixed elements.
pub struct Tabulated<F>(pub F);

impl<F> FixedPointDerivation for Tabulated<F>
where
    F: Fn(&LoopElement) -> Result<LoopElement>,
{
    fn apply(&self, _ls: &LoopSetup, x: &LoopElement) -> Result<LoopElement> {
        (self.0)(x)
    }
}

/// `d(a ⊗ z^n)` for a fixed pure tensor.
fn d_pure(ls: &LoopSetup, d: &dyn FixedPointDerivation, a: &[Scalar], n: i64) -> Result<LoopElement> {
    let x = ls.pure(a, n);
    if !ls.is_fixed(&x)? {
        return Err(Error::NotInDomain(format!("argument with z^{n} is not a fixed point")));
    }
    d.apply(ls, &x)
}

/// φ(d)(x) via the closed form with `u' = z^{e'}`:
/// `φ(d)(a_ī ⊗ z^n) = d(a ⊗ u^{-ε(s̄)} z^n) u^{ε(s̄)}
///   + ε(s̄) m⁻¹ u^{ε(ī)} [u^{-m} d(a ⊗ u^{-ε(ī)+m}) - d(a ⊗ u^{-ε(ī)})] z^n`.
pub fn loop_phi_eval(ls: &LoopSetup, d: &dyn FixedPointDerivation, x: &LoopElement) -> Result<LoopElement> {
    let f = ls.field();
    let m = ls.m as i64;
    let e = ls.u_prime_exp();
    let m_inv = f.inv(&f.from_int(m)).map_err(|_| Error::CharDividesM { p: f.characteristic(), m: ls.m })?;
    let mut out = LoopElement::zero(f, ls.a.dim());
    for (i, a, n) in ls.homogeneous_terms(x)? {
        let es = ls.eps(i + ls.residue(n) as i64);
        let ei = ls.eps(i);
        out = out.add(&d_pure(ls, d, &a, n - e * es)?.shift(e * es));
        if es != 0 {
            let up = d_pure(ls, d, &a, e * (-ei + m))?.shift(-e * m);
            let bracket = up.sub(&d_pure(ls, d, &a, -e * ei)?);
            let c = f.mul(&f.from_int(es), &m_inv);
            out = out.add(&bracket.shift(e * ei + n).scale(&c));
        }
    }
    Ok(out)
}

/// The earlier published extension `D(x_ī ⊗ b) = u^r d(x_ī ⊗ u^{-r} b)`
/// with `s̄ = q̄ r̄`, for the original unit `u = z^e ∈ S_q̄`.
pub fn loop_bm_eval(ls: &LoopSetup, d: &dyn FixedPointDerivation, x: &LoopElement) -> Result<LoopElement> {
    let q_inv = inverse_mod(ls.q, ls.m).expect("checked in construction") as i64;
    let e = ls.u_exp;
    let mut out = LoopElement::zero(ls.field(), ls.a.dim());
    for (i, a, n) in ls.homogeneous_terms(x)? {
        let r = ls.eps((i + ls.residue(n) as i64) * q_inv);
        out = out.add(&d_pure(ls, d, &a, n - e * r)?.shift(e * r));
    }
    Ok(out)
}

/// The Leibniz defect `D(xy) - D(x)y - xD(y)`.
pub fn leibniz_defect(
    ls: &LoopSetup,
    big_d: impl Fn(&LoopElement) -> Result<LoopElement>,
    x: &LoopElement,
    y: &LoopElement,
) -> Result<LoopElement> {
    let a = &ls.a;
    let lhs = big_d(&x.mul(y, a)?)?;
    let rhs = big_d(x)?.mul(y, a)?.add(&x.mul(&big_d(y)?, a)?);
    Ok(lhs.sub(&rhs))
}

/// The finite quotient `A ⊗ k[z]/(z^{Nm} - 1)` of a loop setting.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub spec: SetupSpec,
    pub modulus: usize,
}

/// Reduction of exponents mod `N m`, giving a finite setup with
/// `σ₂(z) = ω^{±1} z` and unit `z^{e mod Nm}`.
pub fn quotient_to_finite(ls: &LoopSetup, n: usize) -> Result<Quotient> {
    if n == 0 {
        return Err(Error::WrongPeriod { m: 0 });
    }
    let f = ls.field().clone();
    let modulus = n * ls.m as usize;
    let s = catalog::group_algebra(&f, modulus);
    let w = omega(&f, ls.m)?;
    let lambda = match ls.style {
        Style::Forward => w,
        Style::Inverse => f.inv(&w)?,
    };
    let sigma2 = catalog::scaling_automorphism(&s, &lambda, ls.m)?;
    let mut u = vec![f.zero(); modulus];
    u[ls.u_exp.rem_euclid(modulus as i64) as usize] = f.one();
    let spec = SetupSpec {
        a: ls.a.clone(),
        s,
        sigma1: ls.sigma1.clone(),
        sigma2: sigma2.matrix().clone(),
        m: ls.m,
        unit: UnitChoice::Explicit(u),
    };
    Ok(Quotient { spec, modulus })
}

impl Quotient {
    /// Tensor coordinates of the image of `x`.
    pub fn reduce(&self, x: &LoopElement) -> Vec<Scalar> {
        let f = x.field();
        let nm = self.modulus;
        let mut out = vec![f.zero(); x.dim() * nm];
        for (n, a) in x.terms() {
            let j = n.rem_euclid(nm as i64) as usize;
            for (k, c) in a.iter().enumerate() {
                out[k * nm + j] = f.add(&out[k * nm + j], c);
            }
        }
        out
    }

    /// The lift with exponents in `[0, Nm)`.
    pub fn lift(&self, field: &Field, v: &[Scalar]) -> LoopElement {
        let nm = self.modulus;
        let dim = v.len() / nm;
        let mut x = LoopElement::zero(field, dim);
        for j in 0..nm {
            let a: Vec<Scalar> = (0..dim).map(|k| v[k * nm + j].clone()).collect();
            x.add_term(j as i64, &a);
        }
        x
    }

    /// Matrix of the derivation induced by `d` on the quotient's fixed-point
    /// algebra, in its canonical basis. Fails with `NotInDomain` when `d`
    /// does not descend.
    pub fn descend(
        &self,
        ls: &LoopSetup,
        setup: &crate::decomposition::Setup,
        d: &dyn FixedPointDerivation,
    ) -> Result<Matrix> {
        let f = ls.field();
        let mut cols = Vec::with_capacity(setup.fixed.dim());
        for c in 0..setup.embedding.cols() {
            let x = self.lift(f, &setup.embedding.column(c));
            let image = self.reduce(&d.apply(ls, &x)?);
            cols.push(
                setup
                    .fixed_space
                    .coordinates(&image)
                    .ok_or_else(|| Error::NotInDomain(String::from("d does not preserve the quotient fixed points")))?,
            );
        }
        // d must kill the relation z^{Nm} = 1.
        for (c, col) in cols.iter().enumerate() {
            let x = self.lift(f, &setup.embedding.column(c)).shift(self.modulus as i64);
            let image = self.reduce(&d.apply(ls, &x)?);
            if setup.fixed_space.coordinates(&image).as_ref() != Some(col) {
                return Err(Error::NotInDomain(String::from("d does not descend to the quotient")));
            }
        }
        let dm = Matrix::from_columns(f, setup.fixed.dim(), &cols)?;
        Ok(dm)
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::Forward => "forward",
            Style::Inverse => "inverse",
        })
    }
}

impl core::str::FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Style::Forward),
            "inverse" => Ok(Style::Inverse),
            other => Err(Error::Parse { pos: 0, msg: format!("unknown style '{other}'") }),
        }
    }
}
