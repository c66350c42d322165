//! Sampled checks of the exponent identities satisfied by every derivation
//! of the fixed-point algebra.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::report::VerificationReport;
use super::setup::Setup;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

struct Tally {
    name: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, witness: None }
    }

    fn full(&self, budget: Option<usize>) -> bool {
        budget.is_some_and(|b| self.checked >= b)
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(describe());
        }
    }

    fn finish(self, r: &mut VerificationReport) {
        r.dim(&format!("{} instances", self.name), self.checked);
        r.assert_witness(self.name, self.witness);
    }
}

struct Ctx<'a> {
    setup: &'a Setup,
    d: &'a Matrix,
}

impl Ctx<'_> {
    /// `d(a ⊗ u^k b)`.
    fn d(&self, a: &[Scalar], k: i64, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let s = self.setup;
        s.apply_fixed(self.d, &s.pure(a, &s.s_mul(&s.u_pow(k), b)))
    }

    /// `d(a ⊗ u^k)`.
    fn du(&self, a: &[Scalar], k: i64) -> Result<Vec<Scalar>> {
        self.d(a, k, &self.setup.s_one)
    }

    /// `x · u^k` through the module action.
    fn times_u(&self, x: &[Scalar], k: i64) -> Vec<Scalar> {
        self.setup.act(x, &self.setup.u_pow(k))
    }

    fn lin(&self, terms: &[(i64, &[Scalar])]) -> Vec<Scalar> {
        let f = self.setup.field();
        let mut out = self.setup.tensor.zero();
        for (c, v) in terms {
            let c = f.from_int(*c);
            for (o, x) in out.iter_mut().zip(v.iter()) {
                *o = f.mul_add(o, &c, x);
            }
        }
        out
    }

    /// `u^{-m+s} d(a ⊗ u^{-s+m} b) - u^s d(a ⊗ u^{-s} b)`.
    fn x(&self, a: &[Scalar], b: &[Scalar], s: i64) -> Result<Vec<Scalar>> {
        let m = self.setup.m as i64;
        let p = self.times_u(&self.d(a, -s + m, b)?, -m + s);
        let q = self.times_u(&self.d(a, -s, b)?, s);
        Ok(self.lin(&[(1, &p), (-1, &q)]))
    }

    /// `u^{-m+i} d(a ⊗ u^{-i+m}) - d(a ⊗ u^{-i}) u^i`.
    fn y(&self, a: &[Scalar], i: i64) -> Result<Vec<Scalar>> {
        self.x(a, &self.setup.s_one, i)
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.setup.tensor.mul_unchecked(x, y)
    }
}

/// Checks formulas 1-4 and the exchange identities *I-*III for each given
/// derivation of the fixed-point algebra, with `n ∈ {-2, …, 2}`, integer
/// lifts `i ∈ {ε(ī), ε(ī)+m}` and all homogeneous basis elements. `budget`
/// caps the number of instances per identity.
pub fn check_surjectivity_identities(
    setup: &Setup,
    derivations: &[Matrix],
    budget: Option<usize>,
) -> Result<VerificationReport> {
    let m = setup.m as i64;
    let f = setup.field();
    let (ha, hs, _) = setup.graded_tensor_basis();
    let ha: Vec<(i64, Vec<Scalar>)> = ha.into_iter().map(|(i, a)| (i as i64, a)).collect();
    let hs: Vec<(i64, Vec<Scalar>)> = hs.into_iter().map(|(j, b)| (j as i64, b)).collect();
    let mut t1 = Tally::new("formula 1");
    let mut t2 = Tally::new("formula 2");
    let mut t3 = Tally::new("formula 3");
    let mut t4 = Tally::new("formula 4");
    let mut s1 = Tally::new("identity *I");
    let mut s2 = Tally::new("identity *II");
    let mut s3 = Tally::new("identity *III");
    let mut wraps = 0usize;

    for (k, d) in derivations.iter().enumerate() {
        let c = Ctx { setup, d };
        for (ia, (di, a)) in ha.iter().enumerate() {
            for i in [*di, *di + m] {
                let base = c.du(a, -i)?;
                for n in -2i64..=2 {
                    let nm = n * m;
                    let up = c.times_u(&c.du(a, -i + nm)?, -nm);
                    let tag = || format!("d #{k}, a #{ia}, i = {i}, n = {n}");
                    if !t1.full(budget) {
                        let down = c.times_u(&c.du(a, -i - nm)?, nm);
                        t1.record(c.lin(&[(1, &up), (1, &down)]) == c.lin(&[(2, &base)]), tag);
                    }
                    if !t2.full(budget) {
                        let w = c.times_u(&c.du(a, -i - m)?, m);
                        t2.record(c.lin(&[(1, &up), (n, &w)]) == c.lin(&[(1 + n, &base)]), tag);
                    }
                    if !t3.full(budget) {
                        let w = c.times_u(&c.du(a, -i + m)?, -m);
                        t3.record(c.lin(&[(1, &up), (-n, &w)]) == c.lin(&[(1 - n, &base)]), tag);
                    }
                }
            }
        }

        for (ii, (di, ai)) in ha.iter().enumerate() {
            for (ij, (dj, aj)) in ha.iter().enumerate() {
                let prod = setup.a.mul_unchecked(ai, aj);
                if prod.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let wrap = di + dj >= m;
                if !t4.full(budget) {
                    let e = setup.eps(di + dj);
                    let side = |t: i64| -> Result<Vec<Scalar>> {
                        let p = c.times_u(&c.du(&prod, -t + m)?, -m);
                        let q = c.du(&prod, -t)?;
                        Ok(c.times_u(&c.lin(&[(1, &p), (-1, &q)]), t))
                    };
                    let ok = side(e)? == side(di + dj)?;
                    if wrap {
                        wraps += 1;
                    }
                    t4.record(ok, || format!("d #{k}, a_i #{ii}, a_j #{ij}"));
                }
                if !s2.full(budget) {
                    let lhs = c.mul(&setup.pure(ai, &setup.u_pow(-di)), &c.times_u(&c.y(aj, *dj)?, -dj));
                    let rhs = c.mul(&c.times_u(&c.y(ai, *di)?, -di), &setup.pure(aj, &setup.u_pow(-dj)));
                    s2.record(lhs == rhs, || format!("d #{k}, a_i #{ii}, a_j #{ij}"));
                }
            }
        }

        for (ii, (di, ai)) in ha.iter().enumerate() {
            for (ib, (db1, b1)) in hs.iter().enumerate() {
                let s0 = setup.eps(di + db1);
                for s in [s0, s0 + m] {
                    for (ij, (dj, aj)) in ha.iter().enumerate() {
                        for (jb, (db2, b2)) in hs.iter().enumerate() {
                            let t0 = setup.eps(dj + db2);
                            for t in [t0, t0 + m] {
                                let tag = || format!("d #{k}, a_i #{ii}, b1 #{ib}, s = {s}, a_j #{ij}, b2 #{jb}, t = {t}");
                                if !s1.full(budget) {
                                    let lhs = c.mul(&c.x(ai, b1, s)?, &setup.pure(aj, b2));
                                    let rhs = c.mul(&setup.pure(ai, b1), &c.x(aj, b2, t)?);
                                    s1.record(lhs == rhs, tag);
                                }
                                if s == s0 && !s3.full(budget) {
                                    let lhs = c.mul(&setup.pure(ai, &setup.s_one), &c.x(aj, b2, t)?);
                                    let rhs = c.mul(&c.y(ai, *di)?, &setup.pure(aj, b2));
                                    s3.record(lhs == rhs, || format!("d #{k}, a_i #{ii}, a_j #{ij}, b2 #{jb}, t = {t}"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut r = VerificationReport::new("surjectivity-identities");
    for h in &setup.hypotheses {
        r.hypothesis(&h.name, h.pass);
    }
    r.dim("derivations checked", derivations.len());
    for t in [t1, t2, t3, t4, s1, s2, s3] {
        t.finish(&mut r);
    }
    r.dim("formula 4 wrap cases", wraps);
    Ok(r)
}
