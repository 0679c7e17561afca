//! Certified arbitrary-precision numerics: polylogarithms at rational points
//! inside the unit disc, polyzetas by splitting the path at 1/2, harmonic
//! sums, π, γ, log 2, and numerical checks of relations and Euler constants.
//!
//! Every [`BigReal`] is a fixed-point value `mant / 2^bits` together with an
//! absolute error bound `err / 2^bits`; all arithmetic propagates the bound.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::commpoly::CommPoly;
use crate::constants::{ConstPoly, ConstSymbol};
use crate::error::{Error, Result};
use crate::regularize::zeta_shuffle_reg;
use crate::relations::Relation;
use crate::words::{Alphabet, Composition, Letter, Word};
use crate::Rational;

/// Extra bits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    bits: u32,
    /// Error bound in units of `2^-bits`; never negative.
    err: BigInt,
}

fn ceil_shr(x: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    let d = BigInt::one() << k;
    x.div_ceil(&d)
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal { mant: BigInt::zero(), bits, err: BigInt::zero() }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        BigReal { mant: BigInt::from(n) << bits, bits, err: BigInt::zero() }
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        let scaled = r.numer() << bits;
        let (q, rem) = scaled.div_mod_floor(r.denom());
        let err = if rem.is_zero() { BigInt::zero() } else { BigInt::one() };
        BigReal { mant: q, bits, err }
    }

    /// A float with an absolute error bound.
    pub fn from_f64(v: f64, err: f64, bits: u32) -> Self {
        let scaled = |x: f64| {
            Rational::from_float(x)
                .map(|r| (r * Rational::from_integer(BigInt::one() << bits)).ceil().to_integer())
                .unwrap_or_default()
        };
        let mant = scaled(v);
        let e = scaled(err.abs()) + 1;
        BigReal { mant, bits, err: e }
    }

    fn raw(mant: BigInt, bits: u32, err: BigInt) -> Self {
        BigReal { mant, bits, err }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn to_f64(&self) -> f64 {
        scaled_to_f64(&self.mant, self.bits)
    }

    /// Absolute error bound.
    pub fn error_bound(&self) -> f64 {
        scaled_to_f64(&self.err, self.bits)
    }

    /// As an exact rational (the midpoint, ignoring the bound).
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    /// Changes the fixed-point scale, adding one unit of error when bits are dropped.
    pub fn with_bits(&self, bits: u32) -> Self {
        if bits >= self.bits {
            let k = bits - self.bits;
            BigReal::raw(&self.mant << k, bits, &self.err << k)
        } else {
            let k = self.bits - bits;
            BigReal::raw(&self.mant >> k, bits, ceil_shr(&self.err, k) + 1)
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let bits = self.bits.max(other.bits);
        (self.with_bits(bits), other.with_bits(bits))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        BigReal::raw(a.mant + b.mant, a.bits, a.err + b.err)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        BigReal::raw(a.mant - b.mant, a.bits, a.err + b.err)
    }

    pub fn neg(&self) -> Self {
        BigReal::raw(-&self.mant, self.bits, self.err.clone())
    }

    pub fn abs(&self) -> Self {
        BigReal::raw(self.mant.abs(), self.bits, self.err.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let mant = (&a.mant * &b.mant) >> bits;
        let cross = a.mant.abs() * &b.err + b.mant.abs() * &a.err + &a.err * &b.err;
        BigReal::raw(mant, bits, ceil_shr(&cross, bits) + 1)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        BigReal::raw(&self.mant * k, self.bits, &self.err * k.unsigned_abs())
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let kk = BigInt::from(k);
        let mant = self.mant.div_floor(&kk);
        BigReal::raw(mant, self.bits, self.err.div_ceil(&kk.abs()) + 1)
    }

    /// Quotient; `None` when the divisor's interval contains 0.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let lower = b.mant.abs() - &b.err;
        if !lower.is_positive() {
            return None;
        }
        let mant = (&a.mant << bits).div_floor(&b.mant);
        // |a/b - a'/b'| <= (ea + |q| eb) / (|b| - eb)
        let numer = (&a.err << bits) + mant.abs() * &b.err;
        let err = numer.div_ceil(&lower) + 1;
        Some(BigReal::raw(mant, bits, err))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = BigReal::from_int(1, self.bits);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Upper bound on `|self|`.
    pub fn magnitude_bound(&self) -> f64 {
        scaled_to_f64(&(self.mant.abs() + &self.err), self.bits)
    }

    /// Whether the intervals of `self` and `other` intersect.
    pub fn overlaps(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        (&a.mant - &b.mant).abs() <= &a.err + &b.err
    }

    /// Whether `|self - other|` is certainly below `tol`.
    pub fn within(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).magnitude_bound() < tol
    }

    /// Truncated decimal expansion with `digits` digits after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.mant.is_negative();
        let scaled = (self.mant.abs() * BigInt::from(10u32).pow(digits as u32)) >> self.bits;
        let text = scaled.to_string();
        let text = if text.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - text.len()), text) } else { text };
        let (int, frac) = text.split_at(text.len() - digits);
        let sign = if negative && scaled.sign() != Sign::NoSign { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

fn scaled_to_f64(x: &BigInt, bits: u32) -> f64 {
    let len = x.bits() as i64;
    let drop = (len - 60).max(0) as u32;
    let head = (x >> drop).to_f64().unwrap_or(0.0);
    head * 2f64.powi(drop as i32 - bits as i32)
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.bits.saturating_sub(GUARD_BITS)) as f64 / std::f64::consts::LOG2_10) as usize);
        write!(f, "{} ± {:.1e}", self.to_decimal(digits), self.error_bound())
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.1e}", self.to_decimal(20), self.error_bound())
    }
}

/// Working precision and shared caches of constants and polylog values.
pub struct EvalContext {
    digits: u32,
    bits: u32,
    tolerance: f64,
    li_half: RwLock<HashMap<Word, BigReal>>,
    zeta: RwLock<HashMap<Word, BigReal>>,
    pi: OnceLock<BigReal>,
    gamma: OnceLock<BigReal>,
    ln2: OnceLock<BigReal>,
}

impl EvalContext {
    pub fn new(digits: u32) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
        EvalContext {
            digits,
            bits,
            tolerance: 10f64.powi(-(digits as i32 - 10).max(1)),
            li_half: RwLock::default(),
            zeta: RwLock::default(),
            pi: OnceLock::new(),
            gamma: OnceLock::new(),
            ln2: OnceLock::new(),
        }
    }

    /// Overrides the acceptance threshold used by [`verify_relation`].
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

impl fmt::Debug for EvalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvalContext").field("digits", &self.digits).field("bits", &self.bits).finish()
    }
}

/// `Li_w(z) = Σ a_n(w) z^n` with `a_n(x0 w') = a_n(w')/n`,
/// `a_n(x1 w') = (1/n) Σ_{m<n} a_m(w')`, at `bits` of fixed point.
fn li_fixed(w: &Word, z: &Rational, bits: u32) -> Result<BigReal> {
    if w.alphabet() != Alphabet::X {
        return Err(Error::WrongAlphabet(w.alphabet().symbol()));
    }
    let half = crate::rat(1, 2);
    if !z.is_positive() || *z > half {
        return Err(Error::Precondition(format!("polylogarithm argument {z} outside (0, 1/2]")));
    }
    if w.is_empty() {
        return Ok(BigReal::from_int(1, bits));
    }
    if w.last() == Some(Letter::x0()) {
        return Err(Error::Precondition(format!("{w} ends in x0 and needs log z")));
    }
    let zf = z.to_f64().unwrap_or(0.5);
    // a_n <= 1, so the tail after N terms is at most z^(N+1)/(1-z) <= 2 z^(N+1).
    let terms = ((bits + 2) as f64 / -zf.log2()).ceil() as usize + 1;
    let one = BigInt::one() << bits;
    let mut coeffs = vec![BigInt::zero(); terms + 1];
    coeffs[0] = one.clone();
    let mut level_err: u64 = 0;
    for letter in w.letters().rev() {
        if letter == Letter::x0() {
            coeffs[0] = BigInt::zero();
            for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
                *c = c.div_floor(&BigInt::from(n));
            }
        } else {
            let mut prefix = BigInt::zero();
            let mut next = vec![BigInt::zero(); terms + 1];
            for n in 1..=terms {
                prefix += &coeffs[n - 1];
                next[n] = prefix.div_floor(&BigInt::from(n));
            }
            coeffs = next;
        }
        level_err += 1;
    }
    let (p, q) = (z.numer().clone(), z.denom().clone());
    let mut zpow = one.clone();
    let mut sum = BigInt::zero();
    for c in coeffs.iter().skip(1) {
        zpow = (&zpow * &p).div_floor(&q);
        sum += (c * &zpow) >> bits;
    }
    // Per term: zpow off by <= 2 ulps, coefficient by <= level_err ulps, one
    // rounding; coefficient errors are damped by z^n <= 2^-n.
    let rounding = BigInt::from(3 * terms as u64 + 2 * level_err + 4);
    Ok(BigReal::raw(sum, bits, rounding))
}

/// Power series value of `Li_w(z)` for rational `0 < z <= 1/2` and words
/// ending in `x1` (or empty), with a certified geometric tail bound.
pub fn li_taylor(w: &Word, z: &Rational, ctx: &EvalContext) -> Result<BigReal> {
    if *z == crate::rat(1, 2) {
        if let Some(v) = ctx.li_half.read().expect("cache lock").get(w) {
            return Ok(v.clone());
        }
        let v = li_fixed(w, z, ctx.bits)?;
        ctx.li_half.write().expect("cache lock").insert(w.clone(), v.clone());
        return Ok(v);
    }
    li_fixed(w, z, ctx.bits)
}

/// `ζ(w)` for a convergent X-word: `Σ_{w = uv} Li_{û}(1/2) Li_v(1/2)`, where
/// `û` mirrors `u` and swaps `x0 <-> x1` (the path `0 -> 1` split at 1/2,
/// its second half pulled back by `z -> 1 - z`).
pub fn mzv_word(w: &Word, ctx: &EvalContext) -> Result<BigReal> {
    let w = if w.alphabet() == Alphabet::Y { w.to_x() } else { w.clone() };
    if !w.is_convergent() {
        return Err(Error::Divergent(w.to_string()));
    }
    if let Some(v) = ctx.zeta.read().expect("cache lock").get(&w) {
        return Ok(v.clone());
    }
    let half = crate::rat(1, 2);
    let mut total = BigReal::zero(ctx.bits);
    for cut in 0..=w.len() {
        let left = w.slice(0, cut);
        let right = w.slice(cut, w.len());
        let swapped: Vec<Letter> =
            left.letters().rev().map(|l| if l == Letter::x0() { Letter::x1() } else { Letter::x0() }).collect();
        let mirrored = Word::from_letters(Alphabet::X, &swapped)?;
        let a = li_taylor(&mirrored, &half, ctx)?;
        let b = li_taylor(&right, &half, ctx)?;
        total = total.add(&a.mul(&b));
    }
    ctx.zeta.write().expect("cache lock").insert(w, total.clone());
    Ok(total)
}

/// `ζ(r1, …, rk)` for `r1 >= 2`.
pub fn mzv(c: &Composition, ctx: &EvalContext) -> Result<BigReal> {
    if !c.is_convergent() {
        return Err(Error::Divergent(c.to_string()));
    }
    mzv_word(&c.to_x_word(), ctx)
}

/// `atan(1/k)` at `bits` of fixed point.
fn atan_inv(k: i64, bits: u32) -> BigReal {
    let k2 = BigInt::from(k * k);
    let mut power = (BigInt::one() << bits).div_floor(&BigInt::from(k));
    let mut sum = BigInt::zero();
    let mut j: i64 = 0;
    while !power.is_zero() {
        let term = power.div_floor(&BigInt::from(2 * j + 1));
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power = power.div_floor(&k2);
        j += 1;
    }
    BigReal::raw(sum, bits, BigInt::from(3 * j + 3))
}

fn pi_at(bits: u32) -> BigReal {
    let a = atan_inv(5, bits).mul_int(16);
    let b = atan_inv(239, bits).mul_int(4);
    a.sub(&b)
}

/// π by Machin's formula.
pub fn pi_const(ctx: &EvalContext) -> BigReal {
    ctx.pi.get_or_init(|| pi_at(ctx.bits)).clone()
}

/// `log 2 = Li_1(1/2)`.
pub fn ln2(ctx: &EvalContext) -> BigReal {
    ctx.ln2
        .get_or_init(|| li_fixed(&Word::letter(Letter::x1()), &crate::rat(1, 2), ctx.bits).expect("x1 at 1/2"))
        .clone()
}

fn gamma_at(bits: u32) -> BigReal {
    // Brent–McMillan with n = 2^m: |γ - A/B| < π e^{-4n}.
    let need = ((bits + 2) as f64 * std::f64::consts::LN_2 / 4.0).ceil() as u64;
    let m = 64 - (need.max(1) - 1).leading_zeros();
    let n: u64 = 1 << m;
    let work = bits + (2.0 * n as f64 * std::f64::consts::LOG2_E).ceil() as u32 + 32;
    let ln_n = li_fixed(&Word::letter(Letter::x1()), &crate::rat(1, 2), work).expect("x1 at 1/2").mul_int(m as i64);
    let n2 = BigInt::from(n * n);
    let mut b = BigInt::one() << work;
    let mut a = -ln_n.mant.clone();
    let mut eb = BigInt::zero();
    let mut ea = ln_n.err.clone();
    let (mut sa, mut sb) = (a.clone(), b.clone());
    let (mut esa, mut esb) = (ea.clone(), eb.clone());
    let mut k: u64 = 1;
    loop {
        let kk = BigInt::from(k);
        b = (&b * &n2).div_floor(&(&kk * &kk));
        eb = (&eb * &n2).div_ceil(&(&kk * &kk)) + 1;
        a = ((&a * &n2).div_floor(&kk) + &b).div_floor(&kk);
        ea = ((&ea * &n2).div_ceil(&kk) + BigInt::one() + &eb).div_ceil(&kk) + 1;
        sa += &a;
        sb += &b;
        esa += &ea;
        esb += &eb;
        if k > 2 * n && a.is_zero() && b.is_zero() {
            break;
        }
        k += 1;
    }
    // Terms left out decay by at least 1/4 each step.
    let tail = (&ea + &eb + 1u32) * 4u32;
    let quotient = BigReal::raw(sa, work, esa + &tail)
        .div(&BigReal::raw(sb, work, esb + &tail))
        .expect("denominator is at least 1");
    let out = quotient.with_bits(bits);
    BigReal::raw(out.mant, bits, out.err + 1)
}

/// Euler's constant γ.
pub fn euler_gamma(ctx: &EvalContext) -> BigReal {
    ctx.gamma.get_or_init(|| gamma_at(ctx.bits)).clone()
}

/// Value of a constant symbol as a complex number `(re, im)`; `iπ` is `i·π`.
fn symbol_value(s: &ConstSymbol, ctx: &EvalContext) -> Result<(BigReal, BigReal)> {
    let zero = BigReal::zero(ctx.bits);
    match s {
        ConstSymbol::IPi => Ok((zero, pi_const(ctx))),
        ConstSymbol::Gamma => Ok((euler_gamma(ctx), zero)),
        ConstSymbol::Zeta(w) => Ok((mzv_word(w, ctx)?, zero)),
    }
}

fn complex_mul(a: &(BigReal, BigReal), b: &(BigReal, BigReal)) -> (BigReal, BigReal) {
    (a.0.mul(&b.0).sub(&a.1.mul(&b.1)), a.0.mul(&b.1).add(&a.1.mul(&b.0)))
}

/// Numerical value `(re, im)` of a constant polynomial.
pub fn eval_numeric(p: &ConstPoly, ctx: &EvalContext) -> Result<(BigReal, BigReal)> {
    let mut values: HashMap<ConstSymbol, (BigReal, BigReal)> = HashMap::new();
    for s in p.variables() {
        let v = symbol_value(&s, ctx)?;
        values.insert(s, v);
    }
    let mut re = BigReal::zero(ctx.bits);
    let mut im = BigReal::zero(ctx.bits);
    for (m, c) in p.terms() {
        let mut term = (BigReal::from_int(1, ctx.bits), BigReal::zero(ctx.bits));
        for (s, e) in m.factors() {
            for _ in 0..*e {
                term = complex_mul(&term, &values[s]);
            }
        }
        let c = BigReal::from_rational(c, ctx.bits);
        re = re.add(&term.0.mul(&c));
        im = im.add(&term.1.mul(&c));
    }
    Ok((re, im))
}

/// `(passes, residual)` with residual `|re| + |im|` of the relation's value;
/// passes when the residual is certainly below the context tolerance.
pub fn verify_relation(r: &Relation, ctx: &EvalContext) -> Result<(bool, BigReal)> {
    verify_poly(&r.poly, ctx)
}

pub fn verify_poly(p: &ConstPoly, ctx: &EvalContext) -> Result<(bool, BigReal)> {
    let (re, im) = eval_numeric(p, ctx)?;
    let residual = re.abs().add(&im.abs());
    Ok((residual.magnitude_bound() < ctx.tolerance, residual))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    Exact,
    Float,
}

impl std::str::FromStr for SumMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SumMode::Exact),
            "float" => Ok(SumMode::Float),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HarmonicValue {
    Exact(Rational),
    Float(BigReal),
}

impl HarmonicValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            HarmonicValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            HarmonicValue::Float(b) => b.to_f64(),
        }
    }
}

/// `H_{r1,…,rk}(N) = Σ_{N >= n1 > … > nk >= 1} n1^{-r1} … nk^{-rk}` by nested
/// prefix sums in `O(k N)`.
pub fn harmonic_sum(c: &Composition, n: u64, mode: SumMode) -> HarmonicValue {
    match mode {
        SumMode::Exact => HarmonicValue::Exact(harmonic_exact(c, n)),
        SumMode::Float => {
            let v = harmonic_float(c.parts(), n);
            // Compensated sums: a few ulps per addition.
            let err = (n as f64 + 1.0) * (c.depth() as f64 + 1.0) * 4.0 * f64::EPSILON * v.abs().max(1.0);
            HarmonicValue::Float(BigReal::from_f64(v, err, 80))
        }
    }
}

fn harmonic_exact(c: &Composition, n: u64) -> Rational {
    let parts = c.parts();
    let k = parts.len();
    // partial[j] = H_{r_{j+1}, …, r_k}(current n); partial[k] = 1.
    let mut partial = vec![Rational::zero(); k + 1];
    partial[k] = Rational::one();
    for m in 1..=n {
        let mb = BigInt::from(m);
        for j in 0..k {
            let denom = mb.pow(parts[j]);
            let inc = &partial[j + 1] / Rational::from_integer(denom);
            partial[j] += inc;
        }
    }
    partial[0].clone()
}

/// Nested sums in compensated double-precision arithmetic.
pub fn harmonic_float(parts: &[u32], n: u64) -> f64 {
    let k = parts.len();
    let mut sum = vec![0.0f64; k + 1];
    let mut comp = vec![0.0f64; k + 1];
    sum[k] = 1.0;
    for m in 1..=n {
        let mf = m as f64;
        for j in 0..k {
            let inc = (sum[j + 1] + comp[j + 1]) / mf.powi(parts[j] as i32);
            let t = sum[j] + inc;
            if sum[j].abs() >= inc.abs() {
                comp[j] += (sum[j] - t) + inc;
            } else {
                comp[j] += (inc - t) + sum[j];
            }
            sum[j] = t;
        }
    }
    sum[0] + comp[0]
}

/// `H_w(N)` minus its divergent part on the scale `log^b N`: writing
/// `w = y1^k v` (v not starting with y1), subtracts
/// `Σ_{i=1}^{k} D_i ζ_⧢(Π_X(y1^{k-i} v))` where `D_i` is the difference of the
/// `z^i` coefficients of `exp(H_1 z + R)` and `exp((H_1 - log N) z + R)`,
/// `R = Σ_{j>=2} (-1)^{j+1} H_j(N) z^j / j`. The result approximates the
/// generalized Euler constant `γ_w` up to `O(log^k N / N)`; the returned
/// bound covers only floating-point rounding.
pub fn finite_part_estimate(w: &Word, n: u64, ctx: &EvalContext) -> Result<BigReal> {
    if w.alphabet() != Alphabet::Y {
        return Err(Error::WrongAlphabet(w.alphabet().symbol()));
    }
    if n < 1000 {
        return Err(Error::Precondition(format!("N = {n} is below 1000")));
    }
    let k = w.letters().take_while(|l| l.index() == 1).count();
    let v = w.slice(k, w.len());
    let h: Vec<f64> = (1..=k.max(1)).map(|j| harmonic_float(&[j as u32], n)).collect();
    let hw = harmonic_float(&w.indices(), n);
    let c = h[0] - (n as f64).ln();
    let with = exp_coeffs(h[0], &h, k);
    let without = exp_coeffs(c, &h, k);
    let mut total = hw;
    for i in 1..=k {
        let d = with[i] - without[i];
        let mut rest = Word::y(&vec![1; k - i]);
        rest = rest.concat(&v);
        let value = zeta_shuffle_reg(&rest.to_x())?;
        let (re, _) = eval_numeric(&value, ctx)?;
        total -= d * re.to_f64();
    }
    let err = 64.0 * f64::EPSILON * (n as f64) * total.abs().max(1.0);
    Ok(BigReal::from_f64(total, err, ctx.bits))
}

/// Coefficients `[z^0..z^k]` of `exp(first z + Σ_{j>=2} (-1)^{j+1} h_j z^j / j)`.
fn exp_coeffs(first: f64, h: &[f64], k: usize) -> Vec<f64> {
    let mut arg = vec![0.0; k + 1];
    if k >= 1 {
        arg[1] = first;
    }
    for j in 2..=k {
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        arg[j] = sign * h[j - 1] / j as f64;
    }
    // f' = a' f for f = exp(a).
    let mut out = vec![0.0; k + 1];
    out[0] = 1.0;
    for m in 1..=k {
        let mut s = 0.0;
        for j in 1..=m {
            s += j as f64 * arg[j] * out[m - j];
        }
        out[m] = s / m as f64;
    }
    out
}

/// Numeric value of a constant polynomial with no `iπ`, as a real.
pub fn eval_real(p: &ConstPoly, ctx: &EvalContext) -> Result<BigReal> {
    let (re, im) = eval_numeric(p, ctx)?;
    if im.magnitude_bound() > ctx.tolerance {
        return Err(Error::Precondition(format!("{p} has an imaginary part")));
    }
    Ok(re)
}

/// Substitutes numeric values into a polynomial with real variables.
pub fn eval_commpoly<V: crate::commpoly::Variable + Ord + Clone>(
    p: &CommPoly<V>,
    bits: u32,
    mut value: impl FnMut(&V) -> BigReal,
) -> BigReal {
    let mut out = BigReal::zero(bits);
    for (m, c) in p.terms() {
        let mut term = BigReal::from_rational(c, bits);
        for (v, e) in m.factors() {
            term = term.mul(&value(v).pow(*e));
        }
        out = out.add(&term);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::parse_const_poly;
    use crate::rat;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn polylog_examples() {
        let ctx = EvalContext::new(40);
        let half = rat(1, 2);
        let l1 = li_taylor(&Word::x(&[1]), &half, &ctx).unwrap();
        assert!(l1.to_decimal(10).starts_with("0.6931471805"));
        // Direct oracle: Σ 2^-n / n^2 over 200 terms.
        let mut direct = 0.0;
        for n in 1..200 {
            direct += 0.5f64.powi(n) / (n * n) as f64;
        }
        let l2 = li_taylor(&Word::x(&[0, 1]), &half, &ctx).unwrap();
        assert!((l2.to_f64() - direct).abs() < 1e-15);
        assert!(l2.to_decimal(10).starts_with("0.5822405264"));
        // Li_{2,1}(1/2) vs the double sum Σ_{n>m} 2^-n / (n^2 m).
        let mut double = 0.0;
        let mut inner = 0.0;
        for n in 1..500 {
            double += 0.5f64.powi(n) / (n * n) as f64 * inner;
            inner += 1.0 / n as f64;
        }
        let l21 = li_taylor(&Word::x(&[0, 1, 1]), &half, &ctx).unwrap();
        assert!((l21.to_f64() - double).abs() < 1e-15);
        assert!(li_taylor(&Word::x(&[1, 0]), &half, &ctx).is_err());
        assert!(li_taylor(&Word::x(&[1]), &rat(3, 4), &ctx).is_err());
        assert!(l21.error_bound() < 1e-45);
    }

    #[test]
    fn constants() {
        let ctx = EvalContext::new(20);
        assert_eq!(euler_gamma(&ctx).to_decimal(20), "0.57721566490153286060");
        assert!(pi_const(&ctx).to_decimal(19).starts_with("3.1415926535897932384"));
        let high = EvalContext::new(40);
        let g20 = euler_gamma(&ctx);
        let g40 = euler_gamma(&high);
        assert!(g20.overlaps(&g40));
        assert!(g20.within(&g40, 1e-20));
        assert!(pi_const(&ctx).overlaps(&pi_const(&high)));
        // π against an independent arctangent oracle: 4·atan(1) via Euler's series.
        let pi = pi_const(&high).to_f64();
        assert!((pi - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn zeta_values() {
        let ctx = EvalContext::new(40);
        let z2 = mzv(&comp("2"), &ctx).unwrap();
        let pi2 = pi_const(&ctx).pow(2).div_int(6);
        assert!(z2.within(&pi2, 1e-38));
        let z3 = mzv(&comp("3"), &ctx).unwrap();
        assert!(z3.to_decimal(10).starts_with("1.2020569031"));
        let z21 = mzv(&comp("2,1"), &ctx).unwrap();
        assert!(z21.overlaps(&z3));
        assert!(mzv(&comp("1,2"), &ctx).is_err());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_sum(&comp("1"), 3, SumMode::Exact), HarmonicValue::Exact(rat(11, 6)));
        assert_eq!(harmonic_sum(&comp("1,1"), 3, SumMode::Exact), HarmonicValue::Exact(rat(1, 1)));
        assert_eq!(harmonic_sum(&comp("2"), 1, SumMode::Exact), HarmonicValue::Exact(rat(1, 1)));
        let exact = harmonic_sum(&comp("2,1"), 50, SumMode::Exact).to_f64();
        let float = harmonic_sum(&comp("2,1"), 50, SumMode::Float).to_f64();
        assert!((exact - float).abs() < 1e-13);
    }

    #[test]
    fn relation_verification() {
        let ctx = EvalContext::new(40);
        let (ok, res) = verify_poly(&parse_const_poly("z(3) - z(2,1)").unwrap(), &ctx).unwrap();
        assert!(ok && res.magnitude_bound() < 1e-30);
        let (ok, _) = verify_poly(&parse_const_poly("z(2) + 1/6·ipi^2").unwrap(), &ctx).unwrap();
        assert!(ok);
        let (ok, res) = verify_poly(&parse_const_poly("z(2) - z(3)").unwrap(), &ctx).unwrap();
        assert!(!ok);
        assert!((res.to_f64() - 0.4428).abs() < 1e-3, "{res:?}");
    }

    #[test]
    fn finite_parts_match_euler_constants() {
        let ctx = EvalContext::new(30);
        let cases = [("y1", 1_000_000u64, 1e-6), ("y1y1", 100_000, 1e-4), ("y1y2", 1_000_000, 1e-4)];
        for (w, n, tol) in cases {
            let w: Word = w.parse().unwrap();
            let estimate = finite_part_estimate(&w, n, &ctx).unwrap().to_f64();
            let symbolic = crate::regularize::gamma_reg(&w).unwrap();
            let exact = eval_real(&symbolic, &ctx).unwrap().to_f64();
            assert!((estimate - exact).abs() < tol, "{w}: {estimate} vs {exact}");
        }
        let y1y2 = eval_real(&parse_const_poly("gamma·z(2) - 2·z(3)").unwrap(), &ctx).unwrap().to_f64();
        let est = finite_part_estimate(&"y1y2".parse().unwrap(), 1_000_000, &ctx).unwrap().to_f64();
        assert!((est - y1y2).abs() < 1e-4);
        assert!(finite_part_estimate(&"y1".parse().unwrap(), 10, &ctx).is_err());
    }

    #[test]
    fn decimal_formatting() {
        let x = BigReal::from_rational(&rat(-1, 8), 10);
        assert_eq!(x.to_decimal(3), "-0.125");
        assert_eq!(BigReal::from_int(3, 4).to_decimal(0), "3");
        assert_eq!(BigReal::from_f64(0.25, 0.0, 16).to_decimal(2), "0.25");
    }
}
