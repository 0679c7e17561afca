//! The three regularization morphisms `ζ_⧢`, `ζ_⧺`, `γ_•`, the series
//! `B(y1)` and `B'(y1)`, partial Bell polynomials, the closed form of the
//! generalized Euler constants, and the generating series `Z_⧢`, `Z_⧺`, `Z_γ`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::bases::{radford_word, Product};
use crate::commpoly::{CommPoly, IndexVar};
use crate::constants::{gamma, zeta, zeta_of_word, ConstPoly};
use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, TruncatedSeries};
use crate::words::{words_up_to, Alphabet, Letter, Word};
use crate::{rat, Coeff, Rational};

/// Which regularized value to assign to a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regularization {
    /// `ζ_⧢` on X-words, `ζ_⧢(x0) = ζ_⧢(x1) = 0`.
    Shuffle,
    /// `ζ_⧺` on Y-words, `ζ_⧺(y1) = 0`.
    Stuffle,
    /// `γ_•` on Y-words, `γ_{y1} = γ`.
    Gamma,
}

impl Regularization {
    pub fn alphabet(self) -> Alphabet {
        match self {
            Regularization::Shuffle => Alphabet::X,
            _ => Alphabet::Y,
        }
    }

    pub fn product(self) -> Product {
        match self {
            Regularization::Shuffle => Product::Shuffle,
            _ => Product::Stuffle,
        }
    }
}

impl FromStr for Regularization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shuffle" | "sh" => Ok(Regularization::Shuffle),
            "stuffle" | "st" => Ok(Regularization::Stuffle),
            "gamma" => Ok(Regularization::Gamma),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for Regularization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Regularization::Shuffle => "shuffle",
            Regularization::Stuffle => "stuffle",
            Regularization::Gamma => "gamma",
        };
        write!(f, "{name}")
    }
}

type RegMemo = RwLock<HashMap<(Regularization, Word), ConstPoly>>;

fn memo() -> &'static RegMemo {
    static MEMO: OnceLock<RegMemo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Regularized value of one word.
pub fn regularize_word(kind: Regularization, w: &Word) -> Result<ConstPoly> {
    if !w.is_empty() && w.alphabet() != kind.alphabet() {
        return Err(Error::WrongAlphabet(kind.alphabet().symbol()));
    }
    let key = (kind, w.clone());
    if let Some(v) = memo().read().expect("regularization memo poisoned").get(&key) {
        return Ok(v.clone());
    }
    let q = radford_word(w, kind.product())?;
    let mut failure = None;
    let value: ConstPoly = q.eval(|l| {
        if l.len() == 1 {
            match (kind, l.letter_at(0).index()) {
                (Regularization::Gamma, 1) => return gamma(),
                (Regularization::Shuffle, _) | (_, 1) => return ConstPoly::zero(),
                _ => {}
            }
        }
        zeta_of_word(l).unwrap_or_else(|e| {
            failure = Some(e);
            ConstPoly::zero()
        })
    });
    if let Some(e) = failure {
        return Err(e);
    }
    memo().write().expect("regularization memo poisoned").insert(key, value.clone());
    Ok(value)
}

pub fn zeta_shuffle_reg(w: &Word) -> Result<ConstPoly> {
    regularize_word(Regularization::Shuffle, w)
}

pub fn zeta_stuffle_reg(w: &Word) -> Result<ConstPoly> {
    regularize_word(Regularization::Stuffle, w)
}

pub fn gamma_reg(w: &Word) -> Result<ConstPoly> {
    regularize_word(Regularization::Gamma, w)
}

/// Linear extension of [`regularize_word`] to polynomials.
pub fn regularize_poly(kind: Regularization, p: &NCPoly<Rational>) -> Result<ConstPoly> {
    let mut out = ConstPoly::zero();
    for (w, c) in p.terms() {
        out.add_assign(&regularize_word(kind, w)?.scale(c));
    }
    Ok(out)
}

/// Exponential partial Bell polynomial `b_{n,k}(t1, …, t_{n-k+1})`, by
/// `b_{n,k} = Σ_{i=1}^{n-k+1} C(n-1, i-1) t_i b_{n-i,k-1}`.
pub fn bell_partial(n: usize, k: usize) -> Result<CommPoly<IndexVar>> {
    if k > n || (k == 0 && n > 0) {
        return Err(Error::Precondition(format!("bell_partial needs 1 <= k <= n, got n={n}, k={k}")));
    }
    let mut table: Vec<Vec<CommPoly<IndexVar>>> = vec![vec![CommPoly::zero(); k + 1]; n + 1];
    table[0][0] = CommPoly::one();
    for m in 1..=n {
        for j in 1..=k.min(m) {
            let mut acc = CommPoly::zero();
            for i in 1..=(m - j + 1) {
                let prev = &table[m - i][j - 1];
                if prev.is_zero() {
                    continue;
                }
                let coef = Rational::from_integer(binomial(m - 1, i - 1).into());
                acc.add_assign(&CommPoly::var(IndexVar(i as u32)).mul(prev).scale(&coef));
            }
            table[m][j] = acc;
        }
    }
    Ok(table[n][k].clone())
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n).fold(rat(1, 1), |acc, i| acc * rat(i as i64, 1))
}

/// `γ_{y_k}`: `γ` for `k = 1`, `ζ(k)` otherwise.
fn gamma_letter(k: usize) -> ConstPoly {
    if k == 1 {
        gamma()
    } else {
        zeta(&[k as u32]).expect("k >= 2")
    }
}

fn y1_power(n: usize) -> Word {
    Word::y(&vec![1; n])
}

fn exp_in_y1(coefs: impl Fn(usize) -> ConstPoly, max_w: usize) -> Result<TruncatedSeries<ConstPoly>> {
    let mut arg = NCPoly::zero(Alphabet::Y);
    for k in 1..=max_w {
        arg.add_term(y1_power(k), coefs(k));
    }
    TruncatedSeries::new(arg, max_w).exp()
}

/// `B(y1) = exp(Σ_{k>=1} (-1)^(k+1) γ_{y_k} y1^k / k)`, which is `1/Γ(1 + y1)`:
/// coefficient of `y1` is `γ`, of `y1^2` is `(γ² - ζ(2))/2`.
pub fn b_series(max_w: usize) -> Result<TruncatedSeries<ConstPoly>> {
    exp_in_y1(|k| gamma_letter(k).scale(&rat(if k % 2 == 1 { 1 } else { -1 }, k as i64)), max_w)
}

/// `B'(y1) = exp(-γ y1) B(y1) = exp(Σ_{k>=2} (-1)^(k+1) ζ(k) y1^k / k)`.
pub fn bprime_series(max_w: usize) -> Result<TruncatedSeries<ConstPoly>> {
    exp_in_y1(
        |k| {
            if k == 1 {
                ConstPoly::zero()
            } else {
                gamma_letter(k).scale(&rat(if k % 2 == 1 { 1 } else { -1 }, k as i64))
            }
        },
        max_w,
    )
}

/// `Π_Y`: X-words ending in `x1` (and the empty word) go to their Y-word,
/// the others to 0.
pub fn project_y<C: Coeff>(p: &NCPoly<C>) -> NCPoly<C> {
    let mut out = NCPoly::zero(Alphabet::Y);
    for (w, c) in p.terms() {
        if let Some(y) = w.to_y() {
            out.add_term(y, c.clone());
        }
    }
    out
}

/// `Π_X`: Y-words to their X coding.
pub fn project_x<C: Coeff>(p: &NCPoly<C>) -> NCPoly<C> {
    let mut out = NCPoly::zero(Alphabet::X);
    for (w, c) in p.terms() {
        out.add_term(w.to_x(), c.clone());
    }
    out
}

/// `Σ_w reg(w) w` over all words of weight at most `max_w`.
pub fn build_z(kind: Regularization, max_w: usize) -> Result<TruncatedSeries<ConstPoly>> {
    let mut p = NCPoly::zero(kind.alphabet());
    for w in words_up_to(kind.alphabet(), max_w) {
        p.add_term(w.clone(), regularize_word(kind, &w)?);
    }
    Ok(TruncatedSeries::new(p, max_w))
}

/// `B(y1) Π_Y Z_⧢` (with `prime`: `B'(y1) Π_Y Z_⧢`), truncated at `max_w`.
pub fn bridged_shuffle_series(prime: bool, max_w: usize) -> Result<TruncatedSeries<ConstPoly>> {
    let b = if prime { bprime_series(max_w)? } else { b_series(max_w)? };
    let zy = TruncatedSeries::new(project_y(build_z(Regularization::Shuffle, max_w)?.poly()), max_w);
    b.mul(&zy)
}

/// `Σ_{i=0}^{k} β_i ζ(x0[(-x1)^{k-i} ⧢ u])` for `w = x0 u` convergent, with
/// `β_i = (1/i!) Σ_j b_{i,j}(γ, -ζ(2), 2ζ(3), -6ζ(4), …)`: the
/// generalized Euler constant `γ_{y1^k Π_Y w}` written in convergent values.
pub fn gamma_closed_form(k: usize, w: &Word) -> Result<ConstPoly> {
    if w.alphabet() != Alphabet::X || w.is_empty() || !w.is_convergent() {
        return Err(Error::Divergent(w.to_string()));
    }
    let u = NCPoly::<Rational>::from_word(w.slice(1, w.len()));
    let minus_x1 = NCPoly::term(Word::letter(Letter::x1()), rat(-1, 1));
    let x0 = NCPoly::<Rational>::from_word(Word::letter(Letter::x0()));
    // s_m = (-1)^(m+1) (m-1)! γ_{y_m}
    let s = |m: u32| -> ConstPoly {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        gamma_letter(m as usize).scale(&(factorial(m as usize - 1) * rat(sign, 1)))
    };
    let mut total = ConstPoly::zero();
    for i in 0..=k {
        let beta = if i == 0 {
            ConstPoly::one()
        } else {
            let mut acc = ConstPoly::zero();
            for j in 1..=i {
                acc.add_assign(&bell_partial(i, j)?.substitute(|v| s(v.0)));
            }
            acc.scale(&(rat(1, 1) / factorial(i)))
        };
        let mut power = NCPoly::<Rational>::one(Alphabet::X);
        for _ in 0..(k - i) {
            power = power.concat(&minus_x1)?;
        }
        let inner = x0.concat(&power.shuffle(&u)?)?;
        let mut value = ConstPoly::zero();
        for (v, c) in inner.terms() {
            value.add_assign(&zeta_shuffle_reg(v)?.scale(c));
        }
        total.add_assign(&beta.mul(&value));
    }
    Ok(total)
}
