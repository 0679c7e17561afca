//! Words over the two alphabets `X = {x0, x1}` (ordered `x0 < x1`) and
//! `Y = {y1, y2, ...}` (ordered `y1 > y2 > ...`), compositions, Lyndon words,
//! the `Y <-> X` coding and the letter substitutions used by the hexagon and
//! duality relations.
//!
//! Letters are stored as order keys so that the derived `Ord` on a word is
//! the lexicographic order for its alphabet: an `x_i` letter is stored as
//! `i`, a `y_i` letter as `255 - i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ncpoly::NCPoly;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    X,
    Y,
}

impl Alphabet {
    pub fn symbol(self) -> char {
        match self {
            Alphabet::X => 'x',
            Alphabet::Y => 'y',
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol().to_ascii_uppercase())
    }
}

impl FromStr for Alphabet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Alphabet::X),
            "Y" | "y" => Ok(Alphabet::Y),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

pub const MAX_Y_INDEX: u32 = 254;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    alphabet: Alphabet,
    key: u8,
}

impl Letter {
    pub fn new(alphabet: Alphabet, index: u32) -> Result<Self> {
        let key = match alphabet {
            Alphabet::X if index <= 1 => index as u8,
            Alphabet::Y if (1..=MAX_Y_INDEX).contains(&index) => (255 - index) as u8,
            _ => {
                return Err(Error::LetterOutOfRange {
                    alphabet: alphabet.symbol(),
                    index,
                })
            }
        };
        Ok(Letter { alphabet, key })
    }

    pub fn x0() -> Self {
        Letter { alphabet: Alphabet::X, key: 0 }
    }

    pub fn x1() -> Self {
        Letter { alphabet: Alphabet::X, key: 1 }
    }

    pub fn y(index: u32) -> Self {
        Letter::new(Alphabet::Y, index).expect("y index in range")
    }

    fn from_key(alphabet: Alphabet, key: u8) -> Self {
        Letter { alphabet, key }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn index(&self) -> u32 {
        match self.alphabet {
            Alphabet::X => self.key as u32,
            Alphabet::Y => 255 - self.key as u32,
        }
    }

    pub fn weight(&self) -> usize {
        match self.alphabet {
            Alphabet::X => 1,
            Alphabet::Y => self.index() as usize,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.alphabet.symbol(), self.index())
    }
}

type Keys = SmallVec<[u8; 14]>;

/// A word over one alphabet. Ordering is lexicographic for that alphabet's
/// letter order, with a proper prefix smaller than the longer word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    alphabet: Alphabet,
    keys: Keys,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, keys: Keys::new() }
    }

    pub fn from_letters(alphabet: Alphabet, letters: &[Letter]) -> Result<Self> {
        let mut keys = Keys::with_capacity(letters.len());
        for l in letters {
            if l.alphabet != alphabet {
                return Err(Error::MixedAlphabets);
            }
            keys.push(l.key);
        }
        Ok(Word { alphabet, keys })
    }

    /// Builds a word from letter indices (`0/1` for X, `>= 1` for Y).
    pub fn from_indices(alphabet: Alphabet, indices: &[u32]) -> Result<Self> {
        let mut keys = Keys::with_capacity(indices.len());
        for &i in indices {
            keys.push(Letter::new(alphabet, i)?.key);
        }
        Ok(Word { alphabet, keys })
    }

    pub fn x(indices: &[u32]) -> Self {
        Word::from_indices(Alphabet::X, indices).expect("valid X indices")
    }

    pub fn y(indices: &[u32]) -> Self {
        Word::from_indices(Alphabet::Y, indices).expect("valid Y indices")
    }

    pub fn letter(l: Letter) -> Self {
        let mut keys = Keys::new();
        keys.push(l.key);
        Word { alphabet: l.alphabet, keys }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        let a = self.alphabet;
        self.keys.iter().map(move |&k| Letter::from_key(a, k))
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        Letter::from_key(self.alphabet, self.keys[i])
    }

    pub fn first(&self) -> Option<Letter> {
        self.keys.first().map(|&k| Letter::from_key(self.alphabet, k))
    }

    pub fn last(&self) -> Option<Letter> {
        self.keys.last().map(|&k| Letter::from_key(self.alphabet, k))
    }

    pub fn indices(&self) -> Vec<u32> {
        self.letters().map(|l| l.index()).collect()
    }

    /// Length over X, sum of indices over Y.
    pub fn weight(&self) -> usize {
        match self.alphabet {
            Alphabet::X => self.keys.len(),
            Alphabet::Y => self.keys.iter().map(|&k| 255 - k as usize).sum(),
        }
    }

    /// Number of occurrences of `l`.
    pub fn count(&self, l: Letter) -> usize {
        if l.alphabet != self.alphabet {
            return 0;
        }
        self.keys.iter().filter(|&&k| k == l.key).count()
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            alphabet: self.alphabet,
            keys: Keys::from_slice(&self.keys[start..end]),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert!(self.alphabet == other.alphabet || self.is_empty() || other.is_empty());
        let alphabet = if self.is_empty() { other.alphabet } else { self.alphabet };
        let mut keys = self.keys.clone();
        keys.extend_from_slice(&other.keys);
        Word { alphabet, keys }
    }

    pub fn push(&mut self, l: Letter) {
        debug_assert_eq!(l.alphabet, self.alphabet);
        self.keys.push(l.key);
    }

    pub fn prepend(&self, l: Letter) -> Word {
        let mut keys = Keys::with_capacity(self.keys.len() + 1);
        keys.push(l.key);
        keys.extend_from_slice(&self.keys);
        Word { alphabet: self.alphabet, keys }
    }

    pub fn reversed(&self) -> Word {
        let mut keys = self.keys.clone();
        keys.reverse();
        Word { alphabet: self.alphabet, keys }
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        prefix.is_empty() || (prefix.alphabet == self.alphabet && self.keys.starts_with(&prefix.keys))
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        suffix.is_empty() || (suffix.alphabet == self.alphabet && self.keys.ends_with(&suffix.keys))
    }

    /// Convergent words: `x0 X* x1` over X, words not starting with `y1` over Y.
    /// The empty word counts as convergent.
    pub fn is_convergent(&self) -> bool {
        match self.alphabet {
            Alphabet::X => {
                self.is_empty()
                    || (self.first() == Some(Letter::x0()) && self.last() == Some(Letter::x1()))
            }
            Alphabet::Y => self.first().is_none_or(|l| l.index() != 1),
        }
    }

    /// Strictly smaller than every proper nonempty suffix.
    pub fn is_lyndon(&self) -> bool {
        let n = self.keys.len();
        n > 0 && (1..n).all(|i| self.keys[..] < self.keys[i..])
    }

    /// Nonincreasing factorization into Lyndon words (Duval).
    pub fn lyndon_factorization(&self) -> Vec<Word> {
        let s = &self.keys;
        let n = s.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            let (mut j, mut k) = (i + 1, i);
            while j < n && s[k] <= s[j] {
                if s[k] < s[j] {
                    k = i;
                } else {
                    k += 1;
                }
                j += 1;
            }
            while i <= k {
                out.push(self.slice(i, i + j - k));
                i += j - k;
            }
        }
        out
    }

    /// `(u, v)` with `self = uv` and `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Result<(Word, Word)> {
        if !self.is_lyndon() {
            return Err(Error::NotLyndon(self.to_string()));
        }
        if self.len() < 2 {
            return Err(Error::NoFactorization(self.to_string()));
        }
        let split = (1..self.len())
            .find(|&i| self.slice(i, self.len()).is_lyndon())
            .expect("a single-letter suffix is Lyndon");
        Ok((self.slice(0, split), self.slice(split, self.len())))
    }

    /// Y -> X coding `y_s -> x0^(s-1) x1`; X words ending in `x1` (or empty)
    /// map back to Y; other X words have no image.
    pub fn transcode(&self) -> Option<Word> {
        match self.alphabet {
            Alphabet::Y => {
                let mut out = Word::empty(Alphabet::X);
                for l in self.letters() {
                    for _ in 1..l.index() {
                        out.keys.push(0);
                    }
                    out.keys.push(1);
                }
                Some(out)
            }
            Alphabet::X => {
                if self.last() == Some(Letter::x0()) {
                    return None;
                }
                let mut out = Word::empty(Alphabet::Y);
                let mut run = 1u32;
                for &k in self.keys.iter() {
                    if k == 0 {
                        run += 1;
                    } else {
                        // Weight guard keeps the run inside u8 keys.
                        out.keys.push((255 - run.min(MAX_Y_INDEX)) as u8);
                        run = 1;
                    }
                }
                Some(out)
            }
        }
    }

    /// Over X: the Y image (see [`Word::transcode`]). Over Y: identity.
    pub fn to_y(&self) -> Option<Word> {
        match self.alphabet {
            Alphabet::X => self.transcode(),
            Alphabet::Y => Some(self.clone()),
        }
    }

    /// Over Y: the X coding. Over X: identity.
    pub fn to_x(&self) -> Word {
        match self.alphabet {
            Alphabet::X => self.clone(),
            Alphabet::Y => self.transcode().expect("Y words always code"),
        }
    }

    /// Reverse the word, then exchange `x0` and `x1`.
    pub fn hat(&self) -> Result<Word> {
        if self.alphabet != Alphabet::X {
            return Err(Error::WrongAlphabet('X'));
        }
        let mut keys: Keys = self.keys.iter().rev().map(|&k| 1 - k).collect();
        keys.shrink_to_fit();
        Ok(Word { alphabet: Alphabet::X, keys })
    }

    pub fn composition(&self) -> Option<Composition> {
        self.to_y().map(|y| Composition(y.indices()))
    }

    pub fn parse(s: &str) -> Result<Word> {
        s.parse()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε{}", self.alphabet)
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `x0x1x1`, `y2y1` (optionally with `*` or `.` separators);
    /// `1`, `e` and `ε` are the empty X word, `1y`/`εY` the empty Y word;
    /// a composition such as `2,1` is read as a Y word.
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        match s {
            "" | "1" | "e" | "ε" | "1x" | "εX" => return Ok(Word::empty(Alphabet::X)),
            "1y" | "εY" => return Ok(Word::empty(Alphabet::Y)),
            _ => {}
        }
        if s.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            let c: Composition = s.parse()?;
            return Ok(c.to_y_word());
        }
        let bad = || Error::Parse(s.to_string());
        let bytes: Vec<char> = s.chars().filter(|c| *c != '*' && *c != '.').collect();
        let alphabet = match bytes.first() {
            Some('x') => Alphabet::X,
            Some('y') => Alphabet::Y,
            _ => return Err(bad()),
        };
        let mut keys = Keys::new();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] != alphabet.symbol() {
                return Err(bad());
            }
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(bad());
            }
            let idx: u32 = bytes[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            keys.push(Letter::new(alphabet, idx)?.key);
        }
        Ok(Word { alphabet, keys })
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_empty() {
            s.serialize_str(match self.alphabet {
                Alphabet::X => "1",
                Alphabet::Y => "1y",
            })
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A multi-index `(r1, ..., rk)` naming the polyzeta `ζ(r1, ..., rk)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0 || p > MAX_Y_INDEX) {
            return Err(Error::Parse(format!("{parts:?}")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn is_convergent(&self) -> bool {
        self.0.first().is_none_or(|&r| r >= 2)
    }

    pub fn to_y_word(&self) -> Word {
        Word::y(&self.0)
    }

    pub fn to_x_word(&self) -> Word {
        self.to_y_word().to_x()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Composition(Vec::new()));
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// All Lyndon words of weight `1..=max_weight`, ascending in the alphabet's order.
pub fn lyndon_generate(alphabet: Alphabet, max_weight: usize) -> Vec<Word> {
    let mut out = match alphabet {
        Alphabet::X => lyndon_x(max_weight),
        Alphabet::Y => {
            let mut out = Vec::new();
            let mut buf = Vec::new();
            compositions_into(max_weight, &mut buf, &mut |c| {
                let w = Word::y(c);
                if w.is_lyndon() {
                    out.push(w);
                }
            });
            out
        }
    };
    out.sort();
    out
}

/// Duval's successor algorithm over the two-letter alphabet.
fn lyndon_x(n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(Word { alphabet: Alphabet::X, keys: Keys::from_slice(&w) });
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out
}

fn compositions_into(max_weight: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    let used: u32 = buf.iter().sum();
    for part in 1..=(max_weight as u32 - used) {
        buf.push(part);
        f(buf);
        compositions_into(max_weight, buf, f);
        buf.pop();
    }
}

/// Every word of exactly `weight` over the alphabet (Y: one per composition).
pub fn words_of_weight(alphabet: Alphabet, weight: usize) -> Vec<Word> {
    let mut out = Vec::new();
    match alphabet {
        Alphabet::X => {
            for bits in 0..(1u64 << weight) {
                let idx: Vec<u32> = (0..weight).rev().map(|i| ((bits >> i) & 1) as u32).collect();
                out.push(Word::x(&idx));
            }
        }
        Alphabet::Y => {
            if weight == 0 {
                out.push(Word::empty(Alphabet::Y));
            } else {
                let mut buf = Vec::new();
                compositions_into(weight, &mut buf, &mut |c| {
                    if c.iter().sum::<u32>() as usize == weight {
                        out.push(Word::y(c));
                    }
                });
            }
        }
    }
    out.sort();
    out
}

/// Every word of weight `0..=max_weight`, grouped by weight.
pub fn words_up_to(alphabet: Alphabet, max_weight: usize) -> Vec<Word> {
    (0..=max_weight).flat_map(|w| words_of_weight(alphabet, w)).collect()
}

/// Letter substitutions on X words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Morphism {
    /// `x0 -> -x1`, `x1 -> -x0`.
    Rho1MinusZ,
    /// `x0 -> -x0 + x1`, `x1 -> -x0`.
    Rho1MinusInvZ,
    /// `x0 -> -x0 + x1`, `x1 -> x1`.
    RhoInvZ,
    /// `x0 <-> x1`.
    Mu,
    /// Mirror then `x0 <-> x1`; an anti-morphism.
    Hat,
}

impl FromStr for Morphism {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho_1-z" | "rho1mz" | "1-z" => Ok(Morphism::Rho1MinusZ),
            "rho_1-1/z" | "rho1miz" | "1-1/z" => Ok(Morphism::Rho1MinusInvZ),
            "rho_1/z" | "rhoiz" | "1/z" => Ok(Morphism::RhoInvZ),
            "mu" => Ok(Morphism::Mu),
            "hat" => Ok(Morphism::Hat),
            _ => Err(Error::UnknownMorphism(s.to_string())),
        }
    }
}

impl Morphism {
    /// Image of a single letter as `[(coefficient, letter)]`.
    fn letter_image(self, l: Letter) -> Vec<(i32, Letter)> {
        let (x0, x1) = (Letter::x0(), Letter::x1());
        let is_x0 = l == x0;
        match self {
            Morphism::Rho1MinusZ => vec![(-1, if is_x0 { x1 } else { x0 })],
            Morphism::Rho1MinusInvZ => {
                if is_x0 {
                    vec![(-1, x0), (1, x1)]
                } else {
                    vec![(-1, x0)]
                }
            }
            Morphism::RhoInvZ => {
                if is_x0 {
                    vec![(-1, x0), (1, x1)]
                } else {
                    vec![(1, x1)]
                }
            }
            Morphism::Mu | Morphism::Hat => vec![(1, if is_x0 { x1 } else { x0 })],
        }
    }
}

pub fn apply_morphism(m: Morphism, w: &Word) -> Result<NCPoly<Rational>> {
    if w.alphabet() != Alphabet::X {
        return Err(Error::WrongAlphabet('X'));
    }
    if m == Morphism::Hat {
        return Ok(NCPoly::from_word(w.hat()?));
    }
    let mut acc: Vec<(i64, Word)> = vec![(1, Word::empty(Alphabet::X))];
    for l in w.letters() {
        let img = m.letter_image(l);
        let mut next = Vec::with_capacity(acc.len() * img.len());
        for (c, u) in &acc {
            for &(s, letter) in &img {
                let mut v = u.clone();
                v.push(letter);
                next.push((c * s as i64, v));
            }
        }
        acc = next;
    }
    let mut p = NCPoly::zero(Alphabet::X);
    for (c, u) in acc {
        p.add_term(u, Rational::from_integer(c.into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn rotation_minimal_aperiodic(word: &Word) -> bool {
        let n = word.len();
        (1..n).all(|r| {
            let rot = word.slice(r, n).concat(&word.slice(0, r));
            word < &rot
        })
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("x0x1x1").to_string(), "x0x1x1");
        assert_eq!(w("y2y1").indices(), vec![2, 1]);
        assert_eq!(w("2,1"), w("y2y1"));
        assert!(w("1").is_empty());
        assert!("x2".parse::<Word>().is_err());
        assert!("y0".parse::<Word>().is_err());
        assert!("x0y1".parse::<Word>().is_err());
        assert_eq!("2,1".parse::<Composition>().unwrap().to_string(), "2,1");
    }

    #[test]
    fn weights_and_orders() {
        assert_eq!(w("y2y1").weight(), 3);
        assert_eq!(w("x0x1x1").weight(), 3);
        assert_eq!(Word::empty(Alphabet::Y).weight(), 0);
        assert!(w("x0") < w("x0x1"));
        assert!(w("x0x1") < w("x1"));
        assert!(w("y2") < w("y1"));
        assert!(w("y2y1") < w("y1"));
        assert_eq!(w("x0x1x1").count(Letter::x1()), 2);
    }

    #[test]
    fn lyndon_examples() {
        let x3: Vec<String> = lyndon_generate(Alphabet::X, 3).iter().map(|w| w.to_string()).collect();
        assert_eq!(x3, ["x0", "x0x0x1", "x0x1", "x0x1x1", "x1"]);
        let x1: Vec<String> = lyndon_generate(Alphabet::X, 1).iter().map(|w| w.to_string()).collect();
        assert_eq!(x1, ["x0", "x1"]);
        let y3 = lyndon_generate(Alphabet::Y, 3);
        let mut expect = vec![w("y1"), w("y2"), w("y3"), w("y2y1")];
        expect.sort();
        assert_eq!(y3, expect);
        assert!(w("y2y1").is_lyndon());
        assert!(!w("y1y2").is_lyndon());
    }

    #[test]
    fn lyndon_matches_rotation_oracle() {
        for alphabet in [Alphabet::X, Alphabet::Y] {
            let max = 8;
            let brute: Vec<Word> = words_up_to(alphabet, max)
                .into_iter()
                .filter(|u| !u.is_empty() && rotation_minimal_aperiodic(u))
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            assert_eq!(lyndon_generate(alphabet, max), brute, "{alphabet}");
        }
    }

    #[test]
    fn factorization_reconcatenates() {
        for alphabet in [Alphabet::X, Alphabet::Y] {
            for u in words_up_to(alphabet, 6).into_iter().filter(|u| !u.is_empty()) {
                let f = u.lyndon_factorization();
                assert!(f.iter().all(|l| l.is_lyndon()));
                assert!(f.windows(2).all(|p| p[0] >= p[1]), "{u}");
                let back = f.iter().fold(Word::empty(alphabet), |acc, l| acc.concat(l));
                assert_eq!(back, u);
            }
        }
    }

    #[test]
    fn standard_factorization_examples() {
        assert_eq!(w("x0x1x1").standard_factorization().unwrap(), (w("x0x1"), w("x1")));
        assert_eq!(w("x0x0x1").standard_factorization().unwrap(), (w("x0"), w("x0x1")));
        assert_eq!(w("y2y1").standard_factorization().unwrap(), (w("y2"), w("y1")));
        assert!(matches!(w("x1").standard_factorization(), Err(Error::NoFactorization(_))));
        for l in lyndon_generate(Alphabet::X, 7).into_iter().filter(|l| l.len() > 1) {
            let (u, v) = l.standard_factorization().unwrap();
            assert!(u.is_lyndon() && v.is_lyndon());
            assert_eq!(u.concat(&v), l);
        }
    }

    #[test]
    fn transcode_examples_and_bijection() {
        assert_eq!(w("y2y1").transcode(), Some(w("x0x1x1")));
        assert_eq!(w("x1x0").transcode(), None);
        assert_eq!(w("x0").transcode(), None);
        assert_eq!(Word::empty(Alphabet::X).transcode(), Some(Word::empty(Alphabet::Y)));
        for u in words_up_to(Alphabet::Y, 7) {
            assert_eq!(u.transcode().unwrap().transcode().unwrap(), u);
        }
        for u in words_up_to(Alphabet::X, 7) {
            if let Some(y) = u.transcode() {
                assert_eq!(y.transcode().unwrap(), u);
                assert_eq!(y.weight(), u.weight());
            } else {
                assert_eq!(u.last(), Some(Letter::x0()));
            }
        }
    }

    #[test]
    fn lyndon_sets_correspond_under_coding() {
        let from_y: Vec<Word> = lyndon_generate(Alphabet::Y, 9)
            .into_iter()
            .filter(|l| l.is_convergent())
            .map(|l| l.to_x())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let from_x: Vec<Word> = lyndon_generate(Alphabet::X, 9)
            .into_iter()
            .filter(|l| l.len() > 1)
            .collect();
        assert_eq!(from_y, from_x);
    }

    #[test]
    fn morphisms() {
        let p = apply_morphism(Morphism::Rho1MinusZ, &w("x0x1")).unwrap();
        assert_eq!(p.to_string(), "x1x0");
        let p = apply_morphism(Morphism::Hat, &w("x0x1x1")).unwrap();
        assert_eq!(p.to_string(), "x0x0x1");
        let p = apply_morphism(Morphism::Rho1MinusInvZ, &w("x0")).unwrap();
        assert_eq!(p.to_string(), "-x0 + x1");
        assert!(apply_morphism(Morphism::Mu, &w("y1")).is_err());
        assert!("rho".parse::<Morphism>().is_err());
    }

    #[test]
    fn rho_cubed_is_identity_and_hat_involutive() {
        for u in words_up_to(Alphabet::X, 5) {
            let mut p: NCPoly<Rational> = NCPoly::from_word(u.clone());
            for _ in 0..3 {
                p = p.substitute(|x| apply_morphism(Morphism::Rho1MinusInvZ, x).unwrap());
            }
            assert_eq!(p, NCPoly::from_word(u.clone()));
            let h = u.hat().unwrap();
            assert_eq!(h.weight(), u.weight());
            assert_eq!(h.hat().unwrap(), u);
            if u.is_convergent() {
                assert!(h.is_convergent());
            }
        }
    }
}
