//! Sparse noncommutative polynomials and weight-truncated series over a
//! coefficient ring: concatenation, shuffle, quasi-shuffle, residuals,
//! truncated exponential and logarithm, group-likeness and the Lie
//! projection.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{words_up_to, Alphabet, Letter, Word};
use crate::{parse_rational, write_sum, Coeff, Rational};

/// The two commutative products on words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Product {
    /// Shuffle `⧢`; the basis side is the alphabet X.
    Shuffle,
    /// Quasi-shuffle (stuffle) `⧺`; defined on Y only.
    Stuffle,
}

impl Product {
    /// The alphabet carrying this product's Lyndon bases.
    pub fn alphabet(self) -> Alphabet {
        match self {
            Product::Shuffle => Alphabet::X,
            Product::Stuffle => Alphabet::Y,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Product::Shuffle => "shuffle",
            Product::Stuffle => "stuffle",
        }
    }
}

impl FromStr for Product {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shuffle" | "sh" | "⧢" => Ok(Product::Shuffle),
            "stuffle" | "st" | "quasi-shuffle" | "⧺" => Ok(Product::Stuffle),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

type Counts = HashMap<Word, u64>;

fn check_pair(u: &Word, v: &Word) -> Result<Alphabet> {
    if u.is_empty() {
        return Ok(v.alphabet());
    }
    if !v.is_empty() && u.alphabet() != v.alphabet() {
        return Err(Error::MixedAlphabets);
    }
    Ok(u.alphabet())
}

/// Word-level product as integer multiplicities, by dynamic programming on
/// prefixes (the last letter of a shuffle comes from one of the two factors,
/// or for the quasi-shuffle from both, merged).
pub fn word_product(product: Product, u: &Word, v: &Word) -> Result<Vec<(Word, u64)>> {
    let alphabet = check_pair(u, v)?;
    if product == Product::Stuffle && alphabet != Alphabet::Y {
        return Err(Error::WrongAlphabet('Y'));
    }
    let (n, m) = (u.len(), v.len());
    let mut prev: Vec<Counts> = (0..=m)
        .map(|j| {
            let mut c = Counts::new();
            c.insert(v.slice(0, j), 1);
            c
        })
        .collect();
    for i in 1..=n {
        let a = u.letter_at(i - 1);
        let mut row: Vec<Counts> = Vec::with_capacity(m + 1);
        let mut first = Counts::new();
        first.insert(u.slice(0, i), 1);
        row.push(first);
        for j in 1..=m {
            let b = v.letter_at(j - 1);
            let mut cell = Counts::new();
            append_into(&mut cell, &prev[j], a);
            append_into(&mut cell, &row[j - 1], b);
            if product == Product::Stuffle {
                let merged = Letter::new(Alphabet::Y, a.index() + b.index())?;
                append_into(&mut cell, &prev[j - 1], merged);
            }
            row.push(cell);
        }
        prev = row;
    }
    let mut out: Vec<(Word, u64)> = prev.pop().expect("nonempty row").into_iter().collect();
    if alphabet != u.alphabet() || alphabet != v.alphabet() {
        for (w, _) in out.iter_mut() {
            if w.is_empty() {
                *w = Word::empty(alphabet);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn append_into(dst: &mut Counts, src: &Counts, l: Letter) {
    for (w, c) in src {
        let mut w = if w.is_empty() { Word::empty(l.alphabet()) } else { w.clone() };
        w.push(l);
        *dst.entry(w).or_insert(0) += c;
    }
}

/// A finitely supported map from words of one alphabet to coefficients.
#[derive(Clone, PartialEq)]
pub struct NCPoly<C: Coeff> {
    alphabet: Alphabet,
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> NCPoly<C> {
    pub fn zero(alphabet: Alphabet) -> Self {
        NCPoly { alphabet, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::term(Word::empty(alphabet), C::one())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, C::one())
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut p = Self::zero(w.alphabet());
        p.add_term(w, c);
        p
    }

    pub fn from_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert!(w.is_empty() || w.alphabet() == self.alphabet, "mixed alphabets");
        let w = if w.is_empty() { Word::empty(self.alphabet) } else { w };
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> C {
        if w.is_empty() {
            return self.terms.get(&Word::empty(self.alphabet)).cloned().unwrap_or_else(C::zero);
        }
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ref(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal term weight (0 for the zero polynomial).
    pub fn weight(&self) -> usize {
        self.terms.keys().map(|w| w.weight()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(|w| w.weight());
        match ws.next() {
            None => true,
            Some(w) => ws.all(|v| v == w),
        }
    }

    /// No term on the empty word.
    pub fn is_proper(&self) -> bool {
        self.coeff_ref(&Word::empty(self.alphabet)).is_none()
    }

    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> Self {
        NCPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, weight: usize) -> Self {
        self.filter(|w| w.weight() == weight)
    }

    pub fn truncate(&self, max_weight: usize) -> Self {
        self.filter(|w| w.weight() <= max_weight)
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&Word, &C) -> D) -> NCPoly<D> {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(w, c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| c.neg_ref())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|_, c| c.scale(r))
    }

    pub fn scale_by(&self, k: &C) -> Self {
        self.map_coeffs(|_, c| c.mul_ref(k))
    }

    /// Adds `k · p` where `p` has rational coefficients.
    pub fn add_scaled(&mut self, p: &NCPoly<Rational>, k: &C) {
        for (w, r) in p.terms() {
            self.add_term(w.clone(), k.scale(r));
        }
    }

    fn same_alphabet(&self, other: &Self) -> Result<Alphabet> {
        if self.alphabet == other.alphabet || self.is_zero() || other.is_zero() {
            Ok(if self.is_zero() { other.alphabet } else { self.alphabet })
        } else {
            Err(Error::MixedAlphabets)
        }
    }

    /// Concatenation product, dropping words above `cutoff` when given.
    pub fn concat_trunc(&self, other: &Self, cutoff: Option<usize>) -> Result<Self> {
        let alphabet = self.same_alphabet(other)?;
        let limit = cutoff.unwrap_or(usize::MAX);
        let mut out = NCPoly::zero(alphabet);
        for (u, a) in &self.terms {
            let wu = u.weight();
            if wu > limit {
                continue;
            }
            for (v, b) in &other.terms {
                if wu + v.weight() <= limit {
                    out.add_term(u.concat(v), a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.concat_trunc(other, None)
    }

    /// Commutator `[self, other]` for concatenation.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        Ok(self.concat(other)?.sub(&other.concat(self)?))
    }

    pub fn product_trunc(&self, other: &Self, product: Product, cutoff: Option<usize>) -> Result<Self> {
        let alphabet = self.same_alphabet(other)?;
        let limit = cutoff.unwrap_or(usize::MAX);
        let mut out = NCPoly::zero(alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.weight() + v.weight() > limit {
                    continue;
                }
                let ab = a.mul_ref(b);
                for (w, k) in word_product(product, u, v)? {
                    out.add_term(w, ab.scale(&Rational::from_integer(k.into())));
                }
            }
        }
        Ok(out)
    }

    pub fn shuffle(&self, other: &Self) -> Result<Self> {
        self.product_trunc(other, Product::Shuffle, None)
    }

    pub fn stuffle(&self, other: &Self) -> Result<Self> {
        self.product_trunc(other, Product::Stuffle, None)
    }

    pub fn product(&self, other: &Self, product: Product) -> Result<Self> {
        self.product_trunc(other, product, None)
    }

    /// Replaces every word by a rational polynomial image, linearly.
    pub fn substitute(&self, mut image: impl FnMut(&Word) -> NCPoly<Rational>) -> Self {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            let img = image(w);
            out.alphabet = img.alphabet;
            out.add_scaled(&img, c);
        }
        out
    }

    /// `Σ_w ⟨self|w⟩⟨q|w⟩`.
    pub fn pair(&self, q: &NCPoly<Rational>) -> C {
        let mut total = C::zero();
        if q.len() < self.len() {
            for (w, r) in q.terms() {
                if let Some(c) = self.terms.get(w) {
                    total.add_assign_ref(&c.scale(r));
                }
            }
        } else {
            for (w, c) in &self.terms {
                if let Some(r) = q.terms.get(w) {
                    total.add_assign_ref(&c.scale(r));
                }
            }
        }
        total
    }

    pub fn to_text(&self) -> String {
        write_sum(self.terms.iter().map(|(w, c)| (w.to_string(), c.clone())), "1")
    }
}

impl NCPoly<Rational> {
    /// Parses `2·x0x1x1 + x1x0x1`, also accepting `*` for `·` and `-` signs.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                pieces.push((negative, std::mem::take(&mut cur)));
                negative = ch == '-';
            } else if ch == '-' {
                negative = !negative;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        pieces.push((negative, cur));
        let mut out: Option<NCPoly<Rational>> = None;
        for (neg, piece) in pieces {
            if piece.is_empty() {
                return Err(bad());
            }
            let (coef, word) = match piece.find(['·', '*']) {
                Some(pos) => {
                    let sep = piece[pos..].chars().next().expect("separator").len_utf8();
                    (parse_rational(&piece[..pos])?, piece[pos + sep..].parse::<Word>()?)
                }
                None if piece.starts_with(['x', 'y']) => (crate::rat(1, 1), piece.parse::<Word>()?),
                None => (parse_rational(&piece)?, Word::empty(Alphabet::X)),
            };
            let coef = if neg { -coef } else { coef };
            let acc = out.get_or_insert_with(|| NCPoly::zero(word.alphabet()));
            if !word.is_empty() && !acc.is_zero() && acc.alphabet != word.alphabet() {
                return Err(Error::MixedAlphabets);
            }
            if !word.is_empty() {
                acc.alphabet = word.alphabet();
            }
            acc.add_term(word, coef);
        }
        let mut p = out.ok_or_else(bad)?;
        // Re-key an empty-word term under the final alphabet.
        let alphabet = p.alphabet;
        p.terms = std::mem::take(&mut p.terms)
            .into_iter()
            .map(|(w, c)| if w.is_empty() { (Word::empty(alphabet), c) } else { (w, c) })
            .collect();
        Ok(p)
    }
}

impl<C: Coeff> fmt::Display for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<C: Coeff> fmt::Debug for NCPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `⟨p ◁ s | w⟩ = ⟨s | w p⟩`.
pub fn residual_left<C: Coeff>(p: &NCPoly<Rational>, s: &NCPoly<C>) -> NCPoly<C> {
    let mut out = NCPoly::zero(s.alphabet());
    for (w, c) in s.terms() {
        for (u, r) in p.terms() {
            if w.ends_with(u) && (u.is_empty() || u.alphabet() == w.alphabet()) {
                out.add_term(w.slice(0, w.len() - u.len()), c.scale(r));
            }
        }
    }
    out
}

/// `⟨s ▷ p | w⟩ = ⟨s | p w⟩`.
pub fn residual_right<C: Coeff>(s: &NCPoly<C>, p: &NCPoly<Rational>) -> NCPoly<C> {
    let mut out = NCPoly::zero(s.alphabet());
    for (w, c) in s.terms() {
        for (u, r) in p.terms() {
            if w.starts_with(u) {
                out.add_term(w.slice(u.len(), w.len()), c.scale(r));
            }
        }
    }
    out
}

/// A noncommutative series known up to and including weight `cutoff`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C: Coeff> {
    poly: NCPoly<C>,
    cutoff: usize,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn new(poly: NCPoly<C>, cutoff: usize) -> Self {
        TruncatedSeries { poly: poly.truncate(cutoff), cutoff }
    }

    pub fn one(alphabet: Alphabet, cutoff: usize) -> Self {
        Self::new(NCPoly::one(alphabet), cutoff)
    }

    pub fn poly(&self) -> &NCPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> NCPoly<C> {
        self.poly
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn alphabet(&self) -> Alphabet {
        self.poly.alphabet()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.poly.coeff(w)
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        Self::new(self.poly.clone(), cutoff.min(self.cutoff))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let cutoff = self.cutoff.min(other.cutoff);
        Ok(TruncatedSeries { poly: self.poly.concat_trunc(&other.poly, Some(cutoff))?, cutoff })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.poly.add(&other.poly), self.cutoff.min(other.cutoff))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.poly.sub(&other.poly), self.cutoff.min(other.cutoff))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        TruncatedSeries { poly: self.poly.scale(r), cutoff: self.cutoff }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl FnMut(&Word, &C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries { poly: self.poly.map_coeffs(f), cutoff: self.cutoff }
    }

    /// Formal exponential for concatenation; requires a proper series.
    pub fn exp(&self) -> Result<Self> {
        if !self.poly.is_proper() {
            return Err(Error::Precondition("exp needs a series without constant term".into()));
        }
        let mut total = Self::one(self.alphabet(), self.cutoff);
        let mut term = total.clone();
        for n in 1..=self.cutoff {
            term = term.mul(self)?.scale(&crate::rat(1, n as i64));
            if term.poly.is_zero() {
                break;
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Formal logarithm for concatenation; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        let eps = Word::empty(self.alphabet());
        if self.poly.coeff(&eps) != C::one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let t = Self::new(self.poly.filter(|w| !w.is_empty()), self.cutoff);
        let mut total = Self::new(NCPoly::zero(self.alphabet()), self.cutoff);
        let mut power = t.clone();
        for n in 1..=self.cutoff {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            total = total.add(&power.scale(&crate::rat(sign, n as i64)));
            power = power.mul(&t)?;
            if power.poly.is_zero() {
                break;
            }
        }
        Ok(total)
    }

    /// First pair `(u, v)` of nonempty words with weight sum within the
    /// cutoff such that `⟨S|u∙v⟩ != ⟨S|u⟩⟨S|v⟩`, if any.
    pub fn grouplike_defect(&self, product: Product) -> Result<Option<(Word, Word)>> {
        let eps = Word::empty(self.alphabet());
        if self.poly.coeff(&eps) != C::one() {
            return Err(Error::Precondition("<S|ε> must be 1".into()));
        }
        let words: Vec<Word> = words_up_to(self.alphabet(), self.cutoff)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        for (i, u) in words.iter().enumerate() {
            for v in &words[i..] {
                if u.weight() + v.weight() > self.cutoff {
                    continue;
                }
                let mut lhs = C::zero();
                for (w, k) in word_product(product, u, v)? {
                    lhs.add_assign_ref(&self.poly.coeff(&w).scale(&Rational::from_integer(k.into())));
                }
                let rhs = self.poly.coeff(u).mul_ref(&self.poly.coeff(v));
                if lhs != rhs {
                    return Ok(Some((u.clone(), v.clone())));
                }
            }
        }
        Ok(None)
    }

    pub fn grouplike_check(&self, product: Product) -> Result<bool> {
        Ok(self.grouplike_defect(product)?.is_none())
    }
}

/// A polynomial is primitive (a Lie element for the product's coproduct)
/// iff `⟨P|u∙v⟩ = 0` for all nonempty `u`, `v`; checked up to `P`'s weight.
pub fn is_primitive<C: Coeff>(p: &NCPoly<C>, product: Product) -> Result<bool> {
    if !p.is_proper() {
        return Ok(false);
    }
    let max = p.weight();
    let words: Vec<Word> = words_up_to(p.alphabet(), max).into_iter().filter(|w| !w.is_empty()).collect();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i..] {
            if u.weight() + v.weight() > max {
                continue;
            }
            let mut acc = C::zero();
            for (w, k) in word_product(product, u, v)? {
                acc.add_assign_ref(&p.coeff(&w).scale(&Rational::from_integer(k.into())));
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All `(u, v, multiplicity)` with `⟨u∙v | w⟩ = multiplicity`, i.e. the
/// coproduct dual to the product, applied to one word.
pub fn coproduct(product: Product, w: &Word) -> Result<Vec<(Word, Word, u64)>> {
    if product == Product::Stuffle && w.alphabet() != Alphabet::Y && !w.is_empty() {
        return Err(Error::WrongAlphabet('Y'));
    }
    let alphabet = w.alphabet();
    let mut acc: HashMap<(Word, Word), u64> = HashMap::new();
    acc.insert((Word::empty(alphabet), Word::empty(alphabet)), 1);
    for l in w.letters() {
        // Each letter splits into (left part, right part).
        let mut splits: Vec<(Option<Letter>, Option<Letter>)> = vec![(Some(l), None), (None, Some(l))];
        if product == Product::Stuffle {
            for i in 1..l.index() {
                splits.push((Some(Letter::y(i)), Some(Letter::y(l.index() - i))));
            }
        }
        let mut next: HashMap<(Word, Word), u64> = HashMap::with_capacity(acc.len() * splits.len());
        for ((a, b), c) in &acc {
            for (x, y) in &splits {
                let mut a2 = a.clone();
                let mut b2 = b.clone();
                if let Some(x) = x {
                    a2.push(*x);
                }
                if let Some(y) = y {
                    b2.push(*y);
                }
                *next.entry((a2, b2)).or_insert(0) += c;
            }
        }
        acc = next;
    }
    let mut out: Vec<(Word, Word, u64)> = acc.into_iter().map(|((a, b), c)| (a, b, c)).collect();
    out.sort();
    Ok(out)
}

/// The Lie projection `π1 = log⋆(id)`: for a word `w`,
/// `π1(w) = Σ_k (-1)^(k-1)/k Σ ⟨w|u1∙…∙uk⟩ u1…uk` over nonempty `u_i`.
pub fn pi1_project(p: &NCPoly<Rational>, product: Product) -> Result<NCPoly<Rational>> {
    let mut memo: HashMap<(Word, usize), NCPoly<Rational>> = HashMap::new();
    let mut out = NCPoly::zero(p.alphabet());
    for (w, c) in p.terms() {
        if w.is_empty() {
            continue;
        }
        let n = w.len();
        for k in 1..=w.weight().max(n) {
            let g = conv_power(product, w, k, &mut memo)?;
            if g.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&g, &(c * crate::rat(sign, k as i64)));
        }
    }
    Ok(out)
}

/// `(id - ε)^{⋆k}(w)`.
fn conv_power(
    product: Product,
    w: &Word,
    k: usize,
    memo: &mut HashMap<(Word, usize), NCPoly<Rational>>,
) -> Result<NCPoly<Rational>> {
    if w.is_empty() {
        return Ok(NCPoly::zero(w.alphabet()));
    }
    if k == 1 {
        return Ok(NCPoly::from_word(w.clone()));
    }
    if let Some(p) = memo.get(&(w.clone(), k)) {
        return Ok(p.clone());
    }
    let mut out = NCPoly::zero(w.alphabet());
    for (u, v, m) in coproduct(product, w)? {
        if u.is_empty() || v.is_empty() {
            continue;
        }
        let left = conv_power(product, &u, k - 1, memo)?;
        let right = NCPoly::<Rational>::from_word(v);
        out.add_scaled(&left.concat(&right)?, &Rational::from_integer(m.into()));
    }
    memo.insert((w.clone(), k), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn p(s: &str) -> NCPoly<Rational> {
        NCPoly::parse(s).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn products_examples() {
        assert_eq!(p("x0").shuffle(&p("x1")).unwrap(), p("x0x1 + x1x0"));
        assert_eq!(p("x1").shuffle(&p("x0x1")).unwrap(), p("x1x0x1 + 2·x0x1x1"));
        assert_eq!(p("x0x1").shuffle(&NCPoly::one(Alphabet::X)).unwrap(), p("x0x1"));
        assert_eq!(p("y1").stuffle(&p("y1")).unwrap(), p("2·y1y1 + y2"));
        assert_eq!(p("y1").stuffle(&p("y2")).unwrap(), p("y1y2 + y2y1 + y3"));
        assert_eq!(p("y2y1").stuffle(&NCPoly::one(Alphabet::Y)).unwrap(), p("y2y1"));
        assert!(matches!(p("x0").stuffle(&p("x1")), Err(Error::WrongAlphabet('Y'))));
        assert!(matches!(p("x0").shuffle(&p("y1")), Err(Error::MixedAlphabets)));
    }

    #[test]
    fn parse_and_print() {
        let q = p("2·x0x1x1 + x1x0x1");
        assert_eq!(q.to_string(), "2·x0x1x1 + x1x0x1");
        assert_eq!(p("-1/2*y1y1 + y2 - 3").to_string(), "-3 + y2 - 1/2·y1y1");
        assert_eq!(NCPoly::<Rational>::zero(Alphabet::X).to_string(), "0");
    }

    #[test]
    fn residual_examples() {
        assert_eq!(residual_left(&p("x1"), &p("x0x1")), p("x0"));
        assert_eq!(residual_right(&p("x0x1"), &p("x0")), p("x1"));
        assert!(residual_left(&p("x0"), &p("x0x1")).is_zero());
    }

    #[test]
    fn exp_log() {
        let e = TruncatedSeries::new(p("x0"), 4).exp().unwrap();
        assert_eq!(e.coeff(&w("x0x0x0")), rat(1, 6));
        assert!(e.grouplike_check(Product::Shuffle).unwrap());
        let s = TruncatedSeries::new(p("1 + x0x1"), 3);
        assert_eq!(s.log().unwrap().poly(), &p("x0x1"));
        assert!(!s.grouplike_check(Product::Shuffle).unwrap());
        assert!(TruncatedSeries::new(p("1 + x0"), 3).exp().is_err());
        assert!(TruncatedSeries::new(p("x0"), 3).log().is_err());
    }

    #[test]
    fn pi1_examples() {
        let half = p("x0x1").scale(&rat(1, 1));
        assert_eq!(pi1_project(&half, Product::Shuffle).unwrap(), p("1/2·x0x1 - 1/2·x1x0"));
        assert_eq!(pi1_project(&p("x0"), Product::Shuffle).unwrap(), p("x0"));
        assert!(pi1_project(&p("x0x1 + x1x0"), Product::Shuffle).unwrap().is_zero());
        for word in words_up_to(Alphabet::X, 5).into_iter().filter(|w| !w.is_empty()) {
            let q = pi1_project(&NCPoly::from_word(word), Product::Shuffle).unwrap();
            assert!(is_primitive(&q, Product::Shuffle).unwrap());
        }
        for word in words_up_to(Alphabet::Y, 5).into_iter().filter(|w| !w.is_empty()) {
            let q = pi1_project(&NCPoly::from_word(word), Product::Stuffle).unwrap();
            assert!(is_primitive(&q, Product::Stuffle).unwrap());
        }
    }

    #[test]
    fn coproduct_is_dual_to_product() {
        for product in [Product::Shuffle, Product::Stuffle] {
            let alphabet = if product == Product::Shuffle { Alphabet::X } else { Alphabet::Y };
            let words = words_up_to(alphabet, 4);
            for u in &words {
                for v in &words {
                    if u.weight() + v.weight() > 4 {
                        continue;
                    }
                    for (x, k) in word_product(product, u, v).unwrap() {
                        let cp = coproduct(product, &x).unwrap();
                        let m = cp.iter().find(|(a, b, _)| a == u && b == v).map_or(0, |t| t.2);
                        assert_eq!(m, k, "{u} {v} {x}");
                    }
                }
            }
        }
    }
}
