//! The value ring of the regularizations: rational polynomials in the graded
//! symbols `ζ(r1,…,rk)` (convergent), `γ` and `iπ`.
//!
//! Symbols are ordered `iπ < γ < ζ(...)`, zeta symbols by weight and then by
//! their X-word in lexicographic order, so that among the zeta symbols of a
//! weight the lexicographically largest X-word is the leading one.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::commpoly::{CommPoly, Monomial, Variable};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Composition, Word};
use crate::parse_rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ConstSymbol {
    IPi,
    Gamma,
    /// Convergent polyzeta, named by its X-word `x0 X* x1`.
    Zeta(Word),
}

impl ConstSymbol {
    pub fn zeta(c: &Composition) -> Result<Self> {
        if c.depth() == 0 || !c.is_convergent() {
            return Err(Error::Divergent(c.to_string()));
        }
        Ok(ConstSymbol::Zeta(c.to_x_word()))
    }

    pub fn zeta_word(w: &Word) -> Result<Self> {
        let x = w.to_x();
        if x.is_empty() || !x.is_convergent() {
            return Err(Error::Divergent(w.to_string()));
        }
        Ok(ConstSymbol::Zeta(x))
    }

    pub fn composition(&self) -> Option<Composition> {
        match self {
            ConstSymbol::Zeta(w) => w.composition(),
            _ => None,
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            ConstSymbol::Zeta(w) => w.weight(),
            _ => 1,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ConstSymbol::IPi => 0,
            ConstSymbol::Gamma => 1,
            ConstSymbol::Zeta(_) => 2,
        }
    }
}

impl Ord for ConstSymbol {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ConstSymbol::Zeta(a), ConstSymbol::Zeta(b)) => a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for ConstSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ConstSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstSymbol::IPi => write!(f, "ipi"),
            ConstSymbol::Gamma => write!(f, "gamma"),
            ConstSymbol::Zeta(w) => write!(f, "z({})", w.composition().expect("convergent word")),
        }
    }
}

impl FromStr for ConstSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "ipi" | "iπ" => Ok(ConstSymbol::IPi),
            "gamma" | "γ" => Ok(ConstSymbol::Gamma),
            _ => {
                let inner = s
                    .strip_prefix("z(")
                    .or_else(|| s.strip_prefix("ζ("))
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(s.to_string()))?;
                ConstSymbol::zeta(&inner.parse()?)
            }
        }
    }
}

impl Variable for ConstSymbol {
    fn weight(&self) -> usize {
        ConstSymbol::weight(self)
    }
    fn label(&self) -> String {
        self.to_string()
    }
}

pub type ConstPoly = CommPoly<ConstSymbol>;

/// `ζ(c)` for a convergent composition, e.g. `zeta(&[2, 1])`.
pub fn zeta(parts: &[u32]) -> Result<ConstPoly> {
    Ok(ConstPoly::var(ConstSymbol::zeta(&Composition::new(parts.to_vec())?)?))
}

/// `ζ` of a convergent word over either alphabet.
pub fn zeta_of_word(w: &Word) -> Result<ConstPoly> {
    Ok(ConstPoly::var(ConstSymbol::zeta_word(w)?))
}

pub fn gamma() -> ConstPoly {
    ConstPoly::var(ConstSymbol::Gamma)
}

pub fn ipi() -> ConstPoly {
    ConstPoly::var(ConstSymbol::IPi)
}

pub fn const_add(a: &ConstPoly, b: &ConstPoly) -> ConstPoly {
    a.add(b)
}

pub fn const_mul(a: &ConstPoly, b: &ConstPoly) -> ConstPoly {
    a.mul(b)
}

/// Splits by the parity of the `iπ` exponent: `(even part, odd part)`.
pub fn split_ipi(p: &ConstPoly) -> (ConstPoly, ConstPoly) {
    let even = p.filter(|m| m.exponent(&ConstSymbol::IPi) % 2 == 0);
    let odd = p.filter(|m| m.exponent(&ConstSymbol::IPi) % 2 == 1);
    (even, odd)
}

/// The zeta symbols of a given weight whose X-word is Lyndon.
pub fn lyndon_zeta_symbols(weight: usize) -> Vec<ConstSymbol> {
    crate::words::lyndon_generate(Alphabet::X, weight)
        .into_iter()
        .filter(|l| l.weight() == weight && l.len() >= 2)
        .map(ConstSymbol::Zeta)
        .collect()
}

/// Parses the text form, e.g. `z(3) - z(2,1)`, `-1/2·z(2) + gamma^2`.
pub fn parse_const_poly(s: &str) -> Result<ConstPoly> {
    let bad = || Error::Parse(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    for ch in compact.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if cur.is_empty() {
                    if ch == '-' {
                        negative = !negative;
                    }
                } else {
                    pieces.push((negative, std::mem::take(&mut cur)));
                    negative = ch == '-';
                }
            }
            _ => cur.push(ch),
        }
    }
    if cur.is_empty() {
        return Err(bad());
    }
    pieces.push((negative, cur));
    if pieces.len() == 1 && pieces[0].1 == "0" {
        return Ok(ConstPoly::zero());
    }
    let mut out = ConstPoly::zero();
    for (neg, piece) in pieces {
        let mut coef = crate::rat(1, 1);
        let mut factors = Vec::new();
        for (i, f) in piece.split(['·', '*']).enumerate() {
            if f.is_empty() {
                return Err(bad());
            }
            if i == 0 && f.starts_with(|c: char| c.is_ascii_digit()) {
                coef = parse_rational(f)?;
                continue;
            }
            let (base, exp) = match f.rsplit_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
                None => (f, 1),
            };
            factors.push((base.parse::<ConstSymbol>()?, exp));
        }
        if neg {
            coef = -coef;
        }
        out.add_term(Monomial::from_factors(factors), coef);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn ring_examples() {
        let z2 = zeta(&[2]).unwrap();
        assert_eq!(const_mul(&z2, &z2).to_string(), "z(2)^2");
        assert!(const_mul(&const_add(&gamma(), &z2), &ConstPoly::zero()).is_zero());
        assert_eq!(const_mul(&z2, &zeta(&[3]).unwrap()).weight(), 5);
        assert!(zeta(&[1, 2]).is_err());
        assert!(zeta(&[]).is_err());
    }

    #[test]
    fn symbol_order_and_names() {
        let z3 = ConstSymbol::zeta(&"3".parse().unwrap()).unwrap();
        let z21 = ConstSymbol::zeta(&"2,1".parse().unwrap()).unwrap();
        let z2 = ConstSymbol::zeta(&"2".parse().unwrap()).unwrap();
        assert!(ConstSymbol::IPi < ConstSymbol::Gamma);
        assert!(ConstSymbol::Gamma < z2);
        assert!(z2 < z3 && z3 < z21);
        assert_eq!(z21.to_string(), "z(2,1)");
        assert_eq!(z21.composition().unwrap().parts(), &[2, 1]);
        assert_eq!(ConstSymbol::zeta_word(&"y2y1".parse().unwrap()).unwrap(), z21);
    }

    #[test]
    fn text_round_trip() {
        let p = zeta(&[3])
            .unwrap()
            .sub(&zeta(&[2, 1]).unwrap())
            .add(&gamma().pow(2).mul(&zeta(&[2]).unwrap()).scale(&rat(-1, 2)))
            .add(&ipi().pow(2).scale(&rat(1, 6)))
            .add(&ConstPoly::constant(rat(7, 1)));
        let text = p.to_string();
        assert_eq!(parse_const_poly(&text).unwrap(), p, "{text}");
        assert_eq!(parse_const_poly("0").unwrap(), ConstPoly::zero());
        assert!(parse_const_poly("z(1)").is_err());
    }

    #[test]
    fn ipi_split() {
        let p = ipi().mul(&zeta(&[2]).unwrap()).add(&zeta(&[3]).unwrap()).add(&ipi().pow(3));
        let (re, im) = split_ipi(&p);
        assert_eq!(re, zeta(&[3]).unwrap());
        assert_eq!(im, ipi().mul(&zeta(&[2]).unwrap()).add(&ipi().pow(3)));
    }

    #[test]
    fn lyndon_symbols_weight_three() {
        let names: Vec<String> = lyndon_zeta_symbols(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["z(3)", "z(2,1)"]);
    }
}
