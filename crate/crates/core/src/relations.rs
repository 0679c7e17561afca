//! Relations among polyzetas: the regularized double-shuffle family read off
//! `Z_⧺ = B'(y1) Π_Y Z_⧢`, the duality and hexagon families, per-weight
//! elimination into a rewrite table with irreducibles, kernel generators,
//! associator perturbation and the expansion of `Z_⧢` on products of
//! `ad_{x0}^l x1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bases::{mrs_expand, mrs_factorize, radford_word, Product};
use crate::commpoly::Monomial;
use crate::constants::{ipi, lyndon_zeta_symbols, parse_const_poly, split_ipi, ConstPoly, ConstSymbol};
use crate::error::{Error, Result};
use crate::ncpoly::{is_primitive, NCPoly, TruncatedSeries};
use crate::regularize::{
    bprime_series, build_z, project_y, zeta_shuffle_reg, zeta_stuffle_reg, Regularization,
};
use crate::words::{apply_morphism, words_of_weight, words_up_to, Alphabet, Letter, Morphism, Word};
use crate::{rat, Coeff, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HexagonPart {
    /// Terms with an even power of `iπ`.
    Real,
    /// Terms with an odd power of `iπ`.
    Imaginary,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    DoubleShuffle(Word),
    Duality(Word),
    Hexagon(Word, HexagonPart),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::DoubleShuffle(w) => write!(f, "double_shuffle({w})"),
            Provenance::Duality(w) => write!(f, "duality({w})"),
            Provenance::Hexagon(w, HexagonPart::Real) => write!(f, "hexagon({w}, real)"),
            Provenance::Hexagon(w, HexagonPart::Imaginary) => write!(f, "hexagon({w}, imaginary)"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        match name {
            "double_shuffle" => Ok(Provenance::DoubleShuffle(inner.parse()?)),
            "duality" => Ok(Provenance::Duality(inner.parse()?)),
            "hexagon" => {
                let (w, part) = inner.split_once(',').ok_or_else(bad)?;
                let part = match part.trim() {
                    "real" => HexagonPart::Real,
                    "imaginary" => HexagonPart::Imaginary,
                    _ => return Err(bad()),
                };
                Ok(Provenance::Hexagon(w.trim().parse()?, part))
            }
            _ => Err(bad()),
        }
    }
}

/// A homogeneous polynomial identity `poly = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub poly: ConstPoly,
    pub weight: usize,
    pub provenance: Provenance,
}

impl Relation {
    pub fn new(poly: ConstPoly, provenance: Provenance) -> Self {
        Relation { weight: poly.weight(), poly, provenance }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0    [{}]", self.poly, self.provenance)
    }
}

/// `⟨B'(y1) Π_Y Z_⧢ | w⟩ = Σ_{w = y1^j v} B'_j ζ_⧢(Π_X v)`.
fn bridged_coefficient(w: &Word, bprime: &TruncatedSeries<ConstPoly>) -> Result<ConstPoly> {
    let lead = w.letters().take_while(|l| l.index() == 1).count();
    let mut out = ConstPoly::zero();
    for j in 0..=lead {
        let bj = bprime.coeff(&Word::y(&vec![1; j]));
        if bj.is_zero() {
            continue;
        }
        let tail = w.slice(j, w.len()).to_x();
        out.add_assign(&bj.mul(&zeta_shuffle_reg(&tail)?));
    }
    Ok(out)
}

/// `⟨Z_⧺|w⟩ - ⟨B'(y1) Π_Y Z_⧢|w⟩` for every Y-word of weight `2..=max_w`,
/// dropping identically zero ones.
pub fn derive_double_shuffle(max_w: usize) -> Result<Vec<Relation>> {
    let bprime = bprime_series(max_w)?;
    let mut out = Vec::new();
    for weight in 2..=max_w {
        for w in words_of_weight(Alphabet::Y, weight) {
            let poly = zeta_stuffle_reg(&w)?.sub(&bridged_coefficient(&w, &bprime)?);
            if !poly.is_zero() {
                out.push(Relation::new(poly, Provenance::DoubleShuffle(w)));
            }
        }
    }
    Ok(out)
}

/// `ζ(w) - ζ(ŵ)` for convergent X-words with `w > ŵ`, weight `3..=max_w`.
pub fn derive_duality(max_w: usize) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for weight in 3..=max_w {
        for w in words_of_weight(Alphabet::X, weight) {
            if !w.is_convergent() {
                continue;
            }
            let dual = w.hat()?;
            if dual >= w {
                continue;
            }
            let poly = zeta_shuffle_reg(&w)?.sub(&zeta_shuffle_reg(&dual)?);
            if !poly.is_zero() {
                out.push(Relation::new(poly, Provenance::Duality(w)));
            }
        }
    }
    Ok(out)
}

fn substitute_series(s: &TruncatedSeries<ConstPoly>, m: Morphism) -> Result<TruncatedSeries<ConstPoly>> {
    let mut out = NCPoly::zero(Alphabet::X);
    for (w, c) in s.poly().terms() {
        out.add_scaled(&apply_morphism(m, w)?, c);
    }
    Ok(TruncatedSeries::new(out, s.cutoff()))
}

fn exp_ipi(p: NCPoly<Rational>, max_w: usize) -> Result<TruncatedSeries<ConstPoly>> {
    let arg = p.map_coeffs(|_, c| ipi().scale(c));
    TruncatedSeries::new(arg, max_w).exp()
}

/// The series `Z e^{iπ x0} ρ(Z) e^{iπ(-x0+x1)} ρ²(Z) e^{-iπ x1}` with
/// `ρ = ρ_{1-1/z}`, truncated at `max_w`.
pub fn hexagon_series(max_w: usize) -> Result<TruncatedSeries<ConstPoly>> {
    let z = build_z(Regularization::Shuffle, max_w)?;
    let rz = substitute_series(&z, Morphism::Rho1MinusInvZ)?;
    let rrz = substitute_series(&rz, Morphism::Rho1MinusInvZ)?;
    let x0 = NCPoly::<Rational>::from_word(Word::letter(Letter::x0()));
    let x1 = NCPoly::<Rational>::from_word(Word::letter(Letter::x1()));
    let e0 = exp_ipi(x0.clone(), max_w)?;
    let e01 = exp_ipi(x1.sub(&x0), max_w)?;
    let e1 = exp_ipi(x1.neg(), max_w)?;
    z.mul(&e0)?.mul(&rz)?.mul(&e01)?.mul(&rrz)?.mul(&e1)
}

/// Every nonzero coefficient of the hexagon series minus 1, split into its
/// even and odd parts in `iπ`, made monic and deduplicated.
pub fn hexagon_check(max_w: usize) -> Result<Vec<Relation>> {
    if !(1..=6).contains(&max_w) {
        return Err(Error::Precondition(format!("hexagon weight must be in 1..=6, got {max_w}")));
    }
    let h = hexagon_series(max_w)?;
    let one = Word::empty(Alphabet::X);
    let mut out: Vec<Relation> = Vec::new();
    for (w, c) in h.poly().terms() {
        let c = if *w == one { c.sub(&ConstPoly::one()) } else { c.clone() };
        if c.is_zero() {
            continue;
        }
        let (re, im) = split_ipi(&c);
        for (part, poly) in [(HexagonPart::Real, re), (HexagonPart::Imaginary, im)] {
            if poly.is_zero() {
                continue;
            }
            let poly = poly.monic();
            if out.iter().all(|r| r.poly != poly) {
                out.push(Relation::new(poly, Provenance::Hexagon(w.clone(), part)));
            }
        }
    }
    Ok(out)
}

/// One weight of a [`RelationTable`].
#[derive(Clone, Debug, PartialEq)]
pub struct TableLevel {
    pub weight: usize,
    /// Reducible symbol and its value in irreducibles.
    pub rewrites: BTreeMap<ConstSymbol, ConstPoly>,
    pub irreducibles: Vec<ConstSymbol>,
    /// The relation whose pivot introduced each rewrite.
    pub certificate: BTreeMap<ConstSymbol, Provenance>,
}

/// Echelonized relations: rewrite rules `ζ(l) -> polynomial in irreducibles`
/// per weight, and the irreducible Lyndon symbols.
#[derive(Clone, Debug)]
pub struct RelationTable {
    pub max_weight: usize,
    pub levels: Vec<TableLevel>,
}

impl PartialEq for RelationTable {
    /// Equal rewrite maps and irreducible lists; certificates are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.max_weight == other.max_weight
            && self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| a.weight == b.weight && a.rewrites == b.rewrites && a.irreducibles == b.irreducibles)
    }
}

impl RelationTable {
    pub fn level(&self, weight: usize) -> Option<&TableLevel> {
        self.levels.iter().find(|l| l.weight == weight)
    }

    pub fn rewrite(&self, s: &ConstSymbol) -> Option<&ConstPoly> {
        self.level(s.weight()).and_then(|l| l.rewrites.get(s))
    }

    pub fn irreducible_counts(&self) -> Vec<(usize, usize)> {
        self.levels.iter().map(|l| (l.weight, l.irreducibles.len())).collect()
    }

    pub fn irreducibles(&self) -> Vec<ConstSymbol> {
        self.levels.iter().flat_map(|l| l.irreducibles.iter().cloned()).collect()
    }

    /// Replaces every reducible symbol by its rewrite.
    pub fn normalize(&self, p: &ConstPoly) -> Result<ConstPoly> {
        normalize_with(p, self.max_weight, |s| self.rewrite(s))
    }

    /// The rewrite rules as relations `head - rhs = 0`.
    pub fn relations(&self) -> Vec<Relation> {
        let mut out = Vec::new();
        for level in &self.levels {
            for (head, rhs) in &level.rewrites {
                let poly = ConstPoly::var(head.clone()).sub(rhs);
                let provenance = level.certificate.get(head).cloned().unwrap_or_else(|| {
                    Provenance::DoubleShuffle(head.composition().expect("zeta head").to_y_word())
                });
                out.push(Relation::new(poly, provenance));
            }
        }
        out
    }

    /// Whether each relation reduces to 0 modulo the table.
    pub fn implied(&self, relations: &[Relation]) -> Result<Vec<bool>> {
        relations.iter().map(|r| Ok(self.normalize(&r.poly)?.is_zero())).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<serde_json::Value> = self
            .levels
            .iter()
            .map(|l| {
                json!({
                    "weight": l.weight,
                    "rewrites": l.rewrites.iter().map(|(h, r)| json!({
                        "head": h.to_string(),
                        "rhs": r.to_string(),
                        "provenance": l.certificate.get(h).map(|p| p.to_string()),
                    })).collect::<Vec<_>>(),
                    "irreducibles": l.irreducibles.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "max_weight": self.max_weight, "levels": levels })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Cache(format!("relation table: bad {what}"));
        let max_weight = v["max_weight"].as_u64().ok_or_else(|| bad("max_weight"))? as usize;
        let mut levels = Vec::new();
        for l in v["levels"].as_array().ok_or_else(|| bad("levels"))? {
            let weight = l["weight"].as_u64().ok_or_else(|| bad("weight"))? as usize;
            let mut rewrites = BTreeMap::new();
            let mut certificate = BTreeMap::new();
            for r in l["rewrites"].as_array().ok_or_else(|| bad("rewrites"))? {
                let head: ConstSymbol = r["head"].as_str().ok_or_else(|| bad("head"))?.parse()?;
                let rhs = parse_const_poly(r["rhs"].as_str().ok_or_else(|| bad("rhs"))?)?;
                if let Some(p) = r["provenance"].as_str() {
                    certificate.insert(head.clone(), p.parse()?);
                }
                rewrites.insert(head, rhs);
            }
            let irreducibles = l["irreducibles"]
                .as_array()
                .ok_or_else(|| bad("irreducibles"))?
                .iter()
                .map(|s| s.as_str().ok_or_else(|| bad("irreducible")).and_then(|s| s.parse()))
                .collect::<Result<Vec<_>>>()?;
            levels.push(TableLevel { weight, rewrites, irreducibles, certificate });
        }
        Ok(RelationTable { max_weight, levels })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| weight | irreducibles | rewrites |\n|---|---|---|\n");
        for l in &self.levels {
            let irr: Vec<String> = l.irreducibles.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!("| {} | {} | {} |\n", l.weight, irr.join(", "), l.rewrites.len()));
        }
        out.push('\n');
        for l in &self.levels {
            for (h, r) in &l.rewrites {
                out.push_str(&format!("- `{h} = {r}`\n"));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,head,rhs\n");
        for l in &self.levels {
            for (h, r) in &l.rewrites {
                out.push_str(&format!("{},\"{h}\",\"{r}\"\n", l.weight));
            }
        }
        out
    }
}

fn normalize_with<'a>(
    p: &ConstPoly,
    max_weight: usize,
    rewrite: impl Fn(&ConstSymbol) -> Option<&'a ConstPoly>,
) -> Result<ConstPoly> {
    let need = p.variables().iter().map(|s| s.weight()).max().unwrap_or(0);
    if p.variables().iter().any(|s| matches!(s, ConstSymbol::Zeta(_))) && need > max_weight {
        return Err(Error::TableTooShallow { have: max_weight, need });
    }
    Ok(p.substitute(|s| rewrite(s).cloned().unwrap_or_else(|| ConstPoly::var(s.clone()))))
}

/// Reduces `p` by the pivot rows (leading monomial → row).
fn reduce_by(p: &ConstPoly, pivots: &BTreeMap<Monomial<ConstSymbol>, ConstPoly>) -> ConstPoly {
    let mut p = p.clone();
    loop {
        let hit = p.terms().rev().find(|(m, _)| pivots.contains_key(m)).map(|(m, c)| (m.clone(), c.clone()));
        match hit {
            None => return p,
            Some((m, c)) => p = p.sub(&pivots[&m].scale(&c)),
        }
    }
}

/// Per-weight linear elimination. Pivots are leading monomials (the
/// largest zeta symbol of top weight); each must be a single zeta symbol.
pub fn reduce_table(relations: &[Relation]) -> Result<RelationTable> {
    let mut by_weight: BTreeMap<usize, Vec<&Relation>> = BTreeMap::new();
    for r in relations {
        if !r.poly.is_homogeneous() {
            return Err(Error::Precondition(format!("relation {} is not homogeneous", r.provenance)));
        }
        by_weight.entry(r.poly.weight()).or_default().push(r);
    }
    let max_weight = by_weight.keys().next_back().copied().unwrap_or(0).max(
        relations.iter().map(|r| r.weight).max().unwrap_or(0),
    );
    if let Some(r) = by_weight.get(&0).and_then(|v| v.first()) {
        return Err(Error::Inconsistent { provenance: r.provenance.to_string(), poly: r.poly.to_string() });
    }
    let mut table = RelationTable { max_weight: 0, levels: Vec::new() };
    for weight in 1..=max_weight {
        let mut pivots: BTreeMap<Monomial<ConstSymbol>, ConstPoly> = BTreeMap::new();
        let mut certificate = BTreeMap::new();
        for r in by_weight.get(&weight).map(|v| v.as_slice()).unwrap_or(&[]) {
            let lowered = normalize_with(&r.poly, weight, |s| table.rewrite(s))?;
            let reduced = reduce_by(&lowered, &pivots);
            let Some((lead, _)) = reduced.leading() else { continue };
            let lead = lead.clone();
            let head = match lead.as_var() {
                Some(s @ ConstSymbol::Zeta(_)) if s.weight() == weight => s.clone(),
                _ if lead.is_one() => {
                    return Err(Error::Inconsistent { provenance: r.provenance.to_string(), poly: reduced.to_string() })
                }
                _ => {
                    return Err(Error::DependentIrreducibles {
                        provenance: r.provenance.to_string(),
                        poly: reduced.to_string(),
                    })
                }
            };
            let row = reduced.monic();
            for other in pivots.values_mut() {
                let c = other.coeff(&lead);
                if !Coeff::is_zero(&c) {
                    *other = other.sub(&row.scale(&c));
                }
            }
            pivots.insert(lead, row);
            certificate.insert(head, r.provenance.clone());
        }
        let mut rewrites = BTreeMap::new();
        for (lead, row) in &pivots {
            let head = lead.as_var().expect("pivot is a symbol").clone();
            let rhs = row.sub(&ConstPoly::var(head.clone())).neg();
            rewrites.insert(head, rhs);
        }
        let irreducibles = lyndon_zeta_symbols(weight).into_iter().filter(|s| !rewrites.contains_key(s)).collect();
        table.levels.push(TableLevel { weight, rewrites, irreducibles, certificate });
        table.max_weight = weight;
    }
    Ok(table)
}

/// Which optional families to add to the double-shuffle relations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Families {
    pub duality: bool,
    pub hexagon: bool,
}

pub fn derive_all(max_w: usize, families: Families) -> Result<Vec<Relation>> {
    let mut rels = derive_double_shuffle(max_w)?;
    if families.duality {
        rels.extend(derive_duality(max_w)?);
    }
    if families.hexagon {
        rels.extend(hexagon_check(max_w.min(6))?);
    }
    Ok(rels)
}

pub fn build_table(max_w: usize, families: Families) -> Result<RelationTable> {
    let mut table = reduce_table(&derive_all(max_w, families)?)?;
    // Keep empty top levels visible when no relation reached them.
    while table.max_weight < max_w {
        let weight = table.max_weight + 1;
        let irreducibles = lyndon_zeta_symbols(weight);
        table.levels.push(TableLevel {
            weight,
            rewrites: BTreeMap::new(),
            irreducibles,
            certificate: BTreeMap::new(),
        });
        table.max_weight = weight;
    }
    Ok(table)
}

/// For each convergent Lyndon word `ℓ` of the product's alphabet with
/// weight `2..=max weight`, the polynomial `ℓ - E(rhs)` where `rhs` is the
/// table's rewrite of `ζ(ℓ)` and `E` realizes each monomial of irreducibles
/// as the named product of their Lyndon words. Irreducible `ℓ` give 0.
pub fn kernel_generators_with(table: &RelationTable, product: Product) -> Result<Vec<(Word, NCPoly<Rational>)>> {
    let alphabet = product.alphabet();
    let mut out = Vec::new();
    for l in crate::words::lyndon_generate(alphabet, table.max_weight) {
        if l.weight() < 2 || !l.is_convergent() {
            continue;
        }
        if alphabet == Alphabet::X && l.len() < 2 {
            continue;
        }
        let symbol = ConstSymbol::zeta_word(&l)?;
        let q = match table.rewrite(&symbol) {
            None => NCPoly::zero(alphabet),
            Some(rhs) => {
                let mut realized = NCPoly::<Rational>::zero(alphabet);
                for (m, c) in rhs.terms() {
                    let mut term = NCPoly::<Rational>::one(alphabet);
                    for (s, e) in m.factors() {
                        let ConstSymbol::Zeta(x) = s else {
                            return Err(Error::Precondition(format!("{s} has no word realization")));
                        };
                        let word = if alphabet == Alphabet::X { x.clone() } else { x.to_y().expect("convergent") };
                        for _ in 0..*e {
                            term = term.product(&NCPoly::from_word(word.clone()), product)?;
                        }
                    }
                    realized.add_scaled(&term, c);
                }
                NCPoly::from_word(l.clone()).sub(&realized)
            }
        };
        out.push((l, q));
    }
    Ok(out)
}

pub fn kernel_generators(max_w: usize, product: Product) -> Result<Vec<(Word, NCPoly<Rational>)>> {
    let table = build_table(max_w, Families::default())?;
    kernel_generators_with(&table, product)
}

/// Output of [`associator_perturb`].
#[derive(Clone, Debug)]
pub struct Associator {
    pub phi: TruncatedSeries<ConstPoly>,
    pub psi: TruncatedSeries<ConstPoly>,
    /// `(l, ⟨Φ|S_l⟩)` in decreasing Lyndon order.
    pub coordinates: Vec<(Word, ConstPoly)>,
    /// Relations read off `Ψ` with the coordinates taken as formal symbols.
    pub relations: Vec<Relation>,
}

/// `Φ = Z_⧢ exp(C)`, `Ψ = B'(y1) Π_Y Φ`, the coordinates of `Φ`, and the
/// relations `⟨Ψ|w⟩ = ψ_⧺(w)` where `ψ_⧺` is the quasi-shuffle character
/// with Lyndon values `⟨Ψ|ℓ⟩`, computed with the Lyndon values of `Φ` as
/// formal symbols.
pub fn associator_perturb(c: &TruncatedSeries<Rational>, max_w: usize) -> Result<Associator> {
    let cut = max_w.min(c.cutoff());
    let cp = c.poly().truncate(cut);
    let x0 = Word::letter(Letter::x0());
    let x1 = Word::letter(Letter::x1());
    if !cp.is_proper() || !Coeff::is_zero(&cp.coeff(&x0)) || !Coeff::is_zero(&cp.coeff(&x1)) {
        return Err(Error::Precondition("C must be proper with no letter terms".into()));
    }
    if c.alphabet() != Alphabet::X || !is_primitive(&cp, Product::Shuffle)? {
        return Err(Error::Precondition("C must be a Lie series over X".into()));
    }
    let z = build_z(Regularization::Shuffle, cut)?;
    let ec = TruncatedSeries::new(cp.map_coeffs(|_, r| ConstPoly::constant(r.clone())), cut).exp()?;
    let phi = z.mul(&ec)?;
    let coordinates = mrs_factorize(&phi, Product::Shuffle)?;
    if mrs_expand(&coordinates, Product::Shuffle, cut)? != phi {
        return Err(Error::Precondition("coordinates do not reconstruct Φ".into()));
    }
    // Φ is the shuffle character of its Lyndon values.
    for w in words_up_to(Alphabet::X, cut) {
        let q = radford_word(&w, Product::Shuffle)?;
        let v: ConstPoly = q.eval(|l| phi.coeff(l));
        if v != phi.coeff(&w) {
            return Err(Error::NotGroupLike(w.to_string(), "1".into()));
        }
    }
    let psi = bprime_series(cut)?.mul(&TruncatedSeries::new(project_y(phi.poly()), cut))?;

    // Formal route: Lyndon values of Φ become the symbols ζ(l).
    let formal_phi = build_z(Regularization::Shuffle, cut)?;
    let formal_psi = bprime_series(cut)?.mul(&TruncatedSeries::new(project_y(formal_phi.poly()), cut))?;
    let mut relations = Vec::new();
    for weight in 2..=cut {
        for w in words_of_weight(Alphabet::Y, weight) {
            let q = radford_word(&w, Product::Stuffle)?;
            let character: ConstPoly = q.eval(|l| formal_psi.coeff(l));
            let poly = character.sub(&formal_psi.coeff(&w));
            if !poly.is_zero() {
                relations.push(Relation::new(poly, Provenance::DoubleShuffle(w)));
            }
        }
    }
    Ok(Associator { phi, psi, coordinates, relations })
}

/// Iterated bracket `ad_{x0}^n x1`.
pub fn ad_word(n: usize) -> NCPoly<Rational> {
    let x0 = NCPoly::<Rational>::from_word(Word::letter(Letter::x0()));
    let mut p = NCPoly::from_word(Word::letter(Letter::x1()));
    for _ in 0..n {
        p = x0.bracket(&p).expect("same alphabet");
    }
    p
}

/// `x1 x0^{l1} ∘ (x1 x0^{l2} ∘ (… ∘ x1 x0^{lk}))` with `x1 x0^l ∘ P = x1 (x0^l ⧢ P)`.
fn composite_word(seq: &[usize]) -> NCPoly<Rational> {
    let x1 = NCPoly::<Rational>::from_word(Word::letter(Letter::x1()));
    let mut inner = NCPoly::<Rational>::one(Alphabet::X);
    for &l in seq.iter().rev() {
        let x0l = NCPoly::from_word(Word::x(&vec![0; l]));
        inner = x1.concat(&x0l.shuffle(&inner).expect("X")).expect("X");
    }
    inner
}

fn sequences(total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let used: usize = prefix.iter().map(|l| l + 1).sum();
    if used == total {
        out.push(prefix.clone());
        return;
    }
    for l in 0..(total - used) {
        prefix.push(l);
        sequences(total, prefix, out);
        prefix.pop();
    }
}

/// Coefficients of `Z_⧢` on the products `ad^{l1} x1 … ad^{lk} x1` of weight
/// `1..=max_w`: `(-1)^{Σ l_i} ζ_⧢(x1 x0^{l1} ∘ (… ∘ x1 x0^{lk}))`.
pub fn adjoint_expansion(max_w: usize) -> Result<Vec<(Vec<usize>, ConstPoly)>> {
    let mut out = Vec::new();
    for weight in 1..=max_w {
        let mut seqs = Vec::new();
        sequences(weight, &mut Vec::new(), &mut seqs);
        for seq in seqs {
            let sign = if seq.iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
            let mut value = ConstPoly::zero();
            for (w, c) in composite_word(&seq).terms() {
                value.add_assign(&zeta_shuffle_reg(w)?.scale(c));
            }
            out.push((seq, value.scale(&rat(sign, 1))));
        }
    }
    Ok(out)
}

/// `Σ coefficient · ad^{l1} x1 … ad^{lk} x1` (plus the constant 1).
pub fn expand_adjoint(terms: &[(Vec<usize>, ConstPoly)]) -> Result<NCPoly<ConstPoly>> {
    let mut out = NCPoly::<ConstPoly>::one(Alphabet::X);
    for (seq, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mut p = NCPoly::<Rational>::one(Alphabet::X);
        for &l in seq {
            p = p.concat(&ad_word(l))?;
        }
        out.add_scaled(&p, c);
    }
    Ok(out)
}
