//! Poincaré–Birkhoff–Witt bases indexed by Lyndon words with their dual
//! bases, Radford decomposition (words as polynomials in Lyndon words) and
//! factorization of group-like series `S = ∏↘ exp(c_l P_l)`.
//!
//! The dual family is `S_l = x S_u` for `l = x u` and
//! `S_w = S_l1^i1 ∙ … ∙ S_lk^ik / (i1! … ik!)` over the Lyndon factorization
//! of `w`, with `∙` the shuffle over X and the quasi-shuffle over Y. Over X
//! `P_l` is the bracketing of the standard factorization. Over Y bracketing
//! the letters does not give the dual of this family, so `P_w` is computed
//! by inverting the (unitriangular) pairing matrix of each weight slice;
//! it still factors as `P_l1 … P_lk`.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::commpoly::{CommPoly, Monomial};
use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, TruncatedSeries};
use crate::words::{lyndon_generate, words_of_weight, Alphabet, Word};
use crate::{Coeff, Rational};

pub use crate::ncpoly::Product;

#[derive(Clone, Debug, PartialEq)]
pub struct DualBasisPair {
    pub lyndon: Word,
    pub lie_elem: NCPoly<Rational>,
    pub dual: NCPoly<Rational>,
}

type Memo<V> = RwLock<HashMap<(Product, Word), Arc<V>>>;

struct Tables {
    lie: Memo<NCPoly<Rational>>,
    pbw: Memo<NCPoly<Rational>>,
    dual: Memo<NCPoly<Rational>>,
    radford: Memo<CommPoly<Word>>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| Tables {
        lie: RwLock::new(HashMap::new()),
        pbw: RwLock::new(HashMap::new()),
        dual: RwLock::new(HashMap::new()),
        radford: RwLock::new(HashMap::new()),
    })
}

fn lookup<V>(memo: &Memo<V>, key: &(Product, Word)) -> Option<Arc<V>> {
    memo.read().expect("basis memo poisoned").get(key).cloned()
}

fn store<V>(memo: &Memo<V>, key: (Product, Word), value: V) -> Arc<V> {
    let v = Arc::new(value);
    memo.write().expect("basis memo poisoned").entry(key).or_insert_with(|| v.clone()).clone()
}

fn check_side(w: &Word, product: Product) -> Result<()> {
    if !w.is_empty() && w.alphabet() != product.alphabet() {
        return Err(Error::WrongAlphabet(product.alphabet().symbol()));
    }
    Ok(())
}

/// The Lie element `P_l` of a Lyndon word.
pub fn lie_element(l: &Word, product: Product) -> Result<Arc<NCPoly<Rational>>> {
    check_side(l, product)?;
    if !l.is_lyndon() {
        return Err(Error::NotLyndon(l.to_string()));
    }
    let key = (product, l.clone());
    if let Some(p) = lookup(&tables().lie, &key) {
        return Ok(p);
    }
    let p = match product {
        Product::Shuffle if l.len() == 1 => NCPoly::from_word(l.clone()),
        Product::Shuffle => {
            let (u, v) = l.standard_factorization()?;
            lie_element(&u, product)?.bracket(&*lie_element(&v, product)?)?
        }
        Product::Stuffle => (*pbw_element(l, product)?).clone(),
    };
    Ok(store(&tables().lie, key, p))
}

/// `P_w`, the basis element dual to `S_w`. Over X it is computed as the
/// concatenation `P_l1 … P_lk` over the Lyndon factorization of `w`; over
/// Y by inverting the duals of the weight slice.
pub fn pbw_element(w: &Word, product: Product) -> Result<Arc<NCPoly<Rational>>> {
    check_side(w, product)?;
    let key = (product, w.clone());
    if let Some(p) = lookup(&tables().pbw, &key) {
        return Ok(p);
    }
    match product {
        Product::Shuffle => Ok(store(&tables().pbw, key, pbw_by_concatenation(w, product)?)),
        Product::Stuffle => {
            for (u, p) in pbw_by_inversion(product, w.weight())? {
                store(&tables().pbw, (product, u), p);
            }
            Ok(lookup(&tables().pbw, &key).expect("weight slice filled"))
        }
    }
}

/// `P_l1 … P_lk` for the nonincreasing Lyndon factorization of `w`.
pub fn pbw_by_concatenation(w: &Word, product: Product) -> Result<NCPoly<Rational>> {
    let mut p = NCPoly::one(product.alphabet());
    for l in w.lyndon_factorization() {
        p = p.concat(&*lie_element(&l, product)?)?;
    }
    Ok(p)
}

/// The dual basis element `S_w`: `S_l = x S_u` for a Lyndon word `l = x u`,
/// and `S_l1^i1 ∙ … ∙ S_lk^ik / (i1! … ik!)` for other words.
pub fn dual_element(w: &Word, product: Product) -> Result<Arc<NCPoly<Rational>>> {
    check_side(w, product)?;
    let key = (product, w.clone());
    if let Some(p) = lookup(&tables().dual, &key) {
        return Ok(p);
    }
    let p = if w.len() <= 1 {
        NCPoly::from_word(if w.is_empty() { Word::empty(product.alphabet()) } else { w.clone() })
    } else if w.is_lyndon() {
        let first = NCPoly::from_word(w.slice(0, 1));
        first.concat(&*dual_element(&w.slice(1, w.len()), product)?)?
    } else {
        dual_from_factorization(w, product)?
    };
    Ok(store(&tables().dual, key, p))
}

fn dual_from_factorization(w: &Word, product: Product) -> Result<NCPoly<Rational>> {
    let mut p = NCPoly::one(product.alphabet());
    let mut denom: u64 = 1;
    let factors = w.lyndon_factorization();
    let mut run = 0u64;
    for (i, l) in factors.iter().enumerate() {
        run = if i > 0 && factors[i - 1] == *l { run + 1 } else { 1 };
        denom *= run;
        p = p.product(&*dual_element(l, product)?, product)?;
    }
    Ok(p.scale(&crate::rat(1, denom as i64)))
}

/// Duals of all `P_w` of one weight by inverting the pairing matrix.
pub fn dual_by_inversion(product: Product, weight: usize) -> Result<Vec<(Word, NCPoly<Rational>)>> {
    let words = words_of_weight(product.alphabet(), weight);
    let family = words.iter().map(|w| pbw_element(w, product)).collect::<Result<Vec<_>>>()?;
    invert_unitriangular(&words, &family, true)
}

/// Basis elements `P_w` of one weight dual to the `S_w`, by inversion.
pub fn pbw_by_inversion(product: Product, weight: usize) -> Result<Vec<(Word, NCPoly<Rational>)>> {
    let words = words_of_weight(product.alphabet(), weight);
    let family = words.iter().map(|w| dual_element(w, product)).collect::<Result<Vec<_>>>()?;
    invert_unitriangular(&words, &family, false)
}

/// Given `F_w = w + (words > w)` (or `< w` when `upper` is false) for every
/// word `w` of `words` (sorted ascending), returns `G_u` with
/// `⟨G_u, F_v⟩ = δ_{u,v}`.
fn invert_unitriangular(
    words: &[Word],
    family: &[Arc<NCPoly<Rational>>],
    upper: bool,
) -> Result<Vec<(Word, NCPoly<Rational>)>> {
    let n = words.len();
    // Work in an index order where every row is supported at or after itself.
    let pos = |i: usize| if upper { i } else { n - 1 - i };
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, pos(i))).collect();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (i, w) in words.iter().enumerate() {
        let r = pos(i);
        let mut row = Vec::with_capacity(family[i].len());
        for (x, c) in family[i].terms() {
            let j = index[x];
            if j < r || (j == r && *c != Coeff::one()) {
                return Err(Error::Precondition(format!("basis element of {w} is not unitriangular at {x}")));
            }
            if j > r {
                row.push((j, c.clone()));
            }
        }
        row.sort_by_key(|(j, _)| *j);
        rows[r] = row;
    }
    let mut by_pos: Vec<&Word> = vec![&words[0]; n];
    for (i, w) in words.iter().enumerate() {
        by_pos[pos(i)] = w;
    }
    let mut out = Vec::with_capacity(n);
    for (i, u) in words.iter().enumerate() {
        let u_pos = pos(i);
        // a[u] = 1; a[v] = -Σ_{v < x <= u} a[x] ⟨F_v|x⟩.
        let mut a: BTreeMap<usize, Rational> = BTreeMap::new();
        a.insert(u_pos, Coeff::one());
        for v in (0..u_pos).rev() {
            let mut acc: Rational = Coeff::zero();
            for (x, m) in &rows[v] {
                if *x > u_pos {
                    break;
                }
                if let Some(ax) = a.get(x) {
                    acc -= ax * m;
                }
            }
            if !Coeff::is_zero(&acc) {
                a.insert(v, acc);
            }
        }
        let g = NCPoly::from_terms(words[0].alphabet(), a.into_iter().map(|(j, c)| (by_pos[j].clone(), c)));
        out.push((u.clone(), g));
    }
    Ok(out)
}

pub fn pbw_pair(l: &Word, product: Product) -> Result<DualBasisPair> {
    let lie_elem = lie_element(l, product)?;
    let dual = dual_element(l, product)?;
    Ok(DualBasisPair { lyndon: l.clone(), lie_elem: (*lie_elem).clone(), dual: (*dual).clone() })
}

/// The product of the Lyndon words `l1 ∙ … ∙ lk` of a monomial.
pub fn expand_monomial(m: &Monomial<Word>, product: Product) -> Result<NCPoly<Rational>> {
    let mut p = NCPoly::one(product.alphabet());
    for (l, e) in m.factors() {
        let lp = NCPoly::from_word(l.clone());
        for _ in 0..*e {
            p = p.product(&lp, product)?;
        }
    }
    Ok(p)
}

/// Inverse of [`radford_decompose`]: multiply out with the named product.
pub fn radford_expand(q: &CommPoly<Word>, product: Product) -> Result<NCPoly<Rational>> {
    let mut out = NCPoly::zero(product.alphabet());
    for (m, c) in q.terms() {
        out.add_scaled(&expand_monomial(m, product)?, c);
    }
    Ok(out)
}

/// Radford decomposition of a single word.
pub fn radford_word(w: &Word, product: Product) -> Result<Arc<CommPoly<Word>>> {
    check_side(w, product)?;
    let key = (product, w.clone());
    if let Some(q) = lookup(&tables().radford, &key) {
        return Ok(q);
    }
    let q = if w.is_empty() {
        CommPoly::one()
    } else if w.is_lyndon() {
        CommPoly::var(w.clone())
    } else {
        // l1 ∙ … ∙ lk = (i1! … ik!) w + strictly smaller words.
        let factors = w.lyndon_factorization();
        let m = Monomial::from_factors(factors.iter().map(|l| (l.clone(), 1)).collect());
        let expanded = expand_monomial(&m, product)?;
        let alpha = expanded.coeff(w);
        let mut q = CommPoly::monomial(m, Coeff::one());
        for (v, c) in expanded.terms() {
            if v == w {
                continue;
            }
            if v > w {
                return Err(Error::Precondition(format!("{v} exceeds leading word {w} of its product")));
            }
            q = q.sub(&radford_word(v, product)?.scale(c));
        }
        q.scale(&(Rational::from_integer(1.into()) / alpha))
    };
    Ok(store(&tables().radford, key, q))
}

/// The unique polynomial in Lyndon words whose expansion with the named
/// product is `p`.
pub fn radford_decompose(p: &NCPoly<Rational>, product: Product) -> Result<CommPoly<Word>> {
    let mut out = CommPoly::zero();
    for (w, c) in p.terms() {
        out.add_assign(&radford_word(w, product)?.scale(c));
    }
    Ok(out)
}

/// Coordinates `c_l = ⟨S | S_l⟩` of a group-like series, in decreasing
/// Lyndon order.
pub fn mrs_factorize<C: Coeff>(s: &TruncatedSeries<C>, product: Product) -> Result<Vec<(Word, C)>> {
    if s.alphabet() != product.alphabet() {
        return Err(Error::WrongAlphabet(product.alphabet().symbol()));
    }
    if let Some((u, v)) = s.grouplike_defect(product)? {
        return Err(Error::NotGroupLike(u.to_string(), v.to_string()));
    }
    let mut out = Vec::new();
    for l in lyndon_generate(product.alphabet(), s.cutoff()).into_iter().rev() {
        let c = s.poly().pair(&*dual_element(&l, product)?);
        out.push((l, c));
    }
    Ok(out)
}

/// `∏↘ exp(c_l P_l)` truncated at `cutoff`; factors are taken in the
/// order given, which should be decreasing.
pub fn mrs_expand<C: Coeff>(coords: &[(Word, C)], product: Product, cutoff: usize) -> Result<TruncatedSeries<C>> {
    let mut s = TruncatedSeries::one(product.alphabet(), cutoff);
    for (l, c) in coords {
        if c.is_zero() || l.weight() > cutoff {
            continue;
        }
        let mut arg = NCPoly::zero(product.alphabet());
        arg.add_scaled(&*lie_element(l, product)?, c);
        s = s.mul(&TruncatedSeries::new(arg, cutoff).exp()?)?;
    }
    Ok(s)
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    lyndon: Word,
    lie_elem: BTreeMap<String, String>,
    dual: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    alphabet: Alphabet,
    weight: usize,
    entries: Vec<CacheEntry>,
}

fn poly_to_map(p: &NCPoly<Rational>) -> BTreeMap<String, String> {
    p.terms().map(|(w, c)| (w.to_string(), c.to_string())).collect()
}

fn map_to_poly(alphabet: Alphabet, m: &BTreeMap<String, String>) -> Result<NCPoly<Rational>> {
    let mut p = NCPoly::zero(alphabet);
    for (w, c) in m {
        let word: Word = if w == "1" { Word::empty(alphabet) } else { w.parse()? };
        p.add_term(word, crate::parse_rational(c)?);
    }
    Ok(p)
}

/// Optional on-disk store of basis pairs, one JSON file per
/// (alphabet, weight).
#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: Option<PathBuf>,
}

impl BasisCache {
    pub fn memory() -> Self {
        BasisCache { dir: None }
    }

    pub fn at(dir: impl AsRef<Path>) -> Self {
        BasisCache { dir: Some(dir.as_ref().to_path_buf()) }
    }

    fn path(&self, product: Product, weight: usize) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(format!("basis-{}-{weight}.json", product.alphabet().symbol())))
    }

    /// Basis pairs for all Lyndon words of exactly `weight`, loading from
    /// or writing to disk when a directory is configured. Loaded entries
    /// seed the in-memory tables.
    pub fn pairs(&self, product: Product, weight: usize) -> Result<Vec<DualBasisPair>> {
        if let Some(path) = self.path(product, weight) {
            if path.exists() {
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Cache(e.to_string()))?;
                let file: CacheFile = serde_json::from_str(&text).map_err(|e| Error::Cache(e.to_string()))?;
                if file.alphabet != product.alphabet() || file.weight != weight {
                    return Err(Error::Cache(format!("{} holds other data", path.display())));
                }
                let mut out = Vec::with_capacity(file.entries.len());
                for e in file.entries {
                    let lie_elem = map_to_poly(file.alphabet, &e.lie_elem)?;
                    let dual = map_to_poly(file.alphabet, &e.dual)?;
                    store(&tables().lie, (product, e.lyndon.clone()), lie_elem.clone());
                    store(&tables().dual, (product, e.lyndon.clone()), dual.clone());
                    out.push(DualBasisPair { lyndon: e.lyndon, lie_elem, dual });
                }
                return Ok(out);
            }
        }
        let pairs = lyndon_generate(product.alphabet(), weight)
            .into_iter()
            .filter(|l| l.weight() == weight)
            .map(|l| pbw_pair(&l, product))
            .collect::<Result<Vec<_>>>()?;
        if let Some(path) = self.path(product, weight) {
            let file = CacheFile {
                alphabet: product.alphabet(),
                weight,
                entries: pairs
                    .iter()
                    .map(|p| CacheEntry {
                        lyndon: p.lyndon.clone(),
                        lie_elem: poly_to_map(&p.lie_elem),
                        dual: poly_to_map(&p.dual),
                    })
                    .collect(),
            };
            let json = serde_json::to_string_pretty(&file).map_err(|e| Error::Cache(e.to_string()))?;
            write_atomic(&path, json.as_bytes())?;
        }
        Ok(pairs)
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    use std::io::Write;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::Cache(e.to_string()))?;
    tmp.write_all(bytes).map_err(|e| Error::Cache(e.to_string()))?;
    tmp.persist(path).map_err(|e| Error::Cache(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(s: &str) -> NCPoly<Rational> {
        NCPoly::parse(s).unwrap()
    }

    #[test]
    fn pair_examples() {
        let pr = pbw_pair(&w("x0x1"), Product::Shuffle).unwrap();
        assert_eq!(pr.lie_elem, p("x0x1 - x1x0"));
        assert_eq!(pr.dual, p("x0x1"));
        let pr = pbw_pair(&w("x0"), Product::Shuffle).unwrap();
        assert_eq!(pr.lie_elem, p("x0"));
        assert_eq!(pr.dual, p("x0"));
        let pr = pbw_pair(&w("y2y1"), Product::Stuffle).unwrap();
        assert_eq!(pr.lie_elem, p("y2y1 - y1y2"));
        assert_eq!(pr.dual, p("y2y1"));
        assert!(pbw_pair(&w("x1x0"), Product::Shuffle).is_err());
        assert!(pbw_pair(&w("y1"), Product::Shuffle).is_err());
    }

    #[test]
    fn shuffle_duals_agree_with_inversion() {
        for weight in 1..=6 {
            for (u, s) in dual_by_inversion(Product::Shuffle, weight).unwrap() {
                assert_eq!(*dual_element(&u, Product::Shuffle).unwrap(), s, "{u}");
            }
        }
    }

    #[test]
    fn pbw_elements_factor_into_lie_elements() {
        for product in [Product::Shuffle, Product::Stuffle] {
            for weight in 1..=6 {
                for (u, p) in pbw_by_inversion(product, weight).unwrap() {
                    assert_eq!(*pbw_element(&u, product).unwrap(), p, "{u}");
                    assert_eq!(pbw_by_concatenation(&u, product).unwrap(), p, "{u}");
                }
            }
        }
    }

    #[test]
    fn lie_elements_are_primitive() {
        for product in [Product::Shuffle, Product::Stuffle] {
            for l in lyndon_generate(product.alphabet(), 6) {
                let p = lie_element(&l, product).unwrap();
                assert!(crate::ncpoly::is_primitive(&p, product).unwrap(), "{l}: {p}");
            }
        }
        assert_eq!(*lie_element(&w("y2"), Product::Stuffle).unwrap(), p("y2 - 1/2·y1y1"));
    }

    #[test]
    fn dual_is_triangular_towards_smaller_words() {
        for product in [Product::Shuffle, Product::Stuffle] {
            for l in lyndon_generate(product.alphabet(), 6) {
                let s = dual_element(&l, product).unwrap();
                assert_eq!(s.coeff(&l), rat(1, 1));
                assert!(s.words().all(|x| x <= &l), "{l}: {s}");
            }
        }
        assert_eq!(*dual_element(&w("x0x0x1x0x1"), Product::Shuffle).unwrap(), p("x0x0x1x0x1 + 2·x0x0x0x1x1"));
    }

    #[test]
    fn radford_examples() {
        let q = radford_decompose(&p("x1x0"), Product::Shuffle).unwrap();
        let expect = CommPoly::var(w("x0")).mul(&CommPoly::var(w("x1"))).sub(&CommPoly::var(w("x0x1")));
        assert_eq!(q, expect);
        let q = radford_decompose(&p("y1y2"), Product::Stuffle).unwrap();
        let expect = CommPoly::var(w("y1"))
            .mul(&CommPoly::var(w("y2")))
            .sub(&CommPoly::var(w("y2y1")))
            .sub(&CommPoly::var(w("y3")));
        assert_eq!(q, expect);
        assert_eq!(radford_decompose(&p("x0x1x1"), Product::Shuffle).unwrap(), CommPoly::var(w("x0x1x1")));
    }

    #[test]
    fn mrs_single_factor() {
        let arg = lie_element(&w("x0x1"), Product::Shuffle).unwrap().scale(&rat(3, 1));
        let s = TruncatedSeries::new(arg, 4).exp().unwrap();
        let coords = mrs_factorize(&s, Product::Shuffle).unwrap();
        for (l, c) in &coords {
            let expect = if *l == w("x0x1") { rat(3, 1) } else { rat(0, 1) };
            assert_eq!(*c, expect, "{l}");
        }
        assert_eq!(mrs_expand(&coords, Product::Shuffle, 4).unwrap(), s);
        let bad = TruncatedSeries::new(p("1 + x0x1"), 3);
        assert!(matches!(mrs_factorize(&bad, Product::Shuffle), Err(Error::NotGroupLike(..))));
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::at(dir.path());
        let first = cache.pairs(Product::Stuffle, 4).unwrap();
        assert!(dir.path().join("basis-y-4.json").exists());
        let second = cache.pairs(Product::Stuffle, 4).unwrap();
        assert_eq!(first, second);
        assert_eq!(first, BasisCache::memory().pairs(Product::Stuffle, 4).unwrap());
    }
}
