use polyzeta::bases::lie_element;
use polyzeta::ncpoly::{is_primitive, residual_left, residual_right};
use polyzeta::numerics::{mzv_word, EvalContext};
use polyzeta::words::lyndon_generate;
use polyzeta::{rat, Alphabet, NCPoly, Product, Rational, TruncatedSeries, Word};
use proptest::prelude::*;
use std::sync::OnceLock;

fn x_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..=1, 0..5).prop_map(|v| Word::x(&v))
}

fn y_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(1u32..=3, 0..4).prop_map(|v| Word::y(&v))
}

fn x_poly() -> impl Strategy<Value = NCPoly<Rational>> {
    prop::collection::vec((x_word(), -5i64..=5), 0..4)
        .prop_map(|terms| NCPoly::from_terms(Alphabet::X, terms.into_iter().map(|(w, c)| (w, rat(c, 1)))))
}

fn p(w: &Word) -> NCPoly<Rational> {
    NCPoly::from_word(w.clone())
}

fn ctx() -> &'static EvalContext {
    static CTX: OnceLock<EvalContext> = OnceLock::new();
    CTX.get_or_init(|| EvalContext::new(30))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shuffle_is_commutative_and_associative(u in x_word(), v in x_word(), w in x_word()) {
        let uv = p(&u).shuffle(&p(&v)).unwrap();
        prop_assert_eq!(&uv, &p(&v).shuffle(&p(&u)).unwrap());
        let left = uv.shuffle(&p(&w)).unwrap();
        let right = p(&u).shuffle(&p(&v).shuffle(&p(&w)).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn stuffle_is_commutative_and_associative(u in y_word(), v in y_word(), w in y_word()) {
        let uv = p(&u).stuffle(&p(&v)).unwrap();
        prop_assert_eq!(&uv, &p(&v).stuffle(&p(&u)).unwrap());
        let left = uv.stuffle(&p(&w)).unwrap();
        let right = p(&u).stuffle(&p(&v).stuffle(&p(&w)).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn residuals_by_letters_are_shuffle_derivations(u in x_poly(), v in x_poly(), letter in 0u32..=1) {
        let x = p(&Word::x(&[letter]));
        let uv = u.shuffle(&v).unwrap();
        let left = residual_left(&x, &u).shuffle(&v).unwrap().add(&u.shuffle(&residual_left(&x, &v)).unwrap());
        prop_assert_eq!(residual_left(&x, &uv), left);
        let right = residual_right(&u, &x).shuffle(&v).unwrap().add(&u.shuffle(&residual_right(&v, &x)).unwrap());
        prop_assert_eq!(residual_right(&uv, &x), right);
    }

    #[test]
    fn reconstruction_from_right_residuals(s in x_poly()) {
        let mut rebuilt = NCPoly::term(Word::empty(Alphabet::X), s.coeff(&Word::empty(Alphabet::X)));
        for letter in [0u32, 1] {
            let x = p(&Word::x(&[letter]));
            rebuilt = rebuilt.add(&x.concat(&residual_right(&s, &x)).unwrap());
        }
        prop_assert_eq!(rebuilt, s);
    }

    #[test]
    fn exponentials_of_lie_series_are_grouplike(coeffs in prop::collection::vec(-4i64..=4, 5)) {
        let mut lie = NCPoly::<Rational>::zero(Alphabet::X);
        for (l, c) in lyndon_generate(Alphabet::X, 3).iter().zip(&coeffs) {
            lie.add_scaled(&lie_element(l, Product::Shuffle).unwrap(), &rat(*c, 1));
        }
        let g = TruncatedSeries::new(lie.clone(), 4).exp().unwrap();
        prop_assert!(g.grouplike_check(Product::Shuffle).unwrap());
        let back = g.log().unwrap();
        prop_assert!(is_primitive(back.poly(), Product::Shuffle).unwrap());
        prop_assert_eq!(back.poly(), &lie.truncate(4));
        // A non-primitive square term breaks group-likeness.
        let bent = TruncatedSeries::new(lie.add(&NCPoly::parse("x0x0").unwrap()), 4).exp().unwrap();
        prop_assert!(!bent.grouplike_check(Product::Shuffle).unwrap());
    }

    #[test]
    fn stuffle_is_multiplicative_numerically(u in prop::collection::vec(1u32..=3, 1..3), v in prop::collection::vec(1u32..=3, 1..3)) {
        let mut u = u;
        let mut v = v;
        u[0] += 1;
        v[0] += 1;
        let (u, v) = (Word::y(&u), Word::y(&v));
        prop_assume!(u.weight() + v.weight() <= 8);
        let c = ctx();
        let lhs = mzv_word(&u, c).unwrap().mul(&mzv_word(&v, c).unwrap());
        let mut rhs = polyzeta::numerics::BigReal::zero(c.bits());
        for (w, k) in p(&u).stuffle(&p(&v)).unwrap().terms() {
            rhs = rhs.add(&mzv_word(w, c).unwrap().mul(&polyzeta::numerics::BigReal::from_rational(k, c.bits())));
        }
        prop_assert!(lhs.overlaps(&rhs), "{} {}", u, v);
    }

    #[test]
    fn shuffle_is_multiplicative_numerically(u in prop::collection::vec(0u32..=1, 0..3), v in prop::collection::vec(0u32..=1, 0..3)) {
        let wrap = |mid: Vec<u32>| {
            let mut w = vec![0];
            w.extend(mid);
            w.push(1);
            Word::x(&w)
        };
        let (u, v) = (wrap(u), wrap(v));
        let c = ctx();
        let lhs = mzv_word(&u, c).unwrap().mul(&mzv_word(&v, c).unwrap());
        let mut rhs = polyzeta::numerics::BigReal::zero(c.bits());
        for (w, k) in p(&u).shuffle(&p(&v)).unwrap().terms() {
            rhs = rhs.add(&mzv_word(w, c).unwrap().mul(&polyzeta::numerics::BigReal::from_rational(k, c.bits())));
        }
        prop_assert!(lhs.overlaps(&rhs), "{} {}", u, v);
    }

    #[test]
    fn lyndon_factorization_reassembles(w in x_word(), y in y_word()) {
        for word in [w, y] {
            let factors = word.lyndon_factorization();
            prop_assert!(factors.windows(2).all(|f| f[0] >= f[1]));
            prop_assert!(factors.iter().all(|f| f.is_lyndon()));
            let mut joined = Word::empty(word.alphabet());
            for f in &factors {
                joined = joined.concat(f);
            }
            prop_assert_eq!(joined, word);
        }
    }

    #[test]
    fn bounds_hold_under_precision_doubling(mid in prop::collection::vec(0u32..=1, 0..4)) {
        let mut w = vec![0];
        w.extend(mid);
        w.push(1);
        let w = Word::x(&w);
        let low = EvalContext::new(20);
        let high = EvalContext::new(40);
        let a = mzv_word(&w, &low).unwrap();
        let b = mzv_word(&w, &high).unwrap();
        prop_assert!(a.overlaps(&b));
        prop_assert!(a.sub(&b).magnitude_bound() <= a.error_bound() * 2.0 + b.error_bound() * 2.0);
    }
}
