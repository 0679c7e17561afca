use polyzeta::constants::ConstSymbol;
use polyzeta::numerics::{verify_poly, EvalContext};
use polyzeta::regularize::{regularize_poly, Regularization};
use polyzeta::relations::{build_table, derive_duality, kernel_generators_with, Families, RelationTable};
use polyzeta::Product;

#[test]
fn rewrites_use_only_irreducibles() {
    let table = build_table(7, Families::default()).unwrap();
    let irreducibles = table.irreducibles();
    for level in &table.levels {
        for (head, rhs) in &level.rewrites {
            assert_eq!(head.weight(), level.weight);
            assert!(rhs.is_homogeneous() && rhs.weight() == level.weight, "{head} -> {rhs}");
            for s in rhs.variables() {
                assert!(irreducibles.contains(&s), "{head} -> {rhs} uses {s}");
            }
        }
        let reducible: Vec<&ConstSymbol> = level.rewrites.keys().collect();
        assert!(level.irreducibles.iter().all(|s| !reducible.contains(&s)));
    }
    for r in table.relations() {
        let once = table.normalize(&r.poly).unwrap();
        assert!(once.is_zero());
    }
}

#[test]
fn kernel_generators_vanish_symbolically_and_numerically() {
    let table = build_table(6, Families::default()).unwrap();
    let ctx = EvalContext::new(40).with_tolerance(1e-25);
    for (product, kind) in [(Product::Stuffle, Regularization::Stuffle), (Product::Shuffle, Regularization::Shuffle)] {
        for (l, q) in kernel_generators_with(&table, product).unwrap() {
            let image = regularize_poly(kind, &q).unwrap();
            assert!(table.normalize(&image).unwrap().is_zero(), "{l}");
            let (ok, residual) = verify_poly(&image, &ctx).unwrap();
            assert!(ok, "{l}: {residual}");
        }
    }
}

#[test]
fn duality_is_reported_as_implied() {
    let table = build_table(7, Families::default()).unwrap();
    let implied = table.implied(&derive_duality(7).unwrap()).unwrap();
    assert!(!implied.is_empty());
    assert!(implied.iter().all(|b| *b));
}

#[test]
fn exports_round_trip_and_are_deterministic() {
    let table = build_table(5, Families { duality: true, hexagon: true }).unwrap();
    let json = table.to_json();
    assert_eq!(RelationTable::from_json(&json).unwrap(), table);
    let again = build_table(5, Families { duality: true, hexagon: true }).unwrap();
    assert_eq!(serde_json::to_string(&again.to_json()).unwrap(), serde_json::to_string(&json).unwrap());
    assert!(table.to_markdown().contains("| weight |"));
    assert!(table.to_csv().starts_with("weight,head,rhs"));
}
