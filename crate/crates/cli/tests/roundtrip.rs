use krasner::kernel::verify_axioms;
use krasner_cli::generator::{random_hyperrings, DEFAULT_BUDGET};
use krasner_cli::FixtureDocument;
use proptest::prelude::*;

#[test]
fn bundled_fixtures_round_trip() {
    for doc in FixtureDocument::bundled() {
        let again = FixtureDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(doc, again, "{}", doc.name);
        let ring = doc.to_ring().unwrap();
        assert_eq!(
            FixtureDocument::from_ring(&ring)
                .to_ring()
                .unwrap()
                .add_table(),
            ring.add_table()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_rings_verify_and_round_trip(seed in any::<u64>()) {
        let ring = random_hyperrings(seed, 1, DEFAULT_BUDGET).pop().unwrap().unwrap();
        prop_assert!(verify_axioms(&ring).passed());
        let doc = FixtureDocument::from_ring(&ring);
        let back = FixtureDocument::parse(&doc.to_json()).unwrap().to_ring().unwrap();
        prop_assert_eq!(back.add_table(), ring.add_table());
        prop_assert_eq!(back.mul_table(), ring.mul_table());
        prop_assert_eq!(FixtureDocument::from_ring(&back), doc);
    }
}
