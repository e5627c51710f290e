use opident::golden;

#[test]
fn every_golden_file_reparses() {
    let results = golden::lint();
    assert_eq!(results.len(), golden::ALL.len());
    for r in &results {
        assert!(r.ok(), "{}: {:?}", r.name, r.errors);
        assert!(r.items > 0, "{} is empty", r.name);
    }
}

#[test]
fn item_counts() {
    let counts: std::collections::BTreeMap<&str, usize> = golden::lint().into_iter().map(|r| (r.name, r.items)).collect();
    assert_eq!(counts["p2q123"], 19);
    assert_eq!(counts["basis32"], 20);
    assert_eq!(counts["basis33"], 50);
    assert_eq!(counts["conmat21"], 20);
    assert_eq!(counts["conmat22"], 50);
    assert_eq!(counts["case1matrixB"], 34);
    assert_eq!(counts["gb93"], 93);
    assert_eq!(counts["theorem21"], 6);
    assert_eq!(counts["theorem22"], 20);
}

#[test]
fn headers_name_the_source() {
    for (name, text) in golden::ALL {
        let h = golden::header(text);
        assert!(h[0].contains("Bremner & Elgendy"), "{name}");
    }
}
