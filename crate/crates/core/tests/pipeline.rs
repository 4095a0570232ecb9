use fuzzcrypt_core::cipher::encrypt_content_with;
use fuzzcrypt_core::fuzzy::fuzzify_with;
use fuzzcrypt_core::select::relevance_scores_with;
use fuzzcrypt_core::*;

fn default_categories() -> CategorySet {
    CategorySet::new(
        vec![
            FuzzyCategory::new("lowercase", 109.5, 7.5, 1.0).unwrap(),
            FuzzyCategory::new("uppercase", 77.5, 7.5, 1.0).unwrap(),
            FuzzyCategory::new("digits", 52.5, 2.6, 1.0).unwrap(),
        ],
        MembershipKind::default(),
    )
    .unwrap()
}

const PAGE: &str = r#"<html><head><style>p{}</style></head><body>
<h1>Order #1042 shipped</h1><p>Hi Sam &amp; Jo, your parcel (2 items) left Leeds today.</p>
<script>track("x")</script></body></html>"#;

#[test]
fn html_to_selective_round_trip() {
    let text = extract_text_from_html(PAGE);
    assert_eq!(text, "Order #1042 shipped Hi Sam & Jo, your parcel (2 items) left Leeds today.");

    let cats = default_categories();
    let stream = featurize(&text, Encoding::CodePoint);
    let matrix = fuzzify(&stream.crisp_values(), &cats).unwrap();
    let scores = relevance_scores(&matrix, &cats).unwrap();
    let picked = select_top_k(&scores, 10).unwrap();
    assert_eq!(picked.len(), 10);

    let table = generate_table(b"parcel", &Alphabet::default()).unwrap();
    let doc = selective_encrypt(&text, &table, &picked).unwrap();
    assert!(doc.manifest.iter().all(|i| picked.indices().contains(i)));

    let parsed = EncryptedDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(selective_decrypt(&parsed, &table).unwrap(), text);

    let wrong = generate_table(b"parcels", &Alphabet::default()).unwrap();
    assert!(matches!(selective_decrypt(&parsed, &wrong), Err(Error::WrongKey { .. })));
}

#[test]
fn selection_picks_letters_closest_to_category_centres() {
    let cats = default_categories();
    // 'm' and 'n' sit next to the lowercase centre 109.5, 'M' and 'N' next
    // to the uppercase one; punctuation is far from everything
    let text = "m!N?n.M";
    let scores = relevance_scores(&fuzzify(&featurize(text, Encoding::CodePoint).crisp_values(), &cats).unwrap(), &cats)
        .unwrap();
    let picked = select_top_k(&scores, 4).unwrap();
    assert_eq!(picked.indices(), &[0, 2, 4, 6]);
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    let cats = default_categories();
    let text: String = "Fuzzy membership, 4 categories & a key! ".repeat(2_000);
    let values = featurize(&text, Encoding::CodePoint).crisp_values();
    let a = fuzzify_with(&values, &cats, Execution::Sequential).unwrap();
    let b = fuzzify_with(&values, &cats, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    let sa = relevance_scores_with(&a, &cats, Execution::Sequential).unwrap();
    let sb = relevance_scores_with(&b, &cats, Execution::Parallel).unwrap();
    assert_eq!(sa, sb);
    let table = generate_table(b"k", &Alphabet::default()).unwrap();
    let big = text.repeat(20);
    assert_eq!(
        encrypt_content_with(&big, &table, Execution::Sequential),
        encrypt_content_with(&big, &table, Execution::Parallel)
    );
}

#[test]
fn fuzzify_then_defuzzify_recovers_single_centre() {
    let cats = CategorySet::new(vec![FuzzyCategory::new("c", 100.0, 4.0, 1.0).unwrap()], MembershipKind::Gaussian).unwrap();
    let m = fuzzify(&[3.0, 100.0, 250.0], &cats).unwrap();
    for row in m.iter_rows() {
        assert_eq!(defuzzify(row, &cats).unwrap(), 100.0);
    }
}
