use noble_core::engine::{build_representation, coset_family, verify_representation, wagner_preston};
use noble_core::io::{
    emit_cayley, emit_generators, input_digest, parse_cayley, parse_generators, to_json, CertificateDocument,
    RepresentationDocument,
};
use noble_core::oracle::{are_isomorphic, generate_corpus};
use noble_core::{catalog, decide_nobility, EngineConfig, Filter};

#[test]
fn corpus_tables_survive_the_text_format() {
    for s in generate_corpus(16).unwrap() {
        let back = parse_cayley(&emit_cayley(&s)).unwrap();
        assert_eq!(back.rows(), s.rows());
        assert_eq!(back.name(), s.name());
    }
}

#[test]
fn certificates_are_reproducible() {
    let config = EngineConfig::default();
    for s in generate_corpus(8).unwrap() {
        let text = emit_cayley(&s);
        let render = || {
            let t = parse_cayley(&text).unwrap();
            let cert = decide_nobility(&t, &config).unwrap();
            to_json(&CertificateDocument::new(&cert, input_digest(text.as_bytes()))).unwrap()
        };
        let first = render();
        assert_eq!(first, render());
        let doc: CertificateDocument = serde_json::from_str(&first).unwrap();
        assert_eq!(to_json(&doc).unwrap(), first);
        assert_eq!(doc.input_digest.len(), 64);
    }
}

#[test]
fn witness_document_for_i2() {
    let text = emit_cayley(&catalog::i2());
    let cert = decide_nobility(&parse_cayley(&text).unwrap(), &EngineConfig::default()).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&to_json(&CertificateDocument::new(&cert, input_digest(text.as_bytes()))).unwrap())
            .unwrap();
    assert_eq!(json["verdict"], "noble");
    assert_eq!(json["witness"]["H"], serde_json::json!([1, 5]));
    assert_eq!(json["witness"]["degree"], 2);
    assert_eq!(json["witness"]["flags"]["is_transitive"], "verified-true");
    assert_eq!(json["findings"][0]["kind"], "family_check_failed");
}

#[test]
fn representation_documents_round_trip() {
    let s3 = catalog::symmetric_group_3();
    let h = Filter::from_elements(&s3, [0, 1]).or_else(|| Filter::from_elements(&s3, [0, 2])).unwrap();
    let rep = verify_representation(&s3, build_representation(&s3, coset_family(&s3, &h).unwrap()).unwrap());
    let doc = RepresentationDocument::from_representation(&rep);
    let back: RepresentationDocument = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
    let rebuilt = verify_representation(&s3, back.to_representation(&s3).unwrap());
    assert_eq!(rebuilt.action(), rep.action());
    assert_eq!(rebuilt.flags(), rep.flags());
}

#[test]
fn wagner_preston_generators_regenerate_the_semigroup() {
    for s in generate_corpus(8).unwrap() {
        let (family, maps) = wagner_preston(&s);
        let back = parse_generators(&emit_generators(family.degree(), &maps)).unwrap();
        assert_eq!(back.len(), s.order());
        assert!(are_isomorphic(&back.abstract_table().unwrap().table, &s).is_some(), "{:?}", s.name());
    }
}
