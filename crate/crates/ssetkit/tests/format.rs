use std::path::Path;

use ssetkit::format::{load_document, Document, SsetDoc};
use ssetkit_core::construct::product;
use ssetkit_core::homology::homology;
use ssetkit_core::SimplicialSet;

fn round_trip(x: &SimplicialSet) {
    let doc = SsetDoc::from_set(x);
    let text = serde_json::to_string(&doc).unwrap();
    let back: SsetDoc = serde_json::from_str(&text).unwrap();
    let y = back.load().unwrap().set;
    let labels = y.labels().unwrap().clone();
    assert_eq!(x.clone().with_labels(labels), y);
    assert_eq!(serde_json::to_string(&SsetDoc::from_set(&y)).unwrap(), text);
}

#[test]
fn simplicial_sets_round_trip() {
    let circle = SimplicialSet::circle();
    let torus = product(&circle, &circle, 2).unwrap().set;
    for x in [SimplicialSet::point(), SimplicialSet::standard(3), circle, torus, SimplicialSet::standard(4).truncate(2)] {
        round_trip(&x);
    }
    // the 2-sphere has degenerate faces
    let sphere: SsetDoc = serde_json::from_str(
        r#"{"dims": {"0": ["v"], "1": [], "2": [{"id": "s", "faces": [{"base": "v", "degs": [0]}, {"base": "v", "degs": [0]}, {"base": "v", "degs": [0]}]}]}}"#,
    )
    .unwrap();
    let s2 = sphere.load().unwrap().set;
    assert_eq!(homology(&s2, 2).unwrap(), homology(&SimplicialSet::standard(3).skeleton(2), 2).unwrap());
    round_trip(&s2);
}

#[test]
fn bundled_documents_load() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut kinds = Vec::new();
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let doc = load_document(&path, 3).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if let Document::Set(x) = &doc {
            x.set.check_identities().unwrap();
        }
        kinds.push(doc.kind());
    }
    kinds.sort_unstable();
    kinds.dedup();
    assert_eq!(kinds.len(), 4, "{kinds:?}");
}

#[test]
fn torus_file_matches_the_product() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let Document::Set(t) = load_document(&dir.join("torus.json"), 3).unwrap() else { panic!() };
    let circle = SimplicialSet::circle();
    let p = product(&circle, &circle, 3).unwrap().set;
    assert_eq!(homology(&t.set, 2).unwrap(), homology(&p, 2).unwrap());
    assert_eq!(t.set.counts(), p.counts());
}
