use cubic_hecke::braid::BraidWord;
use cubic_hecke::error::Error;
use cubic_hecke::exact::{exact_algebra, reduce_word};
use cubic_hecke::rewrite::{cache_len, rewriter, Rewriter};

#[test]
fn rules_have_unique_ids() {
    let r = rewriter(3).unwrap();
    let mut ids: Vec<&str> = r.rules().iter().map(|r| r.id).collect();
    let len = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), len);
}

#[test]
fn rules_agree_with_tables() {
    let alg = exact_algebra(3).unwrap();
    let r = rewriter(3).unwrap();
    for text in [
        "1 1 1",
        "-2 1 -2 1 -2 1",
        "2 -1 2 -1 2",
        "1 2 1 -2 -1 -2",
        "-1 -1 -2 -2",
    ] {
        let word = BraidWord::parse(3, text).unwrap();
        let (x, trace) = r.normal_form(&word).unwrap();
        assert_eq!(x, alg.word_element(&word).unwrap(), "{text}");
        assert!(!trace.steps.is_empty() || word.len() <= 1);
    }
    assert!(cache_len() > 0);
}

#[test]
fn depth_limit_gives_irreducible() {
    let mut r = Rewriter::new(3);
    r.depth_limit = 0;
    let word = BraidWord::parse(3, "2 -1 2 -1 2 -1 2 -1").unwrap();
    assert!(matches!(
        r.normal_form(&word),
        Err(Error::IrreducibleWord { .. })
    ));
    assert!(matches!(
        reduce_word(&word, Some(0)),
        Err(Error::IrreducibleWord { .. })
    ));
}

#[test]
fn level4_words() {
    let w = BraidWord::parse(4, "1 2 3 1 2 1").unwrap();
    let (x, trace) = reduce_word(&w, None).unwrap();
    assert!(trace.is_none());
    let alg = exact_algebra(4).unwrap();
    assert_eq!(
        alg.multiply(&x, &alg.word_element(&w.inverse()).unwrap())
            .unwrap(),
        alg.one()
    );
}
