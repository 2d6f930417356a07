use cubic_hecke::braid::{special, BraidWord, SPECIAL_NAMES};

fn w(n: usize, l: &[i8]) -> BraidWord {
    BraidWord::new(n, l.to_vec()).unwrap()
}

#[test]
fn free_reduction() {
    assert_eq!(w(4, &[1, 2, -2, -1, 3]).free_reduce(), w(4, &[3]));
    assert_eq!(
        w(3, &[1, 2]).concat(&w(3, &[-2, 1])).unwrap(),
        w(3, &[1, 1])
    );
}

#[test]
fn inverse_shift_mirror() {
    let x = w(4, &[1, -2, 3]);
    assert_eq!(x.inverse(), w(4, &[-3, 2, -1]));
    assert!(x.concat(&x.inverse()).unwrap().is_empty());
    assert_eq!(x.shift().letters, vec![2, -3, 4]);
    assert_eq!(x.shift().n, 5);
    assert_eq!(x.mirror(), w(4, &[3, -2, 1]));
    assert_eq!(x.ad_delta().unwrap(), w(4, &[3, -2, 1]));
}

#[test]
fn range_checks() {
    assert!(BraidWord::new(3, vec![3]).is_err());
    assert!(BraidWord::new(3, vec![0]).is_err());
    assert!(BraidWord::parse(3, "1 x").is_err());
    assert_eq!(BraidWord::parse(3, " 1 -2  1 ").unwrap(), w(3, &[1, -2, 1]));
}

#[test]
fn special_names_resolve() {
    for name in SPECIAL_NAMES {
        assert!(special(name, 5).is_ok(), "{name}");
    }
    assert!(special("nope", 5).is_err());
    assert_eq!(special("delta_garside", 4).unwrap().len(), 6);
}
