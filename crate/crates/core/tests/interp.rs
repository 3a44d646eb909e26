use nclogic::interp::{
    check_embed, decode_kuratowski, hat_embed, kuratowski_checked, verify_check_iso, verify_hat_iso, HFSet,
};
use nclogic::universe::Universe;

#[test]
fn check_map_is_injective_on_hf_level_4() {
    let u = Universe::new();
    let level = HFSet::level(4);
    let mut images: Vec<_> = level.iter().map(|&x| check_embed(&u, x)).collect();
    assert!(images.iter().all(|&y| u.is_classical(y)));
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 16);
    assert!(verify_check_iso(&u, 4).unwrap().passed());
}

#[test]
fn kuratowski_decodes() {
    let u = Universe::new();
    let w2 = u.enumerate_level(2).unwrap();
    let classical: Vec<_> = w2.iter().copied().filter(|&x| u.is_classical(x)).collect();
    for &a in &classical {
        for &b in &classical {
            let k = kuratowski_checked(&u, a, b).unwrap();
            assert_eq!(decode_kuratowski(&u, k), Some((a, b)));
        }
    }
    let odd = w2.iter().copied().find(|&x| !u.is_classical(x)).unwrap();
    assert!(kuratowski_checked(&u, odd, odd).is_err());
}

#[test]
fn hat_map_is_classical_and_injective() {
    let u = Universe::new();
    let w2 = u.enumerate_level(2).unwrap();
    let mut hats: Vec<_> = w2.iter().map(|&x| hat_embed(&u, x)).collect();
    assert!(hats.iter().all(|&h| u.is_classical(h)));
    hats.sort();
    hats.dedup();
    assert_eq!(hats.len(), w2.len());
    assert!(verify_hat_iso(&u, 2).unwrap().passed());
    assert!(verify_hat_iso(&u, 9).is_err());
}
