mod support;

use lexfun::avm::{struct_equal, unify, FeatureStructure};
use lexfun::default_overwrite;
use rand::rngs::StdRng;
use rand::SeedableRng;
use support::{random_fs, random_fs_over, sorts};

#[test]
fn identity_and_idempotence() {
    let h = sorts();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..1000 {
        let x = random_fs(&mut rng, 6);
        assert!(
            struct_equal(&default_overwrite(&x, &FeatureStructure::top(), &h), &x),
            "x={x}"
        );
        assert!(struct_equal(&default_overwrite(&x, &x, &h), &x), "x={x}");
    }
}

#[test]
fn right_absorption() {
    let h = sorts();
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..2000 {
        let x = random_fs(&mut rng, 6);
        let y = random_fs(&mut rng, 6);
        let once = default_overwrite(&x, &y, &h);
        let twice = default_overwrite(&once, &y, &h);
        assert!(
            struct_equal(&once, &twice),
            "x={x}\ny={y}\nonce={once}\ntwice={twice}"
        );
    }
}

#[test]
fn subentry_values_and_sharing_win() {
    let h = sorts();
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..2000 {
        let x = random_fs(&mut rng, 6);
        let y = random_fs(&mut rng, 6);
        let out = default_overwrite(&x, &y, &h);
        let ys = support::paths(&y);
        for (p, n) in &ys {
            for (q, m) in &ys {
                if n == m {
                    let (p, q) = (lexfun::Path(p.clone()), lexfun::Path(q.clone()));
                    assert_eq!(
                        out.path_node(&p),
                        out.path_node(&q),
                        "x={x}\ny={y}\nout={out}"
                    );
                }
            }
        }
        for (p, node) in ys {
            if let lexfun::avm::NodeKind::Atomic(v) = &y.node(node).kind {
                let path = lexfun::Path(p.clone());
                assert_eq!(
                    out.atom_at(&path),
                    Some(v.as_str()),
                    "x={x}\ny={y}\nout={out}"
                );
            }
        }
    }
}

#[test]
fn agrees_with_unify_on_disjoint_paths() {
    let h = sorts();
    let mut rng = StdRng::seed_from_u64(13);
    let mut checked = 0;
    while checked < 1000 {
        let x = random_fs_over(&mut rng, 6, &["F", "G", "H"]);
        let y = random_fs_over(&mut rng, 6, &["I", "J", "K"]);
        let Ok(u) = unify(&x, &y, &h) else { continue };
        assert!(
            struct_equal(&default_overwrite(&x, &y, &h), &u),
            "x={x}\ny={y}"
        );
        checked += 1;
    }
}

#[test]
fn agrees_with_unify_whenever_compatible() {
    let h = sorts();
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..3000 {
        let x = random_fs(&mut rng, 6);
        let y = random_fs(&mut rng, 6);
        if let Ok(u) = unify(&x, &y, &h) {
            assert!(
                struct_equal(&default_overwrite(&x, &y, &h), &u),
                "x={x}\ny={y}"
            );
        }
    }
}

#[test]
fn sort_clash_on_shared_node() {
    let h = sorts();
    let x = FeatureStructure::parse("[top F: #1 [r] G: #1]").unwrap();
    let y = FeatureStructure::parse("[t F: #1 c G: [r] H: [top F: #1]]").unwrap();
    let once = default_overwrite(&x, &y, &h);
    assert_eq!(once.to_string(), "[t F: #1 c G: [r] H: [top F: #1]]");
    assert!(struct_equal(&default_overwrite(&once, &y, &h), &once));
}
