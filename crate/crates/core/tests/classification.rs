use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torusgcd::curves::{classify_triangles, decompose_chain, simple_curves};
use torusgcd::families;
use torusgcd::*;

#[test]
fn fixtures_have_two_uncontractible_triangles() {
    for s in 2..=8 {
        let fx = families::bm_lambda0_prime(s).unwrap();
        let classes = classify_triangles(&fx.surface).unwrap();
        let uc = classes.iter().filter(|c| **c == TriangleClass::Uncontractible).count();
        assert_eq!(uc, 2);
    }
}

#[test]
fn flips_reach_a_triangle_homotopic_to_the_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut s = families::bm_lambda0_prime(5).unwrap().surface;
    let mut found = None;
    for _ in 0..500 {
        let classes = classify_triangles(&s).unwrap();
        let internal_htb = classes.iter().enumerate().any(|(t, c)| {
            *c == TriangleClass::HomotopicToBoundary && s.arc_sides(TriangleId(t)) == 3
        });
        if internal_htb {
            found = Some((s.clone(), classes));
            break;
        }
        let arcs: Vec<EdgeId> = (0..s.edges().len()).map(EdgeId).filter(|e| s.is_arc(*e)).collect();
        if let Some(next) = s.flip(*arcs.choose(&mut rng).unwrap()) {
            s = next;
        }
    }
    let (s, classes) = found.expect("no internal triangle homotopic to the boundary within 500 flips");
    let q = build_quiver(&s);
    let mut split = 0;
    for c in simple_curves(&s, 300) {
        let chain = chain_of(&c, &q).unwrap();
        if let Ok((bb, uc)) = decompose_chain(&chain, &q, &classes) {
            assert_eq!(&bb + &uc, chain);
            split += 1;
        }
    }
    assert!(split > 0);
    let inside = q
        .arrows()
        .iter()
        .find(|a| classes[a.triangle.0] == TriangleClass::HomotopicToBoundary)
        .unwrap();
    let mut unit = ArrowChain::zero(q.arrows().len());
    unit.0[inside.id.0] = 1;
    assert!(matches!(decompose_chain(&unit, &q, &classes), Err(Error::InvalidCurve(_))));
}
