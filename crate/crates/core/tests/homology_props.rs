mod common;

use common::*;
use depthlab_core::homology::{good_truncation_below, koszul, tensor_resolution, tor, ChainComplex};
use depthlab_core::resolve::{minimal_free_resolution, PresentedModule};
use proptest::prelude::*;

const MAX_D: i32 = 6;

proptest! {
    #![proptest_config(config(200, 0x5eed_0006))]

    #[test]
    fn constructed_complexes_square_to_zero(ring in 0usize..7, a in recipe(), b in recipe(), xs in prop::collection::vec(coeffs(), 1..3)) {
        let r = &RINGS[ring].ring;
        let (Some(m), Some(n)) = (build(r, &a), build(r, &b)) else { return Ok(()) };
        let x = tensor_resolution(&minimal_free_resolution(&m, 3), &n).unwrap();
        prop_assert!(x.squares_to_zero());
        let elems: Vec<_> = xs.iter().map(|c| linear(r, c)).collect();
        let k = koszul(r, &elems).unwrap().complex;
        prop_assert!(k.squares_to_zero());
        prop_assert!(ChainComplex::tensor_free(&k, &x).unwrap().squares_to_zero());
        prop_assert!(good_truncation_below(&x, x.hi().min(1)).unwrap().squares_to_zero());
    }

    #[test]
    fn shifting_moves_homology_up_one_place(ring in 0usize..7, a in recipe(), b in recipe()) {
        let r = &RINGS[ring].ring;
        let (Some(m), Some(n)) = (build(r, &a), build(r, &b)) else { return Ok(()) };
        let x = tensor_resolution(&minimal_free_resolution(&m, 3), &n).unwrap();
        let y = x.shift(1);
        prop_assert_eq!(y.lo(), x.lo() + 1);
        for i in x.lo()..x.hi() {
            let (hx, hy) = (x.homology_at(i).unwrap(), y.homology_at(i + 1).unwrap());
            for d in 0..=MAX_D {
                prop_assert_eq!(hx.graded_dim(d), hy.graded_dim(d));
            }
        }
    }

    /// `0 → I → R → R/I → 0` against a test module: the long exact Tor
    /// sequence telescopes degree by degree.
    #[test]
    fn long_exact_tor_sequence_telescopes(ring in 0usize..7, gens in prop::collection::vec(coeffs(), 1..3), b in recipe()) {
        let r = &RINGS[ring].ring;
        let forms: Vec<_> = gens.iter().map(|c| linear(r, c)).collect();
        if forms.iter().any(|f| r.is_zero(f)) {
            return Ok(());
        }
        let Some(n) = build(r, &b) else { return Ok(()) };
        let i = PresentedModule::ideal(r, &forms).unwrap();
        let c = PresentedModule::cyclic(r, &forms).unwrap();
        let ti = tor(&i, &n, 2).unwrap();
        let tc = tor(&c, &n, 3).unwrap();
        for d in 0..=MAX_D {
            let euler = tc[1].graded_dim(d) as i64 - ti[0].graded_dim(d) as i64 + n.graded_dim(d) as i64
                - tc[0].graded_dim(d) as i64;
            prop_assert_eq!(euler, 0, "degree {}", d);
            for k in 1..=2 {
                prop_assert_eq!(tc[k + 1].graded_dim(d), ti[k].graded_dim(d));
            }
        }
    }
}
