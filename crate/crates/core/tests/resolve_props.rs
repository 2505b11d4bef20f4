mod common;

use common::*;
use depthlab_core::homology::tor;
use depthlab_core::oracle::GradedPieces;
use depthlab_core::resolve::{minimal_free_resolution, syzygy_module, PresentedModule};
use proptest::prelude::*;

const MAX_I: usize = 3;
const MAX_D: i32 = 6;

proptest! {
    #![proptest_config(config(200, 0x5eed_0002))]

    #[test]
    fn resolutions_are_minimal_exact_complexes(ring in 0usize..7, s in recipe()) {
        let r = &RINGS[ring].ring;
        let Some(m) = build(r, &s) else { return Ok(()) };
        let res = minimal_free_resolution(&m, MAX_I);
        prop_assert!(res.composes_to_zero());
        prop_assert!(res.is_minimal());
        prop_assert!(res.certify_exactness());
    }

    #[test]
    fn betti_numbers_match_linear_algebra(ring in 0usize..7, s in recipe()) {
        let r = &RINGS[ring].ring;
        let Some(m) = build(r, &s) else { return Ok(()) };
        let k = PresentedModule::residue_field(r);
        let table = minimal_free_resolution(&m, MAX_I).betti();
        let oracle = GradedPieces::new(r).tor_dims(&m, &k, MAX_I, MAX_D);
        for i in 0..=MAX_I {
            for d in -1..=MAX_D {
                let expected = oracle.get(&(i, d)).copied().unwrap_or(0);
                prop_assert_eq!(table.get(i, d), expected, "beta_{},{}", i, d);
            }
        }
    }

    #[test]
    fn tor_modules_match_linear_algebra(ring in 0usize..7, a in recipe(), b in recipe()) {
        let r = &RINGS[ring].ring;
        let (Some(m), Some(n)) = (build(r, &a), build(r, &b)) else { return Ok(()) };
        let hs = tor(&m, &n, 2).unwrap();
        let oracle = GradedPieces::new(r).tor_dims(&m, &n, 2, MAX_D);
        for (i, h) in hs.iter().enumerate() {
            for d in 0..=MAX_D {
                let expected = oracle.get(&(i, d)).copied().unwrap_or(0);
                prop_assert_eq!(h.graded_dim(d), expected, "Tor_{} in degree {}", i, d);
            }
        }
    }
}

#[test]
fn second_syzygy_of_k_is_four_copies_of_k() {
    let r = &RINGS[0].ring;
    let k = PresentedModule::residue_field(r);
    let omega = syzygy_module(&k, 2);
    assert_eq!(omega.ngens(), 4);
    assert!(omega.is_annihilated_by_max_ideal());
    let res = minimal_free_resolution(&k, 4);
    assert_eq!(res.totals(), vec![1, 2, 4, 8, 16]);
}
