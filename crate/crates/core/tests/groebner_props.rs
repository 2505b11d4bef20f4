mod common;

use common::*;
use depthlab_core::groebner::{buchberger, syzygy_basis, Column, Submodule};
use depthlab_core::oracle::GradedPieces;
use depthlab_core::resolve::PresentedModule;
use depthlab_core::PrimeField;
use proptest::prelude::*;

/// An entry: a linear form, or a product of two when the flag is set.
type Entry = (Vec<u32>, Vec<u32>, bool);

/// Columns over `R^rank` (generators in degree 0) with entries that are
/// linear forms or products of two linear forms, one degree per column.
#[derive(Clone, Debug)]
struct Input {
    ring: usize,
    rank: usize,
    columns: Vec<(bool, Vec<Entry>)>,
}

fn input() -> impl Strategy<Value = Input> {
    (0usize..6, 1usize..3).prop_flat_map(|(ring, rank)| {
        let entry = (coeffs(), coeffs(), prop::bool::weighted(0.3));
        let column = (any::<bool>(), prop::collection::vec(entry, rank));
        prop::collection::vec(column, 1..4).prop_map(move |columns| Input { ring, rank, columns })
    })
}

fn realize(inp: &Input) -> (Ring, Vec<i32>, Vec<Column<PrimeField>>, Vec<i32>) {
    let r = RINGS[inp.ring].ring.clone();
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for (quadratic, entries) in &inp.columns {
        let col: Column<PrimeField> = entries
            .iter()
            .map(|(a, b, zero)| {
                if *zero {
                    r.zero()
                } else if *quadratic {
                    r.mul(&linear(&r, a), &linear(&r, b))
                } else {
                    linear(&r, a)
                }
            })
            .collect();
        cols.push(col);
        degs.push(if *quadratic { 2 } else { 1 });
    }
    (r, vec![0; inp.rank], cols, degs)
}

proptest! {
    #![proptest_config(config(200, 0x5eed_0001))]

    #[test]
    fn buchberger_reaches_a_fixed_point(inp in input()) {
        let (r, twists, cols, _) = realize(&inp);
        let gb = buchberger(&r, &twists, &cols).unwrap();
        prop_assert!(gb.is_groebner());
        let again = buchberger(&r, &twists, &cols).unwrap();
        let a: Vec<_> = gb.generators.iter().map(|v| format!("{:?}", gb.to_column(v))).collect();
        let b: Vec<_> = again.generators.iter().map(|v| format!("{:?}", again.to_column(v))).collect();
        prop_assert_eq!(a, b);
        for c in &cols {
            let zero = depthlab_core::groebner::normal_form(c, &gb);
            prop_assert!(zero.iter().all(|p| r.is_zero(p)));
        }
    }

    #[test]
    fn syzygies_are_sound(inp in input()) {
        let (r, twists, cols, degs) = realize(&inp);
        for s in syzygy_basis(&r, &twists, &degs, &cols).unwrap() {
            let mut total = vec![r.zero(); twists.len()];
            for (coef, col) in s.iter().zip(&cols) {
                for (t, e) in total.iter_mut().zip(col) {
                    *t = r.reduce(&t.add(&r.mul(coef, e)).unwrap());
                }
            }
            prop_assert!(total.iter().all(|p| r.is_zero(p)));
        }
    }

    #[test]
    fn syzygies_are_complete_in_low_degrees(inp in input()) {
        let (r, twists, cols, degs) = realize(&inp);
        let sub = Submodule::new(&r, &twists, &degs, &cols).unwrap();
        let (sd, sc): (Vec<i32>, Vec<Column<PrimeField>>) = sub.syzygies().into_iter().unzip();
        let coker = PresentedModule::with_degrees(&r, degs.clone(), sc, sd).unwrap();
        let free = PresentedModule::free(&r, degs.clone());
        let oracle = GradedPieces::new(&r);
        for d in 0..=6 {
            let kernel = oracle.kernel_dim(&twists, &degs, &cols, d);
            let spanned = oracle.module_dim(&free, d) - oracle.module_dim(&coker, d);
            prop_assert_eq!(kernel, spanned, "degree {}", d);
        }
    }
}
