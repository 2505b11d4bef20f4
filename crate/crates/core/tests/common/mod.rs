#![allow(dead_code)]

use std::sync::{Arc, LazyLock};

use depthlab_core::groebner::Column;
use depthlab_core::resolve::PresentedModule;
use depthlab_core::{GradedRing, PolyRing, Polynomial, PrimeField};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

pub type Ring = Arc<GradedRing<PrimeField>>;
pub type Module = PresentedModule<PrimeField>;

pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn ring(vars: &[&str], gens: &[&str]) -> Ring {
    let s = PolyRing::standard(PrimeField::default(), vars);
    let gens = gens.iter().map(|g| Polynomial::parse(&s, g).unwrap()).collect();
    GradedRing::new(s, gens).unwrap()
}

pub struct NamedRing {
    pub name: &'static str,
    pub ring: Ring,
    pub cm: bool,
}

/// Small standard-graded rings: artinian, hypersurfaces, a regular ring and
/// the twisted cubic.
pub static RINGS: LazyLock<Vec<NamedRing>> = LazyLock::new(|| {
    let r = |name, vars: &[&str], gens: &[&str], cm| NamedRing {
        name,
        ring: ring(vars, gens),
        cm,
    };
    vec![
        r("m-squared-zero", &["x", "y"], &["x^2", "x*y", "y^2"], true),
        r("xy", &["x", "y"], &["x*y"], true),
        r("plane", &["x", "y"], &[], true),
        r("cone", &["x", "y", "z"], &["x*z - y^2"], true),
        r("x2-y2", &["x", "y"], &["x^2", "y^2"], true),
        r("embedded-point", &["x", "y"], &["x^2", "x*y"], false),
        r(
            "veronese",
            &["a", "b", "c", "d"],
            &["a*c - b^2", "b*d - c^2", "a*d - b*c"],
            true,
        ),
    ]
});

/// A linear form from coefficients, cycling through the variables.
pub fn linear(r: &Ring, coeffs: &[u32]) -> Polynomial<PrimeField> {
    let text: Vec<String> = (0..r.nvars())
        .map(|i| {
            format!(
                "{}*{}",
                coeffs.get(i).copied().unwrap_or(0) % 101,
                r.poly_ring().vars[i]
            )
        })
        .collect();
    r.parse(&text.join(" + ")).unwrap()
}

/// A recipe for a module over one of the rings.
#[derive(Clone, Debug)]
pub enum Recipe {
    Free(i32),
    Residue,
    /// `R / (linear forms)`
    Cyclic(Vec<Vec<u32>>),
    /// `R / (a product of two linear forms)`
    Quadric(Vec<u32>, Vec<u32>),
    /// The ideal generated by linear forms.
    Ideal(Vec<Vec<u32>>),
}

pub fn coeffs() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..101, 4)
}

pub fn recipe() -> impl Strategy<Value = Recipe> {
    prop_oneof![
        1 => (0i32..2).prop_map(Recipe::Free),
        2 => Just(Recipe::Residue),
        4 => prop::collection::vec(coeffs(), 1..3).prop_map(Recipe::Cyclic),
        2 => (coeffs(), coeffs()).prop_map(|(a, b)| Recipe::Quadric(a, b)),
        2 => prop::collection::vec(coeffs(), 1..3).prop_map(Recipe::Ideal),
    ]
}

/// `None` when the recipe degenerates (a zero ideal generator).
pub fn build(r: &Ring, s: &Recipe) -> Option<Module> {
    let forms = |v: &[Vec<u32>]| -> Option<Vec<Polynomial<PrimeField>>> {
        let out: Vec<_> = v.iter().map(|c| linear(r, c)).collect();
        out.iter().all(|p| !r.is_zero(p)).then_some(out)
    };
    match s {
        Recipe::Free(t) => Some(PresentedModule::free(r, vec![*t])),
        Recipe::Residue => Some(PresentedModule::residue_field(r)),
        Recipe::Cyclic(v) => PresentedModule::cyclic(r, &forms(v)?).ok(),
        Recipe::Quadric(a, b) => {
            let p = r.mul(&linear(r, a), &linear(r, b));
            if r.is_zero(&p) {
                return None;
            }
            PresentedModule::cyclic(r, &[p]).ok()
        }
        Recipe::Ideal(v) => PresentedModule::ideal(r, &forms(v)?).ok(),
    }
}

pub fn unit(n: usize, i: usize, r: &Ring) -> Column<PrimeField> {
    let mut c = vec![r.zero(); n];
    c[i] = r.one();
    c
}
