//! Gröbner bases for homogeneous submodules of graded free modules over a
//! quotient ring, normal forms and syzygies.
//!
//! Quotient-ring arithmetic is ambient arithmetic followed by reduction
//! modulo the ideal: a submodule `U` of `R^r` is handled as `U + I·S^r`.

mod gb;
mod ring;
mod vector;

use std::sync::Arc;

pub use gb::GbState;
pub use ring::GradedRing;
pub use vector::{ModTerm, ModuleOrder, ModuleVector};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;

/// A column of polynomials: an element of a free module in coordinates.
pub type Column<F> = Vec<Polynomial<F>>;

/// Check that column `index` is homogeneous of degree `deg` with respect
/// to the twists `target`.
pub fn check_column<F: Field>(col: &[Polynomial<F>], target: &[i32], deg: i32, index: usize) -> Result<()> {
    if col.len() != target.len() {
        return Err(AlgebraError::RankMismatch {
            expected: target.len(),
            found: col.len(),
        });
    }
    for (p, &t) in col.iter().zip(target) {
        if p.is_zero() {
            continue;
        }
        match p.homogeneous_degree()? {
            Some(d) if d as i64 == deg as i64 - t as i64 => {}
            _ => return Err(AlgebraError::Inhomogeneous { index }),
        }
    }
    Ok(())
}

/// Degree of a nonzero homogeneous column, `None` for zero columns.
pub fn column_degree<F: Field>(col: &[Polynomial<F>], target: &[i32]) -> Option<i32> {
    col.iter()
        .zip(target)
        .find(|(p, _)| !p.is_zero())
        .map(|(p, &t)| p.leading().unwrap().mono.degree() as i32 + t)
}

fn new_state<F: Field>(ring: &GradedRing<F>, order: ModuleOrder) -> GbState<F> {
    let mut state = GbState::new(ring.field().clone(), ring.weights(), order);
    if !ring.is_polynomial_ring() {
        let ideal = ring.ideal_gb_terms();
        for pos in 0..state.order().rank() as u32 {
            state.insert_ideal_block(pos, &ideal);
        }
    }
    state
}

/// A Gröbner basis of `U + I·S^r` for a homogeneous submodule `U ⊆ R^r`.
#[derive(Clone, Debug)]
pub struct SubmoduleGB<F: Field> {
    ring: Arc<GradedRing<F>>,
    twists: Vec<i32>,
    state: GbState<F>,
    /// reduced basis elements not coming from the ideal
    pub generators: Vec<ModuleVector<F>>,
    pub reduced: bool,
}

impl<F: Field> SubmoduleGB<F> {
    pub fn order(&self) -> &ModuleOrder {
        self.state.order()
    }

    pub fn twists(&self) -> &[i32] {
        &self.twists
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn to_vector(&self, col: &[Polynomial<F>]) -> ModuleVector<F> {
        ModuleVector::from_components(self.order(), col)
    }

    pub fn to_column(&self, v: &ModuleVector<F>) -> Column<F> {
        v.components(self.ring.poly_ring(), self.twists.len())
    }

    /// Whether every S-vector of the basis reduces to zero.
    pub fn is_groebner(&self) -> bool {
        self.state.is_groebner()
    }
}

/// Buchberger's algorithm for the submodule of `⊕ R(-twists[i])` generated
/// by `generators`; for rank one this is an ideal of `R`.
pub fn buchberger<F: Field>(
    ring: &Arc<GradedRing<F>>,
    twists: &[i32],
    generators: &[Column<F>],
) -> Result<SubmoduleGB<F>> {
    let order = ModuleOrder::new(ring.poly_ring().order.clone(), twists);
    let mut state = new_state(ring, order);
    for (index, g) in generators.iter().enumerate() {
        if g.len() != twists.len() {
            return Err(AlgebraError::RankMismatch {
                expected: twists.len(),
                found: g.len(),
            });
        }
        let v = ModuleVector::from_components(state.order(), g);
        if !v.is_homogeneous(state.order()) {
            return Err(AlgebraError::Inhomogeneous { index });
        }
        state.add_generator(v);
    }
    state.complete();
    let ideal_leads: Vec<_> = ring
        .ideal_gb()
        .iter()
        .map(|g| g.leading().unwrap().mono.clone())
        .collect();
    let generators = state
        .reduced_basis()
        .into_iter()
        .filter(|v| {
            let l = v.lead().unwrap();
            !ideal_leads.iter().any(|m| m.divides(&l.mono))
        })
        .collect();
    Ok(SubmoduleGB {
        ring: ring.clone(),
        twists: twists.to_vec(),
        state,
        generators,
        reduced: true,
    })
}

/// Ideal Gröbner basis of polynomials in `R` (modulo the defining ideal).
pub fn ideal_buchberger<F: Field>(ring: &Arc<GradedRing<F>>, gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    let cols: Vec<Column<F>> = gens.iter().map(|g| vec![g.clone()]).collect();
    let gb = buchberger(ring, &[0], &cols)?;
    Ok(gb.generators.iter().map(|v| v.component(ring.poly_ring(), 0)).collect())
}

/// Remainder of `v` with no term divisible by a lead term of `gb`.
pub fn normal_form<F: Field>(v: &[Polynomial<F>], gb: &SubmoduleGB<F>) -> Column<F> {
    let r = gb.state.reduce(gb.to_vector(v));
    gb.to_column(&r)
}

/// Elimination data for the map `⊕ R(-source[j]) → ⊕ R(-target[i])`
/// sending `e_j` to `columns[j]`.
///
/// Internally a Gröbner basis of the rows `[columns[j] | e_j]` in an order
/// where the target block dominates; basis elements living only in the
/// source block are syzygies.
#[derive(Clone, Debug)]
pub struct Submodule<F: Field> {
    ring: Arc<GradedRing<F>>,
    target: Vec<i32>,
    source: Vec<i32>,
    state: GbState<F>,
}

impl<F: Field> Submodule<F> {
    pub fn new(ring: &Arc<GradedRing<F>>, target: &[i32], source: &[i32], columns: &[Column<F>]) -> Result<Self> {
        if columns.len() != source.len() {
            return Err(AlgebraError::RankMismatch {
                expected: source.len(),
                found: columns.len(),
            });
        }
        for (j, c) in columns.iter().enumerate() {
            check_column(c, target, source[j], j)?;
        }
        let r = target.len() as u32;
        let order = ModuleOrder::stacked(ring.poly_ring().order.clone(), target, source);
        let mut state = new_state(ring, order);
        let one = ring.field().one();
        let n = ring.nvars();
        for (j, c) in columns.iter().enumerate() {
            let mut raw: Vec<ModTerm<F>> = Vec::new();
            for (i, p) in c.iter().enumerate() {
                for t in ring.reduce(p).terms() {
                    raw.push(ModTerm {
                        coeff: t.coeff.clone(),
                        mono: t.mono.clone(),
                        pos: i as u32,
                    });
                }
            }
            raw.push(ModTerm {
                coeff: one.clone(),
                mono: crate::monomial::Monomial::one(n),
                pos: r + j as u32,
            });
            let v = ModuleVector::from_raw(ring.field(), state.order(), raw);
            state.add_generator(v);
        }
        state.complete();
        Ok(Submodule {
            ring: ring.clone(),
            target: target.to_vec(),
            source: source.to_vec(),
            state,
        })
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn target(&self) -> &[i32] {
        &self.target
    }

    pub fn source(&self) -> &[i32] {
        &self.source
    }

    fn split(&self, v: &ModuleVector<F>) -> (Column<F>, Column<F>) {
        let r = self.target.len() as u32;
        let m = self.source.len() as u32;
        let poly = self.ring.poly_ring();
        let a = v.restrict(0..r).components(poly, r as usize);
        let b = v.restrict(r..r + m).components(poly, m as usize);
        (a, b)
    }

    /// Generators of the kernel, reduced modulo the ideal, nonzero, with
    /// their degrees, ascending by degree.
    pub fn syzygies(&self) -> Vec<(i32, Column<F>)> {
        let r = self.target.len() as u32;
        let mut out = Vec::new();
        for v in self.state.elements() {
            let lead = v.lead().unwrap();
            if lead.pos < r {
                continue;
            }
            let (_, b) = self.split(v);
            let b: Column<F> = b.iter().map(|p| self.ring.reduce(p)).collect();
            if b.iter().all(|p| p.is_zero()) {
                continue;
            }
            let d = v.degree(self.state.order()).unwrap() as i32;
            out.push((d, b));
        }
        out.sort_by_key(|(d, _)| *d);
        out
    }

    /// Reduced Gröbner basis (target-block parts) of the image plus `I·F`,
    /// excluding pure ideal multiples.
    pub fn image_basis(&self) -> Vec<Column<F>> {
        let r = self.target.len() as u32;
        self.state
            .reduced_basis()
            .iter()
            .filter(|v| v.lead().unwrap().pos < r)
            .map(|v| self.split(v).0)
            .filter(|a| a.iter().any(|p| !self.ring.is_zero(p)))
            .collect()
    }

    fn reduce_target(&self, w: &[Polynomial<F>]) -> (Column<F>, Column<F>) {
        let v = ModuleVector::from_components(self.state.order(), w);
        let nf = self.state.reduce(v);
        self.split(&nf)
    }

    /// Normal form of `w` modulo the image (plus `I·F`).
    pub fn normal_form(&self, w: &[Polynomial<F>]) -> Column<F> {
        let (a, _) = self.reduce_target(w);
        a.iter().map(|p| self.ring.reduce(p)).collect()
    }

    pub fn contains(&self, w: &[Polynomial<F>]) -> bool {
        self.normal_form(w).iter().all(|p| p.is_zero())
    }

    /// Coefficients `c` with `w = Σ c_j columns[j]` in `R`, if `w` lies in
    /// the image.
    pub fn lift(&self, w: &[Polynomial<F>]) -> Option<Column<F>> {
        let (a, b) = self.reduce_target(w);
        if a.iter().any(|p| !self.ring.is_zero(p)) {
            return None;
        }
        Some(b.iter().map(|p| self.ring.reduce(&p.neg())).collect())
    }
}

/// Generators of the kernel of `e_j ↦ columns[j]` over `R`.
pub fn syzygy_basis<F: Field>(
    ring: &Arc<GradedRing<F>>,
    target: &[i32],
    source: &[i32],
    columns: &[Column<F>],
) -> Result<Vec<Column<F>>> {
    Ok(Submodule::new(ring, target, source, columns)?
        .syzygies()
        .into_iter()
        .map(|(_, c)| c)
        .collect())
}

/// Generators of `{c : Σ c_j a_j ∈ span(b)}` in the target, the `A`-block of
/// the syzygies of `[A | B]`.
pub fn relative_syzygies<F: Field>(
    ring: &Arc<GradedRing<F>>,
    target: &[i32],
    a_degrees: &[i32],
    a: &[Column<F>],
    b_degrees: &[i32],
    b: &[Column<F>],
) -> Result<Vec<(i32, Column<F>)>> {
    let mut cols = a.to_vec();
    cols.extend(b.iter().cloned());
    let mut src = a_degrees.to_vec();
    src.extend_from_slice(b_degrees);
    let m = a.len();
    Ok(Submodule::new(ring, target, &src, &cols)?
        .syzygies()
        .into_iter()
        .map(|(d, c)| (d, c[..m].to_vec()))
        .filter(|(_, c)| c.iter().any(|p| !p.is_zero()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::PolyRing;

    fn ring(vars: &[&str], gens: &[&str]) -> Arc<GradedRing<PrimeField>> {
        let s = PolyRing::standard(PrimeField::default(), vars);
        let gens = gens.iter().map(|g| Polynomial::parse(&s, g).unwrap()).collect();
        GradedRing::new(s, gens).unwrap()
    }

    fn col(r: &GradedRing<PrimeField>, entries: &[&str]) -> Column<PrimeField> {
        entries.iter().map(|e| r.parse(e).unwrap()).collect()
    }

    #[test]
    fn monomial_ideal_gb() {
        let s = ring(&["x", "y"], &[]);
        let gens = [col(&s, &["x^2"]), col(&s, &["x*y"]), col(&s, &["y^2"])];
        let gb = buchberger(&s, &[0], &gens).unwrap();
        assert_eq!(gb.generators.len(), 3);
        assert!(gb.is_groebner());
        let empty = buchberger(&s, &[0], &[col(&s, &["0"])]).unwrap();
        assert!(empty.generators.is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let s = ring(&["x", "y"], &[]);
        let gens = [col(&s, &["x^2"]), col(&s, &["x*y"]), col(&s, &["y^2"])];
        let gb = buchberger(&s, &[0], &gens).unwrap();
        assert_eq!(normal_form(&col(&s, &["x*y + y"]), &gb), col(&s, &["y"]));
        let gx = buchberger(&s, &[0], &[col(&s, &["x^2"])]).unwrap();
        assert!(normal_form(&col(&s, &["x^3"]), &gx)[0].is_zero());
    }

    #[test]
    fn koszul_syzygy() {
        let s = ring(&["x", "y"], &[]);
        let syz = syzygy_basis(&s, &[0], &[1, 1], &[col(&s, &["x"]), col(&s, &["y"])]).unwrap();
        assert_eq!(syz.len(), 1);
        let c = &syz[0];
        let (y, mx) = (col(&s, &["y", "-x"]), col(&s, &["-y", "x"]));
        assert!(*c == y || *c == mx);
    }

    #[test]
    fn annihilator_of_x_in_artinian_ring() {
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let syz = syzygy_basis(&r, &[0], &[1], &[col(&r, &["x"])]).unwrap();
        let sub = buchberger(&r, &[1], &syz).unwrap();
        assert_eq!(sub.generators.len(), 2);
        for c in &syz {
            assert!(r.is_zero(&r.mul(&c[0], &r.parse("x").unwrap())));
        }
    }

    #[test]
    fn lift_recovers_coefficients() {
        let s = ring(&["x", "y"], &[]);
        let cols = [col(&s, &["x", "y"]), col(&s, &["y", "0"])];
        let sub = Submodule::new(&s, &[0, 0], &[1, 1], &cols).unwrap();
        let w = col(&s, &["x*y + y^2", "y^2"]);
        let c = sub.lift(&w).unwrap();
        let recon0 = c[0]
            .mul(&cols[0][0])
            .unwrap()
            .add(&c[1].mul(&cols[1][0]).unwrap())
            .unwrap();
        assert_eq!(recon0, w[0]);
        assert!(sub.lift(&col(&s, &["0", "x"])).is_none());
    }
}
