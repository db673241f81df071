//! Gröbner bases of ideals and submodules, and the ideal operations built on them.

mod engine;
mod ops;

pub use engine::Truncation;
pub use ops::{
    eliminate, ideal_equal, ideal_quotient, ideal_quotient_by_ideal, intersect, is_subideal, lift_quotient,
    saturate, saturate_by_element, saturate_by_variable, syzygies, syzygies_of_vectors, SyzygyMatrix,
};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::ring::{same_ring, RingRef};

pub(crate) use engine::{reduce_with, Engine, MTerm, MVec, ModuleCtx};
pub(crate) use ops::fresh_name;

/// A (possibly truncated) reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef<F>,
    gens: Vec<Poly<F>>,
    complete: bool,
    cap: Option<(i32, i32)>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Poly<F>> {
        self.gens
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The bidegree cap up to which the basis is guaranteed, if truncated.
    pub fn cap(&self) -> Option<(i32, i32)> {
        self.cap
    }

    /// True when the basis is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Poly<F>) -> Result<Poly<F>> {
        if !same_ring(f.ring(), &self.ring) {
            if f.ring().names() == self.ring.names() && f.ring().field() == self.ring.field() {
                return Err(Error::OrderMismatch);
            }
            return Err(Error::RingMismatch);
        }
        Ok(self.reduce(f))
    }

    pub(crate) fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        let ctx = ModuleCtx::new(&self.ring, 1);
        let mvecs: Vec<MVec<F>> = self.gens.iter().map(|g| poly_to_mvec(g, 0)).collect();
        let view: Vec<_> = mvecs
            .iter()
            .map(|v| {
                let l = v.lead().unwrap();
                (v, &l.m, l.comp, l.m.support_mask())
            })
            .collect();
        let (r, _) = reduce_with(&ctx, &view, poly_to_mvec(f, 0), true);
        mvec_component(&self.ring, &r, 0)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.reduce(f).is_zero()
    }
}

pub(crate) fn poly_to_mvec<F: Field>(p: &Poly<F>, comp: u32) -> MVec<F> {
    MVec {
        terms: p
            .terms()
            .iter()
            .map(|(c, m)| MTerm {
                c: c.clone(),
                m: m.clone(),
                comp,
            })
            .collect(),
    }
}

/// Extracts component `comp` of a module element (already in order).
pub(crate) fn mvec_component<F: Field>(ring: &RingRef<F>, v: &MVec<F>, comp: u32) -> Poly<F> {
    let terms = v
        .terms
        .iter()
        .filter(|t| t.comp == comp)
        .map(|t| (t.c.clone(), t.m.clone()))
        .collect();
    Poly::from_sorted(ring, terms)
}

/// Buchberger's algorithm with normal pair selection and the Gebauer-Moeller
/// criteria. With `cap = Some((cx, cy))` the ring must be bigraded and the
/// generators bihomogeneous; pairs whose lcm bidegree exceeds the cap are
/// deferred, so the result is complete in bidegrees `<= cap`.
pub fn buchberger<F: Field>(
    gens: &[Poly<F>],
    order: MonomialOrder,
    cap: Option<(i32, i32)>,
) -> Result<GroebnerBasis<F>> {
    let first = gens.first().ok_or(Error::EmptyInput)?;
    let src = first.ring().clone();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::ZeroGenerator(i));
        }
        if !same_ring(g.ring(), &src) {
            return Err(Error::RingMismatch);
        }
    }
    if cap.is_some() {
        if !src.is_bigraded() {
            return Err(Error::NotBigraded);
        }
        if src.bidegrees().unwrap().iter().any(|&(a, b)| a < 0 || b < 0) {
            return Err(Error::Invalid("bidegree caps need nonnegative variable bidegrees".into()));
        }
        for g in gens {
            g.bidegree()?;
        }
    }
    let ring: RingRef<F> = if *src.order() == order {
        src.clone()
    } else {
        Arc::new(src.reordered(order))
    };
    let gens: Vec<Poly<F>> = gens.iter().map(|g| g.with_ring(&ring)).collect();
    let trunc = match cap {
        Some((cx, cy)) => Truncation::Bidegree(cx, cy),
        None => Truncation::None,
    };
    let mut engine = Engine::new(ModuleCtx::new(&ring, 1), gens.iter().map(|g| poly_to_mvec(g, 0)).collect());
    engine.run(trunc);
    let complete = engine.is_complete();
    let basis = engine
        .reduced_basis()
        .iter()
        .map(|v| mvec_component(&ring, v, 0))
        .collect();
    Ok(GroebnerBasis {
        ring,
        gens: basis,
        complete,
        cap: if complete { None } else { cap },
    })
}

/// Complete reduced Gröbner basis in the generators' own ring; zero
/// generators are ignored.
pub fn groebner<F: Field>(ring: &RingRef<F>, gens: &[Poly<F>]) -> GroebnerBasis<F> {
    let nonzero: Vec<MVec<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| poly_to_mvec(g, 0)).collect();
    let mut engine = Engine::new(ModuleCtx::new(ring, 1), nonzero);
    engine.run(Truncation::None);
    let basis = engine
        .reduced_basis()
        .iter()
        .map(|v| mvec_component(ring, v, 0))
        .collect();
    GroebnerBasis {
        ring: ring.clone(),
        gens: basis,
        complete: true,
        cap: None,
    }
}

/// A Gröbner basis computation that can be resumed with a larger cap.
pub struct IncrementalGroebner<F: Field> {
    ring: RingRef<F>,
    engine: Engine<F>,
}

impl<F: Field> IncrementalGroebner<F> {
    pub fn new(ring: &RingRef<F>, gens: &[Poly<F>]) -> Self {
        let vecs = gens.iter().filter(|g| !g.is_zero()).map(|g| poly_to_mvec(g, 0)).collect();
        IncrementalGroebner {
            ring: ring.clone(),
            engine: Engine::new(ModuleCtx::new(ring, 1), vecs),
        }
    }

    pub fn run(&mut self, cap: Truncation) {
        self.engine.run(cap);
    }

    /// Adds a generator to be processed by the next `run`.
    pub fn add_generator(&mut self, g: &Poly<F>) {
        self.engine.add_input(poly_to_mvec(g, 0));
    }

    /// Remainder of `f` against the basis found so far.
    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        let (r, _) = self.engine.reduce_against_basis(poly_to_mvec(f, 0));
        mvec_component(&self.ring, &r, 0)
    }

    pub fn is_complete(&self) -> bool {
        self.engine.is_complete()
    }

    pub fn pending_pairs(&self) -> usize {
        self.engine.pending_pairs()
    }

    pub fn reductions(&self) -> usize {
        self.engine.reductions
    }

    /// Reduced basis of everything found so far.
    pub fn basis(&self) -> Vec<Poly<F>> {
        self.engine
            .reduced_basis()
            .iter()
            .map(|v| mvec_component(&self.ring, v, 0))
            .collect()
    }
}

#[cfg(test)]
mod tests;
