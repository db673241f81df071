//! Projective varieties presented as `k[X]/a` with `a` homogeneous.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{groebner, GroebnerBasis};
use crate::poly::Poly;
use crate::ring::{same_ring, PolyRing, RingRef};

/// The coordinate ring `R = k[X]/a` of a projective variety.
#[derive(Clone, Debug)]
pub struct Variety<F: Field> {
    ring: RingRef<F>,
    ideal: Vec<Poly<F>>,
    gb: GroebnerBasis<F>,
    assume_domain: bool,
}

impl<F: Field> Variety<F> {
    /// Projective space over `ring`.
    pub fn projective_space(ring: &RingRef<F>) -> Self {
        Variety {
            ring: ring.clone(),
            ideal: Vec::new(),
            gb: groebner(ring, &[]),
            assume_domain: true,
        }
    }

    /// The variety cut out by `ideal`, whose generators must be homogeneous.
    pub fn new(ring: &RingRef<F>, ideal: Vec<Poly<F>>) -> Result<Self> {
        for (i, g) in ideal.iter().enumerate() {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::InhomogeneousForm(i));
            }
        }
        let ideal: Vec<Poly<F>> = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        let gb = groebner(ring, &ideal);
        Ok(Variety {
            ring: ring.clone(),
            ideal,
            gb,
            assume_domain: true,
        })
    }

    pub fn with_assume_domain(mut self, yes: bool) -> Self {
        self.assume_domain = yes;
        self
    }

    pub fn assume_domain(&self) -> bool {
        self.assume_domain
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// The defining generators as given (zeros dropped).
    pub fn ideal(&self) -> &[Poly<F>] {
        &self.ideal
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn gb(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn is_projective_space(&self) -> bool {
        self.gb.generators().is_empty()
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        if self.is_projective_space() {
            return f.clone();
        }
        self.gb.reduce(f)
    }

    pub fn is_zero(&self, f: &Poly<F>) -> bool {
        self.reduce(f).is_zero()
    }

    /// Same ambient ring and same ideal.
    pub fn same_as(&self, other: &Variety<F>) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.gb.generators().len() == other.gb.generators().len()
            && self.gb.generators().iter().zip(other.gb.generators()).all(|(a, b)| a == b)
    }

    /// Dimension of the degree-one part of the defining ideal; zero means
    /// the variety spans its ambient projective space.
    pub fn nondegeneracy_dim(&self) -> usize {
        self.gb.generators().iter().filter(|g| g.degree() == Some(1)).count()
    }

    /// A presentation without linear relations, together with the linear
    /// substitutions relating the two coordinate systems.
    pub fn minimal_presentation(&self) -> Result<MinimalPresentation<F>> {
        let n = self.nvars();
        let linear: Vec<&Poly<F>> = self.gb.generators().iter().filter(|g| g.degree() == Some(1)).collect();
        if linear.is_empty() {
            let vars: Vec<Poly<F>> = (0..n).map(|i| Poly::var(&self.ring, i)).collect();
            return Ok(MinimalPresentation {
                variety: Arc::new(self.clone()),
                to_new: vars.clone(),
                to_old: vars,
                kept: (0..n).collect(),
            });
        }
        // the reduced basis is in echelon form: distinct leading variables
        // that do not occur in any other linear element
        let leads: Vec<usize> = linear.iter().map(|g| lead_var(g)).collect();
        let kept: Vec<usize> = (0..n).filter(|i| !leads.contains(i)).collect();
        let names: Vec<String> = kept.iter().map(|&i| self.ring.names()[i].clone()).collect();
        let new_ring = PolyRing::new(self.ring.field().clone(), names).into_ref();
        let mut old_to_new_index = vec![usize::MAX; n];
        for (k, &i) in kept.iter().enumerate() {
            old_to_new_index[i] = k;
        }
        let to_new: Vec<Poly<F>> = (0..n)
            .map(|i| match linear.iter().position(|g| lead_var(g) == i) {
                Some(j) => {
                    // x_i = x_i - g (g is monic in x_i)
                    let tail = Poly::var(&self.ring, i).sub(linear[j]);
                    tail.remap(&new_ring, &old_to_new_index)
                }
                None => Poly::var(&new_ring, old_to_new_index[i]),
            })
            .collect();
        let to_old: Vec<Poly<F>> = kept.iter().map(|&i| Poly::var(&self.ring, i)).collect();
        let mut ideal = Vec::new();
        for g in self.gb.generators() {
            if g.degree() == Some(1) {
                continue;
            }
            let h = g.substitute(&to_new)?;
            if !h.is_zero() {
                ideal.push(h);
            }
        }
        let variety = Variety::new(&new_ring, ideal)?.with_assume_domain(self.assume_domain);
        Ok(MinimalPresentation {
            variety: Arc::new(variety),
            to_new,
            to_old,
            kept,
        })
    }
}

fn lead_var<F: Field>(g: &Poly<F>) -> usize {
    let m = g.leading_monomial().unwrap();
    m.exps().iter().position(|&e| e > 0).unwrap()
}

/// A nondegenerate re-presentation of a variety.
#[derive(Clone, Debug)]
pub struct MinimalPresentation<F: Field> {
    pub variety: Arc<Variety<F>>,
    /// Image of each original variable in the new ring.
    pub to_new: Vec<Poly<F>>,
    /// Image of each new variable in the original ring.
    pub to_old: Vec<Poly<F>>,
    /// Original indices of the surviving variables.
    pub kept: Vec<usize>,
}

impl<F: Field> MinimalPresentation<F> {
    pub fn is_identity(&self) -> bool {
        self.kept.len() == self.to_new.len()
    }
}
