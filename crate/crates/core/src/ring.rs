//! Graded polynomial rings.

use std::sync::Arc;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial ring `k[v_0, ..., v_{n-1}]` with a monomial order and a
/// positive grading used for homogeneity checks and pair selection.
///
/// Bigraded rings additionally assign each variable a bidegree; the
/// bidegree of a variable may have a negative x-part (the Rees parameter).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    order: MonomialOrder,
    weights: Vec<u32>,
    bidegrees: Option<Vec<(i32, i32)>>,
}

pub type RingRef<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    /// Standard graded ring with grevlex order.
    pub fn new(field: F, names: Vec<String>) -> Self {
        let n = names.len();
        PolyRing {
            field,
            names,
            order: MonomialOrder::Grevlex,
            weights: vec![1; n],
            bidegrees: None,
        }
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        if let Some(n) = order.arity() {
            assert_eq!(n, self.names.len(), "order arity does not match ring");
        }
        self.order = order;
        self
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), self.names.len());
        assert!(weights.iter().all(|&w| w > 0));
        self.weights = weights;
        self
    }

    pub fn with_bidegrees(mut self, bidegrees: Vec<(i32, i32)>) -> Self {
        assert_eq!(bidegrees.len(), self.names.len());
        self.bidegrees = Some(bidegrees);
        self
    }

    /// The standard bigrading: the first `nx` variables get (1,0), the rest (0,1).
    pub fn with_standard_bigrading(self, nx: usize) -> Self {
        let n = self.names.len();
        let bideg = (0..n).map(|i| if i < nx { (1, 0) } else { (0, 1) }).collect();
        self.with_bidegrees(bideg)
    }

    pub fn into_ref(self) -> RingRef<F> {
        Arc::new(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bidegrees(&self) -> Option<&[(i32, i32)]> {
        self.bidegrees.as_deref()
    }

    pub fn is_bigraded(&self) -> bool {
        self.bidegrees.is_some()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.weighted_degree(&self.weights)
    }

    pub fn bidegree(&self, m: &Monomial) -> Option<(i32, i32)> {
        let b = self.bidegrees.as_ref()?;
        let mut acc = (0i32, 0i32);
        for (&e, &(dx, dy)) in m.exps().iter().zip(b.iter()) {
            acc.0 += e as i32 * dx;
            acc.1 += e as i32 * dy;
        }
        Some(acc)
    }

    /// A copy of this ring with a different order (same variables, field, grading).
    pub fn reordered(&self, order: MonomialOrder) -> Self {
        self.clone().with_order(order)
    }
}

/// True when both handles denote the same ring.
pub fn same_ring<F: Field>(a: &RingRef<F>, b: &RingRef<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
