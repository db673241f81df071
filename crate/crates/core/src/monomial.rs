//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::sync::Arc;

use smallvec::SmallVec;

pub type Exp = u16;

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[Exp; 16]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
        }
    }

    pub fn from_exps(exps: &[Exp]) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            deg,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn exps(&self) -> &[Exp] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> Exp {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn degree_in(&self, vars: std::ops::Range<usize>) -> u32 {
        self.exps[vars].iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.deg > self.deg {
            return None;
        }
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            if b > a {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial {
            exps,
            deg: self.deg - other.deg,
        })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[Exp; 16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&a| {
                Exp::try_from(a as u32 * e).expect("exponent overflow")
            })
            .collect();
        Monomial {
            exps,
            deg: self.deg * e,
        }
    }

    /// Bitmask of the variables that occur, for quick non-divisibility tests.
    #[inline]
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }

    pub(crate) fn set_exp(&mut self, i: usize, e: Exp) {
        self.deg = self.deg - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
    }
}

/// A global monomial order on exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, first variable largest.
    Grevlex,
    Lex,
    /// Degree reverse lexicographic with respect to positive variable weights.
    WeightedGrevlex(Arc<[u32]>),
    /// Consecutive blocks of variables, compared block by block; the first
    /// block is eliminated.
    Block(Arc<[(usize, MonomialOrder)]>),
    /// The first `nx` variables have bidegree (1,0), the rest (0,1): compare
    /// `(deg_x, deg_y)` lexicographically, ties broken by grevlex.
    Bidegree { nx: usize },
}

impl MonomialOrder {
    pub fn block(blocks: Vec<(usize, MonomialOrder)>) -> Self {
        MonomialOrder::Block(blocks.into())
    }

    pub fn weighted(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        MonomialOrder::WeightedGrevlex(weights.into())
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.deg.cmp(&b.deg).then_with(|| revlex(a.exps(), b.exps())),
            _ => self.cmp_slices(a.exps(), b.exps()),
        }
    }

    fn cmp_slices(&self, a: &[Exp], b: &[Exp]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| revlex(a, b))
            }
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::WeightedGrevlex(w) => {
                let da: u64 = a.iter().zip(w.iter()).map(|(&e, &w)| e as u64 * w as u64).sum();
                let db: u64 = b.iter().zip(w.iter()).map(|(&e, &w)| e as u64 * w as u64).sum();
                da.cmp(&db).then_with(|| revlex(a, b))
            }
            MonomialOrder::Block(blocks) => {
                let mut off = 0;
                for (len, sub) in blocks.iter() {
                    let end = off + len;
                    let c = sub.cmp_slices(&a[off..end], &b[off..end]);
                    if c != Ordering::Equal {
                        return c;
                    }
                    off = end;
                }
                Ordering::Equal
            }
            MonomialOrder::Bidegree { nx } => {
                let dx = |m: &[Exp]| m[..*nx].iter().map(|&e| e as u32).sum::<u32>();
                let dy = |m: &[Exp]| m[*nx..].iter().map(|&e| e as u32).sum::<u32>();
                dx(a)
                    .cmp(&dx(b))
                    .then_with(|| dy(a).cmp(&dy(b)))
                    .then_with(|| revlex(a, b))
            }
        }
    }

    /// Number of variables the order is defined for, if it is fixed.
    pub fn arity(&self) -> Option<usize> {
        match self {
            MonomialOrder::WeightedGrevlex(w) => Some(w.len()),
            MonomialOrder::Block(blocks) => Some(blocks.iter().map(|(l, _)| l).sum()),
            _ => None,
        }
    }
}

/// Reverse lexicographic tie-break: the monomial with the larger exponent in
/// the last differing variable is smaller.
#[inline]
fn revlex(a: &[Exp], b: &[Exp]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
