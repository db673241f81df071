//! Presentation ideals of Rees algebras in the bigraded ring `k[X, Y]`.
//!
//! The ideal is the kernel of `k[X, Y] → R[t]`, `Y_j ↦ f_j t`, computed by
//! eliminating `t` from `a + (Y_j - t f_j)`. With weights `t = 1`,
//! `x_i = 1`, `Y_j = d + 1` the generators are homogeneous and a bihomogeneous
//! element of bidegree `(p, q)` has weight `p + q (d + 1)`, so truncating the
//! computation at weight `1 + N (d + 1)` captures every element of bidegree
//! `(1, q)` with `q <= N`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{fresh_name, saturate_by_element, syzygies, IncrementalGroebner, Truncation};
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::ring::{PolyRing, RingRef};
use crate::variety::Variety;

/// How a Rees ideal was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReesOrigin {
    Elimination,
    Saturation,
    Truncated,
}

/// Bihomogeneous generators of (a truncation of) the Rees ideal.
#[derive(Clone, Debug)]
pub struct ReesChunk<F: Field> {
    /// `k[X, Y]`, bigraded with the `nx` source variables first.
    pub ring: RingRef<F>,
    pub nx: usize,
    pub gens: Vec<Poly<F>>,
    /// `None` for a complete ideal, `Some(N)` when only bidegrees `(1, q)`
    /// with `q <= N` are guaranteed.
    pub truncated_at: Option<u32>,
    pub origin: ReesOrigin,
}

impl<F: Field> ReesChunk<F> {
    pub fn is_complete(&self) -> bool {
        self.truncated_at.is_none()
    }

    pub fn bidegrees(&self) -> Vec<(i32, i32)> {
        self.gens.iter().map(|g| g.bidegree().expect("bihomogeneous")).collect()
    }
}

impl<F: Field> fmt::Display for ReesChunk<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, (p, q)) in self.gens.iter().zip(self.bidegrees()) {
            writeln!(f, "({p},{q}) {g}")?;
        }
        Ok(())
    }
}

/// The bigraded ring `k[X, Y]` for a source with ring `src` and a target
/// with ring `tgt`; target names that clash with source names are renamed.
pub fn rees_ring<F: Field>(src: &RingRef<F>, tgt: &RingRef<F>) -> RingRef<F> {
    let mut names: Vec<String> = src.names().to_vec();
    for y in tgt.names() {
        let fresh = fresh_name(&names, y);
        names.push(fresh);
    }
    PolyRing::new(src.field().clone(), names)
        .with_standard_bigrading(src.nvars())
        .into_ref()
}

/// A resumable elimination computation of the Rees ideal.
pub struct ReesComputation<F: Field> {
    /// `k[t, X, Y]` with `t` in its own eliminated block.
    tring: RingRef<F>,
    rring: RingRef<F>,
    nx: usize,
    degree: u32,
    gb: IncrementalGroebner<F>,
    reached: Option<u32>,
}

impl<F: Field> ReesComputation<F> {
    /// `source` must be the ambient variety of `forms`, `target_ring` the
    /// ring of the `Y` variables.
    pub fn new(source: &Variety<F>, target_ring: &RingRef<F>, forms: &[Poly<F>]) -> Result<Self> {
        let src = source.ring();
        let nx = src.nvars();
        let ny = target_ring.nvars();
        if forms.len() != ny {
            return Err(Error::TargetArity { expected: ny, found: forms.len() });
        }
        let degree = forms.iter().find_map(|f| f.degree()).ok_or(Error::AllFormsZero)?;
        let rring = rees_ring(src, target_ring);
        let mut names = vec![fresh_name(rring.names(), "t")];
        names.extend(rring.names().iter().cloned());
        let mut weights = vec![1u32];
        weights.extend(std::iter::repeat_n(1, nx));
        weights.extend(std::iter::repeat_n(degree + 1, ny));
        let rest = weights[1..].to_vec();
        let order = MonomialOrder::block(vec![(1, MonomialOrder::weighted(vec![1])), (nx + ny, MonomialOrder::weighted(rest))]);
        let tring = PolyRing::new(src.field().clone(), names)
            .with_weights(weights)
            .with_order(order)
            .into_ref();
        let x_in: Vec<usize> = (1..=nx).collect();
        let mut gens: Vec<Poly<F>> = source.gb().generators().iter().map(|g| g.remap(&tring, &x_in)).collect();
        let t = Poly::var(&tring, 0);
        for (j, f) in forms.iter().enumerate() {
            gens.push(Poly::var(&tring, 1 + nx + j).sub(&t.mul(&f.remap(&tring, &x_in))));
        }
        let gb = IncrementalGroebner::new(&tring, &gens);
        Ok(ReesComputation {
            tring,
            rring,
            nx,
            degree,
            gb,
            reached: Some(0),
        })
    }

    pub fn rees_ring(&self) -> &RingRef<F> {
        &self.rring
    }

    /// Continues the computation until every element of bidegree `(1, q)`,
    /// `q <= n`, is found.
    pub fn run_to(&mut self, n: u32) {
        if self.reached.is_some_and(|r| r >= n) || self.reached.is_none() {
            return;
        }
        let cap = 1 + n as i64 * (self.degree as i64 + 1);
        self.gb.run(Truncation::Weight(cap));
        self.reached = if self.gb.is_complete() { None } else { Some(n) };
    }

    /// Completes the computation.
    pub fn run_full(&mut self) {
        self.gb.run(Truncation::None);
        self.reached = None;
    }

    pub fn is_complete(&self) -> bool {
        self.reached.is_none()
    }

    pub fn pending_pairs(&self) -> usize {
        self.gb.pending_pairs()
    }

    /// The `t`-free part of the current basis, moved to `k[X, Y]`.
    pub fn chunk(&self) -> ReesChunk<F> {
        let back: Vec<usize> = (0..self.tring.nvars()).map(|i| i.saturating_sub(1)).collect();
        let gens = self
            .gb
            .basis()
            .into_iter()
            .filter(|g| g.terms().iter().all(|(_, m)| m.exp(0) == 0))
            .map(|g| g.remap(&self.rring, &back))
            .collect();
        ReesChunk {
            ring: self.rring.clone(),
            nx: self.nx,
            gens,
            truncated_at: self.reached,
            origin: if self.reached.is_some() {
                ReesOrigin::Truncated
            } else {
                ReesOrigin::Elimination
            },
        }
    }
}

/// The full Rees ideal by elimination.
pub fn rees_full<F: Field>(source: &Variety<F>, target_ring: &RingRef<F>, forms: &[Poly<F>]) -> Result<ReesChunk<F>> {
    let mut c = ReesComputation::new(source, target_ring, forms)?;
    c.run_full();
    Ok(c.chunk())
}

/// Generators of the Rees ideal that are guaranteed in bidegrees `(1, q)`,
/// `q <= n`.
pub fn rees_truncated<F: Field>(
    source: &Variety<F>,
    target_ring: &RingRef<F>,
    forms: &[Poly<F>],
    n: u32,
) -> Result<ReesChunk<F>> {
    if n == 0 {
        return Err(Error::Invalid("truncation degree must be positive".into()));
    }
    let mut c = ReesComputation::new(source, target_ring, forms)?;
    c.run_to(n);
    Ok(c.chunk())
}

/// The Rees ideal as the saturation of the symmetric algebra ideal
/// `(Y · Syz(f)) + a` by the first nonzero form.
pub fn rees_saturation<F: Field>(
    source: &Variety<F>,
    target_ring: &RingRef<F>,
    forms: &[Poly<F>],
) -> Result<ReesChunk<F>> {
    let src = source.ring();
    let nx = src.nvars();
    let k = forms.iter().position(|f| !f.is_zero()).ok_or(Error::AllFormsZero)?;
    let rring = rees_ring(src, target_ring);
    let x_in: Vec<usize> = (0..nx).collect();
    let sym: Vec<Poly<F>> = symmetric_algebra_ideal(source, target_ring, forms)?
        .iter()
        .map(|g| g.with_ring(&rring))
        .collect();
    let fk = forms[k].remap(&rring, &x_in);
    let gens = if sym.is_empty() {
        Vec::new()
    } else {
        saturate_by_element(&sym, &fk)?
    };
    Ok(ReesChunk {
        ring: rring,
        nx,
        gens,
        truncated_at: None,
        origin: ReesOrigin::Saturation,
    })
}

/// The symmetric algebra ideal `(Y · Syz(f)) + a`, unsaturated.
pub fn symmetric_algebra_ideal<F: Field>(
    source: &Variety<F>,
    target_ring: &RingRef<F>,
    forms: &[Poly<F>],
) -> Result<Vec<Poly<F>>> {
    let src = source.ring();
    let nx = src.nvars();
    let rring = rees_ring(src, target_ring);
    let x_in: Vec<usize> = (0..nx).collect();
    let syz = syzygies(forms, source.ideal())?;
    let mut out: Vec<Poly<F>> = source.ideal().iter().map(|g| g.remap(&rring, &x_in)).collect();
    for col in &syz.columns {
        let e = col
            .iter()
            .enumerate()
            .fold(Poly::zero(&rring), |acc, (j, a)| acc.add(&a.remap(&rring, &x_in).mul(&Poly::var(&rring, nx + j))));
        if !e.is_zero() {
            out.push(e);
        }
    }
    Ok(out)
}

/// A minimal generating set of the ideal spanned by the elements of
/// x-degree one, chosen in increasing y-degree: an element is dropped when
/// it already lies in the ideal of the ones kept before it.
pub fn linear_part<F: Field>(chunk: &ReesChunk<F>) -> Vec<Poly<F>> {
    let mut cands: Vec<(i32, Poly<F>)> = chunk
        .gens
        .iter()
        .filter_map(|g| match g.bidegree() {
            Ok((1, q)) => Some((q, g.clone())),
            _ => None,
        })
        .collect();
    cands.sort_by_key(|(q, _)| *q);
    if cands.is_empty() {
        return Vec::new();
    }
    // a plain grevlex copy of k[X, Y] with the nonnegative bigrading, so the
    // membership test can be truncated at bidegree (1, q)
    let ring = chunk.ring.clone();
    let mut inc = IncrementalGroebner::new(&ring, &[]);
    let mut kept: Vec<Poly<F>> = Vec::new();
    for (q, g) in cands {
        inc.run(Truncation::Bidegree(1, q));
        if !kept.is_empty() && inc.reduce(&g).is_zero() {
            continue;
        }
        inc.add_generator(&g);
        kept.push(g);
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::groebner::{groebner, ideal_equal, is_subideal};
    use crate::parse::parse_poly;

    fn setup<F: Field>(k: F, x: &[&str], y: &[&str], forms: &[&str]) -> (Variety<F>, RingRef<F>, Vec<Poly<F>>) {
        let src = PolyRing::new(k.clone(), x.iter().map(|s| s.to_string()).collect()).into_ref();
        let tgt = PolyRing::new(k, y.iter().map(|s| s.to_string()).collect()).into_ref();
        let f = forms.iter().map(|s| parse_poly(&src, s).unwrap()).collect();
        (Variety::projective_space(&src), tgt, f)
    }

    /// Every generator vanishes under `Y_j ↦ f_j`.
    fn assert_rees_relations<F: Field>(chunk: &ReesChunk<F>, source: &Variety<F>, forms: &[Poly<F>]) {
        let src = source.ring();
        let mut images: Vec<Poly<F>> = (0..chunk.nx).map(|i| Poly::var(src, i)).collect();
        images.extend(forms.iter().cloned());
        for g in &chunk.gens {
            assert!(source.is_zero(&g.substitute(&images).unwrap()), "{g}");
            g.bidegree().unwrap();
        }
    }

    #[test]
    fn koszul_relation() {
        let (s, t, f) = setup(RationalField, &["x", "y"], &["Y0", "Y1"], &["x", "y"]);
        let full = rees_full(&s, &t, &f).unwrap();
        assert_eq!(full.gens.len(), 1);
        assert_eq!(full.gens[0].monic().to_string(), "y*Y0-x*Y1");
        let sat = rees_saturation(&s, &t, &f).unwrap();
        assert!(ideal_equal(&full.ring, &full.gens, &sat.gens));
        let tr = rees_truncated(&s, &t, &f, 1).unwrap();
        assert_eq!(linear_part(&tr).len(), 1);
    }

    #[test]
    fn single_form_has_zero_rees_ideal() {
        let (s, t, f) = setup(RationalField, &["x"], &["Y0"], &["x^2"]);
        assert!(rees_full(&s, &t, &f).unwrap().gens.is_empty());
    }

    #[test]
    fn cremona_linear_part() {
        let (s, t, f) = setup(RationalField, &["x", "y", "z"], &["a", "b", "c"], &["y*z", "x*z", "x*y"]);
        let full = rees_full(&s, &t, &f).unwrap();
        assert_rees_relations(&full, &s, &f);
        let lin = linear_part(&full);
        assert_eq!(lin.len(), 2);
        let r = &full.ring;
        let expected = vec![parse_poly(r, "x*a-y*b").unwrap(), parse_poly(r, "y*b-z*c").unwrap()];
        // same k-span: each side lies in the ideal of the other in degree (1,1)
        assert!(ideal_equal(r, &lin, &expected));
        let tr = rees_truncated(&s, &t, &f, 1).unwrap();
        assert!(ideal_equal(r, &linear_part(&tr), &expected));
    }

    #[test]
    fn quadratic_forms_on_a_line() {
        let (s, t, f) = setup(RationalField, &["x", "y"], &["a", "b"], &["x^2", "x*y"]);
        let lin = linear_part(&rees_full(&s, &t, &f).unwrap());
        assert_eq!(lin.len(), 1);
        assert_eq!(lin[0].monic().to_string(), "y*a-x*b");
    }

    #[test]
    fn saturation_enlarges_symmetric_algebra() {
        // the conic relation a*c - b^2 is not in the symmetric algebra ideal
        let (s, t, f) = setup(RationalField, &["x", "y"], &["a", "b", "c"], &["x^2", "x*y", "y^2"]);
        let sym = symmetric_algebra_ideal(&s, &t, &f).unwrap();
        let sat = rees_saturation(&s, &t, &f).unwrap();
        let full = rees_full(&s, &t, &f).unwrap();
        assert!(ideal_equal(&full.ring, &full.gens, &sat.gens));
        assert!(is_subideal(&full.ring, &sym, &full.gens));
        assert!(!is_subideal(&full.ring, &full.gens, &sym));
        assert!(full.bidegrees().contains(&(0, 2)));
    }

    #[test]
    fn common_factor_does_not_change_the_rees_ideal() {
        // x * (y*z, x*z, x*y): the ideal of three points is of linear type
        let (s, t, f) = setup(RationalField, &["x", "y", "z"], &["a", "b", "c"], &["x^2*y", "x^2*z", "x*y*z"]);
        let sym = symmetric_algebra_ideal(&s, &t, &f).unwrap();
        let full = rees_full(&s, &t, &f).unwrap();
        let sat = rees_saturation(&s, &t, &f).unwrap();
        assert!(ideal_equal(&full.ring, &full.gens, &sat.gens));
        assert!(ideal_equal(&full.ring, &full.gens, &sym));
    }

    #[test]
    fn truncation_grows_monotonically() {
        let k = PrimeField::new(101).unwrap();
        let (s, t, f) = setup(k, &["x", "y", "z"], &["a", "b", "c"], &["x^3", "x^2*y", "x*z^2+y^3"]);
        let full = rees_full(&s, &t, &f).unwrap();
        let mut c = ReesComputation::new(&s, &t, &f).unwrap();
        let mut prev = 0;
        for n in [1, 2, 4, 7] {
            c.run_to(n);
            let ch = c.chunk();
            assert_rees_relations(&ch, &s, &f);
            let gb = groebner(&full.ring, &full.gens);
            assert!(ch.gens.iter().all(|g| gb.contains(g)));
            let lin = ch.gens.iter().filter(|g| g.bidegree().unwrap().0 == 1).count();
            assert!(lin >= prev);
            prev = lin;
        }
    }
}
